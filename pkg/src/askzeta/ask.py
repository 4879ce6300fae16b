"""Exact computation of average kernel sizes and their zeta coefficients.

ask^m of a representation over Z/p^n is the average of |kernel|^m over all
parameter vectors; each coefficient of the zeta series is one such average,
taken at successive levels n. Everything is computed by full enumeration and
exact integer/rational arithmetic.

For the first moment the enumeration side can be switched: the circ dual
trades the parameter side for the domain side at the cost of an exact power
of p, and the bullet dual preserves the average kernel size outright. The
auto strategy picks whichever side is cheapest; moments m >= 2 always
enumerate directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import bulk
from .bulk import BudgetExceededError
from .mrep import Dual, MRep
from .ring import TruncatedRing

__all__ = [
    "DEFAULT_BUDGET",
    "AskResult",
    "ZetaSeries",
    "BudgetExceededError",
    "ask_m",
    "kernel_census",
    "zeta_coeffs",
]

DEFAULT_BUDGET = 10**7


@dataclass(frozen=True)
class AskResult:
    value: Fraction
    level: int
    moment: int
    strategy: str


@dataclass(frozen=True)
class ZetaSeries:
    """Zeta coefficients c_0..c_N; failed_level flags a budget cutoff."""

    coeffs: tuple[Fraction, ...]
    failed_level: int | None = None

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)


def _census(rep: MRep, ring: TruncatedRing, budget: int) -> dict[int, int]:
    cost = ring.size**rep.l
    if cost > budget:
        raise BudgetExceededError(cost, budget)
    stack = rep.reduced_array(ring).reshape(1, rep.l, rep.d, rep.e)
    return bulk.census_of_stack(stack, ring.p, ring.n)[0]


def kernel_census(
    rep: MRep, ring: TruncatedRing, budget: int = DEFAULT_BUDGET
) -> dict[int, int]:
    """Histogram {k: #parameter vectors with |kernel| = p^k}.

    All moments are recoverable from it:
    ask^m = sum_k census[k] p^(k m) / p^(n l).
    """
    return _census(rep, ring, budget)


def ask_from_census(
    census: dict[int, int], ring: TruncatedRing, side_rank: int, m: int = 1
) -> Fraction:
    total = sum(count * ring.p ** (k * m) for k, count in census.items())
    return Fraction(total, ring.size**side_rank)


def ask_m(
    rep: MRep,
    ring: TruncatedRing,
    m: int = 1,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> AskResult:
    """Average m-th power of the kernel size, as an exact rational."""
    if m < 1:
        raise ValueError("moment must be >= 1")
    if strategy not in ("auto", "direct", "circ", "bullet"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if m > 1 and strategy in ("circ", "bullet"):
        raise ValueError(f"strategy {strategy!r} only computes the first moment")
    if strategy == "auto":
        if m > 1:
            strategy = "direct"
        else:
            costs = {"direct": rep.l, "circ": rep.d, "bullet": rep.e}
            strategy = min(costs, key=lambda s: (costs[s], ("direct", "circ", "bullet").index(s)))
    if strategy == "direct":
        value = ask_from_census(_census(rep, ring, budget), ring, rep.l, m)
        return AskResult(value, ring.n, m, "direct")
    if strategy == "circ":
        circ = rep.dual(Dual.CIRC)
        base = ask_from_census(_census(circ, ring, budget), ring, rep.d, 1)
        value = Fraction(ring.p) ** (ring.n * (rep.d - rep.l)) * base
        return AskResult(value, ring.n, m, "circ-side")
    bullet = rep.dual(Dual.BULLET)
    value = ask_from_census(_census(bullet, ring, budget), ring, rep.e, 1)
    return AskResult(value, ring.n, m, "bullet-side")


def zeta_coeffs(
    rep: MRep,
    p: int,
    m: int = 1,
    levels: int = 2,
    strategy: str = "auto",
    budget: int = DEFAULT_BUDGET,
) -> ZetaSeries:
    """Coefficients [c_0 .. c_levels] with c_n = ask^m over Z/p^n.

    On budget exhaustion the partial coefficient list is returned with the
    failing level flagged.
    """
    coeffs: list[Fraction] = []
    for n in range(levels + 1):
        ring = TruncatedRing(p, n)
        try:
            coeffs.append(ask_m(rep, ring, m, strategy, budget).value)
        except BudgetExceededError as err:
            raise_level = BudgetExceededError(err.required, err.budget, n)
            if coeffs:
                return ZetaSeries(tuple(coeffs), failed_level=n)
            raise raise_level from err
    return ZetaSeries(tuple(coeffs), failed_level=None)
