"""Finite nilpotent groups built from module representations.

Two constructions, both with elements stored as flat tuples of canonical
representatives and multiplication evaluated straight from the defining
formulas (no Cayley table):

  g_alpha   on M x W for alternating alpha, with
            (a, y)(a', y') = (a + a', y + y' + a A(a'))
  h_theta   on M x V x W (a semidirect product), with
            (a, x, y)(a', x', y') = (a + a', x + x', y + y' + x A(a'))

Class numbers come from the orbit-counting lemma (average centraliser size)
or from an explicit partition into conjugacy classes; the two routes are
independent and are compared in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ask import DEFAULT_BUDGET, BudgetExceededError, ask_m
from .mrep import MRep
from .ring import TruncatedRing

__all__ = [
    "DEFAULT_BUILD_BUDGET",
    "DEFAULT_CLASS_BUDGET",
    "FiniteGroupSpec",
    "build_group",
    "class_number",
    "lazard_group",
    "ClaimCheck",
    "verify_class_identities",
]

DEFAULT_BUILD_BUDGET = 3**10
DEFAULT_CLASS_BUDGET = 10**4


@dataclass(frozen=True)
class FiniteGroupSpec:
    """A finite group presented as tuples over Z/p^n with an explicit product."""

    kind: str  # "g_alpha" | "h_theta"
    rep: MRep
    ring: TruncatedRing

    @property
    def block_sizes(self) -> tuple[int, ...]:
        if self.kind == "g_alpha":
            return (self.rep.l, self.rep.e)
        return (self.rep.l, self.rep.d, self.rep.e)

    @property
    def arity(self) -> int:
        return sum(self.block_sizes)

    @property
    def order(self) -> int:
        return self.ring.size ** self.arity

    def _bilinear(self, dom: np.ndarray, par: np.ndarray) -> np.ndarray:
        """Rows dom times the evaluated matrices A(par), mod p^n."""
        coeffs = self.rep.reduced_array(self.ring)
        out = np.einsum("nh,ni,hij->nj", par, dom, coeffs, optimize=True)
        return out % self.ring.size

    def multiply(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        pn = self.ring.size
        l = self.rep.l
        if self.kind == "g_alpha":
            twist = self._bilinear(X[:, :l], Y[:, :l])
            return np.concatenate(
                ((X[:, :l] + Y[:, :l]) % pn, (X[:, l:] + Y[:, l:] + twist) % pn), axis=1
            )
        d = self.rep.d
        twist = self._bilinear(X[:, l : l + d], Y[:, :l])
        return np.concatenate(
            (
                (X[:, :l] + Y[:, :l]) % pn,
                (X[:, l : l + d] + Y[:, l : l + d]) % pn,
                (X[:, l + d :] + Y[:, l + d :] + twist) % pn,
            ),
            axis=1,
        )

    def inverse(self, X: np.ndarray) -> np.ndarray:
        pn = self.ring.size
        l = self.rep.l
        if self.kind == "g_alpha":
            # a A(a) = 0 for alternating alpha, so (a, y)^-1 = (-a, -y)
            return (-X) % pn
        d = self.rep.d
        twist = self._bilinear(X[:, l : l + d], X[:, :l])
        return np.concatenate(
            ((-X[:, :l]) % pn, (-X[:, l : l + d]) % pn, (twist - X[:, l + d :]) % pn),
            axis=1,
        )

    def elements(self) -> np.ndarray:
        pn = self.ring.size
        k = self.arity
        if k == 0:
            return np.zeros((1, 0), dtype=np.int64)
        weights = np.array([pn ** (k - 1 - i) for i in range(k)], dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        return (idx[:, None] // weights[None, :]) % pn

    def encode(self, X: np.ndarray) -> np.ndarray:
        """Mixed-radix index of each element row (inverse of elements())."""
        pn = self.ring.size
        k = self.arity
        weights = np.array([pn ** (k - 1 - i) for i in range(k)], dtype=np.int64)
        return X @ weights if k else np.zeros(len(X), dtype=np.int64)


def build_group(
    kind: str,
    rep: MRep,
    ring: TruncatedRing,
    budget: int = DEFAULT_BUILD_BUDGET,
) -> FiniteGroupSpec:
    if kind not in ("g_alpha", "h_theta"):
        raise ValueError(f"unknown group kind {kind!r}")
    if kind == "g_alpha" and not rep.is_alternating():
        raise ValueError("g_alpha requires an alternating representation")
    spec = FiniteGroupSpec(kind, rep, ring)
    if spec.order > budget:
        raise BudgetExceededError(spec.order, budget)
    return spec


def class_number(
    spec: FiniteGroupSpec,
    method: str = "centralizer",
    budget: int = DEFAULT_CLASS_BUDGET,
) -> int:
    """Exact number of conjugacy classes.

    method="centralizer" averages centraliser sizes over the group (the
    orbit-counting lemma); method="orbit" partitions the group into
    conjugacy classes by explicit conjugation.
    """
    if spec.order > budget:
        raise BudgetExceededError(spec.order, budget)
    E = spec.elements()
    N = len(E)
    if method == "centralizer":
        total = 0
        for g in E:
            G = np.broadcast_to(g, E.shape)
            total += int((spec.multiply(G, E) == spec.multiply(E, G)).all(axis=1).sum())
        assert total % N == 0
        return total // N
    if method == "orbit":
        inv = spec.inverse(E)
        seen = np.zeros(N, dtype=bool)
        classes = 0
        for i in range(N):
            if seen[i]:
                continue
            classes += 1
            G = np.broadcast_to(E[i], E.shape)
            conj = spec.multiply(spec.multiply(inv, G), E)
            seen[spec.encode(conj)] = True
        return classes
    raise ValueError(f"unknown method {method!r}")


def lazard_group(
    bracket: MRep, ring: TruncatedRing, budget: int = DEFAULT_BUILD_BUDGET
) -> FiniteGroupSpec:
    """The finite group exp(g) of a class-<=2 Lie ring, as a g_alpha group.

    Needs p odd and a basis-aligned splitting g = M + W where W is spanned
    by central basis vectors and contains every bracket value; the group is
    then g_alpha for the halved bracket restricted to M. Raises if the
    splitting does not exist along the standard basis.
    """
    if ring.p == 2:
        raise ValueError("the exponential correspondence needs p odd")
    rank = bracket.l
    if not (bracket.l == bracket.d == bracket.e):
        raise ValueError("bracket tensor must be cubical")
    central = [
        j
        for j in range(rank)
        if all(
            bracket.coeffs[j][i][k] == 0 and bracket.coeffs[i][j][k] == 0
            for i in range(rank)
            for k in range(rank)
        )
    ]
    support = {
        k
        for h in range(rank)
        for i in range(rank)
        for k in range(rank)
        if bracket.coeffs[h][i][k] != 0
    }
    if not support.issubset(central):
        raise ValueError("bracket values do not land in a central coordinate block")
    mod_idx = [j for j in range(rank) if j not in central]
    w_idx = sorted(central)
    inv2 = pow(2, -1, ring.size) if ring.n else 0
    k = len(mod_idx)
    coeffs = [[[0] * len(w_idx) for _ in range(k)] for _ in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            for w, j in enumerate(w_idx):
                # signed coefficients keep the halved bracket alternating over Z
                half = inv2 * bracket.coeffs[mod_idx[a]][mod_idx[b]][j] % ring.size
                coeffs[a][b][w] = half
                coeffs[b][a][w] = -half
    alpha = MRep(k, k, len(w_idx), tuple(tuple(tuple(r) for r in m) for m in coeffs))
    return build_group("g_alpha", alpha, ring, budget)


@dataclass(frozen=True)
class ClaimCheck:
    claim: str
    identity: str
    expected: str
    computed: str
    match: bool | None  # None = skipped
    note: str = ""

    @property
    def skipped(self) -> bool:
        return self.match is None


def _check(claim: str, identity: str, expected, computed) -> ClaimCheck:
    return ClaimCheck(claim, identity, str(expected), str(computed), expected == computed)


def _skip(claim: str, identity: str, note: str) -> ClaimCheck:
    return ClaimCheck(claim, identity, "", "", None, note)


def verify_class_identities(
    rep: MRep,
    ring: TruncatedRing,
    class_budget: int = DEFAULT_CLASS_BUDGET,
    ask_budget: int = DEFAULT_BUDGET,
) -> list[ClaimCheck]:
    """Compare brute-force class numbers with the predicted kernel averages.

    Runs whichever of the three identities applies to the given tensor:
    the central-extension group of an alternating representation, the
    semidirect-product group of an arbitrary representation, and the
    exponential group of a class-<=2 Lie bracket.
    """
    checks: list[ClaimCheck] = []
    W = Fraction(ring.size**rep.e)

    if rep.is_alternating():
        claim, identity = "central extension class number", "k(G) = |W| * ask(2a)"
        if ring.p == 2:
            checks.append(_skip(claim, identity, "needs p odd"))
        else:
            try:
                g = build_group("g_alpha", rep, ring, budget=class_budget)
                k = class_number(g, "centralizer", class_budget)
            except BudgetExceededError as err:
                checks.append(_skip(claim, identity, str(err)))
            else:
                predicted = W * ask_m(rep.scalar_multiply(2), ring, budget=ask_budget).value
                checks.append(_check(claim, identity, predicted, Fraction(k)))

    claim, identity = "semidirect product class number", "k(H) = |W| * ask(hull)"
    try:
        h = build_group("h_theta", rep, ring, budget=class_budget)
        k = class_number(h, "centralizer", class_budget)
    except BudgetExceededError as err:
        checks.append(_skip(claim, identity, str(err)))
    else:
        predicted = W * ask_m(rep.alternating_hull(), ring, budget=ask_budget).value
        checks.append(_check(claim, identity, predicted, Fraction(k)))

    if rep.l == rep.d == rep.e and rep.is_alternating() and ring.p != 2:
        claim, identity = "exponential group class number", "k(exp(g)) = ask(ad)"
        try:
            lz = lazard_group(rep, ring, budget=class_budget)
        except BudgetExceededError as err:
            checks.append(_skip(claim, identity, str(err)))
        except ValueError:
            lz = None
        else:
            k = class_number(lz, "centralizer", class_budget)
            predicted = ask_m(rep, ring, budget=ask_budget).value
            checks.append(_check(claim, identity, predicted, Fraction(k)))
    return checks
