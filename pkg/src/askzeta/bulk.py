"""Vectorised enumeration internals (numpy).

Everything here is exact integer arithmetic mod p^n carried out on int64
arrays; callers turn the resulting exponent histograms into exact rationals.
Chunked enumeration keeps memory flat and makes results independent of the
partitioning, so partial histograms can be combined in any order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

import numpy as np

__all__ = [
    "BudgetExceededError",
    "batch_smith_exponents",
    "batch_kernel_exponents",
    "iter_vector_chunks",
    "census_of_stack",
]

# Keep p^n small enough that entry * entry stays inside int64.
_MAX_MODULUS = 1 << 31


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured budget; nothing was computed."""

    def __init__(self, required: int, budget: int, level: int | None = None):
        self.required = required
        self.budget = budget
        self.level = level
        where = f" at level {level}" if level is not None else ""
        super().__init__(
            f"enumeration{where} needs {required} evaluations, budget is {budget}"
        )


@lru_cache(maxsize=None)
def _valuation_table(p: int, n: int) -> np.ndarray:
    pn = p**n
    vals = np.zeros(pn, dtype=np.int64)
    for v in range(1, n + 1):
        vals[:: p**v] = v
    vals[0] = n
    return vals


@lru_cache(maxsize=None)
def _inverse_table(p: int, n: int) -> np.ndarray:
    pn = p**n
    inv = np.zeros(pn, dtype=np.int64)
    for u in range(1, pn):
        if u % p:
            inv[u] = pow(u, -1, pn)
    return inv


def batch_smith_exponents(mats: np.ndarray, p: int, n: int) -> np.ndarray:
    """Elementary divisor exponents for a batch of matrices over Z/p^n.

    mats has shape (N, d, e) with entries already reduced mod p^n; the result
    has shape (N, min(d, e)) with ascending exponents in [0, n]. Follows the
    same minimal-valuation row-major pivot rule as ring.smith_exponents.
    """
    mats = np.asarray(mats, dtype=np.int64)
    N, d, e = mats.shape
    m = min(d, e)
    out = np.full((N, m), n, dtype=np.int64)
    if N == 0 or m == 0 or n == 0:
        return out
    pn = p**n
    if pn > _MAX_MODULUS:
        raise ValueError(f"modulus {p}^{n} too large for vectorised arithmetic")
    val = _valuation_table(p, n)
    inv = _inverse_table(p, n)

    work = mats % pn
    alive = np.arange(N)
    for k in range(m):
        if alive.size == 0:
            break
        nw = work.shape[0]
        vflat = val[work[:, k:, k:]].reshape(nw, -1)
        pos = vflat.argmin(axis=1)
        vmin = vflat[np.arange(nw), pos]
        cont = vmin < n
        out[alive[cont], k] = vmin[cont]
        work = work[cont]
        alive = alive[cont]
        if alive.size == 0:
            break
        nw = work.shape[0]
        ar = np.arange(nw)
        pos = pos[cont]
        vmin = vmin[cont]
        r = pos // (e - k) + k
        c = pos % (e - k) + k
        tmp = work[ar, k, :].copy()
        work[ar, k, :] = work[ar, r, :]
        work[ar, r, :] = tmp
        tmp = work[ar, :, k].copy()
        work[ar, :, k] = work[ar, :, c]
        work[ar, :, c] = tmp
        pv = p ** vmin.astype(np.int64)
        iu = inv[work[:, k, k] // pv]
        if k + 1 < d:
            f = (work[:, k + 1 :, k] // pv[:, None]) * iu[:, None] % pn
            work[:, k + 1 :, :] = (work[:, k + 1 :, :] - f[:, :, None] * work[:, k : k + 1, :]) % pn
        if k + 1 < e:
            g = (work[:, k, k + 1 :] // pv[:, None]) * iu[:, None] % pn
            work[:, :, k + 1 :] = (work[:, :, k + 1 :] - g[:, None, :] * work[:, :, k : k + 1]) % pn
    return out


def batch_kernel_exponents(mats: np.ndarray, p: int, n: int) -> np.ndarray:
    """Exponents k with |Ker| = p^k for each d x e matrix in the batch."""
    N, d, e = mats.shape
    m = min(d, e)
    exps = batch_smith_exponents(mats, p, n)
    return exps.sum(axis=1) + n * (d - m)


def iter_vector_chunks(q: int, length: int, chunk: int) -> Iterator[np.ndarray]:
    """All vectors of (Z/q)^length in row-major order, in chunks."""
    total = q**length
    if length == 0:
        yield np.zeros((1, 0), dtype=np.int64)
        return
    weights = np.array([q ** (length - 1 - h) for h in range(length)], dtype=np.int64)
    start = 0
    while start < total:
        stop = min(start + chunk, total)
        idx = np.arange(start, stop, dtype=np.int64)
        yield (idx[:, None] // weights[None, :]) % q
        start = stop


def census_of_stack(
    coeffs: np.ndarray,
    p: int,
    n: int,
    chunk_elements: int = 1 << 21,
) -> list[dict[int, int]]:
    """Kernel-size exponent histograms for a stack of tensors, one shared sweep.

    coeffs has shape (T, l, d, e), entries reduced mod p^n. For every tensor t
    the full parameter space (Z/p^n)^l is enumerated; the returned histogram
    maps an exponent k to the number of parameter vectors whose evaluated
    matrix has kernel size p^k.
    """
    coeffs = np.asarray(coeffs, dtype=np.int64)
    T, l, d, e = coeffs.shape
    pn = p**n
    flat = coeffs.reshape(T, l, d * e)
    width = n * d + 1
    counts = np.zeros(T * width, dtype=np.int64)
    chunk = max(1, chunk_elements // max(1, T * d * e))
    for avec in iter_vector_chunks(pn, l, chunk):
        cN = avec.shape[0]
        mats = np.einsum("cl,tlf->tcf", avec, flat, optimize=True) % pn
        ks = batch_kernel_exponents(mats.reshape(T * cN, d, e), p, n)
        offs = np.repeat(np.arange(T, dtype=np.int64) * width, cN)
        counts += np.bincount(ks + offs, minlength=T * width)
    result = []
    for t in range(T):
        row = counts[t * width : (t + 1) * width]
        result.append({int(k): int(v) for k, v in enumerate(row) if v})
    return result
