"""Pure-python brute-force oracles, independent of the library's engines."""

from fractions import Fraction
from itertools import product


def brute_kernel_count(entries, ring):
    """|{x : x A = 0}| by literal row-vector enumeration."""
    d = len(entries)
    e = len(entries[0]) if d else 0
    pn = ring.size
    count = 0
    for x in product(range(pn), repeat=d):
        if all(sum(x[i] * entries[i][j] for i in range(d)) % pn == 0 for j in range(e)):
            count += 1
    return count


def brute_ask(rep, ring, m=1):
    """Average m-th power of the kernel size by full double enumeration."""
    pn = ring.size
    total = 0
    for a in product(range(pn), repeat=rep.l):
        mat = rep.evaluate_at(a, ring)
        total += brute_kernel_count(mat.entries, ring) ** m
    return Fraction(total, pn**rep.l)
