"""Brute-force reference implementations, deliberately naive and independent
of the library code paths they check."""

import itertools
from functools import lru_cache

import numpy as np


def scan_k(g, n_new, degree):
    """Smallest k >= 0 with degree - k*n_new in (n_new(g-1), n_new*g], by linear scan."""
    k = 0
    while degree - k * n_new > n_new * g:
        k += 1
    d_new = degree - k * n_new
    assert d_new > n_new * (g - 1)
    return d_new, k


def brute_reduce(g, n, d):
    n_new = n * g - d
    d_new, k = scan_k(g, n_new, d)
    return (n_new, d_new), k


def brute_dual(g, n, d):
    n_new = d - n * (g - 1)
    d_new, k = scan_k(g, n_new, n * (2 * g - 1) - d)
    return (n_new, d_new), k


def brute_in_window(g, n, d):
    return n * (g - 1) < d < n * g


@lru_cache(maxsize=None)
def brute_reachable(g, n, d):
    out = {(n, d)}
    if brute_in_window(g, n, d):
        for (t, _) in (brute_reduce(g, n, d), brute_dual(g, n, d)):
            out |= brute_reachable(g, *t)
    return frozenset(out)


def brute_nice(g, n, d):
    return (n, d) == (1, g) or (brute_in_window(g, n, d) and (1, g) in brute_reachable(g, n, d))


def float_rank(rows):
    """Numerical rank of a small integer matrix; exact enough for tiny entries."""
    a = np.array([[float(x) for x in r] for r in rows])
    return int(np.linalg.matrix_rank(a)) if a.size else 0


def brute_stable(ambient, points):
    """Test (4.5)-style inequality on the span of every subset of points."""
    total = len(points)
    for size in range(1, total + 1):
        for idx in itertools.combinations(range(total), size):
            r = float_rank([points[i] for i in idx])
            if r > ambient:
                continue
            count = sum(
                1 for x in points if float_rank([points[i] for i in idx] + [x]) == r
            )
            if count * (ambient + 1) >= r * total:
                return False
    return True
