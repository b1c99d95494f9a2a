"""Bitmask kernels for the exhaustive (2^n) scans.

numba is used when it imports and CLUSTEREXP_NO_NUMBA is unset; otherwise a
vectorised numpy version runs.  Both return identical boolean arrays.
"""

import os

import numpy as np

BACKEND = "numpy"

if not os.environ.get("CLUSTEREXP_NO_NUMBA"):
    try:
        from numba import njit

        BACKEND = "numba"
    except ImportError:  # pragma: no cover
        pass


def _ideal_mask_numpy(n, below):
    s = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=np.bool_)
    for i in range(n):
        has_i = (s >> i) & 1
        ok &= (has_i == 0) | ((below[i] & ~s) == 0)
    return ok


def _walk_mask_numpy(n, end0, end1, start0, start1, closed):
    v = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=np.bool_)
    gaps = n if closed else n - 1
    for i in range(gaps):
        j = (i + 1) % n
        bi = (v >> i) & 1
        bj = (v >> j) & 1
        e = np.where(bi == 1, end1[i], end0[i])
        s = np.where(bj == 1, start1[j], start0[j])
        ok &= e != s
    return ok


if BACKEND == "numba":

    @njit(cache=True)
    def _ideal_mask_numba(n, below):
        out = np.empty(1 << n, dtype=np.bool_)
        for s in range(1 << n):
            good = True
            for i in range(n):
                if (s >> i) & 1 and below[i] & ~s:
                    good = False
                    break
            out[s] = good
        return out

    @njit(cache=True)
    def _walk_mask_numba(n, end0, end1, start0, start1, closed):
        out = np.empty(1 << n, dtype=np.bool_)
        gaps = n if closed else n - 1
        for v in range(1 << n):
            good = True
            for i in range(gaps):
                j = (i + 1) % n
                e = end1[i] if (v >> i) & 1 else end0[i]
                s = start1[j] if (v >> j) & 1 else start0[j]
                if e == s:
                    good = False
                    break
            out[v] = good
        return out


def _pick(backend):
    b = backend or BACKEND
    if b not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {b!r}")
    if b == "numba" and BACKEND != "numba":
        raise ValueError("numba backend unavailable or disabled by CLUSTEREXP_NO_NUMBA")
    return b


def ideal_mask(below, backend=None):
    """ok[s] is True iff the subset with bitmask s is a down-set.

    below[i] is the bitmask of elements strictly below element i.
    """
    below = np.asarray(below, dtype=np.int64)
    n = len(below)
    if _pick(backend) == "numba":
        return _ideal_mask_numba(n, below)
    return _ideal_mask_numpy(n, below)


def walk_mask(end0, end1, start0, start1, closed, backend=None):
    """ok[v] is True iff no consecutive pair of alpha-steps meets at one corner.

    end*/start* hold corner indices of step i inside the triangle it shares
    with its neighbour, for bit value 0 and 1.
    """
    arrs = [np.asarray(a, dtype=np.int64) for a in (end0, end1, start0, start1)]
    n = len(arrs[0])
    if _pick(backend) == "numba":
        return _walk_mask_numba(n, *arrs, bool(closed))
    return _walk_mask_numpy(n, *arrs, bool(closed))
