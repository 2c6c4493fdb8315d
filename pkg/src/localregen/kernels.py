"""Hot linear-algebra kernels over GF(q), with two interchangeable backends.

The default backend compiles the elimination loops with numba's @njit.  A
pure-numpy fallback (row operations vectorized per pivot) is selected by
setting the environment variable

    LOCALREGEN_BACKEND=numpy

before import, or used automatically when numba is not importable.  The
benchmark in benchmarks/backend_bench.py times both.

All kernels share one calling convention:

    fn(a, p, m, q, exp, log)

where `a` is a C-contiguous int64 array of canonical field values, (p, m, q)
describe GF(q) = GF(p^m), and `exp`/`log` are the discrete-log tables used
for extension-field multiplication (empty int64 arrays when m == 1; prime
fields use plain modular arithmetic).  Addition is mod-p per base-p digit:
for m == 1 that is plain mod p, for p == 2 it is XOR on the packed value.
"""

from __future__ import annotations

import os

import numpy as np

_ENV_VAR = "LOCALREGEN_BACKEND"


# ---------------------------------------------------------------------------
# pure-numpy backend
# ---------------------------------------------------------------------------

def _np_sub(x, y, p, m):
    if m == 1:
        return (x - y) % p
    if p == 2:
        return x ^ y
    out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
    xx = np.array(x, dtype=np.int64, copy=True)
    yy = np.array(y, dtype=np.int64, copy=True)
    mult = 1
    for _ in range(m):
        out += ((xx % p - yy % p) % p) * mult
        xx //= p
        yy //= p
        mult *= p
    return out


def _np_add(x, y, p, m):
    if m == 1:
        return (x + y) % p
    if p == 2:
        return x ^ y
    out = np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
    xx = np.array(x, dtype=np.int64, copy=True)
    yy = np.array(y, dtype=np.int64, copy=True)
    mult = 1
    for _ in range(m):
        out += ((xx % p + yy % p) % p) * mult
        xx //= p
        yy //= p
        mult *= p
    return out


def _np_mul(x, y, p, m, q, exp, log):
    if m == 1:
        return (x * y) % p
    prod = exp[log[x] + log[y]]
    zero = (np.asarray(x) == 0) | (np.asarray(y) == 0)
    return np.where(zero, 0, prod)


def _np_inv_scalar(a, p, m, q, exp, log):
    if m == 1:
        return pow(int(a), p - 2, p)
    return int(exp[(q - 1) - log[a]])


def np_eliminate(a, p, m, q, exp, log, reduced):
    """In-place row reduction; returns the rank.

    reduced=False leaves an upper echelon form (enough for rank and det-free
    uses); reduced=True produces the RREF.
    """
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        pv = int(a[r, c])
        if pv != 1:
            inv = _np_inv_scalar(pv, p, m, q, exp, log)
            a[r, c:] = _np_mul(a[r, c:], inv, p, m, q, exp, log)
        if reduced:
            others = np.flatnonzero(a[:, c])
            others = others[others != r]
        else:
            others = r + 1 + np.flatnonzero(a[r + 1:, c])
        if others.size:
            factors = a[others, c]
            prod = _np_mul(factors[:, None], a[r, c:][None, :], p, m, q, exp, log)
            a[np.ix_(others, np.arange(c, cols))] = _np_sub(a[others, c:], prod, p, m)
        r += 1
        if r == rows:
            break
    return r


def np_det(a, p, m, q, exp, log):
    """Determinant of a square matrix; destroys `a`."""
    n = a.shape[0]
    det = 1
    swaps = 0
    for c in range(n):
        nz = np.flatnonzero(a[c:, c])
        if nz.size == 0:
            return 0
        piv = c + int(nz[0])
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            swaps += 1
        pv = int(a[c, c])
        det = int(_np_mul(det, pv, p, m, q, exp, log))
        inv = _np_inv_scalar(pv, p, m, q, exp, log)
        below = c + 1 + np.flatnonzero(a[c + 1:, c])
        if below.size:
            factors = _np_mul(a[below, c], inv, p, m, q, exp, log)
            prod = _np_mul(factors[:, None], a[c, c:][None, :], p, m, q, exp, log)
            a[np.ix_(below, np.arange(c, n))] = _np_sub(a[below, c:], prod, p, m)
    if swaps & 1:
        det = int(_np_sub(np.int64(0), np.int64(det), p, m))
    return det


def np_matmul(a, b, p, m, q, exp, log):
    if m == 1:
        # int64 is safe: p < 2**24 is enforced by the field layer for this path
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for k in range(a.shape[1]):
        col = a[:, k]
        row = b[k, :]
        if not col.any() or not row.any():
            continue
        prod = _np_mul(col[:, None], row[None, :], p, m, q, exp, log)
        out = _np_add(out, prod, p, m)
    return out


NUMPY_IMPL = {"eliminate": np_eliminate, "det": np_det, "matmul": np_matmul}


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

def _build_numba_impl():
    from numba import njit

    @njit(cache=True, inline="always")
    def _sub(x, y, p, m):
        if m == 1:
            return (x - y) % p
        if p == 2:
            return x ^ y
        out = 0
        mult = 1
        xx = x
        yy = y
        for _ in range(m):
            out += ((xx % p - yy % p) % p) * mult
            xx //= p
            yy //= p
            mult *= p
        return out

    @njit(cache=True, inline="always")
    def _add(x, y, p, m):
        if m == 1:
            return (x + y) % p
        if p == 2:
            return x ^ y
        out = 0
        mult = 1
        xx = x
        yy = y
        for _ in range(m):
            out += ((xx % p + yy % p) % p) * mult
            xx //= p
            yy //= p
            mult *= p
        return out

    @njit(cache=True, inline="always")
    def _mul(x, y, p, m, q, exp, log):
        if x == 0 or y == 0:
            return 0
        if m == 1:
            return (x * y) % p
        return exp[log[x] + log[y]]

    @njit(cache=True, inline="always")
    def _inv(x, p, m, q, exp, log):
        if m == 1:
            r = 1
            b = x % p
            e = p - 2
            while e > 0:
                if e & 1:
                    r = r * b % p
                b = b * b % p
                e >>= 1
            return r
        return exp[(q - 1) - log[x]]

    @njit(cache=True)
    def nb_eliminate(a, p, m, q, exp, log, reduced):
        rows, cols = a.shape
        r = 0
        for c in range(cols):
            piv = -1
            for i in range(r, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = t
            pv = a[r, c]
            if pv != 1:
                inv = _inv(pv, p, m, q, exp, log)
                for j in range(c, cols):
                    if a[r, j] != 0:
                        a[r, j] = _mul(a[r, j], inv, p, m, q, exp, log)
            lo = 0 if reduced else r + 1
            for i in range(lo, rows):
                if i == r:
                    continue
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        v = a[r, j]
                        if v != 0:
                            a[i, j] = _sub(a[i, j], _mul(f, v, p, m, q, exp, log), p, m)
            r += 1
            if r == rows:
                break
        return r

    @njit(cache=True)
    def nb_det(a, p, m, q, exp, log):
        n = a.shape[0]
        det = 1
        swaps = 0
        for c in range(n):
            piv = -1
            for i in range(c, n):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            if piv != c:
                for j in range(n):
                    t = a[c, j]
                    a[c, j] = a[piv, j]
                    a[piv, j] = t
                swaps += 1
            pv = a[c, c]
            det = _mul(det, pv, p, m, q, exp, log)
            inv = _inv(pv, p, m, q, exp, log)
            for i in range(c + 1, n):
                f = a[i, c]
                if f != 0:
                    fac = _mul(f, inv, p, m, q, exp, log)
                    for j in range(c, n):
                        v = a[c, j]
                        if v != 0:
                            a[i, j] = _sub(a[i, j], _mul(fac, v, p, m, q, exp, log), p, m)
        if swaps & 1:
            det = _sub(0, det, p, m)
        return det

    @njit(cache=True)
    def nb_matmul(a, b, p, m, q, exp, log):
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for i in range(a.shape[0]):
            for k in range(a.shape[1]):
                aik = a[i, k]
                if aik == 0:
                    continue
                for j in range(b.shape[1]):
                    v = b[k, j]
                    if v != 0:
                        out[i, j] = _add(out[i, j], _mul(aik, v, p, m, q, exp, log), p, m)
        return out

    return {"eliminate": nb_eliminate, "det": nb_det, "matmul": nb_matmul}


def _select():
    choice = os.environ.get(_ENV_VAR, "auto").strip().lower()
    if choice not in ("auto", "numba", "numpy", ""):
        raise ValueError(f"{_ENV_VAR} must be 'numba' or 'numpy', got {choice!r}")
    if choice == "numpy":
        return NUMPY_IMPL, "numpy", None
    try:
        impl = _build_numba_impl()
        return impl, "numba", impl
    except ImportError:
        if choice == "numba":
            raise
        return NUMPY_IMPL, "numpy", None


_ACTIVE, _BACKEND_NAME, NUMBA_IMPL = _select()

eliminate = _ACTIVE["eliminate"]
det_in_place = _ACTIVE["det"]
matmul = _ACTIVE["matmul"]

_EMPTY = np.empty(0, dtype=np.int64)


def backend_name():
    return _BACKEND_NAME


def warm_up():
    """Trigger JIT compilation of every kernel signature once.

    Called from the test session fixture so that acceptance timings measure
    the algorithms, not compilation.
    """
    for p, m, q, exp, log in (
        (7, 1, 7, _EMPTY, _EMPTY),
        (2, 3, 8, np.ones(14, dtype=np.int64), np.zeros(8, dtype=np.int64)),
    ):
        a = np.array([[1, 2 % q], [3 % q, 4 % q]], dtype=np.int64)
        eliminate(a.copy(), p, m, q, exp, log, True)
        eliminate(a.copy(), p, m, q, exp, log, False)
        det_in_place(a.copy(), p, m, q, exp, log)
        matmul(a, a, p, m, q, exp, log)
