"""Scalar codes with (r, delta) locality.

Three constructions, all distance-optimal for their parameter ranges:
pyramid (information locality, by splitting parity columns of a systematic
MDS code), parity-splitting (all-symbol locality, by splitting parity-check
rows of a Reed-Solomon code), and a randomized all-symbol construction whose
output is certified by the exhaustive distance oracle rather than by the
probabilistic argument that motivates it.
"""

from __future__ import annotations

from itertools import combinations
from math import comb

import numpy as np

from .bounds import ceil_div
from .errors import (
    DivisibilityViolation,
    ExhaustedAttempts,
    FieldTooSmall,
    InfeasibleParams,
)
from .field import FiniteField
from .linalg import Matrix, block_diag, rs_generator, systematic_form, vandermonde
from .vectorcode import LocalityStructure, VectorCode


def _exactness(code, supports, r, delta):
    n_l = r + delta - 1
    return all(
        len(s) == n_l and code.puncture(s).min_distance() == delta for s in supports
    )


def pyramid_construct(k: int, r: int, delta: int, d_min: int, field: FiniteField):
    """Split the first delta-1 parity columns of a [k+d_min-1, k] MDS code
    across ceil(k/r) row groups; optimal (r, delta) information locality.

    Returns (VectorCode, LocalityStructure).
    """
    if delta < 2 or delta > d_min:
        raise InfeasibleParams(f"need 2 <= delta <= d_min, got delta={delta}, d_min={d_min}")
    n_parent = k + d_min - 1
    if field.q < n_parent:
        raise FieldTooSmall(f"[{n_parent},{k}] MDS parent needs q >= {n_parent}")
    parent = systematic_form(rs_generator(field, k, n_parent))
    q_cols = parent.data[:, k:]  # k x (d_min - 1)
    groups = ceil_div(k, r)
    n = k + d_min - 1 + (groups - 1) * (delta - 1)

    gen = np.zeros((k, n), dtype=np.int64)
    supports = []
    col = 0
    for g in range(groups):
        rows = range(g * r, min((g + 1) * r, k))
        width = len(rows)
        start = col
        for i, row in enumerate(rows):
            gen[row, col + i] = 1
        col += width
        gen[list(rows), col : col + delta - 1] = q_cols[list(rows), : delta - 1]
        col += delta - 1
        supports.append(tuple(range(start, col)))
    gen[:, col:] = q_cols[:, delta - 1 :]
    assert col + (d_min - delta) == n

    code = VectorCode(field, n, 1, Matrix(field, gen),
                      metadata={"construction": "pyramid", "k": k, "r": r,
                                "delta": delta, "target_dmin": d_min})
    exact = _exactness(code, supports, r, delta)
    loc = LocalityStructure(r, delta, tuple(supports), "information", exact=exact)
    return code, loc


def parity_split_construct(k: int, r: int, delta: int, field: FiniteField):
    """All-symbol locality on n = ceil(k/r)(r+delta-1) coordinates by
    splitting the first delta-1 parity-check rows of a Reed-Solomon code.

    Returns (VectorCode, LocalityStructure).
    """
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    groups = ceil_div(k, r)
    group_len = r + delta - 1
    n = groups * group_len
    if n % group_len != 0:
        raise DivisibilityViolation(f"n = {n} not a multiple of {group_len}")
    if field.q < n:
        raise FieldTooSmall(f"parity-splitting needs q >= n = {n}, field has {field.q}")
    k_parent = k + (groups - 1) * (delta - 1)
    d = n - k_parent + 1
    h_parent = vandermonde(field, n - k_parent, range(n))
    q_rows = h_parent.data[: delta - 1, :]
    a_rows = h_parent.data[delta - 1 :, :]
    local_blocks = [
        Matrix(field, q_rows[:, g * group_len : (g + 1) * group_len].copy())
        for g in range(groups)
    ]
    h = block_diag(field, local_blocks)
    if a_rows.shape[0]:
        h = Matrix(field, np.vstack([h.data, a_rows]))
    gen = h.null_space()
    if gen.rows != k:
        raise InfeasibleParams(
            f"parity-splitting produced dimension {gen.rows}, expected {k}"
        )
    code = VectorCode(field, n, 1, gen,
                      metadata={"construction": "parity_split", "k": k, "r": r,
                                "delta": delta, "target_dmin": d})
    supports = tuple(tuple(range(g * group_len, (g + 1) * group_len)) for g in range(groups))
    loc = LocalityStructure(r, delta, supports, "all-symbol",
                            exact=_exactness(code, supports, r, delta))
    return code, loc


def random_all_symbol_construct(n: int, k: int, r: int, delta: int,
                                field: FiniteField, seed: int = 0,
                                max_attempts: int = 10):
    """Randomized optimal all-symbol locality code, deterministically verified.

    Columns are sampled from the null space of a block-diagonal stack of
    local MDS parity checks, then certified by checking that every candidate
    information pattern (at most r coordinates per local group) has full
    rank; the distance oracle in the test-suite re-checks the result.  The
    field only needs enough elements for the local parity checks (q >= n);
    correctness rests on the certificate, not on a field-size bound.

    Returns (VectorCode, LocalityStructure, attempts_used).
    """
    group_len = r + delta - 1
    if n % group_len != 0:
        raise DivisibilityViolation(f"need (r+delta-1) | n, got {group_len} and {n}")
    groups = n // group_len
    if k > n - groups * (delta - 1):
        raise InfeasibleParams(
            f"dimension {k} too large: at most {n - groups * (delta - 1)} "
            f"with {groups} local parity groups"
        )
    if field.q < n:
        raise FieldTooSmall(f"local parity checks need q >= n = {n}")
    blocks = [
        vandermonde(field, delta - 1, range(g * group_len, (g + 1) * group_len))
        for g in range(groups)
    ]
    h0 = block_diag(field, blocks)
    dual_basis = h0.null_space()  # (n - groups*(delta-1)) x n

    cores = [
        S
        for S in combinations(range(n), k)
        if all(
            sum(1 for e in S if g * group_len <= e < (g + 1) * group_len) <= r
            for g in range(groups)
        )
    ]
    rng = np.random.default_rng(seed)
    best = None
    for attempt in range(1, max_attempts + 1):
        mix = Matrix.random(field, k, dual_basis.rows, rng)
        gen = mix @ dual_basis
        if gen.rank() != k:
            continue
        failed = sum(1 for S in cores if gen.take_columns(S).rank() != k)
        if failed == 0:
            code = VectorCode(field, n, 1, gen,
                              metadata={"construction": "random_all_symbol",
                                        "seed": seed, "attempts": attempt,
                                        "k": k, "r": r, "delta": delta})
            supports = tuple(
                tuple(range(g * group_len, (g + 1) * group_len)) for g in range(groups)
            )
            loc = LocalityStructure(r, delta, supports, "all-symbol",
                                    exact=_exactness(code, supports, r, delta))
            return code, loc, attempt
        if best is None or failed < best:
            best = failed
    raise ExhaustedAttempts(
        f"no certified code in {max_attempts} attempts "
        f"(best attempt missed {best} of {len(cores)} information patterns)",
        attempts=max_attempts,
        best=best,
    )
