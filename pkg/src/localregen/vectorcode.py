"""Vector codes: thick-column generator matrices and exhaustive oracles.

A vector code of block length n over GF(q)^alpha is stored as its K x n*alpha
scalar generator matrix; thick column i is the slab of alpha thin columns
serving storage node i.  Scalar codes are the alpha = 1 case.

The oracles here (minimum distance, quasi-dimension, rank-accumulation
profile) are exhaustive subset-rank searches: d_min >= e + 1 exactly when
every restriction to n - e thick columns still has full rank K.  They are
meant for desk-scale certification and guarded by a work cap
(LRC_MAX_ORACLE_SUBSETS, overridable per call with force=True).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from . import kernels
from .errors import (
    EmptyShortening,
    EmptySupport,
    NotOptimalInput,
    TooLarge,
    Unrecoverable,
)
from .field import FiniteField
from .linalg import Matrix, _py_eliminate, _use_kernels

DEFAULT_NODE_LIMIT = 20
DEFAULT_MAX_SUBSETS = 5_000_000


def _subset_cap():
    return int(os.environ.get("LRC_MAX_ORACLE_SUBSETS", str(DEFAULT_MAX_SUBSETS)))


class _Budget:
    """Counts subset-rank evaluations against the configured cap."""

    def __init__(self, n, force):
        self.force = force
        self.used = 0
        self.cap = _subset_cap()
        if not force and n > DEFAULT_NODE_LIMIT:
            raise TooLarge(
                f"exhaustive oracle on n = {n} thick columns exceeds the default "
                f"limit {DEFAULT_NODE_LIMIT}; pass force=True to override"
            )

    def spend(self, amount=1):
        self.used += amount
        if not self.force and self.used > self.cap:
            raise TooLarge(
                f"oracle exceeded LRC_MAX_ORACLE_SUBSETS = {self.cap}; "
                "raise the cap or pass force=True"
            )


class VectorCode:
    """An [n, K, d_min, alpha, kappa] code given by its scalar generator."""

    def __init__(self, field: FiniteField, n: int, alpha: int, generator: Matrix,
                 metadata=None, check=True):
        if generator.cols != n * alpha:
            raise ValueError(f"generator has {generator.cols} columns, expected {n}*{alpha}")
        self.field = field
        self.n = int(n)
        self.alpha = int(alpha)
        self.generator = generator
        self.metadata = dict(metadata or {})
        self._rank_cache = {}
        if check:
            if generator.rank() != generator.rows:
                raise ValueError("generator rows are linearly dependent")
            slab_ok = all(
                self._thick_rank((i,)) == min(alpha, self.K) for i in range(n)
            )
            if not slab_ok:
                if self.metadata.get("shortened"):
                    self.metadata["slab_rank_ok"] = False
                else:
                    raise ValueError("some thick column has dependent thin columns")

    # -- basics -----------------------------------------------------------

    @property
    def K(self):
        return self.generator.rows

    @property
    def scalar_length(self):
        return self.n * self.alpha

    def thick_columns(self, nodes):
        """Scalar column indices backing the given thick columns."""
        out = []
        for i in nodes:
            out.extend(range(i * self.alpha, (i + 1) * self.alpha))
        return out

    def restrict(self, nodes) -> Matrix:
        return self.generator.take_columns(self.thick_columns(nodes))

    def _thick_rank(self, nodes):
        nodes = tuple(nodes)
        hit = self._rank_cache.get(nodes)
        if hit is not None:
            return hit
        g3 = self.generator.data.reshape(self.K, self.n, self.alpha)
        sub = np.ascontiguousarray(
            g3[:, list(nodes), :].reshape(self.K, len(nodes) * self.alpha)
        )
        if _use_kernels(self.field):
            r = int(kernels.eliminate(sub, *self.field.kernel_args(), False))
        else:
            r = _py_eliminate(self.field, sub, False)
        if len(self._rank_cache) < 1 << 18:
            self._rank_cache[nodes] = r
        return r

    def encode(self, message) -> np.ndarray:
        """Encode K message symbols; returns an (n, alpha) array of node contents."""
        msg = np.asarray(message, dtype=np.int64).reshape(1, self.K)
        word = (Matrix(self.field, msg) @ self.generator).data
        return word.reshape(self.n, self.alpha).copy()

    def decode_from(self, nodes, symbols) -> np.ndarray:
        """Recover the K message symbols from the contents of the given nodes.

        `symbols` is the (len(nodes), alpha) array of stored values.  Raises
        Unrecoverable when the nodes do not determine the message.
        """
        nodes = list(nodes)
        sub = self.restrict(nodes)
        if sub.rank() < self.K:
            raise Unrecoverable(f"nodes {nodes} span rank {sub.rank()} < K = {self.K}")
        rhs = Matrix(self.field, np.asarray(symbols, dtype=np.int64).reshape(1, -1))
        sol = sub.T.solve(rhs.T)
        return sol.data.reshape(self.K).copy()

    # -- oracles ------------------------------------------------------------

    def min_distance(self, force=False) -> int:
        budget = _Budget(self.n, force)
        for e in range(1, self.n + 1):
            size = self.n - e
            budget.spend(comb(self.n, size))
            for S in combinations(range(self.n), size):
                if self._thick_rank(S) < self.K:
                    return e
        raise AssertionError("unreachable: empty restriction has rank 0 < K")

    def quasi_dimension(self, force=False) -> int:
        return len(self.min_info_set(force=force))

    def min_info_set(self, exclude=(), force=False):
        """A minimum-cardinality set of thick columns of full rank K.

        Searches sizes in increasing order, so the winner is minimal; its
        minimality is re-verified explicitly before returning.
        """
        budget = _Budget(self.n, force)
        pool = [i for i in range(self.n) if i not in set(exclude)]
        lo = -(-self.K // self.alpha)
        for size in range(lo, len(pool) + 1):
            budget.spend(comb(len(pool), size))
            for S in combinations(pool, size):
                if self._thick_rank(S) == self.K:
                    for T in combinations(S, size - 1):
                        if self._thick_rank(T) == self.K:
                            raise AssertionError(f"info set {S} not minimal: {T} spans")
                    return tuple(S)
        raise Unrecoverable(f"no information set avoiding {tuple(exclude)}")

    def ura_profile(self, force=False):
        """RankProfile if ranks are uniform across equal-size subsets, else NotURA."""
        budget = _Budget(self.n, force)
        prev = 0
        increments = []
        for size in range(1, self.n + 1):
            budget.spend(comb(self.n, size))
            it = combinations(range(self.n), size)
            first = next(it)
            r0 = self._thick_rank(first)
            for S in it:
                r = self._thick_rank(S)
                if r != r0:
                    return NotURA(size=size, subset_a=first, rank_a=r0,
                                  subset_b=S, rank_b=r)
            increments.append(r0 - prev)
            prev = r0
        return RankProfile(tuple(increments))

    # -- derived codes --------------------------------------------------------

    def puncture(self, nodes) -> "VectorCode":
        nodes = sorted(set(nodes))
        if not nodes:
            raise EmptySupport("cannot puncture to the empty set")
        if any(i < 0 or i >= self.n for i in nodes):
            raise ValueError(f"node indices out of range: {nodes}")
        sub = self.restrict(nodes)
        rank, basis = sub.rref()
        if rank == self.K:
            basis = sub  # keep the caller's message basis when no rows collapse
        meta = {"punctured_from": self.metadata.get("name"), "support": tuple(nodes)}
        return VectorCode(self.field, len(nodes), self.alpha, basis, metadata=meta)

    def shorten(self, nodes) -> "VectorCode":
        """Subcode vanishing outside `nodes`, restricted to `nodes`."""
        nodes = sorted(set(nodes))
        if any(i < 0 or i >= self.n for i in nodes):
            raise ValueError(f"node indices out of range: {nodes}")
        complement = [i for i in range(self.n) if i not in set(nodes)]
        if not complement:
            return self
        outside = self.restrict(complement)
        coeffs = outside.T.null_space()  # rows x with x @ outside = 0
        if coeffs.rows == 0:
            raise EmptyShortening("no nonzero codeword vanishes on the complement")
        gen = coeffs @ self.restrict(nodes)
        meta = {"shortened": True, "support": tuple(nodes)}
        return VectorCode(self.field, len(nodes), self.alpha, gen, metadata=meta)

    def is_vector_mds(self, force=False, cross_validate=True) -> bool:
        if self.K % self.alpha != 0:
            return False
        kappa = self.K // self.alpha
        by_oracle = self.min_distance(force=force) == self.n - kappa + 1
        if cross_validate:
            by_blocks = self._mds_by_block_submatrices(kappa, force)
            if by_blocks is not None and by_blocks != by_oracle:
                raise AssertionError(
                    "erasure oracle and block-submatrix criterion disagree; "
                    "this is a bug"
                )
        return by_oracle

    def _mds_by_block_submatrices(self, kappa, force):
        """Block criterion on a systematic form; None if not reducible."""
        info = None
        for S in combinations(range(self.n), kappa):
            if self._thick_rank(S) == self.K:
                info = S
                break
        if info is None:
            return False  # no kappa thick columns span: certainly not MDS
        rest = [i for i in range(self.n) if i not in info]
        total = sum(
            comb(kappa, s) * comb(len(rest), s)
            for s in range(1, min(kappa, len(rest)) + 1)
        )
        if not force and total > _subset_cap():
            return None
        basis = self.restrict(info)
        try:
            pmat = basis.inv() @ self.restrict(rest)
        except Exception:
            return None
        a = pmat.data.reshape(self.K, len(rest), self.alpha)
        for s in range(1, min(kappa, len(rest)) + 1):
            for rblocks in combinations(range(kappa), s):
                rows = [ri for b in rblocks for ri in range(b * self.alpha, (b + 1) * self.alpha)]
                for cblocks in combinations(range(len(rest)), s):
                    sq = np.ascontiguousarray(
                        a[rows][:, list(cblocks), :].reshape(s * self.alpha, s * self.alpha)
                    )
                    if _use_kernels(self.field):
                        det = kernels.det_in_place(sq, *self.field.kernel_args())
                    else:
                        from .linalg import _py_det

                        det = _py_det(self.field, sq)
                    if det == 0:
                        return False
        return True

    def is_core(self, coords, thick=False) -> bool:
        """True when the restriction to `coords` has full column rank.

        thick=False treats `coords` as scalar column indices of the expanded
        generator; thick=True as thick-column indices.
        """
        coords = list(coords)
        if thick:
            return self._thick_rank(coords) == len(coords) * self.alpha
        return self.generator.take_columns(coords).rank() == len(coords)

    def __repr__(self):
        return (f"VectorCode(n={self.n}, K={self.K}, alpha={self.alpha}, "
                f"field={self.field})")


@dataclass(frozen=True)
class RankProfile:
    """Rank increments a_1..a_n accumulated by growing thick-column sets."""

    a: tuple

    def __post_init__(self):
        if any(x < 0 for x in self.a):
            raise ValueError(f"profile entries must be nonnegative: {self.a}")
        if any(self.a[i] < self.a[i + 1] for i in range(len(self.a) - 1)):
            raise ValueError(f"profile must be nonincreasing: {self.a}")

    @property
    def total(self):
        return sum(self.a)


@dataclass(frozen=True)
class NotURA:
    """Witness that two equal-size subsets accumulate different rank."""

    size: int
    subset_a: tuple
    rank_a: int
    subset_b: tuple
    rank_b: int


@dataclass(frozen=True)
class LocalityStructure:
    r: int
    delta: int
    supports: tuple
    kind: str  # "information" | "all-symbol"
    exact: bool = False

    def __post_init__(self):
        if self.delta < 2:
            raise ValueError(f"local distance delta must be >= 2, got {self.delta}")
        if self.r < 1:
            raise ValueError(f"locality r must be >= 1, got {self.r}")
        if self.kind not in ("information", "all-symbol"):
            raise ValueError(f"unknown locality kind {self.kind!r}")
        object.__setattr__(
            self, "supports", tuple(tuple(sorted(set(s))) for s in self.supports)
        )

    @property
    def union(self):
        out = set()
        for s in self.supports:
            out |= set(s)
        return tuple(sorted(out))


def validate_locality(code: VectorCode, loc: LocalityStructure, force=False):
    """Raise if `loc` is not a valid (r, delta) locality structure for `code`."""
    n_l = loc.r + loc.delta - 1
    for s in loc.supports:
        if not s:
            raise EmptySupport("locality support must be nonempty")
        if s[-1] >= code.n:
            raise ValueError(f"support {s} exceeds block length {code.n}")
        if len(s) > n_l:
            raise ValueError(f"support {s} longer than r + delta - 1 = {n_l}")
        local = code.puncture(s)
        d_loc = local.min_distance(force=force)
        if d_loc < loc.delta:
            raise ValueError(f"local code on {s} has distance {d_loc} < delta = {loc.delta}")
        if loc.exact and (len(s) != n_l or d_loc != loc.delta):
            raise ValueError(f"support {s} is not exact (length {len(s)}, distance {d_loc})")
    if loc.kind == "all-symbol":
        if loc.union != tuple(range(code.n)):
            raise ValueError("all-symbol locality must cover every thick column")
    if code._thick_rank(loc.union) != code.K:
        raise ValueError("locality supports do not span the code")


@dataclass(frozen=True)
class WitnessSet:
    """Thick-column set T with rank(G|_T) < K, certifying d_min <= n - |T|."""

    nodes: tuple
    rank: int
    distance_bound: int


def find_witness(code: VectorCode, loc: LocalityStructure) -> WitnessSet:
    """Greedy accumulation of local supports while the rank stays below K.

    Follows the bound-proof procedure: keep absorbing whole local supports
    that add rank; when the next support would reach full rank, absorb a
    maximal partial subset instead and stop.
    """
    kk = code.K
    t_set = set()
    rank_t = 0
    while rank_t < kk:
        progressed = False
        for s in loc.supports:
            union = tuple(sorted(t_set | set(s)))
            r_union = code._thick_rank(union)
            if r_union == rank_t:
                continue
            progressed = True
            if r_union < kk:
                t_set = set(union)
                rank_t = r_union
            else:
                extension = set()
                for e in sorted(set(s) - t_set):
                    cand = tuple(sorted(t_set | extension | {e}))
                    if code._thick_rank(cand) < kk:
                        extension.add(e)
                t_set |= extension
                nodes = tuple(sorted(t_set))
                return WitnessSet(nodes, code._thick_rank(nodes), code.n - len(nodes))
            break
        if not progressed:
            break
    nodes = tuple(sorted(t_set))
    return WitnessSet(nodes, code._thick_rank(nodes), code.n - len(nodes))


@dataclass(frozen=True)
class StructureReport:
    passed: bool
    local_codes_ok: bool
    supports_disjoint: bool
    rank_conditions_ok: bool
    details: tuple


def check_optimal_structure(code: VectorCode, loc: LocalityStructure,
                            force=False) -> StructureReport:
    """Verify the structure forced on a distance-optimal code with locality.

    Scalar codes (alpha = 1, requires r | k): every local code must be an
    [r+delta-1, r, delta] MDS code, supports pairwise disjoint, local column
    spaces jointly independent.  Vector codes (requires strict
    sub-additivity of the local profile or K_L | K, plus distance and rate
    optimality): local codes must be erasure-optimal uniform-accumulation
    codes of quasi-dimension r, again support-disjoint and rank-disjoint.
    Raises NotOptimalInput when a precondition fails, naming it.
    """
    from . import bounds

    details = []
    d_min = code.min_distance(force=force)
    locals_ = [code.puncture(s) for s in loc.supports]
    if code.alpha == 1:
        k = code.K
        if k % loc.r != 0:
            raise NotOptimalInput(f"scalar structure check needs r | k; r={loc.r}, k={k}")
        bound = bounds.scalar_locality_bound(code.n, k, loc.r, loc.delta)
        if d_min != bound:
            raise NotOptimalInput(f"code is not distance optimal: d_min={d_min}, bound={bound}")
        group_size = loc.r + loc.delta - 1
        local_ok = True
        for s, lc in zip(loc.supports, locals_):
            ok = (len(s) == group_size and lc.K == loc.r
                  and lc.min_distance(force=force) == loc.delta)
            if not ok:
                local_ok = False
                details.append(f"local code on {s} is not [{group_size},{loc.r},{loc.delta}] MDS")
        t = k // loc.r
        rank_ok = True
        for idxs in combinations(range(len(loc.supports)), min(t, len(loc.supports))):
            union = [e for i in idxs for e in loc.supports[i]]
            expect = sum(locals_[i].K for i in idxs)
            if code._thick_rank(tuple(sorted(set(union)))) != expect:
                rank_ok = False
                details.append(f"supports {idxs} have dependent column spaces")
    else:
        profiles = []
        for s, lc in zip(loc.supports, locals_):
            prof = lc.ura_profile(force=force)
            if isinstance(prof, NotURA):
                raise NotOptimalInput(f"local code on {s} is not URA: {prof}")
            profiles.append(prof.a)
        if len(set(profiles)) != 1:
            raise NotOptimalInput(f"local codes have differing profiles: {set(profiles)}")
        calc = bounds.ProfileCalculator(profiles[0])
        k_l = calc.K_L
        if d_min != bounds.ura_bound(code.n, code.K, calc):
            raise NotOptimalInput(
                f"code is not distance optimal: d_min={d_min}, "
                f"bound={bounds.ura_bound(code.n, code.K, calc)}")
        if code.K != bounds.rate_bound(code.n, d_min, calc):
            raise NotOptimalInput(
                f"code is not rate optimal: K={code.K}, "
                f"P(n-d+1)={bounds.rate_bound(code.n, d_min, calc)}")
        strict = calc.strictly_subadditive()
        divides = code.K % k_l == 0
        if not (strict or divides):
            raise NotOptimalInput("structure check needs strict sub-additivity or K_L | K")
        group_size = loc.r + loc.delta - 1
        local_ok = True
        for s, lc in zip(loc.supports, locals_):
            ok = (len(s) == group_size
                  and lc.quasi_dimension(force=force) == loc.r
                  and lc.min_distance(force=force) == loc.delta)
            if not ok:
                local_ok = False
                details.append(f"local code on {s} is not erasure-optimal URA of q-dim {loc.r}")
        u1 = -(-code.K // k_l) - 1
        rank_ok = True
        # u1-subsets must be rank-disjoint in both cases; (u1+1)-subsets are
        # rank-disjoint when K_L | K, and merely non-redundant when only
        # strict sub-additivity holds.
        for size, expect_direct in ((u1, True), (u1 + 1, divides)):
            if size < 1 or size > len(loc.supports):
                continue
            for idxs in combinations(range(len(loc.supports)), size):
                union = tuple(sorted({e for i in idxs for e in loc.supports[i]}))
                r_union = code._thick_rank(union)
                if expect_direct:
                    if r_union != min(size * k_l, code.K):
                        rank_ok = False
                        details.append(f"supports {idxs} are not rank-disjoint")
                else:
                    # each member must contribute rank the others do not have
                    for drop in idxs:
                        others = tuple(sorted({e for i in idxs if i != drop
                                               for e in loc.supports[i]}))
                        if code._thick_rank(others) == r_union:
                            rank_ok = False
                            details.append(f"support {drop} adds no rank within {idxs}")

    disjoint = True
    seen = set()
    for s in loc.supports:
        if seen & set(s):
            disjoint = False
            details.append(f"support {s} overlaps earlier supports")
        seen |= set(s)

    passed = local_ok and disjoint and rank_ok
    return StructureReport(passed, local_ok, disjoint, rank_ok, tuple(details))
