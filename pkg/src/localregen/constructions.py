"""Vector codes with locality whose local codes are regenerating codes,
plus stacking and the cyclic-shift product construction.

Every family returns a ConstructedCode carrying the vector code, its
locality structure, the per-support regenerating-code objects (when the
local codes regenerate), and the family's claimed minimum distance.  The
claims are certified exhaustively by the verification layer, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

import numpy as np

from . import bounds
from .errors import (
    DivisibilityViolation,
    ExhaustedAttempts,
    FieldTooSmall,
    InfeasibleComponent,
    InfeasibleParams,
    StageOneFailed,
)
from .field import FiniteField
from .linalg import Matrix, rs_generator, systematic_form
from .regen import (
    AlignedRepair,
    MdsRepair,
    PmRepair,
    RbtRepair,
    RegenCode,
    RegenParams,
    pm_msr_construct,
    trivial_msr,
)
from .scalar import pyramid_construct, random_all_symbol_construct
from .vectorcode import LocalityStructure, VectorCode


@dataclass
class ConstructedCode:
    code: VectorCode
    locality: LocalityStructure | None
    family: str
    claimed_dmin: int | None
    local_regen: tuple | None = None  # RegenCode per support, or None entries
    regen: RegenCode | None = None  # whole-code regenerating structure
    params: dict = dc_field(default_factory=dict)

    @property
    def field(self):
        return self.code.field


# -- component providers -------------------------------------------------------

def _msr_component(n: int, k: int, d: int | None, field, seed,
                   d_cap: int | None = None, component: RegenCode | None = None):
    """An (n, k, d) exact-repair MSR code, choosing a provider for d.

    d_cap bounds the repair degree when the construction requires it; when d
    is not given, the largest feasible value is used for the product-matrix
    provider, falling back to the trivial (alpha = 1) provider at d = k.
    A caller-supplied component (for example, one loaded from a descriptor)
    is accepted after checking its parameters.
    """
    if component is not None:
        p = component.params
        if (p.n, p.k) != (n, k):
            raise InfeasibleComponent(
                f"external component is ({p.n},{p.k},{p.d}); need n={n}, k={k}")
        if p.point != "MSR":
            raise InfeasibleComponent(f"external component is {p.point}, not MSR")
        if d is not None and p.d != d:
            raise InfeasibleComponent(f"external component has d={p.d}, asked d={d}")
        if d_cap is not None and p.d > d_cap:
            raise InfeasibleComponent(f"external component d={p.d} exceeds cap {d_cap}")
        if component.field != field:
            raise InfeasibleComponent("external component uses a different field")
        return component, "external"
    if d is None:
        hi = n - 1 if d_cap is None else min(d_cap, n - 1)
        if hi >= 2 * k - 2 and hi >= k:
            d = hi
        elif k <= hi:
            d = k
        else:
            raise InfeasibleComponent(
                f"no MSR component with k = {k} and repair degree <= {hi}"
            )
    if d_cap is not None and d > d_cap:
        raise InfeasibleComponent(f"repair degree {d} exceeds the cap {d_cap}")
    if d >= 2 * k - 2 and d >= k:
        return pm_msr_construct(n, k, d, field, seed=seed), "product-matrix"
    if d == k:
        return trivial_msr(n, k, field), "trivial"
    raise InfeasibleComponent(
        f"no MSR provider for (n,k,d) = ({n},{k},{d}); product-matrix needs "
        f"d >= 2k-2 and the trivial provider needs d = k"
    )


def puncture_regen(regen: RegenCode, keep) -> RegenCode:
    """Restrict a regenerating code to |keep| > d nodes; parameters carry over."""
    keep = tuple(sorted(set(keep)))
    p = regen.params
    if len(keep) <= p.d:
        raise InfeasibleParams(
            f"puncturing to {len(keep)} nodes breaks repair (d = {p.d})"
        )
    gen = regen.code.restrict(keep)
    code = VectorCode(regen.field, len(keep), p.alpha, gen,
                      metadata=dict(regen.code.metadata, punctured=tuple(keep)))
    params = RegenParams(len(keep), p.k, p.d, p.alpha, p.beta, p.B)
    info = regen.repair
    if isinstance(info, PmRepair):
        repair = PmRepair(info.phi, info.lam,
                          tuple(info.node_map[i] for i in keep), info.virtual)
    elif isinstance(info, AlignedRepair):
        pos = {node: i for i, node in enumerate(keep)}
        table = {
            (pos[f], tuple(pos[h] for h in hs)): coeffs
            for (f, hs), coeffs in info.table.items()
            if f in pos and all(h in pos for h in hs)
        }
        repair = AlignedRepair(table)
    elif isinstance(info, MdsRepair):
        repair = MdsRepair()
    else:
        raise InfeasibleParams(
            f"{type(info).__name__} codes do not support puncturing"
        )
    return RegenCode(params, code, repair)


def shorten_regen(regen: RegenCode, keep) -> RegenCode:
    """Shorten an MSR code to `keep`; (n, k, d) all drop by the same amount."""
    keep = tuple(sorted(set(keep)))
    p = regen.params
    gamma = p.n - len(keep)
    if gamma == 0:
        return regen
    if gamma >= p.k:
        raise InfeasibleParams(f"shortening by {gamma} >= k = {p.k} leaves nothing")
    code = regen.code.shorten(keep)
    params = RegenParams(len(keep), p.k - gamma, p.d - gamma, p.alpha, p.beta,
                         (p.k - gamma) * p.alpha)
    info = regen.repair
    dropped = tuple(i for i in range(p.n) if i not in set(keep))
    if isinstance(info, PmRepair):
        repair = PmRepair(info.phi, info.lam,
                          tuple(info.node_map[i] for i in keep),
                          info.virtual + tuple(info.node_map[i] for i in dropped))
    elif isinstance(info, MdsRepair):
        repair = MdsRepair()
    else:
        raise InfeasibleParams(
            f"{type(info).__name__} codes do not support shortening"
        )
    return RegenCode(params, code, repair)


# -- MSR-local families ---------------------------------------------------------

def sum_parity_msr(r: int, delta: int, m: int, Delta: int, field: FiniteField,
                   d: int | None = None, seed: int = 0,
                   component: RegenCode | None = None) -> ConstructedCode:
    """m support-disjoint MSR local codes sharing Delta sum-parity nodes.

    The component is an (n_L + Delta, r, d) MSR code with d <= r + delta - 2;
    its generator splits as [G_L | Q] and every local code reuses G_L.
    Distance-optimal (= delta + Delta) whenever delta >= Delta.
    """
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    n_l = r + delta - 1
    component, provider = _msr_component(n_l + Delta, r, d, field, seed,
                                         d_cap=r + delta - 2, component=component)
    alpha = component.params.alpha
    gen0 = component.code.generator  # r*alpha x (n_l + Delta)*alpha
    g_l = gen0.data[:, : n_l * alpha]
    q = gen0.data[:, n_l * alpha :]
    n = m * n_l + Delta
    kk = m * r * alpha
    gen = np.zeros((kk, n * alpha), dtype=np.int64)
    supports = []
    for i in range(m):
        rows = slice(i * r * alpha, (i + 1) * r * alpha)
        cols = slice(i * n_l * alpha, (i + 1) * n_l * alpha)
        gen[rows, cols] = g_l
        gen[rows, m * n_l * alpha :] = q
        supports.append(tuple(range(i * n_l, (i + 1) * n_l)))
    code = VectorCode(field, n, alpha, Matrix(field, gen),
                      metadata={"construction": "sum_parity_msr", "seed": seed,
                                "provider": provider})
    kind = "all-symbol" if Delta == 0 else "information"
    loc = LocalityStructure(r, delta, tuple(supports), kind, exact=True)
    local = puncture_regen(component, range(n_l)) if Delta else component
    claimed = bounds.msr_k_bound(n, kk, alpha, r, delta) if delta >= Delta else None
    return ConstructedCode(code, loc, "sum_parity_msr", claimed,
                           local_regen=(local,) * m,
                           params={"r": r, "delta": delta, "m": m, "Delta": Delta,
                                   "d": component.params.d, "seed": seed})


def pyramid_msr(r: int, delta: int, m: int, Delta: int, field: FiniteField,
                d: int | None = None, seed: int = 0,
                component: RegenCode | None = None) -> ConstructedCode:
    """Split the local-parity thick columns of a systematic MSR code across
    m blocks; local codes are shortened MSR codes."""
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    n_parent = m * r + delta - 1 + Delta
    parent, provider = _msr_component(n_parent, m * r, d, field, seed,
                                      d_cap=m * r + delta - 2, component=component)
    alpha = parent.params.alpha
    inner = puncture_regen(parent, range(n_parent - Delta)) if Delta else parent
    sys_gen = systematic_form(inner.code.generator)  # [I_mra | Q]
    # parent generator in the same (row-reduced) basis, for the global parities
    full_sys = systematic_form(parent.code.generator)
    kk = m * r * alpha
    q_cols = sys_gen.data[:, kk:]
    q_glob = full_sys.data[:, (n_parent - Delta) * alpha :]
    n = m * (r + delta - 1) + Delta
    n_l = r + delta - 1
    gen = np.zeros((kk, n * alpha), dtype=np.int64)
    supports = []
    for i in range(m):
        rows = slice(i * r * alpha, (i + 1) * r * alpha)
        base = i * n_l * alpha
        gen[rows, base : base + r * alpha] = np.eye(r * alpha, dtype=np.int64)
        gen[rows, base + r * alpha : base + n_l * alpha] = q_cols[
            i * r * alpha : (i + 1) * r * alpha, :
        ]
        supports.append(tuple(range(i * n_l, (i + 1) * n_l)))
    gen[:, m * n_l * alpha :] = q_glob
    code = VectorCode(field, n, alpha, Matrix(field, gen),
                      metadata={"construction": "pyramid_msr", "seed": seed,
                                "provider": provider})
    kind = "all-symbol" if Delta == 0 else "information"
    loc = LocalityStructure(r, delta, tuple(supports), kind, exact=True)
    # re-based inner code, so that shortening matches the systematic basis
    inner_sys = RegenCode(inner.params,
                          VectorCode(field, inner.params.n, alpha, sys_gen,
                                     metadata=inner.code.metadata),
                          inner.repair)
    locals_ = tuple(
        shorten_regen(inner_sys,
                      tuple(range(i * r, (i + 1) * r))
                      + tuple(range(m * r, m * r + delta - 1)))
        for i in range(m)
    )
    claimed = bounds.msr_k_bound(n, kk, alpha, r, delta)
    return ConstructedCode(code, loc, "pyramid_msr", claimed,
                           local_regen=locals_,
                           params={"r": r, "delta": delta, "m": m, "Delta": Delta,
                                   "d": parent.params.d, "seed": seed})


def random_msr_local(r: int, delta: int, m: int, Delta: int, field: FiniteField,
                     d: int | None = None, seed: int = 0, max_attempts: int = 10,
                     component: RegenCode | None = None) -> ConstructedCode:
    """Block-diagonal MSR locals plus random global-parity thick columns,
    certified by exhaustive rank checks over the candidate information
    patterns (at most r nodes per local support)."""
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    n_l = r + delta - 1
    component, provider = _msr_component(n_l, r, d, field, seed, d_cap=n_l - 1,
                                         component=component)
    alpha = component.params.alpha
    g_l = component.code.generator.data
    n = m * n_l + Delta
    kk = m * r * alpha
    base = np.zeros((kk, n * alpha), dtype=np.int64)
    supports = []
    for i in range(m):
        rows = slice(i * r * alpha, (i + 1) * r * alpha)
        cols = slice(i * n_l * alpha, (i + 1) * n_l * alpha)
        base[rows, cols] = g_l
        supports.append(tuple(range(i * n_l, (i + 1) * n_l)))
    patterns = [
        T
        for T in combinations(range(n), m * r)
        if all(len(set(T) & set(s)) <= r for s in supports)
    ]
    rng = np.random.default_rng(seed)
    code = None
    for attempt in range(1, max_attempts + 1):
        gen = base.copy()
        gen[:, m * n_l * alpha :] = rng.integers(
            0, field.q, size=(kk, Delta * alpha), dtype=np.int64
        )
        cand = VectorCode(field, n, alpha, Matrix(field, gen),
                          metadata={"construction": "random_msr_local",
                                    "seed": seed, "attempts": attempt,
                                    "provider": provider})
        if all(cand._thick_rank(T) == kk for T in patterns):
            code = cand
            break
    if code is None:
        raise ExhaustedAttempts(
            f"no certified global parities in {max_attempts} attempts",
            attempts=max_attempts,
        )
    kind = "all-symbol" if Delta == 0 else "information"
    loc = LocalityStructure(r, delta, tuple(supports), kind, exact=True)
    claimed = bounds.msr_k_bound(n, kk, alpha, r, delta)
    return ConstructedCode(code, loc, "random_msr_local", claimed,
                           local_regen=(component,) * m,
                           params={"r": r, "delta": delta, "m": m, "Delta": Delta,
                                   "d": component.params.d, "seed": seed})


def random_msr_all_symbol(r: int, delta: int, m: int, ell: int,
                          field: FiniteField, d: int | None = None,
                          seed: int = 0, max_attempts: int = 10,
                          component: RegenCode | None = None) -> ConstructedCode:
    """All-symbol MSR locality via a random parity-check extension of
    block-diagonal local duals; certified on every candidate information
    pattern."""
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    if ell < r:
        raise InfeasibleParams(f"need ell >= r, got ell={ell}, r={r}")
    if m * r < ell:
        raise InfeasibleParams(f"need m >= ell/r, got m={m}, ell={ell}, r={r}")
    n_l = r + delta - 1
    component, provider = _msr_component(n_l, r, d, field, seed, d_cap=n_l - 1,
                                         component=component)
    alpha = component.params.alpha
    h_l = component.code.generator.null_space()  # (delta-1)*alpha x n_l*alpha
    n = m * n_l
    kk = ell * alpha
    h1_rows = (n - ell) * alpha - m * (delta - 1) * alpha
    if h1_rows < 0:
        raise InfeasibleParams("dimension too large for the locality overhead")
    h0 = np.zeros((m * (delta - 1) * alpha, n * alpha), dtype=np.int64)
    for i in range(m):
        h0[i * (delta - 1) * alpha : (i + 1) * (delta - 1) * alpha,
           i * n_l * alpha : (i + 1) * n_l * alpha] = h_l.data
    supports = tuple(tuple(range(i * n_l, (i + 1) * n_l)) for i in range(m))
    cores = [
        S
        for S in combinations(range(n), ell)
        if all(len(set(S) & set(s)) <= r for s in supports)
    ]
    rng = np.random.default_rng(seed)
    code = None
    for attempt in range(1, max_attempts + 1):
        h1 = rng.integers(0, field.q, size=(h1_rows, n * alpha), dtype=np.int64)
        h = Matrix(field, np.vstack([h0, h1]) if h1_rows else h0)
        if h.rank() != (n - ell) * alpha:
            continue
        gen = h.null_space()
        cand = VectorCode(field, n, alpha, gen,
                          metadata={"construction": "random_msr_all_symbol",
                                    "seed": seed, "attempts": attempt,
                                    "provider": provider})
        if all(cand._thick_rank(S) == kk for S in cores):
            code = cand
            break
    if code is None:
        raise ExhaustedAttempts(
            f"no certified parity extension in {max_attempts} attempts",
            attempts=max_attempts,
        )
    loc = LocalityStructure(r, delta, supports, "all-symbol", exact=True)
    claimed = bounds.msr_k_bound(n, kk, alpha, r, delta)
    return ConstructedCode(code, loc, "random_msr_all_symbol", claimed,
                           local_regen=(component,) * m,
                           params={"r": r, "delta": delta, "m": m, "ell": ell,
                                   "d": component.params.d, "seed": seed})


# -- MBR-local families ----------------------------------------------------------

def _rbt_layout(n_l):
    edge_nodes = tuple((a, b) for a in range(n_l) for b in range(a + 1, n_l))
    eid = {e: i for i, e in enumerate(edge_nodes)}
    node_edges = tuple(
        tuple(eid[tuple(sorted((i, j)))] for j in range(n_l) if j != i)
        for i in range(n_l)
    )
    return edge_nodes, node_edges


def _mbr_stage2_columns(n_l, m, Delta, alpha):
    """Scalar-column order mapping stage-1 coordinates onto storage nodes.

    Local block g contributes n_l nodes holding its incident-edge symbols;
    each of the Delta global nodes holds alpha consecutive global parities.
    Returns the stage-1 column index for every (node, slot) pair.
    """
    n_edges = comb(n_l, 2)
    _, node_edges = _rbt_layout(n_l)
    cols = []
    for g in range(m):
        for j in range(n_l):
            cols.extend(g * n_edges + e for e in node_edges[j])
    base = m * n_edges
    for t in range(Delta):
        cols.extend(base + t * alpha + a for a in range(alpha))
    return cols


def _mbr_locals(code, supports, n_l, r, field):
    edge_nodes, node_edges = _rbt_layout(n_l)
    alpha = n_l - 1
    k_l = r * alpha - comb(r, 2)
    out = []
    for s in supports:
        local_code = code.puncture(s)
        params = RegenParams(n_l, r, n_l - 1, alpha, 1, k_l)
        out.append(RegenCode(params, local_code, RbtRepair(edge_nodes, node_edges)))
    return tuple(out)


def rbt_mbr_local(r: int, delta: int, m: int, Delta: int,
                  field: FiniteField) -> ConstructedCode:
    """Repair-by-transfer MBR local codes over a scalar pyramid code.

    Stage 1 builds a pyramid code whose local codes carry the per-block edge
    symbols; stage 2 places each block's symbols on the edges of a complete
    graph; stage 3 groups the remaining parities into Delta global nodes.
    """
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    n_l = r + delta - 1
    alpha = n_l - 1
    k_l = r * alpha - comb(r, 2)
    n_edges = comb(n_l, 2)
    delta_l = n_edges - k_l + 1
    scalar_len = m * n_edges + Delta * alpha
    if delta_l == 1:
        if field.q < scalar_len:
            raise FieldTooSmall(
                f"stage-1 code needs q >= {scalar_len}, got {field.q}")
        stage1 = systematic_form(rs_generator(field, m * n_edges, scalar_len))
    else:
        stage1, _ = pyramid_construct(m * k_l, k_l, delta_l,
                                      delta_l + Delta * alpha, field)
        stage1 = stage1.generator
    cols = _mbr_stage2_columns(n_l, m, Delta, alpha)
    gen = stage1.take_columns(cols)
    n = m * n_l + Delta
    code = VectorCode(field, n, alpha, gen,
                      metadata={"construction": "rbt_mbr_local"})
    supports = tuple(tuple(range(i * n_l, (i + 1) * n_l)) for i in range(m))
    kind = "all-symbol" if Delta == 0 else "information"
    loc = LocalityStructure(r, delta, supports, kind, exact=True)
    claimed = bounds.mbr_bound(n, m * k_l, r, delta)
    return ConstructedCode(code, loc, "rbt_mbr_local", claimed,
                           local_regen=_mbr_locals(code, supports, n_l, r, field),
                           params={"r": r, "delta": delta, "m": m, "Delta": Delta})


def rbt_mbr_all_symbol(r: int, delta: int, m: int, ell: int, field: FiniteField,
                       seed: int = 0, max_attempts: int = 10) -> ConstructedCode:
    """All-symbol MBR locality: repair-by-transfer codes over a scalar
    all-symbol-locality stage-1 code (plain MDS when the local distance
    degenerates to 1)."""
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    if ell > m:
        raise InfeasibleParams(f"need ell <= m, got ell={ell}, m={m}")
    n_l = r + delta - 1
    alpha = n_l - 1
    k_l = r * alpha - comb(r, 2)
    n_edges = comb(n_l, 2)
    delta_l = n_edges - k_l + 1
    scalar_len = m * n_edges
    if field.q < scalar_len:
        raise FieldTooSmall(f"stage-1 code needs q >= {scalar_len}, got {field.q}")
    if delta_l == 1:
        stage1 = rs_generator(field, ell * k_l, scalar_len)
    else:
        try:
            s1_code, _, _ = random_all_symbol_construct(
                scalar_len, ell * k_l, k_l, delta_l, field,
                seed=seed, max_attempts=max_attempts)
        except ExhaustedAttempts as exc:
            raise StageOneFailed(f"stage-1 search failed: {exc}") from exc
        stage1 = s1_code.generator
    cols = _mbr_stage2_columns(n_l, m, 0, alpha)
    gen = stage1.take_columns(cols)
    n = m * n_l
    code = VectorCode(field, n, alpha, gen,
                      metadata={"construction": "rbt_mbr_all_symbol", "seed": seed})
    supports = tuple(tuple(range(i * n_l, (i + 1) * n_l)) for i in range(m))
    loc = LocalityStructure(r, delta, supports, "all-symbol", exact=True)
    claimed = (m - ell) * n_l + delta
    return ConstructedCode(code, loc, "rbt_mbr_all_symbol", claimed,
                           local_regen=_mbr_locals(code, supports, n_l, r, field),
                           params={"r": r, "delta": delta, "m": m, "ell": ell,
                                   "seed": seed})


# -- stacking and the cyclic product construction --------------------------------

def stack(base: ConstructedCode, alpha: int) -> ConstructedCode:
    """alpha independent copies of a scalar code, one per thin-column slot."""
    if base.code.alpha != 1:
        raise InfeasibleParams("stacking takes a scalar code")
    if alpha == 1:
        return base
    g = base.code.generator.data
    k, n = g.shape
    gen = np.zeros((k * alpha, n * alpha), dtype=np.int64)
    for a in range(alpha):
        gen[a * k : (a + 1) * k, a :: alpha] = g
    code = VectorCode(base.field, n, alpha, Matrix(base.field, gen),
                      metadata={"construction": "stack", "base": base.family})
    return ConstructedCode(code, base.locality, "stack", base.claimed_dmin,
                           params={"alpha": alpha, "base": base.family,
                                   "base_params": base.params})


def product_cyclic(n: int, kappa: int, r: int, delta: int,
                   field: FiniteField) -> ConstructedCode:
    """Row-MDS x column-MDS product code with per-row cyclic shifts inside
    each group of r + delta - 1 nodes; all-symbol locality with alpha equal
    to the group size."""
    if delta < 2:
        raise InfeasibleParams(f"need delta >= 2, got {delta}")
    group_len = r + delta - 1
    if n % group_len != 0:
        raise DivisibilityViolation(f"need (r+delta-1) | n, got {group_len} and {n}")
    k_row = kappa + (bounds.ceil_div(kappa, r) - 1) * (delta - 1)
    if k_row >= n:
        raise InfeasibleParams(
            f"row dimension {k_row} >= n = {n} leaves no erasure tolerance"
        )
    if field.q < n:
        raise FieldTooSmall(f"row code needs q >= n = {n}")
    g_row = rs_generator(field, k_row, n).data
    g_col = rs_generator(field, r, group_len).data
    kk = r * k_row
    gen = np.zeros((kk, n * group_len), dtype=np.int64)
    for t in range(kk):
        msg = np.zeros((r, k_row), dtype=np.int64)
        msg[t // k_row, t % k_row] = 1
        stage_a = Matrix(field, msg) @ Matrix(field, g_row)  # r x n
        arr = (Matrix(field, g_col.T) @ stage_a).data.copy()  # group_len x n
        for g in range(n // group_len):
            blockcols = slice(g * group_len, (g + 1) * group_len)
            block = arr[:, blockcols]
            for i in range(group_len):
                block[i] = np.roll(block[i], i)
            arr[:, blockcols] = block
        gen[t] = arr.T.reshape(-1)  # node j holds column j
    code = VectorCode(field, n, group_len, Matrix(field, gen),
                      metadata={"construction": "product_cyclic"})
    supports = tuple(
        tuple(range(g * group_len, (g + 1) * group_len))
        for g in range(n // group_len)
    )
    exact = all(
        code.puncture(s).min_distance() == delta for s in supports
    )
    loc = LocalityStructure(r, delta, supports, "all-symbol", exact=exact)
    claimed = bounds.kappa_bound(n, kappa, r, delta)
    return ConstructedCode(code, loc, "product_cyclic", claimed,
                           params={"n": n, "kappa": kappa, "r": r, "delta": delta})


# -- dispatch --------------------------------------------------------------------

FAMILIES = {
    "sum_parity_msr": sum_parity_msr,
    "pyramid_msr": pyramid_msr,
    "random_msr_local": random_msr_local,
    "random_msr_all_symbol": random_msr_all_symbol,
    "rbt_mbr_local": rbt_mbr_local,
    "rbt_mbr_all_symbol": rbt_mbr_all_symbol,
    "product_cyclic": product_cyclic,
}


def build(family: str, field: FiniteField, **params) -> ConstructedCode:
    try:
        fn = FAMILIES[family]
    except KeyError:
        raise InfeasibleParams(
            f"unknown family {family!r}; choose from {sorted(FAMILIES)}"
        ) from None
    return fn(field=field, **params)
