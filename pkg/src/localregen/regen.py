"""Regenerating codes: repair-by-transfer MBR, product-matrix-style MSR,
data collection, and node repair with bandwidth accounting.

The MSR provider tries three routes in order, all ending in an exactly
verified object:

1. a Vandermonde encoding pair (works whenever the field has enough points
   with distinct alpha-th powers),
2. a seeded random search for an encoding pair with the same structural
   guarantees, and
3. for k = 2, a seeded random search for a generator with per-failure
   aligned repair vectors (stored in a repair table).

Small fields can defeat routes 1 and 2 — over GF(7) no (6,3,4) encoding
pair of the required shape exists at all (exhaustive check) — which is why
route 3 exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from math import comb

import numpy as np

from .bounds import cutset_bound
from .errors import (
    ExhaustedAttempts,
    FieldTooSmall,
    InfeasibleParams,
    RepairFailed,
)
from .field import FiniteField, smallest_field_at_least
from .linalg import Matrix, rs_generator, vandermonde
from .vectorcode import VectorCode


def classify_point(k, d, alpha, beta, B):
    if alpha == (d - k + 1) * beta and B == k * alpha:
        return "MSR"
    if alpha == d * beta:
        return "MBR"
    return "other"


@dataclass(frozen=True)
class RegenParams:
    n: int
    k: int
    d: int
    alpha: int
    beta: int
    B: int
    point: str = dc_field(default="")

    def __post_init__(self):
        if not (1 <= self.k <= self.d <= self.n - 1):
            raise InfeasibleParams(
                f"need 1 <= k <= d <= n-1, got (n,k,d)=({self.n},{self.k},{self.d})"
            )
        if not (1 <= self.beta <= self.alpha):
            raise InfeasibleParams(f"need 1 <= beta <= alpha, got ({self.alpha},{self.beta})")
        cap = cutset_bound(self.k, self.d, self.alpha, self.beta)
        if self.B > cap:
            raise InfeasibleParams(f"file size {self.B} exceeds cut-set value {cap}")
        if not self.point:
            object.__setattr__(
                self, "point", classify_point(self.k, self.d, self.alpha, self.beta, self.B)
            )


@dataclass
class RepairTranscript:
    failed: int
    helpers: tuple
    downloads: tuple  # symbols fetched per helper, aligned with `helpers`
    total: int
    content: np.ndarray
    success: bool
    method: str


# -- repair metadata ---------------------------------------------------------

@dataclass(frozen=True)
class RbtRepair:
    """Edge layout of a repair-by-transfer code on the complete graph."""

    edge_nodes: tuple  # edge id -> (a, b), a < b
    node_edges: tuple  # node -> edge ids in storage-slot order


@dataclass(frozen=True)
class PmRepair:
    """Product-matrix encoding pair, with shortening bookkeeping.

    node_map[i] is the parent row serving real node i; `virtual` lists
    parent rows whose contents are identically zero (shortened away).
    """

    phi: Matrix
    lam: tuple
    node_map: tuple
    virtual: tuple


@dataclass(frozen=True)
class AlignedRepair:
    """Per-(failure, helper-set) repair coefficients.

    table maps (failed, helpers) to a tuple of per-helper coefficient
    vectors; each helper sends its stored symbols dotted with its vector.
    """

    table: dict


@dataclass(frozen=True)
class MdsRepair:
    """Repair by full reconstruction: decode from d helpers, re-encode."""


@dataclass
class RegenCode:
    params: RegenParams
    code: VectorCode
    repair: object

    @property
    def field(self):
        return self.code.field

    def encode(self, message):
        return self.code.encode(message)


# -- repair-by-transfer MBR ---------------------------------------------------

def rbt_mbr_construct(n_nodes: int, k: int, field: FiniteField | None = None) -> RegenCode:
    """MBR code storing one MDS precode symbol per edge of K_{n_nodes}.

    Node i holds the symbols of its incident edges; repair is pure transfer.
    """
    if n_nodes < 2:
        raise InfeasibleParams(f"need at least 2 nodes, got {n_nodes}")
    d = n_nodes - 1
    if not 1 <= k <= d:
        raise InfeasibleParams(f"need 1 <= k <= {d}, got k = {k}")
    n_edges = comb(n_nodes, 2)
    if field is None:
        field = smallest_field_at_least(n_edges)
    if field.q < n_edges:
        raise FieldTooSmall(
            f"precode [{n_edges}, B] needs q >= {n_edges}, field has q = {field.q}"
        )
    alpha = n_nodes - 1
    B = d * k - comb(k, 2)
    edge_nodes = tuple((a, b) for a in range(n_nodes) for b in range(a + 1, n_nodes))
    edge_id = {e: i for i, e in enumerate(edge_nodes)}
    node_edges = tuple(
        tuple(edge_id[tuple(sorted((i, j)))] for j in range(n_nodes) if j != i)
        for i in range(n_nodes)
    )
    precode = rs_generator(field, B, n_edges)
    cols = [e for i in range(n_nodes) for e in node_edges[i]]
    gen = precode.take_columns(cols)
    code = VectorCode(field, n_nodes, alpha, gen,
                      metadata={"construction": "rbt_mbr", "k": k})
    params = RegenParams(n_nodes, k, d, alpha, 1, B)
    return RegenCode(params, code, RbtRepair(edge_nodes, node_edges))


def rbt_repair(regen: RegenCode, failed: int, codeword) -> RepairTranscript:
    """Repair by transfer: each neighbor forwards the shared edge symbol."""
    info = regen.repair
    if not isinstance(info, RbtRepair):
        raise RepairFailed("rbt_repair needs a repair-by-transfer code")
    n = regen.params.n
    if not 0 <= failed < n:
        raise ValueError(f"failed node {failed} out of range")
    codeword = np.asarray(codeword, dtype=np.int64).reshape(n, regen.params.alpha)
    helpers = tuple(i for i in range(n) if i != failed)
    content = np.zeros(regen.params.alpha, dtype=np.int64)
    for h in helpers:
        eid = info.edge_nodes.index(tuple(sorted((failed, h))))
        slot_h = info.node_edges[h].index(eid)
        slot_f = info.node_edges[failed].index(eid)
        content[slot_f] = codeword[h, slot_h]
    ok = bool(np.array_equal(content, codeword[failed]))
    return RepairTranscript(failed, helpers, (1,) * len(helpers), len(helpers),
                            content, ok, "transfer")


# -- product-matrix-style MSR -------------------------------------------------

def _pair_conditions_hold(field, phi, lam, d_par):
    """(a) any d rows of [phi | lam*phi] invertible, (b) any alpha rows of phi
    invertible, (c) lam distinct."""
    n_par, alpha = phi.shape
    if len(set(lam)) != n_par:
        return False
    phi_m = Matrix(field, phi)
    for rows in combinations(range(n_par), alpha):
        if phi_m.take_rows(rows).det().value == 0:
            return False
    psi = _psi_matrix(field, phi, lam)
    for rows in combinations(range(n_par), d_par):
        if psi.take_rows(rows).det().value == 0:
            return False
    return True


def _psi_matrix(field, phi, lam):
    scaled = np.array(
        [[field.mul(int(l), int(v)) for v in row] for l, row in zip(lam, phi)],
        dtype=np.int64,
    )
    return Matrix(field, np.hstack([phi, scaled]))


def _find_encoding_pair(field, n_par, alpha, d_par, seed, max_attempts):
    # route 1: Vandermonde rows; needs n_par points with distinct alpha-powers
    xs, seen = [], set()
    for x in range(field.q):
        lx = field.pow(x, alpha)
        if lx not in seen:
            seen.add(lx)
            xs.append(x)
        if len(xs) == n_par:
            break
    if len(xs) == n_par:
        phi = vandermonde(field, alpha, xs).T.data.copy()
        lam = tuple(field.pow(x, alpha) for x in xs)
        return phi, lam, "vandermonde"
    # route 2: seeded random search
    rng = np.random.default_rng(seed)
    if field.q >= n_par:
        for _ in range(max_attempts):
            phi = rng.integers(0, field.q, size=(n_par, alpha), dtype=np.int64)
            lam = tuple(int(v) for v in rng.permutation(field.q)[:n_par])
            if _pair_conditions_hold(field, phi, lam, d_par):
                return phi, lam, "random-pair"
    return None, None, None


def _aligned_search(field, n, k, d, alpha, seed, max_attempts):
    """Random generator + per-(failure, helper-set) aligned repair vectors.

    Only supports k = 2 (the quotient by a node's column space then has
    dimension alpha, so interference must align on a single line, which is
    searchable).  Returns (node_mats, table) or raises ExhaustedAttempts.
    """
    if k != 2:
        raise ExhaustedAttempts(
            f"no MSR provider for (n,k,d)=({n},{k},{d}) over {field}: encoding-pair "
            "search failed and aligned search supports k = 2 only; use a larger field",
        )
    big = k * alpha
    rng = np.random.default_rng(seed)
    lines = _projective_points(field, alpha)
    best = None
    for attempt in range(max_attempts):
        mats = [Matrix.random(field, big, alpha, rng) for _ in range(n)]
        gen = Matrix(field, np.hstack([mt.data for mt in mats]))
        if any(mt.rank() != alpha for mt in mats):
            continue
        if any(
            gen.take_columns(
                [c for i in S for c in range(i * alpha, (i + 1) * alpha)]
            ).rank() != big
            for S in combinations(range(n), k)
        ):
            continue
        table = {}
        pairs_done = 0
        feasible = True
        for f in range(n):
            others = [i for i in range(n) if i != f]
            quot = mats[f].T.null_space()  # alpha x big, rows q with q @ N_f = 0
            for helpers in combinations(others, d):
                coeffs = _align_on_some_line(field, mats, quot, f, helpers, lines)
                if coeffs is None:
                    feasible = False
                    break
                table[(f, helpers)] = coeffs
                pairs_done += 1
            if not feasible:
                break
        if feasible:
            return mats, table, attempt + 1
        if best is None or pairs_done > best:
            best = pairs_done
    raise ExhaustedAttempts(
        f"aligned MSR search for (n,k,d)=({n},{k},{d}) over {field} failed",
        attempts=max_attempts,
        best=best,
    )


def _projective_points(field, dim):
    """One representative per 1-dim subspace of field^dim (first nonzero = 1)."""
    pts = []
    for lead in range(dim):
        tail_len = dim - lead - 1
        tails = [[]]
        for _ in range(tail_len):
            tails = [t + [v] for t in tails for v in range(field.q)]
        for tail in tails:
            pts.append(tuple([0] * lead + [1] + tail))
    return pts


def _align_on_some_line(field, mats, quot, failed, helpers, lines):
    """Coefficient vectors making helper projections collinear and the
    received functionals cover the failed node's column space."""
    big = mats[failed].rows
    alpha = mats[failed].cols
    for line in lines:
        # functionals vanishing on the line direction
        dir_m = Matrix(field, np.array(line, dtype=np.int64).reshape(1, alpha))
        perp = dir_m.null_space()  # (alpha-1) x alpha
        coeffs = []
        vecs = []
        ok = True
        for h in helpers:
            proj = quot @ mats[h]  # alpha x alpha
            constraint = perp @ proj  # (alpha-1) x alpha
            sols = constraint.null_space()
            if sols.rows == 0:
                ok = False
                break
            t = sols.row(0)
            w = (mats[h] @ Matrix(field, t.reshape(alpha, 1))).data.reshape(big)
            if not w.any():
                ok = False
                break
            coeffs.append(tuple(int(v) for v in t))
            vecs.append(w)
        if not ok:
            continue
        w_m = Matrix(field, np.vstack(vecs))
        if w_m.row_space_contains(mats[failed].T):
            return tuple(coeffs)
    return None


def pm_msr_construct(n: int, k: int, d: int, field: FiniteField,
                     seed: int = 0, max_attempts: int = 2000) -> RegenCode:
    """Exact-repair MSR with beta = 1: alpha = d-k+1, B = k*alpha.

    Built at repair degree 2k-2 and shortened down for larger d.
    """
    if d < 2 * k - 2:
        raise InfeasibleParams(f"product-matrix route needs d >= 2k-2, got d={d}, k={k}")
    if not (1 <= k <= d <= n - 1):
        raise InfeasibleParams(f"need 1 <= k <= d <= n-1, got ({n},{k},{d})")
    if field.q < n:
        raise FieldTooSmall(f"need q >= n = {n}, field has q = {field.q}")
    alpha = d - k + 1
    gamma = d - (2 * k - 2)
    n_par, k_par, d_par = n + gamma, k + gamma, d + gamma
    phi, lam, route = _find_encoding_pair(field, n_par, alpha, d_par, seed, max_attempts)
    if phi is None:
        mats, table, attempts = _aligned_search(field, n, k, d, alpha, seed, max_attempts)
        gen = Matrix(field, np.hstack([mt.data for mt in mats]))
        code = VectorCode(field, n, alpha, gen,
                          metadata={"construction": "pm_msr", "route": "aligned",
                                    "seed": seed, "attempts": attempts})
        params = RegenParams(n, k, d, alpha, 1, k * alpha)
        return RegenCode(params, code, AlignedRepair(table))

    gen_par = _pm_parent_generator(field, phi, lam)
    if gamma == 0:
        code = VectorCode(field, n, alpha, gen_par,
                          metadata={"construction": "pm_msr", "route": route, "seed": seed})
        params = RegenParams(n, k, d, alpha, 1, k * alpha)
        return RegenCode(params, code, PmRepair(Matrix(field, phi), lam,
                                                tuple(range(n)), ()))
    # shorten the first gamma parent nodes away
    virtual = tuple(range(gamma))
    real = tuple(range(gamma, n_par))
    parent = VectorCode(field, n_par, alpha, gen_par, check=False)
    vcols = parent.restrict(virtual)
    coeffs = vcols.T.null_space()
    if coeffs.rows != (k_par - gamma) * alpha:
        raise RepairFailed("shortening produced the wrong dimension; construction bug")
    gen = coeffs @ parent.restrict(real)
    code = VectorCode(field, n, alpha, gen,
                      metadata={"construction": "pm_msr", "route": route,
                                "seed": seed, "shortened_by": gamma})
    params = RegenParams(n, k, d, alpha, 1, k * alpha)
    return RegenCode(params, code, PmRepair(Matrix(field, phi), lam, real, virtual))


def _pm_parent_generator(field, phi, lam):
    """Generator of the parent code: node i stores phi_i S1 + lam_i phi_i S2."""
    n_par, alpha = phi.shape
    big = alpha * (alpha + 1)  # two symmetric alpha x alpha message matrices
    phi_m = Matrix(field, phi)
    lam_phi = _psi_matrix(field, phi, lam).take_columns(range(alpha, 2 * alpha))
    rows = []
    for t in range(big):
        s1 = np.zeros((alpha, alpha), dtype=np.int64)
        s2 = np.zeros((alpha, alpha), dtype=np.int64)
        idx = t
        target = s1
        if idx >= big // 2:
            idx -= big // 2
            target = s2
        i, j = _sym_coords(idx, alpha)
        target[i, j] = 1
        target[j, i] = 1
        content = (phi_m @ Matrix(field, s1)) + (lam_phi @ Matrix(field, s2))
        rows.append(content.data.reshape(n_par * alpha))
    return Matrix(field, np.vstack(rows))


def _sym_coords(idx, alpha):
    # row-major upper triangle
    for i in range(alpha):
        width = alpha - i
        if idx < width:
            return i, i + idx
        idx -= width
    raise IndexError(idx)


def pm_repair(regen: RegenCode, failed: int, helpers, codeword) -> RepairTranscript:
    info = regen.repair
    params = regen.params
    codeword = np.asarray(codeword, dtype=np.int64).reshape(params.n, params.alpha)
    field = regen.field
    alpha = params.alpha
    fp = info.node_map[failed]
    phi_f = info.phi.take_rows([fp]).T  # alpha x 1
    parent_rows = list(info.virtual) + [info.node_map[h] for h in helpers]
    received = np.zeros((len(parent_rows), 1), dtype=np.int64)
    for pos, h in enumerate(helpers):
        stored = Matrix(field, codeword[h].reshape(1, alpha))
        received[len(info.virtual) + pos, 0] = (stored @ phi_f).data[0, 0]
    psi = _psi_matrix(field, info.phi.data, info.lam)
    system = psi.take_rows(parent_rows)
    z = system.solve(Matrix(field, received)).data.reshape(2 * alpha)
    lam_f = info.lam[fp]
    content = field.add_vec(z[:alpha], field.mul_vec(z[alpha:], np.int64(lam_f)))
    ok = bool(np.array_equal(content, codeword[failed]))
    return RepairTranscript(failed, tuple(helpers), (1,) * len(helpers),
                            len(helpers), content, ok, "product-matrix")


def aligned_repair(regen: RegenCode, failed: int, helpers, codeword) -> RepairTranscript:
    info = regen.repair
    params = regen.params
    field = regen.field
    alpha = params.alpha
    codeword = np.asarray(codeword, dtype=np.int64).reshape(params.n, params.alpha)
    key = (failed, tuple(sorted(helpers)))
    if key not in info.table:
        raise RepairFailed(f"no repair entry for failure {failed} with helpers {helpers}")
    coeffs = info.table[key]
    helpers = key[1]
    received = np.zeros(len(helpers), dtype=np.int64)
    vecs = []
    for pos, (h, t) in enumerate(zip(helpers, coeffs)):
        t_m = Matrix(field, np.array(t, dtype=np.int64).reshape(alpha, 1))
        stored = Matrix(field, codeword[h].reshape(1, alpha))
        received[pos] = (stored @ t_m).data[0, 0]
        slab = regen.code.restrict([h])
        vecs.append((slab @ t_m).data.reshape(regen.code.K))
    w_m = Matrix(field, np.vstack(vecs))  # d x K functionals actually sent
    slab_f = regen.code.restrict([failed])  # K x alpha
    recon = w_m.T.solve(slab_f)  # d x alpha
    content = (Matrix(field, received.reshape(1, -1)) @ recon).data.reshape(alpha)
    ok = bool(np.array_equal(content, codeword[failed]))
    return RepairTranscript(failed, helpers, (1,) * len(helpers), len(helpers),
                            content, ok, "aligned")


# -- trivial MSR and generic repair ------------------------------------------

def trivial_msr(n: int, k: int, field: FiniteField) -> RegenCode:
    """[n, k] MDS code read as an MSR code with d = k and alpha = beta = 1."""
    if k >= n:
        raise InfeasibleParams(f"need k < n for redundancy, got k={k}, n={n}")
    if field.q < n:
        raise FieldTooSmall(f"need q >= n = {n}, field has q = {field.q}")
    gen = rs_generator(field, k, n)
    code = VectorCode(field, n, 1, gen, metadata={"construction": "trivial_msr"})
    params = RegenParams(n, k, k, 1, 1, k)
    return RegenCode(params, code, MdsRepair())


def mds_repair(regen: RegenCode, failed: int, helpers, codeword) -> RepairTranscript:
    params = regen.params
    codeword = np.asarray(codeword, dtype=np.int64).reshape(params.n, params.alpha)
    message = regen.code.decode_from(helpers, codeword[list(helpers)])
    content = regen.code.encode(message)[failed]
    ok = bool(np.array_equal(content, codeword[failed]))
    return RepairTranscript(failed, tuple(helpers), (params.beta,) * len(helpers),
                            params.beta * len(helpers), content, ok, "reconstruct")


# -- public operations ---------------------------------------------------------

def data_collect(regen: RegenCode, nodes, codeword) -> np.ndarray:
    """Recover the B message symbols from any k nodes' contents."""
    nodes = tuple(nodes)
    if len(nodes) != regen.params.k:
        raise ValueError(f"data collection needs exactly k = {regen.params.k} nodes")
    codeword = np.asarray(codeword, dtype=np.int64).reshape(
        regen.params.n, regen.params.alpha
    )
    return regen.code.decode_from(nodes, codeword[list(nodes)])


def regen_repair(regen: RegenCode, failed: int, helpers, codeword) -> RepairTranscript:
    """Exact repair of `failed` from `helpers`, downloading beta per helper."""
    params = regen.params
    helpers = tuple(helpers)
    if failed in helpers:
        raise ValueError(f"failed node {failed} cannot help repair itself")
    if len(set(helpers)) != params.d:
        raise ValueError(f"repair needs exactly d = {params.d} distinct helpers")
    if not all(0 <= h < params.n for h in helpers):
        raise ValueError(f"helper out of range in {helpers}")
    info = regen.repair
    if isinstance(info, RbtRepair):
        tr = rbt_repair(regen, failed, codeword)
    elif isinstance(info, PmRepair):
        tr = pm_repair(regen, failed, helpers, codeword)
    elif isinstance(info, AlignedRepair):
        tr = aligned_repair(regen, failed, helpers, codeword)
    elif isinstance(info, MdsRepair):
        tr = mds_repair(regen, failed, helpers, codeword)
    else:
        raise RepairFailed(f"unknown repair metadata {type(info).__name__}")
    if not tr.success:
        raise RepairFailed(
            f"repair of node {failed} from {helpers} did not reproduce the content"
        )
    return tr
