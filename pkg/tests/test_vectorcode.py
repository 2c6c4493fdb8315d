import numpy as np
import pytest

from oracles import min_distance_by_enumeration

from localregen.errors import (
    EmptyShortening,
    EmptySupport,
    NotOptimalInput,
    TooLarge,
)
from localregen.field import FiniteField
from localregen.linalg import Matrix, rs_generator
from localregen.regen import rbt_mbr_construct
from localregen.scalar import pyramid_construct
from localregen.vectorcode import (
    LocalityStructure,
    NotURA,
    VectorCode,
    check_optimal_structure,
    find_witness,
    validate_locality,
)

GF7 = FiniteField(7)
GF11 = FiniteField(11)


@pytest.fixture(scope="module")
def pentagon():
    return rbt_mbr_construct(5, 3, GF11)


def scalar_code(field, gen):
    g = Matrix(field, gen)
    return VectorCode(field, g.cols, 1, g)


@pytest.mark.parametrize("field,kk,n,alpha", [
    (FiniteField(3), 3, 7, 1),
    (FiniteField(2), 4, 6, 2),
    (FiniteField(2, 2), 3, 5, 1),
    (FiniteField(2, 2), 3, 4, 2),
    (FiniteField(3, 2), 3, 6, 1),
    (FiniteField(5), 4, 8, 1),
    (FiniteField(2, 3), 3, 3, 2),
    (FiniteField(7), 3, 4, 2),
], ids=lambda v: str(v))
def test_min_distance_matches_enumeration(field, kk, n, alpha):
    rng = np.random.default_rng(8)
    checked = 0
    for _ in range(25):
        g = Matrix.random(field, kk, n * alpha, rng)
        try:
            code = VectorCode(field, n, alpha, g)
        except ValueError:
            continue  # dependent rows or a degenerate thick column
        d = code.min_distance()
        assert d == min_distance_by_enumeration(code)
        assert d <= code.n - code.quasi_dimension() + 1
        checked += 1
    assert checked >= 5


def test_min_distance_known_codes(pentagon):
    rs53 = VectorCode(GF7, 5, 1, rs_generator(GF7, 3, 5))
    assert rs53.min_distance() == 3
    assert pentagon.code.min_distance() == 3
    rep = scalar_code(GF7, [[1, 1, 1, 1]])
    assert rep.min_distance() == 4


def test_quasi_dimension(pentagon):
    assert pentagon.code.quasi_dimension() == 3
    rs53 = VectorCode(GF7, 5, 1, rs_generator(GF7, 3, 5))
    assert rs53.quasi_dimension() == 3


def test_ura_profile(pentagon):
    prof = pentagon.code.ura_profile()
    assert prof.a == (4, 3, 2, 0, 0)
    rs53 = VectorCode(GF7, 5, 1, rs_generator(GF7, 3, 5))
    assert rs53.ura_profile().a == (1, 1, 1, 0, 0)


def test_ura_profile_counterexample():
    # two proportional columns and an independent third
    code = scalar_code(GF7, [[1, 2, 0], [0, 0, 1]])
    verdict = code.ura_profile()
    assert isinstance(verdict, NotURA)
    assert verdict.size == 2
    assert verdict.rank_a != verdict.rank_b


def test_ura_codes_meet_erasure_bound(pentagon):
    # uniform accumulation forces d_min = n - kappa + 1
    for code in (pentagon.code, VectorCode(GF7, 5, 1, rs_generator(GF7, 3, 5))):
        prof = code.ura_profile()
        assert not isinstance(prof, NotURA)
        assert code.min_distance() == code.n - code.quasi_dimension() + 1


def test_puncture(pentagon):
    code = pentagon.code
    full = code.puncture(range(5))
    assert full.K == code.K and full.generator == code.generator
    p4 = code.puncture([0, 1, 2, 3])
    assert p4.K == 9
    p3 = code.puncture([0, 2, 4])
    assert p3.K == 9
    with pytest.raises(EmptySupport):
        code.puncture([])


def test_puncture_splits_azure_shape():
    # [16,12,4] with two [7,6,2] groups and two global parities
    gf17 = FiniteField(17)
    code, loc = pyramid_construct(12, 6, 2, 4, gf17)
    assert (code.n, code.K) == (16, 12)
    assert code.min_distance() == 4
    locals_ = [code.puncture(s) for s in loc.supports]
    for lc in locals_:
        assert (lc.n, lc.K, lc.min_distance()) == (7, 6, 2)
    assert set(loc.supports[0]) & set(loc.supports[1]) == set()


def test_shorten_roundtrip():
    rng = np.random.default_rng(9)
    gf3 = FiniteField(3)
    g = rs_generator(gf3, 2, 3)
    code = VectorCode(gf3, 3, 1, g)
    short = code.shorten([0, 1])
    # agrees with direct subcode enumeration
    from oracles import all_codewords

    words = all_codewords(code)
    vanishing = words[(words[:, 2] == 0)][:, :2]
    assert Matrix(gf3, vanishing).row_basis() == short.generator.row_basis()
    assert code.shorten(range(3)) is code  # complement empty
    with pytest.raises(EmptyShortening):
        code.shorten([0])  # distance 2: nothing vanishes on two coordinates


def test_shorten_vector_mds(pentagon):
    # vector MDS shrinks predictably under shortening
    gf11 = GF11
    g = rs_generator(gf11, 3, 5)
    stacked = np.zeros((6, 10), dtype=np.int64)
    stacked[:3, 0::2] = g.data
    stacked[3:, 1::2] = g.data
    mds = VectorCode(gf11, 5, 2, Matrix(gf11, stacked))
    assert mds.is_vector_mds()
    short = mds.shorten([0, 1, 3, 4])
    assert short.K == 4 and short.n == 4
    assert short.min_distance() == mds.min_distance() == 3
    assert short.is_vector_mds()


def test_puncture_then_shorten_bookkeeping_small():
    rng = np.random.default_rng(10)
    gf2 = FiniteField(2)
    from oracles import all_codewords

    for _ in range(10):
        g = Matrix.random(gf2, 4, 7, rng)
        if g.rank() < 4 or not g.data.any(axis=0).all():
            continue
        code = VectorCode(gf2, 7, 1, g)
        keep = (0, 2, 3, 5)
        try:
            short = code.shorten(keep)
        except EmptyShortening:
            continue
        words = all_codewords(code)
        comp = [i for i in range(7) if i not in keep]
        vanish = words[(words[:, comp] == 0).all(axis=1)][:, keep]
        expect_rank = Matrix(gf2, vanish).rank()
        assert short.K == expect_rank


def test_is_vector_mds(pentagon):
    assert not pentagon.code.is_vector_mds()  # accumulation is not flat
    gf11 = GF11
    g = rs_generator(gf11, 3, 5)
    stacked = np.zeros((6, 10), dtype=np.int64)
    stacked[:3, 0::2] = g.data
    stacked[3:, 1::2] = g.data
    mds = VectorCode(gf11, 5, 2, Matrix(gf11, stacked))
    assert mds.is_vector_mds()
    assert mds.ura_profile().a == (2, 2, 2, 0, 0)  # flat up to kappa
    odd = VectorCode(GF7, 5, 2, Matrix(GF7, np.hstack(
        [np.eye(3, dtype=np.int64), np.zeros((3, 7), dtype=np.int64)])), check=False)
    assert not odd.is_vector_mds()  # alpha does not divide K


def test_is_core(pentagon):
    gf11 = GF11
    code, loc = pyramid_construct(4, 2, 3, 4, gf11)
    assert code.is_core([0, 1, 4, 5])  # systematic coordinates
    # r+1 coordinates inside one local group exceed its dimension
    assert not code.is_core(list(loc.supports[0][:3]))
    assert pentagon.code.is_core([0, 1, 2], thick=False)
    assert not pentagon.code.is_core([0, 1], thick=True)  # shared edge symbol


def test_find_witness_degenerate_single_support():
    code = VectorCode(GF7, 5, 1, rs_generator(GF7, 3, 5))
    loc = LocalityStructure(3, 3, ((0, 1, 2, 3, 4),), "all-symbol")
    w = find_witness(code, loc)
    assert w.rank < 3
    assert w.distance_bound >= code.min_distance()
    assert len(w.nodes) == 2  # maximal rank-deficient subset of an MDS code


def test_witness_never_reaches_full_rank():
    cases = [
        pyramid_construct(4, 2, 3, 4, GF11),
        pyramid_construct(6, 3, 2, 4, GF11),
        pyramid_construct(6, 2, 2, 3, GF11),
    ]
    for code, loc in cases:
        w = find_witness(code, loc)
        assert w.rank < code.K
        assert w.distance_bound >= code.min_distance()


def test_check_optimal_structure_rejects_bad_inputs():
    code, loc = pyramid_construct(4, 3, 2, 3, GF11)  # r does not divide k
    with pytest.raises(NotOptimalInput):
        check_optimal_structure(code, loc)


def test_check_optimal_structure_flags_overlap():
    code, loc = pyramid_construct(4, 2, 3, 4, GF11)
    bad = LocalityStructure(loc.r, loc.delta,
                            (loc.supports[0], (2, 3, 4, 5)), "information")
    report = check_optimal_structure(code, bad)
    assert not report.supports_disjoint
    assert not report.passed


def test_locality_validation():
    code, loc = pyramid_construct(4, 2, 3, 4, GF11)
    validate_locality(code, loc)
    too_long = LocalityStructure(2, 3, ((0, 1, 2, 3, 4),), "information")
    with pytest.raises(ValueError):
        validate_locality(code, too_long)
    not_cover = LocalityStructure(2, 3, loc.supports, "all-symbol")
    with pytest.raises(ValueError):
        validate_locality(code, not_cover)


def test_too_large_guard(monkeypatch):
    big = VectorCode(GF7, 25, 1, Matrix(GF7, np.eye(25, dtype=np.int64)), check=False)
    with pytest.raises(TooLarge):
        big.min_distance()
    monkeypatch.setenv("LRC_MAX_ORACLE_SUBSETS", "10")
    code = VectorCode(GF11, 10, 1, rs_generator(GF11, 5, 10))
    with pytest.raises(TooLarge):
        code.min_distance()
    assert code.min_distance(force=True) == 6


def test_min_distance_between_scalar_expansion_bounds(pentagon):
    # ceil(D/alpha) <= d <= D for the expanded scalar view
    code = pentagon.code
    scalar = VectorCode(code.field, code.n * code.alpha, 1, code.generator)
    d_scalar = scalar.min_distance()
    d_vec = code.min_distance()
    assert -(-d_scalar // code.alpha) <= d_vec <= d_scalar
