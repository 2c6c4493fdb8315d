import numpy as np
import pytest

from localregen import kernels
from localregen.errors import (
    DuplicatePoints,
    NoSolution,
    ShapeMismatch,
    SingularMatrix,
)
from localregen.field import FiniteField
from localregen.linalg import (
    Matrix,
    block_diag,
    hstack,
    rs_generator,
    systematic_form,
    vandermonde,
    vstack,
)

GF7 = FiniteField(7)
GF16 = FiniteField(2, 4)
GF9 = FiniteField(3, 2)


def test_rank_identity_and_zero():
    assert Matrix.identity(GF7, 4).rank() == 4
    assert Matrix.zeros(GF7, 2, 3).rank() == 0


def test_rank_vandermonde():
    assert vandermonde(GF7, 3, [0, 1, 2, 3, 4]).rank() == 3


@pytest.mark.parametrize("field", [GF7, GF16, GF9], ids=str)
def test_rank_transpose_and_products(field):
    rng = np.random.default_rng(3)
    for _ in range(25):
        a = Matrix.random(field, 5, 7, rng)
        b = Matrix.random(field, 7, 4, rng)
        assert a.rank() == a.T.rank()
        assert (a @ b).rank() <= min(a.rank(), b.rank())


@pytest.mark.parametrize("field", [GF7, GF16, GF9], ids=str)
def test_inverse_roundtrip(field):
    rng = np.random.default_rng(4)
    found = 0
    while found < 10:
        m = Matrix.random(field, 4, 4, rng)
        try:
            inv = m.inv()
        except SingularMatrix:
            continue
        assert (inv @ m) == Matrix.identity(field, 4)
        assert (m @ inv) == Matrix.identity(field, 4)
        found += 1


def test_det_small_cases():
    m = Matrix(GF7, [[1, 2], [3, 4]])
    assert m.det().value == 5  # 1*4 - 2*3 = -2 = 5 mod 7
    assert Matrix.identity(GF7, 3).det().value == 1
    assert Matrix(GF7, [[1, 2], [2, 4]]).det().value == 0


def test_det_multiplicative():
    rng = np.random.default_rng(5)
    for field in (GF7, GF16):
        a = Matrix.random(field, 3, 3, rng)
        b = Matrix.random(field, 3, 3, rng)
        lhs = (a @ b).det().value
        rhs = field.mul(a.det().value, b.det().value)
        assert lhs == rhs


def test_solve_and_no_solution():
    a = Matrix(GF7, [[1, 1], [1, 2], [2, 3]])
    x = Matrix(GF7, [[3], [4]])
    b = a @ x
    got = a.solve(b)
    assert got == x
    bad = Matrix(GF7, [[1], [1], [0]])
    with pytest.raises(NoSolution):
        a.solve(bad)


def test_shape_checks():
    a = Matrix(GF7, [[1, 2]])
    with pytest.raises(ShapeMismatch):
        a.det()
    with pytest.raises(ShapeMismatch):
        a @ a


def test_null_space_annihilates():
    rng = np.random.default_rng(6)
    for field in (GF7, GF16):
        a = Matrix.random(field, 3, 6, rng)
        ns = a.null_space()
        assert ns.rows == 6 - a.rank()
        prod = a @ ns.T
        assert not prod.data.any()


def test_vandermonde_values_and_duplicates():
    v = vandermonde(GF7, 2, [1, 2, 3])
    assert v.data.tolist() == [[1, 1, 1], [1, 2, 3]]
    assert vandermonde(GF7, 1, [0, 5]).data.tolist() == [[1, 1]]
    with pytest.raises(DuplicatePoints):
        vandermonde(GF7, 2, [1, 1, 2])


def test_systematic_form():
    g = rs_generator(GF7, 3, 6)
    sg = systematic_form(g)
    assert sg.data[:, :3].tolist() == np.eye(3, dtype=int).tolist()
    # same row space
    assert vstack(g, sg).rank() == 3


def test_stacking_helpers():
    a = Matrix(GF7, [[1, 2]])
    b = Matrix(GF7, [[3, 4]])
    assert vstack(a, b).shape == (2, 2)
    assert hstack(a, b).shape == (1, 4)
    bd = block_diag(GF7, [a, b])
    assert bd.data.tolist() == [[1, 2, 0, 0], [0, 0, 3, 4]]


def test_backends_agree():
    """The numba kernels and the numpy fallback compute identical results."""
    rng = np.random.default_rng(7)
    for field in (GF7, GF16, GF9, FiniteField(257)):
        args = field.kernel_args()
        for _ in range(10):
            a = rng.integers(0, field.q, size=(6, 9)).astype(np.int64)
            r_np = kernels.np_eliminate(np.ascontiguousarray(a.copy()), *args, False)
            red_np = np.ascontiguousarray(a.copy())
            kernels.np_eliminate(red_np, *args, True)
            sq = np.ascontiguousarray(a[:6, :6].copy())
            d_np = kernels.np_det(sq.copy(), *args)
            if kernels.NUMBA_IMPL is not None:
                r_nb = kernels.NUMBA_IMPL["eliminate"](
                    np.ascontiguousarray(a.copy()), *args, False)
                red_nb = np.ascontiguousarray(a.copy())
                kernels.NUMBA_IMPL["eliminate"](red_nb, *args, True)
                d_nb = kernels.NUMBA_IMPL["det"](sq.copy(), *args)
                assert r_np == r_nb
                assert np.array_equal(red_np, red_nb)
                assert d_np == d_nb
            b = rng.integers(0, field.q, size=(9, 4)).astype(np.int64)
            m_np = kernels.np_matmul(a, b, *args)
            if kernels.NUMBA_IMPL is not None:
                m_nb = kernels.NUMBA_IMPL["matmul"](a, b, *args)
                assert np.array_equal(m_np, m_nb)


def test_matrix_value_semantics():
    data = np.array([[1, 2], [3, 4]])
    m = Matrix(GF7, data)
    data[0, 0] = 6  # caller mutation must not leak in
    assert m.data[0, 0] == 1
    with pytest.raises(ValueError):
        m.data[0, 0] = 2  # stored array is frozen
