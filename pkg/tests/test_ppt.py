from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from grouppivot.block import BlockMatrix, HypothesisViolated, pseudo_schur
from grouppivot.core import COMPOSITE_TOL, UsageError, mat_approx_eq
from grouppivot.gen import InstanceSpec, random_invertible_instance, theorem1_instance, theorem1_violating_instance, theorem2_instance
from grouppivot.geninv import NoGroupInverse, ginv, group_inverse
from grouppivot.ppt import (
    blockwise_error,
    classical_ppt,
    complementary_exchange_check,
    complementary_exchange_residuals,
    cpppt,
    cpppt_involution_check,
    exchange_equivalence_check,
    exchange_forward,
    exchange_residuals,
    pppt,
    pppt_involution_check,
)

SCALAR = BlockMatrix([[2]], [[1]], [[1]], [[1]])
ONES = np.ones((2, 2))
I2 = np.eye(2)


def rand(shape, seed):
    rng = np.random.default_rng(seed)
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


@st.composite
def specs(draw, lo=2, hi=6):
    p, q = draw(st.integers(lo, hi)), draw(st.integers(lo, hi))
    return InstanceSpec(p, q, draw(st.integers(1, p)), draw(st.integers(1, q)), draw(st.integers(0, 2**64 - 1)))


def block_array(m):
    return np.asarray(m.assemble())


# -- transforms --------------------------------------------------------------

def test_pppt_with_identity_pivot_is_classical():
    b, c, d = rand((2, 3), 1), rand((3, 2), 2), rand((3, 3), 3)
    p = pppt(BlockMatrix(I2, b, c, d))
    assert p.approx_eq(BlockMatrix(I2, -b, c, d - c @ b))


def test_pppt_scalar_example():
    # K = 1 - 1 * (1/2) * 1 = 1/2
    k = Fraction(1) - Fraction(1) * Fraction(1, 2) * Fraction(1)
    assert k == Fraction(1, 2)
    np.testing.assert_array_equal(block_array(pppt(SCALAR)), [[0.5, -0.5], [0.5, 0.5]])


def test_pppt_decoupled():
    d = rand((2, 2), 9)
    p = pppt(BlockMatrix(ONES, np.zeros((2, 2)), np.zeros((2, 2)), d))
    assert p.approx_eq(BlockMatrix(ONES / 4, np.zeros((2, 2)), np.zeros((2, 2)), d))


def test_cpppt_examples():
    a, b, c = rand((3, 3), 1), rand((3, 2), 2), rand((2, 3), 3)
    assert cpppt(BlockMatrix(a, b, c, I2)).approx_eq(BlockMatrix(a - b @ c, b, -c, I2))
    # L = 2 - 1 * 1 * 1 = 1
    np.testing.assert_array_equal(block_array(cpppt(SCALAR)), [[1, 1], [-1, 1]])
    z = np.zeros((2, 2))
    assert cpppt(BlockMatrix(I2, z, z, ONES)).approx_eq(BlockMatrix(I2, z, z, ONES / 4))


def test_transforms_need_pivot_inverse():
    nil = [[0, 1], [0, 0]]
    with pytest.raises(NoGroupInverse):
        pppt(BlockMatrix(nil, I2, I2, I2))
    with pytest.raises(NoGroupInverse):
        cpppt(BlockMatrix(I2, I2, I2, nil))


@given(specs())
def test_cpppt_is_pppt_of_swap(spec):
    m = theorem2_instance(spec)
    assert cpppt(m).approx_eq(pppt(m.swapped()).swapped(), COMPOSITE_TOL)


@given(specs())
def test_bottom_right_of_pppt_is_pseudo_schur(spec):
    m = theorem1_instance(spec)
    np.testing.assert_array_equal(pppt(m).D, pseudo_schur(m))


@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**32))
def test_classical_reduction(p, q, seed):
    m = random_invertible_instance(p, q, seed)
    assert pppt(m).approx_eq(classical_ppt(m), COMPOSITE_TOL)


# -- involution --------------------------------------------------------------

def test_involution_invertible_pivot():
    m = random_invertible_instance(3, 2, 1)
    assert pppt_involution_check(m)
    assert cpppt_involution_check(m)


def test_involution_with_singular_pivot():
    b = ONES @ rand((2, 2), 1)
    c = rand((2, 2), 2) @ ONES
    assert pppt_involution_check(BlockMatrix(ONES, b, c, rand((2, 2), 3)))


def test_involution_mirror_construction():
    d = np.array([[1.0, 2], [2, 4]])
    c = d @ rand((2, 3), 4)
    b = rand((3, 2), 5) @ d
    assert cpppt_involution_check(BlockMatrix(rand((3, 3), 6), b, c, d))


def test_involution_breaks_without_range_hypothesis():
    m = theorem1_violating_instance(InstanceSpec(3, 3, 2, 2, seed=1, violate="incl_BA"))
    with pytest.raises(HypothesisViolated):
        pppt_involution_check(m)
    twice = pppt(pppt(m))
    assert not mat_approx_eq(twice.B, m.B)
    a_g = ginv(m.A)
    assert not mat_approx_eq(m.A @ a_g @ m.B, m.B)
    for name in "ACD":
        assert mat_approx_eq(getattr(twice, name), getattr(m, name), COMPOSITE_TOL)


def test_mirror_involution_breaks_without_range_hypothesis():
    # violating R(B) ⊆ R(A) on the swap is violating R(C) ⊆ R(D) here
    m = theorem1_violating_instance(InstanceSpec(3, 3, 2, 2, seed=2, violate="incl_BA")).swapped()
    with pytest.raises(HypothesisViolated):
        cpppt_involution_check(m)
    assert not cpppt(cpppt(m)).approx_eq(m)


@given(specs())
def test_involutions(spec):
    assert pppt_involution_check(theorem1_instance(spec))
    assert cpppt_involution_check(theorem2_instance(spec))


@given(specs())
def test_group_inverse_involution_enables_lemma(spec):
    a = theorem1_instance(spec).A
    assert mat_approx_eq(group_inverse(group_inverse(a).inverse).inverse, a)


# -- exchange ----------------------------------------------------------------

def test_exchange_forward_examples():
    t, b = exchange_forward(SCALAR, [0], [0])
    assert t[0] == 0 and b[0] == 0
    t, b = exchange_forward(SCALAR, [1], [0])
    assert (t[0], b[0]) == (2, 1)
    eye = BlockMatrix(I2, np.zeros((2, 3)), np.zeros((3, 2)), np.eye(3))
    x1, x2 = rand(2, 1), rand(3, 2)
    t, b = exchange_forward(eye, x1, x2)
    np.testing.assert_array_equal(t, x1)
    np.testing.assert_array_equal(b, x2)
    with pytest.raises(UsageError):
        exchange_forward(SCALAR, [1, 2], [0])


def test_exchange_scalar_worked_example():
    p = pppt(SCALAR)
    image = block_array(p) @ np.array([2.0, 0.0])
    np.testing.assert_array_equal(image, [1.0, 1.0])
    assert exchange_equivalence_check(SCALAR, [1], [0], [2])
    assert exchange_residuals(SCALAR, [1], [0], [2]) == (0.0, 0.0)
    assert exchange_equivalence_check(SCALAR, [0], [0], [0])


def test_printed_complementary_exchange_fails_on_scalar_example():
    # Printed mirror: M x = (y1; D D^# y2)  iff  Q (y1; x2) = (x1; D^# D y2).
    # With x = (1, 0): M x = (2, 1), so y = (2, 1), but Q (2, 0) = (2, -2).
    q = block_array(cpppt(SCALAR))
    np.testing.assert_array_equal(q @ [2.0, 0.0], [2.0, -2.0])
    # The exchange that does hold trades x2 for y2: Q (x1; y2) = (y1; D^# D x2).
    np.testing.assert_array_equal(q @ [1.0, 1.0], [2.0, 0.0])
    assert complementary_exchange_check(SCALAR, [1], [0], [1])
    assert complementary_exchange_residuals(SCALAR, [1], [0], [1]) == (0.0, 0.0)


def test_exchange_gated_on_hypotheses():
    m = theorem1_violating_instance(InstanceSpec(3, 3, 2, 2, seed=3, violate="incl_CstarAstar"))
    with pytest.raises(HypothesisViolated):
        exchange_equivalence_check(m, np.zeros(3), np.zeros(3), np.zeros(3))


@given(specs(), st.integers(0, 2**32))
def test_exchange_forward_direction(spec, seed):
    m = theorem1_instance(spec)
    x1, x2 = rand(m.p, seed), rand(m.q, seed + 1)
    y1, y2 = exchange_forward(m, x1, x2)  # A A^# y1 = y1 since R(B) ⊆ R(A)
    lhs, rhs = exchange_residuals(m, x1, x2, y1, y2)
    assert lhs <= 1e-8 and rhs <= 1e-8
    assert exchange_equivalence_check(m, x1, x2, y1, y2)


@given(specs(), st.integers(0, 2**32))
def test_exchange_converse_direction(spec, seed):
    m = theorem1_instance(spec)
    a_g = ginv(m.A, COMPOSITE_TOL)
    y1, x2 = rand(m.p, seed), rand(m.q, seed + 1)
    x1 = a_g @ (y1 - m.B @ x2)
    p = pppt(m)
    y2 = p.C @ y1 + p.D @ x2
    lhs, rhs = exchange_residuals(m, x1, x2, y1, y2)
    assert rhs <= 1e-8 and lhs <= 1e-8


@given(specs(), st.integers(0, 2**32))
def test_exchange_fails_together(spec, seed):
    m = theorem1_instance(spec)
    x1, x2, y1 = rand(m.p, seed), rand(m.q, seed + 1), rand(m.p, seed + 2)
    lhs, rhs = exchange_residuals(m, x1, x2, y1)
    assert exchange_equivalence_check(m, x1, x2, y1)
    assert (lhs <= 1e-8) == (rhs <= 1e-8)


@given(specs(), st.integers(0, 2**32))
def test_complementary_exchange(spec, seed):
    m = theorem2_instance(spec)
    x1, x2 = rand(m.p, seed), rand(m.q, seed + 1)
    y1, y2 = exchange_forward(m, x1, x2)
    assert max(complementary_exchange_residuals(m, x1, x2, y2, y1)) <= 1e-8
    assert complementary_exchange_check(m, x1, x2, y2, y1)


def test_blockwise_error_zero_on_self():
    m = random_invertible_instance(2, 2, 0)
    assert blockwise_error(m, m) == 0.0
    assert blockwise_error(pppt(pppt(m)), m) < 1e-10


def test_stacked_exchange_matches_per_vector():
    m = theorem1_instance(InstanceSpec(4, 3, 2, 2, seed=12))
    x1, x2, y1 = rand((4, 5), 1), rand((3, 5), 2), rand((4, 5), 3)
    lhs, rhs = exchange_residuals(m, x1, x2, y1)
    for j in range(5):
        single = exchange_residuals(m, x1[:, j], x2[:, j], y1[:, j])
        assert single == pytest.approx((lhs[j], rhs[j]), rel=1e-12)
