import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from mcgate import algebra
from mcgate.algebra import UnitaryMatrix2
from mcgate.errors import NonUnitaryError, PreconditionError

from .conftest import random_su2, random_u2
from .unitary_strategies import (
    angles,
    epsilons,
    positive_angles,
    real_secondary_matrices,
    real_secondary_su2,
    u2_matrices,
)


def test_rejects_non_unitary():
    with pytest.raises(NonUnitaryError) as err:
        UnitaryMatrix2([[1, 1], [0, 1]])
    assert err.value.residual > 1e-8


@pytest.mark.parametrize("check", [True, False])
def test_rejects_non_finite_entries(check):
    with pytest.raises(NonUnitaryError):
        UnitaryMatrix2([[math.nan, 0], [0, 1]], check=check)
    with pytest.raises(NonUnitaryError):
        UnitaryMatrix2([[1, 0], [0, math.inf]], check=check)


def test_rejects_wrong_shape():
    with pytest.raises(PreconditionError):
        UnitaryMatrix2(np.eye(3))


def test_matrix_is_read_only():
    u = algebra.rx(0.3)
    with pytest.raises(ValueError):
        u.array[0, 0] = 2.0


def test_rotation_conventions():
    assert algebra.rz(math.pi / 2).is_close(np.diag([np.exp(-1j * math.pi / 4), np.exp(1j * math.pi / 4)]))
    assert algebra.ry(math.pi).is_close([[0, -1], [1, 0]])
    assert algebra.rx(math.pi).is_close([[0, -1j], [-1j, 0]])
    assert algebra.phase(math.pi).is_close(algebra.Z)
    assert algebra.u3(math.pi / 2, 0.0, math.pi).is_close(algebra.H)


@pytest.mark.parametrize(
    "text, expected",
    [("0.25", 0.25), ("pi", math.pi), ("-pi/2", -math.pi / 2), ("3*pi/4", 3 * math.pi / 4), ("2pi", 2 * math.pi)],
)
def test_parse_angle(text, expected):
    assert algebra.parse_angle(text) == pytest.approx(expected)


@pytest.mark.parametrize("text", ["nan", "inf", "-inf"])
def test_parse_angle_rejects_non_finite(text):
    with pytest.raises(PreconditionError):
        algebra.parse_angle(text)


@pytest.mark.parametrize("text", ["rx(nan)", "u(0, inf, 0)", "[[[NaN,0],[0,0]],[[0,0],[1,0]]]"])
def test_parse_gate_rejects_non_finite(text):
    with pytest.raises(PreconditionError):
        algebra.parse_gate(text)


def test_parse_gate_forms():
    assert algebra.parse_gate("X") == algebra.X
    assert algebra.parse_gate("rx(pi/4)").is_close(algebra.rx(math.pi / 4))
    assert algebra.parse_gate("u(pi/2, 0, pi)").is_close(algebra.H)
    assert algebra.parse_gate("[[[0,0],[1,0]],[[1,0],[0,0]]]").is_close(algebra.X)
    with pytest.raises(PreconditionError):
        algebra.parse_gate("cx")


@settings(max_examples=50, deadline=None)
@given(u2_matrices())
def test_eigen_decompose_reconstructs(u):
    es = algebra.eigen_decompose(u)
    assert es.reconstruct().is_close(u, atol=1e-9)
    for theta in es.phases:
        assert -math.pi < theta <= math.pi


def test_minus_identity_has_phase_pi():
    es = algebra.eigen_decompose(-1.0 * np.eye(2))
    assert es.phases == (math.pi, math.pi)


@settings(max_examples=40, deadline=None)
@given(u2_matrices(), st.integers(min_value=0, max_value=20))
def test_root_pow2_powers_back(u, j):
    root = algebra.root_pow2(u, j)
    assert np.allclose(np.linalg.matrix_power(root.array, 1 << j), u.array, rtol=0.0, atol=1e-9 * (1 << j))


@settings(max_examples=30, deadline=None)
@given(angles)
def test_hadamard_turns_rx_into_rz(theta):
    assert (algebra.H @ algebra.rx(theta) @ algebra.H).is_close(algebra.rz(theta), atol=1e-12)


def test_root_of_x():
    root = algebra.root_pow2(algebra.X, 1)
    assert (root @ root).is_close(algebra.X)


def test_root_pow2_rejects_negative_exponent():
    with pytest.raises(PreconditionError):
        algebra.root_pow2(algebra.X, -1)


@pytest.mark.parametrize(
    "theta, epsilon, n_base",
    [(math.pi, 1e-3, 13), (math.pi, 8.255e-3, 10), (math.pi, 0.3, 5), (0.1, 0.3, 1), (math.pi, 2.0, 1)],
)
def test_min_base_controls_values(theta, epsilon, n_base):
    assert algebra.min_base_controls(theta, epsilon) == n_base


@settings(max_examples=50, deadline=None)
@given(positive_angles, epsilons)
def test_min_base_controls_is_minimal(theta, epsilon):
    n_base = algebra.min_base_controls(theta, epsilon)
    assert algebra.predicted_error(theta, 1 << (n_base - 1)) <= epsilon
    if n_base > 1:
        assert algebra.predicted_error(theta, 1 << (n_base - 2)) > epsilon


@pytest.mark.parametrize("epsilon", [0.0, -1.0, 2.5])
def test_min_base_controls_rejects_epsilon(epsilon):
    with pytest.raises(PreconditionError):
        algebra.min_base_controls(math.pi, epsilon)


def test_spectral_error_of_x():
    assert algebra.spectral_error(algebra.X, 1 << 12) == pytest.approx(2 * math.sin(math.pi / 8192))
    assert algebra.spectral_error(algebra.X, 1 << 12) <= 1e-3


@settings(max_examples=30, deadline=None)
@given(u2_matrices())
def test_spectral_error_shrinks_with_more_roots(u):
    errors = [algebra.spectral_error(u, 1 << j) for j in range(21)]
    assert all(later <= earlier + 1e-15 for earlier, later in zip(errors, errors[1:]))
    assert errors[-1] < 1e-5


@settings(max_examples=30, deadline=None)
@given(u2_matrices(), st.integers(min_value=1, max_value=64))
def test_entrywise_error_below_spectral(u, big_n):
    assert algebra.entrywise_error(u, big_n) <= algebra.spectral_error(u, big_n) + 1e-12


def test_plan_for_x():
    plan = algebra.plan_approximation(algebra.X, 1e-3)
    assert plan.n_base == 13
    assert plan.big_n == 4096
    assert abs(plan.theta) == pytest.approx(math.pi)
    assert plan.predicted_error <= 1e-3


def test_plan_for_identity():
    assert algebra.plan_approximation(algebra.I2, 0.1).n_base == 1


def test_plan_rejects_inconsistent_fields():
    with pytest.raises(ValidationError):
        algebra.ApproxPlan(theta=1.0, epsilon=0.1, n_base=3, big_n=8, predicted_error=0.01)


def test_plans_refine_monotonically():
    u = random_u2(7)
    bases = [algebra.plan_approximation(u, eps).n_base for eps in (0.5, 0.1, 1e-2, 1e-3, 1e-4)]
    assert bases == sorted(bases)


@pytest.mark.parametrize("seed", range(10))
def test_zyz_and_abc_reconstruct(seed):
    u = random_u2(seed)
    assert algebra.zyz_decompose(u).matrix().is_close(u, atol=1e-9)
    abc = algebra.abc_factorize(u)
    assert abc.reconstruct().is_close(u, atol=1e-9)
    assert (abc.a_gate @ abc.b_gate @ abc.c_gate).is_close(algebra.I2, atol=1e-9)


def test_zyz_degenerate_diagonal():
    z = algebra.zyz_decompose(algebra.rz(0.4))
    assert z.gamma == pytest.approx(0.0)
    assert z.matrix().is_close(algebra.rz(0.4))


@settings(max_examples=50, deadline=None)
@given(real_secondary_matrices())
def test_solve_interleave(m):
    if m.is_close(-1.0 * np.eye(2), atol=1e-6):
        return
    a = algebra.solve_interleave(m)
    assert algebra.classify(a).special_unitary
    step = algebra.X @ a.dagger() @ algebra.X @ a
    assert step.is_close(m, atol=1e-9)
    squared = (step @ step).array
    assert abs(squared[0, 1].imag) < 1e-9 and abs(squared[1, 0].imag) < 1e-9


def test_solve_interleave_rejects_general_su2():
    with pytest.raises(PreconditionError):
        algebra.solve_interleave(algebra.rx(0.7))


def test_solve_interleave_rejects_minus_identity():
    with pytest.raises(PreconditionError):
        algebra.solve_interleave(-1.0 * np.eye(2))


def test_classify():
    rx = algebra.classify(algebra.rx(0.5))
    assert rx.special_unitary and rx.real_main_diagonal and not rx.real_secondary_diagonal
    ry = algebra.classify(algebra.ry(0.5))
    assert ry.real_main_diagonal and ry.real_secondary_diagonal
    rz = algebra.classify(algebra.rz(0.5))
    assert rz.real_secondary_diagonal and not rz.real_main_diagonal
    assert not algebra.classify(algebra.X).special_unitary
    assert algebra.classify(real_secondary_su2(0.3, 1.1)).real_secondary_diagonal


def test_random_su2_helper_has_unit_determinant():
    assert algebra.classify(random_su2(3)).special_unitary
