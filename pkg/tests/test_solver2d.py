"""Tests für modules.solver2d."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.analytic import EX3, PolySpec
from modules.exceptions import DenseCapExceeded
from modules.operators import Grid1D
from modules.solver2d import (
    Field2D,
    Problem2D,
    assemble2d,
    exact_field_2d,
    max_error_2d,
    perturbation_bound_2d,
    run2d,
)


def _bump_2d(x, y):
    profile = PolySpec.bump(2)
    return profile(x) * profile(y)


def test_field_ordering_is_x_fastest():
    gx, gy = Grid1D(0.0, 1.0, 4), Grid1D(0.0, 1.0, 5)
    values = np.add.outer(10.0 * np.arange(6), np.arange(5))      # [j, i] = i + 10 j
    field = Field2D(gx, gy, values)
    assert_allclose(field.interior[:4], [11.0, 12.0, 13.0, 21.0])
    back = Field2D.from_interior(gx, gy, field.interior)
    assert_allclose(back.values[1:-1, 1:-1], values[1:-1, 1:-1])
    assert back.values[0, 2] == 0.0
    with pytest.raises(ValueError):
        Field2D(gx, gy, np.zeros((5, 6)))


def test_initial_value_must_vanish_on_boundary():
    with pytest.raises(ValueError):
        Problem2D.homogeneous(1.5, 1.5, lambda x, y: np.ones(np.broadcast(x, y).shape))
    with pytest.raises(ValueError):
        Problem2D.homogeneous(1.5, 1.5, lambda x, y: x * (1.0 - x))
    Problem2D.homogeneous(1.5, 1.5, _bump_2d)


def test_problem_from_example():
    problem = Problem2D.from_example(1.3, 1.7)
    assert problem.K_a == pytest.approx(math.pi ** -8)
    X, Y = np.meshgrid(np.linspace(0, 1, 5), np.linspace(0, 1, 5))
    assert_allclose(problem.u0(X, Y), EX3.profile(X) * EX3.profile(Y))
    with pytest.raises(ValueError):
        Problem2D.from_example(1.3, 1.7, 'ex2')


def test_source_load_matches_kronecker_form():
    problem = Problem2D.homogeneous(1.4, 1.6, _bump_2d)
    scheme = assemble2d(problem, 6, 7, 2)
    rng = np.random.default_rng(7)
    F = np.zeros((8, 7))
    F[1:-1, 1:-1] = rng.standard_normal((6, 5))
    assert_allclose(scheme.source_load(F), scheme.T_mat @ F[1:-1, 1:-1].ravel(), atol=1e-13)


def test_system_matrices():
    scheme = assemble2d(Problem2D.from_example(1.3, 1.7), 8, 6, 4)
    n = 7 * 5
    assert scheme.A_plus.shape == (n, n)
    assert_allclose(scheme.T_mat, scheme.T_mat.T, atol=1e-12)
    assert_allclose(scheme.S_mat, scheme.S_mat.T, atol=1e-12)
    eig = np.linalg.eigvalsh(scheme.T_mat)
    assert eig.min() >= (4.0 * math.sqrt(6.0) / 3.0 - 3.0) ** 2 - 1e-12
    assert eig.max() <= 1.0 + 1e-12
    assert perturbation_bound_2d() == pytest.approx(1.0 / (4.0 * math.sqrt(6.0) / 3.0 - 3.0))
    assert perturbation_bound_2d() == pytest.approx(3.7596, abs=1e-4)


def test_assemble_validation():
    problem = Problem2D.from_example(1.5, 1.5)
    with pytest.raises(ValueError):
        assemble2d(problem, 8, 8, 0)
    with pytest.raises(ValueError):
        assemble2d(problem, 3, 8, 2)
    with pytest.raises(DenseCapExceeded):
        assemble2d(problem, 20, 20, 2, cap=100)


def test_energy_is_non_increasing():
    problem = Problem2D.homogeneous(1.3, 1.8, _bump_2d, T=3.0)
    scheme = assemble2d(problem, 8, 8, 30)
    energies = []
    run2d(scheme, problem, energies=energies)
    assert len(energies) == 31
    for before, after in zip(energies, energies[1:]):
        assert after <= before + 1e-14 * energies[0]


def test_symmetric_orders_give_symmetric_solution():
    problem = Problem2D.from_example(1.5, 1.5)
    scheme = assemble2d(problem, 8, 8, 4)
    field = run2d(scheme, problem)
    assert_allclose(field.values, field.values.T, atol=1e-12)


def test_error_decreases_under_refinement():
    problem = Problem2D.from_example(1.3, 1.6)
    errors = []
    history = []
    for M, tau in ((4, 0.25), (8, math.sqrt(2.0) / 16.0)):
        N = int(math.floor(problem.T / tau + 1e-9))
        scheme = assemble2d(problem, M, M, N, tau=tau)
        history.clear()
        numeric = run2d(scheme, problem, history=history)
        assert len(history) == N + 1
        errors.append(max_error_2d(numeric, exact_field_2d(scheme, problem)))
    assert errors[1] < errors[0] < 1e-6


def test_exact_field_requires_solution():
    problem = Problem2D.homogeneous(1.5, 1.5, _bump_2d)
    scheme = assemble2d(problem, 4, 4, 1)
    with pytest.raises(ValueError):
        exact_field_2d(scheme, problem)
    other = assemble2d(problem, 4, 5, 1)
    with pytest.raises(ValueError):
        max_error_2d(run2d(scheme, problem), run2d(other, problem))


def _random_interior(scheme, seed):
    return np.random.default_rng(seed).standard_normal((scheme.Ma - 1) * (scheme.Mb - 1))


@pytest.mark.parametrize("ratio", [0.1, 1.0, 10.0])
def test_energy_is_non_increasing_for_random_data(ratio):
    # tau / h = ratio bei Ma = Mb = 8
    problem = Problem2D.homogeneous(1.2, 1.8, _bump_2d, T=20 * ratio / 8)
    scheme = assemble2d(problem, 8, 8, 20)
    assert scheme.tau == pytest.approx(ratio / 8)
    U = _random_interior(scheme, 11)
    zero = np.zeros_like(U)
    energies = [scheme.energy(U)]
    for _ in range(scheme.N):
        U = scheme.step(U, zero)
        energies.append(scheme.energy(U))
    for before, after in zip(energies, energies[1:]):
        assert after <= before + 1e-13 * energies[0]


@pytest.mark.parametrize("orders", [(1.1, 1.9), (1.5, 1.5), (1.9, 1.3)])
def test_perturbation_bound_two_runs(orders):
    problem = Problem2D.homogeneous(*orders, _bump_2d, T=1.0)
    scheme = assemble2d(problem, 8, 6, 10)
    U, V = _random_interior(scheme, 1), _random_interior(scheme, 2)
    gap0 = np.linalg.norm(U - V)
    zero = np.zeros_like(U)
    for _ in range(scheme.N):
        U, V = scheme.step(U, zero), scheme.step(V, zero)
        assert np.linalg.norm(U - V) <= perturbation_bound_2d() * gap0 + 1e-12
