"""Tests für modules.operators."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.analytic import PolySpec, riesz_poly
from modules.coefficients import FractionalOrder, coefficient_table, grunwald_weights
from modules.exceptions import DenseCapExceeded, NumericalFailure
from modules.operators import (
    CompactSpec,
    Field1D,
    Grid1D,
    build_2d,
    build_matrices,
    central_difference_p,
    compact_apply,
    compact_eigenvalues,
    compact_matrix,
    compact_weight,
    family_generator,
    riesz_apply,
    riesz_derivative_compact,
    shifted_riesz,
)


def _field(spec: PolySpec, M: int) -> Field1D:
    return Field1D.from_function(Grid1D(0.0, spec.length, M), spec)


# ---------------------------------------------------------------------------
# Gitter und Felder
# ---------------------------------------------------------------------------

def test_grid_basics():
    grid = Grid1D(0.0, 1.0, 8)
    assert grid.h == pytest.approx(0.125)
    assert grid.nodes.size == 9
    assert_allclose(grid.interior, np.arange(1, 8) / 8)


@pytest.mark.parametrize("args", [(0.0, 1.0, 3), (1.0, 0.0, 8), (0.0, 1.0, 4.5)])
def test_grid_validation(args):
    with pytest.raises(ValueError):
        Grid1D(*args)


def test_field_requires_homogeneous_boundary():
    grid = Grid1D(0.0, 1.0, 8)
    with pytest.raises(ValueError):
        Field1D(grid, np.ones(9))
    with pytest.raises(ValueError):
        Field1D.from_function(grid, lambda x: 1.0 + x)
    assert Field1D(grid, np.ones(9), homogeneous=False).values[0] == 1.0


def test_field_is_read_only(quartic):
    u = _field(quartic, 8)
    with pytest.raises(ValueError):
        u.values[3] = 0.0


def test_family_generator():
    assert family_generator('I') == (2, -1.0)
    assert family_generator('II') == (2, 1.0)
    assert family_generator((3, 0.5)) == (3, 0.5)
    with pytest.raises(ValueError):
        family_generator('III')


# ---------------------------------------------------------------------------
# Summen
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("family", ['I', 'II'])
@pytest.mark.parametrize("alpha", [1.1, 1.5, 1.9])
def test_riesz_apply_equals_matrix_form(quartic, family, alpha):
    M = 16
    u = _field(quartic, M)
    mats = build_matrices(alpha, M, family)
    expected = mats.D @ u.interior / u.grid.h ** alpha
    assert_allclose(riesz_apply(u, alpha, family), expected, rtol=1e-12, atol=1e-13)


def test_riesz_apply_second_order(quartic):
    alpha = 1.5
    errors = []
    for M in (20, 40):
        u = _field(quartic, M)
        approx = riesz_apply(u, alpha, 'I')[M // 2 - 1]
        errors.append(abs(approx - riesz_poly(quartic, alpha, 0.5)))
    assert math.log2(errors[0] / errors[1]) == pytest.approx(2.0, abs=0.1)


def test_riesz_apply_rejects_fractional_shift(quartic):
    with pytest.raises(ValueError):
        riesz_apply(_field(quartic, 8), 1.5, (3, 0.5))


def test_riesz_apply_rejects_short_table(quartic):
    table = coefficient_table('kappa2', 1.5, 4)
    with pytest.raises(ValueError):
        riesz_apply(_field(quartic, 16), 1.5, 'I', table=table)


# ---------------------------------------------------------------------------
# Kompakte Operatoren
# ---------------------------------------------------------------------------

def test_compact_apply_zero_sigma_is_identity(quartic):
    u = _field(quartic, 12)
    assert_allclose(compact_apply(u, CompactSpec('L', 1.0, 0.0)), u.interior)


def test_compact_apply_equals_matrix(quartic):
    u = _field(quartic, 12)
    spec = CompactSpec.L(1.5)
    assert spec.a1 == pytest.approx(1.0 / 6.0)
    C = compact_matrix(spec.a1, 11)
    assert_allclose(compact_apply(u, spec), C @ u.interior, atol=1e-15)
    assert_allclose(compact_weight(u.values, spec), C @ u.interior, atol=1e-15)


def test_compact_weight_along_axis():
    values = np.arange(20.0).reshape(4, 5) ** 2
    spec = CompactSpec.L(1.3)
    along_rows = compact_weight(values, spec, axis=1)
    assert along_rows.shape == (4, 3)
    assert_allclose(along_rows[2], compact_weight(values[2], spec))
    assert compact_weight(values, spec, axis=0).shape == (2, 5)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_h_operator_coefficients(alpha):
    spec = CompactSpec.H(alpha, -1.0, 1.0)
    assert spec.a0 == pytest.approx((22 * alpha ** 2 + 8) / (12 * alpha ** 2))
    with pytest.raises(ValueError):
        CompactSpec.H(alpha, 1.0, 1.0)


def test_j_operator_uses_expansion_coefficient():
    spec = CompactSpec.J(1.5, 2, -1.0)
    assert spec.q == 2
    assert spec.a1 == pytest.approx(CompactSpec.L(1.5).a1, abs=1e-13)
    assert CompactSpec.J(1.5, 3, 0.0).q == 3


def test_apply_function_on_quadratic():
    f = lambda x: np.asarray(x) ** 2
    for spec in (CompactSpec.L(1.5), CompactSpec.H(1.3)):
        assert spec.apply_function(f, 0.3, 0.1) == pytest.approx(spec.a0 * 0.09 + spec.a1 * 0.02, rel=1e-12)
    cubic = CompactSpec.J(1.5, 3, 0.5)
    assert cubic.apply_function(lambda x: np.asarray(x) ** 3, 0.2, 0.1) == pytest.approx(
        0.008 + cubic.a1 * 6.0 * 0.1 ** 3, rel=1e-10)


def test_compact_apply_rejects_odd_order(quartic):
    with pytest.raises(ValueError):
        compact_apply(_field(quartic, 8), CompactSpec.J(1.5, 3, 0.0))


@pytest.mark.parametrize("formula", ['f7', 'f8', 'f9'])
def test_compact_derivative_close_to_exact(quartic, formula):
    alpha = 1.5
    M = 40
    u = _field(quartic, M)
    boundary = (riesz_poly(quartic, alpha, 0.0), riesz_poly(quartic, alpha, 1.0))
    d = riesz_derivative_compact(u, alpha, formula, exact_boundary=boundary)
    assert not d.homogeneous
    assert d.values[M // 2] == pytest.approx(riesz_poly(quartic, alpha, 0.5), abs=5e-3)

    extrapolated = riesz_derivative_compact(u, alpha, formula)
    assert np.all(np.isfinite(extrapolated.values))
    assert extrapolated.values[M // 2] == pytest.approx(d.values[M // 2], abs=1e-6)


def test_compact_derivative_unknown_formula(quartic):
    with pytest.raises(ValueError):
        riesz_derivative_compact(_field(quartic, 8), 1.5, 'f10')


# ---------------------------------------------------------------------------
# Punktweise Auswertung
# ---------------------------------------------------------------------------

def test_central_difference_p():
    assert central_difference_p(lambda x: x ** 2, 2, 0.3, 0.1) == pytest.approx(2.0, abs=1e-10)
    assert central_difference_p(lambda x: x, 1, 0.3, 0.1) == pytest.approx(1.0, abs=1e-12)
    assert central_difference_p(np.sin, 3, 1.0, 1e-2) == pytest.approx(-math.cos(1.0), abs=1e-4)


@pytest.mark.parametrize("s, family", [(-1.0, 'I'), (1.0, 'II')])
def test_shifted_riesz_on_grid_equals_sums(quartic, s, family):
    alpha, M = 1.5, 20
    u = _field(quartic, M)
    grid_values = riesz_apply(u, alpha, family)
    for j in (3, 10, 17):
        value = shifted_riesz(2, s, alpha, quartic, j / M, 1.0 / M)
        assert value == pytest.approx(grid_values[j - 1], rel=1e-12, abs=1e-12)


def test_shifted_riesz_p1_is_grunwald_sum(quartic):
    alpha, h, x = 1.5, 1.0 / 20, 0.35
    order = FractionalOrder(alpha)
    w = grunwald_weights(alpha, 40)
    ell = np.arange(41)
    left_args = x - ell * h
    right_args = x + ell * h
    left = sum(w[k] * quartic(a) for k, a in enumerate(left_args) if 0.0 <= a <= 1.0)
    right = sum(w[k] * quartic(a) for k, a in enumerate(right_args) if 0.0 <= a <= 1.0)
    expected = order.prefactor * (left + right) / h ** alpha
    assert shifted_riesz(1, 0.0, alpha, quartic, x, h) == pytest.approx(expected, rel=1e-12, abs=1e-12)


def test_shifted_riesz_third_order(bump6):
    alpha = 1.5
    exact = riesz_poly(bump6, alpha, 0.3)
    errors = [abs(shifted_riesz(3, 0.5, alpha, bump6, 0.3, h) - exact) for h in (1 / 40, 1 / 80)]
    assert math.log2(errors[0] / errors[1]) == pytest.approx(3.0, abs=0.25)


@pytest.mark.parametrize("alpha", [1.3, 1.5, 1.8])
def test_shifted_riesz_third_order_off_grid(quartic, alpha):
    # p = 3, s = 0.5 an x = 0.5 + h/2
    errors = []
    for h in (1 / 40, 1 / 80):
        x = 0.5 + 0.5 * h
        errors.append(abs(shifted_riesz(3, 0.5, alpha, quartic, x, h) - riesz_poly(quartic, alpha, x)))
    assert math.log2(errors[0] / errors[1]) == pytest.approx(3.0, abs=0.25)


def test_shifted_riesz_validates_step(quartic):
    with pytest.raises(ValueError):
        shifted_riesz(2, -1.0, 1.5, quartic, 0.5, 0.0)


# ---------------------------------------------------------------------------
# Matrizen
# ---------------------------------------------------------------------------

def test_compact_eigenvalues_closed_form():
    mats = build_matrices(1.5, 16)
    assert mats.sigma == pytest.approx(1.0 / 6.0)
    assert_allclose(np.sort(np.linalg.eigvalsh(mats.C)),
                    np.sort(compact_eigenvalues(mats.sigma, 16)), atol=1e-12)


@pytest.mark.parametrize("alpha", [1.1, 1.5, 1.9])
def test_d_is_negative_definite(alpha):
    mats = build_matrices(alpha, 32)
    assert_allclose(mats.D, mats.D.T, atol=1e-12)
    assert np.linalg.eigvalsh(mats.D).max() <= 1e-10


def test_matrices_are_read_only():
    mats = build_matrices(1.5, 8)
    with pytest.raises(ValueError):
        mats.C[0, 0] = 2.0


def test_dense_cap():
    with pytest.raises(DenseCapExceeded) as info:
        build_matrices(1.5, 100, cap=50)
    assert isinstance(info.value, NumericalFailure)
    assert info.value.unknowns == 99 and info.value.cap == 50
    with pytest.raises(DenseCapExceeded):
        build_2d(1.5, 1.5, 20, 20, cap=300)


def test_kronecker_matrices():
    km = build_2d(1.3, 1.7, 8, 10, K_a=0.5, K_b=2.0)
    n = 7 * 9
    assert km.T.shape == (n, n) and km.S.shape == (n, n)
    assert_allclose(km.T, km.T.T, atol=1e-12)
    assert_allclose(km.S, km.S.T, atol=1e-12)
    assert np.linalg.eigvalsh(km.T).min() > 0
    assert np.linalg.eigvalsh(km.S).max() < 0
    assert_allclose(km.T, np.kron(km.y_matrices.C, km.x_matrices.C))


SIGMA_MAX = 1.0 - math.sqrt(6.0) / 3.0
C_MIN = 4.0 * math.sqrt(6.0) / 3.0 - 3.0


@pytest.mark.parametrize("alpha", np.round(np.arange(1.05, 1.951, 0.05), 2).tolist() + [math.sqrt(1.5)])
def test_sigma_range(alpha):
    sigma = build_matrices(alpha, 4).sigma
    assert 1.0 / 12.0 < sigma <= SIGMA_MAX + 1e-14


def test_sigma_maximum_at_sqrt_three_halves():
    assert build_matrices(math.sqrt(1.5), 4).sigma == pytest.approx(SIGMA_MAX, abs=1e-14)


@pytest.mark.parametrize("alpha", [1.05, 1.2247, 1.5, 1.95])
@pytest.mark.parametrize("M", [8, 33])
def test_compact_quadratic_form_bounds(alpha, M):
    C = build_matrices(alpha, M).C
    rng = np.random.default_rng(M)
    for _ in range(20):
        u = rng.standard_normal(M - 1)
        form = u @ C @ u
        norm2 = u @ u
        assert C_MIN * norm2 - 1e-10 <= form <= norm2 + 1e-10


@pytest.mark.parametrize("orders", [(1.1, 1.9), (1.2247, 1.2247), (1.9, 1.05)])
def test_kronecker_quadratic_form_bounds(orders):
    T = build_2d(*orders, 6, 7).T
    rng = np.random.default_rng(3)
    for _ in range(20):
        u = rng.standard_normal(T.shape[0])
        form = u @ T @ u
        norm2 = u @ u
        assert C_MIN ** 2 * norm2 - 1e-10 <= form <= norm2 + 1e-10
