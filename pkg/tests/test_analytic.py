"""Tests für modules.analytic."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from modules.analytic import (
    EX2,
    EX3,
    PolySpec,
    example_exact,
    example_sources,
    get_example,
    riesz_by_quadrature,
    riesz_poly,
)


def test_polyspec_requires_double_zero():
    with pytest.raises(ValueError):
        PolySpec((0.0, 1.0, -1.0))          # x (1 - x)
    with pytest.raises(ValueError):
        PolySpec((0.0, 0.0, 1.0))           # x^2, keine Nullstelle bei 1
    with pytest.raises(ValueError):
        PolySpec.bump(1)


def test_bump_and_mirror(quartic):
    assert_allclose(quartic.coefficients, [0.0, 0.0, 1.0, -2.0, 1.0], atol=1e-15)
    assert_allclose(quartic.mirrored, quartic.coefficients, atol=1e-14)

    skewed = PolySpec((0.0, 0.0, 1.0, -3.0, 3.0, -1.0))   # x^2 (1 - x)^3
    assert_allclose(skewed.mirrored, [0.0, 0.0, 0.0, 1.0, -2.0, 1.0], atol=1e-14)
    assert skewed(0.5) == pytest.approx(0.25 * 0.125)


@pytest.mark.parametrize("x", [0.3, 0.5, 0.7])
def test_closed_form_matches_quadrature(quartic, x):
    assert riesz_poly(quartic, 1.3, x) == pytest.approx(riesz_by_quadrature(quartic, 1.3, x), abs=1e-8)


@pytest.mark.parametrize("alpha", [1.1, 1.7, 1.9])
def test_closed_form_matches_quadrature_bump6(bump6, alpha):
    for x in (0.2, 0.55):
        assert riesz_poly(bump6, alpha, x) == pytest.approx(
            riesz_by_quadrature(bump6, alpha, x), rel=1e-8, abs=1e-10)


def test_riesz_poly_vectorized_and_symmetric(quartic):
    x = np.array([0.2, 0.4, 0.6, 0.8])
    values = riesz_poly(quartic, 1.5, x)
    assert values.shape == (4,)
    assert_allclose(values, values[::-1], rtol=1e-12)
    assert isinstance(riesz_poly(quartic, 1.5, 0.5), float)


def test_riesz_poly_rejects_points_outside(quartic):
    with pytest.raises(ValueError):
        riesz_poly(quartic, 1.5, 1.2)


def test_exact_solutions_start_from_profile():
    x = np.linspace(0.0, 1.0, 11)
    assert_allclose(example_exact('ex2', x, 0.0), EX2.profile(x))
    X, Y = np.meshgrid(x, x)
    assert_allclose(example_exact('ex3', (X, Y), 0.0), EX3.profile(X) * EX3.profile(Y))


def test_exact_solutions_vanish_on_boundary():
    for t in (0.0, 0.5, 1.0):
        assert_allclose(example_exact('ex2', np.array([0.0, 1.0]), t), 0.0, atol=1e-15)
        edge = np.linspace(0.0, 1.0, 7)
        assert_allclose(example_exact('ex3', (edge, np.zeros(7)), t), 0.0, atol=1e-15)


def test_exact_growth():
    assert example_exact('ex2', 0.5, 1.0) == pytest.approx(math.e * EX2.profile(0.5))
    assert example_exact('ex3', (0.5, 0.5), 1.0) == pytest.approx(math.exp(2.0) * EX3.profile(0.5) ** 2)


@pytest.mark.parametrize("alpha", [1.2, 1.5, 1.8])
def test_manufactured_residual_1d(alpha):
    for x in (0.2, 0.7):
        assert abs(EX2.residual((alpha,), x, 0.5)) <= 1e-12


def test_manufactured_residual_2d():
    assert abs(EX3.residual((1.3, 1.7), (0.3, 0.6), 0.5)) <= 1e-12


def test_source_symmetric_for_equal_orders():
    a = example_sources('ex3', (1.5, 1.5), (0.3, 0.7), 0.4)
    b = example_sources('ex3', (1.5, 1.5), (0.7, 0.3), 0.4)
    assert a == pytest.approx(b, rel=1e-12)


def test_source_shapes_and_orders():
    x = np.linspace(0.0, 1.0, 5)
    assert example_sources('ex2', (1.5,), x, 0.2).shape == (5,)
    with pytest.raises(ValueError):
        example_sources('ex2', (1.5, 1.5), x, 0.2)
    with pytest.raises(ValueError):
        example_exact('ex3', (0.5,), 0.0)


def test_unknown_example():
    with pytest.raises(ValueError):
        get_example('ex9')
    assert get_example(EX2) is EX2
