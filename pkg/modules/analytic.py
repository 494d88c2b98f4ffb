#!/usr/bin/env python3
"""
Analytische Referenzgrößen
==========================

Riesz-Ableitungen von Polynomen mit doppelter Nullstelle an beiden Rändern,
eine Quadratur-Auswertung der definierenden Integrale als unabhängiges
Orakel sowie die hergestellten Lösungen (exakte Lösung + Quellterm) der
Reaktions-Dispersions-Beispiele in 1D und 2D.

Die Quellterme werden stets aus der exakten Lösung aufgebaut:
f = du/dt + u - sum_d K_d * Riesz_d(u).

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.0.0
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate, special

from modules.coefficients import OrderLike, as_order

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

EX2_DIFFUSION = math.exp(-12.0)
EX3_DIFFUSION = math.pi ** -8


@dataclass(frozen=True)
class PolySpec:
    """
    Polynom u(x) = sum a_nu x^nu auf [0, L].

    Die gespiegelte Darstellung u(x) = sum b_nu (L - x)^nu wird durch
    Komposition gewonnen. Beide Darstellungen müssen mit nu >= 2 beginnen.
    """

    coefficients: Tuple[float, ...]
    length: float = 1.0

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, 'coefficients', coeffs)
        if self.length <= 0:
            raise ValueError(f"Intervalllänge muss positiv sein, nicht {self.length}")
        scale = 1.0 + max((abs(c) for c in coeffs), default=0.0)
        for name, values in (('links', coeffs), ('rechts', tuple(self.mirrored))):
            if any(abs(c) > 1e-12 * scale for c in values[:2]):
                raise ValueError(
                    f"Polynom braucht eine doppelte Nullstelle am Rand ({name}): {values[:2]}"
                )

    @classmethod
    def bump(cls, m: int, length: float = 1.0) -> 'PolySpec':
        """x^m (L - x)^m."""
        if m < 2:
            raise ValueError(f"Exponent m muss >= 2 sein, nicht {m}")
        poly = Polynomial([0.0, 1.0]) ** m * Polynomial([length, -1.0]) ** m
        return cls(tuple(poly.coef), length)

    @property
    def polynomial(self) -> Polynomial:
        return Polynomial(self.coefficients)

    @property
    def mirrored(self) -> np.ndarray:
        """Koeffizienten b_nu in Potenzen von (L - x)."""
        coef = self.polynomial(Polynomial([self.length, -1.0])).coef
        out = np.zeros(len(self.coefficients))
        out[:coef.size] = coef
        return out

    def __call__(self, x: ArrayLike) -> ArrayLike:
        return self.polynomial(x)

    def second_derivative(self) -> Polynomial:
        return self.polynomial.deriv(2)


def _check_points(x: ArrayLike, length: float) -> np.ndarray:
    points = np.asarray(x, dtype=float)
    if np.any(points < 0.0) or np.any(points > length):
        raise ValueError(f"Auswertepunkte außerhalb von [0, {length}]")
    return points


def riesz_poly(spec: PolySpec, order: OrderLike, x: ArrayLike) -> ArrayLike:
    """
    Riesz-Ableitung eines PolySpec in geschlossener Form.

    prefactor * sum_nu Gamma(nu+1)/Gamma(nu+1-alpha) [a_nu x^(nu-alpha) + b_nu (L-x)^(nu-alpha)]
    """
    order = as_order(order)
    alpha = order.alpha
    points = _check_points(x, spec.length)
    left = spec.coefficients
    right = spec.mirrored

    total = np.zeros_like(points)
    for nu, (a_nu, b_nu) in enumerate(zip(left, right)):
        if a_nu == 0.0 and b_nu == 0.0:
            continue
        shifted = nu + 1.0 - alpha
        if shifted <= 0.0 and shifted.is_integer():
            raise ValueError(f"Gamma-Polstelle bei nu={nu}, alpha={alpha}")
        factor = special.gamma(nu + 1.0) / special.gamma(shifted)
        total = total + factor * (a_nu * points ** (nu - alpha)
                                  + b_nu * (spec.length - points) ** (nu - alpha))
    result = order.prefactor * total
    return float(result) if result.ndim == 0 else result


def riesz_by_quadrature(spec: PolySpec, order: OrderLike, x: float,
                        epsabs: float = 1e-13, epsrel: float = 1e-12) -> float:
    """
    Riesz-Ableitung über adaptive Quadratur der definierenden Integrale.

    Mit u(0) = u'(0) = u(L) = u'(L) = 0 gilt für beide Seiten
    D^alpha u(x) = 1/Gamma(2-alpha) * int |x - xi|^(1-alpha) u''(xi) dxi.
    """
    order = as_order(order)
    alpha = order.alpha
    x = float(_check_points(x, spec.length))
    second = spec.second_derivative()
    options = dict(epsabs=epsabs, epsrel=epsrel, limit=200)

    left = right = 0.0
    if x > 0.0:
        left, _ = integrate.quad(second, 0.0, x, weight='alg', wvar=(0.0, 1.0 - alpha), **options)
    if x < spec.length:
        right, _ = integrate.quad(second, x, spec.length, weight='alg', wvar=(1.0 - alpha, 0.0), **options)
    return order.prefactor * (left + right) / float(special.gamma(2.0 - alpha))


@dataclass(frozen=True)
class ManufacturedExample:
    """
    Hergestellte Lösung u = e^(c t) prod_d P(x_d) auf [0, 1]^dim.

    Die Gleichung lautet du/dt = -u + sum_d K_d Riesz_d(u) + f.
    """

    name: str
    diffusion: Tuple[float, ...]
    growth: float
    profile: PolySpec
    T: float = 1.0

    @property
    def dimension(self) -> int:
        return len(self.diffusion)

    def _coordinates(self, point) -> Tuple[np.ndarray, ...]:
        if self.dimension == 1:
            coords = (np.asarray(point, dtype=float),)
        else:
            if len(point) != self.dimension:
                raise ValueError(
                    f"{self.name} erwartet {self.dimension} Koordinaten, erhalten: {len(point)}"
                )
            coords = tuple(np.asarray(c, dtype=float) for c in point)
        return tuple(_check_points(c, self.profile.length) for c in coords)

    def exact(self, point, t: float) -> ArrayLike:
        coords = self._coordinates(point)
        value = math.exp(self.growth * t)
        for c in coords:
            value = value * self.profile(c)
        return value

    def source(self, orders: Sequence[OrderLike], point, t: float) -> ArrayLike:
        orders = _normalize_orders(orders, self.dimension)
        coords = self._coordinates(point)
        profiles = [self.profile(c) for c in coords]
        diffusion = 0.0
        for d, (order, K) in enumerate(zip(orders, self.diffusion)):
            term = riesz_poly(self.profile, order, coords[d])
            for other, value in enumerate(profiles):
                if other != d:
                    term = term * value
            diffusion = diffusion + K * term
        weight = math.exp(self.growth * t)
        return (self.growth + 1.0) * self.exact(point, t) - weight * diffusion

    def residual(self, orders: Sequence[OrderLike], point, t: float, dt: float = 1e-4) -> ArrayLike:
        """du/dt + u - sum K_d Riesz_d(u) - f mit zentraler Zeitdifferenz und Quadratur-Riesz."""
        orders = _normalize_orders(orders, self.dimension)
        coords = self._coordinates(point)
        if any(c.ndim for c in coords):
            raise ValueError("Residuum nur an einzelnen Punkten")
        du_dt = (self.exact(point, t + dt) - self.exact(point, t - dt)) / (2.0 * dt)
        profiles = [float(self.profile(c)) for c in coords]
        diffusion = 0.0
        for d, (order, K) in enumerate(zip(orders, self.diffusion)):
            term = riesz_by_quadrature(self.profile, order, float(coords[d]))
            for other, value in enumerate(profiles):
                if other != d:
                    term *= value
            diffusion += K * term
        u = self.exact(point, t)
        return du_dt + u - math.exp(self.growth * t) * diffusion - self.source(orders, point, t)


def _normalize_orders(orders, dimension: int) -> Tuple:
    if not isinstance(orders, (list, tuple)):
        orders = (orders,)
    if len(orders) != dimension:
        raise ValueError(f"{dimension} Ordnungen erwartet, erhalten: {len(orders)}")
    return tuple(as_order(o) for o in orders)


EX2 = ManufacturedExample('ex2', (EX2_DIFFUSION,), 1.0, PolySpec.bump(6))
EX3 = ManufacturedExample('ex3', (EX3_DIFFUSION, EX3_DIFFUSION), 2.0, PolySpec.bump(6))

EXAMPLES: Dict[str, ManufacturedExample] = {'ex2': EX2, 'ex3': EX3}


def get_example(example: Union[str, ManufacturedExample]) -> ManufacturedExample:
    if isinstance(example, ManufacturedExample):
        return example
    try:
        return EXAMPLES[str(example).lower()]
    except KeyError:
        raise ValueError(f"Unbekanntes Beispiel: {example}") from None


def example_exact(example: Union[str, ManufacturedExample], point, t: float) -> ArrayLike:
    """Exakte Lösung des Beispiels an ``point`` (x oder (x, y)) zur Zeit t."""
    return get_example(example).exact(point, t)


def example_sources(example: Union[str, ManufacturedExample], orders, point, t: float) -> ArrayLike:
    """Quellterm f, aufgebaut aus der exakten Lösung."""
    return get_example(example).source(orders, point, t)
