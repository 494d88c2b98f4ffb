#!/usr/bin/env python3
"""
Koeffizienten der fraktionalen Differenzenformeln
=================================================

Erzeugt und prüft alle Koeffizientenfamilien der Riesz-Approximationen:

- Grünwald-Gewichte (Potenzreihe von (1-z)^alpha)
- kappa-Familie (Generator W2, Shift s = -1) und kappa-tilde (Shift s = +1)
- allgemeine mu-Familien der Generatoren G_{p,s}, p = 1..4
- Entwicklungskoeffizienten rho der asymptotischen Fehlerreihe
- numerische Konstruktion der Generatorpolynome

Jede Familie lässt sich auf drei unabhängigen Wegen berechnen:

- ``recursion``: Rekursion mit den expliziten ganzzahligen Polynomen (Produktionspfad)
- ``convolution``: Faltung der Grünwald-Gewichte mit den Linearfaktoren des Generators
- ``series_oracle``: Potenzreihen-Potenz des ausmultiplizierten Generators

Alle Funktionen sind rein; zurückgegebene Tabellen sind schreibgeschützt.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.0.0
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import optimize, special

from modules.exceptions import NumericalFailure

logger = logging.getLogger(__name__)

ALPHA_MIN = 1.0 + 1e-8
ALPHA_MAX = 2.0 - 1e-8

FAMILIES = ('grunwald', 'kappa2', 'kappa2_tilde', 'mu')
METHODS = ('recursion', 'convolution', 'series_oracle')

FAMILY_ALIASES = {
    'grunwald': 'grunwald',
    'kappa2': 'kappa2',
    'kappa2_tilde': 'kappa2_tilde',
    'kappa2t': 'kappa2_tilde',
    'mu': 'mu',
}
METHOD_ALIASES = {
    'recursion': 'recursion',
    'rec': 'recursion',
    'convolution': 'convolution',
    'conv': 'convolution',
    'series_oracle': 'series_oracle',
    'series': 'series_oracle',
}


@dataclass(frozen=True)
class FractionalOrder:
    """Ableitungsordnung alpha im offenen Intervall (1, 2) samt Riesz-Vorfaktor."""

    alpha: float

    def __post_init__(self):
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or not (ALPHA_MIN <= alpha <= ALPHA_MAX):
            raise ValueError(
                f"Ordnung alpha={self.alpha} außerhalb des zulässigen Fensters "
                f"[{ALPHA_MIN}, {ALPHA_MAX}]"
            )
        object.__setattr__(self, 'alpha', alpha)

    @property
    def prefactor(self) -> float:
        """-1/(2 cos(pi alpha / 2)), positiv auf (1, 2)."""
        return -1.0 / (2.0 * math.cos(math.pi * self.alpha / 2.0))

    def __float__(self) -> float:
        return self.alpha


OrderLike = Union[FractionalOrder, float]


def as_order(order: OrderLike) -> FractionalOrder:
    """Wandelt eine Zahl in eine validierte FractionalOrder um."""
    if isinstance(order, FractionalOrder):
        return order
    return FractionalOrder(order)


def _real_power(base: float, alpha: float) -> float:
    """base^alpha; für nicht-ganzzahliges alpha nur mit base > 0 (exp(alpha ln base))."""
    if float(alpha).is_integer():
        return float(base) ** int(alpha)
    if base <= 0.0:
        raise ValueError(
            f"Basis {base} <= 0 bei nicht-ganzzahligem Exponenten {alpha}"
        )
    return math.exp(alpha * math.log(base))


# ---------------------------------------------------------------------------
# Grundbausteine
# ---------------------------------------------------------------------------

def _grunwald(alpha: float, n: int) -> np.ndarray:
    factors = 1.0 - (1.0 + alpha) / np.arange(1, n + 1, dtype=float)
    return np.cumprod(np.concatenate(([1.0], factors)))


def grunwald_weights(order: OrderLike, n: int) -> np.ndarray:
    """
    Grünwald-Gewichte w_0..w_n, also die Taylor-Koeffizienten von (1-z)^alpha.

    Args:
        order: Ableitungsordnung
        n: höchster Index (n >= 0)

    Returns:
        Array der Länge n+1
    """
    if n < 0:
        raise ValueError(f"n muss >= 0 sein, nicht {n}")
    return _grunwald(as_order(order).alpha, n)


def series_power(poly: Sequence[float], order: Union[OrderLike, int], n: int) -> np.ndarray:
    """
    Erste n Taylor-Koeffizienten von poly(z)^alpha.

    Nutzt die Standard-Rekursion aus P Q' = alpha P' Q; exakt für ganzzahliges alpha.

    Args:
        poly: Koeffizienten von poly in aufsteigender Potenz, poly[0] != 0
        order: Exponent (FractionalOrder oder beliebige reelle Zahl)
        n: Anzahl der Koeffizienten (n >= 1)

    Returns:
        Array der Länge n
    """
    alpha = order.alpha if isinstance(order, FractionalOrder) else float(order)
    a = np.atleast_1d(np.asarray(poly, dtype=float))
    if n < 1:
        raise ValueError(f"n muss >= 1 sein, nicht {n}")
    if a.size == 0 or a[0] == 0.0:
        raise ValueError("Reihenpotenz benötigt poly[0] != 0")

    a = a[:n]
    degree = a.size - 1
    q = np.zeros(n)
    q[0] = _real_power(a[0], alpha)
    k_all = np.arange(1, degree + 1)
    for m in range(1, n):
        k = k_all[:min(m, degree)]
        q[m] = np.dot(((alpha + 1.0) * k - m) * a[k], q[m - k]) / (m * a[0])
    return q


# ---------------------------------------------------------------------------
# Generatorpolynome
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorPolynomial:
    """
    Generator G_{p,s}(z) = (sum_{k=1..p} c_k (1-z)^k)^alpha.

    ``coeffs`` hält c_1..c_p mit c_1 = 1; theta_{k-1,k-1} = alpha * c_k.
    """

    p: int
    s: float
    alpha: float
    coeffs: Tuple[float, ...]

    def __post_init__(self):
        if self.p < 1 or len(self.coeffs) != self.p:
            raise ValueError(
                f"Generator der Ordnung p={self.p} braucht genau p Koeffizienten, "
                f"erhalten: {len(self.coeffs)}"
            )
        if self.coeffs[0] != 1.0:
            raise ValueError(f"c_1 muss 1 sein, nicht {self.coeffs[0]}")

    @property
    def theta(self) -> Tuple[float, ...]:
        """Parameter theta_{k-1,k-1} für k = 2..p."""
        return tuple(self.alpha * c for c in self.coeffs[1:])

    @property
    def leading_value(self) -> float:
        """d_1 = Basiswert bei z = 0, also sum c_k."""
        return float(sum(self.coeffs))

    def base_coefficients(self) -> np.ndarray:
        """Koeffizienten in z von sum c_k (1-z)^k (vor der Potenz alpha)."""
        out = np.zeros(self.p + 1)
        for k, c in enumerate(self.coeffs, start=1):
            out[:k + 1] += c * P.polypow([1.0, -1.0], k)
        return out

    def reduced_coefficients(self) -> np.ndarray:
        """Koeffizienten in z von Q(z) = sum c_k (1-z)^{k-1}; G = (1-z)^alpha Q^alpha."""
        out = np.zeros(self.p)
        for k, c in enumerate(self.coeffs, start=1):
            out[:k] += c * P.polypow([1.0, -1.0], k - 1)
        return out


def explicit_generator(p: int, s: float, order: OrderLike) -> GeneratorPolynomial:
    """Geschlossene Generatorpolynome für p = 1..4."""
    alpha = as_order(order).alpha
    s = float(s)
    closed = (
        1.0,
        (alpha + 2 * s) / (2 * alpha),
        (2 * alpha ** 2 + 6 * alpha * s + 3 * s ** 2) / (6 * alpha ** 2),
        (3 * alpha ** 3 + 11 * alpha ** 2 * s + 9 * alpha * s ** 2 + 2 * s ** 3)
        / (12 * alpha ** 3),
    )
    if p not in (1, 2, 3, 4):
        raise ValueError(f"Geschlossene Generatoren nur für p in 1..4, nicht {p}")
    return GeneratorPolynomial(p, s, alpha, closed[:p])


def _expansion_series(alpha: float, s: float, coeffs: Sequence[float], m: int) -> np.ndarray:
    """Koeffizienten z^0..z^m von e^{-sz} z^{-alpha} (sum c_k (1-e^{-z})^k)^alpha."""
    n = m + 1
    k = np.arange(n)
    phi = (-1.0) ** k / special.factorial(k + 1)       # (1 - e^{-z}) / z
    y = np.concatenate(([0.0], phi[:-1]))              # 1 - e^{-z}
    inner = np.zeros(n)
    y_pow = np.zeros(n)
    y_pow[0] = 1.0
    for c in coeffs:
        inner += c * y_pow
        y_pow = P.polymul(y_pow, y)[:n]
    reduced = P.polymul(phi, inner)[:n]
    powered = series_power(reduced, alpha, n)
    shift = np.power(-float(s), k) / special.factorial(k)
    return P.polymul(powered, shift)[:n]


def construct_generator(p: int, s: float, order: OrderLike, tol: float = 1e-9) -> GeneratorPolynomial:
    """
    Baut die Generatorkoeffizienten c_2..c_p iterativ auf.

    Für k = 2..p wird c_k so gewählt, dass der z^{k-1}-Term von
    e^{-sz} G_{k,s}(e^{-z}) / z^alpha verschwindet. Der Term ist affin in c_k
    (Steigung alpha); die Steigung wird numerisch gemessen und geprüft.

    Args:
        p: Ordnung des Generators (>= 1)
        s: Shift-Parameter
        order: Ableitungsordnung
        tol: relative Toleranz für Steigung und bereits eliminierte Terme

    Returns:
        GeneratorPolynomial

    Raises:
        NumericalFailure: wenn die Reihenarithmetik keine saubere Lösung liefert
    """
    alpha = as_order(order).alpha
    if p < 1:
        raise ValueError(f"p muss >= 1 sein, nicht {p}")

    coeffs = [1.0]
    for k in range(2, p + 1):
        e0 = _expansion_series(alpha, s, coeffs + [0.0], k - 1)
        e1 = _expansion_series(alpha, s, coeffs + [1.0], k - 1)
        slope = e1[k - 1] - e0[k - 1]
        scale = 1.0 + abs(e0[k - 1]) + abs(e1[k - 1])
        if not np.isfinite(slope) or abs(slope - alpha) > tol * scale:
            raise NumericalFailure(
                f"Generator-Konstruktion p={p}, s={s}: Steigung {slope} statt {alpha} bei k={k}"
            )
        if np.any(np.abs(e0[1:k - 1]) > tol * scale):
            raise NumericalFailure(
                f"Generator-Konstruktion p={p}, s={s}: niedrigere Terme nicht eliminiert bei k={k}"
            )
        coeffs.append(-e0[k - 1] / slope)

    logger.debug(f"Generator konstruiert: p={p}, s={s}, alpha={alpha}, c={coeffs}")
    return GeneratorPolynomial(p, float(s), alpha, tuple(coeffs))


# ---------------------------------------------------------------------------
# Entwicklungskoeffizienten
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionCoefficients:
    """Reihe e^{-sz}/z^alpha G_{p,s}(e^{-z}) = 1 + sum_{l>=p} rho_l z^l (Koeffizienten 0..m)."""

    alpha: float
    s: float
    p: int
    series: Tuple[float, ...]

    @property
    def rho(self) -> Tuple[float, ...]:
        """rho_p, rho_{p+1}, ..., rho_m."""
        return self.series[self.p:]

    def value(self, ell: int) -> float:
        if not 0 <= ell < len(self.series):
            raise IndexError(f"rho_{ell} nicht berechnet (m={len(self.series) - 1})")
        return self.series[ell]


def expansion_coefficients(order: OrderLike, s: float, p: int, m: int,
                           terms: int = None) -> ExpansionCoefficients:
    """
    Entwicklungskoeffizienten rho_0..rho_m per formaler Reihenarithmetik.

    Args:
        order: Ableitungsordnung
        s: Shift-Parameter
        p: Generatorordnung (1..4)
        m: höchster gewünschter Index (m >= p)
        terms: Länge der intern abgeschnittenen Reihen (Standard m+1)

    Returns:
        ExpansionCoefficients
    """
    if p not in (1, 2, 3, 4):
        raise ValueError(f"p muss in 1..4 liegen, nicht {p}")
    if m < p:
        raise ValueError(f"m={m} muss >= p={p} sein")
    n = m + 1 if terms is None else int(terms)
    if n < m + 1:
        raise ValueError(
            f"Reihenlänge {n} reicht nicht für Koeffizienten bis z^{m}"
        )
    gen = explicit_generator(p, s, order)
    series = _expansion_series(gen.alpha, gen.s, gen.coeffs, n - 1)[:m + 1]
    return ExpansionCoefficients(gen.alpha, gen.s, p, tuple(float(v) for v in series))


def closed_form_rho(order: OrderLike, s: float, ell: int) -> float:
    """Geschlossene Form von rho_2 und rho_3 der p=2-Familie."""
    a = as_order(order).alpha
    if ell == 2:
        return -(2 * a ** 2 + 6 * a * s + 3 * s ** 2) / (6 * a)
    if ell == 3:
        return (3 * a ** 3 + 11 * a ** 2 * s + 12 * a * s ** 2 + 4 * s ** 3) / (12 * a ** 2)
    raise ValueError(f"Geschlossene Form nur für rho_2 und rho_3, nicht rho_{ell}")


# ---------------------------------------------------------------------------
# Koeffizienten-Tabellen
# ---------------------------------------------------------------------------

def _recursion_data(p: int, s: float, a: float) -> Tuple[float, float, Tuple[float, ...]]:
    """(D, Normierung, b_1..b_p) für  l*D*mu_l = sum_k b_k (k a - l + k) mu_{l-k}."""
    if p == 1:
        return 1.0, 1.0, (-1.0,)
    if p == 2:
        return 3 * a + 2 * s, 2 * a, (-4 * (a + s), a + 2 * s)
    if p == 3:
        return (
            11 * a ** 2 + 12 * a * s + 3 * s ** 2,
            6 * a ** 2,
            (
                -3 * (6 * a ** 2 + 10 * a * s + 3 * s ** 2),
                3 * (3 * a ** 2 + 8 * a * s + 3 * s ** 2),
                -(2 * a ** 2 + 6 * a * s + 3 * s ** 2),
            ),
        )
    if p == 4:
        return (
            25 * a ** 3 + 35 * a ** 2 * s + 15 * a * s ** 2 + 2 * s ** 3,
            12 * a ** 3,
            (
                -2 * (24 * a ** 3 + 52 * a ** 2 * s + 27 * a * s ** 2 + 4 * s ** 3),
                6 * (6 * a ** 3 + 19 * a ** 2 * s + 12 * a * s ** 2 + 2 * s ** 3),
                -2 * (8 * a ** 3 + 28 * a ** 2 * s + 21 * a * s ** 2 + 4 * s ** 3),
                3 * a ** 3 + 11 * a ** 2 * s + 9 * a * s ** 2 + 2 * s ** 3,
            ),
        )
    raise ValueError(f"Rekursion nur für p in 1..4, nicht {p}")


def _recursion_values(p: int, s: float, alpha: float, n: int) -> np.ndarray:
    if p == 1:
        return _grunwald(alpha, n - 1)
    D, norm, b = _recursion_data(p, s, alpha)
    if D / norm <= 0.0:
        raise ValueError(f"Generatorwert d_1 = {D / norm} <= 0 für p={p}, s={s}, alpha={alpha}")
    mu = np.zeros(n)
    mu[0] = _real_power(D / norm, alpha)
    for ell in range(1, n):
        acc = 0.0
        for k in range(1, min(ell, p) + 1):
            acc += b[k - 1] * (k * alpha - ell + k) * mu[ell - k]
        mu[ell] = acc / (D * ell)
    return mu


def _convolution_values(gen: GeneratorPolynomial, n: int) -> np.ndarray:
    w = _grunwald(gen.alpha, n - 1)
    if gen.p == 1:
        return w
    d1 = gen.leading_value
    scale = _real_power(d1, gen.alpha)
    if gen.p == 2:
        d2 = gen.coeffs[1] / d1
        return scale * np.convolve(w, w * d2 ** np.arange(n))[:n]

    # Q(z) = d1 * prod (1 - z/r); jeder Faktor ist eine skalierte Grünwald-Reihe
    q = np.trim_zeros(gen.reduced_coefficients(), 'b')
    series = np.zeros(n, dtype=complex)
    series[0] = 1.0
    for root in P.polyroots(q):
        series = np.convolve(series, w * (1.0 / root) ** np.arange(n))[:n]
    return scale * np.convolve(w, series.real)[:n]


def _series_values(gen: GeneratorPolynomial, n: int) -> np.ndarray:
    return series_power(gen.base_coefficients(), gen.alpha, n)


@lru_cache(maxsize=256)
def _table_values(p: int, s: float, alpha: float, n: int, method: str) -> np.ndarray:
    if method == 'recursion':
        values = _recursion_values(p, s, alpha, n)
    else:
        gen = explicit_generator(p, s, alpha)
        if method == 'convolution':
            values = _convolution_values(gen, n)
        else:
            values = _series_values(gen, n)
    values = np.array(values, dtype=float)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class CoefficientTable:
    """Endlicher Präfix einer Koeffizientenfamilie mit ihrem Generator."""

    family: str
    alpha: float
    s: float
    p: int
    values: np.ndarray
    generator: GeneratorPolynomial
    method: str = 'recursion'

    def __len__(self) -> int:
        return int(self.values.size)

    def __getitem__(self, index):
        return self.values[index]

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.values)

    def tail_ratio(self, ell: int) -> float:
        """values[ell] * ell^(alpha+1) relativ zur Asymptotik-Konstante."""
        return float(self.values[ell] * ell ** (self.alpha + 1.0) / tail_constant(self.alpha))


def resolve_family(family: str, s: float = 0.0, p: int = 2) -> Tuple[str, int, float]:
    """Normalisiert Familienname, Ordnung p und Shift s."""
    key = FAMILY_ALIASES.get(str(family).lower())
    if key is None:
        raise ValueError(f"Unbekannte Familie: {family}")
    if key == 'grunwald':
        return key, 1, 0.0
    if key == 'kappa2':
        return key, 2, -1.0
    if key == 'kappa2_tilde':
        return key, 2, 1.0
    if p not in (1, 2, 3, 4):
        raise ValueError(f"Familie mu unterstützt p in 1..4, nicht {p}")
    return key, int(p), float(s)


def coefficient_table(family: str, order: OrderLike, n: int, s: float = 0.0, p: int = 2,
                      method: str = 'recursion') -> CoefficientTable:
    """
    Erste n Koeffizienten einer Familie.

    Args:
        family: grunwald | kappa2 | kappa2_tilde (kappa2t) | mu
        order: Ableitungsordnung
        n: Anzahl Koeffizienten (>= 1)
        s: Shift (nur mu; kappa2 hat s=-1, kappa2_tilde s=+1)
        p: Generatorordnung (nur mu)
        method: recursion | convolution | series_oracle (Kurzformen rec, conv, series)

    Returns:
        CoefficientTable
    """
    order = as_order(order)
    key, p, s = resolve_family(family, s, p)
    method_key = METHOD_ALIASES.get(str(method).lower())
    if method_key is None:
        raise ValueError(f"Unbekannte Methode: {method}")
    if n < 1:
        raise ValueError(f"n muss >= 1 sein, nicht {n}")

    values = _table_values(p, s, order.alpha, int(n), method_key)
    generator = explicit_generator(p, s, order)
    return CoefficientTable(key, order.alpha, s, p, values, generator, method_key)


# ---------------------------------------------------------------------------
# Eigenschaften
# ---------------------------------------------------------------------------

def tail_constant(order: OrderLike) -> float:
    """Asymptotik-Konstante -sin(pi alpha) Gamma(alpha+1) / pi der Koeffizienten."""
    alpha = as_order(order).alpha
    return -math.sin(math.pi * alpha) * float(special.gamma(alpha + 1.0)) / math.pi


def alpha1_star_closed_form() -> float:
    """Nullstelle von 8a^3 - 21a^2 + 16a - 4 in (1, 2), Vorzeichenwechsel von kappa_2."""
    r = (621.0 + 48.0 * math.sqrt(87.0)) ** (1.0 / 3.0)
    return 7.0 / 8.0 + r / 24.0 + 19.0 / (8.0 * r)


def locate_sign_change(family: str, index: int, lo: float = 1.05, hi: float = 1.95,
                       s: float = 0.0, p: int = 2, xtol: float = 1e-8) -> float:
    """
    Bestimmt per Bisektion das alpha, an dem ein Koeffizient das Vorzeichen wechselt.

    Args:
        family: Koeffizientenfamilie
        index: Index l des Koeffizienten
        lo, hi: Klammer in alpha mit verschiedenen Vorzeichen

    Returns:
        alpha des Vorzeichenwechsels
    """
    def value(alpha: float) -> float:
        return float(coefficient_table(family, alpha, index + 1, s=s, p=p)[index])

    f_lo, f_hi = value(lo), value(hi)
    if f_lo * f_hi > 0:
        raise ValueError(
            f"Kein Vorzeichenwechsel von {family}[{index}] in [{lo}, {hi}]"
        )
    root = optimize.bisect(value, lo, hi, xtol=xtol)
    logger.debug(f"Vorzeichenwechsel {family}[{index}] bei alpha={root:.6f}")
    return float(root)


def sign_pattern(table: CoefficientTable, threshold: float = 1e-13) -> np.ndarray:
    """Vorzeichen je Koeffizient: +1 (>= -threshold), -1 sonst."""
    return np.where(table.values >= -threshold, 1, -1)
