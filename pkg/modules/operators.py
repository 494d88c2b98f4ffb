#!/usr/bin/env python3
"""
Diskrete fraktionale Operatoren
===============================

Gitter und Gitterfunktionen, die abgeschnittenen links-/rechtsseitigen
Summen der Riesz-Approximation, die kompakten Operatoren (L, L-tilde,
J_{p,s}, H_{p,s1,s2}), die Formeln dritter und vierter Ordnung für die
Riesz-Ableitung, die verschobene Auswertung an beliebigen Punkten sowie die
dichten Matrizen E, C, D und ihre Kronecker-Formen in 2D.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.0.0
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy import linalg, special

from modules.coefficients import (
    CoefficientTable,
    OrderLike,
    as_order,
    closed_form_rho,
    coefficient_table,
    expansion_coefficients,
)
from modules.exceptions import NumericalFailure, check_dense_cap

logger = logging.getLogger(__name__)

DEFAULT_DENSE_CAP = 4096

FamilyLike = Union[str, Tuple[int, float]]


# ---------------------------------------------------------------------------
# Gitter
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Grid1D:
    """Äquidistantes Gitter x_j = a + j*h, j = 0..M."""

    a: float
    b: float
    M: int

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError(f"Ungültiges Intervall [{self.a}, {self.b}]")
        if int(self.M) != self.M or self.M < 4:
            raise ValueError(f"M muss eine ganze Zahl >= 4 sein, nicht {self.M}")
        object.__setattr__(self, 'M', int(self.M))

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.M

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(self.a, self.b, self.M + 1)

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]


@dataclass(frozen=True, eq=False)
class Field1D:
    """Gitterfunktion u(x_j); bei ``homogeneous`` gilt u_0 = u_M = 0."""

    grid: Grid1D
    values: np.ndarray
    homogeneous: bool = True

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.M + 1,):
            raise ValueError(
                f"Feld braucht {self.grid.M + 1} Werte, erhalten: {values.shape}"
            )
        if self.homogeneous and (values[0] != 0.0 or values[-1] != 0.0):
            raise ValueError(
                f"Randwerte {values[0]}, {values[-1]} verletzen homogene Randbedingung"
            )
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_function(cls, grid: Grid1D, func: Callable[[np.ndarray], np.ndarray],
                      homogeneous: bool = True, boundary_tol: float = 1e-12) -> 'Field1D':
        """Tastet ``func`` auf den Knoten ab; kleine Randreste werden auf 0 gesetzt."""
        values = np.array(func(grid.nodes), dtype=float)
        if homogeneous:
            for idx in (0, -1):
                if abs(values[idx]) > boundary_tol:
                    raise ValueError(
                        f"Funktion verschwindet nicht am Rand: u={values[idx]}"
                    )
                values[idx] = 0.0
        return cls(grid, values, homogeneous)

    @classmethod
    def from_interior(cls, grid: Grid1D, interior: np.ndarray) -> 'Field1D':
        values = np.zeros(grid.M + 1)
        values[1:-1] = interior
        return cls(grid, values, True)

    @property
    def interior(self) -> np.ndarray:
        return self.values[1:-1]


def family_generator(family: FamilyLike) -> Tuple[int, float]:
    """
    Übersetzt eine Summen-Familie in (p, s).

    'I' (kappa) entspricht (2, -1), 'II' (kappa-tilde) entspricht (2, +1);
    ein Tupel (p, s) wählt den allgemeinen Generator G_{p,s}.
    """
    if isinstance(family, tuple):
        if len(family) != 2:
            raise ValueError(f"Generator-Familie braucht (p, s), nicht {family}")
        p, s = family
        if p not in (1, 2, 3, 4):
            raise ValueError(f"p muss in 1..4 liegen, nicht {p}")
        return int(p), float(s)
    key = str(family).lower()
    if key in ('i', 'kappa2', 'kappa'):
        return 2, -1.0
    if key in ('ii', 'kappa2_tilde', 'kappa2t'):
        return 2, 1.0
    raise ValueError(f"Unbekannte Familie: {family}")


def _table_for(order, p: int, s: float, n: int) -> CoefficientTable:
    return coefficient_table('mu', order, n, s=s, p=p)


def riesz_apply(u: Field1D, order: OrderLike, family: FamilyLike = 'I',
                table: Optional[CoefficientTable] = None) -> np.ndarray:
    """
    Abgeschnittene Riesz-Summe an allen inneren Knoten.

    Links: sum_l mu_l u_{j-l-s}, rechts: sum_l mu_l u_{j+l+s}, jeweils nur über
    Indizes in [0, M]. Ergebnis: prefactor * (links + rechts) / h^alpha.

    Args:
        u: Feld mit homogenen Randwerten
        order: Ableitungsordnung
        family: 'I', 'II' oder (p, s) mit ganzzahligem s
        table: optionale, bereits berechnete Koeffizienten

    Returns:
        Array der Länge M-1
    """
    order = as_order(order)
    if not u.homogeneous:
        raise ValueError("Riesz-Summen benötigen ein Feld mit homogenen Randwerten")
    p, s = family_generator(family)
    if not float(s).is_integer():
        raise ValueError(f"Gittersummen brauchen ganzzahligen Shift, nicht s={s}")
    shift = int(s)
    M = u.grid.M
    needed = max(M - shift, 1)
    if table is None:
        table = _table_for(order, p, s, needed)
    if len(table) < needed:
        raise ValueError(
            f"Koeffiziententabelle zu kurz: {len(table)} < {needed}"
        )

    mu = np.asarray(table.values)
    v = u.values
    v_rev = v[::-1]
    out = np.empty(M - 1)
    for j in range(1, M):
        total = 0.0
        # links: Index j-s-l in [0, M]
        top = j - shift
        lo, hi = max(0, top - M), min(top, len(mu) - 1)
        if hi >= lo:
            total += np.dot(mu[lo:hi + 1], v_rev[M - top + lo:M - top + hi + 1])
        # rechts: Index j+s+l in [0, M]
        base = j + shift
        lo, hi = max(0, -base), min(M - base, len(mu) - 1)
        if hi >= lo:
            total += np.dot(mu[lo:hi + 1], v[base + lo:base + hi + 1])
        out[j - 1] = total
    return order.prefactor * out / u.grid.h ** order.alpha


# ---------------------------------------------------------------------------
# Kompakte Operatoren
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CompactSpec:
    """
    Kompakter Operator a0 + a1 * h^q * delta^q.

    ``q = 2`` für L, L-tilde, H; ``q = p`` für J_{p,s}.
    """

    kind: str
    a0: float
    a1: float
    q: int = 2

    @classmethod
    def L(cls, order: OrderLike) -> 'CompactSpec':
        return cls('L', 1.0, closed_form_rho(order, -1.0, 2))

    @classmethod
    def L_tilde(cls, order: OrderLike) -> 'CompactSpec':
        return cls('L_tilde', 1.0, closed_form_rho(order, 1.0, 2))

    @classmethod
    def J(cls, order: OrderLike, p: int, s: float) -> 'CompactSpec':
        rho = expansion_coefficients(order, s, p, p).value(p)
        return cls('J', 1.0, rho, p)

    @classmethod
    def H(cls, order: OrderLike, s1: float = -1.0, s2: float = 1.0) -> 'CompactSpec':
        """Vierte Ordnung: rho_3(s2) B_{2,s1} - rho_3(s1) B_{2,s2} eliminiert den h^3-Term."""
        if s1 == s2:
            raise ValueError(f"H braucht zwei verschiedene Shifts, nicht s1=s2={s1}")
        r2a, r3a = closed_form_rho(order, s1, 2), closed_form_rho(order, s1, 3)
        r2b, r3b = closed_form_rho(order, s2, 2), closed_form_rho(order, s2, 3)
        a0 = r3b - r3a
        if a0 == 0.0:
            raise ValueError(f"Entartete Kombination s1={s1}, s2={s2}: a0 = 0")
        return cls('H', a0, r2a * r3b - r2b * r3a, 2)

    def stencil(self) -> np.ndarray:
        """Gewichte (-1)^m C(q, m) von delta^q (ohne 1/h^q)."""
        m = np.arange(self.q + 1)
        return (-1.0) ** m * special.comb(self.q, m, exact=False)

    def apply_function(self, f: Callable[[np.ndarray], np.ndarray], x: float, h: float) -> float:
        """a0 f(x) + a1 h^q delta^q f(x) für eine auswertbare Funktion."""
        value = float(np.asarray(f(np.asarray([x], dtype=float)))[0])
        return self.a0 * value + self.a1 * h ** self.q * central_difference_p(f, self.q, x, h)


def compact_apply(u: Field1D, spec: CompactSpec) -> np.ndarray:
    """v_j = a0 u_j + a1 * (zentrierte q-te Differenz von u)_j an inneren Knoten."""
    if spec.q % 2:
        raise ValueError(f"Gitteranwendung nur für gerade Ordnung q, nicht {spec.q}")
    M = u.grid.M
    half = spec.q // 2
    padded = np.concatenate((np.zeros(half), u.values, np.zeros(half)))
    diff = np.zeros(M - 1)
    for m, weight in enumerate(spec.stencil()):
        shift = half - m
        diff += weight * padded[half + 1 + shift:half + M + shift]
    return spec.a0 * u.interior + spec.a1 * diff


def compact_weight(values: np.ndarray, spec: CompactSpec, axis: int = -1) -> np.ndarray:
    """
    Wendet a0 + a1*delta^2 entlang ``axis`` auf Werte inklusive Randknoten an.

    Die Randknoten gehen als Nachbarn ein; das Ergebnis ist entlang ``axis``
    um zwei Einträge kürzer.
    """
    if spec.q != 2:
        raise ValueError(f"compact_weight unterstützt nur q=2, nicht {spec.q}")
    v = np.moveaxis(np.asarray(values, dtype=float), axis, -1)
    centre = v[..., 1:-1]
    out = spec.a0 * centre + spec.a1 * (v[..., 2:] - 2.0 * centre + v[..., :-2])
    return np.moveaxis(out, -1, axis)


def compact_rhs(u: Field1D, order: OrderLike, formula: str, s1: float = -1.0,
                s2: float = 1.0) -> Tuple[CompactSpec, np.ndarray]:
    """
    Kompakter Operator und rechte Seite einer Formel.

    f7: (L, Summen der Familie I); f8: (L-tilde, Familie II);
    f9: (H, rho_3(s2) * Summe(2, s1) - rho_3(s1) * Summe(2, s2)).
    """
    order = as_order(order)
    key = str(formula).lower()
    if key == 'f7':
        return CompactSpec.L(order), riesz_apply(u, order, 'I')
    if key == 'f8':
        return CompactSpec.L_tilde(order), riesz_apply(u, order, 'II')
    if key == 'f9':
        spec = CompactSpec.H(order, s1, s2)
        r3a = closed_form_rho(order, s1, 3)
        r3b = closed_form_rho(order, s2, 3)
        rhs = r3b * riesz_apply(u, order, (2, s1)) - r3a * riesz_apply(u, order, (2, s2))
        return spec, rhs
    raise ValueError(f"Unbekannte Formel: {formula}")


def _banded_compact(spec: CompactSpec, n: int, extrapolate: bool) -> Tuple[Tuple[int, int], np.ndarray]:
    a0, a1 = spec.a0, spec.a1
    if not extrapolate:
        ab = np.zeros((3, n))
        ab[0, 1:] = a1
        ab[1, :] = a0 - 2 * a1
        ab[2, :-1] = a1
        return (1, 1), ab

    # d_0 = 3 d_1 - 3 d_2 + d_3 (analog am rechten Rand) in die erste/letzte Zeile
    dense = np.zeros((n, n))
    idx = np.arange(n)
    dense[idx, idx] = a0 - 2 * a1
    dense[idx[1:], idx[:-1]] = a1
    dense[idx[:-1], idx[1:]] = a1
    dense[0, :3] = (a0 + a1, -2 * a1, a1)
    dense[-1, -3:] = (a1, -2 * a1, a0 + a1)
    ab = np.zeros((5, n))
    for offset in range(-2, 3):
        diag = np.diagonal(dense, offset)
        if offset >= 0:
            ab[2 - offset, offset:] = diag
        else:
            ab[2 - offset, :offset] = diag
    return (2, 2), ab


def riesz_derivative_compact(u: Field1D, order: OrderLike, formula: str = 'f7',
                             s1: float = -1.0, s2: float = 1.0,
                             exact_boundary: Optional[Tuple[float, float]] = None) -> Field1D:
    """
    Riesz-Ableitung dritter (f7, f8) oder vierter Ordnung (f9) durch Lösen des kompakten Systems.

    Args:
        u: Feld mit homogenen Randwerten
        order: Ableitungsordnung
        formula: f7 | f8 | f9
        s1, s2: Shifts für f9
        exact_boundary: exakte Ableitungswerte (d_0, d_M); sonst quadratische Extrapolation

    Returns:
        Field1D der Ableitung auf allen Knoten (nicht homogen)
    """
    spec, rhs = compact_rhs(u, order, formula, s1, s2)
    n = rhs.size
    rhs = rhs.copy()
    extrapolate = exact_boundary is None
    if not extrapolate:
        d0, dM = exact_boundary
        rhs[0] -= spec.a1 * d0
        rhs[-1] -= spec.a1 * dM

    bands, ab = _banded_compact(spec, n, extrapolate)
    try:
        interior = linalg.solve_banded(bands, ab, rhs)
    except (linalg.LinAlgError, ValueError) as exc:
        raise NumericalFailure(f"Kompaktes System singulär ({spec.kind}): {exc}") from exc
    if not np.all(np.isfinite(interior)):
        raise NumericalFailure(f"Kompaktes System liefert nicht-endliche Werte ({spec.kind})")

    values = np.empty(n + 2)
    values[1:-1] = interior
    if extrapolate:
        values[0] = 3 * interior[0] - 3 * interior[1] + interior[2]
        values[-1] = 3 * interior[-1] - 3 * interior[-2] + interior[-3]
    else:
        values[0], values[-1] = d0, dM
    return Field1D(u.grid, values, homogeneous=False)


# ---------------------------------------------------------------------------
# Punktweise Auswertung
# ---------------------------------------------------------------------------

def shifted_riesz(p: int, s: float, order: OrderLike, f: Callable[[np.ndarray], np.ndarray],
                  x: float, h: float, a: float = 0.0, b: float = 1.0) -> float:
    """
    Verschobene Riesz-Approximation der Ordnung p an einem beliebigen Punkt x.

    f wird außerhalb von [a, b] durch 0 fortgesetzt; Summanden mit Argument
    außerhalb des Intervalls entfallen.
    """
    if h <= 0:
        raise ValueError(f"Schrittweite h muss positiv sein, nicht {h}")
    if p not in (1, 2, 3, 4):
        raise ValueError(f"p muss in 1..4 liegen, nicht {p}")
    order = as_order(order)
    n = max(int(math.floor((b - a) / h - s + 1e-9)) + 2, 1)
    mu = _table_for(order, p, float(s), n).values
    ell = np.arange(n)
    tol = 1e-12 * (b - a)

    def _sum(args: np.ndarray) -> float:
        inside = (args >= a - tol) & (args <= b + tol)
        if not inside.any():
            return 0.0
        samples = np.asarray(f(np.clip(args[inside], a, b)), dtype=float)
        return float(np.dot(mu[inside], samples))

    left = _sum(x - (ell + s) * h)
    right = _sum(x + (ell + s) * h)
    return order.prefactor * (left + right) / h ** order.alpha


def central_difference_p(f: Callable[[np.ndarray], np.ndarray], p: int, x: float, h: float) -> float:
    """(1/h^p) sum_m (-1)^m C(p, m) f(x + (p/2 - m) h)."""
    if p < 1:
        raise ValueError(f"p muss >= 1 sein, nicht {p}")
    m = np.arange(p + 1)
    weights = (-1.0) ** m * special.comb(p, m)
    samples = np.asarray(f(x + (p / 2.0 - m) * h), dtype=float)
    return float(np.dot(weights, samples) / h ** p)


# ---------------------------------------------------------------------------
# Matrizen
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OperatorMatrices:
    """E (Toeplitz, eine Nebendiagonale oben), C = I + sigma*tridiag(1,-2,1), D = prefactor*(E + E^T)."""

    E: np.ndarray
    C: np.ndarray
    D: np.ndarray
    sigma: float
    alpha: float
    M: int

    def __post_init__(self):
        for name in ('E', 'C', 'D'):
            getattr(self, name).setflags(write=False)


def _toeplitz(mu: np.ndarray, n: int, shift: int) -> np.ndarray:
    col = np.array([mu[r - shift] if r - shift >= 0 else 0.0 for r in range(n)])
    row = np.array([mu[-c - shift] if -c - shift >= 0 else 0.0 for c in range(n)])
    return linalg.toeplitz(col, row)


def compact_matrix(sigma: float, n: int) -> np.ndarray:
    """I + sigma * tridiag(1, -2, 1) der Größe n."""
    C = np.eye(n) * (1.0 - 2.0 * sigma)
    idx = np.arange(n - 1)
    C[idx, idx + 1] = sigma
    C[idx + 1, idx] = sigma
    return C


def compact_eigenvalues(sigma: float, M: int) -> np.ndarray:
    """Eigenwerte von compact_matrix(sigma, M-1): 1 - 4 sigma sin^2(pi j / (2M)), j = 1..M-1."""
    j = np.arange(1, M)
    return 1.0 - 4.0 * sigma * np.sin(np.pi * j / (2.0 * M)) ** 2


def build_matrices(order: OrderLike, M: int, family: FamilyLike = 'I',
                   cap: int = DEFAULT_DENSE_CAP) -> OperatorMatrices:
    """
    Dichte Operator-Matrizen für M-1 innere Knoten.

    Es gilt riesz_apply(u) = D @ u_innen / h^alpha.
    """
    order = as_order(order)
    if int(M) != M or M < 4:
        raise ValueError(f"M muss eine ganze Zahl >= 4 sein, nicht {M}")
    p, s = family_generator(family)
    if p != 2 or not float(s).is_integer():
        raise ValueError(f"Matrizen nur für p=2 und ganzzahligen Shift, nicht {family}")
    n = int(M) - 1
    check_dense_cap(n, cap)

    shift = int(s)
    mu = _table_for(order, p, s, max(n - shift, 1)).values
    E = _toeplitz(mu, n, shift)
    D = order.prefactor * (E + E.T)
    sigma = closed_form_rho(order, s, 2)
    C = compact_matrix(sigma, n)
    logger.debug(f"Operator-Matrizen gebaut: alpha={order.alpha}, n={n}, Familie={family}")
    return OperatorMatrices(E, C, D, sigma, order.alpha, int(M))


@dataclass(frozen=True, eq=False)
class KroneckerMatrices:
    """2D-Matrizen bei x-schneller Nummerierung: T = Cb ⊗ Ca, S = Ka/ha^alpha Cb ⊗ Da + Kb/hb^beta Db ⊗ Ca."""

    T: np.ndarray
    S: np.ndarray
    x_matrices: OperatorMatrices
    y_matrices: OperatorMatrices
    ha: float
    hb: float

    def __post_init__(self):
        self.T.setflags(write=False)
        self.S.setflags(write=False)


def build_2d(order_a: OrderLike, order_b: OrderLike, Ma: int, Mb: int,
             K_a: float = 1.0, K_b: float = 1.0, La: float = 1.0, Lb: float = 1.0,
             cap: int = DEFAULT_DENSE_CAP) -> KroneckerMatrices:
    """Kronecker-Matrizen T und S für das Gitter (Ma-1) x (Mb-1)."""
    order_a, order_b = as_order(order_a), as_order(order_b)
    if Ma < 4 or Mb < 4:
        raise ValueError(f"Ma, Mb müssen >= 4 sein, nicht {Ma}, {Mb}")
    check_dense_cap((Ma - 1) * (Mb - 1), cap)

    mx = build_matrices(order_a, Ma, 'I', cap)
    my = build_matrices(order_b, Mb, 'I', cap)
    ha, hb = La / Ma, Lb / Mb
    T = np.kron(my.C, mx.C)
    S = (K_a / ha ** order_a.alpha) * np.kron(my.C, mx.D) \
        + (K_b / hb ** order_b.alpha) * np.kron(my.D, mx.C)
    logger.debug(f"2D-Matrizen gebaut: {T.shape[0]} Unbekannte")
    return KroneckerMatrices(T, S, mx, my, ha, hb)
