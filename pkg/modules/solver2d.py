#!/usr/bin/env python3
"""
Kompaktes Crank-Nicolson-Verfahren in 2D
========================================

Löst du/dt = -u + K_a Riesz_x(u) + K_b Riesz_y(u) + f auf
(0, La) x (0, Lb) x (0, T] mit homogenen Randwerten.

Unbekannte sind x-schnell nummeriert: Feldwerte liegen als Array [j, i]
(j in y, i in x) vor und werden zeilenweise abgeflacht. Damit gilt
T = Cb ⊗ Ca und S = Ka/ha^alpha Cb ⊗ Da + Kb/hb^beta Db ⊗ Ca.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.0.0
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from scipy import linalg

from modules.analytic import get_example
from modules.coefficients import FractionalOrder, OrderLike, as_order
from modules.exceptions import NumericalFailure
from modules.operators import (
    DEFAULT_DENSE_CAP,
    CompactSpec,
    Grid1D,
    KroneckerMatrices,
    build_2d,
    compact_weight,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Problem2D:
    """2D-Problem mit Quelle f(x, y, t) und Anfangswert u0(x, y)."""

    order_a: FractionalOrder
    order_b: FractionalOrder
    K_a: float
    K_b: float
    f: Callable[[np.ndarray, np.ndarray, float], np.ndarray]
    u0: Callable[[np.ndarray, np.ndarray], np.ndarray]
    La: float = 1.0
    Lb: float = 1.0
    T: float = 1.0
    exact: Optional[Callable[[np.ndarray, np.ndarray, float], np.ndarray]] = None

    def __post_init__(self):
        object.__setattr__(self, 'order_a', as_order(self.order_a))
        object.__setattr__(self, 'order_b', as_order(self.order_b))
        if self.K_a <= 0 or self.K_b <= 0:
            raise ValueError(f"K_a, K_b müssen positiv sein (K_a={self.K_a}, K_b={self.K_b})")
        if self.La <= 0 or self.Lb <= 0 or self.T <= 0:
            raise ValueError("La, Lb und T müssen positiv sein")
        xs, ys = np.linspace(0.0, self.La, 9), np.linspace(0.0, self.Lb, 9)
        edges = np.concatenate([
            np.ravel(self.u0(xs, np.zeros_like(xs))),
            np.ravel(self.u0(xs, np.full_like(xs, self.Lb))),
            np.ravel(self.u0(np.zeros_like(ys), ys)),
            np.ravel(self.u0(np.full_like(ys, self.La), ys)),
        ]).astype(float)
        if np.any(np.abs(edges) > 1e-12):
            raise ValueError(f"Anfangswert verletzt homogene Randbedingung (max {np.max(np.abs(edges)):.3e})")

    @classmethod
    def from_example(cls, order_a: OrderLike, order_b: OrderLike, example: str = 'ex3') -> 'Problem2D':
        ex = get_example(example)
        if ex.dimension != 2:
            raise ValueError(f"{ex.name} ist kein 2D-Beispiel")
        orders = (as_order(order_a), as_order(order_b))
        return cls(
            order_a=orders[0], order_b=orders[1],
            K_a=ex.diffusion[0], K_b=ex.diffusion[1],
            f=lambda x, y, t: ex.source(orders, (x, y), t),
            u0=lambda x, y: ex.exact((x, y), 0.0),
            La=ex.profile.length, Lb=ex.profile.length, T=ex.T,
            exact=lambda x, y, t: ex.exact((x, y), t),
        )

    @classmethod
    def homogeneous(cls, order_a: OrderLike, order_b: OrderLike,
                    u0: Callable[[np.ndarray, np.ndarray], np.ndarray],
                    K_a: float = 1.0, K_b: float = 1.0, T: float = 1.0) -> 'Problem2D':
        return cls(as_order(order_a), as_order(order_b), K_a, K_b,
                   lambda x, y, t: np.zeros(np.broadcast(x, y).shape), u0, T=T)


@dataclass(frozen=True, eq=False)
class Field2D:
    """Gitterfunktion u(x_i, y_j) als Array [j, i] der Form (Mb+1, Ma+1)."""

    grid_x: Grid1D
    grid_y: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        shape = (self.grid_y.M + 1, self.grid_x.M + 1)
        if values.shape != shape:
            raise ValueError(f"Feld braucht Form {shape}, erhalten: {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_function(cls, grid_x: Grid1D, grid_y: Grid1D,
                      func: Callable[[np.ndarray, np.ndarray], np.ndarray]) -> 'Field2D':
        X, Y = np.meshgrid(grid_x.nodes, grid_y.nodes)
        return cls(grid_x, grid_y, np.asarray(func(X, Y), dtype=float))

    @classmethod
    def from_interior(cls, grid_x: Grid1D, grid_y: Grid1D, interior: np.ndarray) -> 'Field2D':
        values = np.zeros((grid_y.M + 1, grid_x.M + 1))
        values[1:-1, 1:-1] = np.reshape(interior, (grid_y.M - 1, grid_x.M - 1))
        return cls(grid_x, grid_y, values)

    @property
    def interior(self) -> np.ndarray:
        """Innere Werte, x-schnell abgeflacht."""
        return self.values[1:-1, 1:-1].ravel()


@dataclass(eq=False)
class Scheme2D:
    """Assembliertes 2D-Verfahren: A+ U^{k+1} = A- U^k + tau * T F^{k+1/2}."""

    Ma: int
    Mb: int
    N: int
    tau: float
    grid_x: Grid1D
    grid_y: Grid1D
    matrices: KroneckerMatrices
    A_plus: np.ndarray
    A_minus: np.ndarray
    factor: Any
    spec_x: CompactSpec
    spec_y: CompactSpec
    stats: Dict[str, float] = field(default_factory=dict)

    @property
    def T_mat(self) -> np.ndarray:
        return self.matrices.T

    @property
    def S_mat(self) -> np.ndarray:
        return self.matrices.S

    @property
    def final_time(self) -> float:
        return self.N * self.tau

    def energy(self, U: np.ndarray) -> float:
        """T-gewichtete Energie (T U, U)."""
        return float(U @ (self.matrices.T @ U))

    def source_load(self, F: np.ndarray) -> np.ndarray:
        """Kompakte Gewichtung der vollen Quellwerte F[j, i]: erst in x (alle Zeilen), dann in y."""
        weighted = compact_weight(F, self.spec_x, axis=1)
        return compact_weight(weighted, self.spec_y, axis=0).ravel()

    def step(self, U: np.ndarray, load: np.ndarray) -> np.ndarray:
        return linalg.cho_solve(self.factor, self.A_minus @ U + self.tau * load)


def assemble2d(problem: Problem2D, Ma: int, Mb: int, N: int, tau: Optional[float] = None,
               cap: int = DEFAULT_DENSE_CAP) -> Scheme2D:
    """Baut T, S, A+/A- und die Cholesky-Faktorisierung von A+."""
    start = time.time()
    if int(N) != N or N < 1:
        raise ValueError(f"N muss eine ganze Zahl >= 1 sein, nicht {N}")
    tau = problem.T / N if tau is None else float(tau)
    if tau <= 0:
        raise ValueError(f"tau muss positiv sein, nicht {tau}")

    grid_x = Grid1D(0.0, problem.La, Ma)
    grid_y = Grid1D(0.0, problem.Lb, Mb)
    matrices = build_2d(problem.order_a, problem.order_b, Ma, Mb,
                        K_a=problem.K_a, K_b=problem.K_b,
                        La=problem.La, Lb=problem.Lb, cap=cap)
    A_plus = (1.0 + tau / 2.0) * matrices.T - (tau / 2.0) * matrices.S
    A_minus = (1.0 - tau / 2.0) * matrices.T + (tau / 2.0) * matrices.S

    try:
        factor = linalg.cho_factor(A_plus)
    except linalg.LinAlgError as exc:
        raise NumericalFailure(
            f"Faktorisierung von A+ fehlgeschlagen (Ma={Ma}, Mb={Mb}): {exc}"
        ) from exc

    elapsed = time.time() - start
    logger.debug(f"2D-Schema assembliert: {A_plus.shape[0]} Unbekannte, N={N} ({elapsed:.3f}s)")
    return Scheme2D(
        Ma=int(Ma), Mb=int(Mb), N=int(N), tau=tau,
        grid_x=grid_x, grid_y=grid_y, matrices=matrices,
        A_plus=A_plus, A_minus=A_minus, factor=factor,
        spec_x=CompactSpec.L(problem.order_a), spec_y=CompactSpec.L(problem.order_b),
        stats={'assembly_time': elapsed},
    )


def run2d(scheme: Scheme2D, problem: Problem2D,
          history: Optional[List[np.ndarray]] = None,
          energies: Optional[List[float]] = None) -> Field2D:
    """Zeitschleife bis t_N = N * tau; optional mit Verlauf und T-Energien."""
    start = time.time()
    X, Y = np.meshgrid(scheme.grid_x.nodes, scheme.grid_y.nodes)
    U = Field2D.from_function(scheme.grid_x, scheme.grid_y, problem.u0).interior.copy()
    if history is not None:
        history.append(U.copy())
    if energies is not None:
        energies.append(scheme.energy(U))

    for k in range(scheme.N):
        t_half = (k + 0.5) * scheme.tau
        F = np.asarray(problem.f(X, Y, t_half), dtype=float)
        U = scheme.step(U, scheme.source_load(F))
        if history is not None:
            history.append(U.copy())
        if energies is not None:
            energies.append(scheme.energy(U))

    scheme.stats['run_time'] = time.time() - start
    return Field2D.from_interior(scheme.grid_x, scheme.grid_y, U)


def exact_field_2d(scheme: Scheme2D, problem: Problem2D) -> Field2D:
    """Exakte Lösung auf dem Gitter zur Endzeit N * tau."""
    if problem.exact is None:
        raise ValueError("Problem hat keine exakte Lösung")
    t = scheme.final_time
    return Field2D.from_function(scheme.grid_x, scheme.grid_y, lambda x, y: problem.exact(x, y, t))


def max_error_2d(numeric: Field2D, exact: Field2D) -> float:
    if numeric.values.shape != exact.values.shape:
        raise ValueError("Felder liegen auf verschiedenen Gittern")
    return float(np.max(np.abs(numeric.values - exact.values)))


def perturbation_bound_2d() -> float:
    """
    Stabilitätskonstante (4 sqrt 6 + 9)/5 = 1/(4 sqrt 6/3 - 3).

    Kehrwert der unteren Schranke von min eig C je Richtung; für T = C_b x C_a
    gilt min eig T >= (4 sqrt 6/3 - 3)^2 und max eig T <= 1.
    """
    return (4.0 * math.sqrt(6.0) + 9.0) / 5.0
