#!/usr/bin/env python3
"""
Kompaktes Crank-Nicolson-Verfahren in 1D
========================================

Löst du/dt = -u + K * Riesz(u) + f auf (0, L) x (0, T] mit homogenen
Randwerten. Raumdiskretisierung: kompakter Operator L (Matrix C) und
kappa-Summen (Matrix D), dritte Ordnung; Zeit: Crank-Nicolson mit
Quellterm am Halbschritt.

Die Systemmatrix A+ ist zeitunabhängig und wird einmal per Cholesky
faktorisiert.

Autor: [Ihr Name]
Datum: Oktober 2026
Version: 1.0.0
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Union

import numpy as np
from scipy import linalg

from modules.analytic import get_example
from modules.coefficients import FractionalOrder, OrderLike, as_order
from modules.exceptions import NumericalFailure
from modules.operators import (
    DEFAULT_DENSE_CAP,
    CompactSpec,
    Field1D,
    Grid1D,
    OperatorMatrices,
    build_matrices,
    compact_weight,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Problem1D:
    """Reaktions-Dispersions-Problem mit Quelle f(x, t) und Anfangswert u0(x)."""

    order: FractionalOrder
    K_alpha: float
    f: Callable[[np.ndarray, float], np.ndarray]
    u0: Callable[[np.ndarray], np.ndarray]
    L: float = 1.0
    T: float = 1.0
    exact: Optional[Callable[[np.ndarray, float], np.ndarray]] = None

    def __post_init__(self):
        object.__setattr__(self, 'order', as_order(self.order))
        if self.K_alpha <= 0:
            raise ValueError(f"K_alpha muss positiv sein, nicht {self.K_alpha}")
        if self.L <= 0 or self.T <= 0:
            raise ValueError(f"L und T müssen positiv sein (L={self.L}, T={self.T})")
        ends = np.asarray(self.u0(np.array([0.0, self.L])), dtype=float)
        if np.any(np.abs(ends) > 1e-12):
            raise ValueError(f"Anfangswert verletzt homogene Randbedingung: {ends}")

    @classmethod
    def from_example(cls, order: OrderLike, example: str = 'ex2') -> 'Problem1D':
        ex = get_example(example)
        if ex.dimension != 1:
            raise ValueError(f"{ex.name} ist kein 1D-Beispiel")
        order = as_order(order)
        return cls(
            order=order,
            K_alpha=ex.diffusion[0],
            f=lambda x, t: ex.source((order,), x, t),
            u0=lambda x: ex.exact(x, 0.0),
            L=ex.profile.length,
            T=ex.T,
            exact=lambda x, t: ex.exact(x, t),
        )

    @classmethod
    def homogeneous(cls, order: OrderLike, u0: Callable[[np.ndarray], np.ndarray],
                    K_alpha: float = 1.0, L: float = 1.0, T: float = 1.0) -> 'Problem1D':
        """Problem ohne Quelle, etwa für Energie-Diagnostik."""
        return cls(as_order(order), K_alpha, lambda x, t: np.zeros_like(x), u0, L, T)


@dataclass(eq=False)
class Scheme1D:
    """Assembliertes Verfahren: A+ U^{k+1} = A- U^k + tau * L F^{k+1/2}."""

    M: int
    N: int
    tau: float
    grid: Grid1D
    matrices: OperatorMatrices
    A_plus: np.ndarray
    A_minus: np.ndarray
    factor: Any
    spec: CompactSpec
    stats: Dict[str, float] = field(default_factory=dict)

    @property
    def h(self) -> float:
        return self.grid.h

    @property
    def C(self) -> np.ndarray:
        return self.matrices.C

    @property
    def final_time(self) -> float:
        return self.N * self.tau

    def energy(self, U: np.ndarray) -> float:
        """C-gewichtete Energie (C U, U) eines inneren Vektors."""
        return float(U @ (self.matrices.C @ U))

    def step(self, U: np.ndarray, load: np.ndarray) -> np.ndarray:
        return linalg.cho_solve(self.factor, self.A_minus @ U + self.tau * load)


def assemble1d(problem: Problem1D, M: int, N: int, tau: Optional[float] = None,
               cap: int = DEFAULT_DENSE_CAP) -> Scheme1D:
    """
    Baut Matrizen und Faktorisierung.

    Args:
        problem: Problemdaten
        M: Raumschritte (h = L/M)
        N: Zeitschritte
        tau: Zeitschritt; Standard T/N
        cap: Dichte-Grenze für M-1

    Returns:
        Scheme1D
    """
    start = time.time()
    if int(N) != N or N < 1:
        raise ValueError(f"N muss eine ganze Zahl >= 1 sein, nicht {N}")
    tau = problem.T / N if tau is None else float(tau)
    if tau <= 0:
        raise ValueError(f"tau muss positiv sein, nicht {tau}")

    order = problem.order
    grid = Grid1D(0.0, problem.L, M)
    matrices = build_matrices(order, M, 'I', cap)
    coupling = tau * problem.K_alpha / (2.0 * grid.h ** order.alpha)
    A_plus = (1.0 + tau / 2.0) * matrices.C - coupling * matrices.D
    A_minus = (1.0 - tau / 2.0) * matrices.C + coupling * matrices.D

    try:
        factor = linalg.cho_factor(A_plus)
    except linalg.LinAlgError as exc:
        raise NumericalFailure(f"Faktorisierung von A+ fehlgeschlagen (M={M}): {exc}") from exc

    elapsed = time.time() - start
    logger.debug(f"1D-Schema assembliert: M={M}, N={N}, tau={tau:.3e} ({elapsed:.3f}s)")
    return Scheme1D(
        M=int(M), N=int(N), tau=tau, grid=grid, matrices=matrices,
        A_plus=A_plus, A_minus=A_minus, factor=factor,
        spec=CompactSpec.L(order), stats={'assembly_time': elapsed},
    )


def run1d(scheme: Scheme1D, problem: Problem1D,
          history: Optional[List[np.ndarray]] = None,
          energies: Optional[List[float]] = None) -> Field1D:
    """
    Zeitschleife bis t_N = N * tau.

    Args:
        scheme: assembliertes Verfahren
        problem: Problemdaten (Quelle, Anfangswert)
        history: optionale Liste, erhält U^0..U^N (innere Werte)
        energies: optionale Liste, erhält (C U^k, U^k) für k = 0..N

    Returns:
        Endfeld U^N
    """
    start = time.time()
    nodes = scheme.grid.nodes
    U = Field1D.from_function(scheme.grid, problem.u0).interior.copy()
    if history is not None:
        history.append(U.copy())
    if energies is not None:
        energies.append(scheme.energy(U))

    for k in range(scheme.N):
        t_half = (k + 0.5) * scheme.tau
        F = np.asarray(problem.f(nodes, t_half), dtype=float)
        U = scheme.step(U, compact_weight(F, scheme.spec))
        if history is not None:
            history.append(U.copy())
        if energies is not None:
            energies.append(scheme.energy(U))

    scheme.stats['run_time'] = time.time() - start
    return Field1D.from_interior(scheme.grid, U)


def error_norms(numeric: Union[Field1D, np.ndarray], exact: Union[Field1D, np.ndarray],
                h: Optional[float] = None) -> Dict[str, float]:
    """
    Maximum- und diskrete L2-Norm des Fehlers.

    Returns:
        {'max_abs': max |e_j|, 'discrete_L2': sqrt(h * sum e_j^2)}
    """
    if isinstance(numeric, Field1D) and isinstance(exact, Field1D) and numeric.grid != exact.grid:
        raise ValueError("Felder liegen auf verschiedenen Gittern")
    if h is None:
        if not isinstance(numeric, Field1D):
            raise ValueError("Schrittweite h fehlt für Array-Eingaben")
        h = numeric.grid.h
    num = numeric.values if isinstance(numeric, Field1D) else np.asarray(numeric, dtype=float)
    ref = exact.values if isinstance(exact, Field1D) else np.asarray(exact, dtype=float)
    if num.shape != ref.shape:
        raise ValueError(f"Gitter passen nicht zusammen: {num.shape} vs {ref.shape}")
    e = num - ref
    return {
        'max_abs': float(np.max(np.abs(e))) if e.size else 0.0,
        'discrete_L2': float(np.sqrt(h * np.sum(e ** 2))),
    }


def exact_field(scheme: Scheme1D, problem: Problem1D) -> Field1D:
    """Exakte Lösung auf dem Gitter zur Endzeit N * tau."""
    if problem.exact is None:
        raise ValueError("Problem hat keine exakte Lösung")
    return Field1D.from_function(scheme.grid, lambda x: problem.exact(x, scheme.final_time))


def perturbation_bound_1d() -> float:
    """Stabilitätskonstante sqrt(5(4 sqrt 6 + 9))/5 = sqrt(1/(4 sqrt 6/3 - 3)), mit min eig C >= 4 sqrt 6/3 - 3."""
    return math.sqrt(5.0 * (4.0 * math.sqrt(6.0) + 9.0)) / 5.0
