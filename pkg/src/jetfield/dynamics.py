"""Free Yang-Mills densities, Legendre duality, field-equation residuals and
the two discrete action functionals.

Packed-pair derivatives: for i < j, d/dPi^{ij}_mu is the derivative with
respect to the stored component, which counts both Pi^{ij} and -Pi^{ji} of
a full index sum. With this reading

    Pi^{ij}_mu = dL/dF^mu_{ij} = -F^nu_{pq} g^{ip} g^{jq} K_{mu nu} sqrt(g)
    F^mu_{ij}  = dH/dPi^{ij}_mu = -(1/sqrt g) Pi^{st}_lam g_{si} g_{tj} K^{lam mu}

are exact inverses, and H(Pi(F)) = -L(F) + 1/2 F^mu_{kr} Pi^{kr}_mu as a full sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebraData
from .connection import (
    Curvature,
    GaugeField,
    check_shapes,
    commutator_term,
    covariant_divergence_values,
    curvature,
    curvature_values,
)
from .lattice import Grid, LatticeField, grad_values, integrate, random_series

DET_FLOOR = 1e-8


class MetricError(ValueError):
    """Raised for degenerate or sign-changing base metrics."""


@dataclass(frozen=True)
class BaseMetric:
    grid: Grid
    g: np.ndarray
    ginv: np.ndarray
    sqrtg: np.ndarray
    sigmag: int

    @classmethod
    def from_values(cls, grid: Grid, g: np.ndarray) -> "BaseMetric":
        g = np.asarray(g, dtype=float)
        m = grid.m
        if g.shape != (m, m) + grid.N:
            raise MetricError(f"metric shape {g.shape} does not match {(m, m) + grid.N}")
        if not np.allclose(g, np.swapaxes(g, 0, 1), rtol=0.0, atol=1e-14):
            raise MetricError("metric is not symmetric")
        gm = np.moveaxis(g, (0, 1), (-2, -1))
        det = np.linalg.det(gm)
        worst = float(np.min(np.abs(det)))
        if worst < DET_FLOOR:
            raise MetricError(f"degenerate metric: min |det g| = {worst:.3e}")
        signs = np.unique(np.sign(det))
        if len(signs) != 1:
            raise MetricError("sign of det g changes across the grid")
        ginv = np.moveaxis(np.linalg.inv(gm), (-2, -1), (0, 1))
        return cls(grid, g, ginv, np.sqrt(np.abs(det)), int(signs[0]))

    @classmethod
    def flat(cls, grid: Grid, diag=None) -> "BaseMetric":
        diag = np.ones(grid.m) if diag is None else np.asarray(diag, dtype=float)
        g = np.broadcast_to(np.diag(diag)[(...,) + (None,) * grid.m], (grid.m, grid.m) + grid.N)
        return cls.from_values(grid, np.array(g))

    @classmethod
    def smooth(cls, grid: Grid, seed: int, signature=None, amplitude: float = 0.2, kmax: int = 1) -> "BaseMetric":
        """diag(signature) plus a seeded symmetric band-limited perturbation.

        The perturbation is rescaled so that its largest pointwise spectral
        norm equals ``amplitude``. With ``amplitude`` below the smallest
        signature magnitude the metric keeps its signature everywhere.
        """
        sig = np.ones(grid.m) if signature is None else np.asarray(signature, dtype=float)
        if sig.shape != (grid.m,):
            raise MetricError(f"signature needs {grid.m} entries, got {sig.shape}")
        if amplitude >= np.min(np.abs(sig)):
            raise MetricError(f"amplitude {amplitude} must stay below min |signature| = {np.min(np.abs(sig))}")
        P = random_series(grid, (grid.m, grid.m), seed, kmax, 1.0).on(grid)
        P = 0.5 * (P + np.swapaxes(P, 0, 1))
        norm = float(np.max(np.linalg.norm(np.moveaxis(P, (0, 1), (-2, -1)), ord=2, axis=(-2, -1))))
        if norm > 0.0:
            P = P * (amplitude / norm)
        return cls.from_values(grid, np.diag(sig)[(...,) + (None,) * grid.m] + P)

    def identity_residual(self) -> float:
        prod = np.einsum("ij...,jk...->ik...", self.g, self.ginv)
        eye = np.eye(self.grid.m)[(...,) + (None,) * self.grid.m]
        return float(np.max(np.abs(prod - eye)))


@dataclass(frozen=True)
class Momentum(LatticeField):
    """Momentum Pi^{ij}_mu, values shaped (r, m(m-1)/2, *N)."""

    pairs: tuple[int, ...] = (1,)

    @classmethod
    def from_full(cls, grid: Grid, full: np.ndarray) -> "Momentum":
        return super().from_full(grid, full, pair_axes=(1,))


@dataclass(frozen=True)
class PhaseSection:
    a: GaugeField
    Pi: Momentum

    def __post_init__(self):
        if self.a.grid != self.Pi.grid:
            raise ValueError("a and Pi live on different grids")
        if self.a.comp_shape[0] != self.Pi.comp_shape[0]:
            raise ValueError("a and Pi disagree on the algebra dimension")


# --------------------------------------------------------------------------
# pointwise densities and Legendre duality (unpacked arrays)


def _raise_pair(F: np.ndarray, ginv: np.ndarray) -> np.ndarray:
    """F^{ij} = g^{ip} g^{jq} F_pq on the last pair of component axes, pairwise contractions."""
    T = np.einsum("npq...,jq...->npj...", F, ginv)
    return np.einsum("npj...,ip...->nij...", T, ginv)


def _legendre(F: np.ndarray, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    return -np.einsum("mn,nij...->mij...", S.K, _raise_pair(F, g.ginv)) * g.sqrtg


def _inverse_legendre(P: np.ndarray, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    return -np.einsum("lm,lij...->mij...", S.Kinv, _raise_pair(P, g.g)) / g.sqrtg


def _lagrangian(F: np.ndarray, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    # -1/4 F K g g F sqrt(g), written as 1/4 F . legendre(F)
    return 0.25 * np.einsum("mij...,mij...->...", F, _legendre(F, g, S))


def _hamiltonian(P: np.ndarray, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    # -1/4 P Kinv g g P / sqrt(g), written as 1/4 P . inverse_legendre(P)
    return 0.25 * np.einsum("mij...,mij...->...", P, _inverse_legendre(P, g, S))


def lagrangian_density(F: Curvature, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    check_shapes(S, F)
    return _lagrangian(F.unpacked(), g, S)


def legendre(F: Curvature, g: BaseMetric, S: LieAlgebraData) -> Momentum:
    check_shapes(S, F)
    return Momentum.from_full(F.grid, _legendre(F.unpacked(), g, S))


def hamiltonian_density(Pi: Momentum, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    check_shapes(S, Pi)
    return _hamiltonian(Pi.unpacked(), g, S)


def inverse_legendre(Pi: Momentum, g: BaseMetric, S: LieAlgebraData) -> Curvature:
    check_shapes(S, Pi)
    return Curvature.from_full(Pi.grid, _inverse_legendre(Pi.unpacked(), g, S))


def pairing_density(Pi: LatticeField, F: LatticeField) -> np.ndarray:
    """Full-sum contraction Pi^{ij}_mu F^mu_{ij} at each node."""
    return np.einsum("mij...,mij...->...", Pi.unpacked(), F.unpacked())


def dH_da(Pi: Momentum, a: GaugeField, g: BaseMetric, S: LieAlgebraData) -> LatticeField:
    """Explicit potential dependence of the Hamiltonian.

    The free Hamiltonian has none, so this is zero. Coupled Hamiltonians
    override the hook by passing their own callable to :func:`hdd_residuals`.
    """
    return LatticeField(a.grid, np.zeros_like(a.values))


# --------------------------------------------------------------------------
# field equations


def hdd_residuals(s: PhaseSection, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2", dHda=dH_da):
    """Hamilton-De Donder residuals (R1, R2).

    R1^mu_{ij} = curvature(a)^mu_{ij} - dH/dPi^{ij}_mu
    R2^i_mu    = -dH/da^mu_i - (D.Pi)^i_mu
    """
    a, Pi = s.a, s.Pi
    check_shapes(S, a, Pi)
    R1 = Curvature(a.grid, curvature(a, S, scheme).values - inverse_legendre(Pi, g, S).values)
    div = covariant_divergence_values(Pi.unpacked(), a.values, a.grid, S, scheme)
    R2 = LatticeField(a.grid, -dHda(Pi, a, g, S).values - div)
    return R1, R2


def euler_lagrange_residual(a: GaugeField, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2") -> LatticeField:
    """dL/da^mu_i - D_j dL/dF^mu_{ji}; the free Lagrangian has dL/da = 0."""
    check_shapes(S, a)
    P = _legendre(curvature_values(a.values, a.grid, S, scheme), g, S)
    return LatticeField(a.grid, -covariant_divergence_values(P, a.values, a.grid, S, scheme))


def lagrangian_residuals(a: GaugeField, F: Curvature, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2"):
    """Residuals of the first-order Lagrangian system in (a, F).

    Returns the packed-F gradient -legendre(F - curvature(a)) and the
    potential gradient -(D.legendre(F)). Both are the variational gradients
    of :func:`lagrangian_action` per unit cell volume.
    """
    check_shapes(S, a, F)
    contact = F.unpacked() - curvature_values(a.values, a.grid, S, scheme)
    gF = Momentum.from_full(a.grid, -_legendre(contact, g, S))
    P = _legendre(F.unpacked(), g, S)
    ga = LatticeField(a.grid, -covariant_divergence_values(P, a.values, a.grid, S, scheme))
    return gF, ga


# --------------------------------------------------------------------------
# discrete actions (node sum times cell volume)


def hamiltonian_action_density(s: PhaseSection, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2") -> np.ndarray:
    """-H - Pi^{ij}_mu (d_j a^mu_i + 1/2 a^nu_i a^rho_j C^mu_{rho nu})."""
    a = s.a.values
    P = s.Pi.unpacked()
    D = grad_values(a, s.a.grid, scheme)  # D[j, mu, i]
    dja = np.einsum("jmi...->mij...", D)
    kin = np.einsum("mij...,mij...->...", P, dja + 0.5 * commutator_term(a, S))
    return -_hamiltonian(P, g, S) - kin


def hamiltonian_action(s: PhaseSection, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2") -> float:
    check_shapes(S, s.a, s.Pi)
    return integrate(hamiltonian_action_density(s, g, S, scheme), s.a.grid)


def lagrangian_action_density(a: GaugeField, F: Curvature, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2") -> np.ndarray:
    """L - 1/2 (F^mu_{kr} + a^nu_k a^rho_r C^mu_{rho nu}) dL/dF^mu_{kr} + dL/dF^mu_{rk} d_r a^mu_k."""
    Ff = F.unpacked()
    P = _legendre(Ff, g, S)
    D = grad_values(a.values, a.grid, scheme)  # D[r, mu, k]
    corr = 0.5 * np.einsum("mkr...,mkr...->...", Ff + commutator_term(a.values, S), P)
    flow = np.einsum("mrk...,rmk...->...", P, D)
    return _lagrangian(Ff, g, S) - corr + flow


def lagrangian_action(a: GaugeField, F: Curvature, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2") -> float:
    check_shapes(S, a, F)
    return integrate(lagrangian_action_density(a, F, g, S, scheme), a.grid)


def residual_pairing(pairs, grid: Grid) -> float:
    """Sum over (residual, direction) pairs of stored-component products times cell volume.

    Packed fields pair their stored components once, which is the packed
    derivative convention used for the action gradients.
    """
    total = 0.0
    for R, d in pairs:
        total += integrate(np.sum(R.values * d.values, axis=tuple(range(len(R.comp_shape)))), grid)
    return total
