"""Gauge potentials, field strength, contact residual and covariant divergence.

Sign conventions (zero-based indices, full sums unless stated):

    F^mu_{ij} = d_i a^mu_j - d_j a^mu_i - a^nu_i a^rho_j C^mu_{rho nu}
    (D.Pi)^i_mu = d_j Pi^{ji}_mu - Pi^{ji}_lam a^gam_j C^lam_{gam mu}

``comm[mu, i, j] = a^nu_i a^rho_j C^mu_{rho nu}`` equals ``-[a_i, a_j]^mu``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebraData
from .lattice import Grid, LatticeField, grad_values, n_pairs


@dataclass(frozen=True)
class GaugeField(LatticeField):
    """Potential a^mu_i, values shaped (r, m, *N)."""

    @classmethod
    def zeros(cls, grid: Grid, r: int) -> "GaugeField":
        return cls(grid, np.zeros((r, grid.m) + grid.N))


@dataclass(frozen=True)
class Curvature(LatticeField):
    """Field strength F^mu_{ij}, values shaped (r, m(m-1)/2, *N)."""

    pairs: tuple[int, ...] = (1,)

    @classmethod
    def zeros(cls, grid: Grid, r: int) -> "Curvature":
        return cls(grid, np.zeros((r, n_pairs(grid.m)) + grid.N))

    @classmethod
    def from_full(cls, grid: Grid, full: np.ndarray) -> "Curvature":
        return super().from_full(grid, full, pair_axes=(1,))


def check_shapes(S: LieAlgebraData, *fields: LatticeField) -> None:
    grid = fields[0].grid
    for f in fields:
        if f.grid != grid:
            raise ValueError("fields live on different grids")
        if f.comp_shape[0] != S.r:
            raise ValueError(f"algebra index has length {f.comp_shape[0]}, expected r = {S.r}")


def commutator_term(a: np.ndarray, S: LieAlgebraData) -> np.ndarray:
    """comm[mu, i, j] = a^nu_i a^rho_j C^mu_{rho nu}, on raw (r, m, ...) arrays."""
    return np.einsum("ni...,rj...,mrn->mij...", a, a, S.C)


def curl_values(a: np.ndarray, grid: Grid, scheme: str) -> np.ndarray:
    """curl[mu, i, j] = d_i a^mu_j - d_j a^mu_i."""
    D = grad_values(a, grid, scheme)  # D[k, mu, i]
    curl = np.einsum("imj...->mij...", D)
    return curl - np.swapaxes(curl, 1, 2)


def curvature_values(a: np.ndarray, grid: Grid, S: LieAlgebraData, scheme: str) -> np.ndarray:
    """Unpacked curvature (r, m, m, *N)."""
    return curl_values(a, grid, scheme) - commutator_term(a, S)


def curvature(a: GaugeField, S: LieAlgebraData, scheme: str = "order2") -> Curvature:
    check_shapes(S, a)
    return Curvature.from_full(a.grid, curvature_values(a.values, a.grid, S, scheme))


def contact_residual(a: GaugeField, F: Curvature, S: LieAlgebraData, scheme: str = "order2") -> Curvature:
    """F - curvature(a); vanishes on holonomic sections."""
    check_shapes(S, a, F)
    return Curvature(F.grid, F.values - curvature(a, S, scheme).values)


def covariant_divergence_values(Pfull: np.ndarray, a: np.ndarray, grid: Grid, S: LieAlgebraData, scheme: str) -> np.ndarray:
    D = grad_values(Pfull, grid, scheme)  # D[k, mu, j, i]
    div = np.einsum("jmji...->mi...", D)
    twist = np.einsum("lji...,gj...,lgm->mi...", Pfull, a, S.C)
    return div - twist


def covariant_divergence(Pi: LatticeField, a: GaugeField, S: LieAlgebraData, scheme: str = "order2") -> LatticeField:
    """(D.Pi)^i_mu on the lattice, shaped (r, m, *N)."""
    check_shapes(S, a, Pi)
    return LatticeField(a.grid, covariant_divergence_values(Pi.unpacked(), a.values, a.grid, S, scheme))


def a_from_f_coordinates(F: Curvature, a: GaugeField, S: LieAlgebraData) -> LatticeField:
    """A^mu_{ij} from (a, F): A^mu_{ji} = 1/2 (F^mu_{ij} - a^nu_j a^rho_i C^mu_{rho nu})."""
    check_shapes(S, a, F)
    A = -0.5 * (F.unpacked() + commutator_term(a.values, S))
    return LatticeField.from_full(F.grid, A, pair_axes=(1,))


def f_from_a_coordinates(A: LatticeField, a: GaugeField, S: LieAlgebraData) -> Curvature:
    """Inverse of :func:`a_from_f_coordinates`."""
    check_shapes(S, a, A)
    return Curvature.from_full(A.grid, -2.0 * A.unpacked() - commutator_term(a.values, S))


def jet_a_coordinates(a: GaugeField, scheme: str = "order2") -> LatticeField:
    """A^mu_{ij} = 1/2 (d_j a^mu_i - d_i a^mu_j) of the holonomic lift."""
    return LatticeField.from_full(a.grid, -0.5 * curl_values(a.values, a.grid, scheme), pair_axes=(1,))
