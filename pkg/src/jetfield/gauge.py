"""Gauge maps gamma = exp(xi) and the transformation laws of every field.

Only Ad(gamma), Ad(gamma^-1) and the Maurer-Cartan components eta are stored:

    Ad      = expm(ad_xi)
    AdInv   = expm(-ad_xi)
    eta_j   = sum_k (-ad_xi)^k / (k+1)!  d_j xi

Laws with the identity base map:

    a   -> AdInv a + eta
    F   -> AdInv F
    Pi  -> Ad^T Pi               (keeps Pi.F invariant)
    e   -> AdInv e
    w_{i mu nu} -> Ad^s_mu Ad^g_nu w_{i s g} + Ad^h_mu (d_i AdInv)^s_h K_{s nu}

with d_i AdInv = -ad(eta_i) AdInv computed from the exact generator derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .algebra import LieAlgebraData
from .connection import Curvature, GaugeField
from .dynamics import Momentum
from .lattice import Grid, TrigSeries
from .triad import SpinConnectionData, TriadData

AD_NORM_LIMIT = 20.0
SERIES_TOL = 1e-15


class GaugeMapError(ValueError):
    """Raised when a generator is too large for the series to be trusted."""


@dataclass(frozen=True)
class GaugeMapData:
    """Ad[mu, nu, *nodes], AdInv[mu, nu, *nodes], eta[mu, j, *nodes]."""

    Ad: np.ndarray
    AdInv: np.ndarray
    eta: np.ndarray

    @property
    def node_shape(self) -> tuple[int, ...]:
        return self.Ad.shape[2:]


def _adjoint_field(xi: np.ndarray, S: LieAlgebraData) -> np.ndarray:
    return np.einsum("msn,s...->mn...", S.C, xi)


def _batched_expm(X: np.ndarray) -> np.ndarray:
    """expm over leading (r, r) matrix axes of an (r, r, *nodes) array."""
    moved = np.ascontiguousarray(np.moveaxis(X, (0, 1), (-2, -1)))
    return np.moveaxis(expm(moved), (-2, -1), (0, 1))


def _dexp(adx: np.ndarray, dxi: np.ndarray) -> np.ndarray:
    """sum_k (-ad)^k/(k+1)! applied to dxi[mu, j, ...]."""
    total = dxi.copy()
    term = dxi
    k = 0
    while True:
        k += 1
        term = -np.einsum("mn...,nj...->mj...", adx, term) / (k + 1)
        total = total + term
        if float(np.max(np.abs(term), initial=0.0)) < SERIES_TOL:
            return total
        if k > 400:
            raise GaugeMapError("Maurer-Cartan series did not converge")


def gauge_map_from_values(xi: np.ndarray, dxi: np.ndarray, S: LieAlgebraData) -> GaugeMapData:
    """Build from generator values xi[mu, *nodes] and derivatives dxi[mu, j, *nodes]."""
    adx = _adjoint_field(xi, S)
    norm = float(np.max(np.linalg.norm(np.moveaxis(adx, (0, 1), (-2, -1)), ord=2, axis=(-2, -1)), initial=0.0))
    if norm > AD_NORM_LIMIT:
        raise GaugeMapError(f"|ad_xi| = {norm:.3g} exceeds {AD_NORM_LIMIT}; series not trusted")
    return GaugeMapData(_batched_expm(adx), _batched_expm(-adx), _dexp(adx, dxi))


def make_gauge_map(xi: TrigSeries, S: LieAlgebraData, grid: Grid | None = None, points: np.ndarray | None = None) -> GaugeMapData:
    """Gauge map for a generator family on a grid or at given points (m, *P)."""
    if (grid is None) == (points is None):
        raise ValueError("give exactly one of grid or points")
    if xi.comp_shape != (S.r,):
        raise ValueError(f"generator must have shape ({S.r},), got {xi.comp_shape}")
    pts = grid.points() if grid is not None else np.asarray(points, dtype=float)
    vals = xi.at(pts)
    dxi = np.moveaxis(xi.gradient_at(pts), 0, 1)  # [mu, j, ...]
    return gauge_map_from_values(vals, dxi, S)


def identity_map(S: LieAlgebraData, m: int, node_shape: tuple[int, ...]) -> GaugeMapData:
    eye = np.broadcast_to(np.eye(S.r)[(...,) + (None,) * len(node_shape)], (S.r, S.r) + node_shape)
    return GaugeMapData(np.array(eye), np.array(eye), np.zeros((S.r, m) + node_shape))


def _mat(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.einsum("mk...,kn...->mn...", A, B)


def compose(G1: GaugeMapData, G2: GaugeMapData) -> GaugeMapData:
    """The map that applies G2 first and then G1."""
    eta = np.einsum("mn...,nj...->mj...", G1.AdInv, G2.eta) + G1.eta
    return GaugeMapData(_mat(G2.Ad, G1.Ad), _mat(G1.AdInv, G2.AdInv), eta)


def inverse(G: GaugeMapData) -> GaugeMapData:
    return GaugeMapData(G.AdInv, G.Ad, -np.einsum("mn...,nj...->mj...", G.Ad, G.eta))


def gauge_a(a: GaugeField, G: GaugeMapData) -> GaugeField:
    return a.with_values(np.einsum("mn...,ni...->mi...", G.AdInv, a.values) + G.eta)


def gauge_F(F: Curvature, G: GaugeMapData) -> Curvature:
    return F.with_values(np.einsum("mn...,nk...->mk...", G.AdInv, F.values))


def gauge_Pi(Pi: Momentum, G: GaugeMapData) -> Momentum:
    return Pi.with_values(np.einsum("nm...,nk...->mk...", G.Ad, Pi.values))


def gauge_triad(e: TriadData, G: GaugeMapData) -> TriadData:
    return e.with_values(np.einsum("mn...,np...->mp...", G.AdInv, e.values))


def gauge_spin(w: SpinConnectionData, G: GaugeMapData, S: LieAlgebraData) -> SpinConnectionData:
    wf = w.unpacked()  # wf[i, b, a]
    hom = np.einsum("sm...,gn...,isg...->imn...", G.Ad, G.Ad, wf)
    adeta = np.einsum("msn,sj...->mnj...", S.C, G.eta)  # ad(eta_j)[m, n]
    dAdInv = -np.einsum("mkj...,kn...->jmn...", adeta, G.AdInv)  # [j, s, h]
    inh = np.einsum("hm...,ish...,sn->imn...", G.Ad, dAdInv, S.K)
    return SpinConnectionData.from_full(w.grid, hom + inh)


def pointwise_identity_residual(G: GaugeMapData) -> float:
    eye = np.eye(G.Ad.shape[0])[(...,) + (None,) * len(G.node_shape)]
    return float(np.max(np.abs(_mat(G.Ad, G.AdInv) - eye)))


def metric_preservation_residual(G: GaugeMapData, S: LieAlgebraData) -> float:
    """max |Ad^T K Ad - K| over nodes."""
    AtKA = np.einsum("km...,kl,ln...->mn...", G.Ad, S.K, G.Ad)
    return float(np.max(np.abs(AtKA - S.K[(...,) + (None,) * len(G.node_shape)])))


def rotation_closed_form(t: np.ndarray, S: LieAlgebraData, axis: int = 0) -> np.ndarray:
    """Ad for xi = t e_axis in so3 with K = I: rotation by t/2 about the axis."""
    n = np.zeros(3)
    n[axis] = 1.0
    Kx = np.einsum("msn,s->mn", S.C, n) * 2.0  # unit-speed cross-product matrix
    c, s = np.cos(0.5 * t), np.sin(0.5 * t)
    eye = np.eye(3)[(...,) + (None,) * np.ndim(t)]
    Kx = Kx[(...,) + (None,) * np.ndim(t)]
    return eye + s * Kx + (1 - c) * np.einsum("mk...,kn...->mn...", Kx, Kx)
