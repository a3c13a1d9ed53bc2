"""Triad and spin-connection variables for three-dimensional gauge fields.

With m = r = 3 the momenta and potentials are traded for

    e^nu_p        = 1/2 K^{mu nu} Pi^{ij}_mu eps_{pij}
    w_{i beta al} = 1/2 sqrt(K) eps_{mu al beta} a^mu_i

and back through Pi^{ij}_mu = K_{mu nu} e^nu_p eps^{pij},
a^mu_i = (1/sqrt K) eps^{mu sig lam} w_{i lam sig}. Upper and lower
permutation symbols are numerically equal. Spin connections are stored as
w[i, (beta alpha)] packed in the frame pair; the mixed form is
w_i^mu_nu = K^{mu beta} w_{i beta nu}, which equals ad(a_i).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import EPS, LieAlgebraData
from .connection import GaugeField
from .dynamics import BaseMetric, Momentum
from .lattice import Grid, LatticeField, grad_values, pack_pair, unpack_pair

DET_FLOOR = 1e-8


class TriadError(ValueError):
    """Raised for non-3D input or degenerate triads."""


@dataclass(frozen=True)
class TriadData(LatticeField):
    """Triad e^nu_p, values shaped (3, 3, *N) indexed [nu, p]."""


@dataclass(frozen=True)
class SpinConnectionData(LatticeField):
    """Spin connection w_{i beta alpha}, values shaped (3, 3, *N) with the frame pair packed."""

    pairs: tuple[int, ...] = (1,)

    @classmethod
    def from_full(cls, grid: Grid, full: np.ndarray) -> "SpinConnectionData":
        return super().from_full(grid, full, pair_axes=(1,))

    def mixed(self, S: LieAlgebraData) -> np.ndarray:
        """w_i^mu_nu as an array [i, mu, nu, *N]."""
        return mixed_form(self.unpacked(), S)


def mixed_form(wf: np.ndarray, S: LieAlgebraData) -> np.ndarray:
    return np.einsum("mb,ibn...->imn...", S.Kinv, wf)


def _require_3d(S: LieAlgebraData, grid: Grid) -> None:
    if S.r != 3 or grid.m != 3:
        raise TriadError(f"triad variables need m = r = 3, got m = {grid.m}, r = {S.r}")


# --------------------------------------------------------------------------
# coordinate changes


def to_triad(Pi: Momentum, S: LieAlgebraData) -> TriadData:
    _require_3d(S, Pi.grid)
    e = 0.5 * np.einsum("mn,mij...,pij->np...", S.Kinv, Pi.unpacked(), EPS)
    return TriadData(Pi.grid, e)


def from_triad(e: TriadData, S: LieAlgebraData) -> Momentum:
    _require_3d(S, e.grid)
    P = np.einsum("mn,np...,pij->mij...", S.K, e.values, EPS)
    return Momentum.from_full(e.grid, P)


def to_spin_connection(a: GaugeField, S: LieAlgebraData) -> SpinConnectionData:
    _require_3d(S, a.grid)
    w = 0.5 * S.sqrtK * np.einsum("mab,mi...->iba...", EPS, a.values)
    return SpinConnectionData.from_full(a.grid, w)


def from_spin_connection(w: SpinConnectionData, S: LieAlgebraData) -> GaugeField:
    _require_3d(S, w.grid)
    a = np.einsum("msl,ils...->mi...", EPS, w.unpacked()) / S.sqrtK
    return GaugeField(w.grid, a)


# --------------------------------------------------------------------------
# the quadratic identity between spin-connection coefficients


def prop55_terms(wf: np.ndarray, S: LieAlgebraData) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the identity, indexed [i, j, nu, ...].

    lhs = -1/2 eps^{rho al beta} w_{j nu rho} w_{i beta al}
    rhs = K_{mu nu} eps^{mu sig lam} w_{i lam eta} w_j^eta_sig
    """
    wm = mixed_form(wf, S)
    lhs = -0.5 * np.einsum("rab,jnr...,iba...->ijn...", EPS, wf, wf)
    rhs = np.einsum("mn,msl,ile...,jes...->ijn...", S.K, EPS, wf, wm)
    return lhs, rhs


def prop55_residual(w, S: LieAlgebraData) -> float:
    """Max-abs of lhs - rhs; ``w`` is a SpinConnectionData or a full array [i, b, a, ...]."""
    wf = w.unpacked() if isinstance(w, LatticeField) else np.asarray(w, dtype=float)
    lhs, rhs = prop55_terms(wf, S)
    return float(np.max(np.abs(lhs - rhs), initial=0.0))


# --------------------------------------------------------------------------
# curvature of the spin connection


def spin_curvature_full(w: SpinConnectionData, S: LieAlgebraData, scheme: str = "order2") -> np.ndarray:
    """R_{ij lam sig} as an unpacked array [i, j, lam, sig, *N].

    R = d_i w_{j lam sig} - d_j w_{i lam sig} + w_{i lam eta} w_j^eta_sig - w_{j lam eta} w_i^eta_sig
    """
    wf = w.unpacked()
    wm = mixed_form(wf, S)
    D = grad_values(wf, w.grid, scheme)  # D[k, i, l, s]
    der = D - np.swapaxes(D, 0, 1)
    quad = np.einsum("ile...,jes...->ijls...", wf, wm)
    return der + quad - np.swapaxes(quad, 0, 1)


def spin_curvature(w: SpinConnectionData, S: LieAlgebraData, scheme: str = "order2") -> LatticeField:
    """R with both antisymmetric pairs packed: values [(ij), (lam sig), *N]."""
    R = spin_curvature_full(w, S, scheme)
    return LatticeField.from_full(w.grid, R, pair_axes=(0, 2))


def spin_curvature_from_field_strength(F: LatticeField, S: LieAlgebraData) -> np.ndarray:
    """Image of F under the coordinate change: 1/2 sqrt(K) eps_{mu sig lam} F^mu_{ij}, [i, j, lam, sig]."""
    return 0.5 * S.sqrtK * np.einsum("msl,mij...->ijls...", EPS, F.unpacked())


# --------------------------------------------------------------------------
# field equations in triad variables


def free_dH_de(e: TriadData, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    """dH/de^nu_p = -e^mu_k K_{mu nu} g^{kp} sqrt(g) sigma(g) for the free field."""
    return -np.einsum("mk...,mn,kp...->np...", e.values, S.K, g.ginv) * g.sqrtg * g.sigmag


def free_dH_dw(w: SpinConnectionData, g: BaseMetric, S: LieAlgebraData) -> np.ndarray:
    """The free Hamiltonian does not depend on the spin connection."""
    return np.zeros_like(w.unpacked())


def _torsion_bracket(e: TriadData, wm: np.ndarray, scheme: str) -> np.ndarray:
    """d_j e^nu_p + w_j^nu_gam e^gam_p, [j, nu, p]."""
    D = grad_values(e.values, e.grid, scheme)
    return D + np.einsum("jng...,gp...->jnp...", wm, e.values)


def ec_residuals(e: TriadData, w: SpinConnectionData, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2", dHde=free_dH_de, dHdw=free_dH_dw):
    """Hamilton-De Donder residuals in triad variables.

    rho_e[nu, p] = -dH/de^nu_p - eps^{pij} eps^{mu sig lam} K_{mu nu}/sqrt(K)
                   (d_j w_{i lam sig} + w_{j lam eta} w_i^eta_sig)
    rho_w[i, lam sig] = -dH/dw_{i lam sig} + 2 K_{mu nu}/sqrt(K) eps^{pij} eps^{mu sig lam}
                   (d_j e^nu_p + w_j^nu_gam e^gam_p)

    The quadratic term keeps the order (w_j ... w_i); the other order gives
    the same contraction because eps^{pij} is antisymmetric in (i, j).
    """
    _require_3d(S, e.grid)
    wf = w.unpacked()
    wm = mixed_form(wf, S)
    D = grad_values(wf, w.grid, scheme)  # D[j, i, l, s]
    br = np.einsum("jils...->ijls...", D) + np.einsum("jle...,ies...->ijls...", wf, wm)
    rho_e = -dHde(e, g, S) - np.einsum("pij,msl,mn,ijls...->np...", EPS, EPS, S.K, br) / S.sqrtK
    br2 = _torsion_bracket(e, wm, scheme)
    rho_w = -dHdw(w, g, S) + 2.0 / S.sqrtK * np.einsum("mn,pij,msl,jnp...->ils...", S.K, EPS, EPS, br2)
    return LatticeField(e.grid, rho_e), SpinConnectionData.from_full(e.grid, rho_w)


def ec_from_hdd(R1: LatticeField, R2: LatticeField, S: LieAlgebraData):
    """Constant linear image of (R1, R2) that the triad residuals must equal.

    rho_e[nu, p] = 1/2 eps^{pij} K_{mu nu} R1^mu_{ij}
    rho_w[i, lam, sig] = (2/sqrt K) eps^{mu sig lam} R2^i_mu
    """
    rho_e = 0.5 * np.einsum("pij,mn,mij...->np...", EPS, S.K, R1.unpacked())
    rho_w = 2.0 / S.sqrtK * np.einsum("msl,mi...->ils...", EPS, R2.values)
    return LatticeField(R1.grid, rho_e), SpinConnectionData.from_full(R1.grid, rho_w)


def free_field_terms(e: TriadData, w: SpinConnectionData, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2"):
    """Pieces of the free-field triad equations.

    torsionlike[i, lam, sig] = 2 K_{mu nu} eps^{pij} eps^{mu sig lam} (d_j e^nu_p + w_j^nu_gam e^gam_p)
    metric[nu, p]            = 1/2 e^mu_k K_{mu nu} g^{kp} sqrt(g) sigma(g)
    curvature[nu, p]         = eps^{pij} eps_{nu lam sig} R_{ij}^{lam sig} sqrt(K) sigma(K)
    """
    _require_3d(S, e.grid)
    wm = w.mixed(S)
    br2 = _torsion_bracket(e, wm, scheme)
    torsionlike = 2.0 * np.einsum("mn,pij,msl,jnp...->ils...", S.K, EPS, EPS, br2)
    metric = -0.5 * free_dH_de(e, g, S)
    R = spin_curvature_full(w, S, scheme)
    Ru = np.einsum("ijab...,al,bs->ijls...", R, S.Kinv, S.Kinv)
    curv = np.einsum("pij,nls,ijls...->np...", EPS, EPS, Ru) * S.sqrtK * S.sigmaK
    return torsionlike, metric, curv


def free_field_residuals(e: TriadData, w: SpinConnectionData, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2"):
    """(torsionlike, einsteinlike) with einsteinlike = metric - curvature."""
    torsionlike, metric, curv = free_field_terms(e, w, g, S, scheme)
    return SpinConnectionData.from_full(e.grid, torsionlike), LatticeField(e.grid, metric - curv)


# --------------------------------------------------------------------------
# spin connection generated by a triad


@dataclass(frozen=True)
class TriadJetSample:
    """Point samples: e[..., mu, i] and packed E[..., mu, (ij)] with
    E^mu_{ij} = 1/2 (d_j e^mu_i - d_i e^mu_j)."""

    e: np.ndarray
    E: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.e, dtype=float)
        E = np.asarray(self.E, dtype=float)
        if e.shape[-2:] != (3, 3) or E.shape[-2:] != (3, 3) or e.shape[:-2] != E.shape[:-2]:
            raise TriadError(f"expected e [..., 3, 3] and packed E [..., 3, 3], got {e.shape}, {E.shape}")
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "E", E)

    @property
    def E_full(self) -> np.ndarray:
        return unpack_pair(self.E, self.E.ndim - 1)


def spin_from_triad_jet(j: TriadJetSample, S: LieAlgebraData) -> np.ndarray:
    """Mixed spin connection w[..., i, mu, nu] = w_i^mu_nu of the Levi-Civita connection.

    w_i^mu_nu = e^mu_p (Sig^p_{ji} - Sig_j^p_i + Sig_{ij}^p) e^j_nu,
    Sig^p_{ji} = e^p_lam E^lam_{ij}, Latin indices moved with G_{hk} = K e^mu_k e^nu_h.
    """
    e = j.e
    det = np.linalg.det(e)
    worst = float(np.min(np.abs(det), initial=np.inf))
    if worst < DET_FLOOR:
        raise TriadError(f"singular triad: |det e| = {worst:.3e}")
    einv = np.linalg.inv(e)  # einv[..., p, lam]
    Ef = j.E_full  # [..., lam, i, j]
    G = np.einsum("...mk,...nh,mn->...hk", e, e, S.K)
    Ginv = np.linalg.inv(G)
    sig = np.einsum("...pl,...lij->...pji", einv, Ef)  # Sig^p_{ji} at [p, j, i]
    s2 = np.einsum("...jq,...pr,...qri->...jpi", G, Ginv, sig)  # Sig_j^p_i
    s3 = np.einsum("...iq,...pr,...qjr->...ijp", G, Ginv, sig)  # Sig_{ij}^p
    inner = sig - np.einsum("...jpi->...pji", s2) + np.einsum("...ijp->...pji", s3)  # [p, j, i]
    return np.einsum("...mp,...pji,...jn->...imn", e, inner, einv)


def torsion_residual(j: TriadJetSample, wmix: np.ndarray) -> float:
    """Max-abs of 2E^mu_{ij} - w_i^mu_nu e^nu_j + w_j^mu_nu e^nu_i."""
    t = np.einsum("...imn,...nj->...mij", wmix, j.e)
    res = 2.0 * j.E_full - t + np.swapaxes(t, -1, -2)
    return float(np.max(np.abs(res), initial=0.0))


def metricity_residual(wmix: np.ndarray, S: LieAlgebraData) -> float:
    """Max-abs of w_{i mu nu} + w_{i nu mu} with w_{i mu nu} = K_{mu sig} w_i^sig_nu."""
    low = np.einsum("ms,...isn->...imn", S.K, wmix)
    return float(np.max(np.abs(low + np.swapaxes(low, -1, -2)), initial=0.0))


def spin_from_triad_field(e: TriadData, S: LieAlgebraData, scheme: str = "order2") -> SpinConnectionData:
    """Lattice convenience wrapper: E from finite differences, hence O(h^p) accurate."""
    _require_3d(S, e.grid)
    D = grad_values(e.values, e.grid, scheme)  # D[k, mu, i]
    Ef = 0.5 * (np.einsum("jmi...->mij...", D) - np.einsum("imj...->mij...", D))
    e_pts = np.moveaxis(e.values, (0, 1), (-2, -1))
    E_pts = np.moveaxis(pack_pair(Ef, 1), (0, 1), (-2, -1))
    wmix = spin_from_triad_jet(TriadJetSample(e_pts, E_pts), S)  # [*N, i, mu, nu]
    low = np.einsum("ms,...isn->imn...", S.K, wmix)
    return SpinConnectionData.from_full(e.grid, low)


def induced_metric(e: TriadData, S: LieAlgebraData) -> BaseMetric:
    """G_{hk} = K_{mu nu} e^mu_k e^nu_h; degenerate triads are rejected by BaseMetric."""
    G = np.einsum("mk...,nh...,mn->hk...", e.values, e.values, S.K)
    return BaseMetric.from_values(e.grid, G)
