"""Connections on the phase space and on the quotient jet space.

Along a section a connection is stored as lattice fields:

    Ga[k, mu, h]      = Gamma^mu_{kh}
    GPi[k, mu, (st)]  = Gamma^{st}_{k mu}   (packed s < t)
    GF[k, mu, (st)]   = Gamma^mu_{kst}      (packed s < t)

The holonomic lift of a phase section s gives, on the lattice,

    (rho1, rho2) = (-R2, +R1)

with (R1, R2) the Hamilton-De Donder residuals of s. This sign map is what
the cross-check tests assert.

Full phase-space connections are callables of a fiber point; the closedness
conditions are evaluated by centered differences in the fiber coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .algebra import LieAlgebraData
from .connection import Curvature, GaugeField, check_shapes, commutator_term
from .dynamics import BaseMetric, PhaseSection, _inverse_legendre, _legendre, dH_da
from .lattice import LatticeField, grad_values, n_pairs, pack_pair, unpack_pair


@dataclass(frozen=True)
class SectionConnection:
    Ga: LatticeField
    GPi: LatticeField  # pairs=(2,)


@dataclass(frozen=True)
class LagrangianSectionConnection:
    Ga: LatticeField
    GF: LatticeField  # pairs=(2,)


def connection_from_section(s: PhaseSection, scheme: str = "order2") -> SectionConnection:
    """Holonomic lift: Gamma^mu_{kh} = d_k a^mu_h, Gamma^{st}_{k mu} = d_k Pi^{st}_mu."""
    grid = s.a.grid
    Ga = LatticeField(grid, grad_values(s.a.values, grid, scheme))
    GPi = LatticeField(grid, grad_values(s.Pi.values, grid, scheme), pairs=(2,))
    return SectionConnection(Ga, GPi)


def lagrangian_lift(a: GaugeField, F: Curvature, scheme: str = "order2") -> LagrangianSectionConnection:
    """Gamma^mu_{kh} = d_k a^mu_h, Gamma^mu_{kst} = d_k F^mu_{st} by finite differences."""
    grid = a.grid
    Ga = LatticeField(grid, grad_values(a.values, grid, scheme))
    GF = LatticeField(grid, grad_values(F.values, grid, scheme), pairs=(2,))
    return LagrangianSectionConnection(Ga, GF)


def hamiltonian_connection_residuals(c: SectionConnection, s: PhaseSection, g: BaseMetric, S: LieAlgebraData, dHda=dH_da):
    """Algebraic conditions on a connection along a section.

    rho1^i_sig = Gamma^{ji}_{j sig} + dH/da^sig_i - Pi^{ji}_mu C^mu_{rho sig} a^rho_j
    rho2^sig_{ij} = Gamma^sig_{ij} - Gamma^sig_{ji} + dH/dPi^{ji}_sig - a^nu_i a^rho_j C^sig_{rho nu}
    """
    a, Pi = s.a, s.Pi
    check_shapes(S, a, Pi)
    P = Pi.unpacked()
    GP = c.GPi.unpacked()  # GP[k, mu, s, t]
    trace = np.einsum("jsji...->si...", GP)
    twist = np.einsum("mji...,mrs,rj...->si...", P, S.C, a.values)
    rho1 = LatticeField(a.grid, trace + dHda(Pi, a, g, S).values - twist)

    Gm = np.einsum("ish...->sih...", c.Ga.values)  # Gm[sig, i, j] = Gamma^sig_{ij}
    dHdP = _inverse_legendre(P, g, S)
    rho2 = Gm - np.swapaxes(Gm, 1, 2) - dHdP - commutator_term(a.values, S)
    return rho1, Curvature.from_full(a.grid, rho2)


def _explicit_legendre_derivative(F: np.ndarray, g: BaseMetric, S: LieAlgebraData, scheme: str) -> np.ndarray:
    """sum_j d/dx^j of dL/dF^sig_{ji} at fixed F, shape (r, m, *N)."""
    M = -np.einsum("jp...,iq...->jipq...", g.ginv, g.ginv) * g.sqrtg
    dM = grad_values(M, g.grid, scheme)  # dM[k, j, i, p, q]
    return np.einsum("jjipq...,npq...,sn->si...", dM, F, S.K)


def lagrangian_connection_residuals(c: LagrangianSectionConnection, a: GaugeField, F: Curvature, g: BaseMetric, S: LieAlgebraData, scheme: str = "order2"):
    """Conditions on a jet-side connection along (a, F).

    rho1^i_sig = d^2L/dx^j dF^sig_{ji} + 1/2 Gamma^mu_{jst} d^2L/dF^mu_{st} dF^sig_{ji}
                 - dL/dF^mu_{ji} a^gam_j C^mu_{gam sig} - dL/da^sig_i
    rho2^mu_{ij} = F^mu_{ij} + Gamma^mu_{ji} - Gamma^mu_{ij} + a^lam_i a^gam_j C^mu_{gam lam}

    The free Lagrangian is quadratic in F with no potential dependence, so
    the second-derivative contraction is the Legendre map applied to
    Gamma_{j..} and the mixed (a, F) and dL/da terms vanish. ``scheme`` only
    sets the stencil for the explicit metric derivative.
    """
    check_shapes(S, a, F)
    Ff = F.unpacked()
    GF = c.GF.unpacked()  # GF[k, mu, s, t]
    lin = np.stack([_legendre(GF[j], g, S) for j in range(a.grid.m)])  # lin[j, sig, p, q]
    contracted = np.einsum("jsji...->si...", lin)
    P = _legendre(Ff, g, S)
    twist = np.einsum("mji...,gj...,mgs->si...", P, a.values, S.C)
    rho1 = LatticeField(a.grid, _explicit_legendre_derivative(Ff, g, S, scheme) + contracted - twist)

    Gm = np.einsum("ish...->sih...", c.Ga.values)
    rho2 = Ff + np.swapaxes(Gm, 1, 2) - Gm + commutator_term(a.values, S)
    return rho1, Curvature.from_full(a.grid, rho2)


# --------------------------------------------------------------------------
# phase-space connection families and the closedness conditions


@dataclass(frozen=True)
class PhasePoint:
    x: np.ndarray   # (m,)
    a: np.ndarray   # (r, m)
    Pi: np.ndarray  # (r, P) packed


Evaluator = Callable[[np.ndarray, np.ndarray, np.ndarray], tuple]


@dataclass(frozen=True)
class PhaseConnectionFamily:
    """``evaluator(x, a, Pi)`` returns (Ga (m, r, m), GPi (m, r, P) packed).

    Evaluators must be pure so that they can be called from several threads.
    """

    evaluator: Evaluator
    step: float = 1e-4


class FiberJacobians(NamedTuple):
    """Fiber derivatives at a point; Pi derivatives are packed-convention and
    sign-extended to full (p, q) with zero diagonal.

    dT_da[i, sig, lam, p]          = dT^i_sig / da^lam_p
    dT_dPi[i, sig, lam, p, q]      = dT^i_sig / dPi^{pq}_lam
    dG_da[sig, i, j, lam, p]       = dGamma^sig_{ij} / da^lam_p
    dG_dPi[sig, i, j, lam, p, q]   = dGamma^sig_{ij} / dPi^{pq}_lam
    """

    dT_da: np.ndarray
    dT_dPi: np.ndarray
    dG_da: np.ndarray
    dG_dPi: np.ndarray


class ClosureResidual(NamedTuple):
    cond1: float
    cond1_symmetric: float
    cond2: float
    cond3: float
    cond3_antisymmetric: float


def _evaluate(fam: PhaseConnectionFamily, x, a, Pi):
    Ga, GPi = fam.evaluator(x, a, Pi)
    Ga = np.asarray(Ga, dtype=float)
    GPi = np.asarray(GPi, dtype=float)
    if not (np.all(np.isfinite(Ga)) and np.all(np.isfinite(GPi))):
        raise ValueError("connection evaluator returned non-finite values")
    trace = np.einsum("jsji->si", unpack_pair(GPi, 2))  # T[sig, i]
    G = np.einsum("ksh->skh", Ga)  # G[sig, i, j]
    return trace.T, G  # T[i, sig]


def _fiber_diff(fam: PhaseConnectionFamily, pt: PhasePoint, which: str, idx, h: float):
    a, Pi = pt.a.copy(), pt.Pi.copy()
    target = a if which == "a" else Pi
    base = target[idx]
    target[idx] = base + h
    Tp, Gp = _evaluate(fam, pt.x, a, Pi)
    target[idx] = base - h
    Tm, Gm = _evaluate(fam, pt.x, a, Pi)
    return (Tp - Tm) / (2 * h), (Gp - Gm) / (2 * h)


def _richardson(fam, pt, which, idx):
    h = fam.step
    T1, G1 = _fiber_diff(fam, pt, which, idx, h)
    T2, G2 = _fiber_diff(fam, pt, which, idx, h / 2)
    return (4 * T2 - T1) / 3, (4 * G2 - G1) / 3


def fiber_jacobians(fam: PhaseConnectionFamily, pt: PhasePoint) -> FiberJacobians:
    r, m = pt.a.shape
    T0, G0 = _evaluate(fam, pt.x, pt.a, pt.Pi)
    dT_da = np.zeros(T0.shape + (r, m))
    dG_da = np.zeros(G0.shape + (r, m))
    for lam in range(r):
        for p in range(m):
            dT, dG = _richardson(fam, pt, "a", (lam, p))
            dT_da[..., lam, p] = dT
            dG_da[..., lam, p] = dG
    P = n_pairs(m)
    dT_dPi = np.zeros(T0.shape + (r, P))
    dG_dPi = np.zeros(G0.shape + (r, P))
    for lam in range(r):
        for k in range(P):
            dT, dG = _richardson(fam, pt, "Pi", (lam, k))
            dT_dPi[..., lam, k] = dT
            dG_dPi[..., lam, k] = dG
    return FiberJacobians(dT_da, unpack_pair(dT_dPi, 3), dG_da, unpack_pair(dG_dPi, 4))


def closure_from_jacobians(J: FiberJacobians) -> ClosureResidual:
    """Evaluate the three closedness conditions from fiber derivatives.

    Condition 1 is reported as printed (every dT/da vanishes) and in its
    symmetric reading dT^i_sig/da^lam_p = dT^p_lam/da^sig_i. Condition 3 is
    reported as printed and fully antisymmetrized in both index pairs.
    """
    dT_da, dT_dPi, dG_da, dG_dPi = J
    cond1 = np.max(np.abs(dT_da), initial=0.0)
    sym = dT_da - np.einsum("plsi->islp", dT_da)
    cond1_sym = np.max(np.abs(sym), initial=0.0)

    # dT^i_sig/dPi^{pq}_lam + dGamma^lam_{pq}/da^sig_i - dGamma^lam_{qp}/da^sig_i
    c2 = dT_dPi + np.einsum("lpqsi->islpq", dG_da) - np.einsum("lqpsi->islpq", dG_da)
    cond2 = np.max(np.abs(c2), initial=0.0)

    # indices (sig, j, i, lam, p, q); D[s, i, j, l, p, q] = dGamma^s_{ij}/dPi^{pq}_l
    D = dG_dPi
    t1 = np.einsum("sjilpq->sjilpq", D)  # dGamma^sig_{ji}/dPi^{pq}_lam
    t2 = np.einsum("lpqsji->sjilpq", D)  # dGamma^lam_{pq}/dPi^{ji}_sig
    t3 = np.einsum("sijlpq->sjilpq", D)  # dGamma^sig_{ij}/dPi^{pq}_lam
    t4 = np.einsum("lqpsji->sjilpq", D)  # dGamma^lam_{qp}/dPi^{ji}_sig
    cond3 = np.max(np.abs(t1 - t2 - t3 - t4), initial=0.0)
    cond3_anti = np.max(np.abs((t1 - t3) - (t2 - t4)), initial=0.0)
    return ClosureResidual(float(cond1), float(cond1_sym), float(cond2), float(cond3), float(cond3_anti))


def closure_residuals(fam: PhaseConnectionFamily, sample_points) -> list[ClosureResidual]:
    return [closure_from_jacobians(fiber_jacobians(fam, pt)) for pt in sample_points]


def constant_family(Ga: np.ndarray, GPi: np.ndarray, step: float = 1e-4) -> PhaseConnectionFamily:
    """Family whose coefficients ignore the fiber point."""
    Ga = np.array(Ga, dtype=float)
    GPi = np.array(GPi, dtype=float)
    return PhaseConnectionFamily(lambda x, a, Pi: (Ga, GPi), step)


def yang_mills_family(g_point: np.ndarray, S: LieAlgebraData, step: float = 1e-4) -> PhaseConnectionFamily:
    """A Hamiltonian-connection family for the free field at a fixed metric value.

    Gamma^sig_{ij} = 1/2 a^nu_i a^rho_j C^sig_{rho nu} + 1/2 dH/dPi^{ij}_sig splits
    the second algebraic condition symmetrically, and Gamma^{st}_{k mu} is
    chosen with trace Gamma^{ji}_{j sig} = Pi^{ji}_mu C^mu_{rho sig} a^rho_j
    (the free field has dH/da = 0).
    """
    g_point = np.asarray(g_point, dtype=float)
    m = g_point.shape[0]
    sqrtg = float(np.sqrt(abs(np.linalg.det(g_point))))

    def evaluator(x, a, Pi):
        P = unpack_pair(Pi, 1)
        dHdP = -np.einsum("lst,si,tj,lm->mij", P, g_point, g_point, S.Kinv) / sqrtg
        G = 0.5 * commutator_term(a, S) + 0.5 * dHdP  # G[sig, i, j]
        Ga = np.einsum("sij->isj", G)
        T = np.einsum("mji,mrs,rj->si", P, S.C, a)  # T[sig, i]
        # Gamma^{st}_{k sig} = (delta_ks T_t - delta_kt T_s)/(m-1) has trace T
        eye = np.eye(m)
        GP = (np.einsum("ks,at->kast", eye, T) - np.einsum("kt,as->kast", eye, T)) / (m - 1)
        return Ga, pack_pair(GP, 2)

    return PhaseConnectionFamily(evaluator, step)
