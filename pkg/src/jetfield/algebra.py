"""Lie-algebra data: structure constants and an Ad-invariant metric.

Greek algebra indices run 0..r-1. The structure constants are stored as
``C[mu, rho, nu] = C^mu_{rho nu}``, so that ``[e_rho, e_nu] = C^mu_{rho nu} e_mu``.
For the three-dimensional algebras so(3) and so(2,1) the constants are tied
to the metric through

    C^mu_{lam sig} = 1/2 sqrt|det K| K^{mu nu} eps_{nu lam sig}

with ``eps[0, 1, 2] = +1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

ALGEBRA_TOL = 1e-12


def _levi_civita() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for perm in permutations(range(3)):
        # sign of the permutation by counting inversions
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if perm[i] > perm[j])
        eps[perm] = -1.0 if inv % 2 else 1.0
    eps.setflags(write=False)
    return eps


EPS = _levi_civita()


class AlgebraError(ValueError):
    """Raised when algebra data fails validation."""


@dataclass(frozen=True)
class LieAlgebraData:
    kind: str
    r: int
    C: np.ndarray
    K: np.ndarray
    Kinv: np.ndarray
    sqrtK: float
    sigmaK: int

    def bracket(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """[x, y]^mu = C^mu_{rho nu} x^rho y^nu, broadcasting over trailing axes."""
        return np.einsum("mrn,r...,n...->m...", self.C, x, y)

    def ad(self, x: np.ndarray) -> np.ndarray:
        """Matrix of ad_x: (ad_x)^mu_nu = C^mu_{sig nu} x^sig."""
        return np.einsum("msn,s...->mn...", self.C, x)


def _frozen(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.setflags(write=False)
    return out


def _as_metric(K_diag, r: int | None) -> np.ndarray:
    K = np.asarray(K_diag, dtype=float)
    if K.ndim == 1:
        K = np.diag(K)
    if K.ndim != 2 or K.shape[0] != K.shape[1]:
        raise AlgebraError(f"metric must be a vector of diagonal entries or a square matrix, got shape {K.shape}")
    if r is not None and K.shape[0] != r:
        raise AlgebraError(f"metric dimension {K.shape[0]} does not match algebra dimension {r}")
    if not np.allclose(K, K.T, rtol=0.0, atol=ALGEBRA_TOL):
        raise AlgebraError("metric K must be symmetric")
    return K


def so3_like_constants(K: np.ndarray) -> np.ndarray:
    sqrtK = np.sqrt(abs(np.linalg.det(K)))
    Kinv = np.linalg.inv(K)
    return 0.5 * sqrtK * np.einsum("mn,nls->mls", Kinv, EPS)


def build_algebra(kind: str = "so3", K_diag=None, C_custom=None) -> LieAlgebraData:
    """Build and validate algebra data.

    ``kind`` is one of ``"so3"``, ``"so21"`` or ``"custom"``. ``K_diag`` is
    either the diagonal of the metric or a full symmetric matrix; it defaults
    to the identity (so3) or diag(1, 1, -1) (so21). Custom algebras need
    ``C_custom`` with shape (r, r, r) and must pass the Jacobi and
    Ad-invariance checks.
    """
    if kind not in ("so3", "so21", "custom"):
        raise AlgebraError(f"unknown algebra kind {kind!r}")

    if kind == "custom":
        if C_custom is None:
            raise AlgebraError("custom algebra requires C_custom")
        C = np.asarray(C_custom, dtype=float)
        if C.ndim != 3 or len(set(C.shape)) != 1:
            raise AlgebraError(f"C_custom must have shape (r, r, r), got {C.shape}")
        r = C.shape[0]
        K = _as_metric(np.ones(r) if K_diag is None else K_diag, r)
    else:
        r = 3
        default = [1.0, 1.0, 1.0] if kind == "so3" else [1.0, 1.0, -1.0]
        K = _as_metric(default if K_diag is None else K_diag, r)
        if not np.allclose(K, np.diag(np.diag(K)), rtol=0.0, atol=0.0):
            raise AlgebraError(f"{kind} requires a diagonal metric")
        n_neg = int(np.sum(np.diag(K) < 0))
        if kind == "so3" and n_neg != 0:
            raise AlgebraError("so3 requires signature (+,+,+)")
        if kind == "so21" and n_neg != 1:
            raise AlgebraError("so21 requires signature (+,+,-)")

    det = np.linalg.det(K)
    if abs(det) < ALGEBRA_TOL:
        raise AlgebraError(f"degenerate metric K: det = {det:.3e}")
    if kind != "custom":
        C = so3_like_constants(K)

    S = LieAlgebraData(
        kind=kind,
        r=r,
        C=_frozen(C),
        K=_frozen(K),
        Kinv=_frozen(np.linalg.inv(K)),
        sqrtK=float(np.sqrt(abs(det))),
        sigmaK=1 if det > 0 else -1,
    )

    anti = float(np.max(np.abs(S.C + S.C.transpose(0, 2, 1)), initial=0.0))
    if anti > ALGEBRA_TOL:
        raise AlgebraError(f"structure constants not antisymmetric: residual {anti:.3e}")
    jac = jacobi_residual(S)
    if jac > ALGEBRA_TOL:
        raise AlgebraError(f"Jacobi identity violated: residual {jac:.3e}")
    adi = adinvariance_residual(S)
    if adi > ALGEBRA_TOL:
        raise AlgebraError(f"metric is not Ad-invariant: residual {adi:.3e}")
    return S


def jacobi_residual(S: LieAlgebraData) -> float:
    """Max-abs of the cyclic Jacobi sum over all free indices."""
    C = S.C
    t1 = np.einsum("msl,srn->mlrn", C, C)  # C^mu_{sig lam} C^sig_{rho nu}
    t2 = np.einsum("msr,snl->mlrn", C, C)  # C^mu_{sig rho} C^sig_{nu lam}
    t3 = np.einsum("msn,slr->mlrn", C, C)  # C^mu_{sig nu} C^sig_{lam rho}
    return float(np.max(np.abs(t1 + t2 + t3), initial=0.0))


def adinvariance_residual(S: LieAlgebraData) -> float:
    """Max-abs of T_{rho mu sig} + T_{rho sig mu}, T_{rho mu sig} = C^lam_{rho mu} K_{lam sig}."""
    T = np.einsum("lrm,ls->rms", S.C, S.K)
    return float(np.max(np.abs(T + T.transpose(0, 2, 1)), initial=0.0))


def structure_tensor(S: LieAlgebraData) -> np.ndarray:
    """Fully lowered constants C_{sig lam mu} = C^nu_{lam mu} K_{nu sig}."""
    return np.einsum("nlm,ns->slm", S.C, S.K)
