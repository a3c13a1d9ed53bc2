"""Seeded test fields and exact solutions shared by the suites and tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import LieAlgebraData, build_algebra
from .connection import Curvature, GaugeField
from .dynamics import BaseMetric, Momentum, PhaseSection
from .lattice import Grid, TrigSeries, random_series


def convergence_slope(sizes, errors) -> float:
    """Least-squares slope of -log(error) against log(N)."""
    x = np.log(np.asarray(sizes, dtype=float))
    y = -np.log(np.asarray(errors, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def abelian(r: int = 3, K_diag=None) -> LieAlgebraData:
    return build_algebra("custom", np.ones(r) if K_diag is None else K_diag, np.zeros((r, r, r)))


@dataclass(frozen=True)
class PlaneWave:
    """a^0_1 = sin(x^0 - x^2) with every other component zero.

    It solves the abelian field equations for the flat metric
    diag(-1, 1, 1), where x^0 is the time-like axis. The grid uses twice as
    many nodes along x^2 as along x^0 and x^1; with equal spacings the
    centered stencils along x^0 and x^2 would cancel exactly and no
    convergence rate could be observed.
    """

    grid: Grid
    metric: BaseMetric
    a: GaugeField
    F: Curvature


def plane_wave(n: int, r: int = 3) -> PlaneWave:
    grid = Grid((n, n, 2 * n))
    x0, _, x2 = grid.coords()
    phase = x0 - x2
    a = np.zeros((r, 3) + grid.N)
    a[0, 1] = np.sin(phase)
    # F_{01} = d_0 a_1 = cos, F_{12} = -d_2 a_1 = cos
    pattern = np.zeros((r, 3, 3))
    pattern[0, 0, 1] = pattern[0, 1, 2] = 1.0
    pattern = pattern - np.swapaxes(pattern, 1, 2)
    F = pattern[..., None, None, None] * np.cos(phase)
    return PlaneWave(
        grid,
        BaseMetric.flat(grid, [-1.0, 1.0, 1.0]),
        GaugeField(grid, a),
        Curvature.from_full(grid, F),
    )


def random_potential_series(grid: Grid, S: LieAlgebraData, seed: int, kmax: int = 1, amplitude: float = 0.5) -> TrigSeries:
    return random_series(grid, (S.r, grid.m), seed, kmax, amplitude)


def random_gauge_field(grid: Grid, S: LieAlgebraData, seed: int, kmax: int = 1, amplitude: float = 0.5) -> GaugeField:
    return GaugeField(grid, random_potential_series(grid, S, seed, kmax, amplitude).on(grid))


def random_curvature(grid: Grid, S: LieAlgebraData, seed: int, kmax: int = 1, amplitude: float = 0.5) -> Curvature:
    P = grid.m * (grid.m - 1) // 2
    return Curvature(grid, random_series(grid, (S.r, P), seed, kmax, amplitude).on(grid))


def random_momentum(grid: Grid, S: LieAlgebraData, seed: int, kmax: int = 1, amplitude: float = 0.5) -> Momentum:
    P = grid.m * (grid.m - 1) // 2
    return Momentum(grid, random_series(grid, (S.r, P), seed, kmax, amplitude).on(grid))


def random_phase_section(grid: Grid, S: LieAlgebraData, seed: int, kmax: int = 1, amplitude: float = 0.5) -> PhaseSection:
    ss = np.random.SeedSequence(seed).spawn(2)
    return PhaseSection(
        random_gauge_field(grid, S, int(ss[0].generate_state(1)[0]), kmax, amplitude),
        random_momentum(grid, S, int(ss[1].generate_state(1)[0]), kmax, amplitude),
    )


def exact_curvature(series: TrigSeries, grid: Grid, S: LieAlgebraData) -> np.ndarray:
    """Unpacked curvature of an analytic potential, derivatives taken exactly."""
    pts = grid.points()
    a = series.at(pts)
    D = series.gradient_at(pts)  # D[k, mu, i]
    curl = np.einsum("imj...->mij...", D)
    curl = curl - np.swapaxes(curl, 1, 2)
    comm = np.einsum("ni...,rj...,mrn->mij...", a, a, S.C)
    return curl - comm


# --------------------------------------------------------------------------
# point samples


def random_spin_samples(n: int, seed: int, scale: float = 1.0) -> np.ndarray:
    """Antisymmetric w[s, i, beta, alpha] for n samples."""
    rng = np.random.default_rng(seed)
    w = rng.standard_normal((n, 3, 3, 3)) * scale
    return w - np.swapaxes(w, 2, 3)


def well_conditioned_frames(n: int, rng: np.random.Generator, low: float = 0.5, high: float = 2.0) -> np.ndarray:
    """Q1 diag(s) Q2 with s uniform in [low, high] and Haar-like orthogonal factors."""

    def orth():
        q, r = np.linalg.qr(rng.standard_normal((n, 3, 3)))
        return q * np.sign(np.diagonal(r, axis1=1, axis2=2))[:, None, :]

    s = rng.uniform(low, high, size=(n, 3))
    return np.einsum("nij,nj,njk->nik", orth(), s, orth())


def random_jet_samples(n: int, seed: int):
    """Triad samples e[s, mu, i] with bounded conditioning and packed E[s, mu, (ij)]."""
    rng = np.random.default_rng(seed)
    e = well_conditioned_frames(n, rng)
    E = rng.standard_normal((n, 3, 3))
    return e, E
