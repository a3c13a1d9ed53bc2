import numpy as np
import pytest

from jetfield.algebra import build_algebra
from jetfield.connection import Curvature, GaugeField, curvature
from jetfield.dynamics import BaseMetric, PhaseSection, hamiltonian_density, hdd_residuals, lagrangian_density, legendre, pairing_density
from jetfield.gauge import (
    GaugeMapError,
    compose,
    gauge_a,
    gauge_F,
    gauge_Pi,
    gauge_spin,
    gauge_triad,
    identity_map,
    inverse,
    make_gauge_map,
    metric_preservation_residual,
    pointwise_identity_residual,
    rotation_closed_form,
)
from jetfield.lattice import Grid, TrigSeries, random_series
from jetfield.scenarios import convergence_slope, random_curvature, random_gauge_field, random_momentum, random_potential_series
from jetfield.triad import TriadData, induced_metric, to_spin_connection, to_triad

from conftest import maxabs


def generator(grid, seed, amplitude=0.5, r=3):
    return random_series(grid, (r,), seed, 1, amplitude)


def constant_generator(grid, xi):
    xi = np.asarray(xi, float)
    m = grid.m
    return TrigSeries(np.zeros((1, m)), xi[:, None], np.zeros((len(xi), 1)), grid.lengths)


@pytest.fixture(params=["so3", "so21"])
def S(request):
    return build_algebra(request.param)


def test_zero_generator_is_the_identity(grid8, so3):
    G = make_gauge_map(constant_generator(grid8, [0, 0, 0]), so3, grid=grid8)
    eye = np.eye(3)[..., None, None, None]
    assert np.all(G.Ad == eye) and np.all(G.AdInv == eye) and np.all(G.eta == 0.0)


def test_constant_generator_has_no_maurer_cartan_part(grid8, so3):
    G = make_gauge_map(constant_generator(grid8, [0.3, -1.2, 0.7]), so3, grid=grid8)
    assert np.all(G.eta == 0.0)
    assert maxabs(G.Ad - G.Ad[..., :1, :1, :1]) == 0.0


def test_adjoint_matches_the_closed_form_rotation(so3):
    g = Grid.cubic(8)
    t = 2.0 * np.sin(g.coords()[0]) + 0.5
    series = TrigSeries(np.array([[0.0, 0, 0], [1.0, 0, 0]]), np.array([[0.5, 0.0], [0, 0], [0, 0]]),
                        np.array([[0.0, 2.0], [0, 0], [0, 0]]), g.lengths)
    G = make_gauge_map(series, so3, grid=g)
    assert maxabs(G.Ad - rotation_closed_form(t, so3, axis=0)) <= 1e-13


def test_ad_pairs_and_metric_preservation(grid8, S):
    G = make_gauge_map(generator(grid8, 1), S, grid=grid8)
    assert pointwise_identity_residual(G) <= 1e-12
    assert metric_preservation_residual(G, S) <= 1e-12


def test_identity_map_leaves_fields_alone(grid8, so3):
    G = identity_map(so3, 3, grid8.N)
    a = random_gauge_field(grid8, so3, 2)
    F = random_curvature(grid8, so3, 3)
    P = random_momentum(grid8, so3, 4)
    e = to_triad(P, so3)
    w = to_spin_connection(a, so3)
    assert np.array_equal(gauge_a(a, G).values, a.values)
    assert np.array_equal(gauge_F(F, G).values, F.values)
    assert np.array_equal(gauge_Pi(P, G).values, P.values)
    assert np.array_equal(gauge_triad(e, G).values, e.values)
    assert maxabs(gauge_spin(w, G, so3).values - w.values) == 0.0


def test_zero_potential_becomes_pure_gauge(grid8, so3):
    G = make_gauge_map(generator(grid8, 5), so3, grid=grid8)
    assert np.array_equal(gauge_a(GaugeField.zeros(grid8, 3), G).values, G.eta)
    assert np.all(gauge_F(Curvature.zeros(grid8, 3), G).values == 0.0)


def test_composition_and_inverse(grid8, S):
    G1 = make_gauge_map(generator(grid8, 6), S, grid=grid8)
    G2 = make_gauge_map(generator(grid8, 7), S, grid=grid8)
    a = random_gauge_field(grid8, S, 8)
    two_steps = gauge_a(gauge_a(a, G2), G1)
    assert maxabs(two_steps.values - gauge_a(a, compose(G1, G2)).values) <= 1e-12
    assert maxabs(gauge_a(gauge_a(a, G1), inverse(G1)).values - a.values) <= 1e-12


def test_negated_generator_undoes_the_map(grid8, so3):
    xi = generator(grid8, 9)
    a = random_gauge_field(grid8, so3, 10)
    back = gauge_a(gauge_a(a, make_gauge_map(xi, so3, grid=grid8)), make_gauge_map(-xi, so3, grid=grid8))
    assert maxabs(back.values - a.values) <= 1e-12


def test_invariant_densities_and_equivariance(grid8, S):
    g = BaseMetric.smooth(grid8, 11, [-1.0, 1.0, 1.0])
    G = make_gauge_map(generator(grid8, 12), S, grid=grid8)
    F = random_curvature(grid8, S, 13)
    P = random_momentum(grid8, S, 14)
    assert maxabs(hamiltonian_density(gauge_Pi(P, G), g, S) - hamiltonian_density(P, g, S)) <= 1e-12
    assert maxabs(lagrangian_density(gauge_F(F, G), g, S) - lagrangian_density(F, g, S)) <= 1e-12
    assert maxabs(pairing_density(gauge_Pi(P, G), gauge_F(F, G)) - pairing_density(P, F)) <= 1e-12
    assert maxabs(gauge_Pi(legendre(F, g, S), G).values - legendre(gauge_F(F, G), g, S).values) <= 1e-12


def test_triad_side_laws(grid8, S):
    G = make_gauge_map(generator(grid8, 15), S, grid=grid8)
    e = TriadData(grid8, np.eye(3)[..., None, None, None] + random_series(grid8, (3, 3), 16, 1, 0.3).on(grid8))
    assert maxabs(induced_metric(gauge_triad(e, G), S).g - induced_metric(e, S).g) <= 1e-12
    a = random_gauge_field(grid8, S, 17)
    lhs = gauge_spin(to_spin_connection(a, S), G, S)
    rhs = to_spin_connection(gauge_a(a, G), S)
    assert maxabs(lhs.values - rhs.values) <= 1e-12


@pytest.mark.slow
def test_curvature_and_residuals_are_covariant_under_refinement(so3):
    sizes = (16, 32, 64)
    ferr, rerr = [], []
    for n in sizes:
        g = Grid.cubic(n)
        a = GaugeField(g, random_potential_series(g, so3, 18, 1, 0.3).on(g))
        G = make_gauge_map(generator(g, 19, 0.3), so3, grid=g)
        ferr.append(maxabs(curvature(gauge_a(a, G), so3).values - gauge_F(curvature(a, so3), G).values))
        metric = BaseMetric.flat(g)
        s = PhaseSection(a, random_momentum(g, so3, 20, 1, 0.3))
        R1, R2 = hdd_residuals(s, metric, so3)
        T1, T2 = hdd_residuals(PhaseSection(gauge_a(a, G), gauge_Pi(s.Pi, G)), metric, so3)
        rerr.append(max(maxabs(T1.values - gauge_F(R1, G).values),
                        maxabs(T2.values - np.einsum("nm...,ni...->mi...", G.Ad, R2.values))))
    assert abs(convergence_slope(sizes, ferr) - 2.0) <= 0.2
    assert abs(convergence_slope(sizes, rerr) - 2.0) <= 0.2


def test_oversized_generator_rejected(grid8, so3):
    with pytest.raises(GaugeMapError, match="exceeds"):
        make_gauge_map(constant_generator(grid8, [100.0, 0, 0]), so3, grid=grid8)


def test_generator_shape_and_location_checked(grid8, so3):
    with pytest.raises(ValueError):
        make_gauge_map(random_series(grid8, (2,), 0, 1, 1.0), so3, grid=grid8)
    with pytest.raises(ValueError):
        make_gauge_map(generator(grid8, 0), so3)


def test_map_at_scattered_points(so3, rng):
    g = Grid.cubic(8)
    pts = rng.uniform(0, 2 * np.pi, size=(3, 50))
    G = make_gauge_map(generator(g, 21), so3, points=pts)
    assert G.node_shape == (50,)
    assert pointwise_identity_residual(G) <= 1e-12
