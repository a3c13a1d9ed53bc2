import numpy as np
import pytest

from jetfield.algebra import build_algebra
from jetfield.connection import Curvature, GaugeField, covariant_divergence, curvature
from jetfield.dynamics import (
    BaseMetric,
    MetricError,
    Momentum,
    PhaseSection,
    dH_da,
    euler_lagrange_residual,
    hamiltonian_action,
    hamiltonian_action_density,
    hamiltonian_density,
    hdd_residuals,
    inverse_legendre,
    lagrangian_action,
    lagrangian_density,
    lagrangian_residuals,
    legendre,
    pairing_density,
    residual_pairing,
)
from jetfield.lattice import Grid, integrate
from jetfield.scenarios import (
    convergence_slope,
    plane_wave,
    random_curvature,
    random_gauge_field,
    random_momentum,
    random_phase_section,
)

from conftest import maxabs


def single(cls, grid, mu, i, j, value, r=3):
    full = np.zeros((r, grid.m, grid.m) + grid.N)
    full[mu, i, j], full[mu, j, i] = value, -value
    return cls.from_full(grid, full)


def zero_section(grid, r=3):
    return PhaseSection(GaugeField.zeros(grid, r), Momentum(grid, np.zeros((r, grid.m * (grid.m - 1) // 2) + grid.N)))


@pytest.fixture
def flat(grid8):
    return BaseMetric.flat(grid8)


# densities and the Legendre map on single components


def test_zero_inputs_give_zero_densities(grid8, so3, flat):
    F = Curvature.zeros(grid8, 3)
    assert np.all(lagrangian_density(F, flat, so3) == 0.0)
    assert np.all(legendre(F, flat, so3).values == 0.0)
    P = legendre(F, flat, so3)
    assert np.all(hamiltonian_density(P, flat, so3) == 0.0)
    assert np.all(inverse_legendre(P, flat, so3).values == 0.0)


def test_single_component_lagrangian(grid8, so3, flat):
    c = 1.7
    L = lagrangian_density(single(Curvature, grid8, 0, 0, 1, c), flat, so3)
    assert np.allclose(L, -0.5 * c * c * so3.K[0, 0], rtol=1e-15, atol=0)


def test_indefinite_algebra_metric_flips_the_sign(grid8, so21, flat):
    L = lagrangian_density(single(Curvature, grid8, 2, 0, 1, 1.0), flat, so21)
    assert np.allclose(L, 0.5, rtol=1e-15, atol=0)


def test_single_component_legendre(grid8, so3, flat):
    c = 0.8
    P = legendre(single(Curvature, grid8, 0, 0, 1, c), flat, so3)
    assert np.allclose(P.component(0, 0, 1), -c, rtol=1e-15, atol=0)
    assert np.count_nonzero(P.values) == grid8.n_nodes


def test_legendre_with_stretched_metric(grid8, so3):
    g = BaseMetric.flat(grid8, [4.0, 1.0, 1.0])
    P = legendre(single(Curvature, grid8, 0, 0, 1, 1.0), g, so3)
    # sqrt(g) = 2 and g^{00} = 1/4
    assert np.allclose(P.component(0, 0, 1), -0.5, rtol=1e-15, atol=0)


def test_single_component_hamiltonian(grid8, so3, flat):
    p = 2.5
    H = hamiltonian_density(single(Momentum, grid8, 0, 0, 1, p), flat, so3)
    assert np.allclose(H, -0.5 * p * p, rtol=1e-15, atol=0)


def test_single_component_inverse_legendre(grid8, so3, flat):
    c = 0.3
    F = inverse_legendre(single(Momentum, grid8, 0, 0, 1, -c), flat, so3)
    assert np.allclose(F.component(0, 0, 1), c, rtol=1e-15, atol=0)


@pytest.mark.parametrize("kind", ["so3", "so21"])
@pytest.mark.parametrize("signature", [None, [-1.0, 1.0, 1.0]])
def test_legendre_roundtrip_on_curved_metrics(grid8, kind, signature):
    S = build_algebra(kind)
    for seed in range(5):
        g = BaseMetric.smooth(grid8, 100 + seed, signature)
        F = random_curvature(grid8, S, seed)
        assert maxabs(inverse_legendre(legendre(F, g, S), g, S).values - F.values) <= 1e-13


def test_hamiltonian_is_the_legendre_transform(grid8, so21):
    g = BaseMetric.smooth(grid8, 3, [-1.0, 1.0, 1.0])
    F = random_curvature(grid8, so21, 4)
    P = legendre(F, g, so21)
    gap = hamiltonian_density(P, g, so21) + lagrangian_density(F, g, so21) - 0.5 * pairing_density(P, F)
    assert maxabs(gap) <= 1e-13


def test_densities_are_quadratic(grid8, so3):
    g = BaseMetric.smooth(grid8, 5)
    F = random_curvature(grid8, so3, 6)
    P = random_momentum(grid8, so3, 7)
    assert maxabs(lagrangian_density(F * 3.0, g, so3) - 9 * lagrangian_density(F, g, so3)) <= 1e-12
    assert maxabs(hamiltonian_density(P * 3.0, g, so3) - 9 * hamiltonian_density(P, g, so3)) <= 1e-12


# field equations


def test_free_hamiltonian_has_no_potential_dependence(grid8, so3, flat):
    s = random_phase_section(grid8, so3, 1)
    d = dH_da(s.Pi, s.a, flat, so3)
    assert d.values.shape == s.a.values.shape and np.all(d.values == 0.0)


def test_zero_section_has_zero_residuals(grid8, so3, flat):
    R1, R2 = hdd_residuals(zero_section(grid8), flat, so3)
    assert np.all(R1.values == 0.0) and np.all(R2.values == 0.0)
    assert np.all(euler_lagrange_residual(GaugeField.zeros(grid8, 3), flat, so3).values == 0.0)


@pytest.mark.parametrize("scheme", ["order2", "order4"])
def test_legendre_section_satisfies_the_first_equation(grid8, so3, scheme):
    g = BaseMetric.smooth(grid8, 9)
    a = random_gauge_field(grid8, so3, 10)
    P = legendre(curvature(a, so3, scheme), g, so3)
    R1, R2 = hdd_residuals(PhaseSection(a, P), g, so3, scheme)
    assert maxabs(R1.values) <= 1e-13
    assert maxabs(R2.values - euler_lagrange_residual(a, g, so3, scheme).values) <= 1e-13


def test_free_hook_reduces_the_second_equation_to_a_divergence(grid8, so3, flat):
    s = random_phase_section(grid8, so3, 2)
    _, R2 = hdd_residuals(s, flat, so3)
    assert np.array_equal(R2.values, -covariant_divergence(s.Pi, s.a, so3).values)


@pytest.mark.parametrize("scheme,target,band", [("order2", 2.0, 0.2), ("order4", 4.0, 0.4)])
def test_plane_wave_residuals_converge(scheme, target, band, maxwell):
    sizes = (8, 16, 32)
    r2, el = [], []
    for n in sizes:
        pw = plane_wave(n)
        P = legendre(curvature(pw.a, maxwell, scheme), pw.metric, maxwell)
        _, R2 = hdd_residuals(PhaseSection(pw.a, P), pw.metric, maxwell, scheme)
        r2.append(maxabs(R2.values))
        el.append(maxabs(euler_lagrange_residual(pw.a, pw.metric, maxwell, scheme).values))
    assert abs(convergence_slope(sizes, r2) - target) <= band
    assert abs(convergence_slope(sizes, el) - target) <= band


def test_plane_wave_is_an_exact_continuum_solution(maxwell):
    pw = plane_wave(16)
    assert maxabs(legendre(pw.F, pw.metric, maxwell).values) > 0.5
    # the analytic F is the curl of the analytic potential
    x0, _, x2 = pw.grid.coords()
    assert maxabs(pw.F.component(0, 0, 1) - np.cos(x0 - x2)) == 0.0


# actions


def test_zero_actions(grid8, so3, flat):
    assert hamiltonian_action(zero_section(grid8), flat, so3) == 0.0
    assert lagrangian_action(GaugeField.zeros(grid8, 3), Curvature.zeros(grid8, 3), flat, so3) == 0.0


def test_constant_abelian_section_density_is_minus_h(grid8, maxwell, flat, rng):
    Pc = rng.standard_normal((3, 3))[..., None, None, None] * np.ones(grid8.N)
    ac = rng.standard_normal((3, 3))[..., None, None, None] * np.ones(grid8.N)
    s = PhaseSection(GaugeField(grid8, ac), Momentum(grid8, Pc))
    assert maxabs(hamiltonian_action_density(s, flat, maxwell) + hamiltonian_density(s.Pi, flat, maxwell)) <= 1e-15


def test_holonomic_lagrangian_action_is_the_integral_of_l(grid8, so3):
    g = BaseMetric.smooth(grid8, 12)
    a = random_gauge_field(grid8, so3, 13)
    F = curvature(a, so3)
    ref = integrate(lagrangian_density(F, g, so3), grid8)
    assert abs(lagrangian_action(a, F, g, so3) - ref) <= 1e-12 * abs(ref)


@pytest.mark.parametrize("scheme", ["order2", "order4"])
def test_action_gradients_match_residuals(grid8, so21, scheme):
    g = BaseMetric.smooth(grid8, 14, [-1.0, 1.0, 1.0])
    s = random_phase_section(grid8, so21, 15)
    F = random_curvature(grid8, so21, 16)
    R1, R2 = hdd_residuals(s, g, so21, scheme)
    gF, ga = lagrangian_residuals(s.a, F, g, so21, scheme)
    eps = 1e-5
    for k in range(4):
        da = random_gauge_field(grid8, so21, 200 + k, 1, 1.0)
        dP = random_momentum(grid8, so21, 300 + k, 1, 1.0)
        dF = Curvature(grid8, dP.values)
        fd = (hamiltonian_action(PhaseSection(s.a + da * eps, s.Pi + dP * eps), g, so21, scheme)
              - hamiltonian_action(PhaseSection(s.a - da * eps, s.Pi - dP * eps), g, so21, scheme)) / (2 * eps)
        pr = residual_pairing([(R1, dP), (R2, da)], grid8)
        assert abs(fd - pr) <= 1e-6 * abs(pr)
        fd = (lagrangian_action(s.a + da * eps, F + dF * eps, g, so21, scheme)
              - lagrangian_action(s.a - da * eps, F - dF * eps, g, so21, scheme)) / (2 * eps)
        pr = residual_pairing([(gF, dF), (ga, da)], grid8)
        assert abs(fd - pr) <= 1e-6 * abs(pr)


# metric validation


def test_metric_inverse_identity(grid8):
    assert BaseMetric.smooth(grid8, 1).identity_residual() <= 1e-14


def test_degenerate_metric_rejected(grid8):
    with pytest.raises(MetricError, match="degenerate"):
        BaseMetric.flat(grid8, [1.0, 0.0, 1.0])


def test_asymmetric_metric_rejected(grid8):
    g = np.array(BaseMetric.flat(grid8).g)
    g[0, 1] += 0.1
    with pytest.raises(MetricError, match="symmetric"):
        BaseMetric.from_values(grid8, g)


def test_section_parts_must_share_a_grid(grid8, so3):
    other = Grid.cubic(4)
    with pytest.raises(ValueError):
        PhaseSection(GaugeField.zeros(grid8, 3), random_momentum(other, so3, 0))


@pytest.mark.parametrize("signature", [None, [-1.0, 1.0, 1.0]])
def test_smooth_metric_keeps_its_signature(grid8, signature):
    for seed in range(30):
        g = BaseMetric.smooth(grid8, seed, signature, amplitude=0.9)
        assert g.sigmag == (1 if signature is None else -1)


def test_smooth_metric_amplitude_must_stay_below_the_signature(grid8):
    with pytest.raises(MetricError, match="amplitude"):
        BaseMetric.smooth(grid8, 0, [-1.0, 1.0, 1.0], amplitude=1.0)
