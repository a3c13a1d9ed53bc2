"""Verification suites run by the CLI.

Each suite returns a list of checks. A bound check passes when its measured
residual is at most the tolerance; a slope check passes when the least-squares
convergence slope lies within ``band`` of ``target``. Info checks carry a
value but no verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import algebra as alg
from .config import ConfigError, ScenarioConfig
from .connection import (
    Curvature,
    GaugeField,
    a_from_f_coordinates,
    contact_residual,
    covariant_divergence,
    curvature,
    f_from_a_coordinates,
)
from .dynamics import (
    BaseMetric,
    PhaseSection,
    euler_lagrange_residual,
    hamiltonian_action,
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
from .gauge import (
    compose,
    gauge_a,
    gauge_F,
    gauge_Pi,
    gauge_spin,
    gauge_triad,
    inverse,
    make_gauge_map,
    metric_preservation_residual,
    pointwise_identity_residual,
)
from .lattice import Grid, LatticeField, integrate, random_series, reduce
from .multimomentum import (
    PhasePoint,
    closure_residuals,
    connection_from_section,
    constant_family,
    hamiltonian_connection_residuals,
    lagrangian_connection_residuals,
    lagrangian_lift,
    yang_mills_family,
)
from .scenarios import (
    abelian,
    convergence_slope,
    exact_curvature,
    plane_wave,
    random_curvature,
    random_gauge_field,
    random_jet_samples,
    random_momentum,
    random_phase_section,
    random_potential_series,
    random_spin_samples,
)
from .triad import (
    TriadData,
    TriadJetSample,
    ec_from_hdd,
    ec_residuals,
    free_field_terms,
    from_spin_connection,
    from_triad,
    induced_metric,
    metricity_residual,
    prop55_residual,
    spin_curvature_from_field_strength,
    spin_curvature_full,
    spin_from_triad_jet,
    to_spin_connection,
    to_triad,
    torsion_residual,
)


@dataclass
class Check:
    name: str
    kind: str  # "bound" | "slope" | "info"
    value: float
    tolerance: Optional[float] = None
    l2: Optional[float] = None
    N: str = ""
    grids: list = field(default_factory=list)
    errors: list = field(default_factory=list)
    l2s: list = field(default_factory=list)
    target: Optional[float] = None
    passed: Optional[bool] = None

    def as_dict(self) -> dict:
        d = {"name": self.name, "kind": self.kind, "value": float(self.value)}
        if self.kind == "bound":
            d.update(tolerance=self.tolerance, max_abs=float(self.value), l2=self.l2, N=self.N)
        elif self.kind == "slope":
            d.update(slope=float(self.value), target=self.target, band=self.tolerance,
                     grids=list(self.grids), errors=[float(e) for e in self.errors],
                     l2=[float(e) for e in self.l2s])
        d["passed"] = self.passed
        return d


@dataclass
class SuiteResult:
    name: str
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.passed is not None)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": [c.as_dict() for c in self.checks]}


def grid_label(grid: Grid) -> str:
    return str(grid.N[0]) if len(set(grid.N)) == 1 else "x".join(map(str, grid.N))


class Context:
    """Objects shared by the suites, built once from the configuration."""

    def __init__(self, cfg: ScenarioConfig):
        self.cfg = cfg
        try:
            a = cfg.algebra
            self.S = alg.build_algebra(a.kind, a.K, a.C)
            self.grid = Grid(tuple(cfg.grid.N), None if cfg.grid.h is None else tuple(cfg.grid.h))
            self.metric = self.make_metric(self.grid)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if "triad-map" in cfg.suites and not self.is3d:
            raise ConfigError(f"triad-map needs m = r = 3, got m = {self.grid.m}, r = {self.S.r}")
        self.suite = ""

    @property
    def is3d(self) -> bool:
        return self.S.r == 3 and self.grid.m == 3

    def seed(self, offset: int) -> int:
        return self.cfg.seed + offset

    def make_metric(self, grid: Grid) -> BaseMetric:
        mc = self.cfg.metric
        if mc.signature is not None and len(mc.signature) != grid.m:
            raise ConfigError(f"metric signature needs {grid.m} entries")
        if mc.kind == "flat":
            return BaseMetric.flat(grid, mc.signature)
        return BaseMetric.smooth(grid, self.cfg.derived_seed(mc.seed, 1), mc.signature, mc.amplitude)

    def field_seed(self, offset: int) -> int:
        return self.cfg.derived_seed(self.cfg.field.seed, 100) + offset

    def section(self, k: int, grid: Optional[Grid] = None) -> PhaseSection:
        f = self.cfg.field
        return random_phase_section(grid or self.grid, self.S, self.field_seed(k), f.kmax, f.amplitude)

    def tol(self, check: str, default: float) -> float:
        t = self.cfg.tolerances
        return t.get(f"{self.suite}.{check}", t.get(self.suite, default))

    def bound(self, name: str, value: float, default_tol: float, l2: Optional[float] = None, grid: Optional[Grid] = None) -> Check:
        tol = self.tol(name, default_tol)
        return Check(name, "bound", float(value), tol, None if l2 is None else float(l2),
                     grid_label(grid) if grid is not None else "", passed=bool(value <= tol))

    def slope(self, name: str, grids, stats, target: float) -> Check:
        """``stats`` holds one (max-abs, L2) pair per grid; the slope uses max-abs."""
        band = self.tol(name, 0.1 * target)
        errors = [e for e, _ in stats]
        s = convergence_slope(grids, errors)
        return Check(name, "slope", s, band, grids=list(grids), errors=errors, l2s=[x for _, x in stats],
                     target=target, passed=bool(abs(s - target) <= band))

    @property
    def order(self) -> float:
        return 2.0 if self.cfg.scheme == "order2" else 4.0


def _max(*arrays) -> float:
    return max(float(np.max(np.abs(a), initial=0.0)) for a in arrays)


def _field_max(f) -> float:
    return reduce(f, "max-abs")


def _stats(f, grid: Optional[Grid] = None) -> tuple:
    return reduce(f, "max-abs", grid), reduce(f, "L2", grid)


# --------------------------------------------------------------------------
# suites


def suite_identities(ctx: Context) -> list:
    S = ctx.S
    checks = []
    C = alg.structure_tensor(S)
    anti = _max(C + C.transpose(1, 0, 2), C + C.transpose(0, 2, 1), C + C.transpose(2, 1, 0))
    exact = S.kind != "custom"
    tol = 1e-15 if exact else alg.ALGEBRA_TOL
    checks.append(ctx.bound("jacobi", alg.jacobi_residual(S), tol))
    checks.append(ctx.bound("ad_invariance", alg.adinvariance_residual(S), tol))
    if exact:
        checks.append(ctx.bound("total_antisymmetry", anti, 1e-15))
    checks.append(ctx.bound("metric_inverse", _max(S.K @ S.Kinv - np.eye(S.r)), 1e-14))
    if S.r == 3:
        w = random_spin_samples(1000, ctx.seed(5))
        worst = max(prop55_residual(np.moveaxis(w, 0, -1), alg.build_algebra(kind, K))
                    for kind, K in (("so3", [1, 1, 1]), ("so21", [1, 1, -1])))
        checks.append(ctx.bound("prop55_point_samples", worst, 1e-12))
        checks.append(ctx.bound("prop55_configured_algebra", prop55_residual(np.moveaxis(w, 0, -1), S), 1e-12))

    grid, g = ctx.grid, ctx.metric
    F = random_curvature(grid, S, ctx.field_seed(7), ctx.cfg.field.kmax, ctx.cfg.field.amplitude)
    P = legendre(F, g, S)
    gap = hamiltonian_density(P, g, S) + lagrangian_density(F, g, S) - 0.5 * pairing_density(P, F)
    checks.append(ctx.bound("legendre_hamiltonian_consistency", _max(gap), 1e-13, grid=grid))
    scale = _max(lagrangian_density(F * 3.0, g, S) - 9 * lagrangian_density(F, g, S),
                 hamiltonian_density(P * 3.0, g, S) - 9 * hamiltonian_density(P, g, S))
    checks.append(ctx.bound("density_scaling", scale, 1e-12, grid=grid))
    return checks


def suite_roundtrip(ctx: Context) -> list:
    S, grid, cfg = ctx.S, ctx.grid, ctx.cfg
    checks = []
    worst = 0.0
    worst_af = 0.0
    for k in range(cfg.samples):
        F = random_curvature(grid, S, ctx.field_seed(1000 + k), cfg.field.kmax, cfg.field.amplitude)
        g = ctx.metric if cfg.metric.kind == "flat" else BaseMetric.smooth(grid, ctx.seed(2000 + k), cfg.metric.signature, cfg.metric.amplitude)
        worst = max(worst, _max(inverse_legendre(legendre(F, g, S), g, S).values - F.values))
        a = random_gauge_field(grid, S, ctx.field_seed(3000 + k), cfg.field.kmax, cfg.field.amplitude)
        worst_af = max(worst_af, _max(f_from_a_coordinates(a_from_f_coordinates(F, a, S), a, S).values - F.values))
    checks.append(ctx.bound("legendre", worst, 1e-13, grid=grid))
    checks.append(ctx.bound("a_f_coordinates", worst_af, 1e-15, grid=grid))
    if ctx.is3d:
        s = ctx.section(0)
        e, w = to_triad(s.Pi, S), to_spin_connection(s.a, S)
        d1 = _max(from_triad(e, S).values - s.Pi.values, from_spin_connection(w, S).values - s.a.values)
        d2 = _max(to_triad(from_triad(e, S), S).values - e.values,
                  to_spin_connection(from_spin_connection(w, S), S).values - w.values)
        checks.append(ctx.bound("triad_dictionary", max(d1, d2), 1e-14, grid=grid))
    return checks


def suite_residuals(ctx: Context) -> list:
    S, grid, g, cfg = ctx.S, ctx.grid, ctx.metric, ctx.cfg
    scheme = cfg.scheme
    checks = []
    r1 = r2 = 0.0
    for k in range(cfg.samples):
        a = random_gauge_field(grid, S, ctx.field_seed(4000 + k), cfg.field.kmax, cfg.field.amplitude)
        P = legendre(curvature(a, S, scheme), g, S)
        R1, R2 = hdd_residuals(PhaseSection(a, P), g, S, scheme)
        r1 = max(r1, _field_max(R1))
        r2 = max(r2, _max(R2.values - euler_lagrange_residual(a, g, S, scheme).values))
    checks.append(ctx.bound("hdd_R1_on_legendre_section", r1, 1e-13, grid=grid))
    checks.append(ctx.bound("hdd_R2_equals_euler_lagrange", r2, 1e-13, grid=grid))

    eps = 1e-5
    s = ctx.section(1)
    F = random_curvature(grid, S, ctx.field_seed(8), cfg.field.kmax, cfg.field.amplitude)
    R1, R2 = hdd_residuals(s, g, S, scheme)
    gF, ga = lagrangian_residuals(s.a, F, g, S, scheme)
    worst_h = worst_l = 0.0
    for k in range(cfg.samples):
        da = random_gauge_field(grid, S, ctx.seed(5000 + k), 1, 1.0)
        dP = random_curvature(grid, S, ctx.seed(6000 + k), 1, 1.0)
        plus = PhaseSection(s.a + da * eps, s.Pi + dP * eps)
        minus = PhaseSection(s.a - da * eps, s.Pi - dP * eps)
        fd = (hamiltonian_action(plus, g, S, scheme) - hamiltonian_action(minus, g, S, scheme)) / (2 * eps)
        pr = residual_pairing([(R1, dP), (R2, da)], grid)
        worst_h = max(worst_h, abs(fd - pr) / abs(pr))
        fd = (lagrangian_action(s.a + da * eps, F + dP * eps, g, S, scheme)
              - lagrangian_action(s.a - da * eps, F - dP * eps, g, S, scheme)) / (2 * eps)
        pr = residual_pairing([(gF, dP), (ga, da)], grid)
        worst_l = max(worst_l, abs(fd - pr) / abs(pr))
    checks.append(ctx.bound("hamiltonian_action_gradient_rel", worst_h, 1e-6, grid=grid))
    checks.append(ctx.bound("lagrangian_action_gradient_rel", worst_l, 1e-6, grid=grid))

    Fc = curvature(s.a, S, scheme)
    lag = lagrangian_action(s.a, Fc, g, S, scheme)
    ref = integrate(lagrangian_density(Fc, g, S), grid)
    checks.append(ctx.bound("holonomic_lagrangian_action_rel", abs(lag - ref) / max(abs(ref), 1e-300), 1e-12, grid=grid))
    return checks


def _gauge_generator(ctx: Context, grid: Grid, k: int = 0):
    gc = ctx.cfg.gauge
    return random_series(grid, (ctx.S.r,), ctx.cfg.derived_seed(gc.seed, 200) + k, gc.kmax, gc.amplitude)


def suite_gauge(ctx: Context) -> list:
    S, grid, g, cfg = ctx.S, ctx.grid, ctx.metric, ctx.cfg
    checks = []
    G = make_gauge_map(_gauge_generator(ctx, grid), S, grid=grid)
    G2 = make_gauge_map(_gauge_generator(ctx, grid, 1), S, grid=grid)
    checks.append(ctx.bound("ad_inverse_pair", pointwise_identity_residual(G), 1e-12, grid=grid))
    checks.append(ctx.bound("ad_preserves_K", metric_preservation_residual(G, S), 1e-12, grid=grid))

    s = ctx.section(2)
    F = random_curvature(grid, S, ctx.field_seed(9), cfg.field.kmax, cfg.field.amplitude)
    P = s.Pi
    checks.append(ctx.bound("hamiltonian_invariance", _max(hamiltonian_density(gauge_Pi(P, G), g, S) - hamiltonian_density(P, g, S)), 1e-12, grid=grid))
    checks.append(ctx.bound("lagrangian_invariance", _max(lagrangian_density(gauge_F(F, G), g, S) - lagrangian_density(F, g, S)), 1e-12, grid=grid))
    checks.append(ctx.bound("pairing_invariance", _max(pairing_density(gauge_Pi(P, G), gauge_F(F, G)) - pairing_density(P, F)), 1e-12, grid=grid))
    checks.append(ctx.bound("legendre_equivariance", _max(gauge_Pi(legendre(F, g, S), G).values - legendre(gauge_F(F, G), g, S).values), 1e-12, grid=grid))
    back = gauge_a(gauge_a(s.a, G), inverse(G))
    checks.append(ctx.bound("inverse_map_returns", _max(back.values - s.a.values), 1e-12, grid=grid))
    comp = gauge_a(gauge_a(s.a, G2), G).values - gauge_a(s.a, compose(G, G2)).values
    checks.append(ctx.bound("composition", _max(comp), 1e-12, grid=grid))
    if ctx.is3d:
        # a frame near the identity keeps the induced metric nondegenerate
        e = TriadData(grid, np.eye(3)[(...,) + (None,) * 3] + random_series(grid, (3, 3), ctx.field_seed(10), 1, 0.3).on(grid))
        checks.append(ctx.bound("induced_metric_invariance", _max(induced_metric(gauge_triad(e, G), S).g - induced_metric(e, S).g), 1e-12, grid=grid))
        lhs = gauge_spin(to_spin_connection(s.a, S), G, S).values
        rhs = to_spin_connection(gauge_a(s.a, G), S).values
        checks.append(ctx.bound("spin_law_matches_dictionary", _max(lhs - rhs), 1e-12, grid=grid))

    errs, herrs = [], []
    grids = cfg.gauge.grids
    for n in grids:
        gr = Grid((n,) * grid.m)
        a = GaugeField(gr, random_potential_series(gr, S, ctx.field_seed(11), 1, cfg.gauge.amplitude).on(gr))
        Gn = make_gauge_map(_gauge_generator(ctx, gr), S, grid=gr)
        diff = curvature(gauge_a(a, Gn), S, cfg.scheme).values - gauge_F(curvature(a, S, cfg.scheme), Gn).values
        errs.append(_stats(diff, gr))
        gm = BaseMetric.flat(gr, cfg.metric.signature)
        sec = PhaseSection(a, random_momentum(gr, S, ctx.field_seed(12), 1, cfg.gauge.amplitude))
        R1, R2 = hdd_residuals(sec, gm, S, cfg.scheme)
        T1, T2 = hdd_residuals(PhaseSection(gauge_a(a, Gn), gauge_Pi(sec.Pi, Gn)), gm, S, cfg.scheme)
        d1 = T1.values - gauge_F(R1, Gn).values
        d2 = T2.values - np.einsum("nm...,ni...->mi...", Gn.Ad, R2.values)
        (m1, q1), (m2, q2) = _stats(d1, gr), _stats(d2, gr)
        herrs.append((max(m1, m2), float(np.hypot(q1, q2))))
    checks.append(ctx.slope("curvature_covariance_slope", grids, errs, ctx.order))
    checks.append(ctx.slope("hdd_covariance_slope", grids, herrs, ctx.order))
    return checks


def suite_convergence(ctx: Context) -> list:
    cfg = ctx.cfg
    scheme, grids = cfg.scheme, cfg.convergence_grids
    checks = []
    family = cfg.field.family
    if family == "plane-wave":
        S = abelian()
        e_r2, e_el, e_rho1, e_l1, e_l2 = [], [], [], [], []
        for n in grids:
            pw = plane_wave(n)
            P = legendre(curvature(pw.a, S, scheme), pw.metric, S)
            sec = PhaseSection(pw.a, P)
            _, R2 = hdd_residuals(sec, pw.metric, S, scheme)
            e_r2.append(_stats(R2))
            e_el.append(_stats(euler_lagrange_residual(pw.a, pw.metric, S, scheme)))
            rho1, _ = hamiltonian_connection_residuals(connection_from_section(sec, scheme), sec, pw.metric, S)
            e_rho1.append(_stats(rho1))
            l1, l2 = lagrangian_connection_residuals(lagrangian_lift(pw.a, pw.F, scheme), pw.a, pw.F, pw.metric, S, scheme)
            e_l1.append(_stats(l1))
            e_l2.append(_stats(l2))
        checks.append(ctx.slope("plane_wave_hdd_R2", grids, e_r2, ctx.order))
        checks.append(ctx.slope("plane_wave_euler_lagrange", grids, e_el, ctx.order))
        checks.append(ctx.slope("plane_wave_connection_rho1", grids, e_rho1, ctx.order))
        checks.append(ctx.slope("plane_wave_lagrangian_rho1", grids, e_l1, ctx.order))
        checks.append(ctx.slope("plane_wave_lagrangian_rho2", grids, e_l2, ctx.order))
    elif family == "random-smooth":
        S = ctx.S
        errs = []
        for n in grids:
            gr = Grid((n,) * ctx.grid.m)
            ser = random_potential_series(gr, S, ctx.field_seed(13), 1, cfg.field.amplitude)
            a = GaugeField(gr, ser.on(gr))
            F = Curvature.from_full(gr, exact_curvature(ser, gr, S))
            errs.append(_stats(contact_residual(a, F, S, scheme)))
        checks.append(ctx.slope("contact_residual_exact_curvature", grids, errs, ctx.order))
    else:  # pure-gauge
        S = ctx.S
        errs = []
        for n in grids:
            gr = Grid((n,) * ctx.grid.m)
            G = make_gauge_map(_gauge_generator(ctx, gr), S, grid=gr)
            errs.append(_stats(curvature(GaugeField(gr, G.eta), S, scheme)))
        checks.append(ctx.slope("pure_gauge_curvature", grids, errs, ctx.order))
    return checks


def suite_triad(ctx: Context) -> list:
    if not ctx.is3d:
        raise ConfigError("triad-map needs m = r = 3")
    S, grid, g, cfg = ctx.S, ctx.grid, ctx.metric, ctx.cfg
    scheme = cfg.scheme
    checks = []
    worst_ec = worst_p55 = worst_R = worst_free_a = worst_free_b = 0.0
    for k in range(cfg.samples):
        s = ctx.section(7000 + k)
        R1, R2 = hdd_residuals(s, g, S, scheme)
        e, w = to_triad(s.Pi, S), to_spin_connection(s.a, S)
        re_, rw = ec_residuals(e, w, g, S, scheme)
        pe, pw = ec_from_hdd(R1, R2, S)
        worst_ec = max(worst_ec, _max(re_.values - pe.values, rw.values - pw.values))
        worst_p55 = max(worst_p55, prop55_residual(w, S))
        R = spin_curvature_full(w, S, scheme)
        worst_R = max(worst_R, _max(R - spin_curvature_from_field_strength(curvature(s.a, S, scheme), S)))
        tl, metric, curv = free_field_terms(e, w, g, S, scheme)
        worst_free_a = max(worst_free_a, _max(tl - S.sqrtK * rw.unpacked()))
        worst_free_b = max(worst_free_b, _max(re_.values - (2.0 * metric - 0.5 * curv)))
    checks.append(ctx.bound("ec_equals_image_of_hdd", worst_ec, 1e-10, grid=grid))
    checks.append(ctx.bound("prop55_lattice", worst_p55, 1e-12, grid=grid))
    checks.append(ctx.bound("spin_curvature_image_of_F", worst_R, 1e-12, grid=grid))
    checks.append(ctx.bound("free_torsionlike_vs_ec", worst_free_a, 1e-10, grid=grid))
    checks.append(ctx.bound("free_einsteinlike_termwise_vs_ec", worst_free_b, 1e-10, grid=grid))

    n = max(200, cfg.samples)
    e, E = random_jet_samples(n, ctx.seed(8000))
    jet = TriadJetSample(e, E)
    wm = spin_from_triad_jet(jet, S)
    checks.append(ctx.bound("spin_from_triad_torsion", torsion_residual(jet, wm), 1e-11))
    checks.append(ctx.bound("spin_from_triad_metricity", metricity_residual(wm, S), 1e-11))
    ident = spin_from_triad_jet(TriadJetSample(np.eye(3), np.zeros((3, 3))), S)
    checks.append(ctx.bound("spin_from_identity_triad", _max(ident), 0.0))
    return checks


def suite_multimomentum(ctx: Context) -> list:
    S, grid, g, cfg = ctx.S, ctx.grid, ctx.metric, ctx.cfg
    scheme = cfg.scheme
    checks = []
    worst = sym = 0.0
    rng = np.random.default_rng(ctx.seed(9000))
    for k in range(cfg.samples):
        s = ctx.section(9000 + k)
        c = connection_from_section(s, scheme)
        rho1, rho2 = hamiltonian_connection_residuals(c, s, g, S)
        R1, R2 = hdd_residuals(s, g, S, scheme)
        worst = max(worst, _max(rho1.values + R2.values, rho2.values - R1.values))
        bump = rng.standard_normal((grid.m, S.r, grid.m))[(...,) + (None,) * grid.m]
        bump = bump + np.swapaxes(bump, 0, 2)
        c2 = type(c)(c.Ga.with_values(c.Ga.values + bump), c.GPi)
        _, rho2b = hamiltonian_connection_residuals(c2, s, g, S)
        sym = max(sym, _max(rho2b.values - rho2.values))
    checks.append(ctx.bound("holonomic_lift_sign_map", worst, 1e-13, grid=grid))
    checks.append(ctx.bound("symmetric_part_ignored", sym, 1e-13, grid=grid))

    m, r, P = grid.m, S.r, grid.m * (grid.m - 1) // 2
    points = [PhasePoint(rng.standard_normal(m), rng.standard_normal((r, m)), rng.standard_normal((r, P))) for _ in range(5)]
    const = constant_family(rng.standard_normal((m, r, m)), rng.standard_normal((m, r, P)))
    res = closure_residuals(const, points)
    checks.append(ctx.bound("closure_constant_family", max(max(x) for x in res), 1e-9))

    gp = g.g[(...,) + (0,) * m]
    res = closure_residuals(yang_mills_family(gp, S), points)
    checks.append(ctx.bound("closure_ym_cond1_symmetric", max(x.cond1_symmetric for x in res), 1e-8))
    checks.append(ctx.bound("closure_ym_cond2", max(x.cond2 for x in res), 1e-8))
    checks.append(ctx.bound("closure_ym_cond3_antisymmetric", max(x.cond3_antisymmetric for x in res), 1e-8))
    checks.append(Check("closure_ym_cond1_as_printed", "info", max(x.cond1 for x in res)))
    checks.append(Check("closure_ym_cond3_as_printed", "info", max(x.cond3 for x in res)))
    return checks


SUITE_FUNCS: dict[str, Callable[[Context], list]] = {
    "identities": suite_identities,
    "roundtrip": suite_roundtrip,
    "residuals": suite_residuals,
    "gauge-check": suite_gauge,
    "convergence": suite_convergence,
    "triad-map": suite_triad,
    "multimomentum": suite_multimomentum,
}

SUITE_HELP = {
    "identities": "algebra validity, the quadratic spin-connection identity, Legendre/Hamiltonian consistency",
    "roundtrip": "Legendre map inverse, A/F coordinate change, triad dictionary",
    "residuals": "Lagrangian/Hamiltonian equivalence and discrete action gradients",
    "gauge-check": "gauge invariants, map algebra and covariance convergence",
    "convergence": "refinement slopes for the configured field family",
    "triad-map": "triad residuals against the Hamiltonian residuals, spin connection from triads",
    "multimomentum": "connection conditions along sections and closedness of connection families",
}


def run_suite(name: str, ctx: Context) -> SuiteResult:
    ctx.suite = name
    return SuiteResult(name, SUITE_FUNCS[name](ctx))
