"""Property-based checks of the pointwise algebra, driven by hypothesis."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from jetfield.algebra import adinvariance_residual, build_algebra, jacobi_residual
from jetfield.connection import Curvature
from jetfield.dynamics import BaseMetric, Momentum, inverse_legendre, legendre
from jetfield.gauge import compose, gauge_map_from_values, inverse
from jetfield.lattice import Grid, pack_pair, reduce, unpack_pair
from jetfield.triad import TriadData, from_triad, prop55_residual, to_triad

PROFILE = settings(max_examples=60, deadline=None)
GRID = Grid.cubic(4)

finite = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)
magnitude = st.floats(0.25, 4.0)


@st.composite
def algebras(draw):
    kind = draw(st.sampled_from(["so3", "so21"]))
    K = [draw(magnitude) for _ in range(3)]
    if kind == "so21":
        K[2] = -K[2]
    return build_algebra(kind, K)


def field(values, grid=GRID):
    return np.asarray(values)[(...,) + (None,) * grid.m] * np.ones(grid.N)


@PROFILE
@given(algebras())
def test_algebras_built_from_any_metric_are_valid(S):
    scale = float(np.max(np.abs(S.C)))
    assert jacobi_residual(S) <= 1e-14 * max(1.0, scale * scale)
    assert adinvariance_residual(S) <= 1e-14 * max(1.0, scale * float(np.max(np.abs(S.K))))


@PROFILE
@given(algebras(), arrays(float, (3, 3, 3), elements=finite))
def test_quadratic_spin_identity_for_any_metric(S, w):
    w = w - np.swapaxes(w, 1, 2)
    assert prop55_residual(w, S) <= 1e-12 * max(1.0, float(np.max(np.abs(S.K))) * float(np.max(np.abs(S.Kinv))) * 16)


@PROFILE
@given(algebras(), arrays(float, (3, 3), elements=finite), st.lists(st.sampled_from([-1.0, 1.0]), min_size=3, max_size=3),
       st.lists(magnitude, min_size=3, max_size=3))
def test_legendre_is_invertible_for_any_diagonal_metric(S, Fp, signs, scales):
    g = BaseMetric.flat(GRID, np.array(signs) * np.array(scales))
    F = Curvature(GRID, field(Fp))
    back = inverse_legendre(legendre(F, g, S), g, S)
    assert np.max(np.abs(back.values - F.values)) <= 1e-13 * max(1.0, float(np.max(np.abs(Fp))))


@PROFILE
@given(algebras(), arrays(float, (3, 3), elements=finite))
def test_triad_dictionary_is_invertible(S, e):
    t = TriadData(GRID, field(e))
    assert np.max(np.abs(to_triad(from_triad(t, S), S).values - t.values)) <= 1e-13 * max(1.0, float(np.max(np.abs(e))))


@PROFILE
@given(algebras(), arrays(float, (2, 3), elements=finite), arrays(float, (2, 3, 3), elements=finite))
def test_gauge_maps_compose_and_invert(S, xi, dxi):
    # one node per map, generators bounded so the series stays trusted
    G1 = gauge_map_from_values(xi[0][:, None], dxi[0][..., None], S)
    G2 = gauge_map_from_values(xi[1][:, None], dxi[1][..., None], S)
    C = compose(G1, G2)
    eye = np.eye(3)[..., None]
    assert np.max(np.abs(np.einsum("mk...,kn...->mn...", C.Ad, C.AdInv) - eye)) <= 1e-9
    I = compose(G1, inverse(G1))
    assert np.max(np.abs(I.Ad - eye)) <= 1e-9
    assert np.max(np.abs(I.eta)) <= 1e-9 * max(1.0, float(np.max(np.abs(dxi))))


@PROFILE
@given(arrays(float, (2, 4, 4), elements=finite))
def test_pair_packing_roundtrip(x):
    full = x - np.swapaxes(x, 1, 2)
    assert np.array_equal(unpack_pair(pack_pair(full, 1), 1), full)


@PROFILE
@given(arrays(float, (4, 4, 4), elements=st.floats(-1e6, 1e6)), st.randoms(use_true_random=False))
def test_reductions_are_order_independent(v, rnd):
    flat = list(v.ravel())
    rnd.shuffle(flat)
    w = np.array(flat).reshape(v.shape)
    for p in ("max-abs", "L2", "mean"):
        assert reduce(w, p, GRID) == reduce(v, p, GRID)


@PROFILE
@given(algebras(), arrays(float, (3, 3), elements=finite))
def test_momentum_triad_pairing(S, P):
    # Pi = K e eps is a bijection: zero maps to zero and nothing else does
    Pi = Momentum(GRID, field(P))
    e = to_triad(Pi, S)
    assert (np.max(np.abs(e.values)) == 0.0) == (np.max(np.abs(P)) == 0.0)
