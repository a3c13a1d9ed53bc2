"""Periodic grids, lattice fields with packed antisymmetric pairs, and
finite differences on the torus.

Field values are stored as ``(*components, *nodes)``: component axes first,
then one axis per base direction. An antisymmetric index pair (i, j) over
``n`` values is packed into a single axis of length n(n-1)/2 holding the
entries with i < j in lexicographic order; the diagonal is never stored.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

import numpy as np

SCHEMES = ("order2", "order4")


@dataclass(frozen=True)
class Grid:
    N: tuple[int, ...]
    h: tuple[float, ...] = None

    def __post_init__(self):
        N = tuple(int(n) for n in self.N)
        object.__setattr__(self, "N", N)
        if not 2 <= len(N) <= 4:
            raise ValueError(f"base dimension must be 2..4, got {len(N)}")
        if any(n < 4 for n in N):
            raise ValueError(f"need at least 4 nodes per axis, got {N}")
        h = self.h
        if h is None:
            h = tuple(2.0 * math.pi / n for n in N)
        elif np.isscalar(h):
            h = (float(h),) * len(N)
        h = tuple(float(v) for v in h)
        if len(h) != len(N) or any(v <= 0 for v in h):
            raise ValueError(f"spacings must be positive, one per axis: {h}")
        object.__setattr__(self, "h", h)

    @classmethod
    def cubic(cls, n: int, m: int = 3) -> "Grid":
        return cls((n,) * m)

    @property
    def m(self) -> int:
        return len(self.N)

    @property
    def lengths(self) -> tuple[float, ...]:
        return tuple(n * h for n, h in zip(self.N, self.h))

    @property
    def cell_volume(self) -> float:
        return math.prod(self.h)

    @property
    def n_nodes(self) -> int:
        return math.prod(self.N)

    def coords(self) -> list[np.ndarray]:
        """Node coordinates, one broadcastable array per axis."""
        axes = [np.arange(n) * h for n, h in zip(self.N, self.h)]
        return np.meshgrid(*axes, indexing="ij")

    def points(self) -> np.ndarray:
        """Coordinates stacked as an array of shape (m, *N)."""
        return np.stack(self.coords())


# --------------------------------------------------------------------------
# antisymmetric pair packing


@lru_cache(maxsize=None)
def pair_list(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def n_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_dim(packed_len: int) -> int:
    n = int(round((1 + math.sqrt(1 + 8 * packed_len)) / 2))
    if n_pairs(n) != packed_len:
        raise ValueError(f"{packed_len} is not a valid packed pair length")
    return n


def pack_pair(full: np.ndarray, axis: int) -> np.ndarray:
    """Pack axes (axis, axis+1) of an antisymmetric array into one axis."""
    n = full.shape[axis]
    idx_i = [p[0] for p in pair_list(n)]
    idx_j = [p[1] for p in pair_list(n)]
    moved = np.moveaxis(full, (axis, axis + 1), (0, 1))
    packed = moved[idx_i, idx_j]
    return np.moveaxis(packed, 0, axis)


def unpack_pair(packed: np.ndarray, axis: int) -> np.ndarray:
    """Expand a packed pair axis into two antisymmetric axes."""
    n = pair_dim(packed.shape[axis])
    moved = np.moveaxis(packed, axis, 0)
    full = np.zeros((n, n) + moved.shape[1:], dtype=packed.dtype)
    for k, (i, j) in enumerate(pair_list(n)):
        full[i, j] = moved[k]
        full[j, i] = -moved[k]
    return np.moveaxis(full, (0, 1), (axis, axis + 1))


@dataclass(frozen=True)
class LatticeField:
    """Values on a periodic grid.

    ``pairs`` lists the component axes (in packed storage) that hold an
    antisymmetric index pair.
    """

    grid: Grid
    values: np.ndarray
    pairs: tuple[int, ...] = field(default=())

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        m = self.grid.m
        if vals.shape[vals.ndim - m:] != self.grid.N or vals.ndim < m:
            raise ValueError(f"trailing shape {vals.shape} does not match grid {self.grid.N}")
        for ax in self.pairs:
            if ax >= vals.ndim - m:
                raise ValueError(f"pair axis {ax} is not a component axis")
            pair_dim(vals.shape[ax])
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    @property
    def comp_shape(self) -> tuple[int, ...]:
        return self.values.shape[: self.values.ndim - self.grid.m]

    def unpacked(self) -> np.ndarray:
        """Full component array with every packed pair expanded."""
        full = self.values
        for ax in sorted(self.pairs, reverse=True):
            full = unpack_pair(full, ax)
        return full

    def component(self, *index: int) -> np.ndarray:
        """Node values of one component, indexing pairs by both members."""
        return self.unpacked()[tuple(index)]

    @classmethod
    def from_full(cls, grid: Grid, full: np.ndarray, pair_axes=(), **kw):
        """Build from an unpacked array; ``pair_axes`` give the first axis of each pair."""
        packed = np.asarray(full, dtype=float)
        shift = 0
        new_axes = []
        for ax in sorted(pair_axes):
            packed = pack_pair(packed, ax - shift)
            new_axes.append(ax - shift)
            shift += 1
        return cls(grid=grid, values=packed, pairs=tuple(new_axes), **kw)

    def with_values(self, values: np.ndarray):
        return dataclasses.replace(self, values=values)

    def __add__(self, other):
        return self.with_values(self.values + _vals(other))

    def __sub__(self, other):
        return self.with_values(self.values - _vals(other))

    def __neg__(self):
        return self.with_values(-self.values)

    def __mul__(self, s: float):
        return self.with_values(self.values * s)

    __rmul__ = __mul__


def _vals(x):
    return x.values if isinstance(x, LatticeField) else x


# --------------------------------------------------------------------------
# finite differences


def diff(values: np.ndarray, axis: int, h: float, scheme: str = "order2") -> np.ndarray:
    """Centered periodic difference of ``values`` along array ``axis``."""
    if scheme == "order2":
        return (np.roll(values, -1, axis) - np.roll(values, 1, axis)) / (2.0 * h)
    if scheme == "order4":
        return (
            -np.roll(values, -2, axis)
            + 8.0 * np.roll(values, -1, axis)
            - 8.0 * np.roll(values, 1, axis)
            + np.roll(values, 2, axis)
        ) / (12.0 * h)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


def partial(f: LatticeField, axis: int, scheme: str = "order2") -> LatticeField:
    if not 0 <= axis < f.grid.m:
        raise ValueError(f"axis {axis} out of range for m = {f.grid.m}")
    arr_axis = len(f.comp_shape) + axis
    return f.with_values(diff(f.values, arr_axis, f.grid.h[axis], scheme))


def grad_values(values: np.ndarray, grid: Grid, scheme: str = "order2") -> np.ndarray:
    """Stack of derivatives along every base axis, new leading axis k."""
    ncomp = values.ndim - grid.m
    return np.stack([diff(values, ncomp + k, grid.h[k], scheme) for k in range(grid.m)])


# --------------------------------------------------------------------------
# reductions


def _fsum(arr: np.ndarray) -> float:
    # exactly rounded, hence independent of traversal order
    return math.fsum(np.ravel(arr).tolist())


def reduce(f, p: str = "max-abs", grid: Grid | None = None) -> float:
    """Deterministic reduction over all nodes and stored components.

    ``p`` is ``"max-abs"``, ``"L2"`` (node sum times cell volume, square
    root) or ``"mean"``. Plain arrays are accepted together with ``grid``.
    """
    if isinstance(f, LatticeField):
        vals, grid = f.values, f.grid
    else:
        vals = np.asarray(f, dtype=float)
    if p == "max-abs":
        return float(np.max(np.abs(vals), initial=0.0))
    if p == "L2":
        if grid is None:
            raise ValueError("L2 reduction of a plain array needs the grid")
        return math.sqrt(_fsum(vals * vals) * grid.cell_volume)
    if p == "mean":
        return _fsum(vals) / vals.size if vals.size else 0.0
    raise ValueError(f"unknown reduction {p!r}")


def integrate(density: np.ndarray, grid: Grid) -> float:
    """Node-sum quadrature of a scalar density, deterministic."""
    return _fsum(density) * grid.cell_volume


# --------------------------------------------------------------------------
# band-limited trigonometric families


@dataclass(frozen=True)
class TrigSeries:
    """Real trigonometric polynomial with closed-form derivatives.

    ``wavevectors`` has shape (M, m) holding integer mode numbers; the phase
    of mode k at x is sum_a 2 pi k_a x_a / L_a. Coefficients have shape
    (*components, M).
    """

    wavevectors: np.ndarray
    cos_coef: np.ndarray
    sin_coef: np.ndarray
    lengths: tuple[float, ...]

    @property
    def comp_shape(self) -> tuple[int, ...]:
        return self.cos_coef.shape[:-1]

    def _k(self) -> np.ndarray:
        L = np.asarray(self.lengths)
        return self.wavevectors * (2.0 * np.pi / L)

    def at(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at coordinates of shape (m, *P); result (*components, *P)."""
        points = np.asarray(points, dtype=float)
        phase = np.tensordot(self._k(), points, axes=(1, 0))  # (M, *P)
        return np.tensordot(self.cos_coef, np.cos(phase), axes=1) + np.tensordot(
            self.sin_coef, np.sin(phase), axes=1
        )

    def on(self, grid: Grid) -> np.ndarray:
        return self.at(grid.points())

    def derivative(self, axis: int) -> "TrigSeries":
        k = self._k()[:, axis]
        return TrigSeries(self.wavevectors, k * self.sin_coef, -k * self.cos_coef, self.lengths)

    def gradient_at(self, points: np.ndarray) -> np.ndarray:
        """Exact derivatives, shape (m, *components, *P)."""
        return np.stack([self.derivative(a).at(points) for a in range(len(self.lengths))])

    def __neg__(self):
        return TrigSeries(self.wavevectors, -self.cos_coef, -self.sin_coef, self.lengths)

    def __add__(self, other: "TrigSeries") -> "TrigSeries":
        if self.lengths != other.lengths:
            raise ValueError("cannot add series on different domains")
        return TrigSeries(
            np.concatenate([self.wavevectors, other.wavevectors]),
            np.concatenate([self.cos_coef, other.cos_coef], axis=-1),
            np.concatenate([self.sin_coef, other.sin_coef], axis=-1),
            self.lengths,
        )

    def __mul__(self, s: float) -> "TrigSeries":
        return TrigSeries(self.wavevectors, s * self.cos_coef, s * self.sin_coef, self.lengths)

    __rmul__ = __mul__


def _modes(m: int, kmax: int) -> np.ndarray:
    # zero mode plus one representative of each +-k pair
    modes = [k for k in product(range(-kmax, kmax + 1), repeat=m) if k > (0,) * m]
    return np.array([(0,) * m] + modes, dtype=float)


def random_series(grid: Grid, shape, seed: int, kmax: int, amplitude: float) -> TrigSeries:
    """Seeded band-limited series with max-norm mode numbers <= kmax."""
    shape = tuple(shape)
    for n in grid.N:
        if kmax > n / 4:
            raise ValueError(f"kmax = {kmax} exceeds N/4 for an axis with N = {n}")
    k = _modes(grid.m, kmax)
    rng = np.random.default_rng(seed)
    scale = amplitude / math.sqrt(len(k))
    cos_c = rng.standard_normal(shape + (len(k),)) * scale
    sin_c = rng.standard_normal(shape + (len(k),)) * scale
    sin_c[..., 0] = 0.0
    return TrigSeries(k, cos_c, sin_c, grid.lengths)


def random_smooth(grid: Grid, shape, seed: int, kmax: int = 2, amplitude: float = 1.0, pairs=()) -> LatticeField:
    """Seeded smooth periodic field with the given (packed) component shape."""
    series = random_series(grid, shape, seed, kmax, amplitude)
    return LatticeField(grid, series.on(grid), pairs=tuple(pairs))
