"""
Geometric check of the invariants: count the fixed circles of the linear
homotopy ``F(x, t) = M x + t c + ε`` on ``T^n × S^1``.

The fixed set is the solution set of ``B (x, t) ≡ -ε (mod Z^n)`` with
``B = [(M - I) | c]``. :func:`fixed_set_exact` reads the component count off
the Smith form of ``B``; :func:`fixed_set_grid` samples the torus and labels
components, sharing nothing with the algebra but the descriptor.

Examples:
    >>> h = LinearHomotopy(HomotopyDescriptor.create([[1]], [2]), (Fraction(1, 7),))
    >>> report = fixed_set_exact(h)
    >>> report.component_count, sorted(t for (x, t) in report.samples)
    (2, [Fraction(3, 7), Fraction(13, 14)])
    >>> h = LinearHomotopy(HomotopyDescriptor.create([[1, 0], [0, 1]], [1, 0]),
    ...                    (Fraction(0), Fraction(1, 7)))
    >>> fixed_set_exact(h).component_count
    0
"""
from __future__ import annotations

import bisect
import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy

from torus_nielsen._config import config
from torus_nielsen.descriptor import HomotopyDescriptor
from torus_nielsen.errors import (DimensionMismatch, MalformedInput,
                                  ResolutionTooCoarse, UnsupportedDimension)
from torus_nielsen.intlin import IntMatrix, SmithDecomposition, smith_normal_form
from torus_nielsen.oracle.unionfind import UnionFind

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 16
MAX_GRID_DIMENSION = 3


class FixedSetMethod(str, Enum):
    EXACT = "EXACT"
    GRID = "GRID"


@dataclass(frozen=True)
class LinearHomotopy:
    """``F(x, t) = phi x + t c + epsilon``; epsilon is kept in ``[0, 1)``."""
    desc: HomotopyDescriptor
    epsilon: tuple

    def __post_init__(self):
        if len(self.epsilon) != self.desc.n:
            raise DimensionMismatch(
                f"epsilon has {len(self.epsilon)} entries for a homotopy on T^{self.desc.n}")
        object.__setattr__(self, "epsilon",
                           tuple(Fraction(e) % 1 for e in self.epsilon))


@dataclass(frozen=True)
class FixedSetReport:
    component_count: int
    method: FixedSetMethod
    samples: Optional[List[tuple]] = None


def parse_epsilon(text: str) -> tuple:
    """
    >>> parse_epsilon("1/11, 1/13")
    (Fraction(1, 11), Fraction(1, 13))
    """
    try:
        return tuple(Fraction(part.strip()) for part in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"cannot read epsilon {text!r}: {exc}",
                             'comma separated rationals such as "1/11,1/13"') from None


# ═════════════════════════════ exact ════════════════════════════════
def _residual_targets(snf: SmithDecomposition, target: Sequence[Fraction]) -> Optional[tuple]:
    """``U·target`` when the torus map of the matrix hits ``target``, else None."""
    moved = snf.U @ tuple(target)
    if any(x.denominator != 1 for x in moved[snf.rank:]):
        return None
    return moved


def torus_image_contains(matrix: IntMatrix, target: Sequence[Fraction]) -> bool:
    """Is ``target`` (mod Z^rows) in the image of the torus map of ``matrix``?

    >>> torus_image_contains(IntMatrix.from_rows([[0, 2], [0, 0]]), (Fraction(1, 3), Fraction(0)))
    True
    >>> torus_image_contains(IntMatrix.from_rows([[0, 2], [0, 0]]), (Fraction(0), Fraction(1, 3)))
    False
    """
    return _residual_targets(smith_normal_form(matrix), [Fraction(x) for x in target]) is not None


def fixed_set_exact(h: LinearHomotopy) -> FixedSetReport:
    desc = h.desc
    snf = desc.class_smith
    moved = _residual_targets(snf, [-e for e in h.epsilon])
    if moved is None:
        logger.debug("-epsilon is off the image subtorus; no fixed points")
        return FixedSetReport(0, FixedSetMethod.EXACT, [])
    divisors = [d for d in snf.diagonal if d]
    count = math.prod(divisors)
    samples = []
    for shifts in itertools.product(*(range(d) for d in divisors)):
        z = [(moved[i] + k) / d for i, (k, d) in enumerate(zip(shifts, divisors))]
        z += [Fraction(0)] * (desc.n + 1 - len(z))
        samples.append(tuple(y % 1 for y in snf.V @ z))
    samples = [(point[:-1], point[-1]) for point in sorted(samples)]
    logger.debug("exact fixed set: %d components", count)
    return FixedSetReport(count, FixedSetMethod.EXACT, samples)


# ══════════════════════════════ grid ═════════════════════════════════
@dataclass(frozen=True)
class _Slab:
    """Components of the marked points of one ``t``-slice.

    ``marked`` holds the flat indices of the marked points in ascending
    order and ``component`` the slice-local component of each; ``has_core``
    and ``first`` (least flat index) have one entry per component.
    """
    marked: np.ndarray
    component: np.ndarray
    has_core: np.ndarray
    first: np.ndarray

    @property
    def size(self) -> int:
        return len(self.first)


def _slice_base(h: LinearHomotopy, resolution: int) -> np.ndarray:
    """``(M - I) x`` over the grid of ``T^n``; the same for every slice."""
    n = h.desc.n
    axis = np.arange(resolution) / resolution
    xs = np.stack(np.meshgrid(*([axis] * n), indexing="ij"))
    M_minus_I = np.array(h.desc.phi_minus_identity.to_rows(), dtype=float)
    return np.tensordot(M_minus_I, xs, axes=1)


def _slab_masks(h: LinearHomotopy, base: np.ndarray, k: int, resolution: int,
                tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """Marked and core points of the slice ``t = k / resolution``.

    A point is marked when every coordinate of ``B (x, t) + ε`` is within
    ``tol`` of an integer, and core when within ``tol / 2``.
    """
    n = h.desc.n
    offset = (np.array([float(e) for e in h.epsilon])
              + (k / resolution) * np.array(h.desc.c, dtype=float))
    values = base + offset.reshape((n,) + (1,) * n)
    distance = np.max(np.abs(values - np.round(values)), axis=0)
    return distance < tol, distance <= tol / 2


def _label_slab(mask: np.ndarray, core: np.ndarray) -> _Slab:
    """Label the marked points of one slice.

    Neighbours are axis-aligned and wrap around every axis of ``T^n``.
    """
    shape = mask.shape
    marked = np.flatnonzero(mask)
    if not len(marked):
        empty = np.zeros(0, dtype=np.int64)
        return _Slab(marked, empty, np.zeros(0, dtype=bool), empty)
    coords = np.unravel_index(marked, shape)
    heads, tails = [], []
    for axis, size in enumerate(shape):
        shifted = list(coords)
        shifted[axis] = (coords[axis] + 1) % size
        neighbours = np.ravel_multi_index(tuple(shifted), shape)
        pos = np.minimum(np.searchsorted(marked, neighbours), len(marked) - 1)
        hits = np.flatnonzero(marked[pos] == neighbours)
        heads.append(hits)
        tails.append(pos[hits])
    a, b = np.concatenate(heads), np.concatenate(tails)

    # min-label propagation with pointer jumping; labels never increase,
    # and at the fixed point every component carries its least position
    labels = np.arange(len(marked))
    while True:
        previous = labels
        labels = labels.copy()
        np.minimum.at(labels, a, labels[b])
        np.minimum.at(labels, b, labels[a])
        labels = labels[labels]
        if np.array_equal(labels, previous):
            break
    roots, component = np.unique(labels, return_inverse=True)
    component = component.ravel()
    has_core = np.zeros(len(roots), dtype=bool)
    np.logical_or.at(has_core, component, core.ravel()[marked])
    return _Slab(marked, component, has_core, marked[roots])


def _join_slabs(uf: UnionFind, lower: _Slab, lower_offset: int,
                upper: _Slab, upper_offset: int):
    """Merge components of adjacent slices that share a marked ``x``."""
    _, i, j = np.intersect1d(lower.marked, upper.marked,
                             assume_unique=True, return_indices=True)
    pairs = set(zip((lower.component[i] + lower_offset).tolist(),
                    (upper.component[j] + upper_offset).tolist()))
    for a, b in sorted(pairs):
        uf.union(a, b)


def grid_spread(desc: HomotopyDescriptor) -> int:
    """``1 +`` the largest row sum of ``|B|``; bounds how far ``B`` moves per grid step."""
    B = desc.class_matrix
    return 1 + max(sum(abs(x) for x in B.row(i)) for i in range(B.rows))


def default_grid_resolution(desc: HomotopyDescriptor) -> int:
    """The configured resolution for the dimension, raised to ``4·spread`` if needed.

    >>> default_grid_resolution(HomotopyDescriptor.create([[1]], [2]))
    192
    >>> default_grid_resolution(HomotopyDescriptor.create([[1, 0, 0], [0, 2, 0], [0, 0, 2]], [1, 0, 0]))
    64
    """
    key = "grid-resolution-3d" if desc.n >= 3 else "grid-resolution"
    return max(config[key], 4 * grid_spread(desc))


def fixed_set_grid(h: LinearHomotopy, resolution: Optional[int] = None,
                   tol: Optional[float] = None, *,
                   workers: Optional[int] = None,
                   samples: bool = False) -> FixedSetReport:
    """Count fixed components by sampling ``T^n × S^1`` on a regular grid.

    Every ``t``-slice is labelled on its own (in parallel with ``workers``);
    one pass over adjacent slices, closing ``t = 1`` onto ``t = 0``, then
    joins their components. Components that hold no core point are thin
    slivers at the edge of the tolerance band and are not counted.

    >>> h = LinearHomotopy(HomotopyDescriptor.create([[1]], [2]), (Fraction(1, 7),))
    >>> fixed_set_grid(h, resolution=1024, tol=2 / 1024).component_count
    2
    """
    n = h.desc.n
    if n > MAX_GRID_DIMENSION:
        raise UnsupportedDimension(f"grid sampling supports n <= {MAX_GRID_DIMENSION}, got {n}")
    resolution = default_grid_resolution(h.desc) if resolution is None else resolution
    workers = config["grid-workers"] if workers is None else workers
    if resolution < MIN_RESOLUTION:
        raise ResolutionTooCoarse(f"resolution {resolution} < {MIN_RESOLUTION}")
    spread = grid_spread(h.desc)
    tol = 1.5 * spread / resolution if tol is None else tol
    if tol * resolution < 0.5 * spread:
        raise ResolutionTooCoarse(
            f"tol·resolution = {tol * resolution:g} is below half the spread {spread}")
    if 2 * tol + (spread - 1) / resolution >= 1:
        raise ResolutionTooCoarse(
            f"tol = {tol:g} at resolution {resolution} cannot separate components")

    base = _slice_base(h, resolution)

    def label(k: int) -> _Slab:
        return _label_slab(*_slab_masks(h, base, k, resolution, tol))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            slabs = list(pool.map(label, range(resolution)))
    else:
        slabs = [label(k) for k in range(resolution)]

    offsets = np.cumsum([0] + [s.size for s in slabs]).tolist()
    uf = UnionFind(offsets[-1])
    for k in range(resolution):
        upper = (k + 1) % resolution
        _join_slabs(uf, slabs[k], offsets[k], slabs[upper], offsets[upper])
    has_core = np.concatenate([s.has_core for s in slabs])
    logger.debug("grid %d^%d: %d marked points in %d slice components (tol %g)",
                 resolution, n + 1, sum(len(s.marked) for s in slabs), offsets[-1], tol)

    if not has_core.any():
        if fixed_set_exact(h).component_count:
            raise ResolutionTooCoarse(
                f"no grid point within tol {tol:g} although fixed circles exist")
        return FixedSetReport(0, FixedSetMethod.GRID, [] if samples else None)

    counted = sorted({uf.find(g) for g in np.flatnonzero(has_core).tolist()})
    dropped = uf.num_components - len(counted)
    if dropped:
        logger.debug("dropped %d components without core points", dropped)

    points = None
    if samples:
        points = []
        shape = (resolution,) * n
        for root in counted:
            k = bisect.bisect_right(offsets, root) - 1
            flat = int(slabs[k].first[root - offsets[k]])
            x = tuple(Fraction(int(i), resolution) for i in np.unravel_index(flat, shape))
            points.append((x, Fraction(k, resolution)))
    return FixedSetReport(len(counted), FixedSetMethod.GRID, points)


# ═══════════════════════ choosing a generic ε ════════════════════════
def choose_generic_epsilon(desc: HomotopyDescriptor, seed: Optional[int] = None) -> tuple:
    """``(1/p, 1/p^2, ..., 1/p^n)`` for the ``seed``-th admissible prime ``p``.

    ``p`` exceeds twice the largest entry of ``B``, divides no invariant
    factor, and the resulting ``ε`` avoids fixed points on ``t = 0`` and, when
    ``B`` has rank below ``n``, the whole fixed set.

    >>> choose_generic_epsilon(HomotopyDescriptor.create([[1, 1], [0, 2]], [0, 1]))
    (Fraction(1, 3), Fraction(1, 9))
    """
    seed = config["seed"] if seed is None else seed
    n = desc.n
    B = desc.class_matrix
    factors = [d for d in desc.class_smith.diagonal if d > 1]
    slice_smith = smith_normal_form(desc.phi_minus_identity)
    singular = slice_smith.rank < n
    deficient = desc.class_smith.rank < n

    accepted = 0
    p = 2 * B.max_abs
    while True:
        p = int(sympy.nextprime(p))
        if any(d % p == 0 for d in factors):
            continue
        epsilon = tuple(Fraction(1, p ** (i + 1)) for i in range(n))
        target = [-e for e in epsilon]
        if singular and _residual_targets(slice_smith, target) is not None:
            continue
        if deficient and _residual_targets(desc.class_smith, target) is not None:
            continue
        if accepted == seed:
            logger.debug("epsilon for seed %d uses p = %d", seed, p)
            return epsilon
        accepted += 1
