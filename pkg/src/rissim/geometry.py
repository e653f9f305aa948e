"""Surface lattice, control groups and per-element path geometry.

The surface lies in the plane ``x = origin.x`` and faces ``+x``. Columns run
along ``y`` (horizontal) and rows along ``z`` (vertical). Elements are stored
row-major: flat index ``i * n_cols + j`` for array row ``i`` and column ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

Vec3 = tuple[float, float, float]


class GeometryError(ValueError):
    """Raised when an antenna sits in the surface plane."""


def as_vec3(v: Sequence[float], name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite, got {arr.tolist()}")
    return arr


def _index_range(count: int) -> tuple[int, int]:
    # even counts follow the 1-N/2 .. N/2 summation limits; odd counts are symmetric about 0
    if count % 2 == 0:
        return 1 - count // 2, count // 2
    return -(count - 1) // 2, (count - 1) // 2


@dataclass(frozen=True)
class SurfaceGrid:
    n_rows: int
    n_cols: int
    d_x: float
    d_y: float
    origin: Vec3 = (0.0, 0.0, 0.0)

    @property
    def n_elements(self) -> int:
        return self.n_rows * self.n_cols

    @property
    def width(self) -> float:
        return self.n_cols * self.d_x

    @property
    def height(self) -> float:
        return self.n_rows * self.d_y

    @property
    def row_indices(self) -> np.ndarray:
        lo, hi = _index_range(self.n_rows)
        return np.arange(lo, hi + 1)

    @property
    def col_indices(self) -> np.ndarray:
        lo, hi = _index_range(self.n_cols)
        return np.arange(lo, hi + 1)

    @cached_property
    def positions(self) -> np.ndarray:
        """Element centres, shape ``(n_rows * n_cols, 3)``, row-major."""
        y = (np.arange(self.n_cols) - (self.n_cols - 1) / 2.0) * self.d_x
        z = (np.arange(self.n_rows) - (self.n_rows - 1) / 2.0) * self.d_y
        zz, yy = np.meshgrid(z, y, indexing="ij")
        pos = np.empty((self.n_elements, 3))
        pos[:, 0] = self.origin[0]
        pos[:, 1] = self.origin[1] + yy.ravel()
        pos[:, 2] = self.origin[2] + zz.ravel()
        return pos

    def flat_index(self, n: int, m: int) -> int:
        """Flat element index for lattice indices ``(n, m)``."""
        n_lo, n_hi = _index_range(self.n_rows)
        m_lo, m_hi = _index_range(self.n_cols)
        if not (n_lo <= n <= n_hi and m_lo <= m <= m_hi):
            raise ValueError(
                f"element ({n}, {m}) outside grid; n in [{n_lo}, {n_hi}], m in [{m_lo}, {m_hi}]"
            )
        return (n - n_lo) * self.n_cols + (m - m_lo)


def build_grid(
    n_rows: int,
    n_cols: int,
    d_x: float,
    d_y: float,
    origin: Sequence[float] = (0.0, 0.0, 0.0),
) -> SurfaceGrid:
    """Create a centred ``n_rows x n_cols`` lattice with periodicities ``d_x`` (along y) and ``d_y`` (along z)."""
    if int(n_rows) != n_rows or int(n_cols) != n_cols or n_rows < 1 or n_cols < 1:
        raise ValueError(f"grid needs positive integer dimensions, got {n_rows} x {n_cols}")
    if not (d_x > 0 and d_y > 0):
        raise ValueError(f"periodicities must be positive, got d_x={d_x}, d_y={d_y}")
    o = as_vec3(origin, "origin")
    return SurfaceGrid(int(n_rows), int(n_cols), float(d_x), float(d_y), tuple(float(c) for c in o))


def element_position(grid: SurfaceGrid, n: int, m: int) -> np.ndarray:
    return grid.positions[grid.flat_index(n, m)].copy()


def nearest_element(grid: SurfaceGrid, point: Sequence[float]) -> tuple[int, int]:
    """Lattice indices ``(n, m)`` of the element closest to ``point`` (plane projection)."""
    p = as_vec3(point, "point")
    j = int(np.clip(np.rint((p[1] - grid.origin[1]) / grid.d_x + (grid.n_cols - 1) / 2.0), 0, grid.n_cols - 1))
    i = int(np.clip(np.rint((p[2] - grid.origin[2]) / grid.d_y + (grid.n_rows - 1) / 2.0), 0, grid.n_rows - 1))
    return int(grid.row_indices[i]), int(grid.col_indices[j])


@dataclass(frozen=True, eq=False)
class GroupMap:
    """Partition of the elements into jointly controlled groups.

    ``labels[e]`` is the group id of flat element ``e``; ids run ``0 .. n_groups-1``
    in row-major group order (row block first, then column).
    """

    labels: np.ndarray
    scheme: str

    @property
    def n_groups(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    @cached_property
    def members(self) -> list[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.searchsorted(self.labels[order], np.arange(self.n_groups + 1))
        return [order[bounds[g]:bounds[g + 1]] for g in range(self.n_groups)]

    @property
    def groups(self) -> dict[int, frozenset[int]]:
        return {g: frozenset(int(e) for e in idx) for g, idx in enumerate(self.members)}


def column_groups(grid: SurfaceGrid, cells_per_group: int) -> GroupMap:
    """Group vertical runs of ``cells_per_group`` elements within each column."""
    if cells_per_group < 1 or grid.n_rows % cells_per_group:
        raise ValueError(
            f"cells_per_group={cells_per_group} must divide n_rows={grid.n_rows}"
        )
    rows = np.arange(grid.n_rows)[:, None]
    cols = np.arange(grid.n_cols)[None, :]
    labels = (rows // cells_per_group) * grid.n_cols + cols
    if cells_per_group == 1:
        scheme = "per-element"
    elif cells_per_group == grid.n_rows and grid.n_cols == 1:
        scheme = "whole-surface"
    else:
        scheme = f"column-of-{cells_per_group}"
    return GroupMap(labels=labels.ravel().astype(np.int64), scheme=scheme)


def whole_surface(grid: SurfaceGrid) -> GroupMap:
    return GroupMap(labels=np.zeros(grid.n_elements, dtype=np.int64), scheme="whole-surface")


@dataclass(frozen=True, eq=False)
class PathGeometry:
    """Per-element distances (m) and angles (rad), flat row-major arrays."""

    r_t: np.ndarray
    r_r: np.ndarray
    theta_inc: np.ndarray
    theta_dep: np.ndarray
    theta_tx: np.ndarray
    theta_rx: np.ndarray


def _angle_between(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # atan2 form stays accurate near 0 and pi, unlike arccos of a dot product
    cross = np.linalg.norm(np.cross(a, b), axis=-1)
    dot = np.sum(a * b, axis=-1)
    return np.arctan2(cross, dot)


def path_geometry(
    grid: SurfaceGrid,
    tx: Sequence[float],
    rx: Sequence[float],
    tx_boresight: Sequence[float] | None = None,
    rx_boresight: Sequence[float] | None = None,
) -> PathGeometry:
    """Distances and angles between every element and the two antennas.

    Antenna boresights default to the ray from the antenna to the surface centre.
    """
    tx = as_vec3(tx, "tx")
    rx = as_vec3(rx, "rx")
    center = np.asarray(grid.origin, dtype=float)
    for name, p in (("tx", tx), ("rx", rx)):
        if p[0] == center[0]:
            raise GeometryError(f"{name} at {p.tolist()} lies in the surface plane x={center[0]}")

    pos = grid.positions
    to_tx = tx - pos
    to_rx = rx - pos
    r_t = np.linalg.norm(to_tx, axis=1)
    r_r = np.linalg.norm(to_rx, axis=1)
    normal = np.array([1.0, 0.0, 0.0])

    bt = center - tx if tx_boresight is None else as_vec3(tx_boresight, "tx_boresight")
    br = center - rx if rx_boresight is None else as_vec3(rx_boresight, "rx_boresight")
    if not (np.any(bt) and np.any(br)):
        raise GeometryError("antenna boresight must be a non-zero vector")

    return PathGeometry(
        r_t=r_t,
        r_r=r_r,
        theta_inc=_angle_between(to_tx, normal),
        theta_dep=_angle_between(to_rx, normal),
        theta_tx=_angle_between(-to_tx, bt),
        theta_rx=_angle_between(-to_rx, br),
    )
