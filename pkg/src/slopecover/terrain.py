"""Elevation grids: text format, seeded synthetic generation, 2x2 aggregation."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np

_GENERATION_ATTEMPTS = 64
_MASK_FREE = "."
_MASK_OBSTACLE = "#"


class TerrainParseError(ValueError):
    """Terrain or mask section of a terrain file is structurally malformed."""


class TerrainGenerationError(RuntimeError):
    """No connected obstacle layout was found within the retry budget."""


@dataclass(frozen=True, eq=False)
class HeightGrid:
    """Fine elevation grid; one cell per vehicle footprint.

    heights are metres relative to an arbitrary datum (only differences
    matter). Obstacles live in a separate boolean mask so heights stay finite.
    Instances are immutable and safe to share across threads.
    """

    rows: int
    cols: int
    heights: np.ndarray
    obstacle: np.ndarray
    spacing: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", int(self.rows))
        object.__setattr__(self, "cols", int(self.cols))
        object.__setattr__(self, "spacing", float(self.spacing))
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError(f"grid dimensions must be positive, got {self.rows}x{self.cols}")
        if self.rows % 2 or self.cols % 2:
            raise ValueError(
                f"grid dimensions must be even so 2x2 aggregation is exact, got {self.rows}x{self.cols}"
            )
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        heights = np.asarray(self.heights, dtype=np.float64)
        obstacle = np.asarray(self.obstacle, dtype=bool)
        if heights.size != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} heights, got {heights.size}")
        if obstacle.size != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} obstacle flags, got {obstacle.size}")
        heights = heights.reshape(self.rows, self.cols).copy()
        obstacle = obstacle.reshape(self.rows, self.cols).copy()
        if not np.isfinite(heights).all():
            raise ValueError("heights must be finite (no nan or inf)")
        heights.setflags(write=False)
        obstacle.setflags(write=False)
        object.__setattr__(self, "heights", heights)
        object.__setattr__(self, "obstacle", obstacle)


@dataclass(frozen=True, eq=False)
class MegaGrid:
    """Aggregated grid of 2x2 fine-cell blocks; its cells are the graph nodes."""

    rows: int
    cols: int
    heights: np.ndarray
    blocked: np.ndarray
    spacing: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", int(self.rows))
        object.__setattr__(self, "cols", int(self.cols))
        object.__setattr__(self, "spacing", float(self.spacing))
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError(f"grid dimensions must be positive, got {self.rows}x{self.cols}")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        heights = np.asarray(self.heights, dtype=np.float64)
        blocked = np.asarray(self.blocked, dtype=bool)
        if heights.size != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} heights, got {heights.size}")
        if blocked.size != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} blocked flags, got {blocked.size}")
        heights = heights.reshape(self.rows, self.cols).copy()
        blocked = blocked.reshape(self.rows, self.cols).copy()
        if not np.isfinite(heights).all():
            raise ValueError("heights must be finite (no nan or inf)")
        heights.setflags(write=False)
        blocked.setflags(write=False)
        object.__setattr__(self, "heights", heights)
        object.__setattr__(self, "blocked", blocked)


@dataclass(frozen=True)
class TerrainGenSpec:
    """Parameters for the seeded terrain generator.

    roughness targets the average slope of the aggregated grid: the noise
    field is rescaled so the achieved value matches (0 forces perfectly flat
    terrain).
    """

    rows: int
    cols: int
    seed: int = 0
    max_obstacles: int = 0
    roughness: float = 0.0
    spacing: float = 1.0

    def __post_init__(self) -> None:
        if self.rows <= 0 or self.cols <= 0:
            raise ValueError(f"grid dimensions must be positive, got {self.rows}x{self.cols}")
        if self.rows % 2 or self.cols % 2:
            raise ValueError(
                f"grid dimensions must be even so 2x2 aggregation is exact, got {self.rows}x{self.cols}"
            )
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if self.max_obstacles < 0:
            raise ValueError(f"max_obstacles must be non-negative, got {self.max_obstacles}")
        if not 0.0 <= self.roughness <= 1.0:
            raise ValueError(f"roughness must lie in [0, 1], got {self.roughness}")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")


def aggregate(grid: HeightGrid) -> MegaGrid:
    """Collapse 2x2 fine-cell blocks into mega cells.

    Mega height is the arithmetic mean of the four fine heights; a mega cell
    is blocked if any of its four fine cells is an obstacle (conservative:
    never plan over an obstacle). Spacing doubles.
    """
    half_rows, half_cols = grid.rows // 2, grid.cols // 2
    blocks = grid.heights.reshape(half_rows, 2, half_cols, 2)
    mega_heights = blocks.mean(axis=(1, 3))
    blocked = grid.obstacle.reshape(half_rows, 2, half_cols, 2).any(axis=(1, 3))
    return MegaGrid(
        rows=half_rows,
        cols=half_cols,
        heights=mega_heights,
        blocked=blocked,
        spacing=2.0 * grid.spacing,
    )


def parse_height_grid(text: str) -> HeightGrid:
    """Parse the terrain text format.

    Line 1 is ``N M spacing``; then N rows of M heights; then optionally a
    line ``MASK`` followed by N rows of ``.``/``#`` characters. A missing
    mask means all cells are free.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise TerrainParseError("empty terrain file")
    header = lines[0].split()
    if len(header) != 3:
        raise TerrainParseError(f"header must be 'N M spacing', got {lines[0]!r}")
    try:
        rows, cols, spacing = int(header[0]), int(header[1]), float(header[2])
    except ValueError as exc:
        raise TerrainParseError(f"malformed header {lines[0]!r}") from exc
    if rows <= 0 or cols <= 0:
        raise ValueError(f"grid dimensions must be positive, got {rows}x{cols}")
    if len(lines) < 1 + rows:
        raise TerrainParseError(f"expected {rows} height rows, found {len(lines) - 1}")
    values = np.empty((rows, cols), dtype=np.float64)
    for i in range(rows):
        tokens = lines[1 + i].split()
        if len(tokens) != cols:
            raise TerrainParseError(f"height row {i}: expected {cols} values, got {len(tokens)}")
        try:
            values[i] = [float(t) for t in tokens]
        except ValueError as exc:
            raise TerrainParseError(f"height row {i}: non-numeric value") from exc
    obstacle = np.zeros((rows, cols), dtype=bool)
    rest = lines[1 + rows :]
    if rest:
        if rest[0].strip() != "MASK":
            raise TerrainParseError(f"expected 'MASK' or end of file, got {rest[0]!r}")
        if len(rest) != 1 + rows:
            raise TerrainParseError(f"mask section: expected {rows} rows, found {len(rest) - 1}")
        for i in range(rows):
            line = rest[1 + i].strip()
            if len(line) != cols:
                raise TerrainParseError(f"mask row {i}: expected {cols} characters, got {len(line)}")
            for j, ch in enumerate(line):
                if ch == _MASK_OBSTACLE:
                    obstacle[i, j] = True
                elif ch != _MASK_FREE:
                    raise TerrainParseError(f"mask row {i}: invalid character {ch!r}")
    return HeightGrid(rows=rows, cols=cols, heights=values, obstacle=obstacle, spacing=spacing)


def format_height_grid(grid: HeightGrid) -> str:
    """Serialize a grid to the terrain text format (9 significant digits)."""
    lines = [f"{grid.rows} {grid.cols} {grid.spacing:.9g}"]
    for row in grid.heights:
        lines.append(" ".join(f"{v:.9g}" for v in row))
    if grid.obstacle.any():
        lines.append("MASK")
        for row in grid.obstacle:
            lines.append("".join(_MASK_OBSTACLE if flag else _MASK_FREE for flag in row))
    return "\n".join(lines) + "\n"


def load_height_grid(path: str | Path) -> HeightGrid:
    return parse_height_grid(Path(path).read_text(encoding="utf-8"))


def save_height_grid(grid: HeightGrid, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(format_height_grid(grid))


def generate_terrain(spec: TerrainGenSpec) -> HeightGrid:
    """Deterministically generate a random terrain.

    Midpoint-displacement noise gives the relief; the field is rescaled so
    the aggregated grid's average slope equals spec.roughness. Rectangular
    obstacle patches (exactly max_obstacles of them, so the merged region
    count stays <= max_obstacles) are redrawn until the free mega cells form
    a single connected region.
    """
    rng = np.random.default_rng(spec.seed)
    field = _midpoint_displacement(rng, spec.rows, spec.cols)
    half_rows, half_cols = spec.rows // 2, spec.cols // 2
    for _ in range(_GENERATION_ATTEMPTS):
        obstacle = _place_obstacles(rng, spec.rows, spec.cols, spec.max_obstacles)
        blocked = obstacle.reshape(half_rows, 2, half_cols, 2).any(axis=(1, 3))
        free = ~blocked
        if free.any() and _component_count(free) == 1:
            break
    else:
        raise TerrainGenerationError(
            f"free mega cells never formed one connected region after {_GENERATION_ATTEMPTS} "
            f"attempts (rows={spec.rows}, cols={spec.cols}, "
            f"max_obstacles={spec.max_obstacles}, seed={spec.seed})"
        )
    heights = _calibrate_slope(field, blocked, spec)
    return HeightGrid(
        rows=spec.rows, cols=spec.cols, heights=heights, obstacle=obstacle, spacing=spec.spacing
    )


def _midpoint_displacement(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Classic diamond-square field on a (2^k + 1) lattice, cropped to rows x cols."""
    size = 1
    while size < max(rows, cols):
        size *= 2
    n = size + 1
    field = np.zeros((n, n), dtype=np.float64)
    field[::size, ::size] = rng.standard_normal((2, 2))
    step, scale = size, 1.0
    while step > 1:
        half = step // 2
        top_left = field[0 : n - 1 : step, 0 : n - 1 : step]
        top_right = field[0 : n - 1 : step, step::step]
        bottom_left = field[step::step, 0 : n - 1 : step]
        bottom_right = field[step::step, step::step]
        field[half::step, half::step] = (
            top_left + top_right + bottom_left + bottom_right
        ) / 4.0 + scale * rng.standard_normal(top_left.shape)
        for row0, col0 in ((0, half), (half, 0)):
            grid_r, grid_c = np.meshgrid(
                np.arange(row0, n, step), np.arange(col0, n, step), indexing="ij"
            )
            total = np.zeros(grid_r.shape, dtype=np.float64)
            count = np.zeros(grid_r.shape, dtype=np.float64)
            for dr, dc in ((-half, 0), (half, 0), (0, -half), (0, half)):
                nr, nc = grid_r + dr, grid_c + dc
                ok = (nr >= 0) & (nr < n) & (nc >= 0) & (nc < n)
                total[ok] += field[nr[ok], nc[ok]]
                count[ok] += 1
            field[grid_r, grid_c] = total / count + scale * rng.standard_normal(grid_r.shape)
        scale *= 0.5
        step = half
    return field[:rows, :cols].copy()


def _place_obstacles(
    rng: np.random.Generator, rows: int, cols: int, count: int
) -> np.ndarray:
    obstacle = np.zeros((rows, cols), dtype=bool)
    if count == 0:
        return obstacle
    # small patches keep the free region connected with high probability
    max_side = max(2, min(rows, cols) // 16)
    for _ in range(count):
        height = int(rng.integers(1, max_side + 1))
        width = int(rng.integers(1, max_side + 1))
        row = int(rng.integers(0, rows - height + 1))
        col = int(rng.integers(0, cols - width + 1))
        obstacle[row : row + height, col : col + width] = True
    return obstacle


def _component_count(mask: np.ndarray) -> int:
    """Number of 4-connected regions of True cells."""
    rows, cols = mask.shape
    seen = np.zeros(mask.shape, dtype=bool)
    count = 0
    for r0, c0 in zip(*np.nonzero(mask)):
        if seen[r0, c0]:
            continue
        count += 1
        seen[r0, c0] = True
        queue: deque[tuple[int, int]] = deque([(int(r0), int(c0))])
        while queue:
            r, c = queue.popleft()
            for nr, nc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if 0 <= nr < rows and 0 <= nc < cols and mask[nr, nc] and not seen[nr, nc]:
                    seen[nr, nc] = True
                    queue.append((nr, nc))
    return count


def _calibrate_slope(field: np.ndarray, blocked: np.ndarray, spec: TerrainGenSpec) -> np.ndarray:
    """Rescale the noise field so the aggregated average slope equals spec.roughness."""
    half_rows, half_cols = spec.rows // 2, spec.cols // 2
    mega = field.reshape(half_rows, 2, half_cols, 2).mean(axis=(1, 3))
    free = ~blocked
    d = 2.0 * spec.spacing
    horizontal = free[:, :-1] & free[:, 1:]
    vertical = free[:-1, :] & free[1:, :]
    count = int(horizontal.sum()) + int(vertical.sum())
    total = float(np.abs(mega[:, 1:] - mega[:, :-1])[horizontal].sum())
    total += float(np.abs(mega[1:, :] - mega[:-1, :])[vertical].sum())
    if count > 0 and total > 0.0:
        return field * (spec.roughness * d * count / total)
    # no free adjacent pair (single mega cell): slope target is undefined
    return field * spec.roughness
