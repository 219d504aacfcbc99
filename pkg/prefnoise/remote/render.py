"""Binary PGM (P5) rasters of a segment's final state."""
from typing import Tuple

import numpy as np

from prefnoise.exceptions import ConfigurationError
from prefnoise.model import Trajectory, TrajectoryPair

BACKGROUND = 0
AGENT = 128
GOAL = 255
AGENT_ON_GOAL = 192
POINTMASS_RESOLUTION = 64


def to_pgm(pixels: np.ndarray) -> bytes:
    pixels = np.asarray(pixels, dtype=np.uint8)
    height, width = pixels.shape
    return f'P5\n{width} {height}\n255\n'.encode('ascii') + pixels.tobytes()


def gridworld_raster(traj: Trajectory) -> np.ndarray:
    """One pixel per cell: agent grey, goal (bottom-right) white, black elsewhere."""
    cells = traj.states.shape[1] - 2
    size = int(round(np.sqrt(cells)))
    if size * size != cells:
        raise ConfigurationError(f'state width {traj.states.shape[1]} is not a gridworld observation')
    pixels = np.full((size, size), BACKGROUND, dtype=np.uint8)
    row, col = divmod(int(np.argmax(traj.states[-1][:cells])), size)
    pixels[size - 1, size - 1] = GOAL
    pixels[row, col] = AGENT_ON_GOAL if (row, col) == (size - 1, size - 1) else AGENT
    return pixels


def _pixel(coord: float, bounds: float, resolution: int) -> int:
    scaled = (coord + bounds) / (2 * bounds) * (resolution - 1)
    return int(np.clip(np.rint(scaled), 0, resolution - 1))


def pointmass_raster(traj: Trajectory, bounds: float = 1.0, resolution: int = POINTMASS_RESOLUTION) -> np.ndarray:
    """3x3 white dot at the final position over a grey marker at the origin; y grows upwards."""
    pixels = np.full((resolution, resolution), BACKGROUND, dtype=np.uint8)
    centre = _pixel(0.0, bounds, resolution)
    pixels[resolution - 1 - centre, centre] = AGENT
    x, y = traj.states[-1][:2]
    col = _pixel(float(x), bounds, resolution)
    row = resolution - 1 - _pixel(float(y), bounds, resolution)
    pixels[max(row - 1, 0):row + 2, max(col - 1, 0):col + 2] = GOAL
    return pixels


def render_trajectory(traj: Trajectory, bounds: float = 1.0) -> bytes:
    if traj.kind == 'gridworld':
        return to_pgm(gridworld_raster(traj))
    elif traj.kind == 'pointmass':
        return to_pgm(pointmass_raster(traj, bounds))
    raise ConfigurationError(f'cannot render environment kind {traj.kind!r}')


def render_pair(pair: TrajectoryPair, bounds: float = 1.0) -> Tuple[bytes, bytes]:
    return render_trajectory(pair.first, bounds), render_trajectory(pair.second, bounds)
