"""Second-order finite-difference stencils on uniform lattices.

Space-time grids are indexed [t, x]: axis 0 is time, axis -1 is space.
Non-periodic stencils are centered in the interior and one-sided (still second
order) at the boundaries.
"""

import numpy as np

from .errors import GridMismatchError, ValidationError

T_AXIS = 0
X_AXIS = -1


def require_commensurate(*grids: np.ndarray) -> tuple[int, ...]:
    """Raise GridMismatchError unless all grids share one shape."""
    shapes = {np.shape(g) for g in grids}
    if len(shapes) != 1:
        raise GridMismatchError(f"grid mismatch: shapes {sorted(shapes)}")
    return shapes.pop()


def require_min_size(grid: np.ndarray, minimum: int = 3) -> None:
    if any(n < minimum for n in np.shape(grid)):
        raise ValidationError(f"grid too small: shape {np.shape(grid)}, need at least {minimum} per axis")


def first_derivative(f: np.ndarray, h: float, axis: int = X_AXIS) -> np.ndarray:
    return np.gradient(f, h, axis=axis, edge_order=2)


def second_derivative(f: np.ndarray, h: float, axis: int = X_AXIS) -> np.ndarray:
    g = np.moveaxis(np.asarray(f), axis, 0)
    n = g.shape[0]
    if n < 3:
        raise ValidationError(f"need at least 3 samples along axis {axis}, got {n}")
    out = np.empty_like(g)
    out[1:-1] = g[2:] - 2.0 * g[1:-1] + g[:-2]
    if n >= 4:
        out[0] = 2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]
        out[-1] = 2.0 * g[-1] - 5.0 * g[-2] + 4.0 * g[-3] - g[-4]
    else:
        out[0] = out[1]
        out[-1] = out[-2]
    return np.moveaxis(out / (h * h), 0, axis)


def dalembertian(f: np.ndarray, dx: float, dt: float) -> np.ndarray:
    """(d_t^2 - d_x^2) f on a [t, x] grid."""
    return second_derivative(f, dt, T_AXIS) - second_derivative(f, dx, X_AXIS)


def periodic_laplacian(f: np.ndarray, h: float) -> np.ndarray:
    return (np.roll(f, -1, axis=-1) - 2.0 * f + np.roll(f, 1, axis=-1)) / (h * h)


def periodic_gradient(f: np.ndarray, h: float) -> np.ndarray:
    return (np.roll(f, -1, axis=-1) - np.roll(f, 1, axis=-1)) / (2.0 * h)
