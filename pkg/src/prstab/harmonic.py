"""The equidistant-semicircle frame in R^2 and its closed-form constants."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import Field, as_matrix


def _check_m(m: int) -> int:
    m = int(m)
    if m < 3:
        raise ValueError(f"need at least 3 rows, got m={m}")
    return m


@dataclass(frozen=True)
class HarmonicFrame:
    """m unit rows at angles j*pi/m, j = 0..m-1 (consecutive gap pi/m)."""

    m: int
    matrix: np.ndarray


def harmonic_frame(m: int) -> HarmonicFrame:
    """Build the m x 2 frame of equidistant unit vectors on the semicircle."""
    m = _check_m(m)
    ang = np.arange(m) * np.pi / m
    rows = np.stack([np.cos(ang), np.sin(ang)], axis=1)
    return HarmonicFrame(m=m, matrix=as_matrix(rows, Field.REAL))


def abs_sine_sum(m: int, theta) -> np.ndarray | float:
    """Direct summation of |sin(2j*pi/m + 2*theta)| over j = 0..m-1.

    Periodic in theta with period pi/m for even m and pi/(2m) for odd m.
    """
    m = _check_m(m)
    th = np.asarray(theta, dtype=float)
    j = np.arange(m)
    out = np.abs(np.sin(2 * j * np.pi / m + 2 * th[..., None])).sum(axis=-1)
    return out if out.ndim else float(out)


def abs_sine_sum_closed(m: int, theta) -> np.ndarray | float:
    """Closed form for `abs_sine_sum`: one cosine per parity branch.

    The fundamental-interval formulas are extended to all theta by reducing
    modulo the period instead of tabulating branches.
    """
    m = _check_m(m)
    th = np.asarray(theta, dtype=float)
    if m % 2 == 0:
        period = np.pi / m
        red = np.mod(th, period)
        out = 2 * np.cos(2 * red - np.pi / m) / np.sin(np.pi / m)
    else:
        period = np.pi / (2 * m)
        red = np.mod(th, period)
        out = np.cos(2 * red - np.pi / (2 * m)) / np.sin(np.pi / (2 * m))
    return out if out.ndim else float(out)


def abs_sine_sum_max(m: int) -> tuple[float, float]:
    """Maximum of `abs_sine_sum` and its maximizer in the fundamental period.

    Even m: (2 / sin(pi/m), pi/(2m)).  Odd m: (1 / sin(pi/(2m)), pi/(4m)).
    """
    m = _check_m(m)
    if m % 2 == 0:
        return 2.0 / np.sin(np.pi / m), np.pi / (2 * m)
    return 1.0 / np.sin(np.pi / (2 * m)), np.pi / (4 * m)


def harmonic_condition_number(m: int) -> float:
    """Exact condition number of the harmonic frame, by parity.

    Even m: 1/sqrt(1 - 2/(m sin(pi/m))).  Odd m: 1/sqrt(1 - 1/(m sin(pi/2m))).
    Strictly decreasing along each parity class with limit sqrt(pi/(pi-2)).
    """
    m = _check_m(m)
    if m % 2 == 0:
        return float(1.0 / np.sqrt(1.0 - 2.0 / (m * np.sin(np.pi / m))))
    return float(1.0 / np.sqrt(1.0 - 1.0 / (m * np.sin(np.pi / (2 * m)))))


def harmonic_lower_constant(m: int) -> float:
    """Optimal lower Lipschitz constant of the harmonic frame.

    Equals sqrt(m/2 - G/2) where G is the `abs_sine_sum` maximum.
    """
    m = _check_m(m)
    gmax, _ = abs_sine_sum_max(m)
    return float(np.sqrt(m / 2 - gmax / 2))


def harmonic_extremal_pair(m: int) -> tuple[np.ndarray, np.ndarray]:
    """The orthonormal pair achieving the harmonic frame's lower constant.

    Returns (x, y) with x = (cos w, -sin w), y = (-sin w, -cos w) where
    w = pi/(2m) for even m and pi/(4m) for odd m.
    """
    m = _check_m(m)
    w = np.pi / (2 * m) if m % 2 == 0 else np.pi / (4 * m)
    x = np.array([np.cos(w), -np.sin(w)])
    y = np.array([-np.sin(w), -np.cos(w)])
    return x, y
