"""Curve diagnostics: plateau-edge detection and power-law slope fits."""

from __future__ import annotations

import numpy as np

from .errors import InvalidParameterError

__all__ = ["detect_plateau_edge", "loglog_slope"]


def detect_plateau_edge(h_values, currents, min_log_jump: float = 0.5):
    """Locate the sharp current drop on the negative-field side of a (h, J) curve.

    Scans consecutive pairs whose midpoint lies at h < 0 and returns the
    midpoint h of the pair with the largest |d log J / d h|.  When no
    single step changes log J by at least ``min_log_jump`` (the curve is
    smooth or noise-dominated) the result is ``None`` rather than an error.

    The caller should sample the curve densely; with a grid of >= 50
    points spanning roughly [-20/N, 0] the detected edge for the driven
    chain sits near -5/N.
    """
    h = np.asarray(h_values, dtype=float)
    J = np.asarray(currents, dtype=float)
    if h.shape != J.shape or h.ndim != 1 or h.size < 2:
        raise InvalidParameterError("need matching 1-d arrays with at least two points")
    if np.any(J <= 0) or not np.all(np.isfinite(J)):
        raise InvalidParameterError("currents must be positive and finite")
    order = np.argsort(h)
    h, J = h[order], J[order]

    dlog = np.diff(np.log(J))
    dh = np.diff(h)
    if np.any(dh == 0):
        raise InvalidParameterError("h values must be distinct")
    mid = (h[:-1] + h[1:]) / 2.0
    negative = mid < 0
    if not negative.any():
        return None
    slopes = np.abs(dlog / dh)
    slopes[~negative] = -np.inf
    best = int(np.argmax(slopes))
    if abs(dlog[best]) < min_log_jump:
        return None
    return float(mid[best])


def loglog_slope(x_values, y_values, window=None):
    """Least-squares slope and intercept of log y against log x.

    ``window = (lo, hi)`` restricts the fit to lo <= x <= hi; the window
    is exposed rather than hard-coded because scaling fits are sensitive
    to the chosen range.
    """
    x = np.asarray(x_values, dtype=float)
    y = np.asarray(y_values, dtype=float)
    if window is not None:
        lo, hi = window
        keep = (x >= lo) & (x <= hi)
        x, y = x[keep], y[keep]
    if x.size < 2:
        raise InvalidParameterError("need at least two points inside the fit window")
    if np.any(x <= 0) or np.any(y <= 0):
        raise InvalidParameterError("log-log fit needs positive data")
    design = np.vstack([np.log(x), np.ones(x.size)]).T
    slope, intercept = np.linalg.lstsq(design, np.log(y), rcond=None)[0]
    return float(slope), float(intercept)
