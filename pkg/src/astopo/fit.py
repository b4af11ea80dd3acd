"""Power-law fitting: ordinary least squares on log-log axes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import FitError

__all__ = ["PowerLawFit", "fit_power_law"]

DEFAULT_THRESHOLD = 0.9

# an accepted fit must cover at least this many distinct x values
MIN_DISTINCT_X = 5


@dataclass(frozen=True)
class PowerLawFit:
    """Result of fitting y = prefactor * x**exponent.

    ``exponent`` is the signed log-log slope (negative for decaying
    laws).  ``accepted`` requires both r_squared at or above the
    acceptance threshold and at least five distinct x values in range.
    """

    exponent: float
    prefactor: float
    r_squared: float
    accepted: bool
    x_range: tuple[float, float]
    n_points: int
    threshold: float


def fit_power_law(
    points: Iterable[tuple[float, float]],
    x_range: tuple[float, float] | None = None,
    threshold: float = DEFAULT_THRESHOLD,
) -> PowerLawFit:
    """Fit a power law to ``points`` by least squares on (log x, log y).

    ``x_range`` restricts the fit to an inclusive x interval; exactly the
    in-range points are used and their count is reported.  Points used in
    the fit must have strictly positive coordinates.  Fewer than two
    distinct in-range x values is an error; a constant y (zero log-y
    variance) leaves r-squared undefined and is reported as exponent 0,
    not accepted.
    """
    pts: Sequence[tuple[float, float]] = list(points)
    if x_range is not None:
        lo, hi = x_range
        pts = [(x, y) for x, y in pts if lo <= x <= hi]
    for x, y in pts:
        if not (x > 0 and y > 0):
            raise FitError(f"non-positive coordinate in point ({x}, {y})")
    distinct_x = len({x for x, _y in pts})
    if distinct_x < 2:
        raise FitError(
            f"need at least 2 distinct x values in range, got {distinct_x}"
        )
    used_range = (
        x_range if x_range is not None
        else (min(x for x, _ in pts), max(x for x, _ in pts))
    )

    lx = [math.log(x) for x, _y in pts]
    ly = [math.log(y) for _x, y in pts]
    n = len(pts)

    if max(ly) == min(ly):
        return PowerLawFit(
            exponent=0.0,
            prefactor=math.exp(ly[0]),
            r_squared=0.0,
            accepted=False,
            x_range=used_range,
            n_points=n,
            threshold=threshold,
        )

    mean_x = math.fsum(lx) / n
    mean_y = math.fsum(ly) / n
    sxx = math.fsum((a - mean_x) ** 2 for a in lx)
    sxy = math.fsum((a - mean_x) * (b - mean_y) for a, b in zip(lx, ly))
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x

    ss_res = math.fsum((b - (slope * a + intercept)) ** 2 for a, b in zip(lx, ly))
    ss_tot = math.fsum((b - mean_y) ** 2 for b in ly)
    r_squared = 1.0 - ss_res / ss_tot

    return PowerLawFit(
        exponent=slope,
        prefactor=math.exp(intercept),
        r_squared=r_squared,
        accepted=(r_squared >= threshold and distinct_x >= MIN_DISTINCT_X),
        x_range=used_range,
        n_points=n,
        threshold=threshold,
    )
