"""Whole-graph metric summary: computation and deterministic emission.

``compute_summary`` runs every metric over one graph and returns the
scalar record together with all per-figure data series and the fits that
produced the reported exponents.  ``emit_run`` writes those to an output
directory as plain-text files plus a manifest; given identical inputs the
emitted bytes are identical regardless of worker count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from . import global_metrics as gm
from . import local_metrics as lm
from .errors import AstopoError, EmptyGraphError, FitError, UndefinedMetricError
from .fit import DEFAULT_THRESHOLD, PowerLawFit, fit_power_law
from .graph import AsGraph, giant_component

__all__ = ["MetricSummary", "SummaryBundle", "compute_summary", "emit_run", "format_scalar"]

RICH_CLUB_FIT_RANGE = (0.1, 1.0)


@dataclass(frozen=True)
class MetricSummary:
    """One row per scalar of the standard topology summary table.

    ``None`` marks a value that does not exist for this graph (rejected
    fit, undefined correlation, ...): it is emitted as "-".
    """

    n: int
    m: int
    avg_degree: float
    k_max: int
    k_max_pl: float | None
    gamma: float | None
    knn_mean_norm: float | None
    gamma_nn: float | None
    assortativity: float | None
    c_mean: float | None
    c_coeff: float | None
    gamma_c: float | None
    gamma_rc: float | None
    avg_distance: float | None
    distance_sigma: float | None
    gamma_d: float | None
    node_betweenness_norm: float | None
    gamma_b: float | None
    edge_betweenness_norm: float | None
    top_eigenvalues: tuple[float, ...]


@dataclass
class SummaryBundle:
    """Summary record plus everything needed to emit a run directory."""

    summary: MetricSummary
    series: dict[str, list[tuple]]
    fits: dict[str, PowerLawFit]
    notes: list[str] = field(default_factory=list)


def _positive(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Points a log-log fit can use."""
    return [(x, y) for x, y in points if x > 0 and y > 0]


def _try_fit(
    points: Sequence[tuple[float, float]],
    threshold: float,
    x_range: tuple[float, float] | None = None,
) -> PowerLawFit | None:
    try:
        return fit_power_law(_positive(points), x_range=x_range, threshold=threshold)
    except FitError:
        return None


def _fitted_exponent(fit: PowerLawFit | None, sign: float) -> float | None:
    """The reported exponent (``sign`` applies the table's convention:
    -1 for decaying laws reported as positive magnitudes), or None when
    the fit is missing or not accepted."""
    if fit is None or not fit.accepted:
        return None
    return sign * fit.exponent


def compute_summary(
    g: AsGraph,
    eigs: int | None = None,
    fit_threshold: float = DEFAULT_THRESHOLD,
    workers: int = 1,
) -> SummaryBundle:
    """Compute every metric of the summary table for ``g``.

    Distance metrics require connectivity, so they are computed on the
    giant component when the graph is disconnected (noted in the bundle).
    Metrics undefined for the input (zero-variance assortativity, fits
    with too few points...) come back as None rather than failing.
    """
    if g.n == 0:
        raise EmptyGraphError("cannot summarize an empty graph")

    notes: list[str] = []
    series: dict[str, list[tuple]] = {}
    fits: dict[str, PowerLawFit] = {}

    def record_fit(name: str, fit: PowerLawFit | None) -> PowerLawFit | None:
        if fit is not None:
            fits[name] = fit
        return fit

    # -- degrees ---------------------------------------------------------
    dist = lm.degree_distribution(g)
    avg_degree = lm.average_degree(g)
    pdf_points = [(k, dist.pdf(k)) for k in dist.degrees()]
    ccdf_points = [(k, dist.ccdf(k)) for k in dist.degrees()]
    series["degree_pdf"] = pdf_points
    series["degree_ccdf"] = ccdf_points

    ccdf_fit = record_fit("degree_ccdf", _try_fit(ccdf_points, fit_threshold))
    # a pdf ~ k**-gamma has ccdf ~ k**-(gamma-1)
    ccdf_exponent = _fitted_exponent(ccdf_fit, -1.0)
    gamma = 1.0 + ccdf_exponent if ccdf_exponent is not None else None
    k_max_pl = None
    if gamma is not None and gamma > 1.0:
        k_max_pl = lm.power_law_max_degree(g.n, gamma)

    # -- neighbor degree ---------------------------------------------------
    knn_mean_norm = None
    gamma_nn = None
    if g.m >= 1:
        knn = lm.avg_neighbor_degree(g)
        series["avg_neighbor_degree"] = sorted(knn.raw.items())
        series["avg_neighbor_degree_norm"] = sorted(knn.normalized.items())
        weight_total = sum(dist.counts[k] for k in knn.normalized)
        knn_mean_norm = (
            sum(knn.normalized[k] * dist.counts[k] for k in sorted(knn.normalized))
            / weight_total
        )
        gamma_nn = _fitted_exponent(
            record_fit(
                "avg_neighbor_degree_norm",
                _try_fit(series["avg_neighbor_degree_norm"], fit_threshold),
            ),
            -1.0,
        )

    # -- assortativity -----------------------------------------------------
    try:
        assort = lm.assortativity(g)
    except UndefinedMetricError as exc:
        assort = None
        notes.append(f"assortativity: {exc}")

    # -- clustering ----------------------------------------------------------
    c_mean = c_coeff = gamma_c = None
    c_of_k = lm.local_clustering(g)
    if c_of_k:
        series["clustering"] = sorted(c_of_k.items())
        gamma_c = _fitted_exponent(
            record_fit("clustering", _try_fit(series["clustering"], fit_threshold)),
            -1.0,
        )
    try:
        c_mean, c_coeff = lm.clustering_summaries(g)
    except UndefinedMetricError as exc:
        notes.append(f"clustering summaries: {exc}")

    # -- rich club -------------------------------------------------------------
    gamma_rc = None
    if g.n >= 2:
        phi = lm.rich_club(g)
        series["rich_club"] = sorted(phi.items())
        gamma_rc = _fitted_exponent(
            record_fit(
                "rich_club",
                _try_fit(series["rich_club"], fit_threshold, RICH_CLUB_FIT_RANGE),
            ),
            -1.0,
        )

    # -- distances (giant component when disconnected) -------------------------
    avg_distance = distance_sigma = gamma_d = None
    gc = giant_component(g)
    if gc.n < g.n:
        notes.append(
            f"distance metrics computed on the giant component "
            f"({gc.n} nodes; {g.n - gc.n} excluded)"
        )
    if gc.n >= 2:
        stats = gm.distance_distribution(gc, workers=workers)
        avg_distance = stats.mean
        distance_sigma = stats.sigma
        series["distance_distribution"] = [
            (d, c, stats.probability(d)) for d, c in sorted(stats.counts.items())
        ]
        series["expansion"] = [
            (d, stats.expansion(d)) for d in sorted(stats.counts)
        ]
        d_of_k = gm.avg_distance_by_degree(gc, workers=workers)
        series["distance_by_degree"] = sorted(d_of_k.items())
        gamma_d = _fitted_exponent(
            record_fit(
                "distance_by_degree",
                _try_fit(series["distance_by_degree"], fit_threshold),
            ),
            -1.0,
        )
    else:
        notes.append("distance metrics skipped: giant component below 2 nodes")

    # -- betweenness ------------------------------------------------------------
    node_bw_norm = gamma_b = edge_bw_norm = None
    if g.n >= 2:
        bw = gm.betweenness(g, workers=workers)
        node_bw_norm = bw.mean_node_normalized()
        b_of_k = gm.node_betweenness_by_degree(g, bw)
        series["node_betweenness_by_degree"] = sorted(b_of_k.items())
        # betweenness grows with degree; the table reports the raw slope
        gamma_b = _fitted_exponent(
            record_fit(
                "node_betweenness_by_degree",
                _try_fit(series["node_betweenness_by_degree"], fit_threshold),
            ),
            1.0,
        )
        if g.m >= 1:
            edge_bw_norm = bw.mean_edge_normalized()
            series["edge_betweenness_by_degrees"] = [
                (k1, k2, v)
                for (k1, k2), v in gm.edge_betweenness_by_degrees(g, bw).items()
            ]

    # -- joint degree distribution ------------------------------------------------
    if g.m >= 1:
        j = lm.jdd(g)
        series["jdd"] = [
            (k1, k2, c) for (k1, k2), c in sorted(j.edge_counts.items())
        ]

    # -- spectrum --------------------------------------------------------------------
    k_default = math.ceil(0.10 * g.n)
    k_spec = min(g.n, max(eigs if eigs is not None else k_default, min(3, g.n)))
    spec = gm.spectrum_top(g, k_spec)
    series["spectrum"] = [
        ((rank + 1) / g.n, abs(v)) for rank, v in enumerate(spec.eigenvalues)
    ]
    top_eigenvalues = tuple(spec.eigenvalues[: min(3, len(spec.eigenvalues))])

    summary = MetricSummary(
        n=g.n,
        m=g.m,
        avg_degree=avg_degree,
        k_max=dist.k_max,
        k_max_pl=k_max_pl,
        gamma=gamma,
        knn_mean_norm=knn_mean_norm,
        gamma_nn=gamma_nn,
        assortativity=assort,
        c_mean=c_mean,
        c_coeff=c_coeff,
        gamma_c=gamma_c,
        gamma_rc=gamma_rc,
        avg_distance=avg_distance,
        distance_sigma=distance_sigma,
        gamma_d=gamma_d,
        node_betweenness_norm=node_bw_norm,
        gamma_b=gamma_b,
        edge_betweenness_norm=edge_bw_norm,
        top_eigenvalues=top_eigenvalues,
    )
    return SummaryBundle(summary, series, fits, notes)


# -- emission ------------------------------------------------------------------


def format_scalar(value: Any) -> str:
    """Render one record scalar: 6 significant digits, "-" for absent."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return f"{value:.6g}"


_SERIES_HEADERS = {
    "degree_pdf": "k probability",
    "degree_ccdf": "k probability",
    "avg_neighbor_degree": "k knn",
    "avg_neighbor_degree_norm": "k knn_over_n_minus_1",
    "clustering": "k c",
    "rich_club": "rho_over_n phi",
    "distance_distribution": "x count probability",
    "expansion": "x value",
    "distance_by_degree": "k d",
    "node_betweenness_by_degree": "k b",
    "edge_betweenness_by_degrees": "k1 k2 value",
    "jdd": "k1 k2 edges",
    "spectrum": "rank_over_n abs_lambda",
}

_SUMMARY_ROWS = [
    ("n", "n"),
    ("m", "m"),
    ("avg_degree", "avg_degree"),
    ("k_max", "k_max"),
    ("k_max_pl", "k_max_pl"),
    ("gamma", "gamma"),
    ("knn_mean_norm", "knn_mean_norm"),
    ("gamma_nn", "gamma_nn"),
    ("assortativity", "assortativity"),
    ("c_mean", "c_mean"),
    ("c_coeff", "c_coeff"),
    ("gamma_c", "gamma_c"),
    ("gamma_rc", "gamma_rc"),
    ("avg_distance", "avg_distance"),
    ("distance_sigma", "distance_sigma"),
    ("gamma_d", "gamma_d"),
    ("node_betweenness_norm", "node_betweenness_norm"),
    ("gamma_b", "gamma_b"),
    ("edge_betweenness_norm", "edge_betweenness_norm"),
]


def summary_lines(s: MetricSummary) -> list[str]:
    lines = [f"{label} {format_scalar(getattr(s, attr))}" for label, attr in _SUMMARY_ROWS]
    for i, v in enumerate(s.top_eigenvalues, start=1):
        lines.append(f"eigenvalue_{i} {format_scalar(v)}")
    return lines


def summary_json(s: MetricSummary) -> dict[str, Any]:
    def jsonable(v: Any) -> Any:
        if isinstance(v, float):
            return float(f"{v:.6g}")
        return v

    doc = {label: jsonable(getattr(s, attr)) for label, attr in _SUMMARY_ROWS}
    doc["top_eigenvalues"] = [jsonable(v) for v in s.top_eigenvalues]
    return doc


def _series_lines(name: str, rows: list[tuple]) -> list[str]:
    lines = [f"# {_SERIES_HEADERS.get(name, 'x value')}"]
    for row in rows:
        lines.append(" ".join(str(v) for v in row))
    return lines


def fit_record_lines(fits: dict[str, PowerLawFit]) -> list[str]:
    lines = ["# series exponent prefactor r_squared accepted n_points x_lo x_hi"]
    for name in sorted(fits):
        f = fits[name]
        lines.append(
            f"{name} {format_scalar(f.exponent)} {format_scalar(f.prefactor)} "
            f"{format_scalar(f.r_squared)} {format_scalar(f.accepted)} "
            f"{f.n_points} {format_scalar(f.x_range[0])} {format_scalar(f.x_range[1])}"
        )
    return lines


def emit_run(
    bundle: SummaryBundle,
    out_dir: Path,
    emit: str = "both",
    prefix: str = "",
) -> dict[str, str]:
    """Write the bundle's record, series files, and fit table under
    ``out_dir``; returns {filename: operation} for the manifest.
    ``prefix`` namespaces the files (used for compare sub-runs)."""
    import json

    out_dir.mkdir(parents=True, exist_ok=True)
    written: dict[str, str] = {}

    def put(name: str, text: str, operation: str) -> None:
        (out_dir / name).write_text(text, encoding="utf-8")
        written[name] = operation

    if emit in ("text", "both"):
        put(
            f"{prefix}summary.txt",
            "\n".join(summary_lines(bundle.summary)) + "\n",
            "summary record",
        )
    if emit in ("json", "both"):
        put(
            f"{prefix}summary.json",
            json.dumps(summary_json(bundle.summary), sort_keys=True, indent=2) + "\n",
            "summary record",
        )
    for name in sorted(bundle.series):
        put(
            f"{prefix}{name}.txt",
            "\n".join(_series_lines(name, bundle.series[name])) + "\n",
            f"{name} series",
        )
    if bundle.fits:
        put(
            f"{prefix}fits.txt",
            "\n".join(fit_record_lines(bundle.fits)) + "\n",
            "power-law fits",
        )
    return written
