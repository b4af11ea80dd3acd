"""Command-line interface.

Subcommands: ``build`` (ingest one or more source files, merge, write the
canonical edge list), ``summary`` (full metric run over a graph),
``compare`` (delta, exclusive degree profiles, and reduced-pair summaries
for two graphs), ``fit`` (power-law fit of a two-column data file), and
``spectrum`` (top adjacency eigenvalues).  All outputs are deterministic:
rerunning a command with any ``--workers`` value emits identical bytes.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import compare as cmp
from . import global_metrics as gm
from .errors import AstopoError, EmptyGraphError, UndefinedMetricError
from .fit import DEFAULT_THRESHOLD, fit_power_law
from .graph import AsGraph, edge_lines, merge
from .ingest import (
    DEFAULT_POLICY,
    FilterPolicy,
    parse_adjacency,
    parse_as_paths,
    parse_rpsl,
    paths_to_graph,
    rpsl_to_graph,
)
from .summary import (
    SummaryBundle,
    compute_summary,
    emit_run,
    fit_record_lines,
    format_scalar,
    summary_json,
    summary_lines,
)

__all__ = ["RunConfig", "run_build", "run_summary", "run_compare", "run_fit", "run_spectrum", "main"]

FORMATS = ("adjacency", "as-paths", "rpsl")


@dataclass(frozen=True)
class RunConfig:
    """Everything a run command needs: inputs, formats, policy, fit and
    solver settings, worker count, and output destination."""

    inputs: tuple[Path, ...]
    fmt: str = "adjacency"
    fmt_b: str | None = None  # compare: format of the second input
    policy: FilterPolicy = DEFAULT_POLICY
    out: Path | None = None
    eigs: int | None = None
    fit_threshold: float = DEFAULT_THRESHOLD
    workers: int = 1
    emit: str = "both"


def _load_one(path: Path, fmt: str, policy: FilterPolicy) -> AsGraph:
    text = path.read_text(encoding="utf-8")
    if fmt == "adjacency":
        return parse_adjacency(text, policy)
    if fmt == "as-paths":
        return paths_to_graph(parse_as_paths(text), policy)
    if fmt == "rpsl":
        return rpsl_to_graph(parse_rpsl(text), policy)
    raise ValueError(f"unknown format {fmt!r}")


def load_graph(paths: tuple[Path, ...], fmt: str, policy: FilterPolicy) -> AsGraph:
    """Parse every input and merge them into one graph."""
    return merge(_load_one(p, fmt, policy) for p in paths)


def _write_manifest(out_dir: Path, files: dict[str, str], notes: list[str]) -> None:
    doc = {"files": dict(sorted(files.items())), "notes": notes}
    (out_dir / "manifest.json").write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


# -- subcommand bodies ------------------------------------------------------


def run_build(config: RunConfig) -> int:
    g = load_graph(config.inputs, config.fmt, config.policy)
    text = "\n".join(edge_lines(g))
    if text:
        text += "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(text, encoding="utf-8")
        print(f"wrote {g.n} nodes, {g.m} edges to {config.out}", file=sys.stderr)
    return 0


def run_summary(config: RunConfig) -> int:
    g = load_graph(config.inputs, config.fmt, config.policy)
    if g.n == 0:
        raise EmptyGraphError("input yields an empty graph")
    bundle = compute_summary(
        g,
        eigs=config.eigs,
        fit_threshold=config.fit_threshold,
        workers=config.workers,
    )
    for note in bundle.notes:
        print(f"note: {note}", file=sys.stderr)
    if config.out is None:
        sys.stdout.write("\n".join(summary_lines(bundle.summary)) + "\n")
    else:
        files = emit_run(bundle, config.out, emit=config.emit)
        _write_manifest(config.out, files, bundle.notes)
    return 0


def _delta_rows(delta: cmp.GraphDelta) -> list[tuple[str, object]]:
    return [
        ("nodes_both", delta.nodes_both),
        ("nodes_only_a", delta.nodes_only_a),
        ("nodes_only_b", delta.nodes_only_b),
        ("edges_both", delta.edges_both),
        ("edges_only_a", delta.edges_only_a),
        ("edges_only_b", delta.edges_only_b),
    ]


def run_compare(config: RunConfig) -> int:
    path_a, path_b = config.inputs
    g_a = _load_one(path_a, config.fmt, config.policy)
    g_b = _load_one(path_b, config.fmt_b or config.fmt, config.policy)
    if g_a.n == 0 or g_b.n == 0:
        raise EmptyGraphError("inputs yield an empty graph")

    notes: list[str] = []
    files: dict[str, str] = {}
    delta = cmp.graph_delta(g_a, g_b)
    rows: list[tuple[str, object]] = list(_delta_rows(delta))

    exclusive: dict[str, list[tuple]] = {}
    for label, first, second in (("a", g_a, g_b), ("b", g_b, g_a)):
        try:
            dist = cmp.exclusive_degree_distribution(first, second)
        except UndefinedMetricError as exc:
            notes.append(f"exclusive degrees ({label}): {exc}")
            rows.append((f"exclusive_{label}_mean_degree", None))
            continue
        rows.append((f"exclusive_{label}_mean_degree", dist.mean()))
        exclusive[label] = [(k, dist.pdf(k)) for k in dist.degrees()]

    reduced: list[tuple[str, SummaryBundle]] = []
    try:
        red_a, red_b = cmp.reduced_pair(g_a, g_b)
    except EmptyGraphError as exc:
        notes.append(f"reduced pair skipped: {exc}")
    else:
        for label, red in (("a", red_a), ("b", red_b)):
            reduced.append(
                (
                    label,
                    compute_summary(
                        red,
                        eigs=config.eigs,
                        fit_threshold=config.fit_threshold,
                        workers=config.workers,
                    ),
                )
            )

    delta_text = "\n".join(f"{k} {format_scalar(v)}" for k, v in rows) + "\n"
    delta_doc = {
        k: (float(f"{v:.6g}") if isinstance(v, float) else v) for k, v in rows
    }

    for note in notes:
        print(f"note: {note}", file=sys.stderr)

    if config.out is None:
        sys.stdout.write(delta_text)
        for label, bundle in reduced:
            sys.stdout.write(f"\n# reduced graph {label}\n")
            sys.stdout.write("\n".join(summary_lines(bundle.summary)) + "\n")
        return 0

    out = config.out
    out.mkdir(parents=True, exist_ok=True)
    if config.emit in ("text", "both"):
        (out / "delta.txt").write_text(delta_text, encoding="utf-8")
        files["delta.txt"] = "graph delta"
    if config.emit in ("json", "both"):
        (out / "delta.json").write_text(
            json.dumps(delta_doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        files["delta.json"] = "graph delta"
    for label, series in sorted(exclusive.items()):
        name = f"exclusive_{label}_degree_pdf.txt"
        lines = ["# k probability"] + [f"{k} {p}" for k, p in series]
        (out / name).write_text("\n".join(lines) + "\n", encoding="utf-8")
        files[name] = f"degree distribution of nodes only in {label}"
    for label, bundle in reduced:
        sub_files = emit_run(bundle, out / f"reduced_{label}", emit=config.emit)
        for name, op in sub_files.items():
            files[f"reduced_{label}/{name}"] = f"reduced graph {label}: {op}"
        notes.extend(f"reduced graph {label}: {n}" for n in bundle.notes)
    _write_manifest(out, files, notes)
    return 0


def run_fit(
    path: Path,
    x_range: tuple[float, float] | None,
    threshold: float,
    emit: str,
) -> int:
    points = []
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise AstopoError(f"{path}:{lineno}: expected at least two columns")
        try:
            points.append((float(parts[0]), float(parts[1])))
        except ValueError:
            raise AstopoError(
                f"{path}:{lineno}: non-numeric value in {parts[:2]}"
            ) from None
    fit = fit_power_law(points, x_range=x_range, threshold=threshold)
    if emit == "json":
        doc = {
            "exponent": fit.exponent,
            "prefactor": fit.prefactor,
            "r_squared": fit.r_squared,
            "accepted": fit.accepted,
            "n_points": fit.n_points,
            "x_range": list(fit.x_range),
        }
        print(json.dumps(doc, sort_keys=True))
    else:
        print(
            f"exponent {format_scalar(fit.exponent)} "
            f"prefactor {format_scalar(fit.prefactor)} "
            f"r_squared {format_scalar(fit.r_squared)} "
            f"accepted {format_scalar(fit.accepted)} "
            f"n_points {fit.n_points}"
        )
    return 0


def run_spectrum(config: RunConfig) -> int:
    g = load_graph(config.inputs, config.fmt, config.policy)
    if g.n == 0:
        raise EmptyGraphError("input yields an empty graph")
    spec = gm.spectrum_top(g, config.eigs)
    lines = ["# rank_over_n abs_lambda"]
    lines.append("# signed: " + " ".join(format_scalar(v) for v in spec.eigenvalues))
    for rank, v in enumerate(spec.eigenvalues, start=1):
        lines.append(f"{rank / g.n} {abs(v)}")
    text = "\n".join(lines) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(text, encoding="utf-8")
    return 0


# -- argument parsing -----------------------------------------------------


def _add_policy_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--format",
        choices=FORMATS,
        default="adjacency",
        help="input format (default: adjacency edge list)",
    )
    p.add_argument(
        "--filter-private",
        default="64512-65535",
        metavar="RANGES",
        help="comma-separated ASN ranges to drop, or 'none' (default: %(default)s)",
    )
    p.add_argument(
        "--keep-asn-zero",
        action="store_true",
        help="do not drop ASN 0",
    )
    p.add_argument(
        "--keep-as-sets",
        action="store_true",
        help="keep AS-set member ASNs as nodes (they still get no edges)",
    )


def _policy_from(args: argparse.Namespace) -> FilterPolicy:
    return FilterPolicy(
        private_ranges=FilterPolicy.parse_ranges(args.filter_private),
        drop_asn_zero=not args.keep_asn_zero,
        drop_as_sets=not args.keep_as_sets,
    )


def _add_run_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eigs", type=int, metavar="K", help="eigenvalue count (default: 10%% of n)")
    p.add_argument(
        "--fit-threshold",
        type=float,
        default=DEFAULT_THRESHOLD,
        help="r-squared acceptance threshold for fits (default: %(default)s)",
    )
    p.add_argument("--workers", type=int, default=1, help="parallel workers (default: 1)")
    p.add_argument(
        "--emit",
        choices=("text", "json", "both"),
        default="both",
        help="record formats to write (default: both)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="astopo",
        description="AS-level topology construction and metric analysis",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="ingest sources and write the canonical edge list")
    p_build.add_argument("inputs", nargs="+", type=Path)
    _add_policy_args(p_build)
    p_build.add_argument("--out", type=Path, help="output file (default: stdout)")

    p_summary = sub.add_parser("summary", help="compute every metric of one graph")
    p_summary.add_argument("inputs", nargs="+", type=Path)
    _add_policy_args(p_summary)
    _add_run_args(p_summary)
    p_summary.add_argument("--out", type=Path, help="output directory (default: record to stdout)")

    p_compare = sub.add_parser("compare", help="compare two graphs")
    p_compare.add_argument("inputs", nargs=2, type=Path, metavar=("A", "B"))
    _add_policy_args(p_compare)
    p_compare.add_argument(
        "--format-b",
        choices=FORMATS,
        help="format of the second input (default: same as --format)",
    )
    _add_run_args(p_compare)
    p_compare.add_argument("--out", type=Path, help="output directory (default: records to stdout)")

    p_fit = sub.add_parser("fit", help="power-law fit of a two-column data file")
    p_fit.add_argument("input", type=Path)
    p_fit.add_argument("--range", metavar="LO:HI", help="inclusive x interval")
    p_fit.add_argument(
        "--fit-threshold",
        type=float,
        default=DEFAULT_THRESHOLD,
        help="r-squared acceptance threshold (default: %(default)s)",
    )
    p_fit.add_argument("--emit", choices=("text", "json"), default="text")

    p_spec = sub.add_parser("spectrum", help="top adjacency eigenvalues")
    p_spec.add_argument("inputs", nargs="+", type=Path)
    _add_policy_args(p_spec)
    p_spec.add_argument("--eigs", type=int, metavar="K", help="eigenvalue count (default: 10%% of n)")
    p_spec.add_argument("--out", type=Path, help="output file (default: stdout)")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "build":
            config = RunConfig(
                inputs=tuple(args.inputs),
                fmt=args.format,
                policy=_policy_from(args),
                out=args.out,
            )
            return run_build(config)
        if args.command == "summary":
            config = RunConfig(
                inputs=tuple(args.inputs),
                fmt=args.format,
                policy=_policy_from(args),
                out=args.out,
                eigs=args.eigs,
                fit_threshold=args.fit_threshold,
                workers=args.workers,
                emit=args.emit,
            )
            return run_summary(config)
        if args.command == "compare":
            config = RunConfig(
                inputs=tuple(args.inputs),
                fmt=args.format,
                fmt_b=args.format_b,
                policy=_policy_from(args),
                out=args.out,
                eigs=args.eigs,
                fit_threshold=args.fit_threshold,
                workers=args.workers,
                emit=args.emit,
            )
            return run_compare(config)
        if args.command == "fit":
            x_range = None
            if args.range:
                lo, _sep, hi = args.range.partition(":")
                try:
                    x_range = (float(lo), float(hi))
                except ValueError:
                    raise AstopoError(
                        f"bad --range {args.range!r}: expected LO:HI with both bounds"
                    ) from None
            return run_fit(args.input, x_range, args.fit_threshold, args.emit)
        if args.command == "spectrum":
            config = RunConfig(
                inputs=tuple(args.inputs),
                fmt=args.format,
                policy=_policy_from(args),
                out=args.out,
                eigs=args.eigs,
            )
            return run_spectrum(config)
        raise AssertionError(f"unhandled command {args.command}")
    except (AstopoError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
