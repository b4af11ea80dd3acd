"""Parsers for the three source formats and the ASN filter policy.

Sources map to graphs as follows: BGP AS-path extracts contribute an edge
per adjacent ASN pair (AS-sets are ambiguous and split the path), adjacency
files list one edge per line, and RPSL registry dumps contribute edges from
each aut-num block to the ASNs named in its import/export lines.  Private
ASNs are filtered everywhere because they produce false links.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Union

from .errors import ParseError
from .graph import ASN_MAX, AsGraph, Asn, _build, check_asn

__all__ = [
    "PathElement",
    "AsPath",
    "RpslRecord",
    "FilterPolicy",
    "DEFAULT_POLICY",
    "is_filtered",
    "parse_as_paths",
    "paths_to_graph",
    "parse_adjacency",
    "parse_rpsl",
    "rpsl_to_graph",
]

# A path element is a plain ASN or an AS-set (unordered group of ASNs
# aggregated by the advertising router).
PathElement = Union[Asn, frozenset]

LineSource = Union[str, IO[str], Iterable[str]]


def _iter_lines(source: LineSource) -> Iterator[str]:
    if isinstance(source, str):
        yield from source.splitlines()
    else:
        for line in source:
            yield line.rstrip("\n")


@dataclass(frozen=True)
class AsPath:
    """One AS-path: a sequence of ASNs and AS-sets, prepending collapsed."""

    elements: tuple[PathElement, ...]


@dataclass(frozen=True)
class RpslRecord:
    """One aut-num registry object with the ASNs named by its policy lines."""

    aut_num: Asn
    imports: tuple[Asn, ...] = ()
    exports: tuple[Asn, ...] = ()


@dataclass(frozen=True)
class FilterPolicy:
    """Which ASNs to exclude from constructed graphs.

    ``private_ranges`` are inclusive (lo, hi) intervals; the default is the
    block 64512-65535 reserved for private use, plus ASN 0.  AS-sets are
    dropped by default because the link they would imply is ambiguous;
    with ``drop_as_sets=False`` their member ASNs are kept as nodes but
    still contribute no edges.
    """

    private_ranges: tuple[tuple[int, int], ...] = ((64512, 65535),)
    drop_asn_zero: bool = True
    drop_as_sets: bool = True

    @staticmethod
    def none() -> "FilterPolicy":
        """Policy that filters nothing (pure I/O round-trips)."""
        return FilterPolicy(private_ranges=(), drop_asn_zero=False)

    @staticmethod
    def parse_ranges(spec: str) -> tuple[tuple[int, int], ...]:
        """Parse a CLI range list like ``64512-65535,23456`` ("none" for
        an empty list)."""
        spec = spec.strip()
        if spec.lower() in ("", "none"):
            return ()
        ranges = []
        for part in spec.split(","):
            part = part.strip()
            lo, sep, hi = part.partition("-")
            try:
                lo_v = int(lo)
                hi_v = int(hi) if sep else lo_v
            except ValueError:
                raise ParseError(f"bad ASN range {part!r}") from None
            if not (0 <= lo_v <= hi_v < ASN_MAX):
                raise ParseError(f"bad ASN range {part!r}")
            ranges.append((lo_v, hi_v))
        return tuple(ranges)


DEFAULT_POLICY = FilterPolicy()


def is_filtered(policy: FilterPolicy, asn: Asn) -> bool:
    """True when the policy excludes ``asn`` from graphs."""
    if policy.drop_asn_zero and asn == 0:
        return True
    for lo, hi in policy.private_ranges:
        if lo <= asn <= hi:
            return True
    return False


# -- AS-path extracts ----------------------------------------------------

_ASN_RE = re.compile(r"\d+$")


def _parse_asn_token(token: str, lineno: int) -> Asn:
    if not _ASN_RE.fullmatch(token):
        raise ParseError(f"malformed ASN token {token!r}", lineno)
    value = int(token)
    if value >= ASN_MAX:
        raise ParseError(f"ASN {value} out of range", lineno)
    return value


def parse_as_paths(source: LineSource) -> list[AsPath]:
    """Parse AS-path text: one path per non-blank, non-comment line, with
    whitespace-separated elements.  ``{a,b,c}`` denotes an AS-set.
    Consecutive identical ASNs (prepending) collapse to one element."""
    paths = []
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        elements: list[PathElement] = []
        for token in line.split():
            if token.startswith("{"):
                if not token.endswith("}") or len(token) < 3:
                    raise ParseError(f"malformed AS-set {token!r}", lineno)
                members = frozenset(
                    _parse_asn_token(part, lineno)
                    for part in token[1:-1].split(",")
                )
                elements.append(members)
            else:
                asn = _parse_asn_token(token, lineno)
                # collapse prepending
                if elements and elements[-1] == asn:
                    continue
                elements.append(asn)
        if elements:
            paths.append(AsPath(tuple(elements)))
    return paths


def paths_to_graph(paths: Iterable[AsPath], policy: FilterPolicy = DEFAULT_POLICY) -> AsGraph:
    """Graph over the unfiltered ASNs appearing in ``paths``.

    Each adjacent pair of plain ASNs contributes an edge.  An AS-set or a
    filtered ASN splits the path: no edge bridges the gap, and the removed
    element never enters the node set (AS-set members do enter, edgeless,
    when the policy keeps AS-sets).
    """
    nodes: set[Asn] = set()
    edge_set: set[tuple[Asn, Asn]] = set()
    for path in paths:
        prev: Asn | None = None
        for element in path.elements:
            if isinstance(element, frozenset):
                if not policy.drop_as_sets:
                    nodes.update(
                        a for a in element if not is_filtered(policy, a)
                    )
                prev = None
                continue
            if is_filtered(policy, element):
                prev = None
                continue
            nodes.add(element)
            if prev is not None and prev != element:
                edge_set.add(
                    (prev, element) if prev < element else (element, prev)
                )
            prev = element
    return _build(edge_set, nodes)


# -- adjacency (edge list) files -----------------------------------------


def parse_adjacency(source: LineSource, policy: FilterPolicy = DEFAULT_POLICY) -> AsGraph:
    """Parse an edge-list file: two ASNs per line, ``#`` comments, blank
    lines ignored.  A line with a single ASN declares an isolated node
    (the canonical writer emits these, so round-trips preserve them).

    Edges with a filtered endpoint are dropped while the unfiltered
    endpoint is kept as a node; self-loop lines keep the node only.
    """
    nodes: set[Asn] = set()
    edge_set: set[tuple[Asn, Asn]] = set()
    for lineno, raw in enumerate(_iter_lines(source), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 1:
            a = _parse_asn_token(tokens[0], lineno)
            if not is_filtered(policy, a):
                nodes.add(a)
            continue
        if len(tokens) != 2:
            raise ParseError(f"expected two ASNs, got {len(tokens)}", lineno)
        u = _parse_asn_token(tokens[0], lineno)
        v = _parse_asn_token(tokens[1], lineno)
        drop_u = is_filtered(policy, u)
        drop_v = is_filtered(policy, v)
        if not drop_u:
            nodes.add(u)
        if not drop_v:
            nodes.add(v)
        if not drop_u and not drop_v and u != v:
            edge_set.add((u, v) if u < v else (v, u))
    return _build(edge_set, nodes)


# -- RPSL registry dumps ---------------------------------------------------

_RPSL_ASN_RE = re.compile(r"AS(\d+)$", re.IGNORECASE)


def _policy_neighbor(value: str, keyword: str) -> Asn | None:
    """First AS<digits> token after ``keyword`` in a policy line, if any."""
    tokens = value.split()
    seen_keyword = False
    for token in tokens:
        if not seen_keyword:
            if token.lower() == keyword:
                seen_keyword = True
            continue
        match = _RPSL_ASN_RE.fullmatch(token.rstrip(";,"))
        if match:
            asn = int(match.group(1))
            if asn < ASN_MAX:
                return asn
    return None


def parse_rpsl(source: LineSource) -> list[RpslRecord]:
    """Parse RPSL-style text into aut-num records.

    Records are blank-line-separated attribute blocks of ``key: value``
    lines.  Blocks without an aut-num attribute (other object classes) are
    skipped; an aut-num value not of the form ``AS<digits>`` is an error
    naming the record's position.  From import lines the neighbor is the
    first ``AS<digits>`` token after ``from``; for export lines, after
    ``to``.  Unrecognized attributes and continuation lines are ignored.
    """
    records = []
    block: list[tuple[str, str]] = []
    index = 0

    def flush() -> None:
        nonlocal index
        if not block:
            return
        index += 1
        aut_num: Asn | None = None
        imports: list[Asn] = []
        exports: list[Asn] = []
        has_aut_num_key = False
        for key, value in block:
            if key == "aut-num":
                has_aut_num_key = True
                match = _RPSL_ASN_RE.fullmatch(value.strip())
                if not match or int(match.group(1)) >= ASN_MAX:
                    raise ParseError(
                        f"record {index}: aut-num value {value.strip()!r} "
                        "is not of the form AS<digits>"
                    )
                aut_num = int(match.group(1))
            elif key == "import":
                neighbor = _policy_neighbor(value, "from")
                if neighbor is not None:
                    imports.append(neighbor)
            elif key == "export":
                neighbor = _policy_neighbor(value, "to")
                if neighbor is not None:
                    exports.append(neighbor)
        if has_aut_num_key:
            assert aut_num is not None
            records.append(
                RpslRecord(aut_num, tuple(imports), tuple(exports))
            )
        block.clear()

    for raw in _iter_lines(source):
        line = raw.rstrip()
        if not line.strip():
            flush()
            continue
        if line[0].isspace():
            continue  # continuation of the previous attribute
        key, sep, value = line.partition(":")
        if not sep:
            continue
        block.append((key.strip().lower(), value.strip()))
    flush()
    return records


def rpsl_to_graph(records: Iterable[RpslRecord], policy: FilterPolicy = DEFAULT_POLICY) -> AsGraph:
    """Graph over registered ASNs.

    The node set is every record's aut-num minus filtered ASNs.  An edge
    a-b exists when some record with aut-num a names b in its imports or
    exports, both a and b are registered, and a != b.  ASNs named in
    policy lines but never registered contribute nothing.
    """
    records = list(records)
    registered = {
        r.aut_num for r in records if not is_filtered(policy, r.aut_num)
    }
    edge_set: set[tuple[Asn, Asn]] = set()
    for r in records:
        if r.aut_num not in registered:
            continue
        a = r.aut_num
        for b in (*r.imports, *r.exports):
            if b != a and b in registered:
                edge_set.add((a, b) if a < b else (b, a))
    return _build(edge_set, registered)
