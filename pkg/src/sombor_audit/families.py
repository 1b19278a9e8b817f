"""Registry of silicon-carbide sheet families and their edge partitions.

Families are stored as stated: a vertex-count form, a claimed edge-count
form, and a piecewise count for each degree pair.  Nothing here judges
whether those numbers agree with each other; that is the auditor's job.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import NegativeCount, ParseError, UnknownFamily
from .forms import (
    BilinearForm,
    PiecewiseForm,
    aligned_sum,
    coverage_ok,
    form_eval,
    grid,
    parse_form,
    parse_region,
)
from .graph import DegreePairPartition, pair_key

__all__ = [
    "FamilySpec",
    "FAMILY_NAMES",
    "FAMILY_FILE_ENV",
    "get_family",
    "default_registry",
    "load_registry",
    "parse_family_file",
    "read_family_file",
    "partition_counts_at",
    "symbolic_edge_total",
]

FAMILY_FILE_ENV = "SOMBOR_FAMILY_FILE"

FAMILY_NAMES = (
    "SiC3-I",
    "SiC3-II",
    "SiC3-III",
    "Si2C3-I",
    "Si2C3-II",
    "Si2C3-III",
    "SiC4-I",
    "SiC4-II",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    vertex_form: BilinearForm
    claimed_edge_form: BilinearForm
    partition: Mapping[tuple[int, int], PiecewiseForm] = field(default_factory=dict)

    def __post_init__(self):
        part = {}
        for (i, j), f in self.partition.items():
            if i < 1 or j < 1:
                raise ValueError(f"{self.name}: degree keys must be >= 1, got {(i, j)}")
            part[pair_key(i, j)] = f
        object.__setattr__(self, "partition", dict(sorted(part.items())))

    def count_form(self, pair: tuple[int, int]) -> PiecewiseForm:
        """Count form for ``pair``; absent pairs count zero."""
        return self.partition.get(pair_key(*pair), PiecewiseForm.single(BilinearForm()))


# file format ----------------------------------------------------------------

_ROW_RE = re.compile(r"^(\d+)\s+(\d+)\s*:\s*(.+?)\s*(?:\[(.*)\])?\s*$")


def _build(name, vertices, edges, rows, lineno) -> FamilySpec:
    if vertices is None or edges is None:
        raise ParseError(f"family {name!r} lacks a vertices: or edges: line", line=lineno)
    grouped: dict[tuple[int, int], list] = {}
    for key, region, form in rows:
        grouped.setdefault(key, []).append((region, form))
    partition = {}
    for key, pieces in grouped.items():
        pf = PiecewiseForm(tuple(pieces))
        # region conditions only distinguish 1 from >1, so [1,2]^2 decides coverage
        if not coverage_ok(pf, grid(1, 2)):
            raise ParseError(
                f"family {name!r}: pieces for pair {key} do not cover p, q >= 1 exactly once",
                line=lineno,
            )
        partition[key] = pf
    return FamilySpec(name, vertices, edges, partition)


def parse_family_file(lines: Iterable[str]) -> dict[str, FamilySpec]:
    """Parse the declarative family format.

    ::

        family NAME
        vertices: <form>
        edges: <form>
        i j : <form> [<region>]
        end
    """
    families: dict[str, FamilySpec] = {}
    name = vertices = edges = None
    rows: list = []
    start = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("family "):
                if name is not None:
                    raise ParseError("missing 'end' before new family", line=lineno)
                name, vertices, edges, rows, start = line[7:].strip(), None, None, [], lineno
                if not name:
                    raise ParseError("family needs a name", line=lineno)
                continue
            if name is None:
                raise ParseError("content outside a family record", line=lineno)
            if line == "end":
                if name in families:
                    raise ParseError(f"family {name!r} defined twice", line=start)
                families[name] = _build(name, vertices, edges, rows, start)
                name = None
                continue
            if line.startswith("vertices:"):
                vertices = parse_form(line[9:])
                continue
            if line.startswith("edges:"):
                edges = parse_form(line[6:])
                continue
            m = _ROW_RE.match(line)
            if m is None:
                raise ParseError(f"unrecognised line {line!r}", line=lineno)
            region = parse_region(m.group(4) or "")
            rows.append((pair_key(int(m.group(1)), int(m.group(2))), region, parse_form(m.group(3))))
        except ParseError as exc:
            if exc.line is None:
                raise ParseError(str(exc), line=lineno) from None
            raise
    if name is not None:
        raise ParseError(f"family {name!r} is not terminated by 'end'", line=start)
    return families


def read_family_file(path) -> dict[str, FamilySpec]:
    with open(path, encoding="utf-8") as fh:
        return parse_family_file(fh)


_DEFAULT: dict[str, FamilySpec] | None = None


def default_registry() -> dict[str, FamilySpec]:
    """The eight built-in families (parsed once, then shared)."""
    global _DEFAULT
    if _DEFAULT is None:
        text = resources.files("sombor_audit.data").joinpath("families.txt").read_text("utf-8")
        _DEFAULT = parse_family_file(text.splitlines())
    return dict(_DEFAULT)


def load_registry(path=None, *, use_env: bool = True) -> dict[str, FamilySpec]:
    """Built-in families, overlaid by a user file.

    The file comes from ``path`` or, failing that, the ``SOMBOR_FAMILY_FILE``
    environment variable.  Families in the file replace built-ins of the
    same name.
    """
    registry = default_registry()
    if path is None and use_env:
        path = os.environ.get(FAMILY_FILE_ENV) or None
    if path is not None:
        registry.update(read_family_file(Path(path)))
    return registry


def get_family(name: str, registry: Mapping[str, FamilySpec] | None = None) -> FamilySpec:
    registry = default_registry() if registry is None else registry
    try:
        return registry[name]
    except KeyError:
        raise UnknownFamily(f"unknown family {name!r}; known: {', '.join(registry)}") from None


def partition_counts_at(f: FamilySpec, p: int, q: int, *, strict: bool = True) -> DegreePairPartition:
    """Evaluate every count of ``f`` at ``(p, q)``.

    ``total_edges`` is the sum of the counts; the family's own edge claim is
    carried separately as ``claimed_edges``.  With ``strict`` a negative
    count raises :class:`NegativeCount`; otherwise it is kept as is.
    """
    counts = {}
    for pair, pf in f.partition.items():
        c = int(form_eval(pf, p, q).rational_value())
        if c < 0 and strict:
            raise NegativeCount(f.name, pair, p, q, c)
        counts[pair] = c
    vertices = int(form_eval(f.vertex_form, p, q).rational_value())
    claimed = int(form_eval(f.claimed_edge_form, p, q).rational_value())
    return DegreePairPartition(
        counts, sum(counts.values()), vertices, claimed_edges=claimed, label=f"{f.name}[{p},{q}]"
    )


def symbolic_edge_total(f: FamilySpec) -> PiecewiseForm:
    """Region-aligned sum of all count forms of ``f``."""
    return aligned_sum(f.partition.values())
