"""Cross-checks every stated count and closed form against its re-derivation.

Symbolic comparison decides the verdict wherever both sides are exact;
numeric samples are attached as evidence only.  Findings are sorted before
they leave :func:`run_full_audit`, so reports do not depend on scheduling.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import __version__
from .errors import NegativeCount, RegionMismatch
from .families import FamilySpec, get_family, load_registry, partition_counts_at, symbolic_edge_total
from .forms import PiecewiseForm, aligned_sub, form_eval
from .graph import Graph, degree_pair_partition
from .indices import (
    BUILTIN_INDICES,
    M_CHOICES,
    average_sombor_on_partition,
    index_on_partition,
    symbolic_index,
    thm17_formula_eval,
)
from .radical import RadicalNumber, rad_to_float
from .theorems import (
    THEOREM_CLAIMS,
    THM17_CLASSES,
    THM17_ENTRIES,
    THM18_CLAIMS,
    ClosedFormClaim18,
    TheoremClaim,
    Thm17Entry,
)

__all__ = [
    "Finding",
    "AuditReport",
    "VERDICTS",
    "check_edge_totals",
    "check_count_validity",
    "check_theorem_vs_partition",
    "check_thm17",
    "thm17_consistency",
    "check_closed_form_18",
    "check_inequalities",
    "check_graph",
    "run_full_audit",
]

MATCH = "match"
MISMATCH = "mismatch"
REGION_MISMATCH = "region-mismatch"
NOT_APPLICABLE = "not-applicable"
VERDICTS = (MATCH, MISMATCH, REGION_MISMATCH, NOT_APPLICABLE)

REL_TOL = 1e-9
APPROX_TOL = 0.05

SAMPLE_POINTS = tuple(itertools.product((1, 2, 3, 5, 10), repeat=2))
GRID_10 = tuple(itertools.product(range(1, 11), repeat=2))
GRID_5 = tuple(itertools.product(range(1, 6), repeat=2))
GRID_30 = tuple(itertools.product(range(1, 31), repeat=2))
# region conditions only separate 1 from >1, and the A-identity has degree <= 2
# in each variable, so exact agreement on [1,4]^2 proves it on every region
_IDENTITY_GRID = tuple(itertools.product(range(1, 5), repeat=2))


@dataclass(frozen=True)
class Sample:
    p: int
    q: int
    lhs: float
    rhs: float

    @property
    def abs_diff(self) -> float:
        return abs(self.lhs - self.rhs)

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "lhs": self.lhs, "rhs": self.rhs, "abs_diff": self.abs_diff}


@dataclass(frozen=True)
class Finding:
    check_id: str
    family: str
    verdict: str
    symbolic_difference: PiecewiseForm | None = None
    numeric_samples: tuple[Sample, ...] = ()
    note: str = ""

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        object.__setattr__(self, "numeric_samples", tuple(self.numeric_samples))

    @property
    def sort_key(self):
        return (self.check_id, self.family)

    def to_dict(self) -> dict:
        out = {
            "check_id": self.check_id,
            "family": self.family,
            "verdict": self.verdict,
            "numeric_samples": [s.to_dict() for s in self.numeric_samples],
            "note": self.note,
        }
        if self.symbolic_difference is not None:
            out["symbolic_difference"] = str(self.symbolic_difference)
        return out


@dataclass
class AuditReport:
    findings: list[Finding]
    tool_version: str = __version__
    timestamp: str | None = None
    summary: dict[str, int] = field(init=False)

    def __post_init__(self):
        self.findings = sorted(self.findings, key=lambda f: f.sort_key)
        self.summary = {v: sum(f.verdict == v for f in self.findings) for v in VERDICTS}

    @property
    def has_discrepancy(self) -> bool:
        return any(f.verdict in (MISMATCH, REGION_MISMATCH) for f in self.findings)

    def find(self, check_id: str, family: str | None = None) -> Finding:
        for f in self.findings:
            if f.check_id == check_id and (family is None or f.family == family):
                return f
        raise KeyError((check_id, family))

    def to_dict(self) -> dict:
        out = {
            "findings": [f.to_dict() for f in self.findings],
            "summary": dict(self.summary),
            "tool_version": self.tool_version,
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out


def _close(a: float, b: float, rel: float = REL_TOL) -> bool:
    return abs(a - b) <= rel * max(1.0, abs(a), abs(b))


def _f(x) -> float:
    return rad_to_float(x) if isinstance(x, RadicalNumber) else float(x)


def _nonzero_regions(diff: PiecewiseForm) -> list[str]:
    return [str(r) for r, f in diff.pieces if not f.is_zero()]


# edge totals / validity ----------------------------------------------------------


def check_edge_totals(f: FamilySpec) -> Finding:
    """Partition sum minus the claimed edge count, region by region."""
    claimed = PiecewiseForm.single(f.claimed_edge_form)
    samples = []
    for p, q in SAMPLE_POINTS:
        part = partition_counts_at(f, p, q, strict=False)
        samples.append(Sample(p, q, float(part.total_edges), float(part.claimed_edges)))
    try:
        total = symbolic_edge_total(f)
    except RegionMismatch as exc:
        return Finding("edge-total", f.name, REGION_MISMATCH, None, samples, str(exc))
    diff = aligned_sub(total, claimed)
    if diff.is_zero():
        return Finding("edge-total", f.name, MATCH, diff, samples,
                       f"partition sum equals claimed edge count {f.claimed_edge_form}")
    note = (f"partition sum {total} differs from claimed {f.claimed_edge_form} "
            f"on regions: {'; '.join(_nonzero_regions(diff))}")
    return Finding("edge-total", f.name, MISMATCH, diff, samples, note)


def check_count_validity(f: FamilySpec, points=GRID_30) -> Finding:
    """Scan for partition counts that evaluate below zero."""
    bad = []
    for p, q in points:
        try:
            partition_counts_at(f, p, q)
        except NegativeCount as exc:
            bad.append(exc)
    if not bad:
        return Finding("count-validity", f.name, MATCH,
                       note=f"all counts nonnegative on {len(points)} sampled points")
    shown = ", ".join(
        f"({e.p},{e.q}) |E{{{e.pair[0]},{e.pair[1]}}}|={e.value}" for e in bad[:6]
    )
    more = f" and {len(bad) - 6} more" if len(bad) > 6 else ""
    return Finding("count-validity", f.name, MISMATCH,
                   note=f"negative counts at {len(bad)} of {len(points)} points: {shown}{more}")


# theorems 1-16 ------------------------------------------------------------------


def check_theorem_vs_partition(claim: TheoremClaim, registry: Mapping[str, FamilySpec] | None = None) -> Finding:
    """Re-derive the theorem's index over its family and compare."""
    family = get_family(claim.family, registry)
    check_id = f"theorem-{claim.id:02d}"
    idx = BUILTIN_INDICES[claim.index]
    flag = f"; catalog flag: {claim.flag}" if claim.flag else ""
    try:
        derived = symbolic_index(idx, family)
    except RegionMismatch as exc:
        return Finding(check_id, family.name, REGION_MISMATCH, note=f"{exc}{flag}")
    stated = claim.stated_form

    def sample(p, q):
        return Sample(p, q, _f(form_eval(derived, p, q)), _f(form_eval(stated, p, q)))

    samples = [sample(p, q) for p, q in SAMPLE_POINTS]
    if derived.same_regions(stated):
        diff = derived - stated
        if diff.is_zero():
            return Finding(check_id, family.name, MATCH, diff, samples,
                           f"{claim.index} closed form agrees coefficientwise{flag}")
        return Finding(check_id, family.name, MISMATCH, diff, samples,
                       f"{claim.index}: derived minus stated is nonzero on "
                       f"{'; '.join(_nonzero_regions(diff))}{flag}")
    try:
        diff = aligned_sub(derived, stated)
    except RegionMismatch:
        diff = None
    agree = sum(_close(s.lhs, s.rhs) for s in map(lambda pq: sample(*pq), GRID_10))
    note = (f"derived form branches on [{'; '.join(map(str, derived.regions))}] but the "
            f"statement on [{'; '.join(map(str, stated.regions))}]; pointwise agreement at "
            f"{agree} of {len(GRID_10)} points of [1,10]^2{flag}")
    return Finding(check_id, family.name, REGION_MISMATCH, diff, samples, note)


# theorem 17 -----------------------------------------------------------------------


def _a_consistent(entry: Thm17Entry, family: FamilySpec, m_choice: str) -> bool:
    """Does ``A == 3 - 2m/n`` hold identically for this m choice?"""
    for p, q in _IDENTITY_GRID:
        part = partition_counts_at(family, p, q, strict=False)
        m = part.total_edges if m_choice == "partition-sum" else part.claimed_edges
        if entry.a_value(p, q) != 3 - Fraction(2 * m, part.vertex_count):
            return False
    return True


def thm17_consistency(entry: Thm17Entry, registry: Mapping[str, FamilySpec] | None = None) -> dict:
    """Symbolic comparison of a table row with its registry family.

    Returns ``{"count_differences": {k: PiecewiseForm | None}, "a_matches": [m choices]}``
    where a ``None`` difference marks incompatible branch structures.
    """
    family = get_family(entry.family, registry)
    diffs = {}
    for k, pair in THM17_CLASSES.items():
        try:
            d = aligned_sub(entry.e[k - 1], family.count_form(pair))
        except RegionMismatch:
            diffs[k] = None
            continue
        if not d.is_zero():
            diffs[k] = d
    a_matches = [m for m in M_CHOICES if _a_consistent(entry, family, m)]
    return {"count_differences": diffs, "a_matches": a_matches}


def check_thm17(entry: Thm17Entry, registry: Mapping[str, FamilySpec] | None = None) -> Finding:
    """Formula (with ``|A - 1|``) versus the direct definition, plus table-vs-registry counts."""
    family = get_family(entry.family, registry)
    info = thm17_consistency(entry, registry)

    formula = {(p, q): thm17_formula_eval(entry, p, q) for p, q in GRID_10}
    agreement = {}
    direct = {}
    for m in M_CHOICES:
        direct[m] = {
            (p, q): average_sombor_on_partition(partition_counts_at(family, p, q, strict=False), m)
            for p, q in GRID_10
        }
        agreement[m] = sum(_close(formula[pt], direct[m][pt]) for pt in GRID_10)
    best = max(M_CHOICES, key=lambda m: (agreement[m], m == "partition-sum"))
    samples = [Sample(p, q, formula[(p, q)], direct[best][(p, q)]) for p, q in SAMPLE_POINTS]
    a_above_one = sum(entry.a_value(p, q) > 1 for p, q in GRID_10)

    parts = []
    diffs = info["count_differences"]
    for k, d in diffs.items():
        pair = THM17_CLASSES[k]
        what = "branch structure differs" if d is None else f"table minus registry = {d}"
        parts.append(f"E{k} (pair {{{pair[0]},{pair[1]}}}): {what}")
    if not diffs:
        parts.append("E1..E5 equal the registry counts")
    parts.append(
        f"A = {entry.a_text} equals 3 - 2m/n for: {', '.join(info['a_matches']) or 'neither m choice'}"
    )
    parts.append(
        f"best m choice {best}: formula agrees with definition at {agreement[best]} of {len(GRID_10)} "
        f"points (other choice: {agreement[[m for m in M_CHOICES if m != best][0]]})"
    )
    parts.append(f"|A - 1| used for the {{2,2}} term; A > 1 at {a_above_one} of {len(GRID_10)} points")

    sym = next((d for d in diffs.values() if d is not None), None)
    ok = not diffs and agreement[best] == len(GRID_10)
    return Finding("thm17", entry.family, MATCH if ok else MISMATCH, sym, samples, "; ".join(parts))


# theorem 18 ------------------------------------------------------------------------

_THM18_INDEX = {"m1": "m1", "m2": "m2", "isi": "isi", "sombor-approx": "sombor"}


def check_closed_form_18(claim: ClosedFormClaim18, registry: Mapping[str, FamilySpec] | None = None) -> Finding:
    family = get_family(claim.family, registry)
    check_id = f"thm18-{claim.target}"
    derived = symbolic_index(BUILTIN_INDICES[_THM18_INDEX[claim.target]], family)
    stated = PiecewiseForm.single(claim.stated_form)
    if not claim.approximate:
        samples = [Sample(p, q, _f(form_eval(derived, p, q)), _f(form_eval(stated, p, q)))
                   for p, q in SAMPLE_POINTS]
        diff = aligned_sub(derived, stated)
        verdict = MATCH if diff.is_zero() else MISMATCH
        return Finding(check_id, family.name, verdict, diff, samples,
                       f"exact {claim.target} closed form compared coefficientwise")

    samples = [Sample(p, q, _f(form_eval(derived, p, q)), _f(form_eval(stated, p, q))) for p, q in GRID_5]
    worst = max(s.abs_diff for s in samples)
    verdict = MATCH if worst <= APPROX_TOL else MISMATCH
    coeffs = []
    if len(derived.pieces) == 1:
        names = ("pq", "p", "q", "constant")
        exact = derived.pieces[0][1].coefficients
        for name, e, s in zip(names, exact, claim.stated_form.coefficients):
            ef, sf = rad_to_float(e), rad_to_float(s)
            mark = "" if abs(ef - sf) <= APPROX_TOL else " (off)"
            coeffs.append(f"{name}: stated {sf:g} vs exact {e} = {ef:.4f}{mark}")
    note = (f"approximate form checked at {len(GRID_5)} points of [1,5]^2 with tolerance "
            f"{APPROX_TOL}; max deviation {worst:.4f}; " + "; ".join(coeffs))
    return Finding(check_id, family.name, verdict, None, samples, note)


# inequalities -------------------------------------------------------------------------


def check_inequalities(f: FamilySpec, samples=GRID_10) -> Finding:
    """So >= M1/2, So >= M2/3 and So >= 2*ISI at each valid sample point."""
    so_idx, m1, m2, isi = (BUILTIN_INDICES[k] for k in ("sombor", "m1", "m2", "isi"))
    evidence = []
    failures = []
    skipped = []
    for p, q in samples:
        try:
            part = partition_counts_at(f, p, q)
        except NegativeCount:
            skipped.append((p, q))
            continue
        so = _f(index_on_partition(so_idx, part))
        bounds = {
            "M1/2": _f(index_on_partition(m1, part)) / 2,
            "M2/3": _f(index_on_partition(m2, part)) / 3,
            "2*ISI": 2 * _f(index_on_partition(isi, part)),
        }
        name, bound = max(bounds.items(), key=lambda kv: kv[1])
        evidence.append(Sample(p, q, so, bound))
        for label, b in bounds.items():
            if so < b and not _close(so, b):
                failures.append(f"({p},{q}) So={so:.6g} < {label}={b:.6g}")
    skip_note = f"; skipped {len(skipped)} points with negative counts" if skipped else ""
    if not evidence:
        return Finding("inequalities", f.name, NOT_APPLICABLE, note=f"no valid sample points{skip_note}")
    if failures:
        return Finding("inequalities", f.name, MISMATCH, None, evidence,
                       f"violations: {', '.join(failures[:6])}{skip_note}")
    return Finding("inequalities", f.name, MATCH, None, evidence,
                   f"all three bounds hold at {len(evidence)} valid points{skip_note}; "
                   "rhs is the largest of M1/2, M2/3, 2*ISI")


def check_graph(g: Graph, label: str = "graph") -> Finding:
    """Connectivity and handshake diagnostics for an explicit graph."""
    deg = g.degrees()
    part = degree_pair_partition(g)
    handshake = sum(deg) == 2 * g.edge_count
    conserved = sum(part.counts.values()) == g.edge_count
    connected = g.is_connected()
    note = (f"n={g.vertex_count}, m={g.edge_count}, connected={connected}, "
            f"handshake={'ok' if handshake else 'violated'}, partition sum={'ok' if conserved else 'violated'}")
    ok = handshake and conserved and connected
    return Finding("graph", label, MATCH if ok else MISMATCH, note=note)


# full run -------------------------------------------------------------------------------


def _tasks(registry: Mapping[str, FamilySpec]):
    for name in registry:
        yield ("edge-total", name)
        yield ("count-validity", name)
        yield ("inequalities", name)
    for tid, claim in THEOREM_CLAIMS.items():
        if claim.family in registry:
            yield ("theorem", tid)
    for fam in THM17_ENTRIES:
        if fam in registry:
            yield ("thm17", fam)
    for target, claim in THM18_CLAIMS.items():
        if claim.family in registry:
            yield ("thm18", target)


def _run_task(task, registry) -> Finding:
    kind, key = task
    if kind == "edge-total":
        return check_edge_totals(registry[key])
    if kind == "count-validity":
        return check_count_validity(registry[key])
    if kind == "inequalities":
        return check_inequalities(registry[key])
    if kind == "theorem":
        return check_theorem_vs_partition(THEOREM_CLAIMS[key], registry)
    if kind == "thm17":
        return check_thm17(THM17_ENTRIES[key], registry)
    return check_closed_form_18(THM18_CLAIMS[key], registry)


def _run_chunk(args):
    tasks, registry = args
    return [_run_task(t, registry) for t in tasks]


def run_full_audit(
    registry: Mapping[str, FamilySpec] | None = None,
    *,
    workers: int = 1,
    timestamp: str | None = None,
) -> AuditReport:
    """Run every check over every family and catalog entry.

    With ``workers > 1`` checks are spread over worker processes; the
    report is identical either way.
    """
    registry = load_registry() if registry is None else dict(registry)
    tasks = list(_tasks(registry))
    if workers <= 1:
        findings = [_run_task(t, registry) for t in tasks]
    else:
        chunks = [tasks[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            findings = [f for part in pool.map(_run_chunk, [(c, registry) for c in chunks]) for f in part]
    return AuditReport(findings, timestamp=timestamp)

