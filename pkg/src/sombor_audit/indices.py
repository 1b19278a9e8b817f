"""Degree-based topological indices on graphs, partitions and families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .dsl import WeightExpr, eval_weight, parse_weight, render_expr
from .errors import NotRadicalClosed, ZeroVertices
from .forms import BilinearForm, PiecewiseForm, align, restrict
from .graph import DegreePairPartition, Graph, degree_pair_partition, pair_key
from .radical import RadicalNumber, rad_to_float, sqrt_rational

__all__ = [
    "IndexDefinition",
    "BUILTIN_INDICES",
    "BUILTIN_EXPRESSIONS",
    "get_index",
    "index_on_graph",
    "index_on_partition",
    "symbolic_index",
    "average_sombor_on_partition",
    "average_sombor_on_graph",
    "thm17_formula_eval",
    "M_CHOICES",
]

Value = Union[RadicalNumber, float]

CLOSED = "closed-under-radicals"
REAL = "real-valued"


@dataclass(frozen=True)
class IndexDefinition:
    """An edge-additive index ``sum over edges of weight(d_u, d_v)``.

    The weight is always called with the degree pair sorted ascending, so
    any rule behaves symmetrically.
    """

    name: str
    rule: Callable[[int, int], Value]
    kind: str = CLOSED
    expression: str = ""

    def weight(self, du: int, dv: int) -> Value:
        return self.rule(*pair_key(du, dv))

    @classmethod
    def from_expr(cls, text: str | WeightExpr, name: str | None = None, probe: int = 10) -> IndexDefinition:
        """Index from a weight expression; ``kind`` is decided by probing pairs up to ``probe``."""
        expr = parse_weight(text) if isinstance(text, str) else text
        rendered = render_expr(expr)

        def rule(du, dv, _e=expr):
            return eval_weight(_e, du, dv)

        kind = CLOSED
        for i in range(1, probe + 1):
            for j in range(i, probe + 1):
                try:
                    w = rule(i, j)
                except ArithmeticError:
                    continue
                if not isinstance(w, RadicalNumber):
                    kind = REAL
                    break
            if kind == REAL:
                break
        return cls(name or rendered, rule, kind, rendered)


def _sombor(i, j):
    return sqrt_rational(i * i + j * j)


def _reduced_sombor(i, j):
    return sqrt_rational((i - 1) ** 2 + (j - 1) ** 2)


def _m1(i, j):
    return RadicalNumber.rational(i + j)


def _m2(i, j):
    return RadicalNumber.rational(i * j)


def _isi(i, j):
    return RadicalNumber.rational(Fraction(i * j, i + j))


BUILTIN_EXPRESSIONS = {
    "sombor": "sqrt(du^2 + dv^2)",
    "reduced_sombor": "sqrt((du - 1)^2 + (dv - 1)^2)",
    "m1": "du + dv",
    "m2": "du*dv",
    "isi": "du*dv/(du + dv)",
}

BUILTIN_INDICES = {
    "sombor": IndexDefinition("sombor", _sombor, CLOSED, BUILTIN_EXPRESSIONS["sombor"]),
    "reduced_sombor": IndexDefinition(
        "reduced_sombor", _reduced_sombor, CLOSED, BUILTIN_EXPRESSIONS["reduced_sombor"]
    ),
    "m1": IndexDefinition("m1", _m1, CLOSED, BUILTIN_EXPRESSIONS["m1"]),
    "m2": IndexDefinition("m2", _m2, CLOSED, BUILTIN_EXPRESSIONS["m2"]),
    "isi": IndexDefinition("isi", _isi, CLOSED, BUILTIN_EXPRESSIONS["isi"]),
}

# graph-level index handled by the average_sombor_* functions
AVERAGE_SOMBOR = "average_sombor"


def get_index(name: str) -> IndexDefinition:
    try:
        return BUILTIN_INDICES[name]
    except KeyError:
        known = ", ".join([*BUILTIN_INDICES, AVERAGE_SOMBOR])
        raise KeyError(f"unknown index {name!r}; built-ins: {known}") from None


def _accumulate(terms) -> Value:
    exact = RadicalNumber()
    inexact = 0.0
    is_exact = True
    for count, w in terms:
        if isinstance(w, RadicalNumber):
            exact = exact + w * count
        else:
            is_exact = False
            inexact += count * w
    if is_exact:
        return exact
    return rad_to_float(exact) + inexact


def index_on_partition(idx: IndexDefinition, part: DegreePairPartition) -> Value:
    """``sum(count * weight(pair))`` over the partition's degree pairs."""
    return _accumulate((c, idx.weight(i, j)) for (i, j), c in part.counts.items() if c)


def index_on_graph(idx: IndexDefinition, g: Graph) -> Value:
    """Sum of the weight over all edges of ``g``.

    >>> from .graph import load_edge_list
    >>> str(index_on_graph(BUILTIN_INDICES["sombor"], load_edge_list("0 1\\n1 2\\n2 3\\n3 0")))
    '8*sqrt(2)'
    """
    deg = g.degrees()
    return _accumulate((1, idx.weight(deg[u], deg[v])) for u, v in sorted(g.edges))


def symbolic_index(idx: IndexDefinition, family) -> PiecewiseForm:
    """Closed form of ``idx`` over a family, re-derived from its partition."""
    weights = {}
    for pair in family.partition:
        w = idx.weight(*pair)
        if not isinstance(w, RadicalNumber):
            raise NotRadicalClosed(f"{idx.name}: weight at {pair} is not an exact radical ({w!r})")
        weights[pair] = w
    forms = list(family.partition.values())
    pieces = []
    for region in align(forms):
        total = BilinearForm()
        for pair, pf in family.partition.items():
            total = total + restrict(pf, region).scale(weights[pair])
        pieces.append((region, total))
    return PiecewiseForm(tuple(pieces))


M_CHOICES = ("partition-sum", "claimed")


def _edge_count(part: DegreePairPartition, m_choice: str) -> int:
    if m_choice == "partition-sum":
        return part.total_edges
    if m_choice == "claimed":
        if part.claimed_edges is None:
            raise ValueError("partition carries no claimed edge count")
        return part.claimed_edges
    raise ValueError(f"m_choice must be one of {M_CHOICES}, got {m_choice!r}")


def average_sombor_on_partition(part: DegreePairPartition, m_choice: str = "partition-sum") -> float:
    """``sum(count * sqrt((i - t)^2 + (j - t)^2))`` with ``t = 2m/n``.

    Degree offsets are formed exactly, so a regular graph gives exactly 0.0.
    """
    if part.vertex_count <= 0:
        raise ZeroVertices("average degree undefined for zero vertices")
    t = Fraction(2 * _edge_count(part, m_choice), part.vertex_count)
    total = 0.0
    for (i, j), c in part.counts.items():
        if c:
            total += c * math.hypot(float(i - t), float(j - t))
    return total


def average_sombor_on_graph(g: Graph) -> float:
    return average_sombor_on_partition(degree_pair_partition(g))


def thm17_formula_eval(entry, p: int, q: int) -> float:
    """Simplified average-Sombor formula driven by five class counts and ``A``.

    With ``t = 3 - A`` the classes {1,2}, {1,3}, {2,2}, {2,3}, {3,3}
    contribute ``sqrt(2)`` times ``sqrt((A-3/2)^2 + 1/4)``,
    ``sqrt((A-1)^2 + 1)``, ``|A - 1|``, ``sqrt((A-1/2)^2 + 1/4)`` and ``A``
    per edge.  The ``{2,2}`` term needs the absolute value: ``A > 1`` does
    occur for small ``p, q``.
    """
    e1, e2, e3, e4, e5 = (float(entry.count(k, p, q)) for k in range(1, 6))
    a = entry.a_value(p, q)
    af = float(a)
    return math.sqrt(2) * (
        e1 * math.hypot(float(a - Fraction(3, 2)), 0.5)
        + e2 * math.hypot(float(a - 1), 1.0)
        + e3 * abs(float(a - 1))
        + e4 * math.hypot(float(a - Fraction(1, 2)), 0.5)
        + e5 * af
    )
