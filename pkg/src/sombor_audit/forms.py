"""Piecewise bilinear closed forms ``a*pq + b*p + c*q + d``.

Coefficients are :class:`~sombor_audit.radical.RadicalNumber`.  Regions use
the three conditions the families need on each axis: ``= 1``, ``> 1`` and
``>= 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .dsl import BinOp, Neg, Num, Pow, Sqrt, Var, parse_expression
from .errors import NoCoveringPiece, ParseError, RegionMismatch
from .radical import RadicalNumber, sqrt_rational

__all__ = [
    "BilinearForm",
    "Region",
    "PiecewiseForm",
    "ANY",
    "form_eval",
    "form_sub",
    "parse_form",
    "parse_region",
    "align",
]

EQ1, GT1, GE1 = "=1", ">1", ">=1"
_CONDITIONS = (EQ1, GT1, GE1)

_ZERO = RadicalNumber()


def _rad(x) -> RadicalNumber:
    return RadicalNumber.coerce(x)


@dataclass(frozen=True)
class BilinearForm:
    """``coeff_pq*p*q + coeff_p*p + coeff_q*q + coeff_const``."""

    coeff_pq: RadicalNumber = _ZERO
    coeff_p: RadicalNumber = _ZERO
    coeff_q: RadicalNumber = _ZERO
    coeff_const: RadicalNumber = _ZERO

    def __post_init__(self):
        for name in ("coeff_pq", "coeff_p", "coeff_q", "coeff_const"):
            object.__setattr__(self, name, _rad(getattr(self, name)))

    @classmethod
    def of(cls, pq=0, p=0, q=0, const=0) -> BilinearForm:
        return cls(_rad(pq), _rad(p), _rad(q), _rad(const))

    @property
    def coefficients(self) -> tuple[RadicalNumber, ...]:
        return (self.coeff_pq, self.coeff_p, self.coeff_q, self.coeff_const)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coefficients)

    def __call__(self, p, q) -> RadicalNumber:
        p, q = Fraction(p), Fraction(q)
        return self.coeff_pq * (p * q) + self.coeff_p * p + self.coeff_q * q + self.coeff_const

    def __add__(self, other: BilinearForm) -> BilinearForm:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return BilinearForm(*(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other: BilinearForm) -> BilinearForm:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return BilinearForm(*(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __neg__(self) -> BilinearForm:
        return BilinearForm(*(-a for a in self.coefficients))

    def scale(self, factor) -> BilinearForm:
        factor = _rad(factor)
        return BilinearForm(*(factor * a for a in self.coefficients))

    def __str__(self):
        return render_form(self)


def _render_coeff(c: RadicalNumber, monomial: str, first: bool) -> str:
    text = str(c)
    multi = len(c.terms) > 1
    if not monomial:
        body, negative = (text, False) if multi else (text.lstrip("-"), text.startswith("-"))
        if multi:
            body = f"({text})"
    elif multi:
        body, negative = f"({text})*{monomial}", False
    else:
        negative = text.startswith("-")
        mag = text.lstrip("-")
        body = monomial if mag == "1" else f"{mag}*{monomial}"
    if first:
        return f"-{body}" if negative else body
    return f"{'-' if negative else '+'} {body}"


def render_form(f: BilinearForm) -> str:
    """``A*pq + B*p + C*q + D`` with zero terms omitted.

    >>> render_form(BilinearForm.of(pq=12, p=-2, q=-2))
    '12*pq - 2*p - 2*q'
    """
    parts = []
    for c, mono in zip(f.coefficients, ("pq", "p", "q", "")):
        if c.is_zero():
            continue
        parts.append(_render_coeff(c, mono, not parts))
    return " ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Region:
    p_condition: str = GE1
    q_condition: str = GE1

    def __post_init__(self):
        for c in (self.p_condition, self.q_condition):
            if c not in _CONDITIONS:
                raise ValueError(f"unknown region condition {c!r}")

    def contains(self, p: int, q: int) -> bool:
        return _holds(self.p_condition, p) and _holds(self.q_condition, q)

    def split_axes(self) -> frozenset[str]:
        axes = set()
        if self.p_condition != GE1:
            axes.add("p")
        if self.q_condition != GE1:
            axes.add("q")
        return frozenset(axes)

    def intersect(self, other: Region) -> Region | None:
        p = _meet(self.p_condition, other.p_condition)
        q = _meet(self.q_condition, other.q_condition)
        if p is None or q is None:
            return None
        return Region(p, q)

    def __str__(self):
        pretty = {EQ1: "= 1", GT1: "> 1", GE1: ">= 1"}
        return f"p {pretty[self.p_condition]}, q {pretty[self.q_condition]}"


ANY = Region()


def _holds(cond: str, x: int) -> bool:
    if cond == EQ1:
        return x == 1
    if cond == GT1:
        return x > 1
    return x >= 1


def _meet(a: str, b: str) -> str | None:
    if a == GE1:
        return b
    if b == GE1 or a == b:
        return a
    return None


def parse_region(text: str) -> Region:
    """Parse ``"p = 1, q >= 1"`` (either order, either axis optional)."""
    conds = {"p": GE1, "q": GE1}
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        compact = chunk.replace(" ", "").replace("≥", ">=")
        for axis in ("p", "q"):
            if compact.startswith(axis):
                cond = compact[len(axis):]
                if cond in ("=1", ">1", ">=1"):
                    conds[axis] = cond
                    break
        else:
            raise ParseError(f"bad region condition {chunk!r}")
    return Region(conds["p"], conds["q"])


@dataclass(frozen=True)
class PiecewiseForm:
    pieces: tuple[tuple[Region, BilinearForm], ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple((r, f) for r, f in self.pieces))

    @classmethod
    def single(cls, f: BilinearForm) -> PiecewiseForm:
        return cls(((ANY, f),))

    @property
    def regions(self) -> tuple[Region, ...]:
        return tuple(r for r, _ in self.pieces)

    def split_axes(self) -> frozenset[str]:
        return frozenset().union(*(r.split_axes() for r in self.regions))

    def piece_at(self, p: int, q: int) -> BilinearForm:
        hits = [f for r, f in self.pieces if r.contains(p, q)]
        if len(hits) != 1:
            raise NoCoveringPiece(
                f"{len(hits)} pieces cover (p, q) = ({p}, {q}); expected exactly one"
            )
        return hits[0]

    def is_zero(self) -> bool:
        return all(f.is_zero() for _, f in self.pieces)

    def map(self, fn) -> PiecewiseForm:
        return PiecewiseForm(tuple((r, fn(f)) for r, f in self.pieces))

    def same_regions(self, other: PiecewiseForm) -> bool:
        return sorted(map(_region_key, self.regions)) == sorted(map(_region_key, other.regions))

    def __sub__(self, other: PiecewiseForm) -> PiecewiseForm:
        """Piecewise difference; both operands must share one region list."""
        if not isinstance(other, PiecewiseForm):
            return NotImplemented
        if not self.same_regions(other):
            raise RegionMismatch(
                f"region lists differ: [{'; '.join(map(str, self.regions))}] vs "
                f"[{'; '.join(map(str, other.regions))}]"
            )
        theirs = dict(other.pieces)
        return PiecewiseForm(tuple((r, f - theirs[r]) for r, f in self.pieces))

    def __str__(self):
        if len(self.pieces) == 1 and self.pieces[0][0] == ANY:
            return render_form(self.pieces[0][1])
        return "; ".join(f"{render_form(f)} [{r}]" for r, f in self.pieces)


def _region_key(r: Region):
    return (r.p_condition, r.q_condition)


def form_eval(f: PiecewiseForm | BilinearForm, p: int, q: int) -> RadicalNumber:
    """Exact value of ``f`` at integer ``(p, q)``, both >= 1."""
    if p < 1 or q < 1:
        raise ValueError(f"(p, q) must be positive, got ({p}, {q})")
    if isinstance(f, BilinearForm):
        return f(p, q)
    return f.piece_at(p, q)(p, q)


def form_sub(f: BilinearForm, g: BilinearForm) -> BilinearForm:
    return f - g


def align(forms: Sequence[PiecewiseForm]) -> tuple[Region, ...]:
    """Common refinement of the region lists of ``forms``.

    Forms may be unconditional or split along one shared axis; splitting on
    both ``p`` and ``q`` across operands raises :class:`RegionMismatch`.
    """
    axes = frozenset().union(*(f.split_axes() for f in forms)) if forms else frozenset()
    if len(axes) > 1:
        raise RegionMismatch("operands branch on different variables (p and q)")
    regions = [ANY]
    for f in forms:
        refined = []
        for r in regions:
            for s in f.regions:
                cut = r.intersect(s)
                if cut is not None and cut not in refined:
                    refined.append(cut)
        regions = refined
    return tuple(regions)


def restrict(f: PiecewiseForm, region: Region) -> BilinearForm:
    """The single piece of ``f`` whose region contains ``region``."""
    for r, g in f.pieces:
        if r.intersect(region) == region:
            return g
    raise NoCoveringPiece(f"no piece of {f} contains region [{region}]")


def aligned_sum(forms: Iterable[PiecewiseForm]) -> PiecewiseForm:
    forms = list(forms)
    regions = align(forms)
    pieces = []
    for r in regions:
        total = BilinearForm()
        for f in forms:
            total = total + restrict(f, r)
        pieces.append((r, total))
    return PiecewiseForm(tuple(pieces))


def aligned_sub(f: PiecewiseForm, g: PiecewiseForm) -> PiecewiseForm:
    """``f - g`` on the common refinement of both region lists."""
    regions = align([f, g])
    return PiecewiseForm(tuple((r, restrict(f, r) - restrict(g, r)) for r in regions))


# text -> form -------------------------------------------------------------------

_PQ_ALIAS = {"pq": BinOp("*", Var("p"), Var("q"))}

# polynomial as {(deg_p, deg_q): RadicalNumber}
_ONE = (0, 0)


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            key = (i + k, j + l)
            out[key] = out.get(key, _ZERO) + c * d
    return {k: v for k, v in out.items() if not v.is_zero()}


def _poly_add(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, _ZERO) + (v if sign > 0 else -v)
    return {k: v for k, v in out.items() if not v.is_zero()}


def _constant(poly: dict, what: str) -> RadicalNumber:
    if any(k != _ONE for k in poly):
        raise ParseError(f"{what} must not depend on p or q")
    return poly.get(_ONE, _ZERO)


def _to_poly(node) -> dict:
    if isinstance(node, Num):
        return {_ONE: RadicalNumber.rational(node.value)} if node.value else {}
    if isinstance(node, Var):
        return {(1, 0) if node.name == "p" else (0, 1): RadicalNumber.rational(1)}
    if isinstance(node, Neg):
        return {k: -v for k, v in _to_poly(node.operand).items()}
    if isinstance(node, Sqrt):
        c = _constant(_to_poly(node.arg), "sqrt argument")
        if not c.is_rational() or c.rational_value() < 0:
            raise ParseError(f"sqrt argument must be a nonnegative rational, got {c}")
        s = sqrt_rational(c.rational_value())
        return {_ONE: s} if not s.is_zero() else {}
    if isinstance(node, Pow):
        e = _constant(_to_poly(node.exponent), "exponent").rational_value()
        if e < 0 or e.denominator != 1:
            raise ParseError("exponents in closed forms must be nonnegative integers")
        out = {_ONE: RadicalNumber.rational(1)}
        base = _to_poly(node.base)
        for _ in range(int(e)):
            out = _poly_mul(out, base)
        return out
    left, right = _to_poly(node.left), _to_poly(node.right)
    if node.op == "+":
        return _poly_add(left, right)
    if node.op == "-":
        return _poly_add(left, right, -1)
    if node.op == "*":
        return _poly_mul(left, right)
    d = _constant(right, "divisor")
    if d.is_zero():
        raise ParseError("division by zero in closed form")
    try:
        inv = d.reciprocal()
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return {k: v * inv for k, v in left.items()}


def parse_form(text: str) -> BilinearForm:
    """Read ``"12*p*q - 2*p + 8*(q - 1)"``-style text into a :class:`BilinearForm`.

    ``pq`` is accepted as shorthand for ``p*q``; coefficients may contain
    ``sqrt`` of rational constants.
    """
    poly = _to_poly(parse_expression(text, ("p", "q"), aliases=_PQ_ALIAS))
    bad = [k for k in poly if k not in ((1, 1), (1, 0), (0, 1), _ONE)]
    if bad:
        raise ParseError(f"{text!r} is not bilinear in p and q")
    return BilinearForm(
        poly.get((1, 1), _ZERO), poly.get((1, 0), _ZERO), poly.get((0, 1), _ZERO),
        poly.get(_ONE, _ZERO),
    )


def piecewise(*pieces) -> PiecewiseForm:
    """Build a :class:`PiecewiseForm` from ``(region_text, form_text)`` pairs or one form text."""
    if len(pieces) == 1 and isinstance(pieces[0], str):
        return PiecewiseForm.single(parse_form(pieces[0]))
    return PiecewiseForm(tuple((parse_region(r), parse_form(f)) for r, f in pieces))


def coverage_ok(f: PiecewiseForm, points: Iterable[tuple[int, int]]) -> bool:
    return all(sum(r.contains(p, q) for r in f.regions) == 1 for p, q in points)


def grid(lo: int, hi: int):
    return itertools.product(range(lo, hi + 1), repeat=2)
