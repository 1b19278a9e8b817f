"""Catalog of the stated closed-form results, stored as printed.

Each entry is a claim to be checked, never a corrected value.  Where the
printed statement is internally ambiguous the entry carries a ``flag``
describing how it was filed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnknownTheorem
from .forms import BilinearForm, PiecewiseForm, form_eval, parse_form, piecewise

__all__ = [
    "TheoremClaim",
    "Thm17Entry",
    "ClosedFormClaim18",
    "THEOREM_CLAIMS",
    "THM17_ENTRIES",
    "THM18_CLAIMS",
    "THM17_CLASSES",
    "get_claim",
    "entry_from_family",
]

P1 = "p = 1, q >= 1"
PG = "p > 1, q >= 1"
Q1 = "q = 1, p >= 1"
QG = "q > 1, p >= 1"


@dataclass(frozen=True)
class TheoremClaim:
    id: int
    family: str
    index: str  # 'sombor' | 'reduced_sombor'
    stated_form: PiecewiseForm
    flag: str = ""


def _claim(id_, family, index, *pieces, flag=""):
    return TheoremClaim(id_, family, index, piecewise(*pieces), flag)


THEOREM_CLAIMS = {
    c.id: c
    for c in (
        _claim(
            1, "SiC3-I", "sombor",
            (P1, "36*sqrt(2)*pq + (6*sqrt(13) - 30*sqrt(2))*q - 6*sqrt(2)*p"
                 " + (4*sqrt(2) + 2*sqrt(5) + sqrt(10) - 4*sqrt(13))"),
            (PG, "36*sqrt(2)*pq + (8*sqrt(13) - 20*sqrt(2))*q + (4*sqrt(13) - 35*sqrt(2))*p"
                 " + (18*sqrt(2) + 2*sqrt(5) + sqrt(10) - 8*sqrt(13))"),
        ),
        _claim(
            2, "SiC3-I", "reduced_sombor",
            (P1, "24*sqrt(2)*pq + (6*sqrt(5) - 21*sqrt(2))*q - 4*sqrt(2)*p + (4 + 3*sqrt(2) - 4*sqrt(5))"),
            (PG, "24*sqrt(2)*pq + (8*sqrt(5) - 14*sqrt(2))*q + (4*sqrt(5) - 24*sqrt(2))*p"
                 " + (4 - 8*sqrt(5) + 13*sqrt(2))"),
        ),
        _claim(
            3, "SiC3-II", "sombor",
            "36*sqrt(2)*pq + (8*sqrt(13) - 30*sqrt(2))*q + (4*sqrt(13) - 20*sqrt(2))*p"
            " + (2*sqrt(10) - 10*sqrt(13) + 23*sqrt(2))",
        ),
        _claim(
            4, "SiC3-II", "reduced_sombor",
            "36*sqrt(2)*pq + (8*sqrt(5) - 20*sqrt(2))*q + (4*sqrt(5) - 14*sqrt(2))*p"
            " + (4 - 10*sqrt(5) + 15*sqrt(2))",
        ),
        _claim(
            5, "SiC3-III", "sombor",
            "36*sqrt(2)*pq + (4*sqrt(13) - 22*sqrt(2))*q + (6*sqrt(13) - 30*sqrt(2))*p"
            " + (2*sqrt(10) - 8*sqrt(13) + 18*sqrt(2) + sqrt(5))",
        ),
        _claim(
            6, "SiC3-III", "reduced_sombor",
            "24*sqrt(2)*pq + (4*sqrt(5) - 14*sqrt(2))*q + (6*sqrt(5) - 21*sqrt(2))*p"
            " + (5 - 8*sqrt(5) + 13*sqrt(2))",
        ),
        _claim(
            7, "Si2C3-I", "sombor",
            "45*sqrt(2)*pq + (8*sqrt(13) - 35*sqrt(2))*q + (6*sqrt(13) - 25*sqrt(2))*p"
            " + (21*sqrt(2) + sqrt(5) + sqrt(10) - 9*sqrt(13))",
            flag="hypothesis names Si2C3-II, formula line names Si2C3-I; filed under Si2C3-I",
        ),
        _claim(
            8, "Si2C3-I", "reduced_sombor",
            "30*sqrt(2)*pq + (8*sqrt(5) - 16*sqrt(2))*q + (6*sqrt(5) - 17*sqrt(2))*p"
            " + (3 + 14*sqrt(2) - 9*sqrt(5))",
            flag="hypothesis names Si2C3-II, formula line names Si2C3-I; filed under Si2C3-I",
        ),
        _claim(
            9, "Si2C3-II", "sombor",
            "45*sqrt(2)*pq + (8*sqrt(13) - 35*sqrt(2))*q + (8*sqrt(13) - 35*sqrt(2))*p"
            " + (35*sqrt(2) + 2*sqrt(5) + sqrt(10) - 14*sqrt(13))",
        ),
        _claim(
            10, "Si2C3-II", "reduced_sombor",
            "30*sqrt(2)*pq + (8*sqrt(5) - 24*sqrt(2))*q + (8*sqrt(5) - 24*sqrt(2))*p"
            " + (3 + 22*sqrt(2) - 14*sqrt(5))",
        ),
        _claim(
            11, "Si2C3-III", "sombor",
            "45*sqrt(2)*pq + (8*sqrt(13) - 35*sqrt(2))*q + (8*sqrt(13) - 30*sqrt(2))*p"
            " + (28*sqrt(2) + 2*sqrt(10) - 12*sqrt(13))",
        ),
        _claim(
            12, "Si2C3-III", "reduced_sombor",
            "30*sqrt(2)*pq + (8*sqrt(5) - 24*sqrt(2))*q + (8*sqrt(5) - 20*sqrt(2))*p"
            " + (4 + 18*sqrt(2) - 12*sqrt(5))",
            flag="hypothesis names Si2C3-II, formula line names Si2C3-III; filed under Si2C3-III",
        ),
        _claim(
            13, "SiC4-I", "sombor",
            "42*sqrt(2)*pq + (4*sqrt(13) - 20*sqrt(2))*q + (2*sqrt(13) + 3*sqrt(10) - sqrt(2))*p"
            " + (11*sqrt(2) + 2*sqrt(5) - 2*sqrt(10) - 2*sqrt(13))",
            flag="ambiguous family: hypothesis names SiC4-II, formula line names Si2C3-I; "
                 "filed under SiC4-I (the surrounding partition and edge count)",
        ),
        _claim(
            14, "SiC4-I", "reduced_sombor",
            "28*sqrt(2)*pq + (4*sqrt(5) - 14*sqrt(2))*q + (6 + 2*sqrt(5) - 14*sqrt(2))*p"
            " + (8*sqrt(2) - 2*sqrt(5) - 2)",
            flag="ambiguous family: hypothesis names SiC4-I, formula line names SiC4-II; "
                 "filed under SiC4-I (the surrounding partition and edge count)",
        ),
        _claim(
            15, "SiC4-II", "sombor",
            (P1, "45*sqrt(2)*pq - 6*sqrt(2)*q + (6*sqrt(13) - 35*sqrt(2))*p"
                 " + (4*sqrt(2) + 2*sqrt(5) - 6*sqrt(13))"),
            (PG, "45*sqrt(2)*pq + (8*sqrt(13) - 30*sqrt(2))*q + (12*sqrt(13) - 50*sqrt(2))*p"
                 " + (4*sqrt(2) + 2*sqrt(5) - 14*sqrt(13))"),
            flag="p = 1 branch prints the p term as '(6*sqrt(13) - 35*sqrt(2)p)'; "
                 "read as (6*sqrt(13) - 35*sqrt(2))*p",
        ),
        _claim(
            16, "SiC4-II", "reduced_sombor",
            (P1, "30*sqrt(2)*pq - 4*sqrt(2)*q + (6*sqrt(5) - 25*sqrt(2))*p + (2 + 2*sqrt(2) - 6*sqrt(5))"),
            (PG, "30*sqrt(2)*pq + (8*sqrt(5) - 20*sqrt(2))*q + (12*sqrt(5) - 34*sqrt(2))*p"
                 " + (2 - 14*sqrt(5) + 2*sqrt(2))"),
        ),
    )
}


# class k of the average-Sombor formula counts edges of this degree pair
THM17_CLASSES = {1: (1, 2), 2: (1, 3), 3: (2, 2), 4: (2, 3), 5: (3, 3)}


@dataclass(frozen=True)
class Thm17Entry:
    """One table row: five class counts and ``A = a_num / a_den``."""

    family: str
    e: tuple[PiecewiseForm, PiecewiseForm, PiecewiseForm, PiecewiseForm, PiecewiseForm]
    a_num: BilinearForm
    a_den: BilinearForm
    source: str = "table"

    def count(self, k: int, p: int, q: int) -> Fraction:
        return form_eval(self.e[k - 1], p, q).rational_value()

    def a_value(self, p: int, q: int) -> Fraction:
        den = form_eval(self.a_den, p, q).rational_value()
        if den <= 0:
            raise ValueError(f"{self.family}: A has nonpositive denominator at ({p}, {q})")
        return form_eval(self.a_num, p, q).rational_value() / den

    @property
    def a_text(self) -> str:
        return f"({self.a_num})/({self.a_den})"


def _e(x) -> PiecewiseForm:
    if isinstance(x, tuple):
        return piecewise(*x)
    return piecewise(str(x))


def _row(family, e1, e2, e3, e4, e5, num, den):
    return Thm17Entry(family, tuple(_e(x) for x in (e1, e2, e3, e4, e5)), parse_form(num), parse_form(den))


THM17_ENTRIES = {
    r.family: r
    for r in (
        _row("SiC3-I", 2, 1,
             ((P1, "2*q - 1"), (PG, "2*p + 2*q - 3")),
             ((P1, "6*q - 4"), (PG, "4*p + 8*q - 8")),
             ((P1, "12*pq - 2*p - 12*q + 2"), (PG, "12*pq - 8*q - 13*p + 8")),
             "2*p + 3*q", "4*pq"),
        _row("SiC3-II", 0, 2, "2*p + 1", "4*p + 8*q - 10", "12*pq - 8*p - 10*q + 7",
             "p + q", "2*pq"),
        _row("SiC3-III", 1, 2, "3*p + 2*q - 3", "6*p + 4*q - 8", "12*pq - 12*p - 8*q + 8",
             "3*p + 2*q", "4*pq"),
        _row("Si2C3-I", 1, 1, "p + 2*q", "6*p + 8*q - 9", "15*pq - 9*p - 13*q + 7",
             "2*p + 3*q", "5*pq"),
        _row("Si2C3-II", 2, 1, "2*p + 2*q", "8*p + 8*q - 14", "15*pq - 13*p - 13*q + 11",
             "3*p + 3*q", "5*pq"),
        _row("Si2C3-III", 0, 2, "2 + 2*q", "8*p + 8*q - 12", "15*pq - 10*p - 13*q + 8",
             "2*p + 3*q", "5*pq"),
        _row("SiC4-I", 2, "3*p - 2", "p + 2*q - 2", "2*p + 4*q - 2", "14*pq - 10*p - 8*q + 5",
             "4*p + q - 1", "5*pq"),
        _row("SiC4-II", 2, 0,
             ((Q1, "5*q + 2"), (QG, "2*p + 2")),
             ((Q1, "6*p - 6"), (QG, "12*p + 8*q - 14")),
             ((Q1, "15*pq - 15*p - 2*q"), (QG, "12*pq - 18*q - 10*p")),
             "4*p + 2*q", "5*pq"),
    )
}


def entry_from_family(family, a_num: BilinearForm, a_den: BilinearForm) -> Thm17Entry:
    """A formula entry whose class counts come from a registry family."""
    e = tuple(family.count_form(THM17_CLASSES[k]) for k in range(1, 6))
    return Thm17Entry(family.name, e, a_num, a_den, source="registry")


@dataclass(frozen=True)
class ClosedFormClaim18:
    target: str  # 'm1' | 'm2' | 'isi' | 'sombor-approx'
    family: str
    stated_form: BilinearForm
    approximate: bool


THM18_CLAIMS = {
    c.target: c
    for c in (
        ClosedFormClaim18("m1", "Si2C3-I", parse_form("90*pq - 20*p - 30*q + 4"), False),
        ClosedFormClaim18("m2", "Si2C3-I", parse_form("135*pq - 41*p - 61*q + 14"), False),
        ClosedFormClaim18("isi", "Si2C3-I", parse_form("22.5*pq - 5.3*p - 7.9*q + 1.11"), True),
        ClosedFormClaim18("sombor-approx", "Si2C3-I", parse_form("42.45*pq - 10.63*p - 16.1*q + 38.45"), True),
    )
}


def get_claim(theorem_id: int, selector: str | None = None):
    """Look up a stated claim.

    Theorems 1-16 return a :class:`TheoremClaim`.  For 17 the selector is a
    family name and for 18 a target (``m1``, ``m2``, ``isi``,
    ``sombor-approx``); without a selector all entries are returned as a
    tuple.
    """
    if theorem_id in THEOREM_CLAIMS:
        return THEOREM_CLAIMS[theorem_id]
    table = {17: THM17_ENTRIES, 18: THM18_CLAIMS}.get(theorem_id)
    if table is None:
        raise UnknownTheorem(f"no theorem {theorem_id!r}; valid ids are 1-18")
    if selector is None:
        return tuple(table.values())
    try:
        return table[selector]
    except KeyError:
        raise UnknownTheorem(f"theorem {theorem_id} has no entry {selector!r}") from None
