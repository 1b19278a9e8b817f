from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from sombor_audit.errors import NoCoveringPiece, ParseError, RegionMismatch
from sombor_audit.families import default_registry
from sombor_audit.forms import (
    ANY,
    BilinearForm,
    PiecewiseForm,
    Region,
    aligned_sub,
    aligned_sum,
    coverage_ok,
    form_eval,
    form_sub,
    grid,
    parse_form,
    parse_region,
    piecewise,
)
from sombor_audit.radical import RadicalNumber
from sombor_audit.theorems import THEOREM_CLAIMS
from oracle import to_sympy

S = RadicalNumber.sqrt


def test_eval_claimed_edges_sic3_ii():
    assert form_eval(parse_form("12*pq - 2*p - 2*q"), 1, 1) == 8


def test_eval_zero_form():
    assert form_eval(PiecewiseForm.single(BilinearForm()), 7, 3).is_zero()


def test_eval_theorem_7_at_origin():
    expected = RadicalNumber({2: 6, 13: 5, 5: 1, 10: 1})
    assert form_eval(THEOREM_CLAIMS[7].stated_form, 1, 1) == expected


def test_form_sub_examples():
    f = parse_form("12*pq - 2*p - 3*q")
    assert form_sub(f, f).is_zero()
    assert form_sub(f, parse_form("12*pq - 3*p - 2*q")) == parse_form("p - q")
    a = parse_form("(4*sqrt(13) - 22*sqrt(2))*q")
    b = parse_form("(4*sqrt(13) - 20*sqrt(2))*q")
    assert form_sub(a, b).coeff_q == RadicalNumber({2: -2})


def test_parse_form_variants():
    assert parse_form("6*p - 1 + 8*(q - 1)") == BilinearForm.of(p=6, q=8, const=-9)
    assert parse_form("2 + 2*q") == BilinearForm.of(q=2, const=2)
    f = parse_form("45*sqrt(2)*pq + (6*sqrt(13) - 25*sqrt(2))*p")
    assert f.coeff_pq == RadicalNumber({2: 45})
    assert f.coeff_p == RadicalNumber({13: 6, 2: -25})
    assert parse_form("p/2").coeff_p == RadicalNumber.rational(Fraction(1, 2))


@pytest.mark.parametrize("text", ["p*p", "p^2*q", "sqrt(p)", "1/p", "(p - q"])
def test_parse_form_rejects(text):
    with pytest.raises(ParseError):
        parse_form(text)


def test_render_form():
    assert str(parse_form("12*pq - 2*p - 2*q")) == "12*pq - 2*p - 2*q"
    assert str(BilinearForm()) == "0"
    text = str(parse_form("(8*sqrt(13) - 35*sqrt(2))*q + 3"))
    assert parse_form(text) == parse_form("(8*sqrt(13) - 35*sqrt(2))*q + 3")


def test_region_parse_and_contains():
    r = parse_region("p = 1, q >= 1")
    assert r == Region("=1", ">=1")
    assert r.contains(1, 5) and not r.contains(2, 5)
    assert parse_region("q > 1") == Region(">=1", ">1")
    assert str(r) == "p = 1, q >= 1"
    with pytest.raises(ParseError):
        parse_region("p < 3")


def test_piece_at_requires_unique_cover():
    gap = piecewise(("p = 1", "p"))
    with pytest.raises(NoCoveringPiece):
        form_eval(gap, 2, 1)
    overlap = piecewise(("p >= 1", "p"), ("p = 1", "q"))
    with pytest.raises(NoCoveringPiece):
        form_eval(overlap, 1, 1)


def test_piecewise_subtraction_requires_same_regions():
    f = piecewise(("p = 1", "q"), ("p > 1", "p"))
    g = piecewise(("q = 1", "q"), ("q > 1", "p"))
    with pytest.raises(RegionMismatch):
        f - g
    with pytest.raises(RegionMismatch):
        aligned_sub(f, g)
    h = aligned_sub(f, piecewise("q"))
    assert form_eval(h, 1, 4) == 0 and form_eval(h, 3, 4) == -1


def test_aligned_sum_refines_regions():
    total = aligned_sum([piecewise("pq"), piecewise(("p = 1", "1"), ("p > 1", "2"))])
    assert form_eval(total, 1, 3) == 4 and form_eval(total, 2, 3) == 8


# invariants ---------------------------------------------------------------

small = st.integers(min_value=-20, max_value=20)
radicands = st.sampled_from([1, 2, 3, 5, 10, 13])
coef = st.builds(lambda a, k: RadicalNumber({k: a}), small, radicands)
forms = st.builds(BilinearForm, coef, coef, coef, coef)


@given(forms, forms, st.integers(1, 50), st.integers(1, 50))
def test_eval_of_difference(f, g, p, q):
    assert form_eval(f - g, p, q) == form_eval(f, p, q) - form_eval(g, p, q)


@given(forms, st.integers(1, 50), st.integers(1, 50))
def test_eval_agrees_with_sympy(f, p, q):
    expected = sum(to_sympy(c) * m for c, m in zip(f.coefficients, (p * q, p, q, 1)))
    assert sp.simplify(to_sympy(form_eval(f, p, q)) - expected) == 0


def _registered_forms():
    for fam in default_registry().values():
        yield fam.name, fam.vertex_form
        yield fam.name, fam.claimed_edge_form
        yield from ((fam.name, pf) for pf in fam.partition.values())
    for c in THEOREM_CLAIMS.values():
        yield f"theorem {c.id}", c.stated_form


@pytest.mark.parametrize("label, f", list(_registered_forms()))
def test_registered_forms_cover_grid(label, f):
    if isinstance(f, BilinearForm):
        f = PiecewiseForm.single(f)
    assert coverage_ok(f, grid(1, 50)), label
    assert ANY.contains(50, 50)
