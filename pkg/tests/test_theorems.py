import pytest

from sombor_audit.errors import UnknownTheorem
from sombor_audit.families import FAMILY_NAMES
from sombor_audit.forms import Region, parse_form, piecewise
from sombor_audit.radical import RadicalNumber
from sombor_audit.theorems import (
    THEOREM_CLAIMS,
    THM17_CLASSES,
    THM17_ENTRIES,
    THM18_CLAIMS,
    ClosedFormClaim18,
    TheoremClaim,
    Thm17Entry,
    get_claim,
)

# frozen after reviewing each statement's hypothesis against its formula
FAMILY_INDEX = {
    1: ("SiC3-I", "sombor"), 2: ("SiC3-I", "reduced_sombor"),
    3: ("SiC3-II", "sombor"), 4: ("SiC3-II", "reduced_sombor"),
    5: ("SiC3-III", "sombor"), 6: ("SiC3-III", "reduced_sombor"),
    7: ("Si2C3-I", "sombor"), 8: ("Si2C3-I", "reduced_sombor"),
    9: ("Si2C3-II", "sombor"), 10: ("Si2C3-II", "reduced_sombor"),
    11: ("Si2C3-III", "sombor"), 12: ("Si2C3-III", "reduced_sombor"),
    13: ("SiC4-I", "sombor"), 14: ("SiC4-I", "reduced_sombor"),
    15: ("SiC4-II", "sombor"), 16: ("SiC4-II", "reduced_sombor"),
}


def test_catalog_sizes():
    assert len(THEOREM_CLAIMS) == 16
    assert len(THM17_ENTRIES) == 8
    assert len(THM18_CLAIMS) == 4
    assert set(THM17_ENTRIES) == set(FAMILY_NAMES)
    assert set(THM18_CLAIMS) == {"m1", "m2", "isi", "sombor-approx"}


@pytest.mark.parametrize("tid", range(1, 17))
def test_family_index_pairing(tid):
    c = get_claim(tid)
    assert isinstance(c, TheoremClaim)
    assert (c.family, c.index) == FAMILY_INDEX[tid]


def test_ambiguous_statements_are_flagged():
    assert THEOREM_CLAIMS[13].flag and THEOREM_CLAIMS[14].flag


def test_theorem_7_coefficients():
    f = get_claim(7).stated_form
    assert len(f.pieces) == 1
    form = f.pieces[0][1]
    assert form.coeff_pq == RadicalNumber({2: 45})
    assert form.coeff_q == RadicalNumber({13: 8, 2: -35})
    assert form.coeff_p == RadicalNumber({13: 6, 2: -25})
    assert form.coeff_const == RadicalNumber({2: 21, 5: 1, 10: 1, 13: -9})


def test_branching_theorems():
    assert get_claim(1).stated_form.regions == (Region("=1", ">=1"), Region(">1", ">=1"))
    assert get_claim(15).stated_form.split_axes() == frozenset({"p"})


def test_thm17_lookup():
    entry = get_claim(17, "Si2C3-II")
    assert isinstance(entry, Thm17Entry)
    assert (entry.a_num, entry.a_den) == (parse_form("3*p + 3*q"), parse_form("5*pq"))
    assert entry.a_text == "(3*p + 3*q)/(5*pq)"


def test_thm17_table_keeps_stated_e3():
    e3 = THM17_ENTRIES["SiC3-I"].e[2]
    assert e3 == piecewise(("p = 1, q >= 1", "2*q - 1"), ("p > 1, q >= 1", "2*p + 2*q - 3"))
    assert THM17_CLASSES[3] == (2, 2)


def test_thm18_lookup():
    m1 = get_claim(18, "m1")
    assert isinstance(m1, ClosedFormClaim18)
    assert m1.stated_form == parse_form("90*pq - 20*p - 30*q + 4")
    assert not m1.approximate
    assert get_claim(18, "isi").approximate and get_claim(18, "sombor-approx").approximate
    assert len(get_claim(18)) == 4 and len(get_claim(17)) == 8


@pytest.mark.parametrize("args", [(0,), (19,), (17, "SiC9"), (18, "m3")])
def test_unknown_theorem(args):
    with pytest.raises(UnknownTheorem):
        get_claim(*args)
