import random

import pytest
from hypothesis import given, strategies as st

from cyclomod.abelian import det, matmul, transpose
from cyclomod.covering import BranchData, rs_generators
from cyclomod.errors import PreconditionTwoFull, WordShapeViolation
from cyclomod.intersection import (
    Letter,
    RelatorWord,
    build_relator,
    compare_table,
    deck_action,
    eliminate,
    genus4_comparison,
    intersection_form,
    intersection_report,
    published_genus4_entries,
    published_genus4_word,
    rule_matrix,
)
from cyclomod.verify import random_two_full, two_full_properties

FERMAT = BranchData(3, (1, 1, 1))
GENUS4 = BranchData(3, (1,) * 6)


def word(spec):
    """'a b A B' style: lowercase letters positive, uppercase inverse."""
    out = []
    for ch in spec.split():
        out.append(Letter((ord(ch.lower()) - 96, 1), 1 if ch.islower() else -1))
    return RelatorWord(tuple(out))


def test_fermat_relator_and_form():
    raw = build_relator(FERMAT)
    assert [(a.gen, a.sign) for a in raw.letters] == [((1, 1), 1), ((0, 1), 1), ((2, 1), 1)]
    rep = intersection_report(FERMAT)
    assert sorted(a.gen[0] for a in rep.reduced.letters) == [1, 1, 2, 2]
    assert rep.reduced.has_surface_shape(1)
    assert rep.form.matrix == [[0, 1], [-1, 0]]
    assert rep.deck == [[0, -1], [1, -1]]


def test_fermat_eliminated_relator():
    # the power relation delta_{0,1} delta_{1,1} delta_{2,1} = 1 removes delta_{0,1}
    pres = rs_generators(FERMAT)
    assert pres.eliminated == [(0, 1)]
    assert pres.power_relations == [[(0, 1, 1), (1, 1, 1), (2, 1, 1)]]


def test_standard_surface_words():
    # a b a^-1 b^-1 c d c^-1 d^-1: one vertex, and the form is the standard symplectic one up to sign
    w = word("a b A B c d C D")
    assert w.vertex_count() == 1
    S = intersection_form(w).matrix
    J = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
    assert S in (J, [[-a for a in row] for row in J])
    assert word("a b A B").vertex_count() == 1


def test_bad_words():
    with pytest.raises(WordShapeViolation):
        rule_matrix(word("a b A"))
    with pytest.raises(WordShapeViolation):
        intersection_form(word("a b A B c C"))


def test_free_and_cyclic_reduction():
    w = word("a b B c A C").free_reduce()
    assert [a.sign for a in w.letters] == [1, 1, -1, -1]
    assert word("b a B c A B").cyclic_reduce().letters == word("B c").letters


def test_genus4_properties():
    rep = intersection_report(GENUS4)
    assert rep.genus == 4
    assert len(rep.form.basis) == 8
    assert rep.form.is_skew() and rep.form.det() == 1
    assert rep.deck_order_divides_n() and rep.symplectic()
    M, S = rep.deck, rep.form.matrix
    assert matmul(matmul(transpose(M), S), M) == S
    assert rep.reduced.vertex_count() == 1


def test_genus4_published_comparison():
    cmp = genus4_comparison()
    pub = published_genus4_word()
    # V - E + F = 3 - 8 + 1: the displayed word is a genus-3 surface, not genus 4
    assert pub.vertex_count() == 3
    assert cmp["published_word_rule_det"] == 0
    assert cmp["published_rule_vs_table"] == []
    assert len(cmp["form_vs_table"]) == 16
    assert len(published_genus4_entries()) == 28


def test_compare_table_sign_invariance():
    rep = intersection_report(GENUS4)
    neg = [[-a for a in row] for row in rep.form.matrix]
    assert compare_table(rep.form.basis, neg) == compare_table(rep.form.basis, rep.form.matrix)


def test_rule_matrix_transforms_dually():
    rep = intersection_report(GENUS4)
    assert rep.rule_invariant()


def test_precondition():
    with pytest.raises(PreconditionTwoFull):
        intersection_report(BranchData(4, (1, 1, 2)))


@given(st.integers(0, 10**6))
def test_random_two_full(seed):
    b = random_two_full(random.Random(seed), 12, 4)
    assert two_full_properties(b) == []
    rep = intersection_report(b)
    assert rep.rule_invariant()
    assert rep.reduced.vertex_count() == 1
    assert det(rep.form.rule) == 1


def test_eliminate_without_check_keeps_word():
    pres = rs_generators(GENUS4)
    w = eliminate(build_relator(GENUS4), pres, check=False)
    assert w.has_surface_shape(4)
    assert deck_action(GENUS4) == intersection_report(GENUS4).deck
