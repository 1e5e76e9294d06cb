import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import seeds
from cqg.frt import (
    GroupAlgebra,
    Palette,
    coproduct,
    counit,
    expand_rtt,
    expand_rtt_index_loop,
    paper_r_fit,
    relation_set,
    standard_glq2_relations,
)
from cqg.ncpoly import Generator, NCPoly, Tensor, gen
from cqg.scalar import ONE, Q, ZERO, Exponent, q_pow

LAM, MU = Exponent.colour("lambda"), Exponent.colour("mu")
PALETTES = {
    "two": Palette.symbolic(),
    "mono": Palette.symbolic().monochromatic(),
    "colourless": Palette.symbolic().colourless(),
    "three": Palette.symbolic(("lambda", "mu", "nu")),
}


@pytest.mark.parametrize("name", sorted(PALETTES))
def test_expand_rtt_matches_index_loop(name):
    pal = PALETTES[name]
    for x, y in pal.pairs():
        fast = {e for e in expand_rtt(x, y, pal, dedupe=False) if e}
        slow = {e for e in expand_rtt_index_loop(x, y, pal) if e}
        assert fast == slow


def test_colourless_rtt_gives_standard_relations(classical):
    got = relation_set(expand_rtt("", "", Palette.classical()), classical.order)
    assert got == relation_set(standard_glq2_relations(), classical.order)
    assert len(got) == 6


def test_same_colour_block_exchange(two_colour):
    # a_l b_l = q^(1+2l) b_l a_l, read off the diagonal of R(l, l)
    a, b = gen("a", "lambda"), gen("b", "lambda")
    assert two_colour.nf(b * a) == two_colour.nf(a * b) * q_pow(Exponent(1) + LAM.scale(2)).invert()


def test_relation_count_and_palette_pairs():
    assert len(Palette.symbolic().pairs()) == 3
    assert len(PALETTES["three"].pairs()) == 6
    assert len(GroupAlgebra(PALETTES["three"]).rewrite_system.rules) == 66


def test_coproduct_and_counit_on_generators():
    a, b, c = gen("a", "x"), gen("b", "x"), gen("c", "x")
    assert coproduct(a) == Tensor.pure(a, a) + Tensor.pure(b, c)
    assert counit(a * gen("d", "x")) == ONE
    assert counit(b) == ZERO


@pytest.mark.parametrize("name", ["two", "mono", "colourless"])
def test_group_hopf_axioms(name):
    report = GroupAlgebra(PALETTES[name]).check_group_hopf()
    assert report.passed(), report.checks


def test_classical_hopf_axioms(classical):
    assert classical.check_group_hopf().passed()


def test_antipode_sign_flip_is_caught(two_colour):
    report = two_colour.check_group_hopf(sign_flip=True)
    assert not report.passed("antipode")
    assert report.passed("counit")


def test_determinant_coefficient(two_colour):
    assert two_colour.det_coefficients["lambda"] == q_pow(Exponent(1) - LAM.scale(2))
    assert two_colour.det_coefficients["mu"] == q_pow(Exponent(1) - MU.scale(2))
    # colourless: the familiar a d - q c b
    assert GroupAlgebra(Palette.classical()).det_coefficients[""] == Q


def test_determinant_is_group_like(two_colour):
    for lab in ("lambda", "mu"):
        assert two_colour.is_group_like(two_colour.quantum_det(lab).poly).is_zero()


def test_printed_r_form_of_determinant():
    # no q-power r reproduces the group-like coefficient for generic colours,
    # and the r = q reading is not group-like
    alg = GroupAlgebra(Palette.symbolic())
    assert paper_r_fit(alg.det_coefficients["lambda"], LAM) is None
    assert paper_r_fit(Q, Exponent(0)) == q_pow(-1)
    literal = alg.paper_det("lambda", Q)
    assert len(alg.is_group_like(literal).terms) == 3


def test_antipode_coefficients_are_reciprocal(two_colour):
    # matches the printed shape S(T) = D^-1 [[d, -x b], [-x^-1 c, a]]
    beta, gamma = two_colour.antipode_coefficients["lambda"]
    assert beta * gamma == ONE
    assert gamma == q_pow(Exponent(1) - LAM.scale(2))


def test_determinant_is_not_central(two_colour):
    lam_b = two_colour.det_exchange("lambda", Generator("b", "mu"))
    assert lam_b == LAM.scale(4)
    assert two_colour.det_exchange("lambda", Generator("c", "mu")) == -LAM.scale(4)
    assert two_colour.det_exchange("lambda", Generator("a", "mu")).is_zero()
    D = two_colour.quantum_det("lambda").poly
    g = gen("b", "mu")
    assert not two_colour.nf(D * g - g * D).is_zero()


def test_determinant_central_when_colourless():
    alg = GroupAlgebra(PALETTES["colourless"])
    for g in alg.generators():
        assert alg.det_exchange("lambda", g).is_zero()


def test_localisation(two_colour):
    assert two_colour.localized.rules
    from cqg.rewriting import confluence_probe
    assert confluence_probe(two_colour.localized, 4) == []
    Det, Dinv = (NCPoly.word((Generator(x, "lambda"),)) for x in ("Det", "Dinv"))
    assert two_colour.localized_nf(Det * Dinv) == NCPoly.one()
    assert two_colour.localized_nf(two_colour.quantum_det("lambda").poly) == Det


def test_numeric_q_pipeline_matches_symbolic_coefficient():
    pal = Palette.of({"lambda": Fraction(1, 2), "mu": Fraction(-3, 2)})
    alg = GroupAlgebra(pal, q_value=Fraction(9, 4))
    assert alg.check_group_hopf().passed()
    # q^(1 - 2 mu) at mu = -3/2 is q^4
    assert alg.det_coefficients["mu"].specialize(Fraction(9, 4), {}) == Fraction(9, 4) ** 4
    assert alg.confluence(4) == []


def test_swap_symmetry_as_computed(two_colour):
    swap = {"lambda": "mu", "mu": "lambda"}
    swapped = GroupAlgebra(Palette(("lambda", "mu"), (MU, LAM)))
    mine = relation_set(two_colour.relations, two_colour.order)
    theirs = relation_set([r.relabel(swap) for r in swapped.relations], two_colour.order)
    assert len(mine) == 28
    assert len(mine & theirs) == 16


@given(st.integers(0, 7), st.integers(0, 7), seeds)
def test_coproduct_respects_relations_on_products(i, j, seed):
    alg = GroupAlgebra(Palette.symbolic())
    rng = random.Random(seed)
    r = alg.relations[rng.randrange(len(alg.relations))]
    x = NCPoly.word((alg.generators()[i],))
    y = NCPoly.word((alg.generators()[j],))
    assert alg.nf_tensor(coproduct(x * r * y)).is_zero()
