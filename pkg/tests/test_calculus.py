import pytest
from hypothesis import given, strategies as st

from cqg.calculus import FORMS, Calculus, GammaElement, printed_tables
from cqg.frt import LETTERS, Palette
from cqg.linalg import identity, matmul
from cqg.ncpoly import Generator, NCPoly
from cqg.scalar import Exponent, q_pow

PAL = Palette.symbolic()
LAM, MU = Exponent.colour("lambda"), Exponent.colour("mu")


@pytest.fixture(scope="module")
def calc():
    return Calculus(PAL)


def test_printed_tables_are_complete():
    t = printed_tables(LAM, MU)
    assert {len(t[k]) for k in ("omega", "chi", "convolution")} == {16}
    assert len(t["d"]) == 4


def test_tables_differ_from_print_only_at_chi_plus_c(calc):
    cmp = calc.compare_printed()
    assert [(m[0], m[1]) for m in cmp.mismatches] == [("chi", ("+", "c"))]
    assert cmp.passed_table("omega") and cmp.passed_table("convolution") and cmp.passed_table("d")
    # the generated value carries q^(lambda + mu), the printed one q^-(lambda + mu)
    got = calc.chi_eval(Generator("c", "lambda"))["+"]
    printed = printed_tables(LAM, MU)["chi"][("+", "c")]
    assert got == printed * q_pow((LAM + MU).scale(2))


def test_colourless_tables_match_print():
    assert Calculus(PAL.colourless()).compare_printed().passed


@pytest.mark.parametrize("letter", LETTERS)
def test_chi_routes_agree(calc, letter):
    g = Generator(letter, "lambda")
    assert calc.chi_eval(g) == calc.chi_direct(g)


def test_f_is_a_representation_on_words(calc):
    a, d = Generator("a", "lambda"), Generator("d", "mu")
    assert calc.f_on_word(()) == identity(4)
    assert calc.f_on_word((a, d)) == matmul(calc.f_on_letter("a"), calc.f_on_letter("d"))


def test_d_of_constant_vanishes(calc):
    assert not calc.d(NCPoly.one())


def test_leibniz_failures(calc):
    sweep = calc.leibniz_sweep()
    assert len(sweep) == 64
    assert sum(bool(v) for v in sweep.values()) == 26


def test_leibniz_unreduced_holds(calc):
    gens = calc.algebra.generators()
    for x in gens[:4]:
        for y in gens:
            assert not calc.leibniz_unreduced(x, y)


@pytest.mark.parametrize("palette", [Palette.symbolic().colourless(), Palette.symbolic().monochromatic()])
def test_leibniz_in_limits(palette):
    assert not any(Calculus(palette).leibniz_sweep().values())


def test_functionals_vanish_on_some_relations_only(calc):
    res = calc.functional_relation_residuals()
    zero = [k for k, m in res.items() if all(not m[i, j] for i in range(4) for j in range(4))]
    assert (len(zero), len(res)) == (18, 40)


def test_corrupted_omega_is_detected():
    bad = Calculus(PAL, corrupt=("1", "a", "1"))
    assert not bad.compare_printed().passed_table("omega")


@given(st.sampled_from(sorted(FORMS)), st.sampled_from(LETTERS), st.sampled_from(LETTERS))
def test_gamma_module_is_additive(form, x, y):
    G = GammaElement({form: NCPoly.word((Generator(x, "lambda"),))})
    H = GammaElement({form: NCPoly.word((Generator(y, "mu"),))})
    assert (G + H) - H == G
    assert G - G == GammaElement.zero()
