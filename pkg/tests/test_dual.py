import random

import pytest
from hypothesis import given, strategies as st

from conftest import seeds
from cqg.dual import (
    CartanExp,
    DualExpr,
    check_antipode_L,
    check_dual_hopf,
    check_dual_relations_in_rho,
    check_L_pairing,
    check_pairing_well_defined,
    dual_normal_form,
    dual_words,
    eq30_sides,
    pair,
    pair_split,
    rho,
    rho_n,
    rll_residual,
)
from cqg.frt import GroupAlgebra, Palette
from cqg.linalg import matmul
from cqg.ncpoly import gen
from cqg.scalar import ONE, ZERO, Q, parse_scalar, q_pow

PAL = Palette.symbolic()
UNITS = {"cp": parse_scalar("1"), "cm": parse_scalar("1")}
ALPHABET = [e for _, e in dual_words(PAL, 1)]


def random_dual(seed, length=3):
    rng = random.Random(seed)
    e = DualExpr.one()
    for _ in range(rng.randint(0, length)):
        e = e * rng.choice(ALPHABET) + DualExpr.scalar(rng.choice([ONE, Q, q_pow(-1)]))
    return e


def _zero(m):
    return all(not m[i, j] for i in range(m.rows) for j in range(m.cols))


@given(seeds, seeds)
def test_rho_is_multiplicative(s1, s2):
    x, y = random_dual(s1), random_dual(s2)
    assert rho(x * y) == matmul(rho(x), rho(y))


@given(seeds)
def test_dual_normal_form_idempotent_and_rho_invariant(seed):
    x = random_dual(seed)
    nf = dual_normal_form(x)
    assert dual_normal_form(nf) == nf
    assert rho(nf) == rho(x)


@given(seeds, st.integers(0, 7), st.integers(0, 7))
def test_pairing_routes_agree(seed, i, j):
    u = random_dual(seed, 2)
    gens = GroupAlgebra(PAL).generators()
    w = (gens[i], gens[j])
    assert pair(u, w) == pair_split(u, w)


def test_cartan_exponents_form_a_group():
    K = CartanExp.H("lambda", 2) * CartanExp.Hp("mu", -1)
    assert (K * K.inverse()).is_identity()


def test_basic_pairings():
    B = DualExpr.gen("B", "lambda")
    a, b = gen("a", "mu"), gen("b", "lambda")
    assert pair(B, a * b) == ONE
    assert pair(B, b * a) == Q
    assert pair(DualExpr.one(), a * a) == ONE
    assert pair(DualExpr.one(), b) == ZERO


def test_L_pairing_reproduces_r_plus_and_r_minus():
    tab = check_L_pairing(PAL)
    for v in tab.residuals.values():
        assert _zero(v.map(lambda s: s.unit_substitute(UNITS)))


def test_antipode_of_L_plus():
    assert check_antipode_L(PAL).passed


def test_dual_hopf_structure():
    assert check_dual_hopf(PAL).passed


def test_commutators_and_exchange_hold_in_rho():
    comm, exch, _ = check_dual_relations_in_rho(PAL)
    assert comm.passed and exch.passed


def test_cb_relation_depends_on_colours():
    _, _, cb = check_dual_relations_in_rho(PAL)
    assert cb.residual_terms() == 8
    _, _, mono = check_dual_relations_in_rho(PAL.monochromatic())
    assert mono.passed
    lhs, rhs = eq30_sides(PAL.monochromatic())
    assert _zero(rho(lhs) - rho(rhs))


@pytest.mark.parametrize("kind", ["++", "--", "+-"])
def test_rll_residuals(kind):
    assert not _zero(rll_residual(kind, ("lambda", "mu"), PAL))
    assert _zero(rll_residual(kind, ("lambda", "lambda"), PAL.monochromatic()))


def test_pairing_is_not_well_defined_on_relations():
    rep = check_pairing_well_defined(GroupAlgebra(PAL))
    assert rep.checked == 24040
    assert len(rep.failures) == 1976
    classical = check_pairing_well_defined(GroupAlgebra(Palette.classical()))
    assert (classical.checked, len(classical.failures)) == (1884, 164)
