import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import seeds
from cqg.frt import Palette
from cqg.oracle import ExactPoint, fourth_root, numeric_r, numeric_verdicts, random_points
from cqg.rmatrix import build_r
from cqg.scalar import Exponent, q_pow


@given(st.fractions(min_value=Fraction(1, 50), max_value=50))
def test_fourth_root_inverts_fourth_power(t):
    assert fourth_root(t ** 4) == t


def test_fourth_root_rejects_non_powers():
    assert fourth_root(Fraction(2)) is None
    assert fourth_root(Fraction(-16)) is None
    assert fourth_root(Fraction(81, 16)) == Fraction(3, 2)


@given(seeds)
def test_random_points_are_generic(seed):
    for pt in random_points(seed, 3):
        vals = list(pt.colours.values())
        assert pt.q != 1 and all(v != 0 for v in vals)
        assert len(set(vals)) == len(vals)
        assert all(x + y != 0 for x, y in itertools.combinations(vals, 2))
        assert all((2 * v).denominator == 1 for v in vals)


def test_explicit_specialisations_take_precedence():
    pt, = random_points(0, 1, ("lambda", "mu"), [Fraction(16)], [{"lambda": "1/2"}])
    assert pt.q == 16 and pt.t == 2
    assert pt.colours["lambda"] == Fraction(1, 2)
    with pytest.raises(ValueError):
        random_points(0, 1, ("lambda",), [Fraction(3)])


def test_exact_powers():
    pt = ExactPoint(Fraction(3, 2), {"lambda": Fraction(1, 2)})
    assert pt.qpow(Fraction(1, 4)) == Fraction(3, 2)
    assert pt.value(q_pow(Exponent.colour("lambda"))) == Fraction(9, 4)
    with pytest.raises(ValueError):
        pt.qpow(Fraction(1, 8))


@given(seeds)
def test_numeric_r_matches_symbolic_r(seed):
    pt, = random_points(seed, 1, ("lambda", "mu"))
    lam, mu = Exponent.colour("lambda"), Exponent.colour("mu")
    R = build_r(lam, mu).matrix
    N = numeric_r(pt, pt.colours["lambda"], pt.colours["mu"])
    assert [[pt.value(R[i, j]) for j in range(4)] for i in range(4)] == N


def test_numeric_verdicts_reproduce_known_reds():
    pt, = random_points(1, 1, ("lambda", "mu", "nu"))
    v = numeric_verdicts(pt, Palette.symbolic())
    assert v["ybe.cqybe"] and v["hopf.antipode"] and v["rtt.confluence"]
    assert not v["duality.pairing_well_defined"]
    assert not v["calculus.chi_table"]
    assert not v["calculus.leibniz"]
    assert v["hopf.det_centrality"]
