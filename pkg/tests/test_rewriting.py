import random

import pytest
from hypothesis import given, strategies as st

from conftest import scalar_from, seeds
from cqg.frt import GroupAlgebra, Palette, standard_glq2_relations
from cqg.ncpoly import Generator, NCPoly, Tensor, gen
from cqg.rewriting import (
    MonomialOrder,
    NonTermination,
    RewriteSystem,
    build_rewrite_system,
    completion_candidates,
    confluence_probe,
    interreduce,
)
from cqg.scalar import ONE, Q

ALG = GroupAlgebra(Palette.symbolic())
GENS = ALG.generators()
words = st.lists(st.sampled_from(GENS), min_size=0, max_size=4).map(tuple)


def random_poly(seed, max_len=3):
    rng = random.Random(seed)
    p = NCPoly.zero()
    for _ in range(rng.randint(1, 3)):
        w = tuple(rng.choice(GENS) for _ in range(rng.randint(0, max_len)))
        p = p + NCPoly.word(w, scalar_from(rng.randint(0, 10**6), max_terms=1) or ONE)
    return p


def test_ncpoly_basics():
    a, b = gen("a", "lambda"), gen("b", "lambda")
    assert a * b != b * a
    assert (a * b - a * b).is_zero()
    assert (a * b).reverse() == b * a
    assert (a * b).relabel({"lambda": "mu"}) == gen("a", "mu") * gen("b", "mu")
    assert (a * b + Q * b).max_degree() == 2
    assert str(NCPoly.zero()) == "0"


@given(seeds, seeds)
def test_reverse_is_an_antihomomorphism(s1, s2):
    p, q = random_poly(s1), random_poly(s2)
    assert (p * q).reverse() == q.reverse() * p.reverse()


def test_tensor_products_and_contraction():
    a, d = gen("a", ""), gen("d", "")
    t = Tensor.pure(a, d) + Tensor.pure(d, a)
    assert (t * Tensor.one(2)) == t
    assert t.contract([lambda w: NCPoly.word(w), lambda w: NCPoly.word(w)]) == a * d + d * a


def test_order_describes_itself():
    order = MonomialOrder(("lambda", "mu"), "letter")
    assert order.describe() == "deglex/letter-major/a<b<c<d/lambda,mu"
    assert order.leading(gen("a", "mu") * gen("b", "lambda") + gen("b", "lambda") * gen("a", "mu")) == (
        Generator("b", "lambda"), Generator("a", "mu"))


def test_interreduced_rules_are_decreasing():
    order = ALG.order
    for lhs, rhs in ALG.rewrite_system.rules.items():
        assert all(order.word_key(w) < order.word_key(lhs) for w in rhs.terms)
        assert ALG.rewrite_system.normal_form(rhs) == rhs


def test_rule_counts():
    assert len(ALG.rewrite_system.rules) == 28
    assert len(GroupAlgebra(Palette.classical()).rewrite_system.rules) == 6


def test_confluence_probe_rejects_short_probe():
    with pytest.raises(ValueError):
        confluence_probe(ALG.rewrite_system, 2)


def test_colourless_completion_is_empty():
    alg = GroupAlgebra(Palette.symbolic().colourless())
    overlaps = alg.confluence(4)
    assert overlaps == []
    assert completion_candidates(alg.rewrite_system, overlaps) == {}


def test_non_confluent_system_is_detected():
    # x y -> y x together with y z -> x, z y -> y: overlap x y z resolves two ways
    x, y, z = (Generator(l, "") for l in "abc")
    order = MonomialOrder(("",), "letter")
    rs = RewriteSystem({(y, x): NCPoly.word((x, y)), (z, y): NCPoly.word((y,))}, order)
    bad = confluence_probe(rs, 3)
    assert bad and all(o.difference for o in bad)
    assert completion_candidates(rs, bad)


def test_step_budget_raises():
    x = Generator("a", "")
    order = MonomialOrder(("",), "letter")
    rs = RewriteSystem({(x,): NCPoly.word((x,)) + NCPoly.one()}, order, step_budget=50)
    with pytest.raises(NonTermination):
        rs.normal_form(NCPoly.word((x,)))


@given(seeds, st.integers(0, 39), words, words)
def test_ideal_stability(seed, k, u, v):
    r = ALG.relations[k]
    lhs = NCPoly.word(u) * r * NCPoly.word(v)
    assert ALG.nf(lhs).is_zero()


@given(seeds)
def test_normal_form_strategy_independent_and_idempotent(seed):
    p = random_poly(seed, 4)
    rs = ALG.rewrite_system
    left = rs.normal_form(p)
    assert left == rs.normal_form(p, "rightmost")
    assert rs.normal_form(left) == left


@given(seeds, seeds)
def test_normal_form_is_linear(s1, s2):
    p, q = random_poly(s1), random_poly(s2)
    assert ALG.nf(p + q) == ALG.nf(p) + ALG.nf(q)


def test_colour_major_order_also_confluent():
    alg = GroupAlgebra(Palette.symbolic(), major="colour")
    assert alg.confluence(4) == []


def test_interreduce_reproduces_standard_relations():
    rules = interreduce(standard_glq2_relations(), MonomialOrder(("",), "letter"))
    assert len(rules) == 6
    rs = build_rewrite_system(standard_glq2_relations(), MonomialOrder(("",), "letter"))
    a, d, b, c = (gen(x, "") for x in "adbc")
    assert rs.normal_form(d * a) == a * d - (Q - Q.invert()) * (b * c)
