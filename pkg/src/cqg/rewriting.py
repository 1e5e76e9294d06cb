"""Oriented rewriting in the free algebra: monomial orders, normal forms, overlap probes."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .ncpoly import Generator, NCPoly, Tensor, _add_into, word_str
from .scalar import NotAUnit, Scalar

__all__ = [
    "MonomialOrder",
    "RewriteSystem",
    "NonMonomialLeadingCoefficient",
    "NonTermination",
    "Overlap",
    "build_rewrite_system",
    "interreduce",
    "normal_form",
    "confluence_probe",
]

LETTER_RANK = {"Dinv": -2, "Det": -1, "a": 0, "b": 1, "c": 2, "d": 3}
DEFAULT_STEP_BUDGET = 100_000


class NonMonomialLeadingCoefficient(ArithmeticError):
    def __init__(self, relation: NCPoly, msg: str):
        super().__init__(msg)
        self.relation = relation


class NonTermination(RuntimeError):
    def __init__(self, msg: str, trace: list[str]):
        super().__init__(msg)
        self.trace = trace


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order on words.

    ``major="colour"`` ranks generators by palette position first and letter
    second; ``major="letter"`` the other way round.  ``letters`` lists the
    ordinary letters from smallest to largest.  The localisation letters
    ``Dinv`` and ``Det`` sort below every ordinary generator.
    """

    palette: tuple[str, ...]
    major: str = "colour"
    letters: tuple[str, ...] = ("a", "b", "c", "d")

    def gen_key(self, g: Generator) -> tuple:
        letter = LETTER_RANK[g.letter] if g.letter in ("Det", "Dinv") else self.letters.index(g.letter)
        colour = self.palette.index(g.colour) if g.colour in self.palette else len(self.palette)
        if letter < 0:
            return (letter, colour)
        return (colour, letter) if self.major == "colour" else (letter, colour)

    def word_key(self, word: Sequence[Generator]) -> tuple:
        return (len(word), tuple(self.gen_key(g) for g in word))

    def leading(self, p: NCPoly) -> tuple:
        return max(p.terms, key=self.word_key)

    def describe(self) -> str:
        return f"deglex/{self.major}-major/{'<'.join(self.letters)}/{','.join(self.palette)}"


@dataclass
class RewriteSystem:
    rules: dict[tuple, NCPoly]
    order: MonomialOrder
    step_budget: int = DEFAULT_STEP_BUDGET
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._lengths = sorted({len(k) for k in self.rules})

    def with_rules(self, extra: dict[tuple, NCPoly]) -> "RewriteSystem":
        rules = dict(self.rules)
        rules.update(extra)
        return RewriteSystem(rules, self.order, self.step_budget)

    def find_redex(self, word: tuple, rightmost: bool = False):
        n = len(word)
        positions = range(n - 1, -1, -1) if rightmost else range(n)
        for i in positions:
            for L in self._lengths:
                if i + L <= n:
                    sub = word[i:i + L]
                    if sub in self.rules:
                        return i, L
        return None

    def rewrite_once(self, word: tuple, at: tuple[int, int]) -> NCPoly:
        i, L = at
        left, right = word[:i], word[i + L:]
        out: dict = {}
        for w, c in self.rules[word[i:i + L]].terms.items():
            _add_into(out, left + w + right, c)
        return NCPoly._raw(out)

    def is_normal(self, word: tuple) -> bool:
        return self.find_redex(word) is None

    def normal_form_word(self, word: tuple, budget: list[int] | None = None) -> NCPoly:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        if budget is None:
            budget = [self.step_budget]
        at = self.find_redex(word)
        if at is None:
            res = NCPoly._raw({word: Scalar.const(1)})
        else:
            budget[0] -= 1
            if budget[0] < 0:
                raise NonTermination(f"step budget exhausted at {word_str(word)}", [word_str(word)])
            out: dict = {}
            for w, c in self.rewrite_once(word, at).terms.items():
                for w2, c2 in self.normal_form_word(w, budget).terms.items():
                    _add_into(out, w2, c * c2)
            res = NCPoly._raw(out)
        self._cache[word] = res
        return res

    def normal_form(self, p: NCPoly, strategy: str = "leftmost") -> NCPoly:
        if strategy == "rightmost":
            return _normal_form_rightmost(self, p)
        out: dict = {}
        budget = [self.step_budget]
        for w, c in p.terms.items():
            for w2, c2 in self.normal_form_word(w, budget).terms.items():
                _add_into(out, w2, c * c2)
        return NCPoly._raw(out)

    def normal_form_tensor(self, t: Tensor) -> Tensor:
        return t.map_legs(lambda w: self.normal_form_word(w))

    def dump(self) -> list[str]:
        key = self.order.word_key
        return [f"{word_str(lhs)} -> {rhs.to_str(key)}"
                for lhs, rhs in sorted(self.rules.items(), key=lambda kv: key(kv[0]))]


def _normal_form_rightmost(rs: RewriteSystem, p: NCPoly) -> NCPoly:
    """Uncached rightmost-first reduction, an independent strategy for cross-checks."""
    pending = dict(p.terms)
    done: dict = {}
    steps = 0
    trace: list[str] = []
    while pending:
        w, c = pending.popitem()
        at = rs.find_redex(w, rightmost=True)
        if at is None:
            _add_into(done, w, c)
            continue
        steps += 1
        if steps > rs.step_budget:
            raise NonTermination("step budget exhausted", trace[-20:])
        trace.append(word_str(w))
        for w2, c2 in rs.rewrite_once(w, at).terms.items():
            _add_into(pending, w2, c * c2)
    return NCPoly._raw(done)


def normal_form(p: NCPoly, rs: RewriteSystem, strategy: str = "leftmost") -> NCPoly:
    return rs.normal_form(p, strategy)


def _orient(rel: NCPoly, order: MonomialOrder) -> tuple[tuple, NCPoly]:
    lead = order.leading(rel)
    c = rel.terms[lead]
    try:
        inv = c.invert()
    except NotAUnit:
        raise NonMonomialLeadingCoefficient(rel, f"leading coefficient {c} of {word_str(lead)} is not a monomial")
    rhs = NCPoly._raw({w: -(x * inv) for w, x in rel.terms.items() if w != lead})
    return lead, rhs


def interreduce(relations: Iterable[NCPoly], order: MonomialOrder) -> dict[tuple, NCPoly]:
    """Linear interreduction of relations into rules with distinct, irreducible leading words.

    Pivots are taken largest-leading-word first among relations whose leading
    coefficient is a unit; the rest wait until other rules have reduced them.
    """
    rules: dict[tuple, NCPoly] = {}
    pending = [r for r in relations if r]
    while pending:
        rs = RewriteSystem(rules, order)
        pending = [nf for nf in (rs.normal_form(r) for r in pending) if nf]
        if not pending:
            break
        pending.sort(key=lambda r: order.word_key(order.leading(r)), reverse=True)
        pick = next((i for i, r in enumerate(pending) if r.terms[order.leading(r)].is_monomial()), None)
        if pick is None:
            _orient(pending[0], order)  # raises with the offending relation
        lead, rhs = _orient(pending.pop(pick), order)
        new_rules = {lead: rhs}
        single = RewriteSystem({lead: rhs}, order)
        for lhs, r in rules.items():
            if single.find_redex(lhs) is not None:
                pending.append(NCPoly.word(lhs) - r)
            else:
                new_rules[lhs] = r
        rules = new_rules
    # right-hand sides in normal form
    changed = True
    while changed:
        changed = False
        for lhs in list(rules):
            others = RewriteSystem({k: v for k, v in rules.items() if k != lhs}, order)
            nf = others.normal_form(rules[lhs])
            if nf != rules[lhs]:
                rules[lhs] = nf
                changed = True
    return rules


def build_rewrite_system(relations: Iterable[NCPoly], order: MonomialOrder,
                         step_budget: int = DEFAULT_STEP_BUDGET) -> RewriteSystem:
    rules = interreduce(relations, order)
    for lhs, rhs in rules.items():
        if any(order.word_key(w) >= order.word_key(lhs) for w in rhs.terms):
            raise ValueError(f"rule {word_str(lhs)} is not decreasing")
    return RewriteSystem(rules, order, step_budget)


@dataclass(frozen=True)
class Overlap:
    word: tuple
    left_rule: tuple
    right_rule: tuple
    difference: NCPoly

    def __str__(self):
        return (f"{word_str(self.word)} [{word_str(self.left_rule)} | {word_str(self.right_rule)}]: "
                f"{self.difference}")


def _overlaps(rules: Sequence[tuple], max_len: int):
    for u in rules:
        for v in rules:
            # proper suffix of u equal to proper prefix of v
            for k in range(1, min(len(u), len(v))):
                if u[-k:] == v[:k]:
                    w = u + v[k:]
                    if len(w) <= max_len:
                        yield w, u, v, (0, len(u)), (len(u) - k, len(v))
            # v strictly inside u
            if len(v) < len(u):
                for i in range(len(u) - len(v) + 1):
                    if u[i:i + len(v)] == v:
                        yield u, u, v, (0, len(u)), (i, len(v))


def confluence_probe(rs: RewriteSystem, max_len: int = 3) -> list[Overlap]:
    """Return the overlap ambiguities whose two resolutions do not join."""
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    bad = []
    for w, u, v, at_u, at_v in _overlaps(list(rs.rules), max_len):
        left = rs.normal_form(rs.rewrite_once(w, at_u))
        right = rs.normal_form(rs.rewrite_once(w, at_v))
        diff = left - right
        if diff:
            bad.append(Overlap(w, u, v, diff))
    return bad


def completion_candidates(rs: RewriteSystem, overlaps: Sequence[Overlap]) -> dict[tuple, NCPoly]:
    """Oriented rules that would resolve the given overlaps (for manual review)."""
    return interreduce([o.difference for o in overlaps], rs.order)
