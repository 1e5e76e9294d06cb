"""Exact numeric re-verification of the symbolic checks.

Each verdict here is recomputed at a rational point ``(q, colours, units)``:
R-matrices are rebuilt from their defining formula with plain ``Fraction``
lists, the group algebra is rewritten with rational coefficients, and dual
identities are multiplied out as numeric 2x2 matrices.  Comparing these
verdicts with the symbolic ones is the cross-check; a symbolic failure is
expected to fail numerically too.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .calculus import Calculus, printed_tables
from .dual import (
    DUAL_LETTERS,
    DualExpr,
    assemble_rho,
    build_L,
    check_pairing_well_defined,
    dual_antipode,
    dual_coproduct,
    dual_counit,
    eq30_sides,
    rho,
    rll_residual,
)
from .frt import GroupAlgebra, Palette, relation_set, standard_glq2_relations
from .ncpoly import Generator, NCPoly
from .scalar import Exponent, Scalar

__all__ = ["ExactPoint", "random_points", "fourth_root", "palette_symbols", "numeric_r", "numeric_verdicts"]

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class ExactPoint:
    """``q = t**4`` so every exponent with denominator dividing 4 evaluates exactly."""

    t: Fraction
    colours: Mapping[str, Fraction]
    units: Mapping[str, Fraction] = field(default_factory=lambda: {"cp": Fraction(1), "cm": Fraction(1)})

    @property
    def q(self) -> Fraction:
        return self.t ** 4

    def qpow(self, e: Fraction) -> Fraction:
        k = 4 * Fraction(e)
        if k.denominator != 1:
            raise ValueError(f"exponent {e} is not exact at q = t^4")
        return self.t ** int(k)

    def value(self, x: Scalar) -> Fraction:
        return x.specialize(self.q, self.colours, self.units)

    def colour_value(self, e: Exponent) -> Fraction:
        return e.evaluate(self.colours)

    def describe(self) -> str:
        cols = ", ".join(f"{k}={v}" for k, v in self.colours.items())
        return f"q={self.q}, {cols}"


def random_points(seed: int, n: int = 3, names: Sequence[str] = ("lambda", "mu", "nu"),
                  q_values: Sequence[Fraction] = (), colour_values: Sequence[Mapping] = ()) -> list[ExactPoint]:
    """``n`` points with generic half-integer colours and ``q`` a fourth power.

    Generic means nonzero, distinct and with no two colours summing to zero,
    so no accidental cancellation can hide a colour-dependent discrepancy.

    Explicit ``q_values`` (fourth powers) and ``colour_values`` take precedence
    over the seeded draws, position by position.
    """
    rng = random.Random(seed)
    halves = [Fraction(k, 2) for k in range(-4, 5) if k]
    out = []
    for i in range(n):
        if i < len(q_values):
            t = fourth_root(Fraction(q_values[i]))
            if t is None:
                raise ValueError(f"q = {q_values[i]} is not the fourth power of a rational")
        else:
            t = Fraction(rng.randint(2, 7), rng.randint(1, 5))
            while t == 1:
                t = Fraction(rng.randint(2, 7), rng.randint(1, 5))
        picks = rng.sample(halves, len(names))
        while any(x + y == 0 for x, y in itertools.combinations(picks, 2)):
            picks = rng.sample(halves, len(names))
        colours = dict(zip(names, picks))
        if i < len(colour_values):
            colours.update({k: Fraction(v) for k, v in colour_values[i].items()})
        units = {"cp": Fraction(rng.randint(1, 5), rng.randint(1, 5)),
                 "cm": Fraction(rng.randint(1, 5), rng.randint(1, 5))}
        out.append(ExactPoint(t, colours, units))
    return out


def palette_symbols(palette: Palette, extra: Sequence[str] = ("nu",)) -> tuple[str, ...]:
    """Colour symbols a point must assign for ``palette`` (plus the CQYBE spares)."""
    names = sorted({n for v in palette.values for n in v.colour_part})
    return tuple(names) + tuple(n for n in extra if n not in names)


def fourth_root(x: Fraction) -> Fraction | None:
    if x <= 0:
        return None

    def iroot(k: int) -> int | None:
        r = math.isqrt(math.isqrt(k))
        return r if r ** 4 == k else None

    n, d = iroot(x.numerator), iroot(x.denominator)
    return None if n is None or d is None else Fraction(n, d)


# ---------------------------------------------------------------- plain matrices

def _zeros(n: int, m: int | None = None) -> Matrix:
    return [[Fraction(0)] * (m or n) for _ in range(n)]


def _mm(A: Matrix, B: Matrix) -> Matrix:
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))]
            for i in range(len(A))]


def _sub(A: Matrix, B: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _is_zero(A: Matrix) -> bool:
    return all(x == 0 for row in A for x in row)


def _inverse(A: Matrix) -> Matrix:
    n = len(A)
    M = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def numeric_r(pt: ExactPoint, lam: Fraction, mu: Fraction) -> Matrix:
    """The coloured R-matrix at a point, straight from its defining formula."""
    R = _zeros(4)
    R[0][0] = pt.qpow(1 - (lam - mu))
    R[1][1] = pt.qpow(lam + mu)
    R[2][2] = pt.qpow(-(lam + mu))
    R[3][3] = pt.qpow(1 + (lam - mu))
    R[2][1] = pt.q - 1 / pt.q
    return R


def _embed(R: Matrix, slots: tuple[int, int]) -> Matrix:
    """``R`` acting on tensor factors ``slots`` of a three-fold product of 2-spaces."""
    i, j = slots
    k = 3 - i - j
    out = _zeros(8)
    for a in itertools.product(range(2), repeat=3):
        for b in itertools.product(range(2), repeat=3):
            if a[k] == b[k]:
                out[4 * a[0] + 2 * a[1] + a[2]][4 * b[0] + 2 * b[1] + b[2]] = R[2 * a[i] + a[j]][2 * b[i] + b[j]]
    return out


_P = [[Fraction(int((r // 2, r % 2) == (c % 2, c // 2))) for c in range(4)] for r in range(4)]


# ---------------------------------------------------------------- verdicts

def _ybe(pt: ExactPoint, palette: Palette) -> dict[str, bool]:
    l, m, n = (pt.colour_value(v) for v in _three_values(palette))
    r12 = _embed(numeric_r(pt, l, m), (0, 1))
    r13 = _embed(numeric_r(pt, l, n), (0, 2))
    r23 = _embed(numeric_r(pt, m, n), (1, 2))
    cqybe = _sub(_mm(_mm(r12, r13), r23), _mm(_mm(r23, r13), r12))

    def b(x, y, slots):
        return _embed(_mm(_P, numeric_r(pt, x, y)), slots)

    braided = _sub(_mm(_mm(b(l, m, (1, 2)), b(l, n, (0, 1))), b(m, n, (1, 2))),
                   _mm(_mm(b(m, n, (0, 1)), b(l, n, (1, 2))), b(l, m, (0, 1))))
    return {"ybe.cqybe": _is_zero(cqybe), "ybe.braided": _is_zero(braided)}


def _three_values(palette: Palette) -> tuple[Exponent, ...]:
    vals = list(palette.values)
    extra = iter(Exponent.colour(n) for n in ("nu", "kappa", "sigma"))
    while len(vals) < 3:
        vals.append(next(extra))
    return tuple(vals[:3])


def _numeric_palette(pt: ExactPoint, palette: Palette) -> Palette:
    return Palette(palette.labels, tuple(Exponent(pt.colour_value(v)) for v in palette.values))


def _group(pt: ExactPoint, palette: Palette, major: str) -> dict[str, bool]:
    alg = GroupAlgebra(_numeric_palette(pt, palette), major=major, q_value=pt.q)
    hopf = alg.check_group_hopf()
    out = {f"hopf.{k}": hopf.passed(k) for k in ("coassociativity", "counit", "coproduct_relations",
                                                 "antipode", "det_group_like")}
    lab0, lab1 = palette.labels[0], palette.labels[-1]
    D = alg.quantum_det(lab0).poly
    g = NCPoly.word((Generator("b", lab1),))
    noncentral = bool(alg.nf(D * g - g * D))
    out["hopf.det_centrality"] = noncentral == (pt.colour_value(palette.values[0]) != 0)
    out["rtt.confluence"] = not alg.confluence(4)
    classical = GroupAlgebra(Palette.classical(), q_value=pt.q)
    std = [r.map_coeffs(lambda s: Scalar.const(pt.value(s))) for r in standard_glq2_relations()]
    out["rtt.colourless_standard"] = (relation_set(classical.relations, classical.order)
                                      == relation_set(std, classical.order))
    return out


def _num_rho(pt: ExactPoint, e) -> Matrix:
    m = rho(e)
    return [[pt.value(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def _duality(pt: ExactPoint, palette: Palette) -> dict[str, bool]:
    out = {}
    lam, mu = (pt.colour_value(v) for v in (palette.values[0], palette.values[-1]))
    R = numeric_r(pt, lam, mu)
    cp, cm = pt.units["cp"], pt.units["cm"]
    target = {"+": [[cp * x for x in row] for row in _mm(_mm(_P, R), _P)],
              "-": [[cm * x for x in row] for row in _inverse(R)]}
    ok = True
    for sign in "+-":
        for colour in palette.labels:
            M = assemble_rho(build_L(sign, colour, palette))
            got = [[pt.value(M[i, j]) for j in range(4)] for i in range(4)]
            ok &= got == target[sign]
    out["duality.L_pairing"] = ok

    # Hopf axioms and Cartan commutators as numeric matrix products
    I = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    ok = True
    for colour in palette.labels:
        for letter in DUAL_LETTERS:
            x = DualExpr.gen(letter, colour)
            eps = pt.value(dual_counit(x))
            left, right = _zeros(2), _zeros(2)
            for a, b, c in dual_coproduct(x).legs():
                cv = pt.value(c)
                sa = _mm(_num_rho(pt, dual_antipode(a)), _num_rho(pt, b))
                sb = _mm(_num_rho(pt, a), _num_rho(pt, dual_antipode(b)))
                left = [[u + cv * v for u, v in zip(r1, r2)] for r1, r2 in zip(left, sa)]
                right = [[u + cv * v for u, v in zip(r1, r2)] for r1, r2 in zip(right, sb)]
            ok &= left == [[eps * v for v in row] for row in I] and right == left
    out["duality.dual_hopf"] = ok

    ok = True
    for x, y in itertools.product(palette.labels, repeat=2):
        A, B, C, Dm = (_num_rho(pt, DualExpr.gen(z, c)) for z, c in (("A", x), ("B", y), ("C", y), ("D", x)))
        ok &= _sub(_mm(A, B), _mm(B, A)) == B
        ok &= _sub(_mm(Dm, C), _mm(C, Dm)) == C
    out["duality.commutators"] = ok

    alg = GroupAlgebra(_numeric_palette(pt, palette))
    rep = check_pairing_well_defined(alg)
    out["duality.pairing_well_defined"] = not any(pt.value(f.value) for f in rep.failures)

    lhs, rhs = eq30_sides(palette)
    out["duality.cb_relation"] = _num_rho(pt, lhs) == _num_rho(pt, rhs)
    l_lab, m_lab = palette.labels[0], palette.labels[-1]
    for variant in ((l_lab, m_lab), (m_lab, l_lab)):
        for kind in ("++", "--", "+-"):
            M = rll_residual(kind, variant, palette)
            out[f"rll.{kind}.R({variant[0]},{variant[1]})"] = not any(pt.value(x) for x in M.entries)
    return out


def _table_value(pt: ExactPoint, v):
    if isinstance(v, dict):
        return {k: pt.value(x) for k, x in v.items() if pt.value(x) != 0}
    return pt.value(v)


def _calculus(pt: ExactPoint, palette: Palette) -> dict[str, bool]:
    num = _numeric_palette(pt, palette)
    calc = Calculus(num)
    generated = calc.generated_tables()
    printed = printed_tables(num.values[0], num.values[-1])
    out = {}
    for table in ("omega", "chi", "convolution", "d"):
        out[f"calculus.{table}_table"] = all(
            _table_value(pt, generated[table][key]) == _table_value(pt, want)
            for key, want in printed[table].items())
    sweep = calc.leibniz_sweep()
    out["calculus.leibniz"] = not any(pt.value(c) for e in sweep.values()
                                      for p in e.coeffs.values() for c in p.terms.values())
    return out


def numeric_verdicts(pt: ExactPoint, palette: Palette, major: str = "letter") -> dict[str, bool]:
    """Pass/fail of every numerically re-checkable verdict at ``pt``.

    Dual and calculus verdicts use the first two colours of ``palette``.
    """
    out = {}
    out.update(_ybe(pt, palette))
    out.update(_group(pt, palette, major))
    out.update(_duality(pt, palette.leading()))
    out.update(_calculus(pt, palette.leading()))
    return out
