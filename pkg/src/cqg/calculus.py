"""First-order differential calculus on the coloured quantum group.

One-forms ``omega_ij`` are labelled ``1, +, -, 2`` for ``(1,1), (1,2), (2,1), (2,2)``.
The functionals ``f^{ij}_{kl} = S(l+_ki) l-_jl`` are evaluated on generators in
the spin-1/2 representation and extended to words by the matrix coproduct
``f^{ij}_{kl}(x y) = sum_mn f^{ij}_{mn}(x) f^{mn}_{kl}(y)``.  Vector fields are
``chi_ij = sum_k f^{kk}_{ij} - delta_ij eps``, convolutions
``chi * x = (id (x) chi) Delta(x)``, and ``d x = sum_i (chi_i * x) omega^i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .dual import antipode_L_plus, build_L, rho
from .frt import LETTERS, MATRIX_POS, GroupAlgebra, Palette
from .linalg import RingMatrix, identity, matmul
from .ncpoly import Generator, NCPoly, gen
from .rmatrix import s_ratio
from .scalar import ONE, ZERO, Exponent, Scalar, q_pow

__all__ = [
    "FORMS",
    "GammaElement",
    "Calculus",
    "printed_tables",
    "TableComparison",
]

FORMS = {"1": (0, 0), "+": (0, 1), "-": (1, 0), "2": (1, 1)}
FORM_OF = {v: k for k, v in FORMS.items()}
_POS_LETTER = {v: k for k, v in MATRIX_POS.items()}


def _idx(pair: tuple[int, int]) -> int:
    return 2 * pair[0] + pair[1]


@dataclass(frozen=True)
class GammaElement:
    """``sum_i coeffs[i] * omega^i`` with algebra coefficients on the left."""

    coeffs: Mapping[str, NCPoly]

    @classmethod
    def zero(cls) -> "GammaElement":
        return cls({})

    def __add__(self, other: "GammaElement") -> "GammaElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, NCPoly.zero()) + v
        return GammaElement({k: v for k, v in out.items() if v})

    def __neg__(self):
        return GammaElement({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "GammaElement") -> "GammaElement":
        return self + (-other)

    def left_mul(self, x: NCPoly) -> "GammaElement":
        return GammaElement({k: x * v for k, v in self.coeffs.items() if x * v})

    def map(self, fn) -> "GammaElement":
        out = {k: fn(v) for k, v in self.coeffs.items()}
        return GammaElement({k: v for k, v in out.items() if v})

    def coefficient(self, form: str) -> NCPoly:
        return self.coeffs.get(form, NCPoly.zero())

    def __bool__(self):
        return any(bool(v) for v in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, GammaElement):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coefficient(k) == other.coefficient(k) for k in keys)

    def __hash__(self):
        return hash(frozenset((k, v) for k, v in self.coeffs.items() if v))

    def term_count(self) -> int:
        return sum(len(v.terms) for v in self.coeffs.values())

    def __str__(self):
        parts = [f"({v})*w{k}" for k, v in sorted(self.coeffs.items()) if v]
        return " + ".join(parts) or "0"

    __repr__ = __str__


@dataclass
class Calculus:
    """The calculus over a two-colour palette."""

    palette: Palette = field(default_factory=Palette.symbolic)
    algebra: GroupAlgebra | None = None
    corrupt: tuple | None = None  # (form, letter, form') entry of the omega table to perturb

    def __post_init__(self):
        if self.algebra is None:
            self.algebra = GroupAlgebra(self.palette)

    # -- functionals

    def f_matrix(self, colour: str | None = None) -> RingMatrix:
        """4x4 matrix of DualExpr ``F[(i,j),(k,l)] = S(l+_ki) l-_jl``."""
        colour = colour or self.palette.labels[0]
        S = antipode_L_plus(colour, self.palette).entries
        Lm = build_L("-", colour, self.palette).entries
        return RingMatrix.build(4, 4, lambda r, c: S[c // 2, r // 2] * Lm[r % 2, c % 2],
                                zero=Lm[0, 1])

    @cached_property
    def _f_rho(self) -> dict[tuple[int, int], RingMatrix]:
        F = self.f_matrix()
        return {(r, c): rho(F[r, c]) for r in range(4) for c in range(4)}

    def f_on_letter(self, letter: str) -> RingMatrix:
        """Scalar 4x4 matrix ``f^{ij}_{kl}(t)`` for a single generator letter."""
        m, b = MATRIX_POS[letter]
        M = RingMatrix.build(4, 4, lambda r, c: self._f_rho[r, c][m, b])
        if self.corrupt is not None:
            form, let, form2 = self.corrupt
            if let == letter:
                r, c = _idx(FORMS[form]), _idx(FORMS[form2])
                M = RingMatrix.build(4, 4, lambda i, j: M[i, j] * 2 if (i, j) == (r, c) else M[i, j])
        return M

    def f_on_word(self, word: tuple) -> RingMatrix:
        out = identity(4)
        for g in word:
            if g.letter not in MATRIX_POS:
                raise ValueError(f"no functional value on {g}")
            out = matmul(out, self.f_on_letter(g.letter))
        return out

    # -- one-forms

    def omega_commute_word(self, form: str, word: tuple) -> GammaElement:
        """``omega^form * word`` pushed to ``sum (algebra) * omega``."""
        r = _idx(FORMS[form])
        out: dict[str, NCPoly] = {}
        for w1, w2 in _word_coproduct(word):
            F = self.f_on_word(w2)
            for kl, lab in FORM_OF.items():
                c = F[r, _idx(kl)]
                if c:
                    out[lab] = out.get(lab, NCPoly.zero()) + NCPoly.word(w1, c)
        return GammaElement(out).map(self.algebra.nf)

    def omega_commute(self, g: Generator) -> dict[str, GammaElement]:
        return {form: self.omega_commute_word(form, (g,)) for form in FORMS}

    def right_mul(self, e: GammaElement, y: NCPoly) -> GammaElement:
        """``e * y`` in left-module normal form."""
        out = GammaElement.zero()
        for form, coeff in e.coeffs.items():
            for w, c in y.terms.items():
                out = out + self.omega_commute_word(form, w).left_mul(coeff * c)
        return out.map(self.algebra.nf)

    # -- vector fields

    def chi_word(self, form: str, word: tuple) -> Scalar:
        i, j = FORMS[form]
        F = self.f_on_word(word)
        val = sum((F[_idx((k, k)), _idx((i, j))] for k in range(2)), ZERO)
        if i == j:
            val = val - _counit_word(word)
        return val

    def chi_eval(self, g: Generator) -> dict[str, Scalar]:
        return {form: self.chi_word(form, (g,)) for form in FORMS}

    def chi_direct(self, g: Generator) -> dict[str, Scalar]:
        """``<sum_k S(l+_ik) l-_kj, g> - delta_ij eps(g)`` straight from the L matrices."""
        colour = self.palette.labels[0]
        S = antipode_L_plus(colour, self.palette).entries
        Lm = build_L("-", colour, self.palette).entries
        m, b = MATRIX_POS[g.letter]
        out = {}
        for form, (i, j) in FORMS.items():
            val = rho(S[i, 0] * Lm[0, j] + S[i, 1] * Lm[1, j])[m, b]
            if i == j:
                val = val - _counit_word((g,))
            out[form] = val
        return out

    def convolve_poly(self, form: str, p: NCPoly) -> NCPoly:
        out = NCPoly.zero()
        for w, c in p.terms.items():
            for w1, w2 in _word_coproduct(w):
                v = self.chi_word(form, w2)
                if v:
                    out = out + NCPoly.word(w1, v * c)
        return self.algebra.nf(out)

    def convolve(self, form: str, g: Generator) -> NCPoly:
        return self.convolve_poly(form, NCPoly.word((g,)))

    def d(self, p: NCPoly) -> GammaElement:
        return GammaElement({form: self.convolve_poly(form, p) for form in FORMS}).map(lambda x: x)

    def exterior_d(self, g: Generator) -> GammaElement:
        return self.d(NCPoly.word((g,)))

    # -- Leibniz

    def leibniz_residual(self, x: Generator, y: Generator) -> GammaElement:
        X, Y = NCPoly.word((x,)), NCPoly.word((y,))
        lhs = self.d(self.algebra.nf(X * Y))
        rhs = self.right_mul(self.d(X), Y) + self.d(Y).left_mul(X)
        return (lhs - rhs).map(self.algebra.nf)

    def leibniz_unreduced(self, x: Generator, y: Generator) -> GammaElement:
        """Same residual with ``d`` applied to the word ``x y`` itself."""
        X, Y = NCPoly.word((x,)), NCPoly.word((y,))
        lhs = self.d(X * Y)
        rhs = self.right_mul(self.d(X), Y) + self.d(Y).left_mul(X)
        return (lhs - rhs).map(self.algebra.nf)

    def leibniz_sweep(self) -> dict[tuple[Generator, Generator], GammaElement]:
        gens = self.algebra.generators()
        return {(x, y): self.leibniz_residual(x, y) for x, y in itertools.product(gens, repeat=2)}

    def functional_relation_residuals(self) -> dict[str, RingMatrix]:
        """``f`` (as a 4x4 matrix) on every defining relation; zero iff ``f`` respects the ideal."""
        out = {}
        for rel in self.algebra.relations:
            total = RingMatrix.build(4, 4, lambda i, j: ZERO)
            for w, c in rel.terms.items():
                total = total + self.f_on_word(w).scale(c)
            out[str(rel)] = total
        return out

    # -- tables

    def generated_tables(self, colour: str | None = None) -> dict[str, dict]:
        colour = colour or self.palette.labels[0]
        gens = [Generator(x, colour) for x in LETTERS]
        omega = {}
        chi = {}
        conv = {}
        dd = {}
        for g in gens:
            for form, e in self.omega_commute(g).items():
                omega[(form, g.letter)] = _strip_colour(e, colour)
            for form, v in self.chi_eval(g).items():
                chi[(form, g.letter)] = v
            for form in FORMS:
                conv[(form, g.letter)] = _strip_poly(self.convolve(form, g), colour)
            dd[g.letter] = _strip_colour(self.exterior_d(g), colour)
        return {"omega": omega, "chi": chi, "convolution": conv, "d": dd}

    def compare_printed(self, colour: str | None = None) -> "TableComparison":
        gen_t = self.generated_tables(colour)
        lam, mu = self.palette.values[0], self.palette.values[-1]
        printed = printed_tables(lam, mu)
        mismatches = []
        counts = {}
        for table in ("omega", "chi", "convolution", "d"):
            counts[table] = len(printed[table])
            for key, want in printed[table].items():
                got = gen_t[table][key]
                if got != want:
                    mismatches.append((table, key, _fmt(want), _fmt(got)))
        return TableComparison(counts, tuple(mismatches))


@dataclass(frozen=True)
class TableComparison:
    counts: dict[str, int]
    mismatches: tuple

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def passed_table(self, table: str) -> bool:
        return not any(m[0] == table for m in self.mismatches)


def _fmt(x) -> str:
    if isinstance(x, dict):
        return " + ".join(f"({v})*{k}" for k, v in sorted(x.items())) or "0"
    return str(x)


def _word_coproduct(word: tuple):
    """Terms ``(w1, w2)`` of ``Delta(word)`` with ``Delta t_ij = sum_k t_ik (x) t_kj``."""
    if not word:
        yield (), ()
        return
    for mids in itertools.product(range(2), repeat=len(word)):
        left, right = [], []
        for g, k in zip(word, mids):
            i, j = MATRIX_POS[g.letter]
            left.append(Generator(_POS_LETTER[(i, k)], g.colour))
            right.append(Generator(_POS_LETTER[(k, j)], g.colour))
        yield tuple(left), tuple(right)


def _counit_word(word: tuple) -> Scalar:
    return ONE if all(g.letter in ("a", "d") for g in word) else ZERO


def _strip_poly(p: NCPoly, colour: str) -> dict[str, Scalar]:
    """Linear polynomial in one colour's generators as ``{letter: coeff}``."""
    out = {}
    for w, c in p.terms.items():
        if len(w) != 1 or w[0].colour != colour:
            raise ValueError(f"expected a linear combination of generators, got {p}")
        out[w[0].letter] = c
    return out


def _strip_colour(e: GammaElement, colour: str) -> dict[str, Scalar]:
    """``{letter+form: coeff}`` for a one-form with linear coefficients."""
    out = {}
    for form, p in e.coeffs.items():
        for letter, c in _strip_poly(p, colour).items():
            out[f"{letter}w{form}"] = c
    return out


def printed_tables(lam: Exponent, mu: Exponent) -> dict[str, dict]:
    """Transcription of the printed one-form, vector-field, convolution and derivative tables."""
    s = s_ratio()
    one = ONE
    qi = q_pow(-1) - q_pow(1)  # q^-1 - q

    def Q(e) -> Scalar:
        return q_pow(Exponent.coerce(e))

    lm = lam - mu
    tot = lam + mu
    a_like = {  # omega^i on a (c with a->c, b->d)
        "1": {"a1": s * Q(Exponent(-2) + lm.scale(2))},
        "+": {"a+": s * Q(Exponent(-1) + lam.scale(2))},
        "-": {"a-": s * Q(Exponent(-1) - mu.scale(2)), "b1": s * (Q(-2) - one) * Q(lm)},
        "2": {"a2": s, "b+": s * qi * Q(tot)},
    }
    b_like = {  # omega^i on b (d with b->d, a->c)
        "1": {"b1": s},
        "+": {"b+": s * Q(Exponent(-1) + mu.scale(2)), "a1": s * (Q(-2) - one) * Q(lm)},
        "-": {"b-": s * Q(Exponent(-1) - lam.scale(2))},
        "2": {"b2": s * Q(Exponent(-2) - lm.scale(2)), "a-": s * qi * Q(-tot), "b1": s * qi * qi},
    }

    def rename(table, mapping):
        return {k: {mapping[key[0]] + "w" + key[1:]: v for key, v in d.items()} for k, d in table.items()}

    omega = {}
    for letter, table, mapping in (("a", a_like, {"a": "a", "b": "b"}), ("b", b_like, {"a": "a", "b": "b"}),
                                   ("c", a_like, {"a": "c", "b": "d"}), ("d", b_like, {"a": "c", "b": "d"})):
        for form, d in rename(table, mapping).items():
            omega[(form, letter)] = d

    chi_1a = s * Q(Exponent(-2) + lm.scale(2)) - one
    chi_1d = s * qi * qi + s - one
    chi_2d = s * Q(Exponent(-2) - lm.scale(2)) - one
    chi = {
        ("1", "a"): chi_1a, ("1", "b"): ZERO, ("+", "a"): ZERO, ("+", "b"): ZERO,
        ("-", "a"): ZERO, ("-", "b"): s * qi * Q(-tot), ("2", "a"): s - one, ("2", "b"): ZERO,
        ("1", "c"): ZERO, ("1", "d"): chi_1d, ("+", "c"): s * qi * Q(-tot), ("+", "d"): ZERO,
        ("-", "c"): ZERO, ("-", "d"): ZERO, ("2", "c"): ZERO, ("2", "d"): chi_2d,
    }
    conv = {
        ("1", "a"): {"a": chi_1a}, ("1", "b"): {"b": chi_1d},
        ("+", "a"): {"b": s * qi * Q(tot)}, ("+", "b"): {},
        ("-", "a"): {}, ("-", "b"): {"a": s * qi * Q(-tot)},
        ("2", "a"): {"a": s - one}, ("2", "b"): {"b": chi_2d},
        ("1", "c"): {"c": chi_1a}, ("1", "d"): {"d": chi_1d},
        ("+", "c"): {"d": s * qi * Q(tot)}, ("+", "d"): {},
        ("-", "c"): {}, ("-", "d"): {"c": s * qi * Q(-tot)},
        ("2", "c"): {"c": s - one}, ("2", "d"): {"d": chi_2d},
    }
    d = {
        "a": {"aw1": chi_1a, "bw+": s * qi * Q(tot), "aw2": s - one},
        "b": {"bw1": chi_1d, "aw-": s * qi * Q(-tot), "bw2": chi_2d},
        "c": {"cw1": chi_1a, "dw+": s * qi * Q(tot), "cw2": s - one},
        "d": {"dw1": chi_1d, "cw-": s * qi * Q(-tot), "dw2": chi_2d},
    }
    return {"omega": omega, "chi": chi, "convolution": conv, "d": d}
