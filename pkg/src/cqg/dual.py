"""The dual coloured quantum algebra.

Elements are :class:`DualExpr`: sums of ``coeff * K * w`` with ``K`` a Cartan
exponential ``q^(sum c_i X_i)`` (``X_i`` one of ``H_c = A_c - D_c`` or
``H'_c = A_c + D_c``) collected on the left and ``w`` a word in the letters
``A, B, C, D``.  Cartan exponentials move past letters by

    q^(c H) B = q^(2c) B q^(c H),    q^(c H) C = q^(-2c) C q^(c H),

for every colour pairing, while ``A``, ``D`` and every ``H'`` commute with them.
``B`` and ``C`` are never reordered among themselves.

Everything is checked in the spin-1/2 representation ``rho`` (identical for
every colour) and through pairings with the group words, which use ``rho``
together with the coproduct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

from .frt import LETTERS as GROUP_LETTERS, MATRIX_POS, GroupAlgebra, Palette
from .linalg import RingMatrix, identity, kron, matmul
from .ncpoly import Generator, NCPoly
from .rmatrix import build_r, build_r_pm, c_minus, c_plus
from .scalar import ONE, ZERO, Exponent, Scalar, q_pow

__all__ = [
    "DualGen",
    "CartanExp",
    "DualExpr",
    "DualTensor",
    "LMatrix",
    "UnsupportedWord",
    "rho",
    "rho_n",
    "build_L",
    "check_L_pairing",
    "pair",
    "pair_split",
    "check_pairing_well_defined",
    "dual_normal_form",
    "dual_coproduct",
    "dual_counit",
    "dual_antipode",
    "dual_hopf",
    "check_dual_hopf",
    "check_dual_relations_in_rho",
    "check_rll",
    "rll_residual",
    "check_antipode_L",
    "antipode_L_plus",
    "assemble_rho",
    "eq30_sides",
    "CheckTable",
    "PairingReport",
    "dual_words",
]

DUAL_LETTERS = ("A", "B", "C", "D")
QMQ = q_pow(1) - q_pow(-1)


class UnsupportedWord(ValueError):
    pass


class DualGen(NamedTuple):
    letter: str
    colour: str

    def __str__(self):
        return f"{self.letter}_{self.colour}" if self.colour else self.letter


class CartanExp:
    """Formal ``q^(sum coeff * symbol)`` over symbols ``("H", c)`` and ``("Hp", c)``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[tuple[str, str], object] | Iterable = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict = {}
        for key, c in items:
            kind, _ = key
            if kind not in ("H", "Hp"):
                raise ValueError(f"unknown Cartan symbol {kind!r}")
            acc[key] = acc.get(key, Exponent()) + Exponent.coerce(c)
        self.coeffs = tuple(sorted(((k, v) for k, v in acc.items() if not v.is_zero()),
                                   key=lambda kv: kv[0]))

    @classmethod
    def identity(cls) -> "CartanExp":
        return cls()

    @classmethod
    def H(cls, colour: str, c=1) -> "CartanExp":
        return cls({("H", colour): c})

    @classmethod
    def Hp(cls, colour: str, c=1) -> "CartanExp":
        return cls({("Hp", colour): c})

    def __bool__(self):
        return True

    def is_identity(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, CartanExp) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: "CartanExp") -> "CartanExp":
        return CartanExp(list(self.coeffs) + list(other.coeffs))

    def inverse(self) -> "CartanExp":
        return CartanExp([(k, -v) for k, v in self.coeffs])

    def h_total(self) -> Exponent:
        """Sum of the ``H`` coefficients: the exponent seen by the shift rules."""
        total = Exponent()
        for (kind, _), v in self.coeffs:
            if kind == "H":
                total = total + v
        return total

    def hp_total(self) -> Exponent:
        total = Exponent()
        for (kind, _), v in self.coeffs:
            if kind == "Hp":
                total = total + v
        return total

    def map_exponents(self, fn) -> "CartanExp":
        return CartanExp([(k, fn(v)) for k, v in self.coeffs])

    def relabel(self, mapping: Mapping[str, str]) -> "CartanExp":
        return CartanExp([((kind, mapping.get(c, c)), v) for (kind, c), v in self.coeffs])

    def __str__(self):
        if not self.coeffs:
            return "1"
        parts = []
        for (kind, c), v in self.coeffs:
            sym = ("H" if kind == "H" else "H'") + (f"_{c}" if c else "")
            parts.append(f"({v})*{sym}")
        return "q^(" + " + ".join(parts) + ")"

    __repr__ = __str__


_ID = CartanExp()


def _shift(word: tuple, K: CartanExp) -> Exponent:
    """``e`` with ``word * K = q^e K * word``."""
    h = K.h_total()
    if h.is_zero():
        return Exponent()
    n = sum(1 for g in word if g.letter == "C") - sum(1 for g in word if g.letter == "B")
    return h.scale(2 * n)


def _add(acc: dict, key, c: Scalar) -> None:
    if not c:
        return
    s = acc.get(key, ZERO) + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _term_mul(k1: CartanExp, w1: tuple, k2: CartanExp, w2: tuple) -> tuple[CartanExp, tuple, Scalar]:
    return k1 * k2, w1 + w2, q_pow(_shift(w1, k2))


class DualExpr:
    """Normal-ordered element: ``{(CartanExp, word): Scalar}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        self.terms: dict = {}
        for (K, w), c in (terms or {}).items():
            _add(self.terms, (K, tuple(w)), Scalar.coerce(c))

    @classmethod
    def _raw(cls, terms: dict) -> "DualExpr":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls) -> "DualExpr":
        return cls._raw({})

    @classmethod
    def one(cls) -> "DualExpr":
        return cls._raw({(_ID, ()): ONE})

    @classmethod
    def scalar(cls, c) -> "DualExpr":
        c = Scalar.coerce(c)
        return cls._raw({(_ID, ()): c} if c else {})

    @classmethod
    def gen(cls, letter: str, colour: str) -> "DualExpr":
        if letter not in DUAL_LETTERS:
            raise ValueError(f"unknown dual letter {letter!r}")
        return cls._raw({(_ID, (DualGen(letter, colour),)): ONE})

    @classmethod
    def cartan(cls, K: CartanExp | Mapping) -> "DualExpr":
        K = K if isinstance(K, CartanExp) else CartanExp(K)
        return cls._raw({(K, ()): ONE})

    @classmethod
    def coerce(cls, x) -> "DualExpr":
        if isinstance(x, DualExpr):
            return x
        if isinstance(x, CartanExp):
            return cls.cartan(x)
        if isinstance(x, DualGen):
            return cls.gen(x.letter, x.colour)
        if isinstance(x, (Scalar, int, Fraction)):
            return cls.scalar(x)
        raise TypeError(f"cannot interpret {x!r} as DualExpr")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = DualExpr.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = DualExpr.coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return DualExpr._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return DualExpr._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-DualExpr.coerce(other))

    def __rsub__(self, other):
        return DualExpr.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            c = Scalar.coerce(other)
            out: dict = {}
            for k, x in self.terms.items():
                _add(out, k, x * c)
            return DualExpr._raw(out)
        other = DualExpr.coerce(other)
        out = {}
        for (k1, w1), c1 in self.terms.items():
            for (k2, w2), c2 in other.terms.items():
                K, w, f = _term_mul(k1, w1, k2, w2)
                _add(out, (K, w), c1 * c2 * f)
        return DualExpr._raw(out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction)):
            return self * other
        return DualExpr.coerce(other) * self

    def map_coeffs(self, fn) -> "DualExpr":
        out: dict = {}
        for k, c in self.terms.items():
            _add(out, k, fn(c))
        return DualExpr._raw(out)

    def colour_substitute(self, subst: Mapping[str, object]) -> "DualExpr":
        conv = {k: Exponent.coerce(v) for k, v in subst.items()}
        out: dict = {}
        for (K, w), c in self.terms.items():
            _add(out, (K.map_exponents(lambda e: e.substitute(conv)), w), c.colour_substitute(subst))
        return DualExpr._raw(out)

    def relabel(self, mapping: Mapping[str, str]) -> "DualExpr":
        out: dict = {}
        for (K, w), c in self.terms.items():
            w2 = tuple(DualGen(g.letter, mapping.get(g.colour, g.colour)) for g in w)
            _add(out, (K.relabel(mapping), w2), c)
        return DualExpr._raw(out)

    def max_word_length(self) -> int:
        return max((len(w) for _, w in self.terms), default=0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (K, w), c in sorted(self.terms.items(), key=lambda kv: (len(kv[0][1]), str(kv[0]))):
            factors = [f"({c})"] if c != 1 else []
            if not K.is_identity():
                factors.append(str(K))
            factors.extend(str(g) for g in w)
            parts.append("*".join(factors) or "1")
        return " + ".join(parts)

    __repr__ = __str__


def dual_normal_form(e) -> DualExpr:
    """Normal-order a product given as a sequence of factors (or re-normalise a DualExpr).

    Factors may be DualGen, CartanExp, Scalar or DualExpr; Cartan exponentials
    are collected on the left by the shift rules.
    """
    if isinstance(e, DualExpr):
        out = DualExpr.zero()
        for (K, w), c in e.terms.items():
            out = out + dual_normal_form([c, K, *w])
        return out
    acc = DualExpr.one()
    for f in e:
        acc = acc * DualExpr.coerce(f)
    return acc


# ---------------------------------------------------------------- representation

def _diag(x: Scalar, y: Scalar) -> RingMatrix:
    return RingMatrix.from_rows([[x, ZERO], [ZERO, y]])


_RHO_GEN = {
    "A": RingMatrix.from_rows([[ONE, ZERO], [ZERO, ZERO]]),
    "B": RingMatrix.from_rows([[ZERO, ONE], [ZERO, ZERO]]),
    "C": RingMatrix.from_rows([[ZERO, ZERO], [ONE, ZERO]]),
    "D": RingMatrix.from_rows([[ZERO, ZERO], [ZERO, ONE]]),
}


def rho_cartan(K: CartanExp) -> RingMatrix:
    h, hp = K.h_total(), K.hp_total()
    return _diag(q_pow(h + hp), q_pow(hp - h))


def rho(e) -> RingMatrix:
    """Spin-1/2 representation: ``H -> diag(1,-1)``, ``H' -> I``, ``B -> e12``, ``C -> e21``."""
    e = DualExpr.coerce(e)
    total = RingMatrix.from_rows([[ZERO, ZERO], [ZERO, ZERO]])
    for (K, w), c in e.terms.items():
        m = rho_cartan(K)
        for g in w:
            m = matmul(m, _RHO_GEN[g.letter])
        total = total + m.scale(c)
    return total


def _kron_all(mats: Sequence[RingMatrix]) -> RingMatrix:
    out = mats[0]
    for m in mats[1:]:
        out = kron(out, m)
    return out


def rho_n(e, n: int) -> RingMatrix:
    """``rho^(x)n`` of the (n-1)-fold coproduct, built multiplicatively from the generators.

    ``Delta A = A (x) 1 + 1 (x) A`` (same for ``D``), ``Delta B = B (x) q^H + 1 (x) B``
    (same for ``C``), Cartan exponentials group-like.
    """
    e = DualExpr.coerce(e)
    if n == 0:
        return RingMatrix.from_rows([[dual_counit(e)]])
    I2 = identity(2)
    KH = rho_cartan(CartanExp.H("", 1))
    gen_cache: dict = {}

    def gen_image(letter: str) -> RingMatrix:
        if letter not in gen_cache:
            total = None
            for k in range(n):
                tail = KH if letter in ("B", "C") else I2
                mats = [I2] * k + [_RHO_GEN[letter]] + [tail] * (n - k - 1)
                m = _kron_all(mats)
                total = m if total is None else total + m
            gen_cache[letter] = total
        return gen_cache[letter]

    dim = 2 ** n
    total = RingMatrix.build(dim, dim, lambda i, j: ZERO)
    for (K, w), c in e.terms.items():
        m = _kron_all([rho_cartan(K)] * n)
        for g in w:
            m = matmul(m, gen_image(g.letter))
        total = total + m.scale(c)
    return total


# ---------------------------------------------------------------- pairing

def _word_indices(word: Sequence[Generator]) -> tuple[int, int]:
    row = col = 0
    for g in word:
        if g.letter not in MATRIX_POS:
            raise UnsupportedWord(f"cannot pair against the localisation letter {g}")
        i, j = MATRIX_POS[g.letter]
        row, col = 2 * row + i, 2 * col + j
    return row, col


def pair(u, x) -> Scalar:
    """``<u, x>`` for a dual element ``u`` and a group polynomial or word ``x``.

    A word ``t_{i1 j1} ... t_{in jn}`` pairs with the ``((i1..in), (j1..jn))``
    entry of ``rho_n(u)``.  Pairings ignore the colours on both sides.
    """
    u = DualExpr.coerce(u)
    x = x if isinstance(x, NCPoly) else NCPoly.word(tuple(x))
    cache: dict[int, RingMatrix] = {}
    total = ZERO
    for w, c in x.terms.items():
        n = len(w)
        if n not in cache:
            cache[n] = rho_n(u, n)
        r, s = _word_indices(w) if n else (0, 0)
        total = total + c * cache[n][r, s]
    return total


def _pair_gen(K: CartanExp, g: DualGen | None, word: tuple) -> Scalar:
    """Pair a single Cartan exponential or generator against a word via the symbolic coproduct."""
    if g is None:
        # group-like: product of rho entries
        val = ONE
        m = rho_cartan(K)
        for t in word:
            i, j = MATRIX_POS[t.letter]
            val = val * m[i, j]
            if not val:
                return ZERO
        return val
    if not word:
        return ZERO
    if len(word) == 1:
        i, j = MATRIX_POS[word[0].letter]
        return rho(DualExpr.gen(g.letter, g.colour))[i, j]
    # <g, x t> = sum <g(1), x><g(2), t>
    total = ZERO
    for (l1, l2), c in dual_coproduct(DualExpr.gen(g.letter, g.colour)).terms.items():
        a = _pair_term(*l1, word[:-1])
        if not a:
            continue
        total = total + c * a * _pair_term(*l2, word[-1:])
    return total


def _group_coproduct_splits(word: tuple, parts: int):
    """Terms of the (parts-1)-fold group coproduct of a word, as tuples of sub-words."""
    choices = []
    for t in word:
        i, j = MATRIX_POS[t.letter]
        choices.append([(i, mids, j) for mids in itertools.product(range(2), repeat=parts - 1)])
    for pick in itertools.product(*choices):
        legs = []
        for p in range(parts):
            leg = []
            for t, (i, mids, j) in zip(word, pick):
                idx = (i,) + mids + (j,)
                leg.append(Generator(_POS_LETTER[(idx[p], idx[p + 1])], t.colour))
            legs.append(tuple(leg))
        yield tuple(legs)


_POS_LETTER = {v: k for k, v in MATRIX_POS.items()}


def _pair_term(K: CartanExp, w: tuple, word: tuple) -> Scalar:
    if not w:
        return _pair_gen(K, None, word)
    parts = len(w) + 1
    total = ZERO
    for legs in _group_coproduct_splits(word, parts):
        val = _pair_gen(K, None, legs[0])
        for g, leg in zip(w, legs[1:]):
            if not val:
                break
            val = val * _pair_gen(K, g, leg)
        total = total + val
    return total


def pair_split(u, x) -> Scalar:
    """Independent route for :func:`pair`.

    Products on the dual side are split with the group coproduct,
    ``<u v, x> = <u (x) v, Delta x>``; single generators against long words
    are split with the symbolic dual coproduct.
    """
    u = DualExpr.coerce(u)
    x = x if isinstance(x, NCPoly) else NCPoly.word(tuple(x))
    total = ZERO
    for w, c in x.terms.items():
        _word_indices(w)  # rejects localisation letters
        for (K, dw), d in u.terms.items():
            total = total + c * d * _pair_term(K, dw, w)
    return total


def dual_alphabet(palette: Palette, cartan_coeffs=(1, -1, Fraction(1, 2), Fraction(-1, 2))) -> list[DualExpr]:
    out = [DualExpr.gen(x, c) for c in palette.labels for x in DUAL_LETTERS]
    for c in palette.labels:
        for k in cartan_coeffs:
            out.append(DualExpr.cartan(CartanExp.H(c, k)))
            out.append(DualExpr.cartan(CartanExp.Hp(c, k)))
    return out


def dual_words(palette: Palette, max_len: int = 2) -> list[tuple[str, DualExpr]]:
    alphabet = dual_alphabet(palette)
    out = [("1", DualExpr.one())]
    for n in range(1, max_len + 1):
        for combo in itertools.product(alphabet, repeat=n):
            e = DualExpr.one()
            for f in combo:
                e = e * f
            out.append((" * ".join(str(f) for f in combo), e))
    return out


@dataclass(frozen=True)
class PairingFailure:
    dual: str
    relation: str
    value: Scalar


@dataclass(frozen=True)
class PairingReport:
    checked: int
    failures: tuple[PairingFailure, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def check_pairing_well_defined(algebra: GroupAlgebra | None = None, max_dual_len: int = 2,
                               relations: Sequence[NCPoly] | None = None) -> PairingReport:
    """``<u, r>`` for every dual word ``u`` up to ``max_dual_len`` and every RTT relation ``r``."""
    algebra = algebra or GroupAlgebra()
    rels = list(relations) if relations is not None else algebra.relations
    failures = []
    checked = 0
    for name, u in dual_words(algebra.palette, max_dual_len):
        m = rho_n(u, 2)
        for r in rels:
            checked += 1
            val = ZERO
            for w, c in r.terms.items():
                i, j = _word_indices(w)
                val = val + c * m[i, j]
            if val:
                failures.append(PairingFailure(name, str(r), val))
    return PairingReport(checked, tuple(failures))


# ---------------------------------------------------------------- Hopf structure

class DualTensor:
    """Element of the tensor square: ``{((K1, w1), (K2, w2)): Scalar}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = terms or {}

    @classmethod
    def pure(cls, x, y) -> "DualTensor":
        x, y = DualExpr.coerce(x), DualExpr.coerce(y)
        out: dict = {}
        for k1, c1 in x.terms.items():
            for k2, c2 in y.terms.items():
                _add(out, (k1, k2), c1 * c2)
        return cls(out)

    def __add__(self, other: "DualTensor") -> "DualTensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add(out, k, c)
        return DualTensor(out)

    def __sub__(self, other: "DualTensor") -> "DualTensor":
        return self + DualTensor({k: -c for k, c in other.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            c = Scalar.coerce(other)
            return DualTensor({k: x * c for k, x in self.terms.items() if x * c})
        out: dict = {}
        for ((a1, u1), (b1, v1)), c1 in self.terms.items():
            for ((a2, u2), (b2, v2)), c2 in other.terms.items():
                K1, w1, f1 = _term_mul(a1, u1, a2, u2)
                K2, w2, f2 = _term_mul(b1, v1, b2, v2)
                _add(out, ((K1, w1), (K2, w2)), c1 * c2 * f1 * f2)
        return DualTensor(out)

    def __eq__(self, other):
        return isinstance(other, DualTensor) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def legs(self):
        for ((K1, w1), (K2, w2)), c in self.terms.items():
            yield DualExpr._raw({(K1, w1): ONE}), DualExpr._raw({(K2, w2): ONE}), c

    def relabel(self, mapping) -> "DualTensor":
        out = DualTensor()
        for x, y, c in self.legs():
            out = out + DualTensor.pure(x.relabel(mapping), y.relabel(mapping)) * c
        return out

    def __str__(self):
        return " + ".join(f"({c})*[{x}] (x) [{y}]" for x, y, c in self.legs()) or "0"

    __repr__ = __str__


def _coproduct_gen(g: DualGen) -> DualTensor:
    x = DualExpr.gen(g.letter, g.colour)
    one = DualExpr.one()
    if g.letter in ("A", "D"):
        return DualTensor.pure(x, one) + DualTensor.pure(one, x)
    # Delta(B) = B (x) q^(A - D) + 1 (x) B, likewise for C
    return DualTensor.pure(x, DualExpr.cartan(CartanExp.H(g.colour, 1))) + DualTensor.pure(one, x)


def dual_coproduct(e) -> DualTensor:
    e = DualExpr.coerce(e)
    out = DualTensor()
    for (K, w), c in e.terms.items():
        acc = DualTensor.pure(DualExpr.cartan(K), DualExpr.cartan(K))
        for g in w:
            acc = acc * _coproduct_gen(g)
        out = out + acc * c
    return out


def dual_counit(e) -> Scalar:
    e = DualExpr.coerce(e)
    return sum((c for (K, w), c in e.terms.items() if not w), ZERO)


def _antipode_gen(g: DualGen) -> DualExpr:
    x = DualExpr.gen(g.letter, g.colour)
    if g.letter in ("A", "D"):
        return -x
    # S(B) = -B q^-(A - D), likewise for C
    return -(x * DualExpr.cartan(CartanExp.H(g.colour, -1)))


def dual_antipode(e) -> DualExpr:
    e = DualExpr.coerce(e)
    out = DualExpr.zero()
    for (K, w), c in e.terms.items():
        acc = DualExpr.one()
        for g in w:
            acc = _antipode_gen(g) * acc
        out = out + acc * DualExpr.cartan(K.inverse()) * c
    return out


def dual_hopf(u: DualGen) -> tuple[DualTensor, Scalar, DualExpr]:
    x = DualExpr.gen(u.letter, u.colour)
    return dual_coproduct(x), dual_counit(x), dual_antipode(x)


def _mult(t: DualTensor, left=None, right=None) -> DualExpr:
    out = DualExpr.zero()
    for x, y, c in t.legs():
        a = left(x) if left else x
        b = right(y) if right else y
        out = out + a * b * c
    return out


def _contract_counit(t: DualTensor, leg: int) -> DualExpr:
    out = DualExpr.zero()
    for x, y, c in t.legs():
        out = out + (y * dual_counit(x) if leg == 0 else x * dual_counit(y)) * c
    return out


@dataclass(frozen=True)
class CheckTable:
    """Named residuals; a check passes when every residual is zero."""

    residuals: dict

    @property
    def passed(self) -> bool:
        return not any(_nonzero(v) for v in self.residuals.values())

    def failing(self) -> list[str]:
        return [k for k, v in self.residuals.items() if _nonzero(v)]

    def residual_terms(self) -> int:
        return sum(_term_count(v) for v in self.residuals.values())


def _nonzero(v) -> bool:
    if isinstance(v, RingMatrix):
        return not v.is_zero()
    return bool(v)


def _term_count(v) -> int:
    if isinstance(v, RingMatrix):
        return sum(_term_count(x) for x in v.entries)
    if hasattr(v, "terms"):
        return len(v.terms)
    return int(bool(v))


def check_dual_hopf(palette: Palette | None = None) -> CheckTable:
    palette = palette or Palette.symbolic()
    res: dict = {}
    gens = [DualGen(x, c) for c in palette.labels for x in DUAL_LETTERS]
    group_gens = [Generator(x, c) for c in palette.labels for x in GROUP_LETTERS]
    for g in gens:
        D, eps, S = dual_hopf(g)
        x = DualExpr.gen(g.letter, g.colour)
        res[f"m(S,id)D({g})"] = _mult(D, left=dual_antipode) - DualExpr.scalar(eps)
        res[f"m(id,S)D({g})"] = _mult(D, right=dual_antipode) - DualExpr.scalar(eps)
        res[f"(eps,id)D({g})"] = _contract_counit(D, 0) - x
        res[f"(id,eps)D({g})"] = _contract_counit(D, 1) - x
        swap = {palette.labels[0]: palette.labels[-1], palette.labels[-1]: palette.labels[0]}
        res[f"swap-invariance D({g})"] = dual_coproduct(x.relabel(swap)) - D.relabel(swap)
        res[f"swap-invariance S({g})"] = dual_antipode(x.relabel(swap)) - S.relabel(swap)
        for s in group_gens:
            for t in group_gens:
                lhs = ZERO
                for a, b, c in D.legs():
                    lhs = lhs + c * pair(a, [s]) * pair(b, [t])
                res[f"<D({g}), {s} (x) {t}>"] = lhs - pair(x, [s, t])
    return CheckTable(res)


# ---------------------------------------------------------------- L functionals

@dataclass(frozen=True)
class LMatrix:
    sign: str
    colour: str
    entries: RingMatrix  # 2x2 of DualExpr

    def __getitem__(self, ij) -> DualExpr:
        return self.entries[ij]


def _dual_matrix(rows) -> RingMatrix:
    return RingMatrix.from_rows([[DualExpr.coerce(x) for x in row] for row in rows], zero=DualExpr.zero())


def build_L(sign: str, colour: str, palette: Palette | None = None) -> LMatrix:
    """Coloured ``L+`` (upper triangular, ``C``) and ``L-`` (lower triangular, ``B``).

    The exponents use the first and second palette values as ``lambda`` and
    ``mu``, whichever colour carries the dual generators.
    """
    palette = palette or Palette.symbolic()
    lam, mu = palette.values[0], palette.values[-1]
    half = Fraction(1, 2)

    def K(h, hp):
        return DualExpr.cartan(CartanExp({("H", colour): h, ("Hp", colour): hp}))

    if sign == "+":
        pref = c_plus() * q_pow(half)
        rows = [[K(Exponent(half) + mu, -lam), DualExpr.gen("C", colour) * (q_pow(-half) * QMQ)],
                [0, K(Exponent(-half) + mu, lam)]]
    elif sign == "-":
        pref = c_minus() * q_pow(-half)
        rows = [[K(Exponent(-half) + lam, -mu), 0],
                [DualExpr.gen("B", colour) * (q_pow(half) * -QMQ), K(Exponent(half) + lam, mu)]]
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return LMatrix(sign, colour, _dual_matrix(rows).map(lambda e: e * pref))


def antipode_L_plus(colour: str, palette: Palette | None = None) -> LMatrix:
    """Closed form of ``S(L+)``: the inverse matrix of ``L+``."""
    palette = palette or Palette.symbolic()
    lam, mu = palette.values[0], palette.values[-1]
    half = Fraction(1, 2)

    def K(h, hp):
        return DualExpr.cartan(CartanExp({("H", colour): h, ("Hp", colour): hp}))

    pref = (c_plus() * q_pow(half)).invert()
    k11 = K(Exponent(-half) - mu, lam)
    k22 = K(Exponent(half) - mu, -lam)
    s12 = k11 * DualExpr.gen("C", colour) * k22 * (-(q_pow(-half) * QMQ))
    rows = [[k11, s12], [0, k22]]
    return LMatrix("S+", colour, _dual_matrix(rows).map(lambda e: e * pref))


def assemble_rho(L: LMatrix) -> RingMatrix:
    """``M[(a,c),(b,d)] = rho(L[a,b])[c,d]``."""
    blocks = {(a, b): rho(L[a, b]) for a in range(2) for b in range(2)}
    return RingMatrix.build(4, 4, lambda r, s: blocks[r // 2, s // 2][r % 2, s % 2])


def check_L_pairing(palette: Palette | None = None) -> CheckTable:
    palette = palette or Palette.symbolic()
    lam, mu = palette.values[0], palette.values[-1]
    target = {"+": build_r_pm("+", lam, mu), "-": build_r_pm("-", lam, mu)}
    res = {}
    for sign in "+-":
        for colour in palette.labels:
            res[f"L{sign}_{colour}"] = assemble_rho(build_L(sign, colour, palette)) - target[sign]
    return CheckTable(res)


def check_antipode_L(palette: Palette | None = None) -> CheckTable:
    """``L+ S(L+) = S(L+) L+ = 1`` by normal ordering."""
    palette = palette or Palette.symbolic()
    res = {}
    I = identity(2, DualExpr.one(), DualExpr.zero())
    for colour in palette.labels:
        L = build_L("+", colour, palette).entries
        S = antipode_L_plus(colour, palette).entries
        res[f"L+S(L+)_{colour}"] = matmul(L, S) - I
        res[f"S(L+)L+_{colour}"] = matmul(S, L) - I
    return CheckTable(res)


# ---------------------------------------------------------------- relations in rho

def _commutator(x: DualExpr, y: DualExpr) -> DualExpr:
    return x * y - y * x


def eq30_sides(palette: Palette | None = None, first: str | None = None,
               second: str | None = None) -> tuple[DualExpr, DualExpr]:
    """``(q - q^-1) * LHS`` and the bracketed numerator of the exchange relation between ``C`` and ``B``."""
    palette = palette or Palette.symbolic()
    l_lab = first or palette.labels[0]
    m_lab = second or palette.labels[-1]
    lam, mu = palette.value(l_lab), palette.value(m_lab)
    half = Fraction(1, 2)
    C = DualExpr.gen("C", l_lab)
    B = DualExpr.gen("B", m_lab)
    lhs = (C * B * q_pow(-(lam + mu)) - B * C * q_pow(lam + mu)) * QMQ
    pre = CartanExp({("H", m_lab): lam, ("H", l_lab): mu})
    t1 = CartanExp({("H", l_lab): -half, ("H", m_lab): -half, ("Hp", l_lab): lam, ("Hp", m_lab): -mu})
    t2 = CartanExp({("H", l_lab): half, ("H", m_lab): half, ("Hp", l_lab): -lam, ("Hp", m_lab): mu})
    rhs = DualExpr.cartan(pre * t1) - DualExpr.cartan(pre * t2)
    return lhs, rhs


def check_dual_relations_in_rho(palette: Palette | None = None) -> tuple[CheckTable, CheckTable, CheckTable]:
    """rho-residuals of the commutators, the exchange relations and the C-B relation.

    Returns ``(commutators, exchange, cb_relation)``; the last is reported only.
    """
    palette = palette or Palette.symbolic()
    g = DualExpr.gen
    comm, exch = {}, {}
    for x, y in itertools.product(palette.labels, repeat=2):
        H = lambda c: g("A", c) - g("D", c)
        Hp = lambda c: g("A", c) + g("D", c)
        items = {
            f"[A_{x},B_{y}] - B_{y}": _commutator(g("A", x), g("B", y)) - g("B", y),
            f"[D_{x},B_{y}] + B_{y}": _commutator(g("D", x), g("B", y)) + g("B", y),
            f"[A_{x},C_{y}] + C_{y}": _commutator(g("A", x), g("C", y)) + g("C", y),
            f"[D_{x},C_{y}] - C_{y}": _commutator(g("D", x), g("C", y)) - g("C", y),
            f"[A_{x},D_{y}]": _commutator(g("A", x), g("D", y)),
            f"[H_{x},H_{y}]": _commutator(H(x), H(y)),
        }
        for z in DUAL_LETTERS:
            items[f"[H'_{x},{z}_{y}]"] = _commutator(Hp(x), g(z, y))
        for k, v in items.items():
            comm[k] = rho(v)
        if x != y:
            lx, ly = palette.value(x), palette.value(y)
            exch[f"A_{x}A_{y}"] = rho(g("A", x) * g("A", y) - g("A", y) * g("A", x))
            exch[f"B_{x}B_{y}"] = rho(g("B", x) * g("B", y) - g("B", y) * g("B", x) * q_pow((ly - lx).scale(2)))
            exch[f"C_{x}C_{y}"] = rho(g("C", x) * g("C", y) - g("C", y) * g("C", x) * q_pow((lx - ly).scale(2)))
            exch[f"D_{x}D_{y}"] = rho(g("D", x) * g("D", y) - g("D", y) * g("D", x))
    lhs, rhs = eq30_sides(palette)
    cb = {"C_lambda B_mu": rho(lhs) - rho(rhs)}
    return CheckTable(comm), CheckTable(exch), CheckTable(cb)


# ---------------------------------------------------------------- RLL

def _lift_scalar_matrix(M: RingMatrix) -> RingMatrix:
    return M.map(DualExpr.scalar, zero=DualExpr.zero())


def rll_residual(kind: str, r_colours: tuple[str, str], palette: Palette | None = None) -> RingMatrix:
    """``R12 L_2lambda L_1mu - L_1mu L_2lambda R12`` with ``R12 = R(r_colours)``.

    ``kind`` is ``"++"``, ``"--"`` or ``"+-"`` (``L+`` in slot 2, ``L-`` in slot 1).
    Entries are rho-evaluated, giving a 4x4 matrix of 2x2 blocks flattened to 8x8.
    """
    palette = palette or Palette.symbolic()
    l_lab, m_lab = palette.labels[0], palette.labels[-1]
    R = _lift_scalar_matrix(build_r(palette.value(r_colours[0]), palette.value(r_colours[1])).matrix)
    I = identity(2, DualExpr.one(), DualExpr.zero())
    s2, s1 = kind[0], kind[1]
    L2 = kron(I, build_L(s2, l_lab, palette).entries)
    L1 = kron(build_L(s1, m_lab, palette).entries, I)
    res = matmul(matmul(R, L2), L1) - matmul(matmul(L1, L2), R)
    blocks = [[rho(res[r, s]) for s in range(4)] for r in range(4)]
    return RingMatrix.build(8, 8, lambda i, j: blocks[i // 2][j // 2][i % 2, j % 2])


def check_rll(palette: Palette | None = None) -> dict[tuple[str, str], RingMatrix]:
    """Residuals for every identity and both colour assignments of ``R12``."""
    palette = palette or Palette.symbolic()
    l_lab, m_lab = palette.labels[0], palette.labels[-1]
    out = {}
    for variant in ((l_lab, m_lab), (m_lab, l_lab)):
        for kind in ("++", "--", "+-"):
            out[(kind, f"R({variant[0]},{variant[1]})")] = rll_residual(kind, variant, palette)
    return out
