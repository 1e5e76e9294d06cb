"""Noncommutative polynomials over :class:`~cqg.scalar.Scalar` and their tensor powers."""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

from .scalar import ONE, Scalar

__all__ = ["Generator", "NCPoly", "Tensor", "gen", "word_str"]


class Generator(NamedTuple):
    letter: str  # a, b, c, d, or the localisation letters Det / Dinv
    colour: str

    def __str__(self):
        return f"{self.letter}_{self.colour}" if self.colour else self.letter


def gen(letter: str, colour: str) -> "NCPoly":
    return NCPoly.word((Generator(letter, colour),))


def word_str(word: tuple) -> str:
    return "*".join(str(g) for g in word) if word else "1"


def _add_into(acc: dict, key, c: Scalar) -> None:
    if not c:
        return
    prev = acc.get(key)
    if prev is None:
        acc[key] = c
    else:
        s = prev + c
        if s:
            acc[key] = s
        else:
            del acc[key]


class NCPoly:
    """Finite sum of words in generators with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        self.terms = {tuple(w): Scalar.coerce(c) for w, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls._raw({})

    @classmethod
    def one(cls) -> "NCPoly":
        return cls._raw({(): ONE})

    @classmethod
    def word(cls, word: Iterable[Generator], coeff=ONE) -> "NCPoly":
        c = Scalar.coerce(coeff)
        return cls._raw({tuple(word): c} if c else {})

    @classmethod
    def coerce(cls, x) -> "NCPoly":
        if isinstance(x, NCPoly):
            return x
        if isinstance(x, (Scalar, int)):
            c = Scalar.coerce(x)
            return cls._raw({(): c} if c else {})
        raise TypeError(f"cannot interpret {x!r} as NCPoly")

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (Scalar, int)):
            other = NCPoly.coerce(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        try:
            other = NCPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(out, w, c)
        return NCPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = NCPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            c = Scalar.coerce(other)
            return NCPoly._raw({w: x * c for w, x in self.terms.items() if x * c})
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(out, w1 + w2, c1 * c2)
        return NCPoly._raw(out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def map_coeffs(self, fn) -> "NCPoly":
        out: dict = {}
        for w, c in self.terms.items():
            _add_into(out, w, fn(c))
        return NCPoly._raw(out)

    def map_words(self, fn) -> "NCPoly":
        out: dict = {}
        for w, c in self.terms.items():
            _add_into(out, tuple(fn(w)), c)
        return NCPoly._raw(out)

    def relabel(self, mapping: Mapping[str, str]) -> "NCPoly":
        """Rename generator colours, e.g. ``{"lambda": "mu", "mu": "lambda"}``."""
        return self.map_words(lambda w: (Generator(g.letter, mapping.get(g.colour, g.colour)) for g in w))

    def reverse(self) -> "NCPoly":
        return self.map_words(lambda w: reversed(w))

    def generators(self) -> set[Generator]:
        return {g for w in self.terms for g in w}

    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def coefficient(self, word: Iterable[Generator]) -> Scalar:
        return self.terms.get(tuple(word), Scalar.const(0))

    def to_str(self, order_key=None) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=(lambda kv: order_key(kv[0])) if order_key else
                       (lambda kv: (len(kv[0]), [str(g) for g in kv[0]])), reverse=True)
        parts = []
        for w, c in items:
            cs = str(c)
            if len(c.terms) > 1:
                cs = f"({cs})"
            body = word_str(w) if cs == "1" else (cs if not w else f"{cs}*{word_str(w)}")
            if cs.startswith("-") and len(c.terms) == 1:
                body = body[1:]
                parts.append(f" - {body}" if parts else f"-{body}")
            else:
                parts.append(f" + {body}" if parts else body)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"NCPoly({self.to_str()!r})"


class Tensor:
    """Element of a tensor power of the free algebra: tuples of words -> Scalar."""

    __slots__ = ("legs", "terms")

    def __init__(self, legs: int, terms: Mapping[tuple, Scalar] | None = None):
        self.legs = legs
        self.terms = {}
        for k, c in (terms or {}).items():
            if len(k) != legs:
                raise ValueError("wrong number of legs")
            _add_into(self.terms, tuple(tuple(w) for w in k), Scalar.coerce(c))

    @classmethod
    def _raw(cls, legs: int, terms: dict) -> "Tensor":
        obj = cls.__new__(cls)
        obj.legs = legs
        obj.terms = terms
        return obj

    @classmethod
    def pure(cls, *factors: NCPoly) -> "Tensor":
        out: dict = {(): ONE}
        for f in factors:
            nxt: dict = {}
            for k, c in out.items():
                for w, d in f.terms.items():
                    _add_into(nxt, k + (w,), c * d)
            out = nxt
        return cls._raw(len(factors), out)

    @classmethod
    def one(cls, legs: int) -> "Tensor":
        return cls._raw(legs, {((),) * legs: ONE})

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.legs == other.legs and self.terms == other.terms

    def __add__(self, other: "Tensor") -> "Tensor":
        out = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(out, k, c)
        return Tensor._raw(self.legs, out)

    def __neg__(self):
        return Tensor._raw(self.legs, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int)):
            c = Scalar.coerce(other)
            out: dict = {}
            for k, x in self.terms.items():
                _add_into(out, k, x * c)
            return Tensor._raw(self.legs, out)
        if not isinstance(other, Tensor):
            return NotImplemented
        if other.legs != self.legs:
            raise ValueError("leg count mismatch")
        out = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                _add_into(out, tuple(a + b for a, b in zip(k1, k2)), c1 * c2)
        return Tensor._raw(self.legs, out)

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int)):
            return self * other
        return NotImplemented

    def map_legs(self, fn) -> "Tensor":
        """Apply ``fn(word) -> NCPoly`` to every leg and expand."""
        out: dict = {}
        cache: dict = {}
        for key, c in self.terms.items():
            parts: dict = {(): c}
            for w in key:
                image = cache.get(w)
                if image is None:
                    image = cache[w] = fn(w)
                nxt: dict = {}
                for k, x in parts.items():
                    for w2, d in image.terms.items():
                        _add_into(nxt, k + (w2,), x * d)
                parts = nxt
            for k, x in parts.items():
                _add_into(out, k, x)
        return Tensor._raw(self.legs, out)

    def contract(self, fn_per_leg) -> Scalar | NCPoly:
        """Sum over terms of the product of ``fn_per_leg[i](word_i)`` (left to right)."""
        total = None
        for key, c in self.terms.items():
            val = c
            for f, w in zip(fn_per_leg, key):
                val = val * f(w) if not isinstance(val, Scalar) else _scalar_times(val, f(w))
                if not val:
                    break
            total = val if total is None else total + val
        return total if total is not None else Scalar.const(0)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in sorted(self.terms.items(), key=lambda kv: [word_str(w) for w in kv[0]]):
            parts.append(f"({c})*" + " (x) ".join(word_str(w) for w in key))
        return " + ".join(parts)

    __repr__ = __str__


def _scalar_times(c: Scalar, x):
    if isinstance(x, Scalar):
        return c * x
    return x * c
