"""Exact coefficient ring: Laurent sums of ``q`` powers with affine colour exponents.

A :class:`Scalar` is a finite sum ``sum_i r_i * q^(e_i) * cp^(m_i) * cm^(n_i)``
with ``r_i`` rational, ``e_i`` an affine form over the colour symbols and
``cp``/``cm`` two commuting unit symbols standing for the free constants
c+ and c-.  Everything is kept in canonical form so that equality of
scalars is structural.

Text format (used by the CLI and reports)::

    q^(1 - lambda + mu) - q^(-1)
    2/3*q^(lambda)*cp^(-1)*cm
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

__all__ = [
    "Exponent",
    "Scalar",
    "NotAUnit",
    "NonIntegralExponent",
    "NonlinearExponent",
    "ScalarParseError",
    "UNITS",
    "ZERO",
    "ONE",
    "Q",
    "q_pow",
    "parse_affine",
    "parse_scalar",
    "colourless",
    "monochromatic",
    "random_scalar",
]

Rational = Union[int, Fraction]

# c+ and c- of the L-functionals; s = cp^-1 * cm
UNITS = ("cp", "cm")
_RESERVED = {"q", *UNITS}


class NotAUnit(ArithmeticError):
    pass


class NonIntegralExponent(ArithmeticError):
    pass


class NonlinearExponent(ValueError):
    pass


class ScalarParseError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Exponent:
    """Affine form ``const + sum_c coeff_c * c`` over colour symbols."""

    __slots__ = ("const", "colours", "_hash")

    def __init__(self, const: Rational = 0, colours: Mapping[str, Rational] | Iterable = ()):
        items = colours.items() if isinstance(colours, Mapping) else colours
        merged: dict[str, Fraction] = {}
        for name, c in items:
            if name in _RESERVED:
                raise ValueError(f"{name!r} is reserved and cannot be a colour")
            merged[name] = merged.get(name, Fraction(0)) + _frac(c)
        self.const = _frac(const)
        self.colours = tuple(sorted((k, v) for k, v in merged.items() if v))
        self._hash = hash((self.const, self.colours))

    @classmethod
    def _raw(cls, const: Fraction, colours: tuple) -> "Exponent":
        obj = cls.__new__(cls)
        obj.const = const
        obj.colours = colours
        obj._hash = hash((const, colours))
        return obj

    @classmethod
    def colour(cls, name: str, coeff: Rational = 1) -> "Exponent":
        return cls(0, {name: coeff})

    @classmethod
    def coerce(cls, value) -> "Exponent":
        if isinstance(value, Exponent):
            return value
        if isinstance(value, str):
            return parse_affine(value)
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot interpret {value!r} as an exponent")

    @property
    def colour_part(self) -> dict[str, Fraction]:
        return dict(self.colours)

    def is_zero(self) -> bool:
        return not self.const and not self.colours

    def is_constant(self) -> bool:
        return not self.colours

    def __eq__(self, other):
        if not isinstance(other, Exponent):
            return NotImplemented
        return self.const == other.const and self.colours == other.colours

    def __hash__(self):
        return self._hash

    def __add__(self, other: "Exponent") -> "Exponent":
        if not other.colours:
            if not other.const:
                return self
            return Exponent._raw(self.const + other.const, self.colours)
        if not self.colours:
            return Exponent._raw(self.const + other.const, other.colours)
        merged = dict(self.colours)
        for k, v in other.colours:
            s = merged.get(k, 0) + v
            if s:
                merged[k] = s
            else:
                del merged[k]
        return Exponent._raw(self.const + other.const, tuple(sorted(merged.items())))

    def __neg__(self) -> "Exponent":
        return Exponent._raw(-self.const, tuple((k, -v) for k, v in self.colours))

    def __sub__(self, other: "Exponent") -> "Exponent":
        return self + (-other)

    def scale(self, factor: Rational) -> "Exponent":
        f = _frac(factor)
        if not f:
            return Exponent()
        return Exponent._raw(self.const * f, tuple((k, v * f) for k, v in self.colours))

    def substitute(self, subst: Mapping[str, "Exponent"]) -> "Exponent":
        out = Exponent(self.const)
        for name, coeff in self.colours:
            if name in subst:
                out = out + Exponent.coerce(subst[name]).scale(coeff)
            else:
                out = out + Exponent.colour(name, coeff)
        return out

    def evaluate(self, colours: Mapping[str, Rational]) -> Fraction:
        total = self.const
        for name, coeff in self.colours:
            if name not in colours:
                raise KeyError(f"no value supplied for colour {name!r}")
            total += coeff * _frac(colours[name])
        return total

    def sort_key(self):
        return (self.const, self.colours)

    def __repr__(self):
        return f"Exponent({str(self)!r})"

    def __str__(self):
        parts: list[str] = []
        for name, c in self.colours:
            parts.append(_fmt_coeff_term(c, name, first=not parts))
        if self.const or not parts:
            c = self.const
            if parts:
                parts.append(f" - {-c}" if c < 0 else f" + {c}")
            else:
                parts.append(str(c))
        return "".join(parts)


def _fmt_coeff_term(c: Fraction, name: str, first: bool) -> str:
    mag = abs(c)
    body = name if mag == 1 else f"{mag}*{name}"
    if first:
        return body if c > 0 else f"-{body}"
    return f" + {body}" if c > 0 else f" - {body}"


# A monomial key is (Exponent, units) with units a sorted tuple of (name, int).
_ZERO_EXP = Exponent()


def _mul_units(u: tuple, v: tuple) -> tuple:
    if not u:
        return v
    if not v:
        return u
    merged = dict(u)
    for k, n in v:
        s = merged.get(k, 0) + n
        if s:
            merged[k] = s
        else:
            del merged[k]
    return tuple(sorted(merged.items()))


class Scalar:
    """Immutable element of the coefficient ring.  Zero is the empty sum."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for key, c in terms.items():
                exp, units = key
                c = _frac(c)
                if c:
                    k = (Exponent.coerce(exp), tuple(sorted((n, int(p)) for n, p in units if p)))
                    clean[k] = clean.get(k, 0) + c
                    if not clean[k]:
                        del clean[k]
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Scalar":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, value: Rational) -> "Scalar":
        v = _frac(value)
        return cls._raw({(_ZERO_EXP, ()): v} if v else {})

    @classmethod
    def monomial(cls, exponent=0, coeff: Rational = 1, units: Mapping[str, int] | None = None) -> "Scalar":
        c = _frac(coeff)
        if not c:
            return cls._raw({})
        u = tuple(sorted((k, int(v)) for k, v in (units or {}).items() if v))
        for k, _ in u:
            if k not in UNITS:
                raise ValueError(f"unknown unit symbol {k!r}")
        return cls._raw({(Exponent.coerce(exponent), u): c})

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.const(value)
        if isinstance(value, str):
            return parse_scalar(value)
        raise TypeError(f"cannot interpret {value!r} as a Scalar")

    # ring structure

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.const(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.const(other)
            else:
                return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                other = Scalar.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                f = _frac(other)
                if not f:
                    return Scalar._raw({})
                return Scalar._raw({k: c * f for k, c in self.terms.items()})
            return NotImplemented
        if not self.terms or not other.terms:
            return Scalar._raw({})
        out: dict = {}
        for (e1, u1), c1 in self.terms.items():
            for (e2, u2), c2 in other.terms.items():
                k = (e1 + e2, _mul_units(u1, u2))
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    del out[k]
        return Scalar._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def invert(self) -> "Scalar":
        """Inverse of a single-term scalar; anything else raises :class:`NotAUnit`."""
        if len(self.terms) != 1:
            raise NotAUnit(f"{self} is not a monomial")
        ((exp, units), c), = self.terms.items()
        return Scalar._raw({(-exp, tuple((k, -n) for k, n in units)): 1 / c})

    # substitution and evaluation

    def colour_substitute(self, subst: Mapping[str, object]) -> "Scalar":
        conv = {k: Exponent.coerce(v) for k, v in subst.items()}
        out: dict = {}
        for (exp, units), c in self.terms.items():
            k = (exp.substitute(conv), units)
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return Scalar._raw(out)

    def unit_substitute(self, values: Mapping[str, "Scalar"]) -> "Scalar":
        """Replace unit symbols (``cp``/``cm``) by scalars; unlisted units stay."""
        out = ZERO
        for (exp, units), c in self.terms.items():
            term = Scalar._raw({(exp, tuple((k, n) for k, n in units if k not in values)): c})
            for k, n in units:
                if k in values:
                    term = term * Scalar.coerce(values[k]) ** n
            out = out + term
        return out

    def specialize(self, q_val, colours: Mapping[str, Rational] | None = None,
                   units: Mapping[str, object] | None = None, *, sqrt: bool = False):
        """Evaluate at a numeric point.

        ``q_val`` may be an exact rational or a float.  In exact mode every
        substituted exponent must be an integer; pass ``sqrt=True`` to read
        ``q_val`` as ``t`` with ``q = t**2`` so half-integer exponents stay exact.
        Units default to 1.
        """
        colours = colours or {}
        units = units or {}
        exact = not isinstance(q_val, float)
        if exact:
            q_val = _frac(q_val)
        total = Fraction(0) if exact else 0.0
        for (exp, us), c in self.terms.items():
            e = exp.evaluate(colours)
            if sqrt:
                e = 2 * e
            if exact:
                val = c * _exact_power(q_val, e, exp)
            else:
                val = float(c) * q_val ** float(e)
            for k, n in us:
                u = units.get(k, 1)
                val = val * (_frac(u) if exact else float(u)) ** n
            total += val
        return total

    def colours(self) -> set[str]:
        return {name for (exp, _), _c in self.terms.items() for name, _v in exp.colours}

    # presentation

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0].sort_key(), kv[0][1]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (exp, units), c in self.sorted_terms():
            factors = []
            if not exp.is_zero():
                factors.append("q" if exp == _ONE_EXP else f"q^({exp})")
            for name, n in units:
                factors.append(name if n == 1 else f"{name}^({n})")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = f"{mag}*" + "*".join(factors)
            if not out:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(out)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


_ONE_EXP = Exponent(1)
ZERO = Scalar._raw({})
ONE = Scalar.const(1)
Q = Scalar.monomial(1)


def q_pow(exponent) -> Scalar:
    return Scalar.monomial(exponent)


def _exact_root(x: Fraction, n: int) -> Fraction | None:
    def iroot(k: int) -> int | None:
        r = round(k ** (1.0 / n))
        for cand in (r - 1, r, r + 1):
            if cand >= 0 and cand ** n == k:
                return cand
        return None

    if x < 0:
        return None
    num, den = iroot(x.numerator), iroot(x.denominator)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _exact_power(base: Fraction, e: Fraction, exp: Exponent) -> Fraction:
    if e.denominator == 1:
        return base ** int(e)
    root = _exact_root(base, e.denominator)
    if root is None:
        raise NonIntegralExponent(f"exponent {exp} evaluates to {e}, not exact at q={base}")
    return root ** e.numerator


def colourless(colours: Iterable[str]) -> dict[str, Exponent]:
    return {c: Exponent() for c in colours}


def monochromatic(colours: Iterable[str], shared: str = "c") -> dict[str, Exponent]:
    return {c: Exponent.colour(shared) for c in colours}


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            break
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", num))
        elif name is not None:
            toks.append(("name", name))
        else:
            toks.append(("op", op))
        pos = m.end()
    return toks


class _AffineParser:
    """Recursive descent over ``+ - * / ( )`` producing an :class:`Exponent`."""

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> Exponent:
        e = self.expr()
        if self.i != len(self.toks):
            raise ScalarParseError(f"trailing input in exponent {self.text!r}")
        return e

    def expr(self) -> Exponent:
        kind, val = self.peek()
        sign = 1
        if (kind, val) == ("op", "-"):
            self.take()
            sign = -1
        elif (kind, val) == ("op", "+"):
            self.take()
        out = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> Exponent:
        out = self.factor()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            rhs = self.factor()
            if op == "*":
                if out.is_constant():
                    out = rhs.scale(out.const)
                elif rhs.is_constant():
                    out = out.scale(rhs.const)
                else:
                    raise NonlinearExponent(f"product of colours in {self.text!r}")
            else:
                if not rhs.is_constant() or not rhs.const:
                    raise NonlinearExponent(f"division by non-constant in {self.text!r}")
                out = out.scale(1 / rhs.const)
        return out

    def factor(self) -> Exponent:
        kind, val = self.take()
        if kind == "num":
            return Exponent(Fraction(val))
        if kind == "name":
            return Exponent.colour(val)
        if (kind, val) == ("op", "("):
            e = self.expr()
            if self.take() != ("op", ")"):
                raise ScalarParseError(f"unbalanced parenthesis in {self.text!r}")
            return e
        if (kind, val) == ("op", "-"):
            return -self.factor()
        raise ScalarParseError(f"unexpected token {val!r} in exponent {self.text!r}")


def parse_affine(text: str) -> Exponent:
    return _AffineParser(text).parse()


def _split_paren(text: str, start: int) -> int:
    depth = 0
    for j in range(start, len(text)):
        if text[j] == "(":
            depth += 1
        elif text[j] == ")":
            depth -= 1
            if depth == 0:
                return j
    raise ScalarParseError(f"unbalanced parenthesis in {text!r}")


def parse_scalar(text: str) -> Scalar:
    """Parse the text format produced by ``str(Scalar)``."""
    s = text.strip()
    if not s:
        raise ScalarParseError("empty scalar")
    # split on top-level + and - that separate terms
    terms: list[tuple[int, str]] = []
    depth = 0
    cur = ""
    sign = 1
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and not (cur.strip().endswith("^") or cur.strip().endswith("*")):
            if cur.strip():
                terms.append((sign, cur.strip()))
            elif ch == "-" and sign == -1:
                raise ScalarParseError(f"double sign in {text!r}")
            sign = 1 if ch == "+" else -1
            cur = ""
        else:
            cur += ch
        i += 1
    if depth:
        raise ScalarParseError(f"unbalanced parenthesis in {text!r}")
    if cur.strip():
        terms.append((sign, cur.strip()))
    out = ZERO
    for sg, body in terms:
        out = out + _parse_term(body).__mul__(sg)
    return out


def _parse_term(body: str) -> Scalar:
    coeff = Fraction(1)
    exp = Exponent()
    units: dict[str, int] = {}
    factors: list[str] = []
    depth = 0
    cur = ""
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            factors.append(cur.strip())
            cur = ""
        else:
            cur += ch
    factors.append(cur.strip())
    for f in factors:
        if not f:
            raise ScalarParseError(f"empty factor in {body!r}")
        m = re.fullmatch(r"(\d+)(?:/(\d+))?", f)
        if m:
            coeff *= Fraction(int(m.group(1)), int(m.group(2) or 1))
            continue
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(.*))?", f, flags=re.S)
        if not m:
            raise ScalarParseError(f"cannot parse factor {f!r}")
        name, power = m.group(1), m.group(2)
        if power is None:
            p = Exponent(1)
        else:
            power = power.strip()
            if power.startswith("(") and _split_paren(power, 0) == len(power) - 1:
                power = power[1:-1]
            p = parse_affine(power)
        if name == "q":
            exp = exp + p
        elif name in UNITS:
            if not p.is_constant() or p.const.denominator != 1:
                raise ScalarParseError(f"unit {name} needs an integer power")
            units[name] = units.get(name, 0) + int(p.const)
        else:
            raise ScalarParseError(f"unknown symbol {name!r} in {body!r}")
    return Scalar.monomial(exp, coeff, units)


# ---------------------------------------------------------------- test corpus

def random_scalar(rng: random.Random, colours: Iterable[str] = ("lambda", "mu"),
                  max_terms: int = 3, units: bool = True) -> Scalar:
    """Small random scalar with half-integer q-exponents, for property tests."""
    colours = list(colours)
    out = ZERO
    for _ in range(rng.randint(0, max_terms)):
        cols = {c: rng.randint(-2, 2) for c in colours if rng.random() < 0.6}
        exp = Exponent(Fraction(rng.randint(-4, 4), rng.choice((1, 2))), cols)
        us = {}
        if units and rng.random() < 0.3:
            us = {rng.choice(UNITS): rng.choice((-1, 1))}
        out = out + Scalar.monomial(exp, Fraction(rng.randint(-5, 5), rng.randint(1, 3)), us)
    return out
