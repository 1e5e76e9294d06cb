"""Suite configuration, the check registry and verification reports."""

from __future__ import annotations

import dataclasses
import hashlib
import io
import itertools
import json
import os
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Mapping, TextIO

import tomli

from .calculus import FORMS, Calculus
from .dual import (
    UnsupportedWord,
    check_antipode_L,
    check_dual_hopf,
    check_dual_relations_in_rho,
    check_L_pairing,
    check_pairing_well_defined,
    dual_words,
    pair,
    pair_split,
    rll_residual,
)
from .frt import (
    LETTERS,
    GroupAlgebra,
    Palette,
    expand_rtt,
    expand_rtt_index_loop,
    paper_r_fit,
    relation_set,
    standard_glq2_relations,
)
from .linalg import RingMatrix, matmul, slot_embed
from .ncpoly import Generator, NCPoly
from .oracle import fourth_root, numeric_verdicts, palette_symbols, random_points
from .rewriting import DEFAULT_STEP_BUDGET, confluence_probe
from .rmatrix import build_r, check_braided_ybe, check_cqybe
from .scalar import Q, Exponent, ScalarParseError, parse_affine, parse_scalar

__all__ = [
    "ParseError",
    "ValidationError",
    "SuiteConfig",
    "parse_config",
    "config_from_mapping",
    "Check",
    "CheckResult",
    "VerificationReport",
    "REGISTRY",
    "SUITES",
    "INJECTABLE",
    "Context",
    "run_suite",
    "run_limits",
    "emit_report",
    "render_tables",
]

SUITES = ("ybe", "rtt", "hopf", "duality", "rll", "calculus", "oracle")
INJECTABLE = ("ybe.cqybe", "hopf.antipode", "calculus.omega_table")
ORDERS = ("letter", "colour")

ANCHOR_GROUP = "The Coloured Quantum Group GL_q^{lambda,mu}(2)"
ANCHOR_DUAL = "The Dual Algebra for GL_q^{lambda,mu}(2)"
ANCHOR_L = "Coloured L^{+-} functionals"
ANCHOR_RLL = "Coloured RLL relations"
ANCHOR_FORMS = "One-forms"
ANCHOR_FIELDS = "Vector fields"
ANCHOR_D = "Exterior derivatives"
ANCHOR_ORACLE = "exact specialization cross-check"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class ValidationError(ValueError):
    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key


# ---------------------------------------------------------------- configuration

@dataclass(frozen=True)
class SuiteConfig:
    palette: tuple[str, ...] = ("lambda", "mu")
    colours: tuple[tuple[str, str], ...] = ()  # label -> affine value; symbolic when absent
    q_specializations: tuple[Fraction, ...] = ()
    colour_specializations: tuple[tuple[tuple[str, Fraction], ...], ...] = ()
    c_plus: str = "1"
    c_minus: str = "1"
    order: str = "letter"
    step_budget: int = DEFAULT_STEP_BUDGET
    rll_variants: tuple[tuple[str, str], ...] = ()  # both assignments when empty
    seed: int = 0
    points: int = 3
    inject: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "palette": list(self.palette),
            "colours": dict(self.colours),
            "q_specializations": [str(x) for x in self.q_specializations],
            "colour_specializations": [{k: str(v) for k, v in d} for d in self.colour_specializations],
            "c_plus": self.c_plus,
            "c_minus": self.c_minus,
            "order": self.order,
            "step_budget": self.step_budget,
            "rll_variants": [f"{x},{y}" for x, y in self.rll_variants],
            "seed": self.seed,
            "points": self.points,
            "inject": list(self.inject),
        }

    @property
    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    def with_colours(self, assignment: Mapping[str, str]) -> "SuiteConfig":
        merged = dict(self.colours)
        merged.update(assignment)
        return config_from_mapping({**self.to_dict(), "colours": merged})

    @cached_property
    def palette_object(self) -> Palette:
        values = dict(self.colours)
        return Palette(self.palette, tuple(parse_affine(values[n]) if n in values else Exponent.colour(n)
                                           for n in self.palette))


_LINE = re.compile(r"line (\d+)")


def parse_config(path: str | os.PathLike) -> SuiteConfig:
    """Read a TOML suite configuration; absent keys take their defaults."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        data = tomli.loads(raw.decode("utf-8"))
    except tomli.TOMLDecodeError as exc:
        line = getattr(exc, "lineno", None)
        if line is None:
            m = _LINE.search(str(exc))
            line = int(m.group(1)) if m else None
        raise ParseError(getattr(exc, "msg", str(exc)), line) from None
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8 text: {exc}") from None
    return config_from_mapping(data)


def _rational(key: str, v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ValidationError(key, f"{v!r} is not an exact rational (write it as a string such as \"3/2\")")
    try:
        return Fraction(v)
    except (TypeError, ValueError):
        raise ValidationError(key, f"{v!r} is not a rational") from None


def config_from_mapping(data: Mapping, env: Mapping[str, str] | None = None) -> SuiteConfig:
    """Validate a decoded mapping; ``CQG_STEP_BUDGET`` in ``env`` overrides the budget."""
    env = os.environ if env is None else env
    known = {f.name for f in dataclasses.fields(SuiteConfig)}
    for key in data:
        if key not in known:
            raise ValidationError(key, "unknown key")
    out: dict = {}

    palette = data.get("palette", ["lambda", "mu"])
    if (not isinstance(palette, list) or not palette
            or not all(isinstance(n, str) and n.isidentifier() for n in palette)):
        raise ValidationError("palette", "expected a non-empty list of colour names")
    if len(set(palette)) != len(palette):
        raise ValidationError("palette", "colour names must be distinct")
    out["palette"] = tuple(palette)

    colours = data.get("colours", {})
    if not isinstance(colours, Mapping):
        raise ValidationError("colours", "expected a table of name = value")
    pairs = []
    for name, value in colours.items():
        if name not in palette:
            raise ValidationError(f"colours.{name}", "not a palette colour")
        text = str(value) if isinstance(value, (int, str)) and not isinstance(value, bool) else None
        if text is None:
            raise ValidationError(f"colours.{name}", f"{value!r} is not an affine colour expression")
        try:
            parse_affine(text)
        except (ScalarParseError, ValueError) as exc:
            raise ValidationError(f"colours.{name}", str(exc)) from None
        pairs.append((name, text))
    out["colours"] = tuple(pairs)

    qs = data.get("q_specializations", [])
    if not isinstance(qs, list):
        raise ValidationError("q_specializations", "expected a list")
    q_vals = []
    for v in qs:
        x = _rational("q_specializations", v)
        if fourth_root(x) is None or x == 1:
            raise ValidationError("q_specializations", f"{x} must be a positive fourth power other than 1")
        q_vals.append(x)
    out["q_specializations"] = tuple(q_vals)

    cs = data.get("colour_specializations", [])
    if not isinstance(cs, list) or not all(isinstance(d, Mapping) for d in cs):
        raise ValidationError("colour_specializations", "expected a list of tables")
    spec = []
    for d in cs:
        items = []
        for k, v in d.items():
            x = _rational(f"colour_specializations.{k}", v)
            if (2 * x).denominator != 1:
                raise ValidationError(f"colour_specializations.{k}", f"{x} must be a multiple of 1/2")
            items.append((k, x))
        spec.append(tuple(items))
    out["colour_specializations"] = tuple(spec)

    for key in ("c_plus", "c_minus"):
        v = data.get(key, "1")
        if isinstance(v, int) and not isinstance(v, bool):
            v = str(v)
        if not isinstance(v, str):
            raise ValidationError(key, "expected a scalar string")
        try:
            s = parse_scalar(v)
        except (ScalarParseError, ValueError) as exc:
            raise ValidationError(key, str(exc)) from None
        if not s.is_monomial():
            raise ValidationError(key, "must be an invertible monomial")
        out[key] = v

    order = data.get("order", "letter")
    if order not in ORDERS:
        raise ValidationError("order", f"expected one of {', '.join(ORDERS)}")
    out["order"] = order

    budget = data.get("step_budget", DEFAULT_STEP_BUDGET)
    if "CQG_STEP_BUDGET" in env:
        try:
            budget = int(env["CQG_STEP_BUDGET"])
        except ValueError:
            raise ValidationError("CQG_STEP_BUDGET", "expected an integer") from None
        if budget <= 0:
            raise ValidationError("CQG_STEP_BUDGET", "must be positive")
    if isinstance(budget, bool) or not isinstance(budget, int) or budget <= 0:
        raise ValidationError("step_budget", "must be a positive integer")
    out["step_budget"] = budget

    variants = []
    for v in data.get("rll_variants", []):
        parts = [x.strip() for x in str(v).split(",")]
        if len(parts) != 2 or not all(p in palette[:2] for p in parts):
            raise ValidationError("rll_variants", f"{v!r} is not 'x,y' with x, y among the first two colours")
        variants.append(tuple(parts))
    out["rll_variants"] = tuple(variants)

    for key in ("seed", "points"):
        v = data.get(key, 0 if key == "seed" else 3)
        if isinstance(v, bool) or not isinstance(v, int) or (key == "points" and v <= 0):
            raise ValidationError(key, "expected a positive integer" if key == "points" else "expected an integer")
        out[key] = v

    inject = data.get("inject", [])
    for v in inject:
        if v not in INJECTABLE:
            raise ValidationError("inject", f"{v!r} cannot be injected; choose from {', '.join(INJECTABLE)}")
    out["inject"] = tuple(inject)
    return SuiteConfig(**out)


# ---------------------------------------------------------------- checks

@dataclass(frozen=True)
class Outcome:
    ok: bool
    residual_terms: int = 0
    detail: str = ""


@dataclass(frozen=True)
class Check:
    id: str
    suite: str
    anchor: str
    expect: str  # "pass" or "reported"
    run: Callable[["Context"], Outcome]


@dataclass(frozen=True)
class CheckResult:
    id: str
    status: str
    anchor: str
    residual_terms: int
    ms: int
    detail: str = ""

    def to_json(self) -> dict:
        return {"id": self.id, "status": self.status, "anchor": self.anchor,
                "residual_terms": self.residual_terms, "ms": self.ms}


@dataclass
class VerificationReport:
    suite: str
    config_hash: str
    checks: list[CheckResult] = field(default_factory=list)
    extra_text: str = ""

    @property
    def exit_code(self) -> int:
        return int(any(c.status == "fail" for c in self.checks))

    def status(self, check_id: str) -> str:
        return next(c.status for c in self.checks if c.id == check_id)

    def result(self, check_id: str) -> CheckResult:
        return next(c for c in self.checks if c.id == check_id)

    def to_json(self) -> dict:
        return {"suite": self.suite, "config_hash": self.config_hash,
                "checks": [c.to_json() for c in self.checks]}


def _terms(x) -> int:
    if isinstance(x, RingMatrix):
        return sum(_terms(e) for e in x.entries)
    if hasattr(x, "terms"):
        return len(x.terms)
    if isinstance(x, (int, Fraction)):
        return int(x != 0)
    return int(bool(x))


def _table(tab, what: str = "") -> Outcome:
    failing = tab.failing()
    detail = f"{len(tab.residuals) - len(failing)}/{len(tab.residuals)} zero"
    if failing:
        detail += f"; first nonzero: {failing[0]}"
    return Outcome(tab.passed, tab.residual_terms(), detail)


class Context:
    """Lazily built objects shared by the checks of one run."""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self._outcomes: dict[str, Outcome] = {}

    def injected(self, check_id: str) -> bool:
        return check_id in self.cfg.inject

    @cached_property
    def palette(self) -> Palette:
        return self.cfg.palette_object

    @cached_property
    def pair_palette(self) -> Palette:
        return self.palette.leading(2)

    @cached_property
    def algebra(self) -> GroupAlgebra:
        return GroupAlgebra(self.palette, major=self.cfg.order, step_budget=self.cfg.step_budget)

    @cached_property
    def pair_algebra(self) -> GroupAlgebra:
        if len(self.palette) <= 2:
            return self.algebra
        return GroupAlgebra(self.pair_palette, major=self.cfg.order, step_budget=self.cfg.step_budget)

    @cached_property
    def hopf(self):
        return self.algebra.check_group_hopf(sign_flip=self.injected("hopf.antipode"))

    @cached_property
    def units(self) -> dict:
        return {"cp": parse_scalar(self.cfg.c_plus), "cm": parse_scalar(self.cfg.c_minus)}

    @cached_property
    def calculus(self) -> Calculus:
        corrupt = ("1", "a", "1") if self.injected("calculus.omega_table") else None
        return Calculus(self.pair_palette, self.pair_algebra, corrupt=corrupt)

    @cached_property
    def tables(self):
        return self.calculus.compare_printed()

    @cached_property
    def leibniz(self):
        return self.calculus.leibniz_sweep()

    @cached_property
    def rho_tables(self):
        return check_dual_relations_in_rho(self.pair_palette)

    def outcome(self, check: Check) -> Outcome:
        if check.id not in self._outcomes:
            self._outcomes[check.id] = check.run(self)
        return self._outcomes[check.id]


# -- ybe

def _three(ctx: Context) -> tuple[Exponent, ...]:
    vals = list(ctx.palette.values)
    for spare in ("nu", "kappa", "sigma"):
        if len(vals) >= 3:
            break
        vals.append(Exponent.colour(spare))
    return tuple(vals[:3])


def _ybe_cqybe(ctx: Context) -> Outcome:
    l, m, n = _three(ctx)
    if ctx.injected("ybe.cqybe"):
        # R12 built with its colours exchanged
        r12 = slot_embed(build_r(m, l).matrix, "12")
        r13 = slot_embed(build_r(l, n).matrix, "13")
        r23 = slot_embed(build_r(m, n).matrix, "23")
        res = matmul(matmul(r12, r13), r23) - matmul(matmul(r23, r13), r12)
    else:
        res = check_cqybe(l, m, n)
    return Outcome(res.is_zero(), _terms(res), f"8x8 residual, {_terms(res)} terms")


def _ybe_braided(ctx: Context) -> Outcome:
    res = check_braided_ybe(*_three(ctx))
    return Outcome(res.is_zero(), _terms(res), f"8x8 residual, {_terms(res)} terms")


# -- rtt

def _rtt_standard(ctx: Context) -> Outcome:
    lab = ctx.palette.labels[0]
    classical = Palette((lab,), (Exponent(0),))
    alg = GroupAlgebra(classical)
    got = relation_set(expand_rtt(lab, lab, classical), alg.order)
    want = relation_set(standard_glq2_relations(lab), alg.order)
    diff = len(got ^ want)
    return Outcome(diff == 0, diff, f"{len(got)} relations, {len(want)} expected")


def _rtt_index_loop(ctx: Context) -> Outcome:
    bad = 0
    for x, y in ctx.palette.pairs():
        fast = {e for e in expand_rtt(x, y, ctx.palette, dedupe=False) if e}
        slow = {e for e in expand_rtt_index_loop(x, y, ctx.palette) if e}
        bad += len(fast ^ slow)
    return Outcome(bad == 0, bad, f"{len(ctx.palette.pairs())} colour pairs")


def _rtt_confluence(ctx: Context) -> Outcome:
    bad = ctx.algebra.confluence(4)
    n = len(ctx.algebra.rewrite_system.rules)
    return Outcome(not bad, len(bad), f"{n} rules, {len(bad)} unresolved overlaps up to length 4")


def _sample_words(alg: GroupAlgebra, length: int) -> list[tuple]:
    gens = alg.generators()
    return list(itertools.product(gens, repeat=length))


def _rtt_strategy(ctx: Context) -> Outcome:
    rs = ctx.algebra.rewrite_system
    bad = 0
    words = _sample_words(ctx.algebra, 3)
    for w in words:
        p = NCPoly.word(w)
        if rs.normal_form(p) != rs.normal_form(p, "rightmost"):
            bad += 1
    return Outcome(bad == 0, bad, f"{len(words)} words of length 3")


def _rtt_ideal(ctx: Context) -> Outcome:
    alg = ctx.algebra
    bad = 0
    count = 0
    for r in alg.relations:
        for g in alg.generators():
            x = NCPoly.word((g,))
            for p in (x * r, r * x):
                count += 1
                bad += bool(alg.nf(p))
    return Outcome(bad == 0, bad, f"{count} products g*r, r*g reduce to zero")


def _rtt_swap(ctx: Context) -> Outcome:
    pal = ctx.palette
    if len(pal) < 2:
        return Outcome(True, 0, "single colour")
    a, b = pal.labels[0], pal.labels[1]
    swap = {a: b, b: a}
    swapped_pal = Palette(pal.labels, tuple(pal.value(swap.get(l, l)) for l in pal.labels))
    swapped = GroupAlgebra(swapped_pal, major=ctx.cfg.order)
    mine = relation_set(ctx.algebra.relations, ctx.algebra.order)
    theirs = relation_set([r.relabel(swap) for r in swapped.relations], ctx.algebra.order)
    common = len(mine & theirs)
    return Outcome(mine == theirs, len(mine ^ theirs),
                   f"{common}/{len(mine)} interreduced relations invariant under {a}<->{b}")


# -- hopf

def _hopf(name: str):
    def run(ctx: Context) -> Outcome:
        n = ctx.hopf.residual_terms(name)
        items = ctx.hopf.checks[name]
        bad = sum(1 for v in items.values() if v)
        return Outcome(n == 0, n, f"{len(items) - bad}/{len(items)} identities exact")
    return run


def _hopf_det_centrality(ctx: Context) -> Outcome:
    alg = ctx.algebra
    lab = alg.palette.labels[0]
    other = alg.palette.labels[-1]
    D = alg.quantum_det(lab).poly
    g = NCPoly.word((Generator("b", other),))
    comm = alg.nf(D * g - g * D)
    predicted = not alg.palette.value(lab).is_zero()
    exps = {x: alg.det_exchange(lab, Generator(x, other)) for x in LETTERS}
    detail = (f"D_{lab} x = q^e x D_{lab}: " + ", ".join(f"{x}_{other}: e={e}" for x, e in exps.items())
              + f"; [D_{lab}, b_{other}] has {len(comm.terms)} terms")
    return Outcome(bool(comm) == predicted, len(comm.terms), detail)


def _hopf_localized(ctx: Context) -> Outcome:
    bad = confluence_probe(ctx.algebra.localized, 4)
    return Outcome(not bad, len(bad), f"{len(ctx.algebra.localized.rules)} rules with Det, Dinv adjoined")


def _hopf_det_form(ctx: Context) -> Outcome:
    alg = ctx.algebra
    parts = []
    terms = 0
    for lab in alg.palette.labels:
        k = alg.det_coefficients[lab]
        r = paper_r_fit(k, alg.palette.value(lab))
        literal = alg.is_group_like(alg.paper_det(lab, Q))
        terms += len(literal.terms)
        fit = f"r={r}" if r is not None else "no q-power r fits"
        parts.append(f"{lab}: c b coefficient {k} ({fit}); r=q form leaves {len(literal.terms)} terms")
    return Outcome(terms == 0, terms, "; ".join(parts))


def _hopf_antipode_control(ctx: Context) -> Outcome:
    flipped = ctx.algebra.check_group_hopf(sign_flip=True)
    n = flipped.residual_terms("antipode")
    return Outcome(n > 0, n, "antipode with the sign of beta flipped must fail")


# -- duality

def _duality_L(ctx: Context) -> Outcome:
    tab = check_L_pairing(ctx.pair_palette)
    sub = {k: v.map(lambda s: s.unit_substitute(ctx.units)) for k, v in tab.residuals.items()}
    return _table(type(tab)(sub))


def _duality_antipode_L(ctx: Context) -> Outcome:
    return _table(check_antipode_L(ctx.pair_palette))


def _duality_pairing(ctx: Context) -> Outcome:
    rep = check_pairing_well_defined(ctx.pair_algebra)
    detail = f"{rep.checked - len(rep.failures)}/{rep.checked} pairings vanish"
    if rep.failures:
        f = rep.failures[0]
        detail += f"; e.g. <{f.dual}, {f.relation}> = {f.value}"
    return Outcome(rep.passed, len(rep.failures), detail)


def _duality_routes(ctx: Context) -> Outcome:
    alg = ctx.pair_algebra
    gens = alg.generators()
    words = [(g,) for g in gens] + list(itertools.product(gens, repeat=2))
    duals = [e for name, e in dual_words(ctx.pair_palette, 1)]
    bad = 0
    for u in duals:
        for w in words:
            try:
                bad += pair(u, w) != pair_split(u, w)
            except UnsupportedWord:
                pass
    return Outcome(bad == 0, bad, f"{len(duals) * len(words)} pairings by both routes")


def _duality_hopf(ctx: Context) -> Outcome:
    return _table(check_dual_hopf(ctx.pair_palette))


def _duality_comm(ctx: Context) -> Outcome:
    return _table(ctx.rho_tables[0])


def _duality_exchange(ctx: Context) -> Outcome:
    return _table(ctx.rho_tables[1])


def _duality_cb(ctx: Context) -> Outcome:
    return _table(ctx.rho_tables[2])


# -- rll

def _rll(key):
    def run(ctx: Context) -> Outcome:
        kind, variant = key
        M = rll_residual(kind, tuple(variant[2:-1].split(",")), ctx.pair_palette)
        nz = sum(1 for e in M.entries if e)
        return Outcome(M.is_zero(), _terms(M), f"{nz}/64 nonzero entries")
    return run


def _rll_keys(cfg: SuiteConfig) -> list[tuple[str, str]]:
    labels = cfg.palette[:2]
    first, last = labels[0], labels[-1]
    variants = list(cfg.rll_variants) or list(dict.fromkeys([(first, last), (last, first)]))
    return [(kind, f"R({x},{y})") for x, y in variants for kind in ("++", "--", "+-")]


# -- calculus

def _calc_table(table: str):
    def run(ctx: Context) -> Outcome:
        comp = ctx.tables
        bad = [m for m in comp.mismatches if m[0] == table]
        detail = f"{comp.counts[table] - len(bad)}/{comp.counts[table]} entries match"
        if bad:
            _, key, want, got = bad[0]
            detail += f"; {key}: printed {want}, generated {got}"
        return Outcome(not bad, len(bad), detail)
    return run


def _calc_chi_direct(ctx: Context) -> Outcome:
    calc = ctx.calculus
    bad = 0
    for g in calc.algebra.generators():
        a, b = calc.chi_eval(g), calc.chi_direct(g)
        bad += sum(1 for f in FORMS if a[f] != b[f])
    return Outcome(bad == 0, bad, "chi via F and via the L matrices")


def _calc_leibniz(ctx: Context) -> Outcome:
    bad = [k for k, v in ctx.leibniz.items() if v.term_count()]
    detail = f"{len(ctx.leibniz) - len(bad)}/{len(ctx.leibniz)} pairs close"
    if bad:
        detail += f"; first failing pair ({bad[0][0]}, {bad[0][1]})"
    return Outcome(not bad, sum(ctx.leibniz[k].term_count() for k in bad), detail)


def _calc_leibniz_unreduced(ctx: Context) -> Outcome:
    calc = ctx.calculus
    gens = calc.algebra.generators()
    n = sum(calc.leibniz_unreduced(x, y).term_count() for x, y in itertools.product(gens, repeat=2))
    return Outcome(n == 0, n, "Leibniz rule on words before reduction")


def _calc_functional(ctx: Context) -> Outcome:
    res = ctx.calculus.functional_relation_residuals()
    bad = sum(1 for M in res.values() if not M.is_zero())
    return Outcome(bad == 0, bad, f"f vanishes on {len(res) - bad}/{len(res)} defining relations")


def _calc_control(ctx: Context) -> Outcome:
    calc = Calculus(ctx.pair_palette, ctx.pair_algebra, corrupt=("1", "a", "1"))
    n = sum(1 for m in calc.compare_printed().mismatches if m[0] == "omega")
    return Outcome(n > 0, n, "corrupted omega table must disagree with the printed one")


# -- oracle

def _symbolic_verdicts(ctx: Context) -> dict[str, bool]:
    out = {}
    for c in registry(ctx.cfg):
        if c.suite != "oracle":
            out[c.id] = ctx.outcome(c).ok
    return out


def _oracle(i: int):
    def run(ctx: Context) -> Outcome:
        cfg = ctx.cfg
        names = palette_symbols(ctx.palette)
        pt = random_points(cfg.seed, cfg.points, names, cfg.q_specializations,
                           [dict(d) for d in cfg.colour_specializations])[i]
        symbolic = _symbolic_verdicts(ctx)
        numeric = numeric_verdicts(pt, ctx.palette, cfg.order)
        shared = [k for k in numeric if k in symbolic]
        bad = [k for k in shared if numeric[k] != symbolic[k]]
        detail = f"{pt.describe()}: {len(shared) - len(bad)}/{len(shared)} verdicts agree"
        if bad:
            detail += f"; disagree: {', '.join(bad)}"
        return Outcome(not bad, len(bad), detail)
    return run


# ---------------------------------------------------------------- registry

def registry(cfg: SuiteConfig) -> list[Check]:
    """Every check for ``cfg`` in report order."""
    P, R = "pass", "reported"
    out = [
        Check("ybe.cqybe", "ybe", ANCHOR_GROUP, P, _ybe_cqybe),
        Check("ybe.braided", "ybe", ANCHOR_GROUP, P, _ybe_braided),
        Check("rtt.colourless_standard", "rtt", ANCHOR_GROUP, P, _rtt_standard),
        Check("rtt.index_loop_oracle", "rtt", ANCHOR_GROUP, P, _rtt_index_loop),
        Check("rtt.confluence", "rtt", ANCHOR_GROUP, P, _rtt_confluence),
        Check("rtt.strategy_agreement", "rtt", ANCHOR_GROUP, P, _rtt_strategy),
        Check("rtt.ideal_stability", "rtt", ANCHOR_GROUP, P, _rtt_ideal),
        Check("rtt.swap_symmetry", "rtt", ANCHOR_GROUP, R, _rtt_swap),
        Check("hopf.coassociativity", "hopf", ANCHOR_GROUP, P, _hopf("coassociativity")),
        Check("hopf.counit", "hopf", ANCHOR_GROUP, P, _hopf("counit")),
        Check("hopf.coproduct_relations", "hopf", ANCHOR_GROUP, P, _hopf("coproduct_relations")),
        Check("hopf.antipode", "hopf", ANCHOR_GROUP, P, _hopf("antipode")),
        Check("hopf.det_group_like", "hopf", ANCHOR_GROUP, P, _hopf("det_group_like")),
        Check("hopf.det_centrality", "hopf", ANCHOR_GROUP, P, _hopf_det_centrality),
        Check("hopf.localized_confluence", "hopf", ANCHOR_GROUP, P, _hopf_localized),
        Check("hopf.det_paper_form", "hopf", ANCHOR_GROUP, R, _hopf_det_form),
        Check("hopf.antipode_negative_control", "hopf", ANCHOR_GROUP, P, _hopf_antipode_control),
        Check("duality.L_pairing", "duality", ANCHOR_L, P, _duality_L),
        Check("duality.antipode_L", "duality", ANCHOR_L, P, _duality_antipode_L),
        Check("duality.pairing_well_defined", "duality", ANCHOR_DUAL, P, _duality_pairing),
        Check("duality.pairing_routes", "duality", ANCHOR_DUAL, P, _duality_routes),
        Check("duality.dual_hopf", "duality", ANCHOR_L, P, _duality_hopf),
        Check("duality.commutators", "duality", ANCHOR_L, P, _duality_comm),
        Check("duality.exchange", "duality", ANCHOR_L, P, _duality_exchange),
        Check("duality.cb_relation", "duality", ANCHOR_L, R, _duality_cb),
    ]
    for key in _rll_keys(cfg):
        out.append(Check(f"rll.{key[0]}.{key[1]}", "rll", ANCHOR_RLL, R, _rll(key)))
    out += [
        Check("calculus.omega_table", "calculus", ANCHOR_FORMS, P, _calc_table("omega")),
        Check("calculus.chi_table", "calculus", ANCHOR_FIELDS, P, _calc_table("chi")),
        Check("calculus.convolution_table", "calculus", ANCHOR_FIELDS, P, _calc_table("convolution")),
        Check("calculus.d_table", "calculus", ANCHOR_D, P, _calc_table("d")),
        Check("calculus.chi_direct", "calculus", ANCHOR_FIELDS, P, _calc_chi_direct),
        Check("calculus.leibniz", "calculus", ANCHOR_D, P, _calc_leibniz),
        Check("calculus.leibniz_unreduced", "calculus", ANCHOR_D, P, _calc_leibniz_unreduced),
        Check("calculus.functional_relations", "calculus", ANCHOR_FORMS, R, _calc_functional),
        Check("calculus.omega_negative_control", "calculus", ANCHOR_FORMS, P, _calc_control),
    ]
    for i in range(cfg.points):
        out.append(Check(f"oracle.point{i + 1}", "oracle", ANCHOR_ORACLE, P, _oracle(i)))
    return out


REGISTRY = registry(SuiteConfig())


def run_suite(name: str, cfg: SuiteConfig | None = None, ctx: Context | None = None) -> VerificationReport:
    """Run one suite (or ``all``) and collect a report in registry order."""
    cfg = cfg or SuiteConfig()
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES + ('all',))}")
    ctx = ctx or Context(cfg)
    report = VerificationReport(name, cfg.config_hash)
    for check in registry(cfg):
        if name != "all" and check.suite != name:
            continue
        t0 = time.perf_counter()
        out = ctx.outcome(check)
        ms = int(round((time.perf_counter() - t0) * 1000))
        if check.expect == "reported":
            status = "reported"
        else:
            status = "pass" if out.ok else "fail"
        report.checks.append(CheckResult(check.id, status, check.anchor, out.residual_terms, ms, out.detail))
    if name in ("calculus", "all"):
        report.extra_text = render_tables(ctx.calculus)
    return report


# ---------------------------------------------------------------- limits

def _classical_config(cfg: SuiteConfig) -> SuiteConfig:
    lab = cfg.palette[0]
    return config_from_mapping({**cfg.to_dict(), "palette": [lab], "colours": {lab: "0"}, "rll_variants": []})


def run_limits(cfg: SuiteConfig | None = None) -> VerificationReport:
    """Colourless and monochromatic runs compared with the classical pipeline."""
    cfg = cfg or SuiteConfig()
    gating = [s for s in SUITES if s != "oracle"]
    colourless = cfg.with_colours({n: "0" for n in cfg.palette})
    mono = cfg.with_colours({n: "c" for n in cfg.palette})
    classical = _classical_config(cfg)
    report = VerificationReport("limits", cfg.config_hash)

    def add(check_id, anchor, fn, expect="pass"):
        t0 = time.perf_counter()
        out = fn()
        ms = int(round((time.perf_counter() - t0) * 1000))
        status = "reported" if expect == "reported" else ("pass" if out.ok else "fail")
        report.checks.append(CheckResult(check_id, status, anchor, out.residual_terms, ms, out.detail))

    runs = {}

    def verdicts(c: SuiteConfig) -> dict[str, CheckResult]:
        if c not in runs:
            ctx = Context(c)
            runs[c] = {r.id: r for s in gating for r in run_suite(s, c, ctx).checks}
        return runs[c]

    def relations() -> Outcome:
        ctx_c, ctx_k = Context(colourless), Context(classical)
        lab = classical.palette[0]
        fold = {n: lab for n in colourless.palette}
        mine = relation_set([r.relabel(fold) for r in ctx_c.algebra.relations], ctx_k.algebra.order)
        theirs = relation_set(ctx_k.algebra.relations, ctx_k.algebra.order)
        return Outcome(mine == theirs, len(mine ^ theirs),
                       f"colourless relations fold onto {len(theirs)} classical relations")

    def agree() -> Outcome:
        a, b = verdicts(colourless), verdicts(classical)
        shared = [k for k in a if k in b and not k.startswith("rll.")]
        bad = [k for k in shared if a[k].status != b[k].status]
        detail = f"{len(shared) - len(bad)}/{len(shared)} statuses coincide"
        if bad:
            detail += f"; differ: {', '.join(bad)}"
        return Outcome(not bad, len(bad), detail)

    def all_pass(c: SuiteConfig):
        def run() -> Outcome:
            v = verdicts(c)
            bad = [k for k, r in v.items() if r.status == "fail"]
            detail = f"{len(v)} checks, {len(bad)} failing"
            if bad:
                detail += f": {', '.join(bad)}"
            return Outcome(not bad, len(bad), detail)
        return run

    def vanishes(c: SuiteConfig, prefix: str):
        def run() -> Outcome:
            ctx = Context(c)
            items = [ch for ch in registry(c) if ch.id.startswith(prefix)]
            outs = [ctx.outcome(ch) for ch in items]
            n = sum(o.residual_terms for o in outs)
            return Outcome(n == 0, n, f"{sum(o.ok for o in outs)}/{len(outs)} residuals vanish")
        return run

    add("limits.colourless.relations", ANCHOR_GROUP, relations)
    add("limits.colourless.matches_classical", ANCHOR_GROUP, agree)
    add("limits.colourless.all_pass", ANCHOR_GROUP, all_pass(colourless), "reported")
    add("limits.monochromatic.all_pass", ANCHOR_GROUP, all_pass(mono))
    add("limits.monochromatic.cb_relation", ANCHOR_L, vanishes(mono, "duality.cb_relation"))
    add("limits.monochromatic.rll", ANCHOR_RLL, vanishes(mono, "rll."))
    return report


# ---------------------------------------------------------------- output

def _lin(d: Mapping[str, object], suffix: Callable[[str], str]) -> str:
    if not d:
        return "0"
    return " + ".join(f"({v}) {suffix(k)}" for k, v in sorted(d.items()))


def render_tables(calc: Calculus, colour: str | None = None) -> str:
    """Generated calculus tables, one relation per line, in the printed layout."""
    colour = colour or calc.palette.labels[0]
    t = calc.generated_tables(colour)
    form = lambda key: f"{key[0]} omega^{key[2:]}"  # "aw+" -> "a omega^+"
    lines = [f"One-forms (colour {colour})"]
    for letter in LETTERS:
        for f in FORMS:
            lines.append(f"omega^{f} {letter} = {_lin(t['omega'][(f, letter)], form)}")
    lines.append(f"Vector fields (colour {colour})")
    for letter in LETTERS:
        for f in FORMS:
            lines.append(f"chi_{f}({letter}) = {t['chi'][(f, letter)]}")
    for letter in LETTERS:
        for f in FORMS:
            lines.append(f"chi_{f} * {letter} = {_lin(t['convolution'][(f, letter)], lambda k: k)}")
    lines.append(f"Exterior derivatives (colour {colour})")
    for letter in LETTERS:
        lines.append(f"d {letter} = {_lin(t['d'][letter], form)}")
    return "\n".join(lines)


def emit_report(report: VerificationReport, fmt: str = "json", stream: TextIO | None = None) -> str:
    """Render ``report`` as JSON or aligned text; also write it to ``stream`` if given."""
    if fmt == "json":
        text = json.dumps(report.to_json(), indent=2) + "\n"
    elif fmt == "text":
        buf = io.StringIO()
        buf.write(f"suite {report.suite}  config {report.config_hash}\n")
        width = max((len(c.id) for c in report.checks), default=10)
        for c in report.checks:
            buf.write(f"{c.id:<{width}}  {c.status:<8}  terms={c.residual_terms:<5}  {c.ms:>6} ms  "
                      f"[{c.anchor}]  {c.detail}\n")
        counts = {s: sum(c.status == s for c in report.checks) for s in ("pass", "fail", "reported")}
        buf.write(f"{counts['pass']} pass, {counts['fail']} fail, {counts['reported']} reported; "
                  f"exit {report.exit_code}\n")
        if report.extra_text:
            buf.write("\n" + report.extra_text + "\n")
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if stream is not None:
        stream.write(text)
    return text
