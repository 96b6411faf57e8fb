"""Restricted Weyl algebra in normal-ordered canonical form.

An element is a finite sum of terms ``coef * e^(a*t) * v1^p1 ... * d[v1]^k1
... * d[t]^m`` over a declared variable set.  Multiplication reorders all
derivative factors to the right using

    d[v]^a v^p   = sum_k  C(a,k) p(p-1)...(p-k+1) v^(p-k) d[v]^(a-k)
    d[t]^a e^(ct) = sum_k C(a,k) c^k e^(ct) d[t]^(a-k)

with the falling factorial valid for rational exponents p; distinct
variables commute.  Canonical form (sorted term map, no zero coefficients,
no zero exponents) makes equality a structural check.

Elements are immutable after construction and every operation is a pure
function, so values are safe to share across threads.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian

from .scalar import COEF_ONE, COEF_ZERO, Coef, as_fraction, coef

NAT = "nat"   # exponents in {0, 1, 2, ...}
INT = "int"   # exponents in Z
RAT = "rat"   # exponents in Q

_RESERVED_NAMES = {"e", "d", "t"}


class DomainViolation(ValueError):
    """An exponent left the declared domain of its variable."""


class ZeroScaleFactor(ValueError):
    """A dilation substitution was given a zero scale factor."""


class NonIntegerTimeWeight(ValueError):
    """The time reparametrization produced a non-integer power of tau."""


@dataclass(frozen=True)
class VarTable:
    """Ordered variable set with per-variable exponent domains.

    ``has_time`` enables the distinguished time variable t, carried by
    elements as exponential weights e^(a*t) together with d[t].
    """

    names: tuple[str, ...]
    domains: tuple[str, ...]
    has_time: bool = False

    def __post_init__(self):
        if len(self.names) != len(set(self.names)):
            raise ValueError("variable names must be unique")
        if len(self.names) != len(self.domains):
            raise ValueError("one domain per variable required")
        for n in self.names:
            if n in _RESERVED_NAMES:
                raise ValueError(f"variable name {n!r} is reserved")
        for d in self.domains:
            if d not in (NAT, INT, RAT):
                raise ValueError(f"unknown exponent domain {d!r}")

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def check_power(self, idx: int, p: Fraction) -> None:
        dom = self.domains[idx]
        if dom == RAT:
            return
        if p.denominator != 1:
            raise DomainViolation(
                f"non-integer exponent {p} for variable {self.names[idx]!r}")
        if dom == NAT and p < 0:
            raise DomainViolation(
                f"negative exponent {p} for variable {self.names[idx]!r}")

    def widened(self, name: str, domain: str = RAT) -> "VarTable":
        """Copy of this table with one variable's exponent domain relaxed."""
        i = self.index(name)
        doms = list(self.domains)
        doms[i] = domain
        return VarTable(self.names, tuple(doms), self.has_time)


@dataclass(frozen=True, eq=True)
class Monomial:
    """e^(weight*t) times a product of variable powers.

    ``powers`` holds (variable index, exponent) pairs sorted by index with
    no zero exponents.
    """

    weight: Fraction
    powers: tuple[tuple[int, Fraction], ...]

    def power_of(self, idx: int) -> Fraction:
        for i, p in self.powers:
            if i == idx:
                return p
        return Fraction(0)


@dataclass(frozen=True, eq=True)
class DerivIndex:
    """Derivative multi-index: (variable index, order) pairs plus d[t] order."""

    orders: tuple[tuple[int, int], ...]
    t_order: int

    def is_empty(self) -> bool:
        return not self.orders and not self.t_order


MON_ONE = Monomial(Fraction(0), ())
DER_NONE = DerivIndex((), 0)


def _mk_monomial(weight: Fraction, powers: dict[int, Fraction]) -> Monomial:
    items = tuple(sorted((i, p) for i, p in powers.items() if p))
    return Monomial(weight, items)


def _mk_deriv(orders: dict[int, int], t_order: int) -> DerivIndex:
    items = tuple(sorted((i, k) for i, k in orders.items() if k))
    return DerivIndex(items, t_order)


def falling(p: Fraction, k: int) -> Fraction:
    """Falling factorial p(p-1)...(p-k+1); exact for rational p."""
    out = Fraction(1)
    for i in range(k):
        out *= p - i
    return out


def _term_sort_key(key: tuple[Monomial, DerivIndex]):
    mon, der = key
    return (der.t_order, der.orders, mon.weight, mon.powers)


class WeylElement:
    """Canonical normal-ordered operator: a term map (Monomial, DerivIndex) -> Coef."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable,
                 terms: dict[tuple[Monomial, DerivIndex], Coef] | None = None,
                 _checked: bool = False):
        self.table = table
        cleaned: dict[tuple[Monomial, DerivIndex], Coef] = {}
        for key, c in (terms or {}).items():
            if c.is_zero():
                continue
            if not _checked:
                mon, der = key
                if mon.weight and not table.has_time:
                    raise DomainViolation("exponential weight in a table without time")
                if der.t_order and not table.has_time:
                    raise DomainViolation("d[t] in a table without time")
                for i, p in mon.powers:
                    table.check_power(i, p)
            cleaned[key] = c
        self.terms = cleaned

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def zero(table: VarTable) -> "WeylElement":
        return WeylElement(table, {}, _checked=True)

    @staticmethod
    def const(table: VarTable, value) -> "WeylElement":
        c = coef(value)
        if c.is_zero():
            return WeylElement.zero(table)
        return WeylElement(table, {(MON_ONE, DER_NONE): c}, _checked=True)

    @staticmethod
    def var(table: VarTable, name: str, power=1) -> "WeylElement":
        p = as_fraction(power)
        i = table.index(name)
        table.check_power(i, p)
        mon = _mk_monomial(Fraction(0), {i: p})
        return WeylElement(table, {(mon, DER_NONE): COEF_ONE}, _checked=True)

    @staticmethod
    def deriv(table: VarTable, name: str, order: int = 1) -> "WeylElement":
        i = table.index(name)
        der = _mk_deriv({i: order}, 0)
        return WeylElement(table, {(MON_ONE, der): COEF_ONE}, _checked=True)

    @staticmethod
    def time_deriv(table: VarTable, order: int = 1) -> "WeylElement":
        if not table.has_time:
            raise DomainViolation("d[t] in a table without time")
        return WeylElement(table, {(MON_ONE, DerivIndex((), order)): COEF_ONE},
                           _checked=True)

    @staticmethod
    def exp_t(table: VarTable, weight) -> "WeylElement":
        w = as_fraction(weight)
        if not table.has_time:
            raise DomainViolation("exponential weight in a table without time")
        return WeylElement(table, {(Monomial(w, ()), DER_NONE): COEF_ONE},
                           _checked=True)

    # -- predicates -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar_function(self) -> bool:
        """True when no term carries a derivative factor."""
        return all(der.is_empty() for _, der in self.terms)

    def constant_value(self) -> Coef | None:
        """The Coef value of a constant element (possibly zero), else None."""
        if not self.terms:
            return COEF_ZERO
        if len(self.terms) == 1:
            (key, c), = self.terms.items()
            if key == (MON_ONE, DER_NONE):
                return c
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        if self.table != other.table:
            return False
        if self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[k] == other.terms[k] for k in self.terms)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- linear structure ------------------------------------------------------

    def _require_same_table(self, other: "WeylElement") -> None:
        if self.table != other.table:
            raise ValueError("elements live over different variable tables")

    def __add__(self, other: "WeylElement") -> "WeylElement":
        self._require_same_table(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
        return WeylElement(self.table, out, _checked=True)

    def __neg__(self) -> "WeylElement":
        return WeylElement(self.table, {k: -c for k, c in self.terms.items()},
                           _checked=True)

    def __sub__(self, other: "WeylElement") -> "WeylElement":
        return self + (-other)

    def scaled(self, value) -> "WeylElement":
        c = coef(value)
        if c.is_zero():
            return WeylElement.zero(self.table)
        return WeylElement(self.table, {k: v * c for k, v in self.terms.items()},
                           _checked=True)

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return mul(self, other)
        if isinstance(other, (int, Fraction, Coef)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Coef)):
            return self.scaled(other)
        return NotImplemented

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: _term_sort_key(kv[0]),
                      reverse=True)

    def text(self) -> str:
        return element_to_text(self)

    def __repr__(self) -> str:  # pragma: no cover
        return f"WeylElement({self.text()})"


# ---------------------------------------------------------------------------
# products

def _reorder_options(table: VarTable, der: DerivIndex, mon: Monomial):
    """All ways of passing the derivative block ``der`` through ``mon``.

    Yields (rational factor, picked-up monomial, remaining derivative).
    """
    choices = []
    for i, a in der.orders:
        p = mon.power_of(i)
        if p == 0:
            choices.append([(i, 0, a, Fraction(1))])
            continue
        opts = []
        for k in range(a + 1):
            f = Fraction(math.comb(a, k)) * falling(p, k)
            if f:
                opts.append((i, k, a - k, f))
        choices.append(opts)
    if der.t_order:
        a, w = der.t_order, mon.weight
        if w == 0:
            choices.append([(-1, 0, a, Fraction(1))])
        else:
            choices.append([(-1, k, a - k, Fraction(math.comb(a, k)) * w**k)
                            for k in range(a + 1)])
    if not choices:
        yield Fraction(1), mon, DER_NONE
        return
    base_powers = dict(mon.powers)
    for combo in cartesian(*choices):
        factor = Fraction(1)
        powers = dict(base_powers)
        orders: dict[int, int] = {}
        t_rem = 0
        for i, k, rem, f in combo:
            factor *= f
            if i == -1:
                t_rem = rem
            else:
                if k:
                    powers[i] = powers.get(i, Fraction(0)) - k
                    if not powers[i]:
                        del powers[i]
                if rem:
                    orders[i] = rem
        yield factor, _mk_monomial(mon.weight, powers), _mk_deriv(orders, t_rem)


def _mon_mul(table: VarTable, a: Monomial, b: Monomial) -> Monomial:
    if not b.powers and not b.weight:
        return a
    if not a.powers and not a.weight:
        return b
    powers = dict(a.powers)
    for i, p in b.powers:
        q = powers.get(i, Fraction(0)) + p
        if q:
            table.check_power(i, q)
            powers[i] = q
        else:
            del powers[i]
    return _mk_monomial(a.weight + b.weight, powers)


def _der_mul(a: DerivIndex, b: DerivIndex) -> DerivIndex:
    if a.is_empty():
        return b
    if b.is_empty():
        return a
    orders = dict(a.orders)
    for i, k in b.orders:
        orders[i] = orders.get(i, 0) + k
    return _mk_deriv(orders, a.t_order + b.t_order)


def mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Canonical normal-ordered product."""
    a._require_same_table(b)
    table = a.table
    out: dict[tuple[Monomial, DerivIndex], Coef] = {}
    for (m1, d1), c1 in a.terms.items():
        for (m2, d2), c2 in b.terms.items():
            base = c1 * c2
            for factor, m_mid, d_rem in _reorder_options(table, d1, m2):
                key = (_mon_mul(table, m1, m_mid), _der_mul(d_rem, d2))
                c = base.scale(factor)
                s = out.get(key)
                if s is None:
                    out[key] = c
                else:
                    s = s + c
                    if s.is_zero():
                        del out[key]
                    else:
                        out[key] = s
    return WeylElement(table, out, _checked=True)


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return mul(a, b) - mul(b, a)


def anticommutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return mul(a, b) + mul(b, a)


def apply_to(a: WeylElement, f: WeylElement) -> WeylElement:
    """Act with the operator ``a`` on the scalar function ``f``.

    Equals the derivative-free part of ``a * f``: every derivative factor
    is spent on ``f`` (terms whose derivatives annihilate f contribute 0).
    """
    a._require_same_table(f)
    if not f.is_scalar_function():
        raise ValueError("apply_to expects a derivative-free operand")
    table = a.table
    out: dict[tuple[Monomial, DerivIndex], Coef] = {}
    for (m1, d1), c1 in a.terms.items():
        for (m2, _), c2 in f.terms.items():
            factor = Fraction(1)
            powers = dict(m2.powers)
            for i, k in d1.orders:
                p = m2.power_of(i)
                factor *= falling(p, k)
                if not factor:
                    break
                q = p - k
                if q:
                    powers[i] = q
                else:
                    powers.pop(i, None)
            if not factor:
                continue
            if d1.t_order:
                factor *= m2.weight ** d1.t_order
                if not factor:
                    continue
            key = (_mon_mul(table, m1, _mk_monomial(m2.weight, powers)), DER_NONE)
            c = (c1 * c2).scale(factor)
            s = out.get(key)
            if s is None:
                out[key] = c
            else:
                s = s + c
                if s.is_zero():
                    del out[key]
                else:
                    out[key] = s
    return WeylElement(table, out, _checked=True)


# ---------------------------------------------------------------------------
# endomorphisms

def substitute(a: WeylElement, scales: dict[str, Coef]) -> WeylElement:
    """Dilation substitution v -> c_v * v, d[v] -> (1/c_v) * d[v].

    This is the action of conjugation by exponentiated Euler operators, so
    it is an algebra endomorphism.  Scaled variables must appear with
    integer exponents.
    """
    idx_scales: dict[int, Coef] = {}
    for name, c in scales.items():
        if c.is_zero():
            raise ZeroScaleFactor(f"zero scale factor for {name!r}")
        idx_scales[a.table.index(name)] = c
    out: dict[tuple[Monomial, DerivIndex], Coef] = {}
    for (mon, der), c in a.terms.items():
        for i, p in mon.powers:
            if i in idx_scales:
                if p.denominator != 1:
                    raise DomainViolation(
                        "dilation substitution needs integer exponents")
                c = c * idx_scales[i] ** int(p)
        for i, k in der.orders:
            if i in idx_scales:
                c = c * idx_scales[i] ** (-k)
        key = (mon, der)
        s = out.get(key)
        out[key] = c if s is None else s + c
    return WeylElement(a.table, out)


def free_table_for(osc_table: VarTable, tau_domain: str = INT) -> VarTable:
    """The power-of-tau table matching an exponential-time table."""
    return VarTable(("tau",) + osc_table.names,
                    (tau_domain,) + osc_table.domains, has_time=False)


def free_to_osc(a: WeylElement, free_table: VarTable | None = None) -> WeylElement:
    """Map an operator in the exponential-time picture to the tau picture.

    Conjugates by e^(t*X) with X = -x d[x] - y d[y] (so x, y pick up
    e^(-t) factors, d[x], d[y] pick up e^(t), and d[t] shifts to
    d[t] + x d[x] + y d[y]), then reparametrizes time: e^(k*t) -> tau^k,
    d[t] -> tau d[tau].  The composite is an algebra isomorphism onto the
    tau picture, so it preserves all commutators.
    """
    src = a.table
    if not src.has_time:
        raise ValueError("free_to_osc expects an exponential-time element")
    if free_table is None:
        free_table = free_table_for(src)
    ix, iy = src.index("x"), src.index("y")
    shift = (WeylElement.time_deriv(src)
             + WeylElement.var(src, "x") * WeylElement.deriv(src, "x")
             + WeylElement.var(src, "y") * WeylElement.deriv(src, "y"))
    shift_pows = [WeylElement.const(src, 1)]

    conjugated = WeylElement.zero(src)
    for (mon, der), c in a.terms.items():
        w = mon.weight - mon.power_of(ix) - mon.power_of(iy)
        for i, k in der.orders:
            if i in (ix, iy):
                w += k
        base = WeylElement(src, {(Monomial(w, mon.powers),
                                  DerivIndex(der.orders, 0)): c}, _checked=True)
        while len(shift_pows) <= der.t_order:
            shift_pows.append(mul(shift_pows[-1], shift))
        conjugated = conjugated + mul(base, shift_pows[der.t_order])

    itau = free_table.index("tau")
    tau_dtau = mul(WeylElement.var(free_table, "tau"),
                   WeylElement.deriv(free_table, "tau"))
    td_pows = [WeylElement.const(free_table, 1)]
    out = WeylElement.zero(free_table)
    for (mon, der), c in conjugated.terms.items():
        if mon.weight.denominator != 1 and free_table.domains[itau] != RAT:
            raise NonIntegerTimeWeight(
                f"tau exponent {mon.weight} is not an integer")
        powers = {itau: Fraction(mon.weight)} if mon.weight else {}
        for i, p in mon.powers:
            powers[i + 1] = p
        orders = {i + 1: k for i, k in der.orders}
        base = WeylElement(free_table,
                           {(_mk_monomial(Fraction(0), powers),
                             _mk_deriv(orders, 0)): c})
        while len(td_pows) <= der.t_order:
            td_pows.append(mul(td_pows[-1], tau_dtau))
        out = out + mul(base, td_pows[der.t_order])
    return out


def degree_of(g: WeylElement, z0: WeylElement) -> Fraction | None:
    """The eigenvalue n with [z0, g] = n*g, or None when g is not homogeneous."""
    c = commutator(z0, g)
    if c.is_zero():
        return Fraction(0)
    if g.is_zero():
        return None
    key = max(g.terms, key=_term_sort_key)
    top = c.terms.get(key)
    if top is None:
        return None
    n = (top / g.terms[key]).as_fraction()
    if n is None:
        return None
    return n if c == g.scaled(n) else None


# ---------------------------------------------------------------------------
# plain-text serialization (exact round trip)

def _exp_text(p: Fraction) -> str:
    if p == 1:
        return ""
    if p.denominator == 1 and p > 0:
        return f"^{p}"
    return f"^({p})"


def element_to_text(e: WeylElement) -> str:
    if not e.terms:
        return "0"
    names = e.table.names
    parts = []
    for (mon, der), c in e.sorted_terms():
        factors = [c.wrapped_text()]
        if mon.weight:
            factors.append(f"e^({mon.weight}*t)")
        for i, p in mon.powers:
            factors.append(names[i] + _exp_text(p))
        for i, k in der.orders:
            factors.append(f"d[{names[i]}]" + ("" if k == 1 else f"^{k}"))
        if der.t_order:
            factors.append("d[t]" + ("" if der.t_order == 1 else f"^{der.t_order}"))
        parts.append(" * ".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(r"""
    (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z][A-Za-z0-9]*)
  | (?P<op>[-+*/^()\[\]])
  | (?P<ws>\s+)
""", re.VERBOSE)


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"bad character in element text at {text[pos:pos+10]!r}")
        pos = m.end()
        if m.lastgroup != "ws":
            out.append(m.group())
    return out


class _Parser:
    """Recursive-descent parser for the canonical element text."""

    def __init__(self, tokens: list[str], table: VarTable):
        self.toks = tokens
        self.i = 0
        self.table = table

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def fraction(self) -> Fraction:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok[0].isdigit():
            raise ValueError(f"expected a number, got {tok!r}")
        return sign * Fraction(tok)

    def poly(self):
        from .scalar import ParamPoly
        total = ParamPoly.zero()
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        while True:
            total = total + self._poly_term().scale(Fraction(sign))
            nxt = self.peek()
            if nxt == "+":
                self.take(); sign = 1
            elif nxt == "-":
                self.take(); sign = -1
            else:
                return total

    def _poly_term(self):
        from .scalar import ParamPoly
        q = Fraction(1)
        g = x = 0
        saw = False
        while True:
            tok = self.peek()
            if tok is not None and tok[0].isdigit():
                q *= Fraction(self.take())
                saw = True
            elif tok in ("gamma", "xi"):
                self.take()
                k = 1
                if self.peek() == "^":
                    self.take()
                    k = int(self.take())
                if tok == "gamma":
                    g += k
                else:
                    x += k
                saw = True
            else:
                break
            if self.peek() == "*":
                self.take()
            else:
                break
        if not saw:
            raise ValueError(f"expected a polynomial term near {self.peek()!r}")
        return ParamPoly({(g, x): q})

    def coefficient(self) -> Coef:
        self.take("(")
        num = self.poly()
        self.take(")")
        if self.peek() == "/":
            self.take()
            self.take("(")
            den = self.poly()
            self.take(")")
            return Coef(num, den)
        return Coef(num)

    def exponent(self) -> Fraction:
        self.take("^")
        if self.peek() == "(":
            self.take()
            p = self.fraction()
            self.take(")")
            return p
        return self.fraction()

    def term(self) -> tuple[Monomial, DerivIndex, Coef]:
        c = self.coefficient()
        weight = Fraction(0)
        powers: dict[int, Fraction] = {}
        orders: dict[int, int] = {}
        t_order = 0
        while self.peek() == "*":
            self.take()
            tok = self.take()
            if tok == "e":
                self.take("^")
                self.take("(")
                weight = self.fraction()
                self.take("*")
                self.take("t")
                self.take(")")
            elif tok == "d":
                self.take("[")
                var = self.take()
                self.take("]")
                k = 1
                if self.peek() == "^":
                    self.take()
                    k = int(self.take())
                if var == "t":
                    t_order += k
                else:
                    i = self.table.index(var)
                    orders[i] = orders.get(i, 0) + k
            else:
                i = self.table.index(tok)
                p = Fraction(1)
                if self.peek() == "^":
                    p = self.exponent()
                powers[i] = powers.get(i, Fraction(0)) + p
        return _mk_monomial(weight, powers), _mk_deriv(orders, t_order), c

    def element(self) -> WeylElement:
        if self.peek() == "0" and self.i + 1 == len(self.toks):
            self.take()
            return WeylElement.zero(self.table)
        terms: dict[tuple[Monomial, DerivIndex], Coef] = {}
        while True:
            mon, der, c = self.term()
            key = (mon, der)
            terms[key] = terms.get(key, COEF_ZERO) + c
            if self.peek() == "+":
                self.take()
            else:
                break
        if self.peek() is not None:
            raise ValueError(f"trailing input at {self.peek()!r}")
        return WeylElement(self.table, terms)


def parse_element(text: str, table: VarTable) -> WeylElement:
    """Parse a plain-text element; inverse of :func:`element_to_text`."""
    return _Parser(_tokenize(text), table).element()


def remap(e: WeylElement, target: VarTable,
          name_map: dict[str, str] | None = None) -> WeylElement:
    """Rebuild an element over another table, optionally renaming variables.

    Exponent domains of the target are enforced; useful for widening a
    domain or comparing families built over differently ordered tables.
    """
    nm = name_map or {}
    src_names = e.table.names
    out: dict[tuple[Monomial, DerivIndex], Coef] = {}
    for (mon, der), c in e.terms.items():
        powers = {target.index(nm.get(src_names[i], src_names[i])): p
                  for i, p in mon.powers}
        orders = {target.index(nm.get(src_names[i], src_names[i])): k
                  for i, k in der.orders}
        key = (_mk_monomial(mon.weight, powers), _mk_deriv(orders, der.t_order))
        out[key] = out.get(key, COEF_ZERO) + c
    return WeylElement(target, out)


def transplant(e: WeylElement, table: VarTable) -> WeylElement:
    """Rebuild an element over a compatible table (e.g. one with widened domains)."""
    return remap(e, table)
