"""Exact coefficient arithmetic.

Every number in the engine is either an arbitrary-precision rational
(``fractions.Fraction``) or a :class:`Coef`: a quotient of two polynomials
in the symbolic parameters ``gamma`` and ``xi`` with rational coefficients.

Fractions of polynomials are deliberately kept unreduced; equality and
zero tests go through cross multiplication on the expanded numerators, so
no multivariate GCD is ever needed.  A light normalization (stripping a
common monomial factor and making the denominator monic) keeps the stored
representations small and the printed forms readable.

All values are immutable after construction and all operations are pure.
"""
from __future__ import annotations

from fractions import Fraction


class DivisionByZero(ZeroDivisionError):
    """Raised when dividing by a coefficient equal to zero."""


class DenominatorVanishes(ZeroDivisionError):
    """Raised when a denominator evaluates to zero at given parameter values."""


def as_fraction(value) -> Fraction:
    """Coerce an int or Fraction to Fraction; reject anything inexact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


# ---------------------------------------------------------------------------
# polynomials in (gamma, xi)

_Key = tuple  # (gamma exponent, xi exponent)


class ParamPoly:
    """Polynomial in gamma and xi over the rationals.

    ``terms`` maps (gamma exponent, xi exponent) to a nonzero Fraction;
    the empty map is the zero polynomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[_Key, Fraction] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @staticmethod
    def zero() -> "ParamPoly":
        return ParamPoly()

    @staticmethod
    def const(value) -> "ParamPoly":
        q = as_fraction(value)
        return ParamPoly({(0, 0): q} if q else {})

    @staticmethod
    def gamma() -> "ParamPoly":
        return ParamPoly({(1, 0): Fraction(1)})

    @staticmethod
    def xi() -> "ParamPoly":
        return ParamPoly({(0, 1): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def as_const(self) -> Fraction | None:
        """The value of a constant polynomial, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1 and (0, 0) in self.terms:
            return self.terms[(0, 0)]
        return None

    def __eq__(self, other) -> bool:
        return isinstance(other, ParamPoly) and self.terms == other.terms

    def __add__(self, other: "ParamPoly") -> "ParamPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            if s is None:
                out[k] = v
            else:
                s = s + v
                if s:
                    out[k] = s
                else:
                    del out[k]
        poly = ParamPoly.__new__(ParamPoly)
        poly.terms = out
        return poly

    def __neg__(self) -> "ParamPoly":
        poly = ParamPoly.__new__(ParamPoly)
        poly.terms = {k: -v for k, v in self.terms.items()}
        return poly

    def __sub__(self, other: "ParamPoly") -> "ParamPoly":
        return self + (-other)

    def __mul__(self, other: "ParamPoly") -> "ParamPoly":
        out: dict[_Key, Fraction] = {}
        for (a, b), u in self.terms.items():
            for (c, d), v in other.terms.items():
                k = (a + c, b + d)
                s = out.get(k)
                if s is None:
                    out[k] = u * v
                else:
                    s = s + u * v
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        poly = ParamPoly.__new__(ParamPoly)
        poly.terms = out
        return poly

    def scale(self, q: Fraction) -> "ParamPoly":
        if not q:
            return ParamPoly()
        poly = ParamPoly.__new__(ParamPoly)
        poly.terms = {k: v * q for k, v in self.terms.items()}
        return poly

    def shift_down(self, dg: int, dx: int) -> "ParamPoly":
        """Divide by the monomial gamma^dg * xi^dx (must divide exactly)."""
        poly = ParamPoly.__new__(ParamPoly)
        poly.terms = {(a - dg, b - dx): v for (a, b), v in self.terms.items()}
        return poly

    def content_exponents(self) -> _Key:
        """Largest (i, j) with gamma^i * xi^j dividing every term."""
        if not self.terms:
            return (0, 0)
        gs = min(a for (a, _) in self.terms)
        xs = min(b for (_, b) in self.terms)
        return (gs, xs)

    def lead(self) -> tuple[_Key, Fraction]:
        """Leading term under lexicographic (gamma, xi) exponent order."""
        k = max(self.terms)
        return k, self.terms[k]

    def evaluate(self, gamma_val: Fraction, xi_val: Fraction) -> Fraction:
        total = Fraction(0)
        for (a, b), v in self.terms.items():
            total += v * gamma_val**a * xi_val**b
        return total

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for (a, b) in sorted(self.terms, reverse=True):
            q = self.terms[(a, b)]
            factors = []
            if a:
                factors.append("gamma" if a == 1 else f"gamma^{a}")
            if b:
                factors.append("xi" if b == 1 else f"xi^{b}")
            mag = abs(q)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            body = "*".join(factors)
            if not parts:
                parts.append(body if q > 0 else "-" + body)
            else:
                parts.append((" + " if q > 0 else " - ") + body)
        return "".join(parts)

    def __repr__(self) -> str:  # pragma: no cover
        return f"ParamPoly({self.text()})"


_P_ONE = ParamPoly.const(1)


class Coef:
    """Element of the coefficient field: a quotient of two ParamPoly.

    The denominator is never the zero polynomial.  Equality of a/b and c/d
    means a*d - c*b = 0 as an expanded polynomial; reduction to lowest
    terms is not required for correctness.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly, den: ParamPoly | None = None):
        if den is None:
            den = _P_ONE
        if den.is_zero():
            raise DivisionByZero("zero denominator polynomial")
        if num.is_zero():
            self.num = ParamPoly.zero()
            self.den = _P_ONE
            return
        # strip the common monomial content of numerator and denominator
        ng, nx = num.content_exponents()
        dg, dx = den.content_exponents()
        cg, cx = min(ng, dg), min(nx, dx)
        if cg or cx:
            num = num.shift_down(cg, cx)
            den = den.shift_down(cg, cx)
        # make the denominator monic (fold constant denominators away)
        _, lead = den.lead()
        if lead != 1:
            inv = 1 / lead
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------------

    @staticmethod
    def const(value) -> "Coef":
        return Coef(ParamPoly.const(value))

    @staticmethod
    def gamma() -> "Coef":
        return Coef(ParamPoly.gamma())

    @staticmethod
    def xi() -> "Coef":
        return Coef(ParamPoly.xi())

    @staticmethod
    def ratio(num, den) -> "Coef":
        return Coef.const(num) / Coef.const(den)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self) -> bool:
        return not self.is_zero()

    def as_fraction(self) -> Fraction | None:
        """The constant value of this coefficient, else None.

        Detects proportional numerator/denominator pairs (e.g. (2g+2x)/(g+x))
        by one cross multiplication against the leading-term ratio.
        """
        nc, dc = self.num.as_const(), self.den.as_const()
        if nc is not None and dc is not None:
            return nc / dc
        if self.num.is_zero():
            return Fraction(0)
        nk, nv = self.num.lead()
        dk, dv = self.den.lead()
        if nk != dk:
            return None
        q = nv / dv
        if self.num == self.den.scale(q):
            return q
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coef):
            return NotImplemented
        if self.num == other.num and self.den == other.den:
            return True
        return (self.num * other.den - other.num * self.den).is_zero()

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Coef | None":
        if isinstance(value, Coef):
            return value
        if isinstance(value, (int, Fraction)):
            return Coef.const(value)
        return None

    def __add__(self, other) -> "Coef":
        other = Coef._coerce(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return Coef(self.num + other.num, self.den)
        return Coef(self.num * other.den + other.num * self.den,
                    self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Coef":
        return Coef(-self.num, self.den)

    def __sub__(self, other) -> "Coef":
        other = Coef._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Coef":
        other = Coef._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Coef":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Coef):
            return NotImplemented
        return Coef(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Coef":
        other = Coef._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero coefficient")
        return Coef(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> "Coef":
        other = Coef._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def scale(self, q) -> "Coef":
        """Multiply by an exact rational (fast path for the hot loops)."""
        q = as_fraction(q)
        if not q:
            return COEF_ZERO
        return Coef(self.num.scale(q), self.den)

    def inv(self) -> "Coef":
        if self.is_zero():
            raise DivisionByZero("inverse of zero coefficient")
        return Coef(self.den, self.num)

    def __pow__(self, n: int) -> "Coef":
        if n < 0:
            return self.inv() ** (-n)
        out = COEF_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- evaluation and text ---------------------------------------------------

    def instantiate(self, gamma_val, xi_val) -> Fraction:
        """Exact evaluation at rational parameter values."""
        g, x = as_fraction(gamma_val), as_fraction(xi_val)
        d = self.den.evaluate(g, x)
        if not d:
            raise DenominatorVanishes(
                f"denominator {self.den.text()} vanishes at gamma={g}, xi={x}")
        return self.num.evaluate(g, x) / d

    def text(self) -> str:
        if self.den == _P_ONE:
            return self.num.text()
        return f"({self.num.text()})/({self.den.text()})"

    def wrapped_text(self) -> str:
        """Fully parenthesized form used inside element terms."""
        if self.den == _P_ONE:
            return f"({self.num.text()})"
        return f"({self.num.text()})/({self.den.text()})"

    def __repr__(self) -> str:  # pragma: no cover
        return f"Coef({self.text()})"


COEF_ZERO = Coef(ParamPoly.zero())
COEF_ONE = Coef(_P_ONE)


def coef(value) -> Coef:
    """Coerce ints, Fractions, or Coefs to Coef."""
    if isinstance(value, Coef):
        return value
    return Coef.const(value)
