"""Exact coefficient arithmetic: Q and rational-function fields Q(a1,...,ak).

ParamRatio is a reduced fraction of polynomials in declared parameter
symbols.  Parameters are algebraically independent transcendentals, so a
ParamRatio is zero iff its numerator is the zero polynomial; side
conditions like "a^2 != 4" hold automatically.  Values are immutable and
canonical: the numerator/denominator pair is gcd-reduced and the
denominator's graded-lex leading coefficient is 1.

When a ring has no parameters the library uses plain Rational (gmpy2.mpq)
coefficients; ParamRatio is the general case.
"""

from fractions import Fraction

from . import _parampoly as pp
from .errors import DivisionByZero, PoleAtAssignment, UnknownSymbol
from .rationals import QQ_ONE, Rational, rat_str, rational

_RATIONAL_TYPES = (int, Rational, Fraction)


class ParamRatio:
    """Element of Q(symbols): numerator/denominator parameter polynomials."""

    __slots__ = ("num", "den", "symbols", "_hash")

    def __init__(self, num, den, symbols, _reduced=False):
        symbols = tuple(symbols)
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self.symbols = symbols
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def from_rational(cls, r, symbols):
        symbols = tuple(symbols)
        k = len(symbols)
        return cls(pp.p_const(r, k), pp.p_const(1, k), symbols, _reduced=True)

    @classmethod
    def symbol(cls, name, symbols):
        symbols = tuple(symbols)
        try:
            i = symbols.index(name)
        except ValueError:
            raise UnknownSymbol(name, "parameter list") from None
        k = len(symbols)
        return cls(pp.p_symbol(i, k), pp.p_const(1, k), symbols, _reduced=True)

    @classmethod
    def zero(cls, symbols):
        return cls.from_rational(0, symbols)

    @classmethod
    def one(cls, symbols):
        return cls.from_rational(1, symbols)

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_rational(self):
        return pp.p_is_const(self.num) and pp.p_is_const(self.den)

    def as_rational(self):
        """The Rational value of a constant element."""
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational constant")
        if not self.num:
            return Rational(0)
        return pp.p_const_value(self.num) / pp.p_const_value(self.den)

    # -- arithmetic ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, ParamRatio):
            if other.symbols != self.symbols:
                raise ValueError(
                    f"parameter lists differ: {self.symbols} vs {other.symbols}"
                )
            return other
        if isinstance(other, _RATIONAL_TYPES):
            return ParamRatio.from_rational(rational(other), self.symbols)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if _is_one(self.den) and _is_one(o.den):
            return ParamRatio(
                pp.p_add(self.num, o.num), self.den, self.symbols, _reduced=True
            )
        num = pp.p_add(pp.p_mul(self.num, o.den), pp.p_mul(o.num, self.den))
        return ParamRatio(num, pp.p_mul(self.den, o.den), self.symbols)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if _is_one(self.den) and _is_one(o.den):
            return ParamRatio(
                pp.p_sub(self.num, o.num), self.den, self.symbols, _reduced=True
            )
        num = pp.p_sub(pp.p_mul(self.num, o.den), pp.p_mul(o.num, self.den))
        return ParamRatio(num, pp.p_mul(self.den, o.den), self.symbols)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return ParamRatio(pp.p_neg(self.num), self.den, self.symbols, _reduced=True)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if _is_one(self.den) and _is_one(o.den):
            return ParamRatio(
                pp.p_mul(self.num, o.num), self.den, self.symbols, _reduced=True
            )
        return ParamRatio(
            pp.p_mul(self.num, o.num), pp.p_mul(self.den, o.den), self.symbols
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.num:
            raise DivisionByZero("division by zero scalar")
        return ParamRatio(
            pp.p_mul(self.num, o.den), pp.p_mul(self.den, o.num), self.symbols
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n):
        if n < 0:
            return (ParamRatio.one(self.symbols) / self) ** (-n)
        return ParamRatio(
            pp.p_pow(self.num, n), pp.p_pow(self.den, n), self.symbols, _reduced=True
        )

    # -- structure -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            other = ParamRatio.from_rational(rational(other), self.symbols)
        if not isinstance(other, ParamRatio):
            return NotImplemented
        return (
            self.symbols == other.symbols
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (
                    self.symbols,
                    frozenset(self.num.items()),
                    frozenset(self.den.items()),
                )
            )
        return self._hash

    def specialize(self, assignment):
        """Substitute Rationals for a subset of symbols.

        Returns a ParamRatio over the remaining symbols (a rational
        constant when none remain).  Raises PoleAtAssignment when the
        denominator vanishes.
        """
        positions = {}
        for name, val in assignment.items():
            try:
                positions[self.symbols.index(name)] = Rational(val)
            except ValueError:
                raise UnknownSymbol(name, "specialization") from None
        if not positions:
            return self
        rest = tuple(
            s for i, s in enumerate(self.symbols) if i not in positions
        )
        den = pp.p_eval_partial(self.den, positions)
        if not den:
            raise PoleAtAssignment(assignment, format_parampoly(self.den, self.symbols))
        num = pp.p_eval_partial(self.num, positions)
        return ParamRatio(num, den, rest)

    def lift(self, symbols):
        """Re-embed into a larger symbol list (superset, any order)."""
        symbols = tuple(symbols)
        if symbols == self.symbols:
            return self
        pos = []
        for s in self.symbols:
            try:
                pos.append(symbols.index(s))
            except ValueError:
                raise UnknownSymbol(s, "lift target") from None
        k = len(symbols)

        def remap(poly):
            out = {}
            for e, c in poly.items():
                ne = [0] * k
                for i, x in enumerate(e):
                    ne[pos[i]] = x
                out[tuple(ne)] = c
            return out

        return ParamRatio(remap(self.num), remap(self.den), symbols, _reduced=True)

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"ParamRatio({format_scalar(self)!r}, symbols={self.symbols})"


def _is_one(poly):
    if len(poly) != 1:
        return False
    (e, c), = poly.items()
    return not any(e) and c == QQ_ONE


def _reduce(num, den):
    """Canonical form: coprime num/den, den's graded-lex lead = 1."""
    if not den:
        raise DivisionByZero("zero denominator in ParamRatio")
    if not num:
        k = len(next(iter(den)))
        return {}, pp.p_const(1, k)
    if not _is_one(den):
        g = pp.p_gcd(num, den)
        if not pp.p_is_const(g):
            num = pp.p_divexact_q(num, g)
            den = pp.p_divexact_q(den, g)
        _, lc = pp.p_lead(den)
        if lc != QQ_ONE:
            inv = 1 / lc
            num = pp.p_scale(num, inv)
            den = pp.p_scale(den, inv)
    return num, den


def arith(x, y, op):
    """Spec-level entry point: op in {'add','sub','mul','div'}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def is_zero(x):
    if isinstance(x, ParamRatio):
        return x.is_zero()
    return x == 0


# ---------------------------------------------------------------------------
# formatting


def _mono_str(exps, symbols):
    parts = []
    for s, e in zip(symbols, exps):
        if e == 1:
            parts.append(s)
        elif e > 1:
            parts.append(f"{s}^{e}")
    return "*".join(parts)


def format_parampoly(poly, symbols):
    """Parameter polynomial as text, graded-lex descending terms."""
    if not poly:
        return "0"
    items = sorted(poly.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)
    out = []
    for e, c in items:
        mono = _mono_str(e, symbols)
        if not mono:
            body = rat_str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{rat_str(abs(c))}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+{body}" if c > 0 else f"-{body}")
    return "".join(out)


def _needs_parens_as_factor(poly):
    """True when the poly must be wrapped to appear inside a product."""
    if len(poly) > 1:
        return True
    (e, c), = poly.items()
    if c < 0:
        return True
    # a bare "p/q*a^2" style monomial is fine unparenthesized
    return False


def _den_str(poly, symbols):
    # denominator is normalized: single symbol power needs no parens
    if len(poly) == 1:
        (e, c), = poly.items()
        if c == QQ_ONE and sum(1 for x in e if x) == 1:
            return _mono_str(e, symbols)
        if c == QQ_ONE and not any(e):
            return "1"
    return f"({format_parampoly(poly, symbols)})"


def format_scalar(x):
    """Canonical text of a ParamRatio or Rational; reparses exactly."""
    if isinstance(x, ParamRatio):
        num = format_parampoly(x.num, x.symbols)
        if _is_one(x.den):
            return num
        if _needs_parens_as_factor(x.num):
            num = f"({num})"
        return f"{num}/{_den_str(x.den, x.symbols)}"
    return rat_str(x)


def parse_scalar(text, symbols=()):
    """Parse a scalar literal over the given parameter symbols."""
    from .polys import Ring, parse_poly

    ring = Ring((), tuple(symbols))
    poly = parse_poly(text, ring=ring)
    coeff = poly.terms.get((), ring.coeff_zero())
    if symbols:
        return coeff
    return coeff


def scalar_from(value, symbols=()):
    """Coerce ints/Rationals/ParamRatio into the field over `symbols`."""
    if isinstance(value, ParamRatio):
        if tuple(symbols) != value.symbols:
            return value.lift(tuple(symbols))
        return value
    if symbols:
        return ParamRatio.from_rational(rational(value), symbols)
    return rational(value)
