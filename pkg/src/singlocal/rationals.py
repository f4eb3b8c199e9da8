"""Arbitrary-precision rationals.

gmpy2.mpq when available (fast), fractions.Fraction otherwise.  Both are
canonical by construction: reduced, positive denominator, equal values
share one representation.
"""

from .errors import ParseError

try:
    from gmpy2 import mpq as Rational  # type: ignore
    from gmpy2 import mpz as _mpz

    def rat_num(x):
        return int(x.numerator)

    def rat_den(x):
        return int(x.denominator)

    _HAVE_GMPY = True
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rational

    def rat_num(x):
        return x.numerator

    def rat_den(x):
        return x.denominator

    _HAVE_GMPY = False

QQ_ZERO = Rational(0)
QQ_ONE = Rational(1)


def rational(p, q=1):
    """Exact rational p/q from ints, strings or rationals."""
    if q == 1:
        return Rational(p)
    return Rational(p) / Rational(q)


def parse_rational(text, offset=0):
    """Parse 'p' or 'p/q' with optional sign into a Rational."""
    s = text.strip()
    if not s:
        raise ParseError("empty rational literal", offset)
    try:
        if "/" in s:
            p, q = s.split("/", 1)
            den = int(q)
            if den == 0:
                raise ParseError(f"zero denominator in {text!r}", offset)
            return Rational(int(p)) / Rational(den)
        return Rational(int(s))
    except ValueError:
        raise ParseError(f"bad rational literal {text!r}", offset) from None


def rat_str(x):
    """Canonical text: 'p' or 'p/q'."""
    n, d = rat_num(x), rat_den(x)
    return str(n) if d == 1 else f"{n}/{d}"
