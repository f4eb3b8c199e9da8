"""Sparse multivariate polynomials over exact coefficient fields.

A Ring fixes the main variable names (1 to 4 of them) and the parameter
symbols; a Poly is a finite map {exponent tuple: coefficient} with no
stored zeros.  Coefficients are Rational when the ring has no parameters
and ParamRatio otherwise; both support native operators, so polynomial
code below is field-agnostic.

Germs of holomorphic functions are represented by polynomial
representatives throughout: every local invariant computed here depends
only on a sufficiently high jet.
"""

from fractions import Fraction

from .errors import (
    ArityMismatch,
    ArityUnsupported,
    NegativeExponent,
    ParseError,
    UnknownSymbol,
)
from .rationals import Rational, rat_str, rational
from .scalars import (
    ParamRatio,
    _needs_parens_as_factor,
    format_scalar,
    scalar_from,
)

INFINITY = float("inf")

MAX_ARITY = 4

_RATIONAL_TYPES = (int, Rational, Fraction)


class Ring:
    """Variable names plus parameter symbols; hashable and immutable."""

    __slots__ = ("vars", "params")

    def __init__(self, vars, params=()):
        vars = tuple(vars)
        params = tuple(params)
        if not (1 <= len(vars) <= MAX_ARITY):
            if vars:  # arity-0 rings are used internally for scalar parsing
                raise ArityUnsupported(
                    f"supported arities are 1..{MAX_ARITY}, got {len(vars)}"
                )
        seen = set()
        for name in vars + params:
            if not name.isidentifier():
                raise ValueError(f"bad symbol name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate symbol {name!r}")
            seen.add(name)
        self.vars = vars
        self.params = params

    @property
    def arity(self):
        return len(self.vars)

    def coeff_zero(self):
        if self.params:
            return ParamRatio.zero(self.params)
        return Rational(0)

    def coeff_one(self):
        if self.params:
            return ParamRatio.one(self.params)
        return Rational(1)

    def coeff(self, value):
        """Coerce an int/Rational/ParamRatio into this ring's field."""
        return scalar_from(value, self.params)

    def coeff_symbol(self, name):
        return ParamRatio.symbol(name, self.params)

    def var_index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise UnknownSymbol(name, f"ring {self}") from None

    def extend_vars(self, names):
        return Ring(self.vars + tuple(names), self.params)

    def extend_params(self, names):
        new = tuple(n for n in names if n not in self.params)
        return Ring(self.vars, self.params + new)

    def without_params(self, names):
        return Ring(self.vars, tuple(p for p in self.params if p not in names))

    def __eq__(self, other):
        if not isinstance(other, Ring):
            return NotImplemented
        return self.vars == other.vars and self.params == other.params

    def __hash__(self):
        return hash((self.vars, self.params))

    def __repr__(self):
        if self.params:
            return f"Ring(vars={self.vars}, params={self.params})"
        return f"Ring(vars={self.vars})"


def _print_key(exps):
    # ascending total degree, x-heavy terms first within a degree
    return (sum(exps), tuple(-e for e in exps))


class Poly:
    """Immutable sparse polynomial over a Ring."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms=None, _clean=False):
        self.ring = ring
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            clean = {}
            arity = ring.arity
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != arity:
                    raise ArityMismatch(
                        f"exponent {e} has arity {len(e)}, ring has {arity}"
                    )
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = ring.coeff(c)
                if c:
                    clean[e] = clean[e] + c if e in clean else c
                    if not clean[e]:
                        del clean[e]
            self.terms = clean
        self._hash = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {}, _clean=True)

    @classmethod
    def constant(cls, ring, value):
        c = ring.coeff(value)
        if not c:
            return cls.zero(ring)
        return cls(ring, {(0,) * ring.arity: c}, _clean=True)

    @classmethod
    def monomial(cls, ring, exps, coeff=1):
        return cls(ring, {tuple(exps): coeff})

    @classmethod
    def variable(cls, ring, name):
        i = ring.var_index(name)
        e = [0] * ring.arity
        e[i] = 1
        return cls(ring, {tuple(e): ring.coeff_one()}, _clean=True)

    # -- predicates -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.arity, self.ring.coeff_zero())

    def support(self):
        return set(self.terms)

    def coeff_of(self, exps):
        return self.terms.get(tuple(exps), self.ring.coeff_zero())

    # -- arithmetic -------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ArityMismatch(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, _RATIONAL_TYPES + (ParamRatio,)):
            other = Poly.constant(self.ring, other)
        self._check(other)
        r = dict(self.terms)
        for e, c in other.terms.items():
            s = r.get(e)
            if s is None:
                r[e] = c
            else:
                s = s + c
                if s:
                    r[e] = s
                else:
                    del r[e]
        return Poly(self.ring, r, _clean=True)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _RATIONAL_TYPES + (ParamRatio,)):
            other = Poly.constant(self.ring, other)
        self._check(other)
        r = dict(self.terms)
        for e, c in other.terms.items():
            s = r.get(e)
            if s is None:
                r[e] = -c
            else:
                s = s - c
                if s:
                    r[e] = s
                else:
                    del r[e]
        return Poly(self.ring, r, _clean=True)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, _clean=True)

    def __mul__(self, other):
        if isinstance(other, _RATIONAL_TYPES + (ParamRatio,)):
            return self.scale(other)
        self._check(other)
        a, b = self.terms, other.terms
        if len(b) > len(a):
            a, b = b, a
        r = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = r.get(e)
                if s is None:
                    r[e] = ca * cb
                else:
                    s = s + ca * cb
                    if s:
                        r[e] = s
                    else:
                        del r[e]
        return Poly(self.ring, r, _clean=True)

    __rmul__ = __mul__

    def scale(self, c):
        c = self.ring.coeff(c)
        if not c:
            return Poly.zero(self.ring)
        return Poly(self.ring, {e: x * c for e, x in self.terms.items()}, _clean=True)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exps, coeff=None):
        """Fast multiply by coeff * x^exps."""
        exps = tuple(exps)
        if coeff is None:
            return Poly(
                self.ring,
                {tuple(a + b for a, b in zip(e, exps)): c for e, c in self.terms.items()},
                _clean=True,
            )
        if not coeff:
            return Poly.zero(self.ring)
        return Poly(
            self.ring,
            {
                tuple(a + b for a, b in zip(e, exps)): c * coeff
                for e, c in self.terms.items()
            },
            _clean=True,
        )

    # -- calculus and maps --------------------------------------------------

    def partial(self, var):
        """Exact formal partial derivative with respect to a variable name."""
        i = self.ring.var_index(var)
        r = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                nc = c * k
                if nc:
                    r[ne] = r[ne] + nc if ne in r else nc
        return Poly(self.ring, r, _clean=True)

    def gradient(self):
        return [self.partial(v) for v in self.ring.vars]

    def substitute(self, images):
        """Ring homomorphism sending each variable to the given Poly.

        Unmapped variables map to themselves; all images must share one
        ring whose parameters include this ring's parameters.
        """
        if not images:
            return self
        target = None
        for img in images.values():
            if not isinstance(img, Poly):
                raise TypeError("substitution images must be Poly")
            if target is None:
                target = img.ring
            elif img.ring != target:
                raise ArityMismatch("substitution images live in different rings")
        full = {}
        for v in self.ring.vars:
            if v in images:
                full[v] = images[v]
            else:
                try:
                    full[v] = Poly.variable(target, v)
                except UnknownSymbol:
                    raise ArityMismatch(
                        f"variable {v!r} has no image and is absent from {target}"
                    ) from None
        for name in images:
            if name not in self.ring.vars:
                raise UnknownSymbol(name, "substitution")
        for p in self.ring.params:
            if p not in target.params:
                raise ArityMismatch(f"parameter {p!r} missing from target ring")

        pow_cache = {v: {0: Poly.constant(target, 1)} for v in self.ring.vars}

        def power(v, k):
            cache = pow_cache[v]
            if k not in cache:
                cache[k] = full[v] ** k
            return cache[k]

        out = Poly.zero(target)
        for e, c in self.terms.items():
            piece = Poly.constant(target, target.coeff(_lift_coeff(c, target.params)))
            for v, k in zip(self.ring.vars, e):
                if k:
                    piece = piece * power(v, k)
            out = out + piece
        return out

    def specialize(self, assignment):
        """Substitute Rationals for parameter symbols in all coefficients."""
        if not assignment:
            return self
        if not self.ring.params:
            raise UnknownSymbol(next(iter(assignment)), "specialization")
        new_ring = self.ring.without_params(assignment)
        r = {}
        for e, c in self.terms.items():
            nc = c.specialize(assignment)
            if not new_ring.params and isinstance(nc, ParamRatio):
                nc = nc.as_rational()
            if nc:
                r[e] = nc
        return Poly(new_ring, r, _clean=True)

    def with_ring(self, ring):
        """Re-embed into a ring with a superset of variables/parameters."""
        if ring == self.ring:
            return self
        pos = []
        for v in self.ring.vars:
            pos.append(ring.var_index(v))
        r = {}
        for e, c in self.terms.items():
            ne = [0] * ring.arity
            for i, x in enumerate(e):
                ne[pos[i]] = x
            r[tuple(ne)] = ring.coeff(_lift_coeff(c, ring.params))
        return Poly(ring, r, _clean=True)

    # -- degrees ----------------------------------------------------------

    def order(self):
        """Minimal total degree of a term; INFINITY for the zero poly."""
        if not self.terms:
            return INFINITY
        return min(sum(e) for e in self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # -- structure ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _print_key(t[0]))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r}, ring={self.ring!r})"

    def to_json(self):
        return {
            "vars": list(self.ring.vars),
            "params": list(self.ring.params),
            "terms": [
                {"exps": list(e), "coeff": format_scalar(c)}
                for e, c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        ring = Ring(tuple(data["vars"]), tuple(data.get("params", ())))
        scalar_ring = Ring((), ring.params)
        terms = {}
        for item in data["terms"]:
            coeff_poly = parse_poly(item["coeff"], ring=scalar_ring)
            c = coeff_poly.terms.get((), scalar_ring.coeff_zero())
            terms[tuple(item["exps"])] = c
        return cls(ring, terms)


def _lift_coeff(c, params):
    if isinstance(c, ParamRatio):
        return c.lift(params)
    return c


# ---------------------------------------------------------------------------
# parsing


_OPS = set("+-*/^()")


def _tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens, ring):
        self.tokens = tokens
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1]!r}", t[2])
        return t

    def parse_sum(self):
        sign = 1
        kind, _, _ = self.peek()
        if kind in "+-":
            if kind == "-":
                sign = -1
            self.next()
        result = self.parse_term()
        if sign < 0:
            result = -result
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.next()
                result = result + self.parse_term()
            elif kind == "-":
                self.next()
                result = result - self.parse_term()
            else:
                return result

    def parse_term(self):
        result = self.parse_factor()
        while True:
            kind, _, pos = self.peek()
            if kind == "*":
                self.next()
                result = result * self.parse_factor()
            elif kind == "/":
                self.next()
                divisor = self.parse_factor()
                if divisor.is_zero():
                    raise ParseError("division by zero", pos)
                if any(any(e) for e in divisor.terms):
                    raise ParseError(
                        "division by a polynomial in the main variables", pos
                    )
                c = divisor.constant_term()
                result = result.scale(1 / c)
            else:
                return result

    def parse_factor(self):
        base = self.parse_primary()
        kind, _, pos = self.peek()
        if kind == "^":
            self.next()
            k2, val, p2 = self.next()
            if k2 == "-":
                k3, val3, _ = self.next()
                if k3 != "num":
                    raise ParseError("expected exponent", p2)
                raise NegativeExponent(f"negative exponent -{val3}", p2)
            if k2 != "num":
                raise ParseError("expected exponent", p2)
            return base ** int(val)
        return base

    def parse_primary(self):
        kind, val, pos = self.next()
        if kind == "num":
            return Poly.constant(self.ring, int(val))
        if kind == "name":
            if val in self.ring.vars:
                return Poly.variable(self.ring, val)
            if val in self.ring.params:
                return Poly.constant(self.ring, self.ring.coeff_symbol(val))
            raise UnknownSymbol(val, f"ring {self.ring}")
        if kind == "(":
            inner = self.parse_sum()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text, vars=None, params=None, ring=None):
    """Parse polynomial text over the given variables and parameters.

    Grammar: terms joined by + and -, factors joined by * (and / for
    scalar divisors), exponents via ^, parenthesized subexpressions
    allowed.  format_poly output reparses to an equal Poly.
    """
    if ring is None:
        ring = Ring(tuple(vars or ()), tuple(params or ()))
    parser = _Parser(_tokenize(text), ring)
    result = parser.parse_sum()
    end = parser.next()
    if end[0] != "end":
        raise ParseError(f"trailing input {end[1]!r}", end[2])
    return result


def _coeff_sign_body(c):
    """(negative?, printable absolute value) for a coefficient."""
    if isinstance(c, ParamRatio):
        from . import _parampoly as pp

        if c.num:
            _, lead = pp.p_lead(c.num)
            if lead < 0:
                return True, format_scalar(-c)
        return False, format_scalar(c)
    if c < 0:
        return True, rat_str(-c)
    return False, rat_str(c)


def _coeff_factor_str(c):
    """Coefficient rendered for use as a leading product factor."""
    if isinstance(c, ParamRatio):
        from .scalars import _is_one

        s = format_scalar(c)
        if _is_one(c.den) and _needs_parens_as_factor(c.num):
            return f"({s})"
        return s
    return rat_str(c)


def _mono_str(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p):
    """Canonical text; ascending total degree, deterministic."""
    if not p.terms:
        return "0"
    vars = p.ring.vars
    out = []
    for e, c in p.sorted_terms():
        mono = _mono_str(e, vars)
        neg, body = _coeff_sign_body(c)
        cc = -c if neg else c
        if not mono:
            piece = body
        elif cc == 1:
            piece = mono
        else:
            piece = f"{_coeff_factor_str(cc)}*{mono}"
        if not out:
            out.append(f"-{piece}" if neg else piece)
        else:
            out.append(f"-{piece}" if neg else f"+{piece}")
    return "".join(out)
