"""Sparse polynomial engine for parameter coefficients.

A polynomial in k symbols is a dict {exponent tuple: Rational}, zero
coefficients never stored, the zero polynomial is the empty dict.  This
layer is positional; symbol names live in scalars.ParamRatio.

gcd is primitive-part + subresultant PRS, recursing on the number of
symbols; adequate for the low-degree, few-parameter coefficients this
library manipulates.
"""

from math import gcd as int_gcd

from .rationals import QQ_ONE, Rational, rat_den, rat_num

P_ZERO: dict = {}


def p_const(c, arity):
    c = Rational(c)
    return {(0,) * arity: c} if c else {}


def p_symbol(index, arity):
    e = [0] * arity
    e[index] = 1
    return {tuple(e): QQ_ONE}


def p_is_const(a):
    return len(a) <= 1 and all(not any(e) for e in a)


def p_const_value(a):
    """Value of a constant polynomial (0 for the empty dict)."""
    for e, c in a.items():
        if any(e):
            raise ValueError("not a constant polynomial")
        return c
    return Rational(0)


def p_add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    r = dict(a)
    for e, c in b.items():
        s = r.get(e)
        if s is None:
            r[e] = c
        else:
            s = s + c
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def p_neg(a):
    return {e: -c for e, c in a.items()}


def p_sub(a, b):
    if not b:
        return dict(a)
    r = dict(a)
    for e, c in b.items():
        s = r.get(e)
        if s is None:
            r[e] = -c
        else:
            s = s - c
            if s:
                r[e] = s
            else:
                del r[e]
    return r


def p_scale(a, c):
    if not c:
        return {}
    return {e: x * c for e, x in a.items()}


def p_mul(a, b):
    if not a or not b:
        return {}
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
    return r


def p_pow(a, n):
    r = None
    b = a
    while n:
        if n & 1:
            r = b if r is None else p_mul(r, b)
        n >>= 1
        if n:
            b = p_mul(b, b)
    if r is None:
        arity = len(next(iter(a))) if a else 0
        return p_const(1, arity)
    return r


def p_degree(a):
    return max((sum(e) for e in a), default=-1)


def _grlex_key(e):
    return (sum(e), e)


def p_lead(a):
    """(exponent, coefficient) of the graded-lex leading term."""
    e = max(a, key=_grlex_key)
    return e, a[e]


def p_eval_partial(a, assignment):
    """Substitute Rationals at symbol positions {index: value}.

    Substituted positions are removed; the result has arity
    k - len(assignment).  Positions are those of the original tuple.
    """
    if not a:
        return {}
    arity = len(next(iter(a)))
    keep = [i for i in range(arity) if i not in assignment]
    r = {}
    for e, c in a.items():
        v = c
        for i, val in assignment.items():
            if e[i]:
                v = v * val**e[i]
        if not v:
            continue
        ne = tuple(e[i] for i in keep)
        s = r.get(ne)
        if s is None:
            r[ne] = v
        else:
            s = s + v
            if s:
                r[ne] = s
            else:
                del r[ne]
    return r


# ---------------------------------------------------------------------------
# gcd machinery (integer coefficients internally)


def p_to_integer(a):
    """(integer-coefficient dict, scale) with a = scale * result."""
    if not a:
        return {}, QQ_ONE
    den_lcm = 1
    for c in a.values():
        d = rat_den(c)
        den_lcm = den_lcm * d // int_gcd(den_lcm, d)
    num_gcd = 0
    ints = {}
    for e, c in a.items():
        v = rat_num(c) * (den_lcm // rat_den(c))
        ints[e] = v
        num_gcd = int_gcd(num_gcd, abs(v))
    if num_gcd > 1:
        ints = {e: v // num_gcd for e, v in ints.items()}
    return ints, Rational(num_gcd, den_lcm)


def _int_content(a):
    g = 0
    for v in a.values():
        g = int_gcd(g, abs(v))
        if g == 1:
            return 1
    return g


def _z_divexact_const(a, k):
    if k == 1:
        return dict(a)
    return {e: v // k for e, v in a.items()}


def _z_divexact(a, b):
    """Exact division of integer-coefficient dicts; raises if not exact."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    if p_is_const(b):
        k = next(iter(b.values()))
        r = {}
        for e, v in a.items():
            q, m = divmod(v, k)
            if m:
                raise ValueError("inexact polynomial division")
            r[e] = q
        return r
    rem = dict(a)
    quot = {}
    eb, cb = p_lead(b)
    while rem:
        ea, ca = p_lead(rem)
        de = tuple(x - y for x, y in zip(ea, eb))
        if any(x < 0 for x in de):
            raise ValueError("inexact polynomial division")
        q, m = divmod(ca, cb)
        if m:
            raise ValueError("inexact polynomial division")
        quot[de] = q
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(de, e2))
            s = rem.get(e, 0) - q * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return quot


def _to_univar(a, pos):
    """View dict as univariate in symbol pos: {deg: coefficient dict}."""
    r = {}
    for e, c in a.items():
        d = e[pos]
        ne = e[:pos] + e[pos + 1 :]
        r.setdefault(d, {})[ne] = c
    return r


def _from_univar(u, pos):
    r = {}
    for d, coef in u.items():
        for ne, c in coef.items():
            r[ne[:pos] + (d,) + ne[pos:]] = c
    return r


def _z_gcd(a, b):
    """gcd of integer-coefficient dicts, primitive positive-lead result."""
    if not a:
        return _z_normalize(b)
    if not b:
        return _z_normalize(a)
    arity = len(next(iter(a)))
    if arity == 0:
        return {(): int_gcd(abs(a[()]), abs(b[()]))}
    if p_is_const(a) or p_is_const(b):
        g = int_gcd(_int_content(a), _int_content(b))
        return {(0,) * arity: g}
    pos = arity - 1
    ua, ub = _to_univar(a, pos), _to_univar(b, pos)
    if max(ua) == 0 and max(ub) == 0:
        # the chosen symbol is absent from both; recurse directly
        g = _z_gcd(ua[0], ub[0])
        return _from_univar({0: g}, pos)
    ca = _z_gcd_list(list(ua.values()))
    cb = _z_gcd_list(list(ub.values()))
    cont = _z_gcd(ca, cb)
    fa = {d: _z_divexact(c, ca) for d, c in ua.items()}
    fb = {d: _z_divexact(c, cb) for d, c in ub.items()}
    g = _u_subresultant_gcd(fa, fb)
    g = _u_primitive(g)
    res = _from_univar(_u_mul_coeff(g, cont), pos)
    return _z_normalize(res)


def _z_gcd_list(polys):
    g = {}
    for p in polys:
        g = _z_gcd(g, p)
        if p_is_const(g) and g and abs(next(iter(g.values()))) == 1:
            break
    return g


def _z_normalize(a):
    """Divide by integer content, make graded-lex lead positive."""
    if not a:
        return {}
    c = _int_content(a)
    if c > 1:
        a = {e: v // c for e, v in a.items()}
    else:
        a = dict(a)
    _, lead = p_lead(a)
    if lead < 0:
        a = {e: -v for e, v in a.items()}
    return a


# univariate layer: {deg: coefficient dict in the remaining symbols}


def _u_deg(u):
    return max(u)


def _u_lc(u):
    return u[max(u)]


def _u_mul_coeff(u, c):
    if p_is_const(c) and c and next(iter(c.values())) == 1:
        return u
    return {d: p_mul(x, c) for d, x in u.items()}


def _u_div_coeff(u, c):
    return {d: _z_divexact(x, c) for d, x in u.items()}


def _u_sub(a, b):
    r = dict(a)
    for d, c in b.items():
        s = p_sub(r.get(d, {}), c)
        if s:
            r[d] = s
        else:
            r.pop(d, None)
    return r


def _u_shift_mul(u, k, c):
    """u * c * y^k for coefficient dict c."""
    return {d + k: p_mul(x, c) for d, x in u.items()}


def _u_primitive(u):
    cont = _z_gcd_list(list(u.values()))
    if p_is_const(cont) and cont and abs(next(iter(cont.values()))) == 1:
        return u
    return _u_div_coeff(u, cont)


def _u_prem(f, g):
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) f  mod  g."""
    df, dg = _u_deg(f), _u_deg(g)
    lc_g = _u_lc(g)
    r = dict(f)
    steps = df - dg + 1
    while r and _u_deg(r) >= dg:
        dr = _u_deg(r)
        lc_r = r.pop(dr)
        r = _u_sub(_u_mul_coeff(r, lc_g), _u_shift_mul({d: c for d, c in g.items() if d != dg}, dr - dg, lc_r))
        steps -= 1
    if steps > 0:
        mult = p_pow(lc_g, steps)
        r = _u_mul_coeff(r, mult)
    return r


def _u_subresultant_gcd(f, g):
    """Subresultant PRS ending at the last nonzero remainder."""
    if _u_deg(f) < _u_deg(g):
        f, g = g, f
    arity = len(next(iter(_u_lc(f))))
    h = p_const(1, arity)
    prev_g = h
    while True:
        delta = _u_deg(f) - _u_deg(g)
        r = _u_prem(f, g)
        if not r:
            return g
        divisor = p_mul(prev_g, p_pow(h, delta))
        f, g = g, _u_div_coeff(r, divisor)
        prev_g = _u_lc(f)
        if delta >= 1:
            # h = lc(f)^delta / h^(delta-1), exact in the coefficient ring
            h = _z_divexact(p_pow(prev_g, delta), p_pow(h, delta - 1))
        # delta == 0: h unchanged


def p_gcd(a, b):
    """gcd over Q: primitive integer gcd, lead coefficient positive."""
    za, _ = p_to_integer(a)
    zb, _ = p_to_integer(b)
    g = _z_gcd(za, zb)
    return {e: Rational(v) for e, v in g.items()}


def p_gcd_list(polys):
    """gcd over Q of several polynomials, with early exit at 1."""
    g = {}
    for a in polys:
        if not a:
            continue
        g = p_gcd(g, a) if g else p_gcd(a, {})
        if p_is_const(g):
            break
    return g


def p_lcm(a, b):
    """lcm over Q, normalized like p_gcd output."""
    if not a or not b:
        return {}
    g = p_gcd(a, b)
    m = p_mul(a, b)
    q = p_divexact_q(m, g)
    zq, _ = p_to_integer(q)
    return {e: Rational(v) for e, v in zq.items()}


def p_cheap_normalize(vec):
    """Strip integer content and the common monomial factor; gcd-free.

    Returns (new_vec, factor_dict) like p_vector_normalize but only
    removes what can be found without polynomial gcds: the componentwise
    minimum exponent vector and the rational content.
    """
    from math import gcd as _igcd

    nonzero = [a for a in vec if a]
    if not nonzero:
        return list(vec), None
    arity = len(next(iter(nonzero[0])))
    mins = None
    for a in nonzero:
        for e in a:
            if mins is None:
                mins = list(e)
            else:
                for i, x in enumerate(e):
                    if x < mins[i]:
                        mins[i] = x
    if mins is not None and not any(mins):
        mins = None
    den_lcm = 1
    num_gcd = 0
    for a in nonzero:
        for c in a.values():
            d = rat_den(c)
            den_lcm = den_lcm * d // _igcd(den_lcm, d)
    for a in nonzero:
        for c in a.values():
            num_gcd = _igcd(num_gcd, abs(rat_num(c) * (den_lcm // rat_den(c))))
            if num_gcd == 1:
                break
        if num_gcd == 1:
            break
    scale = Rational(den_lcm, num_gcd)
    if mins is None and scale == 1:
        return list(vec), None
    shift = tuple(mins) if mins is not None else (0,) * arity
    out = []
    for a in vec:
        if not a:
            out.append({})
            continue
        if mins is None:
            out.append({e: c * scale for e, c in a.items()})
        else:
            out.append(
                {
                    tuple(x - m for x, m in zip(e, shift)): c * scale
                    for e, c in a.items()
                }
            )
    factor = {shift: 1 / scale}
    return out, factor


def p_vector_normalize(vec):
    """Scale a coefficient vector to a collectively primitive integer form.

    Returns (new_vec, factor) with new_vec = vec / factor, factor a
    nonzero ParamRatio-compatible pair (poly_content, rational_scale)
    folded into a single rational-coefficient polynomial dict; the new
    vector has integer coefficients with no common integer or
    polynomial factor.  Sign is NOT normalized here.
    """
    from math import gcd as _igcd

    nonzero = [a for a in vec if a]
    if not nonzero:
        return list(vec), None
    den_lcm = 1
    for a in nonzero:
        for c in a.values():
            d = rat_den(c)
            den_lcm = den_lcm * d // _igcd(den_lcm, d)
    num_gcd = 0
    for a in nonzero:
        for c in a.values():
            num_gcd = _igcd(num_gcd, abs(rat_num(c) * (den_lcm // rat_den(c))))
            if num_gcd == 1:
                break
        if num_gcd == 1:
            break
    scale = Rational(den_lcm, num_gcd)
    scaled = [p_scale(a, scale) if a else {} for a in vec]
    cont = p_gcd_list(scaled)
    if cont and not p_is_const(cont):
        scaled = [p_divexact_q(a, cont) if a else {} for a in scaled]
        factor = p_scale(cont, 1 / scale)
    else:
        factor = p_const(1 / scale, len(next(iter(nonzero))))
    return scaled, factor


def p_divexact_q(a, b):
    """Exact division over Q (raises ValueError when not divisible)."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    za, sa = p_to_integer(a)
    zb, sb = p_to_integer(b)
    q = _z_divexact(za, zb)  # exact since primitive parts divide
    scale = sa / sb
    return {e: Rational(v) * scale for e, v in q.items()}
