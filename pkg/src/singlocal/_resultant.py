"""Bivariate resultants by the subresultant PRS.

Polynomials are viewed as univariate in the first variable with
coefficients in K[y] (dense lists over the exact coefficient field K).
The subresultant bookkeeping keeps every division exact, so the result
is the honest resultant, not a scalar multiple; tests cross-check it
against an independent implementation.
"""


def _trim(p):
    while p and not p[-1]:
        p.pop()
    return p


class _YRing:
    """Dense univariate arithmetic over the coefficient field."""

    __slots__ = ("zero", "one")

    def __init__(self, zero, one):
        self.zero = zero
        self.one = one

    def add(self, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else self.zero
            y = b[i] if i < len(b) else self.zero
            out.append(x + y)
        return _trim(out)

    def sub(self, a, b):
        n = max(len(a), len(b))
        out = []
        for i in range(n):
            x = a[i] if i < len(a) else self.zero
            y = b[i] if i < len(b) else self.zero
            out.append(x - y)
        return _trim(out)

    def neg(self, a):
        return [-c for c in a]

    def mul(self, a, b):
        if not a or not b:
            return []
        out = [self.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
        return _trim(out)

    def pow(self, a, n):
        r = [self.one]
        b = a
        while n:
            if n & 1:
                r = self.mul(r, b)
            n >>= 1
            if n:
                b = self.mul(b, b)
        return r

    def divexact(self, a, b):
        """Exact division in K[y]; raises when the division leaves a rest."""
        a = list(a)
        if not b:
            raise ZeroDivisionError("division by zero in K[y]")
        if not a:
            return []
        out = [self.zero] * (len(a) - len(b) + 1)
        lead = b[-1]
        while _trim(a) and len(a) >= len(b):
            q = a[-1] / lead
            k = len(a) - len(b)
            out[k] = q
            for i, c in enumerate(b):
                a[k + i] = a[k + i] - q * c
            del a[-1]
        if _trim(a):
            raise ValueError("inexact division in K[y]")
        return _trim(out)


def _x_view(poly):
    """Poly in vars (x, y) as a dense list over x of dense y-lists."""
    zero = poly.ring.coeff_zero()
    if not poly.terms:
        return [], zero
    dx = max(e[0] for e in poly.terms)
    rows = [[] for _ in range(dx + 1)]
    for (i, j), c in poly.terms.items():
        row = rows[i]
        while len(row) <= j:
            row.append(zero)
        row[j] = c
    return _trim([_trim(r) for r in rows]), zero


def _x_prem(A, B, yr):
    """Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B in (K[y])[x]."""
    dB = len(B) - 1
    lcB = B[-1]
    R = [list(c) for c in A]
    steps = len(A) - len(B) + 1
    while R and len(R) - 1 >= dB:
        dR = len(R) - 1
        lcR = R[-1]
        shift = dR - dB
        new = []
        for j in range(dR):
            t = yr.mul(R[j], lcB)
            k = j - shift
            if 0 <= k < dB:
                t = yr.sub(t, yr.mul(B[k], lcR))
            new.append(t)
        while new and not new[-1]:
            new.pop()
        R = new
        steps -= 1
    if steps > 0 and R:
        m = yr.pow(lcB, steps)
        R = [yr.mul(c, m) for c in R]
    return R


def resultant_x(p, q):
    """Res_x(p, q) as a dense y-coefficient list; [] means identically 0."""
    A, zero = _x_view(p)
    B, _ = _x_view(q)
    one = p.ring.coeff_one()
    yr = _YRing(zero, one)
    if not A or not B:
        return []
    sign = 1
    if len(A) < len(B):
        if ((len(A) - 1) * (len(B) - 1)) % 2 == 1:
            sign = -sign
        A, B = B, A
    if len(B) == 1:
        res = yr.pow(B[0], len(A) - 1)
        return [sign * c for c in res] if sign < 0 else res
    g = [one]
    h = [one]
    while True:
        dA, dB = len(A) - 1, len(B) - 1
        delta = dA - dB
        if dA % 2 == 1 and dB % 2 == 1:
            sign = -sign
        R = _x_prem(A, B, yr)
        if not R:
            return []
        divisor = yr.mul(g, yr.pow(h, delta))
        A = B
        B = [yr.divexact(c, divisor) for c in R]
        while B and not B[-1]:
            B.pop()
        g = A[-1]
        if delta >= 1:
            h = yr.divexact(yr.pow(g, delta), yr.pow(h, delta - 1))
        if len(B) == 1:
            dA = len(A) - 1
            res = yr.divexact(yr.pow(B[0], dA), yr.pow(h, dA - 1))
            return [sign * c for c in res] if sign < 0 else res


def y_order(coeffs):
    """Index of the first nonzero coefficient; None for the zero list."""
    for k, c in enumerate(coeffs):
        if c:
            return k
    return None
