"""Newton polygon geometry for plane germs.

The Newton diagram of f is the convex hull of supp(f) + R+^2; its compact
boundary faces form the Newton polygon.  For convenient germs (diagram
meets both axes) the Newton number is nu = 2S - a - b + 1, where S is the
exact area between the axes and the polygon and a, b the axis intercepts.

Non-degeneracy on a segment is decided exactly: the face polynomial is
x^alpha y^beta g(t) for a primitive monomial t parametrizing the segment,
and the face has a critical torus point iff g has a multiple nonzero root,
i.e. iff gcd(g, g') is nonconstant after stripping powers of t.
"""

from math import gcd as int_gcd

from .errors import (
    ArityUnsupported,
    NotConvenient,
    SegmentMismatch,
    ZeroPolynomial,
)
from .polys import Poly
from .rationals import Rational, rat_str
from .scalars import format_scalar


class Segment:
    """Compact face of a Newton polygon, from upper-left p to lower-right q."""

    __slots__ = ("p", "q", "direction", "normal", "wdeg", "lattice_count")

    def __init__(self, p, q):
        if not (p[0] < q[0] and p[1] > q[1]):
            raise ValueError(f"segment endpoints not ordered: {p}, {q}")
        self.p = p
        self.q = q
        dx, dy = q[0] - p[0], p[1] - q[1]
        g = int_gcd(dx, dy)
        self.direction = (dx // g, -(dy // g))
        # primitive inner normal (w, u): w*i + u*j constant on the segment
        self.normal = (dy // g, dx // g)
        self.wdeg = self.normal[0] * p[0] + self.normal[1] * p[1]
        self.lattice_count = g + 1

    def contains(self, point):
        i, j = point
        w, u = self.normal
        if w * i + u * j != self.wdeg:
            return False
        return self.p[0] <= i <= self.q[0]

    def lattice_points(self):
        u, negw = self.direction
        g = self.lattice_count - 1
        return [
            (self.p[0] + k * u, self.p[1] + k * negw) for k in range(g + 1)
        ]

    def __eq__(self, other):
        if not isinstance(other, Segment):
            return NotImplemented
        return self.p == other.p and self.q == other.q

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"Segment({self.p} -> {self.q})"


class NewtonPolygon:
    """Vertices, faces, intercepts and staircase area of a Newton diagram."""

    __slots__ = ("vertices", "segments", "x_intercept", "y_intercept", "area", "support")

    def __init__(self, vertices, segments, x_intercept, y_intercept, area, support):
        self.vertices = vertices
        self.segments = segments
        self.x_intercept = x_intercept
        self.y_intercept = y_intercept
        self.area = area
        self.support = support

    @property
    def convenient(self):
        return self.x_intercept is not None and self.y_intercept is not None

    def newton_number(self):
        if self.x_intercept is None:
            raise NotConvenient("x")
        if self.y_intercept is None:
            raise NotConvenient("y")
        nu = 2 * self.area - self.x_intercept - self.y_intercept + 1
        return int(nu)

    def to_json(self):
        data = {
            "vertices": [list(v) for v in self.vertices],
            "segments": [[list(s.p), list(s.q)] for s in self.segments],
            "a": self.x_intercept,
            "b": self.y_intercept,
            "S": rat_str(self.area) if self.area is not None else None,
        }
        return data

    def __repr__(self):
        return f"NewtonPolygon(vertices={self.vertices})"


def _minimal_points(points):
    """Pareto-minimal support points, x ascending (hence y descending)."""
    by_x = {}
    for x, y in points:
        if x not in by_x or y < by_x[x]:
            by_x[x] = y
    best = None
    out = []
    for x in sorted(by_x):
        y = by_x[x]
        if best is None or y < best:
            out.append((x, y))
            best = y
    return out


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _lower_left_hull(chain):
    """Extreme points of conv(chain + R+^2), chain Pareto-minimal sorted."""
    hull = []
    for pt in chain:
        # middle point on or above the line prev->pt is not extreme
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_polygon(f):
    """Newton polygon of a nonzero plane germ; deterministic vertex order."""
    if not isinstance(f, Poly):
        raise TypeError("newton_polygon expects a Poly")
    if f.ring.arity != 2:
        raise ArityUnsupported(
            f"Newton polygons are implemented for 2 variables, got {f.ring.arity}"
        )
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    support = sorted(f.terms)
    chain = _minimal_points(support)
    vertices = _lower_left_hull(chain)
    segments = [Segment(vertices[i], vertices[i + 1]) for i in range(len(vertices) - 1)]
    y_int = vertices[0][1] if vertices[0][0] == 0 else None
    x_int = vertices[-1][0] if vertices[-1][1] == 0 else None
    area = None
    if x_int is not None and y_int is not None:
        cyc = [(0, 0)] + vertices + [(0, 0)]
        twice = 0
        for (x1, y1), (x2, y2) in zip(cyc, cyc[1:]):
            twice += x1 * y2 - x2 * y1
        area = abs(Rational(twice, 2))
    return NewtonPolygon(vertices, segments, x_int, y_int, area, support)


def make_convenient(f, n):
    """f + x^n + y^n: an extension for germs the diagram misses an axis on."""
    ring = f.ring
    extra = Poly(ring, {(n, 0): 1, (0, n): 1})
    return f + extra


def newton_number(f):
    """nu(f) = 2S - a - b + 1 for a convenient plane germ."""
    return newton_polygon(f).newton_number()


def _find_segment(polygon, segment):
    for s in polygon.segments:
        if s == segment:
            return s
    raise SegmentMismatch(f"{segment!r} is not a face of the polygon")


def face_poly(f, segment):
    """Sum of the terms of f supported on the given polygon segment."""
    polygon = newton_polygon(f)
    seg = _find_segment(polygon, segment)
    terms = {e: c for e, c in f.terms.items() if seg.contains(e)}
    return Poly(f.ring, terms, _clean=True)


def _univar_gcd(a, b):
    """Monic gcd of coefficient lists (ascending powers) over the field."""
    a = list(a)
    b = list(b)

    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def rem(p, d):
        p = list(p)
        lead = d[-1]
        while len(p) >= len(d) and trim(p):
            if not p[-1]:
                p.pop()
                continue
            q = p[-1] / lead
            off = len(p) - len(d)
            for i, c in enumerate(d):
                p[off + i] = p[off + i] - q * c
            p.pop()
        return trim(p)

    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def _strip_t_powers(coeffs):
    k = 0
    while k < len(coeffs) and not coeffs[k]:
        k += 1
    return coeffs[k:]


def _format_univar(coeffs):
    if not coeffs:
        return "0"
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        cs = format_scalar(c)
        if k == 0:
            parts.append(cs)
        elif cs == "1":
            parts.append("t" if k == 1 else f"t^{k}")
        else:
            parts.append(f"({cs})*t" if ("+" in cs or "-" in cs[1:]) else f"{cs}*t")
            if k > 1:
                parts[-1] += f"^{k}"
    return " + ".join(parts)


def nondegenerate_on(f, segment):
    """Non-degeneracy of f on one polygon segment, with a certificate.

    Writes the face polynomial as x^alpha y^beta * g(t); the face's two
    partials share a torus zero iff g has a multiple nonzero root, so the
    verdict is decided by the exact univariate gcd(g, g').
    """
    polygon = newton_polygon(f)
    seg = _find_segment(polygon, segment)
    steps = seg.lattice_count - 1
    u, negw = seg.direction
    coeffs = []
    zero = f.ring.coeff_zero()
    for k in range(steps + 1):
        pt = (seg.p[0] + k * u, seg.p[1] + k * negw)
        coeffs.append(f.terms.get(pt, zero))
    deriv = [coeffs[k] * k for k in range(1, len(coeffs))]
    d = _univar_gcd(_strip_t_powers(coeffs), _strip_t_powers(deriv))
    d = _strip_t_powers(d)
    verdict = len(d) <= 1
    certificate = {
        "face": format_poly_safe(face_poly(f, seg)),
        "g": _format_univar(coeffs),
        "gcd": _format_univar(d),
        "multiple_root_factor": None if verdict else _format_univar(d),
    }
    return verdict, certificate


def format_poly_safe(p):
    from .polys import format_poly

    return format_poly(p)


def nondegenerate(f):
    """True iff f is non-degenerate on every segment of its polygon."""
    polygon = newton_polygon(f)
    return all(nondegenerate_on(f, seg)[0] for seg in polygon.segments)


def polygon_report(f):
    """JSON-ready polygon summary including per-segment verdicts."""
    polygon = newton_polygon(f)
    data = polygon.to_json()
    per_segment = []
    for seg in polygon.segments:
        verdict, cert = nondegenerate_on(f, seg)
        per_segment.append(
            {"segment": [list(seg.p), list(seg.q)], "verdict": verdict, "certificate": cert}
        )
    data["nondegenerate"] = all(e["verdict"] for e in per_segment)
    data["per_segment"] = per_segment
    if polygon.convenient:
        data["nu"] = polygon.newton_number()
    else:
        data["nu"] = None
    return data


# ---------------------------------------------------------------------------
# SVG rendering


def polygon_svg(polygon, support=None, unit=36, margin=30):
    """Standalone SVG: lattice grid, support dots, shaded diagram, polygon."""
    support = sorted(support) if support else list(polygon.support or [])
    xs = [p[0] for p in support] + [v[0] for v in polygon.vertices] or [0]
    ys = [p[1] for p in support] + [v[1] for v in polygon.vertices] or [0]
    w = max(xs + [1]) + 1
    h = max(ys + [1]) + 1
    width = 2 * margin + w * unit
    height = 2 * margin + h * unit

    def sx(i):
        return margin + i * unit

    def sy(j):
        return margin + (h - j) * unit

    out = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    )
    out.append(f'<rect width="{width}" height="{height}" fill="white"/>')
    # shaded Newton diagram region (only when there is a polygon)
    if polygon.vertices:
        pts = []
        v0 = polygon.vertices[0]
        vk = polygon.vertices[-1]
        pts.append((v0[0], h))
        pts.extend(polygon.vertices)
        pts.append((w, vk[1]))
        pts.append((w, h))
        path = " ".join(f"{sx(i)},{sy(j)}" for i, j in pts)
        out.append(f'<polygon points="{path}" fill="#cfe2f3" stroke="none"/>')
    for i in range(w + 1):
        out.append(
            f'<line x1="{sx(i)}" y1="{sy(0)}" x2="{sx(i)}" y2="{sy(h)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
    for j in range(h + 1):
        out.append(
            f'<line x1="{sx(0)}" y1="{sy(j)}" x2="{sx(w)}" y2="{sy(j)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
    # axes
    out.append(
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(w)}" y2="{sy(0)}" '
        f'stroke="black" stroke-width="2"/>'
    )
    out.append(
        f'<line x1="{sx(0)}" y1="{sy(0)}" x2="{sx(0)}" y2="{sy(h)}" '
        f'stroke="black" stroke-width="2"/>'
    )
    if polygon.vertices and len(polygon.vertices) >= 2:
        path = " ".join(f"{sx(i)},{sy(j)}" for i, j in polygon.vertices)
        out.append(
            f'<polyline points="{path}" fill="none" stroke="#1155cc" stroke-width="3"/>'
        )
    for i, j in support:
        out.append(f'<circle cx="{sx(i)}" cy="{sy(j)}" r="5" fill="#cc0000"/>')
    for i, j in polygon.vertices:
        out.append(f'<circle cx="{sx(i)}" cy="{sy(j)}" r="6" fill="#1155cc"/>')
    out.append("</svg>")
    return "\n".join(out)


def empty_polygon_svg(unit=36, margin=30):
    """Minimal axes-only SVG for empty support."""
    empty = NewtonPolygon([], [], None, None, None, [])
    return polygon_svg(empty, support=[], unit=unit, margin=margin)
