"""Local-ring computations at the origin.

Standard bases are computed for the anti-graded degree reverse
lexicographic ordering (leading terms have the lowest total degree), by
a tangent-cone Buchberger loop truncated at a degree cap: every term of
degree >= cap is discarded.  Truncation is sound for everything claimed
below the cap, because a reduction step only replaces a monomial by
strictly order-smaller (hence degree >= ) ones:

* leading exponents of degree < cap are exactly those of the ideal;
* therefore the staircase (monomials outside the leading ideal) is exact
  in degrees < cap, and if some degree level below the cap is empty the
  staircase is finite and fully certified;
* if the pair queue empties without any truncation the basis is a true
  standard basis and the leading ideal is exact at all degrees.

Colength Infinity is certified exactly in the complete case (some
coordinate ray carries no leading exponent); in the truncated case the
same ray test plus a two-level stability window is reported as Infinity,
a documented heuristic cross-checked by the independent oracles.

Three independent Milnor number computations are provided: the standard
basis staircase, linear algebra on jets, and (for plane germs) the order
of a resultant of the two partials after a random linear change of
coordinates.  method="all" runs them and requires exact agreement.
"""

import heapq
import random
from itertools import combinations_with_replacement

from . import _parampoly as pp
from ._resultant import resultant_x, y_order
from .config import DEFAULTS
from .errors import (
    ArityUnsupported,
    CapExceeded,
    InvalidGerm,
    NonIsolated,
    NotStabilized,
    OracleDisagreement,
)
from .polys import INFINITY, Poly
from .rationals import Rational
from .scalars import ParamRatio

ORDER_NAME = "antigraded degrevlex"
_STABILITY_WINDOW = 2


def local_key(e):
    """Sort key for the local order; max = leading monomial."""
    return (-sum(e), tuple(-x for x in reversed(e)))


def _heap_key(e):
    # heapq pops the minimum, so invert local_key
    return (sum(e), tuple(x for x in reversed(e)))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomials_of_degree(arity, d):
    """All exponent tuples of total degree d, deterministic order."""
    if d == 0:
        yield (0,) * arity
        return
    for combo in combinations_with_replacement(range(arity), d):
        e = [0] * arity
        for i in combo:
            e[i] += 1
        yield tuple(e)


class IdealGens:
    """Generators of an ideal in a common ring, zero generators dropped."""

    __slots__ = ("generators", "tag")

    def __init__(self, generators, tag=None):
        gens = tuple(g for g in generators if not g.is_zero())
        self.generators = gens
        self.tag = tag

    @property
    def ring(self):
        return self.generators[0].ring

    def __repr__(self):
        inner = ", ".join(str(g) for g in self.generators)
        return f"IdealGens([{inner}], tag={self.tag!r})"


def jacobian_ideal(f):
    return IdealGens(f.gradient(), tag=("jacobian", str(f)))


def maximal_times_jacobian(f):
    """Generators v_i * df/dv_j of m * (grad f)."""
    gens = []
    for g in f.gradient():
        for v in f.ring.vars:
            gens.append(Poly.variable(f.ring, v) * g)
    return IdealGens(gens, tag=("m-jacobian", str(f)))


class QuotientBasis:
    """Staircase complement certifying a finite colength."""

    __slots__ = ("standard_monomials", "colength")

    def __init__(self, standard_monomials):
        self.standard_monomials = tuple(
            sorted(standard_monomials, key=lambda e: (sum(e), e))
        )
        self.colength = len(self.standard_monomials)

    def __repr__(self):
        return f"QuotientBasis(colength={self.colength})"


class _Element:
    """Normalized standard-basis element with cached leading data."""

    __slots__ = ("terms", "lead", "lc")

    def __init__(self, terms):
        self.terms = terms
        self.lead = max(terms, key=local_key)
        self.lc = terms[self.lead]


def _normalize(terms, ring):
    """Scale deterministically: monic over Q, denominator-free primitive
    with a positive leading rational over parameter fields."""
    if not terms:
        return terms
    lead = max(terms, key=local_key)
    lc = terms[lead]
    if not ring.params:
        if lc != 1:
            inv = 1 / lc
            terms = {e: c * inv for e, c in terms.items()}
        return terms
    exps = list(terms)
    dens = [terms[e].den for e in exps]
    lcm = dens[0]
    for d in dens[1:]:
        if d != lcm:
            lcm = pp.p_lcm(lcm, d)
    nums = []
    for e, d in zip(exps, dens):
        n = terms[e].num
        if d != lcm:
            n = pp.p_mul(n, pp.p_divexact_q(lcm, d))
        nums.append(n)
    nums, _ = pp.p_vector_normalize(nums)
    li = exps.index(lead)
    _, lead_rat = pp.p_lead(nums[li])
    if lead_rat < 0:
        nums = [pp.p_neg(n) for n in nums]
    one = pp.p_const(1, len(ring.params))
    sym = ring.params
    return {
        e: ParamRatio(n, one, sym, _reduced=True) for e, n in zip(exps, nums)
    }


def _reduce_once(h, scale, elem, mono, ring, cap):
    """One reduction step of the monomial `mono` of h by elem.

    Cross-multiplies over parameter fields (elements are not monic), so
    the returned scale satisfies: h_new == scale_new * (original input)
    modulo the ideal, up to the cap.  Returns the new monomials created.
    """
    c = h.pop(mono)
    shift = tuple(a - b for a, b in zip(mono, elem.lead))
    created = []
    if elem.lc == 1:
        for e2, c2 in elem.terms.items():
            if e2 == elem.lead:
                continue
            e = tuple(a + b for a, b in zip(e2, shift))
            if sum(e) >= cap:
                created.append(None)
                continue
            prev = h.get(e)
            if prev is None:
                h[e] = -c * c2
                created.append(e)
            else:
                prev = prev - c * c2
                if prev:
                    h[e] = prev
                else:
                    del h[e]
        return scale, created
    # cross-multiplication branch
    lc = elem.lc
    for e in h:
        h[e] = h[e] * lc
    scale = scale * lc
    for e2, c2 in elem.terms.items():
        if e2 == elem.lead:
            continue
        e = tuple(a + b for a, b in zip(e2, shift))
        if sum(e) >= cap:
            created.append(None)
            continue
        prev = h.get(e)
        if prev is None:
            h[e] = -c * c2
            created.append(e)
        else:
            prev = prev - c * c2
            if prev:
                h[e] = prev
            else:
                del h[e]
    return scale, created


def _strip_content(h, scale, ring, full=False):
    """Divide h by its coefficient content (parameter fields only).

    The cheap pass removes integer content and common monomial factors
    without any gcd; the full pass additionally removes polynomial
    content and runs only periodically.
    """
    if not ring.params or not h:
        return scale
    exps = list(h)
    nums = [h[e].num for e in exps]
    if full:
        new, factor = pp.p_vector_normalize(nums)
    else:
        new, factor = pp.p_cheap_normalize(nums)
    if factor is None:
        return scale
    one = pp.p_const(1, len(ring.params))
    sym = ring.params
    for e, n in zip(exps, new):
        h[e] = ParamRatio(n, one, sym, _reduced=True)
    fr = ParamRatio(factor, one, sym, _reduced=True)
    return scale / fr


def _fast_reduce(h_terms, elements, ring, cap):
    """Truncated normal form of h against the elements.

    Returns (nf, scale, truncated): nf == scale * h modulo the ideal and
    modulo terms of degree >= cap.  Over Q, elements are monic and scale
    stays 1.
    """
    h = dict(h_terms)
    scale = ring.coeff_one()
    truncated = False
    if not h:
        return h, scale, truncated
    heap = [_heap_key(e) for e in h]
    seen_irreducible = set()
    heapq.heapify(heap)
    param_field = bool(ring.params)
    steps = 0
    while heap:
        key = heapq.heappop(heap)
        mono = tuple(reversed(key[1]))
        if mono not in h or mono in seen_irreducible:
            continue
        red = None
        for elem in elements:
            if _divides(elem.lead, mono):
                red = elem
                break
        if red is None:
            seen_irreducible.add(mono)
            continue
        scale, created = _reduce_once(h, scale, red, mono, ring, cap)
        if param_field:
            steps += 1
            scale = _strip_content(h, scale, ring, full=(steps % 16 == 0))
        for e in created:
            if e is None:
                truncated = True
            else:
                heapq.heappush(heap, _heap_key(e))
    return h, scale, truncated


def _spoly(f, g, lcm_exp, ring, cap):
    """Cross-multiplied S-polynomial, truncated at the cap."""
    sf = tuple(a - b for a, b in zip(lcm_exp, f.lead))
    sg = tuple(a - b for a, b in zip(lcm_exp, g.lead))
    out = {}
    truncated = False
    for e, c in f.terms.items():
        ne = tuple(a + b for a, b in zip(e, sf))
        if sum(ne) >= cap:
            truncated = True
            continue
        v = c * g.lc
        out[ne] = out[ne] + v if ne in out else v
        if not out[ne]:
            del out[ne]
    for e, c in g.terms.items():
        ne = tuple(a + b for a, b in zip(e, sg))
        if sum(ne) >= cap:
            truncated = True
            continue
        v = c * f.lc
        prev = out.get(ne)
        if prev is None:
            out[ne] = -v
        else:
            prev = prev - v
            if prev:
                out[ne] = prev
            else:
                del out[ne]
    return out, truncated


class _SBResult:
    __slots__ = (
        "ring",
        "cap",
        "elements",
        "minimal",
        "lead_exps",
        "complete",
        "staircase",
        "finite",
        "free_rays",
        "max_lead_deg",
        "_preferred",
        "_nf_cache",
    )

    def __init__(self, ring, cap, elements, minimal, complete):
        self.ring = ring
        self.cap = cap
        self.elements = elements
        self.minimal = minimal
        self.lead_exps = tuple(e.lead for e in minimal)
        self.complete = complete
        self.max_lead_deg = max((sum(l) for l in self.lead_exps), default=0)
        self.staircase, self.finite = self._compute_staircase()
        self.free_rays = self._free_rays()
        self._preferred = None
        self._nf_cache = {}

    def _compute_staircase(self):
        arity = self.ring.arity
        leads = self.lead_exps
        stand = []
        for d in range(self.cap):
            level = [
                m
                for m in monomials_of_degree(arity, d)
                if not any(_divides(l, m) for l in leads)
            ]
            if not level:
                return stand, True
            stand.extend(level)
        return stand, False

    def _free_rays(self):
        arity = self.ring.arity
        free = []
        for i in range(arity):
            blocked = any(
                all(l[j] == 0 for j in range(arity) if j != i) for l in self.lead_exps
            )
            if not blocked:
                free.append(self.ring.vars[i])
        return tuple(free)

    @property
    def infinite_exact(self):
        return self.complete and bool(self.free_rays)

    @property
    def infinite_heuristic(self):
        return (
            not self.complete
            and bool(self.free_rays)
            and self.max_lead_deg <= self.cap - _STABILITY_WINDOW
        )

    def normal_form_coords(self, terms):
        """Coordinates of the class of `terms` on the staircase monomials."""
        nf, scale, _ = _fast_reduce(terms, self.minimal, self.ring, self.cap)
        inv = 1 / scale
        return {e: c * inv for e, c in nf.items()}

    def preferred_basis(self):
        """Monomial basis of the quotient preferring low degree, then
        balanced exponents; deterministic; None when the staircase is
        not finite."""
        if not self.finite:
            return None
        if self._preferred is not None:
            return self._preferred
        stair = sorted(self.staircase, key=lambda e: (sum(e), e))
        index = {e: i for i, e in enumerate(stair)}
        target = len(stair)
        maxdeg = max((sum(e) for e in stair), default=0)
        selected = []
        vectors = []  # echelon rows: list of (pivot_index, dict, original)
        arity = self.ring.arity
        scan = []
        for d in range(maxdeg + 1):
            scan.extend(
                sorted(monomials_of_degree(arity, d), key=lambda e: (max(e), e))
            )
        for mono in scan:
            if len(selected) == target:
                break
            coords = self.normal_form_coords({mono: self.ring.coeff_one()})
            vec = {index[e]: c for e, c in coords.items()}
            orig = dict(vec)
            for piv, row, _ in vectors:
                if piv in vec:
                    factor = vec[piv]
                    for k, v in row.items():
                        cur = vec.get(k)
                        nv = (cur - factor * v) if cur is not None else -factor * v
                        if nv:
                            vec[k] = nv
                        else:
                            vec.pop(k, None)
            if vec:
                piv = min(vec)
                pc = vec[piv]
                row = {k: v / pc for k, v in vec.items()}
                vectors.append((piv, row, orig))
                selected.append(mono)
        self._preferred = (tuple(selected), [v[2] for v in vectors])
        return self._preferred

    def express_in_preferred(self, coords_dict):
        """Coefficients of a staircase-coordinate vector over the
        preferred basis (Gauss-Jordan on the square change-of-basis
        matrix; exact field arithmetic, sizes are small)."""
        selected, columns = self.preferred_basis()
        n = len(selected)
        zero = self.ring.coeff_zero()
        A = [[columns[j].get(i, zero) for j in range(n)] for i in range(n)]
        b = [coords_dict.get(i, zero) for i in range(n)]
        pivot_row_of_col = [None] * n
        used = [False] * n
        for j in range(n):
            piv = None
            for i in range(n):
                if not used[i] and A[i][j]:
                    piv = i
                    break
            if piv is None:
                raise ValueError("preferred basis matrix is singular")
            used[piv] = True
            pivot_row_of_col[j] = piv
            pv = A[piv][j]
            for i in range(n):
                if i == piv or not A[i][j]:
                    continue
                factor = A[i][j] / pv
                for k in range(n):
                    if A[piv][k]:
                        A[i][k] = A[i][k] - factor * A[piv][k]
                b[i] = b[i] - factor * b[piv]
        sol = [zero] * n
        for j in range(n):
            i = pivot_row_of_col[j]
            sol[j] = b[i] / A[i][j]
        return selected, sol


def _sb_engine(gens, ring, cap):
    elements = []
    truncated_any = False
    for g in gens:
        terms = {e: c for e, c in g.terms.items() if sum(e) < cap}
        if len(terms) != len(g.terms):
            truncated_any = True
        if terms:
            elements.append(_Element(_normalize(terms, ring)))
    pairs = []
    pruned = False

    def push_pairs(new_index):
        nonlocal pruned
        e_new = elements[new_index]
        for i in range(new_index):
            e_old = elements[i]
            lcm = tuple(max(a, b) for a, b in zip(e_old.lead, e_new.lead))
            if sum(lcm) >= cap:
                pruned = True
                continue
            if all(
                a + b == c for a, b, c in zip(e_old.lead, e_new.lead, lcm)
            ):
                continue  # product criterion: disjoint leading supports
            heapq.heappush(pairs, (sum(lcm), i, new_index, lcm))

    for idx in range(len(elements)):
        push_pairs(idx)
    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        s, trunc1 = _spoly(elements[i], elements[j], lcm, ring, cap)
        nf, _, trunc2 = _fast_reduce(s, elements, ring, cap)
        if trunc1 or trunc2:
            truncated_any = True
        if nf:
            elements.append(_Element(_normalize(nf, ring)))
            push_pairs(len(elements) - 1)

    # minimalize: keep elements whose lead no other kept lead divides
    order = sorted(range(len(elements)), key=lambda k: _heap_key(elements[k].lead))
    kept = []
    for k in order:
        lead = elements[k].lead
        if any(_divides(elements[m].lead, lead) for m in kept):
            continue
        kept.append(k)
    minimal = [elements[k] for k in kept]
    # tail reduction against the other minimal elements
    reduced = []
    for pos, elem in enumerate(minimal):
        others = [m for q, m in enumerate(minimal) if q != pos]
        if others:
            nf, _, trunc = _fast_reduce(elem.terms, others, ring, cap)
            if trunc:
                truncated_any = True
            if not nf:
                continue
            elem = _Element(_normalize(nf, ring))
        reduced.append(elem)
    reduced.sort(key=lambda e: _heap_key(e.lead))
    complete = not pruned and not truncated_any
    return _SBResult(ring, cap, elements, reduced, complete)


# ---------------------------------------------------------------------------
# public surface


class StandardBasis:
    """Local standard basis with certified staircase data."""

    __slots__ = ("ring", "elements", "leading_exponents", "ordering", "cap", "_sb")

    def __init__(self, sb_result):
        self._sb = sb_result
        self.ring = sb_result.ring
        self.cap = sb_result.cap
        self.ordering = ORDER_NAME
        self.elements = [
            Poly(sb_result.ring, dict(e.terms), _clean=True) for e in sb_result.minimal
        ]
        self.leading_exponents = frozenset(sb_result.lead_exps)

    def quotient_basis(self):
        if not self._sb.finite:
            raise CapExceeded(
                "staircase not finite below the degree cap",
                partial_staircase=tuple(self._sb.staircase),
                cap=self.cap,
            )
        return QuotientBasis(self._sb.staircase)

    def __repr__(self):
        return (
            f"StandardBasis({len(self.elements)} elements, "
            f"ordering={self.ordering!r}, cap={self.cap})"
        )


def _as_gens(ideal):
    if isinstance(ideal, IdealGens):
        return ideal.generators
    return tuple(g for g in ideal if not g.is_zero())


def standard_basis(ideal, degree_cap=None):
    """Standard basis of an ideal, certified to determine the staircase.

    Raises CapExceeded (with the partial staircase as diagnostic) when
    the staircase is not finite-certified below the cap; colength() is
    the entry point that converts certified non-finiteness into the
    Infinity value instead.
    """
    cap = degree_cap if degree_cap is not None else DEFAULTS.degree_cap
    gens = _as_gens(ideal)
    if not gens:
        raise CapExceeded(
            "zero ideal has an infinite staircase", partial_staircase=(), cap=cap
        )
    sb = _sb_engine(gens, gens[0].ring, cap)
    basis = StandardBasis(sb)
    if not sb.finite:
        raise CapExceeded(
            f"staircase not finite below degree cap {cap}; "
            f"free coordinate rays: {sb.free_rays}",
            partial_staircase=tuple(sb.staircase),
            cap=cap,
        )
    return basis


def colength(ideal, degree_cap=None):
    """dim of the local quotient; INFINITY when certified infinite."""
    cap = degree_cap if degree_cap is not None else DEFAULTS.degree_cap
    gens = _as_gens(ideal)
    if not gens:
        return INFINITY
    sb = _sb_engine(gens, gens[0].ring, cap)
    if sb.finite:
        return len(sb.staircase)
    if sb.infinite_exact or sb.infinite_heuristic:
        return INFINITY
    raise CapExceeded(
        f"colength undecided at degree cap {cap}",
        partial_staircase=tuple(sb.staircase),
        cap=cap,
    )


# -- jets oracle -------------------------------------------------------------


def _jet_pass(gens, ring, cap):
    """One truncated-jet elimination: (dim, top_level_covered)."""
    arity = ring.arity
    cols = []
    for d in range(cap):
        cols.extend(monomials_of_degree(arity, d))
    col_index = {e: i for i, e in enumerate(cols)}
    rows = []
    for g in gens:
        ordg = g.order()
        if ordg >= cap:
            continue
        for d in range(cap - int(ordg)):
            for m in monomials_of_degree(arity, d):
                row = {}
                for e, c in g.terms.items():
                    ne = tuple(a + b for a, b in zip(e, m))
                    if sum(ne) < cap:
                        row[col_index[ne]] = c
                if row:
                    rows.append(row)
    pivots = {}
    for row in rows:
        row = dict(row)
        while row:
            j = min(row)
            piv = pivots.get(j)
            if piv is None:
                inv = 1 / row[j]
                pivots[j] = {k: v * inv for k, v in row.items()}
                break
            factor = row[j]
            for k, v in piv.items():
                cur = row.get(k)
                nv = (cur - factor * v) if cur is not None else -factor * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    dim = len(cols) - len(pivots)
    top_covered = all(
        col_index[m] in pivots for m in monomials_of_degree(arity, cap - 1)
    )
    return dim, top_covered


def jet_colength(ideal, cap):
    """Truncated-jet colength, certified by stabilization at cap, cap+1.

    dim O/(I + m^cap) == dim O/(I + m^(cap+1)) forces m^cap into the
    local ideal, so the stabilized value is the true colength; raises
    NotStabilized otherwise.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    gens = _as_gens(ideal)
    if not gens:
        raise NotStabilized("zero ideal never stabilizes")
    ring = gens[0].ring
    d1, _ = _jet_pass(gens, ring, cap)
    d2, top2 = _jet_pass(gens, ring, cap + 1)
    if d1 == d2 and top2:
        return d1
    raise NotStabilized(
        f"jet dimensions {d1} (cap {cap}) vs {d2} (cap {cap + 1}); "
        f"top level covered: {top2}"
    )


def _jet_mu(gens, ring, jet_cap):
    start = min(max(4, max(g.degree() for g in gens) + 1), jet_cap)
    cap = start
    last_err = None
    while cap <= jet_cap:
        try:
            return jet_colength(IdealGens(gens), cap)
        except NotStabilized as err:
            last_err = err
            cap = cap + max(2, cap // 2)
    raise last_err if last_err is not None else NotStabilized("jet cap too small")


# -- resultant oracle ---------------------------------------------------------


def _random_unimodular(rng):
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if abs(a * d - b * c) == 1:
            return a, b, c, d


def resultant_mu(f, seed=None):
    """mu for plane germs as ord_y Res_x of the transformed partials.

    Two independent random unimodular coordinate changes must agree;
    disagreement is fatal by design (transversality failures surface).
    """
    if f.ring.arity != 2:
        raise ArityUnsupported("resultant method needs exactly 2 variables")
    rng = random.Random(DEFAULTS.seed if seed is None else seed)
    fx = f.partial(f.ring.vars[0])
    fy = f.partial(f.ring.vars[1])
    if fx.is_zero() and fy.is_zero():
        raise NonIsolated("zero gradient")
    xv, yv = f.ring.vars
    values = []
    for _ in range(2):
        a, b, c, d = _random_unimodular(rng)
        img_x = Poly(f.ring, {(1, 0): a, (0, 1): b})
        img_y = Poly(f.ring, {(1, 0): c, (0, 1): d})
        px = fx.substitute({xv: img_x, yv: img_y})
        py = fy.substitute({xv: img_x, yv: img_y})
        res = resultant_x(px, py)
        if not res:
            raise NonIsolated("resultant of the partials vanishes identically")
        values.append(y_order(res))
    if values[0] != values[1]:
        raise OracleDisagreement(
            {"resultant_change_1": values[0], "resultant_change_2": values[1]}
        )
    return values[0]


# -- Milnor number -------------------------------------------------------------


def milnor(f, method=None, degree_cap=None, jet_cap=None, seed=None):
    """Milnor number of a germ vanishing at the origin.

    method one of standard_basis | jets | resultant | all; "all" runs
    every applicable method and requires exact agreement.  Returns
    INFINITY for a non-isolated critical point (standard_basis method).
    """
    method = method or DEFAULTS.method
    if f.constant_term():
        raise InvalidGerm("f(0) != 0: not a germ with critical value 0")
    grad = f.gradient()
    jc = jet_cap if jet_cap is not None else DEFAULTS.jet_cap
    if method == "standard_basis":
        return colength(IdealGens(grad, tag="jacobian"), degree_cap=degree_cap)
    if method == "jets":
        if all(g.is_zero() for g in grad):
            raise NotStabilized("zero gradient never stabilizes")
        return _jet_mu(grad, f.ring, jc)
    if method == "resultant":
        return resultant_mu(f, seed=seed)
    if method == "all":
        values = {}
        values["standard_basis"] = colength(
            IdealGens(grad, tag="jacobian"), degree_cap=degree_cap
        )
        sb_val = values["standard_basis"]
        if sb_val == INFINITY:
            if f.ring.arity == 2:
                try:
                    resultant_mu(f, seed=seed)
                except (NonIsolated, OracleDisagreement):
                    pass
                else:
                    raise OracleDisagreement(
                        {"standard_basis": "Infinity", "resultant": "finite"}
                    )
            return INFINITY
        values["jets"] = _jet_mu(grad, f.ring, jc)
        if f.ring.arity == 2:
            values["resultant"] = resultant_mu(f, seed=seed)
        if len(set(values.values())) != 1:
            raise OracleDisagreement(values)
        return sb_val
    raise ValueError(f"unknown method {method!r}")


# -- versal unfolding basis ----------------------------------------------------


def versal_basis(f, degree_cap=None):
    """Monomials whose classes form a basis of m/m(grad f).

    Cardinality mu + n - 1.  Among the monomial bases of the quotient the
    selection prefers low total degree, then balanced exponents, which
    reproduces the classical hand-picked bases (the degree-4 class
    representative for the plane quartics is x^2*y^2, not a pure power).
    """
    mu = colength(IdealGens(f.gradient()), degree_cap=degree_cap)
    if mu == INFINITY:
        raise NonIsolated("versal basis needs a finite Milnor number")
    cap = degree_cap if degree_cap is not None else DEFAULTS.degree_cap
    gens = _as_gens(maximal_times_jacobian(f))
    sb = _sb_engine(gens, f.ring, cap)
    if not sb.finite:
        raise CapExceeded(
            "m*(grad f) staircase not certified finite",
            partial_staircase=tuple(sb.staircase),
            cap=cap,
        )
    selected, _ = sb.preferred_basis()
    return [e for e in selected if any(e)]


# -- reduction with certificates ------------------------------------------------


def _tracked_reduce(h_terms, elements, ring, cap):
    """Division-based normal form tracking cofactors exactly.

    Returns (nf, cofactors, truncated) with
        input == sum_i cofactors[i] * elements[i] + nf
    exactly when truncated is False, and modulo m^cap otherwise.
    """
    h = dict(h_terms)
    cof = [{} for _ in elements]
    truncated = False
    heap = [_heap_key(e) for e in h]
    heapq.heapify(heap)
    irreducible = set()
    while heap:
        key = heapq.heappop(heap)
        mono = tuple(reversed(key[1]))
        if mono not in h or mono in irreducible:
            continue
        red_i = None
        for i, elem in enumerate(elements):
            if _divides(elem.lead, mono):
                red_i = i
                break
        if red_i is None:
            irreducible.add(mono)
            continue
        elem = elements[red_i]
        c = h.pop(mono)
        q = c / elem.lc
        shift = tuple(a - b for a, b in zip(mono, elem.lead))
        ct = cof[red_i]
        ct[shift] = ct[shift] + q if shift in ct else q
        if not ct[shift]:
            del ct[shift]
        for e2, c2 in elem.terms.items():
            if e2 == elem.lead:
                continue
            e = tuple(a + b for a, b in zip(e2, shift))
            if sum(e) >= cap:
                truncated = True
                continue
            prev = h.get(e)
            v = q * c2
            if prev is None:
                h[e] = -v
                heapq.heappush(heap, _heap_key(e))
            else:
                prev = prev - v
                if prev:
                    h[e] = prev
                else:
                    del h[e]
    return h, cof, truncated


def local_reduce(g, basis, with_certificate=True):
    """Normal form of g modulo the ideal of a StandardBasis.

    The normal form is written on the preferred monomial basis of the
    quotient when the staircase is finite (so the plane-quartic classes
    of x^4 and y^4 come out as multiples of x^2*y^2); membership is
    equivalent to a zero normal form.  With a certificate, returns
    cofactors on basis.elements with
        g - sum_i c_i b_i == normal_form
    exactly when no cap truncation occurred (flag `exact`).
    """
    sb = basis._sb
    ring = sb.ring
    if g.ring != ring:
        g = g.with_ring(ring)
    if g.degree() >= sb.cap:
        raise CapExceeded(
            f"input degree {g.degree()} reaches the basis cap {sb.cap}", cap=sb.cap
        )
    if sb.finite:
        coords = sb.normal_form_coords(g.terms)
        stair = sorted(sb.staircase, key=lambda e: (sum(e), e))
        index = {e: i for i, e in enumerate(stair)}
        vec = {index[e]: c for e, c in coords.items()}
        selected, sol = sb.express_in_preferred(vec)
        nf_terms = {m: c for m, c in zip(selected, sol) if c}
        normal_form = Poly(ring, nf_terms, _clean=True)
    else:
        nf, scale, _ = _fast_reduce(g.terms, sb.minimal, ring, sb.cap)
        inv = 1 / scale
        normal_form = Poly(ring, {e: c * inv for e, c in nf.items()}, _clean=True)
    result = {"normal_form": normal_form, "cofactors": None, "exact": None}
    if with_certificate:
        residue = g - normal_form
        nf2, cof, truncated = _tracked_reduce(residue.terms, sb.minimal, ring, sb.cap)
        if nf2:
            raise OracleDisagreement(
                {"certificate_residual": str(Poly(ring, nf2, _clean=True))}
            )
        result["cofactors"] = [Poly(ring, c, _clean=True) for c in cof]
        result["exact"] = not truncated
    return result
