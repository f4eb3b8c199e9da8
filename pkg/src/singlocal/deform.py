"""One-parameter deformation families and their Milnor jumps.

A Family is a polynomial total = f(s, z) with base fiber f(0, z), the
deformation symbol treated as one more transcendental parameter.  The
generic Milnor number over the fraction field (s transcendental) is
exactly the value attained on a Zariski-open set of small s, so

    jump of the family = mu(base) - mu(generic fiber) >= 0

by semicontinuity.  A sampled mode specializing s at several small
rationals exists as an independent cross-check.
"""

from .config import DEFAULTS
from .errors import (
    ArityUnsupported,
    BaseMismatch,
    GenericNonIsolated,
    NonIsolated,
    NonzeroAtOrigin,
    SampleInconsistent,
)
from .localalg import milnor
from .polys import INFINITY, Poly, Ring
from .rationals import Rational


class Family:
    """Validated one-parameter deformation; construct via make_family."""

    __slots__ = ("total", "base", "sym", "_generic_mu")

    def __init__(self, total, base, sym, generic_mu_value):
        self.total = total
        self.base = base
        self.sym = sym
        self._generic_mu = generic_mu_value

    def __repr__(self):
        return f"Family(total={self.total}, sym={self.sym!r})"

    def to_json(self):
        return {
            "total": str(self.total),
            "base": str(self.base),
            "sym": self.sym,
        }


def make_family(total, base, sym="s", degree_cap=None):
    """Validate a deformation: base fiber, vanishing at 0, generic isolation.

    The generic-isolation condition is checked generically: the Milnor
    number over the field with the deformation symbol transcendental must
    be finite (0 allowed: generic fibers may be smooth).
    """
    if sym not in total.ring.params:
        raise ValueError(f"deformation symbol {sym!r} not among {total.ring.params}")
    fiber0 = total.specialize({sym: Rational(0)})
    base_cmp = base
    if base_cmp.ring != fiber0.ring:
        base_cmp = base_cmp.with_ring(fiber0.ring)
    if fiber0 != base_cmp:
        raise BaseMismatch(
            f"total at {sym}=0 is {fiber0}, declared base is {base_cmp}"
        )
    if total.constant_term():
        raise NonzeroAtOrigin(
            f"total does not vanish at the origin: constant term "
            f"{total.constant_term()}"
        )
    mu_generic = milnor(total, method="standard_basis", degree_cap=degree_cap)
    if mu_generic == INFINITY:
        raise GenericNonIsolated(
            "generic fiber has a non-isolated critical point"
        )
    return Family(total, base_cmp, sym, int(mu_generic))


def generic_mu(family, mode="symbolic", samples=None, degree_cap=None):
    """Milnor number of the generic fiber.

    symbolic: the deformation symbol stays transcendental (the provably
    generic value).  sampled: evaluate at N distinct small rationals,
    take the minimum, and require the minimum at two or more samples.
    """
    if mode == "symbolic":
        return family._generic_mu
    if mode != "sampled":
        raise ValueError(f"unknown mode {mode!r}")
    samples = tuple(samples) if samples is not None else DEFAULTS.samples
    values = []
    for s0 in samples:
        fiber = family.total.specialize({family.sym: Rational(s0)})
        values.append(milnor(fiber, method="standard_basis", degree_cap=degree_cap))
    finite = [v for v in values if v != INFINITY]
    if not finite:
        raise SampleInconsistent(f"all samples non-isolated: {values}")
    low = min(finite)
    if finite.count(low) < 2:
        raise SampleInconsistent(
            f"minimum {low} attained once among {values}; add samples"
        )
    return int(low)


def family_jump(family, mode="symbolic", samples=None, degree_cap=None):
    """mu(base) - mu(generic fiber); nonnegative by semicontinuity."""
    mu0 = milnor(family.base, method="standard_basis", degree_cap=degree_cap)
    if mu0 == INFINITY:
        raise NonIsolated("base fiber has a non-isolated critical point")
    mu_s = generic_mu(family, mode=mode, samples=samples, degree_cap=degree_cap)
    jump = int(mu0) - mu_s
    if jump < 0:
        raise GenericNonIsolated(
            f"semicontinuity violated: mu(base)={mu0} < mu(generic)={mu_s}"
        )
    return jump


def family_report(family, mode="symbolic", samples=None, degree_cap=None):
    """JSON-ready summary {mu_base, mu_generic, jump, mode, samples?}."""
    mu0 = int(milnor(family.base, method="standard_basis", degree_cap=degree_cap))
    mu_s = generic_mu(family, mode=mode, samples=samples, degree_cap=degree_cap)
    data = {
        "family": family.to_json(),
        "mu_base": mu0,
        "mu_generic": mu_s,
        "jump": mu0 - mu_s,
        "mode": mode,
    }
    if mode == "sampled":
        used = tuple(samples) if samples is not None else DEFAULTS.samples
        data["samples"] = [str(s) for s in used]
    return data


_SUSPENSION_NAMES = ("z3", "z4", "z5", "z6", "z7", "z8", "z9")


def suspend(f, k=1):
    """f plus k squared fresh variables (stable equivalence suspension)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if f.ring.arity + k > 4:
        raise ArityUnsupported(
            f"suspension would need arity {f.ring.arity + k} > 4"
        )
    if k == 0:
        return f
    used = set(f.ring.vars) | set(f.ring.params)
    fresh = [n for n in _SUSPENSION_NAMES if n not in used][:k]
    if len(fresh) < k:
        raise ValueError("no fresh suspension variable names available")
    ring = f.ring.extend_vars(fresh)
    out = f.with_ring(ring)
    for name in fresh:
        v = Poly.variable(ring, name)
        out = out + v * v
    return out
