"""Exceptional values of rational maps and the degree-count inequalities.

For a complete conformal metric prod (1+|g_i|^2)^{m_i} |omega|^2 on a finitely
punctured plane whose nonconstant factors g_i each omit q_i > 2 values, the
counting inequality sum_i m_i/(q_i - 2) >= 1 must hold. verify_main_inequality
evaluates the left side in exact rational arithmetic and flags violations as
counterexamples; falsify hammers it with seeded random instances.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .errors import ConstantMapError, DomainError, FlatSurfaceError, RequiresExactMode
from .domains import PuncturedPlane, derive_rng
from .metric import MetricSpec, is_complete
from .poly import Polynomial, multiplicity_at, roots
from .rational import INF, MoebiusTransform, RationalFunction
from .scalars import GaussianRational, as_scalar, is_exact, to_complex
from .sphere import INFINITY, SpherePoint, dedupe_points, format_point

APPROX_TOL = 1e-7


def _boundary_images(g, domain):
    """Extended values of g at the punctures and at infinity."""
    out = []
    for p in domain.punctures:
        inf_flag, val = g.eval_extended(p)
        out.append(INFINITY if inf_flag else SpherePoint(val))
    inf_flag, val = g.eval_extended(INF)
    out.append(INFINITY if inf_flag else SpherePoint(val))
    return out


def _all_preimages_on_boundary(g, value, domain):
    """True iff every sphere preimage of value lies in punctures + infinity.

    Preimages at infinity never count against omission (infinity is always a
    boundary point of a punctured plane), so only the finite root content of
    the defining polynomial matters: num - value*den, or den for infinity.
    """
    if value.is_infinity:
        q = g.den
    else:
        q = g.num - Polynomial([value.value]) * g.den
    if q.is_zero():
        raise ConstantMapError("map is identically the tested value")
    if q.degree <= 0:
        return True
    if q.exact and all(is_exact(p) for p in domain.punctures):
        covered = sum(multiplicity_at(q, p) for p in domain.punctures)
        return covered == q.degree
    covered = 0
    for root, mult in roots(q):
        if any(
            abs(root - to_complex(p)) <= APPROX_TOL * (1.0 + abs(root))
            for p in domain.punctures
        ):
            covered += mult
    return covered == q.degree


def exceptional_values(g, domain):
    """Values omitted by a nonconstant rational g on a punctured plane.

    A value can only be omitted if it is a boundary image, so candidates are
    the extended values of g at the punctures and at infinity; each candidate
    is kept when all of its preimages lie on the boundary. Exact data gives
    an exact answer; approximate data matches roots to punctures within a
    fixed resolution.
    """
    if not isinstance(domain, PuncturedPlane):
        raise DomainError("exceptional-value analysis needs a punctured plane")
    if g.is_constant():
        raise ConstantMapError("constant maps have no exceptional-value count")
    candidates = dedupe_points(
        _boundary_images(g, domain),
        0.0 if g.exact else APPROX_TOL,
    )
    omitted = [
        v for v in candidates if _all_preimages_on_boundary(g, v, domain)
    ]
    return tuple(sorted(omitted, key=SpherePoint.sort_key))


class FactorReport:
    __slots__ = ("m", "constant", "omitted", "q")

    def __init__(self, m, constant, omitted=None, q=None):
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "constant", constant)
        object.__setattr__(self, "omitted", omitted)
        object.__setattr__(self, "q", q)

    def __setattr__(self, name, value):
        raise AttributeError("FactorReport is immutable")

    def to_dict(self):
        return {
            "m": self.m,
            "constant": self.constant,
            "omitted": None
            if self.omitted is None
            else [format_point(v) for v in self.omitted],
            "q": self.q,
        }


class MainInequalityReport:
    __slots__ = (
        "completeness",
        "factors",
        "lhs",
        "applicable",
        "holds",
        "counterexample",
    )

    def __init__(self, completeness, factors, lhs, applicable, holds, counterexample):
        object.__setattr__(self, "completeness", completeness)
        object.__setattr__(self, "factors", tuple(factors))
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "applicable", applicable)
        object.__setattr__(self, "holds", holds)
        object.__setattr__(self, "counterexample", counterexample)

    def __setattr__(self, name, value):
        raise AttributeError("MainInequalityReport is immutable")

    def to_dict(self):
        return {
            "completeness": self.completeness.to_dict(),
            "factors": [f.to_dict() for f in self.factors],
            "lhs": None if self.lhs is None else str(self.lhs),
            "applicable": self.applicable,
            "holds": self.holds,
            "counterexample": self.counterexample,
        }


def verify_main_inequality(spec, domain):
    """Exact check of sum m_i/(q_i - 2) >= 1 for the nonconstant factors.

    The left side is computed whenever every nonconstant factor omits more
    than two values; the verdict applies only when the metric is also
    complete. applicable and complete but lhs < 1 raises the COUNTEREXAMPLE
    flag, which no correct instance can produce.
    """
    completeness = is_complete(spec, domain)
    factors = []
    qs = []
    for g, m in spec.factors:
        if g.is_constant():
            factors.append(FactorReport(m, True))
            continue
        omitted = exceptional_values(g, domain)
        q = len(omitted)
        qs.append((m, q))
        factors.append(FactorReport(m, False, omitted, q))
    lhs = None
    if qs and all(q > 2 for _, q in qs):
        lhs = sum((Fraction(m, q - 2) for m, q in qs), Fraction(0))
    applicable = completeness.overall is True and lhs is not None
    holds = (lhs >= 1) if applicable else None
    counterexample = bool(applicable and lhs < 1)
    return MainInequalityReport(
        completeness, factors, lhs, applicable, holds, counterexample
    )


class R4GaussReport:
    __slots__ = ("completeness", "q1", "q2", "applicable", "holds", "note")

    def __init__(self, completeness, q1, q2, applicable, holds, note):
        object.__setattr__(self, "completeness", completeness)
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        object.__setattr__(self, "applicable", applicable)
        object.__setattr__(self, "holds", holds)
        object.__setattr__(self, "note", note)

    def __setattr__(self, name, value):
        raise AttributeError("R4GaussReport is immutable")

    def to_dict(self):
        return {
            "completeness": self.completeness.to_dict(),
            "q1": self.q1,
            "q2": self.q2,
            "applicable": self.applicable,
            "holds": self.holds,
            "note": self.note,
        }


def r4_gauss_check(g1, g2, omega_hat, domain):
    """Exceptional-value bound for surfaces in Euclidean 4-space.

    Both components nonconstant: complete and nonflat forces
    1/(q1-2) + 1/(q2-2) >= 1 whenever both q_i > 2. One component constant:
    the other omits at most 3 values when complete. Both constant: flat.
    """
    c1, c2 = g1.is_constant(), g2.is_constant()
    if c1 and c2:
        raise FlatSurfaceError("both Gauss map components constant")
    spec = MetricSpec([(g1, 1), (g2, 1)], omega_hat)
    completeness = is_complete(spec, domain)
    complete = completeness.overall is True
    if c1 or c2:
        g = g2 if c1 else g1
        q = len(exceptional_values(g, domain))
        applicable = complete
        holds = (q <= 3) if applicable else None
        note = "one constant component: the nonconstant one omits at most 3 values"
        if c1:
            return R4GaussReport(completeness, None, q, applicable, holds, note)
        return R4GaussReport(completeness, q, None, applicable, holds, note)
    q1 = len(exceptional_values(g1, domain))
    q2 = len(exceptional_values(g2, domain))
    applicable = complete and q1 > 2 and q2 > 2
    holds = None
    if applicable:
        holds = Fraction(1, q1 - 2) + Fraction(1, q2 - 2) >= 1
    note = "both components nonconstant: 1/(q1-2) + 1/(q2-2) >= 1 when both exceed 2"
    return R4GaussReport(completeness, q1, q2, applicable, holds, note)


def lift_equivalence(q1, q2):
    """Exact arithmetic fact behind the double-cover count translation:

    1/(2 q1 - 2) + 1/(2 q2 - 2) >= 1  iff  1/(q1 - 1) + 1/(q2 - 1) >= 2.
    Returns (left, right) truth values; q_i >= 2 required.
    """
    if q1 < 2 or q2 < 2:
        raise DomainError("counts below 2 leave both sides undefined here")
    left = Fraction(1, 2 * q1 - 2) + Fraction(1, 2 * q2 - 2) >= 1
    right = Fraction(1, q1 - 1) + Fraction(1, q2 - 1) >= 2
    return left, right


class NonorientableCountReport:
    __slots__ = ("q1", "q2", "holds", "equality", "consistent")

    def __init__(self, q1, q2, holds, equality, consistent):
        object.__setattr__(self, "q1", q1)
        object.__setattr__(self, "q2", q2)
        object.__setattr__(self, "holds", holds)
        object.__setattr__(self, "equality", equality)
        object.__setattr__(self, "consistent", consistent)

    def __setattr__(self, name, value):
        raise AttributeError("NonorientableCountReport is immutable")

    def to_dict(self):
        return {
            "q1": self.q1,
            "q2": self.q2,
            "holds": self.holds,
            "equality": self.equality,
            "consistent": self.consistent,
        }


def nonorientable_check(q1, q2):
    """RP^2-count constraint for complete nonflat nonorientable surfaces.

    Both generalized components nonconstant: 1/(q1-1) + 1/(q2-1) >= 2 must
    hold, so each q_i <= 2 with (2, 2) as the equality case; a count with
    q_i = 1 makes its term infinite and the constraint vacuous. `consistent`
    is whether declared counts could belong to such a surface.
    """
    if q1 < 0 or q2 < 0:
        raise DomainError("counts must be nonnegative")
    if q1 <= 1 or q2 <= 1:
        return NonorientableCountReport(q1, q2, True, False, True)
    lhs = Fraction(1, q1 - 1) + Fraction(1, q2 - 1)
    holds = lhs >= 2
    equality = lhs == 2
    return NonorientableCountReport(q1, q2, holds, equality, holds)


# -- falsification harness --------------------------------------------------------


class FalsifyBounds:
    """Instance-shape bounds for the random harness."""

    __slots__ = (
        "puncture_range",
        "m_range",
        "factor_range",
        "coeff_bound",
        "require_complete",
    )

    def __init__(
        self,
        puncture_range=(2, 5),
        m_range=(0, 3),
        factor_range=(1, 2),
        coeff_bound=3,
        require_complete=False,
    ):
        for lo, hi in (puncture_range, m_range, factor_range):
            if lo > hi or lo < 0:
                raise DomainError("empty or negative bound range")
        if puncture_range[0] < 1:
            raise DomainError("need at least one puncture")
        object.__setattr__(self, "puncture_range", tuple(puncture_range))
        object.__setattr__(self, "m_range", tuple(m_range))
        object.__setattr__(self, "factor_range", tuple(factor_range))
        object.__setattr__(self, "coeff_bound", int(coeff_bound))
        object.__setattr__(self, "require_complete", bool(require_complete))

    def __setattr__(self, name, value):
        raise AttributeError("FalsifyBounds is immutable")


def _draw_punctures(rng, count, coeff_bound):
    pool = [
        GaussianRational(a, b)
        for a in range(-coeff_bound - 1, coeff_bound + 2)
        for b in range(-coeff_bound - 1, coeff_bound + 2)
    ]
    return rng.sample(pool, count)


def _draw_gaussian_int(rng, bound, nonzero=False):
    while True:
        v = GaussianRational(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if v or not nonzero:
            return v


def _draw_factor(rng, punctures, bound):
    kind = rng.random()
    if kind < 0.35:
        # power map: the sharpness family shape
        k = rng.randint(1, 3)
        return RationalFunction(Polynomial([0] * k + [1]))
    if kind < 0.65:
        while True:
            a, b = _draw_gaussian_int(rng, bound), _draw_gaussian_int(rng, bound)
            c, d = _draw_gaussian_int(rng, bound), _draw_gaussian_int(rng, bound)
            if a * d - b * c:
                t = MoebiusTransform(a, b, c, d)
                r = t.as_rational()
                if not r.is_constant():
                    return r
    if kind < 0.8:
        # alpha + 1/prod(z - a_j): omits alpha and infinity
        subset = [p for p in punctures if rng.random() < 0.6] or [rng.choice(punctures)]
        alpha = _draw_gaussian_int(rng, bound)
        den = Polynomial.from_roots(subset)
        return RationalFunction(Polynomial([alpha]) * den + Polynomial([1]), den)
    return RationalFunction.constant(_draw_gaussian_int(rng, bound))


def _draw_instance(rng, bounds):
    n_punct = rng.randint(*bounds.puncture_range)
    punctures = _draw_punctures(rng, n_punct, bounds.coeff_bound)
    n_fac = rng.randint(*bounds.factor_range)
    factors = []
    for _ in range(n_fac):
        m = rng.randint(*bounds.m_range)
        factors.append((_draw_factor(rng, punctures, bounds.coeff_bound), m))
    den = Polynomial([1])
    for p in punctures:
        e = rng.randint(1, 2)
        den = den * Polynomial.from_roots([p]) ** e
    omega_hat = RationalFunction(
        Polynomial([_draw_gaussian_int(rng, bounds.coeff_bound, nonzero=True)]), den
    )
    spec = MetricSpec(factors, omega_hat)
    return spec, PuncturedPlane(punctures)


class FalsifyRow:
    __slots__ = (
        "index",
        "punctures",
        "ms",
        "qs",
        "complete",
        "lhs",
        "applicable",
        "holds",
        "counterexample",
    )

    def __init__(self, index, punctures, ms, qs, complete, lhs, applicable, holds, counterexample):
        for name, val in zip(self.__slots__, (index, punctures, ms, qs, complete, lhs, applicable, holds, counterexample)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("FalsifyRow is immutable")

    def to_dict(self):
        return {
            "index": self.index,
            "punctures": self.punctures,
            "m": self.ms,
            "q": self.qs,
            "complete": self.complete,
            "lhs": self.lhs,
            "applicable": self.applicable,
            "holds": self.holds,
            "counterexample": self.counterexample,
        }


def _run_one(args):
    seed, index, bounds = args
    attempts = 200 if bounds.require_complete else 1
    spec = domain = None
    for attempt in range(attempts):
        rng = derive_rng(seed, index, attempt, "falsify")
        spec, domain = _draw_instance(rng, bounds)
        report = verify_main_inequality(spec, domain)
        if not bounds.require_complete or report.completeness.overall is True:
            break
    qs = [f.q for f in report.factors if not f.constant]
    return FalsifyRow(
        index=index,
        punctures=[format_point(SpherePoint(p)) for p in domain.punctures],
        ms=[m for _, m in spec.factors],
        qs=qs,
        complete=report.completeness.overall,
        lhs=None if report.lhs is None else str(report.lhs),
        applicable=report.applicable,
        holds=report.holds,
        counterexample=report.counterexample,
    )


def falsify(seed, n_instances, bounds=None, workers=None):
    """Random-instance sweep; returns (summary dict, rows).

    Deterministic for fixed seed and bounds: each instance derives its RNG
    from (seed, index), and the worker pool maps in input order, so the
    worker count cannot change the output.
    """
    if n_instances < 0:
        raise DomainError("instance count must be nonnegative")
    bounds = bounds or FalsifyBounds()
    tasks = [(seed, i, bounds) for i in range(n_instances)]
    if workers and workers > 1 and n_instances > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_one, tasks))
    else:
        rows = [_run_one(t) for t in tasks]
    summary = {
        "instances": n_instances,
        "complete": sum(1 for r in rows if r.complete is True),
        "applicable": sum(1 for r in rows if r.applicable),
        "holds": sum(1 for r in rows if r.holds is True),
        "counterexamples": sum(1 for r in rows if r.counterexample),
    }
    return summary, rows
