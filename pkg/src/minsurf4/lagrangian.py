"""Minimal Lagrangian surfaces in C^2 from holomorphic pairs.

A holomorphic F = (F1, F2) and a constant angle beta give the conformal
minimal Lagrangian immersion

    f = (1/sqrt 2) e^{i beta/2} (F1 - i conj(F2), F2 + i conj(F1)),

with spinors S1 = F2', S2 = -F1', induced metric (|S1|^2 + |S2|^2)|dz|^2 and
curvature K = -2 |S1 S2' - S2 S1'|^2 / (|S1|^2 + |S2|^2)^3.
"""

from __future__ import annotations

import cmath
import math

from .errors import (
    BadStencil,
    DegeneratePoint,
    DomainError,
)
from .domains import PuncturedPlane
from .gaussmap import exceptional_values
from .metric import MetricSpec, is_complete
from .poly import gcd, roots
from .rational import RationalFunction
from .scalars import to_complex
from .sphere import format_point


class HolomorphicPair:
    __slots__ = ("F1", "F2")

    def __init__(self, F1, F2):
        for F in (F1, F2):
            if not isinstance(F, RationalFunction):
                raise DomainError("pair components must be rational functions")
        object.__setattr__(self, "F1", F1)
        object.__setattr__(self, "F2", F2)

    def __setattr__(self, name, value):
        raise AttributeError("HolomorphicPair is immutable")

    def poles(self):
        out = []
        for F in (self.F1, self.F2):
            if F.den.degree > 0:
                out.extend(z for z, _ in roots(F.den))
        return out

    def pole_free_on(self, domain):
        return all(not domain.contains(z) for z in self.poles())


def spinors(pair):
    """S1 = F2', S2 = -F1'."""
    return pair.F2.derivative(), -pair.F1.derivative()


class LagrangianSpec:
    """Spinors plus angle; the pair is kept when available so the immersion
    itself can be evaluated. Specs built from spinors alone still support
    the metric, curvature and the omitted-value bound."""

    __slots__ = ("pair", "beta", "S1", "S2")

    def __init__(self, pair, beta, S1, S2):
        object.__setattr__(self, "pair", pair)
        object.__setattr__(self, "beta", float(beta))
        object.__setattr__(self, "S1", S1)
        object.__setattr__(self, "S2", S2)

    def __setattr__(self, name, value):
        raise AttributeError("LagrangianSpec is immutable")

    @classmethod
    def from_pair(cls, pair, beta=0.0):
        if not isinstance(pair, HolomorphicPair):
            pair = HolomorphicPair(*pair)
        s1, s2 = spinors(pair)
        return cls(pair, beta, s1, s2)

    @classmethod
    def from_spinors(cls, S1, S2, beta=0.0):
        for s in (S1, S2):
            if not isinstance(s, RationalFunction):
                raise DomainError("spinors must be rational functions")
        return cls(None, beta, S1, S2)

    def degenerate_everywhere(self):
        return self.S1.is_zero() and self.S2.is_zero()


def nondegenerate(spec, domain):
    """True iff |S1|^2 + |S2|^2 never vanishes on the domain.

    Returns (verdict, offending points); both spinors zero means the spec is
    degenerate everywhere and the offending list is None.
    """
    if spec.degenerate_everywhere():
        return False, None
    if spec.S1.is_zero() or spec.S2.is_zero():
        other = spec.S2 if spec.S1.is_zero() else spec.S1
        if other.num.degree <= 0:
            return True, []
        offenders = [z for z, _ in roots(other.num) if domain.contains(z)]
        return not offenders, offenders
    if spec.S1.exact and spec.S2.exact:
        g = gcd(spec.S1.num, spec.S2.num)
        if g.degree <= 0:
            return True, []
        offenders = [z for z, _ in roots(g) if domain.contains(z)]
        return not offenders, offenders
    offenders = [
        z
        for z, _ in roots(spec.S1.num)
        if domain.contains(z) and abs(spec.S2.eval_at(z)) < 1e-9
    ]
    return not offenders, offenders


def _require_pair(spec):
    if spec.pair is None:
        raise DomainError("immersion needs the holomorphic pair, not just spinors")
    return spec.pair


def immersion_f(spec, z):
    """(f1, f2) in C^2: parts evaluated exactly, combined in floating point."""
    pair = _require_pair(spec)
    f1 = to_complex(pair.F1.eval_at(z))
    f2 = to_complex(pair.F2.eval_at(z))
    c = cmath.exp(0.5j * spec.beta) / math.sqrt(2.0)
    return (c * (f1 - 1j * f2.conjugate()), c * (f2 + 1j * f1.conjugate()))


def immersion_xyzw(spec, z):
    """The four real coordinates (u1, v1, u2, v2)."""
    w1, w2 = immersion_f(spec, z)
    return (w1.real, w1.imag, w2.real, w2.imag)


def immersion_xyzw_phase_dropped(spec, z, coord):
    """Negative-control immersion: one real coordinate taken from the map
    with the e^{i beta/2} factor dropped, the rest keeping it.

    Dropping the phase on a whole complex slot is invisible to both the
    symplectic and harmonicity residuals (a constant unit phase neither
    breaks holomorphicity nor the Lagrangian frame), so the detectable
    corruption mixes coordinates computed with inconsistent frames.
    """
    if coord not in (0, 1, 2, 3):
        raise DomainError("coordinate index must be 0..3")
    pair = _require_pair(spec)
    f1 = to_complex(pair.F1.eval_at(z))
    f2 = to_complex(pair.F2.eval_at(z))
    c = cmath.exp(0.5j * spec.beta) / math.sqrt(2.0)
    c0 = 1.0 / math.sqrt(2.0)
    good = (c * (f1 - 1j * f2.conjugate()), c * (f2 + 1j * f1.conjugate()))
    flat = (c0 * (f1 - 1j * f2.conjugate()), c0 * (f2 + 1j * f1.conjugate()))
    vals = [good[0].real, good[0].imag, good[1].real, good[1].imag]
    raw = [flat[0].real, flat[0].imag, flat[1].real, flat[1].imag]
    vals[coord] = raw[coord]
    return tuple(vals)


def metric_curvature(spec, z):
    """(lambda^2, K) at z; degenerate points are refused."""
    s1 = to_complex(spec.S1.eval_at(z))
    s2 = to_complex(spec.S2.eval_at(z))
    lam2 = abs(s1) ** 2 + abs(s2) ** 2
    if lam2 == 0.0:
        raise DegeneratePoint(f"metric vanishes at {z}")
    d1 = to_complex(spec.S1.derivative().eval_at(z))
    d2 = to_complex(spec.S2.derivative().eval_at(z))
    # Lagrange identity: Delta log(|S1|^2+|S2|^2) = 4|S1 S2' - S2 S1'|^2 / lam2^2
    K = -2.0 * abs(s1 * d2 - s2 * d1) ** 2 / lam2**3
    return lam2, K


def metric_spec(spec):
    """The conformal metric of the surface as factor data: (1+|g|^2)|S1|^2
    with g = -S2/S1."""
    if spec.S1.is_zero():
        raise DomainError("S1 vanishes identically; use the plane report")
    g = -spec.S2 / spec.S1
    return MetricSpec([(g, 1)], spec.S1)


def _stencil_vals(fn, z, h):
    z = to_complex(z)
    try:
        return (
            fn(z),
            fn(z + h),
            fn(z - h),
            fn(z + 1j * h),
            fn(z - 1j * h),
        )
    except ZeroDivisionError as e:
        raise BadStencil("stencil touches a pole") from e


def lagrangian_minimality_check(spec, z, h=1e-3, drop_phase_coord=None):
    """(symplectic residual, harmonicity residual) by central differences.

    The symplectic residual is the pullback coefficient of
    du1^dv1 + du2^dv2; the harmonicity residual is the worst discrete
    Laplacian among the four coordinates. drop_phase_coord switches to the
    corrupted immersion for negative-control runs.
    """
    if h <= 0:
        raise BadStencil("stencil size must be positive")
    if drop_phase_coord is None:
        fn = lambda w: immersion_xyzw(spec, w)
    else:
        fn = lambda w: immersion_xyzw_phase_dropped(spec, w, drop_phase_coord)
    f0, fxp, fxm, fyp, fym = _stencil_vals(fn, z, h)
    dx = [(a - b) / (2 * h) for a, b in zip(fxp, fxm)]
    dy = [(a - b) / (2 * h) for a, b in zip(fyp, fym)]
    symp = abs(dx[0] * dy[1] - dy[0] * dx[1] + dx[2] * dy[3] - dy[2] * dx[3])
    harm = max(
        abs(p + m + q + r - 4 * c) / (h * h)
        for p, m, q, r, c in zip(fxp, fxm, fyp, fym, f0)
    )
    return symp, harm


def conformality_residual(spec, z, h=1e-3):
    """|‖f_x‖^2 - ‖f_y‖^2| + |<f_x, f_y>|, scaled by the column norms."""
    fn = lambda w: immersion_xyzw(spec, w)
    _, fxp, fxm, fyp, fym = _stencil_vals(fn, z, h)
    dx = [(a - b) / (2 * h) for a, b in zip(fxp, fxm)]
    dy = [(a - b) / (2 * h) for a, b in zip(fyp, fym)]
    nx = sum(v * v for v in dx)
    ny = sum(v * v for v in dy)
    dot = sum(a * b for a, b in zip(dx, dy))
    scale = max(1.0, nx, ny)
    return (abs(nx - ny) + abs(dot)) / scale


def gauss_components(spec):
    """The pair (g, e^{i beta}) attached to the surface; the constant second
    component is reported raw."""
    if spec.S1.is_zero():
        g = None
    else:
        g = -spec.S2 / spec.S1
    return g, cmath.exp(1j * spec.beta)


class CorollaryBoundReport:
    __slots__ = (
        "applicable",
        "reason",
        "completeness",
        "q",
        "omitted",
        "bound_holds",
    )

    def __init__(self, applicable, reason, completeness=None, q=None, omitted=None, bound_holds=None):
        object.__setattr__(self, "applicable", applicable)
        object.__setattr__(self, "reason", reason)
        object.__setattr__(self, "completeness", completeness)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "omitted", omitted)
        object.__setattr__(self, "bound_holds", bound_holds)

    def __setattr__(self, name, value):
        raise AttributeError("CorollaryBoundReport is immutable")

    def to_dict(self):
        return {
            "applicable": self.applicable,
            "reason": self.reason,
            "completeness": None
            if self.completeness is None
            else self.completeness.to_dict(),
            "q": self.q,
            "omitted": None
            if self.omitted is None
            else [format_point(v) for v in self.omitted],
            "bound_holds": self.bound_holds,
        }


def corollary_bound_check(spec, domain):
    """Complete minimal Lagrangian surfaces omit at most 3 tangent-plane
    values: builds the metric (1+|g|^2)|S1 dz|^2 with g = -S2/S1 and counts
    the omitted values when the metric is complete."""
    if not isinstance(domain, PuncturedPlane):
        raise DomainError("bound check runs on punctured planes")
    if spec.S1.is_zero():
        return CorollaryBoundReport(False, "not-applicable: Lagrangian plane case")
    g = -spec.S2 / spec.S1
    if g.is_constant():
        return CorollaryBoundReport(False, "not-applicable: Lagrangian plane case")
    m = MetricSpec([(g, 1)], spec.S1)
    completeness = is_complete(m, domain)
    if completeness.overall is not True:
        return CorollaryBoundReport(
            False, "hypothesis-failed: metric incomplete", completeness
        )
    omitted = exceptional_values(g, domain)
    q = len(omitted)
    return CorollaryBoundReport(
        True, "complete", completeness, q, omitted, q <= 3
    )
