"""Points on the Riemann sphere, chordal distance, antipodes, RP^2 classes.

Chordal normalization: |a,b| = |a-b| / (sqrt(1+|a|^2) sqrt(1+|b|^2)) and
|a,inf| = 1/sqrt(1+|a|^2), so the maximal distance is 1 and antipodal pairs
realize it.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction

from .errors import DomainError
from .scalars import GaussianRational, as_scalar, format_scalar, is_exact, to_complex


class SpherePoint:
    """A point of C union {infinity}; value is None exactly at infinity."""

    __slots__ = ("value",)

    def __init__(self, value=None, infinite=False):
        if infinite:
            object.__setattr__(self, "value", None)
        else:
            object.__setattr__(self, "value", as_scalar(value))

    def __setattr__(self, name, value):
        raise AttributeError("SpherePoint is immutable")

    @classmethod
    def infinity(cls):
        return cls(infinite=True)

    @classmethod
    def of(cls, x):
        if isinstance(x, SpherePoint):
            return x
        if x is None:
            return cls(infinite=True)
        if isinstance(x, str):
            if x.strip().lower() in ("inf", "infinity", "oo"):
                return cls(infinite=True)
            return cls(as_scalar(x))
        return cls(x)

    @property
    def is_infinity(self):
        return self.value is None

    def is_exact_point(self):
        return self.is_infinity or is_exact(self.value)

    def __complex__(self):
        if self.is_infinity:
            raise DomainError("infinity has no complex value")
        return to_complex(self.value)

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            try:
                other = SpherePoint.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return self.value == other.value

    def __hash__(self):
        if self.is_infinity:
            return hash("sphere-infinity")
        if isinstance(self.value, GaussianRational):
            return hash(self.value)
        return hash(complex(self.value))

    def sort_key(self):
        if self.is_infinity:
            return (1, 0.0, 0.0)
        z = to_complex(self.value)
        return (0, z.real, z.imag)

    def __repr__(self):
        return f"SpherePoint({format_point(self)!r})"

    def __str__(self):
        return format_point(self)


INFINITY = SpherePoint.infinity()


def format_point(p):
    p = SpherePoint.of(p)
    if p.is_infinity:
        return "inf"
    return format_scalar(p.value)


def chordal(a, b):
    """Chordal distance on the sphere, in [0, 1]."""
    a = SpherePoint.of(a)
    b = SpherePoint.of(b)
    if a.is_infinity and b.is_infinity:
        return 0.0
    if a.is_infinity or b.is_infinity:
        z = complex(b if a.is_infinity else a)
        return 1.0 / math.sqrt(1.0 + abs(z) ** 2)
    za, zb = complex(a), complex(b)
    return abs(za - zb) / (math.sqrt(1.0 + abs(za) ** 2) * math.sqrt(1.0 + abs(zb) ** 2))


def antipodal(p):
    """The antipode: 0 <-> inf, otherwise -1/conj(p). Exactness is preserved."""
    p = SpherePoint.of(p)
    if p.is_infinity:
        return SpherePoint(GaussianRational(0))
    v = p.value
    if not v:
        return INFINITY
    if isinstance(v, GaussianRational):
        return SpherePoint(-(GaussianRational(1) / v.conjugate()))
    return SpherePoint(-1.0 / v.conjugate())


def _abs2(p):
    """Squared modulus of a finite point; exact Fraction in exact mode."""
    if isinstance(p.value, GaussianRational):
        return p.value.abs2()
    z = complex(p)
    return z.real * z.real + z.imag * z.imag


def _in_upper_half(v):
    """arg in [0, pi): positive imaginary part, or positive real axis."""
    if isinstance(v, GaussianRational):
        return v.im > 0 or (v.im == 0 and v.re > 0)
    z = complex(v)
    return z.imag > 0 or (z.imag == 0 and z.real > 0)


class RP2Point:
    """Antipodal pair {p, -1/conj(p)} keyed by its canonical representative.

    Canonical choice: the member of modulus < 1; ties on the unit circle go to
    the representative with argument in [0, pi); the pair {0, inf} is keyed 0.
    """

    __slots__ = ("rep",)

    def __init__(self, p):
        object.__setattr__(self, "rep", _canonical_rep(SpherePoint.of(p)))

    def __setattr__(self, name, value):
        raise AttributeError("RP2Point is immutable")

    def __eq__(self, other):
        if not isinstance(other, RP2Point):
            return NotImplemented
        return self.rep == other.rep

    def __hash__(self):
        return hash(("rp2", self.rep))

    def sort_key(self):
        return self.rep.sort_key()

    def __repr__(self):
        return f"RP2Point({format_point(self.rep)!r})"


def _canonical_rep(p):
    if p.is_infinity:
        return SpherePoint(GaussianRational(0))
    if not p.value:
        return SpherePoint(GaussianRational(0))
    m2 = _abs2(p)
    if m2 < 1:
        return p
    if m2 > 1:
        return antipodal(p)
    return p if _in_upper_half(p.value) else antipodal(p)


def to_rp2(p):
    return RP2Point(p)


def dedupe_points(points, tol=0.0):
    """Collapse sphere points closer than tol in chordal distance.

    tol = 0 uses structural equality, which is exact for exact points.
    """
    out = []
    for p in sorted((SpherePoint.of(q) for q in points), key=SpherePoint.sort_key):
        if tol == 0.0:
            if any(p == q for q in out):
                continue
        else:
            if any(chordal(p, q) <= tol for q in out):
                continue
        out.append(p)
    return out


def rp2_count(points, tol=0.0):
    """Number of distinct RP^2 classes among the given sphere points.

    Warns when the set is not closed under the antipodal map, since omitted
    sets of maps descending to RP^2 must be antipodally closed.
    """
    pts = dedupe_points(points, tol)
    for p in pts:
        q = antipodal(p)
        if tol == 0.0:
            closed = any(q == r for r in pts)
        else:
            closed = any(chordal(q, r) <= tol for r in pts)
        if not closed:
            warnings.warn(
                f"point set is not antipodally closed: missing {format_point(q)}",
                stacklevel=2,
            )
            break
    classes = []
    for p in pts:
        c = RP2Point(p)
        if tol == 0.0:
            if any(c == d for d in classes):
                continue
        else:
            if any(chordal(c.rep, d.rep) <= tol for d in classes):
                continue
        classes.append(c)
    return len(classes)
