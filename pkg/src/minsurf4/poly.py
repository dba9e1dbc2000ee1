"""Univariate polynomials over Gaussian rationals or complex floats.

Coefficients are stored ascending. A polynomial is exact when every
coefficient is a GaussianRational; any float/complex coefficient demotes the
whole polynomial to approximate mode. Exact mode supports division, gcd and
square-free decomposition; root finding returns complex approximations with
exact multiplicities in exact mode.
"""

from __future__ import annotations

import cmath
import math
import re

from .errors import DomainError, RequiresExactMode
from .scalars import GaussianRational, as_scalar, conj, format_scalar, is_exact, parse_scalar, to_complex

CLUSTER_TOL = 1e-8


def _norm_coeffs(coeffs):
    vals = [as_scalar(c) for c in coeffs]
    exact = all(isinstance(v, GaussianRational) for v in vals)
    if not exact:
        vals = [to_complex(v) for v in vals]
    while vals and not vals[-1]:
        vals.pop()
    return tuple(vals), exact


class Polynomial:
    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs=()):
        vals, exact = _norm_coeffs(coeffs)
        object.__setattr__(self, "coeffs", vals)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @classmethod
    def constant(cls, c):
        return cls([c])

    @classmethod
    def z(cls):
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls.constant(lead)
        for r in roots:
            p = p * cls([-as_scalar(r), 1])
        return p

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def coeff(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return GaussianRational(0) if self.exact else 0j

    def leading(self):
        if self.is_zero():
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial()
        a, b = self.coeffs, other.coeffs
        out = [None] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                t = ai * bj
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial powers must be nonnegative integers")
        out = Polynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DomainError("polynomial division by zero")
        if self.degree < other.degree:
            return Polynomial(), self
        rem = list(self.coeffs)
        lead = other.leading()
        qdeg = self.degree - other.degree
        quot = [None] * (qdeg + 1)
        for k in range(qdeg, -1, -1):
            c = rem[other.degree + k] / lead
            quot[k] = c
            for j, oc in enumerate(other.coeffs):
                rem[j + k] = rem[j + k] - c * oc
        return Polynomial(quot), Polynomial(rem[: other.degree])

    def __truediv__(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError("inexact polynomial division")
        return q

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    # -- calculus and transforms ---------------------------------------------

    def derivative(self):
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def eval(self, z):
        z = as_scalar(z)
        if isinstance(z, complex) or not self.exact:
            zz = to_complex(z)
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * zz + to_complex(c)
            return acc
        acc = GaussianRational(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    __call__ = eval

    def monic(self):
        if self.is_zero():
            return self
        lead = self.leading()
        return Polynomial([c / lead for c in self.coeffs])

    def conj_coeffs(self):
        return Polynomial([conj(c) for c in self.coeffs])

    def reversed_to(self, n):
        """z^n * p(1/z) as a polynomial; requires n >= degree."""
        if n < self.degree:
            raise DomainError("reversal order below degree")
        out = [self.coeff(n - k) for k in range(n + 1)]
        return Polynomial(out)

    def compose(self, inner):
        inner = _as_poly(inner)
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * inner + Polynomial([c])
        return out

    def to_complex_coeffs(self):
        return [to_complex(c) for c in self.coeffs]

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)


def _as_poly(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, str):
        return None
    try:
        return Polynomial([as_scalar(x)])
    except TypeError:
        return None


def gcd(a, b):
    """Monic gcd over the exact field; gcd(p, 0) = monic p."""
    if not (a.exact and b.exact):
        raise RequiresExactMode("gcd needs exact coefficients")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def gcd_many(polys):
    out = Polynomial()
    for p in polys:
        out = gcd(out, p)
        if out.degree == 0:
            break
    return out


def squarefree_decomposition(p):
    """Yun's algorithm: list of (factor, multiplicity), factors monic, exact."""
    if not p.exact:
        raise RequiresExactMode("square-free decomposition needs exact coefficients")
    if p.is_zero():
        raise DomainError("zero polynomial")
    out = []
    if p.degree == 0:
        return out
    g = gcd(p, p.derivative())
    b = p / g
    c = p.derivative() / g
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a_i = gcd(b, d)
        if a_i.degree > 0:
            out.append((a_i, i))
        b = b / a_i
        c = d / a_i
        d = c - b.derivative()
        i += 1
    return out


def _aberth(coeffs, tol=1e-14, maxiter=200):
    """All roots of a complex polynomial with simple roots expected."""
    n = len(coeffs) - 1
    if n <= 0:
        return []
    lead = coeffs[-1]
    cs = [c / lead for c in coeffs]
    radius = 1.0 + max(abs(c) for c in cs[:-1]) if n else 1.0
    # deterministic spread with an irrational angle offset to dodge symmetry traps
    zs = [radius * cmath.exp(2j * math.pi * (k / n) + 0.4j) * (1 + 0.01 * k / max(n, 1)) for k in range(n)]
    der = [k * cs[k] for k in range(1, n + 1)]

    def ev(poly, z):
        acc = 0j
        for c in reversed(poly):
            acc = acc * z + c
        return acc

    for _ in range(maxiter):
        moved = 0.0
        for i in range(n):
            z = zs[i]
            pv = ev(cs, z)
            dv = ev(der, z)
            if dv == 0:
                zs[i] = z + (1e-6 + 1e-6j)
                moved = math.inf
                continue
            newton = pv / dv
            s = 0j
            for j in range(n):
                if j != i:
                    dz = z - zs[j]
                    if dz == 0:
                        dz = 1e-12 + 1e-12j
                    s += 1.0 / dz
            denom = 1.0 - newton * s
            if denom == 0:
                step = newton
            else:
                step = newton / denom
            zs[i] = z - step
            moved = max(moved, abs(step))
        if moved < tol * (1.0 + max(abs(z) for z in zs)):
            break
    # Newton polish
    for i in range(n):
        for _ in range(3):
            pv = ev(cs, zs[i])
            dv = ev(der, zs[i])
            if dv == 0:
                break
            zs[i] -= pv / dv
    return zs


def _cluster(points, tol):
    """Group near-coincident points; returns (centroid, count) pairs."""
    groups = []
    for z in sorted(points, key=lambda w: (w.real, w.imag)):
        for g in groups:
            c = g[0] / g[1]
            if abs(z - c) <= tol * (1.0 + abs(c)):
                g[0] += z
                g[1] += 1
                break
        else:
            groups.append([z, 1])
    return [(g[0] / g[1], g[1]) for g in groups]


def roots(p, tol=CLUSTER_TOL):
    """Roots with multiplicities, sorted by (real, imag).

    Exact input: exact square-free decomposition, then simple-root iteration
    per factor, so multiplicities are certificates, not cluster guesses.
    Approximate input: iteration on the full polynomial plus clustering.
    """
    if p.is_zero():
        raise DomainError("zero polynomial has no root set")
    if p.degree == 0:
        return []
    if p.exact:
        out = []
        for factor, mult in squarefree_decomposition(p):
            for z in _aberth(factor.to_complex_coeffs()):
                out.append((z, mult))
        out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
        return out
    approx = _aberth(p.to_complex_coeffs())
    out = _cluster(approx, tol)
    out.sort(key=lambda rm: (rm[0].real, rm[0].imag))
    return out


def multiplicity_at(p, point):
    """Order of vanishing of exact p at an exact point, by repeated division."""
    if not p.exact or not is_exact(point):
        raise RequiresExactMode("multiplicity_at needs exact data")
    if p.is_zero():
        raise DomainError("zero polynomial")
    pt = as_scalar(point)
    lin = Polynomial([-pt, 1])
    m = 0
    while p.eval(pt) == GaussianRational(0):
        p = p / lin
        m += 1
        if p.degree < 0:
            break
    return m


# -- text grammar ------------------------------------------------------------

_TERM_SPLIT = re.compile(r"(?=[+-](?![^()]*\)))")
_POW_RE = re.compile(r"^(?P<sign>[+-]?)\s*(?:\((?P<coef>[^()]*)\)\s*\*?\s*)?(?P<var>z)?(?:\^(?P<exp>-?\d+))?$")


def format_poly(p, var="z"):
    """Render with exact scalar coefficients: (c)*z^k terms joined by +."""
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        cs = format_scalar(c)
        if k == 0:
            terms.append(f"({cs})")
        elif k == 1:
            terms.append(f"({cs})*{var}")
        else:
            terms.append(f"({cs})*{var}^{k}")
    return " + ".join(terms)


def parse_poly(text, exact=True, var="z"):
    """Parse terms like (1/2)*z^3, z^2, -z, (3-2i), 5; '+'/'-' separated."""
    s = text.strip()
    if s in ("0", "(0)"):
        return Polynomial()
    chunks = [c for c in _TERM_SPLIT.split(s.replace(" ", "")) if c]
    coeffs = {}
    for chunk in chunks:
        m = _POW_RE.match(chunk)
        if not m or (m.group("var") is None and m.group("coef") is None):
            # bare scalar term such as 5, -3/2, 2i
            try:
                val = parse_scalar(chunk, exact=exact)
            except ValueError as e:
                raise ValueError(f"cannot parse polynomial term {chunk!r}") from e
            coeffs[0] = coeffs.get(0, 0) + val
            continue
        sign = -1 if m.group("sign") == "-" else 1
        coef_txt = m.group("coef")
        if coef_txt is not None:
            val = parse_scalar(coef_txt, exact=exact)
        else:
            val = GaussianRational(1) if exact else 1 + 0j
        if m.group("var") is None:
            if m.group("exp") is not None:
                raise ValueError(f"exponent without variable in {chunk!r}")
            k = 0
        else:
            k = int(m.group("exp")) if m.group("exp") is not None else 1
        if k < 0:
            raise ValueError(f"negative exponent in polynomial term {chunk!r}")
        coeffs[k] = coeffs.get(k, 0) + sign * val
    n = max(coeffs) if coeffs else 0
    return Polynomial([coeffs.get(k, 0) for k in range(n + 1)])
