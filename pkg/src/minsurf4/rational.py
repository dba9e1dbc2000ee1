"""Rational functions of one variable, exact or approximate, plus Moebius maps.

Exact rationals are kept reduced (numerator and denominator coprime) with a
monic denominator, so zero/pole orders read off multiplicities directly and
equality is structural.
"""

from __future__ import annotations

import cmath

from .errors import DomainError, RequiresExactMode, UnsupportedPoint
from .poly import Polynomial, format_poly, gcd, multiplicity_at, parse_poly, roots
from .scalars import GaussianRational, as_scalar, conj, is_exact, to_complex

INF = object()  # marker for the point at infinity in order bookkeeping


class RationalFunction:
    __slots__ = ("num", "den", "exact")

    def __init__(self, num, den=None):
        num = num if isinstance(num, Polynomial) else Polynomial([num] if not isinstance(num, (list, tuple)) else num)
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([den] if not isinstance(den, (list, tuple)) else den)
        if den.is_zero():
            raise DomainError("zero denominator")
        if num.exact and den.exact:
            if not num.is_zero():
                g = gcd(num, den)
                if g.degree > 0:
                    num = num / g
                    den = den / g
            lead = den.leading()
            num = num * (GaussianRational(1) / lead)
            den = den.monic()
            exact = True
        else:
            num = Polynomial(num.to_complex_coeffs())
            den = Polynomial(den.to_complex_coeffs())
            lead = den.leading()
            num = num * (1.0 / lead)
            den = den.monic()
            exact = False
        if num.is_zero():
            den = Polynomial([1])
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def constant(cls, c):
        return cls(Polynomial([c]))

    @classmethod
    def z(cls):
        return cls(Polynomial.z())

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise DomainError("not a constant")
        return self.num.coeff(0)

    # -- field operations ----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, str):
            return None
        try:
            return RationalFunction(Polynomial([as_scalar(other)]))
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise DomainError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            raise DomainError("integer powers only")
        if n < 0:
            if self.is_zero():
                raise DomainError("negative power of zero")
            return RationalFunction(self.den, self.num) ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    # -- evaluation ----------------------------------------------------------

    def eval_at(self, z):
        """Value at a finite point; raises ZeroDivisionError at a pole."""
        n = self.num.eval(z)
        d = self.den.eval(z)
        if not d:
            raise ZeroDivisionError("pole")
        return n / d

    def eval_extended(self, z):
        """Value on the sphere: (is_inf, value-or-None). z may be INF."""
        if z is INF:
            dn = self.num.degree - self.den.degree
            if self.is_zero() or dn < 0:
                return False, GaussianRational(0) if self.exact else 0j
            if dn > 0:
                return True, None
            return False, self.num.leading() / self.den.leading()
        n = self.num.eval(z)
        d = self.den.eval(z)
        if not d:
            # reduced form: numerator cannot vanish there too in exact mode
            return True, None
        return False, n / d

    def __call__(self, z):
        return self.eval_at(z)

    # -- local orders ----------------------------------------------------------

    def order_at(self, point):
        """Order of vanishing at a sphere point: zeros > 0, poles < 0.

        The zero function raises (its order is +infinity everywhere).
        """
        if self.is_zero():
            raise DomainError("order of the zero function is undefined")
        if point is INF:
            return self.den.degree - self.num.degree
        if self.exact and is_exact(point):
            return multiplicity_at(self.num, point) - multiplicity_at(self.den, point)
        z = to_complex(point) if not isinstance(point, complex) else point
        return _approx_mult(self.num, z) - _approx_mult(self.den, z)

    def pole_order(self, point):
        return max(0, -self.order_at(point))

    def residue_at(self, point):
        """Residue of self dz at a finite point.

        Exact data: local power-series division (reduced form, so the
        numerator is a unit at any pole). Approximate data: small-circle
        contour integral, exact for the trapezoid rule up to high order.
        """
        if point is INF:
            raise UnsupportedPoint("residue at infinity is not supported; use a chart")
        pt = as_scalar(point)
        if self.is_zero():
            return GaussianRational(0) if self.exact and is_exact(pt) else 0j
        k = -self.order_at(pt)
        if k <= 0:
            return GaussianRational(0) if self.exact and is_exact(pt) else 0j
        if self.exact and is_exact(pt):
            num_s = _taylor_at(self.num, pt, k)
            den_s = _taylor_at(self.den, pt, 2 * k)
            unit = den_s[k:]
            series = _series_div(num_s, unit, k)
            return series[k - 1]
        z0 = to_complex(pt)
        others = [r for r, _ in roots(self.den) if abs(r - z0) > 1e-7 * (1.0 + abs(z0))]
        rad = min([abs(r - z0) for r in others], default=0.6) / 3.0
        rad = min(rad, 0.2)
        n = 512
        total = 0j
        for j in range(n):
            w = z0 + rad * cmath.exp(2j * cmath.pi * j / n)
            total += self.num.eval(w) / self.den.eval(w) * (w - z0)
        return total / n

    def is_identically_zero(self):
        """Exact zero test by evaluation at deg+1 distinct integer points.

        A rational identity of numerator degree d that holds at more than d
        points is an identity, so this is a proof, not a heuristic.
        """
        if not self.exact:
            raise RequiresExactMode("identity testing needs exact coefficients")
        if self.num.is_zero():
            return True
        d = self.num.degree
        count = 0
        t = 0
        while count <= d:
            pt = GaussianRational(t)
            if self.den.eval(pt):
                if self.num.eval(pt):
                    return False
                count += 1
            t += 1
        return True

    def conj_reflect(self):
        """The function z -> conj(self(-1/conj(z))) as a rational function."""
        n = max(self.num.degree, self.den.degree)
        num_r = _reflect_poly(self.num, n)
        den_r = _reflect_poly(self.den, n)
        return RationalFunction(num_r, den_r)

    def __repr__(self):
        return f"RationalFunction({format_rational(self)!r})"

    def __str__(self):
        return format_rational(self)


def _reflect_poly(p, n):
    """z^n * conj_coeffs(p)(-1/z): coefficient a_k goes to (-1)^k conj(a_k) z^{n-k}."""
    out = [0] * (n + 1)
    for k in range(p.degree + 1):
        c = conj(p.coeff(k))
        out[n - k] = -c if k % 2 else c
    return Polynomial(out)


def _approx_mult(p, z, tol=1e-7):
    m = 0
    for root, mult in roots(p):
        if abs(root - z) <= tol * (1.0 + abs(z)):
            m += mult
    return m


def _taylor_at(p, pt, nterms):
    """First nterms coefficients of p(pt + t) as a polynomial in t."""
    coeffs = []
    cur = p
    fact = 1
    one = GaussianRational(1) if p.exact and is_exact(pt) else 1.0
    for k in range(nterms):
        coeffs.append(cur.eval(pt) * (one / fact))
        cur = cur.derivative()
        fact *= k + 1
        if cur.is_zero():
            coeffs.extend([coeffs[0] * 0] * (nterms - len(coeffs)))
            break
    while len(coeffs) < nterms:
        coeffs.append(coeffs[0] * 0)
    return coeffs


def _series_div(num, den, nterms):
    """Power series num/den up to nterms; den[0] must be a unit."""
    if not den or not den[0]:
        raise DomainError("series division by a non-unit")
    out = []
    acc = list(num) + [num[0] * 0] * max(0, nterms - len(num))
    inv0 = 1 / den[0] if not isinstance(den[0], GaussianRational) else GaussianRational(1) / den[0]
    for k in range(nterms):
        c = acc[k] * inv0
        out.append(c)
        for j in range(1, min(len(den), nterms - k)):
            acc[k + j] = acc[k + j] - c * den[j]
    return out


# -- Moebius transforms --------------------------------------------------------


class MoebiusTransform:
    """(a z + b) / (c z + d) with nonzero determinant."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        a, b, c, d = (as_scalar(x) for x in (a, b, c, d))
        det = a * d - b * c
        if not det:
            raise DomainError("singular Moebius transform")
        for name, val in zip(("a", "b", "c", "d"), (a, b, c, d)):
            object.__setattr__(self, name, val)

    def __setattr__(self, name, value):
        raise AttributeError("MoebiusTransform is immutable")

    def as_rational(self):
        return RationalFunction(Polynomial([self.b, self.a]), Polynomial([self.d, self.c]))

    def apply_rational(self, r):
        if not isinstance(r, RationalFunction):
            r = RationalFunction.constant(as_scalar(r))
        num = self.a * r + self.b
        den = self.c * r + self.d
        return num / den

    def apply_point(self, z):
        """Extended evaluation: z may be INF; returns INF or a scalar."""
        if z is INF:
            if not self.c:
                return INF
            return self.a / self.c
        z = as_scalar(z)
        d = self.c * z + self.d
        if not d:
            return INF
        return (self.a * z + self.b) / d

    def inverse(self):
        return MoebiusTransform(self.d, -self.b, -self.c, self.a)

    def compose(self, other):
        return MoebiusTransform(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __repr__(self):
        return f"MoebiusTransform({self.a}, {self.b}, {self.c}, {self.d})"


# -- text grammar --------------------------------------------------------------


def format_rational(r, var="z"):
    if r.den.degree == 0:
        return format_poly(r.num, var)
    return f"{format_poly(r.num, var)} over {format_poly(r.den, var)}"


def parse_rational(text, exact=True, var="z"):
    """Parse 'NUM over DEN' or a bare polynomial."""
    parts = text.split(" over ")
    if len(parts) == 1:
        return RationalFunction(parse_poly(parts[0], exact=exact, var=var))
    if len(parts) != 2:
        raise ValueError(f"cannot parse rational function {text!r}")
    num = parse_poly(parts[0], exact=exact, var=var)
    den = parse_poly(parts[1], exact=exact, var=var)
    return RationalFunction(num, den)
