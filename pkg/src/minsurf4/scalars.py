"""Exact Gaussian-rational scalars and the shared scalar text grammar.

Exact values are pairs of fractions.Fraction; approximate values are builtin
complex. Mixed arithmetic demotes to complex. Floats never promote silently
to exact: building a GaussianRational from a float raises.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import RequiresExactMode

# real part must be followed by a sign or the end, so "3i" parses as imaginary
_FRAC = r"[+-]?\d+(?:/\d+)?"
_TERM_RE = re.compile(
    rf"^\s*(?:(?P<re>{_FRAC})(?=\s*[+-]|\s*$))?"
    r"\s*(?P<im>[+-]?\s*(?:\d+(?:/\d+)?)?\s*i)?\s*$"
)


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, (float, complex)) or isinstance(im, (float, complex)):
            raise RequiresExactMode("floats do not promote to exact scalars")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        if isinstance(other, (float, complex)):
            return complex(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, complex):
            return complex(self) + o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, complex):
            return complex(self) - o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, complex):
            return o - complex(self)
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, complex):
            return complex(self) * o
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, complex):
            return complex(self) / o
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero scalar")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if isinstance(o, complex):
            return o / complex(self)
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussianRational(1) / self**(-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self):
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return abs(complex(self))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, (float, complex)):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        return format_scalar(self)

    @classmethod
    def parse(cls, text):
        return parse_scalar(text, exact=True)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def is_exact(x):
    return isinstance(x, (GaussianRational, int, Fraction))


def as_scalar(x):
    """Coerce to GaussianRational (exact inputs) or complex (float inputs)."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (float, complex)):
        return complex(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


def to_complex(x):
    if isinstance(x, GaussianRational):
        return complex(x)
    return complex(x)


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return complex(x).conjugate()


def format_scalar(x):
    """Canonical text form: 'a', 'bi', or 'a+bi' with rational a, b."""
    if isinstance(x, GaussianRational):
        re_, im_ = x.re, x.im
        if im_ == 0:
            return str(re_)
        if re_ == 0:
            return f"{im_}i"
        sign = "+" if im_ >= 0 else "-"
        return f"{re_}{sign}{abs(im_)}i"
    z = complex(x)
    if z.imag == 0:
        return repr(z.real)
    if z.real == 0:
        return f"{z.imag!r}i"
    sign = "+" if z.imag >= 0 else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_scalar(text, exact=True):
    """Parse 'a', 'bi', 'a+bi', 'a-bi' with rational parts; 'i' means 1i.

    With exact=False returns a complex instead.
    """
    s = text.strip()
    m = _TERM_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse scalar {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_tok = m.group("im")
    if im_tok is None:
        im_part = Fraction(0)
    else:
        body = im_tok.replace(" ", "")[:-1]
        if body in ("", "+"):
            im_part = Fraction(1)
        elif body == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(body)
    if exact:
        return GaussianRational(re_part, im_part)
    return complex(float(re_part), float(im_part))
