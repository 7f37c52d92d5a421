"""Exact arithmetic over the rationals and the Gaussian rationals Q(i).

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
are stored as three integers ``(a, b, den)`` meaning ``(a + b*i) / den`` with
``den > 0`` and ``gcd(a, b, den) == 1``, so equal values always share one
representation and equality is structural.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "Rational",
    "GaussianRational",
    "ZERO",
    "ONE",
    "I",
    "as_gaussian",
    "as_rational",
    "field_arith",
    "conjugate",
    "sqrt_if_exact",
    "rational_to_str",
    "parse_rational",
    "parse_gaussian",
]

Rational = Fraction


def _canon(a: int, b: int, den: int) -> "GaussianRational":
    if den < 0:
        a, b, den = -a, -b, -den
    g = math.gcd(a, b, den)
    if g != 1:
        a //= g
        b //= g
        den //= g
    obj = object.__new__(GaussianRational)
    obj._a = a
    obj._b = b
    obj._d = den
    return obj


class GaussianRational:
    """An element ``re + im*i`` of Q(i).  Immutable and hashable."""

    __slots__ = ("_a", "_b", "_d")

    def __new__(cls, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im == 0:
                return re
            return re + as_gaussian(im) * I
        if isinstance(re, str):
            if im != 0:
                raise TypeError("string input takes no imaginary part")
            return parse_gaussian(re)
        r = as_rational(re)
        m = as_rational(im)
        den = r.denominator * m.denominator // math.gcd(r.denominator, m.denominator)
        return _canon(r.numerator * (den // r.denominator),
                      m.numerator * (den // m.denominator), den)

    # -- accessors -------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    def is_real(self) -> bool:
        return self._b == 0

    def conjugate(self) -> "GaussianRational":
        if self._b == 0:
            return self
        return _canon(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        """``x * conj(x)`` as a rational."""
        return Fraction(self._a * self._a + self._b * self._b, self._d * self._d)

    # -- arithmetic ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = as_gaussian(other)
            else:
                return NotImplemented
        d1, d2 = self._d, other._d
        if d1 == d2:
            return _canon(self._a + other._a, self._b + other._b, d1)
        return _canon(self._a * d2 + other._a * d1, self._b * d2 + other._b * d1, d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(GaussianRational)
        obj._a = -self._a
        obj._b = -self._b
        obj._d = self._d
        return obj

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = as_gaussian(other)
            else:
                return NotImplemented
        d1, d2 = self._d, other._d
        if d1 == d2:
            return _canon(self._a - other._a, self._b - other._b, d1)
        return _canon(self._a * d2 - other._a * d1, self._b * d2 - other._b * d1, d1 * d2)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = as_gaussian(other)
            else:
                return NotImplemented
        a, b, c, e = self._a, self._b, other._a, other._b
        if b == 0 and e == 0:
            return _canon(a * c, 0, self._d * other._d)
        return _canon(a * c - b * e, a * e + b * c, self._d * other._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, GaussianRational):
            if isinstance(other, (int, Fraction)):
                other = as_gaussian(other)
            else:
                return NotImplemented
        c, e = other._a, other._b
        if c == 0 and e == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        # (a+bi)/d / ((c+ei)/f) = f (a+bi)(c-ei) / (d (c^2+e^2))
        a, b = self._a, self._b
        f = other._d
        return _canon(f * (a * c + b * e), f * (b * c - a * e), self._d * (c * c + e * e))

    def __rtruediv__(self, other):
        return as_gaussian(other).__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** (-k))
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ------------------------------------------
    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self._a == other._a and self._b == other._b and self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._b == 0 and Fraction(self._a, self._d) == other
        return NotImplemented

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return self._a != 0 or self._b != 0

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if im_ == 0:
            return rational_to_str(re_)
        if im_ == 1:
            ims = "i"
        elif im_ == -1:
            ims = "-i"
        else:
            ims = rational_to_str(im_) + "i"
        if re_ == 0:
            return ims
        sign = "" if ims.startswith("-") else "+"
        return f"{rational_to_str(re_)}{sign}{ims}"

    def to_json(self) -> dict:
        return {"re": rational_to_str(self.re), "im": rational_to_str(self.im)}

    @classmethod
    def from_json(cls, obj) -> "GaussianRational":
        if isinstance(obj, str):
            return parse_gaussian(obj)
        if not isinstance(obj, dict) or "re" not in obj:
            raise ValueError(f"expected {{'re': ..., 'im': ...}}, got {obj!r}")
        extra = set(obj) - {"re", "im"}
        if extra:
            raise ValueError(f"unexpected keys {sorted(extra)} in number")
        return cls(parse_rational(obj["re"]), parse_rational(obj.get("im", "0")))


ZERO = _canon(0, 0, 1)
ONE = _canon(1, 0, 1)
I = _canon(0, 1, 1)


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a number here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, GaussianRational):
        if not x.is_real():
            raise ValueError(f"{x} is not real")
        return x.re
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def as_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return _canon(x, 0, 1)
    if isinstance(x, Fraction):
        return _canon(x.numerator, 0, x.denominator)
    return GaussianRational(x)


def field_arith(x, y, op: str) -> GaussianRational:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two field elements."""
    x, y = as_gaussian(x), as_gaussian(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def conjugate(x) -> GaussianRational:
    return as_gaussian(x).conjugate()


def _exact_isqrt(n: int):
    r = math.isqrt(n)
    return r if r * r == n else None


def sqrt_if_exact(q) -> GaussianRational | None:
    """Square root of a rational inside Q(i), or ``None`` if there is none.

    For ``q = s**2`` returns ``s``; for ``q = -s**2`` returns ``s*i``
    (``s >= 0`` in both cases).
    """
    q = as_rational(q)
    p, d = abs(q.numerator), q.denominator
    rp, rd = _exact_isqrt(p), _exact_isqrt(d)
    if rp is None or rd is None:
        return None
    s = Fraction(rp, rd)
    if q >= 0:
        return as_gaussian(s)
    return GaussianRational(0, s)


def rational_to_str(q: Fraction) -> str:
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(s) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``.  Decimal and float forms are rejected."""
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected a rational string, got {s!r}")
    m = _RAT_RE.match(s)
    if not m:
        raise ValueError(f"malformed rational {s!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {s!r}")
    return Fraction(num, den)


def parse_gaussian(s: str) -> GaussianRational:
    """Parse strings such as ``"3"``, ``"-1/2"``, ``"2i"``, ``"1/2-3/4i"``, ``"-i"``."""
    if not isinstance(s, str):
        raise ValueError(f"expected a string, got {s!r}")
    t = s.replace(" ", "")
    if not t.endswith("i"):
        return as_gaussian(parse_rational(t))
    body = t[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_part, im_part = body[:cut], body[cut:]
    else:
        re_part, im_part = "", body
    try:
        re_ = parse_rational(re_part) if re_part else Fraction(0)
        if im_part in ("", "+"):
            im_ = Fraction(1)
        elif im_part == "-":
            im_ = Fraction(-1)
        else:
            im_ = parse_rational(im_part)
    except ValueError:
        raise ValueError(f"malformed Gaussian rational {s!r}") from None
    return GaussianRational(re_, im_)
