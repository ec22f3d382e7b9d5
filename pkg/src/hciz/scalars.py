"""Exact scalar types: Gaussian rationals and radical scalars.

All identity checking in this package runs over the Gaussian rationals
Q(i) = {a + b i : a, b rational}, represented with arbitrary-precision
`fractions.Fraction` components.  Normalization constants additionally
involve square roots of positive integers; those are kept exact as
(Gaussian rational) * sqrt(positive integer) with a squarefree radicand,
and only ever combine by multiplication or squaring.
"""

from __future__ import annotations

from fractions import Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class GaussianRational:
    """An exact complex rational re + im*i."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- coercion helpers -------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as a Gaussian rational")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        n2 = o.norm2()
        if n2 == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n2,
            (self.im * o.re - self.re * o.im) / n2,
        )

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm2(self) -> Fraction:
        """|z|^2, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # -- predicates / conversion -------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def real_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        # real values hash like their Fraction so 3 == GaussianRational(3) hashes alike
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.is_zero:
            return "0"
        if not self.im:
            return str(self.re)
        imag = f"{self.im}i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        if not self.re:
            return imag
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        imag = f"{mag}i" if mag != 1 else "i"
        return f"{self.re}{sign}{imag}"

    def pair_str(self) -> str:
        """Coefficient as the canonical `(re, im)` pair of rationals."""
        return f"({self.re}, {self.im})"


QQI_ZERO = GaussianRational(0)
QQI_ONE = GaussianRational(1)
QQI_I = GaussianRational(0, 1)


def _extract_square(m: int) -> tuple[int, int]:
    """Write m = s^2 * t with t squarefree; return (s, t).

    Trial division; the radicands appearing here are products of small
    factorials, hence smooth, so this terminates quickly.
    """
    if m <= 0:
        raise ValueError("radicand must be positive")
    s, t, d = 1, m, 2
    while d * d <= t:
        dd = d * d
        while t % dd == 0:
            t //= dd
            s *= d
        d += 1
    return s, t


class RadicalScalar:
    """An exact scalar of the form coeff * sqrt(radicand).

    `radicand` is a positive squarefree integer after normalization; the
    zero scalar is stored with radicand 1.  Two such scalars are equal as
    complex numbers iff their normalized forms match componentwise.
    """

    __slots__ = ("coeff", "radicand")

    def __init__(self, coeff, radicand: int = 1):
        c = GaussianRational.coerce(coeff)
        if not isinstance(radicand, int):
            raise TypeError("radicand must be an integer")
        if c.is_zero:
            c, radicand = QQI_ZERO, 1
        elif radicand != 1:
            s, t = _extract_square(radicand)
            c, radicand = c * s, t
        elif radicand <= 0:
            raise ValueError("radicand must be positive")
        object.__setattr__(self, "coeff", c)
        object.__setattr__(self, "radicand", radicand)

    def __setattr__(self, name, value):
        raise AttributeError("RadicalScalar is immutable")

    @classmethod
    def coerce(cls, x) -> "RadicalScalar":
        if isinstance(x, RadicalScalar):
            return x
        return cls(GaussianRational.coerce(x))

    @classmethod
    def sqrt_of(cls, q) -> "RadicalScalar":
        """Exact sqrt(q) for a positive rational q: sqrt(p/r) = sqrt(p*r)/r."""
        q = q if isinstance(q, Fraction) else Fraction(q)
        if q <= 0:
            raise ValueError("square root of a nonpositive rational")
        return cls(Fraction(1, q.denominator), q.numerator * q.denominator)

    @classmethod
    def inv_sqrt_of(cls, q) -> "RadicalScalar":
        """Exact 1/sqrt(q) for a positive rational q."""
        return cls.sqrt_of(1 / (q if isinstance(q, Fraction) else Fraction(q)))

    # -- arithmetic ----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, RadicalScalar):
            return RadicalScalar(self.coeff * other.coeff, self.radicand * other.radicand)
        return RadicalScalar(self.coeff * GaussianRational.coerce(other), self.radicand)

    __rmul__ = __mul__

    def __neg__(self):
        return RadicalScalar(-self.coeff, self.radicand)

    def inverse(self) -> "RadicalScalar":
        if self.coeff.is_zero:
            raise ZeroDivisionError("inverse of zero radical scalar")
        # 1/(c sqrt(r)) = (1/(c r)) sqrt(r)
        return RadicalScalar(QQI_ONE / (self.coeff * self.radicand), self.radicand)

    def __truediv__(self, other):
        return self * RadicalScalar.coerce(other).inverse()

    def conjugate(self) -> "RadicalScalar":
        return RadicalScalar(self.coeff.conjugate(), self.radicand)

    def squared(self) -> GaussianRational:
        return self.coeff * self.coeff * self.radicand

    # -- predicates / conversion ----------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.coeff.is_zero

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def as_gaussian(self) -> GaussianRational:
        if self.radicand != 1:
            raise ValueError(f"{self} is irrational")
        return self.coeff

    def to_complex(self) -> complex:
        from math import sqrt

        return self.coeff.to_complex() * sqrt(self.radicand)

    def __eq__(self, other):
        try:
            o = RadicalScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.coeff == o.coeff and self.radicand == o.radicand

    def __hash__(self):
        if self.radicand == 1:
            return hash(self.coeff)
        return hash((self.coeff, self.radicand))

    def __bool__(self):
        return not self.is_zero

    def __repr__(self):
        return f"RadicalScalar({self.coeff!r}, {self.radicand})"

    def __str__(self):
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff}*sqrt({self.radicand})"
