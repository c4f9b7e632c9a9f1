"""Exact arithmetic in Q(sqrt(D)) and the continued fractions of Sturmian slopes.

Rationals are plain :class:`fractions.Fraction`.  Every comparison made by
this package goes through :meth:`QuadraticNumber.sign`, which never touches
floating point.
"""

from __future__ import annotations

import decimal
import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from .words import ParryParams

BigRational = Fraction

DEFAULT_DIGITS = 30


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} exactly")


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@functools.total_ordering
class QuadraticNumber:
    """Exact ``a + b*sqrt(d)`` with rational a, b and a positive integer d.

    Numbers with different ``d`` only mix when one of them is rational.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 1):
        if not isinstance(d, int) or d <= 0:
            raise ValueError("d must be a positive integer")
        object.__setattr__(self, "a", _as_fraction(a))
        object.__setattr__(self, "b", _as_fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    def __reduce__(self):
        return (QuadraticNumber, (self.a, self.b, self.d))

    @classmethod
    def sqrt(cls, d: int) -> "QuadraticNumber":
        return cls(0, 1, d)

    def _coerce(self, other):
        if isinstance(other, QuadraticNumber):
            if other.d == self.d or other.b == 0:
                return other.a, other.b
            if self.b == 0:
                return None
            raise ValueError(f"mixing sqrt({self.d}) with sqrt({other.d})")
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return NotImplemented

    def _common_d(self, other) -> int:
        if isinstance(other, QuadraticNumber) and self.b == 0 and other.b != 0:
            return other.d
        return self.d

    def __add__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        if c is None:
            return other + self
        return QuadraticNumber(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.a, -self.b, self.d)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pos__(self):
        return self

    def __sub__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        if c is None:
            return -(other - self)
        return QuadraticNumber(self.a - c[0], self.b - c[1], self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        if c is None:
            return other * self
        a, b = c
        return QuadraticNumber(self.a * a + self.b * b * self.d, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """a^2 - d*b^2, i.e. the product with the conjugate."""
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.a, -self.b, self.d)

    def inverse(self) -> "QuadraticNumber":
        n = self.norm()
        if n == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("division by zero")
            # only possible when d is a perfect square
            r = math.isqrt(self.d)
            return QuadraticNumber(1 / (self.a + self.b * r), 0, self.d)
        return QuadraticNumber(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadraticNumber(self.a / other, self.b / other, self.d)
        if isinstance(other, QuadraticNumber):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadraticNumber(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        sa, sb = _sign(self.a), _sign(self.b)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins
        return sa if self.a * self.a > self.b * self.b * self.d else (
            0 if self.a * self.a == self.b * self.b * self.d else sb)

    def is_rational(self) -> bool:
        return self.b == 0

    def to_fraction(self) -> Fraction:
        if self.b != 0:
            raise ValueError(f"{self} is irrational")
        return self.a

    def __eq__(self, other):
        if isinstance(other, QuadraticNumber):
            if self.d != other.d and self.b != 0 and other.b != 0:
                return _cross_eq(self, other)
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __lt__(self, other):
        c = self._coerce(other)
        if c is NotImplemented:
            return c
        if c is None:
            return (other - self).sign() > 0
        return QuadraticNumber(self.a - c[0], self.b - c[1], self.d).sign() < 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.to_decimal(20))

    def to_decimal(self, digits: int = DEFAULT_DIGITS) -> decimal.Decimal:
        """Decimal rendering with ``digits`` significant digits (display only)."""
        ctx = decimal.Context(prec=digits + 15)
        a = ctx.divide(decimal.Decimal(self.a.numerator), decimal.Decimal(self.a.denominator))
        if self.b == 0:
            return decimal.Context(prec=digits).plus(a)
        root = ctx.sqrt(decimal.Decimal(self.d))
        b = ctx.divide(decimal.Decimal(self.b.numerator), decimal.Decimal(self.b.denominator))
        if _sign(self.a) * _sign(self.b) < 0:
            # a + b r = (a^2 - b^2 d) / (a - b r) avoids cancellation
            n = self.norm()
            num = ctx.divide(decimal.Decimal(n.numerator), decimal.Decimal(n.denominator))
            value = ctx.divide(num, ctx.subtract(a, ctx.multiply(b, root)))
        else:
            value = ctx.add(a, ctx.multiply(b, root))
        return decimal.Context(prec=digits).plus(value)

    def __repr__(self):
        return f"QuadraticNumber({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        # pull square factors out of the radical for display
        k, r = _square_part(self.d)
        coeff = self.b * k
        rad = f"√{r}" if r != 1 else ""
        if r == 1:
            return str(self.a + coeff)
        mag = abs(coeff)
        term = rad if mag == 1 else f"{mag}{rad}" if mag.denominator == 1 else f"({mag}){rad}"
        if self.a == 0:
            return ("-" if coeff < 0 else "") + term
        return f"{self.a} {'-' if coeff < 0 else '+'} {term}"

    def as_dict(self, digits: int = DEFAULT_DIGITS) -> dict:
        return {
            "a": fraction_dict(self.a),
            "b": fraction_dict(self.b),
            "D": self.d,
            "decimal": str(self.to_decimal(digits)),
        }


def _cross_eq(x: QuadraticNumber, y: QuadraticNumber) -> bool:
    # x, y both irrational over different radicands: equal only if the
    # radicals are rational multiples of each other
    kx, rx = _square_part(x.d)
    ky, ry = _square_part(y.d)
    return rx == ry and x.a == y.a and x.b * kx == y.b * ky


def _square_part(d: int) -> tuple[int, int]:
    """Split d = k^2 * r with r square-free (trial division, d is small here)."""
    k, r, f = 1, d, 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            k *= f
        f += 1
    return k, r


def fraction_dict(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def number_dict(x, digits: int = DEFAULT_DIGITS) -> dict:
    """JSON-ready exact encoding of a Fraction or QuadraticNumber."""
    if isinstance(x, QuadraticNumber):
        return x.as_dict(digits)
    x = _as_fraction(x)
    out = fraction_dict(x)
    out["decimal"] = str(decimal.Context(prec=digits).divide(
        decimal.Decimal(x.numerator), decimal.Decimal(x.denominator)))
    return out


def beta_of(params: ParryParams) -> tuple[QuadraticNumber, QuadraticNumber]:
    """The two roots of x^2 - (p+1)x + (p-q), larger first."""
    p, d = params.p, params.discriminant
    half = Fraction(1, 2)
    return (QuadraticNumber(Fraction(p + 1, 2), half, d),
            QuadraticNumber(Fraction(p + 1, 2), -half, d))


def limit_index(params: ParryParams) -> QuadraticNumber:
    """p + 1 + (2q + 1 - p) / (beta - 1)."""
    beta, _ = beta_of(params)
    p, q = params.p, params.q
    return (2 * q + 1 - p) / (beta - 1) + (p + 1)


@dataclass(frozen=True)
class ContinuedFraction:
    """``[head; a1, a2, ...]`` whose partial quotients past the head repeat."""

    head: int
    periodic_tail: tuple[int, ...]

    def __post_init__(self):
        if not self.periodic_tail or any(a <= 0 for a in self.periodic_tail):
            raise ValueError("periodic tail must be a nonempty sequence of positive integers")

    def partial_quotient(self, k: int) -> int:
        if k == 0:
            return self.head
        return self.periodic_tail[(k - 1) % len(self.periodic_tail)]

    def terms(self, n: int) -> list[int]:
        """a_0 .. a_{n-1}."""
        return [self.partial_quotient(k) for k in range(n)]

    def convergents(self, n: int) -> list[Fraction]:
        """Values of the truncations [a_0; a_1, ..., a_k] for k < n."""
        out = []
        for k in range(n):
            value = Fraction(self.partial_quotient(k))
            for j in range(k - 1, -1, -1):
                value = self.partial_quotient(j) + 1 / value
            out.append(value)
        return out

    def value(self) -> QuadraticNumber:
        """Exact value: the positive fixed point of the period's Moebius map."""
        # y = [a1; a2, ..., ak, y]  ->  y = (P y + P') / (Q y + Q')
        P, Pp, Q, Qp = 1, 0, 0, 1
        for a in self.periodic_tail:
            P, Pp = a * P + Pp, P
            Q, Qp = a * Q + Qp, Q
        # Q y^2 + (Qp - P) y - Pp = 0
        if Q == 0:
            raise ValueError("degenerate period")
        disc = (Qp - P) ** 2 + 4 * Q * Pp
        y = QuadraticNumber(Fraction(P - Qp, 2 * Q), Fraction(1, 2 * Q), disc)
        return 1 / y + self.head

    def __str__(self):
        tail = ", ".join(str(a) for a in self.periodic_tail)
        return f"[{self.head}; ({tail})^ω]"


def slope_cf(p: int) -> ContinuedFraction:
    """Continued fraction of the slope 1 - 1/beta when q = p - 1."""
    if p < 2:
        raise ValueError("Sturmian case needs p >= 2")
    return ContinuedFraction(0, (1, p - 1))


def denominators_from_zero(p: int, n_max: int) -> list[int]:
    # q_0 = 1, q_1 = 1; even steps use a_{2n} = p - 1, odd steps a_{2n+1} = 1
    qs = [1, 1]
    for k in range(2, n_max + 1):
        a = p - 1 if k % 2 == 0 else 1
        qs.append(a * qs[k - 1] + qs[k - 2])
    return qs[: n_max + 1]


def convergent_denominators(p: int, n_max: int) -> list[int]:
    """q_1, ..., q_{n_max} for the slope of the Sturmian case q = p - 1.

    q_{2n} = (p-1) q_{2n-1} + q_{2n-2} and q_{2n+1} = q_{2n} + q_{2n-1},
    from q_1 = 1, q_2 = p, q_3 = p + 1.
    """
    if p < 2:
        raise ValueError("Sturmian case needs p >= 2")
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    return denominators_from_zero(p, n_max)[1:]


def convergent_denominator_closed_form(p: int, k: int) -> QuadraticNumber:
    """q_k through powers of beta and beta' (q = p - 1); k >= 1."""
    beta, beta_c = beta_of(ParryParams(p, p - 1))
    gap = beta - beta_c
    if k % 2 == 1:
        n = (k + 1) // 2
        return (beta ** n - beta_c ** n) / gap
    n = k // 2
    return ((1 - beta_c) * beta ** (n + 1) - (1 - beta) * beta_c ** (n + 1)) / gap


def sturmian_term(p: int, m: int) -> Fraction:
    """a_{m+2} + 2 + (q_m - 2)/q_{m+1} for an even index m."""
    if m % 2:
        raise ValueError("only even indices are used")
    if m < 0:
        raise ValueError("index must be nonnegative")
    cf = slope_cf(p)
    qs = denominators_from_zero(p, m + 1)
    return cf.partial_quotient(m + 2) + 2 + Fraction(qs[m] - 2, qs[m + 1])


def sturmian_index_term(p: int, n: int) -> Fraction:
    """The Sturmian index term at even position 2n; equals ind(w^(n)) when q = p - 1."""
    return sturmian_term(p, 2 * n)


def sturmian_supremum(p: int) -> QuadraticNumber:
    """sup over n of the even-index terms: 2 + (p - 1) + [0; 1, p-1, 1, p-1, ...]."""
    # q_{2n}/q_{2n+1} = [0; a_{2n+1}, ..., a_1] tends to the slope itself
    return slope_cf(p).value() + (p + 1)
