"""Fixed absolute-precision arithmetic in the p-adic integers.

A :class:`PAdicInt` is a residue modulo ``p**precision``.  Every operation is
exact modulo the smaller of the operand precisions; nothing here ever touches
floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from typing import Sequence

from sympy.ntheory import isprime, sqrt_mod

#: valuation of a residue that is zero to working precision
AT_LEAST_PRECISION = math.inf

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class PrecisionError(ArithmeticError):
    """Raised when a request needs more p-adic digits than are available."""


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    return p >= 2 and bool(isprime(p))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not _is_prime(p):
        raise ValueError(f"p must be a prime, got {p!r}")
    return p


def int_valuation(n: int, p: int) -> float:
    """Exponent of ``p`` in the integer ``n``; ``inf`` for ``n == 0``."""
    if n == 0:
        return AT_LEAST_PRECISION
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class PAdicInt:
    p: int
    precision: int
    residue: int

    def __post_init__(self):
        check_prime(self.p)
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    # -- construction ---------------------------------------------------
    @classmethod
    def from_digits(cls, text: str, p: int) -> "PAdicInt":
        """Parse a little-endian digit string ``"d0.d1d2..."``.

        The number of digits fixes the precision.
        """
        check_prime(p)
        if p > len(_DIGITS):
            raise ValueError(f"digit strings need p <= {len(_DIGITS)}")
        head, dot, tail = text.strip().partition(".")
        chars = head + tail
        if len(head) != 1:
            raise ValueError(f"malformed digit string {text!r}")
        residue = 0
        for i, ch in enumerate(chars):
            d = _DIGITS.find(ch.lower())
            if not 0 <= d < p:
                raise ValueError(f"invalid base-{p} digit {ch!r} in {text!r}")
            residue += d * p**i
        return cls(p, len(chars), residue)

    def digits(self) -> list[int]:
        out, r = [], self.residue
        for _ in range(self.precision):
            r, d = divmod(r, self.p)
            out.append(d)
        return out

    def to_digits(self) -> str:
        ds = "".join(_DIGITS[d] for d in self.digits())
        return ds[0] + "." + ds[1:] if len(ds) > 1 else ds + "."

    # -- basic accessors ------------------------------------------------
    @property
    def modulus(self) -> int:
        return self.p**self.precision

    @property
    def signed(self) -> int:
        """Representative in ``(-p**K/2, p**K/2]``."""
        r = self.residue
        return r - self.modulus if 2 * r > self.modulus else r

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"PAdicInt({self.residue} mod {self.p}^{self.precision})"

    def reduce(self, k: int) -> "PAdicInt":
        """Truncate to precision ``k`` (which may not exceed the current one)."""
        if k > self.precision:
            raise PrecisionError(f"cannot raise precision {self.precision} to {k}")
        return PAdicInt(self.p, k, self.residue)

    def with_precision(self, k: int) -> "PAdicInt":
        """Same integer representative, reinterpreted at precision ``k``.

        Raising the precision is only meaningful when the residue is already
        the exact value (an integer parameter, say).
        """
        return PAdicInt(self.p, k, self.residue)

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "PAdicInt":
        if isinstance(other, PAdicInt):
            if other.p != self.p:
                raise ValueError(f"mismatched primes {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return PAdicInt(self.p, self.precision, other)
        return NotImplemented

    def _binary(self, other, op):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        k = min(self.precision, other.precision)
        return PAdicInt(self.p, k, op(self.residue, other.residue))

    def __add__(self, other):
        return self._binary(other, int.__add__)

    def __sub__(self, other):
        return self._binary(other, int.__sub__)

    def __mul__(self, other):
        return self._binary(other, int.__mul__)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __neg__(self):
        return PAdicInt(self.p, self.precision, -self.residue)

    def __pow__(self, e: int):
        if e < 0:
            return invert_unit(self) ** (-e)
        return PAdicInt(self.p, self.precision, pow(self.residue, e, self.modulus))

    def __eq__(self, other):
        if isinstance(other, int):
            return (self.residue - other) % self.modulus == 0
        if isinstance(other, PAdicInt):
            return (self.p, self.precision, self.residue) == (other.p, other.precision, other.residue)
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.precision, self.residue))

    def congruent(self, other, k: int | None = None) -> bool:
        """True when ``self ≡ other`` modulo ``p**k`` (default: common precision)."""
        other = self._coerce(other)
        kk = min(self.precision, other.precision)
        if k is not None:
            if k > kk:
                raise PrecisionError(f"congruence mod p^{k} needs precision {k}, have {kk}")
            kk = k
        return (self.residue - other.residue) % self.p**kk == 0

    def valuation(self) -> float:
        v = int_valuation(self.residue, self.p)
        return v if v < self.precision else AT_LEAST_PRECISION

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def abs_exponent(self) -> "RadiusExp":
        """|x| as a power of p (a zero residue raises, its size is unknown)."""
        v = self.valuation()
        if v == AT_LEAST_PRECISION:
            raise PrecisionError("absolute value of zero is below working precision")
        return RadiusExp(self.p, Fraction(v))


@total_ordering
@dataclass(frozen=True)
class RadiusExp:
    """A radius or absolute value ``p**(-exponent)`` with a rational exponent."""

    p: int
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", Fraction(self.exponent))

    def __lt__(self, other: "RadiusExp") -> bool:
        if other.p != self.p:
            raise ValueError("radii over different primes are not comparable")
        # larger exponent means smaller radius
        return self.exponent > other.exponent

    def __mul__(self, other: "RadiusExp") -> "RadiusExp":
        if other.p != self.p:
            raise ValueError("radii over different primes")
        return RadiusExp(self.p, self.exponent + other.exponent)

    def __pow__(self, e) -> "RadiusExp":
        return RadiusExp(self.p, self.exponent * Fraction(e))

    def __str__(self) -> str:
        return f"{self.p}^(-{self.exponent})"


def from_integer(n: int, p: int, precision: int) -> PAdicInt:
    return PAdicInt(p, precision, n)


def valuation(x: PAdicInt) -> float:
    return x.valuation()


def invert_unit(x: PAdicInt) -> PAdicInt:
    if not x.is_unit():
        raise ZeroDivisionError(f"{x!r} is not a unit")
    return PAdicInt(x.p, x.precision, pow(x.residue, -1, x.modulus))


def sqrt(x: PAdicInt, branch_hint: int | None = None) -> PAdicInt:
    """Square root of ``x`` in Z_p, for odd p.

    With ``v = valuation(x) / 2`` the root is returned at precision
    ``x.precision - v``.  ``branch_hint`` picks the root whose unit part is
    congruent to it mod p; without a hint the smaller residue wins.
    """
    p, K = x.p, x.precision
    if p == 2:
        raise ValueError("square roots in Z_2 are not supported")
    v2 = x.valuation()
    if v2 == AT_LEAST_PRECISION:
        raise PrecisionError("square root of zero to working precision")
    if v2 % 2:
        raise ValueError(f"odd valuation {v2}: no square root in Z_{p}")
    v = v2 // 2
    unit_prec = K - v2
    u = x.residue // p**v2
    roots = sqrt_mod(u % p, p, all_roots=True)
    if not roots:
        raise ValueError(f"unit part {u % p} is not a square mod {p}")
    if branch_hint is not None:
        hint = branch_hint % p
        if hint not in roots:
            raise ValueError(f"branch hint {branch_hint} is not a root of {u % p} mod {p}")
        roots = [hint]
    poly = [-u, 0, 1]
    lifted = [_newton(poly, r, p, unit_prec) for r in roots]
    out = [PAdicInt(p, K - v, s * p**v) for s in lifted]
    return min(out, key=lambda r: r.residue)


def poly_eval(coeffs: Sequence[int], x: int, modulus: int | None = None) -> int:
    """Evaluate a polynomial with coefficients listed from the constant term up."""
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
        if modulus is not None:
            acc %= modulus
    return acc


def poly_derivative(coeffs: Sequence[int]) -> list[int]:
    return [i * a for i, a in enumerate(coeffs)][1:] or [0]


def _newton(coeffs, r0: int, p: int, K: int) -> int:
    """Quadratic lift of a simple root mod p to a root mod p**K."""
    deriv = poly_derivative(coeffs)
    r, k = r0 % p, 1
    while k < K:
        k = min(2 * k, K)
        M = p**k
        r = (r - poly_eval(coeffs, r, M) * pow(poly_eval(deriv, r, M), -1, M)) % M
    return r


def hensel_lift(coeffs: Sequence[int], r0: int, p: int, precision: int) -> PAdicInt:
    """Lift a simple root ``r0`` of ``f`` mod p to Z_p.

    ``coeffs`` lists the integer coefficients of ``f`` from the constant term.
    """
    check_prime(p)
    if poly_eval(coeffs, r0, p) != 0:
        raise ValueError(f"{r0} is not a root of f mod {p}")
    if poly_eval(poly_derivative(coeffs), r0, p) == 0:
        raise ValueError(f"f'({r0}) vanishes mod {p}; the root is not simple")
    return PAdicInt(p, precision, _newton(coeffs, r0, p, precision))
