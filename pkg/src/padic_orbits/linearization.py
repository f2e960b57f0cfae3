"""Fixed points, linearization-disk bounds, and the checks near c = -2 in Z_3."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from sympy.ntheory import n_order

from .orbits import LevelProfile, OrbitInvariantError, OrbitType, level_profile
from .padic import (
    AT_LEAST_PRECISION,
    PAdicInt,
    PrecisionError,
    RadiusExp,
    invert_unit,
    sqrt,
)


class NoFixedPointError(ValueError):
    """z**2 - z + c has no root in Z_p."""


class RootOfUnityError(ArithmeticError):
    """The multiplier cannot be told apart from a root of unity at working precision."""


class FixedPoints(NamedTuple):
    x_plus: PAdicInt
    x_minus: PAdicInt


def fixed_points(c: PAdicInt) -> FixedPoints:
    """Both roots of z**2 - z + c, as ``(1 ± sqrt(1 - 4c)) / 2``.

    For p = 3 and c ≡ -2 (mod 9) ``x_plus`` is the root congruent to 2 mod 9.
    """
    if c.p == 2:
        raise ValueError("fixed points via square roots need odd p")
    disc = 1 - 4 * c
    try:
        s = sqrt(disc)
    except (ValueError, PrecisionError) as exc:
        raise NoFixedPointError(f"1 - 4c = {disc!r} has no square root in Z_{c.p}: {exc}") from exc
    half = invert_unit(PAdicInt(c.p, s.precision, 2))
    x_plus = (1 + s) * half
    x_minus = (1 - s) * half
    if c.p == 3 and c.precision >= 2 and c.congruent(-2, 2) and not x_plus.congruent(2, 2):
        x_plus, x_minus = x_minus, x_plus
    return FixedPoints(x_plus, x_minus)


def distance_to_fixed_point(c: PAdicInt, y: PAdicInt) -> tuple[Fraction, PAdicInt | None]:
    """Valuation of ``y - x`` for the fixed point x of f_c nearest 2, and x itself.

    When x is not in Z_p its conjugate x' = 1 - x is equally far from any
    y in Z_p, so ``v(y - x) = v(P(y)) / 2`` with ``P(z) = z^2 - z + c``; the
    answer stays exact without working in the extension.
    """
    try:
        x = fixed_points(c).x_plus
    except NoFixedPointError:
        v = (y * y - y + c).valuation()
        if v == AT_LEAST_PRECISION:
            raise PrecisionError("P(y) vanishes to working precision")
        return Fraction(v, 2), None
    v = (y - x).valuation()
    if v == AT_LEAST_PRECISION:
        raise PrecisionError("y agrees with the fixed point to working precision")
    return Fraction(v), x


# -- linearization radius -----------------------------------------------


class Gamma0Case(enum.Enum):
    TRIVIAL = "Trivial"
    ULTRAMETRIC = "Ultrametric"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class LinearizationParams:
    lam: PAdicInt
    m: int
    s: int
    t: int | None
    gamma0_case: Gamma0Case
    one_minus_lam_m: Fraction  # valuation of 1 - lam^m
    gamma0_gap: Fraction | None  # valuation of gamma0 - lam^m

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam.to_digits(),
            "m": self.m,
            "s": self.s,
            "t": self.t,
            "gamma0_case": self.gamma0_case.value,
            "v(1-lambda^m)": str(self.one_minus_lam_m),
            "v(gamma0-lambda^m)": None if self.gamma0_gap is None else str(self.gamma0_gap),
        }


def r_exponent(s: int, p: int) -> Fraction:
    """Exponent of R(s) = p^(-1 / (p^(s-1) (p-1)))."""
    return Fraction(p, p**s * (p - 1))


def _bracket(e: Fraction, p: int) -> int:
    """The s >= 0 with R(s) <= p^-e < R(s+1)."""
    if e > r_exponent(0, p):
        raise ValueError(f"|1 - lambda^m| = {p}^-{e} is below R(0); the bound does not apply")
    s = 0
    while not (r_exponent(s, p) >= e > r_exponent(s + 1, p)):
        s += 1
    return s


def radius_lower_bound(lam: PAdicInt) -> tuple[RadiusExp | None, LinearizationParams]:
    """Lower bound on the radius of the linearization disk for multiplier ``lam``.

    All exponents are exact rationals.  The ``gamma0`` minimisation over
    ramified roots of unity is only resolved when the ultrametric inequality
    decides it; otherwise the radius is ``None`` and the case is
    ``INDETERMINATE``.
    """
    p = lam.p
    if not lam.is_unit():
        raise ValueError("the multiplier must be a unit")
    m = n_order(lam.residue % p, p)
    v = (1 - lam**m).valuation()
    if v == AT_LEAST_PRECISION:
        raise RootOfUnityError(f"1 - lambda^{m} vanishes to precision {lam.precision}")
    e = Fraction(v)
    s = _bracket(e, p)
    if s == 0:
        case, gap, t = Gamma0Case.TRIVIAL, e, _bracket(e, p)
    elif r_exponent(s, p) == e:
        params = LinearizationParams(lam, m, s, None, Gamma0Case.INDETERMINATE, e, None)
        return None, params
    else:
        # every p^s-th root of unity is strictly closer to 1 than lam^m is
        case, gap = Gamma0Case.ULTRAMETRIC, e
        t = _bracket(gap, p)
    exponent = (
        r_exponent(s + 1, p) / m
        + Fraction(s - t, m * p**s)
        + e * Fraction(s * (p - 1), m * p)
        + gap / (m * p ** (s - t))
    )
    return RadiusExp(p, exponent), LinearizationParams(lam, m, s, t, case, e, gap)


# -- the neighbourhood of c = -2 in Z_3 ---------------------------------


def c2_parameter(k: int, l: int, precision: int, seed: int | None = None) -> PAdicInt:
    """c = -2 + l 3^k + (random higher digits drawn from ``seed``)."""
    if k < 1 or l not in (1, 2):
        raise ValueError("need k >= 1 and leading digit l in {1, 2}")
    value = -2 + l * 3**k
    if seed is not None:
        rng = random.Random(seed)
        for j in range(k + 1, precision):
            value += rng.randrange(3) * 3**j
    return PAdicInt(3, precision, value)


class LevelVerdict(NamedTuple):
    level: int
    expected: OrbitType
    observed: OrbitType

    @property
    def ok(self) -> bool:
        return self.expected == self.observed


@dataclass(frozen=True)
class C2Report:
    k: int
    l: int
    seed: int | None
    c: PAdicInt
    fixed_point: PAdicInt | None
    distance_val: Fraction
    radius: RadiusExp | None
    profile: LevelProfile = field(repr=False)
    verdicts: list[LevelVerdict] = field(repr=False)

    @property
    def in_disk(self) -> bool:
        """f_c^2(0) within 3^-2 of the fixed point."""
        return self.distance_val >= 2

    @property
    def orbit_ok(self) -> bool:
        return all(v.ok for v in self.verdicts)

    @property
    def passed(self) -> bool:
        return self.in_disk and self.orbit_ok

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "l": self.l,
            "seed": self.seed,
            "c": self.c.to_digits(),
            "fixed_point": None if self.fixed_point is None else self.fixed_point.to_digits(),
            "fixed_point_in_Zp": self.fixed_point is not None,
            "distance_val": str(self.distance_val),
            "radius_exponent": None if self.radius is None else str(self.radius.exponent),
            "in_disk": self.in_disk,
            "orbit_ok": self.orbit_ok,
            "levels": [
                {"level": v.level, "expected": list(v.expected), "observed": list(v.observed), "ok": v.ok}
                for v in self.verdicts
            ],
            "passed": self.passed,
        }


def verify_c2(k: int, l: int, seed: int | None = None, i_max: int = 6, K: int | None = None) -> C2Report:
    """Check the orbit types (2, 3^i) mod 3^(k+i) and the in-disk estimate for one parameter."""
    if k < 2:
        raise ValueError("the statement concerns k >= 2")
    K = K if K is not None else k + i_max + 4
    if K < k + i_max + 2:
        raise PrecisionError(f"precision {K} < k + i_max + 2 = {k + i_max + 2}")
    c = c2_parameter(k, l, K, seed)
    y = c * c + c
    dist, x = distance_to_fixed_point(c, y)
    radius = None
    if x is not None:
        try:
            radius, _ = radius_lower_bound(2 * x)
        except ValueError:
            # 2x too close to 1 for the bound; the report keeps radius None
            radius = None
    profile = level_profile(c, k + i_max)
    verdicts = [LevelVerdict(j, OrbitType(2, 1), profile[j]) for j in range(1, k + 1)]
    verdicts += [LevelVerdict(k + i, OrbitType(2, 3**i), profile[k + i]) for i in range(1, i_max + 1)]
    return C2Report(k, l, seed, c, x, dist, radius, profile, verdicts)


class ClaimRow(NamedTuple):
    n: int
    claim1: bool
    claim2: bool


def _check_lambda(lam: PAdicInt) -> None:
    if lam.p != 3:
        raise ValueError("the cubing claims are stated for p = 3")
    if lam.precision < 2 or not lam.congruent(4, 2):
        raise ValueError(f"{lam!r} is not congruent to 4 mod 9")


def lemma54_claims(lam: PAdicInt, n_max: int) -> list[ClaimRow]:
    """For n = 1..n_max: is lam^(3^(n-1)) ≡ 1 mod 3^n, and ≢ 1 mod 3^(n+1)?"""
    _check_lambda(lam)
    if lam.precision < n_max + 2:
        raise PrecisionError(f"n_max = {n_max} needs precision {n_max + 2}, have {lam.precision}")
    rows = []
    w = lam
    for n in range(1, n_max + 1):
        if n > 1:
            w = w * w * w
        rows.append(ClaimRow(n, w.congruent(1, n), not w.congruent(1, n + 1)))
    return rows


class TranslationStep(NamedTuple):
    n: int
    level: int
    a: int
    b: int


def translation_cascade(lam: PAdicInt, v: PAdicInt, n_max: int) -> list[TranslationStep]:
    """Local maps of z -> lam z, iterated 3^(n-1) times, at the vertex D(v, 3^-(j+n)).

    Here j = v(v), so the vertex sits n steps below the branch towards 0.
    Each local map must reduce to a nontrivial translation z + b (mod 3).
    """
    _check_lambda(lam)
    j = v.valuation()
    if j == AT_LEAST_PRECISION:
        raise ValueError("v must be nonzero at its precision")
    if lam.precision < n_max + 1 or v.precision < j + n_max + 1:
        raise PrecisionError("not enough digits for the requested cascade")
    steps = []
    w = lam
    for n in range(1, n_max + 1):
        if n > 1:
            w = w * w * w
        level = j + n
        M = 3 ** (level + 1)
        lam_pow = w.residue
        vv = v.residue % M

        def g(z: int) -> int:
            return ((lam_pow * (vv + 3**level * z) - vv) % M) // 3**level

        a, b = (g(1) - g(0)) % 3, g(0) % 3
        if a != 1 or b == 0:
            raise OrbitInvariantError(f"local map z -> {a} z + {b} at level {level} is not a translation")
        steps.append(TranslationStep(n, level, a, b))
    return steps
