"""Critical orbits of z**2 + c modulo p**k and the orbit-type classifier."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from sympy.ntheory import n_order

from .padic import PAdicInt, PrecisionError


class OrbitInvariantError(RuntimeError):
    """An orbit computation contradicted a structural guarantee (an arithmetic bug)."""


class OrbitType(NamedTuple):
    m: int
    n: int

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


def _as_param(c, p: int | None = None, k: int | None = None) -> PAdicInt:
    if isinstance(c, PAdicInt):
        return c
    if p is None or k is None:
        raise TypeError("integer parameters need an explicit p and level")
    return PAdicInt(p, k, c)


def iterate_orbit(c: int, modulus: int) -> tuple[list[int], OrbitType]:
    """Iterate 0 -> c -> c**2 + c ... mod ``modulus`` until the first repeat."""
    first_seen: dict[int, int] = {}
    seq: list[int] = []
    z = 0
    while z not in first_seen:
        first_seen[z] = len(seq)
        seq.append(z)
        z = (z * z + c) % modulus
    m = first_seen[z]
    seq.append(z)
    return seq, OrbitType(m, len(seq) - 1 - m)


@dataclass(frozen=True)
class OrbitRecord:
    p: int
    k: int
    c: int
    sequence: tuple[int, ...]
    orbit_type: OrbitType

    @property
    def m(self) -> int:
        return self.orbit_type.m

    @property
    def n(self) -> int:
        return self.orbit_type.n

    @property
    def tail(self) -> tuple[int, ...]:
        return self.sequence[: self.m]

    @property
    def cycle(self) -> tuple[int, ...]:
        return self.sequence[self.m : self.m + self.n]

    @property
    def points(self) -> tuple[int, ...]:
        """The m + n distinct orbit residues."""
        return self.sequence[:-1]

    def arrow_chain(self) -> str:
        return " → ".join(str(z) for z in self.sequence)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "c": PAdicInt(self.p, self.k, self.c).to_digits(),
            "sequence": list(self.sequence),
            "m": self.m,
            "n": self.n,
        }


def orbit_mod(c, k: int, p: int | None = None) -> OrbitRecord:
    """Critical orbit of ``f_c`` modulo ``p**k``.

    ``c`` is a :class:`PAdicInt` (or a plain integer together with ``p``).
    """
    c = _as_param(c, p, k)
    if k < 1:
        raise ValueError("level must be >= 1")
    if k > c.precision:
        raise PrecisionError(f"level {k} exceeds the parameter precision {c.precision}")
    M = c.p**k
    seq, otype = iterate_orbit(c.residue % M, M)
    return OrbitRecord(c.p, k, c.residue % M, tuple(seq), otype)


@dataclass(frozen=True)
class LevelProfile:
    p: int
    c: PAdicInt
    levels: tuple[tuple[int, OrbitType], ...]

    @property
    def types(self) -> list[OrbitType]:
        return [t for _, t in self.levels]

    def __getitem__(self, k: int) -> OrbitType:
        for level, t in self.levels:
            if level == k:
                return t
        raise KeyError(k)

    def __len__(self) -> int:
        return len(self.levels)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "c": self.c.to_digits(),
            "levels": [{"k": k, "m": t.m, "n": t.n} for k, t in self.levels],
        }


def check_profile(levels) -> None:
    for (k0, t0), (k1, t1) in zip(levels, levels[1:]):
        if t1.m < t0.m or t1.n % t0.n:
            raise OrbitInvariantError(
                f"orbit type {t0} mod p^{k0} cannot refine to {t1} mod p^{k1}"
            )


def level_profile(c, k_max: int, p: int | None = None) -> LevelProfile:
    c = _as_param(c, p, k_max)
    if k_max > c.precision:
        raise PrecisionError(f"k_max {k_max} exceeds the parameter precision {c.precision}")
    levels = tuple((k, orbit_mod(c, k).orbit_type) for k in range(1, k_max + 1))
    check_profile(levels)
    return LevelProfile(c.p, c, levels)


def critical_relation(c: int, m: int, n: int, modulus: int) -> int:
    """f^(m+n)(0) - f^m(0) mod ``modulus``."""
    z = 0
    for _ in range(m):
        z = (z * z + c) % modulus
    zm = z
    for _ in range(n):
        z = (z * z + c) % modulus
    return (z - zm) % modulus


# -- classification -----------------------------------------------------


class Verdict(enum.Enum):
    PERIODIC_EXACT = "PeriodicExact"
    PREPERIODIC_FINITE = "PreperiodicFinite"
    INFINITE_TAIL_GROWTH = "InfiniteTailGrowth"
    INFINITE_CYCLE_GROWTH = "InfiniteCycleGrowth"
    INCONCLUSIVE = "Inconclusive"

    @property
    def finite(self) -> bool:
        return self in (Verdict.PERIODIC_EXACT, Verdict.PREPERIODIC_FINITE)


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    m: int
    n: int
    k_max: int
    resolved_at: int | None = None
    certified: bool = False
    profile: LevelProfile | None = field(default=None, repr=False, compare=False)
    note: str = ""

    @property
    def orbit_type(self) -> OrbitType:
        return OrbitType(self.m, self.n)

    @property
    def provisional(self) -> bool:
        return self.verdict.finite and not self.certified

    def to_dict(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "m": self.m,
            "n": self.n,
            "k_max": self.k_max,
            "resolved_at": self.resolved_at,
            "certified": self.certified,
        }
        if self.note:
            out["note"] = self.note
        if self.profile is not None:
            out["profile"] = [[k, t.m, t.n] for k, t in self.profile.levels]
        return out


#: extra levels scanned past the first cycle-length change
DEFAULT_WINDOW = 8
#: levels past resolution required before an exact relation counts as a certificate
CERTIFY_WINDOW = 3


def _default_levels(c: PAdicInt):
    """Scan levels until a verdict is forced, capped by precision."""
    levels = []
    first_change = None
    growths = 0
    tail_steps = 0
    for k in range(1, c.precision + 1):
        t = orbit_mod(c, k).orbit_type
        if levels:
            prev = levels[-1][1]
            if t.n > prev.n:
                growths += 1
                first_change = first_change or k
            if t.m > prev.m:
                tail_steps += 1
        levels.append((k, t))
        if c.p > 2 and (growths >= 2 or (tail_steps >= 2 and k >= 3)):
            break
        if first_change and k >= first_change + DEFAULT_WINDOW:
            break
    return tuple(levels)


def classify(c, k_max: int | None = None, *, hensel_certified: bool = False) -> Classification:
    """Decide the orbit type of 0 over Z_p from its truncations.

    Finite verdicts are *certified* only with a Hensel certificate (from the
    PCF search) or when the critical relation vanishes at the full precision
    of ``c`` and the type has been stable for at least ``CERTIFY_WINDOW``
    levels past resolution.  For p = 2 nothing beyond a Hensel certificate
    is trusted, and the infinite-growth rules are not applied.
    """
    if not isinstance(c, PAdicInt):
        raise TypeError("classify needs a PAdicInt parameter")
    if k_max is None:
        levels = _default_levels(c)
    else:
        if k_max < 3:
            raise ValueError("classification needs k_max >= 3")
        if k_max > c.precision:
            raise PrecisionError(f"k_max {k_max} exceeds the parameter precision {c.precision}")
        levels = tuple((k, orbit_mod(c, k).orbit_type) for k in range(1, k_max + 1))
    check_profile(levels)
    profile = LevelProfile(c.p, c, levels)
    top = levels[-1][0]
    final = levels[-1][1]
    types = [t for _, t in levels]

    growths = sum(1 for a, b in zip(types, types[1:]) if b.n > a.n)
    tail_steps = sum(1 for a, b in zip(types, types[1:]) if b.m > a.m)
    resolved_at = top
    for k, t in reversed(levels):
        if t != final:
            break
        resolved_at = k

    common = dict(k_max=top, profile=profile)
    if c.p > 2:
        if growths >= 2 and len({t.m for t in types}) == 1:
            return Classification(Verdict.INFINITE_CYCLE_GROWTH, final.m, final.n, **common,
                                  note="cycle length multiplied more than once")
        if tail_steps >= 2 and len({t.n for t in types}) == 1:
            return Classification(Verdict.INFINITE_TAIL_GROWTH, final.m, final.n, **common,
                                  note="tail length kept growing with a fixed cycle")

    exact = critical_relation(c.residue, final.m, final.n, c.modulus) == 0
    window_ok = top - resolved_at >= CERTIFY_WINDOW
    certified = hensel_certified or (c.p > 2 and exact and window_ok)
    if certified or exact or window_ok:
        verdict = Verdict.PERIODIC_EXACT if final.m == 0 else Verdict.PREPERIODIC_FINITE
        note = "" if certified else "provisional: stable type, no certificate"
        return Classification(verdict, final.m, final.n, resolved_at=resolved_at,
                              certified=certified, note=note, **common)
    return Classification(Verdict.INCONCLUSIVE, final.m, final.n, **common,
                          note="window too small to separate finite from infinite")


# -- local diagnostics --------------------------------------------------


class Multiplier(NamedTuple):
    value: PAdicInt
    order: float  # multiplicative order mod p, or inf when the multiplier is 0 mod p


def cycle_multiplier(c, record: OrbitRecord) -> Multiplier:
    """Derivative of f^n along the cycle of ``record`` and its order in F_p^*."""
    p, M = record.p, record.p**record.k
    if record.n < 1:
        raise ValueError("record has no periodic part")
    lam = 1
    for z in record.cycle:
        lam = lam * 2 * z % M
    value = PAdicInt(p, record.k, lam)
    order = math.inf if lam % p == 0 else n_order(lam % p, p)
    return Multiplier(value, order)


def _f_iter(c: int, z: int, n: int, M: int) -> int:
    for _ in range(n):
        z = (z * z + c) % M
    return z


class LocalAffineMap(NamedTuple):
    """Reduction ``z -> a z + b`` (mod p) of a rescaled iterate at a vertex."""

    a: int
    b: int
    p: int

    def __call__(self, z: int) -> int:
        return (self.a * z + self.b) % self.p

    @property
    def is_translation(self) -> bool:
        return self.a == 1 and self.b != 0


def local_affine_map(c, v: int, n_iter: int, k: int) -> LocalAffineMap:
    """Local map ``g(z) = (f^n(v + p^k z) - v) / p^k (mod p)`` at the vertex D(v, p^-k)."""
    if not isinstance(c, PAdicInt):
        raise TypeError("local_affine_map needs a PAdicInt parameter")
    p = c.p
    if k + 1 > c.precision:
        raise PrecisionError(f"local map at level {k} needs precision {k + 1}")
    Mk, M = p**k, p ** (k + 1)
    cr = c.residue % M
    v %= Mk
    if v % p == 0:
        raise ValueError("vertex lies in the critical residue class")
    if _f_iter(cr, v, n_iter, Mk) != v:
        raise ValueError(f"{v} is not fixed by f^{n_iter} modulo p^{k}")
    z = v
    for _ in range(n_iter):
        if z % p == 0:
            raise ValueError("the iterate passes through the critical residue class")
        z = (z * z + cr) % M

    def g(t: int) -> int:
        return ((_f_iter(cr, v + Mk * t, n_iter, M) - v) % M) // Mk

    b = g(0) % p
    a = (g(1) - g(0)) % p
    if a == 0:
        raise OrbitInvariantError(f"local map at {v} mod {p}^{k} has degree other than 1")
    return LocalAffineMap(a, b, p)


def isometry_check(c, a1: PAdicInt, a2: PAdicInt) -> bool:
    """True when f_c preserves the distance between the units ``a1`` and ``a2``.

    The isometry is local: it holds on each residue disk away from 0, so
    pairs with ``a2 ≡ -a1 (mod p)`` legitimately return False.
    """
    if c.p == 2:
        raise ValueError("isometry check is stated for odd p")
    if not (a1.is_unit() and a2.is_unit()):
        raise ValueError("isometry check needs unit inputs")
    k = min(a1.precision, a2.precision, c.precision)
    a1, a2, c = a1.reduce(k), a2.reduce(k), c.reduce(k)
    return (a2 * a2 - a1 * a1).valuation() == (a2 - a1).valuation()


def attracting_cycle_point(c, n: int, precision: int | None = None) -> PAdicInt:
    """The point w ≡ 0 (mod p) with f^n(w) = w, when 0 is n-periodic mod p.

    The derivative of f^n(w) - w at such w is -1 mod p, so Newton's method
    converges from w = 0 without any further hypothesis.
    """
    if not isinstance(c, PAdicInt):
        raise TypeError("attracting_cycle_point needs a PAdicInt parameter")
    p = c.p
    K = precision or c.precision
    if K > c.precision:
        raise PrecisionError(f"precision {K} exceeds the parameter precision {c.precision}")
    if _f_iter(c.residue % p, 0, n, p) != 0:
        raise ValueError(f"0 is not fixed by f^{n} modulo {p}")
    M = p**K
    cr = c.residue % M
    w = 0
    for _ in range(K + 1):
        z, dz = w, 1
        for _ in range(n):
            z, dz = (z * z + cr) % M, 2 * z * dz % M
        g, dg = (z - w) % M, (dz - 1) % M
        if g == 0:
            return PAdicInt(p, K, w)
        w = (w - g * pow(dg, -1, M)) % M
    raise ArithmeticError("Newton iteration failed to converge")  # pragma: no cover


def lifted_types(c, k_max: int, p: int | None = None) -> list[OrbitType]:
    """Orbit types mod p, p^2, ..., p^k_max, computed by lifting one level at a time.

    With (m, n) the type mod p^k and w = f^m(0), every F = f^n maps the fibre
    ``w + p^k t`` (t mod p) to itself, and since F has integer Taylor
    coefficients, ``F(w + p^k t) ≡ F(w) + F'(w) p^k t (mod p^(k+1))``.  The
    orbit of t = 0 under that affine map gives the type mod p^(k+1) after
    one pass over the cycle instead of a walk over the whole lifted orbit.
    Results agree with :func:`level_profile`, which iterates each level
    directly and is the reference implementation.
    """
    c = _as_param(c, p, k_max)
    if k_max > c.precision:
        raise PrecisionError(f"k_max {k_max} exceeds the parameter precision {c.precision}")
    p = c.p
    M = p**k_max
    cr = c.residue % M
    _, t = iterate_orbit(cr % p, p)
    m, n = t
    types = [t]
    w = _f_iter(cr, 0, m, M)
    for k in range(1, k_max):
        Mk1 = p ** (k + 1)
        z, a = w, 1
        for _ in range(n):
            a = a * 2 * z % p
            z = (z * z + cr) % M
        b = ((z - w) % Mk1) // p**k
        if a == 0:
            if b:
                # the whole fibre lands on F(w) in one step; the tail grows
                m_new, u, v = m + 1, _f_iter(cr, w, 1, M), _f_iter(cr, z, 1, M)
                while (v - u) % Mk1:
                    u, v = (u * u + cr) % M, (v * v + cr) % M
                    m_new += 1
                m, w = m_new, u
        elif b:
            n *= p if a == 1 else n_order(a, p)
        types.append(OrbitType(m, n))
    return types
