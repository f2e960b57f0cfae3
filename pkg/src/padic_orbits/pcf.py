"""Enumeration of post-critically finite parameters c in Z_p (p odd).

Every finite orbit type over Z_p is ``(m, r * n1)`` where ``(m, n1)`` is the
orbit type mod p and ``r`` is 1, a divisor of p - 1, or 3 when p = 3.  For
each such candidate the roots of

    G(c) = f_c^(m+N)(0) - f_c^m(0),     N = r * n1,

are found by lifting residues one digit at a time and switching to Newton
iteration as soon as Hensel's criterion certifies a unique root.  Roots whose
exact orbit type is smaller than the candidate are discarded here; they are
found again under their own candidate.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from sympy.ntheory import divisors

from .orbits import OrbitType, iterate_orbit, orbit_mod
from .padic import AT_LEAST_PRECISION, PAdicInt, check_prime, int_valuation

log = logging.getLogger(__name__)

FRONTIER_CAP = 10_000

HYPERBOLIC_CENTER = "HyperbolicCenter"
STRICTLY_PREPERIODIC = "StrictlyPreperiodic"


class FrontierExplosion(RuntimeError):
    """Digit lifting kept more residues than the configured cap."""


def _require_odd_prime(p: int) -> None:
    check_prime(p)
    if p == 2:
        raise ValueError("PCF classification for p = 2 is open; only odd primes are supported")


def multiplication_factors(p: int) -> list[int]:
    """Allowed one-time cycle-length multipliers r (1 included)."""
    rs = set(divisors(p - 1))
    if p == 3:
        rs.add(3)
    return sorted(rs)


class OrbitTypeCandidate(NamedTuple):
    m: int
    n1: int
    r: int

    @property
    def orbit_type(self) -> OrbitType:
        return OrbitType(self.m, self.r * self.n1)


def residue_types(p: int) -> dict[int, OrbitType]:
    """Orbit type mod p of every residue class of parameters."""
    return {c: iterate_orbit(c, p)[1] for c in range(p)}


def candidate_types(p: int) -> list[OrbitTypeCandidate]:
    _require_odd_prime(p)
    seen = sorted(set(residue_types(p).values()))
    out = []
    for m, n1 in seen:
        rs = [1] if m == 0 else multiplication_factors(p)
        out.extend(OrbitTypeCandidate(m, n1, r) for r in rs)
    return out


class CriticalRelation(NamedTuple):
    """G(c) = f_c^(m+N)(0) - f_c^m(0), never expanded as a polynomial."""

    m: int
    N: int

    def evaluate(self, c: int, modulus: int) -> tuple[int, int]:
        """Return ``(G(c), G'(c))`` modulo ``modulus``.

        dz_{i+1}/dc = 2 z_i dz_i/dc + 1 carries the derivative along.
        """
        z = dz = 0
        zm = dzm = 0
        for i in range(self.m + self.N):
            if i == self.m:
                zm, dzm = z, dz
            z, dz = (z * z + c) % modulus, (2 * z * dz + 1) % modulus
        return (z - zm) % modulus, (dz - dzm) % modulus


@dataclass(frozen=True)
class RelationRoot:
    c: PAdicInt
    certified: bool
    certified_at: int | None = None
    g_valuation: float | None = None
    dg_valuation: float | None = None


def _newton_to(rel: CriticalRelation, c: int, p: int, e: int, target: int, W: int) -> int:
    """Newton iteration from a Hensel-certified point until v(G) >= target + e."""
    M = p**W
    pe = p**e
    for _ in range(4 * W):
        g, dg = rel.evaluate(c, M)
        if int_valuation(g, p) >= target + e:
            return c
        c = (c - (g // pe) * pow(dg // pe, -1, M)) % M
    raise ArithmeticError("Newton iteration failed to converge")  # pragma: no cover


def find_roots(
    relation: CriticalRelation,
    p: int,
    K_target: int,
    classes: Iterable[int] | None = None,
    cap: int = FRONTIER_CAP,
) -> list[RelationRoot]:
    """All c in Z_p with G(c) ≡ 0 mod p^K_target, restricted to ``classes`` mod p.

    Residues certified by Hensel's criterion ``v(G) > 2 v(G')`` are lifted by
    Newton iteration; all other residues in their uniqueness disk are pruned.
    Residues still alive but uncertified at ``K_target`` are returned with
    ``certified=False``.
    """
    _require_odd_prime(p)
    rel = CriticalRelation(*relation)
    W = 2 * K_target + 8
    MW = p**W
    frontier = sorted({c % p for c in (range(p) if classes is None else classes)})
    roots: list[RelationRoot] = []
    disks: list[tuple[int, int]] = []  # (center, e): unique root in c ≡ center mod p^(e+1)

    def in_known_disk(c: int) -> bool:
        return any((c - c0) % p ** (e + 1) == 0 for c0, e in disks)

    k = 1
    while True:
        alive = []
        for c in frontier:
            if in_known_disk(c):
                continue
            g, dg = rel.evaluate(c, MW)
            vg = int_valuation(g, p)
            if vg < k:
                continue
            vd = int_valuation(dg, p)
            if vd != AT_LEAST_PRECISION and 2 * vd < W - 2 and vg > 2 * vd:
                e = int(vd)
                root = _newton_to(rel, c, p, e, K_target, W)
                disks.append((c, e))
                roots.append(RelationRoot(PAdicInt(p, K_target, root), True, k, vg, vd))
            else:
                alive.append(c)
        alive = [c for c in alive if not in_known_disk(c)]
        if len(alive) > cap:
            raise FrontierExplosion(
                f"relation {tuple(rel)} at p={p}: {len(alive)} residues alive mod p^{k}"
            )
        if k == K_target or not alive:
            break
        step = p**k
        frontier = [c + d * step for c in alive for d in range(p)]
        k += 1
    for c in alive:
        log.info("relation %s at p=%d: uncertified residue %d mod p^%d", tuple(rel), p, c, k)
        roots.append(RelationRoot(PAdicInt(p, K_target, c), False))
    return sorted(roots, key=lambda r: r.c.residue)


def exactness_filter(c: PAdicInt, claimed: OrbitType) -> bool:
    """True when the orbit type at full precision is exactly ``claimed``."""
    return orbit_mod(c, c.precision).orbit_type == OrbitType(*claimed)


def resolution_level(c: PAdicInt, otype: OrbitType) -> int:
    """Least level from which the orbit type equals ``otype`` up to precision."""
    level = c.precision
    for k in range(c.precision, 0, -1):
        if orbit_mod(c, k).orbit_type != otype:
            break
        level = k
    return level


@dataclass(frozen=True)
class PcfParameter:
    c: PAdicInt
    orbit_type: OrbitType
    kind: str
    resolved_at: int
    certificate: RelationRoot
    candidate: OrbitTypeCandidate

    @property
    def p(self) -> int:
        return self.c.p

    @property
    def certified(self) -> bool:
        return self.certificate.certified

    @property
    def cycle_length_mod_p(self) -> int:
        return self.candidate.n1

    def to_dict(self) -> dict:
        return {
            "c": self.c.to_digits(),
            "p": self.p,
            "orbit_type": [self.orbit_type.m, self.orbit_type.n],
            "kind": self.kind,
            "resolved_at": self.resolved_at,
            "certified": self.certified,
        }

    def sort_key(self):
        return (self.kind != HYPERBOLIC_CENTER, self.orbit_type, self.c.residue)


def certification_precision(otype: OrbitType) -> int:
    return 4 * (otype.m + otype.n) + 8


def enumerate_pcf(p: int, K: int | None = None, cap: int = FRONTIER_CAP) -> list[PcfParameter]:
    """Every PCF parameter in Z_p, certified and deduplicated."""
    _require_odd_prime(p)
    classes = residue_types(p)
    found: list[PcfParameter] = []
    for cand in candidate_types(p):
        otype = cand.orbit_type
        prec = K if K is not None else certification_precision(otype)
        seeds = [c for c, t in classes.items() if t == (cand.m, cand.n1)]
        rel = CriticalRelation(otype.m, otype.n)
        for root in find_roots(rel, p, prec, classes=seeds, cap=cap):
            if not root.certified:
                continue
            if not exactness_filter(root.c, otype):
                actual = orbit_mod(root.c, root.c.precision).orbit_type
                log.debug("p=%d: root %r of %s has smaller type %s", p, root.c, otype, actual)
                continue
            kind = HYPERBOLIC_CENTER if otype.m == 0 else STRICTLY_PREPERIODIC
            param = PcfParameter(root.c, otype, kind, resolution_level(root.c, otype), root, cand)
            if any(root.c.congruent(other.c) for other in found):
                log.debug("p=%d: duplicate root %r dropped", p, root.c)
                continue
            found.append(param)
    return sorted(found, key=PcfParameter.sort_key)


def count_bounds(p: int) -> tuple[int, int]:
    """Crude bound on the number of PCF parameters, and on non-zero hyperbolic centers."""
    _require_odd_prime(p)
    q = 0
    for r in multiplication_factors(p):
        for n in range(1, p + 1):
            for m in range(0, p - n + 1):
                q += 2 ** (m + r * n)
    return q, (p - 1) // 2


def hyperbolic_centers(params: Iterable[PcfParameter], include_zero: bool = False) -> list[PcfParameter]:
    return [
        x for x in params
        if x.kind == HYPERBOLIC_CENTER and (include_zero or x.c.residue != 0)
    ]
