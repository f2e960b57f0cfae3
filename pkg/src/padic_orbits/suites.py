"""Named verification suites driven by ``padic-orbits verify``.

Each suite returns a :class:`SuiteResult`: a list of per-case records with a
pass flag and diagnostics.  Randomised suites draw everything from one
``random.Random(seed)``, so identical configurations give identical reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from sympy.ntheory import divisors

from .linearization import lemma54_claims, translation_cascade, verify_c2
from .orbits import classify, cycle_multiplier, lifted_types, orbit_mod
from .padic import PAdicInt
from .pcf import count_bounds, enumerate_pcf, hyperbolic_centers, multiplication_factors
from .trees import SCHEMA

#: PCF counts per prime (p = 3, 5, 7 are the only ones with known totals)
KNOWN_COUNTS = {3: 4, 5: 7, 7: 10}


@dataclass
class CaseResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"case": self.name, "passed": self.passed, **self.detail}


@dataclass
class SuiteResult:
    suite: str
    config: dict
    cases: list[CaseResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "n_cases": len(self.cases),
            "n_failed": len(self.failures),
            "cases": [c.to_dict() for c in self.cases],
        }

    def summary(self) -> str:
        width = max((len(c.name) for c in self.cases), default=4)
        rows = [f"{c.name:<{width}}  {'pass' if c.passed else 'FAIL'}" for c in self.cases]
        rows.append(f"{self.suite}: {len(self.cases) - len(self.failures)}/{len(self.cases)} passed")
        return "\n".join(rows) + "\n"


def suite_c2(ks=(2, 3, 4, 5), ls=(1, 2), i_max: int = 6, samples: int = 0, seed: int = 0) -> SuiteResult:
    """Orbit types and the in-disk estimate near c = -2 in Z_3.

    Every (k, l) runs once with a zero tail, then ``samples`` times with
    random higher digits.
    """
    rng = random.Random(seed)
    cases = []
    for k in ks:
        for l in ls:
            for tail in [None] + [rng.randrange(2**32) for _ in range(samples)]:
                rep = verify_c2(k, l, seed=tail, i_max=i_max)
                name = f"k={k} l={l} tail={'0' if tail is None else tail}"
                cases.append(CaseResult(name, rep.passed, rep.to_dict()))
    return SuiteResult("c2", {"k": list(ks), "l": list(ls), "i_max": i_max, "samples": samples, "seed": seed}, cases)


def sample_lambda(rng: random.Random, precision: int) -> PAdicInt:
    """λ ≡ 4 mod 9 with λ ≢ 4 mod 27, higher digits random."""
    value = 4 + 9 * rng.choice((1, 2)) + 27 * rng.randrange(3 ** max(precision - 3, 0))
    return PAdicInt(3, precision, value)


def suite_cubing(samples: int = 50, n_max: int = 10, cascade_n: int = 5, seed: int = 0) -> SuiteResult:
    rng = random.Random(seed)
    cases = []
    for idx in range(samples):
        lam = sample_lambda(rng, n_max + 2)
        rows = lemma54_claims(lam, n_max)
        j = rng.randrange(0, 4)
        v = PAdicInt(3, j + cascade_n + 2, 3**j * rng.choice((1, 2)) + 3 ** (j + 1) * rng.randrange(3**cascade_n))
        steps = translation_cascade(lam.reduce(cascade_n + 2), v, cascade_n)
        ok = all(r.claim1 and r.claim2 for r in rows) and all(s.b in (1, 2) for s in steps)
        cases.append(CaseResult(
            f"lambda#{idx}={lam.residue}",
            ok,
            {"lambda": lam.residue, "v": v.residue,
             "claims": [[r.n, r.claim1, r.claim2] for r in rows],
             "translations": [s.b for s in steps]},
        ))
    return SuiteResult("lemma54", {"samples": samples, "n_max": n_max, "cascade_n": cascade_n, "seed": seed}, cases)


def _ratios(types) -> list[int]:
    return [b.n // a.n for a, b in zip(types, types[1:])]


def suite_tail(primes=(3, 5, 7), samples: int = 500, k_max: int = 8, seed: int = 0) -> SuiteResult:
    """m_k non-decreasing and constant once positive; n_k | n_(k+1)."""
    rng = random.Random(seed)
    cases = []
    for p in primes:
        for _ in range(samples):
            c = PAdicInt(p, k_max, rng.randrange(p**k_max))
            types = lifted_types(c, k_max)
            monotone = all(b.m >= a.m and b.n % a.n == 0 for a, b in zip(types, types[1:]))
            fixed_tail = p == 2 or types[0].m == 0 or all(t.m == types[0].m for t in types)
            cases.append(CaseResult(
                f"p={p} c={c.residue}", monotone and fixed_tail,
                {"types": [list(t) for t in types]},
            ))
    return SuiteResult("tail", {"p": list(primes), "samples": samples, "k_max": k_max, "seed": seed}, cases)


def suite_cycle_lengths(primes=(3, 5, 7), samples: int = 200, k_max: int = 8, seed: int = 0) -> SuiteResult:
    """Cycle-length constraints.

    Random parameters: every ratio n_(k+1)/n_k is 1, p, or a divisor of
    p - 1.  PCF parameters: the cycle length grows at most once, by a factor
    in divisors(p-1) (or 3 when p = 3) equal to the order of the mod-p
    multiplier times a power of p.
    """
    rng = random.Random(seed)
    cases = []
    for p in primes:
        shapes = set(divisors(p - 1)) | {p}
        for _ in range(samples):
            c = PAdicInt(p, k_max, rng.randrange(p**k_max))
            ratios = _ratios(lifted_types(c, k_max))
            cases.append(CaseResult(f"p={p} c={c.residue}", all(r in shapes for r in ratios), {"ratios": ratios}))
        allowed = set(multiplication_factors(p))
        for param in enumerate_pcf(p):
            ratios = [r for r in _ratios(lifted_types(param.c, param.c.precision)) if r > 1]
            order = cycle_multiplier(param.c, orbit_mod(param.c, 1)).order
            ok = len(ratios) <= 1 and all(r in allowed for r in ratios)
            if ratios and order != float("inf"):
                q, rest = divmod(ratios[0], order)
                ok = ok and rest == 0 and _is_power_of(q, p)
            cases.append(CaseResult(
                f"p={p} pcf {param.orbit_type} c={param.c.residue % p**3}", ok,
                {"growth": ratios, "multiplier_order_mod_p": None if order == float("inf") else order},
            ))
    return SuiteResult("pezda", {"p": list(primes), "samples": samples, "k_max": k_max, "seed": seed}, cases)


def _is_power_of(q: int, p: int) -> bool:
    while q % p == 0:
        q //= p
    return q == 1


def suite_counts(primes=(3, 5, 7)) -> SuiteResult:
    cases = []
    for p in primes:
        params = enumerate_pcf(p)
        q_bound, h_bound = count_bounds(p)
        centers = hyperbolic_centers(params)
        residue_ok = all(_is_square_mod_p(-x.c.residue, p) for x in centers)
        expected = KNOWN_COUNTS.get(p)
        ok = len(params) <= q_bound and len(centers) <= h_bound and residue_ok
        if expected is not None:
            ok = ok and len(params) == expected
        for x in params:
            cls = classify(x.c, hensel_certified=x.certified)
            ok = ok and cls.verdict.finite and cls.orbit_type == x.orbit_type
        cases.append(CaseResult(f"p={p}", ok, {
            "count": len(params), "expected": expected, "q_bound": q_bound,
            "hyperbolic_nonzero": len(centers), "hyperbolic_bound": h_bound,
            "types": [list(x.orbit_type) for x in params],
        }))
    return SuiteResult("counts", {"p": list(primes)}, cases)


def _is_square_mod_p(a: int, p: int) -> bool:
    a %= p
    return a == 0 or pow(a, (p - 1) // 2, p) == 1


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "c2": suite_c2,
    "lemma54": suite_cubing,
    "pezda": suite_cycle_lengths,
    "tail": suite_tail,
    "counts": suite_counts,
}
