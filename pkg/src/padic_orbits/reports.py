"""Figure bundles and plain-text renderings shared by the command line."""

from __future__ import annotations

from dataclasses import dataclass

from .linearization import c2_parameter, distance_to_fixed_point
from .orbits import Classification, LevelProfile, OrbitType, level_profile
from .pcf import PcfParameter, enumerate_pcf
from .trees import SCHEMA, OrbitTree, critical_orbit_tree

#: primes whose PCF lists are known to be complete
CERTIFIED_PRIMES = (3, 5, 7)


@dataclass(frozen=True)
class FigureEntry:
    index: int
    param: PcfParameter
    tree: OrbitTree

    @property
    def filename(self) -> str:
        t = self.param.orbit_type
        return f"p{self.param.p}_type{t.m}-{t.n}_c{self.tree.c}.dot"

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "orbit_type": list(self.param.orbit_type),
            "kind": self.param.kind,
            "resolved_at": self.param.resolved_at,
            "residue": self.tree.c,
            "c": self.param.c.to_digits(),
            "file": self.filename,
        }


@dataclass(frozen=True)
class FigureBundle:
    p: int
    entries: list[FigureEntry]

    @property
    def provisional(self) -> bool:
        return self.p not in CERTIFIED_PRIMES

    def index(self) -> dict:
        return {
            "schema": SCHEMA,
            "p": self.p,
            "provisional": self.provisional,
            "trees": [e.to_dict() for e in self.entries],
        }

    def to_text(self) -> str:
        lines = []
        if self.provisional:
            lines.append(f"PROVISIONAL: the PCF list for p={self.p} is not known to be complete")
        lines.append(f"{'#':>2}  {'type':<8} {'level':>5}  residue")
        for e in self.entries:
            lines.append(f"{e.index:>2}  {str(e.param.orbit_type):<8} {e.param.resolved_at:>5}  "
                         f"{e.tree.c} mod {self.p}^{e.param.resolved_at}")
        return "\n".join(lines) + "\n"


def figure_trees(p: int) -> FigureBundle:
    """One critical orbit tree per PCF parameter, drawn at its resolution level."""
    entries = []
    for j, param in enumerate(enumerate_pcf(p)):
        tree = critical_orbit_tree(param.c, depth=param.resolved_at)
        entries.append(FigureEntry(j, param, tree))
    return FigureBundle(p, entries)


def classification_text(cls: Classification) -> str:
    head = f"{cls.verdict.value} {cls.orbit_type}"
    if cls.resolved_at is not None:
        head += f" resolved at {cls.resolved_at}"
    head += " certified" if cls.certified else ""
    if cls.note:
        head += f"  [{cls.note}]"
    return head + "\n"


def profile_text(profile: LevelProfile) -> str:
    return "".join(f"mod {profile.p}^{k}  {t}\n" for k, t in profile.levels)


def pcf_text(params: list[PcfParameter]) -> str:
    lines = []
    for x in params:
        tag = "" if x.certified else "  (uncertified)"
        lines.append(f"{str(x.orbit_type):<8} {x.kind:<20} resolved at {x.resolved_at}  c = {x.c.to_digits()}{tag}")
    return "\n".join(lines) + "\n"


def explore_near_pcf(k: int, l: int, seed: int | None = None, i_max: int = 6) -> dict:
    """Same pipeline as the c = -2 check, centred on the (2,3) parameter in Z_3.

    Purely observational: the profile and the distance from f_c^2(0) to the
    nearest fixed point are reported and nothing is asserted.
    """
    (center,) = [x for x in enumerate_pcf(3) if x.orbit_type == OrbitType(2, 3)]
    K = k + i_max + 4
    offset = c2_parameter(k, l, K, seed) + 2
    c = center.c.reduce(min(K, center.c.precision)) + offset
    y = c * c + c
    try:
        dist, x = distance_to_fixed_point(c, y)
    except ArithmeticError:
        dist, x = None, None
    profile = level_profile(c, min(k + i_max, c.precision))
    return {
        "schema": SCHEMA,
        "center": center.c.to_digits(),
        "k": k,
        "l": l,
        "seed": seed,
        "c": c.to_digits(),
        "distance_val": None if dist is None else str(dist),
        "fixed_point_in_Zp": x is not None,
        "profile": [[lv, t.m, t.n] for lv, t in profile.levels],
    }
