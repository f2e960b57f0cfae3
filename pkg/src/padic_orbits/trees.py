"""Critical orbit trees inside the tree of disks of Z_p.

Vertices are closed disks ``D(a, p^-l)``; the root is the Gauss point
``D(0, 1)``.  Trees are stored compressed: the root, the branch points and
the orbit endpoints are vertices, and unary chains become weighted edges.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple

from .orbits import Classification, OrbitRecord, Verdict, classify, orbit_mod
from .padic import AT_LEAST_PRECISION, PAdicInt

SCHEMA = "padic-orbits/1"


class TreeShapeError(AssertionError):
    """A critical orbit tree violates the shape constraints for finite orbits."""


class DiskVertex(NamedTuple):
    level: int
    center: int
    p: int

    @classmethod
    def make(cls, a: int, level: int, p: int) -> "DiskVertex":
        return cls(level, a % p**level, p)

    @property
    def label(self) -> str:
        return f"{self.center} mod {self.p}^{self.level}"

    @property
    def node_id(self) -> str:
        return f"v{self.level}_{self.center}"

    def contains(self, other: "DiskVertex") -> bool:
        return other.level >= self.level and (other.center - self.center) % self.p**self.level == 0

    def ancestor(self, level: int) -> "DiskVertex":
        return DiskVertex.make(self.center, min(level, self.level), self.p)


GAUSS_LEVEL = 0


def gauss_point(p: int) -> DiskVertex:
    return DiskVertex(GAUSS_LEVEL, 0, p)


def disk_join(a, b) -> DiskVertex:
    """Smallest disk containing both arguments (PAdicInts or DiskVertices)."""
    if isinstance(a, PAdicInt):
        if a.p != b.p:
            raise ValueError("mismatched primes")
        v = (a - b).valuation()
        k = min(a.precision, b.precision)
        level = k if v == AT_LEAST_PRECISION else int(v)
        return DiskVertex.make(a.residue, level, a.p)
    if a.p != b.p:
        raise ValueError("mismatched primes")
    level = min(a.level, b.level)
    diff = a.center - b.center
    while level > 0 and diff % a.p**level:
        level -= 1
    return DiskVertex.make(a.center, level, a.p)


def path_metric(v1: DiskVertex, v2: DiskVertex) -> int:
    j = disk_join(v1, v2)
    return (v1.level - j.level) + (v2.level - j.level)


@dataclass(frozen=True)
class OrbitTree:
    p: int
    c: int
    depth: int
    parent: dict = field(repr=False)  # child vertex -> parent vertex
    endpoint_labels: dict = field(repr=False)  # orbit index -> endpoint vertex
    induced_map: dict = field(repr=False)  # endpoint vertex -> endpoint vertex
    orbit: OrbitRecord = field(repr=False)

    @property
    def root(self) -> DiskVertex:
        return gauss_point(self.p)

    @property
    def vertices(self) -> list[DiskVertex]:
        return sorted({self.root, *self.parent})

    def children(self, v: DiskVertex) -> list[DiskVertex]:
        return sorted(ch for ch, par in self.parent.items() if par == v)

    def edges(self) -> list[tuple[DiskVertex, DiskVertex, int]]:
        return sorted((par, ch, ch.level - par.level) for ch, par in self.parent.items())

    @property
    def gauss_degree(self) -> int:
        return len(self.children(self.root))

    def branch_vertices(self) -> list[DiskVertex]:
        """Non-root vertices with at least two children."""
        counts = defaultdict(int)
        for par in self.parent.values():
            counts[par] += 1
        return sorted(v for v, n in counts.items() if n >= 2 and v != self.root)

    def to_dict(self) -> dict:
        index = {v: j for j, v in self.endpoint_labels.items()}
        return {
            "schema": SCHEMA,
            "p": self.p,
            "c": PAdicInt(self.p, self.depth, self.c).to_digits(),
            "depth": self.depth,
            "orbit_type": [self.orbit.m, self.orbit.n],
            "vertices": [
                {"id": v.node_id, "center": v.center, "level": v.level, "label": v.label,
                 **({"orbit_index": index[v]} if v in index else {})}
                for v in self.vertices
            ],
            "edges": [
                {"parent": a.node_id, "child": b.node_id, "length": n}
                for a, b, n in self.edges()
            ],
            "induced_map": [
                [j, index[self.induced_map[v]]] for j, v in sorted(self.endpoint_labels.items())
            ],
        }

    def to_dot(self, name: str | None = None) -> str:
        index = {v: j for j, v in self.endpoint_labels.items()}
        name = name or f"orbit_tree_p{self.p}_c{self.c}_d{self.depth}"
        lines = [f'digraph "{name}" {{', "  node [shape=circle];"]
        for v in self.vertices:
            extra = f", shape=box, orbit_index={index[v]}" if v in index else ""
            lines.append(f'  "{v.node_id}" [label="{v.label}"{extra}];')
        for a, b, n in self.edges():
            lines.append(f'  "{a.node_id}" -> "{b.node_id}" [length={n}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _hull(points, depth: int, p: int) -> dict:
    """Parent map of the compressed convex hull of ``points`` (residues mod p^depth)."""
    parent: dict[DiskVertex, DiskVertex] = {}
    root = gauss_point(p)
    # work top-down: a class at level l is a vertex when it is the root, an
    # endpoint, or splits into at least two classes at level l + 1
    frontier = {root: sorted(set(points))}
    while frontier:
        nxt = {}
        for anchor, pts in frontier.items():
            groups = _split_until_branch(pts, anchor, depth, p)
            for vertex, sub in groups:
                parent[vertex] = anchor
                if vertex.level < depth:
                    nxt[vertex] = sub
        frontier = nxt
    return parent


def _split_until_branch(pts, anchor: DiskVertex, depth: int, p: int):
    """Children of ``anchor``: follow each class below it down to its next vertex."""
    out = []
    by_class = defaultdict(list)
    for z in pts:
        by_class[z % p ** (anchor.level + 1)].append(z)
    for sub in by_class.values():
        level = anchor.level + 1
        while level < depth and len({z % p ** (level + 1) for z in sub}) == 1:
            level += 1
        out.append((DiskVertex.make(sub[0], level, p), sub))
    return out


def critical_orbit_tree(c, depth: int | None = None) -> OrbitTree:
    """Convex hull of the critical orbit mod ``p**depth`` with the endpoint dynamics.

    Without ``depth`` the parameter is classified and, for finite orbits,
    ``resolved_at + 2`` levels are used (capped by precision).
    """
    if depth is None:
        cls = classify(c)
        if not cls.verdict.finite or cls.resolved_at is None:
            raise ValueError("infinite or undecided orbit: pass an explicit depth")
        depth = min(cls.resolved_at + 2, c.precision)
    record = orbit_mod(c, depth)
    p = record.p
    points = record.points
    parent = _hull(points, depth, p)
    endpoints = {j: DiskVertex.make(z, depth, p) for j, z in enumerate(points)}
    last = record.m + record.n - 1
    induced = {
        endpoints[j]: endpoints[j + 1 if j < last else record.m] for j in endpoints
    }
    return OrbitTree(p, record.c, depth, parent, endpoints, induced, record)


@dataclass(frozen=True)
class TreeShapeReport:
    gauss_degree: int
    branching_levels: list[int]
    matches_mod_p: bool
    extra_branch_count: int
    split_factor: int | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "gauss_degree": self.gauss_degree,
            "branching_levels": self.branching_levels,
            "matches_mod_p": self.matches_mod_p,
            "extra_branch_count": self.extra_branch_count,
            "split_factor": self.split_factor,
            "notes": self.notes,
        }


def _is_single_cycle(tree: OrbitTree) -> bool:
    start = tree.endpoint_labels[0]
    seen, v = [], start
    while v not in seen:
        seen.append(v)
        v = tree.induced_map[v]
    return v == start and len(seen) == len(tree.endpoint_labels)


def shape_check(tree: OrbitTree, tree_mod_p: OrbitTree, classification: Classification) -> TreeShapeReport:
    """Compare a finite critical orbit tree with its mod-p tree.

    Periodic orbits must give a single Gauss-point vertex of degree n acting
    by a cyclic permutation; strictly preperiodic orbits of type (m, n) may
    add exactly one branching, where each of the n1 cycle classes mod p
    splits into n / n1 children at a single level.  For p = 2 the report is
    descriptive and nothing is asserted.
    """
    branch = tree.branch_vertices()
    levels = sorted({v.level for v in branch})
    report_kw = dict(
        gauss_degree=tree.gauss_degree,
        branching_levels=levels,
        matches_mod_p=not levels and tree.gauss_degree == tree_mod_p.gauss_degree,
        extra_branch_count=len(levels),
    )
    if tree.p == 2:
        where = ["tail" if any(j < tree.orbit.m for j in _endpoint_indices(tree, v)) else "cycle"
                 for v in branch]
        notes = [f"p = 2: branching at levels {levels} ({', '.join(where) or 'none'})"]
        return TreeShapeReport(**report_kw, notes=notes)

    if not classification.verdict.finite:
        raise ValueError("shape_check needs a finite orbit classification")
    m, n = classification.m, classification.n

    def fail(msg: str):
        raise TreeShapeError(f"p={tree.p}, c={tree.c}, type ({m},{n}): {msg}")

    if tree.gauss_degree != tree_mod_p.gauss_degree:
        fail(f"Gauss degree {tree.gauss_degree} differs from mod-p degree {tree_mod_p.gauss_degree}")
    if classification.verdict is Verdict.PERIODIC_EXACT:
        if tree.gauss_degree != n or levels:
            fail(f"periodic tree should be a single vertex of degree {n}")
        if not _is_single_cycle(tree):
            fail("endpoints are not permuted cyclically")
        return TreeShapeReport(**report_kw, split_factor=1)

    n1 = tree_mod_p.orbit.n
    if tree.gauss_degree != m + n1:
        fail(f"Gauss degree {tree.gauss_degree} != m + n1 = {m + n1}")
    if not levels:
        if n != n1:
            fail(f"cycle length {n} != {n1} but no branching")
        return TreeShapeReport(**report_kw, split_factor=1)
    if len(levels) > 1:
        fail(f"branching at several levels {levels}")
    r, rem = divmod(n, n1)
    if rem or len(branch) != n1:
        fail(f"{len(branch)} branching vertices, expected {n1}")
    for v in branch:
        idx = _endpoint_indices(tree, v)
        if len(tree.children(v)) != r or any(j < m for j in idx):
            fail(f"vertex {v.label} should split into {r} cycle branches")
    return TreeShapeReport(**report_kw, split_factor=r)


def _endpoint_indices(tree: OrbitTree, v: DiskVertex) -> list[int]:
    return [j for j, e in tree.endpoint_labels.items() if v.contains(e)]
