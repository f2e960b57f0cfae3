"""Parameter-space atlas: every residue class of c labelled by its orbit type."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .orbits import OrbitInvariantError, OrbitType, iterate_orbit
from .pcf import enumerate_pcf
from .trees import SCHEMA

# exact PCF parameters in Z_2 visible as integers; completeness for p = 2 is open
KNOWN_PCF_2 = (0, -1, -2)


@dataclass
class AtlasNode:
    residue: int
    level: int
    orbit_type: OrbitType
    pcf: bool = False
    children: list["AtlasNode"] = field(default_factory=list)

    def walk(self) -> Iterable["AtlasNode"]:
        yield self
        for ch in self.children:
            yield from ch.walk()


@dataclass
class Atlas:
    p: int
    depth: int
    roots: list[AtlasNode]
    pcf_residues: tuple[int, ...]  # PCF parameters reduced mod p^depth

    def nodes(self) -> list[AtlasNode]:
        return [n for r in self.roots for n in r.walk()]

    def level(self, k: int) -> list[AtlasNode]:
        return sorted((n for n in self.nodes() if n.level == k), key=lambda n: n.residue)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "p": self.p,
            "depth": self.depth,
            "nodes": [
                {
                    "id": _node_id(n),
                    "residue": n.residue,
                    "level": n.level,
                    "orbit_type": list(n.orbit_type),
                    "pcf": n.pcf,
                    "parent": None if n.level == 1 else _node_id_at(n.residue, n.level - 1, self.p),
                }
                for n in sorted(self.nodes(), key=lambda n: (n.level, n.residue))
            ],
        }

    def to_dot(self) -> str:
        lines = [f'digraph "atlas_p{self.p}_d{self.depth}" {{', "  node [shape=box];",
                 '  "root" [label="Z_%d", shape=point];' % self.p]
        ordered = sorted(self.nodes(), key=lambda n: (n.level, n.residue))
        for n in ordered:
            style = ", style=filled, fillcolor=gray" if n.pcf else ""
            label = f"{n.residue} mod {self.p}^{n.level}\\n{n.orbit_type}"
            lines.append(f'  "{_node_id(n)}" [label="{label}"{style}];')
        for n in ordered:
            parent = "root" if n.level == 1 else _node_id_at(n.residue, n.level - 1, self.p)
            lines.append(f'  "{parent}" -> "{_node_id(n)}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out = []
        for n in sorted(self.nodes(), key=lambda n: (n.residue % self.p, _digits_key(n, self.p))):
            mark = "  *" if n.pcf else ""
            out.append(f"{'  ' * (n.level - 1)}{n.residue} mod {self.p}^{n.level}  {n.orbit_type}{mark}")
        return "\n".join(out) + "\n"


def _digits_key(n: AtlasNode, p: int) -> list[int]:
    r, ds = n.residue, []
    for _ in range(n.level):
        r, d = divmod(r, p)
        ds.append(d)
    return ds


def _node_id(n: AtlasNode) -> str:
    return f"c{n.level}_{n.residue}"


def _node_id_at(residue: int, level: int, p: int) -> str:
    return f"c{level}_{residue % p**level}"


def pcf_residues(p: int, depth: int) -> tuple[int, ...]:
    """Known PCF parameters reduced mod p^depth."""
    M = p**depth
    if p == 2:
        return tuple(sorted({c % M for c in KNOWN_PCF_2}))
    return tuple(sorted({x.c.residue % M for x in enumerate_pcf(p)}))


def atlas_sweep(p: int, depth: int, flag_pcf: bool = True) -> Atlas:
    """Breadth-first sweep of all residues mod p^j, j <= depth."""
    if depth < 1:
        raise ValueError("atlas depth must be >= 1")
    marks = pcf_residues(p, depth) if flag_pcf else ()
    roots = [AtlasNode(a, 1, iterate_orbit(a, p)[1]) for a in range(p)]
    frontier = list(roots)
    for k in range(2, depth + 1):
        M, step = p**k, p ** (k - 1)
        nxt = []
        for node in frontier:
            for d in range(p):
                a = node.residue + d * step
                t = iterate_orbit(a, M)[1]
                if t.m < node.orbit_type.m or t.n % node.orbit_type.n:
                    raise OrbitInvariantError(f"atlas node {a} mod {p}^{k} breaks the level invariants")
                child = AtlasNode(a, k, t)
                node.children.append(child)
                nxt.append(child)
        frontier = nxt
    for node in (n for r in roots for n in r.walk()):
        Mk = p**node.level
        node.pcf = any(c % Mk == node.residue for c in marks)
    return Atlas(p, depth, roots, marks)
