import pydot
import pytest

from oracles import orbit_type
from padic_orbits.atlas import atlas_sweep, pcf_residues
from padic_orbits.orbits import OrbitInvariantError


def test_level_one_at_p5():
    atlas = atlas_sweep(5, 1)
    assert [(n.residue, tuple(n.orbit_type)) for n in atlas.level(1)] == [
        (0, (0, 1)), (1, (0, 3)), (2, (2, 2)), (3, (2, 1)), (4, (0, 2)),
    ]
    assert all(n.pcf for n in atlas.level(1))


def test_level_two_at_p3():
    types = {n.residue: tuple(n.orbit_type) for n in atlas_sweep(3, 2).level(2)}
    assert (types[1], types[4], types[7]) == ((2, 3), (2, 3), (2, 1))


@pytest.mark.parametrize("p,depth", [(2, 4), (3, 3), (5, 3)])
def test_labels_match_direct_orbits(p, depth):
    atlas = atlas_sweep(p, depth)
    for node in atlas.nodes():
        assert node.orbit_type == orbit_type(node.residue, p**node.level)
    assert len(atlas.level(depth)) == p**depth


@pytest.mark.parametrize("p", [2, 3, 5])
def test_children_refine_parents(p):
    for node in atlas_sweep(p, 3).nodes():
        assert sorted(ch.residue % p**node.level for ch in node.children) == (
            [node.residue] * p if node.children else []
        )
        for ch in node.children:
            assert ch.orbit_type.m >= node.orbit_type.m and ch.orbit_type.n % node.orbit_type.n == 0


def test_pcf_flags_follow_parameters():
    atlas = atlas_sweep(3, 4)
    flagged = [n.residue for n in atlas.level(4) if n.pcf]
    assert flagged == sorted(pcf_residues(3, 4)) == [0, 64, 79, 80]
    for node in atlas.nodes():
        if node.pcf and node.level > 1:
            parent = [n for n in atlas.level(node.level - 1) if n.residue == node.residue % 3 ** (node.level - 1)]
            assert parent[0].pcf


def test_p2_shades_three_paths():
    atlas = atlas_sweep(2, 3)
    assert [n.residue for n in atlas.level(3) if n.pcf] == [0, 6, 7]


def test_unflagged_sweep():
    assert not any(n.pcf for n in atlas_sweep(3, 2, flag_pcf=False).nodes())


def test_exports():
    atlas = atlas_sweep(3, 2)
    d = atlas.to_dict()
    assert d["schema"] == "padic-orbits/1" and len(d["nodes"]) == 3 + 9
    by_id = {n["id"]: n for n in d["nodes"]}
    assert by_id["c2_4"]["parent"] == "c1_1" and by_id["c1_1"]["parent"] is None
    (graph,) = pydot.graph_from_dot_data(atlas.to_dot())
    assert len(graph.get_edges()) == 12
    assert "4 mod 3^2  (2,3)" in atlas.to_text()


def test_depth_validation():
    with pytest.raises(ValueError):
        atlas_sweep(3, 0)


def test_broken_invariant_is_reported(monkeypatch):
    import padic_orbits.atlas as atlas_mod
    from padic_orbits.orbits import OrbitType

    real = atlas_mod.iterate_orbit

    def lying(c, M):
        seq, t = real(c, M)
        return seq, (OrbitType(0, 1) if M > 3 else t)

    monkeypatch.setattr(atlas_mod, "iterate_orbit", lying)
    with pytest.raises(OrbitInvariantError):
        atlas_sweep(3, 2, flag_pcf=False)
