import random

import pytest

from flipgroupoid.surface import (
    MarkedSurface,
    PairClass,
    Triangulation,
    annulus,
    genus_one,
    polygon_fan,
)


def test_surface_invariants():
    s = MarkedSurface(0, (6,))
    assert (s.b, s.m, s.arc_count, s.triangle_count) == (1, 6, 3, 4)
    assert MarkedSurface(0, (1, 1)).arc_count == 2
    assert MarkedSurface(1, (1,)).arc_count == 4


@pytest.mark.parametrize(
    "bad",
    [
        dict(genus=0, boundaries=()),
        dict(genus=0, boundaries=(0, 2)),
        dict(genus=0, boundaries=(3,)),
        dict(genus=-1, boundaries=(5,)),
    ],
)
def test_surface_rejects(bad):
    with pytest.raises(ValueError):
        MarkedSurface(**bad)


def test_polygon_fan_examples():
    t4 = polygon_fan(4)
    assert t4.n == 1 and len(t4.triangles) == 2
    t6 = polygon_fan(6)
    assert t6.arc_labels() == ["a1", "a2", "a3"]
    assert len(t6.triangles) == 4
    t5 = polygon_fan(5)
    assert t5.n == 2 and len(t5.triangles) == 3
    with pytest.raises(ValueError):
        polygon_fan(3)


def test_flip_hexagon_middle():
    t6 = polygon_fan(6)
    f = t6.flip(2)
    # 03 replaced by 24: the inner triangle (a1,a2,a3) appears
    assert ("a1", "a2", "a3") in f.triangles
    assert f.flip(2) == t6


def test_flip_unknown_arc():
    with pytest.raises(ValueError):
        polygon_fan(5).flip(7)


def test_flip_involution_random():
    rng = random.Random(11)
    bases = [polygon_fan(m) for m in (4, 5, 6, 7, 8)]
    bases += [annulus(1, 1), annulus(2, 1), annulus(2, 2), genus_one(1), genus_one(2)]
    for _ in range(1000):
        t = rng.choice(bases)
        for _ in range(rng.randrange(0, 6)):
            t = t.flip(rng.randrange(1, t.n + 1))
        a = rng.randrange(1, t.n + 1)
        assert t.flip(a).flip(a) == t


def test_flip_validates_on_every_result():
    rng = random.Random(5)
    for base in [polygon_fan(7), annulus(2, 2), genus_one(2)]:
        t = base
        for _ in range(30):
            t = t.flip(rng.randrange(1, t.n + 1))
            t.validate()  # counts and Euler characteristic from vertex cycles


def test_classify_pairs():
    t6 = polygon_fan(6)
    assert t6.classify_pair(1, 3) is PairClass.DISJOINT
    assert t6.classify_pair(1, 2) is PairClass.ONE_SHARED_TRIANGLE
    a = annulus(1, 1)
    assert a.classify_pair(1, 2) is PairClass.TWO_SHARED_TRIANGLES
    with pytest.raises(ValueError):
        t6.classify_pair(2, 2)


def test_annulus_counts():
    a = annulus(1, 1)
    assert a.n == 2 and len(a.triangles) == 2
    b = annulus(2, 1)
    assert b.n == 3 and len(b.triangles) == 3
    # flipping either arc keeps the pair class
    for arc in (1, 2):
        f = annulus(1, 1).flip(arc)
        assert f.classify_pair(1, 2) is PairClass.TWO_SHARED_TRIANGLES


def test_quadrilateral():
    t6 = polygon_fan(6)
    assert t6.quadrilateral(2) == ("a1", "b0.2", "b0.3", "a3")
    t4 = polygon_fan(4)
    assert t4.quadrilateral(1) == ("b0.0", "b0.1", "b0.2", "b0.3")
    a = annulus(1, 1)
    quad = a.quadrilateral(1)
    assert quad.count("a2") == 2


def test_quiver_fan_is_linear():
    q = polygon_fan(6).quiver()
    assert q.b_entry(1, 2) == 1 and q.b_entry(2, 3) == 1 and q.b_entry(1, 3) == 0
    assert q.terms == ()


def test_quiver_inner_triangle():
    q = polygon_fan(6).flip(2).quiver()
    assert sorted(q.potential_vertex_terms()) == [(1, 3, 2)]
    assert abs(q.b_entry(1, 2)) == 1 and abs(q.b_entry(2, 3)) == 1 and abs(q.b_entry(1, 3)) == 1


def test_quiver_annulus_kronecker():
    q = annulus(1, 1).quiver()
    assert abs(q.b_entry(1, 2)) == 2
    assert q.terms == ()


def test_arrow_shared_triangle_correspondence_samples():
    rng = random.Random(23)
    want = {
        PairClass.DISJOINT: 0,
        PairClass.ONE_SHARED_TRIANGLE: 1,
        PairClass.TWO_SHARED_TRIANGLES: 2,
    }
    for base in [polygon_fan(8), annulus(2, 2), genus_one(1)]:
        t = base
        for _ in range(40):
            t = t.flip(rng.randrange(1, t.n + 1))
            q = t.quiver()
            for i in range(1, t.n + 1):
                for j in range(i + 1, t.n + 1):
                    assert abs(q.b_entry(i, j)) == want[t.classify_pair(i, j)]


def test_dual_graph():
    assert polygon_fan(6).dual_graph() == ((0, 1, 1), (1, 2, 2), (2, 3, 3))
    assert polygon_fan(4).dual_graph() == ((0, 1, 1),)
    assert annulus(1, 1).dual_graph() == ((0, 1, 1), (0, 1, 2))


def test_genus_one_counts():
    for m in (1, 2, 3):
        t = genus_one(m)
        assert t.n == m + 3
        assert len(t.triangles) == m + 2
        t.validate()


def test_json_roundtrip():
    for t in [polygon_fan(6), annulus(2, 1), genus_one(2)]:
        assert Triangulation.from_json(t.to_json()) == t


def test_json_deterministic():
    t = polygon_fan(6)
    assert t.dumps() == polygon_fan(6).dumps()
