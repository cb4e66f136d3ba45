import itertools

import pytest

from preproj.quiver import (Quiver, QuiverError, catalog, classify, double,
                            find_extended_dynkin_subquiver, forest_for_white)


def test_double_one_loop():
    q = catalog("free", 1)
    qd = double(q)
    assert len(qd.arrows) == 2
    assert qd.starred
    a, astar = (x for (x, _, _) in qd.arrows)
    assert qd.star[a] == astar and qd.star[astar] == a
    assert qd.arrow_name(astar) == "x*"


def test_double_cycle():
    qd = double(catalog("affine_a", 3))
    assert len(qd.arrows) == 6
    for a, b in qd.star.items():
        assert (qd.src(a), qd.dst(a)) == (qd.dst(b), qd.src(b))


def test_double_single_arrow():
    q = Quiver([0, 1], [(0, 0, 1)])
    qd = double(q)
    arrows = {(s, t) for (_, s, t) in qd.arrows}
    assert arrows == {(0, 1), (1, 0)}


def test_double_rejects_double():
    qd = double(catalog("free", 1))
    with pytest.raises(QuiverError):
        double(qd)


def test_classify_basics():
    assert str(classify(catalog("dynkin_a", 3))) == "A3"
    assert str(classify(catalog("affine_a", 1))) == "~A0"
    two_loops = catalog("free", 2)
    assert classify(two_loops).kind == "other"
    assert str(classify(catalog("affine_d", 7))) == "~D7"
    assert str(classify(catalog("dynkin_d", 5))) == "D5"
    assert str(classify(catalog("affine_e", 7))) == "~E7"
    assert str(classify(catalog("dynkin_e", 8))) == "E8"


def test_classify_catalog_exhaustive():
    cases = [
        (("free", 1), "~A0"), (("free", 3), "Other"),
        (("affine_a", 2), "~A1"), (("affine_a", 5), "~A4"),
        (("affine_d", 4), "~D4"), (("affine_d", 6), "~D6"),
        (("affine_e", 6), "~E6"), (("affine_e", 8), "~E8"),
        (("dynkin_a", 1), "A1"), (("dynkin_a", 7), "A7"),
        (("dynkin_d", 4), "D4"), (("dynkin_e", 6), "E6"),
        (("star", (1, 1, 1, 1, 1)), "Other"),
        (("star", (2, 2, 2)), "~E6"), (("star", (3, 3, 1)), "~E7"),
        (("star", (5, 2, 1)), "~E8"), (("star", (6, 2, 1)), "Other"),
    ]
    for (name, arg), want in cases:
        q = catalog(name, *arg) if isinstance(arg, tuple) else catalog(name, arg)
        assert str(classify(q)) == want, (name, arg)


def test_extending_vertex_is_smallest_valid():
    q = catalog("affine_a", 3)
    assert classify(q).extending_vertex == 0
    qd4 = catalog("affine_d", 4)
    # removing any external vertex of ~D4 leaves D4; smallest id wins
    assert classify(qd4).extending_vertex == 0


def test_catalog_shapes():
    q = catalog("affine_a", 3)
    assert len(q.vertices) == 3 and len(q.arrows) == 3
    e6 = catalog("star", 2, 2, 2)
    assert str(classify(e6)) == "~E6"
    d4 = catalog("star", 1, 1, 1, 1)
    assert str(classify(d4)) == "~D4"
    with pytest.raises(QuiverError):
        catalog("affine_e", 9)
    with pytest.raises(QuiverError):
        catalog("nonsense")


def test_star_orientation_toward_center():
    q = catalog("star", 2, 1)
    for (a, s, t) in q.arrows:
        # every arrow moves one step toward the special vertex 0
        assert t < s or t == 0 or s > t


def test_subquiver_two_loops():
    q = catalog("free", 2)
    sub = find_extended_dynkin_subquiver(q)
    assert sub is not None
    assert len(sub.arrows) == 1 and sub.arrows[0][1] == sub.arrows[0][2]
    assert str(classify(sub)) == "~A0"


def test_subquiver_cycle_plus_arrow():
    base = catalog("affine_a", 3)
    arrows = list(base.arrows) + [(3, 0, 1)]
    q = Quiver(base.vertices, arrows)
    sub = find_extended_dynkin_subquiver(q)
    assert sub is not None
    assert classify(sub).is_extended_dynkin()


def test_subquiver_none_for_dynkin_and_extended():
    assert find_extended_dynkin_subquiver(catalog("dynkin_a", 3)) is None
    assert find_extended_dynkin_subquiver(catalog("affine_e", 6)) is None


def _connected_multigraphs(max_v, max_e):
    """All connected undirected multigraphs (with loops) on <= max_v labeled
    vertices and <= max_e edges, as directed quivers with src <= dst."""
    for nv in range(1, max_v + 1):
        slots = [(i, j) for i in range(nv) for j in range(i, nv)]
        for ne in range(nv - 1, max_e + 1):
            for combo in itertools.combinations_with_replacement(slots, ne):
                arrows = [(k, s, t) for k, (s, t) in enumerate(combo)]
                try:
                    q = Quiver(list(range(nv)), arrows)
                except QuiverError:
                    continue
                yield q


def test_subquiver_search_exhaustive():
    """find_extended_dynkin_subquiver returns nothing exactly when the quiver
    is Dynkin or extended Dynkin: all quivers with <= 5 vertices, <= 6 arrows."""
    count = 0
    for q in _connected_multigraphs(5, 6):
        count += 1
        cls = classify(q)
        sub = find_extended_dynkin_subquiver(q)
        if cls.kind == "other":
            assert sub is not None, (q.vertices, q.arrows)
            assert classify(sub).is_extended_dynkin(), (q.arrows, sub.arrows)
            # the returned ids really embed into the parent
            parent = {(a, s, t) for (a, s, t) in q.arrows}
            assert all((a, s, t) in parent for (a, s, t) in sub.arrows)
        else:
            assert sub is None, (q.arrows, cls)
    assert count > 10000


def test_forest_examples():
    q = Quiver([0, 1], [(0, 0, 1)])
    qd = double(q)
    f = forest_for_white(qd, [1])
    assert f.arrows == (0,)

    with pytest.raises(QuiverError):
        forest_for_white(qd, [])

    # whole vertex set white: empty forest
    f2 = forest_for_white(qd, [0, 1])
    assert f2.arrows == ()

    star = double(catalog("star", 1, 1))
    f3 = forest_for_white(star, [0])
    assert len(f3.arrows) == 2
    for a in f3.arrows:
        assert star.dst(a) == 0 and star.src(a) in (1, 2)


def test_forest_invariants_random():
    import random

    rng = random.Random(7)
    for _ in range(40):
        nv = rng.randint(2, 5)
        arrows = [(k, rng.randrange(nv), rng.randrange(nv)) for k in range(nv + 1)]
        try:
            q = Quiver(range(nv), arrows)
        except QuiverError:
            continue
        qd = double(q)
        white = {rng.randrange(nv)}
        f = forest_for_white(qd, white)
        # src is a bijection onto the black vertices
        blacks = sorted(set(qd.vertices) - white)
        assert sorted(qd.src(a) for a in f.arrows) == blacks
        # no undirected cycles: #arrows = #vertices touched - #components
        import collections

        adj = collections.defaultdict(set)
        for a in f.arrows:
            adj[qd.src(a)].add(qd.dst(a))
            adj[qd.dst(a)].add(qd.src(a))
        seen = set()
        comps = 0
        touched = set(adj)
        for v in touched:
            if v in seen:
                continue
            comps += 1
            stack = [v]
            while stack:
                u = stack.pop()
                if u in seen:
                    continue
                seen.add(u)
                stack.extend(adj[u] - seen)
        assert len(f.arrows) == len(touched) - comps


def test_json_roundtrip():
    q = catalog("affine_d", 5)
    text = q.to_json(white=[2])
    q2, white = Quiver.from_json(text)
    assert q2.vertices == q.vertices
    assert q2.arrows == q.arrows
    assert white == {2}


def test_double_arrowless_vertex():
    # a single vertex with no arrows doubles to itself (empty involution)
    q = catalog("dynkin_a", 1)
    qd = double(q)
    assert qd.starred and qd.arrows == () and qd.star == {}
