import random

import pytest

from finlift import FinMap, FinSpace, InputError, Square, check_against_class, check_lifting, find_lift, parse_map
from finlift.lifting import enumerate_maps, has_lifting, monotone_assignments, squares
from finlift.orthogonal import labeled_topologies

from oracles import all_monotone, matrix_of, naive_first_failure


def labeled_maps(k):
    sp = [FinSpace([frozenset((f"p{i}",)) for i in range(n)], up) for n in range(k + 1) for up in labeled_topologies(n)]
    return [f for X in sp for Y in sp for f in enumerate_maps(X, Y)]


MAPS2 = labeled_maps(2)
V_GLUE = "{u->a,b<-v}-->{u->a=b<-v}"


# ------------------------------------------------------------- find_lift


def test_identity_always_lifts_to_f():
    p = parse_map("{a,b}-->{a=b}")
    A = p.dom
    i = FinMap.identity(A)
    for f in enumerate_maps(A, p.dom):
        g = FinMap(A, p.cod, [p.assign[v] for v in f.assign])
        assert find_lift(Square(i, p, f, g)) == f


def test_missing_preimage_has_no_lift():
    i = parse_map("{}-->{o}")
    p = parse_map("{a}-->{a<->b}")
    f = FinMap(i.dom, p.dom, ())
    g = FinMap(i.cod, p.cod, (p.cod.index("b"),))
    assert find_lift(Square(i, p, f, g)) is None


def test_closed_point_into_collapse_lifts():
    i = parse_map("{c}-->{o->c}")
    p = parse_map("{o->c}-->{o}")
    for g in enumerate_maps(i.cod, p.cod):
        f = FinMap(i.dom, p.dom, (p.dom.index("c"),))
        h = find_lift(Square(i, p, f, g))
        assert h is not None and h.assign == (0, 1)


def test_find_lift_rejects_non_commuting_square():
    i = parse_map("{}-->{o}")
    p = parse_map("{a}-->{a<->b}")
    bad = Square(i, p, FinMap(i.dom, p.dom, ()), FinMap(i.cod, p.dom, (0,)))
    with pytest.raises(InputError):
        find_lift(bad)
    i2 = parse_map("{a}-->{a}")
    p2 = parse_map("{a,b}-->{a=b}")
    f = FinMap(i2.dom, p2.dom, (0,))
    g = FinMap(i2.cod, p2.cod, (0,))
    sq = Square(i2, p2, f, g)
    assert sq.commutes()


# ------------------------------------------------------------- check_lifting


def test_empty_inclusion_against_surjection():
    assert check_lifting(parse_map("{}-->{o}"), parse_map("{a,b}-->{a=b}")).holds


def test_v_space_is_not_extremally_disconnected():
    v = check_lifting(parse_map("{}-->{x->a<-y}"), parse_map(V_GLUE))
    assert not v.holds
    sq = v.counterexample
    assert sq.commutes() and find_lift(sq) is None


def test_sierpinski_is_extremally_disconnected():
    assert check_lifting(parse_map("{}-->{o->c}"), parse_map(V_GLUE)).holds


def test_witnesses_are_lifts():
    i, p = parse_map("{a}-->{a<->b}"), parse_map("{u->a,b<-v}-->{u->a=b<-v}")
    v = check_lifting(parse_map("{}-->{o->c}"), p, witnesses=True)
    assert v.holds and len(v.witnesses) == v.squares
    for sq, h in v.witnesses:
        assert sq.is_lift(h)
    v = check_lifting(i, parse_map("{a,b}-->{a=b}"), witnesses=True)
    for sq, h in v.witnesses:
        assert sq.is_lift(h)


def test_deterministic_counterexample():
    i, p = parse_map("{}-->{x->a<-y}"), parse_map(V_GLUE)
    a, b = check_lifting(i, p), check_lifting(i, p)
    assert a.counterexample == b.counterexample and a.squares == b.squares


# ------------------------------------------------------------- classes


def test_class_examples():
    gen = [parse_map("{}-->{o}")]
    assert check_against_class(parse_map("{a,b}-->{a=b}"), gen, "right").holds
    v = check_against_class(parse_map("{a}-->{a<->b}"), gen, "right")
    assert not v.holds and v.generator == 0


def test_closed_point_against_itself():
    m = parse_map("{c}-->{o->c}")
    v = check_against_class(m, [m], "left")
    assert v.holds == check_lifting(m, m).holds == has_lifting(m, m)


def test_side_names():
    m, g = parse_map("{a,b}-->{a=b}"), parse_map("{}-->{o}")
    assert check_against_class(m, [g], "r").holds == check_lifting(g, m).holds
    assert check_against_class(m, [g], "l").holds == check_lifting(m, g).holds
    with pytest.raises(InputError):
        check_against_class(m, [g], "up")


def test_reports_first_failing_generator():
    m = parse_map("{a}-->{a<->b}")
    gens = [parse_map("{a,b}-->{a=b}"), parse_map("{}-->{o}")]
    v = check_against_class(m, gens, "right")
    assert not v.holds and v.generator == 1


# ------------------------------------------------------------- oracles


def test_monotone_assignments_match_filter():
    for f in MAPS2[::3]:
        X, Y = f.dom, f.cod
        assert list(monotone_assignments(X, Y)) == all_monotone(matrix_of(X), matrix_of(Y))


def test_square_enumeration_matches_filter():
    for i in MAPS2[::5]:
        for p in MAPS2[::7]:
            A, B, X, Y = (matrix_of(S) for S in (i.dom, i.cod, p.dom, p.cod))
            expect = [
                (f, g)
                for f in all_monotone(A, X)
                for g in all_monotone(B, Y)
                if all(p.assign[f[a]] == g[i.assign[a]] for a in range(len(A)))
            ]
            assert list(squares(i, p)) == expect


def test_agrees_with_naive_on_two_point_spaces():
    for i in MAPS2:
        for p in MAPS2:
            v = check_lifting(i, p)
            naive = naive_first_failure(i, p)
            assert v.holds == (naive is None)
            if naive is not None:
                assert (v.counterexample.f.assign, v.counterexample.g.assign) == naive


def test_agrees_with_naive_on_sampled_three_point_maps():
    maps3 = labeled_maps(3)
    rng = random.Random(7)
    for _ in range(400):
        i, p = rng.choice(maps3), rng.choice(maps3)
        assert check_lifting(i, p).holds == (naive_first_failure(i, p) is None)
