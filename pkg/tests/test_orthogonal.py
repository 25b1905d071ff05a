from math import factorial

import pytest

from finlift import InputError, classify, map_canonical_form, parse_map, parse_space
from finlift.lifting import enumerate_maps as all_maps
from finlift.orthogonal import (
    MAX_SPACE_BOUND,
    basechange_presentation,
    census,
    census_maps,
    census_records,
    class_membership,
    described_class_report,
    enumerate_maps,
    enumerate_spaces,
    evaluate_class,
    finite_orthogonal,
    labeled_topologies,
    map_representatives,
    spaces_of_size,
    step_bounds,
    surjective_closed_not_final,
    verify_correspondence,
)
from finlift.notation import parse_class_expr
from finlift.preorder import automorphisms, canonical_form, is_monotone

from oracles import preorder_matrices


# ------------------------------------------------------------- spaces


@pytest.mark.parametrize("n", range(5))
def test_labeled_counts_match_matrix_filter(n):
    assert sum(1 for _ in labeled_topologies(n)) == sum(1 for _ in preorder_matrices(n))


def test_labeled_count_sequence():
    assert [sum(1 for _ in labeled_topologies(n)) for n in range(6)] == [1, 1, 4, 29, 355, 6942]


def test_cumulative_space_counts():
    assert [len(enumerate_spaces(n)) for n in range(4)] == [1, 2, 5, 14]
    assert [len(spaces_of_size(k)) for k in range(6)] == [1, 1, 3, 9, 33, 139]


@pytest.mark.parametrize("k", range(5))
def test_orbit_sums_recover_labeled_counts(k):
    total = sum(factorial(k) // len(automorphisms(X)) for X in spaces_of_size(k))
    assert total == sum(1 for _ in labeled_topologies(k))


def test_space_census_is_sound_and_deduplicated():
    spaces = enumerate_spaces(4)
    keys = [canonical_form(X) for X in spaces]
    assert len(set(keys)) == len(keys)
    for X in spaces:
        assert all(X.leq(x, x) for x in range(X.n))
        for x in range(X.n):
            for y in range(X.n):
                for z in range(X.n):
                    assert not (X.leq(x, y) and X.leq(y, z)) or X.leq(x, z)


def test_bound_guard():
    with pytest.raises(InputError):
        enumerate_spaces(MAX_SPACE_BOUND + 1)
    with pytest.raises(InputError):
        finite_orthogonal([parse_map("{}-->{o}")], "right", 9)
    with pytest.raises(InputError):
        enumerate_spaces(-1)


# ------------------------------------------------------------- maps


def test_enumerate_maps_examples():
    assert len(enumerate_maps(parse_space("{o}"), parse_space("{o->c}"))) == 2
    assert len(enumerate_maps(parse_space("{a,b}"), parse_space("{a,b}"))) == 4
    consts = enumerate_maps(parse_space("{a->b}"), parse_space("{a,b}"))
    assert len(consts) == 2 and all(len(set(f.assign)) == 1 for f in consts)


def test_map_census_is_monotone_and_deduplicated():
    maps = census_maps(3)
    keys = [map_canonical_form(f) for f in maps]
    assert len(set(keys)) == len(keys) == 661
    assert all(is_monotone(f.dom, f.cod, f.assign) for f in maps)
    assert len(census_maps(2)) == 31


def test_map_representatives_cover_every_orbit():
    spaces = enumerate_spaces(3)
    for X in spaces:
        for Y in spaces:
            reps = map_representatives(X, Y)
            keys = {map_canonical_form(f) for f in all_maps(X, Y)}
            assert {map_canonical_form(f) for f in reps} == keys
            assert len(reps) == len(keys)


def test_census_object():
    c = census(2)
    assert len(c.spaces) == 5 and len(c.morphisms) == 31
    assert census(2, with_maps=False).morphisms == []


def test_census_records_are_stable():
    a = list(census_records(2, with_maps=True))
    b = list(census_records(2, with_maps=True))
    assert a == b and a[0]["expr"] == "{}"


# ------------------------------------------------------------- orthogonals


def _keys(maps):
    return {map_canonical_form(f) for f in maps}


def test_right_orthogonal_of_empty_inclusion_is_surjections():
    got = finite_orthogonal([parse_map("{}-->{o}")], "right", 2)
    assert _keys(got) == _keys(f for f in census_maps(2) if classify.is_surjective(f))


def test_left_orthogonal_of_closed_point_is_dense_image():
    got = finite_orthogonal([parse_map("{c}-->{o->c}")], "left", 2)
    assert _keys(got) == _keys(f for f in census_maps(2) if classify.has_dense_image(f))


def test_left_orthogonal_of_antidiscrete_collapse_is_injections():
    got = finite_orthogonal([parse_map("{a<->b}-->{a=b}")], "left", 2)
    assert _keys(got) == _keys(f for f in census_maps(2) if classify.is_injective(f))


def test_step_bounds_and_caveat():
    ce = parse_class_expr("{ {o}-->{o->c} }^r_{<3}^lr")
    assert step_bounds(ce, 3) == [2, 3, 3]
    assert step_bounds(ce, 3, inner_bound=2) == [2, 2, 3]
    res = evaluate_class("{ {}-->{o} }^rl", 2)
    assert res.caveat is not None and res.bounds == [2, 2]
    assert evaluate_class("{ {}-->{o} }^r", 2).caveat is None


def test_class_membership_uses_inner_bound():
    f = parse_map("{}-->{a,b}")
    assert class_membership(f, "{ {}-->{o} }^rl").holds
    assert not class_membership(parse_map("{}-->{a->b}"), "{ {}-->{o} }^rl").holds


def test_described_classes():
    report = {r.expr: r for r in described_class_report(2)}
    inexact = {e for e, r in report.items() if not r.exact}
    assert inexact == {"{ {}-->{o} }^lr", "{ {a->b}-->{a=b} }^l"}
    # the extra members of the double orthogonal are isomorphisms, one per nonempty space
    lr = report["{ {}-->{o} }^lr"]
    assert not lr.missing
    assert len(lr.extra) == sum(1 for X in enumerate_spaces(2) if X.n)
    for text in lr.extra:
        f = parse_map(text)
        assert classify.is_injective(f) and classify.is_surjective(f) and classify.has_induced_topology(f)


def test_sierpinski_collapse_gives_induced_maps():
    got = finite_orthogonal([parse_map("{a->b}-->{a=b}")], "left", 3)
    assert _keys(got) == _keys(f for f in census_maps(3) if classify.has_induced_topology(f))


# ------------------------------------------------------------- basechange and shadows


def test_basechange_presentation():
    f = parse_map("{b}-->{a->b}")
    g = basechange_presentation(f)
    assert g is not None and g.cod.name(g.assign[f.cod.index("a")]) == "o"
    assert basechange_presentation(parse_map("{o}-->{o->c}")) is None
    assert basechange_presentation(parse_map("{}-->{a,b}")) is not None


def test_gluing_generator_is_proper_quotient():
    got = classify.classify_map(parse_map("{u->a,b<-v}-->{u->a=b<-v}"))
    assert {"surjective", "closed", "final_topology"} <= got


def test_surjective_closed_maps_are_final_at_three_points():
    assert surjective_closed_not_final(3) == []


# ------------------------------------------------------------- verification


def test_verify_examples():
    r = verify_correspondence("surjective", 3)
    assert r.ok and r.instances_checked == 661
    assert verify_correspondence("extremally_disconnected", 4).ok


def test_final_topology_extension_is_non_surjective():
    r = verify_correspondence("final_topology", 3)
    assert r.ok and r.extension
    for text in r.extension:
        f = parse_map(text)
        assert classify.has_final_topology(f) and not classify.is_surjective(f)


def test_vacuous_bound_zero():
    r = verify_correspondence("surjective", 0)
    assert r.ok and r.instances_checked == 1


def test_non_gating_forms_fail_only_where_expected():
    r = verify_correspondence("antidiscrete", 4)
    assert r.ok and {m.expr for m in r.descriptive} == {"{}"}
    r = verify_correspondence("empty", 4)
    assert r.ok and {m.expr for m in r.descriptive} == {"{}", "{a}"}


def test_report_serializes():
    import json

    r = verify_correspondence("closed", 2)
    d = json.loads(r.to_json())
    assert d["predicate"] == "closed" and d["ok"] and d["instances_checked"] == 31
