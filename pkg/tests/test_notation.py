import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finlift import (
    FinMap,
    FinSpace,
    InputError,
    ParseError,
    canonical_form,
    map_canonical_form,
    parse,
    parse_class_expr,
    parse_map,
    parse_space,
    product,
    render,
    render_map,
    render_space,
)
from finlift.lifting import enumerate_maps
from finlift.notation import render_class_expr
from finlift.orthogonal import enumerate_spaces, labeled_topologies

from expressions import CLASSES, MAPS, SHORTHAND, SPACES


def strict_count(X):
    return len(X.strict_pairs())


# ------------------------------------------------------------- spaces


def test_sierpinski():
    X = parse_space("{a->b}")
    assert X.n == 2 and X.leq(X.index("a"), X.index("b")) and not X.leq(X.index("b"), X.index("a"))


def test_antidiscrete_pair():
    X = parse_space("{a<->b}")
    assert X.leq(0, 1) and X.leq(1, 0)


def test_two_components():
    X = parse_space("{u->a,b<-v}")
    assert X.n == 4
    assert {(X.name(x), X.name(y)) for x, y in X.strict_pairs()} == {("u", "a"), ("v", "b")}


def test_glue_chain_is_one_point():
    X = parse_space("{a<->b=c=d}")
    assert X.n == 2
    assert X.labels[X.index("c")] == frozenset("bcd")


def test_transitive_closure_of_listed_arrows():
    X = parse_space("{a->b->c}")
    assert X.leq(X.index("a"), X.index("c"))


def test_whitespace_is_ignored():
    assert parse_space(" { a -> b , c } ") == parse_space("{a->b,c}")


@pytest.mark.parametrize("text,points,strict", [("{a,b}", 2, 0), ("{a->b}", 2, 1), ("{a<->b}", 2, 2), ("{a=b}", 1, 0)])
def test_four_space_chain(text, points, strict):
    X = parse_space(text)
    assert (X.n, strict_count(X)) == (points, strict)


def test_empty_space():
    assert parse_space("{}").n == 0
    assert render_space(FinSpace.empty()) == "{}"


# ------------------------------------------------------------- maps


def test_gluing_map():
    f = parse_map("{u->a,b<-v}-->{u->a=b<-v}")
    assert (f.dom.n, f.cod.n) == (4, 3)
    assert f.assign[f.dom.index("a")] == f.assign[f.dom.index("b")]


def test_point_into_open_point():
    f = parse_map("{o}-->{o->c}")
    assert f.cod.name(f.assign[0]) == "o"


def test_antidiscrete_collapse():
    f = parse_map("{a<->b}-->{a=b}")
    assert f.cod.n == 1 and f.assign == (0, 0)


def test_map_to_single_label_point():
    f = parse_map("{o->c}-->{o}")
    assert f.cod.n == 1 and f.assign == (0, 0)


@pytest.mark.parametrize("text", SHORTHAND)
def test_shorthand_is_rejected(text):
    with pytest.raises(ParseError, match="does not occur"):
        parse_map(text)


def test_unmatched_label():
    with pytest.raises(ParseError) as e:
        parse_map("{a,x}-->{a->b}")
    assert e.value.offset == 3


def test_labels_landing_apart():
    with pytest.raises(ParseError, match="different codomain points"):
        parse_map("{a=b}-->{a,b}")


def test_non_monotone_map_reports_pair():
    with pytest.raises(ParseError) as e:
        parse_map("{a->b}-->{a<-b}")
    assert e.value.offset == 6 and "a->b" in e.value.message


def test_parse_dispatches_on_arrow():
    assert isinstance(parse("{a}"), FinSpace)
    assert isinstance(parse("{a}-->{a}"), FinMap)


# ------------------------------------------------------------- errors


@pytest.mark.parametrize(
    "text,offset",
    [
        ("{a->", 3),
        ("{a->b", 4),
        ("a->b}", 0),
        ("{a->->b}", 4),
        ("{1}", 1),
        ("{a-b}", 2),
        ("", 0),
        ("{a} x", 4),
        ("{a->b,a=b}", 2),
        ("{a=b,a->b}", 6),
    ],
)
def test_error_offsets(text, offset):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.offset == offset
    assert isinstance(e.value, InputError)


@settings(max_examples=400, deadline=None)
@given(st.text(alphabet="{}-><=,abco' _^lr<5é", max_size=24))
def test_parse_errors_are_total(text):
    for fn in (parse, parse_class_expr):
        try:
            fn(text)
        except ParseError as e:
            assert 0 <= e.offset <= max(len(text.encode("utf-8")) - 1, 0)


# ------------------------------------------------------------- class expressions


def test_class_with_size_bound():
    ce = parse_class_expr("{ {o}-->{o->c} }^r_{<5}^lr")
    assert [(s.op, s.limit) for s in ce.steps] == [("r", 5), ("l", None), ("r", None)]
    assert len(ce.generators) == 1 and ce.ops == "rlr"


def test_class_with_two_generators():
    ce = parse_class_expr("{ {a<->b}-->{a=b}, {o->c}-->{o=c} }^lr")
    assert len(ce.generators) == 2 and ce.ops == "lr"


@pytest.mark.parametrize("text", ["{ {a}-->{a} }^x", "{ {a}-->{a} ", "{ {a}-->{a} }", "{ {a}-->{a} }^_{<3}"])
def test_bad_class_expressions(text):
    with pytest.raises(ParseError):
        parse_class_expr(text)


@pytest.mark.parametrize("text", CLASSES)
def test_class_render_round_trip(text):
    ce = parse_class_expr(text)
    again = parse_class_expr(render_class_expr(ce))
    assert again.steps == ce.steps
    assert [map_canonical_form(g) for g in again.generators] == [map_canonical_form(g) for g in ce.generators]


# ------------------------------------------------------------- rendering


@pytest.mark.parametrize("text", SPACES + MAPS)
def test_corpus_round_trip(text):
    obj = parse(text)
    again = parse(render(obj))
    key = map_canonical_form if isinstance(obj, FinMap) else canonical_form
    assert key(again) == key(obj)


def test_render_sierpinski():
    assert render_space(parse_space("{o->c}")) == "{o->c}"


def test_render_product_relabels():
    P, _, _ = product(parse_space("{v->w}"), parse_space("{x->y}"))
    text = render_space(P)
    assert canonical_form(parse_space(text)) == canonical_form(P)


def test_round_trip_all_spaces_up_to_four_points():
    for n in range(5):
        for up in labeled_topologies(n):
            X = FinSpace([frozenset((f"p{i}",)) for i in range(n)], up)
            assert canonical_form(parse_space(render_space(X))) == canonical_form(X)


def test_round_trip_all_maps_up_to_three_points():
    spaces = enumerate_spaces(3)
    for X in spaces:
        for Y in spaces:
            for f in enumerate_maps(X, Y):
                assert map_canonical_form(parse_map(render_map(f))) == map_canonical_form(f)


def test_render_keeps_consistent_labels():
    f = parse_map("{u->a,b<-v}-->{u->a=b<-v}")
    g = parse_map(render_map(f))

    def named(m):
        return {m.dom.name(x): m.cod.name(v) for x, v in enumerate(m.assign)}

    assert named(g) == named(f)
