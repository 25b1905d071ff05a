"""Definitional topological predicates and their lifting-property reformulations.

The direct predicates are computed straight from the definitions (images and
preimages of open or closed sets, separation by open sets, and so on), so they
can serve as an oracle for the lifting forms registered below.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .errors import InputError
from .preorder import FinMap, FinSpace, bits_of, product

# ------------------------------------------------------------ map predicates


def is_surjective(f: FinMap) -> bool:
    return f.image_mask() == f.cod.full


def is_injective(f: FinMap) -> bool:
    return len(set(f.assign)) == len(f.assign)


def is_closed_map(f: FinMap) -> bool:
    """Images of closed sets are closed."""
    return all(f.cod.is_closed_mask(f.image_mask(c)) for c in f.dom.closed_masks())


def is_open_map(f: FinMap) -> bool:
    return all(f.cod.is_open_mask(f.image_mask(u)) for u in f.dom.open_masks())


def has_induced_topology(f: FinMap) -> bool:
    """``x <= y`` exactly when ``f(x) <= f(y)``."""
    X, Y = f.dom, f.cod
    return all(
        X.leq(x, y) == Y.leq(f.assign[x], f.assign[y]) for x in range(X.n) for y in range(X.n)
    )


def has_induced_topology_by_opens(f: FinMap) -> bool:
    """Every open set of the domain is the preimage of an open set of the codomain."""
    preimages = {f.preimage_mask(w) for w in f.cod.open_masks()}
    return all(u in preimages for u in f.dom.open_masks())


def has_final_topology(f: FinMap) -> bool:
    """A subset of the codomain is open iff its preimage is open."""
    X, Y = f.dom, f.cod
    return all(Y.is_open_mask(w) == X.is_open_mask(f.preimage_mask(w)) for w in range(1 << Y.n))


def is_quotient(f: FinMap) -> bool:
    return is_surjective(f) and has_final_topology(f)


def has_dense_image(f: FinMap) -> bool:
    return f.cod.closure_mask(f.image_mask()) == f.cod.full


def is_fibrewise_t1(f: FinMap) -> bool:
    """No point of a fibre lies in the closure of another point of the same fibre."""
    X = f.dom
    return not any(f.assign[x] == f.assign[y] for x, y in X.strict_pairs())


def product_map(f: FinMap, g: FinMap) -> FinMap:
    P, _, _ = product(f.dom, g.dom)
    Q, _, _ = product(f.cod, g.cod)
    m = g.dom.n
    k = g.cod.n
    assign = [f.assign[x] * k + g.assign[z] for x in range(f.dom.n) for z in range(m)]
    return FinMap(P, Q, assign, check=False)


def _proper_test_spaces() -> list[FinSpace]:
    return [
        FinSpace.point("z"),
        FinSpace.discrete(["z", "w"]),
        FinSpace.from_pairs(["z", "w"], [(0, 1)]),
        FinSpace.antidiscrete(["z", "w"]),
    ]


def is_proper_finite(f: FinMap) -> bool:
    """Universally closed, tested against ``f × id_Z`` for every space ``Z`` with at most two points."""
    return all(
        is_closed_map(product_map(f, FinMap.identity(Z))) for Z in _proper_test_spaces()
    )


def is_closed_inclusion(f: FinMap) -> bool:
    return is_injective(f) and has_induced_topology(f) and f.cod.is_closed_mask(f.image_mask())


def is_open_inclusion(f: FinMap) -> bool:
    return is_injective(f) and has_induced_topology(f) and f.cod.is_open_mask(f.image_mask())


def is_open_induced(f: FinMap) -> bool:
    return is_open_map(f) and has_induced_topology(f)


def is_closed_induced(f: FinMap) -> bool:
    return is_closed_map(f) and has_induced_topology(f)


MAP_PREDICATES: dict[str, Callable[[FinMap], bool]] = {
    "surjective": is_surjective,
    "injective": is_injective,
    "closed": is_closed_map,
    "open": is_open_map,
    "induced_topology": has_induced_topology,
    "final_topology": has_final_topology,
    "quotient": is_quotient,
    "dense_image": has_dense_image,
    "fibrewise_T1": is_fibrewise_t1,
    "proper_finite": is_proper_finite,
    "closed_inclusion": is_closed_inclusion,
    "open_inclusion": is_open_inclusion,
    "open_induced": is_open_induced,
    "closed_induced": is_closed_induced,
}

# ---------------------------------------------------------- space predicates


def is_extremally_disconnected(X: FinSpace) -> bool:
    """The closure of every open set is open."""
    return all(X.is_open_mask(X.closure_mask(u)) for u in X.open_masks())


def is_t0(X: FinSpace) -> bool:
    return all(not X.leq(y, x) for x, y in X.strict_pairs())


def is_t1(X: FinSpace) -> bool:
    return not X.strict_pairs()


def _separated(opens: list[int], a: int, b: int) -> bool:
    """Disjoint open sets around ``a`` and ``b`` (both bitmasks) exist."""
    around_a = [u for u in opens if u & a == a]
    around_b = [v for v in opens if v & b == b]
    return any(u & v == 0 for u in around_a for v in around_b)


def is_hausdorff(X: FinSpace) -> bool:
    opens = X.open_masks()
    return all(_separated(opens, 1 << x, 1 << y) for x in range(X.n) for y in range(x + 1, X.n))


def is_regular(X: FinSpace) -> bool:
    """A point and a closed set missing it have disjoint open neighbourhoods."""
    opens = X.open_masks()
    for c in X.closed_masks():
        for x in range(X.n):
            if not (c >> x) & 1 and not _separated(opens, 1 << x, c):
                return False
    return True


def is_normal(X: FinSpace) -> bool:
    """Disjoint closed sets have disjoint open neighbourhoods."""
    opens = X.open_masks()
    closed = X.closed_masks()
    for i, a in enumerate(closed):
        for b in closed[i:]:
            if a & b == 0 and not _separated(opens, a, b):
                return False
    return True


def components(X: FinSpace) -> list[int]:
    """Connected components as bitmasks, in order of their least point."""
    seen = 0
    out = []
    for x in range(X.n):
        if (seen >> x) & 1:
            continue
        comp = 1 << x
        frontier = comp
        while frontier:
            nxt = 0
            for y in bits_of(frontier):
                nxt |= X.up[y] | X.down[y]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        out.append(comp)
    return out


def is_connected(X: FinSpace) -> bool:
    return len(components(X)) <= 1


def is_discrete(X: FinSpace) -> bool:
    return len(X.open_masks()) == 1 << X.n


def is_antidiscrete(X: FinSpace) -> bool:
    return all(u in (0, X.full) for u in X.open_masks())


def is_empty(X: FinSpace) -> bool:
    return X.n == 0


def is_nonempty(X: FinSpace) -> bool:
    return X.n > 0


SPACE_PREDICATES: dict[str, Callable[[FinSpace], bool]] = {
    "extremally_disconnected": is_extremally_disconnected,
    "T0": is_t0,
    "T1": is_t1,
    "hausdorff": is_hausdorff,
    "regular_T3": is_regular,
    "normal_T4": is_normal,
    "connected": is_connected,
    "discrete": is_discrete,
    "antidiscrete": is_antidiscrete,
    "empty": is_empty,
    "nonempty": is_nonempty,
}


def map_predicates(f: FinMap) -> dict[str, bool]:
    return {name: pred(f) for name, pred in MAP_PREDICATES.items()}


def space_predicates(X: FinSpace) -> dict[str, bool]:
    return {name: pred(X) for name, pred in SPACE_PREDICATES.items()}


def classify_map(f: FinMap) -> frozenset[str]:
    return frozenset(name for name, v in map_predicates(f).items() if v)


def classify_space(X: FinSpace) -> frozenset[str]:
    return frozenset(name for name, v in space_predicates(X).items() if v)


# ------------------------------------------------------------------ registry

SUBJECTS = ("map", "empty_to", "to_point", "points", "injective_pairs", "basechange")


@dataclass(frozen=True)
class LiftingForm:
    """One lifting-property formulation of a predicate.

    ``subject`` says which maps are tested: the map itself, ``{} --> X``,
    ``X --> {o}``, every ``{o} --> X``, every injective ``{x,y} --> X``, or a
    search for a basechange presentation (no class expression).  The object
    satisfies the form when every subject map belongs to ``expr``.
    ``inner_bound`` caps the point count of the census used for intermediate
    orthogonals of iterated expressions.  Non-gating forms are reported but
    never count as failures.
    """

    name: str
    subject: str
    expr: Optional[str] = None
    inner_bound: Optional[int] = None
    gating: bool = True
    note: str = ""

    def render(self) -> str:
        from .notation import parse_class_expr

        if self.subject == "basechange":
            return "f is the basechange of {c}-->{o->c} along some map cod(f)-->{o->c}"
        subj = {
            "map": "f",
            "empty_to": "{}-->X",
            "to_point": "X-->{o}",
            "points": "{x}-->X",
            "injective_pairs": "{a,b}-->X",
        }[self.subject]
        ce = parse_class_expr(self.expr)
        if len(ce.steps) == 1 and len(ce.generators) == 1:
            g = _generator_text(self.expr)
            text = f"{subj} /_ {g}" if ce.ops == "l" else f"{g} /_ {subj}"
        else:
            text = f"{subj} in {self.expr}"
        if self.subject == "points":
            text += " for every point x"
        elif self.subject == "injective_pairs":
            text += " for every injection"
        return text


def _generator_text(expr: str) -> str:
    """Source text of the generator list of a class expression."""
    close = expr.rindex("}", 0, expr.index("^"))
    return expr[expr.index("{") + 1 : close].strip()


@dataclass(frozen=True)
class Characterization:
    name: str
    kind: str  # "map" or "space"
    forms: tuple[LiftingForm, ...] = ()
    composite_of: tuple[str, ...] = ()
    note: str = ""

    @property
    def is_composite(self) -> bool:
        return bool(self.composite_of)

    def direct(self, obj) -> bool:
        table = MAP_PREDICATES if self.kind == "map" else SPACE_PREDICATES
        return table[self.name](obj)


def _m(name, expr, **kw):
    return LiftingForm(name, "map", expr, **kw)


_REGISTRY: dict[str, Characterization] = {}


def _register(ch: Characterization) -> None:
    _REGISTRY[ch.name] = ch


_register(Characterization("surjective", "map", (
    _m("preimage-of-point", "{ {}-->{o} }^r"),
    _m("against-antidiscrete-pair", "{ {a}-->{a<->b} }^l"),
)))
_register(Characterization("fibrewise_T1", "map", (
    _m("sierpinski-collapse-lifts", "{ {o->c}-->{o=c} }^r"),
)))
_register(Characterization("final_topology", "map", (
    _m("against-sierpinski-to-antidiscrete", "{ {o->c}-->{o<->c} }^l",
       note="does not force surjectivity; quotient = surjective and final"),
)))
_register(Characterization("injective", "map", (
    _m("against-antidiscrete-collapse", "{ {a<->b}-->{a=b} }^l"),
)))
_register(Characterization("induced_topology", "map", (
    _m("against-sierpinski-collapse", "{ {o->c}-->{o=c} }^l"),
)))
_register(Characterization("dense_image", "map", (
    _m("against-closed-point", "{ {c}-->{o->c} }^l"),
)))
_register(Characterization("open_induced", "map", (
    _m("against-open-glue", "{ {a<->b<-c}-->{a<->b=c} }^l"),
)))
_register(Characterization("closed_induced", "map", (
    _m("against-closed-glue", "{ {a<->b->c}-->{a<->b=c} }^l"),
)))
_register(Characterization("closed", "map", (
    _m("open-point-lifts", "{ {o}-->{o->c} }^r"),
)))
_register(Characterization("open", "map", (
    _m("closed-point-lifts", "{ {c}-->{o->c} }^r"),
)))
_register(Characterization("closed_inclusion", "map", (
    _m("against-closed-triple-glue", "{ {z<->x<->y->c}-->{z=x<->y=c} }^l"),
    LiftingForm("basechange-of-closed-point", "basechange"),
)))
_register(Characterization("open_inclusion", "map", (
    _m("against-open-triple-glue", "{ {z<->x<->y<-c}-->{z=x<->y=c} }^l"),
)))
_register(Characterization("quotient", "map", composite_of=("surjective", "final_topology")))
_register(Characterization("proper_finite", "map", composite_of=("closed",),
                           note="proper and closed agree for maps of finite spaces"))

_register(Characterization("extremally_disconnected", "space", (
    LiftingForm("against-glued-components", "empty_to", "{ {u->a,b<-v}-->{u->a=b<-v} }^l"),
)))
_register(Characterization("T0", "space", (
    LiftingForm("antidiscrete-collapse-lifts", "to_point", "{ {a<->b}-->{a=b} }^r"),
)))
_register(Characterization("T1", "space", (
    LiftingForm("sierpinski-collapse-lifts", "to_point", "{ {a->b}-->{a=b} }^r"),
)))
_register(Characterization("hausdorff", "space", (
    LiftingForm("injective-pair", "injective_pairs", "{ {u->x<-v}-->{u=x=v} }^l"),
)))
_register(Characterization("regular_T3", "space", (
    LiftingForm("pointed", "points", "{ {v->a<-w->b}-->{v=a=w->b} }^l"),
    LiftingForm("closed-neighbourhood", "points", "{ {o->a<-u->c}-->{o=a=u->c} }^l"),
)))
_register(Characterization("normal_T4", "space", (
    LiftingForm("five-point", "empty_to", "{ {a<-v->x<-w->b}-->{a<-v=x=w->b} }^l"),
    LiftingForm("seven-point", "empty_to", "{ {a<-v->v'<-x->w'<-w->b}-->{a<-v=v'=x=w'=w->b} }^l"),
)))
_register(Characterization("connected", "space", (
    LiftingForm("against-discrete-collapse", "to_point", "{ {a,b}-->{a=b} }^l"),
)))
_register(Characterization("discrete", "space", (
    LiftingForm("lifts-against-surjections", "empty_to", "{ {}-->{o} }^rl", inner_bound=2),
)))
_register(Characterization("antidiscrete", "space", (
    LiftingForm("discrete-pair-merges", "to_point", "{ {a,b}-->{a<->b} }^r"),
    LiftingForm("extends-along-injections", "to_point", "{ {a<->b}-->{a=b} }^lr", inner_bound=2,
                gating=False, note="fails at the empty space: {}-->{o} is injective with no lift into {}"),
    LiftingForm("discrete-collapse-rr", "to_point", "{ {a,b}-->{a=b} }^rr", inner_bound=2,
                gating=False, note="fails at the empty space, for the same reason"),
)))
_register(Characterization("nonempty", "space", (
    LiftingForm("against-empty-to-point", "to_point", "{ {}-->{o} }^l"),
)))
_register(Characterization("empty", "space", (
    LiftingForm("empty-inclusion-against-point", "empty_to", "{ {}-->{o} }^l"),
    LiftingForm("collapse-in-double-left", "to_point", "{ {}-->{o} }^ll", inner_bound=2,
                gating=False, note="fails at {} and {o}: identities lie in every orthogonal"),
)))


def registry() -> dict[str, Characterization]:
    return dict(_REGISTRY)


def lifting_characterization(name: str) -> Characterization:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise InputError(f"no predicate named {name!r}") from None


def predicate_kind(name: str) -> str:
    if name in MAP_PREDICATES:
        return "map"
    if name in SPACE_PREDICATES:
        return "space"
    raise InputError(f"no predicate named {name!r}")
