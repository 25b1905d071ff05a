"""Census of finite spaces and maps, finite orthogonals, and the verification harness."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional, Sequence

from . import classify
from .errors import InputError
from .lifting import LiftVerdict, check_against_class, monotone_assignments
from .notation import ClassExpr, parse_class_expr, parse_map, render_map, render_space
from .preorder import (
    CanonicalKey,
    FinMap,
    FinSpace,
    _canon,
    automorphisms,
    bits_of,
    canonical_form,
    map_canonical_form,
    pullback,
    space_from_key,
)

log = logging.getLogger(__name__)

MAX_SPACE_BOUND = 7
MAX_ORTHOGONAL_BOUND = 6

SUPERSET_CAVEAT = (
    "intermediate classes are restricted to the census, so every step after the "
    "first may yield a superset of the true class restricted to the bound"
)

# ---------------------------------------------------------------- spaces


def _extensions(up: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Every way to add one last point to the preorder ``up``."""
    n = len(up)
    full = (1 << n) - 1
    down = [0] * n
    for x in range(n):
        for y in bits_of(up[x]):
            down[y] |= 1 << x

    def closure(m):
        acc = 0
        for x in bits_of(m):
            acc |= up[x]
        return acc

    closed = [m for m in range(1 << n) if closure(m) == m]
    opens = [full & ~m for m in closed]
    new = 1 << n
    for d in closed:  # points in the closure of the new point
        for u in opens:  # points whose closure contains the new point
            if all(up[x] & d == d for x in bits_of(u)):
                yield tuple(up[x] | (new if (u >> x) & 1 else 0) for x in range(n)) + (d | new,)


def labeled_topologies(n: int) -> Iterator[tuple[int, ...]]:
    """All preorders on ``range(n)`` as closure bitmasks, built one point at a time."""
    if n < 0:
        raise InputError("point count must be non-negative")
    if n == 0:
        yield ()
        return
    for smaller in labeled_topologies(n - 1):
        yield from _extensions(smaller)


@lru_cache(maxsize=None)
def _spaces_of_size(k: int) -> tuple[CanonicalKey, ...]:
    if k == 0:
        return (canonical_form(FinSpace.empty()),)
    keys = set()
    for key in _spaces_of_size(k - 1):
        for up in _extensions(space_from_key(key).up):
            keys.add(_canon(up)[0])
    return tuple(sorted(keys))


def _check_space_bound(n: int, limit: int = MAX_SPACE_BOUND) -> None:
    if not isinstance(n, int) or n < 0:
        raise InputError(f"bound must be a non-negative integer, not {n!r}")
    if n > limit:
        raise InputError(f"bound {n} exceeds the supported maximum {limit}")


def enumerate_spaces(n: int) -> list[FinSpace]:
    """One representative per homeomorphism class with at most ``n`` points, ordered by key."""
    _check_space_bound(n)
    keys = sorted(k for size in range(n + 1) for k in _spaces_of_size(size))
    return [space_from_key(k) for k in keys]


def spaces_of_size(k: int) -> list[FinSpace]:
    _check_space_bound(k)
    return [space_from_key(key) for key in _spaces_of_size(k)]


# ------------------------------------------------------------------ maps


def enumerate_maps(X: FinSpace, Y: FinSpace) -> list[FinMap]:
    """All monotone maps ``X -> Y`` in lexicographic order."""
    return [FinMap(X, Y, a, check=False) for a in monotone_assignments(X, Y)]


def map_representatives(X: FinSpace, Y: FinSpace) -> list[FinMap]:
    """Maps ``X -> Y`` up to automorphisms on both sides, each the least of its orbit."""
    auts_x = automorphisms(X)
    auts_y = automorphisms(Y)
    if len(auts_x) * len(auts_y) == 1:
        return enumerate_maps(X, Y)
    seen: set[tuple[int, ...]] = set()
    reps = []
    n = X.n
    for a in monotone_assignments(X, Y):
        if a in seen:
            continue
        reps.append(FinMap(X, Y, a, check=False))
        for alpha in auts_x:
            moved = [a[alpha[i]] for i in range(n)]
            for beta in auts_y:
                seen.add(tuple(beta[v] for v in moved))
    return reps


@lru_cache(maxsize=None)
def _census_maps(bound: int) -> tuple[FinMap, ...]:
    spaces = enumerate_spaces(bound)
    out = []
    for X in spaces:
        for Y in spaces:
            out.extend(map_representatives(X, Y))
    return tuple(out)


def census_maps(bound: int) -> list[FinMap]:
    """Isomorphism classes of maps between spaces with at most ``bound`` points."""
    _check_space_bound(bound, MAX_ORTHOGONAL_BOUND)
    return list(_census_maps(bound))


@dataclass
class Census:
    bound: int
    spaces: list[FinSpace]
    morphisms: list[FinMap]


def census(bound: int, with_maps: bool = True) -> Census:
    spaces = enumerate_spaces(bound)
    return Census(bound, spaces, census_maps(bound) if with_maps else [])


# ----------------------------------------------------------- orthogonals


def finite_orthogonal(gens: Sequence[FinMap], side: str, bound: int) -> list[FinMap]:
    """Census maps (both spaces with at most ``bound`` points) orthogonal to every generator.

    ``side="left"`` keeps ``m`` with ``m ⧄ g``; ``side="right"`` keeps ``m`` with ``g ⧄ m``.
    """
    _check_space_bound(bound, MAX_ORTHOGONAL_BOUND)
    return [m for m in _census_maps(bound) if check_against_class(m, gens, side).holds]


@dataclass
class ClassResult:
    expr: str
    members: list[FinMap]
    bounds: list[int]  # per step, in order of application
    caveat: Optional[str] = None


def step_bounds(expr: ClassExpr, bound: int, inner_bound: Optional[int] = None) -> list[int]:
    """Point bound used by each step: its own ``_{<k}`` if given, else ``inner_bound``
    for intermediate steps and ``bound`` for the last one."""
    out = []
    last = len(expr.steps) - 1
    for j, step in enumerate(expr.steps):
        if step.limit is not None:
            out.append(step.limit - 1)
        elif j < last and inner_bound is not None:
            out.append(inner_bound)
        else:
            out.append(bound)
    for b in out:
        _check_space_bound(b, MAX_ORTHOGONAL_BOUND)
    return out


@lru_cache(maxsize=None)
def _parsed(text: str) -> ClassExpr:
    return parse_class_expr(text)


@lru_cache(maxsize=None)
def _evaluate_steps(expr: ClassExpr, bounds: tuple[int, ...]) -> tuple[FinMap, ...]:
    current: Sequence[FinMap] = expr.generators
    for step, b in zip(expr.steps, bounds):
        log.debug("orthogonal step %s at bound %d over %d maps", step.op, b, len(current))
        current = finite_orthogonal(current, step.op, b)
    return tuple(current)


def evaluate_class(text: str, bound: int, inner_bound: Optional[int] = None) -> ClassResult:
    expr = _parsed(text)
    bounds = step_bounds(expr, bound, inner_bound)
    members = list(_evaluate_steps(expr, tuple(bounds)))
    caveat = SUPERSET_CAVEAT if len(expr.steps) > 1 else None
    return ClassResult(text, members, bounds, caveat)


def class_membership(m: FinMap, text: str, inner_bound: Optional[int] = None) -> LiftVerdict:
    """Whether ``m`` belongs to the class; all but the last step are computed on the census
    at ``inner_bound`` points (default 2) unless the step carries its own size bound."""
    expr = _parsed(text)
    if len(expr.steps) == 1:
        against: Sequence[FinMap] = expr.generators
    else:
        default = inner_bound if inner_bound is not None else 2
        prefix = ClassExpr(expr.generators, expr.steps[:-1])
        against = _evaluate_steps(prefix, tuple(step_bounds(prefix, default)))
    return check_against_class(m, against, expr.steps[-1].op)


# ------------------------------------------------------------ basechange


def basechange_presentation(f: FinMap) -> Optional[FinMap]:
    """A map ``cod(f) -> {o->c}`` along which ``{c}-->{o->c}`` pulls back to ``f``, if any."""
    point = parse_map("{c}-->{o->c}")
    sierpinski = point.cod
    for g in enumerate_maps(f.cod, sierpinski):
        P, _, proj = pullback(point, g)
        if _isomorphic_over(f, proj):
            return g
    return None


def _isomorphic_over(f: FinMap, g: FinMap) -> bool:
    """An isomorphism ``dom f -> dom g`` commuting with the maps to the common codomain."""
    if f.dom.n != g.dom.n:
        return False
    X, P = f.dom, g.dom
    allowed = [sum(1 << q for q in range(P.n) if g.assign[q] == f.assign[x]) for x in range(X.n)]
    for a in monotone_assignments(X, P, allowed):
        if len(set(a)) != X.n:
            continue
        inverse = [0] * P.n
        for x, q in enumerate(a):
            inverse[q] = x
        if all(X.leq(inverse[q], inverse[r]) for q in range(P.n) for r in bits_of(P.up[q])):
            return True
    return False


# ------------------------------------------------------------ subjects


def _subjects(subject: str, obj) -> list[FinMap]:
    if subject == "map":
        return [obj]
    if subject == "empty_to":
        return [FinMap.from_empty(obj)]
    if subject == "to_point":
        return [FinMap.to_point(obj)]
    if subject == "points":
        pt = FinSpace.point("x")
        return [FinMap(pt, obj, (x,), check=False) for x in range(obj.n)]
    if subject == "injective_pairs":
        pair = FinSpace.discrete(["x", "y"])
        return [
            FinMap(pair, obj, (x, y), check=False)
            for x in range(obj.n)
            for y in range(obj.n)
            if x < y
        ]
    raise InputError(f"unknown subject kind {subject!r}")


@dataclass
class FormVerdict:
    holds: bool
    counterexample: Optional[object] = None  # Square
    subject: Optional[FinMap] = None


def evaluate_form(form: classify.LiftingForm, obj) -> FormVerdict:
    if form.subject == "basechange":
        return FormVerdict(basechange_presentation(obj) is not None)
    for s in _subjects(form.subject, obj):
        v = class_membership(s, form.expr, form.inner_bound)
        if not v.holds:
            return FormVerdict(False, v.counterexample, s)
    return FormVerdict(True)


def lifting_verdict(name: str, obj) -> bool:
    """Verdict of the first (or, for composites, each component's first) registered form."""
    ch = classify.lifting_characterization(name)
    if ch.is_composite:
        return all(lifting_verdict(part, obj) for part in ch.composite_of)
    return evaluate_form(ch.forms[0], obj).holds


# ---------------------------------------------------------- verification


def object_key(obj) -> str:
    return str(map_canonical_form(obj) if isinstance(obj, FinMap) else canonical_form(obj))


def object_expr(obj) -> str:
    return render_map(obj) if isinstance(obj, FinMap) else render_space(obj)


@dataclass
class Mismatch:
    form: str
    expr: str
    key: str
    direct: bool
    lifting: bool
    counterexample: Optional[dict] = None

    def as_dict(self) -> dict:
        return {
            "form": self.form,
            "expr": self.expr,
            "key": self.key,
            "direct": self.direct,
            "lifting": self.lifting,
            "counterexample": self.counterexample,
        }


@dataclass
class VerificationReport:
    predicate: str
    kind: str
    bound: int
    instances_checked: int
    forms: list[str]
    mismatches: list[Mismatch] = field(default_factory=list)
    descriptive: list[Mismatch] = field(default_factory=list)
    extension: list[str] = field(default_factory=list)
    extension_label: str = ""
    direct_true: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {
            "predicate": self.predicate,
            "kind": self.kind,
            "bound": self.bound,
            "instances_checked": self.instances_checked,
            "direct_true": self.direct_true,
            "forms": self.forms,
            "ok": self.ok,
            "mismatches": [m.as_dict() for m in self.mismatches],
            "descriptive_mismatches": [m.as_dict() for m in self.descriptive],
            "extension": {"label": self.extension_label, "members": self.extension} if self.extension_label else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


def square_record(sq) -> Optional[dict]:
    if sq is None:
        return None
    return {
        "i": render_map(sq.i),
        "p": render_map(sq.p),
        "f": {sq.f.dom.name(a): sq.f.cod.name(v) for a, v in enumerate(sq.f.assign)},
        "g": {sq.g.dom.name(b): sq.g.cod.name(v) for b, v in enumerate(sq.g.assign)},
    }


def verify_correspondence(name: str, bound: int) -> VerificationReport:
    """Compare the direct predicate with every registered lifting form over the census."""
    ch = classify.lifting_characterization(name)
    if ch.kind == "map":
        _check_space_bound(bound, MAX_ORTHOGONAL_BOUND)
        objs: Sequence = _census_maps(bound)
    else:
        objs = enumerate_spaces(bound)
    if ch.is_composite:
        form_names = [f"composite: {' and '.join(ch.composite_of)}"]
    else:
        form_names = [f"{f.name}: {f.render()}" for f in ch.forms]
    report = VerificationReport(name, ch.kind, bound, len(objs), form_names)
    if name == "final_topology":
        report.extension_label = "lifting holds but the map is not a quotient (not surjective)"
    for obj in objs:
        direct = ch.direct(obj)
        report.direct_true += direct
        if ch.is_composite:
            lift = all(lifting_verdict(part, obj) for part in ch.composite_of)
            if lift != direct:
                report.mismatches.append(Mismatch(form_names[0], object_expr(obj), object_key(obj), direct, lift))
            continue
        for form, label in zip(ch.forms, form_names):
            v = evaluate_form(form, obj)
            if v.holds != direct:
                m = Mismatch(label, object_expr(obj), object_key(obj), direct, v.holds, square_record(v.counterexample))
                (report.mismatches if form.gating else report.descriptive).append(m)
            if report.extension_label and form is ch.forms[0] and v.holds and not classify.is_quotient(obj):
                report.extension.append(object_expr(obj))
    return report


def default_bound(name: str) -> int:
    return 3 if classify.predicate_kind(name) == "map" else 4


def verify_all(bound: Optional[int] = None) -> list[VerificationReport]:
    return [verify_correspondence(name, bound if bound is not None else default_bound(name))
            for name in classify.registry()]


# ------------------------------------------------- described classes


def _has_section(f: FinMap) -> bool:
    ident = tuple(range(f.cod.n))
    return any(tuple(f.assign[v] for v in s) == ident for s in monotone_assignments(f.cod, f.dom))


def _adds_discrete_summand(f: FinMap) -> bool:
    """``A -> A + D`` with ``D`` discrete: an induced injection onto a clopen set with discrete complement."""
    if not (classify.is_injective(f) and classify.has_induced_topology(f)):
        return False
    Y, img = f.cod, f.image_mask()
    rest = Y.full & ~img
    if not (Y.is_open_mask(img) and Y.is_closed_mask(img)):
        return False
    return all(Y.up[y] & rest == 1 << y and Y.down[y] & rest == 1 << y for y in bits_of(rest))


@dataclass(frozen=True)
class DescribedClass:
    expr: str
    description: str
    predicate: Callable[[FinMap], bool]


DESCRIBED_CLASSES = (
    DescribedClass("{ {}-->{o} }^r", "surjections", classify.is_surjective),
    DescribedClass("{ {}-->{o} }^l", "maps with nonempty domain or empty codomain",
                   lambda f: f.dom.n > 0 or f.cod.n == 0),
    DescribedClass("{ {}-->{o} }^rr", "injections with induced topology",
                   lambda f: classify.is_injective(f) and classify.has_induced_topology(f)),
    DescribedClass("{ {}-->{o} }^lr", "maps out of the empty space", lambda f: f.dom.n == 0),
    DescribedClass("{ {}-->{o} }^lrr", "maps admitting a section", _has_section),
    DescribedClass("{ {}-->{o} }^rl", "inclusions A --> A + D with D discrete", _adds_discrete_summand),
    DescribedClass("{ {}-->{o} }^rrl", "surjections", classify.is_surjective),
    DescribedClass("{ {c}-->{o->c} }^l", "maps with dense image", classify.has_dense_image),
    DescribedClass("{ {c}-->{o->c} }^lr", "closed inclusions", classify.is_closed_inclusion),
    DescribedClass("{ {z<->x<->y->c}-->{z=x<->y=c} }^l", "closed inclusions", classify.is_closed_inclusion),
    DescribedClass("{ {z<->x<->y<-c}-->{z=x<->y=c} }^l", "open inclusions", classify.is_open_inclusion),
    DescribedClass("{ {x<->y->c}-->{x<->y=c} }^l", "closed maps with induced topology", classify.is_closed_induced),
    DescribedClass("{ {x<->y<-c}-->{x<->y=c} }^l", "open maps with induced topology", classify.is_open_induced),
    DescribedClass("{ {x,y}-->{x=y} }^r", "injections", classify.is_injective),
    DescribedClass("{ {a<->b}-->{a=b} }^l", "injections", classify.is_injective),
    DescribedClass("{ {a->b}-->{a=b} }^l", "injections", classify.is_injective),
)


@dataclass
class ClassComparison:
    expr: str
    description: str
    bound: int
    members: int
    extra: list[str]  # in the computed class but not described
    missing: list[str]  # described but not in the computed class
    caveat: Optional[str] = None

    @property
    def exact(self) -> bool:
        return not self.extra and not self.missing

    def as_dict(self) -> dict:
        return {
            "expr": self.expr,
            "description": self.description,
            "bound": self.bound,
            "members": self.members,
            "exact": self.exact,
            "extra": self.extra,
            "missing": self.missing,
            "caveat": self.caveat,
        }


def compare_class(described: DescribedClass, bound: int, inner_bound: int = 2) -> ClassComparison:
    """Census members of ``described.expr`` against its plain description (descriptive only)."""
    res = evaluate_class(described.expr, bound, inner_bound)
    inside = {map_canonical_form(m) for m in res.members}
    extra, missing = [], []
    for m in _census_maps(bound):
        isin, says = map_canonical_form(m) in inside, described.predicate(m)
        if isin and not says:
            extra.append(render_map(m))
        elif says and not isin:
            missing.append(render_map(m))
    return ClassComparison(described.expr, described.description, bound, len(res.members), extra, missing, res.caveat)


def described_class_report(bound: int = 2, inner_bound: int = 2) -> list[ClassComparison]:
    return [compare_class(d, bound, inner_bound) for d in DESCRIBED_CLASSES]


# ------------------------------------------------------- finite shadows


def surjective_closed_not_final(bound: int) -> list[FinMap]:
    """Census maps that are surjective and closed but whose codomain topology is not final."""
    return [
        f
        for f in _census_maps(bound)
        if classify.is_surjective(f) and classify.is_closed_map(f) and not classify.has_final_topology(f)
    ]


def census_records(bound: int, with_maps: bool = False) -> Iterator[dict]:
    """Line records ``{kind, key, expr, ...}`` for the census, in key order."""
    for X in enumerate_spaces(bound):
        yield {
            "kind": "space",
            "key": str(canonical_form(X)),
            "expr": render_space(X),
            "points": X.n,
            "predicates": sorted(classify.classify_space(X)),
        }
    if with_maps:
        for f in census_maps(bound):
            yield {
                "kind": "map",
                "key": str(map_canonical_form(f)),
                "expr": render_map(f),
                "predicates": sorted(classify.classify_map(f)),
            }
