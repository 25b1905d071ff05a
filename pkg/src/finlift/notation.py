"""Arrow notation for finite spaces, maps and orthogonal class expressions.

Grammar (whitespace is ignored everywhere)::

    space := "{" [chain ("," chain)*] "}"
    chain := label (rel label)*
    rel   := "->" | "<-" | "<->" | "="
    label := [A-Za-z][A-Za-z0-9']*
    map   := space "-->" space
    class := "{" map ("," map)* "}" step+
    step  := "^" ("l" | "r")+ ["_" "{" "<" digits "}"]

``x->y`` puts ``y`` in the closure of ``x``; ``x<->y`` makes the two points
indistinguishable; ``x=y`` glues the labels into a single point.  In a map
every domain point goes to the codomain point carrying the same label, except
that a codomain written with a single unglued label receives every point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .errors import InputError, ParseError
from .preorder import FinMap, FinSpace, bits_of, first_monotonicity_violation

LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9']*")
_RELATIONS = ("<->", "->", "<-", "=")


def is_identifier(token: str) -> bool:
    return LABEL_RE.fullmatch(token) is not None


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def offset(self, pos: int) -> int:
        # premature end of input is reported at the last byte
        if self.text and pos >= len(self.text):
            pos = len(self.text) - 1
        return len(self.text[:pos].encode("utf-8"))

    def error(self, message: str, pos: Optional[int] = None) -> ParseError:
        if pos is None:
            self.skip()
            pos = self.pos
        return ParseError(message, self.offset(pos), self.text)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def accept(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def expect(self, s: str, what: Optional[str] = None) -> int:
        self.skip()
        start = self.pos
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos : self.pos + 3] or "end of input"
            raise self.error(f"expected {what or repr(s)}, found {found!r}")
        self.pos += len(s)
        return start

    def label(self) -> tuple[str, int]:
        self.skip()
        m = LABEL_RE.match(self.text, self.pos)
        if not m:
            found = self.text[self.pos : self.pos + 3] or "end of input"
            raise self.error(f"expected a label, found {found!r}")
        self.pos = m.end()
        return m.group(), m.start()

    def relation(self) -> Optional[tuple[str, int]]:
        self.skip()
        if self.text.startswith("-->", self.pos):
            return None
        for rel in _RELATIONS:
            if self.text.startswith(rel, self.pos):
                start = self.pos
                self.pos += len(rel)
                return rel, start
        return None


@dataclass
class _RawSpace:
    space: FinSpace
    first_seen: dict  # token -> character position of first occurrence


def _parse_space(sc: _Scanner) -> _RawSpace:
    sc.expect("{", "'{' opening a space")
    tokens: list[str] = []
    first_seen: dict[str, int] = {}
    parent: dict[str, str] = {}
    arrows: list[tuple[str, str, int]] = []

    def add(tok: str, pos: int) -> None:
        if tok not in parent:
            parent[tok] = tok
            tokens.append(tok)
            first_seen[tok] = pos

    def find(tok: str) -> str:
        while parent[tok] != tok:
            parent[tok] = parent[parent[tok]]
            tok = parent[tok]
        return tok

    if not sc.accept("}"):
        while True:
            left, lpos = sc.label()
            add(left, lpos)
            while True:
                rel = sc.relation()
                if rel is None:
                    break
                kind, rpos = rel
                right, pos = sc.label()
                add(right, pos)
                if kind == "=":
                    a, b = find(left), find(right)
                    if a != b:
                        parent[b] = a
                elif kind == "->":
                    arrows.append((left, right, rpos))
                elif kind == "<-":
                    arrows.append((right, left, rpos))
                else:
                    arrows.append((left, right, rpos))
                    arrows.append((right, left, rpos))
                left = right
            if sc.accept(","):
                continue
            sc.expect("}", "',' or '}'")
            break

    roots: list[str] = []
    for tok in tokens:
        r = find(tok)
        if r not in roots:
            roots.append(r)
    index = {r: i for i, r in enumerate(roots)}
    groups: list[list[str]] = [[] for _ in roots]
    for tok in tokens:
        groups[index[find(tok)]].append(tok)
    pairs = []
    for a, b, pos in arrows:
        ia, ib = index[find(a)], index[find(b)]
        if ia == ib:
            raise sc.error(f"relation between {a} and {b}, which are glued into one point", pos)
        pairs.append((ia, ib))
    return _RawSpace(FinSpace.from_pairs([frozenset(g) for g in groups], pairs), first_seen)


def _finish(sc: _Scanner) -> None:
    if not sc.at_end():
        raise sc.error(f"unexpected trailing text {sc.text[sc.pos:sc.pos + 5]!r}")


def _build_map(sc: _Scanner, dom: _RawSpace, cod: _RawSpace, arrow_pos: int) -> FinMap:
    X, Y = dom.space, cod.space
    # ``X-->{o}`` is the unique map to a point.  A glued one-point codomain such
    # as ``{a=b}`` is left to the label rule so that shorthand is still rejected.
    if Y.n == 1 and len(Y.labels[0]) == 1:
        return FinMap(X, Y, [0] * X.n, check=False)
    assign = []
    for x, lab in enumerate(X.labels):
        targets = set()
        for tok in sorted(lab, key=lambda t: dom.first_seen[t]):
            try:
                targets.add(Y.index(tok))
            except KeyError:
                raise sc.error(f"label {tok} does not occur in the codomain", dom.first_seen[tok]) from None
        if len(targets) > 1:
            raise sc.error(f"labels of point {X.name(x)} land on different codomain points", arrow_pos)
        assign.append(targets.pop())
    bad = first_monotonicity_violation(X, Y, assign)
    if bad is not None:
        a, b = bad
        raise sc.error(
            f"map is not monotone: {X.name(a)}->{X.name(b)} in the domain but "
            f"{Y.name(assign[a])} is not below {Y.name(assign[b])}",
            arrow_pos,
        )
    return FinMap(X, Y, assign, check=False)


def _parse_map(sc: _Scanner) -> FinMap:
    dom = _parse_space(sc)
    arrow = sc.expect("-->", "'-->'")
    cod = _parse_space(sc)
    return _build_map(sc, dom, cod, arrow)


def parse_space(text: str) -> FinSpace:
    sc = _Scanner(text)
    X = _parse_space(sc).space
    _finish(sc)
    return X


def parse_map(text: str) -> FinMap:
    sc = _Scanner(text)
    f = _parse_map(sc)
    _finish(sc)
    return f


def parse(text: str) -> FinSpace | FinMap:
    """A space or a map, whichever the text is."""
    sc = _Scanner(text)
    dom = _parse_space(sc)
    if sc.at_end():
        return dom.space
    arrow = sc.expect("-->", "'-->' or end of input")
    cod = _parse_space(sc)
    f = _build_map(sc, dom, cod, arrow)
    _finish(sc)
    return f


@dataclass(frozen=True)
class Step:
    op: str  # "l" or "r"
    limit: Optional[int] = None  # spaces have fewer than ``limit`` points


@dataclass(frozen=True)
class ClassExpr:
    generators: tuple[FinMap, ...]
    steps: tuple[Step, ...]

    @property
    def ops(self) -> str:
        return "".join(s.op for s in self.steps)

    def __str__(self) -> str:
        return render_class_expr(self)


def parse_class_expr(text: str) -> ClassExpr:
    sc = _Scanner(text)
    sc.expect("{", "'{' opening a class of maps")
    gens = [_parse_map(sc)]
    while sc.accept(","):
        gens.append(_parse_map(sc))
    sc.expect("}", "',' or '}' closing the class")
    steps: list[Step] = []
    while sc.accept("^"):
        sc.skip()
        start = sc.pos
        ops = []
        while sc.pos < len(sc.text) and sc.text[sc.pos].isalnum():
            ch = sc.text[sc.pos]
            if ch not in "lr":
                raise sc.error(f"unknown orthogonal operator {ch!r}")
            ops.append(ch)
            sc.pos += 1
        if not ops:
            raise sc.error("expected 'l' or 'r' after '^'", start)
        limit = None
        if sc.accept("_"):
            sc.expect("{", "'{' opening a size bound")
            sc.expect("<", "'<' in a size bound")
            sc.skip()
            m = re.compile(r"\d+").match(sc.text, sc.pos)
            if not m:
                raise sc.error("expected a point count in the size bound")
            sc.pos = m.end()
            limit = int(m.group())
            sc.expect("}", "'}' closing the size bound")
        steps.extend(Step(op) for op in ops[:-1])
        steps.append(Step(ops[-1], limit))
    if not steps:
        raise sc.error("expected '^l' or '^r' after the class of maps")
    _finish(sc)
    return ClassExpr(tuple(gens), tuple(steps))


# ---------------------------------------------------------------- rendering


def _names_ok(X: FinSpace) -> bool:
    return all(lab and all(is_identifier(t) for t in lab) for lab in X.labels)


def _point_text(X: FinSpace, x: int) -> str:
    return "=".join(sorted(X.labels[x]))


def render_space(X: FinSpace) -> str:
    """Grammar text for ``X``; labels that are not identifiers are replaced."""
    if not _names_ok(X):
        from .preorder import default_labels

        X = X.relabel(default_labels(X.n))
    n = X.n
    items: list[str] = []
    mentioned = [False] * n
    cls = [min(bits_of(X.up[x] & X.down[x])) for x in range(n)]
    for x in range(n):
        if cls[x] != x:
            continue
        members = [y for y in range(n) if cls[y] == x]
        if len(members) > 1:
            items.append("<->".join(_point_text(X, y) for y in members))
            for y in members:
                mentioned[y] = True
    for x in range(n):
        if cls[x] != x:
            continue
        above = [y for y in range(n) if cls[y] == y and y != x and X.leq(x, y) and not X.leq(y, x)]
        for y in above:
            between = any(
                z not in (x, y) and cls[z] == z and X.leq(x, z) and X.leq(z, y)
                and not X.leq(z, x) and not X.leq(y, z)
                for z in range(n)
            )
            if not between:
                items.append(f"{_point_text(X, x)}->{_point_text(X, y)}")
                mentioned[x] = mentioned[y] = True
    for x in range(n):
        if not mentioned[x]:
            items.append(_point_text(X, x))
    return "{" + ",".join(items) + "}"


def _fresh(used: set[str], stem: str) -> str:
    i = 0
    while f"{stem}{i}" in used:
        i += 1
    name = f"{stem}{i}"
    used.add(name)
    return name


def map_labels(f: FinMap) -> tuple[list[frozenset], list[frozenset]]:
    """Labels for the two sides of ``f`` under which the map reads off by name."""
    X, Y = f.dom, f.cod
    if _names_ok(X) and _names_ok(Y):
        consistent = True
        for x, lab in enumerate(X.labels):
            for tok in lab:
                try:
                    if Y.index(tok) != f.assign[x]:
                        consistent = False
                except KeyError:
                    consistent = False
        if consistent:
            return list(X.labels), list(Y.labels)
    if _names_ok(X):
        dom = list(X.labels)
    else:
        from .preorder import default_labels

        dom = default_labels(X.n)
    used = {t for lab in dom for t in lab}
    cod: list[frozenset] = []
    for y in range(Y.n):
        fibre = [t for x in range(X.n) if f.assign[x] == y for t in dom[x]]
        if fibre:
            cod.append(frozenset(fibre))
        else:
            own = [t for t in Y.labels[y] if is_identifier(t) and t not in used]
            if own:
                used.update(own)
                cod.append(frozenset(own))
            else:
                cod.append(frozenset((_fresh(used, "q"),)))
    return dom, cod


def render_map(f: FinMap) -> str:
    dom, cod = map_labels(f)
    return render_space(f.dom.relabel(dom)) + "-->" + render_space(f.cod.relabel(cod))


def render(obj) -> str:
    if isinstance(obj, FinSpace):
        return render_space(obj)
    if isinstance(obj, FinMap):
        return render_map(obj)
    if isinstance(obj, ClassExpr):
        return render_class_expr(obj)
    raise InputError(f"cannot render {type(obj).__name__}")


def render_class_expr(expr: ClassExpr) -> str:
    out = "{ " + ", ".join(render_map(g) for g in expr.generators) + " }"
    for step in expr.steps:
        out += "^" + step.op
        if step.limit is not None:
            out += "_{<%d}" % step.limit
    return out
