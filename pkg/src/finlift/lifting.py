"""Quillen lifting property for maps of finite spaces, by exhaustive search.

``i ⧄ p`` holds when every commuting square

    A --f--> X
    |        |
    i        p
    v        v
    B --g--> Y

admits a diagonal ``h: B -> X`` with ``h∘i = f`` and ``p∘h = g``.
Squares are enumerated in a fixed order (``f`` lexicographic, then ``g``
lexicographic), and lifts are searched by backtracking over the points of
``B`` with candidates restricted to the fibre of ``p`` over ``g(b)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import InputError
from .preorder import FinMap, FinSpace, bits_of


def monotone_assignments(
    X: FinSpace,
    Y: FinSpace,
    allowed: Optional[Sequence[int]] = None,
    fixed: Optional[dict] = None,
) -> Iterator[tuple[int, ...]]:
    """Monotone functions ``X -> Y`` in lexicographic order.

    ``allowed[x]`` is a bitmask of admissible values for ``x``; ``fixed``
    pins some points to a value.  Constraints against pinned points are
    applied before the search starts.
    """
    n = X.n
    full = Y.full
    cand = list(allowed) if allowed is not None else [full] * n
    if fixed:
        for x, v in fixed.items():
            if not (cand[x] >> v) & 1:
                return
            cand[x] = 1 << v
        for x, v in fixed.items():
            for y in bits_of(X.up[x]):
                cand[y] &= Y.up[v]
            for y in bits_of(X.down[x]):
                cand[y] &= Y.down[v]
        if any(c == 0 for c in cand):
            return
    if n == 0:
        yield ()
        return
    up_x, down_x = X.up, X.down
    up_y, down_y = Y.up, Y.down
    values = [0] * n

    # earlier points related to x, split by direction
    before_up = [[w for w in range(x) if (up_x[w] >> x) & 1] for x in range(n)]
    before_down = [[w for w in range(x) if (down_x[w] >> x) & 1] for x in range(n)]

    def rec(x: int) -> Iterator[tuple[int, ...]]:
        mask = cand[x]
        for w in before_up[x]:  # w <= x
            mask &= up_y[values[w]]
        for w in before_down[x]:  # x <= w
            mask &= down_y[values[w]]
        for v in bits_of(mask):
            values[x] = v
            if x + 1 == n:
                yield tuple(values)
            else:
                yield from rec(x + 1)

    yield from rec(0)


def enumerate_maps(X: FinSpace, Y: FinSpace) -> list[FinMap]:
    """All monotone maps ``X -> Y`` in lexicographic order of their values."""
    return [FinMap(X, Y, a, check=False) for a in monotone_assignments(X, Y)]


@dataclass(frozen=True)
class Square:
    i: FinMap
    p: FinMap
    f: FinMap
    g: FinMap

    def commutes(self) -> bool:
        return all(self.p.assign[self.f.assign[a]] == self.g.assign[self.i.assign[a]] for a in range(self.i.dom.n))

    def validate(self) -> None:
        i, p, f, g = self.i, self.p, self.f, self.g
        if f.dom != i.dom or f.cod != p.dom or g.dom != i.cod or g.cod != p.cod:
            raise InputError("square sides do not match up")
        if not self.commutes():
            raise InputError("square does not commute: p∘f differs from g∘i")

    def is_lift(self, h: FinMap) -> bool:
        """Both triangle identities, plus monotonicity of ``h``."""
        from .preorder import is_monotone

        if h.dom != self.i.cod or h.cod != self.p.dom:
            return False
        if not is_monotone(h.dom, h.cod, h.assign):
            return False
        return all(h.assign[self.i.assign[a]] == self.f.assign[a] for a in range(self.i.dom.n)) and all(
            self.p.assign[h.assign[b]] == self.g.assign[b] for b in range(self.i.cod.n)
        )


@dataclass
class LiftVerdict:
    holds: bool
    squares: int = 0
    counterexample: Optional[Square] = None
    witnesses: list = field(default_factory=list)  # (Square, FinMap) pairs when requested
    generator: Optional[int] = None  # index of the failing generator, for class checks

    def __bool__(self) -> bool:
        return self.holds


def _lift_assignment(i: FinMap, p: FinMap, f: Sequence[int], g: Sequence[int]) -> Optional[tuple[int, ...]]:
    B, X = i.cod, p.dom
    fibres = p.fibres()
    fixed: dict[int, int] = {}
    for a, b in enumerate(i.assign):
        v = f[a]
        if fixed.get(b, v) != v:
            return None
        fixed[b] = v
    allowed = [fibres[g[b]] for b in range(B.n)]
    for a in monotone_assignments(B, X, allowed, fixed):
        return a
    return None


def find_lift(sq: Square) -> Optional[FinMap]:
    """First diagonal filler in lexicographic order, or ``None``."""
    sq.validate()
    a = _lift_assignment(sq.i, sq.p, sq.f.assign, sq.g.assign)
    if a is None:
        return None
    return FinMap(sq.i.cod, sq.p.dom, a, check=False)


def squares(i: FinMap, p: FinMap) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Commuting squares over ``(i, p)`` as pairs of assignments ``(f, g)``."""
    A, B, X, Y = i.dom, i.cod, p.dom, p.cod
    for f in monotone_assignments(A, X):
        fixed: dict[int, int] = {}
        ok = True
        for a, b in enumerate(i.assign):
            v = p.assign[f[a]]
            if fixed.get(b, v) != v:
                ok = False
                break
            fixed[b] = v
        if not ok:
            continue
        for g in monotone_assignments(B, Y, None, fixed):
            yield f, g


def check_lifting(i: FinMap, p: FinMap, *, witnesses: bool = False) -> LiftVerdict:
    """Decide ``i ⧄ p``; on failure report the first square without a lift."""
    count = 0
    found = []
    for f, g in squares(i, p):
        count += 1
        h = _lift_assignment(i, p, f, g)
        if h is None:
            sq = Square(i, p, FinMap(i.dom, p.dom, f, check=False), FinMap(i.cod, p.cod, g, check=False))
            return LiftVerdict(False, count, sq, found)
        if witnesses:
            sq = Square(i, p, FinMap(i.dom, p.dom, f, check=False), FinMap(i.cod, p.cod, g, check=False))
            found.append((sq, FinMap(i.cod, p.dom, h, check=False)))
    return LiftVerdict(True, count, None, found)


def has_lifting(i: FinMap, p: FinMap) -> bool:
    for f, g in squares(i, p):
        if _lift_assignment(i, p, f, g) is None:
            return False
    return True


def check_against_class(m: FinMap, gens: Sequence[FinMap], side: str) -> LiftVerdict:
    """Whether ``m`` lies in the left (``m ⧄ g``) or right (``g ⧄ m``) orthogonal of ``gens``."""
    if side not in ("left", "right", "l", "r"):
        raise InputError(f"side must be 'left' or 'right', not {side!r}")
    left = side in ("left", "l")
    total = 0
    for k, gen in enumerate(gens):
        verdict = check_lifting(m, gen) if left else check_lifting(gen, m)
        total += verdict.squares
        if not verdict.holds:
            verdict.generator = k
            verdict.squares = total
            return verdict
    return LiftVerdict(True, total)
