"""Finite topological spaces as specialization preorders.

Orientation: ``X.leq(x, y)`` holds when ``y`` lies in the closure of ``x``
(the arrow ``x->y``).  A subset is closed iff it is closed under moving
forward along ``leq`` and open iff its complement is closed, so in ``{a->b}``
the point ``a`` is open and ``b`` is closed.

Subsets are handled internally as integer bitmasks; the public helpers accept
any iterable of point indices and return frozensets.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InputError

Label = frozenset  # frozenset[str]: every token glued into one point

PRODUCT_SEPARATOR = "*"


def bits_of(mask: int) -> Iterator[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


def _as_label(item) -> Label:
    if isinstance(item, str):
        return frozenset((item,))
    lab = frozenset(item)
    if not lab:
        raise InputError("a point needs at least one label")
    return lab


def default_labels(n: int) -> list[Label]:
    if n <= 26:
        return [frozenset((chr(ord("a") + i),)) for i in range(n)]
    return [frozenset((f"p{i}",)) for i in range(n)]


class FinSpace:
    """A finite topological space.

    ``up[x]`` is the bitmask of the closure of ``{x}`` and ``down[x]`` the
    bitmask of the smallest open set containing ``x``.  Instances are
    immutable and compare structurally (labels and relation).
    """

    __slots__ = ("labels", "up", "down", "_hash")

    def __init__(self, labels: Sequence, up: Sequence[int], *, check: bool = True):
        labels = tuple(_as_label(lab) for lab in labels)
        up = tuple(int(m) for m in up)
        n = len(labels)
        if len(up) != n:
            raise InputError(f"{n} labels but {len(up)} relation rows")
        if check:
            full = (1 << n) - 1
            seen: set[str] = set()
            for lab in labels:
                if seen & lab:
                    raise InputError(f"label(s) {sorted(seen & lab)} used by two points")
                seen |= lab
            for x in range(n):
                if up[x] & ~full:
                    raise InputError("relation refers to a point out of range")
                if not (up[x] >> x) & 1:
                    raise InputError(f"relation is not reflexive at point {x}")
                for y in bits_of(up[x]):
                    if up[y] & ~up[x]:
                        raise InputError(f"relation is not transitive at points {x}, {y}")
        down = [0] * n
        for x in range(n):
            for y in bits_of(up[x]):
                down[y] |= 1 << x
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "up", up)
        object.__setattr__(self, "down", tuple(down))
        object.__setattr__(self, "_hash", hash((labels, up)))

    def __setattr__(self, name, value):
        raise AttributeError("FinSpace is immutable")

    # construction helpers

    @classmethod
    def from_pairs(cls, labels: Sequence, pairs: Iterable[tuple[int, int]]) -> "FinSpace":
        """Reflexive-transitive closure of the listed arrows ``x->y``."""
        n = len(labels)
        up = [1 << x for x in range(n)]
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise InputError(f"arrow ({x}, {y}) out of range")
            up[x] |= 1 << y
        changed = True
        while changed:
            changed = False
            for x in range(n):
                acc = up[x]
                for y in bits_of(up[x]):
                    acc |= up[y]
                if acc != up[x]:
                    up[x] = acc
                    changed = True
        return cls(labels, up, check=False)

    @classmethod
    def from_matrix(cls, labels: Sequence, leq: Sequence[Sequence[bool]]) -> "FinSpace":
        up = [sum(1 << y for y, v in enumerate(row) if v) for row in leq]
        return cls(labels, up)

    @classmethod
    def discrete(cls, labels: Sequence) -> "FinSpace":
        return cls(labels, [1 << x for x in range(len(labels))])

    @classmethod
    def antidiscrete(cls, labels: Sequence) -> "FinSpace":
        full = (1 << len(labels)) - 1
        return cls(labels, [full] * len(labels))

    @classmethod
    def empty(cls) -> "FinSpace":
        return cls((), ())

    @classmethod
    def point(cls, label: str = "o") -> "FinSpace":
        return cls((label,), (1,))

    # basic queries

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def __len__(self) -> int:
        return len(self.labels)

    def leq(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def matrix(self) -> list[list[bool]]:
        return [[self.leq(x, y) for y in range(self.n)] for x in range(self.n)]

    def strict_pairs(self) -> list[tuple[int, int]]:
        """All ``(x, y)`` with ``x != y`` and ``y`` in the closure of ``x``."""
        return [(x, y) for x in range(self.n) for y in bits_of(self.up[x]) if x != y]

    def index(self, token: str) -> int:
        for i, lab in enumerate(self.labels):
            if token in lab:
                return i
        raise KeyError(token)

    def name(self, x: int) -> str:
        return "=".join(sorted(self.labels[x]))

    def relabel(self, labels: Sequence) -> "FinSpace":
        return FinSpace(labels, self.up)

    # subsets as bitmasks

    def closure_mask(self, mask: int) -> int:
        acc = 0
        for x in bits_of(mask):
            acc |= self.up[x]
        return acc

    def interior_mask(self, mask: int) -> int:
        return self.full & ~self.closure_mask(self.full & ~mask)

    def is_closed_mask(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    def is_open_mask(self, mask: int) -> bool:
        return self.is_closed_mask(self.full & ~mask)

    def closed_masks(self) -> list[int]:
        return [m for m in range(1 << self.n) if self.is_closed_mask(m)]

    def open_masks(self) -> list[int]:
        return [m for m in range(1 << self.n) if self.is_open_mask(m)]

    def subspace(self, mask: int) -> tuple["FinSpace", "FinMap"]:
        """Induced subspace on ``mask`` together with its inclusion."""
        pts = list(bits_of(mask))
        pos = {p: i for i, p in enumerate(pts)}
        up = [sum(1 << pos[y] for y in bits_of(self.up[p] & mask)) for p in pts]
        sub = FinSpace([self.labels[p] for p in pts], up, check=False)
        return sub, FinMap(sub, self, pts, check=False)

    # dunder

    def __eq__(self, other):
        if not isinstance(other, FinSpace):
            return NotImplemented
        return self.labels == other.labels and self.up == other.up

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .notation import render_space

        return f"FinSpace({render_space(self)!r})"


class FinMap:
    """A continuous (= monotone) map between finite spaces."""

    __slots__ = ("dom", "cod", "assign", "_hash")

    def __init__(self, dom: FinSpace, cod: FinSpace, assign: Sequence[int], *, check: bool = True):
        assign = tuple(int(v) for v in assign)
        if check:
            if len(assign) != dom.n:
                raise InputError(f"map assigns {len(assign)} values to {dom.n} points")
            for v in assign:
                if not 0 <= v < cod.n:
                    raise InputError(f"map value {v} is not a point of the codomain")
            bad = first_monotonicity_violation(dom, cod, assign)
            if bad is not None:
                x, y = bad
                raise InputError(
                    f"map is not monotone: {dom.name(x)}->{dom.name(y)} but "
                    f"{cod.name(assign[x])} is not below {cod.name(assign[y])}"
                )
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)
        object.__setattr__(self, "assign", assign)
        object.__setattr__(self, "_hash", hash((dom, cod, assign)))

    def __setattr__(self, name, value):
        raise AttributeError("FinMap is immutable")

    @classmethod
    def identity(cls, X: FinSpace) -> "FinMap":
        return cls(X, X, range(X.n), check=False)

    @classmethod
    def from_empty(cls, X: FinSpace) -> "FinMap":
        return cls(FinSpace.empty(), X, (), check=False)

    @classmethod
    def to_point(cls, X: FinSpace, label: str = "o") -> "FinMap":
        return cls(X, FinSpace.point(label), [0] * X.n, check=False)

    def __call__(self, x: int) -> int:
        return self.assign[x]

    def image_mask(self, mask: int | None = None) -> int:
        if mask is None:
            mask = self.dom.full
        acc = 0
        for x in bits_of(mask):
            acc |= 1 << self.assign[x]
        return acc

    def preimage_mask(self, mask: int) -> int:
        return sum(1 << x for x, v in enumerate(self.assign) if (mask >> v) & 1)

    def fibres(self) -> list[int]:
        fib = [0] * self.cod.n
        for x, v in enumerate(self.assign):
            fib[v] |= 1 << x
        return fib

    def __eq__(self, other):
        if not isinstance(other, FinMap):
            return NotImplemented
        return self.assign == other.assign and self.dom == other.dom and self.cod == other.cod

    def __hash__(self):
        return self._hash

    def __repr__(self):
        from .notation import render_map

        return f"FinMap({render_map(self)!r})"


def first_monotonicity_violation(dom: FinSpace, cod: FinSpace, assign: Sequence[int]):
    for x in range(dom.n):
        reach = cod.up[assign[x]]
        for y in bits_of(dom.up[x]):
            if not (reach >> assign[y]) & 1:
                return x, y
    return None


def is_monotone(dom: FinSpace, cod: FinSpace, assign: Sequence[int]) -> bool:
    return first_monotonicity_violation(dom, cod, assign) is None


# ---------------------------------------------------------------- subsets


def _to_mask(X: FinSpace, S: Iterable[int]) -> int:
    mask = 0
    for x in S:
        if not isinstance(x, int) or not 0 <= x < X.n:
            raise InputError(f"point index {x!r} out of range for a {X.n}-point space")
        mask |= 1 << x
    return mask


def closure(X: FinSpace, S: Iterable[int]) -> frozenset[int]:
    """Smallest closed set containing ``S``."""
    return frozenset(bits_of(X.closure_mask(_to_mask(X, S))))


def interior(X: FinSpace, S: Iterable[int]) -> frozenset[int]:
    return frozenset(bits_of(X.interior_mask(_to_mask(X, S))))


class SubsetStatus(NamedTuple):
    open: bool
    closed: bool
    clopen: bool
    dense: bool


def subset_status(X: FinSpace, S: Iterable[int]) -> SubsetStatus:
    mask = _to_mask(X, S)
    closed = X.is_closed_mask(mask)
    is_open = X.is_open_mask(mask)
    return SubsetStatus(is_open, closed, closed and is_open, X.closure_mask(mask) == X.full)


# ------------------------------------------------------------ constructions


def compose(f: FinMap, g: FinMap) -> FinMap:
    """``g`` after ``f``."""
    if f.cod != g.dom:
        raise InputError("cannot compose: codomain of the first map is not the domain of the second")
    return FinMap(f.dom, g.cod, [g.assign[v] for v in f.assign], check=False)


def _pair_label(a: Label, b: Label, sep: str) -> Label:
    return frozenset(f"{s}{sep}{t}" for s in a for t in b)


def product(X: FinSpace, Y: FinSpace, sep: str = PRODUCT_SEPARATOR) -> tuple[FinSpace, FinMap, FinMap]:
    """Product space with its two projections; points ordered ``X``-major."""
    pts = [(x, y) for x in range(X.n) for y in range(Y.n)]
    return _subproduct(X, Y, pts, sep)


def _subproduct(X, Y, pts, sep):
    up = []
    for x, y in pts:
        up.append(sum(1 << j for j, (u, v) in enumerate(pts) if X.leq(x, u) and Y.leq(y, v)))
    P = FinSpace([_pair_label(X.labels[x], Y.labels[y], sep) for x, y in pts], up, check=False)
    return (
        P,
        FinMap(P, X, [x for x, _ in pts], check=False),
        FinMap(P, Y, [y for _, y in pts], check=False),
    )


def pullback(f: FinMap, g: FinMap, sep: str = PRODUCT_SEPARATOR) -> tuple[FinSpace, FinMap, FinMap]:
    """Fibre product of ``f: X->Z`` and ``g: Y->Z`` with its two projections."""
    if f.cod != g.cod:
        raise InputError("pullback needs two maps with the same codomain")
    pts = [(x, y) for x in range(f.dom.n) for y in range(g.dom.n) if f.assign[x] == g.assign[y]]
    return _subproduct(f.dom, g.dom, pts, sep)


# ------------------------------------------------------------ canonical forms


class CanonicalKey(NamedTuple):
    """Isomorphism invariant of a space: point count and minimal relation code."""

    n: int
    code: int

    def __str__(self):
        return f"{self.n}:{self.code:x}"


class MapKey(NamedTuple):
    dom: CanonicalKey
    cod: CanonicalKey
    assign: tuple

    def __str__(self):
        return f"{self.dom}>{self.cod}:" + ".".join(map(str, self.assign))


def _refine(up: tuple[int, ...]) -> list[int]:
    n = len(up)
    down = [0] * n
    for x in range(n):
        for y in bits_of(up[x]):
            down[y] |= 1 << x
    sig = [(_popcount(up[x]), _popcount(down[x]), _popcount(up[x] & down[x])) for x in range(n)]
    ranks = sorted(set(sig))
    colors = [ranks.index(s) for s in sig]
    count = len(ranks)
    while True:
        sig = [
            (
                colors[x],
                tuple(sorted(colors[y] for y in bits_of(up[x]))),
                tuple(sorted(colors[y] for y in bits_of(down[x]))),
            )
            for x in range(n)
        ]
        ranks = sorted(set(sig))
        colors = [ranks.index(s) for s in sig]
        if len(ranks) == count:
            return colors
        count = len(ranks)


def _cells(colors: list[int]) -> list[list[int]]:
    cells: dict[int, list[int]] = {}
    for x, c in enumerate(colors):
        cells.setdefault(c, []).append(x)
    return [cells[c] for c in sorted(cells)]


def _code(up: tuple[int, ...], order: Sequence[int]) -> int:
    n = len(order)
    code = 0
    for i, x in enumerate(order):
        row = up[x]
        for j, y in enumerate(order):
            if (row >> y) & 1:
                code |= 1 << (i * n + j)
    return code


@lru_cache(maxsize=None)
def _canon(up: tuple[int, ...]) -> tuple[CanonicalKey, tuple[int, ...]]:
    cells = _cells(_refine(up))
    best = None
    best_order = None
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        order = [x for part in parts for x in part]
        code = _code(up, order)
        if best is None or code < best:
            best, best_order = code, tuple(order)
    return CanonicalKey(len(up), best or 0), best_order or ()


def canonical_labeling(X: FinSpace) -> tuple[CanonicalKey, tuple[int, ...]]:
    """Key plus ``order`` with ``order[i]`` the point of ``X`` at canonical position ``i``."""
    return _canon(X.up)


def canonical_form(X: FinSpace) -> CanonicalKey:
    return _canon(X.up)[0]


@lru_cache(maxsize=None)
def space_from_key(key: CanonicalKey) -> FinSpace:
    """The canonical representative carrying the default labels ``a, b, c, ...``."""
    n = key.n
    up = [sum(1 << j for j in range(n) if (key.code >> (i * n + j)) & 1) for i in range(n)]
    return FinSpace(default_labels(n), up)


def canonical_space(X: FinSpace) -> tuple[FinSpace, FinMap]:
    """Canonical representative of ``X`` and an isomorphism ``X -> rep``."""
    key, order = canonical_labeling(X)
    rep = space_from_key(key)
    pos = [0] * X.n
    for i, x in enumerate(order):
        pos[x] = i
    return rep, FinMap(X, rep, pos, check=False)


@lru_cache(maxsize=None)
def _automorphisms(up: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    cells = _cells(_refine(up))
    n = len(up)
    flat = [x for c in cells for x in c]
    found = []
    for parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        image = [x for part in parts for x in part]
        sigma = [0] * n
        for src, dst in zip(flat, image):
            sigma[src] = dst
        if all(
            up[sigma[x]] == sum(1 << sigma[y] for y in bits_of(up[x]))
            for x in range(n)
        ):
            found.append(tuple(sigma))
    return tuple(sorted(found))


def automorphisms(X: FinSpace) -> tuple[tuple[int, ...], ...]:
    """All relation-preserving permutations ``sigma`` (``sigma[x]`` is the image of ``x``)."""
    return _automorphisms(X.up)


def min_orbit_assignment(assign: Sequence[int], dom_auts, cod_auts) -> tuple[int, ...]:
    """Least assignment in the orbit of ``assign`` under pre- and post-composition by automorphisms."""
    best = None
    for alpha in dom_auts:
        moved = [assign[alpha[i]] for i in range(len(assign))]
        for beta in cod_auts:
            cand = tuple(beta[v] for v in moved)
            if best is None or cand < best:
                best = cand
    return best if best is not None else tuple(assign)


def map_canonical_form(f: FinMap) -> MapKey:
    """Key of ``f`` up to isomorphisms of its domain and codomain."""
    kx, ox = canonical_labeling(f.dom)
    ky, oy = canonical_labeling(f.cod)
    pos_y = [0] * f.cod.n
    for i, y in enumerate(oy):
        pos_y[y] = i
    moved = [pos_y[f.assign[x]] for x in ox]
    rep_x, rep_y = space_from_key(kx), space_from_key(ky)
    best = min_orbit_assignment(moved, automorphisms(rep_x), automorphisms(rep_y))
    return MapKey(kx, ky, best)


def map_from_key(key: MapKey) -> FinMap:
    return FinMap(space_from_key(key.dom), space_from_key(key.cod), key.assign, check=False)


def canonical_map(f: FinMap) -> FinMap:
    """The representative of ``f`` between canonical spaces."""
    return map_from_key(map_canonical_form(f))
