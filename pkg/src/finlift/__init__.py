"""Finite topological spaces as preorders, Quillen lifting properties between
their maps, and an exhaustive census for checking lifting characterizations."""

from .errors import InputError, ParseError
from .preorder import (
    CanonicalKey,
    FinMap,
    FinSpace,
    MapKey,
    canonical_form,
    closure,
    compose,
    interior,
    map_canonical_form,
    product,
    pullback,
    subset_status,
)
from .notation import parse, parse_class_expr, parse_map, parse_space, render, render_map, render_space
from .lifting import Square, check_against_class, check_lifting, find_lift, has_lifting
from .classify import (
    MAP_PREDICATES,
    SPACE_PREDICATES,
    classify_map,
    classify_space,
    lifting_characterization,
    registry,
)
from .orthogonal import (
    census,
    class_membership,
    enumerate_maps,
    enumerate_spaces,
    evaluate_class,
    finite_orthogonal,
    verify_all,
    verify_correspondence,
)

__all__ = [
    "InputError", "ParseError",
    "CanonicalKey", "FinMap", "FinSpace", "MapKey",
    "canonical_form", "closure", "compose", "interior", "map_canonical_form",
    "product", "pullback", "subset_status",
    "parse", "parse_class_expr", "parse_map", "parse_space", "render", "render_map", "render_space",
    "Square", "check_against_class", "check_lifting", "find_lift", "has_lifting",
    "MAP_PREDICATES", "SPACE_PREDICATES", "classify_map", "classify_space",
    "lifting_characterization", "registry",
    "census", "class_membership", "enumerate_maps", "enumerate_spaces", "evaluate_class",
    "finite_orthogonal", "verify_all", "verify_correspondence",
]
