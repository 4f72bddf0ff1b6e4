"""Group specifications and the built-in verification catalog.

Grammar::

    sym:n | alt:n | cyclic:n | dihedral:<order> | q8
    product:<spec>x<spec>
    perm:<degree>:<cycles>;<cycles>;...
"""

from __future__ import annotations

from .errors import ParseError
from .permgroup import group_from_generators, named_group, parse_permutation


def _positive(text, what):
    try:
        n = int(text)
    except ValueError:
        raise ParseError(f"{what} needs an integer, got {text!r}")
    if n < 1:
        raise ParseError(f"{what} needs a positive integer, got {n}")
    return n


def parse_group_spec(spec, max_order=None):
    spec = spec.strip()
    head, _, rest = spec.partition(":")
    head = head.lower()
    try:
        if head == "q8" and not rest:
            return named_group("quaternion8", max_order=max_order)
        if head == "sym":
            return named_group("symmetric", _positive(rest, "sym"), max_order=max_order)
        if head == "alt":
            return named_group("alternating", _positive(rest, "alt"), max_order=max_order)
        if head == "cyclic":
            return named_group("cyclic", _positive(rest, "cyclic"), max_order=max_order)
        if head == "dihedral":
            return named_group("dihedral", _positive(rest, "dihedral"), max_order=max_order)
        if head == "product":
            return _parse_product(rest, max_order)
        if head == "perm":
            deg_text, _, cycles = rest.partition(":")
            degree = _positive(deg_text, "perm degree")
            gens = [parse_permutation(c, degree) for c in cycles.split(";") if c.strip()]
            return group_from_generators(gens, max_order, degree=degree, name=spec)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc))
    raise ParseError(f"unknown group specification {spec!r}")


def _parse_product(rest, max_order):
    # try split points from the right so that left-nested products parse
    cuts = [i for i, ch in enumerate(rest) if ch == "x"]
    for i in reversed(cuts):
        try:
            A = parse_group_spec(rest[:i], max_order)
            B = parse_group_spec(rest[i + 1:], max_order)
        except ParseError:
            continue
        G = named_group("directProduct", A, B, max_order=max_order)
        G.name = f"product:{rest}"
        return G
    raise ParseError(f"cannot split product specification {rest!r}")


# (spec, primes to test); primes are those of {2, 3, 5} dividing the order
CATALOG = (
    ("sym:3", (2, 3)),
    ("sym:4", (2, 3)),
    ("alt:4", (2, 3)),
    ("alt:5", (2, 3, 5)),
    ("product:dihedral:8xcyclic:3", (2, 3)),
    ("q8", (2,)),
    ("cyclic:4", (2,)),
    ("dihedral:8", (2,)),
    ("dihedral:10", (2, 5)),
    ("dihedral:12", (2, 3)),
    # C3 x| C4, the dicyclic group of order 12
    ("perm:7:(1 2 3);(1 2)(4 5 6 7)", (2, 3)),
)


def catalog_pairs():
    return [(spec, p) for spec, primes in CATALOG for p in primes]


def spec_slug(spec):
    """File-name friendly form of a spec."""
    return "".join(ch if ch.isalnum() else "_" for ch in spec).strip("_")
