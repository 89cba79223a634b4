"""Disk potential generators: toric fibers, quadric GZ fibers, and a registry
for potentials computed elsewhere (e.g. Gelfand-Zeitlin systems)."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InvalidDimension, MalformedSpec, Unbounded
from .novikov import AffineFunctional, NovikovTerm, Potential, collect
from .polytope import Polytope


def default_names(prefix: str, m: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, m + 1))


def toric_potential(p: Polytope, *, allow_unbounded: bool = False,
                    variables: Sequence[str] | None = None,
                    parameters: Sequence[str] | None = None) -> Potential:
    """Cho-Oh potential of the toric fiber over ``u``: one basic disk per facet.

    The facet ``<v, u> >= lam`` contributes ``y^v T^{<v, u> - lam}`` tagged
    with the facet label.  Unbounded polytopes need ``allow_unbounded``.
    """
    if not p.bounded and not allow_unbounded:
        raise Unbounded("toric_potential on an unbounded polyhedron needs allow_unbounded")
    variables = tuple(variables or default_names("y", p.dim))
    parameters = tuple(parameters or default_names("u", p.dim))
    if len(variables) != p.dim or len(parameters) != p.dim:
        raise MalformedSpec(f"need {p.dim} variable and parameter names")
    terms = []
    for f in p.facets:
        area = AffineFunctional(-f.offset, tuple(zip(parameters, f.normal)))
        terms.append(NovikovTerm(Fraction(1), tuple(zip(variables, f.normal)), area,
                                 frozenset([f.label])))
    return collect(Potential(variables, parameters, terms))


def quadric_polytope(n: int) -> Polytope:
    """GZ polytope ``n >= u_n >= ... >= u_2 >= |u_1|`` with facets f0..fn."""
    if n < 2:
        raise InvalidDimension(f"quadric needs n >= 2, got {n}")

    def e(*pairs):
        v = [0] * n
        for i, c in pairs:
            v[i - 1] = c
        return tuple(v)

    facets = [(e((1, 1), (2, 1)), 0, "f0"), (e((1, -1), (2, 1)), 0, "f1")]
    facets += [(e((j, -1), (j + 1, 1)), 0, f"f{j}") for j in range(2, n)]
    facets.append((e((n, -1)), -n, f"f{n}"))
    return Polytope(facets, n)


QUADRIC_EXTRA_TAG = "beta"


def quadric_potential(n: int) -> Potential:
    """Disk potential of a GZ torus fiber in the quadric ``Q^n``.

    The toric terms of ``quadric_polytope(n)`` plus ``2 y_2 T^{u_2}`` from the
    disks with boundary ``(0, 1, 0, ..., 0)``; the count 2 is the known value.
    """
    base = toric_potential(quadric_polytope(n))
    extra = NovikovTerm.of(2, {"y2": 1}, AffineFunctional.parameter("u2"), [QUADRIC_EXTRA_TAG])
    return collect(base.with_terms(base.terms + (extra,)))


_REGISTRY: dict[str, Potential] = {}


def register_potential(name: str, spec: Potential | Mapping) -> Potential:
    """Validate, normalize and store a potential under ``name``."""
    if isinstance(spec, Mapping):
        spec = Potential.from_json(spec)
    if not isinstance(spec, Potential):
        raise MalformedSpec(f"cannot register {type(spec).__name__} as a potential")
    # re-run validation in case the instance was assembled by hand
    spec = Potential(spec.variables, spec.parameters, spec.terms)
    _REGISTRY[name] = collect(spec)
    return _REGISTRY[name]


def registered_potential(name: str) -> Potential:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise KeyError(f"no potential registered as {name!r}") from None


def registered_names() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


# Gr(2, 5) as the coadjoint orbit of diag(5, 5, 0, 0, 0).  Index ij stands for
# the GZ pattern entry u_{i,j}; facets g0..g8 follow the interlacing
# inequalities 5 >= u31 >= u21 >= u11, u32 >= u22 >= u12 >= 0 and the
# vertical ones u31 >= u32, u21 >= u22, u11 >= u12.
GZ25_VARIABLES = ("y11", "y12", "y21", "y22", "y31", "y32")
GZ25_PARAMETERS = ("u11", "u12", "u21", "u22", "u31", "u32")

GZ25_TERMS = (
    ("g0", "y31^-1*T^{5-u31}"),
    ("g1", "y21^-1*y31*T^{-u21+u31}"),
    ("g2", "y11^-1*y21*T^{-u11+u21}"),
    ("g3", "y22^-1*y32*T^{-u22+u32}"),
    ("g4", "y12^-1*y22*T^{-u12+u22}"),
    ("g5", "y12*T^{u12}"),
    ("g6", "y31*y32^-1*T^{u31-u32}"),
    ("g7", "y21*y22^-1*T^{u21-u22}"),
    ("g8", "y11*y12^-1*T^{u11-u12}"),
)


def gz25_polytope() -> Polytope:
    idx = {name: k for k, name in enumerate(GZ25_PARAMETERS)}

    def v(*pairs):
        out = [0] * 6
        for name, c in pairs:
            out[idx[name]] = c
        return tuple(out)

    facets = [
        (v(("u31", -1)), -5, "g0"),
        (v(("u31", 1), ("u21", -1)), 0, "g1"),
        (v(("u21", 1), ("u11", -1)), 0, "g2"),
        (v(("u32", 1), ("u22", -1)), 0, "g3"),
        (v(("u22", 1), ("u12", -1)), 0, "g4"),
        (v(("u12", 1)), 0, "g5"),
        (v(("u31", 1), ("u32", -1)), 0, "g6"),
        (v(("u21", 1), ("u22", -1)), 0, "g7"),
        (v(("u11", 1), ("u12", -1)), 0, "g8"),
    ]
    return Polytope(facets, 6)


def gz25_potential() -> Potential:
    """The Gr(2,5) GZ fiber potential (nine basic terms), tagged g0..g8."""
    from .parsing import parse_potential

    terms = []
    for tag, text in GZ25_TERMS:
        (t,) = parse_potential(text).terms
        terms.append(t.replace(class_tags=frozenset([tag])))
    return collect(Potential(GZ25_VARIABLES, GZ25_PARAMETERS, terms))


register_potential("gz25", gz25_potential())
