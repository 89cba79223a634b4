"""Going-up lift of a quotient potential along a principal C*-bundle.

Each base class lifts to a class whose boundary picks up a multiple of the
fiber disk boundary; the multiple (weight) is fixed by the Chern number of
the spherical relation among the base classes.  Coefficients and areas are
unchanged, only the fiber exponent is inserted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, MalformedSpec, MissingWeight, UnsupportedShape
from .novikov import AffineFunctional, Potential, collect, natural_sorted, substitute_parameters
from .reduction import SEMISTABLE, SubtorusAction, quotient_potential, StabilityReport


@dataclass(frozen=True)
class LiftSpec:
    fiber_variable: str
    degree: int
    fiber_class_area: AffineFunctional
    weights: Mapping[str, int]
    variable_map: Mapping[str, str] = field(default_factory=dict)
    parameter_map: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "weights", {str(k): int(v) for k, v in self.weights.items()})
        object.__setattr__(self, "variable_map", dict(self.variable_map))
        object.__setattr__(self, "parameter_map", dict(self.parameter_map))
        if self.fiber_variable in self.variable_map.values():
            raise MalformedSpec(f"fiber variable {self.fiber_variable!r} clashes with a base variable")

    def to_json(self) -> dict:
        return {"fiber_variable": self.fiber_variable, "degree": self.degree,
                "fiber_class_area": self.fiber_class_area.render(),
                "weights": dict(self.weights),
                "variable_map": dict(self.variable_map),
                "parameter_map": dict(self.parameter_map)}

    @classmethod
    def from_json(cls, data: Mapping) -> "LiftSpec":
        try:
            return cls(data["fiber_variable"], int(data.get("degree", 0)),
                       AffineFunctional.from_json(data.get("fiber_class_area", 0)),
                       data["weights"], data.get("variable_map", {}), data.get("parameter_map", {}))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedSpec(f"bad lift spec JSON: {exc!r}") from None


def _term_weight(tags, weights: Mapping[str, int]) -> int:
    if not tags:
        raise MissingWeight("term has no class tag")
    found = set()
    for t in tags:
        if t not in weights:
            raise MissingWeight(f"no fiber weight for class {t!r}")
        found.add(weights[t])
    if len(found) > 1:
        raise ValueError(f"merged classes {sorted(tags)} have different fiber weights")
    return found.pop()


def lift_potential(w: Potential, spec: LiftSpec) -> Potential:
    """Insert ``fiber^weight`` on every term and rename into total-space names."""
    vmap, pmap = spec.variable_map, spec.parameter_map
    sub = {old: AffineFunctional.parameter(new) for old, new in pmap.items()}
    terms = []
    for t in w.terms:
        k = _term_weight(t.class_tags, spec.weights)
        exps = tuple((vmap.get(n, n), e) for n, e in t.exponents) + ((spec.fiber_variable, k),)
        terms.append(t.replace(exponents=exps, area=t.area.substitute(sub)))
    variables = natural_sorted({vmap.get(v, v) for v in w.variables} | {spec.fiber_variable})
    parameters = natural_sorted({pmap.get(u, u) for u in w.parameters}
                                | set(spec.fiber_class_area.parameters))
    return collect(Potential(variables, parameters, terms))


def chern_weights(relation: Mapping[str, int] | Sequence[Mapping[str, int]], degree: int) -> dict[str, int]:
    """Weights for the two-class relation ``beta_1 + beta_2`` over a degree ``-n`` bundle.

    Closing ``beta_1 + beta_2 + a*beta_0`` to a sphere homotopic to the zero
    section gives ``a = <c_1, alpha> = -degree``, so the second class carries
    ``degree`` copies of the fiber boundary and the first none.
    """
    if not isinstance(relation, Mapping):
        relation = list(relation)
        if len(relation) != 1:
            raise UnsupportedShape(f"expected one spherical relation, got {len(relation)}")
        relation = relation[0]
    items = list(relation.items())
    if len(items) != 2 or any(m != 1 for _, m in items):
        raise UnsupportedShape("only a relation beta_1 + beta_2 with unit multiplicities is supported")
    (first, _), (second, _) = items
    return {first: 0, second: int(degree)}


def fiber_action(total: Potential, spec: LiftSpec, level) -> SubtorusAction:
    """The fiber circle action at ``level`` on the lifted potential.

    Its moment map is the fiber class area, which must be a function of the
    parameter paired with the fiber variable.
    """
    if spec.fiber_variable not in total.variables:
        raise DimensionMismatch(f"{spec.fiber_variable!r} is not a variable of the lifted potential")
    idx = total.variables.index(spec.fiber_variable)
    row = [0] * len(total.variables)
    row[idx] = 1
    area = spec.fiber_class_area
    expected = AffineFunctional(area.constant, ((total.parameters[idx], Fraction(1)),))
    if area != expected:
        raise ValueError(f"fiber class area {area.render()} is not the moment map of "
                         f"{spec.fiber_variable}")
    inverse_v = {new: old for old, new in spec.variable_map.items()}
    names = tuple(inverse_v.get(v, v) for v in total.variables if v != spec.fiber_variable)
    return SubtorusAction([row], [area.constant], [Fraction(level)], variables=names, parameters="keep")


def reduce_lift(total: Potential, spec: LiftSpec, level) -> Potential:
    """Reduce a lifted potential by the fiber circle at ``level``, in base names."""
    act = fiber_action(total, spec, level)
    report = StabilityReport({t: SEMISTABLE for t in total.tags()})
    reduced = quotient_potential(total, act, report)
    inverse_p = {new: AffineFunctional.parameter(old) for old, new in spec.parameter_map.items()}
    params = tuple(_inverse_name(spec.parameter_map, u) for u in reduced.parameters)
    return substitute_parameters(reduced, inverse_p, params)


def _inverse_name(mapping: Mapping[str, str], name: str) -> str:
    for old, new in mapping.items():
        if new == name:
            return old
    return name
