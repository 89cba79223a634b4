"""Finite Novikov-Laurent potentials with affine Novikov exponents.

A potential is a finite sum of terms ``c * y^a * T^{l(u)}`` where ``c`` is a
rational coefficient, ``a`` an integer exponent vector and ``l`` an affine
function of the action parameters ``u``.  Terms are collected on the pair
``(a, l)``: equal monomials with different areas stay separate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    DimensionMismatch,
    InconsistentConstraints,
    MalformedSpec,
    MissingParameter,
)

NOVIKOV = "T"
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def natural_key(name: str):
    """Sort key that orders ``y2`` before ``y10``."""
    return tuple((0, int(tok), "") if tok.isdigit() else (1, 0, tok)
                 for tok in re.split(r"(\d+)", name) if tok)


def natural_sorted(names: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(set(names), key=natural_key))


def _check_name(name: str) -> str:
    if not isinstance(name, str) or not _IDENT.match(name) or name == NOVIKOV:
        raise MalformedSpec(f"invalid name {name!r}")
    return name


@dataclass(frozen=True)
class AffineFunctional:
    """``constant + sum(coefficient * parameter)`` with exact rationals.

    Coefficients are stored sparsely (no zeros), keyed in natural name order,
    so structurally equal functionals compare and hash equal.
    """

    constant: Fraction = Fraction(0)
    coefficients: tuple[tuple[str, Fraction], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "constant", Fraction(self.constant))
        coeffs: dict[str, Fraction] = {}
        for name, c in self.coefficients:
            coeffs[_check_name(name)] = coeffs.get(name, Fraction(0)) + Fraction(c)
        object.__setattr__(self, "coefficients", tuple(
            (n, coeffs[n]) for n in sorted(coeffs, key=natural_key) if coeffs[n]))

    @classmethod
    def of(cls, constant=0, coefficients: Mapping[str, object] | None = None) -> "AffineFunctional":
        return cls(Fraction(constant), tuple((coefficients or {}).items()))

    @classmethod
    def parameter(cls, name: str) -> "AffineFunctional":
        return cls(Fraction(0), ((name, Fraction(1)),))

    @property
    def linear(self) -> dict[str, Fraction]:
        return dict(self.coefficients)

    @property
    def parameters(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.coefficients)

    def coefficient(self, name: str) -> Fraction:
        return self.linear.get(name, Fraction(0))

    def is_constant(self) -> bool:
        return not self.coefficients

    def __add__(self, other: "AffineFunctional") -> "AffineFunctional":
        if not isinstance(other, AffineFunctional):
            other = AffineFunctional(Fraction(other))
        return AffineFunctional(self.constant + other.constant,
                                self.coefficients + other.coefficients)

    __radd__ = __add__

    def __neg__(self) -> "AffineFunctional":
        return self.scale(-1)

    def __sub__(self, other: "AffineFunctional") -> "AffineFunctional":
        if not isinstance(other, AffineFunctional):
            other = AffineFunctional(Fraction(other))
        return self + (-other)

    def scale(self, factor) -> "AffineFunctional":
        factor = Fraction(factor)
        return AffineFunctional(self.constant * factor,
                                tuple((n, c * factor) for n, c in self.coefficients))

    def substitute(self, mapping: Mapping[str, "AffineFunctional"]) -> "AffineFunctional":
        out = AffineFunctional(self.constant)
        for name, c in self.coefficients:
            out = out + (mapping[name].scale(c) if name in mapping
                         else AffineFunctional(Fraction(0), ((name, c),)))
        return out

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        total = self.constant
        for name, c in self.coefficients:
            if name not in point:
                raise MissingParameter(f"no value for parameter {name!r}")
            total += c * Fraction(point[name])
        return total

    def sort_key(self):
        return (tuple((natural_key(n), c) for n, c in self.coefficients), self.constant)

    def render(self) -> str:
        parts: list[str] = []
        if self.constant:
            parts.append(str(self.constant))
        for name, c in self.coefficients:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            if parts:
                parts.append(f"{sign}{body}")
            else:
                parts.append(body if sign == "+" else f"-{body}")
        return "".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {"constant": str(self.constant),
                "coefficients": {n: str(c) for n, c in self.coefficients}}

    @classmethod
    def from_json(cls, data) -> "AffineFunctional":
        if isinstance(data, str):
            from .parsing import parse_affine
            return parse_affine(data)
        if isinstance(data, (int, Fraction)):
            return cls(Fraction(data))
        try:
            return cls.of(Fraction(data.get("constant", 0)),
                          {n: Fraction(c) for n, c in data.get("coefficients", {}).items()})
        except (AttributeError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedSpec(f"bad affine functional {data!r}: {exc}") from None


ZERO_AREA = AffineFunctional()


@dataclass(frozen=True)
class NovikovTerm:
    """One summand ``coefficient * prod(y_i^a_i) * T^area``.

    ``exponents`` is sparse (zero exponents dropped).  ``class_tags`` names
    the disk classes contributing to this term; merged terms carry the union.
    """

    coefficient: Fraction
    exponents: tuple[tuple[str, int], ...] = ()
    area: AffineFunctional = ZERO_AREA
    class_tags: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))
        exps: dict[str, int] = {}
        for name, e in self.exponents:
            if int(e) != e:
                raise MalformedSpec(f"non-integer exponent {e!r} on {name}")
            exps[_check_name(name)] = exps.get(name, 0) + int(e)
        object.__setattr__(self, "exponents", tuple(
            (n, exps[n]) for n in sorted(exps, key=natural_key) if exps[n]))
        object.__setattr__(self, "class_tags", frozenset(str(t) for t in self.class_tags))

    @classmethod
    def of(cls, coefficient, exponents: Mapping[str, int] | None = None,
           area: AffineFunctional | None = None, tags: Iterable[str] = ()) -> "NovikovTerm":
        return cls(Fraction(coefficient), tuple((exponents or {}).items()),
                   area if area is not None else ZERO_AREA, frozenset(tags))

    @property
    def monomial(self) -> dict[str, int]:
        return dict(self.exponents)

    def exponent_vector(self, variables: Sequence[str]) -> tuple[int, ...]:
        mono = self.monomial
        return tuple(mono.get(v, 0) for v in variables)

    @property
    def key(self):
        return (self.exponents, self.area)

    def evaluate_area(self, point: Mapping[str, object]) -> Fraction:
        return self.area.evaluate(point)

    def replace(self, **changes) -> "NovikovTerm":
        data = dict(coefficient=self.coefficient, exponents=self.exponents,
                    area=self.area, class_tags=self.class_tags)
        data.update(changes)
        return NovikovTerm(**data)

    def render(self) -> str:
        """Render with its own sign; the caller handles joining."""
        factors = [n if e == 1 else f"{n}^{e}" for n, e in self.exponents]
        if not self.area.is_constant() or self.area.constant:
            factors.append(f"{NOVIKOV}^{{{self.area.render()}}}")
        c = self.coefficient
        if not factors:
            return str(c)
        if c == 1:
            return "*".join(factors)
        if c == -1:
            return "-" + "*".join(factors)
        return f"{c}*" + "*".join(factors)


def evaluate_area(t: NovikovTerm, point: Mapping[str, object]) -> Fraction:
    return t.evaluate_area(point)


def _term_order(term: NovikovTerm, ordered_vars: Sequence[str]):
    vec = term.exponent_vector(ordered_vars)
    return (-sum(vec), tuple(-e for e in vec), term.area.sort_key())


@dataclass(frozen=True)
class Potential:
    """A finite Novikov-Laurent potential.

    ``variables`` and ``parameters`` are the declared (ordered) name lists;
    every term must only mention declared names.  Construction does not
    collect; call :func:`collect` for the normalized form.
    """

    variables: tuple[str, ...] = ()
    parameters: tuple[str, ...] = ()
    terms: tuple[NovikovTerm, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "parameters", tuple(self.parameters))
        object.__setattr__(self, "terms", tuple(self.terms))
        for names, what in ((self.variables, "variable"), (self.parameters, "parameter")):
            for n in names:
                _check_name(n)
            if len(set(names)) != len(names):
                raise MalformedSpec(f"duplicate {what} names in {names}")
        if set(self.variables) & set(self.parameters):
            raise MalformedSpec("a name is declared both as variable and parameter")
        var_set, par_set = set(self.variables), set(self.parameters)
        for t in self.terms:
            if not isinstance(t, NovikovTerm):
                raise MalformedSpec(f"not a term: {t!r}")
            extra = set(t.monomial) - var_set
            if extra:
                raise MalformedSpec(f"undeclared variable(s) {sorted(extra)}")
            extra = set(t.area.parameters) - par_set
            if extra:
                raise MalformedSpec(f"undeclared parameter(s) {sorted(extra)}")

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def is_normalized(self) -> bool:
        return self.terms == collect(self).terms

    def with_terms(self, terms: Iterable[NovikovTerm]) -> "Potential":
        return Potential(self.variables, self.parameters, tuple(terms))

    def tags(self) -> frozenset[str]:
        return frozenset(t for term in self.terms for t in term.class_tags)

    def render(self) -> str:
        return render(self)

    def __str__(self) -> str:
        return render(self)

    def to_json(self) -> dict:
        return {
            "variables": list(self.variables),
            "parameters": list(self.parameters),
            "terms": [
                {
                    "coefficient": str(t.coefficient),
                    "exponents": dict(t.exponents),
                    "area": t.area.to_json(),
                    "tags": sorted(t.class_tags, key=natural_key),
                }
                for t in self.terms
            ],
        }

    @classmethod
    def from_json(cls, data) -> "Potential":
        if not isinstance(data, Mapping) or "terms" not in data:
            raise MalformedSpec("potential JSON must be an object with a 'terms' list")
        try:
            terms = []
            for t in data["terms"]:
                terms.append(NovikovTerm.of(
                    Fraction(t.get("coefficient", 1)),
                    {n: int(e) for n, e in t.get("exponents", {}).items()},
                    AffineFunctional.from_json(t.get("area", 0)),
                    t.get("tags", ()),
                ))
        except (AttributeError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedSpec(f"bad term in potential JSON: {exc}") from None
        variables = data.get("variables")
        parameters = data.get("parameters")
        if variables is None:
            variables = natural_sorted(n for t in terms for n in t.monomial)
        if parameters is None:
            parameters = natural_sorted(n for t in terms for n in t.area.parameters)
        return cls(tuple(variables), tuple(parameters), tuple(terms))


def collect(p: Potential) -> Potential:
    """Merge terms with equal (exponent, area) keys and sort canonically.

    Coefficients are summed exactly, class tags united, zero terms dropped.
    """
    merged: dict = {}
    for t in p.terms:
        prev = merged.get(t.key)
        if prev is None:
            merged[t.key] = t
        else:
            merged[t.key] = prev.replace(coefficient=prev.coefficient + t.coefficient,
                                         class_tags=prev.class_tags | t.class_tags)
    ordered = natural_sorted(p.variables)
    terms = sorted((t for t in merged.values() if t.coefficient != 0),
                   key=lambda t: _term_order(t, ordered))
    return p.with_terms(terms)


def render(p: Potential) -> str:
    """Canonical text form, e.g. ``z*T^{1+u2} + z^-1*T^{1-u2}``.

    The output depends only on the collected terms, not on declaration
    order, so it is stable across runs and across equivalent inputs.
    """
    terms = collect(p).terms
    if not terms:
        return "0"
    out = terms[0].render()
    for t in terms[1:]:
        s = t.render()
        out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
    return out


def substitute_exponents(p: Potential, projection: Sequence[Sequence[int]],
                         new_variables: Sequence[str]) -> Potential:
    """Replace each exponent vector ``a`` by ``projection @ a``.

    Columns of ``projection`` follow ``p.variables`` and rows follow
    ``new_variables``; areas are untouched.  The result is collected.
    """
    new_variables = tuple(new_variables)
    if len(projection) != len(new_variables):
        raise DimensionMismatch(
            f"projection has {len(projection)} rows for {len(new_variables)} new variables")
    if any(len(row) != len(p.variables) for row in projection):
        raise DimensionMismatch(
            f"projection columns must match the {len(p.variables)} variables of the potential")
    terms = []
    for t in p.terms:
        a = t.exponent_vector(p.variables)
        b = [sum(int(x) * y for x, y in zip(row, a)) for row in projection]
        terms.append(t.replace(exponents=tuple(zip(new_variables, b))))
    return collect(Potential(new_variables, p.parameters, terms))


def substitute_parameters(p: Potential, mapping: Mapping[str, AffineFunctional],
                          new_parameters: Sequence[str] | None = None) -> Potential:
    """Rewrite areas by substituting affine functionals for parameters."""
    terms = [t.replace(area=t.area.substitute(mapping)) for t in p.terms]
    if new_parameters is None:
        present = {n for t in terms for n in t.area.parameters}
        kept = [n for n in p.parameters if n not in mapping]
        new_parameters = kept + [n for n in natural_sorted(present) if n not in kept]
    return collect(Potential(p.variables, tuple(new_parameters), terms))


def rename(p: Potential, variables: Mapping[str, str] | None = None,
           parameters: Mapping[str, str] | None = None) -> Potential:
    """Rename variables and/or parameters (names not mentioned are kept)."""
    vmap = dict(variables or {})
    pmap = dict(parameters or {})
    new_vars = tuple(vmap.get(v, v) for v in p.variables)
    new_pars = tuple(pmap.get(u, u) for u in p.parameters)
    sub = {old: AffineFunctional.parameter(new) for old, new in pmap.items()}
    terms = [t.replace(exponents=tuple((vmap.get(n, n), e) for n, e in t.exponents),
                       area=t.area.substitute(sub))
             for t in p.terms]
    return collect(Potential(new_vars, new_pars, terms))


def multiply(p: Potential, q: Potential) -> Potential:
    """Product of two potentials (exponents and areas add)."""
    variables = tuple(p.variables) + tuple(v for v in q.variables if v not in p.variables)
    parameters = tuple(p.parameters) + tuple(u for u in q.parameters if u not in p.parameters)
    terms = []
    for s in p.terms:
        for t in q.terms:
            terms.append(NovikovTerm(s.coefficient * t.coefficient,
                                     s.exponents + t.exponents,
                                     s.area + t.area,
                                     s.class_tags | t.class_tags))
    return collect(Potential(variables, parameters, terms))


def solve_constraints(parameters: Sequence[str],
                      constraints: Sequence[tuple[AffineFunctional, object]]
                      ) -> dict[str, AffineFunctional]:
    """Solve affine equations ``f(u) = value`` by exact Gaussian elimination.

    Pivots are chosen from the last declared parameter backwards, so later
    parameters are expressed through earlier ones.  Returns a map from each
    eliminated parameter to an affine functional in the free ones.
    """
    order = list(parameters)
    for f, _ in constraints:
        for n in f.parameters:
            if n not in order:
                order.append(n)
    cols = order[::-1]
    rows = []
    for f, value in constraints:
        lin = f.linear
        rows.append([lin.get(n, Fraction(0)) for n in cols] + [Fraction(value) - f.constant])
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(len(cols)):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    for row in rows[r:]:
        if row[-1] != 0:
            raise InconsistentConstraints("the level constraints have no solution")
    pivot_cols = {c for _, c in pivots}
    solution = {}
    for i, c in pivots:
        rhs = AffineFunctional(rows[i][-1], tuple(
            (cols[j], -rows[i][j]) for j in range(len(cols)) if j not in pivot_cols and rows[i][j]))
        solution[cols[c]] = rhs
    return solution


def eliminate_parameters(p: Potential,
                         constraints: Sequence[tuple[AffineFunctional, object]]) -> Potential:
    """Eliminate parameters fixed by affine constraints ``f(u) = value``.

    Free parameters stay symbolic; the eliminated ones disappear from the
    declared parameter list.
    """
    if not constraints:
        return collect(p)
    return substitute_parameters(p, solve_constraints(p.parameters, constraints))
