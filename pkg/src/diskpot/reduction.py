"""Reduction of disk potentials by a subtorus action.

Pipeline: classify the Maslov-two classes at a moment level, keep the
semistable terms, push exponents through the quotient ``Z^m -> Z^m / ker``
and eliminate the action parameters fixed by the level.

The stability test is combinatorial: a toric class (facet) is semistable iff
the level lies in the image of its facet under the subtorus moment map.  For
non-toric classes the verdict has to be supplied through ``overrides``.  An
unstable toric class is assumed to be fully excluded (its basic disk meets
the unstable divisor); that cannot be checked combinatorially.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import lattice
from ._lp import nonnegative_solution
from .errors import DimensionMismatch, MalformedSpec, MissingVerdict
from .novikov import AffineFunctional, Potential, collect, eliminate_parameters, rename, substitute_exponents
from .polytope import Face, Polytope, convex_hull_contains, enumerate_faces, face_stabilizer_lattice, facet_face

SEMISTABLE = "semistable"
UNSTABLE = "unstable"
KEEP = "keep"


class FreenessWarning(UserWarning):
    """A face meeting the level has a nontrivial stabilizer in the subtorus."""


@dataclass(frozen=True)
class SubtorusAction:
    """Moment map ``u -> A u + c`` of a subtorus, reduced at ``level``.

    The rows of ``matrix`` generate the kernel of the induced map on first
    homology of the fiber, in the same coordinates as the exponents.
    ``variables`` names the quotient Laurent variables (default z1, z2, ...);
    ``parameters`` names the surviving action parameters (default v1, v2,
    ..., or the string ``"keep"`` to leave them unchanged).
    """

    matrix: lattice.IntMatrix
    offsets: tuple[Fraction, ...]
    level: tuple[Fraction, ...]
    overrides: Mapping[str, str] = field(default_factory=dict)
    variables: tuple[str, ...] | None = None
    parameters: tuple[str, ...] | str | None = None

    def __post_init__(self):
        a = lattice.as_matrix(self.matrix)
        object.__setattr__(self, "matrix", a)
        object.__setattr__(self, "offsets", tuple(Fraction(x) for x in self.offsets))
        object.__setattr__(self, "level", tuple(Fraction(x) for x in self.level))
        if len(self.offsets) != len(a) or len(self.level) != len(a):
            raise DimensionMismatch("offsets and level need one entry per matrix row")
        for tag, verdict in self.overrides.items():
            if verdict not in (SEMISTABLE, UNSTABLE):
                raise MalformedSpec(f"override for {tag!r} must be 'semistable' or 'unstable'")
        object.__setattr__(self, "overrides", dict(self.overrides))
        if self.variables is not None:
            object.__setattr__(self, "variables", tuple(self.variables))
        if self.parameters is not None and self.parameters != KEEP:
            object.__setattr__(self, "parameters", tuple(self.parameters))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    @property
    def ambient_dim(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def constraints(self, parameters: Sequence[str]) -> list[tuple[AffineFunctional, Fraction]]:
        """Level equations ``<A_k, u> + c_k = level_k`` over ``parameters``."""
        return [(AffineFunctional(c, tuple(zip(parameters, row))), nu)
                for row, c, nu in zip(self.matrix, self.offsets, self.level)]

    def to_json(self) -> dict:
        out = {"matrix": [list(r) for r in self.matrix],
               "offsets": [str(x) for x in self.offsets],
               "level": [str(x) for x in self.level]}
        if self.overrides:
            out["overrides"] = dict(self.overrides)
        if self.variables is not None:
            out["variables"] = list(self.variables)
        if self.parameters is not None:
            out["parameters"] = self.parameters if self.parameters == KEEP else list(self.parameters)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "SubtorusAction":
        try:
            matrix = [[int(x) for x in row] for row in data["matrix"]]
            offsets = [Fraction(x) for x in data.get("offsets", [0] * len(matrix))]
            level = [Fraction(x) for x in data["level"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise MalformedSpec(f"bad action JSON: {exc!r}") from None
        return cls(matrix, offsets, level, dict(data.get("overrides", {})),
                   data.get("variables"), data.get("parameters"))


@dataclass(frozen=True)
class FaceVerdict:
    face: Face
    meets_level: bool
    free: bool | None = None
    stabilizer: lattice.IntMatrix = ()
    torsion: tuple[int, ...] = ()
    meets_relative_interior: bool = False

    @property
    def verdict(self) -> str:
        return SEMISTABLE if self.meets_level else UNSTABLE


@dataclass(frozen=True)
class StabilityReport:
    """Per-class verdicts plus per-face level and freeness data."""

    verdicts: Mapping[str, str]
    faces: tuple[FaceVerdict, ...] = ()
    level_meets_interior: bool | None = None

    def semistable(self) -> tuple[str, ...]:
        return tuple(t for t, v in self.verdicts.items() if v == SEMISTABLE)

    def unstable(self) -> tuple[str, ...]:
        return tuple(t for t, v in self.verdicts.items() if v == UNSTABLE)

    def non_free_faces(self) -> tuple[FaceVerdict, ...]:
        return tuple(f for f in self.faces if f.meets_level and not f.free)

    @property
    def all_relevant_free(self) -> bool:
        return not self.non_free_faces()

    def render(self, polytope: Polytope | None = None) -> str:
        lines = []
        for tag, verdict in self.verdicts.items():
            kind = "facet" if polytope is not None and tag in polytope.labels else "class"
            lines.append(f"{kind} {tag}: {verdict}")
        if self.level_meets_interior is not None:
            lines.append(f"level meets interior: {str(self.level_meets_interior).lower()}")
        for fv in self.faces:
            if not fv.meets_level:
                continue
            if fv.free:
                continue
            lines.append(f"warning: face {sorted(fv.face.active_facets)} has stabilizer "
                         f"{[list(v) for v in fv.stabilizer]} torsion {list(fv.torsion)}")
        return "\n".join(lines)


def _freeness(action_rows: lattice.IntMatrix, stab: lattice.IntMatrix, dim: int):
    """(free, continuous stabilizer basis, torsion) for G meeting a face torus."""
    if not stab:
        return True, (), ()
    stacked = tuple(action_rows) + tuple(stab)
    factors = lattice.invariant_factors(stacked)
    torsion = tuple(x for x in factors if x != 1)
    if len(factors) == len(stacked):
        return not torsion, (), torsion
    # combinations a.A = b.S give the common directions
    coeffs = lattice.kernel_basis(lattice.transpose(stacked))
    common = [lattice.matvec(lattice.transpose(action_rows), k[:len(action_rows)]) for k in coeffs]
    return False, lattice.saturation(common, dim), torsion


def _image(act: SubtorusAction, v) -> tuple[Fraction, ...]:
    return tuple(sum((y * x for x, y in zip(row, v) if x), c) for row, c in zip(act.matrix, act.offsets))


def _level_in_interior(images: list[tuple[Fraction, ...]], level: Sequence[Fraction]) -> bool:
    # relative interior of conv(images): level = sum x_i p_i / sum x_i with every x_i >= 1
    r = len(level)
    a = [[p[k] - level[k] for p in images] for k in range(r)]
    b = [-sum(row) for row in a]
    return nonnegative_solution(a, b) is not None


def classify_classes(p: Polytope, act: SubtorusAction, *, warn: bool = True) -> StabilityReport:
    """Stability verdict for each facet class of ``p`` at the action's level.

    A facet is semistable iff the level lies in the image of that facet.
    Every face meeting the level also gets a freeness verdict; faces with a
    nontrivial stabilizer trigger a :class:`FreenessWarning` (advisory: the
    toric test ignores non-toric fibers that can kill isotropy).
    Overrides replace computed verdicts and may add non-facet classes.
    """
    if act.ambient_dim != p.dim:
        raise DimensionMismatch(f"action has {act.ambient_dim} columns, polytope has dimension {p.dim}")
    faces = enumerate_faces(p)
    image = {v: _image(act, v) for v in p.vertices()}
    verdicts_by_face = []
    missed: list[frozenset[int]] = []
    for f in faces:
        # a subface of a face missing the level misses it too
        if any(m <= f.active_facets for m in missed):
            verdicts_by_face.append(FaceVerdict(f, False))
            continue
        images = sorted({image[v] for v in f.vertices})
        if convex_hull_contains(images, act.level):
            free, stab, torsion = _freeness(act.matrix, face_stabilizer_lattice(f), p.dim)
            inner = _level_in_interior(images, act.level)
            verdicts_by_face.append(FaceVerdict(f, True, free, stab, torsion, inner))
        else:
            missed.append(f.active_facets)
            verdicts_by_face.append(FaceVerdict(f, False))
    meets_by_active = {fv.face.active_facets: fv.meets_level for fv in verdicts_by_face}
    facet_verdict = {}
    for i, facet in enumerate(p.facets):
        meets = meets_by_active[facet_face(p, i).active_facets]
        facet_verdict[facet.label] = SEMISTABLE if meets else UNSTABLE
    facet_verdict.update(act.overrides)
    report = StabilityReport(facet_verdict, tuple(verdicts_by_face), verdicts_by_face[0].meets_relative_interior)
    if warn:
        for fv in report.non_free_faces():
            warnings.warn(
                f"subtorus does not act freely over face with active facets "
                f"{sorted(p.facets[i].label for i in fv.face.active_facets)}",
                FreenessWarning, stacklevel=2)
    return report


def report_from_overrides(act: SubtorusAction) -> StabilityReport:
    """Report built only from user-supplied verdicts (non-toric inputs)."""
    return StabilityReport(dict(act.overrides))


def _term_is_semistable(tags, report: StabilityReport) -> bool:
    if not tags:
        raise MissingVerdict("term has no class tag")
    verdicts = set()
    for t in tags:
        if t not in report.verdicts:
            raise MissingVerdict(f"no stability verdict for class {t!r}")
        verdicts.add(report.verdicts[t])
    if len(verdicts) > 1:
        raise ValueError(f"merged term mixes semistable and unstable classes {sorted(tags)}")
    return verdicts == {SEMISTABLE}


def semistable_potential(w: Potential, report: StabilityReport) -> Potential:
    """Drop the terms whose classes are unstable."""
    return w.with_terms(t for t in w.terms if _term_is_semistable(t.class_tags, report))


def _check_projection(proj, basis: lattice.AdaptedBasis):
    proj = lattice.as_matrix(proj)
    s = basis.dim - basis.rank
    if len(proj) != s or any(len(r) != basis.dim for r in proj):
        raise DimensionMismatch(f"projection must be {s}x{basis.dim}")
    for k in basis.kernel_basis:
        if any(lattice.matvec(proj, k)):
            raise ValueError("projection does not annihilate the kernel")
    if s and lattice.invariant_factors(proj) != (1,) * s:
        raise ValueError("projection is not surjective onto Z^s")
    return proj


def quotient_potential(w: Potential, act: SubtorusAction, report: StabilityReport | None = None,
                       *, projection: Sequence[Sequence[int]] | None = None) -> Potential:
    """Disk potential of the reduced torus: ``W^ss`` restricted to ``ker(q_*)``.

    The level constraints eliminate parameters, exponents go through the
    complement projection of the adapted basis (or an explicit
    ``projection`` with the same kernel), and survivors are renamed.
    """
    m = len(w.variables)
    if act.ambient_dim != m or len(w.parameters) != m:
        raise DimensionMismatch(
            f"action has {act.ambient_dim} columns; potential has {m} variables "
            f"and {len(w.parameters)} parameters")
    if report is None:
        report = report_from_overrides(act)
    ss = semistable_potential(w, report)
    # elimination commutes with the exponent change; doing it first reports
    # contradictory levels before the basis complains about dependent rows
    ss = eliminate_parameters(ss, act.constraints(w.parameters))
    basis = lattice.adapted_basis(act.matrix, m)
    proj = basis.complement_projection if projection is None else _check_projection(projection, basis)
    s = len(proj)
    names = act.variables or tuple(f"z{i}" for i in range(1, s + 1))
    if len(names) != s:
        raise DimensionMismatch(f"{len(names)} quotient variable names for rank {s}")
    reduced = substitute_exponents(ss, proj, names)
    survivors = reduced.parameters
    if act.parameters == KEEP:
        return collect(reduced)
    new = act.parameters or tuple(f"v{i}" for i in range(1, len(survivors) + 1))
    if len(new) != len(survivors):
        raise DimensionMismatch(f"{len(new)} parameter names for survivors {survivors}")
    return rename(reduced, parameters=dict(zip(survivors, new)))
