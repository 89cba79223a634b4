"""Facet-presented rational polytopes at desk scale.

A polytope is ``{u : <normal_i, u> >= offset_i}`` with primitive integer
normals.  Vertex enumeration solves every ``m``-subset of facet equations
exactly; all geometry is over ``Fraction``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import lattice
from ._lp import nonnegative_solution
from .errors import (
    DegenerateHull,
    DimensionMismatch,
    Empty,
    MalformedSpec,
    NotFullDimensional,
    Unbounded,
)

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]
    offset: Fraction
    label: str

    def value(self, u: Sequence) -> Fraction:
        """Slack ``<normal, u> - offset``; non-negative inside the polytope."""
        return sum((n * x for n, x in zip(self.normal, u)), Fraction(0)) - self.offset


def solve_square(a: Sequence[Sequence], b: Sequence) -> Point | None:
    """Unique solution of a square system over Q, or None if singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(m[i][n] / m[i][i] for i in range(n))


def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]]
    return _rational_rank(diffs)


def _rational_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def convex_hull_contains(points: Sequence[Sequence], target: Sequence) -> bool:
    """Exact test ``target in conv(points)`` via a feasibility LP."""
    if not points:
        return False
    if any(len(p) != len(target) for p in points):
        raise DimensionMismatch("points and target have different dimensions")
    a = [[Fraction(1)] * len(points)]
    a += [[Fraction(p[k]) for p in points] for k in range(len(target))]
    return nonnegative_solution(a, [1, *target]) is not None


class Polytope:
    """``{u in R^m : <normal_i, u> >= offset_i}``.

    By default construction checks that the polytope is nonempty, bounded and
    full-dimensional.  Pass ``bounded=False`` for noncompact moment images
    (only the normals are validated then, and vertex queries raise Unbounded).
    """

    def __init__(self, facets: Iterable, dim: int | None = None,
                 labels: Sequence[str] | None = None, bounded: bool = True):
        parsed = []
        for i, f in enumerate(facets):
            if isinstance(f, Facet):
                normal, offset, label = f.normal, f.offset, f.label
            else:
                normal, offset = f[0], f[1]
                label = f[2] if len(f) > 2 else None
            if labels is not None:
                label = labels[i]
            normal = tuple(int(x) for x in normal)
            parsed.append(Facet(normal, Fraction(offset), str(i) if label is None else str(label)))
        if not parsed:
            raise MalformedSpec("a polytope needs at least one facet")
        dim = len(parsed[0].normal) if dim is None else dim
        for f in parsed:
            if len(f.normal) != dim:
                raise MalformedSpec(f"facet {f.label} normal {f.normal} is not in R^{dim}")
            g = math.gcd(*f.normal)
            if g == 0:
                raise MalformedSpec(f"facet {f.label} has zero normal")
            if g != 1:
                raise MalformedSpec(f"facet {f.label} normal {f.normal} is not primitive")
        if len({f.label for f in parsed}) != len(parsed):
            raise MalformedSpec("facet labels must be distinct")
        self.dim = dim
        self.facets: tuple[Facet, ...] = tuple(parsed)
        self.bounded = bounded
        self._vertices: tuple[Point, ...] | None = None
        if bounded:
            self._validate()

    def __repr__(self):
        return f"Polytope(dim={self.dim}, facets={len(self.facets)}, bounded={self.bounded})"

    def __eq__(self, other):
        return (isinstance(other, Polytope) and self.dim == other.dim
                and set((f.normal, f.offset) for f in self.facets)
                == set((f.normal, f.offset) for f in other.facets))

    def __hash__(self):
        return hash(frozenset((f.normal, f.offset) for f in self.facets))

    @property
    def normals(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.normal for f in self.facets)

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(f.label for f in self.facets)

    def facet_index(self, label: str) -> int:
        return self.labels.index(label)

    def contains(self, u: Sequence) -> bool:
        return all(f.value(u) >= 0 for f in self.facets)

    def _validate(self):
        m = self.dim
        # nonempty: N x >= offset with x free  <=>  N p - N q - s = offset, p, q, s >= 0
        a = [list(f.normal) + [-x for x in f.normal] + [-int(i == j) for j in range(len(self.facets))]
             for i, f in enumerate(self.facets)]
        if nonnegative_solution(a, [f.offset for f in self.facets]) is None:
            raise Empty("the facet inequalities have no common solution")
        # bounded: normals positively span R^m <=> rank m and some y > 0 with N^T y = 0
        nt = lattice.transpose(self.normals)
        shift = [-sum(row) for row in nt]
        if lattice.rank(self.normals) < m or nonnegative_solution(nt, shift) is None:
            raise Unbounded("the facet normals do not positively span; the polyhedron is unbounded")
        verts = self._enumerate_vertices()
        if affine_rank(verts) < m:
            raise NotFullDimensional(f"vertices span an affine space of dimension {affine_rank(verts)} < {m}")
        self._vertices = verts

    def _enumerate_vertices(self) -> tuple[Point, ...]:
        found = set()
        for subset in itertools.combinations(self.facets, self.dim):
            u = solve_square([f.normal for f in subset], [f.offset for f in subset])
            if u is not None and self.contains(u):
                found.add(u)
        return tuple(sorted(found))

    def vertices(self) -> tuple[Point, ...]:
        if not self.bounded:
            raise Unbounded("vertex enumeration needs a bounded polytope")
        if self._vertices is None:
            self._validate()
        return self._vertices

    def active_facets(self, u: Sequence) -> frozenset[int]:
        return frozenset(i for i, f in enumerate(self.facets) if f.value(u) == 0)

    def interior_point(self) -> Point:
        """Barycenter of the vertices."""
        verts = self.vertices()
        return tuple(sum(v[k] for v in verts) / len(verts) for k in range(self.dim))

    def translated(self, shift: Sequence) -> "Polytope":
        return Polytope([(f.normal, f.offset + sum(n * Fraction(s) for n, s in zip(f.normal, shift)), f.label)
                         for f in self.facets], self.dim, bounded=self.bounded)

    def transformed(self, u: Sequence[Sequence[int]]) -> "Polytope":
        """Image under the unimodular map ``x -> U x``."""
        uinv = lattice.unimodular_inverse(u)
        return Polytope([(lattice.matvec(lattice.transpose(uinv), f.normal), f.offset, f.label)
                         for f in self.facets], self.dim, bounded=self.bounded)

    @classmethod
    def from_vertices(cls, points: Iterable[Sequence]) -> "Polytope":
        """Facet presentation of ``conv(points)`` (brute force over m-subsets)."""
        pts = sorted({tuple(Fraction(x) for x in p) for p in points})
        if not pts:
            raise DegenerateHull("no points")
        m = len(pts[0])
        if affine_rank(pts) < m:
            raise DegenerateHull(f"points span an affine space of dimension {affine_rank(pts)} < {m}")
        facets = {}
        for subset in itertools.combinations(pts, m):
            base = subset[0]
            diffs = [[x - y for x, y in zip(p, base)] for p in subset[1:]]
            normal = _hyperplane_normal(diffs, m)
            if normal is None:
                continue
            vals = [sum(n * x for n, x in zip(normal, p)) for p in pts]
            off = sum(n * x for n, x in zip(normal, base))
            if all(v >= off for v in vals):
                pass
            elif all(v <= off for v in vals):
                normal, off = tuple(-n for n in normal), -off
            else:
                continue
            facets[normal] = off
        return cls([(n, facets[n]) for n in sorted(facets)], m)

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "facets": [{"normal": list(f.normal), "offset": str(f.offset), "label": f.label}
                           for f in self.facets],
                **({} if self.bounded else {"bounded": False})}

    @classmethod
    def from_json(cls, data: Mapping, allow_unbounded: bool = False) -> "Polytope":
        try:
            facets = [(f["normal"], Fraction(f["offset"]), f.get("label")) for f in data["facets"]]
            dim = int(data.get("dim", len(facets[0][0]) if facets else 0))
        except (KeyError, TypeError, ValueError, ZeroDivisionError, IndexError) as exc:
            raise MalformedSpec(f"bad polytope JSON: {exc!r}") from None
        if not data.get("bounded", True):
            if not allow_unbounded:
                raise Unbounded("polytope is marked unbounded; pass allow_unbounded")
            return cls(facets, dim, bounded=False)
        try:
            return cls(facets, dim)
        except Unbounded:
            if not allow_unbounded:
                raise
            return cls(facets, dim, bounded=False)


def _hyperplane_normal(diffs: list[list[Fraction]], m: int) -> tuple[int, ...] | None:
    """Primitive integer normal to the span of ``diffs`` (None unless corank 1)."""
    if not diffs:  # m == 1: any single point is a facet of a segment
        return (1,)
    den = 1
    for row in diffs:
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
    rows = [[int(x * den) for x in row] for row in diffs]
    ker = lattice.kernel_basis(rows, m)
    if len(ker) != 1:
        return None
    return ker[0]


@dataclass(frozen=True)
class Face:
    """A nonempty face: the facets active on it and its vertices."""

    active_facets: frozenset[int]
    vertices: tuple[Point, ...]
    normals: tuple[tuple[int, ...], ...] = ()

    @property
    def dim(self) -> int:
        return affine_rank(self.vertices)


def enumerate_faces(p: Polytope) -> list[Face]:
    """All nonempty faces, including ``p`` itself, largest first."""
    verts = p.vertices()
    incidence = [frozenset(k for k, v in enumerate(verts) if f.value(v) == 0) for f in p.facets]
    everything = frozenset(range(len(verts)))

    def closure(vset):
        return frozenset(i for i, inc in enumerate(incidence) if vset <= inc)

    seen = {everything}
    frontier = [everything]
    while frontier:
        nxt = []
        for vset in frontier:
            for inc in incidence:
                sub = vset & inc
                if sub and sub != vset and sub not in seen:
                    seen.add(sub)
                    nxt.append(sub)
        frontier = nxt
    faces = [_face(p, closure(s), tuple(verts[k] for k in sorted(s))) for s in seen]
    faces.sort(key=lambda f: (-f.dim, sorted(f.active_facets), f.vertices))
    return faces


def _face(p: Polytope, active: Iterable[int], vertices: tuple[Point, ...]) -> Face:
    active = frozenset(active)
    return Face(active, vertices, tuple(p.facets[i].normal for i in sorted(active)))


def facet_face(p: Polytope, index: int) -> Face:
    verts = p.vertices()
    on = tuple(v for v in verts if p.facets[index].value(v) == 0)
    return _face(p, (i for i, f in enumerate(p.facets) if all(f.value(v) == 0 for v in on)), on)


def vertex_face(p: Polytope, vertex: Sequence) -> Face:
    v = tuple(Fraction(x) for x in vertex)
    if v not in p.vertices():
        raise ValueError(f"{vertex} is not a vertex")
    return _face(p, p.active_facets(v), (v,))


def project_face_contains(face: Face, a: Sequence[Sequence[int]], c: Sequence, level: Sequence) -> bool:
    """Decide exactly whether ``level`` lies in ``{A u + c : u in face}``."""
    if not face.vertices:
        return False
    m = len(face.vertices[0])
    if any(len(row) != m for row in a):
        raise DimensionMismatch(f"action matrix must have {m} columns")
    if len(c) != len(a) or len(level) != len(a):
        raise DimensionMismatch("offsets and level must have one entry per action row")
    images = {tuple(sum(Fraction(x) * y for x, y in zip(row, v)) + Fraction(ci)
                    for row, ci in zip(a, c)) for v in face.vertices}
    return convex_hull_contains(sorted(images), [Fraction(x) for x in level])


def dual_newton_polytope(p: Polytope) -> Polytope:
    """Convex hull of the facet normals, as a facet-presented polytope."""
    return Polytope.from_vertices(p.normals)


def lattice_points(p: Polytope) -> list[tuple[int, ...]]:
    """Integer points of ``p`` by an exact bounding-box scan."""
    verts = p.vertices()
    lo = [math.ceil(min(v[k] for v in verts)) for k in range(p.dim)]
    hi = [math.floor(max(v[k] for v in verts)) for k in range(p.dim)]
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    return [pt for pt in itertools.product(*ranges) if p.contains(pt)]


def face_stabilizer_lattice(face: Face) -> lattice.IntMatrix:
    """Saturation of the lattice spanned by the normals active on ``face``.

    These are the isotropy directions of the torus over the relative
    interior of the face; the full polytope gives the empty basis.
    """
    if not face.normals:
        return ()
    return lattice.saturation(face.normals, len(face.normals[0]))
