"""Golden corpus: one directory per case holding ``case.json`` and ``expected.txt``.

``case.json`` describes the computation (``kind`` plus inputs) and carries
``reference``, a hand transcription of the known answer in its original term
order.  ``expected.txt`` is that transcription normalized by
:func:`expected_text`; it is never produced by running the pipeline, so a
match is a genuine check.  Set ``QP_CORPUS_DIR`` to use another corpus.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping

from .errors import MalformedSpec, ParseError, UnknownCase
from .lifting import LiftSpec, chern_weights, lift_potential, reduce_lift
from .novikov import Potential, collect, eliminate_parameters, natural_sorted, render
from .parsing import parse_potential
from .polytope import Polytope, dual_newton_polytope, lattice_points
from .potentials import quadric_polytope, quadric_potential, registered_potential, toric_potential
from .reduction import (SubtorusAction, classify_classes, quotient_potential, report_from_overrides,
                        semistable_potential)

ENV_VAR = "QP_CORPUS_DIR"


def corpus_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return Path(str(resources.files("diskpot") / "corpus_data"))


def case_names(directory: Path | None = None) -> tuple[str, ...]:
    root = Path(directory) if directory is not None else corpus_dir()
    if not root.is_dir():
        return ()
    return tuple(natural_sorted(d.name for d in root.iterdir() if (d / "case.json").is_file()))


def load_case(name: str, directory: Path | None = None) -> dict:
    root = Path(directory) if directory is not None else corpus_dir()
    path = root / name / "case.json"
    if not path.is_file():
        raise UnknownCase(f"no corpus case named {name!r} under {root}")
    with open(path) as fh:
        return json.load(fh)


def tagged_terms(pairs) -> Potential:
    """Potential from ``[[tag, text], ...]``, one term per entry."""
    terms = []
    for tag, text in pairs:
        (t,) = parse_potential(text).terms
        terms.append(t.replace(class_tags=frozenset([tag])))
    variables = natural_sorted({n for t in terms for n in t.monomial})
    parameters = natural_sorted({n for t in terms for n in t.area.parameters})
    return collect(Potential(variables, parameters, terms))


def format_dual(vertices, count: int) -> str:
    pts = sorted(tuple(int(x) for x in v) for v in vertices)
    shown = " ".join("(" + ",".join(str(x) for x in v) + ")" for v in pts)
    return f"vertices: {shown}\nlattice points: {count}"


def expected_text(case: Mapping) -> str:
    """Normalize the transcription stored in ``case['reference']``."""
    ref = case["reference"]
    kind = case["kind"]
    if kind == "dual":
        return format_dual(ref["vertices"], ref["lattice_points"])
    if kind == "stability":
        unstable = ", ".join(natural_sorted(ref["unstable"]))
        return f"{render(parse_potential(ref['potential']))}\nunstable: {unstable}"
    return render(parse_potential(ref))


def _source(case: Mapping) -> tuple[Potential, Polytope | None]:
    src = case.get("source", "toric")
    poly = Polytope.from_json(case["polytope"]) if "polytope" in case else None
    if src == "toric":
        return toric_potential(poly), poly
    if src == "quadric":
        return quadric_potential(case["n"]), quadric_polytope(case["n"])
    if src == "registered":
        return registered_potential(case["name"]), poly
    if src == "inline":
        data = case["potential"]
        return (Potential.from_json(data) if isinstance(data, Mapping) else tagged_terms(data)), poly
    raise MalformedSpec(f"unknown potential source {src!r}")


def compute(case: Mapping) -> tuple[str, Potential | None, tuple[str, ...]]:
    """Run the pipeline described by a case; returns (text, potential, notes)."""
    kind = case["kind"]
    notes: tuple[str, ...] = ()
    if kind == "toric":
        w, _ = _source(case)
        return render(w), w, notes
    if kind == "quadric":
        w = quadric_potential(case["n"])
        return render(w), w, notes
    if kind == "dual":
        dual = dual_newton_polytope(quadric_polytope(case["n"]))
        return format_dual(dual.vertices(), len(lattice_points(dual))), None, notes
    if kind in ("stability", "reduce"):
        w, poly = _source(case)
        act = SubtorusAction.from_json(case["action"])
        if poly is not None:
            report = classify_classes(poly, act, warn=False)
            notes = tuple(f"non-free face {sorted(poly.facets[i].label for i in fv.face.active_facets)}"
                          for fv in report.non_free_faces())
        else:
            report = report_from_overrides(act)
        if kind == "reduce":
            out = quotient_potential(w, act, report)
            return render(out), out, notes
        ss = eliminate_parameters(semistable_potential(w, report), act.constraints(w.parameters))
        unstable = ", ".join(natural_sorted(report.unstable()))
        return f"{render(ss)}\nunstable: {unstable}", ss, notes
    if kind in ("lift", "roundtrip"):
        base = tagged_terms(case["base_terms"])
        spec_data = dict(case["spec"])
        if "relation" in case:
            spec_data["weights"] = chern_weights(case["relation"], spec_data.get("degree", 0))
        spec = LiftSpec.from_json(spec_data)
        total = lift_potential(base, spec)
        if kind == "lift":
            return render(total), total, notes
        back = reduce_lift(total, spec, Fraction(case["level"]))
        return render(back), back, notes
    raise MalformedSpec(f"unknown case kind {kind!r}")


def _items(text: str) -> list[str]:
    try:
        return [t.render() for t in parse_potential(text).terms]
    except (ParseError, MalformedSpec):
        return text.splitlines()


def term_diff(computed: str, expected: str) -> list[str]:
    """Lines ``- term`` (expected only) and ``+ term`` (computed only)."""
    out = []
    for c_line, e_line in zip(_split(computed), _split(expected)):
        got, want = _items(c_line), _items(e_line)
        line_diff = [f"- {t}" for t in want if t not in got] + [f"+ {t}" for t in got if t not in want]
        out += line_diff
        if not line_diff and c_line != e_line:
            out.append(f"- {e_line}")
            out.append(f"+ {c_line}")
    if len(_split(computed)) != len(_split(expected)):
        out.append(f"line count {len(_split(computed))} != {len(_split(expected))}")
    return out


def _split(text: str) -> list[str]:
    return text.split("\n")


@dataclass(frozen=True)
class CaseResult:
    name: str
    computed: str
    expected: str
    match: bool
    potential: Potential | None = None
    notes: tuple[str, ...] = ()
    error: str | None = None

    def diff(self) -> list[str]:
        if self.error:
            return [self.error]
        return [] if self.match else term_diff(self.computed, self.expected)


def run_case(name: str, directory: Path | None = None) -> CaseResult:
    root = Path(directory) if directory is not None else corpus_dir()
    case = load_case(name, root)
    expected = (root / name / "expected.txt").read_text().rstrip("\n")
    text, pot, notes = compute(case)
    return CaseResult(name, text, expected, text == expected, pot, notes)


@dataclass
class VerifyReport:
    results: list[CaseResult] = field(default_factory=list)
    directory: Path | None = None

    @property
    def failures(self) -> list[CaseResult]:
        return [r for r in self.results if not r.match]

    @property
    def suspicious(self) -> bool:
        return not self.results

    @property
    def ok(self) -> bool:
        return not self.failures and not self.suspicious

    def render(self) -> str:
        lines = []
        for r in self.results:
            lines.append(f"{'PASS' if r.match else 'FAIL'} {r.name}")
            lines += [f"    {d}" for d in r.diff()]
        if self.suspicious:
            lines.append(f"WARNING: no cases found in {self.directory}")
        lines.append(f"{len(self.results) - len(self.failures)}/{len(self.results)} cases passed")
        return "\n".join(lines)


def _safe_run(name: str, root: Path) -> CaseResult:
    try:
        return run_case(name, root)
    except Exception as exc:  # reported per case, never aborts the run
        return CaseResult(name, "", "", False, error=f"{type(exc).__name__}: {exc}")


def verify_all(directory: Path | None = None, *, workers: int = 1) -> VerifyReport:
    root = Path(directory) if directory is not None else corpus_dir()
    names = case_names(root)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda n: _safe_run(n, root), names))
    else:
        results = [_safe_run(n, root) for n in names]
    return VerifyReport(results, root)
