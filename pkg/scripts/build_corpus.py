"""Regenerate the golden corpus under src/diskpot/corpus_data.

Every ``reference`` field below is a hand transcription of a known display
(family members are instantiated from the general-n display).  The expected
files are normalized transcriptions, not pipeline output.

    python3 scripts/build_corpus.py [--out DIR]
"""

from __future__ import annotations

import argparse
import json
import shutil
from pathlib import Path

from diskpot.corpus import expected_text
from diskpot.potentials import gz25_polytope

ROOT = Path(__file__).resolve().parent.parent / "src" / "diskpot" / "corpus_data"

CP2_POLYTOPE = {"dim": 2, "facets": [
    {"normal": [-1, -1], "offset": "-1", "label": "0"},
    {"normal": [1, 0], "offset": "-1", "label": "1"},
    {"normal": [0, 1], "offset": "-1", "label": "2"},
]}
CP2_ACTION = {"matrix": [[1, 0]], "offsets": ["0"], "level": ["0"],
              "variables": ["z"], "parameters": "keep"}

GZ25_ACTION = {
    "matrix": [[1, 0, 0, 0, 0, 0], [-1, 1, 1, 0, 0, 0], [0, -1, -1, 1, 1, 0], [0, 0, 0, -1, -1, 1]],
    "offsets": ["0", "0", "0", "5"],
    "level": ["2", "2", "2", "2"],
}

Q2_DISPLAY = "y2^-1*T^{2-u2} + y1^-1*y2*T^{u2-u1} + 2*y2*T^{u2} + y1*y2*T^{u1+u2}"

LIFT_LEVEL = 2


def quadric_display(n: int) -> str:
    terms = [f"y{n}^-1*T^{{{n}-u{n}}}"]
    terms += [f"y{j - 1}^-1*y{j}*T^{{u{j}-u{j - 1}}}" for j in range(n, 2, -1)]
    terms += ["y1^-1*y2*T^{u2-u1}", "2*y2*T^{u2}", "y1*y2*T^{u1+u2}"]
    return " + ".join(terms)


def quadric_dual_vertices(n: int) -> list[list[int]]:
    def e(*pairs):
        v = [0] * n
        for i, c in pairs:
            v[i - 1] = c
        return v
    out = [e((1, -1), (2, 1)), e((1, 1), (2, 1))]
    out += [e((j, -1), (j + 1, 1)) for j in range(2, n)]
    out.append(e((n, -1)))
    return out


def quadric_reduce_action(n: int) -> dict:
    overrides = {"beta": "semistable"}
    overrides.update({f"f{j}": "unstable" for j in range(3, n + 1)})
    return {
        "matrix": [[int(i == j) for i in range(n)] for j in range(2, n)],
        "offsets": ["0"] * (n - 2),
        "level": [str(j - 1) for j in range(3, n + 1)],
        "overrides": overrides,
        "variables": ["y1", "y2"],
        "parameters": "keep",
    }


def lift_inputs(n: int) -> dict:
    return {
        "base_terms": [["b1", "z*T^{u}"], ["b2", f"z^-1*T^{{1+{n}*nu-u}}"]],
        "relation": {"b1": 1, "b2": 1},
        "spec": {"fiber_variable": "y2", "degree": n, "fiber_class_area": "u2",
                 "variable_map": {"z": "y1"}, "parameter_map": {"u": "u1", "nu": "u2"}},
    }


def cases() -> dict[str, dict]:
    out = {
        "cp2_toric": {"kind": "toric", "polytope": CP2_POLYTOPE,
                      "reference": "y1*T^{1+u1} + y2*T^{1+u2} + y1^-1*y2^-1*T^{1-u1-u2}"},
        "cp2_stability": {"kind": "stability", "polytope": CP2_POLYTOPE, "action": CP2_ACTION,
                          "reference": {"potential": "y2*T^{1+u2} + y1^-1*y2^-1*T^{1-0-u2}",
                                    "unstable": ["1"]}},
        "cp2_reduce": {"kind": "reduce", "polytope": CP2_POLYTOPE, "action": CP2_ACTION,
                       "reference": "z*T^{1+u2} + z^-1*T^{1-u2}"},
        "gz25_reduce": {"kind": "reduce", "source": "registered", "name": "gz25",
                        "polytope": gz25_polytope().to_json(), "action": GZ25_ACTION,
                        "reference": "z2*T^{v2-1} + z1*z2^-1*T^{2+v1-v2} + 2*z1^-1*T^{2-v1}"
                                 " + 2*z2^-1*T^{3-v2} + z1^-1*z2*T^{v2-v1} + z1*T^{v1}"
                                 " + z1^-1*z2^-1*T^{4-v1-v2}"},
    }
    for n in range(5):
        out[f"o_n_lift_n{n}"] = {"kind": "lift", **lift_inputs(n),
                                 "reference": f"y1*T^{{u1}} + y1^-1*y2^{n}*T^{{1+{n}*u2-u1}}"}
        out[f"o_n_roundtrip_n{n}"] = {"kind": "roundtrip", **lift_inputs(n), "level": str(LIFT_LEVEL),
                                      "reference": f"z*T^{{u}} + z^-1*T^{{{1 + n * LIFT_LEVEL}-u}}"}
    for n in range(2, 7):
        out[f"quadric_potential_n{n}"] = {"kind": "quadric", "n": n, "reference": quadric_display(n)}
    for n in range(2, 9):
        out[f"quadric_dual_count_n{n}"] = {"kind": "dual", "n": n,
                                           "reference": {"vertices": quadric_dual_vertices(n),
                                                     "lattice_points": n + 3}}
    for n in range(3, 7):
        out[f"quadric_n{n}_reduce"] = {"kind": "reduce", "source": "quadric", "n": n,
                                       "action": quadric_reduce_action(n), "reference": Q2_DISPLAY}
    return out


def write(root: Path) -> None:
    if root.exists():
        shutil.rmtree(root)
    for name, case in cases().items():
        d = root / name
        d.mkdir(parents=True)
        (d / "case.json").write_text(json.dumps(case, indent=2) + "\n")
        (d / "expected.txt").write_text(expected_text(case) + "\n")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT)
    args = ap.parse_args()
    write(args.out)
    print(f"wrote {len(cases())} cases to {args.out}")


if __name__ == "__main__":
    main()
