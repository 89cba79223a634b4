"""Print every worked example the library reproduces.

    python3 scripts/reproduce_examples.py
"""

from __future__ import annotations

from diskpot import (AffineFunctional, LiftSpec, SubtorusAction, chern_weights, classify_classes,
                     dual_newton_polytope, gz25_polytope, gz25_potential, lattice_points, lift_potential,
                     quadric_polytope, quadric_potential, quotient_potential, reduce_lift, render, toric_potential)
from diskpot.corpus import tagged_terms
from diskpot.polytope import Polytope

GZ25_ACTION = SubtorusAction(
    [[1, 0, 0, 0, 0, 0], [-1, 1, 1, 0, 0, 0], [0, -1, -1, 1, 1, 0], [0, 0, 0, -1, -1, 1]],
    [0, 0, 0, 5], [2, 2, 2, 2])


def heading(text: str) -> None:
    print(f"\n== {text}")


def cp2() -> None:
    p = Polytope([((-1, -1), -1, "0"), ((1, 0), -1, "1"), ((0, 1), -1, "2")])
    act = SubtorusAction([[1, 0]], [0], [0], variables=["z"], parameters="keep")
    heading("CP2 reduced by the first circle at level 0")
    print("W     =", render(toric_potential(p)))
    report = classify_classes(p, act)
    print(report.render(p))
    print("W_red =", render(quotient_potential(toric_potential(p), act, report)))


def gz25() -> None:
    heading("Gelfand-Zeitlin fiber of Gr(2,5) at level (2,2,2,2)")
    w = gz25_potential()
    print(f"W has {len(w)} terms:", render(w))
    report = classify_classes(gz25_polytope(), GZ25_ACTION, warn=False)
    for fv in report.non_free_faces():
        labels = sorted(gz25_polytope().facets[i].label for i in fv.face.active_facets)
        print(f"non-free face (dim {fv.face.dim}): {labels}")
    out = quotient_potential(w, GZ25_ACTION, report)
    print(f"W_red has {len(out)} terms:", render(out))


def o_minus_n() -> None:
    heading("O(-n) over CP1: lift and reduce back at nu = 2")
    for n in range(5):
        base = tagged_terms([["b1", "z*T^{u}"], ["b2", f"z^-1*T^{{1+{n}*nu-u}}"]])
        spec = LiftSpec("y2", n, AffineFunctional.parameter("u2"), chern_weights({"b1": 1, "b2": 1}, n),
                        {"z": "y1"}, {"u": "u1", "nu": "u2"})
        total = lift_potential(base, spec)
        print(f"n={n}: {render(total)}   ->   {render(reduce_lift(total, spec, 2))}")


def quadrics() -> None:
    heading("Quadric potentials and their dual polytopes")
    for n in range(2, 9):
        dual = dual_newton_polytope(quadric_polytope(n))
        line = f"n={n}: dual has {len(dual.vertices())} vertices, {len(lattice_points(dual))} lattice points"
        if n <= 6:
            line += f"; W = {render(quadric_potential(n))}"
        print(line)
    heading("Quadrics Q^n reduced to Q^2")
    for n in range(3, 7):
        over = {"beta": "semistable", **{f"f{j}": "unstable" for j in range(3, n + 1)}}
        act = SubtorusAction([[int(i == j) for i in range(n)] for j in range(2, n)], [0] * (n - 2),
                             list(range(2, n)), over, variables=["y1", "y2"], parameters="keep")
        report = classify_classes(quadric_polytope(n), act, warn=False)
        print(f"n={n}:", render(quotient_potential(quadric_potential(n), act, report)))


def main() -> None:
    cp2()
    gz25()
    o_minus_n()
    quadrics()


if __name__ == "__main__":
    main()
