"""Exact disk potentials of Lagrangian torus fibers and their GIT reductions."""

from .errors import DiskPotentialError
from .lattice import adapted_basis, hermite_normal_form, kernel_basis, smith_normal_form
from .lifting import LiftSpec, chern_weights, lift_potential, reduce_lift
from .novikov import AffineFunctional, NovikovTerm, Potential, collect, eliminate_parameters, render
from .parsing import parse_potential
from .polytope import Polytope, dual_newton_polytope, enumerate_faces, lattice_points, project_face_contains
from .potentials import gz25_polytope, gz25_potential, quadric_polytope, quadric_potential, toric_potential
from .reduction import StabilityReport, SubtorusAction, classify_classes, quotient_potential, semistable_potential

__all__ = [
    "AffineFunctional", "DiskPotentialError", "LiftSpec", "NovikovTerm", "Polytope", "Potential",
    "StabilityReport", "SubtorusAction", "adapted_basis", "chern_weights", "classify_classes", "collect",
    "dual_newton_polytope", "eliminate_parameters", "enumerate_faces", "gz25_polytope", "gz25_potential",
    "hermite_normal_form", "kernel_basis", "lattice_points", "lift_potential", "parse_potential",
    "project_face_contains", "quadric_polytope", "quadric_potential", "quotient_potential", "reduce_lift",
    "render", "semistable_potential", "smith_normal_form", "toric_potential",
]
