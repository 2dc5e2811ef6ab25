"""Moy-Prasad gradings, Chevalley algebras and Hilbert-Mumford stability over finite fields."""

from .chevalley import ChevalleyAlgebra, rootgroup_action, structure_constants
from .errors import (
    BudgetExhausted,
    DivisibilityViolation,
    GroupTooLarge,
    IntegralityViolation,
    InvalidRootSystemType,
    NotInAlcove,
)
from .fields import GF, FiniteField, field_for_order
from .g2case import classify_stable, delta_int, identity_check
from .mpgrading import compute_mp_quotient, dual_quotient_rep, stability_survey, vinberg_grading
from .rootdata import ApartmentPoint, RootSystemType, build_root_system, kac_coordinates, reduce_to_alcove
from .stability import find_destabilizer, negative_weight_set, torus_semistable, torus_stable
from .weyl import generate_weyl, regular_elliptic_orders

__version__ = "0.1.0"
