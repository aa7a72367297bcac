"""One-parameter families of cyclic cubic fields from polynomial pairs (f, g).

A pair with (f^3 + g^3 + 1)/(f g) = lam integral gives the cubic
X^3 + aX^2 + lam X - 1, a = 3(f^2 + g^2 - fg) - lam(f + g), whose roots are
units permuted by a fractional linear map. The package checks the
condition, computes field discriminants through Kummer theory over Z[w],
certifies fundamental units by regulator bounds, and iterates the map that
turns one family into the next.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .discriminant import DiscriminantReport, decide_three, disc_Bn_closed_form, disc_if_squarefree, ramified_primes
from .eisenstein import Eisenstein, alpha_numeric, alpha_symbolic, beta, split_prime, valuation
from .errors import CubicFamilyError
from .factoring import Factorization, factor, is_squarefree
from .family import (
    CubicInstance,
    FamilyPair,
    check_condition,
    galois_apply,
    get_family,
    instantiate,
    iterate_backward,
    iterate_chain,
    iterate_forward,
    make_family,
    registry,
)
from .intpoly import IntPoly, N, parse, resultant
from .roots import RootTriple, isolate_roots
from .surface import WPoint, X3Point, family_to_w, projective_eq, reconstruct_from_cubic, w_to_x3, x3_to_family
from .units import (
    UnitReport,
    Verdict,
    analyze_units,
    brute_force_index,
    cusick_lower_bound,
    density_scan,
    index_verdict,
    regulator_collision_check,
    regulator_RP,
)

__all__ = [
    "__version__",
    "CubicFamilyError",
    "CubicInstance",
    "DiscriminantReport",
    "Eisenstein",
    "Factorization",
    "FamilyPair",
    "IntPoly",
    "N",
    "RootTriple",
    "UnitReport",
    "Verdict",
    "WPoint",
    "X3Point",
    "alpha_numeric",
    "alpha_symbolic",
    "analyze_units",
    "beta",
    "brute_force_index",
    "check_condition",
    "cusick_lower_bound",
    "decide_three",
    "density_scan",
    "disc_Bn_closed_form",
    "disc_if_squarefree",
    "factor",
    "family_to_w",
    "galois_apply",
    "get_family",
    "index_verdict",
    "instantiate",
    "is_squarefree",
    "isolate_roots",
    "iterate_backward",
    "iterate_chain",
    "iterate_forward",
    "make_family",
    "parse",
    "projective_eq",
    "ramified_primes",
    "reconstruct_from_cubic",
    "registry",
    "regulator_RP",
    "regulator_collision_check",
    "resultant",
    "split_prime",
    "valuation",
    "w_to_x3",
    "x3_to_family",
]
