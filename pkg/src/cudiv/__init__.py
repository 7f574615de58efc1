"""Exact divisibility numbers for finite models of Cuntz semigroups.

Modules:

* :mod:`cudiv.core`           semigroup models, the built-in zoo, axiom checks
* :mod:`cudiv.divisibility`   least-n solvers, Div_* estimates, combinators
* :mod:`cudiv.euler`          multilinear Euler classes and Hall transversals
* :mod:`cudiv.bundles`        comparison oracle for sums of line bundles
* :mod:`cudiv.villadsen`      construction data and certified bounds
"""

from .core import (
    INF,
    CuModel,
    ExtNatModel,
    FiniteCuModel,
    ModelError,
    RationalConeModel,
    check_axioms,
    element_flags,
    infinite_multiple,
    load_model,
    product,
    zoo,
)
from .divisibility import (
    DivisibilityReport,
    DivKind,
    check,
    combine_chain,
    combine_product,
    div_star_estimate,
    least,
    matrix_div,
)
from .euler import MultilinearPoly, SetFamily, euler_of_family, hall_check, linear_form, mul, sdr_bruteforce

__version__ = "0.1.0"
