"""Clifford-algebra quantization kernels.

Submodules:
    blades     exact sparse arithmetic in Cl(p,q)
    witt       Witt bases, vacua, spinor ideals, matrix representations
    grassmann  finite Grassmann algebra and Berezin calculus
    weyl       phase-space Poisson brackets and truncated mode operators
    dynamics   quadratic models, classical and Heisenberg flows
    lattice    desk-scale lattice field algebras and vacuum families
    cli        scenario runner and conformance suite
"""

from .blades import (
    AlgebraContext,
    Multivector,
    Signature,
    dagger,
    dot,
    gp,
    grade_project,
    make_algebra,
    scalar_part,
    wedge,
)
from .grassmann import GrassmannFunction, GrassmannOperator
from .weyl import PhasePolynomial, SymplecticForm
from .witt import VacuumSpec, WittScheme, witt_basis

__all__ = [
    "AlgebraContext",
    "GrassmannFunction",
    "GrassmannOperator",
    "Multivector",
    "PhasePolynomial",
    "Signature",
    "SymplecticForm",
    "VacuumSpec",
    "WittScheme",
    "dagger",
    "dot",
    "gp",
    "grade_project",
    "make_algebra",
    "scalar_part",
    "wedge",
    "witt_basis",
]

__version__ = "0.1.0"
