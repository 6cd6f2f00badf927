"""Super analogues of gl(infinity): parity functions, brackets, permutations,
density invariants, super Weyl groups and loop realizations.

All arithmetic is exact (``fractions.Fraction``).
"""

from .core import (
    BUILTIN_PARITIES, P_EVEN, P_ODD, P_PLUS, P_ST, Band, ClassDecision, FiniteSupport,
    ParametricBand, ParityFunction, SuperMatrix, bracket, class_membership, evaluate_parity,
    homogeneous_part, support_profile, supertrace,
)
from .errors import (
    NotInGroupError, ParityMismatchError, PreconditionError, SuperGLError, UnsupportedCaseError,
    UnsupportedPermutationError, UnsupportedProfileError,
)
from .extension import ExtendedElement, cocycle, extended_bracket, j_sign
from .invariants import (
    BlockParity, classify, count_invariants, density, equivalent, even_count, is_tight,
    odd_count, sigma_p, spectrum,
)
from .permutations import (
    FinPermutation, TailMap, act_on_parity, certify, compose, identity, invert, membership,
    phi_sigma, relabel, shift, stretch, swap, tau,
)

__version__ = "0.1.0"
