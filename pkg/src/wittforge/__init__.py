"""Exact symplectic Witt-group computations over commutative rings."""

__version__ = "0.1.0"

from .alternating import (
    AlternatingMatrix,
    WittRepresentative,
    hyperbolic,
    orthogonal_sum,
    pfaffian,
    pfaffian_class,
    psi,
    sigma,
    split_form,
    verify_equivalence_certificate,
    witt_inverse,
)
from .elementary import (
    ElementaryFactorization,
    block_swap_factorization,
    block_swap_matrix,
    eval_factorization,
    whitehead_factorization,
)
from .exceptions import (
    BudgetExceededError,
    CertificateError,
    DimensionError,
    InvariantViolation,
    NotAlternatingError,
    NotInvertibleError,
    RingParseError,
    UnsupportedRingError,
    WittforgeError,
)
from .kummer import kummer_verify, sweep_kummer
from .lemmas import (
    CancellationInput,
    StabilizationInput,
    cancel_hyperbolic_summand,
    symplectic_stabilization,
)
from .matrix import Matrix, direct_sum
from .orbits import GroupSpec, UnimodularRow, act, orbit_enumerate
from .rings import GF, QQ, ZZ, Element, bezout_section, ring_parse
from .suslin import suslin_det_check, suslin_matrix, suslin_sl_membership

__all__ = [name for name in dir() if not name.startswith("_")]
