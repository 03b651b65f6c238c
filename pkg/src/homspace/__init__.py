"""Exact Lie-algebraic toolkit for Lorentzian homogeneous spaces."""

from .errors import (
    AlgebraTypeError,
    DegenerateIsotropyError,
    DomainError,
    HomspaceError,
    InconsistencyError,
    InvarianceError,
    JacobiError,
    NotHeisenbergError,
    NotTwistedHeisenbergError,
    ShapeError,
    SignatureError,
    SingularError,
)
from .forms import (
    SymmetricBilinearForm,
    ad_invariance_residual,
    check_condition_star,
    invariant_forms,
    lorentz_normal_form,
    verify_invariance_equivalence,
)
from .homogeneous import (
    ReductiveModel,
    build_heisenberg_model,
    build_product_model,
    is_special,
    nomizu_ricci,
    positivity_check,
    pure_s_model,
    reductive_complement,
    ricci_specialized,
)
from .isotropy import OperatorFamily, classify_invariance, invariant_closure, is_degenerate
from .lie import LieAlgebra, LinearMap, change_basis, direct_sum, verify_jacobi
from .linalg import Matrix, QuadraticNumber, Signature, Subspace, congruence_diagonalize, rational
from .recognition import RecognitionResult, darboux_basis, extract_lambda, recognize
from .zoo import (
    lambda_canonicalize,
    lambda_equivalent,
    make_abelian,
    make_aff,
    make_heisenberg,
    make_sl2,
    make_so3,
    make_twisted_heisenberg,
    parse_algebra,
    standard_lorentz_form,
)

__all__ = [name for name in dir() if not name.startswith("_")]
