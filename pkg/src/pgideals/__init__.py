"""Exact-arithmetic toolkit for p_g-ideal certification on normal surface
singularities: dual-graph lattices, normal Hilbert coefficients,
hypersurface oracles, and Rees-algebra normality checks."""

from .brieskorn import (
    BrieskornDescriptor,
    a_invariant,
    fermat_closed_form,
    fermat_colength,
    fermat_datum,
    fermat_h1_sequence,
    weighted_pg,
)
from .errors import (
    BudgetError,
    ClosureGuardError,
    DomainError,
    InconsistentDataError,
    ParseError,
    PgidealsError,
    SupportError,
)
from .hilbert import (
    NormalHilbertCoefficients,
    NumericalIdealDatum,
    coefficients,
    epsilon,
    hilbert_poly_eval,
    kato_colength,
    multi_rees_verdict,
    parse_data,
    pg_additivity_check,
    pg_ideal_test,
    power_datum,
    stabilization_index,
)
from .kernels import backend_name
from .lattice import (
    Cycle,
    DualGraph,
    Vertex,
    anti_nef_closure,
    arithmetic_genus,
    artin_rational_test,
    canonical_cycle,
    fundamental_cycle,
    is_anti_nef,
    is_negative_definite,
    pairing,
    pairing_vector,
    parse_graph,
    reduced_cycle,
    unit_cycle,
    z_perp,
)
from .polyalg import (
    GREVLEX,
    GroebnerBudget,
    MonomialOrder,
    SparsePolynomial,
    double_point_pg_test,
    double_point_stability,
    extended_rees_F,
    groebner_basis,
    ideal_dimension,
    jacobian_ideal,
    normal_form,
    parse_polynomial,
    r1_hypersurface_test,
    singular_locus_dimension,
    spolynomial,
)

__version__ = "0.1.0"
