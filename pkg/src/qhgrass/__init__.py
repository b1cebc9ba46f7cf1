"""Exact quantum cohomology of complex Grassmannians.

Schubert calculus over Q and finite fields (quantum Pieri and Giambelli),
the degree-zero graded-field / semisimplicity classifier, root-of-unity
evaluation homomorphisms, and a floating-point Gelfand-Cetlin toolbox with
the disk-potential critical-point solver.
"""

from .diagram import (
    EMPTY,
    GradedBasisElement,
    GrContext,
    YoungDiagram,
    column_diagram,
    conjugate,
    enumerate_diagrams,
    graded_basis,
)
from .exactfield import (
    QQ,
    DegreeLimitError,
    ExtensionField,
    FieldCtx,
    FieldError,
    Poly,
    PrimeField,
    SquareMatrix,
    UnsupportedCharacteristicError,
    char_poly,
    cyclotomic_field,
    is_irreducible,
    make_extension,
    min_poly,
    nth_roots_of_unity,
    parse_field,
    prime_field,
)
from .qh_core import (
    QhElement,
    format_element,
    giambelli_expand,
    parse_element,
    pieri_multiply,
    point_class,
    q_shift,
    quantum_product,
    schubert_product,
    special_class,
    transposed_pieri_multiply,
)
from .presentation import (
    AdmissibleMultiset,
    EvContext,
    SymContext,
    admissible_multisets,
    complete_sym,
    elementary_sym,
    ev_map,
    verify_ideal_vanishing,
    y_polynomial,
)
from .degree_zero import (
    ClassifierVerdict,
    Diameter,
    OrbitDecomposition,
    charpoly_identity_holds,
    classify,
    closed_form_charpoly,
    closed_form_matrix,
    generates_units,
    is_graded_field,
    mult_matrix,
    orbit_decomposition,
    qh0_basis,
    standard_degree_zero_element,
    witness_prime,
    zero_divisor_search,
)
from .gelfand_cetlin import (
    Frame,
    GcPoint,
    GcValues,
    find_critical_point,
    gc_map,
    potential_eval,
    potential_grad,
    quaternionic_frame,
    random_frame,
)

__version__ = "0.1.0"
