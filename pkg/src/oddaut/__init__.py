"""oddaut: finite-group computations on dense multiplication tables.

Constructors and quotients, subgroup structure (centers, Sylow theory,
complements), abelian invariants and Hom counting, prime-field matrix
reduction, exact automorphism groups with odd-order/no-inversion scans,
order-2 automorphism extension for class-2 normal subgroups, and an
auditable reproduction of the published candidate-order enumeration.
"""

from .abelian import (
    AbelianInvariants,
    abelian_basis,
    abelian_direct_factor,
    abelian_invariants,
    central_automorphism_count,
    hom_count,
)
from .autengine import (
    AutGroup,
    NIReport,
    automorphism_group,
    conjugacy_classes,
    element_fingerprints,
    inner_automorphisms,
    is_ni,
)
from .catalog import (
    CatalogEntry,
    build_exceptional_instance,
    build_group,
    build_two_block_instance,
    involution_instances,
    odd_catalog,
    teaching_catalog,
)
from .enumeration import (
    CandidateOrder,
    NumberProfile,
    TableRow,
    candidate_aut_orders,
    candidate_quotient_orders,
    is_exceptional_shape,
    normal_sylow_table,
    number_profile,
    resolve_normal_sylow,
)
from .groupfile import (
    ScanRecord,
    parse_group_file,
    parse_group_text,
    write_group_file,
    write_group_text,
)
from .groups import (
    ActionSpec,
    Group,
    GroupMap,
    Subgroup,
    abelian,
    action_from_generator,
    cyclic,
    direct_product,
    extraspecial,
    from_cayley_table,
    generated_subgroup,
    quotient,
    semidirect_product,
    trivial_action,
)
from .involution import (
    ExtensionProblem,
    InvolutionCertificate,
    build_involution_abelian,
    build_involution_class2,
    extend_automorphism,
    extension_problem,
    induced_action,
    lift_matrix_to_automorphism,
    normalize_basis,
    solve_zeta,
    verify_involution_certificate,
)
from .linalg import (
    BlockDecomposition,
    CompanionBasis,
    FpMatrix,
    cyclic_basis,
    decompose,
    gl_order,
    matrix_order,
)
from .structure import (
    CentralQuotientProfile,
    SylowReport,
    center,
    central_characteristic_subgroup,
    central_quotient_profile,
    characteristic_elementary_abelian,
    derived_subgroup,
    find_complement,
    is_characteristic,
    sylow,
)
from .suites import SuiteReport, run_property_suites

__version__ = "0.1.0"
