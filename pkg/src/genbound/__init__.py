"""genbound: certified lower bounds on the minimal number of generators of
the profinite completion of a free product of finite groups, computed by
exact homomorphism counting into constructed finite targets.
"""

from .bounds import (
    BoundCertificate,
    CertificateError,
    Comparison,
    EmbeddingContribution,
    ExactContribution,
    FormulaContribution,
    best_bound,
    certificate_from_doc,
    certificate_to_doc,
    check_certificate,
    lower_bound_explicit,
    weak_bound,
)
from .constructions import (
    AffineBlock,
    BlockAffineGroup,
    ConstructionError,
    CoprimeFamilyInstance,
    MetabelianTarget,
    SemidirectTarget,
    SplitBound,
    VerificationFailure,
    abelianization_split,
    coprime_family,
    metabelian_target,
    min_m_for_conclusion,
    reduce_cyclic_orders,
    semidirect_target,
)
from .groups import (
    AffineSemidirect,
    CayleyGroup,
    ClosureOverflowError,
    FiniteGroup,
    GeneratedGroup,
    MatrixGroup,
    PermGroup,
    ProductGroup,
    closure,
    cyclic_group,
    power_group,
)
from .homcount import (
    HomCountResult,
    HomSearchBudgetError,
    WitnessQuotient,
    WitnessWidthError,
    count_homs,
    count_homs_cyclic,
    count_homs_group,
    enumerate_homs,
    free_product_count,
    power_target_count,
    witness_quotient,
)
from .modules import ModuleAction, SimpleModuleSearch, find_simple_module, is_irreducible
from .presentations import (
    Presentation,
    cyclic_presentation,
    free_presentation,
    free_product,
    presentation_from_words,
)
from .subgroups import (
    MinGenResult,
    SubgroupHandle,
    abelian_invariants,
    centralizer_order_transitive,
    d_min_generators,
    derived_subgroup,
    largest_normal_p_subgroup,
    orbits,
    quotient_group,
    subgroup_from_generators,
    sylow_subgroup,
)

__version__ = "0.1.0"
