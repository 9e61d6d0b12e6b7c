"""Noetherian forms over finite instances, machine-checked.

The package implements the abstract interface of a noetherian form (objects,
subobject fibers, adjoint image pairs, normality witnesses, image
factorization, functorial duality) together with two concrete instances:
the form of subgroups of finite groups and the form of finite modular
lattices with modular connections.  On top of the interface it provides
zigzag chasing with induced morphisms, Isbell's subfactor projections, the
butterfly lemma with constructed isomorphisms, mutual refinement of
subnormal series with projective isomorphism, a counterexample to the
coarsest-refinement strengthening of the refinement theorem, and an
exhaustive axiom/theorem verifier.
"""

from .core import (
    BudgetError,
    DomainError,
    DualForm,
    DualMorphism,
    Factorization,
    FiberLattice,
    Form,
    FormError,
    ImagePair,
    InstanceIntegrityError,
    NormalityInfo,
    ProvisoError,
    SubobjectRef,
    UnsupportedInstanceError,
    ValidationError,
    dualize,
)
from .groups import (
    FiniteGroup,
    GroupForm,
    GroupHom,
    all_subgroups,
    are_isomorphic,
    builtin_group,
    cyclic_group,
    dihedral_group,
    direct_product,
    find_isomorphism,
    generated_subgroup,
    is_normal_in,
    is_normal_subgroup,
    is_subgroup,
    iso_class_label,
    klein_four_group,
    load_group,
    quaternion_group,
    quotient_group,
    resolve_group,
    smallest_nonmodular_subgroup_lattice,
    subgroup_carrier,
    symmetric_group,
)
from .lattices import (
    FiniteLattice,
    LatticeForm,
    ModularConnection,
    chain_lattice,
    diamond_m3,
    load_lattice,
    random_modular_lattice,
)
from .series import (
    CoarsestReport,
    ProjectiveIsomorphism,
    RefinementResult,
    SubnormalSeries,
    all_subnormal_series,
    coarsest_check,
    composition_series,
    e1_check,
    is_composition_series,
    projectively_isomorphic,
    quotient_type_multiset,
    refine_pair,
    section4_counterexample,
    series_in_group,
    validate_series,
)
from .subfactor import (
    ButterflyReport,
    Interval,
    ProjectionLemmaVerdict,
    TheoremAVerdict,
    butterfly,
    butterfly_zigzag,
    contains,
    describe_interval,
    interval,
    is_subfactor,
    project,
    project_interval,
    projects_onto,
    subfactor_projection_check,
    theorem_a_equivalence,
)
from .verifier import (
    CheckResult,
    ConformanceReport,
    morphism_supply,
    verify_axioms,
    verify_theorems,
)
from .zigzag import (
    InducedHom,
    Leg,
    Zigzag,
    canonical_zigzag,
    chase,
    element_relation,
    induces_hom,
    induces_iso,
    induction_criterion,
    relation_is_functional,
)

__version__ = "0.1.0"
