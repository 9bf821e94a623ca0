"""Root-system and Weyl-group combinatorics for homogeneous spaces:
parabolic orbit analysis, curve-class arithmetic, and Schubert variety
desingularization towers."""

from .rootsys import (
    Root,
    RootDatum,
    build_root_system,
    cartan_matrix,
    cartan_pairing,
    diagram_components_after_removal,
    dynkin_dot,
    involution_i,
    root_sum,
)
from .weyl import (
    CosetOrbit,
    WeylElement,
    act_on_root,
    bruhat_leq,
    double_coset_orbits,
    from_word,
    identity,
    longest_element,
    simple_reflection,
    weyl_group,
)
from .parabolic import (
    ConsistencyError,
    ParabolicSequence,
    RootSubset,
    borel_chain,
    contains_borel,
    max_parabolic_pair,
    next_borels,
    parabolic_from_nodes,
    parabolic_sequence,
    standard_borel,
    standard_parabolic_set,
    sum_absorption_holds,
)
from .orbits import (
    DomainRefusal,
    LeviQuotient,
    NilradicalFiltration,
    OrbitDescriptor,
    complement_codim_ge2,
    complement_min_codim,
    is_dense_orbit,
    levi_quotient,
    nilradical_filtration,
    orbit_dimension,
    orbit_table,
    quotient_dimension,
)
from .curves import (
    CurveClass,
    ExistenceVerdict,
    curve_class,
    decide_smooth_rational_curve,
    hilbert_dimension,
    lift_feasible,
    p1_fibration_candidates,
    positivity,
    reduce_positive_class,
    tangent_degree,
    tangent_degree_from_roots,
)
from .desing import (
    DesingTower,
    MinimalModel,
    RefinedChain,
    borel_completion,
    build_tower,
    demazure_refinement,
    minimal_schubert,
    smoothness_sufficient,
    tower_dimension,
)

__version__ = "0.1.0"
