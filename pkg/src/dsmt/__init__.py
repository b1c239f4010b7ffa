"""Belief functions over powersets (DST) and hyper-powersets (DSmT)."""

from dsmt.belief import (
    BeliefMatrix,
    BeliefVector,
    MassVector,
    bel_direct,
    bel_from_m,
    bm_recursive_dst,
    build_bm,
    invert_bm,
    m_from_bel,
    plausibility,
)
from dsmt.combination import (
    ConflictReport,
    FullContradictionError,
    WeightScheme,
    combine,
    conjunctive_consensus,
    dempster_combine,
    dsm_combine,
    weighted_redistribution,
)
from dsmt.lattice import (
    ElementMask,
    Lattice,
    apply_constraints,
    generate,
    generate_closure_oracle,
    generate_isotone,
    generate_powerset_bibe,
    parse_expression,
)
from dsmt.ordering import OrderingSpec, dsm_cardinality, strength, total_order, verify_closed_forms
from dsmt.venn import EncodingBasis, FrameModel, PartCode, build_basis, part_weight

