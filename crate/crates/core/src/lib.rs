//! Edge-coloured graph homomorphisms modulo switching by a permutation group.
//!
//! Colours are `1..=m`, vertices `0..n`. Permutations compose right to left:
//! `(π·φ)(i) = π(φ(i))`.

pub mod dichotomy;
pub mod error;
pub mod graph;
pub mod group;
pub mod hom;
pub mod indicator;
pub mod oracle;
pub mod perm;
pub mod switch_graph;
pub mod switching;

pub use dichotomy::{
    build_alternating_cycles, classify_target, hardness_witness, solve_mono_bipartite_target,
    solve_polynomial_target, AlternatingCycles, Certificate, HardnessWitness, PolynomialReason,
    PolynomialSolver, Verdict,
};
pub use error::{Error, PermError, Result};
pub use graph::{
    abelianize_graph, structure, Bipartition, Edge, EdgeColouredGraph, SpanningForest,
};
pub use group::{
    Abelianization, BlockSystem, CommutatorWords, GroupProperties, PermGroup, RegularAction,
};
pub use hom::{check_witness, decide_switch_hom, find_hom, Mapping, SwitchHomDecider, Witness};
pub use indicator::{indicator_construction, smooth_and_periods, IndicatorDigraph, PeriodReport};
pub use perm::Permutation;
pub use switch_graph::SwitchGraph;
pub use switching::{
    apply_sequence, can_switch_monochromatic, classify_cycle, switch_equivalent,
    switch_to_monochromatic, switch_vertex, CycleClass, Switch, SwitchSequence,
};
