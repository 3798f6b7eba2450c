//! Forbidden configurations: cycles, monochromatic `K_{s,t}` and
//! subdivisions, plus the extractors that turn a detected cycle into a
//! vertex set violating the local property.

mod cycles;
mod pipeline;
mod reference;
mod structures;
mod witness;

pub use cycles::{cycles, find_cycle, CyclePath};
pub use pipeline::{arithmetic_pipeline, second_energy_pipeline, second_energy_rare_threshold, third_energy_pipeline};
pub use reference::{extremal_edge_reference, ExtremalConfig, GrowthReference};
pub use structures::{find_complete_bipartite, find_subdivision, CompleteBipartite, Subdivision};
pub use witness::{
    clique_from_cycle_arith, deficiency, witness_from_cycle_2nd, witness_from_cycle_3rd, CliqueWitness,
    DifferenceEquality, StepRecord, WitnessSet, THIRD_ENERGY_CYCLE, THIRD_ENERGY_K, THIRD_ENERGY_REPETITIONS,
};
