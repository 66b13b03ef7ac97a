//! Computational additive combinatorics over finite abelian groups.
//!
//! The crate computes sumsets, i-representable sums `A +_i B`, stabilizers
//! and additive energy, and checks Kneser/Pollard-type inequalities on
//! concrete instances. Every checker returns a [`TheoremVerdict`] recording
//! which branch of the statement held and both sides of the decisive
//! inequality.

mod bits;
pub mod group;
pub mod kernel;
pub mod ops;
pub mod set;
pub mod subgroup;

pub use group::{Elem, GroupError, GroupSpec};
pub use kernel::{rep_counts, rep_counts_with, Kernel, RepProfile};
pub use ops::{additive_energy, dyson_transform, holes_rho, i_representable, is_sidon, pollard_sum, sumset};
pub use set::{GSet, SetError};
pub use subgroup::{is_periodic, stabilizer, subgroup_lattice, Subgroup, SubgroupError, SubgroupLattice};
pub mod energy;
pub mod extremal;
pub mod literal;
pub mod search;
pub mod theorems;

pub use energy::{
    check_energy_lemma, check_energy_upper_bound, derive_exceptional_set, energy_lower_bound, EnergyLowerBound,
    EnergyReport,
};
pub use extremal::{build_example1, build_example2, ExampleError, ExampleInstance};
pub use literal::{format_set, parse_set, LiteralError};
pub use search::{enumerate_abelian_groups, run_campaign, CampaignConfig, CampaignError, CampaignRecord, Mode};
pub use theorems::{
    check_chowla_pollard, check_corollary, check_critical_pair, check_double_rep_remark, check_green_ruzsa,
    check_kneser, check_main_theorem, check_multiplicity_prop, check_pollard_cyclic, check_t2_theorem, Branch,
    CheckError, Pair, TheoremId, TheoremVerdict, Witness,
};
