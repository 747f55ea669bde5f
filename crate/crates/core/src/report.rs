//! Versioned JSON report types emitted by the command-line tool.
//!
//! Coordinates are serialized as exact rational strings ("3", "-1/2") so
//! reports round-trip losslessly; collections are emitted in a fixed order,
//! making serialization deterministic for a given configuration.

use serde::{Deserialize, Serialize};

use crate::linalg::Q;
use crate::rootsys::{RootSystem, Weight};

pub const SCHEMA_VERSION: u32 = 1;

/// Exact rational strings of the fundamental coordinates.
pub fn weight_coords(w: &Weight) -> Vec<String> {
    w.0.iter().map(|q| q.to_string()).collect()
}

/// Exact rational strings of the simple-root coordinates.
pub fn weight_root_coord_strs(rs: &RootSystem, w: &Weight) -> Vec<String> {
    rs.weight_root_coords(w)
        .iter()
        .map(Q::to_string)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescribeReport {
    pub schema_version: u32,
    pub r#type: String,
    pub rank: usize,
    pub num_positive_roots: usize,
    /// 1-based indices of π′.
    pub pi_prime: Vec<usize>,
    pub dim_g: usize,
    pub dim_levi: usize,
    pub dim_m: usize,
    pub dim_p: usize,
    /// Exhaustive bracket checks on the contraction: the coadjoint map is a
    /// morphism, the pairing intertwines, and the pairing is nondegenerate.
    pub coadjoint_morphism: bool,
    pub killing_intertwiner: bool,
    pub pairing_nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitEntry {
    /// 1-based simple-root indices of the orbit.
    pub orbit: Vec<usize>,
    pub d_fundamental: Vec<String>,
    pub d_simple_roots: Vec<String>,
    pub delta_fundamental: Vec<String>,
    pub delta_simple_roots: Vec<String>,
    pub delta_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeGenerationCheck {
    /// Every dominant weight of degree ≤ this bound was tested.
    pub max_degree: i64,
    pub weights_checked: u64,
    pub members: u64,
    /// Membership agreed with unique ℕ-decomposition over the d_Γ everywhere.
    pub confirmed: bool,
}

/// Seeded randomized two-sided membership check on dominant weights beyond
/// the exhaustive window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomSpotCheck {
    pub seed: u64,
    pub samples: u64,
    pub max_coordinate: i64,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub schema_version: u32,
    pub r#type: String,
    pub pi_prime: Vec<usize>,
    pub orbits: Vec<OrbitEntry>,
    pub free_generation: FreeGenerationCheck,
    pub random_check: Option<RandomSpotCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterEntry {
    pub weight: Vec<String>,
    pub coefficient: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub schema_version: u32,
    pub r#type: String,
    pub pi_prime: Vec<usize>,
    pub trunc: i64,
    /// Entries in increasing weight order.
    pub entries: Vec<CharacterEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightStatusReport {
    pub weight: Vec<String>,
    pub degree: i64,
    pub required: u64,
    pub found: u64,
    /// (polynomial degree, number of independent semi-invariants found there).
    pub contributions: Vec<(usize, u64)>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiInvariantReport {
    pub schema_version: u32,
    pub r#type: String,
    pub pi_prime: Vec<usize>,
    pub trunc: i64,
    pub poly_ceiling: usize,
    pub statuses: Vec<WeightStatusReport>,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HwmodReport {
    pub schema_version: u32,
    pub r#type: String,
    pub pi_prime: Vec<usize>,
    pub lambda: Vec<String>,
    pub dim: usize,
    /// (weight, multiplicity) in increasing weight order.
    pub weight_dims: Vec<(Vec<String>, usize)>,
    pub graded_dims: Vec<usize>,
    pub filtration_complete: bool,
    pub annihilator_ok: bool,
    pub graded_identity_ok: bool,
    pub invariant_dim: usize,
    pub invariant_blocks: Vec<(Vec<String>, usize)>,
    pub in_semigroup: bool,
    /// invariant_dim == [λ ∈ 𝒟] and, when 1, the block weight matches
    /// w₀′λ − w₀λ.
    pub consistent: bool,
}

/// One acceptance criterion.  Wall-clock timings are intentionally absent:
/// budget violations fold into `passed`/`details`, keeping the JSON
/// byte-identical across equally successful runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema_version: u32,
    pub criteria: Vec<CriterionReport>,
    pub all_passed: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_round_trip_exactly() {
        let rep = OrbitReport {
            schema_version: SCHEMA_VERSION,
            r#type: "B2".into(),
            pi_prime: vec![1],
            orbits: vec![OrbitEntry {
                orbit: vec![2],
                d_fundamental: vec!["0".into(), "1".into()],
                d_simple_roots: vec!["1/2".into(), "1".into()],
                delta_fundamental: vec!["0".into(), "2".into()],
                delta_simple_roots: vec!["1".into(), "2".into()],
                delta_degree: 6,
            }],
            free_generation: FreeGenerationCheck {
                max_degree: 12,
                weights_checked: 28,
                members: 7,
                confirmed: true,
            },
            random_check: Some(RandomSpotCheck {
                seed: 7,
                samples: 200,
                max_coordinate: 30,
                confirmed: true,
            }),
        };
        let js = serde_json::to_string_pretty(&rep).unwrap();
        let back: OrbitReport = serde_json::from_str(&js).unwrap();
        assert_eq!(back, rep);
        // serialization itself is deterministic
        assert_eq!(js, serde_json::to_string_pretty(&rep).unwrap());
    }

    #[test]
    fn coordinate_strings_are_exact() {
        let w = Weight(vec![
            Q::new((-1).into(), 2.into()),
            crate::linalg::qi(3),
        ]);
        assert_eq!(weight_coords(&w), vec!["-1/2", "3"]);
    }
}
