//! Assembles the JSON-facing reports from the computational layers.  The
//! command-line tool and the self-test both go through these builders, so a
//! given configuration always produces the same bytes.

use crate::charring::{dominant_weights_deg_bounded, lower_bound_character, weyl_dim};
use crate::chevalley::{BracketKind, ParabolicContraction};
use crate::error::Result;
use crate::hwmod::{check_annihilator, check_graded_identity, matrix_coeff_invariants, pbw_filtration, Module};
use crate::orbits::OrbitData;
use crate::report::*;
use crate::rootsys::{RootSystem, SimpleType, Weight};
use crate::syinv::verify_lower_bound;

fn one_based(pi_prime: &[usize]) -> Vec<usize> {
    pi_prime.iter().map(|i| i + 1).collect()
}

pub fn describe_report(stype: SimpleType, pi_prime: &[usize]) -> Result<DescribeReport> {
    let pc = ParabolicContraction::new(stype, pi_prime)?;
    let rs = &pc.lie.rs;
    let morphism = pc.check_coadjoint_morphism().is_ok();
    let intertwiner = pc.check_killing_intertwiner().is_ok();
    let nondeg = pc.killing_nondegenerate();
    Ok(DescribeReport {
        schema_version: SCHEMA_VERSION,
        r#type: stype.to_string(),
        rank: rs.rank(),
        num_positive_roots: rs.num_positive_roots(),
        pi_prime: one_based(pi_prime),
        dim_g: pc.lie.dim,
        dim_levi: pc.r_dim,
        dim_m: pc.dim_m(),
        dim_p: pc.dim_p(),
        coadjoint_morphism: morphism,
        killing_intertwiner: intertwiner,
        pairing_nondegenerate: nondeg,
    })
}

/// Exhaustive two-sided semigroup check on every dominant weight of degree
/// ≤ `max_degree`: membership must coincide with the existence of an
/// ℕ-decomposition over the d_Γ, and the decomposition must recombine.
pub fn free_generation_check(
    rs: &RootSystem,
    od: &OrbitData,
    max_degree: i64,
) -> Result<FreeGenerationCheck> {
    let mut checked = 0u64;
    let mut members = 0u64;
    let mut ok = true;
    for lam in dominant_weights_deg_bounded(rs, max_degree)? {
        checked += 1;
        let in_d = od.is_in_semigroup(rs, &lam);
        match od.decompose(&lam) {
            Some(coeffs) => {
                members += 1;
                if !in_d || od.combine(rs, &coeffs) != lam {
                    ok = false;
                }
            }
            None => {
                if in_d {
                    ok = false;
                }
            }
        }
    }
    Ok(FreeGenerationCheck {
        max_degree,
        weights_checked: checked,
        members,
        confirmed: ok,
    })
}

/// Samples and coordinate cap for the seeded spot-check.
pub const SPOT_CHECK_SAMPLES: u64 = 200;
pub const SPOT_CHECK_MAX_COORD: i64 = 30;

/// Two-sided membership check on randomly sampled dominant weights, far
/// beyond the degrees the exhaustive window can reach.
pub fn random_spot_check(rs: &RootSystem, od: &OrbitData, seed: u64) -> RandomSpotCheck {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    for _ in 0..SPOT_CHECK_SAMPLES {
        let coords: Vec<i64> = (0..rs.rank())
            .map(|_| rng.gen_range(0..=SPOT_CHECK_MAX_COORD))
            .collect();
        let lam = Weight::from_i64s(&coords);
        let in_d = od.is_in_semigroup(rs, &lam);
        match od.decompose(&lam) {
            Some(c) => ok &= in_d && od.combine(rs, &c) == lam,
            None => ok &= !in_d,
        }
    }
    RandomSpotCheck {
        seed,
        samples: SPOT_CHECK_SAMPLES,
        max_coordinate: SPOT_CHECK_MAX_COORD,
        confirmed: ok,
    }
}

pub fn orbit_report(
    stype: SimpleType,
    pi_prime: &[usize],
    trunc: i64,
    seed: Option<u64>,
) -> Result<OrbitReport> {
    let rs = RootSystem::new(stype)?;
    let od = OrbitData::new(&rs, pi_prime)?;
    let mut orbits = Vec::new();
    for (k, orbit) in od.orbits.iter().enumerate() {
        let d = &od.d_gens[k];
        let delta = &od.deltas[k];
        orbits.push(OrbitEntry {
            orbit: one_based(orbit),
            d_fundamental: weight_coords(d),
            d_simple_roots: weight_root_coord_strs(&rs, d),
            delta_fundamental: weight_coords(delta),
            delta_simple_roots: weight_root_coord_strs(&rs, delta),
            delta_degree: rs.deg(delta)?,
        });
    }
    let free_generation = free_generation_check(&rs, &od, trunc)?;
    let random_check = seed.map(|s| random_spot_check(&rs, &od, s));
    Ok(OrbitReport {
        schema_version: SCHEMA_VERSION,
        r#type: stype.to_string(),
        pi_prime: one_based(pi_prime),
        orbits,
        free_generation,
        random_check,
    })
}

pub fn character_report(
    stype: SimpleType,
    pi_prime: &[usize],
    trunc: i64,
) -> Result<CharacterReport> {
    let rs = RootSystem::new(stype)?;
    let od = OrbitData::new(&rs, pi_prime)?;
    let ch = lower_bound_character(&rs, &od.deltas, trunc)?;
    let entries = ch
        .coeffs
        .iter()
        .map(|(w, c)| CharacterEntry {
            weight: weight_coords(w),
            coefficient: *c,
        })
        .collect();
    Ok(CharacterReport {
        schema_version: SCHEMA_VERSION,
        r#type: stype.to_string(),
        pi_prime: one_based(pi_prime),
        trunc,
        entries,
    })
}

pub fn verify_report(
    stype: SimpleType,
    pi_prime: &[usize],
    trunc: i64,
    poly_ceiling: usize,
) -> Result<SemiInvariantReport> {
    let pc = ParabolicContraction::new(stype, pi_prime)?;
    let rs = &pc.lie.rs;
    let od = OrbitData::new(rs, pi_prime)?;
    let outcome = verify_lower_bound(&pc, BracketKind::Contracted, &od, trunc, poly_ceiling)?;
    let statuses = outcome
        .statuses
        .iter()
        .map(|s| {
            Ok(WeightStatusReport {
                weight: weight_coords(&s.weight),
                degree: crate::charring::cone_degree(rs, &s.weight)?,
                required: s.required,
                found: s.found,
                contributions: s.contributions.clone(),
                confirmed: s.confirmed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SemiInvariantReport {
        schema_version: SCHEMA_VERSION,
        r#type: stype.to_string(),
        pi_prime: one_based(pi_prime),
        trunc: outcome.trunc,
        poly_ceiling: outcome.poly_ceiling,
        statuses,
        confirmed: outcome.confirmed,
    })
}

pub fn hwmod_report(
    stype: SimpleType,
    pi_prime: &[usize],
    lambda: &Weight,
    dim_ceiling: u64,
) -> Result<HwmodReport> {
    let pc = ParabolicContraction::new(stype, pi_prime)?;
    let rs = &pc.lie.rs;
    let od = OrbitData::new(rs, pi_prime)?;
    let module = Module::build(&pc.lie, lambda, dim_ceiling)?;
    let filt = pbw_filtration(&pc, &module)?;
    let ann = check_annihilator(&pc, &module)?;
    let graded = check_graded_identity(&pc, &module)?;
    let inv = matrix_coeff_invariants(&pc, &module)?;
    let in_d = od.is_in_semigroup(rs, lambda);
    let expected_dim = usize::from(in_d);
    let mut consistent = inv.total == expected_dim && filt.complete && ann && graded;
    if in_d && inv.total == 1 {
        let drop = od.weight_drop(rs, lambda);
        if inv.blocks != vec![(drop, 1)] {
            consistent = false;
        }
    }
    Ok(HwmodReport {
        schema_version: SCHEMA_VERSION,
        r#type: stype.to_string(),
        pi_prime: one_based(pi_prime),
        lambda: weight_coords(lambda),
        dim: module.dim,
        weight_dims: module
            .weights
            .iter()
            .zip(&module.weight_dims)
            .map(|(w, d)| (weight_coords(w), *d))
            .collect(),
        graded_dims: filt.graded_dims,
        filtration_complete: filt.complete,
        annihilator_ok: ann,
        graded_identity_ok: graded,
        invariant_dim: inv.total,
        invariant_blocks: inv
            .blocks
            .iter()
            .map(|(w, d)| (weight_coords(w), *d))
            .collect(),
        in_semigroup: in_d,
        consistent,
    })
}

/// Sanity check used by tests: Weyl dimension of λ for a given type.
pub fn dimension_of(stype: SimpleType, lambda: &Weight) -> Result<u64> {
    let rs = RootSystem::new(stype)?;
    weyl_dim(&rs, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_pi_prime, parse_type, parse_weight};

    #[test]
    fn describe_matches_parabolic_split() {
        let rep = describe_report(parse_type("A2").unwrap(), &[0]).unwrap();
        assert_eq!(rep.dim_levi, 4);
        assert_eq!(rep.dim_m, 2);
        assert_eq!(rep.dim_p, 6);
        assert_eq!(rep.dim_g, 8);
        assert!(rep.coadjoint_morphism && rep.killing_intertwiner && rep.pairing_nondegenerate);
    }

    #[test]
    fn orbit_report_a2_maximal() {
        let rep = orbit_report(parse_type("A2").unwrap(), &[0], 12, Some(7)).unwrap();
        assert_eq!(rep.orbits.len(), 1);
        assert_eq!(rep.orbits[0].orbit, vec![1, 2]);
        assert_eq!(rep.orbits[0].delta_fundamental, vec!["0", "3"]);
        assert_eq!(rep.orbits[0].delta_degree, 6);
        assert!(rep.free_generation.confirmed);
        assert!(rep.free_generation.weights_checked > 0);
        let rc = rep.random_check.unwrap();
        assert!(rc.confirmed);
        assert_eq!(rc.samples, SPOT_CHECK_SAMPLES);
    }

    #[test]
    fn character_report_borel_sl2() {
        let rep = character_report(parse_type("A1").unwrap(), &[], 8).unwrap();
        // 1 + e^{2ϖ} + e^{4ϖ} + e^{6ϖ} + e^{8ϖ}
        assert_eq!(rep.entries.len(), 5);
        assert!(rep.entries.iter().all(|e| e.coefficient == 1));
    }

    #[test]
    fn hwmod_report_consistency_flags() {
        let t = parse_type("A2").unwrap();
        let sub = parse_pi_prime("1", 2).unwrap();
        let rep = hwmod_report(t, &sub, &parse_weight("1,1", 2).unwrap(), 300).unwrap();
        assert!(rep.consistent && rep.in_semigroup && rep.invariant_dim == 1);
        let rep = hwmod_report(t, &sub, &parse_weight("0,1", 2).unwrap(), 300).unwrap();
        assert!(rep.consistent && !rep.in_semigroup && rep.invariant_dim == 0);
    }
}
