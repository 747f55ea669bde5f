//! Orbit combinatorics on the simple roots and the weight semigroup 𝒟.
//!
//! Fix a proper subset π′ ⊂ π.  Two involutions of π interact:
//!
//!   j(α) = −w₀(α), the diagram involution of the full system, and
//!   i(α), defined on π′ as −w₀′(α) (diagram involution of the Levi part)
//!   and on π ∖ π′ by transporting through the Levi: starting from x₀ = j(α),
//!   repeatedly replace x ∈ π′ by j(−w₀′(x)) until the walk exits π′.
//!
//! The cycles of the composite i∘j partition π into orbits Γ.  Each orbit
//! contributes a generator d_Γ = Σ_{γ∈Γ} ϖ_γ, and the semigroup
//!
//!   𝒟 = { λ dominant integral : (w₀′λ − w₀λ, α) = 0 for all α ∈ π′ }
//!
//! is freely generated by the d_Γ; equivalently λ ∈ 𝒟 iff its fundamental
//! coordinates are constant along every orbit.  The weight attached to an
//! orbit is δ_Γ = w₀′ d_Γ − w₀ d_Γ; these drive the lower-bound character.

use num::{One, Zero};

use crate::error::{internal_err, Result};
use crate::linalg::Q;
use crate::rootsys::{RootSystem, Weight};

pub struct OrbitData {
    pub pi_prime: Vec<usize>,
    /// j as a permutation of simple-root positions.
    pub j_perm: Vec<usize>,
    /// i as a permutation of simple-root positions.
    pub i_perm: Vec<usize>,
    /// Cycles of i∘j, each sorted ascending, ordered by smallest element.
    pub orbits: Vec<Vec<usize>>,
    /// d_Γ = Σ_{γ∈Γ} ϖ_γ, in fundamental coordinates.
    pub d_gens: Vec<Weight>,
    /// δ_Γ = w₀′ d_Γ − w₀ d_Γ, in fundamental coordinates.
    pub deltas: Vec<Weight>,
    w0_full: Vec<usize>,
    w0_levi: Vec<usize>,
}

impl OrbitData {
    pub fn new(rs: &RootSystem, pi_prime: &[usize]) -> Result<Self> {
        rs.validate_subset(pi_prime)?;
        let n = rs.rank();
        let all: Vec<usize> = (0..n).collect();
        let w0_full = rs.w0_word(&all);
        let w0_levi = rs.w0_word(pi_prime);

        // A permutation of π from a word: α_k ↦ the simple root equal to
        // −w(α_k); errors out if −w does not permute π.
        let perm_from = |word: &[usize], domain: &dyn Fn(usize) -> bool| -> Result<Vec<Option<usize>>> {
            let mut p = vec![None; n];
            for k in 0..n {
                if !domain(k) {
                    continue;
                }
                let img = rs.apply_word(word, &rs.simple_root_weight(k)).neg();
                let rc = rs.weight_root_coords(&img);
                let mut target = None;
                for (m, c) in rc.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !c.is_one() || target.is_some() {
                        target = None;
                        break;
                    }
                    target = Some(m);
                }
                p[k] = Some(target.ok_or_else(|| {
                    internal_err("longest element does not induce a diagram involution")
                })?);
            }
            Ok(p)
        };

        let j_opt = perm_from(&w0_full, &|_| true)?;
        let j_perm: Vec<usize> = j_opt.into_iter().map(Option::unwrap).collect();
        let in_levi = |k: usize| pi_prime.contains(&k);
        let i_levi = perm_from(&w0_levi, &|k| in_levi(k))?;

        let mut i_perm = vec![usize::MAX; n];
        for (k, img) in i_levi.iter().enumerate() {
            if let Some(m) = img {
                i_perm[k] = *m;
            }
        }
        for k in 0..n {
            if in_levi(k) {
                continue;
            }
            let mut x = j_perm[k];
            let mut steps = 0;
            while in_levi(x) {
                x = j_perm[i_perm[x]];
                steps += 1;
                if steps > n {
                    return Err(internal_err("involution walk failed to leave the Levi"));
                }
            }
            i_perm[k] = x;
        }

        for k in 0..n {
            if i_perm[i_perm[k]] != k || j_perm[j_perm[k]] != k {
                return Err(internal_err("i or j is not an involution"));
            }
        }

        // Orbits = cycles of i∘j.
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = i_perm[j_perm[x]];
            }
            cyc.sort_unstable();
            orbits.push(cyc);
        }
        orbits.sort_by_key(|c| c[0]);

        let mut d_gens = Vec::with_capacity(orbits.len());
        let mut deltas = Vec::with_capacity(orbits.len());
        for orbit in &orbits {
            let mut d = Weight::zero(n);
            for &g in orbit {
                d = d.add(&rs.fundamental_weight(g));
            }
            let delta = rs
                .apply_word(&w0_levi, &d)
                .sub(&rs.apply_word(&w0_full, &d));
            d_gens.push(d);
            deltas.push(delta);
        }

        Ok(OrbitData {
            pi_prime: pi_prime.to_vec(),
            j_perm,
            i_perm,
            orbits,
            d_gens,
            deltas,
            w0_full,
            w0_levi,
        })
    }

    /// w₀′λ − w₀λ.
    pub fn weight_drop(&self, rs: &RootSystem, lam: &Weight) -> Weight {
        rs.apply_word(&self.w0_levi, lam)
            .sub(&rs.apply_word(&self.w0_full, lam))
    }

    /// Membership in 𝒟 by the defining orthogonality:
    /// λ dominant integral with (w₀′λ − w₀λ) ⊥ π′.
    pub fn is_in_semigroup(&self, rs: &RootSystem, lam: &Weight) -> bool {
        if !lam.is_dominant_integral() {
            return false;
        }
        let mu = self.weight_drop(rs, lam);
        self.pi_prime
            .iter()
            .all(|&k| rs.inner(&mu, &rs.simple_root_weight(k)).is_zero())
    }

    /// Decompose λ = Σ_Γ c_Γ d_Γ with c_Γ ∈ ℕ, i.e. check that the
    /// fundamental coordinates are constant nonnegative integers along each
    /// orbit.  Returns the coefficients in orbit order, or None if λ ∉ 𝒟.
    pub fn decompose(&self, lam: &Weight) -> Option<Vec<u64>> {
        if !lam.is_dominant_integral() {
            return None;
        }
        let mut out = Vec::with_capacity(self.orbits.len());
        for orbit in &self.orbits {
            let c0 = &lam.0[orbit[0]];
            if orbit.iter().any(|&g| &lam.0[g] != c0) {
                return None;
            }
            out.push(u64::try_from(c0.to_integer()).ok()?);
        }
        Some(out)
    }

    /// Reconstruct Σ c_Γ d_Γ from orbit coefficients.
    pub fn combine(&self, rs: &RootSystem, coeffs: &[u64]) -> Weight {
        let mut w = Weight::zero(rs.rank());
        for (c, d) in coeffs.iter().zip(&self.d_gens) {
            w = w.add(&d.scale(&Q::from_integer((*c).into())));
        }
        w
    }
}

/// Restriction of λ to the Levi factor: the tuple of fundamental coordinates
/// along π′, a dominant integral weight for the sub-root-system on π′.
pub fn levi_projection(pi_prime: &[usize], lam: &Weight) -> Vec<Q> {
    pi_prime.iter().map(|&k| lam.0[k].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qi;
    use crate::rootsys::SimpleType;
    use rand::{Rng, SeedableRng};

    fn setup(t: &str, sub: &[usize]) -> (RootSystem, OrbitData) {
        let rs = RootSystem::new(t.parse::<SimpleType>().unwrap()).unwrap();
        let od = OrbitData::new(&rs, sub).unwrap();
        (rs, od)
    }

    fn w(coords: &[i64]) -> Weight {
        Weight::from_i64s(coords)
    }

    #[test]
    fn a1_borel() {
        let (rs, od) = setup("A1", &[]);
        assert_eq!(od.orbits, vec![vec![0]]);
        assert_eq!(od.d_gens, vec![w(&[1])]);
        assert_eq!(od.deltas, vec![w(&[2])]);
        assert_eq!(rs.deg(&od.deltas[0]).unwrap(), 2);
    }

    #[test]
    fn a2_maximal_parabolic() {
        let (rs, od) = setup("A2", &[0]);
        // j swaps the two nodes, i fixes both, so i∘j is a 2-cycle.
        assert_eq!(od.j_perm, vec![1, 0]);
        assert_eq!(od.i_perm, vec![0, 1]);
        assert_eq!(od.orbits, vec![vec![0, 1]]);
        assert_eq!(od.d_gens, vec![w(&[1, 1])]);
        assert_eq!(od.deltas, vec![w(&[0, 3])]);
        assert_eq!(rs.deg(&od.deltas[0]).unwrap(), 6);
    }

    #[test]
    fn a2_borel_has_singleton_orbits() {
        let (rs, od) = setup("A2", &[]);
        // With empty π′ the walk for i stops immediately, so i = j and the
        // composite is the identity: orbits are singletons and 𝒟 = P⁺.
        assert_eq!(od.orbits, vec![vec![0], vec![1]]);
        assert_eq!(od.d_gens, vec![w(&[1, 0]), w(&[0, 1])]);
        assert_eq!(od.deltas, vec![w(&[1, 1]), w(&[1, 1])]);
        assert_eq!(rs.deg(&od.deltas[0]).unwrap(), 4);
    }

    #[test]
    fn a3_next_to_maximal() {
        let (rs, od) = setup("A3", &[0, 1]);
        assert_eq!(od.orbits, vec![vec![0, 1, 2]]);
        assert_eq!(od.d_gens, vec![w(&[1, 1, 1])]);
        assert_eq!(od.deltas, vec![w(&[0, 0, 4])]);
        let rc = rs.weight_root_coords(&od.deltas[0]);
        assert_eq!(rc, vec![qi(1), qi(2), qi(3)]);
        assert_eq!(rs.deg(&od.deltas[0]).unwrap(), 12);
    }

    #[test]
    fn b2_both_maximal_parabolics() {
        let (rs, od) = setup("B2", &[0]);
        assert_eq!(od.orbits, vec![vec![0], vec![1]]);
        assert_eq!(od.deltas, vec![w(&[0, 2]), w(&[0, 2])]);
        // 2ϖ₂ = α₁ + 2α₂ = θ, so deg = 6.
        assert_eq!(rs.deg(&od.deltas[0]).unwrap(), 6);

        let (rs, od) = setup("B2", &[1]);
        assert_eq!(od.orbits, vec![vec![0], vec![1]]);
        assert_eq!(od.deltas, vec![w(&[2, 0]), w(&[1, 0])]);
        assert_eq!(rs.deg(&od.deltas[0]).unwrap(), 8);
        assert_eq!(rs.deg(&od.deltas[1]).unwrap(), 4);
    }

    #[test]
    fn involutions_square_to_identity_across_types() {
        let cases: &[(&str, &[usize])] = &[
            ("A4", &[0, 2]),
            ("A4", &[1, 2, 3]),
            ("B3", &[0, 1]),
            ("C3", &[1, 2]),
            ("D4", &[0, 1, 2]),
            ("F4", &[0, 3]),
            ("G2", &[0]),
            ("G2", &[1]),
            ("E6", &[0, 1, 2, 3]),
        ];
        for (t, sub) in cases {
            // Construction itself asserts i² = j² = id; also check orbits
            // partition π.
            let (rs, od) = setup(t, sub);
            let total: usize = od.orbits.iter().map(Vec::len).sum();
            assert_eq!(total, rs.rank(), "{t}");
        }
    }

    #[test]
    fn delta_weights_are_levi_orthogonal_and_even_degree() {
        let cases: &[(&str, &[usize])] = &[
            ("A3", &[0, 1]),
            ("A3", &[1]),
            ("B3", &[0, 2]),
            ("C3", &[0]),
            ("D4", &[1, 2, 3]),
            ("G2", &[0]),
        ];
        for (t, sub) in cases {
            let (rs, od) = setup(t, sub);
            for delta in &od.deltas {
                for &k in sub.iter() {
                    assert!(
                        rs.inner(delta, &rs.simple_root_weight(k)).is_zero(),
                        "{t}: δ not orthogonal to π′"
                    );
                }
                let d = rs.deg(delta).unwrap();
                assert!(d > 0 && d % 2 == 0, "{t}: deg δ = {d}");
            }
        }
    }

    #[test]
    fn membership_agrees_with_orbit_constancy() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let cases: &[(&str, &[usize])] = &[
            ("A2", &[0]),
            ("A3", &[0, 1]),
            ("A3", &[2]),
            ("B3", &[0, 1]),
            ("C3", &[1]),
            ("D4", &[0, 3]),
            ("G2", &[1]),
        ];
        for (t, sub) in cases {
            let (rs, od) = setup(t, sub);
            for _ in 0..200 {
                let coords: Vec<i64> =
                    (0..rs.rank()).map(|_| rng.gen_range(0..4)).collect();
                let lam = w(&coords);
                let by_def = od.is_in_semigroup(&rs, &lam);
                let by_orbits = od.decompose(&lam);
                assert_eq!(by_def, by_orbits.is_some(), "{t} λ={coords:?}");
                if let Some(c) = by_orbits {
                    assert_eq!(od.combine(&rs, &c), lam);
                }
            }
        }
    }

    #[test]
    fn borel_semigroup_is_all_dominant_weights() {
        for t in ["A2", "B2", "G2", "A3"] {
            let (rs, od) = setup(t, &[]);
            assert_eq!(od.orbits.len(), rs.rank());
            let lam = w(&vec![3; rs.rank()]);
            let c = od.decompose(&lam).unwrap();
            assert_eq!(c, vec![3; rs.rank()]);
        }
    }

    #[test]
    fn levi_projection_picks_coordinates() {
        let lam = w(&[2, 0, 5]);
        assert_eq!(levi_projection(&[0, 2], &lam), vec![qi(2), qi(5)]);
    }
}
