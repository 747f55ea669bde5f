//! Truncated formal characters on the positive-root cone.
//!
//! A `FormalCharacter` is a finite sum Σ c_ν e^ν with c_ν ∈ ℕ and every ν a
//! nonnegative integer combination of positive roots, stored up to a degree
//! truncation: deg(ν) = 2·Σᵢ kᵢ for ν = Σ kᵢ αᵢ.  Degree is additive, so
//! truncated convolution is exact in degrees ≤ trunc.  The lower-bound
//! character of a contraction is the product ∏_Γ (1 − e^{δ_Γ})⁻¹ of
//! geometric series over the orbit weights.

use std::collections::BTreeMap;

use num::{BigInt, One, Zero};

use crate::error::{domain_err, internal_err, Result};
use crate::linalg::{qi, Q};
use crate::rootsys::{RootSystem, Weight};

/// deg of a weight in the cone ℕΔ⁺; domain error outside the cone.
pub fn cone_degree(rs: &RootSystem, w: &Weight) -> Result<i64> {
    let rc = rs.weight_root_coords(w);
    let mut total = Q::zero();
    for c in &rc {
        if !c.is_integer() || c < &Q::zero() {
            return Err(domain_err(format!(
                "weight {w} is not an ℕ-combination of simple roots"
            )));
        }
        total += c;
    }
    let t = qi(2) * total;
    t.to_integer()
        .try_into()
        .map_err(|_| internal_err("cone degree overflowed i64"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacter {
    pub trunc: i64,
    pub coeffs: BTreeMap<Weight, u64>,
}

impl FormalCharacter {
    pub fn zero(trunc: i64) -> Self {
        FormalCharacter {
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, trunc: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Weight::zero(rank), 1);
        FormalCharacter { trunc, coeffs }
    }

    pub fn coeff(&self, w: &Weight) -> u64 {
        self.coeffs.get(w).copied().unwrap_or(0)
    }

    /// Add c·e^w, dropping it silently if deg(w) exceeds the truncation.
    pub fn add_term(&mut self, rs: &RootSystem, w: Weight, c: u64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        if cone_degree(rs, &w)? <= self.trunc {
            *self.coeffs.entry(w).or_insert(0) += c;
        }
        Ok(())
    }

    /// Truncated convolution; both factors must carry the same truncation.
    pub fn mul(&self, rs: &RootSystem, other: &Self) -> Result<Self> {
        if self.trunc != other.trunc {
            return Err(domain_err("cannot multiply characters with different truncations"));
        }
        let mut out = FormalCharacter::zero(self.trunc);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                out.add_term(rs, a.add(b), ca * cb)?;
            }
        }
        Ok(out)
    }

    /// The truncated geometric series (1 − e^δ)⁻¹ = Σ_k e^{kδ}.
    /// δ must lie in the cone with strictly positive degree.
    pub fn geometric(rs: &RootSystem, delta: &Weight, trunc: i64) -> Result<Self> {
        let d = cone_degree(rs, delta)?;
        if d <= 0 {
            return Err(domain_err("geometric series needs a weight of positive degree"));
        }
        let mut out = FormalCharacter::zero(trunc);
        let mut w = Weight::zero(rs.rank());
        let mut k = 0i64;
        while k * d <= trunc {
            out.coeffs.insert(w.clone(), 1);
            w = w.add(delta);
            k += 1;
        }
        Ok(out)
    }

    /// Coefficientwise comparison self ≤ other on the support of self;
    /// returns the first offending weight with both coefficients otherwise.
    pub fn leq_witness(&self, other: &Self) -> Option<(Weight, u64, u64)> {
        for (w, c) in &self.coeffs {
            let o = other.coeff(w);
            if *c > o {
                return Some((w.clone(), *c, o));
            }
        }
        None
    }
}

/// ∏_Γ (1 − e^{δ_Γ})⁻¹ truncated at `trunc`.
pub fn lower_bound_character(
    rs: &RootSystem,
    deltas: &[Weight],
    trunc: i64,
) -> Result<FormalCharacter> {
    let mut acc = FormalCharacter::one(rs.rank(), trunc);
    for d in deltas {
        acc = acc.mul(rs, &FormalCharacter::geometric(rs, d, trunc)?)?;
    }
    Ok(acc)
}

/// Weyl dimension ∏_{β>0} (λ+ρ, β)/(ρ, β) for dominant integral λ.
pub fn weyl_dim(rs: &RootSystem, lam: &Weight) -> Result<u64> {
    if !lam.is_dominant_integral() {
        return Err(domain_err(format!(
            "Weyl dimension needs a dominant integral weight, got {lam}"
        )));
    }
    let rho = rs.rho();
    let lr = lam.add(&rho);
    let mut num = Q::one();
    let mut den = Q::one();
    for ri in 0..rs.num_positive_roots() {
        let beta = rs.root_weight(ri);
        num *= rs.inner(&lr, &beta);
        den *= rs.inner(&rho, &beta);
    }
    let d = num / den;
    if !d.is_integer() {
        return Err(internal_err("Weyl dimension is not an integer"));
    }
    let b: BigInt = d.to_integer();
    b.try_into()
        .map_err(|_| internal_err("Weyl dimension overflowed u64"))
}

/// All dominant integral weights with deg(λ) ≤ max_deg, in lexicographic
/// order of fundamental coordinates.
pub fn dominant_weights_deg_bounded(rs: &RootSystem, max_deg: i64) -> Result<Vec<Weight>> {
    let n = rs.rank();
    let deg_f: Vec<i64> = (0..n)
        .map(|i| rs.deg(&rs.fundamental_weight(i)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    loop {
        let total: i64 = coords.iter().zip(&deg_f).map(|(c, d)| c * d).sum();
        if total <= max_deg {
            out.push(Weight::from_i64s(&coords));
        }
        // odometer increment with per-digit bound max_deg/deg_f[i]
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            coords[i] += 1;
            if coords[i] * deg_f[i] <= max_deg {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}

/// All dominant integral weights whose irreducible has dimension ≤ max_dim,
/// in lexicographic order of fundamental coordinates.
pub fn dominant_weights_dim_bounded(rs: &RootSystem, max_dim: u64) -> Result<Vec<Weight>> {
    let n = rs.rank();
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    let dim_of = |coords: &[i64]| -> Result<u64> { weyl_dim(rs, &Weight::from_i64s(coords)) };
    loop {
        if dim_of(&coords)? <= max_dim {
            out.push(Weight::from_i64s(&coords));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            coords[i] += 1;
            // Weyl dimension is strictly monotone in every coordinate, so a
            // single coordinate exceeding the bound (others at zero) caps the
            // digit.
            let mut probe = vec![0i64; n];
            probe[i] = coords[i];
            if dim_of(&probe)? <= max_dim {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
    }
}
