//! Root systems of the finite simple types, with exact rational arithmetic.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * Simple roots are numbered as in Bourbaki.  For G2 the first simple root
//!   is short, so the highest root is 3α₁+2α₂.
//! * `cartan[i][j] = ⟨α_i^∨, α_j⟩ = 2(α_i,α_j)/(α_i,α_i)`.
//! * The invariant form is normalized so the highest root θ has (θ,θ) = 2;
//!   long roots then have squared length 2 and `d_i = (α_i,α_i)/2 ∈ {1, 1/2, 1/3}`.
//! * Weights are stored by their fundamental coordinates, so the coroot
//!   pairing ⟨α_i^∨, λ⟩ is simply the i-th coordinate.
//! * Positive roots are ordered by height, ties broken by comparing
//!   simple-root coordinate vectors from the **last** coordinate backwards
//!   (so α₁ precedes α₂, and the order is a total, reproducible one).
//! * The longest Weyl element w₀ (and the parabolic w₀′ of any subset of the
//!   simple roots) is computed as a reduced word by descent on ρ: repeatedly
//!   reflect at the lowest-index simple root with positive pairing.  The word
//!   is then applied letter by letter to arbitrary weights, which is what
//!   makes w₀ of a *non-dominant* weight (e.g. a simple root) come out right.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::{One, Signed, Zero};

use crate::error::{config_err, domain_err, internal_err, resource_err, Error, Result};
use crate::linalg::{qi, Q};

pub const MAX_RANK: usize = 32;
const MAX_HEIGHT: i64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(config_err(format!(
                "inadmissible rank {rank} for family {family}"
            )));
        }
        if rank > MAX_RANK {
            return Err(config_err(format!(
                "rank {rank} exceeds supported maximum {MAX_RANK}"
            )));
        }
        Ok(SimpleType { family, rank })
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next() {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => {
                return Err(config_err(format!(
                    "type string {s:?} must start with a letter A-G"
                )))
            }
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 3 {
            return Err(config_err(format!(
                "type string {s:?} must be a family letter followed by a rank"
            )));
        }
        let rank: usize = digits
            .parse()
            .map_err(|_| config_err(format!("unparseable rank in {s:?}")))?;
        SimpleType::new(fam, rank)
    }
}

/// A positive root, stored by its simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub coords: Vec<i64>,
    pub height: i64,
}

/// A weight in fundamental coordinates: `λ = Σ coords[i]·ϖ_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<Q>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        Weight(v.iter().map(|&x| qi(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &Q) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// All coordinates are nonnegative integers.
    pub fn is_dominant_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer() && !c.is_negative())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub struct RootSystem {
    pub stype: SimpleType,
    /// cartan[i][j] = ⟨α_i^∨, α_j⟩
    pub cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    /// d[i] = (α_i, α_i)/2 with long roots of squared length 2.
    pub d: Vec<Q>,
    /// Positive roots, ordered by (height, colex on coordinates).
    pub roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    /// index into `roots` of each simple root.
    pub simple_idx: Vec<usize>,
}

/// Cartan matrix and squared-half-lengths for an admissible type.
fn cartan_data(t: SimpleType) -> (Vec<Vec<i64>>, Vec<Q>) {
    let n = t.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let mut d = vec![Q::one(); n];
    let half = qi(1) / qi(2);
    match t.family {
        Family::A => {
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
            a[n - 1][n - 2] = -2; // α_n is short
            d[n - 1] = half;
        }
        Family::C => {
            for i in 0..n - 1 {
                chain(&mut a, i, i + 1);
            }
            a[n - 2][n - 1] = -2; // α_n is long, the others short
            for di in d.iter_mut().take(n - 1) {
                *di = half.clone();
            }
        }
        Family::D => {
            for i in 0..n - 2 {
                chain(&mut a, i, i + 1);
            }
            chain(&mut a, n - 3, n - 1);
        }
        Family::E => {
            // Bourbaki: chain 1-3-4-5-…-n with node 2 attached to node 4.
            chain(&mut a, 0, 2);
            for i in 2..n - 1 {
                chain(&mut a, i, i + 1);
            }
            chain(&mut a, 1, 3);
        }
        Family::F => {
            chain(&mut a, 0, 1);
            chain(&mut a, 1, 2);
            chain(&mut a, 2, 3);
            a[2][1] = -2; // α₃, α₄ short
            d[2] = half.clone();
            d[3] = half;
        }
        Family::G => {
            // α₁ short, highest root 3α₁+2α₂.
            a[0][1] = -3;
            a[1][0] = -1;
            d[0] = qi(1) / qi(3);
        }
    }
    (a, d)
}

fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut aug: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut row: Vec<Q> = m[i].iter().map(|&x| qi(x)).collect();
            for j in 0..n {
                row.push(if i == j { Q::one() } else { Q::zero() });
            }
            row
        })
        .collect();
    let piv = crate::linalg::rref(&mut aug);
    assert_eq!(piv.len(), n, "Cartan matrix must be invertible");
    aug.iter().map(|row| row[n..].to_vec()).collect()
}

/// Order key: height first, then coordinates compared from the last simple
/// root backwards (this puts α₁ before α₂).
fn order_key(coords: &[i64]) -> (i64, Vec<i64>) {
    let h: i64 = coords.iter().sum();
    (h, coords.iter().rev().copied().collect())
}

impl RootSystem {
    pub fn new(stype: SimpleType) -> Result<Self> {
        let n = stype.rank;
        let (cartan, d) = cartan_data(stype);
        let cartan_inv = invert_rational(&cartan);

        // Closure construction: grow root strings level by level.
        let mut set: HashMap<Vec<i64>, i64> = HashMap::new();
        let mut frontier: Vec<Vec<i64>> = Vec::new();
        for i in 0..n {
            let mut c = vec![0i64; n];
            c[i] = 1;
            set.insert(c.clone(), 1);
            frontier.push(c);
        }
        let mut height = 1i64;
        while !frontier.is_empty() {
            height += 1;
            if height > MAX_HEIGHT {
                return Err(resource_err("root height overflow during closure"));
            }
            let mut next = Vec::new();
            for beta in &frontier {
                for i in 0..n {
                    // p = how far the string continues downward from β.
                    let mut p = 0i64;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= p + 1;
                        if down[i] < 0 || !set.contains_key(&down) {
                            break;
                        }
                        p += 1;
                    }
                    let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if set.insert(up.clone(), height).is_none() {
                            next.push(up);
                        }
                    }
                }
            }
            frontier = next;
        }

        let mut roots: Vec<Root> = set
            .into_keys()
            .map(|coords| {
                let height = coords.iter().sum();
                Root { coords, height }
            })
            .collect();
        roots.sort_by_key(|r| order_key(&r.coords));
        let index: HashMap<Vec<i64>, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.coords.clone(), k))
            .collect();
        let simple_idx = (0..n)
            .map(|i| {
                let mut c = vec![0i64; n];
                c[i] = 1;
                index[&c]
            })
            .collect();

        let rs = RootSystem {
            stype,
            cartan,
            cartan_inv,
            d,
            roots,
            index,
            simple_idx,
        };
        // The highest root must be unique at maximal height and long.
        let top = rs.roots.last().unwrap();
        let same_height = rs.roots.iter().filter(|r| r.height == top.height).count();
        if same_height != 1 {
            return Err(internal_err("highest root is not unique"));
        }
        if rs.root_norm2(rs.roots.len() - 1) != qi(2) {
            return Err(internal_err("highest root is not normalized to length² 2"));
        }
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.stype.rank
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn highest_root_index(&self) -> usize {
        self.roots.len() - 1
    }

    pub fn cartan_inverse(&self) -> &[Vec<Q>] {
        &self.cartan_inv
    }

    /// Fundamental coordinates of the positive root with index `ri`.
    pub fn root_weight(&self, ri: usize) -> Weight {
        let c = &self.roots[ri].coords;
        Weight(
            (0..self.rank())
                .map(|i| qi((0..self.rank()).map(|j| self.cartan[i][j] * c[j]).sum()))
                .collect(),
        )
    }

    pub fn simple_root_weight(&self, i: usize) -> Weight {
        self.root_weight(self.simple_idx[i])
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut w = Weight::zero(self.rank());
        w.0[i] = Q::one();
        w
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![Q::one(); self.rank()])
    }

    /// Simple-root coordinates of a weight (exact, via the inverse Cartan).
    pub fn weight_root_coords(&self, w: &Weight) -> Vec<Q> {
        (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| &self.cartan_inv[i][j] * &w.0[j])
                    .sum()
            })
            .collect()
    }

    /// W-invariant form (θ,θ)=2 normalization.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let ra = self.weight_root_coords(a);
        ra.iter()
            .zip(&self.d)
            .zip(&b.0)
            .map(|((ca, di), mb)| ca * di * mb)
            .sum()
    }

    pub fn root_norm2(&self, ri: usize) -> Q {
        let w = self.root_weight(ri);
        self.inner(&w, &w)
    }

    /// ⟨β^∨, λ⟩ for a positive root β (rational in general).
    pub fn coroot_pairing(&self, ri: usize, w: &Weight) -> Q {
        let bw = self.root_weight(ri);
        qi(2) * self.inner(&bw, w) / self.root_norm2(ri)
    }

    pub fn reflect_simple(&self, i: usize, w: &Weight) -> Weight {
        let m = w.0[i].clone();
        if m.is_zero() {
            return w.clone();
        }
        let alpha = self.simple_root_weight(i);
        w.sub(&alpha.scale(&m))
    }

    /// Reduced word for the longest element of the parabolic Weyl subgroup
    /// generated by the simple reflections in `sub` (sorted 0-based indices).
    /// Obtained by descent on ρ, always reflecting at the lowest-index simple
    /// root with positive pairing; apply the word left to right.
    pub fn w0_word(&self, sub: &[usize]) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.rho();
        loop {
            let Some(&i) = sub.iter().find(|&&i| cur.0[i].is_positive()) else {
                break;
            };
            cur = self.reflect_simple(i, &cur);
            word.push(i);
        }
        word
    }

    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        let mut cur = w.clone();
        for &i in word {
            cur = self.reflect_simple(i, &cur);
        }
        cur
    }

    /// w₀ of the parabolic Weyl subgroup of `sub`, applied to an arbitrary
    /// weight.  `sub = 0..rank` gives the longest element of W itself.
    pub fn apply_w0(&self, sub: &[usize], w: &Weight) -> Weight {
        self.apply_word(&self.w0_word(sub), w)
    }

    /// deg(λ) = 2·(sum of simple-root coordinates of λ), a nonnegative
    /// integer for dominant integral λ.
    pub fn deg(&self, w: &Weight) -> Result<i64> {
        if !w.is_dominant_integral() {
            return Err(domain_err(format!(
                "deg is defined for dominant integral weights, got {w}"
            )));
        }
        let s: Q = self.weight_root_coords(w).into_iter().sum();
        let two_s = qi(2) * s;
        if !two_s.is_integer() {
            return Err(internal_err(format!("deg({w}) is not an integer")));
        }
        Ok(two_s.to_integer().try_into().map_err(|_| {
            internal_err("deg overflowed i64")
        })?)
    }

    /// Indices of the positive roots supported on the simple-root subset
    /// `sub`: the positive roots of the Levi factor.
    pub fn roots_supported_on(&self, sub: &[usize]) -> Vec<usize> {
        (0..self.roots.len())
            .filter(|&ri| {
                self.roots[ri]
                    .coords
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| c == 0 || sub.contains(&j))
            })
            .collect()
    }

    /// Validate a π′ subset: sorted, unique, in range, and proper.
    pub fn validate_subset(&self, sub: &[usize]) -> Result<()> {
        for w in sub.windows(2) {
            if w[0] >= w[1] {
                return Err(config_err("subset indices must be strictly increasing"));
            }
        }
        if let Some(&bad) = sub.iter().find(|&&i| i >= self.rank()) {
            return Err(config_err(format!(
                "subset index {} out of range for rank {}",
                bad + 1,
                self.rank()
            )));
        }
        if sub.len() == self.rank() {
            return Err(config_err(
                "π′ must be a proper subset of the simple roots (π′ = π makes the \
                 degenerate radical trivial)",
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn parse_type_strings() {
        assert_eq!(
            "A2".parse::<SimpleType>().unwrap(),
            SimpleType { family: Family::A, rank: 2 }
        );
        assert!("B1".parse::<SimpleType>().is_err());
        assert!("E9".parse::<SimpleType>().is_err());
        assert!("F3".parse::<SimpleType>().is_err());
        assert!("G3".parse::<SimpleType>().is_err());
        assert!("H2".parse::<SimpleType>().is_err());
        assert!("A".parse::<SimpleType>().is_err());
        assert!("A0".parse::<SimpleType>().is_err());
        assert!("".parse::<SimpleType>().is_err());
    }

    #[test]
    fn a2_positive_roots() {
        let r = rs("A2");
        let coords: Vec<Vec<i64>> = r.roots.iter().map(|x| x.coords.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn g2_positive_roots_and_highest() {
        let r = rs("G2");
        assert_eq!(r.num_positive_roots(), 6);
        let top = &r.roots[r.highest_root_index()];
        assert_eq!(top.coords, vec![3, 2]);
    }

    #[test]
    fn root_counts_match_classical_formulas() {
        let expect = [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("B4", 16),
            ("C3", 9),
            ("C4", 16),
            ("D4", 12),
            ("F4", 24),
            ("G2", 6),
            ("E6", 36),
        ];
        for (t, n) in expect {
            assert_eq!(rs(t).num_positive_roots(), n, "count for {t}");
        }
    }

    #[test]
    fn highest_roots_match_tables() {
        let expect = [
            ("A3", vec![1, 1, 1]),
            ("B3", vec![1, 2, 2]),
            ("C3", vec![2, 2, 1]),
            ("D4", vec![1, 2, 1, 1]),
            ("F4", vec![2, 3, 4, 2]),
            ("E6", vec![1, 2, 2, 3, 2, 1]),
        ];
        for (t, c) in expect {
            let r = rs(t);
            assert_eq!(r.roots[r.highest_root_index()].coords, c, "θ for {t}");
        }
    }

    #[test]
    fn symmetrized_cartan_is_symmetric_and_theta_normalized() {
        for t in ["A1", "A3", "B3", "C3", "D4", "F4", "G2", "E6"] {
            let r = rs(t);
            let n = r.rank();
            for i in 0..n {
                for j in 0..n {
                    // d_i · a_ij = (α_i, α_j) must be symmetric.
                    assert_eq!(
                        &r.d[i] * qi(r.cartan[i][j]),
                        &r.d[j] * qi(r.cartan[j][i]),
                        "symmetry failure for {t} at ({i},{j})"
                    );
                }
            }
            assert_eq!(r.root_norm2(r.highest_root_index()), qi(2), "θ norm for {t}");
        }
    }

    #[test]
    fn inverse_cartan_roundtrip() {
        for t in ["A2", "B3", "F4", "G2", "E6"] {
            let r = rs(t);
            let n = r.rank();
            for i in 0..n {
                for j in 0..n {
                    let s: Q = (0..n)
                        .map(|k| &r.cartan_inv[i][k] * qi(r.cartan[k][j]))
                        .sum();
                    assert_eq!(s, if i == j { Q::one() } else { Q::zero() });
                }
            }
        }
    }

    #[test]
    fn w0_full_group_examples() {
        let r = rs("A2");
        let pi: Vec<usize> = (0..2).collect();
        // w₀(ϖ₁) = -ϖ₂ in A2.
        assert_eq!(
            r.apply_w0(&pi, &r.fundamental_weight(0)),
            Weight::from_i64s(&[0, -1])
        );
        // Parabolic case: w₀′ for {α₁} sends ρ to ρ - α₁.
        let rho = r.rho();
        let expect = rho.sub(&r.simple_root_weight(0));
        assert_eq!(r.apply_w0(&[0], &rho), expect);
    }

    #[test]
    fn w0_word_length_is_number_of_positive_roots() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let r = rs(t);
            let pi: Vec<usize> = (0..r.rank()).collect();
            assert_eq!(r.w0_word(&pi).len(), r.num_positive_roots(), "length for {t}");
        }
    }

    #[test]
    fn minus_w0_permutes_simple_roots() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            let pi: Vec<usize> = (0..r.rank()).collect();
            for i in 0..r.rank() {
                let img = r.apply_w0(&pi, &r.simple_root_weight(i)).neg();
                let found = (0..r.rank()).any(|j| img == r.simple_root_weight(j));
                assert!(found, "-w₀(α_{}) is not simple in {t}", i + 1);
            }
        }
    }

    #[test]
    fn deg_examples_and_integrality() {
        let a2 = rs("A2");
        assert_eq!(a2.deg(&a2.fundamental_weight(0)).unwrap(), 2);
        assert_eq!(a2.deg(&a2.fundamental_weight(1)).unwrap(), 2);
        assert_eq!(a2.deg(&a2.rho()).unwrap(), 4);
        let b2 = rs("B2");
        assert_eq!(b2.deg(&b2.fundamental_weight(0)).unwrap(), 4);
        assert_eq!(b2.deg(&b2.fundamental_weight(1)).unwrap(), 3);
        assert!(a2.deg(&Weight::from_i64s(&[-1, 0])).is_err());
    }

    #[test]
    fn subset_validation() {
        let r = rs("A3");
        assert!(r.validate_subset(&[0, 1]).is_ok());
        assert!(r.validate_subset(&[]).is_ok());
        assert!(r.validate_subset(&[0, 0]).is_err());
        assert!(r.validate_subset(&[3]).is_err());
        assert!(r.validate_subset(&[0, 1, 2]).is_err());
    }

    #[test]
    fn levi_root_support() {
        let r = rs("A3");
        let sub = vec![0, 1];
        let levi = r.roots_supported_on(&sub);
        let coords: Vec<Vec<i64>> = levi.iter().map(|&i| r.roots[i].coords.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]);
    }
}
