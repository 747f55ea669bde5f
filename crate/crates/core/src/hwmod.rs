//! Irreducible highest-weight modules, their PBW-style filtration along m⁻,
//! and matrix-coefficient invariants.
//!
//! The module L(λ) is realized concretely: Verma monomials f_{β₁}⋯f_{β_k}v_λ
//! (indices nondecreasing) are straightened recursively, the contravariant
//! form is computed through ⟨f_β u, w⟩ = ⟨u, e_β w⟩ (exact for this Chevalley
//! normalization, where the transpose involution fixes every root vector
//! pair), weight multiplicities are Gram ranks, and operator matrices are
//! obtained by solving against the Gram matrix of the selected basis.
//! Non-simple root operators come from the defining words
//! x_γ = [e_i, x_{γ−α_i}]/N as matrix commutators.
//!
//! On top of the module: `pbw_filtration` builds ℱ_k = ℱ_{k−1} + Σ_γ
//! f_γ·ℱ_{k−1} starting from the Levi submodule V′ = U(r)v_λ,
//! `check_annihilator` verifies that the joint kernel of the e_γ (γ ∈ m) is
//! exactly V′, `check_graded_identity` verifies that ordered degree-k
//! monomials in the f_γ applied to V′ span ℱ_k over ℱ_{k−1}, and
//! `matrix_coeff_invariants` computes the space of r′-equivariant maps
//! V″ → V′ (V″ = U(r)·lowest vector) block by block.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::{One, Zero};

use crate::charring::weyl_dim;
use crate::chevalley::{LieAlgebra, ParabolicContraction};
use crate::error::{domain_err, internal_err, resource_err, Result};
use crate::linalg::{solve_dense, sparse_from_qvec, Q, Subspace};
use crate::rootsys::Weight;

/// Verma monomial: nondecreasing positive-root indices, f_{b₁}⋯f_{b_k} v_λ.
type VMono = Vec<u16>;

/// Linear combination of Verma monomials.
type VComb = Vec<(VMono, Q)>;

fn comb_merge(mut terms: VComb) -> VComb {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: VComb = Vec::with_capacity(terms.len());
    for (m, q) in terms {
        match out.last_mut() {
            Some((lm, lq)) if *lm == m => *lq += q,
            _ => out.push((m, q)),
        }
    }
    out.retain(|(_, q)| !q.is_zero());
    out
}

struct VermaCtx<'a> {
    lie: &'a LieAlgebra,
    lambda: Weight,
    apply_memo: HashMap<(usize, VMono), VComb>,
    gram_memo: HashMap<(VMono, VMono), Q>,
}

impl<'a> VermaCtx<'a> {
    fn new(lie: &'a LieAlgebra, lambda: Weight) -> Self {
        VermaCtx {
            lie,
            lambda,
            apply_memo: HashMap::new(),
            gram_memo: HashMap::new(),
        }
    }

    /// x_{g} · (monomial · v_λ), straightened into the PBW basis.
    fn apply(&mut self, g: usize, m: &VMono) -> VComb {
        if let Some(hit) = self.apply_memo.get(&(g, m.clone())) {
            return hit.clone();
        }
        let n = self.lie.rs.rank();
        let num_pos = self.lie.rs.num_positive_roots();
        let out = if m.is_empty() {
            if g < num_pos {
                Vec::new() // e_β v_λ = 0
            } else if g < num_pos + n {
                let c = self.lambda.0[g - num_pos].clone();
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(Vec::new(), c)]
                }
            } else {
                vec![(vec![(g - num_pos - n) as u16], Q::one())]
            }
        } else {
            let b1 = m[0] as usize;
            let rest: VMono = m[1..].to_vec();
            let f_b1 = self.lie.f(b1);
            if g >= num_pos + n && g - num_pos - n <= b1 {
                // fast path: f_c with c ≤ b₁ prepends directly
                let mut t = m.clone();
                t.insert(0, (g - num_pos - n) as u16);
                vec![(t, Q::one())]
            } else {
                let mut acc: VComb = Vec::new();
                // x·f_{b₁}·rest = f_{b₁}·(x·rest) + [x, f_{b₁}]·rest
                let inner = self.apply(g, &rest);
                for (mu, q) in inner {
                    for (t, p) in self.prepend_f(b1, &mu) {
                        acc.push((t, p * &q));
                    }
                }
                for (z, c) in self.lie.bracket(g, f_b1).clone() {
                    let terms = self.apply(z, &rest);
                    for (t, p) in terms {
                        acc.push((t, p * Q::from_integer(c.into())));
                    }
                }
                comb_merge(acc)
            }
        };
        self.apply_memo.insert((g, m.clone()), out.clone());
        out
    }

    /// f_b · monomial as a combination, re-straightening when b is out of
    /// order.
    fn prepend_f(&mut self, b: usize, m: &VMono) -> VComb {
        if m.is_empty() || b <= m[0] as usize {
            let mut t = m.clone();
            t.insert(0, b as u16);
            vec![(t, Q::one())]
        } else {
            self.apply(self.lie.f(b), m)
        }
    }

    /// Contravariant form ⟨m_A v_λ, m_B v_λ⟩ with ⟨v_λ, v_λ⟩ = 1.
    fn gram(&mut self, a: &VMono, b: &VMono) -> Q {
        if a.is_empty() {
            return if b.is_empty() { Q::one() } else { Q::zero() };
        }
        if b.is_empty() {
            return Q::zero();
        }
        let key = if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        if let Some(hit) = self.gram_memo.get(&key) {
            return hit.clone();
        }
        let (x, y) = (&key.0, &key.1);
        let x1 = x[0] as usize;
        let rest: VMono = x[1..].to_vec();
        let lifted = self.apply(self.lie.e(x1), y);
        let mut s = Q::zero();
        for (c, q) in lifted {
            s += q * self.gram(&rest, &c);
        }
        self.gram_memo.insert(key, s.clone());
        s
    }
}

/// All nondecreasing positive-root monomials whose coordinate sum equals
/// `drop`, in lexicographic order of multiplicity vectors.
fn partitions_into_roots(lie: &LieAlgebra, drop: &[i64]) -> Vec<VMono> {
    let mut out = Vec::new();
    let mut cur: VMono = Vec::new();
    fn rec(
        lie: &LieAlgebra,
        out: &mut Vec<VMono>,
        cur: &mut VMono,
        ri: usize,
        remaining: &mut Vec<i64>,
    ) {
        let num_pos = lie.rs.num_positive_roots();
        if ri == num_pos {
            if remaining.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let coords = &lie.rs.roots[ri].coords;
        let maxk = coords
            .iter()
            .zip(remaining.iter())
            .filter(|(c, _)| **c > 0)
            .map(|(c, r)| r / c)
            .min()
            .unwrap_or(0)
            .max(0);
        for k in 0..=maxk {
            if k > 0 {
                for (j, c) in coords.iter().enumerate() {
                    remaining[j] -= c;
                }
                cur.push(ri as u16);
            }
            rec(lie, out, cur, ri + 1, remaining);
        }
        for _ in 0..maxk {
            cur.pop();
        }
        for (j, c) in coords.iter().enumerate() {
            remaining[j] += maxk * c;
        }
    }
    let mut rem = drop.to_vec();
    rec(lie, &mut out, &mut cur, 0, &mut rem);
    out.iter_mut().for_each(|m| m.sort_unstable());
    out.sort();
    out
}

struct WeightSpace {
    weight: Weight,
    monos: Vec<VMono>,
    /// Indices (into `monos`) of the greedily chosen basis of L(λ)_μ.
    selected: Vec<usize>,
    /// Full Gram matrix of `monos`.
    gram: Vec<Vec<Q>>,
}

/// Sparse column matrix over the global module basis.
pub type OpMatrix = Vec<Vec<(usize, Q)>>;

fn op_compose(a: &OpMatrix, b: &OpMatrix) -> OpMatrix {
    b.iter()
        .map(|col| {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, q) in col {
                for (t, p) in &a[*k] {
                    let e = acc.entry(*t).or_insert_with(Q::zero);
                    *e += p * q;
                }
            }
            acc.into_iter().filter(|(_, q)| !q.is_zero()).collect()
        })
        .collect()
}

fn op_scaled_diff(a: &OpMatrix, b: &OpMatrix, denom: &Q) -> OpMatrix {
    a.iter()
        .zip(b)
        .map(|(ca, cb)| {
            let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
            for (t, q) in ca {
                *acc.entry(*t).or_insert_with(Q::zero) += q;
            }
            for (t, q) in cb {
                *acc.entry(*t).or_insert_with(Q::zero) -= q;
            }
            acc.into_iter()
                .map(|(t, q)| (t, q / denom))
                .filter(|(_, q)| !q.is_zero())
                .collect()
        })
        .collect()
}

pub struct Module {
    pub lambda: Weight,
    pub dim: usize,
    /// Weights in increasing coordinate order, with multiplicities.
    pub weights: Vec<Weight>,
    pub weight_dims: Vec<usize>,
    offsets: Vec<usize>,
    widx: HashMap<Weight, usize>,
    /// One matrix per g-basis element.
    ops: Vec<OpMatrix>,
}

impl Module {
    /// Build L(λ) for dominant integral λ, refusing dimensions beyond the
    /// ceiling.
    pub fn build(lie: &LieAlgebra, lambda: &Weight, dim_ceiling: u64) -> Result<Module> {
        let rs = &lie.rs;
        let n = rs.rank();
        if !lambda.is_dominant_integral() {
            return Err(domain_err(format!(
                "highest weight must be dominant integral, got {lambda}"
            )));
        }
        let wd = weyl_dim(rs, lambda)?;
        if wd > dim_ceiling {
            return Err(resource_err(format!(
                "module dimension {wd} exceeds ceiling {dim_ceiling}"
            )));
        }

        let mut ctx = VermaCtx::new(lie, lambda.clone());

        // BFS over weight drops; a missing weight never hides a present one
        // because in an irreducible module every weight below λ has a
        // neighbor one simple root up.
        let mut spaces: BTreeMap<Weight, WeightSpace> = BTreeMap::new();
        let mut visited: BTreeMap<Vec<i64>, bool> = BTreeMap::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        queue.push_back(vec![0; n]);
        visited.insert(vec![0; n], true);
        let simple_fund: Vec<Weight> = (0..n).map(|i| rs.simple_root_weight(i)).collect();

        while let Some(drop) = queue.pop_front() {
            let mut mu = lambda.clone();
            for (i, c) in drop.iter().enumerate() {
                if *c != 0 {
                    mu = mu.sub(&simple_fund[i].scale(&Q::from_integer((*c).into())));
                }
            }
            let monos = partitions_into_roots(lie, &drop);
            if monos.is_empty() {
                continue;
            }
            let m = monos.len();
            let mut gram = vec![vec![Q::zero(); m]; m];
            for i in 0..m {
                for j in i..m {
                    let v = ctx.gram(&monos[i], &monos[j]);
                    gram[i][j] = v.clone();
                    gram[j][i] = v;
                }
            }
            // Greedy first-independent rows: deterministic basis choice.
            let mut probe = Subspace::new(m);
            let mut selected = Vec::new();
            for (i, row) in gram.iter().enumerate() {
                if probe.insert(row) {
                    selected.push(i);
                }
            }
            if selected.is_empty() {
                continue;
            }
            for i in 0..n {
                let mut d = drop.clone();
                d[i] += 1;
                if !visited.contains_key(&d) {
                    visited.insert(d.clone(), true);
                    queue.push_back(d);
                }
            }
            spaces.insert(
                mu.clone(),
                WeightSpace {
                    weight: mu,
                    monos,
                    selected,
                    gram,
                },
            );
        }

        let weights: Vec<Weight> = spaces.keys().cloned().collect();
        let weight_dims: Vec<usize> = spaces.values().map(|s| s.selected.len()).collect();
        let mut offsets = Vec::with_capacity(weights.len());
        let mut total = 0usize;
        for d in &weight_dims {
            offsets.push(total);
            total += d;
        }
        if total as u64 != wd {
            return Err(internal_err(format!(
                "sum of Gram ranks {total} differs from the Weyl dimension {wd}"
            )));
        }
        let widx: HashMap<Weight, usize> = weights
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k))
            .collect();

        // Express a Verma combination in the selected basis of its weight.
        let mono_index: Vec<HashMap<VMono, usize>> = spaces
            .values()
            .map(|s| {
                s.monos
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i))
                    .collect()
            })
            .collect();
        let space_list: Vec<&WeightSpace> = spaces.values().collect();

        let resolve = |target: usize, comb: &VComb| -> Result<Vec<(usize, Q)>> {
            let sp = space_list[target];
            let sel = &sp.selected;
            // right-hand side: pairings of the combination with the selected
            // monomials.
            let mut rhs = vec![Q::zero(); sel.len()];
            for (m, q) in comb {
                let Some(&col) = mono_index[target].get(m) else {
                    return Err(internal_err("straightened monomial missing from weight space"));
                };
                for (r, &si) in sel.iter().enumerate() {
                    let g = sp.gram[si][col].clone();
                    if !g.is_zero() {
                        rhs[r] += g * q;
                    }
                }
            }
            if rhs.iter().all(|x| x.is_zero()) {
                return Ok(Vec::new());
            }
            let a: Vec<Vec<Q>> = sel
                .iter()
                .map(|&i| sel.iter().map(|&j| sp.gram[i][j].clone()).collect())
                .collect();
            let x = solve_dense(&a, &rhs)
                .ok_or_else(|| internal_err("selected Gram system is singular"))?;
            Ok(x.into_iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .collect())
        };

        let dim = total;
        let mut ops: Vec<OpMatrix> = vec![vec![Vec::new(); dim]; lie.dim];

        // Simple and Cartan operators from straightening; words fill the rest.
        for (wi, sp) in space_list.iter().enumerate() {
            for (loc, &si) in sp.selected.iter().enumerate() {
                let col = offsets[wi] + loc;
                let mono = &sp.monos[si];
                for i in 0..n {
                    // h_i: diagonal by the fundamental coordinate.
                    let hval = sp.weight.0[i].clone();
                    if !hval.is_zero() {
                        ops[lie.h(i)][col].push((col, hval));
                    }
                    for (g, dir) in [
                        (lie.e(rs.simple_idx[i]), 1i64),
                        (lie.f(rs.simple_idx[i]), -1i64),
                    ] {
                        let target_w = if dir > 0 {
                            sp.weight.add(&simple_fund[i])
                        } else {
                            sp.weight.sub(&simple_fund[i])
                        };
                        let Some(&ti) = widx.get(&target_w) else {
                            continue;
                        };
                        let comb = ctx.apply(g, mono);
                        if comb.is_empty() {
                            continue;
                        }
                        let coords = resolve(ti, &comb)?;
                        for (l, q) in coords {
                            ops[g][col].push((offsets[ti] + l, q));
                        }
                    }
                }
            }
        }
        for g in 0..lie.dim {
            for col in ops[g].iter_mut() {
                col.sort_by_key(|(t, _)| *t);
            }
        }

        // Non-simple root operators via defining words, in height order.
        for ri in 0..rs.num_positive_roots() {
            let Some((i, b, nc)) = lie.words[ri] else { continue };
            let denom = Q::from_integer(nc.into());
            let ei = ops[lie.e(rs.simple_idx[i])].clone();
            let eb = ops[lie.e(b)].clone();
            ops[lie.e(ri)] = op_scaled_diff(&op_compose(&ei, &eb), &op_compose(&eb, &ei), &denom);
            let fi = ops[lie.f(rs.simple_idx[i])].clone();
            let fb = ops[lie.f(b)].clone();
            let neg = -denom;
            ops[lie.f(ri)] = op_scaled_diff(&op_compose(&fi, &fb), &op_compose(&fb, &fi), &neg);
        }

        let module = Module {
            lambda: lambda.clone(),
            dim,
            weights,
            weight_dims,
            offsets,
            widx,
            ops,
        };

        // The highest vector is killed by every raising operator, and the
        // lowest weight space is a line.
        let hi = module.highest_global();
        for ri in 0..rs.num_positive_roots() {
            if !module.ops[lie.e(ri)][hi].is_empty() {
                return Err(internal_err("raising operator does not kill the highest vector"));
            }
        }
        let lo_w = rs.apply_w0(&(0..n).collect::<Vec<_>>(), lambda);
        let lo_i = module
            .widx
            .get(&lo_w)
            .copied()
            .ok_or_else(|| internal_err("lowest weight missing from the module"))?;
        if module.weight_dims[lo_i] != 1 {
            return Err(internal_err("lowest weight space is not a line"));
        }
        Ok(module)
    }

    pub fn op(&self, g: usize) -> &OpMatrix {
        &self.ops[g]
    }

    pub fn apply(&self, g: usize, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (s, val) in v.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            for (t, c) in &self.ops[g][s] {
                let inc = c * val;
                out[*t] += inc;
            }
        }
        out
    }

    pub fn weight_index(&self, w: &Weight) -> Option<usize> {
        self.widx.get(w).copied()
    }

    pub fn global_index(&self, wi: usize, local: usize) -> usize {
        self.offsets[wi] + local
    }

    /// Weight of a global basis index.
    pub fn weight_of_global(&self, idx: usize) -> &Weight {
        let wi = match self.offsets.binary_search(&idx) {
            Ok(k) => k,
            Err(k) => k - 1,
        };
        &self.weights[wi]
    }

    pub fn highest_global(&self) -> usize {
        let wi = self.widx[&self.lambda];
        self.offsets[wi]
    }

    pub fn lowest_global(&self, lie: &LieAlgebra) -> usize {
        let n = lie.rs.rank();
        let lo_w = lie
            .rs
            .apply_w0(&(0..n).collect::<Vec<_>>(), &self.lambda);
        self.offsets[self.widx[&lo_w]]
    }

    /// Exhaustive check that the operators represent the bracket:
    /// [X_u, X_v] = X_{[u,v]} for every pair of basis elements.  Intended for
    /// small modules in tests.
    pub fn check_bracket_compat(&self, lie: &LieAlgebra) -> Result<()> {
        for u in 0..lie.dim {
            for v in (u + 1)..lie.dim {
                let comm = op_scaled_diff(
                    &op_compose(&self.ops[u], &self.ops[v]),
                    &op_compose(&self.ops[v], &self.ops[u]),
                    &Q::one(),
                );
                let mut expect: BTreeMap<(usize, usize), Q> = BTreeMap::new();
                for (z, c) in lie.bracket(u, v) {
                    for (col, entries) in self.ops[*z].iter().enumerate() {
                        for (t, q) in entries {
                            *expect.entry((col, *t)).or_insert_with(Q::zero) +=
                                q * Q::from_integer((*c).into());
                        }
                    }
                }
                expect.retain(|_, q| !q.is_zero());
                let mut got: BTreeMap<(usize, usize), Q> = BTreeMap::new();
                for (col, entries) in comm.iter().enumerate() {
                    for (t, q) in entries {
                        got.insert((col, *t), q.clone());
                    }
                }
                if got != expect {
                    return Err(internal_err(format!(
                        "operator commutator mismatch on basis pair ({u},{v})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Saturate a set of seed vectors under a list of operators.
fn closure(module: &Module, gens: &[usize], seeds: Vec<Vec<Q>>) -> Subspace {
    let mut space = Subspace::new(module.dim);
    let mut work: VecDeque<Vec<Q>> = VecDeque::new();
    for s in seeds {
        if space.insert(&s) {
            work.push_back(s);
        }
    }
    while let Some(v) = work.pop_front() {
        for &g in gens {
            let w = module.apply(g, &v);
            if w.iter().any(|x| !x.is_zero()) && space.insert(&w) {
                work.push_back(w);
            }
        }
    }
    space
}

fn unit_vector(dim: usize, idx: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[idx] = Q::one();
    v
}

/// Levi generator operators e_i, f_i for i ∈ π′, as g-basis indices.
fn levi_generators(pc: &ParabolicContraction) -> Vec<usize> {
    let lie = &pc.lie;
    pc.pi_prime
        .iter()
        .flat_map(|&i| {
            let si = lie.rs.simple_idx[i];
            [lie.e(si), lie.f(si)]
        })
        .collect()
}

/// V′ = U(r) v_λ inside L(λ).
pub fn levi_highest_submodule(pc: &ParabolicContraction, module: &Module) -> Subspace {
    closure(
        module,
        &levi_generators(pc),
        vec![unit_vector(module.dim, module.highest_global())],
    )
}

#[derive(Debug, Clone)]
pub struct Filtration {
    /// dim ℱ_k − dim ℱ_{k−1} for k = 0, 1, …
    pub graded_dims: Vec<usize>,
    /// Weight-space dimensions of gr_k = ℱ_k/ℱ_{k−1}, per level.
    pub graded_weights: Vec<BTreeMap<Weight, usize>>,
    /// Whether the filtration exhausts the module.
    pub complete: bool,
}

impl Filtration {
    /// Σ_k dim (gr_k)_μ for each weight μ.
    pub fn weight_totals(&self) -> BTreeMap<Weight, usize> {
        let mut tot: BTreeMap<Weight, usize> = BTreeMap::new();
        for level in &self.graded_weights {
            for (w, d) in level {
                *tot.entry(w.clone()).or_insert(0) += d;
            }
        }
        tot
    }
}

fn weight_counts(module: &Module, space: &Subspace) -> BTreeMap<Weight, usize> {
    let mut out: BTreeMap<Weight, usize> = BTreeMap::new();
    for row in &space.rows {
        let lead = row.iter().position(|x| !x.is_zero()).unwrap();
        *out.entry(module.weight_of_global(lead).clone()).or_insert(0) += 1;
    }
    out
}

fn counts_diff(
    cur: &BTreeMap<Weight, usize>,
    prev: &BTreeMap<Weight, usize>,
) -> Result<BTreeMap<Weight, usize>> {
    let mut diff = cur.clone();
    for (w, d) in prev {
        let e = diff
            .get_mut(w)
            .ok_or_else(|| internal_err("filtration level lost a weight space"))?;
        *e -= d;
    }
    diff.retain(|_, d| *d > 0);
    Ok(diff)
}

/// ℱ₀ = V′, ℱ_k = ℱ_{k−1} + Σ_{γ∈m} f_γ ℱ_{k−1}.  Only the previous step's
/// newly added vectors need another application of the f_γ: images of older
/// ones already landed a level down.
pub fn pbw_filtration(pc: &ParabolicContraction, module: &Module) -> Result<Filtration> {
    let lie = &pc.lie;
    let mut cur = levi_highest_submodule(pc, module);
    let mut frontier: Vec<Vec<Q>> = cur.rows.clone();
    let mut prev_counts = weight_counts(module, &cur);
    let mut prev_dim = cur.dim();
    let mut graded_dims = vec![prev_dim];
    let mut graded_weights = vec![prev_counts.clone()];
    let mut complete = cur.dim() == module.dim;
    while !complete {
        let mut new_frontier = Vec::new();
        for w in &frontier {
            for &g in &pc.m_pos {
                let img = module.apply(lie.f(g), w);
                if cur.insert(&img) {
                    new_frontier.push(img);
                }
            }
        }
        if new_frontier.is_empty() {
            break; // stalled strictly below the full module
        }
        let counts = weight_counts(module, &cur);
        graded_weights.push(counts_diff(&counts, &prev_counts)?);
        graded_dims.push(cur.dim() - prev_dim);
        prev_counts = counts;
        prev_dim = cur.dim();
        frontier = new_frontier;
        complete = cur.dim() == module.dim;
    }
    Ok(Filtration {
        graded_dims,
        graded_weights,
        complete,
    })
}

/// The joint kernel of the raising operators e_γ, γ ∈ m, must be exactly V′.
pub fn check_annihilator(pc: &ParabolicContraction, module: &Module) -> Result<bool> {
    let lie = &pc.lie;
    let dim = module.dim;
    let mut rows = Vec::new();
    for &g in &pc.m_pos {
        let op = module.op(lie.e(g));
        // transpose columns into constraint rows
        let mut dense_rows: Vec<Vec<Q>> = Vec::new();
        let mut row_of: HashMap<usize, usize> = HashMap::new();
        for (col, entries) in op.iter().enumerate() {
            for (t, q) in entries {
                let r = *row_of.entry(*t).or_insert_with(|| {
                    dense_rows.push(vec![Q::zero(); dim]);
                    dense_rows.len() - 1
                });
                dense_rows[r][col] = q.clone();
            }
        }
        rows.extend(dense_rows);
    }
    let sparse = rows.iter().map(|r| sparse_from_qvec(r));
    let kernel = crate::linalg::echelon(sparse, dim).kernel_basis();
    let mut kspace = Subspace::new(dim);
    for v in kernel {
        kspace.insert(&v);
    }
    let vprime = levi_highest_submodule(pc, module);
    Ok(kspace == vprime)
}

/// Ordered monomials f_{γ₁}⋯f_{γ_k} (γ₁ ≤ … ≤ γ_k in m) applied to V′,
/// together with ℱ_{k−1}, must span ℱ_k at every level.
/// At every level, the images of ordered degree-k monomials f_{γ₁}⋯f_{γ_k}
/// (positions nondecreasing in `m_pos`) applied to V′ must span ℱ_k over
/// ℱ_{k−1}.  Images are extended one leftmost letter at a time, which keeps
/// them ordered, and the span comparison is a dimension count since the
/// mono span sits inside ℱ_k by construction.
pub fn check_graded_identity(pc: &ParabolicContraction, module: &Module) -> Result<bool> {
    let lie = &pc.lie;
    let m_len = pc.m_pos.len();
    let mut cur = levi_highest_submodule(pc, module);
    // (position of the current leftmost letter, image vector); the sentinel
    // m_len on the empty word admits any first letter.
    let mut images: Vec<(usize, Vec<Q>)> =
        cur.rows.iter().map(|r| (m_len, r.clone())).collect();
    let mut frontier: Vec<Vec<Q>> = cur.rows.clone();
    while cur.dim() < module.dim {
        let mut next_images = Vec::new();
        for (pos, w) in &images {
            for p in 0..(*pos).min(m_len - 1) + 1 {
                next_images.push((p, module.apply(lie.f(pc.m_pos[p]), w)));
            }
        }
        let mut span = cur.clone();
        for (_, v) in &next_images {
            span.insert(v);
        }
        let mut new_frontier = Vec::new();
        for w in &frontier {
            for &g in &pc.m_pos {
                let img = module.apply(lie.f(g), w);
                if cur.insert(&img) {
                    new_frontier.push(img);
                }
            }
        }
        if new_frontier.is_empty() || span.dim() != cur.dim() {
            return Ok(false);
        }
        images = next_images;
        frontier = new_frontier;
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct MatrixCoeffOutcome {
    /// Blocks (weight, kernel dimension) with nonzero kernel.
    pub blocks: Vec<(Weight, usize)>,
    pub total: usize,
}

/// The space of r′-equivariant maps V″ → V′, where V′ = U(r)v_λ and
/// V″ = U(r)v_{w₀λ}, computed per weight block of V″* ⊗ V′.
pub fn matrix_coeff_invariants(
    pc: &ParabolicContraction,
    module: &Module,
) -> Result<MatrixCoeffOutcome> {
    let lie = &pc.lie;
    let gens = levi_generators(pc);
    let vp = closure(
        module,
        &gens,
        vec![unit_vector(module.dim, module.highest_global())],
    );
    let vpp = closure(
        module,
        &gens,
        vec![unit_vector(module.dim, module.lowest_global(lie))],
    );

    // Basis rows are weight vectors; read the weight off the pivot.
    let row_weight = |row: &Vec<Q>| -> Weight {
        let lead = row.iter().position(|x| !x.is_zero()).unwrap();
        module.weight_of_global(lead).clone()
    };
    let wts_p: Vec<Weight> = vp.rows.iter().map(&row_weight).collect();
    let wts_pp: Vec<Weight> = vpp.rows.iter().map(&row_weight).collect();

    // Restricted operator matrices on V′ and V″ for every generator.
    let restrict = |space: &Subspace| -> Result<Vec<Vec<Vec<Q>>>> {
        let d = space.dim();
        let mut mats = Vec::with_capacity(gens.len());
        for &g in &gens {
            let mut m = vec![vec![Q::zero(); d]; d]; // m[row][col]
            for (col, row_vec) in space.rows.iter().enumerate() {
                let img = module.apply(g, row_vec);
                let coords = space
                    .express(&img)
                    .ok_or_else(|| internal_err("submodule is not operator-stable"))?;
                for (r, q) in coords.into_iter().enumerate() {
                    m[r][col] = q;
                }
            }
            mats.push(m);
        }
        Ok(mats)
    };
    let mats_p = restrict(&vp)?;
    let mats_pp = restrict(&vpp)?;

    // Hom(V″, V′) basis ξ_a ⊗ p_b, blocked by wt(p_b) − wt(q_a).
    let mut blocks: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
    for a in 0..vpp.dim() {
        for b in 0..vp.dim() {
            let nu = wts_p[b].sub(&wts_pp[a]);
            blocks.entry(nu).or_default().push((a, b));
        }
    }

    let mut out_blocks = Vec::new();
    let mut total = 0usize;
    for (nu, pairs) in &blocks {
        // One constraint row per (generator, target pair):
        // x·(ξ_a ⊗ p_b) = Σ_{b′} M′[b′][b] ξ_a⊗p_{b′} − Σ_{a′} M″[a][a′] ξ_{a′}⊗p_b
        let mut rows: BTreeMap<(usize, usize, usize), Vec<Q>> = BTreeMap::new();
        for (srci, &(a, b)) in pairs.iter().enumerate() {
            for (gi, (mp, mpp)) in mats_p.iter().zip(&mats_pp).enumerate() {
                for (bp, mrow) in mp.iter().enumerate() {
                    if mrow[b].is_zero() {
                        continue;
                    }
                    let row = rows
                        .entry((gi, a, bp))
                        .or_insert_with(|| vec![Q::zero(); pairs.len()]);
                    row[srci] += &mrow[b];
                }
                for ap in 0..vpp.dim() {
                    if mpp[a][ap].is_zero() {
                        continue;
                    }
                    let row = rows
                        .entry((gi, ap, b))
                        .or_insert_with(|| vec![Q::zero(); pairs.len()]);
                    row[srci] -= &mpp[a][ap];
                }
            }
        }
        let sparse = rows.values().map(|r| sparse_from_qvec(r));
        let kernel = crate::linalg::echelon(sparse, pairs.len()).kernel_basis();
        if !kernel.is_empty() {
            total += kernel.len();
            out_blocks.push((nu.clone(), kernel.len()));
        }
    }
    Ok(MatrixCoeffOutcome {
        blocks: out_blocks,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::OrbitData;
    use crate::rootsys::SimpleType;

    fn lie(t: &str) -> LieAlgebra {
        LieAlgebra::new(t.parse::<SimpleType>().unwrap()).unwrap()
    }

    fn w(coords: &[i64]) -> Weight {
        Weight::from_i64s(coords)
    }

    #[test]
    fn sl2_modules() {
        let l = lie("A1");
        for m in 0..5 {
            let md = Module::build(&l, &w(&[m]), 300).unwrap();
            assert_eq!(md.dim, (m + 1) as usize);
            assert!(md.weight_dims.iter().all(|&d| d == 1));
            md.check_bracket_compat(&l).unwrap();
        }
    }

    #[test]
    fn sl2_gram_degeneracy_kills_excess_weights() {
        // For λ = ϖ the Verma monomial f²v has norm (2λ−2)λ = 0, so the
        // weight λ−2α does not survive into the irreducible.
        let l = lie("A1");
        let md = Module::build(&l, &w(&[1]), 300).unwrap();
        assert_eq!(md.dim, 2);
        assert_eq!(md.weights.len(), 2);
    }

    #[test]
    fn a2_fundamental_and_adjoint() {
        let l = lie("A2");
        let md = Module::build(&l, &w(&[1, 0]), 300).unwrap();
        assert_eq!(md.dim, 3);
        assert_eq!(md.weight_dims, vec![1, 1, 1]);
        md.check_bracket_compat(&l).unwrap();

        let adj = Module::build(&l, &w(&[1, 1]), 300).unwrap();
        assert_eq!(adj.dim, 8);
        // the zero weight space of the adjoint is the Cartan
        let zi = adj.weight_index(&w(&[0, 0])).unwrap();
        assert_eq!(adj.weight_dims[zi], 2);
        adj.check_bracket_compat(&l).unwrap();
    }

    #[test]
    fn b2_and_g2_dimensions() {
        let l = lie("B2");
        assert_eq!(Module::build(&l, &w(&[0, 1]), 300).unwrap().dim, 4);
        assert_eq!(Module::build(&l, &w(&[1, 1]), 300).unwrap().dim, 16);
        let l = lie("G2");
        assert_eq!(Module::build(&l, &w(&[1, 0]), 300).unwrap().dim, 7);
    }

    #[test]
    fn dimension_ceiling_is_enforced() {
        let l = lie("A2");
        assert!(Module::build(&l, &w(&[3, 3]), 50).is_err());
    }

    #[test]
    fn pbw_filtration_a2_vpi2() {
        let pc = ParabolicContraction::new("A2".parse().unwrap(), &[0]).unwrap();
        let md = Module::build(&pc.lie, &w(&[0, 1]), 300).unwrap();
        let f = pbw_filtration(&pc, &md).unwrap();
        assert!(f.complete);
        assert_eq!(f.graded_dims, vec![1, 2]);
        // per-weight graded totals reproduce the weight-space dimensions
        let totals = f.weight_totals();
        for (w, d) in md.weights.iter().zip(&md.weight_dims) {
            assert_eq!(totals.get(w), Some(d));
        }
    }

    #[test]
    fn pbw_filtration_borel_counts_by_height() {
        // For the Borel contraction V′ = ⟨v_λ⟩ and ℱ_k = U_k(n⁻)v_λ.
        let pc = ParabolicContraction::new("A1".parse().unwrap(), &[]).unwrap();
        let md = Module::build(&pc.lie, &w(&[3]), 300).unwrap();
        let f = pbw_filtration(&pc, &md).unwrap();
        assert!(f.complete);
        assert_eq!(f.graded_dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn annihilator_and_graded_identity_small() {
        for (t, sub, lam) in [
            ("A2", vec![0usize], vec![0i64, 1]),
            ("A2", vec![0], vec![1, 1]),
            ("A2", vec![], vec![1, 1]),
            ("B2", vec![0], vec![1, 0]),
            ("B2", vec![1], vec![0, 1]),
        ] {
            let pc = ParabolicContraction::new(t.parse().unwrap(), &sub).unwrap();
            let md = Module::build(&pc.lie, &w(&lam), 300).unwrap();
            assert!(
                check_annihilator(&pc, &md).unwrap(),
                "annihilator fails {t} {sub:?} {lam:?}"
            );
            assert!(
                check_graded_identity(&pc, &md).unwrap(),
                "graded identity fails {t} {sub:?} {lam:?}"
            );
        }
    }

    #[test]
    fn matrix_coefficients_detect_the_semigroup() {
        let pc = ParabolicContraction::new("A2".parse().unwrap(), &[0]).unwrap();
        let rs = &pc.lie.rs;
        let od = OrbitData::new(rs, &[0]).unwrap();
        // ϖ₁ ∉ 𝒟: no invariant.
        let md = Module::build(&pc.lie, &w(&[1, 0]), 300).unwrap();
        let out = matrix_coeff_invariants(&pc, &md).unwrap();
        assert_eq!(out.total, 0);
        // ρ ∈ 𝒟: one invariant of weight w₀′ρ − w₀ρ = 3ϖ₂.
        let md = Module::build(&pc.lie, &w(&[1, 1]), 300).unwrap();
        let out = matrix_coeff_invariants(&pc, &md).unwrap();
        assert_eq!(out.total, 1);
        assert_eq!(out.blocks, vec![(w(&[0, 3]), 1)]);
        assert_eq!(od.weight_drop(rs, &w(&[1, 1])), w(&[0, 3]));
    }

    #[test]
    fn matrix_coefficients_borel_always_one() {
        let pc = ParabolicContraction::new("A1".parse().unwrap(), &[]).unwrap();
        for m in 0..4 {
            let md = Module::build(&pc.lie, &w(&[m]), 300).unwrap();
            let out = matrix_coeff_invariants(&pc, &md).unwrap();
            assert_eq!(out.total, 1);
            assert_eq!(out.blocks, vec![(w(&[2 * m]), 1)]);
        }
    }
}
