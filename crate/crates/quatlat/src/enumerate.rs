//! Exhaustive short-vector enumeration with exact rational interval bounds
//! derived from the LDL^T decomposition of the Gram matrix. No square roots
//! appear: interval endpoints are integer solutions of exact quadratic
//! inequalities.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lll::ldl;
use crate::matrix::RatMatrix;
use crate::rational::{ceil_minus_sqrt, floor_plus_sqrt, Rat};

/// Default cap on the number of enumeration tree nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

struct Search<'a> {
    mu: Vec<Vec<Rat>>,
    d: Vec<Rat>,
    budget: u64,
    nodes: u64,
    /// Current pruning bound. Fixed for exhaustive runs; tightened to the
    /// best norm seen when hunting the minimum.
    bound: Rat,
    shrink: bool,
    found: Vec<(Vec<BigInt>, Rat)>,
    v: Vec<BigInt>,
    _marker: std::marker::PhantomData<&'a ()>,
}

impl Search<'_> {
    /// Level j chooses coordinate v_j; `spent` is the exact norm consumed by
    /// coordinates above j, `offsets[i]` is sum_{t>j} v_t * mu[t][i].
    fn walk(&mut self, j: usize, spent: &Rat, offsets: &[Rat]) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        let allow = &self.bound - spent;
        if allow.is_negative() {
            return Ok(());
        }
        let c = offsets[j].clone();
        let q = &allow / &self.d[j];
        let neg_c = -c.clone();
        let lo = ceil_minus_sqrt(&neg_c, &q);
        let hi = floor_plus_sqrt(&neg_c, &q);
        let mut x = lo;
        while x <= hi {
            let xr = Rat::from_integer(x.clone());
            let off = &xr + &c;
            let term = &self.d[j] * &off * &off;
            let total = spent + &term;
            // The bound may have shrunk below this branch's cost while we
            // iterated, so re-check before descending.
            if total > self.bound {
                x += 1u32;
                continue;
            }
            self.v[j] = x.clone();
            if j == 0 {
                if self.v.iter().any(|coord| !coord.is_zero()) {
                    if self.shrink && total < self.bound {
                        self.bound = total.clone();
                    }
                    self.found.push((self.v.clone(), total));
                }
            } else {
                let mut next = offsets.to_vec();
                for (i, slot) in next.iter_mut().enumerate().take(j) {
                    *slot = &offsets[i] + &xr * &self.mu[j][i];
                }
                self.walk(j - 1, &total, &next)?;
            }
            x += 1u32;
        }
        self.v[j] = BigInt::zero();
        Ok(())
    }
}

fn run_search(
    gram: &RatMatrix,
    bound: &Rat,
    budget: u64,
    shrink: bool,
) -> Result<Vec<(Vec<BigInt>, Rat)>> {
    let (mu, d) = ldl(gram)?;
    let n = gram.rows();
    let mut search = Search {
        mu,
        d,
        budget,
        nodes: 0,
        bound: bound.clone(),
        shrink,
        found: Vec::new(),
        v: vec![BigInt::zero(); n],
        _marker: std::marker::PhantomData,
    };
    let offsets = vec![Rat::zero(); n];
    search.walk(n - 1, &Rat::zero(), &offsets)?;
    let mut found = search.found;
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found)
}

/// Returns every nonzero integer vector `v` with `v * gram * v^T <= bound`,
/// each exactly once (both `v` and `-v` appear), sorted lexicographically.
pub fn enumerate_up_to(gram: &RatMatrix, bound: &Rat, budget: u64) -> Result<Vec<Vec<BigInt>>> {
    Ok(enumerate_with_norms(gram, bound, budget)?
        .into_iter()
        .map(|(v, _)| v)
        .collect())
}

/// As `enumerate_up_to`, pairing each vector with its exact squared norm.
pub fn enumerate_with_norms(
    gram: &RatMatrix,
    bound: &Rat,
    budget: u64,
) -> Result<Vec<(Vec<BigInt>, Rat)>> {
    if !bound.is_positive() {
        ldl(gram)?; // still validate positive definiteness
        return Ok(Vec::new());
    }
    run_search(gram, bound, budget, false)
}

/// Exact lattice minimum and all vectors attaining it, pruning the tree to
/// the best norm found so far. `initial_bound` must be attained by at least
/// one nonzero vector (e.g. the smallest Gram diagonal entry).
pub fn shortest_vectors(
    gram: &RatMatrix,
    initial_bound: &Rat,
    budget: u64,
) -> Result<(Rat, Vec<Vec<BigInt>>)> {
    let found = run_search(gram, initial_bound, budget, true)?;
    let min = found
        .iter()
        .map(|(_, norm)| norm.clone())
        .min()
        .expect("initial bound is attained by a basis vector");
    let vs: Vec<Vec<BigInt>> = found
        .into_iter()
        .filter(|(_, norm)| *norm == min)
        .map(|(v, _)| v)
        .collect();
    Ok((min, vs))
}
