//! Bounded randomized search for structure tensors satisfying the
//! defining identity at a fixed `q`.
//!
//! The generator is seeded, the scan order is fixed, and duplicates are
//! removed up to basis permutation, so a `(dim, q, trials, seed)` tuple
//! always yields the same catalog.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{check_q_flexible, AlgebraRef, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::Tensor3;
use crate::rational::Rat;

/// Identifier of the pseudo-random generator, recorded in run reports.
pub const RNG_ALGORITHM: &str = "chacha8";

/// Search dimensions are capped: the scan is meant for desk-scale
/// evidence, not enumeration of large algebras.
pub const MAX_SEARCH_DIM: usize = 4;

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub dim: usize,
    pub q: Rat,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct SearchCatalog {
    pub params: SearchParams,
    pub rng_algorithm: &'static str,
    /// Verified hits keyed by permutation-canonical form, in key order.
    pub found: Vec<AlgebraRef>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

fn tensor_key(t: &Tensor3) -> String {
    t.iter_nonzero()
        .map(|((i, j, k), c)| format!("{i},{j},{k}:{c};"))
        .collect()
}

/// Lexicographically least rendering of the tensor over all basis
/// permutations; two tensors get the same key exactly when they differ
/// by a relabeling of the basis.
fn canonical_key(t: &Tensor3) -> String {
    permutations(t.dim())
        .iter()
        .map(|p| tensor_key(&t.permuted(p)))
        .min()
        .expect("at least the identity permutation exists")
}

/// Runs the search and returns every verified hit, deduplicated under
/// basis permutation.
pub fn search_q_flexible(params: SearchParams) -> Result<SearchCatalog> {
    if params.dim == 0 || params.dim > MAX_SEARCH_DIM {
        return Err(Error::shape(
            format!("search dimension in 1..={MAX_SEARCH_DIM}"),
            format!("{}", params.dim),
        ));
    }
    let dim = params.dim;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let pool = [
        Rat::from(-2),
        Rat::from(-1),
        Rat::new(-1, 2),
        Rat::new(1, 2),
        Rat::one(),
        Rat::from(2),
    ];
    let max_entries = (dim * dim).min(4);
    let mut found: BTreeMap<String, AlgebraRef> = BTreeMap::new();

    for _ in 0..params.trials {
        let entries = rng.random_range(1..=max_entries);
        let mut t = Tensor3::zeros(dim);
        for _ in 0..entries {
            let i = rng.random_range(0..dim);
            let j = rng.random_range(0..dim);
            let k = rng.random_range(0..dim);
            let value = pool[rng.random_range(0..pool.len())].clone();
            t.set(i, j, k, value).unwrap();
        }
        if t.nonzero_count() == 0 {
            continue;
        }
        let key = canonical_key(&t);
        if found.contains_key(&key) {
            continue;
        }
        let alg = AlgebraSpec::with_default_names(params.q.clone(), t).shared();
        if check_q_flexible(&alg).verdict {
            found.insert(key, alg);
        }
    }

    Ok(SearchCatalog {
        params,
        rng_algorithm: RNG_ALGORITHM,
        found: found.into_values().collect(),
    })
}
