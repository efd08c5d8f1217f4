//! The double of an algebra and a chosen algebra structure on its dual
//! space, the canonical bilinear form, and the Manin-triple verdict.
//!
//! Starting from a primal algebra `(A, .)` and a second structure
//! `(A*, o)` on the dual space (coordinatized in the dual basis, so dual
//! operators are plain transposes), four derived operator families are
//! formed: the transposed multiplications `Rdot*, Ldot*` of the primal
//! and `Rcirc*, Lcirc*` of the dual. The double is `A (+) A*` with
//!
//! ```text
//! (x + a) * (y + b) = (x.y + Rcirc*(a)y + Lcirc*(b)x)
//!                   + (a o b + Rdot*(x)b + Ldot*(y)a)
//! ```
//!
//! The canonical form `B(x + a, y + b) = <x, b> + <y, a>` is symmetric,
//! nondegenerate, and invariant for this product by construction; the
//! checker confirms it rather than assuming it. The double satisfies the
//! defining identity exactly when three coupling conditions hold, which
//! is also equivalent to the assembled sixtuple being a matched pair and
//! to the triple `(A (+) A*, A, A*)` being a Manin triple. All three
//! routes are computed independently so their agreement is an observable,
//! not an assumption.

use std::sync::Arc;

use crate::algebra::{check_q_flexible, op_combination, AlgebraRef, AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tensor3, Vector};
use crate::matched_pair::MatchedPair;
use crate::rational::Rat;
use crate::report::CheckReport;

#[derive(Clone, Debug)]
pub struct DoubleSpec {
    primal: AlgebraRef,
    dual: AlgebraRef,
    /// Transposes of the primal right multiplications, acting on dual
    /// coordinates; indexed by primal basis.
    rdot_star: Vec<Matrix>,
    /// Transposes of the primal left multiplications.
    ldot_star: Vec<Matrix>,
    /// Transposes of the dual right multiplications, acting on primal
    /// coordinates; indexed by dual basis.
    rcirc_star: Vec<Matrix>,
    /// Transposes of the dual left multiplications.
    lcirc_star: Vec<Matrix>,
    double: AlgebraRef,
}

impl DoubleSpec {
    /// Builds the double data from a primal algebra and the structure
    /// tensor of the dual product, given in dual-basis coordinates.
    pub fn new(primal: AlgebraRef, dual_products: Tensor3) -> Result<Self> {
        if dual_products.dim() != primal.dim() {
            return Err(Error::shape(
                format!("dual structure of dimension {}", primal.dim()),
                format!("dimension {}", dual_products.dim()),
            ));
        }
        let dual_names: Vec<String> = primal
            .basis_names()
            .iter()
            .map(|n| format!("{n}*"))
            .collect();
        let dual = AlgebraSpec::new(primal.q().clone(), dual_names, dual_products)?.shared();

        let rdot_star: Vec<Matrix> = (0..primal.dim())
            .map(|i| primal.right_mult_basis(i).transpose())
            .collect();
        let ldot_star: Vec<Matrix> = (0..primal.dim())
            .map(|i| primal.left_mult_basis(i).transpose())
            .collect();
        let rcirc_star: Vec<Matrix> = (0..dual.dim())
            .map(|i| dual.right_mult_basis(i).transpose())
            .collect();
        let lcirc_star: Vec<Matrix> = (0..dual.dim())
            .map(|i| dual.left_mult_basis(i).transpose())
            .collect();

        let pair = MatchedPair::new(
            primal.clone(),
            dual.clone(),
            rdot_star.clone(),
            ldot_star.clone(),
            rcirc_star.clone(),
            lcirc_star.clone(),
        )?;
        let double = pair.bicrossed_unchecked();

        Ok(DoubleSpec {
            primal,
            dual,
            rdot_star,
            ldot_star,
            rcirc_star,
            lcirc_star,
            double,
        })
    }

    /// Double against the zero product on the dual space.
    pub fn with_zero_dual(primal: AlgebraRef) -> Self {
        let dim = primal.dim();
        DoubleSpec::new(primal, Tensor3::zeros(dim)).expect("zero dual has matching dimension")
    }

    pub fn primal(&self) -> &AlgebraRef {
        &self.primal
    }

    pub fn dual(&self) -> &AlgebraRef {
        &self.dual
    }

    /// The four derived operator families `(Rdot*, Ldot*, Rcirc*, Lcirc*)`.
    pub fn derived_maps(&self) -> (&[Matrix], &[Matrix], &[Matrix], &[Matrix]) {
        (
            &self.rdot_star,
            &self.ldot_star,
            &self.rcirc_star,
            &self.lcirc_star,
        )
    }

    /// The sixtuple `(A, A*, Rdot*, Ldot*, Rcirc*, Lcirc*)` as a matched
    /// pair, for the cross-oracle equivalence with the three-condition
    /// checker.
    pub fn as_matched_pair(&self) -> MatchedPair {
        MatchedPair::new(
            self.primal.clone(),
            self.dual.clone(),
            self.rdot_star.clone(),
            self.ldot_star.clone(),
            self.rcirc_star.clone(),
            self.lcirc_star.clone(),
        )
        .expect("dimensions agree by construction")
    }

    /// The `2n`-dimensional double algebra. Construction is always
    /// defined; whether it satisfies the defining identity is what
    /// [`DoubleSpec::check_dual_matched_pair`] decides.
    pub fn build_double(&self) -> AlgebraRef {
        Arc::clone(&self.double)
    }

    /// Copy with one dual structure constant shifted, for mutation tests.
    pub fn with_dual_entry_bumped(
        &self,
        i: usize,
        j: usize,
        k: usize,
        delta: &Rat,
    ) -> Result<Self> {
        let mut t = self.dual.structure().clone();
        let cur = t.get(i, j, k) + delta;
        t.set(i, j, k, cur)?;
        DoubleSpec::new(self.primal.clone(), t)
    }

    fn rcirc_of(&self, v: &Vector) -> Matrix {
        op_combination(&self.rcirc_star, v)
    }

    fn lcirc_of(&self, v: &Vector) -> Matrix {
        op_combination(&self.lcirc_star, v)
    }

    /// Checks that the sixtuple is a matched pair through the reduced
    /// three-condition route: both algebras satisfy the defining
    /// identity, and for all basis `x, y` of the primal and `a` of the
    /// dual the three displayed identities hold as vector identities
    /// (the remaining quantifier is eliminated by nondegeneracy of the
    /// pairing).
    pub fn check_dual_matched_pair(&self) -> CheckReport {
        let flex_p = check_q_flexible(&self.primal);
        if !flex_p.verdict {
            return prefixed(flex_p, "primal");
        }
        let flex_d = check_q_flexible(&self.dual);
        if !flex_d.verdict {
            return prefixed(flex_d, "dual");
        }
        let n = self.primal.dim();
        for cond in 1..=3 {
            for x in 0..n {
                for y in 0..n {
                    for a in 0..n {
                        let residual = self.dual_condition_residual(cond, x, y, a);
                        if !residual.is_zero() {
                            return CheckReport::fail(
                                format!("dual-matched-pair-condition-{cond}"),
                                [x, y, a],
                                residual.into_entries(),
                                [
                                    self.primal.basis_name(x).to_string(),
                                    self.primal.basis_name(y).to_string(),
                                    self.dual.basis_name(a).to_string(),
                                ],
                                self.primal.basis_names(),
                            );
                        }
                    }
                }
            }
        }
        CheckReport::pass("dual-matched-pair")
    }

    fn dual_condition_residual(&self, cond: usize, x: usize, y: usize, a: usize) -> Vector {
        let alg = &self.primal;
        let n = alg.dim();
        let q = alg.q();
        let ex = Vector::basis(n, x);
        let ey = Vector::basis(n, y);
        let ea = Vector::basis(n, a);
        let xy = alg.basis_product(x, y);
        let yx = alg.basis_product(y, x);
        let rc_a = &self.rcirc_star[a];
        let lc_a = &self.lcirc_star[a];
        let (lhs, rhs) = match cond {
            1 => {
                // (Rc*(a)x).y + Rc*(Ld*(x)a)y - Rc*(a)(x.y)
                //   = q [ Lc*(a)(y.x) - y.(Lc*(a)x) - Lc*(Rd*(x)a)y ]
                let lhs = &(&alg.product(&rc_a.apply(&ex), &ey)
                    + &self.rcirc_of(&self.ldot_star[x].apply(&ea)).apply(&ey))
                    - &rc_a.apply(&xy);
                let rhs = &(&lc_a.apply(&yx) - &alg.product(&ey, &lc_a.apply(&ex)))
                    - &self.lcirc_of(&self.rdot_star[x].apply(&ea)).apply(&ey);
                (lhs, rhs)
            }
            2 => {
                // Lc*(a)(x.y) - x.(Lc*(a)y) - Lc*(Rd*(y)a)x
                //   = q [ (Rc*(a)y).x + Rc*(Ld*(y)a)x - Rc*(a)(y.x) ]
                let lhs = &(&lc_a.apply(&xy) - &alg.product(&ex, &lc_a.apply(&ey)))
                    - &self.lcirc_of(&self.rdot_star[y].apply(&ea)).apply(&ex);
                let rhs = &(&alg.product(&rc_a.apply(&ey), &ex)
                    + &self.rcirc_of(&self.ldot_star[y].apply(&ea)).apply(&ex))
                    - &rc_a.apply(&yx);
                (lhs, rhs)
            }
            3 => {
                // (Lc*(a)x).y + Rc*(Rd*(x)a)y - x.(Rc*(a)y) - Lc*(Ld*(y)a)x
                //   = q [ (Lc*(a)y).x + Rc*(Rd*(y)a)x - y.(Rc*(a)x) - Lc*(Ld*(x)a)y ]
                let lhs = &(&(&alg.product(&lc_a.apply(&ex), &ey)
                    + &self.rcirc_of(&self.rdot_star[x].apply(&ea)).apply(&ey))
                    - &alg.product(&ex, &rc_a.apply(&ey)))
                    - &self.lcirc_of(&self.ldot_star[y].apply(&ea)).apply(&ex);
                let rhs = &(&(&alg.product(&lc_a.apply(&ey), &ex)
                    + &self.rcirc_of(&self.rdot_star[y].apply(&ea)).apply(&ex))
                    - &alg.product(&ey, &rc_a.apply(&ex)))
                    - &self.lcirc_of(&self.ldot_star[x].apply(&ea)).apply(&ey);
                (lhs, rhs)
            }
            _ => panic!("dual condition index must be 1..=3"),
        };
        &lhs - &rhs.scale(q)
    }

    /// The Gram matrix of the canonical form on the double basis:
    /// block-antidiagonal identity, so `B(e_i, e^j) = delta_i^j` and the
    /// two blocks are isotropic.
    pub fn pairing_matrix(&self) -> Matrix {
        let n = self.primal.dim();
        let mut m = Matrix::zeros(2 * n);
        for i in 0..n {
            m.set(i, n + i, Rat::one());
            m.set(n + i, i, Rat::one());
        }
        m
    }

    /// The canonical form on coefficient vectors of the double:
    /// `B(x + a, y + b) = <x, b> + <y, a>`.
    pub fn bilinear_form_vectors(&self, u: &Vector, v: &Vector) -> Result<Rat> {
        let n = self.primal.dim();
        if u.len() != 2 * n || v.len() != 2 * n {
            return Err(Error::shape(
                format!("vectors of length {}", 2 * n),
                format!("lengths {} and {}", u.len(), v.len()),
            ));
        }
        let mut acc = Rat::zero();
        for i in 0..n {
            acc = acc + u.get(i) * v.get(n + i) + u.get(n + i) * v.get(i);
        }
        Ok(acc)
    }

    /// The canonical form on elements of the built double algebra.
    pub fn bilinear_form(&self, u: &Element, v: &Element) -> Result<Rat> {
        if u.algebra() != &self.double || v.algebra() != &self.double {
            return Err(Error::AlgebraMismatch);
        }
        self.bilinear_form_vectors(u.coeffs(), v.coeffs())
    }

    /// Invariance `B(u * v, w) = B(u, v * w)` over all basis triples of
    /// the double.
    pub fn check_invariance(&self) -> CheckReport {
        check_invariance_of(&self.double, self.primal.dim())
    }

    /// Both blocks of the canonical splitting as Lagrangian subalgebras:
    /// closed under the product, isotropic for the form, of half the
    /// dimension.
    fn check_lagrangian_block(&self, offset: usize, label: &str) -> CheckReport {
        let n = self.primal.dim();
        let names = self.double.basis_names();
        for i in 0..n {
            for j in 0..n {
                let prod = self.double.basis_product(offset + i, offset + j);
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() && !(offset..offset + n).contains(&k) {
                        return CheckReport {
                            identity: format!("lagrangian-{label}"),
                            verdict: false,
                            witness: Some([offset + i, offset + j, k]),
                            residual: Some(prod.entries().to_vec()),
                            detail: Some(format!(
                                "{} * {} leaves the block: {}",
                                names[offset + i],
                                names[offset + j],
                                crate::linalg::pretty_combination(prod.entries(), names)
                            )),
                        };
                    }
                }
                let pairing = self
                    .bilinear_form_vectors(
                        &Vector::basis(2 * n, offset + i),
                        &Vector::basis(2 * n, offset + j),
                    )
                    .expect("double vectors have the right length");
                if !pairing.is_zero() {
                    return CheckReport {
                        identity: format!("lagrangian-{label}"),
                        verdict: false,
                        witness: Some([offset + i, offset + j, 0]),
                        residual: Some(vec![pairing.clone()]),
                        detail: Some(format!(
                            "form does not vanish on ({}, {})",
                            names[offset + i],
                            names[offset + j]
                        )),
                    };
                }
            }
        }
        CheckReport::pass(format!("lagrangian-{label}"))
    }

    /// Evaluates the three equivalent characterizations independently
    /// and reports all of them together with their agreement.
    pub fn manin_verdict(&self) -> ManinReport {
        let flex_double = prefixed(check_q_flexible(&self.double), "double");
        let invariance = self.check_invariance();
        let lag_primal = self.check_lagrangian_block(0, "primal-block");
        let lag_dual = self.check_lagrangian_block(self.primal.dim(), "dual-block");
        let dual_match = self.check_dual_matched_pair();
        let flex_primal = prefixed(check_q_flexible(&self.primal), "primal");
        let flex_dual = prefixed(check_q_flexible(&self.dual), "dual");

        let is_manin_triple =
            flex_double.verdict && invariance.verdict && lag_primal.verdict && lag_dual.verdict;
        let is_matched_pair = dual_match.verdict;
        // A bialgebra here is the same datum read off the canonical
        // splitting: a flexible double with the invariant form and two
        // Lagrangian subalgebras that carry the identity themselves.
        let is_bialgebra = flex_double.verdict
            && invariance.verdict
            && lag_primal.verdict
            && lag_dual.verdict
            && flex_primal.verdict
            && flex_dual.verdict;

        ManinReport {
            is_manin_triple,
            is_matched_pair,
            is_bialgebra,
            components: vec![
                flex_double,
                invariance,
                lag_primal,
                lag_dual,
                dual_match,
                flex_primal,
                flex_dual,
            ],
        }
    }
}

fn prefixed(mut rep: CheckReport, side: &str) -> CheckReport {
    rep.identity = format!("{side}-{}", rep.identity);
    rep
}

/// Outcome of the bounded search for nonzero dual structures that make
/// the canonical sixtuple a matched pair over a given primal. Emptiness
/// is data, not a failure.
#[derive(Clone, Debug)]
pub struct DualSearchOutcome {
    pub candidates_tried: u64,
    pub found: Vec<DoubleSpec>,
}

/// Samples sparse nonzero dual products and keeps those whose double
/// passes the three-condition checker.
pub fn search_dual_structures(primal: &AlgebraRef, trials: u64, seed: u64) -> DualSearchOutcome {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let dim = primal.dim();
    let pool = [Rat::from(-1), Rat::one(), Rat::new(1, 2), Rat::from(2)];
    let mut found = Vec::new();
    let mut tried = 0u64;
    if dim == 0 {
        return DualSearchOutcome {
            candidates_tried: 0,
            found,
        };
    }
    for _ in 0..trials {
        tried += 1;
        let mut t = Tensor3::zeros(dim);
        for _ in 0..rng.random_range(1..=2usize) {
            let i = rng.random_range(0..dim);
            let j = rng.random_range(0..dim);
            let k = rng.random_range(0..dim);
            t.set(i, j, k, pool[rng.random_range(0..pool.len())].clone())
                .unwrap();
        }
        if t.nonzero_count() == 0 {
            continue;
        }
        let d = match DoubleSpec::new(primal.clone(), t) {
            Ok(d) => d,
            Err(_) => continue,
        };
        if d.check_dual_matched_pair().verdict {
            found.push(d);
        }
    }
    DualSearchOutcome {
        candidates_tried: tried,
        found,
    }
}

/// Invariance of the canonical form against an arbitrary product on a
/// `2n`-dimensional space; exposed separately so hand-altered products
/// can be tested too.
pub fn check_invariance_of(alg: &AlgebraSpec, n: usize) -> CheckReport {
    let total = alg.dim();
    assert_eq!(total, 2 * n, "double algebra must have even dimension");
    let form = |u: &Vector, v: &Vector| -> Rat {
        let mut acc = Rat::zero();
        for i in 0..n {
            acc = acc + u.get(i) * v.get(n + i) + u.get(n + i) * v.get(i);
        }
        acc
    };
    for u in 0..total {
        for v in 0..total {
            let uv = alg.basis_product(u, v);
            for w in 0..total {
                let ew = Vector::basis(total, w);
                let vw = alg.basis_product(v, w);
                let eu = Vector::basis(total, u);
                let lhs = form(&uv, &ew);
                let rhs = form(&eu, &vw);
                let residual = &lhs - &rhs;
                if !residual.is_zero() {
                    return CheckReport::fail(
                        "form-invariance",
                        [u, v, w],
                        vec![residual],
                        [
                            alg.basis_name(u).to_string(),
                            alg.basis_name(v).to_string(),
                            alg.basis_name(w).to_string(),
                        ],
                        &["value".to_string()],
                    );
                }
            }
        }
    }
    CheckReport::pass("form-invariance")
}

/// The three equivalent readings of the double data, evaluated through
/// independent routes.
#[derive(Clone, Debug)]
pub struct ManinReport {
    pub is_manin_triple: bool,
    pub is_matched_pair: bool,
    pub is_bialgebra: bool,
    pub components: Vec<CheckReport>,
}

impl ManinReport {
    pub fn verdicts(&self) -> [bool; 3] {
        [
            self.is_manin_triple,
            self.is_matched_pair,
            self.is_bialgebra,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let [a, b, c] = self.verdicts();
        a == b && b == c
    }
}
