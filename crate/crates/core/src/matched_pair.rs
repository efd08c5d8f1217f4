//! Matched pairs of two deformed algebras and their bicrossed product.
//!
//! A matched pair is a sixtuple `(A, B, l_A, r_A, l_B, r_B)` where
//! `l_A, r_A : A -> gl(B)` and `l_B, r_B : B -> gl(A)` are linear maps
//! making the product
//!
//! ```text
//! (x + a) * (y + b) = (x.y + l_B(a)y + r_B(b)x) + (a*b + l_A(x)b + r_A(y)a)
//! ```
//!
//! on `A (+) B` satisfy the defining identity. That holds exactly when
//! both algebras satisfy it themselves, `(l_A, r_A)` and `(l_B, r_B)` are
//! bimodules, and six coupling conditions hold. The checker evaluates all
//! of that and names the first failing condition by its index.

use crate::algebra::{check_q_flexible, op_combination, AlgebraRef, AlgebraSpec};
use crate::bimodule::Bimodule;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Tensor3, Vector};
use crate::rational::Rat;
use crate::report::CheckReport;

#[derive(Clone, Debug)]
pub struct MatchedPair {
    alg_a: AlgebraRef,
    alg_b: AlgebraRef,
    l_a: Vec<Matrix>,
    r_a: Vec<Matrix>,
    l_b: Vec<Matrix>,
    r_b: Vec<Matrix>,
}

impl MatchedPair {
    pub fn new(
        alg_a: AlgebraRef,
        alg_b: AlgebraRef,
        l_a: Vec<Matrix>,
        r_a: Vec<Matrix>,
        l_b: Vec<Matrix>,
        r_b: Vec<Matrix>,
    ) -> Result<Self> {
        if alg_a.q() != alg_b.q() {
            return Err(Error::QMismatch);
        }
        let (na, nb) = (alg_a.dim(), alg_b.dim());
        for (maps, count, dim, what) in [
            (&l_a, na, nb, "l_A"),
            (&r_a, na, nb, "r_A"),
            (&l_b, nb, na, "l_B"),
            (&r_b, nb, na, "r_B"),
        ] {
            if maps.len() != count {
                return Err(Error::shape(
                    format!("{count} {what} maps"),
                    format!("{}", maps.len()),
                ));
            }
            for m in maps.iter() {
                if m.dim() != dim {
                    return Err(Error::shape(
                        format!("{dim}x{dim} {what} map"),
                        format!("{0}x{0}", m.dim()),
                    ));
                }
            }
        }
        Ok(MatchedPair {
            alg_a,
            alg_b,
            l_a,
            r_a,
            l_b,
            r_b,
        })
    }

    /// The pair with all four maps zero; the bicrossed product is then
    /// the block-diagonal direct sum.
    pub fn direct_sum(alg_a: AlgebraRef, alg_b: AlgebraRef) -> Result<Self> {
        let (na, nb) = (alg_a.dim(), alg_b.dim());
        MatchedPair::new(
            alg_a,
            alg_b,
            vec![Matrix::zeros(nb); na],
            vec![Matrix::zeros(nb); na],
            vec![Matrix::zeros(na); nb],
            vec![Matrix::zeros(na); nb],
        )
    }

    /// Embeds a bimodule as a matched pair against the zero algebra on
    /// its space; the bicrossed product then coincides with the
    /// semidirect product coefficient by coefficient.
    pub fn from_bimodule(b: &Bimodule) -> Self {
        let alg_a = b.algebra().clone();
        let vdim = b.vdim();
        let names: Vec<String> = (0..vdim).map(|i| format!("v{i}")).collect();
        let alg_b = AlgebraSpec::new(alg_a.q().clone(), names, Tensor3::zeros(vdim))
            .expect("zero algebra dimensions agree")
            .shared();
        let na = alg_a.dim();
        MatchedPair {
            alg_a,
            alg_b,
            l_a: b.left_maps().to_vec(),
            r_a: b.right_maps().to_vec(),
            l_b: vec![Matrix::zeros(na); vdim],
            r_b: vec![Matrix::zeros(na); vdim],
        }
    }

    pub fn alg_a(&self) -> &AlgebraRef {
        &self.alg_a
    }

    pub fn alg_b(&self) -> &AlgebraRef {
        &self.alg_b
    }

    pub fn maps(&self) -> (&[Matrix], &[Matrix], &[Matrix], &[Matrix]) {
        (&self.l_a, &self.r_a, &self.l_b, &self.r_b)
    }

    pub fn with_lb_entry_bumped(&self, map: usize, row: usize, col: usize, delta: &Rat) -> Self {
        let mut out = self.clone();
        let cur = out.l_b[map].get(row, col) + delta;
        out.l_b[map].set(row, col, cur);
        out
    }

    pub fn with_la_entry_bumped(&self, map: usize, row: usize, col: usize, delta: &Rat) -> Self {
        let mut out = self.clone();
        let cur = out.l_a[map].get(row, col) + delta;
        out.l_a[map].set(row, col, cur);
        out
    }

    /// Runs the full battery: both algebras satisfy the defining
    /// identity, both action pairs are bimodules, and the six coupling
    /// conditions hold on every basis tuple. Returns the first failure
    /// in that fixed order.
    pub fn check(&self) -> CheckReport {
        let flex_a = check_q_flexible(&self.alg_a);
        if !flex_a.verdict {
            return prefixed(flex_a, "side-A");
        }
        let flex_b = check_q_flexible(&self.alg_b);
        if !flex_b.verdict {
            return prefixed(flex_b, "side-B");
        }
        let bim_a = Bimodule::new(
            self.alg_a.clone(),
            self.alg_b.dim(),
            self.l_a.clone(),
            self.r_a.clone(),
        )
        .expect("shapes were validated at construction")
        .check();
        if !bim_a.verdict {
            return prefixed(bim_a, "side-A");
        }
        let bim_b = Bimodule::new(
            self.alg_b.clone(),
            self.alg_a.dim(),
            self.l_b.clone(),
            self.r_b.clone(),
        )
        .expect("shapes were validated at construction")
        .check();
        if !bim_b.verdict {
            return prefixed(bim_b, "side-B");
        }
        for cond in 1..=6 {
            if let Some(rep) = self.coupling_condition_failure(cond) {
                return rep;
            }
        }
        CheckReport::pass("matched-pair")
    }

    /// First lexicographic counterexample of one coupling condition, or
    /// `None` when it holds.
    pub fn coupling_condition_failure(&self, cond: usize) -> Option<CheckReport> {
        let (na, nb) = (self.alg_a.dim(), self.alg_b.dim());
        match cond {
            // Conditions 1..3 are identities of elements of A over
            // (x, y, a); 4..6 are identities of elements of B over
            // (x, a, b).
            1..=3 => {
                for x in 0..na {
                    for y in 0..na {
                        for a in 0..nb {
                            let residual = self.a_valued_residual(cond, x, y, a);
                            if !residual.is_zero() {
                                return Some(CheckReport::fail(
                                    format!("matched-pair-condition-{cond}"),
                                    [x, y, a],
                                    residual.into_entries(),
                                    [
                                        self.alg_a.basis_name(x).to_string(),
                                        self.alg_a.basis_name(y).to_string(),
                                        self.alg_b.basis_name(a).to_string(),
                                    ],
                                    self.alg_a.basis_names(),
                                ));
                            }
                        }
                    }
                }
                None
            }
            4..=6 => {
                for x in 0..na {
                    for a in 0..nb {
                        for b in 0..nb {
                            let residual = self.b_valued_residual(cond, x, a, b);
                            if !residual.is_zero() {
                                return Some(CheckReport::fail(
                                    format!("matched-pair-condition-{cond}"),
                                    [x, a, b],
                                    residual.into_entries(),
                                    [
                                        self.alg_a.basis_name(x).to_string(),
                                        self.alg_b.basis_name(a).to_string(),
                                        self.alg_b.basis_name(b).to_string(),
                                    ],
                                    self.alg_b.basis_names(),
                                ));
                            }
                        }
                    }
                }
                None
            }
            _ => panic!("coupling condition index must be 1..=6"),
        }
    }

    fn lb_of(&self, v: &Vector) -> Matrix {
        op_combination(&self.l_b, v)
    }

    fn rb_of(&self, v: &Vector) -> Matrix {
        op_combination(&self.r_b, v)
    }

    fn la_of(&self, v: &Vector) -> Matrix {
        op_combination(&self.l_a, v)
    }

    fn ra_of(&self, v: &Vector) -> Matrix {
        op_combination(&self.r_a, v)
    }

    fn a_valued_residual(&self, cond: usize, x: usize, y: usize, a: usize) -> Vector {
        let alg_a = &self.alg_a;
        let (na, nb) = (alg_a.dim(), self.alg_b.dim());
        let q = alg_a.q();
        let ex = Vector::basis(na, x);
        let ey = Vector::basis(na, y);
        let ea = Vector::basis(nb, a);
        let xy = alg_a.basis_product(x, y);
        let yx = alg_a.basis_product(y, x);
        let lb_a = &self.l_b[a];
        let rb_a = &self.r_b[a];
        let (lhs, rhs) = match cond {
            1 => {
                // (l_B(a)x).y + l_B(r_A(x)a)y - l_B(a)(x.y)
                //   = q [ r_B(a)(y.x) - y.(r_B(a)x) - r_B(l_A(x)a)y ]
                let lhs = &(&alg_a.product(&lb_a.apply(&ex), &ey)
                    + &self.lb_of(&self.r_a[x].apply(&ea)).apply(&ey))
                    - &lb_a.apply(&xy);
                let rhs = &(&rb_a.apply(&yx) - &alg_a.product(&ey, &rb_a.apply(&ex)))
                    - &self.rb_of(&self.l_a[x].apply(&ea)).apply(&ey);
                (lhs, rhs)
            }
            2 => {
                // r_B(a)(x.y) - x.(r_B(a)y) - r_B(l_A(y)a)x
                //   = q [ (l_B(a)y).x + l_B(r_A(y)a)x - l_B(a)(y.x) ]
                let lhs = &(&rb_a.apply(&xy) - &alg_a.product(&ex, &rb_a.apply(&ey)))
                    - &self.rb_of(&self.l_a[y].apply(&ea)).apply(&ex);
                let rhs = &(&alg_a.product(&lb_a.apply(&ey), &ex)
                    + &self.lb_of(&self.r_a[y].apply(&ea)).apply(&ex))
                    - &lb_a.apply(&yx);
                (lhs, rhs)
            }
            3 => {
                // (r_B(a)x).y + l_B(l_A(x)a)y - x.(l_B(a)y) - r_B(r_A(y)a)x
                //   = q [ (r_B(a)y).x + l_B(l_A(y)a)x - y.(l_B(a)x) - r_B(r_A(x)a)y ]
                let lhs = &(&(&alg_a.product(&rb_a.apply(&ex), &ey)
                    + &self.lb_of(&self.l_a[x].apply(&ea)).apply(&ey))
                    - &alg_a.product(&ex, &lb_a.apply(&ey)))
                    - &self.rb_of(&self.r_a[y].apply(&ea)).apply(&ex);
                let rhs = &(&(&alg_a.product(&rb_a.apply(&ey), &ex)
                    + &self.lb_of(&self.l_a[y].apply(&ea)).apply(&ex))
                    - &alg_a.product(&ey, &lb_a.apply(&ex)))
                    - &self.rb_of(&self.r_a[x].apply(&ea)).apply(&ey);
                (lhs, rhs)
            }
            _ => unreachable!(),
        };
        &lhs - &rhs.scale(q)
    }

    fn b_valued_residual(&self, cond: usize, x: usize, a: usize, b: usize) -> Vector {
        let alg_b = &self.alg_b;
        let (na, nb) = (self.alg_a.dim(), alg_b.dim());
        let q = self.alg_a.q();
        let ex = Vector::basis(na, x);
        let ea = Vector::basis(nb, a);
        let eb = Vector::basis(nb, b);
        let ab = alg_b.basis_product(a, b);
        let ba = alg_b.basis_product(b, a);
        let la_x = &self.l_a[x];
        let ra_x = &self.r_a[x];
        let (lhs, rhs) = match cond {
            4 => {
                // (l_A(x)a)*b + l_A(r_B(a)x)b - l_A(x)(a*b)
                //   = q [ r_A(x)(b*a) - b*(r_A(x)a) - r_A(l_B(a)x)b ]
                let lhs = &(&alg_b.product(&la_x.apply(&ea), &eb)
                    + &self.la_of(&self.r_b[a].apply(&ex)).apply(&eb))
                    - &la_x.apply(&ab);
                let rhs = &(&ra_x.apply(&ba) - &alg_b.product(&eb, &ra_x.apply(&ea)))
                    - &self.ra_of(&self.l_b[a].apply(&ex)).apply(&eb);
                (lhs, rhs)
            }
            5 => {
                // r_A(x)(a*b) - a*(r_A(x)b) - r_A(l_B(b)x)a
                //   = q [ (l_A(x)b)*a + l_A(r_B(b)x)a - l_A(x)(b*a) ]
                let lhs = &(&ra_x.apply(&ab) - &alg_b.product(&ea, &ra_x.apply(&eb)))
                    - &self.ra_of(&self.l_b[b].apply(&ex)).apply(&ea);
                let rhs = &(&alg_b.product(&la_x.apply(&eb), &ea)
                    + &self.la_of(&self.r_b[b].apply(&ex)).apply(&ea))
                    - &la_x.apply(&ba);
                (lhs, rhs)
            }
            6 => {
                // (r_A(x)a)*b + l_A(l_B(a)x)b - a*(l_A(x)b) - r_A(r_B(b)x)a
                //   = q [ (r_A(x)b)*a + l_A(l_B(b)x)a - b*(l_A(x)a) - r_A(r_B(a)x)b ]
                let lhs = &(&(&alg_b.product(&ra_x.apply(&ea), &eb)
                    + &self.la_of(&self.l_b[a].apply(&ex)).apply(&eb))
                    - &alg_b.product(&ea, &la_x.apply(&eb)))
                    - &self.ra_of(&self.r_b[b].apply(&ex)).apply(&ea);
                let rhs = &(&(&alg_b.product(&ra_x.apply(&eb), &ea)
                    + &self.la_of(&self.l_b[b].apply(&ex)).apply(&ea))
                    - &alg_b.product(&eb, &la_x.apply(&ea)))
                    - &self.ra_of(&self.r_b[a].apply(&ex)).apply(&eb);
                (lhs, rhs)
            }
            _ => unreachable!(),
        };
        &lhs - &rhs.scale(q)
    }

    /// Bicrossed product on `A (+) B`; requires a verified pair.
    pub fn bicrossed(&self) -> Result<AlgebraRef> {
        let rep = self.check();
        if !rep.verdict {
            return Err(Error::Unverified(format!(
                "matched-pair check failed; {rep}"
            )));
        }
        Ok(self.bicrossed_unchecked())
    }

    /// Bicrossed product without the verification gate, for the
    /// equivalence tests that feed it failing pairs.
    pub fn bicrossed_unchecked(&self) -> AlgebraRef {
        let (na, nb) = (self.alg_a.dim(), self.alg_b.dim());
        let total = na + nb;
        let mut t = Tensor3::zeros(total);
        for ((i, j, k), c) in self.alg_a.structure().iter_nonzero() {
            t.set(*i, *j, *k, c.clone()).unwrap();
        }
        for ((i, j, k), c) in self.alg_b.structure().iter_nonzero() {
            t.set(na + i, na + j, na + k, c.clone()).unwrap();
        }
        for i in 0..na {
            for b in 0..nb {
                // e_i * f_b = r_B(b) e_i + l_A(e_i) f_b
                for (row, c) in self.r_b[b].col(i).iter().enumerate() {
                    if !c.is_zero() {
                        t.set(i, na + b, row, c.clone()).unwrap();
                    }
                }
                for (row, c) in self.l_a[i].col(b).iter().enumerate() {
                    if !c.is_zero() {
                        t.set(i, na + b, na + row, c.clone()).unwrap();
                    }
                }
                // f_b * e_i = l_B(b) e_i + r_A(e_i) f_b
                for (row, c) in self.l_b[b].col(i).iter().enumerate() {
                    if !c.is_zero() {
                        t.set(na + b, i, row, c.clone()).unwrap();
                    }
                }
                for (row, c) in self.r_a[i].col(b).iter().enumerate() {
                    if !c.is_zero() {
                        t.set(na + b, i, na + row, c.clone()).unwrap();
                    }
                }
            }
        }
        let mut names = self.alg_a.basis_names().to_vec();
        names.extend(self.alg_b.basis_names().iter().cloned());
        AlgebraSpec::new(self.alg_a.q().clone(), names, t)
            .expect("bicrossed dimensions agree")
            .shared()
    }
}

fn prefixed(mut rep: CheckReport, side: &str) -> CheckReport {
    rep.identity = format!("{side}-{}", rep.identity);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::octonion::build_octonion;

    #[test]
    fn q_mismatch_is_rejected() {
        let a = fixtures::dual_numbers(Rat::zero());
        let b = fixtures::diagonal_pair(Rat::one());
        assert_eq!(MatchedPair::direct_sum(a, b).unwrap_err(), Error::QMismatch);
    }

    #[test]
    fn zero_dimensional_partner_is_vacuous() {
        let a = build_octonion(Rat::from(-1));
        let b = fixtures::zero_algebra(0, Rat::from(-1));
        let pair = MatchedPair::direct_sum(a.clone(), b).unwrap();
        assert!(pair.check().verdict);
        let prod = pair.bicrossed().unwrap();
        assert_eq!(*prod, *a);
    }

    #[test]
    fn direct_sum_of_flexible_algebras_is_a_matched_pair() {
        let a = build_octonion(Rat::from(-1));
        let b = fixtures::dual_numbers(Rat::from(-1));
        let pair = MatchedPair::direct_sum(a.clone(), b.clone()).unwrap();
        assert!(pair.check().verdict);
        let prod = pair.bicrossed().unwrap();
        assert_eq!(prod.dim(), 10);
        assert!(check_q_flexible(&prod).verdict);
        // Both blocks embed with their products intact.
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    assert_eq!(prod.structure().get(i, j, k), a.structure().get(i, j, k));
                }
            }
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                for k in 0..b.dim() {
                    assert_eq!(
                        prod.structure().get(8 + i, 8 + j, 8 + k),
                        b.structure().get(i, j, k)
                    );
                }
            }
        }
    }

    #[test]
    fn bimodule_embedding_reproduces_the_semidirect_product() {
        let alg = fixtures::matrix_algebra_2x2(Rat::from(-1));
        let b = Bimodule::regular(&alg);
        let pair = MatchedPair::from_bimodule(&b);
        assert!(pair.check().verdict);
        let via_pair = pair.bicrossed().unwrap();
        let via_semidirect = b.semidirect().unwrap();
        assert_eq!(*via_pair, *via_semidirect);
    }

    #[test]
    fn mutated_pair_fails_with_located_witness() {
        let a = build_octonion(Rat::from(-1));
        let b = fixtures::dual_numbers(Rat::from(-1));
        let pair = MatchedPair::direct_sum(a, b).unwrap();
        let bad = pair.with_lb_entry_bumped(0, 0, 0, &Rat::one());
        let rep = bad.check();
        assert!(!rep.verdict);
        assert!(rep.witness.is_some());
        assert!(!check_q_flexible(&bad.bicrossed_unchecked()).verdict);
        assert!(matches!(bad.bicrossed(), Err(Error::Unverified(_))));
    }

    #[test]
    fn pair_verdict_tracks_bicrossed_flexibility_on_small_corpus() {
        let candidates = vec![
            MatchedPair::direct_sum(
                fixtures::diagonal_pair(Rat::zero()),
                fixtures::dual_numbers(Rat::zero()),
            )
            .unwrap(),
            MatchedPair::from_bimodule(&Bimodule::regular(&fixtures::dual_numbers(Rat::one()))),
            MatchedPair::direct_sum(
                fixtures::matrix_algebra_2x2(Rat::one()),
                fixtures::zero_algebra(2, Rat::one()),
            )
            .unwrap(),
        ];
        for pair in candidates {
            let ok = pair.check().verdict;
            let flexible = check_q_flexible(&pair.bicrossed_unchecked()).verdict;
            assert_eq!(ok, flexible);
            assert!(ok);
            for bad in [
                pair.with_lb_entry_bumped(0, 0, 0, &Rat::one()),
                pair.with_la_entry_bumped(0, 0, 0, &Rat::from(2)),
            ] {
                assert_eq!(
                    bad.check().verdict,
                    check_q_flexible(&bad.bicrossed_unchecked()).verdict
                );
            }
        }
    }
}
