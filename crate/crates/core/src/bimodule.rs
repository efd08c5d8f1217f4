//! Bimodules over a deformed algebra, the semidirect product they
//! induce, and dualization.
//!
//! A bimodule is a pair of linear actions `l, r : A -> gl(V)` satisfying
//! the same three compatibility relations as the multiplication
//! operators:
//!
//! ```text
//! 1.  l_{xy} - l_x l_y = q (r_x r_y - r_{yx})
//! 2.  [r_x, l_y]       = q [r_y, l_x]
//! 3.  r_x r_y - r_{yx} = q (l_{xy} - l_x l_y)
//! ```
//!
//! These hold exactly when the product `(x+u)*(y+v) = x*y + l_x v + r_y u`
//! on `A (+) V` satisfies the defining identity of the family, which is
//! what [`Bimodule::semidirect`] builds. The dual bimodule lives on `V*`
//! coordinatized in the dual basis, so dualization is literal matrix
//! transposition with the two action families swapping roles.

use crate::algebra::{op_combination, AlgebraRef, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::{commutator_mat, Matrix, Tensor3, Vector};
use crate::rational::Rat;
use crate::report::CheckReport;

#[derive(Clone, Debug)]
pub struct Bimodule {
    algebra: AlgebraRef,
    vdim: usize,
    l: Vec<Matrix>,
    r: Vec<Matrix>,
}

impl Bimodule {
    pub fn new(algebra: AlgebraRef, vdim: usize, l: Vec<Matrix>, r: Vec<Matrix>) -> Result<Self> {
        let dim = algebra.dim();
        for (maps, what) in [(&l, "left"), (&r, "right")] {
            if maps.len() != dim {
                return Err(Error::shape(
                    format!("{dim} {what} maps"),
                    format!("{}", maps.len()),
                ));
            }
            for m in maps.iter() {
                if m.dim() != vdim {
                    return Err(Error::shape(
                        format!("{vdim}x{vdim} {what} map"),
                        format!("{0}x{0}", m.dim()),
                    ));
                }
            }
        }
        Ok(Bimodule {
            algebra,
            vdim,
            l,
            r,
        })
    }

    /// The regular bimodule `(L, R)` of the algebra on itself.
    pub fn regular(algebra: &AlgebraRef) -> Self {
        Bimodule {
            algebra: algebra.clone(),
            vdim: algebra.dim(),
            l: algebra.all_left_mults(),
            r: algebra.all_right_mults(),
        }
    }

    /// Zero actions on a space of the given dimension.
    pub fn zero(algebra: &AlgebraRef, vdim: usize) -> Self {
        Bimodule {
            algebra: algebra.clone(),
            vdim,
            l: vec![Matrix::zeros(vdim); algebra.dim()],
            r: vec![Matrix::zeros(vdim); algebra.dim()],
        }
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn left_maps(&self) -> &[Matrix] {
        &self.l
    }

    pub fn right_maps(&self) -> &[Matrix] {
        &self.r
    }

    /// Linear extension `l_x` for a general coefficient vector `x`.
    pub fn left_of(&self, coeffs: &Vector) -> Matrix {
        op_combination(&self.l, coeffs)
    }

    pub fn right_of(&self, coeffs: &Vector) -> Matrix {
        op_combination(&self.r, coeffs)
    }

    /// Copy with one entry of one left map shifted; used to build failing
    /// mutants for the equivalence tests.
    pub fn with_left_entry_bumped(&self, map: usize, row: usize, col: usize, delta: &Rat) -> Self {
        let mut out = self.clone();
        let cur = out.l[map].get(row, col) + delta;
        out.l[map].set(row, col, cur);
        out
    }

    pub fn with_right_entry_bumped(&self, map: usize, row: usize, col: usize, delta: &Rat) -> Self {
        let mut out = self.clone();
        let cur = out.r[map].get(row, col) + delta;
        out.r[map].set(row, col, cur);
        out
    }

    /// Checks the three compatibility relations for every basis pair of
    /// the algebra.
    pub fn check(&self) -> CheckReport {
        let alg = &self.algebra;
        let n = alg.dim();
        let q = alg.q();
        let names: Vec<String> = (0..self.vdim).map(|i| format!("v{i}")).collect();

        let fail = |name: &str, i: usize, j: usize, diff: &Matrix| -> Option<CheckReport> {
            if diff.is_zero() {
                return None;
            }
            let col = (0..self.vdim).find(|&c| !diff.col(c).is_zero()).unwrap();
            Some(CheckReport::fail(
                name,
                [i, j, col],
                diff.col(col).into_entries(),
                [
                    alg.basis_name(i).to_string(),
                    alg.basis_name(j).to_string(),
                    format!("v{col}"),
                ],
                &names,
            ))
        };

        for i in 0..n {
            for j in 0..n {
                let l_prod = self.left_of(&alg.basis_product(i, j));
                let r_swapped = self.right_of(&alg.basis_product(j, i));
                let ll = &self.l[i] * &self.l[j];
                let rr = &self.r[i] * &self.r[j];

                let res1 = &(&l_prod - &ll) - &(&rr - &r_swapped).scale(q);
                if let Some(rep) = fail("bimodule-condition-1", i, j, &res1) {
                    return rep;
                }
                let res2 = &commutator_mat(&self.r[i], &self.l[j])
                    - &commutator_mat(&self.r[j], &self.l[i]).scale(q);
                if let Some(rep) = fail("bimodule-condition-2", i, j, &res2) {
                    return rep;
                }
                let res3 = &(&rr - &r_swapped) - &(&l_prod - &ll).scale(q);
                if let Some(rep) = fail("bimodule-condition-3", i, j, &res3) {
                    return rep;
                }
            }
        }
        CheckReport::pass("bimodule")
    }

    /// Dual bimodule on `V*`: the left maps are the transposes of the
    /// right maps and vice versa. The pairing convention is
    /// `<l*_x a, u> = <a, l_x u>`; only this sign makes the dual of the
    /// regular bimodule verify.
    pub fn dual(&self) -> Bimodule {
        self.dual_with_sign(false)
    }

    /// Dual with the opposite pairing convention
    /// `<l*_x a, u> = -<a, l_x u>`. Kept as a non-default variant; no
    /// verification guarantees attach to it.
    pub fn dual_with_sign(&self, negate: bool) -> Bimodule {
        let conv = |m: &Matrix| {
            let t = m.transpose();
            if negate {
                -&t
            } else {
                t
            }
        };
        Bimodule {
            algebra: self.algebra.clone(),
            vdim: self.vdim,
            l: self.r.iter().map(conv).collect(),
            r: self.l.iter().map(conv).collect(),
        }
    }

    /// Semidirect product on `A (+) V`; requires a verified bimodule.
    pub fn semidirect(&self) -> Result<AlgebraRef> {
        let rep = self.check();
        if !rep.verdict {
            return Err(Error::Unverified(format!("bimodule check failed; {rep}")));
        }
        Ok(self.semidirect_unchecked())
    }

    /// Semidirect product without the verification gate; the result
    /// satisfies the defining identity exactly when the bimodule
    /// relations hold, which is what the equivalence tests exercise.
    pub fn semidirect_unchecked(&self) -> AlgebraRef {
        let alg = &self.algebra;
        let n = alg.dim();
        let total = n + self.vdim;
        let mut t = Tensor3::zeros(total);
        for ((i, j, k), c) in alg.structure().iter_nonzero() {
            t.set(*i, *j, *k, c.clone()).unwrap();
        }
        for i in 0..n {
            for v in 0..self.vdim {
                // (x + 0) * (0 + e_v) = l_x e_v
                for row in 0..self.vdim {
                    let c = self.l[i].get(row, v);
                    if !c.is_zero() {
                        t.set(i, n + v, n + row, c.clone()).unwrap();
                    }
                }
                // (0 + e_v) * (y + 0) = r_y e_v
                for row in 0..self.vdim {
                    let c = self.r[i].get(row, v);
                    if !c.is_zero() {
                        t.set(n + v, i, n + row, c.clone()).unwrap();
                    }
                }
            }
        }
        let mut names = alg.basis_names().to_vec();
        names.extend((0..self.vdim).map(|i| format!("v{i}")));
        AlgebraSpec::new(alg.q().clone(), names, t)
            .expect("semidirect dimensions agree")
            .shared()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_q_flexible;
    use crate::fixtures;
    use crate::octonion::build_octonion;

    #[test]
    fn regular_bimodule_of_flexible_algebras_verifies() {
        for alg in [
            build_octonion(Rat::from(-1)),
            fixtures::dual_numbers(Rat::zero()),
            fixtures::matrix_algebra_2x2(Rat::new(1, 2)),
        ] {
            assert!(Bimodule::regular(&alg).check().verdict);
        }
    }

    #[test]
    fn zero_maps_always_verify() {
        let alg = build_octonion(Rat::from(-1));
        assert!(Bimodule::zero(&alg, 3).check().verdict);
        assert!(Bimodule::zero(&alg, 0).check().verdict);
    }

    #[test]
    fn regular_bimodule_fails_under_wrong_q() {
        let alg = build_octonion(Rat::from(3));
        let rep = Bimodule::regular(&alg).check();
        assert!(!rep.verdict);
    }

    #[test]
    fn shape_validation() {
        let alg = fixtures::dual_numbers(Rat::zero());
        let err = Bimodule::new(
            alg.clone(),
            2,
            vec![Matrix::zeros(2)],
            vec![Matrix::zeros(2); 2],
        );
        assert!(matches!(err, Err(Error::Shape { .. })));
        let err = Bimodule::new(alg, 2, vec![Matrix::zeros(3); 2], vec![Matrix::zeros(2); 2]);
        assert!(matches!(err, Err(Error::Shape { .. })));
    }

    #[test]
    fn semidirect_with_zero_space_returns_the_algebra_itself() {
        let alg = build_octonion(Rat::from(-1));
        let ext = Bimodule::zero(&alg, 0).semidirect().unwrap();
        assert_eq!(*ext, *alg);
    }

    #[test]
    fn semidirect_of_octonion_regular_is_flexible_in_dim_16() {
        let alg = build_octonion(Rat::from(-1));
        let ext = Bimodule::regular(&alg).semidirect().unwrap();
        assert_eq!(ext.dim(), 16);
        assert!(check_q_flexible(&ext).verdict);
    }

    #[test]
    fn one_dim_identity_actions_give_dual_numbers() {
        // e0^2 = e0 acting by the identity on a line yields the unital
        // two-dimensional algebra with a square-zero generator.
        let alg = fixtures::one_dim_idempotent(Rat::zero());
        let b =
            Bimodule::new(alg, 1, vec![Matrix::identity(1)], vec![Matrix::identity(1)]).unwrap();
        assert!(b.check().verdict);
        let ext = b.semidirect().unwrap();
        assert_eq!(ext.dim(), 2);
        assert!(crate::algebra::check_associative(&ext).verdict);
        let expected = {
            let mut t = Tensor3::zeros(2);
            t.set(0, 0, 0, Rat::one()).unwrap();
            t.set(0, 1, 1, Rat::one()).unwrap();
            t.set(1, 0, 1, Rat::one()).unwrap();
            t
        };
        assert_eq!(ext.structure(), &expected);
    }

    #[test]
    fn unverified_bimodule_is_rejected_by_semidirect() {
        let alg = build_octonion(Rat::from(-1));
        let bad = Bimodule::regular(&alg).with_left_entry_bumped(1, 0, 0, &Rat::one());
        assert!(matches!(bad.semidirect(), Err(Error::Unverified(_))));
        // The unchecked construction exists for the equivalence tests and
        // produces a non-flexible algebra.
        assert!(!check_q_flexible(&bad.semidirect_unchecked()).verdict);
    }

    #[test]
    fn dual_of_regular_verifies_and_double_dual_restores() {
        let alg = build_octonion(Rat::from(-1));
        let b = Bimodule::regular(&alg);
        let dual = b.dual();
        assert!(dual.check().verdict);
        let back = dual.dual();
        assert_eq!(back.left_maps(), b.left_maps());
        assert_eq!(back.right_maps(), b.right_maps());
        // Dual of the zero bimodule is the zero bimodule.
        let z = Bimodule::zero(&alg, 2);
        assert_eq!(z.dual().left_maps(), z.left_maps());
        // The negated convention also squares to the identity.
        let neg_back = b.dual_with_sign(true).dual_with_sign(true);
        assert_eq!(neg_back.left_maps(), b.left_maps());
        assert_eq!(neg_back.right_maps(), b.right_maps());
    }

    #[test]
    fn dual_verdict_tracks_primal_verdict_on_mutants() {
        let alg = build_octonion(Rat::from(-1));
        let bad = Bimodule::regular(&alg).with_right_entry_bumped(2, 1, 1, &Rat::new(1, 2));
        assert!(!bad.check().verdict);
        assert!(!bad.dual().check().verdict);
    }

    #[test]
    fn pairing_adjointness_of_dual_actions() {
        let alg = build_octonion(Rat::from(-1));
        let b = Bimodule::regular(&alg);
        let dual = b.dual();
        // <l*_x a, u> = <a, l_x u> with l* the dual right-role maps.
        for x in 0..alg.dim() {
            for a in 0..b.vdim() {
                for u in 0..b.vdim() {
                    let av = Vector::basis(b.vdim(), a);
                    let uv = Vector::basis(b.vdim(), u);
                    let lhs = dual.right_maps()[x].apply(&av).pairing(&uv).unwrap();
                    let rhs = av.pairing(&b.left_maps()[x].apply(&uv)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn semidirect_flexibility_tracks_bimodule_verdict() {
        // Both directions of the equivalence on a small corpus.
        let base = fixtures::matrix_algebra_2x2(Rat::from(-1));
        let good = Bimodule::regular(&base);
        assert!(good.check().verdict);
        assert!(check_q_flexible(&good.semidirect_unchecked()).verdict);
        let bad = good.with_left_entry_bumped(0, 1, 2, &Rat::one());
        assert!(!bad.check().verdict);
        assert!(!check_q_flexible(&bad.semidirect_unchecked()).verdict);
    }

    #[test]
    fn non_flexible_base_keeps_equivalence_visible() {
        // Zero actions verify over any algebra, and the semidirect
        // product then inherits exactly the base algebra's verdict.
        let base = build_octonion(Rat::zero());
        let b = Bimodule::zero(&base, 1);
        assert!(b.check().verdict);
        assert_eq!(
            check_q_flexible(&b.semidirect_unchecked()).verdict,
            check_q_flexible(&base).verdict
        );
    }

    #[test]
    fn semidirect_names_extend_base_names() {
        let alg = fixtures::dual_numbers(Rat::zero());
        let b = Bimodule::zero(&alg, 2);
        let ext = b.semidirect().unwrap();
        assert_eq!(
            ext.basis_names(),
            &["e0".to_string(), "e1".into(), "v0".into(), "v1".into()]
        );
    }
}
