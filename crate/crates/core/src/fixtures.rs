//! Small built-in algebras used as fixtures by the test corpus and the
//! CLI examples. All of them are associative, so they satisfy the
//! defining identity at every `q`.

use crate::algebra::{AlgebraRef, AlgebraSpec};
use crate::linalg::Tensor3;
use crate::rational::Rat;

/// One-dimensional algebra with `e0 * e0 = e0`.
pub fn one_dim_idempotent(q: Rat) -> AlgebraRef {
    scaled_one_dim(q, Rat::one())
}

/// One-dimensional algebra with `e0 * e0 = lambda e0`.
pub fn scaled_one_dim(q: Rat, lambda: Rat) -> AlgebraRef {
    let mut t = Tensor3::zeros(1);
    t.set(0, 0, 0, lambda).unwrap();
    AlgebraSpec::with_default_names(q, t).shared()
}

/// Dual numbers: `e0` is the unit and `e1 * e1 = 0`.
pub fn dual_numbers(q: Rat) -> AlgebraRef {
    let mut t = Tensor3::zeros(2);
    t.set(0, 0, 0, Rat::one()).unwrap();
    t.set(0, 1, 1, Rat::one()).unwrap();
    t.set(1, 0, 1, Rat::one()).unwrap();
    AlgebraSpec::with_default_names(q, t).shared()
}

/// The split pair `K x K`: `e_i * e_j = delta_ij e_i`.
pub fn diagonal_pair(q: Rat) -> AlgebraRef {
    let mut t = Tensor3::zeros(2);
    t.set(0, 0, 0, Rat::one()).unwrap();
    t.set(1, 1, 1, Rat::one()).unwrap();
    AlgebraSpec::with_default_names(q, t).shared()
}

/// Full 2x2 matrix algebra on the unit basis `E11, E12, E21, E22`;
/// associative and noncommutative.
pub fn matrix_algebra_2x2(q: Rat) -> AlgebraRef {
    // Basis index of E_{ab} is 2*a + b for a, b in {0, 1}.
    let idx = |a: usize, b: usize| 2 * a + b;
    let mut t = Tensor3::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    if b == c {
                        t.set(idx(a, b), idx(c, d), idx(a, d), Rat::one()).unwrap();
                    }
                }
            }
        }
    }
    let names = vec!["E11".into(), "E12".into(), "E21".into(), "E22".into()];
    AlgebraSpec::new(q, names, t).unwrap().shared()
}

/// Algebra with the zero product in the given dimension.
pub fn zero_algebra(dim: usize, q: Rat) -> AlgebraRef {
    AlgebraSpec::with_default_names(q, Tensor3::zeros(dim)).shared()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::check_associative;

    #[test]
    fn fixtures_are_associative() {
        for alg in [
            one_dim_idempotent(Rat::zero()),
            dual_numbers(Rat::zero()),
            diagonal_pair(Rat::zero()),
            matrix_algebra_2x2(Rat::zero()),
            zero_algebra(3, Rat::zero()),
            zero_algebra(0, Rat::zero()),
        ] {
            assert!(check_associative(&alg).verdict);
        }
    }

    #[test]
    fn matrix_units_multiply_correctly() {
        let alg = matrix_algebra_2x2(Rat::zero());
        // E12 * E21 = E11, E12 * E12 = 0.
        let e12 = alg.basis_element(1);
        let e21 = alg.basis_element(2);
        assert_eq!(e12.multiply(&e21).unwrap().pretty(), "E11");
        assert!(e12.multiply(&e12).unwrap().is_zero());
    }
}
