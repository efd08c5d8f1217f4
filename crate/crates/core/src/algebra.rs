//! Algebras given by structure constants, together with the deformation
//! identity checkers.
//!
//! An [`AlgebraSpec`] fixes a dimension, a rational parameter `q`, and a
//! structure tensor; the bilinear product on basis elements is
//! `e_i * e_j = sum_k structure(i, j, k) e_k`. The defining identity of
//! the deformation family is
//!
//! ```text
//! (x, y, z) = q (z, y, x)        (x, y, z) := (x*y)*z - x*(y*z)
//! ```
//!
//! so `q = 0` is associativity, `q = -1` flexibility, and `q = 1` the
//! center-symmetric (antiflexible) law. Every "for all elements" check is
//! performed over basis tuples only, which is equivalent by
//! multilinearity, and witnesses are reported in lexicographic order so
//! counterexamples are reproducible.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{commutator_mat, Matrix, Tensor3, Vector};
use crate::rational::Rat;
use crate::report::{CheckReport, MyungReport};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraSpec {
    dim: usize,
    q: Rat,
    basis_names: Vec<String>,
    structure: Tensor3,
}

/// Shared handle; elements hold one of these so mismatched operands can
/// be rejected.
pub type AlgebraRef = Arc<AlgebraSpec>;

impl AlgebraSpec {
    pub fn new(q: Rat, basis_names: Vec<String>, structure: Tensor3) -> Result<Self> {
        if basis_names.len() != structure.dim() {
            return Err(Error::shape(
                format!("{} basis names", structure.dim()),
                format!("{} basis names", basis_names.len()),
            ));
        }
        Ok(AlgebraSpec {
            dim: structure.dim(),
            q,
            basis_names,
            structure,
        })
    }

    /// Convenience constructor with basis names `e0, e1, ...`.
    pub fn with_default_names(q: Rat, structure: Tensor3) -> Self {
        let names = default_names(structure.dim());
        AlgebraSpec::new(q, names, structure).expect("generated names match dimension")
    }

    pub fn shared(self) -> AlgebraRef {
        Arc::new(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn basis_name(&self, i: usize) -> &str {
        &self.basis_names[i]
    }

    pub fn structure(&self) -> &Tensor3 {
        &self.structure
    }

    /// Same structure constants, different deformation parameter.
    pub fn with_q(&self, q: Rat) -> AlgebraSpec {
        AlgebraSpec {
            dim: self.dim,
            q,
            basis_names: self.basis_names.clone(),
            structure: self.structure.clone(),
        }
    }

    /// `e_i * e_j` as a coefficient vector.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        self.structure.fiber(i, j)
    }

    /// Bilinear product of coefficient vectors.
    pub fn product(&self, u: &Vector, v: &Vector) -> Vector {
        self.structure.contract(u, v)
    }

    /// `(e_i, e_j, e_k)` as a coefficient vector.
    pub fn associator_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        let left = self.product(&self.basis_product(i, j), &Vector::basis(self.dim, k));
        let right = self.product(&Vector::basis(self.dim, i), &self.basis_product(j, k));
        &left - &right
    }

    /// Matrix of `y -> e_i * y`.
    pub fn left_mult_basis(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim);
        for j in 0..self.dim {
            for (k, c) in self.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    m.set(k, j, c.clone());
                }
            }
        }
        m
    }

    /// Matrix of `y -> y * e_i`.
    pub fn right_mult_basis(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim);
        for j in 0..self.dim {
            for (k, c) in self.basis_product(j, i).iter().enumerate() {
                if !c.is_zero() {
                    m.set(k, j, c.clone());
                }
            }
        }
        m
    }

    /// Linear extension of the left multiplication operator to a general
    /// coefficient vector.
    pub fn left_op_vector(&self, coeffs: &Vector) -> Matrix {
        op_combination(&self.all_left_mults(), coeffs)
    }

    pub fn right_op_vector(&self, coeffs: &Vector) -> Matrix {
        op_combination(&self.all_right_mults(), coeffs)
    }

    pub fn all_left_mults(&self) -> Vec<Matrix> {
        (0..self.dim).map(|i| self.left_mult_basis(i)).collect()
    }

    pub fn all_right_mults(&self) -> Vec<Matrix> {
        (0..self.dim).map(|i| self.right_mult_basis(i)).collect()
    }

    pub fn basis_element(self: &Arc<Self>, i: usize) -> Element {
        Element {
            algebra: Arc::clone(self),
            coeffs: Vector::basis(self.dim, i),
        }
    }

    pub fn zero_element(self: &Arc<Self>) -> Element {
        Element {
            algebra: Arc::clone(self),
            coeffs: Vector::zeros(self.dim),
        }
    }

    pub fn element(self: &Arc<Self>, coeffs: Vector) -> Result<Element> {
        if coeffs.len() != self.dim {
            return Err(Error::shape(
                format!("{} coefficients", self.dim),
                format!("{} coefficients", coeffs.len()),
            ));
        }
        Ok(Element {
            algebra: Arc::clone(self),
            coeffs,
        })
    }
}

pub fn default_names(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

/// Coefficient-weighted sum of a family of operators.
pub fn op_combination(ops: &[Matrix], coeffs: &Vector) -> Matrix {
    assert_eq!(ops.len(), coeffs.len(), "operator family length mismatch");
    let dim = ops.first().map_or(0, Matrix::dim);
    let mut out = Matrix::zeros(dim);
    for (op, c) in ops.iter().zip(coeffs.iter()) {
        if !c.is_zero() {
            out = &out + &op.scale(c);
        }
    }
    out
}

/// Element of an algebra: a coefficient vector over its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    algebra: AlgebraRef,
    coeffs: Vector,
}

impl Element {
    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    pub fn coeffs(&self) -> &Vector {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    fn require_same_algebra(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn wrap(&self, coeffs: Vector) -> Element {
        Element {
            algebra: Arc::clone(&self.algebra),
            coeffs,
        }
    }

    /// `x * y`.
    pub fn multiply(&self, rhs: &Element) -> Result<Element> {
        self.require_same_algebra(rhs)?;
        Ok(self.wrap(self.algebra.product(&self.coeffs, &rhs.coeffs)))
    }

    /// `[x, y] = x*y - y*x`.
    pub fn commutator(&self, rhs: &Element) -> Result<Element> {
        let xy = self.multiply(rhs)?;
        let yx = rhs.multiply(self)?;
        Ok(self.wrap(&xy.coeffs - &yx.coeffs))
    }

    /// `{x, y}_q = x*y + q*(y*x)` with the algebra's own `q`.
    pub fn q_bracket(&self, rhs: &Element) -> Result<Element> {
        let xy = self.multiply(rhs)?;
        let yx = rhs.multiply(self)?;
        let mut out = xy.coeffs;
        out.add_scaled(self.algebra.q(), &yx.coeffs);
        Ok(self.wrap(out))
    }

    /// `x *_q y = (1/2)(x*y - q*(y*x))` with the algebra's own `q`.
    pub fn star_q(&self, rhs: &Element) -> Result<Element> {
        let xy = self.multiply(rhs)?;
        let yx = rhs.multiply(self)?;
        let mut out = xy.coeffs;
        out.add_scaled(&-self.algebra.q(), &yx.coeffs);
        Ok(self.wrap(out.scale(&Rat::new(1, 2))))
    }

    pub fn add(&self, rhs: &Element) -> Result<Element> {
        self.require_same_algebra(rhs)?;
        Ok(self.wrap(&self.coeffs + &rhs.coeffs))
    }

    pub fn sub(&self, rhs: &Element) -> Result<Element> {
        self.require_same_algebra(rhs)?;
        Ok(self.wrap(&self.coeffs - &rhs.coeffs))
    }

    pub fn scale(&self, c: &Rat) -> Element {
        self.wrap(self.coeffs.scale(c))
    }

    /// Matrix of `y -> x * y`.
    pub fn left_op(&self) -> Matrix {
        self.algebra.left_op_vector(&self.coeffs)
    }

    /// Matrix of `y -> y * x`.
    pub fn right_op(&self) -> Matrix {
        self.algebra.right_op_vector(&self.coeffs)
    }

    /// Rendering against the algebra's basis names.
    pub fn pretty(&self) -> String {
        crate::linalg::pretty_combination(self.coeffs.entries(), self.algebra.basis_names())
    }
}

/// `(x, y, z) = (x*y)*z - x*(y*z)`.
pub fn associator(x: &Element, y: &Element, z: &Element) -> Result<Element> {
    let left = x.multiply(y)?.multiply(z)?;
    let right = x.multiply(&y.multiply(z)?)?;
    left.sub(&right)
}

/// `S(x, y, z) = (x, y, z) + (y, z, x) + (z, x, y)`.
pub fn cyclic_associator_sum(x: &Element, y: &Element, z: &Element) -> Result<Element> {
    let a = associator(x, y, z)?;
    let b = associator(y, z, x)?;
    let c = associator(z, x, y)?;
    a.add(&b)?.add(&c)
}

/// `J(x, y, z) = [x, [y, z]] + [y, [z, x]] + [z, [x, y]]`.
pub fn jacobiator(x: &Element, y: &Element, z: &Element) -> Result<Element> {
    let a = x.commutator(&y.commutator(z)?)?;
    let b = y.commutator(&z.commutator(x)?)?;
    let c = z.commutator(&x.commutator(y)?)?;
    a.add(&b)?.add(&c)
}

fn fail_triple(alg: &AlgebraSpec, identity: &str, t: [usize; 3], residual: Vector) -> CheckReport {
    CheckReport::fail(
        identity,
        t,
        residual.into_entries(),
        [
            alg.basis_name(t[0]).to_string(),
            alg.basis_name(t[1]).to_string(),
            alg.basis_name(t[2]).to_string(),
        ],
        alg.basis_names(),
    )
}

/// First column where two operators differ, turned into a triple witness
/// `(i, j, column)` with the residual column as counterexample element.
fn fail_operator_pair(
    alg: &AlgebraSpec,
    identity: &str,
    i: usize,
    j: usize,
    lhs: &Matrix,
    rhs: &Matrix,
) -> Option<CheckReport> {
    let diff = lhs - rhs;
    if diff.is_zero() {
        return None;
    }
    let col = (0..diff.dim())
        .find(|&c| !diff.col(c).is_zero())
        .expect("nonzero matrix has a nonzero column");
    Some(fail_triple(alg, identity, [i, j, col], diff.col(col)))
}

/// Checks `(e_i, e_j, e_k) = q (e_k, e_j, e_i)` over all basis triples.
pub fn check_q_flexible(alg: &AlgebraSpec) -> CheckReport {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = alg.associator_basis(i, j, k);
                let rhs = alg.associator_basis(k, j, i).scale(alg.q());
                let residual = &lhs - &rhs;
                if !residual.is_zero() {
                    return fail_triple(alg, "q-flexible", [i, j, k], residual);
                }
            }
        }
    }
    CheckReport::pass("q-flexible")
}

/// Checks the associator vanishes everywhere; independent route for the
/// `q = 0` specialization.
pub fn check_associative(alg: &AlgebraSpec) -> CheckReport {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let residual = alg.associator_basis(i, j, k);
                if !residual.is_zero() {
                    return fail_triple(alg, "associative", [i, j, k], residual);
                }
            }
        }
    }
    CheckReport::pass("associative")
}

/// Checks the three multiplication-operator relations that restate the
/// defining identity, one argument slot at a time:
///
/// ```text
/// 1.  L_{xy} - L_x L_y       = q (R_x R_y - R_{yx})
/// 2.  [R_x, L_y]             = q [R_y, L_x]
/// 3.  R_x R_y - R_{yx}       = q (L_{xy} - L_x L_y)
/// ```
pub fn check_operator_relations(alg: &AlgebraSpec) -> CheckReport {
    let n = alg.dim();
    let l: Vec<Matrix> = alg.all_left_mults();
    let r: Vec<Matrix> = alg.all_right_mults();
    let q = alg.q();
    for i in 0..n {
        for j in 0..n {
            let l_prod = alg.left_op_vector(&alg.basis_product(i, j));
            let r_prod_swapped = alg.right_op_vector(&alg.basis_product(j, i));
            let ll = &(&l[i] * &l[j]);
            let rr = &(&r[i] * &r[j]);

            let lhs1 = &l_prod - ll;
            let rhs1 = (rr - &r_prod_swapped).scale(q);
            if let Some(rep) = fail_operator_pair(alg, "operator-relation-1", i, j, &lhs1, &rhs1) {
                return rep;
            }

            let lhs2 = commutator_mat(&r[i], &l[j]);
            let rhs2 = commutator_mat(&r[j], &l[i]).scale(q);
            if let Some(rep) = fail_operator_pair(alg, "operator-relation-2", i, j, &lhs2, &rhs2) {
                return rep;
            }

            let lhs3 = rr - &r_prod_swapped;
            let rhs3 = (&l_prod - ll).scale(q);
            if let Some(rep) = fail_operator_pair(alg, "operator-relation-3", i, j, &lhs3, &rhs3) {
                return rep;
            }
        }
    }
    CheckReport::pass("operator-relations")
}

/// Operator form of the cyclic associator sum:
///
/// ```text
/// L_{xy} - L_x L_y + R_x L_y - L_y R_x + R_y R_x - R_{xy}
///   = q (R_x R_y - R_{yx} + R_y L_x - L_x R_y + L_{yx} - L_y L_x)
/// ```
pub fn check_operator_sum_relation(alg: &AlgebraSpec) -> CheckReport {
    let n = alg.dim();
    let l: Vec<Matrix> = alg.all_left_mults();
    let r: Vec<Matrix> = alg.all_right_mults();
    let q = alg.q();
    for i in 0..n {
        for j in 0..n {
            let (lhs, rhs) = operator_sum_sides(alg, &l, &r, i, j);
            let rhs = rhs.scale(q);
            if let Some(rep) = fail_operator_pair(alg, "operator-sum-relation", i, j, &lhs, &rhs) {
                return rep;
            }
        }
    }
    CheckReport::pass("operator-sum-relation")
}

/// Both sides of the operator sum relation before scaling the right side
/// by `q`; exposed so tests can rebuild it from the three pair relations.
pub fn operator_sum_sides(
    alg: &AlgebraSpec,
    l: &[Matrix],
    r: &[Matrix],
    i: usize,
    j: usize,
) -> (Matrix, Matrix) {
    let l_ij = alg.left_op_vector(&alg.basis_product(i, j));
    let l_ji = alg.left_op_vector(&alg.basis_product(j, i));
    let r_ij = alg.right_op_vector(&alg.basis_product(i, j));
    let r_ji = alg.right_op_vector(&alg.basis_product(j, i));
    let lhs = &(&(&(&(&l_ij - &(&l[i] * &l[j])) + &(&r[i] * &l[j])) - &(&l[j] * &r[i]))
        + &(&r[j] * &r[i]))
        - &r_ij;
    let rhs = &(&(&(&(&(&r[i] * &r[j]) - &r_ji) + &(&r[j] * &l[i])) - &(&l[i] * &r[j])) + &l_ji)
        - &(&l[j] * &l[i]);
    (lhs, rhs)
}

/// Checks the deformed Jacobi identity
/// `[xy - q yx, z] + [yz - q zy, x] + [zx - q xz, y] = 0`
/// over all basis triples.
pub fn check_q_jacobi(alg: &AlgebraSpec) -> CheckReport {
    let n = alg.dim();
    let q = alg.q();
    let term = |a: usize, b: usize, c: usize| -> Vector {
        let mut u = alg.basis_product(a, b);
        u.add_scaled(&-q, &alg.basis_product(b, a));
        let ec = Vector::basis(n, c);
        &alg.product(&u, &ec) - &alg.product(&ec, &u)
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let residual = &(&term(i, j, k) + &term(j, k, i)) + &term(k, i, j);
                if !residual.is_zero() {
                    return fail_triple(alg, "q-jacobi", [i, j, k], residual);
                }
            }
        }
    }
    CheckReport::pass("q-jacobi")
}

/// Checks `J(x, y, z) = (q - 1) S(x, y, z)` over all basis triples, with
/// the two sides computed through independent paths (commutators versus
/// associators).
pub fn check_jacobiator_vs_cyclic_sum(alg: &AlgebraRef) -> CheckReport {
    let n = alg.dim();
    let qm1 = alg.q() - &Rat::one();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = alg.basis_element(i);
                let y = alg.basis_element(j);
                let z = alg.basis_element(k);
                let lhs = jacobiator(&x, &y, &z).expect("same algebra");
                let rhs = cyclic_associator_sum(&x, &y, &z)
                    .expect("same algebra")
                    .scale(&qm1);
                let residual = lhs.sub(&rhs).expect("same algebra");
                if !residual.is_zero() {
                    return fail_triple(
                        alg,
                        "jacobiator-vs-cyclic-sum",
                        [i, j, k],
                        residual.coeffs().clone(),
                    );
                }
            }
        }
    }
    CheckReport::pass("jacobiator-vs-cyclic-sum")
}

/// Lie admissibility: the commutator bracket satisfies the Jacobi
/// identity, i.e. `J(x, y, z) = 0` on all basis triples.
pub fn check_lie_admissible(alg: &AlgebraRef) -> CheckReport {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = alg.basis_element(i);
                let y = alg.basis_element(j);
                let z = alg.basis_element(k);
                let residual = jacobiator(&x, &y, &z).expect("same algebra");
                if !residual.is_zero() {
                    return fail_triple(
                        alg,
                        "lie-admissible",
                        [i, j, k],
                        residual.coeffs().clone(),
                    );
                }
            }
        }
    }
    CheckReport::pass("lie-admissible")
}

/// Sufficient condition for Lie admissibility: `S(x, y, z) = 0` on all
/// basis triples.
pub fn check_cyclic_sum_vanishes(alg: &AlgebraRef) -> CheckReport {
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = alg.basis_element(i);
                let y = alg.basis_element(j);
                let z = alg.basis_element(k);
                let residual = cyclic_associator_sum(&x, &y, &z).expect("same algebra");
                if !residual.is_zero() {
                    return fail_triple(
                        alg,
                        "cyclic-sum-vanishes",
                        [i, j, k],
                        residual.coeffs().clone(),
                    );
                }
            }
        }
    }
    CheckReport::pass("cyclic-sum-vanishes")
}

/// The exact scalar form of Lie admissibility over a characteristic-zero
/// field: `(q - 1) S(x, y, z) = 0` on all basis triples.
pub fn check_scaled_cyclic_sum_vanishes(alg: &AlgebraRef) -> CheckReport {
    let qm1 = alg.q() - &Rat::one();
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = alg.basis_element(i);
                let y = alg.basis_element(j);
                let z = alg.basis_element(k);
                let residual = cyclic_associator_sum(&x, &y, &z)
                    .expect("same algebra")
                    .scale(&qm1);
                if !residual.is_zero() {
                    return fail_triple(
                        alg,
                        "scaled-cyclic-sum-vanishes",
                        [i, j, k],
                        residual.coeffs().clone(),
                    );
                }
            }
        }
    }
    CheckReport::pass("scaled-cyclic-sum-vanishes")
}

/// The three conditions of the equivalence theorem, evaluated without any
/// precondition. Order: bracket derivation, half-difference derivation,
/// Jacobi identity of the commutator.
pub fn myung_condition_reports(alg: &AlgebraRef) -> MyungReport {
    let n = alg.dim();

    let mut q_derivation = CheckReport::pass("myung-q-derivation");
    let mut star_derivation = CheckReport::pass("myung-star-derivation");
    let mut jacobi = CheckReport::pass("myung-commutator-jacobi");

    'outer1: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = alg.basis_element(i);
                let y = alg.basis_element(j);
                let z = alg.basis_element(k);
                // [z, xy] = {z, x}_q y - x {y, z}_q
                let lhs = z.commutator(&x.multiply(&y).unwrap()).unwrap();
                let rhs = z
                    .q_bracket(&x)
                    .unwrap()
                    .multiply(&y)
                    .unwrap()
                    .sub(&x.multiply(&y.q_bracket(&z).unwrap()).unwrap())
                    .unwrap();
                let residual = lhs.sub(&rhs).unwrap();
                if !residual.is_zero() {
                    q_derivation = fail_triple(
                        alg,
                        "myung-q-derivation",
                        [i, j, k],
                        residual.coeffs().clone(),
                    );
                    break 'outer1;
                }
            }
        }
    }

    'outer2: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = alg.basis_element(i);
                let y = alg.basis_element(j);
                let z = alg.basis_element(k);
                // [z, x *_q y] = [z, x] *_q y + x *_q [z, y]
                let lhs = z.commutator(&x.star_q(&y).unwrap()).unwrap();
                let rhs = z
                    .commutator(&x)
                    .unwrap()
                    .star_q(&y)
                    .unwrap()
                    .add(&x.star_q(&z.commutator(&y).unwrap()).unwrap())
                    .unwrap();
                let residual = lhs.sub(&rhs).unwrap();
                if !residual.is_zero() {
                    star_derivation = fail_triple(
                        alg,
                        "myung-star-derivation",
                        [i, j, k],
                        residual.coeffs().clone(),
                    );
                    break 'outer2;
                }
            }
        }
    }

    'outer3: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let x = alg.basis_element(i);
                let y = alg.basis_element(j);
                let z = alg.basis_element(k);
                // [[x, y], z] + [[y, z], x] + [[z, x], y] = 0
                let residual = x
                    .commutator(&y)
                    .unwrap()
                    .commutator(&z)
                    .unwrap()
                    .add(&y.commutator(&z).unwrap().commutator(&x).unwrap())
                    .unwrap()
                    .add(&z.commutator(&x).unwrap().commutator(&y).unwrap())
                    .unwrap();
                if !residual.is_zero() {
                    jacobi = fail_triple(
                        alg,
                        "myung-commutator-jacobi",
                        [i, j, k],
                        residual.coeffs().clone(),
                    );
                    break 'outer3;
                }
            }
        }
    }

    MyungReport {
        q_derivation,
        star_derivation,
        jacobi,
    }
}

/// Gated equivalence checker: the theorem's scope is algebras that
/// satisfy the defining identity, so non-flexible input is rejected.
pub fn check_myung_equivalence(alg: &AlgebraRef) -> Result<MyungReport> {
    let gate = check_q_flexible(alg);
    if !gate.verdict {
        return Err(Error::Unverified(format!(
            "myung equivalence requires a q-flexible algebra; {gate}"
        )));
    }
    Ok(myung_condition_reports(alg))
}
