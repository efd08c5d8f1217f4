//! Exact vectors, square matrices, and rank-3 structure tensors.
//!
//! Everything is immutable after construction and safe to share across
//! threads. Binary operators panic on dimension mismatch; the checked
//! entry points (`mat_mul`, `checked_add`, `pairing`) return shape errors
//! instead.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Coefficient vector of fixed length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector {
    entries: Vec<Rat>,
}

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector {
            entries: vec![Rat::zero(); n],
        }
    }

    pub fn from_entries(entries: Vec<Rat>) -> Self {
        Vector { entries }
    }

    /// Standard basis vector `e_i` in dimension `n`.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i < n, "basis index out of range");
        let mut v = Vector::zeros(n);
        v.entries[i] = Rat::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.entries[i]
    }

    pub fn set(&mut self, i: usize, value: Rat) {
        self.entries[i] = value;
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Vector {
        Vector {
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// `self += c * other`; dimensions must agree.
    pub fn add_scaled(&mut self, c: &Rat, other: &Vector) {
        assert_eq!(self.len(), other.len(), "vector dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(other.entries.iter()) {
            *a = &*a + &(b * c);
        }
    }

    /// Natural pairing `sum_i self_i * other_i`.
    pub fn pairing(&self, other: &Vector) -> Result<Rat> {
        if self.len() != other.len() {
            return Err(Error::shape(
                format!("vector of length {}", self.len()),
                format!("vector of length {}", other.len()),
            ));
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn entries(&self) -> &[Rat] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.entries
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector dimension mismatch");
        Vector {
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.len(), rhs.len(), "vector dimension mismatch");
        Vector {
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

/// Dense square matrix acting on coefficient vectors, row-major storage.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    entries: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            entries: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Matrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::shape(
                    format!("{dim} columns"),
                    format!("{} columns", row.len()),
                ));
            }
            entries.extend(row);
        }
        Ok(Matrix { dim, entries })
    }

    /// Row-major flat entry list of length `dim * dim`.
    pub fn from_flat(dim: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::shape(
                format!("{} entries", dim * dim),
                format!("{} entries", entries.len()),
            ));
        }
        Ok(Matrix { dim, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rat {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rat::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn col(&self, j: usize) -> Vector {
        Vector::from_entries((0..self.dim).map(|i| self.get(i, j).clone()).collect())
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(self.dim, v.len(), "matrix/vector dimension mismatch");
        let mut out = Vector::zeros(self.dim);
        for r in 0..self.dim {
            let mut acc = Rat::zero();
            for c in 0..self.dim {
                let x = v.get(c);
                if !x.is_zero() {
                    acc = acc + self.get(r, c) * x;
                }
            }
            out.set(r, acc);
        }
        out
    }

    pub fn row_major(&self) -> &[Rat] {
        &self.entries
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix[{0}x{0}]", self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        Matrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        mat_mul(self, rhs).expect("matrix dimension mismatch")
    }
}

/// Exact matrix product; shape error when dimensions disagree.
pub fn mat_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.dim != b.dim {
        return Err(Error::shape(
            format!("{0}x{0} matrix", a.dim),
            format!("{0}x{0} matrix", b.dim),
        ));
    }
    let n = a.dim;
    let mut out = Matrix::zeros(n);
    for r in 0..n {
        for k in 0..n {
            let x = a.get(r, k);
            if x.is_zero() {
                continue;
            }
            for c in 0..n {
                let y = b.get(k, c);
                if y.is_zero() {
                    continue;
                }
                let cur = out.get(r, c) + &(x * y);
                out.set(r, c, cur);
            }
        }
    }
    Ok(out)
}

/// `a*b - b*a`.
pub fn commutator_mat(a: &Matrix, b: &Matrix) -> Matrix {
    &(a * b) - &(b * a)
}

/// Structure-constant tensor: entry `(i, j, k)` is the coefficient of
/// basis element `k` in the product `e_i * e_j`. Stored sparsely; zero
/// entries are never kept.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor3 {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), Rat>,
}

impl Tensor3 {
    pub fn zeros(dim: usize) -> Self {
        Tensor3 {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize, usize), Rat)>,
    {
        let mut t = Tensor3::zeros(dim);
        for ((i, j, k), v) in entries {
            t.set(i, j, k, v)?;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rat {
        self.entries
            .get(&(i, j, k))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rat) -> Result<()> {
        if i >= self.dim || j >= self.dim || k >= self.dim {
            return Err(Error::shape(
                format!("indices below {}", self.dim),
                format!("({i},{j},{k})"),
            ));
        }
        if value.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), value);
        }
        Ok(())
    }

    /// The product `e_i * e_j` as a coefficient vector.
    pub fn fiber(&self, i: usize, j: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        for ((_, _, k), c) in self.entries.range((i, j, 0)..=(i, j, usize::MAX)) {
            v.set(*k, c.clone());
        }
        v
    }

    /// Bilinear extension of the basis products.
    pub fn contract(&self, u: &Vector, v: &Vector) -> Vector {
        assert_eq!(u.len(), self.dim, "tensor/vector dimension mismatch");
        assert_eq!(v.len(), self.dim, "tensor/vector dimension mismatch");
        let mut out = Vector::zeros(self.dim);
        for ((i, j, k), c) in &self.entries {
            let a = u.get(*i);
            if a.is_zero() {
                continue;
            }
            let b = v.get(*j);
            if b.is_zero() {
                continue;
            }
            let cur = out.get(*k) + &(&(a * b) * c);
            out.set(*k, cur);
        }
        out
    }

    /// Nonzero entries in lexicographic index order.
    pub fn iter_nonzero(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rat)> {
        self.entries.iter()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    /// Dense iteration adapter over all `dim^3` slots.
    pub fn iter_dense(&self) -> impl Iterator<Item = ((usize, usize, usize), Rat)> + '_ {
        let d = self.dim;
        (0..d).flat_map(move |i| {
            (0..d).flat_map(move |j| (0..d).map(move |k| ((i, j, k), self.get(i, j, k))))
        })
    }

    /// Tensor of the same algebra in the permuted basis `f_a = e_{perm[a]}`.
    pub fn permuted(&self, perm: &[usize]) -> Tensor3 {
        assert_eq!(perm.len(), self.dim, "permutation length mismatch");
        let mut inv = vec![0usize; self.dim];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let mut out = Tensor3::zeros(self.dim);
        for ((i, j, k), c) in &self.entries {
            out.entries.insert((inv[*i], inv[*j], inv[*k]), c.clone());
        }
        out
    }
}

/// Renders a coefficient vector against basis names, e.g. `e1 - 2*e6`.
pub fn pretty_combination(coeffs: &[Rat], names: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = names.get(k).cloned().unwrap_or_else(|| format!("b{k}"));
        let neg = c < &Rat::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag.is_one() {
            out.push_str(&name);
        } else {
            out.push_str(&format!("{mag}*{name}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2(entries: [i64; 4]) -> Matrix {
        Matrix::from_flat(2, entries.iter().map(|&x| Rat::from(x)).collect()).unwrap()
    }

    #[test]
    fn mat_mul_identity_and_zero() {
        let id = Matrix::identity(3);
        let mut m = Matrix::zeros(3);
        m.set(0, 2, Rat::new(5, 7));
        m.set(1, 0, Rat::from(-3));
        assert_eq!(mat_mul(&id, &m).unwrap(), m);
        assert_eq!(mat_mul(&m, &id).unwrap(), m);
        let z = Matrix::zeros(3);
        assert!(mat_mul(&m, &z).unwrap().is_zero());
    }

    #[test]
    fn mat_mul_two_by_two() {
        // ((0,1),(0,0)) * ((0,0),(1,0)) = ((1,0),(0,0)), by hand expansion.
        let a = m2([0, 1, 0, 0]);
        let b = m2([0, 0, 1, 0]);
        assert_eq!(mat_mul(&a, &b).unwrap(), m2([1, 0, 0, 0]));
        // The reversed product lands on the other diagonal slot.
        assert_eq!(mat_mul(&b, &a).unwrap(), m2([0, 0, 0, 1]));
    }

    #[test]
    fn mat_mul_shape_error() {
        let a = Matrix::identity(2);
        let b = Matrix::identity(3);
        assert!(matches!(mat_mul(&a, &b), Err(Error::Shape { .. })));
    }

    #[test]
    fn transpose_is_involution() {
        let a = m2([0, 1, 0, 0]);
        assert_eq!(a.transpose(), m2([0, 0, 1, 0]));
        assert_eq!(a.transpose().transpose(), a);
        let id = Matrix::identity(4);
        assert_eq!(id.transpose(), id);
    }

    #[test]
    fn pairing_adjointness_fixed_case() {
        let a = m2([1, 2, 3, 4]);
        let v = Vector::from_entries(vec![Rat::new(1, 2), Rat::from(-1)]);
        let w = Vector::from_entries(vec![Rat::from(3), Rat::new(2, 5)]);
        let lhs = a.transpose().apply(&v).pairing(&w).unwrap();
        let rhs = v.pairing(&a.apply(&w)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_fiber_and_contract_agree() {
        let mut t = Tensor3::zeros(3);
        t.set(0, 1, 2, Rat::from(2)).unwrap();
        t.set(1, 1, 0, Rat::new(-1, 2)).unwrap();
        assert_eq!(t.fiber(0, 1), {
            let mut v = Vector::zeros(3);
            v.set(2, Rat::from(2));
            v
        });
        let e0 = Vector::basis(3, 0);
        let e1 = Vector::basis(3, 1);
        assert_eq!(t.contract(&e0, &e1), t.fiber(0, 1));
        // Setting an entry to zero removes it from the sparse store.
        t.set(0, 1, 2, Rat::zero()).unwrap();
        assert_eq!(t.nonzero_count(), 1);
    }

    #[test]
    fn tensor_permutation_relabels_indices() {
        let mut t = Tensor3::zeros(2);
        t.set(0, 0, 1, Rat::one()).unwrap();
        let p = t.permuted(&[1, 0]);
        assert_eq!(p.get(1, 1, 0), Rat::one());
        assert_eq!(p.nonzero_count(), 1);
    }

    #[test]
    fn pretty_combination_rendering() {
        let names: Vec<String> = (0..3).map(|i| format!("e{i}")).collect();
        let coeffs = vec![Rat::zero(), Rat::from(-2), Rat::one()];
        assert_eq!(pretty_combination(&coeffs, &names), "-2*e1 + e2");
        assert_eq!(pretty_combination(&[Rat::zero()], &names[..1]), "0");
    }
}
