//! The octonion algebra as a fully cross-checked built-in fixture.
//!
//! The algebra is eight dimensional with unit `e0` and imaginary units
//! `e1..e7` multiplying by
//!
//! ```text
//! e0^2 = e0,   e_i e0 = e_i = e0 e_i,   e_i e_j = -delta_ij e0 + c_ijk e_k
//! ```
//!
//! where the totally antisymmetric constants `c_ijk` equal 1 on the seven
//! index lines (124), (137), (156), (235), (267), (346), (457). Two
//! independent data sources are kept side by side: the structure built
//! from the constants, and the reference multiplication/associator tables
//! embedded verbatim. Reports surface any discrepancy with both values;
//! the product generated from the constants is normative.

// Index loops in this module mirror the subscript formulas on purpose.
#![allow(clippy::needless_range_loop)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{AlgebraRef, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::{commutator_mat, pretty_combination, Matrix, Tensor3, Vector};
use crate::rational::Rat;
use crate::report::CheckReport;

/// Index triples carrying `c = 1`; every other nonzero value follows by
/// total antisymmetry.
pub const FANO_TRIPLES: [(usize, usize, usize); 7] = [
    (1, 2, 4),
    (1, 3, 7),
    (1, 5, 6),
    (2, 3, 5),
    (2, 6, 7),
    (3, 4, 6),
    (4, 5, 7),
];

/// Totally antisymmetric structure constants on indices `1..=7`, plus the
/// Kronecker delta. Index 0 never participates in `c`.
#[derive(Clone, Debug)]
pub struct OctonionConstants {
    c: [[[i64; 8]; 8]; 8],
}

impl OctonionConstants {
    pub fn new() -> Self {
        let mut c = [[[0i64; 8]; 8]; 8];
        for &(i, j, k) in &FANO_TRIPLES {
            // Even permutations carry +1, odd permutations -1.
            c[i][j][k] = 1;
            c[j][k][i] = 1;
            c[k][i][j] = 1;
            c[j][i][k] = -1;
            c[i][k][j] = -1;
            c[k][j][i] = -1;
        }
        OctonionConstants { c }
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> i64 {
        self.c[i][j][k]
    }

    pub fn delta(i: usize, j: usize) -> i64 {
        i64::from(i == j)
    }

    /// Number of nonzero constants; seven lines with six signed
    /// permutations each.
    pub fn nonzero_count(&self) -> usize {
        let mut n = 0;
        for i in 1..8 {
            for j in 1..8 {
                for k in 1..8 {
                    if self.c[i][j][k] != 0 {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    /// Whether the distinct indices `{i, j, k}` lie on one of the seven
    /// lines, i.e. span a quaternionic triple.
    pub fn is_line(&self, i: usize, j: usize, k: usize) -> bool {
        self.c[i][j][k] != 0
    }
}

impl Default for OctonionConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// Builds the octonion algebra from the defining constants. The caller
/// chooses the deformation parameter; `-1` is the value at which the
/// algebra satisfies the defining identity.
pub fn build_octonion(q: Rat) -> AlgebraRef {
    let k = OctonionConstants::new();
    let mut t = Tensor3::zeros(8);
    t.set(0, 0, 0, Rat::one()).unwrap();
    for i in 1..8 {
        t.set(0, i, i, Rat::one()).unwrap();
        t.set(i, 0, i, Rat::one()).unwrap();
        t.set(i, i, 0, Rat::from(-1)).unwrap();
        for j in 1..8 {
            for m in 1..8 {
                let c = k.c(i, j, m);
                if c != 0 {
                    t.set(i, j, m, Rat::from(c)).unwrap();
                }
            }
        }
    }
    AlgebraSpec::with_default_names(q, t).shared()
}

/// Reference multiplication table: entry `[i][j]` is the signed basis
/// index of `e_i * e_j`. Embedded verbatim as an independent cross-check
/// of the generated structure.
pub const MULTIPLICATION_TABLE: [[(i64, usize); 8]; 8] = [
    [
        (1, 0),
        (1, 1),
        (1, 2),
        (1, 3),
        (1, 4),
        (1, 5),
        (1, 6),
        (1, 7),
    ],
    [
        (1, 1),
        (-1, 0),
        (1, 4),
        (1, 7),
        (-1, 2),
        (1, 6),
        (-1, 5),
        (-1, 3),
    ],
    [
        (1, 2),
        (-1, 4),
        (-1, 0),
        (1, 5),
        (1, 1),
        (-1, 3),
        (1, 7),
        (-1, 6),
    ],
    [
        (1, 3),
        (-1, 7),
        (-1, 5),
        (-1, 0),
        (1, 6),
        (1, 2),
        (-1, 4),
        (1, 1),
    ],
    [
        (1, 4),
        (1, 2),
        (-1, 1),
        (-1, 6),
        (-1, 0),
        (1, 7),
        (1, 3),
        (-1, 5),
    ],
    [
        (1, 5),
        (-1, 6),
        (1, 3),
        (-1, 2),
        (-1, 7),
        (-1, 0),
        (1, 1),
        (1, 4),
    ],
    [
        (1, 6),
        (1, 5),
        (-1, 7),
        (1, 4),
        (-1, 3),
        (-1, 1),
        (-1, 0),
        (1, 2),
    ],
    [
        (1, 7),
        (1, 3),
        (1, 6),
        (-1, 1),
        (1, 5),
        (-1, 4),
        (-1, 2),
        (-1, 0),
    ],
];

/// Row labels `(i, j)` of the reference associator table.
pub const ASSOCIATOR_TABLE_ROWS: [(usize, usize); 15] = [
    (0, 0),
    (0, 1),
    (1, 1),
    (1, 2),
    (2, 2),
    (2, 3),
    (3, 3),
    (3, 4),
    (4, 4),
    (4, 5),
    (5, 5),
    (5, 6),
    (6, 6),
    (6, 7),
    (7, 7),
];

/// Reference associator table: entry `[row][k]` is `(coeff, index)` of
/// `(e_i, e_j, e_k)` for the row label `(i, j)`; `(0, 0)` means zero.
pub const ASSOCIATOR_TABLE: [[(i64, usize); 8]; 15] = [
    [(0, 0); 8],
    [(0, 0); 8],
    [(0, 0); 8],
    [
        (0, 0),
        (0, 0),
        (0, 0),
        (-2, 6),
        (0, 0),
        (2, 7),
        (2, 3),
        (-2, 5),
    ],
    [(0, 0); 8],
    [
        (0, 0),
        (-2, 6),
        (0, 0),
        (0, 0),
        (-2, 7),
        (0, 0),
        (2, 1),
        (2, 4),
    ],
    [(0, 0); 8],
    [
        (0, 0),
        (2, 5),
        (-2, 7),
        (0, 0),
        (0, 0),
        (-2, 1),
        (0, 0),
        (2, 2),
    ],
    [(0, 0); 8],
    [
        (0, 0),
        (2, 3),
        (2, 6),
        (-2, 1),
        (0, 0),
        (0, 0),
        (-2, 2),
        (0, 0),
    ],
    [(0, 0); 8],
    [
        (0, 0),
        (0, 0),
        (2, 4),
        (2, 7),
        (-2, 2),
        (0, 0),
        (0, 0),
        (-2, 3),
    ],
    [(0, 0); 8],
    [
        (0, 0),
        (-2, 4),
        (0, 0),
        (2, 5),
        (2, 1),
        (-2, 3),
        (0, 0),
        (0, 0),
    ],
    [(0, 0); 8],
];

/// Nonvanishing associator index combinations as printed in the
/// reference proposition, including permuted forms; the checker
/// canonicalizes them to sorted triples.
pub const PRINTED_NONVANISHING_COMBINATIONS: [(usize, usize, usize); 23] = [
    (1, 2, 3),
    (1, 2, 5),
    (1, 2, 6),
    (1, 2, 7),
    (2, 3, 4),
    (2, 3, 6),
    (2, 3, 7),
    (3, 4, 1),
    (3, 4, 2),
    (3, 4, 5),
    (3, 4, 7),
    (4, 5, 1),
    (4, 5, 2),
    (4, 5, 3),
    (4, 5, 6),
    (5, 6, 2),
    (5, 6, 3),
    (5, 6, 4),
    (5, 6, 7),
    (6, 7, 1),
    (6, 7, 3),
    (6, 7, 4),
    (6, 7, 5),
];

fn signed_basis_vector(coeff: i64, idx: usize) -> Vector {
    let mut v = Vector::zeros(8);
    if coeff != 0 {
        v.set(idx, Rat::from(coeff));
    }
    v
}

/// One disagreement between a generated value and the reference table.
#[derive(Clone, Debug)]
pub struct TableMismatch {
    pub row: String,
    pub col: usize,
    pub computed: String,
    pub printed: String,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub entries_checked: usize,
    pub mismatches: Vec<TableMismatch>,
}

impl TableReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares all 64 generated basis products against the reference
/// multiplication table.
pub fn multiplication_table_report() -> TableReport {
    let alg = build_octonion(Rat::from(-1));
    let names = alg.basis_names();
    let mut mismatches = Vec::new();
    for i in 0..8 {
        for j in 0..8 {
            let computed = alg.basis_product(i, j);
            let (coeff, idx) = MULTIPLICATION_TABLE[i][j];
            let printed = signed_basis_vector(coeff, idx);
            if computed != printed {
                mismatches.push(TableMismatch {
                    row: names[i].clone(),
                    col: j,
                    computed: pretty_combination(computed.entries(), names),
                    printed: pretty_combination(printed.entries(), names),
                });
            }
        }
    }
    TableReport {
        entries_checked: 64,
        mismatches,
    }
}

/// Closed-form associator of basis units, expanded directly from the
/// defining constants (no structure-tensor contraction):
///
/// ```text
/// (e_i, e_j, e_k) = -delta_ij e_k + delta_jk e_i + (c_jki - c_ijk) e0
///                   + sum_{m,n} (c_ijm c_mkn - c_jkm c_imn) e_n
/// ```
///
/// for `i, j, k >= 1`; any triple containing the unit `e0` associates to
/// zero because `e0` is a two-sided identity.
pub fn associator_from_constants(i: usize, j: usize, k: usize) -> Vector {
    let con = OctonionConstants::new();
    let mut out = vec![0i64; 8];
    if i == 0 || j == 0 || k == 0 {
        return Vector::zeros(8);
    }
    out[k] -= OctonionConstants::delta(i, j);
    out[i] += OctonionConstants::delta(j, k);
    out[0] += con.c(j, k, i) - con.c(i, j, k);
    for n in 1..8 {
        let mut acc = 0i64;
        for m in 1..8 {
            acc += con.c(i, j, m) * con.c(m, k, n) - con.c(j, k, m) * con.c(i, m, n);
        }
        out[n] += acc;
    }
    Vector::from_entries(out.into_iter().map(Rat::from).collect())
}

/// Checks the closed-form associator against the product expansion on
/// all 512 basis triples.
pub fn check_closed_formula_matches_products() -> CheckReport {
    let alg = build_octonion(Rat::from(-1));
    for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let brute = alg.associator_basis(i, j, k);
                let closed = associator_from_constants(i, j, k);
                let residual = &brute - &closed;
                if !residual.is_zero() {
                    return CheckReport::fail(
                        "closed-formula-associator",
                        [i, j, k],
                        residual.into_entries(),
                        [format!("e{i}"), format!("e{j}"), format!("e{k}")],
                        alg.basis_names(),
                    );
                }
            }
        }
    }
    CheckReport::pass("closed-formula-associator")
}

/// Compares the reference associator table rows against brute force and
/// against the closed formula. Brute force is normative; disagreement
/// with the printed entry is reported, never silently patched.
pub fn associator_table_report() -> TableReport {
    let alg = build_octonion(Rat::from(-1));
    let names = alg.basis_names();
    let mut mismatches = Vec::new();
    let mut checked = 0usize;
    for (row, &(i, j)) in ASSOCIATOR_TABLE_ROWS.iter().enumerate() {
        for k in 0..8 {
            checked += 1;
            let brute = alg.associator_basis(i, j, k);
            let (coeff, idx) = ASSOCIATOR_TABLE[row][k];
            let printed = signed_basis_vector(coeff, idx);
            if brute != printed {
                mismatches.push(TableMismatch {
                    row: format!("e{i}{j}"),
                    col: k,
                    computed: pretty_combination(brute.entries(), names),
                    printed: pretty_combination(printed.entries(), names),
                });
            }
            let closed = associator_from_constants(i, j, k);
            if brute != closed {
                mismatches.push(TableMismatch {
                    row: format!("e{i}{j}"),
                    col: k,
                    computed: pretty_combination(brute.entries(), names),
                    printed: format!(
                        "closed form {}",
                        pretty_combination(closed.entries(), names)
                    ),
                });
            }
        }
    }
    TableReport {
        entries_checked: checked,
        mismatches,
    }
}

/// Whether the span of `{e_a : a in indices}` is closed under the
/// product.
pub fn quadruple_closed(indices: &[usize; 4]) -> bool {
    let alg = build_octonion(Rat::from(-1));
    for &a in indices {
        for &b in indices {
            let prod = alg.basis_product(a, b);
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() && !indices.contains(&k) {
                    return false;
                }
            }
        }
    }
    true
}

/// For each of the seven lines, checks that `{e0, e_i, e_j, e_k}` is
/// closed under multiplication and that all 64 internal associators
/// vanish.
pub fn check_subalgebra_associativity() -> CheckReport {
    let alg = build_octonion(Rat::from(-1));
    for &(i, j, k) in &FANO_TRIPLES {
        let span = [0, i, j, k];
        if !quadruple_closed(&span) {
            return CheckReport {
                identity: "quaternionic-subalgebra".into(),
                verdict: false,
                witness: Some([i, j, k]),
                residual: None,
                detail: Some(format!("span {{e0,e{i},e{j},e{k}}} is not closed")),
            };
        }
        for &a in &span {
            for &b in &span {
                for &c in &span {
                    let residual = alg.associator_basis(a, b, c);
                    if !residual.is_zero() {
                        return CheckReport::fail(
                            "quaternionic-subalgebra",
                            [a, b, c],
                            residual.into_entries(),
                            [format!("e{a}"), format!("e{b}"), format!("e{c}")],
                            alg.basis_names(),
                        );
                    }
                }
            }
        }
    }
    CheckReport::pass("quaternionic-subalgebra")
}

#[derive(Clone, Debug)]
pub struct AlternationReport {
    pub report: CheckReport,
    /// Sorted triples of distinct nonzero indices with nonvanishing
    /// associator, canonical representatives of the permutation orbits.
    pub nonvanishing: Vec<[usize; 3]>,
    /// Canonicalized triples from the printed combination list.
    pub printed_nonvanishing: Vec<[usize; 3]>,
    /// Computed nonvanishing triples absent from the printed list;
    /// reported as data.
    pub unlisted_nonvanishing: Vec<[usize; 3]>,
}

/// Checks full alternation of the associator over all ordered triples of
/// distinct indices in `1..=7` (sign change under each adjacent
/// transposition) and that it vanishes exactly on the seven lines.
pub fn check_associator_alternating() -> AlternationReport {
    let alg = build_octonion(Rat::from(-1));
    let con = OctonionConstants::new();
    let mut report = CheckReport::pass("associator-alternation");
    let mut nonvanishing: Vec<[usize; 3]> = Vec::new();

    'scan: for i in 1..8 {
        for j in 1..8 {
            for k in 1..8 {
                if i == j || j == k || i == k {
                    continue;
                }
                let base = alg.associator_basis(i, j, k);
                let swap_left = alg.associator_basis(j, i, k);
                let swap_right = alg.associator_basis(i, k, j);
                let r1 = &base + &swap_left;
                let r2 = &base + &swap_right;
                if !r1.is_zero() {
                    report = CheckReport::fail(
                        "associator-alternation",
                        [i, j, k],
                        r1.into_entries(),
                        [format!("e{i}"), format!("e{j}"), format!("e{k}")],
                        alg.basis_names(),
                    );
                    break 'scan;
                }
                if !r2.is_zero() {
                    report = CheckReport::fail(
                        "associator-alternation",
                        [i, j, k],
                        r2.into_entries(),
                        [format!("e{i}"), format!("e{j}"), format!("e{k}")],
                        alg.basis_names(),
                    );
                    break 'scan;
                }
                // Vanishing pattern: zero exactly on the lines.
                let on_line = con.is_line(i, j, k);
                if base.is_zero() != on_line {
                    report = CheckReport::fail(
                        "associator-vanishing-pattern",
                        [i, j, k],
                        base.into_entries(),
                        [format!("e{i}"), format!("e{j}"), format!("e{k}")],
                        alg.basis_names(),
                    );
                    break 'scan;
                }
                let mut sorted = [i, j, k];
                sorted.sort_unstable();
                if !base.is_zero() && !nonvanishing.contains(&sorted) {
                    nonvanishing.push(sorted);
                }
            }
        }
    }
    nonvanishing.sort_unstable();

    let mut printed: Vec<[usize; 3]> = PRINTED_NONVANISHING_COMBINATIONS
        .iter()
        .map(|&(a, b, c)| {
            let mut t = [a, b, c];
            t.sort_unstable();
            t
        })
        .collect();
    printed.sort_unstable();
    printed.dedup();

    let unlisted: Vec<[usize; 3]> = nonvanishing
        .iter()
        .filter(|t| !printed.contains(t))
        .copied()
        .collect();

    AlternationReport {
        report,
        nonvanishing,
        printed_nonvanishing: printed,
        unlisted_nonvanishing: unlisted,
    }
}

fn check_maps_shape(maps: &[Matrix], vdim: usize, what: &str) -> Result<()> {
    if maps.len() != 8 {
        return Err(Error::shape(
            format!("8 {what} maps"),
            format!("{}", maps.len()),
        ));
    }
    for m in maps {
        if m.dim() != vdim {
            return Err(Error::shape(
                format!("{vdim}x{vdim} {what} map"),
                format!("{0}x{0}", m.dim()),
            ));
        }
    }
    Ok(())
}

fn action_names(vdim: usize) -> Vec<String> {
    (0..vdim).map(|i| format!("v{i}")).collect()
}

/// Checks the three relation families that a pair of unit actions
/// `(l, r)` on a space `V` must satisfy:
///
/// 1. `l_{e0} = id = r_{e0}` and `l_{e_i} = -r_{e_i}` for `i >= 1`;
/// 2. `[r_{e_i}, l_{e_j}] = [r_{e_j}, l_{e_i}]` for all pairs;
/// 3. `delta_ij + l_{e_i} l_{e_j} = c_ijk l_{e_k}` for `i, j >= 1`,
///    the scalar acting as that multiple of the identity on `V`.
pub fn check_octonion_bimodule(l: &[Matrix], r: &[Matrix]) -> Result<CheckReport> {
    let vdim = l.first().map_or(0, Matrix::dim);
    check_maps_shape(l, vdim, "left")?;
    check_maps_shape(r, vdim, "right")?;
    let names = action_names(vdim);
    let id = Matrix::identity(vdim);
    let con = OctonionConstants::new();

    let fail = |name: &str, i: usize, j: usize, diff: &Matrix| -> Option<CheckReport> {
        if diff.is_zero() {
            return None;
        }
        let col = (0..vdim).find(|&c| !diff.col(c).is_zero()).unwrap();
        Some(CheckReport::fail(
            name,
            [i, j, col],
            diff.col(col).into_entries(),
            [format!("e{i}"), format!("e{j}"), format!("v{col}")],
            &names,
        ))
    };

    // Family 1.
    if let Some(rep) = fail("octonion-action-family-1", 0, 0, &(&l[0] - &id)) {
        return Ok(rep);
    }
    if let Some(rep) = fail("octonion-action-family-1", 0, 0, &(&r[0] - &id)) {
        return Ok(rep);
    }
    for i in 1..8 {
        if let Some(rep) = fail("octonion-action-family-1", i, i, &(&l[i] + &r[i])) {
            return Ok(rep);
        }
    }

    // Family 2.
    for i in 0..8 {
        for j in 0..8 {
            let diff = &commutator_mat(&r[i], &l[j]) - &commutator_mat(&r[j], &l[i]);
            if let Some(rep) = fail("octonion-action-family-2", i, j, &diff) {
                return Ok(rep);
            }
        }
    }

    // Family 3.
    for i in 1..8 {
        for j in 1..8 {
            let mut rhs = Matrix::zeros(vdim);
            for k in 1..8 {
                let c = con.c(i, j, k);
                if c != 0 {
                    rhs = &rhs + &l[k].scale(&Rat::from(c));
                }
            }
            let lhs = &id.scale(&Rat::from(OctonionConstants::delta(i, j))) + &(&l[i] * &l[j]);
            if let Some(rep) = fail("octonion-action-family-3", i, j, &(&lhs - &rhs)) {
                return Ok(rep);
            }
        }
    }

    Ok(CheckReport::pass("octonion-action-relations"))
}

#[derive(Clone, Debug)]
pub struct StructureMyungReport {
    /// `[e_k, e_i e_j] = [e_k, e_i] e_j + e_i [e_k, e_j]` over all basis
    /// triples.
    pub bracket_derivation: CheckReport,
    /// `c_ijm c_kml = c_kim c_mjl + c_kjm c_iml` (sum over `m`) over all
    /// index 4-tuples in `1..=7`.
    pub constant_identity: CheckReport,
}

impl StructureMyungReport {
    pub fn agree(&self) -> bool {
        self.bracket_derivation.verdict == self.constant_identity.verdict
    }
}

fn bracket_derivation_residual(alg: &AlgebraRef, i: usize, j: usize, k: usize) -> Vector {
    let x = alg.basis_element(i);
    let y = alg.basis_element(j);
    let z = alg.basis_element(k);
    let lhs = z.commutator(&x.multiply(&y).unwrap()).unwrap();
    let rhs = z
        .commutator(&x)
        .unwrap()
        .multiply(&y)
        .unwrap()
        .add(&x.multiply(&z.commutator(&y).unwrap()).unwrap())
        .unwrap();
    lhs.sub(&rhs).unwrap().coeffs().clone()
}

/// Evaluates both forms of the bracket-derivation law on the octonions
/// and reports each verdict; the equivalence of the two forms is what
/// gets asserted, not any assumed truth value.
pub fn check_structure_constant_myung() -> StructureMyungReport {
    let alg = build_octonion(Rat::from(-1));
    let con = OctonionConstants::new();

    let mut bracket_derivation = CheckReport::pass("bracket-derivation");
    'outer: for i in 0..8 {
        for j in 0..8 {
            for k in 0..8 {
                let residual = bracket_derivation_residual(&alg, i, j, k);
                if !residual.is_zero() {
                    bracket_derivation = CheckReport::fail(
                        "bracket-derivation",
                        [i, j, k],
                        residual.into_entries(),
                        [format!("e{i}"), format!("e{j}"), format!("e{k}")],
                        alg.basis_names(),
                    );
                    break 'outer;
                }
            }
        }
    }

    let mut constant_identity = CheckReport::pass("structure-constant-identity");
    'outer2: for i in 1..8 {
        for j in 1..8 {
            for k in 1..8 {
                for l in 1..8 {
                    let mut lhs = 0i64;
                    let mut rhs = 0i64;
                    for m in 1..8 {
                        lhs += con.c(i, j, m) * con.c(k, m, l);
                        rhs += con.c(k, i, m) * con.c(m, j, l) + con.c(k, j, m) * con.c(i, m, l);
                    }
                    if lhs != rhs {
                        constant_identity = CheckReport {
                            identity: "structure-constant-identity".into(),
                            verdict: false,
                            witness: Some([i, j, k]),
                            residual: Some(vec![Rat::from(lhs - rhs)]),
                            detail: Some(format!(
                                "(i,j,k,l)=({i},{j},{k},{l}): lhs {lhs} != rhs {rhs}"
                            )),
                        };
                        break 'outer2;
                    }
                }
            }
        }
    }

    StructureMyungReport {
        bracket_derivation,
        constant_identity,
    }
}

/// The bracket-derivation law restricted to indices drawn from one line,
/// where the span is an associative subalgebra.
pub fn bracket_derivation_on_line(line: (usize, usize, usize)) -> bool {
    let alg = build_octonion(Rat::from(-1));
    let idx = [line.0, line.1, line.2];
    for &i in &idx {
        for &j in &idx {
            for &k in &idx {
                if !bracket_derivation_residual(&alg, i, j, k).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Quadratic identities satisfied by any action pair that passes
/// [`check_octonion_bimodule`]; the left maps are derived from the right
/// maps by the first relation family, and non-conforming input is
/// rejected rather than checked.
///
/// ```text
/// 2 delta_ij + c_ijk r_{e_k} + 2 r_{e_j} r_{e_i} = 0
/// 2 delta_ij - c_ijk l_{e_k} + 2 l_{e_j} l_{e_i} = 0
/// ```
///
/// for all `i, j` in `1..=7`.
pub fn check_action_quadratic_identities(r: &[Matrix]) -> Result<CheckReport> {
    let vdim = r.first().map_or(0, Matrix::dim);
    check_maps_shape(r, vdim, "right")?;
    let id = Matrix::identity(vdim);
    let mut l: Vec<Matrix> = Vec::with_capacity(8);
    l.push(id.clone());
    for m in &r[1..] {
        l.push(-m);
    }
    let gate = check_octonion_bimodule(&l, r)?;
    if !gate.verdict {
        return Err(Error::Unverified(format!(
            "quadratic identities require maps satisfying the action relations; {gate}"
        )));
    }

    let con = OctonionConstants::new();
    let names = action_names(vdim);
    let two = Rat::from(2);
    for i in 1..8 {
        for j in 1..8 {
            let mut c_r = Matrix::zeros(vdim);
            let mut c_l = Matrix::zeros(vdim);
            for k in 1..8 {
                let c = con.c(i, j, k);
                if c != 0 {
                    c_r = &c_r + &r[k].scale(&Rat::from(c));
                    c_l = &c_l + &l[k].scale(&Rat::from(c));
                }
            }
            let delta2 = id.scale(&(&two * &Rat::from(OctonionConstants::delta(i, j))));
            let res_r = &(&delta2 + &c_r) + &(&r[j] * &r[i]).scale(&two);
            let res_l = &(&delta2 - &c_l) + &(&l[j] * &l[i]).scale(&two);
            for (name, res) in [("action-quadratic-r", res_r), ("action-quadratic-l", res_l)] {
                if !res.is_zero() {
                    let col = (0..vdim).find(|&c| !res.col(c).is_zero()).unwrap();
                    return Ok(CheckReport::fail(
                        name,
                        [i, j, col],
                        res.col(col).into_entries(),
                        [format!("e{i}"), format!("e{j}"), format!("v{col}")],
                        &names,
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass("action-quadratic-identities"))
}

/// Outcome of the bounded search for nonzero-dimensional action pairs
/// satisfying the three relation families. Emptiness is data, not a
/// failure.
#[derive(Clone, Debug)]
pub struct ActionSearchOutcome {
    pub max_vdim: usize,
    pub candidates_tried: u64,
    pub found: Vec<(usize, Vec<Matrix>)>,
}

/// Randomized plus structured search over right-map families with the
/// left maps derived from them; `vdim` ranges over `1..=max_vdim`.
pub fn search_compatible_actions(
    max_vdim: usize,
    trials_per_dim: u64,
    seed: u64,
) -> ActionSearchOutcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let pool = [
        Rat::from(-1),
        Rat::zero(),
        Rat::one(),
        Rat::new(1, 2),
        Rat::new(-1, 2),
    ];
    let mut tried = 0u64;
    let mut found = Vec::new();

    for vdim in 1..=max_vdim {
        let id = Matrix::identity(vdim);
        // Structured family: scalar right maps r_i = a_i * id.
        for _ in 0..trials_per_dim / 2 {
            tried += 1;
            let mut r = vec![id.clone()];
            for _ in 1..8 {
                let a = pool[rng.random_range(0..pool.len())].clone();
                r.push(id.scale(&a));
            }
            if try_candidate(&r, vdim, &mut found) {
                continue;
            }
        }
        // Random dense right maps.
        for _ in 0..trials_per_dim - trials_per_dim / 2 {
            tried += 1;
            let mut r = vec![id.clone()];
            for _ in 1..8 {
                let mut m = Matrix::zeros(vdim);
                for row in 0..vdim {
                    for colv in 0..vdim {
                        m.set(row, colv, pool[rng.random_range(0..pool.len())].clone());
                    }
                }
                r.push(m);
            }
            try_candidate(&r, vdim, &mut found);
        }
    }

    ActionSearchOutcome {
        max_vdim,
        candidates_tried: tried,
        found,
    }
}

fn try_candidate(r: &[Matrix], vdim: usize, found: &mut Vec<(usize, Vec<Matrix>)>) -> bool {
    let mut l = vec![Matrix::identity(vdim)];
    for m in &r[1..] {
        l.push(-m);
    }
    match check_octonion_bimodule(&l, r) {
        Ok(rep) if rep.verdict => {
            found.push((vdim, r.to_vec()));
            true
        }
        _ => false,
    }
}
