//! Verdict reporting for identity checkers.

use std::fmt;

use crate::linalg::pretty_combination;
use crate::rational::Rat;

/// Outcome of one identity check.
///
/// Checkers scan basis tuples in lexicographic order, so a failing report
/// always carries the first counterexample: the basis indices in `witness`
/// and the nonzero residual (left side minus right side) in `residual`.
#[derive(Clone, Debug)]
pub struct CheckReport {
    /// Name of the identity that was checked, or of the sub-identity that
    /// failed (for example `bimodule-condition-2`).
    pub identity: String,
    pub verdict: bool,
    /// Basis indices of the first counterexample. Checks quantified over
    /// pairs use the third slot for the coordinate where the operator
    /// identity fails.
    pub witness: Option<[usize; 3]>,
    /// Residual coefficients in the space where the identity lives.
    pub residual: Option<Vec<Rat>>,
    /// Human-readable witness and residual.
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn pass(identity: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            verdict: true,
            witness: None,
            residual: None,
            detail: None,
        }
    }

    pub fn fail(
        identity: impl Into<String>,
        witness: [usize; 3],
        residual: Vec<Rat>,
        witness_labels: [String; 3],
        residual_names: &[String],
    ) -> Self {
        let detail = format!(
            "({},{},{}) residual {}",
            witness_labels[0],
            witness_labels[1],
            witness_labels[2],
            pretty_combination(&residual, residual_names),
        );
        CheckReport {
            identity: identity.into(),
            verdict: false,
            witness: Some(witness),
            residual: Some(residual),
            detail: Some(detail),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.verdict {
            write!(f, "{}: ok", self.identity)
        } else {
            match &self.detail {
                Some(d) => write!(f, "{}: FAILED at {}", self.identity, d),
                None => write!(f, "{}: FAILED", self.identity),
            }
        }
    }
}

/// Report for the three-way equivalence checker: the bracket derivation
/// identity, the half-difference derivation identity, and the Jacobi
/// identity of the commutator. The equivalence claim itself is recorded
/// by `all_agree`, never assumed.
#[derive(Clone, Debug)]
pub struct MyungReport {
    pub q_derivation: CheckReport,
    pub star_derivation: CheckReport,
    pub jacobi: CheckReport,
}

impl MyungReport {
    pub fn verdicts(&self) -> [bool; 3] {
        [
            self.q_derivation.verdict,
            self.star_derivation.verdict,
            self.jacobi.verdict,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let [a, b, c] = self.verdicts();
        a == b && b == c
    }
}
