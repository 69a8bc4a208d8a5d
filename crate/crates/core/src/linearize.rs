//! Degree-bounded linearization of elements `(alpha x1 + S(x2), alpha x2)`.
//!
//! With the conjugator normalized to `theta = (x1 + g(x2), x2)`, the equation
//! `theta^-1 target theta = (alpha x1, alpha x2)` reads
//! `alpha g(x2) + S(x2) = g(alpha x2)`, which splits by degree into
//! `g_d (alpha^d - alpha) = S_d`. Degrees with `alpha^(d-1) = 1` are resonant:
//! there `S_d` must vanish. Everything else is solved exactly, and the
//! conjugator exists under a bound `D` iff no forced `g_d` sits above `D`.

use std::fmt;

use crate::arith::RootOfUnity;
use crate::endo::{PlaneEndo, TriangularAffine};
use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly};
use crate::prufer::{conj_closed_form, CoeffSequence};

/// A target of the form `(alpha x1 + S(x2), alpha x2)` and a bound on `deg g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationProblem {
    target: PlaneEndo,
    degree_bound: u32,
    alpha: RootOfUnity,
    shift: SparsePoly,
}

impl LinearizationProblem {
    pub fn new(target: PlaneEndo, degree_bound: u32) -> Result<Self> {
        if degree_bound < 1 {
            return Err(Error::InvalidArgument(
                "degree bound must be at least 1".into(),
            ));
        }
        let malformed = |why: &str| Error::Malformed(format!("target {target}: {why}"));
        if target.f2.term_count() != 1 || target.f2.involves_x1() {
            return Err(malformed("second component must be alpha*x2"));
        }
        let a = target.f2.coefficient_of(Monomial::new(0, 1));
        if a.is_zero() {
            return Err(malformed("second component must be alpha*x2"));
        }
        // over Q the only roots of unity are 1 and -1, and -1 lives in the 2-tower
        let prime = target.prime().unwrap_or(2);
        let alpha = a
            .as_root_of_unity(prime)
            .ok_or_else(|| malformed("alpha is not a prime-power root of unity"))?;
        if target.f1.coefficient_of(Monomial::new(1, 0)) != a {
            return Err(malformed(
                "x1 coefficient of the first component must equal alpha",
            ));
        }
        let shift = &target.f1 - &SparsePoly::x1().scale(&a);
        if shift.involves_x1() {
            return Err(malformed(
                "first component minus alpha*x1 must involve x2 only",
            ));
        }
        Ok(Self {
            target,
            degree_bound,
            alpha,
            shift,
        })
    }

    pub fn target(&self) -> &PlaneEndo {
        &self.target
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn alpha(&self) -> &RootOfUnity {
        &self.alpha
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// `alpha^(d-1) = 1` while `S_d != 0`: no conjugator of this shape exists
    /// under any bound. `degree` is the least such `d`.
    Resonant { degree: u32 },
    /// The forced `g` has degree `required`, above the bound; `first_exceeding`
    /// is the least degree above the bound with a nonzero forced coefficient.
    DegreeBound { required: u32, first_exceeding: u32 },
}

impl Obstruction {
    /// The degree reported to callers: the resonant degree, or the degree the
    /// conjugator would need.
    pub fn degree(&self) -> u32 {
        match *self {
            Obstruction::Resonant { degree } => degree,
            Obstruction::DegreeBound { required, .. } => required,
        }
    }
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::Resonant { degree } => {
                write!(f, "resonant term at degree {degree}")
            }
            Obstruction::DegreeBound {
                required,
                first_exceeding,
            } => write!(
                f,
                "forced conjugator degree {required}, first excess at degree {first_exceeding}"
            ),
        }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearizationResult {
    Found {
        theta: TriangularAffine,
        h: PlaneEndo,
    },
    Obstructed(Obstruction),
}

impl LinearizationResult {
    pub fn is_found(&self) -> bool {
        matches!(self, LinearizationResult::Found { .. })
    }
}

/// Solve for `theta = (x1 + g(x2), x2)` with `deg g <= D` and
/// `theta^-1 target theta = (alpha x1, alpha x2)`.
pub fn solve_linearization(prob: &LinearizationProblem) -> Result<LinearizationResult> {
    let alpha = &prob.alpha;
    let a = alpha.to_field();
    let mut g_terms = Vec::new();
    for (m, s_d) in prob.shift.terms() {
        let d = m.deg_x2;
        let denom = &alpha.pow(d as u64).to_field() - &a;
        if denom.is_zero() {
            return Ok(LinearizationResult::Obstructed(Obstruction::Resonant {
                degree: d,
            }));
        }
        g_terms.push((*m, s_d.checked_div(&denom)?));
    }
    // terms are in ascending degree, so the last one is the top
    if let Some((top, _)) = g_terms.last() {
        if top.deg_x2 > prob.degree_bound {
            let first_exceeding = g_terms
                .iter()
                .map(|(m, _)| m.deg_x2)
                .find(|&d| d > prob.degree_bound)
                .unwrap();
            return Ok(LinearizationResult::Obstructed(Obstruction::DegreeBound {
                required: top.deg_x2,
                first_exceeding,
            }));
        }
    }
    let theta = TriangularAffine::shift(SparsePoly::from_terms(g_terms));
    let h = PlaneEndo::diagonal(&a, &a);
    if prob.target.conjugate(&theta) != h {
        return Err(Error::Internal(format!(
            "conjugator {theta} does not diagonalize {}",
            prob.target
        )));
    }
    Ok(LinearizationResult::Found { theta, h })
}

/// Least `D <= d_max` for which the conjugate `a^-1 diag(alpha) a` has a
/// triangular linearizer of degree at most `D`.
pub fn minimal_linearizer_degree(
    s: &CoeffSequence,
    alpha: &RootOfUnity,
    d_max: u32,
) -> Result<Option<u32>> {
    let target = conj_closed_form(s, alpha);
    for bound in 1..=d_max {
        let prob = LinearizationProblem::new(target.clone(), bound)?;
        if solve_linearization(&prob)?.is_found() {
            return Ok(Some(bound));
        }
    }
    Ok(None)
}
