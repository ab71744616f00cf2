//! Exact Newton-Puiseux expansion of plane-curve branches at a singular
//! point, and the per-point singularity invariants computed from it.
//!
//! A branch is a primitive parametrization t ↦ (t^s, w(t)) with w an exact
//! truncated series over an algebraic extension tower of Q.  Galois-conjugate
//! branches over the coefficient field are returned once, with a conjugacy
//! count; all invariant formulas weight by that count.

pub mod bipoly;
pub mod expand;
pub mod invariants;
pub mod newton;
pub mod series;

pub use bipoly::BiPoly;
pub use expand::{puiseux_expand, puiseux_expand_in, ExpandOptions};
pub use invariants::{
    conductor_exponent, delta_invariant, intersection_multiplicity, mult_prime,
    multiplicity_branches, multiplicity_initial_form, SingularityInvariants,
};
pub use newton::{newton_polygon, NewtonEdge, NewtonPolygon};
pub use series::{render_series, Series};

use crate::exact::SharedTower;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PuiseuxError {
    #[error("the zero polynomial does not define a curve")]
    ZeroPolynomial,
    #[error("the origin is not on the curve: f(0,0) != 0")]
    NotOnCurve,
    #[error("curve equation is not squarefree (it shares a factor with its w-derivative)")]
    NotSquarefree,
    #[error("w divides f: the axis {{w = 0}} is a component; apply a coordinate change such as w -> w + c*z")]
    WAxisComponent,
    #[error("z divides f: the axis {{z = 0}} is a component; apply a coordinate change such as z -> z + c*w")]
    ZAxisComponent,
    #[error("truncation order {truncation} is smaller than the ramification index {ramification}")]
    TruncationTooSmall {
        ramification: u32,
        truncation: usize,
    },
    #[error("indeterminate at this truncation (order {prec}); retry with a larger truncation")]
    Indeterminate { prec: usize },
    #[error("exact factorization failed for {0}")]
    Factorization(String),
    #[error("branches live in incompatible coefficient towers")]
    IncompatibleTowers,
    #[error("operation requires at least one branch")]
    EmptyBranchList,
    #[error("conductor exponent is only computed for unibranch points; supply eta for multibranch points")]
    MultiBranch,
    #[error("branches are equal as parametrized germs")]
    EqualGerms,
}

/// One local analytic branch of a curve at a singular point:
/// the primitive Puiseux parametrization t ↦ (t^s, w(t)).
#[derive(Clone, Debug)]
pub struct PuiseuxBranch {
    ramification: u32,
    series: Series,
    conjugacy_count: u32,
    tower: SharedTower,
    tangent_aligned: bool,
    defining: Option<BiPoly>,
}

impl PuiseuxBranch {
    /// Build a branch by hand (used in tests and for declared curve data).
    /// Checks the primitivity invariant gcd(s, exponents) = 1 as far as the
    /// series is known, and that w vanishes at the origin.
    pub fn new(
        ramification: u32,
        series: Series,
        tower: SharedTower,
    ) -> Result<Self, PuiseuxError> {
        assert!(ramification >= 1);
        if !series.coeff(0).is_zero() {
            return Err(PuiseuxError::NotOnCurve);
        }
        let mut g = ramification;
        for k in series.support() {
            g = gcd(g, k as u32);
        }
        if series.is_exact() && g != 1 {
            return Err(PuiseuxError::Factorization(format!(
                "non-primitive parametrization: gcd(s, exponents) = {}",
                g
            )));
        }
        Ok(PuiseuxBranch {
            ramification,
            series,
            conjugacy_count: 1,
            tower,
            tangent_aligned: false,
            defining: None,
        })
    }

    pub fn with_count(mut self, count: u32) -> Self {
        self.conjugacy_count = count;
        self
    }

    pub(crate) fn with_defining(mut self, f: BiPoly) -> Self {
        self.defining = Some(f);
        self
    }

    /// Ramification index s: number of sheets of the z-projection.
    pub fn ramification(&self) -> u32 {
        self.ramification
    }

    /// The series w(t).
    pub fn series(&self) -> &Series {
        &self.series
    }

    /// Number of Galois-conjugate branches this object represents.
    pub fn conjugacy_count(&self) -> u32 {
        self.conjugacy_count
    }

    pub fn tower(&self) -> &SharedTower {
        &self.tower
    }

    pub fn tangent_aligned(&self) -> bool {
        self.tangent_aligned
    }

    /// The local equation this branch was expanded from, if any.
    pub fn defining(&self) -> Option<&BiPoly> {
        self.defining.as_ref()
    }

    /// Truncation order: exponents below this are known.
    pub fn truncation_order(&self) -> usize {
        self.series.prec()
    }

    /// Multiplicity of the branch germ: min(s, ord_t w).
    pub fn multiplicity(&self) -> u32 {
        match self.series.order() {
            Ok(Some(k)) => self.ramification.min(k as u32),
            Ok(None) => self.ramification,
            Err(_) => self.ramification, // order beyond truncation exceeds s
        }
    }

    /// Renders the parametrization, e.g. `(t^2, t^3 + t^4)`.
    pub fn render(&self) -> String {
        let z = if self.ramification == 1 {
            "t".to_string()
        } else {
            format!("t^{}", self.ramification)
        };
        format!(
            "({}, {})",
            z,
            series::render_series(&self.tower, &self.series, "t")
        )
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::fmt::Display for PuiseuxBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())?;
        if self.conjugacy_count > 1 {
            write!(f, " [x{} conjugates]", self.conjugacy_count)?;
        }
        Ok(())
    }
}
