//! Evaluation of virtual Poincaré series for scenario-described sets
//! with a finite group action.
//!
//! A set is described as an expression tree whose leaves are explicit
//! cell complexes and whose inner nodes encode how the set is assembled:
//! differences and disjoint unions (the series is additive over both),
//! affine factors (multiplication by a power of `u`), trivially-acted
//! pieces (product with the group's homology series), and free quotients
//! (the series of the quotient space). The engine trusts the author's
//! decomposition — whether a declared piece really is an equivariant
//! subset, or a leaf really models a compact nonsingular set, is a
//! semantic claim about the modelled geometry that is not decidable
//! here. Additivity plus the leaf rule determines the value uniquely.

use crate::complex::{CwComplex, GCwComplex};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homology::{equivariant_homology_dims, group_homology_dims, ResolutionChoice};
use crate::series::TruncSeries;

/// Expression describing a set built from cell-complex pieces.
#[derive(Clone, Debug)]
pub enum SetExpr {
    /// Compact nonsingular piece: contributes its equivariant homology
    /// dimensions directly.
    CompactNonsingular(GCwComplex),
    /// `whole` minus an equivariant subset.
    Difference(Box<SetExpr>, Box<SetExpr>),
    /// Disjoint union of finitely many pieces (empty set when empty).
    DisjointUnion(Vec<SetExpr>),
    /// `base x R^d` with an orthogonal action on the affine factor.
    AffineFactor(Box<SetExpr>, usize),
    /// A compact nonsingular set the group does not move; only its
    /// non-equivariant homology matters.
    TrivialAction(CwComplex),
    /// A piece with a cell-free action, contributing the series of its
    /// quotient space.
    FreeQuotient(GCwComplex),
}

impl SetExpr {
    /// Convenience constructor for `Difference`.
    #[must_use]
    pub fn minus(self, sub: SetExpr) -> SetExpr {
        SetExpr::Difference(Box::new(self), Box::new(sub))
    }

    /// Convenience constructor for `AffineFactor`.
    #[must_use]
    pub fn times_affine(self, d: usize) -> SetExpr {
        SetExpr::AffineFactor(Box::new(self), d)
    }
}

/// Evaluates the series of an expression over `group`, truncated at
/// `cutoff`. Every leaf with its own action must carry exactly this
/// group.
pub fn evaluate(
    expr: &SetExpr,
    group: &FiniteGroup,
    cutoff: usize,
    choice: ResolutionChoice,
) -> Result<TruncSeries> {
    match expr {
        SetExpr::CompactNonsingular(x) => {
            check_group(x, group, "compact nonsingular leaf")?;
            Ok(TruncSeries::from_dims(
                cutoff,
                &equivariant_homology_dims(x, cutoff, choice)?,
            ))
        }
        SetExpr::Difference(whole, sub) => {
            Ok(&evaluate(whole, group, cutoff, choice)? - &evaluate(sub, group, cutoff, choice)?)
        }
        SetExpr::DisjointUnion(parts) => {
            let mut total = TruncSeries::zero(cutoff);
            for part in parts {
                total = &total + &evaluate(part, group, cutoff, choice)?;
            }
            Ok(total)
        }
        SetExpr::AffineFactor(base, d) => {
            Ok(evaluate(base, group, cutoff, choice)?.shift(*d))
        }
        SetExpr::TrivialAction(y) => {
            let poincare = TruncSeries::from_dims(cutoff, &y.homology_dims());
            let group_series = TruncSeries::from_dims(cutoff, &group_homology_dims(group, cutoff)?);
            Ok(&poincare * &group_series)
        }
        SetExpr::FreeQuotient(x) => {
            check_group(x, group, "free quotient leaf")?;
            Ok(TruncSeries::from_dims(
                cutoff,
                &x.quotient_free()?.homology_dims(),
            ))
        }
    }
}

/// Evaluates over the trivial group, where the series is the classical
/// virtual Poincaré polynomial.
pub fn evaluate_nonequivariant(expr: &SetExpr, cutoff: usize) -> Result<TruncSeries> {
    evaluate(expr, &FiniteGroup::trivial(), cutoff, ResolutionChoice::Auto)
}

fn check_group(x: &GCwComplex, group: &FiniteGroup, context: &'static str) -> Result<()> {
    if x.group() != group {
        return Err(Error::GroupMismatch { context });
    }
    Ok(())
}
