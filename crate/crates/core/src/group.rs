//! Traits shared by the concrete group models.

use std::cmp::Ordering;
use std::fmt::Debug;

use crate::series::Coefficient;

/// A group element that knows its own identity, so terms can be evaluated
/// without a separate group context.
pub trait GroupElement: Clone + PartialEq + Debug {
    fn op(&self, rhs: &Self) -> Self;
    fn inv(&self) -> Self;
    fn identity_like(&self) -> Self;

    fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `self^q`, or `None` if the group has no such power.
    fn pow_rational(&self, q: &Coefficient) -> Option<Self>;

    fn commutator(&self, rhs: &Self) -> Self {
        self.inv().op(&rhs.inv()).op(self).op(rhs)
    }
}

/// An element of a valued group whose value set is a set of positive
/// integers ordered by `>`: a larger rank means a smaller valuation.
pub trait ValuedElement: GroupElement {
    type Residue: Clone + PartialEq + Debug;

    /// `None` for the identity.
    fn rank(&self) -> Option<u32>;

    /// `None` for the identity.
    fn residue(&self) -> Option<Self::Residue>;

    fn scale_residue(r: &Self::Residue, q: &Coefficient) -> Self::Residue;

    fn residue_rank(r: &Self::Residue) -> u32;

    /// A canonical element with residue `r`, built in the same ambient group
    /// as `self`.
    fn lift_residue(&self, r: &Self::Residue) -> Self;

    /// Upper bound on the number of residue-cancelling steps before an
    /// element must be the identity.
    fn cancellation_bound(&self) -> usize;

    /// Short text for a residue in reports, e.g. a single coefficient.
    fn residue_text(r: &Self::Residue) -> String;
}

/// Compares two ranks in the value order: `Less` means the first element is
/// strictly dominated by the second. `None` is the identity, below all.
pub fn dominance(a: Option<u32>, b: Option<u32>) -> Ordering {
    match (a, b) {
        (None, None) => Ordering::Equal,
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (Some(x), Some(y)) => y.cmp(&x),
    }
}

/// The same elements under the opposite product `(a, b) ↦ b·a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Reversed<G>(pub G);

impl<G: GroupElement> GroupElement for Reversed<G> {
    fn op(&self, rhs: &Self) -> Self {
        Reversed(rhs.0.op(&self.0))
    }

    fn inv(&self) -> Self {
        Reversed(self.0.inv())
    }

    fn identity_like(&self) -> Self {
        Reversed(self.0.identity_like())
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn pow_rational(&self, q: &Coefficient) -> Option<Self> {
        self.0.pow_rational(q).map(Reversed)
    }
}

impl<G: ValuedElement> ValuedElement for Reversed<G> {
    type Residue = G::Residue;

    fn rank(&self) -> Option<u32> {
        self.0.rank()
    }

    fn residue(&self) -> Option<Self::Residue> {
        self.0.residue()
    }

    fn scale_residue(r: &Self::Residue, q: &Coefficient) -> Self::Residue {
        G::scale_residue(r, q)
    }

    fn residue_rank(r: &Self::Residue) -> u32 {
        G::residue_rank(r)
    }

    fn lift_residue(&self, r: &Self::Residue) -> Self {
        Reversed(self.0.lift_residue(r))
    }

    fn cancellation_bound(&self) -> usize {
        self.0.cancellation_bound()
    }

    fn residue_text(r: &Self::Residue) -> String {
        G::residue_text(r)
    }
}
