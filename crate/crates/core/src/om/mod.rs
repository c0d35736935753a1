//! Representation-independent oriented-matroid vocabulary: signed circuits,
//! bases, anchors and the oracle interface every representation implements.

mod axioms;
mod sequence;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

pub use axioms::{validate_circuit_axioms, Axiom, AxiomReport, AxiomWitness};
pub use sequence::{
    verify_exchange_sequence, Exchange, ExchangeSequence, FailureKind, SequenceFailure,
    VerificationReport,
};

/// Index of an element of the ground set. Ids are dense in `0..ground_size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementId(pub usize);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for ElementId {
    fn from(id: usize) -> Self {
        ElementId(id)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type VertexId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OmError {
    #[error("anchor element {0} belongs to the basis")]
    AnchorInBasis(ElementId),
    #[error("anchor is not spanned by the basis")]
    AnchorNotSpanned,
    #[error("the given set is not a basis")]
    NotABasis,
    #[error("anchor is not valid for this oriented matroid")]
    InvalidAnchor,
    #[error("element {element} is outside the ground set of size {ground_size}")]
    ElementOutOfRange {
        element: ElementId,
        ground_size: usize,
    },
    #[error("malformed signed circuit: {0}")]
    MalformedCircuit(String),
}

/// A signed circuit `(C+, C-)`.
///
/// The fields are public so that malformed lists can be handed to
/// [`validate_circuit_axioms`]; [`SignedCircuit::new`] enforces the
/// invariants (disjoint parts, nonempty support).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedCircuit {
    pub positive: BTreeSet<ElementId>,
    pub negative: BTreeSet<ElementId>,
}

impl SignedCircuit {
    pub fn new(
        positive: impl IntoIterator<Item = ElementId>,
        negative: impl IntoIterator<Item = ElementId>,
    ) -> Result<Self, OmError> {
        let circuit = SignedCircuit {
            positive: positive.into_iter().collect(),
            negative: negative.into_iter().collect(),
        };
        if !circuit.is_well_formed() {
            return Err(OmError::MalformedCircuit(circuit.to_string()));
        }
        Ok(circuit)
    }

    /// Convenience constructor from raw indices; panics on malformed input.
    pub fn from_indices(positive: &[usize], negative: &[usize]) -> Self {
        Self::new(
            positive.iter().copied().map(ElementId),
            negative.iter().copied().map(ElementId),
        )
        .expect("malformed circuit literal")
    }

    pub fn is_well_formed(&self) -> bool {
        !(self.positive.is_empty() && self.negative.is_empty())
            && self.positive.is_disjoint(&self.negative)
    }

    pub fn negated(&self) -> Self {
        SignedCircuit {
            positive: self.negative.clone(),
            negative: self.positive.clone(),
        }
    }

    pub fn support(&self) -> BTreeSet<ElementId> {
        self.positive.union(&self.negative).copied().collect()
    }

    pub fn len(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positive.is_empty() && self.negative.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.positive.contains(&e) || self.negative.contains(&e)
    }

    pub fn sign(&self, e: ElementId) -> Option<Sign> {
        if self.positive.contains(&e) {
            Some(Sign::Positive)
        } else if self.negative.contains(&e) {
            Some(Sign::Negative)
        } else {
            None
        }
    }

    /// The lexicographically smaller of `C` and `-C`.
    pub fn canonical(&self) -> Self {
        let neg = self.negated();
        if neg < *self {
            neg
        } else {
            self.clone()
        }
    }

    /// The orientation in which `e` is negative (unchanged if `e` is absent).
    pub fn oriented_negative(&self, e: ElementId) -> Self {
        if self.positive.contains(&e) {
            self.negated()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for SignedCircuit {
    /// Same shape as a line of the explicit-OM text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("+")?;
        for e in &self.positive {
            write!(f, " {e}")?;
        }
        f.write_str(" ; -")?;
        for e in &self.negative {
            write!(f, " {e}")?;
        }
        Ok(())
    }
}

/// A set of elements kept sorted and duplicate-free, so that equality of
/// bases is plain slice equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisSet(Vec<ElementId>);

impl BasisSet {
    pub fn new(elements: impl IntoIterator<Item = ElementId>) -> Self {
        let mut v: Vec<ElementId> = elements.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        BasisSet(v)
    }

    pub fn from_indices(ids: &[usize]) -> Self {
        Self::new(ids.iter().copied().map(ElementId))
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    /// `self - remove + add`, or `None` unless `remove` is a member and `add`
    /// is not.
    pub fn exchange(&self, remove: ElementId, add: ElementId) -> Option<BasisSet> {
        let pos = self.0.binary_search(&remove).ok()?;
        if self.contains(add) {
            return None;
        }
        let mut v = self.0.clone();
        v.remove(pos);
        let at = v.binary_search(&add).unwrap_err();
        v.insert(at, add);
        Some(BasisSet(v))
    }

    pub fn intersection_len(&self, other: &BasisSet) -> usize {
        self.0.iter().filter(|e| other.contains(**e)).count()
    }

    /// Elements of `self` not in `other`, ascending.
    pub fn difference(&self, other: &BasisSet) -> Vec<ElementId> {
        self.0.iter().copied().filter(|e| !other.contains(*e)).collect()
    }

    pub fn union(&self, other: &BasisSet) -> BasisSet {
        BasisSet::new(self.iter().chain(other.iter()))
    }
}

impl fmt::Display for BasisSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromIterator<ElementId> for BasisSet {
    fn from_iter<I: IntoIterator<Item = ElementId>>(iter: I) -> Self {
        BasisSet::new(iter)
    }
}

/// The element an embracing basis is measured against.
///
/// The vertex-pair form is specific to graphic oriented matroids: a tree is
/// `st`-embracing when its `s`–`t` path is directed, whether or not `st` is
/// an arc of the digraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Anchor {
    Element(ElementId),
    Vertices { source: VertexId, target: VertexId },
}

impl Anchor {
    pub fn element(&self) -> Option<ElementId> {
        match *self {
            Anchor::Element(e) => Some(e),
            Anchor::Vertices { .. } => None,
        }
    }
}

/// Oracle answering basis tests and anchored fundamental circuits for one
/// representation of an oriented matroid.
pub trait OrientedMatroid {
    fn ground_size(&self) -> usize;

    fn rank(&self) -> usize;

    fn is_basis(&self, basis: &BasisSet) -> bool;

    /// The unique circuit in `basis + anchor`, oriented so that the anchor is
    /// negative. For a vertex-pair anchor the virtual anchor arc is omitted
    /// from the returned circuit.
    fn anchored_fundamental_circuit(
        &self,
        basis: &BasisSet,
        anchor: &Anchor,
    ) -> Result<SignedCircuit, OmError>;

    /// Whether `basis` is embracing for `anchor`. Representations may
    /// override this with a faster route that agrees with [`is_embracing`].
    fn is_embracing(&self, basis: &BasisSet, anchor: &Anchor) -> Result<bool, OmError> {
        is_embracing(self, basis, anchor)
    }
}

impl<T: OrientedMatroid + ?Sized> OrientedMatroid for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn rank(&self) -> usize {
        (**self).rank()
    }
    fn is_basis(&self, basis: &BasisSet) -> bool {
        (**self).is_basis(basis)
    }
    fn anchored_fundamental_circuit(
        &self,
        basis: &BasisSet,
        anchor: &Anchor,
    ) -> Result<SignedCircuit, OmError> {
        (**self).anchored_fundamental_circuit(basis, anchor)
    }
    fn is_embracing(&self, basis: &BasisSet, anchor: &Anchor) -> Result<bool, OmError> {
        (**self).is_embracing(basis, anchor)
    }
}

/// A basis is embracing when every element of its anchored fundamental
/// circuit other than the anchor is positive.
pub fn is_embracing<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    basis: &BasisSet,
    anchor: &Anchor,
) -> Result<bool, OmError> {
    if let Some(e) = anchor.element() {
        if e.index() >= oracle.ground_size() {
            return Err(OmError::ElementOutOfRange {
                element: e,
                ground_size: oracle.ground_size(),
            });
        }
        if basis.contains(e) {
            return Err(OmError::AnchorInBasis(e));
        }
    }
    if !oracle.is_basis(basis) {
        return Err(OmError::NotABasis);
    }
    let circuit = oracle.anchored_fundamental_circuit(basis, anchor)?;
    Ok(match anchor.element() {
        Some(e) => circuit.negative.len() == 1 && circuit.negative.contains(&e),
        None => circuit.negative.is_empty(),
    })
}

/// Every signed circuit of the oriented matroid (both orientations),
/// collected as anchored fundamental circuits over all bases.
///
/// Exhaustive over `rank`-subsets of the ground set; meant for small ground
/// sets only.
pub fn circuits_via_oracle<O: OrientedMatroid + ?Sized>(oracle: &O) -> Vec<SignedCircuit> {
    let n = oracle.ground_size();
    let r = oracle.rank();
    let mut found = BTreeSet::new();
    for_each_subset(n, r, |subset| {
        let basis = BasisSet::from_indices(subset);
        if !oracle.is_basis(&basis) {
            return;
        }
        for e in (0..n).map(ElementId) {
            if basis.contains(e) {
                continue;
            }
            if let Ok(c) = oracle.anchored_fundamental_circuit(&basis, &Anchor::Element(e)) {
                found.insert(c.negated());
                found.insert(c);
            }
        }
    });
    found.into_iter().collect()
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_picks_smaller_orientation() {
        let c = SignedCircuit::from_indices(&[2], &[0, 1]);
        let canon = c.canonical();
        assert_eq!(canon, c.negated().canonical());
        assert!(canon <= c && canon <= c.negated());
    }

    #[test]
    fn malformed_circuits_are_rejected() {
        assert!(SignedCircuit::new([], []).is_err());
        assert!(SignedCircuit::new([ElementId(1)], [ElementId(1)]).is_err());
    }

    #[test]
    fn basis_exchange_keeps_sorted_order() {
        let b = BasisSet::from_indices(&[4, 1, 3]);
        assert_eq!(b.elements(), &[ElementId(1), ElementId(3), ElementId(4)]);
        let x = b.exchange(ElementId(4), ElementId(0)).unwrap();
        assert_eq!(x, BasisSet::from_indices(&[0, 1, 3]));
        assert!(b.exchange(ElementId(2), ElementId(0)).is_none());
        assert!(b.exchange(ElementId(1), ElementId(3)).is_none());
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut count = 0;
        for_each_subset(6, 3, |_| count += 1);
        assert_eq!(count, 20);
        let mut empty = 0;
        for_each_subset(4, 0, |s| {
            assert!(s.is_empty());
            empty += 1
        });
        assert_eq!(empty, 1);
        let mut none = 0;
        for_each_subset(2, 3, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn circuit_display_matches_text_format() {
        let c = SignedCircuit::from_indices(&[0, 3], &[2]);
        assert_eq!(c.to_string(), "+ 0 3 ; - 2");
    }
}
