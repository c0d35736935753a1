use std::fmt;

use super::{is_embracing, Anchor, BasisSet, ElementId, OrientedMatroid};

/// One exchange step: `remove` leaves the basis and `add` enters it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exchange {
    pub remove: ElementId,
    pub add: ElementId,
}

impl Exchange {
    pub fn new(remove: impl Into<ElementId>, add: impl Into<ElementId>) -> Self {
        Exchange {
            remove: remove.into(),
            add: add.into(),
        }
    }
}

impl fmt::Display for Exchange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "- {} + {}", self.remove, self.add)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeSequence {
    pub start: BasisSet,
    pub steps: Vec<Exchange>,
}

impl ExchangeSequence {
    pub fn new(start: BasisSet, steps: Vec<Exchange>) -> Self {
        ExchangeSequence { start, steps }
    }

    pub fn empty(start: BasisSet) -> Self {
        ExchangeSequence {
            start,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The sets `T_0, T_1, ...` obtained by replaying the steps. Stops early
    /// at the first step that does not remove a member or adds a member.
    pub fn bases(&self) -> Vec<BasisSet> {
        let mut out = vec![self.start.clone()];
        for step in &self.steps {
            let current = out.last().expect("nonempty");
            match current.exchange(step.remove, step.add) {
                Some(next) => out.push(next),
                None => break,
            }
        }
        out
    }

    /// The final set, if every step replays.
    pub fn end(&self) -> Option<BasisSet> {
        let bases = self.bases();
        (bases.len() == self.steps.len() + 1).then(|| bases.into_iter().last().unwrap())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureKind {
    StartMismatch,
    RemovedNotMember(ElementId),
    AddedAlreadyMember(ElementId),
    AddedAnchor(ElementId),
    NotABasis,
    NotEmbracing,
    EndMismatch,
}

/// The first violated step. Step 0 refers to the start basis; step `i`
/// refers to the basis obtained after the `i`-th exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceFailure {
    pub step: usize,
    pub kind: FailureKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub length: usize,
    pub failure: Option<SequenceFailure>,
    /// `|T_i ∩ B|` never decreases. Only set for valid sequences.
    pub monotone: bool,
    /// The length equals `|A \ B|`. Only set for valid sequences.
    pub strictly_monotone: bool,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays `seq` and checks that every intermediate set is an embracing
/// basis and that it ends at `target`.
pub fn verify_exchange_sequence<O: OrientedMatroid + ?Sized>(
    oracle: &O,
    anchor: &Anchor,
    start: &BasisSet,
    target: &BasisSet,
    seq: &ExchangeSequence,
) -> VerificationReport {
    let length = seq.len();
    let fail = |step, kind| VerificationReport {
        length,
        failure: Some(SequenceFailure { step, kind }),
        monotone: false,
        strictly_monotone: false,
    };
    let embracing = |basis: &BasisSet| {
        oracle.is_basis(basis) && matches!(is_embracing(oracle, basis, anchor), Ok(true))
    };

    if seq.start != *start {
        return fail(0, FailureKind::StartMismatch);
    }
    if !oracle.is_basis(start) {
        return fail(0, FailureKind::NotABasis);
    }
    if !embracing(start) {
        return fail(0, FailureKind::NotEmbracing);
    }

    let mut current = start.clone();
    let mut overlap = current.intersection_len(target);
    let mut monotone = true;
    for (i, step) in seq.steps.iter().enumerate() {
        let index = i + 1;
        if !current.contains(step.remove) {
            return fail(index, FailureKind::RemovedNotMember(step.remove));
        }
        if current.contains(step.add) {
            return fail(index, FailureKind::AddedAlreadyMember(step.add));
        }
        if anchor.element() == Some(step.add) {
            return fail(index, FailureKind::AddedAnchor(step.add));
        }
        let next = current
            .exchange(step.remove, step.add)
            .expect("membership checked above");
        if !oracle.is_basis(&next) {
            return fail(index, FailureKind::NotABasis);
        }
        if !embracing(&next) {
            return fail(index, FailureKind::NotEmbracing);
        }
        let next_overlap = next.intersection_len(target);
        monotone &= next_overlap >= overlap;
        overlap = next_overlap;
        current = next;
    }
    if current != *target {
        return fail(length, FailureKind::EndMismatch);
    }
    VerificationReport {
        length,
        failure: None,
        monotone,
        strictly_monotone: length == start.difference(target).len(),
    }
}
