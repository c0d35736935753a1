//! Exhaustive checker for the signed-circuit axioms.

use std::collections::HashSet;
use std::fmt;

use super::{ElementId, SignedCircuit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Ids in range and disjoint positive/negative parts.
    WellFormed,
    /// (C1) the empty set is not a circuit.
    Nontriviality,
    /// (C2) closure under negation.
    Symmetry,
    /// (C3) supports are incomparable unless equal up to sign.
    Incomparability,
    /// (C4) circuit elimination.
    Elimination,
}

impl Axiom {
    pub const ALL: [Axiom; 5] = [
        Axiom::WellFormed,
        Axiom::Nontriviality,
        Axiom::Symmetry,
        Axiom::Incomparability,
        Axiom::Elimination,
    ];
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::WellFormed => "well-formed",
            Axiom::Nontriviality => "C1 nontriviality",
            Axiom::Symmetry => "C2 symmetry",
            Axiom::Incomparability => "C3 incomparability",
            Axiom::Elimination => "C4 elimination",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomWitness {
    Circuit(SignedCircuit),
    Pair(SignedCircuit, SignedCircuit),
    Elimination {
        first: SignedCircuit,
        second: SignedCircuit,
        element: ElementId,
    },
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::Circuit(c) => write!(f, "({c})"),
            AxiomWitness::Pair(a, b) => write!(f, "({a}) and ({b})"),
            AxiomWitness::Elimination {
                first,
                second,
                element,
            } => write!(f, "({first}) and ({second}) at element {element}"),
        }
    }
}

/// Per-axiom outcome; `None` means the axiom holds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub well_formed: Option<AxiomWitness>,
    pub nontriviality: Option<AxiomWitness>,
    pub symmetry: Option<AxiomWitness>,
    pub incomparability: Option<AxiomWitness>,
    pub elimination: Option<AxiomWitness>,
}

impl AxiomReport {
    pub fn witness(&self, axiom: Axiom) -> Option<&AxiomWitness> {
        match axiom {
            Axiom::WellFormed => self.well_formed.as_ref(),
            Axiom::Nontriviality => self.nontriviality.as_ref(),
            Axiom::Symmetry => self.symmetry.as_ref(),
            Axiom::Incomparability => self.incomparability.as_ref(),
            Axiom::Elimination => self.elimination.as_ref(),
        }
    }

    pub fn passes(&self, axiom: Axiom) -> bool {
        self.witness(axiom).is_none()
    }

    pub fn all_pass(&self) -> bool {
        Axiom::ALL.iter().all(|a| self.passes(*a))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axiom in Axiom::ALL {
            match self.witness(axiom) {
                None => writeln!(f, "{axiom}: pass")?,
                Some(w) => writeln!(f, "{axiom}: FAIL {w}")?,
            }
        }
        Ok(())
    }
}

/// Dense bitset over element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn from_ids<'a>(words: usize, ids: impl IntoIterator<Item = &'a ElementId>) -> Self {
        let mut v = vec![0u64; words];
        for e in ids {
            v[e.0 / 64] |= 1 << (e.0 % 64);
        }
        Bits(v)
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn union_without(&self, other: &Bits, e: ElementId) -> Bits {
        let mut v: Vec<u64> = self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect();
        v[e.0 / 64] &= !(1 << (e.0 % 64));
        Bits(v)
    }
}

struct Packed {
    circuit: SignedCircuit,
    pos: Bits,
    neg: Bits,
    support: Bits,
}

/// Checks a list of signed circuits against (C1)–(C4), exhaustively.
///
/// Malformed entries (ids outside `0..ground_size`, overlapping parts) are
/// reported under [`Axiom::WellFormed`] and excluded from the remaining
/// checks. Exact duplicates are collapsed before checking.
pub fn validate_circuit_axioms(circuits: &[SignedCircuit], ground_size: usize) -> AxiomReport {
    let mut report = AxiomReport::default();
    let in_range = |c: &SignedCircuit| {
        c.positive
            .iter()
            .chain(&c.negative)
            .all(|e| e.0 < ground_size)
    };

    let mut seen = HashSet::new();
    let mut usable = Vec::new();
    for c in circuits {
        if !in_range(c) || !c.positive.is_disjoint(&c.negative) {
            report.well_formed.get_or_insert_with(|| AxiomWitness::Circuit(c.clone()));
            continue;
        }
        if c.is_empty() {
            report.nontriviality.get_or_insert_with(|| AxiomWitness::Circuit(c.clone()));
            continue;
        }
        if seen.insert(c.clone()) {
            usable.push(c.clone());
        }
    }

    for c in &usable {
        if !seen.contains(&c.negated()) {
            report.symmetry = Some(AxiomWitness::Circuit(c.clone()));
            break;
        }
    }

    let words = ground_size.div_ceil(64).max(1);
    let packed: Vec<Packed> = usable
        .into_iter()
        .map(|c| {
            let pos = Bits::from_ids(words, &c.positive);
            let neg = Bits::from_ids(words, &c.negative);
            let support = Bits::from_ids(words, c.positive.iter().chain(&c.negative));
            Packed {
                circuit: c,
                pos,
                neg,
                support,
            }
        })
        .collect();

    'c3: for a in &packed {
        for b in &packed {
            if std::ptr::eq(a, b) || !a.support.is_subset(&b.support) {
                continue;
            }
            if a.support != b.support || !(a.pos == b.neg && a.neg == b.pos) {
                report.incomparability = Some(AxiomWitness::Pair(
                    a.circuit.clone(),
                    b.circuit.clone(),
                ));
                break 'c3;
            }
        }
    }

    'c4: for a in &packed {
        for b in &packed {
            if a.pos == b.neg && a.neg == b.pos {
                continue;
            }
            for &e in a.circuit.positive.intersection(&b.circuit.negative) {
                let allowed_pos = a.pos.union_without(&b.pos, e);
                let allowed_neg = a.neg.union_without(&b.neg, e);
                let eliminated = packed
                    .iter()
                    .any(|c| c.pos.is_subset(&allowed_pos) && c.neg.is_subset(&allowed_neg));
                if !eliminated {
                    report.elimination = Some(AxiomWitness::Elimination {
                        first: a.circuit.clone(),
                        second: b.circuit.clone(),
                        element: e,
                    });
                    break 'c4;
                }
            }
        }
    }

    report
}
