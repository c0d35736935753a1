//! Oriented matroids given by an explicit list of signed circuits.
//!
//! Text format:
//!
//! ```text
//! # comment
//! ground 4 rank 2
//! + 0 1 ; - 2
//! + 3 ; - 0 1
//! anchor 3
//! basis 0 1
//! ```
//!
//! Each circuit is listed once in either orientation (or both); the oracle
//! stores one canonical representative per circuit. The optional `anchor`
//! and `basis` lines name an anchor element and bases of interest.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::om::{Anchor, BasisSet, ElementId, OmError, OrientedMatroid, SignedCircuit};
use crate::text::{content_lines, keyword, parse_ids, parse_size, parse_usize, ParseError};

/// The raw content of an explicit-OM file, before canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitOmFile {
    pub ground_size: usize,
    pub rank: usize,
    pub circuits: Vec<SignedCircuit>,
    pub anchor: Option<ElementId>,
    pub bases: Vec<BasisSet>,
}

impl ExplicitOmFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (header_line, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "missing `ground <n> rank <r>` header"))?;
        let (ground_size, rank) = parse_header(header, header_line)?;
        let mut circuits = Vec::new();
        let mut anchor = None;
        let mut bases = Vec::new();
        for (line_no, line) in lines {
            let in_range = |id: usize| {
                if id < ground_size {
                    Ok(ElementId(id))
                } else {
                    Err(ParseError::new(
                        line_no,
                        format!("element {id} outside ground set of size {ground_size}"),
                    ))
                }
            };
            match keyword(line) {
                ("anchor", args) => {
                    if anchor.is_some() {
                        return Err(ParseError::new(line_no, "duplicate `anchor` line"));
                    }
                    let [id] = args.as_slice() else {
                        return Err(ParseError::new(line_no, "expected `anchor <element>`"));
                    };
                    anchor = Some(in_range(parse_usize(id, line_no, "element id")?)?);
                }
                ("basis", args) => {
                    let ids = parse_ids(&args, line_no, "element id")?;
                    for &id in &ids {
                        in_range(id)?;
                    }
                    bases.push(BasisSet::from_indices(&ids));
                }
                _ => circuits.push(parse_circuit_line(line, line_no, ground_size)?),
            }
        }
        Ok(ExplicitOmFile {
            ground_size,
            rank,
            circuits,
            anchor,
            bases,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ground {} rank {}\n", self.ground_size, self.rank);
        for c in &self.circuits {
            let _ = writeln!(out, "{c}");
        }
        if let Some(a) = self.anchor {
            let _ = writeln!(out, "anchor {a}");
        }
        for b in &self.bases {
            let _ = writeln!(out, "basis {b}");
        }
        out
    }

    /// The circuit list closed under negation.
    pub fn with_negations(&self) -> Vec<SignedCircuit> {
        let set: BTreeSet<SignedCircuit> = self
            .circuits
            .iter()
            .flat_map(|c| [c.clone(), c.negated()])
            .collect();
        set.into_iter().collect()
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<(usize, usize), ParseError> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    match tokens.as_slice() {
        ["ground", n, "rank", r] => Ok((
            parse_size(n, line_no, "ground size")?,
            parse_usize(r, line_no, "rank")?,
        )),
        _ => Err(ParseError::new(
            line_no,
            "expected header `ground <n> rank <r>`",
        )),
    }
}

fn parse_circuit_line(
    line: &str,
    line_no: usize,
    ground_size: usize,
) -> Result<SignedCircuit, ParseError> {
    let spaced = line
        .replace('+', " + ")
        .replace('-', " - ")
        .replace(';', " ; ");
    let tokens: Vec<&str> = spaced.split_whitespace().collect();
    let semi = tokens
        .iter()
        .position(|t| *t == ";")
        .ok_or_else(|| ParseError::new(line_no, "expected `+ ... ; - ...`"))?;
    let (pos, neg) = (&tokens[..semi], &tokens[semi + 1..]);
    if pos.first() != Some(&"+") || neg.first() != Some(&"-") {
        return Err(ParseError::new(line_no, "expected `+ ... ; - ...`"));
    }
    let ids = |part: &[&str]| -> Result<BTreeSet<ElementId>, ParseError> {
        let mut out = BTreeSet::new();
        for t in part {
            let id = parse_usize(t, line_no, "element id")?;
            if id >= ground_size {
                return Err(ParseError::new(
                    line_no,
                    format!("element {id} outside ground set of size {ground_size}"),
                ));
            }
            if !out.insert(ElementId(id)) {
                return Err(ParseError::new(line_no, format!("element {id} repeated")));
            }
        }
        Ok(out)
    };
    let positive = ids(&pos[1..])?;
    let negative = ids(&neg[1..])?;
    SignedCircuit::new(positive, negative).map_err(|e| ParseError::new(line_no, e.to_string()))
}

/// Oracle over an explicit circuit list.
#[derive(Clone, Debug)]
pub struct ExplicitOm {
    ground_size: usize,
    rank: usize,
    /// Canonical representatives, sorted.
    circuits: Vec<SignedCircuit>,
}

impl ExplicitOm {
    pub fn new(
        ground_size: usize,
        rank: usize,
        circuits: impl IntoIterator<Item = SignedCircuit>,
    ) -> Result<Self, OmError> {
        let mut canon = BTreeSet::new();
        for c in circuits {
            if !c.is_well_formed() {
                return Err(OmError::MalformedCircuit(c.to_string()));
            }
            if let Some(&e) = c.positive.iter().chain(&c.negative).find(|e| e.0 >= ground_size) {
                return Err(OmError::ElementOutOfRange {
                    element: e,
                    ground_size,
                });
            }
            canon.insert(c.canonical());
        }
        Ok(ExplicitOm {
            ground_size,
            rank,
            circuits: canon.into_iter().collect(),
        })
    }

    pub fn from_file(file: &ExplicitOmFile) -> Result<Self, OmError> {
        Self::new(file.ground_size, file.rank, file.circuits.iter().cloned())
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let file = ExplicitOmFile::parse(text)?;
        Self::from_file(&file).map_err(|e| ParseError::new(0, e.to_string()))
    }

    /// Canonical representatives (one orientation per circuit).
    pub fn circuits(&self) -> &[SignedCircuit] {
        &self.circuits
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("ground {} rank {}\n", self.ground_size, self.rank);
        for c in &self.circuits {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    fn support_within(c: &SignedCircuit, set: &BasisSet, extra: Option<ElementId>) -> bool {
        c.positive
            .iter()
            .chain(&c.negative)
            .all(|e| set.contains(*e) || Some(*e) == extra)
    }
}

impl OrientedMatroid for ExplicitOm {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn is_basis(&self, basis: &BasisSet) -> bool {
        basis.len() == self.rank
            && basis.iter().all(|e| e.0 < self.ground_size)
            && !self
                .circuits
                .iter()
                .any(|c| Self::support_within(c, basis, None))
    }

    fn anchored_fundamental_circuit(
        &self,
        basis: &BasisSet,
        anchor: &Anchor,
    ) -> Result<SignedCircuit, OmError> {
        let e = anchor.element().ok_or(OmError::InvalidAnchor)?;
        if basis.contains(e) {
            return Err(OmError::AnchorInBasis(e));
        }
        self.circuits
            .iter()
            .find(|c| c.contains(e) && Self::support_within(c, basis, Some(e)))
            .map(|c| c.oriented_negative(e))
            .ok_or(OmError::AnchorNotSpanned)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::om::is_embracing;

    const LINE: &str = "\
# three vectors 1, -1, 2 on a line
ground 3 rank 1
+ 0 1 ; -
+0;-2
+ 1 2 ; -
";

    #[test]
    fn parses_whitespace_tolerant_lines() {
        let file = ExplicitOmFile::parse(LINE).unwrap();
        assert_eq!(file.ground_size, 3);
        assert_eq!(file.rank, 1);
        assert_eq!(file.circuits[1], SignedCircuit::from_indices(&[0], &[2]));
        assert_eq!(file.with_negations().len(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ExplicitOmFile::parse("").is_err());
        assert!(ExplicitOmFile::parse("ground 2 rank\n").is_err());
        let err = ExplicitOmFile::parse("ground 2 rank 1\n+ 0 ; - 2\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(ExplicitOmFile::parse("ground 2 rank 1\n+ 0 1\n").is_err());
        assert!(ExplicitOmFile::parse("ground 2 rank 1\n+ 0 ; - 0\n").is_err());
        assert!(ExplicitOmFile::parse("ground 2 rank 1\n+ ; -\n").is_err());
        assert!(ExplicitOmFile::parse("ground 2 rank 1\n- 0 ; + 1\n").is_err());
    }

    #[test]
    fn oracle_answers_on_rank_one_line() {
        let om = ExplicitOm::parse(LINE).unwrap();
        let b0 = BasisSet::from_indices(&[0]);
        assert!(om.is_basis(&b0));
        assert!(!om.is_basis(&BasisSet::from_indices(&[0, 1])));
        // 2 = 2 * v0: anchored at 2, element 0 is positive.
        let anchor = Anchor::Element(ElementId(2));
        assert_eq!(
            om.anchored_fundamental_circuit(&b0, &anchor).unwrap(),
            SignedCircuit::from_indices(&[0], &[2])
        );
        assert!(is_embracing(&om, &b0, &anchor).unwrap());
        // v1 = -v0/2 lies on the other side.
        let b1 = BasisSet::from_indices(&[1]);
        assert!(!is_embracing(&om, &b1, &anchor).unwrap());
        assert_eq!(
            is_embracing(&om, &b0, &Anchor::Element(ElementId(0))),
            Err(OmError::AnchorInBasis(ElementId(0)))
        );
    }

    #[test]
    fn anchor_and_basis_lines() {
        let text = format!("{LINE}anchor 2\nbasis 0\nbasis 1\n");
        let file = ExplicitOmFile::parse(&text).unwrap();
        assert_eq!(file.anchor, Some(ElementId(2)));
        assert_eq!(file.bases, vec![BasisSet::from_indices(&[0]), BasisSet::from_indices(&[1])]);
        assert_eq!(ExplicitOmFile::parse(&file.to_text()).unwrap(), file);
        for bad in ["anchor 3\n", "anchor\n", "anchor 1\nanchor 2\n", "basis 0 7\n", "basis x\n"] {
            assert!(ExplicitOmFile::parse(&format!("{LINE}{bad}")).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn text_round_trip_preserves_circuits() {
        let om = ExplicitOm::parse(LINE).unwrap();
        let again = ExplicitOm::parse(&om.to_text()).unwrap();
        assert_eq!(om.circuits(), again.circuits());
    }
}
