//! Audit instances: an oracle payload, an anchor and two embracing bases.
//!
//! Text format: a short preamble followed by the payload in its own module
//! format, which carries the anchor and the two bases (first `A`, then `B`).
//!
//! ```text
//! instance graphic
//! seed 17
//! digraph 3 3
//! 0 1
//! 1 2
//! 0 2
//! tree 0 1
//! tree 2 0
//! anchor 0 2
//! ```
//!
//! Preamble keywords: `instance <graphic|affine|explicit>` (required,
//! first), `seed <u64>`, `claimed-rank <r>`. A claimed rank replaces the
//! oracle's rank as the audit bound.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use embrace_core::affine::{AffineOracle, PointsFile};
use embrace_core::explicit::{ExplicitOm, ExplicitOmFile};
use embrace_core::graphic::{Digraph, GraphicFile, GraphicOracle};
use embrace_core::text::{content_lines, keyword, parse_usize, ParseError};
use embrace_core::{Anchor, BasisSet, OrientedMatroid, VertexId};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InstanceKind {
    Graphic,
    Affine,
    Explicit,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Graphic => "graphic",
            InstanceKind::Affine => "affine",
            InstanceKind::Explicit => "explicit",
        })
    }
}

impl FromStr for InstanceKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "graphic" => Ok(InstanceKind::Graphic),
            "affine" => Ok(InstanceKind::Affine),
            "explicit" => Ok(InstanceKind::Explicit),
            _ => Err(format!("unknown instance kind `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Payload {
    Graphic {
        oracle: GraphicOracle,
        s: VertexId,
        t: VertexId,
    },
    Affine(AffineOracle),
    Explicit {
        file: ExplicitOmFile,
        oracle: ExplicitOm,
    },
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub payload: Payload,
    pub a: BasisSet,
    pub b: BasisSet,
    pub seed: Option<u64>,
    pub claimed_rank: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Invalid(String),
}

impl Instance {
    /// Builds an instance and checks that `a` and `b` are embracing bases.
    pub fn new(payload: Payload, a: BasisSet, b: BasisSet) -> Result<Self, InstanceError> {
        let inst = Instance {
            payload,
            a,
            b,
            seed: None,
            claimed_rank: None,
        };
        for (name, basis) in [("A", &inst.a), ("B", &inst.b)] {
            let oracle = inst.oracle();
            if !oracle.is_basis(basis) {
                return Err(InstanceError::Invalid(format!("{name} = {{{basis}}} is not a basis")));
            }
            match oracle.is_embracing(basis, &inst.anchor()) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(InstanceError::Invalid(format!(
                        "{name} = {{{basis}}} is not embracing"
                    )))
                }
                Err(e) => return Err(InstanceError::Invalid(format!("{name}: {e}"))),
            }
        }
        Ok(inst)
    }

    pub fn graphic(digraph: Digraph, s: VertexId, t: VertexId, a: BasisSet, b: BasisSet) -> Result<Self, InstanceError> {
        let oracle = GraphicOracle::new(digraph).map_err(|e| InstanceError::Invalid(e.to_string()))?;
        if s == t || s >= oracle.digraph().vertex_count() || t >= oracle.digraph().vertex_count() {
            return Err(InstanceError::Invalid("invalid anchor vertices".into()));
        }
        Instance::new(Payload::Graphic { oracle, s, t }, a, b)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_claimed_rank(mut self, rank: usize) -> Self {
        self.claimed_rank = Some(rank);
        self
    }

    pub fn kind(&self) -> InstanceKind {
        match self.payload {
            Payload::Graphic { .. } => InstanceKind::Graphic,
            Payload::Affine(_) => InstanceKind::Affine,
            Payload::Explicit { .. } => InstanceKind::Explicit,
        }
    }

    pub fn oracle(&self) -> &dyn OrientedMatroid {
        match &self.payload {
            Payload::Graphic { oracle, .. } => oracle,
            Payload::Affine(oracle) => oracle,
            Payload::Explicit { oracle, .. } => oracle,
        }
    }

    pub fn anchor(&self) -> Anchor {
        match &self.payload {
            Payload::Graphic { s, t, .. } => Anchor::Vertices {
                source: *s,
                target: *t,
            },
            Payload::Affine(oracle) => oracle.anchor(),
            Payload::Explicit { file, .. } => {
                Anchor::Element(file.anchor.expect("explicit instances carry an anchor"))
            }
        }
    }

    /// The audit bound: the claimed rank if present, else the oracle's.
    pub fn rank(&self) -> usize {
        self.claimed_rank.unwrap_or_else(|| self.oracle().rank())
    }

    /// Short size description, e.g. `n=5,m=8` or `d=2,k=7`.
    pub fn size(&self) -> String {
        match &self.payload {
            Payload::Graphic { oracle, .. } => format!(
                "n={},m={}",
                oracle.digraph().vertex_count(),
                oracle.digraph().arc_count()
            ),
            Payload::Affine(oracle) => format!(
                "d={},k={}",
                oracle.config().dim(),
                oracle.config().len()
            ),
            Payload::Explicit { file, .. } => format!("e={},r={}", file.ground_size, file.rank),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("instance {}\n", self.kind());
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed {seed}");
        }
        if let Some(r) = self.claimed_rank {
            let _ = writeln!(out, "claimed-rank {r}");
        }
        let bases = vec![self.a.clone(), self.b.clone()];
        out.push_str(&match &self.payload {
            Payload::Graphic { oracle, s, t } => GraphicFile {
                digraph: oracle.digraph().clone(),
                trees: bases,
                anchor: Some((*s, *t)),
            }
            .to_text(),
            Payload::Affine(oracle) => PointsFile {
                config: oracle.config().clone(),
                bases,
            }
            .to_text(),
            Payload::Explicit { file, .. } => ExplicitOmFile {
                bases,
                ..file.clone()
            }
            .to_text(),
        });
        out
    }

    /// First 16 hex digits of the SHA-256 of [`Instance::to_text`].
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest[..8].iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let mut kind = None;
        let mut seed = None;
        let mut claimed_rank = None;
        // Blank out the preamble so payload errors keep their line numbers.
        let mut payload_lines: Vec<&str> = text.lines().collect();
        for (line_no, line) in content_lines(text) {
            let (head, rest) = keyword(line);
            match (head, rest.as_slice()) {
                ("instance", [k]) if kind.is_none() => {
                    kind = Some(k.parse::<InstanceKind>().map_err(|e| ParseError::new(line_no, e))?);
                }
                ("seed", [v]) if kind.is_some() && seed.is_none() => {
                    seed = Some(
                        v.parse::<u64>()
                            .map_err(|_| ParseError::new(line_no, format!("invalid seed `{v}`")))?,
                    );
                }
                ("claimed-rank", [v]) if kind.is_some() && claimed_rank.is_none() => {
                    claimed_rank = Some(parse_usize(v, line_no, "rank")?);
                }
                _ if kind.is_none() => {
                    return Err(ParseError::new(line_no, "expected `instance <kind>` first").into())
                }
                _ => break,
            }
            payload_lines[line_no - 1] = "";
        }
        let kind = kind.ok_or_else(|| ParseError::new(0, "missing `instance <kind>` line"))?;
        let payload_text = payload_lines.join("\n");
        let (payload, bases) = match kind {
            InstanceKind::Graphic => {
                let file = GraphicFile::parse(&payload_text)?;
                let (s, t) = file
                    .anchor
                    .ok_or_else(|| ParseError::new(0, "graphic instance needs `anchor <s> <t>`"))?;
                let oracle =
                    GraphicOracle::new(file.digraph).map_err(|e| InstanceError::Invalid(e.to_string()))?;
                (Payload::Graphic { oracle, s, t }, file.trees)
            }
            InstanceKind::Affine => {
                let file = PointsFile::parse(&payload_text)?;
                (Payload::Affine(AffineOracle::new(file.config)), file.bases)
            }
            InstanceKind::Explicit => {
                let file = ExplicitOmFile::parse(&payload_text)?;
                if file.anchor.is_none() {
                    return Err(ParseError::new(0, "explicit instance needs `anchor <e>`").into());
                }
                let oracle =
                    ExplicitOm::from_file(&file).map_err(|e| InstanceError::Invalid(e.to_string()))?;
                let bases = file.bases.clone();
                (Payload::Explicit { file, oracle }, bases)
            }
        };
        let [a, b]: [BasisSet; 2] = bases
            .try_into()
            .map_err(|_| ParseError::new(0, "expected exactly two bases (A then B)"))?;
        let mut inst = Instance::new(payload, a, b)?;
        inst.seed = seed;
        inst.claimed_rank = claimed_rank;
        Ok(inst)
    }
}
