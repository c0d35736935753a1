//! Point configurations over exact rationals as affine oriented matroids.
//!
//! A point `p` is lifted to `(p, 1)`; a subset is independent when its
//! lifted vectors are linearly independent, and the signs of a circuit are
//! the signs of the coefficients of its (unique up to scale) lifted linear
//! dependence. No floating point is used anywhere.

mod example2;
mod linalg;

use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::om::{
    for_each_subset, Anchor, BasisSet, ElementId, OmError, OrientedMatroid, SignedCircuit,
};
use crate::text::{content_lines, keyword, parse_ids, parse_size, parse_usize, ParseError};

pub use example2::{build_example2, Example2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("element {0} is outside the configuration")]
    ElementOutOfRange(ElementId),
    #[error("the subset is not a circuit")]
    NotACircuit,
    #[error("the simplex is not a basis")]
    DegenerateSimplex,
    #[error("the anchor is one of the simplex vertices")]
    AnchorInSimplex,
    #[error("the anchor lies on a face of the simplex")]
    AnchorOnFace,
}

/// A point with exact rational coordinates (always in reduced form).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint { coords }
    }

    pub fn from_integers(coords: &[i64]) -> Self {
        RationalPoint {
            coords: coords.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        }
    }

    /// `coords` given as `(numerator, denominator)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        RationalPoint {
            coords: coords
                .iter()
                .map(|&(n, d)| BigRational::new(n.into(), d.into()))
                .collect(),
        }
    }

    pub fn origin(dim: usize) -> Self {
        RationalPoint {
            coords: vec![BigRational::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn parse_rational(token: &str, line: usize) -> Result<BigRational, ParseError> {
    let bad = || ParseError::new(line, format!("invalid rational `{token}`"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseError::new(line, format!("zero denominator in `{token}`")));
    }
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration {
    dim: usize,
    points: Vec<RationalPoint>,
    anchor: usize,
}

impl PointConfiguration {
    pub fn new(
        dim: usize,
        points: Vec<RationalPoint>,
        anchor: usize,
    ) -> Result<Self, AffineError> {
        for (index, p) in points.iter().enumerate() {
            if p.dim() != dim {
                return Err(AffineError::DimensionMismatch {
                    index,
                    expected: dim,
                    found: p.dim(),
                });
            }
        }
        if anchor >= points.len() {
            return Err(AffineError::ElementOutOfRange(ElementId(anchor)));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(AffineError::DuplicatePoint(i, j));
                }
            }
        }
        Ok(PointConfiguration {
            dim,
            points,
            anchor,
        })
    }

    /// Appends the origin as the last element and makes it the anchor.
    pub fn origin_anchored(dim: usize, mut points: Vec<RationalPoint>) -> Result<Self, AffineError> {
        points.push(RationalPoint::origin(dim));
        let anchor = points.len() - 1;
        Self::new(dim, points, anchor)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[RationalPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn anchor(&self) -> ElementId {
        ElementId(self.anchor)
    }

    pub fn point(&self, e: ElementId) -> &RationalPoint {
        &self.points[e.0]
    }

    fn check_ids(&self, subset: &[ElementId]) -> Result<(), AffineError> {
        match subset.iter().find(|e| e.0 >= self.points.len()) {
            Some(&e) => Err(AffineError::ElementOutOfRange(e)),
            None => Ok(()),
        }
    }

    /// Lifted columns `(p, 1)`, each scaled by the positive lcm of its
    /// denominators; returned row-major as a `(d+1) x k` integer matrix.
    /// Positive column scaling preserves both rank and dependence signs.
    fn lifted_matrix(&self, subset: &[ElementId]) -> Vec<Vec<BigInt>> {
        let mut rows = vec![Vec::with_capacity(subset.len()); self.dim + 1];
        for e in subset {
            let p = &self.points[e.0];
            let scale = p
                .coords
                .iter()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            for (row, c) in rows.iter_mut().zip(&p.coords) {
                row.push(c.numer() * (&scale / c.denom()));
            }
            rows[self.dim].push(scale);
        }
        rows
    }

    /// Unscaled lifted columns as rationals, row-major.
    fn lifted_rational(&self, subset: &[ElementId]) -> Vec<Vec<BigRational>> {
        let mut rows = vec![Vec::with_capacity(subset.len()); self.dim + 1];
        for e in subset {
            let p = &self.points[e.0];
            for (row, c) in rows.iter_mut().zip(&p.coords) {
                row.push(c.clone());
            }
            rows[self.dim].push(BigRational::one());
        }
        rows
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("points {} {}\n", self.dim, self.points.len());
        for p in &self.points {
            let _ = writeln!(out, "{p}");
        }
        let _ = writeln!(out, "anchor {}", self.anchor);
        out
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(PointsFile::parse(text)?.config)
    }
}

/// Rank of the lifted matrix of `subset`; equals `subset.len()` exactly when
/// the points are affinely independent.
pub fn lifted_rank(config: &PointConfiguration, subset: &[ElementId]) -> usize {
    let cols = subset.len();
    linalg::rank(config.lifted_matrix(subset), cols)
}

/// Coefficients `λ` with `Σ λ_i (p_i, 1) = 0` for a minimally dependent
/// subset, oriented like [`affine_signed_circuit`]. All entries are nonzero.
pub fn affine_dependence(
    config: &PointConfiguration,
    subset: &[ElementId],
) -> Result<Vec<BigRational>, AffineError> {
    config.check_ids(subset)?;
    let k = subset.len();
    if k == 0 || lifted_rank(config, subset) != k - 1 {
        return Err(AffineError::NotACircuit);
    }
    for skip in 0..k {
        let rest: Vec<ElementId> = subset
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, e)| *e)
            .collect();
        if lifted_rank(config, &rest) != k - 1 {
            return Err(AffineError::NotACircuit);
        }
    }
    // Kernel of the unscaled lifted matrix, computed on the scaled integer
    // matrix and then rescaled.
    let scaled = config.lifted_matrix(subset);
    let scales: Vec<BigInt> = scaled[config.dim].clone();
    let mut lambda = linalg::kernel_vector(scaled, k).ok_or(AffineError::NotACircuit)?;
    for (l, s) in lambda.iter_mut().zip(&scales) {
        *l = &*l * BigRational::from_integer(s.clone());
    }
    let circuit = circuit_from_coefficients(subset, &lambda);
    let wanted = orient_circuit(config, &circuit);
    if wanted != circuit {
        for l in &mut lambda {
            *l = -l.clone();
        }
    }
    Ok(lambda)
}

fn circuit_from_coefficients(subset: &[ElementId], lambda: &[BigRational]) -> SignedCircuit {
    let mut c = SignedCircuit {
        positive: Default::default(),
        negative: Default::default(),
    };
    for (e, l) in subset.iter().zip(lambda) {
        match linalg::sign_of(l) {
            1 => {
                c.positive.insert(*e);
            }
            -1 => {
                c.negative.insert(*e);
            }
            _ => {}
        }
    }
    c
}

/// Anchor negative when present, otherwise the lexicographic canonical form.
fn orient_circuit(config: &PointConfiguration, c: &SignedCircuit) -> SignedCircuit {
    if c.contains(config.anchor()) {
        c.oriented_negative(config.anchor())
    } else {
        c.canonical()
    }
}

/// Signed circuit of a minimally dependent subset.
pub fn affine_signed_circuit(
    config: &PointConfiguration,
    subset: &[ElementId],
) -> Result<SignedCircuit, AffineError> {
    let lambda = affine_dependence(config, subset)?;
    Ok(circuit_from_coefficients(subset, &lambda))
}

/// Barycentric coordinates of the anchor with respect to a simplex, by
/// Cramer's rule on the unscaled lifted matrix.
pub fn barycentric_coordinates(
    config: &PointConfiguration,
    simplex: &BasisSet,
) -> Result<Vec<BigRational>, AffineError> {
    config.check_ids(simplex.elements())?;
    if simplex.contains(config.anchor()) {
        return Err(AffineError::AnchorInSimplex);
    }
    let d = config.dim;
    if simplex.len() != d + 1 {
        return Err(AffineError::DegenerateSimplex);
    }
    let m = config.lifted_rational(simplex.elements());
    let det = linalg::determinant(m.clone());
    if det.is_zero() {
        return Err(AffineError::DegenerateSimplex);
    }
    let target = config.lifted_rational(&[config.anchor()]);
    Ok((0..=d)
        .map(|i| {
            let mut mi = m.clone();
            for (row, t) in mi.iter_mut().zip(&target) {
                row[i] = t[0].clone();
            }
            linalg::determinant(mi) / &det
        })
        .collect())
}

/// Whether the simplex contains the anchor in its interior.
pub fn is_zero_embracing(
    config: &PointConfiguration,
    simplex: &BasisSet,
) -> Result<bool, AffineError> {
    let coords = barycentric_coordinates(config, simplex)?;
    if coords.iter().any(Zero::is_zero) {
        return Err(AffineError::AnchorOnFace);
    }
    Ok(coords.iter().all(Signed::is_positive))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositionReport {
    /// `(d+1)`-subsets of non-anchor points that are affinely dependent.
    pub dependent: Vec<Vec<ElementId>>,
    /// `d`-subsets of non-anchor points whose affine hull contains the anchor.
    pub anchor_on_hyperplane: Vec<Vec<ElementId>>,
}

impl PositionReport {
    pub fn is_general(&self) -> bool {
        self.dependent.is_empty() && self.anchor_on_hyperplane.is_empty()
    }
}

pub fn check_general_position(config: &PointConfiguration) -> PositionReport {
    let d = config.dim;
    let others: Vec<ElementId> = (0..config.len())
        .map(ElementId)
        .filter(|e| *e != config.anchor())
        .collect();
    let mut report = PositionReport::default();
    for_each_subset(others.len(), d + 1, |idx| {
        let subset: Vec<ElementId> = idx.iter().map(|&i| others[i]).collect();
        if lifted_rank(config, &subset) < d + 1 {
            report.dependent.push(subset);
        }
    });
    for_each_subset(others.len(), d, |idx| {
        let mut subset: Vec<ElementId> = idx.iter().map(|&i| others[i]).collect();
        subset.push(config.anchor());
        if lifted_rank(config, &subset) < d + 1 {
            subset.pop();
            report.anchor_on_hyperplane.push(subset);
        }
    });
    report
}

/// The affine oriented matroid of a configuration.
#[derive(Clone, Debug)]
pub struct AffineOracle {
    config: PointConfiguration,
    rank: usize,
}

impl AffineOracle {
    pub fn new(config: PointConfiguration) -> Self {
        let all: Vec<ElementId> = (0..config.len()).map(ElementId).collect();
        let rank = lifted_rank(&config, &all);
        AffineOracle { config, rank }
    }

    pub fn config(&self) -> &PointConfiguration {
        &self.config
    }

    pub fn anchor(&self) -> Anchor {
        Anchor::Element(self.config.anchor())
    }
}

impl OrientedMatroid for AffineOracle {
    fn ground_size(&self) -> usize {
        self.config.len()
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn is_basis(&self, basis: &BasisSet) -> bool {
        basis.len() == self.rank
            && basis.iter().all(|e| e.0 < self.config.len())
            && lifted_rank(&self.config, basis.elements()) == self.rank
    }

    fn anchored_fundamental_circuit(
        &self,
        basis: &BasisSet,
        anchor: &Anchor,
    ) -> Result<SignedCircuit, OmError> {
        let e = anchor.element().ok_or(OmError::InvalidAnchor)?;
        if e.0 >= self.config.len() {
            return Err(OmError::ElementOutOfRange {
                element: e,
                ground_size: self.config.len(),
            });
        }
        if basis.contains(e) {
            return Err(OmError::AnchorInBasis(e));
        }
        let mut cols: Vec<ElementId> = basis.elements().to_vec();
        cols.push(e);
        let k = cols.len();
        let lambda = linalg::kernel_vector(self.config.lifted_matrix(&cols), k)
            .ok_or(OmError::AnchorNotSpanned)?;
        if lambda[k - 1].is_zero() {
            return Err(OmError::AnchorNotSpanned);
        }
        let c = circuit_from_coefficients(&cols, &lambda);
        Ok(c.oriented_negative(e))
    }
}

/// A point-configuration file with optional `basis` lines.
///
/// ```text
/// points 2 4
/// 1 0
/// -1 1
/// -1/2 -1
/// 0 0
/// anchor 3
/// basis 0 1 2
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointsFile {
    pub config: PointConfiguration,
    pub bases: Vec<BasisSet>,
}

impl PointsFile {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut lines = content_lines(text);
        let (hline, header) = lines
            .next()
            .ok_or_else(|| ParseError::new(0, "missing `points <d> <count>` header"))?;
        let (dim, count) = match keyword(header) {
            ("points", rest) if rest.len() == 2 => (
                parse_size(rest[0], hline, "dimension")?,
                parse_size(rest[1], hline, "point count")?,
            ),
            _ => return Err(ParseError::new(hline, "expected `points <d> <count>`")),
        };
        let mut points = Vec::new();
        let mut anchor = None;
        let mut bases = Vec::new();
        for (line_no, line) in lines {
            if points.len() < count {
                let coords = line
                    .split_whitespace()
                    .map(|t| parse_rational(t, line_no))
                    .collect::<Result<Vec<_>, _>>()?;
                if coords.len() != dim {
                    return Err(ParseError::new(
                        line_no,
                        format!("expected {dim} coordinates, found {}", coords.len()),
                    ));
                }
                points.push(RationalPoint::new(coords));
                continue;
            }
            match keyword(line) {
                ("anchor", rest) if rest.len() == 1 && anchor.is_none() => {
                    anchor = Some(parse_usize(rest[0], line_no, "anchor index")?);
                }
                ("basis", rest) => {
                    let ids = parse_ids(&rest, line_no, "point index")?;
                    if let Some(bad) = ids.iter().find(|&&i| i >= count) {
                        return Err(ParseError::new(line_no, format!("point {bad} out of range")));
                    }
                    bases.push(BasisSet::from_indices(&ids));
                }
                _ => return Err(ParseError::new(line_no, format!("unexpected line `{line}`"))),
            }
        }
        if points.len() < count {
            return Err(ParseError::new(
                0,
                format!("expected {count} points, found {}", points.len()),
            ));
        }
        let anchor = anchor.ok_or_else(|| ParseError::new(0, "missing `anchor <index>` line"))?;
        let config = PointConfiguration::new(dim, points, anchor)
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        Ok(PointsFile { config, bases })
    }

    pub fn to_text(&self) -> String {
        let mut out = self.config.to_text();
        for b in &self.bases {
            let _ = writeln!(out, "basis {b}");
        }
        out
    }
}
