//! The twice-punctured disk with `m` marked boundary points, classical tagged
//! arcs, and peripheral arcs together with their Auslander–Reiten translate.
//!
//! Boundary points are labelled `1..=m` counterclockwise and the two
//! punctures are `P` and `Q`. For the affine type `D_n` surface `m = n - 2`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("a twice-punctured disk needs at least 2 boundary points, got {m}")]
    TooFewBoundaryPoints { m: u32 },
    #[error("boundary index {index} is outside 1..={m}")]
    IndexOutOfRange { index: u32, m: u32 },
    #[error("peripheral arc must span at least 2 boundary segments, got {k}")]
    ArcTooShort { k: u32 },
    #[error("g({l},{s},{t}) is not a peripheral arc: t must differ from s and s+1 when l = 0")]
    ForbiddenGamma { l: u32, s: u32, t: u32 },
    #[error(
        "crossing test only supports unwrapped peripheral arcs, {arc} winds around the boundary"
    )]
    WrappedArc { arc: PeripheralArc },
}

/// The disk `D(n)` viewed through its boundary: `m = n - 2` marked points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Surface {
    m: u32,
}

impl Surface {
    pub fn new(m: u32) -> Result<Self, SurfaceError> {
        if m < 2 {
            return Err(SurfaceError::TooFewBoundaryPoints { m });
        }
        Ok(Self { m })
    }

    /// Surface for affine type `D_n`.
    pub fn for_type_d(n: u32) -> Result<Self, SurfaceError> {
        Self::new(n.saturating_sub(2))
    }

    pub fn boundary_points(&self) -> u32 {
        self.m
    }

    /// Rank of the exceptional tube over peripheral arcs.
    pub fn t1_rank(&self) -> u32 {
        self.m
    }

    pub fn check_index(&self, i: u32) -> Result<u32, SurfaceError> {
        if (1..=self.m).contains(&i) {
            Ok(i)
        } else {
            Err(SurfaceError::IndexOutOfRange {
                index: i,
                m: self.m,
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    Plain,
    Notched,
}

impl Tag {
    pub fn flip(self) -> Tag {
        match self {
            Tag::Plain => Tag::Notched,
            Tag::Notched => Tag::Plain,
        }
    }

    pub fn is_notched(self) -> bool {
        self == Tag::Notched
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Puncture {
    P,
    Q,
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Puncture::P => f.write_str("P"),
            Puncture::Q => f.write_str("Q"),
        }
    }
}

/// Next boundary point in clockwise direction, i.e. `i - 1` wrapped into `1..=m`.
pub fn clockwise_next(i: u32, m: u32) -> Result<u32, SurfaceError> {
    let surface = Surface::new(m)?;
    surface.check_index(i)?;
    Ok(if i == 1 { m } else { i - 1 })
}

/// Next boundary point in counterclockwise direction.
pub fn counterclockwise_next(i: u32, m: u32) -> Result<u32, SurfaceError> {
    let surface = Surface::new(m)?;
    surface.check_index(i)?;
    Ok(if i == m { 1 } else { i + 1 })
}

/// Reduce any integer into the label range `1..=m`.
fn wrap(i: i64, m: u32) -> u32 {
    (i - 1).rem_euclid(m as i64) as u32 + 1
}

/// A peripheral arc in canonical form: it leaves boundary point `s` and
/// follows the boundary counterclockwise along `k >= 2` boundary segments.
///
/// The `(s, l, t)` labelling used for these arcs elsewhere is recovered with
/// [`PeripheralArc::to_gamma`]: `l = k / m` full turns and `t = s + k mod m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeripheralArc {
    s: u32,
    k: u32,
}

/// `(l, s, t)` label of a peripheral arc, printed as `g(l,s,t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GammaLabel {
    pub l: u32,
    pub s: u32,
    pub t: u32,
}

impl fmt::Display for GammaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g({},{},{})", self.l, self.s, self.t)
    }
}

impl PeripheralArc {
    /// Checks the parts that do not depend on the surface: `s >= 1`, `k >= 2`.
    pub fn new(s: u32, k: u32) -> Result<Self, SurfaceError> {
        if s == 0 {
            return Err(SurfaceError::IndexOutOfRange { index: s, m: 0 });
        }
        if k < 2 {
            return Err(SurfaceError::ArcTooShort { k });
        }
        Ok(Self { s, k })
    }

    /// Full validation against a surface with `m` boundary points.
    pub fn on_surface(s: u32, k: u32, m: u32) -> Result<Self, SurfaceError> {
        let arc = Self::new(s, k)?;
        arc.validate(m)?;
        Ok(arc)
    }

    pub fn validate(&self, m: u32) -> Result<(), SurfaceError> {
        Surface::new(m)?.check_index(self.s).map(|_| ())
    }

    pub fn start(&self) -> u32 {
        self.s
    }

    /// Number of boundary segments spanned.
    pub fn span(&self) -> u32 {
        self.k
    }

    /// Position inside the tube over peripheral arcs; the mouth is level 1.
    pub fn level(&self) -> u32 {
        self.k - 1
    }

    pub fn end(&self, m: u32) -> u32 {
        wrap(self.s as i64 + self.k as i64, m)
    }

    pub fn turns(&self, m: u32) -> u32 {
        self.k / m
    }

    pub fn is_wrapped(&self, m: u32) -> bool {
        self.k >= m
    }

    /// Auslander–Reiten translate: both endpoints move one step clockwise.
    pub fn tau(&self, m: u32) -> Result<Self, SurfaceError> {
        Ok(Self {
            s: clockwise_next(self.s, m)?,
            k: self.k,
        })
    }

    /// Inverse translate: both endpoints move one step counterclockwise.
    pub fn tau_inverse(&self, m: u32) -> Result<Self, SurfaceError> {
        Ok(Self {
            s: counterclockwise_next(self.s, m)?,
            k: self.k,
        })
    }

    pub fn to_gamma(&self, m: u32) -> Result<GammaLabel, SurfaceError> {
        self.validate(m)?;
        Ok(GammaLabel {
            l: self.k / m,
            s: self.s,
            t: self.end(m),
        })
    }

    pub fn from_gamma(l: u32, s: u32, t: u32, m: u32) -> Result<Self, SurfaceError> {
        let surface = Surface::new(m)?;
        surface.check_index(s)?;
        surface.check_index(t)?;
        let offset = (t as i64 - s as i64).rem_euclid(m as i64) as u32;
        let k = l * m + offset;
        if k < 2 {
            return Err(SurfaceError::ForbiddenGamma { l, s, t });
        }
        Ok(Self { s, k })
    }
}

impl fmt::Display for PeripheralArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p({},{})", self.s, self.k)
    }
}

/// Free-function form of [`PeripheralArc::tau`].
pub fn tau_peripheral(arc: PeripheralArc, m: u32) -> Result<PeripheralArc, SurfaceError> {
    arc.tau(m)
}

/// Free-function form of [`PeripheralArc::to_gamma`].
pub fn to_gamma_notation(arc: PeripheralArc, m: u32) -> Result<GammaLabel, SurfaceError> {
    arc.to_gamma(m)
}

/// Free-function form of [`PeripheralArc::from_gamma`].
pub fn from_gamma_notation(s: u32, l: u32, t: u32, m: u32) -> Result<PeripheralArc, SurfaceError> {
    PeripheralArc::from_gamma(l, s, t, m)
}

/// Whether two unwrapped peripheral arcs cross in the interior of the disk.
///
/// Such arcs run parallel to the boundary, so they cross exactly when their
/// endpoint pairs strictly interleave around the boundary circle.
pub fn untagged_crossing_simple_peripheral(
    a: PeripheralArc,
    b: PeripheralArc,
    m: u32,
) -> Result<bool, SurfaceError> {
    a.validate(m)?;
    b.validate(m)?;
    for arc in [a, b] {
        if arc.is_wrapped(m) {
            return Err(SurfaceError::WrappedArc { arc });
        }
    }
    let offset = |p: u32| (p as i64 - a.s as i64).rem_euclid(m as i64) as u32;
    let inside = |o: u32| o > 0 && o < a.k;
    let outside = |o: u32| o > a.k;
    let (o1, o2) = (offset(b.s), offset(b.end(m)));
    Ok((inside(o1) && outside(o2)) || (inside(o2) && outside(o1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Boundary(u32),
    Puncture(Puncture),
}

impl Endpoint {
    pub fn is_puncture(&self) -> bool {
        matches!(self, Endpoint::Puncture(_))
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Boundary(i) => write!(f, "{i}"),
            Endpoint::Puncture(p) => write!(f, "{p}"),
        }
    }
}

/// The four kinds of generalized arcs in the twice-punctured disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcType {
    /// Peripheral: boundary to boundary, homotopic to boundary segments.
    I,
    /// Boundary to boundary, not peripheral.
    II,
    /// Boundary to puncture.
    III,
    /// Puncture to puncture.
    IV,
}

pub trait Classify {
    fn arc_type(&self) -> ArcType;
}

pub fn classify_arc<A: Classify + ?Sized>(arc: &A) -> ArcType {
    arc.arc_type()
}

impl Classify for PeripheralArc {
    fn arc_type(&self) -> ArcType {
        ArcType::I
    }
}

/// A tagged arc given by its two ends.
///
/// Records with the same (unordered) endpoints and the same `encloses` value
/// describe the same untagged arc. `encloses` is set only for loops that
/// are the outer side of a self-folded triangle, i.e. loops that cut out a
/// monogon containing that single puncture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassicalTaggedArc {
    pub ends: [Endpoint; 2],
    pub tags: [Tag; 2],
    pub encloses: Option<Puncture>,
}

impl ClassicalTaggedArc {
    pub fn new(e1: Endpoint, t1: Tag, e2: Endpoint, t2: Tag) -> Self {
        Self {
            ends: [e1, e2],
            tags: [t1, t2],
            encloses: None,
        }
    }

    /// A plain loop based at `base` around a single puncture.
    pub fn monogon_loop(base: Endpoint, puncture: Puncture) -> Self {
        Self {
            ends: [base, base],
            tags: [Tag::Plain, Tag::Plain],
            encloses: Some(puncture),
        }
    }

    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }

    fn same_untagged(&self, other: &Self) -> bool {
        let same_ends = self.ends == other.ends
            || (self.ends[0] == other.ends[1] && self.ends[1] == other.ends[0]);
        same_ends && self.encloses == other.encloses
    }

    /// Tag carried at `endpoint`, if this arc ends there.
    fn tag_at(&self, endpoint: Endpoint) -> Option<Tag> {
        self.ends
            .iter()
            .position(|e| *e == endpoint)
            .map(|i| self.tags[i])
    }
}

impl Classify for ClassicalTaggedArc {
    fn arc_type(&self) -> ArcType {
        match (self.ends[0].is_puncture(), self.ends[1].is_puncture()) {
            (false, false) => ArcType::II,
            (true, true) => ArcType::IV,
            _ => ArcType::III,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TaggedArcViolation {
    #[error("boundary end {end} is notched")]
    NotchedBoundaryEnd { end: Endpoint },
    #[error("loop at {end} has differently tagged ends")]
    LoopTagsDiffer { end: Endpoint },
    #[error("loop at {end} cuts out a monogon punctured by {puncture}")]
    CutsOutPuncturedMonogon { end: Endpoint, puncture: Puncture },
    #[error("boundary index {index} is outside 1..={m}")]
    BoundaryIndex { index: u32, m: u32 },
}

/// Checks the tagged-arc conditions and collects every violation.
///
/// A loop based at a puncture around the other puncture is accepted; the
/// punctured-monogon condition is only detectable for records built with
/// [`ClassicalTaggedArc::monogon_loop`].
pub fn validate_tagged_arc(arc: &ClassicalTaggedArc, m: Option<u32>) -> Vec<TaggedArcViolation> {
    let mut violations = Vec::new();
    for (end, tag) in arc.ends.iter().zip(arc.tags) {
        if let Endpoint::Boundary(index) = *end {
            if let Some(m) = m {
                if index == 0 || index > m {
                    violations.push(TaggedArcViolation::BoundaryIndex { index, m });
                }
            }
            if tag == Tag::Notched {
                violations.push(TaggedArcViolation::NotchedBoundaryEnd { end: *end });
            }
        }
    }
    if arc.is_loop() {
        if arc.tags[0] != arc.tags[1] {
            violations.push(TaggedArcViolation::LoopTagsDiffer { end: arc.ends[0] });
        }
        if let Some(puncture) = arc.encloses {
            violations.push(TaggedArcViolation::CutsOutPuncturedMonogon {
                end: arc.ends[0],
                puncture,
            });
        }
    }
    violations
}

/// Compatibility of tagged arcs given a verdict on their untagged versions.
pub fn tagged_compatible(
    a: &ClassicalTaggedArc,
    b: &ClassicalTaggedArc,
    untagged_compatible: bool,
) -> bool {
    if !untagged_compatible {
        return false;
    }
    if a.same_untagged(b) {
        // Ends are matched by endpoint; boundary ends are always plain.
        return a
            .ends
            .iter()
            .zip(a.tags)
            .any(|(end, tag)| b.tag_at(*end) == Some(tag));
    }
    a.ends.iter().zip(a.tags).all(|(end, tag)| {
        b.ends
            .iter()
            .zip(b.tags)
            .filter(|(e, _)| *e == end)
            .all(|(_, t)| t == tag)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: u32, k: u32) -> PeripheralArc {
        PeripheralArc::new(s, k).unwrap()
    }

    #[test]
    fn clockwise_examples() {
        assert_eq!(clockwise_next(3, 5), Ok(2));
        assert_eq!(clockwise_next(1, 5), Ok(5));
        assert!(clockwise_next(0, 5).is_err());
        assert!(clockwise_next(6, 5).is_err());
        // twice on the ends of g(0,2,5) lands on the ends of g(0,1,4)
        let (s, t) = (2, 5);
        let (s, t) = (clockwise_next(s, 5).unwrap(), clockwise_next(t, 5).unwrap());
        assert_eq!((s, t), (1, 4));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(p(2, 3).tau(5), Ok(p(1, 3)));
        assert_eq!(p(1, 5).tau(5), Ok(p(5, 5)));
        let mut a = p(3, 7);
        for _ in 0..5 {
            a = a.tau(5).unwrap();
        }
        assert_eq!(a, p(3, 7));
        assert_eq!(p(1, 3).tau(5).unwrap().tau_inverse(5), Ok(p(1, 3)));
    }

    #[test]
    fn gamma_notation_examples() {
        let g = |l, s, t| GammaLabel { l, s, t };
        assert_eq!(p(1, 3).to_gamma(5), Ok(g(0, 1, 4)));
        assert_eq!(p(5, 5).to_gamma(5), Ok(g(1, 5, 5)));
        assert_eq!(p(2, 7).to_gamma(5), Ok(g(1, 2, 4)));
        assert_eq!(PeripheralArc::from_gamma(0, 1, 3, 5), Ok(p(1, 2)));
        assert_eq!(
            PeripheralArc::from_gamma(0, 1, 2, 5),
            Err(SurfaceError::ForbiddenGamma { l: 0, s: 1, t: 2 })
        );
        assert!(PeripheralArc::from_gamma(0, 5, 1, 5).is_err());
        assert!(PeripheralArc::from_gamma(0, 3, 3, 5).is_err());
        assert_eq!(PeripheralArc::from_gamma(1, 3, 3, 5), Ok(p(3, 5)));
        assert_eq!(PeripheralArc::from_gamma(1, 3, 4, 5), Ok(p(3, 6)));
        assert!(PeripheralArc::from_gamma(0, 6, 1, 5).is_err());
        assert_eq!(g(0, 1, 4).to_string(), "g(0,1,4)");
    }

    #[test]
    fn arc_construction_limits() {
        assert_eq!(
            PeripheralArc::new(1, 1),
            Err(SurfaceError::ArcTooShort { k: 1 })
        );
        assert!(PeripheralArc::new(0, 2).is_err());
        assert!(PeripheralArc::on_surface(6, 2, 5).is_err());
        assert!(Surface::new(1).is_err());
        assert_eq!(Surface::for_type_d(7).unwrap().t1_rank(), 5);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_arc(&p(1, 2)), ArcType::I);
        let bp = ClassicalTaggedArc::new(
            Endpoint::Boundary(2),
            Tag::Plain,
            Endpoint::Puncture(Puncture::P),
            Tag::Plain,
        );
        assert_eq!(classify_arc(&bp), ArcType::III);
        let bb = ClassicalTaggedArc::new(
            Endpoint::Boundary(1),
            Tag::Plain,
            Endpoint::Boundary(3),
            Tag::Plain,
        );
        assert_eq!(classify_arc(&bb), ArcType::II);
    }

    #[test]
    fn tagged_arc_validation() {
        let pl = ClassicalTaggedArc::new(
            Endpoint::Puncture(Puncture::P),
            Tag::Plain,
            Endpoint::Puncture(Puncture::P),
            Tag::Notched,
        );
        assert_eq!(
            validate_tagged_arc(&pl, None),
            vec![TaggedArcViolation::LoopTagsDiffer {
                end: Endpoint::Puncture(Puncture::P)
            }]
        );
        let notched_boundary = ClassicalTaggedArc::new(
            Endpoint::Boundary(1),
            Tag::Notched,
            Endpoint::Puncture(Puncture::Q),
            Tag::Plain,
        );
        assert_eq!(validate_tagged_arc(&notched_boundary, Some(5)).len(), 1);
        let ok = ClassicalTaggedArc::new(
            Endpoint::Boundary(1),
            Tag::Plain,
            Endpoint::Puncture(Puncture::Q),
            Tag::Notched,
        );
        assert!(validate_tagged_arc(&ok, Some(5)).is_empty());
        let monogon = ClassicalTaggedArc::monogon_loop(Endpoint::Boundary(2), Puncture::P);
        assert_eq!(
            validate_tagged_arc(&monogon, Some(5)),
            vec![TaggedArcViolation::CutsOutPuncturedMonogon {
                end: Endpoint::Boundary(2),
                puncture: Puncture::P
            }]
        );
        let around_q = ClassicalTaggedArc::new(
            Endpoint::Puncture(Puncture::P),
            Tag::Notched,
            Endpoint::Puncture(Puncture::P),
            Tag::Notched,
        );
        assert!(validate_tagged_arc(&around_q, Some(5)).is_empty());
        // both problems reported at once
        let bad = ClassicalTaggedArc::new(
            Endpoint::Boundary(9),
            Tag::Notched,
            Endpoint::Puncture(Puncture::Q),
            Tag::Plain,
        );
        assert_eq!(validate_tagged_arc(&bad, Some(5)).len(), 2);
    }

    #[test]
    fn compatibility_clauses() {
        let pq = |tp, tq| {
            ClassicalTaggedArc::new(
                Endpoint::Puncture(Puncture::P),
                tp,
                Endpoint::Puncture(Puncture::Q),
                tq,
            )
        };
        use Tag::*;
        assert!(!tagged_compatible(
            &pq(Plain, Plain),
            &pq(Notched, Notched),
            true
        ));
        assert!(tagged_compatible(
            &pq(Plain, Plain),
            &pq(Plain, Notched),
            true
        ));
        assert!(!tagged_compatible(
            &pq(Plain, Plain),
            &pq(Plain, Plain),
            false
        ));
        // same arc written from the other end
        let qp = ClassicalTaggedArc::new(
            Endpoint::Puncture(Puncture::Q),
            Notched,
            Endpoint::Puncture(Puncture::P),
            Notched,
        );
        assert!(!tagged_compatible(&pq(Plain, Plain), &qp, true));
        assert!(tagged_compatible(&pq(Notched, Plain), &qp, true));

        // different arcs sharing the puncture P
        let bp = |t| {
            ClassicalTaggedArc::new(
                Endpoint::Boundary(1),
                Plain,
                Endpoint::Puncture(Puncture::P),
                t,
            )
        };
        assert!(tagged_compatible(&bp(Plain), &pq(Plain, Notched), true));
        assert!(!tagged_compatible(&bp(Notched), &pq(Plain, Notched), true));
        // distinct arcs that share only a boundary point
        let b2 = ClassicalTaggedArc::new(
            Endpoint::Boundary(1),
            Plain,
            Endpoint::Puncture(Puncture::Q),
            Notched,
        );
        assert!(tagged_compatible(&bp(Notched), &b2, true));
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(
            untagged_crossing_simple_peripheral(p(1, 2), p(2, 2), 7),
            Ok(true)
        );
        assert_eq!(
            untagged_crossing_simple_peripheral(p(1, 2), p(4, 2), 7),
            Ok(false)
        );
        assert_eq!(
            untagged_crossing_simple_peripheral(p(1, 2), p(3, 2), 7),
            Ok(false)
        );
        assert_eq!(
            untagged_crossing_simple_peripheral(p(1, 4), p(2, 2), 7),
            Ok(false)
        );
        assert!(matches!(
            untagged_crossing_simple_peripheral(p(1, 7), p(2, 2), 7),
            Err(SurfaceError::WrappedArc { .. })
        ));
    }
}
