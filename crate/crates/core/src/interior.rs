//! Interior arcs: generalized tagged arcs between the two punctures, allowed
//! to cut out a once-punctured monogon when their ends are tagged differently.
//!
//! Arcs are written `[x,y]` with `x, y` points in the universal cover of a
//! cylinder. Odd positions are lifts of `P`, even positions lifts of `Q`, and
//! a trailing `*` marks a notched end. Every arc has a unique canonical form:
//!
//! - `x.pos` is `0` or `1` and `y.pos > x.pos`;
//! - a `P`–`Q` arc has `x.pos == 0` exactly when its two tags agree;
//! - a loop (both ends over the same puncture) has differently tagged ends.
//!
//! The canonical arcs are the vertices of the translation quiver whose two
//! components are the rank-2 tubes; [`successors`], [`predecessors`] and
//! [`tau`] give its local structure.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::surface::{ArcType, Classify, Puncture, Tag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InteriorError {
    #[error("arc {0} is contractible")]
    Contractible(RawInteriorArc),
    #[error("loop {0} has equally tagged ends")]
    InvalidLoopTags(RawInteriorArc),
}

/// A tagged point of the universal cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CylEnd {
    pub pos: i64,
    pub tag: Tag,
}

impl CylEnd {
    pub const fn new(pos: i64, tag: Tag) -> Self {
        Self { pos, tag }
    }

    pub const fn plain(pos: i64) -> Self {
        Self::new(pos, Tag::Plain)
    }

    pub const fn notched(pos: i64) -> Self {
        Self::new(pos, Tag::Notched)
    }

    pub fn flip(self) -> Self {
        Self::new(self.pos, self.tag.flip())
    }

    pub fn shift(self, by: i64) -> Self {
        Self::new(self.pos + by, self.tag)
    }

    pub fn puncture(self) -> Puncture {
        if self.pos.rem_euclid(2) == 1 {
            Puncture::P
        } else {
            Puncture::Q
        }
    }
}

impl PartialOrd for CylEnd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CylEnd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.pos, self.tag).cmp(&(other.pos, other.tag))
    }
}

impl fmt::Display for CylEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pos)?;
        if self.tag.is_notched() {
            f.write_str("*")?;
        }
        Ok(())
    }
}

/// An arc as written, before normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RawInteriorArc {
    pub a: CylEnd,
    pub b: CylEnd,
}

impl RawInteriorArc {
    pub const fn new(a: CylEnd, b: CylEnd) -> Self {
        Self { a, b }
    }
}

impl fmt::Display for RawInteriorArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// Which of the two tubes an interior arc lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Component {
    Gamma0,
    Gamma1,
}

impl Component {
    pub fn index(self) -> u8 {
        match self {
            Component::Gamma0 => 0,
            Component::Gamma1 => 1,
        }
    }

    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(Component::Gamma0),
            1 => Some(Component::Gamma1),
            _ => None,
        }
    }
}

/// An interior arc in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InteriorArc {
    x: CylEnd,
    y: CylEnd,
}

impl InteriorArc {
    /// Builds an arc that is already canonical, or `None`.
    pub fn canonical(x: CylEnd, y: CylEnd) -> Option<Self> {
        let arc = Self { x, y };
        arc.is_canonical().then_some(arc)
    }

    fn is_canonical(&self) -> bool {
        let (x, y) = (self.x, self.y);
        if !(x.pos == 0 || x.pos == 1) || y.pos <= x.pos {
            return false;
        }
        if (y.pos - x.pos) % 2 == 1 {
            (x.tag == y.tag) == (x.pos == 0)
        } else {
            x.tag != y.tag
        }
    }

    pub fn x(&self) -> CylEnd {
        self.x
    }

    pub fn y(&self) -> CylEnd {
        self.y
    }

    pub fn raw(&self) -> RawInteriorArc {
        RawInteriorArc::new(self.x, self.y)
    }

    pub fn winding(&self) -> u32 {
        ((self.y.pos - self.x.pos) / 2) as u32
    }

    pub fn endpoint_punctures(&self) -> (Puncture, Puncture) {
        (self.x.puncture(), self.y.puncture())
    }

    pub fn is_loop(&self) -> bool {
        (self.y.pos - self.x.pos) % 2 == 0
    }

    /// Distance from the mouth of the tube, starting at 1.
    pub fn level(&self) -> u32 {
        (self.y.pos - self.x.pos) as u32
    }

    pub fn component(&self) -> Component {
        if self.x.pos == 0 {
            Component::Gamma0
        } else {
            Component::Gamma1
        }
    }

    /// Flips both tags. Canonical arcs stay canonical, so no rewriting is needed.
    pub fn tau(&self) -> Self {
        Self {
            x: self.x.flip(),
            y: self.y.flip(),
        }
    }

    pub fn successors(&self) -> Vec<Self> {
        let (x, y) = (self.x, self.y);
        let candidates = match self.component() {
            Component::Gamma0 => [(x, y.flip().shift(1)), (x.flip(), y.shift(-1))],
            Component::Gamma1 => [(x, y.shift(1)), (x.flip(), y.flip().shift(-1))],
        };
        Self::keep_non_contractible(candidates)
    }

    pub fn predecessors(&self) -> Vec<Self> {
        let (x, y) = (self.x, self.y);
        let candidates = match self.component() {
            Component::Gamma0 => [(x, y.flip().shift(-1)), (x.flip(), y.shift(1))],
            Component::Gamma1 => [(x, y.shift(-1)), (x.flip(), y.flip().shift(1))],
        };
        Self::keep_non_contractible(candidates)
    }

    fn keep_non_contractible(candidates: [(CylEnd, CylEnd); 2]) -> Vec<Self> {
        candidates
            .into_iter()
            .filter(|(x, y)| x.pos != y.pos)
            .map(|(x, y)| {
                let arc = Self { x, y };
                debug_assert!(arc.is_canonical(), "arrow rule produced {arc}");
                arc
            })
            .collect()
    }
}

impl fmt::Display for InteriorArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.x, self.y)
    }
}

impl From<InteriorArc> for RawInteriorArc {
    fn from(arc: InteriorArc) -> Self {
        arc.raw()
    }
}

impl Classify for InteriorArc {
    fn arc_type(&self) -> ArcType {
        ArcType::IV
    }
}

impl Classify for RawInteriorArc {
    fn arc_type(&self) -> ArcType {
        ArcType::IV
    }
}

/// Rewrites an arc into canonical form.
///
/// Ends are ordered by position, both ends are shifted by the same even
/// amount so the left end sits at 0 or 1, and a `P`–`Q` arc is then moved
/// by one more step if needed, carrying each tag with its puncture.
pub fn normalize(raw: RawInteriorArc) -> Result<InteriorArc, InteriorError> {
    let (mut x, mut y) = if raw.a.pos <= raw.b.pos {
        (raw.a, raw.b)
    } else {
        (raw.b, raw.a)
    };
    if x.pos == y.pos {
        return Err(InteriorError::Contractible(raw));
    }
    let shift = -2 * x.pos.div_euclid(2);
    x = x.shift(shift);
    y = y.shift(shift);

    if (y.pos - x.pos) % 2 == 1 {
        let want_left = if x.tag == y.tag { 0 } else { 1 };
        if x.pos != want_left {
            // An odd shift exchanges which end lies over P, so the tags swap.
            let by = want_left - x.pos;
            let (tx, ty) = (x.tag, y.tag);
            x = CylEnd::new(x.pos + by, ty);
            y = CylEnd::new(y.pos + by, tx);
        }
    } else if x.tag == y.tag {
        return Err(InteriorError::InvalidLoopTags(raw));
    }
    let arc = InteriorArc { x, y };
    debug_assert!(arc.is_canonical());
    Ok(arc)
}

pub fn equivalent(a: RawInteriorArc, b: RawInteriorArc) -> Result<bool, InteriorError> {
    Ok(normalize(a)? == normalize(b)?)
}

pub fn winding(arc: &InteriorArc) -> u32 {
    arc.winding()
}

pub fn endpoint_punctures(arc: &InteriorArc) -> (Puncture, Puncture) {
    arc.endpoint_punctures()
}

pub fn tau(arc: &InteriorArc) -> InteriorArc {
    arc.tau()
}

pub fn successors(arc: &InteriorArc) -> Vec<InteriorArc> {
    arc.successors()
}

pub fn predecessors(arc: &InteriorArc) -> Vec<InteriorArc> {
    arc.predecessors()
}

pub fn level(arc: &InteriorArc) -> u32 {
    arc.level()
}

pub fn component(arc: &InteriorArc) -> Component {
    arc.component()
}

/// The four quasi-simple arcs: `[0,1]`, `[0*,1*]`, `[1*,2]`, `[1,2*]`.
pub fn mouth_arcs() -> [InteriorArc; 4] {
    let arc = |x, y| InteriorArc { x, y };
    [
        arc(CylEnd::plain(0), CylEnd::plain(1)),
        arc(CylEnd::notched(0), CylEnd::notched(1)),
        arc(CylEnd::notched(1), CylEnd::plain(2)),
        arc(CylEnd::plain(1), CylEnd::notched(2)),
    ]
}

/// The two canonical arcs of `component` at `level`, listed so that the
/// second is the translate of the first.
pub fn census(component: Component, level: u32) -> [InteriorArc; 2] {
    assert!(level >= 1, "levels start at 1");
    let left = component.index() as i64;
    let right = left + level as i64;
    let first = match (component, level % 2 == 1) {
        // P–Q arcs with agreeing tags, or loops at Q
        (Component::Gamma0, true) => (CylEnd::plain(0), CylEnd::plain(right)),
        (Component::Gamma0, false) => (CylEnd::plain(0), CylEnd::notched(right)),
        // P–Q arcs with differing tags, or loops at P
        (Component::Gamma1, _) => (CylEnd::notched(left), CylEnd::plain(right)),
    };
    let arc = InteriorArc {
        x: first.0,
        y: first.1,
    };
    [arc, arc.tau()]
}
