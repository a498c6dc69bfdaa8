//! Finite quivers, translation quivers, and the quiver of a triangulation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("arrow endpoint {0} is not a vertex")]
    MissingVertex(String),
    #[error("translation is not injective: {0} is hit twice")]
    NotInjective(String),
    #[error("vertex {0} is outside the domain of the translation")]
    OutsideDomain(String),
    #[error("bound must be at least 1")]
    ZeroBound,
}

/// A finite quiver. Arrows form a multiset and keep insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver<V: Ord> {
    vertices: BTreeSet<V>,
    arrows: Vec<(V, V)>,
}

impl<V: Ord> Default for Quiver<V> {
    fn default() -> Self {
        Self {
            vertices: BTreeSet::new(),
            arrows: Vec::new(),
        }
    }
}

impl<V: Ord + Clone + Debug> Quiver<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_parts(
        vertices: impl IntoIterator<Item = V>,
        arrows: impl IntoIterator<Item = (V, V)>,
    ) -> Result<Self, QuiverError> {
        let mut q = Self::new();
        for v in vertices {
            q.add_vertex(v);
        }
        for (a, b) in arrows {
            q.add_arrow(a, b)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, v: V) -> bool {
        self.vertices.insert(v)
    }

    pub fn add_arrow(&mut self, from: V, to: V) -> Result<(), QuiverError> {
        for v in [&from, &to] {
            if !self.vertices.contains(v) {
                return Err(QuiverError::MissingVertex(format!("{v:?}")));
            }
        }
        self.arrows.push((from, to));
        Ok(())
    }

    /// Removes one copy of `from -> to`; returns whether one was present.
    pub fn remove_arrow(&mut self, from: &V, to: &V) -> bool {
        match self.arrows.iter().position(|(a, b)| a == from && b == to) {
            Some(i) => {
                self.arrows.remove(i);
                true
            }
            None => false,
        }
    }

    pub fn vertices(&self) -> &BTreeSet<V> {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(V, V)] {
        &self.arrows
    }

    pub fn contains(&self, v: &V) -> bool {
        self.vertices.contains(v)
    }

    pub fn arrow_count(&self, from: &V, to: &V) -> usize {
        self.arrows
            .iter()
            .filter(|(a, b)| a == from && b == to)
            .count()
    }

    /// Heads of arrows leaving `v`, with multiplicity, sorted.
    pub fn successors(&self, v: &V) -> Vec<V> {
        let mut out: Vec<V> = self
            .arrows
            .iter()
            .filter(|(a, _)| a == v)
            .map(|(_, b)| b.clone())
            .collect();
        out.sort();
        out
    }

    /// Tails of arrows entering `v`, with multiplicity, sorted.
    pub fn predecessors(&self, v: &V) -> Vec<V> {
        let mut out: Vec<V> = self
            .arrows
            .iter()
            .filter(|(_, b)| b == v)
            .map(|(a, _)| a.clone())
            .collect();
        out.sort();
        out
    }

    /// Arrows as a sorted multiset, for order-insensitive comparison.
    pub fn arrow_multiset(&self) -> Vec<(V, V)> {
        let mut arrows = self.arrows.clone();
        arrows.sort();
        arrows
    }

    pub fn has_two_cycle(&self) -> bool {
        self.arrows
            .iter()
            .any(|(a, b)| a != b && self.arrow_count(b, a) > 0)
    }

    /// Restriction to a vertex subset, keeping arrows between kept vertices.
    pub fn induced(&self, keep: &BTreeSet<V>) -> Self {
        Self {
            vertices: self.vertices.intersection(keep).cloned().collect(),
            arrows: self
                .arrows
                .iter()
                .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                .cloned()
                .collect(),
        }
    }

    pub fn map_labels<W: Ord + Clone + Debug>(&self, f: impl Fn(&V) -> W) -> Quiver<W> {
        Quiver {
            vertices: self.vertices.iter().map(&f).collect(),
            arrows: self.arrows.iter().map(|(a, b)| (f(a), f(b))).collect(),
        }
    }
}

/// Cancels opposite arrow pairs: for every `{i, j}` the smaller of the two
/// multiplicities is removed from both directions.
pub fn remove_two_cycles<V: Ord + Clone + Debug>(q: &Quiver<V>) -> Quiver<V> {
    let mut count: BTreeMap<(&V, &V), usize> = BTreeMap::new();
    for (a, b) in &q.arrows {
        *count.entry((a, b)).or_default() += 1;
    }
    let mut to_cancel: BTreeMap<(&V, &V), usize> = BTreeMap::new();
    for (&(a, b), &c) in &count {
        if a != b {
            let back = count.get(&(b, a)).copied().unwrap_or(0);
            to_cancel.insert((a, b), c.min(back));
        }
    }
    let mut arrows = Vec::with_capacity(q.arrows.len());
    for (a, b) in &q.arrows {
        match to_cancel.get_mut(&(a, b)) {
            Some(n) if *n > 0 => *n -= 1,
            _ => arrows.push((a.clone(), b.clone())),
        }
    }
    Quiver {
        vertices: q.vertices.clone(),
        arrows,
    }
}

/// Weakly connected components, ordered by their smallest vertex.
pub fn connected_components<V: Ord + Clone + Debug>(q: &Quiver<V>) -> Vec<BTreeSet<V>> {
    let mut adjacent: BTreeMap<&V, Vec<&V>> = q.vertices.iter().map(|v| (v, Vec::new())).collect();
    for (a, b) in &q.arrows {
        adjacent.entry(a).or_default().push(b);
        adjacent.entry(b).or_default().push(a);
    }
    let mut seen: BTreeSet<&V> = BTreeSet::new();
    let mut parts = Vec::new();
    for start in &q.vertices {
        if !seen.insert(start) {
            continue;
        }
        let mut part = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            part.insert(v.clone());
            for w in &adjacent[v] {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        parts.push(part);
    }
    parts
}

/// A quiver with a partial injective translation.
///
/// `frontier` lists vertices whose neighbourhood may extend beyond the
/// stored vertices (the top row of a truncated tube); checks that need a
/// full neighbourhood skip them and report them as unchecked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationQuiver<V: Ord> {
    quiver: Quiver<V>,
    translation: BTreeMap<V, V>,
    frontier: BTreeSet<V>,
}

impl<V: Ord + Clone + Debug> TranslationQuiver<V> {
    pub fn new(quiver: Quiver<V>, translation: BTreeMap<V, V>) -> Result<Self, QuiverError> {
        Self::with_frontier(quiver, translation, BTreeSet::new())
    }

    pub fn with_frontier(
        quiver: Quiver<V>,
        translation: BTreeMap<V, V>,
        frontier: BTreeSet<V>,
    ) -> Result<Self, QuiverError> {
        let mut image = BTreeSet::new();
        for (v, w) in &translation {
            for u in [v, w] {
                if !quiver.contains(u) {
                    return Err(QuiverError::MissingVertex(format!("{u:?}")));
                }
            }
            if !image.insert(w) {
                return Err(QuiverError::NotInjective(format!("{w:?}")));
            }
        }
        if let Some(v) = frontier.iter().find(|v| !quiver.contains(v)) {
            return Err(QuiverError::MissingVertex(format!("{v:?}")));
        }
        Ok(Self {
            quiver,
            translation,
            frontier,
        })
    }

    pub fn quiver(&self) -> &Quiver<V> {
        &self.quiver
    }

    pub fn quiver_mut(&mut self) -> &mut Quiver<V> {
        &mut self.quiver
    }

    pub fn translation(&self) -> &BTreeMap<V, V> {
        &self.translation
    }

    pub fn frontier(&self) -> &BTreeSet<V> {
        &self.frontier
    }

    pub fn tau(&self, v: &V) -> Option<&V> {
        self.translation.get(v)
    }

    /// Same quiver and translation with every vertex treated as complete.
    pub fn without_frontier(mut self) -> Self {
        self.frontier.clear();
        self
    }

    pub fn map_labels<W: Ord + Clone + Debug>(&self, f: impl Fn(&V) -> W) -> TranslationQuiver<W> {
        TranslationQuiver {
            quiver: self.quiver.map_labels(&f),
            translation: self.translation.iter().map(|(a, b)| (f(a), f(b))).collect(),
            frontier: self.frontier.iter().map(&f).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomFailure<V> {
    pub vertex: V,
    pub predecessors: Vec<V>,
    pub translate_successors: Vec<V>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport<V> {
    pub checked: usize,
    pub unchecked: Vec<V>,
    pub failures: Vec<AxiomFailure<V>>,
}

impl<V> StabilityReport<V> {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that the predecessors of `v` equal the successors of `tau(v)`, as
/// multisets, at every translated vertex away from the frontier.
pub fn is_stable_translation_quiver<V: Ord + Clone + Debug>(
    tq: &TranslationQuiver<V>,
) -> StabilityReport<V> {
    let mut report = StabilityReport {
        checked: 0,
        unchecked: Vec::new(),
        failures: Vec::new(),
    };
    for (v, tv) in &tq.translation {
        if tq.frontier.contains(v) || tq.frontier.contains(tv) {
            report.unchecked.push(v.clone());
            continue;
        }
        report.checked += 1;
        let predecessors = tq.quiver.predecessors(v);
        let translate_successors = tq.quiver.successors(tv);
        if predecessors != translate_successors {
            report.failures.push(AxiomFailure {
                vertex: v.clone(),
                predecessors,
                translate_successors,
            });
        }
    }
    report
}

/// Least `p <= bound` with `tau^p(v) == v`.
pub fn tau_period<V: Ord + Clone + Debug>(
    tq: &TranslationQuiver<V>,
    v: &V,
    bound: usize,
) -> Result<Option<usize>, QuiverError> {
    if bound == 0 {
        return Err(QuiverError::ZeroBound);
    }
    let mut cur = tq
        .tau(v)
        .ok_or_else(|| QuiverError::OutsideDomain(format!("{v:?}")))?;
    for p in 1..=bound {
        if cur == v {
            return Ok(Some(p));
        }
        match tq.tau(cur) {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TubeReport<V> {
    pub is_tube: bool,
    pub rank: Option<usize>,
    pub mouth: BTreeSet<V>,
    pub problems: Vec<String>,
}

/// Decides whether `component` looks like a (truncated) tube.
///
/// The mouth is the set of non-frontier vertices with a single successor
/// inside the component. A tube needs every mouth vertex to have the same
/// translation period `r`, exactly `r` mouth vertices, two successors and two
/// predecessors at every other non-frontier vertex, and a consistent level
/// grading by distance to the mouth.
pub fn tube_report<V: Ord + Clone + Debug>(
    tq: &TranslationQuiver<V>,
    component: &BTreeSet<V>,
) -> TubeReport<V> {
    let q = tq.quiver.induced(component);
    let mut problems = Vec::new();
    let interior: BTreeSet<&V> = component
        .iter()
        .filter(|v| !tq.frontier.contains(*v))
        .collect();

    let mouth: BTreeSet<V> = interior
        .iter()
        .filter(|v| q.successors(v).len() == 1)
        .map(|v| (*v).clone())
        .collect();
    if mouth.is_empty() {
        problems.push("no mouth vertex".to_string());
    }

    let mut periods = BTreeSet::new();
    for v in &mouth {
        match tau_period(tq, v, component.len().max(1)) {
            Ok(Some(p)) => {
                periods.insert(p);
            }
            _ => problems.push(format!("{v:?} is not translation-periodic")),
        }
    }
    let rank = match periods.len() {
        1 => periods.iter().next().copied(),
        0 => None,
        _ => {
            problems.push(format!("mouth periods disagree: {periods:?}"));
            None
        }
    };
    if let Some(r) = rank {
        if mouth.len() != r {
            problems.push(format!("{} mouth vertices for rank {r}", mouth.len()));
        }
    }

    for v in &interior {
        let (out, inc) = (q.successors(v).len(), q.predecessors(v).len());
        let want = if mouth.contains(*v) { 1 } else { 2 };
        if out != want || inc != want {
            problems.push(format!("{v:?} has {out} successors and {inc} predecessors"));
        }
    }

    // Level grading: breadth-first distance from the mouth, ignoring direction.
    let mut dist: BTreeMap<&V, usize> = mouth.iter().map(|v| (v, 0)).collect();
    let mut queue: VecDeque<&V> = mouth.iter().collect();
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        for (a, b) in q.arrows() {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !dist.contains_key(w) {
                dist.insert(w, d + 1);
                queue.push_back(w);
            }
        }
    }
    if dist.len() != component.len() && !mouth.is_empty() {
        problems.push("some vertices are not connected to the mouth".to_string());
    }
    for (a, b) in q.arrows() {
        if let (Some(da), Some(db)) = (dist.get(a), dist.get(b)) {
            if da.abs_diff(*db) != 1 {
                problems.push(format!("arrow {a:?} -> {b:?} does not change level by one"));
            }
        }
    }
    for (v, tv) in &tq.translation {
        if let (Some(dv), Some(dt)) = (dist.get(v), dist.get(tv)) {
            if dv != dt {
                problems.push(format!("translation moves {v:?} off its level"));
            }
        }
    }

    TubeReport {
        is_tube: problems.is_empty(),
        rank,
        mouth,
        problems,
    }
}

/// One side of a triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Arc(u32),
    Boundary(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    /// Sides in clockwise order.
    pub sides: [Side; 3],
}

impl Triangle {
    pub fn new(sides: [Side; 3]) -> Self {
        Self { sides }
    }

    pub fn of_arcs(a: u32, b: u32, c: u32) -> Self {
        Self::new([Side::Arc(a), Side::Arc(b), Side::Arc(c)])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfFolded {
    pub radius: u32,
    #[serde(rename = "loop")]
    pub loop_arc: u32,
}

/// A triangulation given combinatorially. Self-folded triangles appear only
/// in `self_folded`; `triangles` lists the remaining ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangulation {
    pub m: u32,
    pub arcs: Vec<u32>,
    pub triangles: Vec<Triangle>,
    #[serde(default)]
    pub self_folded: Vec<SelfFolded>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangulationError {
    #[error("arc id {0} is listed twice")]
    DuplicateArc(u32),
    #[error("triangle {triangle}: unknown arc {arc}")]
    UnknownArc { triangle: usize, arc: u32 },
    #[error("triangle {triangle}: arc {arc} appears on two of its sides")]
    RepeatedSide { triangle: usize, arc: u32 },
    #[error("triangle {triangle}: boundary segment {segment} is outside 1..={m}")]
    BoundaryOutOfRange {
        triangle: usize,
        segment: u32,
        m: u32,
    },
    #[error("triangle {triangle}: boundary segment {segment} already bounds another triangle")]
    BoundaryReused { triangle: usize, segment: u32 },
    #[error("triangle {triangle}: arc {arc} is the radius of a self-folded triangle")]
    RadiusInTriangle { triangle: usize, arc: u32 },
    #[error("triangle {triangle}: arc {arc} occurs in more than {allowed} triangle sides")]
    ArcOverused {
        triangle: usize,
        arc: u32,
        allowed: usize,
    },
    #[error("self-folded triangle {index}: unknown arc {arc}")]
    SelfFoldedUnknownArc { index: usize, arc: u32 },
    #[error("self-folded triangle {index}: radius and loop are both {arc}")]
    DegenerateSelfFolded { index: usize, arc: u32 },
    #[error(
        "self-folded triangle {index}: arc {arc} already belongs to another self-folded triangle"
    )]
    SelfFoldedOverlap { index: usize, arc: u32 },
}

impl Triangulation {
    pub fn validate(&self) -> Result<(), TriangulationError> {
        let mut arcs = BTreeSet::new();
        for &a in &self.arcs {
            if !arcs.insert(a) {
                return Err(TriangulationError::DuplicateArc(a));
            }
        }
        let mut radii = BTreeSet::new();
        let mut loops = BTreeSet::new();
        for (index, sf) in self.self_folded.iter().enumerate() {
            for arc in [sf.radius, sf.loop_arc] {
                if !arcs.contains(&arc) {
                    return Err(TriangulationError::SelfFoldedUnknownArc { index, arc });
                }
                if radii.contains(&arc) || loops.contains(&arc) {
                    return Err(TriangulationError::SelfFoldedOverlap { index, arc });
                }
            }
            if sf.radius == sf.loop_arc {
                return Err(TriangulationError::DegenerateSelfFolded {
                    index,
                    arc: sf.radius,
                });
            }
            radii.insert(sf.radius);
            loops.insert(sf.loop_arc);
        }

        let mut uses: BTreeMap<u32, usize> = BTreeMap::new();
        let mut segments = BTreeSet::new();
        for (triangle, t) in self.triangles.iter().enumerate() {
            let mut in_this = BTreeSet::new();
            for side in t.sides {
                match side {
                    Side::Arc(arc) => {
                        if !arcs.contains(&arc) {
                            return Err(TriangulationError::UnknownArc { triangle, arc });
                        }
                        if radii.contains(&arc) {
                            return Err(TriangulationError::RadiusInTriangle { triangle, arc });
                        }
                        if !in_this.insert(arc) {
                            return Err(TriangulationError::RepeatedSide { triangle, arc });
                        }
                        let allowed = if loops.contains(&arc) { 1 } else { 2 };
                        let n = uses.entry(arc).or_default();
                        *n += 1;
                        if *n > allowed {
                            return Err(TriangulationError::ArcOverused {
                                triangle,
                                arc,
                                allowed,
                            });
                        }
                    }
                    Side::Boundary(segment) => {
                        if segment == 0 || segment > self.m {
                            return Err(TriangulationError::BoundaryOutOfRange {
                                triangle,
                                segment,
                                m: self.m,
                            });
                        }
                        if !segments.insert(segment) {
                            return Err(TriangulationError::BoundaryReused { triangle, segment });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Arrows drawn inside the ordinary triangles, before any substitution
    /// or cancellation.
    pub fn angle_arrows(&self) -> Vec<(u32, u32)> {
        let mut arrows = Vec::new();
        for t in &self.triangles {
            for i in 0..3 {
                if let (Side::Arc(a), Side::Arc(b)) = (t.sides[i], t.sides[(i + 1) % 3]) {
                    arrows.push((a, b));
                }
            }
        }
        arrows
    }
}

/// Builds the quiver of a triangulation.
///
/// Each clockwise angle between two arcs of an ordinary triangle gives an
/// arrow; each self-folded radius copies the arrows of its loop, pairs taken
/// in input order and each seeing the arrows added before it; finally all
/// 2-cycles are cancelled.
pub fn quiver_from_triangulation(t: &Triangulation) -> Result<Quiver<u32>, TriangulationError> {
    t.validate()?;
    let mut arrows = t.angle_arrows();
    for sf in &t.self_folded {
        let (radius, lp) = (sf.radius, sf.loop_arc);
        let copied: Vec<(u32, u32)> = arrows
            .iter()
            .filter_map(|&(a, b)| match (a == lp, b == lp) {
                (true, false) => Some((radius, b)),
                (false, true) => Some((a, radius)),
                _ => None,
            })
            .collect();
        arrows.extend(copied);
    }
    let q = Quiver::from_parts(t.arcs.iter().copied(), arrows)
        .expect("validated triangulation only references its own arcs");
    Ok(remove_two_cycles(&q))
}
