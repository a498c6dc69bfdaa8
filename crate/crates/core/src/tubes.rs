//! Truncated windows of the three exceptional tubes: `T1` over peripheral
//! arcs, and the two rank-2 tubes `Γ0`, `Γ1` over interior arcs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Debug};

use crate::interior::{census, mouth_arcs, Component, InteriorArc};
use crate::quiver::{
    connected_components, is_stable_translation_quiver, tau_period, tube_report, Quiver,
    TranslationQuiver,
};
use crate::surface::{PeripheralArc, SurfaceError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TubeKind {
    T1 { m: u32 },
    Gamma0,
    Gamma1,
}

impl fmt::Display for TubeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TubeKind::T1 { m } => write!(f, "T1(m={m})"),
            TubeKind::Gamma0 => f.write_str("Gamma0"),
            TubeKind::Gamma1 => f.write_str("Gamma1"),
        }
    }
}

/// All vertices of a tube up to `max_level`, with the arrows between them.
///
/// Vertices on the top level form the frontier: their upward arrows are cut.
#[derive(Debug, Clone)]
pub struct TubeWindow<V: Ord> {
    pub tq: TranslationQuiver<V>,
    pub level_of: BTreeMap<V, u32>,
    pub max_level: u32,
    pub kind: TubeKind,
}

impl<V: Ord + Clone + Debug> TubeWindow<V> {
    pub fn vertices_at(&self, level: u32) -> Vec<V> {
        self.level_of
            .iter()
            .filter(|(_, &l)| l == level)
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.level_of.len()
    }

    /// Vertices with exactly one successor inside the window, top level excluded.
    pub fn mouth(&self) -> BTreeSet<V> {
        let q = self.tq.quiver();
        q.vertices()
            .iter()
            .filter(|v| !self.tq.frontier().contains(*v) && q.successors(v).len() == 1)
            .cloned()
            .collect()
    }

    /// Checks that every arrow changes the level by exactly one.
    pub fn grading_consistent(&self) -> bool {
        self.tq
            .quiver()
            .arrows()
            .iter()
            .all(|(a, b)| self.level_of[a].abs_diff(self.level_of[b]) == 1)
    }
}

/// The tube over peripheral arcs on a disk with `m` boundary points.
///
/// Vertex `p(s,k)` sits at level `k - 1`. Arrows extend the arc at its end,
/// `p(s,k) -> p(s,k+1)`, or retract it at its start, `p(s,k) -> p(s+1,k-1)`.
pub fn build_t1(m: u32, max_level: u32) -> Result<TubeWindow<PeripheralArc>, SurfaceError> {
    crate::surface::Surface::new(m)?;
    let top_k = max_level + 1;
    let mut quiver = Quiver::new();
    let mut level_of = BTreeMap::new();
    for s in 1..=m {
        for k in 2..=top_k {
            let v = PeripheralArc::on_surface(s, k, m)?;
            quiver.add_vertex(v);
            level_of.insert(v, v.level());
        }
    }
    let mut translation = BTreeMap::new();
    for v in level_of.keys().copied().collect::<Vec<_>>() {
        let (s, k) = (v.start(), v.span());
        if k < top_k {
            let up = PeripheralArc::on_surface(s, k + 1, m)?;
            quiver.add_arrow(v, up).expect("window vertex");
        }
        if k > 2 {
            let down = PeripheralArc::on_surface(s % m + 1, k - 1, m)?;
            quiver.add_arrow(v, down).expect("window vertex");
        }
        translation.insert(v, v.tau(m)?);
    }
    let frontier = level_of
        .iter()
        .filter(|(_, &l)| l == max_level)
        .map(|(v, _)| *v)
        .collect();
    let tq = TranslationQuiver::with_frontier(quiver, translation, frontier)
        .expect("window is closed under the translation");
    Ok(TubeWindow {
        tq,
        level_of,
        max_level,
        kind: TubeKind::T1 { m },
    })
}

/// The quasi-simples of `T1`: the arcs `p(s,2)` joining `s` and `s+2`.
pub fn quasi_simples_t1(m: u32) -> Result<Vec<PeripheralArc>, SurfaceError> {
    crate::surface::Surface::new(m)?;
    (1..=m)
        .map(|s| PeripheralArc::on_surface(s, 2, m))
        .collect()
}

/// One of the two rank-2 tubes, grown breadth-first from its mouth.
pub fn build_gamma(which: Component, max_level: u32) -> TubeWindow<InteriorArc> {
    let mut quiver = Quiver::new();
    let mut level_of = BTreeMap::new();
    let mut queue: VecDeque<InteriorArc> = VecDeque::new();
    if max_level >= 1 {
        for a in mouth_arcs().into_iter().filter(|a| a.component() == which) {
            quiver.add_vertex(a);
            level_of.insert(a, a.level());
            queue.push_back(a);
        }
    }
    while let Some(v) = queue.pop_front() {
        for w in v.successors() {
            if w.level() <= max_level && quiver.add_vertex(w) {
                level_of.insert(w, w.level());
                queue.push_back(w);
            }
        }
    }
    for v in level_of.keys() {
        for w in v.successors() {
            if level_of.contains_key(&w) {
                quiver.add_arrow(*v, w).expect("window vertex");
            }
        }
    }
    let translation = level_of.keys().map(|v| (*v, v.tau())).collect();
    let frontier = level_of
        .iter()
        .filter(|(_, &l)| l == max_level)
        .map(|(v, _)| *v)
        .collect();
    let tq = TranslationQuiver::with_frontier(quiver, translation, frontier)
        .expect("window is closed under the translation");
    TubeWindow {
        tq,
        level_of,
        max_level,
        kind: match which {
            Component::Gamma0 => TubeKind::Gamma0,
            Component::Gamma1 => TubeKind::Gamma1,
        },
    }
}

/// Vertices of a rank-2 window listed from the level formula instead of
/// by search.
pub fn gamma_census(which: Component, max_level: u32) -> BTreeSet<InteriorArc> {
    (1..=max_level).flat_map(|l| census(which, l)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub max_level: u32,
    pub checks: Vec<Check>,
    pub vertices_per_component: [usize; 2],
    /// Number of top levels that could not be checked in each window.
    pub unchecked_levels: u32,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }
}

/// Builds a level-preserving bijection between two windows by matching
/// their mouths in translation order and climbing along upward arrows.
pub fn level_isomorphism<A, B>(
    left: &TubeWindow<A>,
    right: &TubeWindow<B>,
) -> Option<BTreeMap<A, B>>
where
    A: Ord + Clone + Debug,
    B: Ord + Clone + Debug,
{
    if left.max_level != right.max_level || left.vertex_count() != right.vertex_count() {
        return None;
    }
    let mut map = BTreeMap::new();
    let start_l = left.vertices_at(1).into_iter().next()?;
    let start_r = right.vertices_at(1).into_iter().next()?;
    let (mut a, mut b) = (start_l.clone(), start_r.clone());
    loop {
        map.insert(a.clone(), b.clone());
        a = left.tq.tau(&a)?.clone();
        b = right.tq.tau(&b)?.clone();
        if a == start_l || b == start_r {
            if a != start_l || b != start_r {
                return None;
            }
            break;
        }
    }
    for level in 1..left.max_level {
        for a in left.vertices_at(level) {
            let b = map.get(&a)?.clone();
            match (up(left, &a), up(right, &b)) {
                (Some(ua), Some(ub)) => {
                    if let Some(prev) = map.insert(ua, ub.clone()) {
                        if prev != ub {
                            return None;
                        }
                    }
                }
                _ => return None,
            }
        }
    }
    (map.len() == left.vertex_count()).then_some(map)
}

fn up<V: Ord + Clone + Debug>(w: &TubeWindow<V>, v: &V) -> Option<V> {
    let l = w.level_of[v] + 1;
    w.tq.quiver()
        .successors(v)
        .into_iter()
        .find(|s| w.level_of[s] == l)
}

/// Whether `map` carries arrows onto arrows (both ways) and commutes with
/// the translations.
pub fn is_translation_isomorphism<A, B>(
    map: &BTreeMap<A, B>,
    left: &TranslationQuiver<A>,
    right: &TranslationQuiver<B>,
) -> bool
where
    A: Ord + Clone + Debug,
    B: Ord + Clone + Debug,
{
    let image: BTreeSet<&B> = map.values().collect();
    if image.len() != map.len() || map.len() != left.quiver().vertices().len() {
        return false;
    }
    if image.len() != right.quiver().vertices().len() {
        return false;
    }
    let mut mapped: Vec<(B, B)> = left
        .quiver()
        .arrows()
        .iter()
        .map(|(a, b)| (map[a].clone(), map[b].clone()))
        .collect();
    mapped.sort();
    if mapped != right.quiver().arrow_multiset() {
        return false;
    }
    left.translation()
        .iter()
        .all(|(v, tv)| right.tau(&map[v]) == Some(&map[tv]))
}

/// Structural check that the interior arcs form two rank-2 tubes.
pub fn verify_theorem(max_level: u32) -> TheoremReport {
    let mut report = TheoremReport {
        max_level,
        checks: Vec::new(),
        vertices_per_component: [0, 0],
        unchecked_levels: 1,
    };
    let windows = [
        build_gamma(Component::Gamma0, max_level),
        build_gamma(Component::Gamma1, max_level),
    ];
    report.vertices_per_component = [windows[0].vertex_count(), windows[1].vertex_count()];

    let (v0, v1) = (
        windows[0].tq.quiver().vertices(),
        windows[1].tq.quiver().vertices(),
    );
    report.check(
        "disjoint components",
        v0.is_disjoint(v1),
        format!("{} + {} vertices", v0.len(), v1.len()),
    );

    for (i, w) in windows.iter().enumerate() {
        let which = Component::from_index(i as u8).expect("two components");
        let name = |what: &str| format!("Gamma{i} {what}");

        let census = gamma_census(which, max_level);
        report.check(
            &name("census"),
            &census == w.tq.quiver().vertices() && w.vertex_count() == 2 * max_level as usize,
            format!("{} vertices", w.vertex_count()),
        );

        let stability = is_stable_translation_quiver(&w.tq);
        report.check(
            &name("translation axiom"),
            stability.ok() && stability.checked > 0,
            format!(
                "{} checked, {} unchecked, {} failures",
                stability.checked,
                stability.unchecked.len(),
                stability.failures.len()
            ),
        );

        let parts = connected_components(w.tq.quiver());
        report.check(
            &name("connected"),
            parts.len() == 1,
            format!("{} parts", parts.len()),
        );

        let tube = tube_report(&w.tq, w.tq.quiver().vertices());
        let expected_mouth: BTreeSet<InteriorArc> = mouth_arcs()
            .into_iter()
            .filter(|a| a.component() == which)
            .collect();
        report.check(
            &name("rank-2 tube"),
            tube.is_tube && tube.rank == Some(2),
            format!("rank {:?}; {}", tube.rank, tube.problems.join("; ")),
        );
        report.check(
            &name("mouth"),
            tube.mouth == expected_mouth,
            format!("{} mouth vertices", tube.mouth.len()),
        );

        let periods_ok = w
            .level_of
            .keys()
            .all(|v| tau_period(&w.tq, v, 2).ok().flatten() == Some(2));
        report.check(&name("translation period 2"), periods_ok, "");
    }

    let iso = level_isomorphism(&windows[0], &windows[1]);
    let iso_ok = iso
        .as_ref()
        .is_some_and(|map| is_translation_isomorphism(map, &windows[0].tq, &windows[1].tq));
    report.check("Gamma0 isomorphic to Gamma1", iso_ok, "");

    if max_level < 2 {
        report.check("window height", false, "need at least two levels");
    }
    report
}

/// Structural checks on a `T1` window: translation axiom, period `m` at
/// every vertex, tube shape of rank `m`, and mouth equal to the quasi-simples.
pub fn verify_t1(m: u32, max_level: u32) -> Result<Vec<Check>, SurfaceError> {
    let w = build_t1(m, max_level)?;
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: format!("T1(m={m}) {name}"),
            passed,
            detail,
        })
    };
    let stability = is_stable_translation_quiver(&w.tq);
    check(
        "translation axiom",
        stability.ok() && stability.checked > 0,
        format!(
            "{} checked, {} unchecked, {} failures",
            stability.checked,
            stability.unchecked.len(),
            stability.failures.len()
        ),
    );
    let bound = m as usize;
    let periods_ok = w
        .level_of
        .keys()
        .all(|v| tau_period(&w.tq, v, bound).ok().flatten() == Some(bound));
    check("translation period", periods_ok, format!("expected {m}"));
    let tube = tube_report(&w.tq, w.tq.quiver().vertices());
    check(
        "tube",
        tube.is_tube && tube.rank == Some(bound),
        format!("rank {:?}; {}", tube.rank, tube.problems.join("; ")),
    );
    let quasi: BTreeSet<PeripheralArc> = quasi_simples_t1(m)?.into_iter().collect();
    check(
        "quasi-simples",
        quasi.len() == bound && tube.mouth == quasi,
        format!("{} quasi-simples", quasi.len()),
    );
    Ok(checks)
}
