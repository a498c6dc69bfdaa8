//! DOT, JSON and plain-text renderings of translation quivers.
//!
//! All output is deterministic: vertices are ordered by level (when known)
//! and then by label.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{Debug, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{Quiver, QuiverError, TranslationQuiver};
use crate::tubes::TubeWindow;

/// Wire form of a translation quiver. Labels are strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<String>,
    pub arrows: Vec<[String; 2]>,
    #[serde(default)]
    pub tau: BTreeMap<String, String>,
}

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid quiver: {0}")]
    Quiver(#[from] QuiverError),
}

fn ordered<'a, V: Ord + Clone + Debug>(
    tq: &'a TranslationQuiver<V>,
    levels: Option<&BTreeMap<V, u32>>,
) -> Vec<&'a V> {
    let mut vs: Vec<&V> = tq.quiver().vertices().iter().collect();
    if let Some(levels) = levels {
        vs.sort_by_key(|v| (levels.get(*v).copied().unwrap_or(u32::MAX), *v));
    }
    vs
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph: arrows as solid edges, the translation as dashed undirected
/// edges labelled `tau` that do not constrain the layout.
pub fn emit_dot<V: Ord + Clone + Debug>(
    tq: &TranslationQuiver<V>,
    levels: Option<&BTreeMap<V, u32>>,
    label: impl Fn(&V) -> String,
) -> String {
    let order = ordered(tq, levels);
    let rank: BTreeMap<&V, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut out = String::from("digraph quiver {\n    rankdir=BT;\n    node [shape=plaintext];\n");
    for v in &order {
        match levels.and_then(|l| l.get(*v)) {
            Some(level) => writeln!(out, "    {} [level={level}];", quote(&label(v))),
            None => writeln!(out, "    {};", quote(&label(v))),
        }
        .expect("writing to a String");
    }
    let mut arrows: Vec<&(V, V)> = tq.quiver().arrows().iter().collect();
    arrows.sort_by_key(|(a, b)| (rank[a], rank[b]));
    for (a, b) in arrows {
        writeln!(out, "    {} -> {};", quote(&label(a)), quote(&label(b))).expect("String");
    }
    let mut seen: BTreeSet<(&V, &V)> = BTreeSet::new();
    for v in &order {
        if let Some(tv) = tq.tau(v) {
            let key = if *v <= tv { (*v, tv) } else { (tv, *v) };
            if seen.insert(key) {
                writeln!(
                    out,
                    "    {} -> {} [style=dashed, dir=none, constraint=false, label=\"tau\"];",
                    quote(&label(v)),
                    quote(&label(tv))
                )
                .expect("String");
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn to_json<V: Ord + Clone + Debug>(
    tq: &TranslationQuiver<V>,
    levels: Option<&BTreeMap<V, u32>>,
    label: impl Fn(&V) -> String,
) -> QuiverJson {
    let order = ordered(tq, levels);
    let rank: BTreeMap<&V, usize> = order.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut arrows: Vec<&(V, V)> = tq.quiver().arrows().iter().collect();
    arrows.sort_by_key(|(a, b)| (rank[a], rank[b]));
    QuiverJson {
        vertices: order.iter().map(|v| label(v)).collect(),
        arrows: arrows.iter().map(|(a, b)| [label(a), label(b)]).collect(),
        tau: tq
            .translation()
            .iter()
            .map(|(a, b)| (label(a), label(b)))
            .collect(),
    }
}

pub fn emit_json<V: Ord + Clone + Debug>(
    tq: &TranslationQuiver<V>,
    levels: Option<&BTreeMap<V, u32>>,
    label: impl Fn(&V) -> String,
) -> String {
    let mut s = serde_json::to_string_pretty(&to_json(tq, levels, label))
        .expect("string labels always serialize");
    s.push('\n');
    s
}

/// Reads a quiver in the wire form; labels stay strings.
pub fn quiver_from_json(text: &str) -> Result<TranslationQuiver<String>, JsonError> {
    let wire: QuiverJson = serde_json::from_str(text)?;
    let quiver = Quiver::from_parts(wire.vertices, wire.arrows.into_iter().map(|[a, b]| (a, b)))?;
    Ok(TranslationQuiver::new(quiver, wire.tau)?)
}

/// Draws a window row by row with the mouth at the bottom. Each row follows
/// the inverse translation from left to right, neighbours joined by `~~`.
pub fn render_text<V: Ord + Clone + Debug>(
    window: &TubeWindow<V>,
    label: impl Fn(&V) -> String,
) -> String {
    let inverse: BTreeMap<&V, &V> = window
        .tq
        .translation()
        .iter()
        .map(|(a, b)| (b, a))
        .collect();
    let mut rows = Vec::new();
    let mut start = window.vertices_at(1).into_iter().next();
    for level in 1..=window.max_level {
        let Some(first) = start.clone() else { break };
        let mut row = vec![label(&first)];
        let mut cur = &first;
        while let Some(next) = inverse.get(cur) {
            if *next == &first {
                break;
            }
            row.push(label(next));
            cur = next;
        }
        rows.push((level, row));
        start = window
            .tq
            .quiver()
            .successors(&first)
            .into_iter()
            .find(|w| window.level_of.get(w) == Some(&(level + 1)));
    }
    let width = window.max_level.to_string().len();
    let mut out = format!("{} levels 1..={}\n", window.kind, window.max_level);
    for (level, row) in rows.iter().rev() {
        let indent = "  ".repeat((*level - 1) as usize);
        writeln!(out, "{level:>width$} | {indent}{}", row.join(" ~~ ")).expect("String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interior::Component;
    use crate::tubes::{build_gamma, build_t1};

    #[test]
    fn mouth_window_dot() {
        let w = build_gamma(Component::Gamma0, 1);
        let dot = emit_dot(&w.tq, Some(&w.level_of), |v| v.to_string());
        let solid = dot
            .lines()
            .filter(|l| l.contains("->") && !l.contains("tau"))
            .count();
        let dashed = dot.lines().filter(|l| l.contains("label=\"tau\"")).count();
        assert_eq!(solid, 0);
        assert_eq!(dashed, 1);
        assert_eq!(dot.lines().filter(|l| l.contains("[level=")).count(), 2);
    }

    #[test]
    fn t1_node_count() {
        let w = build_t1(5, 4).unwrap();
        let dot = emit_dot(&w.tq, Some(&w.level_of), |v| v.to_string());
        assert_eq!(dot.lines().filter(|l| l.contains("[level=")).count(), 20);
        assert_eq!(dot, emit_dot(&w.tq, Some(&w.level_of), |v| v.to_string()));
    }

    #[test]
    fn json_round_trip() {
        let w = build_gamma(Component::Gamma1, 4);
        let text = emit_json(&w.tq, Some(&w.level_of), |v| v.to_string());
        let back = quiver_from_json(&text).unwrap();
        let orig = w.tq.map_labels(|v| v.to_string()).without_frontier();
        assert_eq!(back.quiver().vertices(), orig.quiver().vertices());
        assert_eq!(
            back.quiver().arrow_multiset(),
            orig.quiver().arrow_multiset()
        );
        assert_eq!(back.translation(), orig.translation());
        assert!(quiver_from_json("{\"vertices\":[\"a\"],\"arrows\":[[\"a\",\"b\"]]}").is_err());
        assert!(quiver_from_json("{").is_err());
    }

    #[test]
    fn text_grid() {
        let w = build_gamma(Component::Gamma0, 3);
        let text = render_text(&w, |v| v.to_string());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "3 |     [0,3] ~~ [0*,3*]");
        assert_eq!(lines[2], "2 |   [0,2*] ~~ [0*,2]");
        assert_eq!(lines[3], "1 | [0,1] ~~ [0*,1*]");
    }
}
