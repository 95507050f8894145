//! Kauffman's Alternative Tree Algorithm.
//!
//! Each crossing is an edge of the black Tait graph and of the white one. An
//! edge joining the two corners of type `N`/`S` is pre-oriented toward the
//! corner whose filtration contribution is `+1/2`; an edge joining `E`/`W`
//! corners carries no orientation. Starting from the two regions next to the
//! marked edge, each colour grows maximal oriented trees along pre-oriented
//! edges, and joins a new root through any unused crossing whenever the
//! growth stalls. Every completed pair of spanning trees using each crossing
//! once gives a Kauffman state: each crossing takes the corner its edge
//! points to.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::algebra::HalfInt;
use crate::diagram::{Color, DecoratedDiagram, Sign};
use crate::par::{map_ordered, Execution};
use crate::seifert::{is_alternative, seifert_spaces, SpaceCensus};
use crate::states::{classify_quadrants, KauffmanState, QuadrantClass};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AtaError {
    #[error("diagram is not alternative: space {space} mixes crossing signs")]
    NotAlternative { space: usize },
    #[error("the two closed forms of the top filtration level disagree ({first} vs {second})")]
    InconsistentCensus { first: HalfInt, second: HalfInt },
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    /// Joins the `N` and `S` corners.
    NS,
    /// Joins the `E` and `W` corners.
    EW,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeEnd {
    pub region: usize,
    pub class: QuadrantClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaitEdge {
    pub crossing: usize,
    pub kind: EdgeKind,
    pub ends: [EdgeEnd; 2],
    /// Index into `ends` of the `+1/2` corner, for `NS` edges.
    pub toward: Option<usize>,
}

impl TaitEdge {
    fn is_loop(&self) -> bool {
        self.ends[0].region == self.ends[1].region
    }

    /// The pre-oriented `(source, target)` pair, if any.
    fn arrow(&self) -> Option<(usize, EdgeEnd)> {
        self.toward
            .map(|t| (self.ends[1 - t].region, self.ends[t]))
            .filter(|_| !self.is_loop())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaitGraph {
    pub color: Color,
    pub root: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<TaitEdge>,
}

/// Black and white Tait graphs, rooted at the two regions by the marked edge.
pub fn build_tait_graphs(dd: &DecoratedDiagram) -> Result<(TaitGraph, TaitGraph), AtaError> {
    let d = &dd.diagram;
    let census = seifert_spaces(d);
    if let Some(space) = is_alternative(&census).offending_space {
        return Err(AtaError::NotAlternative { space });
    }
    let graph = |color: Color, root: usize| {
        let vertices = d
            .regions()
            .iter()
            .filter(|r| r.color == color)
            .map(|r| r.id)
            .collect();
        let edges = (0..d.num_crossings())
            .map(|c| {
                let classes = classify_quadrants(d, c);
                let regions = d.quadrant_regions(c);
                let q = (0..4)
                    .find(|&q| d.color(regions[q]) == color)
                    .expect("two corners of each colour");
                let ends = [q, (q + 2) % 4].map(|q| EdgeEnd {
                    region: regions[q],
                    class: classes[q],
                });
                let kind = match ends[0].class {
                    QuadrantClass::N | QuadrantClass::S => EdgeKind::NS,
                    _ => EdgeKind::EW,
                };
                let plus = match d.sign(c) {
                    Sign::Positive => QuadrantClass::S,
                    Sign::Negative => QuadrantClass::N,
                };
                let toward = match kind {
                    EdgeKind::NS => ends.iter().position(|e| e.class == plus),
                    EdgeKind::EW => None,
                };
                TaitEdge {
                    crossing: c,
                    kind,
                    ends,
                    toward,
                }
            })
            .collect();
        TaitGraph {
            color,
            root,
            vertices,
            edges,
        }
    };
    Ok((
        graph(Color::Black, dd.region_a),
        graph(Color::White, dd.region_b),
    ))
}

/// Oriented tree edges of one colour: crossing -> corner pointed to.
type Forest = BTreeMap<usize, EdgeEnd>;

struct Grower<'a> {
    g: &'a TaitGraph,
    regions: usize,
}

impl<'a> Grower<'a> {
    fn covered(&self, forest: &Forest) -> Vec<bool> {
        let mut inside = vec![false; self.regions];
        inside[self.g.root] = true;
        for e in forest.values() {
            inside[e.region] = true;
        }
        inside
    }

    /// Every maximal oriented tree rooted at `root` among vertices outside
    /// the current forest, using pre-oriented edges of unused crossings.
    fn maximal_trees(&self, forest: &Forest, root: usize) -> Vec<Vec<(usize, EdgeEnd)>> {
        let inside = self.covered(forest);
        let free = |v: usize| v == root || !inside[v];
        let arrows: Vec<(usize, usize, EdgeEnd)> = self
            .g
            .edges
            .iter()
            .filter(|e| !forest.contains_key(&e.crossing))
            .filter_map(|e| e.arrow().map(|(s, t)| (e.crossing, s, t)))
            .filter(|&(_, s, t)| free(s) && free(t.region) && t.region != root)
            .collect();
        let mut reach = vec![false; self.regions];
        reach[root] = true;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &(_, s, t) in &arrows {
                if s == v && !reach[t.region] {
                    reach[t.region] = true;
                    order.push(t.region);
                }
            }
        }
        let targets: Vec<usize> = order[1..].to_vec();
        let incoming: Vec<Vec<(usize, usize, EdgeEnd)>> = targets
            .iter()
            .map(|&v| {
                arrows
                    .iter()
                    .copied()
                    .filter(|&(_, s, t)| t.region == v && reach[s])
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut parent = vec![usize::MAX; self.regions];
        let mut picked = Vec::with_capacity(targets.len());
        self.arborescences(
            root,
            &targets,
            &incoming,
            0,
            &mut parent,
            &mut picked,
            &mut out,
        );
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn arborescences(
        &self,
        root: usize,
        targets: &[usize],
        incoming: &[Vec<(usize, usize, EdgeEnd)>],
        k: usize,
        parent: &mut [usize],
        picked: &mut Vec<(usize, EdgeEnd)>,
        out: &mut Vec<Vec<(usize, EdgeEnd)>>,
    ) {
        if k == targets.len() {
            let acyclic = targets.iter().all(|&v| {
                let mut x = v;
                for _ in 0..=targets.len() {
                    if x == root {
                        return true;
                    }
                    x = parent[x];
                }
                false
            });
            if acyclic {
                out.push(picked.clone());
            }
            return;
        }
        let v = targets[k];
        for &(c, s, t) in &incoming[k] {
            parent[v] = s;
            picked.push((c, t));
            self.arborescences(root, targets, incoming, k + 1, parent, picked, out);
            picked.pop();
        }
        parent[v] = usize::MAX;
    }

    /// Edges of unused crossings with exactly one end in the forest, oriented outward.
    fn connecting_edges(&self, forest: &Forest) -> Vec<(usize, EdgeEnd)> {
        let inside = self.covered(forest);
        self.g
            .edges
            .iter()
            .filter(|e| !forest.contains_key(&e.crossing) && !e.is_loop())
            .filter_map(|e| {
                let [a, b] = e.ends;
                match (inside[a.region], inside[b.region]) {
                    (true, false) => Some((e.crossing, b)),
                    (false, true) => Some((e.crossing, a)),
                    _ => None,
                }
            })
            .collect()
    }

    fn grow(
        &self,
        forest: Forest,
        root: usize,
        seen: &mut HashSet<(Forest, usize)>,
        out: &mut BTreeSet<Forest>,
    ) {
        if !seen.insert((forest.clone(), root)) {
            return;
        }
        let goal = self.g.vertices.len() - 1;
        for tree in self.maximal_trees(&forest, root) {
            let mut grown = forest.clone();
            grown.extend(tree);
            if grown.len() == goal {
                out.insert(grown);
                continue;
            }
            for (c, end) in self.connecting_edges(&grown) {
                let mut next = grown.clone();
                next.insert(c, end);
                self.grow(next, end.region, seen, out);
            }
        }
    }

    fn outcomes(&self) -> BTreeSet<Forest> {
        let mut out = BTreeSet::new();
        let mut seen = HashSet::new();
        self.grow(Forest::new(), self.g.root, &mut seen, &mut out);
        out
    }
}

/// All Kauffman states the algorithm can produce, deduplicated, in the same
/// canonical order as [`crate::states::enumerate_states`].
pub fn ata_enumerate(
    dd: &DecoratedDiagram,
    exec: Execution,
) -> Result<Vec<KauffmanState>, AtaError> {
    let (black, white) = build_tait_graphs(dd)?;
    let d = &dd.diagram;
    let m = d.num_crossings();
    let graphs = [black, white];
    let per_color = map_ordered(&graphs, exec, |g| {
        Grower {
            g,
            regions: d.num_regions(),
        }
        .outcomes()
    });
    let mut by_crossings: BTreeMap<Vec<usize>, Vec<&Forest>> = BTreeMap::new();
    for f in &per_color[1] {
        by_crossings
            .entry(f.keys().copied().collect())
            .or_default()
            .push(f);
    }
    let mut found = BTreeSet::new();
    for fb in &per_color[0] {
        let complement: Vec<usize> = (0..m).filter(|c| !fb.contains_key(c)).collect();
        for fw in by_crossings.get(&complement).into_iter().flatten() {
            let classes: Vec<QuadrantClass> = (0..m)
                .map(|c| fb.get(&c).or_else(|| fw.get(&c)).expect("partition").class)
                .collect();
            found.insert(classes);
        }
    }
    let mut states = Vec::with_capacity(found.len());
    for classes in found {
        let s = KauffmanState::from_classes(dd, &classes);
        if !s.is_bijection(dd) {
            return Err(AtaError::Internal(format!(
                "tree pair {classes:?} does not give a Kauffman state"
            )));
        }
        states.push(s);
    }
    Ok(states)
}

/// `(|L| - 1)/2 + r_- - c_-`.
pub fn gr_max_formula(census: &SpaceCensus, components: usize) -> HalfInt {
    HalfInt::from_twice(components as i64 - 1)
        + HalfInt::from_int(census.r_minus as i64 - census.c_minus as i64)
}

/// `(|L| - 1 + r - c)/2`, checked against `(|L| + 1 + m - c)/2`.
pub fn fil_max_formula(
    census: &SpaceCensus,
    components: usize,
    crossings: usize,
) -> Result<HalfInt, AtaError> {
    let (l, r, c, m) = (
        components as i64,
        census.r as i64,
        census.c as i64,
        crossings as i64,
    );
    let first = HalfInt::from_twice(l - 1 + r - c);
    let second = HalfInt::from_twice(l + 1 + m - c);
    if first != second {
        return Err(AtaError::InconsistentCensus { first, second });
    }
    Ok(first)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AtaReport {
    pub fil_max: Option<HalfInt>,
    pub gr_max: Option<HalfInt>,
    pub count: usize,
    pub formula_fil_max: HalfInt,
    pub formula_gr_max: HalfInt,
}

/// Summary of algorithm output against the closed formulas.
pub fn ata_report(dd: &DecoratedDiagram, states: &[KauffmanState]) -> Result<AtaReport, AtaError> {
    let d = &dd.diagram;
    let census = seifert_spaces(d);
    let common = |f: fn(&KauffmanState) -> HalfInt| {
        let first = states.first().map(f)?;
        states.iter().all(|s| f(s) == first).then_some(first)
    };
    Ok(AtaReport {
        fil_max: common(|s| s.fil),
        gr_max: common(|s| s.gr),
        count: states.len(),
        formula_fil_max: fil_max_formula(&census, d.num_components(), d.num_crossings())?,
        formula_gr_max: gr_max_formula(&census, d.num_components()),
    })
}

#[cfg(test)]
mod tests;
