//! Kauffman states of a decorated diagram with their filtration level and
//! grading.

use serde::{Serialize, Serializer};

use crate::algebra::{HalfInt, LaurentPoly};
use crate::diagram::{DecoratedDiagram, LinkDiagram, Sign};
use crate::par::{map_ordered, Execution};

/// Corner type at a crossing: `S` between the two incoming strands, `N`
/// between the two outgoing ones, `E`/`W` the mixed corners to the right and
/// left of the oriented under-strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum QuadrantClass {
    N,
    S,
    E,
    W,
}

impl QuadrantClass {
    pub const ALL: [QuadrantClass; 4] = [
        QuadrantClass::N,
        QuadrantClass::S,
        QuadrantClass::E,
        QuadrantClass::W,
    ];
}

/// Class of each quadrant `0..4` of crossing `c`.
pub fn classify_quadrants(d: &LinkDiagram, c: usize) -> [QuadrantClass; 4] {
    let x = d.crossing(c);
    let s = x.in_quadrant();
    let n = x.out_quadrant();
    let mut out = [QuadrantClass::W; 4];
    out[s] = QuadrantClass::S;
    out[n] = QuadrantClass::N;
    // quadrants 0 and 1 lie to the right of the under-strand (slot 0 -> slot 2)
    for q in [0, 1] {
        if q != s && q != n {
            out[q] = QuadrantClass::E;
        }
    }
    out
}

/// Quadrant index of a class at crossing `c`.
pub fn quadrant_of(d: &LinkDiagram, c: usize, class: QuadrantClass) -> usize {
    classify_quadrants(d, c)
        .iter()
        .position(|&k| k == class)
        .expect("all four classes present")
}

/// Local filtration contribution of a corner.
pub fn local_fil(sign: Sign, q: QuadrantClass) -> HalfInt {
    let half = HalfInt::HALF;
    match (sign, q) {
        (Sign::Positive, QuadrantClass::N) => -half,
        (Sign::Positive, QuadrantClass::S) => half,
        (Sign::Negative, QuadrantClass::N) => half,
        (Sign::Negative, QuadrantClass::S) => -half,
        (_, QuadrantClass::E | QuadrantClass::W) => HalfInt::ZERO,
    }
}

/// Local grading contribution of a corner.
pub fn local_gr(sign: Sign, q: QuadrantClass) -> HalfInt {
    match (sign, q) {
        (Sign::Positive, QuadrantClass::N) => -HalfInt::ONE,
        (Sign::Negative, QuadrantClass::N) => HalfInt::ONE,
        _ => HalfInt::ZERO,
    }
}

/// The corner chosen at one crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateCorner {
    pub crossing: usize,
    pub region: usize,
    pub class: QuadrantClass,
}

impl Serialize for StateCorner {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = s.serialize_tuple(3)?;
        t.serialize_element(&self.crossing)?;
        t.serialize_element(&self.region)?;
        t.serialize_element(&self.class)?;
        t.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KauffmanState {
    /// One corner per crossing, indexed by crossing.
    pub assignment: Vec<StateCorner>,
    pub fil: HalfInt,
    pub gr: HalfInt,
}

impl KauffmanState {
    /// Builds a state from one class per crossing, computing `fil` and `gr`.
    pub fn from_classes(dd: &DecoratedDiagram, classes: &[QuadrantClass]) -> Self {
        let d = &dd.diagram;
        let offset = component_offset(d);
        let mut fil = offset;
        let mut gr = offset;
        let assignment = classes
            .iter()
            .enumerate()
            .map(|(c, &class)| {
                let sign = d.sign(c);
                fil += local_fil(sign, class);
                gr += local_gr(sign, class);
                StateCorner {
                    crossing: c,
                    region: d.quadrant_regions(c)[quadrant_of(d, c, class)],
                    class,
                }
            })
            .collect();
        KauffmanState {
            assignment,
            fil,
            gr,
        }
    }

    /// Whether the corners avoid the marked regions and hit each other region once.
    pub fn is_bijection(&self, dd: &DecoratedDiagram) -> bool {
        let d = &dd.diagram;
        let mut hit = vec![false; d.num_regions()];
        for sc in &self.assignment {
            if dd.is_marked(sc.region) || hit[sc.region] {
                return false;
            }
            hit[sc.region] = true;
        }
        self.assignment.len() == d.num_crossings()
            && hit.iter().filter(|&&h| h).count() == d.num_regions() - 2
    }
}

/// `(|L| - 1)/2`.
pub fn component_offset(d: &LinkDiagram) -> HalfInt {
    HalfInt::from_twice(d.num_components() as i64 - 1)
}

/// For links only the top filtration level of the state set carries meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Semantics {
    Full,
    TopLevelOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateSet {
    pub semantics: Semantics,
    pub states: Vec<KauffmanState>,
}

impl StateSet {
    pub fn max_fil(&self) -> Option<HalfInt> {
        self.states.iter().map(|s| s.fil).max()
    }

    /// States at the maximal filtration level, in canonical order.
    pub fn top(&self) -> Vec<KauffmanState> {
        match self.max_fil() {
            None => Vec::new(),
            Some(m) => self.states.iter().filter(|s| s.fil == m).cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StateError {
    #[error("state grading {0} is not an integer; the sign (-1)^gr is undefined")]
    GradingNotInteger(HalfInt),
}

struct Search<'a> {
    dd: &'a DecoratedDiagram,
    /// Per crossing: `(class, region)` candidates in class order.
    candidates: Vec<Vec<(QuadrantClass, usize)>>,
    /// Regions that no crossing after index `k` can reach.
    closing: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(dd: &'a DecoratedDiagram) -> Self {
        let d = &dd.diagram;
        let m = d.num_crossings();
        let mut last = vec![None; d.num_regions()];
        let candidates = (0..m)
            .map(|c| {
                let classes = classify_quadrants(d, c);
                let regions = d.quadrant_regions(c);
                let mut v: Vec<(QuadrantClass, usize)> = QuadrantClass::ALL
                    .iter()
                    .map(|&k| {
                        let q = classes.iter().position(|&x| x == k).expect("class present");
                        (k, regions[q])
                    })
                    .filter(|&(_, r)| !dd.is_marked(r))
                    .collect();
                v.sort_by_key(|&(k, _)| k);
                for &(_, r) in &v {
                    last[r] = Some(c);
                }
                v
            })
            .collect();
        let mut closing = vec![Vec::new(); m];
        for (r, l) in last.into_iter().enumerate() {
            if let Some(c) = l {
                closing[c].push(r);
            }
        }
        Search {
            dd,
            candidates,
            closing,
        }
    }

    fn run(
        &self,
        c: usize,
        used: &mut [bool],
        picked: &mut Vec<QuadrantClass>,
        out: &mut Vec<KauffmanState>,
    ) {
        if c == self.candidates.len() {
            out.push(KauffmanState::from_classes(self.dd, picked));
            return;
        }
        for &(class, r) in &self.candidates[c] {
            if used[r] {
                continue;
            }
            used[r] = true;
            if self.closing[c].iter().all(|&x| used[x]) {
                picked.push(class);
                self.run(c + 1, used, picked, out);
                picked.pop();
            }
            used[r] = false;
        }
    }
}

/// All Kauffman states, in lexicographic order of the per-crossing classes.
///
/// The search is split on the first crossing's corner when running in
/// parallel; the concatenation keeps the canonical order.
pub fn enumerate_states(dd: &DecoratedDiagram, exec: Execution) -> StateSet {
    let d = &dd.diagram;
    let search = Search::new(dd);
    let regions = d.num_regions();
    let states = if search.candidates.is_empty() {
        Vec::new()
    } else {
        let first = search.candidates[0].clone();
        map_ordered(&first, exec, |&(class, r)| {
            let mut used = vec![false; regions];
            used[r] = true;
            let mut out = Vec::new();
            if search.closing[0].iter().all(|&x| used[x]) {
                let mut picked = vec![class];
                search.run(1, &mut used, &mut picked, &mut out);
            }
            out
        })
        .into_iter()
        .flatten()
        .collect()
    };
    StateSet {
        semantics: if d.num_components() == 1 {
            Semantics::Full
        } else {
            Semantics::TopLevelOnly
        },
        states,
    }
}

/// `Σ_x (-1)^{gr(x)} t^{fil(x)}` over all Kauffman states.
pub fn state_polynomial(dd: &DecoratedDiagram) -> Result<LaurentPoly, StateError> {
    polynomial_of(&enumerate_states(dd, Execution::default()).states)
}

pub fn polynomial_of(states: &[KauffmanState]) -> Result<LaurentPoly, StateError> {
    let mut p = LaurentPoly::zero();
    for s in states {
        let g = s.gr.to_int().ok_or(StateError::GradingNotInteger(s.gr))?;
        p.add_term(s.fil, if g % 2 == 0 { 1 } else { -1 });
    }
    Ok(p)
}
