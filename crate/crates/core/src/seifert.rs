//! Seifert smoothing: circles, the spaces of their complement on the sphere,
//! and the sign census of those spaces.

use serde::Serialize;

use crate::diagram::{ArcLabel, LinkDiagram, Sign, Slot};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertCircle {
    pub id: usize,
    pub arcs: Vec<ArcLabel>,
}

/// Sign class of a space: the common sign of its crossings, or empty.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
    Mixed,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Space {
    pub regions: Vec<usize>,
    pub crossings: Vec<usize>,
    pub sign: SpaceSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceCensus {
    pub s: usize,
    pub c: usize,
    pub c_plus: usize,
    pub c_minus: usize,
    pub r: usize,
    pub r_plus: usize,
    pub r_minus: usize,
    pub spaces: Vec<Space>,
}

/// Which side empty spaces are counted on in `c_±`, `r_±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmptySpaces {
    Plus,
    Minus,
}

/// Outgoing slot an incoming slot is joined to by the oriented smoothing.
fn smoothing_exit(d: &LinkDiagram, slot: Slot) -> Slot {
    let x = d.crossing(slot.crossing);
    let p = slot.position;
    let q = [(p + 1) % 4, (p + 3) % 4]
        .into_iter()
        .find(|&q| !x.is_incoming(q))
        .expect("an incoming slot has an outgoing neighbour");
    Slot {
        crossing: slot.crossing,
        position: q,
    }
}

pub fn seifert_circles(d: &LinkDiagram) -> Vec<SeifertCircle> {
    let mut tail_of = std::collections::BTreeMap::new();
    for a in d.arcs() {
        let [tail, _] = d.arc_ends(a).expect("arc exists");
        tail_of.insert(tail, a);
    }
    let mut used = std::collections::BTreeSet::new();
    let mut circles = Vec::new();
    for start in d.arcs() {
        if used.contains(&start) {
            continue;
        }
        let mut arcs = Vec::new();
        let mut a = start;
        while used.insert(a) {
            arcs.push(a);
            let [_, head] = d.arc_ends(a).expect("arc exists");
            a = tail_of[&smoothing_exit(d, head)];
        }
        circles.push(SeifertCircle {
            id: circles.len(),
            arcs,
        });
    }
    circles
}

/// Regions merged across each crossing's in/out quadrant pair, with empty
/// spaces counted on the positive side.
pub fn seifert_spaces(d: &LinkDiagram) -> SpaceCensus {
    seifert_spaces_with(d, EmptySpaces::Plus)
}

pub fn seifert_spaces_with(d: &LinkDiagram, empty: EmptySpaces) -> SpaceCensus {
    let mut uf = UnionFind::new(d.num_regions());
    for (c, x) in d.crossings().iter().enumerate() {
        let q = d.quadrant_regions(c);
        uf.union(q[x.in_quadrant()], q[x.out_quadrant()]);
    }
    let (class, count) = uf.classes();
    let mut spaces: Vec<Space> = (0..count)
        .map(|_| Space {
            regions: Vec::new(),
            crossings: Vec::new(),
            sign: SpaceSign::Empty,
        })
        .collect();
    for (r, &k) in class.iter().enumerate() {
        spaces[k].regions.push(r);
    }
    for (c, x) in d.crossings().iter().enumerate() {
        let k = class[d.quadrant_regions(c)[x.in_quadrant()]];
        let sp = &mut spaces[k];
        sp.crossings.push(c);
        sp.sign = match (sp.sign, x.sign()) {
            (SpaceSign::Empty, Sign::Positive) => SpaceSign::Positive,
            (SpaceSign::Empty, Sign::Negative) => SpaceSign::Negative,
            (SpaceSign::Positive, Sign::Positive) => SpaceSign::Positive,
            (SpaceSign::Negative, Sign::Negative) => SpaceSign::Negative,
            _ => SpaceSign::Mixed,
        };
    }
    let on_minus = |sign: SpaceSign| match sign {
        SpaceSign::Negative => true,
        SpaceSign::Empty => empty == EmptySpaces::Minus,
        _ => false,
    };
    let on_plus = |sign: SpaceSign| match sign {
        SpaceSign::Positive => true,
        SpaceSign::Empty => empty == EmptySpaces::Plus,
        _ => false,
    };
    let c_minus = spaces.iter().filter(|s| on_minus(s.sign)).count();
    let c_plus = spaces.iter().filter(|s| on_plus(s.sign)).count();
    let r_minus = spaces
        .iter()
        .filter(|s| on_minus(s.sign))
        .map(|s| s.regions.len())
        .sum();
    let r_plus = spaces
        .iter()
        .filter(|s| on_plus(s.sign))
        .map(|s| s.regions.len())
        .sum();
    SpaceCensus {
        s: seifert_circles(d).len(),
        c: spaces.len(),
        c_plus,
        c_minus,
        r: d.num_regions(),
        r_plus,
        r_minus,
        spaces,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alternativity {
    pub alternative: bool,
    /// Index of a space holding crossings of both signs.
    pub offending_space: Option<usize>,
}

pub fn is_alternative(census: &SpaceCensus) -> Alternativity {
    let offending_space = census
        .spaces
        .iter()
        .position(|s| s.sign == SpaceSign::Mixed);
    Alternativity {
        alternative: offending_space.is_none(),
        offending_space,
    }
}

/// Euler characteristic `s - m` of the surface from Seifert's algorithm.
pub fn euler_characteristic(d: &LinkDiagram) -> i64 {
    seifert_circles(d).len() as i64 - d.num_crossings() as i64
}
