//! Oriented link diagrams built from PD codes.
//!
//! A crossing lists its four arc labels counterclockwise, starting at the
//! incoming under-strand. Slot `p` of a crossing is the arc end at position
//! `p`; quadrant (corner) `q` lies between slots `q` and `q + 1`.

mod braid;
mod pd;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::unionfind::UnionFind;

pub use braid::braid_closure;
pub use pd::parse_pd;

pub type ArcLabel = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("arc {label} appears {count} times (expected exactly 2)")]
    ArcMultiplicity { label: ArcLabel, count: usize },
    #[error("diagram is not connected")]
    Disconnected,
    #[error("diagram has no crossings")]
    Empty,
    #[error("PD code cannot be oriented consistently (at crossing {crossing})")]
    OrientationInconsistency { crossing: usize },
    #[error("face tracing found {found} faces, expected {expected}; the PD code is not planar")]
    Embedding { found: usize, expected: usize },
    #[error("faces admit no checkerboard coloring")]
    Coloring,
    #[error("unknown edge {0}")]
    UnknownEdge(ArcLabel),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.value())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// One arc end: crossing index and slot position `0..4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub crossing: usize,
    pub position: usize,
}

/// Quadrant `quadrant` of a crossing, between slots `quadrant` and `quadrant + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub crossing: usize,
    pub quadrant: usize,
}

impl Serialize for Corner {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.crossing, self.quadrant].serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub slots: [ArcLabel; 4],
    incoming: [bool; 4],
    sign: Sign,
}

impl Crossing {
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_incoming(&self, position: usize) -> bool {
        self.incoming[position]
    }

    /// Quadrant bounded by the two incoming slots.
    pub fn in_quadrant(&self) -> usize {
        (0..4)
            .find(|&q| self.incoming[q] && self.incoming[(q + 1) % 4])
            .expect("two adjacent incoming slots")
    }

    /// Quadrant bounded by the two outgoing slots.
    pub fn out_quadrant(&self) -> usize {
        (self.in_quadrant() + 2) % 4
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    pub id: usize,
    pub color: Color,
    pub boundary: Vec<Corner>,
}

/// Successor map on arc labels describing a preferred traversal direction.
/// Strand entries `(crossing, arc)`: a strand enters `crossing` along `arc`.
pub(crate) type Entries = BTreeSet<(usize, ArcLabel)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    /// `[tail, head]` of each arc after orientation.
    arc_ends: BTreeMap<ArcLabel, [Slot; 2]>,
    components: Vec<Vec<ArcLabel>>,
    regions: Vec<Region>,
    corner_region: Vec<[usize; 4]>,
}

impl LinkDiagram {
    /// Builds and validates a diagram from raw PD tuples.
    pub fn from_crossings(raw: &[[ArcLabel; 4]]) -> Result<Self, DiagramError> {
        Self::build(raw, None)
    }

    pub(crate) fn build(
        raw: &[[ArcLabel; 4]],
        hint: Option<&Entries>,
    ) -> Result<Self, DiagramError> {
        if raw.is_empty() {
            return Err(DiagramError::Empty);
        }
        let mut occurrences: BTreeMap<ArcLabel, Vec<Slot>> = BTreeMap::new();
        for (c, slots) in raw.iter().enumerate() {
            for (p, &label) in slots.iter().enumerate() {
                if label == 0 {
                    return Err(DiagramError::Syntax(format!(
                        "arc labels must be positive (crossing {c})"
                    )));
                }
                occurrences.entry(label).or_default().push(Slot {
                    crossing: c,
                    position: p,
                });
            }
        }
        let mut partner_of = vec![
            [Slot {
                crossing: 0,
                position: 0
            }; 4];
            raw.len()
        ];
        for (&label, ends) in &occurrences {
            if ends.len() != 2 {
                return Err(DiagramError::ArcMultiplicity {
                    label,
                    count: ends.len(),
                });
            }
            partner_of[ends[0].crossing][ends[0].position] = ends[1];
            partner_of[ends[1].crossing][ends[1].position] = ends[0];
        }
        let partner = |s: Slot| partner_of[s.crossing][s.position];

        let mut uf = UnionFind::new(raw.len());
        for ends in occurrences.values() {
            uf.union(ends[0].crossing, ends[1].crossing);
        }
        if uf.classes().1 != 1 {
            return Err(DiagramError::Disconnected);
        }

        let label_at = |s: Slot| raw[s.crossing][s.position];
        let (incoming, components) = orient(raw.len(), &partner, &label_at, hint)?;

        let crossings: Vec<Crossing> = raw
            .iter()
            .zip(&incoming)
            .map(|(&slots, &inc)| Crossing {
                slots,
                incoming: inc,
                // over-strand entering at slot 3 crosses the under-strand left to right
                sign: if inc[3] {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
            })
            .collect();

        let mut arc_ends = BTreeMap::new();
        for (&label, ends) in &occurrences {
            let (a, b) = (ends[0], ends[1]);
            let head_is_a = incoming[a.crossing][a.position];
            arc_ends.insert(label, if head_is_a { [b, a] } else { [a, b] });
        }

        let (regions, corner_region) = trace_faces(raw.len(), &partner)?;
        let mut d = LinkDiagram {
            crossings,
            arc_ends,
            components,
            regions,
            corner_region,
        };
        d.color_faces()?;
        Ok(d)
    }

    fn color_faces(&mut self) -> Result<(), DiagramError> {
        let n = self.regions.len();
        let mut adj = vec![Vec::new(); n];
        for corners in &self.corner_region {
            for q in 0..4 {
                let (a, b) = (corners[q], corners[(q + 1) % 4]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut color: Vec<Option<Color>> = vec![None; n];
        color[0] = Some(Color::White);
        let mut stack = vec![0];
        while let Some(f) = stack.pop() {
            let cf = color[f].expect("colored before push");
            for &g in &adj[f] {
                match color[g] {
                    None => {
                        color[g] = Some(cf.other());
                        stack.push(g);
                    }
                    Some(cg) if cg == cf => return Err(DiagramError::Coloring),
                    Some(_) => {}
                }
            }
        }
        for (r, c) in self.regions.iter_mut().zip(color) {
            r.color = c.ok_or(DiagramError::Coloring)?;
        }
        Ok(())
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, c: usize) -> &Crossing {
        &self.crossings[c]
    }

    pub fn sign(&self, c: usize) -> Sign {
        self.crossings[c].sign
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.crossings.iter().map(|c| c.sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Arc labels in increasing order.
    pub fn arcs(&self) -> impl Iterator<Item = ArcLabel> + '_ {
        self.arc_ends.keys().copied()
    }

    pub fn has_arc(&self, label: ArcLabel) -> bool {
        self.arc_ends.contains_key(&label)
    }

    /// `[tail, head]` slots of an arc.
    pub fn arc_ends(&self, label: ArcLabel) -> Option<[Slot; 2]> {
        self.arc_ends.get(&label).copied()
    }

    /// Components as arc labels in traversal order.
    pub fn components(&self) -> &[Vec<ArcLabel>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn num_regions(&self) -> usize {
        self.regions.len()
    }

    pub fn region_of(&self, corner: Corner) -> usize {
        self.corner_region[corner.crossing][corner.quadrant]
    }

    /// Region ids of the four quadrants of crossing `c`.
    pub fn quadrant_regions(&self, c: usize) -> [usize; 4] {
        self.corner_region[c]
    }

    pub fn color(&self, region: usize) -> Color {
        self.regions[region].color
    }

    /// The two regions on either side of an arc.
    pub fn flanking_regions(&self, label: ArcLabel) -> Option<[usize; 2]> {
        let [tail, _] = self.arc_ends(label)?;
        let corners = self.corner_region[tail.crossing];
        Some([corners[tail.position], corners[(tail.position + 3) % 4]])
    }

    pub fn pd_tuples(&self) -> Vec<[ArcLabel; 4]> {
        self.crossings.iter().map(|c| c.slots).collect()
    }

    /// Entry arcs at every crossing; `incoming == false` gives the exits.
    fn entries(&self, incoming: bool) -> Entries {
        self.crossings
            .iter()
            .enumerate()
            .flat_map(|(c, x)| {
                (0..4)
                    .filter(move |&p| x.incoming[p] == incoming)
                    .map(move |p| (c, x.slots[p]))
            })
            .collect()
    }

    /// The same diagram with arcs numbered `1..=2m` consecutively along each
    /// component, starting at the arc that enters the lowest crossing.
    pub fn relabeled(&self) -> LinkDiagram {
        let mut map = BTreeMap::new();
        let mut next: ArcLabel = 1;
        for comp in &self.components {
            let start = (0..comp.len())
                .min_by_key(|&i| {
                    let head = self.arc_ends[&comp[i]][1];
                    (head.crossing, head.position)
                })
                .unwrap_or(0);
            for k in 0..comp.len() {
                map.insert(comp[(start + k) % comp.len()], next);
                next += 1;
            }
        }
        let raw: Vec<[ArcLabel; 4]> = self
            .crossings
            .iter()
            .map(|c| c.slots.map(|a| map[&a]))
            .collect();
        let hint: Entries = self
            .entries(true)
            .into_iter()
            .map(|(c, a)| (c, map[&a]))
            .collect();
        LinkDiagram::build(&raw, Some(&hint)).expect("relabeling keeps a valid diagram")
    }

    /// The mirror image: every crossing switched, orientations kept.
    pub fn mirror(&self) -> LinkDiagram {
        let raw: Vec<[ArcLabel; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.slots;
                if c.incoming[3] {
                    [d, a, b, cc]
                } else {
                    [b, cc, d, a]
                }
            })
            .collect();
        LinkDiagram::build(&raw, Some(&self.entries(true)))
            .expect("mirror of a valid diagram is valid")
    }

    /// The same diagram with every component reversed.
    pub fn reverse(&self) -> LinkDiagram {
        let raw: Vec<[ArcLabel; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.slots;
                [cc, d, a, b]
            })
            .collect();
        LinkDiagram::build(&raw, Some(&self.entries(false)))
            .expect("reverse of a valid diagram is valid")
    }

    pub fn decorate(&self, edge: ArcLabel) -> Result<DecoratedDiagram, DiagramError> {
        let [r1, r2] = self
            .flanking_regions(edge)
            .ok_or(DiagramError::UnknownEdge(edge))?;
        let (a, b) = if self.color(r1) == Color::Black {
            (r1, r2)
        } else {
            (r2, r1)
        };
        debug_assert!(self.color(a) == Color::Black && self.color(b) == Color::White);
        Ok(DecoratedDiagram {
            diagram: self.clone(),
            edge,
            region_a: a,
            region_b: b,
        })
    }

    /// Decoration on the lowest-numbered arc.
    pub fn decorate_default(&self) -> DecoratedDiagram {
        let edge = self.arcs().next().expect("nonempty diagram");
        self.decorate(edge).expect("arc exists")
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            crossings: self
                .crossings
                .iter()
                .enumerate()
                .map(|(id, c)| CrossingJson {
                    id,
                    slots: c.slots,
                    incoming: c.incoming,
                    sign: c.sign,
                })
                .collect(),
            arcs: self.arcs().collect(),
            faces: self.regions.clone(),
            components: self.components.clone(),
            signs: self.signs(),
            writhe: self.writhe(),
        }
    }
}

/// `X(a,b,c,d) X(...)` text.
impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.crossings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let [a, b, cc, d] = c.slots;
            write!(f, "X({a},{b},{cc},{d})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossingJson {
    pub id: usize,
    pub slots: [ArcLabel; 4],
    pub incoming: [bool; 4],
    pub sign: Sign,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramJson {
    pub crossings: Vec<CrossingJson>,
    pub arcs: Vec<ArcLabel>,
    pub faces: Vec<Region>,
    pub components: Vec<Vec<ArcLabel>>,
    pub signs: Vec<Sign>,
    pub writhe: i64,
}

/// A diagram with a distinguished edge; `region_a` is its black neighbour,
/// `region_b` its white neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedDiagram {
    pub diagram: LinkDiagram,
    pub edge: ArcLabel,
    pub region_a: usize,
    pub region_b: usize,
}

impl DecoratedDiagram {
    pub fn is_marked(&self, region: usize) -> bool {
        region == self.region_a || region == self.region_b
    }
}

/// Walks every strand, returning per-slot incoming flags and components.
/// Incoming flags per crossing slot, and the arcs of each component in order.
type Orientation = (Vec<[bool; 4]>, Vec<Vec<ArcLabel>>);

fn orient(
    n: usize,
    partner: &impl Fn(Slot) -> Slot,
    label_at: &impl Fn(Slot) -> ArcLabel,
    hint: Option<&Entries>,
) -> Result<Orientation, DiagramError> {
    let through = |s: Slot| Slot {
        crossing: s.crossing,
        position: (s.position + 2) % 4,
    };
    // entry slots of one traversal starting by entering at `start`
    let walk = |start: Slot| -> Vec<Slot> {
        let mut entries = vec![start];
        let mut at = partner(through(start));
        while at != start {
            entries.push(at);
            at = partner(through(at));
        }
        entries
    };

    let mut visited = vec![[false; 4]; n];
    let mut incoming = vec![[false; 4]; n];
    let mut components = Vec::new();
    for c in 0..n {
        for p in [0, 1] {
            if visited[c][p] {
                continue;
            }
            let forward = walk(Slot {
                crossing: c,
                position: p,
            });
            let backward = walk(through(Slot {
                crossing: c,
                position: p,
            }));
            let is_under = |s: &Slot| s.position.is_multiple_of(2);
            let entries = match forward.iter().find(|s| is_under(s)) {
                Some(s) if s.position == 0 => forward,
                Some(_) => backward,
                None => {
                    // over-only component: follow the hint, else increasing labels
                    let score = |entries: &[Slot]| -> usize {
                        entries
                            .iter()
                            .filter(|&&e| {
                                let from = label_at(e);
                                match hint {
                                    Some(h) => h.contains(&(e.crossing, from)),
                                    None => label_at(through(e)) == from + 1,
                                }
                            })
                            .count()
                    };
                    // ties (two-arc components) enter their lowest crossing along the lower label
                    let key = |entries: &[Slot]| {
                        let first = entries.iter().min_by_key(|e| e.crossing).expect("nonempty");
                        (std::cmp::Reverse(score(entries)), label_at(*first))
                    };
                    if key(&backward) < key(&forward) {
                        backward
                    } else {
                        forward
                    }
                }
            };
            if let Some(bad) = entries.iter().find(|s| s.position == 2) {
                return Err(DiagramError::OrientationInconsistency {
                    crossing: bad.crossing,
                });
            }
            let mut arcs = Vec::with_capacity(entries.len());
            for &e in &entries {
                let x = through(e);
                incoming[e.crossing][e.position] = true;
                visited[e.crossing][e.position] = true;
                visited[x.crossing][x.position] = true;
                arcs.push(label_at(x));
            }
            let start = arcs
                .iter()
                .enumerate()
                .min_by_key(|(_, &a)| a)
                .map(|(i, _)| i)
                .unwrap_or(0);
            arcs.rotate_left(start);
            components.push(arcs);
        }
    }
    Ok((incoming, components))
}

/// Face tracing with the face kept on the left: leaving a crossing along
/// slot `q` from quadrant `q`, and arriving at slot `p`, continues in
/// quadrant `p - 1`.
fn trace_faces(
    n: usize,
    partner: &impl Fn(Slot) -> Slot,
) -> Result<(Vec<Region>, Vec<[usize; 4]>), DiagramError> {
    let mut corner_region = vec![[usize::MAX; 4]; n];
    let mut regions = Vec::new();
    for c in 0..n {
        for q in 0..4 {
            if corner_region[c][q] != usize::MAX {
                continue;
            }
            let id = regions.len();
            let mut boundary = Vec::new();
            let mut at = Corner {
                crossing: c,
                quadrant: q,
            };
            while corner_region[at.crossing][at.quadrant] == usize::MAX {
                corner_region[at.crossing][at.quadrant] = id;
                boundary.push(at);
                let arrive = partner(Slot {
                    crossing: at.crossing,
                    position: at.quadrant,
                });
                at = Corner {
                    crossing: arrive.crossing,
                    quadrant: (arrive.position + 3) % 4,
                };
            }
            regions.push(Region {
                id,
                color: Color::White,
                boundary,
            });
        }
    }
    if regions.len() != n + 2 {
        return Err(DiagramError::Embedding {
            found: regions.len(),
            expected: n + 2,
        });
    }
    Ok((regions, corner_region))
}
