use std::collections::BTreeMap;

use super::{ArcLabel, DiagramError, Entries, LinkDiagram};

/// PD code of the closure of a braid word.
///
/// Generator `i > 0` is `σ_i` (positive crossing between strands `i` and
/// `i + 1`), `-i` its inverse. Strands run upward; every generator from 1 to
/// the largest used must appear, or the closure is disconnected.
pub fn braid_closure(word: &[i32]) -> Result<LinkDiagram, DiagramError> {
    if word.is_empty() {
        return Err(DiagramError::Empty);
    }
    if word.contains(&0) {
        return Err(DiagramError::Syntax("braid generator 0".into()));
    }
    let strands = word
        .iter()
        .map(|g| g.unsigned_abs() as usize)
        .max()
        .unwrap_or(0)
        + 1;
    let mut current: Vec<ArcLabel> = (1..=strands as ArcLabel).collect();
    let mut next = strands as ArcLabel + 1;
    let mut raw = Vec::with_capacity(word.len());
    let mut entries = Entries::new();
    for (c, &g) in word.iter().enumerate() {
        let p = g.unsigned_abs() as usize - 1;
        let (sw, se) = (current[p], current[p + 1]);
        let (nw, ne) = (next, next + 1);
        next += 2;
        if g > 0 {
            // under SE -> NW, over SW -> NE
            raw.push([se, ne, nw, sw]);
        } else {
            // under SW -> NE, over SE -> NW
            raw.push([sw, se, ne, nw]);
        }
        entries.insert((c, sw));
        entries.insert((c, se));
        current[p] = nw;
        current[p + 1] = ne;
    }
    // identify top and bottom of each strand position
    let mut rename = BTreeMap::new();
    for (p, &top) in current.iter().enumerate() {
        let bottom = p as ArcLabel + 1;
        if top == bottom {
            return Err(DiagramError::Disconnected);
        }
        rename.insert(top, bottom);
    }
    let fix = |a: ArcLabel| rename.get(&a).copied().unwrap_or(a);
    let raw: Vec<[ArcLabel; 4]> = raw.iter().map(|x| x.map(fix)).collect();
    let entries: Entries = entries.into_iter().map(|(c, a)| (c, fix(a))).collect();
    Ok(LinkDiagram::build(&raw, Some(&entries))?.relabeled())
}
