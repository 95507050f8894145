use super::*;
use crate::diagram::{braid_closure, parse_pd};
use crate::states::enumerate_states;

const RIGHT_TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const FIVE_TWO: &str = "X(1,5,2,4) X(3,9,4,8) X(5,1,6,10) X(7,3,8,2) X(9,7,10,6)";

fn top_classes(dd: &DecoratedDiagram) -> Vec<Vec<QuadrantClass>> {
    enumerate_states(dd, Execution::Sequential)
        .top()
        .iter()
        .map(|s| s.assignment.iter().map(|c| c.class).collect())
        .collect()
}

fn ata_classes(dd: &DecoratedDiagram) -> Vec<Vec<QuadrantClass>> {
    ata_enumerate(dd, Execution::Sequential)
        .unwrap()
        .iter()
        .map(|s| s.assignment.iter().map(|c| c.class).collect())
        .collect()
}

#[test]
fn right_trefoil_single_state() {
    let dd = parse_pd(RIGHT_TREFOIL).unwrap().decorate(1).unwrap();
    let states = ata_enumerate(&dd, Execution::Sequential).unwrap();
    assert_eq!(states.len(), 1);
    assert_eq!(states[0].fil, HalfInt::ONE);
    assert_eq!(states[0].gr, HalfInt::ZERO);
}

#[test]
fn positive_hopf_single_state() {
    let dd = braid_closure(&[1, 1]).unwrap().decorate_default();
    let states = ata_enumerate(&dd, Execution::Sequential).unwrap();
    assert_eq!(states.len(), 1);
    assert_eq!(states[0].fil, HalfInt::ONE);
}

#[test]
fn five_two_two_states_same_grading() {
    let dd = parse_pd(FIVE_TWO).unwrap().decorate(1).unwrap();
    let states = ata_enumerate(&dd, Execution::Sequential).unwrap();
    assert_eq!(states.len(), 2);
    assert_eq!(states[0].fil, states[1].fil);
    assert_eq!(states[0].gr, states[1].gr);
}

#[test]
fn matches_brute_force_top_level() {
    let pds = [RIGHT_TREFOIL, TREFOIL, FIVE_TWO, "X(1,2,2,1)"];
    for pd in pds {
        let d = parse_pd(pd).unwrap();
        for e in d.arcs().collect::<Vec<_>>() {
            let dd = d.decorate(e).unwrap();
            assert_eq!(ata_classes(&dd), top_classes(&dd), "{pd} edge {e}");
        }
    }
    let words: &[&[i32]] = &[
        &[1, 1],
        &[1, 1, 1, 1],
        &[1, 1, 2, 2],
        &[-1, -1, -1],
        &[1, 1, 1, 2, 2, 2],
    ];
    for w in words {
        let d = braid_closure(w).unwrap();
        for e in d.arcs().collect::<Vec<_>>() {
            let dd = d.decorate(e).unwrap();
            assert_eq!(ata_classes(&dd), top_classes(&dd), "{w:?} edge {e}");
        }
    }
}

#[test]
fn tree_accounting() {
    let dd = parse_pd(FIVE_TWO).unwrap().decorate(1).unwrap();
    let (b, w) = build_tait_graphs(&dd).unwrap();
    let m = dd.diagram.num_crossings();
    assert_eq!(b.edges.len(), m);
    assert_eq!(w.edges.len(), m);
    // spanning trees of both colours use every crossing exactly once
    assert_eq!(b.vertices.len() - 1 + w.vertices.len() - 1, m);
}

#[test]
fn non_alternative_is_rejected() {
    let d = braid_closure(&[1, 1, 1, 2, -1, -1, -1, 2]).unwrap();
    assert!(matches!(
        ata_enumerate(&d.decorate_default(), Execution::Sequential),
        Err(AtaError::NotAlternative { .. })
    ));
}

#[test]
fn formulas_on_trefoils() {
    for (pd, fil, gr) in [(RIGHT_TREFOIL, 1, 0), (TREFOIL, 1, 2)] {
        let dd = parse_pd(pd).unwrap().decorate(1).unwrap();
        let states = ata_enumerate(&dd, Execution::Sequential).unwrap();
        let report = ata_report(&dd, &states).unwrap();
        assert_eq!(report.formula_fil_max, HalfInt::from_int(fil), "{pd}");
        assert_eq!(report.formula_gr_max, HalfInt::from_int(gr), "{pd}");
        assert_eq!(report.fil_max, Some(report.formula_fil_max));
        assert_eq!(report.gr_max, Some(report.formula_gr_max));
    }
}

#[test]
fn parallel_matches_sequential() {
    let dd = parse_pd(FIVE_TWO).unwrap().decorate(3).unwrap();
    assert_eq!(
        ata_enumerate(&dd, Execution::Sequential),
        ata_enumerate(&dd, Execution::Parallel)
    );
}
