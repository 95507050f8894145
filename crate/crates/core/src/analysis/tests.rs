use super::*;
use crate::diagram::{braid_closure, parse_pd};

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const RIGHT_TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";
const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
const FIVE_TWO: &str = "X(1,5,2,4) X(3,9,4,8) X(5,1,6,10) X(7,3,8,2) X(9,7,10,6)";
const SIX_ONE: &str = "[[1,7,2,6],[3,10,4,11],[5,3,6,2],[7,1,8,12],[9,4,10,5],[11,9,12,8]]";
const HOPF: &str = "X(4,1,3,2) X(2,3,1,4)";
const KINK: &str = "X(1,2,2,1)";

fn poly(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn oracle(pd: &str) -> LaurentPoly {
    alexander_oracle(&parse_pd(pd).unwrap()).unwrap()
}

#[test]
fn oracle_values() {
    assert_eq!(oracle(KINK), LaurentPoly::one());
    assert_eq!(oracle(TREFOIL), poly("t - 1 + t^-1"));
    assert_eq!(oracle(RIGHT_TREFOIL), poly("t - 1 + t^-1"));
    assert_eq!(oracle(FIGURE_EIGHT), poly("-t + 3 - t^-1"));
    assert_eq!(oracle(FIVE_TWO), poly("2*t - 3 + 2*t^-1"));
    assert_eq!(oracle(SIX_ONE), poly("-2*t + 5 - 2*t^-1"));
    assert!(oracle(HOPF)
        .eq_up_to_unit(&poly("t^(1/2) - t^(-1/2)"))
        .unwrap());
}

#[test]
fn oracle_independent_of_deleted_pair() {
    let mut diagrams: Vec<LinkDiagram> = [TREFOIL, FIGURE_EIGHT, FIVE_TWO, SIX_ONE, HOPF, KINK]
        .iter()
        .map(|pd| parse_pd(pd).unwrap())
        .collect();
    for w in [
        &[1, 1, 1, 1][..],
        &[1, 1, 2, 2],
        &[1, -2, 1, -2, 1, -2],
        &[1, 1, 1, 2, -1, -1, -1, 2],
    ] {
        diagrams.push(braid_closure(w).unwrap());
    }
    for d in &diagrams {
        let all = alexander_all_pairs(d).unwrap();
        assert!(all.len() >= 2 || d.num_crossings() == 1);
        for (_, p) in &all {
            assert!(p.eq_up_to_unit(&all[0].1).unwrap(), "{d}");
        }
    }
}

#[test]
fn determinant_small_cases() {
    let t = LaurentPoly::t;
    let one = LaurentPoly::one;
    assert_eq!(determinant(vec![]).unwrap(), one());
    // [[t, 1], [1, t]] -> t^2 - 1
    let m = vec![vec![t(), one()], vec![one(), t()]];
    assert_eq!(determinant(m).unwrap(), poly("t^2 - 1"));
    // a zero leading entry forces a row swap
    let m = vec![vec![LaurentPoly::zero(), one()], vec![t(), one()]];
    assert_eq!(determinant(m).unwrap(), -t());
    assert!(matches!(
        determinant(vec![vec![one(), one()]]),
        Err(AnalysisError::DegenerateMatrix(_))
    ));
}

#[test]
fn kappa() {
    assert_eq!(kappa_arithmetic(1, -1).unwrap(), 1);
    assert_eq!(kappa_arithmetic(2, 0).unwrap(), 1);
    assert!(matches!(
        kappa_arithmetic(2, 1),
        Err(AnalysisError::Parity { .. })
    ));
}

#[test]
fn right_trefoil_report() {
    let dd = parse_pd(RIGHT_TREFOIL).unwrap().decorate(1).unwrap();
    let r = top_report(&dd, Execution::Sequential).unwrap();
    assert_eq!(r.fil_max, HalfInt::ONE);
    assert_eq!(r.gr_max, Some(HalfInt::ZERO));
    assert_eq!(r.rank, 1);
    assert_eq!(r.chi, -1);
    assert_eq!(r.genus_bound, HalfInt::ONE);
    assert_eq!(r.fibred, Some(true));
    assert!(r.monic);
    assert!(r.checks.iter().all(|c| c.status == CheckStatus::Pass));
}

#[test]
fn five_two_and_six_one_not_fibred() {
    for pd in [FIVE_TWO, SIX_ONE] {
        let dd = parse_pd(pd).unwrap().decorate_default();
        let r = top_report(&dd, Execution::Sequential).unwrap();
        assert_eq!(r.rank, 2, "{pd}");
        assert_eq!(r.fibred, Some(false));
        assert!(!r.monic);
        assert_eq!(r.alexander.leading().unwrap().1.abs(), 2);
    }
}

#[test]
fn positive_hopf_report() {
    let dd = braid_closure(&[1, 1]).unwrap().decorate_default();
    let r = top_report(&dd, Execution::Sequential).unwrap();
    assert_eq!(r.fil_max, HalfInt::ONE);
    assert_eq!(r.rank, 1);
    assert_eq!(r.fibred, Some(true));
    assert_eq!(r.chi, 0);
    assert_eq!(r.genus_bound, HalfInt::ONE);
}

#[test]
fn brute_flag_agrees() {
    for pd in [TREFOIL, FIGURE_EIGHT, FIVE_TWO] {
        let dd = parse_pd(pd).unwrap().decorate_default();
        let a = top_report(&dd, Execution::Sequential).unwrap();
        let b = top_report_with(&dd, Execution::Sequential, true).unwrap();
        assert_eq!(
            (a.fil_max, a.gr_max, a.rank, a.fibred),
            (b.fil_max, b.gr_max, b.rank, b.fibred)
        );
    }
}

#[test]
fn verify_passes_on_alternating_knots() {
    for pd in [
        TREFOIL,
        RIGHT_TREFOIL,
        FIGURE_EIGHT,
        FIVE_TWO,
        SIX_ONE,
        KINK,
    ] {
        let dd = parse_pd(pd).unwrap().decorate_default();
        let v = verify_theorem(&dd, Execution::Sequential);
        assert!(v.pass, "{pd}: {:?}", v.checks);
        assert_eq!(v.checks.len(), 5);
    }
}

#[test]
fn verify_skips_oracle_comparison_for_links() {
    let dd = parse_pd(HOPF).unwrap().decorate_default();
    let v = verify_theorem(&dd, Execution::Sequential);
    assert!(v.pass);
    assert_eq!(v.checks[4].status, CheckStatus::Skipped);
}

#[test]
fn verify_gates_non_alternative() {
    let dd = braid_closure(&[1, 1, 1, 2, -1, -1, -1, 2])
        .unwrap()
        .decorate_default();
    let v = verify_theorem(&dd, Execution::Sequential);
    assert!(!v.alternative && !v.pass);
    assert!(v.precondition.is_some());
    assert!(v.checks.is_empty());
    let r = top_report(&dd, Execution::Sequential).unwrap();
    assert!(!r.alternative);
    assert_eq!(r.fibred, None);
}

#[test]
fn mirror_report() {
    for pd in [RIGHT_TREFOIL, FIGURE_EIGHT, FIVE_TWO, HOPF] {
        let d = parse_pd(pd).unwrap();
        let m = d.mirror();
        let a = top_report(&d.decorate_default(), Execution::Sequential).unwrap();
        let b = top_report(&m.decorate_default(), Execution::Sequential).unwrap();
        assert_eq!((a.fil_max, a.rank), (b.fil_max, b.rank), "{pd}");
        let census = seifert_spaces(&m);
        assert_eq!(b.gr_max, Some(gr_max_formula(&census, m.num_components())));
    }
}
