use altlink::analysis::{alexander_all_pairs, alexander_oracle};
use altlink::ata::{ata_enumerate, fil_max_formula, gr_max_formula};
use altlink::diagram::braid_closure;
use altlink::par::Execution;
use altlink::seifert::{is_alternative, seifert_spaces};
use altlink::states::{component_offset, enumerate_states, polynomial_of, QuadrantClass};
use altlink::{parse_pd, HalfInt, LinkDiagram};
use proptest::prelude::*;

/// Braid words on up to four strands using every generator, so the closure
/// is a connected diagram.
fn braid_word() -> impl Strategy<Value = Vec<i32>> {
    (2i32..=4)
        .prop_flat_map(|n| {
            proptest::collection::vec((1..n, any::<bool>()), (n as usize - 1)..=8)
                .prop_map(move |v| (n, v))
        })
        .prop_filter("every generator used", |(n, v)| {
            (1..*n).all(|g| v.iter().any(|&(x, _)| x == g))
        })
        .prop_map(|(_, v)| {
            v.into_iter()
                .map(|(g, pos)| if pos { g } else { -g })
                .collect()
        })
}

fn diagram(w: &[i32]) -> LinkDiagram {
    braid_closure(w).unwrap()
}

fn fils(d: &LinkDiagram) -> Vec<HalfInt> {
    let mut v: Vec<_> = enumerate_states(&d.decorate_default(), Execution::Sequential)
        .states
        .iter()
        .map(|s| s.fil)
        .collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn faces_and_circles(w in braid_word()) {
        let d = diagram(&w);
        prop_assert_eq!(d.num_regions(), d.num_crossings() + 2);
        let census = seifert_spaces(&d);
        prop_assert_eq!(census.c, census.s + 1);
        for c in 0..d.num_crossings() {
            let x = d.crossing(c);
            prop_assert_eq!((0..4).filter(|&p| x.is_incoming(p)).count(), 2);
        }
    }

    #[test]
    fn display_round_trips(w in braid_word()) {
        let d = diagram(&w);
        let again = parse_pd(&d.to_string()).unwrap();
        prop_assert_eq!(again.pd_tuples(), d.pd_tuples());
        prop_assert_eq!(again.signs(), d.signs());
    }

    #[test]
    fn states_are_bijections_in_any_mode(w in braid_word()) {
        let d = diagram(&w);
        let dd = d.decorate_default();
        let seq = enumerate_states(&dd, Execution::Sequential);
        prop_assert!(!seq.states.is_empty());
        for s in &seq.states {
            prop_assert!(s.is_bijection(&dd));
        }
        prop_assert_eq!(seq, enumerate_states(&dd, Execution::Parallel));
    }

    #[test]
    fn mirror_reflects_filtration(w in braid_word()) {
        let d = diagram(&w);
        let offset = component_offset(&d);
        let reflected: Vec<HalfInt> = fils(&d).into_iter().rev().map(|f| offset + offset - f).collect();
        prop_assert_eq!(fils(&d.mirror()), reflected);
    }

    #[test]
    fn reversal_keeps_signs(w in braid_word()) {
        let d = diagram(&w);
        let r = d.reverse();
        prop_assert_eq!(r.signs(), d.signs());
        prop_assert_eq!(r.num_regions(), d.num_regions());
    }

    #[test]
    fn alternative_diagrams_match_brute_force_top(w in braid_word()) {
        let d = diagram(&w);
        let census = seifert_spaces(&d);
        prop_assume!(is_alternative(&census).alternative);
        let dd = d.decorate_default();
        let ata = ata_enumerate(&dd, Execution::Sequential).unwrap();
        let key = |s: &altlink::states::KauffmanState| s.assignment.iter().map(|c| c.class).collect::<Vec<QuadrantClass>>();
        let mut top: Vec<_> = enumerate_states(&dd, Execution::Sequential).top().iter().map(key).collect();
        top.sort();
        prop_assert_eq!(ata.iter().map(key).collect::<Vec<_>>(), top);
        let fil = fil_max_formula(&census, d.num_components(), d.num_crossings()).unwrap();
        let gr = gr_max_formula(&census, d.num_components());
        for s in &ata {
            prop_assert_eq!(s.fil, fil);
            prop_assert_eq!(s.gr, gr);
        }
        prop_assert_eq!(ata_enumerate(&dd, Execution::Parallel).unwrap(), ata);
    }

    #[test]
    fn oracle_is_well_defined(w in braid_word()) {
        let d = diagram(&w);
        let all = alexander_all_pairs(&d).unwrap();
        for (_, p) in &all {
            prop_assert!(p.eq_up_to_unit(&all[0].1).unwrap());
        }
        if d.num_components() == 1 {
            let states = enumerate_states(&d.decorate_default(), Execution::Sequential).states;
            let sum = polynomial_of(&states).unwrap();
            prop_assert!(sum.eq_up_to_unit(&alexander_oracle(&d).unwrap()).unwrap());
        }
    }
}
