mod common;

use common::{arb_quiver, finite_corpus, mixed_corpus};
use proptest::prelude::*;
use qgr_core::growth::cyclic_vertex_mask;
use qgr_core::k0::k0;
use qgr_core::matricial::{bratteli, endo_block_dims, eventual_rank, gk1_report, noetherian_check, Gk1Report};
use qgr_core::monomial::{parse_algebra, serialize_algebra, ufnarovskii_graph, MonomialPresentation};
use qgr_core::oracles::enumerate_normal_words;
use qgr_core::{gk_dimension, growth_oracle, BigUint};

fn arb_presentation() -> impl Strategy<Value = MonomialPresentation> {
    (2usize..=3)
        .prop_flat_map(|g| (Just(g), prop::collection::vec(prop::collection::vec(0..g, 2..=4), 1..=3)))
        .prop_map(|(g, rels)| {
            let gens = ["x", "y", "z"][..g].iter().map(|s| s.to_string()).collect();
            MonomialPresentation::new(gens, rels).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_words_count_graph_paths(a in arb_presentation()) {
        let g = ufnarovskii_graph(&a).unwrap();
        let d = a.max_relation_len();
        let brute = enumerate_normal_words(&a, d + 7).unwrap();
        let paths = growth_oracle(&g, 8);
        for n in d - 1..=d + 7 {
            prop_assert_eq!(BigUint::from(brute[n]), paths[n - (d - 1)].clone());
        }
    }

    #[test]
    fn presentations_round_trip(a in arb_presentation()) {
        let back = parse_algebra(&serialize_algebra(&a)).unwrap();
        prop_assert_eq!(back.relations(), a.relations());
    }

    #[test]
    fn bratteli_sums_count_paths(q in arb_quiver()) {
        prop_assert_eq!(bratteli(&q, 12).sums(), growth_oracle(&q, 12));
    }

    #[test]
    fn noetherian_implies_gk_at_most_one(q in arb_quiver()) {
        let n = noetherian_check(&q);
        if n.left || n.right {
            prop_assert!(matches!(gk_dimension(&q).gk, Some(d) if d <= 1));
        }
    }
}

#[test]
fn gk_of_the_xy_algebra() {
    let a = parse_algebra("gens x y\nrel xy").unwrap();
    assert_eq!(gk_dimension(&ufnarovskii_graph(&a).unwrap()).gk, Some(2));
    // Normal words y^a x^b: n + 1 of length n.
    let counts = enumerate_normal_words(&a, 8).unwrap();
    assert!(counts.iter().enumerate().all(|(n, &c)| c == n + 1));
}

#[test]
fn rank_equals_eventual_rank_on_corpus() {
    for q in &finite_corpus(100).quivers {
        assert_eq!(k0(q).unwrap().rank, eventual_rank(q));
    }
}

#[test]
fn gk_one_blocks_settle_to_ones() {
    for q in &mixed_corpus(200).quivers {
        if gk_dimension(q).gk != Some(1) {
            continue;
        }
        let n = cyclic_vertex_mask(q).iter().filter(|&&c| c).count();
        assert!(matches!(gk1_report(q), Gk1Report::Semisimple { n: m, .. } if m == n));
        let blocks = endo_block_dims(q, 2 * q.vertex_count()).unwrap();
        let last = blocks.last().unwrap();
        assert_eq!(last.blocks.len(), n);
        assert!(last.blocks.values().all(|b| *b == BigUint::from(1u32)));
    }
}
