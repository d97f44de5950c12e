#![allow(dead_code)]

use proptest::prelude::*;
use qgr_core::oracles::{random_finite_quiver, Corpus, CorpusParams};
use qgr_core::{parse_quiver, Quiver};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EX8: &str = "vertex a\nvertex b\narrow f: a -> b\narrow p: a -> a\narrow q: b -> b";

pub fn quiver(text: &str) -> Quiver {
    parse_quiver(text).expect("test quiver parses")
}

pub fn params() -> CorpusParams {
    let seed = std::env::var("QGR_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| CorpusParams::default().seed);
    CorpusParams {
        seed,
        ..CorpusParams::default()
    }
}

pub fn finite_corpus(count: usize) -> Corpus {
    Corpus::finite_gk(params(), count)
}

pub fn mixed_corpus(count: usize) -> Corpus {
    Corpus::mixed(params(), count)
}

/// Any quiver with at most 6 vertices and 10 arrows.
pub fn arb_quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=10)))
        .prop_map(|(n, arrows)| {
            let vertices = (0..n).map(|i| format!("v{i}")).collect();
            let arrows = arrows
                .into_iter()
                .enumerate()
                .map(|(k, (s, t))| (format!("e{k}"), s, t))
                .collect();
            Quiver::from_indices("arb", vertices, arrows).unwrap()
        })
}

/// Quivers of finite GK-dimension from the block generator.
pub fn arb_finite_quiver() -> impl Strategy<Value = Quiver> {
    any::<u64>().prop_map(|seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_finite_quiver(&mut rng, &CorpusParams::default(), "fin")
    })
}
