//! Bundled example quivers and maps.

use crate::dsl::parse_quiver;
use crate::quiver::Quiver;
use crate::random::random_quiver;

pub const TWO_ARROWS: &str = include_str!("../corpus/two_arrows.quiver");
pub const TRIANGLE: &str = include_str!("../corpus/triangle.quiver");
pub const CHAIN: &str = include_str!("../corpus/chain.quiver");
pub const A2: &str = include_str!("../corpus/a2.quiver");

/// Map on the dual extension of [`CHAIN`] with `β ↦ β`, scalars `(1, 2, 3)`.
pub const CHAIN_LIE_MAP: &str = include_str!("../corpus/chain_lie_map.json");
/// Same map but with `β ↦ β*`.
pub const CHAIN_NON_LIE_MAP: &str = include_str!("../corpus/chain_non_lie_map.json");

/// Seeds of the random part of the corpus.
pub const RANDOM_SEEDS: std::ops::RangeInclusive<u64> = 1..=12;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub quiver: Quiver,
}

pub fn fixed_corpus() -> Vec<CorpusEntry> {
    [
        ("two_arrows", TWO_ARROWS),
        ("triangle", TRIANGLE),
        ("chain", CHAIN),
        ("a2", A2),
    ]
    .into_iter()
    .map(|(name, text)| CorpusEntry {
        name: name.to_string(),
        quiver: parse_quiver(text).expect("bundled quiver parses"),
    })
    .collect()
}

pub fn random_corpus(seeds: impl IntoIterator<Item = u64>) -> Vec<CorpusEntry> {
    seeds
        .into_iter()
        .map(|s| CorpusEntry {
            name: format!("random-{s}"),
            quiver: random_quiver(s),
        })
        .collect()
}

/// The fixed entries followed by the random ones for [`RANDOM_SEEDS`].
pub fn full_corpus() -> Vec<CorpusEntry> {
    let mut all = fixed_corpus();
    all.extend(random_corpus(RANDOM_SEEDS));
    all
}
