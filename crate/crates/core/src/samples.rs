//! Small collections used across tests, benches and the CLI.

use crate::cyclic::{validate_collection, Collection, KSubset};

fn parse(k: usize, n: usize, labels: &[&str]) -> Collection {
    let members = labels.iter().map(|l| KSubset::parse(n, l).expect("valid label"));
    validate_collection(members, k, n).expect("valid collection")
}

/// The symmetric (3,9) collection whose quiver has a six-valent centre 147.
pub fn symmetric_3_9() -> Collection {
    parse(
        3,
        9,
        &[
            "789", "189", "129", "123", "234", "345", "456", "567", "678", "179", "134", "467", "178", "124", "457",
            "147", "127", "145", "478",
        ],
    )
}

/// (2,4) fan through 13.
pub fn fan_2_4() -> Collection {
    parse(2, 4, &["12", "23", "34", "14", "13"])
}

/// (2,6) collection of the triangulation with inner triangle 135.
pub fn triangle_2_6() -> Collection {
    parse(2, 6, &["12", "23", "34", "45", "56", "16", "13", "35", "15"])
}
