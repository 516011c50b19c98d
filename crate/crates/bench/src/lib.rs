//! Inputs shared by the benchmarks.

use plabic_core::families::{family_quiver, FamilySpec};
use plabic_core::samples::symmetric_3_9;
use plabic_core::Quiver;

/// Underlying quivers of a few symmetric collections, labelled for reports.
pub fn quiver_corpus() -> Vec<(String, Quiver)> {
    let mut out = vec![(
        "fig-3-9".to_string(),
        Quiver::from_collection(&symmetric_3_9()).expect("figure collection").underline(),
    )];
    for spec in [FamilySpec::Grid(4), FamilySpec::CobwebPlus(5), FamilySpec::Triangle(3), FamilySpec::Sporadic(3, 12)] {
        out.push((spec.to_string().replace(' ', "-"), family_quiver(spec).expect("supported family")));
    }
    out
}
