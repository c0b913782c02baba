//! The five published complete arcs, bundled as certificate files.

use crate::arc::ArcSet;
use crate::certificate::Certificate;

const SOURCES: [&str; 5] = [
    include_str!("../../../fixtures/figure1_z6.json"),
    include_str!("../../../fixtures/figure2_z10.json"),
    include_str!("../../../fixtures/figure3_z14.json"),
    include_str!("../../../fixtures/figure4_z22.json"),
    include_str!("../../../fixtures/figure5_z24.json"),
];

/// Certificate of figure `k` (1-based): complete arcs of size 8, 12, 12, 18
/// and 20 over `Z_6`, `Z_10`, `Z_14`, `Z_22` and `Z_24`.
///
/// # Panics
/// If `k` is not in `1..=5`.
pub fn figure_certificate(k: usize) -> Certificate {
    Certificate::parse(SOURCES[k - 1]).expect("bundled fixture parses")
}

pub fn figure(k: usize) -> ArcSet {
    figure_certificate(k).to_arc().expect("bundled fixture is well formed")
}

pub fn figures() -> Vec<ArcSet> {
    (1..=5).map(figure).collect()
}
