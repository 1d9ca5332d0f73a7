//! Fixtures shared by the benchmarks under `benches/`.

use d3kit::circle_bundle::{honda_diagram, pre_slide_manifold};
use d3kit::kirby::MarkedForm;
use d3kit::surgery::{ChainConvention, ContactDiagram, FourManifoldData, Variant};

/// `(g, n)` pairs spanning small to desk-scale Honda diagrams.
pub const SIZES: [(i64, i64); 4] = [(1, 4), (2, 12), (4, 24), (8, 40)];

pub fn diagram(g: i64, n: i64) -> ContactDiagram {
    honda_diagram(g, n).expect("n >= 2g > 0")
}

pub fn pre_slide(g: i64, n: i64) -> FourManifoldData {
    pre_slide_manifold(g, n, Variant::Zero, ChainConvention::Chain).expect("n >= 2g > 0")
}

pub fn marked(g: i64, n: i64) -> MarkedForm {
    MarkedForm::from_four_manifold(&pre_slide(g, n))
}
