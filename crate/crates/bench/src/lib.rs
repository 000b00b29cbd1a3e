//! Fixed workloads shared by the solver benchmarks.

use efsize::{linorder_instances, parity_property, StringProperty, StructureClass};

/// The parity pair of width `n`.
pub fn parity(n: u8) -> (StringProperty, StringProperty) {
    parity_property(n).expect("parity widths in the benches are valid")
}

/// The linear-order instance with `n` and `n - 1` elements.
pub fn orders(n: u8) -> (StructureClass, StructureClass) {
    linorder_instances(n).expect("order sizes in the benches are valid")
}
