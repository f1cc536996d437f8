//! The universal reconstruction: starting from a symmetric rack with a
//! partial product satisfying five coherence conditions, rebuild the
//! groupoid rack. Running it on the data extracted from a heap rack
//! recovers the heap rack itself.
//!
//! Run with `cargo run --example universality`.

use grack::universality::{
    check_universality_conditions, universality_construct, universality_data_of,
};
use grack::{constructions, FiniteGroup};

fn main() {
    for n in [2usize, 3] {
        let heap = constructions::heap_rack(&FiniteGroup::cyclic(n));
        let datum = universality_data_of(&heap);
        println!(
            "heap rack of Z/{n}: carrier {}, pairs {}",
            datum.size(),
            datum.pairs().len()
        );
        println!(
            "  conditions (1)-(5): {}",
            check_universality_conditions(&datum)
        );

        let rebuilt = universality_construct(&datum).expect("reconstruction succeeds");
        println!(
            "  reconstructed: {} morphisms over {} objects",
            rebuilt.groupoid_rack.size(),
            rebuilt.groupoid_rack.groupoid().num_objects()
        );
        let identical = rebuilt.groupoid_rack.op_table() == heap.op_table()
            && rebuilt.groupoid_rack.groupoid().comp_table() == heap.groupoid().comp_table();
        println!("  operation and composition tables identical: {identical}");
    }

    // dropping a pair from P breaks the closure conditions
    let heap = constructions::heap_rack(&FiniteGroup::cyclic(2));
    let mut datum = universality_data_of(&heap);
    datum.mu[1][2] = None;
    let report = check_universality_conditions(&datum);
    println!(
        "after deleting one pair from P: {} violations, first: {}",
        report.total_violations(),
        report.violations()[0]
    );
}
