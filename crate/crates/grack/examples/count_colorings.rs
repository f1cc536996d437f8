//! Counting diagram colorings by a groupoid rack: the free loop, the theta
//! graph, and a knotted variant, cross-checked against the brute-force
//! oracle.
//!
//! Run with `cargo run --example count_colorings`.

use grack::coloring::{count_colorings, count_colorings_oracle, enumerate_colorings};
use grack::constructions::{heap_rack, multiple_group_rack, MultipleGroupRackData};
use grack::diagram::{free_loop, parse_diagram, theta};
use grack::FiniteGroup;

fn main() {
    let heap3 = heap_rack(&FiniteGroup::cyclic(3));

    let loop_d = free_loop();
    println!(
        "free loop, heap rack of Z/3: {} colorings (= |X| = {})",
        count_colorings(&loop_d, &heap3),
        heap3.size()
    );

    // theta graph: a composable pair is free, the stem is forced
    let theta_d = theta();
    let fast = count_colorings(&theta_d, &heap3);
    let slow = count_colorings_oracle(&theta_d, &heap3).unwrap();
    println!("theta graph, heap rack of Z/3: solver {fast}, oracle {slow}");

    let mgr = multiple_group_rack(&MultipleGroupRackData::conjugation(FiniteGroup::symmetric(
        3,
    )))
    .unwrap();
    println!(
        "theta graph, S3 conjugation: {} colorings (= |S3|^2)",
        count_colorings(&theta_d, &mgr)
    );

    // a circle threaded under one theta edge
    let threaded = parse_diagram("diagram v1\narcs 4\nvm 0 1 2\nvs 2 0 1\nx+ 0 3 3\n").unwrap();
    let count = count_colorings(&threaded, &heap3);
    println!("theta with a circle under one edge, heap Z/3: {count} colorings");

    println!("first three theta colorings (arc = morphism):");
    for c in enumerate_colorings(&theta_d, &heap3).take(3) {
        println!("  {:?}", c.assignment);
    }
}
