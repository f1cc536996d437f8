//! Coloring-count invariance under Y-oriented Reidemeister moves: every
//! bundled before/after pair keeps its count, and the coloring restrictions
//! to the boundary legs match as multisets.
//!
//! Run with `cargo run --example reidemeister_invariance`.

use grack::constructions::heap_rack;
use grack::corpus::{check_invariance, corpus};
use grack::moves::{apply_move, diagrams_isomorphic};
use grack::FiniteGroup;

fn main() {
    let rack = heap_rack(&FiniteGroup::cyclic(3));
    println!("algebra: heap rack of Z/3 ({} morphisms)", rack.size());
    println!("{:<12} {:>8} {:>8}  verdict", "pair", "before", "after");
    for pair in corpus() {
        let outcome = check_invariance(&pair, &rack);
        println!(
            "{:<12} {:>8} {:>8}  {}",
            pair.name,
            outcome.before_count.to_string(),
            outcome.after_count.to_string(),
            if outcome.passed() {
                "equal, boundary ok"
            } else {
                "MISMATCH"
            }
        );
    }

    // each pair with a site encoding really is one move apart
    let witnessed = corpus().iter().filter(|p| p.site.is_some()).all(|p| {
        let out = apply_move(&p.before, p.site.as_ref().unwrap()).unwrap();
        diagrams_isomorphic(&out.diagram, &p.after)
    });
    println!("all sited pairs reproduce their after diagram: {witnessed}");
}
