//! Inverse moves: reversing one circle component of a diagram, and the
//! matching bijection on colorings (colors on the component are replaced by
//! their inverse morphisms).
//!
//! Run with `cargo run --example inverse_moves`.

use grack::coloring::{
    count_colorings, enumerate_colorings, is_valid_coloring, recolor_inverse_move,
};
use grack::constructions::heap_rack;
use grack::diagram::parse_diagram;
use grack::moves::apply_inverse_move;
use grack::FiniteGroup;

fn main() {
    // a circle passing under one edge of a theta graph; arc 3 is the circle
    let d = parse_diagram("diagram v1\narcs 4\nvm 0 1 2\nvs 2 0 1\nx+ 0 3 3\n").unwrap();
    let rack = heap_rack(&FiniteGroup::cyclic(3));

    let reversed = apply_inverse_move(&d, 3).unwrap();
    println!(
        "circle reversed: crossing sign {:?} -> {:?}",
        d.crossings[0].sign, reversed.crossings[0].sign
    );
    println!(
        "counts agree: {} = {}",
        count_colorings(&d, &rack),
        count_colorings(&reversed, &rack)
    );

    // recoloring realizes the bijection coloring-by-coloring
    let mut all_transfer = true;
    for c in enumerate_colorings(&d, &rack) {
        let image = recolor_inverse_move(&d, &c, 3, &rack).unwrap();
        all_transfer &= is_valid_coloring(&reversed, &rack, &image.assignment);
        // applying the recoloring twice gives back the original
        let back = recolor_inverse_move(&reversed, &image, 3, &rack).unwrap();
        all_transfer &= back == c;
    }
    println!("every recolored assignment is valid on the reversed diagram: {all_transfer}");

    // reversing twice restores the diagram exactly
    let twice = apply_inverse_move(&reversed, 3).unwrap();
    println!("inverse move is an involution: {}", twice == d);
}
