//! Groupoid racks from augmented racks: a rack with a right group action
//! and an equivariant boundary map yields one groupoid rack per choice of
//! exponent and delta.
//!
//! Run with `cargo run --example augmented_rack`.

use grack::constructions::{augmented_groupoid_rack, check_augmented_rack, AugmentedRackData};
use grack::FiniteGroup;

fn main() {
    let datum = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
    println!("S3 conjugation datum: {}", check_augmented_rack(&datum));

    for n in -1..=2 {
        for delta in 0..=1u8 {
            match augmented_groupoid_rack(&datum, n, delta) {
                Ok(gr) => println!(
                    "(n, delta) = ({n:2}, {delta}): groupoid rack with {} morphisms",
                    gr.size()
                ),
                Err(e) => println!("(n, delta) = ({n:2}, {delta}): FAILED: {e}"),
            }
        }
    }

    // with n = 0 and delta = 0 every exponent vanishes and the operation
    // degenerates to x * y = x
    let gr = augmented_groupoid_rack(&datum, 0, 0).unwrap();
    let trivial = (0..gr.size()).all(|x| (0..gr.size()).all(|y| gr.op(x, y) == x));
    println!("(n, delta) = (0, 0) acts trivially: {trivial}");
}
