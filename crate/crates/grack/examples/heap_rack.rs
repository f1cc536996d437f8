//! The heap rack of a group: pairs `(x, y)` with the partial product
//! `(x, y)(y, z) = (x, z)` and rack operation
//! `(x, y) * (z, w) = (x z⁻¹ w, y z⁻¹ w)`.
//!
//! Run with `cargo run --example heap_rack`.

use grack::constructions::{heap_rack, pair_index};
use grack::groupoid_rack::canonical_involution;
use grack::rack::check_symmetric_rack;
use grack::FiniteGroup;

fn main() {
    let n = 3;
    let group = FiniteGroup::cyclic(n);
    let heap = heap_rack(&group);
    println!(
        "heap rack of Z/{n}: {} morphisms, {} objects",
        heap.size(),
        heap.groupoid().num_objects()
    );

    // evaluate the operation on a few pairs
    for ((x, y), (z, w)) in [((0, 1), (1, 0)), ((2, 1), (0, 2)), ((1, 1), (2, 0))] {
        let a = pair_index(n, x, y);
        let b = pair_index(n, z, w);
        let r = heap.op(a, b);
        println!("({x},{y}) * ({z},{w}) = ({},{})", r / n, r % n);
    }

    // the canonical involution inverts morphisms, i.e. swaps pair entries
    let sym = canonical_involution(&heap);
    println!(
        "canonical involution is a good involution: {}",
        check_symmetric_rack(&sym)
    );
    let img = sym.involution[pair_index(n, 0, 2)];
    println!("rho(0,2) = ({},{})", img / n, img % n);
}
