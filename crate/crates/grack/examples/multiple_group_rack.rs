//! Multiple group racks: a disjoint union of groups with a compatible rack
//! operation, and the conjugation test that recognizes multiple
//! conjugation quandles.
//!
//! Run with `cargo run --example multiple_group_rack`.

use grack::constructions::{
    is_multiple_conjugation_quandle, multiple_group_rack, MultipleGroupRackData,
};
use grack::FiniteGroup;

fn main() {
    let conj = MultipleGroupRackData::conjugation(FiniteGroup::symmetric(3));
    let gr = multiple_group_rack(&conj).expect("conjugation satisfies the conditions");
    println!(
        "S3 with conjugation: {} morphisms over {} object(s)",
        gr.size(),
        gr.groupoid().num_objects()
    );
    println!(
        "is a multiple conjugation quandle: {}",
        is_multiple_conjugation_quandle(&conj)
    );

    // the trivial operation is a valid multiple group rack but on a
    // nonabelian group it is not conjugation
    let trivial = MultipleGroupRackData::trivial(vec![FiniteGroup::symmetric(3)]);
    multiple_group_rack(&trivial).expect("trivial operation satisfies the conditions");
    println!(
        "S3 with the trivial operation is an MCQ: {}",
        is_multiple_conjugation_quandle(&trivial)
    );

    // a two-group family: objects stay separate in the groupoid
    let family =
        MultipleGroupRackData::trivial(vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)]);
    let gr = multiple_group_rack(&family).unwrap();
    println!(
        "Z/2 ⊔ Z/3 (trivial op): {} morphisms over {} objects",
        gr.size(),
        gr.groupoid().num_objects()
    );
}
