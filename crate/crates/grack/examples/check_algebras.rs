//! Exhaustive axiom checking of racks, symmetric racks, groups, and
//! groupoid racks, including what a violation report looks like.
//!
//! Run with `cargo run --example check_algebras`.

use grack::{
    check_group, check_groupoid_rack, check_rack, check_symmetric_rack, constructions, FiniteGroup,
    FiniteRack, GroupoidRack, SymmetricRackData,
};

fn main() {
    // the dihedral rack on Z/5: x * y = 2y - x
    let dihedral = FiniteRack::dihedral(5);
    println!("dihedral rack on Z/5: {}", check_rack(&dihedral));

    // its columns are involutions, so the identity map is a good involution
    let sym = SymmetricRackData::new(dihedral, (0..5).collect()).unwrap();
    println!("with identity involution: {}", check_symmetric_rack(&sym));

    let s3 = FiniteGroup::symmetric(3);
    println!("symmetric group S3: {}", check_group(&s3));

    let heap = constructions::heap_rack(&s3);
    println!(
        "heap rack of S3 ({} morphisms over {} objects): {}",
        heap.size(),
        heap.groupoid().num_objects(),
        check_groupoid_rack(&heap)
    );

    // corrupt one cell and watch the checker locate it
    let mut op = heap.op_table().to_vec();
    op[5][7] = (op[5][7] + 1) % heap.size();
    let bad = GroupoidRack::new(heap.groupoid().clone(), op).unwrap();
    let report = check_groupoid_rack(&bad);
    println!(
        "after corrupting op[5][7]: {} violations, first: {}",
        report.total_violations(),
        report.violations()[0]
    );
}
