//! Regenerates the sample files in `data/`: groups, racks, groupoid racks,
//! construction specs, and diagrams used by the other examples, the CLI
//! docs, and the test suite.
//!
//! Run with `cargo run --example export_data`.

use grack::constructions::{AugmentedRackData, MultipleGroupRackData};
use grack::diagram::{free_loop, serialize_diagram, theta};
use grack::textfmt::{
    serialize_augmented, serialize_group, serialize_groupoid_rack, serialize_mgr, serialize_rack,
    serialize_universal,
};
use grack::universality::universality_data_of;
use grack::{constructions, FiniteGroup, FiniteRack};
use std::path::Path;

fn main() -> std::io::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, content: String| -> std::io::Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, content)?;
        println!("wrote {}", path.display());
        Ok(())
    };

    for n in [2usize, 3] {
        write(
            &format!("z{n}.group"),
            serialize_group(&FiniteGroup::cyclic(n)),
        )?;
    }
    write("s3.group", serialize_group(&FiniteGroup::symmetric(3)))?;
    write("dihedral3.rack", serialize_rack(&FiniteRack::dihedral(3)))?;
    write("dihedral5.rack", serialize_rack(&FiniteRack::dihedral(5)))?;

    for n in [2usize, 3] {
        let gr = constructions::heap_rack(&FiniteGroup::cyclic(n));
        write(&format!("heap_z{n}.gr"), serialize_groupoid_rack(&gr))?;
    }

    let mgr = MultipleGroupRackData::conjugation(FiniteGroup::symmetric(3));
    write("s3_conj.mgr", serialize_mgr(&mgr))?;
    let mgr_rack = constructions::multiple_group_rack(&mgr).expect("conjugation is a valid mgr");
    write("s3_conj_mgr.gr", serialize_groupoid_rack(&mgr_rack))?;

    let aug = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
    write("s3_conj.aug", serialize_augmented(&aug))?;

    let heap2 = constructions::heap_rack(&FiniteGroup::cyclic(2));
    write(
        "heap_z2.univ",
        serialize_universal(&universality_data_of(&heap2)),
    )?;

    write("theta.dg", serialize_diagram(&theta()))?;
    write("free_loop.dg", serialize_diagram(&free_loop()))?;
    write(
        "theta_loop.dg",
        "diagram v1\narcs 4\nloop 3\nvm 0 1 2\nvs 2 0 1\n".to_string(),
    )?;
    Ok(())
}
