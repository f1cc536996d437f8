//! Acceptance suite: one test per criterion, every comparison exact.
//!
//! Run with `cargo test -p grack --test acceptance -- --nocapture` to see
//! the one-line verdict per criterion.

#![allow(clippy::needless_range_loop)]

use grack::coloring::{count_colorings, count_colorings_oracle};
use grack::constructions::{
    augmented_groupoid_rack, heap_rack, is_multiple_conjugation_quandle, multiple_group_rack,
    rack_square, AugmentedRackData, MultipleGroupRackData,
};
use grack::corpus::{check_invariance, corpus};
use grack::diagram::{free_loop, parse_diagram, serialize_diagram, theta};
use grack::groupoid_rack::check_groupoid_rack;
use grack::moves::{
    apply_inverse_move, apply_move, diagrams_isomorphic, Direction, MoveKind, MoveSite,
};
use grack::mutate::{corrupt_groupoid_rack, SplitMix64};
use grack::universality::{
    check_universality_conditions, universality_construct, universality_data_of,
};
use grack::{FiniteGroup, FiniteRack, GroupoidRack};
use num_bigint::BigUint;
use std::time::Instant;

/// Every structure criterion 1 certifies, by name.
fn criterion_one_algebras() -> Vec<(String, GroupoidRack)> {
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push((format!("heap_z{n}"), heap_rack(&FiniteGroup::cyclic(n))));
    }
    for n in [3, 5] {
        out.push((
            format!("rack_square_dihedral{n}"),
            rack_square(&FiniteRack::dihedral(n)).expect("dihedral square verifies"),
        ));
    }
    let mgr = MultipleGroupRackData::conjugation(FiniteGroup::symmetric(3));
    out.push((
        "mgr_s3_conjugation".into(),
        multiple_group_rack(&mgr).expect("conjugation satisfies the conditions"),
    ));
    let aug = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
    for n in [-1i64, 0, 1, 2] {
        for delta in [0u8, 1] {
            out.push((
                format!("augmented_s3_n{n}_d{delta}"),
                augmented_groupoid_rack(&aug, n, delta)
                    .unwrap_or_else(|e| panic!("augmented (n={n}, delta={delta}): {e}")),
            ));
        }
    }
    out
}

fn invariance_algebras() -> Vec<(&'static str, GroupoidRack)> {
    vec![
        ("heap_z2", heap_rack(&FiniteGroup::cyclic(2))),
        ("heap_z3", heap_rack(&FiniteGroup::cyclic(3))),
        (
            "mgr_s3",
            multiple_group_rack(&MultipleGroupRackData::conjugation(FiniteGroup::symmetric(
                3,
            )))
            .unwrap(),
        ),
    ]
}

#[test]
fn acceptance_1_construction_axioms() {
    let start = Instant::now();
    let algebras = criterion_one_algebras();
    assert_eq!(algebras.len(), 16);
    for (name, gr) in &algebras {
        let report = check_groupoid_rack(gr);
        assert!(
            report.is_valid(),
            "{name} failed its axiom check:\n{report}"
        );
        // checkers are pure: re-running yields the identical report
        assert_eq!(
            report,
            check_groupoid_rack(gr),
            "{name}: checker not deterministic"
        );
        // every groupoid rack is a symmetric rack under morphism inversion
        let sym = grack::canonical_involution(gr);
        assert!(
            grack::check_symmetric_rack(&sym).is_valid(),
            "{name}: canonical involution fails the good-involution conditions"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 10,
        "criterion 1 took {elapsed:?}, budget 10 s"
    );
    println!("acceptance 1 (construction axioms, 16 algebras, {elapsed:?}): PASS");
}

#[test]
fn acceptance_2_mcq_detection() {
    let conj = MultipleGroupRackData::conjugation(FiniteGroup::symmetric(3));
    assert!(is_multiple_conjugation_quandle(&conj));
    let trivial = MultipleGroupRackData::trivial(vec![FiniteGroup::symmetric(3)]);
    multiple_group_rack(&trivial).expect("trivial op is a valid multiple group rack");
    assert!(!is_multiple_conjugation_quandle(&trivial));
    println!("acceptance 2 (multiple conjugation quandle detection): PASS");
}

#[test]
fn acceptance_3_universality_round_trip() {
    let start = Instant::now();
    let groups: Vec<(&str, FiniteGroup)> = vec![
        ("z2", FiniteGroup::cyclic(2)),
        ("z3", FiniteGroup::cyclic(3)),
        ("s3", FiniteGroup::symmetric(3)),
    ];
    for (name, group) in groups {
        let heap = heap_rack(&group);
        let datum = universality_data_of(&heap);
        let report = check_universality_conditions(&datum);
        assert!(
            report.is_valid(),
            "{name}: conditions (1)-(5) fail:\n{report}"
        );
        // construct() also asserts the four internal lemmas and re-runs the
        // groupoid and groupoid-rack checkers on its output
        let rebuilt = universality_construct(&datum)
            .unwrap_or_else(|e| panic!("{name}: reconstruction failed: {e}"));
        let gr = &rebuilt.groupoid_rack;

        // every morphism of a heap rack appears in a composable pair, so
        // the embedding must be the identity and the tables must agree
        // cell for cell
        let m = heap.size();
        assert_eq!(
            rebuilt.embedding,
            (0..m).collect::<Vec<_>>(),
            "{name}: embedding"
        );
        assert_eq!(gr.op_table(), heap.op_table(), "{name}: op tables differ");
        assert_eq!(
            gr.groupoid().comp_table(),
            heap.groupoid().comp_table(),
            "{name}: composition tables differ"
        );
        assert_eq!(
            gr.groupoid().inverse_table(),
            heap.groupoid().inverse_table(),
            "{name}: inverse tables differ"
        );
        // objects may be numbered differently; dom/cod must agree through
        // one consistent object bijection that carries identities over
        assert_eq!(gr.groupoid().num_objects(), heap.groupoid().num_objects());
        let num_obj = heap.groupoid().num_objects();
        let mut object_map = vec![usize::MAX; num_obj];
        for f in 0..m {
            for (from, to) in [
                (heap.groupoid().dom(f), gr.groupoid().dom(f)),
                (heap.groupoid().cod(f), gr.groupoid().cod(f)),
            ] {
                if object_map[from] == usize::MAX {
                    object_map[from] = to;
                } else {
                    assert_eq!(object_map[from], to, "{name}: inconsistent object map");
                }
            }
        }
        let mut seen = vec![false; num_obj];
        for &o in &object_map {
            assert!(
                o != usize::MAX && !seen[o],
                "{name}: object map not a bijection"
            );
            seen[o] = true;
        }
        for obj in 0..num_obj {
            assert_eq!(
                gr.groupoid().identity(object_map[obj]),
                heap.groupoid().identity(obj),
                "{name}: identity morphisms differ at object {obj}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "criterion 3 took {elapsed:?}, budget 30 s"
    );
    println!("acceptance 3 (universality round-trip on Z/2, Z/3, S3, {elapsed:?}): PASS");
}

#[test]
fn acceptance_4_solver_oracle_equivalence() {
    let start = Instant::now();
    let algebras = invariance_algebras();
    let mut checked = 0;
    for pair in corpus() {
        for d in [&pair.before, &pair.after] {
            assert!(d.num_arcs <= 6, "{}: corpus diagram too large", pair.name);
            for (name, x) in &algebras {
                let fast = count_colorings(d, x);
                let slow = count_colorings_oracle(d, x)
                    .unwrap_or_else(|e| panic!("{}/{name}: oracle guard: {e}", pair.name));
                assert_eq!(
                    fast, slow,
                    "{}/{name}: solver {fast} != oracle {slow}",
                    pair.name
                );
                checked += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "criterion 4 took {elapsed:?}, budget 60 s"
    );
    println!(
        "acceptance 4 (solver = oracle on {checked} diagram/algebra pairs, {elapsed:?}): PASS"
    );
}

#[test]
fn acceptance_5_invariance_suite() {
    let pairs = corpus();
    assert!(pairs.len() >= 14, "corpus must hold at least 14 pairs");
    let algebras = invariance_algebras();
    for pair in &pairs {
        for (name, x) in &algebras {
            let outcome = check_invariance(pair, x);
            assert!(
                outcome.counts_equal,
                "{}/{name}: counts differ: {} vs {}",
                pair.name, outcome.before_count, outcome.after_count
            );
            assert!(
                outcome.boundary_equal,
                "{}/{name}: boundary restriction multisets differ",
                pair.name
            );
        }
    }
    println!(
        "acceptance 5 (invariance on {} pairs x {} algebras, counts and boundaries): PASS",
        pairs.len(),
        algebras.len()
    );
}

#[test]
fn acceptance_6_closed_form_counts() {
    let empty = parse_diagram("diagram v1\narcs 0\n").unwrap();
    let loop_d = free_loop();
    let theta_d = theta();
    for (gname, n, theta_want) in [("z2", 2usize, 8u64), ("z3", 3, 27)] {
        let x = heap_rack(&FiniteGroup::cyclic(n));
        // oracle first, then the pinned regression value
        let oracle = count_colorings_oracle(&theta_d, &x).unwrap();
        assert_eq!(
            oracle,
            BigUint::from(theta_want),
            "{gname}: oracle disagrees with |G|^3"
        );
        assert_eq!(
            count_colorings(&theta_d, &x),
            BigUint::from(theta_want),
            "{gname}: theta"
        );
        assert_eq!(
            count_colorings(&loop_d, &x),
            BigUint::from(x.size()),
            "{gname}: free loop"
        );
        assert_eq!(
            count_colorings(&empty, &x),
            BigUint::from(1u32),
            "{gname}: empty diagram"
        );
    }
    println!("acceptance 6 (closed-form counts: loop |X|, theta 8/27, empty 1): PASS");
}

#[test]
fn acceptance_7_mutation_robustness() {
    let start = Instant::now();
    let mut total = 0;
    for (name, gr) in criterion_one_algebras() {
        let mut rng = SplitMix64::new(0x5eed_0001);
        for i in 0..50 {
            let (bad, site) = corrupt_groupoid_rack(&gr, &mut rng)
                .unwrap_or_else(|| panic!("{name}: no mutable cell"));
            assert!(
                !check_groupoid_rack(&bad).is_valid(),
                "{name}: corruption {i} at {site:?} went undetected"
            );
            total += 1;
        }
    }
    println!(
        "acceptance 7 (mutation robustness: {total} seeded corruptions all detected, {:?}): PASS",
        start.elapsed()
    );
}

#[test]
fn acceptance_8_round_trips() {
    // parse/serialize identity, bit-exact, on every corpus diagram file
    let corpus_dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files = 0;
    for entry in std::fs::read_dir(&corpus_dir).unwrap() {
        let sub = entry.unwrap().path();
        if !sub.is_dir() {
            continue;
        }
        for file in ["before.dg", "after.dg"] {
            let text = std::fs::read_to_string(sub.join(file)).unwrap();
            let d = parse_diagram(&text).unwrap();
            assert_eq!(
                serialize_diagram(&d),
                text,
                "{}/{file}: not canonical",
                sub.display()
            );
            assert_eq!(parse_diagram(&serialize_diagram(&d)).unwrap(), d);
            files += 1;
        }
    }
    assert!(files >= 28);

    // forward then backward is the identity up to arc relabeling
    let backward_anchor = |kind: MoveKind, fwd: &MoveSite| -> Vec<usize> {
        match kind {
            MoveKind::R2Plus | MoveKind::R2Minus => vec![0, 1],
            MoveKind::R3 => fwd.anchor.clone(),
            MoveKind::R5a | MoveKind::R5c => fwd.anchor.clone(),
            MoveKind::R5b | MoveKind::R5d => vec![fwd.anchor[0], 0],
            MoveKind::R6a | MoveKind::R6b | MoveKind::R6c | MoveKind::R6d => fwd.anchor.clone(),
            MoveKind::Inv => fwd.anchor.clone(),
            MoveKind::Composite => unreachable!(),
        }
    };
    for pair in corpus() {
        let Some(site) = &pair.site else { continue };
        let fwd = apply_move(&pair.before, site)
            .unwrap_or_else(|e| panic!("{}: forward: {e}", pair.name));
        let back_site = MoveSite::new(
            site.kind,
            Direction::Backward,
            backward_anchor(site.kind, site),
        );
        let back = apply_move(&fwd.diagram, &back_site)
            .unwrap_or_else(|e| panic!("{}: backward: {e}", pair.name));
        assert!(
            diagrams_isomorphic(&back.diagram, &pair.before),
            "{}: forward-backward is not the identity",
            pair.name
        );
    }

    // the inverse move is an involution on the nose
    for pair in corpus() {
        if pair.kind != MoveKind::Inv {
            continue;
        }
        let arc = pair.site.as_ref().unwrap().anchor[0];
        let once = apply_inverse_move(&pair.before, arc).unwrap();
        assert_eq!(once, pair.after, "{}: stored after diagram", pair.name);
        assert_eq!(
            apply_inverse_move(&once, arc).unwrap(),
            pair.before,
            "{}: involution",
            pair.name
        );
    }
    println!(
        "acceptance 8 (round-trips: {files} canonical files, move and inverse involutions): PASS"
    );
}
