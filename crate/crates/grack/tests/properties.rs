//! Property tests over randomly grown diagrams.
//!
//! Diagrams are generated by applying random forward moves to a valid seed
//! diagram, so every generated instance is valid by construction; the
//! properties then pin the serializer round-trip and the solver against the
//! brute-force oracle.

use grack::coloring::{count_colorings, count_colorings_oracle};
use grack::constructions::heap_rack;
use grack::diagram::{parse_diagram, serialize_diagram, Diagram};
use grack::moves::{apply_move, Direction, MoveKind, MoveSite};
use grack::FiniteGroup;
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum GrowStep {
    R2 {
        plus: bool,
        over: usize,
        under: usize,
    },
    Reverse {
        arc: usize,
    },
}

fn grow_step() -> impl Strategy<Value = GrowStep> {
    prop_oneof![
        (any::<bool>(), 0..32usize, 0..32usize).prop_map(|(plus, over, under)| GrowStep::R2 {
            plus,
            over,
            under
        }),
        (0..32usize).prop_map(|arc| GrowStep::Reverse { arc }),
    ]
}

/// Applies the steps that happen to fit; inapplicable ones are skipped, so
/// the result is always a valid diagram.
fn grow(seed: usize, steps: &[GrowStep]) -> Diagram {
    let mut d = match seed {
        0 => parse_diagram("diagram v1\narcs 2\nloop 0\nloop 1\n").unwrap(),
        1 => parse_diagram("diagram v1\narcs 4\nloop 3\nvm 0 1 2\nvs 2 0 1\n").unwrap(),
        _ => parse_diagram("diagram v1\narcs 5\nloop 4\nx+ 4 3 3\nvm 0 1 2\nvs 2 0 1\n").unwrap(),
    };
    for step in steps {
        let site = match *step {
            GrowStep::R2 { plus, over, under } => MoveSite::new(
                if plus {
                    MoveKind::R2Plus
                } else {
                    MoveKind::R2Minus
                },
                Direction::Forward,
                vec![over % d.num_arcs, under % d.num_arcs],
            ),
            GrowStep::Reverse { arc } => {
                MoveSite::new(MoveKind::Inv, Direction::Forward, vec![arc % d.num_arcs])
            }
        };
        if let Ok(out) = apply_move(&d, &site) {
            d = out.diagram;
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn grown_diagrams_are_valid_and_round_trip(
        seed in 0..3usize,
        steps in proptest::collection::vec(grow_step(), 0..10),
    ) {
        let d = grow(seed, &steps);
        prop_assert!(d.validate().is_valid());
        let text = serialize_diagram(&d);
        prop_assert_eq!(parse_diagram(&text).unwrap(), d);
    }

    #[test]
    fn solver_matches_oracle_on_grown_diagrams(
        seed in 0..3usize,
        steps in proptest::collection::vec(grow_step(), 0..6),
    ) {
        let d = grow(seed, &steps);
        let x = heap_rack(&FiniteGroup::cyclic(2));
        // keep the brute-force side tractable
        if (x.size() as f64).powi(d.num_arcs as i32) <= 1e6 {
            let fast = count_colorings(&d, &x);
            let slow = count_colorings_oracle(&d, &x).unwrap();
            prop_assert_eq!(fast, slow);
        }
    }

    #[test]
    fn components_partition_the_arcs(
        seed in 0..3usize,
        steps in proptest::collection::vec(grow_step(), 0..10),
    ) {
        let d = grow(seed, &steps);
        let components = d.components();
        let mut seen = vec![0usize; d.num_arcs];
        for comp in &components {
            for &arc in comp {
                seen[arc] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
    }
}
