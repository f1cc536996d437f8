//! Seeded single-cell corruption of algebra tables, for robustness testing.
//!
//! Every mutation changes exactly one table cell to a different in-range
//! value. A corrupted structure must then fail its checker; the sampler is
//! driven by a tiny self-contained generator so runs reproduce bit-for-bit
//! from a seed, independent of any external RNG crate.

use crate::groupoid::FiniteGroupoid;
use crate::groupoid_rack::GroupoidRack;

/// SplitMix64: small, fast, and stable across platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` (rejection sampling; `bound > 0`).
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        let bound = bound as u64;
        let limit = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < limit {
                return (v % bound) as usize;
            }
        }
    }
}

/// Where a single-cell mutation landed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MutationSite {
    Op { x: usize, y: usize },
    Comp { f: usize, g: usize },
    Dom { f: usize },
    Cod { f: usize },
    Identity { object: usize },
    Inverse { f: usize },
}

/// Corrupts one uniformly chosen cell of the groupoid-rack tables to a
/// different in-range value. Cells with no alternative value (for example
/// `dom` entries of a one-object groupoid) are skipped; `None` is returned
/// only when no cell of the structure admits any change at all.
pub fn corrupt_groupoid_rack(
    gr: &GroupoidRack,
    rng: &mut SplitMix64,
) -> Option<(GroupoidRack, MutationSite)> {
    let g = gr.groupoid();
    let m = g.num_morphisms();
    let n = g.num_objects();
    // cell counts per table, in a fixed order
    let op_cells = m * m;
    let comp_cells = m * m;
    let dom_cells = if n > 1 { m } else { 0 };
    let cod_cells = if n > 1 { m } else { 0 };
    let id_cells = if m > 1 { n } else { 0 };
    let inv_cells = if m > 1 { m } else { 0 };
    let table_sizes = [
        op_cells, comp_cells, dom_cells, cod_cells, id_cells, inv_cells,
    ];
    let total: usize = table_sizes.iter().sum();
    // op/comp cells need m > 1 to admit a different value (comp can always
    // flip defined/undefined when m >= 1, but a 0-morphism structure has
    // nothing to mutate)
    if m == 0 || (m == 1 && n <= 1) {
        return None;
    }
    loop {
        let mut pick = rng.below(total);
        let mut table = 0;
        while pick >= table_sizes[table] {
            pick -= table_sizes[table];
            table += 1;
        }
        match table {
            0 => {
                if m < 2 {
                    continue;
                }
                let (x, y) = (pick / m, pick % m);
                let old = gr.op(x, y);
                let new = different(rng, old, m);
                let mut op = gr.op_table().to_vec();
                op[x][y] = new;
                let bad = GroupoidRack::new(g.clone(), op).expect("in-range mutation");
                return Some((bad, MutationSite::Op { x, y }));
            }
            1 => {
                let (f, h) = (pick / m, pick % m);
                let old = g.comp(f, h);
                // choose among all Option values except the current one:
                // None plus every morphism index
                let choice = rng.below(m); // candidate Some value
                let new = match old {
                    Some(v) if v == choice => None,
                    _ if old.is_none() && m == 1 => Some(0),
                    _ => Some(choice),
                };
                if new == old {
                    continue;
                }
                let mut comp = g.comp_table().to_vec();
                comp[f][h] = new;
                let bad = rebuild(gr, |b| b.comp = comp.clone());
                return Some((bad, MutationSite::Comp { f, g: h }));
            }
            2 => {
                let f = pick;
                let old = g.dom(f);
                let mut dom = g.dom_table().to_vec();
                dom[f] = different(rng, old, n);
                let bad = rebuild(gr, |b| b.dom = dom.clone());
                return Some((bad, MutationSite::Dom { f }));
            }
            3 => {
                let f = pick;
                let old = g.cod(f);
                let mut cod = g.cod_table().to_vec();
                cod[f] = different(rng, old, n);
                let bad = rebuild(gr, |b| b.cod = cod.clone());
                return Some((bad, MutationSite::Cod { f }));
            }
            4 => {
                let object = pick;
                let old = g.identity(object);
                let mut id = g.identity_table().to_vec();
                id[object] = different(rng, old, m);
                let bad = rebuild(gr, |b| b.identity = id.clone());
                return Some((bad, MutationSite::Identity { object }));
            }
            _ => {
                let f = pick;
                let old = g.inverse(f);
                let mut inv = g.inverse_table().to_vec();
                inv[f] = different(rng, old, m);
                let bad = rebuild(gr, |b| b.inverse = inv.clone());
                return Some((bad, MutationSite::Inverse { f }));
            }
        }
    }
}

fn different(rng: &mut SplitMix64, old: usize, bound: usize) -> usize {
    let v = rng.below(bound - 1);
    if v >= old {
        v + 1
    } else {
        v
    }
}

struct GroupoidParts {
    dom: Vec<usize>,
    cod: Vec<usize>,
    comp: Vec<Vec<Option<usize>>>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
}

fn rebuild(gr: &GroupoidRack, edit: impl FnOnce(&mut GroupoidParts)) -> GroupoidRack {
    let g = gr.groupoid();
    let mut parts = GroupoidParts {
        dom: g.dom_table().to_vec(),
        cod: g.cod_table().to_vec(),
        comp: g.comp_table().to_vec(),
        identity: g.identity_table().to_vec(),
        inverse: g.inverse_table().to_vec(),
    };
    edit(&mut parts);
    let groupoid = FiniteGroupoid::new(
        g.num_objects(),
        parts.dom,
        parts.cod,
        parts.comp,
        parts.identity,
        parts.inverse,
    )
    .expect("in-range mutation");
    GroupoidRack::new(groupoid, gr.op_table().to_vec()).expect("op table unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::heap_rack;
    use crate::group::FiniteGroup;
    use crate::groupoid_rack::check_groupoid_rack;

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn every_sampled_corruption_is_detected_on_heap_z3() {
        let gr = heap_rack(&FiniteGroup::cyclic(3));
        let mut rng = SplitMix64::new(20240817);
        for i in 0..50 {
            let (bad, site) = corrupt_groupoid_rack(&gr, &mut rng).expect("mutable");
            assert!(
                !check_groupoid_rack(&bad).is_valid(),
                "mutation {i} at {site:?} went undetected"
            );
        }
    }
}
