//! Groupoid racks: a total binary operation on the morphism set of a finite
//! groupoid, compatible with composition.
//!
//! The three defining conditions, checked exhaustively by
//! [`check_groupoid_rack`]:
//!
//! 1. acting by a composite equals acting in sequence, and acting by any
//!    identity morphism is the identity map;
//! 2. the operation is self-distributive;
//! 3. the operation distributes over composition on the left: for
//!    composable `(f, g)`, the pair `(f * x, g * x)` is composable and
//!    composes to `(fg) * x`.
//!
//! Every groupoid rack carries a canonical good involution sending each
//! morphism to its groupoid inverse; see [`canonical_involution`].

use crate::error::AlgebraError;
use crate::groupoid::{check_groupoid, FiniteGroupoid};
use crate::rack::{invert_columns, FiniteRack, SymmetricRackData};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidRack {
    groupoid: FiniteGroupoid,
    op: Vec<Vec<usize>>,
    inv_op: Option<Vec<Vec<usize>>>,
}

impl GroupoidRack {
    pub fn new(groupoid: FiniteGroupoid, op: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let m = groupoid.num_morphisms();
        if op.len() != m || op.iter().any(|row| row.len() != m) {
            return Err(AlgebraError::MalformedTable(format!(
                "op table is not {m}x{m}"
            )));
        }
        if op.iter().flatten().any(|&v| v >= m) {
            return Err(AlgebraError::MalformedTable(
                "op entry out of morphism range".into(),
            ));
        }
        let inv_op = invert_columns(&op);
        Ok(Self {
            groupoid,
            op,
            inv_op,
        })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    /// Number of morphisms, i.e. the size of the underlying rack.
    pub fn size(&self) -> usize {
        self.groupoid.num_morphisms()
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    /// `x *⁻¹ y`; `None` when some column of the table is not a bijection.
    pub fn op_inv(&self, x: usize, y: usize) -> Option<usize> {
        self.inv_op.as_ref().map(|t| t[x][y])
    }

    pub fn has_column_inverses(&self) -> bool {
        self.inv_op.is_some()
    }

    pub fn op_table(&self) -> &[Vec<usize>] {
        &self.op
    }
}

/// Exhaustively verifies the groupoid axioms and the three groupoid-rack
/// conditions, plus direct bijectivity of every column map (derivable from
/// condition 1, but checked on its own so corruption is localized).
pub fn check_groupoid_rack(gr: &GroupoidRack) -> ValidationReport {
    let mut report = check_groupoid(gr.groupoid());
    let g = gr.groupoid();
    let m = g.num_morphisms();

    // (i) action compatibility with composition and identities
    for x in 0..m {
        for f in 0..m {
            for h in 0..m {
                if !g.composable(f, h) {
                    continue;
                }
                if let Some(fh) = g.comp(f, h) {
                    let lhs = gr.op(x, fh);
                    let rhs = gr.op(gr.op(x, f), h);
                    if lhs != rhs {
                        report.push(
                            "groupoid-rack.i.composite-action",
                            vec![x, f, h],
                            format!("x*(fg) = {lhs} but (x*f)*g = {rhs}"),
                        );
                    }
                }
            }
        }
    }
    for x in 0..m {
        for obj in 0..g.num_objects() {
            let e = g.identity(obj);
            if gr.op(x, e) != x {
                report.push(
                    "groupoid-rack.i.identity-action",
                    vec![x, obj],
                    format!("x*id = {} != x", gr.op(x, e)),
                );
            }
        }
    }
    // (ii) self-distributivity
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                let lhs = gr.op(gr.op(x, y), z);
                let rhs = gr.op(gr.op(x, z), gr.op(y, z));
                if lhs != rhs {
                    report.push(
                        "groupoid-rack.ii.self-distributive",
                        vec![x, y, z],
                        format!("(x*y)*z = {lhs} but (x*z)*(y*z) = {rhs}"),
                    );
                }
            }
        }
    }
    // (iii) left distributivity over composition
    for f in 0..m {
        for h in 0..m {
            if !g.composable(f, h) {
                continue;
            }
            let Some(fh) = g.comp(f, h) else { continue };
            for x in 0..m {
                let fx = gr.op(f, x);
                let hx = gr.op(h, x);
                if !g.composable(fx, hx) {
                    report.push(
                        "groupoid-rack.iii.composable",
                        vec![f, h, x],
                        format!("(f*x, g*x) = ({fx}, {hx}) is not composable"),
                    );
                    continue;
                }
                if g.comp(fx, hx) != Some(gr.op(fh, x)) {
                    report.push(
                        "groupoid-rack.iii.distributive",
                        vec![f, h, x],
                        format!(
                            "(f*x)(g*x) = {:?} but (fg)*x = {}",
                            g.comp(fx, hx),
                            gr.op(fh, x)
                        ),
                    );
                }
            }
        }
    }
    // column bijectivity, checked directly
    for y in 0..m {
        let mut seen = vec![false; m];
        for x in 0..m {
            let v = gr.op(x, y);
            if seen[v] {
                report.push(
                    "groupoid-rack.column-bijective",
                    vec![x, y],
                    format!("column y={y} maps two morphisms to {v}"),
                );
            }
            seen[v] = true;
        }
    }
    report
}

/// The canonical symmetric-rack structure on a groupoid rack: the rack is
/// the morphism set with the same operation table, and the involution sends
/// each morphism to its groupoid inverse. For a valid groupoid rack the
/// result passes [`crate::rack::check_symmetric_rack`].
pub fn canonical_involution(gr: &GroupoidRack) -> SymmetricRackData {
    let rack = FiniteRack::new(gr.op_table().to_vec())
        .expect("op table ranges were validated at construction");
    SymmetricRackData::new(rack, gr.groupoid().inverse_table().to_vec())
        .expect("inverse table ranges were validated at construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One object, Z/2 as its morphisms, trivial action x*y = x.
    fn z2_one_object() -> GroupoidRack {
        let g = crate::group::FiniteGroup::cyclic(2);
        let comp = (0..2)
            .map(|a| (0..2).map(|b| Some(g.mul(a, b))).collect())
            .collect();
        let groupoid =
            FiniteGroupoid::new(1, vec![0, 0], vec![0, 0], comp, vec![0], vec![0, 1]).unwrap();
        GroupoidRack::new(groupoid, vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    #[test]
    fn trivial_action_on_group_is_groupoid_rack() {
        assert!(check_groupoid_rack(&z2_one_object()).is_valid());
    }

    #[test]
    fn corrupted_op_cell_is_detected() {
        let gr = z2_one_object();
        let mut op = gr.op_table().to_vec();
        op[0][1] = 1; // breaks identity action and column bijectivity
        let bad = GroupoidRack::new(gr.groupoid().clone(), op).unwrap();
        assert!(!check_groupoid_rack(&bad).is_valid());
    }

    #[test]
    fn canonical_involution_of_trivial_action_is_symmetric() {
        let gr = z2_one_object();
        let s = canonical_involution(&gr);
        assert!(crate::rack::check_symmetric_rack(&s).is_valid());
    }
}
