//! Builders that assemble groupoid racks from simpler data: families of
//! groups, a single group (heap construction), a plain rack (pair-square
//! construction), and augmented racks.
//!
//! None of the builders trusts its own algebra: every construction re-runs
//! the full exhaustive checker before returning, so a bad input datum or a
//! wrong formula surfaces as an error instead of a silently broken table.

use crate::error::ConstructionError;
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::groupoid_rack::{check_groupoid_rack, GroupoidRack};
use crate::rack::FiniteRack;

// ---------------------------------------------------------------------------
// multiple group racks
// ---------------------------------------------------------------------------

/// A disjoint union of groups with a total binary operation on the union.
///
/// Elements are indexed block by block: group `k` occupies the index range
/// `[offset(k), offset(k) + size_k)`.
#[derive(Debug, Clone)]
pub struct MultipleGroupRackData {
    pub groups: Vec<FiniteGroup>,
    /// Total operation table on the disjoint union.
    pub op: Vec<Vec<usize>>,
}

impl MultipleGroupRackData {
    pub fn total_size(&self) -> usize {
        self.groups.iter().map(|g| g.size()).sum()
    }

    /// Start index of block `k` in the disjoint union.
    pub fn offset(&self, k: usize) -> usize {
        self.groups[..k].iter().map(|g| g.size()).sum()
    }

    /// Block index and in-block element of a global index.
    pub fn locate(&self, x: usize) -> (usize, usize) {
        let mut rest = x;
        for (k, g) in self.groups.iter().enumerate() {
            if rest < g.size() {
                return (k, rest);
            }
            rest -= g.size();
        }
        panic!("element {x} out of range");
    }

    /// The single-group family over `group` with `x * y = y⁻¹ x y`.
    pub fn conjugation(group: FiniteGroup) -> Self {
        let n = group.size();
        let op = (0..n)
            .map(|x| (0..n).map(|y| group.conjugate(x, y)).collect())
            .collect();
        Self {
            groups: vec![group],
            op,
        }
    }

    /// The family over `groups` with the trivial operation `x * y = x`.
    pub fn trivial(groups: Vec<FiniteGroup>) -> Self {
        let n: usize = groups.iter().map(|g| g.size()).sum();
        let op = (0..n).map(|x| vec![x; n]).collect();
        Self { groups, op }
    }
}

fn mgr_check_conditions(d: &MultipleGroupRackData) -> Result<(), ConstructionError> {
    let n = d.total_size();
    if d.op.len() != n
        || d.op
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&v| v >= n))
    {
        return Err(crate::error::AlgebraError::MalformedTable(
            "multiple group rack op table malformed".into(),
        )
        .into());
    }
    let op = |x: usize, y: usize| d.op[x][y];
    // (i) acting by a product within a block equals acting in sequence,
    //     and block units act trivially
    for x in 0..n {
        for (k, g) in d.groups.iter().enumerate() {
            let off = d.offset(k);
            if op(x, off + g.unit()) != x {
                return Err(ConstructionError::ConditionViolated {
                    condition: "i",
                    witness: vec![x, k],
                    message: format!("x * e = {} != x", op(x, off + g.unit())),
                });
            }
            for a in 0..g.size() {
                for b in 0..g.size() {
                    let prod = off + g.mul(a, b);
                    let lhs = op(x, prod);
                    let rhs = op(op(x, off + a), off + b);
                    if lhs != rhs {
                        return Err(ConstructionError::ConditionViolated {
                            condition: "i",
                            witness: vec![x, off + a, off + b],
                            message: format!("x*(y1 y2) = {lhs} but (x*y1)*y2 = {rhs}"),
                        });
                    }
                }
            }
        }
    }
    // (ii) self-distributivity on the whole union
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = op(op(x, y), z);
                let rhs = op(op(x, z), op(y, z));
                if lhs != rhs {
                    return Err(ConstructionError::ConditionViolated {
                        condition: "ii",
                        witness: vec![x, y, z],
                        message: format!("(x*y)*z = {lhs} but (x*z)*(y*z) = {rhs}"),
                    });
                }
            }
        }
    }
    // (iii) each block lands in a single block under *x, multiplicatively
    for x in 0..n {
        for (k, g) in d.groups.iter().enumerate() {
            let off = d.offset(k);
            let (target, _) = d.locate(op(off, x));
            for a in 0..g.size() {
                let (blk, _) = d.locate(op(off + a, x));
                if blk != target {
                    return Err(ConstructionError::ConditionViolated {
                        condition: "iii",
                        witness: vec![off + a, x],
                        message: format!(
                            "block {k} scatters under *{x}: images land in blocks {target} and {blk}"
                        ),
                    });
                }
            }
            let h = &d.groups[target];
            let toff = d.offset(target);
            for a in 0..g.size() {
                for b in 0..g.size() {
                    let lhs = op(off + g.mul(a, b), x);
                    let (_, ia) = d.locate(op(off + a, x));
                    let (_, ib) = d.locate(op(off + b, x));
                    let rhs = toff + h.mul(ia, ib);
                    if lhs != rhs {
                        return Err(ConstructionError::ConditionViolated {
                            condition: "iii",
                            witness: vec![off + a, off + b, x],
                            message: format!("(y1 y2)*x = {lhs} but (y1*x)(y2*x) = {rhs}"),
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Builds the groupoid rack of a multiple group rack: one object per group,
/// the group as its automorphism set, no cross-object morphisms.
pub fn multiple_group_rack(d: &MultipleGroupRackData) -> Result<GroupoidRack, ConstructionError> {
    mgr_check_conditions(d)?;
    let n = d.total_size();
    let mut dom = vec![0; n];
    let mut cod = vec![0; n];
    let mut inverse = vec![0; n];
    let mut comp = vec![vec![None; n]; n];
    let mut identity = Vec::with_capacity(d.groups.len());
    for (k, g) in d.groups.iter().enumerate() {
        let off = d.offset(k);
        identity.push(off + g.unit());
        for a in 0..g.size() {
            dom[off + a] = k;
            cod[off + a] = k;
            inverse[off + a] = off + g.inv(a);
            for b in 0..g.size() {
                comp[off + a][off + b] = Some(off + g.mul(a, b));
            }
        }
    }
    let groupoid = FiniteGroupoid::new(d.groups.len(), dom, cod, comp, identity, inverse)?;
    let gr = GroupoidRack::new(groupoid, d.op.clone())?;
    let report = check_groupoid_rack(&gr);
    if !report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(report));
    }
    Ok(gr)
}

/// Whether the operation restricts to conjugation within every group of the
/// family, i.e. `x * y = y⁻¹ x y` whenever `x` and `y` share a block.
pub fn is_multiple_conjugation_quandle(d: &MultipleGroupRackData) -> bool {
    d.groups.iter().enumerate().all(|(k, g)| {
        let off = d.offset(k);
        (0..g.size())
            .all(|x| (0..g.size()).all(|y| d.op[off + x][off + y] == off + g.conjugate(x, y)))
    })
}

// ---------------------------------------------------------------------------
// heap racks
// ---------------------------------------------------------------------------

/// Morphism index of the pair `(x, y)` in a pair groupoid on `n` objects.
pub fn pair_index(n: usize, x: usize, y: usize) -> usize {
    x * n + y
}

/// The heap rack of a group: morphisms are pairs `(x, y)` of group elements
/// with partial product `(x, y)(y, z) = (x, z)`, and
/// `(x, y) * (z, w) = (x z⁻¹ w, y z⁻¹ w)`.
///
/// Panics if `group` fails the group axioms; the result is re-checked
/// exhaustively before it is returned.
pub fn heap_rack(group: &FiniteGroup) -> GroupoidRack {
    let n = group.size();
    let m = n * n;
    let groupoid = FiniteGroupoid::pair_groupoid(n);
    let mut op = vec![vec![0; m]; m];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let t = group.mul(group.inv(z), w);
                    op[pair_index(n, x, y)][pair_index(n, z, w)] =
                        pair_index(n, group.mul(x, t), group.mul(y, t));
                }
            }
        }
    }
    let gr = GroupoidRack::new(groupoid, op).expect("heap table is well-formed");
    let report = check_groupoid_rack(&gr);
    assert!(
        report.is_valid(),
        "heap rack failed its axiom check (invalid input group?):\n{report}"
    );
    gr
}

// ---------------------------------------------------------------------------
// rack squares
// ---------------------------------------------------------------------------

/// The pair-groupoid rack on the square of a rack:
/// `(x, y) ▷ (z, w) = ((x *⁻¹ z) * w, (y *⁻¹ z) * w)`.
///
/// The second coordinate acts on `y`; the construction refuses to return a
/// structure that does not verify, so the formula is falsifiable rather
/// than assumed.
pub fn rack_square(r: &FiniteRack) -> Result<GroupoidRack, ConstructionError> {
    let n = r.size();
    if !r.has_column_inverses() {
        return Err(ConstructionError::ConditionViolated {
            condition: "rack",
            witness: vec![],
            message: "input rack columns are not invertible".into(),
        });
    }
    let m = n * n;
    let groupoid = FiniteGroupoid::pair_groupoid(n);
    let mut op = vec![vec![0; m]; m];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                for w in 0..n {
                    let fx = r.op(r.op_inv(x, z).unwrap(), w);
                    let fy = r.op(r.op_inv(y, z).unwrap(), w);
                    op[pair_index(n, x, y)][pair_index(n, z, w)] = pair_index(n, fx, fy);
                }
            }
        }
    }
    let gr = GroupoidRack::new(groupoid, op)?;
    let report = check_groupoid_rack(&gr);
    if !report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(report));
    }
    Ok(gr)
}

// ---------------------------------------------------------------------------
// augmented racks
// ---------------------------------------------------------------------------

/// A rack with a right action of a group and an equivariant map into it.
#[derive(Debug, Clone)]
pub struct AugmentedRackData {
    pub rack: FiniteRack,
    pub group: FiniteGroup,
    /// `action[x][g] = x · g`.
    pub action: Vec<Vec<usize>>,
    /// `boundary[x] = ∂(x)`.
    pub boundary: Vec<usize>,
}

impl AugmentedRackData {
    /// The conjugation datum on a group: the rack is the group under
    /// conjugation, acting on itself by conjugation, with the identity map
    /// as boundary.
    pub fn conjugation(group: FiniteGroup) -> Self {
        let n = group.size();
        let table = (0..n)
            .map(|x| (0..n).map(|y| group.conjugate(x, y)).collect())
            .collect();
        let rack = FiniteRack::new(table).expect("conjugation table is well-formed");
        let action = (0..n)
            .map(|x| (0..n).map(|g| group.conjugate(x, g)).collect())
            .collect();
        Self {
            rack,
            group,
            action,
            boundary: (0..n).collect(),
        }
    }

    fn act(&self, x: usize, g: usize) -> usize {
        self.action[x][g]
    }
}

/// Verifies the right-action laws and the two augmented-rack conditions:
/// `x * y = x · ∂(y)` and `∂(x · g) = g⁻¹ ∂(x) g`.
pub fn check_augmented_rack(d: &AugmentedRackData) -> crate::report::ValidationReport {
    let mut report = crate::report::ValidationReport::new();
    let n = d.rack.size();
    let gn = d.group.size();
    if d.action.len() != n
        || d.action
            .iter()
            .any(|row| row.len() != gn || row.iter().any(|&v| v >= n))
        || d.boundary.len() != n
        || d.boundary.iter().any(|&v| v >= gn)
    {
        report.push(
            "augmented.malformed",
            vec![],
            "action or boundary table malformed".into(),
        );
        return report;
    }
    for x in 0..n {
        if d.act(x, d.group.unit()) != x {
            report.push(
                "augmented.action-unit",
                vec![x],
                format!("x · e = {}", d.act(x, d.group.unit())),
            );
        }
        for g in 0..gn {
            for h in 0..gn {
                let lhs = d.act(x, d.group.mul(g, h));
                let rhs = d.act(d.act(x, g), h);
                if lhs != rhs {
                    report.push(
                        "augmented.action-compat",
                        vec![x, g, h],
                        format!("x·(gh) = {lhs} but (x·g)·h = {rhs}"),
                    );
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = d.rack.op(x, y);
            let rhs = d.act(x, d.boundary[y]);
            if lhs != rhs {
                report.push(
                    "augmented.i.op-via-boundary",
                    vec![x, y],
                    format!("x*y = {lhs} but x·∂(y) = {rhs}"),
                );
            }
        }
    }
    for x in 0..n {
        for g in 0..gn {
            let lhs = d.boundary[d.act(x, g)];
            let rhs = d.group.mul(d.group.mul(d.group.inv(g), d.boundary[x]), g);
            if lhs != rhs {
                report.push(
                    "augmented.ii.equivariant",
                    vec![x, g],
                    format!("∂(x·g) = {lhs} but g⁻¹∂(x)g = {rhs}"),
                );
            }
        }
    }
    report
}

/// The groupoid rack of an augmented rack for a fixed exponent `n` and
/// `delta ∈ {0, 1}`.
///
/// Objects are rack elements; morphisms are pairs `(x, g)` standing for the
/// triple `(x, x·g, g)`, composed by `(x, g)(x·g, h) = (x, gh)`. The
/// operation conjugates the group part by `k = ∂(z)ⁿ h^δ ∂(w)⁻ⁿ` and moves
/// both endpoints by `k`, where `(z, h)` is the acting morphism and
/// `w = z·h`. Any axiom failure for the given `(n, delta)` is surfaced.
pub fn augmented_groupoid_rack(
    d: &AugmentedRackData,
    exponent: i64,
    delta: u8,
) -> Result<GroupoidRack, ConstructionError> {
    let report = check_augmented_rack(d);
    if !report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(report));
    }
    if delta > 1 {
        return Err(
            crate::error::AlgebraError::MalformedTable("delta must be 0 or 1".into()).into(),
        );
    }
    let rn = d.rack.size();
    let gn = d.group.size();
    let m = rn * gn;
    let idx = |x: usize, g: usize| x * gn + g;
    let mut dom = vec![0; m];
    let mut cod = vec![0; m];
    let mut inverse = vec![0; m];
    let mut comp = vec![vec![None; m]; m];
    for x in 0..rn {
        for g in 0..gn {
            let f = idx(x, g);
            let y = d.act(x, g);
            dom[f] = x;
            cod[f] = y;
            inverse[f] = idx(y, d.group.inv(g));
            for h in 0..gn {
                comp[f][idx(y, h)] = Some(idx(x, d.group.mul(g, h)));
            }
        }
    }
    let identity = (0..rn).map(|x| idx(x, d.group.unit())).collect();
    let groupoid = FiniteGroupoid::new(rn, dom, cod, comp, identity, inverse)?;

    let mut op = vec![vec![0; m]; m];
    for x in 0..rn {
        for g in 0..gn {
            for z in 0..rn {
                for h in 0..gn {
                    let w = d.act(z, h);
                    // k = ∂(z)ⁿ h^δ ∂(w)⁻ⁿ
                    let mut k = d.group.pow(d.boundary[z], exponent);
                    if delta == 1 {
                        k = d.group.mul(k, h);
                    }
                    k = d.group.mul(k, d.group.pow(d.boundary[w], -exponent));
                    let conj = d.group.mul(d.group.mul(d.group.inv(k), g), k);
                    op[idx(x, g)][idx(z, h)] = idx(d.act(x, k), conj);
                }
            }
        }
    }
    let gr = GroupoidRack::new(groupoid, op)?;
    let report = check_groupoid_rack(&gr);
    if !report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(report));
    }
    Ok(gr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid_rack::canonical_involution;
    use crate::rack::check_symmetric_rack;

    #[test]
    fn trivial_single_group_mgr_builds() {
        let d = MultipleGroupRackData::trivial(vec![FiniteGroup::cyclic(2)]);
        let gr = multiple_group_rack(&d).unwrap();
        assert_eq!(gr.groupoid().num_objects(), 1);
        assert_eq!(gr.size(), 2);
    }

    #[test]
    fn s3_conjugation_mgr_is_mcq() {
        let d = MultipleGroupRackData::conjugation(FiniteGroup::symmetric(3));
        let gr = multiple_group_rack(&d).unwrap();
        assert!(check_groupoid_rack(&gr).is_valid());
        assert!(is_multiple_conjugation_quandle(&d));
    }

    #[test]
    fn trivial_op_on_s3_is_not_mcq() {
        let d = MultipleGroupRackData::trivial(vec![FiniteGroup::symmetric(3)]);
        assert!(multiple_group_rack(&d).is_ok());
        assert!(!is_multiple_conjugation_quandle(&d));
    }

    #[test]
    fn trivial_op_on_abelian_group_is_mcq() {
        // every conjugation in an abelian group is trivial
        let d = MultipleGroupRackData::trivial(vec![FiniteGroup::cyclic(3)]);
        assert!(is_multiple_conjugation_quandle(&d));
    }

    #[test]
    fn singleton_family_of_trivial_group_is_mcq() {
        let d = MultipleGroupRackData::conjugation(FiniteGroup::cyclic(1));
        assert!(is_multiple_conjugation_quandle(&d));
    }

    #[test]
    fn scattering_op_violates_condition_iii() {
        // blocks {0,1} = Z/2 and {2} = trivial; acting by element 1 swaps
        // 0 and 2 across blocks. Conditions (i) and (ii) survive (the swap
        // is an involution fixing 1) but block 0 scatters under *1.
        let mut d =
            MultipleGroupRackData::trivial(vec![FiniteGroup::cyclic(2), FiniteGroup::cyclic(1)]);
        d.op[0][1] = 2;
        d.op[2][1] = 0;
        match multiple_group_rack(&d) {
            Err(ConstructionError::ConditionViolated { condition, .. }) => {
                assert_eq!(condition, "iii")
            }
            other => panic!("expected ConditionViolated(iii), got {other:?}"),
        }
    }

    #[test]
    fn heap_rack_z2_matches_formula() {
        let gr = heap_rack(&FiniteGroup::cyclic(2));
        assert_eq!(gr.size(), 4);
        // (0,1) * (1,0) = (0-1+0, 1-1+0) = (1, 0) additively
        let a = pair_index(2, 0, 1);
        let b = pair_index(2, 1, 0);
        assert_eq!(gr.op(a, b), pair_index(2, 1, 0));
        // identity morphisms act trivially
        for x in 0..4 {
            for z in 0..2 {
                assert_eq!(gr.op(x, pair_index(2, z, z)), x);
            }
        }
    }

    #[test]
    fn heap_rack_axioms_hold_for_small_groups() {
        for n in 2..=3 {
            let gr = heap_rack(&FiniteGroup::cyclic(n));
            assert!(check_groupoid_rack(&gr).is_valid());
        }
        assert!(check_groupoid_rack(&heap_rack(&FiniteGroup::symmetric(3))).is_valid());
    }

    #[test]
    fn heap_rack_canonical_involution_is_the_swap() {
        for n in 2..=4 {
            let gr = heap_rack(&FiniteGroup::cyclic(n));
            let s = canonical_involution(&gr);
            assert!(check_symmetric_rack(&s).is_valid());
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(s.involution[pair_index(n, x, y)], pair_index(n, y, x));
                }
            }
        }
    }

    #[test]
    fn corrupted_heap_cell_is_detected() {
        let gr = heap_rack(&FiniteGroup::cyclic(2));
        let mut op = gr.op_table().to_vec();
        op[0][1] = (op[0][1] + 1) % 4;
        let bad = GroupoidRack::new(gr.groupoid().clone(), op).unwrap();
        assert!(!check_groupoid_rack(&bad).is_valid());
    }

    #[test]
    fn rack_square_of_dihedral_racks_verifies() {
        for n in [3, 5] {
            let gr = rack_square(&FiniteRack::dihedral(n)).unwrap();
            assert!(check_groupoid_rack(&gr).is_valid());
            // (x,y) ▷ (z,z) = (x,y)
            for x in 0..n * n {
                for z in 0..n {
                    assert_eq!(gr.op(x, pair_index(n, z, z)), x);
                }
            }
        }
    }

    #[test]
    fn rack_square_of_singleton_is_singleton() {
        let gr = rack_square(&FiniteRack::trivial(1)).unwrap();
        assert_eq!(gr.size(), 1);
        assert_eq!(gr.groupoid().num_objects(), 1);
    }

    #[test]
    fn s3_conjugation_augmented_datum_is_valid() {
        let d = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
        assert!(check_augmented_rack(&d).is_valid());
    }

    #[test]
    fn constant_boundary_with_nontrivial_op_fails() {
        let mut d = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
        d.boundary = vec![d.group.unit(); 6];
        let report = check_augmented_rack(&d);
        assert!(report
            .violations()
            .iter()
            .any(|v| v.rule == "augmented.i.op-via-boundary"));
    }

    #[test]
    fn trivial_augmented_datum_is_valid() {
        let d = AugmentedRackData {
            rack: FiniteRack::trivial(1),
            group: FiniteGroup::cyclic(1),
            action: vec![vec![0]],
            boundary: vec![0],
        };
        assert!(check_augmented_rack(&d).is_valid());
    }

    #[test]
    fn augmented_rack_zero_exponents_give_trivial_action() {
        let d = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
        let gr = augmented_groupoid_rack(&d, 0, 0).unwrap();
        assert_eq!(gr.size(), 36);
        for x in 0..36 {
            for y in 0..36 {
                assert_eq!(gr.op(x, y), x);
            }
        }
    }

    #[test]
    fn augmented_rack_s3_passes_for_small_parameters() {
        let d = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
        for (n, delta) in [(1, 0), (0, 1)] {
            let gr = augmented_groupoid_rack(&d, n, delta).unwrap();
            assert!(
                check_groupoid_rack(&gr).is_valid(),
                "(n, delta) = ({n}, {delta})"
            );
        }
    }
}
