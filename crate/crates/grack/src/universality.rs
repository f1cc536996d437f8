//! Reconstruction of a groupoid rack from a symmetric rack with a partial
//! product.
//!
//! The input is a symmetric rack together with a set `P` of composable
//! pairs and a product map `μ : P → R`. [`check_universality_conditions`]
//! verifies the five closure/coherence conditions exhaustively, and
//! [`universality_construct`] rebuilds the groupoid: source and target
//! symbols are introduced for every element appearing in `P`, glued by the
//! equivalence generated by "target of `a` = source of `b` whenever
//! `(a, b) ∈ P`", and the quotient classes become the objects. Each step of
//! the reconstruction is asserted; an input that passes the five conditions
//! yet breaks a step is reported loudly instead of patched over.

use crate::error::ConstructionError;
use crate::groupoid::{check_groupoid, FiniteGroupoid};
use crate::groupoid_rack::{check_groupoid_rack, GroupoidRack};
use crate::rack::SymmetricRackData;
use crate::report::ValidationReport;

/// A symmetric rack with a partial product `μ` on a pair set `P`.
#[derive(Debug, Clone)]
pub struct UniversalityData {
    pub sym: SymmetricRackData,
    /// `mu[a][b] = Some(ab)` exactly when `(a, b) ∈ P`.
    pub mu: Vec<Vec<Option<usize>>>,
}

impl UniversalityData {
    pub fn new(
        sym: SymmetricRackData,
        mu: Vec<Vec<Option<usize>>>,
    ) -> Result<Self, crate::AlgebraError> {
        let n = sym.size();
        if mu.len() != n || mu.iter().any(|row| row.len() != n) {
            return Err(crate::AlgebraError::MalformedTable(format!(
                "mu table is not {n}x{n}"
            )));
        }
        if mu.iter().flatten().any(|&v| matches!(v, Some(m) if m >= n)) {
            return Err(crate::AlgebraError::MalformedTable(
                "mu entry out of range".into(),
            ));
        }
        Ok(Self { sym, mu })
    }

    /// Builds the datum from an explicit pair list.
    pub fn from_pairs(
        sym: SymmetricRackData,
        pairs: &[(usize, usize, usize)],
    ) -> Result<Self, crate::AlgebraError> {
        let n = sym.size();
        let mut mu = vec![vec![None; n]; n];
        for &(a, b, m) in pairs {
            if a >= n || b >= n || m >= n {
                return Err(crate::AlgebraError::MalformedTable(format!(
                    "pair ({a}, {b}) -> {m} out of range 0..{n}"
                )));
            }
            mu[a][b] = Some(m);
        }
        Self::new(sym, mu)
    }

    pub fn in_p(&self, a: usize, b: usize) -> bool {
        self.mu[a][b].is_some()
    }

    pub fn size(&self) -> usize {
        self.sym.size()
    }

    /// All pairs of `P` in lexicographic order, with their products.
    pub fn pairs(&self) -> Vec<(usize, usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if let Some(m) = self.mu[a][b] {
                    out.push((a, b, m));
                }
            }
        }
        out
    }
}

/// Extracts the universality datum of a groupoid rack: the canonical
/// symmetric rack, `P` = composable pairs, `μ` = composition.
pub fn universality_data_of(gr: &GroupoidRack) -> UniversalityData {
    let sym = crate::groupoid_rack::canonical_involution(gr);
    let g = gr.groupoid();
    let m = g.num_morphisms();
    let mut mu = vec![vec![None; m]; m];
    for f in 0..m {
        for h in 0..m {
            if g.composable(f, h) {
                mu[f][h] = g.comp(f, h);
            }
        }
    }
    UniversalityData { sym, mu }
}

/// Exhaustively verifies the five conditions on `(R, *, ρ, P, μ)`:
///
/// 1. `(a,b), (ab,c) ∈ P` iff `(b,c), (a,bc) ∈ P`;
/// 2. `(ab)c = a(bc)` on chains in `P`;
/// 3. membership of `(a,b)` in `P` is equivalent to membership of
///    `(ρ(b), ρ(a))` and of `(a*x, b*x)` for every `x`;
/// 4. `(b, ρ(ab))` and `(ρ(ab), a)` lie in `P` for every `(a,b) ∈ P`;
/// 5. `ρ(b)ρ(a) = ρ(ab)`, `(ab)ρ(b) = a`, `(ab)*x = (a*x)(b*x)`, and
///    `x*(ab) = (x*a)*b`.
pub fn check_universality_conditions(d: &UniversalityData) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = d.size();
    let rack = &d.sym.rack;
    let rho = &d.sym.involution;
    let mu = |a: usize, b: usize| d.mu[a][b];

    // (1)
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = d.in_p(a, b) && mu(a, b).map(|ab| d.in_p(ab, c)).unwrap_or(false);
                let right = d.in_p(b, c) && mu(b, c).map(|bc| d.in_p(a, bc)).unwrap_or(false);
                if left != right {
                    report.push(
                        "universality.1.chain-equivalence",
                        vec![a, b, c],
                        format!("left chain in P: {left}, right chain in P: {right}"),
                    );
                }
            }
        }
    }
    // (2)
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = mu(a, b) else { continue };
            for c in 0..n {
                let Some(abc) = mu(ab, c) else { continue };
                let rhs = mu(b, c).and_then(|bc| mu(a, bc));
                if rhs != Some(abc) {
                    report.push(
                        "universality.2.associative",
                        vec![a, b, c],
                        format!("(ab)c = {abc} but a(bc) = {rhs:?}"),
                    );
                }
            }
        }
    }
    // (3)
    for a in 0..n {
        for b in 0..n {
            let base = d.in_p(a, b);
            if d.in_p(rho[b], rho[a]) != base {
                report.push(
                    "universality.3.rho-stable",
                    vec![a, b],
                    format!("(a,b) in P: {base} but (rho(b),rho(a)) in P: {}", !base),
                );
            }
            for x in 0..n {
                let shifted = d.in_p(rack.op(a, x), rack.op(b, x));
                if shifted != base {
                    report.push(
                        "universality.3.action-stable",
                        vec![a, b, x],
                        format!("(a,b) in P: {base} but (a*x,b*x) in P: {shifted}"),
                    );
                }
            }
        }
    }
    // (4)
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = mu(a, b) else { continue };
            if !d.in_p(b, rho[ab]) {
                report.push(
                    "universality.4.left-cancel-pair",
                    vec![a, b],
                    format!("(b, rho(ab)) = ({b}, {}) not in P", rho[ab]),
                );
            }
            if !d.in_p(rho[ab], a) {
                report.push(
                    "universality.4.right-cancel-pair",
                    vec![a, b],
                    format!("(rho(ab), a) = ({}, {a}) not in P", rho[ab]),
                );
            }
        }
    }
    // (5)
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = mu(a, b) else { continue };
            match mu(rho[b], rho[a]) {
                Some(v) if v == rho[ab] => {}
                got => report.push(
                    "universality.5.rho-antihomomorphism",
                    vec![a, b],
                    format!("rho(b)rho(a) = {got:?}, expected rho(ab) = {}", rho[ab]),
                ),
            }
            match mu(ab, rho[b]) {
                Some(v) if v == a => {}
                got => report.push(
                    "universality.5.right-cancel",
                    vec![a, b],
                    format!("(ab)rho(b) = {got:?}, expected a = {a}"),
                ),
            }
            for x in 0..n {
                let ax = rack.op(a, x);
                let bx = rack.op(b, x);
                match mu(ax, bx) {
                    Some(v) if v == rack.op(ab, x) => {}
                    got => report.push(
                        "universality.5.op-distributes",
                        vec![a, b, x],
                        format!("(a*x)(b*x) = {got:?}, expected (ab)*x = {}", rack.op(ab, x)),
                    ),
                }
                let lhs = rack.op(x, ab);
                let rhs = rack.op(rack.op(x, a), b);
                if lhs != rhs {
                    report.push(
                        "universality.5.acts-as-chain",
                        vec![a, b, x],
                        format!("x*(ab) = {lhs} but (x*a)*b = {rhs}"),
                    );
                }
            }
        }
    }
    report
}

/// Union-find over a fixed universe, with canonical (minimum-index)
/// representatives extracted at the end.
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = i;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so classes canonicalize by
            // their minimal symbol
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The result of [`universality_construct`].
#[derive(Debug, Clone)]
pub struct UniversalityConstruction {
    pub groupoid_rack: GroupoidRack,
    /// `embedding[i]` is the rack element represented by morphism `i`.
    pub embedding: Vec<usize>,
}

impl UniversalityConstruction {
    /// Morphism index of a rack element, if it lies in the reconstructed
    /// carrier.
    pub fn morphism_of(&self, element: usize) -> Option<usize> {
        self.embedding.binary_search(&element).ok()
    }
}

fn lemma_err(lemma: &'static str, witness: Vec<usize>, message: String) -> ConstructionError {
    ConstructionError::LemmaViolated {
        lemma,
        witness,
        message,
    }
}

/// Rebuilds a groupoid rack from a universality datum.
///
/// The carrier is `R' = ∪ {a, b : (a,b) ∈ P}`, sorted ascending; morphism
/// `i` of the result is `embedding[i] ∈ R`. Objects are equivalence classes
/// of source/target symbols, canonicalized by their minimal symbol (sources
/// before targets, then element order). Four internal lemmas are asserted
/// along the way — existence of the inverse pairs, the unit laws of
/// `a ρ(a)`, closure of the carrier under ρ, and closure under every column
/// map — and the finished structure must pass the full groupoid-rack check.
pub fn universality_construct(
    d: &UniversalityData,
) -> Result<UniversalityConstruction, ConstructionError> {
    // the closure lemmas lean on the symmetric-rack axioms, so those are
    // verified up front rather than assumed
    let sym_report = crate::rack::check_symmetric_rack(&d.sym);
    if !sym_report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(sym_report));
    }
    let report = check_universality_conditions(d);
    if !report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(report));
    }
    let n = d.size();
    let rack = &d.sym.rack;
    let rho = &d.sym.involution;

    // carrier R': every element appearing in a pair of P
    let mut in_carrier = vec![false; n];
    for (a, b, _) in d.pairs() {
        in_carrier[a] = true;
        in_carrier[b] = true;
    }
    let carrier: Vec<usize> = (0..n).filter(|&x| in_carrier[x]).collect();
    let morphism_of = |x: usize| -> Option<usize> { carrier.binary_search(&x).ok() };
    let m = carrier.len();

    // Lemma: every carrier element pairs with its involution image both ways.
    for &a in &carrier {
        if !d.in_p(rho[a], a) || !d.in_p(a, rho[a]) {
            return Err(lemma_err(
                "inverse-pairs",
                vec![a],
                format!("(rho({a}), {a}) or ({a}, rho({a})) missing from P"),
            ));
        }
    }
    // Lemma: the carrier is closed under the involution.
    for &a in &carrier {
        if !in_carrier[rho[a]] {
            return Err(lemma_err(
                "rho-closure",
                vec![a],
                format!("rho({a}) = {} not in carrier", rho[a]),
            ));
        }
    }
    // Lemma: the carrier is closed under every column map of the rack.
    for x in 0..n {
        for &a in &carrier {
            if !in_carrier[rack.op(a, x)] {
                return Err(lemma_err(
                    "column-closure",
                    vec![a, x],
                    format!("{a} * {x} = {} leaves the carrier", rack.op(a, x)),
                ));
            }
        }
    }
    // Lemma: a rho(a) is a unit on both sides wherever it composes.
    for &a in &carrier {
        let e = d.mu[a][rho[a]].expect("inverse pair is in P");
        for x in 0..n {
            if let Some(v) = d.mu[x][e] {
                if v != x {
                    return Err(lemma_err(
                        "unit-law",
                        vec![a, x],
                        format!("x (a rho(a)) = {v} != {x}"),
                    ));
                }
            }
            if let Some(v) = d.mu[e][x] {
                if v != x {
                    return Err(lemma_err(
                        "unit-law",
                        vec![a, x],
                        format!("(a rho(a)) y = {v} != {x}"),
                    ));
                }
            }
        }
    }

    // glue source/target symbols: symbol ids are s_a = idx(a), t_a = m + idx(a)
    let mut uf = UnionFind::new(2 * m);
    for (a, b, _) in d.pairs() {
        let (ia, ib) = (morphism_of(a).unwrap(), morphism_of(b).unwrap());
        uf.union(m + ia, ib); // t_a ~ s_b
    }
    let mut class_of_symbol = vec![usize::MAX; 2 * m];
    let mut class_roots: Vec<usize> = Vec::new();
    for sym in 0..2 * m {
        let root = uf.find(sym);
        if class_of_symbol[root] == usize::MAX {
            class_of_symbol[root] = class_roots.len();
            class_roots.push(root);
        }
        class_of_symbol[sym] = class_of_symbol[root];
    }
    let num_objects = class_roots.len();

    let dom: Vec<usize> = (0..m).map(|i| class_of_symbol[i]).collect();
    let cod: Vec<usize> = (0..m).map(|i| class_of_symbol[m + i]).collect();

    // composition = μ; composability in the quotient must coincide with P
    let mut comp = vec![vec![None; m]; m];
    for i in 0..m {
        for j in 0..m {
            if cod[i] != dom[j] {
                if d.in_p(carrier[i], carrier[j]) {
                    return Err(lemma_err(
                        "mu-composability",
                        vec![carrier[i], carrier[j]],
                        "pair lies in P but endpoints do not match in the quotient".into(),
                    ));
                }
                continue;
            }
            let (a, b) = (carrier[i], carrier[j]);
            let Some(ab) = d.mu[a][b] else {
                return Err(lemma_err(
                    "mu-totality",
                    vec![a, b],
                    "endpoints match in the quotient but the pair is missing from P".into(),
                ));
            };
            let Some(k) = morphism_of(ab) else {
                return Err(lemma_err(
                    "mu-closure",
                    vec![a, b],
                    format!("product {ab} leaves the carrier"),
                ));
            };
            comp[i][j] = Some(k);
        }
    }

    // identities: the identity of [s_a] is a rho(a), of [t_a] is rho(a) a;
    // all candidates for one class must agree
    let mut identity = vec![usize::MAX; num_objects];
    for i in 0..m {
        let a = carrier[i];
        for (obj, e) in [
            (dom[i], d.mu[a][rho[a]].expect("inverse pair is in P")),
            (cod[i], d.mu[rho[a]][a].expect("inverse pair is in P")),
        ] {
            let Some(e_idx) = morphism_of(e) else {
                return Err(lemma_err(
                    "identity-in-carrier",
                    vec![a, e],
                    format!("identity candidate {e} leaves the carrier"),
                ));
            };
            if identity[obj] == usize::MAX {
                identity[obj] = e_idx;
            } else if identity[obj] != e_idx {
                return Err(lemma_err(
                    "identity-well-defined",
                    vec![a, e],
                    format!(
                        "object {obj} has conflicting identities {} and {e_idx}",
                        identity[obj]
                    ),
                ));
            }
        }
    }
    if identity.contains(&usize::MAX) {
        // cannot happen: every class contains a source or target symbol
        return Err(lemma_err(
            "identity-well-defined",
            vec![],
            "object without identity".into(),
        ));
    }

    let inverse: Vec<usize> = (0..m)
        .map(|i| morphism_of(rho[carrier[i]]).expect("carrier closed under rho"))
        .collect();

    let groupoid = FiniteGroupoid::new(num_objects, dom, cod, comp, identity, inverse)?;
    let op: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    morphism_of(rack.op(carrier[i], carrier[j]))
                        .expect("carrier closed under columns")
                })
                .collect()
        })
        .collect();
    let gr = GroupoidRack::new(groupoid, op)?;

    let groupoid_report = check_groupoid(gr.groupoid());
    if !groupoid_report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(groupoid_report));
    }
    let full_report = check_groupoid_rack(&gr);
    if !full_report.is_valid() {
        return Err(ConstructionError::AxiomCheckFailed(full_report));
    }
    Ok(UniversalityConstruction {
        groupoid_rack: gr,
        embedding: carrier,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{heap_rack, pair_index};
    use crate::group::FiniteGroup;

    #[test]
    fn heap_derived_datum_satisfies_conditions() {
        for n in 2..=3 {
            let gr = heap_rack(&FiniteGroup::cyclic(n));
            let d = universality_data_of(&gr);
            assert!(check_universality_conditions(&d).is_valid(), "Z/{n}");
        }
    }

    #[test]
    fn empty_pair_set_is_vacuously_valid_and_reconstructs_empty() {
        let sym = crate::rack::SymmetricRackData::new(
            crate::rack::FiniteRack::dihedral(3),
            vec![0, 1, 2],
        )
        .unwrap();
        let d = UniversalityData::from_pairs(sym, &[]).unwrap();
        assert!(check_universality_conditions(&d).is_valid());
        let c = universality_construct(&d).unwrap();
        assert_eq!(c.groupoid_rack.size(), 0);
        assert_eq!(c.groupoid_rack.groupoid().num_objects(), 0);
    }

    #[test]
    fn removing_a_pair_breaks_condition_one_or_four() {
        let gr = heap_rack(&FiniteGroup::cyclic(2));
        let mut d = universality_data_of(&gr);
        // drop ((0,1),(1,0)) from P
        d.mu[pair_index(2, 0, 1)][pair_index(2, 1, 0)] = None;
        let report = check_universality_conditions(&d);
        assert!(!report.is_valid());
        assert!(report.violations().iter().any(|v| {
            v.rule.starts_with("universality.1") || v.rule.starts_with("universality.4")
        }));
    }

    #[test]
    fn heap_z2_reconstructs_identically() {
        let gr = heap_rack(&FiniteGroup::cyclic(2));
        let d = universality_data_of(&gr);
        let c = universality_construct(&d).unwrap();
        assert_eq!(c.groupoid_rack.size(), 4);
        assert_eq!(c.groupoid_rack.groupoid().num_objects(), 2);
        assert_eq!(c.embedding, vec![0, 1, 2, 3]);
        assert_eq!(c.groupoid_rack.op_table(), gr.op_table());
        assert_eq!(
            c.groupoid_rack.groupoid().comp_table(),
            gr.groupoid().comp_table()
        );
        assert_eq!(
            c.groupoid_rack.groupoid().inverse_table(),
            gr.groupoid().inverse_table()
        );
    }

    #[test]
    fn heap_z3_reconstruction_passes_axioms() {
        let gr = heap_rack(&FiniteGroup::cyclic(3));
        let d = universality_data_of(&gr);
        let c = universality_construct(&d).unwrap();
        assert!(check_groupoid_rack(&c.groupoid_rack).is_valid());
    }
}
