//! Finite groupoids as explicit tables.
//!
//! Objects and morphisms are dense indices. Composition is partial: the
//! table stores an entry for every ordered pair of morphisms, with `None`
//! standing for "undefined", and the checker verifies that the defined
//! domain is exactly the set of composable pairs.

use crate::error::AlgebraError;
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    num_objects: usize,
    num_morphisms: usize,
    dom: Vec<usize>,
    cod: Vec<usize>,
    comp: Vec<Vec<Option<usize>>>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn new(
        num_objects: usize,
        dom: Vec<usize>,
        cod: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        let m = dom.len();
        if cod.len() != m {
            return Err(AlgebraError::MalformedTable(format!(
                "cod has length {} (expected {m})",
                cod.len()
            )));
        }
        if dom.iter().chain(cod.iter()).any(|&o| o >= num_objects) {
            return Err(AlgebraError::MalformedTable(
                "dom/cod entry out of object range".into(),
            ));
        }
        if comp.len() != m || comp.iter().any(|row| row.len() != m) {
            return Err(AlgebraError::MalformedTable(format!(
                "comp table is not {m}x{m}"
            )));
        }
        if comp
            .iter()
            .flatten()
            .any(|&c| matches!(c, Some(v) if v >= m))
        {
            return Err(AlgebraError::MalformedTable(
                "comp entry out of morphism range".into(),
            ));
        }
        if identity.len() != num_objects || identity.iter().any(|&f| f >= m) {
            return Err(AlgebraError::MalformedTable(
                "identity table malformed".into(),
            ));
        }
        if inverse.len() != m || inverse.iter().any(|&f| f >= m) {
            return Err(AlgebraError::MalformedTable(
                "inverse table malformed".into(),
            ));
        }
        Ok(Self {
            num_objects,
            num_morphisms: m,
            dom,
            cod,
            comp,
            identity,
            inverse,
        })
    }

    /// The groupoid with one object and its identity morphism.
    pub fn terminal() -> Self {
        Self::new(1, vec![0], vec![0], vec![vec![Some(0)]], vec![0], vec![0]).unwrap()
    }

    /// The pair groupoid on `n` objects: one morphism `(x, y)` between any
    /// two objects, indexed as `x * n + y`.
    pub fn pair_groupoid(n: usize) -> Self {
        let m = n * n;
        let idx = |x: usize, y: usize| x * n + y;
        let mut dom = vec![0; m];
        let mut cod = vec![0; m];
        let mut inverse = vec![0; m];
        let mut comp = vec![vec![None; m]; m];
        for x in 0..n {
            for y in 0..n {
                dom[idx(x, y)] = x;
                cod[idx(x, y)] = y;
                inverse[idx(x, y)] = idx(y, x);
                for z in 0..n {
                    comp[idx(x, y)][idx(y, z)] = Some(idx(x, z));
                }
            }
        }
        let identity = (0..n).map(|x| idx(x, x)).collect();
        Self::new(n, dom, cod, comp, identity, inverse).unwrap()
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    pub fn num_morphisms(&self) -> usize {
        self.num_morphisms
    }

    pub fn dom(&self, f: usize) -> usize {
        self.dom[f]
    }

    pub fn cod(&self, f: usize) -> usize {
        self.cod[f]
    }

    pub fn composable(&self, f: usize, g: usize) -> bool {
        self.cod[f] == self.dom[g]
    }

    /// The stored composite, whether or not `(f, g)` is composable.
    pub fn comp(&self, f: usize, g: usize) -> Option<usize> {
        self.comp[f][g]
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    pub fn dom_table(&self) -> &[usize] {
        &self.dom
    }

    pub fn cod_table(&self) -> &[usize] {
        &self.cod
    }

    pub fn comp_table(&self) -> &[Vec<Option<usize>>] {
        &self.comp
    }

    pub fn identity_table(&self) -> &[usize] {
        &self.identity
    }

    pub fn inverse_table(&self) -> &[usize] {
        &self.inverse
    }

    /// All composable pairs, in lexicographic order.
    pub fn composable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for f in 0..self.num_morphisms {
            for g in 0..self.num_morphisms {
                if self.composable(f, g) {
                    out.push((f, g));
                }
            }
        }
        out
    }
}

/// Exhaustively verifies the groupoid axioms: the composition table is
/// defined exactly on composable pairs and lands in the right hom-set,
/// composition is associative, identities are two-sided units, and every
/// morphism has the stated two-sided inverse.
pub fn check_groupoid(g: &FiniteGroupoid) -> ValidationReport {
    let mut report = ValidationReport::new();
    let m = g.num_morphisms;
    for f in 0..m {
        for h in 0..m {
            match (g.composable(f, h), g.comp(f, h)) {
                (true, None) => report.push(
                    "groupoid.comp-defined",
                    vec![f, h],
                    format!("cod({f}) = dom({h}) but comp is undefined"),
                ),
                (false, Some(_)) => report.push(
                    "groupoid.comp-defined",
                    vec![f, h],
                    format!("comp({f}, {h}) defined but cod({f}) != dom({h})"),
                ),
                (true, Some(c)) => {
                    if g.dom(c) != g.dom(f) || g.cod(c) != g.cod(h) {
                        report.push(
                            "groupoid.comp-endpoints",
                            vec![f, h],
                            format!(
                                "comp({f}, {h}) = {c} has dom/cod ({}, {}), expected ({}, {})",
                                g.dom(c),
                                g.cod(c),
                                g.dom(f),
                                g.cod(h)
                            ),
                        );
                    }
                }
                (false, None) => {}
            }
        }
    }
    // associativity over all composable triples
    for f in 0..m {
        for h in 0..m {
            if !g.composable(f, h) {
                continue;
            }
            for k in 0..m {
                if !g.composable(h, k) {
                    continue;
                }
                let lhs = g.comp(f, h).and_then(|fh| g.comp(fh, k));
                let rhs = g.comp(h, k).and_then(|hk| g.comp(f, hk));
                if lhs != rhs || lhs.is_none() {
                    report.push(
                        "groupoid.associative",
                        vec![f, h, k],
                        format!("(fg)h = {lhs:?} but f(gh) = {rhs:?}"),
                    );
                }
            }
        }
    }
    for obj in 0..g.num_objects {
        let e = g.identity(obj);
        if g.dom(e) != obj || g.cod(e) != obj {
            report.push(
                "groupoid.identity-endpoints",
                vec![obj],
                format!(
                    "identity({obj}) = {e} has dom/cod ({}, {})",
                    g.dom(e),
                    g.cod(e)
                ),
            );
        }
    }
    for f in 0..m {
        let e_dom = g.identity(g.dom(f));
        let e_cod = g.identity(g.cod(f));
        if g.comp(e_dom, f) != Some(f) {
            report.push(
                "groupoid.identity-left-unit",
                vec![f],
                format!("id ∘ {f} = {:?}", g.comp(e_dom, f)),
            );
        }
        if g.comp(f, e_cod) != Some(f) {
            report.push(
                "groupoid.identity-right-unit",
                vec![f],
                format!("{f} ∘ id = {:?}", g.comp(f, e_cod)),
            );
        }
        let i = g.inverse(f);
        if g.comp(f, i) != Some(g.identity(g.dom(f))) {
            report.push(
                "groupoid.inverse-right",
                vec![f],
                format!("f ∘ f⁻¹ = {:?}, expected identity of dom(f)", g.comp(f, i)),
            );
        }
        if g.comp(i, f) != Some(g.identity(g.cod(f))) {
            report.push(
                "groupoid.inverse-left",
                vec![f],
                format!("f⁻¹ ∘ f = {:?}, expected identity of cod(f)", g.comp(i, f)),
            );
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_groupoid_is_valid() {
        assert!(check_groupoid(&FiniteGroupoid::terminal()).is_valid());
    }

    #[test]
    fn pair_groupoid_is_valid() {
        for n in 1..=4 {
            assert!(check_groupoid(&FiniteGroupoid::pair_groupoid(n)).is_valid());
        }
    }

    #[test]
    fn pair_groupoid_without_proper_inverses_fails() {
        let g = FiniteGroupoid::pair_groupoid(2);
        let bad = FiniteGroupoid::new(
            2,
            g.dom_table().to_vec(),
            g.cod_table().to_vec(),
            g.comp_table().to_vec(),
            g.identity_table().to_vec(),
            // identity map instead of the swap: (0,1) is no longer inverted
            (0..4).collect(),
        )
        .unwrap();
        let report = check_groupoid(&bad);
        assert!(report
            .violations()
            .iter()
            .any(|v| v.rule.starts_with("groupoid.inverse")));
    }

    #[test]
    fn empty_groupoid_is_valid() {
        let g = FiniteGroupoid::new(0, vec![], vec![], vec![], vec![], vec![]).unwrap();
        assert!(check_groupoid(&g).is_valid());
    }
}
