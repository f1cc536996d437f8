//! Finite groups as explicit multiplication tables.

use crate::error::AlgebraError;
use crate::report::ValidationReport;

/// A finite group given by its full Cayley table, identity element, and
/// inverse table. Axioms are verified exhaustively by [`check_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    size: usize,
    mul: Vec<Vec<usize>>,
    unit: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(mul: Vec<Vec<usize>>, unit: usize, inv: Vec<usize>) -> Result<Self, AlgebraError> {
        let size = mul.len();
        if size == 0 {
            return Err(AlgebraError::MalformedTable(
                "group must be nonempty".into(),
            ));
        }
        for (a, row) in mul.iter().enumerate() {
            if row.len() != size {
                return Err(AlgebraError::MalformedTable(format!(
                    "mul row {a} has length {} (expected {size})",
                    row.len()
                )));
            }
            if let Some((b, &v)) = row.iter().enumerate().find(|(_, &v)| v >= size) {
                return Err(AlgebraError::MalformedTable(format!(
                    "mul[{a}][{b}] = {v} out of range 0..{size}"
                )));
            }
        }
        if unit >= size {
            return Err(AlgebraError::MalformedTable(format!(
                "unit {unit} out of range 0..{size}"
            )));
        }
        if inv.len() != size || inv.iter().any(|&v| v >= size) {
            return Err(AlgebraError::MalformedTable(
                "inverse table malformed".into(),
            ));
        }
        Ok(Self {
            size,
            mul,
            unit,
            inv,
        })
    }

    /// The cyclic group `Z/n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let mul = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        Self::new(mul, 0, inv).expect("cyclic table is well-formed")
    }

    /// The symmetric group on `n` letters. Elements are permutations of
    /// `0..n` in lexicographic order; the product applies the left factor
    /// first: `(a · b)(i) = b[a[i]]`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let size = perms.len();
        let mut mul = vec![vec![0; size]; size];
        let mut inv = vec![0; size];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let prod: Vec<usize> = (0..n).map(|i| pb[pa[i]]).collect();
                mul[a][b] = index(&prod);
            }
            let mut ia = vec![0; n];
            for (i, &v) in pa.iter().enumerate() {
                ia[v] = i;
            }
            inv[a] = index(&ia);
        }
        let unit = index(&(0..n).collect::<Vec<_>>());
        Self::new(mul, unit, inv).expect("symmetric group table is well-formed")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn inv_table(&self) -> &[usize] {
        &self.inv
    }

    /// `a^n` for any signed exponent.
    pub fn pow(&self, a: usize, n: i64) -> usize {
        let (base, reps) = if n >= 0 { (a, n) } else { (self.inv(a), -n) };
        let mut acc = self.unit;
        for _ in 0..reps {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    fn rec(
        n: usize,
        cur: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur[depth] = v;
                rec(n, cur, used, depth + 1, out);
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, 0, &mut out);
    out
}

/// Exhaustively verifies associativity, the unit laws, and the inverse laws.
pub fn check_group(g: &FiniteGroup) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = g.size;
    for a in 0..n {
        if g.mul(a, g.unit) != a || g.mul(g.unit, a) != a {
            report.push("group.unit", vec![a], format!("unit law fails at {a}"));
        }
        if g.mul(a, g.inv(a)) != g.unit || g.mul(g.inv(a), a) != g.unit {
            report.push(
                "group.inverse",
                vec![a],
                format!("inverse law fails at {a}"),
            );
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = g.mul(g.mul(a, b), c);
                let rhs = g.mul(a, g.mul(b, c));
                if lhs != rhs {
                    report.push(
                        "group.associative",
                        vec![a, b, c],
                        format!("(ab)c = {lhs} but a(bc) = {rhs}"),
                    );
                }
            }
        }
    }
    report
}
