//! Finite racks and symmetric racks as explicit operation tables.
//!
//! Elements are dense indices `0..size`. The binary operation is stored as a
//! full `size x size` table with `op[x][y] = x * y`, so the exhaustive cubic
//! checks stay branch-free. Column inverses (the `*⁻¹` operation) are
//! precomputed once at construction whenever every column is a bijection.

use crate::error::AlgebraError;
use crate::report::ValidationReport;

/// A finite magma presented by its full operation table, checked against the
/// rack axioms by [`check_rack`]: every column map `x ↦ x * y` must be a
/// bijection, and the operation must be self-distributive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRack {
    size: usize,
    op: Vec<Vec<usize>>,
    /// `inv_op[x][y]` is the unique `z` with `z * y = x`, present only when
    /// every column is a bijection.
    inv_op: Option<Vec<Vec<usize>>>,
}

impl FiniteRack {
    /// Wraps an operation table. Fails on ragged tables or out-of-range
    /// entries; axiom violations are left to [`check_rack`].
    pub fn new(op: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let size = op.len();
        for (x, row) in op.iter().enumerate() {
            if row.len() != size {
                return Err(AlgebraError::MalformedTable(format!(
                    "rack op row {x} has length {} (expected {size})",
                    row.len()
                )));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= size {
                    return Err(AlgebraError::MalformedTable(format!(
                        "rack op[{x}][{y}] = {v} out of range 0..{size}"
                    )));
                }
            }
        }
        let inv_op = invert_columns(&op);
        Ok(Self { size, op, inv_op })
    }

    /// The dihedral rack on `Z/n`: `x * y = 2y - x (mod n)`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        let op = (0..n)
            .map(|x| (0..n).map(|y| (2 * y + n - x % n) % n).collect())
            .collect();
        Self::new(op).expect("dihedral table is well-formed")
    }

    /// The trivial rack: `x * y = x`.
    pub fn trivial(n: usize) -> Self {
        let op = (0..n).map(|x| vec![x; n]).collect();
        Self::new(op).expect("trivial table is well-formed")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x][y]
    }

    pub fn op_table(&self) -> &[Vec<usize>] {
        &self.op
    }

    /// `x *⁻¹ y`: the unique `z` with `z * y = x`. `None` when some column
    /// of the table is not a bijection.
    pub fn op_inv(&self, x: usize, y: usize) -> Option<usize> {
        self.inv_op.as_ref().map(|t| t[x][y])
    }

    pub fn has_column_inverses(&self) -> bool {
        self.inv_op.is_some()
    }
}

/// Inverts each column of `op`; `None` if any column is not a permutation.
pub(crate) fn invert_columns(op: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let size = op.len();
    let mut inv = vec![vec![usize::MAX; size]; size];
    for y in 0..size {
        for x in 0..size {
            let v = op[x][y];
            if inv[v][y] != usize::MAX {
                return None; // column hits v twice
            }
            inv[v][y] = x;
        }
    }
    Some(inv)
}

/// Exhaustively verifies the two rack axioms.
pub fn check_rack(r: &FiniteRack) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = r.size;
    // (i) each column is a bijection
    for y in 0..n {
        let mut seen = vec![false; n];
        for x in 0..n {
            let v = r.op(x, y);
            if seen[v] {
                report.push(
                    "rack.column-bijective",
                    vec![x, y],
                    format!("column y={y} maps two elements to {v}"),
                );
            }
            seen[v] = true;
        }
    }
    // (ii) self-distributivity over all triples
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = r.op(r.op(x, y), z);
                let rhs = r.op(r.op(x, z), r.op(y, z));
                if lhs != rhs {
                    report.push(
                        "rack.self-distributive",
                        vec![x, y, z],
                        format!("(x*y)*z = {lhs} but (x*z)*(y*z) = {rhs}"),
                    );
                }
            }
        }
    }
    report
}

/// `x *^n y`: the n-th power of the column map `S_y` applied to `x`.
/// Negative exponents use the precomputed column inverse.
pub fn rack_pow(r: &FiniteRack, x: usize, y: usize, n: i64) -> Result<usize, AlgebraError> {
    if x >= r.size || y >= r.size {
        return Err(AlgebraError::MalformedTable(format!(
            "element out of range: x={x}, y={y}, size={}",
            r.size
        )));
    }
    let mut cur = x;
    if n >= 0 {
        for _ in 0..n {
            cur = r.op(cur, y);
        }
    } else {
        for _ in 0..(-n) {
            cur = r.op_inv(cur, y).ok_or_else(|| {
                AlgebraError::MalformedTable(format!("column {y} is not invertible"))
            })?;
        }
    }
    Ok(cur)
}

/// A rack together with a candidate good involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricRackData {
    pub rack: FiniteRack,
    /// The involution as a permutation of `0..size`.
    pub involution: Vec<usize>,
}

impl SymmetricRackData {
    pub fn new(rack: FiniteRack, involution: Vec<usize>) -> Result<Self, AlgebraError> {
        let n = rack.size();
        if involution.len() != n {
            return Err(AlgebraError::MalformedTable(format!(
                "involution has length {} (expected {n})",
                involution.len()
            )));
        }
        if involution.iter().any(|&v| v >= n) {
            return Err(AlgebraError::MalformedTable(
                "involution entry out of range".into(),
            ));
        }
        Ok(Self { rack, involution })
    }

    pub fn size(&self) -> usize {
        self.rack.size()
    }
}

/// Verifies the rack axioms plus the three good-involution conditions:
/// the map is involutive, commutes with every column map, and acting by an
/// image `ρ(y)` undoes acting by `y`.
pub fn check_symmetric_rack(s: &SymmetricRackData) -> ValidationReport {
    let mut report = check_rack(&s.rack);
    let n = s.size();
    let rho = &s.involution;
    for x in 0..n {
        if rho[rho[x]] != x {
            report.push(
                "symmetric-rack.involutive",
                vec![x],
                format!("rho(rho({x})) = {} != {x}", rho[rho[x]]),
            );
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = rho[s.rack.op(x, y)];
            let rhs = s.rack.op(rho[x], y);
            if lhs != rhs {
                report.push(
                    "symmetric-rack.equivariant",
                    vec![x, y],
                    format!("rho(x*y) = {lhs} but rho(x)*y = {rhs}"),
                );
            }
        }
    }
    if s.rack.has_column_inverses() {
        for x in 0..n {
            for y in 0..n {
                let lhs = s.rack.op(x, rho[y]);
                let rhs = s.rack.op_inv(x, y).expect("columns invertible");
                if lhs != rhs {
                    report.push(
                        "symmetric-rack.inverts-columns",
                        vec![x, y],
                        format!("x*rho(y) = {lhs} but x*⁻¹y = {rhs}"),
                    );
                }
            }
        }
    } else {
        report.push(
            "symmetric-rack.inverts-columns",
            vec![],
            "condition unverifiable: some operation column is not a bijection".into(),
        );
    }
    report
}
