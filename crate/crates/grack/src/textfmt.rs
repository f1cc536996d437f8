//! Line-oriented text formats for the algebra types.
//!
//! Every file starts with a `<type> v1` header line. Elements are written
//! as dense indices; tables are blocks of space-separated rows. Undefined
//! composition entries are written `-`. Blank lines and `#` comments are
//! ignored.
//!
//! ```text
//! rack v1                groupoid-rack v1        group v1
//! size N                 objects N               size N
//! op                     morphisms M             unit U
//! <N rows of N>          dom <M entries>         inv <N entries>
//!                        cod <M entries>         mul
//!                        comp                    <N rows of N>
//!                        <M rows of M, `-`>
//!                        id <N entries>
//!                        inv <M entries>
//!                        op
//!                        <M rows of M>
//! ```
//!
//! Families of groups (`mgr v1`), augmented racks (`augmented v1`), and
//! symmetric racks with a partial product (`universal v1`) compose these
//! blocks; see the parsers below for the exact layouts.

use crate::constructions::{AugmentedRackData, MultipleGroupRackData};
use crate::group::FiniteGroup;
use crate::groupoid::FiniteGroupoid;
use crate::groupoid_rack::GroupoidRack;
use crate::rack::{FiniteRack, SymmetricRackData};
use crate::universality::UniversalityData;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error(transparent)]
    Malformed(#[from] crate::error::AlgebraError),
}

fn perr(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        reason: reason.into(),
    }
}

struct Cursor<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Cursor { lines, pos: 0 }
    }

    fn next_line(&mut self) -> Result<(usize, &'a str), FormatError> {
        let item = self.lines.get(self.pos).copied().ok_or_else(|| {
            perr(
                self.lines.last().map_or(0, |(n, _)| *n),
                "unexpected end of input",
            )
        })?;
        self.pos += 1;
        Ok(item)
    }

    fn at_end(&self) -> bool {
        self.pos == self.lines.len()
    }

    fn expect_exact(&mut self, what: &str) -> Result<(), FormatError> {
        let (n, line) = self.next_line()?;
        if line == what {
            Ok(())
        } else {
            Err(perr(n, format!("expected `{what}`, found `{line}`")))
        }
    }

    /// Parses `key N`.
    fn expect_count(&mut self, key: &str) -> Result<usize, FormatError> {
        let (n, line) = self.next_line()?;
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            [k, v] if k == key => v
                .parse()
                .map_err(|e| perr(n, format!("bad count for `{key}`: {e}"))),
            _ => Err(perr(n, format!("expected `{key} <N>`, found `{line}`"))),
        }
    }

    /// Parses `key a0 a1 ...` with exactly `len` entries below `bound`.
    fn expect_list(
        &mut self,
        key: &str,
        len: usize,
        bound: usize,
    ) -> Result<Vec<usize>, FormatError> {
        let (n, line) = self.next_line()?;
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some(key) {
            return Err(perr(n, format!("expected `{key} ...`, found `{line}`")));
        }
        let vals: Vec<usize> = tokens
            .map(|t| {
                t.parse()
                    .map_err(|e| perr(n, format!("bad entry `{t}`: {e}")))
            })
            .collect::<Result<_, _>>()?;
        if vals.len() != len {
            return Err(perr(
                n,
                format!("`{key}` needs {len} entries, found {}", vals.len()),
            ));
        }
        if let Some(&v) = vals.iter().find(|&&v| v >= bound) {
            return Err(perr(
                n,
                format!("`{key}` entry {v} out of range 0..{bound}"),
            ));
        }
        Ok(vals)
    }

    /// Parses a `name` line followed by `rows` rows of `cols` entries.
    fn expect_table(
        &mut self,
        name: &str,
        rows: usize,
        cols: usize,
        bound: usize,
    ) -> Result<Vec<Vec<usize>>, FormatError> {
        self.expect_exact(name)?;
        (0..rows)
            .map(|_| {
                let (n, line) = self.next_line()?;
                let row: Vec<usize> = line
                    .split_whitespace()
                    .map(|t| {
                        t.parse()
                            .map_err(|e| perr(n, format!("bad entry `{t}`: {e}")))
                    })
                    .collect::<Result<_, _>>()?;
                if row.len() != cols {
                    return Err(perr(
                        n,
                        format!("row needs {cols} entries, found {}", row.len()),
                    ));
                }
                if let Some(&v) = row.iter().find(|&&v| v >= bound) {
                    return Err(perr(n, format!("entry {v} out of range 0..{bound}")));
                }
                Ok(row)
            })
            .collect()
    }

    /// Like `expect_table` but entries may be `-` for undefined.
    fn expect_partial_table(
        &mut self,
        name: &str,
        rows: usize,
        cols: usize,
        bound: usize,
    ) -> Result<Vec<Vec<Option<usize>>>, FormatError> {
        self.expect_exact(name)?;
        (0..rows)
            .map(|_| {
                let (n, line) = self.next_line()?;
                let row: Vec<Option<usize>> = line
                    .split_whitespace()
                    .map(|t| {
                        if t == "-" {
                            Ok(None)
                        } else {
                            let v: usize = t
                                .parse()
                                .map_err(|e| perr(n, format!("bad entry `{t}`: {e}")))?;
                            if v >= bound {
                                return Err(perr(n, format!("entry {v} out of range 0..{bound}")));
                            }
                            Ok(Some(v))
                        }
                    })
                    .collect::<Result<_, _>>()?;
                if row.len() != cols {
                    return Err(perr(
                        n,
                        format!("row needs {cols} entries, found {}", row.len()),
                    ));
                }
                Ok(row)
            })
            .collect()
    }

    fn expect_end(&self) -> Result<(), FormatError> {
        if self.at_end() {
            Ok(())
        } else {
            let (n, line) = self.lines[self.pos];
            Err(perr(n, format!("trailing content: `{line}`")))
        }
    }
}

fn join(vals: impl IntoIterator<Item = usize>) -> String {
    vals.into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

// --------------------------------------------------------------------------
// rack v1
// --------------------------------------------------------------------------

pub fn parse_rack(text: &str) -> Result<FiniteRack, FormatError> {
    let mut c = Cursor::new(text);
    c.expect_exact("rack v1")?;
    let rack = parse_rack_body(&mut c)?;
    c.expect_end()?;
    Ok(rack)
}

fn parse_rack_body(c: &mut Cursor) -> Result<FiniteRack, FormatError> {
    let size = c.expect_count("size")?;
    let op = c.expect_table("op", size, size, size)?;
    Ok(FiniteRack::new(op)?)
}

pub fn serialize_rack(r: &FiniteRack) -> String {
    let mut out = String::from("rack v1\n");
    out.push_str(&format!("size {}\n", r.size()));
    out.push_str("op\n");
    for row in r.op_table() {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
    out
}

// --------------------------------------------------------------------------
// group v1
// --------------------------------------------------------------------------

pub fn parse_group(text: &str) -> Result<FiniteGroup, FormatError> {
    let mut c = Cursor::new(text);
    c.expect_exact("group v1")?;
    let g = parse_group_body(&mut c)?;
    c.expect_end()?;
    Ok(g)
}

fn parse_group_body(c: &mut Cursor) -> Result<FiniteGroup, FormatError> {
    let size = c.expect_count("size")?;
    let unit_list = c.expect_list("unit", 1, size.max(1))?;
    let inv = c.expect_list("inv", size, size.max(1))?;
    let mul = c.expect_table("mul", size, size, size.max(1))?;
    Ok(FiniteGroup::new(mul, unit_list[0], inv)?)
}

pub fn serialize_group(g: &FiniteGroup) -> String {
    let mut out = String::from("group v1\n");
    serialize_group_body(g, &mut out);
    out
}

fn serialize_group_body(g: &FiniteGroup, out: &mut String) {
    out.push_str(&format!("size {}\n", g.size()));
    out.push_str(&format!("unit {}\n", g.unit()));
    out.push_str(&format!("inv {}\n", join(g.inv_table().iter().copied())));
    out.push_str("mul\n");
    for row in g.mul_table() {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
}

// --------------------------------------------------------------------------
// groupoid-rack v1
// --------------------------------------------------------------------------

pub fn parse_groupoid_rack(text: &str) -> Result<GroupoidRack, FormatError> {
    let mut c = Cursor::new(text);
    c.expect_exact("groupoid-rack v1")?;
    let objects = c.expect_count("objects")?;
    let morphisms = c.expect_count("morphisms")?;
    let obound = objects.max(1);
    let mbound = morphisms.max(1);
    let dom = c.expect_list("dom", morphisms, obound)?;
    let cod = c.expect_list("cod", morphisms, obound)?;
    let comp = c.expect_partial_table("comp", morphisms, morphisms, mbound)?;
    let id = c.expect_list("id", objects, mbound)?;
    let inv = c.expect_list("inv", morphisms, mbound)?;
    let op = c.expect_table("op", morphisms, morphisms, mbound)?;
    c.expect_end()?;
    let groupoid = FiniteGroupoid::new(objects, dom, cod, comp, id, inv)?;
    Ok(GroupoidRack::new(groupoid, op)?)
}

pub fn serialize_groupoid_rack(gr: &GroupoidRack) -> String {
    let g = gr.groupoid();
    let mut out = String::from("groupoid-rack v1\n");
    out.push_str(&format!("objects {}\n", g.num_objects()));
    out.push_str(&format!("morphisms {}\n", g.num_morphisms()));
    out.push_str(&format!("dom {}\n", join(g.dom_table().iter().copied())));
    out.push_str(&format!("cod {}\n", join(g.cod_table().iter().copied())));
    out.push_str("comp\n");
    for row in g.comp_table() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| c.map_or_else(|| "-".to_string(), |v| v.to_string()))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out.push_str(&format!(
        "id {}\n",
        join(g.identity_table().iter().copied())
    ));
    out.push_str(&format!(
        "inv {}\n",
        join(g.inverse_table().iter().copied())
    ));
    out.push_str("op\n");
    for row in gr.op_table() {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
    out
}

// --------------------------------------------------------------------------
// mgr v1 — a family of groups plus a total operation on the disjoint union
// --------------------------------------------------------------------------

pub fn parse_mgr(text: &str) -> Result<MultipleGroupRackData, FormatError> {
    let mut c = Cursor::new(text);
    c.expect_exact("mgr v1")?;
    let count = c.expect_count("groups")?;
    let mut groups = Vec::with_capacity(count);
    for _ in 0..count {
        c.expect_exact("group")?;
        groups.push(parse_group_body(&mut c)?);
    }
    let total: usize = groups.iter().map(|g| g.size()).sum();
    let op = c.expect_table("op", total, total, total.max(1))?;
    c.expect_end()?;
    Ok(MultipleGroupRackData { groups, op })
}

pub fn serialize_mgr(d: &MultipleGroupRackData) -> String {
    let mut out = String::from("mgr v1\n");
    out.push_str(&format!("groups {}\n", d.groups.len()));
    for g in &d.groups {
        out.push_str("group\n");
        serialize_group_body(g, &mut out);
    }
    out.push_str("op\n");
    for row in &d.op {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
    out
}

// --------------------------------------------------------------------------
// augmented v1 — rack, group, right action, boundary map
// --------------------------------------------------------------------------

pub fn parse_augmented(text: &str) -> Result<AugmentedRackData, FormatError> {
    let mut c = Cursor::new(text);
    c.expect_exact("augmented v1")?;
    c.expect_exact("rack")?;
    let rack = parse_rack_body(&mut c)?;
    c.expect_exact("group")?;
    let group = parse_group_body(&mut c)?;
    let action = c.expect_table("action", rack.size(), group.size(), rack.size().max(1))?;
    let boundary = c.expect_list("boundary", rack.size(), group.size().max(1))?;
    c.expect_end()?;
    Ok(AugmentedRackData {
        rack,
        group,
        action,
        boundary,
    })
}

pub fn serialize_augmented(d: &AugmentedRackData) -> String {
    let mut out = String::from("augmented v1\n");
    out.push_str("rack\n");
    out.push_str(&format!("size {}\n", d.rack.size()));
    out.push_str("op\n");
    for row in d.rack.op_table() {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
    out.push_str("group\n");
    serialize_group_body(&d.group, &mut out);
    out.push_str("action\n");
    for row in &d.action {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
    out.push_str(&format!("boundary {}\n", join(d.boundary.iter().copied())));
    out
}

// --------------------------------------------------------------------------
// universal v1 — symmetric rack with a partial product
// --------------------------------------------------------------------------

pub fn parse_universal(text: &str) -> Result<UniversalityData, FormatError> {
    let mut c = Cursor::new(text);
    c.expect_exact("universal v1")?;
    let size = c.expect_count("size")?;
    let op = c.expect_table("op", size, size, size.max(1))?;
    let rho = c.expect_list("rho", size, size.max(1))?;
    let pair_count = c.expect_count("pairs")?;
    let mut pairs = Vec::with_capacity(pair_count);
    for _ in 0..pair_count {
        let (n, line) = c.next_line()?;
        let vals: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|e| perr(n, format!("bad entry `{t}`: {e}")))
            })
            .collect::<Result<_, _>>()?;
        let [a, b, m] = vals[..] else {
            return Err(perr(n, "pair line must be `a b product`"));
        };
        if a >= size || b >= size || m >= size {
            return Err(perr(n, format!("pair entry out of range 0..{size}")));
        }
        pairs.push((a, b, m));
    }
    c.expect_end()?;
    let rack = FiniteRack::new(op)?;
    let sym = SymmetricRackData::new(rack, rho)?;
    Ok(UniversalityData::from_pairs(sym, &pairs)?)
}

pub fn serialize_universal(d: &UniversalityData) -> String {
    let mut out = String::from("universal v1\n");
    out.push_str(&format!("size {}\n", d.size()));
    out.push_str("op\n");
    for row in d.sym.rack.op_table() {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
    out.push_str(&format!("rho {}\n", join(d.sym.involution.iter().copied())));
    let pairs = d.pairs();
    out.push_str(&format!("pairs {}\n", pairs.len()));
    for (a, b, m) in pairs {
        out.push_str(&format!("{a} {b} {m}\n"));
    }
    out
}

// --------------------------------------------------------------------------
// header dispatch
// --------------------------------------------------------------------------

/// Any algebra the tools accept, tagged by its header.
#[derive(Debug, Clone)]
pub enum AlgebraInput {
    Rack(FiniteRack),
    Group(FiniteGroup),
    GroupoidRack(Box<GroupoidRack>),
    Mgr(MultipleGroupRackData),
    Augmented(AugmentedRackData),
    Universal(UniversalityData),
}

impl AlgebraInput {
    pub fn kind(&self) -> &'static str {
        match self {
            AlgebraInput::Rack(_) => "rack",
            AlgebraInput::Group(_) => "group",
            AlgebraInput::GroupoidRack(_) => "groupoid-rack",
            AlgebraInput::Mgr(_) => "mgr",
            AlgebraInput::Augmented(_) => "augmented",
            AlgebraInput::Universal(_) => "universal",
        }
    }
}

/// Parses any supported algebra file by its header line.
pub fn parse_algebra(text: &str) -> Result<AlgebraInput, FormatError> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or_default();
    match header {
        "rack v1" => Ok(AlgebraInput::Rack(parse_rack(text)?)),
        "group v1" => Ok(AlgebraInput::Group(parse_group(text)?)),
        "groupoid-rack v1" => Ok(AlgebraInput::GroupoidRack(Box::new(parse_groupoid_rack(
            text,
        )?))),
        "mgr v1" => Ok(AlgebraInput::Mgr(parse_mgr(text)?)),
        "augmented v1" => Ok(AlgebraInput::Augmented(parse_augmented(text)?)),
        "universal v1" => Ok(AlgebraInput::Universal(parse_universal(text)?)),
        other => Err(perr(1, format!("unknown or missing header `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::heap_rack;

    #[test]
    fn rack_round_trip() {
        let r = FiniteRack::dihedral(5);
        let text = serialize_rack(&r);
        assert_eq!(parse_rack(&text).unwrap(), r);
        assert_eq!(serialize_rack(&parse_rack(&text).unwrap()), text);
    }

    #[test]
    fn group_round_trip() {
        let g = FiniteGroup::symmetric(3);
        let text = serialize_group(&g);
        assert_eq!(parse_group(&text).unwrap(), g);
    }

    #[test]
    fn groupoid_rack_round_trip() {
        let gr = heap_rack(&FiniteGroup::cyclic(3));
        let text = serialize_groupoid_rack(&gr);
        assert_eq!(parse_groupoid_rack(&text).unwrap(), gr);
        assert_eq!(
            serialize_groupoid_rack(&parse_groupoid_rack(&text).unwrap()),
            text
        );
    }

    #[test]
    fn mgr_round_trip() {
        let d = MultipleGroupRackData::conjugation(FiniteGroup::symmetric(3));
        let text = serialize_mgr(&d);
        let back = parse_mgr(&text).unwrap();
        assert_eq!(back.groups, d.groups);
        assert_eq!(back.op, d.op);
    }

    #[test]
    fn augmented_round_trip() {
        let d = AugmentedRackData::conjugation(FiniteGroup::symmetric(3));
        let text = serialize_augmented(&d);
        let back = parse_augmented(&text).unwrap();
        assert_eq!(back.rack, d.rack);
        assert_eq!(back.group, d.group);
        assert_eq!(back.action, d.action);
        assert_eq!(back.boundary, d.boundary);
    }

    #[test]
    fn universal_round_trip() {
        let gr = heap_rack(&FiniteGroup::cyclic(2));
        let d = crate::universality::universality_data_of(&gr);
        let text = serialize_universal(&d);
        let back = parse_universal(&text).unwrap();
        assert_eq!(back.sym, d.sym);
        assert_eq!(back.mu, d.mu);
    }

    #[test]
    fn dispatch_reads_headers() {
        let gr = heap_rack(&FiniteGroup::cyclic(2));
        let input = parse_algebra(&serialize_groupoid_rack(&gr)).unwrap();
        assert_eq!(input.kind(), "groupoid-rack");
        let input = parse_algebra(&serialize_rack(&FiniteRack::dihedral(3))).unwrap();
        assert_eq!(input.kind(), "rack");
    }

    #[test]
    fn comp_sentinel_is_dash() {
        let gr = heap_rack(&FiniteGroup::cyclic(2));
        let text = serialize_groupoid_rack(&gr);
        assert!(text.contains('-'));
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(matches!(
            parse_algebra("racks v2\nsize 1\n"),
            Err(FormatError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn truncated_table_is_rejected() {
        let text = "rack v1\nsize 2\nop\n0 1\n";
        assert!(parse_rack(text).is_err());
    }
}
