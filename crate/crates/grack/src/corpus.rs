//! The bundled corpus of before/after move pairs, and the invariance suite
//! that runs over it.
//!
//! Each pair lives in its own directory as two diagram files plus a small
//! `pair.txt` manifest of `key: value` lines:
//!
//! ```text
//! pair v1
//! name: r6a
//! kind: r6a
//! before: before.dg
//! after: after.dg
//! site: r6a forward 0 1
//! boundary: 0->0 1->1 2->2 4->4
//! ```
//!
//! `site` is the move that carries `before` to `after` (absent for the
//! composite pair, which is a sequence). `boundary` lists the legs of the
//! rewritten disk as `before_arc->after_arc` entries; one arc may carry
//! several legs (a strand entering and leaving the disk uncut). The same
//! files are compiled into the library, so [`corpus`] needs no filesystem.

use crate::coloring::{count_colorings, enumerate_colorings};
use crate::diagram::{parse_diagram, Diagram};
use crate::groupoid_rack::GroupoidRack;
use crate::moves::{MoveKind, MoveSite};
use num_bigint::BigUint;
use std::path::Path;
use thiserror::Error;

/// A witnessed move: two diagrams related by one Y-oriented Reidemeister or
/// inverse move (or a composite sequence), with the boundary-leg
/// correspondence between them.
#[derive(Debug, Clone)]
pub struct MovePair {
    pub name: String,
    pub kind: MoveKind,
    /// Site carrying `before` to `after`, when a single-move encoding exists.
    pub site: Option<MoveSite>,
    pub before: Diagram,
    pub after: Diagram,
    /// Boundary legs as `(before_arc, after_arc)`; arcs may repeat.
    pub boundary: Vec<(usize, usize)>,
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("pair `{name}`: {reason}")]
    Manifest { name: String, reason: String },
    #[error("pair `{name}`: diagram `{file}`: {source}")]
    BadDiagram {
        name: String,
        file: String,
        source: crate::diagram::DiagramError,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

macro_rules! embedded_pair {
    ($name:literal) => {
        (
            $name,
            include_str!(concat!("../corpus/", $name, "/pair.txt")),
            include_str!(concat!("../corpus/", $name, "/before.dg")),
            include_str!(concat!("../corpus/", $name, "/after.dg")),
        )
    };
}

static EMBEDDED: &[(&str, &str, &str, &str)] = &[
    embedded_pair!("r2p"),
    embedded_pair!("r2m"),
    embedded_pair!("r3"),
    embedded_pair!("r5a"),
    embedded_pair!("r5b"),
    embedded_pair!("r5c"),
    embedded_pair!("r5d"),
    embedded_pair!("r6a"),
    embedded_pair!("r6b"),
    embedded_pair!("r6c"),
    embedded_pair!("r6d"),
    embedded_pair!("inv1"),
    embedded_pair!("inv2"),
    embedded_pair!("composite"),
];

/// The compiled-in corpus: two oriented R2 variants, one R3, the four R5
/// and four R6 orientation variants, two inverse moves, and one composite
/// sequence.
pub fn corpus() -> Vec<MovePair> {
    EMBEDDED
        .iter()
        .map(|(name, manifest, before, after)| {
            parse_pair(name, manifest, before, after).expect("bundled corpus is well-formed")
        })
        .collect()
}

/// Loads a corpus from a directory containing one subdirectory per pair,
/// each with a `pair.txt` manifest. Subdirectories are visited in name
/// order.
pub fn corpus_from_dir(dir: &Path) -> Result<Vec<MovePair>, CorpusError> {
    let mut subdirs: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.is_dir() && p.join("pair.txt").is_file())
        .collect();
    subdirs.sort();
    let mut out = Vec::new();
    for sub in subdirs {
        let name = sub
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let manifest = std::fs::read_to_string(sub.join("pair.txt"))?;
        let fields = manifest_fields(&name, &manifest)?;
        let read = |key: &str| -> Result<String, CorpusError> {
            let file = field(&fields, key, &name)?;
            Ok(std::fs::read_to_string(sub.join(file))?)
        };
        let before_text = read("before")?;
        let after_text = read("after")?;
        out.push(build_pair(&name, &fields, &before_text, &after_text)?);
    }
    Ok(out)
}

fn parse_pair(
    name: &str,
    manifest: &str,
    before: &str,
    after: &str,
) -> Result<MovePair, CorpusError> {
    let fields = manifest_fields(name, manifest)?;
    build_pair(name, &fields, before, after)
}

fn manifest_fields(name: &str, manifest: &str) -> Result<Vec<(String, String)>, CorpusError> {
    let mut lines = manifest.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().unwrap_or_default();
    if header.trim() != "pair v1" {
        return Err(CorpusError::Manifest {
            name: name.into(),
            reason: format!("expected header `pair v1`, found `{header}`"),
        });
    }
    lines
        .map(|line| {
            line.split_once(':')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| CorpusError::Manifest {
                    name: name.into(),
                    reason: format!("expected `key: value`, found `{line}`"),
                })
        })
        .collect()
}

fn field<'a>(
    fields: &'a [(String, String)],
    key: &str,
    name: &str,
) -> Result<&'a str, CorpusError> {
    fields
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .ok_or_else(|| CorpusError::Manifest {
            name: name.into(),
            reason: format!("missing `{key}` field"),
        })
}

fn build_pair(
    name: &str,
    fields: &[(String, String)],
    before_text: &str,
    after_text: &str,
) -> Result<MovePair, CorpusError> {
    let manifest_err = |reason: String| CorpusError::Manifest {
        name: name.into(),
        reason,
    };
    let kind_str = field(fields, "kind", name)?;
    let kind = MoveKind::parse(kind_str)
        .ok_or_else(|| manifest_err(format!("unknown kind `{kind_str}`")))?;
    let site = fields
        .iter()
        .find(|(k, _)| k == "site")
        .map(|(_, v)| MoveSite::parse(v))
        .transpose()
        .map_err(manifest_err)?;
    let before = parse_diagram(before_text).map_err(|source| CorpusError::BadDiagram {
        name: name.into(),
        file: "before".into(),
        source,
    })?;
    let after = parse_diagram(after_text).map_err(|source| CorpusError::BadDiagram {
        name: name.into(),
        file: "after".into(),
        source,
    })?;
    let mut boundary = Vec::new();
    for entry in field(fields, "boundary", name)?.split_whitespace() {
        let (b, a) = entry
            .split_once("->")
            .ok_or_else(|| manifest_err(format!("bad boundary entry `{entry}`")))?;
        let b: usize = b
            .parse()
            .map_err(|e| manifest_err(format!("bad boundary arc: {e}")))?;
        let a: usize = a
            .parse()
            .map_err(|e| manifest_err(format!("bad boundary arc: {e}")))?;
        if b >= before.num_arcs || a >= after.num_arcs {
            return Err(manifest_err(format!(
                "boundary entry `{entry}` out of range"
            )));
        }
        boundary.push((b, a));
    }
    Ok(MovePair {
        name: name.to_string(),
        kind,
        site,
        before,
        after,
        boundary,
    })
}

/// Result of checking one pair against one groupoid rack.
#[derive(Debug, Clone)]
pub struct InvarianceOutcome {
    pub before_count: BigUint,
    pub after_count: BigUint,
    pub counts_equal: bool,
    /// Whether the multisets of coloring restrictions to the boundary legs
    /// agree; the move bijection fixes the boundary, so they must.
    pub boundary_equal: bool,
}

impl InvarianceOutcome {
    pub fn passed(&self) -> bool {
        self.counts_equal && self.boundary_equal
    }
}

/// Counts colorings on both sides and compares the boundary-leg restriction
/// multisets by full enumeration.
pub fn check_invariance(pair: &MovePair, rack: &GroupoidRack) -> InvarianceOutcome {
    let before_count = count_colorings(&pair.before, rack);
    let after_count = count_colorings(&pair.after, rack);
    let restrict = |d: &Diagram, legs: &[usize]| -> Vec<Vec<usize>> {
        let mut tuples: Vec<Vec<usize>> = enumerate_colorings(d, rack)
            .map(|c| legs.iter().map(|&a| c.assignment[a]).collect())
            .collect();
        tuples.sort();
        tuples
    };
    let before_legs: Vec<usize> = pair.boundary.iter().map(|&(b, _)| b).collect();
    let after_legs: Vec<usize> = pair.boundary.iter().map(|&(_, a)| a).collect();
    let boundary_equal = restrict(&pair.before, &before_legs) == restrict(&pair.after, &after_legs);
    InvarianceOutcome {
        counts_equal: before_count == after_count,
        before_count,
        after_count,
        boundary_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::heap_rack;
    use crate::group::FiniteGroup;
    use crate::moves::{apply_move, diagrams_isomorphic};

    #[test]
    fn corpus_has_at_least_fourteen_valid_pairs() {
        let pairs = corpus();
        assert!(pairs.len() >= 14, "only {} pairs", pairs.len());
        for p in &pairs {
            assert!(p.before.validate().is_valid(), "{} before", p.name);
            assert!(p.after.validate().is_valid(), "{} after", p.name);
            assert!(
                p.before.num_arcs <= 6 && p.after.num_arcs <= 6,
                "{}",
                p.name
            );
            assert!(!p.boundary.is_empty(), "{} boundary", p.name);
        }
    }

    #[test]
    fn corpus_covers_the_move_vocabulary() {
        let pairs = corpus();
        let has = |k: MoveKind| pairs.iter().filter(|p| p.kind == k).count();
        assert_eq!(has(MoveKind::R2Plus), 1);
        assert_eq!(has(MoveKind::R2Minus), 1);
        assert_eq!(has(MoveKind::R3), 1);
        for k in [MoveKind::R5a, MoveKind::R5b, MoveKind::R5c, MoveKind::R5d] {
            assert_eq!(has(k), 1, "{k}");
        }
        for k in [MoveKind::R6a, MoveKind::R6b, MoveKind::R6c, MoveKind::R6d] {
            assert_eq!(has(k), 1, "{k}");
        }
        assert_eq!(has(MoveKind::Inv), 2);
        assert_eq!(has(MoveKind::Composite), 1);
    }

    #[test]
    fn sites_reproduce_the_after_diagrams() {
        for p in corpus() {
            let Some(site) = &p.site else { continue };
            let out = apply_move(&p.before, site).unwrap_or_else(|e| panic!("{}: {e}", p.name));
            assert!(
                diagrams_isomorphic(&out.diagram, &p.after),
                "{}: rewritten diagram does not match the stored after",
                p.name
            );
        }
    }

    #[test]
    fn invariance_holds_on_a_small_algebra() {
        let x = heap_rack(&FiniteGroup::cyclic(2));
        for p in corpus() {
            let outcome = check_invariance(&p, &x);
            assert!(
                outcome.passed(),
                "{}: before={} after={} boundary_equal={}",
                p.name,
                outcome.before_count,
                outcome.after_count,
                outcome.boundary_equal
            );
        }
    }

    #[test]
    fn directory_loader_round_trips_the_bundled_corpus() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let pairs = corpus_from_dir(&dir).unwrap();
        assert_eq!(pairs.len(), corpus().len());
        let mut names: Vec<_> = pairs.iter().map(|p| p.name.clone()).collect();
        names.sort();
        let mut embedded: Vec<_> = corpus().iter().map(|p| p.name.clone()).collect();
        embedded.sort();
        assert_eq!(names, embedded);
    }
}
