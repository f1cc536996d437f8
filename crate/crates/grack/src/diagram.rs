//! Combinatorial diagrams of Y-oriented spatial trivalent graphs.
//!
//! A diagram is a set of oriented arcs together with the nodes that consume
//! and produce their endpoints: crossings (the under-strand is cut, the
//! over-strand passes through intact) and trivalent vertices (merge:
//! two in, one out; split: one in, two out). Arcs with no endpoints at all
//! are free loops and must be declared as such. Because every vertex is a
//! merge or a split by construction, no vertex can be a sink or a source.
//!
//! Diagrams are abstract codes: planarity is not verified, and crossing
//! signs are stored explicitly rather than derived from an embedding.
//!
//! # Text format
//!
//! One statement per line:
//!
//! ```text
//! diagram v1
//! arcs <N>
//! loop <arc>                       # declares a free loop
//! x+ <over> <under_in> <under_out> # positive crossing
//! x- <over> <under_in> <under_out> # negative crossing
//! vm <left> <right> <stem>         # merge vertex
//! vs <stem> <left> <right>         # split vertex
//! ```
//!
//! The theta graph, for example: `arcs 3`, `vm 0 1 2`, `vs 2 0 1`.

use crate::report::ValidationReport;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// A crossing: the under-strand enters as `under_in` and leaves as
/// `under_out`; the over-strand is one uncut arc. A positive sign means the
/// under-out color is "under-in acted on by over"; negative uses the
/// inverse action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Merge,
    Split,
}

/// A trivalent vertex. For a merge, `left` and `right` are incoming and
/// `stem` is outgoing; for a split, `stem` is incoming and `left`, `right`
/// are outgoing. In either case the coloring constraint reads
/// "stem = left composed with right".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub kind: VertexKind,
    pub left: usize,
    pub right: usize,
    pub stem: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagram {
    pub num_arcs: usize,
    pub free_loops: Vec<usize>,
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid diagram:\n{0}")]
    Validation(ValidationReport),
}

/// A reference to one endpoint-consuming or -producing slot of a node.
/// Used in validation messages and by the move rewriter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    CrossingUnderIn(usize),
    CrossingUnderOut(usize),
    VertexLeft(usize),
    VertexRight(usize),
    VertexStem(usize),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::CrossingUnderIn(i) => write!(f, "crossing {i} under-in"),
            Slot::CrossingUnderOut(i) => write!(f, "crossing {i} under-out"),
            Slot::VertexLeft(i) => write!(f, "vertex {i} left"),
            Slot::VertexRight(i) => write!(f, "vertex {i} right"),
            Slot::VertexStem(i) => write!(f, "vertex {i} stem"),
        }
    }
}

impl Diagram {
    /// A diagram with `n` arcs and no nodes or loop declarations; callers
    /// add nodes and then validate.
    pub fn with_arcs(n: usize) -> Self {
        Diagram {
            num_arcs: n,
            ..Default::default()
        }
    }

    pub fn arcs(&self) -> std::ops::Range<usize> {
        0..self.num_arcs
    }

    /// Slots producing the start of each arc (for a merge the stem starts
    /// at the vertex; for a split both branches do; the under-out of a
    /// crossing starts there).
    pub fn producers(&self) -> Vec<Vec<Slot>> {
        let mut out = vec![Vec::new(); self.num_arcs];
        for (i, c) in self.crossings.iter().enumerate() {
            out[c.under_out].push(Slot::CrossingUnderOut(i));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            match v.kind {
                VertexKind::Merge => out[v.stem].push(Slot::VertexStem(i)),
                VertexKind::Split => {
                    out[v.left].push(Slot::VertexLeft(i));
                    out[v.right].push(Slot::VertexRight(i));
                }
            }
        }
        out
    }

    /// Slots consuming the end of each arc.
    pub fn consumers(&self) -> Vec<Vec<Slot>> {
        let mut out = vec![Vec::new(); self.num_arcs];
        for (i, c) in self.crossings.iter().enumerate() {
            out[c.under_in].push(Slot::CrossingUnderIn(i));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            match v.kind {
                VertexKind::Merge => {
                    out[v.left].push(Slot::VertexLeft(i));
                    out[v.right].push(Slot::VertexRight(i));
                }
                VertexKind::Split => out[v.stem].push(Slot::VertexStem(i)),
            }
        }
        out
    }

    /// Partition of arcs into underlying-graph components. Passing over a
    /// crossing does not connect two strands; the under-strand pieces of one
    /// strand are connected through the crossing, and a vertex connects all
    /// three of its arcs.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.num_arcs).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let union = |parent: &mut [usize], a: usize, b: usize| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        };
        for c in &self.crossings {
            union(&mut parent, c.under_in, c.under_out);
        }
        for v in &self.vertices {
            union(&mut parent, v.left, v.right);
            union(&mut parent, v.left, v.stem);
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![usize::MAX; self.num_arcs];
        for arc in 0..self.num_arcs {
            let root = find(&mut parent, arc);
            if class_of[root] == usize::MAX {
                class_of[root] = classes.len();
                classes.push(Vec::new());
            }
            classes[class_of[root]].push(arc);
        }
        classes
    }

    /// The component containing `arc`.
    pub fn component_of(&self, arc: usize) -> Vec<usize> {
        self.components()
            .into_iter()
            .find(|c| c.contains(&arc))
            .expect("arc in range")
    }

    /// Whether the component of `arc` is an embedded circle: no vertex
    /// touches any of its arcs. (Crossings are fine — the circle may pass
    /// over or under other strands.)
    pub fn is_circle_component(&self, component: &[usize]) -> bool {
        self.vertices.iter().all(|v| {
            !component.contains(&v.left)
                && !component.contains(&v.right)
                && !component.contains(&v.stem)
        })
    }

    /// Checks arc-range sanity and the endpoint bookkeeping: every declared
    /// free loop has no endpoints, and every other arc is produced exactly
    /// once and consumed exactly once.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.num_arcs;
        let mut out_of_range = false;
        let mut check_arc = |report: &mut ValidationReport, arc: usize, what: &'static str| {
            if arc >= n {
                report.push(
                    "diagram.arc-range",
                    vec![arc],
                    format!("{what} references arc {arc}, but arcs {n}"),
                );
                out_of_range = true;
            }
        };
        for c in &self.crossings {
            check_arc(&mut report, c.over, "crossing over");
            check_arc(&mut report, c.under_in, "crossing under-in");
            check_arc(&mut report, c.under_out, "crossing under-out");
        }
        for v in &self.vertices {
            check_arc(&mut report, v.left, "vertex left");
            check_arc(&mut report, v.right, "vertex right");
            check_arc(&mut report, v.stem, "vertex stem");
        }
        for &l in &self.free_loops {
            check_arc(&mut report, l, "loop declaration");
        }
        if out_of_range {
            return report;
        }
        let producers = self.producers();
        let consumers = self.consumers();
        let mut is_loop = vec![false; n];
        for &l in &self.free_loops {
            if is_loop[l] {
                report.push(
                    "diagram.loop-duplicate",
                    vec![l],
                    format!("arc {l} declared loop twice"),
                );
            }
            is_loop[l] = true;
        }
        for arc in 0..n {
            let (np, nc) = (producers[arc].len(), consumers[arc].len());
            if is_loop[arc] {
                if np != 0 || nc != 0 {
                    let slots: Vec<String> = producers[arc]
                        .iter()
                        .chain(consumers[arc].iter())
                        .map(|s| s.to_string())
                        .collect();
                    report.push(
                        "diagram.loop-with-endpoints",
                        vec![arc],
                        format!("free loop {arc} has endpoint slots: {}", slots.join(", ")),
                    );
                }
            } else {
                if np != 1 {
                    let slots: Vec<String> = producers[arc].iter().map(|s| s.to_string()).collect();
                    report.push(
                        "diagram.arc-produced-once",
                        vec![arc],
                        format!("arc {arc} produced {np} times ({})", slots.join(", ")),
                    );
                }
                if nc != 1 {
                    let slots: Vec<String> = consumers[arc].iter().map(|s| s.to_string()).collect();
                    report.push(
                        "diagram.arc-consumed-once",
                        vec![arc],
                        format!("arc {arc} consumed {nc} times ({})", slots.join(", ")),
                    );
                }
            }
        }
        report
    }
}

/// Parses the documented line format and validates the result.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, reason: String| DiagramError::Parse { line, reason };

    let (hline, header) = lines.next().ok_or_else(|| err(0, "empty input".into()))?;
    if header != "diagram v1" {
        return Err(err(
            hline,
            format!("expected header `diagram v1`, found `{header}`"),
        ));
    }
    let (aline, arcs_stmt) = lines
        .next()
        .ok_or_else(|| err(hline, "missing `arcs <N>` line".into()))?;
    let num_arcs = match arcs_stmt.split_whitespace().collect::<Vec<_>>()[..] {
        ["arcs", n] => n
            .parse::<usize>()
            .map_err(|e| err(aline, format!("bad arc count: {e}")))?,
        _ => {
            return Err(err(
                aline,
                format!("expected `arcs <N>`, found `{arcs_stmt}`"),
            ))
        }
    };
    let mut d = Diagram::with_arcs(num_arcs);
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let parse_ids = |want: usize| -> Result<Vec<usize>, DiagramError> {
            if tokens.len() != want + 1 {
                return Err(err(
                    lineno,
                    format!(
                        "`{}` takes {want} arc ids, found {}",
                        tokens[0],
                        tokens.len() - 1
                    ),
                ));
            }
            tokens[1..]
                .iter()
                .map(|t| {
                    let v = t
                        .parse::<usize>()
                        .map_err(|e| err(lineno, format!("bad arc id `{t}`: {e}")))?;
                    if v >= num_arcs {
                        return Err(err(
                            lineno,
                            format!("arc id {v} out of range 0..{num_arcs}"),
                        ));
                    }
                    Ok(v)
                })
                .collect()
        };
        match tokens[0] {
            "loop" => {
                let ids = parse_ids(1)?;
                d.free_loops.push(ids[0]);
            }
            "x+" | "x-" => {
                let ids = parse_ids(3)?;
                d.crossings.push(Crossing {
                    over: ids[0],
                    under_in: ids[1],
                    under_out: ids[2],
                    sign: if tokens[0] == "x+" {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    },
                });
            }
            "vm" => {
                let ids = parse_ids(3)?;
                d.vertices.push(Vertex {
                    kind: VertexKind::Merge,
                    left: ids[0],
                    right: ids[1],
                    stem: ids[2],
                });
            }
            "vs" => {
                let ids = parse_ids(3)?;
                d.vertices.push(Vertex {
                    kind: VertexKind::Split,
                    stem: ids[0],
                    left: ids[1],
                    right: ids[2],
                });
            }
            other => return Err(err(lineno, format!("unknown statement `{other}`"))),
        }
    }
    let report = d.validate();
    if !report.is_valid() {
        return Err(DiagramError::Validation(report));
    }
    Ok(d)
}

/// Serializes a diagram in the canonical statement order: loops, crossings,
/// vertices, each in stored order. Parsing the output reproduces the
/// diagram exactly.
pub fn serialize_diagram(d: &Diagram) -> String {
    let mut out = String::from("diagram v1\n");
    out.push_str(&format!("arcs {}\n", d.num_arcs));
    for &l in &d.free_loops {
        out.push_str(&format!("loop {l}\n"));
    }
    for c in &d.crossings {
        let tag = match c.sign {
            Sign::Positive => "x+",
            Sign::Negative => "x-",
        };
        out.push_str(&format!(
            "{tag} {} {} {}\n",
            c.over, c.under_in, c.under_out
        ));
    }
    for v in &d.vertices {
        match v.kind {
            VertexKind::Merge => out.push_str(&format!("vm {} {} {}\n", v.left, v.right, v.stem)),
            VertexKind::Split => out.push_str(&format!("vs {} {} {}\n", v.stem, v.left, v.right)),
        }
    }
    out
}

/// The standard theta graph: two vertices, three parallel arcs.
pub fn theta() -> Diagram {
    parse_diagram("diagram v1\narcs 3\nvm 0 1 2\nvs 2 0 1\n").expect("theta is valid")
}

/// A single unknotted circle.
pub fn free_loop() -> Diagram {
    parse_diagram("diagram v1\narcs 1\nloop 0\n").expect("free loop is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_loop_parses() {
        let d = free_loop();
        assert_eq!(d.num_arcs, 1);
        assert!(d.crossings.is_empty() && d.vertices.is_empty());
        assert_eq!(d.components().len(), 1);
    }

    #[test]
    fn theta_parses_and_is_one_component() {
        let d = theta();
        assert_eq!(d.num_arcs, 3);
        assert!(d.validate().is_valid());
        assert_eq!(d.components(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn out_of_range_arc_is_a_parse_error() {
        let e = parse_diagram("diagram v1\narcs 2\nx+ 0 1 5\n").unwrap_err();
        assert!(matches!(e, DiagramError::Parse { line: 3, .. }));
    }

    #[test]
    fn arc_consumed_twice_is_invalid() {
        // both vertices consume arc 0's end
        let e = parse_diagram("diagram v1\narcs 4\nvm 0 1 2\nvm 0 3 1\nvs 2 0 3\n").unwrap_err();
        match e {
            DiagramError::Validation(report) => {
                assert!(report
                    .violations()
                    .iter()
                    .any(|v| v.rule == "diagram.arc-consumed-once" && v.witness == vec![0]));
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }

    #[test]
    fn empty_diagram_is_valid() {
        let d = parse_diagram("diagram v1\narcs 0\n").unwrap();
        assert!(d.validate().is_valid());
        assert!(d.components().is_empty());
    }

    #[test]
    fn two_free_loops_are_two_components() {
        let d = parse_diagram("diagram v1\narcs 2\nloop 0\nloop 1\n").unwrap();
        assert_eq!(d.components().len(), 2);
    }

    #[test]
    fn serialize_then_parse_is_identity() {
        let samples = [
            free_loop(),
            theta(),
            parse_diagram("diagram v1\narcs 4\nvm 0 1 2\nvs 2 0 1\nx+ 0 3 3\n").unwrap(),
        ];
        for d in samples {
            assert_eq!(parse_diagram(&serialize_diagram(&d)).unwrap(), d);
        }
    }

    #[test]
    fn circle_under_theta_edge_is_a_circle_component() {
        let d = parse_diagram("diagram v1\narcs 4\nvm 0 1 2\nvs 2 0 1\nx+ 0 3 3\n").unwrap();
        let comp = d.component_of(3);
        assert_eq!(comp, vec![3]);
        assert!(d.is_circle_component(&comp));
        assert!(!d.is_circle_component(&d.component_of(0)));
    }

    #[test]
    fn undeclared_endpointless_arc_is_invalid() {
        let e = parse_diagram("diagram v1\narcs 1\n").unwrap_err();
        assert!(matches!(e, DiagramError::Validation(_)));
    }
}
