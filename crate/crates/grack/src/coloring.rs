//! Counting and enumerating colorings of a diagram by a groupoid rack.
//!
//! A coloring assigns a morphism to every arc such that
//!
//! - at a positive crossing, `under_out = under_in * over`;
//! - at a negative crossing, `under_in = under_out * over`
//!   (equivalently `under_out = under_in *⁻¹ over`);
//! - at a merge or split vertex, the left and right colors are composable
//!   and compose to the stem color.
//!
//! [`count_colorings`] runs a backtracking solver that first schedules all
//! forced propagations (most constraints determine one arc from the other
//! two), branches only where genuinely free, and factors out arcs that
//! appear in no constraint. [`count_colorings_oracle`] brute-forces every
//! total assignment and exists purely to cross-check the solver.

use crate::diagram::{Diagram, Sign};
use crate::error::ColoringError;
use crate::groupoid_rack::GroupoidRack;
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// A total assignment of morphisms to arcs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coloring {
    pub assignment: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum NodeRef {
    Crossing(usize),
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    /// Try every morphism for this arc.
    Branch { arc: usize },
    /// The node determines this arc from its two already-assigned arcs.
    Forced { node: NodeRef, arc: usize },
    /// All three arcs assigned; verify the node's equation.
    Check { node: NodeRef },
}

fn node_arcs(d: &Diagram, node: NodeRef) -> [usize; 3] {
    match node {
        NodeRef::Crossing(i) => {
            let c = &d.crossings[i];
            [c.over, c.under_in, c.under_out]
        }
        NodeRef::Vertex(i) => {
            let v = &d.vertices[i];
            [v.left, v.right, v.stem]
        }
    }
}

/// Which arc (if any) the node can derive, given the set of assigned arcs.
fn forcible(d: &Diagram, node: NodeRef, assigned: &[bool], can_invert: bool) -> Option<usize> {
    match node {
        NodeRef::Crossing(i) => {
            let c = &d.crossings[i];
            if !assigned[c.over] {
                return None; // the over color is never determined by a crossing
            }
            let fwd_free = match c.sign {
                Sign::Positive => true,       // out = in * over
                Sign::Negative => can_invert, // out = in *⁻¹ over
            };
            let bwd_free = match c.sign {
                Sign::Positive => can_invert, // in = out *⁻¹ over
                Sign::Negative => true,       // in = out * over
            };
            if assigned[c.under_in] && !assigned[c.under_out] && fwd_free {
                Some(c.under_out)
            } else if assigned[c.under_out] && !assigned[c.under_in] && bwd_free {
                Some(c.under_in)
            } else {
                None
            }
        }
        NodeRef::Vertex(i) => {
            let v = &d.vertices[i];
            let free: Vec<usize> = [v.left, v.right, v.stem]
                .into_iter()
                .filter(|&a| !assigned[a])
                .collect();
            match free[..] {
                [one] => Some(one),
                _ => None,
            }
        }
    }
}

/// Builds the solve order: checks as soon as a node is saturated, forced
/// assignments next, and branches on the smallest unassigned arc otherwise.
/// With `include_unconstrained`, arcs touching no node are branched too
/// (needed when enumerating full assignments); otherwise they are left out
/// and contribute a multiplicative factor.
fn build_schedule(
    d: &Diagram,
    can_invert: bool,
    include_unconstrained: bool,
) -> (Vec<Step>, usize) {
    let n = d.num_arcs;
    let mut constrained = vec![false; n];
    let nodes: Vec<NodeRef> = (0..d.crossings.len())
        .map(NodeRef::Crossing)
        .chain((0..d.vertices.len()).map(NodeRef::Vertex))
        .collect();
    for &node in &nodes {
        for a in node_arcs(d, node) {
            constrained[a] = true;
        }
    }
    let unconstrained = constrained.iter().filter(|&&c| !c).count();

    let mut steps = Vec::new();
    let mut assigned = vec![false; n];
    let mut used = vec![false; nodes.len()];
    loop {
        // saturated nodes become checks immediately: they only prune
        if let Some(k) = (0..nodes.len())
            .find(|&k| !used[k] && node_arcs(d, nodes[k]).iter().all(|&a| assigned[a]))
        {
            used[k] = true;
            steps.push(Step::Check { node: nodes[k] });
            continue;
        }
        if let Some((k, arc)) = (0..nodes.len()).find_map(|k| {
            if used[k] {
                return None;
            }
            forcible(d, nodes[k], &assigned, can_invert).map(|arc| (k, arc))
        }) {
            used[k] = true;
            assigned[arc] = true;
            steps.push(Step::Forced {
                node: nodes[k],
                arc,
            });
            continue;
        }
        if let Some(arc) =
            (0..n).find(|&a| !assigned[a] && (include_unconstrained || constrained[a]))
        {
            assigned[arc] = true;
            steps.push(Step::Branch { arc });
            continue;
        }
        break;
    }
    debug_assert!(used.iter().all(|&u| u), "every node scheduled exactly once");
    (steps, unconstrained)
}

/// Evaluates a forced step; `None` means the partial assignment is
/// contradictory (e.g. non-composable colors at a vertex).
fn eval_forced(
    d: &Diagram,
    x: &GroupoidRack,
    node: NodeRef,
    arc: usize,
    assignment: &[usize],
) -> Option<usize> {
    match node {
        NodeRef::Crossing(i) => {
            let c = &d.crossings[i];
            let over = assignment[c.over];
            if arc == c.under_out {
                match c.sign {
                    Sign::Positive => Some(x.op(assignment[c.under_in], over)),
                    Sign::Negative => x.op_inv(assignment[c.under_in], over),
                }
            } else {
                match c.sign {
                    Sign::Positive => x.op_inv(assignment[c.under_out], over),
                    Sign::Negative => Some(x.op(assignment[c.under_out], over)),
                }
            }
        }
        NodeRef::Vertex(i) => {
            let v = &d.vertices[i];
            let g = x.groupoid();
            if arc == v.stem {
                g.comp(assignment[v.left], assignment[v.right])
            } else if arc == v.right {
                // right = left⁻¹ ∘ stem, when the domains line up
                g.comp(g.inverse(assignment[v.left]), assignment[v.stem])
            } else {
                // left = stem ∘ right⁻¹
                g.comp(assignment[v.stem], g.inverse(assignment[v.right]))
            }
        }
    }
}

fn check_node(d: &Diagram, x: &GroupoidRack, node: NodeRef, assignment: &[usize]) -> bool {
    match node {
        NodeRef::Crossing(i) => {
            let c = &d.crossings[i];
            let over = assignment[c.over];
            match c.sign {
                Sign::Positive => x.op(assignment[c.under_in], over) == assignment[c.under_out],
                Sign::Negative => x.op(assignment[c.under_out], over) == assignment[c.under_in],
            }
        }
        NodeRef::Vertex(i) => {
            let v = &d.vertices[i];
            x.groupoid().comp(assignment[v.left], assignment[v.right]) == Some(assignment[v.stem])
        }
    }
}

/// Whether a total assignment satisfies every crossing and vertex equation.
pub fn is_valid_coloring(d: &Diagram, x: &GroupoidRack, assignment: &[usize]) -> bool {
    assignment.len() == d.num_arcs
        && assignment.iter().all(|&m| m < x.size())
        && (0..d.crossings.len()).all(|i| check_node(d, x, NodeRef::Crossing(i), assignment))
        && (0..d.vertices.len()).all(|i| check_node(d, x, NodeRef::Vertex(i), assignment))
}

fn count_rec(
    d: &Diagram,
    x: &GroupoidRack,
    steps: &[Step],
    pos: usize,
    assignment: &mut [usize],
) -> BigUint {
    let mut i = pos;
    while i < steps.len() {
        match steps[i] {
            Step::Forced { node, arc } => match eval_forced(d, x, node, arc, assignment) {
                Some(v) => assignment[arc] = v,
                None => return BigUint::zero(),
            },
            Step::Check { node } => {
                if !check_node(d, x, node, assignment) {
                    return BigUint::zero();
                }
            }
            Step::Branch { arc } => {
                let mut total = BigUint::zero();
                for v in 0..x.size() {
                    assignment[arc] = v;
                    total += count_rec(d, x, steps, i + 1, assignment);
                }
                return total;
            }
        }
        i += 1;
    }
    BigUint::one()
}

/// Exact number of colorings, via propagation and backtracking. Arcs that
/// appear in no constraint contribute a factor of `|X|` each.
pub fn count_colorings(d: &Diagram, x: &GroupoidRack) -> BigUint {
    count_colorings_threaded(d, x, 1)
}

/// [`count_colorings`] with the top-level branch split across `threads`
/// worker threads. The count is a sum over subtrees, so the result is
/// identical for every thread count.
pub fn count_colorings_threaded(d: &Diagram, x: &GroupoidRack, threads: usize) -> BigUint {
    let (steps, unconstrained) = build_schedule(d, x.has_column_inverses(), false);
    let free_factor = BigUint::from(x.size()).pow(unconstrained as u32);
    let first_branch = steps.iter().position(|s| matches!(s, Step::Branch { .. }));
    let core = match (first_branch, threads > 1 && x.size() > 1) {
        (Some(bpos), true) => {
            let Step::Branch { arc } = steps[bpos] else {
                unreachable!()
            };
            // the prefix before the first branch is deterministic: play it once
            let mut base = vec![0usize; d.num_arcs];
            let mut prefix_ok = true;
            for step in &steps[..bpos] {
                match *step {
                    Step::Forced { node, arc } => match eval_forced(d, x, node, arc, &base) {
                        Some(v) => base[arc] = v,
                        None => {
                            prefix_ok = false;
                            break;
                        }
                    },
                    Step::Check { node } => {
                        if !check_node(d, x, node, &base) {
                            prefix_ok = false;
                            break;
                        }
                    }
                    Step::Branch { .. } => unreachable!(),
                }
            }
            if !prefix_ok {
                BigUint::zero()
            } else {
                let m = x.size();
                let chunk = m.div_ceil(threads);
                std::thread::scope(|scope| {
                    let mut handles = Vec::new();
                    for t in 0..threads {
                        let lo = t * chunk;
                        let hi = ((t + 1) * chunk).min(m);
                        if lo >= hi {
                            break;
                        }
                        let steps = &steps;
                        let base = &base;
                        handles.push(scope.spawn(move || {
                            let mut local = base.clone();
                            let mut sum = BigUint::zero();
                            for v in lo..hi {
                                local[arc] = v;
                                sum += count_rec(d, x, steps, bpos + 1, &mut local);
                            }
                            sum
                        }));
                    }
                    handles
                        .into_iter()
                        .map(|h| h.join().expect("worker panicked"))
                        .sum()
                })
            }
        }
        _ => {
            let mut assignment = vec![0usize; d.num_arcs];
            count_rec(d, x, &steps, 0, &mut assignment)
        }
    };
    core * free_factor
}

/// Brute-force count over every total assignment. Guarded: refuses inputs
/// with more than 10^8 assignments.
pub fn count_colorings_oracle(d: &Diagram, x: &GroupoidRack) -> Result<BigUint, ColoringError> {
    let m = x.size();
    let a = d.num_arcs;
    let space = (m as f64).powi(a as i32);
    if space > 1e8 {
        return Err(ColoringError::TooLarge(space));
    }
    if a == 0 {
        return Ok(BigUint::one());
    }
    if m == 0 {
        return Ok(BigUint::zero());
    }
    let mut assignment = vec![0usize; a];
    let mut count = BigUint::zero();
    loop {
        if is_valid_coloring(d, x, &assignment) {
            count += 1u32;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == a {
                return Ok(count);
            }
            assignment[i] += 1;
            if assignment[i] < m {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Streams all colorings in lexicographic order of the assignment vector.
pub fn enumerate_colorings<'a>(d: &'a Diagram, x: &'a GroupoidRack) -> ColoringIter<'a> {
    let (steps, _) = build_schedule(d, x.has_column_inverses(), true);
    ColoringIter {
        diagram: d,
        rack: x,
        steps,
        assignment: vec![0; d.num_arcs],
        stack: Vec::new(),
        pos: 0,
        yielded: false,
        done: false,
    }
}

/// Backtracking iterator over colorings. Branch values are tried in
/// ascending order and every branch point picks the smallest undetermined
/// arc, which makes the stream lexicographic in the full assignment: any
/// forced arc is a function of the branch arcs before it, all of which have
/// smaller indices, so the first index where two colorings differ is always
/// a branch arc.
pub struct ColoringIter<'a> {
    diagram: &'a Diagram,
    rack: &'a GroupoidRack,
    steps: Vec<Step>,
    assignment: Vec<usize>,
    /// `(step index, branch arc, next value to try)` per open branch.
    stack: Vec<(usize, usize, usize)>,
    pos: usize,
    yielded: bool,
    done: bool,
}

impl ColoringIter<'_> {
    /// Rewinds to the deepest branch with untried values; `false` when the
    /// whole tree is exhausted.
    fn backtrack(&mut self) -> bool {
        while let Some(top) = self.stack.last_mut() {
            let (spos, arc, next) = *top;
            if next < self.rack.size() {
                self.assignment[arc] = next;
                top.2 += 1;
                self.pos = spos + 1;
                return true;
            }
            self.stack.pop();
        }
        false
    }

    /// Runs the schedule forward to the next complete assignment.
    fn advance(&mut self) -> bool {
        loop {
            if self.pos == self.steps.len() {
                return true;
            }
            match self.steps[self.pos] {
                Step::Branch { arc } => {
                    self.stack.push((self.pos, arc, 0));
                    if !self.backtrack() {
                        return false;
                    }
                }
                Step::Forced { node, arc } => {
                    match eval_forced(self.diagram, self.rack, node, arc, &self.assignment) {
                        Some(v) => {
                            self.assignment[arc] = v;
                            self.pos += 1;
                        }
                        None => {
                            if !self.backtrack() {
                                return false;
                            }
                        }
                    }
                }
                Step::Check { node } => {
                    if check_node(self.diagram, self.rack, node, &self.assignment) {
                        self.pos += 1;
                    } else if !self.backtrack() {
                        return false;
                    }
                }
            }
        }
    }
}

impl Iterator for ColoringIter<'_> {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        if self.yielded && !self.backtrack() {
            self.done = true;
            return None;
        }
        if self.advance() {
            self.yielded = true;
            Some(Coloring {
                assignment: self.assignment.clone(),
            })
        } else {
            self.done = true;
            None
        }
    }
}

/// Replaces the colors on one circle component by their inverse morphisms.
/// This is the coloring side of reversing that component's orientation: the
/// result is a valid coloring of the reversed diagram.
pub fn recolor_inverse_move(
    d: &Diagram,
    coloring: &Coloring,
    arc_in_component: usize,
    x: &GroupoidRack,
) -> Result<Coloring, ColoringError> {
    if coloring.assignment.len() != d.num_arcs {
        return Err(ColoringError::AssignmentMismatch {
            got: coloring.assignment.len(),
            want: d.num_arcs,
        });
    }
    if arc_in_component >= d.num_arcs {
        return Err(ColoringError::NotCircleComponent(arc_in_component));
    }
    let component = d.component_of(arc_in_component);
    if !d.is_circle_component(&component) {
        return Err(ColoringError::NotCircleComponent(arc_in_component));
    }
    let mut assignment = coloring.assignment.clone();
    for &arc in &component {
        assignment[arc] = x.groupoid().inverse(assignment[arc]);
    }
    Ok(Coloring { assignment })
}
