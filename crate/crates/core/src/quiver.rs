//! Quivers, paths, walks, and spanning-tree walk systems.
//!
//! Paths and walks compose left to right: the first arrow of `a*b` is `a`, so
//! `target(a) == source(b)`.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with fixed vertex and arrow order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, v) in vertices.iter().chain(arrows.iter().map(|a| &a.label)).enumerate() {
            if let Some(j) = seen.insert(v.clone(), i) {
                return Err(Error::InvalidPresentation(format!("duplicate label `{v}` (positions {j} and {i})")));
            }
        }
        for a in &arrows {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidPresentation(format!("arrow `{}` has an endpoint out of range", a.label)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from labels and `(label, source, target)` triples.
    pub fn from_parts(vertices: &[&str], arrows: &[(&str, usize, usize)]) -> Result<Self> {
        Quiver::new(
            vertices.iter().map(|s| s.to_string()).collect(),
            arrows.iter().map(|&(l, s, t)| Arrow { label: l.to_string(), source: s, target: t }).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// Arrows leaving `v`, in arrow order.
    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    /// Component index per vertex; components numbered by their lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = next;
                            stack.push(y);
                        }
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn trivial_path(&self, v: usize) -> Path {
        Path::trivial(v)
    }

    pub fn arrow_path(&self, a: usize) -> Path {
        let arr = &self.arrows[a];
        Path { source: arr.source, target: arr.target, arrows: vec![a] }
    }

    /// Composes arrow indices into a path, checking that consecutive arrows meet.
    pub fn path_from_arrows(&self, arrows: &[usize]) -> Option<Path> {
        let first = *arrows.first()?;
        let mut t = self.arrows[first].target;
        for &a in &arrows[1..] {
            if self.arrows[a].source != t {
                return None;
            }
            t = self.arrows[a].target;
        }
        Some(Path { source: self.arrows[first].source, target: t, arrows: arrows.to_vec() })
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e({})", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join("*")
        }
    }

    /// Same quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { label: a.label.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// First Betti number `m - n + c` of the underlying graph.
pub fn betti_number(q: &Quiver) -> usize {
    q.arrow_count() + q.component_count() - q.vertex_count()
}

/// A path in the quiver; the empty arrow list is the trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`; `None` when the endpoints do not meet.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.len() + other.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    /// Number of occurrences of each arrow.
    pub fn arrow_counts(&self, arrow_count: usize) -> Vec<i64> {
        let mut c = vec![0i64; arrow_count];
        for &a in &self.arrows {
            c[a] += 1;
        }
        c
    }

    pub fn is_parallel(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }
}

/// Degree-lexicographic: shorter paths first, then by arrow indices left to
/// right; trivial paths ordered by vertex.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// An oriented path in the double quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub start: usize,
    pub end: usize,
    pub steps: Vec<(usize, Direction)>,
}

impl Walk {
    pub fn trivial(v: usize) -> Walk {
        Walk { start: v, end: v, steps: Vec::new() }
    }

    pub fn from_path(p: &Path) -> Walk {
        Walk { start: p.source, end: p.target, steps: p.arrows.iter().map(|&a| (a, Direction::Forward)).collect() }
    }

    pub fn inverse(&self) -> Walk {
        Walk {
            start: self.end,
            end: self.start,
            steps: self
                .steps
                .iter()
                .rev()
                .map(|&(a, d)| (a, if d == Direction::Forward { Direction::Inverse } else { Direction::Forward }))
                .collect(),
        }
    }

    pub fn then(&self, other: &Walk) -> Option<Walk> {
        if self.end != other.start {
            return None;
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Some(Walk { start: self.start, end: other.end, steps })
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end
    }

    /// Checks that consecutive steps compose in the double quiver.
    pub fn is_valid(&self, q: &Quiver) -> bool {
        let mut at = self.start;
        for &(a, d) in &self.steps {
            let arr = q.arrow(a);
            let (from, to) = match d {
                Direction::Forward => (arr.source, arr.target),
                Direction::Inverse => (arr.target, arr.source),
            };
            if from != at {
                return false;
            }
            at = to;
        }
        at == self.end
    }

    /// Image in the chain group `Z Q1`: forward steps count +1, inverse steps -1.
    pub fn chain(&self, arrow_count: usize) -> Vec<i64> {
        let mut c = vec![0i64; arrow_count];
        for &(a, d) in &self.steps {
            c[a] += if d == Direction::Forward { 1 } else { -1 };
        }
        c
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.steps.is_empty() {
            return format!("e({})", q.vertices()[self.start]);
        }
        self.steps
            .iter()
            .map(|&(a, d)| match d {
                Direction::Forward => q.arrow(a).label.clone(),
                Direction::Inverse => format!("{}^-1", q.arrow(a).label),
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// One walk from the component base to every vertex, along a spanning forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkSystem {
    /// Base vertex of each component.
    pub bases: Vec<usize>,
    pub component_of: Vec<usize>,
    /// `walks[i]` runs from the base of `i`'s component to `i`.
    pub walks: Vec<Walk>,
    pub tree_arrows: Vec<bool>,
}

impl WalkSystem {
    pub fn walk(&self, v: usize) -> &Walk {
        &self.walks[v]
    }

    pub fn chords(&self) -> Vec<usize> {
        (0..self.tree_arrows.len()).filter(|&a| !self.tree_arrows[a]).collect()
    }
}

/// Breadth-first spanning forest rooted at the lowest vertex of each component;
/// arrows are scanned in declaration order, forward and backward.
pub fn spanning_walk_system(q: &Quiver) -> WalkSystem {
    walk_system_with_order(q, &(0..q.arrow_count()).collect::<Vec<_>>())
}

/// Breadth-first spanning forest that scans arrows in the given priority order.
/// Any permutation yields a valid walk system, which is how alternative
/// spanning trees are produced.
pub fn walk_system_with_order(q: &Quiver, arrow_order: &[usize]) -> WalkSystem {
    let comp = q.components();
    let ncomp = comp.iter().max().map_or(0, |m| m + 1);
    let mut bases = vec![usize::MAX; ncomp];
    for (v, &c) in comp.iter().enumerate() {
        if bases[c] == usize::MAX {
            bases[c] = v;
        }
    }
    let mut walks: Vec<Option<Walk>> = vec![None; q.vertex_count()];
    let mut tree_arrows = vec![false; q.arrow_count()];
    for &b in &bases {
        walks[b] = Some(Walk::trivial(b));
        let mut queue = VecDeque::from([b]);
        while let Some(v) = queue.pop_front() {
            for &a in arrow_order {
                let arr = q.arrow(a);
                let step = if arr.source == v {
                    Some((arr.target, Direction::Forward))
                } else if arr.target == v {
                    Some((arr.source, Direction::Inverse))
                } else {
                    None
                };
                let Some((next, dir)) = step else { continue };
                if walks[next].is_some() {
                    continue;
                }
                let mut w = walks[v].clone().expect("visited");
                w.steps.push((a, dir));
                w.end = next;
                walks[next] = Some(w);
                tree_arrows[a] = true;
                queue.push_back(next);
            }
        }
    }
    WalkSystem {
        bases,
        component_of: comp,
        walks: walks.into_iter().map(|w| w.expect("every vertex reached")).collect(),
        tree_arrows,
    }
}

/// For each non-tree arrow `a: i -> j`, the closed walk `w_i * a * w_j^-1`.
pub fn chord_loops(q: &Quiver, w: &WalkSystem) -> Vec<Walk> {
    w.chords()
        .into_iter()
        .map(|a| {
            let arr = q.arrow(a);
            let step = Walk { start: arr.source, end: arr.target, steps: vec![(a, Direction::Forward)] };
            w.walk(arr.source).then(&step).and_then(|x| x.then(&w.walk(arr.target).inverse())).expect("walks compose")
        })
        .collect()
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quiver {{ {}", self.vertices.join(" "))?;
        for a in &self.arrows {
            write!(f, "; {}: {} -> {}", a.label, self.vertices[a.source], self.vertices[a.target])?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kronecker() -> Quiver {
        Quiver::from_parts(&["1", "2"], &[("a", 0, 1), ("b", 0, 1)]).unwrap()
    }

    fn beilinson2() -> Quiver {
        let arrows: Vec<(String, usize, usize)> =
            (0..2).flat_map(|t| (0..3).map(move |i| (format!("x{t}{i}"), t, t + 1))).collect();
        let refs: Vec<(&str, usize, usize)> = arrows.iter().map(|(l, s, t)| (l.as_str(), *s, *t)).collect();
        Quiver::from_parts(&["0", "1", "2"], &refs).unwrap()
    }

    /// Cycle-space rank by brute force: rank over Q of the vertex-arrow incidence
    /// matrix gives n - c, so the kernel has dimension m - (n - c).
    fn brute_force_cycle_rank(q: &Quiver) -> usize {
        use crate::linalg::{FieldMatrix, FieldSpec};
        let rows: Vec<Vec<i64>> = (0..q.vertex_count())
            .map(|v| q.arrows().iter().map(|a| (a.source == v) as i64 - (a.target == v) as i64).collect())
            .collect();
        let m = FieldMatrix::from_i64(FieldSpec::Rationals, &rows);
        q.arrow_count() - m.rank()
    }

    #[test]
    fn betti_examples() {
        let loops = Quiver::from_parts(&["v"], &[("u", 0, 0), ("w", 0, 0)]).unwrap();
        assert_eq!(betti_number(&loops), 2);
        assert_eq!(betti_number(&kronecker()), 1);
        let b = beilinson2();
        assert_eq!(betti_number(&b), 4);
        assert_eq!(brute_force_cycle_rank(&b), 4);
    }

    #[test]
    fn disconnected_components_add() {
        let q = Quiver::from_parts(&["a", "b", "c"], &[("u", 0, 0), ("v", 1, 2)]).unwrap();
        assert_eq!(q.component_count(), 2);
        assert_eq!(betti_number(&q), 1);
    }

    #[test]
    fn walk_systems() {
        let single = Quiver::from_parts(&["v"], &[]).unwrap();
        let w = spanning_walk_system(&single);
        assert_eq!(w.walks, vec![Walk::trivial(0)]);

        let a2 = Quiver::from_parts(&["1", "2"], &[("a", 0, 1)]).unwrap();
        let w = spanning_walk_system(&a2);
        assert_eq!(w.walk(0), &Walk::trivial(0));
        assert_eq!(w.walk(1).steps, vec![(0, Direction::Forward)]);

        let k = kronecker();
        let w = spanning_walk_system(&k);
        assert_eq!(w.walk(1).steps, vec![(0, Direction::Forward)]);
        assert_eq!(w.chords(), vec![1]);
    }

    #[test]
    fn chord_loop_examples() {
        let tree = Quiver::from_parts(&["1", "2", "3"], &[("a", 0, 1), ("b", 2, 1)]).unwrap();
        assert!(chord_loops(&tree, &spanning_walk_system(&tree)).is_empty());

        let one = Quiver::from_parts(&["v"], &[("u", 0, 0)]).unwrap();
        let loops = chord_loops(&one, &spanning_walk_system(&one));
        assert_eq!(loops, vec![Walk { start: 0, end: 0, steps: vec![(0, Direction::Forward)] }]);

        let k = kronecker();
        let loops = chord_loops(&k, &spanning_walk_system(&k));
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].steps, vec![(1, Direction::Forward), (0, Direction::Inverse)]);
        assert_eq!(loops[0].chain(2), vec![-1, 1]);
    }

    #[test]
    fn deglex_order() {
        let p = |a: &[usize]| Path { source: 0, target: 0, arrows: a.to_vec() };
        assert!(Path::trivial(0) < p(&[1]));
        assert!(p(&[1]) < p(&[0, 0]));
        assert!(p(&[0, 1]) < p(&[1, 0]));
    }
}
