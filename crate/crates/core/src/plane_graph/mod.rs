//! Plane near-triangulations given by an explicit rotation system.
//!
//! Vertices are dense indices `0..n`. `rotation[v]` lists the neighbours of
//! `v` in clockwise order. Faces are traced by the rule
//! `next(u -> v) = (v -> succ_v(u))`, where `succ_v` is the clockwise
//! successor in `rotation[v]`. Under this rule bounded faces come out
//! counter-clockwise and the outer face comes out clockwise, so the outer
//! cycle `v1 v2 ... vk` is stored in exactly the order it is traced.

mod blocks;
mod region;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

pub use blocks::blocks;
pub use region::Region;

use thiserror::Error;

/// Undirected edge with `0 <= .0 < .1`.
pub type Edge = (usize, usize);

pub fn edge_key(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Read-only adjacency view shared by the solvers.
pub trait Graph {
    fn vertex_count(&self) -> usize;
    fn neighbors(&self, v: usize) -> &[usize];

    fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            for &u in self.neighbors(v) {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.neighbors(u).contains(&v)
    }

    fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Vertices a search should visit first, in this order.
    fn search_hint(&self) -> &[usize] {
        &[]
    }
}

/// Plain simple graph, used for subgraphs that are not near-triangulations
/// (wheel strings, spanning subgraphs, the inner part of a short cycle).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(vertex_count: usize) -> Self {
        SimpleGraph {
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    pub fn from_edges(vertex_count: usize, edges: &[Edge]) -> Self {
        let mut g = SimpleGraph::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Adds `uv` unless it is a loop or already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || self.adjacency[u].contains(&v) {
            return false;
        }
        self.adjacency[u].push(v);
        self.adjacency[v].push(u);
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adjacency[u].retain(|&x| x != v);
        self.adjacency[v].retain(|&x| x != u);
    }
}

impl Graph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    TooFewVertices(usize),
    RotationLength { expected: usize, found: usize },
    NeighborOutOfRange { vertex: usize, neighbor: usize },
    Loop(usize),
    ParallelEdge(usize, usize),
    AsymmetricEdge(usize, usize),
    Disconnected,
    EulerMismatch { faces: usize, expected: usize },
    BadOuterCycle(String),
    InnerFaceLength { face: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices(n) => write!(f, "only {n} vertices; need at least 3"),
            Violation::RotationLength { expected, found } => {
                write!(f, "rotation has {found} entries for {expected} vertices")
            }
            Violation::NeighborOutOfRange { vertex, neighbor } => {
                write!(f, "vertex {vertex} lists out-of-range neighbour {neighbor}")
            }
            Violation::Loop(v) => write!(f, "loop at vertex {v}"),
            Violation::ParallelEdge(u, v) => write!(f, "parallel edge {u}-{v}"),
            Violation::AsymmetricEdge(u, v) => {
                write!(f, "{v} is in the rotation of {u} but not vice versa")
            }
            Violation::Disconnected => write!(f, "graph is not connected"),
            Violation::EulerMismatch { faces, expected } => write!(
                f,
                "face tracing gives {faces} faces, Euler's formula needs {expected} (non-planar rotation)"
            ),
            Violation::BadOuterCycle(why) => write!(f, "bad outer cycle: {why}"),
            Violation::InnerFaceLength { face } => {
                write!(f, "inner face of length {}: {:?}", face.len(), face)
            }
        }
    }
}

/// Every violated invariant, in discovery order. Empty iff valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid near-triangulation: {0}")]
    Invalid(ValidationReport),
    #[error("faces do not form a disc: {0}")]
    BadFaces(String),
    #[error("invalid splitting path: {0}")]
    BadPath(String),
    #[error("cycle length must be 3 or 4, got {0}")]
    BadCycleLength(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneNearTriangulation {
    rotation: Vec<Vec<usize>>,
    outer: Vec<usize>,
}

impl PlaneNearTriangulation {
    /// Wraps a rotation system without checking it; see [`validate`].
    pub fn from_parts_unchecked(rotation: Vec<Vec<usize>>, outer: Vec<usize>) -> Self {
        PlaneNearTriangulation { rotation, outer }
    }

    pub fn new(rotation: Vec<Vec<usize>>, outer: Vec<usize>) -> Result<Self, GraphError> {
        let g = PlaneNearTriangulation { rotation, outer };
        let report = g.validate();
        if report.is_valid() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(report))
        }
    }

    /// Builds the embedding from a triangle list tiling a disc whose boundary
    /// is `outer` (given clockwise, i.e. in principal order `v1 v2 ... vk`).
    /// Triangles may be given in any orientation.
    pub fn from_faces(
        vertex_count: usize,
        outer: Vec<usize>,
        faces: &[[usize; 3]],
    ) -> Result<Self, GraphError> {
        if outer.len() < 3 {
            return Err(GraphError::BadFaces("outer cycle shorter than 3".into()));
        }
        let oriented = orient_faces(&outer, faces)?;
        // succ[b][a] = c  <=>  c follows a clockwise around b
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); vertex_count];
        let mut put = |b: usize, a: usize, c: usize| -> Result<(), GraphError> {
            if b >= vertex_count || a >= vertex_count || c >= vertex_count {
                return Err(GraphError::BadFaces(format!("vertex out of range in {a},{b},{c}")));
            }
            if succ[b].insert(a, c).is_some() {
                return Err(GraphError::BadFaces(format!(
                    "dart {a}->{b} is used by two faces"
                )));
            }
            Ok(())
        };
        for f in &oriented {
            for i in 0..3 {
                put(f[(i + 1) % 3], f[i], f[(i + 2) % 3])?;
            }
        }
        let k = outer.len();
        for i in 0..k {
            put(outer[(i + 1) % k], outer[i], outer[(i + 2) % k])?;
        }
        let mut rotation = Vec::with_capacity(vertex_count);
        for (v, map) in succ.iter().enumerate() {
            if map.is_empty() {
                return Err(GraphError::BadFaces(format!("vertex {v} is in no face")));
            }
            let start = *map.keys().min().unwrap();
            let mut rot = vec![start];
            let mut cur = map[&start];
            while cur != start {
                if rot.len() > map.len() {
                    return Err(GraphError::BadFaces(format!("vertex {v} has a broken fan")));
                }
                rot.push(cur);
                cur = *map.get(&cur).ok_or_else(|| {
                    GraphError::BadFaces(format!("vertex {v} has a broken fan"))
                })?;
            }
            if rot.len() != map.len() {
                return Err(GraphError::BadFaces(format!(
                    "vertex {v} is pinched (its faces form more than one fan)"
                )));
            }
            rotation.push(rot);
        }
        PlaneNearTriangulation::new(rotation, outer)
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn outer_cycle(&self) -> &[usize] {
        &self.outer
    }

    pub fn outer_len(&self) -> usize {
        self.outer.len()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_outer(&self, v: usize) -> bool {
        self.outer.contains(&v)
    }

    pub fn outer_position(&self, v: usize) -> Option<usize> {
        self.outer.iter().position(|&x| x == v)
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        let on: HashSet<usize> = self.outer.iter().copied().collect();
        (0..self.vertex_count()).filter(|v| !on.contains(v)).collect()
    }

    /// Clockwise successor of `u` around `v`.
    pub fn succ(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("not a neighbour");
        rot[(i + 1) % rot.len()]
    }

    /// Counter-clockwise successor of `u` around `v`.
    pub fn pred(&self, v: usize, u: usize) -> usize {
        let rot = &self.rotation[v];
        let i = rot.iter().position(|&x| x == u).expect("not a neighbour");
        rot[(i + rot.len() - 1) % rot.len()]
    }

    /// All faces as traced vertex sequences, including the outer face.
    pub fn trace_faces(&self) -> Vec<Vec<usize>> {
        trace_faces(&self.rotation)
    }

    /// Bounded faces, each as `[a, b, c]` in traced (counter-clockwise) order.
    pub fn inner_faces(&self) -> Vec<[usize; 3]> {
        let k = self.outer.len();
        let outer_darts: HashSet<(usize, usize)> = (0..k)
            .map(|i| (self.outer[i], self.outer[(i + 1) % k]))
            .collect();
        self.trace_faces()
            .into_iter()
            .filter(|f| {
                let l = f.len();
                !(l == k && (0..l).any(|i| outer_darts.contains(&(f[i], f[(i + 1) % l]))))
            })
            .map(|f| [f[0], f[1], f[2]])
            .collect()
    }

    /// Checks every structural invariant and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.rotation.len();
        if n < 3 {
            violations.push(Violation::TooFewVertices(n));
            return ValidationReport { violations };
        }
        let mut structural_ok = true;
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut seen = HashSet::new();
            for &u in rot {
                if u >= n {
                    violations.push(Violation::NeighborOutOfRange { vertex: v, neighbor: u });
                    structural_ok = false;
                } else if u == v {
                    violations.push(Violation::Loop(v));
                    structural_ok = false;
                } else if !seen.insert(u) {
                    if v < u {
                        violations.push(Violation::ParallelEdge(v, u));
                    }
                    structural_ok = false;
                } else if !self.rotation[u].contains(&v) {
                    violations.push(Violation::AsymmetricEdge(v, u));
                    structural_ok = false;
                }
            }
        }
        if !structural_ok {
            return ValidationReport { violations };
        }
        if !is_connected(self) {
            violations.push(Violation::Disconnected);
            return ValidationReport { violations };
        }
        let faces = self.trace_faces();
        let e = self.edge_count();
        let expected = e + 2 - n;
        if faces.len() != expected {
            violations.push(Violation::EulerMismatch { faces: faces.len(), expected });
        }

        // outer cycle
        let k = self.outer.len();
        let mut outer_face = None;
        if k < 3 {
            violations.push(Violation::BadOuterCycle(format!("length {k} < 3")));
        } else if self.outer.iter().any(|&v| v >= n) {
            violations.push(Violation::BadOuterCycle("vertex out of range".into()));
        } else if self.outer.iter().collect::<HashSet<_>>().len() != k {
            violations.push(Violation::BadOuterCycle("repeated vertex".into()));
        } else if let Some(i) =
            (0..k).find(|&i| !self.has_edge(self.outer[i], self.outer[(i + 1) % k]))
        {
            violations.push(Violation::BadOuterCycle(format!(
                "{} and {} are not adjacent",
                self.outer[i],
                self.outer[(i + 1) % k]
            )));
        } else {
            outer_face = faces.iter().position(|f| same_cyclic_sequence(f, &self.outer));
            if outer_face.is_none() {
                let reversed: Vec<usize> = self.outer.iter().rev().copied().collect();
                if faces.iter().any(|f| same_cyclic_sequence(f, &reversed)) {
                    violations.push(Violation::BadOuterCycle(
                        "orientation reversed (outer cycle must be clockwise)".into(),
                    ));
                } else {
                    violations.push(Violation::BadOuterCycle("does not bound a face".into()));
                }
            }
        }
        for (i, f) in faces.iter().enumerate() {
            if Some(i) != outer_face && f.len() != 3 {
                violations.push(Violation::InnerFaceLength { face: f.clone() });
            }
        }
        ValidationReport { violations }
    }

    /// Edges joining two non-consecutive outer vertices.
    pub fn chords(&self) -> Vec<Edge> {
        let k = self.outer.len();
        let mut out = Vec::new();
        for (i, &a) in self.outer.iter().enumerate() {
            for &b in &self.rotation[a] {
                if let Some(j) = self.outer_position(b) {
                    let consecutive = (i + 1) % k == j || (j + 1) % k == i;
                    if a < b && !consecutive {
                        out.push((a, b));
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Cycles of length 3 or 4 other than the outer cycle with at least one
    /// vertex strictly inside. Each cycle starts at its smallest vertex.
    pub fn separating_cycles(&self, length: usize) -> Result<Vec<Vec<usize>>, GraphError> {
        if length != 3 && length != 4 {
            return Err(GraphError::BadCycleLength(length));
        }
        let region = Region::from_graph(self);
        let mut out = Vec::new();
        for cycle in self.cycles_of_length(length) {
            if cycle.len() == self.outer.len() && same_cycle_any_direction(&cycle, &self.outer) {
                continue;
            }
            if !region.strictly_inside(&cycle).is_empty() {
                out.push(cycle);
            }
        }
        Ok(out)
    }

    /// All simple cycles of length 3 or 4, each starting at its minimum
    /// vertex with the second vertex smaller than the last.
    pub fn cycles_of_length(&self, length: usize) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut out = Vec::new();
        for a in 0..n {
            for &b in &self.rotation[a] {
                if b <= a {
                    continue;
                }
                for &c in &self.rotation[b] {
                    if c <= a || c == b {
                        continue;
                    }
                    if length == 3 {
                        if b < c && self.has_edge(c, a) {
                            out.push(vec![a, b, c]);
                        }
                    } else {
                        for &d in &self.rotation[c] {
                            if d > a && d != b && b < d && self.has_edge(d, a) {
                                out.push(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Splits along a path whose endpoints are distinct outer vertices and
    /// whose inner vertices are interior (or a single chord).
    pub fn split_along(&self, path: &[usize]) -> Result<SplitResult, GraphError> {
        let bad = |s: String| Err(GraphError::BadPath(s));
        if path.len() < 2 {
            return bad("path needs at least two vertices".into());
        }
        let (first, last) = (path[0], *path.last().unwrap());
        if first == last {
            return bad("endpoints are equal".into());
        }
        if !self.is_outer(first) || !self.is_outer(last) {
            return bad("endpoints must lie on the outer cycle".into());
        }
        if path[1..path.len() - 1].iter().any(|&v| self.is_outer(v)) {
            return bad("path is not internally disjoint from the outer cycle".into());
        }
        if path.iter().collect::<HashSet<_>>().len() != path.len() {
            return bad("path repeats a vertex".into());
        }
        for w in path.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return bad(format!("{} and {} are not adjacent", w[0], w[1]));
            }
        }
        if path.len() == 2 && !self.chords().contains(&edge_key(first, last)) {
            return bad("a two-vertex path must be a chord".into());
        }
        let separators: HashSet<Edge> = path.windows(2).map(|w| edge_key(w[0], w[1])).collect();
        let mut parts = Region::from_graph(self).split_by_edges(&separators);
        if parts.len() != 2 {
            return bad(format!("path cuts the disc into {} pieces", parts.len()));
        }
        let second = parts.pop().unwrap();
        let first_part = parts.pop().unwrap();
        let (part_one, to_original_one) = first_part.to_near_triangulation(None)?;
        let (part_two, to_original_two) = second.to_near_triangulation(None)?;
        Ok(SplitResult {
            part_one,
            part_two,
            shared_boundary: path.to_vec(),
            to_original_one,
            to_original_two,
        })
    }
}

impl Graph for PlaneNearTriangulation {
    fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    fn search_hint(&self) -> &[usize] {
        &self.outer
    }
}

/// Result of cutting a near-triangulation along a path. `to_original_*[i]`
/// is the vertex of the input graph that became vertex `i` of the part.
#[derive(Debug, Clone)]
pub struct SplitResult {
    pub part_one: PlaneNearTriangulation,
    pub part_two: PlaneNearTriangulation,
    pub shared_boundary: Vec<usize>,
    pub to_original_one: Vec<usize>,
    pub to_original_two: Vec<usize>,
}

pub(crate) fn trace_faces(rotation: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut visited: HashSet<(usize, usize)> = HashSet::new();
    let mut faces = Vec::new();
    let position: Vec<HashMap<usize, usize>> = rotation
        .iter()
        .map(|rot| rot.iter().enumerate().map(|(i, &u)| (u, i)).collect())
        .collect();
    for v in 0..rotation.len() {
        for &u in &rotation[v] {
            if visited.contains(&(v, u)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (v, u);
            while visited.insert((a, b)) {
                face.push(a);
                let rot = &rotation[b];
                let next = rot[(position[b][&a] + 1) % rot.len()];
                a = b;
                b = next;
            }
            faces.push(face);
        }
    }
    faces
}

fn is_connected<G: Graph>(g: &G) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == n
}

fn same_cyclic_sequence(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return a.len() == b.len();
    }
    match a.iter().position(|&x| x == b[0]) {
        None => false,
        Some(s) => (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]),
    }
}

fn same_cycle_any_direction(a: &[usize], b: &[usize]) -> bool {
    let rev: Vec<usize> = b.iter().rev().copied().collect();
    same_cyclic_sequence(a, b) || same_cyclic_sequence(a, &rev)
}

/// Orients triangles consistently so that the face on edge `outer[0] outer[1]`
/// contains the dart `outer[1] -> outer[0]`.
fn orient_faces(outer: &[usize], faces: &[[usize; 3]]) -> Result<Vec<[usize; 3]>, GraphError> {
    if faces.is_empty() {
        return Err(GraphError::BadFaces("no faces".into()));
    }
    let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(GraphError::BadFaces(format!("degenerate triangle {f:?}")));
        }
        for j in 0..3 {
            by_edge.entry(edge_key(f[j], f[(j + 1) % 3])).or_default().push(i);
        }
    }
    if let Some((e, _)) = by_edge.iter().find(|(_, fs)| fs.len() > 2) {
        return Err(GraphError::BadFaces(format!("edge {e:?} is in more than two faces")));
    }
    let has_dart = |f: &[usize; 3], a: usize, b: usize| (0..3).any(|j| f[j] == a && f[(j + 1) % 3] == b);
    let flip = |f: [usize; 3]| [f[0], f[2], f[1]];
    let root_edge = edge_key(outer[0], outer[1]);
    let root = *by_edge
        .get(&root_edge)
        .and_then(|fs| fs.first())
        .ok_or_else(|| GraphError::BadFaces("first outer edge is in no face".into()))?;
    let mut oriented: Vec<Option<[usize; 3]>> = vec![None; faces.len()];
    let r = faces[root];
    oriented[root] = Some(if has_dart(&r, outer[1], outer[0]) { r } else { flip(r) });
    let mut stack = vec![root];
    while let Some(i) = stack.pop() {
        let f = oriented[i].unwrap();
        for j in 0..3 {
            let (a, b) = (f[j], f[(j + 1) % 3]);
            for &o in &by_edge[&edge_key(a, b)] {
                if o == i {
                    continue;
                }
                // neighbour must use the dart b -> a
                let g = faces[o];
                let want = if has_dart(&g, b, a) { g } else { flip(g) };
                match oriented[o] {
                    None => {
                        oriented[o] = Some(want);
                        stack.push(o);
                    }
                    Some(existing) if existing != want => {
                        return Err(GraphError::BadFaces("faces are not orientable".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    oriented
        .into_iter()
        .map(|f| f.ok_or_else(|| GraphError::BadFaces("faces are not connected".into())))
        .collect()
}

/// Vertices adjacent to all of `targets`.
pub fn common_neighbors<G: Graph>(g: &G, targets: &[usize]) -> BTreeSet<usize> {
    let mut it = targets.iter();
    let Some(&first) = it.next() else {
        return BTreeSet::new();
    };
    let mut set: BTreeSet<usize> = g.neighbors(first).iter().copied().collect();
    for &t in it {
        let nb: BTreeSet<usize> = g.neighbors(t).iter().copied().collect();
        set = set.intersection(&nb).copied().collect();
    }
    set
}

#[cfg(test)]
mod tests;
