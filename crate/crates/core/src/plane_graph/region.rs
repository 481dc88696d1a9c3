use std::collections::{BTreeSet, HashMap, HashSet};

use super::{edge_key, Edge, GraphError, PlaneNearTriangulation};

/// A disc-shaped piece of a near-triangulation, stored as its set of
/// bounded faces in the labels of the host graph. Faces keep the host's
/// counter-clockwise orientation, so the boundary (outer cycle) is derived
/// rather than stored, and splitting or deleting never needs relabelling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    faces: Vec<[usize; 3]>,
}

impl Region {
    pub fn from_graph(g: &PlaneNearTriangulation) -> Self {
        Region { faces: g.inner_faces() }
    }

    pub fn from_faces(faces: Vec<[usize; 3]>) -> Self {
        Region { faces }
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.faces.iter().flatten().copied().collect()
    }

    pub fn edges(&self) -> HashSet<Edge> {
        let mut out = HashSet::new();
        for f in &self.faces {
            for j in 0..3 {
                out.insert(edge_key(f[j], f[(j + 1) % 3]));
            }
        }
        out
    }

    pub fn neighbors_in(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for f in &self.faces {
            if let Some(j) = f.iter().position(|&x| x == v) {
                out.insert(f[(j + 1) % 3]);
                out.insert(f[(j + 2) % 3]);
            }
        }
        out
    }

    /// Boundary cycle in clockwise (principal) order, starting at `start`
    /// when given, else at the smallest boundary vertex. Errors if the
    /// boundary is not a single simple cycle.
    pub fn boundary_from(&self, start: Option<usize>) -> Result<Vec<usize>, GraphError> {
        let mut count: HashMap<Edge, usize> = HashMap::new();
        for f in &self.faces {
            for j in 0..3 {
                *count.entry(edge_key(f[j], f[(j + 1) % 3])).or_default() += 1;
            }
        }
        let mut next: HashMap<usize, usize> = HashMap::new();
        for f in &self.faces {
            for j in 0..3 {
                let (a, b) = (f[j], f[(j + 1) % 3]);
                if count[&edge_key(a, b)] == 1 && next.insert(b, a).is_some() {
                    return Err(GraphError::BadFaces(format!("boundary pinched at {b}")));
                }
            }
        }
        if next.is_empty() {
            return Err(GraphError::BadFaces("region has no boundary".into()));
        }
        let first = match start {
            Some(s) if next.contains_key(&s) => s,
            Some(s) => return Err(GraphError::BadFaces(format!("{s} is not on the boundary"))),
            None => *next.keys().min().unwrap(),
        };
        let mut cycle = vec![first];
        let mut cur = next[&first];
        while cur != first {
            if cycle.len() > next.len() {
                return Err(GraphError::BadFaces("boundary is not a cycle".into()));
            }
            cycle.push(cur);
            cur = next[&cur];
        }
        if cycle.len() != next.len() {
            return Err(GraphError::BadFaces("boundary has several components".into()));
        }
        Ok(cycle)
    }

    pub fn boundary(&self) -> Vec<usize> {
        self.boundary_from(None).expect("region boundary is a cycle")
    }

    pub fn interior_vertices(&self) -> BTreeSet<usize> {
        let boundary: HashSet<usize> = self.boundary().into_iter().collect();
        self.vertices().into_iter().filter(|v| !boundary.contains(v)).collect()
    }

    /// Region edges joining two non-consecutive boundary vertices.
    pub fn chords(&self) -> Vec<Edge> {
        let boundary = self.boundary();
        let k = boundary.len();
        let pos: HashMap<usize, usize> = boundary.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out: Vec<Edge> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| match (pos.get(&a), pos.get(&b)) {
                (Some(&i), Some(&j)) => (i + 1) % k != j && (j + 1) % k != i,
                _ => false,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connected pieces of the face set when the given edges may not be
    /// crossed. Pieces are ordered by their first face in this region.
    pub fn split_by_edges(&self, separators: &HashSet<Edge>) -> Vec<Region> {
        let mut by_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
        for (i, f) in self.faces.iter().enumerate() {
            for j in 0..3 {
                by_edge.entry(edge_key(f[j], f[(j + 1) % 3])).or_default().push(i);
            }
        }
        let mut component = vec![usize::MAX; self.faces.len()];
        let mut pieces = Vec::new();
        for root in 0..self.faces.len() {
            if component[root] != usize::MAX {
                continue;
            }
            let id = pieces.len();
            component[root] = id;
            let mut members = vec![root];
            let mut stack = vec![root];
            while let Some(i) = stack.pop() {
                let f = self.faces[i];
                for j in 0..3 {
                    let e = edge_key(f[j], f[(j + 1) % 3]);
                    if separators.contains(&e) {
                        continue;
                    }
                    for &o in &by_edge[&e] {
                        if component[o] == usize::MAX {
                            component[o] = id;
                            members.push(o);
                            stack.push(o);
                        }
                    }
                }
            }
            members.sort_unstable();
            pieces.push(Region {
                faces: members.into_iter().map(|i| self.faces[i]).collect(),
            });
        }
        pieces
    }

    /// The piece bounded by `cycle` (a cycle of region edges), or `None` if
    /// no piece has exactly that boundary.
    pub fn inside_of(&self, cycle: &[usize]) -> Option<Region> {
        let l = cycle.len();
        let cycle_edges: HashSet<Edge> = (0..l).map(|i| edge_key(cycle[i], cycle[(i + 1) % l])).collect();
        self.split_by_edges(&cycle_edges)
            .into_iter()
            .find(|piece| piece.boundary_edges() == cycle_edges)
    }

    /// Vertices strictly inside `cycle`.
    pub fn strictly_inside(&self, cycle: &[usize]) -> Vec<usize> {
        match self.inside_of(cycle) {
            None => Vec::new(),
            Some(piece) => {
                let on: HashSet<usize> = cycle.iter().copied().collect();
                piece.vertices().into_iter().filter(|v| !on.contains(v)).collect()
            }
        }
    }

    pub fn boundary_edges(&self) -> HashSet<Edge> {
        let mut count: HashMap<Edge, usize> = HashMap::new();
        for f in &self.faces {
            for j in 0..3 {
                *count.entry(edge_key(f[j], f[(j + 1) % 3])).or_default() += 1;
            }
        }
        count.into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect()
    }

    /// Faces not incident to `v`.
    pub fn without_vertex(&self, v: usize) -> Region {
        Region {
            faces: self.faces.iter().filter(|f| !f.contains(&v)).copied().collect(),
        }
    }

    /// Neighbours of boundary vertex `v` in the order met when sweeping the
    /// faces around `v` from boundary neighbour `from` to boundary neighbour `to`.
    pub fn fan(&self, v: usize, from: usize, to: usize) -> Vec<usize> {
        // each face (v, x, y) in ccw order links x -> y around v
        let mut link: HashMap<usize, usize> = HashMap::new();
        let mut back: HashMap<usize, usize> = HashMap::new();
        for f in &self.faces {
            if let Some(j) = f.iter().position(|&x| x == v) {
                let (x, y) = (f[(j + 1) % 3], f[(j + 2) % 3]);
                link.insert(x, y);
                back.insert(y, x);
            }
        }
        let (map, start, end) = if link.contains_key(&from) { (&link, from, to) } else { (&back, from, to) };
        let mut out = vec![start];
        let mut cur = start;
        while cur != end {
            cur = map[&cur];
            out.push(cur);
        }
        out
    }

    /// Relabels into a standalone near-triangulation: boundary first (from
    /// `start`), then interior vertices in increasing host label. Returns the
    /// graph and the new-to-host label map.
    pub fn to_near_triangulation(
        &self,
        start: Option<usize>,
    ) -> Result<(PlaneNearTriangulation, Vec<usize>), GraphError> {
        let boundary = self.boundary_from(start)?;
        let on: HashSet<usize> = boundary.iter().copied().collect();
        let mut to_host = boundary.clone();
        to_host.extend(self.vertices().into_iter().filter(|v| !on.contains(v)));
        let to_new: HashMap<usize, usize> = to_host.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let faces: Vec<[usize; 3]> = self
            .faces
            .iter()
            .map(|f| [to_new[&f[0]], to_new[&f[1]], to_new[&f[2]]])
            .collect();
        let outer: Vec<usize> = (0..boundary.len()).collect();
        let g = PlaneNearTriangulation::from_faces(to_host.len(), outer, &faces)?;
        Ok((g, to_host))
    }
}
