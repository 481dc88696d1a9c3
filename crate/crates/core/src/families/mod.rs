//! Wheels, broken wheels and everything built from them by gluing at the
//! major vertex and by wheel insertion.
//!
//! Every member is built with canonical numbering: the outer cycle
//! `v1 v2 ... vk` is `0 .. k-1` in clockwise order, then interior vertices in
//! insertion order. The principal path is therefore `(k-1, 0, 1)`.

mod enumerate;
mod iso;
mod recognize;
mod sexpr;
mod string;

use thiserror::Error;

use crate::plane_graph::{GraphError, PlaneNearTriangulation};

pub use enumerate::enumerate_family;
pub use iso::{isomorphic_fixing_path, plane_code};
pub use recognize::{is_multi_wheel, recognize_generalized_multi_wheel};
pub use string::{build_wheel_string, StringPart, WheelString};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("malformed descriptor: {0}")]
    Malformed(String),
    #[error("cannot parse descriptor: {0}")]
    Parse(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyDescriptor {
    /// Outer cycle `v1 .. vk` with chords `v1 v3, ..., v1 v(k-1)`.
    BrokenWheel(usize),
    /// Outer cycle of length `k` and one hub joined to all of it.
    Wheel(usize),
    /// Identifies `left.v1 = right.v1` and `left.vk = right.v2`.
    Glue(Box<FamilyDescriptor>, Box<FamilyDescriptor>),
    /// Inserts a wheel into the facial triangle on outer edge `v_t v_(t+1)`
    /// (1-based, `2 <= t <= k-1`) of the base, subdividing that edge `j` times.
    InsertWheel { base: Box<FamilyDescriptor>, triangle: usize, j: usize },
    /// Chain of parts, each part's `v2` identified with the next part's `vk`.
    String(Vec<FamilyDescriptor>),
}

impl FamilyDescriptor {
    pub fn glue(left: FamilyDescriptor, right: FamilyDescriptor) -> Self {
        FamilyDescriptor::Glue(Box::new(left), Box::new(right))
    }

    pub fn insert(base: FamilyDescriptor, triangle: usize, j: usize) -> Self {
        FamilyDescriptor::InsertWheel { base: Box::new(base), triangle, j }
    }

    /// Vertex count of the built graph, without building it.
    pub fn vertex_count(&self) -> usize {
        match self {
            FamilyDescriptor::BrokenWheel(k) => *k,
            FamilyDescriptor::Wheel(k) => k + 1,
            FamilyDescriptor::Glue(l, r) => l.vertex_count() + r.vertex_count() - 2,
            FamilyDescriptor::InsertWheel { base, j, .. } => base.vertex_count() + 1 + j,
            FamilyDescriptor::String(parts) => {
                parts.iter().map(FamilyDescriptor::vertex_count).sum::<usize>() + 1 - parts.len()
            }
        }
    }

    /// True when no glue or broken wheel occurs, i.e. a wheel with
    /// insertions only.
    pub fn is_multi_wheel_term(&self) -> bool {
        match self {
            FamilyDescriptor::Wheel(_) => true,
            FamilyDescriptor::InsertWheel { base, .. } => base.is_multi_wheel_term(),
            _ => false,
        }
    }
}

/// `(vk, v1, v2)`; `v1` is the major vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrincipalPath {
    pub vk: usize,
    pub v1: usize,
    pub v2: usize,
}

impl PrincipalPath {
    pub fn of(g: &PlaneNearTriangulation) -> Self {
        let outer = g.outer_cycle();
        PrincipalPath { vk: outer[outer.len() - 1], v1: outer[0], v2: outer[1] }
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.vk, self.v1, self.v2]
    }
}

/// Abstract form used while building: outer cycle `0..k` and a triangle list.
#[derive(Debug, Clone)]
pub(crate) struct Shape {
    pub n: usize,
    pub k: usize,
    pub faces: Vec<[usize; 3]>,
}

impl Shape {
    fn broken_wheel(k: usize) -> Result<Shape, FamilyError> {
        if k < 3 {
            return Err(FamilyError::Malformed(format!("broken wheel needs k >= 3, got {k}")));
        }
        let faces = (1..k - 1).map(|i| [0, i, i + 1]).collect();
        Ok(Shape { n: k, k, faces })
    }

    fn wheel(k: usize) -> Result<Shape, FamilyError> {
        if k < 3 {
            return Err(FamilyError::Malformed(format!("wheel needs k >= 3, got {k}")));
        }
        let faces = (0..k).map(|i| [k, i, (i + 1) % k]).collect();
        Ok(Shape { n: k + 1, k, faces })
    }

    fn glue(left: &Shape, right: &Shape) -> Shape {
        let k = left.k + right.k - 2;
        let n = left.n + right.n - 2;
        let left_map = |v: usize| if v < left.k { v } else { k + (v - left.k) };
        let right_interior_base = k + (left.n - left.k);
        let right_map = |v: usize| match v {
            0 => 0,
            1 => left.k - 1,
            v if v < right.k => left.k + v - 2,
            v => right_interior_base + (v - right.k),
        };
        let mut faces: Vec<[usize; 3]> = left.faces.iter().map(|f| f.map(left_map)).collect();
        faces.extend(right.faces.iter().map(|f| f.map(right_map)));
        Shape { n, k, faces }
    }

    fn insert_wheel(base: &Shape, t: usize, j: usize) -> Result<Shape, FamilyError> {
        if t < 2 || t + 1 > base.k {
            return Err(FamilyError::Malformed(format!(
                "triangle t{t} out of range 2..={} for an outer cycle of length {}",
                base.k - 1,
                base.k
            )));
        }
        let (a, b) = (t - 1, t);
        let pos = base
            .faces
            .iter()
            .position(|f| f.contains(&a) && f.contains(&b))
            .ok_or_else(|| FamilyError::Malformed(format!("no face on outer edge t{t}")))?;
        let f = base.faces[pos];
        let u = *f.iter().find(|&&x| x != a && x != b).unwrap();
        if u < base.k {
            return Err(FamilyError::Malformed(format!(
                "triangle t{t} has its third vertex on the outer cycle"
            )));
        }
        let relabel = |v: usize| if v <= a { v } else { v + j };
        let (a2, b2, u2) = (relabel(a), relabel(b), relabel(u));
        let w = base.n + j;
        let mut faces: Vec<[usize; 3]> = base
            .faces
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pos)
            .map(|(_, f)| f.map(relabel))
            .collect();
        faces.push([u2, a2, w]);
        faces.push([u2, w, b2]);
        let mut path = vec![a2];
        path.extend(a2 + 1..a2 + 1 + j);
        path.push(b2);
        for p in path.windows(2) {
            faces.push([w, p[0], p[1]]);
        }
        Ok(Shape { n: base.n + j + 1, k: base.k + j, faces })
    }

    pub fn from_descriptor(d: &FamilyDescriptor) -> Result<Shape, FamilyError> {
        match d {
            FamilyDescriptor::BrokenWheel(k) => Shape::broken_wheel(*k),
            FamilyDescriptor::Wheel(k) => Shape::wheel(*k),
            FamilyDescriptor::Glue(l, r) => {
                Ok(Shape::glue(&Shape::from_descriptor(l)?, &Shape::from_descriptor(r)?))
            }
            FamilyDescriptor::InsertWheel { base, triangle, j } => {
                Shape::insert_wheel(&Shape::from_descriptor(base)?, *triangle, *j)
            }
            FamilyDescriptor::String(_) => Err(FamilyError::Malformed(
                "a string is not a near-triangulation; build it with build_wheel_string".into(),
            )),
        }
    }

    pub fn to_graph(&self) -> Result<PlaneNearTriangulation, FamilyError> {
        Ok(PlaneNearTriangulation::from_faces(self.n, (0..self.k).collect(), &self.faces)?)
    }
}

/// Builds a member with canonical numbering.
pub fn build(d: &FamilyDescriptor) -> Result<(PlaneNearTriangulation, PrincipalPath), FamilyError> {
    let g = Shape::from_descriptor(d)?.to_graph()?;
    let p = PrincipalPath::of(&g);
    Ok((g, p))
}

/// Every bounded face has a vertex on the outer cycle other than the major vertex.
pub fn facial_triangle_property(g: &PlaneNearTriangulation, p: PrincipalPath) -> bool {
    g.inner_faces()
        .iter()
        .all(|f| f.iter().any(|&x| x != p.v1 && g.is_outer(x)))
}

#[cfg(test)]
mod tests;
