use std::collections::BTreeSet;

use super::{build, FamilyDescriptor, FamilyError, PrincipalPath};
use crate::plane_graph::{Graph, PlaneNearTriangulation, SimpleGraph};

/// One part of a string and where its vertices went.
#[derive(Debug, Clone)]
pub struct StringPart {
    pub graph: PlaneNearTriangulation,
    pub path: PrincipalPath,
    /// Part label -> string label.
    pub to_string: Vec<usize>,
}

/// Parts chained by identifying part `i`'s `v2` with part `i+1`'s `vk`.
#[derive(Debug, Clone)]
pub struct WheelString {
    pub graph: SimpleGraph,
    /// Part 1's `vk` and the last part's `v2`.
    pub clean: [usize; 2],
    /// The identified vertices, in chain order.
    pub cuts: Vec<usize>,
    /// Each part's `v1`.
    pub majors: Vec<usize>,
    pub parts: Vec<StringPart>,
}

impl WheelString {
    /// Vertices on the outer cycle of some part.
    pub fn boundary(&self) -> BTreeSet<usize> {
        self.parts
            .iter()
            .flat_map(|p| p.graph.outer_cycle().iter().map(|&v| p.to_string[v]).collect::<Vec<_>>())
            .collect()
    }
}

pub fn build_wheel_string(parts: &[FamilyDescriptor]) -> Result<WheelString, FamilyError> {
    if parts.is_empty() {
        return Err(FamilyError::Malformed("a string needs at least one part".into()));
    }
    let mut built = Vec::with_capacity(parts.len());
    let mut next_label = 0;
    let mut prev_v2: Option<usize> = None;
    let mut cuts = Vec::new();
    let mut majors = Vec::new();
    for d in parts {
        if matches!(d, FamilyDescriptor::String(_)) {
            return Err(FamilyError::Malformed("nested string".into()));
        }
        let (g, p) = build(d)?;
        let mut to_string = vec![usize::MAX; g.vertex_count()];
        if let Some(shared) = prev_v2 {
            to_string[p.vk] = shared;
            cuts.push(shared);
        }
        for slot in to_string.iter_mut() {
            if *slot == usize::MAX {
                *slot = next_label;
                next_label += 1;
            }
        }
        majors.push(to_string[p.v1]);
        prev_v2 = Some(to_string[p.v2]);
        built.push(StringPart { graph: g, path: p, to_string });
    }
    let mut graph = SimpleGraph::new(next_label);
    for part in &built {
        for (a, b) in part.graph.edges() {
            graph.add_edge(part.to_string[a], part.to_string[b]);
        }
    }
    let first = &built[0];
    let last = &built[built.len() - 1];
    let clean = [first.to_string[first.path.vk], last.to_string[last.path.v2]];
    Ok(WheelString { graph, clean, cuts, majors, parts: built })
}
