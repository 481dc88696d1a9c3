//! Colouring engines: exact counting and enumeration over any Z_m, the
//! constructive extension of a precoloured outer edge, the short-cycle
//! colourer, the three-vertex extension with obstruction certificates and
//! the difference invariant of multi-wheels.

mod extend;
mod lemma1;
mod search;
mod three;

use thiserror::Error;

use crate::group_color::{
    is_proper_by_tau, respects, tau, ColorError, ColorSystem, Coloring, PhiAssignment,
};
use crate::plane_graph::{Graph, GraphError, PlaneNearTriangulation};

pub use extend::{color_short_cycle, extend_two, ShortCycleOutcome};
pub use lemma1::{lemma1_alpha, Lemma1Outcome};
pub use search::{count_colorings, enumerate_colorings, find_coloring, Instance};
pub use three::{extend_three, ObstructionCertificate, ThreeOutcome, DEFAULT_NODE_BUDGET};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Color(#[from] ColorError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("forbidden-set caps violated: {0}")]
    InvalidCaps(String),
    #[error("precolouring is not proper: {0}")]
    ImproperPrecoloring(String),
    #[error("graph is not a multi-wheel with the given principal path")]
    NotMultiWheel,
    #[error("certificate search exceeded its budget of {0} candidates")]
    BudgetExceeded(usize),
    #[error("internal error (a defect, not a property of the input): {0}")]
    Internal(String),
}

/// A near-triangulation over Z5 with a precoloured outer path.
///
/// `path` is `[v1, v2]` or `[vk, v1, v2]`: consecutive on the outer cycle,
/// in either direction, with `v1` the shared end or the middle vertex.
/// Exactly the path vertices are precoloured; other outer vertices forbid at
/// most two colours and interior vertices none.
#[derive(Debug, Clone)]
pub struct ExtensionProblem {
    pub graph: PlaneNearTriangulation,
    pub phi: PhiAssignment,
    pub colors: ColorSystem,
    pub path: Vec<usize>,
}

impl ExtensionProblem {
    pub fn new(
        graph: PlaneNearTriangulation,
        phi: PhiAssignment,
        colors: ColorSystem,
        path: Vec<usize>,
    ) -> Result<Self, SolverError> {
        let p = ExtensionProblem { graph, phi, colors, path };
        p.validate()?;
        Ok(p)
    }

    /// Builds a problem from a document whose precoloured vertices form the
    /// path; their order along the outer cycle is recovered.
    pub fn from_precoloured(
        graph: PlaneNearTriangulation,
        phi: PhiAssignment,
        colors: ColorSystem,
    ) -> Result<Self, SolverError> {
        let pre = colors.precolored_vertices();
        let k = graph.outer_len();
        let outer = graph.outer_cycle().to_vec();
        let path = match pre.len() {
            2 | 3 => (0..k)
                .map(|i| (0..pre.len()).map(|t| outer[(i + t) % k]).collect::<Vec<_>>())
                .find(|run| {
                    let mut s = run.clone();
                    s.sort_unstable();
                    s == pre
                })
                .ok_or_else(|| {
                    SolverError::Input("precoloured vertices are not consecutive on the outer cycle".into())
                })?,
            l => return Err(SolverError::Input(format!("expected 2 or 3 precoloured vertices, found {l}"))),
        };
        ExtensionProblem::new(graph, phi, colors, path)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let g = &self.graph;
        if self.phi.modulus() != 5 || self.colors.modulus() != 5 {
            return Err(SolverError::Input("extension problems are over Z5".into()));
        }
        if self.colors.vertex_count() != g.vertex_count() {
            return Err(SolverError::Input("colour system and graph differ in size".into()));
        }
        self.phi.check_against(g)?;
        let k = g.outer_len();
        let l = self.path.len();
        if l != 2 && l != 3 {
            return Err(SolverError::Input(format!("path must have 2 or 3 vertices, got {l}")));
        }
        let mut positions = Vec::with_capacity(l);
        for &v in &self.path {
            positions.push(
                g.outer_position(v)
                    .ok_or_else(|| SolverError::Input(format!("path vertex {v} is not on the outer cycle")))?,
            );
        }
        let forward = positions.windows(2).all(|w| (w[0] + 1) % k == w[1]);
        let backward = positions.windows(2).all(|w| (w[1] + 1) % k == w[0]);
        if !(forward || backward) || (l == 3 && k < 3) {
            return Err(SolverError::Input("path vertices are not consecutive on the outer cycle".into()));
        }
        let mut pre = self.colors.precolored_vertices();
        pre.sort_unstable();
        let mut want = self.path.clone();
        want.sort_unstable();
        want.dedup();
        if want.len() != l || pre != want {
            return Err(SolverError::Input("exactly the path vertices must be precoloured".into()));
        }
        for w in self.path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let ca = self.colors.precolored(a).unwrap();
            if tau(&self.phi, a, ca, b)? == self.colors.precolored(b).unwrap() {
                return Err(SolverError::ImproperPrecoloring(format!("edge {a}-{b}")));
            }
        }
        if l == 3 && g.neighbors(self.path[0]).contains(&self.path[2]) {
            let (a, b) = (self.path[0], self.path[2]);
            if tau(&self.phi, a, self.colors.precolored(a).unwrap(), b)? == self.colors.precolored(b).unwrap() {
                return Err(SolverError::ImproperPrecoloring(format!("edge {a}-{b}")));
            }
        }
        for v in 0..g.vertex_count() {
            if self.path.contains(&v) {
                continue;
            }
            let f = self.colors.forbidden_count(v);
            if g.is_outer(v) && f > 2 {
                return Err(SolverError::InvalidCaps(format!("outer vertex {v} forbids {f} colours")));
            }
            if !g.is_outer(v) && f > 0 {
                return Err(SolverError::InvalidCaps(format!("interior vertex {v} forbids {f} colours")));
            }
        }
        Ok(())
    }

    /// `v1`, the shared end of a two-vertex path or the middle of three.
    pub fn major(&self) -> usize {
        if self.path.len() == 3 {
            self.path[1]
        } else {
            self.path[0]
        }
    }
}

/// Confirms a constructed colouring; a failure here is a defect.
pub(crate) fn check_result<G: Graph>(
    g: &G,
    phi: &PhiAssignment,
    cs: &ColorSystem,
    coloring: &Coloring,
) -> Result<(), SolverError> {
    if coloring.colors.len() != g.vertex_count() || !is_proper_by_tau(g, phi, coloring) || !respects(cs, coloring) {
        return Err(SolverError::Internal("constructed colouring is not proper".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests;
