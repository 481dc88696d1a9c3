use std::collections::{BTreeSet, HashMap, HashSet};

use super::search::Instance;
use super::{ExtensionProblem, SolverError};
use crate::families::{recognize_generalized_multi_wheel, FamilyDescriptor, PrincipalPath};
use crate::gcg::{self, GcgDocument};
use crate::group_color::{ColorSystem, Coloring, PhiAssignment};
use crate::plane_graph::{Graph, PlaneNearTriangulation, Region};

/// Candidate subgraphs examined before certificate search gives up.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

#[derive(Debug, Clone)]
pub enum ThreeOutcome {
    Colored(Coloring),
    Obstruction(ObstructionCertificate),
}

/// A generalized multi-wheel inside the host whose principal path is the
/// precoloured path and whose other outer vertices forbid exactly two
/// colours, with no colouring of its own.
#[derive(Debug, Clone)]
pub struct ObstructionCertificate {
    /// Host label of each certificate vertex.
    pub host_vertices: Vec<usize>,
    pub graph: PlaneNearTriangulation,
    pub descriptor: FamilyDescriptor,
    pub phi: PhiAssignment,
    pub colors: ColorSystem,
    pub path: PrincipalPath,
}

impl ObstructionCertificate {
    /// Re-checks every defining property from scratch.
    pub fn validate(&self) -> Result<(), SolverError> {
        let g = &self.graph;
        if !g.validate().is_valid() {
            return Err(SolverError::Input("certificate graph is not a near-triangulation".into()));
        }
        if recognize_generalized_multi_wheel(g, self.path).is_none() {
            return Err(SolverError::Input("certificate is not a generalized multi-wheel".into()));
        }
        let path = self.path.as_array();
        for v in 0..g.vertex_count() {
            let on_path = path.contains(&v);
            if on_path != self.colors.precolored(v).is_some() {
                return Err(SolverError::Input(format!("precolouring of certificate vertex {v} is wrong")));
            }
            let f = self.colors.forbidden_count(v);
            if !on_path && g.is_outer(v) && f != 2 {
                return Err(SolverError::Input(format!("outer certificate vertex {v} forbids {f} colours")));
            }
            if !g.is_outer(v) && f != 0 {
                return Err(SolverError::Input(format!("interior certificate vertex {v} forbids colours")));
            }
        }
        if Instance::new(g, &self.phi, &self.colors)?.count_up_to(1) != 0 {
            return Err(SolverError::Input("certificate instance has a colouring".into()));
        }
        Ok(())
    }

    pub fn to_document(&self) -> GcgDocument {
        GcgDocument {
            graph: self.graph.clone(),
            phi: self.phi.clone(),
            colors: self.colors.clone(),
            descriptor: Some(self.descriptor.to_string()),
            origin: Some(self.host_vertices.clone()),
        }
    }

    pub fn to_gcg(&self) -> String {
        gcg::write(&self.to_document())
    }
}

/// Extends a precoloured path `vk v1 v2`, or certifies that no extension
/// exists by exhibiting an obstruction.
pub fn extend_three(p: &ExtensionProblem, budget: usize) -> Result<ThreeOutcome, SolverError> {
    p.validate()?;
    if p.path.len() != 3 {
        return Err(SolverError::Input("extend_three needs a three-vertex path".into()));
    }
    let inst = Instance::new(&p.graph, &p.phi, &p.colors)?;
    if let Some(c) = inst.find() {
        return Ok(ThreeOutcome::Colored(c));
    }
    let mut search = CertificateSearch { p, budget, spent: 0 };
    match search.run()? {
        Some(cert) => {
            cert.validate()
                .map_err(|e| SolverError::Internal(format!("certificate failed validation: {e}")))?;
            Ok(ThreeOutcome::Obstruction(cert))
        }
        None => Err(SolverError::Internal(
            "no colouring exists but no obstruction certificate was found".into(),
        )),
    }
}

struct CertificateSearch<'a> {
    p: &'a ExtensionProblem,
    budget: usize,
    spent: usize,
}

impl CertificateSearch<'_> {
    fn run(&mut self) -> Result<Option<ObstructionCertificate>, SolverError> {
        let g = &self.p.graph;
        let (vk, v1, v2) = (self.p.path[0], self.p.path[1], self.p.path[2]);
        // outer vertices from v2 round to vk, away from v1
        let k = g.outer_len();
        let outer = g.outer_cycle();
        let i2 = g.outer_position(v2).unwrap();
        let step = if outer[(i2 + k - 1) % k] == v1 { 1 } else { k - 1 };
        let between: Vec<usize> = (1..k - 2).map(|t| outer[(i2 + t * step) % k]).collect();
        let candidates: Vec<usize> =
            between.iter().copied().filter(|&v| self.p.colors.forbidden_count(v) == 2).collect();
        if candidates.len() > 24 {
            return Err(SolverError::BudgetExceeded(self.budget));
        }
        let host = Region::from_graph(g);
        // smaller outer cycles first
        let mut subsets: Vec<Vec<usize>> = (1u64..1 << candidates.len())
            .map(|bits| (0..candidates.len()).filter(|&i| bits & (1 << i) != 0).map(|i| candidates[i]).collect())
            .collect();
        subsets.sort_by_key(|s: &Vec<usize>| (s.len(), s.clone()));
        for s in subsets {
            let mut cycle = vec![v1, v2];
            cycle.extend(&s);
            cycle.push(vk);
            let l = cycle.len();
            self.spent += 1;
            if self.spent > self.budget {
                return Err(SolverError::BudgetExceeded(self.budget));
            }
            if !(0..l).all(|i| g.neighbors(cycle[i]).contains(&cycle[(i + 1) % l])) {
                continue;
            }
            let Some(disc) = host.inside_of(&cycle) else { continue };
            if let Some(cert) = self.try_disc(&disc, &cycle)? {
                return Ok(Some(cert));
            }
        }
        Ok(None)
    }

    /// Tries the disc itself and every way of emptying separating triangles.
    fn try_disc(&mut self, disc: &Region, cycle: &[usize]) -> Result<Option<ObstructionCertificate>, SolverError> {
        let triangles = separating_triangles(disc, cycle);
        let mut chosen = Vec::new();
        self.antichains(disc, &triangles, 0, &mut chosen)
    }

    fn antichains(
        &mut self,
        disc: &Region,
        triangles: &[(Vec<usize>, Region)],
        from: usize,
        chosen: &mut Vec<usize>,
    ) -> Result<Option<ObstructionCertificate>, SolverError> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(SolverError::BudgetExceeded(self.budget));
        }
        if let Some(cert) = self.check_candidate(disc, triangles, chosen)? {
            return Ok(Some(cert));
        }
        for t in from..triangles.len() {
            let nested = chosen.iter().any(|&c| {
                let (a, b) = (&triangles[c], &triangles[t]);
                contains(&a.1, &b.0) || contains(&b.1, &a.0)
            });
            if nested {
                continue;
            }
            chosen.push(t);
            let found = self.antichains(disc, triangles, t + 1, chosen)?;
            chosen.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    fn check_candidate(
        &self,
        disc: &Region,
        triangles: &[(Vec<usize>, Region)],
        chosen: &[usize],
    ) -> Result<Option<ObstructionCertificate>, SolverError> {
        let removed: HashSet<[usize; 3]> =
            chosen.iter().flat_map(|&t| triangles[t].1.faces().iter().copied()).collect();
        let mut faces: Vec<[usize; 3]> = disc.faces().iter().filter(|f| !removed.contains(*f)).copied().collect();
        for &t in chosen {
            faces.push(face_of(&triangles[t].1, &triangles[t].0));
        }
        let (vk, v1, v2) = (self.p.path[0], self.p.path[1], self.p.path[2]);
        let (sub, to_host) = Region::from_faces(faces).to_near_triangulation(Some(v1))?;
        let to_new: HashMap<usize, usize> = to_host.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let path = PrincipalPath { vk: to_new[&vk], v1: to_new[&v1], v2: to_new[&v2] };
        let Some(descriptor) = recognize_generalized_multi_wheel(&sub, path) else {
            return Ok(None);
        };
        let phi = self.p.phi.restricted(&to_new);
        let mut colors = ColorSystem::new(sub.vertex_count(), 5)?;
        for (new, &old) in to_host.iter().enumerate() {
            if let Some(c) = self.p.colors.precolored(old) {
                colors.precolor(new, c)?;
            } else if sub.is_outer(new) {
                colors.set_forbidden_mask(new, self.p.colors.forbidden(old))?;
            }
        }
        if Instance::new(&sub, &phi, &colors)?.count_up_to(1) != 0 {
            return Ok(None);
        }
        Ok(Some(ObstructionCertificate { host_vertices: to_host, graph: sub, descriptor, phi, colors, path }))
    }
}

/// Whether every vertex of `tri` lies in `region`.
fn contains(region: &Region, tri: &[usize]) -> bool {
    let vs = region.vertices();
    tri.iter().all(|v| vs.contains(v))
}

/// The triangle as a counter-clockwise face, oriented like the region it bounds.
fn face_of(inside: &Region, tri: &[usize]) -> [usize; 3] {
    let b = inside.boundary_from(Some(tri[0])).expect("triangle interior is a disc");
    // the boundary runs clockwise; a ccw face lists it backwards
    [b[0], b[2], b[1]]
}

/// Triangles of the disc other than its boundary with vertices strictly
/// inside, each with the region it bounds.
fn separating_triangles(disc: &Region, cycle: &[usize]) -> Vec<(Vec<usize>, Region)> {
    let mut out = Vec::new();
    let vertices: Vec<usize> = disc.vertices().into_iter().collect();
    let boundary: BTreeSet<usize> = cycle.iter().copied().collect();
    for (i, &a) in vertices.iter().enumerate() {
        let na = disc.neighbors_in(a);
        for &b in vertices[i + 1..].iter().filter(|b| na.contains(b)) {
            let nb = disc.neighbors_in(b);
            for &c in na.intersection(&nb).filter(|&&c| c > b) {
                let tri = vec![a, b, c];
                if cycle.len() == 3 && tri.iter().all(|v| boundary.contains(v)) {
                    continue;
                }
                if let Some(inside) = disc.inside_of(&tri) {
                    if inside.faces().len() > 1 {
                        out.push((tri, inside));
                    }
                }
            }
        }
    }
    out
}
