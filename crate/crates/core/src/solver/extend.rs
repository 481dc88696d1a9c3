use std::collections::{BTreeSet, HashSet};

use super::{ExtensionProblem, SolverError};
use crate::group_color::{full_mask, tau, ColorMask, Coloring, PhiAssignment};
use crate::plane_graph::{edge_key, Edge, Graph, PlaneNearTriangulation, Region};

/// Working state shared by the constructive colourers: partial colours and
/// current lists, both indexed by host vertex.
pub(crate) struct Painter<'a> {
    pub phi: &'a PhiAssignment,
    pub colors: Vec<Option<u8>>,
    pub lists: Vec<ColorMask>,
}

impl<'a> Painter<'a> {
    pub fn color(&self, v: usize) -> u8 {
        self.colors[v].expect("vertex already coloured")
    }

    /// `tau_v(c(v), u)` for a coloured `v`.
    pub fn forbids(&self, v: usize, u: usize) -> u8 {
        tau(self.phi, v, self.color(v), u).expect("region edges are graph edges")
    }

    fn smallest(mask: ColorMask) -> Option<u8> {
        (mask != 0).then(|| mask.trailing_zeros() as u8)
    }

    /// Colours `v` with the smallest colour in its list that avoids every
    /// coloured neighbour in `nbrs`.
    pub fn greedy(&mut self, v: usize, nbrs: impl IntoIterator<Item = usize>) -> Result<(), SolverError> {
        let mut mask = self.lists[v];
        for u in nbrs {
            if self.colors[u].is_some() {
                mask &= !(1 << self.forbids(u, v));
            }
        }
        let c = Painter::smallest(mask)
            .ok_or_else(|| SolverError::Internal(format!("vertex {v} has no colour left")))?;
        self.colors[v] = Some(c);
        Ok(())
    }

    /// The two-precoloured-vertex extension on a disc: `a`, `b` are coloured,
    /// consecutive on the region boundary; other boundary vertices have at
    /// least three colours and interior vertices five.
    pub fn extend_disc(&mut self, region: &Region, a: usize, b: usize) -> Result<(), SolverError> {
        let boundary = region.boundary_from(Some(a))?;
        let k = boundary.len();
        let seq: Vec<usize> = if boundary[1] == b {
            boundary
        } else if boundary[k - 1] == b {
            std::iter::once(a).chain(boundary[1..].iter().rev().copied()).collect()
        } else {
            return Err(SolverError::Internal(format!("{a} and {b} are not consecutive on the boundary")));
        };
        if region.faces().len() == 1 {
            let w = seq[2];
            return self.greedy(w, [a, b]);
        }
        if let Some(&(x, y)) = region.chords().first() {
            let cut: HashSet<Edge> = [(x, y)].into_iter().collect();
            let pieces = region.split_by_edges(&cut);
            let ab = edge_key(a, b);
            let (first, second): (Vec<&Region>, Vec<&Region>) =
                pieces.iter().partition(|p| p.edges().contains(&ab));
            if first.len() != 1 || second.len() != 1 {
                return Err(SolverError::Internal("chord does not split the disc in two".into()));
            }
            self.extend_disc(first[0], a, b)?;
            return self.extend_disc(second[0], x, y);
        }
        // no chord: peel the boundary neighbour of `a` other than `b`
        let vk = seq[k - 1];
        let prev = seq[k - 2];
        let fan = region.fan(vk, a, prev);
        let inner = &fan[1..fan.len() - 1];
        let options = self.lists[vk] & !(1 << self.forbids(a, vk));
        let mut picks = (0..5u8).filter(|&c| options & (1 << c) != 0);
        let (alpha, beta) = match (picks.next(), picks.next()) {
            (Some(x), Some(y)) => (x, y),
            _ => {
                return Err(SolverError::Internal(format!(
                    "boundary vertex {vk} has fewer than two usable colours"
                )))
            }
        };
        for &u in inner {
            let ta = tau(self.phi, vk, alpha, u)?;
            let tb = tau(self.phi, vk, beta, u)?;
            self.lists[u] &= !((1 << ta) | (1 << tb));
        }
        self.extend_disc(&region.without_vertex(vk), a, b)?;
        let blocked = self.forbids(prev, vk);
        self.colors[vk] = Some(if alpha != blocked { alpha } else { beta });
        Ok(())
    }
}

/// Constructive extension of a two-vertex precoloured outer path.
pub fn extend_two(p: &ExtensionProblem) -> Result<Coloring, SolverError> {
    if p.path.len() != 2 {
        return Err(SolverError::Input("extend_two needs a two-vertex path".into()));
    }
    let g = &p.graph;
    let n = g.vertex_count();
    let mut painter = Painter {
        phi: &p.phi,
        colors: (0..n).map(|v| p.colors.precolored(v)).collect(),
        lists: (0..n).map(|v| p.colors.available(v)).collect(),
    };
    painter.extend_disc(&Region::from_graph(g), p.path[0], p.path[1])?;
    let coloring = Coloring::new(painter.colors.iter().map(|c| c.expect("all vertices coloured")).collect());
    super::check_result(g, &p.phi, &p.colors, &coloring)?;
    Ok(coloring)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShortCycleOutcome {
    Colored(Coloring),
    /// An interior vertex joined to all five outer vertices, whose five
    /// forbidden colours cover Z5.
    HubException(usize),
}

/// Extends a precolouring of the whole outer cycle (length at most 5).
/// `outer_colors[i]` is the colour of `g.outer_cycle()[i]`.
pub fn color_short_cycle(
    g: &PlaneNearTriangulation,
    phi: &PhiAssignment,
    outer_colors: &[u8],
) -> Result<ShortCycleOutcome, SolverError> {
    let outer = g.outer_cycle();
    if outer.len() > 5 {
        return Err(SolverError::Input(format!("outer cycle has length {} > 5", outer.len())));
    }
    if outer_colors.len() != outer.len() {
        return Err(SolverError::Input("one colour per outer vertex expected".into()));
    }
    if phi.modulus() != 5 {
        return Err(SolverError::Input("the short-cycle colourer works over Z5".into()));
    }
    phi.check_against(g)?;
    let n = g.vertex_count();
    let mut painter = Painter { phi, colors: vec![None; n], lists: vec![full_mask(5); n] };
    for (&v, &c) in outer.iter().zip(outer_colors) {
        if c >= 5 {
            return Err(SolverError::Input(format!("colour {c} out of range")));
        }
        painter.colors[v] = Some(c);
    }
    for &v in outer {
        for &u in g.neighbors(v) {
            if painter.colors[u].is_some() && painter.forbids(v, u) == painter.color(u) {
                return Err(SolverError::Input(format!("precolouring is improper on edge {v}-{u}")));
            }
        }
    }
    match short_cycle(&mut painter, &Region::from_graph(g))? {
        Some(hub) => Ok(ShortCycleOutcome::HubException(hub)),
        None => {
            let coloring = Coloring::new(painter.colors.iter().map(|c| c.unwrap()).collect());
            let cs = crate::group_color::ColorSystem::new(n, 5)?;
            super::check_result(g, phi, &cs, &coloring)?;
            Ok(ShortCycleOutcome::Colored(coloring))
        }
    }
}

/// Colours the interior of a disc whose boundary (length <= 5) is coloured.
/// Returns the hub if the exceptional configuration blocks it; on `Some`
/// the painter's interior colours are unspecified.
fn short_cycle(painter: &mut Painter, region: &Region) -> Result<Option<usize>, SolverError> {
    let boundary = region.boundary();
    let on: BTreeSet<usize> = boundary.iter().copied().collect();
    let interior = region.interior_vertices();
    if interior.is_empty() {
        return Ok(None);
    }
    let outer_nbrs = |v: usize| -> Vec<usize> {
        region.neighbors_in(v).into_iter().filter(|u| on.contains(u)).collect()
    };
    if boundary.len() == 5 {
        for &v in &interior {
            let nb = outer_nbrs(v);
            if nb.len() == 5 {
                let taus: ColorMask = nb.iter().fold(0, |acc, &c| acc | 1 << painter.forbids(c, v));
                if taus == full_mask(5) {
                    return Ok(Some(v));
                }
            }
        }
    }
    if let Some(&u) = interior.iter().find(|&&v| outer_nbrs(v).len() >= 3) {
        let nb = outer_nbrs(u);
        let taken: ColorMask = nb.iter().fold(0, |acc, &c| acc | 1 << painter.forbids(c, u));
        let spokes: HashSet<Edge> = nb.iter().map(|&c| edge_key(u, c)).collect();
        let pieces = region.split_by_edges(&spokes);
        let saved = painter.colors.clone();
        for alpha in (0..5u8).filter(|&c| taken & (1 << c) == 0) {
            painter.colors = saved.clone();
            painter.colors[u] = Some(alpha);
            let mut blocked = false;
            for piece in &pieces {
                if short_cycle(painter, piece)?.is_some() {
                    blocked = true;
                    break;
                }
            }
            if !blocked {
                return Ok(None);
            }
        }
        return Err(SolverError::Internal(format!(
            "vertex {u} with three outer neighbours admits no colouring of its pieces"
        )));
    }
    color_inner_blocks(painter, region, &on, &interior)?;
    Ok(None)
}

/// Colours the graph induced by the interior, block by block, with lists
/// reduced by the coloured boundary.
fn color_inner_blocks(
    painter: &mut Painter,
    region: &Region,
    on: &BTreeSet<usize>,
    interior: &BTreeSet<usize>,
) -> Result<(), SolverError> {
    for &v in interior {
        let mut mask = full_mask(5);
        for u in region.neighbors_in(v) {
            if on.contains(&u) {
                mask &= !(1 << painter.forbids(u, v));
            }
        }
        painter.lists[v] = mask;
    }
    let inner_faces: Vec<[usize; 3]> = region
        .faces()
        .iter()
        .filter(|f| f.iter().all(|x| !on.contains(x)))
        .copied()
        .collect();
    let discs = Region::from_faces(inner_faces).split_by_edges(&HashSet::new());
    let in_disc: HashSet<Edge> = discs.iter().flat_map(|d| d.edges()).collect();
    let mut blocks: Vec<Block> = discs.into_iter().map(Block::Disc).collect();
    let mut covered: HashSet<usize> = blocks.iter().flat_map(|b| b.vertices()).collect();
    for (x, y) in region.edges() {
        if interior.contains(&x) && interior.contains(&y) && !in_disc.contains(&(x, y)) {
            blocks.push(Block::Bridge(x, y));
            covered.insert(x);
            covered.insert(y);
        }
    }
    for &v in interior {
        if !covered.contains(&v) {
            blocks.push(Block::Single(v));
        }
    }
    let mut done = vec![false; blocks.len()];
    loop {
        // a block touching a coloured vertex, else any block (a new component)
        let next = (0..blocks.len())
            .filter(|&i| !done[i])
            .find(|&i| blocks[i].vertices().iter().any(|&v| painter.colors[v].is_some()))
            .or_else(|| (0..blocks.len()).find(|&i| !done[i]));
        let Some(i) = next else { break };
        done[i] = true;
        let colored: Vec<usize> =
            blocks[i].vertices().into_iter().filter(|&v| painter.colors[v].is_some()).collect();
        if colored.len() > 1 {
            return Err(SolverError::Internal("inner block meets two coloured vertices".into()));
        }
        match &blocks[i] {
            Block::Single(v) => painter.greedy(*v, [])?,
            Block::Bridge(x, y) => {
                let (x, y) = if painter.colors[*y].is_some() { (*y, *x) } else { (*x, *y) };
                if painter.colors[x].is_none() {
                    painter.greedy(x, [])?;
                }
                painter.greedy(y, [x])?;
            }
            Block::Disc(d) => {
                let boundary = d.boundary();
                let x = colored.first().copied().unwrap_or(boundary[0]);
                if painter.colors[x].is_none() {
                    painter.greedy(x, [])?;
                }
                let pos = boundary.iter().position(|&v| v == x).ok_or_else(|| {
                    SolverError::Internal(format!("cut vertex {x} is not on its block boundary"))
                })?;
                let y = boundary[(pos + 1) % boundary.len()];
                painter.greedy(y, [x])?;
                painter.extend_disc(d, x, y)?;
            }
        }
    }
    Ok(())
}

enum Block {
    Disc(Region),
    Bridge(usize, usize),
    Single(usize),
}

impl Block {
    fn vertices(&self) -> Vec<usize> {
        match self {
            Block::Disc(d) => d.vertices().into_iter().collect(),
            Block::Bridge(x, y) => vec![*x, *y],
            Block::Single(v) => vec![*v],
        }
    }
}
