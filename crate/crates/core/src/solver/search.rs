use rayon::prelude::*;

use super::SolverError;
use crate::group_color::{ColorMask, ColorSystem, Coloring, PhiAssignment};
use crate::plane_graph::Graph;

/// Below this many free vertices counting stays on the calling thread.
const PARALLEL_THRESHOLD: usize = 12;

/// A colouring problem compiled for backtracking: vertices in search order,
/// each with the bits its colours remove from later vertices' domains.
#[derive(Debug, Clone)]
pub struct Instance {
    n: usize,
    m: u8,
    order: Vec<usize>,
    domain: Vec<ColorMask>,
    /// `kill[pos][c]`: `(later position, bit)` removed when `order[pos]` gets `c`.
    kill: Vec<Vec<Vec<(usize, ColorMask)>>>,
}

impl Instance {
    pub fn new<G: Graph>(g: &G, phi: &PhiAssignment, cs: &ColorSystem) -> Result<Self, SolverError> {
        let n = g.vertex_count();
        let m = phi.modulus();
        if cs.modulus() != m {
            return Err(SolverError::Input(format!(
                "labelling is over Z_{m} but the colour system over Z_{}",
                cs.modulus()
            )));
        }
        if cs.vertex_count() != n {
            return Err(SolverError::Input(format!(
                "colour system has {} vertices, graph has {n}",
                cs.vertex_count()
            )));
        }
        phi.check_against(g)?;
        let order = search_order(g, cs);
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let domain: Vec<ColorMask> = order.iter().map(|&v| cs.available(v)).collect();
        let mut kill = Vec::with_capacity(n);
        for (i, &v) in order.iter().enumerate() {
            let later: Vec<(usize, u8)> = g
                .neighbors(v)
                .iter()
                .filter(|&&u| position[u] > i)
                .map(|&u| (position[u], phi.offset(v, u).expect("checked against graph")))
                .collect();
            let per_color = (0..m)
                .map(|c| {
                    later
                        .iter()
                        .map(|&(j, off)| (j, 1 << ((c + off) % m)))
                        .collect()
                })
                .collect();
            kill.push(per_color);
        }
        Ok(Instance { n, m, order, domain, kill })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Vertices in the order they are branched on.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn count(&self) -> u64 {
        self.count_up_to(u64::MAX)
    }

    /// Exact count, or `cap` as soon as at least `cap` colourings are seen.
    pub fn count_up_to(&self, cap: u64) -> u64 {
        if self.n == 0 {
            return 1.min(cap);
        }
        let free = self.domain.iter().filter(|d| d.count_ones() > 1).count();
        if free < PARALLEL_THRESHOLD || cap != u64::MAX {
            let mut levels = vec![self.domain.clone(); self.n + 1];
            return self.count_rec(0, &mut levels, cap);
        }
        // split on the first two positions; sums are exact so order is irrelevant
        let mut branches = Vec::new();
        for c0 in bits(self.domain[0]) {
            let mut d = self.domain.clone();
            if !self.assign(&mut d, 0, c0) {
                continue;
            }
            if self.n == 1 {
                branches.push((d, 1));
                continue;
            }
            for c1 in bits(d[1]) {
                let mut d1 = d.clone();
                if self.assign(&mut d1, 1, c1) {
                    branches.push((d1, 2));
                }
            }
        }
        branches
            .into_par_iter()
            .map(|(d, pos)| {
                if pos == self.n {
                    return 1;
                }
                let mut levels = vec![d; self.n + 1];
                self.count_rec(pos, &mut levels, u64::MAX)
            })
            .sum()
    }

    /// Fixes position `pos` to colour `c` in `d`; false if a domain empties.
    fn assign(&self, d: &mut [ColorMask], pos: usize, c: u8) -> bool {
        d[pos] = 1 << c;
        for &(j, bit) in &self.kill[pos][c as usize] {
            d[j] &= !bit;
            if d[j] == 0 {
                return false;
            }
        }
        true
    }

    fn count_rec(&self, pos: usize, levels: &mut [Vec<ColorMask>], cap: u64) -> u64 {
        if pos + 1 == self.n {
            return (levels[pos][pos].count_ones() as u64).min(cap);
        }
        let mut total = 0u64;
        for c in bits(levels[pos][pos]) {
            let (head, tail) = levels.split_at_mut(pos + 1);
            let child = &mut tail[0];
            child.copy_from_slice(&head[pos]);
            if self.assign(child, pos, c) {
                total += self.count_rec(pos + 1, levels, cap - total);
                if total >= cap {
                    return cap;
                }
            }
        }
        total
    }

    /// Calls `visit` with each colouring (indexed by vertex) in search order,
    /// colours ascending at each step, until it returns false.
    pub fn for_each(&self, mut visit: impl FnMut(&[u8]) -> bool) {
        if self.n == 0 {
            visit(&[]);
            return;
        }
        let mut levels = vec![self.domain.clone(); self.n + 1];
        let mut colors = vec![0u8; self.n];
        self.each_rec(0, &mut levels, &mut colors, &mut visit);
    }

    fn each_rec(
        &self,
        pos: usize,
        levels: &mut [Vec<ColorMask>],
        colors: &mut [u8],
        visit: &mut impl FnMut(&[u8]) -> bool,
    ) -> bool {
        for c in bits(levels[pos][pos]) {
            colors[self.order[pos]] = c;
            if pos + 1 == self.n {
                if !visit(colors) {
                    return false;
                }
                continue;
            }
            let (head, tail) = levels.split_at_mut(pos + 1);
            let child = &mut tail[0];
            child.copy_from_slice(&head[pos]);
            if self.assign(child, pos, c) && !self.each_rec(pos + 1, levels, colors, visit) {
                return false;
            }
        }
        true
    }

    pub fn find(&self) -> Option<Coloring> {
        let mut found = None;
        self.for_each(|c| {
            found = Some(Coloring::new(c.to_vec()));
            false
        });
        found
    }

    pub fn modulus(&self) -> u8 {
        self.m
    }
}

pub(crate) fn bits(mask: ColorMask) -> impl Iterator<Item = u8> {
    (0..32u8).filter(move |&c| mask & (1 << c) != 0)
}

/// Precoloured vertices, then the graph's hint (the outer cycle of a
/// near-triangulation) in order, then the rest: always a vertex with the
/// most already-ordered neighbours, ties broken by degree, then label.
fn search_order<G: Graph>(g: &G, cs: &ColorSystem) -> Vec<usize> {
    let n = g.vertex_count();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let place = |v: usize, order: &mut Vec<usize>, placed: &mut Vec<bool>| {
        if !placed[v] {
            placed[v] = true;
            order.push(v);
        }
    };
    for v in cs.precolored_vertices() {
        place(v, &mut order, &mut placed);
    }
    for &v in g.search_hint() {
        place(v, &mut order, &mut placed);
    }
    let mut links = vec![0usize; n];
    for &v in &order {
        for &u in g.neighbors(v) {
            links[u] += 1;
        }
    }
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        place(v, &mut order, &mut placed);
        for &u in g.neighbors(v) {
            links[u] += 1;
        }
    }
    order
}

pub fn count_colorings<G: Graph>(g: &G, phi: &PhiAssignment, cs: &ColorSystem) -> Result<u64, SolverError> {
    Ok(Instance::new(g, phi, cs)?.count())
}

/// All colourings (up to `limit`) in the deterministic search order.
pub fn enumerate_colorings<G: Graph>(
    g: &G,
    phi: &PhiAssignment,
    cs: &ColorSystem,
    limit: Option<usize>,
) -> Result<Vec<Coloring>, SolverError> {
    let inst = Instance::new(g, phi, cs)?;
    let mut out = Vec::new();
    if limit == Some(0) {
        return Ok(out);
    }
    inst.for_each(|c| {
        out.push(Coloring::new(c.to_vec()));
        limit.is_none_or(|l| out.len() < l)
    });
    Ok(out)
}

pub fn find_coloring<G: Graph>(
    g: &G,
    phi: &PhiAssignment,
    cs: &ColorSystem,
) -> Result<Option<Coloring>, SolverError> {
    Ok(Instance::new(g, phi, cs)?.find())
}
