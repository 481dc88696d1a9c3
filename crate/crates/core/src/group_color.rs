//! Z_m colours, edge labellings and the tau calculus.
//!
//! A labelling stores one record `(tail, head, value)` per edge. Colouring
//! constraints never look at the stored direction directly: everything goes
//! through [`PhiAssignment::offset`], where `offset(v, u)` is the shift that
//! maps a colour of `v` to the single colour it forbids at `u`. That is
//! `tau_v(alpha, u) = alpha + offset(v, u)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use rand::Rng;
use thiserror::Error;

use crate::plane_graph::{edge_key, Edge, Graph};

pub const DEFAULT_MODULUS: u8 = 5;
/// Colour sets are `u32` bitmasks.
pub const MAX_MODULUS: u8 = 31;

pub type ColorMask = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColorError {
    #[error("modulus {0} out of range 2..={MAX_MODULUS}")]
    BadModulus(u8),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("edge {0}-{1} labelled twice")]
    DuplicateEdge(usize, usize),
    #[error("value {value} not below modulus {modulus}")]
    ValueOutOfRange { value: u8, modulus: u8 },
    #[error("labelling does not match the graph: {0}")]
    Mismatch(String),
    #[error("{0}, {1}, {2} do not form a triangle")]
    NotATriangle(usize, usize, usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
}

pub fn check_modulus(m: u8) -> Result<(), ColorError> {
    if (2..=MAX_MODULUS).contains(&m) {
        Ok(())
    } else {
        Err(ColorError::BadModulus(m))
    }
}

/// An element of Z_m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupElement {
    value: u8,
    modulus: u8,
}

impl GroupElement {
    pub fn new(value: i64, modulus: u8) -> Self {
        let m = modulus as i64;
        GroupElement {
            value: value.rem_euclid(m) as u8,
            modulus,
        }
    }

    pub fn value(self) -> u8 {
        self.value
    }

    pub fn modulus(self) -> u8 {
        self.modulus
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        GroupElement::new(self.value as i64 + rhs.value as i64, self.modulus)
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        GroupElement::new(self.value as i64 - rhs.value as i64, self.modulus)
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> Self {
        GroupElement::new(-(self.value as i64), self.modulus)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

#[inline]
pub fn add_mod(a: u8, b: u8, m: u8) -> u8 {
    ((a as u16 + b as u16) % m as u16) as u8
}

#[inline]
pub fn sub_mod(a: u8, b: u8, m: u8) -> u8 {
    ((a as u16 + m as u16 - (b % m) as u16) % m as u16) as u8
}

#[inline]
pub fn full_mask(m: u8) -> ColorMask {
    ((1u64 << m) - 1) as ColorMask
}

pub fn mask_of(colors: &[u8]) -> ColorMask {
    colors.iter().fold(0, |acc, &c| acc | (1 << c))
}

pub fn colors_of(mask: ColorMask) -> Vec<u8> {
    (0..32).filter(|&c| mask & (1 << c) != 0).collect()
}

/// One labelled edge, directed `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRecord {
    pub tail: usize,
    pub head: usize,
    pub value: u8,
}

/// Edge labelling `phi: E -> Z_m` with a fixed stored orientation per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiAssignment {
    modulus: u8,
    records: Vec<EdgeRecord>,
    index: HashMap<Edge, usize>,
}

impl PhiAssignment {
    pub fn new(modulus: u8) -> Result<Self, ColorError> {
        check_modulus(modulus)?;
        Ok(PhiAssignment {
            modulus,
            records: Vec::new(),
            index: HashMap::new(),
        })
    }

    pub fn from_records(modulus: u8, records: &[EdgeRecord]) -> Result<Self, ColorError> {
        let mut phi = PhiAssignment::new(modulus)?;
        for r in records {
            phi.insert(r.tail, r.head, r.value)?;
        }
        Ok(phi)
    }

    /// All-zero labelling, edges stored from smaller to larger index.
    pub fn zero<G: Graph>(g: &G, modulus: u8) -> Result<Self, ColorError> {
        let mut phi = PhiAssignment::new(modulus)?;
        for (u, v) in g.edges() {
            phi.insert(u, v, 0)?;
        }
        Ok(phi)
    }

    /// Independent uniform values, edges stored from smaller to larger index.
    pub fn uniform<G: Graph, R: Rng>(g: &G, modulus: u8, rng: &mut R) -> Result<Self, ColorError> {
        let mut phi = PhiAssignment::new(modulus)?;
        for (u, v) in g.edges() {
            phi.insert(u, v, rng.gen_range(0..modulus))?;
        }
        Ok(phi)
    }

    pub fn insert(&mut self, tail: usize, head: usize, value: u8) -> Result<(), ColorError> {
        if value >= self.modulus {
            return Err(ColorError::ValueOutOfRange { value, modulus: self.modulus });
        }
        if tail == head {
            return Err(ColorError::NotAnEdge(tail, head));
        }
        let key = edge_key(tail, head);
        if self.index.contains_key(&key) {
            return Err(ColorError::DuplicateEdge(key.0, key.1));
        }
        self.index.insert(key, self.records.len());
        self.records.push(EdgeRecord { tail, head, value });
        Ok(())
    }

    pub fn remove(&mut self, u: usize, v: usize) -> Option<EdgeRecord> {
        let i = self.index.remove(&edge_key(u, v))?;
        let rec = self.records.swap_remove(i);
        if i < self.records.len() {
            let moved = self.records[i];
            self.index.insert(edge_key(moved.tail, moved.head), i);
        }
        Some(rec)
    }

    /// Sets the value of `uv` read in the direction `u -> v`.
    pub fn set_directed(&mut self, u: usize, v: usize, value: u8) -> Result<(), ColorError> {
        let m = self.modulus;
        let i = *self.index.get(&edge_key(u, v)).ok_or(ColorError::NotAnEdge(u, v))?;
        let rec = &mut self.records[i];
        rec.value = if rec.tail == u { value % m } else { sub_mod(0, value, m) };
        Ok(())
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn records(&self) -> &[EdgeRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn record(&self, u: usize, v: usize) -> Option<&EdgeRecord> {
        self.index.get(&edge_key(u, v)).map(|&i| &self.records[i])
    }

    /// `phi(uv)` read in the direction `u -> v` (so `directed(v,u) = -directed(u,v)`).
    pub fn directed(&self, u: usize, v: usize) -> Option<u8> {
        self.record(u, v).map(|r| {
            if r.tail == u {
                r.value
            } else {
                sub_mod(0, r.value, self.modulus)
            }
        })
    }

    /// Shift with `tau_v(alpha, u) = alpha + offset(v, u)`.
    #[inline]
    pub fn offset(&self, v: usize, u: usize) -> Option<u8> {
        self.directed(v, u)
    }

    /// Checks that the labelled edges are exactly the edges of `g`.
    pub fn check_against<G: Graph>(&self, g: &G) -> Result<(), ColorError> {
        let edges = g.edges();
        if edges.len() != self.records.len() {
            return Err(ColorError::Mismatch(format!(
                "graph has {} edges, labelling has {}",
                edges.len(),
                self.records.len()
            )));
        }
        for (u, v) in edges {
            if !self.index.contains_key(&(u, v)) {
                return Err(ColorError::Mismatch(format!("edge {u}-{v} has no label")));
            }
        }
        Ok(())
    }

    /// Same labelling with every stored record reversed and negated.
    pub fn flipped(&self) -> PhiAssignment {
        let m = self.modulus;
        let records: Vec<EdgeRecord> = self
            .records
            .iter()
            .map(|r| EdgeRecord { tail: r.head, head: r.tail, value: sub_mod(0, r.value, m) })
            .collect();
        PhiAssignment::from_records(m, &records).expect("flip keeps records valid")
    }

    /// Labelling restricted to edges among `keep`, relabelled through
    /// `to_new` (host label -> new label).
    pub fn restricted(&self, to_new: &HashMap<usize, usize>) -> PhiAssignment {
        let mut out = PhiAssignment::new(self.modulus).expect("modulus already checked");
        for r in &self.records {
            if let (Some(&a), Some(&b)) = (to_new.get(&r.tail), to_new.get(&r.head)) {
                out.insert(a, b, r.value).expect("restriction keeps records distinct");
            }
        }
        out
    }
}

/// `tau_v(alpha, u)`: the colour `alpha` at `v` forbids at `u`.
pub fn tau(phi: &PhiAssignment, v: usize, alpha: u8, u: usize) -> Result<u8, ColorError> {
    let off = phi.offset(v, u).ok_or(ColorError::NotAnEdge(v, u))?;
    Ok(add_mod(alpha % phi.modulus, off, phi.modulus))
}

/// `tau_v(S, u)` on a colour mask.
pub fn tau_set(phi: &PhiAssignment, v: usize, set: ColorMask, u: usize) -> Result<ColorMask, ColorError> {
    let off = phi.offset(v, u).ok_or(ColorError::NotAnEdge(v, u))?;
    Ok(rotate_mask(set, off, phi.modulus))
}

/// `{s + shift : s in set}` in Z_m.
#[inline]
pub fn rotate_mask(set: ColorMask, shift: u8, m: u8) -> ColorMask {
    let full = full_mask(m);
    let set = set & full;
    let s = shift % m;
    if s == 0 {
        return set;
    }
    ((set << s) | (set >> (m - s))) & full
}

/// Per-vertex forbidden sets plus a partial precolouring. A precoloured
/// vertex has its forbidden set cleared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorSystem {
    modulus: u8,
    forbidden: Vec<ColorMask>,
    precolor: Vec<Option<u8>>,
}

impl ColorSystem {
    pub fn new(vertex_count: usize, modulus: u8) -> Result<Self, ColorError> {
        check_modulus(modulus)?;
        Ok(ColorSystem {
            modulus,
            forbidden: vec![0; vertex_count],
            precolor: vec![None; vertex_count],
        })
    }

    pub fn modulus(&self) -> u8 {
        self.modulus
    }

    pub fn vertex_count(&self) -> usize {
        self.forbidden.len()
    }

    pub fn forbid(&mut self, v: usize, colors: &[u8]) -> Result<(), ColorError> {
        self.check_vertex(v)?;
        for &c in colors {
            if c >= self.modulus {
                return Err(ColorError::ValueOutOfRange { value: c, modulus: self.modulus });
            }
        }
        if self.precolor[v].is_none() {
            self.forbidden[v] |= mask_of(colors);
        }
        Ok(())
    }

    pub fn set_forbidden_mask(&mut self, v: usize, mask: ColorMask) -> Result<(), ColorError> {
        self.check_vertex(v)?;
        if self.precolor[v].is_none() {
            self.forbidden[v] = mask & full_mask(self.modulus);
        }
        Ok(())
    }

    pub fn precolor(&mut self, v: usize, c: u8) -> Result<(), ColorError> {
        self.check_vertex(v)?;
        if c >= self.modulus {
            return Err(ColorError::ValueOutOfRange { value: c, modulus: self.modulus });
        }
        self.precolor[v] = Some(c);
        self.forbidden[v] = 0;
        Ok(())
    }

    pub fn clear_precolor(&mut self, v: usize) {
        self.precolor[v] = None;
    }

    pub fn forbidden(&self, v: usize) -> ColorMask {
        self.forbidden[v]
    }

    pub fn forbidden_count(&self, v: usize) -> u32 {
        self.forbidden[v].count_ones()
    }

    /// `L_v = Z_m \ F_v`, or the singleton of the precolour.
    pub fn available(&self, v: usize) -> ColorMask {
        match self.precolor[v] {
            Some(c) => 1 << c,
            None => full_mask(self.modulus) & !self.forbidden[v],
        }
    }

    pub fn precolored(&self, v: usize) -> Option<u8> {
        self.precolor[v]
    }

    pub fn precolored_vertices(&self) -> Vec<usize> {
        (0..self.precolor.len()).filter(|&v| self.precolor[v].is_some()).collect()
    }

    fn check_vertex(&self, v: usize) -> Result<(), ColorError> {
        if v < self.forbidden.len() {
            Ok(())
        } else {
            Err(ColorError::VertexOutOfRange(v))
        }
    }

    /// Moves `F_v0` and the precolour of `v0` by `alpha`, matching
    /// [`shift_phi`] so that `c -> c + alpha at v0` stays a bijection.
    pub fn shifted(&self, v0: usize, alpha: u8) -> ColorSystem {
        let mut out = self.clone();
        let m = self.modulus;
        out.forbidden[v0] = rotate_mask(self.forbidden[v0], alpha, m);
        out.precolor[v0] = self.precolor[v0].map(|c| add_mod(c, alpha, m));
        out
    }
}

/// A total vertex colouring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    pub colors: Vec<u8>,
}

impl Coloring {
    pub fn new(colors: Vec<u8>) -> Self {
        Coloring { colors }
    }

    pub fn get(&self, v: usize) -> u8 {
        self.colors[v]
    }
}

/// Difference form: `c(head) - c(tail) != phi(tail -> head)` on every record.
pub fn is_proper(phi: &PhiAssignment, coloring: &Coloring) -> bool {
    let m = phi.modulus();
    phi.records().iter().all(|r| {
        sub_mod(coloring.colors[r.head], coloring.colors[r.tail], m) != r.value
    })
}

/// Tau form: `c(u) != tau_v(c(v), u)` for every ordered pair of neighbours.
pub fn is_proper_by_tau<G: Graph>(g: &G, phi: &PhiAssignment, coloring: &Coloring) -> bool {
    (0..g.vertex_count()).all(|v| {
        g.neighbors(v).iter().all(|&u| {
            tau(phi, v, coloring.colors[v], u).is_ok_and(|t| t != coloring.colors[u])
        })
    })
}

/// Whether `coloring` also respects the forbidden sets and precolouring.
pub fn respects(cs: &ColorSystem, coloring: &Coloring) -> bool {
    (0..cs.vertex_count()).all(|v| cs.available(v) & (1 << coloring.colors[v]) != 0)
}

/// Returns `phi'` with `phi(e) + alpha` on edges directed towards `v0`,
/// `phi(e) - alpha` on edges directed away from it, `phi(e)` elsewhere.
pub fn shift_phi(phi: &PhiAssignment, v0: usize, alpha: u8) -> PhiAssignment {
    let m = phi.modulus();
    let records: Vec<EdgeRecord> = phi
        .records()
        .iter()
        .map(|r| {
            let value = if r.head == v0 {
                add_mod(r.value, alpha, m)
            } else if r.tail == v0 {
                sub_mod(r.value, alpha, m)
            } else {
                r.value
            };
            EdgeRecord { value, ..*r }
        })
        .collect();
    PhiAssignment::from_records(m, &records).expect("shift keeps records valid")
}

/// Oriented sum `phi(uv) + phi(vw) + phi(wu)` vanishes.
pub fn triangle_consistent(phi: &PhiAssignment, u: usize, v: usize, w: usize) -> Result<bool, ColorError> {
    let m = phi.modulus();
    let uv = phi.directed(u, v);
    let vw = phi.directed(v, w);
    let wu = phi.directed(w, u);
    match (uv, vw, wu) {
        (Some(a), Some(b), Some(c)) => Ok(add_mod(add_mod(a, b, m), c, m) == 0),
        _ => Err(ColorError::NotATriangle(u, v, w)),
    }
}

/// Shifts at each target in turn so that every `center - target` edge gets
/// value 0. Returns the new labelling and the applied `(vertex, alpha)`
/// shifts, which callers replay on colour systems with [`ColorSystem::shifted`].
pub fn normalize_star(
    phi: &PhiAssignment,
    center: usize,
    targets: &[usize],
) -> Result<(PhiAssignment, Vec<(usize, u8)>), ColorError> {
    let m = phi.modulus();
    let mut out = phi.clone();
    let mut shifts = Vec::new();
    for &t in targets {
        let rec = *out.record(center, t).ok_or(ColorError::NotAnEdge(center, t))?;
        // towards t gains alpha, away from t loses alpha
        let alpha = if rec.head == t { sub_mod(0, rec.value, m) } else { rec.value };
        if alpha != 0 {
            out = shift_phi(&out, t, alpha);
        }
        shifts.push((t, alpha));
    }
    Ok((out, shifts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_graph::SimpleGraph;

    fn edge_phi(tail: usize, head: usize, value: u8) -> PhiAssignment {
        PhiAssignment::from_records(5, &[EdgeRecord { tail, head, value }]).unwrap()
    }

    #[test]
    fn tau_against_stored_direction() {
        // stored u -> v with u = 0, v = 1
        let phi = edge_phi(0, 1, 3);
        assert_eq!(tau(&phi, 1, 1, 0).unwrap(), 3);
        assert_eq!(tau(&phi, 0, 1, 1).unwrap(), 4);
        let zero = edge_phi(0, 1, 0);
        assert_eq!(tau(&zero, 0, 2, 1).unwrap(), 2);
        assert_eq!(tau(&zero, 1, 2, 0).unwrap(), 2);
        assert_eq!(tau(&zero, 1, 2, 7), Err(ColorError::NotAnEdge(1, 7)));
    }

    #[test]
    fn tau_involution_all_values() {
        for value in 0..5 {
            for (t, h) in [(0, 1), (1, 0)] {
                let phi = edge_phi(t, h, value);
                for alpha in 0..5 {
                    let beta = tau(&phi, 1, alpha, 0).unwrap();
                    assert_eq!(tau(&phi, 0, beta, 1).unwrap(), alpha);
                }
                for s in 0..32u32 {
                    let s2 = tau_set(&phi, 1, s, 0).unwrap();
                    assert_eq!(tau_set(&phi, 0, s2, 1).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn single_edge_properness() {
        let phi = edge_phi(0, 1, 0);
        assert!(!is_proper(&phi, &Coloring::new(vec![1, 1])));
        let phi = edge_phi(0, 1, 2);
        assert!(!is_proper(&phi, &Coloring::new(vec![0, 2])));
        assert!(is_proper(&phi, &Coloring::new(vec![0, 3])));
        let g = SimpleGraph::from_edges(2, &[(0, 1)]);
        assert!(!is_proper_by_tau(&g, &phi, &Coloring::new(vec![0, 2])));
        assert!(is_proper_by_tau(&g, &phi, &Coloring::new(vec![0, 3])));
    }

    #[test]
    fn shift_identity_and_inverse() {
        let phi = PhiAssignment::from_records(
            5,
            &[
                EdgeRecord { tail: 0, head: 1, value: 2 },
                EdgeRecord { tail: 2, head: 0, value: 4 },
                EdgeRecord { tail: 1, head: 2, value: 1 },
            ],
        )
        .unwrap();
        assert_eq!(shift_phi(&phi, 0, 0), phi);
        for alpha in 0..5 {
            let back = shift_phi(&shift_phi(&phi, 0, alpha), 0, sub_mod(0, alpha, 5));
            assert_eq!(back, phi);
        }
        let shifted = shift_phi(&phi, 0, 1);
        assert_eq!(shifted.directed(0, 1), Some(1));
        assert_eq!(shifted.directed(2, 0), Some(0));
        assert_eq!(shifted.directed(1, 2), Some(1));
    }

    #[test]
    fn triangle_sums() {
        let mk = |a, b, c| {
            PhiAssignment::from_records(
                5,
                &[
                    EdgeRecord { tail: 0, head: 1, value: a },
                    EdgeRecord { tail: 1, head: 2, value: b },
                    EdgeRecord { tail: 2, head: 0, value: c },
                ],
            )
            .unwrap()
        };
        assert!(triangle_consistent(&mk(0, 0, 0), 0, 1, 2).unwrap());
        assert!(triangle_consistent(&mk(1, 1, 3), 0, 1, 2).unwrap());
        assert!(!triangle_consistent(&mk(1, 1, 1), 0, 1, 2).unwrap());
        // reading the triangle the other way round gives the negated sum
        assert!(triangle_consistent(&mk(1, 1, 3), 0, 2, 1).unwrap());
        let path = edge_phi(0, 1, 0);
        assert!(triangle_consistent(&path, 0, 1, 2).is_err());
    }

    #[test]
    fn normalize_star_zeroes_spokes() {
        let phi = PhiAssignment::from_records(
            5,
            &[
                EdgeRecord { tail: 0, head: 1, value: 2 },
                EdgeRecord { tail: 2, head: 0, value: 4 },
                EdgeRecord { tail: 1, head: 2, value: 1 },
            ],
        )
        .unwrap();
        let (out, shifts) = normalize_star(&phi, 0, &[1, 2]).unwrap();
        assert_eq!(out.directed(0, 1), Some(0));
        assert_eq!(out.directed(0, 2), Some(0));
        assert_eq!(shifts.len(), 2);
        assert!(normalize_star(&phi, 1, &[7]).is_err());
        let zero = PhiAssignment::zero(&SimpleGraph::from_edges(3, &[(0, 1), (0, 2)]), 5).unwrap();
        assert_eq!(normalize_star(&zero, 0, &[1, 2]).unwrap().0, zero);
    }

    #[test]
    fn precolor_clears_forbidden() {
        let mut cs = ColorSystem::new(3, 5).unwrap();
        cs.forbid(0, &[1, 2]).unwrap();
        assert_eq!(cs.available(0), 0b11001);
        cs.precolor(0, 1).unwrap();
        assert_eq!(cs.forbidden(0), 0);
        assert_eq!(cs.available(0), 0b10);
        cs.forbid(0, &[3]).unwrap();
        assert_eq!(cs.forbidden(0), 0);
        assert!(cs.forbid(1, &[5]).is_err());
    }

    #[test]
    fn rotate_mask_wraps() {
        assert_eq!(rotate_mask(0b10000, 1, 5), 0b00001);
        assert_eq!(rotate_mask(0b00011, 4, 5), 0b10001);
        assert_eq!(GroupElement::new(3, 5) + GroupElement::new(4, 5), GroupElement::new(2, 5));
        assert_eq!(-GroupElement::new(1, 5), GroupElement::new(4, 5));
        assert_eq!(GroupElement::new(1, 5) - GroupElement::new(3, 5), GroupElement::new(3, 5));
    }
}
