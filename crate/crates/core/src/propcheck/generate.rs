use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{PhiMode, PropError};
use crate::group_color::{mask_of, tau, ColorMask, ColorSystem, PhiAssignment};
use crate::plane_graph::{Graph, PlaneNearTriangulation, Region};

/// Stacked triangulation on `n` vertices, deterministic per seed.
pub fn random_triangulation(n: usize, seed: u64) -> Result<PlaneNearTriangulation, PropError> {
    if n < 3 {
        return Err(PropError::Config(format!("a triangulation needs n >= 3, got {n}")));
    }
    Ok(stacked_triangulation(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

/// Grows a triangulation from the triangle `0 1 2` by inserting each new
/// vertex into a uniformly random bounded face.
pub fn stacked_triangulation<R: Rng>(n: usize, rng: &mut R) -> PlaneNearTriangulation {
    let mut faces = vec![[0, 1, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    PlaneNearTriangulation::from_faces(n, vec![0, 1, 2], &faces).expect("stacking keeps a triangulation")
}

/// A near-triangulation on `n` vertices: a stacked triangulation on more
/// vertices with random outer vertices peeled off. The outer cycle is
/// relabelled `0 .. k-1`.
pub fn random_near_triangulation<R: Rng>(n: usize, rng: &mut R) -> PlaneNearTriangulation {
    let extra = rng.gen_range(1..=(n / 2).max(1));
    let mut region = Region::from_graph(&stacked_triangulation(n + extra, rng));
    for _ in 0..extra {
        let size = region.vertices().len();
        let mut options: Vec<Region> = region
            .boundary()
            .into_iter()
            .map(|v| region.without_vertex(v))
            .filter(|r| !r.is_empty() && r.vertices().len() + 1 == size && r.boundary_from(None).is_ok())
            .collect();
        if options.is_empty() {
            break;
        }
        let pick = rng.gen_range(0..options.len());
        region = options.swap_remove(pick);
    }
    let (g, _) = region.to_near_triangulation(None).expect("peeling keeps a disc");
    if g.vertex_count() == n {
        g
    } else {
        stacked_triangulation(n, rng)
    }
}

pub fn random_phi<G: Graph, R: Rng>(g: &G, mode: PhiMode, rng: &mut R) -> PhiAssignment {
    let mut phi = PhiAssignment::new(5).expect("Z5");
    for (u, v) in g.edges() {
        let value = match mode {
            PhiMode::Uniform => rng.gen_range(0..5),
            PhiMode::Zero => 0,
            PhiMode::Sparse => {
                if rng.gen_bool(2.0 / 3.0) {
                    0
                } else {
                    rng.gen_range(1..5)
                }
            }
        };
        phi.insert(u, v, value).expect("fresh edge");
    }
    phi
}

/// A forbidden set of at most `cap` colours; exactly `cap` half the time,
/// since tight lists are where extensions fail.
pub fn random_forbidden<R: Rng>(cap: usize, rng: &mut R) -> ColorMask {
    let size = if rng.gen_bool(0.5) { cap } else { rng.gen_range(0..=cap) };
    let mut colors: Vec<u8> = (0..5).collect();
    colors.shuffle(rng);
    mask_of(&colors[..size])
}

/// Random colours for `path` (in order), each avoiding the colour forced by
/// every earlier path vertex it is adjacent to.
pub fn random_proper_path<G: Graph, R: Rng>(g: &G, phi: &PhiAssignment, path: &[usize], rng: &mut R) -> Vec<u8> {
    let mut out: Vec<u8> = Vec::with_capacity(path.len());
    for (i, &v) in path.iter().enumerate() {
        let options: Vec<u8> = (0..5)
            .filter(|&c| {
                path[..i]
                    .iter()
                    .zip(&out)
                    .all(|(&u, &cu)| !g.has_edge(u, v) || tau(phi, u, cu, v).unwrap() != c)
            })
            .collect();
        out.push(*options.choose(rng).expect("at most two earlier neighbours"));
    }
    out
}

/// Every colouring of `path` proper on the edges among its vertices.
pub fn proper_path_colorings<G: Graph>(g: &G, phi: &PhiAssignment, path: &[usize]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for (i, &v) in path.iter().enumerate() {
        let mut next = Vec::new();
        for partial in &out {
            for c in 0..5u8 {
                let ok = path[..i]
                    .iter()
                    .zip(partial.iter())
                    .all(|(&u, &cu)| !g.has_edge(u, v) || tau(phi, u, cu, v).unwrap() != c);
                if ok {
                    let mut p: Vec<u8> = partial.clone();
                    p.push(c);
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out
}

/// Colour system with the given forbidden masks and path colours.
pub fn color_system(n: usize, forbidden: &[(usize, ColorMask)], pre: &[(usize, u8)]) -> ColorSystem {
    let mut cs = ColorSystem::new(n, 5).expect("Z5");
    for &(v, mask) in forbidden {
        cs.set_forbidden_mask(v, mask).expect("mask in range");
    }
    for &(v, c) in pre {
        cs.precolor(v, c).expect("colour in range");
    }
    cs
}
