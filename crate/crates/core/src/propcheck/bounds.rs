use rand::Rng;

use super::generate::{color_system, random_forbidden, random_near_triangulation, random_phi, random_proper_path, stacked_triangulation};
use super::{run_indexed, CheckReport, PropError, RandomInstanceConfig, Tally};
use crate::gcg::{self, GcgDocument};
use crate::group_color::{tau, ColorSystem, PhiAssignment};
use crate::plane_graph::{Graph, PlaneNearTriangulation, SimpleGraph};
use crate::solver::Instance;

/// Smallest `c` with `c^9 >= 2^e`, i.e. the least integer count meeting
/// `2^(e/9)`; 1 when `e <= 0`.
pub(crate) fn ninth_root_bound(e: i64) -> u64 {
    if e <= 0 {
        return 1;
    }
    let target = 1u128 << e;
    let mut c: u64 = 1;
    while (c as u128).pow(9) < target {
        c += 1;
    }
    c
}

/// A vertex with exactly four available colours, joined to all three
/// precoloured vertices, with one available colour besides the three they
/// forbid at it.
pub fn theorem4_exception<G: Graph>(g: &G, phi: &PhiAssignment, cs: &ColorSystem, path: &[usize]) -> Option<usize> {
    if path.len() != 3 {
        return None;
    }
    (0..g.vertex_count()).find(|&u| {
        if path.contains(&u) || cs.precolored(u).is_some() || cs.available(u).count_ones() != 4 {
            return false;
        }
        if !path.iter().all(|&p| g.has_edge(p, u)) {
            return false;
        }
        let taken = path.iter().fold(0u32, |acc, &p| {
            let c = cs.precolored(p).expect("path is precoloured");
            acc | 1 << tau(phi, p, c, u).unwrap()
        });
        (cs.available(u) & !taken).count_ones() == 1
    })
}

fn random_path(g: &PlaneNearTriangulation, len: usize, rng: &mut impl Rng) -> Vec<usize> {
    let outer = g.outer_cycle();
    let k = outer.len();
    let start = rng.gen_range(0..k);
    (0..len).map(|t| outer[(start + t) % k]).collect()
}

/// Colourable instances with two or three precoloured outer vertices have
/// at least `2^(n/9 - r/3)` colourings, compared exactly as
/// `count^9 >= 2^(n - 3r)`.
pub fn check_theorem4_bound(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(20)?;
    let notes = vec!["instances in the exceptional configuration are counted as skipped".to_string()];
    run_indexed("theorem4", cfg, cfg.instances, notes, |i, rng| {
        let mut t = Tally::default();
        let n_total = rng.gen_range(cfg.n_min.max(4)..=cfg.n_max.max(4));
        let g = if i % 2 == 0 { stacked_triangulation(n_total, rng) } else { random_near_triangulation(n_total, rng) };
        for s in 0..cfg.samples {
            let phi = random_phi(&g, cfg.phi_mode, rng);
            let len = if rng.gen_bool(0.5) { 3 } else { 2 };
            let path = random_path(&g, len, rng);
            let lists: Vec<_> = g
                .outer_cycle()
                .iter()
                .filter(|v| !path.contains(v))
                .map(|&v| (v, random_forbidden(2, rng)))
                .collect();
            let colors = random_proper_path(&g, &phi, &path, rng);
            let pre: Vec<(usize, u8)> = path.iter().copied().zip(colors).collect();
            let cs = color_system(n_total, &lists, &pre);
            if theorem4_exception(&g, &phi, &cs, &path).is_some() {
                t.skipped += 1;
                continue;
            }
            let inst = Instance::new(&g, &phi, &cs).expect("consistent instance");
            if inst.count_up_to(1) == 0 {
                t.skipped += 1;
                continue;
            }
            t.tested += 1;
            let n = (n_total - len) as i64;
            let r = (0..n_total).filter(|&v| cs.precolored(v).is_none() && cs.available(v).count_ones() == 3).count() as i64;
            let need = ninth_root_bound(n - 3 * r);
            let got = inst.count_up_to(need);
            if got < need {
                let doc = GcgDocument { graph: g.clone(), phi: phi.clone(), colors: cs.clone(), descriptor: None, origin: None };
                t.fail(i, format!("sample {s}: {got} colourings, n={n} r={r} needs {need}"), Some(gcg::write(&doc)));
            }
        }
        t
    })
}

/// Planar graphs on `n` vertices have at least `2^(n/9)` colourings for
/// every labelling: stacked triangulations and random spanning subgraphs.
pub fn check_corollary(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(20)?;
    run_indexed("corollary2", cfg, cfg.instances, Vec::new(), |i, rng| {
        let mut t = Tally::default();
        let n = rng.gen_range(cfg.n_min.max(3)..=cfg.n_max.max(3));
        let g = stacked_triangulation(n, rng);
        let need = ninth_root_bound(n as i64);
        let plain = ColorSystem::new(n, 5).unwrap();
        for s in 0..cfg.samples {
            let phi = random_phi(&g, cfg.phi_mode, rng);
            t.tested += 1;
            let got = Instance::new(&g, &phi, &plain).expect("consistent").count_up_to(need);
            if got < need {
                let doc = GcgDocument { graph: g.clone(), phi: phi.clone(), colors: plain.clone(), descriptor: None, origin: None };
                t.fail(i, format!("sample {s}: {got} colourings of {n} vertices, needs {need}"), Some(gcg::write(&doc)));
            }
            let kept: Vec<_> = g.edges().into_iter().filter(|_| rng.gen_bool(0.7)).collect();
            let h = SimpleGraph::from_edges(n, &kept);
            let mut phi_h = phi.clone();
            for (a, b) in g.edges() {
                if !kept.contains(&(a, b)) {
                    phi_h.remove(a, b);
                }
            }
            t.tested += 1;
            let got = Instance::new(&h, &phi_h, &plain).expect("consistent").count_up_to(need);
            if got < need {
                t.fail(i, format!("sample {s}: subgraph with {} edges has {got} colourings, needs {need}", kept.len()), None);
            }
        }
        t
    })
}
