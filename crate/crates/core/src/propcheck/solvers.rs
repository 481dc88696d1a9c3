use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::generate::{
    color_system, proper_path_colorings, random_forbidden, random_near_triangulation, random_phi,
    random_proper_path,
};
use super::{run_indexed, CheckReport, PropError, RandomInstanceConfig, Tally};
use crate::families::{build, enumerate_family, FamilyDescriptor};
use crate::gcg::{self, GcgDocument};
use crate::group_color::{full_mask, is_proper, respects, tau, ColorMask, ColorSystem, PhiAssignment};
use crate::plane_graph::{Graph, PlaneNearTriangulation};
use crate::solver::{
    color_short_cycle, extend_three, extend_two, find_coloring, ExtensionProblem, Instance, ObstructionCertificate,
    ShortCycleOutcome, ThreeOutcome, DEFAULT_NODE_BUDGET,
};

fn document(g: &PlaneNearTriangulation, phi: &PhiAssignment, cs: &ColorSystem) -> String {
    gcg::write(&GcgDocument { graph: g.clone(), phi: phi.clone(), colors: cs.clone(), descriptor: None, origin: None })
}

/// A random outer path of `len` vertices, in either direction.
fn random_outer_path(g: &PlaneNearTriangulation, len: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let outer = g.outer_cycle();
    let k = outer.len();
    let start = rng.gen_range(0..k);
    let step = if rng.gen_bool(0.5) { 1 } else { k - 1 };
    (0..len).map(|t| outer[(start + t * step) % k]).collect()
}

/// Random lists on the outer vertices off the path, each forbidding at most `cap`.
fn outer_lists(g: &PlaneNearTriangulation, path: &[usize], cap: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, ColorMask)> {
    g.outer_cycle()
        .iter()
        .filter(|v| !path.contains(v))
        .map(|&v| (v, random_forbidden(cap, rng)))
        .collect()
}

/// The constructive two-vertex extension on random near-triangulations,
/// checked for properness and lists, and against brute force up to 9 vertices.
pub fn check_extend_two(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(40)?;
    run_indexed("theorem2", cfg, cfg.instances, Vec::new(), |i, rng| {
        let mut t = Tally::default();
        let n = rng.gen_range(cfg.n_min.max(3)..=cfg.n_max);
        let g = random_near_triangulation(n, rng);
        let phi = random_phi(&g, cfg.phi_mode, rng);
        let path = random_outer_path(&g, 2, rng);
        let lists = outer_lists(&g, &path, 2, rng);
        let colors = random_proper_path(&g, &phi, &path, rng);
        let pre: Vec<(usize, u8)> = path.iter().copied().zip(colors).collect();
        let cs = color_system(n, &lists, &pre);
        t.tested += 1;
        let doc = || Some(document(&g, &phi, &cs));
        let p = match ExtensionProblem::new(g.clone(), phi.clone(), cs.clone(), path.clone()) {
            Ok(p) => p,
            Err(e) => {
                t.fail(i, format!("generated problem rejected: {e}"), doc());
                return t;
            }
        };
        match extend_two(&p) {
            Ok(c) if is_proper(&phi, &c) && respects(&cs, &c) => {}
            Ok(_) => t.fail(i, "extension is not proper", doc()),
            Err(e) => t.fail(i, format!("extension failed: {e}"), doc()),
        }
        if n <= 9 && !matches!(find_coloring(&g, &phi, &cs), Ok(Some(_))) {
            t.fail(i, "brute force finds no colouring", doc());
        }
        t
    })
}

/// An interior vertex joined to all five outer vertices whose prohibited
/// colours cover Z5.
fn expected_hub(g: &PlaneNearTriangulation, phi: &PhiAssignment, outer_colors: &[u8]) -> Option<usize> {
    let outer = g.outer_cycle();
    if outer.len() != 5 {
        return None;
    }
    g.interior_vertices().into_iter().find(|&v| {
        outer.iter().all(|&c| g.has_edge(c, v))
            && outer
                .iter()
                .zip(outer_colors)
                .fold(0, |acc: ColorMask, (&c, &col)| acc | 1 << tau(phi, c, col, v).unwrap())
                == full_mask(5)
    })
}

fn short_cycle_graph(i: usize, cfg: &RandomInstanceConfig, rng: &mut ChaCha8Rng) -> PlaneNearTriangulation {
    let k = 3 + i % 3;
    if i < 3 {
        return build(&FamilyDescriptor::Wheel(k)).unwrap().0;
    }
    for _ in 0..500 {
        let n = rng.gen_range((k + 1).max(cfg.n_min)..=cfg.n_max.max(k + 1));
        let g = random_near_triangulation(n, rng);
        if g.outer_len() == k && !g.interior_vertices().is_empty() {
            return g;
        }
    }
    build(&FamilyDescriptor::Wheel(k)).unwrap().0
}

/// The short-cycle colourer against brute force on every proper colouring
/// of outer cycles of length 3, 4 and 5.
pub fn check_short_cycle(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(14)?;
    run_indexed("shortcycle", cfg, cfg.instances, Vec::new(), |i, rng| {
        let mut t = Tally::default();
        let g = short_cycle_graph(i, cfg, rng);
        let n = g.vertex_count();
        let outer = g.outer_cycle().to_vec();
        for s in 0..cfg.samples {
            let phi = random_phi(&g, cfg.phi_mode, rng);
            for colors in proper_path_colorings(&g, &phi, &outer) {
                t.tested += 1;
                let pre: Vec<(usize, u8)> = outer.iter().copied().zip(colors.iter().copied()).collect();
                let cs = color_system(n, &[], &pre);
                let exists = Instance::new(&g, &phi, &cs).map(|inst| inst.count_up_to(1) > 0);
                let hub = expected_hub(&g, &phi, &colors);
                let verdict = match (color_short_cycle(&g, &phi, &colors), exists) {
                    (Ok(ShortCycleOutcome::Colored(c)), Ok(true)) if is_proper(&phi, &c) && respects(&cs, &c) && hub.is_none() => None,
                    (Ok(ShortCycleOutcome::HubException(v)), Ok(false)) if hub.is_some() && expected_hub_at(&g, &phi, &colors, v) => None,
                    (Ok(ShortCycleOutcome::Colored(_)), Ok(false)) => Some("coloured an uncolourable instance".to_string()),
                    (Ok(out), Ok(e)) => Some(format!("outcome {out:?}, brute force colourable {e}, expected hub {hub:?}")),
                    (Err(e), _) => Some(format!("colourer failed: {e}")),
                    (_, Err(e)) => Some(format!("brute force failed: {e}")),
                };
                if let Some(detail) = verdict {
                    t.fail(i, format!("sample {s} colours {colors:?}: {detail}"), Some(document(&g, &phi, &cs)));
                }
            }
        }
        t
    })
}

fn expected_hub_at(g: &PlaneNearTriangulation, phi: &PhiAssignment, colors: &[u8], v: usize) -> bool {
    let outer = g.outer_cycle();
    !g.is_outer(v)
        && outer.iter().all(|&c| g.has_edge(c, v))
        && outer.iter().zip(colors).fold(0, |acc: ColorMask, (&c, &col)| acc | 1 << tau(phi, c, col, v).unwrap())
            == full_mask(5)
}

/// Whether every certificate edge, label and path vertex is the host's.
fn embeds_in_host(cert: &ObstructionCertificate, p: &ExtensionProblem) -> bool {
    let h = &cert.host_vertices;
    let edges_ok = cert.graph.edges().into_iter().all(|(a, b)| {
        p.graph.has_edge(h[a], h[b])
            && cert.phi.offset(a, b).is_some()
            && cert.phi.offset(a, b) == p.phi.offset(h[a], h[b])
    });
    let path_ok = [cert.path.vk, cert.path.v1, cert.path.v2].map(|v| h[v]) == [p.path[0], p.path[1], p.path[2]];
    let lists_ok = (0..cert.graph.vertex_count())
        .filter(|&v| cert.graph.is_outer(v) && cert.colors.precolored(v).is_none())
        .all(|v| p.graph.is_outer(h[v]) && cert.colors.forbidden(v) == p.colors.forbidden(h[v]));
    edges_ok && path_ok && lists_ok
}

/// The three-vertex extension: a colouring exactly when brute force finds
/// one, otherwise a certificate that validates and embeds in the instance.
pub fn check_dichotomy(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(10)?;
    let members: Vec<FamilyDescriptor> = enumerate_family(cfg.n_max)
        .into_iter()
        .filter(|d| d.vertex_count() >= cfg.n_min.max(4))
        .collect();
    let notes = vec![format!("half the graphs are drawn from {} family members", members.len())];
    run_indexed("theorem3", cfg, cfg.instances, notes, |i, rng| {
        let mut t = Tally::default();
        let (g, principal) = if i % 2 == 1 && !members.is_empty() {
            let (g, p) = build(members.choose(rng).unwrap()).unwrap();
            (g, Some(vec![p.vk, p.v1, p.v2]))
        } else {
            let n = rng.gen_range(cfg.n_min.max(4)..=cfg.n_max);
            (random_near_triangulation(n, rng), None)
        };
        let n = g.vertex_count();
        for s in 0..cfg.samples {
            let phi = random_phi(&g, cfg.phi_mode, rng);
            let path = principal.clone().unwrap_or_else(|| random_outer_path(&g, 3, rng));
            let cap = if rng.gen_bool(0.2) { 1 } else { 2 };
            let mut lists = outer_lists(&g, &path, cap, rng);
            // lists of exactly two forbidden colours are where obstructions live
            if cap == 2 && rng.gen_bool(0.5) {
                for (_, m) in lists.iter_mut() {
                    while m.count_ones() < 2 {
                        *m |= 1 << rng.gen_range(0..5);
                    }
                }
            }
            let colors = random_proper_path(&g, &phi, &path, rng);
            let pre: Vec<(usize, u8)> = path.iter().copied().zip(colors).collect();
            let cs = color_system(n, &lists, &pre);
            t.tested += 1;
            let doc = || Some(document(&g, &phi, &cs));
            let p = match ExtensionProblem::new(g.clone(), phi.clone(), cs.clone(), path.clone()) {
                Ok(p) => p,
                Err(e) => {
                    t.fail(i, format!("sample {s}: generated problem rejected: {e}"), doc());
                    continue;
                }
            };
            let exists = match Instance::new(&g, &phi, &cs) {
                Ok(inst) => inst.count_up_to(1) > 0,
                Err(e) => {
                    t.fail(i, format!("sample {s}: brute force failed: {e}"), doc());
                    continue;
                }
            };
            match extend_three(&p, DEFAULT_NODE_BUDGET) {
                Ok(ThreeOutcome::Colored(c)) => {
                    if !(exists && is_proper(&phi, &c) && respects(&cs, &c)) {
                        t.fail(i, format!("sample {s}: returned colouring is invalid"), doc());
                    }
                }
                Ok(ThreeOutcome::Obstruction(cert)) => {
                    if exists {
                        t.fail(i, format!("sample {s}: certificate for a colourable instance"), doc());
                    } else if let Err(e) = cert.validate() {
                        t.fail(i, format!("sample {s}: certificate invalid: {e}"), doc());
                    } else if !embeds_in_host(&cert, &p) {
                        t.fail(i, format!("sample {s}: certificate does not embed in the instance"), doc());
                    } else if cap == 1 {
                        t.fail(i, format!("sample {s}: obstruction with at most one forbidden colour per vertex"), doc());
                    } else {
                        t.witnessed += 1;
                    }
                }
                Err(e) => t.fail(i, format!("sample {s}: {e}"), doc()),
            }
        }
        t
    })
}
