use rand::Rng;

use super::generate::{random_forbidden, random_near_triangulation, random_phi, stacked_triangulation};
use super::{run_indexed, CheckReport, PropError, RandomInstanceConfig, Tally};
use crate::families::{build, enumerate_family, facial_triangle_property};
use crate::gcg::{self, GcgDocument};
use crate::group_color::{
    full_mask, shift_phi, tau, tau_set, triangle_consistent, ColorSystem, PhiAssignment,
};
use crate::solver::count_colorings;

/// Index 0 sweeps the tau algebra on an edge and a triangle; every further
/// index checks one family member for a facial triangle avoiding `C - v1`.
pub fn check_calculus(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(12)?;
    let members = enumerate_family(cfg.n_max);
    let notes = vec![format!("facial triangles checked on {} family members", members.len())];
    run_indexed("calculus", cfg, members.len() + 1, notes, |i, _| {
        let mut t = Tally::default();
        if i == 0 {
            tau_algebra(&mut t);
            return t;
        }
        let d = &members[i - 1];
        t.tested += 1;
        match build(d) {
            Ok((g, p)) if facial_triangle_property(&g, p) => {}
            Ok(_) => t.fail(i, format!("{d} has a face avoiding C - v1"), None),
            Err(e) => t.fail(i, format!("{d} does not build: {e}"), None),
        }
        t
    })
}

fn tau_algebra(t: &mut Tally) {
    // involution on one edge, both orientations, elements and sets
    for (tail, head) in [(0, 1), (1, 0)] {
        for value in 0..5 {
            let mut phi = PhiAssignment::new(5).unwrap();
            phi.insert(tail, head, value).unwrap();
            for alpha in 0..5 {
                t.tested += 1;
                let beta = tau(&phi, 0, alpha, 1).unwrap();
                if tau(&phi, 1, beta, 0).unwrap() != alpha {
                    t.fail(0, format!("involution fails: {tail}->{head} phi {value} alpha {alpha}"), None);
                }
            }
            for set in 0..full_mask(5) + 1 {
                let image = tau_set(&phi, 0, set, 1).unwrap();
                if tau_set(&phi, 1, image, 0).unwrap() != set {
                    t.fail(0, format!("set involution fails: {tail}->{head} phi {value} set {set:#b}"), None);
                }
            }
        }
    }
    // on a triangle the composed prohibition holds for all colours or none
    for a in 0..5 {
        for b in 0..5 {
            for c in 0..5 {
                t.tested += 1;
                let mut phi = PhiAssignment::new(5).unwrap();
                phi.insert(0, 1, a).unwrap();
                phi.insert(1, 2, b).unwrap();
                phi.insert(2, 0, c).unwrap();
                let holds: Vec<bool> = (0..5)
                    .map(|alpha| {
                        let via = tau(&phi, 1, tau(&phi, 0, alpha, 1).unwrap(), 2).unwrap();
                        via == tau(&phi, 0, alpha, 2).unwrap()
                    })
                    .collect();
                let uniform = holds.iter().all(|&h| h == holds[0]);
                let consistent = triangle_consistent(&phi, 0, 1, 2).unwrap();
                if !uniform || holds[0] != consistent {
                    t.fail(0, format!("triangle ({a},{b},{c}) gives {holds:?}"), None);
                }
            }
        }
    }
}

/// Colouring counts survive shifting the labelling at a vertex (with the
/// vertex's constraints shifted alike) and flipping stored orientations.
pub fn check_shift(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(12)?;
    run_indexed("shift", cfg, cfg.instances, Vec::new(), |i, rng| {
        let mut t = Tally::default();
        let n = rng.gen_range(cfg.n_min.max(3)..=cfg.n_max);
        let g = if rng.gen_bool(0.5) { stacked_triangulation(n, rng) } else { random_near_triangulation(n, rng) };
        let phi = random_phi(&g, cfg.phi_mode, rng);
        let mut cs = ColorSystem::new(n, 5).unwrap();
        for v in 0..n {
            if rng.gen_bool(0.3) {
                cs.set_forbidden_mask(v, random_forbidden(2, rng)).unwrap();
            }
        }
        if rng.gen_bool(0.5) {
            let v = rng.gen_range(0..n);
            cs.precolor(v, rng.gen_range(0..5)).unwrap();
        }
        let v0 = rng.gen_range(0..n);
        let alpha = rng.gen_range(1..5);
        let shifted = shift_phi(&phi, v0, alpha);
        let plain = ColorSystem::new(n, 5).unwrap();
        let pairs = [
            ("shift with constraints", count_colorings(&g, &phi, &cs), count_colorings(&g, &shifted, &cs.shifted(v0, alpha))),
            ("shift", count_colorings(&g, &phi, &plain), count_colorings(&g, &shifted, &plain)),
            ("flip", count_colorings(&g, &phi, &cs), count_colorings(&g, &phi.flipped(), &cs)),
        ];
        for (what, before, after) in pairs {
            t.tested += 1;
            match (before, after) {
                (Ok(a), Ok(b)) if a == b => {}
                (a, b) => {
                    let doc = GcgDocument { graph: g.clone(), phi: phi.clone(), colors: cs.clone(), descriptor: None, origin: None };
                    t.fail(i, format!("{what} at vertex {v0} by {alpha}: {a:?} vs {b:?}"), Some(gcg::write(&doc)));
                }
            }
        }
        t
    })
}
