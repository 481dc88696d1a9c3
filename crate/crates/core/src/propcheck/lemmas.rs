use std::collections::HashMap;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::generate::{color_system, proper_path_colorings, random_forbidden, random_phi, random_proper_path};
use super::{run_indexed, CheckReport, PropError, RandomInstanceConfig, Tally};
use crate::families::{
    build, build_wheel_string, enumerate_family, is_multi_wheel, FamilyDescriptor, PrincipalPath,
};
use crate::gcg::{self, GcgDocument};
use crate::group_color::{tau, ColorMask, ColorSystem, PhiAssignment};
use crate::plane_graph::{Graph, PlaneNearTriangulation, SimpleGraph};
use crate::solver::{lemma1_alpha, Instance, Lemma1Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaId {
    One,
    Two,
    ThreeA,
    ThreeB,
    Cor1,
    Four,
    Five,
}

impl FromStr for LemmaId {
    type Err = PropError;
    fn from_str(s: &str) -> Result<Self, PropError> {
        Ok(match s {
            "1" => LemmaId::One,
            "2" => LemmaId::Two,
            "3a" => LemmaId::ThreeA,
            "3b" => LemmaId::ThreeB,
            "cor1" => LemmaId::Cor1,
            "4" => LemmaId::Four,
            "5" => LemmaId::Five,
            _ => return Err(PropError::UnknownProperty(s.to_string())),
        })
    }
}

pub fn check_lemma(id: LemmaId, cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    match id {
        LemmaId::One => lemma1(cfg),
        LemmaId::Two => lemma2(cfg),
        LemmaId::ThreeA => lemma3(cfg, false),
        LemmaId::ThreeB => lemma3(cfg, true),
        LemmaId::Cor1 => corollary1(cfg),
        LemmaId::Four => lemma4(cfg),
        LemmaId::Five => lemma5(cfg),
    }
}

fn document(g: &PlaneNearTriangulation, phi: &PhiAssignment, cs: &ColorSystem, d: Option<&FamilyDescriptor>) -> String {
    gcg::write(&GcgDocument {
        graph: g.clone(),
        phi: phi.clone(),
        colors: cs.clone(),
        descriptor: d.map(|d| d.to_string()),
        origin: None,
    })
}

/// Family members with `n_min ..= n_max` vertices passing `keep`; at most
/// `cfg.instances` of them, subsampled deterministically.
fn members(
    property: &str,
    cfg: &RandomInstanceConfig,
    keep: impl Fn(&FamilyDescriptor, &PlaneNearTriangulation, PrincipalPath) -> bool,
) -> Vec<FamilyDescriptor> {
    let all: Vec<FamilyDescriptor> = enumerate_family(cfg.n_max)
        .into_iter()
        .filter(|d| d.vertex_count() >= cfg.n_min)
        .filter(|d| {
            let (g, p) = build(d).expect("enumerated members build");
            keep(d, &g, p)
        })
        .collect();
    if all.len() <= cfg.instances {
        return all;
    }
    let mut picks: Vec<usize> = (0..all.len()).collect::<Vec<_>>();
    let mut rng = cfg.rng(&format!("{property}/members"), 0);
    picks.shuffle(&mut rng);
    picks.truncate(cfg.instances);
    picks.sort_unstable();
    picks.into_iter().map(|i| all[i].clone()).collect()
}

/// Outer vertices other than the principal path.
fn middle(g: &PlaneNearTriangulation, p: PrincipalPath) -> Vec<usize> {
    g.outer_cycle().iter().copied().filter(|v| ![p.vk, p.v1, p.v2].contains(v)).collect()
}

fn random_lists(vertices: &[usize], cap: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, ColorMask)> {
    vertices.iter().map(|&v| (v, random_forbidden(cap, rng))).collect()
}

fn extends<G: Graph>(g: &G, phi: &PhiAssignment, lists: &[(usize, ColorMask)], pre: &[(usize, u8)]) -> bool {
    let cs = color_system(g.vertex_count(), lists, pre);
    Instance::new(g, phi, &cs).expect("consistent instance").count_up_to(1) > 0
}

/// A proper colouring of `path` that does not extend, if any.
fn non_extendable(
    g: &PlaneNearTriangulation,
    phi: &PhiAssignment,
    lists: &[(usize, ColorMask)],
    path: &[usize],
) -> Option<Vec<u8>> {
    proper_path_colorings(g, phi, path).into_iter().find(|colors| {
        let pre: Vec<(usize, u8)> = path.iter().copied().zip(colors.iter().copied()).collect();
        !extends(g, phi, lists, &pre)
    })
}

/// Copy of `phi` with fresh random labels on the principal edges.
fn rerandomize_principal(phi: &PhiAssignment, p: PrincipalPath, rng: &mut ChaCha8Rng) -> PhiAssignment {
    let mut out = phi.clone();
    for (a, b) in [(p.vk, p.v1), (p.v1, p.v2)] {
        out.remove(a, b);
        out.insert(a, b, rng.gen_range(0..5)).expect("edge was present");
    }
    out
}

fn lemma1(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(12)?;
    let pool = members("lemma1", cfg, |_, g, p| is_multi_wheel(g, p));
    let notes = vec![format!("{} multi-wheels", pool.len())];
    run_indexed("lemma1", cfg, pool.len() * cfg.samples, notes, |i, rng| {
        let mut t = Tally::default();
        let d = &pool[i / cfg.samples];
        let (g, p) = build(d).unwrap();
        let phi = random_phi(&g, cfg.phi_mode, rng);
        let lists = random_lists(&middle(&g, p), 2, rng);
        let cs = color_system(g.vertex_count(), &lists, &[]);
        t.tested += 1;
        let first = lemma1_alpha(&g, &phi, &cs, p, true);
        let relabelled = rerandomize_principal(&phi, p, rng);
        let second = lemma1_alpha(&g, &relabelled, &cs, p, true);
        let verdict = match (&first, &second) {
            (Ok(Lemma1Outcome::Inconsistent(ds)), _) => Some(format!("differences {ds:?} for one labelling")),
            (_, Ok(Lemma1Outcome::Inconsistent(ds))) => Some(format!("differences {ds:?} after relabelling")),
            (Ok(Lemma1Outcome::Alpha(a)), Ok(Lemma1Outcome::Alpha(b))) if a != b => {
                Some(format!("difference moved from {a} to {b} after relabelling"))
            }
            (Err(e), _) | (_, Err(e)) => Some(format!("solver error: {e}")),
            _ => None,
        };
        if let Some(detail) = verdict {
            t.fail(i, format!("{d}: {detail}"), Some(document(&g, &phi, &cs, Some(d))));
        }
        t
    })
}

fn has_separating_triangle(g: &PlaneNearTriangulation) -> bool {
    !g.separating_cycles(3).map(|c| c.is_empty()).unwrap_or(false)
}

fn lemma2(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(14)?;
    let pool = members("lemma2", cfg, |_, g, _| !has_separating_triangle(g));
    let notes = vec![format!("{} generalized multi-wheels without separating triangles", pool.len())];
    run_indexed("lemma2", cfg, pool.len() * cfg.samples, notes, |i, rng| {
        let mut t = Tally::default();
        let d = &pool[i / cfg.samples];
        let (g, p) = build(d).unwrap();
        let phi = random_phi(&g, cfg.phi_mode, rng);
        let lists = random_lists(&middle(&g, p), 2, rng);
        let path = p.as_array();
        let colors = random_proper_path(&g, &phi, &path, rng);
        let pre: Vec<(usize, u8)> = path.iter().copied().zip(colors).collect();
        let principal = [crate::plane_graph::edge_key(p.vk, p.v1), crate::plane_graph::edge_key(p.v1, p.v2)];
        for e in g.edges() {
            if principal.contains(&e) {
                continue;
            }
            t.tested += 1;
            let kept: Vec<_> = g.edges().into_iter().filter(|&f| f != e).collect();
            let h = SimpleGraph::from_edges(g.vertex_count(), &kept);
            let mut phi_h = phi.clone();
            phi_h.remove(e.0, e.1);
            if !extends(&h, &phi_h, &lists, &pre) {
                let cs = color_system(g.vertex_count(), &lists, &pre);
                t.fail(i, format!("{d}: no colouring after deleting {}-{}", e.0, e.1), Some(document(&g, &phi, &cs, Some(d))));
            }
        }
        t
    })
}

/// The two-interior-vertex configurations, outer cycle `v1 .. vk` labelled
/// `0 .. k-1`, `u = k`, `v = k + 1`. Variant (a): `u` sees `v1 .. vi`, `v`
/// sees `vi .. vk, v1`. Variant (b): `u` sees `v2 .. vi`, `v` sees
/// `v1, v2, vi .. vk`.
pub fn lemma3_configuration(k: usize, i: usize, variant_b: bool) -> Option<PlaneNearTriangulation> {
    let lo = if variant_b { 4 } else { 3 };
    if k < 4 || i < lo || i + 1 > k {
        return None;
    }
    let vt = |t: usize| t - 1;
    let (u, v) = (k, k + 1);
    let mut faces = Vec::new();
    let first = if variant_b { 2 } else { 1 };
    for t in first..i {
        faces.push([u, vt(t), vt(t + 1)]);
    }
    for t in i..k {
        faces.push([v, vt(t), vt(t + 1)]);
    }
    faces.push([v, vt(k), vt(1)]);
    if variant_b {
        faces.push([v, vt(1), vt(2)]);
        faces.push([u, v, vt(2)]);
    } else {
        faces.push([u, v, vt(1)]);
    }
    faces.push([u, v, vt(i)]);
    PlaneNearTriangulation::from_faces(k + 2, (0..k).collect(), &faces).ok()
}

fn lemma3(cfg: &RandomInstanceConfig, variant_b: bool) -> Result<CheckReport, PropError> {
    cfg.require_n_max(14)?;
    let name = if variant_b { "lemma3b" } else { "lemma3a" };
    let mut configs = Vec::new();
    for k in 4..=cfg.n_max.saturating_sub(2) {
        for i in 3..k {
            if let Some(g) = lemma3_configuration(k, i, variant_b) {
                configs.push((k, i, g));
            }
        }
    }
    let notes = vec![format!("{} configurations", configs.len())];
    run_indexed(name, cfg, configs.len() * cfg.samples, notes, |idx, rng| {
        let mut t = Tally::default();
        let (k, i, g) = &configs[idx / cfg.samples];
        let p = PrincipalPath::of(g);
        let phi = random_phi(g, cfg.phi_mode, rng);
        let lists = random_lists(&middle(g, p), 2, rng);
        t.tested += 1;
        if let Some(colors) = non_extendable(g, &phi, &lists, &p.as_array()) {
            let pre: Vec<(usize, u8)> = p.as_array().into_iter().zip(colors.iter().copied()).collect();
            let cs = color_system(g.vertex_count(), &lists, &pre);
            t.fail(idx, format!("k={k} i={i}: path colours {colors:?} do not extend"), Some(document(g, &phi, &cs, None)));
        }
        t
    })
}

fn corollary1(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(14)?;
    let pool = members("cor1", cfg, |_, g, p| {
        let inner = g.interior_vertices();
        is_multi_wheel(g, p)
            && inner.len() >= 2
            && inner.iter().all(|&u| g.has_edge(u, p.v2))
            && !has_separating_triangle(g)
    });
    let notes = vec![format!("{} multi-wheels with every inner vertex on v2", pool.len())];
    run_indexed("cor1", cfg, pool.len() * cfg.samples, notes, |i, rng| {
        let mut t = Tally::default();
        let d = &pool[i / cfg.samples];
        let (g, p) = build(d).unwrap();
        let phi = random_phi(&g, cfg.phi_mode, rng);
        let lists = random_lists(&middle(&g, p), 2, rng);
        t.tested += 1;
        if let Some(colors) = non_extendable(&g, &phi, &lists, &p.as_array()) {
            let pre: Vec<(usize, u8)> = p.as_array().into_iter().zip(colors.iter().copied()).collect();
            let cs = color_system(g.vertex_count(), &lists, &pre);
            t.fail(i, format!("{d}: path colours {colors:?} do not extend"), Some(document(&g, &phi, &cs, Some(d))));
        }
        t
    })
}

/// Colours `b` of the major vertex that do not clash with `vk`, `v2` coloured `a`, `c`.
fn major_options(phi: &PhiAssignment, p: PrincipalPath, a: u8, c: u8) -> Vec<u8> {
    (0..5).filter(|&b| tau(phi, p.vk, a, p.v1).unwrap() != b && tau(phi, p.v2, c, p.v1).unwrap() != b).collect()
}

fn lemma4(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(12)?;
    let pool = members("lemma4", cfg, |_, _, _| true);
    let notes = vec![
        format!("{} generalized multi-wheels", pool.len()),
        "vk is chosen from its own list; it forbids at most two colours like the rest of C - v1 - v2".to_string(),
    ];
    run_indexed("lemma4", cfg, pool.len() * cfg.samples, notes, |i, rng| {
        let mut t = Tally::default();
        let d = &pool[i / cfg.samples];
        let (g, p) = build(d).unwrap();
        let phi = random_phi(&g, cfg.phi_mode, rng);
        let capped: Vec<usize> = g.outer_cycle().iter().copied().filter(|&v| v != p.v1 && v != p.v2).collect();
        let lists = random_lists(&capped, 2, rng);
        let fk = lists.iter().find(|(v, _)| *v == p.vk).map_or(0, |(_, m)| *m);
        let c = rng.gen_range(0..5);
        let others: Vec<(usize, ColorMask)> = lists.iter().copied().filter(|(v, _)| *v != p.vk).collect();
        t.tested += 1;
        let good = (0..5u8).filter(|&a| fk & (1 << a) == 0).any(|a| {
            if g.has_edge(p.vk, p.v2) && tau(&phi, p.v2, c, p.vk).unwrap() == a {
                return false;
            }
            major_options(&phi, p, a, c)
                .into_iter()
                .all(|b| extends(&g, &phi, &others, &[(p.vk, a), (p.v1, b), (p.v2, c)]))
        });
        if !good {
            let cs = color_system(g.vertex_count(), &lists, &[(p.v2, c)]);
            t.fail(i, format!("{d}: no colour of vk works with v2 coloured {c}"), Some(document(&g, &phi, &cs, Some(d))));
        }
        t
    })
}

fn lemma5(cfg: &RandomInstanceConfig) -> Result<CheckReport, PropError> {
    cfg.require_n_max(12)?;
    let parts: Vec<FamilyDescriptor> =
        enumerate_family(cfg.n_max.saturating_sub(2).max(3)).into_iter().collect();
    let notes = vec![
        "clean vertices forbid at most three colours, other non-major outer vertices at most two".to_string(),
        "major vertices forbid nothing; their colours only avoid conflicts with coloured neighbours".to_string(),
    ];
    run_indexed("lemma5", cfg, cfg.instances, notes, |i, rng| {
        let mut t = Tally::default();
        let Some(chain) = random_chain(&parts, cfg.n_max, rng) else {
            t.skipped += 1;
            return t;
        };
        let string = build_wheel_string(&chain).expect("members chain");
        let descriptor = FamilyDescriptor::String(chain.clone());
        for s in 0..cfg.samples {
            t.tested += 1;
            let phi = random_phi(&string.graph, cfg.phi_mode, rng);
            let mut lists: HashMap<usize, ColorMask> = HashMap::new();
            for v in string.boundary() {
                if string.majors.contains(&v) {
                    continue;
                }
                let cap = if string.clean.contains(&v) { 3 } else { 2 };
                lists.insert(v, random_forbidden(cap, rng));
            }
            if !lemma5_holds(&string, &phi, &lists) {
                let mut forbidden: Vec<(usize, ColorMask)> = lists.iter().map(|(&v, &m)| (v, m)).collect();
                forbidden.sort_unstable();
                let labels: Vec<String> =
                    phi.records().iter().map(|r| format!("{}>{}:{}", r.tail, r.head, r.value)).collect();
                t.fail(i, format!("{descriptor} sample {s}: phi [{}] forbidden {forbidden:?}", labels.join(" ")), None);
            }
        }
        t
    })
}

/// Two or three random parts whose string has at most `n_max` vertices.
fn random_chain(parts: &[FamilyDescriptor], n_max: usize, rng: &mut ChaCha8Rng) -> Option<Vec<FamilyDescriptor>> {
    for _ in 0..100 {
        let m = rng.gen_range(2..=3);
        let chain: Vec<FamilyDescriptor> = (0..m).map(|_| parts.choose(rng).unwrap().clone()).collect();
        let n: usize = chain.iter().map(FamilyDescriptor::vertex_count).sum::<usize>() + 1 - m;
        if n <= n_max {
            return Some(chain);
        }
    }
    None
}

/// Whether clean and cut vertices can be coloured so that every
/// conflict-free colouring of the majors extends. Parts meet only in cut
/// vertices, so this is a chain of per-part tables.
fn lemma5_holds(
    string: &crate::families::WheelString,
    phi: &PhiAssignment,
    lists: &HashMap<usize, ColorMask>,
) -> bool {
    let allowed = |v: usize, c: u8| lists.get(&v).is_none_or(|m| m & (1 << c) == 0);
    // reach[c]: some colouring of the chain so far ends with colour c
    let first = string.parts[0].to_string[string.parts[0].path.vk];
    let mut reach: Vec<bool> = (0..5).map(|c| allowed(first, c)).collect();
    for part in &string.parts {
        let to_part: HashMap<usize, usize> = part.to_string.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let local_phi = phi.restricted(&to_part);
        let local_lists: Vec<(usize, ColorMask)> = part
            .to_string
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != part.path.vk && i != part.path.v2)
            .filter_map(|(i, v)| lists.get(v).map(|&m| (i, m)))
            .collect();
        let (g, p) = (&part.graph, part.path);
        let v2_host = part.to_string[p.v2];
        let mut next = vec![false; 5];
        for a in (0..5u8).filter(|&a| reach[a as usize]) {
            for c in (0..5u8).filter(|&c| allowed(v2_host, c)) {
                if next[c as usize] {
                    continue;
                }
                if g.has_edge(p.vk, p.v2) && tau(&local_phi, p.vk, a, p.v2).unwrap() == c {
                    continue;
                }
                let ok = major_options(&local_phi, p, a, c)
                    .into_iter()
                    .all(|b| extends(g, &local_phi, &local_lists, &[(p.vk, a), (p.v1, b), (p.v2, c)]));
                if ok {
                    next[c as usize] = true;
                }
            }
        }
        reach = next;
    }
    reach.into_iter().any(|r| r)
}
