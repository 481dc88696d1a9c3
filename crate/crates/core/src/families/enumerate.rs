use std::collections::{HashMap, HashSet};

use super::{build, isomorphic_fixing_path, plane_code, FamilyDescriptor, PrincipalPath};
use crate::plane_graph::{Graph, PlaneNearTriangulation};

struct Member {
    desc: FamilyDescriptor,
    graph: PlaneNearTriangulation,
    path: PrincipalPath,
}

impl Member {
    fn new(desc: FamilyDescriptor) -> Option<Member> {
        let (graph, path) = build(&desc).ok()?;
        Some(Member { desc, graph, path })
    }
}

/// All generalized multi-wheels with at most `max_n` vertices, one per
/// isomorphism class fixing the principal path, ordered by vertex count.
///
/// Members without a chord at the major vertex ("prime" ones) are wheels
/// with insertions or the triangle; every other member is a prime member
/// glued to an arbitrary member along the first chord, so it is generated
/// exactly from that decomposition.
pub fn enumerate_family(max_n: usize) -> Vec<FamilyDescriptor> {
    let mut primes: Vec<Vec<Member>> = (0..=max_n).map(|_| Vec::new()).collect();
    let mut all: Vec<Vec<Member>> = (0..=max_n).map(|_| Vec::new()).collect();
    let mut out = Vec::new();
    for n in 3..=max_n {
        let mut prime_candidates = Vec::new();
        if n == 3 {
            prime_candidates.push(FamilyDescriptor::BrokenWheel(3));
        } else {
            prime_candidates.push(FamilyDescriptor::Wheel(n - 1));
            // the smallest base that accepts an insertion is K4
            for j in 0..(n.max(4) - 4) {
                for base in &primes[n - 1 - j] {
                    if base.graph.vertex_count() == 3 {
                        continue;
                    }
                    for t in 2..base.graph.outer_len() {
                        prime_candidates.push(FamilyDescriptor::insert(base.desc.clone(), t, j));
                    }
                }
            }
        }
        let level_primes = dedup(prime_candidates.into_iter().filter_map(Member::new).collect());

        let mut glued = Vec::new();
        for a in 3..n {
            let b = n + 2 - a;
            for left in &primes[a] {
                for right in &all[b] {
                    glued.push(glue_desc(&left.desc, &right.desc));
                }
            }
        }
        let mut level: Vec<Member> = level_primes
            .iter()
            .map(|m| Member { desc: m.desc.clone(), graph: m.graph.clone(), path: m.path })
            .collect();
        level.extend(glued.into_iter().filter_map(Member::new));
        let level = dedup(level);
        out.extend(level.iter().map(|m| m.desc.clone()));
        primes[n] = level_primes;
        all[n] = level;
    }
    out
}

fn glue_desc(left: &FamilyDescriptor, right: &FamilyDescriptor) -> FamilyDescriptor {
    match (left, right) {
        (FamilyDescriptor::BrokenWheel(a), FamilyDescriptor::BrokenWheel(b)) => {
            FamilyDescriptor::BrokenWheel(a + b - 2)
        }
        _ => FamilyDescriptor::glue(left.clone(), right.clone()),
    }
}

fn invariant(m: &Member) -> (usize, usize, Vec<usize>, [usize; 3]) {
    let g = &m.graph;
    let mut degs: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
    degs.sort_unstable();
    let p = m.path;
    (g.vertex_count(), g.edge_count(), degs, [g.degree(p.vk), g.degree(p.v1), g.degree(p.v2)])
}

/// Keeps the first member of each class: exact plane codes first, then a
/// graph isomorphism check within invariant buckets.
fn dedup(members: Vec<Member>) -> Vec<Member> {
    let mut codes = HashSet::new();
    let mut buckets: HashMap<(usize, usize, Vec<usize>, [usize; 3]), Vec<usize>> = HashMap::new();
    let mut kept: Vec<Member> = Vec::new();
    for m in members {
        if !codes.insert(plane_code(&m.graph, m.path)) {
            continue;
        }
        let key = invariant(&m);
        let bucket = buckets.entry(key).or_default();
        if bucket
            .iter()
            .any(|&i| isomorphic_fixing_path(&kept[i].graph, kept[i].path, &m.graph, m.path))
        {
            continue;
        }
        bucket.push(kept.len());
        kept.push(m);
    }
    kept
}
