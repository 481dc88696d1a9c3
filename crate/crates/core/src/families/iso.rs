use std::collections::VecDeque;

use super::PrincipalPath;
use crate::plane_graph::{Graph, PlaneNearTriangulation};

/// Canonical code of the embedding relative to the dart `v1 -> v2`: vertices
/// are numbered in breadth-first order, each rotation read clockwise starting
/// from the dart it was reached by. Equal codes mean the embeddings agree up
/// to an orientation-preserving map sending `v1 -> v2` to itself.
pub fn plane_code(g: &PlaneNearTriangulation, p: PrincipalPath) -> Vec<usize> {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut entry = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    label[p.v1] = 0;
    entry[p.v1] = p.v2;
    order.push(p.v1);
    queue.push_back(p.v1);
    while let Some(v) = queue.pop_front() {
        let rot = g.rotation(v);
        let start = rot.iter().position(|&x| x == entry[v]).unwrap_or(0);
        for t in 0..rot.len() {
            let u = rot[(start + t) % rot.len()];
            if label[u] == usize::MAX {
                label[u] = order.len();
                entry[u] = v;
                order.push(u);
                queue.push_back(u);
            }
        }
    }
    let mut code = vec![n];
    for &v in &order {
        let rot = g.rotation(v);
        let start = rot.iter().position(|&x| x == entry[v]).unwrap_or(0);
        code.push(rot.len());
        for t in 0..rot.len() {
            code.push(label[rot[(start + t) % rot.len()]]);
        }
    }
    code
}

/// Graph isomorphism (ignoring the embedding) mapping `pa` to `pb` pointwise.
pub fn isomorphic_fixing_path<A: Graph, B: Graph>(a: &A, pa: PrincipalPath, b: &B, pb: PrincipalPath) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() {
        return false;
    }
    let mut deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    deg_a.sort_unstable();
    deg_b.sort_unstable();
    if deg_a != deg_b || a.edges().len() != b.edges().len() {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (x, y) in pa.as_array().into_iter().zip(pb.as_array()) {
        if map[x] != usize::MAX || used[y] || a.degree(x) != b.degree(y) {
            return false;
        }
        map[x] = y;
        used[y] = true;
    }
    for x in pa.as_array() {
        for y in pa.as_array() {
            if a.has_edge(x, y) != b.has_edge(map[x], map[y]) {
                return false;
            }
        }
    }
    // order: breadth first from the path so every vertex has a mapped neighbour
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = pa.as_array().into_iter().collect();
    for x in pa.as_array() {
        seen[x] = true;
    }
    while let Some(v) = queue.pop_front() {
        for &u in a.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                order.push(u);
                queue.push_back(u);
            }
        }
    }
    order.extend((0..n).filter(|&v| !seen[v]));
    extend(a, b, &order, 0, &mut map, &mut used)
}

fn extend<A: Graph, B: Graph>(
    a: &A,
    b: &B,
    order: &[usize],
    idx: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&x) = order.get(idx) else {
        return true;
    };
    for y in 0..b.vertex_count() {
        if used[y] || a.degree(x) != b.degree(y) {
            continue;
        }
        let consistent = a
            .neighbors(x)
            .iter()
            .filter(|&&z| map[z] != usize::MAX)
            .all(|&z| b.has_edge(y, map[z]))
            && b.neighbors(y)
                .iter()
                .filter(|&&z| used[z])
                .count()
                == a.neighbors(x).iter().filter(|&&z| map[z] != usize::MAX).count();
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, order, idx + 1, map, used) {
            return true;
        }
        map[x] = usize::MAX;
        used[y] = false;
    }
    false
}
