use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{FamilyDescriptor, PrincipalPath};
use crate::plane_graph::{Graph, PlaneNearTriangulation};

/// Decomposes `g` into a descriptor whose build is isomorphic to `g` with
/// the principal path fixed, or `None` if `g` is not a generalized
/// multi-wheel with that principal path.
///
/// `p` may run either way round the outer cycle; a counter-clockwise path
/// yields the mirror decomposition.
pub fn recognize_generalized_multi_wheel(
    g: &PlaneNearTriangulation,
    p: PrincipalPath,
) -> Option<FamilyDescriptor> {
    let seq = principal_sequence(g, p)?;
    let faces = g.inner_faces();
    let mut memo = HashMap::new();
    recognize(&seq, &faces, &mut memo).map(simplify)
}

/// A wheel with insertions only: recognized, chordless, and not a triangle.
pub fn is_multi_wheel(g: &PlaneNearTriangulation, p: PrincipalPath) -> bool {
    g.chords().is_empty()
        && g.vertex_count() > 3
        && recognize_generalized_multi_wheel(g, p).is_some()
}

/// Outer cycle listed as `v1, v2, ..., vk`.
fn principal_sequence(g: &PlaneNearTriangulation, p: PrincipalPath) -> Option<Vec<usize>> {
    let outer = g.outer_cycle();
    let k = outer.len();
    let i = g.outer_position(p.v1)?;
    let forward: Vec<usize> = (0..k).map(|t| outer[(i + t) % k]).collect();
    if forward[1] == p.v2 && forward[k - 1] == p.vk {
        return Some(forward);
    }
    let backward: Vec<usize> = (0..k).map(|t| outer[(i + k - t) % k]).collect();
    if backward[1] == p.v2 && backward[k - 1] == p.vk {
        return Some(backward);
    }
    None
}

type Memo = HashMap<(Vec<usize>, Vec<[usize; 3]>), Option<FamilyDescriptor>>;

fn sorted_faces(faces: &[[usize; 3]]) -> Vec<[usize; 3]> {
    let mut out: Vec<[usize; 3]> = faces
        .iter()
        .map(|f| {
            let mut t = *f;
            t.sort_unstable();
            t
        })
        .collect();
    out.sort_unstable();
    out
}

fn recognize(seq: &[usize], faces: &[[usize; 3]], memo: &mut Memo) -> Option<FamilyDescriptor> {
    let key = (seq.to_vec(), sorted_faces(faces));
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let result = recognize_uncached(seq, faces, memo);
    memo.insert(key, result.clone());
    result
}

fn recognize_uncached(seq: &[usize], faces: &[[usize; 3]], memo: &mut Memo) -> Option<FamilyDescriptor> {
    let k = seq.len();
    if k == 3 && faces.len() == 1 {
        return Some(FamilyDescriptor::BrokenWheel(3));
    }
    let pos: HashMap<usize, usize> = seq.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for f in faces {
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    adj.entry(f[a]).or_default().insert(f[b]);
                }
            }
        }
    }

    // chord at the major vertex: glue
    let v1 = seq[0];
    if let Some(i) = (2..k.saturating_sub(1)).find(|&i| adj[&v1].contains(&seq[i])) {
        let chord = [v1, seq[i]];
        let (left, right) = split_faces(faces, chord, seq[1]);
        let left_seq: Vec<usize> = seq[..=i].to_vec();
        let mut right_seq = vec![v1];
        right_seq.extend_from_slice(&seq[i..]);
        let l = recognize(&left_seq, &left, memo)?;
        let r = recognize(&right_seq, &right, memo)?;
        return Some(FamilyDescriptor::glue(l, r));
    }
    // any other chord rules membership out
    for (&v, nbrs) in &adj {
        if let Some(&i) = pos.get(&v) {
            for u in nbrs {
                if let Some(&j) = pos.get(u) {
                    if (i + 1) % k != j && (j + 1) % k != i {
                        return None;
                    }
                }
            }
        }
    }

    let interior: Vec<usize> = adj.keys().copied().filter(|v| !pos.contains_key(v)).collect();
    if interior.len() == 1 && adj[&interior[0]].len() == k && faces.len() == k {
        return Some(FamilyDescriptor::Wheel(k));
    }

    for &w in &interior {
        let Some((a, b, u)) = inserted_wheel_at(w, seq, &pos, &adj, faces) else {
            continue;
        };
        let removed: BTreeSet<usize> = std::iter::once(w).chain(seq[a + 1..b].iter().copied()).collect();
        let mut base_faces: Vec<[usize; 3]> =
            faces.iter().filter(|f| !f.iter().any(|x| removed.contains(x))).copied().collect();
        base_faces.push([seq[a], u, seq[b]]);
        let mut base_seq = seq[..=a].to_vec();
        base_seq.extend_from_slice(&seq[b..]);
        if let Some(d) = recognize(&base_seq, &base_faces, memo) {
            return Some(FamilyDescriptor::insert(d, a + 1, b - a - 1));
        }
    }
    None
}

/// Faces on each side of a chord; the first piece is the one containing the
/// boundary vertex `marker`.
fn split_faces(faces: &[[usize; 3]], chord: [usize; 2], marker: usize) -> (Vec<[usize; 3]>, Vec<[usize; 3]>) {
    let is_chord = |x: usize, y: usize| (x == chord[0] && y == chord[1]) || (x == chord[1] && y == chord[0]);
    let n = faces.len();
    let mut side = vec![usize::MAX; n];
    let mut comps = 0;
    for root in 0..n {
        if side[root] != usize::MAX {
            continue;
        }
        side[root] = comps;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for o in 0..n {
                if side[o] != usize::MAX {
                    continue;
                }
                let shared: Vec<usize> = faces[i].iter().copied().filter(|x| faces[o].contains(x)).collect();
                if shared.len() == 2 && !is_chord(shared[0], shared[1]) {
                    side[o] = comps;
                    stack.push(o);
                }
            }
        }
        comps += 1;
    }
    let marked = (0..n).find(|&i| faces[i].contains(&marker)).map(|i| side[i]).unwrap_or(0);
    let mut first = Vec::new();
    let mut second = Vec::new();
    for (i, f) in faces.iter().enumerate() {
        if side[i] == marked {
            first.push(*f);
        } else {
            second.push(*f);
        }
    }
    (first, second)
}

/// If `w` is the hub of an inserted wheel, returns `(a, b, u)`: the outer
/// run `seq[a..=b]` it dominates and its single interior neighbour `u`.
fn inserted_wheel_at(
    w: usize,
    seq: &[usize],
    pos: &HashMap<usize, usize>,
    adj: &BTreeMap<usize, BTreeSet<usize>>,
    faces: &[[usize; 3]],
) -> Option<(usize, usize, usize)> {
    let nbrs = &adj[&w];
    let inner: Vec<usize> = nbrs.iter().copied().filter(|v| !pos.contains_key(v)).collect();
    if inner.len() != 1 {
        return None;
    }
    let u = inner[0];
    let mut run: Vec<usize> = nbrs.iter().filter_map(|v| pos.get(v).copied()).collect();
    run.sort_unstable();
    let (a, b) = (*run.first()?, *run.last()?);
    if a == 0 || b <= a || run.len() != b - a + 1 {
        return None;
    }
    if !(a + 1..b).all(|t| adj[&seq[t]].len() == 3) {
        return None;
    }
    if !adj[&u].contains(&seq[a]) || !adj[&u].contains(&seq[b]) {
        return None;
    }
    let around_w = faces.iter().filter(|f| f.contains(&w)).count();
    if around_w != nbrs.len() {
        return None;
    }
    Some((a, b, u))
}

/// Collapses glued chains of broken wheels into a single broken wheel.
fn simplify(d: FamilyDescriptor) -> FamilyDescriptor {
    match d {
        FamilyDescriptor::Glue(l, r) => match (simplify(*l), simplify(*r)) {
            (FamilyDescriptor::BrokenWheel(a), FamilyDescriptor::BrokenWheel(b)) => {
                FamilyDescriptor::BrokenWheel(a + b - 2)
            }
            (l, r) => FamilyDescriptor::glue(l, r),
        },
        FamilyDescriptor::InsertWheel { base, triangle, j } => {
            FamilyDescriptor::insert(simplify(*base), triangle, j)
        }
        other => other,
    }
}
