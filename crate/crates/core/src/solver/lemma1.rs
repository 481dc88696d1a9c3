use super::search::Instance;
use super::SolverError;
use crate::families::{is_multi_wheel, PrincipalPath};
use crate::group_color::{sub_mod, tau, ColorSystem, PhiAssignment};
use crate::plane_graph::{Graph, PlaneNearTriangulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lemma1Outcome {
    /// Every proper precolouring of the principal path extends.
    Vacuous,
    /// All non-extendable precolourings have `c(vk) - c(v2)` equal to this.
    Alpha(u8),
    /// Non-extendable precolourings with these distinct differences exist.
    Inconsistent(Vec<u8>),
}

/// Brute-force search for the single difference `c(vk) - c(v2)` shared by
/// every non-extendable precolouring of `vk v1 v2`.
///
/// `cs` may forbid at most two colours on `v3 .. v(k-1)` and must leave every
/// other vertex unconstrained. With `check` set the graph must be a
/// multi-wheel with principal path `path`.
pub fn lemma1_alpha(
    g: &PlaneNearTriangulation,
    phi: &PhiAssignment,
    cs: &ColorSystem,
    path: PrincipalPath,
    check: bool,
) -> Result<Lemma1Outcome, SolverError> {
    if phi.modulus() != 5 || cs.modulus() != 5 {
        return Err(SolverError::Input("the difference invariant is over Z5".into()));
    }
    if check && !is_multi_wheel(g, path) {
        return Err(SolverError::NotMultiWheel);
    }
    let [vk, v1, v2] = path.as_array();
    for v in [vk, v1, v2] {
        if !g.is_outer(v) {
            return Err(SolverError::Input(format!("path vertex {v} is not on the outer cycle")));
        }
    }
    if !g.neighbors(v1).contains(&vk) || !g.neighbors(v1).contains(&v2) {
        return Err(SolverError::Input("principal path edges are missing".into()));
    }
    for v in 0..g.vertex_count() {
        let f = cs.forbidden_count(v);
        if cs.precolored(v).is_some() {
            return Err(SolverError::InvalidCaps(format!("vertex {v} is precoloured")));
        }
        let capped = g.is_outer(v) && ![vk, v1, v2].contains(&v);
        if (capped && f > 2) || (!capped && f > 0) {
            return Err(SolverError::InvalidCaps(format!("vertex {v} forbids {f} colours")));
        }
    }
    let closing = g.neighbors(vk).contains(&v2);
    let mut diffs: Vec<u8> = Vec::new();
    for a in 0..5 {
        for b in 0..5 {
            if tau(phi, vk, a, v1)? == b {
                continue;
            }
            for c in 0..5 {
                if tau(phi, v1, b, v2)? == c || (closing && tau(phi, vk, a, v2)? == c) {
                    continue;
                }
                let mut pre = cs.clone();
                pre.precolor(vk, a)?;
                pre.precolor(v1, b)?;
                pre.precolor(v2, c)?;
                if Instance::new(g, phi, &pre)?.count_up_to(1) == 0 {
                    let d = sub_mod(a, c, 5);
                    if !diffs.contains(&d) {
                        diffs.push(d);
                    }
                }
            }
        }
    }
    diffs.sort_unstable();
    Ok(match diffs.len() {
        0 => Lemma1Outcome::Vacuous,
        1 => Lemma1Outcome::Alpha(diffs[0]),
        _ => Lemma1Outcome::Inconsistent(diffs),
    })
}
