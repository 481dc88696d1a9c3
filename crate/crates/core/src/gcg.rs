//! The `gcg v1` text format.
//!
//! Line oriented, `#` starts a comment. Directives:
//!
//! ```text
//! gcg v1                      optional header
//! n <N>                       vertex count, vertices 0..N-1
//! group <m>                   modulus, default 5
//! rot <v> <u1> <u2> ...       clockwise neighbours of v, once per vertex
//! outer <k> <v1> ... <vk>     outer cycle, clockwise
//! edge <u> <v> <phi>          label of uv, stored directed u -> v
//! phi <u> <v> <phi>           same as edge
//! forbid <v> <c1> [<c2> [<c3>]]
//! precolor <v> <c>
//! descriptor <s-expression>   family descriptor (certificates)
//! origin <w0> <w1> ...        host labels of the vertices (certificates)
//! ```
//!
//! Edges without an `edge` line get label 0, stored from the smaller to the
//! larger index. Anything unknown or inconsistent is a hard error.

use std::fmt::Write as _;

use thiserror::Error;

use crate::group_color::{colors_of, ColorError, ColorSystem, PhiAssignment, DEFAULT_MODULUS};
use crate::plane_graph::{Graph, GraphError, PlaneNearTriangulation};

#[derive(Debug, Error)]
pub enum GcgError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `{0}` directive")]
    Missing(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Color(#[from] ColorError),
}

#[derive(Debug, Clone)]
pub struct GcgDocument {
    pub graph: PlaneNearTriangulation,
    pub phi: PhiAssignment,
    pub colors: ColorSystem,
    pub descriptor: Option<String>,
    pub origin: Option<Vec<usize>>,
}

impl GcgDocument {
    /// Zero labelling, no constraints.
    pub fn plain(graph: PlaneNearTriangulation) -> Self {
        let phi = PhiAssignment::zero(&graph, DEFAULT_MODULUS).expect("default modulus");
        let colors = ColorSystem::new(graph.vertex_count(), DEFAULT_MODULUS).expect("default modulus");
        GcgDocument { graph, phi, colors, descriptor: None, origin: None }
    }
}

pub fn parse(text: &str) -> Result<GcgDocument, GcgError> {
    let mut n: Option<usize> = None;
    let mut modulus: Option<u8> = None;
    let mut rotation: Vec<Option<Vec<usize>>> = Vec::new();
    let mut outer: Option<Vec<usize>> = None;
    let mut labels: Vec<(usize, usize, usize, u8)> = Vec::new();
    let mut forbids: Vec<(usize, usize, Vec<u8>)> = Vec::new();
    let mut precolors: Vec<(usize, usize, u8)> = Vec::new();
    let mut descriptor = None;
    let mut origin = None;
    let mut seen_header = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| GcgError::Syntax { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        let nums = |rest: &[&str]| -> Result<Vec<usize>, GcgError> {
            rest.iter()
                .map(|w| w.parse::<usize>().map_err(|_| err(format!("`{w}` is not a number"))))
                .collect()
        };
        let need_n = || n.ok_or_else(|| err("`n` must come first".into()));
        let check_vertex = |v: usize| -> Result<(), GcgError> {
            if v < need_n()? {
                Ok(())
            } else {
                Err(err(format!("vertex {v} out of range")))
            }
        };
        match head {
            "gcg" => {
                if seen_header || n.is_some() || rest != ["v1"] {
                    return Err(err("header must be the first line and read `gcg v1`".into()));
                }
                seen_header = true;
            }
            "n" => {
                if n.is_some() {
                    return Err(err("duplicate `n`".into()));
                }
                let v = nums(&rest)?;
                if v.len() != 1 {
                    return Err(err("`n` takes one number".into()));
                }
                n = Some(v[0]);
                rotation = vec![None; v[0]];
            }
            "group" => {
                if modulus.is_some() {
                    return Err(err("duplicate `group`".into()));
                }
                let v = nums(&rest)?;
                if v.len() != 1 || v[0] > u8::MAX as usize {
                    return Err(err("`group` takes one small number".into()));
                }
                modulus = Some(v[0] as u8);
            }
            "rot" => {
                let v = nums(&rest)?;
                if v.is_empty() {
                    return Err(err("`rot` needs a vertex".into()));
                }
                check_vertex(v[0])?;
                for &u in &v[1..] {
                    check_vertex(u)?;
                }
                if rotation[v[0]].is_some() {
                    return Err(err(format!("duplicate rot line for vertex {}", v[0])));
                }
                rotation[v[0]] = Some(v[1..].to_vec());
            }
            "outer" => {
                if outer.is_some() {
                    return Err(err("duplicate `outer`".into()));
                }
                let v = nums(&rest)?;
                if v.is_empty() || v[0] != v.len() - 1 {
                    return Err(err("`outer` length does not match its vertex list".into()));
                }
                for &u in &v[1..] {
                    check_vertex(u)?;
                }
                outer = Some(v[1..].to_vec());
            }
            "edge" | "phi" => {
                let v = nums(&rest)?;
                if v.len() != 3 {
                    return Err(err(format!("`{head}` takes <u> <v> <phi>")));
                }
                check_vertex(v[0])?;
                check_vertex(v[1])?;
                if v[2] > u8::MAX as usize {
                    return Err(err("label too large".into()));
                }
                labels.push((line_no, v[0], v[1], v[2] as u8));
            }
            "forbid" => {
                let v = nums(&rest)?;
                if v.len() < 2 || v.len() > 4 {
                    return Err(err("`forbid` takes a vertex and one to three colours".into()));
                }
                check_vertex(v[0])?;
                if v[1..].iter().any(|&c| c > u8::MAX as usize) {
                    return Err(err("colour too large".into()));
                }
                forbids.push((line_no, v[0], v[1..].iter().map(|&c| c as u8).collect()));
            }
            "precolor" => {
                let v = nums(&rest)?;
                if v.len() != 2 || v[1] > u8::MAX as usize {
                    return Err(err("`precolor` takes <v> <c>".into()));
                }
                check_vertex(v[0])?;
                if precolors.iter().any(|&(_, w, _)| w == v[0]) {
                    return Err(err(format!("vertex {} precoloured twice", v[0])));
                }
                precolors.push((line_no, v[0], v[1] as u8));
            }
            "descriptor" => {
                if rest.is_empty() || descriptor.is_some() {
                    return Err(err("bad or duplicate `descriptor`".into()));
                }
                descriptor = Some(rest.join(" "));
            }
            "origin" => {
                if origin.is_some() {
                    return Err(err("duplicate `origin`".into()));
                }
                let v = nums(&rest)?;
                if v.len() != need_n()? {
                    return Err(err("`origin` needs one entry per vertex".into()));
                }
                origin = Some(v);
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }

    let n = n.ok_or(GcgError::Missing("n"))?;
    let outer = outer.ok_or(GcgError::Missing("outer"))?;
    let mut rot = Vec::with_capacity(n);
    for (v, r) in rotation.into_iter().enumerate() {
        rot.push(r.ok_or(GcgError::Syntax { line: 0, msg: format!("no rot line for vertex {v}") })?);
    }
    let graph = PlaneNearTriangulation::new(rot, outer)?;
    let m = modulus.unwrap_or(DEFAULT_MODULUS);
    let mut phi = PhiAssignment::new(m)?;
    for &(line, u, v, value) in &labels {
        if !graph.has_edge(u, v) {
            return Err(GcgError::Syntax { line, msg: format!("{u}-{v} is not an edge") });
        }
        phi.insert(u, v, value).map_err(|e| GcgError::Syntax { line, msg: e.to_string() })?;
    }
    for (u, v) in graph.edges() {
        if phi.record(u, v).is_none() {
            phi.insert(u, v, 0)?;
        }
    }
    let mut colors = ColorSystem::new(n, m)?;
    for (line, v, cs) in &forbids {
        colors.forbid(*v, cs).map_err(|e| GcgError::Syntax { line: *line, msg: e.to_string() })?;
    }
    for &(line, v, c) in &precolors {
        colors.precolor(v, c).map_err(|e| GcgError::Syntax { line, msg: e.to_string() })?;
    }
    Ok(GcgDocument { graph, phi, colors, descriptor, origin })
}

pub fn write(doc: &GcgDocument) -> String {
    let g = &doc.graph;
    let mut out = String::new();
    out.push_str("gcg v1\n");
    writeln!(out, "n {}", g.vertex_count()).unwrap();
    writeln!(out, "group {}", doc.phi.modulus()).unwrap();
    for v in 0..g.vertex_count() {
        let rot: Vec<String> = g.rotation(v).iter().map(usize::to_string).collect();
        writeln!(out, "rot {v} {}", rot.join(" ")).unwrap();
    }
    let outer: Vec<String> = g.outer_cycle().iter().map(usize::to_string).collect();
    writeln!(out, "outer {} {}", outer.len(), outer.join(" ")).unwrap();
    for r in doc.phi.records() {
        writeln!(out, "edge {} {} {}", r.tail, r.head, r.value).unwrap();
    }
    for v in 0..g.vertex_count() {
        let f = doc.colors.forbidden(v);
        if f != 0 {
            for chunk in colors_of(f).chunks(3) {
                let cs: Vec<String> = chunk.iter().map(u8::to_string).collect();
                writeln!(out, "forbid {v} {}", cs.join(" ")).unwrap();
            }
        }
    }
    for v in 0..g.vertex_count() {
        if let Some(c) = doc.colors.precolored(v) {
            writeln!(out, "precolor {v} {c}").unwrap();
        }
    }
    if let Some(d) = &doc.descriptor {
        writeln!(out, "descriptor {d}").unwrap();
    }
    if let Some(o) = &doc.origin {
        let s: Vec<String> = o.iter().map(usize::to_string).collect();
        writeln!(out, "origin {}", s.join(" ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const K3: &str = "gcg v1\n# triangle\nn 3\nrot 0 1 2\nrot 1 2 0\nrot 2 0 1\nouter 3 0 1 2\n";

    #[test]
    fn parses_triangle_with_defaults() {
        let doc = parse(K3).unwrap();
        assert_eq!(doc.graph.vertex_count(), 3);
        assert_eq!(doc.phi.modulus(), 5);
        assert_eq!(doc.phi.len(), 3);
        assert!(doc.phi.records().iter().all(|r| r.value == 0 && r.tail < r.head));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let mut text = K3.to_string();
        text.push_str("group 5\nedge 2 0 3\nforbid 2 1 4\nprecolor 0 1\nprecolor 1 2\n");
        let doc = parse(&text).unwrap();
        let again = parse(&write(&doc)).unwrap();
        assert_eq!(write(&doc), write(&again));
        assert_eq!(again.phi.directed(2, 0), Some(3));
        assert_eq!(again.colors.forbidden(2), 0b10010);
        assert_eq!(again.colors.precolored(1), Some(2));
    }

    #[test]
    fn strictness() {
        let dup_rot = format!("{K3}rot 0 1 2\n");
        assert!(matches!(parse(&dup_rot), Err(GcgError::Syntax { .. })));
        let unknown = format!("{K3}colour 0 1\n");
        assert!(parse(&unknown).unwrap_err().to_string().contains("unknown directive"));
        let bad_outer = K3.replace("outer 3 0 1 2", "outer 3 0 1 1");
        assert!(matches!(parse(&bad_outer), Err(GcgError::Graph(_))));
        let missing_rot = K3.replace("rot 2 0 1\n", "");
        assert!(parse(&missing_rot).is_err());
        let non_edge = format!("{K3}edge 0 0 1\n");
        assert!(parse(&non_edge).is_err());
        let dup_edge = format!("{K3}edge 0 1 1\nedge 1 0 2\n");
        assert!(parse(&dup_edge).is_err());
        let big = format!("{K3}edge 0 1 7\n");
        assert!(parse(&big).is_err());
        assert!(matches!(parse("n 3\n"), Err(GcgError::Missing("outer"))));
    }
}
