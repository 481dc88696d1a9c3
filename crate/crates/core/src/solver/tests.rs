use super::*;
use crate::families::{build, FamilyDescriptor, PrincipalPath};
use crate::group_color::{is_proper, ColorSystem, PhiAssignment};
use crate::plane_graph::{PlaneNearTriangulation, SimpleGraph};

fn k3() -> PlaneNearTriangulation {
    PlaneNearTriangulation::from_faces(3, vec![0, 1, 2], &[[0, 2, 1]]).unwrap()
}

fn zero(g: &PlaneNearTriangulation) -> (PhiAssignment, ColorSystem) {
    (PhiAssignment::zero(g, 5).unwrap(), ColorSystem::new(g.vertex_count(), 5).unwrap())
}

#[test]
fn small_counts() {
    let g = k3();
    let (phi, cs) = zero(&g);
    assert_eq!(count_colorings(&g, &phi, &cs).unwrap(), 60);

    let e = SimpleGraph::from_edges(2, &[(0, 1)]);
    let mut phi = PhiAssignment::zero(&e, 5).unwrap();
    phi.set_directed(0, 1, 3).unwrap();
    assert_eq!(count_colorings(&e, &phi, &ColorSystem::new(2, 5).unwrap()).unwrap(), 20);

    let (w, _) = build(&FamilyDescriptor::Wheel(5)).unwrap();
    let (phi, cs) = zero(&w);
    assert_eq!(count_colorings(&w, &phi, &cs).unwrap(), 1200);
    let all = enumerate_colorings(&w, &phi, &cs, None).unwrap();
    assert_eq!(all.len(), 1200);
    assert!(all.iter().all(|c| is_proper(&phi, c)));
    assert_eq!(enumerate_colorings(&w, &phi, &cs, Some(7)).unwrap().len(), 7);
    assert_eq!(Instance::new(&w, &phi, &cs).unwrap().count_up_to(10), 10);
}

#[test]
fn short_cycle_hub() {
    let (w, _) = build(&FamilyDescriptor::Wheel(5)).unwrap();
    let phi = PhiAssignment::zero(&w, 5).unwrap();
    assert_eq!(color_short_cycle(&w, &phi, &[0, 1, 2, 3, 4]).unwrap(), ShortCycleOutcome::HubException(5));
    match color_short_cycle(&w, &phi, &[0, 1, 0, 1, 2]).unwrap() {
        ShortCycleOutcome::Colored(c) => assert!([3, 4].contains(&c.get(5))),
        other => panic!("{other:?}"),
    }
    assert!(color_short_cycle(&w, &phi, &[0, 0, 1, 2, 3]).is_err());
}

#[test]
fn extend_two_on_a_triangle() {
    let g = k3();
    let (mut phi, mut cs) = zero(&g);
    phi.set_directed(0, 1, 1).unwrap();
    cs.precolor(0, 0).unwrap();
    cs.precolor(1, 0).unwrap();
    let p = ExtensionProblem::new(g, phi, cs, vec![0, 1]).unwrap();
    let c = extend_two(&p).unwrap();
    assert_ne!(c.get(2), 0);
}

#[test]
fn problem_validation() {
    let (g, _) = build(&FamilyDescriptor::Wheel(5)).unwrap();
    let (phi, mut cs) = zero(&g);
    cs.precolor(0, 1).unwrap();
    cs.precolor(1, 1).unwrap();
    assert!(matches!(
        ExtensionProblem::new(g.clone(), phi.clone(), cs.clone(), vec![0, 1]),
        Err(SolverError::ImproperPrecoloring(_))
    ));
    cs.precolor(1, 2).unwrap();
    cs.forbid(5, &[0]).unwrap();
    assert!(matches!(
        ExtensionProblem::new(g.clone(), phi.clone(), cs.clone(), vec![0, 1]),
        Err(SolverError::InvalidCaps(_))
    ));
    assert!(ExtensionProblem::new(g, phi, cs, vec![0, 2]).is_err());
}

fn bw4_obstruction() -> ExtensionProblem {
    let (g, _) = build(&FamilyDescriptor::BrokenWheel(4)).unwrap();
    let (phi, mut cs) = zero(&g);
    cs.forbid(2, &[3, 4]).unwrap();
    cs.precolor(3, 0).unwrap();
    cs.precolor(0, 1).unwrap();
    cs.precolor(1, 2).unwrap();
    ExtensionProblem::new(g, phi, cs, vec![3, 0, 1]).unwrap()
}

#[test]
fn broken_wheel_obstruction() {
    match extend_three(&bw4_obstruction(), DEFAULT_NODE_BUDGET).unwrap() {
        ThreeOutcome::Obstruction(cert) => {
            cert.validate().unwrap();
            assert_eq!(cert.descriptor, FamilyDescriptor::BrokenWheel(4));
            assert_eq!(cert.graph.vertex_count(), 4);
            let doc = crate::gcg::parse(&cert.to_gcg()).unwrap();
            assert_eq!(doc.descriptor.as_deref(), Some("(broken 4)"));
        }
        other => panic!("{other:?}"),
    }
    let mut p = bw4_obstruction();
    p.colors.precolor(1, 3).unwrap();
    assert!(matches!(extend_three(&p, DEFAULT_NODE_BUDGET).unwrap(), ThreeOutcome::Colored(_)));
}

#[test]
fn lemma1_controls() {
    let (g, p) = build(&FamilyDescriptor::BrokenWheel(4)).unwrap();
    let (phi, mut cs) = zero(&g);
    cs.forbid(2, &[3, 4]).unwrap();
    assert!(matches!(lemma1_alpha(&g, &phi, &cs, p, true), Err(SolverError::NotMultiWheel)));
    assert!(matches!(lemma1_alpha(&g, &phi, &cs, p, false).unwrap(), Lemma1Outcome::Inconsistent(_)));

    let (w, q) = build(&FamilyDescriptor::Wheel(5)).unwrap();
    let (phi, mut cs) = zero(&w);
    cs.forbid(2, &[3, 4]).unwrap();
    cs.forbid(3, &[0, 1]).unwrap();
    let out = lemma1_alpha(&w, &phi, &cs, q, true).unwrap();
    assert!(!matches!(out, Lemma1Outcome::Inconsistent(_)), "{out:?}");
    let path = PrincipalPath { vk: 4, v1: 0, v2: 1 };
    assert_eq!(path, q);
}
