use super::*;
use crate::families::{build, FamilyDescriptor, PrincipalPath};
use crate::group_color::{ColorSystem, PhiAssignment};
use crate::plane_graph::Graph;

fn small(seed: u64) -> RandomInstanceConfig {
    RandomInstanceConfig { n_max: 8, instances: 12, samples: 3, seed, ..RandomInstanceConfig::default() }
}

#[test]
fn generators() {
    assert_eq!(random_triangulation(3, 1).unwrap().vertex_count(), 3);
    let k4 = random_triangulation(4, 9).unwrap();
    assert_eq!(k4.edge_count(), 6);
    assert!(random_triangulation(2, 0).is_err());
    for seed in 0..30 {
        let g = random_triangulation(12, seed).unwrap();
        assert!(g.validate().is_valid());
        assert_eq!(g.edge_count(), 3 * 12 - 6);
        assert_eq!(g.vertex_count(), random_triangulation(12, seed).unwrap().vertex_count());
        let mut rng = small(seed).rng("gen", 0);
        let h = random_near_triangulation(9, &mut rng);
        assert_eq!(h.vertex_count(), 9);
        assert!(h.validate().is_valid());
    }
}

#[test]
fn ninth_roots() {
    assert_eq!(bounds::ninth_root_bound(0), 1);
    assert_eq!(bounds::ninth_root_bound(9), 2);
    assert_eq!(bounds::ninth_root_bound(10), 3);
    assert_eq!(bounds::ninth_root_bound(-4), 1);
}

#[test]
fn exception_detector() {
    // K4 with outer 0 1 2 3? use the wheel on a triangle: hub 3 sees 2, 0, 1
    let (g, p) = build(&FamilyDescriptor::Wheel(3)).unwrap();
    let phi = PhiAssignment::zero(&g, 5).unwrap();
    let mut cs = ColorSystem::new(4, 5).unwrap();
    let path = p.as_array();
    cs.precolor(p.vk, 0).unwrap();
    cs.precolor(p.v1, 1).unwrap();
    cs.precolor(p.v2, 2).unwrap();
    assert_eq!(theorem4_exception(&g, &phi, &cs, &path), None);
    cs.forbid(3, &[3]).unwrap();
    assert_eq!(theorem4_exception(&g, &phi, &cs, &path), Some(3));
    cs.forbid(3, &[0]).unwrap();
    assert_eq!(theorem4_exception(&g, &phi, &cs, &path), None);
    let _ = PrincipalPath::of(&g);
}

#[test]
fn lemma3_shapes() {
    let a = lemma3_configuration(6, 3, false).unwrap();
    assert!(a.validate().is_valid());
    assert_eq!(a.degree(6), 4);
    assert_eq!(a.degree(7), 6 - 3 + 2 + 1);
    let b = lemma3_configuration(6, 4, true).unwrap();
    assert!(b.validate().is_valid());
    assert!(lemma3_configuration(6, 3, true).is_none());
}

#[test]
fn reports_are_reproducible() {
    for prop in ["shift", "theorem2", "lemma1", "lemma5", "theorem4"] {
        let one = check(prop, &small(5)).unwrap();
        let four = check(prop, &RandomInstanceConfig { jobs: 4, ..small(5) }).unwrap();
        assert!(one.passed(), "{}", one.render());
        assert_eq!(one.body(), four.body());
        assert!(one.header().lines().all(|l| l.starts_with('#')));
    }
    assert!(check("nonsense", &small(1)).is_err());
    assert!(check("lemma1", &RandomInstanceConfig { n_max: 40, ..small(1) }).is_err());
}
