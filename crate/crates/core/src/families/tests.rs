use super::*;
use crate::plane_graph::Graph;

fn d(s: &str) -> FamilyDescriptor {
    s.parse().unwrap()
}

fn icosahedron_minus_vertex() -> PlaneNearTriangulation {
    // upper ring 0..5, lower ring 5..10, bottom 10
    let mut faces = Vec::new();
    for i in 0..5 {
        let (u, u1, l, l1) = (i, (i + 1) % 5, 5 + i, 5 + (i + 1) % 5);
        faces.push([u, u1, l]);
        faces.push([u1, l1, l]);
        faces.push([l, l1, 10]);
    }
    PlaneNearTriangulation::from_faces(11, (0..5).collect(), &faces).unwrap()
}

#[test]
fn builds_basic_members() {
    let (w, p) = build(&FamilyDescriptor::Wheel(5)).unwrap();
    assert_eq!(w.vertex_count(), 6);
    assert_eq!(w.degree(5), 5);
    assert_eq!(p, PrincipalPath { vk: 4, v1: 0, v2: 1 });

    let (bw, _) = build(&FamilyDescriptor::BrokenWheel(4)).unwrap();
    assert_eq!(bw.chords(), vec![(0, 2)]);

    let ins = d("(insert (wheel 5) t3 j=1)");
    let (g, p) = build(&ins).unwrap();
    assert_eq!(g.vertex_count(), 8);
    assert!(g.validate().is_valid());
    assert!(recognize_generalized_multi_wheel(&g, p).is_some());
    assert!(is_multi_wheel(&g, p));
    assert_eq!(ins.vertex_count(), 8);
}

#[test]
fn malformed_descriptors() {
    assert!(build(&FamilyDescriptor::Wheel(2)).is_err());
    // the facial triangle on v2 v3 of a broken wheel has v1 as third vertex
    assert!(build(&d("(insert (broken 4) t2 j=0)")).is_err());
    assert!(build(&d("(insert (wheel 4) t4 j=0)")).is_err());
    assert!(build(&d("(insert (wheel 4) t1 j=0)")).is_err());
    assert!(build(&d("(string (wheel 3))")).is_err());
    for bad in ["(wheel)", "(wheel 5", "(spoke 4)", "(insert (wheel 5) 3 j=1)", "(wheel 5) x", "(string)"] {
        assert!(bad.parse::<FamilyDescriptor>().is_err(), "{bad}");
    }
}

#[test]
fn sexpr_round_trip() {
    for s in [
        "(broken 4)",
        "(wheel 5)",
        "(glue (wheel 5) (broken 4))",
        "(insert (wheel 5) t3 j=2)",
        "(string (broken 4) (insert (wheel 4) t2 j=0))",
    ] {
        assert_eq!(d(s).to_string(), s);
    }
}

#[test]
fn broken_wheels_are_generalized_but_not_multi() {
    for k in 3..10 {
        let (g, p) = build(&FamilyDescriptor::BrokenWheel(k)).unwrap();
        assert_eq!(recognize_generalized_multi_wheel(&g, p), Some(FamilyDescriptor::BrokenWheel(k)));
        assert!(!is_multi_wheel(&g, p));
    }
    for k in 3..8 {
        let (g, p) = build(&FamilyDescriptor::Wheel(k)).unwrap();
        assert!(is_multi_wheel(&g, p));
    }
}

#[test]
fn non_members_are_rejected() {
    let g = icosahedron_minus_vertex();
    assert!(g.validate().is_valid());
    for v1 in 0..5 {
        let p = PrincipalPath { vk: (v1 + 4) % 5, v1, v2: (v1 + 1) % 5 };
        assert!(recognize_generalized_multi_wheel(&g, p).is_none());
    }
    // a face of three interior vertices
    let faces = [[1, 2, 3], [2, 0, 3], [4, 0, 1], [4, 1, 3], [5, 4, 3], [5, 3, 0], [5, 0, 4]];
    let g = PlaneNearTriangulation::from_faces(6, vec![0, 1, 2], &faces).unwrap();
    let p = PrincipalPath::of(&g);
    assert!(!facial_triangle_property(&g, p));
    assert!(recognize_generalized_multi_wheel(&g, p).is_none());
}

#[test]
fn enumeration_small_cases() {
    let four = enumerate_family(4);
    assert_eq!(four.len(), 3);
    let mut sizes: Vec<usize> = four.iter().map(FamilyDescriptor::vertex_count).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![3, 4, 4]);
    assert!(four.contains(&FamilyDescriptor::BrokenWheel(4)));
    assert!(four.contains(&FamilyDescriptor::Wheel(3)));
    let counts: Vec<usize> = (3..=8).map(|n| enumerate_family(n).len()).collect();
    assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
}

#[test]
fn enumeration_round_trips_and_is_duplicate_free() {
    let members = enumerate_family(9);
    let built: Vec<_> = members.iter().map(|m| build(m).unwrap()).collect();
    for (m, (g, p)) in members.iter().zip(&built) {
        assert!(g.validate().is_valid(), "{m}");
        assert!(facial_triangle_property(g, *p), "{m}");
        let r = recognize_generalized_multi_wheel(g, *p).unwrap_or_else(|| panic!("{m} not recognized"));
        let (h, q) = build(&r).unwrap();
        assert!(isomorphic_fixing_path(g, *p, &h, q), "{m} rebuilt from {r}");
    }
    for i in 0..built.len() {
        for j in 0..i {
            let (a, pa) = &built[i];
            let (b, pb) = &built[j];
            assert!(!isomorphic_fixing_path(a, *pa, b, *pb), "{} ~ {}", members[i], members[j]);
        }
    }
}

#[test]
fn mirrored_path_is_recognized() {
    let (g, p) = build(&d("(glue (insert (wheel 4) t2 j=1) (broken 4))")).unwrap();
    let mirrored = PrincipalPath { vk: p.v2, v1: p.v1, v2: p.vk };
    let r = recognize_generalized_multi_wheel(&g, mirrored).unwrap();
    let (h, q) = build(&r).unwrap();
    assert!(isomorphic_fixing_path(&g, mirrored, &h, q));
}

#[test]
fn iso_respects_the_path() {
    let (a, pa) = build(&d("(glue (wheel 4) (broken 3))")).unwrap();
    let (b, pb) = build(&d("(glue (broken 3) (wheel 4))")).unwrap();
    assert!(!isomorphic_fixing_path(&a, pa, &b, pb));
    let swapped = PrincipalPath { vk: pb.v2, v1: pb.v1, v2: pb.vk };
    assert!(isomorphic_fixing_path(&a, pa, &b, swapped));
    assert_ne!(plane_code(&a, pa), plane_code(&b, pb));
}

#[test]
fn wheel_strings() {
    let one = build_wheel_string(&[FamilyDescriptor::Wheel(5)]).unwrap();
    assert_eq!(one.clean, [4, 1]);
    assert!(one.cuts.is_empty());
    assert_eq!(one.majors, vec![0]);

    let two = build_wheel_string(&[FamilyDescriptor::BrokenWheel(4), FamilyDescriptor::BrokenWheel(4)]).unwrap();
    assert_eq!(two.graph.vertex_count(), 7);
    assert_eq!(two.cuts.len(), 1);
    assert_eq!(two.graph.edges().len(), 10);
    assert_eq!(crate::plane_graph::blocks(&two.graph).len(), 2);

    let t = 4;
    let fans = vec![FamilyDescriptor::BrokenWheel(3); t];
    let s = build_wheel_string(&fans).unwrap();
    assert_eq!(s.graph.vertex_count(), 2 * t + 1);
    for part in &s.parts {
        assert!(recognize_generalized_multi_wheel(&part.graph, part.path).is_some());
    }
    assert!(build_wheel_string(&[]).is_err());
}
