use super::*;

fn k3() -> PlaneNearTriangulation {
    PlaneNearTriangulation::from_faces(3, vec![0, 1, 2], &[[0, 1, 2]]).unwrap()
}

fn k4() -> PlaneNearTriangulation {
    PlaneNearTriangulation::from_faces(4, vec![0, 1, 2], &[[3, 0, 1], [3, 1, 2], [3, 2, 0]]).unwrap()
}

fn wheel(k: usize) -> PlaneNearTriangulation {
    let faces: Vec<[usize; 3]> = (0..k).map(|i| [k, i, (i + 1) % k]).collect();
    PlaneNearTriangulation::from_faces(k + 1, (0..k).collect(), &faces).unwrap()
}

fn broken_wheel_4() -> PlaneNearTriangulation {
    PlaneNearTriangulation::from_faces(4, vec![0, 1, 2, 3], &[[0, 1, 2], [0, 2, 3]]).unwrap()
}

fn octahedron() -> PlaneNearTriangulation {
    let faces = [
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 1],
        [5, 1, 2],
        [5, 2, 3],
        [5, 3, 4],
        [5, 4, 1],
    ];
    PlaneNearTriangulation::from_faces(6, vec![0, 1, 2], &faces).unwrap()
}

fn stacked_k4() -> PlaneNearTriangulation {
    // vertex 4 stacked into face (3, 0, 1) of k4
    let faces = [[3, 1, 2], [3, 2, 0], [4, 3, 0], [4, 0, 1], [4, 1, 3]];
    PlaneNearTriangulation::from_faces(5, vec![0, 1, 2], &faces).unwrap()
}

#[test]
fn small_graphs_validate() {
    for g in [k3(), k4(), wheel(5), broken_wheel_4(), octahedron(), stacked_k4()] {
        let report = g.validate();
        assert!(report.is_valid(), "{report}");
        let faces = g.trace_faces();
        assert_eq!(faces.len(), g.edge_count() + 2 - g.vertex_count());
    }
    assert_eq!(k4().trace_faces().len(), 4);
}

#[test]
fn chordless_square_is_rejected() {
    let rotation = vec![vec![3, 1], vec![0, 2], vec![1, 3], vec![2, 0]];
    let g = PlaneNearTriangulation::from_parts_unchecked(rotation, vec![0, 1, 2, 3]);
    let report = g.validate();
    assert_eq!(report.violations.len(), 1);
    assert!(matches!(&report.violations[0], Violation::InnerFaceLength { face } if face.len() == 4));
    assert!(report.to_string().contains("inner face of length 4"));
}

#[test]
fn degenerate_and_broken_inputs() {
    let g = PlaneNearTriangulation::from_parts_unchecked(vec![vec![1], vec![0]], vec![0, 1]);
    assert_eq!(g.validate().violations, vec![Violation::TooFewVertices(2)]);

    let mut rot: Vec<Vec<usize>> = (0..4).map(|v| k4().rotation(v).to_vec()).collect();
    rot[0].push(0);
    let report = PlaneNearTriangulation::from_parts_unchecked(rot, vec![0, 1, 2]).validate();
    assert!(report.violations.contains(&Violation::Loop(0)));

    // reversed outer cycle
    let g = k4();
    let rot: Vec<Vec<usize>> = (0..4).map(|v| g.rotation(v).to_vec()).collect();
    let report = PlaneNearTriangulation::from_parts_unchecked(rot.clone(), vec![0, 2, 1]).validate();
    assert!(matches!(&report.violations[0], Violation::BadOuterCycle(s) if s.contains("reversed")));

    // swapping two neighbours of the hub breaks planarity of the rotation
    let mut bad = rot;
    bad[3].swap(0, 1);
    let report = PlaneNearTriangulation::from_parts_unchecked(bad, vec![0, 1, 2]).validate();
    assert!(!report.is_valid());
}

#[test]
fn chords_examples() {
    assert!(k4().chords().is_empty());
    assert_eq!(broken_wheel_4().chords(), vec![(0, 2)]);
    assert!(wheel(5).chords().is_empty());
}

#[test]
fn separating_cycles_examples() {
    for k in 3..8 {
        assert!(wheel(k).separating_cycles(3).unwrap().is_empty());
        assert!(wheel(k).separating_cycles(4).unwrap().is_empty());
    }
    assert!(octahedron().separating_cycles(3).unwrap().is_empty());
    // the equator around the bottom vertex does separate
    assert!(octahedron().separating_cycles(4).unwrap().contains(&vec![1, 2, 3, 4]));
    assert_eq!(stacked_k4().separating_cycles(3).unwrap(), vec![vec![0, 1, 3]]);
    assert!(k4().separating_cycles(5).is_err());
}

#[test]
fn facial_triangles_cover_all_triangles_without_separators() {
    for g in [k4(), wheel(6), octahedron(), stacked_k4()] {
        let facial: HashSet<Vec<usize>> = g
            .inner_faces()
            .iter()
            .map(|f| {
                let mut t = f.to_vec();
                t.sort_unstable();
                t
            })
            .collect();
        let mut outer = g.outer_cycle().to_vec();
        outer.sort_unstable();
        let non_facial: Vec<_> = g
            .cycles_of_length(3)
            .into_iter()
            .filter(|t| !facial.contains(t) && *t != outer)
            .collect();
        assert_eq!(non_facial.is_empty(), g.separating_cycles(3).unwrap().is_empty());
    }
}

#[test]
fn split_broken_wheel_on_chord() {
    let g = broken_wheel_4();
    let split = g.split_along(&[0, 2]).unwrap();
    assert_eq!(split.part_one.vertex_count(), 3);
    assert_eq!(split.part_two.vertex_count(), 3);
    assert!(split.part_one.validate().is_valid());
    assert!(split.part_two.validate().is_valid());
    assert_eq!(split.shared_boundary, vec![0, 2]);
}

#[test]
fn split_through_interior_vertex() {
    // wheel(5) with hub 5: path v2 - hub - v5 (labels 1, 5, 4)
    let g = wheel(5);
    let split = g.split_along(&[1, 5, 4]).unwrap();
    let faces = |p: &PlaneNearTriangulation| p.inner_faces().len();
    assert_eq!(faces(&split.part_one) + faces(&split.part_two), g.inner_faces().len());
    let sizes = {
        let mut s = [split.part_one.vertex_count(), split.part_two.vertex_count()];
        s.sort_unstable();
        s
    };
    assert_eq!(sizes, [4, 5]);
    let shared: HashSet<usize> = split.to_original_one.iter().copied().collect::<HashSet<_>>()
        .intersection(&split.to_original_two.iter().copied().collect())
        .copied()
        .collect();
    assert_eq!(shared, [1, 4, 5].into_iter().collect());
}

#[test]
fn split_errors() {
    let g = wheel(5);
    assert!(matches!(g.split_along(&[5, 1]), Err(GraphError::BadPath(_))));
    assert!(g.split_along(&[1, 1]).is_err());
    assert!(g.split_along(&[0, 1]).is_err(), "outer edge is not a chord");
    assert!(g.split_along(&[0, 2]).is_err(), "not adjacent");
}

#[test]
fn blocks_examples() {
    let path = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
    assert_eq!(blocks(&path), vec![vec![0, 1], vec![1, 2]]);
    assert_eq!(blocks(&wheel(5)), vec![(0..6).collect::<Vec<_>>()]);
    let bowtie = SimpleGraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]);
    assert_eq!(blocks(&bowtie), vec![vec![0, 1, 2], vec![2, 3, 4]]);
    let isolated = SimpleGraph::new(2);
    assert_eq!(blocks(&isolated), vec![vec![0], vec![1]]);
}

#[test]
fn every_chord_split_preserves_faces() {
    let faces = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5]];
    let g = PlaneNearTriangulation::from_faces(6, (0..6).collect(), &faces).unwrap();
    for (a, b) in g.chords() {
        let s = g.split_along(&[a, b]).unwrap();
        assert_eq!(s.part_one.inner_faces().len() + s.part_two.inner_faces().len(), 4);
    }
}
