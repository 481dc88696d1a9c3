use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use z5lab::families::{build, enumerate_family, isomorphic_fixing_path, recognize_generalized_multi_wheel};
use z5lab::gcg::{self, GcgDocument};
use z5lab::group_color::{is_proper, respects, shift_phi, tau, ColorSystem, PhiAssignment};
use z5lab::propcheck::{
    color_system, random_forbidden, random_near_triangulation, random_phi, random_proper_path, random_triangulation,
    PhiMode,
};
use z5lab::solver::{count_colorings, enumerate_colorings, extend_two, ExtensionProblem};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tau_is_an_involution(value in 0u8..5, alpha in 0u8..5, reversed: bool) {
        let mut phi = PhiAssignment::new(5).unwrap();
        let (a, b) = if reversed { (1, 0) } else { (0, 1) };
        phi.insert(a, b, value).unwrap();
        let there = tau(&phi, 0, alpha, 1).unwrap();
        prop_assert_eq!(tau(&phi, 1, there, 0).unwrap(), alpha);
    }

    #[test]
    fn triangulations_are_valid_and_seeded(n in 3usize..30, seed: u64) {
        let g = random_triangulation(n, seed).unwrap();
        prop_assert!(g.validate().is_valid());
        prop_assert_eq!(g.edge_count(), 3 * n - 6);
        prop_assert_eq!(g.outer_len(), 3);
        prop_assert_eq!(gcg::write(&GcgDocument::plain(g)), gcg::write(&GcgDocument::plain(random_triangulation(n, seed).unwrap())));
    }

    #[test]
    fn gcg_round_trips(n in 3usize..14, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_near_triangulation(n, &mut rng);
        let phi = random_phi(&g, PhiMode::Uniform, &mut rng);
        let lists: Vec<_> = g.outer_cycle().iter().map(|&v| (v, random_forbidden(3, &mut rng))).collect();
        let cs = color_system(n, &lists, &[(rng.gen_range(0..n), rng.gen_range(0..5))]);
        let text = gcg::write(&GcgDocument { graph: g, phi, colors: cs, descriptor: None, origin: None });
        prop_assert_eq!(gcg::write(&gcg::parse(&text).unwrap()), text);
    }

    #[test]
    fn counts_ignore_orientation_and_shifts(n in 3usize..8, seed: u64, v0 in 0usize..8, alpha in 0u8..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_near_triangulation(n, &mut rng);
        let phi = random_phi(&g, PhiMode::Uniform, &mut rng);
        let lists: Vec<_> = (0..n).map(|v| (v, random_forbidden(2, &mut rng))).collect();
        let cs = color_system(n, &lists, &[]);
        let v0 = v0 % n;
        let count = count_colorings(&g, &phi, &cs).unwrap();
        prop_assert_eq!(count_colorings(&g, &phi.flipped(), &cs).unwrap(), count);
        prop_assert_eq!(count_colorings(&g, &shift_phi(&phi, v0, alpha), &cs.shifted(v0, alpha)).unwrap(), count);
        let all = enumerate_colorings(&g, &phi, &cs, None).unwrap();
        prop_assert_eq!(all.len() as u64, count);
        prop_assert!(all.iter().all(|c| is_proper(&phi, c) && respects(&cs, c)));
    }

    #[test]
    fn outer_edges_always_extend(n in 3usize..25, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_near_triangulation(n, &mut rng);
        let phi = random_phi(&g, PhiMode::Uniform, &mut rng);
        let outer = g.outer_cycle().to_vec();
        let path = vec![outer[0], outer[1]];
        let lists: Vec<_> = outer[2..].iter().map(|&v| (v, random_forbidden(2, &mut rng))).collect();
        let colors = random_proper_path(&g, &phi, &path, &mut rng);
        let pre: Vec<(usize, u8)> = path.iter().copied().zip(colors).collect();
        let cs = color_system(n, &lists, &pre);
        let c = extend_two(&ExtensionProblem::new(g, phi.clone(), cs.clone(), path).unwrap()).unwrap();
        prop_assert!(is_proper(&phi, &c) && respects(&cs, &c));
    }

    #[test]
    fn members_are_recognised(index in 0usize..10_000) {
        let members = enumerate_family(8);
        let d = &members[index % members.len()];
        let (g, p) = build(d).unwrap();
        prop_assert!(g.validate().is_valid());
        let found = recognize_generalized_multi_wheel(&g, p);
        prop_assert!(found.is_some());
        let (h, q) = build(&found.unwrap()).unwrap();
        prop_assert!(isomorphic_fixing_path(&g, p, &h, q));
    }
}

#[test]
fn zero_labels_give_the_chromatic_polynomial() {
    // P(K4, 5) = 5 * 4 * 3 * 2
    let g = random_triangulation(4, 0).unwrap();
    let phi = PhiAssignment::zero(&g, 5).unwrap();
    assert_eq!(count_colorings(&g, &phi, &ColorSystem::new(4, 5).unwrap()).unwrap(), 120);
}
