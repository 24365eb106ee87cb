use berkram::berkline::{image_point, BerkPoint, Skeleton};
use berkram::cli::sample::{random_element, random_map, random_type2_point};
use berkram::cli::{parse_element, parse_map, parse_point, run, Command, RunConfig};
use berkram::mult::{directional_data, local_degree};
use berkram::ratmap::{compose_mobius, Mobius, Poly, RationalMap};
use berkram::valfield::{exp_int, Exp, FiniteField, Puiseux, Radical, Rationals, ValuedField};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q2() -> Puiseux<Rationals> {
    Puiseux::new(Rationals, exp_int(32), 2)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn element_print_parse_round_trip(seed in any::<u64>()) {
        let k = q2();
        let a = random_element(&k, &mut rng(seed), -2).unwrap();
        let back = parse_element(&k, &k.fmt_elem(&a)).unwrap();
        prop_assert_eq!(back, a);

        let f = Puiseux::new(FiniteField::of_order(3, 2).unwrap(), exp_int(32), 1);
        let a = random_element(&f, &mut rng(seed), 0).unwrap();
        prop_assert_eq!(parse_element(&f, &f.fmt_elem(&a)).unwrap(), a);
    }

    #[test]
    fn map_print_parse_round_trip(seed in any::<u64>(), d in 1usize..=4) {
        let k = q2();
        let phi = random_map(&k, &mut rng(seed), d).unwrap();
        let back = parse_map(&k, &phi.fmt(&k)).unwrap();
        prop_assert_eq!(back.fmt(&k), phi.fmt(&k));
        prop_assert_eq!(back.d, d);
    }

    #[test]
    fn point_print_parse_round_trip(seed in any::<u64>()) {
        let k = q2();
        let x = random_type2_point(&k, &mut rng(seed)).unwrap();
        let back = parse_point(&k, &x.fmt(&k)).unwrap();
        prop_assert!(back.same(&k, &x).unwrap());
    }

    #[test]
    fn rho_is_a_tree_metric(seed in any::<u64>()) {
        let k = q2();
        let mut r = rng(seed);
        let x = random_type2_point(&k, &mut r).unwrap();
        let y = random_type2_point(&k, &mut r).unwrap();
        let z = random_type2_point(&k, &mut r).unwrap();
        let d = |a: &BerkPoint<_>, b: &BerkPoint<_>| a.rho(&k, b).unwrap().unwrap();
        prop_assert_eq!(d(&x, &x), exp_int(0));
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        // the path from x to y passes through their join
        let j = x.join(&k, &y).unwrap();
        prop_assert_eq!(d(&x, &j) + d(&j, &y), d(&x, &y));
    }

    #[test]
    fn hull_of_hull_vertices_is_the_same_tree(seed in any::<u64>(), n in 1usize..=5) {
        let k = q2();
        let mut r = rng(seed);
        let pts: Vec<_> = (0..n).map(|_| random_type2_point(&k, &mut r).unwrap()).collect();
        let h = Skeleton::hull(&k, &pts).unwrap();
        prop_assert!(h.is_tree());
        let verts: Vec<_> = h.vertices.iter().map(|v| v.point.clone()).collect();
        let h2 = Skeleton::hull(&k, &verts).unwrap();
        prop_assert_eq!(h2.vertices.len(), h.vertices.len());
        prop_assert_eq!(h2.edges.len(), h.edges.len());
        for v in &h.vertices {
            prop_assert!(h2.find(&k, &v.point).unwrap().is_some());
        }
    }

    #[test]
    fn balance_identity_holds(seed in any::<u64>(), d in 1usize..=4) {
        let k = q2();
        let mut r = rng(seed);
        let phi = random_map(&k, &mut r, d).unwrap();
        let x = random_type2_point(&k, &mut r).unwrap();
        let ld = directional_data(&k, &phi, &x).unwrap();
        prop_assert!(ld.balance_holds());
        prop_assert_eq!(ld.m + ld.surplus_total(), d);
    }

    #[test]
    fn local_degree_is_coordinate_free(seed in any::<u64>(), d in 1usize..=3) {
        let k = Radical::new(5, 2, exp_int(48)).unwrap();
        let mut r = rng(seed);
        let phi = random_map(&k, &mut r, d).unwrap();
        let x = random_type2_point(&k, &mut r).unwrap();
        let beta = random_element(&k, &mut r, 0).unwrap();
        // sigma(z) = 1/z + beta moves x; phi o sigma has the same degree at sigma^-1(x)
        let sigma = Mobius::affine(&k, k.one(), beta.clone())
            .unwrap()
            .compose(&k, &Mobius::inversion(&k));
        let psi = compose_mobius(&k, &Mobius::identity(&k), &phi, &sigma).unwrap();
        let z_minus_beta = Poly::new(&k, vec![k.neg(&beta), k.one()]);
        let sigma_inv = RationalMap::new(&k, Poly::constant(&k, k.one()), z_minus_beta).unwrap();
        let y = image_point(&k, &sigma_inv, &x).unwrap();
        prop_assert_eq!(local_degree(&k, &psi, &y).unwrap(), local_degree(&k, &phi, &x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn json_output_is_deterministic(seed in any::<u64>()) {
        let k = Puiseux::new(Rationals, exp_int(48), 1);
        let phi = random_map(&k, &mut rng(seed), 3).unwrap();
        let cfg = RunConfig { precision: Exp::from_integer(32), ..RunConfig::default() };
        let cmd = Command::Analyze { map: phi.fmt(&k) };
        let a = run(&cfg, &cmd).unwrap().json.to_string();
        let b = run(&cfg, &cmd).unwrap().json.to_string();
        prop_assert_eq!(a, b);
    }
}
