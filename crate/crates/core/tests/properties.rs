use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use subdiv::modulus::{area, brute_force_modulus, circumference, height, modulus, Carrier, Mode, WeightFunction, Which};
use subdiv::random::{random_quad, random_ring};
use subdiv::rules::{builtin, subdivide_n, subdivide_quad, subdivide_ring};

fn mode(i: u8) -> Mode {
    [Mode::Vertex, Mode::TileSkinny, Mode::TileFat][i as usize % 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heights_and_areas_scale(seed in any::<u64>(), weights in prop::collection::vec(0.0f64..5.0, 14), c in 0.01f64..100.0) {
        let r = random_ring(&mut ChaCha8Rng::seed_from_u64(seed), 14);
        let n = r.complex().n_vertices();
        let w = WeightFunction::new(Carrier::Vertices, weights[..n].to_vec()).unwrap();
        let ws = w.scaled(c);
        let h = height(&r, &w, Mode::Vertex).unwrap();
        prop_assert!((height(&r, &ws, Mode::Vertex).unwrap() - c * h).abs() <= 1e-9 * (1.0 + c * h));
        let l = circumference(&r, &w, Mode::Vertex).unwrap();
        prop_assert!((circumference(&r, &ws, Mode::Vertex).unwrap() - c * l).abs() <= 1e-9 * (1.0 + c * l));
        prop_assert!((area(&ws) - c * c * area(&w)).abs() <= 1e-9 * (1.0 + c * c * area(&w)));
    }

    #[test]
    fn solver_agrees_with_oracle(seed in any::<u64>(), m in 0u8..3, sup in any::<bool>(), quad in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let which = if sup || quad { Which::Sup } else { Which::Inf };
        let (a, b) = if quad {
            let q = random_quad(&mut rng, 10);
            (modulus(&q, mode(m), which, 1e-9).unwrap().value, brute_force_modulus(&q, mode(m), which).unwrap().value)
        } else {
            let r = random_ring(&mut rng, 9);
            (modulus(&r, mode(m), which, 1e-9).unwrap().value, brute_force_modulus(&r, mode(m), which).unwrap().value)
        };
        prop_assert!((a - b).abs() <= 1e-6, "{} vs {}", a, b);
    }

    #[test]
    fn subdivision_is_deterministic_and_keeps_topology(seed in any::<u64>(), hex in any::<bool>(), n in 1usize..3) {
        let rule = builtin(if hex { "hexagonal" } else { "barycentric" }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = random_ring(&mut rng, 12);
        let s = subdivide_ring(&r, &rule, n).unwrap();
        prop_assert_eq!(s.complex().euler_characteristic(), 0);
        prop_assert_eq!(s.complex().to_json(), subdivide_n(r.complex(), &rule, n).unwrap().to_json());
        let q = random_quad(&mut rng, 10);
        let t = subdivide_quad(&q, &rule, n).unwrap();
        prop_assert_eq!(t.complex().euler_characteristic(), 1);
        prop_assert_eq!(t.complex().to_json(), subdivide_quad(&q, &rule, n).unwrap().complex().to_json());
    }

    #[test]
    fn solver_is_deterministic(seed in any::<u64>(), m in 0u8..3) {
        let r = random_ring(&mut ChaCha8Rng::seed_from_u64(seed), 14);
        let a = modulus(&r, mode(m), Which::Sup, 1e-7).unwrap();
        let b = modulus(&r, mode(m), Which::Sup, 1e-7).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.weights.weights, b.weights.weights);
    }
}
