use cyclic_higgs::clifford::{commutator_trace_check, trace_map, traceless_decompose};
use cyclic_higgs::correspondence::{
    check_divisor_relation, divisor_of_function, divisor_of_map, forward_spectral_data, round_trip, sum_divisors,
};
use cyclic_higgs::higgs::{from_spectral_module, random_cyclic_data, random_poly, to_spectral_module, verify_loop_relation, CyclicHiggsData};
use cyclic_higgs::json::{higgs_from_json, higgs_to_json, spectral_data_from_json, spectral_data_to_json};
use cyclic_higgs::polyalg::{Field, Matrix, PolyMatrix, Ring, XPoly, XTPoly};
use cyclic_higgs::reduction::{basis_symbols, ReducedElement};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f() -> Field {
    Field::default_prime()
}

fn random_reduced(field: Field, m: usize, rng: &mut ChaCha8Rng) -> ReducedElement {
    let mut a = ReducedElement::zero(field, m);
    for sym in basis_symbols(m) {
        let coeffs = (0..2).map(|_| random_poly(field, 1, rng)).collect();
        a.add_term(sym, XTPoly::from_coeffs(field, coeffs));
    }
    a
}

/// Random cyclic data with equal dims whose curve passes the supported-regime filter.
fn supported_instance(p: usize, m: usize, seed: u64) -> Option<CyclicHiggsData> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..20).find_map(|_| {
        let h = random_cyclic_data(f(), &vec![p; m], 1, &mut rng).ok()?;
        forward_spectral_data(&h).ok().map(|_| h)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reduced_multiplication_is_associative(seed in any::<u64>(), m in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_reduced(f(), m, &mut rng), random_reduced(f(), m, &mut rng), random_reduced(f(), m, &mut rng));
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn spectral_module_round_trips(seed in any::<u64>(), dims in prop::collection::vec(1usize..4, 1..5)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_cyclic_data(f(), &dims, 2, &mut rng).unwrap();
        let s = to_spectral_module(&h);
        prop_assert!(verify_loop_relation(&s));
        prop_assert_eq!(from_spectral_module(&s).unwrap(), h);
    }

    #[test]
    fn trace_properties(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_reduced(f(), 2, &mut rng), random_reduced(f(), 2, &mut rng));
        let d = traceless_decompose(&a).unwrap();
        prop_assert_eq!(d.reassemble().unwrap(), a.clone());
        prop_assert!(trace_map(&d.traceless).unwrap().is_zero());
        // linearity
        let lhs = trace_map(&a.add(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, trace_map(&a).unwrap() + trace_map(&b).unwrap());
        prop_assert!(commutator_trace_check(f(), &[(a, b)]).unwrap());
    }

    #[test]
    fn higgs_json_round_trips(seed in any::<u64>(), dims in prop::collection::vec(1usize..3, 1..4), rational in any::<bool>()) {
        let field = if rational { Field::Rationals } else { f() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_cyclic_data(field, &dims, 2, &mut rng).unwrap();
        prop_assert_eq!(higgs_from_json(&higgs_to_json(&h)).unwrap(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// `div(ψ₁ ∘ ψ₀) = div ψ₀ + div ψ₁` and `len div t = deg_x c(x, 0)`.
    #[test]
    fn divisors_are_additive(seed in any::<u64>(), p in 1usize..3) {
        let Some(h) = supported_instance(p, 3, seed) else { return Ok(()) };
        let sd = forward_spectral_data(&h).unwrap();
        let s = to_spectral_module(&h);
        let composite = &s.psi[1] * &s.psi[0];
        let lhs = divisor_of_map(&composite, &s.modules[0], &s.modules[2]).unwrap();
        prop_assert_eq!(lhs, sum_divisors(&sd.divisors[0], &sd.divisors[1], &sd.c).unwrap());
        let div_t = divisor_of_function(&XTPoly::t(f()), &sd.c).unwrap();
        prop_assert_eq!(Some(div_t.length()), sd.c.coeff(0).degree());
        prop_assert_eq!(sd.divisors.iter().map(|d| d.length()).sum::<usize>(), div_t.length());
        prop_assert!(check_divisor_relation(&sd.divisors, &sd.c).unwrap());
    }

    /// Changing the frame at vertex 0 by a unimodular matrix leaves the divisors alone.
    #[test]
    fn divisors_ignore_unimodular_frames(seed in any::<u64>(), m in 1usize..4) {
        let Some(h) = supported_instance(2, m, seed) else { return Ok(()) };
        let field = f();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let a = random_poly(field, 1, &mut rng);
        let o = XPoly::one(field);
        let z = XPoly::zero(field);
        let u = Matrix::from_rows(field, vec![vec![o.clone(), a.clone()], vec![z.clone(), o.clone()]]).unwrap();
        let u_inv = Matrix::from_rows(field, vec![vec![o.clone(), -a], vec![z, o]]).unwrap();
        let mut phi: Vec<PolyMatrix> = h.phi().to_vec();
        phi[0] = &phi[0] * &u;
        phi[m - 1] = &u_inv * &phi[m - 1];
        let h2 = CyclicHiggsData::new(field, h.dims().to_vec(), phi).unwrap();
        let (d1, d2) = (forward_spectral_data(&h).unwrap(), forward_spectral_data(&h2).unwrap());
        prop_assert_eq!(d1.c, d2.c);
        prop_assert_eq!(d1.divisors, d2.divisors);
    }

    #[test]
    fn rank_one_round_trips_find_intertwiners(seed in any::<u64>(), m in 1usize..4) {
        let Some(h) = supported_instance(1, m, seed) else { return Ok(()) };
        let r = round_trip(&h, 2).unwrap();
        prop_assert!(r.spectral_invariants_equal);
        prop_assert!(r.intertwiner_found());
    }

    #[test]
    fn spectral_data_json_round_trips(seed in any::<u64>(), p in 1usize..3, m in 1usize..4) {
        let Some(h) = supported_instance(p, m, seed) else { return Ok(()) };
        let sd = forward_spectral_data(&h).unwrap();
        prop_assert_eq!(spectral_data_from_json(&spectral_data_to_json(&sd)).unwrap(), sd);
    }
}

#[test]
fn supported_instances_are_common() {
    for p in 1..3 {
        for m in 1..4 {
            let found = (0..10).filter(|&s| supported_instance(p, m, s).is_some()).count();
            assert_eq!(found, 10, "p = {p}, m = {m}");
        }
    }
}
