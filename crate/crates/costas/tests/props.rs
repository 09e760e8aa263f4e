//! Property tests over random permutations and round trips.

use costas::constructions::{detect_divisors, project};
use costas::{ParityCensus, PermutationArray};
use proptest::prelude::*;

fn permutation(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
}

proptest! {
    #[test]
    fn census_identities(pi in permutation(40)) {
        let n = pi.len();
        let arr = PermutationArray::new(pi).unwrap();
        let census = arr.parity_census();
        prop_assert!(census.satisfies_identities(n));
    }

    #[test]
    fn costas_verdict_constant_on_dihedral_orbit(pi in permutation(24)) {
        let arr = PermutationArray::new(pi).unwrap();
        let verdict = arr.is_costas().is_costas;
        for member in arr.d4_orbit() {
            prop_assert_eq!(member.is_costas().is_costas, verdict);
        }
    }

    #[test]
    fn rotation_has_order_four(pi in permutation(24)) {
        let arr = PermutationArray::new(pi).unwrap();
        let r = arr.rotate90();
        prop_assert_eq!(r.rotate90().rotate90().rotate90(), arr.clone());
        prop_assert_eq!(arr.reflect_transpose().reflect_transpose(), arr);
    }

    #[test]
    fn rotation_census_rule_even_orders(pi in permutation(20)) {
        let arr = PermutationArray::new(pi).unwrap();
        if arr.n() % 2 == 0 {
            let c = arr.parity_census();
            let r = arr.rotate90().parity_census();
            prop_assert_eq!(r, ParityCensus { ee: c.oe, oo: c.eo, eo: c.ee, oe: c.oo });
        }
    }

    #[test]
    fn text_and_json_round_trip(pi in permutation(30)) {
        let arr = PermutationArray::new(pi).unwrap();
        prop_assert_eq!(PermutationArray::from_text(&arr.to_text()).unwrap(), arr.clone());
        let json = serde_json::to_string(&arr).unwrap();
        prop_assert_eq!(serde_json::from_str::<PermutationArray>(&json).unwrap(), arr);
    }

    #[test]
    fn projection_agrees_with_detection(pi in permutation(30)) {
        let arr = PermutationArray::new(pi).unwrap();
        let detected = detect_divisors(&arr);
        for r in 2..=arr.n() {
            let outcome = project(&arr, r);
            if detected.contains(&r) {
                let sub = outcome.unwrap();
                prop_assert_eq!(sub.n(), arr.n() / r);
                for (u, v) in sub.dots() {
                    prop_assert_eq!(arr.at(r * u), r * v);
                }
            } else {
                prop_assert!(outcome.is_err());
            }
        }
    }

    #[test]
    fn d4_orbit_size_divides_eight(pi in permutation(16)) {
        let arr = PermutationArray::new(pi).unwrap();
        let orbit = arr.d4_orbit();
        prop_assert!(matches!(orbit.len(), 1 | 2 | 4 | 8));
        prop_assert!(orbit.contains(&arr));
    }
}
