use distlab_core::abgroup::FgAbGroup;
use distlab_core::cyclotomic::CycNum;
use distlab_core::distribution::{
    all_divisor_relations, distribution_relations, om_quotient, predistribution_relations,
    um_quotient,
};
use distlab_core::linalg::Lattice;
use distlab_core::ntheory::{euler_phi, gcd};
use distlab_core::spectral::tate_cohomology;
use distlab_core::stickelberger::{omega_vector, Units};
use distlab_core::Rat;
use proptest::prelude::*;

fn level(max: u64) -> impl Strategy<Value = u64> {
    (1..=max).prop_filter("m = 2 mod 4", |m| m % 4 != 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn composite_relations_are_redundant(m in level(60)) {
        for (dist, prime_only) in [(true, distribution_relations(m)), (false, predistribution_relations(m))] {
            let all = Lattice::from_int_rows(&all_divisor_relations(m, dist));
            prop_assert_eq!(all, Lattice::from_int_rows(&prime_only));
        }
    }

    #[test]
    fn distributions_are_free_of_rank_phi(m in level(60)) {
        let want = FgAbGroup::free(euler_phi(m) as usize);
        prop_assert_eq!(um_quotient(m).group().clone(), want.clone());
        prop_assert_eq!(om_quotient(m).group().clone(), want);
    }

    #[test]
    fn galois_twists_omega(m in level(80).prop_filter("small", |m| *m >= 3), s in 1u64..80, k in 0i64..80) {
        prop_assume!(gcd(s, m) == 1);
        let u = Units::new(m);
        let w = omega_vector(&u, k);
        // sigma_s sends the coefficient at t to the one at s t.
        let mut moved = vec![Rat::zero(); u.len()];
        for (i, &t) in u.elems().iter().enumerate() {
            moved[u.pos((s * t) as i64)] = w[i].clone();
        }
        prop_assert_eq!(moved, omega_vector(&u, k * s as i64));
    }

    #[test]
    fn galois_action_is_multiplicative(
        n in prop::sample::select(vec![5u64, 7, 8, 9, 12, 15, 20]),
        a in prop::collection::vec((0i64..20, -3i64..4), 1..5),
        b in prop::collection::vec((0i64..20, -3i64..4), 1..5),
        s in 1i64..20,
    ) {
        prop_assume!(gcd(s as u64, n) == 1);
        let x = CycNum::from_exponents(n, a.into_iter().map(|(e, c)| (e, Rat::from(c))));
        let y = CycNum::from_exponents(n, b.into_iter().map(|(e, c)| (e, Rat::from(c))));
        prop_assert_eq!(x.mul(&y).galois(s), x.galois(s).mul(&y.galois(s)));
        prop_assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn tate_cohomology_is_two_periodic(m in level(40).prop_filter("small", |m| *m >= 3), q in -2i32..2) {
        let c = distlab_core::distribution::conjugation(m);
        prop_assert_eq!(tate_cohomology(&c, q).unwrap(), tate_cohomology(&c, q + 2).unwrap());
    }
}
