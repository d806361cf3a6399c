mod common;

use common::{pair_in, poly_in};
use proptest::prelude::*;
use steenrod_hit::steenrod::{chi_trick_certificate, chi_trick_residue};
use steenrod_hit::{chi_sq, sq, Polynomial};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ring_laws((f, g) in pair_in(4, 5), h_seed in 0u32..4) {
        let h = sq(h_seed, &f);
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert!((&f + &f).is_zero());
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn frobenius((f, g) in pair_in(4, 5)) {
        prop_assert_eq!((&f + &g).square(), &f.square() + &g.square());
        prop_assert_eq!(f.square(), &f * &f);
    }

    #[test]
    fn cartan((f, g) in pair_in(4, 4), k in 0u32..10) {
        let mut rhs = Polynomial::zero(f.nvars());
        for i in 0..=k {
            rhs = &rhs + &(&sq(i, &f) * &sq(k - i, &g));
        }
        prop_assert_eq!(sq(k, &(&f * &g)), rhs);
    }

    #[test]
    fn sq1_is_a_derivation((f, g) in pair_in(5, 4)) {
        let lhs = sq(1, &(&f * &g));
        prop_assert_eq!(lhs, &(&sq(1, &f) * &g) + &(&f * &sq(1, &g)));
        prop_assert!(sq(1, &sq(1, &f)).is_zero());
    }

    #[test]
    fn linearity((f, g) in pair_in(5, 5), k in 0u32..12) {
        prop_assert_eq!(sq(k, &(&f + &g)), &sq(k, &f) + &sq(k, &g));
        prop_assert_eq!(chi_sq(k, &(&f + &g)), &chi_sq(k, &f) + &chi_sq(k, &g));
    }

    #[test]
    fn instability_and_top_square(n in 1usize..=3, d in 0u32..7, seed in any::<u64>()) {
        let f = homogeneous(n, d, seed);
        prop_assert_eq!(sq(d, &f), f.square());
        for i in d + 1..d + 4 {
            prop_assert!(sq(i, &f).is_zero());
        }
        prop_assert_eq!(sq(0, &f), f);
    }

    #[test]
    fn adem_sq1_sq2n(f in (1usize..=3).prop_flat_map(|n| poly_in(n, 4, 4)), k in 1u32..5) {
        // Sq^1 Sq^{2k} = Sq^{2k+1}
        prop_assert_eq!(sq(1, &sq(2 * k, &f)), sq(2 * k + 1, &f));
        // Sq^1 Sq^{2k+1} = 0
        prop_assert!(sq(1, &sq(2 * k + 1, &f)).is_zero());
    }

    #[test]
    fn antipode_both_sides(f in (1usize..=3).prop_flat_map(|n| poly_in(n, 6, 5)), k in 1u32..=10) {
        let mut left = Polynomial::zero(f.nvars());
        let mut right = Polynomial::zero(f.nvars());
        for j in 0..=k {
            left = &left + &sq(k - j, &chi_sq(j, &f));
            right = &right + &chi_sq(k - j, &sq(j, &f));
        }
        prop_assert!(left.is_zero());
        prop_assert!(right.is_zero());
    }

    #[test]
    fn chi_trick_certificates((u, v) in pair_in(3, 3), k in 1u32..5) {
        let r = chi_trick_residue(&u, k, &v).unwrap();
        let cert = chi_trick_certificate(&u, k, &v).unwrap();
        prop_assert!(cert.verify(&r));
    }
}

fn homogeneous(n: usize, d: u32, seed: u64) -> Polynomial {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let terms = rng.gen_range(1..=4);
    steenrod_hit::verify::random_homogeneous(&mut rng, n, d, terms)
}

#[test]
fn chi_on_one_variable() {
    // chi(Sq^k) x is x^{k+1} when k + 1 is a power of two and 0 otherwise
    let x = Polynomial::var(1, 0).unwrap();
    for k in 0..64u32 {
        let expected = if (k + 1).is_power_of_two() {
            x.pow(u64::from(k) + 1)
        } else {
            Polynomial::zero(1)
        };
        assert_eq!(chi_sq(k, &x), expected, "k = {k}");
    }
}
