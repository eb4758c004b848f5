use fqt_domain::oracle::{random_gamma_word, random_triple};
use fqt_domain::{membership, orbit_equivalent, psi_h, reduce, Field};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reduction_is_a_class_invariant(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
        let field = Field::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_triple(&field, 3, &mut rng);
        let g = random_gamma_word(&field, 5, 2, &mut rng);
        let gt = g.act_triple(&t);

        let r = reduce(&t).unwrap();
        prop_assert!(membership(&r.reduced).in_domain());
        prop_assert_eq!(r.gamma.matrix().act_triple(&t), r.reduced.clone());
        prop_assert_eq!(r.steps, r.gamma.len());
        prop_assert_eq!(&reduce(&gt).unwrap().reduced, &r.reduced);

        let w = orbit_equivalent(&t, &gt).unwrap().expect("same orbit");
        prop_assert_eq!(w.act_triple(&t), gt);

        let step = psi_h(&r.reduced).unwrap();
        prop_assert!(membership(&step.post_reduced).in_domain());
    }
}
