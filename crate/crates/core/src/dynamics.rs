//! Right translation by `h = diag(t, 1)` transported to triples, and its
//! version on canonical representatives.

use crate::domain::{membership, reduce};
use crate::error::{Error, Result};
use crate::group::{phi_inverse, Word};
use crate::algebra::Poly;
use crate::projective::{ProjPoint, Triple};

/// One step of the flow on canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowStep {
    pub pre: Triple,
    /// `varphi_h(pre)`.
    pub post_raw: Triple,
    /// Canonical representative of `post_raw`.
    pub post_reduced: Triple,
    /// `gamma · post_raw = post_reduced`.
    pub gamma: Word,
}

/// `g (0, t, inf)` where `g (0, 1, inf) = T`; only the middle point moves.
pub fn varphi_h(t: &Triple) -> Triple {
    let field = t.field();
    let target = Triple::new_unchecked([
        ProjPoint::zero(field),
        ProjPoint::from_poly(Poly::t(field)),
        ProjPoint::infinity(field),
    ]);
    phi_inverse(t).act_triple(&target)
}

/// `varphi_h` followed by reduction. The input must be a canonical
/// representative.
pub fn psi_h(t: &Triple) -> Result<FlowStep> {
    if !membership(t).in_domain() {
        return Err(Error::NotInDomain);
    }
    let post_raw = varphi_h(t);
    let r = reduce(&post_raw)?;
    Ok(FlowStep { pre: t.clone(), post_raw, post_reduced: r.reduced, gamma: r.gamma })
}

/// `steps` successive applications of [`psi_h`].
pub fn flow_orbit(t: &Triple, steps: usize) -> Result<Vec<FlowStep>> {
    if steps == 0 {
        return Err(Error::InvalidStepCount);
    }
    let mut out: Vec<FlowStep> = Vec::with_capacity(steps);
    let mut cur = t.clone();
    for _ in 0..steps {
        let step = psi_h(&cur)?;
        debug_assert_eq!(step.gamma.matrix().act_triple(&step.post_raw), step.post_reduced);
        cur = step.post_reduced.clone();
        out.push(step);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::domain::reduce;
    use crate::group::GammaElem;
    use crate::oracle;
    use crate::text::parse_triple;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn tr(s: &str) -> Triple {
        parse_triple(&f3(), s).unwrap()
    }

    #[test]
    fn varphi_examples() {
        let f = f3();
        assert_eq!(varphi_h(&Triple::standard(&f)), tr("(0, t, inf)"));
        assert_eq!(varphi_h(&tr("(0, t, inf)")), tr("(0, t^2, inf)"));
        assert_eq!(varphi_h(&tr("(0, 1, 2)")), tr("(0, 2t/(t+1), 2)"));
    }

    #[test]
    fn psi_examples() {
        let f = f3();
        let s = psi_h(&Triple::standard(&f)).unwrap();
        assert_eq!(s.post_reduced, tr("(0, t, inf)"));
        assert!(s.gamma.is_empty());
        assert_eq!(psi_h(&tr("(0, t^-1, inf)")).unwrap().post_reduced, Triple::standard(&f));
        assert_eq!(psi_h(&tr("(t, t+1, t+2)")), Err(Error::NotInDomain));
    }

    #[test]
    fn orbit_examples() {
        let f = f3();
        let orbit = flow_orbit(&Triple::standard(&f), 10).unwrap();
        for (n, step) in orbit.iter().enumerate() {
            assert_eq!(step.post_reduced, tr(&format!("(0, t^{}, inf)", n + 1)));
        }
        let orbit = flow_orbit(&tr("(0, t^-1, inf)"), 1).unwrap();
        assert_eq!(orbit[0].post_reduced, Triple::standard(&f));
        assert_eq!(flow_orbit(&Triple::standard(&f), 0), Err(Error::InvalidStepCount));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn matches_formula_and_matrices(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3, 5])) {
            let field = Field::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = oracle::random_triple(&field, 4, &mut rng);
            let v = varphi_h(&t);
            prop_assert_eq!(v.w1(), t.w1());
            prop_assert_eq!(v.w3(), t.w3());
            prop_assert_eq!(&v, &oracle::varphi_h_formula(&t));
            let gh = phi_inverse(&t).compose(&GammaElem::h(&field));
            prop_assert_eq!(gh.act_triple(&Triple::standard(&field)), v);
        }

        #[test]
        fn psi_well_defined_on_orbits(seed in any::<u64>(), p in prop::sample::select(vec![2u32, 3])) {
            let field = Field::prime(p).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let t = oracle::random_triple(&field, 3, &mut rng);
            let canon = reduce(&t).unwrap().reduced;
            let step = psi_h(&canon).unwrap();
            prop_assert_eq!(&step.post_reduced, &reduce(&varphi_h(&t)).unwrap().reduced);
            prop_assert!(membership(&step.post_reduced).in_domain());
        }
    }
}
