use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use relkit::symplin::{q, random, reduction_relations, LinRelation, Subspace, SympSpace};

fn setup(seed: u64) -> (StdRng, SympSpace) {
    let mut rng = StdRng::seed_from_u64(seed);
    let half = rng.gen_range(1..=3);
    let v = random::symp_space(&mut rng, half);
    (rng, v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthogonal_calculus(seed in any::<u64>()) {
        let (mut rng, v) = setup(seed);
        let n = v.dim();
        let (a, b) = (rng.gen_range(0..=n), rng.gen_range(0..=n));
        let w = random::subspace(&mut rng, n, a);
        let z = random::subspace(&mut rng, n, b);
        let perp = |s: &Subspace| v.orthogonal(s).unwrap();
        prop_assert_eq!(perp(&w).dim(), n - w.dim());
        prop_assert_eq!(perp(&w.sum(&z)), perp(&w).intersection(&perp(&z)));
        prop_assert_eq!(perp(&w.intersection(&z)), perp(&w).sum(&perp(&z)));
        prop_assert_eq!(perp(&perp(&w)), w.clone());
        let wz = w.sum(&z);
        prop_assert!(perp(&wz).is_subspace_of(&perp(&w)));
    }

    #[test]
    fn classification_matches_definitions(seed in any::<u64>()) {
        let (mut rng, v) = setup(seed);
        let n = v.dim();
        let k = rng.gen_range(0..=n);
        let w = random::subspace(&mut rng, n, k);
        let c = v.classify(&w).unwrap();
        let wp = v.orthogonal(&w).unwrap();
        // isotropy straight from the form
        let vs = w.basis_vectors();
        let iso = vs.iter().all(|a| vs.iter().all(|b| v.pairing(a, b) == q(0)));
        prop_assert_eq!(c.isotropic, iso);
        prop_assert_eq!(c.coisotropic, wp.is_subspace_of(&w));
        prop_assert_eq!(c.lagrangian, iso && 2 * w.dim() == n);
        prop_assert_eq!(c.symplectic, w.intersection(&wp).dim() == 0);
    }

    #[test]
    fn random_lagrangians_and_coisotropics(seed in any::<u64>()) {
        let (mut rng, v) = setup(seed);
        let l = random::lagrangian(&mut rng, &v);
        prop_assert!(v.is_lagrangian(&l).unwrap());
        let c = random::coisotropic(&mut rng, &v);
        prop_assert!(v.classify(&c).unwrap().coisotropic);
        let red = v.reduce(&c).unwrap();
        prop_assert_eq!(red.dim(), 2 * c.dim() - v.dim());
    }

    #[test]
    fn relation_composition_laws(seed in any::<u64>()) {
        let (mut rng, v) = setup(seed);
        let u = random::symp_space(&mut rng, 1);
        let x = random::symp_space(&mut rng, 2);
        let f = random::lagrangian_relation(&mut rng, &u, &v);
        let g = random::lagrangian_relation(&mut rng, &v, &x);
        let h = random::lagrangian_relation(&mut rng, &x, &u);
        let left = f.then(&g).unwrap().then(&h).unwrap();
        let right = f.then(&g.then(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.then(&g).unwrap().dagger(), g.dagger().then(&f.dagger()).unwrap());
        prop_assert_eq!(LinRelation::identity(&u).then(&f).unwrap(), f.clone());
        prop_assert!(f.then(&g).unwrap().is_lagrangian());
        prop_assert!(f.dagger().is_lagrangian());
    }

    #[test]
    fn reduction_relations_compose_to_identity(seed in any::<u64>()) {
        let (mut rng, v) = setup(seed);
        let c = random::coisotropic(&mut rng, &v);
        let (red, i, p) = reduction_relations(&v, &c).unwrap();
        prop_assert!(i.is_lagrangian());
        prop_assert_eq!(i.then(&p).unwrap(), LinRelation::identity(&red.space));
        // I∘P restricted to C is the relation "same class"
        let ip = p.then(&i).unwrap();
        let k = red.kernel.clone();
        for b in c.basis_vectors() {
            let mut pair = b.clone();
            pair.extend(b.iter().cloned());
            prop_assert!(ip.space.contains(&pair));
        }
        for kv in k.basis_vectors() {
            let mut pair = vec![q(0); v.dim()];
            pair.extend(kv);
            prop_assert!(ip.space.contains(&pair));
        }
    }
}
