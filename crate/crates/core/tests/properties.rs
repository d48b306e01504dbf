mod common;

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use champ_core::corpus;
use champ_core::fincat::FinCat;
use champ_core::json::PresheafJson;
use champ_core::presheaf::{isomorphic, pullback, shriek, verify_adjunction};
use champ_core::site::{is_sheaf, sheafify};

use common::*;

fn category(k: usize) -> (&'static str, Arc<FinCat>) {
    let all = corpus::categories();
    let (name, c) = all.into_iter().nth(k % 15).unwrap();
    (name, Arc::new(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_presheaves_are_functorial(k in 0usize..15, seed: u64) {
        let (_, c) = category(k);
        let f = random_presheaf(&c, 2, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(f.is_valid());
    }

    #[test]
    fn slice_projections_satisfy_both_triangles(k in 0usize..15, x in 0usize..4, seed: u64) {
        let (name, c) = category(k);
        // right Kan extension along BS3/* → BS3 is a sixth power; too big to enumerate twice
        prop_assume!(name != "bs3");
        let p = slice(&c, x % c.num_objects());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_presheaf(&p.src, 1, &mut rng);
        let b = random_presheaf(&c, 1, &mut rng);
        let report = verify_adjunction(&p, &[a], &[b]);
        prop_assert!(report.holds(), "{name}: {:?}", report.failures);
    }

    #[test]
    fn crible_extension_is_by_empty_sets(k in 0usize..15, seed: u64) {
        let (name, c) = category(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for objs in cribles(&c) {
            let i = inclusion(&c, &objs);
            let a = random_presheaf(&i.src, 2, &mut rng);
            let ext = shriek(&i, &a).presheaf;
            for x in c.objects() {
                let expected = objs.iter().position(|&o| o == x).map_or(0, |j| a.size(j));
                prop_assert_eq!(ext.size(x), expected, "{} at {}", name, x);
            }
            prop_assert!(isomorphic(&pullback(&i, &ext), &a));
            prop_assert!(verify_adjunction(&i, &[a], &[random_presheaf(&c, 2, &mut rng)]).holds());
        }
    }

    #[test]
    fn sheafification_lands_in_sheaves(s in 0usize..5, seed: u64) {
        let (name, site) = corpus::sites().into_iter().nth(s).unwrap();
        let f = random_presheaf(&site.cat, 2, &mut ChaCha8Rng::seed_from_u64(seed));
        let (g, unit) = sheafify(&f, &site).unwrap();
        prop_assert!(is_sheaf(&g, &site), "{}", name);
        prop_assert!(unit.is_natural(&f, &g));
        let (h, _) = sheafify(&g, &site).unwrap();
        prop_assert!(isomorphic(&g, &h));
    }

    #[test]
    fn presheaf_json_round_trips(k in 0usize..15, seed: u64) {
        let (_, c) = category(k);
        let f = random_presheaf(&c, 2, &mut ChaCha8Rng::seed_from_u64(seed));
        let text = serde_json::to_string(&PresheafJson::from_presheaf(&f)).unwrap();
        let back: PresheafJson = serde_json::from_str(&text).unwrap();
        let g = back.build_on(c.clone()).unwrap();
        prop_assert!(isomorphic(&f, &g));
    }
}
