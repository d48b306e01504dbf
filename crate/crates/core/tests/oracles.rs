mod common;

use std::sync::Arc;

use champ_core::corpus;
use champ_core::descent::{descent_category, stack_check, GrpdPresheaf, StackVerdict};
use champ_core::fincat::{FinCat, Mor};
use champ_core::group::FiniteGroup;
use champ_core::presheaf::{isomorphic, SetPresheaf};
use champ_core::simplicial::{nerve, segal_check, SegalStatus};
use champ_core::site::{is_sheaf, sheafify, FinSite};

use common::*;

fn two_open_cover(site: &FinSite, u: &str, v: &str) -> Vec<Mor> {
    let c = &site.cat;
    let x = c.object("X").unwrap();
    vec![c.hom(c.object(u).unwrap(), x)[0], c.hom(c.object(v).unwrap(), x)[0]]
}

#[test]
fn torsor_counts_match_cocycle_orbits() {
    let cases = [
        (corpus::pseudo_circle_site(), "A", "B"),
        (corpus::square_site(), "a", "b"),
    ];
    for (site, u, v) in &cases {
        let k = overlap_components(site, u, v);
        for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric3()] {
            let f = GrpdPresheaf::sheafified_delooping(site, &g).unwrap();
            let d = descent_category(site, &two_open_cover(site, u, v), &f).unwrap();
            assert_eq!(d.iso_class_count(), two_sided_orbits(&g, k), "{u},{v} with |G| = {}", g.order());
        }
    }
}

#[test]
fn two_component_orbits_are_conjugacy_classes() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric3()] {
        assert_eq!(two_sided_orbits(&g, 2), conjugacy_classes(&g));
        assert_eq!(two_sided_orbits(&g, 1), 1);
    }
    assert_eq!(conjugacy_classes(&FiniteGroup::symmetric3()), 3);
}

#[test]
fn overlap_components_of_corpus_covers() {
    assert_eq!(overlap_components(&corpus::pseudo_circle_site(), "A", "B"), 2);
    assert_eq!(overlap_components(&corpus::square_site(), "a", "b"), 1);
}

#[test]
fn stack_verdicts_follow_the_torsor_count() {
    for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
        let pc = corpus::pseudo_circle_site();
        let f = GrpdPresheaf::sheafified_delooping(&pc, &g).unwrap();
        assert_eq!(stack_check(&f, &pc).verdict, StackVerdict::Protochamp);
        let sq = corpus::square_site();
        let f = GrpdPresheaf::sheafified_delooping(&sq, &g).unwrap();
        assert_eq!(stack_check(&f, &sq).verdict, StackVerdict::Stack);
    }
}

#[test]
fn nerve_levels_count_functors_from_chains() {
    for (name, c) in corpus::categories() {
        let x = nerve(&c, 2);
        assert_eq!(x.level_size(0), c.num_objects(), "{name}");
        assert_eq!(x.level_size(1), c.num_morphisms(), "{name}");
        assert_eq!(x.level_size(2), composable_pairs(&c), "{name}");
        assert_eq!(x.level_size(2), functors_from_chain2(&c), "{name}");
    }
}

#[test]
fn nerves_are_segal_and_tau1_recovers_the_category() {
    for (name, c) in corpus::categories() {
        let c = Arc::new(c);
        let x = nerve(&c, 3);
        assert!(segal_check(&x).iter().all(|l| l.status == SegalStatus::Bijective), "{name}");
        assert!(tau1_comparison(&x, &c).is_isomorphism(), "{name}");
    }
}

#[test]
fn sheafification_is_idempotent_and_fixes_sheaves() {
    for (name, site) in corpus::sites() {
        let two = ["0".to_string(), "1".to_string()];
        let mut inputs = vec![SetPresheaf::terminal(site.cat.clone()), SetPresheaf::constant(site.cat.clone(), &two)];
        if site.space.is_some() {
            inputs.push(corpus::locally_constant(&site, 2));
        }
        inputs.extend(site.cat.objects().map(|x| SetPresheaf::representable(site.cat.clone(), x)));
        for f in inputs {
            let (g, _) = sheafify(&f, &site).unwrap();
            assert!(is_sheaf(&g, &site), "{name}");
            let (h, _) = sheafify(&g, &site).unwrap();
            assert!(isomorphic(&g, &h), "{name}");
            if is_sheaf(&f, &site) {
                assert!(isomorphic(&f, &g), "{name}");
            }
        }
    }
}

#[test]
fn slices_project_onto_the_down_set() {
    for (name, c) in corpus::categories() {
        let c = Arc::new(c);
        for x in c.objects() {
            let p = slice(&c, x);
            assert!(p.is_valid(), "{name}");
            assert_eq!(p.src.num_objects(), FinCat::into(&c, x).count());
            // the identity of x is terminal in C/x
            let terminal = p.src.objects().filter(|&t| p.obj(t) == x && p.src.objects().all(|o| p.src.hom(o, t).len() == 1));
            assert!(terminal.count() >= 1, "{name}");
        }
    }
}
