//! Tensor constructions checked against oracles that do not go through coset
//! enumeration: abelianization tensors, the bar complex, and derivatives.

use nabt::corpus::{inversion_pair, lookup, Corpus, ABELIAN_CONSISTENCY_GROUPS, DEFAULT_GROUPS};
use nabt::named;
use nabt::tensor::{exterior_from_square, lambda, nabla};
use nabt::*;

fn lim() -> EnumLimits {
    EnumLimits::default()
}

#[test]
fn identity_symbols_collapse_without_being_imposed() {
    for name in DEFAULT_GROUPS {
        let g = lookup(name).unwrap();
        let t = tensor_square(&g, lim()).unwrap();
        let n = g.order().unwrap() as u32;
        for x in 0..n {
            assert_eq!(t.pair(0, x), 0, "{name}: 1 (x) {x}");
            assert_eq!(t.pair(x, 0), 0, "{name}: {x} (x) 1");
        }
    }
}

#[test]
fn squares_satisfy_every_relation() {
    for name in DEFAULT_GROUPS {
        let t = tensor_square(&lookup(name).unwrap(), lim()).unwrap();
        assert!(t.relation_audit().is_empty(), "{name}");
    }
}

#[test]
fn trivial_actions_match_abelianization_tensor() {
    let mut names: Vec<&str> = ABELIAN_CONSISTENCY_GROUPS.to_vec();
    names.extend(["S3", "Q8", "A4"]);
    for a in &names {
        for b in &names {
            let (g, h) = (lookup(a).unwrap(), lookup(b).unwrap());
            let t = tensor_product(&MutualActions::trivial(&g, &h).unwrap(), lim()).unwrap();
            let expected = trivial_action_tensor(&g, &h).unwrap();
            assert_eq!(t.abelian_invariants().unwrap(), expected, "{a} (x) {b}");
            assert_eq!(Some(t.order() as u64), expected.order(), "{a} (x) {b}");
        }
    }
}

#[test]
fn documented_abelian_tensors() {
    let c2 = named::cyclic(2);
    let t = tensor_product(&MutualActions::trivial(&c2, &c2).unwrap(), lim()).unwrap();
    assert_eq!(t.order(), 2);
    let v4 = named::klein_four();
    let t = tensor_product(&MutualActions::trivial(&v4, &v4).unwrap(), lim()).unwrap();
    assert_eq!(t.order(), 16);
    assert_eq!(t.abelian_invariants().unwrap().torsion, vec![2, 2, 2, 2]);

    let inv = |v: Vec<u64>| AbelianInvariants::from_cyclic_orders(&v, 0);
    assert_eq!(trivial_action_tensor(&c2, &c2).unwrap(), inv(vec![2]));
    assert_eq!(trivial_action_tensor(&named::cyclic(4), &named::cyclic(6)).unwrap(), inv(vec![2]));
    let s3 = named::symmetric(3);
    assert_eq!(trivial_action_tensor(&s3, &s3).unwrap(), inv(vec![2]));
}

#[test]
fn multiplier_agrees_with_bar_resolution() {
    for name in DEFAULT_GROUPS {
        let g = lookup(name).unwrap();
        let bar = h2_bar_resolution(&g, 16).unwrap();
        let m = schur_multiplier(&g, lim()).unwrap();
        assert_eq!(m.invariants, bar, "{name}");
    }
}

#[test]
fn square_and_exterior_order_bookkeeping() {
    for name in DEFAULT_GROUPS {
        let g = lookup(name).unwrap();
        let t = tensor_square(&g, lim()).unwrap();
        let sq = t.order();
        let nab = nabla(&t).unwrap().order();
        let ext = exterior_from_square(t).unwrap();
        let ext_order = ext.group.order().unwrap();
        assert_eq!(sq, nab * ext_order, "{name}");
        let derived = commutator_subgroup(&g.whole().unwrap(), &g.whole().unwrap()).unwrap();
        let h2 = h2_bar_resolution(&g, 16).unwrap().order().unwrap() as usize;
        assert_eq!(ext_order, h2 * derived.order(), "{name}");
        // κ is onto [G, G].
        assert_eq!(ext.kappa.image().members(), derived.members(), "{name}");
    }
}

#[test]
fn documented_exterior_and_multiplier_values() {
    let ext = |g: &PermGroup| exterior_square(g, lim()).unwrap().group.order().unwrap();
    assert_eq!(ext(&named::cyclic(5)), 1);
    assert_eq!(ext(&named::klein_four()), 2);
    assert_eq!(ext(&named::symmetric(3)), 3);

    let schur = |g: &PermGroup| schur_multiplier(g, lim()).unwrap().invariants;
    assert!(schur(&named::cyclic(6)).is_trivial());
    assert_eq!(schur(&named::klein_four()).torsion, vec![2]);
    assert!(schur(&named::symmetric(3)).is_trivial());

    assert!(h2_bar_resolution(&named::cyclic(7), 16).unwrap().is_trivial());
    assert_eq!(h2_bar_resolution(&named::klein_four(), 16).unwrap().torsion, vec![2]);
    assert!(h2_bar_resolution(&named::quaternion(), 16).unwrap().is_trivial());
}

#[test]
fn phi_is_the_commutator_on_squares() {
    for name in ["S3", "D4", "Q8", "A4"] {
        let g = lookup(name).unwrap();
        let gt = g.elements().unwrap();
        let t = tensor_square(&g, lim()).unwrap();
        let n = gt.order() as u32;
        for a in 0..n {
            for b in 0..n {
                assert_eq!(lambda(&t).apply(t.pair(a, b)), gt.comm(a, b), "{name}");
            }
        }
    }
    let s3 = named::symmetric(3);
    let t = tensor_square(&s3, lim()).unwrap();
    assert_eq!(t.phi().image().order(), 3);
    assert_eq!(t.phi().kernel().order(), t.order() / 3);
}

#[test]
fn phi_is_trivial_for_trivial_actions() {
    let s3 = named::symmetric(3);
    let t = tensor_product(&MutualActions::trivial(&s3, &s3).unwrap(), lim()).unwrap();
    assert_eq!(t.phi().image().order(), 1);
}

#[test]
fn phi_image_is_the_derivative_on_normal_pairs() {
    let corpus = Corpus::standard().unwrap();
    for p in corpus.normal_pairs(12).unwrap() {
        let ma = p.actions().unwrap();
        let t = tensor_product(&ma, lim()).unwrap();
        let d = derivative(ma.act_hg()).unwrap();
        assert_eq!(t.phi().image().members(), d.members(), "{}", p.name);
    }
}

#[test]
fn nabla_examples() {
    let t = tensor_square(&PermGroup::trivial(1), lim()).unwrap();
    assert!(nabla(&t).unwrap().is_trivial());
    let t = tensor_square(&named::cyclic(6), lim()).unwrap();
    assert_eq!(nabla(&t).unwrap().order(), 6);
    let t = tensor_square(&named::symmetric(3), lim()).unwrap();
    let nab = nabla(&t).unwrap();
    assert!(nab.is_subset_of(&lambda(&t).kernel()));
}

#[test]
fn symmetric_three_on_alternating_three() {
    let s3 = named::symmetric(3);
    let a3 = s3.normal_subgroups().unwrap().into_iter().find(|n| n.order() == 3).unwrap();
    let ma = conjugation_mutual(&s3, &s3.whole().unwrap(), &a3).unwrap();
    let t = tensor_product(&ma, lim()).unwrap();
    // i(A3 ⊗ A3): symbols whose first entry already lies in A3.
    let pairs: Vec<(u32, u32)> = a3
        .members()
        .iter()
        .flat_map(|&x| (0..3u32).map(move |h| (x, h)))
        .collect();
    let image = t.generated_by_pairs(pairs);
    assert!(image.is_normal());
    let (q, _) = t.carrier().quotient(&image).unwrap();
    assert!(q.is_abelian().unwrap());
    assert_eq!(t.order(), image.order() * q.order().unwrap());
}

#[test]
fn inversion_pairs_build_and_pass_the_audit() {
    for n in [3, 4, 5, 6] {
        let ma = inversion_pair(n).unwrap();
        assert_eq!(check_compatible(&ma), Compatibility::Certified);
        let t = tensor_product(&ma, lim()).unwrap();
        assert!(t.relation_audit().is_empty(), "C2 on C{n}");
    }
}

#[test]
fn module_tensor_examples() {
    let c2 = named::cyclic(2);
    let z = AbelianInvariants::from_cyclic_orders(&[], 1);
    let negation = ActedModule::new(z.clone(), &c2, &[vec![vec![-1]]]).unwrap();
    let found = module_tensor_aug_ideal(&negation).unwrap();
    assert_eq!((found.free_rank, found.torsion.is_empty()), (1, true));

    let c2_module = ActedModule::trivial(AbelianInvariants::from_cyclic_orders(&[2], 0), &c2).unwrap();
    assert_eq!(module_tensor_aug_ideal(&c2_module).unwrap().torsion, vec![2]);

    // Trivial action: A ⊗ H_ab.
    let s3 = named::symmetric(3);
    let trivial = ActedModule::trivial(z.clone(), &s3).unwrap();
    assert_eq!(
        module_tensor_aug_ideal(&trivial).unwrap(),
        z.tensor(&s3.abelian_invariants().unwrap())
    );
}

#[test]
fn construction_is_deterministic() {
    let g = lookup("D6").unwrap();
    let a = tensor_square(&g, lim()).unwrap();
    let b = tensor_square(&g, lim()).unwrap();
    assert_eq!(a.pairing(), b.pairing());
    assert_eq!(a.carrier().generators(), b.carrier().generators());
}

#[test]
#[ignore = "order-16 groups; run with --ignored"]
fn slow_group_multipliers_agree_with_bar() {
    for name in nabt::corpus::SLOW_GROUPS {
        let g = lookup(name).unwrap();
        let m = schur_multiplier(&g, lim()).unwrap();
        assert_eq!(m.invariants, h2_bar_resolution(&g, 16).unwrap(), "{name}");
    }
}
