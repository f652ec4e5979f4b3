use arr_core::wavefront::oracle::{caratheodory_member, oracle_contains, random_direction, sample_in_cone};
use arr_core::wavefront::random::{random_instance, rng_for, GeneratorConfig};
use arr_core::wavefront::{
    check_functoriality, check_thm1, check_thm2, normal_directions, pullback, pushforward, sum_closure, Cone,
    ConicalSet, MapModel,
};
use rand::Rng;

const SEED: u64 = 20261014;

#[test]
fn random_instances_satisfy_all_laws() {
    let cfg = GeneratorConfig::default();
    let (mut thm1_live, mut thm2_live, mut surjective) = (0, 0, 0);
    for i in 0..200 {
        let inst = random_instance(SEED, i, &cfg);
        let r1 = check_thm1(&inst.f, &inst.s_y, &inst.s_y_prime).unwrap();
        let r2 = check_thm2(&inst.f, &inst.s_x, &inst.s_y_prime).unwrap();
        let r3 = check_functoriality(&inst.f, &inst.g, &inst.s_x).unwrap();
        for r in [&r1, &r2, &r3] {
            assert!(r.passed(), "instance {i}: {r:?}");
        }
        thm1_live += usize::from(r1.hypotheses_hold());
        thm2_live += usize::from(r2.hypotheses_hold());
        surjective += usize::from(inst.f.is_surjective());
    }
    // The biased families must exercise the conclusions, not just the hypotheses.
    assert!(thm1_live >= 40, "thm1 hypotheses held on {thm1_live}");
    assert!(thm2_live >= 40, "thm2 hypotheses held on {thm2_live}");
    assert!(surjective >= 40, "surjective f on {surjective}");
}

/// Independent check of the pull-back equality: sampled directions of each
/// side are tested against the other side with the subset-enumeration oracle.
#[test]
fn thm1_sampled_against_oracle() {
    let cfg = GeneratorConfig::default();
    let mut rng = rng_for(SEED, 1 << 40);
    let mut checked = 0;
    for i in 0..120 {
        let inst = random_instance(SEED, i, &cfg);
        let y = inst.f.target();
        let x = inst.f.source();
        let report = check_thm1(&inst.f, &inst.s_y, &inst.s_y_prime).unwrap();
        if !report.hypotheses_hold() {
            continue;
        }
        let union = sum_closure(&inst.s_y, &inst.s_y_prime, y).unwrap();
        let lhs = pullback(&inst.f, &union).unwrap();
        let ps = pullback(&inst.f, &inst.s_y).unwrap();
        let pt = pullback(&inst.f, &inst.s_y_prime).unwrap();
        let rhs = sum_closure(&ps, &pt, x).unwrap();
        for (a, b) in [(&lhs, &rhs), (&rhs, &lhs)] {
            for (p, cone) in a.iter() {
                for _ in 0..3 {
                    let v = sample_in_cone(&mut rng, cone, 4);
                    assert!(oracle_contains(b, p, &v), "instance {i} point {p}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn containment_agrees_with_oracle() {
    let mut rng = rng_for(SEED, 1 << 41);
    let (mut inside, mut outside) = (0, 0);
    for _ in 0..1000 {
        let dim = rng.gen_range(1..=3);
        let count = rng.gen_range(1..=4);
        let gens = (0..count).map(|_| random_direction(&mut rng, dim, 3)).collect();
        let cone = Cone::new(dim, gens).unwrap();
        let v = if rng.gen_bool(0.4) {
            sample_in_cone(&mut rng, &cone, 3)
        } else {
            random_direction(&mut rng, dim, 3)
        };
        let exact = cone.contains(&v);
        assert_eq!(exact, caratheodory_member(cone.generators(), &v), "{cone} ∋ {v:?}");
        if exact {
            inside += 1;
        } else {
            outside += 1;
        }
    }
    assert!(inside > 200 && outside > 200);
}

fn grow(s: &ConicalSet, extra: &ConicalSet) -> ConicalSet {
    s.union(extra).unwrap()
}

#[test]
fn operations_are_monotone() {
    let cfg = GeneratorConfig::default();
    for i in 0..100 {
        let inst = random_instance(SEED + 1, i, &cfg);
        let big_x = grow(&inst.s_x, &inst.s_x.negate());
        assert!(pushforward(&inst.f, &inst.s_x)
            .unwrap()
            .is_subset(&pushforward(&inst.f, &big_x).unwrap())
            .unwrap());
        let big_y = grow(&inst.s_y, &inst.s_y_prime);
        if normal_directions(&inst.f).intersection_witness(&big_y).unwrap().is_none() {
            assert!(pullback(&inst.f, &inst.s_y)
                .unwrap()
                .is_subset(&pullback(&inst.f, &big_y).unwrap())
                .unwrap());
        }
        let y = inst.f.target();
        if let Ok(small) = sum_closure(&inst.s_y, &inst.s_y_prime, y) {
            if let Ok(big) = sum_closure(&big_y, &inst.s_y_prime, y) {
                assert!(small.is_subset(&big).unwrap());
            }
        }
    }
}

/// Moves the target points of `f` and the source points of `g` along `perm`.
fn relabel_middle(f: &MapModel, g: &MapModel, perm: &[usize]) -> (MapModel, MapModel) {
    let f2 = MapModel::new(
        f.source().clone(),
        f.target().clone(),
        f.point_map().iter().map(|&y| perm[y]).collect(),
        (0..f.source().len()).map(|x| f.differential(x).clone()).collect(),
    )
    .unwrap();
    let mut inverse = vec![0; perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    let g2 = MapModel::new(
        g.source().clone(),
        g.target().clone(),
        inverse.iter().map(|&old| g.point_map()[old]).collect(),
        inverse.iter().map(|&old| g.differential(old).clone()).collect(),
    )
    .unwrap();
    (f2, g2)
}

#[test]
fn relabeling_commutes_with_operations() {
    let cfg = GeneratorConfig::default();
    let mut rng = rng_for(SEED, 1 << 42);
    for i in 0..100 {
        let inst = random_instance(SEED + 2, i, &cfg);
        let n = inst.f.target().len();
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let (f2, g2) = relabel_middle(&inst.f, &inst.g, &perm);

        let push = pushforward(&inst.f, &inst.s_x).unwrap();
        assert!(pushforward(&f2, &inst.s_x).unwrap().set_eq(&push.relabel(&perm)).unwrap());
        assert!(pushforward(&g2, &push.relabel(&perm))
            .unwrap()
            .set_eq(&pushforward(&inst.g, &push).unwrap())
            .unwrap());
        assert!(normal_directions(&f2).set_eq(&normal_directions(&inst.f).relabel(&perm)).unwrap());
        if let Ok(back) = pullback(&inst.f, &inst.s_y) {
            assert_eq!(pullback(&f2, &inst.s_y.relabel(&perm)).unwrap(), back);
        }
        let y = inst.f.target();
        if let Ok(sum) = sum_closure(&inst.s_y, &inst.s_y_prime, y) {
            let moved = sum_closure(&inst.s_y.relabel(&perm), &inst.s_y_prime.relabel(&perm), y).unwrap();
            assert!(moved.set_eq(&sum.relabel(&perm)).unwrap());
        }
    }
}
