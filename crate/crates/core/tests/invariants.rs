use lipcert::conditions::*;
use lipcert::fixtures::FixtureSpec;
use lipcert::metric::{greedy_eps_net, PairCover, PointCover};
use lipcert::oracle::{exact_covering_number, exact_min_oscillation, Ambient};
use lipcert::random::{random_function, random_instance, rng, Instance, InstanceShape};
use lipcert::{FunctionFamily, TOL};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn instance(seed: u64, max_points: usize, max_members: usize) -> (Instance, ChaCha8Rng) {
    let mut r = rng(seed);
    let inst = random_instance(&mut r, InstanceShape { max_points, max_members, max_dim: 3 });
    (inst, r)
}

fn partition(r: &mut ChaCha8Rng, n: usize, parts: usize) -> Vec<Vec<usize>> {
    let parts = parts.clamp(1, n);
    let mut label: Vec<usize> = (0..n).map(|x| if x < parts { x } else { r.gen_range(0..parts) }).collect();
    label.shuffle(r);
    (0..parts).map(|p| (0..n).filter(|&x| label[x] == p).collect()).collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norms_are_homogeneous_and_subadditive(seed in any::<u64>(), lambda in -4.0f64..4.0) {
        let (inst, mut r) = instance(seed, 8, 2);
        let a = &inst.family;
        let phi = &inst.phi;
        let f = a.member(0);
        let g = random_function(&mut r, a.points(), a.dim(), 1.5);
        let sum = f.add(&g);
        let lf = a.lip_seminorm(f, phi).unwrap();
        prop_assert!(close(a.lip_seminorm(&f.scale(lambda), phi).unwrap(), lambda.abs() * lf));
        prop_assert!(a.sup_norm(&sum) <= a.sup_norm(f) + a.sup_norm(&g) + TOL);
        prop_assert!(a.lip_norm(&sum, phi).unwrap() <= a.lip_norm(f, phi).unwrap() + a.lip_norm(&g, phi).unwrap() + TOL);
        prop_assert!(a.blip_norm(&sum, phi).unwrap() <= a.blip_norm(f, phi).unwrap() + a.blip_norm(&g, phi).unwrap() + TOL);
        prop_assert!(a.lip_norm(f, phi).unwrap() <= a.blip_norm(f, phi).unwrap() + TOL);
    }

    #[test]
    fn seminorm_grows_with_the_subset(seed in any::<u64>()) {
        let (inst, mut r) = instance(seed, 10, 1);
        let a = &inst.family;
        let mut pts: Vec<usize> = (0..a.points()).collect();
        pts.shuffle(&mut r);
        let small = &pts[..1];
        let large = &pts[..pts.len().div_ceil(2)];
        let f = a.member(0);
        prop_assert!(a.seminorm(f, small).unwrap() <= a.seminorm(f, large).unwrap());
        prop_assert_eq!(a.seminorm(f, &pts).unwrap(), a.sup_norm(f));
    }

    #[test]
    fn deleeuw_is_linear(seed in any::<u64>()) {
        let (inst, mut r) = instance(seed, 8, 1);
        let a = &inst.family;
        let phi = &inst.phi;
        let f = a.member(0);
        let g = random_function(&mut r, a.points(), a.dim(), 1.0);
        let lhs = a.deleeuw(&f.add(&g), phi).unwrap();
        let pf = a.deleeuw(f, phi).unwrap();
        let pg = a.deleeuw(&g, phi).unwrap();
        for k in 0..lhs.len() {
            for c in 0..a.dim() {
                let want = pf.at(k)[c] + pg.at(k)[c];
                prop_assert!((lhs.at(k)[c] - want).abs() <= 1e-9 * (1.0 + want.abs()));
            }
        }
    }

    #[test]
    fn point_checks_are_monotone_refinable_and_homogeneous(
        seed in any::<u64>(),
        eps in 0.0f64..2.0,
        extra in 0.0f64..1.0,
        lambda in -3.0f64..3.0,
        parts in 1usize..6,
    ) {
        let (inst, mut r) = instance(seed, 10, 5);
        let a = &inst.family;
        let cover = PointCover::new(partition(&mut r, a.points(), parts));
        let fine = PointCover::new(cover.parts.iter().flat_map(|p| p.iter().map(|&x| vec![x])).collect());
        for check in [check_b as fn(&FunctionFamily, &PointCover, f64) -> Result<ConditionReport, ConditionError>, check_ds] {
            let base = check(a, &cover, eps).unwrap();
            prop_assert!(!base.passed() || check(a, &cover, eps + extra).unwrap().passed());
            prop_assert!(check(a, &fine, eps).unwrap().achieved <= base.achieved);
            prop_assert!(close(check(&a.scaled(lambda), &cover, eps).unwrap().achieved, lambda.abs() * base.achieved));
        }
        let ds = check_ds(a, &cover, eps).unwrap();
        prop_assert!(!ds.passed() || check_b(a, &cover, eps).unwrap().passed());
        prop_assert!(check_ds(&a.difference_family(), &cover, eps).unwrap().achieved <= 2.0 * ds.achieved + TOL);
    }

    #[test]
    fn pair_checks_are_monotone_and_homogeneous(seed in any::<u64>(), eps in 0.0f64..2.0, lambda in -3.0f64..3.0) {
        let (inst, mut r) = instance(seed, 6, 4);
        let a = &inst.family;
        let phi = &inst.phi;
        let pairs: Vec<_> = a.domain().off_diagonal_indices().collect();
        let labels = partition(&mut r, pairs.len(), 4);
        let cover = PairCover::new(labels.iter().map(|p| p.iter().map(|&i| pairs[i]).collect()).collect());
        for check in [check_l as fn(&FunctionFamily, &lipcert::ComparisonFunction, &PairCover, f64) -> Result<ConditionReport, ConditionError>, check_lds] {
            let base = check(a, phi, &cover, eps).unwrap();
            prop_assert!(!base.passed() || check(a, phi, &cover, eps + 1.0).unwrap().passed());
            prop_assert!(check(a, phi, &PairCover::singletons(a.domain()), eps).unwrap().achieved == 0.0);
            prop_assert!(close(check(&a.scaled(lambda), phi, &cover, eps).unwrap().achieved, lambda.abs() * base.achieved));
        }
    }

    #[test]
    fn b_synthesis_meets_its_target(seed in any::<u64>(), k in 0usize..3) {
        let eps = [1.0, 0.5, 0.25][k];
        let (inst, _) = instance(seed, 10, 6);
        let a = &inst.family;
        let y = greedy_equinorm_subset(&a.difference_family(), eps / 16.0);
        let s = synthesize_b_cover(a, eps, &y, None).unwrap();
        prop_assert!(check_b(&a.difference_family(), &s.cover, eps).unwrap().passed());
        prop_assert!(s.cover.validate(a.points()).is_ok());
    }

    #[test]
    fn oracle_never_beats_a_feasible_cover(seed in any::<u64>(), budget in 1usize..=4) {
        let (inst, mut r) = instance(seed, 7, 3);
        let a = &inst.family;
        let n = a.points();
        let opt = exact_min_oscillation(a, OscillationKind::DS, None, &Ambient::Points((0..n).collect()), budget).unwrap();
        let cover = PointCover::new(partition(&mut r, n, budget));
        prop_assert!(opt.value <= check_ds(a, &cover, 0.0).unwrap().achieved + 1e-12);
        let blocks: Vec<Vec<usize>> = opt.blocks.clone();
        prop_assert!((check_ds(a, &PointCover::new(blocks), 0.0).unwrap().achieved - opt.value).abs() <= 1e-12);
    }

    #[test]
    fn greedy_net_is_no_smaller_than_the_covering_number(seed in any::<u64>(), eps in 0.05f64..1.0) {
        let (inst, _) = instance(seed, 10, 1);
        let space = inst.family.domain();
        let net = greedy_eps_net(space, eps);
        prop_assert!(exact_covering_number(space, eps).unwrap() <= net.len());
        prop_assert!((0..space.len()).all(|x| net.iter().any(|&c| space.d(c, x) <= eps)));
    }

    #[test]
    fn json_round_trips(seed in any::<u64>()) {
        let (inst, mut r) = instance(seed, 6, 3);
        let a = &inst.family;
        let back: FunctionFamily = serde_json::from_str(&serde_json::to_string(a).unwrap()).unwrap();
        prop_assert_eq!(&back, a);
        let cover = PointCover::new(partition(&mut r, a.points(), 2));
        let report = check_b(a, &cover, 0.3).unwrap();
        let back: ConditionReport = serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        prop_assert_eq!(back, report);
    }
}

#[test]
fn fixtures_verify_identically_twice() {
    for name in lipcert::fixtures::NAMES {
        let spec = FixtureSpec::parse(name, &Default::default()).unwrap();
        let first = serde_json::to_string(&spec.build().unwrap().verify().unwrap()).unwrap();
        let second = serde_json::to_string(&spec.build().unwrap().verify().unwrap()).unwrap();
        assert_eq!(first, second);
        let report = spec.build().unwrap().verify().unwrap();
        assert!(report.all_hold, "{name}: {:?}", report.outcomes.iter().filter(|o| !o.holds).collect::<Vec<_>>());
    }
}
