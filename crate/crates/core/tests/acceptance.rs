//! Acceptance criteria AC1–AC10. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use lipcert::comparison::ComparisonFunction;
use lipcert::conditions::*;
use lipcert::family::{FunctionFamily, NormKind, SampledFunction};
use lipcert::fixtures::{linfty_family, riesz_zero_one, sphere_pair, zminus_cover, zminus_distance, zminus_index, zminus_matrix, zminus_metric};
use lipcert::metric::{max_tube_delta, validate_metric, DiagonalBallCover, FiniteMetricSpace, PairCover, PointCover};
use lipcert::oracle::{exact_min_oscillation, Ambient};
use lipcert::random::{random_function, random_instance, random_phi, random_space, rng, InstanceShape};
use rand::seq::SliceRandom;
use rand::Rng;

const EPS_GRID: [f64; 3] = [1.0, 0.5, 0.25];

type Verdict = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1", "synthesis soundness", ac1_synthesis_soundness),
        ("AC2", "zero-one sequence separation", ac2_riesz),
        ("AC3", "sphere separation", ac3_sphere),
        ("AC4", "de Leeuw isometry", ac4_isometry),
        ("AC5", "de Leeuw kernel", ac5_kernel),
        ("AC6", "equicontinuity round trip", ac6_round_trip),
        ("AC7", "tube radius", ac7_tube),
        ("AC8", "sup-norm sequence family", ac8_linfty),
        ("AC9", "signed integer metric", ac9_zminus),
        ("AC10", "monotonicity, refinement and scaling", ac10_invariants),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL {title}: {detail} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

/// Tallies named checks and keeps the first few failure messages.
#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn result(self, what: &str) -> Verdict {
        if self.failures.is_empty() {
            Ok(format!("{} {what}, 0 failures", self.checks))
        } else {
            let shown: Vec<_> = self.failures.iter().take(3).cloned().collect();
            Err(format!("{} of {} {what} failed; first: {}", self.failures.len(), self.checks, shown.join(" | ")))
        }
    }
}

fn ac1_synthesis_soundness() -> Verdict {
    let mut r = rng(0xAC01);
    let mut tally = Tally::default();
    for trial in 0..500 {
        let inst = random_instance(&mut r, InstanceShape::default());
        let a = &inst.family;
        let phi = &inst.phi;
        let eps = *EPS_GRID.choose(&mut r).unwrap();
        let n = *[1u32, 2, 4].choose(&mut r).unwrap();
        let diff = a.difference_family();
        let tag = |name: &str, e: &dyn std::fmt::Display| format!("trial {trial} {name} at eps {eps}: {e}");

        // (B) on A − A with the equinorm subset at eps/16.
        let y = greedy_equinorm_subset(&diff, eps / 16.0);
        match synthesize_b_cover(a, eps, &y, None) {
            Ok(s) => {
                let ok = check_b(&diff, &s.cover, eps).map(|c| c.passed()).unwrap_or(false);
                tally.record(ok, || tag("synthesize_b_cover recheck", &"fail"));
            }
            Err(e) => tally.record(false, || tag("synthesize_b_cover", &e)),
        }

        // (DS) from a (B) cover of A − A at eps/8.
        let y8 = greedy_equinorm_subset(&diff, eps / 128.0);
        match synthesize_b_cover(a, eps / 8.0, &y8, None).and_then(|b| synthesize_ds_from_b(a, &b.cover, eps, None)) {
            Ok(s) => {
                let ok = check_ds(a, &s.cover, eps).map(|c| c.passed()).unwrap_or(false);
                tally.record(ok, || tag("synthesize_ds_from_b recheck", &"fail"));
            }
            Err(e) => tally.record(false, || tag("synthesize_ds_from_b", &e)),
        }

        // (DS) from equicontinuity.
        let delta = equicontinuity_radius(a, eps);
        match ds_cover_from_equicontinuity(a, delta, eps) {
            Ok(s) => {
                let ok = check_ds(a, &s.cover, eps).map(|c| c.passed()).unwrap_or(false);
                tally.record(ok, || tag("ds_cover_from_equicontinuity recheck", &"fail"));
            }
            Err(e) => tally.record(false, || tag("ds_cover_from_equicontinuity", &e)),
        }

        // Cover of the pairs away from the diagonal; at half the minimal gap
        // this is all of the pair space and serves as an (L) cover below.
        let gap = a.domain().min_gap().expect("two or more points");
        let l_cover = match synthesize_tilde_cover(a, phi, gap / 2.0, eps) {
            Ok(s) => {
                let ok = pair_oscillation(&diff, OscillationKind::L, phi, &s.cover, eps).map(|c| c.passed()).unwrap_or(false);
                tally.record(ok, || tag("synthesize_tilde_cover recheck", &"fail"));
                Some(s.cover)
            }
            Err(e) => {
                tally.record(false, || tag("synthesize_tilde_cover", &e));
                None
            }
        };

        if let Some(l_cover) = l_cover {
            match lambda_from_l(a, phi, &l_cover, eps, n) {
                Ok(s) => {
                    let ok = check_lambda_witness(&diff, phi, eps, &s.witness).map(|c| c.passed()).unwrap_or(false);
                    tally.record(ok, || tag("lambda_from_l recheck", &"fail"));
                    match l_from_lambda(a, phi, &s.witness, eps) {
                        Ok(l) => {
                            let ok = check_l(&diff, phi, &l.cover, eps).map(|c| c.passed()).unwrap_or(false);
                            tally.record(ok, || tag("l_from_lambda recheck", &"fail"));
                        }
                        Err(e) => {
                            tally.record(false, || tag("l_from_lambda", &e));
                        }
                    }
                }
                Err(e) => {
                    tally.record(false, || tag("lambda_from_l", &e));
                }
            }
        }

        // Localized witness from uniform local flatness at eps/2.
        let eta = flatness_radius(a, phi, eps / 2.0);
        match lambda_from_flatness(a, phi, eps, n, eta) {
            Ok(s) => {
                let ok = check_lambda_witness(&diff, phi, eps, &s.witness).map(|c| c.passed()).unwrap_or(false);
                tally.record(ok, || tag("lambda_from_flatness recheck", &"fail"));
            }
            Err(e) => {
                tally.record(false, || tag("lambda_from_flatness", &e));
            }
        }
    }
    tally.result("synthesis checks over 500 instances")
}

fn ac2_riesz() -> Verdict {
    let fx = riesz_zero_one(3).map_err(|e| e.to_string())?;
    let a = fx.family.as_ref().unwrap();
    let on_a = check_b(a, &PointCover::trivial(8), 0.0).map_err(|e| e.to_string())?;
    if !on_a.passed() {
        return Err(format!("(B) on A with the trivial cover achieved {}", on_a.achieved));
    }
    let diff = a.difference_family();
    let ambient = Ambient::Points((0..8).collect());
    let mut least = f64::INFINITY;
    for budget in 1..=3 {
        let m = exact_min_oscillation(&diff, OscillationKind::B, None, &ambient, budget).map_err(|e| e.to_string())?;
        least = least.min(m.value);
    }
    if least >= 0.5 - 1e-9 {
        Ok(format!("(B) on A achieved 0; min (B) oscillation of A - A over covers with <= 3 parts = {least}"))
    } else {
        Err(format!("min (B) oscillation of A - A with <= 3 parts = {least} < 0.5"))
    }
}

fn ac3_sphere() -> Verdict {
    let fx = sphere_pair(4).map_err(|e| e.to_string())?;
    let a = fx.family.as_ref().unwrap();
    let trivial = PointCover::trivial(4);
    let b_a = check_b(a, &trivial, 0.0).map_err(|e| e.to_string())?.achieved;
    let b_diff = check_b(&a.difference_family(), &trivial, 0.0).map_err(|e| e.to_string())?.achieved;
    let ds = exact_min_oscillation(a, OscillationKind::DS, None, &Ambient::Points((0..4).collect()), 3)
        .map_err(|e| e.to_string())?
        .value;
    let detail = format!("(B) achieved {b_a} on A and {b_diff} on A - A; min (DS) oscillation with 3 parts = {ds}");
    if b_a == 0.0 && b_diff == 0.0 && ds >= 1.0 - 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac4_isometry() -> Verdict {
    let mut r = rng(0xAC04);
    let mut tally = Tally::default();
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let n = r.gen_range(2..=10);
        let k = r.gen_range(1..=3);
        let space = random_space(&mut r, n, k);
        let phi = random_phi(&mut r);
        let dim = r.gen_range(1..=3);
        let norm = *[NormKind::Sup, NormKind::Euclid, NormKind::L1].choose(&mut r).unwrap();
        let scale = r.gen_range(0.1..=5.0);
        let f = random_function(&mut r, n, dim, scale);
        let base = r.gen_range(0..n);
        let fam = FunctionFamily::new(space, norm, base, vec![f]).unwrap();
        let f = fam.member(0);
        let (at_base, image) = fam.embed(f, &phi).unwrap();
        let lhs = norm.norm(&at_base) + image.sup_norm(norm);
        let lip = fam.lip_norm(f, &phi).unwrap();
        let gap = (lhs - lip).abs();
        worst = worst.max(gap);
        tally.record(gap <= 1e-9, || format!("trial {trial}: gap {gap:e}"));
    }
    tally.result("random maps").map(|s| format!("{s}, largest gap {worst:e}"))
}

/// Values that are multiples of `2^-20`, so sums and differences with other
/// such values are exact.
fn dyadic_function<R: Rng>(r: &mut R, n: usize, dim: usize) -> SampledFunction {
    SampledFunction::from_fn(n, dim, |_| (0..dim).map(|_| f64::from(r.gen_range(-(1 << 21)..=(1 << 21))) / f64::from(1 << 20)).collect())
        .unwrap()
}

fn ac5_kernel() -> Verdict {
    let mut r = rng(0xAC05);
    let mut tally = Tally::default();
    let mut equal_cases = 0;
    for trial in 0..600 {
        let n = r.gen_range(2..=10);
        let k = r.gen_range(1..=3);
        let space = random_space(&mut r, n, k);
        let phi = random_phi(&mut r);
        let dim = r.gen_range(1..=3);
        let norm = *[NormKind::Sup, NormKind::Euclid, NormKind::L1].choose(&mut r).unwrap();
        let f = dyadic_function(&mut r, n, dim);
        let g = if trial >= 500 {
            // Constant shift.
            let c: Vec<f64> = (0..dim).map(|_| f64::from(r.gen_range(-64..=64)) / 16.0).collect();
            f.add(&SampledFunction::constant(n, &c))
        } else {
            match trial % 3 {
                0 => dyadic_function(&mut r, n, dim),
                1 => {
                    // Shift perturbed at one point.
                    let c: Vec<f64> = (0..dim).map(|_| f64::from(r.gen_range(-64..=64)) / 16.0).collect();
                    let mut values = f.add(&SampledFunction::constant(n, &c)).values();
                    let x = r.gen_range(0..n);
                    values[x][0] += f64::from(r.gen_range(1..=64)) / f64::from(1 << 10);
                    SampledFunction::new(values).unwrap()
                }
                _ => f.clone(),
            }
        };
        let fam = FunctionFamily::new(space, norm, 0, vec![f.clone(), g.clone()]).unwrap();
        let pf = fam.deleeuw(fam.member(0), &phi).unwrap();
        let pg = fam.deleeuw(fam.member(1), &phi).unwrap();
        let same_image = pf.sup_dist(&pg, norm) <= 1e-12;
        let h = f.sub(&g);
        let shift = (0..n).map(|x| norm.dist(h.at(x), h.at(0))).fold(0.0, f64::max);
        let is_shift = shift <= 1e-12;
        if is_shift {
            equal_cases += 1;
        }
        tally.record(same_image == is_shift, || format!("trial {trial}: image equal {same_image}, constant difference {is_shift}"));
    }
    tally.result("pairs").map(|s| format!("{s} ({equal_cases} with constant difference)"))
}

fn ac6_round_trip() -> Verdict {
    let mut r = rng(0xAC06);
    let mut tally = Tally::default();
    for trial in 0..200 {
        let inst = random_instance(&mut r, InstanceShape::default());
        let a = &inst.family;
        let eps = *EPS_GRID.choose(&mut r).unwrap();
        let delta = equicontinuity_radius(a, eps);
        let outcome = check_equicontinuity(a, delta, eps)
            .map_err(|e| e.to_string())
            .and_then(|c| if c.passed() { Ok(()) } else { Err("start radius fails".into()) })
            .and_then(|_| ds_cover_from_equicontinuity(a, delta, eps).map_err(|e| e.to_string()))
            .and_then(|s| equicontinuity_from_ds(a, &s.cover, eps).map_err(|e| e.to_string()))
            .and_then(|d| {
                let again = check_equicontinuity(a, d.delta, eps).map_err(|e| e.to_string())?;
                if d.delta > 0.0 && again.passed() {
                    Ok(())
                } else {
                    Err(format!("recovered delta {} passes: {}", d.delta, again.passed()))
                }
            });
        tally.record(outcome.is_ok(), || format!("trial {trial}: {}", outcome.unwrap_err()));
    }
    tally.result("round trips")
}

fn ac7_tube() -> Verdict {
    let mut r = rng(0xAC07);
    let mut tally = Tally::default();
    for trial in 0..200 {
        let n = r.gen_range(2..=10);
        let k = r.gen_range(1..=3);
        let space = random_space(&mut r, n, k);
        let count = r.gen_range(1..=n);
        let mut pool: Vec<usize> = (0..n).collect();
        pool.shuffle(&mut r);
        let centers: Vec<usize> = pool[..count].to_vec();
        let reach = (0..n).map(|x| centers.iter().map(|&c| space.d(c, x)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max);
        let radius = reach * r.gen_range(1.0..2.0) + 1e-6;
        let cover = DiagonalBallCover { centers, radius };
        let delta = match max_tube_delta(&space, &cover) {
            Ok(d) => d.value(&space),
            Err(e) => {
                tally.record(false, || format!("trial {trial}: {e}"));
                continue;
            }
        };
        let tube = space.tube(delta);
        let included = tube.iter().all(|&p| cover.contains(&space, p));
        tally.record(delta > 0.0 && included, || format!("trial {trial}: delta {delta}, inclusion {included}"));
    }
    let mut previous = f64::INFINITY;
    let mut values = Vec::new();
    for k in 3..=8 {
        let space = zminus_metric(k).map_err(|e| e.to_string())?;
        let d = max_tube_delta(&space, &zminus_cover(k)).map_err(|e| e.to_string())?.value(&space);
        let tube_ok = space.tube(d).iter().all(|&p| zminus_cover(k).contains(&space, p));
        tally.record(d > 0.0 && d <= previous && tube_ok, || format!("K = {k}: delta {d} after {previous}"));
        values.push(format!("{d:.4}"));
        previous = d;
    }
    tally.result("tube radii").map(|s| format!("{s}; signed integer delta(K=3..8) = [{}]", values.join(", ")))
}

fn ac8_linfty() -> Verdict {
    let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
    let fx = linfty_family(5, &grid).map_err(|e| e.to_string())?;
    let a = fx.family.as_ref().unwrap();
    let id = ComparisonFunction::identity();
    let diff = a.difference_family();
    let report = check_l(&diff, &id, &PairCover::trivial(&fx.space), 0.0).map_err(|e| e.to_string())?;
    let spread = 1.0;
    let value = report.peak.unwrap_or(f64::NAN);
    let ambient = Ambient::Pairs((1..=5).map(|j| (j, 0)).collect());
    let mut least = f64::INFINITY;
    for budget in 1..=4 {
        least = least.min(exact_min_oscillation(a, OscillationKind::LDS, Some(&id), &ambient, budget).map_err(|e| e.to_string())?.value);
    }
    let detail = format!(
        "(L) quotient on the trivial cover = {value} (oscillation {}); min (LDS) oscillation over <= 4 parts = {least}",
        report.achieved
    );
    if (value - spread).abs() <= 1e-12 && report.achieved <= 1e-12 && least >= 1.0 - 1e-9 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ac9_zminus() -> Verdict {
    let mut tally = Tally::default();
    for k in 1..=8 {
        let valid = validate_metric(&zminus_matrix(k));
        tally.record(valid.is_ok(), || format!("K = {k}: {}", valid.unwrap_err()));
    }
    let k = 8;
    let space = zminus_metric(k).map_err(|e| e.to_string())?;
    for s in [1i64, -1] {
        tally.record(space.d(zminus_index(k, s), zminus_index(k, -s)) == 0.5, || format!("d({s}, {}) != 1/2", -s));
        for n in 2..=k as i64 {
            for m in 2..=k as i64 {
                let expect = 1.0 / (2.0 * n as f64) + 1.0 / (2.0 * m as f64);
                let got = space.d(zminus_index(k, s * n), zminus_index(k, -s * m));
                tally.record(got == expect && zminus_distance(s * n, -s * m) == expect, || {
                    format!("d({}, {}) = {got}, expected {expect}", s * n, -s * m)
                });
            }
        }
    }
    tally.result("metric and table checks")
}

fn random_point_cover<R: Rng>(r: &mut R, n: usize) -> PointCover {
    let parts = r.gen_range(1..=n);
    let mut label: Vec<usize> = (0..n).map(|x| if x < parts { x } else { r.gen_range(0..parts) }).collect();
    label.shuffle(r);
    PointCover::new((0..parts).map(|p| (0..n).filter(|&x| label[x] == p).collect()).collect())
}

fn random_pair_cover<R: Rng>(r: &mut R, space: &FiniteMetricSpace) -> PairCover {
    let pairs: Vec<_> = space.off_diagonal_indices().collect();
    let parts = r.gen_range(1..=pairs.len().min(6));
    let mut buckets = vec![Vec::new(); parts];
    for (i, &p) in pairs.iter().enumerate() {
        let b = if i < parts { i } else { r.gen_range(0..parts) };
        buckets[b].push(p);
    }
    PairCover::new(buckets)
}

/// Splits every part into two halves where possible.
fn refine<T: Clone>(parts: &[Vec<T>]) -> Vec<Vec<T>> {
    parts
        .iter()
        .flat_map(|p| {
            if p.len() < 2 {
                vec![p.clone()]
            } else {
                let (a, b) = p.split_at(p.len() / 2);
                vec![a.to_vec(), b.to_vec()]
            }
        })
        .collect()
}

fn ac10_invariants() -> Verdict {
    let mut r = rng(0xAC10);
    let mut tally = Tally::default();
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()));
    for trial in 0..1000 {
        let shape = InstanceShape { max_points: 8, max_members: 5, max_dim: 3 };
        let inst = random_instance(&mut r, shape);
        let a = &inst.family;
        let phi = &inst.phi;
        let space = a.domain();
        let n = space.len();
        let pc = random_point_cover(&mut r, n);
        let pair_cover = random_pair_cover(&mut r, space);
        let eps = r.gen_range(0.0..2.0);
        let bigger = eps + r.gen_range(0.0..1.0);
        let delta = r.gen_range(0.0..=space.diameter());
        let lambda: f64 = r.gen_range(-3.0..3.0);
        let scaled = a.scaled(lambda);

        type Run<'a> = Box<dyn Fn(&FunctionFamily, f64) -> ConditionReport + 'a>;
        let runs: Vec<(&str, Run, Option<Run>)> = vec![
            (
                "B",
                Box::new(|f: &FunctionFamily, e| check_b(f, &pc, e).unwrap()),
                Some(Box::new(|f: &FunctionFamily, e| check_b(f, &PointCover::new(refine(&pc.parts)), e).unwrap())),
            ),
            (
                "DS",
                Box::new(|f: &FunctionFamily, e| check_ds(f, &pc, e).unwrap()),
                Some(Box::new(|f: &FunctionFamily, e| check_ds(f, &PointCover::new(refine(&pc.parts)), e).unwrap())),
            ),
            (
                "L",
                Box::new(|f: &FunctionFamily, e| check_l(f, phi, &pair_cover, e).unwrap()),
                Some(Box::new(|f: &FunctionFamily, e| check_l(f, phi, &PairCover::new(refine(&pair_cover.parts)), e).unwrap())),
            ),
            (
                "LDS",
                Box::new(|f: &FunctionFamily, e| check_lds(f, phi, &pair_cover, e).unwrap()),
                Some(Box::new(|f: &FunctionFamily, e| check_lds(f, phi, &PairCover::new(refine(&pair_cover.parts)), e).unwrap())),
            ),
            ("equicontinuity", Box::new(|f: &FunctionFamily, e| check_equicontinuity(f, delta, e).unwrap()), None),
            ("flatness", Box::new(|f: &FunctionFamily, e| check_uniform_local_flatness(f, phi, delta, e).unwrap()), None),
        ];
        for (name, run, refined) in &runs {
            let base = run(a, eps);
            let wider = run(a, bigger);
            tally.record(!base.passed() || wider.passed(), || format!("trial {trial} {name}: pass at {eps} but not at {bigger}"));
            if let Some(refined) = refined {
                let fine = refined(a, eps);
                tally.record(fine.achieved <= base.achieved + 1e-12 && (!base.passed() || fine.passed()), || {
                    format!("trial {trial} {name}: refinement raised {} to {}", base.achieved, fine.achieved)
                });
            }
            let s = run(&scaled, eps);
            tally.record(close(s.achieved, lambda.abs() * base.achieved), || {
                format!("trial {trial} {name}: scaled by {lambda} gives {} vs {}", s.achieved, base.achieved)
            });
        }
        let ds = check_ds(a, &pc, eps).unwrap();
        let b = check_b(a, &pc, eps).unwrap();
        tally.record(!ds.passed() || b.passed(), || format!("trial {trial}: (DS) passes but (B) fails"));
        let ds_diff = check_ds(&a.difference_family(), &pc, eps).unwrap();
        tally.record(ds_diff.achieved <= 2.0 * ds.achieved + 1e-9, || {
            format!("trial {trial}: (DS) of A - A {} exceeds twice {}", ds_diff.achieved, ds.achieved)
        });
    }
    tally.result("invariant checks over 1000 trials")
}
