use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use lipcert::comparison::{default_grid, validate_comparison, ComparisonError};
use lipcert::conditions::*;
use lipcert::fixtures::{FixtureError, FixtureSpec};
use lipcert::io::{to_document, Envelope, RunManifest};
use lipcert::metric::{validate_metric, PairCover, PointCover};
use lipcert::oracle::{covering_profile, exact_covering_number, exact_min_oscillation, pigeonhole_b_witness, Ambient};
use lipcert::random::{random_instance, rng, InstanceShape};
use lipcert::{ComparisonFunction, Cover, FiniteMetricSpace, FunctionFamily, MetricError, SampledFunction};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{parse_pair, Inputs, RawFamily, RawPhi, RawSpace};
use crate::{CheckArgs, Cli, Command, FixtureArgs, OracleArgs, SynthArgs, ValidateArgs};

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Violation,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Violation => 1,
        }
    }

    fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Violation
        }
    }
}

struct Run<'a> {
    cli: &'a Cli,
    inputs: Inputs,
    manifest: RunManifest,
}

pub fn run(cli: &Cli, argv: Vec<String>) -> Result<Status> {
    let manifest = RunManifest::new(argv).param("eps", cli.eps).param("seed", cli.seed).param("tol", cli.tol);
    let mut run = Run { cli, inputs: Inputs::default(), manifest };
    let (status, report) = match &cli.command {
        Command::Validate(args) => run.validate(args)?,
        Command::Check(args) => run.check(args)?,
        Command::Synthesize(args) => run.synthesize(args)?,
        Command::Oracle(args) => run.oracle(args)?,
        Command::Fixture(args) => run.fixture(args)?,
    };
    run.emit(report)?;
    Ok(status)
}

fn value(v: impl Serialize) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn error_report(kind: &str, message: String) -> Value {
    json!({ "error": { "kind": kind, "message": message } })
}

/// Errors that mean "the input violates the condition" rather than "the
/// input is unusable".
fn violation_kind(e: &ConditionError) -> Option<&'static str> {
    Some(match e {
        ConditionError::PreconditionFailed { .. } => "precondition_failed",
        ConditionError::PostconditionFailed { .. } => "postcondition_failed",
        ConditionError::EquinormPreconditionFailed { .. } => "equinorm_precondition_failed",
        ConditionError::NetPreconditionFailed(_) => "net_precondition_failed",
        ConditionError::NotANet { .. } => "not_a_net",
        ConditionError::SandwichViolation { .. } => "sandwich_violation",
        ConditionError::EmptyTilde(_) => "empty_tilde",
        ConditionError::EmptySubset => "empty_subset",
        ConditionError::Metric(_) => "invalid_cover",
        _ => return None,
    })
}

fn metric_witness(e: &MetricError) -> Option<Vec<usize>> {
    match *e {
        MetricError::TriangleViolation(i, j, k) => Some(vec![i, j, k]),
        MetricError::Asymmetry(i, j)
        | MetricError::IdentityViolation(i, j)
        | MetricError::NegativeDistance(i, j)
        | MetricError::NonFinite(i, j) => Some(vec![i, j]),
        MetricError::NonzeroDiagonal(i) => Some(vec![i]),
        _ => None,
    }
}

fn invalid(document: &str, message: String, witness: Option<Value>) -> (Status, Value) {
    let mut report = json!({ "document": document, "valid": false, "error": message });
    if let Some(w) = witness {
        report["witness"] = w;
    }
    (Status::Violation, report)
}

fn build_phi(raw: RawPhi) -> Result<ComparisonFunction, ComparisonError> {
    match raw {
        RawPhi::Power { alpha } => ComparisonFunction::power(alpha),
        RawPhi::Log1p => Ok(ComparisonFunction::Log1p),
        RawPhi::Pwl { breakpoints } => ComparisonFunction::pwl(breakpoints),
    }
}

fn check_phi(document: &str, phi: &ComparisonFunction, d_max: f64) -> Option<(Status, Value)> {
    match validate_comparison(phi, &default_grid(phi, d_max)) {
        Ok(_) => None,
        Err(ComparisonError::AxiomViolation { axiom, witness }) => {
            Some(invalid(document, format!("comparison function violates {axiom:?}"), Some(json!({ "axiom": axiom, "at": witness }))))
        }
        Err(e) => Some(invalid(document, e.to_string(), None)),
    }
}

fn require<T: Clone>(v: &Option<T>, what: &str, condition: &str) -> Result<T> {
    v.clone().ok_or_else(|| anyhow!("MissingWitness: {condition} requires {what}"))
}

impl Run<'_> {
    fn emit(&mut self, report: Value) -> Result<()> {
        let mut manifest = self.manifest.clone();
        manifest.inputs = std::mem::take(&mut self.inputs.digests);
        manifest.report_path = self.cli.out.as_ref().map(|p| p.display().to_string());
        let text = to_document(&Envelope { manifest, report })?;
        match &self.cli.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
            None => std::io::stdout().write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn param(&mut self, key: &str, v: impl Serialize) {
        self.manifest = std::mem::replace(&mut self.manifest, RunManifest::new(Vec::new())).param(key, v);
    }

    fn eps(&self) -> Result<f64> {
        self.cli.eps.ok_or_else(|| anyhow!("--eps is required"))
    }

    fn family(&mut self, path: &Path, difference: bool) -> Result<FunctionFamily> {
        let fam: FunctionFamily = self.inputs.load(path)?;
        Ok(if difference { fam.difference_family() } else { fam })
    }

    fn phi(&mut self, path: &Option<std::path::PathBuf>, fam: &FunctionFamily) -> Result<Option<ComparisonFunction>> {
        match path {
            Some(p) => Ok(Some(self.inputs.load(p)?)),
            None => Ok(fam.phi().cloned()),
        }
    }

    fn validate(&mut self, args: &ValidateArgs) -> Result<(Status, Value)> {
        let text = self.inputs.read(&args.file)?;
        let doc: Value = lipcert::io::from_document(&text).with_context(|| format!("schema error in {}", args.file.display()))?;
        let obj = doc.as_object().ok_or_else(|| anyhow!("expected an object"))?;
        if obj.contains_key("members") {
            let raw: RawFamily = serde_json::from_value(doc).context("malformed family document")?;
            self.validate_family(raw)
        } else if obj.contains_key("dist") {
            let raw: RawSpace = serde_json::from_value(doc).context("malformed space document")?;
            Ok(match self.validate_space(&raw) {
                Ok(space) => (
                    Status::Pass,
                    json!({ "document": "space", "valid": true, "points": space.len(), "diameter": space.diameter(), "min_gap": space.min_gap() }),
                ),
                Err(e) => invalid("space", e.to_string(), metric_witness(&e).map(|w| json!(w))),
            })
        } else if obj.contains_key("kind") {
            let raw: RawPhi = serde_json::from_value(doc).context("malformed comparison function document")?;
            let phi = match build_phi(raw) {
                Ok(phi) => phi,
                Err(e) => return Ok(invalid("phi", e.to_string(), None)),
            };
            Ok(check_phi("phi", &phi, args.d_max)
                .unwrap_or_else(|| (Status::Pass, json!({ "document": "phi", "valid": true, "phi": phi, "d_max": args.d_max }))))
        } else if obj.contains_key("ambient") {
            let cover: Cover = serde_json::from_value(doc).context("malformed cover document")?;
            let path = args.family.as_ref().ok_or_else(|| anyhow!("validating a cover requires --family"))?;
            let fam: FunctionFamily = self.inputs.load(path)?;
            let n = fam.points();
            let checked = match &cover {
                Cover::Points(c) => c.validate(n),
                Cover::Pairs(c) => c.validate_full(n),
            };
            Ok(match checked {
                Ok(()) => (Status::Pass, json!({ "document": "cover", "valid": true, "parts": cover.len() })),
                Err(e) => invalid("cover", e.to_string(), None),
            })
        } else {
            bail!("unrecognized document: expected a space, comparison function, family or cover")
        }
    }

    fn validate_space(&self, raw: &RawSpace) -> Result<FiniteMetricSpace, MetricError> {
        if raw.points != raw.dist.len() {
            return Err(MetricError::NotSquare { row: raw.dist.len(), len: raw.dist.len(), n: raw.points });
        }
        validate_metric(&raw.dist)
    }

    fn validate_family(&self, raw: RawFamily) -> Result<(Status, Value)> {
        let space = match self.validate_space(&raw.domain) {
            Ok(s) => s,
            Err(e) => return Ok(invalid("family", format!("domain: {e}"), metric_witness(&e).map(|w| json!(w)))),
        };
        let mut members = Vec::with_capacity(raw.members.len());
        for (k, m) in raw.members.into_iter().enumerate() {
            if m.len() != space.len() {
                return Ok(invalid("family", format!("member {k} has {} values, expected {}", m.len(), space.len()), None));
            }
            match SampledFunction::new(m) {
                Ok(f) => members.push(f),
                Err(e) => return Ok(invalid("family", format!("member {k}: {e}"), None)),
            }
        }
        let diameter = space.diameter();
        let fam = match FunctionFamily::new(space, raw.norm, raw.base, members) {
            Ok(f) => f,
            Err(e) => return Ok(invalid("family", e.to_string(), None)),
        };
        if let Some(raw_phi) = raw.phi {
            let phi = match build_phi(raw_phi) {
                Ok(phi) => phi,
                Err(e) => return Ok(invalid("family", format!("phi: {e}"), None)),
            };
            if let Some(bad) = check_phi("family", &phi, diameter) {
                return Ok(bad);
            }
        }
        Ok((
            Status::Pass,
            json!({ "document": "family", "valid": true, "points": fam.points(), "members": fam.len(), "dim": fam.dim(), "norm": fam.norm_kind() }),
        ))
    }

    fn check(&mut self, args: &CheckArgs) -> Result<(Status, Value)> {
        let eps = self.eps()?;
        let condition: Condition = args.condition.parse().map_err(|e: ConditionError| anyhow!(e))?;
        let fam = self.family(&args.family, args.difference)?;
        let phi = self.phi(&args.phi, &fam)?;
        let name = condition.name();
        let need_phi = || phi.clone().ok_or_else(|| anyhow!("{name} requires a comparison function (--phi or the family's own)"));
        self.param("condition", name);
        let result = match condition {
            Condition::Equinormed => {
                let subset = require(&args.subset, "--subset", name)?;
                self.param("subset", &subset);
                check_equinormed(&fam, &subset, eps)
            }
            Condition::B | Condition::DS | Condition::L | Condition::LDS => {
                let path = require(&args.cover, "--cover", name)?;
                let cover: Cover = self.inputs.load(&path)?;
                let kind: OscillationKind = name.parse().map_err(|e: ConditionError| anyhow!(e))?;
                let phi = if kind.on_pairs() { Some(need_phi()?) } else { None };
                check_cover(&fam, kind, phi.as_ref(), &cover, eps)
            }
            Condition::Equicontinuity => {
                let delta = require(&args.delta, "--delta", name)?;
                self.param("delta", delta);
                check_equicontinuity(&fam, delta, eps)
            }
            Condition::Lambda => {
                let path = require(&args.witness, "--witness", name)?;
                let witness: LambdaWitness = self.inputs.load(&path)?;
                check_lambda_witness(&fam, &need_phi()?, eps, &witness)
            }
            Condition::UniformLocalFlatness => {
                let delta = require(&args.delta, "--delta", name)?;
                self.param("delta", delta);
                check_uniform_local_flatness(&fam, &need_phi()?, delta, eps)
            }
        };
        match result {
            Ok(mut report) => {
                report.verdict = if report.achieved <= eps + self.cli.tol { Verdict::Pass } else { Verdict::Fail };
                Ok((Status::from_pass(report.passed()), value(report)?))
            }
            Err(e) => match violation_kind(&e) {
                Some(kind) => Ok((Status::Violation, error_report(kind, e.to_string()))),
                None => Err(anyhow!(e)),
            },
        }
    }

    fn synthesize(&mut self, args: &SynthArgs) -> Result<(Status, Value)> {
        let eps = self.eps()?;
        let (fam, instance) = match (&args.family, args.random) {
            (Some(path), _) => (self.family(path, false)?, None),
            (None, true) => {
                let inst = random_instance(&mut rng(self.cli.seed), InstanceShape::default());
                (inst.family.clone(), Some(inst))
            }
            (None, false) => bail!("synthesize needs --family or --random"),
        };
        let phi = self.phi(&args.phi, &fam)?;
        let kind = args.kind.to_ascii_lowercase();
        self.param("kind", &kind);
        let need_phi = || phi.clone().ok_or_else(|| anyhow!("{kind} requires a comparison function (--phi or the family's own)"));
        let min_gap = || fam.domain().min_gap().ok_or(ConditionError::DegenerateSpace);
        let mut side_doc: Option<Value> = None;

        let result: Result<Value, ConditionError> = (|| {
            Ok(match kind.as_str() {
                "equinorm" => {
                    let subset = greedy_equinorm_subset(&fam, eps);
                    let report = check_equinormed(&fam, &subset, eps)?;
                    json!({ "subset": subset, "report": report })
                }
                "equinorm-from-b" => {
                    let cover = self.point_cover(&args.cover, &kind)?;
                    value(equinorm_witness_from_b(&fam, &cover, eps)?).expect("serializable")
                }
                "b" => {
                    let subset = match &args.subset {
                        Some(s) => s.clone(),
                        None => greedy_equinorm_subset(&fam.difference_family(), eps / 16.0),
                    };
                    let s = synthesize_b_cover(&fam, eps, &subset, None)?;
                    side_doc = Some(value(Cover::Points(s.cover.clone())).expect("serializable"));
                    json!({ "subset": subset, "synthesis": s })
                }
                "ds" => {
                    let b_cover = match &args.cover {
                        Some(_) => self.point_cover(&args.cover, &kind)?,
                        None => {
                            let y = greedy_equinorm_subset(&fam.difference_family(), eps / 128.0);
                            synthesize_b_cover(&fam, eps / 8.0, &y, None)?.cover
                        }
                    };
                    let s = synthesize_ds_from_b(&fam, &b_cover, eps, None)?;
                    side_doc = Some(value(Cover::Points(s.cover.clone())).expect("serializable"));
                    json!({ "b_cover": b_cover, "synthesis": s })
                }
                "ds-from-equicontinuity" => {
                    let delta = args.delta.unwrap_or_else(|| equicontinuity_radius(&fam, eps));
                    let s = ds_cover_from_equicontinuity(&fam, delta, eps)?;
                    side_doc = Some(value(Cover::Points(s.cover.clone())).expect("serializable"));
                    json!({ "delta": delta, "synthesis": s })
                }
                "equicontinuity" => {
                    let cover = self.point_cover(&args.cover, &kind)?;
                    value(equicontinuity_from_ds(&fam, &cover, eps)?).expect("serializable")
                }
                "tilde" => {
                    let delta = match args.delta {
                        Some(d) => d,
                        None => min_gap()? / 2.0,
                    };
                    let s = synthesize_tilde_cover(&fam, &need_phi().map_err(usage)?, delta, eps)?;
                    side_doc = Some(value(Cover::Pairs(s.cover.clone())).expect("serializable"));
                    value(s).expect("serializable")
                }
                "lambda-from-l" => {
                    let phi = need_phi().map_err(usage)?;
                    let l_cover = match &args.cover {
                        Some(_) => self.pair_cover(&args.cover, &kind)?,
                        None => synthesize_tilde_cover(&fam, &phi, min_gap()? / 2.0, eps)?.cover,
                    };
                    let s = lambda_from_l(&fam, &phi, &l_cover, eps, args.n.unwrap_or(1))?;
                    side_doc = Some(value(&s.witness).expect("serializable"));
                    value(s).expect("serializable")
                }
                "l-from-lambda" => {
                    let path = args.witness.clone().ok_or_else(|| missing("--witness", &kind))?;
                    let witness: LambdaWitness = self.inputs.load(&path).map_err(|e| usage(anyhow!(e)))?;
                    let s = l_from_lambda(&fam, &need_phi().map_err(usage)?, &witness, eps)?;
                    side_doc = Some(value(Cover::Pairs(s.cover.clone())).expect("serializable"));
                    value(s).expect("serializable")
                }
                "lambda-from-flatness" => {
                    let phi = need_phi().map_err(usage)?;
                    let delta = args.delta.unwrap_or_else(|| flatness_radius(&fam, &phi, eps / 2.0));
                    let s = lambda_from_flatness(&fam, &phi, eps, args.n.unwrap_or(1), delta)?;
                    side_doc = Some(value(&s.witness).expect("serializable"));
                    json!({ "flat_delta": delta, "synthesis": s })
                }
                "flatness-from-net" => {
                    let net = args.net.clone().ok_or_else(|| missing("--net", &kind))?;
                    value(flatness_from_net(&fam, &need_phi().map_err(usage)?, &net, eps)?).expect("serializable")
                }
                other => return Err(ConditionError::InvalidParameter(format!("unknown synthesis kind `{other}`"))),
            })
        })();

        match result {
            Ok(mut report) => {
                if let Some(inst) = instance {
                    report["instance"] = value(inst)?;
                }
                if let (Some(path), Some(doc)) = (&args.cover_out, side_doc) {
                    std::fs::write(path, to_document(&doc)?).with_context(|| format!("cannot write {}", path.display()))?;
                }
                Ok((Status::Pass, report))
            }
            Err(e) => match violation_kind(&e) {
                Some(kind) => Ok((Status::Violation, error_report(kind, e.to_string()))),
                None => Err(anyhow!(e)),
            },
        }
    }

    fn point_cover(&mut self, path: &Option<std::path::PathBuf>, kind: &str) -> Result<PointCover, ConditionError> {
        let path = path.clone().ok_or_else(|| missing("--cover", kind))?;
        match self.inputs.load::<Cover>(&path).map_err(usage)? {
            Cover::Points(c) => Ok(c),
            Cover::Pairs(_) => Err(ConditionError::AmbientMismatch("points")),
        }
    }

    fn pair_cover(&mut self, path: &Option<std::path::PathBuf>, kind: &str) -> Result<PairCover, ConditionError> {
        let path = path.clone().ok_or_else(|| missing("--cover", kind))?;
        match self.inputs.load::<Cover>(&path).map_err(usage)? {
            Cover::Pairs(c) => Ok(c),
            Cover::Points(_) => Err(ConditionError::AmbientMismatch("pairs")),
        }
    }

    fn oracle(&mut self, args: &OracleArgs) -> Result<(Status, Value)> {
        let text = self.inputs.read(&args.input)?;
        let doc: Value = lipcert::io::from_document(&text).with_context(|| format!("schema error in {}", args.input.display()))?;
        let is_family = doc.get("members").is_some();
        self.param("what", &args.what);
        match args.what.as_str() {
            "covering" => {
                let space: FiniteMetricSpace = if is_family {
                    serde_json::from_value::<FunctionFamily>(doc)?.domain().clone()
                } else {
                    serde_json::from_value(doc)?
                };
                let mut report = json!({});
                if let Some(eps) = self.cli.eps {
                    report["eps"] = json!(eps);
                    report["covering_number"] = json!(exact_covering_number(&space, eps)?);
                }
                if let Some(grid) = &args.grid {
                    report["profile"] = value(covering_profile(&space, grid)?)?;
                }
                if report.as_object().is_some_and(|o| o.is_empty()) {
                    bail!("covering needs --eps or --grid");
                }
                Ok((Status::Pass, report))
            }
            "min-oscillation" => {
                let fam: FunctionFamily = serde_json::from_value(doc).context("min-oscillation needs a family")?;
                let fam = if args.difference { fam.difference_family() } else { fam };
                let kind: OscillationKind =
                    args.kind.as_deref().ok_or_else(|| anyhow!("--kind is required"))?.parse().map_err(|e: ConditionError| anyhow!(e))?;
                let budget = args.budget.ok_or_else(|| anyhow!("--budget is required"))?;
                let ambient = match (&args.points, &args.pairs) {
                    (Some(p), None) => Ambient::Points(p.clone()),
                    (None, Some(p)) => Ambient::Pairs(p.iter().map(|s| parse_pair(s)).collect::<Result<_>>()?),
                    (None, None) if !kind.on_pairs() => Ambient::Points((0..fam.points()).collect()),
                    (None, None) => bail!("pair kinds need --pairs"),
                    (Some(_), Some(_)) => bail!("give --points or --pairs, not both"),
                };
                let phi = match &args.phi {
                    Some(p) => Some(self.inputs.load::<ComparisonFunction>(p)?),
                    None => fam.phi().cloned(),
                };
                if kind.on_pairs() && phi.is_none() {
                    bail!("pair kinds need a comparison function");
                }
                let best = exact_min_oscillation(&fam, kind, phi.as_ref(), &ambient, budget)?;
                Ok((Status::Pass, json!({ "kind": kind.condition(), "budget": budget, "ambient": ambient, "minimum": best })))
            }
            "pigeonhole" => {
                let fam: FunctionFamily = serde_json::from_value(doc).context("pigeonhole needs a family")?;
                let cover = match &args.cover {
                    Some(p) => match self.inputs.load::<Cover>(p)? {
                        Cover::Points(c) => c,
                        Cover::Pairs(_) => bail!("pigeonhole needs a cover of the points"),
                    },
                    None => PointCover::trivial(fam.points()),
                };
                Ok((Status::Pass, json!({ "witness": pigeonhole_b_witness(&fam, &cover)? })))
            }
            other => bail!("unknown oracle `{other}`: expected covering, min-oscillation or pigeonhole"),
        }
    }

    fn fixture(&mut self, args: &FixtureArgs) -> Result<(Status, Value)> {
        let mut params = BTreeMap::new();
        for p in &args.params {
            let (k, v) = p.split_once('=').ok_or_else(|| anyhow!("parameter `{p}` is not key=value"))?;
            params.insert(k.trim().to_string(), v.trim().to_string());
        }
        self.param("fixture", &args.name);
        self.param("params", &params);
        let spec = FixtureSpec::parse(&args.name, &params).map_err(|e| match e {
            FixtureError::UnknownFixture(name) => {
                anyhow!("unknown fixture `{name}`; available: {}", lipcert::fixtures::NAMES.join(", "))
            }
            other => anyhow!(other),
        })?;
        let fixture = spec.build()?;
        let verification = fixture.verify()?;
        Ok((Status::from_pass(verification.all_hold), json!({ "fixture": fixture, "verification": verification })))
    }
}

fn missing(flag: &str, kind: &str) -> ConditionError {
    ConditionError::InvalidParameter(format!("MissingWitness: {kind} requires {flag}"))
}

fn usage(e: anyhow::Error) -> ConditionError {
    ConditionError::InvalidParameter(format!("{e:#}"))
}
