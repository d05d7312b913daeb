use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use s3knots::braid::{alexander_from_braid, exchange_reduce, torus_braid, transverse_invariants, BraidWord};
use s3knots::cabling::{iterated_cable, validate_descriptor, CableDescriptor};
use s3knots::kirby::{apply_moves, det, signature, FramedLink, KirbyMove};
use s3knots::knotalg::{
    builtin_presentation, complex_geodesic_length, geodesic_length, markov_numbers, markov_tree, presentation_check,
    traces_to_matrices, MatrixWire, Presentation, BUILTIN_NAMES,
};
use s3knots::lorenz::{
    close_return_candidates, integrate_lorenz, lobe_events, lorenz_invariants, reencode, symbols_to_string,
    LorenzParams, LorenzTrajectory, SymbolWord,
};
use s3knots::s3flow::{
    check_reeb_conditions, detect_closed_orbit, integrate_flow, omega_pairing, random_unit_point, torus_knot_type,
    winding_frequencies, FlowField, PointR4, TrajectoryS3, RATIO_TOL, SPHERE_TOL,
};

use super::args::*;
use super::output::{CliError, Document};

/// Tolerance for the pointwise Reeb conditions.
const REEB_TOL: f64 = 1e-12;
const GEODESIC_TOL: f64 = 1e-10;

pub fn run(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Flow(c) => flow(c),
        Command::Braid(c) => braid(c),
        Command::Cable(c) => cable(c),
        Command::Lorenz(c) => lorenz(c),
        Command::Markov(c) => markov(c),
        Command::Group(c) => group(c),
        Command::Kirby(c) => kirby(c),
    }
}

/// Inline JSON, or a path to a file holding it.
fn payload<T: DeserializeOwned>(flag: &str, raw: &str) -> Result<T, CliError> {
    let trimmed = raw.trim_start();
    let text = if trimmed.starts_with(['{', '[', '"']) {
        raw.to_string()
    } else {
        std::fs::read_to_string(raw).map_err(|e| CliError::usage(format!("--{flag}: cannot read {raw:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage(format!("--{flag}: {e}")))
}

fn numbers<const N: usize>(flag: &str, raw: &str) -> Result<[f64; N], CliError> {
    let parts: Vec<&str> = raw.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(CliError::usage(format!("--{flag} expects {N} comma-separated numbers, got {raw:?}")));
    }
    let mut out = [0.0; N];
    for (o, p) in out.iter_mut().zip(parts) {
        *o = p.parse().map_err(|_| CliError::usage(format!("--{flag}: {p:?} is not a number")))?;
    }
    Ok(out)
}

fn flow_field(params: &Option<String>) -> Result<FlowField, CliError> {
    params.as_deref().map_or(Ok(FlowField::Standard), |p| payload("params", p))
}

fn check_every(every: usize) -> Result<usize, CliError> {
    if every == 0 {
        return Err(CliError::usage("--every must be at least 1"));
    }
    Ok(every)
}

#[derive(Serialize)]
struct FlowSample {
    t: f64,
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    h: f64,
    #[serde(rename = "F")]
    f: f64,
}

fn flow_samples(traj: &TrajectoryS3, every: usize) -> Vec<FlowSample> {
    (0..traj.points.len())
        .step_by(every)
        .map(|k| {
            let p = traj.points[k];
            FlowSample { t: traj.times[k], x1: p.x1, y1: p.y1, x2: p.x2, y2: p.y2, h: traj.energy[k], f: traj.bott[k] }
        })
        .collect()
}

fn flow(cmd: &FlowCmd) -> Result<Value, CliError> {
    match cmd {
        FlowCmd::Trace { point, params, integration, eps } => {
            let every = check_every(integration.every)?;
            let p = PointR4::from_array(numbers("point", point)?);
            let field = flow_field(params)?;
            let traj = integrate_flow(p, field, integration.dt, integration.steps)?;
            let mut doc = Document::new("flow trace");
            doc.input("point", p)
                .input("field", field)
                .input("dt", integration.dt)
                .input("steps", integration.steps)
                .input("every", every)
                .input("eps", eps);
            doc.put("samples", flow_samples(&traj, every))
                .put("energy_drift", traj.max_energy_drift())
                .put("bott_drift", traj.max_bott_drift())
                .put("sphere_defect", traj.max_sphere_defect())
                .put("period", detect_closed_orbit(&traj, *eps))
                .put("frequencies", winding_frequencies(&traj));
            doc.tolerance("sphere", SPHERE_TOL).tolerance("closed_orbit_eps", *eps);
            Ok(doc.finish())
        }
        FlowCmd::Check { point, seed, count } => match (point, seed) {
            (Some(point), None) => {
                let p = PointR4::from_array(numbers("point", point)?);
                let c = check_reeb_conditions(p)?;
                let pairing = omega_pairing(p)?;
                let pass = (c.alpha_value - 1.0).abs() <= REEB_TOL && c.d_alpha_defect <= REEB_TOL;
                let mut doc = Document::new("flow check");
                doc.input("point", p);
                doc.put("alpha", c.alpha_value)
                    .put("defect", c.d_alpha_defect)
                    .put("omega_pairing", pairing)
                    .put("pass", pass);
                doc.tolerance("reeb", REEB_TOL).tolerance("sphere", SPHERE_TOL);
                Ok(doc.finish())
            }
            (None, Some(seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let (mut alpha_err, mut defect, mut pairing_err) = (0.0f64, 0.0f64, 0.0f64);
                for _ in 0..*count {
                    let p = random_unit_point(&mut rng);
                    let c = check_reeb_conditions(p)?;
                    alpha_err = alpha_err.max((c.alpha_value - 1.0).abs());
                    defect = defect.max(c.d_alpha_defect);
                    pairing_err = pairing_err.max((omega_pairing(p)? - 1.0).abs());
                }
                let mut doc = Document::new("flow check");
                doc.input("seed", seed).input("count", count);
                doc.put("max_alpha_error", alpha_err)
                    .put("max_defect", defect)
                    .put("max_omega_pairing_error", pairing_err)
                    .put("pass", alpha_err <= REEB_TOL && defect <= REEB_TOL);
                doc.tolerance("reeb", REEB_TOL);
                Ok(doc.finish())
            }
            _ => Err(CliError::usage("flow check needs exactly one of --point or --seed")),
        },
        FlowCmd::KnotType { omega, params, point, integration, depth } => {
            let mut doc = Document::new("flow knot-type");
            doc.input("depth", depth);
            let (w1, w2) = match omega {
                Some(o) => {
                    if params.is_some() {
                        return Err(CliError::usage("--omega and --params are exclusive"));
                    }
                    let [w1, w2] = numbers("omega", o)?;
                    doc.input("omega", [w1, w2]);
                    (w1, w2)
                }
                None => {
                    let p = PointR4::from_array(numbers("point", point)?);
                    let field = flow_field(params)?;
                    let traj = integrate_flow(p, field, integration.dt, integration.steps)?;
                    doc.input("point", p)
                        .input("field", field)
                        .input("dt", integration.dt)
                        .input("steps", integration.steps);
                    let f = winding_frequencies(&traj).ok_or_else(|| CliError {
                        exit: super::output::EXIT_DOMAIN,
                        module: "s3flow",
                        code: "domain",
                        message: "orbit passes through a core circle; winding frequencies undefined".into(),
                    })?;
                    doc.put("frequencies", f);
                    f
                }
            };
            let kt = torus_knot_type(w1, w2, *depth)?;
            doc.put("knot_type", kt);
            if let Some(kt) = kt {
                let q = i64::try_from(kt.q).map_err(|_| CliError::usage("denominator too large"))?;
                let strands = u32::try_from(kt.p).map_err(|_| CliError::usage("numerator too large"))?;
                let b = torus_braid(strands, q, kt.orientation)?;
                let alex = if b.is_knot() { Some(alexander_from_braid(&b)?) } else { None };
                doc.put("braid", &b).put("alexander", alex);
            }
            doc.tolerance("ratio", RATIO_TOL);
            Ok(doc.finish())
        }
    }
}

fn braid(cmd: &BraidCmd) -> Result<Value, CliError> {
    match cmd {
        BraidCmd::Invariants { word } => {
            let b: BraidWord = payload("word", word)?;
            let mut doc = Document::new("braid invariants");
            doc.input("word", &b);
            doc.put("invariants", transverse_invariants(&b)).put("permutation", b.permutation());
            Ok(doc.finish())
        }
        BraidCmd::Alexander { word } => {
            let b: BraidWord = payload("word", word)?;
            let mut doc = Document::new("braid alexander");
            doc.input("word", &b);
            doc.put("alexander", alexander_from_braid(&b)?);
            Ok(doc.finish())
        }
        BraidCmd::Reduce { word, depth } => {
            let b: BraidWord = payload("word", word)?;
            let r = exchange_reduce(&b, *depth);
            let mut doc = Document::new("braid reduce");
            doc.input("word", &b).input("depth", depth);
            doc.put("reduced", &r.word)
                .put("moves", &r.moves)
                .put("exhausted", r.exhausted)
                .put("expanded", r.expanded)
                .put("invariants_before", transverse_invariants(&b))
                .put("invariants_after", transverse_invariants(&r.word));
            Ok(doc.finish())
        }
    }
}

fn cable(cmd: &CableCmd) -> Result<Value, CliError> {
    match cmd {
        CableCmd::Build { params } => {
            let d: CableDescriptor = payload("params", params)?;
            let b = iterated_cable(&d)?;
            let alex = if b.is_knot() { Some(alexander_from_braid(&b)?) } else { None };
            let mut doc = Document::new("cable build");
            doc.input("descriptor", &d);
            doc.put("braid", &b).put("invariants", transverse_invariants(&b)).put("alexander", alex);
            Ok(doc.finish())
        }
        CableCmd::Validate { params } => {
            let d: CableDescriptor = payload("params", params)?;
            let v = validate_descriptor(&d);
            let mut doc = Document::new("cable validate");
            doc.input("descriptor", &d);
            doc.put("valid", v.is_empty()).put("violations", v);
            Ok(doc.finish())
        }
    }
}

fn lorenz_run(run: &LorenzRun, doc: &mut Document) -> Result<LorenzTrajectory, CliError> {
    let params: LorenzParams = run.params.as_deref().map_or(Ok(LorenzParams::default()), |p| payload("params", p))?;
    let x0 = numbers("point", &run.point)?;
    doc.input("params", params).input("point", x0).input("dt", run.dt).input("steps", run.steps);
    Ok(integrate_lorenz(&params, x0, run.dt, run.steps)?)
}

fn lorenz(cmd: &LorenzCmd) -> Result<Value, CliError> {
    match cmd {
        LorenzCmd::Simulate { run, every } => {
            let every = check_every(*every)?;
            let mut doc = Document::new("lorenz simulate");
            let traj = lorenz_run(run, &mut doc)?;
            doc.input("every", every);
            let samples: Vec<Value> = (0..traj.points.len())
                .step_by(every)
                .map(|k| {
                    let [x, y, z] = traj.points[k];
                    json!({ "t": traj.time(k), "x": x, "y": y, "z": z })
                })
                .collect();
            doc.put("samples", samples).put("max_abs_z", traj.max_abs_z());
            Ok(doc.finish())
        }
        LorenzCmd::Encode { run, eps, depth } => {
            let mut doc = Document::new("lorenz encode");
            let traj = lorenz_run(run, &mut doc)?;
            doc.input("eps", eps).input("depth", depth);
            let events = lobe_events(&traj);
            let symbols: Vec<_> = events.iter().map(|e| e.symbol).collect();
            let candidates: Vec<Value> = close_return_candidates(&traj, *eps, *depth)
                .iter()
                .map(|c| {
                    let again = reencode(&traj, c);
                    json!({
                        "start": c.start,
                        "period": c.period,
                        "word": c.word,
                        "reencoded": again,
                        "consistent": again == c.word,
                        "time": traj.time(c.start_index),
                    })
                })
                .collect();
            doc.put("symbols", symbols_to_string(&symbols))
                .put("events", events.len())
                .put("close_returns", candidates);
            doc.tolerance("close_return_eps", *eps);
            Ok(doc.finish())
        }
        LorenzCmd::Template { word } => {
            let w: SymbolWord = word.parse()?;
            let inv = lorenz_invariants(&w)?;
            let mut doc = Document::new("lorenz template");
            doc.input("word", word);
            doc.put("invariants", inv);
            Ok(doc.finish())
        }
    }
}

fn markov(cmd: &MarkovCmd) -> Result<Value, CliError> {
    match cmd {
        MarkovCmd::Tree { depth } => {
            let tree = markov_tree(*depth)?;
            let mut doc = Document::new("markov tree");
            doc.input("depth", depth);
            doc.put("numbers", markov_numbers(&tree))
                .put("count", tree.len())
                .put("triples", tree.iter().map(|t| t.to_array()).collect::<Vec<_>>());
            Ok(doc.finish())
        }
        MarkovCmd::Matrices { trace } => {
            let [x, y, z] = numbers::<3>("trace", trace)?;
            let int = |v: f64| {
                (v.fract() == 0.0 && v.abs() < 1e15)
                    .then_some(v as i64)
                    .ok_or_else(|| CliError::usage(format!("--trace entries must be integers, got {v}")))
            };
            let pair = traces_to_matrices(int(x)?, int(y)?, int(z)?)?;
            let mut doc = Document::new("markov matrices");
            doc.input("trace", [x, y, z]);
            doc.put("a", MatrixWire::from(&pair.a)).put("b", MatrixWire::from(&pair.b)).put("checks", &pair.checks);
            Ok(doc.finish())
        }
        MarkovCmd::Geodesic { trace } => {
            let mut doc = Document::new("markov geodesic");
            if trace.contains(',') {
                let [re, im] = numbers("trace", trace)?;
                let l = complex_geodesic_length(Complex64::new(re, im))?;
                doc.input("trace", [re, im]);
                doc.put("length", [l.re, l.im]);
            } else {
                let [x] = numbers("trace", trace)?;
                doc.input("trace", x);
                doc.put("length", geodesic_length(x)?);
            }
            doc.tolerance("length", GEODESIC_TOL);
            Ok(doc.finish())
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupParams {
    presentation: String,
    assignment: BTreeMap<String, MatrixWire>,
    #[serde(default)]
    projective: bool,
}

fn group(cmd: &GroupCmd) -> Result<Value, CliError> {
    let GroupCmd::Check { name, conjugate_root, params } = cmd;
    let mut doc = Document::new("group check");
    let (pres, assignment, projective) = match (name, params) {
        (Some(name), None) => {
            let named = builtin_presentation(name, *conjugate_root).ok_or_else(|| {
                CliError::usage(format!("unknown presentation {name:?}; known: {}", BUILTIN_NAMES.join(", ")))
            })?;
            doc.input("name", name).input("conjugate_root", conjugate_root);
            (named.presentation, named.assignment, named.projective)
        }
        (None, Some(raw)) => {
            let p: GroupParams = payload("params", raw)?;
            let pres = Presentation::parse(&p.presentation)?;
            let mut assignment = BTreeMap::new();
            for (k, m) in &p.assignment {
                assignment.insert(k.clone(), m.to_eisenstein()?);
            }
            doc.input("presentation", &p.presentation)
                .input("assignment", &p.assignment)
                .input("projective", p.projective);
            (pres, assignment, p.projective)
        }
        _ => return Err(CliError::usage("group check needs exactly one of --name or --params")),
    };
    let report = presentation_check(&pres, &assignment, projective)?;
    let wire: BTreeMap<&String, MatrixWire> = assignment.iter().map(|(k, m)| (k, MatrixWire::from(m))).collect();
    doc.put("presentation", pres.to_string()).put("matrices", wire).put("report", report);
    Ok(doc.finish())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KirbyParams {
    link: FramedLink,
    #[serde(default)]
    moves: Vec<KirbyMove>,
}

fn kirby(cmd: &KirbyCmd) -> Result<Value, CliError> {
    let KirbyCmd::Apply { params } = cmd;
    let p: KirbyParams = payload("params", params)?;
    let steps = apply_moves(&p.link, &p.moves)?;
    let mut doc = Document::new("kirby apply");
    doc.input("link", &p.link).input("moves", &p.moves);
    doc.put("initial", json!({ "det": det(p.link.matrix()).to_string(), "signature": signature(p.link.matrix()) }))
        .put("steps", steps);
    Ok(doc.finish())
}
