use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use grascat::combinat::{self, KSubset, DEFAULT_CLIQUE_CAP};
use grascat::kinematics::{self, KinBasis, KinPoint};
use grascat::polynomial::{self, IdentityMode};
use grascat::polytope;
use grascat::rat::{fmt_q, parse_q};
use grascat::roots::{self, combination_vector, Fan, GridVector};
use grascat::{data, Q};

const SCHEMA: &str = "grascat/1";

#[derive(Parser)]
#[command(name = "grascat", version, about = "Noncrossing complexes, generalized roots and amplitudes on Gr(k,n)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    cfg: RunConfig,
}

#[derive(Args, Clone)]
struct RunConfig {
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Symbolic)]
    mode: Mode,
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_CLIQUE_CAP)]
    max_cliques: usize,
    /// Hull computations above this dimension need --unsafe-large.
    #[arg(long, global = true, default_value_t = 12)]
    max_hull_dim: usize,
    /// Allow sizes beyond the default caps.
    #[arg(long, global = true)]
    unsafe_large: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Symbolic,
    Random,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Noncrossing complex queries.
    Nc {
        #[arg(value_enum)]
        what: NcWhat,
    },
    /// Positive noncrossing expansion of a vector (--input) or of random vectors.
    Decompose,
    /// Root polytope volume from the noncrossing triangulation.
    Volume,
    /// Polytope with facets gamma_J + 1 >= 0 and the Newton polytope of prod tau.
    Pk {
        #[arg(value_enum)]
        what: PkWhat,
    },
    /// Facet constants of the Newton polytope of prod tau.
    Newton,
    /// Binary identities u_J + prod u_I^c = 1.
    UCheck {
        #[arg(long = "J")]
        j: Option<String>,
    },
    /// Sum over maximal noncrossing collections of prod 1/eta.
    Amplitude {
        #[arg(long)]
        pk: bool,
        /// JSON file, `builtin:primes36` or `random-interior`
        #[arg(long)]
        eta: Option<String>,
        /// apply the k = 3 kinematic shift first
        #[arg(long)]
        shift: bool,
    },
    /// Change of basis between s-values and the planar basis.
    Kinematics {
        #[arg(value_enum)]
        what: KinWhat,
    },
    /// Random search for flips where the shifted difference is not positive.
    Search,
}

#[derive(ValueEnum, Clone, Copy)]
enum NcWhat {
    Count,
    List,
    Degree,
}

#[derive(ValueEnum, Clone, Copy)]
enum PkWhat {
    Facets,
    Vertices,
    Fvector,
}

#[derive(ValueEnum, Clone, Copy)]
enum KinWhat {
    Basis,
    EtaToS,
    SToEta,
}

struct Report {
    body: Value,
    pass: bool,
    warnings: Vec<String>,
}

impl Report {
    fn new(body: Value, pass: bool) -> Self {
        Report { body, pass, warnings: Vec::new() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            if let Err(e) = emit(&cli.cfg, &r) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cfg: &RunConfig, r: &Report) -> anyhow::Result<()> {
    let mut body = r.body.clone();
    if let Value::Object(m) = &mut body {
        m.insert("schema".into(), SCHEMA.into());
        m.insert("pass".into(), r.pass.into());
    }
    let text = match cfg.format {
        Format::Json => serde_json::to_string_pretty(&body)? + "\n",
        Format::Text => to_text(&body, ""),
    };
    match &cfg.output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_text(v: &Value, prefix: &str) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(key, x)| {
                let p = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                match x {
                    Value::Object(_) => to_text(x, &p),
                    _ => format!("{p}: {}\n", scalar(x)),
                }
            })
            .collect(),
        _ => format!("{prefix}: {}\n", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn kn(cfg: &RunConfig) -> anyhow::Result<(usize, usize)> {
    let k = cfg.k.ok_or_else(|| anyhow!("--k is required"))?;
    let n = cfg.n.ok_or_else(|| anyhow!("--n is required"))?;
    combinat::check_ambient(k, n)?;
    Ok((k, n))
}

/// Clique cap from --max-cliques and GRASCAT_CAP_MB (rough bytes per stored collection).
fn clique_cap(cfg: &RunConfig, k: usize, n: usize) -> anyhow::Result<usize> {
    let mut cap = cfg.max_cliques;
    if let Ok(mb) = std::env::var("GRASCAT_CAP_MB") {
        let mb: usize = mb.trim().parse().with_context(|| format!("GRASCAT_CAP_MB={mb}"))?;
        let per = (k - 1) * (n - k - 1) * (k * 8 + 48) + 64;
        cap = cap.min(mb.saturating_mul(1 << 20) / per);
    }
    if cfg.unsafe_large {
        cap = cap.max(cfg.max_cliques);
    }
    Ok(cap)
}

fn hull_guard(cfg: &RunConfig, k: usize, n: usize) -> anyhow::Result<()> {
    let d = (k - 1) * (n - k - 1);
    if d > cfg.max_hull_dim && !cfg.unsafe_large {
        bail!("hull dimension {d} exceeds --max-hull-dim {}; pass --unsafe-large to proceed", cfg.max_hull_dim);
    }
    Ok(())
}

fn read_json(cfg: &RunConfig) -> anyhow::Result<Value> {
    let p = cfg.input.as_ref().ok_or_else(|| anyhow!("--input is required"))?;
    let s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(serde_json::from_str(&s).with_context(|| format!("parsing {}", p.display()))?)
}

/// (k, n) from the file when present, else from the flags.
fn file_kn(cfg: &RunConfig, v: &Value) -> anyhow::Result<(usize, usize)> {
    let get = |key: &str| v.get(key).and_then(Value::as_u64).map(|x| x as usize);
    let k = get("k").or(cfg.k).ok_or_else(|| anyhow!("k missing in input and flags"))?;
    let n = get("n").or(cfg.n).ok_or_else(|| anyhow!("n missing in input and flags"))?;
    combinat::check_ambient(k, n)?;
    Ok((k, n))
}

fn value_map(v: &Value, key: &str, n: usize) -> anyhow::Result<BTreeMap<KSubset, Q>> {
    let m = v.get(key).and_then(Value::as_object).ok_or_else(|| anyhow!("input has no \"{key}\" object"))?;
    Ok(kinematics::parse_values(n, m)?)
}

fn q_map_json(m: &BTreeMap<KSubset, Q>) -> Value {
    Value::Object(m.iter().map(|(j, x)| (j.to_string(), fmt_q(x).into())).collect())
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let cfg = &cli.cfg;
    match &cli.cmd {
        Cmd::Nc { what } => cmd_nc(cfg, *what),
        Cmd::Decompose => cmd_decompose(cfg),
        Cmd::Volume => cmd_volume(cfg),
        Cmd::Pk { what } => cmd_pk(cfg, *what),
        Cmd::Newton => cmd_newton(cfg),
        Cmd::UCheck { j } => cmd_ucheck(cfg, j.as_deref()),
        Cmd::Amplitude { pk, eta, shift } => cmd_amplitude(cfg, *pk, eta.as_deref(), *shift),
        Cmd::Kinematics { what } => cmd_kinematics(cfg, *what),
        Cmd::Search => cmd_search(cfg),
    }
}

fn cmd_nc(cfg: &RunConfig, what: NcWhat) -> anyhow::Result<Report> {
    match what {
        NcWhat::Count | NcWhat::List => {
            let (k, n) = kn(cfg)?;
            let cols = combinat::enumerate_maximal_noncrossing(k, n, clique_cap(cfg, k, n)?)?;
            let catalan = combinat::catalan_mdim(k, n - k);
            let pass = num_bigint::BigUint::from(cols.len()) == catalan;
            let mut body = json!({"command": "nc", "k": k, "n": n, "count": cols.len(), "catalan": catalan.to_string()});
            if matches!(what, NcWhat::List) {
                body["collections"] =
                    cols.iter().map(|c| c.members.iter().map(|j| j.to_string()).collect::<Vec<_>>()).collect();
            }
            Ok(Report::new(body, pass))
        }
        NcWhat::Degree => {
            let v = read_json(cfg)?;
            let (k, n) = file_kn(cfg, &v)?;
            let coeffs = value_map(&v, "coeffs", n)?;
            let target = combination_vector(k, n, &coeffs);
            let e = roots::noncrossing_decompose(&target)?;
            let pass = e.is_valid() && e.resum(k, n) == target;
            Ok(Report::new(
                json!({"command": "nc degree", "k": k, "n": n, "degree": e.degree(), "expansion": e.to_json(k, n)}),
                pass,
            ))
        }
    }
}

fn cmd_decompose(cfg: &RunConfig) -> anyhow::Result<Report> {
    if cfg.input.is_some() {
        let v = read_json(cfg)?;
        let (k, n) = file_kn(cfg, &v)?;
        let target = if let Some(rows) = v.get("grid").and_then(Value::as_array) {
            let mut flat = Vec::new();
            for r in rows {
                for x in r.as_array().ok_or_else(|| anyhow!("grid rows must be arrays"))? {
                    flat.push(match x {
                        Value::String(s) => parse_q(s)?,
                        Value::Number(x) => parse_q(&x.to_string())?,
                        _ => bail!("grid entries must be numbers or rational strings"),
                    });
                }
            }
            GridVector::from_flat(k, n, flat)?
        } else {
            combination_vector(k, n, &value_map(&v, "coeffs", n)?)
        };
        let e = roots::noncrossing_decompose(&target)?;
        let pass = e.is_valid() && e.resum(k, n) == target;
        return Ok(Report::new(json!({"command": "decompose", "input": target.to_json(), "expansion": e.to_json(k, n), "degree": e.degree()}), pass));
    }
    let (k, n) = kn(cfg)?;
    let fan = Fan::new(k, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = Vec::new();
    for t in 0..cfg.trials {
        let v = random_h_vector(k, n, &mut rng);
        let e = fan.decompose(&v)?;
        if !(e.is_valid() && e.resum(k, n) == v && e.degree() <= fan.dim()) {
            failures.push(json!({"trial": t, "input": v.to_json()}));
        }
    }
    let pass = failures.is_empty();
    Ok(Report::new(
        json!({"command": "decompose", "k": k, "n": n, "trials": cfg.trials, "seed": cfg.seed, "failures": failures}),
        pass,
    ))
}

fn random_h_vector(k: usize, n: usize, rng: &mut ChaCha8Rng) -> GridVector {
    use rand::Rng;
    let r: Vec<Q> = (0..(k - 1) * (n - k - 1))
        .map(|_| Q::new(rng.gen_range(-50i64..=50).into(), rng.gen_range(1i64..=9).into()))
        .collect();
    GridVector::from_reduced(k, n, &r)
}

fn cmd_volume(cfg: &RunConfig) -> anyhow::Result<Report> {
    let (k, n) = kn(cfg)?;
    let r = polytope::triangulation_volume(k, n, clique_cap(cfg, k, n)?)?;
    let catalan = combinat::catalan_mdim(k, n - k);
    let pass = r.unimodular && r.volume.to_biguint() == Some(catalan.clone());
    Ok(Report::new(
        json!({"command": "volume", "k": k, "n": n, "collections": r.collections, "volume": r.volume.to_string(),
               "unimodular": r.unimodular, "catalan": catalan.to_string()}),
        pass,
    ))
}

fn cmd_pk(cfg: &RunConfig, what: PkWhat) -> anyhow::Result<Report> {
    let (k, n) = kn(cfg)?;
    hull_guard(cfg, k, n)?;
    let nonfrozen = combinat::nonfrozen_subsets(k, n)?.len();
    match what {
        PkWhat::Facets => {
            let ineqs = polytope::pk_inequalities(k, n)?;
            let c = polytope::pk_check(k, n)?;
            let tf = polytope::tau_newton_facets(k, n)?;
            let pass = c.facets == nonfrozen && c.all_facet_defining;
            Ok(Report::new(
                json!({"command": "pk facets", "k": k, "n": n, "facets": c.facets,
                       "inequalities": ineqs.iter().map(|(j, _)| format!("gamma_{j} + 1 >= 0")).collect::<Vec<_>>(),
                       "all_facet_defining": c.all_facet_defining,
                       "newton_constants": tf.constants.iter().map(|(j, x)| (j.to_string(), Value::from(fmt_q(x)))).collect::<serde_json::Map<_, _>>()}),
                pass,
            ))
        }
        PkWhat::Vertices => {
            let tf = polytope::tau_newton_facets(k, n)?;
            let c = polytope::pk_check(k, n)?;
            let catalan = combinat::catalan_mdim(k, n - k);
            let pass = tf.matches_newton && c.matches_newton;
            Ok(Report::new(
                json!({"command": "pk vertices", "k": k, "n": n, "vertices": tf.grid_vertices.len(),
                       "catalan": catalan.to_string(),
                       "vertex_list": tf.grid_vertices.iter().map(|g| g.to_json()).collect::<Vec<_>>(),
                       "facet_polytope_vertices": c.vertices, "facet_polytope_matches_laurent_newton": c.matches_newton}),
                pass,
            ))
        }
        PkWhat::Fvector => {
            let tf = polytope::tau_newton_facets(k, n)?;
            let pi = polytope::pk_polytope(k, n)?;
            Ok(Report::new(
                json!({"command": "pk fvector", "k": k, "n": n, "fvector": tf.polytope.f_vector(),
                       "facet_polytope_fvector": pi.f_vector()}),
                tf.matches_newton,
            ))
        }
    }
}

fn cmd_newton(cfg: &RunConfig) -> anyhow::Result<Report> {
    let (k, n) = kn(cfg)?;
    hull_guard(cfg, k, n)?;
    let tf = polytope::tau_newton_facets(k, n)?;
    let constants: serde_json::Map<String, Value> =
        tf.constants.iter().map(|(j, x)| (j.to_string(), fmt_q(x).into())).collect();
    let pass = tf.matches_newton && tf.factors_are_planar_faces;
    Ok(Report::new(
        json!({"command": "newton", "k": k, "n": n, "constants": constants,
               "lambda": tf.lambda.iter().map(fmt_q).collect::<Vec<_>>(),
               "facet_subsets": tf.facet_subsets.iter().map(|j| j.to_string()).collect::<Vec<_>>(),
               "factors_are_planar_faces": tf.factors_are_planar_faces, "matches_newton": tf.matches_newton,
               "fvector": tf.polytope.f_vector()}),
        pass,
    ))
}

fn cmd_ucheck(cfg: &RunConfig, j: Option<&str>) -> anyhow::Result<Report> {
    let (k, n) = kn(cfg)?;
    let mode = match cfg.mode {
        Mode::Symbolic => IdentityMode::Symbolic,
        Mode::Random => IdentityMode::Random { trials: cfg.trials, seed: cfg.seed },
    };
    let js = match j {
        Some(s) => vec![KSubset::parse(n, s)?],
        None => combinat::nonfrozen_subsets(k, n)?,
    };
    if js.iter().any(|x| x.k() != k) {
        bail!("--J has the wrong size for k = {k}");
    }
    let verdicts = match mode {
        IdentityMode::Symbolic => {
            use rayon::prelude::*;
            js.par_iter().map(|x| polynomial::binary_identity_check(x, &mode)).collect::<Result<Vec<_>, _>>()?
        }
        IdentityMode::Random { .. } => polynomial::binary_identity_checks(&js, &mode)?,
    };
    let pass = verdicts.iter().all(|v| v.pass);
    let mut body = json!({"command": "u-check", "k": k, "n": n, "checked": verdicts.len(),
                          "passed": verdicts.iter().filter(|v| v.pass).count(),
                          "verdicts": verdicts.iter().map(|v| v.to_json()).collect::<Vec<_>>()});
    if let Some(x) = js.first().filter(|_| j.is_some()) {
        body["exponents"] = Value::Object(
            polynomial::crossing_exponents(x)?.iter().map(|(i, c)| (i.to_string(), Value::from(*c))).collect(),
        );
    }
    if let IdentityMode::Random { .. } = mode {
        body["seed"] = cfg.seed.into();
        body["trials"] = cfg.trials.into();
    }
    Ok(Report::new(body, pass))
}

fn cmd_amplitude(cfg: &RunConfig, pk: bool, eta: Option<&str>, shift: bool) -> anyhow::Result<Report> {
    let mut warnings = Vec::new();
    let mut body = json!({"command": "amplitude"});
    let (k, n, mut values) = if pk {
        let (k, n) = kn(cfg)?;
        let basis = KinBasis::new(k, n)?;
        (k, n, basis.s_to_eta(&kinematics::pk_point(k, n)?))
    } else {
        match eta {
            Some("builtin:primes36") => (3, 6, kinematics::prime_eta_36()),
            Some("random-interior") => {
                let (k, n) = kn(cfg)?;
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                let p = kinematics::random_interior_kd(k, n, &mut rng)?;
                body["seed"] = cfg.seed.into();
                (k, n, KinBasis::new(k, n)?.s_to_eta(&p))
            }
            Some(path) => {
                let s = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                let v: Value = serde_json::from_str(&s).with_context(|| format!("parsing {path}"))?;
                let (k, n) = file_kn(cfg, &v)?;
                let m = if v.get("eta").is_some() {
                    value_map(&v, "eta", n)?
                } else {
                    let s = value_map(&v, "s", n)?;
                    KinBasis::new(k, n)?.s_to_eta(&KinPoint { k, n, values: s })
                };
                (k, n, m)
            }
            None => bail!("give --pk or --eta"),
        }
    };
    if shift {
        if k != 3 {
            bail!("the kinematic shift is defined for k = 3 only");
        }
        if kinematics::shift_beyond_validated(n) {
            if !cfg.unsafe_large {
                bail!("shift for n = {n} is beyond the validated range; pass --unsafe-large");
            }
            warnings.push(format!("shift for n = {n} is beyond the validated range"));
        }
        let table = kinematics::eta_hat_shift(n)?;
        let hat: BTreeMap<KSubset, Q> =
            table.iter().map(|(j, c)| (j.clone(), kinematics::eval_combination(c, &values))).collect();
        body["shifted"] = q_map_json(
            &hat.iter().filter(|(j, x)| values.get(*j) != Some(*x)).map(|(j, x)| (j.clone(), x.clone())).collect(),
        );
        values = hat;
    }
    let (value, terms) = kinematics::nc_amplitude(k, n, &values, clique_cap(cfg, k, n)?)?;
    body["k"] = k.into();
    body["n"] = n.into();
    body["value"] = fmt_q(&value).into();
    body["terms"] = terms.into();
    let mut r = Report::new(body, true);
    if pk {
        let catalan = combinat::catalan_mdim(k, n - k);
        r.body["catalan"] = catalan.to_string().into();
        r.pass = value == Q::from_integer(num_bigint::BigInt::from(catalan));
    }
    if eta == Some("builtin:primes36") && shift {
        r.pass = fmt_q(&value) == data::PRIME_AMPLITUDE_36;
    }
    r.warnings = warnings;
    Ok(r)
}

fn cmd_kinematics(cfg: &RunConfig, what: KinWhat) -> anyhow::Result<Report> {
    match what {
        KinWhat::Basis => {
            let (k, n) = kn(cfg)?;
            let b = KinBasis::new(k, n)?;
            let frozen_vanish = combinat::all_subsets(k, n)
                .iter()
                .filter(|j| j.is_frozen())
                .all(|j| b.restrict(&kinematics::eta_functional(j)).iter().all(|x| *x == Q::from_integer(0.into())));
            let expected = b.subsets.len() - n;
            Ok(Report::new(
                json!({"command": "kinematics basis", "k": k, "n": n, "dimension": b.dim(), "expected": expected,
                       "frozen_eta_vanish": frozen_vanish}),
                b.dim() == expected && frozen_vanish,
            ))
        }
        KinWhat::EtaToS => {
            let v = read_json(cfg)?;
            let (k, n) = file_kn(cfg, &v)?;
            let b = KinBasis::new(k, n)?;
            let p = b.eta_to_s(&value_map(&v, "eta", n)?);
            let pass = p.in_kinematic_space();
            let mut body = p.to_json();
            body["command"] = "kinematics eta-to-s".into();
            body["in_kd"] = kinematics::kd_membership(&p, false)?.into();
            body["in_kd_interior"] = kinematics::kd_membership(&p, true)?.into();
            Ok(Report::new(body, pass))
        }
        KinWhat::SToEta => {
            let v = read_json(cfg)?;
            let (k, n) = file_kn(cfg, &v)?;
            let p = KinPoint { k, n, values: value_map(&v, "s", n)? };
            if !p.in_kinematic_space() {
                bail!("input s-values violate momentum conservation");
            }
            let eta = KinBasis::new(k, n)?.s_to_eta(&p);
            Ok(Report::new(json!({"command": "kinematics s-to-eta", "k": k, "n": n, "eta": q_map_json(&eta)}), true))
        }
    }
}

fn cmd_search(cfg: &RunConfig) -> anyhow::Result<Report> {
    let n = cfg.n.ok_or_else(|| anyhow!("--n is required"))?;
    if cfg.k.is_some_and(|k| k != 3) {
        bail!("the flip search is defined for k = 3 only");
    }
    combinat::check_ambient(3, n)?;
    let mut warnings = Vec::new();
    if kinematics::shift_beyond_validated(n) {
        if !cfg.unsafe_large {
            bail!("shift for n = {n} is beyond the validated range; pass --unsafe-large");
        }
        warnings.push(format!("shift for n = {n} is beyond the validated range"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let r = kinematics::flip_positivity_search(n, cfg.trials, &mut rng)?;
    let viol: Vec<Value> = r
        .violations
        .iter()
        .map(|(t, f, x)| {
            json!({"sample": t, "I": f.i.to_string(), "J": f.j.to_string(), "I2": f.i2.to_string(),
                   "J2": f.j2.to_string(), "difference": fmt_q(x)})
        })
        .collect();
    let mut rep = Report::new(
        json!({"command": "search", "k": 3, "n": n, "samples": r.samples, "seed": cfg.seed, "flips": r.flips,
               "violations": viol}),
        true,
    );
    rep.warnings = warnings;
    Ok(rep)
}
