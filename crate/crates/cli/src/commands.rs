//! Subcommand parsing and execution.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rescheck::{chart_reduce, rank_condition, ChartMatrix, RankMode, RankOptions};
use ring::{hilbert_p, with_field, Field, FieldSpec, Weights};
use serde_json::{json, Value};
use surfex::{build_alpha_tilde, random_symmetric, verify_example, ParamSet, VerifyOptions, SYMMETRY_TWIST};

use crate::config::Config;
use crate::report::{CheckLine, Report, TimingLog};
use crate::suite::{self, SuiteConfig};
use crate::CliError;

const SUPPORTED_PRIMES: [u32; 5] = [65521, 32003, 40009, 1000003, 2147483647];
const RANDOM_SALT: u64 = 0x5eed_c0de;

#[derive(Parser, Debug)]
#[command(name = "wps", about = "Computations on weighted projective space and the example surface")]
pub struct Cli {
    /// `key = value` file; flags override its entries.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Write stage timings here instead of stderr.
    #[arg(long, global = true)]
    pub timings: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hilbert function `p(w, d)` and the monomial alternating-sum identity.
    Hilbert(WeightArgs),
    /// Exactness of the Koszul complex in a range of degrees.
    KoszulCheck(WeightArgs),
    /// Cohomology table of `O(d)` or `Omega^j(d)`.
    CohomTable(CohomArgs),
    /// Beilinson terms `Y^p` for `O(d)`.
    BeilinsonTerms(WeightArgs),
    /// The resolution of `O(2)` and the `z` coefficients.
    O2Resolution(WeightArgs),
    /// Rank condition for the example matrix on the chart `x1 = 1`.
    RankCondition(ExampleArgs),
    /// The full verification of the example surface.
    VerifyExample(ExampleArgs),
    /// The acceptance suite.
    Run(RunArgs),
}

#[derive(Args, Debug, Default)]
pub struct WeightArgs {
    /// Comma separated weights.
    #[arg(long)]
    pub weights: Option<String>,
    /// Top degree (or the twist `d`).
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct CohomArgs {
    #[arg(long)]
    pub weights: Option<String>,
    /// `O(d)` or `Omega^j(d)`.
    #[arg(long)]
    pub sheaf: Option<String>,
    /// Twist window `lo..hi`.
    #[arg(long, allow_hyphen_values = true)]
    pub twists: Option<String>,
    #[arg(long)]
    pub field: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct ExampleArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub field: Option<String>,
    /// Fraction of minors tested, in (0, 1].
    #[arg(long)]
    pub sampling: Option<f64>,
    #[arg(long)]
    pub presentation_bound: Option<i64>,
    /// Also run the rank condition on a random symmetric matrix.
    #[arg(long)]
    pub negative_control: Option<bool>,
}

#[derive(Args, Debug, Default)]
pub struct RunArgs {
    #[arg(long)]
    pub all_checks: bool,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub sampling: Option<f64>,
}

/// What a subcommand produced.
pub struct Outcome {
    pub report: Report,
    pub timings: TimingLog,
}

fn weights(cfg: &Config, flag: &Option<String>, default: &[u32]) -> Result<Weights, CliError> {
    let text = cfg.pick(flag.clone(), "weights")?;
    let Some(text) = text else {
        return Ok(Weights::of(default));
    };
    let v: Result<Vec<u32>, _> = text.split(',').map(|t| t.trim().parse::<u32>()).collect();
    let v = v.map_err(|e| CliError::Usage(format!("weights `{text}`: {e}")))?;
    Weights::new(v).map_err(|e| CliError::Usage(format!("weights `{text}`: {e}")))
}

fn field(cfg: &Config, flag: &Option<String>) -> Result<FieldSpec, CliError> {
    let text = cfg.pick(flag.clone(), "field")?.unwrap_or_else(|| "GF(65521)".into());
    let spec: FieldSpec = text.parse().map_err(|e: ring::RingError| CliError::Usage(e.to_string()))?;
    match spec {
        FieldSpec::Prime(p) if !SUPPORTED_PRIMES.contains(&p) => Err(CliError::Usage(format!("unsupported prime {p}; use one of {SUPPORTED_PRIMES:?} or Q"))),
        s => Ok(s),
    }
}

fn sampling(cfg: &Config, flag: Option<f64>) -> Result<Option<f64>, CliError> {
    let s = cfg.pick(flag, "sampling")?;
    match s {
        Some(f) if !(f > 0.0 && f <= 1.0) => Err(CliError::Usage(format!("sampling fraction {f} is not in (0, 1]"))),
        s => Ok(s),
    }
}

fn rank_mode(fraction: Option<f64>, seed: u64) -> RankMode {
    match fraction {
        Some(f) if f < 1.0 => RankMode::Sampled { fraction: f, seed },
        _ => RankMode::Full,
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn twist_window(text: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("twists `{text}`: expected lo..hi"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim_start_matches('=').trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// `O(d)` or `Omega^j(d)`.
fn parse_sheaf(text: &str) -> Result<(Option<i64>, i64), CliError> {
    let bad = || CliError::Usage(format!("sheaf `{text}`: expected O(d) or Omega^j(d)"));
    let t = text.trim();
    let inner = |s: &str| s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).and_then(|r| r.trim().parse::<i64>().ok());
    let Some(rest) = t.strip_prefix("Omega^") else {
        return t.strip_prefix('O').and_then(inner).map(|d| (None, d)).ok_or_else(bad);
    };
    let open = rest.find('(').ok_or_else(bad)?;
    let j = rest[..open].parse::<i64>().map_err(|_| bad())?;
    inner(&rest[open..]).map(|d| (Some(j), d)).ok_or_else(bad)
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let mut timings = TimingLog::default();
    let start = Instant::now();
    let report = match &cli.command {
        Command::Hilbert(a) => hilbert(&cfg, a)?,
        Command::KoszulCheck(a) => koszul_check(&cfg, a)?,
        Command::CohomTable(a) => cohom_table(&cfg, a)?,
        Command::BeilinsonTerms(a) => beilinson_terms(&cfg, a)?,
        Command::O2Resolution(a) => o2_resolution(&cfg, a)?,
        Command::RankCondition(a) => rank(&cfg, a, &mut timings)?,
        Command::VerifyExample(a) => verify(&cfg, a, &mut timings)?,
        Command::Run(a) => run(&cfg, a, &mut timings)?,
    };
    timings.push("total", start.elapsed().as_secs_f64());
    Ok(Outcome { report, timings })
}

fn hilbert(cfg: &Config, a: &WeightArgs) -> Result<Report, CliError> {
    let w = weights(cfg, &a.weights, &[1, 1, 2, 3])?;
    let top = cfg.pick(a.degree, "degree")?.unwrap_or(12);
    if top < 0 {
        return Err(CliError::Usage("degree must be non-negative".into()));
    }
    let values: Vec<u64> = (0..=top).map(|d| hilbert_p(&w, d)).collect();
    let bad: Vec<i64> = (-top..=top).filter(|&l| !cohom::verify_mondimfor(&w, l)).collect();
    let inputs = BTreeMap::from([("weights".into(), json!(w.as_slice())), ("degree".into(), json!(top))]);
    let checks = vec![CheckLine::new("monomial alternating sum", bad.is_empty(), "closed-form", format!("failures at {bad:?}"))];
    Ok(Report::new("hilbert", inputs, checks, json!({ "p": values })))
}

fn koszul_check(cfg: &Config, a: &WeightArgs) -> Result<Report, CliError> {
    let w = weights(cfg, &a.weights, &[1, 1, 2, 3])?;
    let top = cfg.pick(a.degree, "degree")?.unwrap_or(12);
    let spec = field(cfg, &a.field)?;
    let rep = with_field!(spec, F => koszul::check_exactness(&koszul::koszul::<F>(&w), 0..=top));
    let pass = rep.homology.len() == 1 && rep.homology[0].position == 0 && rep.homology[0].degree == 0 && rep.homology[0].dim == 1;
    let inputs = BTreeMap::from([("weights".into(), json!(w.as_slice())), ("degree".into(), json!(top)), ("field".into(), json!(spec.to_string()))]);
    let checks = vec![CheckLine::new("homology is k in degree 0", pass, "exact", format!("{:?}", rep.homology))];
    Ok(Report::new("koszul-check", inputs, checks, to_value(&rep)))
}

fn cohom_table(cfg: &Config, a: &CohomArgs) -> Result<Report, CliError> {
    let w = weights(cfg, &a.weights, &[1, 1, 2, 3])?;
    let sheaf = cfg.pick(a.sheaf.clone(), "sheaf")?.unwrap_or_else(|| "O(0)".into());
    let (j, d) = parse_sheaf(&sheaf)?;
    let s = w.total();
    let (lo, hi) = match cfg.pick(a.twists.clone(), "twists")? {
        Some(t) => twist_window(&t)?,
        None => (-s, s),
    };
    let spec = field(cfg, &a.field)?;
    let table = match j {
        None => with_field!(spec, F => cohom::CohomologyTable::line_bundle::<F>(&w, d, lo..=hi)),
        Some(j) => cohom::CohomologyTable::omega(&w, j, d, lo..=hi),
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    // h^i(F(l)) against h^{n-i}(F^dual(-l-|w|)) from the closed forms.
    let n = w.n();
    let mut asym = Vec::new();
    for l in lo..=hi {
        for i in 0..=n {
            let (here, dual) = match j {
                None => (cohom::h_line(&w, i, d + l), cohom::h_line(&w, n - i, -d - l - s)),
                Some(j) => (cohom::h_omega(&w, i, j, d + l), cohom::h_omega(&w, n - i, n as i64 - j, -d - l)),
            };
            if here.ok() != dual.ok() {
                asym.push((i, l));
            }
        }
    }
    let inputs = BTreeMap::from([
        ("weights".into(), json!(w.as_slice())),
        ("sheaf".into(), json!(sheaf)),
        ("twists".into(), json!([lo, hi])),
        ("field".into(), json!(spec.to_string())),
    ]);
    let checks = vec![CheckLine::new("serre duality", asym.is_empty(), "closed-form", format!("asymmetries {asym:?}"))];
    Ok(Report::new("cohom-table", inputs, checks, to_value(&table)))
}

fn y_lines(w: &Weights, d: i64, spec: FieldSpec) -> Result<Vec<String>, CliError> {
    let s = w.total();
    let t = with_field!(spec, F => cohom::CohomologyTable::line_bundle::<F>(w, d, -s..=s)).map_err(|e| CliError::Usage(e.to_string()))?;
    let y = beilinson::y_terms(w, &t).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(y.normalized(w).report_lines())
}

fn beilinson_terms(cfg: &Config, a: &WeightArgs) -> Result<Report, CliError> {
    let w = weights(cfg, &a.weights, &[1, 1, 2, 3])?;
    let d = cfg.pick(a.degree, "degree")?.unwrap_or(2);
    let spec = field(cfg, &a.field)?;
    let lines = y_lines(&w, d, spec)?;
    let inputs = BTreeMap::from([("weights".into(), json!(w.as_slice())), ("degree".into(), json!(d)), ("field".into(), json!(spec.to_string()))]);
    Ok(Report::new("beilinson-terms", inputs, vec![], json!({ "terms": lines })))
}

fn o2_resolution(cfg: &Config, a: &WeightArgs) -> Result<Report, CliError> {
    let w = weights(cfg, &a.weights, &[1, 1, 2, 3])?;
    let y = suite::o2_resolution(&w).map_err(CliError::Usage)?;
    let expected = suite::o2_expected(&w);
    let (n, s) = (w.n() as i64, w.total());
    let z: Vec<Value> = (n - s + 1..=-1)
        .map(|j| {
            let (a, b) = beilinson::z_coeffs(&w, j).expect("window");
            json!({ "j": j, "z_minus1": a, "z_0": b })
        })
        .collect();
    let checks = vec![CheckLine::new("terms match the weight counts", y.multisets() == expected.multisets(), "resolved", y.report_lines().join("; "))];
    let inputs = BTreeMap::from([("weights".into(), json!(w.as_slice()))]);
    Ok(Report::new("o2-resolution", inputs, checks, json!({ "terms": y.report_lines(), "z": z })))
}

struct ExampleInputs {
    seed: u64,
    spec: FieldSpec,
    sampling: Option<f64>,
    bound: Option<i64>,
    negative: bool,
}

fn example_inputs(cfg: &Config, a: &ExampleArgs) -> Result<ExampleInputs, CliError> {
    Ok(ExampleInputs {
        seed: cfg.pick(a.seed, "seed")?.unwrap_or(7),
        spec: field(cfg, &a.field)?,
        sampling: sampling(cfg, a.sampling)?,
        bound: cfg.pick(a.presentation_bound, "presentation-bound")?,
        negative: cfg.pick(a.negative_control, "negative-control")?.unwrap_or(false),
    })
}

impl ExampleInputs {
    fn echo(&self) -> BTreeMap<String, Value> {
        BTreeMap::from([
            ("seed".into(), json!(self.seed)),
            ("field".into(), json!(self.spec.to_string())),
            ("sampling".into(), json!(self.sampling.unwrap_or(1.0))),
            ("presentation_bound".into(), json!(self.bound)),
            ("negative_control".into(), json!(self.negative)),
        ])
    }
}

fn params<F: Field>(seed: u64) -> Result<ParamSet<F>, CliError> {
    ParamSet::random(&mut ChaCha8Rng::seed_from_u64(seed)).map_err(|e| CliError::Usage(e.to_string()))
}

fn rank(cfg: &Config, a: &ExampleArgs, tm: &mut TimingLog) -> Result<Report, CliError> {
    let inp = example_inputs(cfg, a)?;
    let mode = rank_mode(inp.sampling, inp.seed);
    with_field!(inp.spec, F => {
        let p = params::<F>(inp.seed)?;
        let t = Instant::now();
        let alpha = build_alpha_tilde(&p).map_err(CliError::compute)?;
        let chart = chart_reduce(&alpha.map, 1).map_err(CliError::compute)?;
        let opts = RankOptions { mode, ..Default::default() };
        let verdict = rank_condition(&chart, &opts).map_err(CliError::compute)?;
        tm.push("rank condition", t.elapsed().as_secs_f64());
        let mut checks = vec![CheckLine::new("rank condition", verdict.holds, "evidence", verdict.level.clone())];
        let mut control = Value::Null;
        if inp.negative {
            let t = Instant::now();
            let mut rng = ChaCha8Rng::seed_from_u64(inp.seed ^ RANDOM_SALT);
            let m = random_symmetric::<F, _>(alpha.weights(), &chart.row_twists(), SYMMETRY_TWIST, &mut rng);
            let v = rank_condition(&ChartMatrix::from_graded(&m, 1).map_err(CliError::compute)?, &opts).map_err(CliError::compute)?;
            tm.push("random control", t.elapsed().as_secs_f64());
            checks.push(CheckLine::new("random matrix fails", !v.holds, "evidence", format!("witness {:?}", v.witness.as_ref().map(|w| (&w.rows, &w.cols)))));
            control = to_value(&v.witness);
        }
        Ok(Report::new("rank-condition", inp.echo(), checks, json!({ "verdict": to_value(&verdict), "control_witness": control })))
    })
}

fn verify(cfg: &Config, a: &ExampleArgs, tm: &mut TimingLog) -> Result<Report, CliError> {
    let mut inp = example_inputs(cfg, a)?;
    if a.negative_control.is_none() && cfg.get("negative-control").is_none() {
        inp.negative = true;
    }
    let opts = VerifyOptions {
        rank: Some(rank_mode(inp.sampling, inp.seed)),
        presentation_bound: inp.bound.or(VerifyOptions::default().presentation_bound),
        negative_controls: inp.negative,
        ..Default::default()
    };
    let mut echo = inp.echo();
    echo.insert("presentation_bound".into(), json!(opts.presentation_bound));
    with_field!(inp.spec, F => {
        let p = params::<F>(inp.seed)?;
        let (rep, t) = verify_example(&p, Some(inp.seed), &opts).map_err(CliError::compute)?;
        tm.extend("", &t.stages);
        let checks = rep.checks.iter().map(|c| CheckLine::new(c.name.clone(), c.pass, &c.provenance, c.detail.clone())).collect();
        Ok(Report::new("verify-example", echo, checks, to_value(&rep)))
    })
}

fn run(cfg: &Config, a: &RunArgs, tm: &mut TimingLog) -> Result<Report, CliError> {
    if !a.all_checks {
        return Err(CliError::Usage("run needs --all-checks".into()));
    }
    let sc = SuiteConfig {
        seed: cfg.pick(a.seed, "seed")?.unwrap_or(7),
        sampled_fraction: sampling(cfg, a.sampling)?.unwrap_or(0.25),
        ..Default::default()
    };
    let (crits, t) = suite::run_all(&sc);
    tm.extend("", &t.entries);
    let checks = crits.iter().map(|c| CheckLine::new(format!("{} {}", c.id, c.name), c.pass, &c.provenance, c.detail.clone())).collect();
    Ok(Report::new("run", BTreeMap::from([("suite".into(), to_value(&sc))]), checks, to_value(&crits)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sheaf_and_window_syntax() {
        assert_eq!(parse_sheaf("O(2)").unwrap(), (None, 2));
        assert_eq!(parse_sheaf("O(-3)").unwrap(), (None, -3));
        assert_eq!(parse_sheaf("Omega^2(3)").unwrap(), (Some(2), 3));
        assert!(parse_sheaf("Omega(3)").is_err());
        assert!(parse_sheaf("L(1)").is_err());
        assert_eq!(twist_window("-7..7").unwrap(), (-7, 7));
        assert_eq!(twist_window("0..=3").unwrap(), (0, 3));
        assert!(twist_window("3..1").is_err());
    }

    #[test]
    fn sampling_bounds_and_mode() {
        let c = Config::default();
        assert!(sampling(&c, Some(0.0)).is_err());
        assert!(sampling(&c, Some(1.01)).is_err());
        assert!(sampling(&c, Some(f64::NAN)).is_err());
        assert_eq!(sampling(&c, Some(1.0)).unwrap(), Some(1.0));
        assert_eq!(rank_mode(Some(1.0), 3), RankMode::Full);
        assert_eq!(rank_mode(Some(0.5), 3), RankMode::Sampled { fraction: 0.5, seed: 3 });
    }
}
