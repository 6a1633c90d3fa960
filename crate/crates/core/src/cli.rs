//! The `tame-approx` command line. [`run`] does the work and returns the exit
//! status with the rendered report; [`main`] parses arguments and writes output.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arithmetic::{find_p, find_q, sigma0_biquadratic, KummerPair, DEFAULT_Q_BOUND};
use crate::certificate::{biquadratic_places, certify, CertifyOptions, DEFAULT_CERTIFY_ORDER};
use crate::cohomology::{dimension_shift_check, h1, verify_augmentation_lemma, Cocycle, ShaEngine};
use crate::group::{Group, Subgroup, DEFAULT_ORDER_LIMIT, ORDER_LIMIT_ENV};
use crate::linalg::AbGroupStructure;
use crate::module::{module_from_spec, GModule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tame-approx",
    version,
    about = "H¹, Ш kernels and approximation certificates for finite Galois modules"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Group order limit (default 512 for group inputs, 16 for `certify`).
    #[arg(long, env = ORDER_LIMIT_ENV, global = true)]
    pub max_order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// H¹(G, M) with cocycle representatives.
    H1(ModuleArgs),
    /// Ш¹_cyc(G, M): kernel of restriction to every cyclic subgroup.
    ShaCyc(ModuleArgs),
    /// Compare Ш¹_cyc(G, I) with Z/(|G|/exp G) for the augmentation ideal.
    VerifyLemma(GroupArgs),
    /// H¹(H, I) = Z/|H| and H¹(H, Z/n[G]) = 0 over cyclic subgroups and G.
    DimensionShift(ShiftArgs),
    /// Places of Q with non-cyclic decomposition group in Q(√a, √b).
    Sigma0(Sigma0Args),
    /// Least p ≡ 1 (mod ℓⁿ) and the matching q.
    FindParams(FindArgs),
    /// Certificate for the counterexample with parameters (ℓ, n, p, q).
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// `builtin:NAME` or a JSON group file.
    #[arg(long)]
    pub group: String,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    #[arg(long)]
    pub group: String,
    /// `aug`, `ring`, `trivial:M` or a JSON module file.
    #[arg(long)]
    pub module: String,
    /// Coefficient modulus for `aug` and `ring` (default |G|).
    #[arg(long)]
    pub modulus: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ShiftArgs {
    #[arg(long)]
    pub group: String,
    /// Extra subgroup given by comma-separated generator indices; repeatable.
    #[arg(long = "subgroup")]
    pub subgroups: Vec<String>,
}

#[derive(Debug, Args)]
pub struct Sigma0Args {
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
}

#[derive(Debug, Args)]
pub struct FindArgs {
    #[arg(long)]
    pub ell: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 2)]
    pub start: u64,
    #[arg(long, default_value_t = DEFAULT_Q_BOUND)]
    pub q_bound: u64,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub ell: u64,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: u64,
    /// Omit to search for the least admissible q.
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_Q_BOUND)]
    pub q_bound: u64,
}

/// Exit status, report text, and an optional message for standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub report: String,
    pub message: Option<String>,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome {
            status: EXIT_USAGE,
            report: String::new(),
            message: Some(message.into()),
        }
    }
}

/// Report body: JSON value plus its table rendering.
struct Report {
    json: Value,
    table: String,
    status: i32,
    message: Option<String>,
}

impl Report {
    fn ok(json: Value, table: String) -> Self {
        Report {
            json,
            table,
            status: EXIT_OK,
            message: None,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Resolves `builtin:NAME`, a bare builtin name, or a JSON file path.
pub fn load_group(source: &str, limit: usize) -> Result<Group, String> {
    if source.starts_with("builtin:") {
        return Group::builtin(source).map_err(|e| e.to_string());
    }
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{source}: {e}"))?;
        return Group::from_json(&text, limit).map_err(|e| format!("{source}: {e}"));
    }
    Group::builtin(source).map_err(|e| format!("{e} (and no file named {source:?})"))
}

pub fn load_module(group: &Group, spec: &str, modulus: Option<u64>) -> Result<GModule, String> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{spec}: {e}"))?;
        let m = GModule::from_json(group, &text).map_err(|e| format!("{spec}: {e}"))?;
        if let Some(want) = modulus {
            if want != m.modulus() {
                return Err(format!(
                    "{spec}: module has modulus {}, --modulus says {want}",
                    m.modulus()
                ));
            }
        }
        return Ok(m);
    }
    module_from_spec(group, spec, modulus).map_err(|e| e.to_string())
}

fn check_limit(group: &Group, limit: usize) -> Result<(), String> {
    if group.order() > limit {
        return Err(format!(
            "group of order {} exceeds the order limit {limit} (raise with --max-order or {ORDER_LIMIT_ENV})",
            group.order()
        ));
    }
    Ok(())
}

fn group_json(source: &str, g: &Group) -> Value {
    json!({
        "source": source,
        "order": g.order().to_string(),
        "exponent": g.exponent().to_string(),
        "elements": (0..g.order()).map(|x| g.name(x)).collect::<Vec<_>>(),
    })
}

fn cocycle_table(g: &Group, z: &Cocycle) -> String {
    g.elements()
        .map(|x| {
            let v: Vec<String> = z.value(x).iter().map(ToString::to_string).collect();
            format!("    {:>8} -> [{}]\n", g.name(x), v.join(", "))
        })
        .collect()
}

fn run_h1(cli: &Cli, args: &ModuleArgs) -> Result<Report, String> {
    let limit = cli.max_order.unwrap_or(DEFAULT_ORDER_LIMIT);
    let g = load_group(&args.group, limit)?;
    check_limit(&g, limit)?;
    let m = load_module(&g, &args.module, args.modulus)?;
    let res = h1(&g, &m).map_err(|e| e.to_string())?;
    let reps: Vec<Value> = res
        .cocycle_reps
        .iter()
        .zip(&res.basis_correspondence)
        .map(|(z, (i, order))| json!({"factor": i.to_string(), "order": order.to_string(), "values": to_value(z)}))
        .collect();
    let json = json!({
        "command": "h1",
        "group": group_json(&args.group, &g),
        "module": {"spec": args.module, "modulus": m.modulus().to_string(), "rank": m.rank().to_string()},
        "structure": to_value(&res.structure),
        "order": res.structure.order().to_string(),
        "cocycle_reps": reps,
    });
    let mut table = format!(
        "H^1 for {} (order {}) with {} over Z/{} (rank {})\nstructure: {}\norder: {}\n",
        args.group,
        g.order(),
        args.module,
        m.modulus(),
        m.rank(),
        res.structure,
        res.structure.order()
    );
    for (z, (i, order)) in res.cocycle_reps.iter().zip(&res.basis_correspondence) {
        table += &format!("generator {i} (order {order}):\n{}", cocycle_table(&g, z));
    }
    Ok(Report::ok(json, table))
}

fn run_sha_cyc(cli: &Cli, args: &ModuleArgs) -> Result<Report, String> {
    let limit = cli.max_order.unwrap_or(DEFAULT_ORDER_LIMIT);
    let g = load_group(&args.group, limit)?;
    check_limit(&g, limit)?;
    let m = load_module(&g, &args.module, args.modulus)?;
    let mut engine = ShaEngine::new(&g, &m).map_err(|e| e.to_string())?;
    let sha = engine.sha_cyc().map_err(|e| e.to_string())?;
    let h1s = engine.h1().structure.clone();
    let json = json!({
        "command": "sha-cyc",
        "group": group_json(&args.group, &g),
        "module": {"spec": args.module, "modulus": m.modulus().to_string(), "rank": m.rank().to_string()},
        "cyclic_subgroups": g.cyclic_subgroups().len().to_string(),
        "h1": to_value(&h1s),
        "structure": to_value(&sha.structure),
        "generators": to_value(&sha.generators),
    });
    let mut table = format!(
        "Sha^1_cyc for {} with {} over Z/{}\nH^1: {}\nSha^1_cyc: {}\n",
        args.group,
        args.module,
        m.modulus(),
        h1s,
        sha.structure
    );
    for (i, z) in sha.generators.iter().enumerate() {
        table += &format!("generator {i}:\n{}", cocycle_table(&g, z));
    }
    Ok(Report::ok(json, table))
}

fn run_verify(cli: &Cli, args: &GroupArgs) -> Result<Report, String> {
    let limit = cli.max_order.unwrap_or(DEFAULT_ORDER_LIMIT);
    let g = load_group(&args.group, limit)?;
    check_limit(&g, limit)?;
    let rep = verify_augmentation_lemma(&g).map_err(|e| e.to_string())?;
    let json = json!({
        "command": "verify-lemma",
        "group": group_json(&args.group, &g),
        "report": to_value(&rep),
    });
    let table = format!(
        "{}: n = {}, e = {}, expected {}, computed {}, {}\n",
        args.group,
        rep.order,
        rep.exponent,
        rep.expected,
        rep.computed,
        if rep.pass { "PASS" } else { "FAIL" }
    );
    let mut report = Report::ok(json, table);
    if !rep.pass {
        report.status = EXIT_FAILED;
        report.message = Some(format!(
            "lemma check failed for {}: expected {}, computed {}",
            args.group, rep.expected, rep.computed
        ));
    }
    Ok(report)
}

fn parse_subgroup(g: &Group, text: &str) -> Result<Subgroup, String> {
    let gens: Vec<usize> = text
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| format!("bad element index {t:?} in --subgroup"))
        })
        .collect::<Result<_, _>>()?;
    g.generate(&gens).map_err(|e| e.to_string())
}

fn run_shift(cli: &Cli, args: &ShiftArgs) -> Result<Report, String> {
    let limit = cli.max_order.unwrap_or(DEFAULT_ORDER_LIMIT);
    let g = load_group(&args.group, limit)?;
    check_limit(&g, limit)?;
    let extra: Vec<Subgroup> = args
        .subgroups
        .iter()
        .map(|s| parse_subgroup(&g, s))
        .collect::<Result<_, _>>()?;
    let rep = dimension_shift_check(&g, &extra).map_err(|e| e.to_string())?;
    let json = json!({
        "command": "dimension-shift",
        "group": group_json(&args.group, &g),
        "report": to_value(&rep),
    });
    let mut table = format!("dimension shift for {} (order {})\n", args.group, g.order());
    table += &format!(
        "{:>6}  {:<12} {:<12} {:<10} {}\n",
        "|H|", "H1(H,I)", "expected", "H1(H,ring)", ""
    );
    for row in &rep.rows {
        table += &format!(
            "{:>6}  {:<12} {:<12} {:<10} {}  {{{}}}\n",
            row.order,
            row.h1_ideal.to_string(),
            row.expected.to_string(),
            row.h1_group_ring.to_string(),
            if row.pass { "ok" } else { "FAIL" },
            row.elements.join(", ")
        );
    }
    let mut report = Report::ok(json, table);
    if !rep.pass {
        report.status = EXIT_FAILED;
        let bad = rep.rows.iter().find(|r| !r.pass).expect("some row failed");
        report.message = Some(format!(
            "dimension shift failed at subgroup {{{}}}: H1(H,I) = {}, H1(H,ring) = {}",
            bad.elements.join(", "),
            bad.h1_ideal,
            bad.h1_group_ring
        ));
    }
    Ok(report)
}

fn run_sigma0(args: &Sigma0Args) -> Result<Report, String> {
    let pair = KummerPair::new(args.a, args.b).map_err(|e| e.to_string())?;
    let group = pair.galois_group();
    let (places, _) = biquadratic_places(&pair, &group);
    let sigma0 = sigma0_biquadratic(&pair);
    let json = json!({
        "command": "sigma0",
        "a": args.a.to_string(),
        "b": args.b.to_string(),
        "ramified_places": to_value(&places),
        "sigma0": sigma0,
    });
    let mut table = format!("Q(sqrt({}), sqrt({}))\n", args.a, args.b);
    for w in &places {
        let squares: Vec<String> = w
            .local_squares
            .iter()
            .map(|c| format!("{}:{}", c.value, if c.is_square { "sq" } else { "non-sq" }))
            .collect();
        table += &format!(
            "  {:>6}  |D| = {}  {:<10} {}\n",
            w.label,
            w.order,
            if w.cyclic { "cyclic" } else { "non-cyclic" },
            squares.join(" ")
        );
    }
    table += &format!("Sigma0 = {{{}}}\n", sigma0.join(", "));
    Ok(Report::ok(json, table))
}

fn run_find(args: &FindArgs) -> Result<Report, String> {
    let p = find_p(args.ell, args.n, args.start).map_err(|e| e.to_string())?;
    let q = find_q(args.ell, p, args.q_bound).map_err(|e| e.to_string())?;
    let json = json!({
        "command": "find-params",
        "ell": args.ell.to_string(),
        "n": args.n.to_string(),
        "start": args.start.to_string(),
        "p": p.to_string(),
        "q": q.to_string(),
    });
    let table = format!("ell = {}, n = {}: p = {p}, q = {q}\n", args.ell, args.n);
    Ok(Report::ok(json, table))
}

fn run_certify(cli: &Cli, args: &CertifyArgs) -> Result<Report, String> {
    let options = CertifyOptions {
        q_bound: args.q_bound,
        max_order: cli.max_order.unwrap_or(DEFAULT_CERTIFY_ORDER),
    };
    let cert = certify(args.ell, args.n, args.p, args.q, options).map_err(|e| e.to_string())?;
    let mut table = format!(
        "certificate for ell = {}, n = {}, p = {}, q = {}\nfield: {}\ngroup: {}\n",
        cert.ell,
        cert.n,
        cert.p,
        cert.q.map_or("-".to_string(), |q| q.to_string()),
        cert.field_desc,
        cert.galois_group
    );
    for c in &cert.checks {
        table += &format!(
            "  {:<6} {:<24} {}\n",
            if c.pass { "[ok]" } else { "[FAIL]" },
            c.name,
            c.witness
        );
    }
    if !cert.sigma0_statement.is_empty() {
        table += &format!("Sigma0: {}\n", cert.sigma0_statement);
    }
    let show =
        |s: &Option<AbGroupStructure>| s.as_ref().map_or("-".to_string(), ToString::to_string);
    table += &format!("Sha^1_cyc: {}\n", show(&cert.sha_results.sha_cyc));
    table += &format!("Sha^1_Sigma0: {}\n", show(&cert.sha_results.sha_sigma0));
    for v in &cert.sigma0 {
        if let Some(s) = cert.sha_results.sha_sigma0_minus.get(v) {
            table += &format!("Sha^1_(Sigma0 - {v}): {s}\n");
        }
    }
    table += &format!("Sha^1: {}\n", show(&cert.sha_results.sha));
    table += &format!("conclusion: {}\n", cert.conclusion);
    let mut report = Report::ok(to_value(&cert), table);
    if let Some(c) = cert.first_failure() {
        report.status = EXIT_FAILED;
        report.message = Some(format!(
            "{} (expected: {}; witness: {})",
            cert.conclusion, c.statement, c.witness
        ));
    }
    Ok(report)
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::H1(a) => run_h1(cli, a),
        Command::ShaCyc(a) => run_sha_cyc(cli, a),
        Command::VerifyLemma(a) => run_verify(cli, a),
        Command::DimensionShift(a) => run_shift(cli, a),
        Command::Sigma0(a) => run_sigma0(a),
        Command::FindParams(a) => run_find(a),
        Command::Certify(a) => run_certify(cli, a),
    };
    match result {
        Ok(r) => Outcome {
            status: r.status,
            report: match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&r.json).expect("reports serialize");
                    s.push('\n');
                    s
                }
                Format::Table => r.table,
            },
            message: r.message,
        },
        Err(e) => Outcome::usage(e),
    }
}

/// Parses `args`, runs, writes the report; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = run(&cli);
    if let Some(msg) = &outcome.message {
        eprintln!("tame-approx: {msg}");
    }
    if outcome.status == EXIT_USAGE {
        return EXIT_USAGE;
    }
    let written = match &cli.output {
        Some(path) => {
            std::fs::write(path, &outcome.report).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => std::io::stdout()
            .write_all(outcome.report.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("tame-approx: {e}");
        return EXIT_USAGE;
    }
    outcome.status
}

pub fn main() -> i32 {
    main_with_args(std::env::args_os())
}
