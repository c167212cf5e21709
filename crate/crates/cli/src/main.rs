use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use isym::grouplab::{char2_nonreduced_witness, check_prime, sl2_row, Sl2Row};
use isym::input::{self, InputError};
use isym::iqg::IParameters;
use isym::parallel::ExecMode;
use isym::satake::{catalog, catalog_entry, xlattice_report, IRootDatum, CATALOG_NAMES};
use isym::verify::{input_digest, verify, Suite, VerifyConfig, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "isym", version, about = "Exact checks for quantum symmetric pairs and their root data")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Battery depth (highest weights with coordinate sum at most this).
    #[arg(long, global = true, default_value_t = 2)]
    depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sign of the parameters on tau-fixed white nodes.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_sign)]
    sign: Option<i64>,
    /// Run every stage on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the validators on an input file or catalog entry.
    Validate { entry: String },
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        entry: String,
        /// Value of eps on black nodes; +1 is the negative control.
        #[arg(long, allow_hyphen_values = true, default_value_t = -1, value_parser = parse_sign)]
        epsilon_black: i64,
        /// Weight window for the involution suite.
        #[arg(long, default_value_t = 3)]
        window: i64,
    },
    /// X_iota, Y^iota and the pairing between them.
    Xlattice { entry: String },
    /// List the catalog, print one entry, or export all entries as input files.
    Catalog {
        name: Option<String>,
        #[arg(long, value_name = "DIR")]
        export: Option<PathBuf>,
    },
    /// Rank-one symmetric subgroups over small prime fields.
    Sl2lab {
        #[arg(default_value = "SL2-split")]
        entry: String,
        #[arg(long, value_delimiter = ',', value_parser = parse_prime, default_value = "3,5,7")]
        primes: Vec<u64>,
    },
}

fn parse_sign(s: &str) -> Result<i64, String> {
    match s.trim_start_matches('+') {
        "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("`{s}` is not a sign (expected 1 or -1)")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
        .map_err(|_| format!("unknown suite `{s}` (expected one of {})", Suite::NAMES.join(", ")))
}

fn parse_prime(s: &str) -> Result<u64, String> {
    let p: u64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    check_prime(p).map(|_| p).map_err(|e| e.to_string())
}

/// Exit 2 with a message.
struct InputFailure(String);

impl From<InputError> for InputFailure {
    fn from(e: InputError) -> Self {
        InputFailure(e.to_string())
    }
}

struct Loaded {
    name: String,
    entry: IRootDatum,
    params: IParameters,
    digest: String,
}

fn load(entry: &str) -> Result<Loaded, InputFailure> {
    if let Some(d) = catalog_entry(entry) {
        let params = IParameters::default_for(&d);
        let text = serde_json::to_string(&input::export(&d, Some(&params))).expect("plain data");
        return Ok(Loaded {
            name: entry.to_string(),
            entry: d,
            params,
            digest: input_digest(text.as_bytes()),
        });
    }
    let path = Path::new(entry);
    let bytes = std::fs::read(path).map_err(|e| InputFailure(format!("`{entry}` is neither a catalog entry nor a readable file: {e}")))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| InputFailure(format!("{entry} is not UTF-8")))?;
    let v = input::parse(&text)?.validate()?;
    if !v.holds() {
        let bad: Vec<String> = v
            .checks
            .iter()
            .filter(|c| !c.1.holds)
            .map(|(st, c)| format!("{st}: {}", c.axiom))
            .collect();
        return Err(InputFailure(format!("{entry} does not validate: {}", bad.join("; "))));
    }
    Ok(Loaded {
        name: path.file_stem().map_or(entry.to_string(), |s| s.to_string_lossy().into_owned()),
        entry: v.entry.expect("validated"),
        params: v.params.expect("validated"),
        digest: input_digest(&bytes),
    })
}

fn with_sign(d: &IRootDatum, p: &IParameters, sign: Option<i64>) -> IParameters {
    let Some(s) = sign else { return p.clone() };
    let tau = d.diagram().tau_map();
    let signs: BTreeMap<usize, i64> = d.diagram().white().into_iter().filter(|&i| tau[i] == i).map(|i| (i, s)).collect();
    p.with_signs(&signs)
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("plain data")),
    }
}

fn code(passed: bool) -> u8 {
    if passed {
        0
    } else {
        1
    }
}

fn cmd_validate(cli: &Cli, entry: &str) -> Result<u8, InputFailure> {
    let (bytes, v) = match catalog_entry(entry) {
        Some(d) => {
            let text = serde_json::to_string(&input::export(&d, Some(&IParameters::default_for(&d)))).expect("plain data");
            let v = input::parse(&text)?.validate()?;
            (text.into_bytes(), v)
        }
        None => {
            let bytes = std::fs::read(entry).map_err(|e| InputFailure(format!("cannot read {entry}: {e}")))?;
            let text = String::from_utf8(bytes.clone()).map_err(|_| InputFailure(format!("{entry} is not UTF-8")))?;
            let v = input::parse(&text)?.validate()?;
            (bytes, v)
        }
    };
    let passed = v.holds();
    let mut text = String::new();
    for (stage, c) in &v.checks {
        let tag = if !c.holds {
            "FAIL"
        } else if c.vacuous {
            "vacuous"
        } else {
            "ok"
        };
        let _ = writeln!(text, "{tag:<7} {stage}: {}", c.axiom);
        if let Some(w) = &c.witness {
            let _ = writeln!(text, "        {w}");
        }
    }
    let _ = writeln!(text, "{}", if passed { "valid" } else { "INVALID" });
    let checks: Vec<_> = v.checks.iter().map(|(stage, c)| json!({"stage": stage, "check": c})).collect();
    emit(
        cli.format,
        text,
        json!({"schema": "isym-validate/1", "input_digest": input_digest(&bytes), "checks": checks, "passed": passed}),
    );
    Ok(code(passed))
}

fn cmd_verify(cli: &Cli, suite: Suite, entry: &str, epsilon_black: i64, window: i64) -> Result<u8, InputFailure> {
    let l = load(entry)?;
    let params = with_sign(&l.entry, &l.params, cli.sign);
    let cfg = VerifyConfig {
        depth: cli.depth,
        seed: cli.seed,
        epsilon_black,
        window,
        mode: if cli.sequential { ExecMode::Sequential } else { ExecMode::Parallel },
        ..VerifyConfig::default()
    };
    let r = verify(&l.name, &l.entry, &params, l.digest, suite, &cfg).map_err(|e| InputFailure(e.to_string()))?;
    match cli.format {
        Format::Text => print!("{}", r.to_text()),
        Format::Json => println!("{}", r.to_json()),
    }
    Ok(code(r.passed))
}

fn cmd_xlattice(cli: &Cli, entry: &str) -> Result<u8, InputFailure> {
    let l = load(entry)?;
    let r = xlattice_report(&l.entry).map_err(|e| InputFailure(e.to_string()))?;
    let mut text = format!("{}\n", r.summary());
    let _ = writeln!(text, "free rank {}, torsion {:?}", r.free_rank, r.torsion);
    let _ = writeln!(text, "Y^iota basis {:?}", r.y_fixed_basis);
    let _ = writeln!(text, "pairing {:?}", r.pairing);
    emit(
        cli.format,
        text,
        json!({"schema": "isym-xlattice/1", "entry": l.name, "summary": r.summary(), "lattice": r}),
    );
    Ok(0)
}

fn cmd_catalog(cli: &Cli, name: Option<&str>, export: Option<&Path>) -> Result<u8, InputFailure> {
    let entries: Vec<(&str, IRootDatum)> = match name {
        Some(n) => vec![(
            CATALOG_NAMES
                .iter()
                .find(|&&c| c == n)
                .copied()
                .ok_or_else(|| InputFailure(format!("unknown catalog entry `{n}`")))?,
            catalog_entry(n).expect("listed"),
        )],
        None => catalog(),
    };
    let files: Vec<(&str, input::InputFile)> = entries
        .iter()
        .map(|(n, d)| (*n, input::export(d, Some(&IParameters::default_for(d)))))
        .collect();
    if let Some(dir) = export {
        std::fs::create_dir_all(dir).map_err(|e| InputFailure(format!("cannot create {}: {e}", dir.display())))?;
        for (n, f) in &files {
            let path = dir.join(format!("{n}.json"));
            let text = serde_json::to_string_pretty(f).expect("plain data") + "\n";
            std::fs::write(&path, text).map_err(|e| InputFailure(format!("cannot write {}: {e}", path.display())))?;
            println!("{}", path.display());
        }
        return Ok(0);
    }
    if name.is_some() || cli.format == Format::Json {
        let v: BTreeMap<&str, &input::InputFile> = files.iter().map(|(n, f)| (*n, f)).collect();
        let v = if name.is_some() {
            serde_json::to_value(files[0].1.clone())
        } else {
            serde_json::to_value(v)
        };
        println!("{}", serde_json::to_string_pretty(&v.expect("plain data")).expect("plain data"));
        return Ok(0);
    }
    for (n, d) in &entries {
        let cartan = d.datum().cartan();
        let black: Vec<i64> = d.diagram().black().iter().map(|&i| cartan.label(i)).collect();
        let tau: Vec<i64> = d.diagram().tau_map().iter().map(|&i| cartan.label(i)).collect();
        println!(
            "{n:<16} rank {}  rankX {}  black {black:?}  tau {tau:?}",
            d.datum().rank(),
            d.datum().rank_x()
        );
    }
    Ok(0)
}

fn row_text(r: &Sl2Row) -> String {
    let yn = |b: bool| if b { "yes" } else { "NO" };
    let line = format!(
        "{:>3} {:>7} {:>6} {:>6} {:>6}  {:<6} {:<9} {}",
        r.p,
        r.group_order,
        r.fixed,
        r.conic,
        r.conic_param,
        yn(r.fixed_matches_conic()),
        yn(r.structure_holds()),
        if r.normative { "" } else { "(non-normative sign)" }
    );
    format!("{}\n", line.trim_end())
}

fn cmd_sl2lab(cli: &Cli, entry: &str, primes: &[u64]) -> Result<u8, InputFailure> {
    let l = load(entry)?;
    let params = with_sign(&l.entry, &l.params, cli.sign);
    let mode = if cli.sequential { ExecMode::Sequential } else { ExecMode::Parallel };
    let mut rows = Vec::new();
    for &p in primes {
        rows.push(sl2_row(&l.entry, &params, p, cli.seed, mode).map_err(|e| InputFailure(e.to_string()))?);
    }
    let w = char2_nonreduced_witness();
    let passed = w.vanishes_mod_2
        && rows
            .iter()
            .all(|r| r.structure_holds() && (!r.normative || r.fixed_matches_conic()));
    let mut text = format!("sl2lab on {}\n", l.name);
    text.push_str("  p |SL2(F_p)|    |K|  conic  param  K=conic structure\n");
    for r in &rows {
        text.push_str(&row_text(r));
    }
    if rows.iter().any(|r| !r.normative) {
        text.push_str("non-normative sign: the K = conic column is informational\n");
    }
    let _ = writeln!(
        text,
        "char 2: (u+v+1)^2 - (u^2-v^2-1) = {}, vanishes mod 2: {}",
        w.difference, w.vanishes_mod_2
    );
    let _ = writeln!(text, "{}", if passed { "PASS" } else { "FAIL" });
    emit(
        cli.format,
        text,
        json!({"schema": "isym-sl2lab/1", "entry": l.name, "seed": cli.seed, "rows": rows, "char2": w, "passed": passed}),
    );
    Ok(code(passed))
}

fn run(cli: &Cli) -> Result<u8, InputFailure> {
    match &cli.cmd {
        Cmd::Validate { entry } => cmd_validate(cli, entry),
        Cmd::Verify {
            suite,
            entry,
            epsilon_black,
            window,
        } => cmd_verify(cli, *suite, entry, *epsilon_black, *window),
        Cmd::Xlattice { entry } => cmd_xlattice(cli, entry),
        Cmd::Catalog { name, export } => cmd_catalog(cli, name.as_deref(), export.as_deref()),
        Cmd::Sl2lab { entry, primes } => cmd_sl2lab(cli, entry, primes),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(c) => ExitCode::from(c),
        Err(InputFailure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
