//! The `ratio-lab` command line.

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use ratio_lab_core::bounds::{build_table, max_length_for_d, Bound, Threshold};
use ratio_lab_core::integrality::{family_membership, landau_min_max, valuation_oracle, RatioSpec};
use ratio_lab_core::liouville::{asymptotic_ratio_probe, build_liouville, liouville_norm_formula};
use ratio_lab_core::rational::{parse_pq, to_pq};
use ratio_lab_core::search::{
    classify_length, small_norm_catalog, verify_catalog, Catalog, NormFilter, SmallNormPreset,
};
use ratio_lab_core::separation::{find_separations, max_separation};
use ratio_lab_core::{Error, SignedList};

use crate::catalogs;
use crate::json::{
    catalog_from_str, catalog_to_string, family_label, list_to_json, BoundsJson, CheckJson, InvoluteJson,
    LiouvilleJson, NormJson, OracleJson, ProbeRowJson, SeparateJson, VerifyJson, WitnessJson,
};
use crate::runner::Threaded;

#[derive(Debug, Parser)]
#[command(name = "ratio-lab", version, about = "Saw-tooth list norms and integral factorial ratios")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(alias = "table")]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact norm of a list.
    Norm(ListArg),
    /// The list of a(x + 1/2).
    Involute(ListArg),
    /// Separations of a primitive list.
    Separate {
        #[command(flatten)]
        list: ListArg,
        /// Show witnesses for this k instead of the largest one.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Integrality of (a1 n)!...(aK n)! / (b1 n)!...(bL n)!.
    Check {
        #[arg(long, value_parser = parse_u64_list)]
        num: U64List,
        #[arg(long, value_parser = parse_u64_list)]
        den: U64List,
        /// Also run the prime-valuation check for n up to this value.
        #[arg(long, value_name = "NMAX")]
        oracle: Option<u64>,
    },
    /// Table of lower bounds for the minimal norms.
    Bounds {
        #[arg(long, default_value_t = ratio_lab_core::bounds::DEFAULT_N_MAX)]
        nmax: usize,
        #[arg(long, default_value_t = ratio_lab_core::bounds::DEFAULT_R_MAX)]
        rmax: usize,
        /// Also report the length caps for ratios with L - K = D.
        #[arg(long = "for-d", value_name = "D")]
        for_d: Option<u64>,
    },
    /// Sporadic integral ratios of length 5, 7 or 9.
    Classify {
        #[arg(long)]
        length: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Lists of small norm for one of the fixed search recipes.
    SmallNorm {
        /// Recipe name; see --list-presets.
        #[arg(long, conflicts_with_all = ["length", "below", "at_most"])]
        preset: Option<String>,
        #[arg(long, requires = "cutoff")]
        length: Option<usize>,
        /// Keep norms strictly below this fraction.
        #[arg(long, group = "cutoff")]
        below: Option<String>,
        /// Keep norms at most this fraction.
        #[arg(long, group = "cutoff")]
        at_most: Option<String>,
        #[arg(long)]
        list_presets: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Liouville lists and the asymptotic probe.
    Liouville {
        #[arg(long = "N", value_name = "N", required_unless_present = "probe", conflicts_with = "probe")]
        n: Option<u64>,
        /// Probe k = 2..=KMAX.
        #[arg(long, value_name = "KMAX")]
        probe: Option<u64>,
    },
    /// Golden catalog utilities.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Re-verify a catalog file and compare it with a golden catalog.
    Verify {
        #[arg(long)]
        file: PathBuf,
        /// Golden catalog to compare against; defaults to the one named in the file.
        #[arg(long)]
        reference: Option<String>,
        /// Largest n for the valuation check of norm-1/4 entries (0 skips it).
        #[arg(long, default_value_t = 200)]
        oracle: u64,
    },
    /// Names of the golden catalogs.
    List,
    /// Print a golden catalog.
    Show { name: String },
}

#[derive(Debug, Args)]
pub struct ListArg {
    /// Comma-separated nonzero integers, e.g. 4,-6,9.
    #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
    pub list: SignedList,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Write the catalog JSON here instead of printing it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    fn runner(&self) -> Threaded {
        if self.jobs == 0 {
            Threaded::available()
        } else {
            Threaded::new(self.jobs)
        }
    }
}

pub type U64List = Vec<u64>;

fn parse_list(s: &str) -> Result<SignedList, String> {
    let raw = s
        .split(',')
        .map(|t| BigInt::from_str(t.trim()).map_err(|_| format!("not an integer: {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    SignedList::new(raw).map_err(|e| e.to_string())
}

fn parse_u64_list(s: &str) -> Result<U64List, String> {
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| format!("not a positive integer: {t:?}"))).collect()
}

/// How a command ended.
enum Outcome {
    Ok,
    /// Ran, but what it checked did not hold.
    Failed,
}

enum Failure {
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

type CmdResult = Result<Outcome, Failure>;

/// Runs the CLI on `argv` (including the program name) and returns the exit code:
/// 0 on success, 1 when a verification fails, 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(Outcome::Ok) => 0,
        Ok(Outcome::Failed) => 1,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Other(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn emit_json<T: serde::Serialize>(out: &mut dyn Write, v: &T) -> std::io::Result<()> {
    let s = serde_json::to_string_pretty(v).expect("plain data");
    writeln!(out, "{s}")
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Norm(a) => {
            let n = a.list.norm()?;
            if json {
                emit_json(out, &NormJson { list: list_to_json(&a.list), norm: to_pq(&n) })?;
            } else {
                writeln!(out, "{}", to_pq(&n))?;
            }
        }
        Command::Involute(a) => {
            let inv = a.list.involute();
            let n = a.list.norm()?;
            if json {
                emit_json(out, &InvoluteJson { list: list_to_json(&a.list), involute: list_to_json(&inv), norm: to_pq(&n) })?;
            } else {
                writeln!(out, "{inv}")?;
            }
        }
        Command::Separate { list, k } => separate(&list.list, *k, json, out)?,
        Command::Check { num, den, oracle } => check(num, den, *oracle, json, out)?,
        Command::Bounds { nmax, rmax, for_d } => bounds(*nmax, *rmax, *for_d, json, out)?,
        Command::Classify { length, run } => {
            let c = classify_length(*length, &run.runner())?;
            write_catalog(&c, run, json, out)?;
        }
        Command::SmallNorm { preset, length, below, at_most, list_presets, run } => {
            if *list_presets {
                for p in SmallNormPreset::ALL {
                    writeln!(out, "{}\tlength {}\t{}", p.name(), p.length(), filter_text(&p.filter()))?;
                }
                return Ok(Outcome::Ok);
            }
            let p = match (preset, length, below, at_most) {
                (Some(name), ..) => SmallNormPreset::from_name(name)
                    .ok_or_else(|| Failure::Usage(format!("unknown preset {name:?}; see --list-presets")))?,
                (None, Some(n), Some(t), None) => SmallNormPreset::lookup(*n, &NormFilter::Below(parse_pq(t)?))?,
                (None, Some(n), None, Some(t)) => SmallNormPreset::lookup(*n, &NormFilter::AtMost(parse_pq(t)?))?,
                _ => return Err(Failure::Usage("give --preset, or --length with --below or --at-most".into())),
            };
            let c = small_norm_catalog(p, &run.runner())?;
            write_catalog(&c, run, json, out)?;
        }
        Command::Liouville { n, probe } => liouville(*n, *probe, json, out)?,
        Command::Catalog { action } => return catalog(action, json, out),
    }
    Ok(Outcome::Ok)
}

fn filter_text(f: &NormFilter) -> String {
    match f {
        NormFilter::Any => "any norm".into(),
        NormFilter::Below(t) => format!("norm < {}", to_pq(t)),
        NormFilter::AtMost(t) => format!("norm <= {}", to_pq(t)),
        NormFilter::Exactly(t) => format!("norm = {}", to_pq(t)),
    }
}

fn write_catalog(c: &Catalog, run: &RunArgs, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(path) = &run.out {
        std::fs::write(path, catalog_to_string(c))?;
        writeln!(out, "{}: {} lists written to {}", c.name, c.len(), path.display())?;
    } else if json {
        out.write_all(catalog_to_string(c).as_bytes())?;
    } else {
        for e in &c.entries {
            writeln!(out, "{}\t{}", e.list, to_pq(&e.norm))?;
        }
        writeln!(out, "{}: {} lists", c.name, c.len())?;
    }
    Ok(())
}

fn separate(a: &SignedList, k: Option<u64>, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let top = max_separation(a)?;
    let k = match k {
        Some(k) if k < 2 => return Err(Failure::Usage("k must be at least 2".into())),
        Some(k) => k,
        None => top,
    };
    let ws = if k >= 2 { find_separations(a, k)? } else { Vec::new() };
    if json {
        emit_json(
            out,
            &SeparateJson {
                list: list_to_json(a),
                max_separation: top,
                k,
                witnesses: ws.iter().map(WitnessJson::from).collect(),
            },
        )?;
    } else {
        writeln!(out, "max separation: {top}")?;
        if k >= 2 {
            writeln!(out, "{}-separations: {}", k, ws.len())?;
        }
        for w in &ws {
            writeln!(out, "  {} x {} + {} x {}", w.b_coef, w.b_part, w.c_coef, w.c_part)?;
        }
    }
    Ok(())
}

fn check(num: &[u64], den: &[u64], oracle: Option<u64>, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let spec = RatioSpec::new(num.to_vec(), den.to_vec())?;
    let range = landau_min_max(&spec);
    let d = spec.d();
    let family = if !range.integral() {
        "none".to_string()
    } else if d == 1 {
        let fams = family_membership(&spec.to_list().primitive_part())?;
        if fams.is_empty() {
            "sporadic".to_string()
        } else {
            fams.iter().map(family_label).collect::<Vec<_>>().join(",")
        }
    } else {
        "unclassified".to_string()
    };
    let mut report = CheckJson::new(d, &range, family);
    if let Some(n_max) = oracle {
        let v = valuation_oracle(&spec, n_max, None)?;
        report.oracle = Some(OracleJson::new(n_max, &v));
    }
    if json {
        emit_json(out, &report)?;
    } else {
        writeln!(out, "integral: {}", report.integral)?;
        writeln!(out, "D: {}", report.d)?;
        writeln!(out, "f range: [{}, {}]", report.min_f, report.max_f)?;
        if let Some(x) = &report.argmin {
            writeln!(out, "minimum at x = {x}")?;
        }
        writeln!(out, "family: {}", report.family)?;
        if let Some(o) = &report.oracle {
            match (o.failing_n, o.failing_p) {
                (Some(n), Some(p)) => writeln!(out, "valuations: fail at n = {n}, p = {p}")?,
                _ => writeln!(out, "valuations: pass for n <= {}", o.n_max)?,
            }
        }
    }
    Ok(())
}

fn bound_text(b: &Bound) -> String {
    match b {
        Bound::Finite(v) => to_pq(v),
        Bound::Infinite => "inf".into(),
    }
}

fn bounds(nmax: usize, rmax: usize, for_d: Option<u64>, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let t = build_table(nmax, rmax)?;
    let caps = match for_d {
        Some(d) => Some((d, max_length_for_d(&t, d, Threshold::G)?, max_length_for_d(&t, d, Threshold::G1)?)),
        None => None,
    };
    if json {
        let mut v = serde_json::to_value(BoundsJson::from(&t)).expect("plain data");
        if let Some((d, g, g1)) = caps {
            v["max_length"] = serde_json::json!({ "D": d, "g": g, "g1": g1 });
        }
        emit_json(out, &v)?;
        return Ok(());
    }
    let mut header = vec!["n".to_string()];
    header.extend((1..=t.r_max).map(|r| format!("G_{r}")));
    header.push("G".into());
    header.push("G(n;1)".into());
    writeln!(out, "{}", header.join("\t"))?;
    for n in 1..=t.n_max {
        let mut row = vec![n.to_string()];
        row.extend((1..=t.r_max).map(|r| to_pq(&t.gr[r][n])));
        row.push(to_pq(&t.g[n]));
        row.push(bound_text(&t.g1[n]));
        writeln!(out, "{}", row.join("\t"))?;
    }
    if let Some((d, g, g1)) = caps {
        writeln!(out, "D = {d}: K + L <= {g}; finitely many beyond {g1}")?;
    }
    Ok(())
}

fn liouville(n: Option<u64>, probe: Option<u64>, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    if let Some(n) = n {
        let l = build_liouville(n)?;
        let norm = l.list.norm()?;
        let formula = liouville_norm_formula(n)?;
        if json {
            emit_json(out, &LiouvilleJson::new(&l, &norm, &formula))?;
        } else {
            writeln!(out, "N = {n}, d(N) = {}", l.d_of_n)?;
            writeln!(out, "list: {}", l.list)?;
            writeln!(out, "norm: {} (formula {})", to_pq(&norm), to_pq(&formula))?;
        }
    }
    if let Some(kmax) = probe {
        let table = ratio_lab_core::bounds::BoundTable::default_table();
        let rows = (2..=kmax).map(|k| asymptotic_ratio_probe(&table, k)).collect::<Result<Vec<_>, _>>()?;
        if json {
            emit_json(out, &rows.iter().map(ProbeRowJson::from).collect::<Vec<_>>())?;
        } else {
            writeln!(out, "k\tn\tdyadic\tupper\tlower\tupper/lower")?;
            for r in &rows {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.k,
                    r.n,
                    r.length_in_dyadic_range(),
                    to_pq(&r.upper),
                    to_pq(&r.lower),
                    to_pq(&r.ratio())
                )?;
            }
        }
    }
    Ok(())
}

fn catalog(action: &CatalogAction, json: bool, out: &mut dyn Write) -> CmdResult {
    match action {
        CatalogAction::List => {
            for n in catalogs::names() {
                writeln!(out, "{n}")?;
            }
            Ok(Outcome::Ok)
        }
        CatalogAction::Show { name } => {
            let c = catalogs::require(name)?;
            if json {
                out.write_all(catalog_to_string(&c).as_bytes())?;
            } else {
                for e in &c.entries {
                    writeln!(out, "{}\t{}", e.list, to_pq(&e.norm))?;
                }
                writeln!(out, "{}: {} lists", c.name, c.len())?;
            }
            Ok(Outcome::Ok)
        }
        CatalogAction::Verify { file, reference, oracle } => {
            let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let c = catalog_from_str(&text)?;
            let ref_name = reference.clone().unwrap_or_else(|| c.name.clone());
            let golden = catalogs::load(&ref_name)?;
            if reference.is_some() && golden.is_none() {
                return Err(Failure::Usage(format!("no golden catalog named {ref_name}")));
            }
            let report = verify_catalog(&c, golden.as_ref(), *oracle);
            let summary = VerifyJson::new(&c.name, golden.as_ref().map(|_| ref_name.as_str()), &report);
            if json {
                emit_json(out, &summary)?;
            } else {
                let against = summary.reference.as_deref().map(|r| format!(" against {r}")).unwrap_or_default();
                let verdict = if summary.passed { "passed" } else { "FAILED" };
                writeln!(out, "{}: {} entries checked{against}: {verdict}", summary.name, summary.checked)?;
                for i in &summary.issues {
                    writeln!(out, "  {i}")?;
                }
                for m in &report.missing {
                    writeln!(out, "  missing {m}")?;
                }
                for x in &report.extra {
                    writeln!(out, "  extra {x}")?;
                }
            }
            Ok(if report.passed() { Outcome::Ok } else { Outcome::Failed })
        }
    }
}
