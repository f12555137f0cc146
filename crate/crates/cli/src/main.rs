use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qchrom_core::certify::{self, Bundle, DesignFamily, Table1Options, Table2Options, Table3Options};
use qchrom_core::designs::{design_upper_bound, separation_profile, Design, DesignDocument};
use qchrom_core::representation::{
    check_character_product, natural_rep_check, rep_from_family, verify_flat_orthogonal, verify_subgraph_theorems,
    SAMPLE_SEED,
};
use qchrom_core::spectrum::claims::{verify_appendix_claims, verify_extremal_claims};
use qchrom_core::spectrum::closed_form::g5_lambda_min;
use qchrom_core::spectrum::enumerator::duality_check;
use qchrom_core::{
    enumerate_types, families, full_spectrum, oracle, spectral_lower_bound, Budget, CayleySpec, Error, Strategy,
    TypeVector,
};
use serde::Serialize;
use serde_json::json;

const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_FALSIFIED: u8 = 4;

#[derive(Parser)]
#[command(name = "qchrom", version, about = "Exact spectra, designs and quantum chromatic number certificates")]
struct Cli {
    /// Oracle work limit (vertex-generator products or edge checks).
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Limit on ordered types a spectrum may visit.
    #[arg(long, global = true)]
    max_types: Option<u128>,
    /// Write the document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// Exact spectrum of a Cayley graph over Z_p^n.
    Spectrum(GraphArgs),
    /// Construct and verify a BIBD, or verify a design file.
    Design(DesignArgs),
    /// Build and verify a flat orthogonal representation.
    Represent {
        #[command(subcommand)]
        which: RepresentCommand,
    },
    /// Reproduce table rows as certificates.
    Certify(CertifyArgs),
    /// Verify a statement exhaustively over a range.
    Verify(VerifyArgs),
    /// Brute-force spectrum over all group elements.
    Oracle {
        #[command(flatten)]
        graph: GraphArgs,
        /// Floating-point evaluation (any modulus, not a certificate).
        #[arg(long)]
        numeric: bool,
    },
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u32,
    /// Generator type as comma-separated counts, e.g. `2,2,2`. Repeatable.
    #[arg(long = "gen", required = true, value_parser = parse_counts)]
    gens: Vec<Vec<u32>>,
    /// Close the generator set under negation.
    #[arg(long)]
    symmetrize: bool,
}

impl GraphArgs {
    fn spec(&self) -> qchrom_core::Result<CayleySpec> {
        let gens = self
            .gens
            .iter()
            .map(|c| TypeVector::new(c.clone()))
            .collect::<qchrom_core::Result<Vec<_>>>()?;
        if self.symmetrize {
            CayleySpec::symmetrized(self.p, self.n, gens)
        } else {
            CayleySpec::new(self.p, self.n, gens)
        }
    }
}

fn parse_counts(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|e| format!("`{x}`: {e}")))
        .collect()
}

#[derive(Args)]
struct DesignArgs {
    /// paley, hadamard, twinprime or menon.
    family: Option<String>,
    /// q for paley/twinprime, t for hadamard, a (s = 2^(a-1)) for menon.
    param: Option<u64>,
    /// Read a design file instead of constructing one.
    #[arg(long, conflicts_with_all = ["family", "param"])]
    file: Option<PathBuf>,
}

impl DesignArgs {
    fn load(&self) -> qchrom_core::Result<(String, Design)> {
        if let Some(path) = &self.file {
            let doc: DesignDocument = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let d = Design::from_document(&doc)?;
            let d = match d.params() {
                Some(_) => d,
                None => d.clone().verified().unwrap_or(d),
            };
            return Ok((path.display().to_string(), d));
        }
        let (Some(family), Some(param)) = (&self.family, self.param) else {
            return Err(Error::Parameter("give FAMILY PARAM or --file".into()));
        };
        Ok((format!("{family} {param}"), DesignFamily::parse(family)?.build(param)?))
    }
}

#[derive(Subcommand)]
enum RepresentCommand {
    /// Sign representation of H(n,2) from a pair-separating family.
    Design {
        #[command(flatten)]
        design: DesignArgs,
        /// Include all 2^n rows (n <= 20).
        #[arg(long)]
        emit_matrix: bool,
    },
    /// Root-of-unity representation of a Cayley graph.
    Natural {
        #[command(flatten)]
        graph: GraphArgs,
        /// Sweep all edges up to this many, otherwise sample this many.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(value_parser = ["table1", "table2", "table3"])]
    table: String,
    #[arg(long, default_value_t = 3)]
    l_max: u32,
    #[arg(long, default_value_t = 2)]
    t_max: u32,
    /// Table 1 family filter (O3l3, O4t2, Feng, G1, G2, G3, G5, G6, BIBD, external).
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 11)]
    paley_qmax: u64,
    #[arg(long, default_value_t = 2)]
    hadamard_tmax: u32,
    #[arg(long, default_value_t = 3)]
    twinprime_qmax: u64,
    #[arg(long, default_value_t = 2)]
    menon_amax: u32,
    /// Single Table 3 row.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<u32>,
    #[arg(long, default_value_t = 2)]
    n_min: u32,
    #[arg(long, default_value_t = 16)]
    n_max: u32,
    /// Record wall-clock time per row (makes output non-reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = ["goal", "second-largest", "g5-min", "duality", "appendix-claims", "subgraph"])]
    theorem: String,
    #[arg(long, default_value_t = 8)]
    l_max: u32,
    /// Single l (g5-min, subgraph).
    #[arg(long)]
    l: Option<u32>,
    /// t for subgraph.
    #[arg(long, default_value_t = 1)]
    t: u32,
    /// Length for duality.
    #[arg(long, default_value_t = 6)]
    n: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parameter(_) | Error::Domain(_) => EXIT_USAGE,
                Error::Budget { .. } => EXIT_BUDGET,
                Error::Invariant(_) => EXIT_FALSIFIED,
                Error::Io(_) | Error::Json(_) => 1,
            })
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    let mut b = Budget::default();
    if let Some(w) = cli.budget {
        b.max_oracle_work = w;
    }
    if let Some(t) = cli.max_types {
        b.max_types = t;
    }
    b
}

/// Writes `doc` to `--out`, or to standard output.
fn emit(cli: &Cli, doc: &str) -> qchrom_core::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, doc)?,
        None => print!("{doc}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> qchrom_core::Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

/// Writes the document only when `--out` is given; summaries go to stdout.
fn save(cli: &Cli, doc: &str) -> qchrom_core::Result<()> {
    if let Some(path) = &cli.out {
        std::fs::write(path, doc)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> qchrom_core::Result<u8> {
    let budget = budget(cli);
    match &cli.command {
        Command::Spectrum(g) => {
            let spec = g.spec()?;
            let report = full_spectrum(&spec, &budget)?;
            let (max, min) = (report.lambda_max(), report.lambda_min());
            println!("lambda_max = {} at {}", max.value, max.witness);
            println!("lambda_min = {} at {}", min.value, min.witness);
            if min.value == -max.value.clone() {
                println!("bipartite");
            }
            match spectral_lower_bound(&report) {
                Ok(b) => println!("bound = {b}"),
                Err(Error::Domain(msg)) => println!("bound = none ({msg})"),
                Err(e) => return Err(e),
            }
            save(cli, &to_json(&report.to_document())?)?;
            Ok(0)
        }
        Command::Design(args) => {
            let (label, d) = args.load()?;
            match d.params() {
                Some(p) => {
                    let theta = separation_profile(&d).theta;
                    println!(
                        "{label}: n={} k={} lambda={} r={} b={} theta={}",
                        d.n(),
                        p.k,
                        p.lambda,
                        p.r,
                        p.b,
                        theta.map_or("none".into(), |t| t.to_string())
                    );
                    match design_upper_bound(&d)? {
                        Some(ub) => println!("bound = {ub} (chi_q(H({},2)) <= {ub})", d.n()),
                        None => println!("bound = none (4k(n-k) < n(n-1))"),
                    }
                }
                None => {
                    let failure = d.clone().verified().expect_err("no params means it failed");
                    println!("{label}: not a BIBD: {failure}");
                    save(cli, &to_json(&d.to_document())?)?;
                    return Ok(EXIT_FALSIFIED);
                }
            }
            save(cli, &to_json(&d.to_document())?)?;
            Ok(0)
        }
        Command::Represent { which } => represent(cli, which, &budget),
        Command::Certify(args) => {
            let bundle = certify_bundle(args, &budget)?;
            let doc = match cli.format {
                Format::Json => bundle.to_json()?,
                Format::Md => bundle.to_markdown(),
            };
            emit(cli, &doc)?;
            if cli.out.is_some() {
                for c in &bundle.certificates {
                    println!(
                        "{}: lower {}, upper {}: {}",
                        c.claim,
                        c.lower.value.as_deref().unwrap_or("?"),
                        c.upper.value.as_deref().unwrap_or("?"),
                        c.verdict.as_str()
                    );
                }
            }
            Ok(0)
        }
        Command::Verify(args) => verify(cli, args, &budget),
        Command::Oracle { graph, numeric } => {
            let spec = graph.spec()?;
            if *numeric {
                let report = oracle::brute_spectrum_numeric(&spec, &budget, Strategy::default())?;
                println!("lambda_max ~ {}", report.lambda_max);
                println!("lambda_min ~ {}", report.lambda_min);
                println!("{}", report.label);
                save(cli, &to_json(&report)?)?;
                return Ok(0);
            }
            let brute = oracle::brute_spectrum(&spec, &budget)?;
            let engine = full_spectrum(&spec, &budget)?;
            let agrees = brute.entries() == engine.entries();
            println!("lambda_max = {}", brute.lambda_max().value);
            println!("lambda_min = {}", brute.lambda_min().value);
            println!("engine agreement: {}", if agrees { "exact" } else { "MISMATCH" });
            save(cli, &to_json(&brute.to_document())?)?;
            Ok(if agrees { 0 } else { EXIT_FALSIFIED })
        }
    }
}

fn represent(cli: &Cli, which: &RepresentCommand, budget: &Budget) -> qchrom_core::Result<u8> {
    match which {
        RepresentCommand::Design { design, emit_matrix } => {
            let (label, d) = design.load()?;
            let theta = separation_profile(&d)
                .theta
                .ok_or_else(|| Error::Domain(format!("{label}: separation profile is not constant")))?;
            let rep = rep_from_family(&d, theta)?;
            let n = rep.n();
            let verdict = verify_flat_orthogonal(&rep, n);
            let law = check_character_product(&rep, 1000, SAMPLE_SEED)?;
            println!("{label}: H({n},2), theta={theta}, dimension={}", rep.dimension());
            println!(
                "orthogonality over {} weight-2 differences: {}",
                verdict.differences_checked,
                if verdict.passed() { "pass" } else { "FAIL" }
            );
            println!("character-product law: {}", if law.is_none() { "pass" } else { "FAIL" });
            save(cli, &to_json(&rep.to_document(*emit_matrix)?)?)?;
            if let Some(v) = &verdict.violation {
                println!("violation at pair {:?}: inner product {}", v.pair, v.inner_product);
            }
            Ok(if verdict.passed() && law.is_none() { 0 } else { EXIT_FALSIFIED })
        }
        RepresentCommand::Natural { graph, samples } => {
            let spec = graph.spec()?;
            let v = natural_rep_check(&spec, *samples, budget)?;
            println!(
                "natural representation, dimension {}: {} (edges checked: {}, {})",
                v.dimension,
                if v.passed() { "orthogonal" } else { "NOT orthogonal" },
                v.edges_checked,
                if v.exhaustive { "all" } else { "sampled" }
            );
            save(cli, &to_json(&v)?)?;
            Ok(if v.passed() { 0 } else { EXIT_FALSIFIED })
        }
    }
}

fn certify_bundle(a: &CertifyArgs, budget: &Budget) -> qchrom_core::Result<Bundle> {
    match a.table.as_str() {
        "table1" => certify::certify_table1(
            &Table1Options {
                l_max: a.l_max,
                t_max: a.t_max,
                family: a.family.clone(),
                timing: a.timing,
            },
            budget,
        ),
        "table2" => certify::certify_table2(
            &Table2Options {
                paley_qmax: a.paley_qmax,
                hadamard_tmax: a.hadamard_tmax,
                twinprime_qmax: a.twinprime_qmax,
                menon_amax: a.menon_amax,
                timing: a.timing,
            },
            budget,
        ),
        _ => {
            let (n_min, n_max) = a.n.map_or((a.n_min, a.n_max), |n| (n, n));
            certify::certify_table3(
                &Table3Options {
                    n_min,
                    n_max,
                    timing: a.timing,
                },
                budget,
            )
        }
    }
}

const GOAL_CLAIMS: [&str; 3] = ["largest", "smallest-value", "goal"];
const SECOND_CLAIMS: [&str; 2] = ["second-largest-value", "second-largest"];

fn verify(cli: &Cli, a: &VerifyArgs, budget: &Budget) -> qchrom_core::Result<u8> {
    let (doc, passed) = match a.theorem.as_str() {
        "goal" | "second-largest" => {
            let (claims, from): (&[&str], u32) = if a.theorem == "goal" {
                (&GOAL_CLAIMS, 1)
            } else {
                (&SECOND_CLAIMS, 3)
            };
            let mut verdicts = Vec::new();
            let mut passed = true;
            for l in from..=a.l_max {
                let v = verify_extremal_claims(l)?;
                let relevant: Vec<_> = v
                    .counterexamples
                    .iter()
                    .filter(|c| claims.contains(&c.claim.as_str()))
                    .collect();
                passed &= relevant.is_empty();
                verdicts.push(json!({
                    "l": l,
                    "n": v.n,
                    "canonical_types": v.canonical_types,
                    "lambda_min": v.lambda_min.to_string(),
                    "second_largest": v.second_largest.as_ref().map(|x| x.to_string()),
                    "counterexamples": relevant,
                    "passed": relevant.is_empty(),
                }));
            }
            (json!({ "theorem": a.theorem, "verdicts": verdicts, "passed": passed }), passed)
        }
        "appendix-claims" => {
            let mut verdicts = Vec::new();
            let mut passed = true;
            for l in 1..=a.l_max {
                let v = verify_appendix_claims(l)?;
                passed &= v.passed;
                verdicts.push(v);
            }
            (json!({ "theorem": a.theorem, "verdicts": verdicts, "passed": passed }), passed)
        }
        "g5-min" => {
            let range = a.l.map_or(2..=a.l_max, |l| l..=l);
            let mut verdicts = Vec::new();
            let mut passed = true;
            for l in range {
                let spec = families::g5(l)?;
                let report = full_spectrum(&spec, budget)?;
                let got = report.lambda_min().value.clone();
                let expected = g5_lambda_min(l)?;
                let bound = spectral_lower_bound(&report)?;
                let oracle = match oracle::brute_spectrum(&spec, budget) {
                    Ok(b) => Some(b.entries() == report.entries()),
                    Err(Error::Budget { .. }) => None,
                    Err(e) => return Err(e),
                };
                let ok = got == expected && bound == (3 * l).into() && oracle != Some(false);
                passed &= ok;
                eprintln!("l={l}: lambda_min = {got}, expected {expected}, bound = {bound}");
                verdicts.push(json!({
                    "l": l,
                    "lambda_min": got.to_string(),
                    "lambda_min_expected": expected.to_string(),
                    "bound": bound.to_string(),
                    "oracle_agrees": oracle,
                    "passed": ok,
                }));
            }
            (json!({ "theorem": a.theorem, "verdicts": verdicts, "passed": passed }), passed)
        }
        "duality" => {
            let types: Vec<TypeVector> = enumerate_types(3, a.n, true)?.collect();
            let mut failures = Vec::new();
            let mut pairs = 0u64;
            for s in &types {
                for t in &types {
                    pairs += 1;
                    let (lhs, rhs) = duality_check(s, t)?;
                    if lhs != rhs {
                        failures.push(json!({ "s": s, "t": t, "lhs": lhs.to_string(), "rhs": rhs.to_string() }));
                    }
                }
            }
            let passed = failures.is_empty();
            (
                json!({ "theorem": "duality", "n": a.n, "pairs_checked": pairs, "failures": failures, "passed": passed }),
                passed,
            )
        }
        _ => {
            let l = a.l.unwrap_or(2);
            let v = verify_subgraph_theorems(l, a.t, budget)?;
            let passed = v.passed;
            (serde_json::to_value(&v)?, passed)
        }
    };
    emit(cli, &to_json(&doc)?)?;
    if cli.out.is_some() {
        println!("{}: {}", a.theorem, if passed { "pass" } else { "FAIL" });
    }
    Ok(if passed { 0 } else { EXIT_FALSIFIED })
}
