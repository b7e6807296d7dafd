use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lambdabench::bott_ring::{minimal_inverse, verify_bott_identities, verify_bott_multiplier, CyclicQuotientRing};
use lambdabench::characters::{
    adams, fs_classify, verify_adjoint_is_inverse_adams, verify_adjoint_pairing, verify_character_table, verify_koszul,
    verify_multiplicativity, verify_periodicity, verify_regular_fixed, verify_symplectic_adjoint,
    verify_virtual_sigma_paths, VirtualCharacter,
};
use lambdabench::gamma_lattices::{
    parse_int_matrix, sym_power_orbits, verify_lattice_compatibility, verify_orbit_stabilizer, GammaLattice,
};
use lambdabench::partitions::Partition;
use lambdabench::quad_fields::{
    verify_different_sequence, verify_different_sequence_range, verify_graded_layers, verify_graded_layers_at,
    QuadraticField,
};
use lambdabench::report::CheckOutcome;
use lambdabench::schur_modules::{
    module_from_spec, verify_cauchy_dimensions, verify_cauchy_modules, verify_schur_characters, EquivariantModule,
};
use lambdabench::suite::{all_passed, run_suite, GroupContext, SuiteConfig, VerificationReport, DEFAULT_CONFIG};
use lambdabench::symfunc::{
    cauchy_p, newton_poly, schur_in_e, schur_in_h, sym_cauchy_q, verify_newton_cauchy, verify_q_specialization, Basis,
};

#[derive(Parser)]
#[command(name = "lambdabench", version, about = "Exact checks for power operations on representation rings")]
struct Cli {
    /// Report format for verification output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Universal symmetric-function polynomials.
    #[command(subcommand)]
    Symfunc(SymfuncCmd),
    /// Character table of a group.
    Chartable { group: String },
    /// Adams operation on irreducible characters.
    Adams {
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Row index; all rows when omitted.
        #[arg(long)]
        chi: Option<usize>,
    },
    /// Frobenius-Schur types of the irreducibles.
    ClassifyFs { group: String },
    /// Orbit decomposition of a product of symmetric powers of a free module.
    Orbits {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Comma-separated powers, e.g. `2,1`.
        #[arg(long, value_delimiter = ',')]
        powers: Vec<usize>,
    },
    /// Schur or coSchur module of a representation.
    Schur {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        lambda: String,
        /// Build the coSchur module instead.
        #[arg(long)]
        co: bool,
    },
    /// Quadratic field data.
    Quad {
        #[arg(long = "D", allow_hyphen_values = true)]
        d: i64,
        #[command(subcommand)]
        action: QuadCmd,
    },
    /// Identities in Z[x]/(x^m - 1).
    #[command(subcommand)]
    Bott(BottCmd),
    /// Run a single check.
    Verify(VerifyArgs),
    /// Run a grid of checks from a config file.
    Suite {
        /// TOML grid; the built-in acceptance grid when omitted.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Print the built-in grid and exit.
        #[arg(long)]
        print_default: bool,
    },
}

#[derive(Subcommand)]
enum SymfuncCmd {
    /// Power sum N_i in elementary or complete variables.
    Newton {
        #[arg(long)]
        i: usize,
        #[arg(long, value_enum, default_value_t = BasisArg::E)]
        basis: BasisArg,
    },
    /// Schur polynomial by Jacobi-Trudi.
    Schur {
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = BasisArg::E)]
        basis: BasisArg,
    },
    /// Exterior Cauchy polynomial P_i.
    CauchyP {
        #[arg(long)]
        i: usize,
    },
    /// Symmetric Cauchy polynomial Q_j.
    CauchyQ {
        #[arg(long)]
        j: usize,
    },
    /// Check N_i(P_1, ..., P_i) = N_i(X) N_i(Y).
    VerifyCauchy {
        #[arg(long)]
        i: usize,
    },
    /// Check Q_j(X; 0, ..., 0, 1) = N_j(X).
    VerifyQ {
        #[arg(long)]
        j: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    E,
    H,
}

#[derive(Subcommand)]
enum QuadCmd {
    /// Different, ramification and differential module.
    Report,
    /// Check the differential exact sequence.
    Different,
    /// Check graded layers at one ramified prime, or all of them.
    Layers {
        #[arg(long)]
        p: Option<u64>,
    },
}

#[derive(Subcommand)]
enum BottCmd {
    /// Bott element and multiplier identity.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: u64,
    },
    /// Geometric-series inverse of the Bott element; k' defaults to the minimal inverse mod m.
    VerifyInverse {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        kprime: Option<u64>,
    },
    /// Bott element for m, k.
    Element {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Check id, e.g. `regular-fixed`; `list` prints all ids.
    check: String,
    #[arg(long)]
    group: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Vec<i64>,
    #[arg(long)]
    kprime: Option<u64>,
    #[arg(long)]
    max_k: Option<u64>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    #[arg(long, value_delimiter = ',')]
    powers: Vec<usize>,
    /// Module spec; give twice for two-module checks.
    #[arg(long)]
    module: Vec<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// Row index of a character; give twice for two-character checks.
    #[arg(long)]
    chi: Vec<usize>,
    /// File holding an integer matrix; repeat for several.
    #[arg(long)]
    beta: Vec<PathBuf>,
    #[arg(long = "D", allow_hyphen_values = true)]
    d: Option<i64>,
    /// Inclusive range `lo,hi`.
    #[arg(long = "D-range", value_delimiter = ',', allow_hyphen_values = true)]
    d_range: Vec<i64>,
}

const CHECK_IDS: &[&str] = &[
    "newton-cauchy",
    "q-specialization",
    "character-table",
    "regular-fixed",
    "adjoint-pairing",
    "adjoint-inverse-adams",
    "periodicity",
    "symplectic-adjoint",
    "koszul",
    "virtual-sigma-paths",
    "multiplicativity",
    "schur-character",
    "cauchy-modules",
    "cauchy-dimensions",
    "orbit-stabilizer",
    "lattice-compatibility",
    "different-sequence",
    "graded-layers",
    "bott-identities",
    "bott-multiplier",
];

type CmdResult = Result<ExitCode, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Writes one line to stdout; a closed pipe ends the process quietly.
fn out(text: &str) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn print_json(v: &Value) -> CmdResult {
    out(&serde_json::to_string_pretty(v).map_err(err)?);
    Ok(ExitCode::SUCCESS)
}

fn emit(reports: &[VerificationReport], format: Format) -> CmdResult {
    for r in reports {
        match format {
            Format::Json => out(&serde_json::to_string(r).map_err(err)?),
            Format::Text => out(&r.text_line()),
        }
    }
    Ok(if all_passed(reports) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn context(spec: &str) -> Result<GroupContext, String> {
    let g = lambdabench::groups::parse_group(spec).map_err(err)?;
    GroupContext::new(g)
}

fn basis(b: BasisArg) -> Basis {
    match b {
        BasisArg::E => Basis::Elementary,
        BasisArg::H => Basis::Complete,
    }
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Symfunc(cmd) => symfunc(cmd, cli.format),
        Command::Chartable { group } => print_json(&context(group)?.table.to_json()),
        Command::Adams { group, k, chi } => {
            let c = context(group)?;
            let rows: Vec<usize> = match chi {
                Some(i) if *i >= c.table.len() => return Err(format!("no row {i}")),
                Some(i) => vec![*i],
                None => (0..c.table.len()).collect(),
            };
            let mut out = Vec::new();
            for i in rows {
                let image = adams(c.table.row(i), *k);
                let coords = c.table.decompose(&image).map_err(err)?;
                out.push(json!({ "chi": i, "k": k, "values": image.to_json(), "decomposition": coords }));
            }
            print_json(&Value::Array(out))
        }
        Command::ClassifyFs { group } => {
            let c = context(group)?;
            print_json(&serde_json::to_value(fs_classify(&c.table).map_err(err)?).map_err(err)?)
        }
        Command::Orbits { group, rank, powers } => {
            let g = Arc::new(lambdabench::groups::parse_group(group).map_err(err)?);
            print_json(&sym_power_orbits(&g, *rank, powers).map_err(err)?.to_json())
        }
        Command::Schur { group, module, lambda, co } => {
            let c = context(group)?;
            let v = module_from_spec(&c.classes, &c.table, module).map_err(err)?;
            let lambda: Partition = lambda.parse().map_err(err)?;
            let w = if *co {
                EquivariantModule::coschur_module(&v, &lambda)
            } else {
                EquivariantModule::schur_module(&v, &lambda)
            };
            let character = w.character();
            print_json(&json!({
                "group": c.name(),
                "module": module,
                "lambda": lambda.to_string(),
                "coschur": co,
                "dim": w.dim(),
                "character": character.to_json(),
                "decomposition": c.table.decompose(&character).map_err(err)?,
            }))
        }
        Command::Quad { d, action } => {
            let q = QuadraticField::new(*d).map_err(err)?;
            match action {
                QuadCmd::Report => print_json(&q.report()),
                QuadCmd::Different => emit_outcome(verify_different_sequence(&q), cli.format),
                QuadCmd::Layers { p: None } => emit_outcome(verify_graded_layers(&q), cli.format),
                QuadCmd::Layers { p: Some(p) } => emit_outcome(verify_graded_layers_at(&q, *p).map_err(err)?, cli.format),
            }
        }
        Command::Bott(cmd) => match cmd {
            BottCmd::Verify { m, k } => emit_outcome(verify_bott_multiplier(*m, *k).map_err(err)?, cli.format),
            BottCmd::VerifyInverse { m, k, kprime } => {
                let kp = match kprime {
                    Some(x) => *x,
                    None => minimal_inverse(*k, *m as u64).map_err(err)?,
                };
                emit_outcome(verify_bott_identities(*m, *k, kp).map_err(err)?, cli.format)
            }
            BottCmd::Element { m, k } => {
                let ring = CyclicQuotientRing::new(*m).map_err(err)?;
                let theta = ring.bott_element(*k).map_err(err)?;
                print_json(&json!({ "m": m, "k": k, "element": theta.to_string(), "coefficients": theta.coeffs }))
            }
        },
        Command::Verify(args) => verify(args, cli.format),
        Command::Suite { config, print_default } => {
            if *print_default {
                out(DEFAULT_CONFIG.trim_end());
                return Ok(ExitCode::SUCCESS);
            }
            let cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    SuiteConfig::parse(&text).map_err(err)?
                }
                None => SuiteConfig::default_grid(),
            };
            emit(&run_suite(&cfg).map_err(err)?, cli.format)
        }
    }
}

fn emit_outcome(o: CheckOutcome, format: Format) -> CmdResult {
    emit(&[VerificationReport::from_outcome(o, 0.0)], format)
}

fn symfunc(cmd: &SymfuncCmd, format: Format) -> CmdResult {
    let show = |label: String, e: lambdabench::symfunc::SymExpr| {
        print_json(&json!({ "polynomial": label, "text": e.to_string(), "terms": e }))
    };
    match cmd {
        SymfuncCmd::Newton { i, basis: b } => show(format!("N_{i}"), newton_poly(*i, basis(*b))),
        SymfuncCmd::Schur { lambda, basis: b } => {
            let lambda: Partition = lambda.parse().map_err(err)?;
            let e = match b {
                BasisArg::E => schur_in_e(&lambda),
                BasisArg::H => schur_in_h(&lambda),
            };
            show(format!("s_{lambda}"), e)
        }
        SymfuncCmd::CauchyP { i } => show(format!("P_{i}"), cauchy_p(*i)),
        SymfuncCmd::CauchyQ { j } => show(format!("Q_{j}"), sym_cauchy_q(*j)),
        SymfuncCmd::VerifyCauchy { i } => timed(|| verify_newton_cauchy(*i).map_err(err), format),
        SymfuncCmd::VerifyQ { j } => timed(|| verify_q_specialization(*j).map_err(err), format),
    }
}

fn timed(f: impl FnOnce() -> Result<CheckOutcome, String>, format: Format) -> CmdResult {
    timed_many(|| f().map(|o| vec![o]), format)
}

fn timed_many(f: impl FnOnce() -> Result<Vec<CheckOutcome>, String>, format: Format) -> CmdResult {
    let start = Instant::now();
    let outcomes = f()?;
    let ms = start.elapsed().as_secs_f64() * 1e3 / outcomes.len().max(1) as f64;
    let reports: Vec<_> = outcomes.into_iter().map(|o| VerificationReport::from_outcome(o, ms)).collect();
    emit(&reports, format)
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, String> {
    v.clone().ok_or_else(|| format!("--{flag} is required"))
}

fn first_k(a: &VerifyArgs) -> Result<i64, String> {
    a.k.first().copied().ok_or_else(|| "--k is required".to_string())
}

fn unsigned(k: i64) -> Result<u64, String> {
    u64::try_from(k).map_err(|_| format!("k = {k} must be nonnegative"))
}

fn modules(c: &GroupContext, a: &VerifyArgs, count: usize) -> Result<Vec<Arc<EquivariantModule>>, String> {
    if a.module.len() != count {
        return Err(format!("expected {count} --module value(s)"));
    }
    a.module.iter().map(|s| module_from_spec(&c.classes, &c.table, s).map_err(err)).collect()
}

fn verify(a: &VerifyArgs, format: Format) -> CmdResult {
    let group = || context(&need(&a.group, "group")?);
    match a.check.as_str() {
        "list" => {
            for id in CHECK_IDS {
                out(id);
            }
            Ok(ExitCode::SUCCESS)
        }
        "newton-cauchy" => timed(|| verify_newton_cauchy(need(&a.i, "i")?).map_err(err), format),
        "q-specialization" => timed(|| verify_q_specialization(need(&a.i, "i")?).map_err(err), format),
        "character-table" => {
            let c = group()?;
            timed(|| Ok(verify_character_table(&c.classes)), format)
        }
        "regular-fixed" => {
            let c = group()?;
            if a.k.is_empty() {
                return Err("--k is required".into());
            }
            timed_many(|| Ok(a.k.iter().map(|&k| verify_regular_fixed(&c.classes, k)).collect()), format)
        }
        "adjoint-pairing" => {
            let c = group()?;
            let k = unsigned(first_k(a)?)?;
            timed(|| Ok(verify_adjoint_pairing(&c.table, k)), format)
        }
        "adjoint-inverse-adams" => {
            let c = group()?;
            let k = unsigned(first_k(a)?)?;
            let e = c.classes.exponent() as u64;
            let kp = match a.kprime {
                Some(x) => x,
                None => (1..=e).find(|x| (k * x) % e == 1 % e).ok_or("k is not a unit mod the exponent")?,
            };
            timed(|| verify_adjoint_is_inverse_adams(&c.table, k, kp).map_err(err), format)
        }
        "periodicity" => {
            let c = group()?;
            let k = first_k(a)?;
            timed(|| Ok(verify_periodicity(&c.table, k)), format)
        }
        "symplectic-adjoint" => {
            let c = group()?;
            let max_k = a.max_k.unwrap_or(2 * c.classes.exponent() as u64);
            timed(|| verify_symplectic_adjoint(&c.table, max_k).map_err(err), format)
        }
        "koszul" => {
            let c = group()?;
            let i = need(&a.i, "i")?;
            let rows = if a.chi.is_empty() { (0..c.table.len()).collect() } else { a.chi.clone() };
            timed_many(
                || {
                    rows.iter()
                        .map(|&r| {
                            let chi = c.table.rows().get(r).ok_or(format!("no row {r}"))?;
                            verify_koszul(&c.table, chi, i).map_err(err)
                        })
                        .collect()
                },
                format,
            )
        }
        "multiplicativity" => {
            let c = group()?;
            let k = first_k(a)?;
            let [x, y] = a.chi[..] else { return Err("give --chi twice".into()) };
            let row = |r: usize| c.table.rows().get(r).ok_or(format!("no row {r}"));
            timed(|| verify_multiplicativity(row(x)?, row(y)?, k).map_err(err), format)
        }
        "virtual-sigma-paths" => {
            let c = group()?;
            let i = need(&a.i, "i")?;
            let [x, y] = a.chi[..] else { return Err("give --chi twice".into()) };
            if x.max(y) >= c.table.len() {
                return Err("row out of range".into());
            }
            let m = VirtualCharacter::basis(c.table.len(), x);
            let n = VirtualCharacter::basis(c.table.len(), y);
            timed(|| verify_virtual_sigma_paths(&c.table, &m, &n, i).map_err(err), format)
        }
        "schur-character" => {
            let c = group()?;
            let v = modules(&c, a, 1)?.remove(0);
            let lambda: Partition = need(&a.lambda, "lambda")?.parse().map_err(err)?;
            timed(|| verify_schur_characters(&v, &lambda).map_err(err), format)
        }
        "cauchy-modules" | "cauchy-dimensions" => {
            let c = group()?;
            let vw = modules(&c, a, 2)?;
            let i = need(&a.i, "i")?;
            if a.check == "cauchy-modules" {
                timed(|| verify_cauchy_modules(&vw[0], &vw[1], i).map_err(err), format)
            } else {
                timed(|| Ok(verify_cauchy_dimensions(&vw[0], &vw[1], i)), format)
            }
        }
        "orbit-stabilizer" => {
            let c = group()?;
            if a.powers.is_empty() {
                return Err("--powers is required".into());
            }
            timed(|| verify_orbit_stabilizer(&c.classes, a.rank, &a.powers).map_err(err), format)
        }
        "lattice-compatibility" => {
            let c = group()?;
            if a.beta.is_empty() {
                return Err("--beta is required".into());
            }
            let betas = a
                .beta
                .iter()
                .map(|path| {
                    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    parse_int_matrix(&text).map_err(err)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let ks: Vec<usize> = match a.k.len() {
                0 => vec![1; betas.len()],
                1 => vec![a.k[0] as usize; betas.len()],
                _ => a.k.iter().map(|&k| k as usize).collect(),
            };
            let f = GammaLattice::free(c.classes.group(), a.rank);
            let p = need(&a.p, "p")?;
            timed(|| verify_lattice_compatibility(&f, &betas, &ks, p).map_err(err), format)
        }
        "different-sequence" => match (a.d, a.d_range.as_slice()) {
            (Some(d), _) => timed(|| Ok(verify_different_sequence(&QuadraticField::new(d).map_err(err)?)), format),
            (None, [lo, hi]) => timed(|| Ok(verify_different_sequence_range(*lo, *hi)), format),
            _ => Err("give --D or --D-range lo,hi".into()),
        },
        "graded-layers" => {
            let q = QuadraticField::new(need(&a.d, "D")?).map_err(err)?;
            match a.p {
                Some(p) => timed(|| verify_graded_layers_at(&q, p).map_err(err), format),
                None => timed(|| Ok(verify_graded_layers(&q)), format),
            }
        }
        "bott-identities" => {
            let m = need(&a.m, "m")?;
            let k = unsigned(first_k(a)?)?;
            let kp = match a.kprime {
                Some(x) => x,
                None => minimal_inverse(k, m as u64).map_err(err)?,
            };
            timed(|| verify_bott_identities(m, k, kp).map_err(err), format)
        }
        "bott-multiplier" => {
            let m = need(&a.m, "m")?;
            let k = unsigned(first_k(a)?)?;
            timed(|| verify_bott_multiplier(m, k).map_err(err), format)
        }
        other => Err(format!("unknown check {other:?}; `verify list` prints the ids")),
    }
}
