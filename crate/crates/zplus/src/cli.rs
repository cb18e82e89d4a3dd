//! The `zplus` command line. [`run_command`] is the whole program minus
//! process I/O, so tests drive it directly.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use zplus_core::gallery::{gallery, load_gallery};
use zplus_core::ideals::{enumerate_serre_ideals, is_serre_ideal, quotient_ring, serre_closure, QuotientError, Side};
use zplus_core::monomial::{build_monoid_ideal, MonoidPrimality, MonomialError, MonomialRing};
use zplus_core::oracle;
use zplus_core::spectrum::{
    chain_product_support, is_completely_prime, is_semiprime, is_serre_prime, minimal_primes_over, serre_spec,
    spectrum_of, witness_ideals, PrimeMode, PrimeWitness, SemiprimeWitness, SerreLattice, SpectrumError,
};
use zplus_core::topology::{build_topology, TopologyStyle};
use zplus_core::twocat::{check_unit_decomposition, classify_completely_primes, completely_primes_brute_force, TwoCatError};
use zplus_core::zring::BasisTooLarge;
use zplus_core::{BasisSet, EnumerationGuard, Verdict, ZPlusRing};

use crate::dot::specialization_dot;
use crate::io::{load_ring, parse_ring_file, serialize_ring, LoadError, RingFileError};
use crate::report::*;
use crate::sampling;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    /// The report document (JSON), newline-terminated.
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser)]
#[command(name = "zplus", version, about = "Serre ideals, spectra and topologies of Z+-rings")]
struct Cli {
    /// Lift the 24-element basis guard on exhaustive scans.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    #[value(name = "l", alias = "left")]
    Left,
    #[value(name = "r", alias = "right")]
    Right,
    #[value(name = "2", alias = "two-sided")]
    Two,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
            SideArg::Two => Side::TwoSided,
        }
    }
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Left => "left",
        Side::Right => "right",
        Side::TwoSided => "two-sided",
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    Prime,
    Cprime,
    Semiprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Fast,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Zariski,
    Balmer,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a ring.
    Validate { ring: String },
    /// List the Serre ideal lattice.
    Ideals {
        ring: String,
        #[arg(long, value_enum, default_value = "2")]
        side: SideArg,
    },
    /// Serre spectrum with flags and inclusions.
    Spec { ring: String },
    /// Test one ideal for a primality property.
    Check {
        ring: String,
        /// Comma-separated labels; "" is the zero ideal.
        #[arg(long)]
        ideal: String,
        #[arg(long, value_enum)]
        prop: Prop,
        #[arg(long, value_enum, default_value = "fast")]
        mode: ModeArg,
    },
    /// Least Serre ideal containing the generators.
    Closure {
        ring: String,
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value = "2")]
        side: SideArg,
    },
    /// Minimal primes over an ideal with a product chain.
    MinimalPrimes {
        ring: String,
        #[arg(long)]
        ideal: String,
    },
    /// Quotient ring; written as a ring file to OUT or embedded in the report.
    Quotient {
        ring: String,
        #[arg(long)]
        ideal: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Closed sets and specialization order of a spectral topology.
    Topology {
        ring: String,
        #[arg(long, value_enum)]
        style: StyleArg,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Block-ring structure: unit decomposition and completely primes.
    Twocat {
        ring: String,
        #[arg(long)]
        classify_cprimes: bool,
    },
    /// q-twisted monomial model on N^n.
    #[command(group(ArgGroup::new("task").required(true).args(["prime", "truncate", "face"])))]
    Monomial {
        #[arg(long)]
        vars: usize,
        /// Rows separated by ';', entries by ','. Defaults to quantum affine space.
        #[arg(long)]
        twist: Option<String>,
        /// Generators separated by ';', entries by ','.
        #[arg(long)]
        prime: Option<String>,
        #[arg(long)]
        truncate: Option<u32>,
        /// 1-based variable indices.
        #[arg(long)]
        face: Option<String>,
    },
    /// List gallery rings, or show one as a ring file.
    Gallery { name: Option<String> },
    /// Run every cross-check on a ring.
    Oracle {
        ring: String,
        #[arg(long, default_value_t = sampling::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Ideals { .. } => "ideals",
            Command::Spec { .. } => "spec",
            Command::Check { .. } => "check",
            Command::Closure { .. } => "closure",
            Command::MinimalPrimes { .. } => "minimal-primes",
            Command::Quotient { .. } => "quotient",
            Command::Topology { .. } => "topology",
            Command::Twocat { .. } => "twocat",
            Command::Monomial { .. } => "monomial",
            Command::Gallery { .. } => "gallery",
            Command::Oracle { .. } => "oracle",
        }
    }
}

enum Failure {
    Input { message: String, position: Option<(usize, usize)> },
    Guard(String),
}

fn input(message: impl Into<String>) -> Failure {
    Failure::Input { message: message.into(), position: None }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        let position = match &e {
            LoadError::Parse { source: RingFileError::Syntax { line, column, .. }, .. } => Some((*line, *column)),
            _ => None,
        };
        Failure::Input { message: e.to_string(), position }
    }
}

impl From<BasisTooLarge> for Failure {
    fn from(e: BasisTooLarge) -> Self {
        Failure::Guard(format!("{e}; pass --allow-large to override"))
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::BasisTooLarge(b) => b.into(),
            other => input(other.to_string()),
        }
    }
}

impl From<TwoCatError> for Failure {
    fn from(e: TwoCatError) -> Self {
        match e {
            TwoCatError::BasisTooLarge(b) => b.into(),
            other => input(other.to_string()),
        }
    }
}

impl From<MonomialError> for Failure {
    fn from(e: MonomialError) -> Self {
        input(e.to_string())
    }
}

impl From<QuotientError> for Failure {
    fn from(e: QuotientError) -> Self {
        input(e.to_string())
    }
}

type Outcome = Result<(i32, String), Failure>;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit<T: Serialize>(code: i32, value: &T) -> Outcome {
    Ok((code, json(value)))
}

fn truth(holds: bool) -> i32 {
    if holds {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

/// Parses `a,b,c` against the basis ("" is empty).
fn parse_subset(ring: &ZPlusRing, text: &str) -> Result<BasisSet, Failure> {
    let labels = text.split(',').map(str::trim).filter(|s| !s.is_empty());
    ring.subset_from_labels(labels).map_err(|l| input(format!("unknown basis label '{l}'")))
}

fn parse_int_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|s| s.trim().parse::<T>().map_err(|_| input(format!("bad {what} entry '{}'", s.trim()))))
        .collect()
}

fn parse_rows<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<Vec<T>>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';').map(|row| parse_int_list(row, what)).collect()
}

fn two_sided_ideal(ring: &ZPlusRing, text: &str) -> Result<BasisSet, Failure> {
    let set = parse_subset(ring, text)?;
    if let Verdict::Fails(v) = is_serre_ideal(ring, &set, Side::TwoSided) {
        return Err(input(format!(
            "{{{}}} is not a two-sided Serre ideal: {} escapes via {}",
            ring.subset_labels(&set).join(","),
            ring.label(v.escaped),
            ring.label(v.multiplier)
        )));
    }
    Ok(set)
}

pub fn run_command<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { code: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                // --help and --version
                CommandResult { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let guard = if cli.allow_large { EnumerationGuard::unlimited() } else { EnumerationGuard::default() };
    let name = cli.command.name();
    match dispatch(cli.command, guard) {
        Ok((code, stdout)) => CommandResult { code, stdout, stderr: String::new() },
        Err(failure) => {
            let (code, kind, message, position) = match failure {
                Failure::Input { message, position } => (EXIT_INPUT, "input", message, position),
                Failure::Guard(message) => (EXIT_GUARD, "guard", message, None),
            };
            let report = ErrorReport {
                command: name.to_string(),
                error: ErrorDoc {
                    kind,
                    message: message.clone(),
                    line: position.map(|p| p.0),
                    column: position.map(|p| p.1),
                },
            };
            CommandResult { code, stdout: json(&report), stderr: format!("zplus {name}: {message}\n") }
        }
    }
}

fn dispatch(command: Command, guard: EnumerationGuard) -> Outcome {
    match command {
        Command::Validate { ring } => validate(&ring),
        Command::Ideals { ring, side } => {
            let ring = load_ring(&ring)?;
            let side = side.side();
            let ideals: Vec<BasisSet> =
                enumerate_serre_ideals(&ring, side, guard)?.into_iter().map(|i| i.members).collect();
            emit(
                EXIT_OK,
                &IdealsReport {
                    command: "ideals",
                    ring: ring.name().to_string(),
                    side: side_name(side),
                    count: ideals.len(),
                    ideals: label_sets(&ring, &ideals),
                },
            )
        }
        Command::Spec { ring } => {
            let ring = load_ring(&ring)?;
            let spec = serre_spec(&ring, guard)?;
            emit(
                EXIT_OK,
                &SpecReport {
                    command: "spec",
                    ring: ring.name().to_string(),
                    count: spec.len(),
                    primes: spec
                        .primes
                        .iter()
                        .map(|p| PrimeDoc {
                            ideal: labels(&ring, &p.ideal),
                            cprime: p.completely_prime,
                            semiprime: p.semiprime,
                        })
                        .collect(),
                    inclusions: spec.inclusions.iter().map(|(i, j)| [*i, *j]).collect(),
                },
            )
        }
        Command::Check { ring, ideal, prop, mode } => check(&ring, &ideal, prop, mode, guard),
        Command::Closure { ring, gens, side } => {
            let ring = load_ring(&ring)?;
            let gens = parse_subset(&ring, &gens)?;
            let side = side.side();
            let closure = serre_closure(&ring, &gens, side).members;
            emit(
                EXIT_OK,
                &ClosureReport {
                    command: "closure",
                    ring: ring.name().to_string(),
                    side: side_name(side),
                    gens: labels(&ring, &gens),
                    closure: labels(&ring, &closure),
                },
            )
        }
        Command::MinimalPrimes { ring, ideal } => {
            let ring = load_ring(&ring)?;
            let ideal = two_sided_ideal(&ring, &ideal)?;
            let mut report = MinimalPrimesReport {
                command: "minimal-primes",
                ring: ring.name().to_string(),
                ideal: labels(&ring, &ideal),
                found: false,
                minimal: Vec::new(),
                chain: Vec::new(),
                chain_product_support: None,
            };
            match minimal_primes_over(&ring, &ideal, guard) {
                Ok(found) => {
                    report.found = true;
                    report.minimal = label_sets(&ring, &found.minimal);
                    report.chain = label_sets(&ring, &found.chain);
                    report.chain_product_support =
                        chain_product_support(&ring, &found.chain).map(|s| labels(&ring, &s));
                    emit(EXIT_OK, &report)
                }
                // a legal outcome for non-unital rings
                Err(SpectrumError::NoPrimeOver) => emit(EXIT_FALSE, &report),
                Err(e) => Err(e.into()),
            }
        }
        Command::Quotient { ring, ideal, output } => {
            let ring = load_ring(&ring)?;
            let ideal = two_sided_ideal(&ring, &ideal)?;
            let q = quotient_ring(&ring, &ideal)?;
            let text = serialize_ring(&q);
            let mut report = QuotientReport {
                command: "quotient",
                ring: ring.name().to_string(),
                ideal: labels(&ring, &ideal),
                quotient: q.name().to_string(),
                basis: q.labels().to_vec(),
                output: None,
                ring_file: None,
            };
            match output {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
                    report.output = Some(path.display().to_string());
                }
                None => report.ring_file = Some(text),
            }
            emit(EXIT_OK, &report)
        }
        Command::Topology { ring, style, dot } => {
            let ring = load_ring(&ring)?;
            let style = match style {
                StyleArg::Zariski => TopologyStyle::Zariski,
                StyleArg::Balmer => TopologyStyle::Balmer,
            };
            let lattice = SerreLattice::new(&ring, guard)?;
            let family = build_topology(&lattice, &spectrum_of(&lattice), style);
            let mut report = TopologyReport::new(&ring, &family);
            if let Some(path) = dot {
                std::fs::write(&path, specialization_dot(&ring, &family))
                    .map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
                report.dot = Some(path.display().to_string());
            }
            emit(EXIT_OK, &report)
        }
        Command::Twocat { ring, classify_cprimes } => twocat(&ring, classify_cprimes, guard),
        Command::Monomial { vars, twist, prime, truncate, face } => monomial(vars, twist, prime, truncate, face),
        Command::Gallery { name } => match name {
            None => emit(
                EXIT_OK,
                &GalleryListReport { command: "gallery", rings: gallery().iter().map(GalleryItem::from).collect() },
            ),
            Some(name) => {
                let entry = load_gallery(&name).map_err(|e| input(e.to_string()))?;
                emit(
                    EXIT_OK,
                    &GalleryRingReport {
                        command: "gallery",
                        item: GalleryItem::from(&entry),
                        ring_file: serialize_ring(&entry.ring),
                    },
                )
            }
        },
        Command::Oracle { ring, seed, samples } => {
            let ring = load_ring(&ring)?;
            let mut outcomes = oracle::run_all(&ring, guard)?;
            outcomes.push(sampling::check_random_associativity(&ring, seed, samples));
            outcomes.push(sampling::check_support_homomorphism(&ring, seed, samples));
            let all_passed = outcomes.iter().all(|o| o.passed());
            emit(
                truth(all_passed),
                &OracleReport {
                    command: "oracle",
                    ring: ring.name().to_string(),
                    seed,
                    all_passed,
                    checks: outcomes
                        .into_iter()
                        .map(|o| CheckDoc {
                            name: o.name.to_string(),
                            cases: o.cases,
                            passed: o.failure.is_none(),
                            failure: o.failure,
                        })
                        .collect(),
                },
            )
        }
    }
}

fn validate(source: &str) -> Outcome {
    let parsed = match source.strip_prefix("gallery:") {
        Some(_) => Ok(load_ring(source)?),
        None => {
            let text = std::fs::read_to_string(source).map_err(|e| input(format!("cannot read {source}: {e}")))?;
            parse_ring_file(&text)
        }
    };
    match parsed {
        Ok(ring) => emit(
            EXIT_OK,
            &ValidateReport {
                command: "validate",
                ring: ring.name().to_string(),
                valid: true,
                mode: Some(ring.mode().to_string()),
                basis: Some(ring.labels().to_vec()),
                units: ring.units().map(|u| labels(&ring, u)),
                objects: ring.blocks().map(|b| b.objects().to_vec()),
                errors: Vec::new(),
            },
        ),
        Err(RingFileError::Validation(errors)) => emit(
            EXIT_FALSE,
            &ValidateReport {
                command: "validate",
                ring: source.to_string(),
                valid: false,
                mode: None,
                basis: None,
                units: None,
                objects: None,
                errors: errors.into_iter().map(|e| LocatedDoc { lines: e.lines, message: e.message }).collect(),
            },
        ),
        Err(syntax @ RingFileError::Syntax { .. }) => {
            Err(LoadError::Parse { path: source.to_string(), source: syntax }.into())
        }
    }
}

fn check(source: &str, ideal: &str, prop: Prop, mode: ModeArg, guard: EnumerationGuard) -> Outcome {
    let ring = load_ring(source)?;
    let p = two_sided_ideal(&ring, ideal)?;
    let prime_mode = match mode {
        ModeArg::Fast => PrimeMode::Fast,
        ModeArg::Oracle => PrimeMode::Definitional,
    };
    let l = |i: usize| ring.label(i).to_string();
    let (prop_name, verdict): (&'static str, Verdict<WitnessDoc>) = match prop {
        Prop::Prime => (
            "prime",
            is_serre_prime(&ring, &p, prime_mode, guard)?.map(|w| match w {
                PrimeWitness::BasisPair(a, b) => {
                    let (i, j) = witness_ideals(&ring, &p, a, b);
                    WitnessDoc {
                        basis_pair: Some([l(a), l(b)]),
                        ideal_pair: Some([labels(&ring, &i), labels(&ring, &j)]),
                        ..WitnessDoc::default()
                    }
                }
                PrimeWitness::IdealPair(i, j) => {
                    WitnessDoc { ideal_pair: Some([labels(&ring, &i), labels(&ring, &j)]), ..WitnessDoc::default() }
                }
            }),
        ),
        Prop::Cprime => (
            "cprime",
            is_completely_prime(&ring, &p)?
                .map(|(a, b)| WitnessDoc { basis_pair: Some([l(a), l(b)]), ..WitnessDoc::default() }),
        ),
        Prop::Semiprime => (
            "semiprime",
            is_semiprime(&ring, &p, prime_mode, guard)?.map(|w| match w {
                SemiprimeWitness::Basis(a) => WitnessDoc { basis: Some(l(a)), ..WitnessDoc::default() },
                SemiprimeWitness::Intersection { intersection, primes_over } => WitnessDoc {
                    intersection: Some(labels(&ring, &intersection)),
                    primes_over: Some(primes_over),
                    ..WitnessDoc::default()
                },
            }),
        ),
    };
    let holds = verdict.holds();
    let witness = match verdict {
        Verdict::Holds => None,
        Verdict::Fails(w) => Some(w),
    };
    emit(
        truth(holds),
        &CheckReport {
            command: "check",
            ring: ring.name().to_string(),
            ideal: labels(&ring, &p),
            prop: prop_name,
            mode: match mode {
                ModeArg::Fast => "fast",
                ModeArg::Oracle => "oracle",
            },
            holds,
            witness,
        },
    )
}

fn twocat(source: &str, classify: bool, guard: EnumerationGuard) -> Outcome {
    let ring = load_ring(source)?;
    let blocks = ring.blocks().ok_or(TwoCatError::MissingBlocks)?;
    let units = ring.units().ok_or(TwoCatError::MissingUnits)?;
    let decomposition = check_unit_decomposition(&ring, units);
    let mut report = TwocatReport {
        command: "twocat",
        ring: ring.name().to_string(),
        objects: blocks.objects().to_vec(),
        units: labels(&ring, units),
        unit_decomposition: decomposition.holds(),
        unit_witness: decomposition.witness().map(|w| ring.label(*w).to_string()),
        completely_primes: None,
        brute_force_agrees: None,
    };
    if classify {
        let classified = classify_completely_primes(&ring, guard)?;
        report.brute_force_agrees = Some(completely_primes_brute_force(&ring, guard)? == classified);
        report.completely_primes = Some(label_sets(&ring, &classified));
    }
    emit(truth(report.unit_decomposition), &report)
}

const MODEL: &str = "q-twisted monomial model on N^n (face ideals stand in for the quotient ideals)";

fn monomial(
    vars: usize,
    twist: Option<String>,
    prime: Option<String>,
    truncate: Option<u32>,
    face: Option<String>,
) -> Outcome {
    let m = match twist {
        None => MonomialRing::quantum_affine(vars),
        Some(text) => {
            let rows: Vec<Vec<i64>> = parse_rows(&text, "twist")?;
            if rows.len() != vars {
                return Err(input(format!("twist has {} rows, expected {vars}", rows.len())));
            }
            MonomialRing::new(format!("monomial{vars}"), rows)?
        }
    };
    let mut report = MonomialReport {
        command: "monomial",
        model: MODEL,
        vars,
        variables: m.variable_names().to_vec(),
        twist: m.twist().to_vec(),
        prime: None,
        truncation: None,
        face_quotient: None,
    };
    let mut code = EXIT_OK;
    if let Some(text) = prime {
        let gens: Vec<Vec<u32>> = parse_rows(&text, "generator")?;
        let ideal = build_monoid_ideal(vars, &gens)?;
        let doc = match ideal.is_prime()? {
            MonoidPrimality::Prime { face } => MonoidPrimeDoc {
                generators: ideal.generators().to_vec(),
                prime: true,
                face: Some(face.iter().map(|i| i + 1).collect()),
                witness: None,
            },
            MonoidPrimality::NotPrime { left, right } => {
                code = EXIT_FALSE;
                MonoidPrimeDoc {
                    generators: ideal.generators().to_vec(),
                    prime: false,
                    face: None,
                    witness: Some([left, right]),
                }
            }
        };
        report.prime = Some(doc);
    }
    if let Some(d) = truncate {
        let ring = m.truncate_to_ring(d);
        report.truncation =
            Some(TruncationDoc { degree: d, basis: ring.labels().to_vec(), ring_file: serialize_ring(&ring) });
    }
    if let Some(text) = face {
        let one_based: Vec<usize> = if text.trim().is_empty() { Vec::new() } else { parse_int_list(&text, "face")? };
        if one_based.iter().any(|&i| i == 0 || i > vars) {
            return Err(input(format!("face indices run from 1 to {vars}")));
        }
        let zero_based: Vec<usize> = one_based.iter().map(|i| i - 1).collect();
        let q = m.face_quotient(&zero_based)?;
        let mut sorted = one_based;
        sorted.sort_unstable();
        sorted.dedup();
        report.face_quotient =
            Some(FaceQuotientDoc { face: sorted, variables: q.variable_names().to_vec(), twist: q.twist().to_vec() });
    }
    emit(code, &report)
}
