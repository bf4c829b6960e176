mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use kclean::cleanness::{filtration_from_tree, verify_filtration, CleanSearch, Cleanness, FiltrationMode};
use kclean::multicomplex::{verify_shedding_tree, DecompositionSearch};
use kclean::oracles::{oracle_ass, oracle_decomposable, oracle_pretty_k_clean, TruncationBox};
use kclean::polarization::{polarize_ideal, polarize_multicomplex};
use kclean::sample::random_ideal;
use kclean::simplicial::{is_k_decomposable_sc, verify_complex_tree};
use kclean::{ExpVec, MonomialIdeal, MonomialPrime, Multicomplex, SearchBound, SimplicialComplex};
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use input::Input;

#[derive(Parser)]
#[command(name = "kclean", version, about = "Cleanness and decomposability of monomial ideals and multicomplexes")]
struct Cli {
    /// Candidate exponent caps: one number for every coordinate, or a comma-separated list.
    #[arg(long, global = true)]
    bound: Option<String>,
    /// Worker threads for batch work.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Associated primes of an ideal.
    Ass { file: PathBuf },
    /// Minimal primes of an ideal.
    Min { file: PathBuf },
    /// Irreducible components of an ideal.
    Irreducible { file: PathBuf },
    Radical { file: PathBuf },
    /// `I : x^u`.
    Colon {
        file: PathBuf,
        #[arg(long)]
        by: String,
    },
    /// Facets of a multicomplex, or of the multicomplex of an ideal.
    Facets { file: PathBuf },
    Link {
        file: PathBuf,
        #[arg(long)]
        face: String,
    },
    Del {
        file: PathBuf,
        #[arg(long)]
        face: String,
    },
    Star {
        file: PathBuf,
        #[arg(long)]
        face: String,
    },
    /// Polarization of an ideal or multicomplex.
    Polarize {
        file: PathBuf,
        /// Write the block sizes as {"blocks": [...]} to this path.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Decide a property and print its certificate.
    Check {
        property: Property,
        file: PathBuf,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        k: i64,
    },
    /// Prime filtration of an ideal built from a cleanness certificate.
    Filtration {
        file: PathBuf,
        /// Defaults to n - 1.
        #[arg(long)]
        k: Option<i64>,
        #[arg(long, value_enum, default_value_t = Mode::PrettyClean)]
        mode: Mode,
    },
    /// Find or verify a shelling order.
    Shelling {
        file: PathBuf,
        #[arg(long, conflicts_with = "verify")]
        find: bool,
        /// JSON array of facets in shelling order.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Brute-force cross-checks.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Subcommand)]
enum OracleAction {
    /// Compare the fast deciders with the oracles on random ideals.
    CrossCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        maxexp: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    KClean,
    PrettyKClean,
    KDecomposable,
    Shellable,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Clean,
    PrettyClean,
}

#[derive(Serialize)]
struct QueryResult {
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Value>,
    bound_used: Value,
    timing: Timing,
}

#[derive(Serialize)]
struct Timing {
    seconds: f64,
}

struct Outcome {
    result: Value,
    certificate: Option<Value>,
    bound_used: Value,
}

impl Outcome {
    fn value(result: Value) -> Self {
        Outcome { result, certificate: None, bound_used: Value::Null }
    }
}

fn ideal_of(input: &Input) -> Result<MonomialIdeal> {
    match input {
        Input::Ideal(i) => Ok(i.clone()),
        Input::Multicomplex(g) => Ok(g.to_ideal()),
        Input::Complex(d) => Ok(d.stanley_reisner()?),
    }
}

fn only_ideal(input: Input) -> Result<MonomialIdeal> {
    match input {
        Input::Ideal(i) => Ok(i),
        other => bail!("expected an ideal file, got a {}", other.kind()),
    }
}

fn multicomplex_of(input: Input) -> Result<Multicomplex> {
    match input {
        Input::Ideal(i) => Ok(Multicomplex::from_ideal(&i)),
        Input::Multicomplex(g) => Ok(g),
        Input::Complex(d) => Ok(d.to_multicomplex()?),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn one_based(faces: &[Vec<usize>]) -> Value {
    json!(faces.iter().map(|f| f.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

/// Primes as 1-based variable lists.
fn primes_json(primes: &[MonomialPrime]) -> Value {
    json!(primes.iter().map(|p| p.vars.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn search_bound(cli_bound: &Option<String>, n: usize) -> Result<SearchBound> {
    let bound = cli_bound.as_deref().map(input::bound).transpose()?.unwrap_or_default();
    input::check_bound_dim(&bound, n)?;
    Ok(bound)
}

fn neighbourhood(file: &PathBuf, face: &str, which: &str) -> Result<Outcome> {
    match input::read(file)? {
        Input::Complex(d) => {
            let f = input::vertex_list(face)?;
            let out = match which {
                "link" => d.link(&f)?,
                "del" => d.deletion(&f)?,
                _ => closed_star(&d, &f)?,
            };
            Ok(Outcome::value(to_json(&out)?))
        }
        other => {
            let g = multicomplex_of(other)?;
            let a = input::exp_vec(face)?;
            let out = match which {
                "link" => g.link(&a)?,
                "del" => g.deletion(&a)?,
                _ => g.star(&a)?,
            };
            Ok(Outcome::value(to_json(&out)?))
        }
    }
}

/// Facets containing `face`.
fn closed_star(d: &SimplicialComplex, face: &[usize]) -> Result<SimplicialComplex> {
    let facets: Vec<Vec<usize>> = d.facets().into_iter().filter(|f| face.iter().all(|v| f.contains(v))).collect();
    Ok(SimplicialComplex::new(d.vertices(), &facets)?)
}

fn check(cli: &Cli, property: Property, file: &PathBuf, k: i64) -> Result<Outcome> {
    let input = input::read(file)?;
    if let (Input::Complex(d), Property::KDecomposable) = (&input, property) {
        input::check_k(k, -1)?;
        let tree = is_k_decomposable_sc(d, k)?;
        if let Some(t) = &tree {
            verify_complex_tree(t, k).map_err(anyhow::Error::msg).context("certificate failed to verify")?;
        }
        return Ok(Outcome {
            result: json!(tree.is_some()),
            certificate: tree.map(|t| to_json(&*t)).transpose()?,
            bound_used: json!("exact"),
        });
    }
    if let (Input::Complex(d), Property::Shellable) = (&input, property) {
        let order = d.find_shelling();
        return Ok(Outcome {
            result: json!(order.is_some()),
            certificate: order.map(|o| one_based(&o)),
            bound_used: json!("exact"),
        });
    }
    match property {
        Property::KClean | Property::PrettyKClean => {
            let k = input::check_k(k, 0)?;
            let ideal = ideal_of(&input)?;
            let kind = match property {
                Property::KClean => Cleanness::KClean,
                _ => Cleanness::PrettyKClean,
            };
            let mut search = CleanSearch::new(search_bound(&cli.bound, ideal.n())?);
            let caps = search.caps(&ideal);
            let tree = search.decide(&ideal, k, kind);
            if let Some(t) = &tree {
                kclean::cleanness::verify_ideal_tree(t, k, kind)
                    .map_err(anyhow::Error::msg)
                    .context("certificate failed to verify")?;
            }
            Ok(Outcome {
                result: json!(tree.is_some()),
                certificate: tree.map(|t| to_json(&*t)).transpose()?,
                bound_used: json!(caps),
            })
        }
        Property::KDecomposable => {
            let k = input::check_k(k, 0)?;
            let g = multicomplex_of(input)?;
            let mut search = DecompositionSearch::new(search_bound(&cli.bound, g.n())?);
            let caps = search.caps(&g);
            let tree = search.decompose(&g, k);
            if let Some(t) = &tree {
                verify_shedding_tree(t, k).map_err(anyhow::Error::msg).context("certificate failed to verify")?;
            }
            Ok(Outcome {
                result: json!(tree.is_some()),
                certificate: tree.map(|t| to_json(&*t)).transpose()?,
                bound_used: json!(caps),
            })
        }
        Property::Shellable => {
            let g = multicomplex_of(input)?;
            let order = g.find_shelling();
            Ok(Outcome {
                result: json!(order.is_some()),
                certificate: order.map(|o| to_json(&o)).transpose()?,
                bound_used: json!("exact"),
            })
        }
    }
}

fn filtration(cli: &Cli, file: &PathBuf, k: Option<i64>, mode: Mode) -> Result<Outcome> {
    let ideal = ideal_of(&input::read(file)?)?;
    let k = input::check_k(k.unwrap_or(ideal.n() as i64 - 1), 0)?;
    let (kind, mode) = match mode {
        Mode::Clean => (Cleanness::KClean, FiltrationMode::Clean),
        Mode::PrettyClean => (Cleanness::PrettyKClean, FiltrationMode::PrettyClean),
    };
    let mut search = CleanSearch::new(search_bound(&cli.bound, ideal.n())?);
    let caps = search.caps(&ideal);
    let Some(tree) = search.decide(&ideal, k, kind) else {
        return Ok(Outcome { result: json!(false), certificate: None, bound_used: json!(caps) });
    };
    let f = filtration_from_tree(&tree)?;
    verify_filtration(&ideal, &f, mode).map_err(anyhow::Error::msg).context("filtration failed to verify")?;
    let lines: Vec<String> = f.to_string().lines().map(str::to_owned).collect();
    Ok(Outcome {
        result: json!(true),
        certificate: Some(json!({ "lines": lines, "support": primes_json(&f.support()), "steps": f.steps })),
        bound_used: json!(caps),
    })
}

fn shelling(file: &PathBuf, find: bool, verify: &Option<PathBuf>) -> Result<Outcome> {
    let input = input::read(file)?;
    let order_text = match (find, verify) {
        (_, Some(path)) => Some(std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?),
        (true, None) => None,
        (false, None) => bail!("pass --find or --verify ORDER_FILE"),
    };
    match input {
        Input::Complex(d) => match order_text {
            None => {
                let order = d.find_shelling();
                Ok(Outcome { result: json!(order.is_some()), certificate: order.map(|o| one_based(&o)), bound_used: json!("exact") })
            }
            Some(text) => {
                let raw: Vec<Vec<usize>> = serde_json::from_str(&text).context("order must be a list of vertex lists")?;
                let order = raw
                    .into_iter()
                    .map(|f| f.into_iter().map(|v| v.checked_sub(1).context("vertices are numbered from 1")).collect())
                    .collect::<Result<Vec<Vec<usize>>>>()?;
                Ok(Outcome { result: json!(d.is_shelling(&order)?), certificate: None, bound_used: json!("exact") })
            }
        },
        other => {
            let g = multicomplex_of(other)?;
            match order_text {
                None => {
                    let order = g.find_shelling();
                    Ok(Outcome {
                        result: json!(order.is_some()),
                        certificate: order.map(|o| to_json(&o)).transpose()?,
                        bound_used: json!("exact"),
                    })
                }
                Some(text) => {
                    let order: Vec<ExpVec> = serde_json::from_str(&text).context("order must be a list of facets")?;
                    let steps = g.shelling_steps(&order)?;
                    Ok(Outcome {
                        result: json!(steps.is_some()),
                        certificate: steps.map(|s| to_json(&s)).transpose()?,
                        bound_used: json!("exact"),
                    })
                }
            }
        }
    }
}

#[derive(Default, Serialize)]
struct Tally {
    checks: usize,
    disagreements: Vec<String>,
}

impl Tally {
    fn record(&mut self, agree: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !agree {
            self.disagreements.push(describe());
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.disagreements.extend(other.disagreements);
        self
    }
}

#[derive(Default, Serialize)]
struct CrossCheck {
    ass: Tally,
    pretty_k_clean: Tally,
    k_decomposable: Tally,
}

fn cross_check_trial(seed: u64, n: usize, maxexp: u32) -> Result<CrossCheck> {
    let mut rng = StdRng::seed_from_u64(seed);
    let ideal = random_ideal(&mut rng, n, maxexp, 4);
    let g = Multicomplex::from_ideal(&ideal);
    let mut out = CrossCheck::default();
    let fast = ideal.ass()?;
    let slow = oracle_ass(&ideal, &TruncationBox::for_ideal(&ideal));
    out.ass.record(fast == slow, || format!("seed {seed}: {ideal}"));
    let mut cs = CleanSearch::default();
    let mut ds = DecompositionSearch::default();
    let ideal_cap = ideal.max_exponents().into_iter().max().unwrap_or(0) + 1;
    let complex_cap = g.default_caps().into_iter().max().unwrap_or(0) + 1;
    for k in 0..n {
        let fast = cs.decide(&ideal, k, Cleanness::PrettyKClean).is_some();
        let slow = oracle_pretty_k_clean(&ideal, k, ideal_cap)?;
        out.pretty_k_clean.record(fast == slow, || format!("seed {seed}: {ideal} k={k} fast={fast} oracle={slow}"));
        let fast = ds.decompose(&g, k).is_some();
        let slow = oracle_decomposable(&g, k, complex_cap)?;
        out.k_decomposable.record(fast == slow, || format!("seed {seed}: {g} k={k} fast={fast} oracle={slow}"));
    }
    Ok(out)
}

fn cross_check(jobs: usize, seed: u64, trials: usize, n: usize, maxexp: u32) -> Result<Outcome> {
    if n == 0 || n > kclean::oracles::MAX_DIM {
        bail!("--n must be between 1 and {}", kclean::oracles::MAX_DIM);
    }
    if maxexp == 0 || maxexp > kclean::oracles::MAX_ENTRY {
        bail!("--maxexp must be between 1 and {}", kclean::oracles::MAX_ENTRY);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build()?;
    let results: Vec<CrossCheck> = pool.install(|| {
        (0..trials as u64)
            .into_par_iter()
            .map(|t| cross_check_trial(seed.wrapping_add(t), n, maxexp))
            .collect::<Result<Vec<_>>>()
    })?;
    let total = results.into_iter().fold(CrossCheck::default(), |acc, r| CrossCheck {
        ass: acc.ass.merge(r.ass),
        pretty_k_clean: acc.pretty_k_clean.merge(r.pretty_k_clean),
        k_decomposable: acc.k_decomposable.merge(r.k_decomposable),
    });
    let agree = [&total.ass, &total.pretty_k_clean, &total.k_decomposable].iter().all(|t| t.disagreements.is_empty());
    Ok(Outcome { result: json!(agree), certificate: Some(to_json(&total)?), bound_used: json!("default caps + 1") })
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Ass { file } => Ok(Outcome::value(primes_json(&only_ideal(input::read(file)?)?.ass()?))),
        Command::Min { file } => Ok(Outcome::value(primes_json(&only_ideal(input::read(file)?)?.min_primes()?))),
        Command::Irreducible { file } => {
            Ok(Outcome::value(to_json(&only_ideal(input::read(file)?)?.irreducible_decomposition()?)?))
        }
        Command::Radical { file } => Ok(Outcome::value(to_json(&only_ideal(input::read(file)?)?.radical())?)),
        Command::Colon { file, by } => {
            let ideal = only_ideal(input::read(file)?)?;
            Ok(Outcome::value(to_json(&ideal.colon(&input::exp_vec(by)?)?)?))
        }
        Command::Facets { file } => match input::read(file)? {
            Input::Complex(d) => Ok(Outcome::value(one_based(&d.facets()))),
            other => Ok(Outcome::value(to_json(&multicomplex_of(other)?.facets())?)),
        },
        Command::Link { file, face } => neighbourhood(file, face, "link"),
        Command::Del { file, face } => neighbourhood(file, face, "del"),
        Command::Star { file, face } => neighbourhood(file, face, "star"),
        Command::Polarize { file, map } => {
            let (result, blocks) = match input::read(file)? {
                Input::Ideal(i) => {
                    let (p, m) = polarize_ideal(&i)?;
                    (to_json(&p)?, m)
                }
                Input::Multicomplex(g) => {
                    let (p, m) = polarize_multicomplex(&g)?;
                    (to_json(&p)?, m)
                }
                Input::Complex(_) => bail!("complexes are already squarefree"),
            };
            if let Some(path) = map {
                std::fs::write(path, serde_json::to_string_pretty(&blocks)?)
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Ok(Outcome { result, certificate: Some(to_json(&blocks)?), bound_used: Value::Null })
        }
        Command::Check { property, file, k } => check(cli, *property, file, *k),
        Command::Filtration { file, k, mode } => filtration(cli, file, *k, *mode),
        Command::Shelling { file, find, verify } => shelling(file, *find, verify),
        Command::Oracle { action: OracleAction::CrossCheck { seed, trials, n, maxexp } } => {
            cross_check(cli.jobs, *seed, *trials, *n, *maxexp)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(out) => {
            let doc = QueryResult {
                result: out.result,
                certificate: out.certificate,
                bound_used: out.bound_used,
                timing: Timing { seconds: start.elapsed().as_secs_f64() },
            };
            let text = if cli.pretty { serde_json::to_string_pretty(&doc) } else { serde_json::to_string(&doc) };
            let mut out = std::io::stdout().lock();
            // a closed pipe is not an evaluation error
            let _ = writeln!(out, "{}", text.expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
