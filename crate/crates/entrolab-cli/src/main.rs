//! Command-line front end: exact entropy evaluation, order checks,
//! witness search, monoid queries, group domination, naturality
//! squares, conditional entropy, truncated-geometric reports, and the
//! seeded verification suites with a versioned JSON report.

use clap::{Parser, Subcommand};
use entrolab::categories::{
    brute_epi_exists, finab_decompose, m_compare, naturality_square, verify_epi_witness, AbGroup,
    EpiSearch, MCompare, NaturalityConstants, NaturalityObject,
};
use entrolab::conditional::{
    chain_rule_check, epsilon_family, submodularity_deficit, submodularity_hartley_table,
    submodularity_instance,
};
use entrolab::entropy::{entropy_pair, hartley, renyi, shannon};
use entrolab::exactlog::LogReal;
use entrolab::lprob::truncation_report;
use entrolab::majorization::{
    catalytic_witness_search, majorization_certificate, order01, tensor_power_dominates,
    verify_witness, WitnessBudget, WitnessSearch,
};
use entrolab::numfmt::parse_rational;
use entrolab::ordmon::{PresentedMonoid, Semidecision};
use entrolab::prob::{pushforward, Dist, MPMap};
use entrolab::suites::{run_criterion, suite_report, SuiteConfig, CRITERIA};
use serde_json::json;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "entrolab", version, about = "Exact entropy toolkit")]
struct Cli {
    /// Key=value configuration file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Decimal digits printed for approximations.
    #[arg(long, global = true, default_value_t = 6)]
    digits: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an entropy functional on a distribution file.
    Entropy {
        /// JSON distribution file.
        #[arg(long)]
        dist: PathBuf,
        /// shannon | hartley | pair | renyi:<alpha>
        #[arg(long)]
        functional: String,
    },
    /// Compare two distributions under an order relation.
    Order {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// majorize | order01 | tensorpow:<n>
        #[arg(long)]
        relation: String,
        /// Emit a JSON certificate instead of a bare verdict.
        #[arg(long)]
        json: bool,
    },
    /// Bounded search for a catalytic majorization witness.
    WitnessSearch {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        /// Budget string, e.g. depth=3,support=4,den=16
        #[arg(long)]
        budget: Option<String>,
    },
    /// Presented-monoid order queries.
    Monoid {
        #[command(subcommand)]
        cmd: MonoidCmd,
    },
    /// Finite abelian group comparisons.
    Ab {
        #[command(subcommand)]
        cmd: AbCmd,
    },
    /// Evaluate one naturality square.
    Naturality {
        /// supp | incl_lprob | vect_to_prob | ab_to_prob |
        /// simplex_to_prob | setop_to_prob
        #[arg(long)]
        functor: String,
        /// Object description (see README): a dist file, a dimension,
        /// comma-separated cyclic orders, a simplex index, or a set size.
        #[arg(long)]
        object: String,
    },
    /// Conditional-entropy operations.
    Cond {
        #[command(subcommand)]
        cmd: CondCmd,
    },
    /// Truncated-geometric reports.
    Lprob {
        #[command(subcommand)]
        cmd: LprobCmd,
    },
    /// Run verification suites and emit a JSON report.
    Verify {
        /// all | axioms | renyi-boundary | schur | order01 |
        /// tensor-power | range-law | finab | naturality | conditional |
        /// exactlog | reflections | witness | lprob-desk
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        /// Override sampled case counts.
        #[arg(long)]
        cases: Option<u64>,
        /// Run criteria on up to N threads (deterministic aggregation).
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Subcommand)]
enum MonoidCmd {
    /// Bounded proof search for `lhs >= rhs` in a presented monoid.
    Leq {
        /// Presentation file: one relation per line, `a+a+b >= b+c`.
        #[arg(long)]
        presentation: PathBuf,
        /// Query of the form "a+a >= b".
        #[arg(long)]
        query: String,
        #[arg(long, default_value_t = 6)]
        depth: u32,
    },
}

#[derive(Subcommand)]
enum AbCmd {
    /// Multiplicity-matrix domination between two groups given as
    /// comma-separated cyclic orders.
    Dominates {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Brute-force search for a surjective homomorphism.
    Epi {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: u64,
    },
}

#[derive(Subcommand)]
enum CondCmd {
    /// Conditional entropy of a tower file: H1(top) - H1(bottom).
    Entropy {
        /// JSON tower: {"dist": ..., "maps": [{label: label, ...}, ...]}
        #[arg(long)]
        base: PathBuf,
    },
    /// Chain-rule certificates along a tower file (needs >= 2 maps).
    Chain {
        #[arg(long)]
        base: PathBuf,
    },
    /// Submodularity deficit of the five-point family at epsilon.
    Submod {
        /// Rational in (0, 1/4), e.g. 1/8.
        #[arg(long)]
        eps: String,
    },
}

#[derive(Subcommand)]
enum LprobCmd {
    /// Entropy of the truncated geometric distribution.
    Truncation {
        /// Success probability, a rational in (0,1).
        #[arg(long)]
        p: String,
        #[arg(long)]
        n: u32,
        /// Emit the full JSON report.
        #[arg(long)]
        report: bool,
    },
}

/// Key=value configuration, applied under the flags.
#[derive(Debug, Default)]
struct FileConfig {
    entries: BTreeMap<String, String>,
}

impl FileConfig {
    fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut entries = BTreeMap::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line without '=': {line:?}"))?;
            entries.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(FileConfig { entries })
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.entries.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| format!("config key {key}: cannot parse {v:?}")),
        }
    }

    fn suite_config(&self) -> Result<SuiteConfig, String> {
        let mut cfg = SuiteConfig::default();
        if let Some(seed) = self.get("seed")? {
            cfg.seed = seed;
        }
        if let Some(cases) = self.get("cases")? {
            cfg.cases = Some(cases);
        }
        if let Some(d) = self.get("witness_depth")? {
            cfg.witness_budget.depth = d;
        }
        if let Some(s) = self.get("witness_support")? {
            cfg.witness_budget.support = s;
        }
        if let Some(d) = self.get("witness_den")? {
            cfg.witness_budget.den = d;
        }
        if let Some(c) = self.get("witness_max_candidates")? {
            cfg.witness_budget.max_replays = c;
        }
        if let Some(o) = self.get("witness_max_outcomes")? {
            cfg.witness_budget.max_outcomes = o;
        }
        if let Some(f) = self.get("naturality_field")? {
            cfg.naturality.field = f;
        }
        if let Some(g) = self.get("naturality_group")? {
            cfg.naturality.group = g;
        }
        if let Some(masses) = self.entries.get("naturality_dist") {
            cfg.naturality.dist = dist_from_masses(masses)?;
        }
        Ok(cfg)
    }
}

fn dist_from_masses(spec: &str) -> Result<Dist, String> {
    let mut pairs = Vec::new();
    for (i, part) in spec.split(',').enumerate() {
        let m = parse_rational(part.trim())?;
        pairs.push((format!("x{i}"), m));
    }
    Dist::new(pairs).map_err(|e| e.to_string())
}

fn load_dist(path: &Path) -> Result<Dist, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// A tower file: a base distribution plus a list of label assignments
/// applied in sequence; each stage is realized as an exact pushforward.
fn load_tower(path: &Path) -> Result<(Dist, Vec<MPMap>), String> {
    #[derive(serde::Deserialize)]
    struct Wire {
        dist: Dist,
        #[serde(default)]
        maps: Vec<BTreeMap<String, String>>,
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let wire: Wire = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut maps = Vec::new();
    let mut current = wire.dist.clone();
    for (i, assign) in wire.maps.iter().enumerate() {
        for label in current.outcomes() {
            if !assign.contains_key(label) {
                return Err(format!("map {i} is missing outcome {label:?}"));
            }
        }
        let a = assign.clone();
        let f = pushforward(&current, move |l| a[l].clone());
        current = f.target().clone();
        maps.push(f);
    }
    Ok((wire.dist, maps))
}

fn parse_orders(spec: &str) -> Result<Vec<u64>, String> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad cyclic order {s:?}: {e}"))
        })
        .collect()
}

fn parse_budget(spec: &str, base: WitnessBudget) -> Result<WitnessBudget, String> {
    let mut budget = base;
    for part in spec.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("budget entry without '=': {part:?}"))?;
        let v: u64 = v.trim().parse().map_err(|e| format!("budget {k}: {e}"))?;
        match k.trim() {
            "depth" => budget.depth = v as u32,
            "support" => budget.support = v as u32,
            "den" => budget.den = v as u32,
            "candidates" => budget.max_replays = v,
            "outcomes" => budget.max_outcomes = v as usize,
            other => return Err(format!("unknown budget key {other:?}")),
        }
    }
    Ok(budget)
}

fn print_logreal(value: &LogReal, digits: usize) {
    println!("{}", value.render());
    println!("≈ {}", value.to_decimal(digits));
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    let file_cfg = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    if let Some(bits) = file_cfg.get::<u32>("interval_cap_bits")? {
        entrolab::exactlog::set_sign_bits_cap(bits);
    }
    let digits = cli.digits;

    match cli.command {
        Command::Entropy { dist, functional } => {
            let d = load_dist(&dist)?;
            match functional.as_str() {
                "shannon" => print_logreal(&shannon(&d), digits),
                "hartley" => print_logreal(&hartley(&d), digits),
                "pair" => {
                    let pair = entropy_pair(&d);
                    println!("{}", pair.render());
                    println!(
                        "≈ ({}, {})",
                        pair.h0.to_decimal(digits),
                        pair.h1.to_decimal(digits)
                    );
                }
                other => match other.strip_prefix("renyi:") {
                    Some(alpha) => {
                        let alpha: u32 = alpha
                            .parse()
                            .map_err(|e| format!("bad Rényi order {alpha:?}: {e}"))?;
                        let v = renyi(&d, alpha).map_err(|e| e.to_string())?;
                        print_logreal(&v, digits);
                    }
                    None => return Err(format!("unknown functional {functional:?}")),
                },
            }
            Ok(true)
        }
        Command::Order {
            lhs,
            rhs,
            relation,
            json,
        } => {
            let a = load_dist(&lhs)?;
            let b = load_dist(&rhs)?;
            let (holds, cert) = match relation.as_str() {
                "majorize" => {
                    let cert = majorization_certificate(&a, &b);
                    let holds = cert.holds;
                    (holds, serde_json::to_value(&cert).expect("serializable"))
                }
                "order01" => {
                    let holds = order01(&a, &b);
                    (
                        holds,
                        json!({
                            "relation": "order01",
                            "holds": holds,
                            "h0": [hartley(&a).render(), hartley(&b).render()],
                            "h1": [shannon(&a).render(), shannon(&b).render()],
                        }),
                    )
                }
                other => match other.strip_prefix("tensorpow:") {
                    Some(n) => {
                        let n: u32 = n.parse().map_err(|e| format!("bad power {n:?}: {e}"))?;
                        let holds = tensor_power_dominates(&a, &b, n, &Dist::uniform(2));
                        (
                            holds,
                            json!({
                                "relation": format!("tensorpow:{n}"),
                                "holds": holds,
                                "catalyst": "uniform(2)",
                            }),
                        )
                    }
                    None => return Err(format!("unknown relation {relation:?}")),
                },
            };
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&cert).expect("valid json")
                );
            } else {
                println!("{holds}");
            }
            Ok(holds)
        }
        Command::WitnessSearch { lhs, rhs, budget } => {
            let p = load_dist(&lhs)?;
            let q = load_dist(&rhs)?;
            let mut base = file_cfg.suite_config()?.witness_budget;
            if let Some(spec) = budget {
                base = parse_budget(&spec, base)?;
            }
            match catalytic_witness_search(&p, &q, &base).map_err(|e| e.to_string())? {
                WitnessSearch::Found(w) => {
                    let replay = verify_witness(&p, &q, &w);
                    let cert = json!({
                        "found": true,
                        "replay_verified": replay,
                        "catalyst": serde_json::to_value(&w.catalyst).expect("serializable"),
                        "variable_codomains": w
                            .vars
                            .iter()
                            .map(|v| serde_json::to_value(v.codomain()).expect("serializable"))
                            .collect::<Vec<_>>(),
                        "joint_codomain":
                            serde_json::to_value(&w.joint_codomain).expect("serializable"),
                        "transfers": w
                            .transfers
                            .iter()
                            .map(|t| json!({
                                "from": t.index_from,
                                "to": t.index_to,
                                "amount": entrolab::numfmt::format_rational(&t.amount),
                            }))
                            .collect::<Vec<_>>(),
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&cert).expect("valid json")
                    );
                    Ok(replay)
                }
                WitnessSearch::BudgetExhausted { candidates_checked } => {
                    let cert = json!({
                        "found": false,
                        "candidates_checked": candidates_checked,
                        "note": "absence of a witness is not claimed",
                    });
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&cert).expect("valid json")
                    );
                    Ok(true)
                }
            }
        }
        Command::Monoid { cmd } => match cmd {
            MonoidCmd::Leq {
                presentation,
                query,
                depth,
            } => {
                let text = std::fs::read_to_string(&presentation)
                    .map_err(|e| format!("cannot read {}: {e}", presentation.display()))?;
                let m = PresentedMonoid::parse(&text).map_err(|e| e.to_string())?;
                let (lhs, rhs) = query
                    .split_once(">=")
                    .ok_or_else(|| format!("query must contain >=: {query:?}"))?;
                let x = m.parse_word(lhs).map_err(|e| e.to_string())?;
                let y = m.parse_word(rhs).map_err(|e| e.to_string())?;
                match m.leq(&x, &y, depth) {
                    Semidecision::Proven => println!("proven"),
                    Semidecision::Unknown => println!("unknown"),
                }
                Ok(true)
            }
        },
        Command::Ab { cmd } => match cmd {
            AbCmd::Dominates { lhs, rhs } => {
                let a = finab_decompose(&parse_orders(&lhs)?);
                let b = finab_decompose(&parse_orders(&rhs)?);
                let word = match m_compare(&a, &b) {
                    MCompare::Dominates => "dominates",
                    MCompare::Dominated => "dominated",
                    MCompare::Equal => "equal",
                    MCompare::Incomparable => "incomparable",
                };
                println!("{word}");
                Ok(true)
            }
            AbCmd::Epi {
                lhs,
                rhs,
                max_nodes,
            } => {
                let a = AbGroup::new(parse_orders(&lhs)?);
                let b = AbGroup::new(parse_orders(&rhs)?);
                match brute_epi_exists(&a, &b, max_nodes) {
                    EpiSearch::Yes(w) => {
                        let ok = verify_epi_witness(&a, &b, &w);
                        println!(
                            "{}",
                            json!({
                                "epi_exists": true,
                                "generator_images": w,
                                "replay_verified": ok,
                            })
                        );
                        Ok(ok)
                    }
                    EpiSearch::No => {
                        println!("{}", json!({ "epi_exists": false }));
                        Ok(true)
                    }
                    EpiSearch::BudgetExhausted => {
                        println!("{}", json!({ "epi_exists": "budget-exhausted" }));
                        Ok(true)
                    }
                }
            }
        },
        Command::Naturality { functor, object } => {
            let consts = {
                let cfg = file_cfg.suite_config()?;
                NaturalityConstants {
                    field: cfg.naturality.field,
                    group: cfg.naturality.group,
                    dist: cfg.naturality.dist,
                }
            };
            let obj = match functor.as_str() {
                "supp" | "incl_lprob" => {
                    // the object is a distribution file
                    NaturalityObject::Dist(load_dist(Path::new(&object))?)
                }
                "vect_to_prob" => NaturalityObject::Dimension(
                    object.parse().map_err(|e| format!("bad dimension: {e}"))?,
                ),
                "ab_to_prob" => NaturalityObject::AbGroup(parse_orders(&object)?),
                "simplex_to_prob" => NaturalityObject::Simplex(
                    object
                        .parse()
                        .map_err(|e| format!("bad simplex index: {e}"))?,
                ),
                "setop_to_prob" => NaturalityObject::SetSize(
                    object.parse().map_err(|e| format!("bad set size: {e}"))?,
                ),
                other => return Err(format!("unknown functor {other:?}")),
            };
            let sq = naturality_square(&functor, &obj, &consts).map_err(|e| e.to_string())?;
            println!("upper path: {}", sq.upper_path);
            println!("lower path: {}", sq.lower_path);
            println!("commutes: {}", sq.commutes);
            Ok(sq.commutes)
        }
        Command::Cond { cmd } => match cmd {
            CondCmd::Entropy { base } => {
                let (dist, maps) = load_tower(&base)?;
                let top = shannon(&dist);
                let bottom = match maps.last() {
                    Some(f) => shannon(f.target()),
                    None => top.clone(),
                };
                print_logreal(&top.sub(&bottom), digits);
                Ok(true)
            }
            CondCmd::Chain { base } => {
                let (_, maps) = load_tower(&base)?;
                if maps.len() < 2 {
                    return Err("chain rule needs a tower with at least two maps".into());
                }
                let mut all_hold = true;
                let mut certs = Vec::new();
                let mut f = maps[0].clone();
                for g in &maps[1..] {
                    let cert = chain_rule_check(&f, g).map_err(|e| e.to_string())?;
                    all_hold &= cert.holds;
                    certs.push(serde_json::to_value(&cert).expect("serializable"));
                    f = f.then(g).map_err(|e| e.to_string())?;
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "holds": all_hold, "steps": certs }))
                        .expect("valid json")
                );
                Ok(all_hold)
            }
            CondCmd::Submod { eps } => {
                let eps = parse_rational(&eps)?;
                let p = epsilon_family(&eps).map_err(|e| e.to_string())?;
                let inst = submodularity_instance(&p);
                let deficit = submodularity_deficit(&inst);
                let [h0p, h0a, h0b, h0q] = submodularity_hartley_table(&inst);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "deficit": deficit.render(),
                        "deficit_decimal": deficit.to_decimal(digits),
                        "strict": deficit.sign() == 1,
                        "hartley": {
                            "p": h0p.render(),
                            "a": h0a.render(),
                            "b": h0b.render(),
                            "q": h0q.render(),
                        },
                    }))
                    .expect("valid json")
                );
                Ok(deficit.sign() >= 0)
            }
        },
        Command::Lprob { cmd } => match cmd {
            LprobCmd::Truncation { p, n, report } => {
                let p = parse_rational(&p)?;
                let rep = truncation_report(&p, n, digits);
                if report {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::to_value(&rep).unwrap())
                            .expect("valid json")
                    );
                } else {
                    println!("H1(Y_{n}) = {}", rep.entropy.render());
                    println!("≈ {}", rep.entropy_decimal);
                    if let Some(gap) = rep.gap_to_limit {
                        println!("gap to 2*log(2): {gap}");
                    }
                }
                Ok(true)
            }
        },
        Command::Verify {
            suite,
            seed,
            cases,
            jobs,
        } => {
            let mut cfg = file_cfg.suite_config()?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(cases) = cases {
                cfg.cases = Some(cases);
            }
            let ids: Vec<u32> = if suite == "all" {
                CRITERIA.iter().map(|&(id, _)| id).collect()
            } else {
                match CRITERIA.iter().find(|&&(_, n)| n == suite) {
                    Some(&(id, _)) => vec![id],
                    None => return Err(format!("unknown suite {suite:?}")),
                }
            };
            let reports: Vec<_> = if jobs > 1 {
                use rayon::prelude::*;
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| e.to_string())?;
                pool.install(|| ids.par_iter().map(|&id| run_criterion(id, &cfg)).collect())
            } else {
                ids.iter().map(|&id| run_criterion(id, &cfg)).collect()
            };
            for r in &reports {
                eprintln!(
                    "criterion {:>2} {:<16} {}  cases={} failures={} elapsed={}ms",
                    r.id,
                    r.name,
                    if r.pass { "PASS" } else { "FAIL" },
                    r.cases,
                    r.failures.len(),
                    r.elapsed_ms,
                );
            }
            let all_pass = reports.iter().all(|r| r.pass);
            let report = suite_report(&suite, &cfg, reports);
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("valid json")
            );
            Ok(all_pass)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
