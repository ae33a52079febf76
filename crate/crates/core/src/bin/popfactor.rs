use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use popfactor::aux_graph::build_aux_graph;
use popfactor::fastpath::has_positive_cycle;
use popfactor::gen::{random_instance, random_matching, GenParams};
use popfactor::io::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use popfactor::mwpm::{max_weight_perfect_matching, WeightedGraph};
use popfactor::oracle::{oracle_factor, oracle_margin, DEFAULT_ORACLE_CAP};
use popfactor::stable::gale_shapley;
use popfactor::{fixtures, is_popular, unpopularity_factor, unpopularity_margin, Error, Factor, FastPath, Instance, Kind, Matching, Rational, Result};

#[derive(Parser)]
#[command(name = "popfactor", version, about = "Unpopularity factor and margin of matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact unpopularity factor, with margin and popularity verdict.
    Factor(Query),
    /// Unpopularity margin and a rival attaining it.
    Margin(Query),
    /// Whether the matching is popular.
    Popular(Query),
    /// Brute-force factor and margin over all matchings (small instances).
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Random instance, written to stdout.
    Gen {
        #[arg(long, value_enum, default_value_t = KindArg::Rp)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        /// Probability that an eligible pair is mutually acceptable.
        #[arg(long, default_value_t = 0.7)]
        density: f64,
        /// Probability that a list entry ties with the previous one.
        #[arg(long, default_value_t = 0.0)]
        ties: f64,
        /// Voter weights drawn from `LO..=HI`, e.g. `1..=10`.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write a random matching of the instance here.
        #[arg(long)]
        matching_out: Option<PathBuf>,
    },
    /// Stable matching of a strict marriage instance.
    Stable {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Auxiliary graph of a matching at a threshold `k`.
    Aux {
        #[command(flatten)]
        input: Input,
        /// Threshold, e.g. `2` or `5/3`.
        #[arg(long)]
        k: String,
        /// Also search for a positive alternating cycle (bipartite instances).
        #[arg(long)]
        cycle: bool,
    },
    /// Maximum-weight perfect matching of an edge list (`e u v w` lines).
    Mwpm {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Checks the bundled instances against their known values.
    Selftest,
}

#[derive(Args)]
struct Input {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    matching: PathBuf,
}

#[derive(Args)]
struct Query {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value_t = FastPathArg::Auto)]
    fastpath: FastPathArg,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FastPathArg {
    Auto,
    On,
    Off,
    Verify,
}

impl From<FastPathArg> for FastPath {
    fn from(a: FastPathArg) -> Self {
        match a {
            FastPathArg::Auto => FastPath::Auto,
            FastPathArg::On => FastPath::On,
            FastPathArg::Off => FastPath::Off,
            FastPathArg::Verify => FastPath::Verify,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Rp,
    Mp,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load(input: &Input) -> Result<(Instance, Matching)> {
    let inst = parse_instance(&read(&input.instance)?)?;
    let m = parse_matching(&read(&input.matching)?, &inst)?;
    Ok((inst, m))
}

fn parse_k(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidParameter(format!("invalid threshold `{s}`"));
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: i64 = num.trim().parse().map_err(|_| bad())?;
    let den: i64 = den.trim().parse().map_err(|_| bad())?;
    if den <= 0 {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let bad = || Error::InvalidParameter(format!("invalid weight range `{s}`, expected LO..=HI"));
    let (lo, hi) = s.split_once("..=").ok_or_else(bad)?;
    Ok(lo.parse().map_err(|_| bad())?..=hi.parse().map_err(|_| bad())?)
}

fn pair_list(inst: &Instance, m: &Matching) -> Vec<[String; 2]> {
    m.pairs().iter().map(|&(a, b)| [inst.name(a).to_string(), inst.name(b).to_string()]).collect()
}

fn factor_json(f: Factor) -> serde_json::Value {
    match f.finite() {
        Some(r) => json!({"factor_num": r.numer(), "factor_den": r.denom(), "is_infinite": false}),
        None => json!({"factor_num": null, "factor_den": null, "is_infinite": true}),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Factor(q) => {
            let (inst, m) = load(&q.input)?;
            let rep = unpopularity_factor(&inst, &m, q.fastpath.into())?;
            if q.json {
                println!("{}", rep.to_json(&inst));
            } else {
                print!("{}", rep.to_text(&inst));
            }
        }
        Command::Margin(q) => {
            let (inst, m) = load(&q.input)?;
            let rep = unpopularity_margin(&inst, &m)?;
            if q.json {
                println!("{}", json!({"margin": rep.margin, "witness_pairs": pair_list(&inst, &rep.witness)}));
            } else {
                println!("margin: {}", rep.margin);
                print!("witness:\n{}", serialize_matching(&rep.witness, &inst));
            }
        }
        Command::Popular(q) => {
            let (inst, m) = load(&q.input)?;
            let popular = is_popular(&inst, &m, q.fastpath.into())?;
            if q.json {
                println!("{}", json!({ "popular": popular }));
            } else {
                println!("popular: {}", if popular { "yes" } else { "no" });
            }
        }
        Command::Oracle { input, cap, json } => {
            let (inst, m) = load(&input)?;
            let f = oracle_factor(&inst, &m, cap)?;
            let g = oracle_margin(&inst, &m, cap)?;
            if json {
                let mut doc = factor_json(f.factor);
                doc["zero_by_convention"] = f.zero_by_convention.into();
                doc["margin"] = g.into();
                println!("{doc}");
            } else {
                println!("factor: {}", f.factor);
                println!("margin: {g}");
            }
        }
        Command::Gen {
            kind,
            n,
            density,
            ties,
            weights,
            seed,
            matching_out,
        } => {
            let kind = match kind {
                KindArg::Rp => Kind::Roommates,
                KindArg::Mp => Kind::Marriage,
            };
            let mut p = GenParams::new(kind, n, seed).density(density).tie_prob(ties);
            if let Some(w) = weights {
                p = p.weights(parse_range(&w)?);
            }
            let inst = random_instance(&p)?;
            print!("{}", serialize_instance(&inst));
            if let Some(path) = matching_out {
                fs::write(path, serialize_matching(&random_matching(&inst, seed), &inst))?;
            }
        }
        Command::Stable { instance } => {
            let inst = parse_instance(&read(&instance)?)?;
            print!("{}", serialize_matching(&gale_shapley(&inst)?, &inst));
        }
        Command::Aux { input, k, cycle } => {
            let (inst, m) = load(&input)?;
            let g = build_aux_graph(&inst, &m, parse_k(&k)?)?;
            print!("{}", g.dump(&inst));
            if cycle {
                match has_positive_cycle(&inst, &g)?.witness {
                    Some(w) => println!("# positive cycle: {}", w.render(&inst, &g)),
                    None => println!("# no positive cycle"),
                }
            }
        }
        Command::Mwpm { graph } => {
            let g = WeightedGraph::parse_edge_list(&read(&graph)?)?;
            let best = max_weight_perfect_matching(&g)?;
            if best.is_found() {
                println!("weight: {}", best.total_weight);
                for (u, v) in best.pairs {
                    println!("{} {}", u + 1, v + 1);
                }
            } else {
                println!("no perfect matching");
            }
        }
        Command::Selftest => selftest()?,
    }
    Ok(())
}

fn selftest() -> Result<()> {
    let mut failures = 0;
    let mut check = |name: &str, got: String, want: &str| {
        let ok = got == want;
        println!("{} {name}: {got}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };
    let f = fixtures::tied_roommates();
    let reports: Vec<_> = f
        .matchings
        .iter()
        .map(|m| unpopularity_factor(&f.instance, m, FastPath::Verify))
        .collect::<Result<_>>()?;
    check("tied roommates M0 popular", reports[0].popular.to_string(), "true");
    check("tied roommates u(M1)", reports[1].factor.to_string(), "inf");
    check("tied roommates g(M1)", reports[1].margin.to_string(), "1");
    check("tied roommates u(M2)", reports[2].factor.to_string(), "3/1");
    check("tied roommates g(M2)", reports[2].margin.to_string(), "2");

    let f = fixtures::strict_roommates();
    let (inst, m) = (&f.instance, &f.matchings[0]);
    for (k, golden) in [(2, fixtures::STRICT_AUX_K2), (3, fixtures::STRICT_AUX_K3)] {
        let dump = build_aux_graph(inst, m, Rational::from_integer(k))?.dump(inst);
        check(&format!("strict roommates auxiliary graph k={k}"), (dump == golden).to_string(), "true");
    }
    let rep = unpopularity_factor(inst, m, FastPath::Verify)?;
    check("strict roommates u(M)", rep.factor.to_string(), "3/1");

    let f = fixtures::two_couples();
    let (inst, m) = (&f.instance, &f.matchings[0]);
    let g = build_aux_graph(inst, m, Rational::from_integer(2))?;
    let cycle = has_positive_cycle(inst, &g)?.witness.map(|w| w.render(inst, &g));
    check(
        "two couples cycle at k=2",
        cycle.unwrap_or_else(|| "none".into()),
        "m1 -> w1 -> m2 -> w2 -> m1 (weight = 1)",
    );
    let rep = unpopularity_factor(inst, m, FastPath::Verify)?;
    check("two couples u(M')", rep.factor.to_string(), "3/1");
    check("two couples g(M')", rep.margin.to_string(), "2");
    let stable = gale_shapley(inst)?;
    check("two couples stable matching popular", is_popular(inst, &stable, FastPath::Verify)?.to_string(), "true");

    if failures > 0 {
        return Err(Error::Inconsistent(format!("{failures} self-test check(s) failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
