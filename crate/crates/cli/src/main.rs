//! `confspace`: scriptable front end for the configuration-space
//! amplitude library. Reads JSON from stdin or `--input`, emits a
//! deterministic run report on stdout.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 input error.

use clap::{Parser, Subcommand, ValueEnum};
use confspace::acceptance::{run_all, AcceptanceConfig};
use confspace::amplitudes::{
    banana3_absolute, banana3_amplitude, banana3_integrand, polygon_two_path_value,
    star_integrand, AngularSource, StarOrientation,
};
use confspace::angular::kappa_default;
use confspace::graph::{
    acyclic_orientations, graph_laplacian, induced_subgraphs, is_biconnected, sector, Graph,
};
use confspace::oracle::brute_restricted_sum;
use confspace::polylog::{eval_restricted_polylog, PolylogSpec};
use confspace::wonderful::{
    building_set, convergence_report, enumerate_gnests, motive_class, singularity_order,
    TatePolynomial,
};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::io::Read;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "confspace", version, about = "graph configuration-space amplitude toolkit")]
struct Cli {
    /// Input file (graph or polylog-spec JSON); stdin when omitted.
    #[arg(long, global = true)]
    input: Option<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Numeric tolerance for series evaluations.
    #[arg(long, global = true, default_value_t = 1e-10)]
    eps: f64,

    /// Monte Carlo sample count.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    mc_samples: u64,

    /// Monte Carlo seed.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Shard-level parallelism cap for the oracles.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Graph combinatorics: orientations, subgraphs, nests, Laplacian.
    Graph {
        #[command(subcommand)]
        sub: GraphCmd,
    },
    /// Grothendieck class of the wonderful compactification.
    Motive {
        #[arg(long = "dim-x", alias = "dimX")]
        dim_x: u32,
        /// Class of X as a polynomial in L, e.g. "1+L+L^2".
        #[arg(long = "x-class")]
        x_class: String,
    },
    /// Singularity orders per building-set element plus the
    /// convergence report.
    Sing {
        #[arg(long, default_value_t = 4)]
        dimension: u32,
    },
    /// Amplitude evaluations.
    Amp {
        #[command(subcommand)]
        sub: AmpCmd,
    },
    /// Evaluate a restricted-polylog spec (JSON input).
    Polylog {
        /// Also run the brute-force summation oracle side by side.
        #[arg(long)]
        oracle: bool,
        /// Truncation for the oracle.
        #[arg(long, default_value_t = 400)]
        nmax: u64,
    },
    /// Run the full acceptance suite; nonzero exit on any failure.
    Verify,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Acyclic orientations.
    Orient {
        #[arg(value_enum, default_value_t = OrientMode::Count)]
        mode: OrientMode,
    },
    /// Induced subgraphs (all, or biconnected only).
    Subgraphs {
        #[arg(long)]
        biconnected: bool,
        #[arg(short = 'k', long)]
        k: Option<usize>,
    },
    /// Building-set nests.
    Nests,
    /// Integer graph Laplacian.
    Laplacian,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientMode {
    Count,
    List,
}

#[derive(Subcommand)]
enum AmpCmd {
    /// Exact two-path polygon value, reduced to zeta values.
    Polygon {
        #[arg(long)]
        k: u32,
        /// Internal vertex counts of the two oriented paths, "k1,k2".
        #[arg(long)]
        paths: String,
    },
    /// 3-banana amplitude.
    Banana3 {
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        /// Report the kappa-weighted absolute value instead of the
        /// kappa-normalized one.
        #[arg(long)]
        absolute: bool,
        /// Also evaluate both integrand routes at this point.
        #[arg(long, default_value_t = 0.5)]
        probe: f64,
    },
    /// Trivalent-star integrand.
    Star {
        /// Orientation case o0..o3.
        #[arg(long, default_value = "o0")]
        case: String,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Half-edge ratios "t1,t2,t3".
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
    },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs_digest: String,
    results: Value,
    tolerances: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Value>,
    wall_time_ms: u64,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let start = Instant::now();
    let command_echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let outcome = dispatch(&cli);
    match outcome {
        Ok(Outcome { results, tolerances, oracle, failed }) => {
            let report = RunReport {
                command: command_echo,
                inputs_digest: digest_of(&results),
                results,
                tolerances,
                oracle,
                wall_time_ms: start.elapsed().as_millis() as u64,
            };
            emit(&cli, &report);
            if failed {
                1
            } else {
                0
            }
        }
        Err(err) => {
            let obj = json!({"error": err.to_string()});
            println!("{}", serde_json::to_string_pretty(&obj).expect("serializable"));
            2
        }
    }
}

struct Outcome {
    results: Value,
    tolerances: Value,
    oracle: Option<Value>,
    failed: bool,
}

impl Outcome {
    fn ok(results: Value, tolerances: Value) -> Self {
        Self { results, tolerances, oracle: None, failed: false }
    }
}

fn digest_of(results: &Value) -> String {
    let mut hasher = Sha256::new();
    hasher.update(serde_json::to_string(results).expect("serializable"));
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn emit(cli: &Cli, report: &RunReport) {
    match cli.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
        }
        Format::Text => {
            println!("command: {}", report.command);
            println!("inputs:  {}", report.inputs_digest);
            println!(
                "{}",
                serde_json::to_string_pretty(&report.results).expect("serializable")
            );
        }
    }
}

fn read_input(cli: &Cli) -> anyhow::Result<String> {
    match &cli.input {
        Some(path) => Ok(std::fs::read_to_string(path)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn read_graph(cli: &Cli) -> anyhow::Result<Graph> {
    Ok(Graph::from_json(&read_input(cli)?)?)
}

fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Graph { sub } => graph_command(cli, sub),
        Command::Motive { dim_x, x_class } => {
            let g = read_graph(cli)?;
            let x = TatePolynomial::parse(x_class)?;
            let class = motive_class(&g, &x, *dim_x)?;
            Ok(Outcome::ok(
                json!({
                    "graph": parse_back(&g),
                    "dim_x": dim_x,
                    "x_class": x.to_string(),
                    "class": class.to_string(),
                    "leading_coefficient": class.leading_coeff().to_string(),
                }),
                json!({"arithmetic": "exact"}),
            ))
        }
        Command::Sing { dimension } => {
            let g = read_graph(cli)?;
            let bs = building_set(&g)?;
            let mut orders = Vec::new();
            for el in &bs.elements {
                orders.push(json!({
                    "subgraph": el.label_string(&g),
                    "order": singularity_order(&g, el, *dimension)?,
                }));
            }
            let report = convergence_report(&g, *dimension)?;
            Ok(Outcome::ok(
                json!({
                    "graph": parse_back(&g),
                    "dimension": dimension,
                    "singularity_orders": orders,
                    "convergence": report,
                }),
                json!({"arithmetic": "exact"}),
            ))
        }
        Command::Amp { sub } => amp_command(cli, sub),
        Command::Polylog { oracle, nmax } => {
            let text = read_input(cli)?;
            let spec: PolylogSpec = serde_json::from_str(&text)
                .map_err(|e| anyhow::anyhow!("bad polylog spec: {e}"))?;
            let value = eval_restricted_polylog(&spec, cli.eps)?;
            let oracle_value = if *oracle {
                let brute = brute_restricted_sum(&spec, *nmax)?;
                Some(json!({
                    "brute_sum": brute,
                    "nmax": nmax,
                    "difference": (value.value - brute.value).abs(),
                }))
            } else {
                None
            };
            Ok(Outcome {
                results: json!({"spec": spec, "value": value}),
                tolerances: json!({"eps": cli.eps}),
                oracle: oracle_value,
                failed: false,
            })
        }
        Command::Verify => {
            let cfg = AcceptanceConfig {
                mc_samples: cli.mc_samples,
                seed: cli.seed,
                jobs: cli.jobs,
            };
            let outcomes = run_all(&cfg);
            let failed = outcomes.iter().any(|o| !o.passed);
            for o in &outcomes {
                eprintln!(
                    "[{}] criterion {:2}: {} — {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.id,
                    o.name,
                    o.details
                );
            }
            Ok(Outcome {
                results: serde_json::to_value(&outcomes)?,
                tolerances: json!({
                    "mc_samples": cli.mc_samples,
                    "seed": cli.seed,
                }),
                oracle: None,
                failed,
            })
        }
    }
}

fn parse_back(g: &Graph) -> Value {
    serde_json::from_str(&g.to_json()).expect("round-trips")
}

fn graph_command(cli: &Cli, sub: &GraphCmd) -> anyhow::Result<Outcome> {
    let g = read_graph(cli)?;
    match sub {
        GraphCmd::Orient { mode } => {
            let orientations = acyclic_orientations(&g);
            let results = match mode {
                OrientMode::Count => json!({
                    "graph": parse_back(&g),
                    "count": orientations.len(),
                }),
                OrientMode::List => {
                    let list: Vec<Value> = orientations
                        .iter()
                        .map(|o| {
                            let sec = sector(&g, o).expect("acyclic by construction");
                            json!({
                                "edges": o.directions.iter()
                                    .map(|&(s, t)| (g.label(s), g.label(t)))
                                    .collect::<Vec<_>>(),
                                "sources": sec.sources.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                                "sinks": sec.sinks.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    json!({"graph": parse_back(&g), "count": list.len(), "orientations": list})
                }
            };
            Ok(Outcome::ok(results, json!({"arithmetic": "exact"})))
        }
        GraphCmd::Subgraphs { biconnected, k } => {
            let mut subs = induced_subgraphs(&g, *k);
            if *biconnected {
                subs.retain(|s| {
                    s.edge_count() > 0
                        && is_biconnected(&s.to_graph(&g)).unwrap_or(false)
                });
            }
            let list: Vec<Value> = subs
                .iter()
                .map(|s| {
                    json!({
                        "vertices": s.vertices.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
                        "edge_count": s.edge_count(),
                    })
                })
                .collect();
            Ok(Outcome::ok(
                json!({"graph": parse_back(&g), "count": list.len(), "subgraphs": list}),
                json!({"arithmetic": "exact"}),
            ))
        }
        GraphCmd::Nests => {
            let (bs, nests) = enumerate_gnests(&g)?;
            let list: Vec<Value> = nests
                .iter()
                .map(|n| {
                    Value::Array(
                        n.elements
                            .iter()
                            .map(|&i| Value::String(bs.elements[i].label_string(&g)))
                            .collect(),
                    )
                })
                .collect();
            Ok(Outcome::ok(
                json!({
                    "graph": parse_back(&g),
                    "building_set": bs.elements.iter().map(|e| e.label_string(&g)).collect::<Vec<_>>(),
                    "nest_count": list.len(),
                    "nests": list,
                }),
                json!({"arithmetic": "exact"}),
            ))
        }
        GraphCmd::Laplacian => {
            let m = graph_laplacian(&g)?;
            Ok(Outcome::ok(
                json!({"graph": parse_back(&g), "laplacian": m}),
                json!({"arithmetic": "exact"}),
            ))
        }
    }
}

fn amp_command(_cli: &Cli, sub: &AmpCmd) -> anyhow::Result<Outcome> {
    match sub {
        AmpCmd::Polygon { k, paths } => {
            let parts: Vec<&str> = paths.split(',').collect();
            if parts.len() != 2 {
                anyhow::bail!("--paths expects \"k1,k2\"");
            }
            let k1: u32 = parts[0].trim().parse()?;
            let k2: u32 = parts[1].trim().parse()?;
            if k1 + k2 + 2 != *k {
                anyhow::bail!("polygon size mismatch: k = k1 + k2 + 2 required");
            }
            let amp = polygon_two_path_value(k1, k2)?;
            let exact = amp.exact.expect("two-path value is exact");
            Ok(Outcome::ok(
                json!({
                    "k": k,
                    "paths": [k1, k2],
                    "exact": exact.to_string(),
                    "numeric": amp.numeric,
                    "pole_note": amp.pole_note,
                }),
                json!({"zeta_tail": amp.numeric.tail_bound}),
            ))
        }
        AmpCmd::Banana3 { eps, absolute, probe } => {
            let amp = if *absolute {
                banana3_absolute(*eps, kappa_default())?
            } else {
                banana3_amplitude(*eps)?
            };
            let (brute, poly) = banana3_integrand(*probe, 400)?;
            Ok(Outcome {
                results: json!({
                    "amplitude": amp.numeric,
                    "kappa_normalized": amp.kappa_normalized,
                    "pole_note": amp.pole_note,
                    "integrand_probe": {
                        "t": probe,
                        "brute": brute,
                        "polylog_route": poly,
                        "difference": (brute.value - poly.value).abs(),
                    },
                }),
                tolerances: json!({"eps": eps}),
                oracle: Some(json!({
                    "integrand_routes_difference": (brute.value - poly.value).abs(),
                })),
                failed: false,
            })
        }
        AmpCmd::Star { case, r, t, n_max } => {
            let parts: Vec<f64> = t
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<_, _>>()?;
            if parts.len() != 3 {
                anyhow::bail!("--t expects \"t1,t2,t3\"");
            }
            let orientation = StarOrientation::case(case)?;
            let ts = [parts[0], parts[1], parts[2]];
            let value = star_integrand(&orientation, *r, &ts, AngularSource::L0Channel, *n_max)?;
            Ok(Outcome::ok(
                json!({
                    "case": case,
                    "alpha": [orientation.alpha(0), orientation.alpha(1), orientation.alpha(2)],
                    "epsilon": [orientation.epsilon(0), orientation.epsilon(1), orientation.epsilon(2)],
                    "alpha_center": orientation.alpha_center(),
                    "r": r,
                    "t": ts,
                    "value": value,
                }),
                json!({"n_max": n_max}),
            ))
        }
    }
}
