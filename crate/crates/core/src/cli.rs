//! Command-line front end. Results go to standard output as JSON lines,
//! diagnostics to standard error; exit code 0 on success, 1 on runtime
//! failure, 2 on usage errors (via the parser).

use std::error::Error;
use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ckfree::exact::{count_cycles, distance_bounds, greedy_edge_disjoint, is_free};
use ckfree::generators::planted::PlantedProfile;
use ckfree::harness::{
    parse_pattern, run_experiment, write_csv, ExperimentSpec, InstanceFamily,
};
use ckfree::oracle::OracleSession;
use ckfree::pattern::PatternGraph;
use ckfree::testers::general::{test_ck_odd, test_f_general};
use ckfree::testers::{c4::test_c4, c5::test_c5, c6::test_c6, TesterParams};
use ckfree::Graph;

#[derive(Parser)]
#[command(name = "ckfree", version, about = "Sublinear cycle-freeness testing toolkit")]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance: edge list to FILE, metadata to FILE.json
    Generate(GenerateArgs),
    /// Run one tester session against an edge-list file
    Test(TestArgs),
    /// Run an experiment spec and write a CSV of per-n rows
    Experiment(ExperimentArgs),
    /// Exactly count k-cycles and bound the distance to freeness
    Verify(VerifyArgs),
    /// Print the cover parameter of a pattern given as an edge list
    Ell(EllArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// planted | c4-lb-g0 | c4-lb-g1 | c5-lb-g0 | c5-lb-g1 | dist-d |
    /// subdivided-tf | forest | high-girth
    family: String,
    /// Vertex count (base part size for subdivided-tf)
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cycle length (planted, subdivided-tf)
    #[arg(long)]
    k: Option<usize>,
    /// Hub profile for planted: all-light | one-heavy | two-heavy | three-heavy
    #[arg(long)]
    profile: Option<String>,
    /// Integer arboricity target (dist-d)
    #[arg(long)]
    arb: Option<usize>,
    /// Block degree (subdivided-tf, high-girth)
    #[arg(long)]
    deg: Option<usize>,
    /// Degree cap (forest)
    #[arg(long)]
    max_degree: Option<usize>,
    /// Distance target used by planted sizing and degree classification
    #[arg(long, default_value_t = 0.2)]
    eps: f64,
    /// Arboricity bound used by planted sizing and degree classification
    #[arg(long, default_value_t = 2.0)]
    alpha: f64,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct TestArgs {
    /// c4 | c5 | c6 | odd | general
    tester: String,
    #[arg(short, long)]
    graph: PathBuf,
    /// Cycle length for the odd tester
    #[arg(long)]
    k: Option<usize>,
    /// Pattern for the general tester: edge | cycle:K | path:K | star:L | complete:K
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, default_value_t = 0.2)]
    eps: f64,
    /// Arboricity bound; defaults to the graph's degeneracy
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-count upper bound passed to the sampling testers; defaults to m
    #[arg(long)]
    m_hint: Option<u64>,
    /// Tester constant override, repeatable: --override t_mult=100
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(short = 'c', long)]
    config: PathBuf,
    /// CSV destination; falls back to the spec's output field
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, long)]
    graph: PathBuf,
    #[arg(short, long)]
    k: usize,
}

#[derive(Args)]
struct EllArgs {
    #[arg(short = 'f', long = "file")]
    pattern: PathBuf,
}

pub fn run(cli: Cli) -> i32 {
    let result = match cli.cmd {
        Cmd::Generate(a) => generate(a),
        Cmd::Test(a) => test(a),
        Cmd::Experiment(a) => experiment(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Ell(a) => ell(a),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, Box<dyn Error>> {
    let file = File::open(path).map_err(|e| format!("open {}: {e}", path.display()))?;
    Ok(Graph::load_edge_list(BufReader::new(file))?)
}

fn family_from_args(a: &GenerateArgs) -> Result<InstanceFamily, Box<dyn Error>> {
    let need = |opt: Option<usize>, flag: &str| {
        opt.ok_or_else(|| format!("family {} requires --{flag}", a.family))
    };
    let fam = match a.family.as_str() {
        "planted" => {
            let profile_str = a
                .profile
                .clone()
                .ok_or_else(|| format!("family planted requires --profile"))?;
            let profile: PlantedProfile =
                serde_json::from_value(serde_json::Value::String(profile_str.clone()))
                    .map_err(|_| format!("unknown profile {profile_str:?}"))?;
            InstanceFamily::Planted {
                k: need(a.k, "k")?,
                profile,
            }
        }
        "c4-lb-g0" => InstanceFamily::C4LbG0,
        "c4-lb-g1" => InstanceFamily::C4LbG1,
        "c5-lb-g0" => InstanceFamily::C5LbG0,
        "c5-lb-g1" => InstanceFamily::C5LbG1,
        "dist-d" => InstanceFamily::DistD {
            alpha: need(a.arb, "arb")?,
        },
        "subdivided-tf" => InstanceFamily::SubdividedTf {
            k: need(a.k, "k")?,
            deg: need(a.deg, "deg")?,
        },
        "forest" => InstanceFamily::Forest {
            max_degree: a.max_degree.unwrap_or(4),
        },
        "high-girth" => InstanceFamily::HighGirth {
            degree: a.deg.unwrap_or(3),
        },
        other => return Err(format!("unknown family {other:?}").into()),
    };
    Ok(fam)
}

fn generate(a: GenerateArgs) -> Result<(), Box<dyn Error>> {
    let fam = family_from_args(&a)?;
    let inst = fam.generate(a.n, a.eps, a.alpha, a.seed)?;
    let file = File::create(&a.output)?;
    inst.graph.save_edge_list(BufWriter::new(file))?;
    let mut sidecar = a.output.clone().into_os_string();
    sidecar.push(".json");
    inst.meta.save(sidecar.as_ref())?;
    println!(
        "{}",
        json!({
            "family": fam.name(),
            "n": inst.graph.n(),
            "m": inst.graph.m(),
            "max_degree": inst.graph.max_degree(),
            "certificate_cycles": inst.certificate.as_ref().map(|c| c.len()),
            "output": a.output,
        })
    );
    Ok(())
}

fn parse_overrides(list: &[String], p: &mut TesterParams) -> Result<(), Box<dyn Error>> {
    for item in list {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| format!("override {item:?} is not KEY=VALUE"))?;
        let value: f64 = value
            .parse()
            .map_err(|_| format!("override value in {item:?} is not a number"))?;
        p.apply_override(key, value)?;
    }
    Ok(())
}

fn test(a: TestArgs) -> Result<(), Box<dyn Error>> {
    let g = load_graph(&a.graph)?;
    let alpha = a
        .alpha
        .unwrap_or_else(|| g.degeneracy().max(1) as f64);
    let mut params = TesterParams::new(a.eps, alpha)?;
    parse_overrides(&a.overrides, &mut params)?;
    let m_hint = a.m_hint.unwrap_or(g.m() as u64);
    let mut session = OracleSession::new(&g, a.seed);
    let out = match a.tester.as_str() {
        "c4" => test_c4(&mut session, &params)?,
        "c5" => test_c5(&mut session, &params)?,
        "c6" => test_c6(&mut session, &params)?,
        "odd" => {
            let k = a.k.ok_or("tester odd requires --k")?;
            if k < 3 || k % 2 == 0 {
                return Err(format!("--k {k} is not an odd length >= 3").into());
            }
            test_ck_odd(&mut session, k, &params, m_hint)?
        }
        "general" => {
            let spec = a.pattern.as_deref().ok_or("tester general requires --pattern")?;
            let f = parse_pattern(spec)?;
            test_f_general(&mut session, &f, &params, m_hint)?
        }
        other => return Err(format!("unknown tester {other:?}").into()),
    };
    println!("{}", serde_json::to_string(&out)?);
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<(), Box<dyn Error>> {
    let text = std::fs::read_to_string(&a.config)?;
    let spec: ExperimentSpec = serde_json::from_str(&text)?;
    let out_path = a
        .output
        .clone()
        .or_else(|| spec.output.clone().map(PathBuf::from))
        .ok_or("no CSV destination: pass -o or set \"output\" in the spec")?;
    let rows = run_experiment(&spec)?;
    for row in &rows {
        println!("{}", serde_json::to_string(row)?);
    }
    let file = File::create(&out_path)?;
    write_csv(&rows, BufWriter::new(file))?;
    Ok(())
}

fn verify(a: VerifyArgs) -> Result<(), Box<dyn Error>> {
    let g = load_graph(&a.graph)?;
    let count = count_cycles(&g, a.k);
    let packing = greedy_edge_disjoint(&g, a.k);
    let (lo, hi) = distance_bounds(&g, &packing);
    println!(
        "{}",
        json!({
            "k": a.k,
            "n": g.n(),
            "m": g.m(),
            "count": count,
            "free": is_free(&g, a.k),
            "packing": packing.len(),
            "dist_lower": lo,
            "dist_upper": hi,
        })
    );
    Ok(())
}

fn ell(a: EllArgs) -> Result<(), Box<dyn Error>> {
    let g = load_graph(&a.pattern)?;
    let f = PatternGraph::from_graph(&g)?;
    println!("{}", f.ell());
    Ok(())
}
