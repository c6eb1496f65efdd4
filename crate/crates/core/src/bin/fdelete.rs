use clap::{Args, Parser, Subcommand, ValueEnum};
use fdelete::c4::{solve_c4, solve_c4_on, C4Options};
use fdelete::decomp::{heuristic_nice, heuristic_td, make_nice, td_to_branch};
use fdelete::error::Error;
use fdelete::folio_dp::{heuristic_branch, solve_minor, solve_tm_folio};
use fdelete::hardness::{self, Completion};
use fdelete::io::{emit_gr, emit_td, parse_family, parse_gr, parse_solution, parse_td};
use fdelete::oracle::{min_deletion, verify_solution};
use fdelete::paths::{solve_p3, solve_p4};
use fdelete::random::erdos_renyi;
use fdelete::{Family, Graph, Mode, Result, Solved};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "fdelete", version, about = "Vertex deletion to exclude (topological) minors")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a minimum deletion set.
    Solve(SolveArgs),
    /// Check that a vertex set is a solution.
    Verify(VerifyArgs),
    /// Generate lower-bound instances.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Engine {
    Auto,
    Dp,
    Folio,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Tm,
    Minor,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Tm => Mode::Tm,
            ModeArg::Minor => Mode::Minor,
        }
    }
}

#[derive(Args)]
struct FamilyArgs {
    /// p3, p4, c4, custom (with --family-file) or any graph name like k4, c5, k1,3.
    #[arg(long)]
    family: String,
    #[arg(long)]
    family_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "tm")]
    mode: ModeArg,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long, value_enum, default_value = "auto")]
    engine: Engine,
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    td: Option<PathBuf>,
    /// Also report whether the optimum is at most K.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    fam: FamilyArgs,
    #[arg(long)]
    graph: PathBuf,
    /// 1-based ids, or a JSON report / sidecar.
    #[arg(long)]
    solution: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompletionArg {
    Paths,
    Kclass,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Permutation clique construction on a random k x k instance with a planted solution.
    Permclique {
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        family: String,
        /// Defaults to paths for path families, kclass otherwise.
        #[arg(long, value_enum)]
        completion: Option<CompletionArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Noise edge probability.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Vertex Cover reduction.
    Vc {
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Random G(n, 0.5) input when no graph is given.
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Standalone choice gadget on s vertices.
    Choice {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(p: &Path) -> Result<String> {
    std::fs::read_to_string(p).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
}

fn write(p: &Path, s: &str) -> Result<()> {
    std::fs::write(p, s).map_err(|e| Error::Input(format!("{}: {e}", p.display())))
}

fn with_ext(p: &Path, ext: &str) -> PathBuf {
    let mut s = p.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn load_family(a: &FamilyArgs) -> Result<Family> {
    match (a.family.as_str(), &a.family_file) {
        ("custom", Some(f)) => parse_family(&read(f)?),
        ("custom", None) => Err(Error::Input("--family custom needs --family-file".into())),
        (_, Some(_)) => Err(Error::Input("--family-file needs --family custom".into())),
        (name, None) => Family::named(name),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn dp_kind(f: &Family) -> Option<&'static str> {
    let g = &f.members[..];
    if g.len() != 1 {
        return None;
    }
    // paths and cycles have maximum degree 2, so minor and tm coincide
    [("p3", Graph::path(3)), ("p4", Graph::path(4)), ("c4", Graph::cycle(4))]
        .into_iter()
        .find(|(_, h)| fdelete::canon::is_isomorphic(h, &g[0]))
        .map(|(k, _)| k)
}

fn solve(a: &SolveArgs) -> Result<()> {
    let g = parse_gr(&read(&a.graph)?)?;
    let family = load_family(&a.fam)?;
    let mode: Mode = a.fam.mode.into();
    let td = match &a.td {
        Some(p) => Some(parse_td(&read(p)?, g.n())?),
        None => None,
    };
    let kind = dp_kind(&family);
    let engine = match a.engine {
        Engine::Auto if kind.is_some() => Engine::Dp,
        Engine::Auto => Engine::Folio,
        e => e,
    };
    let start = Instant::now();
    let (solver, sol): (&str, Solved) = match engine {
        Engine::Dp => {
            let Some(kind) = kind else {
                return Err(Error::Input("the dp engine handles p3, p4 and c4 only".into()));
            };
            let ntd = || match &td {
                Some(td) => make_nice(td, &g),
                None => Ok(heuristic_nice(&g)),
            };
            let s = match kind {
                "p3" => solve_p3(&g, &ntd()?)?,
                "p4" => solve_p4(&g, &ntd()?)?,
                _ => match &td {
                    Some(td) => solve_c4_on(&g, td, C4Options::default())?,
                    None => solve_c4(&g)?,
                },
            };
            (kind, s)
        }
        Engine::Folio => {
            let bd = match &td {
                Some(td) => td_to_branch(td, &g)?,
                None => heuristic_branch(&g)?,
            };
            let s = match mode {
                Mode::Tm => solve_tm_folio(&g, &family, bd.as_ref())?,
                Mode::Minor => solve_minor(&g, &family, bd.as_ref())?,
            };
            ("folio", s)
        }
        Engine::Oracle | Engine::Auto => {
            let r = min_deletion(&g, &family, mode)?;
            ("oracle", Solved { optimum: r.size, solution: r.solution })
        }
    };
    let wall = start.elapsed();
    if !verify_solution(&g, &family, &sol.solution, mode)? {
        return Err(Error::Internal(format!("{solver} produced an invalid solution")));
    }
    let width = td.unwrap_or_else(|| heuristic_td(&g)).width();
    if a.json {
        let mut rep = json!({
            "schema": 1,
            "instance": a.graph.display().to_string(),
            "solver": solver,
            "family": family.name,
            "mode": mode,
            "n": g.n(),
            "m": g.m(),
            "width": width,
            "optimum": sol.optimum,
            "solution": one_based(&sol.solution),
            "wall_ms": wall.as_secs_f64() * 1e3,
        });
        if let Some(k) = a.budget {
            rep["budget"] = json!(k);
            rep["feasible"] = json!(sol.optimum <= k);
        }
        println!("{}", serde_json::to_string_pretty(&rep).unwrap());
    } else {
        println!("solver {solver}");
        println!("optimum {}", sol.optimum);
        println!("solution {}", one_based(&sol.solution).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
        if let Some(k) = a.budget {
            println!("feasible {}", sol.optimum <= k);
        }
        println!("time {:.3}s", wall.as_secs_f64());
    }
    Ok(())
}

fn verify(a: &VerifyArgs) -> Result<()> {
    let g = parse_gr(&read(&a.graph)?)?;
    let family = load_family(&a.fam)?;
    let s = parse_solution(&read(&a.solution)?, g.n())?;
    let ok = verify_solution(&g, &family, &s, a.fam.mode.into())?;
    if a.json {
        println!("{}", json!({"schema": 1, "valid": ok, "size": s.len()}));
    } else {
        println!("{} ({} vertices)", if ok { "valid" } else { "invalid" }, s.len());
    }
    Ok(())
}

fn emit(out: &Path, inst: &hardness::HardnessInstance, side: hardness::Sidecar) -> Result<()> {
    write(&with_ext(out, "gr"), &emit_gr(&inst.graph))?;
    write(&with_ext(out, "td"), &emit_td(&heuristic_td(&inst.graph), inst.graph.n()))?;
    write(&with_ext(out, "json"), &serde_json::to_string_pretty(&side).unwrap())?;
    println!("vertices {}", inst.graph.n());
    println!("edges {}", inst.graph.m());
    println!("budget {}", inst.budget);
    Ok(())
}

fn gen(c: &GenCmd) -> Result<()> {
    match c {
        GenCmd::Permclique { k, family, completion, seed, p, out } => {
            let family = Family::named(family)?;
            let completion = match completion {
                Some(CompletionArg::Paths) => Completion::Paths,
                Some(CompletionArg::Kclass) => Completion::Kclass,
                None if family.members[0].max_degree() <= 2 && family.members[0].m() + 1 == family.members[0].n() => {
                    Completion::Paths
                }
                None => Completion::Kclass,
            };
            if !(0.0..=1.0).contains(p) {
                return Err(Error::Input("--p must lie in [0, 1]".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let (g_pc, sigma) = hardness::random_permclique(&mut rng, *k, *p);
            let inst = hardness::general_construction(&g_pc, *k, &family, completion)?;
            emit(out, &inst, inst.sidecar(Some(completion), Some(&sigma))?)
        }
        GenCmd::Vc { graph, n, seed, family, out } => {
            let g = match graph {
                Some(p) => parse_gr(&read(p)?)?,
                None => erdos_renyi(&mut ChaCha8Rng::seed_from_u64(*seed), *n, 0.5),
            };
            let inst = hardness::vc_reduction(&g, &Family::named(family)?)?;
            emit(out, &inst, inst.sidecar(None, None)?)
        }
        GenCmd::Choice { s, family, out } => {
            let (inst, _) = hardness::choice_gadget(&Family::named(family)?, *s)?;
            emit(out, &inst, inst.sidecar(None, None)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match &cli.cmd {
        Cmd::Solve(a) => solve(a),
        Cmd::Verify(a) => verify(a),
        Cmd::Gen(c) => gen(c),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
