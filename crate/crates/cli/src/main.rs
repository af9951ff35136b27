//! `unity-sieve`: runs the root-of-unity proof pipeline, the generic solver,
//! the triangle verifier and a few arithmetic helpers.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 usage or I/O
//! error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use unity_sieve::geometry::{
    angles, check_equality, figure_coordinates, figure_for, isosceles_bisectral,
    sharygin_angle_window, squared_sides, triangle_from_tangency, NamedTriangle, TangencyTriple,
    TrianglePoints,
};
use unity_sieve::numtheory::{moebius, ramanujan_sum};
use unity_sieve::pipeline::{prove, solve_generic, PipelineError, RouteSelection, Status};
use unity_sieve::poly::{cyclotomic_poly, resultant_wrt_x, resultant_wrt_y, BiLaurent};
use unity_sieve::Execution;

const MAX_OVERRIDE: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "unity-sieve", version, about = "Exact root-of-unity solver for the Sharygin bisectral equation")]
struct Cli {
    /// Worker threads; 1 runs every stage sequentially.
    #[arg(long, global = true, env = "UNITY_SIEVE_JOBS")]
    jobs: Option<usize>,
    /// Print stage timings and per-assertion lines to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RouteArg {
    Main,
    Alternative,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Var {
    X,
    Y,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determine every root-of-unity solution and write the proof report.
    Prove {
        #[arg(long, value_enum, default_value = "main")]
        route: RouteArg,
        /// Report path; stdout if omitted.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Enumerate at this modulus instead of the scanned one (testing aid).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_OVERRIDE))]
        modulus_override: Option<u64>,
    },
    /// Solve `1 + Σ monomials = 0` over roots of unity.
    Solve {
        polynomial: String,
        #[arg(long, default_value_t = 8)]
        max_terms: usize,
        /// JSON report path.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Verify a named triangle or a tangency spec `a,b,c@N`.
    Geometry {
        target: String,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Width of the certified angle intervals, in radians.
        #[arg(long, default_value_t = 1e-12)]
        precision: f64,
    },
    /// Ramanujan sum c_N(k).
    #[command(allow_negative_numbers = true)]
    Ramanujan { n: u64, k: i64 },
    /// Möbius function μ(n).
    Mobius { n: u64 },
    /// Cyclotomic polynomial Φ_n.
    Cyclotomic { n: u64 },
    /// Resultant of two polynomials read from stdin, one per line.
    Resultant {
        /// Variable to eliminate.
        #[arg(long, value_enum, default_value = "y")]
        var: Var,
    },
}

enum Failure {
    Math(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Math(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

fn pipeline_failure(e: PipelineError) -> Failure {
    match e {
        PipelineError::Shape(_) | PipelineError::ModulusTooLarge { .. } => Failure::Usage(e.to_string()),
        other => Failure::Math(other.to_string()),
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

fn execution(jobs: Option<usize>) -> Result<Execution, Failure> {
    match jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(1) => Ok(Execution::Sequential),
        Some(n) => {
            // a second call in the same process keeps the first pool
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            Ok(Execution::Parallel)
        }
        None => Ok(Execution::Parallel),
    }
}

fn cmd_prove(
    route: RouteArg,
    output: Option<&Path>,
    modulus_override: Option<u64>,
    exec: Execution,
    verbose: bool,
) -> Result<(), Failure> {
    let selection = match route {
        RouteArg::Main => RouteSelection::Main,
        RouteArg::Alternative => RouteSelection::Alternative,
        RouteArg::Both => RouteSelection::Both,
    };
    let start = Instant::now();
    let report = prove(selection, exec, modulus_override).map_err(pipeline_failure)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    write_out(output, &json)?;
    for r in report.routes() {
        eprintln!(
            "route {}: N = {}, {} solutions, filter {:?}",
            serde_json::to_string(&r.route).unwrap_or_default().trim_matches('"'),
            r.modulus,
            r.solutions.len(),
            r.filtered
        );
        if verbose {
            for (stage, t) in &r.timings {
                eprintln!("  {stage}: {:.3} ms", t.as_secs_f64() * 1e3);
            }
        }
    }
    let failed: Vec<&str> = report
        .assertions()
        .into_iter()
        .filter(|a| {
            if verbose {
                let tag = match a.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skip",
                };
                eprintln!("  [{tag}] {}", a.name);
            }
            a.failed()
        })
        .map(|a| a.name.as_str())
        .collect();
    if verbose {
        eprintln!("total {:.3} s", start.elapsed().as_secs_f64());
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Math(format!("failed assertions: {}", failed.join(", "))))
    }
}

fn cmd_solve(text: &str, max_terms: usize, output: Option<&Path>, exec: Execution) -> Result<(), Failure> {
    let f: BiLaurent = text
        .parse()
        .map_err(|e| Failure::Usage(format!("{text:?}: {e}")))?;
    let report = solve_generic(&f, max_terms, exec).map_err(pipeline_failure)?;
    if let Some(p) = output {
        let json = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        write_out(Some(p), &json)?;
    }
    let n = report.solution_modulus;
    let mut text = format!("{} solutions at N = {n}\n", report.solutions.len());
    for (a, b) in &report.solutions {
        text.push_str(&format!("({a}, {b}, {n})\n"));
    }
    write_out(None, &text)
}

fn describe_angles(tp: &TrianglePoints, precision: f64) -> Result<String, Failure> {
    let precision = precision.max(1e-14);
    let iv = angles(tp, precision).map_err(|e| Failure::Math(e.to_string()))?;
    let mut s = String::new();
    for (v, a) in ["A", "B", "C"].iter().zip(iv) {
        s.push_str(&format!(
            "angle {v}: [{:.15}, {:.15}] rad ({:.9} deg)\n",
            a.lo,
            a.hi,
            a.mid().to_degrees()
        ));
    }
    Ok(s)
}

fn cmd_geometry(target: &str, svg: Option<&Path>, precision: f64) -> Result<(), Failure> {
    if !(precision.is_finite() && precision > 0.0) {
        return Err(Failure::Usage("--precision must be a positive number".into()));
    }
    let mut out = String::new();
    let mut failures = Vec::new();
    let figure = if let Ok(named) = target.parse::<NamedTriangle>() {
        let t = named.tangency();
        let tp = triangle_from_tangency(&t).map_err(|e| Failure::Math(e.to_string()))?;
        out.push_str(&format!("{named}: tangency {t}, tangency triangle acute: {}\n", t.is_acute()));
        for (l, r) in named.claims() {
            let c = check_equality(&tp, l, r).map_err(|e| Failure::Math(e.to_string()))?;
            out.push_str(&format!("{:<6} {c}\n", if c.holds { "holds" } else { "FAILS" }));
            if !c.holds {
                failures.push(c.to_string());
            }
        }
        out.push_str(&describe_angles(&tp, precision)?);
        let w = sharygin_angle_window(&tp).map_err(|e| Failure::Math(e.to_string()))?;
        out.push_str(&format!("sharygin window: {}\n", serde_json::to_string(&w).unwrap_or_default().trim_matches('"')));
        figure_coordinates(named, precision.max(1e-9)).map_err(|e| Failure::Math(e.to_string()))?
    } else {
        let t: TangencyTriple = target.parse().map_err(|e: unity_sieve::geometry::GeometryError| {
            Failure::Usage(format!("{e}; expected heptagonal, pentadecagonal1, pentadecagonal2 or a,b,c@N"))
        })?;
        let tp = triangle_from_tangency(&t).map_err(|e| Failure::Usage(e.to_string()))?;
        out.push_str(&format!("tangency {t}, tangency triangle acute: {}\n", t.is_acute()));
        let sides = squared_sides(&tp).map_err(|e| Failure::Math(e.to_string()))?;
        for (name, s) in ["|BC|^2", "|CA|^2", "|AB|^2"].iter().zip(&sides) {
            out.push_str(&format!("{name} = {s}\n"));
        }
        let all_equal = sides[0] == sides[1] && sides[1] == sides[2];
        out.push_str(&format!("all sides equal: {all_equal}\n"));
        let mut highlighted = Vec::new();
        for (tri, iso) in isosceles_bisectral(&tp).map_err(|e| Failure::Math(e.to_string()))? {
            let label: String = tri.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("bisectral {label} isosceles: {iso}\n"));
            if iso {
                highlighted.push(tri);
            }
        }
        out.push_str(&describe_angles(&tp, precision)?);
        figure_for(&tp, &t.to_string(), highlighted, precision.max(1e-9))
    };
    if let Some(p) = svg {
        write_out(Some(p), &figure.svg)?;
    }
    write_out(None, &out)?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Math(format!("claims failed: {}", failures.join(", "))))
    }
}

fn cmd_resultant(var: Var) -> Result<(), Failure> {
    let mut input = String::new();
    io::stdin()
        .read_to_string(&mut input)
        .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    let lines: Vec<&str> = input.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let [a, b] = lines[..] else {
        return Err(Failure::Usage(format!("expected two polynomials on stdin, got {}", lines.len())));
    };
    let parse = |s: &str| s.parse::<BiLaurent>().map_err(|e| Failure::Usage(format!("{s:?}: {e}")));
    let (f, g) = (parse(a)?, parse(b)?);
    let r = match var {
        Var::Y => resultant_wrt_y(&f, &g),
        Var::X => resultant_wrt_x(&f, &g),
    }
    .map_err(|e| Failure::Math(e.to_string()))?;
    let text = match var {
        Var::Y => format!("{r}\n"),
        // the result is a polynomial in y
        Var::X => format!("{}\n", r.to_string().replace('x', "y")),
    };
    write_out(None, &text)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = execution(cli.jobs)?;
    let usage = |e: String| Failure::Usage(e);
    match cli.command {
        Command::Prove { route, output, modulus_override } => {
            cmd_prove(route, output.as_deref(), modulus_override, exec, cli.verbose)
        }
        Command::Solve { polynomial, max_terms, output } => {
            cmd_solve(&polynomial, max_terms, output.as_deref(), exec)
        }
        Command::Geometry { target, svg, precision } => cmd_geometry(&target, svg.as_deref(), precision),
        Command::Ramanujan { n, k } => {
            let v = ramanujan_sum(n, k).map_err(|e| usage(e.to_string()))?;
            write_out(None, &format!("{v}\n"))
        }
        Command::Mobius { n } => {
            let v = moebius(n).map_err(|e| usage(e.to_string()))?;
            write_out(None, &format!("{v}\n"))
        }
        Command::Cyclotomic { n } => {
            if n == 0 || n > MAX_OVERRIDE {
                return Err(usage(format!("n must lie in 1..={MAX_OVERRIDE}")));
            }
            write_out(None, &format!("{}\n", cyclotomic_poly(n)))
        }
        Command::Resultant { var } => cmd_resultant(var),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Math(m) => eprintln!("error: {m}"),
                Failure::Usage(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
