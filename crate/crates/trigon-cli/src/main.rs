//! Command line interface for exact Ising groundstate counting on convex
//! polygon triangulations.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trigon::{
    brute_count_satisfying, catalan, ceil_phi_power, count_intersecting_sets, degeneracy,
    dual_tree, dual_tree_dot, enumerate_triangulations, evaluate_plan, one_interior_count,
    ops_string, parse_ops, parse_tri, phi_power_leq, sample_triangulation, satisfying_vector,
    satisfying_vector_at, serialize_tri, strip_count, triangulation_dot, triangulation_rank,
    unrank_triangulation, BigCount, BoundaryEdge, Op, Plan, Triangulation,
};

#[derive(Parser)]
#[command(
    name = "trigon",
    version,
    about = "Exact Ising groundstate counting on triangulations of a convex polygon"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the satisfying states of a triangulation.
    Count(CountArgs),
    /// Build a merge-free strip and report its count, 2 F(n+1).
    Strip(StripArgs),
    /// List all triangulations of an n-gon as TSV: n, rank, interior faces, count.
    Enumerate(EnumerateArgs),
    /// Sample triangulations uniformly at random.
    Random(RandomArgs),
    /// Re-check the counting machinery against oracles, formulas, and bounds.
    Verify(VerifyArgs),
    /// Print the closed-form count bounds for a polygon size.
    Bounds(BoundsArgs),
    /// Export a triangulation or its dual tree as GraphViz DOT.
    ExportDot(ExportDotArgs),
    /// Print a Fibonacci or Lucas number.
    Fib(FibArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["file", "stdin"])))]
struct InputArgs {
    /// Read the .tri description from this file.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
    /// Read the .tri description from standard input.
    #[arg(long)]
    stdin: bool,
}

impl InputArgs {
    fn read(&self) -> Result<String, String> {
        if let Some(path) = &self.file {
            fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
        } else {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(text)
        }
    }

    fn read_triangulation(&self) -> Result<Triangulation, String> {
        parse_tri(&self.read()?).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Emit one JSON object instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["n", "ops"])))]
struct StripArgs {
    /// Polygon size; the operation sequence is sampled from the seed.
    #[arg(long)]
    n: Option<usize>,
    /// Explicit operation letters, e.g. "WZZ".
    #[arg(long)]
    ops: Option<String>,
    /// Seed for sampling the operation sequence.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Polygon size, between 3 and 16.
    #[arg(long)]
    n: usize,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    /// Canonical .tri blocks separated by blank lines.
    Tri,
    /// One line per sample: n, rank, interior faces, count.
    Tsv,
}

#[derive(Args)]
struct RandomArgs {
    /// Polygon size, at least 3.
    #[arg(long)]
    n: usize,
    /// Random seed; the sample stream is fully determined by it.
    #[arg(long)]
    seed: u64,
    /// Number of samples to draw.
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Tri)]
    format: OutputFormat,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Exhaustive transfer vs brute-force vs intersecting-set counts.
    Oracle,
    /// Strip and one-interior closed formulas.
    Formulas,
    /// Golden-ratio lower bounds on enumerated and random instances.
    Bounds,
    /// Everything above.
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest polygon size for the exhaustive sweeps (oracle mode caps at 14).
    #[arg(long, default_value_t = 10)]
    n_max: usize,
    #[arg(long, value_enum, default_value_t = Mode::All)]
    mode: Mode,
    /// Random instances for the bounds mode.
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Largest random polygon size for the bounds mode.
    #[arg(long, default_value_t = 300)]
    rand_n_max: usize,
    /// Seed for every randomized part.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Worker threads for the sweeps.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Polygon size, at least 3.
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct ExportDotArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Draw the dual tree instead of the polygon.
    #[arg(long)]
    dual: bool,
}

#[derive(Args)]
struct FibArgs {
    /// Index into the sequence.
    k: usize,
    /// Print the Lucas number instead.
    #[arg(long)]
    lucas: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Count(args) => cmd_count(&args)?,
        Command::Strip(args) => cmd_strip(&args)?,
        Command::Enumerate(args) => cmd_enumerate(&args)?,
        Command::Random(args) => cmd_random(&args)?,
        Command::Verify(args) => return cmd_verify(&args),
        Command::Bounds(args) => cmd_bounds(&args)?,
        Command::ExportDot(args) => cmd_export_dot(&args)?,
        Command::Fib(args) => cmd_fib(&args),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_count(args: &CountArgs) -> Result<(), String> {
    let t = args.input.read_triangulation()?;
    let vector = satisfying_vector_at(&t, BoundaryEdge::base())
        .expect("(0, 1) is a boundary edge of every polygon");
    let g = vector.total();
    let m = t.interior_face_count();
    let entries: Vec<String> = vector.0.iter().map(|c| c.to_string()).collect();
    if args.json {
        let quoted: Vec<String> = entries.iter().map(|e| format!("\"{e}\"")).collect();
        println!(
            "{{\"n\":{},\"m\":{},\"g\":\"{}\",\"vector\":[{}]}}",
            t.n(),
            m,
            g,
            quoted.join(",")
        );
    } else {
        println!("n {}", t.n());
        println!("m {m}");
        println!("g {g}");
        println!("vector {}", entries.join(" "));
    }
    Ok(())
}

fn random_ops(rng: &mut ChaCha8Rng, len: usize) -> Vec<Op> {
    (0..len)
        .map(|_| if rng.next_u64() % 2 == 0 { Op::W } else { Op::Z })
        .collect()
}

fn cmd_strip(args: &StripArgs) -> Result<(), String> {
    let ops = match (&args.ops, args.n) {
        (Some(text), _) => parse_ops(text).map_err(|e| e.to_string())?,
        (None, Some(n)) => {
            if n < 2 {
                return Err(format!("a strip needs n >= 2, got {n}"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            random_ops(&mut rng, n - 2)
        }
        (None, None) => unreachable!("clap enforces the source group"),
    };
    let n = ops.len() + 2;
    let vector = satisfying_vector(&Plan::from_ops(&ops));
    let g = vector.total();
    assert_eq!(
        g,
        strip_count(n).expect("n >= 2"),
        "strip total must match the closed form"
    );
    let letters = ops_string(&ops);
    println!("ops {}", if letters.is_empty() { "-" } else { &letters });
    println!("n {n}");
    println!("g {g}");
    let entries: Vec<String> = vector.0.iter().map(|c| c.to_string()).collect();
    println!("vector {}", entries.join(" "));
    Ok(())
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<(), String> {
    let stream = enumerate_triangulations(args.n).map_err(|e| e.to_string())?;
    for (rank, t) in stream.enumerate() {
        println!(
            "{}\t{}\t{}\t{}",
            args.n,
            rank,
            t.interior_face_count(),
            degeneracy(&t)
        );
    }
    Ok(())
}

fn cmd_random(args: &RandomArgs) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for i in 0..args.count {
        let t = sample_triangulation(args.n, &mut rng).map_err(|e| e.to_string())?;
        match args.format {
            OutputFormat::Tri => {
                if i > 0 {
                    println!();
                }
                print!("{}", serialize_tri(&t));
            }
            OutputFormat::Tsv => {
                println!(
                    "{}\t{}\t{}\t{}",
                    args.n,
                    triangulation_rank(&t),
                    t.interior_face_count(),
                    degeneracy(&t)
                );
            }
        }
    }
    Ok(())
}

fn cmd_bounds(args: &BoundsArgs) -> Result<(), String> {
    let n = args.n;
    if n < 3 {
        return Err(format!("bounds need n >= 3, got {n}"));
    }
    let strip = strip_count(n).expect("n >= 3");
    let ceiling = ceil_phi_power(n as u64 + 4);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    println!("n {n}");
    println!("strip {strip}");
    println!("bound_ceiling {ceiling}");
    println!(
        "strip_clears_bound {} approx {:.2}",
        phi_power_leq(&strip, n as u64 + 4),
        phi.powf((n as f64 + 4.0) / 2.0)
    );
    if n / 2 >= 2 {
        for m in 0..=(n / 2 - 2) {
            // The decision is the exact integer test phi^(n-m) >= phi^((n+4)/2).
            let clears = 2 * (n - m) >= n + 4;
            println!(
                "m {m} clears_bound {clears} approx {:.2}",
                phi.powi((n - m) as i32)
            );
        }
    }
    Ok(())
}

fn cmd_export_dot(args: &ExportDotArgs) -> Result<(), String> {
    let t = args.input.read_triangulation()?;
    if args.dual {
        let tree = dual_tree(&t).map_err(|e| e.to_string())?;
        print!("{}", dual_tree_dot(&tree));
    } else {
        print!("{}", triangulation_dot(&t));
    }
    Ok(())
}

fn cmd_fib(args: &FibArgs) {
    if args.lucas {
        println!("{}", trigon::lucas(args.k));
    } else {
        println!("{}", trigon::fibonacci(args.k));
    }
}

/// One failed verification check; ordering follows the instance id.
struct Failure {
    n: usize,
    rank: BigCount,
    check: &'static str,
    expected: String,
    got: String,
    dump: String,
}

fn failure(t: &Triangulation, check: &'static str, expected: String, got: String) -> Failure {
    Failure {
        n: t.n(),
        rank: triangulation_rank(t),
        check,
        expected,
        got,
        dump: serialize_tri(t),
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    if args.jobs == 0 {
        return Err("--jobs must be at least 1".into());
    }
    if !(3..=16).contains(&args.n_max) {
        return Err(format!("--n-max must be within 3..=16, got {}", args.n_max));
    }
    if matches!(args.mode, Mode::Oracle | Mode::All) && args.n_max > 14 {
        return Err("oracle mode supports --n-max up to 14".into());
    }
    if args.rand_n_max < 3 {
        return Err(format!("--rand-n-max must be at least 3, got {}", args.rand_n_max));
    }

    let mut failures = Vec::new();
    if matches!(args.mode, Mode::Oracle | Mode::All) {
        let (checked, mut found) = verify_oracle(args);
        println!("oracle: {checked} triangulations checked up to n = {}", args.n_max);
        failures.append(&mut found);
    }
    if matches!(args.mode, Mode::Formulas | Mode::All) {
        let (strips, chains, sectors, mut found) = verify_formulas(args);
        println!("formulas: {strips} strips, {chains} chains, {sectors} sector triples checked");
        failures.append(&mut found);
    }
    if matches!(args.mode, Mode::Bounds | Mode::All) {
        let (enumerated, sampled, mut found) = verify_bounds(args);
        println!("bounds: {enumerated} enumerated and {sampled} random instances checked");
        failures.append(&mut found);
    }

    if failures.is_empty() {
        println!("verify PASS");
        return Ok(ExitCode::SUCCESS);
    }
    failures.sort_by(|a, b| {
        (a.n, &a.rank, a.check).cmp(&(b.n, &b.rank, b.check))
    });
    let first = &failures[0];
    eprintln!(
        "verify failure: {} at id {}:{}",
        first.check, first.n, first.rank
    );
    eprintln!("expected {}", first.expected);
    eprintln!("got {}", first.got);
    eprint!("{}", first.dump);
    println!("verify FAIL ({} failed checks)", failures.len());
    Ok(ExitCode::from(1))
}

fn verify_oracle(args: &VerifyArgs) -> (u64, Vec<Failure>) {
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for n in 3..=args.n_max {
        let total = u64::try_from(&catalan(n - 2)).expect("n <= 14");
        let jobs = args.jobs.min(total as usize).max(1);
        std::thread::scope(|scope| {
            let workers: Vec<_> = (0..jobs)
                .map(|j| {
                    scope.spawn(move || {
                        let mut local = Vec::new();
                        let mut count = 0u64;
                        let mut rank = j as u64;
                        while rank < total {
                            let t = unrank_triangulation(n, &BigCount::from(rank))
                                .expect("rank below the Catalan total");
                            let mut g = degeneracy(&t);
                            if args.inject_fault && n == 4 && rank == 0 {
                                g += 1u32;
                            }
                            let brute =
                                brute_count_satisfying(&t).expect("size capped by --n-max");
                            if g != brute {
                                local.push(failure(
                                    &t,
                                    "transfer count vs brute force",
                                    brute.to_string(),
                                    g.to_string(),
                                ));
                            }
                            let doubled =
                                count_intersecting_sets(&t).expect("size capped by --n-max")
                                    * 2u32;
                            if g != doubled {
                                local.push(failure(
                                    &t,
                                    "transfer count vs intersecting sets",
                                    doubled.to_string(),
                                    g.to_string(),
                                ));
                            }
                            count += 1;
                            rank += jobs as u64;
                        }
                        (count, local)
                    })
                })
                .collect();
            for worker in workers {
                let (count, mut local) = worker.join().expect("verify worker");
                checked += count;
                failures.append(&mut local);
            }
        });
    }
    (checked, failures)
}

fn verify_formulas(args: &VerifyArgs) -> (u64, u64, u64, Vec<Failure>) {
    let mut failures = Vec::new();

    let mut strips = 0u64;
    for n in 3..=args.n_max {
        let expected = strip_count(n).expect("n >= 3");
        for t in enumerate_triangulations(n).expect("n capped at 16") {
            if t.interior_face_count() > 0 {
                continue;
            }
            let g = degeneracy(&t);
            if g != expected {
                failures.push(failure(
                    &t,
                    "strip count vs 2 F(n+1)",
                    expected.to_string(),
                    g.to_string(),
                ));
            }
            strips += 1;
        }
    }

    let mut chains = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for trial in 0..60u64 {
        let n = if trial == 0 {
            500
        } else {
            3 + (rng.next_u64() % 498) as usize
        };
        let ops = random_ops(&mut rng, n - 2);
        let total = satisfying_vector(&Plan::from_ops(&ops)).total();
        let expected = strip_count(n).expect("n >= 3");
        if total != expected {
            let (t, _) = evaluate_plan(&Plan::from_ops(&ops));
            failures.push(failure(
                &t,
                "chain count vs 2 F(n+1)",
                expected.to_string(),
                total.to_string(),
            ));
        }
        chains += 1;
    }

    let mut sectors = 0u64;
    for n1 in 2..=8usize {
        for n2 in 2..=8usize {
            for n3 in 2..=8usize {
                let mut plan = Plan::merge(
                    Plan::from_ops(&vec![Op::W; n1 - 1]),
                    Plan::from_ops(&vec![Op::Z; n2 - 1]),
                );
                for k in 0..n3 - 1 {
                    plan = Plan::apply(if k % 2 == 0 { Op::W } else { Op::Z }, plan);
                }
                let (t, _) = evaluate_plan(&plan);
                let expected = one_interior_count(n1, n2, n3).expect("sectors >= 2");
                if t.interior_face_count() != 1 {
                    failures.push(failure(
                        &t,
                        "one-interior construction",
                        "1 interior face".to_string(),
                        t.interior_face_count().to_string(),
                    ));
                }
                let g = degeneracy(&t);
                if g != expected {
                    failures.push(failure(
                        &t,
                        "one-interior count vs closed form",
                        expected.to_string(),
                        g.to_string(),
                    ));
                }
                sectors += 1;
            }
        }
    }

    (strips, chains, sectors, failures)
}

fn verify_bounds(args: &VerifyArgs) -> (u64, u64, Vec<Failure>) {
    let mut failures = Vec::new();

    let mut enumerated = 0u64;
    for n in 3..=args.n_max {
        for t in enumerate_triangulations(n).expect("n capped at 16") {
            check_bounds(&t, &mut failures);
            enumerated += 1;
        }
    }

    let mut sampled = 0u64;
    let jobs = args.jobs.min(args.samples.max(1) as usize).max(1);
    std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|j| {
                scope.spawn(move || {
                    let mut local = Vec::new();
                    let mut count = 0u64;
                    let mut index = j as u64;
                    while index < args.samples {
                        // One generator per sample keeps results independent
                        // of the worker count.
                        let mut rng = ChaCha8Rng::seed_from_u64(args.seed.wrapping_add(index));
                        let n = 3 + (rng.next_u64() % (args.rand_n_max as u64 - 2)) as usize;
                        let t = sample_triangulation(n, &mut rng).expect("n >= 3");
                        check_bounds(&t, &mut local);
                        count += 1;
                        index += jobs as u64;
                    }
                    (count, local)
                })
            })
            .collect();
        for worker in workers {
            let (count, mut local) = worker.join().expect("verify worker");
            sampled += count;
            failures.append(&mut local);
        }
    });

    (enumerated, sampled, failures)
}

fn check_bounds(t: &Triangulation, failures: &mut Vec<Failure>) {
    let n = t.n();
    let m = t.interior_face_count();
    let g = degeneracy(t);
    if !phi_power_leq(&g, n as u64 + 4) {
        failures.push(failure(
            t,
            "bound g >= phi^((n+4)/2)",
            format!("at least ceil(phi^({} / 2)) = {}", n + 4, ceil_phi_power(n as u64 + 4)),
            g.to_string(),
        ));
    }
    if !phi_power_leq(&g, 2 * (n - m) as u64) {
        failures.push(failure(
            t,
            "bound g >= phi^(n - m)",
            format!("at least ceil(phi^{}) = {}", n - m, ceil_phi_power(2 * (n - m) as u64)),
            g.to_string(),
        ));
    }
}
