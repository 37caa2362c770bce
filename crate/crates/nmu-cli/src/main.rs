mod format;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nmu_core::oracle::{
    brute_force_n2, brute_force_n2_unguarded, enumerate_posets, enumerate_posets_unguarded,
    exhaustive_extension_distribution, sample_extension_distribution, BruteForceResult,
};
use nmu_core::{
    canonical_key, chain_sort, classify_n2, is_sorted_along, nmu_check, CoverPair, Labeling, Mode,
    NmuFailure, Poset,
};

use format::{key_string, parse_cover_pair, parse_poset, write_cover_pair, ResultRecord};

const EXIT_INPUT: u8 = 2;
const EXIT_SIZE: u8 = 3;

#[derive(Parser)]
#[command(name = "nmu", about = "Chain-cover sorting and N2 classification for finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a poset: N2 membership with witness or obstruction.
    Classify(ClassifyArgs),
    /// Check the sorting property for one poset and cover pair.
    Verify(VerifyArgs),
    /// Sort a labeling along a chain cover (optionally both covers).
    Sort(SortArgs),
    /// Enumerate non-isomorphic posets as poset files.
    Enumerate(EnumerateArgs),
    /// Cross-validate the classifier against brute force over all small posets.
    Oracle(OracleArgs),
    /// Sample the distribution of double-sort outputs.
    Sample(SampleArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifyMode {
    Theorem,
    Bruteforce,
    Both,
}

#[derive(Args)]
struct ClassifyArgs {
    poset: PathBuf,
    #[arg(long, value_enum, default_value_t = ClassifyMode::Theorem)]
    mode: ClassifyMode,
    #[arg(long)]
    json: bool,
    /// Override size guards (exhaustive searches grow factorially).
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Labelings {
    Perms,
    Zeroone,
}

#[derive(Args)]
struct VerifyArgs {
    poset: PathBuf,
    pair: PathBuf,
    #[arg(long, value_enum, default_value_t = Labelings::Zeroone)]
    labelings: Labelings,
}

#[derive(Args)]
struct SortArgs {
    /// Poset file; mutually exclusive with --grid.
    #[arg(long, conflicts_with = "grid")]
    poset: Option<PathBuf>,
    /// Built-in grid poset, e.g. 3x4 (row-major ids, row and column covers).
    #[arg(long)]
    grid: Option<String>,
    /// Cover-pair file; defaults to rows/columns for --grid.
    #[arg(long)]
    cover: Option<PathBuf>,
    /// Comma-separated labels, one per element in id order.
    #[arg(long)]
    labels: String,
    /// Apply the second cover's sort after the first.
    #[arg(long)]
    twice: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    max_n: usize,
    #[arg(long)]
    connected: bool,
    /// Worker threads; defaults to NMU_JOBS or all cores.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SampleArgs {
    poset: PathBuf,
    pair: PathBuf,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate all n! labelings instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct CmdError {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

fn size_error(message: impl Into<String>) -> CmdError {
    CmdError {
        code: EXIT_SIZE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Sort(a) => cmd_sort(a),
        Command::Enumerate(a) => cmd_enumerate(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Sample(a) => cmd_sample(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn read_file(path: &PathBuf) -> Result<String, CmdError> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_poset(path: &PathBuf) -> Result<(String, Poset), CmdError> {
    parse_poset(&read_file(path)?).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_pair(path: &PathBuf, p: &Poset) -> Result<CoverPair, CmdError> {
    parse_cover_pair(&read_file(path)?, p)
        .map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| input_error(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn brute_force(p: &Poset, force: bool) -> Result<BruteForceResult, CmdError> {
    if force {
        if p.n() > nmu_core::oracle::BRUTE_FORCE_LIMIT {
            eprintln!(
                "warning: forcing brute force on {} elements; the pair search grows factorially",
                p.n()
            );
        }
        Ok(brute_force_n2_unguarded(p))
    } else {
        brute_force_n2(p).map_err(|e| size_error(format!("{e}; pass --force to override")))
    }
}

fn cmd_classify(a: ClassifyArgs) -> Result<(), CmdError> {
    let (name, p) = load_poset(&a.poset)?;
    let theorem = if a.mode != ClassifyMode::Bruteforce {
        Some(classify_n2(&p))
    } else {
        None
    };
    let brute = if a.mode != ClassifyMode::Theorem {
        Some(brute_force(&p, a.force)?)
    } else {
        None
    };
    if a.json {
        let record = ResultRecord {
            key: key_string(&canonical_key(&p)),
            n: p.n(),
            n2: theorem
                .as_ref()
                .map(|c| c.in_n2)
                .or_else(|| brute.as_ref().map(|b| b.in_n2()))
                .unwrap(),
            n2_prime: theorem.as_ref().map(|c| c.in_n2_prime).unwrap_or(false),
            n2_doubleprime: theorem
                .as_ref()
                .map(|c| c.in_n2_doubleprime)
                .unwrap_or(false),
            brute_force_n2: brute.as_ref().map(|b| b.in_n2()),
            agree: match (&theorem, &brute) {
                (Some(t), Some(b)) => Some(t.in_n2 == b.in_n2()),
                _ => None,
            },
        };
        println!("{}", serde_json::to_string(&record).unwrap());
        return Ok(());
    }
    println!("poset {name}: {} elements", p.n());
    if let Some(c) = &theorem {
        println!("n2 = {}", c.in_n2);
        println!("n2_prime = {}", c.in_n2_prime);
        println!("n2_doubleprime = {}", c.in_n2_doubleprime);
        for comp in &c.components {
            if let Some(w) = &comp.witness {
                println!(
                    "component {:?}: witness embedding Cyl_{{{},{}}}, covers:",
                    comp.elements, w.embedding.k, w.embedding.n
                );
                print!("{}", write_cover_pair(&w.pair));
            }
            if let Some(o) = &comp.obstruction {
                println!("component {:?}: obstruction {o:?}", comp.elements);
            }
        }
    }
    if let Some(b) = &brute {
        println!("brute_force_n2 = {} ({} pairs checked)", b.in_n2(), b.pairs_checked);
        if let Some(w) = &b.witness {
            print!("{}", write_cover_pair(w));
        }
    }
    if let (Some(t), Some(b)) = (&theorem, &brute) {
        println!("deciders_agree = {}", t.in_n2 == b.in_n2());
    }
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CmdError> {
    let (name, p) = load_poset(&a.poset)?;
    let pair = load_pair(&a.pair, &p)?;
    let mode = match a.labelings {
        Labelings::Perms => Mode::Permutations,
        Labelings::Zeroone => Mode::ZeroOne,
    };
    let verdict = nmu_check(&p, &pair, mode);
    println!(
        "poset {name}: property {} ({} labelings checked)",
        if verdict.holds { "holds" } else { "fails" },
        verdict.labelings_checked
    );
    match &verdict.failure {
        Some(NmuFailure::EdgeCoverage { edge }) => {
            println!("reason: edge {} <. {} not covered by either cover", edge.0, edge.1);
        }
        Some(NmuFailure::Counterexample {
            labeling,
            sorted_first,
            violated_edge,
        }) => {
            println!("counterexample labeling: {labeling:?}");
            println!(
                "after sorting cover {} then the other, edge {} <. {} is out of order",
                sorted_first, violated_edge.0, violated_edge.1
            );
        }
        None => {}
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<(usize, usize), CmdError> {
    let parts: Vec<&str> = spec.split(['x', 'X']).collect();
    let dims: Vec<usize> = parts
        .iter()
        .filter_map(|s| s.parse().ok())
        .filter(|&d| d >= 1)
        .collect();
    if dims.len() != 2 || parts.len() != 2 {
        return Err(input_error(format!("bad grid spec {spec:?}; expected e.g. 3x4")));
    }
    Ok((dims[0], dims[1]))
}

fn parse_labels(s: &str, n: usize) -> Result<Labeling, CmdError> {
    let labels: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| input_error(format!("bad label list: {e}")))?;
    if labels.len() != n {
        return Err(input_error(format!(
            "expected {n} labels, got {}",
            labels.len()
        )));
    }
    Ok(labels)
}

fn print_labeling(p: &Poset, grid: Option<(usize, usize)>, lab: &[i64]) {
    match grid {
        Some((rows, cols)) => {
            for r in 0..rows {
                let row: Vec<String> = (0..cols)
                    .map(|c| lab[r * cols + c].to_string())
                    .collect();
                println!("{}", row.join(" "));
            }
        }
        None => {
            let flat: Vec<String> = p
                .elements()
                .map(|e| format!("{e}={}", lab[e - 1]))
                .collect();
            println!("{}", flat.join(" "));
        }
    }
}

fn cmd_sort(a: SortArgs) -> Result<(), CmdError> {
    let (p, grid, default_pair) = match (&a.poset, &a.grid) {
        (Some(path), None) => {
            let (_, p) = load_poset(path)?;
            (p, None, None)
        }
        (None, Some(spec)) => {
            let (rows, cols) = parse_grid(spec)?;
            let p = Poset::grid(rows, cols);
            let pair = CoverPair::from_covers(
                nmu_core::sorting::grid_row_cover(&p, rows, cols),
                nmu_core::sorting::grid_col_cover(&p, rows, cols),
            );
            (p, Some((rows, cols)), Some(pair))
        }
        _ => return Err(input_error("exactly one of --poset and --grid is required")),
    };
    let pair = match &a.cover {
        Some(path) => load_pair(path, &p)?,
        None => default_pair.ok_or_else(|| input_error("--cover is required with --poset"))?,
    };
    let labels = parse_labels(&a.labels, p.n())?;
    println!("input:");
    print_labeling(&p, grid, &labels);
    let once = chain_sort(&p, pair.first(), &labels);
    println!("after sorting cover 1:");
    print_labeling(&p, grid, &once);
    if a.twice {
        let twice = chain_sort(&p, pair.second(), &once);
        println!("after sorting cover 2:");
        print_labeling(&p, grid, &twice);
        if is_sorted_along(pair.first(), &twice) {
            println!("cover 1 is still sorted");
        } else {
            println!("cover 1 is no longer sorted");
        }
    }
    Ok(())
}

fn enumerate(max_n: usize, connected: bool, force: bool) -> Result<Vec<Poset>, CmdError> {
    if force {
        if max_n > nmu_core::oracle::ENUMERATION_LIMIT {
            eprintln!("warning: forcing enumeration up to {max_n} elements");
        }
        Ok(enumerate_posets_unguarded(max_n, connected))
    } else {
        enumerate_posets(max_n, connected)
            .map_err(|e| size_error(format!("{e}; pass --force to override")))
    }
}

fn cmd_enumerate(a: EnumerateArgs) -> Result<(), CmdError> {
    let posets = enumerate(a.max_n, a.connected, a.force)?;
    let mut out = String::new();
    for (i, p) in posets.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format::write_poset(&format!("p{}", i + 1), p));
    }
    let _ = writeln!(out, "\n# total {}", posets.len());
    write_output(&a.out, &out)
}

fn resolve_jobs(jobs: Option<usize>) -> Option<usize> {
    jobs.or_else(|| {
        std::env::var("NMU_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
}

fn cmd_oracle(a: OracleArgs) -> Result<(), CmdError> {
    let limit = nmu_core::oracle::BRUTE_FORCE_LIMIT;
    if a.max_n > limit && !a.force {
        return Err(size_error(format!(
            "oracle comparison is limited to {limit} elements (got {}); pass --force to override",
            a.max_n
        )));
    }
    let run = || nmu_core::oracle::oracle_compare_unguarded(a.max_n, a.connected);
    let report = match resolve_jobs(a.jobs) {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| input_error(e.to_string()))?
            .install(run),
        None => run(),
    };
    let mut out = String::new();
    let mut in_n2 = 0usize;
    for e in &report.entries {
        let record = ResultRecord {
            key: key_string(&e.key),
            n: e.poset.n(),
            n2: e.theorem_in_n2,
            n2_prime: classify_n2(&e.poset).in_n2_prime,
            n2_doubleprime: nmu_core::classify_n2_doubleprime(&e.poset),
            brute_force_n2: Some(e.brute_force_in_n2),
            agree: Some(e.theorem_in_n2 == e.brute_force_in_n2),
        };
        in_n2 += usize::from(e.theorem_in_n2);
        let _ = writeln!(out, "{}", serde_json::to_string(&record).unwrap());
    }
    let _ = writeln!(
        out,
        "# posets {} in_n2 {} mismatches {:?}",
        report.entries.len(),
        in_n2,
        report.mismatches
    );
    write_output(&a.out, &out)
}

fn cmd_sample(a: SampleArgs) -> Result<(), CmdError> {
    let (_, p) = load_poset(&a.poset)?;
    let pair = load_pair(&a.pair, &p)?;
    let verdict = nmu_check(&p, &pair, Mode::ZeroOne);
    if !verdict.holds {
        return Err(input_error(
            "the cover pair does not have the sorting property; refusing to sample",
        ));
    }
    let hist = if a.exhaustive {
        exhaustive_extension_distribution(&p, &pair)
    } else {
        sample_extension_distribution(&p, &pair, a.trials, a.seed)
    };
    let mut out = String::from("extension,count,frequency\n");
    for (lab, count) in &hist.counts {
        let ext: Vec<String> = lab.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(
            out,
            "{},{},{}",
            ext.join(" "),
            count,
            *count as f64 / hist.trials as f64
        );
    }
    write_output(&a.out, &out)
}
