use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use latin_autotopy::autotopy::{autotopy_group_parallel, pivot_optimize};
use latin_autotopy::bounds::BoundReport;
use latin_autotopy::solver::{SolverOptions, SolverRegistry};
use latin_autotopy::{
    autotopy_group, compute_invariants, jm_random_indexed, verify_autotopism, CycleSearch, Error,
    Isotopism, LatinSquare, Permutation,
};
use serde_json::{json, Number, Value};

/// Autotopy groups of Latin squares.
#[derive(Parser)]
#[command(name = "autotopy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Computes the autotopy group of a square
    Compute {
        file: PathBuf,
        /// Emit the group as JSON
        #[arg(long)]
        json: bool,
        /// Examine candidate matrices in parallel
        #[arg(long)]
        parallel: bool,
        /// Strategy to run (cycle, pivot or brute)
        #[arg(long, default_value = SolverRegistry::DEFAULT)]
        algorithm: String,
    },
    /// Prints every upper bound next to the actual group order
    Bounds {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generates random squares with the Jacobson-Matthews walk
    Gen {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        /// Reduce each square before printing
        #[arg(long)]
        reduced: bool,
        /// Write one file per square into this directory instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs the exhaustive reference search
    Oracle {
        file: PathBuf,
        /// Lift the order limit
        #[arg(long)]
        force: bool,
    },
    /// Checks whether an isotopism fixes a square
    Verify { square: PathBuf, isotopism: PathBuf },
    /// Times the group computation on random reduced squares
    Bench {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        parallel: bool,
    },
    /// Dumps the cycle-structure invariants as JSON
    Invariants { file: PathBuf },
}

enum Failure {
    Input(String),
    Guard(String),
}

impl Failure {
    fn from_core(context: &str, err: Error) -> Self {
        match err {
            Error::OrderGuard { .. } => Failure::Guard(err.to_string()),
            _ => Failure::Input(format!("{context}: {err}")),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute {
            file,
            json,
            parallel,
            algorithm,
        } => compute(&file, json, parallel, &algorithm),
        Command::Bounds { file, json } => bounds(&file, json),
        Command::Gen {
            n,
            seed,
            count,
            reduced,
            out,
        } => gen(n as usize, seed, count, reduced, out.as_deref()),
        Command::Oracle { file, force } => oracle(&file, force),
        Command::Verify { square, isotopism } => verify(&square, &isotopism),
        Command::Bench {
            n,
            count,
            seed,
            parallel,
        } => bench(n as usize, count, seed, parallel),
        Command::Invariants { file } => invariants(&file),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn read_parsed<T: FromStr<Err = Error>>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|err| Failure::Input(format!("{}: {err}", path.display())))?;
    text.parse()
        .map_err(|err| Failure::from_core(&path.display().to_string(), err))
}

/// The square itself when reduced, otherwise its reduced isotope (with a notice).
fn reduced_square(path: &Path) -> Result<LatinSquare, Failure> {
    let square: LatinSquare = read_parsed(path)?;
    if square.is_reduced() {
        return Ok(square);
    }
    eprintln!(
        "note: {} is not reduced; using its reduced isotope",
        path.display()
    );
    Ok(square.reduce().0)
}

fn cycles_comment(label: &str, p: &Permutation) -> String {
    let images: Vec<String> = p.images().iter().map(usize::to_string).collect();
    format!("{}  # {label} {p}\n", images.join(" "))
}

fn compute(path: &Path, json: bool, parallel: bool, algorithm: &str) -> Outcome {
    let context = path.display().to_string();
    let square: LatinSquare = read_parsed(path)?;
    let registry = SolverRegistry::builtin(SolverOptions {
        parallel,
        allow_large: false,
    });
    let solver = registry
        .get(algorithm)
        .map_err(|err| Failure::Input(err.to_string()))?;
    let group = solver
        .solve(&square)
        .map_err(|err| Failure::from_core(&context, err))?;
    if json {
        let text = serde_json::to_string_pretty(&group).expect("groups serialize");
        return Ok(text + "\n");
    }

    let reduced = if square.is_reduced() {
        square
    } else {
        eprintln!("note: {context} is not reduced; the search ran on its reduced isotope");
        square.reduce().0
    };
    let search_err = |err| Failure::from_core(&context, err);
    let pivot = match algorithm {
        "cycle" => CycleSearch::new(&reduced)
            .map_err(search_err)?
            .pivot_row()
            .to_string(),
        "pivot" => {
            let pivoted = pivot_optimize(&reduced).map_err(search_err)?;
            let l = CycleSearch::new(&pivoted.square)
                .map_err(search_err)?
                .pivot_row();
            format!("{l} (of the line-pair isotope)")
        }
        _ => "none".to_string(),
    };

    let mut out = String::new();
    writeln!(out, "group_order: {}", group.len()).unwrap();
    writeln!(out, "pivot_row: {pivot}").unwrap();
    for (idx, theta) in group.elements().iter().enumerate() {
        writeln!(out, "\n# autotopism {}", idx + 1).unwrap();
        out += &cycles_comment("alpha", &theta.alpha);
        out += &cycles_comment("beta", &theta.beta);
        out += &cycles_comment("gamma", &theta.gamma);
    }
    Ok(out)
}

fn big_number(value: &impl ToString) -> Value {
    Value::Number(Number::from_str(&value.to_string()).expect("decimal integers are valid JSON"))
}

fn bounds(path: &Path, json: bool) -> Outcome {
    let context = path.display().to_string();
    let square = reduced_square(path)?;
    let report = BoundReport::compute(&square).map_err(|err| Failure::from_core(&context, err))?;
    let order = autotopy_group(&square)
        .map_err(|err| Failure::from_core(&context, err))?
        .len();
    if json {
        let value = json!({
            "n": report.n,
            "bsw": big_number(&report.bsw),
            "parity": big_number(&report.parity),
            "partition": big_number(&report.partition),
            "thm41": big_number(&report.thm41),
            "thm41_pivot": report.thm41_pivot,
            "thm51": big_number(&report.thm51),
            "thm51_k": report.thm51_k,
            "group_order": order,
        });
        return Ok(serde_json::to_string_pretty(&value).expect("values serialize") + "\n");
    }
    let mut out = String::new();
    writeln!(out, "n: {}", report.n).unwrap();
    writeln!(out, "bsw: {}", report.bsw).unwrap();
    writeln!(out, "parity: {}", report.parity).unwrap();
    writeln!(out, "partition: {}", report.partition).unwrap();
    writeln!(
        out,
        "thm41: {} (pivot row {})",
        report.thm41, report.thm41_pivot
    )
    .unwrap();
    writeln!(out, "thm51: {} (k = {})", report.thm51, report.thm51_k).unwrap();
    writeln!(out, "group_order: {order}").unwrap();
    Ok(out)
}

fn gen(n: usize, seed: u64, count: u64, reduced: bool, dir: Option<&Path>) -> Outcome {
    if let Some(dir) = dir {
        fs::create_dir_all(dir)
            .map_err(|err| Failure::Input(format!("{}: {err}", dir.display())))?;
    }
    let width = (count - 1).to_string().len();
    let mut out = String::new();
    for index in 0..count {
        let square = jm_random_indexed(n, seed, index, reduced);
        let text = format!("# n = {n}, seed = {seed}, index = {index}\n{square}");
        match dir {
            Some(dir) => {
                let file = dir.join(format!("square_{index:0width$}.txt"));
                fs::write(&file, text)
                    .map_err(|err| Failure::Input(format!("{}: {err}", file.display())))?;
                writeln!(out, "{}", file.display()).unwrap();
            }
            None => {
                if index > 0 {
                    out.push('\n');
                }
                out += &text;
            }
        }
    }
    Ok(out)
}

fn oracle(path: &Path, force: bool) -> Outcome {
    let square: LatinSquare = read_parsed(path)?;
    let registry = SolverRegistry::builtin(SolverOptions {
        parallel: false,
        allow_large: force,
    });
    let group = registry
        .get("brute")
        .and_then(|solver| solver.solve(&square))
        .map_err(|err| Failure::from_core(&path.display().to_string(), err))?;
    Ok(format!("group_order: {}\n", group.len()))
}

fn verify(square_path: &Path, theta_path: &Path) -> Outcome {
    let square: LatinSquare = read_parsed(square_path)?;
    let theta: Isotopism = read_parsed(theta_path)?;
    if theta.order() != square.order() {
        return Err(Failure::Input(format!(
            "{}: isotopism has order {}, square has order {}",
            theta_path.display(),
            theta.order(),
            square.order()
        )));
    }
    let verdict = if verify_autotopism(&square, &theta) {
        "member"
    } else {
        "non-member"
    };
    Ok(format!("{verdict}\n"))
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn bench(n: usize, count: u64, seed: u64, parallel: bool) -> Outcome {
    let squares: Vec<LatinSquare> = (0..count)
        .map(|index| jm_random_indexed(n, seed, index, true))
        .collect();
    let mut times = Vec::with_capacity(squares.len());
    let mut nontrivial = 0;
    for square in &squares {
        let start = Instant::now();
        let group = if parallel {
            autotopy_group_parallel(square)
        } else {
            autotopy_group(square)
        }
        .expect("generated squares are reduced");
        times.push(start.elapsed());
        if group.len() > 1 {
            nontrivial += 1;
        }
    }
    let total: Duration = times.iter().sum();
    times.sort();
    let mid = times.len() / 2;
    let median = if times.len().is_multiple_of(2) {
        (times[mid - 1] + times[mid]) / 2
    } else {
        times[mid]
    };

    let mut out = String::new();
    writeln!(out, "order: {n}").unwrap();
    writeln!(
        out,
        "squares: {count} (seed {seed}, {nontrivial} with a nontrivial group)"
    )
    .unwrap();
    writeln!(out, "min_ms: {:.4}", millis(times[0])).unwrap();
    writeln!(out, "median_ms: {:.4}", millis(median)).unwrap();
    writeln!(out, "mean_ms: {:.4}", millis(total) / times.len() as f64).unwrap();
    writeln!(out, "max_ms: {:.4}", millis(*times.last().unwrap())).unwrap();
    writeln!(out, "total_ms: {:.4}", millis(total)).unwrap();
    writeln!(
        out,
        "# times exclude generation. Batch timings over 20,000 squares per order and over a \
         corpus of squares with small nontrivial groups are not reproduced here (that corpus is \
         not available); compare per-square medians."
    )
    .unwrap();
    Ok(out)
}

fn invariants(path: &Path) -> Outcome {
    let square = reduced_square(path)?;
    let inv = compute_invariants(&square)
        .map_err(|err| Failure::from_core(&path.display().to_string(), err))?;
    Ok(serde_json::to_string_pretty(&inv).expect("invariants serialize") + "\n")
}
