//! Batch command-line interface for the exact-algebra toolkit.
//!
//! Exit codes: 0 success, 2 parse error, 3 validation failure, 4 field too
//! small for the requested algorithm, 5 internal invariant breach.
//! Reports go to stdout, warnings and errors to stderr; identical inputs
//! produce byte-identical outputs.

mod format;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use format::{parse_module, parse_pencil, parse_vector_arg, serialize_module};
use rankforge_core::completion::{check_max_rank, complete_max_rank, MaxRankOutcome, WitnessReport};
use rankforge_core::genmin::{
    cyclic_increment, generators_with_budget, minimize_generators, BudgetOutcome, CyclicStep,
};
use rankforge_core::matrix::standard_basis;
use rankforge_core::oracle::{
    oracle_max_completion_rank, oracle_max_cyclic_dim, oracle_min_generators, EnumerationCap,
};
use rankforge_core::smodule::{
    hom_basis, reduce_completion_to_cyclic, reduce_nonsingular_to_injective_hom,
    reduce_to_surjective_hom, CyclicReduction,
};
use rankforge_core::{Matrix, Pencil, Scalar, SpanBuilder};

#[derive(Parser)]
#[command(
    name = "rankforge",
    version,
    about = "Exact max-rank completion of rank-one matrix pencils and \
             module generator minimization over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find and certify a maximum-rank completion of a pencil
    Complete {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check whether an assignment already attains the maximum rank
    CheckMax {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated variable values
        #[arg(long)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute the minimum number of generators of a module
    MinGenerators {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find at most a given number of generators, or report insufficiency
    Generators {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run one cyclic-submodule improvement step at a vector
    CyclicStep {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated coordinates of the starting vector
        #[arg(long)]
        at: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute a basis of the homomorphism space between two modules
    HomBasis {
        #[arg(long, value_name = "FILE")]
        u: PathBuf,
        #[arg(long, value_name = "FILE")]
        v: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the dual module (actions transposed)
    Dualize {
        #[arg(long)]
        input: PathBuf,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Build a module-theoretic reduction of a pencil
    Reduce {
        kind: ReduceKind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
    },
    /// Exhaustive reference oracles
    Oracle {
        kind: OracleKind,
        #[arg(long)]
        input: PathBuf,
        /// Enumeration cap (default 2^24; RANKFORGE_CAP overrides)
        #[arg(long)]
        cap: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Cyclic,
    InjectiveHom,
    SurjectiveHom,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    MaxRank,
    Cyclic,
    MinGenerators,
}

struct Failure {
    code: u8,
    message: String,
}

fn parse_failure(message: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: message.to_string() }
}

fn validation_failure(message: impl std::fmt::Display) -> Failure {
    Failure { code: 3, message: message.to_string() }
}

fn core_failure(e: rankforge_core::Error) -> Failure {
    use rankforge_core::Error;
    let code = match e {
        Error::FieldTooSmall { .. } => 4,
        Error::DivisionByZero | Error::RankDidNotIncrease | Error::Internal(_) => 5,
        _ => 3,
    };
    Failure { code, message: e.to_string() }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| parse_failure(format!("cannot read {}: {e}", path.display())))
}

fn emit_warnings(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn csv(values: &[Scalar]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn values_json(values: &[Scalar]) -> serde_json::Value {
    json!(values.iter().map(|s| s.value()).collect::<Vec<u64>>())
}

fn matrix_json(m: &Matrix) -> serde_json::Value {
    json!((0..m.rows())
        .map(|r| m.row(r).iter().map(|s| s.value()).collect::<Vec<u64>>())
        .collect::<Vec<_>>())
}

fn witness_text(w: &WitnessReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("witness-dim-u={}\n", w.dim_u()));
    out.push_str(&format!("witness-dim-w={}\n", w.dim_w));
    out.push_str(&format!("witness-dim-lw={}\n", w.dim_lw));
    out.push_str("witness-basis:\n");
    out.push_str(&w.witness.basis().to_string());
    out.push_str(&format!(
        "rk = dimU - (dimW - dimLW): {} = {} - ({} - {})\n",
        w.rank,
        w.dim_u(),
        w.dim_w,
        w.dim_lw
    ));
    out
}

fn witness_json(w: &WitnessReport) -> serde_json::Value {
    json!({
        "rank": w.rank,
        "dim_u": w.dim_u(),
        "dim_w": w.dim_w,
        "dim_lw": w.dim_lw,
        "basis": matrix_json(w.witness.basis()),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Complete { input, json } => cmd_complete(&input, json),
        Command::CheckMax { input, at, json } => cmd_check_max(&input, &at, json),
        Command::MinGenerators { input, json } => cmd_min_generators(&input, json),
        Command::Generators { input, budget, json } => cmd_generators(&input, budget, json),
        Command::CyclicStep { input, at, json } => cmd_cyclic_step(&input, &at, json),
        Command::HomBasis { u, v, json } => cmd_hom_basis(&u, &v, json),
        Command::Dualize { input, output } => cmd_dualize(&input, output.as_deref()),
        Command::Reduce { kind, input, output_dir } => cmd_reduce(kind, &input, &output_dir),
        Command::Oracle { kind, input, cap, json } => cmd_oracle(kind, &input, cap, json),
    }
}

fn load_pencil(path: &Path) -> Result<Pencil, Failure> {
    let parsed = parse_pencil(&read_file(path)?).map_err(parse_failure)?;
    emit_warnings(&parsed.warnings);
    Ok(parsed.value)
}

fn load_module(path: &Path) -> Result<rankforge_core::SModule, Failure> {
    let parsed = parse_module(&read_file(path)?).map_err(parse_failure)?;
    emit_warnings(&parsed.warnings);
    Ok(parsed.value)
}

fn cmd_complete(input: &Path, json: bool) -> Result<(), Failure> {
    let pencil = load_pencil(input)?;
    let report = pencil.validate_rank_one();
    if !report.is_ok() {
        return Err(validation_failure(format!(
            "coefficient matrices at indices {:?} have rank greater than one",
            report.violations
        )));
    }
    for i in &report.zero_coefficients {
        eprintln!("warning: coefficient {i} is zero and is dropped from the generator list");
    }
    let out = complete_max_rank(&pencil).map_err(core_failure)?;
    if json {
        println!(
            "{}",
            json!({
                "rank": out.rank,
                "x": values_json(&out.assignment),
                "augmentations": out.augmentations,
                "padded_dim": out.pad.padded_dim,
                "witness": witness_json(&out.witness),
            })
        );
    } else {
        println!("rank={}", out.rank);
        println!("x={}", csv(&out.assignment));
        println!("augmentations={}", out.augmentations);
        if !out.pad.is_trivial() {
            println!("padded-dim={}", out.pad.padded_dim);
        }
        print!("{}", witness_text(&out.witness));
    }
    Ok(())
}

fn cmd_check_max(input: &Path, at: &str, json: bool) -> Result<(), Failure> {
    let pencil = load_pencil(input)?;
    let mut warnings = Vec::new();
    let x = parse_vector_arg(at, pencil.modulus(), &mut warnings).map_err(parse_failure)?;
    emit_warnings(&warnings);
    if x.len() != pencil.n_vars() {
        return Err(parse_failure(format!(
            "assignment has {} entries but the pencil has {} variables",
            x.len(),
            pencil.n_vars()
        )));
    }
    let h = pencil.evaluate(&x);
    let rank = h.rank();
    match check_max_rank(pencil.coefficients(), &h).map_err(core_failure)? {
        MaxRankOutcome::Certified(w) => {
            if json {
                println!(
                    "{}",
                    json!({ "verdict": "certified", "rank": rank, "witness": witness_json(&w) })
                );
            } else {
                println!("verdict=certified");
                println!("rank={rank}");
                print!("{}", witness_text(&w));
            }
        }
        MaxRankOutcome::NotCertified(chain) => {
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": "not-certified",
                        "rank": rank,
                        "escape_start": values_json(chain.start()),
                        "escape_generators": chain.generator_indices,
                        "escape_length": chain.len(),
                    })
                );
            } else {
                println!("verdict=not-certified");
                println!("rank={rank}");
                println!("escape-start={}", csv(chain.start()));
                println!(
                    "escape-generators={}",
                    chain
                        .generator_indices
                        .iter()
                        .map(ToString::to_string)
                        .collect::<Vec<_>>()
                        .join(",")
                );
                println!("escape-length={}", chain.len());
            }
        }
    }
    Ok(())
}

fn print_generators(generators: &[Vec<Scalar>]) {
    for (i, g) in generators.iter().enumerate() {
        println!("generator {i}: {}", csv(g));
    }
}

fn cmd_min_generators(input: &Path, json: bool) -> Result<(), Failure> {
    let module = load_module(input)?;
    let (count, generators) = minimize_generators(&module).map_err(core_failure)?;
    if json {
        println!(
            "{}",
            json!({
                "min_generators": count,
                "generators": generators.iter().map(|g| values_json(g)).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("min-generators={count}");
        print_generators(&generators);
    }
    Ok(())
}

fn cmd_generators(input: &Path, budget: usize, json: bool) -> Result<(), Failure> {
    let module = load_module(input)?;
    let run = generators_with_budget(&module, budget).map_err(core_failure)?;
    match run.outcome {
        BudgetOutcome::Generators(generators) => {
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": "found",
                        "budget": budget,
                        "count": generators.len(),
                        "generators": generators.iter().map(|g| values_json(g)).collect::<Vec<_>>(),
                        "search_steps": run.search_steps,
                    })
                );
            } else {
                println!("verdict=found");
                println!("budget={budget}");
                println!("count={}", generators.len());
                print_generators(&generators);
                println!("search-steps={}", run.search_steps);
            }
        }
        BudgetOutcome::Insufficient => {
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": "insufficient",
                        "budget": budget,
                        "search_steps": run.search_steps,
                    })
                );
            } else {
                println!("verdict=insufficient");
                println!("budget={budget}");
                println!("search-steps={}", run.search_steps);
            }
        }
    }
    Ok(())
}

fn cmd_cyclic_step(input: &Path, at: &str, json: bool) -> Result<(), Failure> {
    let module = load_module(input)?;
    let mut warnings = Vec::new();
    let u = parse_vector_arg(at, module.modulus(), &mut warnings).map_err(parse_failure)?;
    emit_warnings(&warnings);
    if u.len() != module.dim() {
        return Err(parse_failure(format!(
            "vector has {} entries but the module has dimension {}",
            u.len(),
            module.dim()
        )));
    }
    let alg = module.enveloping_algebra_basis();
    let closure_dim = module.submodule_closure(std::slice::from_ref(&u)).dim();
    match cyclic_increment(&module, &alg, &u).map_err(core_failure)? {
        CyclicStep::MaxCertified => {
            if json {
                println!("{}", json!({ "verdict": "max-certified", "closure_dim": closure_dim }));
            } else {
                println!("verdict=max-certified");
                println!("closure-dim={closure_dim}");
            }
        }
        CyclicStep::Improved(next) => {
            let next_dim = module.submodule_closure(std::slice::from_ref(&next)).dim();
            if json {
                println!(
                    "{}",
                    json!({
                        "verdict": "improved",
                        "closure_dim": closure_dim,
                        "u_next": values_json(&next),
                        "closure_dim_next": next_dim,
                    })
                );
            } else {
                println!("verdict=improved");
                println!("closure-dim={closure_dim}");
                println!("u-next={}", csv(&next));
                println!("closure-dim-next={next_dim}");
            }
        }
    }
    Ok(())
}

fn cmd_hom_basis(u_path: &Path, v_path: &Path, json: bool) -> Result<(), Failure> {
    let u = load_module(u_path)?;
    let v = load_module(v_path)?;
    if u.modulus() != v.modulus() {
        return Err(validation_failure(format!(
            "field mismatch: GF({}) vs GF({})",
            u.modulus(),
            v.modulus()
        )));
    }
    let basis = hom_basis(&u, &v).map_err(core_failure)?;
    if json {
        println!(
            "{}",
            json!({
                "hom_dim": basis.len(),
                "shape": [v.dim(), u.dim()],
                "basis": basis.iter().map(matrix_json).collect::<Vec<_>>(),
            })
        );
    } else {
        println!("hom-dim={}", basis.len());
        println!("shape={} {}", v.dim(), u.dim());
        for (i, phi) in basis.iter().enumerate() {
            println!("matrix {i}");
            print!("{phi}");
        }
    }
    Ok(())
}

fn cmd_dualize(input: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let module = load_module(input)?;
    let text = serialize_module(&module.dualize());
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| validation_failure(format!("cannot write {}: {e}", path.display())))?;
            println!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn independent_coefficients(pencil: &Pencil) -> (Vec<Matrix>, Vec<usize>) {
    let mut span = SpanBuilder::new(pencil.rows() * pencil.cols(), pencil.modulus());
    let mut basis = Vec::new();
    let mut indices = Vec::new();
    for (i, b) in pencil.coefficients().iter().enumerate() {
        if span.insert(&b.vectorize()) {
            basis.push(b.clone());
            indices.push(i);
        }
    }
    (basis, indices)
}

fn decoder_sidecar(
    kind: &str,
    reduction: &CyclicReduction,
    indices: &[usize],
    transpose_homs: bool,
) -> String {
    let (rows, cols) = reduction.target_shape();
    let mut out = String::new();
    out.push_str("decoder\n");
    out.push_str(&format!("kind {kind}\n"));
    out.push_str(&format!("field {}\n", reduction.module.modulus()));
    out.push_str(&format!("target-rows {rows}\n"));
    out.push_str(&format!("target-cols {cols}\n"));
    out.push_str(&format!("l-dim {}\n", reduction.l_dim()));
    out.push_str(&format!(
        "pencil-indices {}\n",
        indices.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    ));
    out.push_str(&format!("u-count {}\n", reduction.u_basis().len()));
    if transpose_homs {
        out.push_str("transpose-homs true\n");
    }
    for (i, b) in reduction.l_basis().iter().enumerate() {
        out.push_str(&format!("matrix {i}\n"));
        out.push_str(&b.to_string());
    }
    out
}

fn write_output(dir: &Path, name: &str, content: &str) -> Result<(), Failure> {
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| validation_failure(format!("cannot write {}: {e}", path.display())))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_reduce(kind: ReduceKind, input: &Path, output_dir: &Path) -> Result<(), Failure> {
    let pencil = load_pencil(input)?;
    std::fs::create_dir_all(output_dir)
        .map_err(|e| validation_failure(format!("cannot create {}: {e}", output_dir.display())))?;
    let (basis, indices) = independent_coefficients(&pencil);
    let u_basis = standard_basis(pencil.modulus(), pencil.cols());
    match kind {
        ReduceKind::Cyclic => {
            let red = reduce_completion_to_cyclic(
                pencil.rows(),
                pencil.cols(),
                pencil.modulus(),
                &basis,
                &u_basis,
            );
            write_output(output_dir, "cyclic_module.txt", &serialize_module(&red.module))?;
            write_output(
                output_dir,
                "cyclic_decoder.txt",
                &decoder_sidecar("cyclic", &red, &indices, false),
            )?;
            println!("module-dim={}", red.module.dim());
            println!("l-dim={}", red.l_dim());
        }
        ReduceKind::InjectiveHom => {
            let red = reduce_nonsingular_to_injective_hom(
                pencil.rows(),
                pencil.cols(),
                pencil.modulus(),
                &basis,
                &u_basis,
            );
            write_output(output_dir, "injective_source_module.txt", &serialize_module(&red.source))?;
            write_output(output_dir, "injective_target_module.txt", &serialize_module(&red.target))?;
            write_output(
                output_dir,
                "injective_decoder.txt",
                &decoder_sidecar("injective-hom", &red.reduction, &indices, false),
            )?;
            println!("source-dim={}", red.source.dim());
            println!("target-dim={}", red.target.dim());
        }
        ReduceKind::SurjectiveHom => {
            let red = reduce_to_surjective_hom(
                pencil.rows(),
                pencil.cols(),
                pencil.modulus(),
                &basis,
                &u_basis,
            );
            write_output(output_dir, "surjective_source_module.txt", &serialize_module(&red.source))?;
            write_output(output_dir, "surjective_target_module.txt", &serialize_module(&red.target))?;
            write_output(
                output_dir,
                "surjective_decoder.txt",
                &decoder_sidecar("surjective-hom", &red.injective_side().reduction, &indices, true),
            )?;
            println!("source-dim={}", red.source.dim());
            println!("target-dim={}", red.target.dim());
        }
    }
    Ok(())
}

fn enumeration_cap(flag: Option<u64>) -> Result<EnumerationCap, Failure> {
    if let Some(cap) = flag {
        return Ok(EnumerationCap(cap));
    }
    match std::env::var("RANKFORGE_CAP") {
        Ok(raw) => raw
            .parse()
            .map(EnumerationCap)
            .map_err(|_| validation_failure(format!("RANKFORGE_CAP is not an integer: {raw}"))),
        Err(_) => Ok(EnumerationCap::default()),
    }
}

fn cmd_oracle(kind: OracleKind, input: &Path, cap: Option<u64>, json: bool) -> Result<(), Failure> {
    let cap = enumeration_cap(cap)?;
    match kind {
        OracleKind::MaxRank => {
            let pencil = load_pencil(input)?;
            let (rank, x) = oracle_max_completion_rank(&pencil, cap).map_err(core_failure)?;
            if json {
                println!("{}", json!({ "oracle_max_rank": rank, "x": values_json(&x) }));
            } else {
                println!("oracle-max-rank={rank}");
                println!("x={}", csv(&x));
            }
        }
        OracleKind::Cyclic => {
            let module = load_module(input)?;
            let (dim, v) = oracle_max_cyclic_dim(&module, cap).map_err(core_failure)?;
            if json {
                println!("{}", json!({ "oracle_max_cyclic_dim": dim, "v": values_json(&v) }));
            } else {
                println!("oracle-max-cyclic-dim={dim}");
                println!("v={}", csv(&v));
            }
        }
        OracleKind::MinGenerators => {
            let module = load_module(input)?;
            let count = oracle_min_generators(&module, cap).map_err(core_failure)?;
            if json {
                println!("{}", json!({ "oracle_min_generators": count }));
            } else {
                println!("oracle-min-generators={count}");
            }
        }
    }
    Ok(())
}
