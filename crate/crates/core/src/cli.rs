//! The `subeq` command line: `analyze`, `generate`, `certify`, `probe` and
//! `verify-suite`.
//!
//! Exit codes: 0 success, 1 bad input or failed precondition, 2 some
//! verifier reported a violation, 3 the prober broke a proven bound.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::antipodality::{
    bridge_check, equidistant_bound_check, is_antipodal, is_edge_antipodal, is_subequilateral,
    lambda_monotonicity_check, lemma2_check, lemma3_certificate, lemma3_check,
    theorem3_check_euclidean, theorem_bound_check, BoundMode, Lemma3Certificate, PairDistances,
    Verdict,
};
use crate::constructions::{generate, Family, FamilySpec};
use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Scalar};
use crate::io::{read_instance, write_json_atomic, CheckRecord, ReportFile, Status, VertexFile};
use crate::norms::NormKind;
use crate::polytope::VertexSet;
use crate::prober::{probe, Objective, SearchConfig, SearchReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VIOLATED: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

/// Environment variable naming the worker thread count.
pub const THREADS_ENV: &str = "SUBEQ_THREADS";

#[derive(Debug, Parser)]
#[command(name = "subeq", version, about = "Exact checks for edge-antipodal and subequilateral polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run every predicate and verifier on a vertex file (or a report).
    Analyze {
        input: PathBuf,
        /// l1, l2, linf or relative; defaults to the file's recommended norm, else l2.
        #[arg(long)]
        norm: Option<NormKind>,
        /// Drop points that are not vertices instead of rejecting the file.
        #[arg(long)]
        reduce: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Write the vertex file of a standard family.
    Generate {
        family: Family,
        #[arg(long)]
        dim: usize,
        /// Talata ε as a rational, e.g. 1/10.
        #[arg(long, default_value = "1/10", value_parser = parse_scalar_arg)]
        eps: Scalar,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random family: number of points drawn before hull reduction.
        #[arg(long)]
        points: Option<usize>,
        /// Random family: numerator and denominator bound.
        #[arg(long, default_value_t = 6)]
        bound: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Lower-bound certificate for a nonadjacent pair of a subequilateral set.
    Certify {
        input: PathBuf,
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        pair: Vec<usize>,
        #[arg(long)]
        norm: Option<NormKind>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Search for extremal edge-antipodal sets.
    Probe {
        #[arg(long)]
        dim: usize,
        /// max-vertices or max-lambda.
        #[arg(long, default_value = "max-vertices")]
        objective: Objective,
        #[arg(long, default_value_t = 1000)]
        iterations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        #[arg(long, default_value_t = 4)]
        height_bound: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the acceptance checks and print one line per criterion.
    VerifySuite {
        /// Run only these criteria (1-10); repeatable.
        #[arg(long = "criterion")]
        criteria: Vec<u8>,
    },
}

fn parse_scalar_arg(s: &str) -> Result<Scalar> {
    parse_scalar(s)
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let echo: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match dispatch(cli.command, echo) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        // A second call in the same process (tests) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn dispatch(command: Command, echo: Vec<String>) -> Result<i32> {
    match command {
        Command::Analyze {
            input,
            norm,
            reduce,
            output,
        } => {
            let file = read_instance(&input)?;
            let kind = norm.or(file.recommended_norm).unwrap_or(NormKind::L2);
            let report = analyze(file.instance, kind, reduce, echo)?;
            emit(&report, output.as_ref(), &report_table(&report))?;
            Ok(if report.any_violated() {
                EXIT_VIOLATED
            } else {
                EXIT_OK
            })
        }
        Command::Generate {
            family,
            dim,
            eps,
            seed,
            points,
            bound,
            output,
        } => {
            let spec = family_spec(family, dim, eps, seed, points, bound);
            let file = generate_file(&spec)?;
            let table = format!(
                "{} dim={} vertices={} ambient_dim={} recommended_norm={}\n",
                family,
                dim,
                file.instance.len(),
                file.instance.ambient_dim(),
                spec.recommended_norm()
            );
            emit(&file, output.as_ref(), &table)?;
            Ok(EXIT_OK)
        }
        Command::Certify {
            input,
            pair,
            norm,
            output,
        } => {
            let file = read_instance(&input)?;
            let kind = norm.or(file.recommended_norm).unwrap_or(NormKind::L2);
            let (report, cert) = certify(file.instance, kind, pair[0], pair[1], echo)?;
            let table = format!(
                "pair ({}, {}): distance {} >= lower bound {} (tight: {})\n\
                 x side: dominant vertex {} with coefficient {}\n\
                 y side: dominant vertex {} with coefficient {}\n",
                cert.pair.0,
                cert.pair.1,
                cert.distance,
                cert.lower_bound,
                cert.tight,
                cert.x_side.dominant_label,
                crate::exact::format_scalar(&cert.x_side.dominant_coefficient),
                cert.y_side.dominant_label,
                crate::exact::format_scalar(&cert.y_side.dominant_coefficient),
            );
            emit(&report, output.as_ref(), &table)?;
            Ok(EXIT_OK)
        }
        Command::Probe {
            dim,
            objective,
            iterations,
            seed,
            restarts,
            height_bound,
            output,
        } => {
            let mut config = SearchConfig::new(dim, objective, iterations, seed);
            config.restarts = restarts;
            config.height_bound = height_bound;
            let (report, search) = probe_report(&config, echo)?;
            let table = format!(
                "{}best score {} (restart {}), vertex bound {}\n",
                report_table(&report),
                crate::exact::format_scalar(&search.best_score),
                search.best_restart,
                crate::exact::format_scalar(&search.vertex_bound)
            );
            emit(&report, output.as_ref(), &table)?;
            Ok(if search.bound_violation.is_some() {
                EXIT_BOUND
            } else {
                EXIT_OK
            })
        }
        Command::VerifySuite { criteria } => {
            let ids: Vec<u8> = if criteria.is_empty() {
                (1..=10).collect()
            } else {
                criteria
            };
            let mut all_pass = true;
            for id in ids {
                let r = crate::suite::run_criterion(id)?;
                println!("{}", r.line());
                all_pass &= r.passed;
            }
            Ok(if all_pass { EXIT_OK } else { EXIT_VIOLATED })
        }
    }
}

fn family_spec(
    family: Family,
    dim: usize,
    eps: Scalar,
    seed: u64,
    points: Option<usize>,
    bound: u32,
) -> FamilySpec {
    match family {
        Family::Simplex => FamilySpec::Simplex { dim },
        Family::Hypercube => FamilySpec::Hypercube { dim },
        Family::CrossPolytope => FamilySpec::CrossPolytope { dim },
        Family::L1Subspace => FamilySpec::L1Subspace { dim },
        Family::Talata => FamilySpec::Talata { dim, eps },
        Family::Random => FamilySpec::Random {
            dim,
            points: points.unwrap_or(2 * dim + 2),
            seed,
            bound,
        },
    }
}

/// Vertex file for `spec`, tagged with the family and its usual norm.
pub fn generate_file(spec: &FamilySpec) -> Result<VertexFile> {
    Ok(VertexFile {
        instance: generate(spec)?,
        family: Some(spec.clone()),
        recommended_norm: Some(spec.recommended_norm()),
    })
}

/// Writes JSON to `output` and the table to stdout, or JSON to stdout and
/// the table to stderr.
fn emit(value: &impl serde::Serialize, output: Option<&PathBuf>, table: &str) -> Result<()> {
    match output {
        Some(path) => {
            write_json_atomic(path, value)?;
            print!("{table}");
        }
        None => {
            eprint!("{table}");
            let mut out = std::io::stdout().lock();
            serde_json::to_writer_pretty(&mut out, value)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn report_table(report: &ReportFile) -> String {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in &report.checks {
        s.push_str(&format!("{:width$}  {}\n", c.name, c.status.as_str()));
    }
    s
}

fn verdict_record(name: &str, verdict: Verdict, values: impl serde::Serialize) -> CheckRecord {
    CheckRecord::new(name, verdict).values(values)
}

/// The full battery of predicates and verifiers on one instance.
///
/// Fails on input that is not a vertex set of positive dimension (unless
/// `reduce` is set, in which case non-vertices are dropped first).
pub fn analyze(vs: VertexSet, kind: NormKind, reduce: bool, command: Vec<String>) -> Result<ReportFile> {
    let mut removed = Vec::new();
    let vs = if reduce {
        removed = vs.non_vertices().to_vec();
        vs.reduce_to_vertices()?
    } else {
        vs.ensure_convex_position()?;
        vs
    };
    vs.require_affine_dim(1)?;
    let mut report = ReportFile::new(command, vs.clone());
    report.norm = Some(kind);
    let checks = &mut report.checks;

    checks.push(CheckRecord::new("dimension", true).values(json!({
        "ambient_dim": vs.ambient_dim(),
        "affine_dim": vs.affine_dim(),
        "vertex_count": vs.len(),
    })));
    checks.push(CheckRecord::new("convex_position", true).witnesses(json!({ "removed": removed })));
    let edges = vs.edges()?.to_vec();
    checks.push(
        CheckRecord::new("edges", true)
            .values(json!({ "count": edges.len() }))
            .witnesses(&edges),
    );

    let norm = kind.build(&vs)?;
    let dists = PairDistances::compute(&vs, &norm)?;
    let lambda = dists.lambda().ok_or(Error::TooFewPoints {
        needed: 2,
        got: vs.len(),
    })?;
    checks.push(CheckRecord::new("lambda", true).values(&lambda));
    checks.push(CheckRecord::new("equidistant", lambda.is_equidistant()));

    let sub = is_subequilateral(&dists)?;
    checks.push(
        CheckRecord::new("subequilateral", sub.subequilateral)
            .values(json!({ "diameter": sub.diameter }))
            .witnesses(json!({ "violating_edge": sub.violating_edge })),
    );
    let ea = is_edge_antipodal(&vs)?;
    checks.push(CheckRecord::new("edge_antipodal", ea.holds).witnesses(&ea));
    let anti = is_antipodal(&vs)?;
    checks.push(CheckRecord::new("antipodal", anti.holds).witnesses(&anti));

    let l2 = lemma2_check(&dists)?;
    checks.push(verdict_record("lemma2", l2.verdict, &l2));

    if sub.subequilateral && vs.affine_dim() >= 2 {
        match lemma3_check(&dists) {
            Ok(r) => checks.push(verdict_record("lemma3", r.verdict, &r)),
            Err(Error::CertificateFailure(msg)) => checks.push(
                CheckRecord::new("lemma3", Verdict::Violated).witnesses(json!({ "failure": msg })),
            ),
            Err(e) => return Err(e),
        }
    } else {
        checks.push(CheckRecord::new("lemma3", Verdict::NotApplicable));
    }

    let t1 = theorem_bound_check(&vs, BoundMode::EdgeAntipodal)?;
    checks.push(verdict_record("theorem_bound_edge_antipodal", t1.verdict, &t1));
    let t2 = theorem_bound_check(&vs, BoundMode::Subequilateral(&dists))?;
    checks.push(verdict_record("theorem_bound_subequilateral", t2.verdict, &t2));

    let bridge = bridge_check(&dists)?;
    checks.push(verdict_record("bridge", bridge.verdict, &bridge));
    let eq = equidistant_bound_check(&dists)?;
    checks.push(verdict_record("equidistant_bound", eq.verdict, &eq));
    let t3 = theorem3_check_euclidean(&vs)?;
    checks.push(verdict_record("theorem3_euclidean", t3.verdict, &t3));

    if sub.subequilateral {
        let mono = lambda_monotonicity_check(&dists)?;
        checks.push(verdict_record("lambda_monotonicity", mono.verdict, &mono));
    } else {
        checks.push(CheckRecord::new("lambda_monotonicity", Verdict::NotApplicable));
    }
    Ok(report)
}

/// Certificate report for the pair `(i, j)`.
pub fn certify(
    vs: VertexSet,
    kind: NormKind,
    i: usize,
    j: usize,
    command: Vec<String>,
) -> Result<(ReportFile, Lemma3Certificate)> {
    vs.ensure_convex_position()?;
    let norm = kind.build(&vs)?;
    let dists = PairDistances::compute(&vs, &norm)?;
    let cert = lemma3_certificate(&dists, i, j)?;
    let mut report = ReportFile::new(command, vs.clone());
    report.norm = Some(kind);
    report.checks.push(
        CheckRecord::new("lemma3_certificate", Verdict::Holds)
            .values(json!({
                "lower_bound": cert.lower_bound,
                "distance": cert.distance,
                "tight": cert.tight,
            }))
            .witnesses(&cert),
    );
    Ok((report, cert))
}

/// Runs the prober and wraps its result in a report.
pub fn probe_report(config: &SearchConfig, command: Vec<String>) -> Result<(ReportFile, SearchReport)> {
    let search = probe(config)?;
    let mut report = ReportFile::new(command, search.best_instance.clone());
    report.seed = Some(config.seed);
    if config.objective == Objective::MaxLambdaRelative {
        report.norm = Some(NormKind::Relative);
    }
    let violated = search.bound_violation.is_some();
    let consistency = if violated {
        Status::Violated
    } else {
        Status::Holds
    };
    report.checks.push(
        CheckRecord::new("bound_consistency", consistency)
            .witnesses(json!({ "violation": search.bound_violation })),
    );
    report.checks.push(CheckRecord::new("probe", true).values(&search));
    Ok((report, search))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::norms::NormValue;

    #[test]
    fn analyze_l1_subspace() {
        let vs = generate(&FamilySpec::L1Subspace { dim: 4 }).unwrap();
        let r = analyze(vs, NormKind::L1, false, vec![]).unwrap();
        assert_eq!(r.check("subequilateral").unwrap().status, Status::True);
        assert_eq!(r.check("lemma3").unwrap().status, Status::Holds);
        assert_eq!(r.check("lambda").unwrap().values["ratio_squared"], "4");
        assert!(!r.any_violated());
    }

    #[test]
    fn analyze_rejects_non_vertices_unless_reduced() {
        let vs = VertexSet::new(vec![
            crate::exact::Vector::from_ints(&[0, 0]),
            crate::exact::Vector::from_ints(&[2, 0]),
            crate::exact::Vector::from_ints(&[0, 2]),
            crate::exact::Vector::from_ints(&[1, 1]),
        ])
        .unwrap();
        assert!(matches!(
            analyze(vs.clone(), NormKind::L2, false, vec![]),
            Err(Error::NotConvexPosition(3))
        ));
        let r = analyze(vs, NormKind::L2, true, vec![]).unwrap();
        assert_eq!(r.instance.len(), 3);
        assert_eq!(r.check("convex_position").unwrap().witnesses["removed"], json!([3]));
    }

    #[test]
    fn certify_apex_pair() {
        let vs = generate(&FamilySpec::L1Subspace { dim: 4 }).unwrap();
        let (_, cert) = certify(vs, NormKind::L1, 4, 5, vec![]).unwrap();
        assert_eq!(cert.lower_bound, NormValue::rational(int(4)));
        assert!(cert.tight);
    }

    #[test]
    fn parse_errors_exit_one() {
        assert_eq!(run(["subeq", "analyze"]), EXIT_ERROR);
        assert_eq!(run(["subeq", "generate", "prism", "--dim", "3"]), EXIT_ERROR);
        assert_eq!(run(["subeq", "--help"]), EXIT_OK);
    }
}
