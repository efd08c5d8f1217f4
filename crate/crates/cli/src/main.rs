//! Command-line surface: ingest algebra/bimodule/pair/double files, run
//! the identity checkers, build semidirect/bicrossed/double algebras,
//! run bounded searches, and exercise the octonion fixture.
//!
//! Exit codes: 0 verdict true, 1 verdict false or failed precondition,
//! 2 malformed input. `QFLEX_MAX_DIM` caps accepted dimensions
//! (default 64).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qflex_core::algebra::{
    check_cyclic_sum_vanishes, check_jacobiator_vs_cyclic_sum, check_lie_admissible,
    check_myung_equivalence, check_operator_relations, check_q_flexible, check_q_jacobi,
    check_scaled_cyclic_sum_vanishes, cyclic_associator_sum, jacobiator, AlgebraRef,
};
use qflex_core::bimodule::Bimodule;
use qflex_core::double::DoubleSpec;
use qflex_core::error::Error;
use qflex_core::json::{
    algebra_to_json, parse_algebra_json, parse_bimodule_json, parse_double_json,
    parse_dual_products_json, parse_matched_pair_json, AlgebraSource,
};
use qflex_core::linalg::pretty_combination;
use qflex_core::matched_pair::MatchedPair;
use qflex_core::octonion::{self, build_octonion, ASSOCIATOR_TABLE_ROWS};
use qflex_core::rational::Rat;
use qflex_core::report::CheckReport;
use qflex_core::search::{search_q_flexible, SearchParams, RNG_ALGORITHM};

use report::{digest, print_text, run_report, InputDigest};

#[derive(Parser)]
#[command(
    name = "qflex",
    version,
    about = "Exact checkers and constructors for q-deformed flexible algebras"
)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized subcommands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output path for constructed files and catalogs.
    #[arg(long, short = 'o', global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one identity checker against a definition file.
    Check {
        path: PathBuf,
        #[arg(long, value_enum)]
        kind: CheckKind,
    },
    /// Construct a semidirect, bicrossed, or double algebra.
    Build {
        #[arg(long, value_enum)]
        kind: BuildKind,
        /// Input files; see the README for per-kind shapes.
        inputs: Vec<PathBuf>,
    },
    /// Randomized search for structure tensors satisfying the identity.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: Rat,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Exercise the octonion fixture and emit its reference tables.
    Octonion {
        /// Run the full fixture suite (default when no flag is given).
        #[arg(long)]
        check_all: bool,
        /// Print the multiplication table.
        #[arg(long)]
        emit_table1: bool,
        /// Print the associator table.
        #[arg(long)]
        emit_table2: bool,
        /// Deformation parameter for `--out` emission (default -1).
        #[arg(long, allow_hyphen_values = true)]
        q: Option<Rat>,
    },
    /// Run the derived-identity battery on one algebra file.
    Identities { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Flexible,
    OperatorRelations,
    QJacobi,
    Myung,
    Bimodule,
    MatchedPair,
    DualMatchedPair,
    Invariance,
    Manin,
}

#[derive(Clone, Copy, ValueEnum)]
enum BuildKind {
    Semidirect,
    Bicrossed,
    Double,
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            msg: msg.into(),
        }
    }

    fn precondition(msg: impl Into<String>) -> Self {
        CliError {
            code: 1,
            msg: msg.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unverified(_) => CliError::precondition(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

fn max_dim() -> usize {
    std::env::var("QFLEX_MAX_DIM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(64)
}

fn cap_dim(dim: usize) -> Result<(), CliError> {
    let cap = max_dim();
    if dim > cap {
        return Err(CliError::input(format!(
            "dimension {dim} exceeds QFLEX_MAX_DIM = {cap}"
        )));
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<(String, InputDigest), CliError> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CliError::input(format!("{} is not UTF-8", path.display())))?;
    let d = digest(&path.display().to_string(), text.as_bytes());
    Ok((text, d))
}

fn load_algebra(path: &Path) -> Result<(AlgebraRef, InputDigest), CliError> {
    let (text, d) = read_input(path)?;
    let alg = parse_algebra_json(&text)?;
    cap_dim(alg.dim())?;
    Ok((alg, d))
}

fn load_bimodule(path: &Path) -> Result<(Bimodule, Vec<InputDigest>), CliError> {
    let (text, d) = read_input(path)?;
    let doc = parse_bimodule_json(&text)?;
    let mut digests = vec![d];
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let needs_file = matches!(doc.algebra, Some(AlgebraSource::FileRef(_)));
    let referenced = if let Some(AlgebraSource::FileRef(ref rel)) = doc.algebra {
        let target = base.join(rel);
        let (alg, rd) = load_algebra(&target)?;
        digests.push(rd);
        Some(alg)
    } else {
        None
    };
    let b = if needs_file {
        doc.with_algebra(referenced.expect("loaded above"))?
    } else {
        doc.resolve(|p| {
            Err(Error::parse(
                "$.algebra",
                format!("unresolved file reference {p:?}"),
            ))
        })?
    };
    cap_dim(b.algebra().dim() + b.vdim())?;
    Ok((b, digests))
}

fn load_pair(path: &Path) -> Result<(MatchedPair, InputDigest), CliError> {
    let (text, d) = read_input(path)?;
    let pair = parse_matched_pair_json(&text)?;
    cap_dim(pair.alg_a().dim() + pair.alg_b().dim())?;
    Ok((pair, d))
}

fn load_double(path: &Path) -> Result<(DoubleSpec, InputDigest), CliError> {
    let (text, d) = read_input(path)?;
    let double = parse_double_json(&text)?;
    cap_dim(2 * double.primal().dim())?;
    Ok((double, d))
}

fn emit(
    cli: &Cli,
    command: &str,
    inputs: &[InputDigest],
    verdicts: &[CheckReport],
    extra: serde_json::Value,
    start: Instant,
    seed: Option<u64>,
) {
    if cli.json {
        let value = run_report(
            command,
            inputs,
            verdicts,
            extra,
            start.elapsed().as_millis(),
            seed,
        );
        println!("{value}");
    } else {
        print_text(verdicts);
        if !extra.is_null() {
            println!("{extra}");
        }
    }
}

fn verdict_code(ok: bool) -> u8 {
    u8::from(!ok)
}

fn cmd_check(cli: &Cli, path: &Path, kind: CheckKind) -> Result<u8, CliError> {
    let start = Instant::now();
    let mut extra = serde_json::Value::Null;
    let mut overall: Option<bool> = None;
    let (verdicts, inputs): (Vec<CheckReport>, Vec<InputDigest>) = match kind {
        CheckKind::Flexible | CheckKind::OperatorRelations | CheckKind::QJacobi => {
            let (alg, d) = load_algebra(path)?;
            let rep = match kind {
                CheckKind::Flexible => check_q_flexible(&alg),
                CheckKind::OperatorRelations => check_operator_relations(&alg),
                _ => check_q_jacobi(&alg),
            };
            (vec![rep], vec![d])
        }
        CheckKind::Myung => {
            let (alg, d) = load_algebra(path)?;
            let rep = check_myung_equivalence(&alg)?;
            // The command verifies the equivalence claim, so the exit
            // code reflects agreement of the three conditions.
            overall = Some(rep.all_agree());
            extra = json!({ "conditionsAgree": rep.all_agree() });
            (
                vec![rep.q_derivation, rep.star_derivation, rep.jacobi],
                vec![d],
            )
        }
        CheckKind::Bimodule => {
            let (b, ds) = load_bimodule(path)?;
            let reps = vec![b.check()];
            emit(
                cli,
                "check",
                &ds,
                &reps,
                serde_json::Value::Null,
                start,
                None,
            );
            return Ok(verdict_code(reps[0].verdict));
        }
        CheckKind::MatchedPair => {
            let (pair, d) = load_pair(path)?;
            (vec![pair.check()], vec![d])
        }
        CheckKind::DualMatchedPair => {
            let (double, d) = load_double(path)?;
            (vec![double.check_dual_matched_pair()], vec![d])
        }
        CheckKind::Invariance => {
            let (double, d) = load_double(path)?;
            (vec![double.check_invariance()], vec![d])
        }
        CheckKind::Manin => {
            let (double, d) = load_double(path)?;
            let manin = double.manin_verdict();
            overall = Some(manin.verdicts().iter().all(|&v| v) && manin.all_agree());
            extra = json!({
                "isManinTriple": manin.is_manin_triple,
                "isMatchedPair": manin.is_matched_pair,
                "isBialgebra": manin.is_bialgebra,
                "allAgree": manin.all_agree(),
            });
            (manin.components.clone(), vec![d])
        }
    };
    let overall = overall.unwrap_or_else(|| verdicts.iter().all(|r| r.verdict));
    emit(cli, "check", &inputs, &verdicts, extra, start, None);
    Ok(verdict_code(overall))
}

fn write_or_print(cli: &Cli, contents: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, contents)
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{contents}");
            Ok(())
        }
    }
}

fn cmd_build(cli: &Cli, kind: BuildKind, inputs: &[PathBuf]) -> Result<u8, CliError> {
    let built: AlgebraRef = match kind {
        BuildKind::Semidirect => {
            let b = match inputs {
                [bim] => load_bimodule(bim)?.0,
                [alg, bim] => {
                    let (algebra, _) = load_algebra(alg)?;
                    let (text, _) = read_input(bim)?;
                    let doc = parse_bimodule_json(&text)?;
                    doc.with_algebra(algebra)?
                }
                _ => {
                    return Err(CliError::input(
                        "semidirect expects <bimodule.json> or <algebra.json> <bimodule.json>",
                    ))
                }
            };
            cap_dim(b.algebra().dim() + b.vdim())?;
            b.semidirect()?
        }
        BuildKind::Bicrossed => {
            let [pair] = inputs else {
                return Err(CliError::input("bicrossed expects <pair.json>"));
            };
            load_pair(pair)?.0.bicrossed()?
        }
        BuildKind::Double => {
            let d = match inputs {
                [double] => load_double(double)?.0,
                [primal, dual] => {
                    let (alg, _) = load_algebra(primal)?;
                    let (text, _) = read_input(dual)?;
                    let products = parse_dual_products_json(&text, alg.dim())?;
                    cap_dim(2 * alg.dim())?;
                    DoubleSpec::new(alg, products)?
                }
                _ => {
                    return Err(CliError::input(
                        "double expects <double.json> or <primal.json> <dual.json>",
                    ))
                }
            };
            d.build_double()
        }
    };
    write_or_print(cli, &algebra_to_json(&built))?;
    Ok(0)
}

fn cmd_search(cli: &Cli, dim: usize, q: Rat, trials: u64) -> Result<u8, CliError> {
    let start = Instant::now();
    let seed = cli.seed.unwrap_or(0);
    let catalog = search_q_flexible(SearchParams {
        dim,
        q,
        trials,
        seed,
    })?;
    let found: Vec<serde_json::Value> = catalog
        .found
        .iter()
        .map(|alg| {
            serde_json::from_str(&algebra_to_json(alg)).expect("canonical output is valid JSON")
        })
        .collect();
    let value = json!({
        "command": "search",
        "dim": catalog.params.dim,
        "q": catalog.params.q.to_string(),
        "trials": catalog.params.trials,
        "seed": catalog.params.seed,
        "rng": RNG_ALGORITHM,
        "found": found,
        "elapsed_ms": start.elapsed().as_millis(),
    });
    if let Some(path) = &cli.out {
        fs::write(path, value.to_string())
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
        if !cli.json {
            println!(
                "search: {} hits written to {}",
                catalog.found.len(),
                path.display()
            );
        }
    } else if cli.json {
        println!("{value}");
    } else {
        println!(
            "search dim={} q={} trials={} seed={} rng={}: {} hits",
            catalog.params.dim,
            catalog.params.q,
            catalog.params.trials,
            catalog.params.seed,
            RNG_ALGORITHM,
            catalog.found.len()
        );
        for alg in &catalog.found {
            println!("{}", algebra_to_json(alg));
        }
    }
    Ok(0)
}

fn table1_lines() -> Vec<String> {
    let alg = build_octonion(Rat::from(-1));
    let names = alg.basis_names();
    let mut lines = vec![format!("* | {}", names.join(" "))];
    for i in 0..8 {
        let cells: Vec<String> = (0..8)
            .map(|j| {
                let prod = alg.basis_product(i, j);
                pretty_combination(prod.entries(), names)
            })
            .collect();
        lines.push(format!("{} | {}", names[i], cells.join(" ")));
    }
    lines
}

fn table2_lines() -> Vec<String> {
    let alg = build_octonion(Rat::from(-1));
    let names = alg.basis_names();
    let mut lines = vec![format!("*   | {}", names.join(" "))];
    for &(i, j) in ASSOCIATOR_TABLE_ROWS.iter() {
        let cells: Vec<String> = (0..8)
            .map(|k| {
                let assoc = alg.associator_basis(i, j, k);
                pretty_combination(assoc.entries(), names)
            })
            .collect();
        lines.push(format!("e{i}{j} | {}", cells.join(" ")));
    }
    lines
}

fn octonion_fixture_suite(seed: u64) -> (Vec<(String, bool)>, serde_json::Value) {
    let mut items: Vec<(String, bool)> = Vec::new();
    let mul = octonion::multiplication_table_report();
    items.push(("multiplication table 64/64".into(), mul.ok()));
    for m in &mul.mismatches {
        items.push((
            format!(
                "reference-table discrepancy at {} col {}: computed {}, printed {} (computed is normative)",
                m.row, m.col, m.computed, m.printed
            ),
            false,
        ));
    }
    let assoc = octonion::associator_table_report();
    items.push(("associator table rows".into(), assoc.ok()));
    for m in &assoc.mismatches {
        items.push((
            format!(
                "reference-table discrepancy at {} col {}: computed {}, printed {} (computed is normative)",
                m.row, m.col, m.computed, m.printed
            ),
            false,
        ));
    }
    items.push((
        "closed associator formula on 512 triples".into(),
        octonion::check_closed_formula_matches_products().verdict,
    ));

    let flex = check_q_flexible(&build_octonion(Rat::from(-1)));
    items.push(("defining identity at q=-1".into(), flex.verdict));
    let at0 = check_q_flexible(&build_octonion(Rat::zero()));
    items.push((
        "q=0 fails at (e1,e2,e3) with residual -2*e6".into(),
        !at0.verdict
            && at0.witness == Some([1, 2, 3])
            && at0.detail.as_deref() == Some("(e1,e2,e3) residual -2*e6"),
    ));
    let at1 = check_q_flexible(&build_octonion(Rat::one()));
    items.push((
        "q=1 fails at (e1,e2,e3)".into(),
        !at1.verdict && at1.witness == Some([1, 2, 3]),
    ));

    items.push((
        "seven quaternionic subalgebras associative".into(),
        octonion::check_subalgebra_associativity().verdict,
    ));
    items.push((
        "{e0,e1,e2,e3} is not closed".into(),
        !octonion::quadruple_closed(&[0, 1, 2, 3]),
    ));

    let alt = octonion::check_associator_alternating();
    items.push(("associator fully alternating".into(), alt.report.verdict));
    items.push((
        "28 nonvanishing orbits, 19 printed, 9 unlisted".into(),
        alt.nonvanishing.len() == 28
            && alt.printed_nonvanishing.len() == 19
            && alt.unlisted_nonvanishing.len() == 9,
    ));

    let alg = build_octonion(Rat::from(-1));
    let regular = Bimodule::regular(&alg);
    let reg_rep = octonion::check_octonion_bimodule(regular.left_maps(), regular.right_maps())
        .expect("regular maps have matching shapes");
    items.push((
        "regular actions fail the relation families (expected)".into(),
        !reg_rep.verdict,
    ));

    let myung = octonion::check_structure_constant_myung();
    items.push((
        "bracket-derivation and constant identity agree".into(),
        myung.agree(),
    ));

    let empty: Vec<qflex_core::linalg::Matrix> = (0..8)
        .map(|_| qflex_core::linalg::Matrix::zeros(0))
        .collect();
    items.push((
        "quadratic action identities (zero space)".into(),
        octonion::check_action_quadratic_identities(&empty)
            .map(|r| r.verdict)
            .unwrap_or(false),
    ));

    let e1 = alg.basis_element(1);
    let e2 = alg.basis_element(2);
    let e3 = alg.basis_element(3);
    let j = jacobiator(&e1, &e2, &e3).unwrap();
    let s = cyclic_associator_sum(&e1, &e2, &e3).unwrap();
    items.push((
        "J(e1,e2,e3)=12*e6 and S(e1,e2,e3)=-6*e6".into(),
        j.pretty() == "12*e6" && s.pretty() == "-6*e6",
    ));

    // Bounded action search; the outcome is data, not an assertion.
    let search = octonion::search_compatible_actions(8, 60, seed);
    let extra = json!({
        "actionSearch": {
            "maxVdim": search.max_vdim,
            "candidatesTried": search.candidates_tried,
            "found": search.found.len(),
        }
    });

    (items, extra)
}

#[allow(clippy::too_many_arguments)]
fn cmd_octonion(
    cli: &Cli,
    check_all: bool,
    emit_table1: bool,
    emit_table2: bool,
    q: Option<Rat>,
) -> Result<u8, CliError> {
    let start = Instant::now();
    if let Some(path) = &cli.out {
        let alg = build_octonion(q.unwrap_or_else(|| Rat::from(-1)));
        fs::write(path, algebra_to_json(&alg))
            .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))?;
        if !(check_all || emit_table1 || emit_table2) {
            return Ok(0);
        }
    }

    let mut json_payload = serde_json::Map::new();
    if emit_table1 {
        if cli.json {
            json_payload.insert(
                "table1".into(),
                json!(table1_lines()
                    .iter()
                    .skip(1)
                    .map(|l| l
                        .split(" | ")
                        .nth(1)
                        .unwrap_or("")
                        .split(' ')
                        .collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            );
        } else {
            for line in table1_lines() {
                println!("{line}");
            }
        }
    }
    if emit_table2 {
        if cli.json {
            let rows: Vec<serde_json::Value> = ASSOCIATOR_TABLE_ROWS
                .iter()
                .zip(table2_lines().iter().skip(1))
                .map(|(&(i, j), line)| {
                    json!({
                        "i": i,
                        "j": j,
                        "entries": line.split(" | ").nth(1).unwrap_or("").split(' ').collect::<Vec<_>>(),
                    })
                })
                .collect();
            json_payload.insert("table2".into(), json!(rows));
        } else {
            if emit_table1 {
                println!();
            }
            for line in table2_lines() {
                println!("{line}");
            }
        }
    }

    let run_suite = check_all || !(emit_table1 || emit_table2);
    let mut all_ok = true;
    if run_suite {
        let (items, extra) = octonion_fixture_suite(cli.seed.unwrap_or(0));
        all_ok = items.iter().all(|(_, ok)| *ok);
        if cli.json {
            json_payload.insert(
                "suite".into(),
                json!(items
                    .iter()
                    .map(|(name, ok)| json!({"check": name, "ok": ok}))
                    .collect::<Vec<_>>()),
            );
            json_payload.insert("extra".into(), extra);
            json_payload.insert("ok".into(), json!(all_ok));
        } else {
            for (name, ok) in &items {
                println!("{}: {}", name, if *ok { "ok" } else { "FAILED" });
            }
            println!("{extra}");
        }
    }
    if cli.json {
        json_payload.insert("elapsed_ms".into(), json!(start.elapsed().as_millis()));
        println!("{}", serde_json::Value::Object(json_payload));
    }
    Ok(verdict_code(all_ok))
}

fn cmd_identities(cli: &Cli, path: &Path) -> Result<u8, CliError> {
    let start = Instant::now();
    let (alg, d) = load_algebra(path)?;
    // The bare cyclic-sum check is a sufficient condition only, so it is
    // reported but never drives the exit code.
    let mut verdicts = vec![
        check_jacobiator_vs_cyclic_sum(&alg),
        check_q_jacobi(&alg),
        check_lie_admissible(&alg),
        check_scaled_cyclic_sum_vanishes(&alg),
        check_cyclic_sum_vanishes(&alg),
    ];
    let lie_agree = verdicts[2].verdict == verdicts[3].verdict;
    let mut overall = verdicts[0].verdict && verdicts[1].verdict && lie_agree;
    let extra = match check_myung_equivalence(&alg) {
        Ok(rep) => {
            overall &= rep.all_agree();
            let agree = rep.all_agree();
            verdicts.push(rep.q_derivation);
            verdicts.push(rep.star_derivation);
            verdicts.push(rep.jacobi);
            json!({ "myungConditionsAgree": agree })
        }
        Err(e) => json!({ "myungConditionsAgree": format!("skipped: {e}") }),
    };
    emit(cli, "identities", &[d], &verdicts, extra, start, None);
    Ok(verdict_code(overall))
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Check { path, kind } => cmd_check(cli, path, *kind),
        Command::Build { kind, inputs } => cmd_build(cli, *kind, inputs),
        Command::Search { dim, q, trials } => cmd_search(cli, *dim, q.clone(), *trials),
        Command::Octonion {
            check_all,
            emit_table1,
            emit_table2,
            q,
        } => cmd_octonion(cli, *check_all, *emit_table1, *emit_table2, q.clone()),
        Command::Identities { path } => cmd_identities(cli, path),
    }
}

fn main() -> ExitCode {
    // Die quietly when a pager closes the pipe instead of panicking.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
