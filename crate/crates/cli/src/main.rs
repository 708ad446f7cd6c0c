//! Batch front-end: parse structure files, dispatch checks, emit human-
//! and machine-readable reports.
//!
//! Exit status: 0 when every check passed, 1 when a check failed (the
//! report carries the witness), 2 on input or usage errors.

use clap::{Parser, Subcommand, ValueEnum};
use ortholab::check::CheckResult;
use ortholab::completion::{
    dm_completion, is_nearly_oml, is_ortholattice, is_orthomodular_lattice,
    verify_completion_correspondence, DmLattice,
};
use ortholab::congruence::{
    congruence_lattice, direct_congruence_properties, verify_majority, verify_maltsev,
    verify_regularity_terms,
};
use ortholab::directoid::{
    assign_canonical_directoid, characterization_report, cone_characterization_check, in_class_a,
    in_variety_w, induced_order, is_directoid, Directoid,
};
use ortholab::gomp::{is_gomp, is_strong_gomp};
use ortholab::io::{parse_structure, serialize_structure, Structure};
use ortholab::poset::OrthoPoset;
use ortholab::residuation::{
    build_mr_strong, build_r_gomp, is_conditionally_operator_residuated, is_operator_residuated,
    satisfies_operator_divisibility, verify_residuation_correspondence, ResiduationOperators,
};
use ortholab::search::{
    count_by_size, find_witness, ClassPredicate, Predicate, SearchMode, SearchOutcome, SearchSpec,
};
use ortholab::set::ElementSet;
use ortholab::suite;
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ortholab",
    version,
    about = "Finite-structure laboratory for orthoposets"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of one structure in a named class.
    Check {
        file: PathBuf,
        /// One of: orthoposet, de-morgan, gomp, strong-gomp, lattice,
        /// ortholattice, oml, directoid, class-a, variety-w, dm-oml,
        /// dm-nearly-oml.
        #[arg(long)]
        class: String,
    },
    /// Build the operator tables and run the residuation checks.
    Residuate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Gomp)]
        mode: Mode,
    },
    /// Report on the assigned directoid (the file's table, or the
    /// canonical assignment).
    Directoid { file: PathBuf },
    /// Congruence lattice, term verdicts and direct properties.
    Congruence { file: PathBuf },
    /// The Dedekind-MacNeille completion and its classification.
    Dm {
        file: PathBuf,
        /// Write the completion itself as a structure file.
        #[arg(long)]
        emit_completion: Option<PathBuf>,
    },
    /// Count enumerated structures per size.
    Count {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value = "orthoposet")]
        class: String,
    },
    /// Search the enumerated structures for a predicate witness.
    Search {
        /// Conjunction of possibly negated classes, e.g. "gomp & !strong-gomp".
        #[arg(long = "where")]
        predicate: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Count matches per size instead of stopping at the first.
        #[arg(long)]
        count_all: bool,
    },
    /// Run the full verification suite and exit nonzero on any violation.
    VerifyAll {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// R(x,y) = LU(x',y), conditional adjointness.
    Gomp,
    /// M = L(U(x,y'),y) and R = LU(x',L(x,y)), full adjointness.
    Strong,
}

/// One named check with its witness, ready for both output styles.
#[derive(Serialize)]
struct CheckLine {
    name: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    elements: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    sets: Vec<Vec<String>>,
}

impl CheckLine {
    fn new(name: impl Into<String>, p: &OrthoPoset, r: &CheckResult) -> Self {
        CheckLine {
            name: name.into(),
            passed: r.passed(),
            condition: r.condition(),
            elements: r.witness_elements().iter().map(|&x| p.name(x)).collect(),
            sets: r.witness_sets().iter().map(|s| set_names(p, *s)).collect(),
        }
    }

    fn print(&self) {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        print!("{} {}", verdict, self.name);
        if let Some(c) = self.condition {
            print!(": condition={}", c);
        }
        if !self.elements.is_empty() {
            print!(" elements=({})", self.elements.join(", "));
        }
        for s in &self.sets {
            print!(" {{{}}}", s.join(","));
        }
        println!();
    }
}

#[derive(Serialize)]
struct Report {
    command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    file: Option<String>,
    checks: Vec<CheckLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    data: Option<serde_json::Value>,
}

impl Report {
    fn emit(&self, json: bool) -> ExitCode {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(self).expect("report serializes")
            );
        } else {
            for line in &self.checks {
                line.print();
            }
        }
        if self.checks.iter().all(|c| c.passed) {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn set_names(p: &OrthoPoset, s: ElementSet) -> Vec<String> {
    s.iter().map(|x| p.name(x)).collect()
}

fn load(path: &Path) -> Result<Structure, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: {}: {}", path.display(), e);
        ExitCode::from(2)
    })?;
    parse_structure(&text).map_err(|e| {
        eprintln!("error: {}: {}", path.display(), e);
        ExitCode::from(2)
    })
}

fn table_for(s: &Structure) -> Directoid {
    s.directoid
        .clone()
        .unwrap_or_else(|| assign_canonical_directoid(&s.poset))
}

fn run_check(s: &Structure, class: &str) -> Result<Vec<CheckLine>, String> {
    let p = &s.poset;
    let line = |name: &str, r: CheckResult| vec![CheckLine::new(name, p, &r)];
    let bool_line = |name: &str, ok: bool, condition: &'static str| {
        vec![CheckLine {
            name: name.into(),
            passed: ok,
            condition: (!ok).then_some(condition),
            elements: vec![],
            sets: vec![],
        }]
    };
    Ok(match class {
        "orthoposet" => line("orthoposet", p.is_orthoposet()),
        "de-morgan" => line("de-morgan", p.check_de_morgan()),
        "gomp" => line("gomp", is_gomp(p)),
        "strong-gomp" => line("strong-gomp", is_strong_gomp(p)),
        "lattice" => bool_line("lattice", p.is_lattice(), "missing-join-or-meet"),
        "ortholattice" => bool_line(
            "ortholattice",
            p.is_lattice() && p.is_orthoposet().passed(),
            "not-an-ortholattice",
        ),
        "oml" => bool_line("oml", ClassPredicate::Oml.eval(p), "orthomodular-law"),
        "directoid" => line("directoid", is_directoid(&table_for(s))),
        "class-a" => line("class-a", in_class_a(&table_for(s))),
        "variety-w" => line("variety-w", in_variety_w(&table_for(s))),
        "dm-oml" => line("dm-oml", is_orthomodular_lattice(&dm_completion(p))),
        "dm-nearly-oml" => line("dm-nearly-oml", is_nearly_oml(&dm_completion(p))),
        other => return Err(format!("unknown class '{}'", other)),
    })
}

fn operator_table_json(
    p: &OrthoPoset,
    get: impl Fn(usize, usize) -> ElementSet,
) -> serde_json::Value {
    let rows: Vec<Vec<Vec<String>>> = (0..p.n())
        .map(|x| (0..p.n()).map(|y| set_names(p, get(x, y))).collect())
        .collect();
    serde_json::json!(rows)
}

fn print_operator_table(p: &OrthoPoset, label: &str, get: impl Fn(usize, usize) -> ElementSet) {
    println!("{} table (rows x, columns y):", label);
    for x in 0..p.n() {
        let cells: Vec<String> = (0..p.n())
            .map(|y| format!("{{{}}}", set_names(p, get(x, y)).join(",")))
            .collect();
        println!("  {}: {}", p.name(x), cells.join(" "));
    }
}

fn residuate(s: &Structure, mode: Mode, json: bool) -> ExitCode {
    let p = &s.poset;
    let (ops, mut checks): (ResiduationOperators, Vec<CheckLine>) = match mode {
        Mode::Gomp => {
            let ops = build_r_gomp(p);
            let checks = vec![
                CheckLine::new(
                    "conditionally-operator-residuated",
                    p,
                    &is_conditionally_operator_residuated(&ops),
                ),
                CheckLine::new(
                    "operator-divisibility",
                    p,
                    &satisfies_operator_divisibility(&ops),
                ),
            ];
            (ops, checks)
        }
        Mode::Strong => {
            let ops = build_mr_strong(p);
            let checks = vec![
                CheckLine::new("operator-residuated", p, &is_operator_residuated(&ops)),
                CheckLine::new(
                    "operator-divisibility",
                    p,
                    &satisfies_operator_divisibility(&ops),
                ),
            ];
            (ops, checks)
        }
    };
    checks.push(CheckLine::new(
        "residuation-correspondence",
        p,
        &verify_residuation_correspondence(p),
    ));

    if !json {
        print_operator_table(p, "R", |x, y| ops.r(x, y));
        if ops.has_m() {
            print_operator_table(p, "M", |x, y| ops.m(x, y).expect("table present"));
            println!(
                "M commutative: {}",
                ops.m_commutative().expect("table present")
            );
        }
    }
    let data = serde_json::json!({
        "r": operator_table_json(p, |x, y| ops.r(x, y)),
        "m": ops.has_m().then(|| operator_table_json(p, |x, y| ops.m(x, y).unwrap())),
        "m_commutative": ops.m_commutative(),
    });
    Report {
        command: "residuate",
        file: None,
        checks,
        data: Some(data),
    }
    .emit(json)
}

fn directoid_report(s: &Structure, json: bool) -> ExitCode {
    let p = &s.poset;
    let d = table_for(s);
    let report = characterization_report(&d);
    let induced = induced_order(&d);
    let mut induced_check = CheckResult::pass();
    if !induced.is_poset() || !induced.matches(p) {
        induced_check = CheckResult::fail("induced-order-mismatch", vec![], vec![]);
    }
    let checks = vec![
        CheckLine::new("directoid", p, &is_directoid(&d)),
        CheckLine::new("induced-order", p, &induced_check),
        CheckLine::new("condition-i", p, &report.quasi_identity),
        CheckLine::new("condition-ii", p, &report.absorption),
        CheckLine::new("condition-iii", p, &report.complement_join),
        CheckLine::new("condition-iv", p, &report.involution),
        CheckLine::new("class-a", p, &in_class_a(&d)),
        CheckLine::new("variety-w", p, &in_variety_w(&d)),
        CheckLine::new(
            "cone-characterization",
            p,
            &cone_characterization_check(p, &d),
        ),
    ];
    if !json {
        println!("join table (rows x, columns y):");
        for x in 0..d.n() {
            let cells: Vec<String> = (0..d.n()).map(|y| p.name(d.join(x, y))).collect();
            println!("  {}: {}", p.name(x), cells.join(" "));
        }
    }
    let table: Vec<Vec<String>> = (0..d.n())
        .map(|x| (0..d.n()).map(|y| p.name(d.join(x, y))).collect())
        .collect();
    Report {
        command: "directoid",
        file: None,
        checks,
        data: Some(serde_json::json!({ "join_table": table })),
    }
    .emit(json)
}

fn congruence_report(s: &Structure, json: bool) -> ExitCode {
    let p = &s.poset;
    let d = table_for(s);
    let cons = match congruence_lattice(&d) {
        Ok(cons) => cons,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let props = direct_congruence_properties(&d).expect("same guard as the lattice");
    let checks = vec![
        CheckLine::new("majority-term", p, &verify_majority(&d)),
        CheckLine::new("maltsev-term", p, &verify_maltsev(&d)),
        CheckLine::new("regularity-terms", p, &verify_regularity_terms(&d)),
        CheckLine::new("permutable", p, &props.permutable),
        CheckLine::new("distributive", p, &props.distributive),
        CheckLine::new("regular", p, &props.regular),
    ];
    let blocks: Vec<Vec<Vec<String>>> = cons
        .iter()
        .map(|c| {
            c.blocks()
                .iter()
                .map(|b| b.iter().map(|&x| p.name(x)).collect())
                .collect()
        })
        .collect();
    if !json {
        println!("congruences: {}", cons.len());
        for (i, c) in blocks.iter().enumerate() {
            let shown: Vec<String> = c.iter().map(|b| format!("{{{}}}", b.join(","))).collect();
            println!("  #{}: {}", i, shown.join(" "));
        }
    }
    Report {
        command: "congruence",
        file: None,
        checks,
        data: Some(serde_json::json!({ "congruences": blocks })),
    }
    .emit(json)
}

/// The completion reused as a structure file: elements are renamed
/// e0..e{k-1} and the unary operation is star.
fn completion_as_structure(lt: &DmLattice) -> Structure {
    let k = lt.len();
    let mut relation = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if lt.leq(i, j) {
                relation.push((i, j));
            }
        }
    }
    let comp: Vec<usize> = (0..k).map(|i| lt.star(i)).collect();
    let poset = OrthoPoset::new(k, &relation, comp, lt.bottom(), lt.top())
        .expect("the completion is a bounded poset")
        .with_names((0..k).map(|i| format!("e{}", i)).collect())
        .expect("generated names are distinct");
    Structure {
        poset,
        directoid: None,
    }
}

fn dm_report(s: &Structure, emit: Option<&Path>, json: bool) -> ExitCode {
    let p = &s.poset;
    let lt = dm_completion(p);
    let checks = vec![
        CheckLine::new("ortholattice", p, &is_ortholattice(&lt)),
        CheckLine::new("orthomodular-lattice", p, &is_orthomodular_lattice(&lt)),
        CheckLine::new("nearly-orthomodular-lattice", p, &is_nearly_oml(&lt)),
        CheckLine::new(
            "completion-correspondence",
            p,
            &verify_completion_correspondence(p),
        ),
    ];
    let elements: Vec<Vec<String>> = lt.elements().iter().map(|&e| set_names(p, e)).collect();
    if let Some(path) = emit {
        let out = completion_as_structure(&lt);
        let mut text = String::new();
        for (i, e) in elements.iter().enumerate() {
            text.push_str(&format!("# e{} = {{{}}}\n", i, e.join(",")));
        }
        text.push_str(&serialize_structure(&out));
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("error: {}: {}", path.display(), e);
            return ExitCode::from(2);
        }
    }
    if !json {
        println!("completion has {} elements:", lt.len());
        for (i, e) in elements.iter().enumerate() {
            println!("  e{} = {{{}}}", i, e.join(","));
        }
    }
    Report {
        command: "dm",
        file: None,
        checks,
        data: Some(serde_json::json!({ "elements": elements })),
    }
    .emit(json)
}

fn count(max_n: usize, class: &str, json: bool) -> ExitCode {
    let predicate = match Predicate::parse(class) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let counts = match count_by_size(max_n, &predicate) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    if json {
        let doc = serde_json::json!({
            "command": "count",
            "class": predicate.to_string(),
            "counts": counts.iter().map(|&(n, c)| serde_json::json!({"n": n, "count": c})).collect::<Vec<_>>(),
            "total": counts.iter().map(|&(_, c)| c).sum::<usize>(),
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("counts serialize")
        );
    } else {
        println!("class: {}", predicate);
        for (n, c) in &counts {
            println!("  n={}: {}", n, c);
        }
        println!("total: {}", counts.iter().map(|&(_, c)| c).sum::<usize>());
    }
    ExitCode::SUCCESS
}

fn search(predicate: &str, max_n: usize, count_all: bool, json: bool) -> ExitCode {
    let predicate = match Predicate::parse(predicate) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    if count_all {
        return count(max_n, &predicate.to_string(), json);
    }
    let spec = SearchSpec {
        max_n,
        predicate: predicate.clone(),
        mode: SearchMode::FirstWitness,
    };
    match find_witness(&spec) {
        Ok(SearchOutcome::Witness(p)) => {
            let text = serialize_structure(&Structure {
                poset: p,
                directoid: None,
            });
            if json {
                let doc = serde_json::json!({
                    "command": "search", "predicate": predicate.to_string(),
                    "found": true, "witness": text,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializes")
                );
            } else {
                println!("# witness for: {}", predicate);
                print!("{}", text);
            }
            ExitCode::SUCCESS
        }
        Ok(SearchOutcome::NotFound { max_n }) => {
            if json {
                let doc = serde_json::json!({
                    "command": "search", "predicate": predicate.to_string(),
                    "found": false, "max_n": max_n,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializes")
                );
            } else {
                println!("not found up to n = {}", max_n);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn verify_all(max_n: usize, json: bool) -> ExitCode {
    let outcomes = suite::run_all(max_n);
    let all_passed = outcomes.iter().all(|o| o.passed);
    if json {
        let doc = serde_json::json!({
            "command": "verify-all",
            "max_n": max_n,
            "criteria": outcomes.iter().map(|o| serde_json::json!({
                "name": o.name, "passed": o.passed, "detail": o.detail,
            })).collect::<Vec<_>>(),
            "passed": all_passed,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializes")
        );
    } else {
        for o in &outcomes {
            println!(
                "{} {} ({})",
                if o.passed { "PASS" } else { "FAIL" },
                o.name,
                o.detail
            );
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer closes the pipe (e.g. `... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file, class } => {
            let s = match load(&file) {
                Ok(s) => s,
                Err(code) => return code,
            };
            match run_check(&s, &class) {
                Ok(checks) => Report {
                    command: "check",
                    file: Some(file.display().to_string()),
                    checks,
                    data: None,
                }
                .emit(cli.json),
                Err(msg) => {
                    eprintln!("error: {}", msg);
                    ExitCode::from(2)
                }
            }
        }
        Command::Residuate { file, mode } => match load(&file) {
            Ok(s) => residuate(&s, mode, cli.json),
            Err(code) => code,
        },
        Command::Directoid { file } => match load(&file) {
            Ok(s) => directoid_report(&s, cli.json),
            Err(code) => code,
        },
        Command::Congruence { file } => match load(&file) {
            Ok(s) => congruence_report(&s, cli.json),
            Err(code) => code,
        },
        Command::Dm {
            file,
            emit_completion,
        } => match load(&file) {
            Ok(s) => dm_report(&s, emit_completion.as_deref(), cli.json),
            Err(code) => code,
        },
        Command::Count { max_n, class } => count(max_n, &class, cli.json),
        Command::Search {
            predicate,
            max_n,
            count_all,
        } => search(&predicate, max_n, count_all, cli.json),
        Command::VerifyAll { max_n } => verify_all(max_n, cli.json),
    }
}
