mod report;

use std::collections::BTreeMap;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use deltasg::congruence::is_delta;
use deltasg::enumerate::{
    enumerate_with, search_t2r_with, PruneRules, RunOptions, SearchCheckpoint, SpaceDescriptor,
    DEFAULT_ENUMERATION_CAP, DEFAULT_T2R_CAP,
};
use deltasg::green::ideals_form_chain;
use deltasg::io::parse_table;
use deltasg::properties::{
    is_nil, is_permutative, is_r_commutative, is_weakly_exponential, satisfies_identity, IdentitySpec,
    DEFAULT_PERMUTATIVE_DEGREE,
};
use deltasg::structure::{classify_we_delta, find_t2_decompositions, theorem1_conditions, Cond5Guard, T2Kind, Template};
use deltasg::table::MAX_ORDER;
use deltasg::{CayleyTable, Error};
use sha2::{Digest, Sha256};

use report::{json, Check, Input, Report};

/// Exit codes: 0 success, 1 a property is false, 2 input error, 3 falsification.
const EXIT_FALSE: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_FALSIFIED: i32 = 3;

#[derive(Parser)]
#[command(name = "deltasg", version, about = "Finite semigroup analysis: Δ-semigroups, identities, T-decompositions")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate properties of a table, with witnesses.
    Check {
        /// Table file (text or JSON); `-` reads stdin.
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "delta,we,nil,rcomm,medial,leftcomm,permutative,ideal-chain")]
        props: Vec<Prop>,
        /// Largest degree tried for permutational identities.
        #[arg(long, default_value_t = DEFAULT_PERMUTATIVE_DEGREE)]
        max_degree: usize,
    },
    /// Match a table against the weakly exponential Δ-semigroup templates.
    Classify { file: PathBuf },
    /// Evaluate the T2R characterization conditions on every T2R/T2L-shaped decomposition.
    Theorem1 {
        file: PathBuf,
        /// Guard condition (5) by |J_b| = 2 only, and mark where that changes the verdict.
        #[arg(long)]
        uncorrected_cond5: bool,
    },
    /// Exhaustive search of T2R-shaped tables for a T2R semigroup.
    SearchT2r {
        #[arg(long)]
        max_order: usize,
        /// Disable the ub ≠ b, vb ≠ b pruning rule.
        #[arg(long)]
        no_prune_p6: bool,
        /// Disable the S₀² = S₀ pruning rule.
        #[arg(long)]
        no_prune_p7: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Enumerate semigroups of one order as newline-delimited JSON.
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Print only the count.
        #[arg(long)]
        count_only: bool,
        /// Keep only tables with all of these properties.
        #[arg(long, value_delimiter = ',')]
        filter: Vec<Prop>,
        /// Every labeled table instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
        /// Attach the classification template to each table (implied by `--filter we,delta`).
        #[arg(long)]
        classify: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Continue from this checkpoint file, if it exists, and keep it updated.
    #[arg(long, conflicts_with = "checkpoint")]
    resume: Option<PathBuf>,
    /// Write a fresh checkpoint to this file.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Start at most this many search partitions in this run.
    #[arg(long)]
    budget: Option<usize>,
    /// Lift the default order cap.
    #[arg(long)]
    allow_large: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Prop {
    Delta,
    We,
    Nil,
    Rcomm,
    Medial,
    Leftcomm,
    Permutative,
    IdealChain,
}

impl Prop {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ClassificationGap { .. } | Error::AmbiguousClassification { .. } => EXIT_FALSIFIED,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let mut report = Report::new(command);
    let outcome = match &cli.command {
        Command::Check { file, props, max_degree } => cmd_check(&mut report, file, props, *max_degree),
        Command::Classify { file } => cmd_classify(&mut report, file),
        Command::Theorem1 { file, uncorrected_cond5 } => cmd_theorem1(&mut report, file, *uncorrected_cond5),
        Command::SearchT2r {
            max_order,
            no_prune_p6,
            no_prune_p7,
            run,
        } => {
            let rules = PruneRules {
                p6: !no_prune_p6,
                p7: !no_prune_p7,
            };
            cmd_search_t2r(&mut report, *max_order, rules, run)
        }
        Command::Enumerate {
            order,
            count_only,
            filter,
            labeled,
            classify,
            run,
        } => {
            let classify = *classify || (filter.contains(&Prop::We) && filter.contains(&Prop::Delta));
            cmd_enumerate(&mut report, *order, *count_only, filter, !labeled, classify, run)
        }
    };
    report.elapsed_ms = start.elapsed().as_millis();
    match outcome {
        Ok(code) => {
            report.exit_code = code;
            if cli.json {
                println!("{}", report.to_json());
            } else {
                println!("{}", report.to_text());
            }
            ExitCode::from(code as u8)
        }
        Err(f) => {
            if cli.json {
                println!("{}", serde_json::json!({ "error": { "message": f.message, "exit_code": f.code } }));
            }
            if f.code == EXIT_FALSIFIED {
                eprintln!("FALSIFICATION: {}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code as u8)
        }
    }
}

fn load(report: &mut Report, file: &Path) -> Result<CayleyTable, Failure> {
    let mut bytes = Vec::new();
    if file == Path::new("-") {
        io::stdin().read_to_end(&mut bytes)?;
    } else {
        bytes = std::fs::read(file).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("{}: {e}", file.display()),
        })?;
    }
    let text = String::from_utf8(bytes.clone()).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", file.display()),
    })?;
    let table = parse_table(&text)?.table;
    let digest: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    report.input = Some(Input {
        path: file.display().to_string(),
        sha256: digest,
        order: table.order(),
    });
    Ok(table)
}

fn eval_prop(t: &CayleyTable, prop: Prop, max_degree: usize) -> Check {
    let name = prop.name();
    match prop {
        Prop::Delta => {
            let v = is_delta(t);
            let detail = match &v.witness {
                Some(w) => format!(
                    "principal congruences of {:?} and {:?} are incomparable",
                    w.first_generator, w.second_generator
                ),
                None => String::new(),
            };
            Check::new(name, v.is_delta).witness(&v.witness).detail(detail)
        }
        Prop::We => match is_weakly_exponential(t) {
            Ok(()) => Check::new(name, true),
            Err(w) => Check::new(name, false)
                .witness(w)
                .detail(format!("no m works for a = {}, b = {}, n = {}", w.a, w.b, w.n)),
        },
        Prop::Nil => {
            if is_nil(t) {
                return Check::new(name, true);
            }
            match t.find_zero() {
                None => Check::new(name, false).detail("no zero element"),
                Some(z) => {
                    let a = t.elements().find(|&a| t.power(a, t.order()) != z).expect("some power misses zero");
                    Check::new(name, false)
                        .witness(serde_json::json!({ "element": a }))
                        .detail(format!("no power of {a} is the zero {z}"))
                }
            }
        }
        Prop::Rcomm => match is_r_commutative(t) {
            Ok(()) => Check::new(name, true),
            Err((s, u)) => Check::new(name, false)
                .witness([s, u])
                .detail(format!("no r in S¹ with {s}·{u} = {u}·{s}·r")),
        },
        Prop::Medial | Prop::Leftcomm => {
            let spec = if prop == Prop::Medial {
                IdentitySpec::medial()
            } else {
                IdentitySpec::left_commutative()
            };
            match satisfies_identity(t, &spec) {
                Ok(()) => Check::new(name, true).detail(spec.to_string()),
                Err(asg) => {
                    let vars: Vec<String> = spec.variables.iter().zip(&asg).map(|(v, x)| format!("{v} = {x}")).collect();
                    Check::new(name, false)
                        .witness(&asg)
                        .detail(format!("{spec} fails at {}", vars.join(", ")))
                }
            }
        }
        Prop::Permutative => {
            let v = is_permutative(t, max_degree);
            match &v.identity {
                Some((k, sigma)) => Check::new(name, true)
                    .witness(serde_json::json!({ "degree": k, "permutation": sigma }))
                    .detail(format!("x_1…x_{k} = x_σ(1)…x_σ({k}) with σ = {sigma:?}")),
                None => Check::new(name, false).detail(format!("no permutational identity of degree ≤ {max_degree}")),
            }
        }
        Prop::IdealChain => {
            let v = ideals_form_chain(t);
            let detail = match &v.witness {
                Some(((a, _), (b, _))) => format!("J({a}) and J({b}) are incomparable"),
                None => String::new(),
            };
            Check::new(name, v.chain).witness(&v.witness).detail(detail)
        }
    }
}

fn holds(c: &Check) -> bool {
    c.value.as_bool() == Some(true)
}

fn cmd_check(report: &mut Report, file: &Path, props: &[Prop], max_degree: usize) -> Result<i32, Failure> {
    let t = load(report, file)?;
    let mut code = 0;
    for &p in props {
        let c = eval_prop(&t, p, max_degree);
        if !holds(&c) {
            code = EXIT_FALSE;
        }
        report.push(c);
    }
    Ok(code)
}

fn cmd_classify(report: &mut Report, file: &Path) -> Result<i32, Failure> {
    let t = load(report, file)?;
    let r = classify_we_delta(&t)?;
    let code = if r.template == Template::NotWeDelta { EXIT_FALSE } else { 0 };
    report.push(Check::new("template", r.template.to_string()).witness(&r.witness));
    Ok(code)
}

fn fmt_set<'a>(xs: impl IntoIterator<Item = &'a usize>) -> String {
    let v: Vec<String> = xs.into_iter().map(usize::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn cmd_theorem1(report: &mut Report, file: &Path, uncorrected: bool) -> Result<i32, Failure> {
    let t = load(report, file)?;
    let candidates: Vec<_> = find_t2_decompositions(&t)
        .into_iter()
        .filter(|d| d.kind != T2Kind::T1)
        .collect();
    if candidates.is_empty() {
        report.push(Check::new("decompositions", 0).detail("NoDecomposition: no two-element left or right zero subsemigroup"));
        return Ok(EXIT_FALSE);
    }
    report.push(Check::new("decompositions", candidates.len()));
    let guard = if uncorrected { Cond5Guard::Uncorrected } else { Cond5Guard::Corrected };
    let mut any = false;
    for (i, d) in candidates.iter().enumerate() {
        let r = theorem1_conditions(&t, d, guard)?;
        let reference = if uncorrected {
            Some(theorem1_conditions(&t, d, Cond5Guard::Corrected)?)
        } else {
            None
        };
        let label = format!("candidate {}", i + 1);
        report.push(
            Check::new(&label, r.all_hold())
                .data(serde_json::json!({
                    "kind": d.kind,
                    "s0": d.s0,
                    "s1": d.s1,
                    "guard": guard,
                    "dual": r.dual,
                    "synthetic_identity": r.synthetic_identity,
                    "vacuous": r.vacuous(),
                }))
                .detail(format!("{} with S0 = {}, S1 = {}", d.kind, fmt_set(&d.s0), fmt_set(&d.s1))),
        );
        any |= r.all_hold();
        for (k, c) in r.conditions.iter().enumerate() {
            let mut detail = c.detail.clone();
            if c.vacuous {
                detail.push_str(" [vacuous]");
            }
            let mut check = Check::new(format!("{label} condition ({})", c.condition), c.holds).witness(&c.witness);
            if let Some(reference) = &reference {
                let corrected = &reference.conditions[k];
                if corrected.holds != c.holds || corrected.vacuous != c.vacuous {
                    detail.push_str(&format!(
                        "\nDIFFERS from the corrected guard: holds {}, vacuous {}",
                        corrected.holds, corrected.vacuous
                    ));
                }
                check = check.data(serde_json::json!({
                    "corrected_holds": corrected.holds,
                    "corrected_vacuous": corrected.vacuous,
                }));
            }
            report.push(check.detail(detail));
        }
    }
    Ok(if any { 0 } else { EXIT_FALSE })
}

fn cap(report: &mut Report, order: usize, default: usize, allow_large: bool) -> usize {
    if allow_large {
        if order > default {
            let note = format!("order {order} is above the default cap {default}; this may take very long");
            eprintln!("warning: {note}");
            report.notes.push(note);
        }
        MAX_ORDER
    } else {
        default
    }
}

/// The checkpoint to start from and the file progress is written to.
fn checkpoint(run: &RunArgs) -> Result<(SearchCheckpoint, Option<PathBuf>), Failure> {
    if let Some(p) = &run.resume {
        let cp = if p.exists() { SearchCheckpoint::load(p)? } else { SearchCheckpoint::default() };
        return Ok((cp, Some(p.clone())));
    }
    Ok((SearchCheckpoint::default(), run.checkpoint.clone()))
}

fn run_options(run: &RunArgs) -> RunOptions {
    RunOptions {
        threads: run.threads,
        partition_budget: run.budget,
    }
}

fn cmd_search_t2r(report: &mut Report, max_order: usize, rules: PruneRules, run: &RunArgs) -> Result<i32, Failure> {
    let limit = cap(report, max_order, DEFAULT_T2R_CAP, run.allow_large);
    let (mut cp, path) = checkpoint(run)?;
    let r = search_t2r_with(max_order, rules, limit, &run_options(run), &mut cp, &mut |cp| match &path {
        Some(p) => cp.save(p),
        None => Ok(()),
    })?;
    if let Some(p) = &path {
        cp.save(p)?;
    }
    let found = r.found();
    for o in &r.orders {
        let value = if o.counters.emitted > 0 {
            "found"
        } else if o.complete {
            "absent"
        } else {
            "incomplete"
        };
        report.push(
            Check::new(format!("order {}", o.order), value)
                .witness(o.witness.as_ref().map(CayleyTable::rows))
                .data(&o.counters),
        );
    }
    let summary = if found {
        "T2R semigroup found"
    } else if r.complete() {
        "no T2R semigroup found"
    } else {
        "search incomplete; resume to continue"
    };
    report.push(
        Check::new("t2r", found)
            .data(serde_json::json!({ "max_order": max_order, "rules": rules, "complete": r.complete() }))
            .detail(summary),
    );
    Ok(if found { EXIT_FALSIFIED } else { 0 })
}

fn cmd_enumerate(
    report: &mut Report,
    order: usize,
    count_only: bool,
    filter: &[Prop],
    up_to_iso: bool,
    classify: bool,
    run: &RunArgs,
) -> Result<i32, Failure> {
    let limit = cap(report, order, DEFAULT_ENUMERATION_CAP, run.allow_large);
    let (mut cp, path) = checkpoint(run)?;
    let descriptor = SpaceDescriptor::Enumerate { order, up_to_iso };
    let mut stage = cp.stage_mut(&descriptor).clone();
    let resumed_from = stage.flushed;
    let keep = !count_only || !filter.is_empty() || classify;

    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut matched = 0u64;
    let mut templates: BTreeMap<String, u64> = BTreeMap::new();
    let mut falsified: Option<String> = None;
    let mut write_error: Option<io::Error> = None;
    let summary = enumerate_with(
        order,
        up_to_iso,
        limit,
        &run_options(run),
        &mut stage,
        keep,
        &mut |t| {
            if !filter.iter().all(|&p| holds(&eval_prop(&t, p, DEFAULT_PERMUTATIVE_DEGREE))) {
                return;
            }
            matched += 1;
            let mut line = serde_json::json!({ "order": t.order(), "table": t.rows() });
            if classify {
                let template = match classify_we_delta(&t) {
                    Ok(r) => {
                        if matches!(r.template, Template::T2R | Template::T2L) {
                            falsified.get_or_insert_with(|| format!("{} template matched by {:?}", r.template, t.rows()));
                        }
                        r.template.to_string()
                    }
                    Err(e) => {
                        falsified.get_or_insert_with(|| e.to_string());
                        "ERROR".to_string()
                    }
                };
                *templates.entry(template.clone()).or_default() += 1;
                line["template"] = json(template);
            }
            if !count_only && write_error.is_none() {
                if let Err(e) = writeln!(out, "{line}") {
                    write_error = Some(e);
                }
            }
        },
        &mut |st| match &path {
            Some(p) => {
                *cp.stage_mut(&descriptor) = st.clone();
                cp.save(p)
            }
            None => Ok(()),
        },
    )?;
    out.flush()?;
    drop(out);
    if let Some(e) = write_error {
        return Err(e.into());
    }
    if let Some(p) = &path {
        *cp.stage_mut(&descriptor) = stage;
        cp.save(p)?;
    }
    if resumed_from > 0 {
        report
            .notes
            .push(format!("resumed: output of the first {resumed_from} partitions was emitted by an earlier run"));
    }
    let count = if filter.is_empty() { summary.counters.emitted } else { matched };
    let mut c = Check::new("count", count).data(serde_json::json!({
        "up_to_iso": up_to_iso,
        "filter": filter.iter().map(|p| p.name()).collect::<Vec<_>>(),
        "complete": summary.complete,
        "partitions": summary.partitions,
        "partitions_done": summary.partitions_done,
        "counters": summary.counters,
    }));
    if !filter.is_empty() && resumed_from > 0 {
        c = c.detail("filtered count covers this run only");
    }
    report.push(c);
    if classify {
        report.push(Check::new("templates", &templates));
    }
    if let Some(msg) = falsified {
        report.push(Check::new("falsification", true).detail(msg));
        return Ok(EXIT_FALSIFIED);
    }
    Ok(0)
}
