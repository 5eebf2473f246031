//! `sofic`: JSON reports on sofic shifts given as labeled-graph presentation files.

mod io;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sofic_core::asymptotic::{decompose, enumerate_a_circ, is_triple};
use sofic_core::decision::{
    constants, decide_factor, decide_homomorphism, Budget, Caps, FactorAnswer, HomAnswer,
};
use sofic_core::oracle::{search_homomorphisms, Want};
use sofic_core::periodic::{enumerate_primitive_words, orbit_representatives, period_invariants};
use sofic_core::pumping::{escapes, in_bk, psi_k_trace, tail_bound_holds};
use sofic_core::syntactic::{derived_shift, is_synchronizing};
use sofic_core::{EventuallyPeriodicPoint, SoficError, SoficShift};

use report::{with_version, Fmt};

#[derive(Parser)]
#[command(name = "sofic", version, about = "Reports on sofic shifts and bounded decisions between them")]
struct Cli {
    /// Print the JSON schema of all reports and exit.
    #[arg(long)]
    schema: bool,

    /// Worker threads. Results never depend on this value.
    #[arg(long, env = "SOFIC_THREADS", default_value_t = 1, global = true)]
    threads: usize,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation summary: covers, transitivity, aperiodicity, entropy.
    Info { file: PathBuf },
    /// Topological entropy in nats.
    Entropy { file: PathBuf },
    /// Syntactic semigroup with its Shannon graph cycle data.
    Semigroup { file: PathBuf },
    /// Primitive periodic words up to length `k` with their `R` and `Q`.
    Periodic {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Synchronizing classes, or whether one word is synchronizing.
    Sync {
        file: PathBuf,
        #[arg(long)]
        word: Option<String>,
    },
    /// The derived shift: points without synchronizing words.
    Derived { file: PathBuf },
    /// Trace of the pumping normalizer on a word.
    Psi {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Asymptotic triple and offset of an eventually periodic point.
    Decompose {
        file: PathBuf,
        /// Period of the left tail.
        #[arg(long)]
        left: String,
        #[arg(long, default_value = "")]
        middle: String,
        /// Period of the right tail.
        #[arg(long)]
        right: String,
        /// Coordinate of the first middle symbol.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        start: i64,
    },
    /// Enumerated asymptotic triples.
    Triples {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        h_cap: usize,
        #[arg(long, default_value_t = 2)]
        c_cap: usize,
    },
    /// Decision constants of a pair.
    Constants {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        h_cap: Option<usize>,
    },
    /// Bounded search for a homomorphism with infinite image from X into Y.
    DecideHom {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Bounded search for a factor map from X onto Y.
    DecideFactor {
        x: PathBuf,
        y: PathBuf,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Exhaustive search over block maps of one window.
    Oracle {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, default_value_t = 1)]
        window: usize,
        #[arg(long, value_enum, default_value_t = WantArg::Any)]
        want: WantArg,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
}

#[derive(Args)]
struct CapArgs {
    /// Most intermediate segments per block; the bound when absent.
    #[arg(long)]
    k_cap: Option<u128>,
    /// Most blocks; the bound when absent.
    #[arg(long)]
    n_cap: Option<u128>,
    /// Longest middle word of an enumerated triple.
    #[arg(long, default_value_t = 2)]
    c_cap: usize,
    /// Longest enumerated periodic word.
    #[arg(long, default_value_t = 2)]
    h_cap: usize,
    #[arg(long)]
    budget_ms: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WantArg {
    Any,
    Infinite,
    Surjective,
    MeetsNonderived,
}

impl From<WantArg> for Want {
    fn from(w: WantArg) -> Self {
        match w {
            WantArg::Any => Want::Any,
            WantArg::Infinite => Want::InfiniteImage,
            WantArg::Surjective => Want::Surjective,
            WantArg::MeetsNonderived => Want::MeetsNonderived,
        }
    }
}

enum Exit {
    Definite,
    Truncated,
}

struct Failure {
    kind: &'static str,
    message: String,
    code: u8,
}

impl From<SoficError> for Failure {
    fn from(e: SoficError) -> Self {
        let code = if matches!(e, SoficError::ResourceExceeded(_)) { 2 } else { 1 };
        Failure { kind: report::error_kind(&e), message: e.to_string(), code }
    }
}

fn input_error(message: String) -> Failure {
    Failure { kind: "input", message, code: 1 }
}

type Outcome = Result<(Value, Exit), Failure>;

fn load(path: &Path) -> Result<SoficShift, Failure> {
    io::load_shift(path).map_err(input_error)
}

fn deadline(ms: Option<u64>) -> Option<Instant> {
    ms.map(|ms| Instant::now() + Duration::from_millis(ms))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => return emit(Err(Failure { kind: "usage", message: e.to_string().trim().to_string(), code: 1 })),
    };
    if cli.schema {
        print!("{}", report::SCHEMA);
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        return emit(Err(Failure { kind: "usage", message: "no verb given".into(), code: 1 }));
    };
    emit(run(command, cli.threads))
}

fn emit(outcome: Outcome) -> ExitCode {
    let (value, code) = match outcome {
        Ok((v, Exit::Definite)) => (v, 0),
        Ok((v, Exit::Truncated)) => (v, 2),
        Err(f) => (with_version("error", json!({ "error": { "kind": f.kind, "message": f.message } })), f.code),
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}

fn run(command: Command, threads: usize) -> Outcome {
    match command {
        Command::Info { file } => info(&load(&file)?),
        Command::Entropy { file } => {
            let h = load(&file)?.entropy()?;
            Ok((with_version("entropy", json!({ "entropy_nats": report::round9(h) })), Exit::Definite))
        }
        Command::Semigroup { file } => semigroup(&load(&file)?),
        Command::Periodic { file, k } => periodic(&load(&file)?, k),
        Command::Sync { file, word } => sync(&load(&file)?, word.as_deref()),
        Command::Derived { file } => derived(&load(&file)?),
        Command::Psi { file, word, k } => psi(&load(&file)?, &word, k),
        Command::Decompose { file, left, middle, right, start } => {
            decompose_point(&load(&file)?, &left, &middle, &right, start)
        }
        Command::Triples { file, h_cap, c_cap } => triples(&load(&file)?, h_cap, c_cap),
        Command::Constants { x, y, h_cap } => {
            let c = constants(&load(&x)?, &load(&y)?, h_cap)?;
            Ok((with_version("constants", json!({ "constants": report::constants(&c) })), Exit::Definite))
        }
        Command::DecideHom { x, y, caps } => decide_hom(&load(&x)?, &load(&y)?, &caps, threads),
        Command::DecideFactor { x, y, caps } => decide_fac(&load(&x)?, &load(&y)?, &caps, threads),
        Command::Oracle { x, y, window, want, budget_ms } => oracle(&load(&x)?, &load(&y)?, window, want, budget_ms),
    }
}

fn info(shift: &SoficShift) -> Outcome {
    let p = shift.presentation();
    let fischer = shift.fischer_cover().ok().map(|f| f.vertex_count());
    let entropy = shift.entropy().ok().map(report::round9);
    let body = json!({
        "alphabet": shift.alphabet(),
        "vertices": p.vertex_count(),
        "edges": p.edges().len(),
        "right_resolving": p.is_right_resolving(),
        "deterministic_cover_vertices": shift.deterministic_cover().vertex_count(),
        "fischer_cover_vertices": fischer,
        "transitive": shift.is_transitive(),
        "aperiodic": shift.is_aperiodic().ok(),
        "finite": shift.is_finite(),
        "entropy_nats": entropy,
        "semigroup_classes": shift.semigroup().v(),
    });
    Ok((with_version("info", body), Exit::Definite))
}

fn semigroup(shift: &SoficShift) -> Outcome {
    let f = Fmt::of(shift);
    let sg = shift.semigroup();
    let shannon = sg.shannon();
    let classes: Vec<Value> = sg
        .admissible_classes()
        .map(|c| {
            let cyc = shannon.cycle_data(c);
            json!({
                "id": c.0,
                "representative": f.word(sg.representative(c)),
                "synchronizing": sg.is_synchronizing_class(c),
                "cyclic": cyc.is_some(),
                "r": cyc.map(|d| d.r),
                "q": cyc.map(|d| d.q),
            })
        })
        .collect();
    let n = sg.len();
    let table: Vec<Vec<usize>> = sg.table().chunks(n).map(|row| row.iter().map(|c| c.0).collect()).collect();
    let body = json!({
        "v": sg.v(),
        "v_circ": shannon.v_circ(),
        "zero": sg.zero().0,
        "classes": classes,
        "product": table,
    });
    Ok((with_version("semigroup", body), Exit::Definite))
}

fn periodic(shift: &SoficShift, k: usize) -> Outcome {
    let f = Fmt::of(shift);
    let words = enumerate_primitive_words(shift, k);
    let mut rows = Vec::with_capacity(words.len());
    for a in &words {
        let inv = period_invariants(shift, a)?;
        rows.push(json!({ "word": f.word(a), "r": inv.r, "q": inv.q }));
    }
    let orbits: Vec<Value> = orbit_representatives(&words).iter().map(|a| f.word(a)).collect();
    let body = json!({ "k": k, "words": rows, "orbits": orbits });
    Ok((with_version("periodic", body), Exit::Definite))
}

fn sync(shift: &SoficShift, word: Option<&str>) -> Outcome {
    let f = Fmt::of(shift);
    let sg = shift.semigroup();
    let classes: Vec<Value> = sg
        .synchronizing_classes()
        .into_iter()
        .map(|c| json!({ "id": c.0, "representative": f.word(sg.representative(c)) }))
        .collect();
    let mut body = json!({ "synchronizing_classes": classes });
    if let Some(text) = word {
        let w = shift.parse_word(text)?;
        body["word"] = f.word(&w);
        body["synchronizing"] = json!(is_synchronizing(shift, &w)?);
    }
    Ok((with_version("sync", body), Exit::Definite))
}

fn derived(shift: &SoficShift) -> Outcome {
    let d = derived_shift(shift);
    let body = json!({
        "empty": d.is_none(),
        "presentation": d.map(|d| serde_json::to_value(io::to_file(d.presentation())).expect("serializable")),
    });
    Ok((with_version("derived", body), Exit::Definite))
}

fn psi(shift: &SoficShift, text: &str, k: usize) -> Outcome {
    if k == 0 {
        return Err(SoficError::Precondition("k must be positive".into()).into());
    }
    let f = Fmt::of(shift);
    let w = shift.parse_word(text)?;
    let inside = in_bk(shift, &w, k)?;
    let mut body = json!({ "input": f.word(&w), "k": k, "in_b_k": inside });
    if inside {
        let trace = psi_k_trace(shift, &w, k)?;
        let extra = report::psi_trace(&f, &trace);
        body["output"] = extra["output"].clone();
        body["steps"] = extra["steps"].clone();
        body["escapes"] = json!(escapes(shift, &trace.output, k)?);
        body["tail_bound_holds"] = json!(tail_bound_holds(shift, &w, k)?);
    } else {
        body["output"] = f.word(&w);
        body["steps"] = json!([]);
    }
    Ok((with_version("psi", body), Exit::Definite))
}

fn decompose_point(shift: &SoficShift, left: &str, middle: &str, right: &str, start: i64) -> Outcome {
    let f = Fmt::of(shift);
    let (l, m, r) = (shift.parse_word(left)?, shift.parse_word(middle)?, shift.parse_word(right)?);
    let point = EventuallyPeriodicPoint::new(l, m, r, start)?;
    let (t, triple) = decompose(&point)?;
    let body = json!({ "t": t, "triple": f.triple(&triple), "is_triple": is_triple(shift, &triple) });
    Ok((with_version("decompose", body), Exit::Definite))
}

fn triples(shift: &SoficShift, h: usize, c: usize) -> Outcome {
    let f = Fmt::of(shift);
    let ts = enumerate_a_circ(shift, h, c)?;
    let body = json!({
        "h_cap": h,
        "c_cap": c,
        "count": ts.len(),
        "triples": ts.iter().map(|t| f.triple(t)).collect::<Vec<_>>(),
    });
    Ok((with_version("triples", body), Exit::Definite))
}

fn caps_of(a: &CapArgs) -> Caps {
    Caps { k: a.k_cap, n: a.n_cap, c: a.c_cap, h: Some(a.h_cap) }
}

fn caps_json(c: &Caps) -> Value {
    json!({
        "k_cap": c.k.map(report::big),
        "n_cap": c.n.map(report::big),
        "c_cap": c.c,
        "h_cap": c.h,
    })
}

/// Certificates that rest only on enumerated data below the caps.
fn capped_certificate(certificate: &str) -> bool {
    certificate.starts_with("every one of")
}

fn decision_body(
    answer: &str,
    detail: Value,
    consts: &sofic_core::decision::DecisionConstants,
    caps: &Caps,
    checked: usize,
    warnings: &[String],
    threads: usize,
) -> Value {
    let mut body = json!({
        "answer": answer,
        "constants": report::constants(consts),
        "caps_used": caps_json(caps),
        "candidates_checked": checked,
        "truncation_warnings": warnings,
        "normalizations": report::NORMALIZATIONS,
        "threads": threads,
    });
    if let (Value::Object(b), Value::Object(d)) = (&mut body, detail) {
        b.extend(d);
    }
    body
}

fn decide_hom(x: &SoficShift, y: &SoficShift, args: &CapArgs, threads: usize) -> Outcome {
    let end = deadline(args.budget_ms);
    let stop = move || end.is_some_and(|d| Instant::now() >= d);
    let budget = Budget::unlimited().with_stop(&stop);
    let caps = caps_of(args);
    let rep = decide_homomorphism(x, y, &caps, &budget)?;
    let (fx, fy) = (Fmt::of(x), Fmt::of(y));
    let truncated = rep.truncated();
    let (answer, detail, exit) = match &rep.answer {
        HomAnswer::Yes { phi, psi, check } => (
            "yes",
            json!({ "witness": {
                "phi": report::periodic_map(&fx, &fy, phi),
                "psi": report::accompanying_map(&fx, &fy, psi),
                "check": report::check(&fx, check),
            }}),
            if truncated { Exit::Truncated } else { Exit::Definite },
        ),
        HomAnswer::No { certificate } => (
            "no",
            json!({ "certificate": certificate }),
            if truncated && capped_certificate(certificate) { Exit::Truncated } else { Exit::Definite },
        ),
        HomAnswer::ResourceExceeded { frontier } => {
            ("resource_exceeded", json!({ "frontier": frontier }), Exit::Truncated)
        }
    };
    let body =
        decision_body(answer, detail, &rep.constants, &rep.caps, rep.candidates_checked, &rep.truncation_warnings, threads);
    Ok((with_version("decide-hom", body), exit))
}

fn decide_fac(x: &SoficShift, y: &SoficShift, args: &CapArgs, threads: usize) -> Outcome {
    let end = deadline(args.budget_ms);
    let stop = move || end.is_some_and(|d| Instant::now() >= d);
    let budget = Budget::unlimited().with_stop(&stop);
    let caps = caps_of(args);
    let rep = decide_factor(x, y, &caps, &budget)?;
    let (fx, fy) = (Fmt::of(x), Fmt::of(y));
    let truncated = rep.truncated();
    let (answer, detail, exit) = match &rep.answer {
        FactorAnswer::Yes { phi, psi, psi_minus, psi_plus, check } => {
            let flanks = report::psi_flanks(&fx, psi_minus, psi_plus);
            (
                "yes",
                json!({ "witness": {
                    "phi": report::periodic_map(&fx, &fy, phi),
                    "psi": report::accompanying_map(&fx, &fy, psi),
                    "psi_minus": flanks["psi_minus"],
                    "psi_plus": flanks["psi_plus"],
                    "check": report::check(&fx, check),
                }}),
                if truncated { Exit::Truncated } else { Exit::Definite },
            )
        }
        FactorAnswer::No { certificate } => (
            "no",
            json!({ "certificate": certificate }),
            if truncated && capped_certificate(certificate) { Exit::Truncated } else { Exit::Definite },
        ),
        FactorAnswer::ResourceExceeded { frontier } => {
            ("resource_exceeded", json!({ "frontier": frontier }), Exit::Truncated)
        }
    };
    let mut body =
        decision_body(answer, detail, &rep.constants, &rep.caps, rep.candidates_checked, &rep.truncation_warnings, threads);
    body["oracle_meets_nonderived"] = json!(rep.oracle_meets_nonderived);
    Ok((with_version("decide-factor", body), exit))
}

fn oracle(x: &SoficShift, y: &SoficShift, window: usize, want: WantArg, budget_ms: Option<u64>) -> Outcome {
    let end = deadline(budget_ms);
    let stop = move || end.is_some_and(|d| Instant::now() >= d);
    let budget = Budget::unlimited().with_stop(&stop);
    let r = search_homomorphisms(x, y, window, want.into(), &budget)?;
    let exit = if r.exhausted { Exit::Definite } else { Exit::Truncated };
    Ok((with_version("oracle", report::oracle(&Fmt::of(x), &r)), exit))
}
