//! The `weipac` command line. Every verb prints line-oriented text, or one
//! JSON record with `--json`, and exits with 0 on success, 64 on usage
//! errors, 65 on domain and parse errors and 2 on exhausted resources.
//! `pac-check` and `refute` report their verdict in the exit code.

mod gadget;
pub mod io;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bits::Point;
use crate::conat::ConatCertificate;
use crate::error::{Error, Result};
use crate::gadgets::appendix_construction;
use crate::learning::{
    learner_from_witness, nfl_adversary, witness_from_learner, witness_from_negative, witness_refute, Constants,
    SampleComplexity, StageSchedule, DEFAULT_NFL_BUDGET,
};
use crate::paccheck::{pac_check_exact, pac_check_mc, refute_learner, Evidence, Verdict};
use crate::pairing::cantor_pair;
use crate::risk::{empirical_risk, Rational};
use crate::vcdim::vcdim_stream;

pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DOMAIN: i32 = 65;
pub const EXIT_RESOURCE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "weipac", version, about = "Computable PAC learning over Cantor space")]
struct Cli {
    /// Print one JSON record instead of text lines.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// VC dimension of a class file: the certified value, or the first
    /// `depth` lower bounds.
    Vcdim {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        depth: u64,
        #[arg(long)]
        stream: bool,
    },
    /// Empirical risk minimization over a class file.
    Erm {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        sample: PathBuf,
    },
    /// Runs the learner built from a witness on a sample.
    LearnFromWitness {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        sample: PathBuf,
        #[arg(long, default_value_t = 2)]
        i: u64,
        #[arg(long, default_value_t = 2)]
        j: u64,
    },
    /// Evaluates the adversary witness of a learner.
    WitnessFromLearner {
        #[arg(long)]
        learner: String,
        /// Constant sample complexity; defaults to the learner's own.
        #[arg(long)]
        m: Option<u64>,
        /// Tuples such as `0,1,2,3`; repeatable.
        #[arg(long)]
        tuple: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_NFL_BUDGET)]
        budget: u64,
    },
    /// Evaluates the witness computed from a class's negative information.
    WitnessFromNegative {
        #[arg(long)]
        class: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        tuple: Vec<String>,
        /// Also search for a refutation with this point budget.
        #[arg(long)]
        refute: Option<usize>,
    },
    /// The no-free-lunch adversary's labeling.
    Nfl {
        #[arg(long)]
        learner: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        points: String,
    },
    /// Reduction gadgets.
    Gadget {
        #[command(subcommand)]
        action: GadgetAction,
    },
    /// Checks the PAC condition on one distribution.
    PacCheck(PacCheckArgs),
    /// Searches for evidence that a learner is not a PAC learner.
    Refute {
        #[arg(long)]
        class_pos: PathBuf,
        #[arg(long)]
        class_neg: PathBuf,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        learner: String,
        #[arg(long)]
        budget: u64,
    },
    /// The hypothesis sequence and witness built from an enumeration.
    Appendix {
        /// Enumerated numbers, all at least 1.
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 12)]
        budget: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetAction {
    /// Runs a gadget against its tame realizer.
    Run {
        name: String,
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 16)]
        budget: usize,
        /// Indices to decode instead of an output prefix.
        #[arg(long)]
        decode: Option<String>,
    },
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").required(true).args(["exact", "mc"])))]
struct PacCheckArgs {
    #[arg(long)]
    class: PathBuf,
    #[arg(long)]
    learner: String,
    #[arg(long)]
    dist: PathBuf,
    #[arg(long)]
    i: u64,
    #[arg(long)]
    j: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    exact: bool,
    /// Monte Carlo trials.
    #[arg(long)]
    mc: Option<u64>,
}

/// What a verb produced: text lines, the JSON record and the exit code.
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub code: i32,
}

impl Report {
    fn ok(lines: Vec<String>, json: Value) -> Self {
        Report { lines, json, code: 0 }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) | Error::Budget(_) => EXIT_RESOURCE,
        _ => EXIT_DOMAIN,
    }
}

pub fn ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `args` (program name first), runs the verb and writes its
/// output. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let _ = if cli.json {
                writeln!(out, "{}", report.json)
            } else {
                report.lines.iter().try_for_each(|l| writeln!(out, "{l}"))
            };
            report.code
        }
        Err(e) => {
            let code = exit_code(&e);
            let _ = if cli.json {
                writeln!(out, "{}", json!({"error": e.to_string(), "exit": code}))
            } else {
                writeln!(err, "error: {e}")
            };
            code
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let consts = Constants::default();
    match &cli.command {
        Command::Vcdim { class, depth, stream } => vcdim(class, *depth, *stream),
        Command::Erm { class, sample } => {
            let class = io::load_class(class)?;
            let sample = io::load_sample(sample)?;
            let h = crate::learning::erm_full(class.full())?.respond(&sample)?;
            let risk = empirical_risk(&sample, &h)?;
            Ok(Report::ok(
                vec![format!("h={h} risk={}", ratio(&risk))],
                json!({"hypothesis": h.to_string(), "risk": ratio(&risk)}),
            ))
        }
        Command::LearnFromWitness { witness, sample, i, j } => {
            let f = io::load_witness(witness)?;
            let sample = io::load_sample(sample)?;
            let (learner, m) = learner_from_witness(&f, &consts);
            let h = learner.respond(&sample)?;
            let mz = m.at(cantor_pair(*i, *j)?);
            Ok(Report::ok(
                vec![format!("h={h} m<{i},{j}>={mz}")],
                json!({"hypothesis": h.to_string(), "i": i, "j": j, "m": mz}),
            ))
        }
        Command::WitnessFromLearner { learner, m, tuple, budget } => {
            let loaded = io::load_learner(learner, &consts)?;
            let m = match (m, loaded.m) {
                (Some(n), _) => SampleComplexity::constant(*n),
                (None, Some(m)) => m,
                (None, None) => {
                    return Err(Error::Precondition("this learner has no sample complexity; pass --m".into()))
                }
            };
            let f = witness_from_learner(&loaded.learner, &m, *budget);
            evaluate_witness(&f, tuple, None)
        }
        Command::WitnessFromNegative { class, d, tuple, refute } => {
            let class = io::load_class(class)?;
            let f = witness_from_negative(class.negative(), *d, StageSchedule::default());
            let refutation = match refute {
                Some(b) => Some((*b, witness_refute(&*class.positive()?, &f, *b)?)),
                None => None,
            };
            evaluate_witness(&f, tuple, refutation)
        }
        Command::Nfl { learner, n, points } => {
            let loaded = io::load_learner(learner, &consts)?;
            let points = io::parse_points(points)?;
            let outcome = nfl_adversary(&loaded.learner, *n, &points)?;
            let prob = ratio(&outcome.probability());
            Ok(Report::ok(
                vec![format!("g={} prob={prob}", outcome.labeling)],
                json!({"labeling": outcome.labeling.to_string(), "probability": prob}),
            ))
        }
        Command::Gadget { action: GadgetAction::Run { name, input, budget, decode } } => {
            gadget::run(name, input, *budget, decode.as_deref(), &consts)
        }
        Command::PacCheck(args) => pac_check(args, cli.seed, &consts),
        Command::Refute { class_pos, class_neg, d, learner, budget } => {
            let pos = io::load_class(class_pos)?.positive()?;
            let neg = io::load_class(class_neg)?.negative();
            let loaded = io::load_learner(learner, &consts)?;
            let m = loaded.m.unwrap_or_else(|| SampleComplexity::formula(*d, &consts));
            Ok(match refute_learner(&*pos, &*neg, &loaded.learner, &m, *budget)? {
                None => Report::ok(vec!["absent".into()], json!({"evidence": null})),
                Some(ev) => {
                    let (line, record) = evidence_report(&ev);
                    Report { lines: vec![line], json: json!({"evidence": record}), code: 1 }
                }
            })
        }
        Command::Appendix { r, budget } => appendix(r, *budget),
    }
}

fn vcdim(class: &std::path::Path, depth: u64, stream: bool) -> Result<Report> {
    let class = io::load_class(class)?;
    let name = vcdim_stream(&class)?;
    let bounds = || name.lower_bounds(depth);
    let stream_report = |bounds: Vec<u64>| {
        let text = bounds.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",");
        Report::ok(vec![format!("stream={text}")], json!({"stream": bounds}))
    };
    if stream {
        return Ok(stream_report(bounds()));
    }
    Ok(match name.certificate() {
        Some(ConatCertificate::Finite { stage, value }) => Report::ok(
            vec![format!("vcdim={value} certificate=({stage},{value})")],
            json!({"vcdim": value, "certificate": {"stage": stage, "value": value}}),
        ),
        Some(ConatCertificate::Infinite) => {
            Report::ok(vec!["vcdim=inf".into()], json!({"vcdim": "inf", "certificate": "infinite"}))
        }
        None => stream_report(bounds()),
    })
}

fn evaluate_witness(
    f: &crate::learning::Witness,
    tuples: &[String],
    refutation: Option<(usize, Option<crate::learning::Refutation>)>,
) -> Result<Report> {
    let mut lines = vec![format!("arity={}", f.arity())];
    let mut values = Vec::new();
    for t in tuples {
        let t = io::parse_points(t)?;
        let b = f.eval(&t)?;
        lines.push(format!("f({})={b}", io::tuple_string(&t)));
        values.push(json!({"tuple": io::tuple_string(&t), "bits": b.to_string()}));
    }
    let mut record = json!({"arity": f.arity(), "values": values});
    let mut code = 0;
    if let Some((budget, r)) = refutation {
        match r {
            None => {
                lines.push(format!("refute({budget})=absent"));
                record["refutation"] = Value::Null;
            }
            Some(r) => {
                lines.push(format!("refute({budget})=member {} tuple ({})", r.member, io::tuple_string(&r.tuple)));
                record["refutation"] = json!({"member": r.member, "tuple": io::tuple_string(&r.tuple)});
                code = 1;
            }
        }
    }
    Ok(Report { lines, json: record, code })
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::Inconclusive => 2,
    }
}

fn pac_check(args: &PacCheckArgs, seed: u64, consts: &Constants) -> Result<Report> {
    let class = io::load_class(&args.class)?;
    let loaded = io::load_learner(&args.learner, consts)?;
    let dist = io::load_distribution(&args.dist)?;
    let (i, j, n) = (args.i, args.j, args.n);
    if let Some(trials) = args.mc {
        let v = pac_check_mc(&*class.full(), &loaded.learner, &dist, i, j, n, trials, seed, None)?;
        let name = verdict_name(v.verdict);
        return Ok(Report {
            lines: vec![format!(
                "verdict={name} successes={}/{} interval=[{:.6},{:.6}]",
                v.successes, v.trials, v.interval.0, v.interval.1
            )],
            json: json!({
                "verdict": name, "successes": v.successes, "trials": v.trials,
                "interval": [v.interval.0, v.interval.1], "seed": seed, "i": i, "j": j, "n": n,
            }),
            code: verdict_code(v.verdict),
        });
    }
    let v = pac_check_exact(&*class.full(), &loaded.learner, &dist, i, j, n)?;
    let name = verdict_name(v.verdict);
    Ok(Report {
        lines: vec![format!("verdict={name} probability={} inf={}", ratio(&v.success), ratio(&v.inf_risk))],
        json: json!({
            "verdict": name, "probability": ratio(&v.success), "inf_risk": ratio(&v.inf_risk),
            "i": i, "j": j, "n": n,
        }),
        code: verdict_code(v.verdict),
    })
}

fn evidence_report(ev: &Evidence) -> (String, Value) {
    match ev {
        Evidence::OutsideRange { sample, hypothesis, excluded } => (
            format!("evidence=range sample={} hypothesis={hypothesis} excluded={excluded}", sample.to_json()),
            json!({
                "kind": "range", "sample": sample.to_json(),
                "hypothesis": hypothesis.to_string(), "excluded": excluded.to_string(),
            }),
        ),
        Evidence::PacFailure { dist, i, j, n, failure, inf_upper } => (
            format!(
                "evidence=pac dist={} i={i} j={j} n={n} failure={} inf<={}",
                dist.to_json(),
                ratio(failure),
                ratio(inf_upper)
            ),
            json!({
                "kind": "pac", "dist": dist.to_json(), "i": i, "j": j, "n": n,
                "failure": ratio(failure), "inf_upper": ratio(inf_upper),
            }),
        ),
    }
}

fn appendix(r: &str, budget: usize) -> Result<Report> {
    let r = io::parse_list(r)?;
    let c = appendix_construction(&r)?;
    c.check_invariants()?;
    let class = crate::class::ListPositive::new(c.hypotheses())?;
    let refutation = witness_refute(&class, &c.witness(), budget)?;
    let mut lines: Vec<String> = c.hypotheses().iter().enumerate().map(|(i, h)| format!("h{i}={h}")).collect();
    lines.push("invariants=ok".into());
    let words: Vec<String> = c.stages().iter().map(|s| s.word.to_string()).collect();
    let mut record = json!({"words": words, "invariants": "ok"});
    let code = match &refutation {
        None => {
            lines.push(format!("refute({budget})=absent"));
            record["refutation"] = Value::Null;
            0
        }
        Some(x) => {
            let t: Vec<Point> = x.tuple.clone();
            lines.push(format!("refute({budget})=member {} tuple ({})", x.member, io::tuple_string(&t)));
            record["refutation"] = json!({"member": x.member, "tuple": io::tuple_string(&t)});
            1
        }
    };
    Ok(Report { lines, json: record, code })
}
