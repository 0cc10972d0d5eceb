//! Python bindings. Classes, distributions and witnesses cross the
//! boundary as the same JSON documents the command line reads; learners
//! are given by the command line's descriptors.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use weipac_core::bits::Point;
use weipac_core::class::ClassGenerator;
use weipac_core::cli::{io, ratio};
use weipac_core::conat::ConatCertificate;
use weipac_core::error::Error;
use weipac_core::learning::{self, Constants};
use weipac_core::paccheck::{self, Verdict};
use weipac_core::risk::{Distribution, Sample};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Resource(_) | Error::Budget(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn class(json: &str) -> PyResult<Arc<ClassGenerator>> {
    Ok(Arc::new(ClassGenerator::from_json(json).map_err(py_err)?))
}

fn sample(items: Vec<(u64, bool)>) -> Sample {
    Sample::new(items.into_iter().map(|(x, y)| (Point::from(x), y)).collect())
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    }
}

#[pyfunction]
fn cantor_pair(n: u64, k: u64) -> PyResult<u64> {
    weipac_core::pairing::cantor_pair(n, k).map_err(py_err)
}

#[pyfunction]
fn cantor_unpair(z: u64) -> (u64, u64) {
    weipac_core::pairing::cantor_unpair(z)
}

/// `(value, lower_bounds)`: the certified dimension (`None` when the
/// stream carries no certificate, `-1` for infinity) and the first
/// `depth` lower bounds.
#[pyfunction]
fn vcdim(class_json: &str, depth: u64) -> PyResult<(Option<i64>, Vec<u64>)> {
    let name = weipac_core::vcdim::vcdim_stream(&class(class_json)?).map_err(py_err)?;
    let value = name.certificate().map(|c| match c {
        ConatCertificate::Finite { value, .. } => value as i64,
        ConatCertificate::Infinite => -1,
    });
    Ok((value, name.lower_bounds(depth)))
}

#[pyfunction]
fn vcdim_bruteforce(class_json: &str, depth: usize) -> PyResult<u64> {
    weipac_core::vcdim::vcdim_bruteforce(&*class(class_json)?, depth).map_err(py_err)
}

/// The empirical risk minimizer's answer and its risk as `"n/d"`.
#[pyfunction]
fn erm(class_json: &str, items: Vec<(u64, bool)>) -> PyResult<(String, String)> {
    let s = sample(items);
    let h = learning::erm_full(class(class_json)?.full()).and_then(|l| l.respond(&s)).map_err(py_err)?;
    let risk = weipac_core::risk::empirical_risk(&s, &h).map_err(py_err)?;
    Ok((h.to_string(), ratio(&risk)))
}

#[pyfunction]
fn sample_complexity(d: u64, i: u64, j: u64) -> PyResult<u64> {
    let z = weipac_core::pairing::cantor_pair(i, j).map_err(py_err)?;
    Ok(learning::sample_complexity_m(d, z, &Constants::default()))
}

/// The adversary's labeling of `points` and its failure probability.
#[pyfunction]
fn nfl(learner: &str, n: usize, points: Vec<u64>) -> PyResult<(String, String)> {
    let loaded = io::load_learner(learner, &Constants::default()).map_err(py_err)?;
    let points: Vec<Point> = points.into_iter().map(Point::from).collect();
    let out = learning::nfl_adversary(&loaded.learner, n, &points).map_err(py_err)?;
    Ok((out.labeling.to_string(), ratio(&out.probability())))
}

/// Exact check: `(verdict, success probability, inf risk)`.
#[pyfunction]
fn pac_check_exact(
    class_json: &str,
    learner: &str,
    dist_json: &str,
    i: u64,
    j: u64,
    n: usize,
) -> PyResult<(String, String, String)> {
    let c = class(class_json)?;
    let loaded = io::load_learner(learner, &Constants::default()).map_err(py_err)?;
    let dist = Distribution::from_json(dist_json).map_err(py_err)?;
    let v = paccheck::pac_check_exact(&*c.full(), &loaded.learner, &dist, i, j, n).map_err(py_err)?;
    Ok((verdict(v.verdict).into(), ratio(&v.success), ratio(&v.inf_risk)))
}

/// Monte Carlo check: `(verdict, successes, trials, (low, high))`.
#[pyfunction]
#[pyo3(signature = (class_json, learner, dist_json, i, j, n, trials, seed=0))]
#[allow(clippy::too_many_arguments)]
fn pac_check_mc(
    class_json: &str,
    learner: &str,
    dist_json: &str,
    i: u64,
    j: u64,
    n: usize,
    trials: u64,
    seed: u64,
) -> PyResult<(String, u64, u64, (f64, f64))> {
    let c = class(class_json)?;
    let loaded = io::load_learner(learner, &Constants::default()).map_err(py_err)?;
    let dist = Distribution::from_json(dist_json).map_err(py_err)?;
    let v = paccheck::pac_check_mc(&*c.full(), &loaded.learner, &dist, i, j, n, trials, seed, None).map_err(py_err)?;
    Ok((verdict(v.verdict).into(), v.successes, v.trials, v.interval))
}

/// Values of the witness computed from the class's negative information.
#[pyfunction]
fn witness_from_negative(class_json: &str, d: usize, tuples: Vec<Vec<u64>>) -> PyResult<Vec<String>> {
    let f = learning::witness_from_negative(class(class_json)?.negative(), d, learning::StageSchedule::default());
    tuples
        .into_iter()
        .map(|t| {
            let t: Vec<Point> = t.into_iter().map(Point::from).collect();
            f.eval(&t).map(|w| w.to_string()).map_err(py_err)
        })
        .collect()
}

/// Runs the command line in process: `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("weipac".to_string()).chain(args);
    let code = weipac_core::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}

#[pymodule]
fn weipac(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(cantor_pair, m)?)?;
    m.add_function(wrap_pyfunction!(cantor_unpair, m)?)?;
    m.add_function(wrap_pyfunction!(vcdim, m)?)?;
    m.add_function(wrap_pyfunction!(vcdim_bruteforce, m)?)?;
    m.add_function(wrap_pyfunction!(erm, m)?)?;
    m.add_function(wrap_pyfunction!(sample_complexity, m)?)?;
    m.add_function(wrap_pyfunction!(nfl, m)?)?;
    m.add_function(wrap_pyfunction!(pac_check_exact, m)?)?;
    m.add_function(wrap_pyfunction!(pac_check_mc, m)?)?;
    m.add_function(wrap_pyfunction!(witness_from_negative, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
