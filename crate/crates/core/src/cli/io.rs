//! File formats read by the command line.

use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::bits::{Point, Word};
use crate::class::ClassGenerator;
use crate::error::{Error, Result};
use crate::hypothesis::{EventuallyConstant, Hypothesis};
use crate::learning::{erm_full, learner_from_witness, Constants, Learner, SampleComplexity, Witness};
use crate::risk::{Distribution, Sample};

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_class(path: &Path) -> Result<Arc<ClassGenerator>> {
    Ok(Arc::new(ClassGenerator::from_json(&read(path)?)?))
}

pub fn load_sample(path: &Path) -> Result<Sample> {
    Sample::from_json(&read(path)?)
}

pub fn load_distribution(path: &Path) -> Result<Distribution> {
    Distribution::from_json(&read(path)?)
}

pub fn load_witness(path: &Path) -> Result<Witness> {
    Witness::from_json(&read(path)?)
}

/// A learner, with the sample complexity that comes with it when the
/// descriptor provides one.
pub struct LoadedLearner {
    pub learner: Learner,
    pub m: Option<SampleComplexity>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
enum LearnerDescriptor {
    ErmFull { class: String },
    FromWitness { witness: String },
    Const { hypothesis: EventuallyConstant },
}

/// `const0`, `const1`, an inline JSON descriptor, or a file holding one.
pub fn load_learner(desc: &str, consts: &Constants) -> Result<LoadedLearner> {
    let constant = |b| LoadedLearner { learner: Learner::constant(Hypothesis::constant(b)), m: None };
    match desc {
        "const0" => return Ok(constant(false)),
        "const1" => return Ok(constant(true)),
        _ => {}
    }
    let text = if desc.trim_start().starts_with('{') { desc.to_string() } else { read(Path::new(desc))? };
    let parsed: LearnerDescriptor =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("learner descriptor: {e}")))?;
    Ok(match parsed {
        LearnerDescriptor::ErmFull { class } => {
            LoadedLearner { learner: erm_full(load_class(Path::new(&class))?.full())?, m: None }
        }
        LearnerDescriptor::FromWitness { witness } => {
            let (learner, m) = learner_from_witness(&load_witness(Path::new(&witness))?, consts);
            LoadedLearner { learner, m: Some(m) }
        }
        LearnerDescriptor::Const { hypothesis } => {
            LoadedLearner { learner: Learner::constant(Hypothesis::Const(hypothesis)), m: None }
        }
    })
}

/// A gadget input file: the instance plus an optional `"certificate"`.
pub fn load_instance<I: DeserializeOwned, C: DeserializeOwned>(path: &Path) -> Result<(I, Option<C>)> {
    let mut v: Value = serde_json::from_str(&read(path)?)?;
    let cert = match v.as_object_mut() {
        Some(obj) => obj.remove("certificate"),
        None => return Err(Error::Parse("instance file must be a JSON object".into())),
    };
    let instance = serde_json::from_value(v)?;
    let cert = cert.map(serde_json::from_value).transpose()?;
    Ok((instance, cert))
}

/// `3,1,4` as numbers.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{t:?}: {e}")))).collect()
}

pub fn parse_points(s: &str) -> Result<Vec<Point>> {
    Ok(parse_list(s)?.into_iter().map(Point::from).collect())
}

pub fn tuple_string(t: &[Point]) -> String {
    t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn word_json(w: &Word) -> Value {
    Value::String(w.to_string())
}
