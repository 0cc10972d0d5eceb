//! `gadget run`: loads an instance, derives the realizer's certificate
//! unless the file supplies one, and runs the pipeline.

use std::path::Path;
use std::sync::Arc;

use serde_json::json;

use super::{io, Report};
use crate::bits::{BitStream, NatStream, PeriodicBits, PeriodicNats, Word};
use crate::error::{Error, Result};
use crate::gadgets::{
    bound_class_certificate, decode_dncstar, decode_ppac, decode_rpac, dnc_certificate, open_paths_certificate,
    ppac_certificate, rpac_certificate, run_reduction, BoundToClass, ChoiceFamily, ConvergingBits, DncStarToWitness,
    LimhatToPpac, OpenPathsCertificate, PpacCertificate, Reduction, Sign, SortJumpToVcdimNeg, SortToSup, SortToVcdim,
    StreamFamily, SupCertificate, SupToSort, TamePpac, TamePpacFull, TameRealizer, TameRpac, TameSort, TameSup,
    TameVcdimFull, TameVcdimNegative, TameWitPositive, VcdimCertificate, WklToRpac,
};
use crate::learning::Constants;

pub const GADGETS: [&str; 9] = [
    "sort_to_sup",
    "sup_to_sort",
    "sort_to_vcdim",
    "sortjump_to_vcdim_neg",
    "wkl_to_rpac",
    "limhat_to_ppac_pos",
    "limhat_to_ppac_neg",
    "bound_to_class",
    "dncstar_to_witness",
];

fn bits_report(w: Word) -> Report {
    Report::ok(vec![w.to_string()], json!({"output": w.to_string()}))
}

fn last_zero(p: &PeriodicBits) -> Option<usize> {
    p.prefix.iter().rposition(|&b| !b)
}

fn stream(p: &PeriodicBits) -> Result<Arc<dyn BitStream>> {
    p.validate()?;
    Ok(Arc::new(p.clone()))
}

fn nats(p: &PeriodicNats) -> Result<Arc<dyn NatStream>> {
    p.validate()?;
    Ok(Arc::new(p.clone()))
}

fn family(raw: ChoiceFamily) -> Result<ChoiceFamily> {
    ChoiceFamily::new(raw.removals)
}

pub fn run(name: &str, input: &Path, budget: usize, decode: Option<&str>, consts: &Constants) -> Result<Report> {
    let indices = decode.map(io::parse_list).transpose()?;
    let kmax = match &indices {
        Some(ks) => ks.iter().max().map_or(0, |k| k + 1),
        None => budget as u64,
    };
    let no_decode = |name: &str| match indices {
        Some(_) => Err(Error::Precondition(format!("{name} has no decoder; use --budget"))),
        None => Ok(()),
    };
    match name {
        "sort_to_sup" => {
            no_decode(name)?;
            let (p, cert) = io::load_instance::<PeriodicBits, SupCertificate>(input)?;
            let cert = cert.unwrap_or(match p.zero_count() {
                Some(_) => SupCertificate::AttainedBy(last_zero(&p).unwrap_or(0)),
                None => SupCertificate::Unbounded,
            });
            Ok(bits_report(run_reduction(&SortToSup, &TameSup, &stream(&p)?, &cert, budget)?))
        }
        "sup_to_sort" => {
            no_decode(name)?;
            let (p, cert) = io::load_instance::<PeriodicNats, Option<u64>>(input)?;
            let cert = cert.unwrap_or(Some(p.sup()));
            Ok(bits_report(run_reduction(&SupToSort, &TameSort::default(), &nats(&p)?, &cert, budget)?))
        }
        "sort_to_vcdim" => {
            no_decode(name)?;
            let (p, cert) = io::load_instance::<PeriodicBits, VcdimCertificate>(input)?;
            let cert = cert.unwrap_or(match p.zero_count() {
                Some(_) => VcdimCertificate::Depth(last_zero(&p).map_or(0, |i| i + 1)),
                None => VcdimCertificate::Infinite,
            });
            Ok(bits_report(run_reduction(&SortToVcdim, &TameVcdimFull, &stream(&p)?, &cert, budget)?))
        }
        "sortjump_to_vcdim_neg" => {
            no_decode(name)?;
            let (raw, cert) = io::load_instance::<ConvergingBits, OpenPathsCertificate>(input)?;
            let p = ConvergingBits::new(raw.stages, raw.limit)?;
            let cert = match cert {
                Some(c) => c,
                None => open_paths_certificate(&p)?,
            };
            Ok(bits_report(run_reduction(&SortJumpToVcdimNeg, &TameVcdimNegative, &p, &cert, budget)?))
        }
        "wkl_to_rpac" => {
            let (raw, cert) = io::load_instance::<ChoiceFamily, u64>(input)?;
            let f = family(raw)?;
            let cert = cert.unwrap_or_else(|| rpac_certificate(&f, kmax));
            let realizer = TameRpac { constants: consts.clone() };
            match indices {
                None => Ok(bits_report(run_reduction(&WklToRpac, &realizer, &f, &cert, budget)?)),
                Some(ks) => {
                    let (learner, m) = realizer.solve(&WklToRpac.forward(&f), &cert)?;
                    let bits = ks.iter().map(|&k| decode_rpac(&learner, &m, k)).collect::<Result<Vec<_>>>()?;
                    Ok(bits_report(Word::from_bits(bits)))
                }
            }
        }
        "limhat_to_ppac_pos" | "limhat_to_ppac_neg" => {
            let sign = if name.ends_with("pos") { Sign::Positive } else { Sign::Negative };
            let (raw, cert) = io::load_instance::<StreamFamily, PpacCertificate>(input)?;
            let f = StreamFamily::new(raw.streams)?;
            let cert = cert.unwrap_or_else(|| ppac_certificate(&f, sign, kmax));
            let gadget = LimhatToPpac { sign };
            let realizer = TamePpac { constants: consts.clone() };
            match indices {
                None => Ok(bits_report(run_reduction(&gadget, &realizer, &f, &cert, budget)?)),
                Some(ks) => {
                    let (learner, m) = realizer.solve(&gadget.forward(&f), &cert)?;
                    let bits = ks.iter().map(|&k| decode_ppac(&learner, &m, k)).collect::<Result<Vec<_>>>()?;
                    Ok(bits_report(Word::from_bits(bits)))
                }
            }
        }
        "bound_to_class" => {
            no_decode(name)?;
            let (p, cert) = io::load_instance::<PeriodicNats, usize>(input)?;
            let by = p.prefix.len() + p.repeat.len();
            let s = nats(&p)?;
            let cert = cert.unwrap_or_else(|| bound_class_certificate(&s, by));
            let g = BoundToClass { constants: consts.clone() };
            let bound = run_reduction(&g, &TamePpacFull { constants: consts.clone() }, &s, &cert, budget)?;
            Ok(Report::ok(vec![format!("bound={bound}")], json!({"bound": bound})))
        }
        "dncstar_to_witness" => {
            let (raw, cert) = io::load_instance::<ChoiceFamily, u64>(input)?;
            let f = family(raw)?;
            // the tame realizer answers with arity d + 1 = 2
            let cert = cert.unwrap_or_else(|| dnc_certificate(&f, 2));
            let (kpow, values, ns) = match indices {
                None => {
                    let (kpow, p) = run_reduction(&DncStarToWitness, &TameWitPositive, &f, &cert, budget)?;
                    (kpow, p, (0..budget as u64).collect())
                }
                Some(ns) => {
                    let w = TameWitPositive.solve(&DncStarToWitness.forward(&f), &cert)?;
                    let sol = decode_dncstar(&w)?;
                    let p = ns.iter().map(|&n| sol.value(n)).collect::<Result<Vec<_>>>()?;
                    (sol.kpow, p, ns)
                }
            };
            let text = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
            Ok(Report::ok(vec![format!("kpow={kpow} p={text}")], json!({"kpow": kpow, "n": ns, "p": values})))
        }
        _ => Err(Error::Precondition(format!("unknown gadget {name:?}; known: {}", GADGETS.join(", ")))),
    }
}
