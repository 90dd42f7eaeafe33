use indec_core::forcing::{one_gen_build, s1density_h, Condition, DenseSetSpec};

use crate::args::ForceArgs;
use crate::check::load_coloring;
use crate::docs::SpecDocument;
use crate::report::{RunReport, Status};
use crate::{read_file, CliError};

/// `length:K` names `D'_1, .., D'_K`.
fn parse_denses(text: &str, horizon: u64) -> Result<Vec<DenseSetSpec>, CliError> {
    let k = text
        .strip_prefix("length:")
        .and_then(|k| k.parse::<usize>().ok())
        .ok_or_else(|| CliError::Usage(format!("--denses expects length:K, got {text:?}")))?;
    Ok(DenseSetSpec::lengths(k, horizon))
}

pub(crate) fn run(a: &ForceArgs) -> Result<RunReport, CliError> {
    let policy = a.policy.resolve()?;
    let c = load_coloring(&a.coloring)?;
    let mut specs = match &a.denses {
        Some(t) => parse_denses(t, policy.horizon)?,
        None => Vec::new(),
    };
    if let Some(p) = &a.spec {
        let doc: SpecDocument = serde_json::from_str(&read_file(p)?)?;
        specs.extend(doc.to_specs()?);
    }
    if specs.is_empty() {
        return Err(CliError::Usage("give --denses or --spec".into()));
    }
    let start = Condition::new(a.start.clone())?;
    match a.s1density {
        Some(steps) => {
            let r = s1density_h(&start, &specs[0], &c, &policy, steps)?;
            RunReport::new(Status::from(&r.outcome), &r, Some(policy))
        }
        None => {
            let r = one_gen_build(&c, &specs, &start, &policy)?;
            RunReport::new(Status::from(&r.outcome), &r, Some(policy))
        }
    }
}
