use indec_core::game::search_plus_strategy;
use indec_core::principles::{
    elem_indec_check, hwrt_search, iso_prefix, lex_indec_search, rt_search, sads_extract, wrt_search, Principle,
    PrincipleVerdict, SearchBox,
};
use indec_core::Coloring;

use crate::args::{CheckArgs, PrincipleArg};
use crate::docs::{ColoringDocument, EmbeddingDocument, StrategyDocument};
use crate::report::{RunReport, Status};
use crate::{read_file, CliError};

pub(crate) fn load_coloring(path: &std::path::Path) -> Result<Coloring, CliError> {
    let doc: ColoringDocument = serde_json::from_str(&read_file(path)?)?;
    doc.to_coloring()
}

fn need_d(d: Option<u64>) -> Result<u64, CliError> {
    d.ok_or_else(|| CliError::Usage("--d is required for this principle".into()))
}

fn finish<W: serde::Serialize>(v: PrincipleVerdict<W>, policy: indec_core::LargenessPolicy) -> Result<RunReport, CliError> {
    RunReport::new(Status::from(&v.outcome), &v, Some(policy))
}

pub(crate) fn run(a: &CheckArgs) -> Result<RunReport, CliError> {
    let policy = a.policy.resolve()?;
    let c = load_coloring(&a.coloring)?;
    let grid = a.grid.unwrap_or(policy.threshold);
    let budget = a.budget.unwrap_or(policy.horizon);
    let l = a.l.unwrap_or(policy.threshold as usize);
    match a.principle {
        PrincipleArg::Elem => {
            let r = elem_indec_check(&c, &policy)?;
            let mut v = match r.colors.first() {
                Some(&d) => PrincipleVerdict::verified(Principle::Elem, d, r.clone()),
                None if r.exact => PrincipleVerdict::refuted(Principle::Elem, "no color has enough limit points"),
                None => PrincipleVerdict::exhausted(
                    Principle::Elem,
                    SearchBox::new()
                        .with("horizon", policy.horizon)
                        .with("frontier", policy.frontier),
                ),
            };
            v.witness = Some(r);
            finish(v, policy)
        }
        PrincipleArg::Lex => finish(
            lex_indec_search(&c, grid, budget)?.map_witness(|h| EmbeddingDocument::from_embedding(&h)),
            policy,
        ),
        PrincipleArg::Iso => finish(
            iso_prefix(&c, need_d(a.d)?, grid, budget)?.map_witness(|h| EmbeddingDocument::from_embedding(&h)),
            policy,
        ),
        PrincipleArg::Game => {
            let v = search_plus_strategy(&c, a.v.unwrap_or(policy.horizon), a.a.unwrap_or(policy.threshold))?;
            let doc = v.witness.as_ref().map(StrategyDocument::from_strategy).transpose()?;
            finish(v.map_witness(|_| doc.expect("witness present")), policy)
        }
        PrincipleArg::Rt => finish(rt_search(&c, &policy)?, policy),
        PrincipleArg::Wrt => finish(wrt_search(&c, &policy)?, policy),
        PrincipleArg::Hwrt => finish(hwrt_search(&c, &policy, l, a.d)?, policy),
        PrincipleArg::Sads => {
            let d = need_d(a.d)?;
            let h = match &a.h {
                Some(h) => h.clone(),
                None => {
                    let found = hwrt_search(&c, &policy, l, Some(d))?;
                    match (found.outcome.is_verified(), found.witness.clone()) {
                        (true, Some(h)) => h,
                        _ => {
                            let v = PrincipleVerdict::<Vec<u64>> {
                                principle: Principle::Sads,
                                ..found
                            }
                            .with_note("no hyper-weak block witness to extract from");
                            return finish(v, policy);
                        }
                    }
                }
            };
            finish(sads_extract(&c, d, &h, &policy)?, policy)
        }
    }
}
