use std::io::Write;

use indec_core::game::PlusStrategy;
use indec_core::lexcore::NatMap;
use indec_core::principles::Outcome;
use indec_core::reductions::{
    aca_coloring, build_zero_embedding, extract_flim, gamelim_strategy, gamelim_verify, hwrt_normalize,
    limgame_coloring, range_coloring, range_decide, Injection, LimitSampler, LimitTower, RangeDecision, Stability,
};
use serde::Serialize;

use crate::args::{DecideArgs, FlimArgs, GamelimArgs, ReduceCommand};
use crate::check::load_coloring;
use crate::docs::{ColoringDocument, Document, EmbeddingDocument, StrategyDocument};
use crate::game::{emit, load_strategy};
use crate::report::{RunReport, Status};
use crate::{read_file, CliError};

fn tower(top: &str, arity: usize, moduli: &[String]) -> Result<LimitTower, CliError> {
    let maps = moduli
        .iter()
        .enumerate()
        .map(|(i, m)| NatMap::parse(1 + i, m))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LimitTower::from_top(NatMap::parse(arity, top)?, maps)?)
}

pub(crate) fn run(cmd: ReduceCommand, out: &mut dyn Write) -> Result<Option<RunReport>, CliError> {
    match cmd {
        ReduceCommand::RangeColoring(a) => {
            let c = range_coloring(&Injection::parse(&a.f)?);
            let doc = ColoringDocument::from_coloring(&c, Some(a.horizon))?;
            emit(Document::Coloring(doc), a.out.as_deref(), out)?;
            Ok(None)
        }
        ReduceCommand::AcaColoring(a) => {
            let c = aca_coloring(&Injection::parse(&a.f)?);
            let doc = ColoringDocument::from_coloring(&c, Some(a.horizon))?;
            emit(Document::Coloring(doc), a.out.as_deref(), out)?;
            Ok(None)
        }
        ReduceCommand::ZeroEmbedding(a) => {
            let z = build_zero_embedding(&Injection::parse(&a.f)?, a.grid, a.bound)?;
            let doc = EmbeddingDocument::from_embedding(&z.embedding);
            emit(Document::Embedding(doc), a.out.as_deref(), out)?;
            Ok(None)
        }
        ReduceCommand::RangeDecide(a) => decide(&a).map(Some),
        ReduceCommand::Limgame(a) => {
            let c = limgame_coloring(&NatMap::parse(a.arity, &a.f)?)?;
            let doc = ColoringDocument::from_coloring(&c, None)?;
            emit(Document::Coloring(doc), a.out.as_deref(), out)?;
            Ok(None)
        }
        ReduceCommand::Gamelim(a) => gamelim(&a, out),
        ReduceCommand::ExtractFlim(a) => flim(&a).map(Some),
        ReduceCommand::HwrtNormalize(a) => {
            let policy = a.policy.resolve()?;
            let c = load_coloring(&a.coloring)?;
            let v = hwrt_normalize(&c, a.d, &a.g, &policy, a.l)?;
            RunReport::new(Status::from(&v.outcome), &v, Some(policy)).map(Some)
        }
    }
}

#[derive(Serialize)]
struct Decided<'a> {
    x: u64,
    #[serde(flatten)]
    decision: &'a RangeDecision,
}

fn decide(a: &DecideArgs) -> Result<RunReport, CliError> {
    let f = Injection::parse(&a.f)?;
    let h = match &a.embedding {
        Some(p) => serde_json::from_str::<EmbeddingDocument>(&read_file(p)?)?.to_embedding()?,
        None => {
            let (grid, bound) = (a.grid.expect("clap"), a.bound.expect("clap"));
            build_zero_embedding(&f, grid, bound)?.embedding
        }
    };
    let d = range_decide(&f, &h, a.x, a.budget)?;
    let status = match d {
        RangeDecision::Decided { .. } => Status::Verified,
        RangeDecision::Exhausted { .. } => Status::Exhausted,
    };
    RunReport::new(status, Decided { x: a.x, decision: &d }, None)
}

fn gamelim(a: &GamelimArgs, out: &mut dyn Write) -> Result<Option<RunReport>, CliError> {
    let t = tower(&a.top, a.arity, &a.moduli)?;
    t.verify(a.box_, &LimitSampler::default())?;
    let sigma = gamelim_strategy(&t);
    gamelim_verify(&t, &sigma, a.box_)?;
    let table: PlusStrategy = sigma.tabulate(a.box_)?;
    let doc = StrategyDocument::from_strategy(&table)?;
    emit(Document::Strategy(doc), a.out.as_deref(), out)?;
    Ok(None)
}

fn flim(a: &FlimArgs) -> Result<RunReport, CliError> {
    let sigma = load_strategy(&a.strategy)?;
    let f = NatMap::parse(a.arity, &a.f)?;
    let stability = if a.moduli.is_empty() {
        Stability::Assumed
    } else {
        let t = tower(&a.f, a.arity, &a.moduli)?;
        t.verify(a.box_, &LimitSampler::default())?;
        Stability::Certified
    };
    let flim = extract_flim(&sigma, &f, a.box_, stability)?;
    RunReport::new(Status::from(&Outcome::Verified), &flim, None)
}
