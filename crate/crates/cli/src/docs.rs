//! JSON documents: colorings, ⊕-strategies, embeddings and dense-set specs.

use std::collections::BTreeMap;

use indec_core::forcing::DenseSetSpec;
use indec_core::game::{PlusStrategy, ReplyMap};
use indec_core::lexcore::{Coloring, MapBody, NatMap, StabilityCertificate};
use indec_core::LexEmbedding;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyKind {
    Table,
    Expr,
    Certified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringDocument {
    pub version: u32,
    pub arity: usize,
    pub colors: u64,
    pub kind: BodyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<String>>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Document(msg.into())
}

impl ColoringDocument {
    pub fn table(arity: usize, colors: u64, horizon: u64, values: Vec<u64>) -> ColoringDocument {
        ColoringDocument {
            version: VERSION,
            arity,
            colors,
            kind: BodyKind::Table,
            horizon: Some(horizon),
            values: Some(values),
            text: None,
            moduli: None,
        }
    }

    pub fn expr(arity: usize, colors: u64, text: String) -> ColoringDocument {
        ColoringDocument {
            version: VERSION,
            arity,
            colors,
            kind: BodyKind::Expr,
            horizon: None,
            values: None,
            text: Some(text),
            moduli: None,
        }
    }

    /// Expression bodies stay symbolic; anything else is tabulated over
    /// `[0, horizon)^n`.
    pub fn from_coloring(c: &Coloring, horizon: Option<u64>) -> Result<ColoringDocument, CliError> {
        let mut doc = match c.map().body() {
            MapBody::Expr(e) => ColoringDocument::expr(c.arity(), c.colors(), e.to_string()),
            MapBody::Table(t) => ColoringDocument::table(c.arity(), c.colors(), t.horizon, t.values.clone()),
            MapBody::Native { name, .. } => {
                let n = horizon.ok_or_else(|| bad(format!("{name} needs a horizon to be written as a table")))?;
                ColoringDocument::table(c.arity(), c.colors(), n, c.tabulate(n)?)
            }
        };
        if let Some(cert) = c.certificate() {
            if doc.kind != BodyKind::Expr {
                return Err(bad("certified colorings must have expression bodies"));
            }
            let moduli = cert
                .moduli
                .iter()
                .map(|m| match m.body() {
                    MapBody::Expr(e) => Ok(e.to_string()),
                    _ => Err(bad("moduli must be expressions")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            doc.kind = BodyKind::Certified;
            doc.moduli = Some(moduli);
        }
        Ok(doc)
    }

    pub fn to_coloring(&self) -> Result<Coloring, CliError> {
        if self.version != VERSION {
            return Err(bad(format!("unsupported version {}", self.version)));
        }
        let stray = |field: &str, present: bool| {
            if present {
                Err(bad(format!("field `{field}` does not belong to a {:?} body", self.kind)))
            } else {
                Ok(())
            }
        };
        match self.kind {
            BodyKind::Table => {
                stray("text", self.text.is_some())?;
                stray("moduli", self.moduli.is_some())?;
                let horizon = self.horizon.ok_or_else(|| bad("table body needs `horizon`"))?;
                let values = self.values.clone().ok_or_else(|| bad("table body needs `values`"))?;
                Ok(Coloring::table(self.arity, self.colors, horizon, values)?)
            }
            BodyKind::Expr => {
                stray("horizon", self.horizon.is_some())?;
                stray("values", self.values.is_some())?;
                stray("moduli", self.moduli.is_some())?;
                let text = self.text.as_deref().ok_or_else(|| bad("expr body needs `text`"))?;
                Ok(Coloring::parse(self.arity, self.colors, text)?)
            }
            BodyKind::Certified => {
                stray("horizon", self.horizon.is_some())?;
                stray("values", self.values.is_some())?;
                let text = self.text.as_deref().ok_or_else(|| bad("certified body needs `text`"))?;
                let moduli = match &self.moduli {
                    Some(m) if !m.is_empty() => m,
                    _ => return Err(bad("certified body needs `moduli`")),
                };
                if moduli.len() >= self.arity {
                    return Err(bad(format!(
                        "{} moduli leave no free variable in arity {}",
                        moduli.len(),
                        self.arity
                    )));
                }
                let free = self.arity - moduli.len();
                let maps = moduli
                    .iter()
                    .enumerate()
                    .map(|(j, t)| NatMap::parse(free + j, t))
                    .collect::<Result<Vec<_>, _>>()?;
                let c = Coloring::parse(self.arity, self.colors, text)?;
                Ok(c.with_certificate(StabilityCertificate::new(free, maps)?)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplyEntry {
    pub prefix: Vec<u64>,
    #[serde(rename = "move")]
    pub reply: u64,
}

/// `{"d":d,"replies":[{"prefix":[..],"move":m},..]}`, sorted by prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyDocument {
    pub d: u64,
    pub replies: Vec<ReplyEntry>,
}

impl StrategyDocument {
    pub fn from_strategy(s: &PlusStrategy) -> Result<StrategyDocument, CliError> {
        let table = match s.replies() {
            ReplyMap::Table(t) => t,
            ReplyMap::Rule { name, .. } => return Err(bad(format!("rule strategy {name} must be tabulated first"))),
        };
        Ok(StrategyDocument {
            d: s.opening(),
            replies: table
                .iter()
                .map(|(p, &b)| ReplyEntry {
                    prefix: p.clone(),
                    reply: b,
                })
                .collect(),
        })
    }

    pub fn arity(&self) -> usize {
        self.replies.iter().map(|r| r.prefix.len()).max().unwrap_or(0)
    }

    pub fn to_strategy(&self) -> Result<PlusStrategy, CliError> {
        let arity = self.arity();
        if arity == 0 {
            return Err(bad("strategy has no replies"));
        }
        let mut table = BTreeMap::new();
        for r in &self.replies {
            if table.insert(r.prefix.clone(), r.reply).is_some() {
                return Err(bad(format!("prefix {:?} listed twice", r.prefix)));
            }
        }
        Ok(PlusStrategy::from_table(arity, self.d, table)?)
    }

    /// Replies in prefix order, as written.
    pub fn normalized(&self) -> StrategyDocument {
        let mut out = self.clone();
        out.replies.sort_by(|a, b| a.prefix.cmp(&b.prefix));
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingDocument {
    pub version: u32,
    pub arity: usize,
    pub grid: u64,
    pub strong: bool,
    /// One image per grid point, in lexicographic order of the grid.
    pub images: Vec<Vec<u64>>,
}

impl EmbeddingDocument {
    pub fn from_embedding(h: &LexEmbedding) -> EmbeddingDocument {
        EmbeddingDocument {
            version: VERSION,
            arity: h.arity(),
            grid: h.grid(),
            strong: h.strong(),
            images: h.images().map(|p| p.to_vec()).collect(),
        }
    }

    pub fn to_embedding(&self) -> Result<LexEmbedding, CliError> {
        if self.version != VERSION {
            return Err(bad(format!("unsupported version {}", self.version)));
        }
        Ok(LexEmbedding::from_images(
            self.arity,
            self.grid,
            self.strong,
            self.images.clone(),
        )?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecEntry {
    pub name: String,
    pub predicate: String,
    pub max_len: usize,
    pub value_cap: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub version: u32,
    pub specs: Vec<SpecEntry>,
}

impl SpecDocument {
    pub fn to_specs(&self) -> Result<Vec<DenseSetSpec>, CliError> {
        if self.version != VERSION {
            return Err(bad(format!("unsupported version {}", self.version)));
        }
        self.specs
            .iter()
            .map(|s| Ok(DenseSetSpec::new(s.name.clone(), &s.predicate, s.max_len, s.value_cap)?))
            .collect()
    }
}

/// Any document the CLI reads or writes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Coloring(ColoringDocument),
    Strategy(StrategyDocument),
    Embedding(EmbeddingDocument),
    Spec(SpecDocument),
}

impl Document {
    /// Recognize a document by its distinguishing field.
    pub fn parse(text: &str) -> Result<Document, CliError> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let has = |k: &str| v.get(k).is_some();
        Ok(if has("replies") {
            Document::Strategy(serde_json::from_value(v)?)
        } else if has("images") {
            Document::Embedding(serde_json::from_value(v)?)
        } else if has("specs") {
            Document::Spec(serde_json::from_value(v)?)
        } else {
            Document::Coloring(serde_json::from_value(v)?)
        })
    }

    /// Check the document parses to a valid value and return its canonical form.
    pub fn normalize(self) -> Result<Document, CliError> {
        Ok(match self {
            Document::Coloring(d) => Document::Coloring(ColoringDocument::from_coloring(&d.to_coloring()?, d.horizon)?),
            Document::Strategy(d) => {
                d.to_strategy()?;
                Document::Strategy(d.normalized())
            }
            Document::Embedding(d) => {
                d.to_embedding()?;
                Document::Embedding(d)
            }
            Document::Spec(d) => {
                d.to_specs()?;
                Document::Spec(d)
            }
        })
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let s = match self {
            Document::Coloring(d) => serde_json::to_string(d)?,
            Document::Strategy(d) => serde_json::to_string(d)?,
            Document::Embedding(d) => serde_json::to_string(d)?,
            Document::Spec(d) => serde_json::to_string(d)?,
        };
        Ok(s + "\n")
    }
}
