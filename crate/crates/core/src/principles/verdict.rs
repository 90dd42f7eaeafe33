use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Principle {
    Elem,
    Lex,
    Iso,
    Game,
    Rt,
    Wrt,
    Hwrt,
    Sads,
}

impl fmt::Display for Principle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Principle::Elem => "elem",
            Principle::Lex => "lex",
            Principle::Iso => "iso",
            Principle::Game => "game",
            Principle::Rt => "rt",
            Principle::Wrt => "wrt",
            Principle::Hwrt => "hwrt",
            Principle::Sads => "sads",
        };
        f.write_str(s)
    }
}

/// The bounds a search covered, in the order they were given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SearchBox(pub Vec<(String, u64)>);

impl SearchBox {
    pub fn new() -> SearchBox {
        SearchBox(Vec::new())
    }

    pub fn with(mut self, name: &str, value: u64) -> SearchBox {
        self.0.push((name.to_string(), value));
        self
    }

    pub fn get(&self, name: &str) -> Option<u64> {
        self.0.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

impl fmt::Display for SearchBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{name}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", content = "box", rename_all = "lowercase")]
pub enum Outcome {
    Verified,
    Refuted,
    Exhausted(SearchBox),
}

impl Outcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, Outcome::Verified)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Outcome::Refuted)
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, Outcome::Exhausted(_))
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Verified => f.write_str("verified"),
            Outcome::Refuted => f.write_str("refuted"),
            Outcome::Exhausted(b) => write!(f, "exhausted ({b})"),
        }
    }
}

/// Result of a checker or witness search, relative to explicit bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipleVerdict<W> {
    pub principle: Principle,
    pub color: Option<u64>,
    pub witness: Option<W>,
    #[serde(flatten)]
    pub outcome: Outcome,
    /// Free-form diagnostic (where a construction stalled, and so on).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl<W> PrincipleVerdict<W> {
    pub fn verified(principle: Principle, color: u64, witness: W) -> Self {
        PrincipleVerdict {
            principle,
            color: Some(color),
            witness: Some(witness),
            outcome: Outcome::Verified,
            note: None,
        }
    }

    pub fn refuted(principle: Principle, note: impl Into<String>) -> Self {
        PrincipleVerdict {
            principle,
            color: None,
            witness: None,
            outcome: Outcome::Refuted,
            note: Some(note.into()),
        }
    }

    pub fn exhausted(principle: Principle, searched: SearchBox) -> Self {
        PrincipleVerdict {
            principle,
            color: None,
            witness: None,
            outcome: Outcome::Exhausted(searched),
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_color(mut self, color: u64) -> Self {
        self.color = Some(color);
        self
    }

    pub fn map_witness<V>(self, f: impl FnOnce(W) -> V) -> PrincipleVerdict<V> {
        PrincipleVerdict {
            principle: self.principle,
            color: self.color,
            witness: self.witness.map(f),
            outcome: self.outcome,
            note: self.note,
        }
    }
}
