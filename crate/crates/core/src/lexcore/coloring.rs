use std::fmt;
use std::sync::Arc;

use crate::expr::{parse_expr, Expr};

use super::tuple::Grid;
use super::LexError;

pub type NativeFn = Arc<dyn Fn(&[u64]) -> Result<u64, LexError> + Send + Sync>;

/// Row-major table over `[0, horizon)^arity`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub horizon: u64,
    pub values: Vec<u64>,
}

#[derive(Clone)]
pub enum MapBody {
    Table(Table),
    Expr(Expr),
    /// A Rust closure, used for maps the expression grammar cannot state.
    Native { name: String, f: NativeFn },
}

impl fmt::Debug for MapBody {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapBody::Table(t) => f.debug_tuple("Table").field(t).finish(),
            MapBody::Expr(e) => write!(f, "Expr({e})"),
            MapBody::Native { name, .. } => write!(f, "Native({name})"),
        }
    }
}

/// A total evaluable map ℕ^arity → ℕ.
#[derive(Clone, Debug)]
pub struct NatMap {
    arity: usize,
    body: MapBody,
}

impl NatMap {
    pub fn table(arity: usize, horizon: u64, values: Vec<u64>) -> Result<NatMap, LexError> {
        if arity == 0 {
            return Err(LexError::ZeroArity);
        }
        let expected = Grid::new(arity, horizon)
            .size()
            .ok_or(LexError::TableTooLarge)?;
        if values.len() != expected {
            return Err(LexError::BadTableLength {
                expected,
                got: values.len(),
            });
        }
        Ok(NatMap {
            arity,
            body: MapBody::Table(Table { horizon, values }),
        })
    }

    /// `arity` may exceed the variables the expression mentions, never the reverse.
    pub fn expr(arity: usize, expr: Expr) -> Result<NatMap, LexError> {
        if expr.var_count() > arity {
            return Err(LexError::ArityMismatch {
                expected: arity,
                got: expr.var_count(),
            });
        }
        Ok(NatMap {
            arity,
            body: MapBody::Expr(expr),
        })
    }

    pub fn parse(arity: usize, text: &str) -> Result<NatMap, LexError> {
        NatMap::expr(arity, parse_expr(text, arity)?)
    }

    pub fn native(
        arity: usize,
        name: impl Into<String>,
        f: impl Fn(&[u64]) -> Result<u64, LexError> + Send + Sync + 'static,
    ) -> NatMap {
        NatMap {
            arity,
            body: MapBody::Native {
                name: name.into(),
                f: Arc::new(f),
            },
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &MapBody {
        &self.body
    }

    pub fn eval(&self, args: &[u64]) -> Result<u64, LexError> {
        if args.len() != self.arity {
            return Err(LexError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        match &self.body {
            MapBody::Table(t) => {
                let idx = Grid::new(self.arity, t.horizon).index(args).ok_or_else(|| {
                    LexError::OutOfHorizon {
                        point: args.to_vec(),
                        horizon: t.horizon,
                    }
                })?;
                Ok(t.values[idx])
            }
            MapBody::Expr(e) => Ok(e.eval(args)?),
            MapBody::Native { f, .. } => f(args),
        }
    }

    /// Values on `[0, extent)^arity`, row-major.
    pub fn tabulate(&self, extent: u64) -> Result<Vec<u64>, LexError> {
        let g = Grid::new(self.arity, extent);
        if g.size().is_none() {
            return Err(LexError::TableTooLarge);
        }
        g.points().map(|p| self.eval(&p)).collect()
    }

    /// Largest horizon on which every point is evaluable (`None` if unbounded).
    pub fn horizon(&self) -> Option<u64> {
        match &self.body {
            MapBody::Table(t) => Some(t.horizon),
            _ => None,
        }
    }
}

/// Stabilization moduli for a map of arity `free + moduli.len()`.
///
/// `moduli[j]` has arity `free + j` and names a stage for the bound variable
/// `z_{j+1}` beyond which the inner limit is constant, given the earlier
/// arguments.
#[derive(Clone, Debug)]
pub struct StabilityCertificate {
    pub free: usize,
    pub moduli: Vec<NatMap>,
}

impl StabilityCertificate {
    pub fn new(free: usize, moduli: Vec<NatMap>) -> Result<StabilityCertificate, LexError> {
        for (j, m) in moduli.iter().enumerate() {
            if m.arity() != free + j {
                return Err(LexError::ArityMismatch {
                    expected: free + j,
                    got: m.arity(),
                });
            }
        }
        Ok(StabilityCertificate { free, moduli })
    }

    pub fn total_arity(&self) -> usize {
        self.free + self.moduli.len()
    }

    /// Extend `prefix` (length `free + j`) by the modulus stages of the
    /// remaining bound variables.
    pub fn complete(&self, prefix: &[u64]) -> Result<Vec<u64>, LexError> {
        let mut args = prefix.to_vec();
        if args.len() < self.free || args.len() > self.total_arity() {
            return Err(LexError::ArityMismatch {
                expected: self.free,
                got: args.len(),
            });
        }
        while args.len() < self.total_arity() {
            let m = &self.moduli[args.len() - self.free];
            let s = m.eval(&args)?;
            args.push(s);
        }
        Ok(args)
    }
}

/// A coloring ℕ^arity → [0, colors).
#[derive(Clone, Debug)]
pub struct Coloring {
    map: NatMap,
    colors: u64,
    certificate: Option<StabilityCertificate>,
}

impl Coloring {
    pub fn new(map: NatMap, colors: u64) -> Result<Coloring, LexError> {
        if colors == 0 {
            return Err(LexError::ZeroColors);
        }
        if map.arity() == 0 {
            return Err(LexError::ZeroArity);
        }
        if let MapBody::Table(t) = map.body() {
            if let Some(&v) = t.values.iter().find(|&&v| v >= colors) {
                return Err(LexError::ColorOutOfRange { value: v, colors });
            }
        }
        Ok(Coloring {
            map,
            colors,
            certificate: None,
        })
    }

    pub fn table(arity: usize, colors: u64, horizon: u64, values: Vec<u64>) -> Result<Coloring, LexError> {
        Coloring::new(NatMap::table(arity, horizon, values)?, colors)
    }

    pub fn parse(arity: usize, colors: u64, text: &str) -> Result<Coloring, LexError> {
        Coloring::new(NatMap::parse(arity, text)?, colors)
    }

    pub fn constant(arity: usize, colors: u64, d: u64) -> Result<Coloring, LexError> {
        Coloring::new(NatMap::expr(arity, Expr::Nat(d))?, colors)
    }

    pub fn native(
        arity: usize,
        colors: u64,
        name: impl Into<String>,
        f: impl Fn(&[u64]) -> Result<u64, LexError> + Send + Sync + 'static,
    ) -> Result<Coloring, LexError> {
        Coloring::new(NatMap::native(arity, name, f), colors)
    }

    /// Attach stabilization moduli; `free + moduli.len()` must equal the arity.
    pub fn with_certificate(mut self, cert: StabilityCertificate) -> Result<Coloring, LexError> {
        if cert.total_arity() != self.arity() {
            return Err(LexError::ArityMismatch {
                expected: self.arity(),
                got: cert.total_arity(),
            });
        }
        self.certificate = Some(cert);
        Ok(self)
    }

    pub fn arity(&self) -> usize {
        self.map.arity()
    }

    pub fn colors(&self) -> u64 {
        self.colors
    }

    pub fn map(&self) -> &NatMap {
        &self.map
    }

    pub fn certificate(&self) -> Option<&StabilityCertificate> {
        self.certificate.as_ref()
    }

    pub fn horizon(&self) -> Option<u64> {
        self.map.horizon()
    }

    pub fn eval(&self, args: &[u64]) -> Result<u64, LexError> {
        let v = self.map.eval(args)?;
        if v >= self.colors {
            return Err(LexError::ColorOutOfRange {
                value: v,
                colors: self.colors,
            });
        }
        Ok(v)
    }

    /// Colors on `[0, extent)^arity`, row-major.
    pub fn tabulate(&self, extent: u64) -> Result<Vec<u64>, LexError> {
        let g = Grid::new(self.arity(), extent);
        if g.size().is_none() {
            return Err(LexError::TableTooLarge);
        }
        g.points().map(|p| self.eval(&p)).collect()
    }

    /// The same coloring stored as a table over `[0, horizon)^arity`.
    pub fn to_table(&self, horizon: u64) -> Result<Coloring, LexError> {
        Coloring::table(self.arity(), self.colors, horizon, self.tabulate(horizon)?)
    }

    /// Error unless every point of `[0, n)^arity` can be evaluated.
    pub fn require_horizon(&self, n: u64) -> Result<(), LexError> {
        match self.horizon() {
            Some(h) if h < n => Err(LexError::HorizonTooSmall { needed: n, have: h }),
            _ => Ok(()),
        }
    }
}
