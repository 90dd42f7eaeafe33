use serde::{Deserialize, Serialize};

use super::coloring::Coloring;
use super::tuple::Grid;
use super::LexError;

/// A map `[0, grid)^arity → ℕ^arity`, stored as the flat list of images in
/// lexicographic order of the domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexEmbedding {
    arity: usize,
    grid: u64,
    strong: bool,
    image: Vec<u64>,
}

impl LexEmbedding {
    /// `images` lists one point per grid point in lex order.
    pub fn from_images(arity: usize, grid: u64, strong: bool, images: Vec<Vec<u64>>) -> Result<LexEmbedding, LexError> {
        if arity == 0 {
            return Err(LexError::ZeroArity);
        }
        let size = Grid::new(arity, grid).size().ok_or(LexError::TableTooLarge)?;
        if images.len() != size {
            return Err(LexError::BadTableLength {
                expected: size,
                got: images.len(),
            });
        }
        let mut image = Vec::with_capacity(size * arity);
        for p in images {
            if p.len() != arity {
                return Err(LexError::ArityMismatch {
                    expected: arity,
                    got: p.len(),
                });
            }
            image.extend(p);
        }
        Ok(LexEmbedding {
            arity,
            grid,
            strong,
            image,
        })
    }

    pub fn from_fn(
        arity: usize,
        grid: u64,
        strong: bool,
        mut f: impl FnMut(&[u64]) -> Vec<u64>,
    ) -> Result<LexEmbedding, LexError> {
        let g = Grid::new(arity, grid);
        let images = g.points().map(|p| f(&p)).collect();
        LexEmbedding::from_images(arity, grid, strong, images)
    }

    pub fn identity(arity: usize, grid: u64) -> LexEmbedding {
        LexEmbedding::from_fn(arity, grid, true, |p| p.to_vec()).expect("identity is well formed")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn domain(&self) -> Grid {
        Grid::new(self.arity, self.grid)
    }

    pub fn strong(&self) -> bool {
        self.strong
    }

    pub fn with_strong(mut self, strong: bool) -> LexEmbedding {
        self.strong = strong;
        self
    }

    pub fn len(&self) -> usize {
        self.image.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image_at(&self, idx: usize) -> &[u64] {
        &self.image[idx * self.arity..(idx + 1) * self.arity]
    }

    pub fn image(&self, p: &[u64]) -> Option<&[u64]> {
        self.domain().index(p).map(|i| self.image_at(i))
    }

    pub fn images(&self) -> impl Iterator<Item = &[u64]> {
        self.image.chunks(self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointPair {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub ok: bool,
    /// First pair `a <lex b` (in lex order of pairs) with `h(a) >=lex h(b)`.
    pub order_violation: Option<PointPair>,
    /// First pair sharing a prefix of length `i` whose images differ in a
    /// coordinate `<= i`; only scanned when the embedding claims strongness.
    pub strong_violation: Option<PointPair>,
}

fn first_pair(g: Grid, mut bad: impl FnMut(usize, usize) -> bool) -> Option<PointPair> {
    let n = g.size()?;
    for i in 0..n {
        for j in i + 1..n {
            if bad(i, j) {
                return Some(PointPair {
                    a: g.point(i),
                    b: g.point(j),
                });
            }
        }
    }
    None
}

fn common_prefix(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Injectivity, order preservation and (when claimed) strongness on the grid.
pub fn check_embedding(h: &LexEmbedding) -> EmbeddingReport {
    let g = h.domain();
    let n = h.len();
    // Strictly increasing along the lex enumeration is equivalent to
    // order-preserving and injective; only pay for the pair scan on failure.
    let monotone = (1..n).all(|i| h.image_at(i - 1) < h.image_at(i));
    let order_violation = if monotone {
        None
    } else {
        first_pair(g, |i, j| h.image_at(i) >= h.image_at(j))
    };

    let strong_violation = if h.strong() {
        let arity = h.arity();
        let consistent = (0..n).all(|idx| {
            let p = g.point(idx);
            (1..=arity).all(|i| {
                let mut rep = p.clone();
                rep[i..].iter_mut().for_each(|v| *v = 0);
                let r = g.index(&rep).unwrap();
                h.image_at(r)[i - 1] == h.image_at(idx)[i - 1]
            })
        });
        if consistent {
            None
        } else {
            first_pair(g, |i, j| {
                let (a, b) = (g.point(i), g.point(j));
                let k = common_prefix(&a, &b);
                h.image_at(i)[..k] != h.image_at(j)[..k]
            })
        }
    } else {
        None
    };

    EmbeddingReport {
        ok: order_violation.is_none() && strong_violation.is_none(),
        order_violation,
        strong_violation,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrowthItem {
    /// `x1 <= h1(x)` and `h1(x) < h1(x1+1, 0, ..)`.
    First,
    /// Truncations `(h_1..h_j)` along an `i`-slice are non-decreasing and
    /// bounded by the next block start.
    Bounded,
    /// Truncation `(h_1..h_i)` along an `i`-slice is strictly increasing.
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthFailure {
    pub item: GrowthItem,
    pub point: Vec<u64>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub ok: bool,
    /// First failure of each item, in item order.
    pub failures: Vec<GrowthFailure>,
}

impl GrowthReport {
    pub fn passes(&self, item: GrowthItem) -> bool {
        self.failures.iter().all(|f| f.item != item)
    }
}

/// Point `(prefix, s, 0, .., 0)` of arity `n`.
fn slice_point(prefix: &[u64], s: u64, n: usize) -> Vec<u64> {
    let mut p = prefix.to_vec();
    p.push(s);
    p.resize(n, 0);
    p
}

/// Grid analogues of the three growth lemmas for lexicographic embeddings.
///
/// Items (ii) and (iii) compare truncations `(h_1, .., h_j)` lexicographically;
/// when `h_1..h_{j-1}` are constant along the slice (always the case for
/// strong embeddings) this is the scalar statement about `h_j`.
pub fn check_growth(h: &LexEmbedding) -> GrowthReport {
    let g = h.domain();
    let n = h.arity();
    let m = h.grid();
    let img = |p: &[u64]| h.image(p).expect("point inside grid");
    let mut failures = Vec::new();

    let first_item = |p: &[u64]| -> Option<String> {
        let v = img(p);
        if v[0] < p[0] {
            return Some(format!("h1 = {} < x1 = {}", v[0], p[0]));
        }
        if p[0] + 1 < m {
            let next = img(&slice_point(&[], p[0] + 1, n))[0];
            if v[0] >= next {
                return Some(format!("h1 = {} >= h1 at next block = {next}", v[0]));
            }
        }
        None
    };
    let first = g.points().find_map(|p| {
        first_item(&p).map(|detail| GrowthFailure {
            item: GrowthItem::First,
            point: p,
            detail,
        })
    });
    failures.extend(first);

    let mut bounded = None;
    let mut unbounded = None;
    for i in 1..=n {
        for prefix in Grid::new(i - 1, m).points() {
            let slice: Vec<&[u64]> = (0..m).map(|s| img(&slice_point(&prefix, s, n))).collect();
            if unbounded.is_none() {
                if let Some(s) = (1..slice.len()).find(|&s| slice[s - 1][..i] >= slice[s][..i]) {
                    unbounded = Some(GrowthFailure {
                        item: GrowthItem::Unbounded,
                        point: slice_point(&prefix, s as u64, n),
                        detail: format!("(h1..h{i}) not increasing along coordinate {i}"),
                    });
                }
            }
            if bounded.is_some() || i < 2 {
                continue;
            }
            let next = if prefix[i - 2] + 1 < m {
                let mut q = prefix[..i - 2].to_vec();
                q.push(prefix[i - 2] + 1);
                q.resize(n, 0);
                Some(img(&q))
            } else {
                None
            };
            'items: for j in 1..i {
                for s in 0..slice.len() {
                    let cur = &slice[s][..j];
                    let bad = if s > 0 && slice[s - 1][..j] > *cur {
                        Some("decreasing")
                    } else if next.is_some_and(|q| *cur > q[..j]) {
                        Some("exceeds next block")
                    } else {
                        None
                    };
                    if let Some(why) = bad {
                        bounded = Some(GrowthFailure {
                            item: GrowthItem::Bounded,
                            point: slice_point(&prefix, s as u64, n),
                            detail: format!("(h1..h{j}) {why} along coordinate {i}"),
                        });
                        break 'items;
                    }
                }
            }
        }
    }
    failures.extend(bounded);
    failures.extend(unbounded);
    GrowthReport {
        ok: failures.is_empty(),
        failures,
    }
}

/// `c ∘ h` as a table on the embedding's grid.
pub fn compose(c: &Coloring, h: &LexEmbedding) -> Result<Coloring, LexError> {
    if c.arity() != h.arity() {
        return Err(LexError::ArityMismatch {
            expected: c.arity(),
            got: h.arity(),
        });
    }
    let values = h.images().map(|p| c.eval(p)).collect::<Result<Vec<_>, _>>()?;
    Coloring::table(h.arity(), c.colors(), h.grid(), values)
}
