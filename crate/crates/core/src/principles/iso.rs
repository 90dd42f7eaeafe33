use std::collections::HashMap;

use crate::lexcore::{Coloring, Grid, LexEmbedding};

use super::{Principle, PrincipleError, PrincipleVerdict, SearchBox};

/// Build the order-isomorphism prefix from `[0,M)^n` onto `A_d`, the
/// `d`-colored points of the scan box `[0,B)^n`.
///
/// The image of `x̄` is built coordinate by coordinate: `h_i(x_1..x_i)` is the
/// `(x_i+1)`-th smallest `v` such that `A_d` has a point with prefix
/// `(h_1, .., h_{i-1}, v)`. If that list runs out at a level `i < n` the
/// isomorphism type is wrong and the verdict is Refuted; running out at the
/// last level only means the scan is too small (Exhausted).
pub fn iso_prefix(c: &Coloring, d: u64, m: u64, b: u64) -> Result<PrincipleVerdict<LexEmbedding>, PrincipleError> {
    if d >= c.colors() {
        return Err(PrincipleError::ColorOutOfRange { d, colors: c.colors() });
    }
    if m == 0 {
        return Err(PrincipleError::ZeroGrid);
    }
    c.require_horizon(b)?;
    let n = c.arity();
    let scan = Grid::new(n, b);
    scan.size().ok_or(PrincipleError::TooLarge)?;
    let member: Vec<bool> = c.tabulate(b)?.into_iter().map(|v| v == d).collect();
    let searched = SearchBox::new().with("grid", m).with("scan", b);

    let mut levels = Levels {
        member: &member,
        b,
        n,
        memo: HashMap::new(),
    };
    let domain = Grid::new(n, m);
    let mut images = Vec::with_capacity(domain.size().ok_or(PrincipleError::TooLarge)?);
    for p in domain.points() {
        let mut img = Vec::with_capacity(n);
        for (i, &x) in p.iter().enumerate() {
            let vals = levels.values(&img);
            match vals.get(x as usize) {
                Some(&v) => img.push(v),
                None => {
                    let note = format!(
                        "stalled at {:?}: level {} has only {} values below {}",
                        p,
                        i + 1,
                        vals.len(),
                        b
                    );
                    // A block start that cannot be placed means A_d has too
                    // few blocks at this level inside the scan.
                    let block_start = p[i + 1..].iter().all(|&v| v == 0);
                    return Ok(if i + 1 < n && block_start {
                        PrincipleVerdict::refuted(Principle::Iso, note).with_color(d)
                    } else {
                        PrincipleVerdict::exhausted(Principle::Iso, searched).with_color(d).with_note(note)
                    });
                }
            }
        }
        images.push(img);
    }

    if let Some(gap) = find_gap(&member, scan, &images, m) {
        return Ok(PrincipleVerdict::refuted(Principle::Iso, gap).with_color(d));
    }
    let h = LexEmbedding::from_images(n, m, true, images)?;
    Ok(PrincipleVerdict::verified(Principle::Iso, d, h))
}

struct Levels<'a> {
    member: &'a [bool],
    b: u64,
    n: usize,
    memo: HashMap<Vec<u64>, Vec<u64>>,
}

impl Levels<'_> {
    /// Sorted values `v` such that some member point has prefix `(prefix, v)`.
    fn values(&mut self, prefix: &[u64]) -> Vec<u64> {
        if let Some(v) = self.memo.get(prefix) {
            return v.clone();
        }
        let block = (self.b as usize).pow((self.n - prefix.len() - 1) as u32);
        let mut base = 0usize;
        for &x in prefix {
            base = base * self.b as usize + x as usize;
        }
        base *= self.b as usize * block;
        let vals: Vec<u64> = (0..self.b)
            .filter(|&v| {
                let start = base + v as usize * block;
                self.member[start..start + block].iter().any(|&x| x)
            })
            .collect();
        self.memo.insert(prefix.to_vec(), vals.clone());
        vals
    }
}

/// Independent re-check: the first image is `min A_d` and consecutive images
/// along the last coordinate are immediate successors inside `A_d`.
fn find_gap(member: &[bool], scan: Grid, images: &[Vec<u64>], m: u64) -> Option<String> {
    let first = member.iter().position(|&x| x)?;
    let i0 = scan.index(&images[0])?;
    if i0 != first {
        return Some(format!("{:?} in A_d precedes the first image", scan.point(first)));
    }
    for (k, w) in images.windows(2).enumerate() {
        if (k as u64 + 1).is_multiple_of(m) {
            continue;
        }
        let (a, b) = (scan.index(&w[0])?, scan.index(&w[1])?);
        if let Some(skip) = (a + 1..b).find(|&j| member[j]) {
            return Some(format!(
                "{:?} in A_d lies strictly between images {:?} and {:?}",
                scan.point(skip),
                w[0],
                w[1]
            ));
        }
    }
    None
}
