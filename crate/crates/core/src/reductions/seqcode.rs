//! Length-prefixed sequence code built from the Cantor pairing function:
//!
//! ```text
//! pair(a, b)       = (a+b)(a+b+1)/2 + b
//! code(<v0..vm>)   = pair(m+1, pair(v0, pair(v1, .. pair(vm, 0))))
//! code(<>)         = pair(0, 0) = 0
//! ```

use super::ReductionError;

pub fn pair(a: u64, b: u64) -> Option<u64> {
    let s = a.checked_add(b)?;
    let tri = if s % 2 == 0 {
        (s / 2).checked_mul(s.checked_add(1)?)?
    } else {
        s.checked_mul(s.checked_add(1)? / 2)?
    };
    tri.checked_add(b)
}

/// Inverse of [`pair`].
pub fn unpair(z: u64) -> (u64, u64) {
    // Largest w with w(w+1)/2 <= z.
    let mut w = (((8.0 * z as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
    let tri = |w: u64| (w as u128) * (w as u128 + 1) / 2;
    while tri(w) > z as u128 {
        w -= 1;
    }
    while tri(w + 1) <= z as u128 {
        w += 1;
    }
    let b = z - tri(w) as u64;
    (w - b, b)
}

pub fn encode(values: &[u64]) -> Result<u64, ReductionError> {
    let mut acc = 0u64;
    for &v in values.iter().rev() {
        acc = pair(v, acc).ok_or(ReductionError::CodeOverflow { len: values.len() })?;
    }
    pair(values.len() as u64, acc).ok_or(ReductionError::CodeOverflow { len: values.len() })
}

/// Longest sequence [`decode`] will materialize.
pub const MAX_DECODE_LEN: u64 = 1 << 20;

pub fn decode(code: u64) -> Result<Vec<u64>, ReductionError> {
    let (len, mut rest) = unpair(code);
    if len > MAX_DECODE_LEN {
        return Err(ReductionError::BadCode(code));
    }
    let mut out = Vec::with_capacity(len as usize);
    for _ in 0..len {
        let (v, r) = unpair(rest);
        out.push(v);
        rest = r;
    }
    if rest != 0 {
        return Err(ReductionError::BadCode(code));
    }
    Ok(out)
}
