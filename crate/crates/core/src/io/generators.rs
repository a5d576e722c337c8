//! The basic weave families. Indices in the formulas are 0-based.

use crate::diagram::CrossingMatrix;
use crate::error::{Result, WeaveError};

use super::WeaveDocument;

fn build(m: usize, n: usize, f: impl Fn(usize, usize) -> bool) -> Result<CrossingMatrix> {
    let raw: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..n).map(|j| f(i, j) as i64).collect())
        .collect();
    if m == 0 {
        return CrossingMatrix::zeros(0, n);
    }
    CrossingMatrix::new(&raw)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Alternating checkerboard, `c(i, j) = (i + j) mod 2`. Closes up on the
/// torus only for even `m` and `n`.
pub fn plain(m: usize, n: usize) -> Result<WeaveDocument> {
    if m == 0 || n == 0 || !m.is_multiple_of(2) || !n.is_multiple_of(2) {
        return Err(WeaveError::Generator(format!(
            "plain weave needs positive even dimensions, got {m}x{n}"
        )));
    }
    let matrix = build(m, n, |i, j| (i + j) % 2 == 1)?;
    Ok(WeaveDocument::new(matrix)
        .named(format!("plain({m},{n})"))
        .with_meta("generator", "plain"))
}

/// Twill with diagonal ribs: each warp passes over `over` wefts and under
/// `under`, shifted by one weft per warp. `c(i, j) = 1` iff
/// `(j - i) mod (over + under) < over`.
pub fn twill(m: usize, n: usize, over: usize, under: usize) -> Result<WeaveDocument> {
    let period = over + under;
    if over == 0 || under == 0 {
        return Err(WeaveError::Generator(
            "twill needs positive over and under counts".to_string(),
        ));
    }
    if m == 0 || n == 0 || !n.is_multiple_of(period) || !m.is_multiple_of(period) {
        return Err(WeaveError::Generator(format!(
            "twill {over}/{under} needs m and n divisible by {period}, got {m}x{n}"
        )));
    }
    let matrix = build(m, n, |i, j| (j + period - i % period) % period < over)?;
    Ok(WeaveDocument::new(matrix)
        .named(format!("twill({m},{n},{over},{under})"))
        .with_meta("generator", "twill")
        .with_meta("over", over)
        .with_meta("under", under))
}

/// `n x n` satin: warp `i` passes over only weft `step * i mod n`. Needs
/// `n >= 5`, `gcd(step, n) = 1` and `step != +-1 mod n`.
pub fn satin(n: usize, step: usize) -> Result<WeaveDocument> {
    if n < 5 {
        return Err(WeaveError::Generator(format!("satin needs n >= 5, got {n}")));
    }
    let s = step % n;
    if gcd(s, n) != 1 {
        return Err(WeaveError::Generator(format!(
            "satin step {step} is not coprime to {n}"
        )));
    }
    if s == 1 || s == n - 1 {
        return Err(WeaveError::Generator(format!(
            "satin step {step} is +-1 mod {n}, which gives a twill"
        )));
    }
    let matrix = build(n, n, |i, j| j == (s * i) % n)?;
    Ok(WeaveDocument::new(matrix)
        .named(format!("satin({n},{step})"))
        .with_meta("generator", "satin")
        .with_meta("step", step))
}
