use super::sum::NeumaierSum;
use crate::error::{Error, Result};

/// Row n of Pascal's triangle as floats.
fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n - k + 1) as f64 / k as f64;
    }
    row
}

/// Complete Bell polynomial B_m(x₁, …, x_m), m = `xs.len()`.
///
/// Uses B_{n+1} = Σ_{i=0}^{n} C(n, i) B_{n-i} x_{i+1} with B_0 = 1.
pub fn bell_complete(xs: &[f64]) -> f64 {
    let m = xs.len();
    let mut b = Vec::with_capacity(m + 1);
    b.push(1.0);
    for n in 0..m {
        let row = binomial_row(n);
        let s: NeumaierSum = (0..=n).map(|i| row[i] * b[n - i] * xs[i]).collect();
        b.push(s.value());
    }
    b[m]
}

/// Table of partial Bell polynomials: `table[n][k]` = B_{n,k}(x₁, …, x_{n-k+1})
/// for 0 ≤ k ≤ n ≤ `max_m`. Needs at least `max_m` arguments.
pub fn bell_incomplete_table(max_m: usize, xs: &[f64]) -> Result<Vec<Vec<f64>>> {
    if xs.len() < max_m {
        return Err(Error::BellIndex { m: max_m, l: 0, len: xs.len() });
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(max_m + 1);
    table.push(vec![1.0]);
    for n in 1..=max_m {
        let row = binomial_row(n - 1);
        let mut cur = vec![0.0; n + 1];
        for k in 1..=n {
            // B_{n,k} = Σ_{i=1}^{n-k+1} C(n-1, i-1) x_i B_{n-i,k-1}
            let s: NeumaierSum = (1..=n - k + 1)
                .map(|i| row[i - 1] * xs[i - 1] * table[n - i][k - 1])
                .collect();
            cur[k] = s.value();
        }
        table.push(cur);
    }
    Ok(table)
}

/// Partial (incomplete) Bell polynomial B_{m,l}(x₁, …, x_{m-l+1}).
///
/// B_{0,0} = 1 and B_{m,0} = 0 for m ≥ 1. Errors when l > m or when fewer
/// than m - l + 1 arguments are supplied.
pub fn bell_incomplete(m: usize, l: usize, xs: &[f64]) -> Result<f64> {
    if l > m {
        return Err(Error::BellIndex { m, l, len: xs.len() });
    }
    if m == 0 {
        return Ok(1.0);
    }
    if l == 0 {
        return Ok(0.0);
    }
    if xs.len() < m - l + 1 {
        return Err(Error::BellIndex { m, l, len: xs.len() });
    }
    // only x_1..x_{m-l+1} are reachable from B_{m,l}
    let mut padded = xs[..m - l + 1].to_vec();
    padded.resize(m, 0.0);
    Ok(bell_incomplete_table(m, &padded)?[m][l])
}
