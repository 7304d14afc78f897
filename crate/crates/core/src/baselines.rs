//! Dynamic time warping baselines.
//!
//! Plain DTW with an absolute-difference local cost, DTW on critical
//! series, and a circular variant that minimises over rotations of the
//! second input. None of these is a metric; see the crate tests for the
//! classic triangle-inequality counterexamples.

use crate::error::{Error, Result};
use crate::scalar::{abs_diff, Scalar};
use crate::series::{Domain, TimeSeries};

/// Monotone index path from `(0, 0)` to `(M - 1, N - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarpingPath {
    pub steps: Vec<(usize, usize)>,
}

impl WarpingPath {
    /// Sum of local costs along the path, accumulated from the start.
    pub fn cost<T: Scalar>(&self, x: &[T], y: &[T]) -> T {
        self.steps
            .iter()
            .fold(T::zero(), |acc, &(i, j)| acc + abs_diff(x[i], y[j]))
    }

    pub fn is_valid(&self, m: usize, n: usize) -> bool {
        let Some((&first, &last)) = self.steps.first().zip(self.steps.last()) else {
            return false;
        };
        first == (0, 0)
            && last == (m - 1, n - 1)
            && self.steps.windows(2).all(|w| {
                let (di, dj) = (w[1].0.wrapping_sub(w[0].0), w[1].1.wrapping_sub(w[0].1));
                matches!((di, dj), (1, 0) | (0, 1) | (1, 1))
            })
    }
}

/// DTW on raw slices. Backtracking prefers the diagonal, then `(i-1, j)`,
/// then `(i, j-1)`.
pub fn dtw_slices<T: Scalar>(x: &[T], y: &[T]) -> Result<(T, WarpingPath)> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySeries);
    }
    let (m, n) = (x.len(), y.len());
    let mut acc = vec![T::zero(); m * n];
    let at = |i: usize, j: usize| i * n + j;
    for i in 0..m {
        for j in 0..n {
            let local = abs_diff(x[i], y[j]);
            let prev = match (i, j) {
                (0, 0) => T::zero(),
                (0, _) => acc[at(0, j - 1)],
                (_, 0) => acc[at(i - 1, 0)],
                _ => {
                    let mut best = acc[at(i - 1, j - 1)];
                    for c in [acc[at(i - 1, j)], acc[at(i, j - 1)]] {
                        if c < best {
                            best = c;
                        }
                    }
                    best
                }
            };
            acc[at(i, j)] = prev + local;
        }
    }
    let mut steps = vec![(m - 1, n - 1)];
    let (mut i, mut j) = (m - 1, n - 1);
    while i > 0 || j > 0 {
        (i, j) = match (i, j) {
            (0, _) => (0, j - 1),
            (_, 0) => (i - 1, 0),
            _ => {
                let diag = acc[at(i - 1, j - 1)];
                let up = acc[at(i - 1, j)];
                let left = acc[at(i, j - 1)];
                if diag <= up && diag <= left {
                    (i - 1, j - 1)
                } else if up <= left {
                    (i - 1, j)
                } else {
                    (i, j - 1)
                }
            }
        };
        steps.push((i, j));
    }
    steps.reverse();
    Ok((acc[at(m - 1, n - 1)], WarpingPath { steps }))
}

fn require_domain<T: Scalar>(ts: &TimeSeries<T>, domain: Domain) -> Result<()> {
    if ts.domain() != domain {
        return Err(Error::WrongDomain {
            expected: domain,
            found: ts.domain(),
        });
    }
    Ok(())
}

pub fn dtw<T: Scalar>(x: &TimeSeries<T>, y: &TimeSeries<T>) -> Result<(T, WarpingPath)> {
    require_domain(x, Domain::Interval)?;
    require_domain(y, Domain::Interval)?;
    dtw_slices(x.values(), y.values())
}

/// DTW between the critical series of two interval series. Path indices
/// refer to the critical series.
pub fn dtw_critical<T: Scalar>(x: &TimeSeries<T>, y: &TimeSeries<T>) -> Result<(T, WarpingPath)> {
    require_domain(x, Domain::Interval)?;
    require_domain(y, Domain::Interval)?;
    dtw_slices(x.critical().values(), y.critical().values())
}

/// Circular DTW: minimum over rotations `k` of `y` of linear DTW. Returns
/// the cost, the path for the best rotation, and the rotation (smallest on
/// ties).
pub fn cdtw<T: Scalar>(x: &TimeSeries<T>, y: &TimeSeries<T>) -> Result<(T, WarpingPath, usize)> {
    require_domain(x, Domain::Circle)?;
    require_domain(y, Domain::Circle)?;
    let yv = y.values();
    let mut best: Option<(T, WarpingPath, usize)> = None;
    let mut rotated = Vec::with_capacity(yv.len());
    for k in 0..yv.len() {
        rotated.clear();
        rotated.extend(yv[k..].iter().chain(&yv[..k]).copied());
        let (c, path) = dtw_slices(x.values(), &rotated)?;
        if best.as_ref().is_none_or(|(b, _, _)| c < *b) {
            best = Some((c, path, k));
        }
    }
    Ok(best.expect("non-empty circular series"))
}
