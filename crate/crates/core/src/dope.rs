//! Ordered persistence edit distance between critical series.
//!
//! An alignment matches critical points in order (mins to mins, maxes to
//! maxes) and deletes the remaining points as adjacent min-max pairs. Its
//! cost is the sum of the height differences of matched points plus the
//! height gaps of deleted pairs. The distance is the cheapest alignment,
//! found with an `O(Mc * Nc)` dynamic program over prefixes:
//!
//! ```text
//! d[0][0] = 0
//! d[i][j] = min( d[i-1][j-1] + |x_i - y_j|     if kind(x_i) == kind(y_j), i, j >= 1
//!              , d[i-2][j]   + |x_i - x_{i-1}| if i >= 2
//!              , d[i][j-2]   + |y_j - y_{j-1}| if j >= 2 )
//! ```
//!
//! Cells with no admissible branch are infinite; in particular `d[i][0]` is
//! finite exactly for even `i`, where it is the cost of deleting the whole
//! prefix pair by pair.
//!
//! Inserting a pair into `x` is represented as deleting it from `y`.
//!
//! On the circle every alignment must keep at least one matched pair: a
//! circular function always has a min and a max, so its last pair cannot be
//! edited away. A second table `e[i][j]` holds prefix costs with at least
//! one match; its match branch reads `d`, its deletion branches read `e`,
//! and the circular distance is `e[Mc][Nc]`. For interval inputs the two
//! agree at `(Mc, Nc)` and only `d` is kept.

use crate::error::{Error, Result};
use crate::scalar::{abs_diff, min_cost, Scalar};
use crate::series::{rotate, CriticalSeries, Domain, Kind};

/// Backpointer of a DP cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Match,
    DeleteX,
    DeleteY,
    /// The origin cell, or a cell with no admissible branch.
    Boundary,
}

/// One edit in an alignment, 0-based indices into the critical series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EditOp {
    Match(usize, usize),
    /// Deletes the pair `(k, k + 1)` of `x`.
    DeleteX(usize),
    /// Deletes the pair `(k, k + 1)` of `y`.
    DeleteY(usize),
}

/// An optimal alignment. Edits are kept in prefix order, the order in
/// which the dynamic program accumulates their costs.
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment<T> {
    ops: Vec<EditOp>,
    cost: T,
}

impl<T: Scalar> Alignment<T> {
    pub fn ops(&self) -> &[EditOp] {
        &self.ops
    }

    pub fn cost(&self) -> T {
        self.cost
    }

    pub fn matched(&self) -> Vec<(usize, usize)> {
        self.ops
            .iter()
            .filter_map(|op| match *op {
                EditOp::Match(i, j) => Some((i, j)),
                _ => None,
            })
            .collect()
    }

    pub fn deleted_x(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .ops
            .iter()
            .filter_map(|op| match *op {
                EditOp::DeleteX(k) => Some((k, k + 1)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn deleted_y(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .ops
            .iter()
            .filter_map(|op| match *op {
                EditOp::DeleteY(k) => Some((k, k + 1)),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Alignment cost recomputed from the edits, in the stored order.
    pub fn recompute_cost(&self, x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> T {
        let (xv, yv) = (x.values(), y.values());
        self.ops.iter().fold(T::zero(), |acc, op| {
            acc + match *op {
                EditOp::Match(i, j) => abs_diff(xv[i], yv[j]),
                EditOp::DeleteX(k) => abs_diff(xv[k], xv[k + 1]),
                EditOp::DeleteY(k) => abs_diff(yv[k], yv[k + 1]),
            }
        })
    }

    /// Checks that this is a valid alignment of `x` and `y`: ordered,
    /// kind-preserving matches and a partition of both index sets.
    pub fn validate(&self, x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCritical(format!("alignment: {msg}")));
        let mut x_seen = vec![false; x.len()];
        let mut y_seen = vec![false; y.len()];
        let mark = |seen: &mut [bool], i: usize| -> bool {
            if i >= seen.len() || seen[i] {
                return false;
            }
            seen[i] = true;
            true
        };
        let mut last: Option<(usize, usize)> = None;
        for op in &self.ops {
            match *op {
                EditOp::Match(i, j) => {
                    if !mark(&mut x_seen, i) || !mark(&mut y_seen, j) {
                        return bad(format!("index reused or out of range in match ({i}, {j})"));
                    }
                    if x.kinds()[i] != y.kinds()[j] {
                        return bad(format!("match ({i}, {j}) joins different kinds"));
                    }
                    if let Some((pi, pj)) = last {
                        if i <= pi || j <= pj {
                            return bad("matches are not order-preserving".into());
                        }
                    }
                    last = Some((i, j));
                }
                EditOp::DeleteX(k) => {
                    if !mark(&mut x_seen, k) || !mark(&mut x_seen, k + 1) {
                        return bad(format!("x pair ({k}, {}) overlaps", k + 1));
                    }
                }
                EditOp::DeleteY(k) => {
                    if !mark(&mut y_seen, k) || !mark(&mut y_seen, k + 1) {
                        return bad(format!("y pair ({k}, {}) overlaps", k + 1));
                    }
                }
            }
        }
        if x_seen.iter().chain(&y_seen).any(|s| !s) {
            return bad("some critical point is neither matched nor deleted".into());
        }
        Ok(())
    }
}

/// Full `(Mc + 1) x (Nc + 1)` table of prefix distances with backpointers.
#[derive(Debug, Clone)]
pub struct DpTable<T> {
    rows: usize,
    cols: usize,
    costs: Vec<Option<T>>,
    steps: Vec<Step>,
    /// The at-least-one-match layer, circular inputs only.
    matched: Option<(Vec<Option<T>>, Vec<Step>)>,
}

impl<T: Scalar> DpTable<T> {
    pub fn fill(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Self {
        let (xv, xk, yv, yk) = (x.values(), x.kinds(), y.values(), y.kinds());
        let (rows, cols) = (xv.len() + 1, yv.len() + 1);
        let mut costs: Vec<Option<T>> = vec![None; rows * cols];
        let mut steps = vec![Step::Boundary; rows * cols];
        costs[0] = Some(T::zero());
        let circular = x.domain() == Domain::Circle;
        let mut e_costs: Vec<Option<T>> = vec![None; if circular { rows * cols } else { 0 }];
        let mut e_steps = vec![Step::Boundary; e_costs.len()];
        for i in 0..rows {
            for j in 0..cols {
                if i == 0 && j == 0 {
                    continue;
                }
                let d = |a: usize, b: usize| costs[a * cols + b];
                let (cost, step) = relax(i, j, xv, xk, yv, yk, d, d);
                if circular {
                    let (c, s) = relax(i, j, xv, xk, yv, yk, d, |a, b| e_costs[a * cols + b]);
                    e_costs[i * cols + j] = c;
                    e_steps[i * cols + j] = s;
                }
                costs[i * cols + j] = cost;
                steps[i * cols + j] = step;
            }
        }
        Self {
            rows,
            cols,
            costs,
            steps,
            matched: circular.then_some((e_costs, e_steps)),
        }
    }

    /// Prefix distance `d[i][j]`; `None` is infinite.
    pub fn cost(&self, i: usize, j: usize) -> Option<T> {
        self.costs[i * self.cols + j]
    }

    pub fn step(&self, i: usize, j: usize) -> Step {
        self.steps[i * self.cols + j]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Distance of the full problem: `d[Mc][Nc]`, or `e[Mc][Nc]` on the
    /// circle.
    pub fn total(&self) -> Option<T> {
        let last = (self.rows - 1) * self.cols + self.cols - 1;
        match &self.matched {
            Some((costs, _)) => costs[last],
            None => self.costs[last],
        }
    }

    /// Follows backpointers from the full problem to the origin.
    pub fn backtrack(&self) -> Option<Alignment<T>> {
        let cost = self.total()?;
        let (mut i, mut j) = (self.rows - 1, self.cols - 1);
        let mut ops = Vec::new();
        // on the circle, walk the `e` layer until the first match
        let mut layer = self.matched.as_ref().map(|(_, steps)| steps);
        while i > 0 || j > 0 {
            let step = match layer {
                Some(steps) => steps[i * self.cols + j],
                None => self.step(i, j),
            };
            match step {
                Step::Match => {
                    ops.push(EditOp::Match(i - 1, j - 1));
                    i -= 1;
                    j -= 1;
                    layer = None;
                }
                Step::DeleteX => {
                    ops.push(EditOp::DeleteX(i - 2));
                    i -= 2;
                }
                Step::DeleteY => {
                    ops.push(EditOp::DeleteY(j - 2));
                    j -= 2;
                }
                Step::Boundary => return None,
            }
        }
        ops.reverse();
        Some(Alignment { ops, cost })
    }
}

/// Evaluates one cell from its predecessors: `m` feeds the match branch,
/// `d` the deletions. Ties prefer Match, then DeleteX, then DeleteY.
#[inline]
#[allow(clippy::too_many_arguments)]
fn relax<T: Scalar>(
    i: usize,
    j: usize,
    xv: &[T],
    xk: &[Kind],
    yv: &[T],
    yk: &[Kind],
    m: impl Fn(usize, usize) -> Option<T>,
    d: impl Fn(usize, usize) -> Option<T>,
) -> (Option<T>, Step) {
    let mut best: Option<T> = None;
    let mut step = Step::Boundary;
    let mut offer = |candidate: Option<T>, s: Step, best: &mut Option<T>| {
        let improved = match (candidate, *best) {
            (Some(_), None) => true,
            (Some(c), Some(b)) => c < b,
            _ => false,
        };
        if improved {
            *best = candidate;
            step = s;
        }
    };
    if i >= 1 && j >= 1 && xk[i - 1] == yk[j - 1] {
        let c = m(i - 1, j - 1).map(|v| v + abs_diff(xv[i - 1], yv[j - 1]));
        offer(c, Step::Match, &mut best);
    }
    if i >= 2 {
        let c = d(i - 2, j).map(|v| v + abs_diff(xv[i - 1], xv[i - 2]));
        offer(c, Step::DeleteX, &mut best);
    }
    if j >= 2 {
        let c = d(i, j - 2).map(|v| v + abs_diff(yv[j - 1], yv[j - 2]));
        offer(c, Step::DeleteY, &mut best);
    }
    (best, step)
}

fn check_pair<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<()> {
    if x.domain() != y.domain() {
        return Err(Error::DomainMismatch(x.domain(), y.domain()));
    }
    if (x.len() + y.len()) % 2 == 1 {
        return Err(Error::OddLengthDifference(x.len(), y.len()));
    }
    Ok(())
}

/// Distance and one optimal alignment.
///
/// Circular series are aligned as the linear sequences they are stored as;
/// use [`cdope`] to minimise over rotations.
pub fn dope<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<(T, Alignment<T>)> {
    check_pair(x, y)?;
    let table = DpTable::fill(x, y);
    let alignment = table
        .backtrack()
        .ok_or(Error::Degenerate("no admissible alignment"))?;
    Ok((alignment.cost, alignment))
}

/// Distance only, keeping three rows of the table. Bit-identical to the
/// cost returned by [`dope`].
pub fn dope_cost<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<T> {
    check_pair(x, y)?;
    linear_cost(x, y).ok_or(Error::Degenerate("no admissible alignment"))
}

fn linear_cost<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Option<T> {
    let (xv, xk, yv, yk) = (x.values(), x.kinds(), y.values(), y.kinds());
    let cols = yv.len() + 1;
    let circular = x.domain() == Domain::Circle;
    // rows i-2, i-1, i live at (i % 3)
    let mut ring: [Vec<Option<T>>; 3] = [vec![None; cols], vec![None; cols], vec![None; cols]];
    let width = if circular { cols } else { 0 };
    let mut e_ring: [Vec<Option<T>>; 3] = [vec![None; width], vec![None; width], vec![None; width]];
    for i in 0..=xv.len() {
        for j in 0..cols {
            if i == 0 && j == 0 {
                ring[0][0] = Some(T::zero());
                continue;
            }
            let d = |a: usize, b: usize| ring[a % 3][b];
            let value = relax(i, j, xv, xk, yv, yk, d, d).0;
            if circular {
                let e = relax(i, j, xv, xk, yv, yk, d, |a, b| e_ring[a % 3][b]).0;
                e_ring[i % 3][j] = e;
            }
            ring[i % 3][j] = value;
        }
    }
    if circular {
        e_ring[xv.len() % 3][cols - 1]
    } else {
        ring[xv.len() % 3][cols - 1]
    }
}

pub const BRUTE_FORCE_LIMIT: usize = 9;

/// All ways to split `0..n` into kept singletons and deleted adjacent
/// pairs: `(kept indices, deleted pair starts)`.
fn partitions(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn go(k: usize, n: usize, kept: &mut Vec<usize>, del: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        if k == n {
            out.push((kept.clone(), del.clone()));
            return;
        }
        kept.push(k);
        go(k + 1, n, kept, del, out);
        kept.pop();
        if k + 1 < n {
            del.push(k);
            go(k + 2, n, kept, del, out);
            del.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

/// Minimum alignment cost by enumerating every alignment. For each pair
/// of partitions with equally many kept points the order-preserving
/// bijection between kept points is unique, so the search is exhaustive.
/// Circular inputs must keep at least one matched pair.
pub fn dope_brute_force<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<T> {
    check_pair(x, y)?;
    for cs in [x, y] {
        if cs.len() > BRUTE_FORCE_LIMIT {
            return Err(Error::SizeLimit {
                size: cs.len(),
                limit: BRUTE_FORCE_LIMIT,
            });
        }
    }
    let (xv, yv) = (x.values(), y.values());
    let gap = |v: &[T], del: &[usize]| {
        del.iter()
            .fold(T::zero(), |acc, &k| acc + abs_diff(v[k], v[k + 1]))
    };
    let px = partitions(x.len());
    let py = partitions(y.len());
    let mut best: Option<T> = None;
    for (kx, dx) in &px {
        for (ky, dy) in &py {
            if kx.len() != ky.len() || (kx.is_empty() && x.domain() == Domain::Circle) {
                continue;
            }
            if kx.iter().zip(ky).any(|(&i, &j)| x.kinds()[i] != y.kinds()[j]) {
                continue;
            }
            let matched = kx
                .iter()
                .zip(ky)
                .fold(T::zero(), |acc, (&i, &j)| acc + abs_diff(xv[i], yv[j]));
            best = min_cost(best, Some(matched + gap(xv, dx) + gap(yv, dy)));
        }
    }
    best.ok_or(Error::Degenerate("no admissible alignment"))
}

/// Result of the circular distance: cost, an optimal alignment between the
/// rotated representatives, and the rotation offsets `(i, j)` applied to
/// `x` and `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularAlignment<T> {
    pub cost: T,
    pub alignment: Alignment<T>,
    pub shifts: (usize, usize),
    pub x_rotated: CriticalSeries<T>,
    pub y_rotated: CriticalSeries<T>,
}

fn check_circular<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<()> {
    for cs in [x, y] {
        if cs.domain() != Domain::Circle {
            return Err(Error::WrongDomain {
                expected: Domain::Circle,
                found: cs.domain(),
            });
        }
        if cs.is_degenerate() {
            return Err(Error::Degenerate("constant circular series"));
        }
    }
    Ok(())
}

/// Circular distance: the minimum over rotations of both series. Holding
/// `x` fixed and rotating `y` covers every alignment except those deleting
/// the pair that straddles the end of `x`; a second pass with `x` rotated
/// by one covers those. Ties go to the lexicographically smallest shifts.
pub fn cdope<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<CircularAlignment<T>> {
    check_circular(x, y)?;
    let mut best: Option<(T, (usize, usize))> = None;
    for i in 0..2 {
        let xr = rotate(x, i)?;
        for j in 0..y.len() {
            let yr = rotate(y, j)?;
            let Some(c) = linear_cost(&xr, &yr) else {
                continue;
            };
            if best.is_none_or(|(b, _)| c < b) {
                best = Some((c, (i, j)));
            }
        }
    }
    let (_, shifts) = best.ok_or(Error::Degenerate("no admissible alignment"))?;
    let x_rotated = rotate(x, shifts.0)?;
    let y_rotated = rotate(y, shifts.1)?;
    let (cost, alignment) = dope(&x_rotated, &y_rotated)?;
    Ok(CircularAlignment {
        cost,
        alignment,
        shifts,
        x_rotated,
        y_rotated,
    })
}

pub fn cdope_cost<T: Scalar>(x: &CriticalSeries<T>, y: &CriticalSeries<T>) -> Result<T> {
    check_circular(x, y)?;
    let mut best = None;
    for i in 0..2 {
        let xr = rotate(x, i)?;
        for j in 0..y.len() {
            best = min_cost(best, linear_cost(&xr, &rotate(y, j)?));
        }
    }
    best.ok_or(Error::Degenerate("no admissible alignment"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TimeSeries;
    use num_rational::Rational64;
    use proptest::prelude::*;

    fn iv(v: &[f64]) -> CriticalSeries<f64> {
        CriticalSeries::from_values(v.to_vec(), Domain::Interval).unwrap()
    }

    fn cv(v: &[f64]) -> CriticalSeries<f64> {
        CriticalSeries::from_values(v.to_vec(), Domain::Circle).unwrap()
    }

    #[test]
    fn identical_series_cost_nothing() {
        let c = iv(&[0.0, 5.0, 1.0, 4.0, 2.0]);
        let (cost, a) = dope(&c, &c).unwrap();
        assert_eq!(cost, 0.0);
        assert_eq!(a.matched(), (0..5).map(|i| (i, i)).collect::<Vec<_>>());
        assert!(a.deleted_x().is_empty() && a.deleted_y().is_empty());
    }

    #[test]
    fn single_min_matches_itself() {
        let c = iv(&[3.0]);
        assert_eq!(dope(&c, &c).unwrap().0, 0.0);
    }

    #[test]
    fn shifted_max() {
        let (cost, a) = dope(&iv(&[0.0, 2.0, 1.0]), &iv(&[0.0, 3.0, 1.0])).unwrap();
        assert_eq!(cost, 1.0);
        assert_eq!(a.matched(), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn deletion_example_and_tie_break() {
        let x = iv(&[0.0, 5.0, 1.0, 4.0, 2.0]);
        let y = iv(&[0.0, 5.0, 2.0]);
        let (cost, a) = dope(&x, &y).unwrap();
        assert_eq!(cost, 3.0);
        assert_eq!(a.deleted_x(), vec![(2, 3)]);
        assert_eq!(a.matched(), vec![(0, 0), (1, 1), (4, 2)]);
        assert_eq!(dope_brute_force(&x, &y), Ok(3.0));
    }

    #[test]
    fn delete_trailing_pair() {
        let (cost, a) = dope(&iv(&[0.0, 2.0, 1.0]), &iv(&[0.0])).unwrap();
        assert_eq!(cost, 1.0);
        assert_eq!(a.deleted_x(), vec![(1, 2)]);
        assert_eq!(a.matched(), vec![(0, 0)]);
    }

    #[test]
    fn table_boundaries() {
        let x = iv(&[0.0, 5.0, 1.0, 4.0, 2.0]);
        let y = iv(&[0.0, 5.0, 2.0]);
        let t = DpTable::fill(&x, &y);
        assert_eq!(t.shape(), (6, 4));
        assert_eq!(t.cost(0, 0), Some(0.0));
        for i in 1..6 {
            assert_eq!(t.cost(i, 0).is_some(), i % 2 == 0, "row {i}");
        }
        for j in 1..4 {
            assert_eq!(t.cost(0, j).is_some(), j % 2 == 0, "col {j}");
        }
        // sum of max heights minus sum of min heights
        assert_eq!(t.cost(4, 0), Some(5.0 - 0.0 + 4.0 - 1.0));
        assert_eq!(t.total(), Some(dope_cost(&x, &y).unwrap()));
    }

    #[test]
    fn domain_and_parity_errors() {
        assert!(matches!(
            dope(&iv(&[0.0]), &cv(&[0.0, 1.0])),
            Err(Error::DomainMismatch(..))
        ));
        let a = CriticalSeries::from_parts(vec![0.0, 1.0], vec![Kind::Min, Kind::Max], vec![0, 1], Domain::Circle)
            .unwrap();
        let b = CriticalSeries::from_parts(
            vec![0.0, 1.0, 0.5, 2.0],
            vec![Kind::Min, Kind::Max, Kind::Min, Kind::Max],
            vec![0, 1, 2, 3],
            Domain::Circle,
        )
        .unwrap();
        assert!(dope(&a, &b).is_ok());
        assert!(dope_brute_force(&iv(&[0.0; 1]), &iv(&[0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0]))
            .is_err());
    }

    #[test]
    fn exact_rational_arithmetic() {
        let r = |n, d| Rational64::new(n, d);
        let x = CriticalSeries::from_values(vec![r(0, 1), r(1, 3), r(1, 7)], Domain::Interval).unwrap();
        let y = CriticalSeries::from_values(vec![r(1, 5), r(1, 2), r(0, 1)], Domain::Interval).unwrap();
        let (cost, a) = dope(&x, &y).unwrap();
        assert_eq!(cost, dope_brute_force(&x, &y).unwrap());
        assert_eq!(a.recompute_cost(&x, &y), cost);
        // deleting (1/3, 1/7) and (1/5, 1/2) beats matching everything
        assert_eq!(cost, r(103, 210));
    }

    #[test]
    fn circular_examples() {
        let x = cv(&[0.0, 3.0, 1.0, 2.0]);
        for k in 0..4 {
            assert_eq!(cdope(&x, &rotate(&x, k).unwrap()).unwrap().cost, 0.0);
        }
        let r = cdope(&cv(&[0.0, 1.0]), &cv(&[0.0, 2.0])).unwrap();
        assert_eq!(r.cost, 1.0);
        assert_eq!(r.shifts, (0, 0));
        assert_eq!(r.alignment.matched(), vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn circular_agrees_with_double_loop() {
        let x = cv(&[0.0, 10.0, 1.0, 3.0]);
        let y = cv(&[1.0, 3.0]);
        let full = (0..4)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .filter_map(|(i, j)| dope_cost(&rotate(&x, i).unwrap(), &rotate(&y, j).unwrap()).ok())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(cdope_cost(&x, &y).unwrap(), full);
    }

    #[test]
    fn circle_keeps_a_matched_pair() {
        // deleting both pairs would cost 2
        let (x, y) = (cv(&[-1.0, 0.0]), cv(&[2.0, 3.0]));
        let (cost, a) = dope(&x, &y).unwrap();
        assert_eq!(cost, 6.0);
        assert_eq!(a.matched(), vec![(0, 0), (1, 1)]);
        assert_eq!(dope_brute_force(&x, &y).unwrap(), 6.0);
        assert_eq!(cdope_cost(&x, &y).unwrap(), 6.0);
        // kinds never line up: no alignment at all
        assert!(dope(&x, &rotate(&y, 1).unwrap()).is_err());

        let x = cv(&[0.0, 4.0, 3.9, 4.1, 0.2, 1.0]);
        let y = cv(&[7.0, 8.0]);
        let (cost, a) = dope(&x, &y).unwrap();
        a.validate(&x, &y).unwrap();
        assert_eq!(a.recompute_cost(&x, &y), cost);
        assert_eq!(cost, dope_brute_force(&x, &y).unwrap());
    }

    #[test]
    fn circular_rejects_interval_and_constant() {
        assert!(cdope(&iv(&[0.0]), &iv(&[0.0])).is_err());
        let flat = TimeSeries::circle(vec![1.0, 1.0]).unwrap().critical();
        assert!(matches!(cdope(&flat, &cv(&[0.0, 1.0])), Err(Error::Degenerate(_))));
    }

    fn raw() -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec((-16i32..16).prop_map(|v| f64::from(v) / 8.0), 1..14)
    }

    proptest! {
        #[test]
        fn dp_matches_enumeration(a in raw(), b in raw()) {
            let x = TimeSeries::interval(a).unwrap().critical();
            let y = TimeSeries::interval(b).unwrap().critical();
            prop_assume!(x.len() <= BRUTE_FORCE_LIMIT && y.len() <= BRUTE_FORCE_LIMIT);
            let (cost, al) = dope(&x, &y).unwrap();
            prop_assert_eq!(cost, dope_brute_force(&x, &y).unwrap());
            prop_assert_eq!(al.recompute_cost(&x, &y), cost);
            prop_assert!(al.validate(&x, &y).is_ok());
            prop_assert_eq!(dope_cost(&x, &y).unwrap(), cost);
        }

        #[test]
        fn symmetric(a in raw(), b in raw()) {
            let x = TimeSeries::interval(a).unwrap().critical();
            let y = TimeSeries::interval(b).unwrap().critical();
            prop_assert_eq!(dope_cost(&x, &y).unwrap(), dope_cost(&y, &x).unwrap());
        }

        #[test]
        fn circular_rotation_invariant(a in prop::collection::vec(-1.0f64..1.0, 2..20), b in prop::collection::vec(-1.0f64..1.0, 2..20), k in 0usize..20) {
            let x = TimeSeries::circle(a).unwrap().critical();
            let y = TimeSeries::circle(b).unwrap().critical();
            let base = cdope_cost(&x, &y).unwrap();
            let yk = rotate(&y, k % y.len()).unwrap();
            let xk = rotate(&x, k % x.len()).unwrap();
            prop_assert!((cdope_cost(&x, &yk).unwrap() - base).abs() <= 1e-12);
            prop_assert!((cdope_cost(&xk, &y).unwrap() - base).abs() <= 1e-12);
            let full = cdope(&x, &y).unwrap();
            prop_assert_eq!(full.cost, base);
            prop_assert!(full.alignment.validate(&full.x_rotated, &full.y_rotated).is_ok());
        }
    }
}
