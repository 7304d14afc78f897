//! Wasserstein and bottleneck distances between persistence diagrams.
//!
//! Points are compared with the L-infinity distance and a point's distance
//! to the diagonal is half its persistence. Finite-order distances solve an
//! exact assignment problem on the diagonal-augmented cost matrix; the
//! bottleneck distance searches the sorted candidate edge costs for the
//! smallest threshold that still admits a perfect matching.

use crate::error::{Error, Result};
use crate::mergetree::PersistenceDiagram;
use crate::scalar::{abs_diff, Real};

/// An optimal partial matching between the finite points of two diagrams.
/// The essential classes are always matched to each other.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramMatching<T> {
    pub matched: Vec<(usize, usize)>,
    pub to_diagonal_1: Vec<usize>,
    pub to_diagonal_2: Vec<usize>,
    pub cost: T,
}

fn point_cost<T: Real>(a: (T, T), b: (T, T)) -> T {
    abs_diff(a.0, b.0).max(abs_diff(a.1, b.1))
}

fn diagonal_cost<T: Real>(a: (T, T)) -> T {
    (a.1 - a.0) / (T::one() + T::one())
}

fn check_compatible<T: Real>(d1: &PersistenceDiagram<T>, d2: &PersistenceDiagram<T>) -> Result<()> {
    if d1.domain != d2.domain {
        return Err(Error::DomainMismatch(d1.domain, d2.domain));
    }
    if d1.essential.1.is_some() != d2.essential.1.is_some() {
        return Err(Error::InvalidParameter(
            "essential classes differ in whether they die".into(),
        ));
    }
    Ok(())
}

fn check_order<T: Real>(p: T) -> Result<()> {
    if p.is_nan() || p <= T::zero() {
        return Err(Error::InvalidParameter(format!("order p must be positive, got {p:?}")));
    }
    Ok(())
}

/// Cost of matching the essential classes. Two infinite deaths are equal.
pub fn essential_cost<T: Real>(d1: &PersistenceDiagram<T>, d2: &PersistenceDiagram<T>) -> T {
    let births = abs_diff(d1.essential.0, d2.essential.0);
    match (d1.essential.1, d2.essential.1) {
        (Some(a), Some(b)) => births.max(abs_diff(a, b)),
        _ => births,
    }
}

/// Folds per-edge costs into the order-`p` total. Costs are summed in
/// ascending order so the result does not depend on edge enumeration order.
fn aggregate<T: Real>(costs: impl Iterator<Item = T>, p: T) -> T {
    let mut costs: Vec<T> = costs.collect();
    costs.sort_by(|a, b| a.partial_cmp(b).expect("finite costs"));
    let costs = costs.into_iter();
    if p.is_infinite() {
        costs.fold(T::zero(), T::max)
    } else if p == T::one() {
        costs.fold(T::zero(), |acc, c| acc + c)
    } else {
        costs.fold(T::zero(), |acc, c| acc + c.powf(p)).powf(p.recip())
    }
}

/// Order-`p` cost of a given matching, including the essential classes.
pub fn matching_cost<T: Real>(
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
    matched: &[(usize, usize)],
    to_diagonal_1: &[usize],
    to_diagonal_2: &[usize],
    p: T,
) -> T {
    let edges = std::iter::once(essential_cost(d1, d2))
        .chain(matched.iter().map(|&(i, j)| point_cost(d1.pairs[i], d2.pairs[j])))
        .chain(to_diagonal_1.iter().map(|&i| diagonal_cost(d1.pairs[i])))
        .chain(to_diagonal_2.iter().map(|&j| diagonal_cost(d2.pairs[j])));
    aggregate(edges, p)
}

/// Augmented `(n1 + n2)` square cost matrix. Rows are the points of `d1`
/// followed by diagonal copies standing in for the points of `d2`; columns
/// are the points of `d2` followed by diagonal copies for `d1`.
fn augmented_costs<T: Real>(d1: &PersistenceDiagram<T>, d2: &PersistenceDiagram<T>) -> Vec<Vec<T>> {
    let (n1, n2) = (d1.len(), d2.len());
    let n = n1 + n2;
    let mut m = vec![vec![T::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = match (i < n1, j < n2) {
                (true, true) => point_cost(d1.pairs[i], d2.pairs[j]),
                (true, false) => diagonal_cost(d1.pairs[i]),
                (false, true) => diagonal_cost(d2.pairs[j]),
                (false, false) => T::zero(),
            };
        }
    }
    m
}

/// Minimum-cost perfect assignment (Hungarian method with potentials,
/// O(n^3)). Returns `assignment[row] = column`.
pub fn min_cost_assignment<T: Real>(costs: &[Vec<T>]) -> Vec<usize> {
    let n = costs.len();
    if n == 0 {
        return Vec::new();
    }
    let inf = T::infinity();
    // 1-based with a virtual column 0
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut col0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = inf;
            let mut col1 = 0;
            for col in 1..=n {
                if used[col] {
                    continue;
                }
                let reduced = costs[r - 1][col - 1] - u[r] - v[col];
                if reduced < minv[col] {
                    minv[col] = reduced;
                    way[col] = col0;
                }
                if minv[col] < delta {
                    delta = minv[col];
                    col1 = col;
                }
            }
            for col in 0..=n {
                if used[col] {
                    u[owner[col]] = u[owner[col]] + delta;
                    v[col] = v[col] - delta;
                } else {
                    minv[col] = minv[col] - delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }
    let mut assignment = vec![0; n];
    for col in 1..=n {
        assignment[owner[col] - 1] = col - 1;
    }
    assignment
}

/// Perfect matching using only edges of cost `<= threshold`, if one exists.
fn threshold_matching<T: Real>(costs: &[Vec<T>], threshold: T) -> Option<Vec<usize>> {
    let n = costs.len();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    fn augment<T: Real>(
        row: usize,
        costs: &[Vec<T>],
        threshold: T,
        seen: &mut [bool],
        col_owner: &mut [Option<usize>],
    ) -> bool {
        for col in 0..costs.len() {
            if costs[row][col] > threshold || seen[col] {
                continue;
            }
            seen[col] = true;
            let free = match col_owner[col] {
                None => true,
                Some(other) => augment(other, costs, threshold, seen, col_owner),
            };
            if free {
                col_owner[col] = Some(row);
                return true;
            }
        }
        false
    }
    for row in 0..n {
        let mut seen = vec![false; n];
        if !augment(row, costs, threshold, &mut seen, &mut col_owner) {
            return None;
        }
    }
    let mut assignment = vec![0; n];
    for (col, owner) in col_owner.iter().enumerate() {
        assignment[owner.expect("perfect matching")] = col;
    }
    Some(assignment)
}

fn bottleneck_assignment<T: Real>(costs: &[Vec<T>]) -> Vec<usize> {
    let mut candidates: Vec<T> = costs.iter().flatten().copied().collect();
    candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite costs"));
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len().saturating_sub(1));
    while lo < hi {
        let mid = (lo + hi) / 2;
        if threshold_matching(costs, candidates[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    match candidates.get(lo) {
        Some(&t) => threshold_matching(costs, t).expect("largest threshold is feasible"),
        None => Vec::new(),
    }
}

/// Order-`p` Wasserstein distance; `p = +inf` gives the bottleneck distance.
pub fn wasserstein<T: Real>(
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
    p: T,
) -> Result<(T, DiagramMatching<T>)> {
    check_compatible(d1, d2)?;
    check_order(p)?;
    let raw = augmented_costs(d1, d2);
    let assignment = if p.is_infinite() {
        bottleneck_assignment(&raw)
    } else if p == T::one() {
        min_cost_assignment(&raw)
    } else {
        let powered: Vec<Vec<T>> = raw
            .iter()
            .map(|row| row.iter().map(|c| c.powf(p)).collect())
            .collect();
        min_cost_assignment(&powered)
    };
    let (n1, n2) = (d1.len(), d2.len());
    let mut matched = Vec::new();
    let mut to_diagonal_1 = Vec::new();
    let mut to_diagonal_2 = Vec::new();
    for (row, &col) in assignment.iter().enumerate() {
        match (row < n1, col < n2) {
            (true, true) => matched.push((row, col)),
            (true, false) => to_diagonal_1.push(row),
            (false, true) => to_diagonal_2.push(col),
            (false, false) => {}
        }
    }
    to_diagonal_2.sort_unstable();
    let cost = matching_cost(d1, d2, &matched, &to_diagonal_1, &to_diagonal_2, p);
    Ok((
        cost,
        DiagramMatching {
            matched,
            to_diagonal_1,
            to_diagonal_2,
            cost,
        },
    ))
}

pub fn bottleneck<T: Real>(
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
) -> Result<(T, DiagramMatching<T>)> {
    wasserstein(d1, d2, T::infinity())
}

pub const BRUTE_FORCE_LIMIT: usize = 6;

/// Exact distance by enumerating every partial bijection between the finite
/// points, sending the rest to the diagonal. Small diagrams only.
pub fn brute_force_wasserstein<T: Real>(
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
    p: T,
) -> Result<T> {
    check_compatible(d1, d2)?;
    check_order(p)?;
    for d in [d1, d2] {
        if d.len() > BRUTE_FORCE_LIMIT {
            return Err(Error::SizeLimit {
                size: d.len(),
                limit: BRUTE_FORCE_LIMIT,
            });
        }
    }
    let mut partner: Vec<Option<usize>> = vec![None; d1.len()];
    let mut used = vec![false; d2.len()];
    let mut best = None;
    enumerate(0, d1, d2, p, &mut partner, &mut used, &mut best);
    Ok(best.expect("at least one matching"))
}

fn enumerate<T: Real>(
    i: usize,
    d1: &PersistenceDiagram<T>,
    d2: &PersistenceDiagram<T>,
    p: T,
    partner: &mut [Option<usize>],
    used: &mut [bool],
    best: &mut Option<T>,
) {
    if i == partner.len() {
        let ess = essential_cost(d1, d2);
        let edges = partner
            .iter()
            .enumerate()
            .map(|(a, b)| match b {
                Some(b) => point_cost(d1.pairs[a], d2.pairs[*b]),
                None => diagonal_cost(d1.pairs[a]),
            })
            .chain(
                used.iter()
                    .enumerate()
                    .filter(|(_, &u)| !u)
                    .map(|(b, _)| diagonal_cost(d2.pairs[b])),
            )
            .chain(std::iter::once(ess));
        let total = aggregate(edges, p);
        if best.is_none_or(|b| total < b) {
            *best = Some(total);
        }
        return;
    }
    partner[i] = None;
    enumerate(i + 1, d1, d2, p, partner, used, best);
    for j in 0..used.len() {
        if !used[j] {
            used[j] = true;
            partner[i] = Some(j);
            enumerate(i + 1, d1, d2, p, partner, used, best);
            used[j] = false;
        }
    }
    partner[i] = None;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Domain;
    use proptest::prelude::*;

    fn dgm(pairs: &[(f64, f64)]) -> PersistenceDiagram<f64> {
        PersistenceDiagram {
            pairs: pairs.to_vec(),
            essential: (0.0, None),
            domain: Domain::Interval,
        }
    }

    #[test]
    fn identical_diagrams_are_at_zero() {
        let d = dgm(&[(1.0, 3.0), (0.5, 4.0)]);
        for p in [1.0, 2.0, f64::INFINITY] {
            assert_eq!(wasserstein(&d, &d, p).unwrap().0, 0.0);
        }
    }

    #[test]
    fn single_point_to_diagonal() {
        let (c, m) = wasserstein(&dgm(&[(1.0, 3.0)]), &dgm(&[]), 1.0).unwrap();
        assert_eq!(c, 1.0);
        assert_eq!(m.to_diagonal_1, vec![0]);
        assert!(m.matched.is_empty());
    }

    #[test]
    fn bottleneck_prefers_matching() {
        let (c, m) = bottleneck(&dgm(&[(0.0, 4.0)]), &dgm(&[(1.0, 4.0)])).unwrap();
        assert_eq!(c, 1.0);
        assert_eq!(m.matched, vec![(0, 0)]);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_wasserstein(&dgm(&[]), &dgm(&[]), 1.0), Ok(0.0));
        let a = dgm(&[(0.0, 2.0)]);
        let b = dgm(&[(0.0, 2.0), (5.0, 6.0)]);
        assert_eq!(brute_force_wasserstein(&a, &b, 1.0), Ok(0.5));
        assert_eq!(wasserstein(&a, &b, 1.0).unwrap().0, 0.5);
        let big = dgm(&[(0.0, 1.0); 7]);
        assert!(matches!(
            brute_force_wasserstein(&big, &a, 1.0),
            Err(Error::SizeLimit { size: 7, limit: 6 })
        ));
    }

    #[test]
    fn essential_classes() {
        let a = PersistenceDiagram {
            pairs: vec![],
            essential: (0.0, Some(1.0)),
            domain: Domain::Circle,
        };
        let b = PersistenceDiagram {
            pairs: vec![],
            essential: (0.25, Some(2.0)),
            domain: Domain::Circle,
        };
        assert_eq!(wasserstein(&a, &b, 1.0).unwrap().0, 1.0);
        let mut c = dgm(&[]);
        c.essential = (0.5, None);
        assert_eq!(wasserstein(&dgm(&[]), &c, 2.0).unwrap().0, 0.5);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = dgm(&[]);
        let mut b = dgm(&[]);
        b.domain = Domain::Circle;
        assert!(matches!(wasserstein(&a, &b, 1.0), Err(Error::DomainMismatch(..))));
        b.domain = Domain::Interval;
        b.essential = (0.0, Some(1.0));
        assert!(wasserstein(&a, &b, 1.0).is_err());
        assert!(wasserstein(&a, &a, 0.0).is_err());
        assert!(wasserstein(&a, &a, f64::NAN).is_err());
    }

    #[test]
    fn assignment_solver_small() {
        let costs = vec![
            vec![4.0, 1.0, 3.0],
            vec![2.0, 0.0, 5.0],
            vec![3.0, 2.0, 2.0],
        ];
        let a = min_cost_assignment(&costs);
        let total: f64 = a.iter().enumerate().map(|(r, &c)| costs[r][c]).sum();
        assert_eq!(total, 5.0);
    }

    fn diagram() -> impl Strategy<Value = PersistenceDiagram<f64>> {
        prop::collection::vec((-2.0f64..2.0, 0.0f64..2.0), 0..6).prop_map(|pts| {
            dgm(&pts.into_iter().map(|(b, l)| (b, b + l)).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(a in diagram(), b in diagram()) {
            for p in [1.0, 2.0, f64::INFINITY] {
                let (fast, m) = wasserstein(&a, &b, p).unwrap();
                let slow = brute_force_wasserstein(&a, &b, p).unwrap();
                prop_assert!((fast - slow).abs() <= 1e-9, "p={p} fast={fast} slow={slow}");
                let again = matching_cost(&a, &b, &m.matched, &m.to_diagonal_1, &m.to_diagonal_2, p);
                prop_assert_eq!(again, m.cost);
                let mut seen1: Vec<usize> = m.matched.iter().map(|x| x.0).chain(m.to_diagonal_1.iter().copied()).collect();
                seen1.sort_unstable();
                prop_assert_eq!(seen1, (0..a.len()).collect::<Vec<_>>());
                let mut seen2: Vec<usize> = m.matched.iter().map(|x| x.1).chain(m.to_diagonal_2.iter().copied()).collect();
                seen2.sort_unstable();
                prop_assert_eq!(seen2, (0..b.len()).collect::<Vec<_>>());
            }
        }

        #[test]
        fn pseudometric(a in diagram(), b in diagram(), c in diagram()) {
            for p in [1.0, 2.0, f64::INFINITY] {
                let ab = wasserstein(&a, &b, p).unwrap().0;
                let ba = wasserstein(&b, &a, p).unwrap().0;
                let bc = wasserstein(&b, &c, p).unwrap().0;
                let ac = wasserstein(&a, &c, p).unwrap().0;
                prop_assert!((ab - ba).abs() <= 1e-12);
                prop_assert!(ac <= ab + bc + 1e-9);
            }
        }

        #[test]
        fn monotone_in_order(a in diagram(), b in diagram()) {
            let w1 = wasserstein(&a, &b, 1.0).unwrap().0;
            let w2 = wasserstein(&a, &b, 2.0).unwrap().0;
            let wi = wasserstein(&a, &b, f64::INFINITY).unwrap().0;
            prop_assert!(wi <= w2 + 1e-12);
            prop_assert!(w2 <= w1 + 1e-12);
        }
    }
}
