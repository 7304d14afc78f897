//! Leave-one-out retrieval evaluation.
//!
//! Every item is used once as a query; the remaining items are ranked by
//! ascending distance (ties by dataset index) and scored with mean rank and
//! average precision against the query's label.

use std::cmp::Ordering;
use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset<T> {
    labels: Vec<String>,
    series: Vec<TimeSeries<T>>,
}

impl<T: Scalar> LabeledDataset<T> {
    /// Needs at least two items, two distinct labels and a single domain.
    /// Labels occurring once are allowed; those queries are skipped.
    pub fn new(items: Vec<(String, TimeSeries<T>)>) -> Result<Self> {
        if items.len() < 2 {
            return Err(Error::InvalidDataset(format!("need at least 2 items, got {}", items.len())));
        }
        let (labels, series): (Vec<_>, Vec<_>) = items.into_iter().unzip();
        let mut distinct = labels.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < 2 {
            return Err(Error::InvalidDataset("need at least 2 distinct labels".into()));
        }
        let domain = series[0].domain();
        if let Some(bad) = series.iter().find(|s| s.domain() != domain) {
            return Err(Error::DomainMismatch(domain, bad.domain()));
        }
        Ok(Self { labels, series })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn series(&self) -> &[TimeSeries<T>] {
        &self.series
    }

    /// Indices of items whose label occurs only once.
    pub fn singletons(&self) -> Vec<usize> {
        singleton_indices(&self.labels)
    }
}

fn singleton_indices(labels: &[String]) -> Vec<usize> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for l in labels {
        *counts.entry(l).or_default() += 1;
    }
    (0..labels.len()).filter(|&i| counts[labels[i].as_str()] == 1).collect()
}

/// Runs `f` on a pool with `jobs` threads, or rayon's default pool.
fn with_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidParameter("jobs must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}"))),
    }
}

/// Pairwise distances of `items`. Only pairs `i < j` are evaluated; the
/// result is mirrored so it is exactly symmetric with a zero diagonal. The
/// lowest failing pair is reported.
pub fn pairwise<I, T, F>(items: &[I], metric: F, jobs: Option<usize>) -> Result<Vec<Vec<T>>>
where
    I: Sync,
    T: Scalar,
    F: Fn(&I, &I) -> Result<T> + Sync,
{
    let n = items.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let results: Vec<Result<T>> =
        with_pool(jobs, || pairs.par_iter().map(|&(i, j)| metric(&items[i], &items[j])).collect())?;
    let mut d = vec![vec![T::zero(); n]; n];
    for (&(i, j), r) in pairs.iter().zip(results) {
        let v = r.map_err(|e| Error::Metric {
            i,
            j,
            source: Box::new(e),
        })?;
        d[i][j] = v;
        d[j][i] = v;
    }
    Ok(d)
}

pub fn distance_matrix<T, F>(ds: &LabeledDataset<T>, metric: F, jobs: Option<usize>) -> Result<Vec<Vec<T>>>
where
    T: Scalar,
    F: Fn(&TimeSeries<T>, &TimeSeries<T>) -> Result<T> + Sync,
{
    pairwise(&ds.series, metric, jobs)
}

/// 1-based ranks of the relevant entries.
fn relevant_ranks(ranked: &[&str], query: &str) -> Result<Vec<usize>> {
    let ranks: Vec<usize> = ranked
        .iter()
        .enumerate()
        .filter(|(_, l)| **l == query)
        .map(|(k, _)| k + 1)
        .collect();
    if ranks.is_empty() {
        return Err(Error::NoRelevantItems);
    }
    Ok(ranks)
}

pub fn mean_rank(ranked: &[&str], query: &str) -> Result<f64> {
    let ranks = relevant_ranks(ranked, query)?;
    Ok(ranks.iter().sum::<usize>() as f64 / ranks.len() as f64)
}

/// Mean over relevant positions `i` of the precision at `i`.
pub fn average_precision(ranked: &[&str], query: &str) -> Result<f64> {
    let points = pr_points(ranked, query)?;
    Ok(points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64)
}

/// `(recall, precision)` at every relevant position.
pub fn pr_points(ranked: &[&str], query: &str) -> Result<Vec<(f64, f64)>> {
    let ranks = relevant_ranks(ranked, query)?;
    let total = ranks.len() as f64;
    Ok(ranks
        .iter()
        .enumerate()
        .map(|(k, &r)| ((k + 1) as f64 / total, (k + 1) as f64 / r as f64))
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueryResult {
    pub query: usize,
    pub mean_rank: f64,
    pub average_precision: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankingReport {
    pub per_query: Vec<QueryResult>,
    /// Queries whose label has no other member.
    pub skipped: Vec<usize>,
    pub aggregate_mr: f64,
    pub aggregate_map: f64,
    pub pr_curve: Vec<(f64, f64)>,
}

/// Other items ordered by ascending distance, ties by index.
pub fn ranking<T: Scalar>(row: &[T], query: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..row.len()).filter(|&k| k != query).collect();
    order.sort_by(|&a, &b| {
        row[a]
            .partial_cmp(&row[b])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    order
}

/// Precision of a query's PR points at recall `r`, interpolated linearly and
/// held constant below the first point.
fn interpolate(points: &[(f64, f64)], r: f64) -> f64 {
    let k = points.partition_point(|p| p.0 < r);
    if k == points.len() {
        return points[k - 1].1;
    }
    if k == 0 || points[k].0 == r {
        return points[k].1;
    }
    let (r0, p0) = points[k - 1];
    let (r1, p1) = points[k];
    p0 + (p1 - p0) * (r - r0) / (r1 - r0)
}

fn pool_curves(curves: &[Vec<(f64, f64)>]) -> Vec<(f64, f64)> {
    let mut levels: Vec<f64> = curves.iter().flatten().map(|p| p.0).collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    levels
        .into_iter()
        .map(|r| {
            let sum: f64 = curves.iter().map(|c| interpolate(c, r)).sum();
            (r, sum / curves.len() as f64)
        })
        .collect()
}

/// Scores a precomputed distance matrix.
pub fn evaluate_matrix<T: Scalar>(labels: &[String], d: &[Vec<T>]) -> Result<RankingReport> {
    let skipped = singleton_indices(labels);
    let mut per_query = Vec::new();
    let mut curves = Vec::new();
    for q in 0..labels.len() {
        if skipped.binary_search(&q).is_ok() {
            continue;
        }
        let ranked: Vec<&str> = ranking(&d[q], q).into_iter().map(|k| labels[k].as_str()).collect();
        let query = labels[q].as_str();
        let points = pr_points(&ranked, query)?;
        per_query.push(QueryResult {
            query: q,
            mean_rank: mean_rank(&ranked, query)?,
            average_precision: points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64,
        });
        curves.push(points);
    }
    if per_query.is_empty() {
        return Err(Error::NoRelevantItems);
    }
    let n = per_query.len() as f64;
    Ok(RankingReport {
        aggregate_mr: per_query.iter().map(|q| q.mean_rank).sum::<f64>() / n,
        aggregate_map: per_query.iter().map(|q| q.average_precision).sum::<f64>() / n,
        pr_curve: pool_curves(&curves),
        per_query,
        skipped,
    })
}

pub fn evaluate<T, F>(ds: &LabeledDataset<T>, metric: F, jobs: Option<usize>) -> Result<RankingReport>
where
    T: Scalar,
    F: Fn(&TimeSeries<T>, &TimeSeries<T>) -> Result<T> + Sync,
{
    evaluate_matrix(&ds.labels, &distance_matrix(ds, metric, jobs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: &str = "l";
    const N: &str = "n";

    #[test]
    fn mean_rank_examples() {
        assert_eq!(mean_rank(&[L, L, N], L).unwrap(), 1.5);
        assert_eq!(mean_rank(&[L, N, L], L).unwrap(), 2.0);
        assert_eq!(mean_rank(&[L; 6], L).unwrap(), 3.5);
        assert_eq!(mean_rank(&[N, N], L), Err(Error::NoRelevantItems));
    }

    #[test]
    fn average_precision_examples() {
        assert_eq!(average_precision(&[L, L, N], L).unwrap(), 1.0);
        assert!((average_precision(&[L, N, L], L).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(average_precision(&[N, L], L).unwrap(), 0.5);
        assert!(average_precision(&[N], L).is_err());
    }

    #[test]
    fn interpolation_between_points() {
        let pts = [(0.5, 1.0), (1.0, 0.5)];
        assert_eq!(interpolate(&pts, 0.25), 1.0);
        assert_eq!(interpolate(&pts, 0.75), 0.75);
        assert_eq!(interpolate(&pts, 1.0), 0.5);
    }

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn separated_classes_score_perfectly() {
        let d = vec![
            vec![0.0, 1.0, 9.0, 9.0],
            vec![1.0, 0.0, 9.0, 9.0],
            vec![9.0, 9.0, 0.0, 1.0],
            vec![9.0, 9.0, 1.0, 0.0],
        ];
        let r = evaluate_matrix(&labels(&["a", "a", "b", "b"]), &d).unwrap();
        assert_eq!(r.aggregate_map, 1.0);
        assert_eq!(r.aggregate_mr, 1.0);
        assert_eq!(r.pr_curve, vec![(1.0, 1.0)]);
    }

    #[test]
    fn ties_break_by_index() {
        let row = [0.0, 2.0, 1.0, 1.0, 0.5];
        assert_eq!(ranking(&row, 0), vec![4, 2, 3, 1]);
    }

    #[test]
    fn singletons_are_skipped() {
        let d = vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 2.0], vec![2.0, 2.0, 0.0]];
        let r = evaluate_matrix(&labels(&["a", "a", "z"]), &d).unwrap();
        assert_eq!(r.skipped, vec![2]);
        assert_eq!(r.per_query.len(), 2);
    }

    #[test]
    fn dataset_validation() {
        let s = |v: Vec<f64>| TimeSeries::interval(v).unwrap();
        assert!(LabeledDataset::new(vec![("a".into(), s(vec![0.0]))]).is_err());
        assert!(LabeledDataset::new(vec![("a".into(), s(vec![0.0])), ("a".into(), s(vec![1.0]))]).is_err());
        let c = TimeSeries::circle(vec![0.0, 1.0]).unwrap();
        assert!(LabeledDataset::new(vec![("a".into(), s(vec![0.0])), ("b".into(), c)]).is_err());
    }

    #[test]
    fn pairwise_reports_lowest_failing_pair() {
        let items = [0, 1, 2, 3];
        let err = pairwise(
            &items,
            |&a: &i32, &b: &i32| if a + b >= 4 { Err(Error::EmptySeries) } else { Ok((a + b) as f64) },
            Some(3),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Metric { i: 1, j: 3, .. }));
        assert!(pairwise(&items, |_: &i32, _: &i32| Ok(0.0), Some(0)).is_err());
    }
}
