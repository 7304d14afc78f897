//! Sampled time series and their critical point series.
//!
//! A [`TimeSeries`] lives either on an interval or on a circle. Its
//! [`CriticalSeries`] keeps only the local extrema, in order, together with a
//! min/max indicator and the index of the sample each extremum came from.
//!
//! Runs of equal consecutive samples (plateaus) are collapsed to their first
//! sample before extrema are detected, so ties never produce spurious or
//! missing critical points.

use crate::error::{Error, Result};
use crate::scalar::{abs_diff, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Interval,
    Circle,
}

/// Whether a critical point is a local minimum or maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Min,
    Max,
}

impl Kind {
    /// `-1` for a minimum, `+1` for a maximum.
    pub fn sign(self) -> i8 {
        match self {
            Kind::Min => -1,
            Kind::Max => 1,
        }
    }

    pub fn from_sign(sign: i8) -> Option<Kind> {
        match sign {
            -1 => Some(Kind::Min),
            1 => Some(Kind::Max),
            _ => None,
        }
    }

    pub fn opposite(self) -> Kind {
        match self {
            Kind::Min => Kind::Max,
            Kind::Max => Kind::Min,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries<T> {
    values: Vec<T>,
    domain: Domain,
}

impl<T: Scalar> TimeSeries<T> {
    pub fn new(values: Vec<T>, domain: Domain) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if domain == Domain::Circle && values.len() < 2 {
            return Err(Error::CircleTooShort(values.len()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { values, domain })
    }

    pub fn interval(values: Vec<T>) -> Result<Self> {
        Self::new(values, Domain::Interval)
    }

    pub fn circle(values: Vec<T>) -> Result<Self> {
        Self::new(values, Domain::Circle)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn critical(&self) -> CriticalSeries<T> {
        extract_critical_series(self)
    }
}

/// Ordered critical values with their min/max indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalSeries<T> {
    values: Vec<T>,
    kinds: Vec<Kind>,
    origin_indices: Vec<usize>,
    domain: Domain,
}

impl<T: Scalar> CriticalSeries<T> {
    /// Builds a critical series from explicit parts, checking every invariant:
    /// alternating kinds, the Euler-characteristic length rule for the
    /// domain, and that each value is a strict extremum among its neighbours.
    pub fn from_parts(
        values: Vec<T>,
        kinds: Vec<Kind>,
        origin_indices: Vec<usize>,
        domain: Domain,
    ) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidCritical(msg));
        let n = values.len();
        if kinds.len() != n || origin_indices.len() != n {
            return invalid(format!(
                "length mismatch: {} values, {} kinds, {} origins",
                n,
                kinds.len(),
                origin_indices.len()
            ));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite_value()) {
            return Err(Error::NonFinite(i));
        }
        match domain {
            Domain::Interval => {
                if n.is_multiple_of(2) {
                    return invalid(format!("interval series must have odd length, got {n}"));
                }
                if kinds[0] != Kind::Min || kinds[n - 1] != Kind::Min {
                    return invalid("interval series must start and end with a min".into());
                }
            }
            Domain::Circle => {
                if n % 2 == 1 {
                    return invalid(format!("circular series must have even length, got {n}"));
                }
            }
        }
        let cyclic = domain == Domain::Circle;
        for i in 0..n {
            let next = match (i + 1 < n, cyclic) {
                (true, _) => i + 1,
                (false, true) => 0,
                (false, false) => break,
            };
            if n > 1 && kinds[i] == kinds[next] {
                return invalid(format!("kinds do not alternate at index {i}"));
            }
            if n > 1 {
                let ok = match kinds[i] {
                    Kind::Min => values[i] < values[next],
                    Kind::Max => values[i] > values[next],
                };
                if !ok {
                    return invalid(format!("value at index {i} is not a strict extremum"));
                }
            }
        }
        Ok(Self {
            values,
            kinds,
            origin_indices,
            domain,
        })
    }

    /// Critical series of an already-critical sequence, e.g. `[0, 5, 1, 4, 2]`.
    /// The sequence is treated as raw samples, so regular points are dropped.
    pub fn from_values(values: Vec<T>, domain: Domain) -> Result<Self> {
        Ok(extract_critical_series(&TimeSeries::new(values, domain)?))
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn kinds(&self) -> &[Kind] {
        &self.kinds
    }

    pub fn origin_indices(&self) -> &[usize] {
        &self.origin_indices
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// A circular series with no critical points (constant input).
    pub fn is_degenerate(&self) -> bool {
        self.values.is_empty()
    }

    pub fn count(&self, kind: Kind) -> usize {
        self.kinds.iter().filter(|&&k| k == kind).count()
    }

    pub fn rotate(&self, k: usize) -> Result<Self> {
        rotate(self, k)
    }

    /// Piecewise-linear resampling with `per_segment` samples on each
    /// segment between consecutive critical points (including the left
    /// end). The result has exactly this series as its critical series.
    pub fn piecewise_linear(&self, per_segment: usize) -> Vec<T>
    where
        T: num_traits::FromPrimitive,
    {
        let per_segment = per_segment.max(1);
        let n = self.values.len();
        let segments = match self.domain {
            Domain::Interval => n.saturating_sub(1),
            Domain::Circle => n,
        };
        let denom = T::from_usize(per_segment).expect("segment count fits the scalar");
        let mut out = Vec::with_capacity(segments * per_segment + 1);
        for s in 0..segments {
            let a = self.values[s];
            let b = self.values[(s + 1) % n];
            for t in 0..per_segment {
                let t = T::from_usize(t).expect("segment index fits the scalar");
                out.push(a + (b - a) * t / denom);
            }
        }
        if self.domain == Domain::Interval && n > 0 {
            out.push(self.values[n - 1]);
        }
        out
    }
}

/// Collapses runs of equal consecutive values. Returns `(value, first index)`.
fn collapse_plateaus<T: Scalar>(values: &[T]) -> Vec<(T, usize)> {
    let mut out: Vec<(T, usize)> = Vec::with_capacity(values.len());
    for (i, &v) in values.iter().enumerate() {
        match out.last() {
            Some(&(last, _)) if last == v => {}
            _ => out.push((v, i)),
        }
    }
    out
}

/// Extracts the critical series of `ts`.
///
/// Interior samples are critical when strictly below (min) or above (max)
/// both neighbours. On the interval an endpoint is critical only when it is
/// below its single neighbour, in which case it is a min. On the circle all
/// samples use their cyclic neighbours.
pub fn extract_critical_series<T: Scalar>(ts: &TimeSeries<T>) -> CriticalSeries<T> {
    match ts.domain {
        Domain::Interval => extract_interval(&ts.values),
        Domain::Circle => extract_circle(&ts.values),
    }
}

fn extract_interval<T: Scalar>(values: &[T]) -> CriticalSeries<T> {
    let runs = collapse_plateaus(values);
    let n = runs.len();
    let mut out = CriticalSeries {
        values: Vec::new(),
        kinds: Vec::new(),
        origin_indices: Vec::new(),
        domain: Domain::Interval,
    };
    if n == 1 {
        out.values.push(runs[0].0);
        out.kinds.push(Kind::Min);
        out.origin_indices.push(runs[0].1);
        return out;
    }
    for i in 0..n {
        let (v, origin) = runs[i];
        let kind = if i == 0 {
            (v < runs[1].0).then_some(Kind::Min)
        } else if i == n - 1 {
            (v < runs[n - 2].0).then_some(Kind::Min)
        } else {
            classify(runs[i - 1].0, v, runs[i + 1].0)
        };
        if let Some(kind) = kind {
            out.values.push(v);
            out.kinds.push(kind);
            out.origin_indices.push(origin);
        }
    }
    out
}

fn extract_circle<T: Scalar>(values: &[T]) -> CriticalSeries<T> {
    let mut out = CriticalSeries {
        values: Vec::new(),
        kinds: Vec::new(),
        origin_indices: Vec::new(),
        domain: Domain::Circle,
    };
    let len = values.len();
    // Start where a new plateau begins so that no plateau wraps the seam.
    let Some(start) = (0..len).find(|&i| values[i] != values[(i + len - 1) % len]) else {
        return out;
    };
    let mut runs: Vec<(T, usize)> = Vec::new();
    for step in 0..len {
        let i = (start + step) % len;
        match runs.last() {
            Some(&(last, _)) if last == values[i] => {}
            _ => runs.push((values[i], i)),
        }
    }
    let n = runs.len();
    for i in 0..n {
        let prev = runs[(i + n - 1) % n].0;
        let next = runs[(i + 1) % n].0;
        if let Some(kind) = classify(prev, runs[i].0, next) {
            out.values.push(runs[i].0);
            out.kinds.push(kind);
            out.origin_indices.push(runs[i].1);
        }
    }
    out
}

fn classify<T: Scalar>(prev: T, v: T, next: T) -> Option<Kind> {
    if v < prev && v < next {
        Some(Kind::Min)
    } else if v > prev && v > next {
        Some(Kind::Max)
    } else {
        None
    }
}

/// Circular shift: entry `i` of the result is entry `(i + k) mod n` of `cs`.
pub fn rotate<T: Scalar>(cs: &CriticalSeries<T>, k: usize) -> Result<CriticalSeries<T>> {
    if cs.domain != Domain::Circle {
        return Err(Error::WrongDomain {
            expected: Domain::Circle,
            found: cs.domain,
        });
    }
    let n = cs.len();
    if k >= n.max(1) {
        return Err(Error::RotationOutOfRange { offset: k, len: n });
    }
    fn shift<U: Copy>(v: &[U], k: usize) -> Vec<U> {
        v[k..].iter().chain(&v[..k]).copied().collect()
    }
    Ok(CriticalSeries {
        values: shift(&cs.values, k),
        kinds: shift(&cs.kinds, k),
        origin_indices: shift(&cs.origin_indices, k),
        domain: Domain::Circle,
    })
}

/// Index-wise L1 distance between two interval critical series, with the
/// shorter one padded by zeros.
pub fn zero_padded_l1<T: Scalar>(a: &CriticalSeries<T>, b: &CriticalSeries<T>) -> Result<T> {
    for cs in [a, b] {
        if cs.domain != Domain::Interval {
            return Err(Error::WrongDomain {
                expected: Domain::Interval,
                found: cs.domain,
            });
        }
    }
    let n = a.len().max(b.len());
    let at = |cs: &CriticalSeries<T>, i: usize| cs.values.get(i).copied().unwrap_or_else(T::zero);
    Ok((0..n).fold(T::zero(), |acc, i| acc + abs_diff(at(a, i), at(b, i))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kinds(signs: &[i8]) -> Vec<Kind> {
        signs.iter().map(|&s| Kind::from_sign(s).unwrap()).collect()
    }

    #[test]
    fn monotone_interval_has_single_min() {
        let cs = TimeSeries::interval(vec![0.0, 1.0, 2.0, 3.0]).unwrap().critical();
        assert_eq!(cs.values(), &[0.0]);
        assert_eq!(cs.kinds(), &[Kind::Min]);
        assert_eq!(cs.origin_indices(), &[0]);
    }

    #[test]
    fn interval_endpoints_only_count_as_mins() {
        let cs = TimeSeries::interval(vec![1.0, 0.0, 2.0, 1.0, 3.0]).unwrap().critical();
        assert_eq!(cs.values(), &[0.0, 2.0, 1.0]);
        assert_eq!(cs.kinds(), kinds(&[-1, 1, -1]).as_slice());
        assert_eq!(cs.origin_indices(), &[1, 2, 3]);
    }

    #[test]
    fn circle_all_extrema() {
        let cs = TimeSeries::circle(vec![0.0, 1.0, 0.0, 1.0]).unwrap().critical();
        assert_eq!(cs.values(), &[0.0, 1.0, 0.0, 1.0]);
        assert_eq!(cs.kinds(), kinds(&[-1, 1, -1, 1]).as_slice());
    }

    #[test]
    fn singleton_interval() {
        let cs = TimeSeries::interval(vec![5.0]).unwrap().critical();
        assert_eq!(cs.values(), &[5.0]);
        assert_eq!(cs.kinds(), &[Kind::Min]);
    }

    #[test]
    fn plateaus_collapse_to_first_sample() {
        let cs = TimeSeries::interval(vec![2.0, 0.0, 0.0, 0.0, 3.0, 3.0, 1.0])
            .unwrap()
            .critical();
        assert_eq!(cs.values(), &[0.0, 3.0, 1.0]);
        assert_eq!(cs.origin_indices(), &[1, 4, 6]);
    }

    #[test]
    fn constant_series() {
        let cs = TimeSeries::interval(vec![4.0; 6]).unwrap().critical();
        assert_eq!(cs.values(), &[4.0]);
        let cs = TimeSeries::circle(vec![4.0; 6]).unwrap().critical();
        assert!(cs.is_degenerate());
    }

    #[test]
    fn circular_plateau_across_seam() {
        let cs = TimeSeries::circle(vec![1.0, 1.0, 0.0, 2.0, 1.0]).unwrap().critical();
        assert_eq!(cs.values(), &[0.0, 2.0]);
        assert_eq!(cs.origin_indices(), &[2, 3]);
        let cs = TimeSeries::circle(vec![3.0, 0.0, 1.0, 3.0]).unwrap().critical();
        // the plateau of 3s wraps and starts at sample 3
        assert_eq!(cs.values(), &[0.0, 3.0]);
        assert_eq!(cs.kinds(), kinds(&[-1, 1]).as_slice());
        assert_eq!(cs.origin_indices(), &[1, 3]);
        let cs = TimeSeries::circle(vec![3.0, 0.0, 2.0, 1.0, 3.0]).unwrap().critical();
        assert_eq!(cs.values(), &[0.0, 2.0, 1.0, 3.0]);
        assert_eq!(cs.origin_indices(), &[1, 2, 3, 4]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(TimeSeries::<f64>::interval(vec![]), Err(Error::EmptySeries));
        assert_eq!(TimeSeries::circle(vec![1.0]), Err(Error::CircleTooShort(1)));
        assert_eq!(
            TimeSeries::interval(vec![1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        );
        assert_eq!(
            TimeSeries::interval(vec![f64::INFINITY]),
            Err(Error::NonFinite(0))
        );
    }

    #[test]
    fn from_parts_checks_invariants() {
        let ok = CriticalSeries::from_parts(
            vec![0.0, 2.0, 1.0],
            kinds(&[-1, 1, -1]),
            vec![0, 1, 2],
            Domain::Interval,
        );
        assert!(ok.is_ok());
        let even = CriticalSeries::from_parts(
            vec![0.0, 2.0],
            kinds(&[-1, 1]),
            vec![0, 1],
            Domain::Interval,
        );
        assert!(even.is_err());
        let not_extremum = CriticalSeries::from_parts(
            vec![0.0, 2.0, 3.0],
            kinds(&[-1, 1, -1]),
            vec![0, 1, 2],
            Domain::Interval,
        );
        assert!(not_extremum.is_err());
        let wrap = CriticalSeries::from_parts(
            vec![0.0, 2.0, 1.0, 3.0],
            kinds(&[-1, 1, -1, 1]),
            vec![0, 1, 2, 3],
            Domain::Circle,
        );
        assert!(wrap.is_ok());
    }

    fn circle_cs(values: &[f64]) -> CriticalSeries<f64> {
        TimeSeries::circle(values.to_vec()).unwrap().critical()
    }

    #[test]
    fn rotate_identity_and_shift() {
        let c = circle_cs(&[0.0, 1.0, 0.0, 2.0]);
        assert_eq!(rotate(&c, 0).unwrap(), c);
        let r = rotate(&c, 1).unwrap();
        assert_eq!(r.values(), &[1.0, 0.0, 2.0, 0.0]);
        assert_eq!(r.kinds(), kinds(&[1, -1, 1, -1]).as_slice());
        assert_eq!(r.origin_indices(), &[1, 2, 3, 0]);
        assert_eq!(rotate(&rotate(&c, 3).unwrap(), 1).unwrap(), c);
    }

    #[test]
    fn rotate_rejects_interval_and_bad_offset() {
        let c = TimeSeries::interval(vec![0.0, 1.0, 0.0]).unwrap().critical();
        assert!(matches!(rotate(&c, 0), Err(Error::WrongDomain { .. })));
        let c = circle_cs(&[0.0, 1.0]);
        assert!(matches!(
            rotate(&c, 2),
            Err(Error::RotationOutOfRange { offset: 2, len: 2 })
        ));
    }

    #[test]
    fn zero_padded_l1_examples() {
        let cs = |v: &[f64]| CriticalSeries::from_values(v.to_vec(), Domain::Interval).unwrap();
        assert_eq!(zero_padded_l1(&cs(&[0.0, 2.0, 1.0]), &cs(&[0.0, 2.0, 1.0])), Ok(0.0));
        assert_eq!(zero_padded_l1(&cs(&[0.0, 2.0, 1.0]), &cs(&[1.0, 3.0, 1.0])), Ok(2.0));
        assert_eq!(
            zero_padded_l1(&cs(&[0.0, 2.0, 1.0, 4.0, 0.0]), &cs(&[0.0, 2.0, 1.0])),
            Ok(4.0)
        );
        assert!(zero_padded_l1(&cs(&[0.0]), &circle_cs(&[0.0, 1.0])).is_err());
    }

    fn samples() -> impl Strategy<Value = Vec<f64>> {
        // small integer grid so plateaus and ties show up often
        prop::collection::vec((-4i32..=4).prop_map(f64::from), 1..40)
    }

    proptest! {
        #[test]
        fn interval_shape_invariants(v in samples()) {
            let cs = TimeSeries::interval(v).unwrap().critical();
            prop_assert_eq!(cs.len() % 2, 1);
            prop_assert_eq!(cs.kinds()[0], Kind::Min);
            prop_assert_eq!(*cs.kinds().last().unwrap(), Kind::Min);
            let rebuilt = CriticalSeries::from_parts(
                cs.values().to_vec(), cs.kinds().to_vec(), cs.origin_indices().to_vec(), Domain::Interval);
            prop_assert!(rebuilt.is_ok());
            prop_assert!(cs.origin_indices().windows(2).all(|w| w[0] < w[1]));
        }

        #[test]
        fn circle_shape_invariants(v in prop::collection::vec((-4i32..=4).prop_map(f64::from), 2..40)) {
            let cs = TimeSeries::circle(v).unwrap().critical();
            prop_assert_eq!(cs.len() % 2, 0);
            prop_assert_eq!(cs.count(Kind::Min), cs.count(Kind::Max));
            if !cs.is_degenerate() {
                let rebuilt = CriticalSeries::from_parts(
                    cs.values().to_vec(), cs.kinds().to_vec(), cs.origin_indices().to_vec(), Domain::Circle);
                prop_assert!(rebuilt.is_ok());
            }
        }

        #[test]
        fn interval_lengths_differ_by_even(a in samples(), b in samples()) {
            let a = TimeSeries::interval(a).unwrap().critical();
            let b = TimeSeries::interval(b).unwrap().critical();
            prop_assert_eq!((a.len() as i64 - b.len() as i64) % 2, 0);
        }

        #[test]
        fn extraction_is_idempotent_on_piecewise_linear(v in samples(), per in 1usize..5) {
            let cs = TimeSeries::interval(v).unwrap().critical();
            let dense = cs.piecewise_linear(per);
            let again = TimeSeries::interval(dense).unwrap().critical();
            prop_assert_eq!(again.values(), cs.values());
            prop_assert_eq!(again.kinds(), cs.kinds());
        }

        #[test]
        fn circular_extraction_is_idempotent(v in prop::collection::vec((-4i32..=4).prop_map(f64::from), 2..40), per in 1usize..4) {
            let cs = TimeSeries::circle(v).unwrap().critical();
            prop_assume!(!cs.is_degenerate());
            let dense = cs.piecewise_linear(per);
            let again = TimeSeries::circle(dense).unwrap().critical();
            prop_assert_eq!(again.values(), cs.values());
            prop_assert_eq!(again.kinds(), cs.kinds());
        }
    }
}
