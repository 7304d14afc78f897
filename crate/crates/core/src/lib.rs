//! Order-aware distances between time series through their critical points.
//!
//! The central object is the [`CriticalSeries`] of a sampled series: the
//! alternating minima and maxima that determine its merge tree. On top of it
//! the crate provides
//!
//! - [`dope`] / [`cdope`], an edit distance between critical series on an
//!   interval or a circle that matches extrema in order and deletes
//!   min-max pairs,
//! - [`sublevelset_diagram`] and [`wasserstein`] for the order-blind
//!   persistence view of the same series,
//! - dynamic time warping baselines,
//! - a curvature pipeline turning binary silhouettes into circular series,
//! - leave-one-out retrieval evaluation.
//!
//! Everything combinatorial is generic over [`Scalar`], so exact rationals
//! work as well as floats:
//!
//! ```
//! use num_rational::Rational64 as Q;
//! use topodist::{dope, CriticalSeries, Domain};
//!
//! let q = |n| Q::from_integer(n);
//! let x = CriticalSeries::from_values(vec![q(0), q(5), q(1), q(4), q(2)], Domain::Interval).unwrap();
//! let y = CriticalSeries::from_values(vec![q(0), q(5), q(2)], Domain::Interval).unwrap();
//! let (cost, alignment) = dope(&x, &y).unwrap();
//! assert_eq!(cost, q(3));
//! assert_eq!(alignment.deleted_x(), vec![(2, 3)]);
//! ```

pub mod baselines;
pub mod dope;
pub mod error;
pub mod eval;
pub mod matching;
pub mod mergetree;
pub mod metrics;
pub mod scalar;
pub mod series;
pub mod shape;
pub mod synth;

pub use baselines::{cdtw, dtw, dtw_critical, dtw_slices, WarpingPath};
pub use dope::{cdope, cdope_cost, dope, dope_brute_force, dope_cost, Alignment, CircularAlignment, DpTable, EditOp};
pub use error::{Error, Result};
pub use eval::{average_precision, distance_matrix, evaluate, mean_rank, LabeledDataset, RankingReport};
pub use matching::{bottleneck, brute_force_wasserstein, wasserstein, DiagramMatching};
pub use mergetree::{build_merge_tree, sublevelset_diagram, MergeTree, PersistenceDiagram};
pub use metrics::Method;
pub use scalar::{Real, Scalar};
pub use series::{extract_critical_series, rotate, zero_padded_l1, CriticalSeries, Domain, Kind, TimeSeries};
pub use shape::{extract_contour, signed_curvature, BinaryImage, Contour, GrayImage, Intensity};

pub type TimeSeriesF64 = TimeSeries<f64>;
pub type CriticalSeriesF64 = CriticalSeries<f64>;
pub type PersistenceDiagramF64 = PersistenceDiagram<f64>;
pub type AlignmentF64 = Alignment<f64>;
pub type ContourF64 = Contour<f64>;
pub type TimeSeriesF32 = TimeSeries<f32>;
pub type CriticalSeriesF32 = CriticalSeries<f32>;
/// Exact critical series for oracle checks.
pub type CriticalSeriesQ = CriticalSeries<num_rational::Rational64>;
