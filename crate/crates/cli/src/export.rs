//! Output formats.

use serde::{Deserialize, Serialize};

use topodist::eval::RankingReport;
use topodist::{Alignment, CircularAlignment, CriticalSeries};

pub const SCHEMA: u32 = 1;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        return format!("{}e{}{:02}", trim_zeros(mantissa), if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEntry {
    pub x_critical_index: usize,
    pub y_critical_index: usize,
    pub x_origin_index: usize,
    pub y_origin_index: usize,
}

/// JSON rendering of an optimal alignment. Indices refer to the critical
/// series of the inputs as given; for circular inputs a deleted pair may
/// wrap around, e.g. `[n - 1, 0]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentExport {
    pub schema: u32,
    pub method: String,
    pub cost: f64,
    pub matches: Vec<MatchEntry>,
    pub deleted_x: Vec<[usize; 2]>,
    pub deleted_y: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shifts: Option<[usize; 2]>,
}

impl AlignmentExport {
    fn build(
        method: &str,
        alignment: &Alignment<f64>,
        x: &CriticalSeries<f64>,
        y: &CriticalSeries<f64>,
        shifts: Option<(usize, usize)>,
    ) -> Self {
        let (sx, sy) = shifts.unwrap_or((0, 0));
        let ix = |k: usize| (k + sx) % x.len();
        let iy = |k: usize| (k + sy) % y.len();
        Self {
            schema: SCHEMA,
            method: method.to_string(),
            cost: alignment.cost(),
            matches: alignment
                .matched()
                .into_iter()
                .map(|(i, j)| MatchEntry {
                    x_critical_index: ix(i),
                    y_critical_index: iy(j),
                    x_origin_index: x.origin_indices()[ix(i)],
                    y_origin_index: y.origin_indices()[iy(j)],
                })
                .collect(),
            deleted_x: alignment.deleted_x().into_iter().map(|(a, b)| [ix(a), ix(b)]).collect(),
            deleted_y: alignment.deleted_y().into_iter().map(|(a, b)| [iy(a), iy(b)]).collect(),
            shifts: shifts.map(|(i, j)| [i, j]),
        }
    }

    pub fn linear(alignment: &Alignment<f64>, x: &CriticalSeries<f64>, y: &CriticalSeries<f64>) -> Self {
        Self::build("dope", alignment, x, y, None)
    }

    /// `x` and `y` are the unrotated critical series.
    pub fn circular(c: &CircularAlignment<f64>, x: &CriticalSeries<f64>, y: &CriticalSeries<f64>) -> Self {
        Self::build("cdope", &c.alignment, x, y, Some(c.shifts))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryExport {
    pub query: usize,
    pub label: String,
    #[serde(rename = "MR")]
    pub mean_rank: f64,
    #[serde(rename = "AP")]
    pub average_precision: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportExport {
    pub schema: u32,
    pub method: String,
    pub items: usize,
    #[serde(rename = "aggregate_MR")]
    pub aggregate_mr: f64,
    #[serde(rename = "aggregate_MAP")]
    pub aggregate_map: f64,
    pub skipped: Vec<usize>,
    pub per_query: Vec<QueryExport>,
    pub pr_curve: Vec<[f64; 2]>,
}

impl ReportExport {
    pub fn new(method: &str, labels: &[String], report: &RankingReport) -> Self {
        Self {
            schema: SCHEMA,
            method: method.to_string(),
            items: labels.len(),
            aggregate_mr: report.aggregate_mr,
            aggregate_map: report.aggregate_map,
            skipped: report.skipped.clone(),
            per_query: report
                .per_query
                .iter()
                .map(|q| QueryExport {
                    query: q.query,
                    label: labels[q.query].clone(),
                    mean_rank: q.mean_rank,
                    average_precision: q.average_precision,
                })
                .collect(),
            pr_curve: report.pr_curve.iter().map(|&(r, p)| [r, p]).collect(),
        }
    }
}

pub fn pr_csv(curve: &[(f64, f64)]) -> String {
    let mut out = String::from("recall,precision\n");
    for &(r, p) in curve {
        out.push_str(&format!("{},{}\n", fmt_num(r), fmt_num(p)));
    }
    out
}

pub fn critical_csv(cs: &CriticalSeries<f64>) -> String {
    let mut out = String::from("value,kind,origin_index\n");
    for ((v, k), o) in cs.values().iter().zip(cs.kinds()).zip(cs.origin_indices()) {
        out.push_str(&format!("{},{},{}\n", fmt_num(*v), k.sign(), o));
    }
    out
}

pub fn matrix_csv(ids: &[String], d: &[Vec<f64>]) -> String {
    let mut out = String::from("id");
    for id in ids {
        out.push(',');
        out.push_str(id);
    }
    out.push('\n');
    for (id, row) in ids.iter().zip(d) {
        out.push_str(id);
        for &v in row {
            out.push(',');
            out.push_str(&fmt_num(v));
        }
        out.push('\n');
    }
    out
}

pub fn curvature_csv(values: &[f64]) -> String {
    let mut out = String::from("sample,curvature\n");
    for (k, v) in values.iter().enumerate() {
        out.push_str(&format!("{k},{}\n", fmt_num(*v)));
    }
    out
}
