//! Named distance functions on raw time series, for evaluation and the CLI.

use std::fmt;
use std::str::FromStr;

use crate::baselines::{cdtw, dtw, dtw_critical};
use crate::dope::{cdope_cost, dope_cost};
use crate::error::{Error, Result};
use crate::matching::wasserstein;
use crate::mergetree::sublevelset_diagram;
use crate::scalar::Real;
use crate::series::{Domain, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Dope,
    Cdope,
    Dtw,
    DtwCritical,
    Cdtw,
    /// Order `p` Wasserstein distance between sublevelset diagrams.
    Wasserstein(f64),
    Bottleneck,
}

impl Method {
    pub const NAMES: [&'static str; 7] = ["dope", "cdope", "dtw", "dtw-crit", "cdtw", "wasserstein", "bottleneck"];

    /// Parses a method name; `p` is only used by `wasserstein`.
    pub fn parse(name: &str, p: f64) -> Result<Self> {
        Ok(match name {
            "dope" => Method::Dope,
            "cdope" => Method::Cdope,
            "dtw" => Method::Dtw,
            "dtw-crit" => Method::DtwCritical,
            "cdtw" => Method::Cdtw,
            "wasserstein" => Method::Wasserstein(p),
            "bottleneck" => Method::Bottleneck,
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "unknown method {name:?}; expected one of {}",
                    Self::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::Dope => "dope",
            Method::Cdope => "cdope",
            Method::Dtw => "dtw",
            Method::DtwCritical => "dtw-crit",
            Method::Cdtw => "cdtw",
            Method::Wasserstein(_) => "wasserstein",
            Method::Bottleneck => "bottleneck",
        }
    }

    /// Domain the method is restricted to, if any.
    pub fn required_domain(&self) -> Option<Domain> {
        match self {
            Method::Dope | Method::Dtw | Method::DtwCritical => Some(Domain::Interval),
            Method::Cdope | Method::Cdtw => Some(Domain::Circle),
            Method::Wasserstein(_) | Method::Bottleneck => None,
        }
    }

    pub fn check_domain(&self, domain: Domain) -> Result<()> {
        match self.required_domain() {
            Some(expected) if expected != domain => Err(Error::WrongDomain {
                expected,
                found: domain,
            }),
            _ => Ok(()),
        }
    }

    pub fn distance<T: Real>(&self, x: &TimeSeries<T>, y: &TimeSeries<T>) -> Result<T> {
        if x.domain() != y.domain() {
            return Err(Error::DomainMismatch(x.domain(), y.domain()));
        }
        self.check_domain(x.domain())?;
        match *self {
            Method::Dope => dope_cost(&x.critical(), &y.critical()),
            Method::Cdope => cdope_cost(&x.critical(), &y.critical()),
            Method::Dtw => dtw(x, y).map(|r| r.0),
            Method::DtwCritical => dtw_critical(x, y).map(|r| r.0),
            Method::Cdtw => cdtw(x, y).map(|r| r.0),
            Method::Wasserstein(p) => diagram_distance(x, y, T::from_f64_lossy(p)),
            Method::Bottleneck => diagram_distance(x, y, T::infinity()),
        }
    }
}

fn diagram_distance<T: Real>(x: &TimeSeries<T>, y: &TimeSeries<T>, p: T) -> Result<T> {
    let dx = sublevelset_diagram(&x.critical())?;
    let dy = sublevelset_diagram(&y.critical())?;
    wasserstein(&dx, &dy, p).map(|r| r.0)
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Wasserstein(p) => write!(f, "wasserstein(p={p})"),
            m => f.write_str(m.name()),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts the plain names, with `wasserstein` meaning `p = 1`.
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in Method::NAMES {
            assert_eq!(Method::parse(name, 2.0).unwrap().name(), name);
        }
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn domain_rules() {
        let a = TimeSeries::interval(vec![0.0, 5.0, 1.0, 4.0, 2.0]).unwrap();
        let b = TimeSeries::interval(vec![0.0, 5.0, 2.0]).unwrap();
        let c = TimeSeries::circle(vec![0.0, 1.0]).unwrap();
        assert_eq!(Method::Dope.distance(&a, &b).unwrap(), 3.0);
        assert!(Method::Cdope.distance(&a, &b).is_err());
        assert!(Method::Dope.distance(&a, &c).is_err());
        assert_eq!(Method::Wasserstein(1.0).distance(&a, &a).unwrap(), 0.0);
        assert_eq!(Method::Bottleneck.distance(&c, &c).unwrap(), 0.0);
    }
}
