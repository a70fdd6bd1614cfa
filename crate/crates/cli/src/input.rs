//! JSON inputs for `integrate` and `mahler`.
//!
//! A scalar is an integer, a rational string `"a/b"`, or a full element
//! encoding. A distribution is `{"coeffs": [..]}` (the series φ) or
//! `{"monomial": k}`. A function is `{"level": N, "pieces": [{"center": a,
//! "coeffs": [..]}, ..]}` with each piece a polynomial in `x - center` on
//! `center + π^N O_K`, or `{"level": N, "polynomial": [..]}` for one
//! polynomial on all of `Z_p` (multiplicative group only).

use std::path::Path;

use ltfourier::arith::json::ElemJson;
use ltfourier::arith::{Elem, Field};
use ltfourier::formal_group::FormalModule;
use ltfourier::fourier::{Distribution, LocallyAnalyticFunction};
use ltfourier::series::Series;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
    Elem(ElemJson),
}

impl Scalar {
    pub fn to_elem(&self, field: &Field) -> Result<Elem, CliError> {
        match self {
            Scalar::Int(n) => Ok(Elem::from_int(field, *n)),
            Scalar::Text(s) => {
                let bad = || CliError::Input(format!("`{s}` is not an integer or a fraction a/b"));
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim().parse::<i64>().map_err(|_| bad())?, d.trim().parse::<i64>().map_err(|_| bad())?),
                    None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
                };
                if d == 0 {
                    return Err(bad());
                }
                Ok(Elem::from_i64_frac(field, n, d))
            }
            Scalar::Elem(e) => Ok(e.decode(field)?),
        }
    }
}

fn elems(xs: &[Scalar], field: &Field) -> Result<Vec<Elem>, CliError> {
    xs.iter().map(|x| x.to_elem(field)).collect()
}

#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum DistributionJson {
    Series { coeffs: Vec<Scalar> },
    Monomial { monomial: usize },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceJson {
    pub center: Scalar,
    pub coeffs: Vec<Scalar>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FunctionJson {
    Pieces { level: u32, pieces: Vec<PieceJson> },
    Polynomial { level: u32, polynomial: Vec<Scalar> },
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl DistributionJson {
    pub fn build(&self, g: &FormalModule) -> Result<Distribution, CliError> {
        match self {
            DistributionJson::Monomial { monomial } => Ok(Distribution::monomial(g, *monomial)),
            DistributionJson::Series { coeffs } => {
                let f = g.field();
                let c = elems(coeffs, f)?;
                let order = c.len().max(1);
                Ok(Distribution::new(g, Series::new(c, order, &Elem::zero(f))))
            }
        }
    }
}

impl FunctionJson {
    pub fn build(&self, field: &Field) -> Result<LocallyAnalyticFunction, CliError> {
        match self {
            FunctionJson::Pieces { level, pieces } => {
                if *level == 0 {
                    return Err(CliError::Input("function level must be positive".into()));
                }
                let mut f = LocallyAnalyticFunction::new(*level);
                for p in pieces {
                    f = f.with_piece(p.center.to_elem(field)?, elems(&p.coeffs, field)?);
                }
                Ok(f)
            }
            FunctionJson::Polynomial { level, polynomial } => Ok(LocallyAnalyticFunction::from_polynomial_qp(field, *level, &elems(polynomial, field)?)?),
        }
    }
}
