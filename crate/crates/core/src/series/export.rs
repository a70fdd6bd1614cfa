//! JSON (`{"order": M, "coeffs": [element …]}`) and CSV export of series.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::Series;
use crate::arith::json::ElemJson;
use crate::arith::{Elem, Field};
use crate::Result;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<ElemJson>,
}

impl SeriesJson {
    pub fn encode(s: &Series<Elem>) -> SeriesJson {
        SeriesJson { order: s.order(), coeffs: s.coeffs().iter().map(ElemJson::encode).collect() }
    }

    pub fn decode(&self, field: &Field) -> Result<Series<Elem>> {
        let c = self.coeffs.iter().map(|e| e.decode(field)).collect::<Result<Vec<_>>>()?;
        Ok(Series::new(c, self.order, &Elem::zero(field)))
    }
}

/// CSV with header `index,valuation,abs_precision`; zero coefficients are
/// reported with valuation `inf`.
pub fn valuation_csv(s: &Series<Elem>) -> String {
    let mut out = String::from("index,valuation,abs_precision\n");
    for (i, c) in s.coeffs().iter().enumerate() {
        writeln!(out, "{i},{},{}", c.val(), c.precision()).unwrap();
    }
    out
}
