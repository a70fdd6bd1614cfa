//! JSON encoding of field elements:
//! `{"field": id, "coeffs": [[..]..], "p_shift": k, "abs_precision": "a/b"}`.
//! `coeffs[j][i]` is the integer coordinate of `u^i Π^j`; the value is divided
//! by `p^p_shift`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{Elem, Field, Val};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElemJson {
    pub field: String,
    pub coeffs: Vec<Vec<String>>,
    #[serde(default)]
    pub p_shift: i64,
    pub abs_precision: Val,
}

impl ElemJson {
    pub fn encode(x: &Elem) -> ElemJson {
        let (coords, shift) = x.coords();
        ElemJson {
            field: x.field().id().to_string(),
            coeffs: coords.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect(),
            p_shift: shift,
            abs_precision: x.precision(),
        }
    }

    pub fn decode(&self, field: &Field) -> Result<Elem> {
        if self.field != field.id() {
            return Err(Error::InvalidInput(format!(
                "element belongs to field {} but {} was expected",
                self.field,
                field.id()
            )));
        }
        let coords = self
            .coeffs
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<BigInt>().map_err(|e| Error::InvalidInput(format!("bad integer `{s}`: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Elem::from_coords(field, &coords, self.p_shift, self.abs_precision)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LocalField;

    #[test]
    fn round_trip() {
        let base = LocalField::unramified(3, 2, 10).unwrap();
        let f = LocalField::ramified_int(&base, &[3, 0, 1], 10).unwrap();
        let x = Elem::unr_generator(&f).add(&Elem::uniformizer(&f)).mul(&Elem::from_i64_frac(&f, 2, 9));
        let j = ElemJson::encode(&x);
        let s = serde_json::to_string(&j).unwrap();
        let back: ElemJson = serde_json::from_str(&s).unwrap();
        let y = back.decode(&f).unwrap();
        assert!(x.eq_at_prec(&y));
        assert_eq!(x.precision(), y.precision());
    }
}
