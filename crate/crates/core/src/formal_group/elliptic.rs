//! Formal group of `y^2 = 4x^3 - g2 x - g3` at the parameter `t = -2x/y`.
//!
//! With `u = 1/x` the curve equation becomes `u = t^2 (1 - (g2/4) u^2 - (g3/4) u^3)`,
//! so `x = t^{-2}(1 + …)` and the invariant differential `dx/y` equals
//! `(1 + t v'/(2v)) dt` where `u = t^2 v`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{FormalModule, GroupKind};
use crate::arith::hensel::hensel_root;
use crate::arith::{Elem, Field, Val};
use crate::series::Series;
use crate::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Units of the CM order, as recognised from the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CmOrder {
    /// `g3 = 0`: CM by `Z[i]`
    GaussianIntegers,
    /// `g2 = 0`: CM by `Z[ζ_3]`
    EisensteinIntegers,
    /// no extra automorphisms recognised
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticModel {
    pub g2: BigRational,
    pub g3: BigRational,
}

impl EllipticModel {
    pub fn new(g2: BigRational, g3: BigRational) -> Result<EllipticModel> {
        let m = EllipticModel { g2, g3 };
        if m.discriminant().is_zero() {
            return Err(Error::InvalidInput("singular curve: g2^3 - 27 g3^2 = 0".into()));
        }
        Ok(m)
    }

    pub fn from_ints(g2: i64, g3: i64) -> Result<EllipticModel> {
        Self::new(rat(g2), rat(g3))
    }

    /// `y^2 = 4x^3 - 4x`, CM by `Z[i]`.
    pub fn lemniscatic() -> EllipticModel {
        EllipticModel { g2: rat(4), g3: rat(0) }
    }

    /// `g2^3 - 27 g3^2`.
    pub fn discriminant(&self) -> BigRational {
        self.g2.pow(3) - rat(27) * self.g3.pow(2)
    }

    pub fn cm_order(&self) -> CmOrder {
        if self.g3.is_zero() {
            CmOrder::GaussianIntegers
        } else if self.g2.is_zero() {
            CmOrder::EisensteinIntegers
        } else {
            CmOrder::Generic
        }
    }

    /// Good reduction at `p`, `p` inert in the CM field (so the reduction
    /// is supersingular).
    pub fn check_supersingular(&self, p: u64) -> Result<()> {
        let pb = BigInt::from(p);
        let integral = |r: &BigRational| !(r.denom() % &pb).is_zero();
        if p == 2 || !integral(&self.g2) || !integral(&self.g3) {
            return Err(Error::InvalidInput(format!("model is not integral with good reduction at {p}")));
        }
        let d = self.discriminant();
        if (d.numer() % &pb).is_zero() {
            return Err(Error::InvalidInput(format!("{p} divides the discriminant")));
        }
        let inert = match self.cm_order() {
            CmOrder::GaussianIntegers => p % 4 == 3,
            CmOrder::EisensteinIntegers => p % 3 == 2,
            CmOrder::Generic => false,
        };
        if !inert {
            return Err(Error::InvalidInput(format!("{p} is not inert in a recognised CM field: not supersingular")));
        }
        Ok(())
    }

    /// `u(t) = 1/x` to order `m`, exact.
    pub fn u_series(&self, m: usize) -> Series<BigRational> {
        let z = rat(0);
        let t2 = Series::monomial(rat(1), 2, m);
        let a = -self.g2.clone() / rat(4);
        let b = -self.g3.clone() / rat(4);
        let mut u = t2.clone();
        // each pass fixes at least two more coefficients
        for _ in 0..m / 2 + 1 {
            let u2 = u.mul(&u);
            let inner = Series::one(&z, m).add(&u2.scale(&a)).add(&u2.mul(&u).scale(&b));
            let next = t2.mul(&inner);
            if next.coeffs() == u.coeffs() {
                break;
            }
            u = next;
        }
        u
    }

    /// `t^2 x(t)` to order `m` (a unit power series), exact.
    pub fn x_scaled(&self, m: usize) -> Series<BigRational> {
        let v = self.u_series(m + 2).shift_down(2).expect("u = t^2 v");
        v.inverse().expect("v(0) = 1")
    }

    /// `λ_E(t)` with `λ_E'(t) dt = dx/y`, to order `m`, exact.
    pub fn log_series(&self, m: usize) -> Series<BigRational> {
        let v = self.u_series(m + 2).shift_down(2).expect("u = t^2 v");
        // ω = 1 + t v' / (2 v)
        let w = v.derivative().div(&v.truncate(m)).expect("v(0) = 1").shift_up(1).scale(&BigRational::new(1.into(), 2.into()));
        let omega = Series::one(&rat(0), m).add(&w.truncate(m));
        omega.truncate(m - 1).integral().expect("division by integers over Q")
    }

    /// Exponential `exp_E = λ_E^{-1}` to order `m`, exact.
    pub fn exp_series(&self, m: usize) -> Series<BigRational> {
        self.log_series(m).reverse().expect("λ_E'(0) = 1")
    }
}

/// Roots of unity of the CM order embedded in `field`, found by Hensel
/// lifting of residue roots of their minimal polynomials.
pub fn cm_units(model: &EllipticModel, field: &Field) -> Result<Vec<Elem>> {
    let one = Elem::one(field);
    let mut units = vec![one.clone(), one.neg()];
    let minpoly: Option<[i64; 3]> = match model.cm_order() {
        CmOrder::GaussianIntegers => Some([1, 0, 1]),
        CmOrder::EisensteinIntegers => Some([1, 1, 1]),
        CmOrder::Generic => None,
    };
    if let Some(mp) = minpoly {
        let coeffs: Vec<Elem> = mp.iter().map(|&c| Elem::from_int(field, c)).collect();
        let roots = residue_roots(field, &coeffs)?;
        if roots.is_empty() {
            return Err(Error::InvalidField("CM units do not embed in the field".into()));
        }
        for r in roots {
            let root = hensel_root(&coeffs, &r)?;
            units.push(root.clone());
            if model.cm_order() == CmOrder::EisensteinIntegers {
                units.push(root.neg());
            }
        }
    }
    Ok(units)
}

/// Lifts of residue-field roots of a monic integral polynomial (`F_q` search).
fn residue_roots(field: &Field, coeffs: &[Elem]) -> Result<Vec<Elem>> {
    let (p, h) = (field.p(), field.h());
    let u = Elem::unr_generator(field);
    let mut out = vec![];
    let total = (p as u128).pow(h as u32);
    for n in 0..total {
        let mut x = Elem::zero(field);
        let mut m = n;
        let mut pw = Elem::one(field);
        for _ in 0..h {
            x = x.add(&pw.mul_int((m % p as u128) as i64));
            m /= p as u128;
            pw = pw.mul(&u);
        }
        let val = crate::arith::poly_eval(coeffs, &x);
        if val.val() >= Val::int(1) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Map an exact rational series into the field.
pub fn embed_series(s: &Series<BigRational>, field: &Field) -> Series<Elem> {
    let z = Elem::zero(field);
    s.map(&z, |c| Elem::from_rational(field, c))
}

/// The root of unity `ε` of the CM order with `[-εp](t) ≡ t^{p^2} mod p`,
/// tested through order `3q`. Exactly one candidate must pass.
pub fn frobenius_epsilon(model: &EllipticModel, field: &Field) -> Result<Elem> {
    let p = field.p();
    model.check_supersingular(p)?;
    if field.h() != 2 || field.e() != 1 {
        return Err(Error::InvalidField("the elliptic path needs the unramified quadratic field".into()));
    }
    let q = field.q() as usize;
    let m = 3 * q;
    let log = embed_series(&model.log_series(m), field);
    let exp = embed_series(&model.exp_series(m), field);
    let mut passing = vec![];
    for eps in cm_units(model, field)? {
        let a = eps.mul_int(-(p as i64));
        let s = exp.compose(&log.scale(&a))?;
        let ok = s.coeffs().iter().enumerate().all(|(i, c)| {
            let d = if i == q { c.sub(&Elem::one(field)) } else { c.clone() };
            d.val() >= Val::int(1)
        });
        if ok {
            passing.push(eps);
        }
    }
    match passing.len() {
        1 => Ok(passing.pop().unwrap()),
        0 => Err(Error::NotComputable("no root of unity gives the Frobenius congruence".into())),
        n => Err(Error::NotComputable(format!("{n} roots of unity give the Frobenius congruence"))),
    }
}

/// Formal group of the curve over `field` (the unramified quadratic
/// extension of `Q_p`), with `π = -εp` and `[π] = exp_E(πλ_E)`.
pub fn elliptic_formal_group(model: &EllipticModel, field: &Field, order: usize) -> Result<(FormalModule, Elem)> {
    let eps = frobenius_epsilon(model, field)?;
    let pi = eps.mul_int(-(field.p() as i64));
    let log = embed_series(&model.log_series(order), field);
    let exp = embed_series(&model.exp_series(order), field);
    let frob = exp.compose(&log.scale(&pi))?;
    let dlog_inv = log.derivative().inverse()?;
    let g = FormalModule { kind: GroupKind::Elliptic, field: field.clone(), pi, q: field.q(), frobenius: frob, log, exp, dlog_inv, model: Some(model.clone()) };
    Ok((g, eps))
}

