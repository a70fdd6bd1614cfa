//! Formal `O_K`-modules: Lubin–Tate groups, the multiplicative group and
//! formal groups of CM elliptic curves, with logarithm, exponential,
//! endomorphisms and the invariant derivation `∂_G = λ'(t)^{-1} d/dt`.

mod bounds;
pub mod elliptic;

use serde::Serialize;

use crate::arith::int::binomial;
use crate::arith::{Elem, Field, Val};
use crate::gamma::Gamma;
use crate::series::Series;
use crate::{Error, Result};

pub use bounds::{coefficient_bounds_check, CoefficientBoundsReport};
pub use elliptic::{elliptic_formal_group, frobenius_epsilon, EllipticModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    LubinTate,
    Multiplicative,
    Elliptic,
}

/// A formal `O_K`-module over the ring of integers of `field`, known through
/// `t`-order `order`.
#[derive(Clone, Debug)]
pub struct FormalModule {
    kind: GroupKind,
    field: Field,
    pi: Elem,
    q: u64,
    frobenius: Series<Elem>,
    log: Series<Elem>,
    exp: Series<Elem>,
    dlog_inv: Series<Elem>,
    model: Option<EllipticModel>,
}

fn pi_powers(pi: &Elem, n: usize) -> Vec<Elem> {
    let mut v = vec![Elem::one(pi.field())];
    for i in 1..n {
        let next = v[i - 1].mul(pi);
        v.push(next);
    }
    v
}

/// Logarithm of the Lubin–Tate group with `[π](T) = πT + T^q`, from the
/// functional equation `λ(πt + t^q) = πλ(t)` solved coefficientwise:
/// `l_m (π - π^m) = Σ_{i >= 1} l_n C(n, i) π^{n-i}` with `n = m - (q-1)i`.
fn lubin_tate_log(pi: &Elem, q: u64, order: usize) -> Result<Series<Elem>> {
    let f = pi.field();
    let zero = Elem::zero(f);
    let pw = pi_powers(pi, order + 1);
    let mut l = vec![zero.clone(); order];
    if order > 1 {
        l[1] = Elem::one(f);
    }
    let step = (q - 1) as usize;
    for m in 2..order {
        let mut acc = zero.clone();
        let mut i = 1;
        while m > step * i {
            let n = m - step * i;
            if n < i {
                break;
            }
            if !l[n].is_zero() {
                let c = Elem::from_bigint(f, &binomial(n as u64, i as u64));
                acc = acc.add(&l[n].mul(&c).mul(&pw[n - i]));
            }
            i += 1;
        }
        if !acc.is_zero() {
            l[m] = acc.div(&pi.sub(&pw[m]))?;
        }
    }
    Ok(Series::new(l, order, &zero))
}

fn log_one_plus(field: &Field, order: usize) -> Series<Elem> {
    let zero = Elem::zero(field);
    let c = (0..order)
        .map(|n| if n == 0 { zero.clone() } else { Elem::from_i64_frac(field, if n % 2 == 1 { 1 } else { -1 }, n as i64) })
        .collect();
    Series::new(c, order, &zero)
}

impl FormalModule {
    /// Lubin–Tate group of `field` for the uniformizer `pi`, with Frobenius
    /// `[π](T) = πT + T^q`.
    pub fn lubin_tate(field: &Field, pi: &Elem, order: usize) -> Result<FormalModule> {
        if pi.val() != Val::frac(1, field.e() as i64) {
            return Err(Error::InvalidInput(format!("{pi} is not a uniformizer")));
        }
        let q = field.q();
        let zero = Elem::zero(field);
        let mut fr = Series::zero(&zero, order);
        fr.set(1, pi.clone());
        fr.set(q as usize, Elem::one(field));
        let log = lubin_tate_log(pi, q, order)?;
        Self::from_log(GroupKind::LubinTate, pi.clone(), q, fr, log)
    }

    /// The multiplicative group `X + Y + XY` over `Q_p`, with `[p](T) = (1+T)^p - 1`
    /// and `λ = log(1 + t)`.
    pub fn multiplicative(field: &Field, order: usize) -> Result<FormalModule> {
        if field.degree() != 1 {
            return Err(Error::InvalidInput("the multiplicative group is built over Q_p".into()));
        }
        let p = field.p();
        let zero = Elem::zero(field);
        let log = log_one_plus(field, order);
        let fr_c = (0..order).map(|n| if n == 0 { zero.clone() } else { Elem::from_bigint(field, &binomial(p, n as u64)) }).collect();
        let fr = Series::new(fr_c, order, &zero);
        let pi = Elem::from_int(field, p as i64);
        Self::from_log(GroupKind::Multiplicative, pi, p, fr, log)
    }

    pub(crate) fn from_log(kind: GroupKind, pi: Elem, q: u64, frobenius: Series<Elem>, log: Series<Elem>) -> Result<FormalModule> {
        let exp = log.reverse()?;
        let dlog_inv = log.derivative().inverse()?;
        Ok(FormalModule { kind, field: pi.field().clone(), pi, q, frobenius, log, exp, dlog_inv, model: None })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }
    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn pi(&self) -> &Elem {
        &self.pi
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn order(&self) -> usize {
        self.log.order()
    }
    /// `[π](T)` through the order.
    pub fn frobenius(&self) -> &Series<Elem> {
        &self.frobenius
    }
    pub fn log(&self) -> &Series<Elem> {
        &self.log
    }
    pub fn exp(&self) -> &Series<Elem> {
        &self.exp
    }
    /// `λ'(t)^{-1}`, known to order `M - 1`.
    pub fn dlog_inv(&self) -> &Series<Elem> {
        &self.dlog_inv
    }

    /// The curve, for the elliptic kind.
    pub fn model(&self) -> Option<&EllipticModel> {
        self.model.as_ref()
    }

    pub fn gamma(&self) -> Result<Gamma> {
        Gamma::new(self.field.p(), self.field.e() as u64, self.field.h() as u32)
    }

    /// `λ` to an arbitrary order, recomputed from its defining data when the
    /// stored order is too small.
    pub fn log_to(&self, order: usize) -> Result<Series<Elem>> {
        if order <= self.order() {
            return Ok(self.log.truncate(order));
        }
        match self.kind {
            GroupKind::LubinTate => lubin_tate_log(&self.pi, self.q, order),
            GroupKind::Multiplicative => Ok(log_one_plus(&self.field, order)),
            GroupKind::Elliptic => {
                let m = self.model.as_ref().ok_or_else(|| Error::InvalidInput("elliptic module without a curve".into()))?;
                Ok(elliptic::embed_series(&m.log_series(order), &self.field))
            }
        }
    }

    /// `λ'(t)^{-1}` to order `order`.
    pub fn dlog_inv_to(&self, order: usize) -> Result<Series<Elem>> {
        if order <= self.dlog_inv.order() {
            return Ok(self.dlog_inv.truncate(order));
        }
        self.log_to(order + 1)?.derivative().inverse()
    }

    /// The same module with coefficients pushed into an extension field.
    pub fn base_change(&self, field: &Field) -> Result<FormalModule> {
        let z = Elem::zero(field);
        let push = |s: &Series<Elem>| -> Result<Series<Elem>> {
            let c = s.coeffs().iter().map(|x| x.embed(field)).collect::<Result<Vec<_>>>()?;
            Ok(Series::new(c, s.order(), &z))
        };
        Ok(FormalModule {
            kind: self.kind,
            field: field.clone(),
            pi: self.pi.embed(field)?,
            q: self.q,
            frobenius: push(&self.frobenius)?,
            log: push(&self.log)?,
            exp: push(&self.exp)?,
            dlog_inv: push(&self.dlog_inv)?,
            model: self.model.clone(),
        })
    }

    pub fn zero_elem(&self) -> Elem {
        Elem::zero(&self.field)
    }

    /// `[a](t) = exp_G(a λ(t))`.
    pub fn endo(&self, a: &Elem) -> Result<Series<Elem>> {
        self.exp.compose(&self.log.scale(a))
    }

    pub fn endo_int(&self, a: i64) -> Result<Series<Elem>> {
        self.endo(&Elem::from_int(&self.field, a))
    }

    /// `[π^N](t)`; the Frobenius composed with itself (`N >= 0`).
    pub fn frobenius_power(&self, n: u32) -> Result<Series<Elem>> {
        let mut acc = Series::var(&self.zero_elem(), self.order());
        for _ in 0..n {
            acc = self.frobenius.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `f(t) ⊕ g(t) = exp_G(λ(f) + λ(g))` for series without constant term.
    pub fn add_series(&self, f: &Series<Elem>, g: &Series<Elem>) -> Result<Series<Elem>> {
        let s = self.log.compose(f)?.add(&self.log.compose(g)?);
        self.exp.compose(&s)
    }

    /// The group law `F(X, Y)` modulo `(X^m, Y^m)`, as a series in `X` whose
    /// coefficients are series in `Y`.
    pub fn group_law(&self, m: usize) -> Result<Series<Series<Elem>>> {
        if 2 * m > self.order() + 1 {
            return Err(Error::InvalidInput(format!("group law to order {m} needs series order >= {}", 2 * m - 1)));
        }
        let zero = self.zero_elem();
        let zy = Series::zero(&zero, m);
        // λ(X) + λ(Y) as a bivariate series
        let mut lc: Vec<Series<Elem>> = Vec::with_capacity(m);
        lc.push(self.log.truncate(m));
        for i in 1..m {
            lc.push(Series::constant(self.log.coeff(i).clone(), m));
        }
        let l = Series::new(lc, m, &zy);
        // exp evaluated by Horner; terms of total degree >= 2m - 1 vanish
        let n = (2 * m - 1).min(self.exp.order());
        let mut acc = Series::zero(&zy, m);
        for k in (0..n).rev() {
            acc = acc.mul(&l).add(&Series::constant(Series::constant(self.exp.coeff(k).clone(), m), m));
        }
        Ok(acc)
    }

    /// `∂_G^n f`; each application lowers the order by one.
    pub fn invariant_derive(&self, f: &Series<Elem>, n: usize) -> Series<Elem> {
        let mut g = f.clone();
        for _ in 0..n {
            g = g.derivative().mul(&self.dlog_inv);
        }
        g
    }

    /// `∂_G^n f |_{t=0}` for `n = 0..=nmax`.
    pub fn derive_at_zero(&self, f: &Series<Elem>, nmax: usize) -> Vec<Elem> {
        let mut out = Vec::with_capacity(nmax + 1);
        let mut g = f.clone();
        for n in 0..=nmax {
            out.push(if g.order() > 0 { g.coeff(0).clone() } else { Elem::zero_with_prec(&self.field, Val::int(0)) });
            if n < nmax {
                g = g.derivative().mul(&self.dlog_inv);
            }
        }
        out
    }

    /// Smallest valuation among the coefficients of the group law, `[a]` for
    /// the listed `a`, and the Frobenius; nonnegative means integral.
    pub fn integrality(&self, m: usize, endos: &[Elem]) -> Result<IntegralityReport> {
        let f = self.group_law(m)?;
        let mut min_group = Val::Inf;
        for c in f.coeffs() {
            for x in c.coeffs() {
                min_group = min_group.min(x.val());
            }
        }
        let mut min_endo = Val::Inf;
        for a in endos {
            for x in self.endo(a)?.coeffs() {
                min_endo = min_endo.min(x.val());
            }
        }
        let min_frob = self.frobenius.coeffs().iter().map(|x| x.val()).min().unwrap_or(Val::Inf);
        Ok(IntegralityReport {
            group_law_order: m,
            min_group_law: min_group,
            min_endomorphisms: min_endo,
            min_frobenius: min_frob,
            integral: min_group >= Val::zero() && min_endo >= Val::zero() && min_frob >= Val::zero(),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityReport {
    pub group_law_order: usize,
    pub min_group_law: Val,
    pub min_endomorphisms: Val,
    pub min_frobenius: Val,
    pub integral: bool,
}

/// Coefficients as JSON-friendly strings, for `group show`.
pub fn series_strings(s: &Series<Elem>) -> Vec<String> {
    s.coeffs().iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests;
