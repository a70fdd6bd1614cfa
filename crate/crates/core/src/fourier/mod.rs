//! Distributions on `O_K` given by power series, their integrals over cosets
//! `a + π^N O_K`, the polynomials `P_n`, and the estimates relating them.
//!
//! Values involving the period `ϖ` are kept as [`PeriodGraded`] sums. For
//! the multiplicative group the period is taken to be `1`.

mod bounds;
mod mahler;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::int::{binomial, factorial};
use crate::arith::json::ElemJson;
use crate::arith::{Elem, Field, Val};
use crate::formal_group::{FormalModule, GroupKind};
use crate::report::{BoundCheck, Verdict};
use crate::series::Series;
use crate::trace::{div_factorial, TorsionLevel};
use crate::{Error, Result};

pub use bounds::{pn_norm_check, verify_main_bounds, MainBoundEntry, MainBoundReport, NormPhi, PnNormEntry, PnNormReport};
pub use mahler::{amice_basis_check, amice_scale, mahler_coefficients, AmiceNorm, AmiceReport, MahlerExpansion, Reconstruction};

/// A finite sum `Σ_j c_j ϖ^j` with `v(ϖ) = s`.
#[derive(Clone, Debug)]
pub struct PeriodGraded {
    field: Field,
    s: Ratio<i64>,
    trivial: bool,
    comps: BTreeMap<i64, Elem>,
}

impl PeriodGraded {
    /// `trivial` identifies all grades (the period is `1`).
    pub fn zero(field: &Field, s: Ratio<i64>, trivial: bool) -> PeriodGraded {
        PeriodGraded { field: field.clone(), s, trivial, comps: BTreeMap::new() }
    }

    pub fn for_group(g: &FormalModule) -> Result<PeriodGraded> {
        let trivial = g.kind() == GroupKind::Multiplicative;
        let s = if trivial { Ratio::zero() } else { g.gamma()?.s() };
        Ok(Self::zero(g.field(), s, trivial))
    }

    pub fn s(&self) -> Ratio<i64> {
        self.s
    }

    pub fn is_trivial(&self) -> bool {
        self.trivial
    }

    /// Adds `c ϖ^j`. Exact zeros are not stored.
    pub fn add_term(&mut self, j: i64, c: &Elem) {
        if c.is_zero() && c.precision().is_inf() {
            return;
        }
        let j = if self.trivial { 0 } else { j };
        let e = self.comps.entry(j).or_insert_with(|| Elem::zero(c.field()));
        *e = e.add(c);
    }

    pub fn add(&self, other: &PeriodGraded) -> PeriodGraded {
        let mut out = self.clone();
        for (j, c) in &other.comps {
            out.add_term(*j, c);
        }
        out
    }

    pub fn sub(&self, other: &PeriodGraded) -> PeriodGraded {
        let mut out = self.clone();
        for (j, c) in &other.comps {
            out.add_term(*j, &c.neg());
        }
        out
    }

    pub fn scale(&self, x: &Elem) -> PeriodGraded {
        let mut out = Self::zero(&self.field, self.s, self.trivial);
        for (j, c) in &self.comps {
            out.add_term(*j, &c.mul(x));
        }
        out
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &Elem)> {
        self.comps.iter().map(|(j, c)| (*j, c))
    }

    pub fn component(&self, j: i64) -> Elem {
        self.comps.get(&j).cloned().unwrap_or_else(|| Elem::zero(&self.field))
    }

    /// The value when only grade 0 occurs.
    pub fn plain(&self) -> Option<Elem> {
        if self.comps.keys().any(|&j| j != 0) {
            return None;
        }
        Some(self.component(0))
    }

    fn grade_shift(&self, j: i64) -> Val {
        Val::Fin(self.s * j)
    }

    /// `min_j (v(c_j) + j s)`; `Inf` when every component is zero at its
    /// precision.
    pub fn valuation_lower_bound(&self) -> Val {
        self.comps.iter().map(|(j, c)| c.val() + self.grade_shift(*j)).fold(Val::Inf, Val::min)
    }

    /// `min_j (prec(c_j) + j s)`.
    pub fn precision(&self) -> Val {
        self.comps.iter().map(|(j, c)| c.precision() + self.grade_shift(*j)).fold(Val::Inf, Val::min)
    }

    /// The valuation, when one nonzero component strictly dominates.
    pub fn exact_valuation(&self) -> Option<Val> {
        let mut vals: Vec<Val> = self.comps.iter().filter(|(_, c)| !c.is_zero()).map(|(j, c)| c.val() + self.grade_shift(*j)).collect();
        vals.sort();
        match vals.as_slice() {
            [] => None,
            [v] => (*v < self.precision()).then_some(*v),
            [v, w, ..] => (v < w && *v < self.precision()).then_some(*v),
        }
    }

    /// Judges `v(value) >= claimed`. Without a dominant component only the
    /// ultrametric lower bound is available, so a failure is inconclusive.
    pub fn check(&self, claimed: Val) -> BoundCheck {
        let prec = self.precision();
        if let Some(v) = self.exact_valuation() {
            return BoundCheck::judge(v, prec, claimed);
        }
        let lb = self.valuation_lower_bound();
        if lb >= claimed {
            return BoundCheck::judge(lb, prec, claimed);
        }
        BoundCheck { claimed, achieved: lb, residual_precision: prec, verdict: Verdict::Inconclusive }
    }

    /// Componentwise agreement to absolute precision `v`.
    pub fn agrees_with(&self, other: &PeriodGraded, v: Val) -> BoundCheck {
        let d = self.sub(other);
        let achieved = d.comps.values().map(|c| c.val()).fold(Val::Inf, Val::min);
        let prec = d.comps.values().map(|c| c.precision()).fold(Val::Inf, Val::min);
        BoundCheck::judge(achieved, prec, v)
    }

    pub fn to_json(&self) -> PeriodGradedJson {
        PeriodGradedJson {
            s: Val::Fin(self.s),
            valuation_lower_bound: self.valuation_lower_bound(),
            exact_valuation: self.exact_valuation(),
            components: self
                .comps
                .iter()
                .map(|(j, c)| GradedComponentJson { grade: *j, valuation: c.val(), value: ElemJson::encode(c) })
                .collect(),
        }
    }
}

/// `ϖ^{q-1} = ρ (1 + ε)` with `v(ε) >= δ`. The `t^q` coefficient of the
/// integral series `exp(ϖλ(t))` is `ϖλ_q + ϖ^q/q!` when `λ` has no terms of
/// degree strictly between `1` and `q`, and both summands have valuation
/// `s + v(λ_q) < 0`, so `ρ = -q! λ_q` and `δ = -(s + v(λ_q))`.
#[derive(Clone, Debug)]
pub struct PeriodRelation {
    pub q1: i64,
    pub rho: Elem,
    pub delta: Val,
}

impl PeriodRelation {
    /// `None` for the multiplicative group and whenever the argument above
    /// does not apply.
    pub fn for_group(g: &FormalModule) -> Result<Option<PeriodRelation>> {
        if g.kind() == GroupKind::Multiplicative {
            return Ok(None);
        }
        let q = g.q() as usize;
        let log = g.log_to(q + 1)?;
        if (2..q).any(|i| !log.coeff(i).is_zero()) {
            return Ok(None);
        }
        let lq = log.coeff(q);
        if lq.is_zero() {
            return Ok(None);
        }
        let delta = -(Val::Fin(g.gamma()?.s()) + lq.val());
        if delta <= Val::zero() {
            return Ok(None);
        }
        let rho = Elem::from_bigint(g.field(), &factorial(q as u64)).mul(lq).neg();
        Ok(Some(PeriodRelation { q1: q as i64 - 1, rho, delta }))
    }
}

impl PeriodGraded {
    /// Lower bound and exact valuation (when determined) after rewriting
    /// every grade `j = r + m(q-1)`, `0 <= r < q-1`, as `ρ^m ϖ^r` up to a
    /// relative error of valuation `δ`.
    pub fn reduced_valuation(&self, rel: &PeriodRelation) -> Result<(Val, Option<Val>)> {
        let mut main: BTreeMap<i64, Elem> = BTreeMap::new();
        let mut err: BTreeMap<i64, Val> = BTreeMap::new();
        for (j, c) in &self.comps {
            let r = j.rem_euclid(rel.q1);
            let m = (j - r) / rel.q1;
            let t = c.mul(&rel.rho.pow_i64(m)?);
            let bound = if m == 0 { Val::Inf } else { t.val() + rel.delta };
            let slot = main.entry(r).or_insert_with(|| Elem::zero(&self.field));
            *slot = slot.add(&t);
            let eb = err.entry(r).or_insert(Val::Inf);
            *eb = (*eb).min(bound);
        }
        let mut lower = Val::Inf;
        let mut known = vec![];
        let mut unknown = Val::Inf;
        for (r, d) in &main {
            let floor = d.precision().min(err[r]) + self.grade_shift(*r);
            let v = d.val() + self.grade_shift(*r);
            lower = lower.min(v.min(floor));
            if !d.is_zero() && v < floor {
                known.push(v);
            } else {
                unknown = unknown.min(floor);
            }
        }
        known.sort();
        let exact = match known.as_slice() {
            [v] => (*v < unknown).then_some(*v),
            [v, w, ..] => (v < w && *v < unknown).then_some(*v),
            [] => None,
        };
        Ok((lower, exact))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedComponentJson {
    pub grade: i64,
    pub valuation: Val,
    pub value: ElemJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodGradedJson {
    pub s: Val,
    pub valuation_lower_bound: Val,
    pub exact_valuation: Option<Val>,
    pub components: Vec<GradedComponentJson>,
}

/// The distribution `μ_φ` attached to a power series `φ`.
#[derive(Clone, Debug)]
pub struct Distribution {
    group: FormalModule,
    phi: Series<Elem>,
    exact: bool,
}

impl Distribution {
    /// A truncated series; coefficients beyond its order are unknown.
    pub fn new(group: &FormalModule, phi: Series<Elem>) -> Distribution {
        Distribution { group: group.clone(), phi, exact: false }
    }

    /// A polynomial `φ`, known exactly.
    pub fn polynomial(group: &FormalModule, coeffs: Vec<Elem>) -> Distribution {
        let zero = group.zero_elem();
        let n = coeffs.len().max(1);
        Distribution { group: group.clone(), phi: Series::new(coeffs, n, &zero), exact: true }
    }

    /// `φ = t^k`.
    pub fn monomial(group: &FormalModule, k: usize) -> Distribution {
        let f = group.field();
        let mut c = vec![Elem::zero(f); k + 1];
        c[k] = Elem::one(f);
        Self::polynomial(group, c)
    }

    /// The Dirac measure at `a >= 0` on the multiplicative group, `(1 + t)^a`.
    pub fn dirac(group: &FormalModule, a: u64) -> Result<Distribution> {
        if group.kind() != GroupKind::Multiplicative {
            return Err(Error::InvalidInput("Dirac measures as (1+t)^a need the multiplicative group".into()));
        }
        let f = group.field();
        let c = (0..=a).map(|i| Elem::from_bigint(f, &binomial(a, i))).collect();
        Ok(Self::polynomial(group, c))
    }

    pub fn group(&self) -> &FormalModule {
        &self.group
    }

    pub fn phi(&self) -> &Series<Elem> {
        &self.phi
    }

    pub fn is_polynomial(&self) -> bool {
        self.exact
    }

    /// The series padded to `order` when it is a polynomial.
    fn phi_to(&self, order: usize) -> Series<Elem> {
        if self.exact && self.phi.order() < order {
            self.phi.extend(order)
        } else {
            self.phi.clone()
        }
    }

    /// Smallest known coefficient valuation, used as the bound on unknown
    /// coefficients; `Inf` for polynomials.
    pub fn coefficient_floor(&self) -> Val {
        if self.exact {
            return Val::Inf;
        }
        self.phi.coeffs().iter().map(|c| c.val().min(c.precision())).fold(Val::Inf, Val::min).min(Val::zero())
    }

    /// Convolution, which is the product of the series.
    pub fn convolve(&self, other: &Distribution) -> Result<Distribution> {
        if self.group.field().id() != other.group.field().id() || self.group.kind() != other.group.kind() {
            return Err(Error::InvalidInput("convolution needs distributions on the same group".into()));
        }
        if self.exact && other.exact {
            let n = self.phi.order() + other.phi.order() - 1;
            let prod = self.phi.extend(n).mul(&other.phi.extend(n));
            return Ok(Distribution { group: self.group.clone(), phi: prod, exact: true });
        }
        let n = match (self.exact, other.exact) {
            (true, false) => other.phi.order(),
            (false, true) => self.phi.order(),
            _ => self.phi.order().min(other.phi.order()),
        };
        let prod = self.phi_to(n).truncate(n).mul(&other.phi_to(n).truncate(n));
        Ok(Distribution { group: self.group.clone(), phi: prod, exact: false })
    }

    /// `Σ_{t_N} (∂_G^l φ)(t_N)` for `l <= l_max`.
    pub fn moments(&self, lv: &TorsionLevel, l_max: usize) -> Result<Vec<Elem>> {
        let g = lv.group();
        if g.order() <= l_max {
            return Err(Error::Precision(format!("group order {} too small for {l_max} derivatives", g.order())));
        }
        match g.kind() {
            GroupKind::Elliptic => {
                let mut d = self.phi.clone();
                let mut out = Vec::with_capacity(l_max + 1);
                for _ in 0..=l_max {
                    out.push(lv.root_sum(&d));
                    d = lv.derive(&d);
                }
                Ok(out)
            }
            _ => {
                let s = if self.exact {
                    lv.torsion_sum_poly(self.phi.coeffs(), l_max + 1)?
                } else {
                    lv.torsion_sum(&self.phi, l_max + 1)?
                };
                Ok(g.derive_at_zero(&s, l_max))
            }
        }
    }

    /// `(1 + t)^{-a} φ` on the multiplicative group for an integer `a <= 0`.
    fn twist_nonpositive(&self, a: u64) -> Result<Distribution> {
        self.convolve(&Self::dirac(&self.group, a)?)
    }
}

/// Coefficients of `f` in `(x - b)` from its coefficients in `(x - a)`,
/// where `shift = b - a`.
pub fn recenter(f: &[Elem], shift: &Elem) -> Vec<Elem> {
    let n = f.len();
    let mut pows = vec![Elem::one(shift.field())];
    for i in 1..n {
        pows.push(pows[i - 1].mul(shift));
    }
    (0..n)
        .map(|l| {
            let mut acc = Elem::zero(shift.field());
            for (m, c) in f.iter().enumerate().skip(l) {
                if !c.is_zero() {
                    let b = Elem::from_bigint(shift.field(), &binomial(m as u64, l as u64));
                    acc = acc.add(&c.mul(&b).mul(&pows[m - l]));
                }
            }
            acc
        })
        .collect()
}

fn q_pow_inv(g: &FormalModule, level: u32) -> Elem {
    let f = g.field();
    Elem::one(f).mul_p_pow(-(f.h() as i64) * level as i64)
}

/// Integer value of an element of `Q_p`, if it has one.
fn integer_value(a: &Elem) -> Option<BigInt> {
    if a.is_zero() {
        return Some(BigInt::zero());
    }
    let r = a.signed_rational()?;
    r.is_integer().then(|| r.to_integer())
}

/// Whether `a ∈ π^N O_K` at the working precision.
fn in_level_ideal(a: &Elem, level: u32) -> bool {
    a.is_zero() || a.val() >= Val::frac(level as i64, a.field().e() as i64)
}

/// `∫_{a+π^N O_K} f dμ` for `a ∈ π^N O_K` from the moments
/// `M_l = Σ_{t_N} (∂^l φ)(t_N)`: the twist by `exp(-aϖλ)` is trivial on
/// the torsion points, so
/// `∫ (x-a)^m dμ = q^{-N} Σ_{j<=m} C(m,j) (-a)^j ϖ^{j-m} M_{m-j}`.
pub fn coset_from_moments(g: &FormalModule, level: u32, a: &Elem, f: &[Elem], moments: &[Elem]) -> Result<PeriodGraded> {
    if moments.len() < f.len() {
        return Err(Error::InvalidInput("too few moments for the polynomial degree".into()));
    }
    let field = g.field();
    let mut out = PeriodGraded::for_group(g)?;
    let qn = q_pow_inv(g, level);
    let na = a.neg();
    let mut na_pow = vec![Elem::one(field)];
    for j in 1..f.len() {
        na_pow.push(na_pow[j - 1].mul(&na));
    }
    for (m, c) in f.iter().enumerate() {
        // coefficients of f are taken as given
        if c.is_zero() {
            continue;
        }
        for j in 0..=m {
            if j > 0 && a.is_zero() {
                break;
            }
            let b = Elem::from_bigint(field, &binomial(m as u64, j as u64));
            let term = c.mul(&b).mul(&na_pow[j]).mul(&moments[m - j]).mul(&qn);
            out.add_term(j as i64 - m as i64, &term);
        }
    }
    Ok(out)
}

/// `∫_{a+π^N O_K} f dμ_φ` for `f` given by its coefficients in `(x - a)`.
///
/// On the multiplicative group every coset is reachable: the twist
/// `exp(-aϖλ)` is `(1+t)^{-a}`, made polynomial by moving `a` to a
/// nonpositive representative. Otherwise `a` must lie in `π^N O_K`; the
/// other cosets need the values of the period characters on torsion points.
pub fn coset_integral(lv: &TorsionLevel, mu: &Distribution, a: &Elem, f: &[Elem]) -> Result<PeriodGraded> {
    let g = lv.group();
    let level = lv.level();
    if f.is_empty() {
        return PeriodGraded::for_group(g);
    }
    let deg = f.len() - 1;
    if g.kind() == GroupKind::Multiplicative {
        let ai = integer_value(a).ok_or_else(|| Error::InvalidInput("coset representatives on the multiplicative group must be integers".into()))?;
        let pn = BigInt::from(g.field().p()).pow(level);
        let r = num_integer::Integer::mod_floor(&ai, &pn);
        // nonpositive representative b = a - r' with b ≡ a
        let b = if r.is_zero() { BigInt::zero() } else { r - &pn };
        let shift = Elem::from_bigint(g.field(), &(&b - &ai));
        let fb = recenter(f, &shift);
        let k: u64 = num_traits::ToPrimitive::to_u64(&(-b)).ok_or_else(|| Error::InvalidInput("representative too large".into()))?;
        let twisted = mu.twist_nonpositive(k)?;
        let m = twisted.moments(lv, deg)?;
        let zero = Elem::zero(g.field());
        return coset_from_moments(g, level, &zero, &fb, &m);
    }
    if !in_level_ideal(a, level) {
        return Err(Error::NotComputable(format!(
            "coset {a} is not in π^{level} O_K; its integral needs the period characters on torsion points"
        )));
    }
    let m = mu.moments(lv, deg)?;
    coset_from_moments(g, level, a, f, &m)
}

/// `∫_{O_K} f dμ_φ = f(ϖ^{-1} ∂_G) φ |_{t=0}` for `f = Σ f_i x^i`.
pub fn integral_polynomial(mu: &Distribution, f: &[Elem]) -> Result<PeriodGraded> {
    let g = mu.group();
    let mut out = PeriodGraded::for_group(g)?;
    if f.is_empty() {
        return Ok(out);
    }
    let deg = f.len() - 1;
    let phi = mu.phi_to(deg + 1);
    if phi.order() <= deg {
        return Err(Error::Precision(format!("series order {} too small for degree {deg}", phi.order())));
    }
    let d = g.derive_at_zero(&phi, deg);
    for (i, c) in f.iter().enumerate() {
        if !c.is_zero() {
            out.add_term(-(i as i64), &c.mul(&d[i]));
        }
    }
    Ok(out)
}

/// `∫_{O_K} P_k(xϖ) dμ_φ = Σ_i p_{k,i} ∂_G^i φ |_0`, a plain field element.
pub fn integral_pn(mu: &Distribution, pk: &[Elem]) -> Result<Elem> {
    let g = mu.group();
    let deg = pk.len().saturating_sub(1);
    let phi = mu.phi_to(deg + 1);
    let d = g.derive_at_zero(&phi, deg);
    Ok(pk.iter().zip(&d).fold(Elem::zero(g.field()), |acc, (c, x)| acc.add(&c.mul(x))))
}

/// Rows `n = 0..=n_max` of `P_n(X) = Σ_k p_{n,k} X^k`, with
/// `p_{n,k} = [t^n] λ(t)^k / k!`.
pub fn pn_table(g: &FormalModule, n_max: usize) -> Result<Vec<Vec<Elem>>> {
    let f = g.field();
    let lam = g.log_to(n_max + 1)?;
    let mut rows: Vec<Vec<Elem>> = (0..=n_max).map(|n| Vec::with_capacity(n + 1)).collect();
    let mut pow = Series::one(&Elem::zero(f), n_max + 1);
    for k in 0..=n_max {
        for (n, row) in rows.iter_mut().enumerate() {
            if n >= k {
                row.push(div_factorial(pow.coeff(n), k as u64)?);
            }
        }
        pow = pow.mul(&lam);
    }
    Ok(rows)
}

pub fn pn_polynomial(g: &FormalModule, n: usize) -> Result<Vec<Elem>> {
    Ok(pn_table(g, n)?.pop().unwrap_or_default())
}

/// `log(1 + t)` over `Q`.
pub fn log_one_plus_rational(order: usize) -> Series<BigRational> {
    let zero = BigRational::zero();
    let c = (0..order)
        .map(|n| if n == 0 { zero.clone() } else { BigRational::new(BigInt::from(if n % 2 == 1 { 1 } else { -1 }), BigInt::from(n)) })
        .collect();
    Series::new(c, order, &zero)
}

/// `P_n` over `Q` for a rational logarithm.
pub fn pn_table_rational(log: &Series<BigRational>, n_max: usize) -> Vec<Vec<BigRational>> {
    let zero = BigRational::zero();
    let lam = log.truncate(n_max + 1);
    let mut rows: Vec<Vec<BigRational>> = (0..=n_max).map(|n| Vec::with_capacity(n + 1)).collect();
    let mut pow = Series::one(&zero, n_max + 1);
    for k in 0..=n_max {
        let kf = BigRational::from_integer(factorial(k as u64));
        for (n, row) in rows.iter_mut().enumerate() {
            if n >= k {
                row.push(pow.coeff(n) / &kf);
            }
        }
        pow = pow.mul(&lam);
    }
    rows
}

/// Coefficients of `X(X-1)…(X-n+1)/n!`.
pub fn binomial_polynomial(n: usize) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    for i in 0..n {
        let mut next = vec![BigRational::zero(); c.len() + 1];
        for (k, x) in c.iter().enumerate() {
            next[k + 1] += x;
            next[k] -= x * BigRational::from_integer(BigInt::from(i));
        }
        c = next;
    }
    let nf = BigRational::from_integer(factorial(n as u64));
    c.into_iter().map(|x| x / &nf).collect()
}

/// A function on `O_K` that is polynomial in `(x - a)` on finitely many
/// cosets `a + π^N O_K` and zero on the others.
#[derive(Clone, Debug)]
pub struct LocallyAnalyticFunction {
    level: u32,
    pieces: Vec<(Elem, Vec<Elem>)>,
}

impl LocallyAnalyticFunction {
    pub fn new(level: u32) -> LocallyAnalyticFunction {
        LocallyAnalyticFunction { level, pieces: vec![] }
    }

    pub fn with_piece(mut self, center: Elem, coeffs: Vec<Elem>) -> LocallyAnalyticFunction {
        self.pieces.push((center, coeffs));
        self
    }

    /// A global polynomial `Σ f_i x^i` on `Z_p`, cut into the cosets
    /// `a + p^N Z_p`, `0 <= a < p^N`.
    pub fn from_polynomial_qp(field: &Field, level: u32, f: &[Elem]) -> Result<LocallyAnalyticFunction> {
        if field.degree() != 1 {
            return Err(Error::InvalidInput("cosets of Z_p need K = Q_p".into()));
        }
        let pn = field.p().pow(level) as i64;
        let mut out = Self::new(level);
        for a in 0..pn {
            let center = Elem::from_int(field, a);
            out.pieces.push((center.clone(), recenter(f, &center)));
        }
        Ok(out)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn pieces(&self) -> &[(Elem, Vec<Elem>)] {
        &self.pieces
    }

    /// `v(‖f‖_{a,N}) = min_n v(a_n) + nN/e` on piece `i`.
    pub fn piece_norm(&self, i: usize) -> Val {
        let (c, f) = &self.pieces[i];
        let e = c.field().e() as i64;
        f.iter()
            .enumerate()
            .map(|(n, x)| x.val() + Val::frac(n as i64 * self.level as i64, e))
            .fold(Val::Inf, Val::min)
    }

    /// `v(‖f‖_N)`, the minimum over pieces.
    pub fn norm(&self) -> Val {
        (0..self.pieces.len()).map(|i| self.piece_norm(i)).fold(Val::Inf, Val::min)
    }

    /// Value at a rational integer `x` (requires `K = Q_p`).
    pub fn eval_int(&self, x: i64) -> Result<Elem> {
        let Some((c, _)) = self.pieces.first() else {
            return Err(Error::InvalidInput("empty function".into()));
        };
        let field = c.field().clone();
        let pn = BigInt::from(field.p()).pow(self.level);
        for (center, f) in &self.pieces {
            let a = integer_value(center).ok_or_else(|| Error::InvalidInput("integer centers expected".into()))?;
            if num_integer::Integer::mod_floor(&(BigInt::from(x) - &a), &pn).is_zero() {
                let y = Elem::from_bigint(&field, &(BigInt::from(x) - a));
                return Ok(f.iter().rev().fold(Elem::zero(&field), |acc, c| acc.mul(&y).add(c)));
            }
        }
        Ok(Elem::zero(&field))
    }

    /// `∫ f dμ` as the sum of the coset integrals.
    pub fn integrate(&self, lv: &TorsionLevel, mu: &Distribution) -> Result<PeriodGraded> {
        if lv.level() != self.level {
            return Err(Error::InvalidInput("torsion level does not match the function's level".into()));
        }
        let mut out = PeriodGraded::for_group(lv.group())?;
        for (a, f) in &self.pieces {
            out = out.add(&coset_integral(lv, mu, a, f)?);
        }
        Ok(out)
    }
}

/// Level compatibility and representative independence of coset integrals.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub level: u32,
    /// `None` when the child cosets are not computable.
    pub children: Option<BoundCheck>,
    pub representative: BoundCheck,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.representative.ok() && self.children.as_ref().is_none_or(|c| c.ok())
    }
}

/// Compares `∫_{a+π^N O_K} f` with the sum over the `q` child cosets
/// `a + π^N c + π^{N+1} O_K`, and with the integral computed from the
/// representative `a + π^N u`, to absolute precision `target`.
pub fn distribution_relation_check(mu: &Distribution, a: &Elem, level: u32, f: &[Elem], u: &Elem, target: Val) -> Result<RelationReport> {
    let g = mu.group();
    let order = g.order();
    let lv = TorsionLevel::new(g, level, order)?;
    let whole = coset_integral(&lv, mu, a, f)?;
    let pin = g.pi().pow(level as u64);
    let b = a.add(&pin.mul(u));
    let fb = recenter(f, &pin.mul(u));
    let moved = coset_integral(&lv, mu, &b, &fb)?;
    let representative = whole.agrees_with(&moved, target);
    let children = if g.kind() == GroupKind::Multiplicative {
        let child = TorsionLevel::new(g, level + 1, order)?;
        let mut sum = PeriodGraded::for_group(g)?;
        for c in 0..g.field().p() as i64 {
            let shift = pin.mul_int(c);
            sum = sum.add(&coset_integral(&child, mu, &a.add(&shift), &recenter(f, &shift))?);
        }
        Some(whole.agrees_with(&sum, target))
    } else {
        None
    };
    Ok(RelationReport { level, children, representative })
}
