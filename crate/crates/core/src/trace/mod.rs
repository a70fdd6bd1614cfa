//! Sums over the `π^N`-torsion of a formal module, computed symbolically.
//!
//! The torsion points are the roots of `[π^N](T)` (or of its distinguished
//! polynomial), so `Σ_{t_N} h(t_N)` is a linear combination of Newton power
//! sums. Translation commutes with `∂_G`, and `λ(t_N) = 0`, which gives
//!
//! `Σ_{t_N} f(t ⊕ t_N) = Σ_j (Σ_{t_N} ∂_G^j f(t_N)) λ(t)^j / j!`.
//!
//! Truncating `h` at `T^M` costs at most `M · v_min` in absolute precision,
//! where `v_min = 1/(e q^{N-1}(q-1))` is the smallest root valuation; every
//! returned element carries that loss in its precision.

mod estimates;

use num_rational::Ratio;
use serde::Serialize;

use num_traits::Zero;

use crate::arith::int::{factorial, legendre_factorial_valuation};
use crate::arith::{Elem, Val};
use crate::formal_group::{FormalModule, GroupKind};
use crate::series::{newton_power_sums, weierstrass_divide, weierstrass_prepare_padic, Series};
use crate::{Error, Result};

pub use estimates::{verify_power_estimates, PowerEstimateEntry, PowerEstimateReport};

/// Torsion data of a formal module at level `N`.
#[derive(Clone, Debug)]
pub struct TorsionLevel {
    group: FormalModule,
    level: u32,
    poly: Vec<Elem>,
    pi_n: Series<Elem>,
    power_sums: Vec<Elem>,
    log: Series<Elem>,
    dlog_inv: Series<Elem>,
    root_val: Val,
}

fn poly_mul(a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let f = a[0].field();
    let mut out = vec![Elem::zero(f); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// `outer(inner)` for polynomials given low-to-high.
fn poly_compose(outer: &[Elem], inner: &[Elem]) -> Vec<Elem> {
    let f = inner[0].field();
    let mut acc = vec![Elem::zero(f)];
    for c in outer.iter().rev() {
        acc = poly_mul(&acc, inner);
        acc[0] = acc[0].add(c);
    }
    while acc.len() > 1 && acc.last().is_some_and(|c| c.is_zero()) {
        acc.pop();
    }
    acc
}

/// `x / j!`, with the `p`-part of `j!` removed exactly.
pub(crate) fn div_factorial(x: &Elem, j: u64) -> Result<Elem> {
    let f = x.field();
    let p = f.p();
    let v = legendre_factorial_valuation(j, p);
    let mut u = factorial(j);
    let pb = num_bigint::BigInt::from(p);
    while v > 0 && (&u % &pb).is_zero() {
        u /= &pb;
    }
    Ok(x.div(&Elem::from_bigint(f, &u))?.mul_p_pow(-v))
}

/// Smallest valuation of a nonzero `π^N`-torsion point,
/// `1/(e q^{N-1}(q-1))`; `Inf` at level 0.
pub fn root_valuation(g: &FormalModule, level: u32) -> Val {
    if level == 0 {
        return Val::Inf;
    }
    let e = g.field().e() as i64;
    let q = g.q() as i64;
    Val::Fin(Ratio::new(1, e * q.pow(level - 1) * (q - 1)))
}

/// Truncation order `M_T` with `M_T · v_min >= target + 2`.
pub fn tail_order(g: &FormalModule, level: u32, target: Val) -> usize {
    match (root_valuation(g, level), target) {
        (Val::Fin(v), Val::Fin(t)) => crate::arith::val::ceil_ratio((t + 2) / v).max(1) as usize,
        _ => 1,
    }
}

impl TorsionLevel {
    /// Builds the torsion polynomial, power sums `p_0..p_{2 m_t}` and the
    /// derivation data to order `m_t`.
    pub fn new(g: &FormalModule, level: u32, m_t: usize) -> Result<TorsionLevel> {
        let field = g.field();
        let zero = Elem::zero(field);
        let d = (g.q() as usize)
            .checked_pow(level)
            .ok_or_else(|| Error::InvalidInput("q^N overflows".into()))?;
        let (poly, pi_n) = match g.kind() {
            GroupKind::LubinTate | GroupKind::Multiplicative => {
                let fr = g.frobenius();
                let deg = fr.degree().unwrap_or(0);
                if deg as u64 != g.q() || deg + 1 >= fr.order() {
                    return Err(Error::InvalidInput("Frobenius is not known as a polynomial of degree q".into()));
                }
                let fr_poly = fr.coeffs()[..=deg].to_vec();
                let mut p = vec![zero.clone(), Elem::one(field)];
                for _ in 0..level {
                    p = poly_compose(&fr_poly, &p);
                }
                let s = Series::new(p.clone(), p.len(), &zero);
                (p, s)
            }
            GroupKind::Elliptic => {
                let s = g.frobenius_power(level)?;
                if s.order() <= 2 * d {
                    return Err(Error::Precision(format!("[π^{level}] needs order > {} for preparation", 2 * d)));
                }
                let (p, _) = weierstrass_prepare_padic(&s, d, 64 + field.cap_units() as usize)?;
                (p, s)
            }
        };
        if poly.len() != d + 1 {
            return Err(Error::InvalidInput(format!("torsion polynomial has degree {} instead of {d}", poly.len() - 1)));
        }
        let power_sums = newton_power_sums(&poly, 2 * m_t)?;
        let log = g.log_to(m_t + 1)?;
        let dlog_inv = g.dlog_inv_to(m_t)?;
        Ok(TorsionLevel { group: g.clone(), level, poly, pi_n, power_sums, log, dlog_inv, root_val: root_valuation(g, level) })
    }

    /// Level whose truncation meets `target` absolute precision.
    pub fn with_target(g: &FormalModule, level: u32, target: Val) -> Result<TorsionLevel> {
        Self::new(g, level, tail_order(g, level, target))
    }

    pub fn group(&self) -> &FormalModule {
        &self.group
    }
    pub fn level(&self) -> u32 {
        self.level
    }
    /// Monic torsion polynomial, low-to-high, of degree `q^N`.
    pub fn torsion_poly(&self) -> &[Elem] {
        &self.poly
    }
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }
    pub fn power_sums(&self) -> &[Elem] {
        &self.power_sums
    }
    pub fn root_valuation(&self) -> Val {
        self.root_val
    }
    /// The truncation order `M_T` of derived series.
    pub fn tail_order(&self) -> usize {
        self.dlog_inv.order()
    }

    /// `[π^N](t)` through `order` (exact for polynomial kinds).
    pub fn pi_n_series(&self, order: usize) -> Result<Series<Elem>> {
        if self.group.kind() != GroupKind::Elliptic {
            return Ok(Series::new(self.pi_n.coeffs().to_vec(), order, &Elem::zero(self.group.field())));
        }
        if order > self.pi_n.order() {
            return Err(Error::Precision(format!("[π^N] is known to order {}", self.pi_n.order())));
        }
        Ok(self.pi_n.truncate(order))
    }

    fn tail(&self, terms: usize, floor: Val) -> Val {
        match self.root_val {
            Val::Inf => Val::Inf,
            v => v.scale(terms as i64) + floor.min(Val::zero()),
        }
    }

    /// `Σ_{t_N} h(t_N)` from the coefficients of `h`, whose unknown tail is
    /// assumed no worse than its smallest known coefficient valuation.
    pub fn root_sum(&self, h: &Series<Elem>) -> Elem {
        self.shifted_root_sum(h, 0)
    }

    /// `Σ_{t_N} t_N^shift h(t_N)`.
    fn shifted_root_sum(&self, h: &Series<Elem>, shift: usize) -> Elem {
        let f = self.group.field();
        let avail = self.power_sums.len().saturating_sub(shift);
        let n = h.order().min(avail);
        let mut acc = Elem::zero(f);
        let mut floor = Val::Inf;
        for j in 0..n {
            let c = h.coeff(j);
            floor = floor.min(c.val().min(c.precision()));
            if !c.is_zero() {
                acc = acc.add(&c.mul(&self.power_sums[j + shift]));
            }
        }
        if floor.is_inf() {
            floor = Val::zero();
        }
        acc.truncate(self.tail(n + shift, floor))
    }

    /// `∂_G f` with the level's derivation data.
    pub fn derive(&self, f: &Series<Elem>) -> Series<Elem> {
        f.derivative().mul(&self.dlog_inv)
    }

    /// `Σ_{t_N} f(t ⊕ t_N)` modulo `t^out_order`.
    ///
    /// For polynomial Frobenius the points `t ⊕ t_N` are exactly the roots
    /// of `[π^N](Y) - [π^N](t)` over `K[[t]]`, so the sum pairs the
    /// coefficients of `f` with their power sums; coefficients of `f` at and
    /// beyond its order `M` are unknown and cost `(M - m) v_min` at `t^m`.
    /// The elliptic kind uses the Taylor expansion in `λ(t)` instead.
    pub fn torsion_sum(&self, f: &Series<Elem>, out_order: usize) -> Result<Series<Elem>> {
        if self.group.kind() == GroupKind::Elliptic {
            return self.torsion_sum_taylor(f, out_order);
        }
        let sums = self.conjugate_power_sums(f.order().saturating_sub(1), out_order)?;
        let zero = Elem::zero(self.group.field());
        let mut out = Series::zero(&zero, out_order);
        let mut floor = Val::Inf;
        for (k, c) in f.coeffs().iter().enumerate() {
            floor = floor.min(c.val().min(c.precision()));
            if !c.is_zero() {
                out = out.add(&sums[k].scale(c));
            }
        }
        if floor.is_inf() {
            floor = Val::zero();
        }
        let m = f.order();
        let c = out
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, x)| x.truncate(self.tail(m.saturating_sub(i), floor)))
            .collect();
        Ok(Series::new(c, out_order, &zero))
    }

    /// `Σ_{t_N} f(t ⊕ t_N)` for a polynomial `f` (coefficients low-to-high),
    /// exact for polynomial Frobenius.
    pub fn torsion_sum_poly(&self, f: &[Elem], out_order: usize) -> Result<Series<Elem>> {
        if self.group.kind() == GroupKind::Elliptic {
            return Err(Error::NotComputable("exact torsion sums need a polynomial Frobenius".into()));
        }
        let zero = Elem::zero(self.group.field());
        let sums = self.conjugate_power_sums(f.len().saturating_sub(1), out_order)?;
        let mut out = Series::zero(&zero, out_order);
        for (k, c) in f.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&sums[k].scale(c));
            }
        }
        Ok(out)
    }

    /// `Σ_{t_N} (t ⊕ t_N)^k` for `k = 0..=kmax`, as series modulo
    /// `t^out_order`: power sums of the roots of `[π^N](Y) - [π^N](t)`.
    pub fn conjugate_power_sums(&self, kmax: usize, out_order: usize) -> Result<Vec<Series<Elem>>> {
        if self.group.kind() == GroupKind::Elliptic {
            return Err(Error::NotComputable("conjugates need a polynomial Frobenius".into()));
        }
        let mut q: Vec<Series<Elem>> = self.poly.iter().map(|c| Series::constant(c.clone(), out_order)).collect();
        q[0] = self.pi_n_series(out_order)?.neg();
        newton_power_sums(&q, kmax)
    }

    /// Taylor route `Σ_j (Σ_{t_N} ∂_G^j f(t_N)) λ(t)^j / j!`.
    pub fn torsion_sum_taylor(&self, f: &Series<Elem>, out_order: usize) -> Result<Series<Elem>> {
        let field = self.group.field();
        let zero = Elem::zero(field);
        if out_order > self.log.order() {
            return Err(Error::Precision(format!("output order {out_order} exceeds the level's order {}", self.log.order())));
        }
        let lam = self.log.truncate(out_order);
        let mut out = Series::zero(&zero, out_order);
        let mut lam_pow = Series::one(&zero, out_order);
        let mut d = f.clone();
        for j in 0..out_order {
            if d.order() == 0 {
                return Err(Error::Precision(format!("input order {} too small for output order {out_order}", f.order())));
            }
            let s = div_factorial(&self.root_sum(&d), j as u64)?;
            out = out.add(&lam_pow.scale(&s));
            d = self.derive(&d);
            lam_pow = lam_pow.mul(&lam);
        }
        Ok(out)
    }

    /// Derivation table `∂_G^n = Σ_i A_{n,i}(t) (d/dt)^i` for `n <= n_max`.
    pub fn derivation_table(&self, n_max: usize) -> DerivationTable {
        let zero = Elem::zero(self.group.field());
        let m = self.dlog_inv.order();
        let mut rows = vec![vec![Series::one(&zero, m)]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut row = Vec::with_capacity(n + 2);
            for i in 0..=n + 1 {
                let mut s = if i <= n { prev[i].derivative() } else { Series::zero(&zero, m) };
                if i >= 1 {
                    s = if i <= n { s.add(&prev[i - 1].truncate(s.order())) } else { prev[i - 1].truncate(m - n - 1) };
                }
                row.push(s.mul(&self.dlog_inv));
            }
            rows.push(row);
        }
        DerivationTable { rows }
    }

    /// `Σ_{t_N} (∂_G^n t^k)(t_N) = ∂_G^n Σ_{t_N} (t ⊕ t_N)^k |_{t=0}`.
    pub fn moment_sum(&self, table: &DerivationTable, n: usize, k: usize) -> Result<Elem> {
        let field = self.group.field();
        let row = table.rows.get(n).ok_or_else(|| Error::InvalidInput(format!("derivation table stops below n = {n}")))?;
        let mut acc = Elem::zero(field);
        let mut ff = Elem::one(field);
        for (i, a) in row.iter().enumerate() {
            if i > k {
                break;
            }
            if i > 0 {
                ff = ff.mul_int((k + 1 - i) as i64);
            }
            if ff.is_zero() {
                continue;
            }
            acc = acc.add(&ff.mul(&self.shifted_root_sum(a, k - i)));
        }
        Ok(acc)
    }

    /// `π^{-N} ∂_G^n Σ_{t_N} (t ⊕ t_N)^k |_{t=0}`.
    pub fn power_sum_moment(&self, table: &DerivationTable, n: usize, k: usize) -> Result<Elem> {
        self.moment_sum(table, n, k)?.div(&self.group.pi().pow(self.level as u64))
    }

    /// Coleman factorization `F(t) = g([π^N] t)` by repeated Weierstrass
    /// division by `[π^N]`; each division must leave a constant remainder.
    pub fn coleman_factor(&self, f: &Series<Elem>) -> Result<ColemanFactor> {
        let field = self.group.field();
        let zero = Elem::zero(field);
        let d = self.degree();
        let iters = 64 + 4 * field.cap_units() as usize;
        let mut cur = f.clone();
        let mut g = vec![];
        let mut residual = Val::Inf;
        while cur.order() > d {
            let pn = self.pi_n_series(cur.order())?;
            let (q, r) = weierstrass_divide(&cur, &pn, d, iters)?;
            g.push(r.coeff(0).clone());
            for c in &r.coeffs()[1..] {
                residual = residual.min(c.val().min(c.precision()));
            }
            cur = q;
        }
        if cur.order() > 0 {
            g.push(cur.coeff(0).clone());
        }
        let n = g.len();
        Ok(ColemanFactor { g: Series::new(g, n, &zero), residual })
    }
}

/// Rows `A_{n,i}` of the expansion of `∂_G^n` in ordinary derivatives.
#[derive(Clone, Debug)]
pub struct DerivationTable {
    rows: Vec<Vec<Series<Elem>>>,
}

impl DerivationTable {
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }
    pub fn row(&self, n: usize) -> &[Series<Elem>] {
        &self.rows[n]
    }
}

/// Result of a Coleman factorization; `residual` is a certified lower
/// bound for the valuation of every non-constant remainder coefficient.
#[derive(Clone, Debug)]
pub struct ColemanFactor {
    pub g: Series<Elem>,
    pub residual: Val,
}

#[derive(Clone, Debug, Serialize)]
pub struct ColemanReport {
    pub level: u32,
    pub residual: Val,
    pub min_factor_valuation: Val,
    pub factor_order: usize,
}

impl ColemanFactor {
    pub fn report(&self, level: u32) -> ColemanReport {
        ColemanReport {
            level,
            residual: self.residual,
            min_factor_valuation: self.g.coeffs().iter().map(|c| c.val()).min().unwrap_or(Val::Inf),
            factor_order: self.g.order(),
        }
    }
}


/// Translation `t ⊕ r` by a root `r` of a polynomial `[π](T)`, as the
/// series `y(t)` with `y(0) = r` and `[π](y) = [π](t)`, solved
/// coefficientwise. Independent of the power-sum machinery; used as an
/// oracle over an extension containing the roots.
pub fn translate_by_root(frobenius: &[Elem], r: &Elem, order: usize) -> Result<Series<Elem>> {
    let f = r.field();
    let zero = Elem::zero(f);
    let eval = |y: &Series<Elem>| {
        let mut acc = Series::zero(&zero, order);
        for c in frobenius.iter().rev() {
            acc = acc.mul(y);
            acc.set(0, acc.coeff(0).add(c));
        }
        acc
    };
    let t = Series::var(&zero, order);
    let target = eval(&t);
    let mut slope = Elem::zero(f);
    for (i, c) in frobenius.iter().enumerate().skip(1) {
        slope = slope.add(&c.mul_int(i as i64).mul(&r.pow(i as u64 - 1)));
    }
    let mut y = Series::constant(r.clone(), order);
    for m in 1..order {
        let res = eval(&y).sub(&target);
        y.set(m, res.coeff(m).neg().div(&slope)?);
    }
    Ok(y)
}

/// `Σ_r f(t ⊕ r)` over explicitly given roots.
pub fn explicit_torsion_sum(frobenius: &[Elem], roots: &[Elem], f: &Series<Elem>, order: usize) -> Result<Series<Elem>> {
    let field = roots.first().ok_or_else(|| Error::InvalidInput("no roots".into()))?.field();
    let zero = Elem::zero(field);
    let mut acc = Series::zero(&zero, order);
    for r in roots {
        let y = translate_by_root(frobenius, r, order)?;
        let mut v = Series::zero(&zero, order);
        for c in f.coeffs().iter().rev() {
            v = v.mul(&y);
            v.set(0, v.coeff(0).add(c));
        }
        acc = acc.add(&v);
    }
    Ok(acc)
}
