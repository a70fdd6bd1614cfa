//! Bernoulli–Hurwitz numbers of a CM Weierstrass model, the normalized
//! values `L(n)`, their congruences at a supersingular prime, and the
//! moment identities tying them to distributions on `O_K^×`.

mod moments;
#[cfg(test)]
mod tests;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::hensel::hensel_root;
use crate::arith::int::{factorial, vp_rational};
use crate::arith::{Elem, Field, Val};
use crate::formal_group::elliptic::{frobenius_epsilon, EllipticModel};
use crate::formal_group::FormalModule;
use crate::report::{BoundCheck, Tally};
use crate::series::Series;
use crate::{Error, Result};

pub use moments::{moment_congruence_check, moment_oracle, MomentCongruenceEntry, MomentCongruenceReport, MomentEntry, MomentOracleReport};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_big(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `℘(z) = z^{-2} + Σ_{k>=2} c_k z^{2k-2}` through `k = cap`, exact.
#[derive(Clone, Debug)]
pub struct WeierstrassSeries {
    pub g2: BigRational,
    pub g3: BigRational,
    c: Vec<BigRational>,
}

/// `c_2 = g2/20`, `c_3 = g3/28` and
/// `c_k = 3/((2k+1)(k-3)) Σ_{h=2}^{k-2} c_h c_{k-h}` for `k >= 4`.
pub fn wp_series(model: &EllipticModel, cap: usize) -> WeierstrassSeries {
    let cap = cap.max(3);
    let mut c = vec![BigRational::zero(); cap + 1];
    c[2] = model.g2.clone() / rat(20);
    c[3] = model.g3.clone() / rat(28);
    for k in 4..=cap {
        let mut s = BigRational::zero();
        for h in 2..=k - 2 {
            s += &c[h] * &c[k - h];
        }
        c[k] = s * rat(3) / rat(((2 * k + 1) * (k - 3)) as i64);
    }
    WeierstrassSeries { g2: model.g2.clone(), g3: model.g3.clone(), c }
}

impl WeierstrassSeries {
    pub fn cap(&self) -> usize {
        self.c.len() - 1
    }

    /// Largest `n` with `B(n)` available.
    pub fn n_max(&self) -> usize {
        2 * self.cap() - 2
    }

    pub fn c(&self, k: usize) -> &BigRational {
        &self.c[k]
    }

    /// `B(n) = BH(n+2)/(n+2)`, so that `B(n)/n!` is the coefficient of
    /// `z^n` in `℘`; `B(n) = 0` for `n <= 1`.
    pub fn b(&self, n: i64) -> BigRational {
        if n <= 1 || n % 2 == 1 {
            return BigRational::zero();
        }
        let k = (n as usize + 2) / 2;
        assert!(k <= self.cap(), "B({n}) is beyond the computed range");
        &self.c[k] * rat_big(factorial(n as u64))
    }

    /// `BH(n) = n B(n-2)`.
    pub fn bh(&self, n: i64) -> BigRational {
        self.b(n - 2) * rat(n)
    }

    /// Coefficients of `(℘')^2 - 4℘^3 + g2 ℘ + g3`, multiplied by `z^6`,
    /// through `z^{2 cap + 1}`; all zero for a correct expansion.
    pub fn ode_residual(&self) -> Vec<BigRational> {
        let m = 2 * self.cap() + 2;
        let z = BigRational::zero();
        // P = z^2 ℘, Q = z^3 ℘' = z P' - 2P
        let mut pc = vec![z.clone(); m];
        pc[0] = BigRational::one();
        for k in 2..=self.cap() {
            pc[2 * k] = self.c[k].clone();
        }
        let p = Series::new(pc, m, &z);
        let q = p.derivative().shift_up(1).sub(&p.scale(&rat(2)));
        let mut r = q.mul(&q).sub(&p.mul(&p).mul(&p).scale(&rat(4)));
        r = r.add(&p.shift_up(4).scale(&self.g2));
        r = r.add(&Series::monomial(self.g3.clone(), 6, m));
        r.into_coeffs()
    }

    /// `ζ(z) = 1/z - Σ_{n>=2} B(n) z^{n+1}/(n+1)!`: the coefficients of
    /// `z^j` for `j < order`, the pole excluded.
    pub fn zeta_coeffs(&self, order: usize) -> Vec<BigRational> {
        (0..order)
            .map(|j| if j >= 3 { -self.b(j as i64 - 1) / rat_big(factorial(j as u64)) } else { BigRational::zero() })
            .collect()
    }

    /// Coefficients of `z^j` in `℘` for `0 <= j < order`.
    pub fn wp_coeffs(&self, order: usize) -> Vec<BigRational> {
        (0..order).map(|j| self.b(j as i64) / rat_big(factorial(j as u64))).collect()
    }

    /// `ζ' = -℘` away from the pole, coefficient by coefficient.
    pub fn zeta_consistent(&self, order: usize) -> bool {
        let zc = self.zeta_coeffs(order + 1);
        let wc = self.wp_coeffs(order);
        (0..order).all(|j| &zc[j + 1] * rat(j as i64 + 1) == -wc[j].clone())
    }
}

/// `℘_b(z) = ℘(z) - b^2 ℘(bz)`: `(pole coefficient, z^n coefficients)`.
/// The `z^n` coefficient is `(1 - b^{n+2}) B(n)/n!`.
pub fn wp_b_coeffs(ws: &WeierstrassSeries, b: i64, order: usize) -> (BigRational, Vec<BigRational>) {
    let bb = rat(b);
    let pole = BigRational::one() - bb.pow(2) * bb.pow(-2);
    let coeffs = ws.wp_coeffs(order).into_iter().enumerate().map(|(n, x)| x * (BigRational::one() - bb.pow(n as i32 + 2))).collect();
    (pole, coeffs)
}

/// `ζ_c(z) = cζ(z) - ζ(cz)` and `ζ_{b,c}(z) = ζ_c(z) - bζ_c(bz)`:
/// `(residue at 0, z^n coefficients)`. The `z^n` coefficient is
/// `-(c - c^n)(1 - b^{n+1}) B(n-1)/n!`.
pub fn zeta_bc_coeffs(ws: &WeierstrassSeries, b: i64, c: i64, order: usize) -> (BigRational, Vec<BigRational>) {
    let (bb, cc) = (rat(b), rat(c));
    let res_c = cc.clone() - cc.pow(-1);
    let residue = res_c.clone() - bb.clone() * res_c * bb.pow(-1);
    let coeffs = ws
        .zeta_coeffs(order)
        .into_iter()
        .enumerate()
        .map(|(n, x)| {
            let n = n as i32;
            let zc = x * (cc.clone() - cc.pow(n));
            zc.clone() - bb.clone() * zc * bb.pow(n)
        })
        .collect();
    (residue, coeffs)
}

/// A series in `t` obtained by substituting `z = λ_E(t)`.
#[derive(Clone, Debug)]
pub struct CmSeries {
    pub series: Series<Elem>,
    /// The Laurent part at `z = 0` cancels.
    pub pole_free: bool,
    /// Smallest coefficient valuation, against the claim that the series is integral.
    pub integrality: BoundCheck,
}

fn substitute(g: &FormalModule, pole: &BigRational, coeffs: &[BigRational]) -> Result<CmSeries> {
    let f = g.field();
    let zs = Series::new(coeffs.iter().map(|x| Elem::from_rational(f, x)).collect(), coeffs.len(), &g.zero_elem());
    let lam = g.log_to(coeffs.len())?;
    let series = zs.compose(&lam)?;
    let low = series.coeffs().iter().map(|c| c.val()).fold(Val::Inf, Val::min);
    let prec = series.coeffs().iter().map(|c| c.precision()).fold(Val::Inf, Val::min);
    let integrality = BoundCheck::judge(low, prec, Val::zero());
    Ok(CmSeries { series, pole_free: pole.is_zero(), integrality })
}

/// Valuation loss of substituting `λ_E` into `coeffs`: `-min v(coeff)`.
pub fn substitution_loss(coeffs: &[BigRational], p: u64) -> i64 {
    let m = coeffs.iter().map(|x| vp_rational(x, p)).fold(Val::Inf, Val::min);
    match m {
        Val::Fin(v) if v < num_rational::Ratio::from_integer(0) => -v.floor().to_integer(),
        _ => 0,
    }
}

/// `φ(t) = ℘_b(λ_E(t))` to order `order`, where `g` is the formal group of
/// the model.
pub fn phi_series(g: &FormalModule, ws: &WeierstrassSeries, b: i64, order: usize) -> Result<CmSeries> {
    check_prime_to(g.field(), b)?;
    check_range(ws, order)?;
    let (pole, coeffs) = wp_b_coeffs(ws, b, order);
    substitute(g, &pole, &coeffs)
}

/// `ψ(t) = ζ_{b,c}(λ_E(t))` to order `order`.
pub fn psi_series(g: &FormalModule, ws: &WeierstrassSeries, b: i64, c: i64, order: usize) -> Result<CmSeries> {
    check_prime_to(g.field(), b)?;
    check_prime_to(g.field(), c)?;
    check_range(ws, order)?;
    let (res, coeffs) = zeta_bc_coeffs(ws, b, c, order);
    substitute(g, &res, &coeffs)
}

fn check_range(ws: &WeierstrassSeries, order: usize) -> Result<()> {
    if order > ws.n_max() + 1 {
        return Err(Error::Precision(format!("series order {order} needs B(n) beyond n = {}", ws.n_max())));
    }
    Ok(())
}

fn check_prime_to(f: &Field, b: i64) -> Result<()> {
    if b == 0 || b % f.p() as i64 == 0 {
        return Err(Error::InvalidInput(format!("{b} is not prime to {}", f.p())));
    }
    Ok(())
}

/// Data of the Katz normalization at an inert supersingular prime.
#[derive(Clone, Debug)]
pub struct KatzData {
    pub p: u64,
    pub field: Field,
    pub eps: Elem,
    /// `U = -ε^{-1} q!/(p^{p+1}(q-1))`.
    pub u: Elem,
    /// The root `γ ≡ 1 mod p` of `γ^{q-1} = U`.
    pub gamma: Elem,
    pub b: i64,
    pub c: i64,
}

/// `ε` from the formal group of the model, then `γ` by Hensel lifting from `1`.
pub fn katz_data(model: &EllipticModel, field: &Field, b: i64, c: i64) -> Result<KatzData> {
    check_prime_to(field, b)?;
    check_prime_to(field, c)?;
    let eps = frobenius_epsilon(model, field)?;
    let (p, q) = (field.p(), field.q());
    let num = factorial(q);
    let den = BigInt::from(p).pow(p as u32 + 1) * BigInt::from(q - 1);
    let ratio = BigRational::new(num, den);
    let u = Elem::from_rational(field, &ratio).mul(&eps.inv()?).neg();
    let one = Elem::one(field);
    if u.sub(&one).val() < Val::int(1) {
        return Err(Error::NotComputable(format!("U = -ε^(-1) q!/(p^(p+1)(q-1)) is not 1 mod {p}")));
    }
    let mut poly = vec![Elem::zero(field); q as usize];
    poly[0] = u.neg();
    poly[q as usize - 1] = one.clone();
    let gamma = hensel_root(&poly, &one)?;
    Ok(KatzData { p, field: field.clone(), eps, u, gamma, b, c })
}

impl KatzData {
    /// The same data with `γ` replaced by `γζ`.
    pub fn with_branch(&self, zeta: &Elem) -> KatzData {
        KatzData { gamma: self.gamma.mul(zeta), ..self.clone() }
    }

    /// `v(γ^{q-1} / U - 1)`.
    pub fn defining_residual(&self) -> Val {
        let q = self.field.q();
        self.gamma.pow(q - 1).sub(&self.u).val()
    }

    /// `(1 - b^{n+2})(1 - p^n) B(n) / p^{[np/(q-1)]}`, exact.
    pub fn l_rational(&self, ws: &WeierstrassSeries, n: u64) -> BigRational {
        let (p, q) = (self.p, self.field.q());
        let bb = rat(self.b);
        let pb = rat(p as i64);
        let e = (n * p / (q - 1)) as i32;
        (BigRational::one() - bb.pow(n as i32 + 2)) * (BigRational::one() - pb.pow(n as i32)) * ws.b(n as i64) / pb.pow(e)
    }

    /// `L(n)`.
    pub fn l_value(&self, ws: &WeierstrassSeries, n: u64) -> Result<Elem> {
        let r = self.l_rational(ws, n);
        Ok(Elem::from_rational(&self.field, &r).mul(&self.gamma.pow(n).inv()?))
    }

    /// `L'(n) = L(n)/n` for `n > 0`.
    pub fn l_prime(&self, ws: &WeierstrassSeries, n: u64) -> Result<Elem> {
        if n == 0 {
            return Err(Error::InvalidInput("L'(0) is undefined".into()));
        }
        self.l_value(ws, n)?.div(&Elem::from_int(&self.field, n as i64))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LValue {
    pub n: u64,
    pub valuation: Val,
    /// `v(L(n)) >= 0`.
    pub integral: BoundCheck,
}

/// `L(n)` for `n <= n_max` with the integrality check.
pub fn l_values(data: &KatzData, ws: &WeierstrassSeries, n_max: u64) -> Result<Vec<LValue>> {
    (0..=n_max)
        .map(|n| {
            let r = data.l_rational(ws, n);
            let v = vp_rational(&r, data.p);
            // γ is a unit, so the valuation of L(n) is that of the rational factor
            Ok(LValue { n, valuation: v, integral: BoundCheck::exact(v, Val::zero()) })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CongruenceKind {
    /// `L(n + p^l(q-1)) ≡ L(n) mod p^l`
    Katz,
    /// `mod p^{l+1}` for `n ≢ 0 mod q-1`
    Refined,
    /// `L'(n + p^l(q-1)) ≡ L'(n) mod p^{l+1}` for `q-1 | n`, `n ≠ 0`
    Derived,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceEntry {
    pub kind: CongruenceKind,
    pub l: u32,
    pub n: u64,
    pub m: u64,
    /// Both sides vanish.
    pub trivial: bool,
    pub check: BoundCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    pub p: u64,
    pub b: i64,
    pub l_max: u32,
    pub n_max: u64,
    pub integrality: Vec<LValue>,
    pub entries: Vec<CongruenceEntry>,
    pub tally: Tally,
}

impl CongruenceReport {
    pub fn nontrivial(&self) -> usize {
        self.entries.iter().filter(|e| !e.trivial).count()
    }

    pub fn passed(&self) -> bool {
        self.tally.all_certified()
    }
}

fn congruences(data: &KatzData, ws: &WeierstrassSeries, l_range: std::ops::RangeInclusive<u32>, n_max: u64, kinds: &[CongruenceKind]) -> Result<CongruenceReport> {
    if ws.n_max() < n_max as usize {
        return Err(Error::Precision(format!("B(n) is computed only for n <= {}", ws.n_max())));
    }
    let q1 = data.field.q() - 1;
    let integrality = l_values(data, ws, n_max)?;
    let mut tally = Tally::default();
    for x in &integrality {
        tally.add(x.integral.verdict);
    }
    let l_max = *l_range.end();
    let mut entries = vec![];
    for l in l_range {
        let step = data.p.pow(l) * q1;
        if step > n_max {
            continue;
        }
        for n in 0..=n_max - step {
            let m = n + step;
            for &kind in kinds {
                let (applies, modulus) = match kind {
                    CongruenceKind::Katz => (true, l as i64),
                    CongruenceKind::Refined => (n % q1 != 0, l as i64 + 1),
                    CongruenceKind::Derived => (n % q1 == 0 && n != 0, l as i64 + 1),
                };
                if !applies {
                    continue;
                }
                let (a, b) = if kind == CongruenceKind::Derived {
                    (data.l_prime(ws, m)?, data.l_prime(ws, n)?)
                } else {
                    (data.l_value(ws, m)?, data.l_value(ws, n)?)
                };
                let trivial = data.l_rational(ws, m).is_zero() && data.l_rational(ws, n).is_zero();
                let check = if trivial { BoundCheck::exact(Val::Inf, Val::int(modulus)) } else { BoundCheck::for_elem(&a.sub(&b), Val::int(modulus)) };
                tally.add(check.verdict);
                entries.push(CongruenceEntry { kind, l, n, m, trivial, check });
            }
        }
    }
    Ok(CongruenceReport { p: data.p, b: data.b, l_max, n_max, integrality, entries, tally })
}

/// Integrality of `L(n)` for `n <= n_max` and the Katz congruences for
/// `1 <= l <= l_max` with `n + p^l(q-1) <= n_max`.
pub fn verify_katz(data: &KatzData, ws: &WeierstrassSeries, l_max: u32, n_max: u64) -> Result<CongruenceReport> {
    congruences(data, ws, 1..=l_max, n_max, &[CongruenceKind::Katz])
}

/// Chellali's refinements over the same range.
pub fn verify_chellali(data: &KatzData, ws: &WeierstrassSeries, l_max: u32, n_max: u64) -> Result<CongruenceReport> {
    congruences(data, ws, 0..=l_max, n_max, &[CongruenceKind::Refined, CongruenceKind::Derived])
}

/// `(q-1)`-th roots of unity in the field, other than `1`.
pub fn branch_shifts(field: &Field) -> Result<Vec<Elem>> {
    let (p, h) = (field.p(), field.h());
    let mut out = vec![];
    for idx in 2..p.pow(h as u32) {
        let residue: Vec<u64> = (0..h).map(|j| idx / p.pow(j as u32) % p).collect();
        out.push(crate::arith::hensel::teichmuller(field, &residue)?);
    }
    Ok(out)
}
