use num_rational::Ratio;
use serde::Serialize;

use super::FormalModule;
use crate::arith::int::legendre_factorial_valuation;
use crate::arith::Val;
use crate::gamma::Gamma;
use crate::report::{BoundCheck, Tally};
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientBoundEntry {
    pub k: usize,
    pub n: usize,
    /// `|ϖ^k ∂^n λ^k / (k! n!)|_0 <= |γ̲[k,n]|^{-1}`
    pub log: BoundCheck,
    /// `|∂^n exp_G^k|_0 <= |ϖ^n γ̄[k,n]|`
    pub exp: BoundCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoefficientBoundsReport {
    pub k_max: usize,
    pub n_max: usize,
    pub tally: Tally,
    pub entries: Vec<CoefficientBoundEntry>,
}

/// Checks the coefficient bounds for powers of `λ` and `exp_G` with
/// `1 <= k <= n`, `k <= k_max`, `n <= n_max`; the period enters only through
/// its valuation `s`. Cases `n < k` or `k = 0` are trivially true and skipped.
pub fn coefficient_bounds_check(g: &FormalModule, k_max: usize, n_max: usize) -> Result<CoefficientBoundsReport> {
    let f = g.field();
    let gm = Gamma::new(f.p(), f.e() as u64, f.h() as u32)?;
    let s = gm.s();
    let order = (n_max + 1).min(g.order());
    let log = g.log().truncate(order);
    let exp = g.exp().truncate(order);
    let mut lp = log.clone();
    let mut ep = exp.clone();
    let mut tally = Tally::default();
    let mut entries = vec![];
    for k in 1..=k_max.min(order - 1) {
        if k > 1 {
            lp = lp.mul(&log);
            ep = ep.mul(&exp);
        }
        let vk = legendre_factorial_valuation(k as u64, f.p());
        for n in k..order {
            let (lo, up) = {
                let ws: Vec<Ratio<i64>> = (k..=n).map(|m| gm.w(m as u64)).collect();
                (*ws.iter().max().unwrap(), *ws.iter().min().unwrap())
            };
            // λ: v([t^n]λ^k) + k s - v(k!) >= -v(γ̲[k,n])
            let c = lp.coeff(n);
            let shift = Val::Fin(s * k as i64 - Ratio::from_integer(vk));
            let claimed_log = Val::Fin(-lo) - shift;
            let log_check = BoundCheck::for_elem(c, claimed_log);
            // exp: v(n! [t^n] exp^k) >= n s + v(γ̄[k,n])
            let vn = Val::int(legendre_factorial_valuation(n as u64, f.p()));
            let claimed_exp = Val::Fin(s * n as i64 + up) - vn;
            let exp_check = BoundCheck::for_elem(ep.coeff(n), claimed_exp);
            tally.add(log_check.verdict);
            tally.add(exp_check.verdict);
            entries.push(CoefficientBoundEntry { k, n, log: log_check, exp: exp_check });
        }
    }
    Ok(CoefficientBoundsReport { k_max, n_max, tally, entries })
}
