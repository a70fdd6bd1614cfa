use num_rational::Ratio;
use serde::Serialize;

use super::{root_valuation, tail_order, TorsionLevel};
use crate::arith::int::legendre_factorial_valuation;
use crate::arith::Val;
use crate::formal_group::FormalModule;
use crate::report::{BoundCheck, Tally};
use crate::Result;

#[derive(Clone, Debug, Serialize)]
pub struct PowerEstimateEntry {
    pub n: usize,
    pub k: usize,
    pub level: u32,
    pub value: Val,
    pub precision: Val,
    pub mainest1: BoundCheck,
    pub mainest2: BoundCheck,
    /// Only when `e <= p - 1`.
    pub mainest3: Option<BoundCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerEstimateReport {
    pub n_max: usize,
    pub k_max: usize,
    pub levels: Vec<u32>,
    pub tally: Tally,
    pub entries: Vec<PowerEstimateEntry>,
}

/// Claimed lower bounds for `v(π^{-N} ∂_G^n Σ (t ⊕ t_N)^k |_0)`.
fn claims(g: &FormalModule, n: usize, k: usize, level: u32) -> Result<(Val, Val, Option<Val>)> {
    let gm = g.gamma()?;
    let f = g.field();
    let e = f.e() as i64;
    let s = gm.s();
    let kq = k as u64 / g.q().pow(level);
    let k0 = kq.saturating_sub(n as u64) as i64;
    let nn = n as i64;
    let base = Ratio::new(level as i64 * nn, e);
    let up_kq = gm.upper(kq).0;
    let m1 = base + Ratio::new(k0, e) + s * (nn + k0) - legendre_factorial_valuation(k0 as u64, f.p()) + up_kq + gm.upper(0).0;
    let m2 = base + s * nn + gm.range(0, n as u64).0.unwrap();
    let m3 = ((f.e() as u64) < f.p()).then(|| Val::Fin(base + s * nn + up_kq));
    Ok((Val::Fin(m1), Val::Fin(m2), m3))
}

/// Certifies the three power-sum estimates on the grid `n <= n_max`,
/// `k <= k_max`, `N ∈ levels`. The truncation at each level is chosen from
/// the largest claim on the grid.
pub fn verify_power_estimates(g: &FormalModule, n_max: usize, k_max: usize, levels: &[u32]) -> Result<PowerEstimateReport> {
    let mut tally = Tally::default();
    let mut entries = vec![];
    for &level in levels {
        let mut grid = vec![];
        let mut top = Val::zero();
        for n in 0..=n_max {
            for k in 0..=k_max {
                let c = claims(g, n, k, level)?;
                top = top.max(c.0).max(c.1).max(c.2.unwrap_or(Val::zero()));
                grid.push((n, k, c));
            }
        }
        // the sums are divided by π^N afterwards
        let target = top + Val::frac(level as i64, g.field().e() as i64) + Val::int(1);
        let m_t = tail_order(g, level, target).max(n_max + 2);
        let lv = TorsionLevel::new(g, level, m_t)?;
        debug_assert_eq!(lv.root_valuation(), root_valuation(g, level));
        let table = lv.derivation_table(n_max);
        for (n, k, (c1, c2, c3)) in grid {
            let x = lv.power_sum_moment(&table, n, k)?;
            let m1 = BoundCheck::for_elem(&x, c1);
            let m2 = BoundCheck::for_elem(&x, c2);
            let m3 = c3.map(|c| BoundCheck::for_elem(&x, c));
            tally.add(m1.verdict);
            tally.add(m2.verdict);
            if let Some(m) = &m3 {
                tally.add(m.verdict);
            }
            entries.push(PowerEstimateEntry { n, k, level, value: x.val(), precision: x.precision(), mainest1: m1, mainest2: m2, mainest3: m3 });
        }
    }
    Ok(PowerEstimateReport { n_max, k_max, levels: levels.to_vec(), tally, entries })
}
