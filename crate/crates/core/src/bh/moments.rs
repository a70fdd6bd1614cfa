use num_rational::{BigRational, Ratio};
use num_traits::One;
use serde::Serialize;

use super::{phi_series, psi_series, WeierstrassSeries};
use crate::arith::{Elem, Val};
use crate::formal_group::FormalModule;
use crate::fourier::{Distribution, PeriodGraded, PeriodRelation};
use crate::report::{BoundCheck, Tally, Verdict};
use crate::series::Series;
use crate::trace::TorsionLevel;
use crate::{Error, Result};

/// `D_k = ∂_G^k φ|_0 - q^{-1} Σ_{t_0 ∈ G[π]} (∂_G^k φ)(t_0)`, so that
/// `ϖ^k ∫_{O_K^×} x^k dμ_φ = D_k`.
pub(crate) fn unit_moments(lv: &TorsionLevel, phi: &Series<Elem>, k_max: usize) -> Result<Vec<Elem>> {
    let g = lv.group();
    if lv.level() != 1 {
        return Err(Error::InvalidInput("unit moments need the level-1 torsion".into()));
    }
    let mu = Distribution::new(g, phi.clone());
    let sums = mu.moments(lv, k_max)?;
    let at_zero = g.derive_at_zero(phi, k_max);
    let qinv = Elem::from_int(g.field(), g.q() as i64).inv()?;
    Ok(at_zero.iter().zip(&sums).map(|(a, s)| a.sub(&s.mul(&qinv))).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentEntry {
    /// `"phi"` or `"psi"`.
    pub series: String,
    pub n: usize,
    /// The rational right-hand side, as `num/den`.
    pub rhs: String,
    pub lhs_valuation: Val,
    pub check: BoundCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentOracleReport {
    pub n_max: usize,
    pub series_order: usize,
    pub target: Val,
    pub phi_pole_free: bool,
    pub psi_pole_free: bool,
    pub phi_integral: BoundCheck,
    pub psi_integral: BoundCheck,
    pub entries: Vec<MomentEntry>,
    pub tally: Tally,
}

impl MomentOracleReport {
    pub fn passed(&self) -> bool {
        self.tally.all_certified() && self.phi_pole_free && self.psi_pole_free
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Compares `D_n` for `φ = ℘_b(λ_E)` and `ψ = ζ_{b,c}(λ_E)` with the exact
/// values `(1 - p^n)(1 - b^{n+2}) B(n)` and
/// `-(1 - p^{n-1})(c - c^n)(1 - b^{n+1}) B(n-1)`, to absolute precision
/// `target`. `g` is the formal group of the model; the series are taken to
/// order `m_t`.
pub fn moment_oracle(g: &FormalModule, ws: &WeierstrassSeries, b: i64, c: i64, n_max: usize, m_t: usize, target: Val) -> Result<MomentOracleReport> {
    let f = g.field();
    let p = rat(f.p() as i64);
    let (bb, cc) = (rat(b), rat(c));
    let lv = TorsionLevel::new(g, 1, m_t)?;
    let phi = phi_series(g, ws, b, m_t)?;
    let psi = psi_series(g, ws, b, c, m_t)?;
    let mut entries = vec![];
    let mut tally = Tally::default();
    let one = BigRational::one();
    for (name, s) in [("phi", &phi), ("psi", &psi)] {
        let d = unit_moments(&lv, &s.series, n_max)?;
        for (n, lhs) in d.iter().enumerate() {
            let ni = n as i32;
            let rhs = if name == "phi" {
                (&one - p.pow(ni)) * (&one - bb.pow(ni + 2)) * ws.b(n as i64)
            } else {
                -((&one - p.pow(ni - 1)) * (cc.clone() - cc.pow(ni)) * (&one - bb.pow(ni + 1)) * ws.b(n as i64 - 1))
            };
            let diff = lhs.sub(&Elem::from_rational(f, &rhs));
            let check = BoundCheck::for_elem(&diff, target);
            tally.add(check.verdict);
            entries.push(MomentEntry { series: name.into(), n, rhs: format!("{}/{}", rhs.numer(), rhs.denom()), lhs_valuation: lhs.val(), check });
        }
    }
    Ok(MomentOracleReport {
        n_max,
        series_order: m_t,
        target,
        phi_pole_free: phi.pole_free,
        psi_pole_free: psi.pole_free,
        phi_integral: phi.integrality,
        psi_integral: psi.integrality,
        entries,
        tally,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentCongruenceEntry {
    /// `1`, `2` or `3` for the three estimates.
    pub part: u8,
    pub l: u32,
    pub n: usize,
    pub m: usize,
    pub check: BoundCheck,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentCongruenceReport {
    pub n_max: usize,
    pub m_max: usize,
    pub l_max: u32,
    pub entries: Vec<MomentCongruenceEntry>,
    pub tally: Tally,
}

/// Judges `v(x) >= claimed` for a graded value, reducing modulo the period
/// relation when the grades alone are not decisive.
fn graded_check(x: &PeriodGraded, claimed: Val, rel: Option<&PeriodRelation>) -> Result<BoundCheck> {
    let chk = x.check(claimed);
    if chk.verdict != Verdict::Inconclusive {
        return Ok(chk);
    }
    let Some(rel) = rel else { return Ok(chk) };
    let (lower, exact) = x.reduced_valuation(rel)?;
    Ok(match exact {
        Some(v) => BoundCheck::exact(v, claimed),
        None if lower >= claimed => BoundCheck::exact(lower, claimed),
        None => BoundCheck { claimed, achieved: lower, residual_precision: x.precision(), verdict: Verdict::Inconclusive },
    })
}

/// For an integral `φ` on a level-1 torsion group, the estimates
/// i) `v(∫_{O_K^×} x^n dμ_φ) >= -1`,
/// ii) `v(∫_{O_K^×} (x^m - x^n) dμ_φ) >= l - p/(q-1)`,
/// iii) `v(∫_{O_K^×} ((x^m-1)/m - (x^n-1)/n) dμ_φ) >= l + 1 - 2p/(q-1)` when `q-1 | n`,
/// for `n <= n_max`, `m <= m_max`, `m ≡ n mod p^l(q-1)`, `m ≠ n`, `l <= l_max`.
pub fn moment_congruence_check(g: &FormalModule, phi: &Series<Elem>, n_max: usize, m_max: usize, l_max: u32, m_t: usize) -> Result<MomentCongruenceReport> {
    let f = g.field();
    let (p, q) = (f.p() as usize, g.q() as usize);
    let low = phi.coeffs().iter().map(|c| c.val()).fold(Val::Inf, Val::min);
    if low < Val::zero() {
        return Err(Error::InvalidInput("the series is not integral".into()));
    }
    let lv = TorsionLevel::new(g, 1, m_t)?;
    let d = unit_moments(&lv, phi, m_max.max(n_max))?;
    let rel = PeriodRelation::for_group(g)?;
    let base = PeriodGraded::for_group(g)?;
    let graded = |k: usize, scale: &Elem| {
        let mut x = base.clone();
        x.add_term(-(k as i64), &d[k].mul(scale));
        x
    };
    let one = Elem::one(f);
    let mut entries = vec![];
    let mut tally = Tally::default();
    for n in 0..=n_max.max(m_max) {
        let chk = graded_check(&graded(n, &one), Val::int(-1), rel.as_ref())?;
        tally.add(chk.verdict);
        entries.push(MomentCongruenceEntry { part: 1, l: 0, n, m: n, check: chk });
    }
    let slack = Val::Fin(Ratio::new(p as i64, q as i64 - 1));
    for l in 0..=l_max {
        let step = p.pow(l) * (q - 1);
        for n in 0..=n_max {
            let mut m = n + step;
            while m <= m_max {
                let diff = graded(m, &one).sub(&graded(n, &one));
                let chk = graded_check(&diff, Val::int(l as i64) - slack, rel.as_ref())?;
                tally.add(chk.verdict);
                entries.push(MomentCongruenceEntry { part: 2, l, n, m, check: chk });
                if n % (q - 1) == 0 && n > 0 {
                    let inv_m = Elem::from_int(f, m as i64).inv()?;
                    let inv_n = Elem::from_int(f, n as i64).inv()?;
                    let mut x = graded(m, &inv_m).sub(&graded(n, &inv_n));
                    x.add_term(0, &d[0].mul(&inv_n.sub(&inv_m)));
                    let claim = Val::int(l as i64 + 1) - slack.scale(2);
                    let chk = graded_check(&x, claim, rel.as_ref())?;
                    tally.add(chk.verdict);
                    entries.push(MomentCongruenceEntry { part: 3, l, n, m, check: chk });
                }
                m += step;
            }
        }
    }
    Ok(MomentCongruenceReport { n_max, m_max, l_max, entries, tally })
}
