//! Valuations of the period and of the extremal factorial quotients
//! `γ̄(k)`, `γ̲(k)`, `γ̄[l,n]`, `γ̲[l,n]`.
//!
//! Everything here is a valuation (`v(p) = 1`): `v(m!/ϖ^m) = v_p(m!) - m s`
//! with `s = 1/(p-1) - 1/(e(q-1))`. Absolute-value maxima become valuation
//! minima and vice versa.

use num_rational::Ratio;
use serde::Serialize;

use crate::arith::int::legendre_factorial_valuation;
use crate::arith::Val;
use crate::{Error, Result};

type Q = Ratio<i64>;

/// Parameters `(p, e, h)` of the tower and the derived period valuation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma {
    pub p: u64,
    pub e: u64,
    pub h: u32,
    pub q: u64,
}

impl Gamma {
    pub fn new(p: u64, e: u64, h: u32) -> Result<Gamma> {
        if !crate::arith::int::is_prime(p) || e == 0 || h == 0 {
            return Err(Error::InvalidInput(format!("bad parameters p={p}, e={e}, h={h}")));
        }
        let q = p
            .checked_pow(h)
            .ok_or_else(|| Error::InvalidInput("q = p^h overflows".into()))?;
        Ok(Gamma { p, e, h, q })
    }

    /// `s = 1/(p-1) - 1/(e(q-1))`, the valuation of the period.
    pub fn s(&self) -> Q {
        Q::new(1, self.p as i64 - 1) - Q::new(1, (self.e * (self.q - 1)) as i64)
    }

    /// `v(m!/ϖ^m)`.
    pub fn w(&self, m: u64) -> Q {
        Q::from_integer(legendre_factorial_valuation(m, self.p)) - self.s() * m as i64
    }

    /// Lower bound for `w(m')` valid for every `m' >= p^j`, when the scan may
    /// stop at the power `p^j`.
    fn tail_floor(&self, j: u32) -> Option<Q> {
        let pj = self.p.checked_pow(j)?;
        // m/(e(q-1)) - (j+1) is a lower bound for w(m) on [p^j, p^{j+1});
        // it increases with j once p^j (p-1) >= e(q-1).
        if pj * (self.p - 1) < self.e * (self.q - 1) {
            return None;
        }
        Some(Q::new(pj as i64, (self.e * (self.q - 1)) as i64) - Q::from_integer(j as i64 + 1))
    }

    /// `v(γ̄(k)) = min_{m >= k} w(m)` and the smallest minimizing `m`.
    ///
    /// The scan stops at the first power `p^j > k` beyond which the
    /// digit-sum bound `w(m) >= m/(e(q-1)) - (⌊log_p m⌋ + 1)` exceeds the
    /// incumbent.
    pub fn upper(&self, k: u64) -> (Q, u64) {
        let mut best = self.w(k);
        let mut arg = k;
        let mut m = k + 1;
        let mut j = 0u32;
        let mut next_pow = 1u64;
        while next_pow <= k {
            next_pow *= self.p;
            j += 1;
        }
        loop {
            if m == next_pow {
                if let Some(f) = self.tail_floor(j) {
                    if f > best {
                        return (best, arg);
                    }
                }
                next_pow *= self.p;
                j += 1;
            }
            let v = self.w(m);
            if v < best {
                best = v;
                arg = m;
            }
            m += 1;
        }
    }

    /// `v(γ̲(k)) = max_{0 <= m <= k} w(m)` and the smallest maximizing `m`.
    pub fn lower(&self, k: u64) -> (Q, u64) {
        let mut best = self.w(0);
        let mut arg = 0;
        for m in 1..=k {
            let v = self.w(m);
            if v > best {
                best = v;
                arg = m;
            }
        }
        (best, arg)
    }

    pub fn upper_val(&self, k: u64) -> Val {
        Val::Fin(self.upper(k).0)
    }

    pub fn lower_val(&self, k: u64) -> Val {
        Val::Fin(self.lower(k).0)
    }

    /// `(v(γ̄[l,n]), v(γ̲[l,n]))`. For `l > n` the conventions `|γ̄| = 0`
    /// and `|γ̲| = ∞` give `Inf` and `None` (valuation `-∞`).
    pub fn range(&self, l: u64, n: u64) -> (Val, Option<Val>) {
        if l > n {
            return (Val::Inf, None);
        }
        let ws: Vec<Q> = (l..=n).map(|m| self.w(m)).collect();
        let lo = *ws.iter().min().unwrap();
        let hi = *ws.iter().max().unwrap();
        (Val::Fin(lo), Some(Val::Fin(hi)))
    }

    /// Precomputed table for `k <= kmax`.
    pub fn table(&self, kmax: u64) -> GammaTable {
        let rows = (0..=kmax)
            .map(|k| {
                let (u, um) = self.upper(k);
                let (l, lm) = self.lower(k);
                GammaRow { k, upper: Val::Fin(u), argmin: um, lower: Val::Fin(l), argmax: lm }
            })
            .collect();
        GammaTable { params: *self, rows }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaRow {
    pub k: u64,
    /// `v(γ̄(k))`
    pub upper: Val,
    pub argmin: u64,
    /// `v(γ̲(k))`
    pub lower: Val,
    pub argmax: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaTable {
    pub params: Gamma,
    pub rows: Vec<GammaRow>,
}

impl GammaTable {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,v_upper,argmin,v_lower,argmax\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{},{}\n", r.k, r.upper, r.argmin, r.lower, r.argmax));
        }
        s
    }
}

/// Result of checking a family of statements: counts and the first failures.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
    pub examples: Vec<String>,
}

impl Check {
    pub fn new(name: &str) -> Check {
        Check { name: name.into(), ..Default::default() }
    }

    pub fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < 10 {
                self.examples.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaPropsReport {
    pub params: Gamma,
    pub kmax: u64,
    pub checks: Vec<Check>,
}

impl GammaPropsReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks parts i)–iv) of the monotonicity proposition for `k <= kmax` and
/// all compositions `k_1 + … + k_n` with `n <= 3`, `k_i <= kmax`.
///
/// Part iv) is checked as literally stated (`v(γ̲(k)) <= k/(e(q-1)) - 1/(p-1)`)
/// and in the corrected form `v(γ̲(k)) <= max(0, k/(e(q-1)) - 1/(p-1))`: the
/// literal bound fails whenever the maximum is attained at `m = 0`.
pub fn gamma_properties_check(g: &Gamma, kmax: u64) -> GammaPropsReport {
    let lim = 3 * kmax;
    let up: Vec<Q> = (0..=lim).map(|k| g.upper(k).0).collect();
    let lo: Vec<Q> = {
        let mut v = Vec::with_capacity(lim as usize + 1);
        let mut best = g.w(0);
        for m in 0..=lim {
            best = best.max(g.w(m));
            v.push(best);
        }
        v
    };
    let mut mono = Check::new("i_monotone");
    let mut ii_a = Check::new("ii_lower_above_upper");
    let mut ii_b = Check::new("ii_upper_vs_lower");
    let mut iii_l = Check::new("iii_lower_subadditive");
    let mut iii_u = Check::new("iii_upper_subadditive");
    let mut iii_u2 = Check::new("iii_upper_chain");
    let mut iv_nonneg = Check::new("iv_lower_nonnegative");
    let mut iv_lit = Check::new("iv_literal");
    let mut iv_cor = Check::new("iv_corrected");
    let c = Q::new(1, (g.e * (g.q - 1)) as i64);
    let pinv = Q::new(1, g.p as i64 - 1);
    for k in 0..=kmax as usize {
        if k > 0 {
            mono.record(up[k] >= up[k - 1] && lo[k] >= lo[k - 1], || format!("k={k}"));
        }
        ii_a.record(lo[k] >= up[k], || format!("k={k}"));
        ii_b.record(up[k] >= up[0] + lo[k], || format!("k={k}"));
        iv_nonneg.record(lo[k] >= Q::from_integer(0), || format!("k={k}"));
        let b = c * k as i64 - pinv;
        iv_lit.record(lo[k] <= b, || format!("k={k}: v={} > {}", lo[k], b));
        iv_cor.record(lo[k] <= b.max(Q::from_integer(0)), || format!("k={k}"));
    }
    let kk = kmax as usize;
    for k1 in 0..=kk {
        for k2 in 0..=kk {
            let s2 = k1 + k2;
            iii_l.record(lo[s2] >= lo[k1] + lo[k2], || format!("({k1},{k2})"));
            iii_u.record(up[s2] >= up[0] + lo[k1] + lo[k2], || format!("({k1},{k2})"));
            iii_u2.record(up[0] + lo[k1] + lo[k2] >= up[0] + up[k1] + up[k2], || format!("({k1},{k2})"));
            for k3 in 0..=kk {
                let s3 = s2 + k3;
                iii_l.record(lo[s3] >= lo[k1] + lo[k2] + lo[k3], || format!("({k1},{k2},{k3})"));
                iii_u.record(up[s3] >= up[0] + lo[k1] + lo[k2] + lo[k3], || format!("({k1},{k2},{k3})"));
            }
        }
    }
    GammaPropsReport {
        params: *g,
        kmax,
        checks: vec![mono, ii_a, ii_b, iii_l, iii_u, iii_u2, iv_nonneg, iv_lit, iv_cor],
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocationReport {
    pub params: Gamma,
    pub applicable: bool,
    pub n_max: u64,
    /// `|n!/ϖ^n| > 1` for `0 < n < q`
    pub part_i: Check,
    /// argmax of `γ̲(n)` is `[n/q]q`
    pub part_ii: Check,
    /// argmin of `γ̄(n)` is `[n/q]q + q - 1`, attained uniquely
    pub part_iii: Check,
}

impl LocationReport {
    pub fn passed(&self) -> bool {
        self.applicable && self.part_i.passed() && self.part_ii.passed() && self.part_iii.passed()
    }
}

/// Compares scanned argmin/argmax locations with the explicit formulas;
/// applicable when `e <= p-1` and `(e, h) != (1, 1)`.
pub fn explicit_location_check(g: &Gamma, n_max: u64) -> LocationReport {
    let applicable = g.e < g.p && (g.e > 1 || g.h > 1);
    let mut r = LocationReport {
        params: *g,
        applicable,
        n_max,
        part_i: Check::new("i"),
        part_ii: Check::new("ii"),
        part_iii: Check::new("iii"),
    };
    if !applicable {
        return r;
    }
    for n in 1..g.q {
        r.part_i.record(g.w(n) < Q::from_integer(0), || format!("n={n}"));
    }
    for n in 0..=n_max {
        let n0 = n / g.q * g.q;
        let n1 = n0 + g.q - 1;
        let (lv, lm) = g.lower(n);
        let unique_lo = (0..=n).filter(|&m| g.w(m) == lv).count() == 1;
        r.part_ii.record(lm == n0 && unique_lo, || format!("n={n}: argmax {lm}, expected {n0}"));
        let (uv, um) = g.upper(n);
        let unique_up = (n..=um + 4 * g.q).filter(|&m| g.w(m) == uv).count() == 1;
        r.part_iii.record(um == n1 && unique_up, || format!("n={n}: argmin {um}, expected {n1}"));
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorialVarpiReport {
    pub params: Gamma,
    pub i_max: u64,
    pub inequality: Check,
    /// equality iff `i ≡ -1 mod q`
    pub equality: Check,
    /// the simplified bound when `e <= p-1` or `i < q`, with equality iff `i = q-1`
    pub simplified: Check,
    /// `v(γ̄(0)) = 1/e - h` when `e <= p-1`; `None` otherwise
    pub upper0_matches: Option<bool>,
}

impl FactorialVarpiReport {
    pub fn passed(&self) -> bool {
        self.inequality.passed()
            && self.equality.passed()
            && self.simplified.passed()
            && self.upper0_matches != Some(false)
    }
}

pub fn factorial_varpi_inequality_check(g: &Gamma, i_max: u64) -> FactorialVarpiReport {
    let (p, e, h, q) = (g.p as i64, g.e as i64, g.h as i64, g.q as i64);
    let base = |i: i64| Q::new(i, p - 1) - Q::new(i, e * (q - 1)) - Q::from_integer(h) + Q::new(1, e);
    let mut ineq = Check::new("inequality");
    let mut eq = Check::new("equality_iff_minus_one_mod_q");
    let mut simp = Check::new("simplified");
    for i in 0..=i_max as i64 {
        let a = i / q;
        let rhs = base(i)
            + Q::from_integer(a) * (Q::new(1, e) - Q::new(1, p - 1) + Q::new(1, e * (q - 1)))
            + Q::from_integer(legendre_factorial_valuation(a as u64, g.p));
        let lhs = Q::from_integer(legendre_factorial_valuation(i as u64, g.p));
        ineq.record(lhs >= rhs, || format!("i={i}: {lhs} < {rhs}"));
        eq.record((lhs == rhs) == (i % q == q - 1), || format!("i={i}: lhs={lhs}, rhs={rhs}"));
        if e < p || i < q {
            let b = base(i);
            simp.record(lhs >= b && ((lhs == b) == (i == q - 1)), || format!("i={i}"));
        }
    }
    let upper0_matches = (g.e < g.p).then(|| g.upper(0).0 == Q::new(1, e) - Q::from_integer(h));
    FactorialVarpiReport { params: *g, i_max, inequality: ineq, equality: eq, simplified: simp, upper0_matches }
}
