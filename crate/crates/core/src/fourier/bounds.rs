use num_rational::Ratio;
use serde::Serialize;

use super::{coset_from_moments, pn_table, Distribution, PeriodGraded, PeriodRelation};
use crate::arith::int::{binomial, legendre_factorial_valuation};
use crate::arith::hensel::teichmuller;
use crate::arith::{Elem, Field, Val};
use crate::formal_group::{FormalModule, GroupKind};
use crate::report::{BoundCheck, Tally, Verdict};
use crate::series::Series;
use crate::trace::TorsionLevel;
use crate::Result;

/// `v(‖φ‖_N) = min_k v(c_k) + v(γ̄([k/q^N]))`.
#[derive(Clone, Debug, Serialize)]
pub struct NormPhi {
    pub level: u32,
    pub value: Val,
    pub argmin: Option<usize>,
    /// The unknown coefficients cannot lower the minimum.
    pub certified: bool,
}

impl Distribution {
    pub fn norm_phi_n(&self, level: u32) -> Result<NormPhi> {
        let g = self.group();
        let gm = g.gamma()?;
        let qn = g.q().pow(level);
        let mut value = Val::Inf;
        let mut argmin = None;
        for (k, c) in self.phi().coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.val() + gm.upper_val(k as u64 / qn);
            if v < value {
                value = v;
                argmin = Some(k);
            }
        }
        let certified = if self.is_polynomial() {
            true
        } else {
            let m = self.phi().order() as u64;
            self.coefficient_floor() + gm.upper_val(m / qn) >= value
        };
        Ok(NormPhi { level, value, argmin, certified })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MainBoundEntry {
    pub level: u32,
    pub coset: String,
    pub k: usize,
    pub d: usize,
    pub lower_bound: Val,
    pub exact_valuation: Option<Val>,
    pub stint: BoundCheck,
    pub stint3: BoundCheck,
    pub stint1: BoundCheck,
    pub corollary: BoundCheck,
    /// The sharper forms for `e <= p - 1`.
    pub stint4: Option<BoundCheck>,
    pub stint2: Option<BoundCheck>,
    pub corollary2: Option<BoundCheck>,
}

impl MainBoundEntry {
    pub(crate) fn checks(&self) -> impl Iterator<Item = &BoundCheck> {
        [Some(&self.stint), Some(&self.stint3), Some(&self.stint1), Some(&self.corollary), self.stint4.as_ref(), self.stint2.as_ref(), self.corollary2.as_ref()]
            .into_iter()
            .flatten()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MainBoundReport {
    pub d_max: usize,
    pub k_max: usize,
    pub levels: Vec<u32>,
    pub tally: Tally,
    pub entries: Vec<MainBoundEntry>,
}

/// Rational bounds `lo <= log_p k <= hi`, exact when `k` is a power of `p`.
fn log_bracket(k: u64, p: u64) -> (Ratio<i64>, Ratio<i64>) {
    let mut j = 0;
    let mut x = 1u64;
    while x < k {
        j += 1;
        x = x.saturating_mul(p);
    }
    if x == k {
        return (Ratio::from_integer(j), Ratio::from_integer(j));
    }
    let l = (k as f64).ln() / (p as f64).ln();
    let scale = 1_000_000f64;
    (Ratio::new(((l - 1e-9) * scale).floor() as i64, scale as i64), Ratio::new(((l + 1e-9) * scale).ceil() as i64, scale as i64))
}

/// A claim known only up to an interval `weak <= claim <= strong`.
#[derive(Clone, Copy)]
struct Bracket {
    strong: Val,
    weak: Val,
}

/// Certified against the stronger form, violated only against the weaker.
fn check_bracket(value: &PeriodGraded, b: Bracket) -> BoundCheck {
    let strong = value.check(b.strong);
    if strong.verdict == Verdict::Certified || b.strong == b.weak {
        return strong;
    }
    let weak = value.check(b.weak);
    if weak.verdict == Verdict::Violated {
        return weak;
    }
    BoundCheck { verdict: Verdict::Inconclusive, ..strong }
}

/// Claimed valuations for `f = (x - a)^d`, `φ = t^k`, at level `N`.
struct Claims {
    stint: Val,
    stint3: Val,
    stint1: Val,
    corollary: Bracket,
    stint4: Option<Val>,
    stint2: Option<Val>,
    corollary2: Option<Bracket>,
}

fn claims(g: &FormalModule, level: u32, k: usize, d: usize) -> Result<Claims> {
    let gm = g.gamma()?;
    let f = g.field();
    let (p, e, h) = (f.p() as i64, f.e() as i64, f.h() as i64);
    let q = g.q() as i64;
    let nl = level as i64;
    let s = gm.s();
    let kq = k as u64 / g.q().pow(level);
    let k0 = kq.saturating_sub(d as u64) as i64;
    let norm_f = Ratio::new(d as i64 * nl, e);
    let pi_over_q = Ratio::new(nl, e) - nl * h;
    let g0 = gm.upper(0).0;
    let gk = gm.upper(kq).0;
    let sharp = e < p;
    let stint = gm.range(0, d as u64).0 + Val::Fin(pi_over_q + norm_f);
    let stint3 = g0 + Ratio::new(k0 + nl, e) + s * k0 - legendre_factorial_valuation(k0 as u64, f.p()) - nl * h + norm_f + gk;
    let stint4 = pi_over_q + norm_f + gk;
    // ‖t^k‖_N = v(γ̄([k/q^N]))
    let stint1 = g0 + pi_over_q + norm_f + gk;
    // the factor k in ‖φ‖_{B'} is read as max(k, 1)
    let r = Ratio::new(1, e * q.pow(level) * (q - 1));
    let (lo, hi) = log_bracket(k.max(1) as u64, p as u64);
    let constant = Ratio::new(p, p - 1) + Ratio::new(1, e * (q - 1));
    let base = -constant + Ratio::new(nl, e) + norm_f + r * k as i64;
    let cor2 = Bracket { strong: Val::Fin(base - lo), weak: Val::Fin(base - hi) };
    let cor1 = Bracket { strong: Val::Fin(base - lo + g0), weak: Val::Fin(base - hi + g0) };
    Ok(Claims {
        stint,
        stint3: Val::Fin(stint3),
        stint1: Val::Fin(stint1),
        corollary: cor1,
        stint4: sharp.then_some(Val::Fin(stint4)),
        stint2: sharp.then_some(Val::Fin(stint4)),
        corollary2: sharp.then_some(cor2),
    })
}

/// Sums `Σ_{t_N} (t ⊕ t_N)^k` for `k <= k_max`, modulo `t^order`.
fn conjugate_sums(lv: &TorsionLevel, k_max: usize, order: usize) -> Result<Vec<Series<Elem>>> {
    lv.conjugate_power_sums(k_max, order)
}

/// Certifies the coset-integral estimates for `φ = t^k` and
/// `f = (x - a)^d` over `k <= k_max`, `d <= d_max`, `N ∈ levels`. The cosets
/// are `a = 0` and `a = π^N` in general and every `0 <= a < p^N` on the
/// multiplicative group. Power sums are exact, so only the field precision
/// limits the verdicts.
pub fn verify_main_bounds(g: &FormalModule, d_max: usize, k_max: usize, levels: &[u32]) -> Result<MainBoundReport> {
    let field = g.field();
    let mut tally = Tally::default();
    let mut entries = vec![];
    let mult = g.kind() == GroupKind::Multiplicative;
    for &level in levels {
        let lv = TorsionLevel::new(g, level, d_max + 2)?;
        let pin = g.pi().pow(level as u64);
        let cosets: Vec<(String, i64, Elem)> = if mult {
            (0..field.p().pow(level) as i64).map(|a| (a.to_string(), a, Elem::from_int(field, a))).collect()
        } else {
            vec![("0".to_string(), 0, Elem::zero(field)), (format!("pi^{level}"), 0, pin.clone())]
        };
        let twist_max = if mult { field.p().pow(level) as usize } else { 0 };
        let sums = conjugate_sums(&lv, k_max + twist_max, d_max + 1)?;
        let mut claim_cache = vec![];
        for k in 0..=k_max {
            for d in 0..=d_max {
                claim_cache.push(claims(g, level, k, d)?);
            }
        }
        for (label, ai, a) in &cosets {
            // multiplicative cosets use the representative b = a - p^N <= 0 and the twist (1+t)^{-b}
            let pn = field.p().pow(level) as i64;
            let tw = if mult && *ai != 0 { (pn - ai) as u64 } else { 0 };
            for k in 0..=k_max {
                let mut s = sums[k].clone();
                for i in 1..=tw {
                    s = s.add(&sums[k + i as usize].scale(&Elem::from_bigint(field, &binomial(tw, i))));
                }
                let moments = g.derive_at_zero(&s, d_max);
                for d in 0..=d_max {
                    let mut f = vec![Elem::zero(field); d + 1];
                    f[d] = Elem::one(field);
                    let value = if mult {
                        let shift = if tw == 0 { 0 } else { -pn };
                        let fb = super::recenter(&f, &Elem::from_int(field, shift));
                        coset_from_moments(g, level, &Elem::zero(field), &fb, &moments)?
                    } else {
                        coset_from_moments(g, level, a, &f, &moments)?
                    };
                    let c = &claim_cache[k * (d_max + 1) + d];
                    let entry = judge_entry(&value, c, level, label, k, d);
                    for ch in entry.checks() {
                        tally.add(ch.verdict);
                    }
                    entries.push(entry);
                }
            }
        }
    }
    Ok(MainBoundReport { d_max, k_max, levels: levels.to_vec(), tally, entries })
}

fn judge_entry(value: &PeriodGraded, c: &Claims, level: u32, label: &str, k: usize, d: usize) -> MainBoundEntry {
    MainBoundEntry {
        level,
        coset: label.to_string(),
        k,
        d,
        lower_bound: value.valuation_lower_bound(),
        exact_valuation: value.exact_valuation(),
        stint: value.check(c.stint),
        stint3: value.check(c.stint3),
        stint1: value.check(c.stint1),
        corollary: check_bracket(value, c.corollary),
        stint4: c.stint4.map(|v| value.check(v)),
        stint2: c.stint2.map(|v| value.check(v)),
        corollary2: c.corollary2.map(|b| check_bracket(value, b)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PnNormEntry {
    pub n: usize,
    pub level: u32,
    /// `v(‖P_n(xϖ)‖_{0,N})`, exact.
    pub coset_zero: Val,
    /// Lower bound for `v(‖P_n(xϖ)‖_N)` over all cosets.
    pub norm_lower_bound: Val,
    /// Smallest exactly known coefficient valuation over all cosets, an
    /// upper bound for `v(‖P_n(xϖ)‖_N)`.
    pub norm_upper_bound: Option<Val>,
    /// `‖P_n‖_N <= |γ̲([n/q^N])|^{-1}` asks for at least this valuation.
    pub upper_claim: Val,
    /// The lower norm bound asks for at most this valuation.
    pub lower_claim: Val,
    pub upper: Verdict,
    pub lower: Verdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct PnNormReport {
    pub n_max: usize,
    pub levels: Vec<u32>,
    pub tally: Tally,
    pub entries: Vec<PnNormEntry>,
}

/// Valuation data of one coefficient `Σ_g C_g ϖ^g` over the grades.
struct Coef {
    lower: Val,
    exact: Option<Val>,
}

fn graded_coef(vals: &[(Val, bool)]) -> Coef {
    // (valuation or precision bound, known nonzero)
    let lower = vals.iter().map(|x| x.0).fold(Val::Inf, Val::min);
    let mut known: Vec<Val> = vals.iter().filter(|x| x.1).map(|x| x.0).collect();
    known.sort();
    let unknown = vals.iter().filter(|x| !x.1).map(|x| x.0).fold(Val::Inf, Val::min);
    let exact = match known.as_slice() {
        [v] => (*v < unknown).then_some(*v),
        [v, w, ..] => (v < w && *v < unknown).then_some(*v),
        [] => None,
    };
    Coef { lower, exact }
}

/// Checks both norm bounds for `P_n(xϖ)` at level `N`. On a coset
/// `a + π^N O_K` the coefficient of `(x - a)^k` is
/// `ϖ^k Σ_g p_{n,g} C(g,k) (aϖ)^{g-k}`; each grade is a single product, so
/// its valuation depends only on `v(a)` and is exact. For the
/// multiplicative group the coefficients are computed over `Q`.
pub fn pn_norm_check(g: &FormalModule, n_max: usize, levels: &[u32]) -> Result<PnNormReport> {
    let gm = g.gamma()?;
    let f = g.field();
    let (p, e, h) = (f.p() as i64, f.e() as i64, f.h() as i64);
    let mult = g.kind() == GroupKind::Multiplicative;
    let vc = if e < p { Val::zero() } else { gm.upper_val(0) };
    let table = if mult { vec![] } else { pn_table(g, n_max)? };
    let bp: Vec<_> = if mult { (0..=n_max).map(super::binomial_polynomial).collect() } else { vec![] };
    let s = gm.s();
    let rel = PeriodRelation::for_group(g)?;
    let graded = PeriodGraded::for_group(g)?;
    let mut tally = Tally::default();
    let mut entries = vec![];
    for &level in levels {
        let step = Ratio::new(level as i64, e);
        let mut zero_min = Val::Inf;
        let reps = if mult || rel.is_none() { vec![] } else { coset_units(f, level)? };
        for n in 0..=n_max {
            let kq = n as u64 / g.q().pow(level);
            let upper_claim = -gm.lower_val(kq);
            let lower_claim = Val::Fin(Ratio::from_integer(level as i64 * h) - step) - gm.upper_val(kq) - vc;
            let (coset_zero, lower_bound, exact_min, all_exact) = if mult {
                let (zero, all) = super::mahler::binomial_norms(f.p(), level, n, &bp);
                (zero, all, Some(all), true)
            } else {
                let row = &table[n];
                let mut lower_bound = Val::Inf;
                let mut exact_min: Option<Val> = None;
                let mut all_exact = true;
                let mut coset_zero = Val::Inf;
                // v(a) = i/e for 0 <= i < N e, and a = 0
                let classes: Vec<Option<Ratio<i64>>> = (0..level as i64 * e).map(|i| Some(Ratio::new(i, e))).chain([None]).collect();
                for va in classes {
                    for k in 0..=n {
                        let mut vals = vec![];
                        for (gr, c) in row.iter().enumerate().skip(k) {
                            let shift = match va {
                                None if gr > k => continue,
                                None => Ratio::from_integer(0),
                                Some(v) => v * (gr - k) as i64,
                            };
                            let b = crate::arith::int::vp_bigint(&binomial(gr as u64, k as u64), f.p()).unwrap_or(0);
                            let add = Val::Fin(shift + s * gr as i64 + step * k as i64 + b);
                            if c.is_zero() {
                                vals.push((c.precision() + add, false));
                            } else {
                                vals.push((c.val() + add, true));
                            }
                        }
                        let cf = graded_coef(&vals);
                        lower_bound = lower_bound.min(cf.lower);
                        match cf.exact {
                            Some(v) => exact_min = Some(exact_min.map_or(v, |m| m.min(v))),
                            None => all_exact &= cf.lower.is_inf() && vals.is_empty(),
                        }
                        if va.is_none() {
                            coset_zero = coset_zero.min(cf.exact.unwrap_or(cf.lower));
                        }
                    }
                }
                (coset_zero, lower_bound, exact_min, all_exact)
            };
            zero_min = zero_min.min(coset_zero);
            // ‖P_n‖_{a,N} <= max_{m<=n} ‖P_m‖_{0,N} by the addition law,
            // since the coefficients P_i(aϖ) of exp(aϖλ) are integral.
            let upper = if lower_bound >= upper_claim || zero_min >= upper_claim {
                Verdict::Certified
            } else if exact_min == Some(lower_bound) || coset_zero < upper_claim {
                Verdict::Violated
            } else {
                Verdict::Inconclusive
            };
            let mut exact_min = exact_min;
            if !matches!(exact_min, Some(v) if v <= lower_claim) {
                if let (Some(rel), false) = (&rel, mult) {
                    if let Some(v) = reduced_witness(f, &table[n], &reps, rel, &graded, level, lower_claim)? {
                        exact_min = Some(exact_min.map_or(v, |m| m.min(v)));
                    }
                }
            }
            let lower = match exact_min {
                Some(v) if v <= lower_claim => Verdict::Certified,
                Some(_) if all_exact => Verdict::Violated,
                _ => Verdict::Inconclusive,
            };
            tally.add(upper);
            tally.add(lower);
            entries.push(PnNormEntry { n, level, coset_zero, norm_lower_bound: lower_bound, norm_upper_bound: exact_min, upper_claim, lower_claim, upper, lower });
        }
    }
    Ok(PnNormReport { n_max, levels: levels.to_vec(), tally, entries })
}

/// `ζ π^i` for the Teichmüller representatives `ζ` of `F_q^×` and
/// `0 <= i < N e`.
fn coset_units(f: &Field, level: u32) -> Result<Vec<(i64, Elem)>> {
    let (p, h) = (f.p(), f.h());
    let pi = Elem::uniformizer(f);
    let mut out = vec![];
    for idx in 1..p.pow(h as u32) {
        let residue: Vec<u64> = (0..h).map(|j| idx / p.pow(j as u32) % p).collect();
        let z = teichmuller(f, &residue)?;
        for i in 0..(level as i64 * f.e() as i64) {
            out.push((i, z.mul(&pi.pow(i as u64))));
        }
    }
    Ok(out)
}

/// Searches the unit cosets for a coefficient of `P_n(xϖ)` whose valuation
/// is determined after reducing modulo the period relation and is at most
/// `target`.
fn reduced_witness(f: &Field, row: &[Elem], reps: &[(i64, Elem)], rel: &PeriodRelation, graded: &PeriodGraded, level: u32, target: Val) -> Result<Option<Val>> {
    let e = f.e() as i64;
    let mut best: Option<Val> = None;
    for (_, a) in reps {
        let mut apow = vec![Elem::one(f)];
        for _ in 1..row.len() {
            apow.push(apow.last().unwrap().mul(a));
        }
        for k in 0..row.len() {
            let mut c = graded.clone();
            for (gr, x) in row.iter().enumerate().skip(k) {
                if x.is_zero() {
                    continue;
                }
                let b = Elem::from_bigint(f, &binomial(gr as u64, k as u64));
                c.add_term(gr as i64, &x.mul(&b).mul(&apow[gr - k]));
            }
            if let (_, Some(v)) = c.reduced_valuation(rel)? {
                let v = v + Val::Fin(Ratio::new(level as i64 * k as i64, e));
                best = Some(best.map_or(v, |m: Val| m.min(v)));
                if v <= target {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}
