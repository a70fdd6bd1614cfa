use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{binomial_polynomial, log_one_plus_rational, pn_table_rational, Distribution, LocallyAnalyticFunction, PeriodGraded};
use crate::arith::int::{binomial, binomial_signed, factorial, vp_rational};
use crate::arith::{Elem, Field, Val};
use crate::formal_group::{FormalModule, GroupKind};
use crate::report::{BoundCheck, Tally};
use crate::trace::TorsionLevel;
use crate::Result;

/// Coefficients `a_n = ∫ f dμ_{t^n}` of `f = Σ a_n P_n(xϖ)`, with the
/// decay check `v(a_n) >= v(γ̄([n/q^N])) + N(1/e - h) + v(c) + v(‖f‖_N)`.
#[derive(Clone, Debug)]
pub struct MahlerExpansion {
    pub level: u32,
    pub coeffs: Vec<PeriodGraded>,
    pub floors: Vec<BoundCheck>,
    pub tally: Tally,
}

impl MahlerExpansion {
    /// `Σ_n a_n C(x, n)` on the multiplicative group, where `P_n(xϖ)` is the
    /// binomial polynomial.
    pub fn eval_binomial(&self, x: u64) -> Option<Elem> {
        let mut acc: Option<Elem> = None;
        for (n, a) in self.coeffs.iter().enumerate() {
            let v = a.plain()?;
            let term = v.mul(&Elem::from_bigint(v.field(), &binomial(x, n as u64)));
            acc = Some(match acc {
                None => term,
                Some(s) => s.add(&term),
            });
        }
        acc
    }
}

/// Mahler coefficients of `f` for `n <= n_max` at `f`'s level.
pub fn mahler_coefficients(g: &FormalModule, f: &LocallyAnalyticFunction, n_max: usize) -> Result<MahlerExpansion> {
    let field = g.field();
    let level = f.level();
    let deg = f.pieces().iter().map(|(_, c)| c.len()).max().unwrap_or(1);
    let lv = TorsionLevel::new(g, level, deg + 2)?;
    let gm = g.gamma()?;
    let (p, e, h) = (field.p() as i64, field.e() as i64, field.h() as i64);
    let vc = if e < p { Val::zero() } else { gm.upper_val(0) };
    let base = Val::frac(level as i64, e) - Val::int(level as i64 * h) + vc + f.norm();
    let mut coeffs = vec![];
    let mut floors = vec![];
    let mut tally = Tally::default();
    for n in 0..=n_max {
        let mu = Distribution::monomial(g, n);
        let a = f.integrate(&lv, &mu)?;
        let floor = gm.upper_val(n as u64 / g.q().pow(level)) + base;
        let chk = a.check(floor);
        tally.add(chk.verdict);
        floors.push(chk);
        coeffs.push(a);
    }
    Ok(MahlerExpansion { level, coeffs, floors, tally })
}

#[derive(Clone, Debug, Serialize)]
pub struct AmiceNorm {
    pub level: u32,
    pub n: usize,
    pub scale_valuation: i64,
    pub norm_valuation: Val,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reconstruction {
    pub name: String,
    pub terms: usize,
    pub points: usize,
    /// Smallest valuation of `f(x) - Σ a_n C(x,n)` over the sample points.
    pub error_valuation: Val,
    pub target: Val,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AmiceReport {
    pub p: u64,
    /// `P_n(X) = C(X, n)` as rational polynomials for `n <=` this bound.
    pub pn_checked: usize,
    pub pn_mismatches: Vec<usize>,
    pub norms: Vec<AmiceNorm>,
    pub reconstructions: Vec<Reconstruction>,
}

impl AmiceReport {
    pub fn passed(&self) -> bool {
        self.pn_mismatches.is_empty()
            && self.norms.iter().all(|x| x.norm_valuation == Val::zero())
            && self.reconstructions.iter().all(|r| r.passed)
    }
}

/// `v(‖C(x, n)‖_{0,N})` and `v(‖C(x, n)‖_N)`: minima over the coefficients
/// of `C(a + p^N z, n)` in `z`, computed over `Q`.
pub(crate) fn binomial_norms(p: u64, level: u32, n: usize, bp: &[Vec<BigRational>]) -> (Val, Val) {
    let pn = p.pow(level);
    let mut best = Val::Inf;
    let mut zero = Val::Inf;
    for a in 0..pn {
        let ab = BigInt::from(a);
        // C(a + y, n) = Σ_i C(a, n - i) C(y, i)
        let mut c = vec![BigRational::zero(); n + 1];
        for i in 0..=n {
            let w = binomial_signed(&ab, (n - i) as u64);
            if w.is_zero() {
                continue;
            }
            let w = BigRational::from_integer(w);
            for (k, x) in bp[i].iter().enumerate() {
                c[k] += &w * x;
            }
        }
        for (k, x) in c.iter().enumerate() {
            let v = vp_rational(x, p) + Val::int(k as i64 * level as i64);
            best = best.min(v);
            if a == 0 {
                zero = zero.min(v);
            }
        }
    }
    (zero, best)
}

/// `v(‖[n/p^N]! C(x, n)‖_N)` and the valuation of the scale.
fn amice_norm(p: u64, level: u32, n: usize, bp: &[Vec<BigRational>]) -> (i64, Val) {
    let scale = crate::arith::int::legendre_factorial_valuation(n as u64 / p.pow(level), p);
    (scale, binomial_norms(p, level, n, bp).1 + Val::int(scale))
}

/// Checks on the multiplicative group over `field = Q_p`: `P_n` is the
/// binomial polynomial for `n <= pn_max`, the scaled binomials
/// `[n/p^N]! C(x, n)` have unit norm for `n <= n_max` and `N ∈ levels`, and
/// Mahler expansions of test functions at level 1 reproduce them at
/// `0 <= x <= 5p`.
pub fn amice_basis_check(field: &Field, pn_max: usize, n_max: usize, levels: &[u32], terms: usize) -> Result<AmiceReport> {
    let p = field.p();
    let pn = pn_table_rational(&log_one_plus_rational(pn_max + 1), pn_max);
    let pn_mismatches = (0..=pn_max).filter(|&n| pn[n] != binomial_polynomial(n)).collect();
    let bp: Vec<Vec<BigRational>> = (0..=n_max).map(binomial_polynomial).collect();
    let mut norms = vec![];
    for &level in levels {
        for n in 0..=n_max {
            let (scale_valuation, norm_valuation) = amice_norm(p, level, n, &bp);
            norms.push(AmiceNorm { level, n, scale_valuation, norm_valuation });
        }
    }
    let g = FormalModule::multiplicative(field, terms + 2)?;
    debug_assert_eq!(g.kind(), GroupKind::Multiplicative);
    let one = Elem::one(field);
    let zero = Elem::zero(field);
    let square = vec![zero.clone(), zero.clone(), one.clone()];
    let cases = vec![
        ("x^2".to_string(), LocallyAnalyticFunction::from_polynomial_qp(field, 1, &square)?),
        (
            "p (x-1)^2 on 1+pZ_p".to_string(),
            LocallyAnalyticFunction::new(1).with_piece(Elem::from_int(field, 1), vec![zero.clone(), zero.clone(), Elem::from_int(field, p as i64)]),
        ),
        ("indicator of pZ_p".to_string(), LocallyAnalyticFunction::new(1).with_piece(zero.clone(), vec![one.clone()])),
    ];
    let target = field.precision() - Val::int(4);
    let mut reconstructions = vec![];
    for (name, f) in cases {
        let m = mahler_coefficients(&g, &f, terms)?;
        let points = 5 * p as usize + 1;
        let mut err = Val::Inf;
        let mut ok = true;
        for x in 0..points as u64 {
            let (Some(v), Ok(fx)) = (m.eval_binomial(x), f.eval_int(x as i64)) else {
                ok = false;
                continue;
            };
            let d = v.sub(&fx);
            ok &= BoundCheck::for_elem(&d, target).ok();
            err = err.min(d.val());
        }
        reconstructions.push(Reconstruction { name, terms, points, error_valuation: err, target, passed: ok });
    }
    Ok(AmiceReport { p, pn_checked: pn_max, pn_mismatches, norms, reconstructions })
}

/// `[n/p^N]!` as an integer.
pub fn amice_scale(p: u64, level: u32, n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    factorial(n as u64 / p.pow(level))
}
