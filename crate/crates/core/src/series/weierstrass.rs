use super::{Coeff, Series};
use crate::arith::{Elem, Val};
use crate::{Error, Result};

/// Weierstrass division of `g` by `f`, where `f` has Weierstrass degree `d`
/// (its coefficient of `X^d` is a unit and lower coefficients are
/// topologically nilpotent). Returns `(q, r)` with `g = q f + r`, `deg r < d`.
///
/// Uses the fixed point `q = τ(f)^{-1} (τ(g) - τ(q α(f)))`, where `α` keeps
/// the part of degree `< d` and `τ` shifts down by `d`; coefficients of `q`
/// beyond the known range are treated as zero. Iterates until the update
/// vanishes at the working precision.
pub fn weierstrass_divide<C: Coeff>(
    g: &Series<C>,
    f: &Series<C>,
    d: usize,
    max_iter: usize,
) -> Result<(Series<C>, Series<C>)> {
    let n = f.order().min(g.order());
    if d >= n {
        return Err(Error::InvalidInput("Weierstrass degree exceeds series order".into()));
    }
    let zero = f.zero_coeff().clone();
    let alpha = |s: &Series<C>| Series::new(s.coeffs()[..d.min(s.order())].to_vec(), s.order(), &zero);
    let tau = |s: &Series<C>| Series::new(s.coeffs()[d.min(s.order())..].to_vec(), s.order() - d, &zero);
    let f = f.truncate(n);
    let tf_inv = tau(&f).inverse()?;
    let a = alpha(&f);
    let tg = tau(&g.truncate(n));
    let mut q = tg.mul(&tf_inv);
    let mut converged = false;
    for _ in 0..max_iter {
        let qa = q.extend(n).mul(&a);
        let next = tg.sub(&tau(&qa)).mul(&tf_inv);
        let diff = next.sub(&q);
        q = next;
        if Coeff::is_zero(&diff) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Precision("Weierstrass division did not converge".into()));
    }
    let r = g.truncate(n).sub(&q.extend(n).mul(&f.truncate(n)));
    let r = alpha(&r);
    Ok((q, r))
}

/// Weierstrass preparation `f = P · u` with `P` monic of degree `d`
/// (distinguished) and `u` a unit. Returns `(P, u)`; `P` is returned with
/// `d + 1` coefficients and `u` is known modulo `X^{M-d}` for input order `M`.
pub fn weierstrass_prepare<C: Coeff>(f: &Series<C>, d: usize, max_iter: usize) -> Result<(Vec<C>, Series<C>)> {
    let n = f.order();
    let zero = f.zero_coeff().clone();
    let xd = Series::monomial(zero.one_like(), d, n);
    let (q, r) = weierstrass_divide(&xd, f, d, max_iter)?;
    // X^d - r = q f, so f = (X^d - r) q^{-1}
    let mut p: Vec<C> = r.coeffs()[..d].iter().map(|x| x.neg()).collect();
    p.push(zero.one_like());
    let u = q.inverse()?;
    Ok((p, u))
}

/// Weierstrass preparation over `O_K` with sound precision for a truncated
/// integral input. Unknown coefficients beyond the order are assumed
/// integral; with `ρ` the smallest slope `v(f_i)/(d-i)` (`i < d`), the
/// coefficient of `X^j` in `u` is then correct to `ρ(M-d-j)` and `P` to
/// `ρ(M-2d+1)`.
pub fn weierstrass_prepare_padic(f: &Series<Elem>, d: usize, max_iter: usize) -> Result<(Vec<Elem>, Series<Elem>)> {
    let n = f.order();
    if d >= n {
        return Err(Error::InvalidInput("Weierstrass degree exceeds series order".into()));
    }
    if !f.coeff(d).is_unit() || f.coeffs()[..d].iter().any(|c| !c.in_max_ideal()) {
        return Err(Error::InvalidInput(format!("series does not have Weierstrass degree {d} at precision")));
    }
    let rho = f.coeffs()[..d]
        .iter()
        .enumerate()
        .map(|(i, c)| match c.val() {
            Val::Inf => Val::Inf,
            Val::Fin(v) => Val::Fin(v / (d - i) as i64),
        })
        .min()
        .unwrap_or(Val::Inf);
    let (p, u) = weierstrass_prepare(f, d, max_iter)?;
    let (p, u) = match rho {
        Val::Inf => (p, u),
        Val::Fin(r) => {
            let pb = Val::Fin(r * (n as i64 - 2 * d as i64 + 1));
            let p = p.iter().map(|c| c.truncate(pb)).collect();
            let uc = u.coeffs().iter().enumerate().map(|(j, c)| c.truncate(Val::Fin(r * (n - d - j) as i64))).collect();
            (p, Series::new(uc, u.order(), &Elem::zero(f.coeff(0).field())))
        }
    };
    Ok((p, u))
}
