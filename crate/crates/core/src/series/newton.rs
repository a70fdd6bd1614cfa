use super::Coeff;
use crate::{Error, Result};

/// Power sums `p_k = Σ α_i^k` (`k = 0..=kmax`) of the roots of a monic
/// polynomial given low-to-high, by Newton's identities. No division is
/// needed, so this is exact over any coefficient ring.
pub fn newton_power_sums<C: Coeff>(poly: &[C], kmax: usize) -> Result<Vec<C>> {
    let d = poly.len().checked_sub(1).ok_or_else(|| Error::InvalidInput("empty polynomial".into()))?;
    let lead = &poly[d];
    if !lead.sub(&lead.one_like()).is_zero() {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    // e_i-style coefficients: a(i) = coefficient of X^{d-i}
    let a = |i: usize| -> Option<&C> { (i <= d).then(|| &poly[d - i]) };
    let zero = lead.zero_like();
    let mut p: Vec<C> = Vec::with_capacity(kmax + 1);
    p.push(lead.from_i64_like(d as i64));
    for k in 1..=kmax {
        let mut s = match a(k) {
            Some(c) => c.mul_i64(k as i64),
            None => zero.clone(),
        };
        for i in 1..k.min(d + 1) {
            let c = a(i).unwrap();
            if c.is_zero() {
                continue;
            }
            s = s.add(&c.mul(&p[k - i]));
        }
        p.push(s.neg());
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn power_sums_of_known_roots() {
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let poly = vec![q(-6), q(11), q(-6), q(1)];
        let p = newton_power_sums(&poly, 5).unwrap();
        for k in 0..=5u32 {
            assert_eq!(p[k as usize], q(1i64.pow(k) + 2i64.pow(k) + 3i64.pow(k)));
        }
    }
}
