//! Integer helpers: p-adic valuations of integers and rationals, digit sums,
//! factorial valuations, binomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::Val;

/// `v_p(n)` for a nonzero integer; `None` for zero.
pub fn vp_bigint(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

pub fn vp_i64(n: i64, p: u64) -> Option<i64> {
    vp_bigint(&BigInt::from(n), p)
}

/// `v_p` of a rational, `Val::Inf` for zero.
pub fn vp_rational(r: &BigRational, p: u64) -> Val {
    match vp_bigint(r.numer(), p) {
        None => Val::Inf,
        Some(a) => Val::int(a - vp_bigint(r.denom(), p).unwrap()),
    }
}

/// Sum of base-`p` digits.
pub fn digit_sum(mut m: u64, p: u64) -> u64 {
    let mut s = 0;
    while m > 0 {
        s += m % p;
        m /= p;
    }
    s
}

/// `v_p(m!) = (m - S_p(m)) / (p - 1)`.
pub fn legendre_factorial_valuation(m: u64, p: u64) -> i64 {
    ((m - digit_sum(m, p)) / (p - 1)) as i64
}

pub fn factorial(m: u64) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Generalized binomial `C(x, k)` for an integer (possibly negative) `x`.
pub fn binomial_signed(x: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= x - BigInt::from(i);
    }
    acc / factorial(k)
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer overflow in pow")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn ratio(n: i64, d: i64) -> Ratio<i64> {
    Ratio::new(n, d)
}

pub fn to_i64(n: &BigInt) -> i64 {
    n.to_i64().expect("integer does not fit in i64")
}

/// Outcome of checking both parts of the binomial lemma for one `(k, r)`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BinomLemmaReport {
    pub k: u64,
    pub r: u64,
    pub q: u64,
    /// `C(kq + r, r) ≡ 1 (mod p)`
    pub part_i: bool,
    /// `C(k, q) ∈ [k/q] Z_p`
    pub part_ii: bool,
}

/// Checks `C(kq+r, r) ≡ 1 mod p` and `v_p(C(k, q)) ≥ v_p([k/q])` by exact
/// integer arithmetic. `q` must be a power of `p`.
pub fn binom_lemma_check(k: u64, r: u64, q: u64, p: u64) -> BinomLemmaReport {
    assert!(r < q, "need 0 <= r < q");
    let c = binomial(k * q + r, r);
    let part_i = c.mod_floor(&BigInt::from(p)).is_one();
    let ck = binomial(k, q);
    let part_ii = match (vp_bigint(&ck, p), vp_i64((k / q) as i64, p)) {
        (None, _) => true,
        // [k/q] = 0 only when k < q, where C(k, q) = 0 was handled above
        (Some(_), None) => false,
        (Some(a), Some(b)) => a >= b,
    };
    BinomLemmaReport { k, r, q, part_i, part_ii }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_factorial_valuation(0, 3), 0);
        assert_eq!(legendre_factorial_valuation(10, 3), 4);
        assert_eq!(legendre_factorial_valuation(8, 2), 7);
        assert_eq!(legendre_factorial_valuation(9, 3), 4);
    }

    #[test]
    fn legendre_matches_direct_factorial() {
        for p in [2u64, 3, 5, 7] {
            let mut fact = BigInt::one();
            for m in 0..=500u64 {
                if m > 0 {
                    fact *= m;
                }
                assert_eq!(legendre_factorial_valuation(m, p), vp_bigint(&fact, p).unwrap());
            }
        }
    }

    #[test]
    fn binom_lemma_examples() {
        let r = binom_lemma_check(2, 5, 9, 3);
        assert_eq!(binomial(23, 5), BigInt::from(33649));
        assert!(r.part_i && r.part_ii);
        assert!(binom_lemma_check(3, 0, 9, 3).part_ii);
        let r = binom_lemma_check(6, 0, 4, 2);
        assert_eq!(binomial(6, 4), BigInt::from(15));
        assert!(r.part_ii);
    }

    #[test]
    fn binom_lemma_sweep() {
        for (p, q) in [(2u64, 4u64), (3, 9), (5, 25)] {
            for k in 0..=50 {
                for r in 0..q {
                    let rep = binom_lemma_check(k, r, q, p);
                    assert!(rep.part_i && rep.part_ii, "{rep:?}");
                }
            }
        }
    }

    #[test]
    fn signed_binomial() {
        assert_eq!(binomial_signed(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binomial_signed(&BigInt::from(5), 2), BigInt::from(10));
    }
}
