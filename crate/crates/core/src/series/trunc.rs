use super::Coeff;
use crate::{Error, Result};

/// A power series known modulo `t^order`, where `order = coeffs.len()`.
///
/// Polynomials are represented with an order exceeding their degree.
#[derive(Clone, Debug)]
pub struct Series<C> {
    c: Vec<C>,
    zero: C,
}

impl<C: Coeff> Series<C> {
    /// Series with the given leading coefficients, padded with zeros up to `order`.
    pub fn new(mut coeffs: Vec<C>, order: usize, zero: &C) -> Series<C> {
        coeffs.truncate(order);
        coeffs.resize(order, zero.zero_like());
        Series { c: coeffs, zero: zero.zero_like() }
    }

    pub fn zero(zero: &C, order: usize) -> Series<C> {
        Series::new(vec![], order, zero)
    }

    pub fn one(zero: &C, order: usize) -> Series<C> {
        Series::new(vec![zero.one_like()], order, zero)
    }

    pub fn constant(c: C, order: usize) -> Series<C> {
        let z = c.zero_like();
        Series::new(vec![c], order, &z)
    }

    /// The series `t`.
    pub fn var(zero: &C, order: usize) -> Series<C> {
        Series::monomial(zero.one_like(), 1, order)
    }

    pub fn monomial(c: C, k: usize, order: usize) -> Series<C> {
        let z = c.zero_like();
        let mut s = Series::zero(&z, order);
        if k < order {
            s.c[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    pub fn coeffs(&self) -> &[C] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.c[i]
    }

    pub fn get(&self, i: usize) -> Option<&C> {
        self.c.get(i)
    }

    pub fn set(&mut self, i: usize, v: C) {
        if i < self.c.len() {
            self.c[i] = v;
        }
    }

    pub fn zero_coeff(&self) -> &C {
        &self.zero
    }

    /// Index of the first nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.c.iter().rposition(|x| !x.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Series<C> {
        Series::new(self.c.clone(), order.min(self.order()), &self.zero)
    }

    /// Reinterprets as a series of a larger order, padding with zeros. Only
    /// meaningful for polynomials.
    pub fn extend(&self, order: usize) -> Series<C> {
        Series::new(self.c.clone(), order, &self.zero)
    }

    pub fn map<D: Coeff>(&self, zero: &D, f: impl Fn(&C) -> D) -> Series<D> {
        Series { c: self.c.iter().map(f).collect(), zero: zero.zero_like() }
    }

    pub fn add(&self, other: &Series<C>) -> Series<C> {
        let n = self.order().min(other.order());
        let c = (0..n).map(|i| self.c[i].add(&other.c[i])).collect();
        Series { c, zero: self.zero.clone() }
    }

    pub fn sub(&self, other: &Series<C>) -> Series<C> {
        let n = self.order().min(other.order());
        let c = (0..n).map(|i| self.c[i].sub(&other.c[i])).collect();
        Series { c, zero: self.zero.clone() }
    }

    pub fn neg(&self) -> Series<C> {
        Series { c: self.c.iter().map(|x| x.neg()).collect(), zero: self.zero.clone() }
    }

    pub fn scale(&self, a: &C) -> Series<C> {
        Series { c: self.c.iter().map(|x| a.mul(x)).collect(), zero: self.zero.clone() }
    }

    pub fn mul(&self, other: &Series<C>) -> Series<C> {
        let n = self.order().min(other.order());
        self.mul_to(other, n)
    }

    /// Product modulo `t^n` (`n` at most the smaller order).
    pub fn mul_to(&self, other: &Series<C>, n: usize) -> Series<C> {
        let n = n.min(self.order()).min(other.order());
        let mut out: Vec<Option<C>> = vec![None; n];
        let ob: Vec<usize> = (0..n).filter(|&j| !other.c[j].is_zero()).collect();
        for i in 0..n {
            let a = &self.c[i];
            if a.is_zero() {
                continue;
            }
            for &j in &ob {
                if i + j >= n {
                    break;
                }
                let t = a.mul(&other.c[j]);
                out[i + j] = Some(match out[i + j].take() {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
        }
        let c = out.into_iter().map(|x| x.unwrap_or_else(|| self.zero.clone())).collect();
        Series { c, zero: self.zero.clone() }
    }

    /// Multiplication by `t^k`; the order grows by `k`.
    pub fn shift_up(&self, k: usize) -> Series<C> {
        let mut c = vec![self.zero.clone(); k];
        c.extend(self.c.iter().cloned());
        Series { c, zero: self.zero.clone() }
    }

    /// Division by `t^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Series<C>> {
        if self.c.iter().take(k).any(|x| !x.is_zero()) {
            return Err(Error::NotInvertible(format!("series is not divisible by t^{k}")));
        }
        Ok(Series { c: self.c.iter().skip(k).cloned().collect(), zero: self.zero.clone() })
    }

    pub fn pow(&self, mut n: u64) -> Series<C> {
        let mut acc = Series::one(&self.zero, self.order());
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Series<C> {
        let c = (1..self.order()).map(|i| self.c[i].mul_i64(i as i64)).collect();
        Series { c, zero: self.zero.clone() }
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integral(&self) -> Result<Series<C>> {
        let mut c = vec![self.zero.clone()];
        for (i, x) in self.c.iter().enumerate() {
            c.push(x.div_i64(i as i64 + 1)?);
        }
        Ok(Series { c, zero: self.zero.clone() })
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Series<C>> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        let b0 = self.c[0].try_inv()?;
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(b0.clone());
        for k in 1..n {
            let mut s = self.zero.clone();
            for i in 1..=k {
                if self.c[i].is_zero() {
                    continue;
                }
                s = s.add(&self.c[i].mul(&b[k - i]));
            }
            b.push(s.mul(&b0).neg());
        }
        Ok(Series { c: b, zero: self.zero.clone() })
    }

    pub fn div(&self, other: &Series<C>) -> Result<Series<C>> {
        Ok(self.mul(&other.inverse()?))
    }

    /// `self(g)`, where `g` has zero constant term. The result has order
    /// `min(self.order, g.order)`.
    pub fn compose(&self, g: &Series<C>) -> Result<Series<C>> {
        if g.order() > 0 && !g.c[0].is_zero() {
            return Err(Error::InvalidInput("inner series of a composition must have zero constant term".into()));
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        // baby-step giant-step: split self into blocks of length m, g^m as the giant step
        let m = ((n as f64).sqrt().ceil() as usize).max(1);
        let mut powers = vec![Series::one(&self.zero, n)];
        for i in 1..=m {
            let next = powers[i - 1].mul(&g);
            powers.push(next);
        }
        let gm = powers[m].clone();
        let blocks = n.div_ceil(m);
        let mut acc = Series::zero(&self.zero, n);
        for b in (0..blocks).rev() {
            let mut block = Series::zero(&self.zero, n);
            for i in 0..m {
                let k = b * m + i;
                if k >= n || self.c[k].is_zero() {
                    continue;
                }
                block = block.add(&powers[i].scale(&self.c[k]));
            }
            acc = acc.mul(&gm).add(&block);
        }
        Ok(acc)
    }

    /// Compositional inverse; requires zero constant term and an invertible
    /// linear coefficient.
    pub fn reverse(&self) -> Result<Series<C>> {
        let n = self.order();
        if n < 2 {
            return Ok(Series::zero(&self.zero, n));
        }
        if !self.c[0].is_zero() {
            return Err(Error::InvalidInput("series to reverse must have zero constant term".into()));
        }
        let a1 = self.c[1].try_inv()?;
        let d = self.derivative();
        let mut h = Series::monomial(a1, 1, 2);
        let mut k = 2;
        while k < n {
            k = (2 * k).min(n);
            let hk = h.extend(k);
            let err = self.truncate(k).compose(&hk)?.sub(&Series::var(&self.zero, k));
            let dh = d.extend(k).truncate(k).compose(&hk)?;
            h = hk.sub(&err.div(&dh)?);
        }
        Ok(h)
    }

    /// Polynomial evaluation at `x` (all `order` coefficients are used).
    pub fn eval(&self, x: &C) -> C {
        let mut acc = self.zero.clone();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }
}

impl<C: Coeff> Coeff for Series<C> {
    fn zero_like(&self) -> Self {
        Series::zero(&self.zero, self.order())
    }
    fn one_like(&self) -> Self {
        Series::one(&self.zero, self.order())
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Series::constant(self.zero.from_i64_like(n), self.order())
    }
    fn add(&self, other: &Self) -> Self {
        Series::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Series::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Series::mul(self, other)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn try_inv(&self) -> Result<Self> {
        self.inverse()
    }
    fn mul_i64(&self, n: i64) -> Self {
        Series { c: self.c.iter().map(|x| x.mul_i64(n)).collect(), zero: self.zero.clone() }
    }
}
