use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::Field;
use super::int::vp_bigint;
use super::Val;
use crate::{Error, Result};

/// An element of a local field with capped absolute precision.
///
/// The value is `p^{-shift} Σ c[j*h + i] u^i Π^j`; it is known modulo
/// `Π^prec` (so `prec` is in units of `1/e`).
#[derive(Clone)]
pub struct Elem {
    field: Field,
    shift: i64,
    c: Vec<BigInt>,
    prec: i64,
}

impl Elem {
    pub fn zero(field: &Field) -> Elem {
        Elem { field: field.clone(), shift: 0, c: vec![BigInt::zero(); field.degree()], prec: field.cap_units() }
    }

    /// Zero known only modulo `p^v`.
    pub fn zero_with_prec(field: &Field, v: Val) -> Elem {
        let mut z = Elem::zero(field);
        if let Val::Fin(r) = v {
            z.prec = super::val::ceil_ratio(r * field.e() as i64).min(field.cap_units());
        }
        z
    }

    pub fn one(field: &Field) -> Elem {
        Elem::from_int(field, 1)
    }

    pub fn from_int(field: &Field, n: i64) -> Elem {
        Elem::from_bigint(field, &BigInt::from(n))
    }

    pub fn from_bigint(field: &Field, n: &BigInt) -> Elem {
        let mut x = Elem::zero(field);
        x.c[0] = n.clone();
        x.normalize();
        x
    }

    /// Image of a rational number; its denominator may be divisible by `p`.
    pub fn from_rational(field: &Field, r: &BigRational) -> Elem {
        let p = field.p();
        let den = r.denom();
        let k = vp_bigint(den, p).unwrap();
        let unit = den / field.p_pow(k as usize);
        let mut x = Elem::zero(field);
        x.shift = k;
        // enough digits for the integral representative at this shift
        let digits = (field.cap_units() + field.e() as i64 * k) / field.e() as i64 + 2;
        let m = field.p_pow(digits.max(1) as usize);
        let inv = mod_inverse(&unit, &m);
        x.c[0] = (r.numer() * inv).mod_floor(&m);
        x.normalize();
        x
    }

    pub fn from_i64_frac(field: &Field, n: i64, d: i64) -> Elem {
        Elem::from_rational(field, &BigRational::new(n.into(), d.into()))
    }

    /// The uniformizer `Π` (equal to `p` when `e = 1`).
    pub fn uniformizer(field: &Field) -> Elem {
        if field.e() == 1 {
            return Elem::from_int(field, field.p() as i64);
        }
        let mut x = Elem::zero(field);
        x.c[field.h()] = BigInt::one();
        x
    }

    /// The unramified generator `u` (a root of the unramified polynomial).
    pub fn unr_generator(field: &Field) -> Elem {
        let mut x = Elem::zero(field);
        if field.h() == 1 {
            x.c[0] = -field.unr_poly[0].clone();
        } else {
            x.c[1] = BigInt::one();
        }
        x.normalize();
        x
    }

    /// Element with given integral coordinates `coords[j][i]` (of `u^i Π^j`).
    pub fn from_coords(field: &Field, coords: &[Vec<BigInt>], shift: i64, prec: Val) -> Result<Elem> {
        let (h, e) = (field.h(), field.e());
        if coords.len() > e || coords.iter().any(|r| r.len() > h) {
            return Err(Error::InvalidInput("coordinate array does not match the field degree".into()));
        }
        let mut x = Elem::zero(field);
        for (j, row) in coords.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                x.c[j * h + i] = v.clone();
            }
        }
        x.shift = shift;
        x.prec = match prec {
            Val::Inf => field.cap_units(),
            Val::Fin(r) => super::val::ceil_ratio(r * e as i64).min(field.cap_units()),
        };
        x.normalize();
        Ok(x)
    }

    /// Image under the inclusion of an unramified field into a ramified
    /// extension of it (or into a field with the same tower).
    pub fn embed(&self, target: &Field) -> Result<Elem> {
        let src = &self.field;
        if src.id() == target.id() {
            return Ok(self.clone());
        }
        if src.e() != 1 || src.p() != target.p() || src.unr_poly != target.unr_poly {
            return Err(Error::InvalidField(format!("no embedding of {} into {}", src.id(), target.id())));
        }
        let (coords, shift) = self.coords();
        Elem::from_coords(target, &coords[..1], shift, self.precision())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Integral coordinates and the power of `p` dividing them out.
    pub fn coords(&self) -> (Vec<Vec<BigInt>>, i64) {
        let h = self.field.h();
        (self.c.chunks(h).map(|r| r.to_vec()).collect(), self.shift)
    }

    /// Absolute precision `prec / e`.
    pub fn precision(&self) -> Val {
        Val::frac(self.prec, self.field.e() as i64)
    }

    /// Lowers the absolute precision to at most `v`.
    pub fn truncate(&self, v: Val) -> Elem {
        let mut x = self.clone();
        if let Val::Fin(r) = v {
            x.prec = x.prec.min(super::val::ceil_ratio(r * self.field.e() as i64));
            x.normalize();
        }
        x
    }

    fn modulus_digits(&self, j: usize) -> i64 {
        let e = self.field.e() as i64;
        let a = self.prec + e * self.shift - j as i64;
        if a <= 0 {
            0
        } else {
            (a + e - 1) / e
        }
    }

    fn normalize(&mut self) {
        let h = self.field.h();
        for j in 0..self.field.e() {
            let k = self.modulus_digits(j);
            let m = self.field.p_pow(k as usize);
            for i in 0..h {
                let c = &mut self.c[j * h + i];
                if k == 0 {
                    c.set_zero();
                } else if c.is_negative() || *c >= m {
                    *c = c.mod_floor(&m);
                }
            }
        }
        if self.c.iter().all(|c| c.is_zero()) {
            self.shift = 0;
            return;
        }
        let p = BigInt::from(self.field.p());
        while self.shift > 0 && self.c.iter().all(|c| c.is_multiple_of(&p)) {
            for c in self.c.iter_mut() {
                *c /= &p;
            }
            self.shift -= 1;
        }
    }

    /// Valuation in units of `1/e`; `None` when zero at the working precision.
    pub(crate) fn val_units(&self) -> Option<i64> {
        let e = self.field.e() as i64;
        let h = self.field.h();
        let v = self
            .c
            .iter()
            .enumerate()
            .filter_map(|(idx, c)| vp_bigint(c, self.field.p()).map(|v| e * v + (idx / h) as i64 - e * self.shift))
            .min()?;
        (v < self.prec).then_some(v)
    }

    /// Valuation lower bound used by precision tracking (`prec` for zero).
    fn val_floor_units(&self) -> i64 {
        self.val_units().unwrap_or(self.prec)
    }

    /// `v(x)` with `v(p) = 1`; `Inf` when `x` is zero at its precision.
    pub fn val(&self) -> Val {
        match self.val_units() {
            Some(v) => Val::frac(v, self.field.e() as i64),
            None => Val::Inf,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.val_units().is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.val_units() == Some(0)
    }

    /// `v(x) > 0` (including zero).
    pub fn in_max_ideal(&self) -> bool {
        self.val_units().is_none_or(|v| v > 0)
    }

    pub fn is_integral(&self) -> bool {
        self.val_units().is_none_or(|v| v >= 0)
    }

    fn same_field(&self, other: &Elem) {
        debug_assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "mixing elements of different fields"
        );
    }

    fn aligned(&self, shift: i64) -> Vec<BigInt> {
        let d = shift - self.shift;
        if d == 0 {
            return self.c.clone();
        }
        let m = self.field.p_pow(d as usize);
        self.c.iter().map(|c| c * &m).collect()
    }

    pub fn add(&self, other: &Elem) -> Elem {
        self.same_field(other);
        let s = self.shift.max(other.shift);
        let a = self.aligned(s);
        let b = other.aligned(s);
        let c = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        let mut z = Elem { field: self.field.clone(), shift: s, c, prec: self.prec.min(other.prec) };
        z.normalize();
        z
    }

    pub fn neg(&self) -> Elem {
        let mut z = self.clone();
        for c in z.c.iter_mut() {
            *c = -&*c;
        }
        z.normalize();
        z
    }

    pub fn sub(&self, other: &Elem) -> Elem {
        self.add(&other.neg())
    }

    fn unr_mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let h = self.field.h();
        if h == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut out = vec![BigInt::zero(); 2 * h - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        let f = &self.field.unr_poly;
        for d in (h..2 * h - 1).rev() {
            let t = std::mem::take(&mut out[d]);
            if t.is_zero() {
                continue;
            }
            for l in 0..h {
                out[d - h + l] -= &t * &f[l];
            }
        }
        out.truncate(h);
        out
    }

    pub fn mul(&self, other: &Elem) -> Elem {
        self.same_field(other);
        let (h, e) = (self.field.h(), self.field.e());
        let prec = (self.prec + other.val_floor_units()).min(other.prec + self.val_floor_units());
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); h]; 2 * e - 1];
        for j in 0..e {
            let a = &self.c[j * h..(j + 1) * h];
            if a.iter().all(|x| x.is_zero()) {
                continue;
            }
            for k in 0..e {
                let b = &other.c[k * h..(k + 1) * h];
                if b.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let t = self.unr_mul(a, b);
                for (r, v) in rows[j + k].iter_mut().zip(t) {
                    *r += v;
                }
            }
        }
        if e > 1 {
            let eis = &self.field.eis_poly;
            for d in (e..2 * e - 1).rev() {
                let t = std::mem::replace(&mut rows[d], vec![BigInt::zero(); h]);
                if t.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for l in 0..e {
                    let s = self.unr_mul(&t, &eis[l]);
                    for (r, v) in rows[d - e + l].iter_mut().zip(s) {
                        *r -= v;
                    }
                }
            }
        }
        rows.truncate(e);
        let mut z = Elem {
            field: self.field.clone(),
            shift: self.shift + other.shift,
            c: rows.into_iter().flatten().collect(),
            prec,
        };
        z.normalize();
        z
    }

    pub fn mul_int(&self, n: i64) -> Elem {
        self.mul(&Elem::from_int(&self.field, n))
    }

    /// Multiplication by `p^k` (exact, `k` may be negative).
    pub fn mul_p_pow(&self, k: i64) -> Elem {
        let mut z = self.clone();
        z.prec += k * self.field.e() as i64;
        if k >= 0 {
            let m = self.field.p_pow(k as usize);
            for c in z.c.iter_mut() {
                *c *= &m;
            }
        } else {
            z.shift -= k;
        }
        z.normalize();
        z
    }

    pub fn square(&self) -> Elem {
        self.mul(self)
    }

    pub fn pow(&self, mut n: u64) -> Elem {
        let mut acc = Elem::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn pow_i64(&self, n: i64) -> Result<Elem> {
        if n >= 0 {
            Ok(self.pow(n as u64))
        } else {
            Ok(self.inv()?.pow(n.unsigned_abs()))
        }
    }

    /// Multiplicative inverse. Relative precision is preserved, so the
    /// absolute precision becomes `prec - 2 v(x)`.
    pub fn inv(&self) -> Result<Elem> {
        let v = self.val_units().ok_or(Error::DivisionByZero)?;
        let e = self.field.e() as i64;
        let f = &self.field;
        // x = Π^v · w with w a unit; write Π^v = p^m · Π^{v - e m}.
        let m = Integer::div_floor(&v, &e);
        let r = v - e * m; // 0 <= r < e
        // w' = x · Π^{e - r} / p^{m+1} when r > 0, else x / p^m
        let (w, extra) = if r == 0 {
            (self.mul_p_pow(-m), 0)
        } else {
            let pi = Elem::uniformizer(f).pow((e - r) as u64);
            (self.mul(&pi).mul_p_pow(-(m + 1)), e - r)
        };
        let winv = w.unit_inverse();
        let mut out = if extra == 0 {
            winv.mul_p_pow(-m)
        } else {
            let pi = Elem::uniformizer(f).pow(extra as u64);
            winv.mul(&pi).mul_p_pow(-(m + 1))
        };
        let rel = self.prec - v;
        out.prec = out.prec.min(rel - v);
        out.normalize();
        Ok(out)
    }

    /// Inverse of a unit by Newton iteration `y <- y(2 - wy)`.
    fn unit_inverse(&self) -> Elem {
        let f = &self.field;
        let q = f.q();
        // w̄^{q-2} is the inverse of the residue in F_q
        let mut y = self.truncate(Val::int(1)).pow(q - 2);
        y.prec = 1;
        y.normalize();
        let target = self.prec.min(f.cap_units());
        let two = Elem::from_int(f, 2);
        let mut cur = 1;
        loop {
            let next = (2 * cur).min(target);
            let wt = self.truncate(Val::frac(next, f.e() as i64));
            let mut yt = y.clone();
            yt.prec = next;
            y = yt.mul(&two.sub(&wt.mul(&yt)));
            y.prec = next;
            y.normalize();
            cur = next;
            if cur >= target {
                break;
            }
        }
        y
    }

    pub fn div(&self, other: &Elem) -> Result<Elem> {
        Ok(self.mul(&other.inv()?))
    }

    /// Equality at the smaller of the two precisions.
    pub fn eq_at_prec(&self, other: &Elem) -> bool {
        self.sub(other).is_zero()
    }

    /// Residue class in `F_q` as coordinates on `1, u, …, u^{h-1}`; the
    /// element must be integral.
    pub fn residue(&self) -> Vec<u64> {
        assert!(self.is_integral(), "residue of a non-integral element");
        let h = self.field.h();
        let p = BigInt::from(self.field.p());
        (0..h)
            .map(|i| {
                if self.shift > 0 {
                    0
                } else {
                    self.c[i].mod_floor(&p).to_u64().unwrap()
                }
            })
            .collect()
    }

    /// Rational value when the element lies in `Q_p` and is integral-free of
    /// higher coordinates (the representative is exact up to `p^prec`).
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.c.iter().skip(1).any(|c| !c.is_zero()) {
            return None;
        }
        Some(BigRational::new(self.c[0].clone(), self.field.p_pow(self.shift as usize)))
    }

    /// Symmetric integer representative of `p^shift · x` in the first coordinate.
    pub fn signed_rational(&self) -> Option<BigRational> {
        self.to_rational()?;
        let digits = self.modulus_digits(0);
        let m = self.field.p_pow(digits.max(0) as usize);
        let mut n = self.c[0].clone();
        if n.clone() * 2 > m {
            n -= m;
        }
        Some(BigRational::new(n, self.field.p_pow(self.shift as usize)))
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.extended_gcd(m);
    assert!(g.gcd.is_one(), "not invertible");
    g.x.mod_floor(m)
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (h, e) = (self.field.h(), self.field.e());
        let mut terms = vec![];
        for j in 0..e {
            for i in 0..h {
                let c = &self.c[j * h + i];
                if c.is_zero() {
                    continue;
                }
                let mut t = c.to_string();
                if i > 0 {
                    t.push_str(&format!("*u^{i}"));
                }
                if j > 0 {
                    t.push_str(&format!("*Pi^{j}"));
                }
                terms.push(t);
            }
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        if self.shift != 0 {
            write!(f, "({body})/{}^{}", self.field.p(), self.shift)?;
        } else {
            write!(f, "{body}")?;
        }
        write!(f, " + O({}^{})", self.field.p(), self.precision())
    }
}
