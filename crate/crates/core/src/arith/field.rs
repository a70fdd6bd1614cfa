use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::int::{is_prime, vp_bigint};
use crate::{Error, Result};

/// A two-step tower `Q_p ⊂ K_0 ⊂ K`: `K_0` unramified of degree `h` given by
/// a monic lift of an irreducible residue polynomial, `K/K_0` totally
/// ramified of degree `e` given by an Eisenstein polynomial.
///
/// Elements are stored relative to the integral basis `u^i Π^j`
/// (`i < h`, `j < e`), where `u` is a root of the unramified polynomial and
/// `Π` a root of the Eisenstein polynomial.
pub struct LocalField {
    pub(crate) id: String,
    pub(crate) p: u64,
    pub(crate) h: usize,
    pub(crate) e: usize,
    /// Monic, low-to-high, length `h + 1`.
    pub(crate) unr_poly: Vec<BigInt>,
    /// Monic, low-to-high, length `e + 1`; each coefficient is an element of
    /// the unramified ring given as `h` integers.
    pub(crate) eis_poly: Vec<Vec<BigInt>>,
    /// Default absolute precision, in units of `1/e`.
    pub(crate) cap: i64,
    pow_cache: RwLock<Vec<BigInt>>,
}

pub type Field = Arc<LocalField>;

/// Serializable description of a field, as stored in run configurations.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    /// Unramified polynomial, low-to-high, monic. Defaults to a standard
    /// choice for the degree when absent.
    #[serde(default)]
    pub unramified_poly: Option<Vec<i64>>,
    #[serde(default = "one")]
    pub h: usize,
    /// Eisenstein polynomial, low-to-high; each coefficient given by its
    /// `h` integer coordinates. Absent means `e = 1`.
    #[serde(default)]
    pub eisenstein_poly: Option<Vec<Vec<i64>>>,
    /// Absolute working precision (in powers of `p`).
    pub precision: i64,
}

fn one() -> usize {
    1
}

impl fmt::Debug for LocalField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LocalField({})", self.id)
    }
}

impl PartialEq for LocalField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.h == other.h
            && self.e == other.e
            && self.unr_poly == other.unr_poly
            && self.eis_poly == other.eis_poly
    }
}

impl LocalField {
    /// `Q_p` with absolute precision `prec`.
    pub fn qp(p: u64, prec: i64) -> Result<Field> {
        Self::build(p, vec![BigInt::zero(), BigInt::one()], None, prec)
    }

    /// Unramified extension of degree `h` with the default defining polynomial:
    /// `x^2 + 1` when `h = 2` and `p ≡ 3 mod 4`, otherwise the first monic
    /// irreducible polynomial found by search.
    pub fn unramified(p: u64, h: usize, prec: i64) -> Result<Field> {
        let poly = default_unramified_poly(p, h)?;
        Self::build(p, poly, None, prec)
    }

    pub fn unramified_with(p: u64, poly: &[i64], prec: i64) -> Result<Field> {
        Self::build(p, poly.iter().map(|&c| BigInt::from(c)).collect(), None, prec)
    }

    /// Totally ramified extension of `base` (which must itself be unramified)
    /// by an Eisenstein polynomial with coefficients in the unramified ring.
    pub fn ramified(base: &Field, eis: Vec<Vec<BigInt>>, prec: i64) -> Result<Field> {
        if base.e != 1 {
            return Err(Error::InvalidField("base of a ramified extension must be unramified".into()));
        }
        Self::build(base.p, base.unr_poly.clone(), Some(eis), prec)
    }

    /// Ramified extension with integer Eisenstein coefficients (the common case).
    pub fn ramified_int(base: &Field, eis: &[i64], prec: i64) -> Result<Field> {
        let h = base.h;
        let eis = eis
            .iter()
            .map(|&c| {
                let mut v = vec![BigInt::zero(); h];
                v[0] = BigInt::from(c);
                v
            })
            .collect();
        Self::ramified(base, eis, prec)
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        let unr = match &spec.unramified_poly {
            Some(c) => c.iter().map(|&x| BigInt::from(x)).collect(),
            None => default_unramified_poly(spec.p, spec.h)?,
        };
        if unr.len() != spec.h + 1 {
            return Err(Error::InvalidField(format!(
                "unramified polynomial has degree {} but h = {}",
                unr.len() as i64 - 1,
                spec.h
            )));
        }
        let eis = spec.eisenstein_poly.as_ref().map(|rows| {
            rows.iter()
                .map(|r| {
                    let mut v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
                    v.resize(spec.h, BigInt::zero());
                    v
                })
                .collect()
        });
        Self::build(spec.p, unr, eis, spec.precision)
    }

    fn build(p: u64, unr_poly: Vec<BigInt>, eis: Option<Vec<Vec<BigInt>>>, prec: i64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if prec <= 0 {
            return Err(Error::InvalidField("precision must be positive".into()));
        }
        let h = unr_poly.len().checked_sub(1).filter(|&h| h >= 1).ok_or_else(|| {
            Error::InvalidField("unramified polynomial must have degree >= 1".into())
        })?;
        if !unr_poly[h].is_one() {
            return Err(Error::InvalidField("unramified polynomial must be monic".into()));
        }
        let residue: Vec<u64> = unr_poly.iter().map(|c| reduce_mod(c, p)).collect();
        if !fp_irreducible(&residue, p) {
            return Err(Error::InvalidField("unramified polynomial is not irreducible mod p".into()));
        }
        let eis_poly = match eis {
            None => {
                let zero = vec![BigInt::zero(); h];
                let mut one = zero.clone();
                one[0] = BigInt::one();
                // Π = 1·(…) trivially: represent x - 0 with e = 1, Π = p handled by e == 1.
                vec![zero, one]
            }
            Some(eis) => eis,
        };
        let e = eis_poly.len() - 1;
        if e > 1 {
            validate_eisenstein(&eis_poly, h, p)?;
        }
        let mut id = format!("Q{}", p);
        if h > 1 {
            id = format!("{id}^{h}[{}]", poly_str(&unr_poly));
        }
        if e > 1 {
            let rows: Vec<String> = eis_poly.iter().map(|r| format!("({})", poly_str(r))).collect();
            id = format!("{id}(Pi:{})", rows.join(","));
        }
        Ok(Arc::new(LocalField {
            id,
            p,
            h,
            e,
            unr_poly,
            eis_poly,
            cap: prec * e as i64,
            pow_cache: RwLock::new(vec![BigInt::one()]),
        }))
    }

    pub fn id(&self) -> &str {
        &self.id
    }
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn h(&self) -> usize {
        self.h
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn q(&self) -> u64 {
        self.p.pow(self.h as u32)
    }
    pub fn degree(&self) -> usize {
        self.h * self.e
    }
    /// Absolute working precision, in powers of `p` (may be fractional when `e > 1`).
    pub fn precision(&self) -> super::Val {
        super::Val::frac(self.cap, self.e as i64)
    }
    pub(crate) fn cap_units(&self) -> i64 {
        self.cap
    }

    /// Same tower with a different working precision.
    pub fn with_precision(&self, prec: i64) -> Field {
        Arc::new(LocalField {
            id: self.id.clone(),
            p: self.p,
            h: self.h,
            e: self.e,
            unr_poly: self.unr_poly.clone(),
            eis_poly: self.eis_poly.clone(),
            cap: prec * self.e as i64,
            pow_cache: RwLock::new(vec![BigInt::one()]),
        })
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p,
            unramified_poly: Some(self.unr_poly.iter().map(super::int::to_i64).collect()),
            h: self.h,
            eisenstein_poly: (self.e > 1)
                .then(|| self.eis_poly.iter().map(|r| r.iter().map(super::int::to_i64).collect()).collect()),
            precision: self.cap / self.e as i64,
        }
    }

    /// `p^k`, cached.
    pub(crate) fn p_pow(&self, k: usize) -> BigInt {
        {
            let cache = self.pow_cache.read().unwrap();
            if let Some(v) = cache.get(k) {
                return v.clone();
            }
        }
        let mut cache = self.pow_cache.write().unwrap();
        while cache.len() <= k {
            let next = cache.last().unwrap() * self.p;
            cache.push(next);
        }
        cache[k].clone()
    }
}

fn poly_str(c: &[BigInt]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn reduce_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.try_into().unwrap()
}

fn validate_eisenstein(eis: &[Vec<BigInt>], h: usize, p: u64) -> Result<()> {
    let e = eis.len() - 1;
    if eis[e].len() != h || !eis[e][0].is_one() || eis[e][1..].iter().any(|c| !c.is_zero()) {
        return Err(Error::InvalidField("Eisenstein polynomial must be monic".into()));
    }
    // valuation of an unramified element: min over coordinates
    let v = |c: &[BigInt]| c.iter().filter_map(|x| vp_bigint(x, p)).min();
    for (j, c) in eis[..e].iter().enumerate() {
        if c.len() != h {
            return Err(Error::InvalidField("Eisenstein coefficient has wrong length".into()));
        }
        match v(c) {
            None if j == 0 => {
                return Err(Error::InvalidField("Eisenstein constant term is zero".into()))
            }
            None => {}
            Some(0) => {
                return Err(Error::InvalidField(format!(
                    "Eisenstein coefficient of degree {j} is a unit"
                )))
            }
            Some(k) if j == 0 && k != 1 => {
                return Err(Error::InvalidField(format!(
                    "Eisenstein constant term has valuation {k}, expected 1"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Default monic unramified polynomial of degree `h`.
pub fn default_unramified_poly(p: u64, h: usize) -> Result<Vec<BigInt>> {
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if h == 1 {
        return Ok(vec![BigInt::zero(), BigInt::one()]);
    }
    if h == 2 && p % 4 == 3 {
        return Ok(vec![BigInt::one(), BigInt::zero(), BigInt::one()]);
    }
    // search monic polynomials of degree h in lexicographic order of lower coefficients
    let total = (p as u128).pow(h as u32);
    for n in 0..total {
        let mut c = Vec::with_capacity(h + 1);
        let mut m = n;
        for _ in 0..h {
            c.push((m % p as u128) as u64);
            m /= p as u128;
        }
        c.push(1);
        if fp_irreducible(&c, p) {
            return Ok(c.into_iter().map(BigInt::from).collect());
        }
    }
    Err(Error::InvalidField(format!("no irreducible polynomial of degree {h} mod {p}")))
}

// --- small F_p polynomial arithmetic, used only for validation ---

fn fp_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut k = p - 2;
    while k > 0 {
        if k & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        k >>= 1;
    }
    r
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = fp_trim(a.to_vec());
    let m = fp_trim(m.to_vec());
    let lead_inv = fp_inv(*m.last().unwrap(), p);
    while a.len() >= m.len() {
        let shift = a.len() - m.len();
        let c = (*a.last().unwrap() as u128 * lead_inv as u128 % p as u128) as u64;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u128 * mi as u128 % p as u128) as u64;
            a[shift + i] = (a[shift + i] + p - sub) % p;
        }
        a = fp_trim(a);
    }
    a
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (fp_trim(a.to_vec()), fp_trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over `F_p` via `gcd(f, x^{p^i} - x) = 1` for `i <= deg/2`.
pub(crate) fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let f = fp_trim(f.to_vec());
    let d = f.len().saturating_sub(1);
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut xp = fp_rem(&x, &f, p);
    for _ in 1..=d / 2 {
        // xp <- xp^p
        let mut acc = vec![1u64];
        let mut base = xp.clone();
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = fp_mulmod(&acc, &base, &f, p);
            }
            base = fp_mulmod(&base, &base, &f, p);
            k >>= 1;
        }
        xp = acc;
        let mut diff = xp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_gcd(&f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
