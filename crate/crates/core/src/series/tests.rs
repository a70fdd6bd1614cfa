use num_rational::BigRational;

use super::*;
use crate::arith::{Elem, LocalField};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn z() -> BigRational {
    q(0, 1)
}

fn qs(c: &[(i64, i64)], order: usize) -> Series<BigRational> {
    Series::new(c.iter().map(|&(n, d)| q(n, d)).collect(), order, &z())
}

fn log1p(order: usize) -> Series<BigRational> {
    let mut c = vec![z()];
    for n in 1..order as i64 {
        c.push(q(if n % 2 == 1 { 1 } else { -1 }, n));
    }
    Series::new(c, order, &z())
}

fn expm1(order: usize) -> Series<BigRational> {
    let mut c = vec![z()];
    let mut f = 1i64;
    for n in 1..order as i64 {
        f *= n;
        c.push(q(1, f));
    }
    Series::new(c, order, &z())
}

#[test]
fn ring_operations() {
    let a = qs(&[(1, 1), (1, 1)], 6);
    let b = qs(&[(1, 1), (-1, 1)], 6);
    let p = a.mul(&b);
    assert_eq!(p.coeffs(), qs(&[(1, 1), (0, 1), (-1, 1)], 6).coeffs());
    let geo = Series::new(vec![q(1, 1); 8], 8, &z());
    let prod = geo.mul(&qs(&[(1, 1), (-1, 1)], 8));
    assert_eq!(prod.coeffs(), Series::one(&z(), 8).coeffs());
    assert_eq!(geo.order(), 8);
    assert_eq!(a.mul(&Series::one(&z(), 4)).order(), 4);
}

#[test]
fn composition() {
    let n = 12;
    let t = Series::var(&z(), n);
    let f = log1p(n);
    assert_eq!(f.compose(&t).unwrap().coeffs(), f.coeffs());
    let id = f.compose(&expm1(n)).unwrap();
    assert_eq!(id.coeffs(), t.coeffs());
    assert!(f.compose(&Series::one(&z(), n)).is_err());
}

#[test]
fn reversion() {
    let n = 10;
    let t = Series::var(&z(), n);
    assert_eq!(t.reverse().unwrap().coeffs(), t.coeffs());
    assert_eq!(log1p(n).reverse().unwrap().coeffs(), expm1(n).coeffs());
    let r = qs(&[(0, 1), (1, 1), (1, 1)], n).reverse().unwrap();
    // Catalan numbers with alternating signs
    let cat = [0, 1, -1, 2, -5, 14, -42, 132, -429, 1430];
    assert_eq!(r.coeffs(), qs(&cat.map(|c| (c, 1)), n).coeffs());
    assert!(qs(&[(0, 1), (0, 1), (1, 1)], n).reverse().is_err());
}

#[test]
fn inverse() {
    let n = 9;
    let inv = qs(&[(1, 1), (-1, 1)], n).inverse().unwrap();
    assert_eq!(inv.coeffs(), Series::new(vec![q(1, 1); n], n, &z()).coeffs());
    // λ' for λ = Σ t^{3^m}/3^m over Q_3
    let k = LocalField::qp(3, 20).unwrap();
    let zero = Elem::zero(&k);
    let mut c = vec![zero.clone(); 40];
    let mut m = 1usize;
    let mut d = 1i64;
    while m < 40 {
        c[m] = Elem::from_i64_frac(&k, 1, d);
        m *= 3;
        d *= 3;
    }
    let lam = Series::new(c, 40, &zero);
    let dl = lam.derivative();
    let prod = dl.mul(&dl.inverse().unwrap());
    assert!(prod.coeff(0).eq_at_prec(&Elem::one(&k)));
    assert!(prod.coeffs()[1..].iter().all(|x| x.is_zero()));
}

#[test]
fn newton_examples() {
    // T^q + πT over Q_3 with q = 9, π = 3
    let k = LocalField::qp(3, 20).unwrap();
    let zero = Elem::zero(&k);
    let mut poly = vec![zero.clone(); 10];
    poly[1] = Elem::from_int(&k, 3);
    poly[9] = Elem::one(&k);
    let p = newton_power_sums(&poly, 40).unwrap();
    for (kk, pk) in p.iter().enumerate().skip(1) {
        let expect = if kk % 8 == 0 {
            Elem::from_int(&k, 8).mul(&Elem::from_int(&k, -3).pow(kk as u64 / 8))
        } else {
            zero.clone()
        };
        assert!(pk.eq_at_prec(&expect), "k={kk}");
    }
    let lin = vec![q(-7, 1), q(1, 1)];
    let p = newton_power_sums(&lin, 5).unwrap();
    assert_eq!(p[5], q(7i64.pow(5), 1));
}

#[test]
fn weierstrass_examples() {
    let k = LocalField::qp(3, 20).unwrap();
    let e = |n: i64| Elem::from_int(&k, n);
    let zero = e(0);
    let n = 20;
    let dist = Series::new(vec![e(0), e(3), e(1)], n, &zero);
    let (p, u) = weierstrass_prepare_padic(&dist, 2, 100).unwrap();
    assert!(p[1].eq_at_prec(&e(3)) && p[0].is_zero());
    assert!(u.coeff(0).eq_at_prec(&e(1)) && u.coeffs()[1..].iter().all(|x| x.is_zero()));
    let f = dist.mul(&Series::new(vec![e(1), e(1)], n, &zero));
    let (p, u) = weierstrass_prepare_padic(&f, 2, 100).unwrap();
    let back = Series::new(p.clone(), n, &zero).mul(&u);
    assert_eq!(u.order(), n - 2);
    for i in 0..back.order() {
        assert!(back.coeff(i).eq_at_prec(f.coeff(i)));
    }
    let unit = Series::new(vec![e(2), e(5)], n, &zero);
    let (p, u) = weierstrass_prepare_padic(&unit, 0, 10).unwrap();
    assert_eq!(p.len(), 1);
    assert!(u.coeff(1).eq_at_prec(&e(5)));
}
