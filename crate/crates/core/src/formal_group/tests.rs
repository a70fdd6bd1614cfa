use num_rational::BigRational;

use super::*;
use crate::arith::LocalField;
use crate::formal_group::elliptic::{cm_units, embed_series};
use crate::report::Verdict;

fn q9(prec: i64) -> Field {
    LocalField::unramified(3, 2, prec).unwrap()
}

fn assert_series_eq(a: &Series<Elem>, b: &Series<Elem>) {
    let n = a.order().min(b.order());
    for i in 0..n {
        assert!(a.coeff(i).eq_at_prec(b.coeff(i)), "coefficient {i}: {} vs {}", a.coeff(i), b.coeff(i));
    }
}

#[test]
fn lubin_tate_frobenius_is_reproduced() {
    let k = q9(20);
    let pi = Elem::from_int(&k, 3);
    let g = FormalModule::lubin_tate(&k, &pi, 40).unwrap();
    let fr = g.endo(&pi).unwrap();
    assert_series_eq(&fr, g.frobenius());
    assert_series_eq(&g.endo_int(1).unwrap(), &Series::var(&g.zero_elem(), 40));
    // λ(πt + t^q) = πλ(t)
    assert_series_eq(&g.log().compose(g.frobenius()).unwrap(), &g.log().scale(&pi));
}

#[test]
fn lubin_tate_with_twisted_uniformizer() {
    let k = q9(20);
    let i = Elem::unr_generator(&k);
    let pi = i.mul_int(-3);
    let g = FormalModule::lubin_tate(&k, &pi, 30).unwrap();
    assert_series_eq(&g.endo(&pi).unwrap(), g.frobenius());
    let r = g.integrality(6, &[i.clone(), Elem::from_int(&k, 2)]).unwrap();
    assert!(r.integral, "{r:?}");
}

#[test]
fn group_law_properties() {
    let k = q9(20);
    let g = FormalModule::lubin_tate(&k, &Elem::from_int(&k, 3), 24).unwrap();
    let m = 10;
    let f = g.group_law(m).unwrap();
    let z = g.zero_elem();
    for i in 0..m {
        for j in 0..m {
            let c = f.coeff(i).coeff(j);
            let t = f.coeff(j).coeff(i);
            assert!(c.eq_at_prec(t), "symmetry at ({i},{j})");
            assert!(c.val() >= Val::zero(), "integrality at ({i},{j})");
            let expect_axis = if (i, j) == (1, 0) || (i, j) == (0, 1) { Elem::one(&k) } else { z.clone() };
            if i == 0 || j == 0 {
                assert!(c.eq_at_prec(&expect_axis), "F(X,0) = X at ({i},{j})");
            }
        }
    }
    // endomorphism ring relations
    let two = g.endo_int(2).unwrap();
    let three = g.endo_int(3).unwrap();
    assert_series_eq(&g.add_series(&two, &three).unwrap(), &g.endo_int(5).unwrap());
    assert_series_eq(&two.compose(&three).unwrap(), &g.endo_int(6).unwrap());
    assert_series_eq(&g.add_series(&g.endo_int(-1).unwrap(), &Series::var(&z, 24)).unwrap(), &Series::zero(&z, 24));
}

#[test]
fn associativity_sample() {
    let k = q9(16);
    let g = FormalModule::lubin_tate(&k, &Elem::from_int(&k, 3), 24).unwrap();
    let z = g.zero_elem();
    // a(t) = t + t^2, b(t) = 2t, c(t) = t^3
    let a = Series::new(vec![z.clone(), Elem::one(&k), Elem::one(&k)], 24, &z);
    let b = Series::monomial(Elem::from_int(&k, 2), 1, 24);
    let c = Series::monomial(Elem::one(&k), 3, 24);
    let l = g.add_series(&g.add_series(&a, &b).unwrap(), &c).unwrap();
    let r = g.add_series(&a, &g.add_series(&b, &c).unwrap()).unwrap();
    assert_series_eq(&l, &r);
}

#[test]
fn multiplicative_group() {
    let k = LocalField::qp(3, 20).unwrap();
    let g = FormalModule::multiplicative(&k, 20).unwrap();
    let f = g.group_law(6).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            let expect = match (i, j) {
                (1, 0) | (0, 1) | (1, 1) => 1,
                _ => 0,
            };
            assert!(f.coeff(i).coeff(j).eq_at_prec(&Elem::from_int(&k, expect)));
        }
    }
    // ∂_G = (1 + t) d/dt
    let z = g.zero_elem();
    let one_plus_t = Series::new(vec![Elem::one(&k), Elem::one(&k)], 19, &z);
    assert_series_eq(g.dlog_inv(), &one_plus_t);
    assert_series_eq(&g.endo(g.pi()).unwrap(), g.frobenius());
}

#[test]
fn invariant_derivation() {
    let k = q9(20);
    let g = FormalModule::lubin_tate(&k, &Elem::from_int(&k, 3), 30).unwrap();
    let z = g.zero_elem();
    let t = Series::var(&z, 30);
    assert!(g.derive_at_zero(&t, 1)[1].eq_at_prec(&Elem::one(&k)));
    // ordinary exponential of cλ is an eigenfunction with eigenvalue c
    let c = Elem::from_int(&k, 5);
    let mut e = vec![Elem::one(&k)];
    for n in 1..30i64 {
        e.push(e[n as usize - 1].mul(&Elem::from_i64_frac(&k, 1, n)));
    }
    let expo = Series::new(e, 30, &z);
    let phi = expo.compose(&g.log().scale(&c)).unwrap();
    assert_series_eq(&g.invariant_derive(&phi, 1), &phi.scale(&c));
}

#[test]
fn coefficient_bounds_sweep() {
    let k = q9(30);
    let g = FormalModule::lubin_tate(&k, &Elem::from_int(&k, 3), 32).unwrap();
    let r = coefficient_bounds_check(&g, 30, 30).unwrap();
    assert_eq!(r.tally.violated, 0);
    assert_eq!(r.tally.inconclusive, 0, "{:?}", r.entries.iter().find(|e| e.log.verdict != Verdict::Certified || e.exp.verdict != Verdict::Certified));
    // k = n: the coefficient of t^n in λ^n is 1
    let e = r.entries.iter().find(|e| e.k == 5 && e.n == 5).unwrap();
    assert_eq!(e.log.achieved, Val::zero());
}

#[test]
fn elliptic_expansions() {
    let e = EllipticModel::lemniscatic();
    let x = e.x_scaled(20);
    assert_eq!(x.coeff(0), &BigRational::from_integer(1.into()));
    let l = e.log_series(40);
    assert_eq!(l.coeff(1), &BigRational::from_integer(1.into()));
    for (i, c) in l.coeffs().iter().enumerate() {
        if i % 4 != 1 {
            assert!(num_traits::Zero::is_zero(c), "λ_E has a t^{i} term");
        }
    }
    assert!(!num_traits::Zero::is_zero(l.coeff(5)));
    assert!(EllipticModel::from_ints(0, 0).is_err());
}

#[test]
fn elliptic_group_at_three() {
    let k = q9(20);
    let model = EllipticModel::lemniscatic();
    assert_eq!(cm_units(&model, &k).unwrap().len(), 4);
    let (g, eps) = elliptic_formal_group(&model, &k, 40).unwrap();
    // exactly one unit works, and it is a fourth root of unity
    assert!(eps.pow(4).eq_at_prec(&Elem::one(&k)));
    let z = g.zero_elem();
    assert_series_eq(&g.endo_int(-1).unwrap(), &Series::var(&z, 40).neg());
    let i = Elem::unr_generator(&k);
    assert_series_eq(&g.endo(&i).unwrap(), &Series::monomial(i.clone(), 1, 40));
    // [π](t) ≡ t^9 mod 3
    for (n, c) in g.frobenius().coeffs().iter().enumerate() {
        let d = if n == 9 { c.sub(&Elem::one(&k)) } else { c.clone() };
        assert!(d.val() >= Val::int(1), "coefficient {n}");
    }
    let r = g.integrality(6, &[i]).unwrap();
    assert!(r.integral, "{r:?}");
    assert!(frobenius_epsilon(&model, &LocalField::unramified(5, 2, 10).unwrap()).is_err());
    let _ = embed_series(&model.log_series(4), &k);
}
