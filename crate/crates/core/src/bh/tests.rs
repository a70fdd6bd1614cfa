use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::*;
use crate::arith::LocalField;
use crate::formal_group::elliptic::elliptic_formal_group;

fn q9(prec: i64) -> Field {
    LocalField::unramified(3, 2, prec).unwrap()
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn lemniscatic_expansion() {
    let ws = wp_series(&EllipticModel::lemniscatic(), 40);
    assert_eq!(ws.c(2), &r(1, 5));
    assert_eq!(ws.b(2), r(2, 5));
    assert_eq!(ws.bh(4), r(8, 5));
    assert!(ws.c(3).is_zero());
    for k in 2..=40 {
        // g3 = 0: only z^{4j+2} survives
        assert_eq!(ws.c(k).is_zero(), k % 2 == 1, "c_{k}");
    }
    assert!(ws.ode_residual().iter().all(|x| x.is_zero()));
    assert!(ws.zeta_consistent(60));
}

#[test]
fn ode_residual_detects_errors() {
    let mut ws = wp_series(&EllipticModel::from_ints(4, 1).unwrap(), 12);
    assert!(ws.ode_residual().iter().all(|x| x.is_zero()));
    ws.c[5] += r(1, 1);
    assert!(ws.ode_residual().iter().any(|x| !x.is_zero()));
}

#[test]
fn pole_cancellation_and_expansions() {
    let ws = wp_series(&EllipticModel::lemniscatic(), 20);
    let (pole, c) = wp_b_coeffs(&ws, 2, 30);
    assert!(pole.is_zero());
    assert!(c[0].is_zero() && c[1].is_zero());
    // (1 - b^4) B(2)/2! with B(2) = 2/5
    assert_eq!(c[2], r(-15, 5));
    let (res, z) = zeta_bc_coeffs(&ws, 2, 2, 30);
    assert!(res.is_zero());
    // z^3: -(c - c^3)(1 - b^4) B(2)/3!
    assert_eq!(z[3], -r(2 - 8, 1) * r(1 - 16, 1) * r(2, 5) / r(6, 1));
}

#[test]
fn phi_matches_x_coordinate_route() {
    // φ(t) = x(t) - b^2 x([b] t), with x = ℘ ∘ λ_E
    let k = q9(30);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 30);
    let (g, _) = elliptic_formal_group(&model, &k, 40).unwrap();
    let phi = phi_series(&g, &ws, 2, 40).unwrap();
    assert!(phi.pole_free);
    assert!(phi.integrality.ok(), "{:?}", phi.integrality);
    let xs = crate::formal_group::elliptic::embed_series(&model.x_scaled(42), &k);
    let b2 = g.endo_int(2).unwrap().extend(42);
    let unit = b2.shift_down(1).unwrap();
    let xb = xs.compose(&b2).unwrap();
    let two = Elem::from_int(&k, 2);
    // x([2]t) (2t)^2 u^2 = X([2] t), u = [2]t/(2t)
    let u2 = unit.scale(&two.inv().unwrap()).mul(&unit.scale(&two.inv().unwrap()));
    let inner = xs.truncate(41).sub(&xb.truncate(41).mul(&u2.truncate(41).inverse().unwrap()));
    let alt = inner.shift_down(2).unwrap();
    for i in 0..38 {
        let d = alt.coeff(i).sub(phi.series.coeff(i));
        assert!(d.val() >= Val::int(20), "t^{i}: {d}");
    }
}

#[test]
fn katz_unit() {
    let k = q9(30);
    let data = katz_data(&EllipticModel::lemniscatic(), &k, 2, 2).unwrap();
    // 9!/(3^4 8) = 560
    let u560 = Elem::from_int(&k, 560).mul(&data.eps.inv().unwrap()).neg();
    assert!(u560.sub(&data.u).val() >= Val::int(30));
    assert_eq!(data.gamma.val(), Val::zero());
    assert!(data.defining_residual() >= Val::int(29));
    assert!(data.gamma.sub(&Elem::one(&k)).val() >= Val::int(1));
}

#[test]
fn l_values_small() {
    let k = q9(30);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 40);
    let data = katz_data(&model, &k, 2, 2).unwrap();
    assert!(data.l_value(&ws, 0).unwrap().is_zero());
    for n in 0..60u64 {
        // B(n) vanishes unless n ≡ 2 mod 4 on this curve
        assert_eq!(data.l_rational(&ws, n).is_zero(), n % 4 != 2, "n = {n}");
    }
    let vals = l_values(&data, &ws, 70).unwrap();
    assert!(vals.iter().all(|x| x.integral.ok()));
}

#[test]
fn katz_and_chellali_small() {
    let k = q9(30);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 40);
    let data = katz_data(&model, &k, 2, 2).unwrap();
    let r = verify_katz(&data, &ws, 1, 70).unwrap();
    assert!(r.passed(), "{:?}", r.entries.iter().filter(|e| !e.check.ok()).collect::<Vec<_>>());
    assert!(r.nontrivial() >= 10);
    let c = verify_chellali(&data, &ws, 1, 70).unwrap();
    assert!(c.passed(), "{:?}", c.entries.iter().filter(|e| !e.check.ok()).collect::<Vec<_>>());
    // a wrong modulus is caught
    let e = r.entries.iter().find(|e| !e.trivial).unwrap();
    let diff = data.l_value(&ws, e.m).unwrap().sub(&data.l_value(&ws, e.n).unwrap());
    assert!(diff.val() < Val::int(20));
    // partners never leave the range, even when p^l(q-1) > n_max
    let short = verify_chellali(&data, &ws, 2, 20).unwrap();
    assert!(short.entries.iter().all(|e| e.m <= 20 && e.l == 0));
}

#[test]
fn branch_independence() {
    let k = q9(30);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 40);
    let data = katz_data(&model, &k, 2, 2).unwrap();
    let base = verify_katz(&data, &ws, 1, 60).unwrap();
    for z in branch_shifts(&k).unwrap().into_iter().take(3) {
        let shifted = data.with_branch(&z);
        let l6 = shifted.l_value(&ws, 6).unwrap();
        let want = data.l_value(&ws, 6).unwrap().mul(&z.pow(6).inv().unwrap());
        assert!(l6.sub(&want).val() >= Val::int(25));
        let r = verify_katz(&shifted, &ws, 1, 60).unwrap();
        let verdicts = |x: &CongruenceReport| x.entries.iter().map(|e| e.check.verdict).collect::<Vec<_>>();
        assert_eq!(verdicts(&r), verdicts(&base));
    }
}

#[test]
fn moment_oracle_small() {
    let k = q9(30);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 40);
    let (g, _) = elliptic_formal_group(&model, &k, 80).unwrap();
    let r = moment_oracle(&g, &ws, 2, 2, 8, 72, Val::int(5)).unwrap();
    assert!(r.passed(), "{:#?}", r.entries.iter().filter(|e| !e.check.ok()).collect::<Vec<_>>());
}

#[test]
fn moment_congruences_for_phi() {
    let k = q9(40);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 60);
    let (g, _) = elliptic_formal_group(&model, &k, 100).unwrap();
    let phi = phi_series(&g, &ws, 2, 100).unwrap();
    let r = moment_congruence_check(&g, &phi.series, 12, 24, 1, 100).unwrap();
    assert_eq!(r.tally.violated, 0);
    for part in 1..=3 {
        assert!(r.entries.iter().any(|e| e.part == part && e.check.ok()), "part {part}");
    }
    // the unit integral of the constant series vanishes
    let one = Series::one(&g.zero_elem(), 100);
    let r = moment_congruence_check(&g, &one, 6, 6, 0, 100).unwrap();
    assert!(r.entries.iter().all(|e| e.check.achieved.is_inf()));
}
