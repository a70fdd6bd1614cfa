//! Randomized invariants.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ltfourier::arith::{binom_lemma_check, teichmuller, Elem, Field, LocalField, Val};
use ltfourier::formal_group::FormalModule;
use ltfourier::gamma::Gamma;
use ltfourier::series::{newton_power_sums, Series};
use ltfourier::trace::TorsionLevel;

fn q9() -> Field {
    LocalField::unramified(3, 2, 30).unwrap()
}

fn ramified() -> Field {
    LocalField::ramified_int(&LocalField::qp(3, 30).unwrap(), &[3, 0, 1], 30).unwrap()
}

/// `p^shift (a + b·gen)` with small integers.
fn elem(k: &Field, a: i64, b: i64, shift: i64) -> Elem {
    let gen = if k.h() > 1 { Elem::unr_generator(k) } else { Elem::uniformizer(k) };
    Elem::from_int(k, a).add(&gen.mul_int(b)).mul_p_pow(shift)
}

fn small() -> impl Strategy<Value = (i64, i64, i64)> {
    (-2000i64..2000, -2000i64..2000, -2i64..3)
}

fn equal(x: &Elem, y: &Elem) -> bool {
    let d = x.sub(y);
    d.val() >= d.precision()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(a in small(), b in small(), c in small(), ramified_field in any::<bool>()) {
        let k = if ramified_field { ramified() } else { q9() };
        let (x, y, z) = (elem(&k, a.0, a.1, a.2), elem(&k, b.0, b.1, b.2), elem(&k, c.0, c.1, c.2));
        prop_assert!(equal(&x.add(&y).add(&z), &x.add(&y.add(&z))));
        prop_assert!(equal(&x.mul(&y.add(&z)), &x.mul(&y).add(&x.mul(&z))));
        prop_assert!(equal(&x.mul(&y).mul(&z), &x.mul(&y.mul(&z))));
        if !x.is_zero() {
            prop_assert!(equal(&x.mul(&x.inv().unwrap()), &Elem::one(&k)));
        }
    }

    #[test]
    fn valuations(a in small(), b in small(), ramified_field in any::<bool>()) {
        let k = if ramified_field { ramified() } else { q9() };
        let (x, y) = (elem(&k, a.0, a.1, a.2), elem(&k, b.0, b.1, b.2));
        prop_assume!(!x.is_zero() && !y.is_zero());
        prop_assert_eq!(x.mul(&y).val(), x.val() + y.val());
        let s = x.add(&y);
        prop_assert!(s.val() >= x.val().min(y.val()));
        if x.val() != y.val() {
            prop_assert_eq!(s.val(), x.val().min(y.val()));
        }
    }

    #[test]
    fn teichmuller_roots_of_unity(r0 in 0u64..3, r1 in 0u64..3) {
        prop_assume!(r0 + r1 > 0);
        let k = q9();
        let w = teichmuller(&k, &[r0, r1]).unwrap();
        prop_assert!(equal(&w.pow(8), &Elem::one(&k)));
        prop_assert_eq!(w.residue(), vec![r0, r1]);
    }

    #[test]
    fn binomial_lemma(k in 0u64..=50, pq in 0usize..3, r in 0u64..25) {
        let (p, q) = [(2, 4), (3, 9), (5, 25)][pq];
        let r = r % q;
        let rep = binom_lemma_check(k, r, q, p);
        prop_assert!(rep.part_i && rep.part_ii, "{:?}", rep);
    }

    #[test]
    fn reversion(c in proptest::collection::vec(-30i64..30, 1..12), lin in 1i64..20) {
        prop_assume!(lin % 3 != 0);
        let k = LocalField::qp(3, 40).unwrap();
        let order = c.len() + 2;
        let mut coeffs = vec![Elem::zero(&k), Elem::from_int(&k, lin)];
        coeffs.extend(c.iter().map(|&x| Elem::from_int(&k, x)));
        let f = Series::new(coeffs, order, &Elem::zero(&k));
        let g = f.reverse().unwrap();
        let id = g.compose(&f).unwrap();
        for i in 0..order {
            let want = if i == 1 { Elem::one(&k) } else { Elem::zero(&k) };
            prop_assert!(equal(id.coeff(i), &want), "coefficient {i}: {}", id.coeff(i));
        }
    }

    #[test]
    fn newton_sums(roots in proptest::collection::vec(-9i64..10, 1..=6)) {
        let r = |n: i64| BigRational::from_integer(BigInt::from(n));
        let mut poly = vec![r(1)];
        for &x in &roots {
            let mut next = vec![r(0); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r(x);
            }
            poly = next;
        }
        let sums = newton_power_sums(&poly, 30).unwrap();
        for (k, s) in sums.iter().enumerate() {
            let direct: BigInt = roots.iter().map(|&x| BigInt::from(x).pow(k as u32)).sum();
            prop_assert_eq!(s, &BigRational::from_integer(direct));
        }
    }

    #[test]
    fn gamma_monotone(params in 0usize..4, k in 0u64..500) {
        let (p, e, h) = [(3, 1, 1), (3, 1, 2), (5, 1, 2), (3, 2, 1)][params];
        let g = Gamma::new(p, e, h).unwrap();
        prop_assert!(g.upper_val(k) <= g.upper_val(k + 1));
        prop_assert!(g.lower_val(k) <= g.lower_val(k + 1));
        prop_assert!(g.upper_val(k) <= g.lower_val(k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn endomorphisms(a in -6i64..7, b in -6i64..7, multiplicative in any::<bool>()) {
        let order = 10;
        let g = if multiplicative {
            FormalModule::multiplicative(&LocalField::qp(3, 30).unwrap(), order).unwrap()
        } else {
            let k = q9();
            FormalModule::lubin_tate(&k, &Elem::from_int(&k, 3), order).unwrap()
        };
        let sum = g.add_series(&g.endo_int(a).unwrap(), &g.endo_int(b).unwrap()).unwrap();
        let direct = g.endo_int(a + b).unwrap();
        let prod = g.endo_int(a).unwrap().compose(&g.endo_int(b).unwrap()).unwrap();
        let direct_prod = g.endo_int(a * b).unwrap();
        for i in 0..order {
            prop_assert!(equal(sum.coeff(i), direct.coeff(i)));
            prop_assert!(equal(prod.coeff(i), direct_prod.coeff(i)));
        }
    }

    #[test]
    fn torsion_sum_is_linear(f in proptest::collection::vec(-40i64..40, 1..10), h in proptest::collection::vec(-40i64..40, 1..10), c in -9i64..10) {
        let k = q9();
        let g = FormalModule::lubin_tate(&k, &Elem::from_int(&k, 3), 120).unwrap();
        let lv = TorsionLevel::new(&g, 1, 8).unwrap();
        let el = |xs: &[i64]| xs.iter().map(|&x| Elem::from_int(&k, x)).collect::<Vec<_>>();
        let (fe, he) = (el(&f), el(&h));
        let n = fe.len().max(he.len());
        let comb: Vec<Elem> = (0..n)
            .map(|i| {
                let a = fe.get(i).cloned().unwrap_or_else(|| Elem::zero(&k));
                let b = he.get(i).cloned().unwrap_or_else(|| Elem::zero(&k));
                a.add(&b.mul_int(c))
            })
            .collect();
        let out = 20;
        let sf = lv.torsion_sum_poly(&fe, out).unwrap();
        let sh = lv.torsion_sum_poly(&he, out).unwrap();
        let sc = lv.torsion_sum_poly(&comb, out).unwrap();
        for i in 0..out {
            let want = sf.coeff(i).add(&sh.coeff(i).mul_int(c));
            prop_assert!(equal(sc.coeff(i), &want));
            prop_assert!(sc.coeff(i).precision() >= Val::int(20));
        }
    }
}
