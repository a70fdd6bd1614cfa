//! Acceptance criteria, one line per criterion.
//!
//! A criterion that is known not to hold as stated is listed with the exact
//! shape of its failure; the run fails if a passing criterion fails or a
//! known failure changes shape.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ltfourier::arith::{Elem, Field, LocalField, Val};
use ltfourier::bh::{katz_data, moment_oracle, verify_chellali, verify_katz, wp_series};
use ltfourier::formal_group::elliptic::{elliptic_formal_group, frobenius_epsilon, EllipticModel};
use ltfourier::formal_group::FormalModule;
use ltfourier::fourier::{
    amice_basis_check, distribution_relation_check, integral_pn, mahler_coefficients, pn_norm_check, pn_table, verify_main_bounds, Distribution, LocallyAnalyticFunction,
};
use ltfourier::gamma::{explicit_location_check, factorial_varpi_inequality_check, Gamma};
use ltfourier::report::Verdict;
use ltfourier::series::{newton_power_sums, Series};
use ltfourier::trace::{explicit_torsion_sum, verify_power_estimates, TorsionLevel};

const P: i64 = 24;

struct Outcome {
    pass: bool,
    detail: String,
    /// Set when the criterion fails as stated and the failure matches its
    /// documented shape.
    known_failure: Option<String>,
}

impl Outcome {
    fn ok(pass: bool, detail: String) -> Outcome {
        Outcome { pass, detail, known_failure: None }
    }
}

fn q9(prec: i64) -> Field {
    LocalField::unramified(3, 2, prec).unwrap()
}

fn q3(prec: i64) -> Field {
    LocalField::qp(3, prec).unwrap()
}

fn c1_amice() -> Outcome {
    let r = amice_basis_check(&q3(P + 40), 50, 60, &[1, 2], 30).unwrap();
    let bad_norms = r.norms.iter().filter(|x| x.norm_valuation != Val::zero()).count();
    Outcome::ok(
        r.passed(),
        format!("P_n = C(X,n) for n <= 50 ({} mismatches); {} scaled binomials, {bad_norms} off unit norm; {} reconstructions", r.pn_mismatches.len(), r.norms.len(), r.reconstructions.len()),
    )
}

fn c2_gamma() -> Outcome {
    let g = Gamma::new(3, 1, 2).unwrap();
    let v0 = g.upper_val(0);
    let loc = explicit_location_check(&g, 200);
    let fv = factorial_varpi_inequality_check(&g, 300);
    let pass = v0 == Val::int(-1) && loc.passed() && fv.inequality.passed() && fv.equality.passed();
    Outcome::ok(pass, format!("v(γ̄(0)) = {v0}; locations n <= 200: {}; inequality and equality i <= 300: {}", loc.passed(), fv.inequality.passed() && fv.equality.passed()))
}

fn c3_power() -> Outcome {
    let k = q9(P);
    let eps = frobenius_epsilon(&EllipticModel::lemniscatic(), &k).unwrap();
    let mut pass = true;
    let mut parts = vec![];
    for (name, pi) in [("π = -3ε", eps.mul_int(-3)), ("π = 3", Elem::from_int(&k, 3))] {
        let g = FormalModule::lubin_tate(&k, &pi, 140).unwrap();
        let r = verify_power_estimates(&g, 6, 120, &[1, 2]).unwrap();
        pass &= r.tally.all_certified();
        parts.push(format!("{name}: {:?}", r.tally));
    }
    Outcome::ok(pass, parts.join("; "))
}

fn random_series(rng: &mut StdRng, k: &Field, order: usize) -> Series<Elem> {
    let u = Elem::unr_generator(k);
    let deg = rng.gen_range(1..order);
    let c = (0..order)
        .map(|i| if i > deg { Elem::zero(k) } else { Elem::from_int(k, rng.gen_range(-50..=50)).add(&u.mul_int(rng.gen_range(-50..=50))) })
        .collect();
    Series::new(c, order, &Elem::zero(k))
}

fn c4_coleman() -> Outcome {
    let k = q9(P);
    let g = FormalModule::lubin_tate(&k, &Elem::from_int(&k, 3), 1000).unwrap();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst = Val::Inf;
    let mut count = 0;
    for level in 1..=2u32 {
        let lv = TorsionLevel::new(&g, level, 8).unwrap();
        for _ in 0..20 {
            let f = random_series(&mut rng, &k, 12);
            let s = lv.torsion_sum_poly(f.coeffs(), lv.degree() * 6).unwrap();
            let c = lv.coleman_factor(&s).unwrap();
            worst = worst.min(c.residual);
            count += 1;
        }
    }
    Outcome::ok(worst >= Val::int(P - 4), format!("{count} random integral f over N = 1, 2; smallest residual valuation {worst} (need {})", P - 4))
}

fn c5_fourier() -> Outcome {
    let mut detail = vec![];
    let mut theorem_ok = true;
    let mut corollary_shape_ok = true;
    let mut corollary_failures = 0;
    let t = Instant::now();
    for (name, g) in [
        // claims reach valuation ~50 at k = 150, so work well above that
        ("LT Q_9", FormalModule::lubin_tate(&q9(P + 70), &Elem::from_int(&q9(P + 70), 3), 12).unwrap()),
        ("Gm Q_3", FormalModule::multiplicative(&q3(P + 70), 12).unwrap()),
    ] {
        let r = verify_main_bounds(&g, 4, 150, &[1, 2]).unwrap();
        let mut cor_bad = 0;
        for e in &r.entries {
            for c in [&e.stint, &e.stint3, &e.stint1].into_iter().chain(e.stint4.iter()).chain(e.stint2.iter()) {
                theorem_ok &= c.verdict == Verdict::Certified;
            }
            for c in [Some(&e.corollary), e.corollary2.as_ref()].into_iter().flatten() {
                if c.verdict != Verdict::Certified {
                    cor_bad += 1;
                    corollary_shape_ok &= c.verdict == Verdict::Violated && e.level == 2 && e.k < g.q().pow(2) as usize;
                }
            }
        }
        corollary_failures += cor_bad;
        detail.push(format!("{name}: {:?}", r.tally));
    }
    // orthogonality
    let mut orth = true;
    for g in [FormalModule::lubin_tate(&q9(60), &Elem::from_int(&q9(60), 3), 30).unwrap(), FormalModule::multiplicative(&q3(60), 30).unwrap()] {
        let table = pn_table(&g, 25).unwrap();
        for n in 0..=25 {
            let mu = Distribution::monomial(&g, n);
            for (k, pk) in table.iter().enumerate() {
                let v = integral_pn(&mu, pk).unwrap();
                let want = if k == n { Elem::one(g.field()) } else { Elem::zero(g.field()) };
                orth &= v.sub(&want).val() >= v.precision();
            }
        }
    }
    // distribution relation and representative independence
    let mut rel = true;
    let target = Val::int(P - 4);
    let gm = FormalModule::multiplicative(&q3(P + 12), 40).unwrap();
    let f = gm.field();
    let poly = vec![Elem::from_int(f, 1), Elem::from_int(f, -2), Elem::from_int(f, 5)];
    for (a, k) in [(0i64, 3usize), (1, 2), (2, 5), (4, 1)] {
        let mu = Distribution::monomial(&gm, k);
        for level in 1..=2 {
            let r = distribution_relation_check(&mu, &Elem::from_int(f, a), level, &poly, &Elem::from_int(f, 1), target).unwrap();
            rel &= r.passed();
        }
    }
    let lt = FormalModule::lubin_tate(&q9(P + 12), &Elem::from_int(&q9(P + 12), 3), 40).unwrap();
    let kf = lt.field();
    let poly = vec![Elem::from_int(kf, 1), Elem::zero(kf), Elem::from_int(kf, 7)];
    for k in [0usize, 4, 11] {
        let mu = Distribution::monomial(&lt, k);
        for level in 1..=2 {
            let r = distribution_relation_check(&mu, &Elem::zero(kf), level, &poly, &Elem::unr_generator(kf), target).unwrap();
            rel &= r.passed();
        }
    }
    detail.push(format!("orthogonality k,n <= 25: {orth}; distribution relation: {rel}; {:.0?}", t.elapsed()));
    let pass = theorem_ok && corollary_failures == 0 && orth && rel;
    let known = (theorem_ok && orth && rel && corollary_failures > 0 && corollary_shape_ok)
        .then(|| format!("{corollary_failures} corollary entries violated, all at N = 2 with [k/q^N] = 0, where |γ̄(0)| >= 1 breaks the corollary's proof step"));
    Outcome { pass, detail: detail.join("; "), known_failure: known }
}

fn c6_pn_norms() -> Outcome {
    let mut detail = vec![];
    let mut all = true;
    let mut shape = true;
    let g = FormalModule::lubin_tate(&q9(P + 80), &Elem::from_int(&q9(P + 80), 3), 110).unwrap();
    let r = pn_norm_check(&g, 100, &[1, 2]).unwrap();
    all &= r.tally.all_certified();
    shape &= r.tally.violated == 0 && r.entries.iter().all(|e| e.upper == Verdict::Certified);
    let open: Vec<String> = r.entries.iter().filter(|e| e.lower != Verdict::Certified).map(|e| format!("{}@{}", e.n, e.level)).collect();
    detail.push(format!("LT Q_9: {:?}", r.tally));
    let g = FormalModule::multiplicative(&q3(P + 80), 110).unwrap();
    let r = pn_norm_check(&g, 100, &[1, 2]).unwrap();
    all &= r.tally.all_certified();
    shape &= r.tally.all_certified();
    detail.push(format!("Gm Q_3: {:?}", r.tally));
    let known = (!all && shape).then(|| format!("{} lower bounds undetermined (n@N = {}, ...): cancellation between grades g and g+q-1 needs ϖ^(q-1) beyond the known relative precision 1/e - s", open.len(), open[..open.len().min(6)].join(",")));
    Outcome { pass: all, detail: detail.join("; "), known_failure: known }
}

fn c7_mahler() -> Outcome {
    let mut detail = vec![];
    let mut pass = true;
    let lt = FormalModule::lubin_tate(&q9(P + 40), &Elem::from_int(&q9(P + 40), 3), 90).unwrap();
    let k = lt.field();
    let i = |n: i64| Elem::from_int(k, n);
    let u = Elem::unr_generator(k);
    let zero = Elem::zero(k);
    let lt_fns: Vec<Vec<Elem>> = vec![
        vec![i(1)],
        vec![zero.clone(), i(1)],
        vec![i(2), i(-1), i(1)],
        vec![zero.clone(), zero.clone(), zero.clone(), i(1)],
        vec![u.clone(), i(3), zero.clone(), i(1).div(&i(3)).unwrap()],
    ];
    for c in lt_fns {
        let f = LocallyAnalyticFunction::new(1).with_piece(zero.clone(), c);
        let m = mahler_coefficients(&lt, &f, 80).unwrap();
        pass &= m.tally.all_certified();
        detail.push(format!("{:?}", m.tally.verdict()));
    }
    let gm = FormalModule::multiplicative(&q3(P + 40), 90).unwrap();
    let k = gm.field();
    let i = |n: i64| Elem::from_int(k, n);
    let zero = Elem::zero(k);
    let gm_fns: Vec<LocallyAnalyticFunction> = vec![
        LocallyAnalyticFunction::from_polynomial_qp(k, 1, &[i(0), i(0), i(1)]).unwrap(),
        LocallyAnalyticFunction::new(1).with_piece(zero.clone(), vec![i(1)]),
        LocallyAnalyticFunction::new(1).with_piece(i(1), vec![i(0), i(0), i(3)]),
        LocallyAnalyticFunction::new(1).with_piece(i(2), vec![i(5), i(1)]).with_piece(zero.clone(), vec![i(-1)]),
        LocallyAnalyticFunction::from_polynomial_qp(k, 1, &[i(7), i(-3), i(0), i(0), i(1)]).unwrap(),
    ];
    for f in gm_fns {
        let m = mahler_coefficients(&gm, &f, 80).unwrap();
        pass &= m.tally.all_certified();
        detail.push(format!("{:?}", m.tally.verdict()));
    }
    Outcome::ok(pass, format!("10 functions, n <= 80: {}", detail.join(",")))
}

fn c8_moments() -> Outcome {
    let k = q9(P + 16);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 101);
    let (g, _) = elliptic_formal_group(&model, &k, 210).unwrap();
    let r = moment_oracle(&g, &ws, 2, 2, 20, 200, Val::int(P - 6)).unwrap();
    let worst = r.entries.iter().map(|e| e.check.residual_precision.min(e.check.achieved)).fold(Val::Inf, Val::min);
    Outcome::ok(r.passed(), format!("φ and ψ, n <= 20: {:?}; agreement to valuation >= {worst} (need {})", r.tally, P - 6))
}

fn c9_katz() -> Outcome {
    let k = q9(P);
    let model = EllipticModel::lemniscatic();
    let ws = wp_series(&model, 70);
    let data = katz_data(&model, &k, 2, 2).unwrap();
    let r = verify_katz(&data, &ws, 2, 120).unwrap();
    let c = verify_chellali(&data, &ws, 2, 120).unwrap();
    let integral = r.integrality.iter().all(|x| x.integral.ok());
    Outcome::ok(
        r.passed() && c.passed() && integral,
        format!("L(n) integral n <= 120: {integral}; Katz {:?} ({} nontrivial); Chellali {:?} ({} nontrivial)", r.tally, r.nontrivial(), c.tally, c.nontrivial()),
    )
}

fn c10_brute_force() -> Outcome {
    let base = q3(P + 10);
    let g = FormalModule::lubin_tate(&base, &Elem::from_int(&base, 3), 200).unwrap();
    let lv = TorsionLevel::new(&g, 1, 180).unwrap();
    let l = LocalField::ramified_int(&base, &[3, 0, 1], P + 10).unwrap();
    let pi = Elem::uniformizer(&l);
    let roots = vec![Elem::zero(&l), pi.clone(), pi.neg()];
    let fr: Vec<Elem> = [0, 3, 0, 1].iter().map(|&c| Elem::from_int(&l, c)).collect();
    let mut rng = StdRng::seed_from_u64(10);
    let mut exact = true;
    let mut prec = Val::Inf;
    for deg in 0..=10usize {
        let c: Vec<Elem> = (0..=deg).map(|_| Elem::from_int(&base, rng.gen_range(-20..=20))).collect();
        let s = lv.torsion_sum_poly(&c, 12).unwrap();
        let fl = Series::new(c.iter().map(|x| x.embed(&l).unwrap()).collect(), deg + 1, &Elem::zero(&l));
        let b = explicit_torsion_sum(&fr, &roots, &fl, 12).unwrap();
        for j in 0..12 {
            let d = s.coeff(j).embed(&l).unwrap().sub(b.coeff(j));
            exact &= d.val() >= d.precision();
            prec = prec.min(d.precision());
        }
    }
    let mut newton_ok = true;
    for roots in [vec![1i64, 2, 3], vec![-4, 0, 7, 7, 2], vec![5, -5, 11, 1, -2, 9]] {
        let mut poly = vec![BigRational::from_integer(BigInt::from(1))];
        for &r in &roots {
            let mut next = vec![BigRational::from_integer(BigInt::from(0)); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigRational::from_integer(BigInt::from(r));
            }
            poly = next;
        }
        let sums = newton_power_sums(&poly, 15).unwrap();
        for (k, s) in sums.iter().enumerate() {
            let direct: BigInt = roots.iter().map(|&r| BigInt::from(r).pow(k as u32)).sum();
            newton_ok &= *s == BigRational::from_integer(direct);
        }
    }
    Outcome::ok(exact && newton_ok && prec >= Val::int(P), format!("torsion sums deg <= 10 equal at precision {prec}: {exact}; Newton sums exact: {newton_ok}"))
}

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    type Criterion = (u32, &'static str, fn() -> Outcome);
    let criteria: Vec<Criterion> = vec![
        (1, "Amice specialization", c1_amice),
        (2, "γ machinery", c2_gamma),
        (3, "power-sum bounds", c3_power),
        (4, "Coleman factorization", c4_coleman),
        (5, "Fourier bounds", c5_fourier),
        (6, "P_n norms", c6_pn_norms),
        (7, "Mahler decay", c7_mahler),
        (8, "moment oracle", c8_moments),
        (9, "Katz and Chellali congruences", c9_katz),
        (10, "brute-force equivalences", c10_brute_force),
    ];
    let mut unexpected = 0;
    for (n, name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || f == &n.to_string()) {
            continue;
        }
        let t = Instant::now();
        let o = run();
        let status = match (&o.pass, &o.known_failure) {
            (true, _) => "PASS".to_string(),
            (false, Some(why)) => format!("FAIL (known: {why})"),
            (false, None) => {
                unexpected += 1;
                "FAIL".to_string()
            }
        };
        println!("criterion {n:>2} {name}: {status} [{:.1?}] {}", t.elapsed(), o.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed unexpectedly");
        std::process::exit(1);
    }
}
