use super::{Elem, Field, Val};
use crate::{Error, Result};

/// Evaluates a polynomial (low-to-high coefficients) by Horner's rule.
pub fn poly_eval(coeffs: &[Elem], x: &Elem) -> Elem {
    let mut acc = Elem::zero(x.field());
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

fn poly_deriv(coeffs: &[Elem]) -> Vec<Elem> {
    coeffs.iter().enumerate().skip(1).map(|(i, c)| c.mul_int(i as i64)).collect()
}

/// Newton iteration from `x0`, requiring `v(f(x0)) > 2 v(f'(x0))`.
pub fn hensel_root(coeffs: &[Elem], x0: &Elem) -> Result<Elem> {
    let df = poly_deriv(coeffs);
    let fx = poly_eval(coeffs, x0);
    let dfx = poly_eval(&df, x0);
    let vd = dfx.val();
    if vd.is_inf() || fx.val() <= vd.scale(2) {
        return Err(Error::NotComputable(format!(
            "Hensel condition fails: v(f) = {}, v(f') = {}",
            fx.val(),
            vd
        )));
    }
    let mut x = x0.clone();
    for _ in 0..256 {
        let fx = poly_eval(coeffs, &x);
        if fx.is_zero() {
            return Ok(x);
        }
        let step = fx.div(&poly_eval(&df, &x))?;
        if step.is_zero() {
            return Ok(x);
        }
        x = x.sub(&step);
    }
    Ok(x)
}

/// Teichmüller lift of a residue class given by its coordinates on
/// `1, u, …, u^{h-1}` in `F_q`.
pub fn teichmuller(field: &Field, residue: &[u64]) -> Result<Elem> {
    let h = field.h();
    if residue.len() != h {
        return Err(Error::InvalidInput(format!("residue must have {h} coordinates")));
    }
    let u = Elem::unr_generator(field);
    let mut x0 = Elem::zero(field);
    for &r in residue.iter().rev() {
        x0 = x0.mul(&u).add(&Elem::from_int(field, (r % field.p()) as i64));
    }
    if x0.is_zero() || x0.val() > Val::zero() {
        return Ok(Elem::zero(field));
    }
    // root of X^q - X
    let q = field.q() as usize;
    let mut coeffs = vec![Elem::zero(field); q + 1];
    coeffs[1] = Elem::from_int(field, -1);
    coeffs[q] = Elem::one(field);
    hensel_root(&coeffs, &x0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LocalField;

    #[test]
    fn teichmuller_is_root_of_unity() {
        let f = LocalField::unramified(3, 2, 20).unwrap();
        let w = teichmuller(&f, &[1, 1]).unwrap();
        assert!(w.pow(8).eq_at_prec(&Elem::one(&f)));
        assert_eq!(w.residue(), vec![1, 1]);
        let k = LocalField::qp(5, 20).unwrap();
        let w = teichmuller(&k, &[2]).unwrap();
        assert!(w.pow(4).eq_at_prec(&Elem::one(&k)));
        assert!(!w.eq_at_prec(&Elem::from_int(&k, 2)));
    }

    #[test]
    fn square_root_by_hensel() {
        let k = LocalField::qp(7, 20).unwrap();
        let c = [Elem::from_int(&k, -2), Elem::zero(&k), Elem::one(&k)];
        let r = hensel_root(&c, &Elem::from_int(&k, 3)).unwrap();
        assert!(r.square().eq_at_prec(&Elem::from_int(&k, 2)));
    }
}
