//! Dense univariate polynomials over the tower.
//!
//! Coefficients are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty vector. All operations take the [`Tower`]
//! explicitly since elements carry no context of their own.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff::{Elem, Layer, Tower};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Elem) -> Self {
        Poly::new(vec![c])
    }

    /// `X - c`
    pub fn linear_root(k: &Tower, c: Elem) -> Self {
        Poly::new(vec![k.neg(c), Elem::ONE])
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }
}

/// Log form: coefficient indices, lowest degree first, e.g. `[3,0,1]`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

pub fn add(k: &Tower, f: &Poly, g: &Poly) -> Poly {
    let n = f.coeffs.len().max(g.coeffs.len());
    Poly::new((0..n).map(|i| k.add(f.coeff(i), g.coeff(i))).collect())
}

pub fn sub(k: &Tower, f: &Poly, g: &Poly) -> Poly {
    let n = f.coeffs.len().max(g.coeffs.len());
    Poly::new((0..n).map(|i| k.sub(f.coeff(i), g.coeff(i))).collect())
}

pub fn neg(k: &Tower, f: &Poly) -> Poly {
    Poly::new(f.coeffs.iter().map(|&c| k.neg(c)).collect())
}

pub fn scale(k: &Tower, f: &Poly, c: Elem) -> Poly {
    Poly::new(f.coeffs.iter().map(|&x| k.mul(x, c)).collect())
}

pub fn mul(k: &Tower, f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() || g.is_zero() {
        return Poly::zero();
    }
    let mut out = vec![Elem::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in g.coeffs.iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(a, b));
        }
    }
    Poly::new(out)
}

pub fn pow(k: &Tower, f: &Poly, mut e: u32) -> Poly {
    let mut acc = Poly::constant(Elem::ONE);
    let mut base = f.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(k, &acc, &base);
        }
        base = mul(k, &base, &base);
        e >>= 1;
    }
    acc
}

/// Quotient and remainder, `deg r < deg g`.
pub fn divmod(k: &Tower, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    let dg = g.degree().ok_or(Error::ZeroDivisor)?;
    let lead_inv = k.inv(g.lead())?;
    let mut rem = f.coeffs.clone();
    if rem.len() <= dg {
        return Ok((Poly::zero(), f.clone()));
    }
    let mut quot = vec![Elem::ZERO; rem.len() - dg];
    for i in (dg..rem.len()).rev() {
        let c = k.mul(rem[i], lead_inv);
        if c.is_zero() {
            continue;
        }
        quot[i - dg] = c;
        for (j, &gj) in g.coeffs.iter().enumerate() {
            let t = &mut rem[i - dg + j];
            *t = k.sub(*t, k.mul(c, gj));
        }
    }
    rem.truncate(dg);
    Ok((Poly::new(quot), Poly::new(rem)))
}

pub fn eval(k: &Tower, f: &Poly, x: Elem) -> Elem {
    f.coeffs
        .iter()
        .rev()
        .fold(Elem::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
}

pub fn derivative(k: &Tower, f: &Poly) -> Poly {
    Poly::new(
        f.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| k.mul(k.from_int(i as i64), c))
            .collect(),
    )
}

pub fn monic(k: &Tower, f: &Poly) -> Result<Poly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(scale(k, f, k.inv(f.lead())?))
}

/// Monic gcd by Euclid; `gcd(f, 0) = monic(f)`.
pub fn gcd(k: &Tower, f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = divmod(k, &a, &b)?;
        a = b;
        b = r;
    }
    monic(k, &a)
}

/// Determinant of the Sylvester matrix of `f` (formal degree `m`) and `g`
/// (formal degree `n`): `n` shifted rows of `f` then `m` shifted rows of `g`,
/// coefficients highest first.
fn sylvester_det(k: &Tower, f: &[Elem], m: usize, g: &[Elem], n: usize) -> Elem {
    let size = m + n;
    if size == 0 {
        return Elem::ONE;
    }
    let at = |c: &[Elem], i: usize| c.get(i).copied().unwrap_or(Elem::ZERO);
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![Elem::ZERO; size];
        for j in 0..=m {
            row[shift + j] = at(f, m - j);
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![Elem::ZERO; size];
        for j in 0..=n {
            row[shift + j] = at(g, n - j);
        }
        rows.push(row);
    }
    determinant(k, rows)
}

/// Gaussian elimination over the field.
pub fn determinant(k: &Tower, mut rows: Vec<Vec<Elem>>) -> Elem {
    let size = rows.len();
    let mut det = Elem::ONE;
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
            return Elem::ZERO;
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = k.neg(det);
        }
        let pv = rows[col][col];
        det = k.mul(det, pv);
        let pv_inv = k.inv(pv).expect("pivot is nonzero");
        let (upper, lower) = rows.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower {
            let factor = k.mul(row[col], pv_inv);
            if factor.is_zero() {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = k.sub(*x, k.mul(factor, y));
            }
        }
    }
    det
}

/// Sylvester resultant; `Res(f, g) = lc(f)^{deg g} · ∏_{f(α)=0} g(α)`.
pub fn resultant(k: &Tower, f: &Poly, g: &Poly) -> Result<Elem> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    Ok(sylvester_det(k, &f.coeffs, m, &g.coeffs, n))
}

/// `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`, with `f'` taken at formal degree
/// `n - 1` so a vanishing top derivative coefficient is handled.
pub fn discriminant(k: &Tower, f: &Poly) -> Result<Elem> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let df = derivative(k, f);
    let res = sylvester_det(k, &f.coeffs, n, &df.coeffs, n - 1);
    let mut d = k.div(res, f.lead())?;
    if (n * (n - 1) / 2) % 2 == 1 {
        d = k.neg(d);
    }
    Ok(d)
}

/// Roots lying in `layer`, repeated by multiplicity, in canonical order.
pub fn roots(k: &Tower, f: &Poly, layer: Layer) -> Result<Vec<Elem>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for x in k.elements(layer) {
        if !eval(k, f, x).is_zero() {
            continue;
        }
        let lin = Poly::linear_root(k, x);
        let mut rest = f.clone();
        loop {
            let (quo, r) = divmod(k, &rest, &lin)?;
            if !r.is_zero() {
                break;
            }
            out.push(x);
            rest = quo;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(k: &Tower, c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&x| k.from_int(x)).collect())
    }

    fn arb_poly(order: u32, max_len: usize) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..order, 0..=max_len)
    }

    fn to_poly(k: &Tower, c: Vec<u32>) -> Poly {
        Poly::new(c.into_iter().map(|i| k.elem(i as u64).unwrap()).collect())
    }

    #[test]
    fn divmod_basics() {
        let k = Tower::new(7, 1).unwrap();
        let f = p(&k, &[1, 2, 3, 4]);
        let (q, r) = divmod(&k, &f, &f).unwrap();
        assert_eq!(q, Poly::constant(Elem::ONE));
        assert!(r.is_zero());
        assert!(matches!(
            divmod(&k, &f, &Poly::zero()),
            Err(Error::ZeroDivisor)
        ));
        let c = k.from_int(3);
        assert!(eval(&k, &Poly::linear_root(&k, c), c).is_zero());
    }

    #[test]
    fn gcd_examples() {
        let k = Tower::new(7, 1).unwrap();
        let f = p(&k, &[3, 3, 5]); // 5X^2 + 3X + 3
        assert_eq!(gcd(&k, &f, &Poly::zero()).unwrap(), monic(&k, &f).unwrap());
        let a = mul(&k, &p(&k, &[-1, 1]), &p(&k, &[-2, 1]));
        let b = mul(&k, &p(&k, &[-1, 1]), &p(&k, &[-3, 1]));
        assert_eq!(gcd(&k, &a, &b).unwrap(), p(&k, &[-1, 1]));
        assert!(gcd(&k, &Poly::zero(), &Poly::zero()).is_err());
    }

    #[test]
    fn gcd_matches_brute_force_over_f5() {
        // brute force: the highest-degree monic polynomial dividing both
        let k = Tower::new(5, 1).unwrap();
        let monics: Vec<Poly> = (0..=3usize)
            .flat_map(|d| {
                (0..5u32.pow(d as u32)).map(move |n| {
                    let mut c: Vec<i64> = (0..d)
                        .map(|i| ((n / 5u32.pow(i as u32)) % 5) as i64)
                        .collect();
                    c.push(1);
                    c
                })
            })
            .map(|c| p(&k, &c))
            .collect();
        let divides = |d: &Poly, f: &Poly| divmod(&k, f, d).unwrap().1.is_zero();
        let mut checked = 0;
        for a in monics.iter().filter(|m| m.degree() == Some(3)).step_by(3) {
            for b in monics.iter().filter(|m| m.degree() >= Some(2)).step_by(5) {
                let brute = monics
                    .iter()
                    .filter(|d| divides(d, a) && divides(d, b))
                    .max_by_key(|d| d.degree())
                    .unwrap();
                assert_eq!(&gcd(&k, a, b).unwrap(), brute);
                checked += 1;
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn resultant_linear_and_constant() {
        let k = Tower::new(7, 1).unwrap();
        for c in 0..7 {
            for d in 0..7 {
                let r = resultant(&k, &p(&k, &[-c, 1]), &p(&k, &[-d, 1])).unwrap();
                assert_eq!(r, k.from_int(c - d));
            }
        }
        // Res(f, c) = c^{deg f}
        let f = p(&k, &[1, 2, 0, 1]);
        assert_eq!(resultant(&k, &f, &p(&k, &[3])).unwrap(), k.from_int(27));
        assert!(resultant(&k, &Poly::zero(), &f).is_err());
    }

    #[test]
    fn resultant_product_formula() {
        // lc(f)^{deg g} ∏ g(α) over the roots of a split f
        let k = Tower::new(11, 1).unwrap();
        let lc = k.from_int(3);
        let rts = [2, 5, 5];
        let mut f = Poly::constant(lc);
        for r in rts {
            f = mul(&k, &f, &p(&k, &[-r, 1]));
        }
        let g = p(&k, &[4, 1, 7]);
        let mut expect = k.pow(lc, 2);
        for r in rts {
            expect = k.mul(expect, eval(&k, &g, k.from_int(r)));
        }
        assert_eq!(resultant(&k, &f, &g).unwrap(), expect);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor_q7() {
        let k = Tower::new(7, 1).unwrap();
        let mut zeros = 0;
        for n in (0..7u32.pow(4)).step_by(3) {
            let f = p(
                &k,
                &[(n % 7) as i64, (n / 7 % 7) as i64, (n / 49 % 7) as i64, 1],
            );
            let g = p(&k, &[(n / 343) as i64, 1, (n % 5) as i64, 2]);
            let r = resultant(&k, &f, &g).unwrap();
            let d = gcd(&k, &f, &g).unwrap().degree().unwrap();
            assert_eq!(r.is_zero(), d >= 1);
            zeros += r.is_zero() as u32;
        }
        assert!(zeros > 0);
    }

    #[test]
    fn discriminant_examples() {
        let k = Tower::new(11, 1).unwrap();
        for b in 0..11 {
            for c in 0..11 {
                let d = discriminant(&k, &p(&k, &[c, b, 1])).unwrap();
                assert_eq!(d, k.from_int(b * b - 4 * c));
            }
        }
        let rep = mul(
            &k,
            &p(&k, &[-3, 1]),
            &mul(&k, &p(&k, &[-3, 1]), &p(&k, &[1, 1])),
        );
        assert!(discriminant(&k, &rep).unwrap().is_zero());
        assert!(matches!(
            discriminant(&k, &p(&k, &[4])),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn discriminant_of_conic_swap_quadratic() {
        // disc(3a^q A^2 - 9a^{q+1} A + 9a^{q+2} - a) = 3a^{q+1}(4 - 9a^{q+1})
        let k = Tower::new(7, 1).unwrap();
        let c = |n| k.from_int(n);
        for a in k.nonzero(Layer::Top) {
            let aq = k.frobenius(a);
            let n = k.mul(a, aq);
            let f = Poly::new(vec![
                k.sub(k.mul(c(9), k.mul(n, a)), a),
                k.neg(k.mul(c(9), n)),
                k.mul(c(3), aq),
            ]);
            let expect = k.mul(k.mul(c(3), n), k.sub(c(4), k.mul(c(9), n)));
            assert_eq!(discriminant(&k, &f).unwrap(), expect);
        }
    }

    #[test]
    fn roots_examples() {
        let k = Tower::new(5, 1).unwrap();
        let f = p(&k, &[-1, 0, 1]);
        assert_eq!(
            roots(&k, &f, Layer::Top).unwrap(),
            vec![Elem::ONE, k.neg(Elem::ONE)]
        );
        let g = p(&k, &[2, 0, 1]); // X^2 + 2: no roots in F_5, two in F_25
        let sub = roots(&k, &g, Layer::Sub).unwrap();
        let top = roots(&k, &g, Layer::Top).unwrap();
        assert!(sub.is_empty());
        assert_eq!(top.len(), 2);
        assert!(sub.iter().all(|r| top.contains(r)));
        let dbl = mul(&k, &p(&k, &[-2, 1]), &p(&k, &[-2, 1]));
        assert_eq!(roots(&k, &dbl, Layer::Sub).unwrap(), vec![k.from_int(2); 2]);
    }

    #[test]
    fn display_lists_indices() {
        let k = Tower::new(5, 1).unwrap();
        assert_eq!(p(&k, &[3, 0, 1]).to_string(), "[3,0,1]");
        assert_eq!(Poly::zero().to_string(), "[]");
    }

    proptest! {
        #[test]
        fn product_divides_exactly(f in arb_poly(7, 5), g in arb_poly(7, 4)) {
            let k = Tower::new(7, 1).unwrap();
            let (f, g) = (to_poly(&k, f), to_poly(&k, g));
            prop_assume!(!g.is_zero());
            let (q, r) = divmod(&k, &mul(&k, &f, &g), &g).unwrap();
            prop_assert_eq!(q, f);
            prop_assert!(r.is_zero());
        }

        #[test]
        fn divmod_reconstructs(f in arb_poly(7, 6), g in arb_poly(7, 4)) {
            let k = Tower::new(7, 1).unwrap();
            let (f, g) = (to_poly(&k, f), to_poly(&k, g));
            prop_assume!(!g.is_zero());
            let (q, r) = divmod(&k, &f, &g).unwrap();
            prop_assert!(r.degree() < g.degree());
            prop_assert_eq!(add(&k, &mul(&k, &q, &g), &r), f);
        }

        #[test]
        fn eval_is_a_ring_homomorphism(f in arb_poly(7, 5), g in arb_poly(7, 5), x in 0u32..7) {
            let k = Tower::new(7, 1).unwrap();
            let (f, g, x) = (to_poly(&k, f), to_poly(&k, g), k.elem(x as u64).unwrap());
            let (fx, gx) = (eval(&k, &f, x), eval(&k, &g, x));
            prop_assert_eq!(eval(&k, &add(&k, &f, &g), x), k.add(fx, gx));
            prop_assert_eq!(eval(&k, &mul(&k, &f, &g), x), k.mul(fx, gx));
        }

        #[test]
        fn resultant_antisymmetry_and_multiplicativity(
            f in arb_poly(7, 4), g in arb_poly(7, 4), h in arb_poly(7, 3)
        ) {
            let k = Tower::new(7, 1).unwrap();
            let (f, g, h) = (to_poly(&k, f), to_poly(&k, g), to_poly(&k, h));
            prop_assume!(!f.is_zero() && !g.is_zero() && !h.is_zero());
            let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
            let fg = resultant(&k, &f, &g).unwrap();
            let gf = resultant(&k, &g, &f).unwrap();
            let sign = if (df * dg) % 2 == 1 { k.neg(gf) } else { gf };
            prop_assert_eq!(fg, sign);
            let fgh = resultant(&k, &f, &mul(&k, &g, &h)).unwrap();
            prop_assert_eq!(fgh, k.mul(fg, resultant(&k, &f, &h).unwrap()));
        }
    }
}
