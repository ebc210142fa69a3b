//! Bivariate polynomials and the collision curves of `g_{a,b}`.
//!
//! `F(X, Y) = (N(X)D(Y) - N(Y)D(X)) / (X - Y)` cuts out the pairs of points
//! where `g = N/D` collides. Its twist `G(X, Y) = (X-e)²(Y-e)² F(ψ(X, Y))`
//! under the Möbius map `ψ(x) = (x+e)/(x-e)`, which sends `F_q` onto
//! `μ_{q+1} \ {1}`, is defined over `F_q`, so collisions on `μ_{q+1}` become
//! `F_q`-rational points of `G` off the diagonal.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Elem, Layer, Tower};
use crate::perm::TrinomialParams;
use crate::upoly::{self, Poly};

/// Sparse bivariate polynomial keyed by `(deg_X, deg_Y)`. Zero coefficients
/// are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Elem>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: u32, j: u32, c: Elem) -> Self {
        let mut p = Self::zero();
        p.set(i, j, c);
        p
    }

    /// `f(X)` viewed as a polynomial in `X` only.
    pub fn in_x(f: &Poly) -> Self {
        let mut p = Self::zero();
        for (i, &c) in f.coeffs().iter().enumerate() {
            p.set(i as u32, 0, c);
        }
        p
    }

    /// `f(Y)`
    pub fn in_y(f: &Poly) -> Self {
        Self::in_x(f).swap()
    }

    fn set(&mut self, i: u32, j: u32, c: Elem) {
        if c.is_zero() {
            self.terms.remove(&(i, j));
        } else {
            self.terms.insert((i, j), c);
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms.get(&(i, j)).copied().unwrap_or(Elem::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Elem)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// `f(Y, X)`
    pub fn swap(&self) -> Self {
        BivarPoly {
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap()
    }

    fn accumulate(&mut self, k: &Tower, i: u32, j: u32, c: Elem) {
        let cur = self.coeff(i, j);
        self.set(i, j, k.add(cur, c));
    }
}

/// Debug dump: one `(i,j): index` line per term, sorted by `(i, j)`.
impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (&(i, j), c) in &self.terms {
            writeln!(f, "({i},{j}): {c}")?;
        }
        Ok(())
    }
}

pub fn add(k: &Tower, f: &BivarPoly, g: &BivarPoly) -> BivarPoly {
    let mut out = f.clone();
    for (&(i, j), &c) in &g.terms {
        out.accumulate(k, i, j, c);
    }
    out
}

pub fn sub(k: &Tower, f: &BivarPoly, g: &BivarPoly) -> BivarPoly {
    add(k, f, &scale(k, g, k.neg(Elem::ONE)))
}

pub fn scale(k: &Tower, f: &BivarPoly, c: Elem) -> BivarPoly {
    let mut out = BivarPoly::zero();
    for (&(i, j), &x) in &f.terms {
        out.set(i, j, k.mul(x, c));
    }
    out
}

pub fn mul(k: &Tower, f: &BivarPoly, g: &BivarPoly) -> BivarPoly {
    let mut out = BivarPoly::zero();
    for (&(i1, j1), &c1) in &f.terms {
        for (&(i2, j2), &c2) in &g.terms {
            out.accumulate(k, i1 + i2, j1 + j2, k.mul(c1, c2));
        }
    }
    out
}

pub fn eval(k: &Tower, f: &BivarPoly, x: Elem, y: Elem) -> Elem {
    f.terms.iter().fold(Elem::ZERO, |acc, (&(i, j), &c)| {
        k.add(acc, k.mul(c, k.mul(k.pow(x, i as u64), k.pow(y, j as u64))))
    })
}

/// Exact division by `X - Y`. Writing `f = Σ fᵢ(Y) Xⁱ`, synthetic division
/// by the root `X = Y` gives `qᵢ₋₁ = fᵢ + Y·qᵢ`; the remainder `f₀ + Y·q₀`
/// must vanish.
pub fn div_x_minus_y(k: &Tower, f: &BivarPoly) -> Result<BivarPoly> {
    let Some(dx) = f.degree_x() else {
        return Ok(BivarPoly::zero());
    };
    let column = |i: u32| -> BTreeMap<u32, Elem> {
        f.terms
            .iter()
            .filter(|(&(a, _), _)| a == i)
            .map(|(&(_, j), &c)| (j, c))
            .collect()
    };
    let shift_add = |carry: &BTreeMap<u32, Elem>, col: BTreeMap<u32, Elem>| {
        let mut out = col;
        for (&j, &c) in carry {
            let cur = out.get(&(j + 1)).copied().unwrap_or(Elem::ZERO);
            out.insert(j + 1, k.add(cur, c));
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut quotient = BivarPoly::zero();
    let mut carry: BTreeMap<u32, Elem> = BTreeMap::new();
    for i in (1..=dx).rev() {
        carry = shift_add(&carry, column(i));
        for (&j, &c) in &carry {
            quotient.set(i - 1, j, c);
        }
    }
    if !shift_add(&carry, column(0)).is_empty() {
        return Err(Error::NonzeroRemainder);
    }
    Ok(quotient)
}

/// The Möbius map `x ↦ (αx + β)/(γx + δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub alpha: Elem,
    pub beta: Elem,
    pub gamma: Elem,
    pub delta: Elem,
}

impl Mobius {
    /// `ψ(x) = (x + e)/(x - e)`
    pub fn psi(k: &Tower, e: Elem) -> Self {
        Mobius {
            alpha: Elem::ONE,
            beta: e,
            gamma: Elem::ONE,
            delta: k.neg(e),
        }
    }

    /// `ψ⁻¹(x) = e(x + 1)/(x - 1)`
    pub fn psi_inverse(k: &Tower, e: Elem) -> Self {
        Mobius {
            alpha: e,
            beta: e,
            gamma: Elem::ONE,
            delta: k.neg(Elem::ONE),
        }
    }

    /// `x ↦ e(x - 1)/(x + 1)`; composed with `ψ` this is `x ↦ -x`.
    pub fn e_cayley(k: &Tower, e: Elem) -> Self {
        Mobius {
            alpha: e,
            beta: k.neg(e),
            gamma: Elem::ONE,
            delta: Elem::ONE,
        }
    }

    pub fn numerator(&self) -> Poly {
        Poly::new(vec![self.beta, self.alpha])
    }

    pub fn denominator(&self) -> Poly {
        Poly::new(vec![self.delta, self.gamma])
    }

    /// `None` at the pole.
    pub fn apply(&self, k: &Tower, x: Elem) -> Option<Elem> {
        let num = k.add(k.mul(self.alpha, x), self.beta);
        let den = k.add(k.mul(self.gamma, x), self.delta);
        k.div(num, den).ok()
    }
}

/// `den_X^{clear_x} · den_Y^{clear_y} · f(mx(X), my(Y))`, tracking numerator
/// and denominator powers per monomial so no rational functions appear.
pub fn mobius_substitute(
    k: &Tower,
    f: &BivarPoly,
    mx: Mobius,
    my: Mobius,
    clear_x: u32,
    clear_y: u32,
) -> BivarPoly {
    assert!(f.degree_x().unwrap_or(0) <= clear_x && f.degree_y().unwrap_or(0) <= clear_y);
    let powers = |m: &Mobius, clear: u32| -> Vec<Poly> {
        (0..=clear)
            .map(|i| {
                upoly::mul(
                    k,
                    &upoly::pow(k, &m.numerator(), i),
                    &upoly::pow(k, &m.denominator(), clear - i),
                )
            })
            .collect()
    };
    let px = powers(&mx, clear_x);
    let py = powers(&my, clear_y);
    let mut out = BivarPoly::zero();
    for (&(i, j), &c) in &f.terms {
        let term = mul(
            k,
            &BivarPoly::in_x(&px[i as usize]),
            &BivarPoly::in_y(&py[j as usize]),
        );
        out = add(k, &out, &scale(k, &term, c));
    }
    out
}

/// `(N, D)` with `N = a^q X³ + X² + b^q` and `D = bX³ + X + a`.
pub fn build_numden(params: &TrinomialParams<'_>) -> (Poly, Poly) {
    let num = Poly::new(vec![params.b_q(), Elem::ZERO, Elem::ONE, params.a_q()]);
    let den = Poly::new(vec![params.a(), Elem::ONE, Elem::ZERO, params.b()]);
    (num, den)
}

/// Degree of `gcd(N, D)`: 0, 1 or 2.
pub fn gcd_degree(params: &TrinomialParams<'_>) -> Result<usize> {
    let k = params.field();
    let (num, den) = build_numden(params);
    let d = upoly::gcd(k, &num, &den)?
        .degree()
        .expect("gcd of nonzero polynomials");
    if d >= 3 {
        return Err(Error::ImpossibleGcdDegree(d));
    }
    Ok(d)
}

/// The curves `F` over `F_{q²}` and `G` over `F_q`.
#[derive(Clone, Debug)]
pub struct CurvePair<'t> {
    pub params: TrinomialParams<'t>,
    pub f: BivarPoly,
    pub g: BivarPoly,
    pub e: Elem,
}

/// `N(X)D(Y) - N(Y)D(X)` divided exactly by `X - Y`.
pub fn build_f(params: &TrinomialParams<'_>) -> Result<BivarPoly> {
    let k = params.field();
    let (num, den) = build_numden(params);
    let lhs = mul(k, &BivarPoly::in_x(&num), &BivarPoly::in_y(&den));
    let rhs = mul(k, &BivarPoly::in_y(&num), &BivarPoly::in_x(&den));
    div_x_minus_y(k, &sub(k, &lhs, &rhs))
}

pub fn build_curves<'t>(params: &TrinomialParams<'t>) -> Result<CurvePair<'t>> {
    let k = params.field();
    let e = k.e().ok_or(Error::WrongCharacteristic {
        expected: "odd",
        actual: k.p(),
    })?;
    let f = build_f(params)?;
    let psi = Mobius::psi(k, e);
    let g = mobius_substitute(k, &f, psi, psi, 2, 2);
    if let Some((_, c)) = g.terms().find(|&(_, c)| !k.contains(Layer::Sub, c)) {
        return Err(Error::CoefficientOutsideSubfield { index: c.index() });
    }
    Ok(CurvePair {
        params: *params,
        f,
        g,
        e,
    })
}

/// Checks `(X-1)²(Y-1)² G(ψ⁻¹(X, Y)) = 16e⁴ F(X, Y)` at `trials` random points
/// of `F_{q²}²`, skipping the poles `x = 1` or `y = 1` of `ψ⁻¹`.
pub fn verify_iso_identity(pair: &CurvePair<'_>, trials: usize, seed: u64) -> bool {
    let k = pair.params.field();
    let inv = Mobius::psi_inverse(k, pair.e);
    let c16e4 = k.mul(k.from_int(16), k.pow(pair.e, 4));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < trials {
        let x = k
            .elem(rng.random_range(0..k.order() as u64))
            .expect("in range");
        let y = k
            .elem(rng.random_range(0..k.order() as u64))
            .expect("in range");
        let (Some(u), Some(v)) = (inv.apply(k, x), inv.apply(k, y)) else {
            continue;
        };
        let sq = |t: Elem| {
            let d = k.sub(t, Elem::ONE);
            k.mul(d, d)
        };
        let lhs = k.mul(k.mul(sq(x), sq(y)), eval(k, &pair.g, u, v));
        let rhs = k.mul(c16e4, eval(k, &pair.f, x, y));
        if lhs != rhs {
            return false;
        }
        done += 1;
    }
    true
}

/// Symbolic form of [`verify_iso_identity`]: both sides expanded term by term.
pub fn verify_iso_identity_symbolic(pair: &CurvePair<'_>) -> bool {
    let k = pair.params.field();
    let inv = Mobius::psi_inverse(k, pair.e);
    let lhs = mobius_substitute(k, &pair.g, inv, inv, 2, 2);
    let rhs = scale(k, &pair.f, k.mul(k.from_int(16), k.pow(pair.e, 4)));
    lhs == rhs
}

/// Number of `(x₀, y₀) ∈ F_q²` with `x₀ ≠ y₀` and `G(x₀, y₀) = 0`.
pub fn count_points_off_diag(pair: &CurvePair<'_>) -> u64 {
    let k = pair.params.field();
    let dy = pair.g.degree_y().unwrap_or(0) as usize;
    let mut count = 0;
    for x in k.elements(Layer::Sub) {
        // collapse G(x, Y) to a univariate polynomial once per x
        let mut col = vec![Elem::ZERO; dy + 1];
        for ((i, j), c) in pair.g.terms() {
            col[j as usize] = k.add(col[j as usize], k.mul(c, k.pow(x, i as u64)));
        }
        let gx = Poly::new(col);
        count += k
            .elements(Layer::Sub)
            .filter(|&y| y != x && upoly::eval(k, &gx, y).is_zero())
            .count() as u64;
    }
    count
}

/// `q - 6√q - 5 > 0`, decided exactly as `q > 5 ∧ (q - 5)² > 36q`.
pub fn hasse_weil_ok(q: u64) -> bool {
    q > 5 && (q - 5) * (q - 5) > 36 * q
}

/// The factor `Φ(a,b) = a^{3q+3} - 3a^{2q+2}b^{q+1} - a^{2q+2} - a²b
/// + 3a^{q+1}b^{2q+2} - a^{q+1}b^{q+1} - a^{2q}b^q - b^{3q+3} + 2b^{2q+2} - b^{q+1}`.
pub fn inner_factor(params: &TrinomialParams<'_>) -> Elem {
    let k = params.field();
    let (a, b, aq, bq) = (params.a(), params.b(), params.a_q(), params.b_q());
    let na = k.mul(a, aq);
    let nb = k.mul(b, bq);
    let c = |n| k.from_int(n);
    let terms = [
        k.pow(na, 3),
        k.mul(c(-3), k.mul(k.pow(na, 2), nb)),
        k.neg(k.pow(na, 2)),
        k.neg(k.mul(k.mul(a, a), b)),
        k.mul(c(3), k.mul(na, k.pow(nb, 2))),
        k.neg(k.mul(na, nb)),
        k.neg(k.mul(k.mul(aq, aq), bq)),
        k.neg(k.pow(nb, 3)),
        k.mul(c(2), k.pow(nb, 2)),
        k.neg(nb),
    ];
    terms.into_iter().fold(Elem::ZERO, |acc, t| k.add(acc, t))
}

/// `Res_X(N, D)` against the closed form `h(a,b) = b^{2q+10} Φ(a,b)²`.
///
/// Empirically `Res_X(N, D) = Φ(a, b)` on the nose (every pair at
/// q ∈ {3, 4, 5, 7, 8, 9, 11}), so `h = b^{2q+10} Res²` and `lhs / rhs` is
/// not constant. `lifted` holds `b^{2q+10} lhs²` for comparison with `rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultantComparison {
    /// `Res_X(N, D)`
    pub lhs: Elem,
    /// `h(a, b)`
    pub rhs: Elem,
    /// `lhs / rhs` when `rhs ≠ 0`.
    pub ratio: Option<Elem>,
    /// `Φ(a, b)`
    pub inner: Elem,
    /// `lhs / Φ` when `Φ ≠ 0`.
    pub inner_ratio: Option<Elem>,
    /// `b^{2q+10} lhs²`
    pub lifted: Elem,
}

impl ResultantComparison {
    /// `lhs = h(a, b)`
    pub fn exact(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `lhs = Φ(a, b)`, equivalently `b^{2q+10} lhs² = h(a, b)` with no
    /// sign ambiguity.
    pub fn equals_inner(&self) -> bool {
        self.lhs == self.inner
    }

    pub fn squared_matches(&self) -> bool {
        self.lifted == self.rhs
    }
}

pub fn resultant_vs_closed_form(params: &TrinomialParams<'_>) -> Result<ResultantComparison> {
    let k = params.field();
    let (num, den) = build_numden(params);
    let lhs = upoly::resultant(k, &num, &den)?;
    let inner = inner_factor(params);
    let prefactor = k.mul(k.pow(params.b_q(), 2), k.pow(params.b(), 10));
    let rhs = k.mul(prefactor, k.mul(inner, inner));
    Ok(ResultantComparison {
        lhs,
        rhs,
        ratio: k.div(lhs, rhs).ok(),
        inner,
        inner_ratio: k.div(lhs, inner).ok(),
        lifted: k.mul(prefactor, k.mul(lhs, lhs)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorPattern {
    /// `-b(X+A)(X+B)(Y+A)(Y+B)`
    FourLines,
    /// `-b(XY + A(X+Y) + C)(XY + B(X+Y) + D)`
    ConicSym,
    /// `-b(XY + AX + BY + C)(XY + BX + AY + C)`
    ConicSwap,
    /// `-b(X² + AX + BY + C)(Y² + AY + BX + C)`
    ConicXsq,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorWitness {
    pub pattern: FactorPattern,
    /// `A, B, C, D` as far as the pattern uses them.
    pub constants: Vec<Elem>,
    /// The expanded product equals `F` term by term.
    pub residual_check: bool,
    /// Candidate constants were needed from outside `F_{q²}`.
    pub outside_field: bool,
    /// A brute-force stage was skipped because `q` exceeded its bound.
    pub search_skipped: bool,
}

impl FactorWitness {
    fn none() -> Self {
        FactorWitness {
            pattern: FactorPattern::None,
            constants: Vec::new(),
            residual_check: false,
            outside_field: false,
            search_skipped: false,
        }
    }

    fn found(pattern: FactorPattern, constants: Vec<Elem>) -> Self {
        FactorWitness {
            pattern,
            constants,
            residual_check: true,
            outside_field: false,
            search_skipped: false,
        }
    }
}

/// Builds `Σ c·X^i·Y^j` from a term list.
fn bp(terms: &[(u32, u32, Elem)]) -> BivarPoly {
    let mut out = BivarPoly::zero();
    for &(i, j, c) in terms {
        if !c.is_zero() {
            out.terms.insert((i, j), c);
        }
    }
    out
}

fn matches_product(k: &Tower, f: &BivarPoly, lead: Elem, p1: &BivarPoly, p2: &BivarPoly) -> bool {
    scale(k, &mul(k, p1, p2), lead) == *f
}

/// `-b(X+A)(X+B)(Y+A)(Y+B)` with `A, B` the roots of `a^q b T² + a^{2q} T + ab`.
pub fn four_line_witness(params: &TrinomialParams<'_>) -> Result<FactorWitness> {
    let k = params.field();
    let f = build_f(params)?;
    let (a, b, aq) = (params.a(), params.b(), params.a_q());
    let quad = Poly::new(vec![k.mul(a, b), k.mul(aq, aq), k.mul(aq, b)]);
    let mut roots = upoly::roots(k, &quad, Layer::Top)?;
    roots.dedup();
    if roots.is_empty() {
        return Ok(FactorWitness {
            outside_field: true,
            ..FactorWitness::none()
        });
    }
    let mut candidates = Vec::new();
    if roots.len() == 2 {
        candidates.push((roots[0], roots[1]));
    }
    candidates.extend(roots.iter().map(|&r| (r, r)));
    let lead = k.neg(b);
    for (ra, rb) in candidates {
        let lines = mul(
            k,
            &mul(
                k,
                &bp(&[(1, 0, Elem::ONE), (0, 0, ra)]),
                &bp(&[(1, 0, Elem::ONE), (0, 0, rb)]),
            ),
            &mul(
                k,
                &bp(&[(0, 1, Elem::ONE), (0, 0, ra)]),
                &bp(&[(0, 1, Elem::ONE), (0, 0, rb)]),
            ),
        );
        if scale(k, &lines, lead) == f {
            return Ok(FactorWitness::found(FactorPattern::FourLines, vec![ra, rb]));
        }
    }
    Ok(FactorWitness::none())
}

/// Conic factorizations of `F`, tried in order: the closed-form swapped pair,
/// then brute-force searches for the symmetric pair and the `X²`/`Y²` pair
/// (only when `q ≤ brute_force_max_q`). First validated match wins.
pub fn conic_witnesses(
    params: &TrinomialParams<'_>,
    brute_force_max_q: u32,
) -> Result<FactorWitness> {
    let mut outside_field = false;
    let mut search_skipped = false;
    let stages: [&dyn Fn() -> Result<FactorWitness>; 3] = [
        &|| conic_swap_witness(params),
        &|| conic_sym_witness(params, brute_force_max_q),
        &|| conic_xsq_witness(params, brute_force_max_q),
    ];
    for stage in stages {
        let w = stage()?;
        if w.pattern != FactorPattern::None {
            return Ok(w);
        }
        outside_field |= w.outside_field;
        search_skipped |= w.search_skipped;
    }
    Ok(FactorWitness {
        outside_field,
        search_skipped,
        ..FactorWitness::none()
    })
}

/// `-b(XY + AX + BY + C)(XY + BX + AY + C)` with
/// `3a^q A² - 9a^{q+1} A + 9a^{q+2} - a = 0`, `B = 3a - A`, `C = a / a^q`.
/// Needs `p > 3`.
pub fn conic_swap_witness(params: &TrinomialParams<'_>) -> Result<FactorWitness> {
    let k = params.field();
    if k.p() <= 3 {
        return Ok(FactorWitness::none());
    }
    let f = build_f(params)?;
    let (a, aq) = (params.a(), params.a_q());
    let c = |n| k.from_int(n);
    let na = k.mul(a, aq);
    let quad = Poly::new(vec![
        k.sub(k.mul(c(9), k.mul(na, a)), a),
        k.neg(k.mul(c(9), na)),
        k.mul(c(3), aq),
    ]);
    let disc = upoly::discriminant(k, &quad)?;
    let Some(root) = k.sqrt(Layer::Top, disc)? else {
        return Ok(FactorWitness {
            outside_field: true,
            ..FactorWitness::none()
        });
    };
    let two_lead = k.mul(c(2), quad.lead());
    let rc = k.div(a, aq)?;
    let lead = k.neg(params.b());
    for s in [root, k.neg(root)] {
        let ra = k.div(k.sub(s, quad.coeff(1)), two_lead)?;
        let rb = k.sub(k.mul(c(3), a), ra);
        let c1 = bp(&[(1, 1, Elem::ONE), (1, 0, ra), (0, 1, rb), (0, 0, rc)]);
        let c2 = bp(&[(1, 1, Elem::ONE), (1, 0, rb), (0, 1, ra), (0, 0, rc)]);
        if matches_product(k, &f, lead, &c1, &c2) {
            return Ok(FactorWitness::found(
                FactorPattern::ConicSwap,
                vec![ra, rb, rc],
            ));
        }
    }
    Ok(FactorWitness::none())
}

/// `-b(XY + A(X+Y) + C)(XY + B(X+Y) + D)` by search over `A` and `C`;
/// `A + B` and `CD` are read off the `X²Y` and constant coefficients.
pub fn conic_sym_witness(params: &TrinomialParams<'_>, max_q: u32) -> Result<FactorWitness> {
    let k = params.field();
    if k.q() > max_q {
        return Ok(FactorWitness {
            search_skipped: true,
            ..FactorWitness::none()
        });
    }
    let f = build_f(params)?;
    let b = params.b();
    let lead = k.neg(b);
    let sum_ab = k.neg(k.div(f.coeff(2, 1), b)?);
    let cd = k.neg(k.div(f.coeff(0, 0), b)?);
    for ra in k.elements(Layer::Top) {
        let rb = k.sub(sum_ab, ra);
        for rc in k.nonzero(Layer::Top) {
            let rd = k.div(cd, rc)?;
            let c1 = bp(&[(1, 1, Elem::ONE), (1, 0, ra), (0, 1, ra), (0, 0, rc)]);
            let c2 = bp(&[(1, 1, Elem::ONE), (1, 0, rb), (0, 1, rb), (0, 0, rd)]);
            if matches_product(k, &f, lead, &c1, &c2) {
                return Ok(FactorWitness::found(
                    FactorPattern::ConicSym,
                    vec![ra, rb, rc, rd],
                ));
            }
        }
    }
    Ok(FactorWitness::none())
}

/// `-b(X² + AX + BY + C)(Y² + AY + BX + C)` by search over `B`; `A` and
/// `C²` are read off the `X²Y` and constant coefficients.
pub fn conic_xsq_witness(params: &TrinomialParams<'_>, max_q: u32) -> Result<FactorWitness> {
    let k = params.field();
    if k.q() > max_q {
        return Ok(FactorWitness {
            search_skipped: true,
            ..FactorWitness::none()
        });
    }
    let f = build_f(params)?;
    let b = params.b();
    let lead = k.neg(b);
    let ra = k.neg(k.div(f.coeff(2, 1), b)?);
    let c_sq = k.neg(k.div(f.coeff(0, 0), b)?);
    let Some(r) = k.sqrt(Layer::Top, c_sq)? else {
        return Ok(FactorWitness {
            outside_field: true,
            ..FactorWitness::none()
        });
    };
    for rc in [r, k.neg(r)] {
        for rb in k.elements(Layer::Top) {
            let c1 = bp(&[(2, 0, Elem::ONE), (1, 0, ra), (0, 1, rb), (0, 0, rc)]);
            let c2 = bp(&[(0, 2, Elem::ONE), (0, 1, ra), (1, 0, rb), (0, 0, rc)]);
            if matches_product(k, &f, lead, &c1, &c2) {
                return Ok(FactorWitness::found(
                    FactorPattern::ConicXsq,
                    vec![ra, rb, rc],
                ));
            }
        }
    }
    Ok(FactorWitness::none())
}
