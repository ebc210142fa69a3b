//! The field tower `F_p ⊂ F_q ⊂ F_{q²}` with `q = p^h`.
//!
//! Elements of every layer are encoded by one canonical integer index. An
//! element of `F_{q²} = F_q[t]/(t² + c₁t + c₀)` written `u + v·t` has index
//! `idx(u) + idx(v)·q`, and an element of `F_q = F_p[s]/(m(s))` written
//! `Σ dᵢ sⁱ` has index `Σ dᵢ pⁱ`. Unwinding the recursion, an index is just
//! the base-`p` digit string of the coefficient vector, so the subfields sit
//! at the bottom of the index range: `F_p` is `[0, p)` and `F_q` is `[0, q)`.
//!
//! Arithmetic runs on discrete-log tables of `F_{q²}^*` (with Zech logarithms
//! for addition). The tables are built from the structural multiplication in
//! the tower, so they agree with the moduli by construction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `q²` a tower will be built for unless a bound is passed explicitly.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 24;

const NO_LOG: u32 = u32::MAX;

/// A field element, identified by its canonical index.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub(crate) const fn from_raw(index: u32) -> Elem {
        Elem(index)
    }

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A layer of the tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Layer {
    /// `F_p`
    Prime,
    /// `F_q`
    Sub,
    /// `F_{q²}`
    Top,
}

/// Quadratic character of an element within a layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadratic {
    Zero,
    Square,
    NonSquare,
}

/// The tower `F_p ⊂ F_{p^h} ⊂ F_{p^{2h}}`. Immutable once built.
#[derive(Clone)]
pub struct Tower {
    p: u32,
    h: u32,
    q: u32,
    order: u32,
    sub_modulus: Option<Vec<u32>>,
    top_modulus: (Elem, Elem),
    e: Option<Elem>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    mu: Vec<Elem>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tower")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("sub_modulus", &self.sub_modulus)
            .field("top_modulus", &self.top_modulus)
            .field("e", &self.e)
            .finish_non_exhaustive()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `(p, h)` with `q = p^h`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    let &[p] = factors.as_slice() else {
        return None;
    };
    let mut h = 0;
    let mut rest = q;
    while rest > 1 {
        rest /= p;
        h += 1;
    }
    Some((p, h))
}

impl Tower {
    /// Builds `F_p → F_{p^h} → F_{p^{2h}}` with the canonical moduli.
    pub fn new(p: u64, h: u32) -> Result<Self> {
        Self::with_max_order(p, h, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(p: u64, h: u32, max_order: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        let too_large = Error::FieldTooLarge {
            p,
            exp: 2 * h,
            bound: max_order,
        };
        let order = p.checked_pow(2 * h).ok_or(too_large)?;
        if order > max_order || order > u32::MAX as u64 {
            return Err(Error::FieldTooLarge {
                p,
                exp: 2 * h,
                bound: max_order,
            });
        }
        let p = p as u32;
        let q = p.pow(h);

        let sub_modulus = (h > 1).then(|| prime_poly::smallest_irreducible(p, h as usize));
        let sub = match &sub_modulus {
            Some(m) => LogTables::build(p, q, |x, y| prime_poly::mul_indices(p, m, x, y)),
            None => LogTables::build(p, q, |x, y| ((x as u64 * y as u64) % p as u64) as u32),
        };

        let top_modulus = smallest_top_modulus(&sub, q);
        let (c0, c1) = (top_modulus.0 .0, top_modulus.1 .0);
        let structural = |x: u32, y: u32| {
            let (u1, v1) = (x % q, x / q);
            let (u2, v2) = (y % q, y / q);
            let vv = sub.mul(v1, v2);
            let w0 = sub.sub(sub.mul(u1, u2), sub.mul(c0, vv));
            let w1 = sub.sub(sub.add(sub.mul(u1, v2), sub.mul(u2, v1)), sub.mul(c1, vv));
            w0 + w1 * q
        };
        let top = LogTables::build(p, q * q, structural);

        let e = (p != 2).then_some(Elem(q));
        let mut tower = Tower {
            p,
            h,
            q,
            order: q * q,
            sub_modulus,
            top_modulus,
            e,
            generator: Elem(top.exp[1]),
            exp: top.exp,
            log: top.log,
            zech: top.zech,
            mu: Vec::new(),
        };
        let step = (q - 1) as usize;
        let mut mu: Vec<Elem> = (0..=q as usize)
            .map(|k| Elem(tower.exp[k * step]))
            .collect();
        mu.sort_unstable();
        tower.mu = mu;
        Ok(tower)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn h(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// `q²`, the number of elements of the top layer.
    #[inline]
    pub fn order(&self) -> u32 {
        self.order
    }

    /// The distinguished `e` with `e^q = -e` (odd characteristic only).
    pub fn e(&self) -> Option<Elem> {
        self.e
    }

    /// Coefficients (as `F_p` digits, lowest first, leading 1 included) of the
    /// modulus defining `F_q` over `F_p`; `None` when `q = p`.
    pub fn sub_modulus(&self) -> Option<&[u32]> {
        self.sub_modulus.as_deref()
    }

    /// `(c₀, c₁)` of the modulus `t² + c₁t + c₀` defining `F_{q²}` over `F_q`.
    pub fn top_modulus(&self) -> (Elem, Elem) {
        self.top_modulus
    }

    /// The primitive element the log tables are based on.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn layer_order(&self, layer: Layer) -> u32 {
        match layer {
            Layer::Prime => self.p,
            Layer::Sub => self.q,
            Layer::Top => self.order,
        }
    }

    #[inline]
    pub fn contains(&self, layer: Layer, x: Elem) -> bool {
        x.0 < self.layer_order(layer)
    }

    /// Smallest layer containing `x`.
    pub fn layer_of(&self, x: Elem) -> Layer {
        if x.0 < self.p {
            Layer::Prime
        } else if x.0 < self.q {
            Layer::Sub
        } else {
            Layer::Top
        }
    }

    /// Decodes a canonical index.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.order as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::IndexOutOfRange {
                index,
                order: self.order as u64,
            })
        }
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// All elements of a layer in canonical order.
    pub fn elements(&self, layer: Layer) -> impl Iterator<Item = Elem> + Clone {
        (0..self.layer_order(layer)).map(Elem)
    }

    /// Nonzero elements of a layer in canonical order.
    pub fn nonzero(&self, layer: Layer) -> impl Iterator<Item = Elem> + Clone {
        (1..self.layer_order(layer)).map(Elem)
    }

    /// `(u, v)` with `x = u + v·t`, both in `F_q`.
    pub fn top_coeffs(&self, x: Elem) -> (Elem, Elem) {
        (Elem(x.0 % self.q), Elem(x.0 / self.q))
    }

    pub fn from_top_coeffs(&self, u: Elem, v: Elem) -> Result<Elem> {
        if u.0 >= self.q || v.0 >= self.q {
            return Err(Error::NotInLayer {
                index: u.0.max(v.0),
            });
        }
        Ok(Elem(u.0 + v.0 * self.q))
    }

    /// Base-`p` digits (lowest first) of an `F_q` element: its coefficients
    /// over `F_p`.
    pub fn sub_coeffs(&self, x: Elem) -> Result<Vec<u32>> {
        if !self.contains(Layer::Sub, x) {
            return Err(Error::NotInLayer { index: x.0 });
        }
        let mut digits = Vec::with_capacity(self.h as usize);
        let mut n = x.0;
        for _ in 0..self.h {
            digits.push(n % self.p);
            n /= self.p;
        }
        Ok(digits)
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        if self.p == 2 {
            return Elem(x.0 ^ y.0);
        }
        if x.0 == 0 {
            return y;
        }
        if y.0 == 0 {
            return x;
        }
        let n = self.order - 1;
        let lx = self.log[x.0 as usize];
        let ly = self.log[y.0 as usize];
        let d = if ly >= lx { ly - lx } else { ly + n - lx };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return Elem::ZERO;
        }
        let s = lx + z;
        Elem(self.exp[if s >= n { s - n } else { s } as usize])
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        if self.p == 2 || x.0 == 0 {
            return x;
        }
        let n = self.order - 1;
        let s = self.log[x.0 as usize] + n / 2;
        Elem(self.exp[if s >= n { s - n } else { s } as usize])
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.0 == 0 || y.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.order - 1;
        let s = self.log[x.0 as usize] + self.log[y.0 as usize];
        Elem(self.exp[if s >= n { s - n } else { s } as usize])
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.order - 1;
        let l = self.log[x.0 as usize];
        Ok(Elem(self.exp[if l == 0 { 0 } else { n - l } as usize]))
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// Square-and-multiply; `pow(x, 0) = 1` including `x = 0`.
    pub fn pow(&self, x: Elem, mut exp: u64) -> Elem {
        let mut base = x;
        let mut acc = Elem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Discrete log to the base [`Tower::generator`]; `None` for zero.
    pub fn log(&self, x: Elem) -> Option<u32> {
        (x.0 != 0).then(|| self.log[x.0 as usize])
    }

    /// `x^q`, computed by conjugation of the `F_q`-coordinates.
    #[inline]
    pub fn frobenius(&self, x: Elem) -> Elem {
        let (u, v) = (x.0 % self.q, x.0 / self.q);
        if self.p == 2 {
            // (u + v t)^q = (u + v) + v t, since t^q = t + 1
            Elem((u ^ v) + v * self.q)
        } else {
            // t^q = -t
            Elem(u + self.neg(Elem(v)).0 * self.q)
        }
    }

    /// `(x^{q+1}, x + x^q)`, both in `F_q`.
    pub fn norm_trace(&self, x: Elem) -> (Elem, Elem) {
        let conj = self.frobenius(x);
        let norm = self.mul(x, conj);
        let trace = self.add(x, conj);
        assert!(
            self.contains(Layer::Sub, norm) && self.contains(Layer::Sub, trace),
            "norm/trace of {x} escaped F_q"
        );
        (norm, trace)
    }

    pub fn norm(&self, x: Elem) -> Elem {
        self.norm_trace(x).0
    }

    /// Absolute trace `F_q → F_p`, the sum of the `h` conjugates `z^{p^i}`.
    pub fn abs_trace(&self, z: Elem) -> Result<Elem> {
        if !self.contains(Layer::Sub, z) {
            return Err(Error::NotInLayer { index: z.0 });
        }
        let mut acc = Elem::ZERO;
        let mut conj = z;
        for _ in 0..self.h {
            acc = self.add(acc, conj);
            conj = self.pow(conj, self.p as u64);
        }
        debug_assert!(self.contains(Layer::Prime, acc));
        Ok(acc)
    }

    /// Euler's criterion in the given layer. In characteristic 2 squaring is
    /// bijective, so every nonzero element reports as a square.
    pub fn is_square(&self, layer: Layer, x: Elem) -> Result<Quadratic> {
        if !self.contains(layer, x) {
            return Err(Error::NotInLayer { index: x.0 });
        }
        if x.is_zero() {
            return Ok(Quadratic::Zero);
        }
        if self.p == 2 {
            return Ok(Quadratic::Square);
        }
        let half = (self.layer_order(layer) as u64 - 1) / 2;
        let chi = self.pow(x, half);
        if chi == Elem::ONE {
            Ok(Quadratic::Square)
        } else {
            debug_assert_eq!(chi, self.neg(Elem::ONE));
            Ok(Quadratic::NonSquare)
        }
    }

    /// Convenience: `x` is a nonzero square of `F_q`.
    pub fn is_nonzero_square_q(&self, x: Elem) -> Result<bool> {
        Ok(self.is_square(Layer::Sub, x)? == Quadratic::Square)
    }

    /// A square root of `x` inside `layer`, the one with the smaller index.
    ///
    /// The layer's multiplicative group is the subgroup of index
    /// `(q²-1)/(|layer|-1)` of `F_{q²}^*`, so square roots are read off the
    /// log table.
    pub fn sqrt(&self, layer: Layer, x: Elem) -> Result<Option<Elem>> {
        if !self.contains(layer, x) {
            return Err(Error::NotInLayer { index: x.0 });
        }
        if x.is_zero() {
            return Ok(Some(Elem::ZERO));
        }
        let n = self.order - 1;
        let cofactor = n / (self.layer_order(layer) - 1);
        let m = self.log[x.0 as usize] / cofactor;
        let sub_n = self.layer_order(layer) - 1;
        let half = if m.is_multiple_of(2) {
            m / 2
        } else if sub_n % 2 == 1 {
            // odd group order (characteristic 2): 2 is invertible
            (m + sub_n) / 2
        } else {
            return Ok(None);
        };
        let r = Elem(self.exp[(half * cofactor) as usize]);
        let other = self.neg(r);
        Ok(Some(r.min(other)))
    }

    /// `μ_{q+1}` in canonical order.
    pub fn mu(&self) -> &[Elem] {
        &self.mu
    }

    /// Position of `x` in the cyclic group `μ_{q+1}` (by discrete log, not
    /// canonical order); `None` when `x ∉ μ_{q+1}`.
    #[inline]
    pub fn mu_slot(&self, x: Elem) -> Option<u32> {
        if x.0 == 0 {
            return None;
        }
        let l = self.log[x.0 as usize];
        let step = self.q - 1;
        l.is_multiple_of(step).then_some(l / step)
    }

    pub fn in_mu(&self, x: Elem) -> bool {
        self.mu_slot(x).is_some()
    }
}

/// Log/exp/Zech tables for a field of `order` elements, built from a
/// structural multiplication on canonical indices.
struct LogTables {
    p: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl LogTables {
    fn build(p: u32, order: u32, mul: impl Fn(u32, u32) -> u32) -> Self {
        let n = order - 1;
        let factors = prime_factors(n as u64);
        let pow = |x: u32, mut k: u64| {
            let (mut base, mut acc) = (x, 1u32);
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul(acc, base);
                }
                base = mul(base, base);
                k >>= 1;
            }
            acc
        };
        let generator = (1..order)
            .find(|&g| factors.iter().all(|&r| pow(g, n as u64 / r) != 1))
            .expect("a finite field has a primitive element");

        let mut exp = Vec::with_capacity(n as usize);
        let mut log = vec![NO_LOG; order as usize];
        let mut x = 1u32;
        for k in 0..n {
            exp.push(x);
            log[x as usize] = k;
            x = mul(x, generator);
        }
        assert_eq!(x, 1, "generator order mismatch");

        let zech = exp
            .iter()
            .map(|&y| {
                // adding 1 bumps the lowest base-p digit
                let z = if y % p == p - 1 { y + 1 - p } else { y + 1 };
                if z == 0 {
                    NO_LOG
                } else {
                    log[z as usize]
                }
            })
            .collect();
        LogTables { p, exp, log, zech }
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let n = self.exp.len() as u32;
        let s = self.log[x as usize] + self.log[y as usize];
        self.exp[if s >= n { s - n } else { s } as usize]
    }

    fn add(&self, x: u32, y: u32) -> u32 {
        if self.p == 2 {
            return x ^ y;
        }
        if x == 0 {
            return y;
        }
        if y == 0 {
            return x;
        }
        let n = self.exp.len() as u32;
        let (lx, ly) = (self.log[x as usize], self.log[y as usize]);
        let d = if ly >= lx { ly - lx } else { ly + n - lx };
        let z = self.zech[d as usize];
        if z == NO_LOG {
            return 0;
        }
        let s = lx + z;
        self.exp[if s >= n { s - n } else { s } as usize]
    }

    fn neg(&self, x: u32) -> u32 {
        if self.p == 2 || x == 0 {
            return x;
        }
        let n = self.exp.len() as u32;
        let s = self.log[x as usize] + n / 2;
        self.exp[if s >= n { s - n } else { s } as usize]
    }

    fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }
}

/// Lexicographically smallest monic `t² + c₁t + c₀` (compare `c₁` first) with
/// no root in `F_q`.
fn smallest_top_modulus(sub: &LogTables, q: u32) -> (Elem, Elem) {
    for c1 in 0..q {
        for c0 in 0..q {
            let has_root = (0..q).any(|x| {
                let val = sub.add(sub.add(sub.mul(x, x), sub.mul(c1, x)), c0);
                val == 0
            });
            if !has_root {
                return (Elem(c0), Elem(c1));
            }
        }
    }
    unreachable!("an irreducible quadratic exists over every finite field")
}

/// Dense polynomials over `F_p` on plain digit vectors, just enough to find
/// and use the modulus of `F_q`.
pub(crate) mod prime_poly {
    fn trim(mut f: Vec<u32>) -> Vec<u32> {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let (mut base, mut e) = (a as u64 % p as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    pub(crate) fn rem(f: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(f.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = r[dr] as u64 * lead_inv % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let t = &mut r[dr - dm + i];
                *t = ((*t as u64 + (p as u64 - c) * mi as u64) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub(crate) fn mul(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        if f.is_empty() || g.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn sub(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        let n = f.len().max(g.len());
        let out = (0..n)
            .map(|i| {
                let a = f.get(i).copied().unwrap_or(0);
                let b = g.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        trim(out)
    }

    fn gcd(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: a degree-`h` polynomial is irreducible iff it is coprime to
    /// `X^{p^i} - X` for every `i ≤ h/2`.
    pub(crate) fn is_irreducible(m: &[u32], p: u32) -> bool {
        let h = m.len() - 1;
        let x = vec![0, 1];
        let mut frob = x.clone();
        for _ in 0..h / 2 {
            let mut acc = vec![1];
            let mut base = frob.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = rem(&mul(&acc, &base, p), m, p);
                }
                base = rem(&mul(&base, &base, p), m, p);
                e >>= 1;
            }
            frob = acc;
            if gcd(m, &sub(&frob, &x, p), p).len() > 1 {
                return false;
            }
        }
        true
    }

    /// The first monic irreducible of degree `h` when coefficients are
    /// compared from `X^{h-1}` down to the constant term.
    pub(crate) fn smallest_irreducible(p: u32, h: usize) -> Vec<u32> {
        let count = (p as u64).pow(h as u32);
        for k in 0..count {
            let mut m = Vec::with_capacity(h + 1);
            let mut n = k;
            for _ in 0..h {
                m.push((n % p as u64) as u32);
                n /= p as u64;
            }
            m.push(1);
            if m[0] != 0 && is_irreducible(&m, p) {
                return m;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub(crate) fn mul_indices(p: u32, m: &[u32], x: u32, y: u32) -> u32 {
        let digits = |mut n: u32| {
            let mut d = Vec::new();
            while n > 0 {
                d.push(n % p);
                n /= p;
            }
            d
        };
        let r = rem(&mul(&digits(x), &digits(y), p), m, p);
        r.iter().rev().fold(0, |acc, &d| acc * p + d)
    }
}
