//! Permutation verdicts for `f_{a,b}` on `F_{q²}`, directly and through the
//! induced map on `μ_{q+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Elem, Tower};

const UNSEEN: u32 = u32::MAX;

/// `(q, a, b)` with `a, b ∈ F_{q²}^*`; `a^q` and `b^q` are cached.
#[derive(Clone, Copy, Debug)]
pub struct TrinomialParams<'t> {
    field: &'t Tower,
    a: Elem,
    b: Elem,
    aq: Elem,
    bq: Elem,
}

impl<'t> TrinomialParams<'t> {
    pub fn new(field: &'t Tower, a: Elem, b: Elem) -> Result<Self> {
        for x in [a, b] {
            field.elem(x.index() as u64)?;
        }
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroParameter);
        }
        Ok(TrinomialParams {
            field,
            a,
            b,
            aq: field.frobenius(a),
            bq: field.frobenius(b),
        })
    }

    pub fn from_indices(field: &'t Tower, a: u64, b: u64) -> Result<Self> {
        Self::new(field, field.elem(a)?, field.elem(b)?)
    }

    #[inline]
    pub fn field(&self) -> &'t Tower {
        self.field
    }

    #[inline]
    pub fn a(&self) -> Elem {
        self.a
    }

    #[inline]
    pub fn b(&self) -> Elem {
        self.b
    }

    /// `a^q`
    #[inline]
    pub fn a_q(&self) -> Elem {
        self.aq
    }

    /// `b^q`
    #[inline]
    pub fn b_q(&self) -> Elem {
        self.bq
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Mu,
}

/// Evidence that a map is not a permutation.
///
/// Serialized as an index list: `[x1, x2]` for a collision, `[x]` for a
/// point of `μ_{q+1}` where the denominator vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<Elem>", try_from = "Vec<Elem>")]
pub enum Witness {
    /// `x1 < x2` in canonical order with equal images.
    Collision(Elem, Elem),
    /// `x ∈ μ_{q+1}` with `1 + a·x^q + b·x² = 0`.
    Pole(Elem),
}

impl From<Witness> for Vec<Elem> {
    fn from(w: Witness) -> Self {
        match w {
            Witness::Collision(x, y) => vec![x, y],
            Witness::Pole(x) => vec![x],
        }
    }
}

impl TryFrom<Vec<Elem>> for Witness {
    type Error = String;

    fn try_from(v: Vec<Elem>) -> Result<Self, String> {
        match v.as_slice() {
            [x, y] => Ok(Witness::Collision(*x, *y)),
            [x] => Ok(Witness::Pole(*x)),
            _ => Err(format!("witness must have 1 or 2 entries, got {}", v.len())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub is_pp: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pp(method: Method) -> Self {
        Verdict {
            is_pp: true,
            method,
            witness: None,
        }
    }

    fn fail(method: Method, witness: Witness) -> Self {
        Verdict {
            is_pp: false,
            method,
            witness: Some(witness),
        }
    }

    /// Re-evaluates the witness against `params`. A permutation verdict has
    /// nothing to check and reports `true`.
    pub fn recheck(&self, params: &TrinomialParams<'_>) -> bool {
        let k = params.field();
        match (self.is_pp, self.witness, self.method) {
            (true, None, _) => true,
            (false, Some(Witness::Collision(x, y)), Method::Direct) => {
                x != y && f_eval(params, x) == f_eval(params, y)
            }
            (false, Some(Witness::Collision(x, y)), Method::Mu) => {
                let (nx, dx) = numden_at(params, x);
                let (ny, dy) = numden_at(params, y);
                x != y && k.in_mu(x) && k.in_mu(y) && k.mul(nx, dy) == k.mul(ny, dx)
            }
            (false, Some(Witness::Pole(x)), Method::Mu) => {
                k.in_mu(x) && numden_at(params, x).1.is_zero()
            }
            _ => false,
        }
    }
}

/// `x(1 + a·x^{q(q-1)} + b·x^{2(q-1)})`, using `x^{q-1} = x^q / x`.
#[inline]
pub fn f_eval(params: &TrinomialParams<'_>, x: Elem) -> Elem {
    if x.is_zero() {
        return Elem::ZERO;
    }
    let k = params.field;
    let w = k.div(k.frobenius(x), x).expect("x is nonzero");
    let inner = k.add(
        k.add(Elem::ONE, k.mul(params.a, k.frobenius(w))),
        k.mul(params.b, k.mul(w, w)),
    );
    k.mul(x, inner)
}

/// `(N(x), D(x))` with `N = a^q X³ + X² + b^q` and `D = bX³ + X + a`.
#[inline]
fn numden_at(params: &TrinomialParams<'_>, x: Elem) -> (Elem, Elem) {
    let k = params.field;
    let x2 = k.mul(x, x);
    let x3 = k.mul(x2, x);
    let num = k.add(k.add(k.mul(params.aq, x3), x2), params.bq);
    let den = k.add(k.add(k.mul(params.b, x3), x), params.a);
    (num, den)
}

/// Evaluates `f` on all of `F_{q²}` in canonical order; the first repeated
/// image yields the witness.
pub fn is_pp_direct(params: &TrinomialParams<'_>) -> Verdict {
    let k = params.field;
    let mut preimage = vec![UNSEEN; k.order() as usize];
    for x in k.elements(crate::ff::Layer::Top) {
        let y = f_eval(params, x).index() as usize;
        if preimage[y] != UNSEEN {
            return Verdict::fail(
                Method::Direct,
                Witness::Collision(Elem::from_raw(preimage[y]), x),
            );
        }
        preimage[y] = x.index();
    }
    Verdict::pp(Method::Direct)
}

/// `N(x)/D(x)` on `μ_{q+1}`, `None` where `D(x) = 0`.
pub fn g_eval(params: &TrinomialParams<'_>, x: Elem) -> Result<Option<Elem>> {
    let k = params.field;
    if !k.in_mu(x) {
        return Err(Error::NotInMu);
    }
    let (num, den) = numden_at(params, x);
    Ok(k.div(num, den).ok())
}

/// `x·(1 + a·x^q + b·x²)^{q-1}`, the unreduced form of the map on `μ_{q+1}`.
/// Slower than [`g_eval`]; kept as a reference implementation.
pub fn g_eval_power_form(params: &TrinomialParams<'_>, x: Elem) -> Elem {
    let k = params.field;
    let u = k.add(
        k.add(Elem::ONE, k.mul(params.a, k.pow(x, k.q() as u64))),
        k.mul(params.b, k.mul(x, x)),
    );
    k.mul(x, k.pow(u, k.q() as u64 - 1))
}

/// Tests whether `g_{a,b}` permutes `μ_{q+1}`, which is equivalent to `f_{a,b}`
/// permuting `F_{q²}`. `O(q)` evaluations.
pub fn is_pp_mu(params: &TrinomialParams<'_>) -> Verdict {
    let mut scratch = Vec::new();
    is_pp_mu_with(params, &mut scratch)
}

/// [`is_pp_mu`] with a caller-owned buffer, for tight loops.
pub fn is_pp_mu_with(params: &TrinomialParams<'_>, seen: &mut Vec<u32>) -> Verdict {
    let k = params.field;
    seen.clear();
    seen.resize(k.q() as usize + 1, UNSEEN);
    for &x in k.mu() {
        let (num, den) = numden_at(params, x);
        if den.is_zero() {
            return Verdict::fail(Method::Mu, Witness::Pole(x));
        }
        let y = k.div(num, den).expect("denominator is nonzero");
        let slot = k
            .mu_slot(y)
            .expect("g maps μ_{q+1} into itself off its poles") as usize;
        if seen[slot] != UNSEEN {
            return Verdict::fail(
                Method::Mu,
                Witness::Collision(Elem::from_raw(seen[slot]), x),
            );
        }
        seen[slot] = x.index();
    }
    Verdict::pp(Method::Mu)
}
