//! Benchmarks live in `benches/`; this library only holds shared fixtures.

use trinomial_core::{Elem, Layer, Tower};

/// The first `n` pairs `(a, b)` of nonzero elements in canonical order,
/// cycling through `b` fastest.
pub fn pairs(k: &Tower, n: usize) -> Vec<(Elem, Elem)> {
    k.nonzero(Layer::Top)
        .flat_map(|a| k.nonzero(Layer::Top).map(move |b| (a, b)))
        .take(n)
        .collect()
}
