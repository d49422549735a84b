use rayon::prelude::*;

const LEAF: usize = 32;

/// Pairwise (cascade) summation with a fixed split pattern.
///
/// The order of additions depends only on `xs.len()`, so the result is
/// bit-identical no matter how the terms were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        let mut s = 0.0;
        for x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `Σ w_k f(x_k)` evaluated node-parallel, reduced pairwise in node order.
pub fn par_weighted_sum<T, F>(nodes: &[T], weights: &[f64], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync,
{
    debug_assert_eq!(nodes.len(), weights.len());
    let terms: Vec<f64> = nodes
        .par_iter()
        .zip(weights.par_iter())
        .map(|(x, w)| if *w == 0.0 { 0.0 } else { w * f(x) })
        .collect();
    pairwise_sum(&terms)
}

/// Vector-valued version of [`par_weighted_sum`]; each component is reduced
/// independently with the same pairwise order.
pub fn par_weighted_sums<T, F, const K: usize>(nodes: &[T], weights: &[f64], f: F) -> [f64; K]
where
    T: Sync,
    F: Fn(&T) -> [f64; K] + Sync,
{
    debug_assert_eq!(nodes.len(), weights.len());
    let terms: Vec<[f64; K]> = nodes
        .par_iter()
        .zip(weights.par_iter())
        .map(|(x, w)| {
            if *w == 0.0 {
                return [0.0; K];
            }
            let mut v = f(x);
            for c in v.iter_mut() {
                *c *= w;
            }
            v
        })
        .collect();
    let mut out = [0.0; K];
    let mut column = vec![0.0; terms.len()];
    for (k, o) in out.iter_mut().enumerate() {
        for (c, t) in column.iter_mut().zip(&terms) {
            *c = t[k];
        }
        *o = pairwise_sum(&column);
    }
    out
}
