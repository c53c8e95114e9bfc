//! In-place zeta and Möbius transforms over the subset lattice.
//!
//! Slices are indexed by subset bitmask and must have power-of-two length.

/// `f(A) <- Σ_{B ⊆ A} f(B)`.
pub fn subset_sums(xs: &mut [f64]) {
    sweep(xs, |lo, hi| *hi += lo);
}

/// Inverse of [`subset_sums`]: `f(A) <- Σ_{B ⊆ A} (-1)^{|A \ B|} f(B)`.
pub fn subset_mobius(xs: &mut [f64]) {
    sweep(xs, |lo, hi| *hi -= lo);
}

fn sweep(xs: &mut [f64], op: impl Fn(f64, &mut f64)) {
    let n = xs.len();
    assert!(n.is_power_of_two(), "lattice length must be a power of two");
    let mut half = 1;
    while half < n {
        for block in xs.chunks_exact_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                op(*l, h);
            }
        }
        half *= 2;
    }
}
