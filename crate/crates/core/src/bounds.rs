//! Lower bounds on double points of exact Lagrangian immersions.

/// At least half the total dimension of the homology, rounded up.
pub fn double_point_bound(dims: &[usize]) -> usize {
    dims.iter().sum::<usize>().div_ceil(2)
}

/// Chord count and homology dimensions after `k`-spinning: every chord
/// appears twice and the homology is tensored with that of `S^k`.
pub fn k_spin(chords: usize, dims: &[usize], k: usize) -> (usize, Vec<usize>) {
    assert!(k >= 1, "spinning needs k >= 1");
    let mut out = vec![0; dims.len() + k];
    for (i, &d) in dims.iter().enumerate() {
        out[i] += d;
        out[i + k] += d;
    }
    (2 * chords, out)
}

/// Bound obtained when the algebra is good up to at most `k` exceptional
/// chords: spinning `l` times with `2^l > k` gives
/// `2^l R >= 2^l Σ/2 - k`, hence `R >= Σ/2 - k/2^l`.
pub fn improve_bound(k: u64, dims: &[usize]) -> usize {
    let total = dims.iter().sum::<usize>() as u128;
    let target = total.div_ceil(2);
    let k = k as u128;
    let mut l = 0u32;
    while (1u128 << l) <= k {
        l += 1;
    }
    loop {
        let scale = 1u128 << l;
        // ceil((2^l Σ - 2k) / 2^(l+1))
        let num = (scale * total).saturating_sub(2 * k);
        let bound = num.div_ceil(2 * scale);
        if bound >= target {
            return bound as usize;
        }
        l += 1;
    }
}
