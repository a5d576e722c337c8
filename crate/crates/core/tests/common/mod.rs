#![allow(dead_code)]

use weaves::CrossingMatrix;

/// Brute-force layering test: some proper nonempty set `A` of components
/// sits entirely above its complement `B`, i.e. every warp in `A` is over
/// every weft in `B` and every warp in `B` is under every weft in `A`.
pub fn layered_by_partition(c: &CrossingMatrix) -> bool {
    let (m, n) = c.shape();
    let total = m + n;
    if total < 2 {
        return false;
    }
    // Bit v of `upper`: warps 0..m, then wefts.
    (1u64..(1u64 << total) - 1).any(|upper| {
        let above = |v: usize| upper >> v & 1 == 1;
        (0..m).all(|i| {
            (0..n).all(|j| {
                let (warp_up, weft_up) = (above(i), above(m + j));
                warp_up == weft_up || c.get(i, j) == warp_up
            })
        })
    })
}

pub fn all_matrices(m: usize, n: usize) -> impl Iterator<Item = CrossingMatrix> {
    (0..1u128 << (m * n)).map(move |idx| CrossingMatrix::from_index(m, n, idx))
}
