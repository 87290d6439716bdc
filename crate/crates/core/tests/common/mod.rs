#![allow(dead_code)]

use delsarte_core::linalg::Matrix;
use delsarte_core::report::random_unimodular;
use delsarte_core::FiniteQuotient;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `diag(d) * M'` with `d1 d2 d3 <= max_order` and random unimodular `M'`.
pub fn random_quotients(seed: u64, count: usize, max_order: u64) -> Vec<(Vec<Vec<i64>>, FiniteQuotient)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d: [u64; 3] = [rng.gen_range(1..=6), rng.gen_range(1..=12), rng.gen_range(1..=16)];
        if d.iter().product::<u64>() > max_order {
            continue;
        }
        let m = random_unimodular(&mut rng, 3);
        let rows: Vec<Vec<i64>> = (0..3).map(|i| m[i].iter().map(|x| x * d[i] as i64).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let q = FiniteQuotient::from_kernel_matrix(&Matrix::from_i64_rows(&refs)).expect("nonsingular");
        assert_eq!(q.order(), d.iter().product::<u64>());
        out.push((rows, q));
    }
    out
}

/// Valid weight quadruples `(m, w)` with `2 <= m <= max_m`.
pub fn random_cyclic_weights(seed: u64, count: usize, max_m: u64) -> Vec<(u64, [u64; 4])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let m = rng.gen_range(2..=max_m);
        let mut w = [0u64; 4];
        for x in &mut w[1..] {
            *x = rng.gen_range(0..m);
        }
        w[0] = (m - (w[1] + w[2] + w[3]) % m) % m;
        if FiniteQuotient::cyclic(m, w).is_ok() {
            out.push((m, w));
        }
    }
    out
}
