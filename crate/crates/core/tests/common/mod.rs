//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use elemstate::linalg::{CMatrix, CVector};
use elemstate::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, ascending.
pub fn eig2(m: &CMatrix) -> [f64; 2] {
    let (a, d, b) = (m[(0, 0)].re, m[(1, 1)].re, m[(0, 1)]);
    let mid = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    [mid - r, mid + r]
}

/// Largest singular value by power iteration on `u* u`.
pub fn power_norm(u: &CMatrix) -> f64 {
    let g = u.adjoint() * u;
    let n = g.nrows();
    let mut v = CVector::from_fn(n, |i, _| C64::new(1.0 + i as f64 * 0.37, 0.11 * i as f64));
    let mut lambda = 0.0;
    for _ in 0..2000 {
        let w = &g * &v;
        let norm = w.norm();
        if norm == 0.0 {
            return 0.0;
        }
        lambda = norm;
        v = w / C64::new(norm, 0.0);
    }
    lambda.sqrt()
}

/// `<v| a |v>` with an explicit double loop.
pub fn sandwich(v: &CVector, a: &CMatrix) -> C64 {
    let n = v.len();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += v[i].conj() * a[(i, j)] * v[j];
        }
    }
    acc
}

/// Local deterministic assignment `v`: bits of `v` pick the sign of
/// `a1, a2, b1, b2` (most significant bit first, set bit = -1).
pub fn vertex_correlations(v: usize) -> [[f64; 2]; 2] {
    let sign = |bit: usize| if v >> bit & 1 == 1 { -1.0 } else { 1.0 };
    let (a1, a2, b1, b2) = (sign(3), sign(2), sign(1), sign(0));
    [[a1 * b1, a1 * b2], [a2 * b1, a2 * b2]]
}

/// Whether `e` is a convex combination of the 16 local deterministic
/// correlation vectors, decided by a phase-one simplex with Bland's rule.
pub fn lp_local_feasible(e: [[f64; 2]; 2]) -> bool {
    const NV: usize = 16;
    const M: usize = 5;
    let mut rows = vec![vec![0.0f64; NV + M + 1]; M];
    for v in 0..NV {
        let ev = vertex_correlations(v);
        for (row, x) in rows.iter_mut().zip([1.0, ev[0][0], ev[0][1], ev[1][0], ev[1][1]]) {
            row[v] = x;
        }
    }
    let rhs = [1.0, e[0][0], e[0][1], e[1][0], e[1][1]];
    for (i, row) in rows.iter_mut().enumerate() {
        row[NV + M] = rhs[i];
        if rhs[i] < 0.0 {
            row.iter_mut().for_each(|x| *x = -*x);
        }
        row[NV + i] = 1.0;
    }
    let mut basis: Vec<usize> = (NV..NV + M).collect();
    // Reduced costs of the phase-one objective (sum of artificials).
    let width = NV + M + 1;
    let mut cost = vec![0.0f64; width];
    for row in &rows {
        for j in 0..width {
            if j < NV || j == NV + M {
                cost[j] -= row[j];
            }
        }
    }
    for _ in 0..10_000 {
        let Some(enter) = (0..NV + M).find(|&j| cost[j] < -1e-12) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..M {
            if rows[i][enter] > 1e-12 {
                let ratio = rows[i][NV + M] / rows[i][enter];
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let best = rows[l][NV + M] / rows[l][enter];
                        if ratio < best - 1e-15 || (ratio <= best + 1e-15 && basis[i] < basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        let Some(l) = leave else { break };
        let piv = rows[l][enter];
        rows[l].iter_mut().for_each(|x| *x /= piv);
        let pivot_row = rows[l].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != l && row[enter] != 0.0 {
                let f = row[enter];
                row.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * p);
            }
        }
        let f = cost[enter];
        cost.iter_mut().zip(&pivot_row).for_each(|(x, p)| *x -= f * p);
        basis[l] = enter;
    }
    // The objective value is minus the last reduced-cost entry.
    -cost[NV + M] <= 1e-9
}
