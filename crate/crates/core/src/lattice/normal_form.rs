//! Hermite and Smith normal forms over `Z`.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, IntMatrix};

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `H = U A`. In `H` the zero rows
/// come last, every pivot is positive, and entries above a pivot lie in
/// `[0, pivot)`.
pub fn hnf(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut p = 0;
    for col in 0..n {
        if p == m {
            break;
        }
        loop {
            let best = (p..m)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&x, &y| h.get(x, col).abs().cmp(&h.get(y, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut clean = true;
            for r in p + 1..m {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = h.get(r, col).div_floor(h.get(p, col));
                h.sub_row_multiple(r, p, &q);
                u.sub_row_multiple(r, p, &q);
                if !h.get(r, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(p, col).is_zero() {
            continue;
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for r in 0..p {
            let q = h.get(r, col).div_floor(h.get(p, col));
            h.sub_row_multiple(r, p, &q);
            u.sub_row_multiple(r, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Smith normal form.
///
/// Returns `(S, U, V)` with `U`, `V` unimodular, `S = U A V` diagonal with
/// nonnegative entries `d_1 | d_2 | ...`.
pub fn snf(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let x = s.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(s, u, v);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m {
                let q = s.get(i, t).div_floor(s.get(t, t));
                s.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = s.get(t, j).div_floor(s.get(t, t));
                s.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = s.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    s.add_row(t, i);
                    u.add_row(t, i);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, v)
}

fn finish(s: IntMatrix, u: IntMatrix, mut v: IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = s;
    for t in 0..s.rows().min(s.cols()) {
        if s.get(t, t).is_negative() {
            s.negate_col(t);
            v.negate_col(t);
        }
    }
    (s, u, v)
}

/// Inverse of a unimodular matrix.
pub(crate) fn unimodular_inverse(a: &IntMatrix) -> IntMatrix {
    // The HNF of a unimodular matrix is the identity, so the transform is A^-1.
    let (h, u) = hnf(a);
    debug_assert_eq!(h, IntMatrix::identity(a.rows()));
    u
}

/// Diagonal of a Smith form, as a vector of invariant factors.
pub fn invariant_factors(s: &IntMatrix) -> Vec<Int> {
    (0..s.rows().min(s.cols())).map(|i| s.get(i, i).clone()).collect()
}
