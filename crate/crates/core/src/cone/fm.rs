//! Fourier–Motzkin elimination for small systems of rational inequalities.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::lattice::{Int, IntVec};

/// An inequality `coeffs · t >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Ineq {
    pub coeffs: Vec<Int>,
    pub rhs: Int,
}

impl Ineq {
    fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(self.rhs.abs(), |g, c| g.gcd(c));
        if !g.is_zero() && g != Int::from(1) {
            for c in &mut self.coeffs {
                *c /= &g;
            }
            self.rhs /= &g;
        }
        self
    }
}

/// Whether some `t ∈ Q^n` satisfies every inequality.
pub(crate) fn feasible(n: usize, system: Vec<Ineq>) -> bool {
    let mut sys: BTreeSet<Ineq> = system.into_iter().map(Ineq::normalized).collect();
    for var in 0..n {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), BTreeSet::new());
        for q in sys {
            if q.coeffs[var].is_positive() {
                pos.push(q);
            } else if q.coeffs[var].is_negative() {
                neg.push(q);
            } else {
                rest.insert(q);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = p.coeffs[var].clone();
                let b = -q.coeffs[var].clone();
                let coeffs = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| &b * x + &a * y).collect();
                let rhs = &b * &p.rhs + &a * &q.rhs;
                rest.insert(Ineq { coeffs, rhs }.normalized());
            }
        }
        sys = rest;
    }
    sys.iter().all(|q| !q.rhs.is_positive())
}

/// Whether some point `Σ t_j k_j` of the span of `kernel` has all
/// coordinates nonnegative and a positive coordinate among `strict`.
pub(crate) fn has_semipositive_point(kernel: &[IntVec], len: usize, strict: &[usize]) -> bool {
    if kernel.is_empty() || strict.is_empty() {
        return false;
    }
    let n = kernel.len();
    let coord = |i: usize| -> Vec<Int> { kernel.iter().map(|k| k[i].clone()).collect() };
    let mut system: Vec<Ineq> = (0..len)
        .map(|i| Ineq {
            coeffs: coord(i),
            rhs: Int::zero(),
        })
        .collect();
    let mut sum = vec![Int::zero(); n];
    for &i in strict {
        for (s, c) in sum.iter_mut().zip(coord(i)) {
            *s += c;
        }
    }
    system.push(Ineq {
        coeffs: sum,
        rhs: Int::from(1),
    });
    feasible(n, system)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ineq(c: &[i64], r: i64) -> Ineq {
        Ineq {
            coeffs: c.iter().map(|&x| Int::from(x)).collect(),
            rhs: Int::from(r),
        }
    }

    #[test]
    fn interval_systems() {
        // 1 <= t <= 3
        assert!(feasible(1, vec![ineq(&[1], 1), ineq(&[-1], -3)]));
        // t >= 3, t <= 1
        assert!(!feasible(1, vec![ineq(&[1], 3), ineq(&[-1], -1)]));
        // x + y >= 1, x <= 0, y <= 0
        assert!(!feasible(
            2,
            vec![ineq(&[1, 1], 1), ineq(&[-1, 0], 0), ineq(&[0, -1], 0)]
        ));
        assert!(feasible(0, vec![ineq(&[], 0)]));
        assert!(!feasible(0, vec![ineq(&[], 1)]));
    }
}
