//! Exact feasibility test for small linear programs.
//!
//! Decides whether `{x >= 0 : a x = b}` is nonempty with a phase-one simplex
//! over the rationals. Bland's rule on entering and leaving variables rules
//! out cycling, so termination is unconditional.

use crate::linalg::Rational;
use num::{One, Signed, Zero};

pub(crate) fn feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let m = a.len();
    assert_eq!(m, b.len(), "constraint/rhs count mismatch");
    if m == 0 {
        return true;
    }
    let n = a[0].len();

    // tableau: x columns, artificial columns, rhs; rows normalized to rhs >= 0
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "ragged constraint matrix");
        let neg = b[i].is_negative();
        let mut row = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if neg { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { Rational::one() } else { Rational::zero() });
        }
        row.push(if neg { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        // reduced cost of column j: c_j - sum of t[i][j] over artificial basis rows
        let entering = (0..n + m).find(|&j| {
            let c = if j >= n { Rational::one() } else { Rational::zero() };
            let z: Rational = (0..m)
                .filter(|&i| basis[i] >= n)
                .map(|i| t[i][j].clone())
                .sum();
            c - z < Rational::zero()
        });
        let Some(e) = entering else { break };

        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][e] <= Rational::zero() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][e];
            match leave {
                None => leave = Some(i),
                Some(l) => {
                    let best = &t[l][width - 1] / &t[l][e];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        leave = Some(i);
                    }
                }
            }
        }
        let Some(r) = leave else { break };

        let piv = t[r][e].clone();
        for j in 0..width {
            t[r][j] = &t[r][j] / &piv;
        }
        for i in 0..m {
            if i == r || t[i][e].is_zero() {
                continue;
            }
            let f = t[i][e].clone();
            for j in 0..width {
                t[i][j] = &t[i][j] - &f * &t[r][j];
            }
        }
        basis[r] = e;
    }

    (0..m)
        .filter(|&i| basis[i] >= n)
        .map(|i| t[i][width - 1].clone())
        .sum::<Rational>()
        .is_zero()
}
