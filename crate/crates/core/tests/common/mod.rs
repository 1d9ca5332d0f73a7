#![allow(dead_code, clippy::needless_range_loop)]

use d3kit::exact_arith::Rat;
use proptest::prelude::*;

/// Inertia of an integer symmetric matrix from its characteristic polynomial.
///
/// The polynomial comes from the Faddeev–LeVerrier recursion. Every root is real, so
/// Descartes' rule of signs counts the positive and negative roots exactly.
pub fn charpoly_inertia(a: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = a.len();
    let a: Vec<Vec<Rat>> = a
        .iter()
        .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
        .collect();
    // coeffs[k] is the coefficient of λ^k
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut m = vec![vec![Rat::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rat::zero();
                for t in 0..n {
                    s += &(&a[i][t] * &m[t][j]);
                }
                if i == j {
                    s += &coeffs[n - k + 1];
                }
                next[i][j] = s;
            }
        }
        m = next;
        let mut tr = Rat::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &(&a[i][t] * &m[t][i]);
            }
        }
        coeffs[n - k] = -tr / Rat::int(k as i64);
    }
    let zero = coeffs.iter().take_while(|c| c.is_zero()).count();
    let changes = |flip: bool| {
        let signs: Vec<bool> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c.is_positive() ^ (flip && k % 2 == 1))
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    (changes(false), changes(true), zero)
}

pub fn sym_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |upper| {
            let mut q = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i..n {
                    let v = it.next().unwrap();
                    q[i][j] = v;
                    q[j][i] = v;
                }
            }
            q
        })
    })
}

/// A random unimodular matrix as a product of elementary row operations, swaps and
/// sign flips applied to the identity.
pub fn unimodular(n: usize, steps: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec((0..n, 0..n, -2i64..=2, 0u8..3), steps).prop_map(move |ops| {
        let mut e: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        for (i, j, c, kind) in ops {
            match kind {
                0 if i != j => {
                    for t in 0..n {
                        e[i][t] += c * e[j][t];
                    }
                }
                1 => e.swap(i, j),
                _ => e[i].iter_mut().for_each(|x| *x = -*x),
            }
        }
        e
    })
}

pub fn to_rat(m: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    m.iter()
        .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
        .collect()
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::int(x)).collect()
}
