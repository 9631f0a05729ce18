//! Independent oracles: plain elimination and permutation-sum determinants over BigRational,
//! written without the crate's linear algebra.
#![allow(dead_code)]

use nilext::LieAlgebra;
use num::{BigRational, One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, |x| x.len());
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                for k in 0..cols {
                    let t = &f * &rows[r][k];
                    rows[i][k] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn det_leibniz(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Q::zero();
    loop {
        let mut inv = 0;
        for i in 0..n {
            for j in i + 1..n {
                if perm[i] > perm[j] {
                    inv += 1;
                }
            }
        }
        let mut prod = Q::one();
        for i in 0..n {
            prod *= &m[i][perm[i]];
        }
        if inv % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { return total };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Largest k with a nonzero k x k minor.
pub fn rank_by_minors(m: &[Vec<Q>]) -> usize {
    let (r, c) = (m.len(), m.first().map_or(0, |x| x.len()));
    for k in (1..=r.min(c)).rev() {
        for rs in subsets(r, k) {
            for cs in subsets(c, k) {
                let sub: Vec<Vec<Q>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                if !det_leibniz(&sub).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn c(g: &LieAlgebra, i: usize, j: usize) -> Vec<Q> {
    g.bracket_basis(i, j)
}

/// Coboundary matrices on pairs and triples straight from the structure constants:
/// `(d a)(x,y) = a([x,y])`, `(d w)(x,y,z) = w([x,y],z) - w([x,z],y) + w([y,z],x)`.
/// Both are the true differentials up to an overall sign, which ranks ignore.
pub struct Brute {
    pub pairs: Vec<(usize, usize)>,
    pub d1: Vec<Vec<Q>>,
    pub d2: Vec<Vec<Q>>,
}

pub fn brute(g: &LieAlgebra) -> Brute {
    let n = g.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pidx = |a: usize, b: usize| -> (usize, i64) {
        if a < b {
            (pairs.iter().position(|&p| p == (a, b)).unwrap(), 1)
        } else {
            (pairs.iter().position(|&p| p == (b, a)).unwrap(), -1)
        }
    };
    let d1: Vec<Vec<Q>> = pairs.iter().map(|&(i, j)| c(g, i, j)).collect();
    let mut d2 = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let mut row = vec![Q::zero(); pairs.len()];
                let mut term = |u: Vec<Q>, w: usize, s: i64| {
                    for (k, ck) in u.iter().enumerate() {
                        if !ck.is_zero() && k != w {
                            let (p, sg) = pidx(k, w);
                            row[p] += ck * q(s * sg);
                        }
                    }
                };
                term(c(g, x, y), z, 1);
                term(c(g, x, z), y, -1);
                term(c(g, y, z), x, 1);
                d2.push(row);
            }
        }
    }
    Brute { pairs, d1, d2 }
}

fn transpose(m: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn h2_dim(g: &LieAlgebra) -> usize {
    let b = brute(g);
    let np = b.pairs.len();
    let z2 = np - if b.d2.is_empty() { 0 } else { rank(b.d2.clone()) };
    let b2 = rank(b.d1.clone());
    z2 - b2
}

/// Pair-coefficient vector of a 2-form given as `(i, j, c)` with i < j.
pub fn pair_vector(b: &Brute, terms: &[(usize, usize, Q)]) -> Vec<Q> {
    let mut v = vec![Q::zero(); b.pairs.len()];
    for (i, j, c) in terms {
        v[b.pairs.iter().position(|&p| p == (*i, *j)).unwrap()] += c;
    }
    v
}

pub fn is_closed(b: &Brute, v: &[Q]) -> bool {
    b.d2.iter().all(|r| r.iter().zip(v).fold(Q::zero(), |a, (x, y)| a + x * y).is_zero())
}

/// Rank of the coboundaries together with `extra` vectors, minus the coboundary rank.
pub fn rank_mod_boundaries(b: &Brute, extra: &[Vec<Q>]) -> usize {
    let bound = transpose(&b.d1, b.d1.first().map_or(0, |r| r.len()));
    let base = rank(bound.clone());
    let mut all = bound;
    all.extend(extra.iter().cloned());
    rank(all) - base
}
