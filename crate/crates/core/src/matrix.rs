//! Dense exact matrices stored as `Vec` of rows.
//!
//! Two families of routines live here: Gauss-Jordan elimination over an
//! exact [`Field`], and unimodular row reduction over the integers (Hermite
//! normal form with its transform, integer kernels, Pfaffians).

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Field, Int, Rat};

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity_int(n: usize) -> Matrix<Int> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Matrix<T> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mul_int(a: &[Vec<Int>], b: &[Vec<Int>]) -> Matrix<Int> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Int::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn mul_vec_int(a: &[Vec<Int>], v: &[Int]) -> Vec<Int> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Int::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

pub fn to_rat(m: &[Vec<Int>]) -> Matrix<Rat> {
    m.iter().map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect()).collect()
}

// ---------------------------------------------------------------------------
// Field elimination

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse();
        for x in m[r].iter_mut() {
            *x = x.times(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = m[r][j].times(&f);
                    m[i][j] = m[i][j].minus(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

/// Basis of `{x : m x = 0}`.
pub fn kernel<F: Field>(m: &[Vec<F>], cols: usize) -> Matrix<F> {
    let mut w = m.to_vec();
    let pivots = rref(&mut w);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = w[r][f].negated();
            }
            v
        })
        .collect()
}

pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut w = m.to_vec();
    let mut d = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !w[i][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            w.swap(p, c);
            d = d.negated();
        }
        d = d.times(&w[c][c]);
        let inv = w[c][c].inverse();
        for i in c + 1..n {
            if w[i][c].is_zero() {
                continue;
            }
            let f = w[i][c].times(&inv);
            for j in c..n {
                let t = w[c][j].times(&f);
                w[i][j] = w[i][j].minus(&t);
            }
        }
    }
    d
}

/// Solves `sum_j x_j rows[j] = target`, if a solution exists.
pub fn solve_combination<F: Field>(rows: &[Vec<F>], target: &[F]) -> Option<Vec<F>> {
    // Columns of the system are the given rows.
    let k = rows.len();
    let n = target.len();
    let mut aug: Matrix<F> = (0..n)
        .map(|i| {
            let mut r: Vec<F> = rows.iter().map(|v| v[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![F::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][k].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Integer row reduction

/// Result of unimodular row reduction: `transform * input = hermite`.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub hermite: Matrix<Int>,
    pub transform: Matrix<Int>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn combine_rows(m: &mut [Vec<Int>], i: usize, j: usize, coeffs: [&Int; 4]) {
    // (row_i, row_j) <- (a row_i + b row_j, c row_i + d row_j)
    let [a, b, c, d] = coeffs;
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let (first, second) = m.split_at_mut(hi);
    let (ri, rj) = if i < j {
        (&mut first[lo], &mut second[0])
    } else {
        (&mut second[0], &mut first[lo])
    };
    for (x, y) in ri.iter_mut().zip(rj.iter_mut()) {
        let nx = a * &*x + b * &*y;
        let ny = c * &*x + d * &*y;
        *x = nx;
        *y = ny;
    }
}

fn sub_multiple(m: &mut [Vec<Int>], target: usize, source: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = m[source].clone();
    for (x, s) in m[target].iter_mut().zip(&src) {
        *x -= q * s;
    }
}

/// Row-style Hermite normal form with a unimodular transform.
///
/// Pivots are positive and every entry above a pivot is reduced into
/// `[0, pivot)`. Zero rows are collected at the bottom.
pub fn echelon(a: &[Vec<Int>]) -> Echelon {
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut h = a.to_vec();
    let mut u = identity_int(n);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        for i in r + 1..n {
            if h[i][c].is_zero() {
                continue;
            }
            if h[r][c].is_zero() {
                h.swap(r, i);
                u.swap(r, i);
                continue;
            }
            let e = h[r][c].extended_gcd(&h[i][c]);
            let a_ = &h[r][c] / &e.gcd;
            let b_ = &h[i][c] / &e.gcd;
            let nb = -&b_;
            let coeffs = [&e.x, &e.y, &nb, &a_];
            combine_rows(&mut h, r, i, coeffs);
            combine_rows(&mut u, r, i, coeffs);
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        let p = h[r][c].clone();
        for k in 0..r {
            let q = h[k][c].div_floor(&p);
            sub_multiple(&mut h, k, r, &q);
            sub_multiple(&mut u, k, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Echelon { hermite: h, transform: u, rank: r, pivots }
}

/// Nonzero rows of the Hermite normal form: a canonical basis of the row lattice.
pub fn hnf_basis(a: &[Vec<Int>]) -> Matrix<Int> {
    let e = echelon(a);
    e.hermite.into_iter().take(e.rank).collect()
}

/// Basis of the integer kernel `{x in Z^n : a x = 0}` of an `m x n` matrix.
pub fn integer_kernel(a: &[Vec<Int>], n: usize) -> Matrix<Int> {
    if a.is_empty() {
        return identity_int(n);
    }
    let e = echelon(&transpose(a));
    let ker: Matrix<Int> = e.transform.into_iter().skip(e.rank).collect();
    hnf_basis(&ker)
}

/// Pfaffian of an alternating matrix by congruence elimination.
pub fn pfaffian(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    if n % 2 == 1 {
        return Rat::zero();
    }
    let mut w = a.to_vec();
    let mut pf = Rat::one();
    let mut k = 0;
    while k < n {
        let Some(j) = (k + 1..n).find(|&j| !w[k][j].is_zero()) else {
            return Rat::zero();
        };
        if j != k + 1 {
            w.swap(j, k + 1);
            for row in w.iter_mut() {
                row.swap(j, k + 1);
            }
            pf = -pf;
        }
        let p = w[k][k + 1].clone();
        pf *= &p;
        for i in k + 2..n {
            // v_i -= (w[k][i]/p) v_{k+1}; v_i += (w[k+1][i]/p) v_k
            let c1 = -(&w[k][i] / &p);
            let c2 = &w[k + 1][i] / &p;
            add_congruent(&mut w, i, k + 1, &c1);
            add_congruent(&mut w, i, k, &c2);
        }
        k += 2;
    }
    pf
}

/// Basis change `v_i += c v_j` applied to a Gram matrix.
fn add_congruent(w: &mut [Vec<Rat>], i: usize, j: usize, c: &Rat) {
    if c.is_zero() {
        return;
    }
    let n = w.len();
    for col in 0..n {
        let t = &w[j][col] * c;
        w[i][col] += t;
    }
    for row in w.iter_mut() {
        let t = &row[j] * c;
        row[i] += t;
    }
}
