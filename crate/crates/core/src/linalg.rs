//! Exact integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;
pub type QMat = Vec<Vec<BigRational>>;

pub fn imat<T: Copy + Into<BigInt>>(rows: &[Vec<T>]) -> IMat {
    rows.iter().map(|r| r.iter().map(|x| (*x).into()).collect()).collect()
}

pub fn to_rational(m: &IMat) -> QMat {
    m.iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn mul(a: &IMat, b: &IMat) -> IMat {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| {
            (0..n)
                .map(|j| r.iter().zip(b.iter()).fold(BigInt::zero(), |acc, (x, row)| acc + x * &row[j]))
                .collect()
        })
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IMat) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Row echelon form over Q; returns the rank.
pub fn rank(m: &IMat) -> usize {
    let mut a = to_rational(m);
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                for j in c..cols {
                    let v = &a[r][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Nonzero invariant factors d1 | d2 | ... of the Smith normal form, positive.
pub fn smith_divisors(m: &IMat) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t].div_floor(&a[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
            }
            clean &= a[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = a[t][j].div_floor(&a[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &q * &a[i][t];
                    a[i][j] -= v;
                }
            }
            clean &= a[t][j].is_zero();
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_multiple_of(&a[t][t]));
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = a[i][j].clone();
                a[t][j] += v;
            }
            continue;
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// Basis of the integer kernel {x in Z^n : m x = 0}, by unimodular column reduction.
pub fn integer_kernel(m: &IMat, n: usize) -> IMat {
    let mut a = m.clone();
    let mut u = identity(n);
    let mut pc = 0;
    for r in 0..a.len() {
        while let Some(j0) = (pc..n).filter(|&j| !a[r][j].is_zero()).min_by_key(|&j| a[r][j].abs()) {
            swap_cols(&mut a, pc, j0);
            swap_cols(&mut u, pc, j0);
            let mut done = true;
            for j in pc + 1..n {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = a[r][j].div_floor(&a[r][pc]);
                col_axpy(&mut a, j, pc, &q);
                col_axpy(&mut u, j, pc, &q);
                done &= a[r][j].is_zero();
            }
            if done {
                pc += 1;
                break;
            }
        }
    }
    (pc..n).map(|j| u.iter().map(|row| row[j].clone()).collect()).collect()
}

fn swap_cols(a: &mut IMat, i: usize, j: usize) {
    if i != j {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
    }
}

/// column j -= q * column k
fn col_axpy(a: &mut IMat, j: usize, k: usize, q: &BigInt) {
    for r in a.iter_mut() {
        let v = q * &r[k];
        r[j] -= v;
    }
}

/// Solves the square system `a x = b` over Q.
pub fn solve(a: &QMat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: QMat = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for j in c..=n {
            m[c][j] = &m[c][j] * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let v = &m[c][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// (positive, negative, zero) counts of a symmetric rational matrix, by
/// congruence diagonalization (symmetric row and column operations).
pub fn signature(g: &QMat) -> (usize, usize, usize) {
    let mut a = g.clone();
    let n = a.len();
    let mut diag = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                sym_swap(&mut a, k, i);
            } else if let Some(i) = (k + 1..n).find(|&i| !a[k][i].is_zero()) {
                // e_k += e_i makes the diagonal 2 a_ki != 0
                sym_add(&mut a, k, i, &BigRational::one());
            } else {
                diag.push(BigRational::zero());
                k += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        for i in k + 1..n {
            if !a[i][k].is_zero() {
                let f = -(&a[i][k] / &p);
                sym_add(&mut a, i, k, &f);
            }
        }
        diag.push(p);
        k += 1;
    }
    let pos = diag.iter().filter(|d| d.is_positive()).count();
    let neg = diag.iter().filter(|d| d.is_negative()).count();
    (pos, neg, n - pos - neg)
}

fn sym_swap(a: &mut QMat, i: usize, j: usize) {
    a.swap(i, j);
    for r in a.iter_mut() {
        r.swap(i, j);
    }
}

/// row_i += f row_j and col_i += f col_j
fn sym_add(a: &mut QMat, i: usize, j: usize, f: &BigRational) {
    let n = a.len();
    for c in 0..n {
        let v = &a[j][c] * f;
        a[i][c] += v;
    }
    for r in 0..n {
        let v = &a[r][j] * f;
        a[r][i] += v;
    }
}

pub fn is_negative_definite(g: &IMat) -> bool {
    let (p, n, z) = signature(&to_rational(g));
    p == 0 && z == 0 && n == g.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IMat {
        imat(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn det_and_smith() {
        let d4 = m(&[&[-2, 1, 1, 1], &[1, -2, 0, 0], &[1, 0, -2, 0], &[1, 0, 0, -2]]);
        assert_eq!(det(&d4), BigInt::from(4));
        assert_eq!(smith_divisors(&d4), vec![1, 1, 2, 2].into_iter().map(BigInt::from).collect::<Vec<_>>());
        let a3 = m(&[&[-2, 1, 0], &[1, -2, 1], &[0, 1, -2]]);
        assert_eq!(det(&a3), BigInt::from(-4));
        assert_eq!(smith_divisors(&a3).last().unwrap(), &BigInt::from(4));
    }

    #[test]
    fn kernel_is_saturated() {
        let a = m(&[&[2, 4, 6], &[1, 1, 1]]);
        let k = integer_kernel(&a, 3);
        assert_eq!(k.len(), 1);
        let v: Vec<i64> = k[0].iter().map(|x| x.try_into().unwrap()).collect();
        assert!(v == vec![1, -2, 1] || v == vec![-1, 2, -1]);
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        let u = to_rational(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(signature(&u), (1, 1, 0));
        let deg = to_rational(&m(&[&[1, 1], &[1, 1]]));
        assert_eq!(signature(&deg), (1, 0, 1));
    }

    #[test]
    fn rational_solve() {
        let a = to_rational(&m(&[&[2, 1], &[1, 3]]));
        let b = [BigRational::from_integer(3.into()), BigRational::from_integer(5.into())];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x[0], BigRational::new(4.into(), 5.into()));
        assert_eq!(x[1], BigRational::new(7.into(), 5.into()));
    }
}
