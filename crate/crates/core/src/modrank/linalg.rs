//! Dense linear algebra over ℚ(B) and Hermite reduction over ℚ[B].

use crate::poly::{RatFunc, UniPoly};

pub(crate) type Matrix = Vec<Vec<RatFunc>>;

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
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
        let inv = m[r][c].inv();
        for k in c..cols {
            m[r][k] = m[r][k].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let d = f.mul(&m[r][k]);
                    m[i][k] = m[i][k].sub(&d);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Indices of a maximal independent subset of `vectors`, greedy in order.
pub(crate) fn independent_subset(vectors: &[Vec<RatFunc>]) -> Vec<usize> {
    // columns are the vectors
    let n = vectors.len();
    let d = vectors.first().map_or(0, |v| v.len());
    let mut m: Matrix = (0..d)
        .map(|i| (0..n).map(|j| vectors[j][i].clone()).collect())
        .collect();
    rref(&mut m)
}

/// Solves `A·X = B` for square invertible `A` given by columns; `None` when singular.
pub(crate) struct Solver {
    inverse: Matrix,
    pub det: RatFunc,
}

impl Solver {
    pub fn new(columns: &[Vec<RatFunc>]) -> Option<Solver> {
        let d = columns.len();
        if columns.iter().any(|c| c.len() != d) {
            return None;
        }
        let mut m: Matrix = (0..d)
            .map(|i| {
                let mut row: Vec<RatFunc> = (0..d).map(|j| columns[j][i].clone()).collect();
                row.extend((0..d).map(|k| if k == i { RatFunc::one() } else { RatFunc::zero() }));
                row
            })
            .collect();
        let det = determinant(columns);
        if det.is_zero() {
            return None;
        }
        let piv = rref(&mut m);
        if piv.len() < d || piv[d - 1] != d - 1 {
            return None;
        }
        let inverse = m.into_iter().map(|r| r[d..].to_vec()).collect();
        Some(Solver { inverse, det })
    }

    pub fn solve(&self, rhs: &[RatFunc]) -> Vec<RatFunc> {
        self.inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(rhs)
                    .fold(RatFunc::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }
}

pub(crate) fn determinant(columns: &[Vec<RatFunc>]) -> RatFunc {
    let d = columns.len();
    let mut m: Matrix = (0..d)
        .map(|i| (0..d).map(|j| columns[j][i].clone()).collect())
        .collect();
    let mut det = RatFunc::one();
    for c in 0..d {
        let Some(p) = (c..d).find(|&i| !m[i][c].is_zero()) else {
            return RatFunc::zero();
        };
        if p != c {
            m.swap(p, c);
            det = det.neg();
        }
        det = det.mul(&m[c][c]);
        let inv = m[c][c].inv();
        for i in c + 1..d {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for k in c..d {
                let t = f.mul(&m[c][k]);
                m[i][k] = m[i][k].sub(&t);
            }
        }
    }
    det
}

/// Basis of the right kernel of the matrix whose columns are `vectors`.
pub(crate) fn kernel(vectors: &[Vec<RatFunc>]) -> Vec<Vec<RatFunc>> {
    let n = vectors.len();
    let d = vectors.first().map_or(0, |v| v.len());
    let mut m: Matrix = (0..d)
        .map(|i| (0..n).map(|j| vectors[j][i].clone()).collect())
        .collect();
    let piv = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![RatFunc::zero(); n];
            v[f] = RatFunc::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = m[r][f].neg();
            }
            v
        })
        .collect()
}

/// Clears denominators of a ℚ(B)-vector: the result lies in ℤ[B]^n with
/// coprime integer content and trivial polynomial gcd.
pub(crate) fn primitive_vector(v: &[RatFunc]) -> Vec<UniPoly> {
    let mut den = UniPoly::one();
    for c in v {
        let g = den.gcd(c.den());
        den = den.mul(&c.den().div_exact(&g).unwrap());
    }
    let mut out: Vec<UniPoly> = v
        .iter()
        .map(|c| c.num().mul(&den.div_exact(c.den()).unwrap()))
        .collect();
    let mut g = UniPoly::zero();
    for c in &out {
        g = g.gcd(c);
    }
    if !g.is_zero() {
        out = out.iter().map(|c| c.div_exact(&g).unwrap()).collect();
    }
    // integer content
    let mut lcm_den = num_bigint::BigInt::from(1);
    for c in &out {
        lcm_den = num_integer::Integer::lcm(&lcm_den, &c.denominator_lcm());
    }
    let scale = crate::poly::Rational::from_integer(lcm_den);
    out = out.iter().map(|c| c.scale(&scale)).collect();
    let mut content = num_bigint::BigInt::from(0);
    for c in &out {
        for a in c.coeffs() {
            content = num_integer::Integer::gcd(&content, a.numer());
        }
    }
    if content > num_bigint::BigInt::from(0) {
        let inv = crate::poly::Rational::new(1.into(), content);
        out = out.iter().map(|c| c.scale(&inv)).collect();
    }
    out
}

/// Hermite reduction over ℚ[B] of polynomial row vectors. Returns the nonzero
/// reduced rows together with the transformation expressing each of them in
/// terms of the input rows.
pub(crate) fn hermite(rows: &[Vec<UniPoly>]) -> (Vec<Vec<UniPoly>>, Vec<Vec<UniPoly>>) {
    let n = rows.len();
    let d = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<UniPoly>> = rows.to_vec();
    let mut u: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { UniPoly::one() } else { UniPoly::zero() }).collect())
        .collect();
    let mut r = 0;
    for c in 0..d {
        if r == n {
            break;
        }
        loop {
            // smallest-degree nonzero entry in column c at or below row r
            let best = (r..n)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].degree().unwrap());
            let Some(p) = best else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let (q, rem) = a[i][c].div_rem(&a[r][c]);
                for k in 0..d {
                    let t = q.mul(&a[r][k]);
                    a[i][k] = a[i][k].sub(&t);
                }
                for k in 0..n {
                    let t = q.mul(&u[r][k]);
                    u[i][k] = u[i][k].sub(&t);
                }
                if !rem.is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if (r..n).any(|i| !a[i][c].is_zero()) {
            r += 1;
        }
    }
    (a[..r].to_vec(), u[..r].to_vec())
}
