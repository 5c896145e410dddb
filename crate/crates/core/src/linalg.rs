//! Exact linear algebra: small integer matrices, fraction-free row reduction
//! over ℚ, and Smith normal form.
//!
//! Row reduction clears denominators row by row and then eliminates with
//! integer cross-multiplication, dividing every updated row by its content.
//! It first runs in `i128` with checked arithmetic and restarts over `BigInt`
//! if any intermediate overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{lcm_of_denominators, Q};

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let k = b.len();
    (0..n).map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn mat_vec_q(a: &IMat, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (&x, y)| acc + y * Q::from_integer(x.into()))).collect()
}

pub fn transpose(a: &IMat) -> IMat {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn is_identity(a: &IMat) -> bool {
    a.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
}

/// Determinant by cofactor expansion; intended for rank ≤ 4.
pub fn det(a: &IMat) -> i64 {
    let n = a.len();
    match n {
        0 => 1,
        1 => a[0][0],
        2 => a[0][0] * a[1][1] - a[0][1] * a[1][0],
        _ => (0..n)
            .map(|j| {
                let minor: IMat = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Inverse of a rational square matrix, `None` if singular.
pub fn inverse_q(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Inverse of an integer matrix with integral inverse (e.g. a Weyl group element).
pub fn inverse_unimodular(a: &IMat) -> Option<IMat> {
    let aq: Vec<Vec<Q>> = a.iter().map(|r| r.iter().map(|&x| Q::from_integer(x.into())).collect()).collect();
    let inv = inverse_q(&aq)?;
    inv.iter()
        .map(|r| r.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect())
        .collect()
}

trait ExactInt: Clone + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    /// `a*x - b*y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl ExactInt for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn normalize_content<T: ExactInt>(row: &mut [T]) {
    let mut g = T::zero();
    for x in row.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
        }
    }
    if g.is_zero() {
        return;
    }
    let lead_negative = row.iter().find(|x| !x.is_zero()).is_some_and(T::is_negative);
    let g = if lead_negative { g.neg() } else { g };
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = x.div_exact(&g);
        }
    }
}

/// Reduced row echelon form over ℤ; `None` signals overflow.
fn reduce<T: ExactInt>(mut rows: Vec<Vec<T>>, ncols: usize) -> Option<(Vec<Vec<T>>, Vec<usize>)> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    for r in rows.iter_mut() {
        normalize_content(r);
    }
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..ncols {
        if pr == rows.len() {
            break;
        }
        // smallest nonzero pivot keeps growth down
        let mut best: Option<usize> = None;
        for r in pr..rows.len() {
            if !rows[r][col].is_zero() && best.is_none_or(|b| rows[r][col].abs_lt(&rows[b][col])) {
                best = Some(r);
            }
        }
        let Some(b) = best else { continue };
        rows.swap(pr, b);
        let pivot_row = rows[pr].clone();
        let a = pivot_row[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == pr || row[col].is_zero() {
                continue;
            }
            let g = a.gcd(&row[col]);
            let fa = a.div_exact(&g);
            let fb = row[col].div_exact(&g);
            // rows above carry entries in earlier free columns, so scale every column
            for j in 0..ncols {
                if pivot_row[j].is_zero() {
                    if !row[j].is_zero() {
                        row[j] = T::cross(&fa, &row[j], &fb, &T::zero())?;
                    }
                } else {
                    row[j] = T::cross(&fa, &row[j], &fb, &pivot_row[j])?;
                }
            }
            normalize_content(row);
        }
        pivots.push(col);
        pr += 1;
    }
    rows.truncate(pr);
    Some((rows, pivots))
}

/// Result of fraction-free row reduction of a rational matrix.
#[derive(Clone, Debug)]
pub struct RowReduced {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl RowReduced {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Basis of the right nullspace, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Q::zero(); self.ncols];
                v[f] = Q::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !Zero::is_zero(&row[f]) {
                        v[p] = -Q::new(row[f].clone(), row[p].clone());
                    }
                }
                v
            })
            .collect()
    }
}

fn integer_rows(rows: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let l = lcm_of_denominators(r);
            r.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

pub fn row_reduce(rows: &[Vec<Q>], ncols: usize) -> RowReduced {
    row_reduce_int(integer_rows(rows), ncols)
}

pub fn row_reduce_int(rows: Vec<Vec<BigInt>>, ncols: usize) -> RowReduced {
    let small: Option<Vec<Vec<i128>>> = rows.iter().map(|r| r.iter().map(ToPrimitive::to_i128).collect()).collect();
    if let Some(small) = small {
        if let Some((red, pivots)) = reduce(small, ncols) {
            return RowReduced {
                rows: red.iter().map(|r| r.iter().map(ExactInt::to_big).collect()).collect(),
                pivots,
                ncols,
            };
        }
    }
    let (red, pivots) = reduce(rows, ncols).expect("BigInt reduction cannot overflow");
    RowReduced { rows: red, pivots, ncols }
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    row_reduce(rows, ncols).rank()
}

pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    row_reduce(rows, ncols).nullspace()
}

/// Smith normal form: returns the diagonal `d` and a unimodular `v` with
/// `u * a * v = diag(d)` for some unimodular `u`.
pub fn smith_normal_form(a: &IMat) -> (Vec<i64>, IMat) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut a = a.clone();
    let mut v = identity(n);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            // smallest nonzero entry in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (diag, v);
            };
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let f = a[i][t].div_euclid(p);
                if f != 0 {
                    for j in t..n {
                        a[i][j] -= f * a[t][j];
                    }
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let f = a[t][j].div_euclid(p);
                if f != 0 {
                    for i in t..m {
                        a[i][j] -= f * a[i][t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..n {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for i in t..m {
                a[i][t] = -a[i][t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
        diag.push(a[t][t]);
    }
    (diag, v)
}
