//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_q, Q};

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponent, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exp: Exponent, c: Q) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// `Σ coeffs[i]·x_i + constant`.
    pub fn linear(coeffs: &[Q], constant: Q) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, constant);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: Q) {
        debug_assert_eq!(exp.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        self.terms.iter().fold(Q::zero(), |acc, (e, c)| {
            let m = e.iter().zip(point).fold(Q::one(), |m, (&k, x)| m * num_traits::pow(x.clone(), k as usize));
            acc + c * m
        })
    }

    /// Replaces variable `i` by `images[i]`; all images share one ring.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "substitution arity");
        let target = images.first().map_or(0, Poly::nvars);
        let max_deg: Vec<u32> = (0..self.nvars).map(|i| self.terms.keys().map(|e| e[i]).max().unwrap_or(0)).collect();
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .zip(&max_deg)
            .map(|(p, &d)| {
                let mut v = vec![Poly::one(target)];
                for k in 1..=d as usize {
                    let next = v[k - 1].mul(p);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut r = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut m = Poly::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = m.mul(&powers[i][k as usize]);
                }
            }
            r = r.add(&m);
        }
        r
    }

    /// Sets the last variable to 1 and drops it.
    pub fn dehomogenize_last(&self) -> Poly {
        let mut r = Poly::zero(self.nvars - 1);
        for (e, c) in &self.terms {
            r.add_term(e[..self.nvars - 1].to_vec(), c.clone());
        }
        r
    }

    /// Coefficient vector against an ordered monomial basis; `None` if a term falls outside it.
    pub fn coefficients_in(&self, index: &BTreeMap<Exponent, usize>, len: usize) -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); len];
        for (e, c) in &self.terms {
            v[*index.get(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn to_sparse(&self) -> Vec<SparseTerm> {
        self.terms.iter().map(|(e, c)| SparseTerm { exp: e.clone(), coef: fmt_q(c) }).collect()
    }

    pub fn from_sparse(nvars: usize, terms: &[SparseTerm]) -> Result<Poly> {
        let mut p = Poly::zero(nvars);
        for t in terms {
            if t.exp.len() != nvars {
                return Err(Error::Parse(format!(
                    "monomial {:?} has {} exponents, expected {nvars}",
                    t.exp,
                    t.exp.len()
                )));
            }
            p.add_term(t.exp.clone(), parse_q(&t.coef)?);
        }
        Ok(p)
    }
}

/// One term of the sparse exponent–coefficient JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseTerm {
    pub exp: Vec<u32>,
    pub coef: String,
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = |i: usize| format!("y{}", i + 1);
        let mut first = true;
        // highest degree first reads better
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (e, c) in terms {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names(i) } else { format!("{}^{k}", names(i)) })
                .collect();
            let neg = *c < Q::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&abs))?;
            } else if abs == Q::one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Exponent vectors of exact total degree `d`, in a fixed graded order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Exponent> {
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if i + 1 == nvars {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            rec(nvars, i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(nvars, 0, d, &mut vec![0; nvars], &mut out);
    out
}

pub fn monomials_up_to(nvars: usize, d: u32) -> Vec<Exponent> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

pub fn monomial_index(monos: &[Exponent]) -> BTreeMap<Exponent, usize> {
    monos.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

/// `n` choose `k`.
pub fn binomial(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Dimension of polynomials of exact degree `d` in `nvars` variables (0 for negative `d`).
pub fn dim_exact_degree(nvars: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if nvars == 0 {
        return u64::from(d == 0);
    }
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

pub fn dim_up_to_degree(nvars: usize, d: i64) -> u64 {
    dim_exact_degree(nvars + 1, d)
}

/// A vector of polynomials; a column of a polynomial matrix or an element of a free module.
pub type PolyVec = Vec<Poly>;

/// Dense matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zero(n, n, nvars);
        for i in 0..n {
            m.entries[i * n + i] = Poly::one(nvars);
        }
        m
    }

    pub fn from_constants(c: &[Vec<Q>], nvars: usize) -> Self {
        let rows = c.len();
        let cols = c.first().map_or(0, Vec::len);
        PolyMatrix {
            rows,
            cols,
            entries: c.iter().flat_map(|r| r.iter().map(|x| Poly::constant(nvars, x.clone()))).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> PolyVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, o.rows, "matrix shapes");
        let nv = self.entries.first().or(o.entries.first()).map_or(0, Poly::nvars);
        let mut r = PolyMatrix::zero(self.rows, o.cols, nv);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Poly::zero(nv);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = o.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                r.set(i, j, acc);
            }
        }
        r
    }

    pub fn apply(&self, v: &[Poly]) -> PolyVec {
        assert_eq!(self.cols, v.len(), "matrix-vector shapes");
        (0..self.rows)
            .map(|i| {
                let nv = v.first().map_or(0, Poly::nvars);
                (0..self.cols).fold(Poly::zero(nv), |acc, k| {
                    let a = self.get(i, k);
                    if a.is_zero() || v[k].is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(&v[k]))
                    }
                })
            })
            .collect()
    }

    pub fn sub(&self, o: &PolyMatrix) -> PolyMatrix {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn to_sparse(&self) -> Vec<Vec<Vec<SparseTerm>>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).to_sparse()).collect()).collect()
    }

    pub fn from_sparse(nvars: usize, m: &[Vec<Vec<SparseTerm>>]) -> Result<Self> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        if m.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse("ragged polynomial matrix".into()));
        }
        let entries =
            m.iter().flat_map(|r| r.iter().map(|t| Poly::from_sparse(nvars, t))).collect::<Result<Vec<_>>>()?;
        Ok(PolyMatrix { rows, cols, entries })
    }
}

#[cfg(test)]
pub(crate) fn qpoly(nvars: usize, terms: &[(&[u32], i64)]) -> Poly {
    let mut p = Poly::zero(nvars);
    for (e, c) in terms {
        p.add_term(e.to_vec(), crate::rational::q(*c));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    #[test]
    fn arithmetic() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.coeff(&[1, 1]), q(2));
        assert_eq!(p.degree(), Some(2));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.eval(&[q(1), q(2)]), q(9));
    }

    #[test]
    fn substitution() {
        // f(x, y) = x*y, x -> y + 1, y -> 2
        let f = qpoly(2, &[(&[1, 1], 1)]);
        let img = [Poly::linear(&[q(0), q(1)], q(1)), Poly::constant(2, q(2))];
        let g = f.substitute(&img);
        assert_eq!(g, Poly::linear(&[q(0), q(2)], q(2)));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 6).len(), 28);
        assert_eq!(monomials_up_to(2, 6).len(), 28);
        assert_eq!(dim_exact_degree(3, 6), 28);
        assert_eq!(dim_up_to_degree(2, 6), 28);
        assert_eq!(dim_exact_degree(2, -1), 0);
        assert_eq!(monomials_of_degree(0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn sparse_round_trip_and_display() {
        let p = qpoly(2, &[(&[2, 0], 1), (&[0, 1], -3)]).add(&Poly::constant(2, qf(1, 2)));
        let back = Poly::from_sparse(2, &p.to_sparse()).unwrap();
        assert_eq!(p, back);
        assert_eq!(p.to_string(), "y1^2 - 3*y2 + 1/2");
    }
}
