//! Invariant theory of the linear part of a finite group: Molien series,
//! Reynolds averaging, fundamental degrees and the coinvariant algebra.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::FiniteReflectionGroup;
use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::poly::{self, Exponent, Poly};
use crate::rational::{q, Q};

/// Hard cap on the degree of any invariant-theory computation.
pub const MAX_INVARIANT_DEGREE: usize = 24;

fn principal_minor_sum(m: &IMat, k: usize) -> i64 {
    let n = m.len();
    let mut total = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let sub: IMat = idx.iter().map(|&i| idx.iter().map(|&j| m[i][j]).collect()).collect();
        total += linalg::det(&sub);
    }
    total
}

/// Coefficients of `det(I − tM)`.
fn char_coefficients(m: &IMat) -> Vec<Q> {
    (0..=m.len())
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            q(sign * principal_minor_sum(m, k))
        })
        .collect()
}

/// Power series of `1/p(t)` through degree `d`, for `p(0) = 1`.
fn invert_series(p: &[Q], d: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); d + 1];
    out[0] = Q::one();
    for k in 1..=d {
        let mut acc = Q::zero();
        for (i, c) in p.iter().enumerate().skip(1).take(k) {
            acc -= c * &out[k - i];
        }
        out[k] = acc;
    }
    out
}

/// `(1/|Γ|) Σ_γ 1/det(1 − tγ)` through degree `d`.
pub fn molien_series(group: &FiniteReflectionGroup, d: usize) -> Vec<Q> {
    let mut sum = vec![Q::zero(); d + 1];
    for a in 0..group.order() {
        let s = invert_series(&char_coefficients(group.linear(a)), d);
        for (acc, c) in sum.iter_mut().zip(s) {
            *acc += c;
        }
    }
    let n = q(group.order() as i64);
    sum.into_iter().map(|c| c / &n).collect()
}

/// `f ↦ f ∘ M⁻¹` for the linear part of element `a`, in centered coordinates.
pub fn linear_twist(group: &FiniteReflectionGroup, a: usize, f: &Poly) -> Poly {
    let r = group.rank();
    let inv = group.linear(group.inverse(a));
    let images: Vec<Poly> = (0..r)
        .map(|i| {
            let coeffs: Vec<Q> = inv[i].iter().map(|&c| q(c)).collect();
            Poly::linear(&coeffs, Q::zero())
        })
        .collect();
    f.substitute(&images)
}

/// Average of `f` over the linear action.
pub fn reynolds(group: &FiniteReflectionGroup, f: &Poly) -> Poly {
    let mut acc = Poly::zero(group.rank());
    for a in 0..group.order() {
        acc = acc.add(&linear_twist(group, a, f));
    }
    acc.scale(&(Q::one() / q(group.order() as i64)))
}

fn coefficient_rows(polys: &[Poly], index: &BTreeMap<Exponent, usize>) -> Vec<Vec<Q>> {
    polys.iter().map(|p| p.coefficients_in(index, index.len()).expect("homogeneous of the indexed degree")).collect()
}

fn from_row(row: &[num_bigint::BigInt], monos: &[Exponent]) -> Poly {
    let mut p = Poly::zero(monos.first().map_or(0, Vec::len));
    for (c, m) in row.iter().zip(monos) {
        if !c.is_zero() {
            p.add_term(m.clone(), Q::from_integer(c.clone()));
        }
    }
    p
}

/// A basis of a span of homogeneous degree-`k` polynomials.
fn span_basis(polys: &[Poly], rank: usize, k: u32) -> Vec<Poly> {
    let monos = poly::monomials_of_degree(rank, k);
    let index = poly::monomial_index(&monos);
    let red = linalg::row_reduce(&coefficient_rows(polys, &index), monos.len());
    red.rows.iter().take(red.rank()).map(|r| from_row(r, &monos)).collect()
}

/// Basis of the degree-`k` invariants, from Reynolds images of monomials.
pub fn invariant_basis(group: &FiniteReflectionGroup, k: u32) -> Vec<Poly> {
    let images: Vec<Poly> = poly::monomials_of_degree(group.rank(), k)
        .into_iter()
        .map(|m| reynolds(group, &Poly::monomial(m, Q::one())))
        .collect();
    span_basis(&images, group.rank(), k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub order: usize,
    pub num_reflections: usize,
    /// Generated by its reflections.
    pub applicable: bool,
    pub molien: Vec<i64>,
    pub invariant_dims: Vec<usize>,
    pub molien_matches_reynolds: bool,
    pub fundamental_degrees: Vec<u32>,
    /// Exact-degree dimensions of the coinvariant algebra, degrees `0..=N+1`.
    pub coinvariant_dims: Vec<usize>,
    pub coinvariant_dimension: usize,
}

impl InvariantReport {
    /// Every check that applies holds.
    pub fn passed(&self) -> bool {
        let degree_product: u64 = self.fundamental_degrees.iter().map(|&d| u64::from(d)).product();
        let degree_sum: u32 = self.fundamental_degrees.iter().map(|d| d - 1).sum();
        self.applicable
            && self.molien_matches_reynolds
            && self.coinvariant_dimension == self.order
            && self.coinvariant_dims.last() == Some(&0)
            && degree_product == self.order as u64
            && degree_sum as usize == self.num_reflections
    }
}

/// Invariant dimensions through `d`, fundamental degrees and the
/// coinvariant algebra through one past the number of reflections.
pub fn cst_check(group: &FiniteReflectionGroup, d: usize) -> Result<InvariantReport> {
    let r = group.rank();
    let top = group.num_reflections() + 1;
    let reach = d.max(top);
    if reach > MAX_INVARIANT_DEGREE {
        return Err(Error::Budget(format!("invariant degree {reach} exceeds {MAX_INVARIANT_DEGREE}")));
    }
    let molien_q = molien_series(group, d);
    let molien: Vec<i64> = molien_q
        .iter()
        .map(|c| {
            if c.is_integer() {
                c.to_integer().to_i64().ok_or_else(|| Error::Budget("Molien coefficient".into()))
            } else {
                Err(Error::PreconditionViolated("non-integral Molien coefficient".into()))
            }
        })
        .collect::<Result<_>>()?;

    let bases: Vec<Vec<Poly>> = (0..=reach as u32).map(|k| invariant_basis(group, k)).collect();
    let invariant_dims: Vec<usize> = bases.iter().take(d + 1).map(Vec::len).collect();
    let molien_matches_reynolds = molien.iter().zip(&invariant_dims).all(|(&m, &i)| m == i as i64);

    let mut fundamental_degrees = Vec::new();
    for k in 1..=reach {
        let mut products = Vec::new();
        for i in 1..k {
            for a in &bases[i] {
                for b in &bases[k - i] {
                    products.push(a.mul(b));
                }
            }
        }
        let decomposable = span_basis(&products, r, k as u32).len();
        for _ in decomposable..bases[k].len() {
            fundamental_degrees.push(k as u32);
        }
    }

    let mut coinvariant_dims = Vec::new();
    for k in 0..=top {
        let mut ideal = Vec::new();
        for i in 1..=k {
            let monos = poly::monomials_of_degree(r, (k - i) as u32);
            for inv in &bases[i] {
                for m in &monos {
                    ideal.push(inv.mul(&Poly::monomial(m.clone(), Q::one())));
                }
            }
        }
        let full = poly::dim_exact_degree(r, k as i64) as usize;
        coinvariant_dims.push(full - span_basis(&ideal, r, k as u32).len());
    }
    let coinvariant_dimension = coinvariant_dims.iter().sum();

    Ok(InvariantReport {
        order: group.order(),
        num_reflections: group.num_reflections(),
        applicable: group.is_reflection_group(),
        molien,
        invariant_dims,
        molien_matches_reynolds,
        fundamental_degrees,
        coinvariant_dims,
        coinvariant_dimension,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineWeyl;
    use crate::rational::RationalVector;
    use crate::rootdata::Isogeny;

    fn weyl(label: &str) -> FiniteReflectionGroup {
        let aw = AffineWeyl::from_label(label, Isogeny::Adjoint).unwrap();
        FiniteReflectionGroup::weyl(&aw).unwrap()
    }

    fn ints(v: &[Q]) -> Vec<i64> {
        v.iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn molien_a1_and_a2() {
        assert_eq!(ints(&molien_series(&weyl("A1"), 6)), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(ints(&molien_series(&weyl("A2"), 6)), vec![1, 0, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn trivial_group_molien_is_binomial() {
        let aw = AffineWeyl::from_label("A2", Isogeny::Adjoint).unwrap();
        let x = RationalVector(vec![crate::rational::qf(1, 5), crate::rational::qf(1, 7)]);
        let g = FiniteReflectionGroup::new(&aw, x, vec![aw.identity()]).unwrap();
        assert_eq!(ints(&molien_series(&g, 4)), vec![1, 2, 3, 4, 5]);
        let rep = cst_check(&g, 4).unwrap();
        assert_eq!(rep.coinvariant_dimension, 1);
        assert_eq!(rep.fundamental_degrees, vec![1, 1]);
        assert!(rep.passed());
    }

    #[test]
    fn cst_on_weyl_groups() {
        for (label, degrees, order) in
            [("A1", vec![2], 2), ("A2", vec![2, 3], 6), ("B2", vec![2, 4], 8), ("G2", vec![2, 6], 12)]
        {
            let rep = cst_check(&weyl(label), 8).unwrap();
            assert_eq!(rep.fundamental_degrees, degrees, "{label}");
            assert_eq!(rep.coinvariant_dimension, order, "{label}");
            assert!(rep.passed(), "{label}");
        }
    }

    #[test]
    fn reynolds_is_idempotent() {
        let g = weyl("B2");
        let f = Poly::var(2, 0).pow(2).mul(&Poly::var(2, 1)).add(&Poly::var(2, 1).pow(3));
        let r = reynolds(&g, &f);
        assert_eq!(reynolds(&g, &r), r);
    }
}
