//! Independent reimplementations checked against the library.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use affine_descent::affine::{AffineElement, AffineWeyl};
use affine_descent::descent::{linear_twist, molien_series, FiniteReflectionGroup};
use affine_descent::gkm::MomentGraph;
use affine_descent::linalg::{self, IMat};
use affine_descent::poly::{self, Poly};
use affine_descent::rational::{q, qf, RationalVector, Q};
use affine_descent::rootdata::Isogeny;
use num_traits::One;

fn aw(label: &str, iso: Isogeny) -> AffineWeyl {
    AffineWeyl::from_label(label, iso).unwrap()
}

fn rank_int(m: &IMat) -> usize {
    let rows: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&c| q(c)).collect()).collect();
    linalg::rank(&rows, m.first().map_or(0, Vec::len))
}

/// `x ↦ Mx + λ` is an affine reflection iff `M² = 1`, `M − 1` has rank one and `Mλ = −λ`.
fn is_affine_reflection(g: &AffineElement) -> bool {
    let m = &g.finite;
    let n = m.len();
    let minus_one: IMat = (0..n).map(|i| (0..n).map(|j| m[i][j] - i64::from(i == j)).collect()).collect();
    let neg: Vec<i64> = g.translation.iter().map(|x| -x).collect();
    linalg::is_identity(&linalg::mat_mul(m, m))
        && rank_int(&minus_one) == 1
        && linalg::mat_vec(m, &g.translation) == neg
}

#[test]
fn moment_graph_edges_match_reflection_pairs() {
    for (label, word) in [("A1", "s0s1s0"), ("A2", "s0s1s2"), ("A2", "s1s2s1s0"), ("B2", "s0s1s2s1"), ("G2", "s0s2s1")]
    {
        let a = aw(label, Isogeny::Adjoint);
        let g = MomentGraph::interval(&a, &a.parse(word).unwrap()).unwrap();
        let mut expected = BTreeSet::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let delta = a.compose(&a.invert(&g.vertices[i]).unwrap(), &g.vertices[j]).unwrap();
                if is_affine_reflection(&delta) {
                    expected.insert((i, j));
                }
            }
        }
        let got: BTreeSet<(usize, usize)> = g.edges.iter().map(|e| (e.source, e.target)).collect();
        assert_eq!(got, expected, "{label} {word}");
    }
}

/// Affine reflections `s_{α,k}` with `|k| ≤ bound` lying in the group.
fn reflections(a: &AffineWeyl, bound: i64) -> Vec<AffineElement> {
    let mut out = Vec::new();
    for (k, _) in a.datum().positive_roots() {
        for level in -bound..=bound {
            if let Ok(r) = a.reflection(k, q(level)) {
                if a.in_affine_weyl(&r.element) {
                    out.push(r.element);
                }
            }
        }
    }
    out
}

/// `{v ≤ w}` as everything reachable from `w` by length-decreasing reflections.
fn bruhat_by_chains(a: &AffineWeyl, w: &AffineElement) -> BTreeSet<AffineElement> {
    let refl = reflections(a, a.length(w) as i64 + 2);
    let mut seen = BTreeSet::from([w.clone()]);
    let mut stack = vec![w.clone()];
    while let Some(u) = stack.pop() {
        let lu = a.length(&u);
        for t in &refl {
            let v = a.compose(&u, t).unwrap();
            if a.length(&v) < lu && seen.insert(v.clone()) {
                stack.push(v);
            }
        }
    }
    seen
}

#[test]
fn bruhat_intervals_match_chain_definition() {
    for (label, iso, word) in [
        ("A1", Isogeny::Adjoint, "s0s1s0s1"),
        ("A2", Isogeny::Adjoint, "s0s1s2s0"),
        ("B2", Isogeny::Adjoint, "s2s1s0s1"),
        ("G2", Isogeny::Adjoint, "s1s2s1s0"),
        ("A2", Isogeny::SimplyConnected, "s1s0s2"),
    ] {
        let a = aw(label, iso);
        let w = a.parse(word).unwrap();
        assert_eq!(a.length(&w), a.parse_word(word).unwrap().len(), "{label} {word} reduced");
        let got: BTreeSet<AffineElement> = a.bruhat_interval(&w).unwrap().into_iter().collect();
        assert_eq!(got, bruhat_by_chains(&a, &w), "{label} {word}");
    }
}

/// Invariant dimension in degree `k` as the common fixed space of all elements.
fn invariant_dim(group: &FiniteReflectionGroup, k: u32) -> usize {
    let monos = poly::monomials_of_degree(group.rank(), k);
    let index = poly::monomial_index(&monos);
    let nb = monos.len();
    let mut rows = Vec::new();
    for a in 0..group.order() {
        let cols: Vec<Vec<Q>> = monos
            .iter()
            .map(|m| linear_twist(group, a, &Poly::monomial(m.clone(), Q::one())).coefficients_in(&index, nb).unwrap())
            .collect();
        for i in 0..nb {
            rows.push((0..nb).map(|j| if i == j { &cols[j][i] - Q::one() } else { cols[j][i].clone() }).collect());
        }
    }
    linalg::nullspace(&rows, nb).len()
}

#[test]
fn molien_counts_fixed_polynomials() {
    let points: [(&str, Vec<Q>); 5] = [
        ("A2", vec![q(0), q(0)]),
        ("A2", vec![qf(1, 2), q(0)]),
        ("B2", vec![q(0), q(0)]),
        ("B2", vec![qf(1, 2), qf(1, 2)]),
        ("G2", vec![q(0), q(0)]),
    ];
    for (label, x) in points {
        let a = aw(label, Isogeny::Adjoint);
        let x = RationalVector(x);
        let cert = a.stabilizer(&x, &RationalVector::zero(2)).unwrap();
        let group = FiniteReflectionGroup::from_certificate(&a, &cert).unwrap();
        let molien = molien_series(&group, 7);
        for (k, m) in molien.iter().enumerate() {
            assert_eq!(*m, q(invariant_dim(&group, k as u32) as i64), "{label} {x} degree {k}");
        }
    }
}

#[test]
fn stabilizer_orders_match_enumeration() {
    for label in ["A1", "A2", "B2", "G2"] {
        let a = aw(label, Isogeny::Adjoint);
        let r = a.rank();
        for den in 1..=6 {
            for num in -den..=2 * den {
                let x = RationalVector((0..r).map(|i| qf(num + i as i64, den)).collect());
                let cert = a.stabilizer(&x, &RationalVector::zero(r)).unwrap();
                let count = a
                    .weyl()
                    .iter()
                    .filter(|w| {
                        let d = &x - &RationalVector(linalg::mat_vec_q(&w.matrix, &x.0));
                        d.0.iter().all(Q::is_integer)
                            && a.datum().in_root_lattice(
                                &d.0.iter().map(|c| c.to_integer().try_into().unwrap()).collect::<Vec<i64>>(),
                            )
                    })
                    .count();
                assert_eq!(cert.order(), count, "{label} {x}");
            }
        }
    }
}
