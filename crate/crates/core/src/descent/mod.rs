//! Finite reflection groups acting on the dual Cartan, semilinear
//! equivariant modules over its polynomial functions, and the two
//! membership tests: trivial (derived) isotropy and descent along the
//! quotient by a finite parabolic subgroup.
//!
//! Convention: `A_γ` is the matrix of `γ` on generators, acting on a
//! coefficient vector `v` by `γ·v = A_γ · (v ∘ γ⁻¹)`. Then
//! `A_{γδ} = A_γ · ᵞA_δ` where `ᵞP` substitutes `γ⁻¹` into every entry.

mod family;
mod invariants;

pub use family::*;
pub use invariants::*;

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{AffineElement, AffineWeyl, StabilizerCertificate};
use crate::error::{Error, Result};
use crate::gkm::{GraphLocus, HbarMode};
use crate::linalg::{self, IMat};
use crate::poly::{self, Poly, PolyMatrix, PolyVec};
use crate::rational::{q, RationalVector, Q};

/// A finite group of affine maps fixing `center`, with its reflections.
#[derive(Clone, Debug)]
pub struct FiniteReflectionGroup {
    rank: usize,
    pub center: RationalVector,
    pub elements: Vec<AffineElement>,
    pub names: Vec<String>,
    /// Indices of the elements with a fixed hyperplane.
    pub reflections: Vec<usize>,
    identity: usize,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// `u ↦ γ⁻¹(u)` per element, for twisting.
    pullback: Vec<Vec<Poly>>,
    /// Parametrization of the fixed locus per element.
    fixed: Vec<Vec<Poly>>,
}

fn fixed_parametrization(rank: usize, center: &RationalVector, m: &IMat) -> Vec<Poly> {
    let rows: Vec<Vec<Q>> = (0..rank).map(|i| (0..rank).map(|j| q(m[i][j] - i64::from(i == j))).collect()).collect();
    let kernel = linalg::nullspace(&rows, rank);
    let k = kernel.len();
    (0..rank)
        .map(|i| {
            let mut p = Poly::constant(k, center.0[i].clone());
            for (l, b) in kernel.iter().enumerate() {
                if !b[i].is_zero() {
                    p = p.add(&Poly::var(k, l).scale(&b[i]));
                }
            }
            p
        })
        .collect()
}

impl FiniteReflectionGroup {
    /// The group on `elements`, which must be closed and fix `center`.
    pub fn new(aw: &AffineWeyl, center: RationalVector, elements: Vec<AffineElement>) -> Result<Self> {
        let rank = aw.rank();
        let index: HashMap<&AffineElement, usize> = elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let one = Q::one();
        for g in &elements {
            if aw.act(g, &center, &one) != center {
                return Err(Error::InvalidModule(format!("{} does not fix the center", aw.format(g))));
            }
        }
        let identity =
            *index.get(&aw.identity()).ok_or_else(|| Error::InvalidModule("group lacks the identity".into()))?;
        let mut table = vec![vec![0; elements.len()]; elements.len()];
        for (a, ga) in elements.iter().enumerate() {
            for (b, gb) in elements.iter().enumerate() {
                let c = aw.compose(ga, gb)?;
                table[a][b] = *index.get(&c).ok_or_else(|| Error::InvalidModule("element set is not closed".into()))?;
            }
        }
        let inverse =
            (0..elements.len()).map(|a| table[a].iter().position(|&c| c == identity).expect("finite group")).collect();
        let reflections =
            elements.iter().enumerate().filter(|(_, g)| aw.as_reflection(g).is_some()).map(|(i, _)| i).collect();
        let pullback =
            elements.iter().map(|g| GraphLocus { element: aw.inv(g) }.target(rank, HbarMode::SetToOne)).collect();
        let fixed = elements.iter().map(|g| fixed_parametrization(rank, &center, &g.finite)).collect();
        let names = elements.iter().map(|g| aw.format(g)).collect();
        Ok(FiniteReflectionGroup {
            rank,
            center,
            elements,
            names,
            reflections,
            identity,
            table,
            inverse,
            pullback,
            fixed,
        })
    }

    /// `Γ^x` from a certificate (real points; the imaginary part is already accounted for).
    pub fn from_certificate(aw: &AffineWeyl, cert: &StabilizerCertificate) -> Result<Self> {
        Self::new(aw, cert.re.clone(), cert.elements.clone())
    }

    /// The finite Weyl group at the origin.
    pub fn weyl(aw: &AffineWeyl) -> Result<Self> {
        let elements = aw.weyl().iter().map(|w| aw.finite(w)).collect();
        Self::new(aw, RationalVector::zero(aw.rank()), elements)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn linear(&self, a: usize) -> &IMat {
        &self.elements[a].finite
    }

    /// `f ∘ γ⁻¹`.
    pub fn twist(&self, a: usize, f: &Poly) -> Poly {
        f.substitute(&self.pullback[a])
    }

    pub fn twist_matrix(&self, a: usize, m: &PolyMatrix) -> PolyMatrix {
        m.map(|p| self.twist(a, p))
    }

    /// Restriction of `f` to the fixed locus of element `a`.
    pub fn restrict_to_fixed(&self, a: usize, f: &Poly) -> Poly {
        f.substitute(&self.fixed[a])
    }

    pub fn fixed_dimension(&self, a: usize) -> usize {
        self.fixed[a].first().map_or(0, Poly::nvars)
    }

    /// Generated by its reflections.
    pub fn is_reflection_group(&self) -> bool {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(a) = stack.pop() {
            for &r in &self.reflections {
                let b = self.mul(a, r);
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Number of reflections, the top degree of the coinvariant algebra.
    pub fn num_reflections(&self) -> usize {
        self.reflections.len()
    }
}

/// A free graded module `⊕ O(V)·e_j` with a semilinear action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeEquivariant {
    pub degrees: Vec<i64>,
    /// `A_γ`, indexed like the group's elements.
    pub actions: Vec<PolyMatrix>,
}

impl FreeEquivariant {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    /// `A_γ = χ(γ)·I`.
    pub fn from_character(group: &FiniteReflectionGroup, degrees: Vec<i64>, chi: &[Q]) -> Self {
        let n = degrees.len();
        let actions = chi
            .iter()
            .map(|c| {
                let mut m = PolyMatrix::identity(n, group.rank());
                for p in m.entries.iter_mut() {
                    *p = p.scale(c);
                }
                m
            })
            .collect();
        FreeEquivariant { degrees, actions }
    }

    /// `γ·v = A_γ (v ∘ γ⁻¹)`.
    pub fn act(&self, group: &FiniteReflectionGroup, a: usize, v: &[Poly]) -> PolyVec {
        let tv: PolyVec = v.iter().map(|p| group.twist(a, p)).collect();
        self.actions[a].apply(&tv)
    }

    /// Identity at `e` and the cocycle identity for every pair.
    pub fn validate(&self, group: &FiniteReflectionGroup) -> Result<()> {
        let n = self.rank();
        if self.actions.len() != group.order() {
            return Err(Error::InvalidModule(format!(
                "{} action matrices for a group of order {}",
                self.actions.len(),
                group.order()
            )));
        }
        if self.actions.iter().any(|m| m.rows != n || m.cols != n) {
            return Err(Error::InvalidModule("action matrix has the wrong shape".into()));
        }
        if n == 0 {
            return Ok(());
        }
        if self.actions[group.identity()] != PolyMatrix::identity(n, group.rank()) {
            return Err(Error::InvalidModule("A_e is not the identity".into()));
        }
        for a in 0..group.order() {
            for b in 0..group.order() {
                let lhs = &self.actions[group.mul(a, b)];
                let rhs = self.actions[a].mul(&group.twist_matrix(a, &self.actions[b]));
                if *lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "cocycle fails for ({}, {})",
                        group.names[a], group.names[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Fiber at the center: `A_γ(x)` as rational matrices.
    pub fn fiber_action(&self, group: &FiniteReflectionGroup, a: usize) -> Vec<Vec<Q>> {
        let x = &group.center.0;
        let n = self.rank();
        (0..n).map(|i| (0..n).map(|j| self.actions[a].get(i, j).eval(x)).collect()).collect()
    }
}

/// A module given either as free, or as the cokernel of the first map of a
/// finite free equivariant resolution `F_k → … → F_1 → F_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivariantModule {
    Free(FreeEquivariant),
    Resolved {
        terms: Vec<FreeEquivariant>,
        /// `d_i : F_i → F_{i−1}`, columns are images of generators.
        differentials: Vec<PolyMatrix>,
    },
    /// A quotient with no resolution attached.
    Unresolved {
        free: FreeEquivariant,
        relations: PolyMatrix,
    },
}

impl EquivariantModule {
    pub fn validate(&self, group: &FiniteReflectionGroup) -> Result<()> {
        match self {
            EquivariantModule::Free(f) => f.validate(group),
            EquivariantModule::Unresolved { free, .. } => free.validate(group),
            EquivariantModule::Resolved { terms, differentials } => {
                if differentials.len() + 1 != terms.len() {
                    return Err(Error::InvalidModule("need one differential per positive term".into()));
                }
                for t in terms {
                    t.validate(group)?;
                }
                for (i, d) in differentials.iter().enumerate() {
                    let (src, tgt) = (&terms[i + 1], &terms[i]);
                    if d.rows != tgt.rank() || d.cols != src.rank() {
                        return Err(Error::InvalidModule(format!("differential {} has the wrong shape", i + 1)));
                    }
                    for a in 0..group.order() {
                        let lhs = d.mul(&src.actions[a]);
                        let rhs = tgt.actions[a].mul(&group.twist_matrix(a, d));
                        if lhs != rhs {
                            return Err(Error::InvalidModule(format!(
                                "differential {} is not equivariant for {}",
                                i + 1,
                                group.names[a]
                            )));
                        }
                    }
                }
                for w in differentials.windows(2) {
                    if w[0].rows > 0 && w[1].cols > 0 && !w[0].mul(&w[1]).is_zero() {
                        return Err(Error::InvalidModule("differentials do not compose to zero".into()));
                    }
                }
                Ok(())
            }
        }
    }

    /// Flat terms to be tested: the module itself, or every resolution term.
    pub fn flat_terms(&self) -> Result<Vec<&FreeEquivariant>> {
        match self {
            EquivariantModule::Free(f) => Ok(vec![f]),
            EquivariantModule::Resolved { terms, .. } => Ok(terms.iter().collect()),
            EquivariantModule::Unresolved { .. } => Err(Error::NotFlat),
        }
    }

    pub fn max_generator_degree(&self) -> i64 {
        let terms: Vec<&FreeEquivariant> = match self {
            EquivariantModule::Free(f) => vec![f],
            EquivariantModule::Resolved { terms, .. } => terms.iter().collect(),
            EquivariantModule::Unresolved { free, .. } => vec![free],
        };
        terms.iter().flat_map(|t| t.degrees.iter().copied()).max().unwrap_or(0)
    }
}

/// Where a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// Resolution term (0 for free modules).
    pub term: usize,
    pub element: String,
    /// For descent: the element `γ` whose component is compared along the edge.
    pub along: Option<String>,
    pub generator: usize,
    pub degree: i64,
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "term {} element {}", self.term, self.element)?;
        if let Some(a) = &self.along {
            write!(f, " along {a}")?;
        }
        write!(f, " generator {} degree {}", self.generator, self.degree)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fail(w: Witness) -> Self {
        Verdict { holds: false, witness: Some(w) }
    }
}

/// Default degree bound: reflections + top generator degree + 2.
pub fn default_degree(group: &FiniteReflectionGroup, module: &EquivariantModule) -> i64 {
    group.num_reflections() as i64 + module.max_generator_degree() + 2
}

fn monomials_between(rank: usize, max: i64) -> Vec<Poly> {
    if max < 0 {
        return Vec::new();
    }
    poly::monomials_up_to(rank, max as u32).into_iter().map(|e| Poly::monomial(e, Q::one())).collect()
}

fn basis_vector(n: usize, j: usize, f: &Poly) -> PolyVec {
    let mut v = vec![Poly::zero(f.nvars()); n];
    v[j] = f.clone();
    v
}

fn isotropy_free(group: &FiniteReflectionGroup, m: &FreeEquivariant, d: i64, term: usize) -> Option<Witness> {
    let n = m.rank();
    for a in 0..group.order() {
        if a == group.identity() {
            continue;
        }
        for j in 0..n {
            for f in monomials_between(group.rank(), d - m.degrees[j]) {
                let v = basis_vector(n, j, &f);
                let moved = m.act(group, a, &v);
                let vanishes = moved.iter().zip(&v).all(|(p, q0)| group.restrict_to_fixed(a, &p.sub(q0)).is_zero());
                if !vanishes {
                    return Some(Witness {
                        term,
                        element: group.names[a].clone(),
                        along: None,
                        generator: j,
                        degree: m.degrees[j] + i64::from(f.degree().unwrap_or(0)),
                    });
                }
            }
        }
    }
    None
}

/// `(A_γ − id)(M) ⊆ I_{fix(γ)}·M` for every `γ`, through degree `d`.
pub fn isotropy_trivial(module: &EquivariantModule, group: &FiniteReflectionGroup, d: i64) -> Result<Verdict> {
    match module {
        EquivariantModule::Free(f) => Ok(isotropy_free(group, f, d, 0).map_or_else(Verdict::pass, Verdict::fail)),
        _ => Err(Error::NotFlat),
    }
}

/// Every term of the module (or its resolution) has trivial isotropy.
pub fn derived_isotropy_trivial(module: &EquivariantModule, group: &FiniteReflectionGroup, d: i64) -> Result<Verdict> {
    for (i, t) in module.flat_terms()?.into_iter().enumerate() {
        if let Some(w) = isotropy_free(group, t, d, i) {
            return Ok(Verdict::fail(w));
        }
    }
    Ok(Verdict::pass())
}

fn descends_free(group: &FiniteReflectionGroup, m: &FreeEquivariant, d: i64, term: usize) -> Option<Witness> {
    let n = m.rank();
    for &s in &group.reflections {
        for g in 0..group.order() {
            let ginv = group.inverse(g);
            for j in 0..n {
                for f in monomials_between(group.rank(), d - m.degrees[j]) {
                    // components at γ and γs of the coaction of f·e_j
                    let at_g = m.act(group, ginv, &basis_vector(n, j, &f));
                    let at_gs = m.act(group, s, &at_g);
                    let congruent =
                        at_gs.iter().zip(&at_g).all(|(p, q0)| group.restrict_to_fixed(s, &p.sub(q0)).is_zero());
                    if !congruent {
                        return Some(Witness {
                            term,
                            element: group.names[s].clone(),
                            along: Some(group.names[g].clone()),
                            generator: j,
                            degree: m.degrees[j] + i64::from(f.degree().unwrap_or(0)),
                        });
                    }
                }
            }
        }
    }
    None
}

/// Edge congruences of the comodule tuple on the fiber-product groupoid,
/// for every reflection `s` and every `γ`, through degree `d`; every
/// resolution term must pass.
pub fn descends(module: &EquivariantModule, group: &FiniteReflectionGroup, d: i64) -> Result<Verdict> {
    for (i, t) in module.flat_terms()?.into_iter().enumerate() {
        if let Some(w) = descends_free(group, t, d, i) {
            return Ok(Verdict::fail(w));
        }
    }
    Ok(Verdict::pass())
}

/// Whether the stabilizer acts trivially on the fiber `M ⊗ k(x)`.
pub fn naive_isotropy_trivial(module: &EquivariantModule, group: &FiniteReflectionGroup) -> Result<bool> {
    let x = &group.center.0;
    let (f0, image): (&FreeEquivariant, Vec<Vec<Q>>) = match module {
        EquivariantModule::Free(f) => (f, Vec::new()),
        EquivariantModule::Resolved { terms, differentials } => {
            let img = differentials.first().map_or_else(Vec::new, |d| {
                // columns of d_1(x)
                (0..d.cols).map(|j| (0..d.rows).map(|i| d.get(i, j).eval(x)).collect()).collect()
            });
            (&terms[0], img)
        }
        EquivariantModule::Unresolved { free, relations } => {
            let d = relations;
            let img = (0..d.cols).map(|j| (0..d.rows).map(|i| d.get(i, j).eval(x)).collect()).collect();
            (free, img)
        }
    };
    let n = f0.rank();
    let base_rank = linalg::rank(&image, n);
    for a in 0..group.order() {
        let fa = f0.fiber_action(group, a);
        for j in 0..n {
            let col: Vec<Q> = (0..n).map(|i| if i == j { &fa[i][j] - Q::one() } else { fa[i][j].clone() }).collect();
            let mut rows = image.clone();
            rows.push(col);
            if linalg::rank(&rows, n) != base_rank {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceRow {
    pub point: RationalVector,
    pub stabilizer_order: usize,
    pub degree: i64,
    pub descends: bool,
    pub derived_isotropy: bool,
    pub naive_isotropy: bool,
    pub agree: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub module: String,
    pub type_label: String,
    pub rows: Vec<EquivalenceRow>,
}

impl EquivalenceReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

/// Descent and derived isotropy at one point.
pub fn check_at_point(
    aw: &AffineWeyl,
    spec: &ModuleSpec,
    x: &RationalVector,
    degree: Option<i64>,
) -> Result<EquivalenceRow> {
    let cert = aw.stabilizer(x, &RationalVector::zero(aw.rank()))?;
    let group = FiniteReflectionGroup::from_certificate(aw, &cert)?;
    let module = spec.at_point(aw, &group)?;
    module.validate(&group)?;
    let d = degree.unwrap_or_else(|| default_degree(&group, &module));
    let desc = descends(&module, &group, d)?;
    let iso = derived_isotropy_trivial(&module, &group, d)?;
    let naive = naive_isotropy_trivial(&module, &group)?;
    Ok(EquivalenceRow {
        point: x.clone(),
        stabilizer_order: group.order(),
        degree: d,
        descends: desc.holds,
        derived_isotropy: iso.holds,
        naive_isotropy: naive,
        agree: desc.holds == iso.holds,
        witness: desc.witness.or(iso.witness),
    })
}

/// The origin, an interior point of `A₀`, and the centroid of its affine wall.
pub fn default_points(aw: &AffineWeyl) -> Vec<RationalVector> {
    let d = aw.datum();
    vec![RationalVector::zero(aw.rank()), d.alcove_interior_point(), d.affine_wall_midpoint()]
}

/// Both verdicts at every point of `points`.
pub fn equivalence_witness(
    aw: &AffineWeyl,
    spec: &ModuleSpec,
    points: &[RationalVector],
    degree: Option<i64>,
) -> Result<EquivalenceReport> {
    let rows =
        crate::par::map(points, |x| check_at_point(aw, spec, x, degree)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(EquivalenceReport { module: spec.name().to_string(), type_label: aw.datum().label().to_string(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;

    fn s2() -> (AffineWeyl, FiniteReflectionGroup) {
        let aw = AffineWeyl::from_label("A1", Isogeny::Adjoint).unwrap();
        let g = FiniteReflectionGroup::weyl(&aw).unwrap();
        (aw, g)
    }

    fn character(g: &FiniteReflectionGroup, sign: bool) -> EquivariantModule {
        let c = if sign { Character::Det } else { Character::Trivial };
        let chi: Vec<Q> = g.elements.iter().map(|e| c.value(e)).collect();
        EquivariantModule::Free(FreeEquivariant::from_character(g, vec![0], &chi))
    }

    #[test]
    fn structure_sheaf_and_sign() {
        let (_, g) = s2();
        assert!(g.is_reflection_group());
        let o = character(&g, false);
        o.validate(&g).unwrap();
        assert!(isotropy_trivial(&o, &g, 4).unwrap().holds);
        assert!(descends(&o, &g, 4).unwrap().holds);
        let sign = character(&g, true);
        let v = isotropy_trivial(&sign, &g, 4).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness.unwrap().degree, 0);
        assert!(!descends(&sign, &g, 4).unwrap().holds);
    }

    #[test]
    fn cocycle_rejects_perturbation() {
        let (_, g) = s2();
        let EquivariantModule::Free(mut m) = character(&g, false) else { unreachable!() };
        let s = 1 - g.identity();
        m.actions[s].set(0, 0, Poly::constant(1, q(2)));
        assert!(m.validate(&g).is_err());
    }

    #[test]
    fn unresolved_is_not_flat() {
        let (_, g) = s2();
        let EquivariantModule::Free(f) = character(&g, false) else { unreachable!() };
        let m = EquivariantModule::Unresolved { free: f, relations: PolyMatrix::identity(1, 1) };
        assert_eq!(descends(&m, &g, 2), Err(Error::NotFlat));
        assert_eq!(isotropy_trivial(&m, &g, 2), Err(Error::NotFlat));
    }
}
