//! Module families read from JSON, their germs at a point, and
//! coinduction to the extended affine Weyl group.

use std::collections::BTreeMap;
use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{EquivariantModule, FiniteReflectionGroup, FreeEquivariant};
use crate::affine::{AffineElement, AffineWeyl};
use crate::error::{Error, Result};
use crate::gkm::{GraphLocus, HbarMode};
use crate::linalg::{self, IMat};
use crate::poly::{Poly, PolyMatrix, SparseTerm};
use crate::rational::{q, RationalVector, Q};
use crate::rootdata::Pi1Class;

pub type SparseMatrix = Vec<Vec<Vec<SparseTerm>>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Character {
    Trivial,
    Det,
}

impl Character {
    pub fn value(self, g: &AffineElement) -> Q {
        match self {
            Character::Trivial => Q::one(),
            Character::Det => q(linalg::det(&g.finite)),
        }
    }
}

/// Higher term of an explicit resolution: generators, actions of the
/// affine simple reflections, and the map to the previous term.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolutionBlock {
    pub degrees: Vec<i64>,
    pub actions: BTreeMap<String, SparseMatrix>,
    pub differential: SparseMatrix,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    /// Rank one with `A_γ = χ(γ)`; the structure sheaf for the trivial character.
    Character {
        name: String,
        character: Character,
        #[serde(default)]
        degree: i64,
    },
    /// `O ⊗ k[Γ^x]` at each point.
    Regular { name: String },
    /// Structure sheaf of the orbit of `support`, twisted by a character at each point.
    Skyscraper {
        name: String,
        #[serde(default = "origin")]
        support: String,
        character: Character,
    },
    /// `A_γ = [[1, f∘γ⁻¹ − χ(γ)f], [0, χ(γ)]]`.
    Extension { name: String, function: Vec<SparseTerm>, character: Character },
    /// Actions of the affine simple reflections, keyed `s0, s1, …`.
    Global {
        name: String,
        degrees: Vec<i64>,
        actions: BTreeMap<String, SparseMatrix>,
        #[serde(default)]
        resolution: Vec<ResolutionBlock>,
    },
    /// Cokernel of `relations`, resolved by constant equivariant lifts.
    Presented {
        name: String,
        degrees: Vec<i64>,
        actions: BTreeMap<String, SparseMatrix>,
        relations: SparseMatrix,
        relation_degrees: Vec<i64>,
    },
}

/// Position of the first backquoted field of a message, for errors raised
/// after tag dispatch has dropped the location.
fn locate_field(text: &str, msg: &str) -> (usize, usize) {
    let field = msg.split('`').nth(1).map(|f| format!("\"{f}\""));
    let Some(offset) = field.and_then(|f| text.find(&f)) else { return (1, 1) };
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = offset - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

fn origin() -> String {
    "0".into()
}

/// Actions of the affine simple reflections, extended along reduced words.
struct WordAction {
    degrees: Vec<i64>,
    simple: Vec<PolyMatrix>,
}

fn pullback(aw: &AffineWeyl, g: &AffineElement) -> Vec<Poly> {
    GraphLocus { element: aw.inv(g) }.target(aw.rank(), HbarMode::SetToOne)
}

fn parse_matrix(rank: usize, n: usize, m: &SparseMatrix, what: &str) -> Result<PolyMatrix> {
    let p = PolyMatrix::from_sparse(rank, m)?;
    if m.len() != n || p.rows != n || p.cols != n {
        return Err(Error::InvalidModule(format!("{what}: expected a {n}x{n} matrix")));
    }
    Ok(p)
}

impl WordAction {
    fn new(aw: &AffineWeyl, degrees: &[i64], actions: &BTreeMap<String, SparseMatrix>) -> Result<Self> {
        let names: Vec<String> = (0..aw.num_simple()).map(|j| aw.simple_name(j)).collect();
        if let Some(k) = actions.keys().find(|k| !names.contains(k)) {
            return Err(Error::InvalidModule(format!("unknown simple reflection '{k}'")));
        }
        let simple = names
            .iter()
            .map(|nm| {
                let m = actions.get(nm).ok_or_else(|| Error::InvalidModule(format!("missing action for '{nm}'")))?;
                parse_matrix(aw.rank(), degrees.len(), m, nm)
            })
            .collect::<Result<_>>()?;
        Ok(WordAction { degrees: degrees.to_vec(), simple })
    }

    /// `A_γ` for `γ` in the non-extended group.
    fn action(&self, aw: &AffineWeyl, g: &AffineElement) -> Result<PolyMatrix> {
        let (alcove, omega) = aw.decompose(g)?;
        if !omega.is_identity() {
            return Err(Error::Restriction(format!("{} has nonzero length-zero part", aw.format(g))));
        }
        let n = self.degrees.len();
        let mut a = PolyMatrix::identity(n, aw.rank());
        let mut cur = aw.identity();
        for &j in &alcove.word {
            let images = pullback(aw, &cur);
            a = a.mul(&self.simple[j].map(|p| p.substitute(&images)));
            cur = aw.mul(&cur, &aw.simple_reflection(j).element);
        }
        Ok(a)
    }

    fn at_group(&self, aw: &AffineWeyl, group: &FiniteReflectionGroup) -> Result<FreeEquivariant> {
        let actions = group.elements.iter().map(|g| self.action(aw, g)).collect::<Result<_>>()?;
        Ok(FreeEquivariant { degrees: self.degrees.clone(), actions })
    }
}

/// Sorted `j`-subsets of `0..r`.
fn subsets(r: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..(1 << r))
        .filter(|m| m.count_ones() as usize == j)
        .map(|m| (0..r).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    out.sort();
    out
}

/// `Λʲ N` in the subset basis.
fn exterior_power(n: &IMat, j: usize) -> Vec<Vec<Q>> {
    let basis = subsets(n.len(), j);
    basis
        .iter()
        .map(|s| {
            basis
                .iter()
                .map(|t| {
                    let sub: IMat = s.iter().map(|&a| t.iter().map(|&b| n[a][b]).collect()).collect();
                    q(linalg::det(&sub))
                })
                .collect()
        })
        .collect()
}

/// Koszul complex on `y_i − x_i`, twisted by `χ`.
fn koszul(group: &FiniteReflectionGroup, chi: Character) -> Result<EquivariantModule> {
    let r = group.rank();
    let x = &group.center;
    let ell: Vec<Poly> = (0..r).map(|i| Poly::var(r, i).sub(&Poly::constant(r, x.0[i].clone()))).collect();
    let mut terms = Vec::new();
    for j in 0..=r {
        let actions = group
            .elements
            .iter()
            .enumerate()
            .map(|(a, g)| {
                let inv_t = linalg::transpose(group.linear(group.inverse(a)));
                let c = chi.value(g);
                let m: Vec<Vec<Q>> = exterior_power(&inv_t, j)
                    .into_iter()
                    .map(|row| row.into_iter().map(|v| v * &c).collect())
                    .collect();
                PolyMatrix::from_constants(&m, r)
            })
            .collect();
        terms.push(FreeEquivariant { degrees: vec![j as i64; subsets(r, j).len()], actions });
    }
    let mut differentials = Vec::new();
    for j in 1..=r {
        let src = subsets(r, j);
        let tgt = subsets(r, j - 1);
        let mut d = PolyMatrix::zero(tgt.len(), src.len(), r);
        for (col, s) in src.iter().enumerate() {
            for (k, &drop) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&v| v != drop).collect();
                let row = tgt.iter().position(|t| *t == rest).expect("face of a subset");
                let sign = if k % 2 == 0 { q(1) } else { q(-1) };
                d.set(row, col, ell[drop].scale(&sign));
            }
        }
        differentials.push(d);
    }
    Ok(EquivariantModule::Resolved { terms, differentials })
}

fn zero_module(group: &FiniteReflectionGroup) -> EquivariantModule {
    EquivariantModule::Free(FreeEquivariant {
        degrees: Vec::new(),
        actions: vec![PolyMatrix::zero(0, 0, group.rank()); group.order()],
    })
}

fn in_orbit(aw: &AffineWeyl, x: &RationalVector, p: &RationalVector) -> bool {
    aw.weyl().iter().any(|w| {
        let wp = linalg::mat_vec_q(&w.matrix, &p.0);
        let diff = RationalVector(x.0.iter().zip(&wp).map(|(a, b)| a - b).collect());
        aw.datum().in_root_lattice_q(&diff)
    })
}

/// Solves `D·X = B` for a constant matrix `X`.
fn constant_solve(d: &PolyMatrix, b: &PolyMatrix) -> Option<Vec<Vec<Q>>> {
    let c = d.cols;
    let k = b.cols;
    let mut monos: Vec<Vec<u32>> = Vec::new();
    for p in d.entries.iter().chain(&b.entries) {
        for (e, _) in p.terms() {
            if !monos.contains(e) {
                monos.push(e.clone());
            }
        }
    }
    // unknowns X[j][l] at column j*k + l, then the constant column
    let n = c * k;
    let mut rows = Vec::new();
    for i in 0..d.rows {
        for l in 0..k {
            for m in &monos {
                let mut row = vec![Q::zero(); n + 1];
                for j in 0..c {
                    row[j * k + l] = d.get(i, j).coeff(m);
                }
                row[n] = -b.get(i, l).coeff(m);
                rows.push(row);
            }
        }
    }
    let null = linalg::nullspace(&rows, n + 1);
    let v = null.iter().find(|v| !v[n].is_zero())?;
    let s = v[n].clone();
    Some((0..c).map(|j| (0..k).map(|l| &v[j * k + l] / &s).collect()).collect())
}

/// Two-term resolution `F_1 → F_0` of `coker(relations)`, with constant lifts.
pub fn resolve_presentation(
    group: &FiniteReflectionGroup,
    free: FreeEquivariant,
    relations: PolyMatrix,
    relation_degrees: Vec<i64>,
) -> Result<EquivariantModule> {
    let mut actions = Vec::new();
    for a in 0..group.order() {
        let rhs = free.actions[a].mul(&group.twist_matrix(a, &relations));
        let x = constant_solve(&relations, &rhs)
            .ok_or_else(|| Error::Restriction(format!("no constant equivariant lift for {}", group.names[a])))?;
        actions.push(PolyMatrix::from_constants(&x, group.rank()));
    }
    let f1 = FreeEquivariant { degrees: relation_degrees, actions };
    Ok(EquivariantModule::Resolved { terms: vec![free, f1], differentials: vec![relations] })
}

impl ModuleSpec {
    pub fn name(&self) -> &str {
        match self {
            ModuleSpec::Character { name, .. }
            | ModuleSpec::Regular { name }
            | ModuleSpec::Skyscraper { name, .. }
            | ModuleSpec::Extension { name, .. }
            | ModuleSpec::Global { name, .. }
            | ModuleSpec::Presented { name, .. } => name,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            let (line, column) = if e.line() > 0 { (e.line(), e.column()) } else { locate_field(text, &e.to_string()) };
            Error::Parse(format!("line {line} column {column}: {e}"))
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("specs serialize")
    }

    /// Whether the family defines `A_γ` for every element of the group.
    pub fn is_global(&self) -> bool {
        matches!(self, ModuleSpec::Character { .. } | ModuleSpec::Extension { .. } | ModuleSpec::Global { .. })
    }

    /// `A_γ` of the (first term of the) module for any `γ` in the group.
    pub fn action(&self, aw: &AffineWeyl, g: &AffineElement) -> Result<PolyMatrix> {
        let r = aw.rank();
        match self {
            ModuleSpec::Character { character, .. } => Ok(PolyMatrix::from_constants(&[vec![character.value(g)]], r)),
            ModuleSpec::Extension { function, character, .. } => {
                let f = Poly::from_sparse(r, function)?;
                let c = character.value(g);
                let mut m = PolyMatrix::identity(2, r);
                m.set(0, 1, f.substitute(&pullback(aw, g)).sub(&f.scale(&c)));
                m.set(1, 1, Poly::constant(r, c));
                Ok(m)
            }
            ModuleSpec::Global { degrees, actions, .. } => WordAction::new(aw, degrees, actions)?.action(aw, g),
            _ => Err(Error::PreconditionViolated(format!("{} is only defined pointwise", self.name()))),
        }
    }

    pub fn degrees(&self) -> Vec<i64> {
        match self {
            ModuleSpec::Character { degree, .. } => vec![*degree],
            ModuleSpec::Extension { .. } => vec![0, 0],
            ModuleSpec::Global { degrees, .. } | ModuleSpec::Presented { degrees, .. } => degrees.clone(),
            ModuleSpec::Regular { .. } | ModuleSpec::Skyscraper { .. } => Vec::new(),
        }
    }

    /// The germ of the module at the group's center, as a `Γ^x`-module.
    pub fn at_point(&self, aw: &AffineWeyl, group: &FiniteReflectionGroup) -> Result<EquivariantModule> {
        let r = aw.rank();
        match self {
            ModuleSpec::Character { .. } | ModuleSpec::Extension { .. } => {
                let actions = group.elements.iter().map(|g| self.action(aw, g)).collect::<Result<_>>()?;
                Ok(EquivariantModule::Free(FreeEquivariant { degrees: self.degrees(), actions }))
            }
            ModuleSpec::Regular { .. } => {
                let n = group.order();
                let actions = (0..n)
                    .map(|a| {
                        let mut m = PolyMatrix::zero(n, n, r);
                        for b in 0..n {
                            m.set(group.mul(a, b), b, Poly::one(r));
                        }
                        m
                    })
                    .collect();
                Ok(EquivariantModule::Free(FreeEquivariant { degrees: vec![0; n], actions }))
            }
            ModuleSpec::Skyscraper { support, character, .. } => {
                let p = RationalVector::parse(support, r)?;
                if in_orbit(aw, &group.center, &p) {
                    koszul(group, *character)
                } else {
                    Ok(zero_module(group))
                }
            }
            ModuleSpec::Global { degrees, actions, resolution, .. } => {
                let f0 = WordAction::new(aw, degrees, actions)?.at_group(aw, group)?;
                if resolution.is_empty() {
                    return Ok(EquivariantModule::Free(f0));
                }
                let mut terms = vec![f0];
                let mut differentials = Vec::new();
                for block in resolution {
                    let t = WordAction::new(aw, &block.degrees, &block.actions)?.at_group(aw, group)?;
                    let d = PolyMatrix::from_sparse(r, &block.differential)?;
                    terms.push(t);
                    differentials.push(d);
                }
                Ok(EquivariantModule::Resolved { terms, differentials })
            }
            ModuleSpec::Presented { degrees, actions, relations, relation_degrees, .. } => {
                let f0 = WordAction::new(aw, degrees, actions)?.at_group(aw, group)?;
                let d = PolyMatrix::from_sparse(r, relations)?;
                if d.rows != degrees.len() || d.cols != relation_degrees.len() {
                    return Err(Error::InvalidModule("relations have the wrong shape".into()));
                }
                resolve_presentation(group, f0, d, relation_degrees.clone())
            }
        }
    }
}

/// `Coind` from the affine Weyl group to the extended one, with basis
/// `e_{c,j}` indexed by `π₁` classes.
pub struct Coinduced<'a> {
    aw: &'a AffineWeyl,
    spec: &'a ModuleSpec,
    omegas: Vec<(Pi1Class, AffineElement)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoinductionReport {
    pub pi1_order: usize,
    pub base_rank: usize,
    pub rank: usize,
    pub elements_checked: usize,
    pub cocycle: bool,
    pub restriction_block_diagonal: bool,
    pub identity_block_matches: bool,
    pub permutation_commutes: bool,
}

impl CoinductionReport {
    pub fn passed(&self) -> bool {
        self.rank == self.pi1_order * self.base_rank
            && self.cocycle
            && self.restriction_block_diagonal
            && self.identity_block_matches
    }
}

impl<'a> Coinduced<'a> {
    pub fn new(aw: &'a AffineWeyl, spec: &'a ModuleSpec) -> Result<Self> {
        if !spec.is_global() {
            return Err(Error::PreconditionViolated(format!("{} is only defined pointwise", spec.name())));
        }
        let mut omegas = aw.length_zero_elements().to_vec();
        omegas.sort_by(|a, b| (!a.0.is_identity(), &a.0 .0).cmp(&(!b.0.is_identity(), &b.0 .0)));
        Ok(Coinduced { aw, spec, omegas })
    }

    pub fn classes(&self) -> usize {
        self.omegas.len()
    }

    fn class_index(&self, c: &Pi1Class) -> usize {
        self.omegas.iter().position(|(k, _)| k == c).expect("every class has a length-zero element")
    }

    /// Block matrix of `γ` in the extended group.
    pub fn action(&self, g: &AffineElement) -> Result<PolyMatrix> {
        let aw = self.aw;
        let d = aw.datum();
        let n = self.spec.degrees().len();
        let k = self.classes();
        let mut out = PolyMatrix::zero(n * k, n * k, aw.rank());
        for (c, (class, omega)) in self.omegas.iter().enumerate() {
            let target = d.pi1_add(&aw.pi1(g), class);
            let c2 = self.class_index(&target);
            let omega2 = &self.omegas[c2].1;
            let h = aw.mul(&aw.mul(&aw.inv(omega2), g), omega);
            let images = pullback(aw, omega2);
            let block = self.spec.action(aw, &h)?.map(|p| p.substitute(&images));
            for i in 0..n {
                for j in 0..n {
                    out.set(c2 * n + i, c * n + j, block.get(i, j).clone());
                }
            }
        }
        Ok(out)
    }

    /// Checks the coinduced action on all pairs from `sample`.
    pub fn check(&self, sample: &[AffineElement]) -> Result<CoinductionReport> {
        let aw = self.aw;
        let n = self.spec.degrees().len();
        let k = self.classes();
        let acts: Vec<PolyMatrix> = sample.iter().map(|g| self.action(g)).collect::<Result<_>>()?;
        let mut cocycle = true;
        for (a, ga) in sample.iter().enumerate() {
            let images = pullback(aw, ga);
            for (b, gb) in sample.iter().enumerate() {
                let lhs = self.action(&aw.mul(ga, gb))?;
                let rhs = acts[a].mul(&acts[b].map(|p| p.substitute(&images)));
                cocycle &= lhs == rhs;
            }
        }
        let mut block_diagonal = true;
        let mut identity_block = true;
        let mut commutes = true;
        for (g, m) in sample.iter().zip(&acts) {
            if !aw.in_affine_weyl(g) {
                continue;
            }
            let base = self.spec.action(aw, g)?;
            for c in 0..k {
                for c2 in 0..k {
                    for i in 0..n {
                        for j in 0..n {
                            let e = m.get(c2 * n + i, c * n + j);
                            if c != c2 && !e.is_zero() {
                                block_diagonal = false;
                            }
                            if c == 0 && c2 == 0 && e != base.get(i, j) {
                                identity_block = false;
                            }
                            if c == c2 && e != m.get(i, j) {
                                commutes = false;
                            }
                        }
                    }
                }
            }
        }
        Ok(CoinductionReport {
            pi1_order: k,
            base_rank: n,
            rank: n * k,
            elements_checked: sample.len(),
            cocycle,
            restriction_block_diagonal: block_diagonal,
            identity_block_matches: identity_block,
            permutation_commutes: commutes,
        })
    }
}

/// Affine simple reflections, length-zero elements and their pairwise products.
pub fn coinduction_sample(aw: &AffineWeyl) -> Vec<AffineElement> {
    let mut gens: Vec<AffineElement> = (0..aw.num_simple()).map(|j| aw.simple_reflection(j).element).collect();
    gens.extend(aw.length_zero_elements().iter().map(|(_, w)| w.clone()));
    let mut out = gens.clone();
    for a in &gens {
        for b in &gens {
            let p = aw.mul(a, b);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    aw.sort_elements(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::{derived_isotropy_trivial, descends, naive_isotropy_trivial};
    use crate::rootdata::Isogeny;

    fn aw(label: &str, iso: Isogeny) -> AffineWeyl {
        AffineWeyl::from_label(label, iso).unwrap()
    }

    fn group_at(aw: &AffineWeyl, x: &str) -> FiniteReflectionGroup {
        let x = RationalVector::parse(x, aw.rank()).unwrap();
        let cert = aw.stabilizer(&x, &RationalVector::zero(aw.rank())).unwrap();
        FiniteReflectionGroup::from_certificate(aw, &cert).unwrap()
    }

    fn sky(c: Character) -> ModuleSpec {
        ModuleSpec::Skyscraper { name: "sky".into(), support: "0".into(), character: c }
    }

    #[test]
    fn skyscraper_fails_derived_but_not_naive() {
        for label in ["A1", "A2"] {
            let a = aw(label, Isogeny::Adjoint);
            let g = group_at(&a, "0");
            for c in [Character::Trivial, Character::Det] {
                let m = sky(c).at_point(&a, &g).unwrap();
                m.validate(&g).unwrap();
                assert!(!descends(&m, &g, 4).unwrap().holds);
                assert!(!derived_isotropy_trivial(&m, &g, 4).unwrap().holds);
                assert_eq!(naive_isotropy_trivial(&m, &g).unwrap(), c == Character::Trivial);
            }
        }
    }

    #[test]
    fn skyscraper_vanishes_off_orbit() {
        let a = aw("A1", Isogeny::Adjoint);
        let g = group_at(&a, "1");
        let m = sky(Character::Trivial).at_point(&a, &g).unwrap();
        assert!(descends(&m, &g, 3).unwrap().holds);
        let g0 = group_at(&a, "2");
        assert!(matches!(sky(Character::Trivial).at_point(&a, &g0).unwrap(), EquivariantModule::Resolved { .. }));
    }

    #[test]
    fn presented_skyscraper_matches_koszul() {
        let a = aw("A1", Isogeny::Adjoint);
        let g = group_at(&a, "0");
        let one = |c: &str| vec![vec![vec![SparseTerm { exp: vec![0], coef: c.into() }]]];
        let spec = ModuleSpec::Presented {
            name: "p".into(),
            degrees: vec![0],
            actions: BTreeMap::from([("s0".into(), one("1")), ("s1".into(), one("1"))]),
            relations: vec![vec![vec![SparseTerm { exp: vec![1], coef: "1".into() }]]],
            relation_degrees: vec![1],
        };
        let m = spec.at_point(&a, &g).unwrap();
        m.validate(&g).unwrap();
        let EquivariantModule::Resolved { terms, .. } = &m else { panic!() };
        let s = 1 - g.identity();
        assert_eq!(terms[1].actions[s].get(0, 0), &Poly::constant(1, q(-1)));
        assert!(!descends(&m, &g, 3).unwrap().holds);
    }

    #[test]
    fn global_actions_follow_words() {
        let a = aw("A2", Isogeny::Adjoint);
        let neg = vec![vec![vec![SparseTerm { exp: vec![0, 0], coef: "-1".into() }]]];
        let actions = (0..3).map(|j| (a.simple_name(j), neg.clone())).collect();
        let spec = ModuleSpec::Global { name: "sign".into(), degrees: vec![0], actions, resolution: vec![] };
        for g in coinduction_sample(&a) {
            let m = spec.action(&a, &g).unwrap();
            assert_eq!(m.get(0, 0), &Poly::constant(2, Character::Det.value(&g)));
        }
    }

    #[test]
    fn extension_is_a_cocycle() {
        let a = aw("A2", Isogeny::Adjoint);
        let f = vec![SparseTerm { exp: vec![1, 0], coef: "1".into() }];
        for c in [Character::Trivial, Character::Det] {
            let spec = ModuleSpec::Extension { name: "ext".into(), function: f.clone(), character: c };
            for x in ["0", "1/2,0", "1/3,1/5"] {
                let g = group_at(&a, x);
                let m = spec.at_point(&a, &g).unwrap();
                m.validate(&g).unwrap();
                let v = descends(&m, &g, 4).unwrap().holds;
                assert_eq!(v, derived_isotropy_trivial(&m, &g, 4).unwrap().holds);
                assert_eq!(v, c == Character::Trivial || g.order() == 1);
            }
        }
    }

    #[test]
    fn coinduction_doubles_rank_for_simply_connected_a1() {
        let a = aw("A1", Isogeny::SimplyConnected);
        let spec = ModuleSpec::Character { name: "sign".into(), character: Character::Det, degree: 0 };
        let c = Coinduced::new(&a, &spec).unwrap();
        let rep = c.check(&coinduction_sample(&a)).unwrap();
        assert_eq!(rep.rank, 2);
        assert!(rep.passed() && rep.permutation_commutes);
        let adj = aw("A1", Isogeny::Adjoint);
        let c = Coinduced::new(&adj, &spec).unwrap();
        for g in coinduction_sample(&adj) {
            assert_eq!(c.action(&g).unwrap(), spec.action(&adj, &g).unwrap());
        }
    }

    #[test]
    fn module_json_round_trip_and_errors() {
        let spec = sky(Character::Det);
        assert_eq!(ModuleSpec::from_json(&spec.to_json()).unwrap(), spec);
        let bad = ModuleSpec::from_json("{\"family\": \"regular\",\n \"name\": \"r\", \"extra\": 1}");
        assert!(matches!(&bad, Err(Error::Parse(m)) if m.starts_with("line 2")), "{bad:?}");
    }
}
