//! Finite root systems, their Weyl groups, and the character lattice `L`
//! with `Q ⊆ L ⊆ P`.
//!
//! Points of the dual Cartan are written in coroot-pairing coordinates: the
//! `i`-th coordinate of `x` is `<x, α_i^v>`. In these coordinates the weight
//! lattice `P` is `ℤ^r`, roots and Weyl group matrices are integral, and a
//! coroot `β^v = Σ c_i α_i^v` pairs with `x` as `Σ c_i x_i`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::rational::{q, RationalVector, Q};

/// Largest rank for which the finite Weyl group is enumerated.
pub const MAX_ENUMERATION_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub family: Family,
    pub n: usize,
    /// Index of the first simple root of this component.
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Root {
    /// Coefficients in the simple roots.
    pub simple: Vec<i64>,
    /// Coroot-pairing coordinates `<β, α_i^v>`.
    pub weight: Vec<i64>,
    /// Coefficients of `β^v` in the simple coroots.
    pub coroot: Vec<i64>,
}

impl Root {
    pub fn pairing(&self, x: &RationalVector) -> Q {
        x.dot_int(&self.coroot)
    }

    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }

    pub fn coroot_height(&self) -> i64 {
        self.coroot.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.simple.iter().all(|&c| c >= 0)
    }
}

/// How the character lattice sits between `Q` and `P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
    /// Basis rows in simple-root coordinates.
    Lattice(Vec<Vec<Q>>),
}

/// An element of the finite abelian group `L/Q`, as residues modulo the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pi1Class(pub Vec<i64>);

impl Pi1Class {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Pi1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteWeylElement {
    /// Canonical reduced word (0-based simple indices).
    pub word: Vec<usize>,
    /// Action on coroot-pairing coordinates.
    pub matrix: IMat,
}

impl FiniteWeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    label: String,
    isogeny_label: String,
    rank: usize,
    cartan: IMat,
    components: Vec<Component>,
    roots: Vec<Root>,
    num_positive: usize,
    highest: Vec<usize>,
    /// Basis of `L` in pairing coordinates (rows).
    lattice: IMat,
    lattice_inverse: Vec<Vec<Q>>,
    cartan_inverse: Vec<Vec<Q>>,
    pi1_invariants: Vec<i64>,
    pi1_transform: IMat,
    tag: u64,
}

fn parse_label(label: &str) -> Result<Vec<(Family, usize)>> {
    let unsupported = || Error::UnsupportedType(label.to_string());
    let mut parts = Vec::new();
    for part in label.split(['x', 'X', '×', '*']) {
        let part = part.trim();
        let mut chars = part.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            _ => return Err(unsupported()),
        };
        let n: usize = chars.as_str().parse().map_err(|_| unsupported())?;
        let ok = match fam {
            Family::A => n >= 1,
            Family::B | Family::C => n >= 2,
            Family::D => n >= 4,
            Family::G => n == 2,
        };
        if !ok {
            return Err(unsupported());
        }
        parts.push((fam, n));
    }
    if parts.is_empty() {
        return Err(unsupported());
    }
    Ok(parts)
}

/// Cartan matrix with `a[i][j] = <α_j, α_i^v>`.
fn cartan_block(fam: Family, n: usize) -> IMat {
    let mut a = linalg::identity(n);
    for row in a.iter_mut() {
        for x in row.iter_mut() {
            *x *= 2;
        }
    }
    let chain = |a: &mut IMat, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match fam {
        Family::A => chain(&mut a, n),
        Family::B => {
            chain(&mut a, n);
            a[n - 1][n - 2] = -2;
        }
        Family::C => {
            chain(&mut a, n);
            a[n - 2][n - 1] = -2;
        }
        Family::D => {
            chain(&mut a, n - 1);
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        Family::G => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    a
}

fn family_letter(f: Family) -> char {
    match f {
        Family::A => 'A',
        Family::B => 'B',
        Family::C => 'C',
        Family::D => 'D',
        Family::G => 'G',
    }
}

fn q_row(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

fn vec_times_mat_q(v: &[Q], m: &[Vec<Q>]) -> Vec<Q> {
    let n = m.first().map_or(0, Vec::len);
    (0..n).map(|j| v.iter().zip(m).fold(Q::zero(), |acc, (a, row)| acc + a * &row[j])).collect()
}

fn integral(v: &[Q]) -> Option<Vec<i64>> {
    v.iter().map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None }).collect()
}

impl RootDatum {
    /// Builds the datum for a type label such as `A2`, `G2` or `A1xA1`.
    pub fn new(type_label: &str, isogeny: Isogeny) -> Result<RootDatum> {
        let parts = parse_label(type_label)?;
        let rank: usize = parts.iter().map(|p| p.1).sum();
        let mut cartan = vec![vec![0; rank]; rank];
        let mut components = Vec::new();
        let mut offset = 0;
        for &(fam, n) in &parts {
            let block = cartan_block(fam, n);
            for i in 0..n {
                for j in 0..n {
                    cartan[offset + i][offset + j] = block[i][j];
                }
            }
            components.push(Component { family: fam, n, offset });
            offset += n;
        }
        let label = parts.iter().map(|(f, n)| format!("{}{}", family_letter(*f), n)).collect::<Vec<_>>().join("x");

        let roots = Self::close_roots(&cartan)?;
        let num_positive = roots.len() / 2;

        let highest = components
            .iter()
            .map(|c| {
                (0..num_positive)
                    .filter(|&k| {
                        roots[k]
                            .simple
                            .iter()
                            .enumerate()
                            .all(|(i, &x)| (c.offset..c.offset + c.n).contains(&i) || x == 0)
                    })
                    .max_by_key(|&k| roots[k].coroot_height())
                    .expect("component has roots")
            })
            .collect();

        let cartan_q: Vec<Vec<Q>> = cartan.iter().map(|r| q_row(r)).collect();
        let cartan_inverse = linalg::inverse_q(&cartan_q).expect("Cartan matrix is invertible");

        // simple root j in pairing coordinates is column j of the Cartan matrix
        let root_lattice: IMat = linalg::transpose(&cartan);
        let (lattice, isogeny_label) = match &isogeny {
            Isogeny::Adjoint => (root_lattice.clone(), "adjoint".to_string()),
            Isogeny::SimplyConnected => (linalg::identity(rank), "simply_connected".to_string()),
            Isogeny::Lattice(rows) => {
                if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
                    return Err(Error::BadLattice(format!("expected {rank} basis rows of length {rank}")));
                }
                let basis = rows
                    .iter()
                    .map(|r| {
                        let w: Vec<Q> = (0..rank)
                            .map(|i| (0..rank).fold(Q::zero(), |acc, j| acc + &r[j] * q(cartan[i][j])))
                            .collect();
                        integral(&w)
                            .ok_or_else(|| Error::BadLattice("basis vector is not in the weight lattice".into()))
                    })
                    .collect::<Result<IMat>>()?;
                (basis, "lattice".to_string())
            }
        };
        let lattice_q: Vec<Vec<Q>> = lattice.iter().map(|r| q_row(r)).collect();
        let lattice_inverse =
            linalg::inverse_q(&lattice_q).ok_or_else(|| Error::BadLattice("basis is singular".into()))?;
        // root lattice in L-coordinates must be integral
        let q_in_l: IMat = root_lattice
            .iter()
            .map(|r| integral(&vec_times_mat_q(&q_row(r), &lattice_inverse)))
            .collect::<Option<IMat>>()
            .ok_or_else(|| Error::BadLattice("lattice does not contain the root lattice".into()))?;
        let (diag, transform) = linalg::smith_normal_form(&q_in_l);
        let keep: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] > 1).collect();
        let pi1_invariants: Vec<i64> = keep.iter().map(|&i| diag[i]).collect();
        let pi1_transform: IMat = transform.iter().map(|row| keep.iter().map(|&i| row[i]).collect()).collect();

        let mut hasher = std::collections::hash_map::DefaultHasher::new();
        label.hash(&mut hasher);
        lattice.hash(&mut hasher);
        let tag = hasher.finish();

        Ok(RootDatum {
            label,
            isogeny_label,
            rank,
            cartan,
            components,
            roots,
            num_positive,
            highest,
            lattice,
            lattice_inverse,
            cartan_inverse,
            pi1_invariants,
            pi1_transform,
            tag,
        })
    }

    pub fn adjoint(type_label: &str) -> Result<RootDatum> {
        Self::new(type_label, Isogeny::Adjoint)
    }

    pub fn simply_connected(type_label: &str) -> Result<RootDatum> {
        Self::new(type_label, Isogeny::SimplyConnected)
    }

    fn close_roots(cartan: &IMat) -> Result<Vec<Root>> {
        let r = cartan.len();
        let weight_of = |b: &[i64]| -> Vec<i64> { (0..r).map(|i| (0..r).map(|j| b[j] * cartan[i][j]).sum()).collect() };
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 1;
            seen.insert(e.clone(), e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            let c = seen[&b].clone();
            let w = weight_of(&b);
            for i in 0..r {
                let mut nb = b.clone();
                nb[i] -= w[i];
                // <α_i, β^v> = Σ_j c_j a[j][i]
                let pair: i64 = (0..r).map(|j| c[j] * cartan[j][i]).sum();
                let mut nc = c.clone();
                nc[i] -= pair;
                match seen.get(&nb) {
                    Some(existing) if *existing != nc => {
                        return Err(Error::UnsupportedType("inconsistent coroot closure".into()))
                    }
                    Some(_) => {}
                    None => {
                        if seen.len() > 10_000 {
                            return Err(Error::Budget("root closure".into()));
                        }
                        seen.insert(nb.clone(), nc);
                        queue.push_back(nb);
                    }
                }
            }
        }
        let mut positive: Vec<Root> = seen
            .iter()
            .filter(|(b, _)| b.iter().all(|&x| x >= 0))
            .map(|(b, c)| Root { simple: b.clone(), weight: weight_of(b), coroot: c.clone() })
            .collect();
        positive.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.simple.cmp(&a.simple)));
        let negative: Vec<Root> = positive
            .iter()
            .map(|p| Root {
                simple: p.simple.iter().map(|x| -x).collect(),
                weight: p.weight.iter().map(|x| -x).collect(),
                coroot: p.coroot.iter().map(|x| -x).collect(),
            })
            .collect();
        positive.extend(negative);
        Ok(positive)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn isogeny_label(&self) -> &str {
        &self.isogeny_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.roots[k]
    }

    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = (usize, &Root)> {
        self.roots[..self.num_positive].iter().enumerate()
    }

    /// Index of the root whose coroot is highest, one per irreducible component.
    pub fn highest_coroot_roots(&self) -> &[usize] {
        &self.highest
    }

    /// Simple roots in pairing coordinates.
    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        (0..self.rank).map(|k| self.roots[k].weight.clone()).collect()
    }

    pub fn root_index_by_weight(&self, w: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r.weight == w)
    }

    /// Index of `-β`.
    pub fn negate_index(&self, k: usize) -> usize {
        if k < self.num_positive {
            k + self.num_positive
        } else {
            k - self.num_positive
        }
    }

    /// Positive representative of `±β`.
    pub fn positive_index(&self, k: usize) -> usize {
        k % self.num_positive
    }

    pub fn lattice_basis(&self) -> &IMat {
        &self.lattice
    }

    pub fn pi1_invariants(&self) -> &[i64] {
        &self.pi1_invariants
    }

    /// `|L/Q|`.
    pub fn pi1_order(&self) -> usize {
        self.pi1_invariants.iter().product::<i64>() as usize
    }

    pub fn in_weight_lattice(&self, x: &RationalVector) -> bool {
        x.0.iter().all(Q::is_integer)
    }

    fn lattice_coords(&self, lambda: &[Q]) -> Option<Vec<i64>> {
        integral(&vec_times_mat_q(lambda, &self.lattice_inverse))
    }

    pub fn in_lattice(&self, lambda: &[i64]) -> bool {
        self.lattice_coords(&q_row(lambda)).is_some()
    }

    pub fn in_lattice_q(&self, lambda: &RationalVector) -> bool {
        self.lattice_coords(&lambda.0).is_some()
    }

    pub fn in_root_lattice(&self, lambda: &[i64]) -> bool {
        self.root_coords(lambda).iter().all(Q::is_integer)
    }

    pub fn in_root_lattice_q(&self, lambda: &RationalVector) -> bool {
        let c: Vec<Q> = (0..self.rank)
            .map(|i| (0..self.rank).fold(Q::zero(), |acc, j| acc + &self.cartan_inverse[i][j] * &lambda.0[j]))
            .collect();
        c.iter().all(Q::is_integer)
    }

    /// Simple-root coordinates of a vector given in pairing coordinates.
    pub fn root_coords(&self, lambda: &[i64]) -> Vec<Q> {
        (0..self.rank)
            .map(|i| (0..self.rank).fold(Q::zero(), |acc, j| acc + &self.cartan_inverse[i][j] * q(lambda[j])))
            .collect()
    }

    /// Class of `λ ∈ L` in `L/Q`.
    pub fn pi1_class(&self, lambda: &[i64]) -> Result<Pi1Class> {
        let coords = self.lattice_coords(&q_row(lambda)).ok_or_else(|| Error::NotInLattice(format!("{lambda:?}")))?;
        Ok(Pi1Class(
            self.pi1_invariants
                .iter()
                .enumerate()
                .map(|(k, &d)| {
                    let v: i64 = coords.iter().zip(&self.pi1_transform).map(|(c, row)| c * row[k]).sum();
                    v.rem_euclid(d)
                })
                .collect(),
        ))
    }

    pub fn pi1_identity(&self) -> Pi1Class {
        Pi1Class(vec![0; self.pi1_invariants.len()])
    }

    pub fn pi1_add(&self, a: &Pi1Class, b: &Pi1Class) -> Pi1Class {
        Pi1Class(a.0.iter().zip(&b.0).zip(&self.pi1_invariants).map(|((x, y), d)| (x + y).rem_euclid(*d)).collect())
    }

    /// All elements of `L/Q`, each with a lattice representative.
    pub fn pi1_elements(&self) -> Vec<(Pi1Class, Vec<i64>)> {
        let mut found: BTreeMap<Pi1Class, Vec<i64>> = BTreeMap::new();
        let order = self.pi1_order();
        // small combinations of the L basis reach every class
        let bound = order as i64;
        let mut coeffs = vec![0i64; self.rank];
        loop {
            let lambda: Vec<i64> =
                (0..self.rank).map(|i| (0..self.rank).map(|k| coeffs[k] * self.lattice[k][i]).sum()).collect();
            let class = self.pi1_class(&lambda).expect("combination of basis lies in L");
            found.entry(class).or_insert(lambda);
            if found.len() == order {
                break;
            }
            let mut i = 0;
            loop {
                if i == self.rank {
                    return found.into_iter().collect();
                }
                coeffs[i] += 1;
                if coeffs[i] < bound {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
        found.into_iter().collect()
    }

    /// `s_{α,k}(x) = x - (<x, α^v> - k) α`.
    pub fn reflect(&self, x: &RationalVector, root: usize, k: &Q) -> RationalVector {
        let r = &self.roots[root];
        let c = r.pairing(x) - k;
        x.add_int_scaled(&r.weight, &-c)
    }

    /// Like [`reflect`](Self::reflect) with the root given in pairing coordinates.
    pub fn reflect_by_root(&self, x: &RationalVector, alpha: &[i64], k: &Q) -> Result<RationalVector> {
        let idx = self.root_index_by_weight(alpha).ok_or_else(|| Error::NotARoot(format!("{alpha:?}")))?;
        Ok(self.reflect(x, idx, k))
    }

    pub fn reflection_matrix(&self, root: usize) -> IMat {
        let r = &self.roots[root];
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| i64::from(i == j) - r.weight[i] * r.coroot[j]).collect())
            .collect()
    }

    pub fn simple_reflection_matrix(&self, i: usize) -> IMat {
        self.reflection_matrix(i)
    }

    /// Canonical reduced word of a finite Weyl group matrix, folding `w(ρ)`
    /// back to the dominant chamber with the lowest violated index first.
    pub fn reduced_word(&self, m: &IMat) -> Vec<usize> {
        let mut y = linalg::mat_vec(m, &vec![1; self.rank]);
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| y[i] < 0) {
            let c = y[i];
            for (yk, ak) in y.iter_mut().zip(&self.roots[i].weight) {
                *yk -= c * ak;
            }
            word.push(i);
        }
        word
    }

    pub fn weyl_element(&self, m: IMat) -> FiniteWeylElement {
        FiniteWeylElement { word: self.reduced_word(&m), matrix: m }
    }

    pub fn weyl_from_word(&self, word: &[usize]) -> FiniteWeylElement {
        let m = word
            .iter()
            .fold(linalg::identity(self.rank), |acc, &i| linalg::mat_mul(&acc, &self.simple_reflection_matrix(i)));
        self.weyl_element(m)
    }

    /// The finite Weyl group, sorted by length and then by word.
    pub fn enumerate_weyl(&self) -> Result<Vec<FiniteWeylElement>> {
        if self.rank > MAX_ENUMERATION_RANK {
            return Err(Error::RankTooLarge { rank: self.rank, max: MAX_ENUMERATION_RANK });
        }
        let gens: Vec<IMat> = (0..self.rank).map(|i| self.simple_reflection_matrix(i)).collect();
        let mut seen: HashSet<IMat> = HashSet::new();
        let id = linalg::identity(self.rank);
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let n = linalg::mat_mul(&m, g);
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        let mut out: Vec<FiniteWeylElement> = seen.into_iter().map(|m| self.weyl_element(m)).collect();
        out.sort_by(|a, b| a.word.len().cmp(&b.word.len()).then_with(|| a.word.cmp(&b.word)));
        Ok(out)
    }

    /// A point in the open fundamental alcove, used for wall counting.
    pub fn alcove_interior_point(&self) -> RationalVector {
        let mut p = RationalVector::zero(self.rank);
        for (c, &h) in self.components.iter().zip(&self.highest) {
            let denom = self.roots[h].coroot_height() + 1;
            for i in c.offset..c.offset + c.n {
                p.0[i] = Q::new(One::one(), denom.into());
            }
        }
        p
    }

    /// Centroid of the affine walls of `A₀` (one per component).
    pub fn affine_wall_midpoint(&self) -> RationalVector {
        let mut p = RationalVector::zero(self.rank);
        for (c, &h) in self.components.iter().zip(&self.highest) {
            let coroot = &self.roots[h].coroot;
            for i in c.offset..c.offset + c.n {
                p.0[i] = Q::new(One::one(), (c.n as i64 * coroot[i]).into());
            }
        }
        p
    }

    /// Whether `x` lies in the closed fundamental alcove.
    pub fn in_closed_fundamental_alcove(&self, x: &RationalVector) -> bool {
        x.0.iter().all(|c| *c >= Q::zero()) && self.highest.iter().all(|&h| self.roots[h].pairing(x) <= Q::one())
    }

    pub fn in_open_fundamental_alcove(&self, x: &RationalVector) -> bool {
        x.0.iter().all(|c| *c > Q::zero()) && self.highest.iter().all(|&h| self.roots[h].pairing(x) < Q::one())
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.label, self.isogeny_label)
    }
}

/// Summary used by the CLI and JSON reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootDatumSummary {
    pub type_label: String,
    pub isogeny: String,
    pub rank: usize,
    pub cartan_matrix: IMat,
    pub num_roots: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub positive_coroots: Vec<Vec<i64>>,
    pub lattice_basis: IMat,
    pub pi1_invariants: Vec<i64>,
    pub pi1_order: usize,
    pub weyl_order: usize,
}

impl RootDatum {
    pub fn summary(&self) -> Result<RootDatumSummary> {
        Ok(RootDatumSummary {
            type_label: self.label.clone(),
            isogeny: self.isogeny_label.clone(),
            rank: self.rank,
            cartan_matrix: self.cartan.clone(),
            num_roots: self.roots.len(),
            positive_roots: self.positive_roots().map(|(_, r)| r.simple.clone()).collect(),
            positive_coroots: self.positive_roots().map(|(_, r)| r.coroot.clone()).collect(),
            lattice_basis: self.lattice.clone(),
            pi1_invariants: self.pi1_invariants.clone(),
            pi1_order: self.pi1_order(),
            weyl_order: self.enumerate_weyl()?.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;

    #[test]
    fn root_counts() {
        for (label, n) in [("A1", 2), ("A2", 6), ("B2", 8), ("C2", 8), ("G2", 12), ("A1xA1", 4), ("A3", 12), ("D4", 24)]
        {
            assert_eq!(RootDatum::adjoint(label).unwrap().roots().len(), n, "{label}");
        }
    }

    #[test]
    fn unsupported_types() {
        for bad in ["E8", "B1", "G3", "", "A0", "Z2"] {
            assert!(matches!(RootDatum::adjoint(bad), Err(Error::UnsupportedType(_))), "{bad}");
        }
    }

    #[test]
    fn cartan_shape() {
        for label in ["A2", "B2", "C2", "G2", "A1xA1"] {
            let d = RootDatum::adjoint(label).unwrap();
            for (i, row) in d.cartan().iter().enumerate() {
                for (j, &a) in row.iter().enumerate() {
                    if i == j {
                        assert_eq!(a, 2);
                    } else {
                        assert!(a <= 0);
                    }
                }
            }
        }
    }

    #[test]
    fn roots_closed_under_negation_and_reflection() {
        for label in ["A2", "B2", "G2", "A1xA1"] {
            let d = RootDatum::adjoint(label).unwrap();
            for r in d.roots() {
                let neg: Vec<i64> = r.weight.iter().map(|x| -x).collect();
                assert!(d.root_index_by_weight(&neg).is_some());
                for i in 0..d.rank() {
                    let img = linalg::mat_vec(&d.simple_reflection_matrix(i), &r.weight);
                    assert!(d.root_index_by_weight(&img).is_some());
                }
                assert_eq!(r.pairing(&RationalVector::from_ints(&r.weight)), q(2));
            }
        }
    }

    #[test]
    fn pi1_groups() {
        let a1 = RootDatum::adjoint("A1").unwrap();
        assert_eq!(a1.pi1_order(), 1);
        assert!(a1.pi1_class(&[2]).unwrap().is_identity());
        assert!(a1.pi1_class(&[1]).is_err());

        let a1sc = RootDatum::simply_connected("A1").unwrap();
        assert_eq!(a1sc.pi1_order(), 2);
        let w = a1sc.pi1_class(&[1]).unwrap();
        assert!(!w.is_identity());
        assert!(a1sc.pi1_add(&w, &w).is_identity());

        let a2 = RootDatum::simply_connected("A2").unwrap();
        assert_eq!(a2.pi1_order(), 3);
        assert_eq!(RootDatum::simply_connected("G2").unwrap().pi1_order(), 1);
        assert_eq!(RootDatum::simply_connected("B2").unwrap().pi1_order(), 2);
        assert_eq!(RootDatum::simply_connected("A1xA1").unwrap().pi1_order(), 4);
    }

    #[test]
    fn custom_lattice() {
        // L generated by the root lattice and ϖ1 + ϖ2 of A1xA1
        let rows = vec![vec![qf(1, 2), qf(1, 2)], vec![q(0), q(1)]];
        let d = RootDatum::new("A1xA1", Isogeny::Lattice(rows)).unwrap();
        assert_eq!(d.pi1_order(), 2);
        // ϖ1 alone is not in L
        let bad = vec![vec![qf(1, 2), q(0)], vec![q(0), qf(1, 3)]];
        assert!(matches!(RootDatum::new("A1xA1", Isogeny::Lattice(bad)), Err(Error::BadLattice(_))));
        // a sublattice missing α2
        let small = vec![vec![q(1), q(0)], vec![q(0), q(2)]];
        assert!(matches!(RootDatum::new("A1xA1", Isogeny::Lattice(small)), Err(Error::BadLattice(_))));
    }

    #[test]
    fn weyl_orders_and_words() {
        for (label, n) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("A1xA1", 4), ("A3", 24)] {
            let d = RootDatum::adjoint(label).unwrap();
            let w = d.enumerate_weyl().unwrap();
            assert_eq!(w.len(), n);
            for e in &w {
                assert_eq!(d.weyl_from_word(&e.word).matrix, e.matrix);
            }
        }
    }

    #[test]
    fn reflect_example() {
        let d = RootDatum::adjoint("A1").unwrap();
        let x = RationalVector::from_ints(&[3]);
        let y = d.reflect(&x, 0, &q(1));
        assert_eq!(y, RationalVector::from_ints(&[-1]));
        assert_eq!(d.reflect(&y, 0, &q(1)), x);
        assert!(d.reflect_by_root(&x, &[1], &q(0)).is_err());
    }

    #[test]
    fn highest_coroots() {
        // B2: the coroot of the highest short root is highest
        let b2 = RootDatum::adjoint("B2").unwrap();
        let h = b2.highest_coroot_roots()[0];
        assert_eq!(b2.root(h).simple, vec![1, 1]);
        let g2 = RootDatum::adjoint("G2").unwrap();
        let h = g2.highest_coroot_roots()[0];
        assert_eq!(g2.root(h).simple, vec![2, 1]);
        assert!(g2.in_open_fundamental_alcove(&g2.alcove_interior_point()));
    }
}
