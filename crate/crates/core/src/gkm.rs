//! Moment graphs of Bruhat-closed vertex sets, GKM section spaces, and the
//! span of the adjacency generators.
//!
//! A section assigns a polynomial in the source variable `y` (and `ħ` in
//! formal mode) to each vertex `γ`. The edge joining `γ` and `γs` for an affine
//! reflection `s = s_{α,k}` demands that `ξ_{γs} − ξ_γ` vanish on the fixed
//! locus `<y, α^v> = kħ` of `s^ħ`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{AffineElement, AffineReflection, AffineWeyl};
use crate::error::{Error, Result};
use crate::linalg;
use crate::par;
use crate::poly::{self, dim_exact_degree, Exponent, Poly, SparseTerm};
use crate::rational::{fmt_q, q, RationalVector, Q};
use crate::rootdata::Pi1Class;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HbarMode {
    /// Variables `(y, ħ)`, homogeneous pieces of exact degree `d`.
    Formal,
    /// `ħ = 1`, variables `y`, polynomials of degree `≤ d`.
    SetToOne,
}

impl HbarMode {
    pub fn nvars(self, rank: usize) -> usize {
        match self {
            HbarMode::Formal => rank + 1,
            HbarMode::SetToOne => rank,
        }
    }

    pub fn basis(self, rank: usize, d: u32) -> Vec<Exponent> {
        match self {
            HbarMode::Formal => poly::monomials_of_degree(rank + 1, d),
            HbarMode::SetToOne => poly::monomials_up_to(rank, d),
        }
    }

    /// `ħ` as a polynomial in this mode's ring.
    pub fn hbar(self, rank: usize) -> Poly {
        match self {
            HbarMode::Formal => Poly::var(rank + 1, rank),
            HbarMode::SetToOne => Poly::one(rank),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HbarMode::Formal => "formal",
            HbarMode::SetToOne => "1",
        }
    }
}

/// The graph `{(γ^ħ(y), y, ħ)}` of one vertex.
#[derive(Clone, Debug)]
pub struct GraphLocus {
    pub element: AffineElement,
}

impl GraphLocus {
    /// Coordinates of `γ^ħ(y)` as polynomials in the mode's variables.
    pub fn target(&self, rank: usize, mode: HbarMode) -> Vec<Poly> {
        let n = mode.nvars(rank);
        let hbar = mode.hbar(rank);
        (0..rank)
            .map(|i| {
                let mut p = hbar.scale(&q(self.element.translation[i]));
                for j in 0..rank {
                    let c = self.element.finite[i][j];
                    if c != 0 {
                        p = p.add(&Poly::var(n, j).scale(&q(c)));
                    }
                }
                p
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// `target = source · reflection`.
    pub reflection: AffineReflection,
    /// Coroot coefficients of the label `<y, α^v> − kħ`.
    pub coroot: Vec<i64>,
    pub level: Q,
}

impl Edge {
    pub fn label(&self, mode: HbarMode) -> Poly {
        let rank = self.coroot.len();
        let coeffs: Vec<Q> = self.coroot.iter().map(|&c| q(c)).collect();
        let mut p = Poly::linear(&coeffs, Q::zero());
        if mode == HbarMode::Formal {
            p = p.substitute(&(0..rank).map(|i| Poly::var(rank + 1, i)).collect::<Vec<_>>());
        }
        p.sub(&mode.hbar(rank).scale(&self.level))
    }

    /// Substitution that parametrizes the zero set of the label.
    fn restriction(&self, mode: HbarMode) -> Vec<Poly> {
        let rank = self.coroot.len();
        let n = mode.nvars(rank);
        let j = self.coroot.iter().position(|&c| c != 0).expect("coroot is nonzero");
        let cj = q(self.coroot[j]);
        (0..n)
            .map(|i| {
                if i != j {
                    return Poly::var(n, i);
                }
                let mut p = mode.hbar(rank).scale(&self.level);
                for (k, &c) in self.coroot.iter().enumerate() {
                    if k != j && c != 0 {
                        p = p.sub(&Poly::var(n, k).scale(&q(c)));
                    }
                }
                p.scale(&(Q::one() / &cj))
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct MomentGraph {
    pub vertices: Vec<AffineElement>,
    pub lengths: Vec<usize>,
    pub classes: Vec<Pi1Class>,
    pub edges: Vec<Edge>,
    rank: usize,
}

impl MomentGraph {
    /// Builds the graph on a Bruhat-closed vertex set (a union of intervals,
    /// possibly in several cosets).
    pub fn build(aw: &AffineWeyl, omega: &[AffineElement]) -> Result<MomentGraph> {
        if let Some(missing) = aw.bruhat_closed_violation(omega)? {
            return Err(Error::NotBruhatClosed(aw.format(&missing)));
        }
        let mut vertices = omega.to_vec();
        aw.sort_elements(&mut vertices);
        vertices.dedup();
        let lengths = vertices.iter().map(|g| aw.length(g)).collect();
        let classes = vertices.iter().map(|g| aw.pi1(g)).collect();
        let mut edges = Vec::new();
        for a in 0..vertices.len() {
            let inv = aw.invert(&vertices[a])?;
            for b in a + 1..vertices.len() {
                let delta = aw.compose(&inv, &vertices[b])?;
                if let Some(r) = aw.as_reflection(&delta) {
                    edges.push(Edge {
                        source: a,
                        target: b,
                        coroot: aw.datum().root(r.root).coroot.clone(),
                        level: r.level.clone(),
                        reflection: r,
                    });
                }
            }
        }
        Ok(MomentGraph { vertices, lengths, classes, edges, rank: aw.rank() })
    }

    /// Graph on the lower interval of `w`.
    pub fn interval(aw: &AffineWeyl, w: &AffineElement) -> Result<MomentGraph> {
        Self::build(aw, &aw.bruhat_interval(w)?)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, g: &AffineElement) -> Option<usize> {
        self.vertices.iter().position(|v| v == g)
    }

    pub fn locus(&self, i: usize) -> GraphLocus {
        GraphLocus { element: self.vertices[i].clone() }
    }

    /// Linear conditions on the stacked coefficient vector (vertex-major)
    /// cutting out sections of the given degree.
    pub fn constraint_rows(&self, d: u32, mode: HbarMode) -> Vec<Vec<Q>> {
        let basis = mode.basis(self.rank, d);
        let nb = basis.len();
        let ncols = nb * self.vertices.len();
        let mut rows = Vec::new();
        for e in &self.edges {
            let images = e.restriction(mode);
            let mut by_out: BTreeMap<Exponent, Vec<(usize, Q)>> = BTreeMap::new();
            for (m, exp) in basis.iter().enumerate() {
                let restricted = Poly::monomial(exp.clone(), Q::one()).substitute(&images);
                for (oe, c) in restricted.terms() {
                    by_out.entry(oe.clone()).or_default().push((m, c.clone()));
                }
            }
            for entries in by_out.into_values() {
                let mut row = vec![Q::zero(); ncols];
                for (m, c) in entries {
                    row[e.target * nb + m] += &c;
                    row[e.source * nb + m] -= &c;
                }
                rows.push(row);
            }
        }
        rows
    }
}

/// One polynomial per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionTuple(pub Vec<Poly>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionCheck {
    pub is_section: bool,
    /// First edge `(source, target)` whose divisibility fails.
    pub witness: Option<(usize, usize)>,
}

pub fn is_section(t: &SectionTuple, g: &MomentGraph, mode: HbarMode) -> Result<SectionCheck> {
    if t.0.len() != g.len() {
        return Err(Error::IndexMismatch { expected: g.len(), got: t.0.len() });
    }
    let n = mode.nvars(g.rank);
    if let Some(p) = t.0.iter().find(|p| p.nvars() != n) {
        return Err(Error::DimensionMismatch { expected: n, got: p.nvars() });
    }
    for e in &g.edges {
        let diff = t.0[e.target].sub(&t.0[e.source]);
        if !diff.substitute(&e.restriction(mode)).is_zero() {
            return Ok(SectionCheck { is_section: false, witness: Some((e.source, e.target)) });
        }
    }
    Ok(SectionCheck { is_section: true, witness: None })
}

/// A subspace of `(polynomials)^{|Ω|}` in each degree.
#[derive(Clone, Debug)]
pub struct GradedSubspace {
    pub mode: HbarMode,
    pub pieces: Vec<SubspacePiece>,
}

#[derive(Clone, Debug)]
pub struct SubspacePiece {
    pub degree: u32,
    /// Monomial basis of each vertex coordinate.
    pub monomials: Vec<Exponent>,
    /// Basis vectors, stacked vertex-major over `monomials`.
    pub basis: Vec<Vec<Q>>,
}

impl SubspacePiece {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis vector `k` as a section tuple.
    pub fn section(&self, k: usize, nvars: usize) -> SectionTuple {
        let nb = self.monomials.len();
        let v = &self.basis[k];
        SectionTuple(
            v.chunks(nb)
                .map(|chunk| {
                    let mut p = Poly::zero(nvars);
                    for (e, c) in self.monomials.iter().zip(chunk) {
                        p.add_term(e.clone(), c.clone());
                    }
                    p
                })
                .collect(),
        )
    }
}

impl GradedSubspace {
    pub fn dims(&self) -> Vec<usize> {
        self.pieces.iter().map(SubspacePiece::dim).collect()
    }
}

fn section_piece(g: &MomentGraph, d: u32, mode: HbarMode) -> SubspacePiece {
    let monomials = mode.basis(g.rank, d);
    let ncols = monomials.len() * g.len();
    let rows = g.constraint_rows(d, mode);
    let basis = linalg::nullspace(&rows, ncols);
    SubspacePiece { degree: d, monomials, basis }
}

/// Sections of each degree `0..=d`, as exact nullspaces.
pub fn section_space(g: &MomentGraph, d: u32, mode: HbarMode) -> GradedSubspace {
    let degrees: Vec<u32> = (0..=d).collect();
    let pieces = par::map(&degrees, |&k| section_piece(g, k, mode));
    GradedSubspace { mode, pieces }
}

/// `Σ_γ dim(polynomials of exact degree d − ℓ(γ) in rank + 1 variables)`.
pub fn freeness_prediction(g: &MomentGraph, d: u32) -> u64 {
    g.lengths.iter().map(|&l| dim_exact_degree(g.rank + 1, i64::from(d) - l as i64)).sum()
}

/// Spanning vectors of the adjacency functions of degree `d`: products of
/// `t♯(z) = y`, `s♯(z) = γ^ħ(y)` and `ħ`, times one idempotent per `L/Q` class.
fn adjacency_spanning_set(g: &MomentGraph, d: u32, mode: HbarMode) -> (Vec<Exponent>, Vec<Vec<Q>>) {
    let r = g.rank;
    let n = mode.nvars(r);
    let monomials = mode.basis(r, d);
    let index = poly::monomial_index(&monomials);
    let nb = monomials.len();
    // generator exponents over (x_1..x_r, y_1..y_r[, ħ])
    let gen_exps = match mode {
        HbarMode::Formal => poly::monomials_of_degree(2 * r + 1, d),
        HbarMode::SetToOne => poly::monomials_up_to(2 * r, d),
    };
    let mut classes: Vec<&Pi1Class> = g.classes.iter().collect();
    classes.sort();
    classes.dedup();
    let per_vertex: Vec<Vec<Vec<Q>>> = (0..g.len())
        .map(|v| {
            let mut images = g.locus(v).target(r, mode);
            images.extend((0..n).map(|i| Poly::var(n, i)));
            gen_exps
                .iter()
                .map(|e| {
                    Poly::monomial(e.clone(), Q::one())
                        .substitute(&images)
                        .coefficients_in(&index, nb)
                        .expect("degree is preserved")
                })
                .collect()
        })
        .collect();
    let mut vectors = Vec::new();
    for class in classes {
        for k in 0..gen_exps.len() {
            let mut v = vec![Q::zero(); nb * g.len()];
            for (vert, c) in g.classes.iter().enumerate() {
                if c == class {
                    v[vert * nb..(vert + 1) * nb].clone_from_slice(&per_vertex[vert][k]);
                }
            }
            vectors.push(v);
        }
    }
    (monomials, vectors)
}

#[derive(Clone, Debug)]
pub struct AdjacencyPiece {
    pub piece: SubspacePiece,
    /// Every spanning product satisfies every edge condition.
    pub contained_in_kernel: bool,
}

fn adjacency_piece(g: &MomentGraph, d: u32, mode: HbarMode) -> AdjacencyPiece {
    let (monomials, vectors) = adjacency_spanning_set(g, d, mode);
    let ncols = monomials.len() * g.len();
    let rows = g.constraint_rows(d, mode);
    let contained_in_kernel = vectors
        .iter()
        .all(|v| rows.iter().all(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b).is_zero()));
    let reduced = linalg::row_reduce(&vectors, ncols);
    let basis = reduced.rows.iter().map(|row| row.iter().map(|x| Q::from_integer(x.clone())).collect()).collect();
    AdjacencyPiece { piece: SubspacePiece { degree: d, monomials, basis }, contained_in_kernel }
}

/// Span of adjacency functions in each degree `0..=d`.
pub fn adjacency_subalgebra(g: &MomentGraph, d: u32, mode: HbarMode) -> (GradedSubspace, bool) {
    let degrees: Vec<u32> = (0..=d).collect();
    let pieces = par::map(&degrees, |&k| adjacency_piece(g, k, mode));
    let contained = pieces.iter().all(|p| p.contained_in_kernel);
    (GradedSubspace { mode, pieces: pieces.into_iter().map(|p| p.piece).collect() }, contained)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelRow {
    pub degree: u32,
    pub dim_adjacency: usize,
    pub dim_kernel: usize,
    pub equal: bool,
    pub inclusion: bool,
    /// Least `D ≥ d` with every kernel element of degree `≤ d` an adjacency
    /// function of degree `≤ D` (`ħ = 1` only, searched up to `d + lag`).
    pub generated_by_degree: Option<u32>,
}

/// Default for how far past `d` the lag search looks.
pub const LAG_SEARCH: u32 = 4;

/// `adjacency[k]` is the degree-`≤k` adjacency piece at `ħ = 1`.
fn generation_lag(g: &MomentGraph, ker: &SubspacePiece, d: u32, lag: u32, adjacency: &[&SubspacePiece]) -> Option<u32> {
    let nb = ker.monomials.len();
    (d..=d + lag).find(|&big| {
        let adj = adjacency[big as usize];
        let nbig = adj.monomials.len();
        let mut rows = adj.basis.clone();
        let base = rows.len();
        // degree-≤d monomials are a prefix of the degree-≤D ones
        rows.extend(ker.basis.iter().map(|v| {
            let mut w = vec![Q::zero(); nbig * g.len()];
            for (vert, chunk) in v.chunks(nb).enumerate() {
                w[vert * nbig..vert * nbig + nb].clone_from_slice(chunk);
            }
            w
        }));
        linalg::rank(&rows, nbig * g.len()) == base
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelReport {
    pub hbar: HbarMode,
    pub vertices: Vec<String>,
    pub num_edges: usize,
    pub rows: Vec<KernelRow>,
    /// Least degree from which dimensions agree through the maximum tested degree.
    pub saturation_degree: Option<u32>,
}

impl KernelReport {
    pub fn inclusion_everywhere(&self) -> bool {
        self.rows.iter().all(|r| r.inclusion)
    }
}

/// Adjacency functions against the edge kernel in degrees `0..=d_max`; at
/// `ħ = 1` unequal rows search up to `lag` degrees further for generation.
pub fn kernel_equality_report(aw: &AffineWeyl, g: &MomentGraph, d_max: u32, mode: HbarMode, lag: u32) -> KernelReport {
    let degrees: Vec<u32> = (0..=d_max).collect();
    let pieces = par::map(&degrees, |&d| (adjacency_piece(g, d, mode), section_piece(g, d, mode)));
    let same = |(a, k): &(AdjacencyPiece, SubspacePiece)| a.contained_in_kernel && a.piece.dim() == k.dim();
    let extra: Vec<u32> = if mode == HbarMode::SetToOne && !pieces.iter().all(same) {
        (d_max + 1..=d_max + lag).collect()
    } else {
        Vec::new()
    };
    let more = par::map(&extra, |&d| adjacency_piece(g, d, mode).piece);
    let adjacency: Vec<&SubspacePiece> = pieces.iter().map(|(a, _)| &a.piece).chain(&more).collect();
    let rows: Vec<KernelRow> = par::map(&degrees, |&d| {
        let (adj, ker) = &pieces[d as usize];
        let generated_by_degree = match mode {
            HbarMode::SetToOne if same(&pieces[d as usize]) => Some(d),
            HbarMode::SetToOne => generation_lag(g, ker, d, lag, &adjacency),
            HbarMode::Formal => None,
        };
        KernelRow {
            degree: d,
            dim_adjacency: adj.piece.dim(),
            dim_kernel: ker.dim(),
            equal: adj.piece.dim() == ker.dim(),
            inclusion: adj.contained_in_kernel,
            generated_by_degree,
        }
    });
    let saturation_degree = rows.iter().rev().take_while(|r| r.equal).last().map(|r| r.degree);
    KernelReport {
        hbar: mode,
        vertices: g.vertices.iter().map(|v| aw.format(v)).collect(),
        num_edges: g.edges.len(),
        rows,
        saturation_degree,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaReport {
    pub point: RationalVector,
    pub stabilizer: Vec<String>,
    pub degree: u32,
    /// `β_x ∘ t♯ = id`.
    pub retracts_t: bool,
    /// `β_x(t♯(f)·ξ) = f·β_x(ξ)`.
    pub t_linear: bool,
    /// `s♯ β_x s♯ = t♯ β_x s♯` on the graphs of the stabilizer.
    pub invariant: bool,
}

impl BetaReport {
    pub fn passed(&self) -> bool {
        self.retracts_t && self.t_linear && self.invariant
    }
}

/// Checks the averaging section at `x` over the extended stabilizer, with `ħ = 1`,
/// for polynomial inputs up to degree `degree`.
pub fn verify_beta_section(aw: &AffineWeyl, x: &RationalVector, g: &MomentGraph, degree: u32) -> Result<BetaReport> {
    let stab = aw.stabilizer_brute_force(x, true);
    let idx: Vec<usize> = stab
        .iter()
        .map(|s| g.index_of(s).ok_or_else(|| Error::StabilizerNotInGraph(aw.format(s))))
        .collect::<Result<_>>()?;
    let r = g.rank;
    let mode = HbarMode::SetToOne;
    let order = q(stab.len() as i64);
    let targets: Vec<Vec<Poly>> = idx.iter().map(|&i| g.locus(i).target(r, mode)).collect();
    // a section is given by its values on the stabilizer graphs
    let beta = |xi: &[Poly]| -> Poly { xi.iter().fold(Poly::zero(r), |acc, p| acc.add(p)).scale(&(Q::one() / &order)) };
    let s_sharp = |f: &Poly| -> Vec<Poly> { targets.iter().map(|t| f.substitute(t)).collect() };
    let t_sharp = |f: &Poly| -> Vec<Poly> { vec![f.clone(); targets.len()] };

    let fs: Vec<Poly> = poly::monomials_up_to(r, degree).into_iter().map(|e| Poly::monomial(e, Q::one())).collect();
    let retracts_t = fs.iter().all(|f| beta(&t_sharp(f)) == *f);
    let low: Vec<&Poly> = fs.iter().filter(|f| f.degree().unwrap_or(0) <= 2).collect();
    let t_linear = low.iter().all(|f| {
        low.iter().all(|h| {
            let xi = s_sharp(h);
            let prod: Vec<Poly> = xi.iter().map(|p| p.mul(f)).collect();
            beta(&prod) == f.mul(&beta(&xi))
        })
    });
    let invariant = fs.iter().all(|f| {
        let big_f = beta(&s_sharp(f));
        targets.iter().all(|t| big_f.substitute(t) == big_f)
    });
    Ok(BetaReport {
        point: x.clone(),
        stabilizer: stab.iter().map(|s| aw.format(s)).collect(),
        degree,
        retracts_t,
        t_linear,
        invariant,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub separates: bool,
    pub class_a: String,
    pub class_b: String,
    /// Whether some generator takes different values at the two points.
    pub by_generators: bool,
}

/// Whether the adjacency functions distinguish `(γ, y)` from `(γ', y)`
/// when `γ(y) = γ'(y)`.
pub fn separates(
    aw: &AffineWeyl,
    a: &AffineElement,
    b: &AffineElement,
    y: &RationalVector,
) -> Result<SeparationReport> {
    let one = Q::one();
    let ya = aw.act(a, y, &one);
    let yb = aw.act(b, y, &one);
    if ya != yb {
        return Err(Error::PreconditionViolated(format!("{ya} vs {yb}")));
    }
    let (ca, cb) = (aw.pi1(a), aw.pi1(b));
    let separates = ca != cb;
    // generators at the two points: t♯ gives y, s♯ gives γ(y), idempotents give class indicators
    let mut classes: Vec<Pi1Class> = aw.length_zero_elements().iter().map(|(c, _)| c.clone()).collect();
    classes.sort();
    let value = |g: &AffineElement, gy: &RationalVector| -> Vec<Q> {
        let class = aw.pi1(g);
        let mut v: Vec<Q> = y.0.clone();
        v.extend(gy.0.iter().cloned());
        v.extend(classes.iter().map(|c| if *c == class { Q::one() } else { Q::zero() }));
        v
    };
    let by_generators = value(a, &ya) != value(b, &yb);
    Ok(SeparationReport { separates, class_a: ca.to_string(), class_b: cb.to_string(), by_generators })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionTupleRecord {
    pub hbar: HbarMode,
    pub vertices: Vec<String>,
    pub polynomials: Vec<Vec<SparseTerm>>,
}

impl SectionTuple {
    pub fn to_record(&self, aw: &AffineWeyl, g: &MomentGraph, mode: HbarMode) -> SectionTupleRecord {
        SectionTupleRecord {
            hbar: mode,
            vertices: g.vertices.iter().map(|v| aw.format(v)).collect(),
            polynomials: self.0.iter().map(Poly::to_sparse).collect(),
        }
    }

    pub fn from_record(aw: &AffineWeyl, g: &MomentGraph, rec: &SectionTupleRecord) -> Result<SectionTuple> {
        if rec.vertices.len() != g.len() || rec.polynomials.len() != g.len() {
            return Err(Error::IndexMismatch { expected: g.len(), got: rec.polynomials.len() });
        }
        let n = rec.hbar.nvars(g.rank);
        let mut polys: HashMap<usize, Poly> = HashMap::new();
        for (name, terms) in rec.vertices.iter().zip(&rec.polynomials) {
            let v = aw.parse(name)?;
            let i = g.index_of(&v).ok_or_else(|| Error::Parse(format!("`{name}` is not a vertex")))?;
            polys.insert(i, Poly::from_sparse(n, terms)?);
        }
        (0..g.len())
            .map(|i| polys.remove(&i).ok_or_else(|| Error::Parse("repeated vertex".into())))
            .collect::<Result<_>>()
            .map(SectionTuple)
    }
}

/// Edge records for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub source: String,
    pub target: String,
    pub label: String,
}

impl MomentGraph {
    pub fn edge_records(&self, aw: &AffineWeyl, mode: HbarMode) -> Vec<EdgeRecord> {
        self.edges
            .iter()
            .map(|e| EdgeRecord {
                source: aw.format(&self.vertices[e.source]),
                target: aw.format(&self.vertices[e.target]),
                label: format_label(&e.coroot, &e.level, mode),
            })
            .collect()
    }
}

fn format_label(coroot: &[i64], level: &Q, mode: HbarMode) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coroot.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(format!("y{}", i + 1)),
            -1 => parts.push(format!("-y{}", i + 1)),
            _ => parts.push(format!("{c}*y{}", i + 1)),
        }
    }
    let mut s = parts.join(" + ").replace("+ -", "- ");
    if !level.is_zero() {
        let h = if mode == HbarMode::Formal { "*h" } else { "" };
        if *level > Q::zero() {
            s.push_str(&format!(" - {}{h}", fmt_q(level)));
        } else {
            s.push_str(&format!(" + {}{h}", fmt_q(&-level)));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::rootdata::Isogeny;

    fn a1() -> AffineWeyl {
        AffineWeyl::from_label("A1", Isogeny::Adjoint).unwrap()
    }

    #[test]
    fn single_edge_label() {
        let aw = a1();
        let s = aw.reflection(0, q(1)).unwrap().element;
        let g = MomentGraph::interval(&aw, &s).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(format_label(&g.edges[0].coroot, &g.edges[0].level, HbarMode::Formal), "y1 - 1*h");
    }

    #[test]
    fn section_examples() {
        let aw = a1();
        let s = aw.simple_reflection(1).element;
        let g = MomentGraph::interval(&aw, &s).unwrap();
        let mode = HbarMode::Formal;
        let c = Poly::one(2);
        assert!(is_section(&SectionTuple(vec![c.clone(), c.clone()]), &g, mode).unwrap().is_section);
        let label = g.edges[0].label(mode);
        let t = SectionTuple(vec![Poly::zero(2), label]);
        assert!(is_section(&t, &g, mode).unwrap().is_section);
        let bad = SectionTuple(vec![Poly::zero(2), c]);
        let chk = is_section(&bad, &g, mode).unwrap();
        assert_eq!(chk.witness, Some((0, 1)));
        assert!(matches!(is_section(&SectionTuple(vec![Poly::zero(2)]), &g, mode), Err(Error::IndexMismatch { .. })));
    }

    #[test]
    fn length_one_dims() {
        let aw = a1();
        let g = MomentGraph::interval(&aw, &aw.simple_reflection(1).element).unwrap();
        let formal = section_space(&g, 4, HbarMode::Formal);
        assert_eq!(formal.dims(), vec![1, 3, 5, 7, 9]);
        let rep = kernel_equality_report(&aw, &g, 4, HbarMode::SetToOne, LAG_SEARCH);
        let dims: Vec<usize> = rep.rows.iter().map(|r| r.dim_kernel).collect();
        assert_eq!(dims, vec![1, 3, 5, 7, 9]);
        assert_eq!(rep.saturation_degree, Some(0));
        assert!(rep.inclusion_everywhere());
    }

    #[test]
    fn length_two_a1_lags_by_one() {
        let aw = a1();
        let g = MomentGraph::interval(&aw, &aw.parse("s0s1").unwrap()).unwrap();
        let rep = kernel_equality_report(&aw, &g, 3, HbarMode::SetToOne, LAG_SEARCH);
        assert!(rep.inclusion_everywhere());
        assert_eq!(rep.saturation_degree, None);
        for r in &rep.rows[1..] {
            assert_eq!(r.generated_by_degree, Some(r.degree + 1), "{r:?}");
        }
        let short = kernel_equality_report(&aw, &g, 3, HbarMode::SetToOne, 0);
        assert!(short.rows[1..].iter().all(|r| r.generated_by_degree.is_none()));
    }

    #[test]
    fn separation() {
        let aw = a1();
        let s0 = aw.reflection(0, q(0)).unwrap().element;
        let rep = separates(&aw, &aw.identity(), &s0, &RationalVector::zero(1)).unwrap();
        assert!(!rep.separates && !rep.by_generators);
        let sc = AffineWeyl::from_label("A1", Isogeny::SimplyConnected).unwrap();
        let g = sc.parse("t[1] w[1]").unwrap();
        let y = RationalVector(vec![qf(1, 2)]);
        let rep = separates(&sc, &sc.identity(), &g, &y).unwrap();
        assert!(rep.separates && rep.by_generators);
        assert!(separates(&sc, &sc.identity(), &g, &RationalVector(vec![q(1)])).is_err());
    }

    #[test]
    fn beta_at_origin() {
        let aw = a1();
        let g = MomentGraph::interval(&aw, &aw.simple_reflection(0).element).unwrap();
        let rep = verify_beta_section(&aw, &RationalVector::zero(1), &g, 4).unwrap();
        assert!(rep.passed());
        let far = RationalVector(vec![q(3)]);
        assert!(matches!(verify_beta_section(&aw, &far, &g, 2), Err(Error::StabilizerNotInGraph(_))));
    }
}
