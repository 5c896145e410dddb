//! The extended affine Weyl group `L ⋊ W` acting on the dual Cartan, with
//! alcove folding, lengths, Bruhat intervals, stabilizers and alcove walks.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IMat};
use crate::rational::{fmt_q, frac_distance, integers_between, q, RationalVector, Q};
use crate::rootdata::{FiniteWeylElement, Pi1Class, RootDatum};

/// Upper bound on group closures and searches.
pub const ELEMENT_BUDGET: usize = 100_000;
const FOLD_BUDGET: usize = 100_000;

/// `γ = t_λ w`, acting by `x ↦ w(x) + ħλ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineElement {
    tag: u64,
    /// `λ` in pairing coordinates.
    pub translation: Vec<i64>,
    /// Matrix of `w` in pairing coordinates.
    pub finite: IMat,
}

impl AffineElement {
    pub fn tag(&self) -> u64 {
        self.tag
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&x| x == 0) && linalg::is_identity(&self.finite)
    }

    pub fn is_translation(&self) -> bool {
        linalg::is_identity(&self.finite)
    }
}

/// `s_{α,k} = t_{kα} s_α`, fixing `<x, α^v> = k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineReflection {
    /// Index of a positive root.
    pub root: usize,
    pub level: Q,
    pub element: AffineElement,
}

/// The alcove `γ A₀` for `γ` in the non-extended group, with a reduced word for `γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alcove {
    pub element: AffineElement,
    /// Affine simple indices: `0..r` finite, `r + c` the affine node of component `c`.
    pub word: Vec<usize>,
}

/// One of the walls of `A₀`: `<x, α^v> = level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall {
    pub root: usize,
    pub level: i64,
}

#[derive(Clone, Debug)]
pub struct AffineWeyl {
    datum: RootDatum,
    weyl: Vec<FiniteWeylElement>,
    walls: Vec<Wall>,
    interior: RationalVector,
    omegas: Vec<(Pi1Class, AffineElement)>,
}

impl AffineWeyl {
    pub fn new(datum: RootDatum) -> Result<Self> {
        let weyl = datum.enumerate_weyl()?;
        let mut walls: Vec<Wall> = (0..datum.rank()).map(|i| Wall { root: i, level: 0 }).collect();
        walls.extend(datum.highest_coroot_roots().iter().map(|&h| Wall { root: h, level: 1 }));
        let interior = datum.alcove_interior_point();
        let mut aw = AffineWeyl { datum, weyl, walls, interior, omegas: Vec::new() };
        let mut omegas = Vec::new();
        for (class, lambda) in aw.datum.pi1_elements() {
            let t = aw.translation(&lambda)?;
            let (_, omega) = aw.decompose(&t)?;
            omegas.push((class, omega));
        }
        aw.omegas = omegas;
        Ok(aw)
    }

    pub fn from_label(type_label: &str, isogeny: crate::rootdata::Isogeny) -> Result<Self> {
        Self::new(RootDatum::new(type_label, isogeny)?)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn weyl(&self) -> &[FiniteWeylElement] {
        &self.weyl
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    /// Number of affine simple reflections.
    pub fn num_simple(&self) -> usize {
        self.walls.len()
    }

    /// Length-zero elements, one per class of `L/Q`.
    pub fn length_zero_elements(&self) -> &[(Pi1Class, AffineElement)] {
        &self.omegas
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement {
            tag: self.datum.tag(),
            translation: vec![0; self.rank()],
            finite: linalg::identity(self.rank()),
        }
    }

    pub fn translation(&self, lambda: &[i64]) -> Result<AffineElement> {
        if lambda.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: lambda.len() });
        }
        if !self.datum.in_lattice(lambda) {
            return Err(Error::NotInLattice(format!("{lambda:?}")));
        }
        Ok(AffineElement { tag: self.datum.tag(), translation: lambda.to_vec(), finite: linalg::identity(self.rank()) })
    }

    pub fn finite(&self, w: &FiniteWeylElement) -> AffineElement {
        AffineElement { tag: self.datum.tag(), translation: vec![0; self.rank()], finite: w.matrix.clone() }
    }

    pub fn from_parts(&self, lambda: &[i64], w: &FiniteWeylElement) -> Result<AffineElement> {
        let t = self.translation(lambda)?;
        self.compose(&t, &self.finite(w))
    }

    pub fn finite_part(&self, g: &AffineElement) -> FiniteWeylElement {
        self.datum.weyl_element(g.finite.clone())
    }

    fn check(&self, g: &AffineElement) -> Result<()> {
        if g.tag == self.datum.tag() {
            Ok(())
        } else {
            Err(Error::MixedRootData)
        }
    }

    /// `(λ₁, w₁)(λ₂, w₂) = (λ₁ + w₁λ₂, w₁w₂)`.
    pub fn compose(&self, a: &AffineElement, b: &AffineElement) -> Result<AffineElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub(crate) fn mul(&self, a: &AffineElement, b: &AffineElement) -> AffineElement {
        let wl = linalg::mat_vec(&a.finite, &b.translation);
        AffineElement {
            tag: a.tag,
            translation: a.translation.iter().zip(&wl).map(|(x, y)| x + y).collect(),
            finite: linalg::mat_mul(&a.finite, &b.finite),
        }
    }

    pub fn invert(&self, g: &AffineElement) -> Result<AffineElement> {
        self.check(g)?;
        Ok(self.inv(g))
    }

    pub(crate) fn inv(&self, g: &AffineElement) -> AffineElement {
        let winv = linalg::inverse_unimodular(&g.finite).expect("Weyl matrices are unimodular");
        let t = linalg::mat_vec(&winv, &g.translation);
        AffineElement { tag: g.tag, translation: t.iter().map(|x| -x).collect(), finite: winv }
    }

    /// `γ^ħ(x) = w(x) + ħλ`.
    pub fn act(&self, g: &AffineElement, x: &RationalVector, hbar: &Q) -> RationalVector {
        let wx = RationalVector(linalg::mat_vec_q(&g.finite, &x.0));
        wx.add_int_scaled(&g.translation, hbar)
    }

    /// The finite part alone, as used on imaginary parts.
    pub fn act_linear(&self, g: &AffineElement, x: &RationalVector) -> RationalVector {
        RationalVector(linalg::mat_vec_q(&g.finite, &x.0))
    }

    pub fn pi1(&self, g: &AffineElement) -> Pi1Class {
        self.datum.pi1_class(&g.translation).expect("translation lies in L")
    }

    /// Whether `γ` lies in the non-extended group (translation in `Q`).
    pub fn in_affine_weyl(&self, g: &AffineElement) -> bool {
        self.datum.in_root_lattice(&g.translation)
    }

    pub fn reflection(&self, root: usize, level: Q) -> Result<AffineReflection> {
        let pos = self.datum.positive_index(root);
        let (root, level) = if pos == root { (root, level) } else { (pos, -level) };
        let alpha = &self.datum.root(root).weight;
        let shift = RationalVector::zero(self.rank()).add_int_scaled(alpha, &level);
        if !self.datum.in_lattice_q(&shift) {
            return Err(Error::NotInLattice(format!("{shift}")));
        }
        let translation = shift.0.iter().map(|c| c.to_integer().to_i64().expect("small")).collect();
        let element = AffineElement { tag: self.datum.tag(), translation, finite: self.datum.reflection_matrix(root) };
        Ok(AffineReflection { root, level, element })
    }

    /// Affine simple reflection `j` (finite nodes first, then one affine node per component).
    pub fn simple_reflection(&self, j: usize) -> AffineReflection {
        let w = &self.walls[j];
        self.reflection(w.root, q(w.level)).expect("walls of A₀ give lattice reflections")
    }

    /// Recognises `γ` as an affine reflection.
    pub fn as_reflection(&self, g: &AffineElement) -> Option<AffineReflection> {
        let pos = (0..self.datum.num_positive()).find(|&k| self.datum.reflection_matrix(k) == g.finite)?;
        let alpha = &self.datum.root(pos).weight;
        let i = alpha.iter().position(|&a| a != 0)?;
        let level = Q::new(g.translation[i].into(), alpha[i].into());
        let r = self.reflection(pos, level).ok()?;
        (r.element == *g).then_some(r)
    }

    pub fn from_word(&self, word: &[usize]) -> AffineElement {
        word.iter().fold(self.identity(), |acc, &j| self.mul(&acc, &self.simple_reflection(j).element))
    }

    fn check_regular(&self, x: &RationalVector) -> Result<()> {
        for (_, r) in self.datum.positive_roots() {
            let c = r.pairing(x);
            if c.is_integer() {
                return Err(Error::NonRegularPoint { root: format!("{:?}", r.simple), level: fmt_q(&c) });
            }
        }
        Ok(())
    }

    fn wall_value(&self, j: usize, y: &RationalVector) -> Q {
        let w = &self.walls[j];
        self.datum.root(w.root).pairing(y)
    }

    /// Lowest-index wall of `A₀` that separates `y` from the alcove.
    fn violated_wall(&self, y: &RationalVector) -> Option<usize> {
        let r = self.rank();
        (0..self.walls.len()).find(|&j| {
            let v = self.wall_value(j, y);
            if j < r {
                v.is_negative()
            } else {
                v > Q::one()
            }
        })
    }

    /// Folds a regular point into `A₀`, returning the alcove containing it.
    pub fn locate_alcove(&self, x: &RationalVector) -> Result<Alcove> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: x.len() });
        }
        self.check_regular(x)?;
        let mut y = x.clone();
        let mut word = Vec::new();
        while let Some(j) = self.violated_wall(&y) {
            if word.len() > FOLD_BUDGET {
                return Err(Error::Budget("alcove folding".into()));
            }
            let w = &self.walls[j];
            y = self.datum.reflect(&y, w.root, &q(w.level));
            word.push(j);
        }
        Ok(Alcove { element: self.from_word(&word), word })
    }

    /// `γ = u·ω` with `u` in the non-extended group and `ω A₀ = A₀`.
    pub fn decompose(&self, g: &AffineElement) -> Result<(Alcove, AffineElement)> {
        self.check(g)?;
        let alcove = self.locate_alcove(&self.act(g, &self.interior, &Q::one()))?;
        let omega = self.mul(&self.inv(&alcove.element), g);
        Ok((alcove, omega))
    }

    /// Number of affine hyperplanes separating `A₀` from `γA₀`.
    pub fn length(&self, g: &AffineElement) -> usize {
        let p = &self.interior;
        let gp = self.act(g, p, &Q::one());
        self.datum.positive_roots().map(|(_, r)| integers_between(&r.pairing(p), &r.pairing(&gp)) as usize).sum()
    }

    /// Lower Bruhat interval `{v·ω : v ≤ u}` for `w = u·ω`.
    pub fn bruhat_interval(&self, w: &AffineElement) -> Result<Vec<AffineElement>> {
        let (alcove, omega) = self.decompose(w)?;
        let mut set: HashSet<AffineElement> = HashSet::from([self.identity()]);
        for &j in &alcove.word {
            let s = self.simple_reflection(j).element;
            let new: Vec<AffineElement> = set.iter().map(|v| self.mul(v, &s)).collect();
            set.extend(new);
            if set.len() > ELEMENT_BUDGET {
                return Err(Error::Budget("Bruhat interval".into()));
            }
        }
        let mut out: Vec<AffineElement> = set.into_iter().map(|v| self.mul(&v, &omega)).collect();
        self.sort_elements(&mut out);
        Ok(out)
    }

    /// Downward closure of a set, as a union of intervals.
    pub fn bruhat_closure(&self, gens: &[AffineElement]) -> Result<Vec<AffineElement>> {
        let mut set = HashSet::new();
        for g in gens {
            set.extend(self.bruhat_interval(g)?);
        }
        let mut out: Vec<AffineElement> = set.into_iter().collect();
        self.sort_elements(&mut out);
        Ok(out)
    }

    /// First element of `Ω` whose interval is not contained in `Ω`.
    pub fn bruhat_closed_violation(&self, omega: &[AffineElement]) -> Result<Option<AffineElement>> {
        let set: HashSet<&AffineElement> = omega.iter().collect();
        for g in omega {
            for v in self.bruhat_interval(g)? {
                if !set.contains(&v) {
                    return Ok(Some(v));
                }
            }
        }
        Ok(None)
    }

    pub fn sort_key(&self, g: &AffineElement) -> (usize, Vec<usize>, Vec<i64>) {
        match self.decompose(g) {
            Ok((a, omega)) => (a.word.len(), a.word, omega.translation),
            Err(_) => (usize::MAX, Vec::new(), g.translation.clone()),
        }
    }

    pub fn sort_elements(&self, v: &mut [AffineElement]) {
        v.sort_by_cached_key(|g| self.sort_key(g));
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[AffineElement]) -> Result<Vec<AffineElement>> {
        let id = self.identity();
        let mut seen: HashSet<AffineElement> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = self.mul(&g, s);
                if seen.insert(h.clone()) {
                    if seen.len() > ELEMENT_BUDGET {
                        return Err(Error::Budget("group closure".into()));
                    }
                    queue.push_back(h);
                }
            }
        }
        let mut out: Vec<AffineElement> = seen.into_iter().collect();
        self.sort_elements(&mut out);
        Ok(out)
    }

    /// Stabilizer of `x` in the translation-by-`Q` group (`extended = false`)
    /// or the `L`-group, by running over the finite Weyl group.
    pub fn stabilizer_brute_force(&self, x: &RationalVector, extended: bool) -> Vec<AffineElement> {
        let mut out = Vec::new();
        for w in &self.weyl {
            let wx = RationalVector(linalg::mat_vec_q(&w.matrix, &x.0));
            let mu = x - &wx;
            if !mu.0.iter().all(Q::is_integer) {
                continue;
            }
            let mu_i: Vec<i64> = mu.0.iter().map(|c| c.to_integer().to_i64().expect("small")).collect();
            let ok = if extended { self.datum.in_lattice(&mu_i) } else { self.datum.in_root_lattice(&mu_i) };
            if ok {
                out.push(AffineElement { tag: self.datum.tag(), translation: mu_i, finite: w.matrix.clone() });
            }
        }
        self.sort_elements(&mut out);
        out
    }

    /// Whether `x` lies in the closure of the alcove `γA₀`.
    pub fn in_alcove_closure(&self, alcove: &Alcove, x: &RationalVector) -> bool {
        let y = self.act(&self.inv(&alcove.element), x, &Q::one());
        self.datum.in_closed_fundamental_alcove(&y)
    }

    fn alcove_of(&self, g: AffineElement) -> Alcove {
        let word = self.decompose(&g).map(|(a, _)| a.word).unwrap_or_default();
        Alcove { element: g, word }
    }

    /// Global reflection across wall `j` of the alcove `γA₀`.
    pub fn wall_reflection(&self, g: &AffineElement, j: usize) -> AffineReflection {
        let s = self.simple_reflection(j).element;
        let conj = self.mul(&self.mul(g, &s), &self.inv(g));
        self.as_reflection(&conj).expect("conjugate of a reflection is a reflection")
    }

    fn fixes(&self, g: &AffineElement, x: &RationalVector) -> bool {
        self.act(g, x, &Q::one()) == *x
    }

    /// All alcoves whose closure contains `x`, reached by crossing walls through `x`.
    pub fn alcoves_around(&self, start: &Alcove, x: &RationalVector) -> Result<Vec<Alcove>> {
        let mut seen: HashSet<AffineElement> = HashSet::from([start.element.clone()]);
        let mut order = vec![start.element.clone()];
        let mut queue = VecDeque::from([start.element.clone()]);
        while let Some(g) = queue.pop_front() {
            for j in 0..self.num_simple() {
                let r = self.wall_reflection(&g, j);
                if !self.fixes(&r.element, x) {
                    continue;
                }
                let h = self.mul(&g, &self.simple_reflection(j).element);
                if seen.insert(h.clone()) {
                    if seen.len() > ELEMENT_BUDGET {
                        return Err(Error::Budget("alcove search".into()));
                    }
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(order.into_iter().map(|g| self.alcove_of(g)).collect())
    }

    /// Shortest sequence of reflections through `x` carrying `P` to `Q`.
    pub fn alcove_walk(&self, p: &Alcove, target: &Alcove, x: &RationalVector) -> Result<Vec<AffineReflection>> {
        for a in [p, target] {
            if !self.in_alcove_closure(a, x) {
                return Err(Error::NotInClosure(self.format(&a.element)));
            }
        }
        let mut prev: HashMap<AffineElement, (AffineElement, AffineReflection)> = HashMap::new();
        let mut seen: HashSet<AffineElement> = HashSet::from([p.element.clone()]);
        let mut queue = VecDeque::from([p.element.clone()]);
        while let Some(g) = queue.pop_front() {
            if g == target.element {
                break;
            }
            for j in 0..self.num_simple() {
                let r = self.wall_reflection(&g, j);
                if !self.fixes(&r.element, x) {
                    continue;
                }
                let h = self.mul(&g, &self.simple_reflection(j).element);
                if seen.insert(h.clone()) {
                    prev.insert(h.clone(), (g.clone(), r));
                    queue.push_back(h);
                }
            }
        }
        let mut walk = Vec::new();
        let mut cur = target.element.clone();
        while cur != p.element {
            let (g, r) = prev.get(&cur).ok_or_else(|| Error::NotInClosure(self.format(&target.element)))?.clone();
            walk.push(r);
            cur = g;
        }
        walk.reverse();
        Ok(walk)
    }

    /// Alcove with `x` in its closure, obtained by pushing `x` slightly along `ρ`.
    pub fn adjacent_alcove(&self, x: &RationalVector) -> Result<Alcove> {
        let mut min_delta = Q::one();
        let mut max_ht = 1i64;
        for (_, r) in self.datum.positive_roots() {
            let c = r.pairing(x);
            if !c.is_integer() {
                min_delta = min_delta.min(frac_distance(&c));
            }
            max_ht = max_ht.max(r.coroot_height());
        }
        let eps = min_delta / q(2 * max_ht);
        let rho = vec![1; self.rank()];
        self.locate_alcove(&x.add_int_scaled(&rho, &eps))
    }

    pub fn stabilizer(&self, re: &RationalVector, im: &RationalVector) -> Result<StabilizerCertificate> {
        for v in [re, im] {
            if v.len() != self.rank() {
                return Err(Error::DimensionMismatch { expected: self.rank(), got: v.len() });
            }
        }
        let d = &self.datum;
        let mut phi_x = Vec::new();
        let mut generators = Vec::new();
        for (k, r) in d.roots().iter().enumerate() {
            let c = r.pairing(re);
            if !c.is_integer() {
                continue;
            }
            phi_x.push(k);
            if k < d.num_positive() && r.pairing(im).is_zero() {
                generators.push(self.reflection(k, c)?);
            }
        }
        let phi_pos: Vec<usize> = phi_x.iter().copied().filter(|&k| k < d.num_positive()).collect();
        let re_generators: Vec<AffineElement> = phi_pos
            .iter()
            .map(|&k| self.reflection(k, d.root(k).pairing(re)).map(|r| r.element))
            .collect::<Result<_>>()?;
        let re_elements = self.closure(&re_generators)?;
        let gen_elems: Vec<AffineElement> = generators.iter().map(|g| g.element.clone()).collect();
        let elements = self.closure(&gen_elems)?;

        let adjacent_alcove = self.adjacent_alcove(re)?;
        let wall_generators: Vec<AffineReflection> = (0..self.num_simple())
            .map(|j| self.wall_reflection(&adjacent_alcove.element, j))
            .filter(|r| self.fixes(&r.element, re))
            .collect();

        let w_image = elements.iter().map(|g| self.finite_part(g)).collect();
        let phi_simple = simple_subsystem(d, &phi_pos);
        let phi_type = subsystem_type(d, &phi_simple);
        let coroots: Vec<Vec<Q>> = phi_pos.iter().map(|&k| d.root(k).coroot.iter().map(|&c| q(c)).collect()).collect();
        let v_x = if coroots.is_empty() {
            (0..self.rank())
                .map(|i| {
                    let mut e = RationalVector::zero(self.rank());
                    e.0[i] = Q::one();
                    e
                })
                .collect()
        } else {
            linalg::nullspace(&coroots, self.rank()).into_iter().map(RationalVector).collect()
        };
        Ok(StabilizerCertificate {
            re: re.clone(),
            im: im.clone(),
            generators,
            elements,
            re_elements,
            adjacent_alcove,
            wall_generators,
            w_image,
            phi_x,
            phi_simple,
            phi_type,
            v_x,
        })
    }

    /// Affine simple name: `s1..sr` finite, `s0` (or `s0_c` for several components) affine.
    pub fn simple_name(&self, j: usize) -> String {
        let r = self.rank();
        if j < r {
            format!("s{}", j + 1)
        } else if self.walls.len() == r + 1 {
            "s0".to_string()
        } else {
            format!("s0_{}", j - r + 1)
        }
    }

    pub fn word_name(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|&j| self.simple_name(j)).collect()
        }
    }

    /// Parses a word such as `s0s1`, `s1 s0_2` or `e`.
    pub fn parse_word(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Vec::new());
        }
        let bad = |msg: &str| Error::Parse(format!("bad word `{s}`: {msg}"));
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        let mut word = Vec::new();
        let r = self.rank();
        while i < chars.len() {
            match chars[i] {
                ' ' | '*' | '.' | ',' => i += 1,
                's' => {
                    i += 1;
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: usize = chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("index"))?;
                    let mut comp = None;
                    if i < chars.len() && chars[i] == '_' {
                        i += 1;
                        let start = i;
                        while i < chars.len() && chars[i].is_ascii_digit() {
                            i += 1;
                        }
                        let c: usize =
                            chars[start..i].iter().collect::<String>().parse().map_err(|_| bad("component"))?;
                        comp = Some(c);
                    }
                    let j = match (n, comp) {
                        (0, None) if self.walls.len() == r + 1 => r,
                        (0, Some(c)) if c >= 1 && r + c <= self.walls.len() => r + c - 1,
                        (n, None) if (1..=r).contains(&n) => n - 1,
                        _ => return Err(bad("no such generator")),
                    };
                    word.push(j);
                }
                _ => return Err(bad("unexpected character")),
            }
        }
        Ok(word)
    }

    /// `t[λ] w[word]` with `λ` in pairing coordinates and a 1-based finite word.
    pub fn format(&self, g: &AffineElement) -> String {
        let lambda: Vec<String> = g.translation.iter().map(ToString::to_string).collect();
        let word: Vec<String> = self.finite_part(g).word.iter().map(|i| (i + 1).to_string()).collect();
        format!("t[{}] w[{}]", lambda.join(","), word.join(","))
    }

    /// Parses `t[λ] w[word]`, either part optional, or an affine word like `s0s1`.
    pub fn parse(&self, s: &str) -> Result<AffineElement> {
        let s = s.trim();
        if !s.contains('[') {
            let word = self.parse_word(s)?;
            return Ok(self.from_word(&word));
        }
        let bad = |msg: &str| Error::Parse(format!("bad element `{s}`: {msg}"));
        let mut lambda = vec![0; self.rank()];
        let mut word = Vec::new();
        let mut rest = s;
        while !rest.trim().is_empty() {
            rest = rest.trim_start();
            let (head, tail) = rest.split_once('[').ok_or_else(|| bad("missing ["))?;
            let (body, after) = tail.split_once(']').ok_or_else(|| bad("missing ]"))?;
            let items: Vec<&str> = body.split(',').map(str::trim).filter(|x| !x.is_empty()).collect();
            match head.trim() {
                "t" => {
                    if items.len() == 1 && items[0] == "0" {
                        lambda = vec![0; self.rank()];
                    } else {
                        if items.len() != self.rank() {
                            return Err(Error::DimensionMismatch { expected: self.rank(), got: items.len() });
                        }
                        lambda = items
                            .iter()
                            .map(|x| x.parse::<i64>().map_err(|_| bad("translation entry")))
                            .collect::<Result<_>>()?;
                    }
                }
                "w" => {
                    word = items
                        .iter()
                        .map(|x| match x.parse::<usize>() {
                            Ok(n) if (1..=self.rank()).contains(&n) => Ok(n - 1),
                            _ => Err(bad("word entry")),
                        })
                        .collect::<Result<_>>()?;
                }
                _ => return Err(bad("expected t[..] or w[..]")),
            }
            rest = after;
        }
        let w = self.datum.weyl_from_word(&word);
        self.from_parts(&lambda, &w)
    }

    pub fn reflection_name(&self, r: &AffineReflection) -> String {
        format!("s[{:?},{}]", self.datum.root(r.root).simple, fmt_q(&r.level))
    }
}

/// Simple roots of the subsystem with positive roots `pos`.
pub fn simple_subsystem(d: &RootDatum, pos: &[usize]) -> Vec<usize> {
    let set: BTreeSet<usize> = pos.iter().copied().collect();
    pos.iter()
        .copied()
        .filter(|&b| {
            let m = d.reflection_matrix(b);
            set.iter().filter(|&&a| a != b).all(|&a| {
                let img = linalg::mat_vec(&m, &d.root(a).weight);
                d.root_index_by_weight(&img).is_some_and(|k| set.contains(&k))
            })
        })
        .collect()
}

/// Dynkin type of a simple system, e.g. `A2` or `A1xA1`; `trivial` when empty.
pub fn subsystem_type(d: &RootDatum, simple: &[usize]) -> String {
    let n = simple.len();
    if n == 0 {
        return "trivial".to_string();
    }
    let a = |i: usize, j: usize| -> i64 {
        let (bi, bj) = (d.root(simple[i]), d.root(simple[j]));
        bi.coroot.iter().zip(&bj.weight).map(|(c, w)| c * w).sum()
    };
    let mut comp = vec![usize::MAX; n];
    let mut labels = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = labels.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if comp[j] == usize::MAX && a(i, j) != 0 {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        let m = members.len();
        let max_bond = members
            .iter()
            .flat_map(|&i| members.iter().map(move |&j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| a(i, j) * a(j, i))
            .max()
            .unwrap_or(0);
        let branch = members.iter().any(|&i| members.iter().filter(|&&j| j != i && a(i, j) != 0).count() > 2);
        labels.push(match (m, max_bond) {
            (1, _) => "A1".to_string(),
            (2, 3) => "G2".to_string(),
            (2, 2) => "B2".to_string(),
            (_, 2) => format!("BC{m}"),
            _ if branch => format!("D{m}"),
            _ => format!("A{m}"),
        });
    }
    labels.sort();
    labels.join("x")
}

#[derive(Clone, Debug)]
pub struct StabilizerCertificate {
    pub re: RationalVector,
    pub im: RationalVector,
    /// Reflections through `Re` whose finite part fixes `Im`.
    pub generators: Vec<AffineReflection>,
    /// `Γ^x`.
    pub elements: Vec<AffineElement>,
    /// `Γ^{Re(x)}`.
    pub re_elements: Vec<AffineElement>,
    pub adjacent_alcove: Alcove,
    /// Walls of the adjacent alcove passing through `Re`.
    pub wall_generators: Vec<AffineReflection>,
    pub w_image: Vec<FiniteWeylElement>,
    /// Roots with `<Re, α^v> ∈ ℤ`.
    pub phi_x: Vec<usize>,
    pub phi_simple: Vec<usize>,
    pub phi_type: String,
    /// Common fixed space of the finite parts of `Γ^{Re(x)}`.
    pub v_x: Vec<RationalVector>,
}

/// Outcome of each certificate invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateChecks {
    pub generators_fix_x: bool,
    pub generated_by_reflections: bool,
    pub parabolic: bool,
    pub injective: bool,
    pub phi_closed: bool,
    pub alcove_count: usize,
    pub alcove_count_matches: bool,
}

impl CertificateChecks {
    pub fn all_pass(&self) -> bool {
        self.generators_fix_x
            && self.generated_by_reflections
            && self.parabolic
            && self.injective
            && self.phi_closed
            && self.alcove_count_matches
    }
}

impl StabilizerCertificate {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Re-derives each invariant independently of how the certificate was built.
    pub fn verify(&self, aw: &AffineWeyl) -> Result<CertificateChecks> {
        let d = aw.datum();
        let fixes_im = |g: &AffineElement| aw.act_linear(g, &self.im) == self.im;
        let generators_fix_x = self.generators.iter().all(|r| aw.fixes(&r.element, &self.re) && fixes_im(&r.element));

        let brute_re: HashSet<AffineElement> = aw.stabilizer_brute_force(&self.re, false).into_iter().collect();
        let brute_x: HashSet<AffineElement> = brute_re.iter().filter(|g| fixes_im(g)).cloned().collect();
        let elements: HashSet<AffineElement> = self.elements.iter().cloned().collect();
        let re_elements: HashSet<AffineElement> = self.re_elements.iter().cloned().collect();
        let generated_by_reflections = elements == brute_x && re_elements == brute_re;

        let walls: Vec<AffineElement> = self.wall_generators.iter().map(|r| r.element.clone()).collect();
        let from_walls: HashSet<AffineElement> = aw.closure(&walls)?.into_iter().collect();
        let walls_x: HashSet<AffineElement> = from_walls.iter().filter(|g| fixes_im(g)).cloned().collect();
        let parabolic =
            aw.in_alcove_closure(&self.adjacent_alcove, &self.re) && from_walls == brute_re && walls_x == brute_x;

        let images: HashSet<&IMat> = self.w_image.iter().map(|w| &w.matrix).collect();
        let injective = images.len() == self.elements.len() && self.w_image.len() == self.elements.len();

        let phi: HashSet<usize> = self.phi_x.iter().copied().collect();
        let phi_closed = self.phi_x.iter().all(|&b| {
            phi.contains(&d.negate_index(b))
                && self.phi_x.iter().all(|&a| {
                    let img = linalg::mat_vec(&d.reflection_matrix(b), &d.root(a).weight);
                    d.root_index_by_weight(&img).is_some_and(|k| phi.contains(&k))
                })
        });

        let around = aw.alcoves_around(&self.adjacent_alcove, &self.re)?;
        let alcove_count = around.len();
        Ok(CertificateChecks {
            generators_fix_x,
            generated_by_reflections,
            parabolic,
            injective,
            phi_closed,
            alcove_count,
            alcove_count_matches: alcove_count == brute_re.len(),
        })
    }

    pub fn record(&self, aw: &AffineWeyl) -> Result<CertificateRecord> {
        let d = aw.datum();
        let refl = |r: &AffineReflection| ReflectionRecord {
            root: d.root(r.root).simple.clone(),
            level: fmt_q(&r.level),
            element: aw.format(&r.element),
        };
        Ok(CertificateRecord {
            type_label: d.label().to_string(),
            isogeny: d.isogeny_label().to_string(),
            re: self.re.clone(),
            im: self.im.clone(),
            order: self.elements.len(),
            re_order: self.re_elements.len(),
            generators: self.generators.iter().map(refl).collect(),
            elements: self.elements.iter().map(|g| aw.format(g)).collect(),
            adjacent_alcove: aw.word_name(&self.adjacent_alcove.word),
            wall_generators: self.wall_generators.iter().map(refl).collect(),
            w_image: self.w_image.iter().map(|w| w.word.iter().map(|i| i + 1).collect()).collect(),
            phi_x: self.phi_x.iter().map(|&k| d.root(k).simple.clone()).collect(),
            phi_type: self.phi_type.clone(),
            v_x: self.v_x.clone(),
            checks: self.verify(aw)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionRecord {
    pub root: Vec<i64>,
    pub level: String,
    pub element: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub type_label: String,
    pub isogeny: String,
    pub re: RationalVector,
    pub im: RationalVector,
    pub order: usize,
    pub re_order: usize,
    pub generators: Vec<ReflectionRecord>,
    pub elements: Vec<String>,
    pub adjacent_alcove: String,
    pub wall_generators: Vec<ReflectionRecord>,
    pub w_image: Vec<Vec<usize>>,
    pub phi_x: Vec<Vec<i64>>,
    pub phi_type: String,
    pub v_x: Vec<RationalVector>,
    pub checks: CertificateChecks,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkRecord {
    pub from: String,
    pub to: String,
    pub point: RationalVector,
    pub reflections: Vec<ReflectionRecord>,
    pub alcoves: Vec<String>,
}

impl AffineWeyl {
    pub fn walk_record(&self, p: &Alcove, target: &Alcove, x: &RationalVector) -> Result<WalkRecord> {
        let walk = self.alcove_walk(p, target, x)?;
        let mut cur = p.element.clone();
        let mut alcoves = vec![self.word_name(&p.word)];
        let mut reflections = Vec::new();
        for r in &walk {
            cur = self.mul(&r.element, &cur);
            alcoves.push(self.word_name(&self.alcove_of(cur.clone()).word));
            reflections.push(ReflectionRecord {
                root: self.datum.root(r.root).simple.clone(),
                level: fmt_q(&r.level),
                element: self.format(&r.element),
            });
        }
        Ok(WalkRecord {
            from: self.word_name(&p.word),
            to: self.word_name(&target.word),
            point: x.clone(),
            reflections,
            alcoves,
        })
    }

    pub fn alcove_from_word(&self, word: &[usize]) -> Alcove {
        self.alcove_of(self.from_word(word))
    }
}

impl fmt::Display for Alcove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(ToString::to_string).collect();
        write!(f, "alcove[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qf;
    use crate::rootdata::Isogeny;

    fn aw(label: &str) -> AffineWeyl {
        AffineWeyl::from_label(label, Isogeny::Adjoint).unwrap()
    }

    fn pt(v: &[Q]) -> RationalVector {
        RationalVector(v.to_vec())
    }

    #[test]
    fn composition_examples() {
        let a = aw("A1");
        let s1 = a.reflection(0, q(1)).unwrap().element;
        let s0 = a.reflection(0, q(0)).unwrap().element;
        let t = a.compose(&s1, &s0).unwrap();
        assert_eq!(t, a.translation(&[2]).unwrap());
        let g = a.parse("t[2] w[1]").unwrap();
        assert!(a.compose(&g, &a.invert(&g).unwrap()).unwrap().is_identity());
        let other = aw("A2");
        assert_eq!(a.compose(&g, &other.identity()), Err(Error::MixedRootData));
    }

    #[test]
    fn act_matches_reflect() {
        let a = aw("A1");
        let s = a.reflection(0, q(1)).unwrap().element;
        let x = pt(&[q(3)]);
        assert_eq!(a.act(&s, &x, &Q::one()), a.datum().reflect(&x, 0, &q(1)));
        assert_eq!(a.act(&s, &x, &Q::zero()), pt(&[q(-3)]));
    }

    #[test]
    fn lengths() {
        let a = aw("A1");
        assert_eq!(a.length(&a.identity()), 0);
        assert_eq!(a.length(&a.translation(&[2]).unwrap()), 2);
        for j in 0..a.num_simple() {
            assert_eq!(a.length(&a.simple_reflection(j).element), 1);
        }
        let g2 = aw("G2");
        for j in 0..g2.num_simple() {
            assert_eq!(g2.length(&g2.simple_reflection(j).element), 1);
        }
    }

    #[test]
    fn locate_examples() {
        let a = aw("A1");
        let al = a.locate_alcove(&pt(&[qf(3, 2)])).unwrap();
        assert_eq!(al.element, a.reflection(0, q(1)).unwrap().element);
        let al = a.locate_alcove(&pt(&[qf(-1, 2)])).unwrap();
        assert_eq!(al.element, a.reflection(0, q(0)).unwrap().element);
        assert!(a.locate_alcove(&pt(&[qf(1, 3)])).unwrap().word.is_empty());
        assert!(matches!(a.locate_alcove(&pt(&[q(1)])), Err(Error::NonRegularPoint { .. })));
    }

    #[test]
    fn intervals() {
        let a = aw("A1");
        assert_eq!(a.bruhat_interval(&a.identity()).unwrap().len(), 1);
        let w = a.parse("s0s1").unwrap();
        let iv = a.bruhat_interval(&w).unwrap();
        assert_eq!(iv.len(), 4);
        assert!(a.bruhat_closed_violation(&iv).unwrap().is_none());
        assert!(a.bruhat_closed_violation(&iv[1..]).unwrap().is_some());
    }

    #[test]
    fn notation_round_trip() {
        let a = AffineWeyl::from_label("A2", Isogeny::SimplyConnected).unwrap();
        for s in ["t[1,0] w[1]", "t[0,0] w[1,2]", "t[2,-1] w[]"] {
            let g = a.parse(s).unwrap();
            assert_eq!(a.format(&g), s);
        }
        assert!(a.parse("t[1] w[]").is_err());
        assert!(a.parse("s3").is_err());
        assert_eq!(a.parse("s0").unwrap(), a.simple_reflection(2).element);
    }

    #[test]
    fn stabilizer_origin_and_regular() {
        let a = aw("A2");
        let z = RationalVector::zero(2);
        let cert = a.stabilizer(&z, &z).unwrap();
        assert_eq!(cert.order(), 6);
        assert!(cert.verify(&a).unwrap().all_pass());
        let x = pt(&[qf(1, 5), qf(1, 7)]);
        let cert = a.stabilizer(&x, &z).unwrap();
        assert_eq!(cert.order(), 1);
        assert!(cert.verify(&a).unwrap().all_pass());
    }

    #[test]
    fn length_zero_elements() {
        let a = AffineWeyl::from_label("A2", Isogeny::SimplyConnected).unwrap();
        let omegas = a.length_zero_elements();
        assert_eq!(omegas.len(), 3);
        for (class, w) in omegas {
            assert_eq!(a.length(w), 0);
            assert_eq!(a.pi1(w), *class);
        }
    }

    #[test]
    fn walk_around_vertex() {
        let a = aw("A2");
        let x = RationalVector::zero(2);
        let p = a.alcove_from_word(&[]);
        let w0 = a.datum().weyl_from_word(&[0, 1, 0]);
        let target = a.alcove_of(a.finite(&w0));
        let walk = a.alcove_walk(&p, &target, &x).unwrap();
        assert_eq!(walk.len(), 3);
        assert!(a.alcove_walk(&p, &p, &x).unwrap().is_empty());
    }
}
