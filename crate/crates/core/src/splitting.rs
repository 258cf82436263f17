//! Lifting `Josp(n|2m)` through a square-zero extension.
//!
//! With `N² = 0` a correction `τ: model → N` turns the section `σ` into a
//! homomorphism iff, for every pair `x ≤ y` of model basis elements,
//!
//! ```text
//! τ(xy) − σ(x)·τ(y) − τ(x)·σ(y) = σ(x)σ(y) − σ(xy)      (in N)
//! ```
//!
//! so splitting is a single linear system over ℚ.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bimodule::{build_bimodule, split_null_extension, RadicalKind, Superbimodule};
use crate::error::{usage, Error, Result};
use crate::josp::{build_josp_table, JospIndex};
use crate::ratlinalg::{dot, half, int, is_zero_vec, rank, solve_linear, LinearSolution, RatMatrix, Rational};
use crate::superalgebra::{
    check_super_jordan, sparse_from_dense, Element, IdentityReport, Parity, Superalgebra, Violation,
};

/// An extension `E ⊇ N` with `N² = 0`, together with the model algebra and
/// a section `σ` identifying `E/N` with it.
#[derive(Clone, Debug)]
pub struct MarkedExtension {
    algebra: Superalgebra,
    ideal: Vec<usize>,
    model: Superalgebra,
    /// `section[a]` is `σ(model_a)` in the coordinates of `algebra`.
    section: Vec<Vec<Rational>>,
}

impl MarkedExtension {
    /// Validates: `N` is a graded ideal with `N² = 0`, `σ` is parity
    /// preserving and multiplicative modulo `N`, and `σ(model) ⊕ N = E`.
    pub fn new(
        algebra: Superalgebra,
        ideal: Vec<usize>,
        model: Superalgebra,
        section: Vec<Vec<Rational>>,
    ) -> Result<Self> {
        let dim = algebra.dim();
        let mut in_ideal = vec![false; dim];
        for &r in &ideal {
            if r >= dim || std::mem::replace(&mut in_ideal[r], true) {
                return usage(format!("ideal index {r} out of range or repeated"));
            }
        }
        for i in 0..dim {
            for &r in &ideal {
                for (k, _) in algebra.product(i, r).iter().chain(algebra.product(r, i)) {
                    if !in_ideal[*k] {
                        return usage(format!(
                            "{}·{} leaves the ideal",
                            algebra.label(i),
                            algebra.label(r)
                        ));
                    }
                }
            }
        }
        for &r in &ideal {
            for &s in &ideal {
                if !algebra.product(r, s).is_empty() {
                    return usage(format!(
                        "ideal is not square-zero: {}·{} ≠ 0",
                        algebra.label(r),
                        algebra.label(s)
                    ));
                }
            }
        }
        if section.len() != model.dim() {
            return Err(Error::Dimension {
                expected: model.dim(),
                found: section.len(),
                context: "section length",
            });
        }
        for (a, v) in section.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: v.len(),
                    context: "section image coordinates",
                });
            }
            let p = Element::from_coords(v.clone()).homogeneous_parity(&algebra);
            if p.is_some_and(|p| p != model.parity(a)) {
                return usage(format!("section changes the parity of {}", model.label(a)));
            }
        }
        let ext = MarkedExtension {
            algebra,
            ideal,
            model,
            section,
        };
        for x in 0..ext.model.dim() {
            for y in 0..ext.model.dim() {
                let defect = ext.defect(x, y);
                if ext.outside_ideal(&defect) {
                    return usage(format!(
                        "section is not multiplicative modulo the ideal at ({}, {})",
                        ext.model.label(x),
                        ext.model.label(y)
                    ));
                }
            }
        }
        let mut rows = ext.section.clone();
        for &r in &ext.ideal {
            let mut e = vec![Rational::zero(); dim];
            e[r] = Rational::one();
            rows.push(e);
        }
        if rows.len() != dim || rank(&RatMatrix::from_rows(rows)?) != dim {
            return usage("section image and ideal are not complementary");
        }
        Ok(ext)
    }

    pub fn algebra(&self) -> &Superalgebra {
        &self.algebra
    }

    pub fn ideal(&self) -> &[usize] {
        &self.ideal
    }

    pub fn model(&self) -> &Superalgebra {
        &self.model
    }

    pub fn section(&self) -> &[Vec<Rational>] {
        &self.section
    }

    pub fn rad_dim(&self) -> usize {
        self.ideal.len()
    }

    pub fn rad_parity(&self, r: usize) -> Parity {
        self.algebra.parity(self.ideal[r])
    }

    fn outside_ideal(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        for &r in &self.ideal {
            w[r] = Rational::zero();
        }
        !is_zero_vec(&w)
    }

    /// `σ(x)σ(y) − σ(xy)`, in E coordinates.
    fn defect(&self, x: usize, y: usize) -> Vec<Rational> {
        let mut out = self.algebra.mul_dense(&self.section[x], &self.section[y]);
        for (z, c) in self.model.product(x, y) {
            for (o, s) in out.iter_mut().zip(&self.section[*z]) {
                if !s.is_zero() {
                    *o -= c * s;
                }
            }
        }
        out
    }

    fn rad_coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.ideal.iter().map(|&r| v[r].clone()).collect()
    }

    fn rad_embed(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.algebra.dim()];
        for (&r, c) in self.ideal.iter().zip(coords) {
            v[r] = c.clone();
        }
        v
    }

    /// `(left, right)` with `left[r][s] = (σ(a)·n_s)_r`, `right[r][s] = (n_s·σ(a))_r`.
    fn action_on_ideal(&self, a: usize) -> (RatMatrix, RatMatrix) {
        let k = self.rad_dim();
        let sa = sparse_from_dense(&self.section[a]);
        let (mut left, mut right) = (RatMatrix::zeros(k, k), RatMatrix::zeros(k, k));
        let pos: HashMap<usize, usize> = self.ideal.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        for (s, &ns) in self.ideal.iter().enumerate() {
            let e = [(ns, Rational::one())];
            for (kk, c) in self.algebra.mul_sparse(&sa, &e) {
                left.set(pos[&kk], s, c);
            }
            for (kk, c) in self.algebra.mul_sparse(&e, &sa) {
                right.set(pos[&kk], s, c);
            }
        }
        (left, right)
    }
}

/// `τ[a][r]`: the `N`-component added to `σ(model_a)`; zero unless parities match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionMap {
    coeffs: RatMatrix,
}

impl CorrectionMap {
    pub fn zero(ext: &MarkedExtension) -> Self {
        CorrectionMap {
            coeffs: RatMatrix::zeros(ext.model.dim(), ext.rad_dim()),
        }
    }

    pub fn new(ext: &MarkedExtension, coeffs: RatMatrix) -> Result<Self> {
        if coeffs.rows() != ext.model.dim() || coeffs.cols() != ext.rad_dim() {
            return Err(Error::Dimension {
                expected: ext.model.dim() * ext.rad_dim(),
                found: coeffs.rows() * coeffs.cols(),
                context: "correction map shape",
            });
        }
        for a in 0..coeffs.rows() {
            for r in 0..coeffs.cols() {
                if !coeffs.get(a, r).is_zero() && ext.model.parity(a) != ext.rad_parity(r) {
                    return usage(format!("correction of {} is not parity preserving", ext.model.label(a)));
                }
            }
        }
        Ok(CorrectionMap { coeffs })
    }

    /// Integer coefficients in `-bound..=bound` on every parity-matched slot.
    pub fn random(ext: &MarkedExtension, rng: &mut impl Rng, bound: i64) -> Self {
        let mut coeffs = RatMatrix::zeros(ext.model.dim(), ext.rad_dim());
        for (a, r) in unknown_slots(ext) {
            coeffs.set(a, r, int(rng.gen_range(-bound..=bound)));
        }
        CorrectionMap { coeffs }
    }

    pub fn get(&self, a: usize, r: usize) -> &Rational {
        self.coeffs.get(a, r)
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn negated(&self) -> Self {
        CorrectionMap {
            coeffs: self.coeffs.scale(&int(-1)),
        }
    }

    /// Nonzero `(model index, radical position, value)`.
    pub fn entries(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for a in 0..self.coeffs.rows() {
            for r in 0..self.coeffs.cols() {
                let c = self.coeffs.get(a, r);
                if !c.is_zero() {
                    out.push((a, r, c.clone()));
                }
            }
        }
        out
    }
}

fn unknown_slots(ext: &MarkedExtension) -> Vec<(usize, usize)> {
    (0..ext.model.dim())
        .flat_map(|a| (0..ext.rad_dim()).map(move |r| (a, r)))
        .filter(|&(a, r)| ext.model.parity(a) == ext.rad_parity(r))
        .collect()
}

/// The lifting equations `A·τ = b`.
#[derive(Clone, Debug)]
pub struct SplittingSystem {
    pub matrix: RatMatrix,
    pub rhs: Vec<Rational>,
    /// Column `c` is `τ[unknowns[c].0][unknowns[c].1]`.
    pub unknowns: Vec<(usize, usize)>,
    /// Row `i` is radical coordinate `rows[i].2` of the pair `(rows[i].0, rows[i].1)`.
    pub rows: Vec<(usize, usize, usize)>,
}

impl SplittingSystem {
    pub fn unknown_index(&self, a: usize, r: usize) -> Option<usize> {
        self.unknowns.iter().position(|&u| u == (a, r))
    }

    fn row_indices(&self, x: usize, y: usize) -> Vec<usize> {
        let (x, y) = (x.min(y), x.max(y));
        (0..self.rows.len())
            .filter(|&i| (self.rows[i].0, self.rows[i].1) == (x, y))
            .collect()
    }

    /// The rows belonging to one unordered pair.
    pub fn pair_block(&self, x: usize, y: usize) -> (RatMatrix, Vec<Rational>) {
        let idx = self.row_indices(x, y);
        let b = idx.iter().map(|&i| self.rhs[i].clone()).collect();
        (self.matrix.select_rows(&idx), b)
    }

    /// `wᵀA = 0` and `wᵀb ≠ 0`.
    pub fn certifies(&self, witness: &[Rational]) -> bool {
        witness.len() == self.rows.len()
            && self.matrix.left_mul_vec(witness).is_ok_and(|v| is_zero_vec(&v))
            && !dot(witness, &self.rhs).is_zero()
    }

    pub fn correction(&self, ext: &MarkedExtension, values: &[Rational]) -> CorrectionMap {
        let mut coeffs = RatMatrix::zeros(ext.model.dim(), ext.rad_dim());
        for (&(a, r), v) in self.unknowns.iter().zip(values) {
            coeffs.set(a, r, v.clone());
        }
        CorrectionMap { coeffs }
    }
}

pub fn splitting_system(ext: &MarkedExtension) -> SplittingSystem {
    let (md, k) = (ext.model.dim(), ext.rad_dim());
    let unknowns = unknown_slots(ext);
    let col: HashMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(c, u)| (*u, c)).collect();
    let actions: Vec<(RatMatrix, RatMatrix)> = (0..md).into_par_iter().map(|a| ext.action_on_ideal(a)).collect();
    let pairs: Vec<(usize, usize)> = (0..md).flat_map(|x| (x..md).map(move |y| (x, y))).collect();
    let blocks: Vec<Vec<(Vec<Rational>, Rational)>> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let b = ext.rad_coords(&ext.defect(x, y));
            (0..k)
                .map(|r| {
                    let mut row = vec![Rational::zero(); unknowns.len()];
                    for (z, c) in ext.model.product(x, y) {
                        if let Some(&u) = col.get(&(*z, r)) {
                            row[u] += c;
                        }
                    }
                    for s in 0..k {
                        let l = actions[x].0.get(r, s);
                        if !l.is_zero() {
                            if let Some(&u) = col.get(&(y, s)) {
                                row[u] -= l;
                            }
                        }
                        let rt = actions[y].1.get(r, s);
                        if !rt.is_zero() {
                            if let Some(&u) = col.get(&(x, s)) {
                                row[u] -= rt;
                            }
                        }
                    }
                    (row, b[r].clone())
                })
                .collect()
        })
        .collect();
    let mut rows = Vec::with_capacity(pairs.len() * k);
    let mut coeff_rows = Vec::with_capacity(pairs.len() * k);
    let mut rhs = Vec::with_capacity(pairs.len() * k);
    for (&(x, y), block) in pairs.iter().zip(blocks) {
        for (r, (row, b)) in block.into_iter().enumerate() {
            rows.push((x, y, r));
            coeff_rows.push(row);
            rhs.push(b);
        }
    }
    let matrix = if coeff_rows.is_empty() {
        RatMatrix::zeros(0, unknowns.len())
    } else {
        RatMatrix::from_rows(coeff_rows).expect("rows of equal length")
    };
    SplittingSystem {
        matrix,
        rhs,
        unknowns,
        rows,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitCertificate {
    Split(CorrectionMap),
    NoSplit {
        /// Row combination with `wᵀA = 0`, `wᵀb = 1`.
        witness: Vec<Rational>,
        /// Model pairs whose rows carry nonzero weight in the witness.
        violated_pairs: Vec<(usize, usize)>,
    },
}

impl SplitCertificate {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitCertificate::Split(_))
    }
}

pub fn solve_splitting(ext: &MarkedExtension) -> Result<SplitCertificate> {
    let sys = splitting_system(ext);
    if sys.unknowns.is_empty() {
        // nothing to adjust: split iff already a homomorphism
        return Ok(if is_zero_vec(&sys.rhs) {
            SplitCertificate::Split(CorrectionMap::zero(ext))
        } else {
            let i = sys.rhs.iter().position(|c| !c.is_zero()).expect("nonzero entry");
            let mut witness = vec![Rational::zero(); sys.rows.len()];
            witness[i] = sys.rhs[i].recip();
            SplitCertificate::NoSplit {
                witness,
                violated_pairs: vec![(sys.rows[i].0, sys.rows[i].1)],
            }
        });
    }
    Ok(match solve_linear(&sys.matrix, &sys.rhs)? {
        LinearSolution::Solved { particular, .. } => SplitCertificate::Split(sys.correction(ext, &particular)),
        LinearSolution::Inconsistent { witness } => {
            let mut violated_pairs: Vec<(usize, usize)> = witness
                .iter()
                .zip(&sys.rows)
                .filter(|(w, _)| !w.is_zero())
                .map(|(_, &(x, y, _))| (x, y))
                .collect();
            violated_pairs.dedup();
            SplitCertificate::NoSplit {
                witness,
                violated_pairs,
            }
        }
    })
}

/// `σ(a) + τ(a)` for every model basis element.
pub fn corrected_basis(ext: &MarkedExtension, tau: &CorrectionMap) -> Result<Vec<Vec<Rational>>> {
    if tau.coeffs.rows() != ext.model.dim() || tau.coeffs.cols() != ext.rad_dim() {
        return Err(Error::Dimension {
            expected: ext.model.dim() * ext.rad_dim(),
            found: tau.coeffs.rows() * tau.coeffs.cols(),
            context: "correction map shape",
        });
    }
    Ok((0..ext.model.dim())
        .map(|a| {
            let t = ext.rad_embed(tau.coeffs.row(a));
            ext.section[a].iter().zip(t).map(|(s, t)| s + t).collect()
        })
        .collect())
}

/// Independent check that the corrected elements multiply exactly like
/// the model and, together with `N`, form a basis of `E`.
pub fn verify_splitting(ext: &MarkedExtension, tau: &CorrectionMap) -> Result<bool> {
    let s = corrected_basis(ext, tau)?;
    let dim = ext.algebra.dim();
    for x in 0..ext.model.dim() {
        for y in 0..ext.model.dim() {
            let lhs = ext.algebra.mul_dense(&s[x], &s[y]);
            let mut rhs = vec![Rational::zero(); dim];
            for (z, c) in ext.model.product(x, y) {
                for (o, v) in rhs.iter_mut().zip(&s[*z]) {
                    *o += c * v;
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    let mut rows = s;
    for &r in &ext.ideal {
        let mut e = vec![Rational::zero(); dim];
        e[r] = Rational::one();
        rows.push(e);
    }
    Ok(rows.len() == dim && rank(&RatMatrix::from_rows(rows)?) == dim)
}

/// `Josp` symbol with its canonical sign, `None` for symbols that vanish.
fn canonical(idx: JospIndex) -> Option<(i64, JospIndex)> {
    use JospIndex::*;
    match idx {
        H(i, j) => Some((1, H(i.min(j), i.max(j)))),
        S(p, q) | St(p, q) if p == q => None,
        S(p, q) if p > q => Some((-1, S(q, p))),
        St(p, q) if p > q => Some((-1, St(q, p))),
        other => Some((1, other)),
    }
}

struct LemmaRelation {
    lhs: (JospIndex, JospIndex),
    rhs: Vec<(Rational, JospIndex)>,
}

fn lemma_relations(n: usize, m: usize) -> Vec<LemmaRelation> {
    use JospIndex::*;
    let hf = half;
    let rel = |x, y, rhs: Vec<(Rational, JospIndex)>| LemmaRelation { lhs: (x, y), rhs };
    let mut out = Vec::new();
    for i in 1..=n {
        for p in 1..=m {
            for j in 1..=n {
                out.push(rel(U(i, p), H(i, j), vec![(hf(), U(j, p))]));
                out.push(rel(K(i, p), H(i, j), vec![(hf(), K(j, p))]));
                if i != j {
                    out.push(rel(U(i, p), K(j, p), vec![(-hf(), H(i, j))]));
                }
            }
            for q in 1..=m {
                out.push(rel(U(i, p), V(p, q), vec![(hf(), U(i, q))]));
                out.push(rel(K(i, p), V(q, p), vec![(hf(), K(i, q))]));
                if p != q {
                    out.push(rel(U(i, p), S(p, q), vec![(hf(), K(i, q))]));
                    out.push(rel(K(i, p), St(p, q), vec![(hf(), U(i, q))]));
                    out.push(rel(U(i, p), U(i, q), vec![(hf(), St(p, q))]));
                    out.push(rel(K(i, p), K(i, q), vec![(hf(), S(q, p))]));
                    out.push(rel(U(i, p), K(i, q), vec![(hf(), V(q, p))]));
                }
            }
            out.push(rel(U(i, p), K(i, p), vec![(hf(), V(p, p)), (int(-1), H(i, i))]));
        }
    }
    out
}

fn josp_shape(model: &Superalgebra) -> Result<(usize, usize, HashMap<JospIndex, usize>)> {
    let mut index = HashMap::new();
    let (mut n, mut m) = (0, 0);
    for (a, l) in model.labels().iter().enumerate() {
        let idx = JospIndex::parse(l)
            .ok_or_else(|| Error::Usage(format!("model label {l} is not a Josp basis symbol")))?;
        match idx {
            JospIndex::H(_, j) => n = n.max(j),
            JospIndex::V(p, q) => m = m.max(p).max(q),
            _ => {}
        }
        index.insert(idx, a);
    }
    Ok((n, m, index))
}

/// Evaluates the relations among the lifted `U, K` with `H, V, S, S̃` inside
/// `E`. Violation indices are `[relation number, x, y]` with model indices.
pub fn verify_lemma_relations(ext: &MarkedExtension, tau: &CorrectionMap) -> Result<IdentityReport> {
    let (n, m, index) = josp_shape(&ext.model)?;
    let s = corrected_basis(ext, tau)?;
    let dim = ext.algebra.dim();
    let lift = |idx: JospIndex| -> Result<(Vec<Rational>, Option<usize>)> {
        let Some((sign, c)) = canonical(idx) else {
            return Ok((vec![Rational::zero(); dim], None));
        };
        let a = *index
            .get(&c)
            .ok_or_else(|| Error::Usage(format!("model lacks basis symbol {c}")))?;
        Ok((s[a].iter().map(|v| v * int(sign)).collect(), Some(a)))
    };
    let mut violations = Vec::new();
    for (num, r) in lemma_relations(n, m).into_iter().enumerate() {
        let (x, xa) = lift(r.lhs.0)?;
        let (y, ya) = lift(r.lhs.1)?;
        let mut residual = ext.algebra.mul_dense(&x, &y);
        for (c, z) in &r.rhs {
            let (zv, _) = lift(*z)?;
            for (o, v) in residual.iter_mut().zip(zv) {
                *o -= c * v;
            }
        }
        if !is_zero_vec(&residual) {
            violations.push(Violation {
                indices: vec![num, xa.unwrap_or(usize::MAX), ya.unwrap_or(usize::MAX)],
                residual: Element::from_coords(residual),
            });
        }
    }
    Ok(IdentityReport::from_violations(violations))
}

/// `σ' = σ + d`.
pub fn perturb_section(ext: &MarkedExtension, d: &CorrectionMap) -> Result<MarkedExtension> {
    let section = corrected_basis(ext, d)?;
    MarkedExtension::new(ext.algebra.clone(), ext.ideal.clone(), ext.model.clone(), section)
}

/// `count` sections moved by random corrections with entries in `-3..=3`,
/// reproducible from `seed`.
pub fn seeded_perturbations(ext: &MarkedExtension, seed: u64, count: usize) -> Result<Vec<MarkedExtension>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| perturb_section(ext, &CorrectionMap::random(ext, &mut rng, 3)))
        .collect()
}

/// `N` as a bimodule over the model through `σ`.
pub fn radical_bimodule(ext: &MarkedExtension) -> Result<Superbimodule> {
    let mut entries = Vec::new();
    for a in 0..ext.model.dim() {
        let (left, _) = ext.action_on_ideal(a);
        for s in 0..ext.rad_dim() {
            for r in 0..ext.rad_dim() {
                let c = left.get(r, s);
                if !c.is_zero() {
                    entries.push((a, s, r, c.clone()));
                }
            }
        }
    }
    Superbimodule::over(
        format!("rad({})", ext.algebra.name()),
        &ext.model,
        (0..ext.rad_dim()).map(|r| ext.rad_parity(r)).collect(),
        ext.ideal.iter().map(|&r| ext.algebra.label(r).to_string()).collect(),
        entries,
    )
}

fn identity_section(model_dim: usize, dim: usize) -> Vec<Vec<Rational>> {
    (0..model_dim)
        .map(|a| {
            let mut v = vec![Rational::zero(); dim];
            v[a] = Rational::one();
            v
        })
        .collect()
}

/// `Josp(n|2m) ⊕ M` with `σ` the inclusion.
pub fn trivial_extension(n: usize, m: usize, kind: RadicalKind) -> Result<MarkedExtension> {
    canonical_extension(&build_josp_table(n, m)?, &build_bimodule(n, m, kind)?)
}

/// `A ⊕ M` marked by `A` itself, with `σ` the inclusion.
pub fn canonical_extension(model: &Superalgebra, module: &Superbimodule) -> Result<MarkedExtension> {
    let (algebra, ideal) = split_null_extension(model, module)?;
    let section = identity_section(model.dim(), algebra.dim());
    MarkedExtension::new(algebra, ideal, model.clone(), section)
}

type Table<'a> = &'a [(&'a str, &'a str, &'a [(&'a str, Rational)])];

/// Builds an algebra from one-sided product lists: `sym` entries are
/// mirrored as `ba = ab`, `skew` entries as `ba = −ab`.
fn from_tables(name: &str, labels: &[(&str, Parity)], sym: Table, skew: Table, unit: &[&str]) -> Result<Superalgebra> {
    let idx = |l: &str| labels.iter().position(|(x, _)| *x == l).expect("known label");
    let mut entries = Vec::new();
    for (table, sign) in [(sym, 1), (skew, -1)] {
        for (a, b, terms) in table {
            for (k, c) in terms.iter() {
                entries.push((idx(a), idx(b), idx(k), c.clone()));
                if a != b {
                    entries.push((idx(b), idx(a), idx(k), c * int(sign)));
                }
            }
        }
    }
    let mut u = vec![Rational::zero(); labels.len()];
    for l in unit {
        u[idx(l)] = Rational::one();
    }
    Superalgebra::new(
        name,
        labels.iter().map(|(_, p)| *p).collect(),
        labels.iter().map(|(l, _)| l.to_string()).collect(),
        entries,
        Some(u),
    )
}

/// The 8-dimensional extension of `Josp(1|2)` by a copy of its regular
/// bimodule in which `u·k` picks up an extra `g`; it does not split.
pub fn build_counterexample() -> Result<MarkedExtension> {
    use Parity::{Even, Odd};
    let one = Rational::one;
    let labels = [
        ("h", Even),
        ("v", Even),
        ("u", Odd),
        ("k", Odd),
        ("g", Even),
        ("w", Even),
        ("y", Odd),
        ("x", Odd),
    ];
    let sym: Table = &[
        ("h", "h", &[("h", one())]),
        ("v", "v", &[("v", one())]),
        ("h", "g", &[("g", one())]),
        ("v", "w", &[("w", one())]),
        ("u", "h", &[("u", half())]),
        ("u", "v", &[("u", half())]),
        ("k", "h", &[("k", half())]),
        ("k", "v", &[("k", half())]),
        ("y", "h", &[("y", half())]),
        ("y", "v", &[("y", half())]),
        ("u", "g", &[("y", half())]),
        ("u", "w", &[("y", half())]),
        ("x", "h", &[("x", half())]),
        ("x", "v", &[("x", half())]),
        ("k", "g", &[("x", half())]),
        ("k", "w", &[("x", half())]),
    ];
    let skew: Table = &[
        ("u", "x", &[("w", half()), ("g", -one())]),
        ("y", "k", &[("w", half()), ("g", -one())]),
        ("u", "k", &[("v", half()), ("h", -one()), ("g", one())]),
    ];
    let algebra = from_tables("counterexample", &labels, sym, skew, &["h", "v"])?;
    let model = build_josp_table(1, 1)?;
    let section = identity_section(4, 8);
    MarkedExtension::new(algebra, vec![4, 5, 6, 7], model, section)
}

/// `Josp(1|2)` extended by its 5-dimensional skew bimodule, with `u·k`
/// shifted by `ξ_ã·ã + ξ_f·f + ξ_f̃·f̃`. Here `f`, `f̃` are single matrix
/// units, i.e. half of the general `f_11`, `f̃_11`.
pub fn build_skew11_extension(xi_at: Rational, xi_f: Rational, xi_ft: Rational) -> Result<MarkedExtension> {
    use Parity::{Even, Odd};
    let one = Rational::one;
    let labels = [
        ("h11", Even),
        ("v11", Even),
        ("u11", Odd),
        ("k11", Odd),
        ("at", Even),
        ("f", Even),
        ("ft", Even),
        ("b", Odd),
        ("c", Odd),
    ];
    let sym: Table = &[
        ("h11", "h11", &[("h11", one())]),
        ("v11", "v11", &[("v11", one())]),
        ("u11", "h11", &[("u11", half())]),
        ("u11", "v11", &[("u11", half())]),
        ("k11", "h11", &[("k11", half())]),
        ("k11", "v11", &[("k11", half())]),
        ("v11", "at", &[("at", one())]),
        ("v11", "f", &[("f", one())]),
        ("v11", "ft", &[("ft", one())]),
        ("b", "h11", &[("b", half())]),
        ("b", "v11", &[("b", half())]),
        ("c", "h11", &[("c", half())]),
        ("c", "v11", &[("c", half())]),
        ("u11", "at", &[("b", half())]),
        ("k11", "ft", &[("b", half())]),
        // printed with +½c; only −½c gives a Jordan superalgebra
        ("k11", "at", &[("c", -half())]),
        ("u11", "f", &[("c", half())]),
    ];
    let uk = [
        ("v11", half()),
        ("h11", -one()),
        ("at", xi_at.clone()),
        ("f", xi_f.clone()),
        ("ft", xi_ft.clone()),
    ];
    let skew: Table = &[
        ("u11", "k11", &uk),
        ("u11", "b", &[("ft", one())]),
        ("u11", "c", &[("at", -half())]),
        ("k11", "b", &[("at", -half())]),
        ("k11", "c", &[("f", -one())]),
    ];
    let name = format!(
        "skew11[{}, {}, {}]",
        crate::ratlinalg::format_rational(&xi_at),
        crate::ratlinalg::format_rational(&xi_f),
        crate::ratlinalg::format_rational(&xi_ft)
    );
    let algebra = from_tables(&name, &labels, sym, skew, &["h11", "v11"])?;
    let report = check_super_jordan(&algebra);
    if let Some(v) = report.violations.first() {
        let quad: Vec<&str> = v.indices.iter().map(|&i| algebra.label(i)).collect();
        return Err(Error::Validation(format!(
            "{name} fails the super-Jordan identity at ({})",
            quad.join(", ")
        )));
    }
    let model = build_josp_table(1, 1)?;
    let section = identity_section(4, 9);
    MarkedExtension::new(algebra, vec![4, 5, 6, 7, 8], model, section)
}
