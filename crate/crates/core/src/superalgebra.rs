//! Finite-dimensional superalgebras given by structure constants, the
//! supercommutativity and super-Jordan identity checkers, and the Grassmann
//! envelope used to cross-check them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{usage, Error, Result};
use crate::ratlinalg::{format_rational, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Result<Self> {
        match bit {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            b => usage(format!("parity must be 0 or 1, got {b}")),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        self + Parity::Odd
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `(-1)^(|a||b|)`.
pub fn koszul_sign(a: Parity, b: Parity) -> i64 {
    if a.is_odd() && b.is_odd() {
        -1
    } else {
        1
    }
}

/// Sparse vector over a basis: `(index, coefficient)` pairs with strictly
/// increasing indices and no zero coefficients.
pub type SparseVec = Vec<(usize, Rational)>;

#[derive(Default)]
pub(crate) struct Accumulator(BTreeMap<usize, Rational>);

impl Accumulator {
    pub(crate) fn add(&mut self, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Rational::zero);
        *e += c;
    }

    pub(crate) fn add_scaled(&mut self, v: &[(usize, Rational)], s: &Rational) {
        for (k, c) in v {
            self.add(*k, c * s);
        }
    }

    pub(crate) fn finish(self) -> SparseVec {
        self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

pub(crate) fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub(crate) fn dense_from_sparse(v: &[(usize, Rational)], dim: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); dim];
    for (k, c) in v {
        out[*k] += c;
    }
    out
}

/// A finite-dimensional Z/2-graded algebra `x_i·x_j = Σ_k c[i][j][k]·x_k`.
#[derive(Clone, PartialEq, Eq)]
pub struct Superalgebra {
    name: String,
    parity: Vec<Parity>,
    basis: Vec<String>,
    table: Vec<SparseVec>,
    unit: Option<Vec<Rational>>,
}

impl fmt::Debug for Superalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Superalgebra")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("basis", &self.basis)
            .finish_non_exhaustive()
    }
}

impl Superalgebra {
    /// Builds an algebra from `(i, j, k, c)` entries; repeated entries add up.
    ///
    /// Fails on out-of-range indices, entries that break the grading, or a
    /// unit that does not act as the identity.
    pub fn new(
        name: impl Into<String>,
        parity: Vec<Parity>,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let alg = Self::new_unchecked_unit(name, parity, basis, entries, unit)?;
        alg.check_unit()?;
        Ok(alg)
    }

    pub(crate) fn new_unchecked_unit(
        name: impl Into<String>,
        parity: Vec<Parity>,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
        unit: Option<Vec<Rational>>,
    ) -> Result<Self> {
        let dim = parity.len();
        if basis.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: basis.len(),
                context: "basis labels",
            });
        }
        let mut acc: Vec<Accumulator> = (0..dim * dim).map(|_| Accumulator::default()).collect();
        for (i, j, k, c) in entries {
            if i >= dim || j >= dim || k >= dim {
                return usage(format!("structure constant index ({i},{j},{k}) out of range for dim {dim}"));
            }
            if !c.is_zero() && parity[k] != parity[i] + parity[j] {
                return usage(format!(
                    "structure constant ({i},{j},{k}) = {} violates the grading",
                    format_rational(&c)
                ));
            }
            acc[i * dim + j].add(k, c);
        }
        if let Some(u) = &unit {
            if u.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: u.len(),
                    context: "unit vector",
                });
            }
        }
        Ok(Superalgebra {
            name: name.into(),
            parity,
            basis,
            table: acc.into_iter().map(Accumulator::finish).collect(),
            unit,
        })
    }

    fn check_unit(&self) -> Result<()> {
        let Some(u) = &self.unit else { return Ok(()) };
        let u = sparse_from_dense(u);
        for x in 0..self.dim() {
            let e = vec![(x, Rational::one())];
            if self.mul_sparse(&u, &e) != e || self.mul_sparse(&e, &u) != e {
                return usage(format!(
                    "declared unit does not act as identity on basis element {}",
                    self.basis[x]
                ));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn labels(&self) -> &[String] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn unit(&self) -> Option<&[Rational]> {
        self.unit.as_deref()
    }

    /// `x_i·x_j` as a sparse vector.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.product(i, j)
            .iter()
            .find(|(kk, _)| *kk == k)
            .map_or_else(Rational::zero, |(_, c)| c.clone())
    }

    /// All nonzero `(i, j, k, c)` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        let dim = self.dim();
        self.table
            .iter()
            .enumerate()
            .flat_map(move |(ij, v)| v.iter().map(move |(k, c)| (ij / dim, ij % dim, *k, c)))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Returns a copy with the constant `c[i][j][k]` replaced. Used to build
    /// negative controls; grading is still enforced.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, c: Rational) -> Result<Self> {
        let mut entries: Vec<_> = self
            .entries()
            .filter(|&(a, b, d, _)| (a, b, d) != (i, j, k))
            .map(|(a, b, d, x)| (a, b, d, x.clone()))
            .collect();
        entries.push((i, j, k, c));
        Self::new_unchecked_unit(
            self.name.clone(),
            self.parity.clone(),
            self.basis.clone(),
            entries,
            self.unit.clone(),
        )
    }

    pub(crate) fn mul_basis_right(&self, x: &[(usize, Rational)], j: usize) -> SparseVec {
        let mut acc = Accumulator::default();
        for (i, a) in x {
            acc.add_scaled(self.product(*i, j), a);
        }
        acc.finish()
    }

    pub(crate) fn mul_sparse(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> SparseVec {
        let mut acc = Accumulator::default();
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                acc.add_scaled(self.product(*i, *j), &ab);
            }
        }
        acc.finish()
    }

    pub(crate) fn mul_dense(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        dense_from_sparse(&self.mul_sparse(&sparse_from_dense(x), &sparse_from_dense(y)), self.dim())
    }

    /// Multiplication operator `m ↦ a·m` of a basis element as a matrix
    /// acting on column coordinate vectors.
    pub fn left_operator(&self, a: &[Rational]) -> crate::ratlinalg::RatMatrix {
        let dim = self.dim();
        let mut m = crate::ratlinalg::RatMatrix::zeros(dim, dim);
        let a = sparse_from_dense(a);
        for j in 0..dim {
            for (k, c) in self.mul_sparse(&a, &[(j, Rational::one())]) {
                m.set(k, j, c);
            }
        }
        m
    }
}

/// A coordinate vector with respect to an algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub coords: Vec<Rational>,
}

impl Element {
    pub fn zero(dim: usize) -> Self {
        Element {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[i] = Rational::one();
        e
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Element { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element {
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Parity of a homogeneous nonzero element; `None` for zero or mixed support.
    pub fn homogeneous_parity(&self, alg: &Superalgebra) -> Option<Parity> {
        let mut found = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(alg.parity(i)),
                Some(p) if p != alg.parity(i) => return None,
                _ => {}
            }
        }
        found
    }

    /// Human-readable combination of basis labels.
    pub fn display(&self, alg: &Superalgebra) -> String {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}*{}", format_rational(c), alg.label(i)))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

/// Bilinear product of two elements of `alg`.
pub fn multiply(alg: &Superalgebra, x: &Element, y: &Element) -> Result<Element> {
    for e in [x, y] {
        if e.dim() != alg.dim() {
            return usage(format!(
                "element of dimension {} does not belong to {} (dim {})",
                e.dim(),
                alg.name(),
                alg.dim()
            ));
        }
    }
    Ok(Element::from_coords(alg.mul_dense(&x.coords, &y.coords)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Basis index tuple at which the identity fails.
    pub indices: Vec<usize>,
    pub residual: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

impl IdentityReport {
    pub fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort_by(|a, b| a.indices.cmp(&b.indices));
        IdentityReport {
            holds: violations.is_empty(),
            violations,
        }
    }

    pub fn passing() -> Self {
        Self::from_violations(Vec::new())
    }

    pub fn merge(mut self, other: IdentityReport) -> Self {
        self.violations.extend(other.violations);
        Self::from_violations(self.violations)
    }
}

/// Scans `c[i][j] = (-1)^(|i||j|) c[j][i]` over all `i ≤ j`.
pub fn check_supercommutative(alg: &Superalgebra) -> IdentityReport {
    let dim = alg.dim();
    let violations = (0..dim)
        .into_par_iter()
        .flat_map_iter(|i| {
            (i..dim).filter_map(move |j| {
                let sign = int(koszul_sign(alg.parity(i), alg.parity(j)));
                let mut acc = Accumulator::default();
                acc.add_scaled(alg.product(i, j), &Rational::one());
                acc.add_scaled(alg.product(j, i), &-sign);
                let r = acc.finish();
                (!r.is_empty()).then(|| Violation {
                    indices: vec![i, j],
                    residual: Element::from_coords(dense_from_sparse(&r, dim)),
                })
            })
        })
        .collect();
    IdentityReport::from_violations(violations)
}

fn sign_of(exponent: u8) -> Rational {
    if exponent.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `LHS − RHS` of the degree-four super-Jordan identity on basis elements,
/// with the signs read off `parity`.
fn jordan_residual(alg: &Superalgebra, parity: &[Parity], [x, y, z, t]: [usize; 4]) -> SparseVec {
    let (px, py, pz, pt) = (
        parity[x].bit(),
        parity[y].bit(),
        parity[z].bit(),
        parity[t].bit(),
    );
    let xy = alg.product(x, y);
    let xt = alg.product(x, t);
    let yt = alg.product(y, t);

    let mut acc = Accumulator::default();
    // ((xy)z)t + s1·((xt)z)y + s2·((yt)z)x
    acc.add_scaled(&alg.mul_basis_right(&alg.mul_basis_right(xy, z), t), &Rational::one());
    acc.add_scaled(
        &alg.mul_basis_right(&alg.mul_basis_right(xt, z), y),
        &sign_of(pt * (pz + py) + pz * py),
    );
    acc.add_scaled(
        &alg.mul_basis_right(&alg.mul_basis_right(yt, z), x),
        &sign_of(px * (py + pz + pt) + pt * pz),
    );
    // − [(xy)(zt) + s3·(xt)(yz) + s4·(xz)(yt)]
    acc.add_scaled(&alg.mul_sparse(xy, alg.product(z, t)), &-Rational::one());
    acc.add_scaled(
        &alg.mul_sparse(xt, alg.product(y, z)),
        &-sign_of(pt * pz + pt * py),
    );
    acc.add_scaled(&alg.mul_sparse(alg.product(x, z), yt), &-sign_of(py * pz));
    acc.finish()
}

fn scan_quadruples(alg: &Superalgebra, parity: &[Parity]) -> IdentityReport {
    let dim = alg.dim();
    let violations: Vec<Violation> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut out = Vec::new();
            for y in 0..dim {
                for z in 0..dim {
                    for t in 0..dim {
                        let r = jordan_residual(alg, parity, [x, y, z, t]);
                        if !r.is_empty() {
                            out.push(Violation {
                                indices: vec![x, y, z, t],
                                residual: Element::from_coords(dense_from_sparse(&r, dim)),
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();
    IdentityReport::from_violations(violations)
}

/// Evaluates the super-Jordan identity on all `dim⁴` basis quadruples.
///
/// Both sides are multilinear in homogeneous arguments, so the basis scan is
/// a complete verification. Assumes the algebra is supercommutative.
pub fn check_super_jordan(alg: &Superalgebra) -> IdentityReport {
    scan_quadruples(alg, alg.parities())
}

/// Supercommutativity and the super-Jordan identity together.
pub fn is_jordan_superalgebra(alg: &Superalgebra) -> bool {
    check_supercommutative(alg).holds && check_super_jordan(alg).holds
}

/// Commutativity plus the linearized Jordan identity (all signs `+1`) for an
/// ungraded algebra.
pub fn check_plain_jordan(alg: &Superalgebra) -> Result<IdentityReport> {
    if alg.parities().iter().any(|p| p.is_odd()) {
        return usage(format!("{} has odd basis elements; plain Jordan check needs an ungraded algebra", alg.name()));
    }
    Ok(check_supercommutative(alg).merge(scan_quadruples(alg, alg.parities())))
}

/// Exterior algebra on `k` anticommuting generators. Monomials are bitmasks;
/// bit `i` stands for generator `e_{i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrassmannAlgebra {
    generators: usize,
}

impl GrassmannAlgebra {
    pub fn new(generators: usize) -> Result<Self> {
        if generators == 0 || generators > 16 {
            return usage(format!("Grassmann generator count must be in 1..=16, got {generators}"));
        }
        Ok(GrassmannAlgebra { generators })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// All `2^k` monomials, ordered by mask value.
    pub fn monomials(&self) -> Vec<u32> {
        (0..1u32 << self.generators).collect()
    }

    pub fn parity(mask: u32) -> Parity {
        if mask.count_ones().is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Product of two monomials: `None` when a generator repeats, otherwise
    /// the sign of the reordering and the union monomial.
    pub fn multiply(a: u32, b: u32) -> Option<(i64, u32)> {
        if a & b != 0 {
            return None;
        }
        // each generator of `b` passes over the larger generators of `a`
        let mut swaps = 0;
        let mut rest = b;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (a >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        Some((if swaps % 2 == 0 { 1 } else { -1 }, a | b))
    }

    pub fn monomial_label(mask: u32) -> String {
        if mask == 0 {
            return "1".into();
        }
        (0..32)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| format!("e{}", i + 1))
            .collect::<Vec<_>>()
            .join("")
    }
}

/// Grassmann envelope together with the `(monomial, basis index) → index`
/// lookup used by the cross-check.
pub struct Envelope {
    pub algebra: Superalgebra,
    index: HashMap<(u32, usize), usize>,
}

impl Envelope {
    pub fn index_of(&self, monomial: u32, basis: usize) -> Option<usize> {
        self.index.get(&(monomial, basis)).copied()
    }
}

pub fn build_envelope(alg: &Superalgebra, k: usize) -> Result<Envelope> {
    let g = GrassmannAlgebra::new(k)?;
    let mut slots = Vec::new();
    let mut index = HashMap::new();
    for mono in g.monomials() {
        for a in 0..alg.dim() {
            if GrassmannAlgebra::parity(mono) == alg.parity(a) {
                index.insert((mono, a), slots.len());
                slots.push((mono, a));
            }
        }
    }
    let mut entries = Vec::new();
    for (p, &(ma, a)) in slots.iter().enumerate() {
        for (q, &(mb, b)) in slots.iter().enumerate() {
            let Some((sign, mc)) = GrassmannAlgebra::multiply(ma, mb) else {
                continue;
            };
            for (c, coeff) in alg.product(a, b) {
                let r = index[&(mc, *c)];
                entries.push((p, q, r, coeff * int(sign)));
            }
        }
    }
    let labels = slots
        .iter()
        .map(|&(m, a)| format!("{}.{}", GrassmannAlgebra::monomial_label(m), alg.label(a)))
        .collect();
    let algebra = Superalgebra::new_unchecked_unit(
        format!("Gamma{k}({})", alg.name()),
        vec![Parity::Even; slots.len()],
        labels,
        entries,
        None,
    )?;
    Ok(Envelope { algebra, index })
}

/// `Γ(A) = Γ_0⊗A_0 + Γ_1⊗A_1` over `k` generators, as an ungraded algebra.
pub fn grassmann_envelope(alg: &Superalgebra, k: usize) -> Result<Superalgebra> {
    Ok(build_envelope(alg, k)?.algebra)
}

/// Plain-Jordan verdict for `Γ(A)` with four generators, restricted to the
/// envelope quadruples in which argument `s` carries generator `e_{s+1}`
/// exactly when its algebra component is odd.
///
/// Every envelope residual equals a signed Grassmann monomial times the
/// corresponding super-Jordan residual, so this restriction decides
/// membership of the whole envelope. Violations are indexed by the
/// underlying basis tuple of `alg`, making the result directly comparable
/// with [`check_supercommutative`] and [`check_super_jordan`].
pub fn envelope_jordan_report(alg: &Superalgebra) -> Result<IdentityReport> {
    let env = build_envelope(alg, 4)?;
    let lift = |slot: usize, a: usize| -> usize {
        let mono = if alg.parity(a).is_odd() { 1u32 << slot } else { 0 };
        env.index[&(mono, a)]
    };
    let e = &env.algebra;
    let even = vec![Parity::Even; e.dim()];
    let dim = alg.dim();

    let mut violations: Vec<Violation> = (0..dim)
        .into_par_iter()
        .flat_map_iter(|x| {
            let mut out = Vec::new();
            for y in 0..dim {
                if x <= y {
                    let (p, q) = (lift(0, x), lift(1, y));
                    let mut acc = Accumulator::default();
                    acc.add_scaled(e.product(p, q), &Rational::one());
                    acc.add_scaled(e.product(q, p), &-Rational::one());
                    let r = acc.finish();
                    if !r.is_empty() {
                        out.push(Violation {
                            indices: vec![x, y],
                            residual: Element::from_coords(dense_from_sparse(&r, e.dim())),
                        });
                    }
                }
                for z in 0..dim {
                    for t in 0..dim {
                        let quad = [lift(0, x), lift(1, y), lift(2, z), lift(3, t)];
                        let r = jordan_residual(e, &even, quad);
                        if !r.is_empty() {
                            out.push(Violation {
                                indices: vec![x, y, z, t],
                                residual: Element::from_coords(dense_from_sparse(&r, e.dim())),
                            });
                        }
                    }
                }
            }
            out
        })
        .collect();
    violations.sort_by(|a, b| a.indices.cmp(&b.indices));
    Ok(IdentityReport::from_violations(violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::half;

    fn idempotent_line() -> Superalgebra {
        Superalgebra::new(
            "F",
            vec![Parity::Even],
            vec!["e".into()],
            [(0, 0, 0, int(1))],
            Some(vec![int(1)]),
        )
        .unwrap()
    }

    #[test]
    fn grading_is_enforced() {
        let err = Superalgebra::new(
            "bad",
            vec![Parity::Even, Parity::Odd],
            vec!["a".into(), "b".into()],
            [(0, 0, 1, int(1))],
            None,
        );
        assert!(matches!(err, Err(Error::Usage(_))));
    }

    #[test]
    fn zero_times_anything_is_zero() {
        let a = idempotent_line();
        let z = Element::zero(1);
        let e = Element::basis(1, 0);
        assert!(multiply(&a, &z, &e).unwrap().is_zero());
        assert_eq!(multiply(&a, &e, &e).unwrap(), e);
    }

    #[test]
    fn multiply_rejects_foreign_elements() {
        let a = idempotent_line();
        assert!(multiply(&a, &Element::zero(2), &Element::zero(1)).is_err());
    }

    #[test]
    fn plain_jordan_on_idempotent_line() {
        assert!(check_plain_jordan(&idempotent_line()).unwrap().holds);
    }

    #[test]
    fn plain_jordan_rejects_odd_input() {
        let a = Superalgebra::new("odd", vec![Parity::Odd], vec!["x".into()], [], None).unwrap();
        assert!(check_plain_jordan(&a).is_err());
    }

    #[test]
    fn injected_asymmetric_even_product_is_reported() {
        let a = Superalgebra::new(
            "asym",
            vec![Parity::Even, Parity::Even],
            vec!["a".into(), "b".into()],
            [(0, 1, 1, half())],
            None,
        )
        .unwrap();
        let r = check_supercommutative(&a);
        assert!(!r.holds);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].indices, vec![0, 1]);
    }

    #[test]
    fn grassmann_signs() {
        // e1·e2 = e1e2, e2·e1 = −e1e2, e1·e1 = 0
        assert_eq!(GrassmannAlgebra::multiply(0b01, 0b10), Some((1, 0b11)));
        assert_eq!(GrassmannAlgebra::multiply(0b10, 0b01), Some((-1, 0b11)));
        assert_eq!(GrassmannAlgebra::multiply(0b01, 0b01), None);
        // e2 · e1e3 = −e1e2e3
        assert_eq!(GrassmannAlgebra::multiply(0b010, 0b101), Some((-1, 0b111)));
        assert!(GrassmannAlgebra::new(0).is_err());
    }

    #[test]
    fn grassmann_generators_anticommute() {
        let g = GrassmannAlgebra::new(4).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let (a, b) = (1u32 << i, 1u32 << j);
                match (GrassmannAlgebra::multiply(a, b), GrassmannAlgebra::multiply(b, a)) {
                    (None, None) => assert_eq!(i, j),
                    (Some((s, m)), Some((t, n))) => {
                        assert_eq!(m, n);
                        assert_eq!(s, -t);
                    }
                    _ => panic!("asymmetric vanishing"),
                }
            }
        }
        assert_eq!(g.monomials().len(), 16);
    }

    #[test]
    fn envelope_of_even_algebra_copies_products() {
        let a = idempotent_line();
        let env = grassmann_envelope(&a, 2).unwrap();
        // even monomials: 1 and e1e2
        assert_eq!(env.dim(), 2);
        assert_eq!(env.constant(0, 0, 0), int(1));
        assert!(check_plain_jordan(&env).unwrap().holds);
    }
}
