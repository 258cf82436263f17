//! Jordan superbimodules stored by their left action.
//!
//! The right action never needs storing: in the split null extension it is
//! `m·a = (−1)^{|a||m|} a·m`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{usage, Error, Result};
use crate::josp::{
    basis_matrix, build_josp_table, delta, express_in, index_label, split_label, terms_to_sparse,
    josp_matrix_basis, JospIndex, Rhs, SuperMatrix, Terms,
};
use crate::ratlinalg::{half, int, nullspace, IncrementalSpan, RatMatrix, Rational};
use crate::superalgebra::{koszul_sign, Accumulator, Parity, SparseVec, Superalgebra};

#[derive(Clone, PartialEq, Eq)]
pub struct Superbimodule {
    name: String,
    algebra_name: String,
    algebra_parity: Vec<Parity>,
    parity: Vec<Parity>,
    basis: Vec<String>,
    /// `action[i * dim + j]` is `a_i·m_j`.
    action: Vec<SparseVec>,
}

impl fmt::Debug for Superbimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Superbimodule")
            .field("name", &self.name)
            .field("algebra", &self.algebra_name)
            .field("basis", &self.basis)
            .finish_non_exhaustive()
    }
}

impl Superbimodule {
    /// Builds a bimodule from `(i, j, k, c)` entries meaning `a_i·m_j ∋ c·m_k`.
    pub fn new(
        name: impl Into<String>,
        algebra_name: impl Into<String>,
        algebra_parity: Vec<Parity>,
        parity: Vec<Parity>,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        let (na, dim) = (algebra_parity.len(), parity.len());
        if basis.len() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: basis.len(),
                context: "module basis labels",
            });
        }
        let mut acc: Vec<Accumulator> = (0..na * dim).map(|_| Accumulator::default()).collect();
        for (i, j, k, c) in entries {
            if i >= na || j >= dim || k >= dim {
                return usage(format!("action index ({i},{j},{k}) out of range"));
            }
            if !c.is_zero() && parity[k] != algebra_parity[i] + parity[j] {
                return usage(format!("action entry ({i},{j},{k}) violates the grading"));
            }
            acc[i * dim + j].add(k, c);
        }
        Ok(Superbimodule {
            name: name.into(),
            algebra_name: algebra_name.into(),
            algebra_parity,
            parity,
            basis,
            action: acc.into_iter().map(Accumulator::finish).collect(),
        })
    }

    pub fn over(
        name: impl Into<String>,
        algebra: &Superalgebra,
        parity: Vec<Parity>,
        basis: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        Self::new(name, algebra.name(), algebra.parities().to_vec(), parity, basis, entries)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra_name(&self) -> &str {
        &self.algebra_name
    }

    pub fn algebra_parities(&self) -> &[Parity] {
        &self.algebra_parity
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_parity.len()
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, j: usize) -> Parity {
        self.parity[j]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn labels(&self) -> &[String] {
        &self.basis
    }

    pub fn label(&self, j: usize) -> &str {
        &self.basis[j]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn action(&self, i: usize, j: usize) -> &SparseVec {
        &self.action[i * self.dim() + j]
    }

    /// Nonzero `(i, j, k, ℓ[i][j][k])` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        let dim = self.dim();
        self.action.iter().enumerate().flat_map(move |(ij, v)| {
            v.iter().map(move |(k, c)| (ij / dim, ij % dim, *k, c))
        })
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Matrix of `m ↦ a_i·m` on module coordinates.
    pub fn operator(&self, i: usize) -> RatMatrix {
        let dim = self.dim();
        let mut m = RatMatrix::zeros(dim, dim);
        for j in 0..dim {
            for (k, c) in self.action(i, j) {
                m.set(*k, j, c.clone());
            }
        }
        m
    }

    /// Fails unless the algebra has the dimension and grading this module expects.
    pub fn check_over(&self, algebra: &Superalgebra) -> Result<()> {
        if algebra.parities() != self.algebra_parity.as_slice() {
            return usage(format!(
                "bimodule {} is not over {} (dimension or grading differ)",
                self.name,
                algebra.name()
            ));
        }
        Ok(())
    }

    /// True iff the algebra's unit acts as the identity.
    pub fn is_unital(&self, algebra: &Superalgebra) -> bool {
        let Some(u) = algebra.unit() else { return false };
        (0..self.dim()).all(|j| {
            let mut acc = Accumulator::default();
            for (i, c) in u.iter().enumerate() {
                if !c.is_zero() {
                    acc.add_scaled(self.action(i, j), c);
                }
            }
            acc.finish() == vec![(j, Rational::one())]
        })
    }
}

/// The algebra acting on itself.
pub fn regular_bimodule(a: &Superalgebra) -> Superbimodule {
    let entries = a.entries().map(|(i, j, k, c)| (i, j, k, c.clone()));
    Superbimodule::over(
        format!("Reg({})", a.name()),
        a,
        a.parities().to_vec(),
        a.labels().to_vec(),
        entries,
    )
    .expect("algebra constants respect the grading")
}

/// Parity flipped, action twisted by `(−1)^{|a|}`.
pub fn opposite(m: &Superbimodule) -> Superbimodule {
    let entries = m.entries().map(|(i, j, k, c)| {
        let c = if m.algebra_parity[i].is_odd() { -c.clone() } else { c.clone() };
        (i, j, k, c)
    });
    let basis = m.basis.iter().map(|b| match b.strip_suffix("^op") {
        Some(orig) => orig.to_string(),
        None => format!("{b}^op"),
    });
    let name = match m.name.strip_suffix("^op") {
        Some(orig) => orig.to_string(),
        None => format!("{}^op", m.name),
    };
    Superbimodule::new(
        name,
        m.algebra_name.clone(),
        m.algebra_parity.clone(),
        m.parity.iter().map(|p| p.flip()).collect(),
        basis.collect(),
        entries,
    )
    .expect("flipping both parities preserves the grading")
}

pub fn direct_sum(m1: &Superbimodule, m2: &Superbimodule) -> Result<Superbimodule> {
    if m1.algebra_parity != m2.algebra_parity {
        return usage("direct sum of bimodules over different algebras");
    }
    let d1 = m1.dim();
    let entries = m1
        .entries()
        .map(|(i, j, k, c)| (i, j, k, c.clone()))
        .chain(m2.entries().map(|(i, j, k, c)| (i, j + d1, k + d1, c.clone())));
    let basis = m1
        .basis
        .iter()
        .map(|b| format!("{b}#1"))
        .chain(m2.basis.iter().map(|b| format!("{b}#2")))
        .collect();
    Superbimodule::new(
        format!("{}+{}", m1.name, m2.name),
        m1.algebra_name.clone(),
        m1.algebra_parity.clone(),
        m1.parity.iter().chain(&m2.parity).copied().collect(),
        basis,
        entries,
    )
}

/// `A ⊕ M` with `M² = 0`; returns the algebra and the index block of `M`.
pub fn split_null_extension(a: &Superalgebra, m: &Superbimodule) -> Result<(Superalgebra, Vec<usize>)> {
    m.check_over(a)?;
    let na = a.dim();
    let mut entries: Vec<(usize, usize, usize, Rational)> =
        a.entries().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
    for (i, j, k, c) in m.entries() {
        let sign = int(koszul_sign(a.parity(i), m.parity(j)));
        entries.push((i, na + j, na + k, c.clone()));
        entries.push((na + j, i, na + k, c * sign));
    }
    let parity = a.parities().iter().chain(m.parities()).copied().collect();
    let basis = a
        .labels()
        .iter()
        .cloned()
        .chain(m.labels().iter().map(|l| format!("m.{l}")))
        .collect();
    let unit = match a.unit() {
        Some(u) if m.is_unital(a) => {
            let mut u = u.to_vec();
            u.resize(na + m.dim(), Rational::zero());
            Some(u)
        }
        _ => None,
    };
    let e = Superalgebra::new(format!("{}+{}", a.name(), m.name()), parity, basis, entries, unit)?;
    Ok((e, (na..na + m.dim()).collect()))
}

/// All linear `φ: M1 → M2` shifting parity by `shift` with
/// `φ(a·m) = (−1)^{shift·|a|} a·φ(m)`, as `dim M2 × dim M1` matrices.
pub fn hom_space(m1: &Superbimodule, m2: &Superbimodule, shift: Parity) -> Result<Vec<RatMatrix>> {
    if m1.algebra_parity != m2.algebra_parity {
        return usage("hom space between bimodules over different algebras");
    }
    let (d1, d2) = (m1.dim(), m2.dim());
    // unknown φ[k][j] exists only when parities match up to the shift
    let mut unknowns = HashMap::new();
    let mut slots = Vec::new();
    for k in 0..d2 {
        for j in 0..d1 {
            if m2.parity(k) == m1.parity(j) + shift {
                unknowns.insert((k, j), slots.len());
                slots.push((k, j));
            }
        }
    }
    let mut rows = Vec::new();
    for (i, &pa) in m1.algebra_parity.iter().enumerate() {
        let sign = int(koszul_sign(shift, pa));
        for j in 0..d1 {
            // component k of φ(a_i·m_j) − sign·a_i·φ(m_j)
            let mut eqs: Vec<Accumulator> = (0..d2).map(|_| Accumulator::default()).collect();
            for (l, c) in m1.action(i, j) {
                for (k, eq) in eqs.iter_mut().enumerate() {
                    if let Some(&u) = unknowns.get(&(k, *l)) {
                        eq.add(u, c.clone());
                    }
                }
            }
            for l in 0..d2 {
                let Some(&u) = unknowns.get(&(l, j)) else { continue };
                for (k, c) in m2.action(i, l) {
                    eqs[*k].add(u, -(c * &sign));
                }
            }
            for eq in eqs {
                let eq = eq.finish();
                if !eq.is_empty() {
                    let mut row = vec![Rational::zero(); slots.len()];
                    for (u, c) in eq {
                        row[u] = c;
                    }
                    rows.push(row);
                }
            }
        }
    }
    let basis = if rows.is_empty() {
        (0..slots.len())
            .map(|s| {
                let mut v = vec![Rational::zero(); slots.len()];
                v[s] = Rational::one();
                v
            })
            .collect()
    } else {
        nullspace(&RatMatrix::from_rows(rows)?)
    };
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut phi = RatMatrix::zeros(d2, d1);
            for (&(k, j), c) in slots.iter().zip(v) {
                phi.set(k, j, c);
            }
            phi
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Yes,
    /// Basis of a proper nonzero invariant subspace.
    No(Vec<Vec<Rational>>),
    Unknown,
}

/// Smallest subspace containing `seed` and closed under all operators.
fn invariant_closure(ops: &[RatMatrix], seed: &[Rational]) -> IncrementalSpan {
    let mut span = IncrementalSpan::new(seed.len());
    let mut queue = vec![seed.to_vec()];
    while let Some(v) = queue.pop() {
        if !span.insert(&v) {
            continue;
        }
        for op in ops {
            let w = op.mul_vec(&v).expect("square operator");
            if !span.contains(&w) {
                queue.push(w);
            }
        }
    }
    span
}

/// Burnside test: the associative algebra generated by the action operators
/// is all of `End(M)` iff `M` is absolutely irreducible.
///
/// Over ℚ a smaller span does not prove reducibility, so in that case the
/// test looks for an invariant subspace and reports `Unknown` if none is found.
pub fn is_irreducible_burnside(m: &Superbimodule) -> Result<Irreducibility> {
    let d = m.dim();
    if d == 0 {
        return usage("irreducibility of the zero module");
    }
    let ops: Vec<RatMatrix> = (0..m.algebra_dim()).map(|i| m.operator(i)).collect();
    let mut span = IncrementalSpan::new(d * d);
    let mut elements: Vec<RatMatrix> = Vec::new();
    let mut queue = vec![RatMatrix::identity(d)];
    while let Some(x) = queue.pop() {
        if !span.insert(x.entries()) {
            continue;
        }
        if span.dim() == d * d {
            return Ok(Irreducibility::Yes);
        }
        for op in &ops {
            let y = op.mul(&x)?;
            if !span.contains(y.entries()) {
                queue.push(y);
            }
        }
        elements.push(x);
    }
    let proper = |seed: &[Rational]| {
        let c = invariant_closure(&ops, seed);
        (c.dim() < d).then(|| c.basis())
    };
    for j in 0..d {
        let mut e = vec![Rational::zero(); d];
        e[j] = Rational::one();
        if let Some(w) = proper(&e) {
            return Ok(Irreducibility::No(w));
        }
    }
    for x in &elements {
        for v in nullspace(x) {
            if let Some(w) = proper(&v) {
                return Ok(Irreducibility::No(w));
            }
        }
    }
    Ok(Irreducibility::Unknown)
}

/// The four irreducible bimodule families over `Josp(n|2m)` used here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RadicalKind {
    Reg,
    Skew,
    RegOp,
    SkewOp,
}

impl RadicalKind {
    pub const ALL: [RadicalKind; 4] = [RadicalKind::Reg, RadicalKind::Skew, RadicalKind::RegOp, RadicalKind::SkewOp];

    pub fn name(self) -> &'static str {
        match self {
            RadicalKind::Reg => "reg",
            RadicalKind::Skew => "skew",
            RadicalKind::RegOp => "reg-op",
            RadicalKind::SkewOp => "skew-op",
        }
    }

    pub fn is_opposite(self) -> bool {
        matches!(self, RadicalKind::RegOp | RadicalKind::SkewOp)
    }
}

impl std::str::FromStr for RadicalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RadicalKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown bimodule kind {s:?} (reg, skew, reg-op, skew-op)")))
    }
}

/// The bimodule of the given kind over `build_josp_table(n, m)`.
pub fn build_bimodule(n: usize, m: usize, kind: RadicalKind) -> Result<Superbimodule> {
    let reg = || build_josp_table(n, m).map(|a| regular_bimodule(&a));
    Ok(match kind {
        RadicalKind::Reg => reg()?,
        RadicalKind::Skew => skew_bimodule(n, m)?,
        RadicalKind::RegOp => opposite(&reg()?),
        RadicalKind::SkewOp => opposite(&skew_bimodule(n, m)?),
    })
}

/// Basis symbols of the skew part `Skew(M_{n|2m}, osp)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkewIndex {
    /// `a_ij`, `i < j`
    A(usize, usize),
    /// `ã_pq`
    At(usize, usize),
    /// `f_pq`, `p ≤ q`
    F(usize, usize),
    /// `f̃_pq`, `p ≤ q`
    Ft(usize, usize),
    /// `b_ip`
    B(usize, usize),
    /// `c_ip`
    C(usize, usize),
}

impl SkewIndex {
    pub fn parity(self) -> Parity {
        match self {
            SkewIndex::B(..) | SkewIndex::C(..) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn label(self) -> String {
        match self {
            SkewIndex::A(a, b) => index_label("a", a, b),
            SkewIndex::At(a, b) => index_label("at", a, b),
            SkewIndex::F(a, b) => index_label("f", a, b),
            SkewIndex::Ft(a, b) => index_label("ft", a, b),
            SkewIndex::B(a, b) => index_label("b", a, b),
            SkewIndex::C(a, b) => index_label("c", a, b),
        }
    }

    pub fn parse(label: &str) -> Option<SkewIndex> {
        let (prefix, a, b) = split_label(label)?;
        Some(match prefix {
            "a" if a < b => SkewIndex::A(a, b),
            "at" => SkewIndex::At(a, b),
            "f" if a <= b => SkewIndex::F(a, b),
            "ft" if a <= b => SkewIndex::Ft(a, b),
            "b" => SkewIndex::B(a, b),
            "c" => SkewIndex::C(a, b),
            _ => return None,
        })
    }
}

impl fmt::Display for SkewIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn skew_basis_indices(n: usize, m: usize) -> Vec<SkewIndex> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(SkewIndex::A(i, j));
        }
    }
    for p in 1..=m {
        for q in 1..=m {
            out.push(SkewIndex::At(p, q));
        }
    }
    for p in 1..=m {
        for q in p..=m {
            out.push(SkewIndex::F(p, q));
        }
    }
    for p in 1..=m {
        for q in p..=m {
            out.push(SkewIndex::Ft(p, q));
        }
    }
    for i in 1..=n {
        for p in 1..=m {
            out.push(SkewIndex::B(i, p));
        }
    }
    for i in 1..=n {
        for p in 1..=m {
            out.push(SkewIndex::C(i, p));
        }
    }
    out
}

pub fn skew_dim(n: usize, m: usize) -> usize {
    ((n + 2 * m).pow(2) + 2 * m - n) / 2
}

/// `a_ij` with `a_ji = −a_ij`, `a_ii = 0`.
fn sa(i: usize, j: usize) -> Option<(i64, SkewIndex)> {
    match i.cmp(&j) {
        std::cmp::Ordering::Less => Some((1, SkewIndex::A(i, j))),
        std::cmp::Ordering::Greater => Some((-1, SkewIndex::A(j, i))),
        std::cmp::Ordering::Equal => None,
    }
}

fn sat(p: usize, q: usize) -> Option<(i64, SkewIndex)> {
    Some((1, SkewIndex::At(p, q)))
}

/// `f_pq` with `f_qp = f_pq`.
fn sf(p: usize, q: usize) -> Option<(i64, SkewIndex)> {
    Some((1, SkewIndex::F(p.min(q), p.max(q))))
}

fn sft(p: usize, q: usize) -> Option<(i64, SkewIndex)> {
    Some((1, SkewIndex::Ft(p.min(q), p.max(q))))
}

fn sb(i: usize, p: usize) -> Option<(i64, SkewIndex)> {
    Some((1, SkewIndex::B(i, p)))
}

fn sc(i: usize, p: usize) -> Option<(i64, SkewIndex)> {
    Some((1, SkewIndex::C(i, p)))
}

/// Closed-form action `x∘m` of an algebra basis symbol on a skew basis
/// symbol; `None` where the table lists nothing (the product is zero).
pub fn skew_table_action(x: JospIndex, y: SkewIndex) -> Option<Terms<SkewIndex>> {
    use JospIndex as J;
    use SkewIndex as S;
    let hf = half();
    let mut r = Rhs::new();
    let terms = match (x, y) {
        (J::H(k, l), S::A(i, j)) if k != l => r
            .put(delta(j, k), hf.clone(), sa(i, l))
            .put(delta(l, i), hf.clone(), sa(k, j))
            .put(delta(j, l), hf.clone(), sa(i, k))
            .put(delta(i, k), hf.clone(), sa(l, j))
            .done(),
        // not in the table: h_ii∘a_kl = ½(δ_ik a_il + δ_il a_ki)
        (J::H(i, _), S::A(k, l)) => r
            .put(delta(i, k), hf.clone(), sa(i, l))
            .put(delta(i, l), hf.clone(), sa(k, i))
            .done(),
        // s̃∘f, with the index slips of the printed line repaired
        (J::St(p, q), S::F(rr, t)) => r
            .put(delta(p, rr), hf.clone(), sat(t, q))
            .put(delta(p, t), hf.clone(), sat(rr, q))
            .put(delta(q, rr), -hf.clone(), sat(t, p))
            .put(delta(q, t), -hf.clone(), sat(rr, p))
            .done(),
        (J::St(p, q), S::At(rr, t)) => r
            .put(delta(q, rr), hf.clone(), sft(p, t))
            .put(delta(p, rr), -hf.clone(), sft(q, t))
            .done(),
        (J::S(p, q), S::Ft(rr, t)) => r
            .put(delta(q, rr), hf.clone(), sat(p, t))
            .put(delta(q, t), hf.clone(), sat(p, rr))
            .put(delta(p, rr), -hf.clone(), sat(q, t))
            .put(delta(p, t), -hf.clone(), sat(q, rr))
            .done(),
        (J::S(p, q), S::At(rr, t)) => r
            .put(delta(p, t), hf.clone(), sf(q, rr))
            .put(delta(q, t), -hf.clone(), sf(p, rr))
            .done(),
        (J::V(p, q), S::At(rr, t)) => r
            .put(delta(q, rr), hf.clone(), sat(p, t))
            .put(delta(p, t), hf.clone(), sat(rr, q))
            .done(),
        (J::V(p, q), S::F(rr, t)) => r
            .put(delta(q, rr), hf.clone(), sf(p, t))
            .put(delta(t, q), hf.clone(), sf(p, rr))
            .done(),
        (J::V(p, q), S::Ft(rr, t)) => r
            .put(delta(p, rr), hf.clone(), sft(q, t))
            .put(delta(p, t), hf.clone(), sft(q, rr))
            .done(),
        (J::H(i, j), S::B(k, l)) if i != j => r
            .put(delta(j, k), hf.clone(), sb(i, l))
            .put(delta(i, k), hf.clone(), sb(j, l))
            .done(),
        (J::H(i, _), S::B(k, l)) => r.put(delta(i, k), hf.clone(), sb(i, l)).done(),
        (J::V(p, q), S::B(k, rr)) => r.put(delta(rr, p), hf.clone(), sb(k, q)).done(),
        // the printed line has k_jr in place of c_jr
        (J::H(i, j), S::C(k, l)) if i != j => r
            .put(delta(j, k), hf.clone(), sc(i, l))
            .put(delta(i, k), hf.clone(), sc(j, l))
            .done(),
        (J::H(i, _), S::C(k, l)) => r.put(delta(i, k), hf.clone(), sc(i, l)).done(),
        (J::V(p, q), S::C(k, rr)) => r.put(delta(rr, q), hf.clone(), sc(k, p)).done(),
        (J::S(p, q), S::B(i, rr)) => r
            .put(delta(p, rr), hf.clone(), sc(i, q))
            .put(delta(q, rr), -hf.clone(), sc(i, p))
            .done(),
        (J::St(p, q), S::C(i, rr)) => r
            .put(delta(rr, p), hf.clone(), sb(i, q))
            .put(delta(q, rr), -hf.clone(), sb(i, p))
            .done(),
        (J::U(i, p), S::A(k, j)) => r
            .put(delta(i, j), hf.clone(), sb(k, p))
            .put(delta(i, k), -hf.clone(), sb(j, p))
            .done(),
        (J::U(i, p), S::At(q, rr)) => r.put(delta(p, q), hf.clone(), sb(i, rr)).done(),
        (J::K(i, p), S::A(j, k)) => r
            .put(delta(i, k), hf.clone(), sc(j, p))
            .put(delta(i, j), -hf.clone(), sc(k, p))
            .done(),
        (J::K(i, p), S::At(q, rr)) => r.put(delta(p, rr), -hf.clone(), sc(i, q)).done(),
        (J::U(i, p), S::F(q, rr)) => r
            .put(delta(p, q), hf.clone(), sc(i, rr))
            .put(delta(p, rr), hf.clone(), sc(i, q))
            .done(),
        (J::K(i, p), S::Ft(q, rr)) => r
            .put(delta(p, q), hf.clone(), sb(i, rr))
            .put(delta(p, rr), hf.clone(), sb(i, q))
            .done(),
        (J::U(i, p), S::B(j, q)) => r.put(delta(i, j), hf.clone(), sft(p, q)).done(),
        (J::U(i, p), S::C(j, q)) => r
            .put(delta(p, q), hf.clone(), sa(i, j))
            .put(delta(i, j), -hf.clone(), sat(q, p))
            .done(),
        (J::K(i, p), S::C(j, q)) => r.put(delta(i, j), -hf.clone(), sf(p, q)).done(),
        (J::K(i, p), S::B(j, q)) => r
            .put(delta(p, q), hf.clone(), sa(j, i))
            .put(delta(i, j), -hf.clone(), sat(p, q))
            .done(),
        _ => return None,
    };
    Some(terms)
}

/// The skew bimodule over `build_josp_table(n, m)` from the closed-form action.
pub fn skew_bimodule(n: usize, m: usize) -> Result<Superbimodule> {
    if n < 1 || m < 1 {
        return usage("skew bimodule needs n ≥ 1 and m ≥ 1");
    }
    let alg = build_josp_table(n, m)?;
    let josp = crate::josp::basis_indices(n, m);
    let skew = skew_basis_indices(n, m);
    let position = skew.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut entries = Vec::new();
    for (i, &x) in josp.iter().enumerate() {
        for (j, &y) in skew.iter().enumerate() {
            if let Some(terms) = skew_table_action(x, y) {
                for (k, c) in terms_to_sparse(&terms, &position)? {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    Superbimodule::over(
        format!("Skew({n}|{})", 2 * m),
        &alg,
        skew.iter().map(|s| s.parity()).collect(),
        skew.iter().map(|s| s.label()).collect(),
        entries,
    )
}

pub fn skew_matrix_basis(n: usize, m: usize) -> Vec<(SkewIndex, SuperMatrix)> {
    let e = |r: usize, c: usize| SuperMatrix::unit(n, m, r, c);
    let sum = |a: SuperMatrix, b: SuperMatrix| a.add(&b).expect("same shape");
    let diff = |a: SuperMatrix, b: SuperMatrix| a.sub(&b).expect("same shape");
    skew_basis_indices(n, m)
        .into_iter()
        .map(|idx| {
            let mat = match idx {
                SkewIndex::A(i, j) => diff(e(i, j), e(j, i)),
                SkewIndex::At(p, q) => diff(e(n + p, n + q), e(n + m + q, n + m + p)),
                SkewIndex::F(p, q) => sum(e(n + p, n + m + q), e(n + q, n + m + p)),
                SkewIndex::Ft(p, q) => sum(e(n + m + p, n + q), e(n + m + q, n + p)),
                SkewIndex::B(i, p) => diff(e(i, n + p), e(n + m + p, i)),
                SkewIndex::C(i, p) => sum(e(i, n + m + p), e(n + p, i)),
            };
            (idx, mat)
        })
        .collect()
}

/// The skew bimodule computed from `Skew(M_{n|2m}, osp)` with the
/// symmetrized action; independent of the closed-form table.
pub fn skew_bimodule_matrix(n: usize, m: usize) -> Result<Superbimodule> {
    if n < 1 || m < 1 {
        return usage("skew bimodule needs n ≥ 1 and m ≥ 1");
    }
    let alg = crate::josp::build_josp_matrix(n, m)?;
    let skew = skew_matrix_basis(n, m);
    let mats: Vec<&SuperMatrix> = skew.iter().map(|(_, x)| x).collect();
    let span = basis_matrix(&mats)?;
    let mut entries = Vec::new();
    for (i, (xi, x)) in josp_matrix_basis(n, m).iter().enumerate() {
        for (j, (yj, y)) in skew.iter().enumerate() {
            let coords = express_in(&span, &x.jordan(y)?)?
                .ok_or_else(|| Error::Internal(format!("{xi}∘{yj} left the skew span")))?;
            for (k, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((i, j, k, c));
                }
            }
        }
    }
    Superbimodule::over(
        format!("Skew({n}|{})", 2 * m),
        &alg,
        skew.iter().map(|(s, _)| s.parity()).collect(),
        skew.iter().map(|(s, _)| s.label()).collect(),
        entries,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::josp::{josp_dim, osp};
    use crate::ratlinalg::{determinant, rat};
    use crate::superalgebra::{check_super_jordan, check_supercommutative};

    fn vec_of(m: &Superbimodule, pairs: &[(&str, Rational)]) -> SparseVec {
        let mut v: SparseVec = pairs.iter().map(|(l, c)| (m.index_of(l).unwrap(), c.clone())).collect();
        v.sort_by_key(|(k, _)| *k);
        v
    }

    #[test]
    fn skew_labels_round_trip() {
        for idx in skew_basis_indices(3, 2) {
            assert_eq!(SkewIndex::parse(&idx.label()), Some(idx));
        }
        assert_eq!(SkewIndex::parse("a11"), None);
        assert_eq!(SkewIndex::parse("f21"), None);
    }

    #[test]
    fn skew_dimension() {
        let m = skew_bimodule(1, 1).unwrap();
        assert_eq!(m.labels(), ["at11", "f11", "ft11", "b11", "c11"]);
        for (n, mm) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)] {
            let d = skew_basis_indices(n, mm).len();
            assert_eq!(d, skew_dim(n, mm));
            assert_eq!(d + josp_dim(n, mm), (n + 2 * mm).pow(2));
        }
    }

    #[test]
    fn skew_matrix_basis_is_osp_antisymmetric() {
        for (idx, x) in skew_matrix_basis(2, 2) {
            assert_eq!(osp(&x).unwrap(), x.scale(&int(-1)), "{idx}");
            assert_eq!(x.parity(), Some(idx.parity()));
        }
    }

    #[test]
    fn h_plus_skew_spans_all_matrices() {
        let (n, m) = (2, 1);
        let mut cols: Vec<Vec<Rational>> = josp_matrix_basis(n, m).iter().map(|(_, x)| x.flatten()).collect();
        cols.extend(skew_matrix_basis(n, m).iter().map(|(_, x)| x.flatten()));
        let size = (n + 2 * m).pow(2);
        let b = RatMatrix::from_columns(size, &cols).unwrap();
        assert!(!determinant(&b).unwrap().is_zero());
    }

    #[test]
    fn skew_table_matches_matrix_realization() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2)] {
            let t = skew_bimodule(n, m).unwrap();
            let x = skew_bimodule_matrix(n, m).unwrap();
            let te: Vec<_> = t.entries().collect();
            let xe: Vec<_> = x.entries().collect();
            assert_eq!(te, xe, "({n}|{})", 2 * m);
        }
    }

    #[test]
    fn printed_skew_entries() {
        let m = skew_bimodule(2, 2).unwrap();
        let alg = build_josp_table(2, 2).unwrap();
        let a = |l: &str| alg.index_of(l).unwrap();
        let j = |l: &str| m.index_of(l).unwrap();
        assert_eq!(m.action(a("u12"), j("b12")), &vec_of(&m, &[("ft22", half())]));
        assert_eq!(m.action(a("u12"), j("b21")), &vec![]);
        assert_eq!(m.action(a("k11"), j("c12")), &vec_of(&m, &[("f12", -half())]));
        assert_eq!(m.action(a("h11"), j("a12")), &vec_of(&m, &[("a12", half())]));
    }

    #[test]
    fn regular_and_opposite() {
        let alg = build_josp_table(1, 1).unwrap();
        let reg = regular_bimodule(&alg);
        let (h, v, u, k) = (0, 1, 2, 3);
        assert_eq!(reg.action(h, k), &vec![(k, half())]);
        let op = opposite(&reg);
        assert_eq!(op.labels(), ["h11^op", "v11^op", "u11^op", "k11^op"]);
        assert_eq!(op.parity(h), Parity::Odd);
        assert_eq!(op.action(h, h), &vec![(h, rat(1, 1))]);
        assert_eq!(op.action(u, k), &vec![(h, rat(1, 1)), (v, -half())]);
        assert_eq!(opposite(&op), reg);
    }

    #[test]
    fn extensions_are_jordan() {
        let alg = build_josp_table(1, 1).unwrap();
        for m in [
            regular_bimodule(&alg),
            skew_bimodule(1, 1).unwrap(),
            opposite(&regular_bimodule(&alg)),
            opposite(&skew_bimodule(1, 1).unwrap()),
        ] {
            let (e, ideal) = split_null_extension(&alg, &m).unwrap();
            assert_eq!(e.dim(), alg.dim() + m.dim());
            assert!(e.unit().is_some());
            assert!(check_supercommutative(&e).holds);
            assert!(check_super_jordan(&e).holds, "{}", m.name());
            for &x in &ideal {
                for &y in &ideal {
                    assert!(e.product(x, y).is_empty());
                }
            }
        }
    }

    #[test]
    fn wrong_algebra_is_rejected() {
        let a = build_josp_table(1, 1).unwrap();
        let b = build_josp_table(2, 1).unwrap();
        assert!(split_null_extension(&b, &regular_bimodule(&a)).is_err());
        assert!(hom_space(&regular_bimodule(&a), &regular_bimodule(&b), Parity::Even).is_err());
    }

    #[test]
    fn hom_spaces() {
        let alg = build_josp_table(1, 1).unwrap();
        let reg = regular_bimodule(&alg);
        let skew = skew_bimodule(1, 1).unwrap();
        assert_eq!(hom_space(&reg, &reg, Parity::Even).unwrap().len(), 1);
        assert_eq!(hom_space(&reg, &skew, Parity::Even).unwrap().len(), 0);
        let sum = direct_sum(&reg, &reg).unwrap();
        assert_eq!(hom_space(&reg, &sum, Parity::Even).unwrap().len(), 2);
        assert_eq!(hom_space(&sum, &reg, Parity::Even).unwrap().len(), 2);
        // scalars are the only endomorphisms; the basis map is the identity
        let phi = &hom_space(&reg, &reg, Parity::Even).unwrap()[0];
        assert_eq!(phi, &RatMatrix::identity(4).scale(phi.get(0, 0)));
    }

    #[test]
    fn burnside() {
        let alg = build_josp_table(1, 1).unwrap();
        let reg = regular_bimodule(&alg);
        assert_eq!(is_irreducible_burnside(&reg).unwrap(), Irreducibility::Yes);
        assert_eq!(is_irreducible_burnside(&skew_bimodule(1, 1).unwrap()).unwrap(), Irreducibility::Yes);
        let sum = direct_sum(&reg, &reg).unwrap();
        match is_irreducible_burnside(&sum).unwrap() {
            Irreducibility::No(w) => {
                assert_eq!(w.len(), 4);
                assert!(w.iter().all(|v| v[4..].iter().all(Zero::is_zero)));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        let zero = Superbimodule::over(
            "zero",
            &alg,
            vec![Parity::Even, Parity::Even],
            vec!["x".into(), "y".into()],
            std::iter::empty(),
        )
        .unwrap();
        assert!(matches!(is_irreducible_burnside(&zero).unwrap(), Irreducibility::No(w) if w.len() == 1));
        assert!(!zero.is_unital(&alg));
        let (e, _) = split_null_extension(&alg, &zero).unwrap();
        assert!(e.unit().is_none());
    }
}
