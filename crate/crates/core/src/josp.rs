//! The orthosymplectic Jordan superalgebra `Josp(n|2m)`: a constructor from
//! the closed-form multiplication table, a constructor from osp-symmetric
//! supermatrices, and the osp superinvolution itself.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{usage, Error, Result};
use crate::ratlinalg::{half, int, inverse, solve_linear, LinearSolution, RatMatrix, Rational};
use crate::superalgebra::{koszul_sign, Element, IdentityReport, Parity, Superalgebra, Violation};

/// Basis symbols of `Josp(n|2m)`, with 1-based indices `i,j ∈ 1..=n`,
/// `p,q ∈ 1..=m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JospIndex {
    /// `h_ij`, `i ≤ j`
    H(usize, usize),
    /// `v_pq`
    V(usize, usize),
    /// `s_pq`, `p < q`
    S(usize, usize),
    /// `s̃_pq`, `p < q`
    St(usize, usize),
    /// `u_ip`
    U(usize, usize),
    /// `k_ip`
    K(usize, usize),
}

pub(crate) fn index_label(prefix: &str, a: usize, b: usize) -> String {
    if a < 10 && b < 10 {
        format!("{prefix}{a}{b}")
    } else {
        format!("{prefix}{a}_{b}")
    }
}

/// Splits labels such as `st12` or `h10_3` into `("st", 1, 2)`.
pub(crate) fn split_label(label: &str) -> Option<(&str, usize, usize)> {
    let cut = label.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = label.split_at(cut);
    let (a, b) = match digits.split_once('_') {
        Some((a, b)) => (a.parse().ok()?, b.parse().ok()?),
        None if digits.len() == 2 && digits.bytes().all(|c| c.is_ascii_digit()) => {
            let d = digits.as_bytes();
            (usize::from(d[0] - b'0'), usize::from(d[1] - b'0'))
        }
        None => return None,
    };
    Some((prefix, a, b))
}

impl JospIndex {
    pub fn parity(self) -> Parity {
        match self {
            JospIndex::U(..) | JospIndex::K(..) => Parity::Odd,
            _ => Parity::Even,
        }
    }

    pub fn label(self) -> String {
        match self {
            JospIndex::H(a, b) => index_label("h", a, b),
            JospIndex::V(a, b) => index_label("v", a, b),
            JospIndex::S(a, b) => index_label("s", a, b),
            JospIndex::St(a, b) => index_label("st", a, b),
            JospIndex::U(a, b) => index_label("u", a, b),
            JospIndex::K(a, b) => index_label("k", a, b),
        }
    }

    pub fn parse(label: &str) -> Option<JospIndex> {
        let (prefix, a, b) = split_label(label)?;
        Some(match prefix {
            "h" if a <= b => JospIndex::H(a, b),
            "v" => JospIndex::V(a, b),
            "s" if a < b => JospIndex::S(a, b),
            "st" if a < b => JospIndex::St(a, b),
            "u" => JospIndex::U(a, b),
            "k" => JospIndex::K(a, b),
            _ => return None,
        })
    }
}

impl fmt::Display for JospIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Canonical basis order: all `h`, then `v`, `s`, `s̃`, `u`, `k`, each
/// family in lexicographic index order.
pub fn basis_indices(n: usize, m: usize) -> Vec<JospIndex> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i..=n {
            out.push(JospIndex::H(i, j));
        }
    }
    for p in 1..=m {
        for q in 1..=m {
            out.push(JospIndex::V(p, q));
        }
    }
    for p in 1..=m {
        for q in p + 1..=m {
            out.push(JospIndex::S(p, q));
        }
    }
    for p in 1..=m {
        for q in p + 1..=m {
            out.push(JospIndex::St(p, q));
        }
    }
    for i in 1..=n {
        for p in 1..=m {
            out.push(JospIndex::U(i, p));
        }
    }
    for i in 1..=n {
        for p in 1..=m {
            out.push(JospIndex::K(i, p));
        }
    }
    out
}

pub fn josp_dim(n: usize, m: usize) -> usize {
    ((n + 2 * m).pow(2) + n - 2 * m) / 2
}

/// A linear combination of basis symbols, kept unnormalized until the end.
pub type Terms<I> = Vec<(Rational, I)>;

pub(crate) fn delta(a: usize, b: usize) -> bool {
    a == b
}

/// Builder for table right-hand sides: pushes `c·δ·sym`, rewriting symbols
/// with non-canonical index order into canonical representatives.
pub(crate) struct Rhs<I>(Terms<I>);

impl<I> Rhs<I> {
    pub(crate) fn new() -> Self {
        Rhs(Vec::new())
    }

    pub(crate) fn put(&mut self, cond: bool, c: Rational, sym: Option<(i64, I)>) -> &mut Self {
        if cond {
            if let Some((s, idx)) = sym {
                self.0.push((c * int(s), idx));
            }
        }
        self
    }

    pub(crate) fn done(&mut self) -> Terms<I> {
        std::mem::take(&mut self.0)
    }
}

/// `h_ij` with `h_ji = h_ij`.
fn h(i: usize, j: usize) -> Option<(i64, JospIndex)> {
    Some((1, JospIndex::H(i.min(j), i.max(j))))
}

/// `e_ij + e_ji` in the basis: `h_ij` off the diagonal, `2·h_ii` on it.
fn h_sym(i: usize, j: usize) -> Option<(i64, JospIndex)> {
    Some((if i == j { 2 } else { 1 }, JospIndex::H(i.min(j), i.max(j))))
}

fn v(p: usize, q: usize) -> Option<(i64, JospIndex)> {
    Some((1, JospIndex::V(p, q)))
}

/// `s_pq` with `s_qp = −s_pq`, `s_pp = 0`.
fn s(p: usize, q: usize) -> Option<(i64, JospIndex)> {
    match p.cmp(&q) {
        std::cmp::Ordering::Less => Some((1, JospIndex::S(p, q))),
        std::cmp::Ordering::Greater => Some((-1, JospIndex::S(q, p))),
        std::cmp::Ordering::Equal => None,
    }
}

fn st(p: usize, q: usize) -> Option<(i64, JospIndex)> {
    match p.cmp(&q) {
        std::cmp::Ordering::Less => Some((1, JospIndex::St(p, q))),
        std::cmp::Ordering::Greater => Some((-1, JospIndex::St(q, p))),
        std::cmp::Ordering::Equal => None,
    }
}

fn u(i: usize, p: usize) -> Option<(i64, JospIndex)> {
    Some((1, JospIndex::U(i, p)))
}

fn k(i: usize, p: usize) -> Option<(i64, JospIndex)> {
    Some((1, JospIndex::K(i, p)))
}

/// Closed-form product `x∘y` for the ordered pairs the table lists; `None`
/// for pairs it does not list in this orientation.
pub fn table_product(x: JospIndex, y: JospIndex) -> Option<Terms<JospIndex>> {
    use JospIndex::*;
    let hf = half();
    let one = Rational::one();
    let mut r = Rhs::new();
    let terms = match (x, y) {
        (H(i, j), H(a, b)) => {
            match (i == j, a == b) {
                (true, true) => r.put(delta(i, a), one, h(i, i)).done(),
                (false, false) => {
                    // h_ij∘h_kl with i≠j, k≠l; a repeated index on the right
                    // stands for e_xx + e_xx.
                    let (k_, l) = (a, b);
                    r.put(delta(j, k_), hf.clone(), h_sym(i, l))
                        .put(delta(l, i), hf.clone(), h_sym(k_, j))
                        .put(delta(j, l), hf.clone(), h_sym(i, k_))
                        .put(delta(i, k_), hf.clone(), h_sym(j, l))
                        .done()
                }
                // not in the table: h_ii∘h_kl = ½(δ_ik h_il + δ_il h_ki), k≠l
                (true, false) => r
                    .put(delta(i, a), hf.clone(), h(i, b))
                    .put(delta(i, b), hf.clone(), h(a, i))
                    .done(),
                (false, true) => return None,
            }
        }
        (S(p, q), St(r_, t)) => r
            .put(delta(q, r_), hf.clone(), v(p, t))
            .put(delta(p, t), hf.clone(), v(q, r_))
            .put(delta(q, t), -hf.clone(), v(p, r_))
            .put(delta(p, r_), -hf.clone(), v(q, t))
            .done(),
        (V(p, q), V(r_, t)) => r
            .put(delta(q, r_), hf.clone(), v(p, t))
            .put(delta(p, t), hf.clone(), v(r_, q))
            .done(),
        (V(p, q), S(r_, t)) => r
            .put(delta(q, r_), hf.clone(), s(p, t))
            .put(delta(t, q), hf.clone(), s(r_, p))
            .done(),
        (V(p, q), St(r_, t)) => r
            .put(delta(p, r_), hf.clone(), st(q, t))
            .put(delta(p, t), hf.clone(), st(r_, q))
            .done(),
        (U(k_, rr), H(i, j)) if i != j => r
            .put(delta(j, k_), hf.clone(), u(i, rr))
            .put(delta(i, k_), hf.clone(), u(j, rr))
            .done(),
        (K(l, p), H(i, j)) if i != j => r
            .put(delta(j, l), hf.clone(), k(i, p))
            .put(delta(i, l), hf.clone(), k(j, p))
            .done(),
        (U(k_, rr), H(i, _)) => r.put(delta(i, k_), hf.clone(), u(i, rr)).done(),
        (K(l, p), H(i, _)) => r.put(delta(i, l), hf.clone(), k(i, p)).done(),
        (U(k_, rr), V(p, q)) => r.put(delta(rr, p), hf.clone(), u(k_, q)).done(),
        (K(l, rr), V(p, q)) => r.put(delta(rr, q), hf.clone(), k(l, p)).done(),
        (U(i, rr), S(p, q)) => r
            .put(delta(rr, p), hf.clone(), k(i, q))
            .put(delta(rr, q), -hf.clone(), k(i, p))
            .done(),
        (K(i, rr), St(p, q)) => r
            .put(delta(rr, p), hf.clone(), u(i, q))
            .put(delta(rr, q), -hf.clone(), u(i, p))
            .done(),
        (U(i, p), U(j, q)) => r.put(delta(i, j), hf.clone(), st(p, q)).done(),
        (K(i, p), K(j, q)) => r.put(delta(i, j), hf.clone(), s(q, p)).done(),
        (U(i, p), K(j, q)) if i == j => r
            .put(true, hf.clone(), v(q, p))
            .put(delta(p, q), -one, h(i, i))
            .done(),
        (U(i, p), K(j, q)) => r
            .put(delta(i, j), hf.clone(), v(q, p))
            .put(delta(p, q), -hf.clone(), h(i, j))
            .done(),
        _ => return None,
    };
    Some(terms)
}

pub(crate) fn terms_to_sparse<I: Copy + Eq + std::hash::Hash>(
    terms: &Terms<I>,
    position: &std::collections::HashMap<I, usize>,
) -> Result<Vec<(usize, Rational)>> {
    let mut acc = crate::superalgebra::Accumulator::default();
    for (c, sym) in terms {
        let idx = position
            .get(sym)
            .ok_or_else(|| Error::Internal("table produced a symbol outside the basis".into()))?;
        acc.add(*idx, c.clone());
    }
    Ok(acc.finish())
}

fn unit_vector(basis: &[JospIndex]) -> Vec<Rational> {
    basis
        .iter()
        .map(|b| match b {
            JospIndex::H(i, j) if i == j => Rational::one(),
            JospIndex::V(p, q) if p == q => Rational::one(),
            _ => Rational::zero(),
        })
        .collect()
}

/// `Josp(n|2m)` from the closed-form multiplication table.
///
/// Pairs listed in one orientation only are completed by supercommutativity;
/// pairs listed in neither orientation multiply to zero.
pub fn build_josp_table(n: usize, m: usize) -> Result<Superalgebra> {
    if n < 1 {
        return usage("Josp(n|2m) needs n ≥ 1");
    }
    let basis = basis_indices(n, m);
    let position = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let mut entries = Vec::new();
    for (a, &x) in basis.iter().enumerate() {
        for (b, &y) in basis.iter().enumerate() {
            let terms = match table_product(x, y) {
                Some(t) => t,
                None => match table_product(y, x) {
                    Some(t) => {
                        let sign = int(koszul_sign(x.parity(), y.parity()));
                        t.into_iter().map(|(c, s)| (c * &sign, s)).collect()
                    }
                    None => Vec::new(),
                },
            };
            for (c, coeff) in terms_to_sparse(&terms, &position)? {
                entries.push((a, b, c, coeff));
            }
        }
    }
    Superalgebra::new(
        format!("Josp({n}|{})", 2 * m),
        basis.iter().map(|b| b.parity()).collect(),
        basis.iter().map(|b| b.label()).collect(),
        entries,
        Some(unit_vector(&basis)),
    )
}

/// A square matrix of order `n + 2m` with the `(n | 2m)` block grading:
/// diagonal blocks even, off-diagonal blocks odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    n: usize,
    m: usize,
    entries: RatMatrix,
}

impl SuperMatrix {
    pub fn new(n: usize, m: usize, entries: RatMatrix) -> Result<Self> {
        let size = n + 2 * m;
        if entries.rows() != size || entries.cols() != size {
            return usage(format!(
                "supermatrix for (n|2m) = ({n}|{}) must be {size}x{size}, got {}x{}",
                2 * m,
                entries.rows(),
                entries.cols()
            ));
        }
        Ok(SuperMatrix { n, m, entries })
    }

    pub fn zero(n: usize, m: usize) -> Self {
        let size = n + 2 * m;
        SuperMatrix {
            n,
            m,
            entries: RatMatrix::zeros(size, size),
        }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        SuperMatrix {
            n,
            m,
            entries: RatMatrix::identity(n + 2 * m),
        }
    }

    /// Matrix unit `e_rc` with 1-based indices.
    pub fn unit(n: usize, m: usize, r: usize, c: usize) -> Self {
        let mut x = Self::zero(n, m);
        x.entries.set(r - 1, c - 1, Rational::one());
        x
    }

    pub fn size(&self) -> usize {
        self.n + 2 * self.m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn entries(&self) -> &RatMatrix {
        &self.entries
    }

    fn block_parity(&self, r: usize, c: usize) -> Parity {
        let side = |i: usize| if i < self.n { Parity::Even } else { Parity::Odd };
        side(r) + side(c)
    }

    /// Parity of a homogeneous matrix; zero counts as even, `None` for mixed.
    pub fn parity(&self) -> Option<Parity> {
        let mut found: Option<Parity> = None;
        for r in 0..self.size() {
            for c in 0..self.size() {
                if self.entries.get(r, c).is_zero() {
                    continue;
                }
                let p = self.block_parity(r, c);
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        Some(found.unwrap_or(Parity::Even))
    }

    fn check_same_shape(&self, other: &SuperMatrix) -> Result<()> {
        if self.shape() != other.shape() {
            return usage("supermatrices of different block shapes");
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_same_shape(other)?;
        Ok(SuperMatrix {
            n: self.n,
            m: self.m,
            entries: self.entries.add(&other.entries)?,
        })
    }

    pub fn sub(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_same_shape(other)?;
        Ok(SuperMatrix {
            n: self.n,
            m: self.m,
            entries: self.entries.sub(&other.entries)?,
        })
    }

    pub fn scale(&self, c: &Rational) -> SuperMatrix {
        SuperMatrix {
            n: self.n,
            m: self.m,
            entries: self.entries.scale(c),
        }
    }

    pub fn mul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_same_shape(other)?;
        Ok(SuperMatrix {
            n: self.n,
            m: self.m,
            entries: self.entries.mul(&other.entries)?,
        })
    }

    /// `a∘b = ½(ab + (−1)^{|a||b|} ba)` for homogeneous arguments.
    pub fn jordan(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        let (Some(pa), Some(pb)) = (self.parity(), other.parity()) else {
            return usage("Jordan product needs homogeneous supermatrices");
        };
        let ab = self.mul(other)?;
        let ba = other.mul(self)?.scale(&int(koszul_sign(pa, pb)));
        Ok(ab.add(&ba)?.scale(&half()))
    }

    pub fn flatten(&self) -> Vec<Rational> {
        self.entries.entries().to_vec()
    }
}

/// An orthosymplectic-type superinvolution on `M_{n|2m}` determined by the
/// symplectic matrix `U`.
#[derive(Clone, Debug)]
pub struct OspForm {
    n: usize,
    m: usize,
    u: RatMatrix,
    u_inv: RatMatrix,
}

impl OspForm {
    /// `U = [[0, −I_m], [I_m, 0]]`.
    pub fn standard(n: usize, m: usize) -> Self {
        let mut u = RatMatrix::zeros(2 * m, 2 * m);
        for p in 0..m {
            u.set(p, m + p, -Rational::one());
            u.set(m + p, p, Rational::one());
        }
        Self::with_u(n, m, u).expect("standard U is invertible")
    }

    /// Same formula with an arbitrary invertible `U`; used for negative controls.
    pub fn with_u(n: usize, m: usize, u: RatMatrix) -> Result<Self> {
        let size = 2 * m;
        if u.rows() != size || u.cols() != size {
            return usage("U must be 2m x 2m");
        }
        let Some(u_inv) = inverse(&u)? else {
            return usage("U must be invertible");
        };
        Ok(OspForm { n, m, u, u_inv })
    }

    /// `[[a, b], [c, d]] ↦ diag(I, U)·[[aᵗ, −cᵗ], [bᵗ, dᵗ]]·diag(I, U⁻¹)`.
    pub fn apply(&self, x: &SuperMatrix) -> Result<SuperMatrix> {
        if x.shape() != (self.n, self.m) {
            return usage(format!(
                "supermatrix of shape {:?} does not match osp form ({}|{})",
                x.shape(),
                self.n,
                2 * self.m
            ));
        }
        let (n, size) = (self.n, x.size());
        let a = x.entries();
        let mut t = RatMatrix::zeros(size, size);
        for r in 0..size {
            for c in 0..size {
                // transpose, negating the image of the lower-left block
                let val = a.get(c, r).clone();
                let negate = r < n && c >= n;
                t.set(r, c, if negate { -val } else { val });
            }
        }
        let left = self.embed(&self.u);
        let right = self.embed(&self.u_inv);
        SuperMatrix::new(self.n, self.m, left.mul(&t)?.mul(&right)?)
    }

    fn embed(&self, block: &RatMatrix) -> RatMatrix {
        let size = self.n + 2 * self.m;
        let mut out = RatMatrix::zeros(size, size);
        for i in 0..self.n {
            out.set(i, i, Rational::one());
        }
        for r in 0..2 * self.m {
            for c in 0..2 * self.m {
                out.set(self.n + r, self.n + c, block.get(r, c).clone());
            }
        }
        out
    }
}

/// The standard osp superinvolution.
pub fn osp(x: &SuperMatrix) -> Result<SuperMatrix> {
    let (n, m) = x.shape();
    OspForm::standard(n, m).apply(x)
}

/// Matrix realization of each basis symbol, built from matrix units.
pub fn josp_matrix_basis(n: usize, m: usize) -> Vec<(JospIndex, SuperMatrix)> {
    let e = |r: usize, c: usize| SuperMatrix::unit(n, m, r, c);
    let sum = |a: SuperMatrix, b: SuperMatrix| a.add(&b).expect("same shape");
    let diff = |a: SuperMatrix, b: SuperMatrix| a.sub(&b).expect("same shape");
    basis_indices(n, m)
        .into_iter()
        .map(|idx| {
            let mat = match idx {
                JospIndex::H(i, j) if i == j => e(i, i),
                JospIndex::H(i, j) => sum(e(i, j), e(j, i)),
                JospIndex::V(p, q) => sum(e(n + p, n + q), e(n + m + q, n + m + p)),
                JospIndex::S(p, q) => diff(e(n + p, n + m + q), e(n + q, n + m + p)),
                JospIndex::St(p, q) => diff(e(n + m + p, n + q), e(n + m + q, n + p)),
                JospIndex::U(i, p) => sum(e(i, n + p), e(n + m + p, i)),
                JospIndex::K(i, p) => diff(e(i, n + m + p), e(n + p, i)),
            };
            (idx, mat)
        })
        .collect()
}

/// Coordinates of `target` in the span of `basis`, or `None` outside the span.
pub(crate) fn express_in(basis: &RatMatrix, target: &SuperMatrix) -> Result<Option<Vec<Rational>>> {
    Ok(match solve_linear(basis, &target.flatten())? {
        LinearSolution::Solved { particular, nullspace } => {
            if !nullspace.is_empty() {
                return Err(Error::Internal("matrix basis is linearly dependent".into()));
            }
            Some(particular)
        }
        LinearSolution::Inconsistent { .. } => None,
    })
}

pub(crate) fn basis_matrix(mats: &[&SuperMatrix]) -> Result<RatMatrix> {
    let rows = mats.first().map_or(0, |x| x.size() * x.size());
    let cols: Vec<Vec<Rational>> = mats.iter().map(|x| x.flatten()).collect();
    RatMatrix::from_columns(rows, &cols)
}

/// `Josp(n|2m)` as `H(M_{n|2m}, osp)` with the symmetrized product, expressed
/// in the matrix basis.
pub fn build_josp_matrix(n: usize, m: usize) -> Result<Superalgebra> {
    if n < 1 {
        return usage("Josp(n|2m) needs n ≥ 1");
    }
    let form = OspForm::standard(n, m);
    let basis = josp_matrix_basis(n, m);
    for (idx, x) in &basis {
        if form.apply(x)? != *x {
            return Err(Error::Internal(format!("{idx} is not osp-symmetric")));
        }
    }
    let mats: Vec<&SuperMatrix> = basis.iter().map(|(_, x)| x).collect();
    let span = basis_matrix(&mats)?;
    let mut entries = Vec::new();
    for (a, (xa, x)) in basis.iter().enumerate() {
        for (b, (xb, y)) in basis.iter().enumerate() {
            let prod = x.jordan(y)?;
            let coords = express_in(&span, &prod)?.ok_or_else(|| {
                Error::Internal(format!("{xa}∘{xb} left the span of the osp-symmetric basis"))
            })?;
            for (c, coeff) in coords.into_iter().enumerate() {
                if !coeff.is_zero() {
                    entries.push((a, b, c, coeff));
                }
            }
        }
    }
    let unit = express_in(&span, &SuperMatrix::identity(n, m))?
        .ok_or_else(|| Error::Internal("identity is not osp-symmetric".into()))?;
    Superalgebra::new(
        format!("Josp({n}|{})", 2 * m),
        basis.iter().map(|(b, _)| b.parity()).collect(),
        basis.iter().map(|(b, _)| b.label()).collect(),
        entries,
        Some(unit),
    )
}

/// True iff `c_A[i][j][k] = c_B[π i][π j][π k]` for every index triple.
pub fn structure_iso_check(a: &Superalgebra, b: &Superalgebra, basis_map: &[usize]) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: b.dim(),
            context: "isomorphism check",
        });
    }
    if basis_map.len() != a.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: basis_map.len(),
            context: "basis map length",
        });
    }
    let mut seen = vec![false; b.dim()];
    for (i, &j) in basis_map.iter().enumerate() {
        if j >= b.dim() || std::mem::replace(&mut seen[j], true) {
            return usage("basis map is not a bijection");
        }
        if a.parity(i) != b.parity(j) {
            return usage(format!("basis map sends {} to {} of different parity", a.label(i), b.label(j)));
        }
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let mut mapped: Vec<(usize, Rational)> = a
                .product(i, j)
                .iter()
                .map(|(k, c)| (basis_map[*k], c.clone()))
                .collect();
            mapped.sort_by_key(|(k, _)| *k);
            if &mapped != b.product(basis_map[i], basis_map[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Map `i ↦ index in b of a's i-th label`.
pub fn canonical_map(a: &Superalgebra, b: &Superalgebra) -> Result<Vec<usize>> {
    a.labels()
        .iter()
        .map(|l| {
            b.index_of(l)
                .ok_or_else(|| Error::Usage(format!("label {l} of {} missing in {}", a.name(), b.name())))
        })
        .collect()
}

/// Checks `(X*)* = X` on matrix units and `(XY)* = (−1)^{|X||Y|} Y*X*` on all
/// pairs of matrix units.
pub fn superinvolution_laws(n: usize, m: usize) -> Result<IdentityReport> {
    superinvolution_laws_for(&OspForm::standard(n, m))
}

pub fn superinvolution_laws_for(form: &OspForm) -> Result<IdentityReport> {
    let (n, m) = (form.n, form.m);
    let size = n + 2 * m;
    let units: Vec<(usize, usize, SuperMatrix)> = (1..=size)
        .flat_map(|r| (1..=size).map(move |c| (r, c)))
        .map(|(r, c)| (r, c, SuperMatrix::unit(n, m, r, c)))
        .collect();
    let images: Vec<SuperMatrix> = units.iter().map(|(_, _, x)| form.apply(x)).collect::<Result<_>>()?;
    let mut violations = Vec::new();
    for ((r, c, x), img) in units.iter().zip(&images) {
        let back = form.apply(img)?;
        if back != *x {
            violations.push(Violation {
                indices: vec![*r, *c],
                residual: Element::from_coords(back.sub(x)?.flatten()),
            });
        }
    }
    for (a, (r1, c1, x)) in units.iter().enumerate() {
        for (b, (r2, c2, y)) in units.iter().enumerate() {
            let px = x.parity().expect("matrix unit is homogeneous");
            let py = y.parity().expect("matrix unit is homogeneous");
            let lhs = form.apply(&x.mul(y)?)?;
            let rhs = images[b].mul(&images[a])?.scale(&int(koszul_sign(px, py)));
            if lhs != rhs {
                violations.push(Violation {
                    indices: vec![*r1, *c1, *r2, *c2],
                    residual: Element::from_coords(lhs.sub(&rhs)?.flatten()),
                });
            }
        }
    }
    Ok(IdentityReport::from_violations(violations))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::rat;
    use crate::superalgebra::{check_super_jordan, check_supercommutative, multiply};

    #[test]
    fn labels_round_trip() {
        for idx in basis_indices(3, 2) {
            assert_eq!(JospIndex::parse(&idx.label()), Some(idx));
        }
        assert_eq!(JospIndex::parse("h21"), None);
        assert_eq!(JospIndex::parse("st11"), None);
        assert_eq!(JospIndex::parse("h10_12"), Some(JospIndex::H(10, 12)));
    }

    #[test]
    fn josp_1_2_table() {
        let a = build_josp_table(1, 1).unwrap();
        assert_eq!(a.labels(), ["h11", "v11", "u11", "k11"]);
        let (hh, vv, uu, kk) = (0, 1, 2, 3);
        let e = |i| Element::basis(4, i);
        assert_eq!(multiply(&a, &e(hh), &e(hh)).unwrap(), e(hh));
        assert!(multiply(&a, &e(uu), &e(uu)).unwrap().is_zero());
        let uk = multiply(&a, &e(uu), &e(kk)).unwrap();
        assert_eq!(uk, e(vv).scale(&half()).sub(&e(hh)));
        let ku = multiply(&a, &e(kk), &e(uu)).unwrap();
        assert_eq!(ku, uk.scale(&int(-1)));
    }

    #[test]
    fn degenerate_m0_is_symmetric_matrices() {
        let a = build_josp_table(1, 0).unwrap();
        assert_eq!(a.dim(), 1);
        assert_eq!(a.constant(0, 0, 0), int(1));
        let b = build_josp_table(3, 0).unwrap();
        assert_eq!(b.dim(), 6);
        assert!(check_supercommutative(&b).holds && check_super_jordan(&b).holds);
    }

    #[test]
    fn n_zero_is_rejected() {
        assert!(matches!(build_josp_table(0, 1), Err(Error::Usage(_))));
        assert!(matches!(build_josp_matrix(0, 1), Err(Error::Usage(_))));
    }

    #[test]
    fn dimension_formula() {
        for (n, m) in [(1, 0), (1, 1), (2, 1), (1, 2), (3, 1), (2, 2)] {
            let a = build_josp_table(n, m).unwrap();
            assert_eq!(a.dim(), josp_dim(n, m));
            let expected = n * (n + 1) / 2 + m * m + m * (m.saturating_sub(1)) + 2 * n * m;
            assert_eq!(a.dim(), expected);
        }
        assert_eq!(josp_dim(2, 1), 8);
    }

    #[test]
    fn osp_fixes_identity_and_corner() {
        let id = SuperMatrix::identity(1, 1);
        assert_eq!(osp(&id).unwrap(), id);
        let e11 = SuperMatrix::unit(1, 1, 1, 1);
        assert_eq!(osp(&e11).unwrap(), e11);
        let u = SuperMatrix::unit(1, 1, 1, 2).add(&SuperMatrix::unit(1, 1, 3, 1)).unwrap();
        assert_eq!(osp(&u).unwrap(), u);
    }

    #[test]
    fn osp_rejects_wrong_shape() {
        let x = SuperMatrix::unit(2, 1, 1, 1);
        assert!(OspForm::standard(1, 1).apply(&x).is_err());
        assert!(SuperMatrix::new(1, 1, RatMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn matrix_basis_is_osp_symmetric() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            for (idx, x) in josp_matrix_basis(n, m) {
                assert_eq!(osp(&x).unwrap(), x, "{idx}");
                assert_eq!(x.parity(), Some(idx.parity()), "{idx}");
            }
        }
    }

    #[test]
    fn h_acts_on_u_by_half_in_matrices() {
        let basis = josp_matrix_basis(1, 1);
        let (hh, uu) = (&basis[0].1, &basis[2].1);
        assert_eq!(hh.jordan(uu).unwrap(), uu.scale(&rat(1, 2)));
    }

    #[test]
    fn table_and_matrix_agree() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (1, 3)] {
            let t = build_josp_table(n, m).unwrap();
            let x = build_josp_matrix(n, m).unwrap();
            let map = canonical_map(&t, &x).unwrap();
            assert!(structure_iso_check(&t, &x, &map).unwrap(), "({n}|{})", 2 * m);
            assert_eq!(t.unit(), x.unit());
        }
    }

    #[test]
    fn iso_check_rejects_bad_maps() {
        let a = build_josp_table(1, 1).unwrap();
        let id: Vec<usize> = (0..4).collect();
        assert!(structure_iso_check(&a, &a, &id).unwrap());
        assert!(structure_iso_check(&a, &a, &[0, 0, 2, 3]).is_err());
        assert!(structure_iso_check(&a, &a, &[2, 1, 0, 3]).is_err());
        // h ↔ v is parity-preserving but not an automorphism of the table
        assert!(!structure_iso_check(&a, &a, &[1, 0, 2, 3]).unwrap());
        let b = build_josp_table(2, 1).unwrap();
        assert!(matches!(structure_iso_check(&a, &b, &id), Err(Error::Dimension { .. })));
    }

    #[test]
    fn superinvolution_laws_hold() {
        for (n, m) in [(1, 1), (2, 1), (1, 2)] {
            let r = superinvolution_laws(n, m).unwrap();
            assert!(r.holds, "({n}|{}) {:?}", 2 * m, r.violations.first());
        }
    }

    #[test]
    fn identity_u_breaks_antihomomorphism_law() {
        let form = OspForm::with_u(1, 1, RatMatrix::identity(2)).unwrap();
        let r = superinvolution_laws_for(&form).unwrap();
        assert!(!r.holds);
        // conjugating a supertranspose by diag(I, U) keeps the signed
        // antihomomorphism law for every invertible U; only involutivity
        // depends on U, and it breaks exactly on odd matrix units
        assert!(r.violations.iter().all(|v| v.indices.len() == 2));
        for v in &r.violations {
            let x = SuperMatrix::unit(1, 1, v.indices[0], v.indices[1]);
            assert_eq!(x.parity(), Some(Parity::Odd));
        }
    }

    #[test]
    fn h_plus_skew_decomposition_of_matrix_units() {
        let (n, m) = (2, 1);
        let size = n + 2 * m;
        for r in 1..=size {
            for c in 1..=size {
                let x = SuperMatrix::unit(n, m, r, c);
                let ox = osp(&x).unwrap();
                let sym = x.add(&ox).unwrap().scale(&half());
                let skw = x.sub(&ox).unwrap().scale(&half());
                assert_eq!(osp(&sym).unwrap(), sym);
                assert_eq!(osp(&skw).unwrap(), skw.scale(&int(-1)));
                assert_eq!(sym.add(&skw).unwrap(), x);
            }
        }
    }
}
