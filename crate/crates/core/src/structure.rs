//! Orthogonal idempotent families and Peirce decompositions.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{usage, Error, Result};
use crate::ratlinalg::{inverse, nullspace, RatMatrix, Rational};
use crate::superalgebra::{multiply, Element, IdentityReport, Parity, Superalgebra, Violation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdempotentFamily {
    pub members: Vec<Element>,
}

impl IdempotentFamily {
    pub fn new(members: Vec<Element>) -> Self {
        IdempotentFamily { members }
    }

    /// Basis elements named by their labels, e.g. `["h11", "h22", "v11"]`.
    pub fn from_labels<S: AsRef<str>>(alg: &Superalgebra, labels: &[S]) -> Result<Self> {
        let members = labels
            .iter()
            .map(|l| {
                let l = l.as_ref();
                alg.index_of(l)
                    .map(|i| Element::basis(alg.dim(), i))
                    .ok_or_else(|| Error::Usage(format!("no basis element {l} in {}", alg.name())))
            })
            .collect::<Result<_>>()?;
        Ok(IdempotentFamily { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Even idempotents, pairwise orthogonal, summing to the unit.
pub fn verify_idempotent_family(alg: &Superalgebra, family: &IdempotentFamily) -> Result<bool> {
    let Some(unit) = alg.unit() else {
        return usage(format!("{} has no unit", alg.name()));
    };
    let mut sum = Element::zero(alg.dim());
    for (i, e) in family.members.iter().enumerate() {
        if e.dim() != alg.dim() {
            return Err(Error::Dimension {
                expected: alg.dim(),
                found: e.dim(),
                context: "idempotent coordinates",
            });
        }
        if e.homogeneous_parity(alg) != Some(Parity::Even) {
            return Ok(false);
        }
        for (j, f) in family.members.iter().enumerate() {
            let ef = multiply(alg, e, f)?;
            let expected = if i == j { e.clone() } else { Element::zero(alg.dim()) };
            if ef != expected {
                return Ok(false);
            }
        }
        sum = sum.add(e);
    }
    Ok(sum.coords == unit)
}

/// Component key `(i, j)` with `i ≤ j`; `(i, i)` is `J_ii`.
pub type PeirceKey = (usize, usize);

#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    pub algebra: Superalgebra,
    pub family_size: usize,
    /// Every key with `i ≤ j` is present, possibly with an empty basis.
    pub components: BTreeMap<PeirceKey, Vec<Element>>,
}

impl PeirceDecomposition {
    pub fn dims(&self) -> BTreeMap<PeirceKey, usize> {
        self.components.iter().map(|(k, v)| (*k, v.len())).collect()
    }

    /// Component of a single element, if it lies in one.
    pub fn component_of(&self, x: &Element) -> Result<Option<PeirceKey>> {
        let coords = self.coordinates(x)?;
        let mut found = None;
        let mut offset = 0;
        for (key, basis) in &self.components {
            if coords[offset..offset + basis.len()].iter().any(|c| !c.is_zero()) {
                if found.is_some() {
                    return Ok(None);
                }
                found = Some(*key);
            }
            offset += basis.len();
        }
        Ok(found)
    }

    /// Columns are the component bases in key order.
    pub fn change_of_basis(&self) -> RatMatrix {
        let cols: Vec<Vec<Rational>> = self
            .components
            .values()
            .flatten()
            .map(|e| e.coords.clone())
            .collect();
        RatMatrix::from_columns(self.algebra.dim(), &cols).expect("coordinate vectors of equal length")
    }

    fn coordinates(&self, x: &Element) -> Result<Vec<Rational>> {
        let inv = inverse(&self.change_of_basis())?
            .ok_or_else(|| Error::Structure("Peirce components do not form a basis".into()))?;
        inv.mul_vec(&x.coords)
    }
}

fn operator_stack(alg: &Superalgebra, family: &IdempotentFamily, eigen: &[Rational]) -> RatMatrix {
    let dim = alg.dim();
    let mut rows = Vec::with_capacity(dim * family.len());
    for (e, lambda) in family.members.iter().zip(eigen) {
        let l = alg.left_operator(&e.coords);
        for r in 0..dim {
            let mut row = l.row(r).to_vec();
            row[r] -= lambda;
            rows.push(row);
        }
    }
    RatMatrix::from_rows(rows).expect("rows of equal length")
}

/// Joint eigenspaces: `J_ii` where `e_i` acts as 1 and the others as 0,
/// `J_ij` where `e_i`, `e_j` act as ½ and the others as 0.
pub fn peirce_decompose(alg: &Superalgebra, family: &IdempotentFamily) -> Result<PeirceDecomposition> {
    if !verify_idempotent_family(alg, family)? {
        return usage("not a complete family of orthogonal even idempotents");
    }
    let t = family.len();
    let half = crate::ratlinalg::half();
    let mut components = BTreeMap::new();
    let mut total = 0;
    for i in 0..t {
        for j in i..t {
            let eigen: Vec<Rational> = (0..t)
                .map(|k| match (i == j, k == i || k == j) {
                    (true, true) => Rational::from_integer(1.into()),
                    (false, true) => half.clone(),
                    _ => Rational::zero(),
                })
                .collect();
            let basis: Vec<Element> = if t == 0 {
                Vec::new()
            } else {
                nullspace(&operator_stack(alg, family, &eigen))
                    .into_iter()
                    .map(Element::from_coords)
                    .collect()
            };
            total += basis.len();
            components.insert((i, j), basis);
        }
    }
    if total != alg.dim() {
        return Err(Error::Structure(format!(
            "Peirce components of {} span dimension {total}, not {}",
            alg.name(),
            alg.dim()
        )));
    }
    Ok(PeirceDecomposition {
        algebra: alg.clone(),
        family_size: t,
        components,
    })
}

/// Components allowed to contain `J_p · J_q`.
pub fn peirce_targets(p: PeirceKey, q: PeirceKey) -> Vec<PeirceKey> {
    let diag = |k: PeirceKey| k.0 == k.1;
    let key = |a: usize, b: usize| (a.min(b), a.max(b));
    match (diag(p), diag(q)) {
        (true, true) => if p == q { vec![p] } else { vec![] },
        (true, false) => if p.0 == q.0 || p.0 == q.1 { vec![q] } else { vec![] },
        (false, true) => if q.0 == p.0 || q.0 == p.1 { vec![p] } else { vec![] },
        (false, false) => {
            if p == q {
                vec![(p.0, p.0), (p.1, p.1)]
            } else {
                let shared: Vec<usize> = [p.0, p.1].into_iter().filter(|x| *x == q.0 || *x == q.1).collect();
                match shared.as_slice() {
                    [s] => {
                        let a = if p.0 == *s { p.1 } else { p.0 };
                        let b = if q.0 == *s { q.1 } else { q.0 };
                        vec![key(a, b)]
                    }
                    _ => vec![],
                }
            }
        }
    }
}

/// Checks every product of component basis elements against the Peirce
/// multiplication rules. Violation indices are positions in the
/// concatenated component bases.
pub fn verify_peirce_relations(d: &PeirceDecomposition) -> Result<IdentityReport> {
    let alg = &d.algebra;
    let inv = inverse(&d.change_of_basis())?
        .ok_or_else(|| Error::Structure("Peirce components do not form a basis".into()))?;
    let mut flat: Vec<(PeirceKey, &Element)> = Vec::new();
    let mut ranges = BTreeMap::new();
    for (key, basis) in &d.components {
        ranges.insert(*key, flat.len()..flat.len() + basis.len());
        flat.extend(basis.iter().map(|e| (*key, e)));
    }
    let mut violations = Vec::new();
    for (a, (p, x)) in flat.iter().enumerate() {
        for (b, (q, y)) in flat.iter().enumerate() {
            let prod = multiply(alg, x, y)?;
            let mut coords = inv.mul_vec(&prod.coords)?;
            for t in peirce_targets(*p, *q) {
                for c in &mut coords[ranges[&t].clone()] {
                    *c = Rational::zero();
                }
            }
            if coords.iter().any(|c| !c.is_zero()) {
                let stray = d.change_of_basis().mul_vec(&coords)?;
                violations.push(Violation {
                    indices: vec![a, b],
                    residual: Element::from_coords(stray),
                });
            }
        }
    }
    Ok(IdentityReport::from_violations(violations))
}
