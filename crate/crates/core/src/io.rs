//! JSON interchange for algebras, bimodules and marked extensions.
//!
//! Rationals are written as `"p/q"` strings, indices are 0-based, and
//! sparse tables list nonzero entries only, sorted lexicographically.

use serde::{Deserialize, Serialize};

use crate::bimodule::Superbimodule;
use crate::error::{Error, Result};
use crate::ratlinalg::{format_rational, parse_rational, Rational};
use crate::splitting::MarkedExtension;
use crate::superalgebra::{Parity, Superalgebra};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub basis: Vec<String>,
    pub unit: Option<Vec<String>>,
    pub constants: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub basis: Vec<String>,
    pub algebra: String,
    pub algebra_parity: Vec<u8>,
    pub action: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFile {
    #[serde(flatten)]
    pub algebra: AlgebraFile,
    pub ideal: Vec<usize>,
    pub model: AlgebraFile,
    /// `[model index, algebra index, coefficient]`.
    pub section: Vec<(usize, usize, String)>,
}

fn parities(bits: &[u8]) -> Result<Vec<Parity>> {
    bits.iter()
        .map(|&b| Parity::from_bit(b).map_err(|_| Error::Format(format!("parity must be 0 or 1, got {b}"))))
        .collect()
}

fn bits(p: &[Parity]) -> Vec<u8> {
    p.iter().map(|p| p.bit()).collect()
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|_| Error::Format(format!("bad rational {s:?}")))
}

fn check_dim(declared: usize, found: usize, context: &'static str) -> Result<()> {
    if declared != found {
        return Err(Error::Dimension {
            expected: declared,
            found,
            context,
        });
    }
    Ok(())
}

impl AlgebraFile {
    pub fn from_algebra(a: &Superalgebra) -> Self {
        AlgebraFile {
            name: a.name().to_string(),
            dim: a.dim(),
            parity: bits(a.parities()),
            basis: a.labels().to_vec(),
            unit: a.unit().map(|u| u.iter().map(format_rational).collect()),
            constants: a
                .entries()
                .map(|(i, j, k, c)| (i, j, k, format_rational(c)))
                .collect(),
        }
    }

    pub fn to_algebra(&self) -> Result<Superalgebra> {
        check_dim(self.dim, self.parity.len(), "algebra parity vector")?;
        let unit = match &self.unit {
            Some(u) => Some(u.iter().map(|s| rational(s)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        let entries = self
            .constants
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Superalgebra::new(self.name.clone(), parities(&self.parity)?, self.basis.clone(), entries, unit)
    }
}

impl BimoduleFile {
    pub fn from_bimodule(m: &Superbimodule) -> Self {
        BimoduleFile {
            name: m.name().to_string(),
            dim: m.dim(),
            parity: bits(m.parities()),
            basis: m.labels().to_vec(),
            algebra: m.algebra_name().to_string(),
            algebra_parity: bits(m.algebra_parities()),
            action: m
                .entries()
                .map(|(i, j, k, c)| (i, j, k, format_rational(c)))
                .collect(),
        }
    }

    pub fn to_bimodule(&self) -> Result<Superbimodule> {
        check_dim(self.dim, self.parity.len(), "bimodule parity vector")?;
        let entries = self
            .action
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, rational(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Superbimodule::new(
            self.name.clone(),
            self.algebra.clone(),
            parities(&self.algebra_parity)?,
            parities(&self.parity)?,
            self.basis.clone(),
            entries,
        )
    }
}

impl ExtensionFile {
    pub fn from_extension(ext: &MarkedExtension) -> Self {
        let mut section = Vec::new();
        for (a, v) in ext.section().iter().enumerate() {
            for (i, c) in v.iter().enumerate() {
                if !num_traits::Zero::is_zero(c) {
                    section.push((a, i, format_rational(c)));
                }
            }
        }
        ExtensionFile {
            algebra: AlgebraFile::from_algebra(ext.algebra()),
            ideal: ext.ideal().to_vec(),
            model: AlgebraFile::from_algebra(ext.model()),
            section,
        }
    }

    pub fn to_extension(&self) -> Result<MarkedExtension> {
        let algebra = self.algebra.to_algebra()?;
        let model = self.model.to_algebra()?;
        let mut section = vec![vec![Rational::default(); algebra.dim()]; model.dim()];
        for (a, i, c) in &self.section {
            if *a >= model.dim() || *i >= algebra.dim() {
                return Err(Error::Format(format!("section entry ({a}, {i}) out of range")));
            }
            section[*a][*i] += rational(c)?;
        }
        MarkedExtension::new(algebra, self.ideal.clone(), model, section)
    }
}

/// Any of the three file kinds, told apart by their distinguishing keys.
#[derive(Clone, Debug)]
pub enum Document {
    Algebra(Superalgebra),
    Bimodule(Superbimodule),
    Extension(MarkedExtension),
}

impl Document {
    /// The algebra to run identity checks on: the extension's own algebra
    /// for extension files. `None` for bimodules.
    pub fn algebra(&self) -> Option<&Superalgebra> {
        match self {
            Document::Algebra(a) => Some(a),
            Document::Extension(e) => Some(e.algebra()),
            Document::Bimodule(_) => None,
        }
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Format("top-level JSON value must be an object".into()))?;
    if obj.contains_key("action") {
        Ok(Document::Bimodule(serde_json::from_value::<BimoduleFile>(value)?.to_bimodule()?))
    } else if obj.contains_key("ideal") {
        Ok(Document::Extension(serde_json::from_value::<ExtensionFile>(value)?.to_extension()?))
    } else if obj.contains_key("constants") {
        Ok(Document::Algebra(serde_json::from_value::<AlgebraFile>(value)?.to_algebra()?))
    } else {
        Err(Error::Format("not an algebra, bimodule or extension file".into()))
    }
}

pub fn read_document(path: &std::path::Path) -> Result<Document> {
    parse_document(&std::fs::read_to_string(path)?)
}

pub fn algebra_json(a: &Superalgebra) -> String {
    to_pretty(&AlgebraFile::from_algebra(a))
}

pub fn bimodule_json(m: &Superbimodule) -> String {
    to_pretty(&BimoduleFile::from_bimodule(m))
}

pub fn extension_json(e: &MarkedExtension) -> String {
    to_pretty(&ExtensionFile::from_extension(e))
}

pub fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}
