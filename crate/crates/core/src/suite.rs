//! Batch runs over a grid of `(n, m)` with a deterministic JSON report.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::bimodule::{build_bimodule, RadicalKind};
use crate::error::{usage, Result};
use crate::io::{algebra_json, bimodule_json, extension_json};
use crate::josp::{build_josp_matrix, build_josp_table, canonical_map, structure_iso_check, superinvolution_laws};
use crate::splitting::{
    build_counterexample, seeded_perturbations, solve_splitting, splitting_system, trivial_extension, verify_splitting,
    MarkedExtension, SplitCertificate,
};
use crate::superalgebra::{check_super_jordan, check_supercommutative};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    /// Operation that produced the verdict.
    pub operation: String,
    /// Input it ran on.
    pub input: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub verdicts: Vec<Verdict>,
    /// Milliseconds per phase. Wall-clock data, so only filled on request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Vec<(String, u128)>>,
}

impl RunReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| !v.pass)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub grid: Vec<(usize, usize)>,
    pub kinds: Vec<RadicalKind>,
    pub counterexample: bool,
    /// Seed for random section perturbations; none are run without it.
    pub seed: Option<u64>,
    pub perturbations: usize,
    pub timing: bool,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            grid: vec![(1, 1)],
            kinds: vec![RadicalKind::Reg],
            counterexample: false,
            seed: None,
            perturbations: 5,
            timing: false,
        }
    }
}

fn digest(name: String, text: &str) -> InputDigest {
    let hash = Sha256::digest(text.as_bytes());
    InputDigest {
        name,
        sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
    }
}

fn verdict(operation: &str, input: &str, expected: &str, observed: impl Into<String>) -> Verdict {
    let observed = observed.into();
    Verdict {
        operation: operation.to_string(),
        input: input.to_string(),
        expected: expected.to_string(),
        pass: observed == expected,
        observed,
    }
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn split_kind(c: &SplitCertificate) -> &'static str {
    if c.is_split() {
        "split"
    } else {
        "no-split"
    }
}

#[derive(Default)]
struct Partial {
    inputs: Vec<InputDigest>,
    verdicts: Vec<Verdict>,
    timing: Vec<(String, u128)>,
}

impl Partial {
    fn timed<T>(&mut self, phase: String, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timing.push((phase, start.elapsed().as_millis()));
        out
    }
}

fn run_extension(p: &mut Partial, tag: &str, ext: &MarkedExtension, opts: &SuiteOptions) -> Result<()> {
    p.inputs.push(digest(tag.to_string(), &extension_json(ext)));
    let jordan = p.timed(format!("{tag} identity"), || check_super_jordan(ext.algebra()).holds);
    p.verdicts.push(verdict("check_super_jordan", tag, "holds", holds(jordan)));
    let cert = p.timed(format!("{tag} solve"), || solve_splitting(ext))?;
    p.verdicts.push(verdict("solve_splitting", tag, "split", split_kind(&cert)));
    if let SplitCertificate::Split(tau) = &cert {
        let ok = verify_splitting(ext, tau)?;
        p.verdicts.push(verdict("verify_splitting", tag, "holds", holds(ok)));
    }
    if let Some(seed) = opts.seed {
        for (i, moved) in seeded_perturbations(ext, seed, opts.perturbations)?.iter().enumerate() {
            let input = format!("{tag} perturbed#{i}");
            let cert = solve_splitting(moved)?;
            p.verdicts.push(verdict("solve_splitting", &input, "split", split_kind(&cert)));
            if let SplitCertificate::Split(tau) = &cert {
                let ok = verify_splitting(moved, tau)?;
                p.verdicts.push(verdict("verify_splitting", &input, "holds", holds(ok)));
            }
        }
    }
    Ok(())
}

fn run_grid_point(n: usize, m: usize, opts: &SuiteOptions) -> Result<Partial> {
    let mut p = Partial::default();
    let tag = format!("Josp({n}|{})", 2 * m);
    let table = p.timed(format!("{tag} build"), || build_josp_table(n, m))?;
    let matrix = build_josp_matrix(n, m)?;
    p.inputs.push(digest(format!("{tag} table"), &algebra_json(&table)));
    p.inputs.push(digest(format!("{tag} matrix"), &algebra_json(&matrix)));
    let iso = structure_iso_check(&table, &matrix, &canonical_map(&table, &matrix)?)?;
    p.verdicts.push(verdict("structure_iso_check", &tag, "holds", holds(iso)));
    let inv = superinvolution_laws(n, m)?;
    p.verdicts.push(verdict("superinvolution_laws", &tag, "holds", holds(inv.holds)));
    let comm = check_supercommutative(&table).holds;
    p.verdicts.push(verdict("check_supercommutative", &tag, "holds", holds(comm)));
    let jordan = p.timed(format!("{tag} identity"), || check_super_jordan(&table).holds);
    p.verdicts.push(verdict("check_super_jordan", &tag, "holds", holds(jordan)));
    for &kind in &opts.kinds {
        let module = build_bimodule(n, m, kind)?;
        let ext_tag = format!("{tag}+{}", kind.name());
        p.inputs.push(digest(format!("{ext_tag} module"), &bimodule_json(&module)));
        let ext = trivial_extension(n, m, kind)?;
        run_extension(&mut p, &ext_tag, &ext, opts)?;
    }
    Ok(p)
}

fn run_counterexample(opts: &SuiteOptions) -> Result<Partial> {
    let mut p = Partial::default();
    let tag = "counterexample";
    let ext = build_counterexample()?;
    p.inputs.push(digest(tag.to_string(), &extension_json(&ext)));
    let jordan = check_supercommutative(ext.algebra()).holds && check_super_jordan(ext.algebra()).holds;
    p.verdicts.push(verdict("check_super_jordan", tag, "holds", holds(jordan)));
    let cert = p.timed(format!("{tag} solve"), || solve_splitting(&ext))?;
    p.verdicts.push(verdict("solve_splitting", tag, "no-split", split_kind(&cert)));
    if let SplitCertificate::NoSplit { witness, .. } = &cert {
        let ok = splitting_system(&ext).certifies(witness);
        p.verdicts.push(verdict("witness", tag, "holds", holds(ok)));
    }
    if let Some(seed) = opts.seed {
        for (i, moved) in seeded_perturbations(&ext, seed, opts.perturbations)?.iter().enumerate() {
            let cert = solve_splitting(moved)?;
            p.verdicts.push(verdict(
                "solve_splitting",
                &format!("{tag} perturbed#{i}"),
                "no-split",
                split_kind(&cert),
            ));
        }
    }
    Ok(p)
}

/// The non-splitting example on its own: identities, NoSplit, witness check.
pub fn cmd_counterexample(seed: Option<u64>, perturbations: usize, timing: bool) -> Result<RunReport> {
    let opts = SuiteOptions {
        seed,
        perturbations,
        timing,
        ..SuiteOptions::default()
    };
    Ok(assemble("counterexample", vec![run_counterexample(&opts)?], timing))
}

fn assemble(command: &str, parts: Vec<Partial>, timing: bool) -> RunReport {
    let mut report = RunReport {
        command: command.into(),
        inputs: Vec::new(),
        verdicts: Vec::new(),
        timing: timing.then(Vec::new),
    };
    for p in parts {
        report.inputs.extend(p.inputs);
        report.verdicts.extend(p.verdicts);
        if let Some(t) = &mut report.timing {
            t.extend(p.timing);
        }
    }
    report
}

/// Runs every grid point (in parallel) and assembles the report in grid order.
pub fn cmd_suite(opts: &SuiteOptions) -> Result<RunReport> {
    if opts.grid.is_empty() {
        return usage("suite grid is empty");
    }
    for &(n, m) in &opts.grid {
        if n < 1 {
            return usage(format!("grid point ({n},{m}) needs n ≥ 1"));
        }
        let skew = opts.kinds.iter().any(|k| matches!(k, RadicalKind::Skew | RadicalKind::SkewOp));
        if m == 0 && skew {
            return usage(format!("skew bimodules need m ≥ 1, grid has ({n},{m})"));
        }
    }
    let mut parts: Vec<Partial> = opts
        .grid
        .par_iter()
        .map(|&(n, m)| run_grid_point(n, m, opts))
        .collect::<Result<_>>()?;
    if opts.counterexample {
        parts.push(run_counterexample(opts)?);
    }
    Ok(assemble("suite", parts, opts.timing))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reg_on_1_1_splits() {
        let r = cmd_suite(&SuiteOptions::default()).unwrap();
        assert!(r.all_pass(), "{:?}", r.first_failure());
        assert!(r.verdicts.iter().any(|v| v.observed == "split"));
    }

    #[test]
    fn counterexample_flag() {
        let opts = SuiteOptions {
            kinds: vec![],
            counterexample: true,
            ..SuiteOptions::default()
        };
        let r = cmd_suite(&opts).unwrap();
        assert!(r.all_pass());
        assert!(r.verdicts.iter().any(|v| v.observed == "no-split"));
    }

    #[test]
    fn classical_regression_and_errors() {
        let opts = SuiteOptions {
            grid: vec![(1, 0)],
            kinds: vec![],
            ..SuiteOptions::default()
        };
        assert!(cmd_suite(&opts).unwrap().all_pass());
        let empty = SuiteOptions {
            grid: vec![],
            ..SuiteOptions::default()
        };
        assert!(cmd_suite(&empty).is_err());
        let skew0 = SuiteOptions {
            grid: vec![(1, 0)],
            kinds: vec![RadicalKind::Skew],
            ..SuiteOptions::default()
        };
        assert!(cmd_suite(&skew0).is_err());
    }

    #[test]
    fn report_is_deterministic() {
        let opts = SuiteOptions {
            grid: vec![(1, 1), (2, 1)],
            kinds: RadicalKind::ALL.to_vec(),
            seed: Some(11),
            perturbations: 2,
            ..SuiteOptions::default()
        };
        let a = serde_json::to_string(&cmd_suite(&opts).unwrap()).unwrap();
        let b = serde_json::to_string(&cmd_suite(&opts).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(!a.contains("timing"));
    }
}
