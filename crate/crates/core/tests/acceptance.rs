//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! process exits nonzero if any of them fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use num_traits::{One, Zero};

use jsplit_core::bimodule::{hom_space, regular_bimodule, skew_dim, RadicalKind};
use jsplit_core::josp::{
    build_josp_matrix, build_josp_table, canonical_map, josp_dim, structure_iso_check, superinvolution_laws,
};
use jsplit_core::ratlinalg::{determinant, int, rank, rat, RatMatrix, Rational};
use jsplit_core::splitting::{
    build_counterexample, build_skew11_extension, radical_bimodule, seeded_perturbations, solve_splitting,
    splitting_system, trivial_extension, verify_lemma_relations, verify_splitting, MarkedExtension,
    SplitCertificate,
};
use jsplit_core::structure::{peirce_decompose, verify_peirce_relations, IdempotentFamily};
use jsplit_core::superalgebra::{
    check_super_jordan, check_supercommutative, envelope_jordan_report, is_jordan_superalgebra, Parity, Superalgebra,
};

type Outcome = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const IDENTITY_GRID: [(usize, usize); 5] = [(1, 0), (1, 1), (2, 1), (1, 2), (3, 1)];
const SMALL_GRID: [(usize, usize); 3] = [(1, 1), (2, 1), (1, 2)];

fn extensions() -> Vec<(String, RadicalKind, MarkedExtension)> {
    let mut out = Vec::new();
    for (n, m) in SMALL_GRID {
        for kind in RadicalKind::ALL {
            let ext = trivial_extension(n, m, kind).expect("extension builds");
            out.push((format!("({n},{m}) {}", kind.name()), kind, ext));
        }
    }
    out
}

fn identities() -> Outcome {
    for (n, m) in IDENTITY_GRID {
        let a = build_josp_table(n, m).map_err(|e| e.to_string())?;
        ensure!(check_supercommutative(&a).holds, "{} not supercommutative", a.name());
        ensure!(check_super_jordan(&a).holds, "{} fails the super-Jordan identity", a.name());
    }
    Ok(())
}

fn realizations() -> Outcome {
    for (n, m) in SMALL_GRID {
        let t = build_josp_table(n, m).map_err(|e| e.to_string())?;
        let x = build_josp_matrix(n, m).map_err(|e| e.to_string())?;
        let map = canonical_map(&t, &x).map_err(|e| e.to_string())?;
        ensure!(structure_iso_check(&t, &x, &map).map_err(|e| e.to_string())?, "({n},{m}) table ≠ matrix");
        ensure!(superinvolution_laws(n, m).map_err(|e| e.to_string())?.holds, "({n},{m}) involution laws fail");
    }
    Ok(())
}

fn dimensions() -> Outcome {
    for (n, m) in IDENTITY_GRID {
        let s = n + 2 * m;
        let j = build_josp_table(n, m).map_err(|e| e.to_string())?.dim();
        ensure!(j == josp_dim(n, m) && 2 * j == s * s + n - 2 * m, "({n},{m}) Josp has dim {j}");
        if m > 0 {
            let k = build_josp_matrix(n, m).map_err(|e| e.to_string())?.dim();
            let sk = jsplit_core::bimodule::skew_bimodule(n, m).map_err(|e| e.to_string())?.dim();
            ensure!(k == j, "({n},{m}) matrix realization has dim {k}");
            ensure!(sk == skew_dim(n, m) && 2 * sk + n == s * s + 2 * m, "({n},{m}) Skew has dim {sk}");
            ensure!(j + sk == s * s, "({n},{m}) H + Skew = {} ≠ {}", j + sk, s * s);
        }
    }
    Ok(())
}

fn bimodules(exts: &[(String, RadicalKind, MarkedExtension)]) -> Outcome {
    for (tag, _, ext) in exts {
        ensure!(check_super_jordan(ext.algebra()).holds, "{tag} fails the super-Jordan identity");
    }
    Ok(())
}

fn positive_splitting(exts: &[(String, RadicalKind, MarkedExtension)]) -> Outcome {
    for (i, (tag, kind, ext)) in exts.iter().enumerate() {
        let mut cases = vec![ext.clone()];
        cases.extend(seeded_perturbations(ext, 1000 + i as u64, 5).map_err(|e| e.to_string())?);
        for (j, case) in cases.iter().enumerate() {
            let SplitCertificate::Split(tau) = solve_splitting(case).map_err(|e| e.to_string())? else {
                return Err(format!("{tag} case {j}: no splitting found"));
            };
            ensure!(verify_splitting(case, &tau).map_err(|e| e.to_string())?, "{tag} case {j}: τ does not verify");
            if matches!(kind, RadicalKind::Reg | RadicalKind::Skew) {
                let rel = verify_lemma_relations(case, &tau).map_err(|e| e.to_string())?;
                ensure!(rel.holds, "{tag} case {j}: {} lifted relations fail", rel.violations.len());
            }
        }
    }
    Ok(())
}

/// Normalizes a row so its first nonzero coefficient is 1.
fn normalized(coeffs: &[Rational], rhs: &Rational) -> Option<(Vec<Rational>, Rational)> {
    let lead = coeffs.iter().find(|c| !c.is_zero())?.clone();
    Some((coeffs.iter().map(|c| c / &lead).collect(), rhs / &lead))
}

fn counterexample() -> Outcome {
    let ext = build_counterexample().map_err(|e| e.to_string())?;
    let e = ext.algebra();
    ensure!(is_jordan_superalgebra(e), "extension is not a Jordan superalgebra");
    for &p in ext.ideal() {
        for &q in ext.ideal() {
            ensure!(e.product(p, q).is_empty(), "N² ≠ 0 at ({p},{q})");
        }
    }
    let rad = radical_bimodule(&ext).map_err(|e| e.to_string())?;
    let homs = hom_space(&rad, &regular_bimodule(ext.model()), Parity::Even).map_err(|e| e.to_string())?;
    ensure!(
        homs.iter().any(|h| !determinant(h).map(|d| d.is_zero()).unwrap_or(true)),
        "no invertible map from the radical to the regular bimodule"
    );

    let sys = splitting_system(&ext);
    let SplitCertificate::NoSplit { witness, .. } = solve_splitting(&ext).map_err(|e| e.to_string())? else {
        return Err("counterexample splits".into());
    };
    ensure!(sys.certifies(&witness), "witness does not certify");

    // model h v u k = 0..3; radical g w y x = 0..3
    let (h, v, u, k) = (0, 1, 2, 3);
    let (y, x) = (2, 3);
    // the diagonal blocks pin τ(h) and τ(v) to zero
    let even_cols: Vec<usize> = (0..sys.unknowns.len()).filter(|&c| sys.unknowns[c].0 <= v).collect();
    let mut diag_rows = Vec::new();
    for (a, b) in [(h, h), (v, v)] {
        let (block, rhs) = sys.pair_block(a, b);
        ensure!(rhs.iter().all(Zero::is_zero), "({a},{b}) block is inhomogeneous");
        for r in 0..block.rows() {
            let row = block.row(r);
            let off: bool = (0..row.len()).any(|c| !even_cols.contains(&c) && !row[c].is_zero());
            ensure!(!off, "diagonal block touches odd unknowns");
            diag_rows.push(even_cols.iter().map(|&c| row[c].clone()).collect::<Vec<_>>());
        }
    }
    let diag = RatMatrix::from_rows(diag_rows).map_err(|e| e.to_string())?;
    ensure!(rank(&diag) == even_cols.len(), "τ(h), τ(v) are not forced to zero");

    let (block, rhs) = sys.pair_block(u, k);
    let ay = sys.unknown_index(u, y).ok_or("no α_y unknown")?;
    let bx = sys.unknown_index(k, x).ok_or("no β_x unknown")?;
    let mut found = (false, false);
    for r in 0..block.rows() {
        let row = block.row(r);
        let rest = (0..row.len()).any(|c| !even_cols.contains(&c) && c != ay && c != bx && !row[c].is_zero());
        if rest {
            continue;
        }
        if let Some((coeffs, b)) = normalized(&[row[ay].clone(), row[bx].clone()], &rhs[r]) {
            if coeffs == [Rational::one(), Rational::one()] {
                if b == Rational::one() {
                    found.0 = true;
                } else if b.is_zero() {
                    found.1 = true;
                }
            }
        }
    }
    ensure!(found.0 && found.1, "(u,k) rows α_y+β_x = 1 and α_y+β_x = 0 not both present: {found:?}");
    Ok(())
}

fn skew_family() -> Outcome {
    let params = [
        (int(0), int(0), int(0)),
        (int(1), int(0), int(0)),
        (int(0), int(1), int(-1)),
        (rat(1, 2), int(3), rat(-2, 3)),
        (int(-4), rat(5, 7), int(2)),
    ];
    let (u, k, b, c) = (2, 3, 3, 4);
    let mut accepted = 0;
    for (xa, xf, xft) in params {
        let Ok(ext) = build_skew11_extension(xa.clone(), xf.clone(), xft.clone()) else {
            continue;
        };
        accepted += 1;
        let SplitCertificate::Split(tau) = solve_splitting(&ext).map_err(|e| e.to_string())? else {
            return Err(format!("ξ = ({xa}, {xf}, {xft}) does not split"));
        };
        ensure!(tau.get(u, c) == &-xf.clone(), "α_c ≠ −ξ_f at ξ = ({xa}, {xf}, {xft})");
        ensure!(tau.get(k, b) == &-xft.clone(), "β_b ≠ −ξ_f̃ at ξ = ({xa}, {xf}, {xft})");
        ensure!(tau.get(k, c) - tau.get(u, b) == int(2) * &xa, "β_c − α_b ≠ 2ξ_ã at ξ = ({xa}, {xf}, {xft})");
    }
    ensure!(accepted > 0, "no ξ choice accepted");
    Ok(())
}

fn peirce_case(alg: &Superalgebra, labels: &[&str]) -> Result<Vec<usize>, String> {
    let f = IdempotentFamily::from_labels(alg, labels).map_err(|e| e.to_string())?;
    let d = peirce_decompose(alg, &f).map_err(|e| e.to_string())?;
    ensure!(verify_peirce_relations(&d).map_err(|e| e.to_string())?.holds, "{} relations fail", alg.name());
    Ok(d.dims().values().copied().collect())
}

fn peirce() -> Outcome {
    peirce_case(&build_josp_table(2, 1).map_err(|e| e.to_string())?, &["h11", "h22", "v11"])?;
    let ce = build_counterexample().map_err(|e| e.to_string())?;
    peirce_case(ce.algebra(), &["h", "v"])?;
    // key order (0,0), (0,1), (1,1)
    let d = peirce_case(&build_josp_table(1, 1).map_err(|e| e.to_string())?, &["h11", "v11"])?;
    let (j11, j12, j22) = (d[0], d[1], d[2]);
    ensure!((j11, j22, j12) == (1, 1, 2), "Josp(1|2) components (J11, J22, J12) = ({j11}, {j22}, {j12})");
    Ok(())
}

fn envelope_agrees(alg: &Superalgebra) -> Result<bool, String> {
    let direct = is_jordan_superalgebra(alg);
    let env = envelope_jordan_report(alg).map_err(|e| e.to_string())?.holds;
    ensure!(direct == env, "{}: direct {direct}, envelope {env}", alg.name());
    Ok(direct)
}

fn envelope(exts: &[(String, RadicalKind, MarkedExtension)]) -> Outcome {
    for (n, m) in IDENTITY_GRID {
        let a = build_josp_table(n, m).map_err(|e| e.to_string())?;
        ensure!(envelope_agrees(&a)?, "{} rejected", a.name());
    }
    for (_, _, ext) in exts {
        ensure!(envelope_agrees(ext.algebra())?, "{} rejected", ext.algebra().name());
    }
    let ce = build_counterexample().map_err(|e| e.to_string())?;
    ensure!(envelope_agrees(ce.algebra())?, "counterexample rejected");

    // h v u k = 0..3 in Josp(1|2)
    let base = build_josp_table(1, 1).map_err(|e| e.to_string())?;
    let mutants = [
        base.with_constant(0, 0, 0, int(2)),
        base.with_constant(2, 3, 0, int(-3)),
        base.with_constant(2, 0, 2, int(1)),
        ce.algebra().with_constant(2, 3, 4, int(2)),
    ];
    for m in mutants {
        let m = m.map_err(|e| e.to_string())?;
        ensure!(!envelope_agrees(&m)?, "mutant of {} accepted", m.name());
    }
    Ok(())
}

fn main() -> ExitCode {
    let exts = extensions();
    let criteria: Vec<Criterion> = vec![
        ("identity suite", Box::new(identities)),
        ("realization equivalence", Box::new(realizations)),
        ("dimension formulas", Box::new(dimensions)),
        ("bimodule validity", Box::new(|| bimodules(&exts))),
        ("positive splitting", Box::new(|| positive_splitting(&exts))),
        ("counter-example", Box::new(counterexample)),
        ("skew solution family", Box::new(skew_family)),
        ("peirce suite", Box::new(peirce)),
        ("envelope cross-check", Box::new(|| envelope(&exts))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(()) => println!("criterion {}: {name}: PASS", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: {name}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
