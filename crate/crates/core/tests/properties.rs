use proptest::prelude::*;

use jsplit_core::bimodule::{build_bimodule, opposite, RadicalKind};
use jsplit_core::io::{algebra_json, parse_document, Document};
use jsplit_core::josp::build_josp_table;
use jsplit_core::ratlinalg::{
    format_rational, int, nullspace, parse_rational, rank, rat, solve_linear, LinearSolution, RatMatrix, Rational,
};
use jsplit_core::splitting::{
    build_counterexample, perturb_section, solve_splitting, splitting_system, trivial_extension, verify_splitting,
    CorrectionMap, SplitCertificate,
};
use jsplit_core::superalgebra::{koszul_sign, multiply, Element, Parity, Superalgebra};

fn small_matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
            .prop_map(|rows| RatMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(int).collect()).collect()).unwrap())
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn element(dim: usize) -> impl Strategy<Value = Element> {
    prop::collection::vec(rational(), dim).prop_map(Element::from_coords)
}

/// Drops the components of the wrong parity.
fn homogeneous(alg: &Superalgebra, mut e: Element, parity: Parity) -> Element {
    for (i, c) in e.coords.iter_mut().enumerate() {
        if alg.parity(i) != parity {
            *c = Rational::default();
        }
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(q in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn rank_nullity(a in small_matrix(6)) {
        let kernel = nullspace(&a);
        prop_assert_eq!(rank(&a) + kernel.len(), a.cols());
        for v in &kernel {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(|c| *c == Rational::default()));
        }
    }

    #[test]
    fn solutions_and_witnesses(a in small_matrix(5), seed in prop::collection::vec(-3i64..=3, 5)) {
        let b: Vec<Rational> = (0..a.rows()).map(|i| int(seed[i % seed.len()])).collect();
        match solve_linear(&a, &b).unwrap() {
            LinearSolution::Solved { particular, nullspace } => {
                prop_assert_eq!(a.mul_vec(&particular).unwrap(), b);
                for v in &nullspace {
                    prop_assert!(a.mul_vec(v).unwrap().iter().all(|c| *c == Rational::default()));
                }
            }
            LinearSolution::Inconsistent { witness } => {
                prop_assert!(a.left_mul_vec(&witness).unwrap().iter().all(|c| *c == Rational::default()));
                let wb: Rational = witness.iter().zip(&b).map(|(w, x)| w * x).sum();
                prop_assert_eq!(wb, int(1));
            }
        }
    }

    #[test]
    fn product_is_bilinear(
        (x, y, z) in (element(8), element(8), element(8)),
        c in rational(),
    ) {
        let a = build_josp_table(2, 1).unwrap();
        let lhs = multiply(&a, &x.add(&y.scale(&c)), &z).unwrap();
        let rhs = multiply(&a, &x, &z).unwrap().add(&multiply(&a, &y, &z).unwrap().scale(&c));
        prop_assert_eq!(lhs.clone(), rhs);
        let lhs = multiply(&a, &z, &x.add(&y.scale(&c))).unwrap();
        let rhs = multiply(&a, &z, &x).unwrap().add(&multiply(&a, &z, &y).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn supercommutative_on_homogeneous_elements(
        (x, y) in (element(11), element(11)),
        px in prop::bool::ANY,
        py in prop::bool::ANY,
    ) {
        let a = build_josp_table(1, 2).unwrap();
        let (px, py) = (Parity::from_bit(px as u8).unwrap(), Parity::from_bit(py as u8).unwrap());
        let (x, y) = (homogeneous(&a, x, px), homogeneous(&a, y, py));
        let xy = multiply(&a, &x, &y).unwrap();
        let yx = multiply(&a, &y, &x).unwrap();
        prop_assert_eq!(xy, yx.scale(&int(koszul_sign(px, py))));
    }

    #[test]
    fn perturbed_sections_still_split(seed in any::<u64>(), k in 0usize..4, grid in 0usize..2) {
        use rand::SeedableRng;
        let kind = RadicalKind::ALL[k];
        let (n, m) = [(1, 1), (2, 1)][grid];
        let ext = trivial_extension(n, m, kind).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let d = CorrectionMap::random(&ext, &mut rng, 4);
        let moved = perturb_section(&ext, &d).unwrap();
        let SplitCertificate::Split(tau) = solve_splitting(&moved).unwrap() else {
            return Err(TestCaseError::fail("perturbed trivial extension did not split"));
        };
        prop_assert!(verify_splitting(&moved, &tau).unwrap());
        prop_assert!(verify_splitting(&moved, &d.negated()).unwrap());
    }

    #[test]
    fn counterexample_never_splits(seed in any::<u64>()) {
        use rand::SeedableRng;
        let ext = build_counterexample().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let moved = perturb_section(&ext, &CorrectionMap::random(&ext, &mut rng, 5)).unwrap();
        match solve_splitting(&moved).unwrap() {
            SplitCertificate::NoSplit { witness, .. } => prop_assert!(splitting_system(&moved).certifies(&witness)),
            SplitCertificate::Split(_) => prop_assert!(false, "perturbed counterexample split"),
        }
    }
}

#[test]
fn canonical_section_has_zero_defect() {
    for (n, m) in [(1, 1), (2, 1), (1, 2)] {
        for kind in RadicalKind::ALL {
            let sys = splitting_system(&trivial_extension(n, m, kind).unwrap());
            assert!(sys.rhs.iter().all(|c| *c == Rational::default()), "({n},{m}) {}", kind.name());
        }
    }
}

#[test]
fn opposite_is_an_involution() {
    for kind in RadicalKind::ALL {
        let m = build_bimodule(2, 1, kind).unwrap();
        assert_eq!(opposite(&opposite(&m)), m);
        assert_ne!(opposite(&m).parities(), m.parities());
    }
}

#[test]
fn tables_round_trip_through_json() {
    for (n, m) in [(1, 0), (1, 1), (2, 1), (1, 2), (3, 1)] {
        let a = build_josp_table(n, m).unwrap();
        let text = algebra_json(&a);
        let Document::Algebra(b) = parse_document(&text).unwrap() else {
            panic!("not an algebra")
        };
        assert_eq!(a, b);
        assert_eq!(algebra_json(&b), text);
    }
}
