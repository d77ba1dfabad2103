//! Acceptance suite: one test per acceptance criterion, each printing a
//! single PASS line (visible with `--nocapture`). All checks are exact;
//! where a criterion states a runtime budget, the test enforces it.
//!
//! Run with: `cargo test -p pgca-cli --test acceptance -- --nocapture`

use pgca::gca::{basis_bracket, bracket, Family, Generator, LieElement};
use pgca::linalg::{det_cofactor, genvan_det, genvan_matrix, GenVanSpec};
use pgca::rank1::{self, ModuleKind, ModuleParams, Poly2};
use pgca::sample;
use pgca::tensor::{TensorElement, TensorShape, TrivialModule};
use pgca::theorems::{
    compute_dg, generation_saturation, recover_parameters, simplicity_reduce, stored_parameters,
    TheoremError,
};
use pgca::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::{Duration, Instant};

fn budget(started: Instant, limit: Duration, what: &str) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < limit,
        "{what} exceeded its runtime budget: {elapsed:?} >= {limit:?}"
    );
}

fn shapes_with_total(max_total: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for total in 1..=max_total {
        for m1 in (0..=total).rev() {
            out.push((m1, total - m1));
        }
    }
    out
}

// -------------------------------------------------------------------------
// 1. Bracket correctness: antisymmetry + Jacobi, exhaustive over basis
//    triples with degrees in [-3,3] plus 100 random linear combinations;
//    runtime < 10 s.
#[test]
fn criterion_1_bracket_correctness() {
    let started = Instant::now();

    let gens: Vec<LieElement> = Family::ALL
        .iter()
        .flat_map(|&f| (-3..=3).map(move |n| LieElement::generator(Generator::new(f, n))))
        .collect();
    for a in &gens {
        for b in &gens {
            assert!(
                bracket(a, b).add(&bracket(b, a)).is_zero(),
                "antisymmetry fails on {a}, {b}"
            );
        }
    }
    let jacobi = |a: &LieElement, b: &LieElement, c: &LieElement| {
        bracket(a, &bracket(b, c))
            .add(&bracket(b, &bracket(c, a)))
            .add(&bracket(c, &bracket(a, b)))
    };
    for a in &gens {
        for b in &gens {
            for c in &gens {
                assert!(jacobi(a, b, c).is_zero(), "Jacobi fails on {a}, {b}, {c}");
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0001);
    for _ in 0..100 {
        let a = sample::lie_element(&mut rng, 3, 4);
        let b = sample::lie_element(&mut rng, 3, 4);
        let c = sample::lie_element(&mut rng, 3, 4);
        assert!(bracket(&a, &b).add(&bracket(&b, &a)).is_zero());
        assert!(jacobi(&a, &b, &c).is_zero());
    }

    budget(started, Duration::from_secs(10), "criterion 1");
    println!("acceptance 1 (bracket antisymmetry + Jacobi): PASS");
}

// -------------------------------------------------------------------------
// 2. Module axioms: act([x,y], f) = act(x, act(y, f)) - act(y, act(x, f))
//    exactly, for Omega and Gamma (3 random parameter triples each,
//    generator degrees [-3,3], monomials to degree 3) and for tensor shapes
//    m1+m2 <= 2 with the trivial slot; runtime < 60 s.
#[test]
fn criterion_2_module_axioms() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0002);

    let monomials: Vec<Poly2> = (0..=3u32)
        .flat_map(|a| (0..=(3 - a)).map(move |b| Poly2::monomial(a, b, Scalar::one())))
        .collect();
    let act_lie = |params: &ModuleParams, e: &LieElement, f: &Poly2| {
        let mut out = Poly2::zero();
        for (gen, coeff) in e.terms() {
            out = out.add(&rank1::act(params, *gen, f).scale(coeff));
        }
        out
    };
    for kind in [ModuleKind::Omega, ModuleKind::Gamma] {
        for _ in 0..3 {
            let lambda = sample::nonzero_scalar(&mut rng);
            let params = sample::params_with_lambda(&mut rng, kind, lambda);
            for fa in Family::ALL {
                for fb in Family::ALL {
                    for m in -3..=3 {
                        for n in -3..=3 {
                            let x = Generator::new(fa, m);
                            let y = Generator::new(fb, n);
                            let op = basis_bracket(x, y);
                            for f in &monomials {
                                let lhs = act_lie(&params, &op, f);
                                let rhs = rank1::act(&params, x, &rank1::act(&params, y, f))
                                    .sub(&rank1::act(&params, y, &rank1::act(&params, x, f)));
                                assert_eq!(lhs, rhs, "{params} fails on [{x}, {y}] at {f}");
                            }
                        }
                    }
                }
            }
        }
    }

    let act_lie_tensor = |e: &LieElement, g: &TensorElement| {
        let mut out = TensorElement::zero(g.shape());
        for (gen, coeff) in e.terms() {
            out = out.add(&g.act(*gen).scale(coeff));
        }
        out
    };
    for (m1, m2) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
        let shape = sample::shape(&mut rng, m1, m2);
        let mut elements = vec![TensorElement::vacuum(&shape, TrivialModule::vector())];
        if m1 + m2 > 0 {
            elements.push(sample::element(&mut rng, &shape, 3, 2));
            elements.push(sample::element(&mut rng, &shape, 2, 2));
        }
        for fa in Family::ALL {
            for fb in Family::ALL {
                for m in -2..=2i64 {
                    for n in -2..=2i64 {
                        let x = Generator::new(fa, m);
                        let y = Generator::new(fb, n);
                        let op = basis_bracket(x, y);
                        for g in &elements {
                            let lhs = act_lie_tensor(&op, g);
                            let rhs = g.act(y).act(x).sub(&g.act(x).act(y));
                            assert_eq!(lhs, rhs, "tensor axiom fails on {shape} for [{x}, {y}]");
                        }
                    }
                }
            }
        }
    }

    budget(started, Duration::from_secs(60), "criterion 2");
    println!("acceptance 2 (module axioms for Omega, Gamma, tensor shapes): PASS");
}

// -------------------------------------------------------------------------
// 3. Oracle equivalence for the generalized Vandermonde determinant:
//    closed form equals the cofactor expansion for all (m <= 3, s_j <= 3,
//    r <= 2) with 20 random distinct-lambda draws per configuration;
//    runtime < 60 s.
#[test]
fn criterion_3_determinant_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0003);

    fn size_vectors(m: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (1..=3u32).map(move |s| {
                        let mut v = prefix.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        out
    }

    let mut configs = 0usize;
    for m in 1..=3usize {
        for sizes in size_vectors(m) {
            for r in 0..=2u32 {
                for _ in 0..20 {
                    let lambdas = sample::distinct_nonzero_scalars(&mut rng, m);
                    let spec = GenVanSpec::new(lambdas, sizes.clone(), r).unwrap();
                    configs += 1;
                    assert_eq!(
                        genvan_det(&spec),
                        det_cofactor(&genvan_matrix(&spec)),
                        "determinants disagree on {spec:?}"
                    );
                }
            }
        }
    }
    assert_eq!(configs, (3 + 9 + 27) * 3 * 20);

    budget(started, Duration::from_secs(60), "criterion 3");
    println!("acceptance 3 (determinant closed form = cofactor oracle, {configs} draws): PASS");
}

// -------------------------------------------------------------------------
// 4. D_g law: for all shapes with m1+m2 <= 3 (distinct random lambdas,
//    trivial slot), compute_dg(vacuum) = m1+m2+1 exactly, and
//    compute_dg(g) > m1+m2+1 for 20 random non-vacuum g per shape;
//    runtime < 120 s.
#[test]
fn criterion_4_dg_law() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0004);

    for (m1, m2) in shapes_with_total(3) {
        let shape = sample::shape(&mut rng, m1, m2);
        let floor = m1 + m2 + 1;
        let vacuum = TensorElement::vacuum(&shape, TrivialModule::vector());
        assert_eq!(compute_dg(&vacuum).unwrap(), floor, "vacuum D_g on {shape}");
        for _ in 0..20 {
            let g = sample::non_vacuum_element(&mut rng, &shape, 3, 2);
            let dg = compute_dg(&g).unwrap();
            assert!(dg > floor, "D_g = {dg} not above {floor} for non-vacuum {g}");
        }
    }

    budget(started, Duration::from_secs(120), "criterion 4");
    println!("acceptance 4 (D_g = m1+m2+1 exactly on the vacuum, strictly above otherwise): PASS");
}

// -------------------------------------------------------------------------
// 5. Simplicity, both directions: the reduction reaches vacuum form (every
//    intermediate certified by span membership) for 50 random g of degree
//    <= 3 per distinct-lambda shape with m1+m2 <= 3; and every repeated-
//    lambda shape yields a singular extraction naming the colliding pair.
#[test]
fn criterion_5_simplicity_both_directions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0005);

    for (m1, m2) in shapes_with_total(3) {
        let shape = sample::shape(&mut rng, m1, m2);
        for _ in 0..50 {
            let g = sample::element(&mut rng, &shape, 3, 3);
            let trace = simplicity_reduce(&g)
                .unwrap_or_else(|e| panic!("reduction failed on {shape}: {e}"));
            assert!(trace.terminal.is_vacuum_form());
            let mut last = g.deg();
            for step in &trace.steps {
                assert!(step.degree < last, "degree did not decrease");
                last = step.degree.clone();
            }
        }
    }

    // converse: a collision at any pair of positions is detected
    for (m1, m2) in shapes_with_total(3) {
        let factors = m1 + m2;
        if factors < 2 {
            continue;
        }
        for i in 0..factors {
            for j in i + 1..factors {
                let mut lambdas = sample::distinct_nonzero_scalars(&mut rng, factors);
                lambdas[j] = lambdas[i].clone();
                let params: Vec<ModuleParams> = lambdas
                    .iter()
                    .enumerate()
                    .map(|(k, lambda)| {
                        let kind = if k < m1 {
                            ModuleKind::Omega
                        } else {
                            ModuleKind::Gamma
                        };
                        sample::params_with_lambda(&mut rng, kind, lambda.clone())
                    })
                    .collect();
                let shape = TensorShape::new(params, Arc::new(TrivialModule)).unwrap();
                let g = sample::element(&mut rng, &shape, 2, 2);
                match simplicity_reduce(&g) {
                    Err(TheoremError::Singular(s)) => {
                        assert_eq!((s.first_factor, s.second_factor), (i, j));
                        assert_eq!(&s.lambda, &lambdas[i]);
                    }
                    other => panic!(
                        "expected singular extraction for collision ({i},{j}) on m=({m1},{m2}), got {other:?}"
                    ),
                }
            }
        }
    }

    println!("acceptance 5 (simplicity reduction + reducible-case witness): PASS");
}

// -------------------------------------------------------------------------
// 6. Generation: the closure from the vacuum saturates the degree-2
//    truncation for shapes m1+m2 <= 2 with distinct lambdas, trivial slot,
//    generator degrees |n| <= 4 (m=(1,0) reaches dimension 6).
#[test]
fn criterion_6_generation_saturation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0006);

    for (m1, m2) in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
        let shape = sample::shape(&mut rng, m1, m2);
        let report =
            generation_saturation(&shape, &TrivialModule::vector(), 2, 4).unwrap();
        assert!(
            report.saturated,
            "not saturated on {shape}: {} of {}",
            report.dim_reached, report.dim_target
        );
        let vars = 2 * (m1 + m2);
        let expected = match vars {
            0 => 1,
            2 => 6,
            4 => 15,
            _ => unreachable!(),
        };
        assert_eq!(report.dim_reached, expected);
    }

    println!("acceptance 6 (vacuum generates the degree-2 window, N = 4): PASS");
}

// -------------------------------------------------------------------------
// 7. Isomorphism invariants: recover_parameters round-trips the parameter
//    multisets exactly (eta included, via the n*lambda^n terms) for 25
//    random shapes with m1+m2 <= 3, and is invariant under factor
//    permutation.
#[test]
fn criterion_7_parameter_recovery() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE_0007);

    for draw in 0..25 {
        let total = rng.random_range(1..=3usize);
        let m1 = rng.random_range(0..=total);
        let m2 = total - m1;
        let shape = sample::shape(&mut rng, m1, m2);
        let recovered = recover_parameters(&shape, &TrivialModule::vector()).unwrap();
        assert_eq!(
            recovered,
            stored_parameters(&shape),
            "round trip failed on draw {draw}: {shape}"
        );
        for (lambda, sigma, eta) in recovered.omega.iter().chain(&recovered.gamma) {
            assert!(!lambda.is_zero() && !sigma.is_zero());
            let _ = eta;
        }

        let omega_perm: Vec<usize> = (0..m1).rev().collect();
        let gamma_perm: Vec<usize> = (0..m2).rev().collect();
        let permuted = shape.permute(&omega_perm, &gamma_perm).unwrap();
        let from_permuted = recover_parameters(&permuted, &TrivialModule::vector()).unwrap();
        assert_eq!(from_permuted, recovered, "permutation changed the multisets");
    }

    println!("acceptance 7 (parameter multiset recovery round-trips, permutation-invariant): PASS");
}

// -------------------------------------------------------------------------
// 8. Determinism: CLI reruns with a fixed config and seed produce
//    byte-identical reports, in both output formats.
#[test]
fn criterion_8_cli_determinism() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let config_path = dir.join("acceptance_determinism.cfg");
    std::fs::write(
        &config_path,
        "m1 = 1\nm2 = 1\nomega = 2, 3, 1\ngamma = 5, 1/2, -1\nseed = 42\nsample_count = 3\n",
    )
    .unwrap();

    let run = |format: &str| {
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_pgca"))
            .args([
                "--config",
                config_path.to_str().unwrap(),
                "--format",
                format,
                "--seed",
                "42",
            ])
            .output()
            .expect("binary runs");
        assert!(output.status.success(), "exit: {:?}", output.status);
        output.stdout
    };
    for format in ["text", "structured"] {
        let first = run(format);
        let second = run(format);
        assert!(!first.is_empty());
        assert_eq!(first, second, "{format} report differs across reruns");
    }

    println!("acceptance 8 (CLI reports are byte-identical for a fixed seed): PASS");
}
