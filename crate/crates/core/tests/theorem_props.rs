//! Laws of the theorem engine on randomly sampled shapes and elements:
//! the `D_g` lower bound with its vacuum-form equality case, termination
//! and certification of the simplicity reduction, threshold independence
//! of stable spans, and exact parameter recovery round-trips.

use pgca::gca::Family;
use pgca::sample;
use pgca::tensor::{Coordinatizer, TensorElement, TrivialModule};
use pgca::theorems::{
    compute_dg, estimate_dt, recover_parameters, simplicity_reduce, stable_span,
    stored_parameters, TheoremError,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SMALL_SHAPES: [(usize, usize); 9] = [
    (1, 0),
    (0, 1),
    (2, 0),
    (1, 1),
    (0, 2),
    (3, 0),
    (2, 1),
    (1, 2),
    (0, 3),
];

#[test]
fn dg_lower_bound_with_equality_iff_vacuum() {
    let mut rng = ChaCha8Rng::seed_from_u64(211);
    for (m1, m2) in SMALL_SHAPES {
        let shape = sample::shape(&mut rng, m1, m2);
        let floor = m1 + m2 + 1;

        let vacuum = TensorElement::vacuum(&shape, TrivialModule::vector());
        assert_eq!(compute_dg(&vacuum).unwrap(), floor);

        for _ in 0..5 {
            let g = sample::element(&mut rng, &shape, 3, 2);
            let dg = compute_dg(&g).unwrap();
            assert!(dg >= floor, "D_g = {dg} below floor {floor} on {shape}");
            assert_eq!(
                dg == floor,
                g.is_vacuum_form(),
                "equality must characterize vacuum form; g = {g}"
            );
        }
    }
}

#[test]
fn dt_estimate_hits_the_floor_with_a_vacuum_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(223);
    for (m1, m2) in [(1, 0), (1, 1), (2, 1)] {
        let shape = sample::shape(&mut rng, m1, m2);
        let samples = vec![
            sample::non_vacuum_element(&mut rng, &shape, 3, 2),
            TensorElement::vacuum(&shape, TrivialModule::vector()),
            sample::non_vacuum_element(&mut rng, &shape, 2, 1),
        ];
        assert_eq!(estimate_dt(&shape, &samples).unwrap(), m1 + m2 + 1);
    }
}

#[test]
fn reduction_reaches_vacuum_form_with_decreasing_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(227);
    for (m1, m2) in SMALL_SHAPES {
        let shape = sample::shape(&mut rng, m1, m2);
        for _ in 0..8 {
            let g = sample::element(&mut rng, &shape, 3, 3);
            let trace = simplicity_reduce(&g).unwrap();
            assert!(trace.terminal.is_vacuum_form());
            let mut last = g.deg();
            for step in &trace.steps {
                assert!(step.degree < last, "degree must strictly decrease");
                last = step.degree.clone();
            }
        }
    }
}

#[test]
fn reduction_rejects_every_repeated_lambda_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(229);
    for (m1, m2) in [(2, 0), (1, 1), (0, 2), (2, 1)] {
        // take a distinct-lambda shape and duplicate one lambda
        let lambda = sample::nonzero_scalar(&mut rng);
        let mut params = Vec::new();
        for _ in 0..m1 {
            params.push(sample::params_with_lambda(
                &mut rng,
                pgca::rank1::ModuleKind::Omega,
                lambda.clone(),
            ));
        }
        for _ in 0..m2 {
            params.push(sample::params_with_lambda(
                &mut rng,
                pgca::rank1::ModuleKind::Gamma,
                lambda.clone(),
            ));
        }
        let shape = pgca::tensor::TensorShape::new(
            params,
            std::sync::Arc::new(TrivialModule),
        )
        .unwrap();
        let g = sample::element(&mut rng, &shape, 2, 2);
        match simplicity_reduce(&g) {
            Err(TheoremError::Singular(s)) => {
                assert_eq!(s.lambda, lambda);
            }
            other => panic!("expected a singular extraction, got {other:?}"),
        }
    }
}

#[test]
fn stable_span_is_threshold_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(233);
    for (m1, m2) in [(1, 0), (1, 1), (2, 0)] {
        let shape = sample::shape(&mut rng, m1, m2);
        let g = sample::element(&mut rng, &shape, 3, 2);
        let bound = g.ann_bound() as i64;
        for family in Family::ALL {
            let mut cm = Coordinatizer::new();
            let low = stable_span(family, &g, bound, &mut cm).unwrap();
            let high = stable_span(family, &g, bound + 5, &mut cm).unwrap();
            assert_eq!(low.dim(), high.dim());
            for row in high.basis_vectors() {
                assert!(low.contains(row));
            }
            for row in low.basis_vectors() {
                assert!(high.contains(row));
            }
        }
    }
}

#[test]
fn recover_parameters_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(239);
    for (m1, m2) in SMALL_SHAPES {
        let shape = sample::shape(&mut rng, m1, m2);
        let got = recover_parameters(&shape, &TrivialModule::vector()).unwrap();
        assert_eq!(got, stored_parameters(&shape), "round trip on {shape}");
    }
}

#[test]
fn recover_parameters_ignores_factor_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(241);
    let shape = sample::shape(&mut rng, 2, 2);
    let permuted = shape.permute(&[1, 0], &[1, 0]).unwrap();
    let a = recover_parameters(&shape, &TrivialModule::vector()).unwrap();
    let b = recover_parameters(&permuted, &TrivialModule::vector()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn zero_and_precondition_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(251);
    let shape = sample::shape(&mut rng, 1, 0);
    let zero = TensorElement::zero(&shape);
    assert_eq!(compute_dg(&zero).unwrap_err(), TheoremError::ZeroElement);
    assert_eq!(
        simplicity_reduce(&zero).unwrap_err(),
        TheoremError::ZeroElement
    );
    assert!(matches!(
        recover_parameters(&shape, &pgca::tensor::VElement::zero()).unwrap_err(),
        TheoremError::ZeroElement
    ));
}
