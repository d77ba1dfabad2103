//! Lie algebra laws for the bracket: antisymmetry on random elements,
//! the Jacobi identity exhaustively over basis triples and on random
//! linear combinations, and compatibility with the grading.

use pgca::gca::{bracket, grade_of, Family, Generator, Grading, LieElement};
use pgca::sample;
use pgca::Scalar;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_lie_element() -> impl Strategy<Value = LieElement> {
    proptest::collection::vec(
        (0usize..4, -5i64..=5, -6i64..=6, 1i64..=3),
        1..5,
    )
    .prop_map(|terms| {
        LieElement::from_terms(terms.into_iter().map(|(f, n, num, den)| {
            (
                Generator::new(Family::ALL[f], n),
                Scalar::ratio(num, den),
            )
        }))
    })
}

proptest! {
    #[test]
    fn antisymmetry(a in arb_lie_element(), b in arb_lie_element()) {
        let ab = bracket(&a, &b);
        let ba = bracket(&b, &a);
        prop_assert!(ab.add(&ba).is_zero());
    }
}

fn jacobi_sum(a: &LieElement, b: &LieElement, c: &LieElement) -> LieElement {
    bracket(a, &bracket(b, c))
        .add(&bracket(b, &bracket(c, a)))
        .add(&bracket(c, &bracket(a, b)))
}

#[test]
fn jacobi_exhaustive_on_basis_triples() {
    for fa in Family::ALL {
        for fb in Family::ALL {
            for fc in Family::ALL {
                for m in -3..=3 {
                    for n in -3..=3 {
                        for k in -3..=3 {
                            let a = LieElement::generator(Generator::new(fa, m));
                            let b = LieElement::generator(Generator::new(fb, n));
                            let c = LieElement::generator(Generator::new(fc, k));
                            assert!(
                                jacobi_sum(&a, &b, &c).is_zero(),
                                "Jacobi fails on {fa:?}[{m}], {fb:?}[{n}], {fc:?}[{k}]"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn jacobi_on_random_combinations() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let a = sample::lie_element(&mut rng, 5, 4);
        let b = sample::lie_element(&mut rng, 5, 4);
        let c = sample::lie_element(&mut rng, 5, 4);
        assert!(jacobi_sum(&a, &b, &c).is_zero(), "Jacobi fails on {a}, {b}, {c}");
    }
}

#[test]
fn bracket_respects_grading() {
    for fa in Family::ALL {
        for fb in Family::ALL {
            for m in -5..=5 {
                for n in -5..=5 {
                    let b = bracket(
                        &LieElement::generator(Generator::new(fa, m)),
                        &LieElement::generator(Generator::new(fb, n)),
                    );
                    if !b.is_zero() {
                        assert_eq!(grade_of(&b), Ok(Grading::Homogeneous(m + n)));
                    }
                }
            }
        }
    }
}
