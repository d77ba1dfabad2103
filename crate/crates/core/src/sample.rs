//! Seeded random generation of scalars, parameters, shapes and elements.
//!
//! Every generator takes the RNG explicitly and draws from it in a fixed
//! documented order, so a fixed seed reproduces the exact same objects.
//! Scalars are kept small (single-digit numerators, tiny denominators) to
//! keep exact arithmetic fast.

use crate::gca::{Family, Generator, LieElement};
use crate::rank1::{ModuleKind, ModuleParams};
use crate::scalar::Scalar;
use crate::tensor::{ExpSignature, TensorElement, TensorShape, TrivialModule, VElement};
use rand::Rng;
use std::sync::Arc;

/// A small Gaussian rational; may be zero. Draws re then im, each as
/// numerator over denominator, with the imaginary part usually zero.
pub fn scalar(rng: &mut impl Rng) -> Scalar {
    let re_num = rng.random_range(-6..=6i64);
    let re_den = rng.random_range(1..=4i64);
    let im_num = if rng.random_range(0..4u8) == 0 {
        rng.random_range(-3..=3i64)
    } else {
        0
    };
    let im_den = rng.random_range(1..=2i64);
    Scalar::gaussian(re_num, re_den, im_num, im_den)
}

pub fn nonzero_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let v = scalar(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// `count` pairwise-distinct nonzero scalars.
pub fn distinct_nonzero_scalars(rng: &mut impl Rng, count: usize) -> Vec<Scalar> {
    let mut out: Vec<Scalar> = Vec::with_capacity(count);
    while out.len() < count {
        let v = nonzero_scalar(rng);
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Parameter triple with the given lambda: sigma nonzero, eta arbitrary.
pub fn params_with_lambda(rng: &mut impl Rng, kind: ModuleKind, lambda: Scalar) -> ModuleParams {
    ModuleParams::new(kind, lambda, nonzero_scalar(rng), scalar(rng))
        .expect("lambda and sigma are nonzero")
}

/// A shape with `m1` Omega and `m2` Gamma factors, pairwise-distinct
/// lambdas, and the trivial restricted slot.
pub fn shape(rng: &mut impl Rng, m1: usize, m2: usize) -> Arc<TensorShape> {
    let lambdas = distinct_nonzero_scalars(rng, m1 + m2);
    let params = lambdas
        .into_iter()
        .enumerate()
        .map(|(i, lambda)| {
            let kind = if i < m1 {
                ModuleKind::Omega
            } else {
                ModuleKind::Gamma
            };
            params_with_lambda(rng, kind, lambda)
        })
        .collect();
    TensorShape::new(params, Arc::new(TrivialModule)).expect("kinds are ordered")
}

fn random_signature(rng: &mut impl Rng, m1: usize, m2: usize, max_degree: u32) -> ExpSignature {
    let mut sig = ExpSignature::zero(m1, m2);
    if m1 + m2 == 0 {
        return sig;
    }
    let degree = rng.random_range(0..=max_degree);
    for _ in 0..degree {
        let slot = rng.random_range(0..2 * (m1 + m2));
        let factor = slot / 2;
        if factor < m1 {
            if slot % 2 == 0 {
                sig.exp_p[factor] += 1;
            } else {
                sig.exp_q[factor] += 1;
            }
        } else if slot % 2 == 0 {
            sig.exp_r[factor - m1] += 1;
        } else {
            sig.exp_s[factor - m1] += 1;
        }
    }
    sig
}

/// A nonzero element over the trivial slot with at most `max_terms` terms,
/// every monomial of total degree at most `max_degree`.
pub fn element(
    rng: &mut impl Rng,
    shape: &Arc<TensorShape>,
    max_terms: usize,
    max_degree: u32,
) -> TensorElement {
    loop {
        let mut out = TensorElement::zero(shape);
        for _ in 0..rng.random_range(1..=max_terms) {
            let sig = random_signature(rng, shape.m1(), shape.m2(), max_degree);
            out.add_term(sig, VElement::basis(0).scale(&nonzero_scalar(rng)));
        }
        if !out.is_zero() {
            return out;
        }
    }
}

/// A nonzero element that is not of vacuum form. Requires a shape with at
/// least one factor and `max_degree >= 1`.
pub fn non_vacuum_element(
    rng: &mut impl Rng,
    shape: &Arc<TensorShape>,
    max_terms: usize,
    max_degree: u32,
) -> TensorElement {
    assert!(shape.factor_count() > 0 && max_degree > 0);
    loop {
        let candidate = element(rng, shape, max_terms, max_degree);
        if !candidate.is_vacuum_form() {
            return candidate;
        }
    }
}

/// A random linear combination of basis symbols with degrees in
/// `[-degree_bound, degree_bound]`.
pub fn lie_element(rng: &mut impl Rng, degree_bound: i64, max_terms: usize) -> LieElement {
    let terms = (0..rng.random_range(1..=max_terms)).map(|_| {
        let family = Family::ALL[rng.random_range(0..4)];
        let degree = rng.random_range(-degree_bound..=degree_bound);
        (Generator::new(family, degree), nonzero_scalar(rng))
    });
    LieElement::from_terms(terms)
}
