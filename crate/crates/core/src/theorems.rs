//! Executable forms of the structure theory: stable spans `N(X, g, p)`,
//! the six exponent moves they certify, the `D_g` invariant, generation
//! closures, the constructive simplicity reduction, and exact parameter
//! recovery from module actions.
//!
//! The common engine is the symbolic decomposition of `n -> X_n g` into
//! finitely many `lambda^n n^j` components ([`TensorElement::act_decompose`]).
//! For `n` at least the annihilation bound of `g`, the span of all `X_n g`
//! equals the span of the component vectors: sampling at consecutive points
//! is an invertible generalized-Vandermonde system, so each side contains
//! the other. That turns the limit spans `N(X, g, p)` into finite, exactly
//! computable objects.

use crate::gca::{Family, Generator};
use crate::linalg::{self, ExtractionError, ExtractionTerm, SpanBasis, SparseVec};
use crate::rank1::{binomial, ModuleKind};
use crate::scalar::Scalar;
use crate::tensor::{
    Coordinatizer, Degree, ExpSignature, TensorElement, TensorShape, VElement,
};
use num::ToPrimitive;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Witness that two tensor factors carry the same `lambda`, making the
/// component-extraction matrix singular (equal columns). This is the
/// machine-visible face of the reducible case: the simplicity criterion
/// fails exactly when some pair of lambdas collides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularExtraction {
    /// 0-based indices of the colliding factors.
    pub first_factor: usize,
    pub second_factor: usize,
    pub lambda: Scalar,
}

impl fmt::Display for SingularExtraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "factors {} and {} share lambda = {}",
            self.first_factor + 1,
            self.second_factor + 1,
            self.lambda
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("threshold {threshold} is below the annihilation bound {bound}")]
    ThresholdBelowBound { threshold: i64, bound: u32 },
    #[error("singular extraction: {0}")]
    Singular(SingularExtraction),
    #[error("factor index {index} out of range (have {count})")]
    FactorOutOfRange { index: usize, count: usize },
    #[error("restricted module '{0}' has no known finite dimension")]
    UnknownDimension(String),
    #[error("extraction failed: {0}")]
    Extraction(#[from] ExtractionError),
    #[error(transparent)]
    Tensor(#[from] crate::tensor::TensorError),
    #[error("span certificate failed for {0}; this indicates an implementation bug")]
    SpanCertificate(String),
}

fn require_distinct_lambdas(shape: &TensorShape) -> Result<(), TheoremError> {
    if let Some((a, b)) = shape.lambda_collision() {
        return Err(TheoremError::Singular(SingularExtraction {
            first_factor: a,
            second_factor: b,
            lambda: shape.param(a).lambda().clone(),
        }));
    }
    Ok(())
}

/// The finite form of `N(X, g, p) = span{g, X_n g | n >= p}`.
///
/// Built from the symbolic decomposition of `X_n g`; the stored basis spans
/// the limit, independent of `p` (as long as `p` is at least the
/// annihilation bound of `g`, which the constructor enforces). Construction
/// cross-checks the basis by sampling extra values of `n` beyond those the
/// decomposition accounts for and verifying membership.
#[derive(Debug)]
pub struct StableSpan {
    pub family: Family,
    pub base: TensorElement,
    pub threshold: i64,
    basis: SpanBasis,
}

impl StableSpan {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn basis_vectors(&self) -> &[SparseVec] {
        self.basis.rows()
    }

    /// Membership of a vector coordinatized with the same [`Coordinatizer`]
    /// the span was built with.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.basis.contains(v)
    }
}

/// Compute `N(family, g, threshold)` in the coordinates of `cm`.
pub fn stable_span(
    family: Family,
    g: &TensorElement,
    threshold: i64,
    cm: &mut Coordinatizer,
) -> Result<StableSpan, TheoremError> {
    if g.is_zero() {
        return Err(TheoremError::ZeroElement);
    }
    let bound = g.ann_bound();
    if threshold < bound as i64 {
        return Err(TheoremError::ThresholdBelowBound { threshold, bound });
    }
    let blocks = g.act_decompose(family);
    let mut basis = SpanBasis::new();
    basis.insert(&g.coordinatize(cm));
    let mut component_count = 0usize;
    for block in &blocks {
        for coeff in &block.coeffs {
            component_count += 1;
            if !coeff.is_zero() {
                basis.insert(&coeff.coordinatize(cm));
            }
        }
    }
    let span = StableSpan {
        family,
        base: g.clone(),
        threshold,
        basis,
    };
    // Cross-check: actual actions at sample points beyond the component
    // window must already lie in the computed span.
    for n in [threshold, threshold + component_count as i64 + 1] {
        let acted = g.act(Generator::new(family, n));
        if !span.contains(&acted.coordinatize(cm)) {
            return Err(TheoremError::SpanCertificate(format!(
                "N({family}, ., {threshold}) misses the action at n = {n}"
            )));
        }
    }
    Ok(span)
}

/// The six exponent moves available inside stable spans, each returning an
/// element certified (by span membership) to lie in the named span.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanMove {
    /// Multiply by `s_l`; lives in `N(L, g, p)`.
    RaiseOmegaFirst,
    /// Multiply by `x_l`; lives in `N(L, g, p)`.
    RaiseGammaFirst,
    /// Multiply by `t_l`; lives in `N(H, g, p)`.
    RaiseOmegaSecond,
    /// Multiply by `y_l`; lives in `N(H, g, p)`.
    RaiseGammaSecond,
    /// Keep only the terms with maximal `s_l`-exponent `P_l`, set it to
    /// zero and raise the `t_l`-exponent; lives in `N(H, g, p)`.
    TradeOmegaTop,
    /// Keep only the terms with maximal `x_l`-exponent `R_l`, set it to
    /// zero and raise the `y_l`-exponent; lives in `N(H, g, p)`.
    TradeGammaTop,
}

impl SpanMove {
    pub const ALL: [SpanMove; 6] = [
        SpanMove::RaiseOmegaFirst,
        SpanMove::RaiseGammaFirst,
        SpanMove::RaiseOmegaSecond,
        SpanMove::RaiseGammaSecond,
        SpanMove::TradeOmegaTop,
        SpanMove::TradeGammaTop,
    ];

    /// The family whose stable span certifies this move.
    pub fn span_family(self) -> Family {
        match self {
            SpanMove::RaiseOmegaFirst | SpanMove::RaiseGammaFirst => Family::L,
            _ => Family::H,
        }
    }

    fn is_omega_side(self) -> bool {
        matches!(
            self,
            SpanMove::RaiseOmegaFirst | SpanMove::RaiseOmegaSecond | SpanMove::TradeOmegaTop
        )
    }
}

/// Construct the element of a [`SpanMove`] for factor `l` (0-based within
/// the Omega or Gamma block) and certify it against the corresponding
/// stable span at `threshold`.
///
/// Requires pairwise-distinct lambdas: with a collision the per-factor
/// component is not separable and the certificate has no basis.
pub fn span_move(
    mv: SpanMove,
    l: usize,
    g: &TensorElement,
    threshold: i64,
    cm: &mut Coordinatizer,
) -> Result<TensorElement, TheoremError> {
    if g.is_zero() {
        return Err(TheoremError::ZeroElement);
    }
    let shape = g.shape();
    require_distinct_lambdas(shape)?;
    let side_count = if mv.is_omega_side() {
        shape.m1()
    } else {
        shape.m2()
    };
    if l >= side_count {
        return Err(TheoremError::FactorOutOfRange {
            index: l,
            count: side_count,
        });
    }

    let moved = match mv {
        SpanMove::RaiseOmegaFirst | SpanMove::RaiseGammaFirst => {
            let factor = if mv.is_omega_side() { l } else { shape.m1() + l };
            g.map_factor(factor, |p| p.mul_var1()).expect("factor in range")
        }
        SpanMove::RaiseOmegaSecond | SpanMove::RaiseGammaSecond => {
            let factor = if mv.is_omega_side() { l } else { shape.m1() + l };
            g.map_factor(factor, |p| p.mul_var2()).expect("factor in range")
        }
        SpanMove::TradeOmegaTop => {
            let (top, _) = g.top_exponents(l)?;
            let top = top.expect("omega side checked");
            TensorElement::from_terms(
                shape,
                g.terms().filter(|(sig, _)| sig.exp_p[l] == top).map(|(sig, v)| {
                    let mut new_sig = sig.clone();
                    new_sig.exp_p[l] = 0;
                    new_sig.exp_q[l] += 1;
                    (new_sig, v.clone())
                }),
            )
        }
        SpanMove::TradeGammaTop => {
            let (_, top) = g.top_exponents(l)?;
            let top = top.expect("gamma side checked");
            TensorElement::from_terms(
                shape,
                g.terms().filter(|(sig, _)| sig.exp_r[l] == top).map(|(sig, v)| {
                    let mut new_sig = sig.clone();
                    new_sig.exp_r[l] = 0;
                    new_sig.exp_s[l] += 1;
                    (new_sig, v.clone())
                }),
            )
        }
    };

    let span = stable_span(mv.span_family(), g, threshold, cm)?;
    if !span.contains(&moved.coordinatize(cm)) {
        return Err(TheoremError::SpanCertificate(format!(
            "{mv:?} on factor {l} left N({}, g, {threshold})",
            mv.span_family()
        )));
    }
    Ok(moved)
}

/// `D_g`: the dimension of `N(H,g,p) + N(I,g,p) + N(J,g,p)` for large `p`.
/// Requires a nonzero element over pairwise-distinct lambdas.
pub fn compute_dg(g: &TensorElement) -> Result<usize, TheoremError> {
    if g.is_zero() {
        return Err(TheoremError::ZeroElement);
    }
    require_distinct_lambdas(g.shape())?;
    let threshold = g.ann_bound() as i64;
    let mut cm = Coordinatizer::new();
    let mut union = SpanBasis::new();
    for family in [Family::H, Family::I, Family::J] {
        let span = stable_span(family, g, threshold, &mut cm)?;
        for row in span.basis_vectors() {
            union.insert(row);
        }
    }
    Ok(union.rank())
}

/// Smallest `D_g` over the given sample elements: an upper bound for the
/// module invariant `D_T = inf { D_g }`. The matching lower bound
/// `m1 + m2 + 1` holds for every nonzero element, with equality exactly on
/// vacuum-form elements, so the estimate is exact whenever a vacuum element
/// is among the samples.
pub fn estimate_dt(
    shape: &Arc<TensorShape>,
    samples: &[TensorElement],
) -> Result<usize, TheoremError> {
    let mut best: Option<usize> = None;
    for g in samples {
        assert!(
            Arc::ptr_eq(g.shape(), shape),
            "sample from a different shape"
        );
        let dg = compute_dg(g)?;
        best = Some(best.map_or(dg, |b| b.min(dg)));
    }
    best.ok_or(TheoremError::ZeroElement)
}

/// Result of a truncated generation closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationReport {
    /// Did the closure reach every monomial of the truncation window?
    pub saturated: bool,
    pub dim_reached: usize,
    pub dim_target: usize,
}

/// Close `span{1 (x) ... (x) 1 (x) seed_v}` under all `X_n` with
/// `|n| <= generator_degree_bound`, keeping only results whose monomials
/// stay within total degree `degree_bound`.
///
/// Saturation (`dim_reached == dim_target`) certifies that the vacuum
/// element generates the whole truncation window. The check is one-sided:
/// actions may leave the window and only results inside it are used, so a
/// non-saturated report is inconclusive, not a disproof. Repeated-lambda
/// shapes are legal inputs; they typically fail to saturate.
pub fn generation_saturation(
    shape: &Arc<TensorShape>,
    seed_v: &VElement,
    degree_bound: u32,
    generator_degree_bound: u32,
) -> Result<SaturationReport, TheoremError> {
    if seed_v.is_zero() {
        return Err(TheoremError::ZeroElement);
    }
    let v_dim = shape
        .module()
        .dimension()
        .ok_or_else(|| TheoremError::UnknownDimension(shape.module().name().to_string()))?;
    let vars = 2 * (shape.m1() + shape.m2()) as u32;
    let monomials = binomial(degree_bound + vars, vars)
        .to_usize()
        .expect("window size fits in usize");
    let dim_target = monomials * v_dim;

    let vacuum = TensorElement::vacuum(shape, seed_v.clone());
    let mut cm = Coordinatizer::new();
    let mut basis = SpanBasis::new();
    basis.insert(&vacuum.coordinatize(&mut cm));
    let mut worklist = vec![vacuum];
    let n_bound = generator_degree_bound as i64;
    'grow: while let Some(element) = worklist.pop() {
        for family in Family::ALL {
            for n in -n_bound..=n_bound {
                let acted = element.act(Generator::new(family, n));
                if acted.is_zero() {
                    continue;
                }
                if acted
                    .terms()
                    .any(|(sig, _)| sig.total_degree() > degree_bound)
                {
                    continue;
                }
                if basis.insert(&acted.coordinatize(&mut cm)) {
                    worklist.push(acted);
                    if basis.rank() == dim_target {
                        break 'grow;
                    }
                }
            }
        }
    }
    Ok(SaturationReport {
        saturated: basis.rank() == dim_target,
        dim_reached: basis.rank(),
        dim_target,
    })
}

/// One step of the degree descent.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub action: String,
    pub element: TensorElement,
    pub degree: Degree,
}

/// A certified descent from an element to a vacuum-form element of the
/// submodule it generates. Degrees strictly decrease along the steps.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    pub terminal: TensorElement,
}

/// Extract the per-factor components of `F(n) = X_n g` when the action has
/// a single `n^0` term per acting factor. `factors` lists the (0-based)
/// acting factor indices; returns one component per factor scaled so that
/// factor `k`'s component is `sigma_k^{-1}` times the raw extraction.
fn extract_factor_components(
    g: &TensorElement,
    family: Family,
    factors: &[usize],
) -> Result<Vec<TensorElement>, TheoremError> {
    let shape = g.shape();
    let bound = g.ann_bound() as i64;
    let terms: Vec<ExtractionTerm> = factors
        .iter()
        .map(|&k| ExtractionTerm::new(shape.param(k).lambda().clone(), 0))
        .collect();
    let mut cm = Coordinatizer::new();
    let samples: Vec<(i64, SparseVec)> = (0..factors.len() as i64)
        .map(|offset| {
            let n = bound + offset;
            (n, g.act(Generator::new(family, n)).coordinatize(&mut cm))
        })
        .collect();
    let raw = linalg::vandermonde_extract(&samples, &terms).map_err(|err| match err {
        ExtractionError::Singular { first, second, term } => {
            TheoremError::Singular(SingularExtraction {
                first_factor: factors[first],
                second_factor: factors[second],
                lambda: term.lambda,
            })
        }
        other => TheoremError::Extraction(other),
    })?;
    Ok(factors
        .iter()
        .zip(raw)
        .map(|(&k, w)| {
            let sigma_inv = shape
                .param(k)
                .sigma()
                .inv()
                .expect("sigma nonzero by construction");
            TensorElement::from_sparse(shape, &cm, &w.scale(&sigma_inv))
        })
        .collect())
}

/// Certify that `candidate` lies in `N(family, g, threshold)`.
fn certify_in_span(
    candidate: &TensorElement,
    family: Family,
    g: &TensorElement,
    threshold: i64,
    what: &str,
) -> Result<(), TheoremError> {
    let mut cm = Coordinatizer::new();
    let span = stable_span(family, g, threshold, &mut cm)?;
    if span.contains(&candidate.coordinatize(&mut cm)) {
        Ok(())
    } else {
        Err(TheoremError::SpanCertificate(what.to_string()))
    }
}

/// Constructive simplicity reduction: descend from a nonzero element to a
/// vacuum-form element of the submodule it generates, certifying every step
/// by membership in the appropriate stable span.
///
/// Phase order: clear all Omega first-variable exponents (top trades inside
/// `N(H)`), then all Gamma first-variable exponents, then the Omega
/// second-variable exponents via `I_n` component extraction, then the Gamma
/// second-variable exponents via `J_n`. Each step strictly lowers the
/// degree in the composite well-founded order, so the loop terminates.
///
/// A repeated lambda makes the component extractions singular; the error
/// reports the colliding factors. This is the machine witness of the
/// reducible case.
pub fn simplicity_reduce(g: &TensorElement) -> Result<ReductionTrace, TheoremError> {
    if g.is_zero() {
        return Err(TheoremError::ZeroElement);
    }
    let shape = Arc::clone(g.shape());
    require_distinct_lambdas(&shape)?;
    let (m1, m2) = (shape.m1(), shape.m2());

    let mut current = g.clone();
    let mut steps: Vec<ReductionStep> = Vec::new();
    let push_step =
        |steps: &mut Vec<ReductionStep>, action: String, last_deg: &Degree, next: TensorElement| {
            let next_deg = next.deg();
            assert!(
                next_deg < *last_deg,
                "degree must strictly decrease: {action}"
            );
            assert!(!next.is_zero(), "descent produced zero: {action}");
            steps.push(ReductionStep {
                action,
                element: next.clone(),
                degree: next_deg,
            });
            next
        };

    loop {
        let bound = current.ann_bound() as i64;
        let deg = current.deg();
        let mut cm = Coordinatizer::new();

        // Omega first-variable exponents.
        if let Some(l) = (0..m1).find(|&l| {
            current
                .top_exponents(l)
                .ok()
                .and_then(|(p, _)| p)
                .is_some_and(|p| p > 0)
        }) {
            let moved = span_move(SpanMove::TradeOmegaTop, l, &current, bound, &mut cm)?;
            current = push_step(
                &mut steps,
                format!("trade top s{}-exponent into t{} inside N(H)", l + 1, l + 1),
                &deg,
                moved,
            );
            continue;
        }

        // Gamma first-variable exponents.
        if let Some(l) = (0..m2).find(|&l| {
            current
                .top_exponents(l)
                .ok()
                .and_then(|(_, r)| r)
                .is_some_and(|r| r > 0)
        }) {
            let moved = span_move(SpanMove::TradeGammaTop, l, &current, bound, &mut cm)?;
            current = push_step(
                &mut steps,
                format!("trade top x{}-exponent into y{} inside N(H)", l + 1, l + 1),
                &deg,
                moved,
            );
            continue;
        }

        // Omega second-variable exponents, via I_n extraction. The degree's
        // q-part is nonzero iff any term still carries a t-exponent.
        let deg_sig = deg.signature().expect("current is nonzero").clone();
        if let Some(k) = (0..m1).find(|&k| deg_sig.exp_q[k] > 0) {
            let factors: Vec<usize> = (0..m1).collect();
            let components = extract_factor_components(&current, Family::I, &factors)?;
            // components[k] is the copy of `current` with (t_k - 1) in
            // place of t_k; subtracting cancels the leading terms.
            certify_in_span(
                &components[k],
                Family::I,
                &current,
                bound,
                "I-extracted component",
            )?;
            let next = current.sub(&components[k]);
            current = push_step(
                &mut steps,
                format!("subtract I-extracted t{}-shift component", k + 1),
                &deg,
                next,
            );
            continue;
        }

        // Gamma second-variable exponents, via J_n extraction.
        if let Some(l) = (0..m2).find(|&l| deg_sig.exp_s[l] > 0) {
            let factors: Vec<usize> = (m1..m1 + m2).collect();
            let components = extract_factor_components(&current, Family::J, &factors)?;
            certify_in_span(
                &components[l],
                Family::J,
                &current,
                bound,
                "J-extracted component",
            )?;
            let next = current.sub(&components[l]);
            current = push_step(
                &mut steps,
                format!("subtract J-extracted y{}-shift component", l + 1),
                &deg,
                next,
            );
            continue;
        }

        break;
    }

    assert!(
        current.is_vacuum_form(),
        "descent terminated off vacuum form"
    );
    Ok(ReductionTrace {
        steps,
        terminal: current,
    })
}

/// Parameter data recovered from the module action alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredParams {
    pub m1: usize,
    pub m2: usize,
    /// Sorted multiset of Omega-factor `(lambda, sigma, eta)` triples.
    pub omega: Vec<(Scalar, Scalar, Scalar)>,
    /// Sorted multiset of Gamma-factor triples.
    pub gamma: Vec<(Scalar, Scalar, Scalar)>,
}

/// Recover the full parameter multisets of a shape by sampling the actions
/// of `H_n`, `I_n`, `J_n` and `L_n` on the vacuum element over `probe_v`.
///
/// - `H_n` on the vacuum populates the per-factor `t_k`/`y_l` coordinates
///   with coefficient `lambda^n`; the ratio of consecutive samples yields
///   each factor's lambda (and the factor kinds).
/// - `I_n` (resp. `J_n`) scales the vacuum by `sum_k sigma_k lambda_k^n`
///   over the Omega (resp. Gamma) factors; a Vandermonde extraction
///   separates the `sigma_k`.
/// - `L_n` contributes both `lambda^n` terms (the `s_k`/`x_l` bumps) and
///   `n lambda^n` terms (`(t_k + eta_k)`/`(y_l + eta_l)` bumps); extracting
///   with both powers per lambda isolates each `eta_k` as the vacuum
///   coordinate of the power-one component.
///
/// The recovered multisets must coincide with the shape's stored
/// parameters; two shapes are isomorphic exactly when their recovered data
/// agree (with isomorphic restricted slots).
pub fn recover_parameters(
    shape: &Arc<TensorShape>,
    probe_v: &VElement,
) -> Result<RecoveredParams, TheoremError> {
    if probe_v.is_zero() {
        return Err(TheoremError::ZeroElement);
    }
    require_distinct_lambdas(shape)?;
    let (m1, m2) = (shape.m1(), shape.m2());
    let vac = TensorElement::vacuum(shape, probe_v.clone());
    let bound = vac.ann_bound() as i64;
    let (probe_coord, _) = probe_v.coords().next().expect("probe is nonzero");

    if m1 + m2 == 0 {
        return Ok(RecoveredParams {
            m1,
            m2,
            omega: Vec::new(),
            gamma: Vec::new(),
        });
    }

    // Lambdas from two consecutive H-samples: the coefficient of each
    // factor's second-variable bump is lambda^n times the probe vector.
    let h_at = |n: i64| vac.act(Generator::new(Family::H, n));
    let h0 = h_at(bound);
    let h1 = h_at(bound + 1);
    let bump_sig = |factor: usize| -> ExpSignature {
        let mut sig = ExpSignature::zero(m1, m2);
        if factor < m1 {
            sig.exp_q[factor] = 1;
        } else {
            sig.exp_s[factor - m1] = 1;
        }
        sig
    };
    let mut lambdas = Vec::with_capacity(m1 + m2);
    for factor in 0..m1 + m2 {
        let sig = bump_sig(factor);
        let read = |e: &TensorElement, what: &str| -> Result<Scalar, TheoremError> {
            e.get(&sig)
                .and_then(|v| v.get(probe_coord))
                .cloned()
                .ok_or_else(|| TheoremError::SpanCertificate(format!("missing {what} sample")))
        };
        let v0 = read(&h0, "H")?;
        let v1 = read(&h1, "H")?;
        lambdas.push(v1.div(&v0).expect("lambda^n is nonzero"));
    }

    // Sigmas from I_n (Omega block) and J_n (Gamma block) extractions:
    // each action is (sum_k sigma_k lambda_k^n) times the vacuum.
    let sigma_block = |family: Family, factors: std::ops::Range<usize>| -> Result<Vec<Scalar>, TheoremError> {
        if factors.is_empty() {
            return Ok(Vec::new());
        }
        let terms: Vec<ExtractionTerm> = factors
            .clone()
            .map(|k| ExtractionTerm::new(lambdas[k].clone(), 0))
            .collect();
        let mut cm = Coordinatizer::new();
        let vac_coord = vac.coordinatize(&mut cm);
        let samples: Vec<(i64, SparseVec)> = (0..terms.len() as i64)
            .map(|offset| {
                let n = bound + offset;
                (n, vac.act(Generator::new(family, n)).coordinatize(&mut cm))
            })
            .collect();
        let raw = linalg::vandermonde_extract(&samples, &terms)?;
        let lead = vac_coord.leading_coord().expect("vacuum is nonzero");
        let lead_value = vac_coord.get(lead).unwrap().clone();
        raw.into_iter()
            .map(|w| {
                let sigma = w
                    .get(lead)
                    .cloned()
                    .unwrap_or_else(Scalar::zero)
                    .div(&lead_value)
                    .expect("vacuum coordinate nonzero");
                if w != vac_coord.scale(&sigma) {
                    return Err(TheoremError::SpanCertificate(
                        "sigma component is not a vacuum multiple".to_string(),
                    ));
                }
                Ok(sigma)
            })
            .collect()
    };
    let omega_sigmas = sigma_block(Family::I, 0..m1)?;
    let gamma_sigmas = sigma_block(Family::J, m1..m1 + m2)?;

    // Etas from L_n: for each factor the n^1 lambda^n component equals
    // (second-variable bump) + eta * vacuum; its vacuum coordinate is eta.
    let mut terms = Vec::with_capacity(2 * (m1 + m2));
    for lambda in &lambdas {
        terms.push(ExtractionTerm::new(lambda.clone(), 0));
        terms.push(ExtractionTerm::new(lambda.clone(), 1));
    }
    let mut cm = Coordinatizer::new();
    let vac_sparse = vac.coordinatize(&mut cm);
    let samples: Vec<(i64, SparseVec)> = (0..terms.len() as i64)
        .map(|offset| {
            let n = bound + offset;
            (n, vac.act(Generator::new(Family::L, n)).coordinatize(&mut cm))
        })
        .collect();
    let raw = linalg::vandermonde_extract(&samples, &terms)?;
    let lead = vac_sparse.leading_coord().expect("vacuum is nonzero");
    let lead_value = vac_sparse.get(lead).unwrap().clone();
    let mut etas = Vec::with_capacity(m1 + m2);
    for factor in 0..m1 + m2 {
        let power_one = &raw[2 * factor + 1];
        let eta = power_one
            .get(lead)
            .cloned()
            .unwrap_or_else(Scalar::zero)
            .div(&lead_value)
            .expect("vacuum coordinate nonzero");
        // Sanity: the component must be (-+ bump + eta * vacuum) exactly,
        // with the bump signed like the L-action's n-coefficient: minus on
        // the Omega side, plus on the Gamma side.
        let bump_sign = if factor < m1 {
            Scalar::from(-1)
        } else {
            Scalar::one()
        };
        let expected = TensorElement::monomial(shape, bump_sig(factor), probe_v.clone())
            .scale(&bump_sign)
            .coordinatize(&mut cm)
            .add(&vac_sparse.scale(&eta));
        if power_one != &expected {
            return Err(TheoremError::SpanCertificate(
                "eta component has unexpected shape".to_string(),
            ));
        }
        etas.push(eta);
    }

    let mut omega: Vec<(Scalar, Scalar, Scalar)> = (0..m1)
        .map(|k| (lambdas[k].clone(), omega_sigmas[k].clone(), etas[k].clone()))
        .collect();
    let mut gamma: Vec<(Scalar, Scalar, Scalar)> = (0..m2)
        .map(|l| {
            (
                lambdas[m1 + l].clone(),
                gamma_sigmas[l].clone(),
                etas[m1 + l].clone(),
            )
        })
        .collect();
    omega.sort();
    gamma.sort();
    Ok(RecoveredParams { m1, m2, omega, gamma })
}

/// Sorted parameter multisets straight from a shape's stored data, for
/// round-trip comparison against [`recover_parameters`].
pub fn stored_parameters(shape: &TensorShape) -> RecoveredParams {
    let mut omega = Vec::new();
    let mut gamma = Vec::new();
    for p in shape.params() {
        match p.kind() {
            ModuleKind::Omega => omega.push(p.triple()),
            ModuleKind::Gamma => gamma.push(p.triple()),
        }
    }
    omega.sort();
    gamma.sort();
    RecoveredParams {
        m1: shape.m1(),
        m2: shape.m2(),
        omega,
        gamma,
    }
}
