//! Tensor products of rank-one modules with a restricted module.
//!
//! A tensor shape is `m1` Omega factors followed by `m2` Gamma factors and a
//! final restricted-module slot `V`. Elements are finite sums of monomials
//! `s^p t^q (x) x^r y^s (x) v`, stored per exponent signature with the
//! V-component as the coefficient. Generators act by the Leibniz rule: the
//! sum over factors of the factor-wise action.
//!
//! Name conventions: the letter `s` is overloaded in the underlying
//! mathematics (a polynomial variable, an exponent vector, an annihilation
//! bound). Here `exp_*` always means an exponent vector, `ann_bound` an
//! annihilation bound, and variables are rendered `s1, t1, ..., x1, y1, ...`.

use crate::gca::{Family, Generator};
use crate::linalg::SparseVec;
use crate::rank1::{self, ModuleKind, ModuleParams, Poly2};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("signatures have different shapes")]
    ShapeMismatch,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("factor index {index} out of range (have {count})")]
    FactorOutOfRange { index: usize, count: usize },
    #[error("factor {index}: all omega factors must precede all gamma factors")]
    OmegaAfterGamma { index: usize },
    #[error("factor permutation is not a bijection")]
    BadPermutation,
}

/// A vector of the restricted-module slot, as sparse coordinates over an
/// abstract basis. Coordinates are the canonical linear form of a vector:
/// addition and scaling act entrywise, and distinct vectors have distinct
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VElement {
    coords: BTreeMap<u64, Scalar>,
}

impl VElement {
    pub fn zero() -> Self {
        VElement::default()
    }

    pub fn basis(id: u64) -> Self {
        VElement::from_coords([(id, Scalar::one())])
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (u64, Scalar)>) -> Self {
        let mut v = VElement::zero();
        for (id, value) in coords {
            v.add_coord(id, value);
        }
        v
    }

    pub fn add_coord(&mut self, id: u64, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.coords.entry(id) {
            std::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut entry) => {
                *entry.get_mut() += &value;
                if entry.get().is_zero() {
                    entry.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.coords.iter().map(|(&id, v)| (id, v))
    }

    pub fn get(&self, id: u64) -> Option<&Scalar> {
        self.coords.get(&id)
    }

    pub fn add(&self, rhs: &VElement) -> VElement {
        let mut out = self.clone();
        for (id, value) in rhs.coords() {
            out.add_coord(id, value.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> VElement {
        if factor.is_zero() {
            return VElement::zero();
        }
        VElement {
            coords: self
                .coords
                .iter()
                .map(|(&id, value)| (id, value * factor))
                .collect(),
        }
    }
}

impl fmt::Display for VElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (id, value) in self.coords() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if value.is_one() {
                write!(f, "v{id}")?;
            } else {
                write!(f, "({value})*v{id}")?;
            }
        }
        Ok(())
    }
}

/// The restricted-module slot of a tensor shape.
///
/// Implementations must behave as restricted modules: for every vector `v`
/// and every `n >= annihilation_bound(v)`, `act(X_n, v) = 0` for all four
/// families. The action must be linear in `v`, and pure (safe for concurrent
/// read-only calls). Simplicity of the module is a caller-asserted contract;
/// it is not checked here.
pub trait RestrictedModule: Send + Sync {
    fn act(&self, gen: Generator, v: &VElement) -> VElement;

    /// Smallest `i >= 0` with `X_n v = 0` for all `n >= i` and all families.
    fn annihilation_bound(&self, v: &VElement) -> u32;

    /// Dimension, when finite and known; used to size saturation targets.
    fn dimension(&self) -> Option<usize> {
        None
    }

    fn name(&self) -> &str;
}

/// The one-dimensional module on which every generator acts as zero.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrivialModule;

impl TrivialModule {
    pub fn vector() -> VElement {
        VElement::basis(0)
    }
}

impl RestrictedModule for TrivialModule {
    fn act(&self, _gen: Generator, _v: &VElement) -> VElement {
        VElement::zero()
    }

    fn annihilation_bound(&self, _v: &VElement) -> u32 {
        0
    }

    fn dimension(&self) -> Option<usize> {
        Some(1)
    }

    fn name(&self) -> &str {
        "trivial"
    }
}

/// A validated tensor shape: `m1` Omega parameter triples, then `m2` Gamma
/// triples, then the restricted-module slot.
#[derive(Clone)]
pub struct TensorShape {
    params: Vec<ModuleParams>,
    m1: usize,
    m2: usize,
    v: Arc<dyn RestrictedModule>,
}

impl fmt::Debug for TensorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TensorShape")
            .field("params", &self.params)
            .field("v", &self.v.name())
            .finish()
    }
}

impl fmt::Display for TensorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m1={} m2={} |", self.m1, self.m2)?;
        for p in &self.params {
            write!(f, " {p}")?;
        }
        write!(f, " | V={}", self.v.name())
    }
}

impl TensorShape {
    pub fn new(
        params: Vec<ModuleParams>,
        v: Arc<dyn RestrictedModule>,
    ) -> Result<Arc<Self>, TensorError> {
        let mut m1 = 0usize;
        let mut seen_gamma = false;
        for (index, p) in params.iter().enumerate() {
            match p.kind() {
                ModuleKind::Omega => {
                    if seen_gamma {
                        return Err(TensorError::OmegaAfterGamma { index });
                    }
                    m1 += 1;
                }
                ModuleKind::Gamma => seen_gamma = true,
            }
        }
        let m2 = params.len() - m1;
        Ok(Arc::new(TensorShape { params, m1, m2, v }))
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    pub fn factor_count(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[ModuleParams] {
        &self.params
    }

    pub fn param(&self, factor: usize) -> &ModuleParams {
        &self.params[factor]
    }

    pub fn module(&self) -> &Arc<dyn RestrictedModule> {
        &self.v
    }

    pub fn lambdas(&self) -> Vec<Scalar> {
        self.params.iter().map(|p| p.lambda().clone()).collect()
    }

    /// First pair of factors sharing a lambda, if any (0-based indices).
    pub fn lambda_collision(&self) -> Option<(usize, usize)> {
        for a in 0..self.params.len() {
            for b in a + 1..self.params.len() {
                if self.params[a].lambda() == self.params[b].lambda() {
                    return Some((a, b));
                }
            }
        }
        None
    }

    /// Reorder the Omega factors by `omega_perm` and the Gamma factors by
    /// `gamma_perm` (`perm[i]` is the new position of old factor `i`).
    pub fn permute(
        &self,
        omega_perm: &[usize],
        gamma_perm: &[usize],
    ) -> Result<Arc<TensorShape>, TensorError> {
        let omega = apply_permutation(&self.params[..self.m1], omega_perm)?;
        let gamma = apply_permutation(&self.params[self.m1..], gamma_perm)?;
        let mut params = omega;
        params.extend(gamma);
        TensorShape::new(params, Arc::clone(&self.v))
    }
}

fn apply_permutation<T: Clone>(items: &[T], perm: &[usize]) -> Result<Vec<T>, TensorError> {
    if perm.len() != items.len() {
        return Err(TensorError::BadPermutation);
    }
    let mut out: Vec<Option<T>> = vec![None; items.len()];
    for (i, &target) in perm.iter().enumerate() {
        let slot = out.get_mut(target).ok_or(TensorError::BadPermutation)?;
        if slot.is_some() {
            return Err(TensorError::BadPermutation);
        }
        *slot = Some(items[i].clone());
    }
    Ok(out.into_iter().map(Option::unwrap).collect())
}

/// Exponent signature of one tensor monomial: `exp_p`/`exp_q` hold the
/// first/second-variable exponents of the Omega factors, `exp_r`/`exp_s`
/// those of the Gamma factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpSignature {
    pub exp_p: Vec<u32>,
    pub exp_q: Vec<u32>,
    pub exp_r: Vec<u32>,
    pub exp_s: Vec<u32>,
}

impl ExpSignature {
    pub fn new(exp_p: Vec<u32>, exp_q: Vec<u32>, exp_r: Vec<u32>, exp_s: Vec<u32>) -> Self {
        assert_eq!(exp_p.len(), exp_q.len());
        assert_eq!(exp_r.len(), exp_s.len());
        ExpSignature {
            exp_p,
            exp_q,
            exp_r,
            exp_s,
        }
    }

    pub fn zero(m1: usize, m2: usize) -> Self {
        ExpSignature {
            exp_p: vec![0; m1],
            exp_q: vec![0; m1],
            exp_r: vec![0; m2],
            exp_s: vec![0; m2],
        }
    }

    pub fn m1(&self) -> usize {
        self.exp_p.len()
    }

    pub fn m2(&self) -> usize {
        self.exp_r.len()
    }

    pub fn same_shape(&self, other: &ExpSignature) -> bool {
        self.m1() == other.m1() && self.m2() == other.m2()
    }

    pub fn is_zero(&self) -> bool {
        let all_zero = |v: &[u32]| v.iter().all(|&e| e == 0);
        all_zero(&self.exp_p)
            && all_zero(&self.exp_q)
            && all_zero(&self.exp_r)
            && all_zero(&self.exp_s)
    }

    pub fn total_degree(&self) -> u32 {
        self.exp_p.iter().sum::<u32>()
            + self.exp_q.iter().sum::<u32>()
            + self.exp_r.iter().sum::<u32>()
            + self.exp_s.iter().sum::<u32>()
    }
}

/// The composite monomial order: compare `exp_p`, then `exp_r`, then
/// `exp_q`, then `exp_s`, each lexicographically.
impl Ord for ExpSignature {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert!(self.same_shape(other), "comparing mismatched signatures");
        self.exp_p
            .cmp(&other.exp_p)
            .then_with(|| self.exp_r.cmp(&other.exp_r))
            .then_with(|| self.exp_q.cmp(&other.exp_q))
            .then_with(|| self.exp_s.cmp(&other.exp_s))
    }
}

impl PartialOrd for ExpSignature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExpSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut put = |name: char, index: usize, e: u32, f: &mut fmt::Formatter<'_>| {
            if e == 0 {
                return Ok(());
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}{}", index + 1)
            } else {
                write!(f, "{name}{}^{e}", index + 1)
            }
        };
        for k in 0..self.m1() {
            put('s', k, self.exp_p[k], f)?;
            put('t', k, self.exp_q[k], f)?;
        }
        for l in 0..self.m2() {
            put('x', l, self.exp_r[l], f)?;
            put('y', l, self.exp_s[l], f)?;
        }
        Ok(())
    }
}

/// Total order on same-shape signatures; mismatched shapes are an error.
pub fn compare_sig(a: &ExpSignature, b: &ExpSignature) -> Result<Ordering, TensorError> {
    if !a.same_shape(b) {
        return Err(TensorError::ShapeMismatch);
    }
    Ok(a.cmp(b))
}

/// Degree of a tensor element: the maximal signature of its support, or the
/// sentinel below every signature for the zero element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degree {
    NegInfinity,
    Sig(ExpSignature),
}

impl Degree {
    pub fn signature(&self) -> Option<&ExpSignature> {
        match self {
            Degree::NegInfinity => None,
            Degree::Sig(sig) => Some(sig),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, Degree::Sig(_)) => Ordering::Less,
            (Degree::Sig(_), Degree::NegInfinity) => Ordering::Greater,
            (Degree::Sig(a), Degree::Sig(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Sig(sig) => write!(
                f,
                "(p={:?}, q={:?}, r={:?}, s={:?})",
                sig.exp_p, sig.exp_q, sig.exp_r, sig.exp_s
            ),
        }
    }
}

/// Assigns stable opaque coordinate ids to `(signature, basis id)` pairs,
/// so tensor elements can be handed to the linear algebra kernels. Spans
/// that must be compared have to share one coordinatizer.
#[derive(Debug, Default)]
pub struct Coordinatizer {
    ids: BTreeMap<(ExpSignature, u64), u64>,
    keys: Vec<(ExpSignature, u64)>,
}

impl Coordinatizer {
    pub fn new() -> Self {
        Coordinatizer::default()
    }

    pub fn coord(&mut self, sig: &ExpSignature, basis: u64) -> u64 {
        if let Some(&id) = self.ids.get(&(sig.clone(), basis)) {
            return id;
        }
        let id = self.keys.len() as u64;
        self.ids.insert((sig.clone(), basis), id);
        self.keys.push((sig.clone(), basis));
        id
    }

    /// Key behind an assigned coordinate id.
    pub fn key(&self, id: u64) -> &(ExpSignature, u64) {
        &self.keys[id as usize]
    }
}

/// One per-lambda block of a symbolic action decomposition:
/// `coeffs[j]` is the coefficient of `n^j lambda^n`.
#[derive(Debug, Clone)]
pub struct LambdaBlock {
    pub lambda: Scalar,
    pub coeffs: Vec<TensorElement>,
}

/// An element of the tensor module, as a canonical sparse sum of
/// signature-keyed terms with nonzero V-components.
#[derive(Clone)]
pub struct TensorElement {
    shape: Arc<TensorShape>,
    terms: BTreeMap<ExpSignature, VElement>,
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({self})")
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for TensorElement {}

impl TensorElement {
    pub fn zero(shape: &Arc<TensorShape>) -> Self {
        TensorElement {
            shape: Arc::clone(shape),
            terms: BTreeMap::new(),
        }
    }

    /// The element `1 (x) ... (x) 1 (x) v`.
    pub fn vacuum(shape: &Arc<TensorShape>, v: VElement) -> Self {
        Self::monomial(shape, ExpSignature::zero(shape.m1(), shape.m2()), v)
    }

    pub fn monomial(shape: &Arc<TensorShape>, sig: ExpSignature, v: VElement) -> Self {
        let mut e = TensorElement::zero(shape);
        e.add_term(sig, v);
        e
    }

    pub fn from_terms(
        shape: &Arc<TensorShape>,
        terms: impl IntoIterator<Item = (ExpSignature, VElement)>,
    ) -> Self {
        let mut e = TensorElement::zero(shape);
        for (sig, v) in terms {
            e.add_term(sig, v);
        }
        e
    }

    pub fn add_term(&mut self, sig: ExpSignature, v: VElement) {
        assert_eq!(sig.m1(), self.shape.m1(), "signature shape mismatch");
        assert_eq!(sig.m2(), self.shape.m2(), "signature shape mismatch");
        if v.is_zero() {
            return;
        }
        match self.terms.entry(sig) {
            std::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(v);
            }
            std::collections::btree_map::Entry::Occupied(mut entry) => {
                let sum = entry.get().add(&v);
                if sum.is_zero() {
                    entry.remove();
                } else {
                    *entry.get_mut() = sum;
                }
            }
        }
    }

    pub fn shape(&self) -> &Arc<TensorShape> {
        &self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpSignature, &VElement)> {
        self.terms.iter()
    }

    pub fn get(&self, sig: &ExpSignature) -> Option<&VElement> {
        self.terms.get(sig)
    }

    pub fn add(&self, rhs: &TensorElement) -> TensorElement {
        assert!(Arc::ptr_eq(&self.shape, &rhs.shape), "shape mismatch");
        let mut out = self.clone();
        for (sig, v) in rhs.terms() {
            out.add_term(sig.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TensorElement) -> TensorElement {
        self.add(&rhs.scale(&Scalar::from(-1)))
    }

    pub fn scale(&self, factor: &Scalar) -> TensorElement {
        if factor.is_zero() {
            return TensorElement::zero(&self.shape);
        }
        TensorElement {
            shape: Arc::clone(&self.shape),
            terms: self
                .terms
                .iter()
                .map(|(sig, v)| (sig.clone(), v.scale(factor)))
                .collect(),
        }
    }

    /// Maximal signature of the support, or the sentinel for zero.
    pub fn deg(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(sig) => Degree::Sig(sig.clone()),
            None => Degree::NegInfinity,
        }
    }

    /// Componentwise maxima `(P_l, R_l)` over the support, for 0-based
    /// factor index `l` (`None` on the sides where `l` has no factor).
    pub fn top_exponents(&self, l: usize) -> Result<(Option<u32>, Option<u32>), TensorError> {
        if self.is_zero() {
            return Err(TensorError::ZeroElement);
        }
        let (m1, m2) = (self.shape.m1(), self.shape.m2());
        if l >= m1.max(m2) {
            return Err(TensorError::FactorOutOfRange {
                index: l,
                count: m1.max(m2),
            });
        }
        let p = (l < m1).then(|| self.terms.keys().map(|sig| sig.exp_p[l]).max().unwrap());
        let r = (l < m2).then(|| self.terms.keys().map(|sig| sig.exp_r[l]).max().unwrap());
        Ok((p, r))
    }

    /// Largest annihilation bound among the V-components (0 for zero).
    pub fn ann_bound(&self) -> u32 {
        self.terms
            .values()
            .map(|v| self.shape.module().annihilation_bound(v))
            .max()
            .unwrap_or(0)
    }

    /// Is this `1 (x) ... (x) 1 (x) v` with `v != 0`?
    pub fn is_vacuum_form(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_zero()
    }

    /// Action of a basis generator by the Leibniz rule.
    pub fn act(&self, gen: Generator) -> TensorElement {
        let mut out = TensorElement::zero(&self.shape);
        let (m1, m2) = (self.shape.m1(), self.shape.m2());
        for (sig, vel) in &self.terms {
            for k in 0..m1 {
                let mono = Poly2::monomial(sig.exp_p[k], sig.exp_q[k], Scalar::one());
                let acted = rank1::act(self.shape.param(k), gen, &mono);
                for (a, b, coeff) in acted.terms() {
                    let mut new_sig = sig.clone();
                    new_sig.exp_p[k] = a;
                    new_sig.exp_q[k] = b;
                    out.add_term(new_sig, vel.scale(coeff));
                }
            }
            for l in 0..m2 {
                let mono = Poly2::monomial(sig.exp_r[l], sig.exp_s[l], Scalar::one());
                let acted = rank1::act(self.shape.param(m1 + l), gen, &mono);
                for (a, b, coeff) in acted.terms() {
                    let mut new_sig = sig.clone();
                    new_sig.exp_r[l] = a;
                    new_sig.exp_s[l] = b;
                    out.add_term(new_sig, vel.scale(coeff));
                }
            }
            out.add_term(sig.clone(), self.shape.module().act(gen, vel));
        }
        out
    }

    /// Symbolic decomposition of `n -> X_n g`, valid for every
    /// `n >= self.ann_bound()` (where the V-slot contributes nothing):
    ///
    /// ```text
    /// X_n g = sum_blocks lambda^n * sum_j n^j coeffs[j]
    /// ```
    ///
    /// Blocks of factors sharing a lambda are merged; blocks that vanish
    /// entirely are dropped, and each block's coefficient list is trimmed of
    /// trailing zeros (interior zeros are kept so indices stay powers).
    pub fn act_decompose(&self, family: Family) -> Vec<LambdaBlock> {
        let mut blocks: BTreeMap<Scalar, Vec<TensorElement>> = BTreeMap::new();
        let (m1, m2) = (self.shape.m1(), self.shape.m2());
        for factor in 0..m1 + m2 {
            let params = self.shape.param(factor);
            let entry = blocks.entry(params.lambda().clone()).or_default();
            for (sig, vel) in &self.terms {
                let mono = if factor < m1 {
                    Poly2::monomial(sig.exp_p[factor], sig.exp_q[factor], Scalar::one())
                } else {
                    Poly2::monomial(
                        sig.exp_r[factor - m1],
                        sig.exp_s[factor - m1],
                        Scalar::one(),
                    )
                };
                let coeffs = rank1::act_in_n(params, family, &mono);
                if entry.len() < coeffs.len() {
                    entry.resize_with(coeffs.len(), || TensorElement::zero(&self.shape));
                }
                for (power, poly) in coeffs.iter().enumerate() {
                    for (a, b, coeff) in poly.terms() {
                        let mut new_sig = sig.clone();
                        if factor < m1 {
                            new_sig.exp_p[factor] = a;
                            new_sig.exp_q[factor] = b;
                        } else {
                            new_sig.exp_r[factor - m1] = a;
                            new_sig.exp_s[factor - m1] = b;
                        }
                        entry[power].add_term(new_sig, vel.scale(coeff));
                    }
                }
            }
        }
        blocks
            .into_iter()
            .filter_map(|(lambda, mut coeffs)| {
                while coeffs.last().is_some_and(TensorElement::is_zero) {
                    coeffs.pop();
                }
                if coeffs.is_empty() {
                    None
                } else {
                    Some(LambdaBlock { lambda, coeffs })
                }
            })
            .collect()
    }

    /// Apply a polynomial map to one factor's monomials, redistributing the
    /// result. `factor` indexes all factors, Omegas first.
    pub fn map_factor(
        &self,
        factor: usize,
        f: impl Fn(&Poly2) -> Poly2,
    ) -> Result<TensorElement, TensorError> {
        let (m1, m2) = (self.shape.m1(), self.shape.m2());
        if factor >= m1 + m2 {
            return Err(TensorError::FactorOutOfRange {
                index: factor,
                count: m1 + m2,
            });
        }
        let mut out = TensorElement::zero(&self.shape);
        for (sig, vel) in &self.terms {
            let mono = if factor < m1 {
                Poly2::monomial(sig.exp_p[factor], sig.exp_q[factor], Scalar::one())
            } else {
                Poly2::monomial(sig.exp_r[factor - m1], sig.exp_s[factor - m1], Scalar::one())
            };
            let mapped = f(&mono);
            for (a, b, coeff) in mapped.terms() {
                let mut new_sig = sig.clone();
                if factor < m1 {
                    new_sig.exp_p[factor] = a;
                    new_sig.exp_q[factor] = b;
                } else {
                    new_sig.exp_r[factor - m1] = a;
                    new_sig.exp_s[factor - m1] = b;
                }
                out.add_term(new_sig, vel.scale(coeff));
            }
        }
        Ok(out)
    }

    /// Rebuild an element from coordinates assigned by `cm`.
    pub fn from_sparse(
        shape: &Arc<TensorShape>,
        cm: &Coordinatizer,
        v: &SparseVec,
    ) -> TensorElement {
        let mut out = TensorElement::zero(shape);
        for (coord, value) in v.iter() {
            let (sig, basis) = cm.key(coord);
            out.add_term(sig.clone(), VElement::from_coords([(*basis, value.clone())]));
        }
        out
    }

    /// Coordinates of this element in the shared coordinate assignment.
    pub fn coordinatize(&self, cm: &mut Coordinatizer) -> SparseVec {
        let mut out = SparseVec::zero();
        for (sig, vel) in &self.terms {
            for (basis, value) in vel.coords() {
                out.add_entry(cm.coord(sig, basis), value.clone());
            }
        }
        out
    }

    /// Transport this element along a factor permutation of its shape.
    pub fn permute(
        &self,
        target: &Arc<TensorShape>,
        omega_perm: &[usize],
        gamma_perm: &[usize],
    ) -> Result<TensorElement, TensorError> {
        let (m1, m2) = (self.shape.m1(), self.shape.m2());
        if omega_perm.len() != m1 || gamma_perm.len() != m2 {
            return Err(TensorError::BadPermutation);
        }
        let mut out = TensorElement::zero(target);
        for (sig, vel) in &self.terms {
            let mut new_sig = ExpSignature::zero(m1, m2);
            for (k, &to) in omega_perm.iter().enumerate() {
                if to >= m1 {
                    return Err(TensorError::BadPermutation);
                }
                new_sig.exp_p[to] = sig.exp_p[k];
                new_sig.exp_q[to] = sig.exp_q[k];
            }
            for (l, &to) in gamma_perm.iter().enumerate() {
                if to >= m2 {
                    return Err(TensorError::BadPermutation);
                }
                new_sig.exp_r[to] = sig.exp_r[l];
                new_sig.exp_s[to] = sig.exp_s[l];
            }
            out.add_term(new_sig, vel.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (sig, vel) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if vel.coords.len() == 1 {
                write!(f, "{sig}⊗{vel}")?;
            } else {
                write!(f, "{sig}⊗({vel})")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gca;

    fn shape_omega(lambda: i64, sigma: i64, eta: i64) -> Arc<TensorShape> {
        TensorShape::new(
            vec![ModuleParams::omega(
                Scalar::from(lambda),
                Scalar::from(sigma),
                Scalar::from(eta),
            )
            .unwrap()],
            Arc::new(TrivialModule),
        )
        .unwrap()
    }

    fn vac(shape: &Arc<TensorShape>) -> TensorElement {
        TensorElement::vacuum(shape, TrivialModule::vector())
    }

    #[test]
    fn shape_rejects_omega_after_gamma() {
        let err = TensorShape::new(
            vec![
                ModuleParams::gamma(Scalar::from(2), Scalar::one(), Scalar::zero()).unwrap(),
                ModuleParams::omega(Scalar::from(3), Scalar::one(), Scalar::zero()).unwrap(),
            ],
            Arc::new(TrivialModule),
        )
        .unwrap_err();
        assert_eq!(err, TensorError::OmegaAfterGamma { index: 1 });
    }

    #[test]
    fn j_kills_omega_vacuum() {
        let shape = shape_omega(2, 3, 0);
        assert!(vac(&shape).act(gca::j(1)).is_zero());
    }

    #[test]
    fn i_scales_omega_vacuum() {
        // I_1 (1 (x) v) = lambda sigma (1 (x) v) = 6 (1 (x) v)
        let shape = shape_omega(2, 3, 0);
        let got = vac(&shape).act(gca::i_gen(1));
        assert_eq!(got, vac(&shape).scale(&Scalar::from(6)));
    }

    #[test]
    fn h_raises_omega_vacuum() {
        // H_1 (1 (x) v) = 2 (t (x) v)
        let shape = shape_omega(2, 3, 0);
        let got = vac(&shape).act(gca::h(1));
        let t_sig = ExpSignature::new(vec![0], vec![1], vec![], vec![]);
        let expected = TensorElement::monomial(&shape, t_sig, TrivialModule::vector())
            .scale(&Scalar::from(2));
        assert_eq!(got, expected);
    }

    #[test]
    fn signature_order_examples() {
        // p compared first
        let a = ExpSignature::new(vec![1, 0], vec![0, 0], vec![], vec![]);
        let b = ExpSignature::new(vec![0, 5], vec![0, 0], vec![], vec![]);
        assert_eq!(compare_sig(&a, &b), Ok(Ordering::Greater));
        assert_eq!(compare_sig(&a, &a), Ok(Ordering::Equal));
        // p and r equal: q decides
        let c = ExpSignature::new(vec![1], vec![2], vec![0], vec![3]);
        let d = ExpSignature::new(vec![1], vec![1], vec![0], vec![9]);
        assert_eq!(compare_sig(&c, &d), Ok(Ordering::Greater));
        // mismatched shapes are an error
        let e = ExpSignature::zero(1, 0);
        let g = ExpSignature::zero(2, 0);
        assert_eq!(compare_sig(&e, &g), Err(TensorError::ShapeMismatch));
    }

    #[test]
    fn degree_examples() {
        let shape = shape_omega(2, 3, 0);
        let v = TrivialModule::vector();
        // s^2 t (x) v + s t^3 (x) v has degree (p=(2), q=(1))
        let e = TensorElement::from_terms(
            &shape,
            [
                (ExpSignature::new(vec![2], vec![1], vec![], vec![]), v.clone()),
                (ExpSignature::new(vec![1], vec![3], vec![], vec![]), v.clone()),
            ],
        );
        assert_eq!(
            e.deg(),
            Degree::Sig(ExpSignature::new(vec![2], vec![1], vec![], vec![]))
        );
        assert_eq!(TensorElement::zero(&shape).deg(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < e.deg());
        assert_eq!(
            vac(&shape).deg(),
            Degree::Sig(ExpSignature::zero(1, 0))
        );
    }

    #[test]
    fn top_exponent_examples() {
        let shape = shape_omega(2, 3, 0);
        let v = TrivialModule::vector();
        let e = TensorElement::from_terms(
            &shape,
            [
                (ExpSignature::new(vec![2], vec![0], vec![], vec![]), v.clone()),
                (ExpSignature::new(vec![1], vec![5], vec![], vec![]), v.clone()),
            ],
        );
        assert_eq!(e.top_exponents(0), Ok((Some(2), None)));
        assert_eq!(vac(&shape).top_exponents(0), Ok((Some(0), None)));
        assert!(matches!(
            e.top_exponents(1),
            Err(TensorError::FactorOutOfRange { .. })
        ));
        assert_eq!(
            TensorElement::zero(&shape).top_exponents(0),
            Err(TensorError::ZeroElement)
        );

        let gamma_shape = TensorShape::new(
            vec![ModuleParams::gamma(Scalar::from(2), Scalar::one(), Scalar::zero()).unwrap()],
            Arc::new(TrivialModule),
        )
        .unwrap();
        let g = TensorElement::monomial(
            &gamma_shape,
            ExpSignature::new(vec![], vec![], vec![3], vec![0]),
            TrivialModule::vector(),
        );
        assert_eq!(g.top_exponents(0), Ok((None, Some(3))));
    }

    #[test]
    fn decompose_matches_action() {
        let shape = TensorShape::new(
            vec![
                ModuleParams::omega(Scalar::from(2), Scalar::from(3), Scalar::from(1)).unwrap(),
                ModuleParams::gamma(Scalar::from(5), Scalar::ratio(1, 2), Scalar::from(-1))
                    .unwrap(),
            ],
            Arc::new(TrivialModule),
        )
        .unwrap();
        let v = TrivialModule::vector();
        let g = TensorElement::from_terms(
            &shape,
            [
                (ExpSignature::new(vec![2], vec![1], vec![0], vec![1]), v.clone()),
                (
                    ExpSignature::new(vec![0], vec![0], vec![1], vec![0]),
                    v.scale(&Scalar::ratio(-1, 3)),
                ),
            ],
        );
        for family in Family::ALL {
            let blocks = g.act_decompose(family);
            for n in 0..5i64 {
                let mut expected = TensorElement::zero(&shape);
                for block in &blocks {
                    let lambda_n = block.lambda.pow(n).unwrap();
                    let mut n_pow = Scalar::one();
                    for coeff in &block.coeffs {
                        expected = expected.add(&coeff.scale(&(&lambda_n * &n_pow)));
                        n_pow = &n_pow * &Scalar::from(n);
                    }
                }
                assert_eq!(
                    g.act(Generator::new(family, n)),
                    expected,
                    "family {family:?}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn rendering() {
        let shape = shape_omega(2, 3, 0);
        let e = TensorElement::monomial(
            &shape,
            ExpSignature::new(vec![2], vec![1], vec![], vec![]),
            TrivialModule::vector(),
        );
        assert_eq!(e.to_string(), "s1^2*t1⊗v0");
    }

    #[test]
    fn coordinates_round_trip() {
        let shape = shape_omega(2, 3, 1);
        let v = TrivialModule::vector();
        let e = TensorElement::from_terms(
            &shape,
            [
                (ExpSignature::new(vec![2], vec![0], vec![], vec![]), v.scale(&Scalar::ratio(1, 3))),
                (ExpSignature::new(vec![0], vec![1], vec![], vec![]), v.scale(&Scalar::from(-2))),
            ],
        );
        let mut cm = Coordinatizer::new();
        let sparse = e.coordinatize(&mut cm);
        assert_eq!(TensorElement::from_sparse(&shape, &cm, &sparse), e);
    }
}
