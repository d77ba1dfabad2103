//! Rank-one modules over the polynomial rings `C[s,t]` and `C[x,y]`.
//!
//! For parameters `lambda, sigma != 0` and arbitrary `eta` there are two
//! families of module structures on a two-variable polynomial ring. Writing
//! `(u, w)` for the pair of variables:
//!
//! ```text
//! Omega:  L_n f = lambda^n (u - n w + n eta) f(u - n, w)
//!         H_n f = lambda^n w f(u - n, w)
//!         I_n f = lambda^n sigma f(u - n, w - 1)
//!         J_n f = 0
//!
//! Gamma:  L_n g = lambda^n (u + n w + n eta) g(u - n, w)
//!         H_n g = lambda^n w g(u - n, w)
//!         J_n g = lambda^n sigma g(u - n, w + 1)
//!         I_n g = 0
//! ```
//!
//! The two families mirror each other: the inert generator swaps (J on
//! Omega, I on Gamma), the second-slot shift flips (`w - 1` versus `w + 1`),
//! and with it the sign of the `n w` term in the L-action. The signs are
//! not a convention: the module axiom `[x, y] f = x (y f) - y (x f)`
//! against the bracket `[L_m, I_n] = (n - m) I_{m+n}` forces the `n w`
//! coefficient to be the negated discrete derivative of the shift, `-1` on
//! the Omega side and `+1` on the Gamma side. The test suite checks the
//! axiom exhaustively for every generator pair.

use crate::gca::{Family, Generator};
use crate::scalar::Scalar;
use num::bigint::BigInt;
use num::{One, Zero};
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("sigma must be nonzero")]
    ZeroSigma,
}

/// Which of the two module families a parameter triple belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ModuleKind {
    Omega,
    Gamma,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleKind::Omega => write!(f, "omega"),
            ModuleKind::Gamma => write!(f, "gamma"),
        }
    }
}

/// A validated parameter triple `(lambda, sigma, eta)` with its family kind.
/// `lambda` and `sigma` are nonzero by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleParams {
    kind: ModuleKind,
    lambda: Scalar,
    sigma: Scalar,
    eta: Scalar,
}

impl ModuleParams {
    pub fn new(
        kind: ModuleKind,
        lambda: Scalar,
        sigma: Scalar,
        eta: Scalar,
    ) -> Result<Self, ParamError> {
        if lambda.is_zero() {
            return Err(ParamError::ZeroLambda);
        }
        if sigma.is_zero() {
            return Err(ParamError::ZeroSigma);
        }
        Ok(ModuleParams {
            kind,
            lambda,
            sigma,
            eta,
        })
    }

    pub fn omega(lambda: Scalar, sigma: Scalar, eta: Scalar) -> Result<Self, ParamError> {
        ModuleParams::new(ModuleKind::Omega, lambda, sigma, eta)
    }

    pub fn gamma(lambda: Scalar, sigma: Scalar, eta: Scalar) -> Result<Self, ParamError> {
        ModuleParams::new(ModuleKind::Gamma, lambda, sigma, eta)
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn sigma(&self) -> &Scalar {
        &self.sigma
    }

    pub fn eta(&self) -> &Scalar {
        &self.eta
    }

    pub fn triple(&self) -> (Scalar, Scalar, Scalar) {
        (self.lambda.clone(), self.sigma.clone(), self.eta.clone())
    }
}

impl fmt::Display for ModuleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}, {}, {})", self.kind, self.lambda, self.sigma, self.eta)
    }
}

thread_local! {
    // Rows of Pascal's triangle, grown on demand.
    static PASCAL: RefCell<Vec<Vec<BigInt>>> = const { RefCell::new(Vec::new()) };
}

/// Exact binomial coefficient `C(n, k)`, cached per row.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    PASCAL.with(|cache| {
        let mut rows = cache.borrow_mut();
        while rows.len() <= n as usize {
            let m = rows.len();
            let mut row = vec![BigInt::one(); m + 1];
            for i in 1..m {
                row[i] = &rows[m - 1][i - 1] + &rows[m - 1][i];
            }
            rows.push(row);
        }
        rows[n as usize][k as usize].clone()
    })
}

/// A sparse polynomial in two variables over [`Scalar`], keyed by exponent
/// pair. Canonical: no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::monomial(0, 0, Scalar::one())
    }

    pub fn monomial(a: u32, b: u32, coeff: Scalar) -> Self {
        let mut p = Poly2::zero();
        p.add_term(a, b, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Scalar)>) -> Self {
        let mut p = Poly2::zero();
        for (a, b, coeff) in terms {
            p.add_term(a, b, coeff);
        }
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Vacant(entry) => {
                entry.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut entry) => {
                *entry.get_mut() += &coeff;
                if entry.get().is_zero() {
                    entry.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, b)| a + b).max()
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (a, b, coeff) in rhs.terms() {
            out.add_term(a, b, coeff.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (a, b, coeff) in rhs.terms() {
            out.add_term(a, b, -coeff);
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> Poly2 {
        if factor.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&key, coeff)| (key, coeff * factor))
                .collect(),
        }
    }

    /// Multiply by the first variable.
    pub fn mul_var1(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), coeff)| ((a + 1, b), coeff.clone()))
                .collect(),
        }
    }

    /// Multiply by the second variable.
    pub fn mul_var2(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), coeff)| ((a, b + 1), coeff.clone()))
                .collect(),
        }
    }

    /// Substitute `u -> u + d1`, `w -> w + d2`, by exact binomial expansion.
    pub fn compose_shift(&self, d1: &Scalar, d2: &Scalar) -> Poly2 {
        let mut out = Poly2::zero();
        for (a, b, coeff) in self.terms() {
            let u_parts = expand_shifted_power(a, d1);
            let w_parts = expand_shifted_power(b, d2);
            for (ea, ca) in &u_parts {
                for (eb, cb) in &w_parts {
                    out.add_term(*ea, *eb, coeff * ca * cb);
                }
            }
        }
        out
    }

    /// Render with explicit variable names, highest total degree first
    /// (graded lexicographic order).
    pub fn render(&self, v1: &str, v2: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().copied().collect();
        keys.sort_by(|&(a1, b1), &(a2, b2)| {
            (a2 + b2, a2, b2).cmp(&(a1 + b1, a1, b1))
        });
        let mut out = String::new();
        for (idx, &(a, b)) in keys.iter().enumerate() {
            let coeff = &self.terms[&(a, b)];
            if idx > 0 {
                out.push_str(" + ");
            }
            let mut vars = String::new();
            for (name, e) in [(v1, a), (v2, b)] {
                if e == 1 {
                    vars.push_str(name);
                } else if e > 1 {
                    vars.push_str(&format!("{name}^{e}"));
                }
            }
            if vars.is_empty() {
                out.push_str(&format!("({coeff})"));
            } else if coeff.is_one() {
                out.push_str(&vars);
            } else {
                out.push_str(&format!("({coeff})*{vars}"));
            }
        }
        out
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render("u", "w"))
    }
}

/// `(v + d)^e` as a list of `(exponent of v, coefficient)` pairs.
fn expand_shifted_power(e: u32, d: &Scalar) -> Vec<(u32, Scalar)> {
    if d.is_zero() {
        return vec![(e, Scalar::one())];
    }
    let mut parts = Vec::with_capacity(e as usize + 1);
    let mut d_pow = Scalar::one();
    for k in 0..=e {
        // coefficient of v^{e-k}: C(e, k) d^k
        let c = Scalar::new(
            num::rational::BigRational::from_integer(binomial(e, k)),
            num::rational::BigRational::zero(),
        ) * &d_pow;
        parts.push((e - k, c));
        if k < e {
            d_pow = &d_pow * d;
        }
    }
    parts
}

/// Numeric action of a basis generator on a polynomial of the factor owning
/// `params`. Returns the resulting polynomial in the same two variables.
pub fn act(params: &ModuleParams, gen: Generator, f: &Poly2) -> Poly2 {
    let n = gen.degree;
    let lambda_n = params
        .lambda
        .pow(n)
        .expect("lambda is nonzero by construction");
    let n_scalar = Scalar::from(n);
    match (params.kind, gen.family) {
        (kind, Family::L) => {
            // lambda^n (u -+ n w + n eta) f(u - n, w); the w-term is negative
            // for Omega and positive for Gamma
            let w_coeff = match kind {
                ModuleKind::Omega => -&n_scalar,
                ModuleKind::Gamma => n_scalar.clone(),
            };
            let shifted = f.compose_shift(&-&n_scalar, &Scalar::zero());
            let affine = shifted
                .mul_var1()
                .add(&shifted.mul_var2().scale(&w_coeff))
                .add(&shifted.scale(&(&n_scalar * params.eta())));
            affine.scale(&lambda_n)
        }
        (_, Family::H) => {
            // lambda^n w f(u - n, w)
            f.compose_shift(&-&n_scalar, &Scalar::zero())
                .mul_var2()
                .scale(&lambda_n)
        }
        (ModuleKind::Omega, Family::I) => {
            // lambda^n sigma f(u - n, w - 1)
            f.compose_shift(&-&n_scalar, &Scalar::from(-1))
                .scale(&(&lambda_n * params.sigma()))
        }
        (ModuleKind::Gamma, Family::J) => {
            // lambda^n sigma f(u - n, w + 1)
            f.compose_shift(&-&n_scalar, &Scalar::from(1))
                .scale(&(&lambda_n * params.sigma()))
        }
        (ModuleKind::Omega, Family::J) | (ModuleKind::Gamma, Family::I) => Poly2::zero(),
    }
}

/// Symbolic action of `X_n` with the `lambda^n` factor stripped and `n`
/// treated as a formal variable: entry `j` of the result is the polynomial
/// coefficient of `n^j`, so that
///
/// ```text
/// X_n f = lambda^n * sum_j n^j coeffs[j]
/// ```
///
/// holds for every integer `n`. An inert family (J on Omega, I on Gamma)
/// yields an empty vector.
pub fn act_in_n(params: &ModuleParams, family: Family, f: &Poly2) -> Vec<Poly2> {
    let shift2 = match (params.kind, family) {
        (ModuleKind::Omega, Family::I) => Scalar::from(-1),
        (ModuleKind::Gamma, Family::J) => Scalar::from(1),
        (ModuleKind::Omega, Family::J) | (ModuleKind::Gamma, Family::I) => return Vec::new(),
        _ => Scalar::zero(),
    };
    // f(u - n, w + shift2) as a polynomial in n: degree <= max u-exponent.
    let pre = f.compose_shift(&Scalar::zero(), &shift2);
    let max_a = pre.terms().map(|(a, _, _)| a).max().unwrap_or(0) as usize;
    let mut coeffs = vec![Poly2::zero(); max_a + 1];
    for (a, b, coeff) in pre.terms() {
        // (u - n)^a = sum_k C(a,k) (-1)^k u^{a-k} n^k
        for k in 0..=a {
            let mut c = Scalar::new(
                num::rational::BigRational::from_integer(binomial(a, k)),
                num::rational::BigRational::zero(),
            ) * coeff;
            if k % 2 == 1 {
                c = -c;
            }
            coeffs[k as usize].add_term(a - k, b, c);
        }
    }
    let finish = |mut coeffs: Vec<Poly2>| {
        while coeffs.last().is_some_and(Poly2::is_zero) {
            coeffs.pop();
        }
        coeffs
    };
    match family {
        Family::L => {
            // (u -+ n w + n eta) * sum_j n^j A_j
            let mut out = vec![Poly2::zero(); coeffs.len() + 1];
            for (jj, a_j) in coeffs.iter().enumerate() {
                out[jj] = out[jj].add(&a_j.mul_var1());
                let w_part = match params.kind {
                    ModuleKind::Omega => Poly2::zero().sub(&a_j.mul_var2()),
                    ModuleKind::Gamma => a_j.mul_var2(),
                };
                out[jj + 1] = out[jj + 1].add(&w_part).add(&a_j.scale(params.eta()));
            }
            finish(out)
        }
        Family::H => finish(coeffs.iter().map(Poly2::mul_var2).collect()),
        Family::I | Family::J => {
            finish(coeffs.iter().map(|c| c.scale(params.sigma())).collect())
        }
    }
}
