//! Exact sparse linear algebra over [`Scalar`]: span bases, rank, membership,
//! generalized Vandermonde matrices with their closed-form determinant, and
//! extraction of vector components from exponential-polynomial samples.
//!
//! The matrices here are tiny (at most a dozen rows), so everything uses
//! plain exact elimination.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// A sparse vector over opaque coordinate ids. Canonical: no zero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec {
    entries: BTreeMap<u64, Scalar>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec::default()
    }

    pub fn unit(coord: u64) -> Self {
        SparseVec::from_entries([(coord, Scalar::one())])
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (u64, Scalar)>) -> Self {
        let mut v = SparseVec::zero();
        for (coord, value) in entries {
            v.add_entry(coord, value);
        }
        v
    }

    pub fn add_entry(&mut self, coord: u64, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(coord) {
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
        self.entries.is_empty()
    }

    pub fn support(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, coord: u64) -> Option<&Scalar> {
        self.entries.get(&coord)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Scalar)> {
        self.entries.iter().map(|(&c, v)| (c, v))
    }

    /// Smallest coordinate carrying a nonzero entry.
    pub fn leading_coord(&self) -> Option<u64> {
        self.entries.keys().next().copied()
    }

    pub fn add(&self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (coord, value) in rhs.iter() {
            out.add_entry(coord, value.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (coord, value) in rhs.iter() {
            out.add_entry(coord, -value);
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(&coord, value)| (coord, value * factor))
                .collect(),
        }
    }

    /// `self - factor * rhs`.
    fn sub_scaled(&self, factor: &Scalar, rhs: &SparseVec) -> SparseVec {
        let mut out = self.clone();
        for (coord, value) in rhs.iter() {
            out.add_entry(coord, -(value * factor));
        }
        out
    }
}

/// An incrementally built basis kept in reduced row-echelon form. Each row
/// is normalized to have coefficient 1 at its pivot coordinate, and every
/// other row is zero there.
#[derive(Debug, Clone, Default)]
pub struct SpanBasis {
    rows: Vec<SparseVec>,
    pivots: BTreeMap<u64, usize>,
}

impl SpanBasis {
    pub fn new() -> Self {
        SpanBasis::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Reduce `v` against the basis. The result has no entries at pivot
    /// coordinates; it is zero exactly when `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        // Rows are fully reduced against each other, so one pass suffices:
        // eliminating one pivot coordinate never reintroduces another.
        let hits: Vec<(u64, usize)> = out
            .iter()
            .filter_map(|(coord, _)| self.pivots.get(&coord).map(|&row| (coord, row)))
            .collect();
        for (coord, row) in hits {
            let factor = out.get(coord).cloned();
            if let Some(factor) = factor {
                out = out.sub_scaled(&factor, &self.rows[row]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns `true` when it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut reduced = self.reduce(v);
        let Some(pivot) = reduced.leading_coord() else {
            return false;
        };
        let lead = reduced.get(pivot).unwrap().clone();
        reduced = reduced.scale(&lead.inv().expect("leading entry is nonzero"));
        for row in &mut self.rows {
            if let Some(factor) = row.get(pivot).cloned() {
                *row = row.sub_scaled(&factor, &reduced);
            }
        }
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(reduced);
        true
    }
}

/// Rank of the span of a list of sparse vectors. Rows are eliminated in
/// order of decreasing support.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut order: Vec<&SparseVec> = vectors.iter().collect();
    order.sort_by_key(|v| std::cmp::Reverse(v.support()));
    let mut basis = SpanBasis::new();
    for v in order {
        basis.insert(v);
    }
    basis.rank()
}

/// Is `v` a linear combination of `vectors`?
pub fn in_span(v: &SparseVec, vectors: &[SparseVec]) -> bool {
    let mut basis = SpanBasis::new();
    for w in vectors {
        basis.insert(w);
    }
    basis.contains(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenVanError {
    #[error("lambda {index} is zero")]
    ZeroLambda { index: usize },
    #[error("lambdas {first} and {second} coincide")]
    RepeatedLambda { first: usize, second: usize },
    #[error("block size {index} is zero")]
    ZeroSize { index: usize },
    #[error("empty block list")]
    Empty,
}

/// Specification of a generalized Vandermonde matrix: `m` distinct nonzero
/// nodes `lambda_t` with block sizes `s_t >= 1` and a row shift `r >= 0`.
///
/// The sample functions are `f(n) = n^j lambda_t^n` for `0 <= j < s_t`,
/// columns grouped by block; row `p` (1-based) evaluates every sample
/// function at `n = p + r - 1`, with the `0^0 = 1` convention (needed at
/// `r = 0`, where the first row evaluates at `n = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenVanSpec {
    lambdas: Vec<Scalar>,
    sizes: Vec<u32>,
    shift: u32,
}

impl GenVanSpec {
    pub fn new(lambdas: Vec<Scalar>, sizes: Vec<u32>, shift: u32) -> Result<Self, GenVanError> {
        if lambdas.is_empty() {
            return Err(GenVanError::Empty);
        }
        assert_eq!(lambdas.len(), sizes.len(), "one size per lambda");
        for (index, lambda) in lambdas.iter().enumerate() {
            if lambda.is_zero() {
                return Err(GenVanError::ZeroLambda { index });
            }
        }
        for first in 0..lambdas.len() {
            for second in first + 1..lambdas.len() {
                if lambdas[first] == lambdas[second] {
                    return Err(GenVanError::RepeatedLambda { first, second });
                }
            }
        }
        for (index, &size) in sizes.iter().enumerate() {
            if size == 0 {
                return Err(GenVanError::ZeroSize { index });
            }
        }
        Ok(GenVanSpec {
            lambdas,
            sizes,
            shift,
        })
    }

    pub fn order(&self) -> usize {
        self.sizes.iter().map(|&s| s as usize).sum()
    }

    pub fn lambdas(&self) -> &[Scalar] {
        &self.lambdas
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// Column `q` (0-based) as the pair (lambda index, power of n).
    fn column_term(&self, q: usize) -> (usize, u32) {
        let mut offset = 0usize;
        for (t, &size) in self.sizes.iter().enumerate() {
            if q < offset + size as usize {
                return (t, (q - offset) as u32);
            }
            offset += size as usize;
        }
        unreachable!("column index out of range")
    }
}

/// `n^power` with `0^0 = 1`.
fn nat_power(n: u64, power: u32) -> Scalar {
    Scalar::from(n as i64).pow(power as i64).unwrap()
}

/// The dense generalized Vandermonde matrix of a spec.
pub fn genvan_matrix(spec: &GenVanSpec) -> Vec<Vec<Scalar>> {
    let s = spec.order();
    let mut matrix = Vec::with_capacity(s);
    for p in 0..s {
        let n = p as u64 + spec.shift as u64;
        let mut row = Vec::with_capacity(s);
        for q in 0..s {
            let (t, power) = spec.column_term(q);
            let lambda_n = spec.lambdas[t].pow(n as i64).unwrap();
            row.push(nat_power(n, power) * &lambda_n);
        }
        matrix.push(row);
    }
    matrix
}

fn superfactorial(m: u32) -> Scalar {
    // m!! in the iterated sense: m! * (m-1)! * ... * 1!, empty product for 0.
    let mut acc = Scalar::one();
    let mut factorial = Scalar::one();
    for k in 1..=m as i64 {
        factorial = &factorial * &Scalar::from(k);
        acc = &acc * &factorial;
    }
    acc
}

/// Closed-form determinant of [`genvan_matrix`]:
///
/// ```text
/// det = prod_j (s_j - 1)!! lambda_j^{s_j (s_j + 2r - 1) / 2}
///       * prod_{i<j} (lambda_j - lambda_i)^{s_i s_j}
/// ```
///
/// where `m!!` is the product of the first `m` factorials. The exponent
/// `s_j (s_j + 2r - 1) / 2` is always an integer.
pub fn genvan_det(spec: &GenVanSpec) -> Scalar {
    let r = spec.shift as i64;
    let mut det = Scalar::one();
    for (j, lambda) in spec.lambdas.iter().enumerate() {
        let s_j = spec.sizes[j] as i64;
        det = &det * &superfactorial(spec.sizes[j] - 1);
        // s_j (s_j + 2r - 1) / 2, written to make integrality manifest
        let exponent = s_j * (s_j - 1) / 2 + s_j * r;
        det = &det * &lambda.pow(exponent).unwrap();
    }
    for i in 0..spec.lambdas.len() {
        for j in i + 1..spec.lambdas.len() {
            let diff = &spec.lambdas[j] - &spec.lambdas[i];
            let e = (spec.sizes[i] as i64) * (spec.sizes[j] as i64);
            det = &det * &diff.pow(e).unwrap();
        }
    }
    det
}

/// Determinant by Laplace expansion over column subsets. Independent of
/// [`genvan_det`]; serves as its oracle.
pub fn det_cofactor(matrix: &[Vec<Scalar>]) -> Scalar {
    let s = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == s), "square matrix");
    if s == 0 {
        return Scalar::one();
    }
    // minor[mask] = determinant of the submatrix using the first popcount(mask)
    // rows and the column subset `mask`.
    let mut minors: Vec<Option<Scalar>> = vec![None; 1 << s];
    minors[0] = Some(Scalar::one());
    for mask in 1usize..(1 << s) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Scalar::zero();
        // expanding along row `row`: the k-th used column signs (-1)^{row+k}
        let mut sign_positive = row.is_multiple_of(2);
        for col in 0..s {
            if mask & (1 << col) == 0 {
                continue;
            }
            let sub = minors[mask & !(1 << col)]
                .as_ref()
                .expect("smaller minors are filled first");
            let term = &matrix[row][col] * sub;
            if sign_positive {
                acc = &acc + &term;
            } else {
                acc = &acc - &term;
            }
            sign_positive = !sign_positive;
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << s) - 1].take().unwrap()
}

/// A term `lambda^n n^power` of an exponential-polynomial decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTerm {
    pub lambda: Scalar,
    pub power: u32,
}

impl ExtractionTerm {
    pub fn new(lambda: Scalar, power: u32) -> Self {
        ExtractionTerm { lambda, power }
    }
}

impl fmt::Display for ExtractionTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})^n * n^{}", self.lambda, self.power)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    /// Two extraction terms coincide: the coefficient matrix has equal
    /// columns, so the component vectors cannot be separated.
    #[error(
        "singular extraction: terms {first} and {second} are both {term}"
    )]
    Singular {
        first: usize,
        second: usize,
        term: ExtractionTerm,
    },
    #[error("extraction term {index} has lambda = 0")]
    ZeroLambda { index: usize },
    #[error("need exactly {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("sample points must be consecutive integers")]
    NonConsecutiveSamples,
    /// The solver met a zero pivot. Cannot happen for a valid term list
    /// sampled at consecutive points with shift >= 0.
    #[error("extraction system is singular")]
    SingularSystem,
}

/// Recover the component vectors `w_k` from samples of
/// `F(n) = sum_k lambda_k^n n^{j_k} w_k`.
///
/// `samples` must hold the values of `F` at exactly `terms.len()`
/// consecutive integers, in ascending order. For pairwise-distinct terms
/// with each lambda's powers contiguous from zero, the coefficient matrix is
/// a generalized Vandermonde matrix and is invertible whenever the starting
/// point is nonnegative; for other windows invertibility is certified by the
/// elimination itself.
pub fn vandermonde_extract(
    samples: &[(i64, SparseVec)],
    terms: &[ExtractionTerm],
) -> Result<Vec<SparseVec>, ExtractionError> {
    for (index, term) in terms.iter().enumerate() {
        if term.lambda.is_zero() {
            return Err(ExtractionError::ZeroLambda { index });
        }
    }
    for first in 0..terms.len() {
        for second in first + 1..terms.len() {
            if terms[first] == terms[second] {
                return Err(ExtractionError::Singular {
                    first,
                    second,
                    term: terms[first].clone(),
                });
            }
        }
    }
    if samples.len() != terms.len() {
        return Err(ExtractionError::SampleCount {
            expected: terms.len(),
            got: samples.len(),
        });
    }
    if samples.windows(2).any(|w| w[1].0 != w[0].0 + 1) {
        return Err(ExtractionError::NonConsecutiveSamples);
    }

    let size = terms.len();
    let mut matrix: Vec<Vec<Scalar>> = Vec::with_capacity(size);
    for (n, _) in samples {
        let row: Vec<Scalar> = terms
            .iter()
            .map(|term| {
                let lambda_n = term.lambda.pow(*n).expect("lambda nonzero");
                Scalar::from(*n).pow(term.power as i64).unwrap() * &lambda_n
            })
            .collect();
        matrix.push(row);
    }
    let mut rhs: Vec<SparseVec> = samples.iter().map(|(_, v)| v.clone()).collect();

    // Exact Gauss-Jordan on the scalar matrix, mirroring row operations on
    // the vector right-hand side.
    for col in 0..size {
        let pivot_row = (col..size)
            .find(|&row| !matrix[row][col].is_zero())
            .ok_or(ExtractionError::SingularSystem)?;
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let inv = matrix[col][col].inv().expect("pivot nonzero");
        for entry in &mut matrix[col][col..] {
            *entry = &*entry * &inv;
        }
        rhs[col] = rhs[col].scale(&inv);
        let pivot_scalars = matrix[col].clone();
        let pivot_vector = rhs[col].clone();
        for (row, (matrix_row, rhs_row)) in matrix.iter_mut().zip(rhs.iter_mut()).enumerate() {
            if row == col || matrix_row[col].is_zero() {
                continue;
            }
            let factor = matrix_row[col].clone();
            for (entry, pivot) in matrix_row[col..].iter_mut().zip(&pivot_scalars[col..]) {
                *entry = &*entry - &(&factor * pivot);
            }
            *rhs_row = rhs_row.sub_scaled(&factor, &pivot_vector);
        }
    }
    Ok(rhs)
}
