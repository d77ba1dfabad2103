//! The planar Galilean conformal algebra: basis, grading and bracket.
//!
//! The algebra has basis `{L_n, H_n, I_n, J_n | n in Z}` and the non-trivial
//! brackets
//!
//! ```text
//! [L_m, L_n] = (n - m) L_{m+n}     [L_m, H_n] = n H_{m+n}
//! [L_m, I_n] = (n - m) I_{m+n}     [L_m, J_n] = (n - m) J_{m+n}
//! [H_m, I_n] = I_{m+n}             [H_m, J_n] = -J_{m+n}
//! ```
//!
//! with every pair not listed (and not forced by antisymmetry) bracketing to
//! zero. Assigning degree `n` to each of `L_n, H_n, I_n, J_n` makes the
//! algebra Z-graded: `[degree m, degree n]` lands in degree `m + n`.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GcaError {
    #[error("the zero element has no grade")]
    ZeroElement,
}

/// The four basis families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    L,
    H,
    I,
    J,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::L, Family::H, Family::I, Family::J];

    pub fn symbol(self) -> char {
        match self {
            Family::L => 'L',
            Family::H => 'H',
            Family::I => 'I',
            Family::J => 'J',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// A basis symbol `X_n`, ordered by family then degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub family: Family,
    pub degree: i64,
}

impl Generator {
    pub fn new(family: Family, degree: i64) -> Self {
        Generator { family, degree }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family, self.degree)
    }
}

impl std::str::FromStr for Generator {
    type Err = String;

    /// Parses the rendered form: `L[3]`, `H[-2]`, `I[0]`, `J[15]`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let family = match s.chars().next() {
            Some('L') => Family::L,
            Some('H') => Family::H,
            Some('I') => Family::I,
            Some('J') => Family::J,
            _ => return Err(format!("expected L, H, I or J at the start of '{s}'")),
        };
        let rest = &s[1..];
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| format!("expected a [degree] suffix in '{s}'"))?;
        let degree: i64 = inner
            .parse()
            .map_err(|_| format!("invalid degree '{inner}'"))?;
        Ok(Generator::new(family, degree))
    }
}

/// Convenience constructors for the four families.
pub fn l(n: i64) -> Generator {
    Generator::new(Family::L, n)
}
pub fn h(n: i64) -> Generator {
    Generator::new(Family::H, n)
}
pub fn i_gen(n: i64) -> Generator {
    Generator::new(Family::I, n)
}
pub fn j(n: i64) -> Generator {
    Generator::new(Family::J, n)
}

/// Grade of a non-zero element: a single integer, or mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    Homogeneous(i64),
    Mixed,
}

/// A finite linear combination of basis symbols, kept canonical:
/// no duplicate generators, no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    terms: BTreeMap<Generator, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        LieElement::default()
    }

    pub fn generator(gen: Generator) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(gen, Scalar::one());
        LieElement { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Generator, Scalar)>) -> Self {
        let mut e = LieElement::zero();
        for (gen, coeff) in terms {
            e.add_term(gen, coeff);
        }
        e
    }

    fn add_term(&mut self, gen: Generator, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(gen) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (gen, coeff) in &rhs.terms {
            out.add_term(*gen, coeff.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (gen, coeff) in &rhs.terms {
            out.add_term(*gen, -coeff);
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> LieElement {
        if factor.is_zero() {
            return LieElement::zero();
        }
        LieElement {
            terms: self
                .terms
                .iter()
                .map(|(gen, coeff)| (*gen, coeff * factor))
                .collect(),
        }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (gen, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if coeff.is_one() {
                write!(f, "{gen}")?;
            } else {
                write!(f, "({coeff})*{gen}")?;
            }
        }
        Ok(())
    }
}

fn degree_sum(m: i64, n: i64) -> i64 {
    m.checked_add(n).expect("generator degree overflow")
}

/// Bracket of two basis symbols. `a = X_m`, `b = Y_n`.
pub fn basis_bracket(a: Generator, b: Generator) -> LieElement {
    use Family::*;
    let (m, n) = (a.degree, b.degree);
    let total = degree_sum(m, n);
    let term = |family: Family, coeff: i64| {
        LieElement::from_terms([(Generator::new(family, total), Scalar::from(coeff))])
    };
    match (a.family, b.family) {
        (L, L) => term(L, n - m),
        (L, H) => term(H, n),
        (H, L) => term(H, -m),
        (L, I) | (I, L) => term(I, n - m),
        (L, J) | (J, L) => term(J, n - m),
        (H, I) => term(I, 1),
        (I, H) => term(I, -1),
        (H, J) => term(J, -1),
        (J, H) => term(J, 1),
        _ => LieElement::zero(),
    }
}

/// Bilinear extension of [`basis_bracket`].
pub fn bracket(a: &LieElement, b: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (ga, ca) in a.terms() {
        for (gb, cb) in b.terms() {
            let factor = ca * cb;
            out = out.add(&basis_bracket(*ga, *gb).scale(&factor));
        }
    }
    out
}

/// Grade of a non-zero element: `Homogeneous(n)` when every term lies in
/// degree `n`, `Mixed` otherwise.
pub fn grade_of(e: &LieElement) -> Result<Grading, GcaError> {
    let mut degrees = e.terms().map(|(gen, _)| gen.degree);
    let first = degrees.next().ok_or(GcaError::ZeroElement)?;
    if degrees.all(|d| d == first) {
        Ok(Grading::Homogeneous(first))
    } else {
        Ok(Grading::Mixed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_l1_l2() {
        // [L_1, L_2] = (2 - 1) L_3
        assert_eq!(
            bracket(&LieElement::generator(l(1)), &LieElement::generator(l(2))),
            LieElement::generator(l(3))
        );
    }

    #[test]
    fn bracket_self_vanishes() {
        for m in -3..=3 {
            assert!(bracket(&LieElement::generator(l(m)), &LieElement::generator(l(m))).is_zero());
        }
    }

    #[test]
    fn bracket_h1_j2() {
        // [H_1, J_2] = -J_3
        let expected = LieElement::from_terms([(j(3), Scalar::from(-1))]);
        assert_eq!(
            bracket(&LieElement::generator(h(1)), &LieElement::generator(j(2))),
            expected
        );
    }

    #[test]
    fn unlisted_pairs_vanish() {
        assert!(bracket(
            &LieElement::generator(i_gen(2)),
            &LieElement::generator(j(5))
        )
        .is_zero());
        assert!(bracket(&LieElement::generator(h(1)), &LieElement::generator(h(4))).is_zero());
        assert!(bracket(
            &LieElement::generator(i_gen(0)),
            &LieElement::generator(i_gen(1))
        )
        .is_zero());
        assert!(bracket(&LieElement::generator(j(-1)), &LieElement::generator(j(2))).is_zero());
    }

    #[test]
    fn grade_examples() {
        let e = LieElement::from_terms([
            (l(3), Scalar::one()),
            (i_gen(3), Scalar::from(2)),
        ]);
        assert_eq!(grade_of(&e), Ok(Grading::Homogeneous(3)));

        let mixed = LieElement::from_terms([(l(1), Scalar::one()), (h(2), Scalar::one())]);
        assert_eq!(grade_of(&mixed), Ok(Grading::Mixed));

        assert_eq!(
            grade_of(&LieElement::generator(h(-4))),
            Ok(Grading::Homogeneous(-4))
        );
        assert_eq!(grade_of(&LieElement::zero()), Err(GcaError::ZeroElement));
    }

    #[test]
    fn grading_of_brackets() {
        // [degree m, degree n] lands in degree m + n (or vanishes).
        for fa in Family::ALL {
            for fb in Family::ALL {
                for m in -3..=3 {
                    for n in -3..=3 {
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

    #[test]
    fn rendering() {
        assert_eq!(l(3).to_string(), "L[3]");
        assert_eq!(h(-2).to_string(), "H[-2]");
        let e = LieElement::from_terms([(l(1), Scalar::from(2)), (j(0), Scalar::one())]);
        assert_eq!(e.to_string(), "(2)*L[1] + J[0]");
    }

    #[test]
    fn generator_text_round_trips() {
        for gen in [l(3), h(-2), i_gen(0), j(15)] {
            assert_eq!(gen.to_string().parse::<Generator>(), Ok(gen));
        }
        assert!("K[1]".parse::<Generator>().is_err());
        assert!("L(1)".parse::<Generator>().is_err());
        assert!("L[x]".parse::<Generator>().is_err());
    }
}
