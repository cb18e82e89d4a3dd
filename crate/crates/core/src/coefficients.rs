//! Coefficient semirings for structure constants.
//!
//! A [`Coefficient`] is either a nonnegative integer or a Laurent polynomial
//! in `q` with nonnegative integer coefficients. Both live in the same sparse
//! representation (exponent of `q` to a nonzero [`BigUint`]); integer mode only
//! ever uses exponent `0`.
//!
//! Ring elements need signed coefficients (differences of positive elements),
//! which is what [`Laurent`] provides.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use thiserror::Error;

/// Which coefficient semiring a ring uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffMode {
    Int,
    Laurent,
}

impl CoeffMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoeffMode::Int => "int",
            CoeffMode::Laurent => "laurent",
        }
    }
}

impl fmt::Display for CoeffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CoefficientError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: &'static str },
    #[error("negative coefficient at byte {offset}")]
    Negative { offset: usize },
    #[error("'q' is not allowed in int mode (byte {offset})")]
    QInIntMode { offset: usize },
    #[error("coefficient mode mismatch: {left} vs {right}")]
    ModeMismatch { left: CoeffMode, right: CoeffMode },
}

/// Nonnegative structure-constant value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coefficient {
    mode: CoeffMode,
    terms: BTreeMap<i64, BigUint>,
}

impl Coefficient {
    pub fn zero(mode: CoeffMode) -> Self {
        Coefficient { mode, terms: BTreeMap::new() }
    }

    pub fn one(mode: CoeffMode) -> Self {
        Self::from_int(mode, 1u32)
    }

    pub fn from_int(mode: CoeffMode, value: impl Into<BigUint>) -> Self {
        let value = value.into();
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(0, value);
        }
        Coefficient { mode, terms }
    }

    /// `value * q^exponent`. Errors in integer mode when `exponent != 0`.
    pub fn monomial(
        mode: CoeffMode,
        value: impl Into<BigUint>,
        exponent: i64,
    ) -> Result<Self, CoefficientError> {
        if mode == CoeffMode::Int && exponent != 0 {
            return Err(CoefficientError::QInIntMode { offset: 0 });
        }
        let value = value.into();
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(exponent, value);
        }
        Ok(Coefficient { mode, terms })
    }

    /// Builds a coefficient from `(exponent, value)` pairs, collecting like terms.
    pub fn from_terms<I>(mode: CoeffMode, terms: I) -> Result<Self, CoefficientError>
    where
        I: IntoIterator<Item = (i64, BigUint)>,
    {
        let mut out = Coefficient::zero(mode);
        for (exp, value) in terms {
            if mode == CoeffMode::Int && exp != 0 {
                return Err(CoefficientError::QInIntMode { offset: 0 });
            }
            out.add_term(exp, value);
        }
        Ok(out)
    }

    pub fn mode(&self) -> CoeffMode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigUint> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, exp: i64, value: BigUint) {
        if value.is_zero() {
            return;
        }
        *self.terms.entry(exp).or_insert_with(BigUint::zero) += value;
    }

    fn check_mode(&self, other: &Coefficient) -> Result<(), CoefficientError> {
        if self.mode != other.mode {
            return Err(CoefficientError::ModeMismatch { left: self.mode, right: other.mode });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Coefficient) -> Result<Coefficient, CoefficientError> {
        self.check_mode(other)?;
        let mut out = self.clone();
        out.accumulate(other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Coefficient) -> Result<Coefficient, CoefficientError> {
        self.check_mode(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self += other`; callers guarantee equal modes.
    pub(crate) fn accumulate(&mut self, other: &Coefficient) {
        debug_assert_eq!(self.mode, other.mode);
        for (exp, value) in &other.terms {
            *self.terms.entry(*exp).or_insert_with(BigUint::zero) += value;
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Coefficient) -> Coefficient {
        debug_assert_eq!(self.mode, other.mode);
        let mut out = Coefficient::zero(self.mode);
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                out.add_term(ea + eb, va * vb);
            }
        }
        out
    }

    pub fn to_laurent(&self) -> Laurent {
        Laurent {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, BigInt::from_biguint(Sign::Plus, v.clone())))
                .collect(),
        }
    }

    /// Parses `term ('+' term)*` with `term := [uint]['q'['^' int]]`.
    pub fn parse(text: &str, mode: CoeffMode) -> Result<Coefficient, CoefficientError> {
        Parser { bytes: text.as_bytes(), pos: 0, mode }.parse()
    }

    /// Canonical text form, parseable by [`Coefficient::parse`].
    pub fn to_canonical_string(&self) -> String {
        use core::fmt::Write;
        let mut s = String::new();
        write!(s, "{self}").expect("writing to a String");
        s
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exp, value)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *exp == 0 {
                write!(f, "{value}")?;
                continue;
            }
            if !value.is_one() {
                write!(f, "{value}")?;
            }
            if *exp == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{exp}")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    mode: CoeffMode,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<&[u8]> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.bytes[start..self.pos])
    }

    fn parse(mut self) -> Result<Coefficient, CoefficientError> {
        let mut out = Coefficient::zero(self.mode);
        loop {
            let (exp, value) = self.term()?;
            out.add_term(exp, value);
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => self.pos += 1,
                Some(_) => {
                    return Err(CoefficientError::Syntax {
                        offset: self.pos,
                        message: "expected '+' or end of input",
                    })
                }
            }
        }
    }

    fn term(&mut self) -> Result<(i64, BigUint), CoefficientError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            return Err(CoefficientError::Negative { offset: start });
        }
        let value = match self.digits() {
            Some(d) => BigUint::parse_bytes(d, 10).expect("ascii digits"),
            None => BigUint::one(),
        };
        let had_digits = self.pos > start;
        self.skip_ws();
        if self.peek() != Some(b'q') {
            if !had_digits {
                return Err(CoefficientError::Syntax { offset: self.pos, message: "empty term" });
            }
            return Ok((0, value));
        }
        if self.mode == CoeffMode::Int {
            return Err(CoefficientError::QInIntMode { offset: self.pos });
        }
        self.pos += 1;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok((1, value));
        }
        self.pos += 1;
        self.skip_ws();
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        let at = self.pos;
        let digits = self
            .digits()
            .ok_or(CoefficientError::Syntax { offset: at, message: "expected exponent" })?;
        // exponent digits are ascii
        let text = core::str::from_utf8(digits).expect("ascii digits");
        let magnitude: i64 = text
            .parse()
            .map_err(|_| CoefficientError::Syntax { offset: at, message: "exponent out of range" })?;
        Ok((if negative { -magnitude } else { magnitude }, value))
    }
}

/// Signed Laurent polynomial in `q` (integer mode uses exponent `0` only).
///
/// Used for ring elements, which may have negative coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: BTreeMap<i64, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn constant(value: impl Into<BigInt>) -> Self {
        let mut out = Laurent::zero();
        out.add_term(0, value.into());
        out
    }

    pub fn monomial(value: impl Into<BigInt>, exponent: i64) -> Self {
        let mut out = Laurent::zero();
        out.add_term(exponent, value.into());
        out
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every coefficient is a positive integer (an element of `Z_+[q, q^-1]`).
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|v| v.sign() == Sign::Plus)
    }

    fn add_term(&mut self, exp: i64, value: BigInt) {
        if value.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += value;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(*e, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(e, v)| (*e, -v)).collect() }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ea, va) in &self.terms {
            for (eb, vb) in &other.terms {
                out.add_term(ea + eb, va * vb);
            }
        }
        out
    }

    /// Converts back to a positive [`Coefficient`] when all terms are positive.
    pub fn to_coefficient(&self, mode: CoeffMode) -> Option<Coefficient> {
        if !self.is_nonnegative() {
            return None;
        }
        if mode == CoeffMode::Int && self.terms.keys().any(|e| *e != 0) {
            return None;
        }
        let terms = self.terms.iter().map(|(e, v)| (*e, v.magnitude().clone()));
        Coefficient::from_terms(mode, terms).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use alloc::vec::Vec;

    fn laurent(pairs: &[(i64, u32)]) -> Coefficient {
        Coefficient::from_terms(
            CoeffMode::Laurent,
            pairs.iter().map(|(e, v)| (*e, BigUint::from(*v))),
        )
        .unwrap()
    }

    fn int(v: u32) -> Coefficient {
        Coefficient::from_int(CoeffMode::Int, v)
    }

    fn term_list(c: &Coefficient) -> Vec<(i64, u64)> {
        c.terms().iter().map(|(e, v)| (*e, u64::try_from(v).unwrap())).collect()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(term_list(&Coefficient::parse("3", CoeffMode::Int).unwrap()), vec![(0, 3)]);
        let c = Coefficient::parse("q^-1 + 2q^3 + 1", CoeffMode::Laurent).unwrap();
        assert_eq!(term_list(&c), vec![(-1, 1), (0, 1), (3, 2)]);
        let c = Coefficient::parse("2q + q", CoeffMode::Laurent).unwrap();
        assert_eq!(term_list(&c), vec![(1, 3)]);
        assert!(Coefficient::parse("0", CoeffMode::Int).unwrap().is_zero());
        let c = Coefficient::parse(" 2 q ^ - 2+q", CoeffMode::Laurent).unwrap();
        assert_eq!(term_list(&c), vec![(-2, 2), (1, 1)]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Coefficient::parse("-3", CoeffMode::Int),
            Err(CoefficientError::Negative { offset: 0 })
        );
        assert_eq!(
            Coefficient::parse("1 + q", CoeffMode::Int),
            Err(CoefficientError::QInIntMode { offset: 4 })
        );
        assert!(matches!(
            Coefficient::parse("1 +", CoeffMode::Int),
            Err(CoefficientError::Syntax { offset: 3, .. })
        ));
        assert!(matches!(
            Coefficient::parse("2x", CoeffMode::Laurent),
            Err(CoefficientError::Syntax { offset: 1, .. })
        ));
        assert!(matches!(
            Coefficient::parse("q^", CoeffMode::Laurent),
            Err(CoefficientError::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            Coefficient::parse("1 + -q", CoeffMode::Laurent),
            Err(CoefficientError::Negative { offset: 4 })
        ));
    }

    #[test]
    fn canonical_format() {
        let c = Coefficient::parse("2q^3 + q^-1 + 1 + q", CoeffMode::Laurent).unwrap();
        assert_eq!(c.to_canonical_string(), "q^-1 + 1 + q + 2q^3");
        assert_eq!(Coefficient::zero(CoeffMode::Int).to_canonical_string(), "0");
        assert_eq!(int(1).to_canonical_string(), "1");
    }

    #[test]
    fn addition_examples() {
        assert_eq!(int(1).checked_add(&Coefficient::zero(CoeffMode::Int)).unwrap(), int(1));
        assert_eq!(
            laurent(&[(-1, 1)]).checked_add(&laurent(&[(-1, 2), (0, 1)])).unwrap(),
            laurent(&[(-1, 3), (0, 1)])
        );
        assert_eq!(int(2).checked_add(&int(3)).unwrap(), int(5));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            laurent(&[(1, 1), (-1, 1)]).checked_mul(&laurent(&[(1, 1)])).unwrap(),
            laurent(&[(2, 1), (0, 1)])
        );
        assert!(laurent(&[(4, 7)])
            .checked_mul(&Coefficient::zero(CoeffMode::Laurent))
            .unwrap()
            .is_zero());
        assert_eq!(int(2).checked_mul(&int(3)).unwrap(), int(6));
    }

    #[test]
    fn mode_mismatch() {
        let err = int(1).checked_add(&laurent(&[(0, 1)])).unwrap_err();
        assert_eq!(
            err,
            CoefficientError::ModeMismatch { left: CoeffMode::Int, right: CoeffMode::Laurent }
        );
        assert!(int(1).checked_mul(&laurent(&[(0, 1)])).is_err());
    }

    #[test]
    fn laurent_signed_arithmetic() {
        let a = Laurent::monomial(2, 1).add(&Laurent::constant(-1));
        let b = Laurent::constant(1).add(&Laurent::monomial(1, 1));
        // (2q - 1)(1 + q) = 2q^2 + q - 1
        let p = a.mul(&b);
        assert_eq!(p, Laurent::monomial(2, 2).add(&Laurent::monomial(1, 1)).add(&Laurent::constant(-1)));
        assert!(!p.is_nonnegative());
        assert!(a.add(&a.neg()).is_zero());
        let c = laurent(&[(-1, 3)]);
        assert_eq!(c.to_laurent().to_coefficient(CoeffMode::Laurent), Some(c));
    }
}
