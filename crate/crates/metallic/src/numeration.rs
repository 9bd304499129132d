//! Metallic sequences and canonical metallic codes.
//!
//! For a grade `p ≥ 5` the white metallic sequence is `m_{-1} = 0`, `m_0 = 1`,
//! `m_{n+2} = (p-2)·m_{n+1} - m_n`. Every natural number `n` has a unique
//! *canonical* representation `n = Σ a_i·m_i` with digits `a_i ∈ {0..d}`,
//! `d = p-3`, whose digit string contains no factor `d c* d` (`c = p-4`).
//! Digits are stored most-significant first; *place* `i` is the coefficient of
//! `m_i`, counted from the right starting at 0.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arithmetic;
use crate::error::{Error, Result};

/// The tiling parameter `p` together with its derived digit symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Grade {
    p: u32,
}

impl Grade {
    /// Builds the grade for `p`; fails when `p < 5`.
    pub fn new(p: u32) -> Result<Self> {
        if p < 5 {
            return Err(Error::InvalidGrade(p));
        }
        Ok(Grade { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    /// The largest digit, `d = p - 3`.
    pub fn d(self) -> u32 {
        self.p - 3
    }

    /// The digit `c = p - 4`, which may repeat inside a forbidden factor.
    pub fn c(self) -> u32 {
        self.p - 4
    }

    /// The digit `e = p - 5`, only meaningful when `p > 5`.
    pub fn e(self) -> Option<u32> {
        (self.p > 5).then(|| self.p - 5)
    }

    /// The carry threshold `p - 2`: a digit sum reaching it must be carried.
    pub fn base(self) -> u32 {
        self.p - 2
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}", self.p)
    }
}

/// Iterator over `m_0, m_1, m_2, …` (arbitrary precision).
#[derive(Debug, Clone)]
pub struct MetallicTerms {
    base: BigUint,
    prev: BigUint,
    cur: BigUint,
}

impl MetallicTerms {
    /// Terms of the white metallic sequence, starting at `m_0`.
    pub fn white(grade: Grade) -> Self {
        MetallicTerms { base: BigUint::from(grade.base()), prev: BigUint::zero(), cur: BigUint::one() }
    }

    /// Terms of the black metallic sequence, starting at `b_0`.
    pub fn black(grade: Grade) -> Self {
        // b_{-1} is chosen so that the recurrence yields b_1 = p - 3.
        let base = BigUint::from(grade.base());
        MetallicTerms { prev: BigUint::one(), cur: BigUint::one(), base }
    }
}

impl Iterator for MetallicTerms {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let next = &self.base * &self.cur - &self.prev;
        let out = std::mem::replace(&mut self.cur, next);
        self.prev = out.clone();
        Some(out)
    }
}

/// `m_n` for `n ≥ -1`: `m_{-1} = 0`, `m_0 = 1`, `m_{n+2} = (p-2)m_{n+1} - m_n`.
pub fn seq_m(grade: Grade, n: i64) -> BigUint {
    assert!(n >= -1, "seq_m is defined for n ≥ -1");
    if n == -1 {
        return BigUint::zero();
    }
    MetallicTerms::white(grade).nth(n as usize).expect("infinite sequence")
}

/// `b_n` for `n ≥ 0`: `b_0 = 1`, `b_1 = p-3`, `b_{n+2} = (p-2)b_{n+1} - b_n`.
pub fn seq_b(grade: Grade, n: u64) -> BigUint {
    MetallicTerms::black(grade).nth(n as usize).expect("infinite sequence")
}

/// `M_n` for `n ≥ -1`: `M_{-1} = 0`, `M_0 = 1`, `M_{n+2} = (p-2)M_{n+1} - M_n + 1`.
///
/// `M_n` is the number of the rightmost node on level `n` of the white tree.
pub fn seq_big_m(grade: Grade, n: i64) -> BigUint {
    assert!(n >= -1, "seq_big_m is defined for n ≥ -1");
    let base = BigUint::from(grade.base());
    let (mut prev, mut cur) = (BigUint::zero(), BigUint::one());
    if n == -1 {
        return prev;
    }
    for _ in 0..n {
        let next = &base * &cur + 1u32 - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Whether `digits` (most-significant first) are all in `{0..d}` and free of
/// any factor `d c* d`.
pub fn is_canonical(grade: Grade, digits: &[u32]) -> bool {
    digits.iter().all(|&x| x <= grade.d()) && !has_forbidden_factor(grade, digits)
}

fn has_forbidden_factor(grade: Grade, digits: &[u32]) -> bool {
    let (d, c) = (grade.d(), grade.c());
    let mut after_d = false;
    for &x in digits {
        if x == d {
            if after_d {
                return true;
            }
            after_d = true;
        } else if x != c {
            after_d = false;
        }
    }
    false
}

/// `Σ digits(i)·m_i` for a most-significant-first digit string; accepts any
/// non-negative digits, canonical or not.
pub fn decode(grade: Grade, digits: &[u32]) -> BigUint {
    let mut total = BigUint::zero();
    for (digit, m) in digits.iter().rev().zip(MetallicTerms::white(grade)) {
        if *digit != 0 {
            total += m * *digit;
        }
    }
    total
}

/// The canonical code of `n`: greedy most-significant-first digit extraction,
/// then [`normalize`].
pub fn encode(grade: Grade, n: &BigUint) -> MetallicCode {
    if n.is_zero() {
        return MetallicCode::zero(grade);
    }
    let terms: Vec<BigUint> = MetallicTerms::white(grade).take_while(|m| m <= n).collect();
    let mut rest = n.clone();
    let mut digits = Vec::with_capacity(terms.len());
    for m in terms.iter().rev() {
        let q = &rest / m;
        rest -= &q * m;
        digits.push(q.to_u32().expect("greedy digit is at most d"));
    }
    normalize(&Representation::new(grade, digits)).expect("greedy digits never exceed d")
}

/// Convenience wrapper of [`encode`] for machine integers.
pub fn encode_u64(grade: Grade, n: u64) -> MetallicCode {
    encode(grade, &BigUint::from(n))
}

/// Rewrites a representation with digits `≤ d` into canonical form.
///
/// Every forbidden factor `d c^k d` at places `h..=h+k+1` becomes zeros with a
/// carry of 1 at place `h+k+2` and, when `h ≥ 1`, at place `h-1`; this repeats
/// (resolving any carries it creates) until no forbidden factor remains.
pub fn normalize(rep: &Representation) -> Result<MetallicCode> {
    let grade = rep.grade;
    if let Some(&digit) = rep.digits.iter().find(|&&x| x > grade.d()) {
        return Err(Error::DigitOutOfRange { digit, max: grade.d(), p: grade.p() });
    }
    let places = rep.digits.iter().rev().map(|&x| x as u64).collect();
    arithmetic::settle(grade, places)
}

/// A canonical metallic code: digits in `{0..d}`, most-significant first, no
/// leading zero (zero itself is the single digit 0), no factor `d c* d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MetallicCode {
    grade: Grade,
    digits: Vec<u32>,
}

impl MetallicCode {
    /// Validates and wraps a most-significant-first digit string; leading
    /// zeros are trimmed.
    pub fn new(grade: Grade, digits: Vec<u32>) -> Result<Self> {
        if let Some(&digit) = digits.iter().find(|&&x| x > grade.d()) {
            return Err(Error::DigitOutOfRange { digit, max: grade.d(), p: grade.p() });
        }
        if has_forbidden_factor(grade, &digits) {
            return Err(Error::NotCanonical);
        }
        Ok(Self::from_digits_unchecked(grade, digits))
    }

    pub(crate) fn from_digits_unchecked(grade: Grade, mut digits: Vec<u32>) -> Self {
        let lead = digits.iter().position(|&x| x != 0).unwrap_or(digits.len());
        digits.drain(..lead);
        if digits.is_empty() {
            digits.push(0);
        }
        debug_assert!(is_canonical(grade, &digits), "non-canonical digits {digits:?}");
        MetallicCode { grade, digits }
    }

    /// Builds a code from place-indexed digits (least-significant first).
    pub(crate) fn from_places_unchecked(grade: Grade, places: &[u32]) -> Self {
        Self::from_digits_unchecked(grade, places.iter().rev().copied().collect())
    }

    pub fn zero(grade: Grade) -> Self {
        MetallicCode { grade, digits: vec![0] }
    }

    /// The code "1", which is also the root of every metallic tree.
    pub fn one(grade: Grade) -> Self {
        MetallicCode { grade, digits: vec![1] }
    }

    /// `[m_k]`: a 1 followed by `k` zeros.
    pub fn power(grade: Grade, k: usize) -> Self {
        let mut digits = vec![0; k + 1];
        digits[0] = 1;
        MetallicCode { grade, digits }
    }

    /// Parses the text format (see [`fmt::Display`]): dotted decimal digit
    /// values are always accepted; contiguous characters only for `p ≤ 13`,
    /// since for larger `p` a lone digit such as `10` would be ambiguous.
    pub fn parse(grade: Grade, text: &str) -> Result<Self> {
        let err = |reason: &str| Error::Parse { input: text.to_string(), reason: reason.to_string() };
        let text = text.trim();
        if text.is_empty() {
            return Err(err("empty string"));
        }
        let digits: Vec<u32> = if text.contains('.') || grade.p() > 13 {
            text.split('.')
                .map(|part| part.parse::<u32>().map_err(|_| err("expected decimal digit values joined by '.'")))
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|ch| match ch {
                    '0'..='9' => Ok(ch as u32 - '0' as u32),
                    'A'..='C' | 'a'..='c' => Ok(ch.to_ascii_uppercase() as u32 - 'A' as u32 + 10),
                    _ => Err(err("unexpected character")),
                })
                .collect::<Result<_>>()?
        };
        Self::new(grade, digits)
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    /// Digits, most-significant first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    /// Number of digits (the code "0" has length 1).
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.digits == [0]
    }

    /// The rightmost digit (place 0).
    pub fn signature(&self) -> u32 {
        *self.digits.last().expect("codes are never empty")
    }

    /// The digit at place `i` (0 beyond the most significant digit).
    pub fn place(&self, i: usize) -> u32 {
        if i < self.digits.len() {
            self.digits[self.digits.len() - 1 - i]
        } else {
            0
        }
    }

    /// Place-indexed digits, least-significant first.
    pub fn places(&self) -> Vec<u32> {
        self.digits.iter().rev().copied().collect()
    }

    /// The integer this code represents.
    pub fn value(&self) -> BigUint {
        decode(self.grade, &self.digits)
    }

    /// The code with its last digit removed (`"0"` when a single digit remains).
    pub fn drop_last(&self) -> Self {
        let mut digits = self.digits.clone();
        digits.pop();
        Self::from_digits_unchecked(self.grade, digits)
    }

    /// The code with `digit` appended, if the result is still canonical.
    pub fn push(&self, digit: u32) -> Result<Self> {
        let mut digits = if self.is_zero() { Vec::new() } else { self.digits.clone() };
        digits.push(digit);
        Self::new(self.grade, digits)
    }

    pub fn to_representation(&self) -> Representation {
        Representation::new(self.grade, self.digits.clone())
    }
}

impl fmt::Display for MetallicCode {
    /// Characters `0-9`, `A-C` for `p ≤ 13`; decimal digit values joined by
    /// `.` for larger `p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_digits(self.grade, &self.digits))
    }
}

pub(crate) fn format_digits(grade: Grade, digits: &[u32]) -> String {
    if grade.p() <= 13 {
        digits.iter().map(|&x| char::from_digit(x, 13).expect("digit below 13").to_ascii_uppercase()).collect()
    } else {
        digits.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

/// A digit string with arbitrary non-negative digits; the intermediate,
/// possibly non-canonical form used by arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    grade: Grade,
    digits: Vec<u32>,
}

impl Representation {
    /// Wraps most-significant-first digits without any validation.
    pub fn new(grade: Grade, digits: Vec<u32>) -> Self {
        Representation { grade, digits }
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn value(&self) -> BigUint {
        decode(self.grade, &self.digits)
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_digits(self.grade, &self.digits))
    }
}

impl FromStr for Grade {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = s.trim().parse::<u32>().map_err(|_| Error::Parse { input: s.to_string(), reason: "expected an integer p".into() })?;
        Grade::new(p)
    }
}
