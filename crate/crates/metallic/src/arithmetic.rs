//! Arithmetic performed directly on metallic codes.
//!
//! Addition sums digits place by place and then resolves carries with the rule
//! `(p-2)·m_i = m_{i+1} + m_{i-1}` (at place 0, `(p-2)·m_0 = m_1`), followed by
//! the elimination of forbidden factors. The other operations (comparison,
//! complement to `m_k`, subtraction, increment, decrement) build on it.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::numeration::{Grade, MetallicCode};

/// Pending carries, one entry per digit place plus one overflow place.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CarryTable {
    pending: Vec<u64>,
}

impl CarryTable {
    /// An all-zero table covering places `0..places` and one overflow place.
    pub fn new(places: usize) -> Self {
        CarryTable { pending: vec![0; places + 1] }
    }

    /// Records one carry at `place`, growing the table on demand.
    pub fn add(&mut self, place: usize) {
        if place >= self.pending.len() {
            self.pending.resize(place + 1, 0);
        }
        self.pending[place] += 1;
    }

    /// True when no carry is pending, the termination condition of a round.
    pub fn is_clear(&self) -> bool {
        self.pending.iter().all(|&x| x == 0)
    }

    /// Per-place pending counts, least-significant place first.
    pub fn entries(&self) -> &[u64] {
        &self.pending
    }
}

fn check_grades(a: &MetallicCode, b: &MetallicCode) -> Result<Grade> {
    if a.grade() != b.grade() {
        return Err(Error::GradeMismatch(a.grade().p(), b.grade().p()));
    }
    Ok(a.grade())
}

/// Brings place-indexed digits of any size to canonical form: carry rounds
/// until every digit is below `p-2`, then forbidden-factor elimination, and
/// again until neither step changes anything.
///
/// Both steps strictly decrease the digit mass `Σ digits`, so the initial mass
/// bounds the number of rounds; exceeding it reports [`Error::NonTermination`].
pub(crate) fn settle(grade: Grade, mut places: Vec<u64>) -> Result<MetallicCode> {
    let budget = places.iter().sum::<u64>() + 1;
    let mut rounds = 0u64;
    loop {
        resolve_carries(grade, &mut places, &mut rounds, budget)?;
        if !eliminate_forbidden(grade, &mut places) {
            break;
        }
        rounds += 1;
        if rounds > budget {
            return Err(Error::NonTermination(budget));
        }
    }
    let digits: Vec<u32> = places.iter().rev().map(|&x| x as u32).collect();
    Ok(MetallicCode::from_digits_unchecked(grade, digits))
}

/// Carry rounds: every place holding at least `p-2` gives `p-2` away, sending
/// one unit to each neighbouring place (only upwards from place 0).
fn resolve_carries(grade: Grade, s: &mut Vec<u64>, rounds: &mut u64, budget: u64) -> Result<()> {
    let base = grade.base() as u64;
    loop {
        let mut carry = CarryTable::new(s.len());
        for (i, place) in s.iter_mut().enumerate() {
            if *place >= base {
                *place -= base;
                carry.add(i + 1);
                if i > 0 {
                    carry.add(i - 1);
                }
            }
        }
        if carry.is_clear() {
            return Ok(());
        }
        *rounds += 1;
        if *rounds > budget {
            return Err(Error::NonTermination(budget));
        }
        if carry.entries().len() > s.len() {
            s.resize(carry.entries().len(), 0);
        }
        for (digit, pending) in s.iter_mut().zip(carry.entries()) {
            *digit += pending;
        }
    }
}

/// One low-to-high sweep replacing each factor `d c^k d` (places `h..=h+k+1`)
/// by zeros plus carries at `h+k+2` and `h-1`. Stops early when a carry pushes
/// a digit to `p-2` so that the caller can resolve it. Returns whether any
/// factor was replaced.
fn eliminate_forbidden(grade: Grade, s: &mut Vec<u64>) -> bool {
    let (d, c, base) = (grade.d() as u64, grade.c() as u64, grade.base() as u64);
    let mut changed = false;
    let mut h = 0;
    while h < s.len() {
        if s[h] != d {
            h += 1;
            continue;
        }
        let mut top = h + 1;
        while top < s.len() && s[top] == c {
            top += 1;
        }
        if top >= s.len() || s[top] != d {
            h = top.max(h + 1);
            continue;
        }
        for digit in &mut s[h..=top] {
            *digit = 0;
        }
        if top + 1 >= s.len() {
            s.resize(top + 2, 0);
        }
        s[top + 1] += 1;
        changed = true;
        let mut overflow = s[top + 1] >= base;
        if h > 0 {
            s[h - 1] += 1;
            overflow |= s[h - 1] >= base;
        }
        if overflow {
            return true;
        }
        h = h.saturating_sub(1);
    }
    changed
}

/// Sum of two codes.
pub fn add(a: &MetallicCode, b: &MetallicCode) -> Result<MetallicCode> {
    let grade = check_grades(a, b)?;
    let len = a.len().max(b.len());
    let sum = (0..len).map(|i| (a.place(i) + b.place(i)) as u64).collect();
    settle(grade, sum)
}

/// Order of two codes: lexicographic on zero-padded digit strings, which
/// agrees with the order of their values because both are canonical.
pub fn compare(a: &MetallicCode, b: &MetallicCode) -> Result<Ordering> {
    check_grades(a, b)?;
    let len = a.len().max(b.len());
    for i in (0..len).rev() {
        match a.place(i).cmp(&b.place(i)) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

/// The code `c` with `c + b = m_k`.
///
/// The minuend starts as `d c^{k-2} d`, a representation of `m_k` of length
/// `k`. While some place `i` holds a digit of `b` larger than the minuend's
/// (taking the most significant such place), the minuend is *lifted*: its low
/// part at places `0..=i` is saved into an accumulator, the digit at `i+1`
/// loses one, and the low part is rewritten as the representation
/// `d c^{i-1} d` of `m_{i+1}` (the single digit `p-2` when `i = 0`). Then the
/// digit-wise difference plus the accumulator is the answer.
///
/// A leading digit of `b` equal to `d` needs no special treatment: it cannot
/// exceed the minuend's leading `d`, and any inversion below it is lifted from
/// a lower place like every other one.
pub fn complement(b: &MetallicCode, k: usize) -> Result<MetallicCode> {
    let grade = b.grade();
    let target = MetallicCode::power(grade, k);
    match compare(b, &target)? {
        Ordering::Greater => return Err(Error::ComplementOutOfRange { k }),
        Ordering::Equal => return Ok(MetallicCode::zero(grade)),
        Ordering::Less => {}
    }
    // Now b < m_k, so b has at most k digits.
    if k == 0 {
        return Ok(MetallicCode::one(grade));
    }
    let subtrahend: Vec<i64> = (0..k).map(|i| b.place(i) as i64).collect();
    if k == 1 {
        return settle(grade, vec![(grade.base() as i64 - subtrahend[0]) as u64]);
    }
    let (d, c) = (grade.d() as i64, grade.c() as i64);
    let mut minuend: Vec<i64> = vec![c; k];
    minuend[0] = d;
    minuend[k - 1] = d;
    let mut saved: Vec<u64> = vec![0; k];
    while let Some(i) = (0..k).rev().find(|&i| subtrahend[i] > minuend[i]) {
        if i + 1 >= k || minuend[..=i].iter().any(|&x| x < 0) {
            // Cannot happen for b < m_k; reported rather than silently wrong.
            return Err(Error::ComplementOutOfRange { k });
        }
        for (acc, &digit) in saved.iter_mut().zip(&minuend[..=i]) {
            *acc += digit as u64;
        }
        minuend[i + 1] -= 1;
        if i == 0 {
            minuend[0] = grade.base() as i64;
        } else {
            minuend[0] = d;
            for digit in &mut minuend[1..i] {
                *digit = c;
            }
            minuend[i] = d;
        }
    }
    let difference: Vec<u64> = minuend.iter().zip(&subtrahend).map(|(x, y)| (x - y) as u64).collect();
    add(&settle(grade, difference)?, &settle(grade, saved)?)
}

/// Difference `a - b` for `a ≥ b`.
///
/// Equal leading digits are stripped; at the first differing place `k`,
/// `a = α·m_k + a₁` and `b = β·m_k + b₁` with `α > β`, and
/// `a - b = (α-1-β)·m_k + complement(b₁, k) + a₁`.
pub fn subtract(a: &MetallicCode, b: &MetallicCode) -> Result<MetallicCode> {
    let grade = check_grades(a, b)?;
    let len = a.len().max(b.len());
    let Some(k) = (0..len).rev().find(|&i| a.place(i) != b.place(i)) else {
        return Ok(MetallicCode::zero(grade));
    };
    let (alpha, beta) = (a.place(k), b.place(k));
    if alpha < beta {
        return Err(Error::NegativeResult);
    }
    let low = |x: &MetallicCode| {
        let places: Vec<u32> = (0..k).map(|i| x.place(i)).collect();
        MetallicCode::from_places_unchecked(grade, &places)
    };
    let (a1, b1) = (low(a), low(b));
    let mut result = add(&complement(&b1, k)?, &a1)?;
    let power = MetallicCode::power(grade, k);
    for _ in 0..(alpha - 1 - beta) {
        result = add(&result, &power)?;
    }
    Ok(result)
}

/// `[n+1]` from `[n]`.
pub fn increment(a: &MetallicCode) -> MetallicCode {
    let grade = a.grade();
    let (d, c) = (grade.d(), grade.c());
    let mut x = a.places();
    x.push(0);
    if x[0] == d {
        x[0] = 0;
        x[1] += 1;
        return settle(grade, x.iter().map(|&v| v as u64).collect()).expect("a single carry always settles");
    }
    if x[0] < c {
        x[0] += 1;
        return MetallicCode::from_places_unchecked(grade, &x);
    }
    let mut i = 0;
    while x[i] == c {
        i += 1;
    }
    if x[i] < d {
        x[0] = d;
        return MetallicCode::from_places_unchecked(grade, &x);
    }
    for digit in &mut x[..=i] {
        *digit = 0;
    }
    if i + 1 >= x.len() {
        x.push(0);
    }
    x[i + 1] += 1;
    settle(grade, x.iter().map(|&v| v as u64).collect()).expect("a single carry always settles")
}

/// `[n-1]` from `[n]`, for `n ≥ 1`: the lowest nonzero digit (place `i`) loses
/// one, place `i-1` becomes `d` and places `0..i-1` become `c`.
pub fn decrement(a: &MetallicCode) -> Result<MetallicCode> {
    if a.is_zero() {
        return Err(Error::ZeroNode);
    }
    let grade = a.grade();
    let mut x = a.places();
    let i = x.iter().position(|&v| v != 0).expect("nonzero code");
    x[i] -= 1;
    if i >= 1 {
        x[i - 1] = grade.d();
        for digit in &mut x[..i - 1] {
            *digit = grade.c();
        }
    }
    Ok(MetallicCode::from_places_unchecked(grade, &x))
}
