use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraError, HalfInt};

/// Laurent polynomial in `t^{1/2}` with integer coefficients.
///
/// Terms are kept in a sorted map with no zero coefficients, so derived
/// equality is structural equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<HalfInt, i64>,
}

/// `±1`, used for the unit `sign·t^k` in monomial multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    Plus,
    Minus,
}

impl Unit {
    fn value(self) -> i64 {
        match self {
            Unit::Plus => 1,
            Unit::Minus => -1,
        }
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, HalfInt::ZERO)
    }

    /// `t`.
    pub fn t() -> Self {
        Self::monomial(1, HalfInt::ONE)
    }

    pub fn monomial(coeff: i64, exp: HalfInt) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (HalfInt, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: HalfInt, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (HalfInt, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: HalfInt) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn min_exp(&self) -> Option<HalfInt> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<HalfInt> {
        self.terms.keys().next_back().copied()
    }

    /// Highest-exponent term.
    pub fn leading(&self) -> Option<(HalfInt, i64)> {
        self.terms.iter().next_back().map(|(&e, &c)| (e, c))
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Multiplies every term by `sign · t^shift`.
    pub fn mul_monomial(&self, sign: Unit, shift: HalfInt) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e + shift, c * sign.value()))
                .collect(),
        }
    }

    /// Substitutes `t ↦ t^{-1}`.
    pub fn invert_variable(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Normalizes by a unit `±t^{k/2}`: the support is centered on 0, and the
    /// sign makes `p(1) > 0`, or the leading coefficient positive when
    /// `p(1) = 0`. The zero polynomial is returned unchanged.
    pub fn symmetrize(&self) -> Result<Self, AlgebraError> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(Self::zero());
        };
        // centering shift is -(lo + hi)/2, which is a multiple of 1/4 in general
        let sum = lo.twice() + hi.twice();
        if sum % 2 != 0 {
            return Err(AlgebraError::NotSymmetrizable(self.to_string()));
        }
        let shift = HalfInt::from_twice(-sum / 2);
        let value = self.eval_one();
        let lead = self.leading().map(|(_, c)| c).unwrap_or(0);
        let sign = if value < 0 || (value == 0 && lead < 0) {
            Unit::Minus
        } else {
            Unit::Plus
        };
        let out = self.mul_monomial(sign, shift);
        let support_symmetric = out.terms.keys().all(|&e| out.terms.contains_key(&-e));
        if !support_symmetric {
            return Err(AlgebraError::NotSymmetrizable(self.to_string()));
        }
        Ok(out)
    }

    /// Equality up to multiplication by `±t^{k/2}`.
    pub fn eq_up_to_unit(&self, other: &Self) -> Result<bool, AlgebraError> {
        Ok(self.symmetrize()? == other.symmetrize()?)
    }

    /// Whether the leading coefficient is `±1`.
    pub fn is_monic(&self) -> Result<bool, AlgebraError> {
        match self.leading() {
            None => Err(AlgebraError::ZeroPolynomial),
            Some((_, c)) => Ok(c.abs() == 1),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self` in
    /// `Z[t^{±1/2}]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (d_lo, d_hi, d_lead) = match (divisor.min_exp(), divisor.leading()) {
            (Some(lo), Some((hi, c))) => (lo, hi, c),
            _ => return None,
        };
        if self.is_zero() {
            return Some(Self::zero());
        }
        let floor = self.min_exp()? - d_lo;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((e, c)) = rem.leading() {
            let qe = e - d_hi;
            if qe < floor || c % d_lead != 0 {
                return None;
            }
            let qc = c / d_lead;
            quot.add_term(qe, qc);
            for (de, dc) in divisor.terms() {
                rem.add_term(de + qe, -qc * dc);
            }
        }
        Some(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.mul_monomial(Unit::Minus, HalfInt::ZERO)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

fn fmt_power(e: HalfInt) -> String {
    match e.to_int() {
        Some(n) => format!("t^{n}"),
        None => format!("t^({e})"),
    }
}

/// Descending exponents, e.g. `t^1 - 1 + t^-1`, `2*t^(3/2) - t^(-1/2)`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let a = c.abs();
            if e == HalfInt::ZERO {
                write!(f, "{a}")?;
            } else if a == 1 {
                f.write_str(&fmt_power(e))?;
            } else {
                write!(f, "{a}*{}", fmt_power(e))?;
            }
        }
        Ok(())
    }
}

fn parse_term(term: &str) -> Option<(HalfInt, i64)> {
    let (neg, body) = match term.as_bytes().first()? {
        b'-' => (true, &term[1..]),
        b'+' => (false, &term[1..]),
        _ => (false, term),
    };
    let (coeff, power) = match body.find('t') {
        None => (body.parse::<i64>().ok()?, HalfInt::ZERO),
        Some(pos) => {
            let head = body[..pos].strip_suffix('*').unwrap_or(&body[..pos]);
            let coeff = if head.is_empty() {
                1
            } else {
                head.parse::<i64>().ok()?
            };
            let tail = &body[pos + 1..];
            let power = if tail.is_empty() {
                HalfInt::ONE
            } else {
                let exp = tail.strip_prefix('^')?;
                let exp = exp
                    .strip_prefix('(')
                    .and_then(|x| x.strip_suffix(')'))
                    .unwrap_or(exp);
                exp.parse::<HalfInt>().ok()?
            };
            (coeff, power)
        }
    };
    Some((power, if neg { -coeff } else { coeff }))
}

impl FromStr for LaurentPoly {
    type Err = AlgebraError;

    /// Accepts the `Display` format plus minor variants (`t`, `t^2`, `3*t`, no spaces).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AlgebraError::Parse(s.to_string()));
        }
        // split before every '+'/'-' that starts a term
        let mut terms = Vec::new();
        let mut start = 0;
        let mut depth = 0i32;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth -= 1,
                b'+' | b'-' if i > start && depth == 0 && bytes[i - 1] != b'^' => {
                    terms.push(&compact[start..i]);
                    start = i;
                }
                _ => {}
            }
        }
        terms.push(&compact[start..]);
        let mut p = LaurentPoly::zero();
        for term in terms {
            let (e, c) = parse_term(term).ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    #[test]
    fn add_examples() {
        let a = LaurentPoly::monomial(1, h(1));
        assert!((&a + &LaurentPoly::monomial(-1, h(1))).is_zero());
        assert_eq!(p("t - 1") + p("1 + t^-1"), p("t + t^-1"));
        let q = LaurentPoly::monomial(3, h(3));
        assert_eq!(&q + &LaurentPoly::zero(), q);
    }

    #[test]
    fn mul_monomial_examples() {
        assert_eq!(
            p("t - 1").mul_monomial(Unit::Plus, h(-1)),
            p("t^(1/2) - t^(-1/2)")
        );
        let q = p("2*t^3 - t + 5");
        assert_eq!(q.mul_monomial(Unit::Minus, HalfInt::ZERO), -&q);
        assert!(LaurentPoly::zero().mul_monomial(Unit::Plus, h(5)).is_zero());
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(p("t^2 - t").symmetrize().unwrap(), p("t^(1/2) - t^(-1/2)"));
        assert_eq!(p("-t + 1 - t^-1").symmetrize().unwrap(), p("t - 1 + t^-1"));
        assert_eq!(p("t^2 + 1").symmetrize().unwrap(), p("t + t^-1"));
        assert!(matches!(
            p("t^3 + t + 1").symmetrize(),
            Err(AlgebraError::NotSymmetrizable(_))
        ));
        assert!(LaurentPoly::zero().symmetrize().unwrap().is_zero());
    }

    #[test]
    fn monic_examples() {
        assert!(p("t - 1 + t^-1").is_monic().unwrap());
        assert!(!p("2*t - 3 + 2*t^-1").is_monic().unwrap());
        assert!(LaurentPoly::one().is_monic().unwrap());
        assert!(p("-t^2 + 3").is_monic().unwrap());
        assert_eq!(
            LaurentPoly::zero().is_monic(),
            Err(AlgebraError::ZeroPolynomial)
        );
    }

    #[test]
    fn display_format() {
        assert_eq!(p("t - 1 + t^-1").to_string(), "t^1 - 1 + t^-1");
        assert_eq!(
            p("-2*t^(3/2) + t^(-1/2)").to_string(),
            "-2*t^(3/2) + t^(-1/2)"
        );
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-3").to_string(), "-3");
        assert_eq!(p("t^2-3t+1").to_string(), "t^2 - 3*t^1 + 1");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "t^", "2**t", "x+1", "t^(1/3)", "1+"] {
            assert!(bad.parse::<LaurentPoly>().is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_division() {
        let a = p("t - 1 + t^-1");
        let b = p("2*t^2 - 3 + t^(-1/2)");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(p("t + 1").div_exact(&p("t - 1")).is_none());
        assert!(p("t").div_exact(&p("2")).is_none());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..6, -4i64..5), 0..6)
            .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(e, c)| (h(e), c))))
    }

    fn arb_symmetric() -> impl Strategy<Value = LaurentPoly> {
        (
            prop::collection::vec(-5i64..6, 1..4),
            -5i64..5,
            any::<bool>(),
        )
            .prop_map(|(half, shift, neg)| {
                let mut q = LaurentPoly::zero();
                for (i, &c) in half.iter().enumerate() {
                    let e = h(2 * i as i64);
                    q.add_term(e, c);
                    if i > 0 {
                        q.add_term(-e, c);
                    }
                }
                let sign = if neg { Unit::Minus } else { Unit::Plus };
                q.mul_monomial(sign, h(shift))
            })
    }

    proptest! {
        #[test]
        fn add_commutes_and_associates(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        }

        #[test]
        fn monomial_shift_inverts(a in arb_poly(), shift in -7i64..7, neg in any::<bool>()) {
            let sign = if neg { Unit::Minus } else { Unit::Plus };
            let back = a.mul_monomial(sign, h(shift)).mul_monomial(sign, h(-shift));
            prop_assert_eq!(back, a);
        }

        #[test]
        fn symmetrize_is_idempotent(a in arb_symmetric()) {
            if let Ok(s) = a.symmetrize() {
                prop_assert_eq!(s.symmetrize().unwrap(), s);
            }
        }

        #[test]
        fn display_parse_roundtrip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
