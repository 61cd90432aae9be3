//! Power sums `f(n) = a_1 b_1^n + ... + a_l b_l^n` with rational coefficients and
//! positive rational bases.
//!
//! A [`PowerSumForm`] is always kept in canonical shape: bases strictly
//! decreasing, no zero coefficients, everything in lowest terms. Because of this,
//! structural equality (`==`) coincides with equality as functions of `n`.
//!
//! Integer-rooted forms are the ones the number theory cares about; rational
//! bases show up when the dominant term is factored out (see
//! [`PowerSumForm::delta_form`]). [`FormClass`] says which ring a form lives in.
//!
//! The text syntax is `2*4^n + 1`, `-3*(9/4)^n`, `1/4*16^n - 1/32`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_integer, rpow};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRational,
    pub base: BigRational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PowerSumForm {
    terms: Vec<Term>,
}

/// Which ring a form inhabits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormClass {
    /// All bases are positive integers (the form is in `Q·E_Z`).
    pub integral_bases: bool,
    /// All coefficients are integers.
    pub integral_coefficients: bool,
    pub positive_leading: bool,
}

impl FormClass {
    /// Integer coefficients over integer roots, i.e. membership in `E_Z`.
    pub fn in_e_z(&self) -> bool {
        self.integral_bases && self.integral_coefficients
    }
}

/// `b_1 / b_2`, or infinity for a single-term form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Beta {
    Finite(BigRational),
    Infinite,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonicalize raw `(coefficient, base)` pairs: merge equal bases, drop zero
/// coefficients, sort by base descending.
pub fn normalize<I>(raw: I) -> Result<PowerSumForm>
where
    I: IntoIterator<Item = (BigRational, BigRational)>,
{
    let mut acc: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    for (c, b) in raw {
        if !b.is_positive() {
            return Err(Error::InvalidBase(b.to_string()));
        }
        *acc.entry(b).or_insert_with(BigRational::zero) += c;
    }
    Ok(PowerSumForm::from_map(acc))
}

impl PowerSumForm {
    fn from_map(map: BTreeMap<BigRational, BigRational>) -> Self {
        let terms = map
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(base, coeff)| Term { coeff, base })
            .collect();
        PowerSumForm { terms }
    }

    fn to_map(&self) -> BTreeMap<BigRational, BigRational> {
        self.terms
            .iter()
            .map(|t| (t.base.clone(), t.coeff.clone()))
            .collect()
    }

    pub fn zero() -> Self {
        PowerSumForm::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, BigRational::one()).expect("base 1 is positive")
    }

    /// The single term `c·b^n`.
    pub fn monomial(c: BigRational, b: BigRational) -> Result<Self> {
        normalize([(c, b)])
    }

    /// Convenience constructor from integer pairs, mostly for tests and presets.
    pub fn from_ints(pairs: &[(i64, i64)]) -> Result<Self> {
        normalize(pairs.iter().map(|&(c, b)| (rat(c), rat(b))))
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms, `l`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn class(&self) -> FormClass {
        FormClass {
            integral_bases: self.terms.iter().all(|t| is_integer(&t.base)),
            integral_coefficients: self.terms.iter().all(|t| is_integer(&t.coeff)),
            positive_leading: self.terms.first().is_some_and(|t| t.coeff.is_positive()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PowerSumForm {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    base: t.base.clone(),
                })
                .collect(),
        }
    }

    /// Multiply every base by `r` (the form `n -> r^n f(n)`).
    pub fn shift_bases(&self, r: &BigRational) -> Result<Self> {
        if !r.is_positive() {
            return Err(Error::InvalidBase(r.to_string()));
        }
        Ok(PowerSumForm {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    base: &t.base * r,
                })
                .collect(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(BigRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Product truncated to terms with base `>= floor`. Exact for the kept
    /// terms whenever every base of both operands is at most 1.
    pub(crate) fn mul_truncated(&self, other: &Self, floor: &BigRational) -> Self {
        let mut acc: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for s in &self.terms {
            for t in &other.terms {
                let b = &s.base * &t.base;
                if b < *floor {
                    continue;
                }
                *acc.entry(b).or_insert_with(BigRational::zero) += &s.coeff * &t.coeff;
            }
        }
        Self::from_map(acc)
    }

    /// Keep only terms whose base is at least `floor`.
    pub fn retain_bases_at_least(&self, floor: &BigRational) -> Self {
        PowerSumForm {
            terms: self
                .terms
                .iter()
                .filter(|t| t.base >= *floor)
                .cloned()
                .collect(),
        }
    }

    /// The form `n -> f(2n + j)`: `(a_i, b_i)` becomes `(a_i b_i^j, b_i^2)`.
    pub fn compose_affine(&self, j: u8) -> Result<Self> {
        if j > 1 {
            return Err(Error::InvalidArgument(format!("j must be 0 or 1, got {j}")));
        }
        if self.is_zero() {
            return Err(Error::EmptyForm);
        }
        // Squaring is strictly monotone on positive bases, so order is preserved.
        Ok(PowerSumForm {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: if j == 1 { &t.coeff * &t.base } else { t.coeff.clone() },
                    base: &t.base * &t.base,
                })
                .collect(),
        })
    }

    pub fn eval_exact(&self, n: u64) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, t| acc + &t.coeff * rpow(&t.base, n))
    }

    /// `f(n)` when it is an integer.
    pub fn eval_integer(&self, n: u64) -> Result<BigInt> {
        let v = self.eval_exact(n);
        if is_integer(&v) {
            Ok(v.to_integer())
        } else {
            Err(Error::NonIntegerValue {
                n,
                value: v.to_string(),
            })
        }
    }

    /// Leading coefficient and base `(a_1, b_1)`.
    pub fn dominant(&self) -> Result<(&BigRational, &BigRational)> {
        self.terms
            .first()
            .map(|t| (&t.coeff, &t.base))
            .ok_or(Error::EmptyForm)
    }

    pub fn dominant_base(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.base)
    }

    pub fn beta(&self) -> Result<Beta> {
        match self.terms.as_slice() {
            [] => Err(Error::EmptyForm),
            [_] => Ok(Beta::Infinite),
            [a, b, ..] => Ok(Beta::Finite(&a.base / &b.base)),
        }
    }

    /// `delta(n) = sum_{i>=2} (a_i/a_1) (b_i/b_1)^n`, so that
    /// `f(n) = a_1 b_1^n (1 + delta(n))`.
    pub fn delta_form(&self) -> Result<Self> {
        let (a1, b1) = self.dominant()?;
        if !a1.is_positive() {
            return Err(Error::NegativeLeading(a1.to_string()));
        }
        Ok(PowerSumForm {
            terms: self.terms[1..]
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff / a1,
                    base: &t.base / b1,
                })
                .collect(),
        })
    }

    pub(crate) fn require_integral_bases(&self) -> Result<()> {
        if self.class().integral_bases {
            Ok(())
        } else {
            Err(Error::NonIntegralBases)
        }
    }
}

impl Add for &PowerSumForm {
    type Output = PowerSumForm;
    fn add(self, rhs: &PowerSumForm) -> PowerSumForm {
        let mut acc = self.to_map();
        for t in &rhs.terms {
            *acc.entry(t.base.clone()).or_insert_with(BigRational::zero) += &t.coeff;
        }
        PowerSumForm::from_map(acc)
    }
}

impl Neg for &PowerSumForm {
    type Output = PowerSumForm;
    fn neg(self) -> PowerSumForm {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &PowerSumForm {
    type Output = PowerSumForm;
    fn sub(self, rhs: &PowerSumForm) -> PowerSumForm {
        self + &(-rhs)
    }
}

impl Mul for &PowerSumForm {
    type Output = PowerSumForm;
    fn mul(self, rhs: &PowerSumForm) -> PowerSumForm {
        let mut acc: BTreeMap<BigRational, BigRational> = BTreeMap::new();
        for s in &self.terms {
            for t in &rhs.terms {
                *acc.entry(&s.base * &t.base).or_insert_with(BigRational::zero) +=
                    &s.coeff * &t.coeff;
            }
        }
        PowerSumForm::from_map(acc)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for PowerSumForm {
            type Output = PowerSumForm;
            fn $m(self, rhs: PowerSumForm) -> PowerSumForm {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

fn fmt_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for PowerSumForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = t.coeff.abs();
            if t.base.is_one() {
                f.write_str(&fmt_rational(&c))?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{}*", fmt_rational(&c))?;
            }
            if t.base.denom().is_one() {
                write!(f, "{}^n", t.base.numer())?;
            } else {
                write!(f, "({})^n", fmt_rational(&t.base))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse as an integer"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let num = self.integer()?;
        if self.eat(b'/') {
            let den = self.integer()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    /// `int | '(' rational ')'` followed by `^n`.
    fn power(&mut self) -> Result<BigRational> {
        let base = if self.eat(b'(') {
            let b = self.rational()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            b
        } else {
            BigRational::from_integer(self.integer()?)
        };
        if !self.eat(b'^') {
            return self.err("expected '^n'");
        }
        if !self.eat(b'n') {
            return self.err("exponent must be n");
        }
        Ok(base)
    }

    fn term(&mut self) -> Result<(BigRational, BigRational)> {
        if self.peek() == Some(b'(') {
            return Ok((BigRational::one(), self.power()?));
        }
        let save = self.pos;
        self.integer()?;
        let bare_power = self.peek() == Some(b'^');
        self.pos = save;
        if bare_power {
            return Ok((BigRational::one(), self.power()?));
        }
        let c = self.rational()?;
        if self.eat(b'*') {
            Ok((c, self.power()?))
        } else if self.peek() == Some(b'^') {
            self.err("rational bases need parentheses, e.g. (9/4)^n")
        } else {
            Ok((c, BigRational::one()))
        }
    }

    fn form(&mut self) -> Result<PowerSumForm> {
        let mut raw = Vec::new();
        let mut negative = self.eat(b'-');
        loop {
            let (c, b) = self.term()?;
            raw.push((if negative { -c } else { c }, b));
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        normalize(raw)
    }
}

impl FromStr for PowerSumForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
        .form()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn f(s: &str) -> PowerSumForm {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_merges_drops_and_sorts() {
        let merged = normalize([(rat(1), rat(2)), (rat(1), rat(2))]).unwrap();
        assert_eq!(merged, PowerSumForm::from_ints(&[(2, 2)]).unwrap());
        assert_eq!(merged.len(), 1);

        let dropped = normalize([(rat(0), rat(5)), (rat(3), rat(2))]).unwrap();
        assert_eq!(dropped.terms(), &[Term { coeff: rat(3), base: rat(2) }]);

        let sorted = normalize([(rat(1), rat(3)), (rat(2), rat(9))]).unwrap();
        assert_eq!(sorted.terms()[0].base, rat(9));
        assert_eq!(sorted.terms()[1].base, rat(3));
    }

    #[test]
    fn normalize_rejects_non_positive_base() {
        assert!(matches!(
            normalize([(rat(1), rat(0))]),
            Err(Error::InvalidBase(_))
        ));
        assert!(matches!(
            normalize([(rat(1), rat(-2))]),
            Err(Error::InvalidBase(_))
        ));
    }

    #[test]
    fn ring_examples() {
        assert_eq!(f("3^n + 1") * f("3^n - 1"), f("9^n - 1"));
        assert_eq!(&f("2*4^n + 1") + &f("-1"), f("2*4^n"));
        assert_eq!(f("3^n + 1") * f("3^n + 1"), f("9^n + 2*3^n + 1"));
    }

    #[test]
    fn compose_affine_examples() {
        let title = f("2*4^n + 1");
        assert_eq!(title.compose_affine(0).unwrap(), f("2*16^n + 1"));
        assert_eq!(title.compose_affine(1).unwrap(), f("8*16^n + 1"));
        assert_eq!(f("3^n").compose_affine(1).unwrap(), f("3*9^n"));
        assert!(matches!(title.compose_affine(2), Err(Error::InvalidArgument(_))));
        assert!(matches!(PowerSumForm::zero().compose_affine(0), Err(Error::EmptyForm)));
    }

    #[test]
    fn eval_examples() {
        let title = f("2*4^n + 1");
        assert_eq!(title.eval_exact(2), rat(33));
        assert_eq!(title.eval_exact(1), rat(9));
        assert_eq!(f("3^n").eval_exact(0), rat(1));
        assert_eq!(f("1/2*3^n").eval_integer(1).unwrap_err(), Error::NonIntegerValue { n: 1, value: "3/2".into() });
    }

    #[test]
    fn dominant_and_beta() {
        let title = f("2*4^n + 1");
        assert_eq!(title.dominant().unwrap(), (&rat(2), &rat(4)));
        assert_eq!(title.beta().unwrap(), Beta::Finite(rat(4)));
        assert_eq!(f("5^n").beta().unwrap(), Beta::Infinite);
        let sq = f("9^n + 2*3^n + 1");
        assert_eq!(sq.dominant().unwrap(), (&rat(1), &rat(9)));
        assert_eq!(sq.beta().unwrap(), Beta::Finite(rat(3)));
        assert_eq!(PowerSumForm::zero().dominant(), Err(Error::EmptyForm));
    }

    /// Oracle: expand `a_1 b_1^n (1 + delta)` with ring arithmetic and compare.
    fn rebuild(form: &PowerSumForm, delta: &PowerSumForm) -> PowerSumForm {
        let (a1, b1) = form.dominant().unwrap();
        let lead = PowerSumForm::monomial(a1.clone(), b1.clone()).unwrap();
        &lead * &(&PowerSumForm::constant(rat(1)) + delta)
    }

    #[test]
    fn delta_form_examples() {
        let title = f("2*4^n + 1");
        let d = title.delta_form().unwrap();
        assert_eq!(d, normalize([(q(1, 2), q(1, 4))]).unwrap());
        assert_eq!(rebuild(&title, &d), title);

        assert!(f("5^n").delta_form().unwrap().is_zero());

        let sq = f("9^n + 2*3^n + 1");
        let d = sq.delta_form().unwrap();
        assert_eq!(d, normalize([(rat(2), q(1, 3)), (rat(1), q(1, 9))]).unwrap());
        assert_eq!(rebuild(&sq, &d), sq);

        assert!(matches!(f("-4^n + 1").delta_form(), Err(Error::NegativeLeading(_))));
    }

    #[test]
    fn class_reports_ring() {
        assert!(f("2*4^n + 1").class().in_e_z());
        let c = f("1/4*16^n - 1/32").class();
        assert!(c.integral_bases && !c.integral_coefficients && c.positive_leading);
        assert!(!f("(9/4)^n").class().integral_bases);
        assert!(!f("-3^n").class().positive_leading);
    }

    #[test]
    fn printer_syntax() {
        assert_eq!(f("2*4^n + 1").to_string(), "2*4^n + 1");
        assert_eq!(f("-3*(9/4)^n").to_string(), "-3*(9/4)^n");
        assert_eq!(f("1 + 16^n + 1/4*4^n - 1/32").to_string(), "16^n + 1/4*4^n + 31/32");
        assert_eq!(f("4^n - 4^n").to_string(), "0");
        assert_eq!(f("-4^n").to_string(), "-4^n");
        assert_eq!(f("(3)^n").to_string(), "3^n");
    }

    #[test]
    fn parser_rejects_garbage() {
        for bad in ["", "2*", "3/4^n", "4^m", "2*4^n +", "1/0", "4^n 5", "x"] {
            assert!(matches!(bad.parse::<PowerSumForm>(), Err(Error::Parse { .. })), "{bad}");
        }
        assert!(matches!("2*0^n".parse::<PowerSumForm>(), Err(Error::InvalidBase(_))));
    }

    fn arb_form() -> impl Strategy<Value = PowerSumForm> {
        prop::collection::vec((-6i64..=6, 1i64..=4, 1i64..=9, 1i64..=3), 0..4).prop_map(|ts| {
            normalize(ts.into_iter().map(|(c, cd, b, bd)| (q(c, cd), q(b, bd)))).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_form(), b in arb_form(), c in arb_form()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            for n in 0..=20u64 {
                prop_assert_eq!((&a * &b).eval_exact(n), a.eval_exact(n) * b.eval_exact(n));
                prop_assert_eq!((&a + &b).eval_exact(n), a.eval_exact(n) + b.eval_exact(n));
            }
        }

        #[test]
        fn square_evaluates_to_square(a in arb_form()) {
            let sq = &a * &a;
            for n in 0..=20u64 {
                let v = a.eval_exact(n);
                prop_assert_eq!(sq.eval_exact(n), &v * &v);
            }
        }

        #[test]
        fn normalize_preserves_values(ts in prop::collection::vec((-6i64..=6, 1i64..=9), 0..6)) {
            let raw: Vec<_> = ts.iter().map(|&(c, b)| (rat(c), rat(b))).collect();
            let form = normalize(raw.clone()).unwrap();
            prop_assert_eq!(normalize(form.terms().iter().map(|t| (t.coeff.clone(), t.base.clone()))).unwrap(), form.clone());
            for w in form.terms().windows(2) {
                prop_assert!(w[0].base > w[1].base);
            }
            for n in 0..=20u64 {
                let direct = raw.iter().fold(BigRational::zero(), |s, (c, b)| s + c * rpow(b, n));
                prop_assert_eq!(form.eval_exact(n), direct);
            }
        }

        #[test]
        fn compose_affine_substitutes(a in arb_form(), j in 0u8..=1) {
            prop_assume!(!a.is_zero());
            let g = a.compose_affine(j).unwrap();
            for n in 0..=12u64 {
                prop_assert_eq!(g.eval_exact(n), a.eval_exact(2 * n + j as u64));
            }
        }

        #[test]
        fn delta_identity(a in arb_form()) {
            prop_assume!(a.class().positive_leading);
            let d = a.delta_form().unwrap();
            prop_assert_eq!(rebuild(&a, &d), a);
        }

        #[test]
        fn print_parse_round_trip(a in arb_form()) {
            let text = a.to_string();
            prop_assert_eq!(text.parse::<PowerSumForm>().unwrap(), a);
        }
    }
}
