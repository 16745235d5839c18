//! Integer Laurent polynomials in `x` (homological) and `y` (quantum).

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse polynomial `{input}`: {reason}")]
pub struct PolyParseError {
    pub input: String,
    pub reason: String,
}

/// Finitely supported map `(i, j) -> coefficient of x^i y^j`, zeros never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), i64>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coef: i64, i: i32, j: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, coef);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((i32, i32), i64)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: i32, j: i32, coef: i64) {
        if coef == 0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: i32, j: i32) -> i64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Terms in ascending `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, i32), i64)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Multiplies by `x^di y^dj`.
    pub fn shift(&self, di: i32, dj: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&(i, j), &c)| ((i + di, j + dj), c)).collect() }
    }

    /// Value at `x = 1, y = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Substitutes `x = -1`.
    pub fn at_x_minus_one(&self) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (&(i, j), &c) in &self.terms {
            out.add_term(j, if i.rem_euclid(2) == 0 { c } else { -c });
        }
        out
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (&(i, j), &c) in &o.terms {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, o: &LaurentPoly2) -> LaurentPoly2 {
        self + &(-o)
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 { terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect() }
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, o: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(i, j), &c) in &self.terms {
            for (&(k, l), &d) in &o.terms {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }
}

macro_rules! by_value {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
    )*};
}
by_value!(LaurentPoly2, Add add, Sub sub, Mul mul);
by_value!(LaurentPoly1, Add add, Mul mul);

fn write_power(out: &mut String, var: char, e: i32) {
    match e {
        0 => {}
        1 => out.push(var),
        _ => {
            let _ = write!(out, "{var}^{e}");
        }
    }
}

fn write_terms<'a>(f: &mut fmt::Formatter<'_>, terms: impl Iterator<Item = (String, i64)> + 'a) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                f.write_str("-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        let a = c.unsigned_abs();
        if mono.is_empty() {
            write!(f, "{a}")?;
        } else if a == 1 {
            f.write_str(&mono)?;
        } else {
            write!(f, "{a}{mono}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(&(i, j), &c)| {
                let mut m = String::new();
                write_power(&mut m, 'x', i);
                write_power(&mut m, 'y', j);
                (m, c)
            }),
        )
    }
}

/// Splits a polynomial string into signed terms after stripping whitespace,
/// braces and `*`.
fn split_terms(input: &str) -> Result<Vec<(i64, String)>, PolyParseError> {
    let err = |reason: &str| PolyParseError { input: input.to_owned(), reason: reason.to_owned() };
    let cleaned: String = input.chars().filter(|c| !c.is_whitespace() && !matches!(c, '{' | '}' | '*' | '$')).collect();
    if cleaned.is_empty() {
        return Err(err("empty input"));
    }
    let mut terms = Vec::new();
    let mut sign = 1;
    let mut current = String::new();
    let mut prev = None;
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && prev != Some('^') {
            if !current.is_empty() {
                terms.push((sign, std::mem::take(&mut current)));
                sign = 1;
            }
            if ch == '-' {
                sign = -sign;
            }
        } else {
            current.push(ch);
        }
        prev = Some(ch);
    }
    if current.is_empty() {
        return Err(err("trailing sign"));
    }
    terms.push((sign, current));
    Ok(terms)
}

/// Parses one term body such as `3x^-2y^5`; returns the coefficient and the
/// exponent of each variable in `vars`.
fn parse_term(input: &str, body: &str, vars: &[char]) -> Result<(i64, Vec<i32>), PolyParseError> {
    let err = |reason: String| PolyParseError { input: input.to_owned(), reason };
    let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
    let mut rest = &body[digits.len()..];
    let coef = if digits.is_empty() {
        1
    } else {
        digits.parse::<i64>().map_err(|e| err(e.to_string()))?
    };
    let mut exps = vec![0; vars.len()];
    while let Some(v) = rest.chars().next() {
        let slot = vars.iter().position(|&x| x == v).ok_or_else(|| err(format!("unexpected `{v}`")))?;
        rest = &rest[1..];
        let mut e = 1;
        if let Some(r) = rest.strip_prefix('^') {
            let len = r.char_indices().take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-')).count();
            e = r[..len].parse::<i32>().map_err(|_| err(format!("bad exponent after `{v}^`")))?;
            rest = &r[len..];
        }
        exps[slot] += e;
    }
    Ok((coef, exps))
}

impl FromStr for LaurentPoly2 {
    type Err = PolyParseError;

    /// Accepts `x^-3y^-9 + 2y^-3`, `x^{-3}y^{-9}`, `3 x^2 y`, `0`.
    fn from_str(s: &str) -> Result<Self, PolyParseError> {
        let mut p = LaurentPoly2::zero();
        for (sign, body) in split_terms(s)? {
            let (c, e) = parse_term(s, &body, &['x', 'y'])?;
            p.add_term(e[0], e[1], sign * c);
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: i32,
    j: i32,
    coef: i64,
}

/// JSON form: a list of `{"i", "j", "coef"}` objects in ascending order.
impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let list: Vec<TermJson> = self.terms().map(|((i, j), coef)| TermJson { i, j, coef }).collect();
        list.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let list = Vec::<TermJson>::deserialize(d)?;
        Ok(LaurentPoly2::from_terms(list.into_iter().map(|t| ((t.i, t.j), t.coef))))
    }
}

/// Integer Laurent polynomial in `y` alone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly1 {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coef: i64, j: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(j, coef);
        p
    }

    pub fn add_term(&mut self, j: i32, coef: i64) {
        if coef == 0 {
            return;
        }
        let e = self.terms.entry(j).or_insert(0);
        *e += coef;
        if *e == 0 {
            self.terms.remove(&j);
        }
    }

    pub fn coefficient(&self, j: i32) -> i64 {
        self.terms.get(&j).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&j, &c)| (j, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, o: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (&j, &c) in &o.terms {
            out.add_term(j, c);
        }
        out
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, o: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (&j, &c) in &self.terms {
            for (&l, &d) in &o.terms {
                out.add_term(j + l, c * d);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().map(|(&j, &c)| {
                let mut m = String::new();
                write_power(&mut m, 'y', j);
                (m, c)
            }),
        )
    }
}

impl FromStr for LaurentPoly1 {
    type Err = PolyParseError;
    fn from_str(s: &str) -> Result<Self, PolyParseError> {
        let mut p = LaurentPoly1::zero();
        for (sign, body) in split_terms(s)? {
            let (c, e) = parse_term(s, &body, &['y'])?;
            p.add_term(e[0], sign * c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn display_order_and_format() {
        assert_eq!(p("y^{-1} + x^{-3}y^{-9} + y^{-3} + x^{-2}y^{-5}").to_string(), "x^-3y^-9 + x^-2y^-5 + y^-3 + y^-1");
        assert_eq!(p("y+y^{-1}").to_string(), "y^-1 + y");
        assert_eq!(p("1 - x y").to_string(), "1 - xy");
        assert_eq!(p("-2x^2").to_string(), "-2x^2");
        assert_eq!(LaurentPoly2::zero().to_string(), "0");
        assert_eq!(p("0"), LaurentPoly2::zero());
    }

    #[test]
    fn parsing_variants() {
        assert_eq!(p("3 x^2 y"), LaurentPoly2::monomial(3, 2, 1));
        assert_eq!(p("x^{-1}y^{-3}+y^{-2}"), &LaurentPoly2::monomial(1, -1, -3) + &LaurentPoly2::monomial(1, 0, -2));
        assert_eq!(p("xy^-2 - 2"), &LaurentPoly2::monomial(1, 1, -2) + &LaurentPoly2::monomial(-2, 0, 0));
        assert_eq!(p("- y"), LaurentPoly2::monomial(-1, 0, 1));
        assert!("x +".parse::<LaurentPoly2>().is_err());
        assert!("z".parse::<LaurentPoly2>().is_err());
        assert!("".parse::<LaurentPoly2>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = p("1 + xy");
        assert_eq!(a.pow(2), p("1 + 2xy + x^2y^2"));
        assert_eq!(&a - &a, LaurentPoly2::zero());
        assert_eq!(a.at_x_minus_one().to_string(), "1 - y");
        assert_eq!(p("x^2y+2x+y^-1").eval_one(), 4);
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&p("2x^-1y^3 + 1")).unwrap();
        assert_eq!(j, r#"[{"i":-1,"j":3,"coef":2},{"i":0,"j":0,"coef":1}]"#);
        assert_eq!(serde_json::from_str::<LaurentPoly2>(&j).unwrap(), p("2x^-1y^3 + 1"));
    }

    #[test]
    fn one_variable() {
        let q: LaurentPoly1 = "-y^{-9}+y^{-5}+y^{-3}+y^{-1}".parse().unwrap();
        assert_eq!(q.to_string(), "-y^-9 + y^-5 + y^-3 + y^-1");
    }
}
