use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// Largest exponent accepted by the text parser.
const MAX_PARSED_DEGREE: usize = 1 << 14;

/// Dense polynomial in `q` with rational coefficients; `coeffs[i]` is the
/// coefficient of `q^i`. The highest stored coefficient is never zero, so the
/// zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        QPoly::monomial(Rational::one(), 1)
    }

    /// `c·q^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        QPoly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Horner evaluation at `q0`.
    pub fn eval(&self, q0: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * q0 + c)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        let mut result = QPoly::one();
        for _ in 0..e {
            result = &result * self;
        }
        result
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::from_coeffs(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl From<Rational> for QPoly {
    fn from(c: Rational) -> Self {
        QPoly::constant(c)
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn superscript(n: usize) -> String {
    n.to_string()
        .bytes()
        .map(|b| SUPERSCRIPTS[(b - b'0') as usize])
        .collect()
}

/// Renders like `1+2q+q²-(1/2)q³`, lowest power first.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            f.write_str("q")?;
            if k > 1 {
                f.write_str(&superscript(k))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(&c) = self.chars.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.chars.next();
        }
        out
    }

    fn coefficient(&mut self) -> Result<Option<Rational>> {
        match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let inner = self.take_while(|c| c != ')');
                if self.chars.next() != Some(')') {
                    return Err(Error::Parse("unclosed `(`".into()));
                }
                Ok(Some(inner.parse()?))
            }
            Some(c) if c.is_ascii_digit() => {
                let text = self.take_while(|c| c.is_ascii_digit() || c == '/');
                Ok(Some(text.parse()?))
            }
            _ => Ok(None),
        }
    }

    fn exponent(&mut self) -> Result<usize> {
        let digits = match self.chars.peek() {
            Some('^') => {
                self.chars.next();
                self.take_while(|c| c.is_ascii_digit())
            }
            Some(c) if SUPERSCRIPTS.contains(c) => self
                .take_while(|c| SUPERSCRIPTS.contains(&c))
                .chars()
                .map(|c| {
                    let d = SUPERSCRIPTS.iter().position(|&s| s == c).unwrap_or(0);
                    char::from(b'0' + d as u8)
                })
                .collect(),
            _ => return Ok(1),
        };
        let e: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("invalid exponent `{digits}`")))?;
        if e > MAX_PARSED_DEGREE {
            return Err(Error::Parse(format!("exponent {e} exceeds {MAX_PARSED_DEGREE}")));
        }
        Ok(e)
    }
}

/// Parses sums of terms `c`, `cq`, `cq^k` (or `cq²`), where `c` is an
/// integer, `p/r`, or a parenthesised signed rational.
impl FromStr for QPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { chars: s.chars().peekable() };
        let mut acc = QPoly::zero();
        let mut first = true;
        loop {
            cur.skip_ws();
            let negative = match cur.chars.peek() {
                Some('-') | Some('−') => {
                    cur.chars.next();
                    true
                }
                Some('+') => {
                    cur.chars.next();
                    false
                }
                None if !first => return Err(Error::Parse("dangling operator".into())),
                None => return Err(Error::Parse("empty polynomial".into())),
                _ if first => false,
                Some(c) => return Err(Error::Parse(format!("expected `+` or `-`, found `{c}`"))),
            };
            first = false;
            cur.skip_ws();
            let coeff = cur.coefficient()?;
            let power = if cur.chars.peek() == Some(&'q') {
                cur.chars.next();
                cur.exponent()?
            } else if coeff.is_some() {
                0
            } else {
                return Err(Error::Parse("expected a coefficient or `q`".into()));
            };
            let c = coeff.unwrap_or_else(Rational::one);
            let c = if negative { -c } else { c };
            acc = &acc + &QPoly::monomial(c, power);
            cur.skip_ws();
            if cur.chars.peek().is_none() {
                return Ok(acc);
            }
        }
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(QPoly::from_coeffs(Vec::<Rational>::deserialize(deserializer)?))
    }
}
