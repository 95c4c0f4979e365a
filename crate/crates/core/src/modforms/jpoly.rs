use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::parse_rat;

/// Exact rational polynomial in the variable `j`, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "JPolyWire", try_from = "JPolyWire")]
pub struct JPolynomial {
    coeffs: Vec<BigRational>,
}

impl JPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        JPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        JPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `c j^d`.
    pub fn monomial(c: BigRational, d: usize) -> Self {
        let mut v = vec![BigRational::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * BigRational::from_integer(d.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &JPolynomial) -> (JPolynomial, JPolynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lc;
            let shift = top - dd;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * dc;
            }
            quo[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (JPolynomial::new(quo), JPolynomial::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &JPolynomial) -> JPolynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add<&JPolynomial> for &JPolynomial {
    type Output = JPolynomial;
    fn add(self, rhs: &JPolynomial) -> JPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        JPolynomial::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let b = rhs.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl Neg for &JPolynomial {
    type Output = JPolynomial;
    fn neg(self) -> JPolynomial {
        JPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub<&JPolynomial> for &JPolynomial {
    type Output = JPolynomial;
    fn sub(self, rhs: &JPolynomial) -> JPolynomial {
        self + &(-rhs)
    }
}

impl Mul<&JPolynomial> for &JPolynomial {
    type Output = JPolynomial;
    fn mul(self, rhs: &JPolynomial) -> JPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return JPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        JPolynomial::new(out)
    }
}

/// Renders as `j^2 - 20462710947840/13928908741 j + 1908473415598080/13928908741`.
impl fmt::Display for JPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match d {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag} ")?;
                    }
                    if d == 1 {
                        write!(f, "j")?;
                    } else {
                        write!(f, "j^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct JPolyWire {
    var: String,
    coeffs: Vec<String>,
}

impl From<JPolynomial> for JPolyWire {
    fn from(p: JPolynomial) -> Self {
        JPolyWire {
            var: "j".into(),
            coeffs: p.coeffs.iter().map(|c| c.to_string()).collect(),
        }
    }
}

impl TryFrom<JPolyWire> for JPolynomial {
    type Error = String;
    fn try_from(w: JPolyWire) -> Result<Self, Self::Error> {
        if w.var != "j" {
            return Err(format!("unexpected variable {:?}", w.var));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| format!("bad coefficient {s:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(JPolynomial::new(coeffs))
    }
}
