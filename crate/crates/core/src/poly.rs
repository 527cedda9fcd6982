// Copyright 2026 The coherentqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Sparse bivariate polynomials in `(x, y)` with arbitrary-precision integer
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Polynomial stored as `(y power, x power) -> coefficient`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::monomial(BigInt::one(), 0, 0)
    }

    /// `c x^i y^j`.
    pub fn monomial(c: BigInt, i: u32, j: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn add_term(&mut self, c: BigInt, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((j, i)).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(j, i));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(j, i)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `(coefficient, x power, y power)`, ordered by y power then x power.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, u32, u32)> {
        self.terms.iter().map(|(&(j, i), c)| (c, i, j))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms().map(|(_, i, j)| i + j).max().unwrap_or(0)
    }

    /// `Some(parity)` when every monomial has the same parity in `y`.
    pub fn y_parity(&self) -> Option<u32> {
        let mut it = self.terms().map(|(_, _, j)| j % 2);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut p = Poly::zero();
        for (k, i, j) in self.terms() {
            p.add_term(k * c, i, j);
        }
        p
    }

    /// `(1 - x)^a x^b y^c` times `coeff`, accumulated into `self`.
    pub fn add_binomial_monomial(&mut self, coeff: &BigInt, a: u32, b: u32, c: u32, row: &[BigInt]) {
        debug_assert_eq!(row.len(), a as usize + 1);
        for (m, binom) in row.iter().enumerate() {
            let mut t = coeff * binom;
            if m % 2 == 1 {
                t = -t;
            }
            self.add_term(t, b + m as u32, c);
        }
    }

    /// Evaluates at `(x, y)` in any ring.
    pub fn eval<T: Ring>(&self, x: &T, y: &T) -> T {
        let (dx, dy) = self
            .terms()
            .fold((0, 0), |(a, b), (_, i, j)| (a.max(i), b.max(j)));
        let xp = powers(x, dx);
        let yp = powers(y, dy);
        let mut acc = T::zero();
        for (c, i, j) in self.terms() {
            acc = acc + T::from_bigint(c) * xp[i as usize].clone() * yp[j as usize].clone();
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.eval(&x, &y)
    }
}

fn powers<T: Ring>(v: &T, max: u32) -> Vec<T> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(T::one());
    for k in 1..=max as usize {
        let next = out[k - 1].clone() * v.clone();
        out.push(next);
    }
    out
}

/// Pascal row `C(a, 0..=a)`.
#[derive(Serialize)]
struct Monomial {
    coeff: String,
    x_power: u32,
    y_power: u32,
}

/// Serialized as a list of `{coeff, x_power, y_power}` with decimal
/// coefficient strings.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.num_terms()))?;
        for (c, i, j) in self.terms() {
            seq.serialize_element(&Monomial { coeff: c.to_string(), x_power: i, y_power: j})?;
        }
        seq.end()
    }
}

pub fn binomial_row(a: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 0..a {
        let next = &row[k as usize] * BigInt::from(a - k) / BigInt::from(k + 1);
        row.push(next);
    }
    row
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut p = self.clone();
        for (c, i, j) in rhs.terms() {
            p.add_term(c.clone(), i, j);
        }
        p
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut p = Poly::zero();
        for (a, i, j) in self.terms() {
            for (b, k, l) in rhs.terms() {
                p.add_term(a * b, i + k, j + l);
            }
        }
        p
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (c, i, j)) in self.terms().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                parts.push(mag.to_string());
            }
            for (v, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => parts.push(v.to_string()),
                    _ => parts.push(format!("{v}^{e}")),
                }
            }
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Accepts sums of terms such as `21 x^2 - 98 x^3 + 42 y^4 - x y^2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported(format!("cannot parse polynomial {s:?}"));
        let cleaned = s.replace('\u{2212}', "-").replace('*', " ");
        let mut p = Poly::zero();
        let mut sign = BigInt::one();
        let mut coeff: Option<BigInt> = None;
        let (mut i, mut j) = (0u32, 0u32);
        let mut started = false;
        let flush = |p: &mut Poly, sign: &BigInt, coeff: &Option<BigInt>, i, j| {
            let c = coeff.clone().unwrap_or_else(BigInt::one);
            p.add_term(sign * c, i, j);
        };
        let mut chars = cleaned.chars().peekable();
        while let Some(&ch) = chars.peek() {
            match ch {
                ' ' | '\n' | '\t' => {
                    chars.next();
                }
                '+' | '-' => {
                    if started {
                        flush(&mut p, &sign, &coeff, i, j);
                    }
                    sign = if ch == '-' { BigInt::from(-1) } else { BigInt::one() };
                    coeff = None;
                    i = 0;
                    j = 0;
                    started = false;
                    chars.next();
                }
                '0'..='9' => {
                    let mut t = String::new();
                    while let Some(&d) = chars.peek() {
                        if d.is_ascii_digit() {
                            t.push(d);
                            chars.next();
                        } else {
                            break;
                        }
                    }
                    let v: BigInt = t.parse().map_err(|_| bad())?;
                    coeff = Some(coeff.map_or(v.clone(), |c| c * v));
                    started = true;
                }
                'x' | 'y' => {
                    chars.next();
                    let mut e = 1u32;
                    if chars.peek() == Some(&'^') {
                        chars.next();
                        let mut t = String::new();
                        while let Some(&d) = chars.peek() {
                            if d.is_ascii_digit() {
                                t.push(d);
                                chars.next();
                            } else {
                                break;
                            }
                        }
                        e = t.parse().map_err(|_| bad())?;
                    }
                    if ch == 'x' {
                        i += e;
                    } else {
                        j += e;
                    }
                    started = true;
                }
                _ => return Err(bad()),
            }
        }
        if started {
            flush(&mut p, &sign, &coeff, i, j);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn parse_display_round_trip() {
        let p: Poly = "21 x^2 - 98 x^3 + 42 y^4 - x y^4 + 7".parse().unwrap();
        assert_eq!(p.coeff(1, 4), BigInt::from(-1));
        assert_eq!(p.coeff(0, 0), BigInt::from(7));
        let q: Poly = p.to_string().parse().unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn exact_evaluation() {
        let p: Poly = "3 x^2 - 2 x^3".parse().unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(p.eval(&half, &half), half);
    }

    #[test]
    fn binomial_expansion() {
        let mut p = Poly::zero();
        p.add_binomial_monomial(&BigInt::one(), 2, 1, 0, &binomial_row(2));
        assert_eq!(p, "x - 2 x^2 + x^3".parse().unwrap());
    }
}
