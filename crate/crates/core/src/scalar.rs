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

//! Scalar abstractions.
//!
//! Numeric engines are generic over [`Real`] (`f32`, `f64`). Polynomial maps
//! can additionally be evaluated over any [`Ring`], which includes exact
//! rationals.

use std::fmt::{Debug, Display, LowerExp};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive};

/// Floating point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Absolute slack used by complete-positivity checks.
    const CP_TOL: f64;

    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("representable literal")
    }
}

impl Real for f32 {
    const CP_TOL: f64 = 1e-6;
}

impl Real for f64 {
    const CP_TOL: f64 = 1e-12;
}

/// A commutative ring with an ordering, able to host polynomial evaluation.
pub trait Ring: Clone + Num + PartialOrd + Debug + Send + Sync {
    fn from_bigint(v: &BigInt) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    /// Slack allowed in inequality checks (zero for exact types).
    fn tolerance() -> Self;

    fn to_f64(&self) -> f64;
}

impl Ring for f64 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }
    fn tolerance() -> Self {
        <f64 as Real>::CP_TOL
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Ring for f32 {
    fn from_bigint(v: &BigInt) -> Self {
        v.to_f32().unwrap_or(f32::NAN)
    }
    fn tolerance() -> Self {
        <f32 as Real>::CP_TOL as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

impl Ring for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn tolerance() -> Self {
        BigRational::from_integer(BigInt::from(0))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}
