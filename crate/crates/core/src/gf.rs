//! Prime-field arithmetic and the systematic `[m, k]` Reed-Solomon code used
//! as the outer erasure code over syndrome vectors.
//!
//! Evaluation points are fixed to `0, 1, ..., m-1`. A message of `k`
//! symbols is the value table of the unique polynomial of degree `< k`
//! on points `0..k`; the `m - k` parity symbols are that polynomial
//! evaluated at `k..m`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidSymbol(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Reduces any integer into the field.
    pub fn elem(&self, value: u64) -> FieldElement {
        FieldElement {
            value: (value % self.p as u64) as u32,
            p: self.p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElement {
        self.elem(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let p = self.p as u64;
        let mut base = self.value as u64;
        let mut acc = 1 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Self {
            value: acc as u32,
            p: self.p,
        }
    }

    /// Multiplicative inverse via Fermat: `a^(p-2)`.
    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p as u64 - 2))
    }

    pub fn checked_div(self, rhs: Self) -> Result<Self> {
        Ok(self * rhs.inv()?)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let sum = self.value as u64 + rhs.value as u64;
        Self {
            value: (sum % self.p as u64) as u32,
            p: self.p,
        }
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            value: if self.value == 0 {
                0
            } else {
                self.p - self.value
            },
            p: self.p,
        }
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        Self {
            value: (self.value as u64 * rhs.value as u64 % self.p as u64) as u32,
            p: self.p,
        }
    }
}

/// Systematic `[m, k]` Reed-Solomon code over `F_p`, correcting `m - k`
/// erasures. `k = 0` is the zero code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErasureCode {
    field: PrimeField,
    m: usize,
    k: usize,
}

impl ErasureCode {
    pub fn new(field: PrimeField, m: usize, k: usize) -> Result<Self> {
        if k > m {
            return Err(Error::DimensionMismatch(format!("k={k} exceeds m={m}")));
        }
        if m > field.p() as usize {
            return Err(Error::DimensionMismatch(format!(
                "m={m} exceeds the {} distinct points of F_{}",
                field.p(),
                field.p()
            )));
        }
        Ok(Self { field, m, k })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn length(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Number of erasures the code corrects, `m - k`.
    pub fn redundancy(&self) -> usize {
        self.m - self.k
    }

    /// Appends the `m - k` parity symbols to a `k`-symbol message.
    pub fn extend(&self, payload: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if payload.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "payload has {} symbols, expected {}",
                payload.len(),
                self.k
            )));
        }
        let points: Vec<(FieldElement, FieldElement)> = payload
            .iter()
            .enumerate()
            .map(|(i, &y)| (self.field.elem(i as u64), y))
            .collect();
        let mut out = payload.to_vec();
        for x in self.k..self.m {
            out.push(interpolate_at(
                self.field,
                &points,
                self.field.elem(x as u64),
            ));
        }
        Ok(out)
    }

    /// Fills erased (`None`) coordinates. Interpolates through the first `k`
    /// known coordinates and checks every other known coordinate against it.
    pub fn decode(&self, received: &[Option<FieldElement>]) -> Result<Vec<FieldElement>> {
        if received.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "received {} symbols, expected {}",
                received.len(),
                self.m
            )));
        }
        let known: Vec<(FieldElement, FieldElement)> = received
            .iter()
            .enumerate()
            .filter_map(|(i, y)| y.map(|y| (self.field.elem(i as u64), y)))
            .collect();
        let erasures = self.m - known.len();
        if erasures > self.redundancy() {
            return Err(Error::TooManyErasures {
                erasures,
                capacity: self.redundancy(),
            });
        }
        let basis = &known[..self.k];
        let mut out = Vec::with_capacity(self.m);
        for (i, y) in received.iter().enumerate() {
            let value = interpolate_at(self.field, basis, self.field.elem(i as u64));
            if let Some(y) = y {
                if *y != value {
                    return Err(Error::InconsistentCodeword);
                }
            }
            out.push(value);
        }
        Ok(out)
    }

    pub fn contains(&self, word: &[FieldElement]) -> bool {
        if word.len() != self.m {
            return false;
        }
        let as_received: Vec<Option<FieldElement>> = word.iter().copied().map(Some).collect();
        self.decode(&as_received).is_ok()
    }
}

/// Lagrange interpolation through `points` (distinct abscissae), evaluated
/// at `x`. An empty point set is the zero polynomial.
pub fn interpolate_at(
    field: PrimeField,
    points: &[(FieldElement, FieldElement)],
    x: FieldElement,
) -> FieldElement {
    let mut acc = field.zero();
    for (j, &(xj, yj)) in points.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let mut num = field.one();
        let mut den = field.one();
        for (i, &(xi, _)) in points.iter().enumerate() {
            if i != j {
                num = num * (x - xi);
                den = den * (xj - xi);
            }
        }
        acc = acc + yj * num * den.inv().expect("abscissae are distinct");
    }
    acc
}
