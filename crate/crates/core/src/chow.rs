//! Truncated Chow ring of a product of projective spaces.
//!
//! A class is a polynomial in the hyperplane generators `h_1, …, h_t` modulo
//! `h_i^{n_i + 1} = 0`, stored sparsely with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

/// Largest total dimension accepted by [`Ambient::new`].
pub const MAX_DIMENSION: u32 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ambient {
    dims: Vec<u32>,
}

impl Ambient {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidAmbient("no factors".into()));
        }
        if dims.contains(&0) {
            return Err(Error::InvalidAmbient(format!(
                "factor dimensions must be positive, got {dims:?}"
            )));
        }
        let total: u32 = dims.iter().sum();
        if total > MAX_DIMENSION {
            return Err(Error::InvalidAmbient(format!(
                "total dimension {total} exceeds {MAX_DIMENSION}"
            )));
        }
        Ok(Ambient { dims })
    }

    /// `(P^1)^n`.
    pub fn lines(n: usize) -> Result<Self> {
        Ambient::new(vec![1; n])
    }

    /// `P^n`.
    pub fn projective(n: u32) -> Result<Self> {
        Ambient::new(vec![n])
    }

    pub fn factor_dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn dimension(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn is_product_of_lines(&self) -> bool {
        self.dims.iter().all(|&n| n == 1)
    }

    /// Topological Euler characteristic, `∏ (n_i + 1)`.
    pub fn euler(&self) -> i64 {
        self.dims.iter().map(|&n| n as i64 + 1).product()
    }

    fn top_exponent(&self) -> Vec<u8> {
        self.dims.iter().map(|&n| n as u8).collect()
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.dims.iter().map(|n| format!("P^{n}")).collect();
        write!(f, "{}", names.join(" x "))
    }
}

type Exponent = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowClass {
    ambient: Ambient,
    terms: BTreeMap<Exponent, BigRational>,
}

impl ChowClass {
    pub fn zero(ambient: &Ambient) -> Self {
        ChowClass {
            ambient: ambient.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: &Ambient, c: BigRational) -> Self {
        let mut out = ChowClass::zero(ambient);
        out.insert(vec![0; ambient.factors()], c);
        out
    }

    pub fn one(ambient: &Ambient) -> Self {
        ChowClass::constant(ambient, BigRational::one())
    }

    /// The hyperplane class of factor `i`.
    pub fn generator(ambient: &Ambient, i: usize) -> Result<Self> {
        if i >= ambient.factors() {
            return Err(Error::Dimension {
                expected: ambient.factors(),
                got: i + 1,
            });
        }
        let mut e = vec![0; ambient.factors()];
        e[i] = 1;
        let mut out = ChowClass::zero(ambient);
        out.insert(e, BigRational::one());
        Ok(out)
    }

    /// The first Chern class `Σ m_i h_i` of the line bundle with multidegree `m`.
    pub fn class_of(ambient: &Ambient, m: &Multidegree) -> Result<Self> {
        if m.len() != ambient.factors() {
            return Err(Error::Dimension {
                expected: ambient.factors(),
                got: m.len(),
            });
        }
        let mut out = ChowClass::zero(ambient);
        for (i, &a) in m.entries().iter().enumerate() {
            let mut e = vec![0; ambient.factors()];
            e[i] = 1;
            out.insert(e, BigRational::from_integer(BigInt::from(a)));
        }
        Ok(out)
    }

    /// `∏ (1 + h_i)^{n_i + 1}`.
    pub fn total_chern(ambient: &Ambient) -> Self {
        let mut out = ChowClass::one(ambient);
        for (i, &n) in ambient.dims.iter().enumerate() {
            let mut factor = ChowClass::zero(ambient);
            // (1+h)^{n+1} truncated at h^n
            let mut binom = BigInt::one();
            for k in 0..=n {
                let mut e = vec![0; ambient.factors()];
                e[i] = k as u8;
                factor.insert(e, BigRational::from_integer(binom.clone()));
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            out = out.mul_unchecked(&factor);
        }
        out
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponent: &[u8]) -> BigRational {
        self.terms
            .get(exponent)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.ambient.factors()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(e.clone())
            .or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn same_ambient(&self, other: &ChowClass) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ChowClass) -> Result<ChowClass> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &ChowClass) -> Result<ChowClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ChowClass {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, k: &BigRational) -> ChowClass {
        let mut out = ChowClass::zero(&self.ambient);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &ChowClass) -> Result<ChowClass> {
        self.same_ambient(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &ChowClass) -> ChowClass {
        let bound = &self.ambient.dims;
        let mut acc: BTreeMap<Exponent, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            'terms: for (eb, cb) in &other.terms {
                let mut e = Vec::with_capacity(bound.len());
                for i in 0..bound.len() {
                    let s = ea[i] + eb[i];
                    if s as u32 > bound[i] {
                        continue 'terms;
                    }
                    e.push(s);
                }
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        ChowClass {
            ambient: self.ambient.clone(),
            terms: acc,
        }
    }

    /// Inverse of a class with constant term 1, via `1 - u + u^2 - …` with
    /// `u = a - 1`, stopping at the ambient dimension.
    pub fn inverse_unit(&self) -> Result<ChowClass> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::NonUnit(c0.to_string()));
        }
        let one = ChowClass::one(&self.ambient);
        let minus_u = one.sub(self)?;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.ambient.dimension() {
            power = power.mul_unchecked(&minus_u);
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Coefficient of the top monomial `∏ h_i^{n_i}`.
    pub fn integrate(&self) -> BigRational {
        self.coefficient(&self.ambient.top_exponent())
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mono: String = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("h{}", i + 1)
                    } else {
                        format!("h{}^{}", i + 1, k)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}

/// Exact integer value of a rational, or a consistency error naming `what`.
pub(crate) fn to_integer(q: &BigRational, what: &str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::Consistency(format!(
            "{what} = {q} is not an integer"
        )));
    }
    i64::try_from(q.to_integer())
        .map_err(|_| Error::Consistency(format!("{what} = {q} does not fit in 64 bits")))
}
