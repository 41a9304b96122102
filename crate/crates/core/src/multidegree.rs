use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Degree vector of a line bundle on a product of projective spaces, one entry
/// per factor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree(Vec<i64>);

impl Multidegree {
    pub fn new(entries: Vec<i64>) -> Self {
        Multidegree(entries)
    }

    pub fn zero(len: usize) -> Self {
        Multidegree(vec![0; len])
    }

    /// `degree` times the generator of factor `coord`.
    pub fn pure(len: usize, coord: usize, degree: i64) -> Self {
        let mut v = vec![0; len];
        v[coord] = degree;
        Multidegree(v)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn nonzero_count(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// Coordinate `c` if this degree is supported on that single factor.
    pub fn pure_coordinate(&self) -> Option<usize> {
        match self.support()[..] {
            [c] => Some(c),
            _ => None,
        }
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        debug_assert_eq!(self.len(), other.len());
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: i64) -> Multidegree {
        Multidegree(self.0.iter().map(|a| a * k).collect())
    }

    /// Entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Multidegree {
        Multidegree(perm.iter().map(|&j| self.0[j]).collect())
    }

    /// Copy with one extra trailing coordinate.
    pub fn extended(&self, last: i64) -> Multidegree {
        let mut v = self.0.clone();
        v.push(last);
        Multidegree(v)
    }

    /// Copy with coordinate `c` deleted.
    pub fn without(&self, c: usize) -> Multidegree {
        let mut v = self.0.clone();
        v.remove(c);
        Multidegree(v)
    }
}

impl From<Vec<i64>> for Multidegree {
    fn from(v: Vec<i64>) -> Self {
        Multidegree(v)
    }
}

impl<const N: usize> From<[i64; N]> for Multidegree {
    fn from(v: [i64; N]) -> Self {
        Multidegree(v.to_vec())
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `3,3,0` or `(3,3,0)`.
impl FromStr for Multidegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').unwrap_or(t);
        let t = t.strip_suffix(')').unwrap_or(t);
        if t.trim().is_empty() {
            return Err(Error::Parse(format!("empty multidegree {s:?}")));
        }
        t.split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("multidegree entry {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Multidegree)
    }
}

/// Parses `(3,2,0)+(0,1,3)`; also accepts `;` as the separator.
pub fn parse_parts(s: &str) -> Result<Vec<Multidegree>> {
    let sep = if s.contains(';') { ';' } else { '+' };
    s.split(sep).map(str::parse).collect()
}

pub fn format_parts(parts: &[Multidegree]) -> String {
    parts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("+")
}
