//! Cyclic covers `Y → Z` of degree `d` branched along a divisor in `|dL|`
//! split into components of prescribed multidegrees.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chow::{to_integer, Ambient, ChowClass};
use crate::error::{Error, Result};
use crate::multidegree::{format_parts, Multidegree};

/// Most components accepted by the stratified Euler characteristic.
pub const MAX_PARTS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverData {
    ambient: Ambient,
    degree: u32,
    base: Multidegree,
}

impl CoverData {
    /// Checks `d ≥ 2` and the Calabi–Yau condition `(d−1)·L_i = n_i + 1`.
    pub fn new(ambient: Ambient, degree: u32, base: Multidegree) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidCover(format!("degree {degree} < 2")));
        }
        if base.len() != ambient.factors() {
            return Err(Error::Dimension {
                expected: ambient.factors(),
                got: base.len(),
            });
        }
        for (i, (&l, &n)) in base.entries().iter().zip(ambient.factor_dims()).enumerate() {
            if (degree as i64 - 1) * l != n as i64 + 1 {
                return Err(Error::InvalidCover(format!(
                    "Calabi-Yau condition fails on factor {}: ({degree}-1)*{l} != {}",
                    i + 1,
                    n + 1
                )));
            }
        }
        Ok(CoverData {
            ambient,
            degree,
            base,
        })
    }

    /// The cover of degree `d` whose base bundle is forced by the Calabi–Yau
    /// condition.
    pub fn calabi_yau(ambient: Ambient, degree: u32) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidCover(format!("degree {degree} < 2")));
        }
        let k = degree as i64 - 1;
        let mut base = Vec::with_capacity(ambient.factors());
        for &n in ambient.factor_dims() {
            let c = n as i64 + 1;
            if c % k != 0 {
                return Err(Error::InvalidCover(format!(
                    "{c} is not divisible by {k}; no Calabi-Yau base bundle on {ambient}"
                )));
            }
            base.push(c / k);
        }
        CoverData::new(ambient, degree, Multidegree::new(base))
    }

    /// Triple covers of `(P^1)^n`, the setting of the classification.
    pub fn triple_lines(n: usize) -> Result<Self> {
        CoverData::calabi_yau(Ambient::lines(n)?, 3)
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn base(&self) -> &Multidegree {
        &self.base
    }

    /// `d·L`, the class of the whole branch divisor.
    pub fn branch_class(&self) -> Multidegree {
        self.base.scale(self.degree as i64)
    }

    pub fn is_triple_lines(&self) -> bool {
        self.degree == 3 && self.ambient.is_product_of_lines()
    }
}

/// A multiset of effective nonzero multidegrees summing to `d·L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionType {
    cover: CoverData,
    parts: Vec<Multidegree>,
}

impl PartitionType {
    pub fn new(cover: CoverData, parts: Vec<Multidegree>) -> Result<Self> {
        let t = cover.ambient.factors();
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        let mut sum = Multidegree::zero(t);
        for p in &parts {
            if p.len() != t {
                return Err(Error::Dimension {
                    expected: t,
                    got: p.len(),
                });
            }
            if !p.is_effective() || p.is_zero() {
                return Err(Error::InvalidPartition(format!(
                    "part {p} must be nonzero with nonnegative entries"
                )));
            }
            sum = sum.add(p);
        }
        let target = cover.branch_class();
        if sum != target {
            return Err(Error::InvalidPartition(format!(
                "parts sum to {sum}, expected {target}"
            )));
        }
        Ok(PartitionType { cover, parts })
    }

    /// Shorthand for a partition of `(3,…,3)` on `(P^1)^n`.
    pub fn on_lines(parts: Vec<Multidegree>) -> Result<Self> {
        let n = parts
            .first()
            .map(Multidegree::len)
            .ok_or_else(|| Error::InvalidPartition("no parts".into()))?;
        PartitionType::new(CoverData::triple_lines(n)?, parts)
    }

    pub fn cover(&self) -> &CoverData {
        &self.cover
    }

    pub fn ambient(&self) -> &Ambient {
        &self.cover.ambient
    }

    pub fn parts(&self) -> &[Multidegree] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Same parts with coordinates permuted; only meaningful when the permuted
    /// factors have equal dimension.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let dims = self.ambient().factor_dims();
        let new_dims: Vec<u32> = perm.iter().map(|&j| dims[j]).collect();
        let cover = CoverData::calabi_yau(Ambient::new(new_dims)?, self.cover.degree)?;
        PartitionType::new(cover, self.parts.iter().map(|p| p.permuted(perm)).collect())
    }
}

impl std::fmt::Display for PartitionType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_parts(&self.parts))
    }
}

fn unit_plus(t: &PartitionType, part: &Multidegree) -> Result<ChowClass> {
    let z = t.ambient();
    ChowClass::one(z).add(&ChowClass::class_of(z, part)?)
}

/// `∫ c(Z) / ∏ (1 + α_j)`.
pub fn twisted_integral(t: &PartitionType) -> Result<BigRational> {
    let z = t.ambient();
    let mut denom = ChowClass::one(z);
    for p in t.parts() {
        denom = denom.mul(&unit_plus(t, p)?)?;
    }
    Ok(ChowClass::total_chern(z)
        .mul(&denom.inverse_unit()?)?
        .integrate())
}

/// Euler characteristic of the cover, `e(Z) + (d−1)·∫ c(Z)/∏(1+α_j)`.
pub fn euler_cover(t: &PartitionType) -> Result<i64> {
    let k = BigRational::from_integer((t.cover.degree as i64 - 1).into());
    let v = BigRational::from_integer(t.ambient().euler().into()) + k * twisted_integral(t)?;
    to_integer(&v, "e(Y)")
}

/// Euler characteristic of the branch divisor by inclusion–exclusion over its
/// strata; each stratum contributes `∫ c(Z) ∏_{j∈S} α_j/(1+α_j)`.
pub fn euler_branch(t: &PartitionType) -> Result<i64> {
    let m = t.len();
    if m > MAX_PARTS {
        return Err(Error::range("number of parts", m, "1..=20"));
    }
    let z = t.ambient();
    let mut factors = Vec::with_capacity(m);
    for p in t.parts() {
        let alpha = ChowClass::class_of(z, p)?;
        factors.push(alpha.mul(&unit_plus(t, p)?.inverse_unit()?)?);
    }
    // Depth-first over subsets; a product that is already zero stays zero.
    fn walk(
        factors: &[ChowClass],
        start: usize,
        acc: &ChowClass,
        size: usize,
        total: &mut BigRational,
    ) -> Result<()> {
        for j in start..factors.len() {
            let next = acc.mul(&factors[j])?;
            if next.is_zero() {
                continue;
            }
            let v = next.integrate();
            if size.is_multiple_of(2) {
                *total += v;
            } else {
                *total -= v;
            }
            walk(factors, j + 1, &next, size + 1, total)?;
        }
        Ok(())
    }
    let mut total = BigRational::zero();
    walk(&factors, 0, &ChowClass::total_chern(z), 0, &mut total)?;
    to_integer(&total, "e(D)")
}

/// Primitive middle Betti number `(−1)^n (d−1) ∫ c(Z)/∏(1+α_j)`.
pub fn primitive_betti(t: &PartitionType) -> Result<i64> {
    let k = BigRational::from_integer((t.cover.degree as i64 - 1).into());
    let mut v = k * twisted_integral(t)?;
    if t.ambient().dimension() % 2 == 1 {
        v = -v;
    }
    to_integer(&v, "b'")
}

/// `b' / (d−1)`; always an integer because the twisted integral is one.
pub fn betti_per_character(t: &PartitionType) -> Result<i64> {
    let v = twisted_integral(t)?;
    let s = if t.ambient().dimension() % 2 == 1 {
        -BigRational::one()
    } else {
        BigRational::one()
    };
    to_integer(&(v * s), "b'/(d-1)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multidegree::parse_parts;

    fn lines_type(s: &str) -> PartitionType {
        PartitionType::on_lines(parse_parts(s).unwrap()).unwrap()
    }

    #[test]
    fn cover_validation() {
        let z = Ambient::lines(2).unwrap();
        assert!(CoverData::new(z.clone(), 3, Multidegree::from([1, 1])).is_ok());
        assert!(CoverData::new(z.clone(), 3, Multidegree::from([1, 2])).is_err());
        assert!(CoverData::new(z.clone(), 1, Multidegree::from([1, 1])).is_err());
        assert!(CoverData::calabi_yau(z, 4).is_err());
        let p3 = CoverData::calabi_yau(Ambient::projective(3).unwrap(), 3).unwrap();
        assert_eq!(p3.base(), &Multidegree::from([2]));
        // d·L = (6) on P^3
        assert!(PartitionType::new(p3.clone(), vec![Multidegree::from([6])]).is_ok());
        assert!(PartitionType::new(p3, vec![Multidegree::from([3])]).is_err());
    }

    #[test]
    fn partition_validation() {
        let c = CoverData::triple_lines(2).unwrap();
        assert!(PartitionType::new(c.clone(), parse_parts("(3,3)+(0,0)").unwrap()).is_err());
        assert!(PartitionType::new(c.clone(), parse_parts("(4,3)+(-1,0)").unwrap()).is_err());
        assert!(PartitionType::new(c.clone(), parse_parts("(3,2)").unwrap()).is_err());
        assert!(PartitionType::new(c, parse_parts("(3,3,0)").unwrap()).is_err());
    }

    #[test]
    fn euler_numbers() {
        let t = lines_type("(3,3)");
        assert_eq!(euler_cover(&t), Ok(24));
        assert_eq!(euler_branch(&t), Ok(-6));
        assert_eq!(primitive_betti(&t), Ok(20));

        assert_eq!(euler_branch(&lines_type("(3,0)+(0,3)")), Ok(3));

        let t = lines_type("(3,3,0)+(0,0,3)");
        assert_eq!(euler_cover(&t), Ok(-12));
        assert_eq!(euler_branch(&t), Ok(18));
        assert_eq!(primitive_betti(&t), Ok(20));

        assert_eq!(primitive_betti(&lines_type("(3,3,3)")), Ok(164));
    }

    #[test]
    fn hurwitz_on_examples() {
        for s in [
            "(3,3)",
            "(2,1)+(1,1)+(0,1)",
            "(3,2,0)+(0,1,3)",
            "(1,1,1)+(2,2,2)",
        ] {
            let t = lines_type(s);
            let d = 3;
            assert_eq!(
                euler_cover(&t).unwrap(),
                d * t.ambient().euler() - (d - 1) * euler_branch(&t).unwrap(),
                "{s}"
            );
        }
    }

    #[test]
    fn betti_and_euler_agree() {
        let t = lines_type("(2,1,0)+(1,0,2)+(0,2,1)");
        let b = primitive_betti(&t).unwrap();
        let e = euler_cover(&t).unwrap();
        assert_eq!(b, -(e - 8));
        assert_eq!(betti_per_character(&t).unwrap() * 2, b);
    }
}
