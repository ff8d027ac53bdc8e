use super::{BiPoly, Monomial};
use crate::error::{Error, Result};

/// A region of exponent space, used to query Newton polygons.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Region {
    /// Pairs with `m - m/k <= i <= m` and `j >= n - n/k`.
    Trapezium { m: u32, n: u32, k: u32 },
    /// Pairs with `lo <= i <= hi`.
    XBand { lo: u32, hi: u32 },
    /// Pairs with `i + j <= max`.
    TotalDegree { max: u32 },
}

impl Region {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Region::Trapezium { m, n, k } => {
                if k == 0 || m % k != 0 || n % k != 0 {
                    Err(Error::InvalidArgument(format!(
                        "trapezium needs k | m and k | n (m={}, n={}, k={})",
                        m, n, k
                    )))
                } else {
                    Ok(())
                }
            }
            Region::XBand { lo, hi } if lo > hi => Err(Error::InvalidArgument(format!(
                "empty x band [{}, {}]",
                lo, hi
            ))),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, mono: Monomial) -> bool {
        match *self {
            Region::Trapezium { m, n, k } => {
                mono.x >= m - m / k && mono.x <= m && mono.y >= n - n / k
            }
            Region::XBand { lo, hi } => (lo..=hi).contains(&mono.x),
            Region::TotalDegree { max } => mono.total() <= max,
        }
    }
}

/// True iff no term of `p` lies in `region`.
pub fn support_outside(p: &BiPoly, region: &Region) -> Result<bool> {
    region.validate()?;
    Ok(p.terms().all(|(m, _)| !region.contains(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::parse_poly;

    #[test]
    fn examples() {
        let f = make_field(5, 1, None).unwrap();
        let zero = BiPoly::zero(&f);
        assert!(support_outside(&zero, &Region::Trapezium { m: 2, n: 2, k: 2 }).unwrap());
        let p = parse_poly("x^2*y^2", &f).unwrap();
        assert!(!support_outside(&p, &Region::Trapezium { m: 2, n: 2, k: 2 }).unwrap());
        let p = parse_poly("y^5", &f).unwrap();
        assert!(support_outside(&p, &Region::XBand { lo: 1, hi: 10 }).unwrap());
    }

    #[test]
    fn invalid_regions() {
        let f = make_field(5, 1, None).unwrap();
        let p = BiPoly::x(&f);
        assert!(support_outside(&p, &Region::Trapezium { m: 3, n: 2, k: 2 }).is_err());
        assert!(support_outside(&p, &Region::XBand { lo: 3, hi: 2 }).is_err());
    }

    #[test]
    fn trapezium_boundaries() {
        let t = Region::Trapezium { m: 6, n: 3, k: 3 };
        assert!(t.contains(Monomial::new(4, 2)));
        assert!(!t.contains(Monomial::new(3, 2)));
        assert!(!t.contains(Monomial::new(4, 1)));
        assert!(!t.contains(Monomial::new(7, 2)));
        let total = Region::TotalDegree { max: 4 };
        assert!(total.contains(Monomial::new(2, 2)));
        assert!(!total.contains(Monomial::new(2, 3)));
    }
}
