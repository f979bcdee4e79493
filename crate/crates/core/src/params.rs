use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::error::{invalid, Error, Result};

/// An exact non-negative rational, kept in lowest terms.
///
/// Probabilities and the covered fraction are rationals so that divisibility
/// conditions such as `1/(2p)` being integral are decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const ONE: Ratio = Ratio { num: 1, den: 1 };
    pub const HALF: Ratio = Ratio { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(invalid!("zero denominator in {num}/0"));
        }
        let g = gcd(num, den).max(1);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `self * n` when it is an integer.
    pub fn times_integer(self, n: u64) -> Option<u64> {
        let prod = (self.num as u128) * (n as u128);
        prod.is_multiple_of(self.den as u128).then(|| (prod / self.den as u128) as u64)
    }

    pub fn is_at_most(self, other: Ratio) -> bool {
        (self.num as u128) * (other.den as u128) <= (other.num as u128) * (self.den as u128)
    }

    /// Draws one Bernoulli(self) bit. Requires `self <= 1`.
    pub fn bernoulli<R: Rng + ?Sized>(self, rng: &mut R) -> bool {
        rng.gen_range(0..self.den) < self.num
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Ratio {
    type Err = Error;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse = |part: &str| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| invalid!("not a rational: {s:?}"))
        };
        match s.split_once('/') {
            Some((num, den)) => Ratio::new(parse(num)?, parse(den)?),
            None => Ratio::new(parse(s)?, 1),
        }
    }
}

/// Instance-size parameters shared by every distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Params {
    /// Universe size.
    pub n: usize,
    /// Hyperedge arity.
    pub t: usize,
    /// Per-label noise rate.
    pub p: Ratio,
    /// Fraction of the universe covered by the hypermatching.
    pub alpha: Ratio,
}

impl Params {
    /// Validated constructor: `t >= 2`, `p <= 1`, `alpha` in (0, 1] and
    /// `alpha * n / t` a positive integer (zero only for the empty universe).
    pub fn new(n: usize, t: usize, p: Ratio, alpha: Ratio) -> Result<Self> {
        let params = Self { n, t, p, alpha };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t < 2 {
            return Err(invalid!("hyperedge arity t = {} must be at least 2", self.t));
        }
        if !self.p.is_at_most(Ratio::ONE) {
            return Err(invalid!("p = {} exceeds 1", self.p));
        }
        if self.alpha.num() == 0 || !self.alpha.is_at_most(Ratio::ONE) {
            return Err(invalid!("alpha = {} must lie in (0, 1]", self.alpha));
        }
        let covered = self
            .alpha
            .times_integer(self.n as u64)
            .ok_or_else(|| invalid!("alpha * n = {} * {} is not an integer", self.alpha, self.n))?;
        if covered % self.t as u64 != 0 {
            return Err(invalid!(
                "alpha * n / t = {covered} / {} is not an integer",
                self.t
            ));
        }
        if covered == 0 && self.n != 0 {
            return Err(invalid!("alpha * n / t must be positive"));
        }
        Ok(())
    }

    /// Number of hyperedges `alpha * n / t`.
    pub fn k(&self) -> usize {
        self.alpha.times_integer(self.n as u64).unwrap_or(0) as usize / self.t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_parses_and_reduces() {
        let r: Ratio = "2/8".parse().unwrap();
        assert_eq!((r.num(), r.den()), (1, 4));
        assert_eq!(r.to_string(), "1/4");
        assert_eq!("1".parse::<Ratio>().unwrap(), Ratio::ONE);
        assert!("1/0".parse::<Ratio>().is_err());
        assert!("0.25".parse::<Ratio>().is_err());
    }

    #[test]
    fn params_require_integral_edge_count() {
        let half = Ratio::HALF;
        assert_eq!(Params::new(64, 2, half, half).unwrap().k(), 16);
        assert!(Params::new(10, 3, half, half).is_err());
        assert!(Params::new(8, 1, half, half).is_err());
        assert!(Params::new(8, 2, Ratio::new(3, 2).unwrap(), half).is_err());
        assert!(Params::new(8, 2, half, Ratio::ZERO).is_err());
        assert_eq!(Params::new(0, 2, half, Ratio::ONE).unwrap().k(), 0);
    }
}
