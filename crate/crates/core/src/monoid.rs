//! Weights and the two ω-valuation monoids used throughout the crate.
//!
//! [`Monoid::Tropical`] is the min-plus semiring on `[0, ∞]` with the countably
//! infinite sum as valuation function; it is a product ω-valuation monoid.
//! [`Monoid::Liminf`] is `(ℝ ∪ {±∞}, sup, inf, liminf, −∞, ∞)` with a liminf that
//! ignores `∞` entries whenever some other value occurs; it only satisfies the
//! restricted distributivity of a generalized product ω-valuation monoid.
//!
//! All arithmetic is exact. Infinite sequences are restricted to the
//! ultimately periodic ones, see [`UltPeriodic`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

/// An extended rational number.
///
/// The derived order is the numeric one: `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Weight {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Weight {
    pub fn int(n: i64) -> Self {
        Weight::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        Weight::Finite(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Weight::Finite(_))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::NegInf => f.write_str("-inf"),
            Weight::PosInf => f.write_str("inf"),
            Weight::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Weight::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid weight literal `{0}`")]
pub struct ParseWeightError(pub String);

impl FromStr for Weight {
    type Err = ParseWeightError;

    /// Accepts `inf`, `+inf`, `-inf`, integers, fractions `p/q` and decimals `1.25`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseWeightError(s.to_string());
        let t = s.trim();
        match t {
            "inf" | "+inf" => return Ok(Weight::PosInf),
            "-inf" => return Ok(Weight::NegInf),
            _ => {}
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let digits = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
        let value = if let Some((n, d)) = body.split_once('/') {
            if !digits(n) || !digits(d) {
                return Err(err());
            }
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            BigRational::new(n.parse().map_err(|_| err())?, d)
        } else if let Some((i, frac)) = body.split_once('.') {
            if !digits(i) || !digits(frac) {
                return Err(err());
            }
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            let whole: BigInt = format!("{i}{frac}").parse().map_err(|_| err())?;
            BigRational::new(whole, scale)
        } else {
            if !digits(body) {
                return Err(err());
            }
            BigRational::from_integer(body.parse().map_err(|_| err())?)
        };
        Ok(Weight::Finite(if neg { -value } else { value }))
    }
}

/// Which distributivity law the monoid satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidKind {
    /// Val^ω distributes over all finite sums.
    Product,
    /// Val^ω distributes over finite sums only when, for all but finitely many
    /// positions, the summands are all in `{0, 1}` or all outside it.
    Generalized,
}

/// An ultimately periodic weight sequence `stem · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UltPeriodic {
    stem: Vec<Weight>,
    period: Vec<Weight>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the period of an ultimately periodic sequence must be non-empty")]
pub struct EmptyPeriod;

impl UltPeriodic {
    pub fn new(stem: Vec<Weight>, period: Vec<Weight>) -> Result<Self, EmptyPeriod> {
        if period.is_empty() {
            return Err(EmptyPeriod);
        }
        Ok(UltPeriodic { stem, period })
    }

    pub fn stem(&self) -> &[Weight] {
        &self.stem
    }

    pub fn period(&self) -> &[Weight] {
        &self.period
    }

    /// Element at position `i` of the infinite sequence.
    pub fn at(&self, i: usize) -> &Weight {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.period[(i - self.stem.len()) % self.period.len()]
        }
    }

    fn all(&self) -> impl Iterator<Item = &Weight> {
        self.stem.iter().chain(self.period.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown monoid `{0}` (expected `tropical` or `liminf`)")]
pub struct UnknownMonoid(pub String);

/// The concrete idempotent ω-valuation monoids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monoid {
    /// `([0, ∞], min, +, Σ, ∞, 0)`.
    Tropical,
    /// `(ℝ ∪ {±∞}, sup, inf, liminf, −∞, ∞)`.
    Liminf,
}

impl FromStr for Monoid {
    type Err = UnknownMonoid;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tropical" => Ok(Monoid::Tropical),
            "liminf" => Ok(Monoid::Liminf),
            other => Err(UnknownMonoid(other.to_string())),
        }
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Monoid {
    pub fn name(self) -> &'static str {
        match self {
            Monoid::Tropical => "tropical",
            Monoid::Liminf => "liminf",
        }
    }

    pub fn kind(self) -> MonoidKind {
        match self {
            Monoid::Tropical => MonoidKind::Product,
            Monoid::Liminf => MonoidKind::Generalized,
        }
    }

    pub fn zero(self) -> Weight {
        match self {
            Monoid::Tropical => Weight::PosInf,
            Monoid::Liminf => Weight::NegInf,
        }
    }

    pub fn one(self) -> Weight {
        match self {
            Monoid::Tropical => Weight::int(0),
            Monoid::Liminf => Weight::PosInf,
        }
    }

    pub fn is_zero(self, k: &Weight) -> bool {
        *k == self.zero()
    }

    pub fn is_one(self, k: &Weight) -> bool {
        *k == self.one()
    }

    /// Whether `k` belongs to the carrier set.
    pub fn contains(self, k: &Weight) -> bool {
        match self {
            Monoid::Tropical => match k {
                Weight::NegInf => false,
                Weight::Finite(r) => !r.is_negative(),
                Weight::PosInf => true,
            },
            Monoid::Liminf => true,
        }
    }

    pub fn plus(self, a: &Weight, b: &Weight) -> Weight {
        match self {
            Monoid::Tropical => a.min(b).clone(),
            Monoid::Liminf => a.max(b).clone(),
        }
    }

    pub fn times(self, a: &Weight, b: &Weight) -> Weight {
        match self {
            Monoid::Tropical => match (a, b) {
                (Weight::Finite(x), Weight::Finite(y)) => Weight::Finite(x + y),
                // the carrier has no −∞; ∞ absorbs
                _ => Weight::PosInf,
            },
            Monoid::Liminf => a.min(b).clone(),
        }
    }

    /// Sum of a finite family; the empty sum is `0`.
    pub fn sum<'a, I>(self, items: I) -> Weight
    where
        I: IntoIterator<Item = &'a Weight>,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, k| self.plus(&acc, k))
    }

    /// `a ≤ b` in the natural order of the idempotent monoid, i.e. `b + a = b`.
    pub fn natural_leq(self, a: &Weight, b: &Weight) -> bool {
        self.plus(b, a) == *b
    }

    /// Val^ω on an ultimately periodic sequence.
    pub fn val_omega(self, s: &UltPeriodic) -> Weight {
        match self {
            Monoid::Tropical => {
                if s.all().any(|k| *k == Weight::PosInf) {
                    return Weight::PosInf;
                }
                let zero = BigRational::zero();
                let periodic_zero = s
                    .period
                    .iter()
                    .all(|k| matches!(k, Weight::Finite(r) if r.is_zero()));
                if !periodic_zero {
                    // a strictly positive entry repeats forever: the series diverges
                    return Weight::PosInf;
                }
                let total = s.stem.iter().fold(zero, |acc, k| match k {
                    Weight::Finite(r) => acc + r,
                    _ => unreachable!("tropical stem holds finite weights here"),
                });
                Weight::Finite(total)
            }
            Monoid::Liminf => {
                if s.all().any(|k| *k == Weight::NegInf) {
                    return Weight::NegInf;
                }
                let min_finite = |ks: &[Weight]| ks.iter().filter(|k| k.is_finite()).min().cloned();
                if let Some(m) = min_finite(&s.period) {
                    // infinitely many non-∞ entries: the lim inf over them
                    return m;
                }
                // only the stem carries non-∞ entries (or none does)
                min_finite(&s.stem).unwrap_or(Weight::PosInf)
            }
        }
    }

    /// `Val^ω(k_0, …, k_n, 1, 1, …)`; the empty prefix yields `1`.
    pub fn val_omega_prefix(self, prefix: &[Weight]) -> Weight {
        let s = UltPeriodic {
            stem: prefix.to_vec(),
            period: vec![self.one()],
        };
        self.val_omega(&s)
    }

    /// Parses a weight literal and checks it belongs to the carrier.
    pub fn parse_weight(self, s: &str) -> Result<Weight, WeightError> {
        let k: Weight = s.parse()?;
        if !self.contains(&k) {
            return Err(WeightError::OutOfCarrier {
                weight: k,
                monoid: self,
            });
        }
        Ok(k)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error(transparent)]
    Parse(#[from] ParseWeightError),
    #[error("weight {weight} is not in the carrier of the {monoid} monoid")]
    OutOfCarrier { weight: Weight, monoid: Monoid },
}
