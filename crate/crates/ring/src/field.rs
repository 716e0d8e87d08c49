use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Exact rationals.
pub type Q = BigRational;

/// Coefficient field. Implemented by [`Fp`] for a few fixed primes and by [`Q`].
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Whether elimination should avoid fractions (Bareiss-style updates).
    const FRACTION_FREE: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// Image of n/d, or `None` when d vanishes in the field.
    fn from_ratio(n: &BigInt, d: &BigInt) -> Option<Self>;
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
    fn spec() -> FieldSpec;

    fn from_q(q: &Q) -> Option<Self> {
        Self::from_ratio(q.numer(), q.denom())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.clone() * i)
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base.clone();
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "p")]
pub enum FieldSpec {
    Rational,
    Prime(u32),
}

/// Primes usable as `Fp<P>`; runtime dispatch goes through [`with_field!`].
pub const SUPPORTED_PRIMES: [u32; 5] = [65521, 32003, 40009, 1000003, 2147483647];

impl FieldSpec {
    pub const DEFAULT: FieldSpec = FieldSpec::Prime(65521);

    pub fn validate(self) -> Result<Self, crate::RingError> {
        match self {
            FieldSpec::Rational => Ok(self),
            FieldSpec::Prime(p) if SUPPORTED_PRIMES.contains(&p) => Ok(self),
            FieldSpec::Prime(p) => Err(crate::RingError::UnsupportedPrime(p)),
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => p as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl std::str::FromStr for FieldSpec {
    type Err = crate::RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        if lower == "q" || lower == "rational" || lower == "qq" {
            return Ok(FieldSpec::Rational);
        }
        let digits = lower
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("fp"))
            .unwrap_or(&lower);
        digits
            .parse::<u32>()
            .map_err(|_| crate::RingError::Parse(format!("bad field spec `{t}`")))
            .and_then(|p| FieldSpec::Prime(p).validate())
    }
}

/// Runs `$body` with `$F` bound to the concrete field type of `$spec`.
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $F:ident => $body:expr) => {{
        match $spec {
            $crate::FieldSpec::Rational => {
                type $F = $crate::Q;
                $body
            }
            $crate::FieldSpec::Prime(65521) => {
                type $F = $crate::Fp<65521>;
                $body
            }
            $crate::FieldSpec::Prime(32003) => {
                type $F = $crate::Fp<32003>;
                $body
            }
            $crate::FieldSpec::Prime(40009) => {
                type $F = $crate::Fp<40009>;
                $body
            }
            $crate::FieldSpec::Prime(1000003) => {
                type $F = $crate::Fp<1000003>;
                $body
            }
            $crate::FieldSpec::Prime(2147483647) => {
                type $F = $crate::Fp<2147483647>;
                $body
            }
            $crate::FieldSpec::Prime(p) => panic!("unsupported prime {p}"),
        }
    }};
}

/// Prime field element, stored reduced in `0..P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    #[inline]
    pub const fn new(v: u32) -> Self {
        Fp(v % P)
    }

    #[inline]
    pub const fn value(self) -> u32 {
        self.0
    }

    /// Signed representative in (−P/2, P/2].
    pub fn signed(self) -> i64 {
        let v = self.0 as i64;
        if v > (P as i64) / 2 {
            v - P as i64
        } else {
            v
        }
    }

    #[inline]
    fn inv_raw(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // Extended Euclid on i64 is cheaper than exponentiation.
        let (mut a, mut b) = (self.0 as i64, P as i64);
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Some(Fp(x0.rem_euclid(P as i64) as u32))
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        let s = self.0 as u64 + o.0 as u64;
        Fp(if s >= P as u64 { s - P as u64 } else { s } as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        if self.0 >= o.0 {
            Fp(self.0 - o.0)
        } else {
            Fp((self.0 as u64 + P as u64 - o.0 as u64) as u32)
        }
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

macro_rules! fp_ref_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident),*) => {$(
        impl<'a, const P: u32> $tr<&'a Fp<P>> for Fp<P> {
            type Output = Fp<P>;
            #[inline]
            fn $m(self, o: &'a Fp<P>) -> Fp<P> {
                $tr::$m(self, *o)
            }
        }
        impl<const P: u32> $atr for Fp<P> {
            #[inline]
            fn $am(&mut self, o: Fp<P>) {
                *self = $tr::$m(*self, o);
            }
        }
    )*};
}
fp_ref_ops!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl<const P: u32> Field for Fp<P> {
    const FRACTION_FREE: bool = false;

    #[inline]
    fn zero() -> Self {
        Fp(0)
    }
    #[inline]
    fn one() -> Self {
        Fp(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        self.inv_raw()
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }
    fn from_ratio(n: &BigInt, d: &BigInt) -> Option<Self> {
        let p = BigInt::from(P);
        let reduce = |x: &BigInt| -> Self {
            let r = ((x % &p) + &p) % &p;
            Fp(r.to_u32().expect("residue fits"))
        };
        reduce(d).inv().map(|di| reduce(n) * di)
    }
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }
    fn spec() -> FieldSpec {
        FieldSpec::Prime(P)
    }
}

impl Field for Q {
    const FRACTION_FREE: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(v: i64) -> Self {
        Q::from_integer(BigInt::from(v))
    }
    fn from_ratio(n: &BigInt, d: &BigInt) -> Option<Self> {
        if Zero::is_zero(d) {
            None
        } else {
            Some(Q::new(n.clone(), d.clone()))
        }
    }
    /// Small integers keep exact computations fast.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Q::from_integer(BigInt::from(rng.gen_range(-9i64..=9)))
    }
    fn spec() -> FieldSpec {
        FieldSpec::Rational
    }
}

/// Parses an integer or `n/d` literal.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Whether any denominator of `q` is divisible by `p`.
pub fn q_bad_for_prime(q: &Q, p: u32) -> bool {
    (q.denom() % BigInt::from(p)).is_zero()
}
