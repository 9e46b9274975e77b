//! Exact arithmetic in Q(ζ₈) on the power basis {1, ζ, ζ², ζ³}, ζ⁴ = −1.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected a rational value, found {0}")]
pub struct NotRational(pub String);

/// c0 + c1·ζ₈ + c2·ζ₈² + c3·ζ₈³ with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo8 {
    c: [BigRational; 4],
}

impl Cyclo8 {
    pub fn new(c: [BigRational; 4]) -> Self {
        Cyclo8 { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyclo8 {
            c: c.map(|v| BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn zero() -> Self {
        Self::from_ints([0; 4])
    }

    pub fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }

    pub fn rational(r: BigRational) -> Self {
        let z = BigRational::zero();
        Cyclo8 {
            c: [r, z.clone(), z.clone(), z],
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ints([n, 0, 0, 0])
    }

    /// ζ₈^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_ints(c)
    }

    /// Σ counts[k]·ζ₈^k.
    pub fn from_zeta_counts(counts: &[i64; 8]) -> Self {
        Self::from_ints([
            counts[0] - counts[4],
            counts[1] - counts[5],
            counts[2] - counts[6],
            counts[3] - counts[7],
        ])
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclo8 {
            c: self.c.clone().map(|x| x * r),
        }
    }

    /// Complex conjugation under ζ₈ ↦ e^{iπ/4}: ζ ↦ ζ⁻¹ = −ζ³.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.c.clone();
        Cyclo8 { c: [a, -d, -c, -b] }
    }

    pub fn as_rational(&self) -> Result<BigRational, NotRational> {
        if self.is_rational() {
            Ok(self.c[0].clone())
        } else {
            Err(NotRational(self.to_string()))
        }
    }

    pub fn as_integer(&self) -> Result<BigInt, NotRational> {
        let r = self.as_rational()?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(NotRational(self.to_string()))
        }
    }

    pub fn approx(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let f: Vec<f64> = self
            .c
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect();
        // ζ = (1+i)/√2, ζ² = i, ζ³ = (−1+i)/√2
        Complex64::new(f[0] + h * f[1] - h * f[3], h * f[1] + f[2] + h * f[3])
    }
}

impl Default for Cyclo8 {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &Cyclo8 {
    type Output = Cyclo8;
    fn add(self, o: &Cyclo8) -> Cyclo8 {
        Cyclo8 {
            c: std::array::from_fn(|i| &self.c[i] + &o.c[i]),
        }
    }
}

impl Add for Cyclo8 {
    type Output = Cyclo8;
    fn add(self, o: Cyclo8) -> Cyclo8 {
        &self + &o
    }
}

impl AddAssign<&Cyclo8> for Cyclo8 {
    fn add_assign(&mut self, o: &Cyclo8) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
    }
}

impl Sub for &Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, o: &Cyclo8) -> Cyclo8 {
        Cyclo8 {
            c: std::array::from_fn(|i| &self.c[i] - &o.c[i]),
        }
    }
}

impl Sub for Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, o: Cyclo8) -> Cyclo8 {
        &self - &o
    }
}

impl Neg for &Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8 {
            c: std::array::from_fn(|i| -&self.c[i]),
        }
    }
}

impl Neg for Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        -&self
    }
}

impl Mul for &Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, o: &Cyclo8) -> Cyclo8 {
        let mut acc: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let prod = a * b;
                let k = i + j;
                if k < 4 {
                    acc[k] += prod;
                } else {
                    acc[k - 4] -= prod;
                }
            }
        }
        Cyclo8 { c: acc }
    }
}

impl Mul for Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, o: Cyclo8) -> Cyclo8 {
        &self * &o
    }
}

impl fmt::Debug for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo8({self})")
    }
}

/// Renders nonzero terms as `a + b·z8 + c·z8^2 + d·z8^3`, with rationals as
/// `n/d`. Zero renders as `0`.
impl fmt::Display for Cyclo8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const BASIS: [&str; 4] = ["", "z8", "z8^2", "z8^3"];
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(BASIS[k])?;
            } else {
                write!(f, "{mag}·{}", BASIS[k])?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Accumulator for sums of eighth roots of unity: counts per power of ζ₈.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ZetaCounts(pub [i64; 8]);

impl ZetaCounts {
    #[inline]
    pub fn push(&mut self, k: u32) {
        self.0[(k & 7) as usize] += 1;
    }

    pub fn merge(mut self, other: ZetaCounts) -> ZetaCounts {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
        self
    }

    pub fn to_cyclo(self) -> Cyclo8 {
        Cyclo8::from_zeta_counts(&self.0)
    }
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}


#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn cyclo() -> impl Strategy<Value = Cyclo8> {
        (prop::array::uniform4(-20i64..20), 1i64..7)
            .prop_map(|(c, d)| Cyclo8::from_ints(c).scale(&ratio(1, d)))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&a * &Cyclo8::one(), a);
        }

        #[test]
        fn conjugation_is_an_involutive_homomorphism(a in cyclo(), b in cyclo()) {
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
            prop_assert_eq!(a.conj().conj(), a.clone());
            let norm = &a * &a.conj();
            prop_assert_eq!(norm.conj(), norm);
        }

        #[test]
        fn approx_is_additive_and_multiplicative(a in cyclo(), b in cyclo()) {
            prop_assert!(((&a + &b).approx() - (a.approx() + b.approx())).norm() < 1e-9);
            prop_assert!(((&a * &b).approx() - a.approx() * b.approx()).norm() < 1e-8);
        }

        #[test]
        fn zeta_counts_match_powers(ks in prop::collection::vec(0u32..8, 0..40)) {
            let mut acc = ZetaCounts::default();
            let mut direct = Cyclo8::zero();
            for &k in &ks {
                acc.push(k);
                direct += &Cyclo8::zeta_pow(k as i64);
            }
            prop_assert_eq!(acc.to_cyclo(), direct);
        }
    }
}
