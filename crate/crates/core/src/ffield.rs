//! The finite field F_q, q = p^{2t}, for primes p ≡ 3 (mod 4).
//!
//! Elements are stored as integers `enc ∈ [0, q)` holding the base-p digits
//! of the coefficient vector of a polynomial residue modulo a fixed monic
//! irreducible of degree 2t. Multiplication goes through a full discrete-log
//! table built once from a canonical primitive element, so every character
//! evaluation downstream is a table lookup.

use std::fmt;

use thiserror::Error;

/// Default upper bound on q. Exact ₃F₂ double sums and brute k₄ stay well
/// inside this; k₃-only runs may raise it.
pub const DEFAULT_MAX_Q: u64 = 1 << 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} is not congruent to 3 mod 4")]
    NotThreeModFour(u64),
    #[error("exponent t must be positive")]
    ZeroExponent,
    #[error("q = {p}^{exp} exceeds the configured bound {bound}")]
    TooLarge { p: u64, exp: u32, bound: u64 },
    #[error("{0} is not an even power of a prime")]
    NotEvenPrimePower(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("discrete log of zero is undefined")]
    ZeroLog,
    #[error("encoding {enc} is not an element of F_{q}")]
    OutOfRange { enc: u64, q: u64 },
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Validated parameters `q = p^{2t}` with `p ≡ 3 (mod 4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub t: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(p: u64, t: u32) -> Result<Self, FieldError> {
        Self::with_bound(p, t, DEFAULT_MAX_Q)
    }

    pub fn with_bound(p: u64, t: u32, max_q: u64) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p % 4 != 3 {
            return Err(FieldError::NotThreeModFour(p));
        }
        if t == 0 {
            return Err(FieldError::ZeroExponent);
        }
        let too_large = FieldError::TooLarge {
            p,
            exp: 2 * t,
            bound: max_q,
        };
        let q = p.checked_pow(2 * t).ok_or(too_large.clone())?;
        if q > max_q || q > u32::MAX as u64 {
            return Err(too_large);
        }
        Ok(PrimePower { p, t, q })
    }

    /// Recover (p, t) from q, if q = p^{2t} with p ≡ 3 (mod 4).
    pub fn from_q(q: u64, max_q: u64) -> Result<Self, FieldError> {
        let p = prime_factors(q).first().copied().unwrap_or(q);
        let mut e = 0u32;
        let mut rest = q;
        while rest > 1 && rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 || !is_prime(p) || e % 2 == 1 {
            return Err(FieldError::NotEvenPrimePower(q));
        }
        Self::with_bound(p, e / 2, max_q)
    }

    pub fn degree(&self) -> usize {
        2 * self.t as usize
    }

    /// `(-p)^t`.
    pub fn neg_p_pow_t(&self) -> i64 {
        let v = (self.p as i64).pow(self.t);
        if self.t % 2 == 1 {
            -v
        } else {
            v
        }
    }

    /// ρ = −(−p)^t, the common value of J(χ₄,χ₄) and J(χ₄,φ).
    pub fn rho(&self) -> i64 {
        -self.neg_p_pow_t()
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, 2 * self.t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn enc(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Unchecked: callers guarantee i < q.
    pub(crate) fn from_index(i: usize) -> Self {
        FieldElement(i as u32)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Dense polynomial arithmetic over F_p, used only while constructing the
/// field (modulus search, primitive element search).
mod poly {
    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        pow_mod(a, p - 2, p)
    }

    fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
        let mut r = 1 % m;
        b %= m;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        r
    }

    /// Remainder of `a` modulo `m` (m nonzero, arbitrary leading coefficient).
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        trim(&mut a);
        let mut m = m.to_vec();
        trim(&mut m);
        let lead_inv = inv_mod(*m.last().expect("nonzero modulus"), p);
        while a.len() >= m.len() && !a.is_empty() {
            let c = a[a.len() - 1] * lead_inv % p;
            let shift = a.len() - m.len();
            for (i, &mi) in m.iter().enumerate() {
                a[shift + i] = (a[shift + i] + p - c * mi % p) % p;
            }
            trim(&mut a);
        }
        a
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `a·b mod m` where `m` is monic of degree n and a, b have length n.
    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let n = m.len() - 1;
        let mut prod = vec![0u64; 2 * n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (n..2 * n).rev() {
            let c = prod[k];
            if c != 0 {
                for i in 0..n {
                    prod[k - n + i] = (prod[k - n + i] + p - c * m[i] % p) % p;
                }
                prod[k] = 0;
            }
        }
        prod.truncate(n);
        prod
    }

    pub fn pow_mod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let n = m.len() - 1;
        let mut r = vec![0u64; n];
        r[0] = 1;
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        r
    }

    /// Ben-Or style test: monic `f` of degree n is irreducible iff
    /// gcd(f, x^{p^i} − x) = 1 for 1 ≤ i ≤ n/2.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let mut x = vec![0u64; n];
        x[1] = 1;
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = pow_mod_poly(&xp, p, f, p);
            let mut d = xp.clone();
            d[1] = (d[1] + p - 1) % p;
            if gcd(f, &d, p).len() > 1 {
                return false;
            }
        }
        true
    }
}

/// The field F_q together with its canonical primitive element and
/// discrete-log tables. Immutable after construction.
#[derive(Clone)]
pub struct FieldCtx {
    pp: PrimePower,
    /// Monic modulus, coefficients low degree first (length 2t + 1).
    modulus: Vec<u64>,
    pow_p: Vec<u32>,
    g: FieldElement,
    dlog: Vec<u32>,
    exp: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("pp", &self.pp)
            .field("modulus", &self.modulus)
            .field("g", &self.g)
            .finish()
    }
}

pub fn build_field(p: u64, t: u32) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(PrimePower::new(p, t)?)
}

pub fn build_field_bounded(p: u64, t: u32, max_q: u64) -> Result<FieldCtx, FieldError> {
    FieldCtx::new(PrimePower::with_bound(p, t, max_q)?)
}

impl FieldCtx {
    pub fn new(pp: PrimePower) -> Result<Self, FieldError> {
        let p = pp.p;
        let n = pp.degree();
        let q = pp.q;
        let modulus = smallest_irreducible(p, n);
        let pow_p: Vec<u32> = (0..n).map(|i| p.pow(i as u32) as u32).collect();

        let digits = |e: u64| -> Vec<u64> { (0..n).map(|i| (e / p.pow(i as u32)) % p).collect() };
        let factors = prime_factors(q - 1);
        let g_enc = (2..q)
            .find(|&e| {
                let v = digits(e);
                factors
                    .iter()
                    .all(|&l| poly::pow_mod_poly(&v, (q - 1) / l, &modulus, p) != one_poly(n))
            })
            .expect("F_q^* is cyclic, so a generator exists");

        let g_digits = digits(g_enc);
        let mut dlog = vec![u32::MAX; q as usize];
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut cur = one_poly(n);
        for k in 0..(q - 1) as u32 {
            let e = cur
                .iter()
                .zip(&pow_p)
                .map(|(&c, &w)| c as u32 * w)
                .sum::<u32>();
            debug_assert_eq!(dlog[e as usize], u32::MAX, "generator order below q-1");
            dlog[e as usize] = k;
            exp.push(e);
            cur = poly::mul_mod(&cur, &g_digits, &modulus, p);
        }
        Ok(FieldCtx {
            pp,
            modulus,
            pow_p,
            g: FieldElement(g_enc as u32),
            dlog,
            exp,
        })
    }

    pub fn prime_power(&self) -> PrimePower {
        self.pp
    }

    pub fn p(&self) -> u64 {
        self.pp.p
    }

    pub fn q(&self) -> u64 {
        self.pp.q
    }

    pub fn size(&self) -> usize {
        self.pp.q as usize
    }

    /// Monic modulus polynomial, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.g
    }

    pub fn element(&self, enc: u64) -> Result<FieldElement, FieldError> {
        if enc >= self.q() {
            return Err(FieldError::OutOfRange { enc, q: self.q() });
        }
        Ok(FieldElement(enc as u32))
    }

    /// Element with the given F_p coefficients (low degree first).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let p = self.pp.p;
        let e = coeffs
            .iter()
            .zip(&self.pow_p)
            .map(|(&c, &w)| (c % p) as u32 * w)
            .sum();
        FieldElement(e)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let p = self.pp.p as u32;
        self.pow_p.iter().map(|&w| ((x.0 / w) % p) as u64).collect()
    }

    /// All q elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q() as u32).map(FieldElement)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.pp.p as u32;
        let (mut a, mut b) = (x.0, y.0);
        let mut r = 0;
        for &w in &self.pow_p {
            r += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
        }
        FieldElement(r)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        let p = self.pp.p as u32;
        let mut a = x.0;
        let mut r = 0;
        for &w in &self.pow_p {
            r += ((p - a % p) % p) * w;
            a /= p;
        }
        FieldElement(r)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.pp.p as u32;
        let (mut a, mut b) = (x.0, y.0);
        let mut r = 0;
        for &w in &self.pow_p {
            r += ((a % p + p - b % p) % p) * w;
            a /= p;
            b /= p;
        }
        FieldElement(r)
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.is_zero() || y.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.q() - 1;
        let k = (self.dlog[x.index()] as u64 + self.dlog[y.index()] as u64) % n;
        FieldElement(self.exp[k as usize])
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let n = self.q() - 1;
        let k = (n - self.dlog[x.index()] as u64) % n;
        Ok(FieldElement(self.exp[k as usize]))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.is_zero() {
            return FieldElement::ZERO;
        }
        let n = self.q() - 1;
        let k = (self.dlog[x.index()] as u64 % n) * (e % n) % n;
        FieldElement(self.exp[k as usize])
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.pp.p)
    }

    pub fn dlog(&self, x: FieldElement) -> Result<u64, FieldError> {
        if x.is_zero() {
            return Err(FieldError::ZeroLog);
        }
        Ok(self.dlog[x.index()] as u64)
    }

    /// Unchecked log for hot loops; `None` for zero.
    #[inline]
    pub fn log_of(&self, x: FieldElement) -> Option<u32> {
        let k = self.dlog[x.index()];
        (k != u32::MAX).then_some(k)
    }

    /// g^k.
    pub fn exp(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % (self.q() - 1)) as usize])
    }

    pub fn minus_one(&self) -> FieldElement {
        self.neg(FieldElement::ONE)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElement) -> Result<u64, FieldError> {
        let k = self.dlog(x)?;
        Ok((self.q() - 1) / num_integer::gcd(k, self.q() - 1))
    }

    /// Every generator of F_q^*, in increasing order of discrete log.
    pub fn primitive_elements(&self) -> Vec<FieldElement> {
        let n = self.q() - 1;
        (1..n)
            .filter(|&k| num_integer::gcd(k, n) == 1)
            .map(|k| self.exp(k))
            .collect()
    }
}

fn one_poly(n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    v[0] = 1;
    v
}

/// Lexicographically smallest monic irreducible of degree n over F_p, with
/// coefficient vectors compared from the constant term upward.
fn smallest_irreducible(p: u64, n: usize) -> Vec<u64> {
    let total = p.pow(n as u32);
    for idx in 0..total {
        // c0 is the most significant position in the lexicographic order
        let mut f = vec![0u64; n + 1];
        let mut rest = idx;
        for i in (0..n).rev() {
            f[i] = rest % p;
            rest /= p;
        }
        f[n] = 1;
        if f[0] != 0 && poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

/// True when f has no root in F_p (monic, low degree first).
pub fn has_no_prime_field_root(f: &[u64], p: u64) -> bool {
    (0..p).all(|x| {
        let v = f.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p);
        v != 0
    })
}

/// gcd(f, x^{p^i} − x) = 1 for every 1 ≤ i ≤ deg(f)/2.
pub fn passes_gcd_irreducibility(f: &[u64], p: u64) -> bool {
    poly::is_irreducible(f, p)
}
