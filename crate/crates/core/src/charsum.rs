//! Multiplicative characters of F_q and the character sums built from them:
//! Jacobi sums, Greene binomials, Greene's ₃F₂ (double-sum and character-sum
//! forms), the H-indicator, the single and double sums used in the clique
//! counts, and Weil-estimate checks.
//!
//! Characters of order dividing 8 are pinned by χ(g) = ζ₈^e, so χ₈(g) = ζ₈ and
//! χ₄(g) = ζ₈² = i. Their sums are accumulated exactly as counts per power of
//! ζ₈ and only turned into [`Cyclo8`] at the end.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use thiserror::Error;

use crate::cyclo::{Cyclo8, NotRational, ZetaCounts};
use crate::ffield::{FieldCtx, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharSumError {
    #[error("character {0} is not a power of chi4")]
    NotChi4Power(MultChar),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("character order {0} does not divide 8 or is trivial")]
    BadOrder(u32),
    #[error("H-indicator produced {0}, expected 0 or 1")]
    IndicatorAlarm(String),
    #[error(transparent)]
    NotRational(#[from] NotRational),
}

/// χ with χ(g^k) = ζ₈^{e·k}, extended by χ(0) = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultChar(u8);

impl MultChar {
    pub const EPSILON: MultChar = MultChar(0);
    pub const CHI8: MultChar = MultChar(1);
    pub const CHI4: MultChar = MultChar(2);
    pub const PHI: MultChar = MultChar(4);
    pub const CHI4_BAR: MultChar = MultChar(6);

    pub fn new(e: i64) -> Self {
        MultChar(e.rem_euclid(8) as u8)
    }

    /// χ₄^t.
    pub fn chi4_pow(t: i64) -> Self {
        Self::new(2 * t)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn conj(self) -> Self {
        Self::new(-(self.0 as i64))
    }

    pub fn is_chi4_power(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn order(self) -> u32 {
        8 / num_integer::gcd(self.0 as u32, 8)
    }

    /// Exponent k with χ(x) = ζ₈^k, or None when x = 0.
    #[inline]
    pub fn zeta_exp(self, ctx: &FieldCtx, x: FieldElement) -> Option<u32> {
        ctx.log_of(x).map(|k| (self.0 as u32 * (k & 7)) & 7)
    }

    /// The same character as a [`GeneralChar`] of F_q.
    pub fn to_general(self, q: u64) -> GeneralChar {
        GeneralChar::new(self.0 as u64 * ((q - 1) / 8), q)
    }
}

impl Mul for MultChar {
    type Output = MultChar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: MultChar) -> MultChar {
        MultChar::new(self.0 as i64 + o.0 as i64)
    }
}

impl Mul for GeneralChar {
    type Output = GeneralChar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: GeneralChar) -> GeneralChar {
        GeneralChar {
            j: (self.j + o.j) % self.modulus,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for MultChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("eps"),
            2 => f.write_str("chi4"),
            4 => f.write_str("phi"),
            6 => f.write_str("chi4^3"),
            1 => f.write_str("chi8"),
            e => write!(f, "chi8^{e}"),
        }
    }
}

/// χ_j(g^k) = exp(2πi·jk/(q−1)); used for the float cross-checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneralChar {
    j: u64,
    modulus: u64,
}

impl GeneralChar {
    pub fn new(j: u64, q: u64) -> Self {
        GeneralChar {
            j: j % (q - 1),
            modulus: q - 1,
        }
    }

    pub fn index(self) -> u64 {
        self.j
    }

    pub fn conj(self) -> Self {
        GeneralChar {
            j: (self.modulus - self.j) % self.modulus,
            modulus: self.modulus,
        }
    }
}

pub fn char_value(ctx: &FieldCtx, c: MultChar, x: FieldElement) -> Cyclo8 {
    match c.zeta_exp(ctx, x) {
        Some(k) => Cyclo8::zeta_pow(k as i64),
        None => Cyclo8::zero(),
    }
}

/// J(A, B) = Σ_x A(x)·B(1−x).
pub fn jacobi_sum(ctx: &FieldCtx, a: MultChar, b: MultChar) -> Cyclo8 {
    let mut acc = ZetaCounts::default();
    for x in ctx.elements() {
        let one_minus = ctx.sub(FieldElement::ONE, x);
        if let (Some(u), Some(v)) = (a.zeta_exp(ctx, x), b.zeta_exp(ctx, one_minus)) {
            acc.push(u + v);
        }
    }
    acc.to_cyclo()
}

/// Greene's binomial (A choose B) = B(−1)/q · J(A, B̄).
pub fn binom(ctx: &FieldCtx, a: MultChar, b: MultChar) -> Cyclo8 {
    let sign = char_value(ctx, b, ctx.minus_one());
    let j = jacobi_sum(ctx, a, b.conj());
    (&sign * &j).scale(&BigRational::new(BigInt::one(), BigInt::from(ctx.q())))
}

/// Parameters (A, B, C; D, E) of a ₃F₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HyperParams {
    pub a: MultChar,
    pub b: MultChar,
    pub c: MultChar,
    pub d: MultChar,
    pub e: MultChar,
}

impl HyperParams {
    pub fn new(a: MultChar, b: MultChar, c: MultChar, d: MultChar, e: MultChar) -> Self {
        HyperParams { a, b, c, d, e }
    }

    /// (χ₄^{t1}, χ₄^{t2}, χ₄^{t3}; χ₄^{t4}, χ₄^{t5}).
    pub fn chi4_powers(t: [i64; 5]) -> Self {
        let [a, b, c, d, e] = t.map(MultChar::chi4_pow);
        HyperParams { a, b, c, d, e }
    }

    /// The parameters of the k₄ formula: (χ₄, χ₄, χ₄³; ε, ε).
    pub fn k4_term() -> Self {
        Self::chi4_powers([1, 1, 3, 0, 0])
    }

    pub fn as_array(&self) -> [MultChar; 5] {
        [self.a, self.b, self.c, self.d, self.e]
    }
}

/// The constant relating the raw double sum to Greene's ₃F₂ at the
/// parameters used here: ₃F₂ = raw / q². Pinned by cross-validation against
/// the character-sum definition; every sign prefactor is 1 because all
/// parameters are powers of χ₄ and χ₄(−1) = 1.
pub fn hyper_normalization(q: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(q) * BigInt::from(q))
}

/// Σ_{x,y} AĒ(x)·C̄E(1−x)·B(y)·B̄D(1−y)·Ā(x−λy), exactly.
pub fn hyper3f2_raw(ctx: &FieldCtx, params: &HyperParams, lambda: FieldElement) -> Cyclo8 {
    let HyperParams { a, b, c, d, e } = *params;
    let ax = a * e.conj();
    let a1x = c.conj() * e;
    let by = b;
    let b1y = b.conj() * d;
    let a_bar = a.conj();

    // y-side factor and λy for every y
    let y_terms: Vec<(u32, FieldElement)> = ctx
        .elements()
        .filter_map(|y| {
            let u = by.zeta_exp(ctx, y)?;
            let v = b1y.zeta_exp(ctx, ctx.sub(FieldElement::ONE, y))?;
            Some((u + v, ctx.mul(lambda, y)))
        })
        .collect();

    let xs: Vec<FieldElement> = ctx.elements().collect();
    xs.par_iter()
        .fold(ZetaCounts::default, |mut acc, &x| {
            let Some(u) = ax.zeta_exp(ctx, x) else {
                return acc;
            };
            let Some(v) = a1x.zeta_exp(ctx, ctx.sub(FieldElement::ONE, x)) else {
                return acc;
            };
            let base = u + v;
            for &(w, ly) in &y_terms {
                if let Some(z) = a_bar.zeta_exp(ctx, ctx.sub(x, ly)) {
                    acc.push(base + w + z);
                }
            }
            acc
        })
        .reduce(ZetaCounts::default, ZetaCounts::merge)
        .to_cyclo()
}

/// Greene's ₃F₂(A,B,C; D,E | λ) for parameters that are powers of χ₄.
pub fn hyper3f2_exact(
    ctx: &FieldCtx,
    params: &HyperParams,
    lambda: FieldElement,
) -> Result<Cyclo8, CharSumError> {
    if let Some(bad) = params.as_array().into_iter().find(|c| !c.is_chi4_power()) {
        return Err(CharSumError::NotChi4Power(bad));
    }
    Ok(hyper3f2_raw(ctx, params, lambda).scale(&hyper_normalization(ctx.q())))
}

/// Float evaluation of Greene's definition
/// q/(q−1) · Σ_χ (A₀χ choose χ)(A₁χ choose B₁χ)(A₂χ choose B₂χ) χ(λ).
pub fn hyper3f2_float(ctx: &FieldCtx, params: [GeneralChar; 5], lambda: FieldElement) -> Complex64 {
    let Some(lam_log) = ctx.log_of(lambda) else {
        return Complex64::new(0.0, 0.0);
    };
    let n = ctx.q() - 1;
    let roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    // (log x, log(1−x)) for x ∉ {0, 1}
    let logs: Vec<(u64, u64)> = ctx
        .elements()
        .filter_map(|x| {
            let lx = ctx.log_of(x)?;
            let l1 = ctx.log_of(ctx.sub(FieldElement::ONE, x))?;
            Some((lx as u64, l1 as u64))
        })
        .collect();
    let half = n / 2;
    let q = ctx.q() as f64;
    let jacobi = |a: u64, b: u64| -> Complex64 {
        logs.iter()
            .map(|&(lx, l1)| roots[((a * lx + b * l1) % n) as usize])
            .sum()
    };
    let binom = |a: u64, b: u64| -> Complex64 {
        // B(−1) = ω^{b(q−1)/2}
        roots[((b * half) % n) as usize] * jacobi(a, (n - b) % n) / q
    };
    let [a0, a1, a2, b1, b2] = params.map(|c| c.index());
    let total: Complex64 = (0..n)
        .map(|j| {
            binom((a0 + j) % n, j)
                * binom((a1 + j) % n, (b1 + j) % n)
                * binom((a2 + j) % n, (b2 + j) % n)
                * roots[((j * lam_log as u64) % n) as usize]
        })
        .sum();
    total * (q / n as f64)
}

/// h = 1 − χ₄(g).
pub fn h_constant() -> Cyclo8 {
    Cyclo8::one() - Cyclo8::zeta_pow(2)
}

/// (2 + h·χ₄(x) + h̄·χ̄₄(x)) / 4, which is 1 on H and 0 elsewhere on F_q^*.
pub fn indicator_h(ctx: &FieldCtx, x: FieldElement) -> Result<BigRational, CharSumError> {
    if x.is_zero() {
        return Err(CharSumError::Precondition(
            "indicator_H needs x != 0".into(),
        ));
    }
    let h = h_constant();
    let sum = Cyclo8::integer(2)
        + &h * &char_value(ctx, MultChar::CHI4, x)
        + &h.conj() * &char_value(ctx, MultChar::CHI4_BAR, x);
    let v = sum
        .scale(&BigRational::new(1.into(), 4.into()))
        .as_rational()?;
    if v.is_zero() || v.is_one() {
        Ok(v)
    } else {
        Err(CharSumError::IndicatorAlarm(v.to_string()))
    }
}

fn require_not_zero_one(a: FieldElement, what: &str) -> Result<(), CharSumError> {
    if a.is_zero() || a == FieldElement::ONE {
        Err(CharSumError::Precondition(format!(
            "{what} needs a != 0, 1"
        )))
    } else {
        Ok(())
    }
}

/// Σ_y χ₄((y−1)(y−a)).
pub fn lemma_quadratic_sum(ctx: &FieldCtx, a: FieldElement) -> Result<Cyclo8, CharSumError> {
    require_not_zero_one(a, "lemma_quadratic_sum")?;
    let mut acc = ZetaCounts::default();
    for y in ctx.elements() {
        let f = ctx.mul(ctx.sub(y, FieldElement::ONE), ctx.sub(y, a));
        if let Some(k) = MultChar::CHI4.zeta_exp(ctx, f) {
            acc.push(k);
        }
    }
    Ok(acc.to_cyclo())
}

/// Σ_y χ₄(y)·χ̄₄(a−y).
pub fn lemma_ratio_sum(ctx: &FieldCtx, a: FieldElement) -> Result<Cyclo8, CharSumError> {
    require_not_zero_one(a, "lemma_ratio_sum")?;
    Ok(ratio_sum_unchecked(ctx, a))
}

pub(crate) fn ratio_sum_unchecked(ctx: &FieldCtx, a: FieldElement) -> Cyclo8 {
    let mut acc = ZetaCounts::default();
    for y in ctx.elements() {
        if let (Some(u), Some(v)) = (
            MultChar::CHI4.zeta_exp(ctx, y),
            MultChar::CHI4_BAR.zeta_exp(ctx, ctx.sub(a, y)),
        ) {
            acc.push(u + v);
        }
    }
    acc.to_cyclo()
}

/// Outer weight A_x of a double sum Σ_x A_x Σ_y χ₄^{i1}(y)χ₄^{i2}(1−y)χ₄^{i3}(x−y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VsumKind {
    None,
    Chi4X,
    Chi4BarX,
    Chi4OneMinusX,
    Chi4BarOneMinusX,
    /// χ₄^{l1}(x)·χ₄^{l2}(1−x).
    Pair(i8, i8),
}

impl VsumKind {
    pub const TABLE_COLUMNS: [VsumKind; 4] = [
        VsumKind::Chi4X,
        VsumKind::Chi4BarX,
        VsumKind::Chi4OneMinusX,
        VsumKind::Chi4BarOneMinusX,
    ];

    /// (exponent of χ₄ at x, exponent of χ₄ at 1−x).
    fn exponents(self) -> (i64, i64) {
        match self {
            VsumKind::None => (0, 0),
            VsumKind::Chi4X => (1, 0),
            VsumKind::Chi4BarX => (-1, 0),
            VsumKind::Chi4OneMinusX => (0, 1),
            VsumKind::Chi4BarOneMinusX => (0, -1),
            VsumKind::Pair(l1, l2) => (l1 as i64, l2 as i64),
        }
    }
}

impl fmt::Display for VsumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VsumKind::None => f.write_str("none"),
            VsumKind::Chi4X => f.write_str("chi4(x)"),
            VsumKind::Chi4BarX => f.write_str("chi4bar(x)"),
            VsumKind::Chi4OneMinusX => f.write_str("chi4(1-x)"),
            VsumKind::Chi4BarOneMinusX => f.write_str("chi4bar(1-x)"),
            VsumKind::Pair(a, b) => write!(f, "pair({a},{b})"),
        }
    }
}

/// The eight sign patterns (i1, i2, i3) in the row order j = 1..8.
pub const SIGN_ROWS: [[i8; 3]; 8] = [
    [1, 1, 1],
    [1, 1, -1],
    [1, -1, 1],
    [1, -1, -1],
    [-1, 1, 1],
    [-1, 1, -1],
    [-1, -1, 1],
    [-1, -1, -1],
];

/// Σ_{x ∉ {0,1}} A_x Σ_y χ₄^{i1}(y)·χ₄^{i2}(1−y)·χ₄^{i3}(x−y).
///
/// The outer sum always skips x = 0 and x = 1. For the x- and (1−x)-weighted
/// kinds and for `Pair` this only drops terms that vanish anyway; for `None`
/// it gives the T-sums.
pub fn vsum(ctx: &FieldCtx, kind: VsumKind, signs: [i8; 3]) -> Cyclo8 {
    let (ex, e1x) = kind.exponents();
    let cx = MultChar::chi4_pow(ex);
    let c1x = MultChar::chi4_pow(e1x);
    let [c1, c2, c3] = signs.map(|s| MultChar::chi4_pow(s as i64));
    let one = FieldElement::ONE;

    let y_terms: Vec<(u32, FieldElement)> = ctx
        .elements()
        .filter_map(|y| {
            let u = c1.zeta_exp(ctx, y)?;
            let v = c2.zeta_exp(ctx, ctx.sub(one, y))?;
            Some((u + v, y))
        })
        .collect();

    let mut acc = ZetaCounts::default();
    for x in ctx.elements().filter(|&x| !x.is_zero() && x != one) {
        let outer = cx.zeta_exp(ctx, x).unwrap() + c1x.zeta_exp(ctx, ctx.sub(one, x)).unwrap();
        for &(w, y) in &y_terms {
            if let Some(z) = c3.zeta_exp(ctx, ctx.sub(x, y)) {
                acc.push(outer + w + z);
            }
        }
    }
    acc.to_cyclo()
}

/// Closed forms in ρ for the T-sums (`VsumKind::None`).
pub fn tabulated_t_sum(signs: [i8; 3], rho: i64) -> i64 {
    match signs {
        [1, 1, 1] | [-1, -1, -1] => -2 * rho,
        [1, 1, -1] | [-1, -1, 1] => 2,
        _ => 1 - rho,
    }
}

/// Closed forms in ρ for the four weighted columns of the double-sum table.
pub fn tabulated_weighted_sum(kind: VsumKind, signs: [i8; 3], rho: i64) -> Option<i64> {
    let col = VsumKind::TABLE_COLUMNS.iter().position(|&k| k == kind)?;
    let row = SIGN_ROWS.iter().position(|&r| r == signs)?;
    let sq1 = rho * rho + 1;
    let sqr = rho * rho - rho;
    let lin = 1 - rho;
    let table: [[i64; 4]; 8] = [
        [-2 * rho; 4],
        [lin; 4],
        [sq1, 2, sqr, lin],
        [lin, sqr, 2, sq1],
        [sqr, lin, sq1, 2],
        [2, sq1, lin, sqr],
        [lin; 4],
        [-2 * rho; 4],
    ];
    Some(table[row][col])
}

/// Outcome of one Weil-estimate instance.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilReport {
    pub order: u32,
    pub degree: usize,
    pub sum: Cyclo8,
    pub magnitude: f64,
    pub bound: f64,
    pub holds: bool,
}

impl WeilReport {
    pub fn ratio(&self) -> f64 {
        if self.bound == 0.0 {
            if self.magnitude == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.magnitude / self.bound
        }
    }
}

/// |Σ_x χ(Π(x − rᵢ))| against (d−1)√q for the order-s character χ₈^{8/s}.
pub fn weil_check(
    ctx: &FieldCtx,
    order: u32,
    roots: &[FieldElement],
) -> Result<WeilReport, CharSumError> {
    if !matches!(order, 2 | 4 | 8) {
        return Err(CharSumError::BadOrder(order));
    }
    let d = roots.len();
    if d == 0 || d > 6 {
        return Err(CharSumError::Precondition(format!(
            "need 1..=6 roots, got {d}"
        )));
    }
    let mut sorted = roots.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != d {
        return Err(CharSumError::Precondition("roots must be distinct".into()));
    }
    let chi = MultChar::new(8 / order as i64);
    let mut acc = ZetaCounts::default();
    'x: for x in ctx.elements() {
        let mut k = 0;
        for &r in roots {
            match chi.zeta_exp(ctx, ctx.sub(x, r)) {
                Some(e) => k += e,
                None => continue 'x,
            }
        }
        acc.push(k);
    }
    let sum = acc.to_cyclo();
    let magnitude = sum.approx().norm();
    let sqrt_q = ctx.prime_power().p.pow(ctx.prime_power().t) as f64;
    let bound = (d as f64 - 1.0) * sqrt_q;
    Ok(WeilReport {
        order,
        degree: d,
        holds: magnitude <= bound + 1e-9,
        sum,
        magnitude,
        bound,
    })
}

/// Random instances: order s ∈ {2,4,8}, 1 ≤ d ≤ 6 distinct roots.
pub fn weil_random_trials(ctx: &FieldCtx, trials: usize, seed: u64) -> Vec<WeilReport> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..trials)
        .map(|_| {
            let order = [2u32, 4, 8][rng.gen_range(0..3)];
            let d = rng.gen_range(1..=6usize).min(ctx.size());
            let roots: Vec<FieldElement> = sample(&mut rng, ctx.size(), d)
                .into_iter()
                .map(|i| ctx.element(i as u64).expect("index below q"))
                .collect();
            weil_check(ctx, order, &roots).expect("valid instance")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::ratio;
    use crate::ffield::build_field;

    #[test]
    fn character_values() {
        let f = build_field(3, 1).unwrap();
        assert!(char_value(&f, MultChar::CHI4, FieldElement::ZERO).is_zero());
        assert_eq!(
            char_value(&f, MultChar::CHI4, f.generator()),
            Cyclo8::zeta_pow(2)
        );
        assert_eq!(char_value(&f, MultChar::CHI4, f.minus_one()), Cyclo8::one());
        assert_eq!(
            char_value(&f, MultChar::CHI8, f.generator()),
            Cyclo8::zeta_pow(1)
        );
    }

    #[test]
    fn mult_char_algebra() {
        assert_eq!(MultChar::CHI8 * MultChar::CHI8, MultChar::CHI4);
        assert_eq!(MultChar::CHI4 * MultChar::CHI4, MultChar::PHI);
        assert_eq!(MultChar::CHI4.conj(), MultChar::CHI4_BAR);
        assert_eq!(MultChar::CHI4.order(), 4);
        assert_eq!(MultChar::EPSILON.order(), 1);
        assert_eq!(MultChar::CHI4.to_general(9).index(), 2);
    }

    #[test]
    fn jacobi_sum_values() {
        let f9 = build_field(3, 1).unwrap();
        assert_eq!(
            jacobi_sum(&f9, MultChar::CHI4, MultChar::CHI4),
            Cyclo8::integer(3)
        );
        let f49 = build_field(7, 1).unwrap();
        assert_eq!(
            jacobi_sum(&f49, MultChar::CHI4, MultChar::PHI),
            Cyclo8::integer(7)
        );
        let f81 = build_field(3, 2).unwrap();
        assert_eq!(
            jacobi_sum(&f81, MultChar::CHI4, MultChar::CHI4),
            Cyclo8::integer(-9)
        );
    }

    #[test]
    fn binomials() {
        let f = build_field(3, 1).unwrap();
        assert_eq!(
            binom(&f, MultChar::CHI4, MultChar::CHI4_BAR),
            Cyclo8::rational(ratio(1, 3))
        );
        // direct summation of the defining sum for (ε choose ε)
        let mut direct = 0i64;
        for x in f.elements() {
            if !x.is_zero() && !f.sub(FieldElement::ONE, x).is_zero() {
                direct += 1;
            }
        }
        assert_eq!(
            binom(&f, MultChar::EPSILON, MultChar::EPSILON),
            Cyclo8::rational(ratio(direct, 9))
        );
        assert_eq!(direct, 7);
    }

    #[test]
    fn hyper_q9_table_value_and_normalization() {
        let f = build_field(3, 1).unwrap();
        let raw = hyper3f2_raw(&f, &HyperParams::k4_term(), FieldElement::ONE);
        assert_eq!(raw, Cyclo8::integer(10));
        let exact = hyper3f2_exact(&f, &HyperParams::k4_term(), FieldElement::ONE).unwrap();
        assert_eq!(exact, Cyclo8::rational(ratio(10, 81)));
        let l27 = hyper3f2_exact(
            &f,
            &HyperParams::chi4_powers([1, 1, 1, 0, 0]),
            FieldElement::ONE,
        )
        .unwrap();
        assert_eq!(l27, Cyclo8::rational(ratio(-2, 27)));
    }

    #[test]
    fn hyper_rejects_odd_characters() {
        let f = build_field(3, 1).unwrap();
        let p = HyperParams::new(
            MultChar::CHI8,
            MultChar::CHI4,
            MultChar::CHI4,
            MultChar::EPSILON,
            MultChar::EPSILON,
        );
        assert_eq!(
            hyper3f2_exact(&f, &p, FieldElement::ONE),
            Err(CharSumError::NotChi4Power(MultChar::CHI8))
        );
    }

    #[test]
    fn hyper_float_matches_table_rows() {
        let f = build_field(3, 1).unwrap();
        let params = HyperParams::k4_term()
            .as_array()
            .map(|c| c.to_general(f.q()));
        let v = hyper3f2_float(&f, params, FieldElement::ONE);
        assert!((v - Complex64::new(10.0 / 81.0, 0.0)).norm() < 1e-9);
        assert!(hyper3f2_float(&f, params, FieldElement::ZERO).norm() < 1e-9);
    }

    #[test]
    fn indicator_matches_membership() {
        let f = build_field(3, 1).unwrap();
        assert!(indicator_h(&f, f.generator()).unwrap().is_one());
        assert!(indicator_h(&f, f.exp(2)).unwrap().is_zero());
        assert!(indicator_h(&f, FieldElement::ONE).unwrap().is_one());
        assert!(indicator_h(&f, FieldElement::ZERO).is_err());
    }

    #[test]
    fn single_sum_lemmas() {
        let f = build_field(3, 1).unwrap();
        let a = f.exp(2);
        let phi = char_value(&f, MultChar::PHI, f.sub(a, FieldElement::ONE));
        assert_eq!(
            lemma_quadratic_sum(&f, a).unwrap(),
            &phi * &Cyclo8::integer(3)
        );
        assert_eq!(
            lemma_ratio_sum(&f, f.generator()).unwrap(),
            Cyclo8::integer(-1)
        );
        assert!(lemma_ratio_sum(&f, FieldElement::ONE).is_err());
        assert!(lemma_quadratic_sum(&f, FieldElement::ZERO).is_err());
    }

    #[test]
    fn vsum_examples() {
        let f = build_field(3, 1).unwrap();
        let rho = 3;
        assert_eq!(
            vsum(&f, VsumKind::Chi4OneMinusX, [1, -1, 1]),
            Cyclo8::integer(rho * rho - rho)
        );
        assert_eq!(
            vsum(&f, VsumKind::Chi4BarX, [1, 1, 1]),
            Cyclo8::integer(-2 * rho)
        );
        assert_eq!(
            vsum(&f, VsumKind::None, [1, -1, 1]),
            Cyclo8::integer(1 - rho)
        );
    }

    #[test]
    fn weil_small_cases() {
        let f = build_field(3, 1).unwrap();
        let r = weil_check(&f, 4, &[f.generator()]).unwrap();
        assert!(r.sum.is_zero());
        assert_eq!(r.bound, 0.0);
        assert!(r.holds);
        let r = weil_check(&f, 2, &[FieldElement::ZERO, FieldElement::ONE]).unwrap();
        assert!(r.holds && r.bound == 3.0);
        assert!(weil_check(&f, 3, &[FieldElement::ONE]).is_err());
        assert!(weil_check(&f, 2, &[FieldElement::ONE, FieldElement::ONE]).is_err());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::ffield::build_field;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn fields() -> &'static [FieldCtx] {
        static F: OnceLock<Vec<FieldCtx>> = OnceLock::new();
        F.get_or_init(|| {
            [(3, 1), (7, 1), (3, 2)]
                .iter()
                .map(|&(p, t)| build_field(p, t).unwrap())
                .collect()
        })
    }

    proptest! {
        #[test]
        fn jacobi_magnitude(i in 0usize..3, a in 1i64..8, b in 1i64..8) {
            let f = &fields()[i];
            let (a, b) = (MultChar::new(a), MultChar::new(b));
            prop_assume!(a * b != MultChar::EPSILON);
            let j = jacobi_sum(f, a, b);
            prop_assert_eq!(&j * &j.conj(), Cyclo8::integer(f.q() as i64));
        }

        #[test]
        fn characters_are_multiplicative(i in 0usize..3, e in 0i64..8, a in 1u64..81, b in 1u64..81) {
            let f = &fields()[i];
            let q = f.q();
            let (x, y) = (f.element(a % q).unwrap(), f.element(b % q).unwrap());
            let c = MultChar::new(e);
            prop_assert_eq!(char_value(f, c, f.mul(x, y)), &char_value(f, c, x) * &char_value(f, c, y));
        }

        #[test]
        fn jacobi_is_symmetric(i in 0usize..3, a in 0i64..8, b in 0i64..8) {
            let f = &fields()[i];
            let (a, b) = (MultChar::new(a), MultChar::new(b));
            prop_assert_eq!(jacobi_sum(f, a, b), jacobi_sum(f, b, a));
        }
    }
}
