//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored on the power basis `1, ζ, …, ζ^{φ(N)-1}` after reduction
//! modulo the cyclotomic polynomial `Φ_N`, as integer numerators over one
//! positive common denominator. The representation is canonical: the
//! numerators and denominator share no common factor, so equality is a plain
//! coefficient comparison.
//!
//! Each order gets one shared [`CyclotomicField`] holding `Φ_N` and the reduced
//! powers `ζ^e` for `0 <= e < N`. Fields are built once and cached for the
//! lifetime of the process.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("cannot combine elements of Q(ζ_{left}) and Q(ζ_{right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("2 sin(π·{m}/{order}) vanishes: angle is a multiple of π")]
    ZeroAngle { order: usize, m: i64 },
    #[error("element is not rational: {0}")]
    NotRational(String),
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
}

/// Static data for `Q(ζ_N)`: the modulus `Φ_N` and the reduced powers of `ζ`.
#[derive(Debug)]
pub struct CyclotomicField {
    order: usize,
    /// Coefficients of `Φ_N`, lowest degree first; monic of degree `φ(N)`.
    modulus: Vec<i64>,
    /// `powers[e]` is `ζ^e` on the power basis.
    powers: Vec<Vec<i64>>,
}

fn field_cache() -> &'static Mutex<HashMap<usize, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Exact quotient of `num` by the monic polynomial `den` (both lowest degree first).
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem: Vec<i128> = num.iter().map(|&c| c as i128).collect();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i128; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d as i128;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient overflow"))
        .collect()
}

impl CyclotomicField {
    /// Returns the shared field of order `order`, building it on first use.
    pub fn get(order: usize) -> Result<Arc<Self>, CyclotomicError> {
        if order == 0 {
            return Err(CyclotomicError::InvalidOrder);
        }
        if let Some(f) = field_cache().lock().unwrap().get(&order) {
            return Ok(Arc::clone(f));
        }
        // Built outside the lock: construction recurses into the divisors.
        let built = Arc::new(Self::build(order)?);
        let mut cache = field_cache().lock().unwrap();
        Ok(Arc::clone(cache.entry(order).or_insert(built)))
    }

    fn build(order: usize) -> Result<Self, CyclotomicError> {
        // Φ_N = (z^N - 1) / Π_{d | N, d < N} Φ_d
        let mut modulus = vec![0i64; order + 1];
        modulus[0] = -1;
        modulus[order] = 1;
        for d in (1..order).filter(|d| order.is_multiple_of(*d)) {
            modulus = div_monic(&modulus, &Self::get(d)?.modulus);
        }
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by z and reduce the overflowing top coefficient
            let top = cur[degree - 1];
            cur.rotate_right(1);
            cur[0] = 0;
            for (c, &m) in cur.iter_mut().zip(&modulus) {
                *c -= top * m;
            }
        }
        Ok(Self {
            order,
            modulus,
            powers,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `φ(N)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of `Φ_N`, lowest degree first.
    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    /// `ζ^e` on the power basis, `e` taken modulo `N`.
    pub fn power(&self, e: i64) -> &[i64] {
        &self.powers[e.rem_euclid(self.order as i64) as usize]
    }

    /// Reduces an element of the group ring `Z[C_N]` (coefficient `c[e]` on
    /// `ζ^e`) onto the power basis. `None` on `i128` overflow.
    pub fn reduce_group_ring(&self, c: &[i128]) -> Option<Vec<i128>> {
        let mut out = vec![0i128; self.degree()];
        for (e, &ce) in c.iter().enumerate() {
            if ce == 0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.powers[e % self.order]) {
                if p != 0 {
                    *o = o.checked_add(ce.checked_mul(p as i128)?)?;
                }
            }
        }
        Some(out)
    }

    /// Product of two reduced integer vectors, reduced modulo `Φ_N`.
    /// `None` on `i128` overflow.
    pub fn mul_reduced(&self, a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
        let d = self.degree();
        let mut prod = vec![0i128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = prod[i + j].checked_add(x.checked_mul(y)?)?;
                }
            }
        }
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus[..d].iter().enumerate() {
                if m != 0 {
                    let idx = top - d + j;
                    prod[idx] = prod[idx].checked_sub(c.checked_mul(m as i128)?)?;
                }
            }
        }
        prod.truncate(d);
        Some(prod)
    }
}

/// An element of `Q(ζ_N)` in canonical form.
#[derive(Clone)]
pub struct CyclotomicNumber {
    field: Arc<CyclotomicField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CyclotomicNumber {
    fn from_parts(field: Arc<CyclotomicField>, num: Vec<BigInt>, den: BigInt) -> Self {
        let mut x = Self { field, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Self {
            field: Arc::clone(field),
            num: vec![BigInt::zero(); field.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_integer(field, 1)
    }

    pub fn from_integer(field: &Arc<CyclotomicField>, n: impl Into<BigInt>) -> Self {
        Self::from_rational(field, &BigRational::from_integer(n.into()))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = q.numer().clone();
        Self::from_parts(Arc::clone(field), num, q.denom().clone())
    }

    /// A rational number as an element of `Q(ζ_1) = Q`; combines with any order.
    pub fn rational(q: &BigRational) -> Self {
        Self::from_rational(&CyclotomicField::get(1).expect("order 1"), q)
    }

    /// Builds `(Σ num_i ζ^i) / den` from power-basis integer coefficients.
    pub fn from_integer_coeffs(field: &Arc<CyclotomicField>, num: &[i128], den: i128) -> Self {
        assert_eq!(num.len(), field.degree(), "coefficient vector length");
        assert!(den != 0, "zero denominator");
        Self::from_parts(
            Arc::clone(field),
            num.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::from(den),
        )
    }

    /// Builds an element from group-ring coefficients `c[e]` on `ζ^e`, `e < N`.
    pub fn from_group_ring(field: &Arc<CyclotomicField>, c: &[BigInt]) -> Self {
        let mut num = vec![BigInt::zero(); field.degree()];
        for (e, ce) in c.iter().enumerate() {
            if ce.is_zero() {
                continue;
            }
            for (o, &p) in num.iter_mut().zip(field.power(e as i64)) {
                if p != 0 {
                    *o += ce * p;
                }
            }
        }
        Self::from_parts(Arc::clone(field), num, BigInt::one())
    }

    /// `ζ_N^e` with the exponent reduced modulo `N`.
    pub fn root_of_unity(order: usize, e: i64) -> Result<Self, CyclotomicError> {
        let field = CyclotomicField::get(order)?;
        Ok(Self::root_in(&field, e))
    }

    pub fn root_in(field: &Arc<CyclotomicField>, e: i64) -> Self {
        let num = field.power(e).iter().map(|&c| BigInt::from(c)).collect();
        Self {
            field: Arc::clone(field),
            num,
            den: BigInt::one(),
        }
    }

    /// `(2 sin(π m / N))² = (1 - ζ^m)(1 - ζ^{-m})`, computed as `2 - ζ^m - ζ^{-m}`.
    pub fn two_sin_sq(order: usize, m: i64) -> Result<Self, CyclotomicError> {
        let field = CyclotomicField::get(order)?;
        if m.rem_euclid(order as i64) == 0 {
            return Err(CyclotomicError::ZeroAngle { order, m });
        }
        let mut c = vec![BigInt::zero(); order];
        c[0] += 2;
        c[m.rem_euclid(order as i64) as usize] -= 1;
        c[(-m).rem_euclid(order as i64) as usize] -= 1;
        Ok(Self::from_group_ring(&field, &c))
    }

    /// `(1 - ζ_N^e)^{-1}` in closed form. With `w = ζ^e` of exact order `M`,
    /// `Σ_{j<M} j w^j · (w - 1) = M`, hence `1/(1 - w) = -(1/M) Σ_{j<M} j w^j`.
    pub fn inverse_one_minus_root(order: usize, e: i64) -> Result<Self, CyclotomicError> {
        let field = CyclotomicField::get(order)?;
        let (num, den) =
            one_minus_root_inverse_coeffs(&field, e).ok_or(CyclotomicError::DivisionByZero)?;
        Ok(Self::from_integer_coeffs(&field, &num, den))
    }

    pub fn order(&self) -> usize {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerators on the power basis; pair with [`Self::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// Brings two operands into a common field, lifting rationals as needed.
    fn align(&self, other: &Self) -> Result<(Self, Self), CyclotomicError> {
        match (self.order(), other.order()) {
            (a, b) if a == b => Ok((self.clone(), other.clone())),
            (1, _) => Ok((self.lift(&other.field), other.clone())),
            (_, 1) => Ok((self.clone(), other.lift(&self.field))),
            (left, right) => Err(CyclotomicError::OrderMismatch { left, right }),
        }
    }

    fn lift(&self, field: &Arc<CyclotomicField>) -> Self {
        debug_assert!(self.is_rational());
        let mut num = vec![BigInt::zero(); field.degree()];
        num[0] = self.num[0].clone();
        Self {
            field: Arc::clone(field),
            num,
            den: self.den.clone(),
        }
    }

    fn add_sub(&self, other: &Self, sign: i8) -> Result<Self, CyclotomicError> {
        if self.order() != other.order() {
            let (a, b) = self.align(other)?;
            return a.add_sub(&b, sign);
        }
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if sign > 0 { a + b } else { a - b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let (x, y) = (a * &other.den, b * &self.den);
                    if sign > 0 {
                        x + y
                    } else {
                        x - y
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Ok(Self::from_parts(Arc::clone(&self.field), num, den))
    }

    pub fn add(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.add_sub(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.add_sub(other, -1)
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CyclotomicError> {
        if self.order() != other.order() {
            let (a, b) = self.align(other)?;
            return a.mul(&b);
        }
        let d = self.field.degree();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in self.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in other.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for top in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[top]);
            if c.is_zero() {
                continue;
            }
            for (j, &m) in self.field.modulus[..d].iter().enumerate() {
                if m != 0 {
                    prod[top - d + j] -= &c * m;
                }
            }
        }
        prod.truncate(d);
        Ok(Self::from_parts(
            Arc::clone(&self.field),
            prod,
            &self.den * &other.den,
        ))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        Self::from_parts(Arc::clone(&self.field), num, &self.den * q.denom())
    }

    pub fn neg(&self) -> Self {
        Self {
            field: Arc::clone(&self.field),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).expect("same order");
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// `Q[z] / Φ_N`.
    pub fn inverse(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect()
        };
        let modulus: Vec<BigInt> = self
            .field
            .modulus
            .iter()
            .map(|&c| BigInt::from(c))
            .collect();
        // invariant: s_i · a ≡ r_i (mod Φ_N)
        let (mut r0, mut r1) = (to_q(&modulus), poly_trim(to_q(&self.num)));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Φ_N is irreducible
        let c = r1[0].clone();
        let scale = BigRational::one() / c * BigRational::from_integer(self.den.clone());
        let mut num = vec![BigRational::zero(); self.field.degree()];
        for (o, v) in num.iter_mut().zip(s1) {
            *o = v * &scale;
        }
        Ok(Self::from_rational_coeffs(&self.field, &num))
    }

    fn from_rational_coeffs(field: &Arc<CyclotomicField>, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Self::from_parts(Arc::clone(field), num, den)
    }

    pub fn div(&self, other: &Self) -> Result<Self, CyclotomicError> {
        self.mul(&other.inverse()?)
    }

    /// The constant coefficient, provided all others vanish.
    pub fn to_rational(&self) -> Result<BigRational, CyclotomicError> {
        if !self.is_rational() {
            return Err(CyclotomicError::NotRational(self.to_string()));
        }
        Ok(BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Numerical value under the embedding `ζ_N ↦ exp(2πi/N)`.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order() as f64;
        self.num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let w = Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n);
                w * BigRational::new(c.clone(), self.den.clone())
                    .to_f64()
                    .unwrap_or(f64::NAN)
            })
            .sum()
    }
}

/// Integer numerators and denominator of `(1 - ζ^e)^{-1}`; `None` if `ζ^e = 1`.
pub(crate) fn one_minus_root_inverse_coeffs(
    field: &CyclotomicField,
    e: i64,
) -> Option<(Vec<i128>, i128)> {
    let n = field.order as i64;
    let e = e.rem_euclid(n);
    if e == 0 {
        return None;
    }
    let m = n / e.gcd(&n);
    let mut c = vec![0i128; field.order];
    for j in 1..m {
        c[((e * j) % n) as usize] -= j as i128;
    }
    Some((field.reduce_group_ring(&c)?, m as i128))
}

fn poly_trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    poly_trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] / &lead;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[i + j] -= &c * y;
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (poly_trim(quot), poly_trim(rem))
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        match self.align(other) {
            Ok((a, b)) => a.num == b.num && a.den == b.den,
            Err(_) => false,
        }
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicNumber(N={}, {})", self.order(), self)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        if !self.den.is_one() {
            f.write_str("(")?;
        }
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "ζ^{j}")?,
                _ => write!(f, "{a}ζ^{j}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        if !self.den.is_one() {
            write!(f, ")/{}", self.den)?;
        }
        Ok(())
    }
}
