//! Exact arithmetic in a cyclotomic field ℚ(ζ_N).
//!
//! Every computation in this crate fixes one conductor N up front; all
//! scalars live in the single field ℚ(ζ_N) represented in the power basis
//! of ζ = x mod Φ_N. Arithmetic is exact rational arithmetic modulo the
//! N-th cyclotomic polynomial.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rat = BigRational;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over ℚ, used only to build and reduce mod Φ_N.
// ---------------------------------------------------------------------------

fn poly_trim(p: &mut Vec<Rat>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    poly_trim(&mut out);
    out
}

/// Euclidean division a = q*b + r with deg r < deg b. Requires b nonzero.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r: Vec<Rat> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![Rat::zero(); r.len() - db];
    while r.len() > db {
        let da = r.len() - 1;
        let c = r.last().unwrap() / &lead;
        q[da - db] = c.clone();
        for k in 0..=db {
            let v = &b[k] * &c;
            r[da - db + k] -= v;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    poly_trim(&mut q);
    (q, r)
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
fn poly_xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut u0, mut u1) = (vec![Rat::one()], Vec::new());
    let (mut v0, mut v1) = (Vec::new(), vec![Rat::one()]);
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let u = poly_sub(&u0, &poly_mul(&q, &u1));
        let v = poly_sub(&v0, &poly_mul(&q, &v1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u);
        v0 = std::mem::replace(&mut v1, v);
    }
    // normalize monic
    if let Some(lead) = r0.last().cloned() {
        for c in r0.iter_mut().chain(u0.iter_mut()).chain(v0.iter_mut()) {
            *c /= lead.clone();
        }
    }
    (r0, u0, v0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(&mut out);
    out
}

/// x^n - 1 as a coefficient vector.
fn x_pow_minus_one(n: u32) -> Vec<Rat> {
    let mut p = vec![Rat::zero(); n as usize + 1];
    p[0] = -Rat::one();
    p[n as usize] = Rat::one();
    p
}

/// The N-th cyclotomic polynomial Φ_N, computed by dividing x^N - 1 by the
/// cyclotomic polynomials of the proper divisors of N.
fn cyclotomic_poly(n: u32) -> Vec<Rat> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-Rat::one(), Rat::one()];
    }
    let mut num = x_pow_minus_one(n);
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = poly_divmod(&num, &cyclotomic_poly(d));
            debug_assert!(r.is_empty());
            num = q;
        }
    }
    num
}

fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result
}

// ---------------------------------------------------------------------------
// CycloField and Scalar
// ---------------------------------------------------------------------------

/// The field ℚ(ζ_N): conductor, degree φ(N), and the modulus Φ_N.
#[derive(Debug)]
pub struct CycloField {
    conductor: u32,
    degree: usize,
    modulus: Vec<Rat>,
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}
impl Eq for CycloField {}

impl CycloField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let modulus = cyclotomic_poly(conductor);
        let degree = modulus.len() - 1;
        debug_assert_eq!(degree as u32, euler_phi(conductor));
        Arc::new(CycloField {
            conductor,
            degree,
            modulus,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, constant term first.
    pub fn modulus(&self) -> &[Rat] {
        &self.modulus
    }

    fn reduce(&self, mut coeffs: Vec<Rat>) -> Vec<Rat> {
        if coeffs.len() > self.degree {
            let (_, r) = poly_divmod(&coeffs, &self.modulus);
            coeffs = r;
        }
        coeffs.resize(self.degree, Rat::zero());
        coeffs
    }

    pub fn scalar_from_coeffs(self: &Arc<Self>, coeffs: Vec<Rat>) -> Scalar {
        Scalar {
            field: Arc::clone(self),
            coeffs: self.reduce(coeffs),
        }
    }

    pub fn zero(self: &Arc<Self>) -> Scalar {
        self.scalar_from_coeffs(Vec::new())
    }

    pub fn one(self: &Arc<Self>) -> Scalar {
        self.from_rational(Rat::one())
    }

    pub fn from_rational(self: &Arc<Self>, r: Rat) -> Scalar {
        self.scalar_from_coeffs(vec![r])
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> Scalar {
        self.from_rational(rat(n, 1))
    }

    pub fn rational(self: &Arc<Self>, num: i64, den: i64) -> Scalar {
        self.from_rational(rat(num, den))
    }

    /// ζ_N, the residue of x. Has multiplicative order exactly N.
    pub fn zeta(self: &Arc<Self>) -> Scalar {
        let mut coeffs = vec![Rat::zero(); 2];
        coeffs[1] = Rat::one();
        self.scalar_from_coeffs(coeffs)
    }

    /// ζ_M^k for M dividing the conductor, via ζ_M = ζ_N^{N/M}.
    pub fn zeta_of(self: &Arc<Self>, m: u32, k: i64) -> Result<Scalar, Error> {
        if m == 0 || self.conductor % m != 0 {
            return Err(Error::FieldMismatch(format!(
                "zeta({m}) does not lie in Q(zeta_{}); conductor must be a multiple of {m}",
                self.conductor
            )));
        }
        let step = (self.conductor / m) as i64;
        self.zeta().pow(step * k)
    }
}

/// An element of ℚ(ζ_N) in the power basis of ζ, reduced mod Φ_N.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<CycloField>,
    coeffs: Vec<Rat>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for Scalar {}

impl Scalar {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<Rat> {
        if self.is_rational() {
            Some(self.coeffs.first().cloned().unwrap_or_else(Rat::zero))
        } else {
            None
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field.conductor, other.field.conductor,
            "scalars from different cyclotomic fields"
        );
    }

    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut a = self.coeffs.clone();
        poly_trim(&mut a);
        let (g, u, _) = poly_xgcd(&a, &self.field.modulus);
        debug_assert_eq!(g.len(), 1, "Phi_N must be coprime to any nonzero element");
        Ok(self.field.scalar_from_coeffs(u))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, Error> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Scalar, Error> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Least k ≥ 1 with self^k = 1, or None. The search bound 2N is
    /// exhaustive: every root of unity in ℚ(ζ_N) has order dividing lcm(2, N).
    pub fn multiplicative_order(&self) -> Result<Option<u32>, Error> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        let bound = 2 * self.field.conductor;
        let mut pow = self.clone();
        for k in 1..=bound {
            if pow.is_one() {
                return Ok(Some(k));
            }
            pow = &pow * self;
        }
        Ok(None)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Scalar {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Scalar {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        let prod = poly_mul(&self.coeffs, &rhs.coeffs);
        self.field.scalar_from_coeffs(prod)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.try_div(rhs).expect("scalar division by zero")
    }
}

fn fmt_rational(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical power-basis form, parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.field.conductor;
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let body = match k {
                0 => fmt_rational(&mag),
                1 if mag.is_one() => format!("zeta({n})"),
                1 => format!("{}*zeta({n})", fmt_rational(&mag)),
                _ if mag.is_one() => format!("zeta({n})^{k}"),
                _ => format!("{}*zeta({n})^{k}", fmt_rational(&mag)),
            };
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn cyclotomic_polynomials() {
        // Φ_1 = x-1, Φ_4 = x^2+1, Φ_6 = x^2-x+1, Φ_12 = x^4-x^2+1
        assert_eq!(cyclotomic_poly(1), vec![rat(-1, 1), rat(1, 1)]);
        assert_eq!(cyclotomic_poly(4), vec![rat(1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(cyclotomic_poly(6), vec![rat(1, 1), rat(-1, 1), rat(1, 1)]);
        assert_eq!(
            cyclotomic_poly(12),
            vec![rat(1, 1), rat(0, 1), rat(-1, 1), rat(0, 1), rat(1, 1)]
        );
    }

    #[test]
    fn gaussian_product_is_one() {
        // (1+i)(1-i)/2 = 1
        let f = CycloField::new(4);
        let i = f.zeta();
        let lhs = &(&f.one() + &i) * &(&(&f.one() - &i) / &f.from_int(2));
        assert!(lhs.is_one());
    }

    #[test]
    fn zeta6_cubed_is_minus_one() {
        let f = CycloField::new(6);
        assert_eq!(f.zeta().pow(3).unwrap(), f.from_int(-1));
    }

    #[test]
    fn rational_addition() {
        let f = CycloField::new(12);
        let a = f.rational(2, 3);
        let b = f.rational(1, 6);
        assert_eq!(&a + &b, f.rational(5, 6));
    }

    #[test]
    fn orders_of_roots_of_unity() {
        let f = CycloField::new(12);
        let z3 = f.zeta().pow(3).unwrap();
        assert_eq!(z3.multiplicative_order().unwrap(), Some(4));
        assert_eq!(
            f.from_int(-1).multiplicative_order().unwrap(),
            Some(2)
        );
        assert_eq!(f.from_int(2).multiplicative_order().unwrap(), None);
        assert!(f.zero().multiplicative_order().is_err());
    }

    #[test]
    fn order_of_zeta_powers() {
        let n = 12u32;
        let f = CycloField::new(n);
        for k in 1..=n {
            let ord = f.zeta().pow(k as i64).unwrap().multiplicative_order().unwrap();
            assert_eq!(ord, Some(n / n.gcd(&k)));
        }
    }

    #[test]
    fn inverse_is_exact() {
        let f = CycloField::new(12);
        let a = &(&f.zeta().pow(5).unwrap() * &f.rational(3, 7)) + &f.rational(1, 2);
        let prod = &a * &a.inv().unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn binomial_expansion_matches_pow() {
        let f = CycloField::new(12);
        let a = &f.zeta() + &f.rational(1, 3);
        let b = &f.zeta().pow(2).unwrap() - &f.from_int(2);
        let s = &a + &b;
        for k in 0..=5i64 {
            let mut expect = f.zero();
            let mut binom = 1i64;
            for j in 0..=k {
                let term = &(&a.pow(j).unwrap() * &b.pow(k - j).unwrap()) * &f.from_int(binom);
                expect = &expect + &term;
                binom = binom * (k - j) / (j + 1);
            }
            assert_eq!(s.pow(k).unwrap(), expect);
        }
    }

    #[test]
    fn display_roundtrip_form() {
        let f = CycloField::new(12);
        let a = &(&f.zeta() * &f.rational(-2, 3)) + &f.rational(1, 2);
        assert_eq!(a.to_string(), "1/2 - 2/3*zeta(12)");
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.zeta_of(6, 2).unwrap().to_string(), f.zeta().pow(4).unwrap().to_string());
    }
}
