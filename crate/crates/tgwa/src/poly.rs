//! Multivariate (Laurent) polynomials over the scalar field: the base rings
//! R = 𝕜[h₁..h_m] or 𝕜[h₁^±1..] that TGW data are built on.
//!
//! Terms are kept in a `BTreeMap` from exponent vectors to nonzero scalars;
//! the zero polynomial is the empty map. Printing uses graded-lex order.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{CycloField, Scalar};

/// Ring descriptor: variable names, Laurent flags, coefficient field.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Arc<CycloField>,
    vars: Vec<String>,
    laurent: Vec<bool>,
}

impl PolyRing {
    pub fn new(field: &Arc<CycloField>, vars: Vec<String>, laurent: Vec<bool>) -> Arc<Self> {
        assert_eq!(vars.len(), laurent.len());
        Arc::new(PolyRing {
            field: Arc::clone(field),
            vars,
            laurent,
        })
    }

    /// Polynomial ring with variables named h1..hm (plain `h` when m = 1).
    pub fn standard(field: &Arc<CycloField>, nvars: usize) -> Arc<Self> {
        let vars = if nvars == 1 {
            vec!["h".to_string()]
        } else {
            (1..=nvars).map(|i| format!("h{i}")).collect()
        };
        PolyRing::new(field, vars, vec![false; nvars])
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn laurent(&self) -> &[bool] {
        &self.laurent
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly {
            ring: Arc::clone(self),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(self: &Arc<Self>, c: Scalar) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; self.nvars()], c);
        }
        Poly {
            ring: Arc::clone(self),
            terms,
        }
    }

    pub fn int(self: &Arc<Self>, n: i64) -> Poly {
        self.constant(self.field.from_int(n))
    }

    pub fn var(self: &Arc<Self>, j: usize) -> Poly {
        assert!(j < self.nvars());
        let mut exp = vec![0; self.nvars()];
        exp[j] = 1;
        self.monomial(self.field.one(), exp)
    }

    pub fn monomial(self: &Arc<Self>, c: Scalar, exp: Vec<i32>) -> Poly {
        assert_eq!(exp.len(), self.nvars());
        for (j, &e) in exp.iter().enumerate() {
            assert!(
                e >= 0 || self.laurent[j],
                "negative exponent on non-Laurent variable {}",
                self.vars[j]
            );
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly {
            ring: Arc::clone(self),
            terms,
        }
    }
}

/// Element of a `PolyRing`. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Vec<i32>, Scalar>,
}

/// Graded-lex comparison of exponent vectors: total degree first, then lex.
fn grlex(a: &[i32], b: &[i32]) -> std::cmp::Ordering {
    let (da, db): (i64, i64) = (
        a.iter().map(|&e| e as i64).sum(),
        b.iter().map(|&e| e as i64).sum(),
    );
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Poly {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<CycloField> {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.ring.nvars()])
                .map_or(false, |c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0; self.ring.nvars()])
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// Total degree, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
    }

    /// Leading (exponent, coefficient) under graded-lex.
    pub fn leading_term(&self) -> Option<(&Vec<i32>, &Scalar)> {
        self.terms.iter().max_by(|a, b| grlex(a.0, b.0))
    }

    fn assert_same_ring(&self, other: &Poly) {
        assert_eq!(
            self.ring, other.ring,
            "polynomials from different base rings"
        );
    }

    fn insert_term(&mut self, exp: Vec<i32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_ring(other);
        let mut out = self.ring.zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_term(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Inverse of a unit monomial c·h^e (Laurent variables only); anything
    /// else is not invertible in the ring.
    pub fn inv_monomial(&self) -> Result<Poly> {
        if self.terms.len() != 1 {
            return Err(Error::Other(format!("{self} is not a unit monomial")));
        }
        let (exp, c) = self.terms.iter().next().unwrap();
        let inv_exp: Vec<i32> = exp.iter().map(|&e| -e).collect();
        for (j, &e) in inv_exp.iter().enumerate() {
            if e < 0 && !self.ring.laurent[j] {
                return Err(Error::Other(format!(
                    "{self} is not invertible: {} is not a Laurent variable",
                    self.ring.vars[j]
                )));
            }
        }
        Ok(self.ring.monomial(c.inv()?, inv_exp))
    }

    /// Integer power; negative exponents require a unit monomial.
    pub fn pow_i(&self, k: i64) -> Result<Poly> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv_monomial()?.pow((-k) as u32))
        }
    }

    /// Substitute `images[j]` for variable j. Images live in `target`;
    /// negative exponents require unit-monomial images.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Poly]) -> Result<Poly> {
        assert_eq!(images.len(), self.ring.nvars());
        let mut out = target.zero();
        for (exp, c) in &self.terms {
            let mut term = target.constant(c.clone());
            for (j, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                term = term.mul(&images[j].pow_i(e as i64)?);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Evaluate at a point (one scalar per variable).
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = self.field().zero();
        for (exp, c) in &self.terms {
            let mut term = c.clone();
            for (j, &e) in exp.iter().enumerate() {
                if e != 0 {
                    term = &term * &point[j].pow(e as i64)?;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Re-embed into a bigger ring with this ring's variables at `offset`.
    pub fn embed(&self, target: &Arc<PolyRing>, offset: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (exp, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            e[offset..offset + exp.len()].copy_from_slice(exp);
            terms.insert(e, c.clone());
        }
        Poly {
            ring: Arc::clone(target),
            terms,
        }
    }
}

fn fmt_monomial(ring: &PolyRing, exp: &[i32]) -> String {
    let parts: Vec<String> = exp
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(j, &e)| {
            if e == 1 {
                ring.vars[j].clone()
            } else {
                format!("{}^{}", ring.vars[j], e)
            }
        })
        .collect();
    parts.join("*")
}

impl fmt::Display for Poly {
    /// Canonical graded-lex printing, parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        sorted.sort_by(|a, b| grlex(b.0, a.0));
        let mut first = true;
        for (exp, c) in sorted {
            let mono = fmt_monomial(&self.ring, exp);
            // pull out a leading minus only for rational coefficients
            let (neg, mag) = match c.to_rational() {
                Some(r) if r < num_rational::BigRational::from_integer(0.into()) => {
                    (true, self.field().from_rational(-r))
                }
                _ => (false, c.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let coeff_str = if mag.is_rational() {
                mag.to_string()
            } else if mag.coeffs().iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() == 1 {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            if mono.is_empty() {
                write!(f, "{coeff_str}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff_str}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<CycloField>, Arc<PolyRing>) {
        let f = CycloField::new(12);
        let r = PolyRing::standard(&f, 2);
        (f, r)
    }

    #[test]
    fn arithmetic_and_printing() {
        let (f, r) = setup();
        let h1 = r.var(0);
        let h2 = r.var(1);
        let p = h1.mul(&h1).sub(&h2.scale(&f.from_int(2))).add(&r.one());
        assert_eq!(p.to_string(), "h1^2 - 2*h2 + 1");
        assert_eq!(p.total_degree(), Some(2));
    }

    #[test]
    fn zero_has_empty_support() {
        let (_, r) = setup();
        let h1 = r.var(0);
        let z = h1.sub(&h1);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
    }

    #[test]
    fn leading_term_multiplicative() {
        // lt(fg) = lt(f)·lt(g): the ring is a domain
        let (_, r) = setup();
        let a = r.var(0).add(&r.var(1)).add(&r.one());
        let b = r.var(0).mul(&r.var(1)).sub(&r.int(3));
        let prod = a.mul(&b);
        let (ea, ca) = a.leading_term().unwrap();
        let (eb, cb) = b.leading_term().unwrap();
        let (ep, cp) = prod.leading_term().unwrap();
        let sum: Vec<i32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
        assert_eq!(*ep, sum);
        assert_eq!(*cp, ca * cb);
    }

    #[test]
    fn substitution_is_homomorphism() {
        let (f, r) = setup();
        let h1 = r.var(0);
        let h2 = r.var(1);
        // h1 -> h1 - 1, h2 -> q h2
        let images = vec![h1.sub(&r.one()), h2.scale(&f.zeta())];
        let a = h1.mul(&h2).add(&h2);
        let b = h1.add(&r.int(5));
        let lhs = a.mul(&b).substitute(&r, &images).unwrap();
        let rhs = a
            .substitute(&r, &images)
            .unwrap()
            .mul(&b.substitute(&r, &images).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_inverse_monomials() {
        let f = CycloField::new(4);
        let r = PolyRing::new(&f, vec!["h".into()], vec![true]);
        let h = r.var(0);
        let hinv = h.inv_monomial().unwrap();
        assert!(h.mul(&hinv).is_one());
        assert!(r.one().add(&h).inv_monomial().is_err());
    }

    #[test]
    fn eval_at_point() {
        let (f, r) = setup();
        let p = r.var(0).mul(&r.var(0)).sub(&r.one());
        let v = p.eval(&[f.from_int(3), f.zero()]).unwrap();
        assert_eq!(v, f.from_int(8));
    }
}
