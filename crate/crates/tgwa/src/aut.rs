//! Affine ring automorphisms of the base ring and their action on points of
//! maximal ideals (h₁−c₁, …, h_m−c_m).
//!
//! Every automorphism in scope sends each generator to an affine polynomial
//! h_j ↦ Σ A_jk h_k + b_j with A invertible, which admits exact inversion and
//! an exact point action p ↦ A⁻¹(p − b).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

/// Ring automorphism with affine generator images and a cached inverse.
#[derive(Clone, PartialEq, Eq)]
pub struct RingAut {
    ring: Arc<PolyRing>,
    images: Vec<Poly>,
    inverse_images: Vec<Poly>,
    // affine data: images[j] = sum_k a[j][k] h_k + b[j]
    a: Vec<Vec<Scalar>>,
    b: Vec<Scalar>,
    a_inv: Vec<Vec<Scalar>>,
}

impl RingAut {
    pub fn new(ring: &Arc<PolyRing>, images: Vec<Poly>) -> Result<Self> {
        let n = ring.nvars();
        if images.len() != n {
            return Err(Error::RingMismatch(format!(
                "expected {n} images, got {}",
                images.len()
            )));
        }
        let field = ring.field();
        let mut a = vec![vec![field.zero(); n]; n];
        let mut b = vec![field.zero(); n];
        for (j, img) in images.iter().enumerate() {
            if img.ring() != ring {
                return Err(Error::RingMismatch("image in a different ring".into()));
            }
            for (exp, c) in img.terms() {
                let deg: i32 = exp.iter().map(|e| e.abs()).sum();
                match deg {
                    0 => b[j] = c.clone(),
                    1 => {
                        let k = exp.iter().position(|&e| e == 1).ok_or_else(|| {
                            Error::UnsupportedAutomorphismShape(format!(
                                "image {img} is not affine"
                            ))
                        })?;
                        a[j][k] = c.clone();
                    }
                    _ => {
                        return Err(Error::UnsupportedAutomorphismShape(format!(
                            "image {img} has degree > 1; only affine automorphisms are supported"
                        )))
                    }
                }
            }
            if ring.laurent()[j] && !b[j].is_zero() {
                return Err(Error::UnsupportedAutomorphismShape(format!(
                    "Laurent variable {} must map to a unit monomial, got {img}",
                    ring.vars()[j]
                )));
            }
        }
        let a_inv = linalg::invert(&a, field)?;
        // inverse map: h_j -> sum_k a_inv[j][k] (h_k - b_k)
        let mut inverse_images = Vec::with_capacity(n);
        for j in 0..n {
            let mut img = ring.zero();
            for k in 0..n {
                let diff = ring.var(k).sub(&ring.constant(b[k].clone()));
                img = img.add(&diff.scale(&a_inv[j][k]));
            }
            inverse_images.push(img);
        }
        Ok(RingAut {
            ring: Arc::clone(ring),
            images,
            inverse_images,
            a,
            b,
            a_inv,
        })
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        let images = (0..ring.nvars()).map(|j| ring.var(j)).collect();
        RingAut::new(ring, images).expect("identity is affine")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Poly] {
        &self.inverse_images
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        assert_eq!(f.ring(), &self.ring, "polynomial from a different ring");
        f.substitute(&self.ring, &self.images)
            .expect("affine images substitute cleanly")
    }

    pub fn apply_inverse(&self, f: &Poly) -> Poly {
        assert_eq!(f.ring(), &self.ring, "polynomial from a different ring");
        f.substitute(&self.ring, &self.inverse_images)
            .expect("affine inverse images substitute cleanly")
    }

    /// Signed power application: apply^k for k ≥ 0, inverse powers for k < 0.
    pub fn apply_pow(&self, f: &Poly, k: i64) -> Poly {
        let mut out = f.clone();
        if k >= 0 {
            for _ in 0..k {
                out = self.apply(&out);
            }
        } else {
            for _ in 0..(-k) {
                out = self.apply_inverse(&out);
            }
        }
        out
    }

    pub fn inverse(&self) -> RingAut {
        RingAut::new(&self.ring, self.inverse_images.clone()).expect("inverse is affine")
    }

    /// compose(a, b) applies b first, then a.
    pub fn compose(&self, other: &RingAut) -> RingAut {
        assert_eq!(self.ring, other.ring, "automorphisms of different rings");
        let images = other.images.iter().map(|img| self.apply(img)).collect();
        RingAut::new(&self.ring, images).expect("composition of affine maps is affine")
    }

    pub fn power(&self, k: i64) -> RingAut {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = RingAut::identity(&self.ring);
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn commutes_with(&self, other: &RingAut) -> bool {
        (0..self.ring.nvars()).all(|j| {
            self.apply(&other.images[j]) == other.apply(&self.images[j])
        })
    }

    pub fn is_identity(&self) -> bool {
        (0..self.ring.nvars()).all(|j| self.images[j] == self.ring.var(j))
    }

    /// Least k ≥ 1 with self^k = id, searched up to `bound`.
    pub fn order(&self, bound: u32) -> Option<u32> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = self.compose(&acc);
        }
        None
    }

    /// Scaling factors when every image is c_j·h_j (identity included).
    pub fn diagonal_factors(&self) -> Option<Vec<Scalar>> {
        let n = self.ring.nvars();
        let mut factors = Vec::with_capacity(n);
        for j in 0..n {
            if !self.b[j].is_zero() {
                return None;
            }
            for k in 0..n {
                if k != j && !self.a[j][k].is_zero() {
                    return None;
                }
            }
            factors.push(self.a[j][j].clone());
        }
        Some(factors)
    }

    /// For univariate shifts h ↦ h + s returns s.
    pub fn shift_amount(&self) -> Option<Scalar> {
        if self.ring.nvars() != 1 || !self.a[0][0].is_one() {
            return None;
        }
        Some(self.b[0].clone())
    }

    /// The point of a(𝔪_p): the unique p' where every apply(a, f) with
    /// f(p) = 0 vanishes; for affine maps p' = A⁻¹(p − b).
    pub fn act_on_point(&self, p: &Point) -> Point {
        assert_eq!(p.ring, self.ring);
        let diff: Vec<Scalar> = p
            .coords
            .iter()
            .zip(&self.b)
            .map(|(c, b)| c - b)
            .collect();
        Point {
            ring: Arc::clone(&self.ring),
            coords: linalg::mat_vec(&self.a_inv, &diff),
        }
    }

    pub fn act_on_point_pow(&self, p: &Point, k: i64) -> Point {
        let mut out = p.clone();
        if k >= 0 {
            for _ in 0..k {
                out = self.act_on_point(&out);
            }
        } else {
            let inv = self.inverse();
            for _ in 0..(-k) {
                out = inv.act_on_point(&out);
            }
        }
        out
    }
}

impl fmt::Display for RingAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring
            .vars()
            .iter()
            .zip(&self.images)
            .map(|(v, img)| format!("{v} -> {img}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

impl fmt::Debug for RingAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A rational point of MaxSpec(R): the maximal ideal (h₁−c₁, …, h_m−c_m).
#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    ring: Arc<PolyRing>,
    coords: Vec<Scalar>,
}

impl Point {
    pub fn new(ring: &Arc<PolyRing>, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != ring.nvars() {
            return Err(Error::RingMismatch(format!(
                "point needs {} coordinates",
                ring.nvars()
            )));
        }
        for (j, c) in coords.iter().enumerate() {
            if ring.laurent()[j] && c.is_zero() {
                return Err(Error::ZeroInput);
            }
        }
        Ok(Point {
            ring: Arc::clone(ring),
            coords,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// f(p) = 0 iff f lies in the maximal ideal at p.
    pub fn contains(&self, f: &Poly) -> bool {
        f.eval(&self.coords).map_or(false, |v| v.is_zero())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloField;

    fn weyl_shift() -> (Arc<PolyRing>, RingAut) {
        let f = CycloField::new(4);
        let r = PolyRing::standard(&f, 1);
        let sigma = RingAut::new(&r, vec![r.var(0).sub(&r.one())]).unwrap();
        (r, sigma)
    }

    #[test]
    fn shift_applies_and_inverts() {
        let (r, sigma) = weyl_shift();
        let h = r.var(0);
        assert_eq!(sigma.apply(&h), h.sub(&r.one()));
        assert_eq!(sigma.apply_inverse(&h), h.add(&r.one()));
        assert!(sigma.compose(&sigma.inverse()).is_identity());
        assert_eq!(sigma.compose(&sigma).apply(&h), h.sub(&r.int(2)));
    }

    #[test]
    fn identity_fixes_everything() {
        let (r, _) = weyl_shift();
        let id = RingAut::identity(&r);
        let p = r.var(0).mul(&r.var(0)).add(&r.int(7));
        assert_eq!(id.apply(&p), p);
    }

    #[test]
    fn apply_is_multiplicative() {
        let f = CycloField::new(12);
        let r = PolyRing::standard(&f, 2);
        // quantized-Weyl sigma_1: h1 -> 1 + q h1, h2 -> q h2
        let q = f.zeta();
        let img1 = r.one().add(&r.var(0).scale(&q));
        let img2 = r.var(1).scale(&q);
        let s1 = RingAut::new(&r, vec![img1, img2]).unwrap();
        assert_eq!(s1.apply(&r.var(1)), r.var(1).scale(&q));
        let a = r.var(0).add(&r.var(1));
        let b = r.var(0).mul(&r.var(1)).add(&r.int(2));
        assert_eq!(s1.apply(&a.mul(&b)), s1.apply(&a).mul(&s1.apply(&b)));
    }

    #[test]
    fn commuting_shifts() {
        let f = CycloField::new(4);
        let r = PolyRing::standard(&f, 1);
        let s1 = RingAut::new(&r, vec![r.var(0).add(&r.one())]).unwrap();
        let s2 = RingAut::new(&r, vec![r.var(0).sub(&r.one())]).unwrap();
        assert!(s1.commutes_with(&s2));
        let neg = RingAut::new(&r, vec![r.var(0).neg()]).unwrap();
        assert!(!neg.commutes_with(&s2));
    }

    #[test]
    fn point_action_matches_ideal_action() {
        let f = CycloField::new(4);
        let r = PolyRing::standard(&f, 1);
        let sigma = RingAut::new(&r, vec![r.var(0).sub(&r.one())]).unwrap();
        let p = Point::new(&r, vec![f.from_int(0)]).unwrap();
        let q = sigma.act_on_point(&p);
        assert_eq!(q.coords()[0], f.from_int(1));
        // apply(sigma, h - 0) must vanish at the image point
        let gen = r.var(0);
        assert!(q.contains(&sigma.apply(&gen)));

        // sigma(h) = i h on the point 2 gives -2i
        let rot = RingAut::new(&r, vec![r.var(0).scale(&f.zeta())]).unwrap();
        let p2 = Point::new(&r, vec![f.from_int(2)]).unwrap();
        let q2 = rot.act_on_point(&p2);
        let minus_2i = -&(&f.from_int(2) * &f.zeta());
        assert_eq!(q2.coords()[0], minus_2i);
    }

    #[test]
    fn point_action_is_functorial() {
        let f = CycloField::new(12);
        let r = PolyRing::standard(&f, 2);
        let a = RingAut::new(&r, vec![r.var(0).sub(&r.one()), r.var(1).scale(&f.zeta())]).unwrap();
        let b = RingAut::new(&r, vec![r.var(0).scale(&f.from_int(2)), r.var(1).add(&r.one())])
            .unwrap();
        let p = Point::new(&r, vec![f.from_int(3), f.rational(1, 2)]).unwrap();
        let lhs = a.compose(&b).act_on_point(&p);
        let rhs = a.act_on_point(&b.act_on_point(&p));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn order_detection() {
        let f = CycloField::new(12);
        let r = PolyRing::standard(&f, 1);
        let neg = RingAut::new(&r, vec![r.var(0).neg()]).unwrap();
        assert_eq!(neg.order(8), Some(2));
        let shift = RingAut::new(&r, vec![r.var(0).add(&r.one())]).unwrap();
        assert_eq!(shift.order(8), None);
    }
}
