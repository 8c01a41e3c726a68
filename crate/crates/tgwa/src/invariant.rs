//! Fixed subrings R^φ for the supported restriction shapes: identity and
//! diagonal scalings by roots of unity. Membership is decided monomial by
//! monomial (the group acts diagonally on monomials); generators are the
//! Hilbert-basis monomials of the invariant exponent monoid.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::aut::{Point, RingAut};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubringKind {
    Identity,
    UnivariateScaling,
    DiagonalScaling,
}

/// The invariant subring of a supported automorphism of the base ring.
///
/// The scaling factors generate a cyclic group of order ℓ; writing each
/// factor as g^{k_j} for a fixed generator g, a monomial h^e is invariant
/// iff Σ e_j k_j ≡ 0 (mod ℓ).
#[derive(Clone)]
pub struct FixedSubring {
    ring: Arc<PolyRing>,
    kind: SubringKind,
    order: u32,
    factors: Vec<Scalar>,
    logs: Vec<u32>,
    generators: Vec<Poly>,
}

impl FixedSubring {
    /// Compute R^φ for φ of finite order ℓ. Shifts mixed with scalings (or
    /// any non-diagonal map) are rejected.
    pub fn compute(phi: &RingAut, ell: u32) -> Result<Self> {
        let ring = Arc::clone(phi.ring());
        let factors = phi.diagonal_factors().ok_or_else(|| {
            Error::UnsupportedAutomorphismShape(format!(
                "phi|_R must be the identity or a diagonal scaling, got {phi}"
            ))
        })?;
        let mut factor_orders = Vec::with_capacity(factors.len());
        for c in &factors {
            match c.multiplicative_order()? {
                Some(o) => factor_orders.push(o),
                None => return Err(Error::InfiniteOrder),
            }
        }
        let order = factor_orders.iter().fold(1u32, |a, &b| a.lcm(&b));
        if order != ell {
            return Err(Error::HypothesisViolated(format!(
                "stated order {ell} but phi|_R has order {order}"
            )));
        }
        let logs = discrete_logs(&factors, order, ring.field());
        let kind = if order == 1 {
            SubringKind::Identity
        } else if ring.nvars() == 1 {
            SubringKind::UnivariateScaling
        } else {
            SubringKind::DiagonalScaling
        };
        let generators = match kind {
            SubringKind::Identity => {
                let mut gens: Vec<Poly> = (0..ring.nvars()).map(|j| ring.var(j)).collect();
                for j in 0..ring.nvars() {
                    if ring.laurent()[j] {
                        gens.push(ring.var(j).inv_monomial()?);
                    }
                }
                gens
            }
            _ => invariant_monomial_generators(&ring, &logs, &factor_orders, order),
        };
        Ok(FixedSubring {
            ring,
            kind,
            order,
            factors,
            logs,
            generators,
        })
    }

    pub fn identity(ring: &Arc<PolyRing>) -> Self {
        FixedSubring::compute(&RingAut::identity(ring), 1).expect("identity is supported")
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn kind(&self) -> SubringKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn factors(&self) -> &[Scalar] {
        &self.factors
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    fn exp_invariant(&self, exp: &[i32]) -> bool {
        exp_invariant(exp, &self.logs, self.order)
    }

    /// Membership: every monomial individually invariant (diagonal action).
    pub fn contains(&self, f: &Poly) -> bool {
        assert_eq!(f.ring(), &self.ring, "polynomial from a different ring");
        f.terms().all(|(exp, _)| self.exp_invariant(exp))
    }

    /// Evaluate the generators at a point: a fingerprint of the pushed-down
    /// maximal ideal 𝔪^φ = 𝔪 ∩ R^φ.
    pub fn project_point(&self, p: &Point) -> Vec<Scalar> {
        self.generators
            .iter()
            .map(|g| g.eval(p.coords()).expect("generator evaluates"))
            .collect()
    }
}

fn exp_invariant(exp: &[i32], logs: &[u32], order: u32) -> bool {
    let s: i64 = exp
        .iter()
        .zip(logs)
        .map(|(&e, &k)| e as i64 * k as i64)
        .sum();
    s.rem_euclid(order as i64) == 0
}

/// Express each factor as g^{k_j} for one generator g of the cyclic group
/// the factors generate.
fn discrete_logs(
    factors: &[Scalar],
    order: u32,
    field: &Arc<crate::scalar::CycloField>,
) -> Vec<u32> {
    if order == 1 {
        return vec![0; factors.len()];
    }
    // enumerate the group generated by the factors and pick an element of
    // full order
    let mut elements = vec![field.one()];
    let mut seen: BTreeSet<String> = BTreeSet::new();
    seen.insert(field.one().to_string());
    let mut frontier = vec![field.one()];
    while let Some(x) = frontier.pop() {
        for c in factors {
            let y = &x * c;
            if seen.insert(y.to_string()) {
                elements.push(y.clone());
                frontier.push(y);
            }
        }
    }
    let g = elements
        .iter()
        .find(|e| e.multiplicative_order().unwrap() == Some(order))
        .expect("finitely generated subgroup of roots of unity is cyclic")
        .clone();
    factors
        .iter()
        .map(|c| {
            let mut p = field.one();
            for k in 0..order {
                if &p == c {
                    return k;
                }
                p = &p * &g;
            }
            unreachable!("factor lies in the group generated")
        })
        .collect()
}

fn invariant_monomial_generators(
    ring: &Arc<PolyRing>,
    logs: &[u32],
    factor_orders: &[u32],
    order: u32,
) -> Vec<Poly> {
    // Candidate exponents: the Noether bound (total degree <= order) for
    // polynomial variables; a box |e_j| <= ord(c_j) when Laurent variables
    // are present (the invariant lattice contains prod o_j Z and coset
    // representatives fit in the box).
    let nvars = ring.nvars();
    let any_laurent = ring.laurent().iter().any(|&b| b);
    let mut exps: Vec<Vec<i32>> = Vec::new();
    let mut cur = vec![0i32; nvars];
    walk_exponents(
        0,
        &mut cur,
        ring,
        order,
        factor_orders,
        any_laurent,
        &mut exps,
    );
    exps.retain(|e| exp_invariant(e, logs, order));
    exps.sort_by_key(|e| {
        (
            e.iter().map(|&x| x.unsigned_abs() as u64).sum::<u64>(),
            e.clone(),
        )
    });

    // minimalize: drop exponents reachable as sums of kept ones
    let mut kept: Vec<Vec<i32>> = Vec::new();
    for e in exps {
        if !representable(&e, &kept, ring.laurent()) {
            kept.push(e);
        }
    }
    let field = ring.field();
    kept.into_iter()
        .map(|e| ring.monomial(field.one(), e))
        .collect()
}

fn walk_exponents(
    j: usize,
    cur: &mut Vec<i32>,
    ring: &PolyRing,
    order: u32,
    factor_orders: &[u32],
    any_laurent: bool,
    out: &mut Vec<Vec<i32>>,
) {
    if j == cur.len() {
        if cur.iter().any(|&e| e != 0) {
            out.push(cur.clone());
        }
        return;
    }
    let (lo, hi) = if ring.laurent()[j] {
        (-(factor_orders[j] as i32), factor_orders[j] as i32)
    } else if any_laurent {
        (0, factor_orders[j] as i32)
    } else {
        (0, order as i32)
    };
    for e in lo..=hi {
        cur[j] = e;
        if !any_laurent {
            let deg: i32 = cur[..=j].iter().sum();
            if deg > order as i32 {
                continue;
            }
        }
        walk_exponents(j + 1, cur, ring, order, factor_orders, any_laurent, out);
    }
    cur[j] = 0;
}

/// Is `target` a nonnegative-integer combination of `gens`? Small search.
fn representable(target: &[i32], gens: &[Vec<i32>], laurent: &[bool]) -> bool {
    if gens.is_empty() {
        return false;
    }
    fn l1(v: &[i32]) -> i64 {
        v.iter().map(|&x| x.unsigned_abs() as i64).sum()
    }
    fn search(
        rem: Vec<i32>,
        gens: &[Vec<i32>],
        laurent: &[bool],
        seen: &mut BTreeSet<Vec<i32>>,
    ) -> bool {
        if rem.iter().all(|&e| e == 0) {
            return true;
        }
        if !seen.insert(rem.clone()) {
            return false;
        }
        let has_laurent = laurent.iter().any(|&b| b);
        for g in gens {
            let feasible = rem
                .iter()
                .zip(g)
                .zip(laurent)
                .all(|((&r, &gv), &l)| l || r - gv >= 0);
            if !feasible {
                continue;
            }
            let next: Vec<i32> = rem.iter().zip(g).map(|(r, gv)| r - gv).collect();
            // in Laurent coordinates insist on L1 progress so the search is finite
            if has_laurent && l1(&next) >= l1(&rem) {
                continue;
            }
            if search(next, gens, laurent, seen) {
                return true;
            }
        }
        false
    }
    let mut seen = BTreeSet::new();
    search(target.to_vec(), gens, laurent, &mut seen)
}

impl fmt::Display for FixedSubring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "k[{}]", gens.join(", "))
    }
}

impl fmt::Debug for FixedSubring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloField;

    #[test]
    fn identity_generators_are_variables() {
        let f = CycloField::new(4);
        let r = PolyRing::standard(&f, 2);
        let s = FixedSubring::identity(&r);
        assert_eq!(s.kind(), SubringKind::Identity);
        assert_eq!(s.generators(), &[r.var(0), r.var(1)]);
        assert!(s.contains(&r.var(0).mul(&r.var(0).add(&r.one()))));
    }

    #[test]
    fn sign_flip_gives_h_squared() {
        let f = CycloField::new(4);
        let r = PolyRing::standard(&f, 1);
        let phi = RingAut::new(&r, vec![r.var(0).neg()]).unwrap();
        let s = FixedSubring::compute(&phi, 2).unwrap();
        assert_eq!(s.kind(), SubringKind::UnivariateScaling);
        assert_eq!(s.generators(), &[r.var(0).pow(2)]);
        assert!(s.contains(&r.var(0).pow(2)));
        assert!(!s.contains(&r.var(0).pow(3)));
    }

    #[test]
    fn zeta3_diagonal_generators() {
        let f = CycloField::new(12);
        let r = PolyRing::standard(&f, 2);
        let z3 = f.zeta().pow(4).unwrap();
        let phi = RingAut::new(
            &r,
            vec![r.var(0).scale(&z3), r.var(1).scale(&z3.pow(2).unwrap())],
        )
        .unwrap();
        let s = FixedSubring::compute(&phi, 3).unwrap();
        let got: BTreeSet<String> = s.generators().iter().map(|g| g.to_string()).collect();
        let want: BTreeSet<String> =
            ["h1*h2", "h1^3", "h2^3"].iter().map(|x| x.to_string()).collect();
        assert_eq!(got, want);
        assert!(s.contains(&r.var(0).mul(&r.var(1))));
        assert!(!s.contains(&r.var(0).mul(&r.var(1).pow(2))));

        // brute force: every invariant monomial of degree <= 9 factors
        // through the generators
        for e1 in 0..=9i32 {
            for e2 in 0..=(9 - e1) {
                if (e1 + 2 * e2) % 3 == 0 && (e1, e2) != (0, 0) {
                    let gens: Vec<Vec<i32>> = vec![vec![1, 1], vec![0, 3], vec![3, 0]];
                    assert!(
                        representable(&[e1, e2], &gens, &[false, false]),
                        "monomial ({e1},{e2}) should decompose"
                    );
                }
            }
        }
    }

    #[test]
    fn shifts_are_rejected() {
        let f = CycloField::new(4);
        let r = PolyRing::standard(&f, 1);
        let shift = RingAut::new(&r, vec![r.var(0).add(&r.one())]).unwrap();
        assert!(matches!(
            FixedSubring::compute(&shift, 1),
            Err(Error::UnsupportedAutomorphismShape(_))
        ));
    }

    #[test]
    fn reynolds_projector_agrees_with_membership() {
        let f = CycloField::new(12);
        let r = PolyRing::standard(&f, 1);
        let z4 = f.zeta().pow(3).unwrap();
        let phi = RingAut::new(&r, vec![r.var(0).scale(&z4)]).unwrap();
        let s = FixedSubring::compute(&phi, 4).unwrap();
        let ell = 4u32;
        for deg in 0..=(2 * ell) {
            let m = r.var(0).pow(deg);
            let mut avg = r.zero();
            for k in 0..ell {
                avg = avg.add(&phi.apply_pow(&m, k as i64));
            }
            avg = avg.scale(&f.rational(1, ell as i64));
            assert_eq!(avg == m, s.contains(&m), "degree {deg}");
        }
    }

    #[test]
    fn laurent_scaling_generators_invert() {
        let f = CycloField::new(4);
        let r = PolyRing::new(&f, vec!["h".into()], vec![true]);
        let phi = RingAut::new(&r, vec![r.var(0).scale(&f.zeta())]).unwrap();
        let s = FixedSubring::compute(&phi, 4).unwrap();
        for g in s.generators() {
            assert_eq!(phi.apply(g), *g);
        }
        assert!(s.contains(&r.var(0).pow(4)));
        assert!(s.contains(&r.var(0).pow(4).inv_monomial().unwrap()));
    }

    #[test]
    fn generators_are_fixed_by_phi() {
        let f = CycloField::new(12);
        let r = PolyRing::standard(&f, 2);
        let z6 = f.zeta().pow(2).unwrap();
        let phi = RingAut::new(
            &r,
            vec![r.var(0).scale(&z6), r.var(1).scale(&z6.pow(5).unwrap())],
        )
        .unwrap();
        let s = FixedSubring::compute(&phi, 6).unwrap();
        assert!(!s.generators().is_empty());
        for g in s.generators() {
            assert_eq!(phi.apply(g), *g);
        }
    }
}
