//! TGW data (R, σ, t, μ): structural validation, the two consistency
//! equations, Cartan-type detection through the minimal polynomials of σ_i
//! acting on V_ij = span{σ_i^k(t_j)}, and tensor products of data.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::aut::RingAut;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

/// Defining data of a TGWA: base ring, commuting automorphisms σ, central
/// nonzero t's, and the twist matrix μ (diagonal stored but ignored).
#[derive(Clone, PartialEq, Eq)]
pub struct TgwaDatum {
    ring: Arc<PolyRing>,
    sigma: Vec<RingAut>,
    t: Vec<Poly>,
    mu: Vec<Vec<Scalar>>,
}

impl TgwaDatum {
    pub fn new(
        ring: &Arc<PolyRing>,
        sigma: Vec<RingAut>,
        t: Vec<Poly>,
        mu: Vec<Vec<Scalar>>,
    ) -> Result<Self> {
        let n = sigma.len();
        if t.len() != n || mu.len() != n || mu.iter().any(|row| row.len() != n) {
            return Err(Error::Schema(format!(
                "rank mismatch: {} sigmas, {} t's, {}x? mu",
                n,
                t.len(),
                mu.len()
            )));
        }
        for (i, s) in sigma.iter().enumerate() {
            if s.ring() != ring {
                return Err(Error::RingMismatch(format!("sigma_{} over a different ring", i + 1)));
            }
            for (j, s2) in sigma.iter().enumerate().skip(i + 1) {
                if !s.commutes_with(s2) {
                    return Err(Error::NonCommutingSigmas(i + 1, j + 1));
                }
            }
        }
        for (i, ti) in t.iter().enumerate() {
            if ti.ring() != ring {
                return Err(Error::RingMismatch(format!("t_{} over a different ring", i + 1)));
            }
            if ti.is_zero() {
                return Err(Error::ZeroT(i + 1));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && mu[i][j].is_zero() {
                    return Err(Error::ZeroMu(i + 1, j + 1));
                }
            }
        }
        Ok(TgwaDatum {
            ring: Arc::clone(ring),
            sigma,
            t,
            mu,
        })
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn sigma(&self, i: usize) -> &RingAut {
        &self.sigma[i]
    }

    pub fn sigmas(&self) -> &[RingAut] {
        &self.sigma
    }

    pub fn t(&self, i: usize) -> &Poly {
        &self.t[i]
    }

    pub fn ts(&self) -> &[Poly] {
        &self.t
    }

    pub fn mu(&self, i: usize, j: usize) -> &Scalar {
        &self.mu[i][j]
    }

    pub fn mu_matrix(&self) -> &Vec<Vec<Scalar>> {
        &self.mu
    }

    /// Apply ∏ σ_i^{d_i} (the automorphisms commute, so order is immaterial).
    pub fn sigma_pow(&self, d: &[i32], f: &Poly) -> Poly {
        let mut out = f.clone();
        for (i, &e) in d.iter().enumerate() {
            out = self.sigma[i].apply_pow(&out, e as i64);
        }
        out
    }

    /// Exact evaluation of the consistency equations plus regularity flags.
    pub fn validate(&self) -> ConsistencyReport {
        let n = self.rank();
        let mut cons1 = BTreeMap::new();
        let mut cons2 = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let lhs = self.sigma[i].apply(&self.sigma[j].apply(&self.t[i].mul(&self.t[j])));
                let rhs = self.sigma[i]
                    .apply(&self.t[i])
                    .mul(&self.sigma[j].apply(&self.t[j]))
                    .scale(&(&self.mu[i][j] * &self.mu[j][i]));
                cons1.insert((i + 1, j + 1), lhs == rhs);
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let lhs = self.t[j].mul(&self.sigma[i].apply(&self.sigma[k].apply(&self.t[j])));
                    let rhs = self.sigma[i]
                        .apply(&self.t[j])
                        .mul(&self.sigma[k].apply(&self.t[j]));
                    cons2.insert((i + 1, j + 1, k + 1), lhs == rhs);
                }
            }
        }
        let regular: Vec<bool> = self.t.iter().map(|ti| !ti.is_zero()).collect();
        let overall = cons1.values().all(|&b| b)
            && cons2.values().all(|&b| b)
            && regular.iter().all(|&b| b);
        ConsistencyReport {
            cons1,
            cons2,
            regular,
            overall,
        }
    }

    /// Iterate σ_i^k(t_j) forward until linear dependence; the dependence
    /// polynomial is the minimal polynomial of σ_i on V_ij (σ_i is invertible
    /// on the finite-dimensional invariant span, so forward iteration sees
    /// all of V_ij).
    pub fn cartan_type(&self, bound: usize) -> CartanReport {
        let n = self.rank();
        let field = self.ring.field();
        let mut vdims = BTreeMap::new();
        let mut minpolys = BTreeMap::new();
        let mut exceeded = false;
        for i in 0..n {
            for j in 0..n {
                match minimal_polynomial(&self.sigma[i], &self.t[j], bound) {
                    Some(p) => {
                        vdims.insert((i + 1, j + 1), VDim::Dim(p.len() - 1));
                        minpolys.insert((i + 1, j + 1), p);
                    }
                    None => {
                        vdims.insert((i + 1, j + 1), VDim::ExceedsBound);
                        exceeded = true;
                    }
                }
            }
        }
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    cartan[i][j] = 2;
                } else {
                    cartan[i][j] = match vdims.get(&(i + 1, j + 1)) {
                        Some(VDim::Dim(d)) => 1 - *d as i64,
                        _ => i64::MIN,
                    };
                }
            }
        }
        let type_tag = if exceeded {
            CartanType::Unknown
        } else if (0..n).all(|i| {
            (0..n).all(|j| i == j || matches!(vdims[&(i + 1, j + 1)], VDim::Dim(1)))
        }) {
            // deg p_ij = 1 for all i != j: sigma_i(t_j) = gamma_ij t_j
            let mut gamma = vec![vec![field.one(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        // p(x) = x - gamma
                        gamma[i][j] = -&minpolys[&(i + 1, j + 1)][0];
                    }
                }
            }
            CartanType::A1n { gamma }
        } else if n == 2
            && matches!(vdims[&(1, 2)], VDim::Dim(2))
            && matches!(vdims[&(2, 1)], VDim::Dim(2))
        {
            let p12 = &minpolys[&(1, 2)];
            let p21 = &minpolys[&(2, 1)];
            CartanType::A2 {
                lambda: (p12[1].clone(), p12[0].clone()),
                eta: (p21[1].clone(), p21[0].clone()),
            }
        } else {
            CartanType::Other
        };
        CartanReport {
            vdims,
            minpolys,
            cartan,
            type_tag,
        }
    }

    /// Tensor product datum: juxtaposed variables, σ ⊗ id / id ⊗ σ', t ⊗ 1 /
    /// 1 ⊗ t', and the block twist matrix with 1 in the off-blocks.
    pub fn tensor(&self, other: &TgwaDatum) -> Result<TgwaDatum> {
        let field = self.ring.field();
        if field != other.ring.field() {
            return Err(Error::FieldMismatch(
                "tensor factors over different cyclotomic fields".into(),
            ));
        }
        if self.ring.nvars() == 0 && self.rank() == 0 {
            return Ok(other.clone());
        }
        if other.ring.nvars() == 0 && other.rank() == 0 {
            return Ok(self.clone());
        }
        let m_vars = self.ring.nvars();
        let total_vars = m_vars + other.ring.nvars();
        let laurent: Vec<bool> = self
            .ring
            .laurent()
            .iter()
            .chain(other.ring.laurent())
            .copied()
            .collect();
        let vars: Vec<String> = (1..=total_vars).map(|i| format!("h{i}")).collect();
        let ring = PolyRing::new(field, vars, laurent);

        let m = self.rank();
        let n = other.rank();
        let mut sigma = Vec::with_capacity(m + n);
        for i in 0..m {
            let mut images: Vec<Poly> = self.sigma[i]
                .images()
                .iter()
                .map(|f| f.embed(&ring, 0))
                .collect();
            for j in 0..other.ring.nvars() {
                images.push(ring.var(m_vars + j));
            }
            sigma.push(RingAut::new(&ring, images)?);
        }
        for i in 0..n {
            let mut images: Vec<Poly> = (0..m_vars).map(|j| ring.var(j)).collect();
            images.extend(
                other.sigma[i]
                    .images()
                    .iter()
                    .map(|f| f.embed(&ring, m_vars)),
            );
            sigma.push(RingAut::new(&ring, images)?);
        }
        let mut t = Vec::with_capacity(m + n);
        for ti in &self.t {
            t.push(ti.embed(&ring, 0));
        }
        for ti in &other.t {
            t.push(ti.embed(&ring, m_vars));
        }
        let mut mu = vec![vec![field.one(); m + n]; m + n];
        for i in 0..m {
            for j in 0..m {
                mu[i][j] = self.mu[i][j].clone();
            }
        }
        for i in 0..n {
            for j in 0..n {
                mu[m + i][m + j] = other.mu[i][j].clone();
            }
        }
        TgwaDatum::new(&ring, sigma, t, mu)
    }
}

impl fmt::Debug for TgwaDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TgwaDatum(rank {}, vars {:?})", self.rank(), self.ring.vars())?;
        for (i, s) in self.sigma.iter().enumerate() {
            writeln!(f, "  sigma_{}: {}", i + 1, s)?;
        }
        for (i, t) in self.t.iter().enumerate() {
            writeln!(f, "  t_{}: {}", i + 1, t)?;
        }
        Ok(())
    }
}

/// Per-pair verdicts for the two consistency equations.
#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub cons1: BTreeMap<(usize, usize), bool>,
    pub cons2: BTreeMap<(usize, usize, usize), bool>,
    pub regular: Vec<bool>,
    pub overall: bool,
}

impl ConsistencyReport {
    pub fn cons1_ok(&self) -> bool {
        self.cons1.values().all(|&b| b)
    }

    pub fn cons2_ok(&self) -> bool {
        self.cons2.values().all(|&b| b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VDim {
    Dim(usize),
    ExceedsBound,
}

/// Detected 𝕜-finitistic type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CartanType {
    A1n { gamma: Vec<Vec<Scalar>> },
    A2 { lambda: (Scalar, Scalar), eta: (Scalar, Scalar) },
    Other,
    Unknown,
}

/// Minimal polynomials, V_ij dimensions, and the generalized Cartan matrix.
#[derive(Clone, Debug)]
pub struct CartanReport {
    pub vdims: BTreeMap<(usize, usize), VDim>,
    /// Monic minimal polynomial of σ_i on V_ij, constant coefficient first.
    pub minpolys: BTreeMap<(usize, usize), Vec<Scalar>>,
    pub cartan: Vec<Vec<i64>>,
    pub type_tag: CartanType,
}

/// First linear dependence among t, σ(t), σ²(t), …; returns the monic
/// dependence polynomial (constant first) or None past the bound.
fn minimal_polynomial(sigma: &RingAut, t: &Poly, bound: usize) -> Option<Vec<Scalar>> {
    let field = t.field();
    let mut iterates: Vec<Poly> = vec![t.clone()];
    for _ in 0..bound {
        let next = sigma.apply(iterates.last().unwrap());
        // coordinates over the union of supports
        let mut cols: BTreeMap<Vec<i32>, usize> = BTreeMap::new();
        for p in iterates.iter().chain(std::iter::once(&next)) {
            for (exp, _) in p.terms() {
                let idx = cols.len();
                cols.entry(exp.clone()).or_insert(idx);
            }
        }
        let coords = |p: &Poly| -> Vec<Scalar> {
            let mut v = vec![field.zero(); cols.len()];
            for (exp, c) in p.terms() {
                v[cols[exp]] = c.clone();
            }
            v
        };
        // rows = monomials, columns = previous iterates
        let rows = cols.len();
        let mut a = vec![Vec::with_capacity(iterates.len()); rows];
        for p in &iterates {
            let v = coords(p);
            for (r, val) in v.into_iter().enumerate() {
                a[r].push(val);
            }
        }
        let b = coords(&next);
        if let Some(sol) = linalg::solve(&a, &b) {
            // sigma^d(t) = sum c_k sigma^k(t)  =>  p(x) = x^d - sum c_k x^k
            let mut p: Vec<Scalar> = sol.into_iter().map(|c| -&c).collect();
            p.push(field.one());
            return Some(p);
        }
        iterates.push(next);
    }
    None
}
