//! Dg models carrying a strict, strictly non-degenerate `(-2)`-shifted Poisson
//! structure, built from an inner product bundle with connection and a section.

use super::ConstructionError;
use crate::geometry::de_rham::sample_points;
use crate::geometry::{ManifoldModel, ModelKind};
use crate::graded_core::{Matrix, Rational, TriDegree};
use crate::superalgebra::{FreeSuperCDGA, Generator, Poly, Ring};

/// Data over a base chart with coordinates `x_1..x_m`.
///
/// `E` is free with basis `e_1..e_r` (chain degree 1) and `F` is free with basis
/// `f_1..f_m` (chain degree 2). Polynomials live in the base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictMinus2Data {
    pub base: ManifoldModel,
    /// Symmetric `r × r` matrix `Q(e_a, e_b)`.
    pub inner: Vec<Vec<Poly>>,
    /// `connection[a][b][v]`: coefficient of `e_b ⊗ dx_v` in `∇e_a`.
    pub connection: Vec<Vec<Vec<Poly>>>,
    /// Components `φ^a` of the section `φ = Σ φ^a e_a`.
    pub phi: Vec<Poly>,
    /// `alpha[u][v]`: coefficient of `∂_v` in `α(f_u)`.
    pub alpha: Vec<Vec<Poly>>,
}

impl StrictMinus2Data {
    pub fn rank(&self) -> usize {
        self.phi.len()
    }

    /// Identity `α` and trivial connection.
    pub fn flat(base: ManifoldModel, inner: Vec<Vec<Poly>>, phi: Vec<Poly>) -> Self {
        let m = base.ring().len();
        let r = phi.len();
        let alpha = (0..m)
            .map(|u| (0..m).map(|v| if u == v { Poly::one() } else { Poly::zero() }).collect())
            .collect();
        StrictMinus2Data { base, inner, connection: vec![vec![vec![Poly::zero(); m]; r]; r], phi, alpha }
    }

    /// `Q(φ, φ)`.
    pub fn phi_norm(&self) -> Poly {
        let ring = self.base.ring();
        let mut s = Poly::zero();
        for a in 0..self.rank() {
            for b in 0..self.rank() {
                s.add_assign(&ring.mul_all([&self.phi[a], &self.phi[b], &self.inner[a][b]]));
            }
        }
        s
    }

    /// Component of `e_b` in `∂_v ⌟ ∇φ = Σ_b (∂_v φ^b + Σ_a φ^a Γ^b_{a,v}) e_b`.
    fn nabla_phi(&self, b: usize, v: usize) -> Poly {
        let ring = self.base.ring();
        let mut s = ring.deriv_left(&self.phi[b], v);
        for a in 0..self.rank() {
            s.add_assign(&ring.mul(&self.phi[a], &self.connection[a][b][v]));
        }
        s
    }

    fn check(&self) -> Result<(), ConstructionError> {
        let ring = self.base.ring();
        let (m, r) = (ring.len(), self.rank());
        if ring.gens().iter().any(|g| !g.is_base()) {
            return Err(ConstructionError::NotBaseModel);
        }
        let shape_ok = self.inner.len() == r
            && self.inner.iter().all(|row| row.len() == r)
            && self.connection.len() == r
            && self.connection.iter().all(|row| row.len() == r && row.iter().all(|c| c.len() == m))
            && self.alpha.len() == m
            && self.alpha.iter().all(|row| row.len() == m);
        if !shape_ok {
            return Err(ConstructionError::DegreeMismatch("strict data has inconsistent ranks".into()));
        }
        let norm = self.phi_norm();
        if (0..m).any(|v| !ring.deriv_left(&norm, v).is_zero()) {
            return Err(ConstructionError::MasterEquationFails(ring.format(&norm)));
        }
        for a in 0..r {
            for b in 0..r {
                if self.inner[a][b] != self.inner[b][a] {
                    return Err(ConstructionError::DegenerateInnerProduct("inner product is not symmetric".into()));
                }
            }
        }
        let points = sample_points(m);
        let eval = |p: &Poly, pt: &[Rational]| {
            let vals = pt.iter().cloned().enumerate().collect();
            ring.evaluate(p, &vals).constant_term()
        };
        let nondeg = |mat: &Vec<Vec<Poly>>| {
            points.iter().any(|pt| {
                let rows = mat.iter().map(|row| row.iter().map(|p| eval(p, pt)).collect()).collect();
                let mm = Matrix::from_rows(rows);
                mm.rows() == 0 || mm.rank() == mm.rows()
            })
        };
        if r > 0 && !nondeg(&self.inner) {
            return Err(ConstructionError::DegenerateInnerProduct("Q is singular at every sample point".into()));
        }
        if m > 0 && !nondeg(&self.alpha) {
            return Err(ConstructionError::DegenerateInnerProduct("α is not invertible".into()));
        }
        // ∂_v Q_ab = Σ_c Γ^c_{a,v} Q_cb + Q_ac Γ^c_{b,v}
        for a in 0..r {
            for b in 0..r {
                for v in 0..m {
                    let mut rhs = Poly::zero();
                    for c in 0..r {
                        rhs.add_assign(&ring.mul(&self.connection[a][c][v], &self.inner[c][b]));
                        rhs.add_assign(&ring.mul(&self.inner[a][c], &self.connection[b][c][v]));
                    }
                    if ring.deriv_left(&self.inner[a][b], v) != rhs {
                        return Err(ConstructionError::IncompatibleConnection { a: a + 1, b: b + 1 });
                    }
                }
            }
        }
        Ok(())
    }

    /// Generator values of `δ` on `e_a` and `f_u`, without validation.
    pub fn differential_values(&self) -> (Ring, Vec<Poly>) {
        let base = self.base.ring();
        let (m, r) = (base.len(), self.rank());
        let mut gens = Vec::new();
        for a in 1..=r {
            gens.push(Generator::new(format!("e{a}"), TriDegree::chain(1)));
        }
        for g in base.gens() {
            gens.push(Generator::new(format!("f_{}", g.name), TriDegree::chain(2)));
        }
        let ring = base.extend(gens).expect("fresh names");
        let mut delta = vec![Poly::zero(); m + r + m];
        for a in 0..r {
            for b in 0..r {
                delta[m + a].add_assign(&ring.mul(&self.phi[b], &self.inner[b][a]));
            }
        }
        for u in 0..m {
            let mut val = Poly::zero();
            for v in 0..m {
                for b in 0..r {
                    let coeff = ring.mul(&self.alpha[u][v], &self.nabla_phi(b, v));
                    val.add_assign(&ring.mul(&coeff, &ring.var(m + b)));
                }
            }
            delta[m + r + u] = val.neg();
        }
        (ring, delta)
    }
}

/// Dg model with `δ(e) = Q(φ, e)` and `δ(f) = -α(f) ⌟ ∇_E(φ)`.
pub fn strict_minus2(data: &StrictMinus2Data) -> Result<ManifoldModel, ConstructionError> {
    data.check()?;
    let (ring, delta) = data.differential_values();
    let algebra = FreeSuperCDGA::new(&ring, Vec::new(), delta)?;
    Ok(ManifoldModel::new(ModelKind::Dg, algebra)?)
}
