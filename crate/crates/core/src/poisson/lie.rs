//! 2-shifted Poisson structures on quotient stacks `[M/g]` and 1-shifted
//! structures on `Bg` (quasi-Lie bialgebras).

use num_traits::Zero;

use super::mc::{gauge_apply, GaugeOrder, PoissonStructure};
use super::polyvector::{PolyAlgebra, Polyvector};
use super::PoissonError;
use crate::constructions::{chevalley_eilenberg, classifying_model, LieAlgebraData};
use crate::geometry::ManifoldModel;
use crate::graded_core::linalg::primitive;
use crate::graded_core::{qf, Flag, Matrix, Rational};
use crate::superalgebra::{Derivation, Mono, Poly};

/// Solutions `Σ C^{ij}(x) p_{e_i} p_{e_j}` of `[Q, π] = 0` on `Pol([M/g], 2)`, with
/// coefficients of polynomial degree at most `coeff_degree`, as a reduced basis.
pub fn casimir_2shifted_with(
    g: &LieAlgebraData,
    m: &ManifoldModel,
    action: &[Derivation],
    coeff_degree: i64,
) -> Result<(PolyAlgebra, Vec<PoissonStructure>), PoissonError> {
    let x = chevalley_eilenberg(g, m, action)?;
    let pa = PolyAlgebra::with_cutoff(&x, 2, false, 2);
    let k0 = m.ring().len();
    let is_e_momentum = |i: usize| i >= pa.p(k0) && i < pa.p(k0 + g.dim());
    let basis: Vec<Mono> = pa
        .ansatz(2..=2, 4, Flag::Equal, coeff_degree)
        .into_iter()
        .filter(|mono| mono.iter().enumerate().all(|(i, &e)| e == 0 || i < k0 || is_e_momentum(i)))
        .collect();
    let images: Vec<Poly> = basis.iter().map(|b| pa.differential(&Poly::monomial(b.clone(), qf(1, 1)))).collect();
    let mut rows: std::collections::BTreeSet<Mono> = std::collections::BTreeSet::new();
    for im in &images {
        rows.extend(im.terms().map(|(mm, _)| mm.clone()));
    }
    let rows: Vec<Mono> = rows.into_iter().collect();
    let mut a = Matrix::zeros(rows.len(), basis.len());
    for (j, im) in images.iter().enumerate() {
        for (i, mm) in rows.iter().enumerate() {
            let c = im.coeff(mm);
            if !c.is_zero() {
                a.set(i, j, c);
            }
        }
    }
    let kernel = if rows.is_empty() { identity_vectors(basis.len()) } else { a.kernel() };
    let reduced = reduced_basis(&kernel, basis.len());
    let sols = reduced
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero();
            for (mono, c) in basis.iter().zip(&v) {
                p.add_term(mono.clone(), c.clone());
            }
            PoissonStructure { pi: pa.wrap(p) }
        })
        .collect();
    Ok((pa, sols))
}

pub fn casimir_2shifted(
    g: &LieAlgebraData,
    m: &ManifoldModel,
    action: &[Derivation],
) -> Result<(PolyAlgebra, Vec<PoissonStructure>), PoissonError> {
    casimir_2shifted_with(g, m, action, 0)
}

fn identity_vectors(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { qf(1, 1) } else { qf(0, 1) }).collect()).collect()
}

/// Row-reduced basis of a span, each vector scaled to a primitive integer representative.
fn reduced_basis(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let e = Matrix::from_rows(vectors.to_vec()).echelon();
    (0..e.pivots.len()).map(|r| primitive(&(0..dim).map(|c| e.reduced.get(r, c).clone()).collect::<Vec<_>>())).collect()
}

/// `Pol(Bg, 1)` together with the pieces of a quasi-Lie bialgebra structure.
#[derive(Clone, Debug)]
pub struct QuasiLie {
    pub pa: PolyAlgebra,
    pub dim: usize,
}

impl QuasiLie {
    pub fn new(g: &LieAlgebraData) -> Result<Self, PoissonError> {
        let bg = classifying_model(g)?;
        Ok(QuasiLie { pa: PolyAlgebra::with_cutoff(&bg, 1, false, 3), dim: g.dim() })
    }

    /// `ϖ` for the cobracket `δ(e_k) = Σ_{i<j} γ^{ij}_k e_i ∧ e_j` given as `(i, j, k, γ)`.
    pub fn cobracket(&self, entries: &[(usize, usize, usize, Rational)]) -> Poly {
        let r = self.pa.ring();
        let mut out = Poly::zero();
        for (i, j, k, c) in entries {
            let t = r.mul_all([&r.var(*k), &r.var(self.pa.p(*i)), &r.var(self.pa.p(*j))]);
            out.add_assign(&t.scale(c));
        }
        out
    }

    /// `φ = Σ φ^{ijk} e_i ∧ e_j ∧ e_k` as a cubic in the momenta.
    pub fn trivector(&self, entries: &[(usize, usize, usize, Rational)]) -> Poly {
        let r = self.pa.ring();
        let mut out = Poly::zero();
        for (i, j, k, c) in entries {
            let t = r.mul_all([&r.var(self.pa.p(*i)), &r.var(self.pa.p(*j)), &r.var(self.pa.p(*k))]);
            out.add_assign(&t.scale(c));
        }
        out
    }

    pub fn bivector(&self, entries: &[(usize, usize, Rational)]) -> Poly {
        let r = self.pa.ring();
        let mut out = Poly::zero();
        for (i, j, c) in entries {
            out.add_assign(&r.mul(&r.var(self.pa.p(*i)), &r.var(self.pa.p(*j))).scale(c));
        }
        out
    }

    /// `({Q,ϖ}, ½{ϖ,ϖ} + {Q,φ}, {ϖ,φ})`.
    pub fn check(&self, varpi: &Poly, phi: &Poly) -> [Poly; 3] {
        let pa = &self.pa;
        [
            pa.differential(varpi),
            pa.bracket(varpi, varpi).scale(&qf(1, 2)).add(&pa.differential(phi)),
            pa.bracket(varpi, phi),
        ]
    }

    /// Twist by `λ ∈ Λ²g`: `exp(ad λ)(Q + ϖ + φ)`, which must stay within weights ≤ 3.
    pub fn twist(&self, lambda: &Poly, varpi: &Poly, phi: &Poly) -> Result<(Poly, Poly), PoissonError> {
        let pa = &self.pa;
        let pi = PoissonStructure { pi: pa.wrap(varpi.add(phi)) };
        let lam: Polyvector = pa.wrap(lambda.clone());
        let full = PolyAlgebra::with_cutoff(&pa.model, 1, false, 3 + 2 * self.dim);
        let out = gauge_apply(&full, &lam, &pi, GaugeOrder::Full)?;
        if out.pi.poly.terms().any(|(m, _)| full.weight(m) > 3) {
            return Err(PoissonError::TruncationExceeded(4));
        }
        Ok((pa.component(&out.pi.poly, 2), pa.component(&out.pi.poly, 3)))
    }
}

pub fn quasi_lie_bialgebra_check(g: &LieAlgebraData, varpi: &Poly, phi: &Poly) -> Result<[Poly; 3], PoissonError> {
    Ok(QuasiLie::new(g)?.check(varpi, phi))
}
