//! Maurer–Cartan equation, gauge action, non-degeneracy and `σ`.

use std::collections::BTreeMap;

use super::polyvector::{PolyAlgebra, Polyvector};
use super::PoissonError;
use crate::geometry::de_rham::{nondegenerate_pairing, NondegeneracyReport};
use crate::graded_core::{qf, Rational};
use crate::superalgebra::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    pub pi: Polyvector,
}

impl PoissonStructure {
    pub fn new(pa: &PolyAlgebra, pi: Poly) -> Result<Self, PoissonError> {
        let s = PoissonStructure { pi: pa.wrap(pi) };
        check_structure_degree(pa, &s.pi.poly, pa.structure_degree(), 2)?;
        Ok(s)
    }

    pub fn component(&self, pa: &PolyAlgebra, w: usize) -> Poly {
        pa.component(&self.pi.poly, w)
    }
}

pub fn check_structure_degree(pa: &PolyAlgebra, p: &Poly, degree: i64, min_weight: usize) -> Result<(), PoissonError> {
    let r = pa.ring();
    for (m, _) in p.terms() {
        let d = r.mono_degree(m);
        if d.total() != degree || d.flag != pa.flag() || pa.weight(m) < min_weight {
            return Err(PoissonError::DegreeMismatch(format!(
                "term {} has degree {d} and weight {}, expected total degree {degree}, flag {:?}, weight ≥ {min_weight}",
                r.format_mono(m),
                pa.weight(m),
                pa.flag()
            )));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McReport {
    pub passes: bool,
    /// Weight `i` to `Q(π_i) + ½ Σ_{j+k=i+1} [π_j, π_k]`.
    pub residuals: BTreeMap<usize, Poly>,
    /// Residuals are certified for weights up to this bound.
    pub certified_upto: usize,
}

pub fn mc_check(pa: &PolyAlgebra, pi: &PoissonStructure) -> Result<McReport, PoissonError> {
    pa.check(&pi.pi)?;
    let comps = pa.components(&pi.pi.poly);
    let half = qf(1, 2);
    let mut residuals = BTreeMap::new();
    for i in 2..=pa.cutoff {
        let mut r = pa.differential(comps.get(&i).unwrap_or(&Poly::zero()));
        for j in 2..i {
            let k = i + 1 - j;
            if let (Some(a), Some(b)) = (comps.get(&j), comps.get(&k)) {
                r.add_assign(&pa.bracket(a, b).scale(&half));
            }
        }
        residuals.insert(i, pa.component(&r, i));
    }
    Ok(McReport { passes: residuals.values().all(Poly::is_zero), residuals, certified_upto: pa.cutoff })
}

/// How much of `exp(ad λ)` to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeOrder {
    /// `π + [λ, Q + π]`, rejected when the second-order term survives the truncation.
    First,
    /// The full exponential, which terminates on the truncated algebra.
    Full,
}

/// `exp(ad λ)(Q + π) - Q`, truncated above the cutoff.
pub fn gauge_apply(
    pa: &PolyAlgebra,
    lambda: &Polyvector,
    pi: &PoissonStructure,
    order: GaugeOrder,
) -> Result<PoissonStructure, PoissonError> {
    pa.check(lambda)?;
    pa.check(&pi.pi)?;
    check_structure_degree(pa, &lambda.poly, pa.structure_degree() - 1, 2)?;
    let x = pa.q_element().add(&pi.pi.poly);
    let mut term = pa.truncate(&pa.bracket(&lambda.poly, &x));
    let mut total = pi.pi.poly.add(&term);
    let mut k = 1u32;
    loop {
        let next = pa.truncate(&pa.bracket(&lambda.poly, &term)).scale(&qf(1, (k + 1) as i64));
        if next.is_zero() {
            break;
        }
        if order == GaugeOrder::First {
            return Err(PoissonError::TruncationExceeded(k as usize + 1));
        }
        total.add_assign(&next);
        term = next;
        k += 1;
    }
    Ok(PoissonStructure { pi: pa.wrap(total) })
}

/// Rank test of `π₂♯: du ↦ [π₂, x_u]` at sample points, with a cone check when differentials are present.
pub fn nondegenerate(pa: &PolyAlgebra, pi: &PoissonStructure) -> NondegeneracyReport {
    let r = pa.ring().clone();
    let pi2 = pi.component(pa, 2);
    let images: Vec<Poly> = (0..pa.k()).map(|u| pa.bracket(&pi2, &r.var(u))).collect();
    nondegenerate_pairing(
        &pa.model,
        &r,
        pa.k(),
        |v, u| r.deriv_left(&images[u], pa.p(v)),
        |v, u| r.deriv_left(&pa.differential(&r.var(pa.p(u))), pa.p(v)),
        |u| r.gen(u).degree.parity(),
    )
}

/// `σ(π) = Σ (i-1) π_i`.
pub fn sigma(pa: &PolyAlgebra, pi: &Polyvector) -> Polyvector {
    let mut out = Poly::zero();
    for (w, c) in pa.components(&pi.poly) {
        out.add_assign(&c.scale(&Rational::from_integer((w as i64 - 1).into())));
    }
    pa.wrap(out)
}
