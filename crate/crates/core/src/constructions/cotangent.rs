//! Shifted cotangent bundles and derived critical loci over an affine chart.

use super::ConstructionError;
use crate::geometry::{Forms, ManifoldModel, ModelKind, PreSymplecticStructure};
use crate::graded_core::{Flag, TriDegree};
use crate::superalgebra::{FreeSuperCDGA, Generator, Poly, Ring};

/// A model together with its canonical closed 2-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticModel {
    pub model: ManifoldModel,
    pub omega: PreSymplecticStructure,
}

pub fn dual_name(name: &str) -> String {
    match name.strip_prefix('x') {
        Some(rest) => format!("xi{rest}"),
        None => format!("xi_{name}"),
    }
}

/// Degree of the coordinate dual to one of degree `d`: chain `n` for `n ≥ 0`,
/// cochain `-n` for `n < 0`, flag flipped when `reversed`.
pub fn dual_degree(d: TriDegree, n: i64, reversed: bool) -> TriDegree {
    let flag = if reversed { d.flag.flip() } else { d.flag };
    if n >= 0 {
        TriDegree::new(0, n, flag)
    } else {
        TriDegree::new(-n, 0, flag)
    }
}

/// `T*M[n]` (or its parity reversal), with `ω₂ = Σ dξ_i dx_i` of shift `-n`.
pub fn shifted_cotangent(m: &ManifoldModel, n: i64, parity_reversed: bool) -> Result<SymplecticModel, ConstructionError> {
    let ring = m.ring();
    if ring.gens().iter().any(|g| g.degree.cochain != 0 || g.degree.chain != 0) {
        return Err(ConstructionError::NotBaseModel);
    }
    let mut names: Vec<String> = ring.gens().iter().map(|g| g.name.clone()).collect();
    let mut extra = Vec::new();
    for g in ring.gens() {
        let mut name = dual_name(&g.name);
        while names.contains(&name) {
            name.push('_');
        }
        names.push(name.clone());
        extra.push(Generator::new(name, dual_degree(g.degree, n, parity_reversed)));
    }
    let big = ring.extend(extra)?;
    let algebra = FreeSuperCDGA::trivial(&big)?;
    let kind = if n > 0 { ModelKind::Dg } else { ModelKind::NQ };
    let model = ManifoldModel::new(kind, algebra)?;
    let omega = canonical_form(&model, ring.len(), n, parity_reversed);
    Ok(SymplecticModel { model, omega })
}

fn canonical_form(model: &ManifoldModel, k: usize, n: i64, reversed: bool) -> PreSymplecticStructure {
    let forms = Forms::new(model);
    let r = forms.ring();
    let mut w = Poly::zero();
    for i in 0..k {
        w.add_assign(&r.mul(&r.var(forms.dx(k + i)), &r.var(forms.dx(i))));
    }
    PreSymplecticStructure::new(-n, reversed, w)
}

/// `DCrit(M, f)`: the Koszul model with `δξ_i = ∂f/∂x_i`.
pub fn derived_critical_locus(m: &ManifoldModel, f: &Poly) -> Result<SymplecticModel, ConstructionError> {
    let ring = m.ring();
    if !ring.contains(f) {
        return Err(ConstructionError::Algebra(crate::superalgebra::AlgebraError::AlgebraMismatch));
    }
    let deg = ring.degree_of(f);
    let reversed = match deg {
        None if f.is_zero() => false,
        None => return Err(ConstructionError::DegreeMismatch("function is not homogeneous".into())),
        Some(d) if d.cochain != 0 || d.chain != 0 => {
            return Err(ConstructionError::DegreeMismatch(format!("function has degree {d}, expected (0,0,·)")))
        }
        Some(d) => d.flag == Flag::Unequal,
    };
    if reversed && !ring.gens().iter().any(Generator::is_odd) {
        return Err(ConstructionError::FlagMismatch);
    }
    let t = shifted_cotangent(m, 1, reversed)?;
    let big: Ring = t.model.ring().clone();
    let k = ring.len();
    let mut delta = vec![Poly::zero(); 2 * k];
    for i in 0..k {
        delta[k + i] = ring.deriv_left(f, i);
    }
    let algebra = FreeSuperCDGA::new(&big, Vec::new(), delta)?;
    Ok(SymplecticModel { model: ManifoldModel::new(ModelKind::Dg, algebra)?, omega: t.omega })
}
