//! Chevalley–Eilenberg models `[M/g]` of infinitesimal actions.

use super::{ConstructionError, LieAlgebraData};
use crate::geometry::{ManifoldModel, ModelKind};
use crate::graded_core::{qf, TriDegree};
use crate::superalgebra::{Derivation, FreeSuperCDGA, Generator, Poly, Ring};

/// Names of the dual basis generators, avoiding clashes with `taken`.
pub fn ce_names(dim: usize, taken: &[String]) -> Vec<String> {
    (1..=dim)
        .map(|i| {
            let mut s = format!("e{i}");
            while taken.contains(&s) {
                s.push('_');
            }
            s
        })
        .collect()
}

fn commutator_on(ring: &Ring, a: &[Poly], b: &[Poly], i: usize) -> Poly {
    ring.apply_derivation(a, &b[i]).sub(&ring.apply_derivation(b, &a[i]))
}

/// The dg algebra with `Q(e^k) = -½ Σ c^k_ij e^i e^j` and `Q(x) = Q_M(x) + Σ e^i ρ_i(x)`.
///
/// `action[i]` is the degree-zero derivation of `M` by which `e_i` acts.
pub fn chevalley_eilenberg(
    g: &LieAlgebraData,
    m: &ManifoldModel,
    action: &[Derivation],
) -> Result<ManifoldModel, ConstructionError> {
    let base = m.ring();
    let d = g.dim();
    let zero = vec![Poly::zero(); base.len()];
    let rho = |i: usize| -> &[Poly] { action.get(i).map_or(&zero[..], |a| a.images()) };
    if action.len() > d {
        return Err(ConstructionError::BadLieData(format!("{} action fields for a {d}-dimensional algebra", action.len())));
    }
    for a in action {
        if a.ring != *base || a.degree != TriDegree::ZERO {
            return Err(ConstructionError::DegreeMismatch("action fields must be degree-zero derivations of M".into()));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for v in 0..base.len() {
                let lhs = commutator_on(base, rho(i), rho(j), v);
                let mut rhs = Poly::zero();
                for k in 0..d {
                    rhs.add_assign(&rho(k)[v].scale(g.c(i, j, k)));
                }
                if lhs != rhs {
                    return Err(ConstructionError::NotAnAction { i: i + 1, j: j + 1 });
                }
            }
        }
        for v in 0..base.len() {
            let q_m = m.algebra.q_images();
            let d_m = m.algebra.delta_images();
            if !commutator_on(base, rho(i), q_m, v).is_zero() || !commutator_on(base, rho(i), d_m, v).is_zero() {
                return Err(ConstructionError::NotEquivariant { i: i + 1 });
            }
        }
    }
    let taken: Vec<String> = base.gens().iter().map(|x| x.name.clone()).collect();
    let gens = ce_names(d, &taken).into_iter().map(|s| Generator::new(s, TriDegree::cochain(1))).collect();
    let ring = base.extend(gens)?;
    let n = base.len();
    let e = |i: usize| ring.var(n + i);
    let mut q = vec![Poly::zero(); n + d];
    for v in 0..n {
        let mut val = m.algebra.q_images()[v].clone();
        for i in 0..d {
            val.add_assign(&ring.mul(&e(i), &rho(i)[v]));
        }
        q[v] = val;
    }
    for k in 0..d {
        let mut val = Poly::zero();
        for i in 0..d {
            for j in 0..d {
                let c = g.c(i, j, k);
                if !num_traits::Zero::is_zero(c) {
                    val.add_assign(&ring.mul(&e(i), &e(j)).scale(&(c * qf(-1, 2))));
                }
            }
        }
        q[n + k] = val;
    }
    let algebra = FreeSuperCDGA::new(&ring, q, m.algebra.delta_images().to_vec())?;
    let kind = if m.ring().gens().iter().all(|x| x.degree.chain == 0) { ModelKind::NQ } else { ModelKind::DgNQ };
    Ok(ManifoldModel::new(kind, algebra)?)
}

/// `Bg = [point/g]`.
pub fn classifying_model(g: &LieAlgebraData) -> Result<ManifoldModel, ConstructionError> {
    chevalley_eilenberg(g, &ManifoldModel::point(), &[])
}
