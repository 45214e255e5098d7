use std::collections::BTreeSet;

use crate::constructions::{chevalley_eilenberg, LieAlgebraData};
use crate::geometry::{GeometryError, ManifoldModel, ModelKind};
use crate::graded_core::{q, Matrix, Rational, TriDegree};
use crate::poisson::{casimir_2shifted_with, PolyAlgebra, PoissonStructure};
use crate::superalgebra::{Derivation, FreeSuperCDGA, Generator, Mono, Poly};

use super::nerve::{adjoint_matrix, bch, check_nerve_data};
use super::{NerveData, Result, SimplicialError};

/// Level-0 Casimir structures, their two pullbacks to level 1 and the equaliser.
#[derive(Clone, Debug)]
pub struct DescentReport {
    pub pa0: PolyAlgebra,
    pub level0: Vec<PoissonStructure>,
    pub pa1: PolyAlgebra,
    /// `(∂⁰π, ∂¹π)` for each level-0 basis element.
    pub pullbacks: Vec<(Poly, Poly)>,
    pub equaliser: Vec<PoissonStructure>,
    /// Whether every pullback is closed and central on level 1.
    pub pullbacks_closed: bool,
}

impl DescentReport {
    pub fn dim(&self) -> usize {
        self.equaliser.len()
    }
}

fn double(g: &LieAlgebraData) -> Result<LieAlgebraData> {
    let d = g.dim();
    let mut c = vec![vec![vec![q(0); 2 * d]; 2 * d]; 2 * d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                c[i][j][k] = g.c(i, j, k).clone();
                c[d + i][d + j][d + k] = g.c(i, j, k).clone();
            }
        }
    }
    Ok(LieAlgebraData::new(&format!("{}+{}", g.name, g.name), 2 * d, c)?)
}

/// `M × G` acted on by `g ⊕ g` through `(y, h)·(g₀, g₁) = (y g₀, g₀⁻¹ h g₁)`.
fn level_one_action(data: &NerveData) -> Result<(ManifoldModel, Vec<Derivation>)> {
    let d = data.g.dim();
    let k0 = data.m.ring().len();
    let ring = data.level_ring(1);
    let aux = ring.extend(vec![Generator::new("s_", TriDegree::ZERO)])?;
    let s = aux.len() - 1;
    let x = data.block(&aux, 1);
    let lin = |v: &[Poly]| -> Vec<Poly> { v.iter().map(|p| aux.kill(&aux.deriv_left(p, s), |i| i == s)).collect() };
    let mut fields = Vec::with_capacity(2 * d);
    for a in 0..2 * d {
        let mut e = vec![Poly::zero(); d];
        e[a % d] = aux.var(s);
        let mut images = vec![Poly::zero(); ring.len()];
        let t_part = if a < d {
            if let Some(rho) = data.action.get(a) {
                images[..k0].clone_from_slice(rho.images());
            }
            let minus: Vec<Poly> = e.iter().map(Poly::neg).collect();
            lin(&bch(&data.g, &aux, &minus, &x, data.bch_degree))
        } else {
            lin(&bch(&data.g, &aux, &x, &e, data.bch_degree))
        };
        images[k0..].clone_from_slice(&t_part);
        fields.push(Derivation::new(&ring, TriDegree::ZERO, images)?);
    }
    let model = ManifoldModel::new(ModelKind::NQ, FreeSuperCDGA::trivial(&ring)?).map_err(|e: GeometryError| SimplicialError::NotNerveType(e.to_string()))?;
    Ok((model, fields))
}

fn kernel_of(images: &[Poly]) -> Vec<Vec<Rational>> {
    let rows: Vec<Mono> = images.iter().flat_map(|p| p.terms().map(|(m, _)| m.clone())).collect::<BTreeSet<_>>().into_iter().collect();
    if rows.is_empty() {
        return (0..images.len())
            .map(|i| (0..images.len()).map(|j| if i == j { q(1) } else { q(0) }).collect())
            .collect();
    }
    let mut a = Matrix::zeros(rows.len(), images.len());
    for (j, p) in images.iter().enumerate() {
        for (i, m) in rows.iter().enumerate() {
            a.set(i, j, p.coeff(m));
        }
    }
    a.kernel()
}

/// 2-shifted Poisson structures on `[M/G]` as the equaliser of the two pullbacks from level 0 to level 1
/// of the nerve, with level-0 coefficients of polynomial degree `coeff_degree`.
pub fn descent_2shifted_with(data: &NerveData, coeff_degree: i64) -> Result<DescentReport> {
    check_nerve_data(data)?;
    let d = data.g.dim();
    let k0 = data.m.ring().len();
    let (pa0, level0) = casimir_2shifted_with(&data.g, &data.m, &data.action, coeff_degree)?;
    let (m1, action1) = level_one_action(data)?;
    let g2 = double(&data.g)?;
    let ce1 = chevalley_eilenberg(&g2, &m1, &action1)?;
    let pa1 = PolyAlgebra::with_cutoff(&ce1, 2, false, 2);
    let r0 = pa0.ring();
    let r1 = pa1.ring();
    let k1 = k0 + d;
    let h = data.block(r1, 1);
    let ad = adjoint_matrix(&data.g, r1, &h, false);
    let ad_inv = adjoint_matrix(&data.g, r1, &h, true);
    let p_e = |a: usize| r1.var(pa1.p(k1 + a));
    let lift = |mat: &[Vec<Poly>], i: usize, on_first: bool| -> Poly {
        let mut out = if on_first { p_e(d + i) } else { p_e(i) };
        for k in 0..d {
            let shift = if on_first { 0 } else { d };
            out = out.add(&r1.mul(&mat[k][i], &p_e(shift + k)));
        }
        out
    };
    let moved = data.flow(r1, &h)?;
    let mut img0 = vec![Poly::zero(); r0.len()];
    let mut img1 = vec![Poly::zero(); r0.len()];
    for v in 0..k0 {
        img0[v] = moved[v].clone();
        img1[v] = r1.var(v);
    }
    for i in 0..d {
        img0[pa0.p(k0 + i)] = lift(&ad, i, true);
        img1[pa0.p(k0 + i)] = lift(&ad_inv, i, false);
    }
    let mut pullbacks = Vec::with_capacity(level0.len());
    let mut closed = true;
    for pi in &level0 {
        let a = r0.substitute(r1, &img0, &pi.pi.poly);
        let b = r0.substitute(r1, &img1, &pi.pi.poly);
        closed &= pa1.differential(&a).is_zero() && pa1.differential(&b).is_zero();
        pullbacks.push((a, b));
    }
    let diffs: Vec<Poly> = pullbacks.iter().map(|(a, b)| a.sub(b)).collect();
    let equaliser = kernel_of(&diffs)
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero();
            for (pi, c) in level0.iter().zip(&v) {
                p = p.add(&pi.pi.poly.scale(c));
            }
            PoissonStructure { pi: pa0.wrap(p) }
        })
        .collect();
    Ok(DescentReport { pa0, level0, pa1, pullbacks, equaliser, pullbacks_closed: closed })
}

pub fn descent_2shifted(data: &NerveData) -> Result<DescentReport> {
    descent_2shifted_with(data, 0)
}
