use crate::constructions::{chevalley_eilenberg, LieAlgebraData};
use crate::geometry::ManifoldModel;
use crate::graded_core::{q, qf, Matrix, Rational, TriDegree};
use crate::superalgebra::{Derivation, Generator, Poly, Ring};

use super::{CosimplicialAlgebra, Result, SimplicialError};

pub const DEFAULT_LEVELS: usize = 3;
pub const DEFAULT_BCH_DEGREE: usize = 4;

const MAX_FLOW_TERMS: u32 = 32;

/// A nilpotent Lie algebra acting on a plain affine manifold, with the level bound and BCH truncation.
#[derive(Clone, Debug)]
pub struct NerveData {
    pub g: LieAlgebraData,
    pub m: ManifoldModel,
    pub action: Vec<Derivation>,
    pub levels: usize,
    pub bch_degree: usize,
}

impl NerveData {
    pub fn new(g: LieAlgebraData, m: ManifoldModel, action: Vec<Derivation>) -> Self {
        NerveData { g, m, action, levels: DEFAULT_LEVELS, bch_degree: DEFAULT_BCH_DEGREE }
    }

    pub fn at_point(g: LieAlgebraData) -> Self {
        NerveData::new(g, ManifoldModel::point(), Vec::new())
    }

    fn rho(&self, i: usize) -> Vec<Poly> {
        let n = self.m.ring().len();
        self.action.get(i).map_or_else(|| vec![Poly::zero(); n], |d| d.images().to_vec())
    }

    /// Names of the group coordinates of block `j` (1-based).
    pub fn block_names(&self, j: usize) -> Vec<String> {
        let taken: Vec<&str> = self.m.ring().gens().iter().map(|g| g.name.as_str()).collect();
        (1..=self.g.dim())
            .map(|i| {
                let mut s = format!("t{j}_{i}");
                while taken.contains(&s.as_str()) {
                    s.push('_');
                }
                s
            })
            .collect()
    }

    /// Functions on `M × Gᵐ`.
    pub fn level_ring(&self, m: usize) -> Ring {
        let mut gens = self.m.ring().gens().to_vec();
        for j in 1..=m {
            gens.extend(self.block_names(j).into_iter().map(|n| Generator::new(n, TriDegree::ZERO)));
        }
        Ring::new(gens).expect("level generator names are distinct")
    }

    /// The coordinates of block `j` of a level ring.
    pub fn block(&self, ring: &Ring, j: usize) -> Vec<Poly> {
        let k0 = self.m.ring().len();
        let d = self.g.dim();
        (0..d).map(|i| ring.var(k0 + (j - 1) * d + i)).collect()
    }

    /// `y ↦ y·exp(X)` on the coordinates of `M`, where `X` has components `x` in `ring ⊇ M`.
    pub fn flow(&self, ring: &Ring, x: &[Poly]) -> Result<Vec<Poly>> {
        let k0 = self.m.ring().len();
        let mut field = vec![Poly::zero(); ring.len()];
        for (i, xi) in x.iter().enumerate() {
            for (v, img) in self.rho(i).iter().enumerate() {
                field[v] = field[v].add(&ring.mul(xi, img));
            }
        }
        let mut out = Vec::with_capacity(k0);
        for v in 0..k0 {
            let mut term = ring.var(v);
            let mut total = Poly::zero();
            let mut n = 0u32;
            while !term.is_zero() {
                if n > MAX_FLOW_TERMS {
                    return Err(SimplicialError::NotNilpotent(format!("the action on {}", ring.gen(v).name)));
                }
                total = total.add(&term);
                n += 1;
                term = ring.apply_derivation(&field, &term).scale(&qf(1, n as i64));
            }
            out.push(total);
        }
        Ok(out)
    }
}

pub fn bracket_vec(g: &LieAlgebraData, ring: &Ring, u: &[Poly], v: &[Poly]) -> Vec<Poly> {
    let d = g.dim();
    let mut out = vec![Poly::zero(); d];
    for i in 0..d {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..d {
            if v[j].is_zero() {
                continue;
            }
            let uv = ring.mul(&u[i], &v[j]);
            for (k, o) in out.iter_mut().enumerate() {
                let c = g.c(i, j, k);
                if *c != q(0) {
                    *o = o.add(&uv.scale(c));
                }
            }
        }
    }
    out
}

fn axpy(acc: &mut [Poly], s: Rational, v: &[Poly]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a = a.add(&b.scale(&s));
    }
}

/// The Baker–Campbell–Hausdorff series of `log(exp x · exp y)` through bracket length `degree ≤ 4`.
pub fn bch(g: &LieAlgebraData, ring: &Ring, x: &[Poly], y: &[Poly], degree: usize) -> Vec<Poly> {
    let mut out: Vec<Poly> = x.iter().zip(y).map(|(a, b)| a.add(b)).collect();
    if degree < 2 {
        return out;
    }
    let xy = bracket_vec(g, ring, x, y);
    axpy(&mut out, qf(1, 2), &xy);
    if degree < 3 {
        return out;
    }
    let xxy = bracket_vec(g, ring, x, &xy);
    axpy(&mut out, qf(1, 12), &xxy);
    axpy(&mut out, qf(-1, 12), &bracket_vec(g, ring, y, &xy));
    if degree < 4 {
        return out;
    }
    axpy(&mut out, qf(-1, 24), &bracket_vec(g, ring, y, &xxy));
    out
}

/// Dimensions of the lower central series `g = g¹ ⊃ g² ⊃ …`, ending in `0` for a nilpotent algebra
/// and in a repeated nonzero value otherwise.
pub fn lower_central_dims(g: &LieAlgebraData) -> Vec<usize> {
    let d = g.dim();
    let mut span: Vec<Vec<Rational>> = (0..d).map(|i| g.basis_vector(i)).collect();
    let mut dims = vec![d];
    while !span.is_empty() {
        let mut next = Vec::new();
        for i in 0..d {
            for v in &span {
                next.push(g.bracket(&g.basis_vector(i), v));
            }
        }
        let basis = if next.is_empty() { Vec::new() } else { row_basis(&next) };
        let stalled = basis.len() == span.len();
        dims.push(basis.len());
        span = basis;
        if stalled {
            break;
        }
    }
    dims
}

fn row_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let m = Matrix::from_rows(rows.to_vec());
    let e = m.transpose().echelon();
    e.pivots.iter().map(|&c| rows[c].clone()).collect()
}

/// `exp(±ad_x)` with `(Ad v)_k = Σ_j M[k][j] v_j`.
pub fn adjoint_matrix(g: &LieAlgebraData, ring: &Ring, x: &[Poly], inverse: bool) -> Vec<Vec<Poly>> {
    let d = g.dim();
    let sign = if inverse { q(-1) } else { q(1) };
    let mut ad = vec![vec![Poly::zero(); d]; d];
    for (k, row) in ad.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            for (i, xi) in x.iter().enumerate() {
                let c = g.c(i, j, k);
                if *c != q(0) {
                    *entry = entry.add(&xi.scale(&(c * &sign)));
                }
            }
        }
    }
    let mut out: Vec<Vec<Poly>> =
        (0..d).map(|k| (0..d).map(|j| if j == k { Poly::one() } else { Poly::zero() }).collect()).collect();
    let mut power = out.clone();
    for n in 1..=d {
        let mut next = vec![vec![Poly::zero(); d]; d];
        for k in 0..d {
            for j in 0..d {
                for l in 0..d {
                    if !ad[k][l].is_zero() && !power[l][j].is_zero() {
                        next[k][j] = next[k][j].add(&ring.mul(&ad[k][l], &power[l][j]));
                    }
                }
            }
        }
        power = next.into_iter().map(|r| r.into_iter().map(|p| p.scale(&qf(1, n as i64))).collect()).collect();
        for k in 0..d {
            for j in 0..d {
                out[k][j] = out[k][j].add(&power[k][j]);
            }
        }
    }
    out
}

pub(crate) fn check_nerve_data(data: &NerveData) -> Result<()> {
    if data.bch_degree > DEFAULT_BCH_DEGREE {
        return Err(SimplicialError::NotNerveType(format!("BCH is available through degree {DEFAULT_BCH_DEGREE}")));
    }
    let dims = lower_central_dims(&data.g);
    if dims.last() != Some(&0) || dims.len() - 1 > data.bch_degree.max(1) {
        return Err(SimplicialError::NotNilpotent(data.g.name.clone()));
    }
    if data.m.algebra.has_q() || data.m.ring().gens().iter().any(|g| g.degree != TriDegree::ZERO) {
        return Err(SimplicialError::NotNerveType("the manifold must be plain affine".into()));
    }
    chevalley_eilenberg(&data.g, &data.m, &data.action)?;
    Ok(())
}

/// Functions on the nerve `M × Gᵐ` of the action groupoid, for `m ≤ data.levels`.
pub fn nerve(data: &NerveData) -> Result<CosimplicialAlgebra> {
    check_nerve_data(data)?;
    let k0 = data.m.ring().len();
    let top = data.levels;
    let levels: Vec<Ring> = (0..=top).map(|m| data.level_ring(m)).collect();
    let mut cofaces = Vec::new();
    let mut codegeneracies = Vec::new();
    for m in 1..=top {
        let dst = &levels[m];
        let base: Vec<Poly> = (0..k0).map(|v| dst.var(v)).collect();
        let mut faces = Vec::new();
        for i in 0..=m {
            let mut imgs = if i == 0 { data.flow(dst, &data.block(dst, 1))? } else { base.clone() };
            for j in 1..m {
                let blk = if i == 0 || j > i {
                    data.block(dst, j + 1)
                } else if j < i || i == m {
                    data.block(dst, j)
                } else {
                    bch(&data.g, dst, &data.block(dst, i), &data.block(dst, i + 1), data.bch_degree)
                };
                imgs.extend(blk);
            }
            faces.push(imgs);
        }
        cofaces.push(faces);
        let src = &levels[m - 1];
        let mut degs = Vec::new();
        for j in 0..m {
            let mut imgs: Vec<Poly> = (0..k0).map(|v| src.var(v)).collect();
            for k in 1..=m {
                if k <= j {
                    imgs.extend(data.block(src, k));
                } else if k == j + 1 {
                    imgs.extend(vec![Poly::zero(); data.g.dim()]);
                } else {
                    imgs.extend(data.block(src, k - 1));
                }
            }
            degs.push(imgs);
        }
        codegeneracies.push(degs);
    }
    CosimplicialAlgebra::new(levels, cofaces, codegeneracies)
}
