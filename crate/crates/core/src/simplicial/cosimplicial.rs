use std::collections::BTreeMap;

use crate::graded_core::{q, Complex, Matrix};
use crate::superalgebra::{coordinates, enumerate_monomials, Mono, Poly, Ring, Truncation};

use super::{Result, SimplicialError};

/// Levels `A⁰..A^L` with cofaces and codegeneracies given by generator images.
///
/// `cofaces[m - 1][i]` lists the images in `A^m` of the generators of `A^{m-1}` under `∂ⁱ`,
/// and `codegeneracies[m - 1][j]` the images in `A^{m-1}` of the generators of `A^m` under `σʲ`.
#[derive(Clone, Debug)]
pub struct CosimplicialAlgebra {
    levels: Vec<Ring>,
    cofaces: Vec<Vec<Vec<Poly>>>,
    codegeneracies: Vec<Vec<Vec<Poly>>>,
}

fn shape_error(what: &str, m: usize) -> SimplicialError {
    SimplicialError::CosimplicialIdentityViolation(format!("{what} table at level {m} has the wrong shape"))
}

impl CosimplicialAlgebra {
    pub fn new(levels: Vec<Ring>, cofaces: Vec<Vec<Vec<Poly>>>, codegeneracies: Vec<Vec<Vec<Poly>>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(SimplicialError::MissingLevel(0));
        }
        let top = levels.len() - 1;
        if cofaces.len() != top || codegeneracies.len() != top {
            return Err(shape_error("structure map", top));
        }
        for m in 1..=top {
            let (src, dst) = (&levels[m - 1], &levels[m]);
            if cofaces[m - 1].len() != m + 1 {
                return Err(shape_error("coface", m));
            }
            for imgs in &cofaces[m - 1] {
                if imgs.len() != src.len() || !imgs.iter().all(|p| dst.contains(p)) {
                    return Err(shape_error("coface", m));
                }
            }
            if codegeneracies[m - 1].len() != m {
                return Err(shape_error("codegeneracy", m));
            }
            for imgs in &codegeneracies[m - 1] {
                if imgs.len() != dst.len() || !imgs.iter().all(|p| src.contains(p)) {
                    return Err(shape_error("codegeneracy", m));
                }
            }
        }
        let a = CosimplicialAlgebra { levels, cofaces, codegeneracies };
        a.verify()?;
        Ok(a)
    }

    /// Every level equal to `ring`, all structure maps the identity.
    pub fn constant(ring: &Ring, top: usize) -> Self {
        let id: Vec<Poly> = (0..ring.len()).map(|i| ring.var(i)).collect();
        CosimplicialAlgebra {
            levels: vec![ring.clone(); top + 1],
            cofaces: (1..=top).map(|m| vec![id.clone(); m + 1]).collect(),
            codegeneracies: (1..=top).map(|m| vec![id.clone(); m]).collect(),
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, m: usize) -> &Ring {
        &self.levels[m]
    }

    pub fn coface_images(&self, m: usize, i: usize) -> &[Poly] {
        &self.cofaces[m - 1][i]
    }

    pub fn codegeneracy_images(&self, m: usize, j: usize) -> &[Poly] {
        &self.codegeneracies[m - 1][j]
    }

    /// `∂ⁱ : A^{m-1} → A^m`.
    pub fn coface(&self, m: usize, i: usize, p: &Poly) -> Poly {
        self.levels[m - 1].substitute(&self.levels[m], &self.cofaces[m - 1][i], p)
    }

    /// `σʲ : A^m → A^{m-1}`.
    pub fn codegeneracy(&self, m: usize, j: usize, p: &Poly) -> Poly {
        self.levels[m].substitute(&self.levels[m - 1], &self.codegeneracies[m - 1][j], p)
    }

    /// `Σ (-1)ⁱ ∂ⁱ : A^{m-1} → A^m`.
    pub fn q(&self, m: usize, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for i in 0..=m {
            let t = self.coface(m, i, p);
            out = if i % 2 == 0 { out.add(&t) } else { out.sub(&t) };
        }
        out
    }

    fn check(&self, what: String, lhs: Poly, rhs: Poly) -> Result<()> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(SimplicialError::CosimplicialIdentityViolation(what))
        }
    }

    /// The cosimplicial identities on every generator of every level.
    pub fn verify(&self) -> Result<()> {
        let top = self.top();
        for m in 0..=top {
            for g in 0..self.levels[m].len() {
                let x = self.levels[m].var(g);
                let name = &self.levels[m].gen(g).name;
                if m + 2 <= top {
                    for j in 1..=m + 2 {
                        for i in 0..j {
                            let l = self.coface(m + 2, j, &self.coface(m + 1, i, &x));
                            let r = self.coface(m + 2, i, &self.coface(m + 1, j - 1, &x));
                            self.check(format!("∂{j}∂{i} = ∂{i}∂{} on {name} at level {m}", j - 1), l, r)?;
                        }
                    }
                }
                if m >= 2 {
                    for j in 0..m - 1 {
                        for i in 0..=j {
                            let l = self.codegeneracy(m - 1, j, &self.codegeneracy(m, i, &x));
                            let r = self.codegeneracy(m - 1, i, &self.codegeneracy(m, j + 1, &x));
                            self.check(format!("σ{j}σ{i} = σ{i}σ{} on {name} at level {m}", j + 1), l, r)?;
                        }
                    }
                }
                if m < top {
                    for j in 0..=m {
                        for i in 0..=m + 1 {
                            let l = self.codegeneracy(m + 1, j, &self.coface(m + 1, i, &x));
                            let r = if i < j {
                                self.coface(m, i, &self.codegeneracy(m, j - 1, &x))
                            } else if i == j || i == j + 1 {
                                x.clone()
                            } else {
                                self.coface(m, i - 1, &self.codegeneracy(m, j, &x))
                            };
                            self.check(format!("σ{j}∂{i} on {name} at level {m}"), l, r)?;
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn min_degree(p: &Poly) -> Option<u32> {
    p.terms().map(|(m, _)| m.iter().sum::<u32>()).min()
}

/// The conormalized complex `N^m = ∩ ker σʲ` with `Q = Σ (-1)ⁱ ∂ⁱ`, on polynomials of total degree
/// at most `max_poly_degree` in each level.
///
/// The truncation is a quotient by the ideal of higher-degree polynomials, so every coface must send
/// generators to polynomials without constant term.
pub fn conormalize(a: &CosimplicialAlgebra, max_poly_degree: u32) -> Result<Complex> {
    a.verify()?;
    for m in 1..=a.top() {
        for i in 0..=m {
            if let Some(g) = a.coface_images(m, i).iter().position(|p| min_degree(p) == Some(0)) {
                return Err(SimplicialError::TruncationNotPreserved(format!(
                    "∂{i} sends {} to a polynomial with constant term",
                    a.level(m - 1).gen(g).name
                )));
            }
        }
    }
    let trunc = Truncation {
        weight: None,
        max_weight: Some(max_poly_degree as i64),
        cochain_max: None,
        chain_max: None,
        cap: max_poly_degree,
    };
    let mut bases: BTreeMap<i64, Vec<String>> = BTreeMap::new();
    let mut monos: Vec<Vec<Mono>> = Vec::new();
    let mut kernels: Vec<Vec<Poly>> = Vec::new();
    for m in 0..=a.top() {
        let ring = a.level(m);
        let (all, _) = enumerate_monomials(ring, &vec![1; ring.len()], &trunc);
        let mut rows: Vec<Mono> = Vec::new();
        let images: Vec<Vec<Poly>> =
            all.iter().map(|mm| (0..m).map(|j| a.codegeneracy(m, j, &Poly::monomial(mm.clone(), q(1)))).collect()).collect();
        for im in images.iter().flatten() {
            for (mm, _) in im.terms() {
                if !rows.contains(mm) {
                    rows.push(mm.clone());
                }
            }
        }
        let mut mat = Matrix::zeros(rows.len() * m.max(1), all.len());
        for (c, ims) in images.iter().enumerate() {
            for (j, im) in ims.iter().enumerate() {
                for (r, mm) in rows.iter().enumerate() {
                    let v = im.coeff(mm);
                    if v != q(0) {
                        mat.set(j * rows.len() + r, c, v);
                    }
                }
            }
        }
        let kernel: Vec<Poly> = if m == 0 || rows.is_empty() {
            (0..all.len()).map(|i| Poly::monomial(all[i].clone(), q(1))).collect()
        } else {
            mat.kernel()
                .into_iter()
                .map(|v| {
                    let mut p = Poly::zero();
                    for (mm, c) in all.iter().zip(v) {
                        p.add_term(mm.clone(), c);
                    }
                    p
                })
                .collect()
        };
        bases.insert(m as i64, kernel.iter().map(|p| ring.format(p)).collect());
        monos.push(all);
        kernels.push(kernel);
    }
    let mut diffs = BTreeMap::new();
    for m in 0..a.top() {
        let target = &kernels[m + 1];
        let ring = a.level(m + 1);
        let keep = |p: &Poly| p.filter(|mm| mm.iter().sum::<u32>() <= max_poly_degree);
        let tbasis = &monos[m + 1];
        let tmat_rows: Vec<Vec<_>> = target.iter().map(|p| coordinates(tbasis, p).unwrap()).collect();
        let tmat = Matrix::from_rows(tmat_rows).transpose();
        let mut d = Matrix::zeros(target.len(), kernels[m].len());
        for (c, p) in kernels[m].iter().enumerate() {
            let img = keep(&a.q(m + 1, p));
            let coords = coordinates(tbasis, &img).ok_or_else(|| {
                SimplicialError::TruncationNotPreserved(format!("Q leaves the monomial basis at level {}", m + 1))
            })?;
            let sol = if target.is_empty() {
                if coords.iter().any(|x| *x != q(0)) {
                    return Err(SimplicialError::CosimplicialIdentityViolation(format!(
                        "Q of {} is not normalized",
                        a.level(m).format(p)
                    )));
                }
                Vec::new()
            } else {
                tmat.solve(&coords).ok_or_else(|| {
                    SimplicialError::CosimplicialIdentityViolation(format!("Q of {} is not normalized", ring.format(&img)))
                })?
            };
            for (r, v) in sol.into_iter().enumerate() {
                d.set(r, c, v);
            }
        }
        diffs.insert(m as i64, d);
    }
    Ok(Complex::new(bases, diffs)?)
}
