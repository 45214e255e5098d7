//! Finite-dimensional Lie algebras by structure constants.

use num_traits::Zero;

use super::ConstructionError;
use crate::graded_core::{q, Matrix, Rational};

/// `c[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    pub name: String,
    dim: usize,
    c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebraData {
    /// From brackets `[e_i, e_j] = Σ coeff e_k` listed as `(i, j, k, coeff)` with `i < j`
    /// (zero-based); the table is completed antisymmetrically.
    pub fn from_brackets(name: &str, dim: usize, brackets: &[(usize, usize, usize, Rational)]) -> Result<Self, ConstructionError> {
        let mut c = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (i, j, k, v) in brackets {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(ConstructionError::BadLieData(format!("index out of range in [{i},{j}]")));
            }
            if i == j && !v.is_zero() {
                return Err(ConstructionError::BadLieData(format!("[e{0},e{0}] must vanish", i + 1)));
            }
            c[*i][*j][*k] += v;
            c[*j][*i][*k] -= v;
        }
        LieAlgebraData::new(name, dim, c)
    }

    /// From a full table; checks antisymmetry only (see [`LieAlgebraData::jacobi_holds`]).
    pub fn new(name: &str, dim: usize, c: Vec<Vec<Vec<Rational>>>) -> Result<Self, ConstructionError> {
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    if c[i][j][k] != -c[j][i][k].clone() {
                        return Err(ConstructionError::BadLieData(format!(
                            "structure constants not antisymmetric at ({},{};{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(LieAlgebraData { name: name.to_string(), dim, c })
    }

    pub fn validated(self) -> Result<Self, ConstructionError> {
        match self.jacobi_violation() {
            None => Ok(self),
            Some((i, j, k)) => Err(ConstructionError::BadLieData(format!("Jacobi fails on e{},e{},e{}", i + 1, j + 1, k + 1))),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for i in 0..self.dim {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if v[j].is_zero() {
                    continue;
                }
                let s = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += &s * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = q(1);
        v
    }

    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let e = |i| self.basis_vector(i);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    let a = self.bracket(&self.bracket(&e(i), &e(j)), &e(k));
                    let b = self.bracket(&self.bracket(&e(j), &e(k)), &e(i));
                    let c = self.bracket(&self.bracket(&e(k), &e(i)), &e(j));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn jacobi_holds(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// Matrix of `ad(e_i)`: column `j` holds `[e_i, e_j]`.
    pub fn ad(&self, i: usize) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            for k in 0..self.dim {
                m.set(k, j, self.c[i][j][k].clone());
            }
        }
        m
    }

    pub fn killing_form(&self) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.ad(i).mul(&self.ad(j));
                let tr = (0..self.dim).fold(Rational::zero(), |acc, k| acc + p.get(k, k));
                m.set(i, j, tr);
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(Zero::is_zero)
    }

    pub fn so3() -> Self {
        LieAlgebraData::from_brackets("so3", 3, &[(0, 1, 2, q(1)), (1, 2, 0, q(1)), (0, 2, 1, q(-1))]).unwrap()
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebraData::from_brackets(&format!("abelian{n}"), n, &[]).unwrap()
    }

    /// `[x, y] = z`.
    pub fn heisenberg() -> Self {
        LieAlgebraData::from_brackets("h3", 3, &[(0, 1, 2, q(1))]).unwrap()
    }

    /// `[a, b] = b`.
    pub fn nonabelian2() -> Self {
        LieAlgebraData::from_brackets("aff1", 2, &[(0, 1, 1, q(1))]).unwrap()
    }
}
