//! Semi-free graded-commutative algebras with a cochain differential `Q` and a
//! chain differential `δ`.

use super::ring::{Generator, Poly, Ring};
use super::AlgebraError;
use crate::graded_core::TriDegree;

pub const Q_SHIFT: TriDegree = TriDegree { cochain: 1, chain: 0, flag: crate::graded_core::Flag::Equal };
pub const DELTA_SHIFT: TriDegree = TriDegree { cochain: 0, chain: -1, flag: crate::graded_core::Flag::Equal };

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSuperCDGA {
    ring: Ring,
    q: Vec<Poly>,
    delta: Vec<Poly>,
}

/// Builds and validates a model from named generator values; unnamed generators map to zero.
pub fn make_cdga<S: AsRef<str>>(
    ring: &Ring,
    q_values: impl IntoIterator<Item = (S, Poly)>,
    delta_values: impl IntoIterator<Item = (S, Poly)>,
) -> Result<FreeSuperCDGA, AlgebraError> {
    let mut q = vec![Poly::zero(); ring.len()];
    let mut delta = vec![Poly::zero(); ring.len()];
    for (name, v) in q_values {
        let i = ring.index_of(name.as_ref()).ok_or_else(|| AlgebraError::UnknownGenerator(name.as_ref().to_string()))?;
        q[i] = v;
    }
    for (name, v) in delta_values {
        let i = ring.index_of(name.as_ref()).ok_or_else(|| AlgebraError::UnknownGenerator(name.as_ref().to_string()))?;
        delta[i] = v;
    }
    FreeSuperCDGA::new(ring, q, delta)
}

impl FreeSuperCDGA {
    pub fn new(ring: &Ring, mut q: Vec<Poly>, mut delta: Vec<Poly>) -> Result<Self, AlgebraError> {
        q.resize(ring.len(), Poly::zero());
        delta.resize(ring.len(), Poly::zero());
        for g in ring.gens() {
            if !g.degree.is_nonnegative() {
                return Err(AlgebraError::NegativeGeneratorDegree(g.name.clone()));
            }
        }
        for (vals, shift) in [(&q, Q_SHIFT), (&delta, DELTA_SHIFT)] {
            for (i, v) in vals.iter().enumerate() {
                if !ring.contains(v) {
                    return Err(AlgebraError::AlgebraMismatch);
                }
                let want = ring.gen(i).degree + shift;
                if !ring.is_homogeneous_of(v, want) {
                    return Err(AlgebraError::DegreeMismatch {
                        generator: ring.gen(i).name.clone(),
                        expected: want,
                        found: ring.degree_of(v),
                    });
                }
            }
        }
        let a = FreeSuperCDGA { ring: ring.clone(), q, delta };
        a.verify()?;
        Ok(a)
    }

    /// The algebra with no differentials.
    pub fn trivial(ring: &Ring) -> Result<Self, AlgebraError> {
        FreeSuperCDGA::new(ring, Vec::new(), Vec::new())
    }

    /// Checks `Q² = 0`, `δ² = 0` and `Qδ + δQ = 0` on every generator.
    pub fn verify(&self) -> Result<(), AlgebraError> {
        for i in 0..self.ring.len() {
            let name = &self.ring.gen(i).name;
            if !self.q(&self.q[i]).is_zero() {
                return Err(AlgebraError::SquareNotZero { generator: name.clone(), which: "Q" });
            }
            if !self.delta(&self.delta[i]).is_zero() {
                return Err(AlgebraError::SquareNotZero { generator: name.clone(), which: "delta" });
            }
            if !self.q(&self.delta[i]).add(&self.delta(&self.q[i])).is_zero() {
                return Err(AlgebraError::SquareNotZero { generator: name.clone(), which: "Q+delta" });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Generator] {
        self.ring.gens()
    }

    pub fn q_images(&self) -> &[Poly] {
        &self.q
    }

    pub fn delta_images(&self) -> &[Poly] {
        &self.delta
    }

    pub fn q(&self, p: &Poly) -> Poly {
        self.ring.apply_derivation(&self.q, p)
    }

    pub fn delta(&self, p: &Poly) -> Poly {
        self.ring.apply_derivation(&self.delta, p)
    }

    /// `Q + δ`, which squares to zero.
    pub fn total(&self, p: &Poly) -> Poly {
        self.q(p).add(&self.delta(p))
    }

    pub fn has_q(&self) -> bool {
        self.q.iter().any(|p| !p.is_zero())
    }

    pub fn has_delta(&self) -> bool {
        self.delta.iter().any(|p| !p.is_zero())
    }

    pub fn base_indices(&self) -> Vec<usize> {
        (0..self.ring.len()).filter(|&i| self.ring.gen(i).is_base()).collect()
    }
}
