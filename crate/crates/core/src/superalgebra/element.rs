//! Ring-tagged elements and derivations, checked against mixing algebras.

use std::fmt;

use super::ring::{Poly, Ring};
use super::AlgebraError;
use crate::graded_core::{Rational, TriDegree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    pub ring: Ring,
    pub poly: Poly,
}

impl AlgebraElement {
    pub fn new(ring: &Ring, poly: Poly) -> Self {
        debug_assert!(ring.contains(&poly));
        AlgebraElement { ring: ring.clone(), poly }
    }

    pub fn zero(ring: &Ring) -> Self {
        AlgebraElement::new(ring, Poly::zero())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        AlgebraElement::new(ring, Poly::constant(c))
    }

    pub fn generator(ring: &Ring, name: &str) -> Result<Self, AlgebraError> {
        Ok(AlgebraElement::new(ring, ring.var_named(name)?))
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<TriDegree> {
        self.ring.degree_of(&self.poly)
    }

    fn same(&self, o: &AlgebraElement) -> Result<(), AlgebraError> {
        if self.ring == o.ring {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn add(&self, o: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same(o)?;
        Ok(AlgebraElement::new(&self.ring, self.poly.add(&o.poly)))
    }

    pub fn sub(&self, o: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        self.same(o)?;
        Ok(AlgebraElement::new(&self.ring, self.poly.sub(&o.poly)))
    }

    pub fn scale(&self, s: &Rational) -> AlgebraElement {
        AlgebraElement::new(&self.ring, self.poly.scale(s))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.poly))
    }
}

/// Graded-commutative product.
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    a.same(b)?;
    Ok(AlgebraElement::new(&a.ring, a.ring.mul(&a.poly, &b.poly)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub ring: Ring,
    pub degree: TriDegree,
    images: Vec<Poly>,
}

impl Derivation {
    /// Values on generators by index. Each value must have degree `deg(generator) + degree`.
    pub fn new(ring: &Ring, degree: TriDegree, mut images: Vec<Poly>) -> Result<Self, AlgebraError> {
        images.resize(ring.len(), Poly::zero());
        for (i, img) in images.iter().enumerate() {
            let want = ring.gen(i).degree + degree;
            if !ring.is_homogeneous_of(img, want) {
                return Err(AlgebraError::DegreeMismatch {
                    generator: ring.gen(i).name.clone(),
                    expected: want,
                    found: ring.degree_of(img),
                });
            }
        }
        Ok(Derivation { ring: ring.clone(), degree, images })
    }

    /// Partial derivative along generator `v` (a left derivation of the generator's degree, negated).
    pub fn partial(ring: &Ring, v: usize) -> Self {
        let mut images = vec![Poly::zero(); ring.len()];
        images[v] = Poly::one();
        Derivation { ring: ring.clone(), degree: -ring.gen(v).degree, images }
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn parity(&self) -> u8 {
        self.degree.parity()
    }

    pub fn apply_poly(&self, p: &Poly) -> Poly {
        self.ring.apply_derivation(&self.images, p)
    }
}

pub fn apply_derivation(d: &Derivation, a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    if d.ring != a.ring {
        return Err(AlgebraError::AlgebraMismatch);
    }
    Ok(AlgebraElement::new(&a.ring, d.apply_poly(&a.poly)))
}
