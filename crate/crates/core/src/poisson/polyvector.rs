//! Shifted polyvector fields as a free algebra on coordinates `x_u` and
//! symbols `p_u` standing for `∂/∂x_u` shifted by `n+1`, with the
//! Schouten–Nijenhuis bracket.
//!
//! `p_u` has degree `(n+1-c, -h, flag ⊕ reversed)` when `x_u` has `(c, h, flag)`.
//! The bracket has parity `s = n+1+reversed`, so it is graded antisymmetric
//! and a biderivation with respect to the shifted parity `|a| + s`.

use std::collections::BTreeMap;


use super::PoissonError;
use crate::geometry::ManifoldModel;
use crate::graded_core::{Flag, Rational, TriDegree};
use crate::superalgebra::{enumerate_monomials, Generator, Mono, Poly, Ring, Truncation};

pub const DEFAULT_CUTOFF: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyvector {
    pub shift: i64,
    pub parity_reversed: bool,
    pub poly: Poly,
}

impl Polyvector {
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// Polyvectors on a model at a fixed shift, truncated above weight `cutoff`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyAlgebra {
    pub model: ManifoldModel,
    pub shift: i64,
    pub parity_reversed: bool,
    pub cutoff: usize,
    ring: Ring,
    k: usize,
    q_elem: Poly,
}

pub fn momentum_name(name: &str) -> String {
    format!("p_{name}")
}

impl PolyAlgebra {
    pub fn new(model: &ManifoldModel, shift: i64, parity_reversed: bool) -> Self {
        PolyAlgebra::with_cutoff(model, shift, parity_reversed, DEFAULT_CUTOFF)
    }

    pub fn with_cutoff(model: &ManifoldModel, shift: i64, parity_reversed: bool, cutoff: usize) -> Self {
        let base = model.ring();
        let k = base.len();
        let names: Vec<String> = base.gens().iter().map(|g| g.name.clone()).collect();
        let extra: Vec<Generator> = base
            .gens()
            .iter()
            .map(|g| {
                let mut name = momentum_name(&g.name);
                while names.contains(&name) {
                    name.push('_');
                }
                Generator::new(name, momentum_degree(g.degree, shift, parity_reversed))
            })
            .collect();
        let ring = base.extend(extra).expect("momentum names are fresh");
        let mut q_elem = Poly::zero();
        for u in 0..k {
            let val = model.algebra.q_images()[u].add(&model.algebra.delta_images()[u]);
            q_elem.add_assign(&ring.mul(&val, &ring.var(k + u)));
        }
        PolyAlgebra { model: model.clone(), shift, parity_reversed, cutoff, ring, k, q_elem }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of coordinates.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p(&self, u: usize) -> usize {
        self.k + u
    }

    /// Parity of the bracket.
    pub fn s(&self) -> u8 {
        ((self.shift + 1 + self.parity_reversed as i64).rem_euclid(2)) as u8
    }

    pub fn flag(&self) -> Flag {
        if self.parity_reversed {
            Flag::Unequal
        } else {
            Flag::Equal
        }
    }

    /// Total degree of Poisson structures, `n + 2`.
    pub fn structure_degree(&self) -> i64 {
        self.shift + 2
    }

    /// The differential `Q + δ` housed as the weight-one element `Σ (Q+δ)(x_u) p_u`.
    pub fn q_element(&self) -> &Poly {
        &self.q_elem
    }

    pub fn wrap(&self, poly: Poly) -> Polyvector {
        Polyvector { shift: self.shift, parity_reversed: self.parity_reversed, poly }
    }

    pub fn check(&self, a: &Polyvector) -> Result<(), PoissonError> {
        if a.shift != self.shift || a.parity_reversed != self.parity_reversed {
            return Err(PoissonError::ShiftMismatch { expected: self.shift, found: a.shift });
        }
        Ok(())
    }

    pub fn weight(&self, m: &Mono) -> usize {
        m.iter().skip(self.k).map(|&e| e as usize).sum()
    }

    pub fn component(&self, a: &Poly, w: usize) -> Poly {
        a.filter(|m| self.weight(m) == w)
    }

    pub fn components(&self, a: &Poly) -> BTreeMap<usize, Poly> {
        let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
        for (m, c) in a.terms() {
            out.entry(self.weight(m)).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn truncate(&self, a: &Poly) -> Poly {
        a.filter(|m| self.weight(m) <= self.cutoff)
    }

    pub fn in_fil(&self, a: &Poly, p: usize) -> bool {
        a.terms().all(|(m, _)| self.weight(m) >= p)
    }

    /// Shifted parity `|a| + s` of a homogeneous element.
    pub fn shifted_parity(&self, a: &Poly) -> Option<u8> {
        self.ring.parity_of(a).map(|p| (p + self.s()) % 2)
    }

    /// Schouten bracket on raw elements.
    pub fn bracket(&self, a: &Poly, b: &Poly) -> Poly {
        let r = &self.ring;
        let s = self.s();
        let mut out = Poly::zero();
        for u in 0..self.k {
            let px = r.gen(u).degree.parity();
            let apr = r.deriv_right(a, self.p(u));
            if !apr.is_zero() {
                let bx = r.deriv_left(b, u);
                if !bx.is_zero() {
                    out.add_assign(&r.mul(&apr, &bx));
                }
            }
            let axr = r.deriv_right(a, u);
            if !axr.is_zero() {
                let bp = r.deriv_left(b, self.p(u));
                if !bp.is_zero() {
                    let t = r.mul(&axr, &bp);
                    // c2 = -(-1)^{(|x|+s)|x|}
                    let sign_pos = ((px + s) * px) % 2 == 1;
                    out.add_assign(&if sign_pos { t } else { t.neg() });
                }
            }
        }
        out
    }

    /// The differential on polyvectors, `[Q, -]`.
    pub fn differential(&self, a: &Poly) -> Poly {
        self.bracket(&self.q_elem, a)
    }

    pub fn multiply(&self, a: &Poly, b: &Poly) -> Poly {
        self.ring.mul(a, b)
    }

    /// Monomials of weights in `weights`, total degree `degree`, flag `flag`, and polynomial
    /// degree at most `coeff_degree` in the even base coordinates.
    pub fn ansatz(&self, weights: std::ops::RangeInclusive<usize>, degree: i64, flag: Flag, coeff_degree: i64) -> Vec<Mono> {
        ansatz_monomials(&self.ring, self.k, |m| self.weight(m), weights, degree, flag, coeff_degree)
    }
}

pub fn momentum_degree(d: TriDegree, n: i64, reversed: bool) -> TriDegree {
    let flag = if reversed { d.flag.flip() } else { d.flag };
    TriDegree::new(n + 1 - d.cochain, -d.chain, flag)
}

/// Finite ansatz in a ring of coordinates (the first `k` generators) and extra symbols.
pub fn ansatz_monomials(
    ring: &Ring,
    k: usize,
    weight: impl Fn(&Mono) -> usize,
    weights: std::ops::RangeInclusive<usize>,
    degree: i64,
    flag: Flag,
    coeff_degree: i64,
) -> Vec<Mono> {
    let w: Vec<i64> = (0..ring.len()).map(|i| if i < k && ring.gen(i).is_base() { 1 } else { 0 }).collect();
    let cap = (coeff_degree.max(0) as u32) + 2 * (*weights.end() as u32) + 4;
    let t = Truncation { weight: None, max_weight: Some(coeff_degree), cochain_max: None, chain_max: None, cap };
    let (monos, _) = enumerate_monomials(ring, &w, &t);
    monos
        .into_iter()
        .filter(|m| {
            let d = ring.mono_degree(m);
            weights.contains(&weight(m)) && d.total() == degree && d.flag == flag
        })
        .collect()
}

pub fn schouten(pa: &PolyAlgebra, a: &Polyvector, b: &Polyvector) -> Result<Polyvector, PoissonError> {
    pa.check(a)?;
    pa.check(b)?;
    Ok(pa.wrap(pa.bracket(&a.poly, &b.poly)))
}

/// Sign `(-1)^k` as a rational.
pub fn sign(k: u8) -> Rational {
    if k % 2 == 0 {
        Rational::from_integer(1.into())
    } else {
        Rational::from_integer((-1).into())
    }
}
