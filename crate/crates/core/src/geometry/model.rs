//! Polynomial models of NQ-, dg- and dg NQ-manifolds over an affine chart.

use std::fmt;

use super::GeometryError;
use crate::graded_core::{Matrix, Rational, TriDegree};
use crate::superalgebra::{FreeSuperCDGA, Generator, Mono, Poly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    NQ,
    Dg,
    DgNQ,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::NQ => "NQ",
            ModelKind::Dg => "dg",
            ModelKind::DgNQ => "dgNQ",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldModel {
    pub kind: ModelKind,
    pub algebra: FreeSuperCDGA,
}

fn kind_allows(kind: ModelKind, d: TriDegree) -> bool {
    match kind {
        ModelKind::NQ => d.chain == 0,
        ModelKind::Dg => d.cochain == 0,
        ModelKind::DgNQ => d.chain == 0 || d.cochain == 0,
    }
}

impl ManifoldModel {
    pub fn new(kind: ModelKind, algebra: FreeSuperCDGA) -> Result<Self, GeometryError> {
        for g in algebra.gens() {
            if !kind_allows(kind, g.degree) {
                return Err(GeometryError::KindMismatch { kind, generator: g.name.clone() });
            }
        }
        if kind == ModelKind::NQ && algebra.has_delta() {
            return Err(GeometryError::KindMismatch { kind, generator: "delta".into() });
        }
        if kind == ModelKind::Dg && algebra.has_q() {
            return Err(GeometryError::KindMismatch { kind, generator: "Q".into() });
        }
        Ok(ManifoldModel { kind, algebra })
    }

    /// The narrowest kind admitting the algebra (NQ before dg when both fit).
    pub fn infer(algebra: FreeSuperCDGA) -> Result<Self, GeometryError> {
        for kind in [ModelKind::NQ, ModelKind::Dg, ModelKind::DgNQ] {
            if let Ok(m) = ManifoldModel::new(kind, algebra.clone()) {
                return Ok(m);
            }
        }
        let bad = algebra.gens().iter().find(|g| !kind_allows(ModelKind::DgNQ, g.degree)).map(|g| g.name.clone());
        Err(GeometryError::KindMismatch { kind: ModelKind::DgNQ, generator: bad.unwrap_or_default() })
    }

    pub fn point() -> Self {
        ManifoldModel::affine(0)
    }

    /// Affine space with coordinates `x1..xn` (`x` when `n = 1`).
    pub fn affine(n: usize) -> Self {
        let names: Vec<String> = if n == 1 { vec!["x".into()] } else { (1..=n).map(|i| format!("x{i}")).collect() };
        let ring = Ring::new(names.into_iter().map(|s| Generator::new(s, TriDegree::ZERO)).collect()).unwrap();
        ManifoldModel { kind: ModelKind::NQ, algebra: FreeSuperCDGA::trivial(&ring).unwrap() }
    }

    pub fn ring(&self) -> &Ring {
        self.algebra.ring()
    }

    pub fn base_indices(&self) -> Vec<usize> {
        self.algebra.base_indices()
    }
}

/// `π⁰X` of a dg model: the base chart cut out by `δ` of the chain-degree-one generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi0 {
    pub base: Ring,
    pub ideal: Vec<Poly>,
}

pub fn truncation_pi0(x: &ManifoldModel) -> Result<Pi0, GeometryError> {
    if x.kind != ModelKind::Dg {
        return Err(GeometryError::KindMismatch { kind: x.kind, generator: "truncation_pi0 needs a dg model".into() });
    }
    let ring = x.ring();
    let base_idx = x.base_indices();
    let base = Ring::new(base_idx.iter().map(|&i| ring.gen(i).clone()).collect()).unwrap();
    let images: Vec<Poly> = (0..ring.len())
        .map(|i| match base_idx.iter().position(|&b| b == i) {
            Some(j) => base.var(j),
            None => Poly::zero(),
        })
        .collect();
    let ideal = (0..ring.len())
        .filter(|&i| ring.gen(i).degree == TriDegree::chain(1))
        .map(|i| ring.substitute(&base, &images, &x.algebra.delta_images()[i]))
        .filter(|p| !p.is_zero())
        .collect();
    Ok(Pi0 { base, ideal })
}

impl Pi0 {
    /// Dimension of the quotient ring, when finite (estimated from the truncated Macaulay matrix).
    pub fn quotient_dimension(&self) -> Option<usize> {
        let at = |n: u32| self.quotient_dimension_upto(n);
        let (a, b) = (at(10), at(11));
        (a == b).then_some(a)
    }

    /// `dim Q[x]_{≤n} / (I ∩ Q[x]_{≤n})` where the ideal part is spanned by `m·g` of degree `≤ n`.
    pub fn quotient_dimension_upto(&self, n: u32) -> usize {
        let ring = &self.base;
        let monos = all_monomials(ring.len(), n);
        let index: std::collections::HashMap<&Mono, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in &self.ideal {
            let gdeg = g.terms().map(|(m, _)| m.iter().sum::<u32>()).max().unwrap_or(0);
            for m in all_monomials(ring.len(), n.saturating_sub(gdeg)) {
                if gdeg > n {
                    break;
                }
                let p = ring.mul(&Poly::monomial(m, Rational::from_integer(1.into())), g);
                let mut row = vec![Rational::from_integer(0.into()); monos.len()];
                for (tm, c) in p.terms() {
                    row[index[tm]] = c.clone();
                }
                rows.push(row);
            }
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).rank() };
        monos.len() - rank
    }
}

fn all_monomials(nvars: usize, max_deg: u32) -> Vec<Mono> {
    let mut out = vec![Vec::new()];
    for i in 0..nvars {
        let mut next = Vec::new();
        for m in &out {
            let used: u32 = m.iter().sum();
            for e in 0..=(max_deg - used) {
                let mut mm = m.clone();
                mm.resize(i + 1, 0);
                mm[i] = e;
                next.push(mm);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|mut m| {
            while m.last() == Some(&0) {
                m.pop();
            }
            m
        })
        .collect()
}

/// Shifts every monomial of `p` by `offset` generator slots.
pub fn shift_poly(p: &Poly, offset: usize) -> Poly {
    let mut r = Poly::zero();
    for (m, c) in p.terms() {
        if m.is_empty() {
            r.add_term(Vec::new(), c.clone());
            continue;
        }
        let mut n = vec![0; offset];
        n.extend_from_slice(m);
        r.add_term(n, c.clone());
    }
    r
}

/// Product model; clashing names from `y` get a numeric suffix.
pub fn product(x: &ManifoldModel, y: &ManifoldModel) -> ManifoldModel {
    let rx = x.ring();
    let ry = y.ring();
    let mut gens: Vec<Generator> = rx.gens().to_vec();
    for g in ry.gens() {
        let mut name = g.name.clone();
        let mut k = 2;
        while gens.iter().any(|h| h.name == name) {
            name = format!("{}_{k}", g.name);
            k += 1;
        }
        gens.push(Generator::new(name, g.degree));
    }
    let ring = Ring::new(gens).expect("names made unique");
    let off = rx.len();
    let q: Vec<Poly> = x.algebra.q_images().iter().cloned().chain(y.algebra.q_images().iter().map(|p| shift_poly(p, off))).collect();
    let d: Vec<Poly> =
        x.algebra.delta_images().iter().cloned().chain(y.algebra.delta_images().iter().map(|p| shift_poly(p, off))).collect();
    let algebra = FreeSuperCDGA::new(&ring, q, d).expect("product of valid models is valid");
    let kind = match (x.ring().is_empty(), y.ring().is_empty()) {
        (true, _) => Some(y.kind),
        (_, true) => Some(x.kind),
        _ if x.kind == y.kind => Some(x.kind),
        _ => None,
    };
    match kind {
        Some(k) => ManifoldModel::new(k, algebra).expect("kind fits"),
        None => ManifoldModel::infer(algebra).expect("generators are cochain-only or chain-only"),
    }
}
