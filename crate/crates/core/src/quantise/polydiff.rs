//! Polydifferential operators on a polynomial superalgebra, with the Hochschild
//! differential, cup product, the first brace and the Gerstenhaber bracket.
//!
//! A term `c ⊗ (I_1, …, I_n)` acts by `(a_1, …, a_n) ↦ c · ∂^{I_1}a_1 ⋯ ∂^{I_n}a_n`, where
//! `∂^I` applies the partial derivatives of `I` starting from the highest generator.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::QuantiseError;
use crate::graded_core::Rational;
use crate::superalgebra::ring::{exp, mono_total};
use crate::superalgebra::{Mono, Poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyDiffOperator {
    ring: Ring,
    arity: usize,
    order: u32,
    terms: BTreeMap<Vec<Mono>, Poly>,
}

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// All ways of writing `total` as an ordered sum of `parts` multi-indices, with multinomial weights.
fn splits(total: &Mono, parts: usize) -> Vec<(Vec<Mono>, BigInt)> {
    let mut out = vec![(vec![Mono::new(); parts], BigInt::one())];
    for (v, &e) in total.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let mut next = Vec::new();
        for (pieces, w) in &out {
            for comp in compositions(e, parts) {
                let mut ps = pieces.clone();
                let mut weight = w.clone();
                let mut left = e;
                for (k, &c) in comp.iter().enumerate() {
                    weight *= binomial(left, c);
                    left -= c;
                    if c > 0 {
                        ps[k].resize(v + 1, 0);
                        ps[k][v] = c;
                    }
                }
                next.push((ps, weight));
            }
        }
        out = next;
    }
    out
}

fn compositions(e: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 1 {
        return vec![vec![e]];
    }
    let mut out = Vec::new();
    for first in 0..=e {
        for mut rest in compositions(e - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn add_mono(a: &Mono, b: &Mono) -> Mono {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| exp(a, i) + exp(b, i)).collect())
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl PolyDiffOperator {
    pub fn zero(ring: &Ring, arity: usize, order: u32) -> Self {
        PolyDiffOperator { ring: ring.clone(), arity, order, terms: BTreeMap::new() }
    }

    /// Builds an operator from `(multi-indices, coefficient)` terms, checking arity and the order bound.
    pub fn from_terms(
        ring: &Ring,
        arity: usize,
        order: u32,
        terms: impl IntoIterator<Item = (Vec<Mono>, Poly)>,
    ) -> Result<Self, QuantiseError> {
        let mut op = PolyDiffOperator::zero(ring, arity, order);
        for (idx, c) in terms {
            if idx.len() != arity {
                return Err(QuantiseError::ArityMismatch { expected: arity, found: idx.len() });
            }
            for i in &idx {
                if mono_total(i) > order {
                    return Err(QuantiseError::OrderExceeded { bound: order, found: mono_total(i) });
                }
                if i.iter().enumerate().any(|(v, &e)| v >= ring.len() || (e > 1 && ring.is_odd(v))) {
                    return Err(QuantiseError::BadMultiIndex(format!("{i:?}")));
                }
            }
            op.add(idx.into_iter().map(trim).collect(), &c);
        }
        Ok(op)
    }

    pub fn element(ring: &Ring, p: Poly) -> Self {
        let mut op = PolyDiffOperator::zero(ring, 0, 0);
        op.add(Vec::new(), &p);
        op
    }

    pub fn identity(ring: &Ring) -> Self {
        let mut op = PolyDiffOperator::zero(ring, 1, 0);
        op.add(vec![Mono::new()], &Poly::one());
        op
    }

    pub fn multiplication(ring: &Ring) -> Self {
        let mut op = PolyDiffOperator::zero(ring, 2, 0);
        op.add(vec![Mono::new(), Mono::new()], &Poly::one());
        op
    }

    /// The vector field `Σ images[v] ∂_v` as an arity-one operator.
    pub fn derivation(ring: &Ring, images: &[Poly]) -> Self {
        let mut op = PolyDiffOperator::zero(ring, 1, 1);
        for (v, c) in images.iter().enumerate() {
            let mut m = vec![0; v + 1];
            m[v] = 1;
            op.add(vec![m], c);
        }
        op
    }

    fn add(&mut self, idx: Vec<Mono>, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(idx.clone()).or_insert_with(Poly::zero);
        e.add_assign(c);
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Largest multi-index actually present.
    pub fn actual_order(&self) -> u32 {
        self.terms.keys().flat_map(|idx| idx.iter().map(mono_total)).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Mono>, &Poly)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = PolyDiffOperator::zero(&self.ring, self.arity, self.order);
        for (idx, p) in &self.terms {
            out.add(idx.clone(), &p.scale(c));
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Result<Self, QuantiseError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.order = self.order.max(other.order);
        for (idx, p) in &other.terms {
            out.add(idx.clone(), p);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self, QuantiseError> {
        self.plus(&other.scale(&-Rational::one()))
    }

    fn same_shape(&self, other: &Self) -> Result<(), QuantiseError> {
        if self.ring != other.ring {
            return Err(QuantiseError::RingMismatch);
        }
        if self.arity != other.arity {
            return Err(QuantiseError::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    fn require_even(&self) -> Result<(), QuantiseError> {
        if (0..self.ring.len()).any(|v| self.ring.is_odd(v)) {
            return Err(QuantiseError::OddGenerators);
        }
        Ok(())
    }

    /// `∂^I a`.
    pub fn partial(ring: &Ring, idx: &Mono, a: &Poly) -> Poly {
        let mut out = a.clone();
        for v in (0..idx.len()).rev() {
            for _ in 0..idx[v] {
                out = ring.deriv_left(&out, v);
            }
        }
        out
    }

    /// Evaluation on arguments, with the Koszul sign for moving `∂^{I_j}` past `a_1, …, a_{j-1}`.
    pub fn apply(&self, args: &[Poly]) -> Result<Poly, QuantiseError> {
        if args.len() != self.arity {
            return Err(QuantiseError::ArityMismatch { expected: self.arity, found: args.len() });
        }
        let r = &self.ring;
        let split: Vec<[Poly; 2]> = args
            .iter()
            .map(|a| {
                let even = a.filter(|m| r.mono_parity(m) == 0);
                let odd = a.sub(&even);
                [even, odd]
            })
            .collect();
        let mut out = Poly::zero();
        for (idx, c) in &self.terms {
            let ipar: Vec<u8> = idx.iter().map(|i| r.mono_parity(i)).collect();
            // Expand over the parity components of the arguments.
            for choice in 0..(1u32 << self.arity) {
                let mut acc = c.clone();
                let mut passed = 0u32;
                let mut odd_sign = false;
                for j in 0..self.arity {
                    let bit = (choice >> j & 1) as usize;
                    let a = &split[j][bit];
                    if a.is_zero() {
                        acc = Poly::zero();
                        break;
                    }
                    odd_sign ^= ipar[j] == 1 && passed % 2 == 1;
                    acc = r.mul(&acc, &PolyDiffOperator::partial(r, &idx[j], a));
                    passed += bit as u32;
                }
                if !acc.is_zero() {
                    out.add_assign(&acc.scale(&sign(odd_sign)));
                }
            }
        }
        Ok(out)
    }

    /// Hochschild differential:
    /// `(bf)(a_1..a_{n+1}) = a_1 f(a_2..) + Σ_i (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{n+1} f(a_1..a_n) a_{n+1}`.
    pub fn hochschild_b(&self) -> Result<Self, QuantiseError> {
        self.require_even()?;
        let n = self.arity;
        let mut out = PolyDiffOperator::zero(&self.ring, n + 1, self.order);
        for (idx, c) in &self.terms {
            let mut first = vec![Mono::new()];
            first.extend(idx.iter().cloned());
            out.add(first, c);
            for i in 0..n {
                for (parts, w) in splits(&idx[i], 2) {
                    let mut key: Vec<Mono> = idx[..i].to_vec();
                    key.extend(parts);
                    key.extend(idx[i + 1..].iter().cloned());
                    let coeff = Rational::from_integer(w) * sign((i + 1) % 2 == 1);
                    out.add(key, &c.scale(&coeff));
                }
            }
            let mut last = idx.clone();
            last.push(Mono::new());
            out.add(last, &c.scale(&sign((n + 1) % 2 == 1)));
        }
        Ok(out)
    }

    /// `(f ⌣ g)(a_1..a_{n+m}) = f(a_1..a_n) g(a_{n+1}..a_{n+m})`.
    pub fn cup(&self, g: &Self) -> Result<Self, QuantiseError> {
        self.require_even()?;
        if self.ring != g.ring {
            return Err(QuantiseError::RingMismatch);
        }
        let mut out = PolyDiffOperator::zero(&self.ring, self.arity + g.arity, self.order.max(g.order));
        for (i1, c1) in &self.terms {
            for (i2, c2) in &g.terms {
                let mut key = i1.clone();
                key.extend(i2.iter().cloned());
                out.add(key, &self.ring.mul(c1, c2));
            }
        }
        Ok(out)
    }

    /// `f ∘_i g`: `g` inserted in slot `i` (zero-based).
    pub fn insert(&self, i: usize, g: &Self) -> Result<Self, QuantiseError> {
        self.require_even()?;
        if self.ring != g.ring {
            return Err(QuantiseError::RingMismatch);
        }
        if i >= self.arity {
            return Err(QuantiseError::ArityMismatch { expected: self.arity, found: i + 1 });
        }
        let r = &self.ring;
        let m = g.arity;
        let mut out = PolyDiffOperator::zero(r, self.arity + m - 1, self.order + g.order);
        for (fi, fc) in &self.terms {
            for (gi, gc) in &g.terms {
                for (parts, w) in splits(&fi[i], m + 1) {
                    let dc = PolyDiffOperator::partial(r, &parts[0], gc);
                    if dc.is_zero() {
                        continue;
                    }
                    let mut key: Vec<Mono> = fi[..i].to_vec();
                    key.extend((0..m).map(|k| add_mono(&parts[k + 1], &gi[k])));
                    key.extend(fi[i + 1..].iter().cloned());
                    out.add(key, &r.mul(fc, &dc).scale(&Rational::from_integer(w)));
                }
            }
        }
        Ok(out)
    }

    /// `f{g} = Σ_i (-1)^{i(m-1)} f ∘_i g`.
    pub fn brace1(&self, g: &Self) -> Result<Self, QuantiseError> {
        let m = g.arity as i64;
        let mut out = PolyDiffOperator::zero(&self.ring, (self.arity + g.arity).saturating_sub(1), self.order + g.order);
        if self.arity == 0 {
            return Ok(out);
        }
        for i in 0..self.arity {
            let t = self.insert(i, g)?;
            out = out.plus(&t.scale(&sign((i as i64 * (m - 1)).rem_euclid(2) == 1)))?;
        }
        Ok(out)
    }

    /// `[f, g] = f{g} - (-1)^{(n-1)(m-1)} g{f}`.
    pub fn gerstenhaber(&self, g: &Self) -> Result<Self, QuantiseError> {
        let (n, m) = (self.arity as i64 - 1, g.arity as i64 - 1);
        let a = self.brace1(g)?;
        let b = g.brace1(self)?;
        a.minus(&b.scale(&sign((n * m).rem_euclid(2) == 1)))
    }

    /// `i(f)(a_1..a_m) = -(-1)^{m(m+1)/2} f(a_m..a_1)` on an even algebra.
    pub fn reversal(&self) -> Result<Self, QuantiseError> {
        self.require_even()?;
        let m = self.arity;
        let s = -sign((m * (m + 1) / 2) % 2 == 1);
        let mut out = PolyDiffOperator::zero(&self.ring, m, self.order);
        for (idx, c) in &self.terms {
            let rev: Vec<Mono> = idx.iter().rev().cloned().collect();
            out.add(rev, &c.scale(&s));
        }
        Ok(out)
    }
}

impl std::fmt::Display for PolyDiffOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let r = &self.ring;
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let slots: Vec<String> = idx
                    .iter()
                    .map(|i| {
                        let s = r.format_mono(i);
                        if s.is_empty() {
                            "1".to_string()
                        } else {
                            format!("d[{s}]")
                        }
                    })
                    .collect();
                format!("({}) <{}>", r.format(c), slots.join(", "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A truncated `ħ`-series of polydifferential operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HbarSeries {
    pub h_max: u32,
    pub coeffs: BTreeMap<u32, Vec<PolyDiffOperator>>,
}

impl HbarSeries {
    pub fn new(h_max: u32) -> Self {
        HbarSeries { h_max, coeffs: BTreeMap::new() }
    }

    pub fn push(&mut self, power: u32, op: PolyDiffOperator) {
        if power <= self.h_max {
            self.coeffs.entry(power).or_default().push(op);
        }
    }

    /// Normal form: operators of equal arity at equal power are summed and zeros dropped.
    pub fn normalised(&self) -> Result<Self, QuantiseError> {
        let mut out = HbarSeries::new(self.h_max);
        for (&p, ops) in &self.coeffs {
            let mut by_arity: BTreeMap<usize, PolyDiffOperator> = BTreeMap::new();
            for op in ops {
                let e = by_arity.entry(op.arity()).or_insert_with(|| PolyDiffOperator::zero(op.ring(), op.arity(), op.order()));
                *e = e.plus(op)?;
            }
            let keep: Vec<PolyDiffOperator> = by_arity.into_values().filter(|o| !o.is_zero()).collect();
            if !keep.is_empty() {
                out.coeffs.insert(p, keep);
            }
        }
        Ok(out)
    }
}

/// `Δ*(ħ) = i(Δ)(-ħ)`.
pub fn self_dual_involution(delta: &HbarSeries) -> Result<HbarSeries, QuantiseError> {
    let mut out = HbarSeries::new(delta.h_max);
    for (&p, ops) in &delta.coeffs {
        for op in ops {
            out.push(p, op.reversal()?.scale(&sign(p % 2 == 1)));
        }
    }
    Ok(out)
}
