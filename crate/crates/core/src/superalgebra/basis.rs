//! Homogeneity weights, monomial bases and finite-dimensional slices of
//! polynomial complexes.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cdga::FreeSuperCDGA;
use super::ring::{exp, Mono, Poly, Ring};
use super::AlgebraError;
use crate::graded_core::{cohomology_all, CohomologyReport, Complex, Matrix, Rational};

/// Default bound on polynomial degree when enumerating monomials.
pub const DEFAULT_DEGREE_CAP: u32 = 14;

pub fn mono_weight(weights: &[i64], m: &Mono) -> i64 {
    m.iter().enumerate().map(|(i, &e)| weights[i] * e as i64).sum()
}

pub fn poly_weights(weights: &[i64], p: &Poly) -> Vec<i64> {
    let mut w: Vec<i64> = p.terms().map(|(m, _)| mono_weight(weights, m)).collect();
    w.sort();
    w.dedup();
    w
}

/// Non-negative integer weights on generators for which `Q` and `δ` preserve weight.
///
/// Even base coordinates are pinned to weight one; remaining freedom gives even
/// generators weight one and odd generators weight zero. `None` when no such
/// non-negative assignment exists under these choices.
pub fn infer_weights(a: &FreeSuperCDGA) -> Option<Vec<i64>> {
    let ring = a.ring();
    let n = ring.len();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (i, img) in a.q_images().iter().chain(a.delta_images()).enumerate() {
        let g = i % n;
        for (m, _) in img.terms() {
            let mut row = vec![Rational::zero(); n];
            for (j, &e) in m.iter().enumerate() {
                row[j] += Rational::from_integer(e.into());
            }
            row[g] -= Rational::one();
            rows.push(row);
            rhs.push(Rational::zero());
        }
    }
    let base_pins: Vec<(Vec<Rational>, Rational)> = (0..n)
        .filter(|&i| ring.gen(i).is_base())
        .map(|i| {
            let mut row = vec![Rational::zero(); n];
            row[i] = Rational::one();
            (row, Rational::one())
        })
        .collect();
    let default = |i: usize| if ring.is_odd(i) { Rational::zero() } else { Rational::one() };
    let attempt = |pins: &[(Vec<Rational>, Rational)]| -> Option<Vec<i64>> {
        let mut r = rows.clone();
        let mut b = rhs.clone();
        for (row, v) in pins {
            r.push(row.clone());
            b.push(v.clone());
        }
        solve_with_defaults(&r, &b, n, default).and_then(|w| integral_nonnegative(&w))
    };
    attempt(&base_pins).or_else(|| attempt(&[]))
}

fn solve_with_defaults(
    rows: &[Vec<Rational>],
    rhs: &[Rational],
    n: usize,
    default: impl Fn(usize) -> Rational,
) -> Option<Vec<Rational>> {
    if n == 0 {
        return Some(Vec::new());
    }
    if rows.is_empty() {
        return Some((0..n).map(default).collect());
    }
    let mut aug = Matrix::zeros(rows.len(), n + 1);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            aug.set(r, c, v.clone());
        }
        aug.set(r, n, rhs[r].clone());
    }
    let e = aug.echelon();
    if e.pivots.last() == Some(&n) {
        return None;
    }
    let mut w: Vec<Option<Rational>> = vec![None; n];
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    for &f in &free {
        w[f] = Some(default(f));
    }
    for (row, &pc) in e.pivots.iter().enumerate() {
        let mut v = e.reduced.get(row, n).clone();
        for &f in &free {
            v -= e.reduced.get(row, f) * w[f].as_ref().unwrap();
        }
        w[pc] = Some(v);
    }
    Some(w.into_iter().map(Option::unwrap).collect())
}

fn integral_nonnegative(w: &[Rational]) -> Option<Vec<i64>> {
    if w.iter().any(Signed::is_negative) {
        return None;
    }
    let l = w.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    w.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer().to_i64()).collect()
}

/// Bounds cutting a finite set of monomials out of a free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// Exact homogeneity weight, if any.
    pub weight: Option<i64>,
    pub max_weight: Option<i64>,
    pub cochain_max: Option<i64>,
    pub chain_max: Option<i64>,
    /// Cap on polynomial degree, only binding for unconstrained even generators.
    pub cap: u32,
}

impl Truncation {
    pub fn weight(w: i64) -> Self {
        Truncation { weight: Some(w), max_weight: None, cochain_max: None, chain_max: None, cap: DEFAULT_DEGREE_CAP }
    }
}

/// Monomials within the truncation; the flag reports whether `cap` cut anything off.
pub fn enumerate_monomials(ring: &Ring, weights: &[i64], t: &Truncation) -> (Vec<Mono>, bool) {
    struct St<'a> {
        ring: &'a Ring,
        weights: &'a [i64],
        t: &'a Truncation,
        cur: Vec<u32>,
        out: Vec<Mono>,
        truncated: bool,
    }
    fn go(st: &mut St, i: usize, w: i64, c: i64, h: i64, deg: u32) {
        let t = st.t;
        let wmax = t.weight.or(t.max_weight);
        if i == st.ring.len() {
            if t.weight.map_or(true, |x| x == w) {
                let mut m = st.cur.clone();
                while m.last() == Some(&0) {
                    m.pop();
                }
                st.out.push(m);
            }
            return;
        }
        let g = st.ring.gen(i).degree;
        let gw = st.weights[i];
        let max_e = if st.ring.is_odd(i) { 1 } else { u32::MAX };
        let mut e = 0u32;
        loop {
            let ee = e as i64;
            if e > max_e
                || wmax.map_or(false, |m| w + ee * gw > m)
                || t.cochain_max.map_or(false, |m| c + ee * g.cochain > m)
                || t.chain_max.map_or(false, |m| h + ee * g.chain > m)
            {
                break;
            }
            if deg + e > t.cap {
                st.truncated = true;
                break;
            }
            st.cur[i] = e;
            go(st, i + 1, w + ee * gw, c + ee * g.cochain, h + ee * g.chain, deg + e);
            e += 1;
        }
        st.cur[i] = 0;
    }
    if weights.iter().any(|&w| w < 0) || t.weight.map_or(false, |w| w < 0) {
        return (Vec::new(), false);
    }
    let mut st = St { ring, weights, t, cur: vec![0; ring.len()], out: Vec::new(), truncated: false };
    go(&mut st, 0, 0, 0, 0, 0);
    let mut out = st.out;
    out.sort();
    (out, st.truncated)
}

/// All monomials of exact weight `weight` with polynomial degree at most `cap`.
pub fn monomials_of_weight(ring: &Ring, weights: &[i64], weight: i64, cap: u32) -> (Vec<Mono>, bool) {
    enumerate_monomials(ring, weights, &Truncation { cap, ..Truncation::weight(weight) })
}

/// Matrix of a linear operator from `source` monomials into the span of `target` monomials.
pub fn operator_matrix(
    ring: &Ring,
    source: &[Mono],
    target: &[Mono],
    op: impl Fn(&Poly) -> Poly,
) -> Result<Matrix, AlgebraError> {
    let index: HashMap<&Mono, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::zeros(target.len(), source.len());
    for (j, m) in source.iter().enumerate() {
        let img = op(&Poly::monomial(m.clone(), Rational::one()));
        for (tm, c) in img.terms() {
            let Some(&i) = index.get(tm) else {
                return Err(AlgebraError::BasisOverflow(ring.format_mono(tm)));
            };
            mat.set(i, j, c.clone());
        }
    }
    Ok(mat)
}

/// Coordinates of `p` in the monomial basis `basis`, or `None` if it leaves the span.
pub fn coordinates(basis: &[Mono], p: &Poly) -> Option<Vec<Rational>> {
    let index: HashMap<&Mono, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut v = vec![Rational::zero(); basis.len()];
    for (m, c) in p.terms() {
        v[*index.get(m)?] = c.clone();
    }
    Some(v)
}

pub fn from_coordinates(basis: &[Mono], v: &[Rational]) -> Poly {
    let mut p = Poly::zero();
    for (m, c) in basis.iter().zip(v) {
        p.add_term(m.clone(), c.clone());
    }
    p
}

/// The weight-`weight` slice of a complex of polynomials: monomials graded by
/// `degree`, with differential `op` raising `degree` by one.
pub fn weight_slice(
    ring: &Ring,
    weights: &[i64],
    weight: i64,
    cap: u32,
    degree: impl Fn(&Mono) -> i64,
    op: impl Fn(&Poly) -> Poly,
) -> Result<(Complex, BTreeMap<i64, Vec<Mono>>), AlgebraError> {
    let (monos, truncated) = monomials_of_weight(ring, weights, weight, cap);
    if truncated {
        let culprit = (0..ring.len()).find(|&i| weights[i] == 0 && !ring.is_odd(i)).unwrap_or(0);
        return Err(AlgebraError::Unbounded(ring.gen(culprit).name.clone()));
    }
    let mut by_degree: BTreeMap<i64, Vec<Mono>> = BTreeMap::new();
    for m in monos {
        by_degree.entry(degree(&m)).or_default().push(m);
    }
    let mut diffs = BTreeMap::new();
    let empty = Vec::new();
    for (&k, src) in &by_degree {
        let dst = by_degree.get(&(k + 1)).unwrap_or(&empty);
        diffs.insert(k, operator_matrix(ring, src, dst, &op)?);
    }
    let bases = by_degree
        .iter()
        .map(|(&k, ms)| (k, ms.iter().map(|m| display_mono(ring, m)).collect()))
        .collect();
    let c = Complex::new(bases, diffs).map_err(|e| AlgebraError::Complex(e.to_string()))?;
    Ok((c, by_degree))
}

/// Complex on a finite set of monomials graded by `degree`, with differential `op`
/// followed by discarding the terms that fail `kept` (the truncation quotient).
pub fn monomial_complex(
    ring: &Ring,
    monos: Vec<Mono>,
    degree: impl Fn(&Mono) -> i64,
    op: impl Fn(&Poly) -> Poly,
    kept: impl Fn(&Mono) -> bool,
) -> Result<(Complex, BTreeMap<i64, Vec<Mono>>), AlgebraError> {
    let mut by_degree: BTreeMap<i64, Vec<Mono>> = BTreeMap::new();
    for m in monos {
        by_degree.entry(degree(&m)).or_default().push(m);
    }
    let mut diffs = BTreeMap::new();
    let empty = Vec::new();
    for (&k, src) in &by_degree {
        let dst = by_degree.get(&(k + 1)).unwrap_or(&empty);
        diffs.insert(k, operator_matrix(ring, src, dst, |p| op(p).filter(&kept))?);
    }
    let bases = by_degree
        .iter()
        .map(|(&k, ms)| (k, ms.iter().map(|m| display_mono(ring, m)).collect()))
        .collect();
    let c = Complex::new(bases, diffs).map_err(|e| AlgebraError::Complex(e.to_string()))?;
    Ok((c, by_degree))
}

fn display_mono(ring: &Ring, m: &Mono) -> String {
    let s = ring.format_mono(m);
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Cohomology of `Q + δ` on a model, summed over weights `0..=max_weight`.
pub fn model_cohomology(a: &FreeSuperCDGA, max_weight: i64, cap: u32) -> Result<CohomologyReport, AlgebraError> {
    let weights = infer_weights(a).ok_or(AlgebraError::NotWeightHomogeneous)?;
    let ring = a.ring();
    let mut report = CohomologyReport::default();
    for w in 0..=max_weight {
        let (c, _) = weight_slice(ring, &weights, w, cap, |m| ring.mono_degree(m).total(), |p| a.total(p))?;
        report.merge(cohomology_all(&c));
    }
    Ok(report)
}

/// Polynomial degree of the part of a monomial in the generators selected by `pick`.
pub fn partial_degree(m: &Mono, pick: impl Fn(usize) -> bool) -> u32 {
    m.iter().enumerate().filter(|&(i, _)| pick(i)).map(|(_, &e)| e).sum()
}

pub fn has_generator(m: &Mono, i: usize) -> bool {
    exp(m, i) > 0
}
