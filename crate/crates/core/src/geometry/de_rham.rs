//! Truncated de Rham complexes, closure of pre-symplectic forms and
//! non-degeneracy at sample points.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::forms::Forms;
use super::{GeometryError, ManifoldModel};
use crate::graded_core::{cohomology, CohomologyReport, Complex, Matrix, Rational};
use crate::superalgebra::{
    enumerate_monomials, from_coordinates, infer_weights, monomial_complex, Mono, Poly, Truncation, DEFAULT_DEGREE_CAP,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeRhamOptions {
    /// Largest homogeneity weight included (each weight is a direct summand).
    pub weight_cutoff: i64,
    /// Total degrees whose cohomology is reported.
    pub degree_window: (i64, i64),
    /// Cochain degree above which forms are discarded; defaults from the window.
    pub cochain_cutoff: Option<i64>,
    pub cap: u32,
}

impl DeRhamOptions {
    pub fn new(weight_cutoff: i64, degree_window: (i64, i64)) -> Self {
        DeRhamOptions { weight_cutoff, degree_window, cochain_cutoff: None, cap: DEFAULT_DEGREE_CAP }
    }
}

#[derive(Clone, Debug)]
pub struct WeightSlice {
    pub weight: i64,
    pub complex: Complex,
    pub basis: BTreeMap<i64, Vec<Mono>>,
}

/// De Rham complex with total differential `d + Q̂ + δ̂`, split by homogeneity weight.
#[derive(Clone, Debug)]
pub struct DeRham {
    pub forms: Forms,
    pub weights: Vec<i64>,
    pub slices: Vec<WeightSlice>,
    pub window: (i64, i64),
    pub cochain_cutoff: i64,
}

pub fn de_rham(x: &ManifoldModel, weight_cutoff: i64, degree_window: (i64, i64)) -> Result<DeRham, GeometryError> {
    de_rham_with(x, &DeRhamOptions::new(weight_cutoff, degree_window))
}

pub fn de_rham_with(x: &ManifoldModel, opts: &DeRhamOptions) -> Result<DeRham, GeometryError> {
    let forms = Forms::new(x);
    let base_weights = infer_weights(&x.algebra).ok_or(GeometryError::NotWeightHomogeneous)?;
    let weights = forms.weights(&base_weights);
    let (lo, hi) = opts.degree_window;
    let has_chain = x.ring().gens().iter().any(|g| g.degree.chain > 0);
    let c_max = opts.cochain_cutoff.unwrap_or(if has_chain { hi + 3 + 2 * opts.weight_cutoff.max(0) } else { hi + 1 });
    let h_max = c_max - (lo - 1);
    let ring = forms.ring().clone();
    let tdeg = |m: &Mono| ring.mono_degree(m).total();
    let mut slices = Vec::new();
    for w in 0..=opts.weight_cutoff {
        let t = Truncation { weight: Some(w), max_weight: None, cochain_max: Some(c_max), chain_max: Some(h_max), cap: opts.cap };
        let (monos, truncated) = enumerate_monomials(&ring, &weights, &t);
        if truncated {
            return Err(GeometryError::Unbounded { weight: w });
        }
        let monos: Vec<Mono> = monos.into_iter().filter(|m| (lo - 1..=hi + 1).contains(&tdeg(m))).collect();
        let kept = |m: &Mono| ring.mono_degree(m).cochain <= c_max && tdeg(m) <= hi + 1;
        let (complex, basis) = monomial_complex(&ring, monos, tdeg, |p| forms.total(p), kept)?;
        slices.push(WeightSlice { weight: w, complex: complex.reliable_from(lo), basis });
    }
    Ok(DeRham { forms, weights, slices, window: opts.degree_window, cochain_cutoff: c_max })
}

impl DeRham {
    fn in_window(&self, k: i64) -> bool {
        k >= self.window.0 && k <= self.window.1
    }

    pub fn cohomology(&self, degree: i64) -> CohomologyReport {
        let mut r = CohomologyReport::default();
        if !self.in_window(degree) {
            r.out_of_range.push(degree);
            return r;
        }
        for s in &self.slices {
            r.merge(cohomology(&s.complex, degree));
        }
        r.out_of_range.retain(|&k| !self.in_window(k));
        if !r.degrees.contains_key(&degree) {
            r.degrees.insert(degree, Default::default());
        }
        r
    }

    /// Cohomology representatives of one degree as forms.
    pub fn representatives(&self, degree: i64) -> Vec<Poly> {
        let mut out = Vec::new();
        for s in &self.slices {
            let rep = cohomology(&s.complex, degree);
            if let (Some(d), Some(b)) = (rep.degrees.get(&degree), s.basis.get(&degree)) {
                out.extend(d.representatives.iter().map(|v| from_coordinates(b, v)));
            }
        }
        out
    }

    /// Cohomology of the subcomplex `Fil^p` (form weight at least `p`).
    pub fn filtered_cohomology(&self, p: usize, degree: i64) -> Result<CohomologyReport, GeometryError> {
        let ring = self.forms.ring();
        let mut r = CohomologyReport::default();
        if !self.in_window(degree) {
            r.out_of_range.push(degree);
            return Ok(r);
        }
        let (_, hi) = self.window;
        for s in &self.slices {
            let monos: Vec<Mono> =
                s.basis.values().flatten().filter(|m| self.forms.form_weight(m) >= p).cloned().collect();
            let kept = |m: &Mono| ring.mono_degree(m).cochain <= self.cochain_cutoff && ring.mono_degree(m).total() <= hi + 1;
            let (c, _) = monomial_complex(ring, monos, |m| ring.mono_degree(m).total(), |x| self.forms.total(x), kept)?;
            let mut h = cohomology(&c.reliable_from(self.window.0), degree);
            if h.degrees.is_empty() {
                h.out_of_range.clear();
                h.degrees.insert(degree, Default::default());
            }
            r.merge(h);
        }
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreSymplecticStructure {
    pub shift: i64,
    pub parity_reversed: bool,
    /// Form weight `i ≥ 2` to the component `ω_i` in the forms ring.
    pub components: BTreeMap<usize, Poly>,
}

impl PreSymplecticStructure {
    pub fn new(shift: i64, parity_reversed: bool, omega2: Poly) -> Self {
        PreSymplecticStructure { shift, parity_reversed, components: BTreeMap::from([(2, omega2)]) }
    }

    pub fn cutoff(&self) -> usize {
        self.components.keys().copied().max().unwrap_or(2)
    }

    pub fn component(&self, i: usize) -> Poly {
        self.components.get(&i).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub closed: bool,
    /// Form weight `j` to `dω_{j-1} + (Q̂ + δ̂)ω_j`.
    pub residuals: BTreeMap<usize, Poly>,
}

pub fn check_form_degrees(forms: &Forms, omega: &PreSymplecticStructure) -> Result<(), GeometryError> {
    let flag = if omega.parity_reversed { crate::graded_core::Flag::Unequal } else { crate::graded_core::Flag::Equal };
    for (&i, w) in &omega.components {
        for (m, _) in w.terms() {
            let d = forms.ring().mono_degree(m);
            if i < 2 || forms.form_weight(m) != i || d.total() != omega.shift + 2 || d.flag != flag {
                return Err(GeometryError::DegreeMismatch {
                    component: i,
                    expected: format!("form weight {i}, total degree {}, flag {flag:?}", omega.shift + 2),
                    found: format!("form weight {}, degree {d}", forms.form_weight(m)),
                });
            }
        }
    }
    Ok(())
}

pub fn presymplectic_check(x: &ManifoldModel, omega: &PreSymplecticStructure) -> Result<ClosureReport, GeometryError> {
    let forms = Forms::new(x);
    check_form_degrees(&forms, omega)?;
    let mut residuals = BTreeMap::new();
    for j in 2..=omega.cutoff() + 1 {
        let r = forms.d(&omega.component(j - 1)).add(&forms.internal(&omega.component(j)));
        residuals.insert(j, r);
    }
    Ok(ClosureReport { closed: residuals.values().all(Poly::is_zero), residuals })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub nondegenerate: bool,
    pub witness: String,
    pub points_checked: usize,
}

const SAMPLE_VALUES: [i64; 4] = [-1, 0, 1, 2];

/// Deterministic sample of base points with coordinates in `{-1, 0, 1, 2}`.
pub fn sample_points(k: usize) -> Vec<Vec<Rational>> {
    let total = 4usize.checked_pow(k as u32).unwrap_or(usize::MAX);
    if total <= 64 {
        (0..total)
            .map(|mut i| {
                (0..k)
                    .map(|_| {
                        let v = SAMPLE_VALUES[i % 4];
                        i /= 4;
                        Rational::from_integer(v.into())
                    })
                    .collect()
            })
            .collect()
    } else {
        (0..64)
            .map(|i| (0..k).map(|j| Rational::from_integer(SAMPLE_VALUES[(i * (2 * j + 3) + j) % 4].into())).collect())
            .collect()
    }
}

/// Kills non-base generators and evaluates base coordinates at `point`, giving a constant.
pub fn reduce_at(x: &ManifoldModel, ring: &crate::superalgebra::Ring, p: &Poly, point: &[Rational]) -> Rational {
    let base = x.base_indices();
    let killed = ring.kill(p, |i| !base.contains(&i));
    let values: BTreeMap<usize, Rational> = base.iter().copied().zip(point.iter().cloned()).collect();
    ring.evaluate(&killed, &values).constant_term()
}

/// Non-degeneracy of a bilinear pairing given by entries `entry(v, u)` (functions on the model),
/// with the linearised internal differential `lin(v, u)` on the cotangent side.
pub fn nondegenerate_pairing(
    x: &ManifoldModel,
    ring: &crate::superalgebra::Ring,
    size: usize,
    entry: impl Fn(usize, usize) -> Poly,
    lin: impl Fn(usize, usize) -> Poly,
    parity: impl Fn(usize) -> u8,
) -> NondegeneracyReport {
    let points = sample_points(x.base_indices().len());
    let entries: Vec<Vec<Poly>> = (0..size).map(|v| (0..size).map(|u| entry(v, u)).collect()).collect();
    let has_diff = x.algebra.has_q() || x.algebra.has_delta();
    let lins: Vec<Vec<Poly>> =
        if has_diff { (0..size).map(|v| (0..size).map(|u| lin(v, u)).collect()).collect() } else { Vec::new() };
    for (k, pt) in points.iter().enumerate() {
        let m = Matrix::from_rows(entries.iter().map(|row| row.iter().map(|e| reduce_at(x, ring, e, pt)).collect()).collect());
        if size == 0 || m.rank() == size {
            continue;
        }
        if !has_diff {
            return NondegeneracyReport {
                nondegenerate: false,
                witness: format!("pairing has rank {} < {size} at base point {}", m.rank(), fmt_point(pt)),
                points_checked: k + 1,
            };
        }
        let l = Matrix::from_rows(lins.iter().map(|row| row.iter().map(|e| reduce_at(x, ring, e, pt)).collect()).collect());
        match cone_acyclic(&m, &l, &parity) {
            Some(true) => continue,
            Some(false) => {
                return NondegeneracyReport {
                    nondegenerate: false,
                    witness: format!("induced map on linearised complexes is not a quasi-isomorphism at {}", fmt_point(pt)),
                    points_checked: k + 1,
                }
            }
            None => {
                return NondegeneracyReport {
                    nondegenerate: false,
                    witness: format!("pairing is not a chain map at {}", fmt_point(pt)),
                    points_checked: k + 1,
                }
            }
        }
    }
    NondegeneracyReport {
        nondegenerate: true,
        witness: format!("invertible or quasi-isomorphic at {} sample points", points.len()),
        points_checked: points.len(),
    }
}

fn fmt_point(pt: &[Rational]) -> String {
    let v: Vec<String> = pt.iter().map(|r| r.to_string()).collect();
    format!("({})", v.join(","))
}

/// Cone of `m: T → Ω¹` with `Ω¹` differential `l` and the dual differential on `T`;
/// `None` if no standard sign choice makes it a complex.
fn cone_acyclic(m: &Matrix, l: &Matrix, parity: &impl Fn(usize) -> u8) -> Option<bool> {
    let n = m.rows();
    if !l.mul(l).is_zero() {
        return None;
    }
    for global in [Rational::one(), -Rational::one()] {
        for use_parity in [false, true] {
            let mut cone = Matrix::zeros(2 * n, 2 * n);
            for r in 0..n {
                for c in 0..n {
                    let s = if use_parity && parity(c) == 1 { -global.clone() } else { global.clone() };
                    let t = l.get(c, r) * &s;
                    if !t.is_zero() {
                        cone.set(r, c, t);
                    }
                    cone.set(n + r, c, m.get(r, c).clone());
                    cone.set(n + r, n + c, l.get(r, c).clone());
                }
            }
            if cone.mul(&cone).is_zero() {
                return Some(2 * cone.rank() == 2 * n);
            }
        }
    }
    None
}

pub fn symplectic_check(x: &ManifoldModel, omega: &PreSymplecticStructure) -> NondegeneracyReport {
    let forms = Forms::new(x);
    let w2 = omega.component(2);
    let ring = forms.ring().clone();
    let n = forms.n();
    nondegenerate_pairing(
        x,
        &ring,
        n,
        |v, u| ring.deriv_left(&ring.deriv_left(&w2, forms.dx(u)), forms.dx(v)),
        |v, u| ring.deriv_left(&forms.internal(&ring.var(forms.dx(u))), forms.dx(v)),
        |u| x.ring().gen(u).degree.parity(),
    )
}
