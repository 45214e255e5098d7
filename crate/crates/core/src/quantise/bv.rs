//! The BV Laplacian of a derived critical locus and the twisted de Rham complex
//! `(Ω•[ħ]/ħ^{h+1}, ħd + df∧)` that quantises it.


use super::polydiff::PolyDiffOperator;
use super::QuantiseError;
use crate::geometry::{Forms, ManifoldModel};
use crate::graded_core::{cohomology_all, CohomologyReport, Complex, TriDegree};
use crate::superalgebra::basis::poly_weights;
use crate::superalgebra::{monomial_complex, monomials_of_weight, Generator, Mono, Poly, Ring};

/// Checks the layout `x_1..x_k, ξ_1..ξ_k` with `δξ_i` a gradient in the `x`, returning `k`.
pub fn dcrit_layout(x: &ManifoldModel) -> Result<usize, QuantiseError> {
    let r = x.ring();
    let a = &x.algebra;
    if r.len() % 2 != 0 {
        return Err(QuantiseError::NotDCrit("odd number of generators".into()));
    }
    let k = r.len() / 2;
    for i in 0..k {
        if !r.gen(i).is_base() {
            return Err(QuantiseError::NotDCrit(format!("{} is not a base coordinate", r.gen(i).name)));
        }
        if r.gen(k + i).degree != TriDegree::chain(1) {
            return Err(QuantiseError::NotDCrit(format!("{} is not in chain degree 1", r.gen(k + i).name)));
        }
    }
    if a.has_q() || a.delta_images()[..k].iter().any(|p| !p.is_zero()) {
        return Err(QuantiseError::NotDCrit("only the antifields may have nonzero δ".into()));
    }
    let grads = &a.delta_images()[k..];
    for i in 0..k {
        if grads[i].terms().any(|(m, _)| m.len() > k) {
            return Err(QuantiseError::NotDCrit(format!("δ{} involves antifields", r.gen(k + i).name)));
        }
        for j in i + 1..k {
            if r.deriv_left(&grads[i], j) != r.deriv_left(&grads[j], i) {
                return Err(QuantiseError::NotDCrit(format!("δξ is not a gradient in slots {i}, {j}")));
            }
        }
    }
    Ok(k)
}

/// `Δ = Σ_i ∂_{x_i} ∂_{ξ_i}` for a constant volume form.
pub fn bv_laplacian(x: &ManifoldModel, volume: &Poly) -> Result<PolyDiffOperator, QuantiseError> {
    let k = dcrit_layout(x)?;
    if volume.is_zero() || volume.terms().any(|(m, _)| !m.is_empty()) {
        return Err(QuantiseError::NonUnitVolume(x.ring().format(volume)));
    }
    let terms = (0..k).map(|i| {
        let mut m = vec![0; k + i + 1];
        m[i] = 1;
        m[k + i] = 1;
        (vec![m], Poly::one())
    });
    PolyDiffOperator::from_terms(x.ring(), 1, 2, terms)
}

/// How the formal parameter is treated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbarMode {
    /// Coefficients in `ℚ[ħ]/ħ^{h+1}`.
    Truncated(u32),
    /// `ħ = 1`, only for `df = 0` where the differential is homogeneous.
    One,
}

/// `(Ω•(M)[ħ]/ħ^{h+1}, ħd + df∧)` on a polynomial base manifold, graded by form degree.
#[derive(Clone, Debug)]
pub struct TwistedDeRham {
    pub forms: Forms,
    pub f: Poly,
    pub mode: HbarMode,
    ring: Ring,
    hbar: usize,
    df: Poly,
    /// Weight of `ħ`, equal to the polynomial degree of `f`.
    step: i64,
}

pub fn twisted_de_rham(m: &ManifoldModel, f: &Poly, mode: HbarMode) -> Result<TwistedDeRham, QuantiseError> {
    let base = m.ring();
    if base.gens().iter().any(|g| !g.is_base()) || m.algebra.has_q() || m.algebra.has_delta() {
        return Err(QuantiseError::NotBaseModel);
    }
    if !base.contains(f) {
        return Err(QuantiseError::RingMismatch);
    }
    let forms = Forms::new(m);
    let fr = forms.ring().clone();
    let names: Vec<&str> = fr.gens().iter().map(|g| g.name.as_str()).collect();
    let mut hname = "hbar".to_string();
    while names.contains(&hname.as_str()) {
        hname.push('_');
    }
    let ring = fr.extend(vec![Generator::new(hname, TriDegree::ZERO)])?;
    let hbar = fr.len();
    let df = forms.d(f);
    let ones = vec![1i64; base.len()];
    let step = match poly_weights(&ones, &f.filter(|mm| !mm.is_empty())).as_slice() {
        [] => 1,
        [w] => *w,
        _ => return Err(QuantiseError::NotHomogeneous),
    };
    if mode == HbarMode::One && !df.is_zero() {
        return Err(QuantiseError::NotHomogeneous);
    }
    Ok(TwistedDeRham { forms, f: f.clone(), mode, ring, hbar, df, step })
}

impl TwistedDeRham {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn h_max(&self) -> u32 {
        match self.mode {
            HbarMode::Truncated(h) => h,
            HbarMode::One => 0,
        }
    }

    fn hbar_power(&self, m: &Mono) -> u32 {
        m.get(self.hbar).copied().unwrap_or(0)
    }

    /// `ħ dω + df ∧ ω`, reduced modulo `ħ^{h+1}`.
    pub fn apply(&self, w: &Poly) -> Poly {
        let n = self.forms.n();
        let images: Vec<Poly> = (0..n).map(|i| self.ring.var(self.forms.dx(i))).collect();
        let d = self.ring.apply_derivation(&images, w);
        match self.mode {
            HbarMode::One => d,
            HbarMode::Truncated(h) => {
                let hd = self.ring.mul(&self.ring.var(self.hbar), &d);
                hd.add(&self.ring.mul(&self.df, w)).filter(|m| self.hbar_power(m) <= h)
            }
        }
    }

    /// Monomials `ħ^a x^I dx^J` on which the differential preserves `|I| - (s-1)|J| + s·a`,
    /// where `s` is the degree of `f` (`|I| + |J|` when `ħ = 1`).
    fn slice_monomials(&self, w: i64) -> Vec<Mono> {
        let n = self.forms.n();
        let base = self.forms.ring();
        let ones = vec![1i64; n];
        let x_ring = Ring::new(base.gens()[..n].to_vec()).expect("prefix of a valid ring");
        let mut out = Vec::new();
        for a in 0..=self.h_max() as i64 {
            for mask in 0u32..(1 << n) {
                let j = mask.count_ones() as i64;
                let deg = match self.mode {
                    HbarMode::One => w - j,
                    HbarMode::Truncated(_) => w + (self.step - 1) * j - self.step * a,
                };
                if deg < 0 {
                    continue;
                }
                let (xs, _) = monomials_of_weight(&x_ring, &ones, deg, deg as u32 + 1);
                for xm in xs {
                    let mut m = xm.clone();
                    m.resize(self.hbar + 1, 0);
                    for v in 0..n {
                        if mask >> v & 1 == 1 {
                            m[n + v] = 1;
                        }
                    }
                    m[self.hbar] = a as u32;
                    while m.last() == Some(&0) {
                        m.pop();
                    }
                    out.push(m);
                }
            }
        }
        out
    }

    pub fn min_weight(&self) -> i64 {
        match self.mode {
            HbarMode::One => 0,
            HbarMode::Truncated(_) => -(self.step - 1) * self.forms.n() as i64,
        }
    }

    /// The finite subcomplex of one weight, in form degrees.
    pub fn slice(&self, w: i64) -> Result<Complex, QuantiseError> {
        let monos = self.slice_monomials(w);
        let n = self.forms.n();
        let (c, _) = monomial_complex(
            &self.ring,
            monos,
            |m| (n..2 * n).map(|v| m.get(v).copied().unwrap_or(0) as i64).sum(),
            |p| self.apply(p),
            |_| true,
        )?;
        Ok(c)
    }

    /// Cohomology summed over weights up to `max_weight`.
    pub fn cohomology(&self, max_weight: i64) -> Result<CohomologyReport, QuantiseError> {
        let mut report = CohomologyReport::default();
        for w in self.min_weight()..=max_weight {
            report.merge(cohomology_all(&self.slice(w)?));
        }
        Ok(report)
    }

    pub fn is_acyclic(&self, max_weight: i64) -> Result<bool, QuantiseError> {
        Ok(self.cohomology(max_weight)?.degrees.values().all(|d| d.dimension == 0))
    }
}
