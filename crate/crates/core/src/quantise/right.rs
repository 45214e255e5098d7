//! Right de Rham complexes of flat right connections, their BV∞ brackets and the
//! quantum master equation.
//!
//! `Λ•T` is modelled by `(-2)`-shifted polyvectors, whose momenta `p_u` have degree
//! `-1-|x_u|`. A connection is given by forms `ν_k` (`k ≥ 2`) of form weight `k-1`:
//! `∇₂(a ∂_u) = a ν₂(∂_u) - ∂_u a` and `∇_k` is contraction with `ν_k` for `k > 2`.

use std::collections::BTreeMap;

use num_traits::One;

use super::QuantiseError;
use crate::geometry::{Forms, ManifoldModel};
use crate::graded_core::{qf, Rational};
use crate::poisson::PolyAlgebra;
use crate::superalgebra::{enumerate_monomials, monomial_complex, Generator, Mono, Poly, Ring, Truncation};
use crate::graded_core::{Complex, TriDegree};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RightConnectionData {
    /// `ν_k` in the forms ring, keyed by `k ≥ 2`.
    pub nu: BTreeMap<usize, Poly>,
}

impl RightConnectionData {
    /// Divergence for the unit volume: every `ν_k` vanishes.
    pub fn unit_volume() -> Self {
        RightConnectionData::default()
    }

    pub fn with(mut self, k: usize, form: Poly) -> Self {
        self.nu.insert(k, form);
        self
    }
}

/// `D^∇ = D_1 + D_2 + Σ_{k>2} D_k` on `Λ•T`, acting `ħ`-linearly on the ring extended by `ħ`.
#[derive(Clone, Debug)]
pub struct RightDeRham {
    pub pa: PolyAlgebra,
    pub forms: Forms,
    pub nabla: RightConnectionData,
    ext: Ring,
}

pub fn right_de_rham(x: &ManifoldModel, nabla: &RightConnectionData) -> Result<RightDeRham, QuantiseError> {
    right_de_rham_checked(x, nabla, 3)
}

/// As [`right_de_rham`], verifying `(D^∇)² = 0` on all monomials of total exponent at most `check_degree`.
pub fn right_de_rham_checked(
    x: &ManifoldModel,
    nabla: &RightConnectionData,
    check_degree: i64,
) -> Result<RightDeRham, QuantiseError> {
    let pa = PolyAlgebra::with_cutoff(x, -2, false, usize::MAX);
    let forms = Forms::new(x);
    for (&k, form) in &nabla.nu {
        if k < 2 || !forms.ring().contains(form) {
            return Err(QuantiseError::DegreeMismatch(format!("ν_{k} is not a form on the model")));
        }
        if form.terms().any(|(m, _)| forms.form_weight(m) != k - 1) {
            return Err(QuantiseError::DegreeMismatch(format!("ν_{k} must have form weight {}", k - 1)));
        }
        if forms.ring().degree_of(form).map(|d| d.total()) != Some(1) && !form.is_zero() {
            return Err(QuantiseError::DegreeMismatch(format!("ν_{k} must have total degree 1")));
        }
    }
    let names: Vec<&str> = pa.ring().gens().iter().map(|g| g.name.as_str()).collect();
    let mut hname = "hbar".to_string();
    while names.contains(&hname.as_str()) {
        hname.push('_');
    }
    let ext = pa.ring().extend(vec![Generator::new(hname, TriDegree::ZERO)])?;
    let rdr = RightDeRham { pa, forms, nabla: nabla.clone(), ext };
    rdr.check_flat(check_degree)?;
    Ok(rdr)
}

impl RightDeRham {
    /// The polyvector ring extended by an even `ħ` as its last generator.
    pub fn ring(&self) -> &Ring {
        &self.ext
    }

    pub fn hbar(&self) -> Poly {
        self.ext.var(self.ext.len() - 1)
    }

    /// `ħ^a` times an element of the polyvector ring.
    pub fn with_hbar(&self, a: u32, p: &Poly) -> Poly {
        self.ext.mul(&self.ext.pow(&self.hbar(), a), p)
    }

    pub fn split_hbar(&self, p: &Poly) -> BTreeMap<u32, Poly> {
        let h = self.ext.len() - 1;
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in p.terms() {
            let a = m.get(h).copied().unwrap_or(0);
            let mut mm = m.clone();
            mm.truncate(h);
            while mm.last() == Some(&0) {
                mm.pop();
            }
            out.entry(a).or_insert_with(Poly::zero).add_term(mm, c.clone());
        }
        out
    }

    /// `D_1 = [Q, -]`.
    pub fn d1(&self, p: &Poly) -> Poly {
        self.pa.differential(p)
    }

    /// `D_2 = Σ_u (-1)^{|x_u|} ∂_{x_u} ∂_{p_u} + ι_{ν₂}`.
    pub fn d2(&self, p: &Poly) -> Poly {
        let r = self.pa.ring();
        let mut out = Poly::zero();
        for u in 0..self.pa.k() {
            let inner = r.deriv_left(p, self.pa.p(u));
            if inner.is_zero() {
                continue;
            }
            let t = r.deriv_left(&inner, u);
            out.add_assign(&if r.is_odd(u) { t.neg() } else { t });
        }
        if let Some(nu) = self.nabla.nu.get(&2) {
            out.add_assign(&self.contract(nu, p));
        }
        out
    }

    /// Contraction of a form into a polyvector: `c dx_{u_1}⋯dx_{u_r}` acts by `c ∂_{p_{u_1}} ⋯ ∂_{p_{u_r}}`.
    fn contract(&self, form: &Poly, p: &Poly) -> Poly {
        let r = self.pa.ring();
        let k = self.pa.k();
        let mut out = Poly::zero();
        for (m, c) in form.terms() {
            let coeff: Mono = m.iter().take(k).copied().collect();
            let mut t = p.clone();
            for u in (0..k).rev() {
                for _ in 0..m.get(k + u).copied().unwrap_or(0) {
                    t = r.deriv_left(&t, self.pa.p(u));
                }
            }
            if !t.is_zero() {
                out.add_assign(&r.mul(&Poly::monomial(trim(coeff), c.clone()), &t));
            }
        }
        out
    }

    /// `D^∇` on an `ħ`-free polyvector.
    pub fn apply_classical(&self, p: &Poly) -> Poly {
        let mut out = self.d1(p).add(&self.d2(p));
        for (&k, nu) in &self.nabla.nu {
            if k > 2 {
                out.add_assign(&self.contract(nu, p));
            }
        }
        out
    }

    /// `D^∇` on the `ħ`-extended ring.
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, c) in self.split_hbar(p) {
            out.add_assign(&self.with_hbar(a, &self.apply_classical(&c)));
        }
        out
    }

    fn check_flat(&self, degree: i64) -> Result<(), QuantiseError> {
        let r = self.pa.ring();
        let ones = vec![1i64; r.len()];
        let t = Truncation { weight: None, max_weight: Some(degree), cochain_max: None, chain_max: None, cap: degree as u32 };
        let (monos, _) = enumerate_monomials(r, &ones, &t);
        for m in monos {
            let p = Poly::monomial(m, Rational::one());
            let dd = self.apply_classical(&self.apply_classical(&p));
            if !dd.is_zero() {
                return Err(QuantiseError::ConnectionNotFlat(format!("(D^∇)²({}) = {}", r.format(&p), r.format(&dd))));
            }
        }
        Ok(())
    }

    /// The subcomplex spanned by polyvectors of coefficient degree at most `max_degree`,
    /// graded by total degree; fails if `D^∇` leaves it.
    pub fn complex(&self, max_degree: u32) -> Result<Complex, QuantiseError> {
        let r = self.pa.ring();
        let k = self.pa.k();
        let w: Vec<i64> = (0..r.len()).map(|i| if i < k || !r.is_odd(i) { 1 } else { 0 }).collect();
        let t = Truncation { weight: None, max_weight: Some(max_degree as i64), cochain_max: None, chain_max: None, cap: max_degree };
        let (monos, _) = enumerate_monomials(r, &w, &t);
        let inside = |m: &Mono| m.iter().zip(&w).map(|(&e, &x)| e as i64 * x).sum::<i64>() <= max_degree as i64;
        for m in &monos {
            let img = self.apply_classical(&Poly::monomial(m.clone(), Rational::one()));
            if img.terms().any(|(mm, _)| !inside(mm)) {
                return Err(QuantiseError::Unbounded(r.format_mono(m)));
            }
        }
        let (c, _) = monomial_complex(r, monos, |m| r.mono_degree(m).total(), |p| self.apply_classical(p), |_| true)?;
        Ok(c)
    }

    /// `[a_1, …, a_k]_∇ = [⋯[D^∇, a_1], …, a_k](1)` on homogeneous arguments.
    pub fn linf_bracket(&self, args: &[Poly]) -> Result<Poly, QuantiseError> {
        let mut parities = Vec::new();
        for a in args {
            let par = if a.is_zero() { Some(0) } else { self.ext.parity_of(a) };
            parities.push(par.ok_or(QuantiseError::NotHomogeneous)?);
        }
        Ok(self.iterated(args, &parities, &Poly::one()))
    }

    /// `[⋯[D, a_1], …, a_k](b)`.
    fn iterated(&self, args: &[Poly], parities: &[u8], b: &Poly) -> Poly {
        let Some((last, rest)) = args.split_last() else {
            return self.apply(b);
        };
        let rp = &parities[..rest.len()];
        let op_parity = 1 + rp.iter().map(|&x| x as u32).sum::<u32>();
        let first = self.iterated(rest, rp, &self.ext.mul(last, b));
        let second = self.ext.mul(last, &self.iterated(rest, rp, b));
        if (op_parity * parities[rest.len()] as u32) % 2 == 1 {
            first.add(&second)
        } else {
            first.sub(&second)
        }
    }
}

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

/// `S = Σ_a ħ^a S_a` in `F̃² = Π_{j≥2} ħ^{j-1} F_j`, truncated modulo `ħ^{h_max+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantisationElement {
    pub h_max: u32,
    pub terms: BTreeMap<u32, Poly>,
}

impl QuantisationElement {
    /// Checks that every `ħ^a` coefficient is even of total degree 0 with at most `a+1` momenta, and `a ≥ 1`.
    pub fn new(rdr: &RightDeRham, h_max: u32, terms: BTreeMap<u32, Poly>) -> Result<Self, QuantiseError> {
        let r = rdr.pa.ring();
        for (&a, p) in &terms {
            if p.is_zero() {
                continue;
            }
            if a == 0 {
                return Err(QuantiseError::FiltrationViolation("the ħ⁰ coefficient must vanish".into()));
            }
            for (m, _) in p.terms() {
                let w = rdr.pa.weight(m);
                if w > a as usize + 1 {
                    return Err(QuantiseError::FiltrationViolation(format!(
                        "{} has weight {w} but carries ħ^{a}",
                        r.format_mono(m)
                    )));
                }
                if r.mono_degree(m).total() != 0 || r.mono_parity(m) != 0 {
                    return Err(QuantiseError::DegreeMismatch(format!("{} is not of degree 0", r.format_mono(m))));
                }
            }
        }
        let terms = terms.into_iter().filter(|(a, p)| *a <= h_max && !p.is_zero()).collect();
        Ok(QuantisationElement { h_max, terms })
    }

    pub fn zero(h_max: u32) -> Self {
        QuantisationElement { h_max, terms: BTreeMap::new() }
    }

    pub fn to_poly(&self, rdr: &RightDeRham) -> Poly {
        self.terms.iter().fold(Poly::zero(), |acc, (&a, p)| acc.add(&rdr.with_hbar(a, p)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QmeReport {
    pub passes: bool,
    /// Coefficient of each `ħ` power in `e^{-S} D^∇(e^S)`.
    pub residuals: BTreeMap<u32, Poly>,
}

fn truncate_hbar(rdr: &RightDeRham, p: &Poly, h: u32) -> Poly {
    let i = rdr.ext.len() - 1;
    p.filter(|m| m.get(i).copied().unwrap_or(0) <= h)
}

fn exp_series(rdr: &RightDeRham, s: &Poly, h: u32) -> Poly {
    let r = &rdr.ext;
    let mut out = Poly::one();
    let mut term = Poly::one();
    for n in 1..=h as i64 {
        term = truncate_hbar(rdr, &r.mul(&term, s), h).scale(&qf(1, n));
        if term.is_zero() {
            break;
        }
        out.add_assign(&term);
    }
    out
}

/// Evaluates `Σ_n [S, …, S]_{n,∇}/n!` and `e^{-S} D^∇(e^S)` independently, requires them to agree,
/// and reports the result per power of `ħ`.
pub fn qme_check(rdr: &RightDeRham, s: &QuantisationElement) -> Result<QmeReport, QuantiseError> {
    let h = s.h_max;
    let sp = s.to_poly(rdr);
    let r = &rdr.ext;

    let mut brackets = Poly::zero();
    let mut fact = Rational::one();
    for n in 1..=h as usize + 1 {
        fact *= Rational::from_integer((n as i64).into());
        let args = vec![sp.clone(); n];
        let b = truncate_hbar(rdr, &rdr.linf_bracket(&args)?, h);
        brackets.add_assign(&b.scale(&fact.recip()));
    }

    let conj = truncate_hbar(rdr, &r.mul(&exp_series(rdr, &sp.neg(), h), &rdr.apply(&exp_series(rdr, &sp, h))), h);
    if conj != brackets {
        return Err(QuantiseError::InconsistentEvaluations(format!(
            "brackets give {}, conjugation gives {}",
            r.format(&brackets),
            r.format(&conj)
        )));
    }
    let mut residuals = BTreeMap::new();
    for (a, c) in rdr.split_hbar(&conj) {
        if !c.is_zero() {
            residuals.insert(a, c);
        }
    }
    Ok(QmeReport { passes: residuals.is_empty(), residuals })
}
