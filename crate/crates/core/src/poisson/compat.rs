//! The compatibility map between forms and polyvectors, and the passage
//! between non-degenerate Poisson and symplectic structures.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::mc::{nondegenerate, sigma, PoissonStructure};
use super::polyvector::{ansatz_monomials, PolyAlgebra};
use super::PoissonError;
use crate::geometry::{Forms, ManifoldModel, PreSymplecticStructure};
use crate::graded_core::{Matrix, Rational};
use crate::superalgebra::{Mono, Poly, Ring};

/// `μ(ω, π)`: the algebra map fixing functions and sending `dx_u` to `[π, x_u]`, truncated.
pub fn mu_compat(pa: &PolyAlgebra, forms: &Forms, omega: &Poly, pi: &Poly) -> Poly {
    let r = pa.ring();
    let mut images: Vec<Poly> = (0..pa.k()).map(|u| r.var(u)).collect();
    for u in 0..pa.k() {
        images.push(pa.truncate(&pa.bracket(pi, &r.var(u))));
    }
    pa.truncate(&forms.ring().substitute(r, &images, omega))
}

fn base_degree(ring: &Ring, k: usize, p: &Poly) -> i64 {
    p.terms()
        .map(|(m, _)| m.iter().enumerate().filter(|&(i, _)| i < k && ring.gen(i).is_base()).map(|(_, &e)| e as i64).sum())
        .max()
        .unwrap_or(0)
}

/// Solves `Σ t_j cols[j] = rhs` in the monomial coordinates; `None` if inconsistent.
fn solve_in_monomials(cols: &[Poly], rhs: &Poly) -> Option<(Vec<Rational>, usize)> {
    let mut rows: BTreeSet<Mono> = rhs.terms().map(|(m, _)| m.clone()).collect();
    for c in cols {
        rows.extend(c.terms().map(|(m, _)| m.clone()));
    }
    let rows: Vec<Mono> = rows.into_iter().collect();
    let mut a = Matrix::zeros(rows.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, m) in rows.iter().enumerate() {
            let v = c.coeff(m);
            if !v.is_zero() {
                a.set(i, j, v);
            }
        }
    }
    let b: Vec<Rational> = rows.iter().map(|m| rhs.coeff(m)).collect();
    let x = a.solve(&b)?;
    Some((x, cols.len() - a.rank()))
}

fn combine(basis: &[Mono], t: &[Rational]) -> Poly {
    let mut p = Poly::zero();
    for (m, c) in basis.iter().zip(t) {
        p.add_term(m.clone(), c.clone());
    }
    p
}

/// `ω` with `μ(ω, π) = σ(π)` below the cutoff, among forms whose coefficients have polynomial
/// degree at most `coeff_degree` in the base coordinates.
pub fn poisson_to_symplectic_with(
    pa: &PolyAlgebra,
    pi: &PoissonStructure,
    coeff_degree: i64,
) -> Result<PreSymplecticStructure, PoissonError> {
    let report = nondegenerate(pa, pi);
    if !report.nondegenerate {
        return Err(PoissonError::SingularSystem(report.witness));
    }
    let forms = Forms::new(&pa.model);
    let k = pa.k();
    let basis = ansatz_monomials(
        forms.ring(),
        k,
        |m| forms.form_weight(m),
        2..=pa.cutoff,
        pa.structure_degree(),
        pa.flag(),
        coeff_degree,
    );
    let cols: Vec<Poly> =
        basis.iter().map(|m| mu_compat(pa, &forms, &Poly::monomial(m.clone(), Rational::from_integer(1.into())), &pi.pi.poly)).collect();
    let target = pa.truncate(&sigma(pa, &pi.pi).poly);
    let (t, kernel) = solve_in_monomials(&cols, &target)
        .ok_or_else(|| PoissonError::SingularSystem("μ(-, π) = σ(π) has no solution in the ansatz".into()))?;
    if kernel > 0 {
        return Err(PoissonError::SingularSystem(format!("μ(-, π) has a {kernel}-dimensional kernel on the ansatz")));
    }
    let omega = combine(&basis, &t);
    let components = (2..=pa.cutoff).map(|i| (i, forms.component(&omega, i))).filter(|(_, p)| !p.is_zero()).collect();
    Ok(PreSymplecticStructure { shift: pa.shift, parity_reversed: pa.parity_reversed, components })
}

pub fn poisson_to_symplectic(pa: &PolyAlgebra, pi: &PoissonStructure) -> Result<PreSymplecticStructure, PoissonError> {
    let d = base_degree(pa.ring(), pa.k(), &pi.pi.poly);
    poisson_to_symplectic_with(pa, pi, d)
}

fn omega_total(omega: &PreSymplecticStructure) -> Poly {
    omega.components.values().fold(Poly::zero(), |acc, p| acc.add(p))
}

/// Inductive weight-by-weight solution of `μ(ω, π) = σ(π)` up to `cutoff`.
pub fn symplectic_to_poisson_with(
    model: &ManifoldModel,
    omega: &PreSymplecticStructure,
    cutoff: usize,
    coeff_degree: i64,
) -> Result<(PolyAlgebra, PoissonStructure), PoissonError> {
    let pa = PolyAlgebra::with_cutoff(model, omega.shift, omega.parity_reversed, cutoff);
    let forms = Forms::new(model);
    let r = pa.ring().clone();
    let fr = forms.ring().clone();
    let k = pa.k();
    let w2 = omega.component(2);
    let flag = pa.flag();
    let deg = pa.structure_degree();

    // Weight 2: a bivector π⁺ with ι_{[π⁺, x_u]} ω₂ = dx_u, then rescaled.
    let basis2 = pa.ansatz(2..=2, deg, flag, coeff_degree);
    let mut cols: Vec<Poly> = vec![Poly::zero(); basis2.len()];
    let mut rhs = Poly::zero();
    // Stack the k equations by tagging each with an extra power of a fresh marker slot.
    let tag = |p: &Poly, u: usize| -> Poly {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let mut mm = m.clone();
            mm.resize(fr.len() + 1, 0);
            mm[fr.len()] = u as u32 + 1;
            out.add_term(mm, c.clone());
        }
        out
    };
    for u in 0..k {
        for (j, m) in basis2.iter().enumerate() {
            let v = pa.bracket(&Poly::monomial(m.clone(), Rational::from_integer(1.into())), &r.var(u));
            let vals: Vec<Poly> = (0..k).map(|w| r.deriv_right(&v, pa.p(w))).collect();
            cols[j].add_assign(&tag(&forms.contract(&vals, &w2), u));
        }
        rhs.add_assign(&tag(&fr.var(forms.dx(u)), u));
    }
    let (t, _) = solve_in_monomials(&cols, &rhs)
        .ok_or_else(|| PoissonError::SingularSystem("ω₂ is not invertible on the ansatz".into()))?;
    let pi_plus = combine(&basis2, &t);
    let image = pa.component(&mu_compat(&pa, &forms, &w2, &pi_plus), 2);
    let Some((m0, c0)) = pi_plus.terms().next() else {
        return Err(PoissonError::SingularSystem("ω₂ inverts to zero".into()));
    };
    let kappa0 = image.coeff(m0) / c0;
    if kappa0.is_zero() || image != pi_plus.scale(&kappa0) {
        return Err(PoissonError::ObstructionNonzero(2));
    }
    let mut pi = pi_plus.scale(&kappa0.recip());

    let omega_all = omega_total(omega);
    for w in 3..=cutoff {
        let basis = pa.ansatz(w..=w, deg, flag, coeff_degree);
        let known = pa.component(&mu_compat(&pa, &forms, &omega_all, &pi), w);
        let wm1 = Rational::from_integer((w as i64 - 1).into());
        let cols: Vec<Poly> = basis
            .iter()
            .map(|m| {
                let b = Poly::monomial(m.clone(), Rational::from_integer(1.into()));
                let with = pa.component(&mu_compat(&pa, &forms, &omega_all, &pi.add(&b)), w);
                with.sub(&known).sub(&b.scale(&wm1))
            })
            .collect();
        let (t, _) = solve_in_monomials(&cols, &known.neg()).ok_or(PoissonError::ObstructionNonzero(w))?;
        pi.add_assign(&combine(&basis, &t));
    }
    let structure = PoissonStructure::new(&pa, pi)?;
    Ok((pa, structure))
}

pub fn symplectic_to_poisson(
    model: &ManifoldModel,
    omega: &PreSymplecticStructure,
    cutoff: usize,
) -> Result<(PolyAlgebra, PoissonStructure), PoissonError> {
    let forms = Forms::new(model);
    let d = base_degree(forms.ring(), forms.n(), &omega_total(omega));
    symplectic_to_poisson_with(model, omega, cutoff, d)
}
