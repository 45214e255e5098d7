//! Differential forms on a model: the free algebra on `x` and `dx`.
//!
//! `dx` has the degree of `x` plus one in cochain degree. The de Rham
//! differential `d` and the lifts `Q̂`, `δ̂` of the model's differentials are all
//! odd derivations; the lifts are fixed by `Q̂x = Qx` and `Q̂(dx) = -d(Qx)` so
//! that they anticommute with `d` and the total differential is `d + Q̂ + δ̂`.
//! On a form of parity `p` this `Q̂` is `(-1)^p` times the action of `Q` by Lie
//! derivative, so the closure equations read `(d ± Q ± δ)ω = 0`.

use num_traits::One;

use super::ManifoldModel;
use crate::graded_core::{Rational, TriDegree};
use crate::superalgebra::{Derivation, Generator, Mono, Poly, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Forms {
    pub model: ManifoldModel,
    ring: Ring,
    n: usize,
    d_images: Vec<Poly>,
    q_hat: Vec<Poly>,
    delta_hat: Vec<Poly>,
}

pub fn differential_name(ring_names: &[&str], name: &str) -> String {
    let mut s = format!("d{name}");
    while ring_names.contains(&s.as_str()) {
        s.push('_');
    }
    s
}

impl Forms {
    pub fn new(model: &ManifoldModel) -> Forms {
        let base = model.ring();
        let n = base.len();
        let names: Vec<&str> = base.gens().iter().map(|g| g.name.as_str()).collect();
        let mut extra = Vec::new();
        for g in base.gens() {
            let dn = differential_name(&names, &g.name);
            extra.push(Generator::new(dn, g.degree + TriDegree::cochain(1)));
        }
        let ring = base.extend(extra).expect("differential names are fresh");
        let mut d_images = vec![Poly::zero(); 2 * n];
        for i in 0..n {
            d_images[i] = ring.var(n + i);
        }
        let mut f = Forms { model: model.clone(), ring, n, d_images, q_hat: Vec::new(), delta_hat: Vec::new() };
        f.q_hat = f.lift(model.algebra.q_images());
        f.delta_hat = f.lift(model.algebra.delta_images());
        f
    }

    fn lift(&self, images: &[Poly]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); 2 * self.n];
        for i in 0..self.n {
            out[i] = images[i].clone();
            out[self.n + i] = self.d(&images[i]).neg();
        }
        out
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of coordinates (half the generators of the forms ring).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dx(&self, i: usize) -> usize {
        self.n + i
    }

    pub fn d(&self, p: &Poly) -> Poly {
        self.ring.apply_derivation(&self.d_images, p)
    }

    pub fn q_hat(&self, p: &Poly) -> Poly {
        self.ring.apply_derivation(&self.q_hat, p)
    }

    pub fn delta_hat(&self, p: &Poly) -> Poly {
        self.ring.apply_derivation(&self.delta_hat, p)
    }

    /// `Q̂ + δ̂`, the internal differential.
    pub fn internal(&self, p: &Poly) -> Poly {
        self.q_hat(p).add(&self.delta_hat(p))
    }

    pub fn total(&self, p: &Poly) -> Poly {
        self.d(p).add(&self.internal(p))
    }

    pub fn form_weight(&self, m: &Mono) -> usize {
        m.iter().skip(self.n).map(|&e| e as usize).sum()
    }

    pub fn component(&self, p: &Poly, k: usize) -> Poly {
        p.filter(|m| self.form_weight(m) == k)
    }

    /// Whether `p` lies in `Fil^k`, i.e. has no components of form weight below `k`.
    pub fn in_fil(&self, p: &Poly, k: usize) -> bool {
        p.terms().all(|(m, _)| self.form_weight(m) >= k)
    }

    /// Homogeneity weights on forms: `dx` inherits the weight of `x`.
    pub fn weights(&self, base: &[i64]) -> Vec<i64> {
        base.iter().chain(base.iter()).copied().collect()
    }

    /// Contraction with the vector field whose value on coordinate `i` is `values[i]`.
    pub fn contract(&self, values: &[Poly], omega: &Poly) -> Poly {
        let mut images = vec![Poly::zero(); 2 * self.n];
        for (i, v) in values.iter().enumerate() {
            images[self.n + i] = v.clone();
        }
        self.ring.apply_derivation(&images, omega)
    }

    /// `ι_{∂_u} ω`, the contraction with a coordinate vector field.
    pub fn contract_coordinate(&self, u: usize, omega: &Poly) -> Poly {
        self.ring.deriv_left(omega, self.n + u)
    }

    pub fn one_form(&self, coeffs: &[Poly]) -> Poly {
        let mut r = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            r.add_assign(&self.ring.mul(c, &self.ring.var(self.n + i)));
        }
        r
    }

    pub fn unit(&self) -> Poly {
        Poly::constant(Rational::one())
    }
}

/// Free module of 1-forms on the generators' differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormModule {
    pub forms: Forms,
}

pub fn one_forms(x: &ManifoldModel) -> OneFormModule {
    OneFormModule { forms: Forms::new(x) }
}

impl OneFormModule {
    pub fn rank(&self) -> usize {
        self.forms.n()
    }

    /// Degrees of the module generators `d(g)`, which inherit the degree of `g`.
    pub fn generator_degrees(&self) -> Vec<TriDegree> {
        self.forms.model.ring().gens().iter().map(|g| g.degree).collect()
    }

    pub fn d(&self, a: &Poly) -> Poly {
        self.forms.d(a)
    }

    /// The induced differential on `d(g)` for generator `g`, namely `d(Qg)`.
    pub fn q_of_differential(&self, g: usize) -> Poly {
        self.forms.d(&self.forms.model.algebra.q_images()[g])
    }

    /// The induced chain differential on `d(g)`, namely `d(δg)`.
    pub fn delta_of_differential(&self, g: usize) -> Poly {
        self.forms.d(&self.forms.model.algebra.delta_images()[g])
    }

    /// `⟨D, ω⟩` for a vector field `D` (a derivation of the model's algebra) and a 1-form.
    pub fn pairing(&self, dv: &Derivation, omega: &Poly) -> Poly {
        self.forms.contract(dv.images(), omega)
    }
}
