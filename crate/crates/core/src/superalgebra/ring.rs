//! Free graded-commutative polynomial rings and their sparse elements.
//!
//! A monomial is an exponent vector indexed by generator position with trailing
//! zeros trimmed, so a ring whose generators extend another's as a prefix sees
//! the smaller ring's polynomials unchanged. Odd generators carry exponent at
//! most one and a stored monomial always means the product in generator order.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::AlgebraError;
use crate::graded_core::{Rational, TriDegree};

pub type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: TriDegree,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: TriDegree) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree.is_odd()
    }

    pub fn is_base(&self) -> bool {
        self.degree == TriDegree::ZERO
    }
}

#[derive(Debug)]
struct RingInner {
    gens: Vec<Generator>,
    odd: Vec<bool>,
    index: HashMap<String, usize>,
}

#[derive(Clone, Debug)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.gens == other.0.gens
    }
}

impl Eq for Ring {}

#[derive(Clone, Debug, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct Poly {
    terms: BTreeMap<Mono, Rational>,
}

fn trim(mut m: Mono) -> Mono {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

pub fn exp(m: &Mono, i: usize) -> u32 {
    m.get(i).copied().unwrap_or(0)
}

pub fn mono_total(m: &Mono) -> u32 {
    m.iter().sum()
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn monomial(m: Mono, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Rational {
        self.terms.get(&trim(m.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Vec::new())
    }

    pub fn add_term(&mut self, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        let m = trim(m);
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (m, c) in &o.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Highest index of a generator occurring, plus one.
    pub fn support_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }
}

impl Ring {
    pub fn new(gens: Vec<Generator>) -> Result<Self, AlgebraError> {
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        let odd = gens.iter().map(Generator::is_odd).collect();
        Ok(Ring(Arc::new(RingInner { gens, odd, index })))
    }

    pub fn empty() -> Self {
        Ring::new(Vec::new()).expect("no generators")
    }

    /// A ring whose generators are `self`'s followed by `more`.
    pub fn extend(&self, more: Vec<Generator>) -> Result<Self, AlgebraError> {
        let mut g = self.0.gens.clone();
        g.extend(more);
        Ring::new(g)
    }

    pub fn is_prefix_of(&self, other: &Ring) -> bool {
        other.0.gens.len() >= self.0.gens.len() && other.0.gens[..self.0.gens.len()] == self.0.gens[..]
    }

    pub fn len(&self) -> usize {
        self.0.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.gens.is_empty()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0.gens
    }

    pub fn gen(&self, i: usize) -> &Generator {
        &self.0.gens[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.index.get(name).copied()
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.0.odd[i]
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Poly::monomial(m, Rational::one())
    }

    pub fn var_named(&self, name: &str) -> Result<Poly, AlgebraError> {
        self.index_of(name).map(|i| self.var(i)).ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn mono_degree(&self, m: &Mono) -> TriDegree {
        m.iter().enumerate().fold(TriDegree::ZERO, |acc, (i, &e)| {
            (0..e).fold(acc, |a, _| a + self.0.gens[i].degree)
        })
    }

    pub fn mono_parity(&self, m: &Mono) -> u8 {
        (m.iter().enumerate().filter(|&(i, &e)| self.0.odd[i] && e % 2 == 1).count() % 2) as u8
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree_of(&self, p: &Poly) -> Option<TriDegree> {
        let mut it = p.terms.keys().map(|m| self.mono_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn parity_of(&self, p: &Poly) -> Option<u8> {
        let mut it = p.terms.keys().map(|m| self.mono_parity(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, p: &Poly, d: TriDegree) -> bool {
        p.terms.keys().all(|m| self.mono_degree(m) == d)
    }

    pub fn homogeneous_components(&self, p: &Poly) -> BTreeMap<TriDegree, Poly> {
        let mut out: BTreeMap<TriDegree, Poly> = BTreeMap::new();
        for (m, c) in &p.terms {
            out.entry(self.mono_degree(m)).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    fn check_mono(&self, m: &Mono) -> bool {
        m.len() <= self.len() && m.iter().enumerate().all(|(i, &e)| !self.0.odd[i] || e <= 1)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.terms.keys().all(|m| self.check_mono(m))
    }

    /// Product of two monomials as `(sign, monomial)`, or `None` when an odd generator repeats.
    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Option<(bool, Mono)> {
        let n = a.len().max(b.len());
        let mut out = vec![0u32; n];
        let mut negative = false;
        // Odd factors of `a` with index above j, accumulated from the right.
        let mut odd_above = 0usize;
        for j in (0..n).rev() {
            let (ea, eb) = (exp(a, j), exp(b, j));
            if self.0.odd[j] {
                if ea + eb > 1 {
                    return None;
                }
                if eb == 1 && odd_above % 2 == 1 {
                    negative = !negative;
                }
                if ea == 1 {
                    odd_above += 1;
                }
            }
            out[j] = ea + eb;
        }
        Some((negative, trim(out)))
    }

    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (ma, ca) in &p.terms {
            for (mb, cb) in &q.terms {
                if let Some((neg, m)) = self.mul_mono(ma, mb) {
                    let c = ca * cb;
                    r.add_term(m, if neg { -c } else { c });
                }
            }
        }
        r
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors.into_iter().fold(Poly::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, p: &Poly, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| self.mul(&acc, p))
    }

    fn odd_count(&self, m: &Mono, range: std::ops::Range<usize>) -> usize {
        range.filter(|&i| self.0.odd[i] && exp(m, i) == 1).count()
    }

    /// Left partial derivative in generator `v` (acts from the left).
    pub fn deriv_left(&self, p: &Poly, v: usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &p.terms {
            let e = exp(m, v);
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n[v] -= 1;
            let c = if self.0.odd[v] {
                if self.odd_count(m, 0..v) % 2 == 1 { -c.clone() } else { c.clone() }
            } else {
                c * Rational::from_integer(e.into())
            };
            r.add_term(n, c);
        }
        r
    }

    /// Right partial derivative in generator `v` (acts from the right).
    pub fn deriv_right(&self, p: &Poly, v: usize) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &p.terms {
            let e = exp(m, v);
            if e == 0 {
                continue;
            }
            let mut n = m.clone();
            n[v] -= 1;
            let c = if self.0.odd[v] {
                if self.odd_count(m, v + 1..m.len()) % 2 == 1 { -c.clone() } else { c.clone() }
            } else {
                c * Rational::from_integer(e.into())
            };
            r.add_term(n, c);
        }
        r
    }

    /// The derivation sending generator `v` to `images[v]` (missing entries are zero).
    pub fn apply_derivation(&self, images: &[Poly], p: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (v, img) in images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let dv = self.deriv_left(p, v);
            if !dv.is_zero() {
                r.add_assign(&self.mul(img, &dv));
            }
        }
        r
    }

    /// The algebra map into `target` sending generator `v` to `images[v]`.
    pub fn substitute(&self, target: &Ring, images: &[Poly], p: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &p.terms {
            let mut acc = Poly::constant(c.clone());
            for (v, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    acc = target.mul(&acc, &images[v]);
                }
                if acc.is_zero() {
                    break;
                }
            }
            r.add_assign(&acc);
        }
        r
    }

    /// Sets the generators with `kill[i]` to zero.
    pub fn kill(&self, p: &Poly, kill: impl Fn(usize) -> bool) -> Poly {
        p.filter(|m| m.iter().enumerate().all(|(i, &e)| e == 0 || !kill(i)))
    }

    /// Evaluates the generators in `values` (by index) at rationals, keeping the others.
    pub fn evaluate(&self, p: &Poly, values: &BTreeMap<usize, Rational>) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &p.terms {
            let mut c = c.clone();
            let mut n = m.clone();
            for (&i, val) in values {
                let e = exp(m, i);
                if e > 0 {
                    c *= num_traits::pow(val.clone(), e as usize);
                    n[i] = 0;
                }
            }
            r.add_term(n, c);
        }
        r
    }

    pub fn format_mono(&self, m: &Mono) -> String {
        let mut s = String::new();
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.0.gens[i].name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        s
    }

    /// Terms in increasing polynomial degree, earlier generators first within a degree.
    pub fn sorted_terms<'a>(&self, p: &'a Poly) -> Vec<(&'a Mono, &'a Rational)> {
        let mut t: Vec<_> = p.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| {
            let la = (0..a.len().max(b.len())).map(|i| std::cmp::Reverse(exp(a, i)));
            let lb = (0..a.len().max(b.len())).map(|i| std::cmp::Reverse(exp(b, i)));
            mono_total(a).cmp(&mono_total(b)).then_with(|| la.cmp(lb))
        });
        t
    }

    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.sorted_terms(p).into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let body = self.format_mono(m);
            if body.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&body);
            } else {
                let _ = write!(s, "{a}*{body}");
            }
        }
        s
    }
}
