use proptest::prelude::*;

use super::*;
use crate::graded_core::{koszul_sign, q, qf, Flag, Rational, TriDegree};

fn ring3() -> Ring {
    Ring::new(vec![
        Generator::new("x", TriDegree::ZERO),
        Generator::new("xi", TriDegree::chain(1)),
        Generator::new("eta", TriDegree::cochain(1)),
        Generator::new("y", TriDegree::ZERO),
        Generator::new("t", TriDegree::new(0, 0, Flag::Unequal)),
        Generator::new("s", TriDegree::chain(2)),
    ])
    .unwrap()
}

/// Reference product: concatenate words of generator indices and bubble-sort them.
fn word_product(ring: &Ring, a: &[usize], b: &[usize]) -> (i32, Vec<usize>) {
    let mut w: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut sign = 1;
    for i in 0..w.len() {
        for j in 0..w.len() - 1 - i {
            if w[j] > w[j + 1] {
                if ring.is_odd(w[j]) && ring.is_odd(w[j + 1]) {
                    sign = -sign;
                }
                w.swap(j, j + 1);
            }
        }
    }
    for k in 1..w.len() {
        if w[k] == w[k - 1] && ring.is_odd(w[k]) {
            return (0, w);
        }
    }
    (sign, w)
}

fn word_to_mono(w: &[usize]) -> Mono {
    let mut m = vec![0; w.iter().max().map_or(0, |x| x + 1)];
    for &i in w {
        m[i] += 1;
    }
    m
}

fn mono_to_word(m: &Mono) -> Vec<usize> {
    m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect()
}

#[test]
fn odd_square_vanishes() {
    let r = ring3();
    let xi = AlgebraElement::generator(&r, "xi").unwrap();
    assert!(multiply(&xi, &xi).unwrap().is_zero());
}

#[test]
fn odd_generators_anticommute() {
    let r = ring3();
    let xi = AlgebraElement::generator(&r, "xi").unwrap();
    let eta = AlgebraElement::generator(&r, "eta").unwrap();
    let a = multiply(&xi, &eta).unwrap();
    let b = multiply(&eta, &xi).unwrap();
    assert_eq!(a, b.scale(&q(-1)));
    assert!(!a.is_zero());
}

#[test]
fn product_matches_word_oracle() {
    let r = ring3();
    let x = r.var(0);
    let xi = r.var(1);
    let eta = r.var(2);
    let y = r.var(3);
    let lhs = r.mul(&x.add(&r.mul(&xi, &eta)), &y);
    let mut expected = Poly::zero();
    for (w, c) in [(vec![0usize, 3], 1), (vec![1, 2, 3], 1)] {
        let (s, sorted) = word_product(&r, &w, &[]);
        expected.add_term(word_to_mono(&sorted), q((s * c).into()));
    }
    assert_eq!(lhs, expected);
    assert_eq!(r.format(&lhs), "x*y + xi*eta*y");
    // Reversed order needs a sign from the oracle.
    let (s, w) = word_product(&r, &[2], &[1]);
    assert_eq!(s, -1);
    assert_eq!(r.mul(&eta, &xi), Poly::monomial(word_to_mono(&w), q(-1)));
}

#[test]
fn derivative_of_cube() {
    let r = ring3();
    let x3 = r.pow(&r.var(0), 3);
    let d = Derivation::partial(&r, 0);
    assert_eq!(d.apply_poly(&x3), r.pow(&r.var(0), 2).scale(&q(3)));
}

#[test]
fn koszul_model_is_valid_and_degree_errors_are_caught() {
    let r = Ring::new(vec![Generator::new("x", TriDegree::ZERO), Generator::new("xi", TriDegree::chain(1))]).unwrap();
    let a = make_cdga(&r, Vec::<(&str, Poly)>::new(), vec![("xi", r.var(0))]).unwrap();
    // δ(ξ²) = δ(ξ)ξ − ξδ(ξ) = 0 in the free algebra (ξ² = 0 already).
    assert!(a.delta(&r.mul(&r.var(1), &r.var(1))).is_zero());
    assert_eq!(a.delta(&r.mul(&r.var(0), &r.var(1))), r.pow(&r.var(0), 2));
    let bad = make_cdga(&r, Vec::<(&str, Poly)>::new(), vec![("xi", r.var(1))]);
    assert!(matches!(bad, Err(AlgebraError::DegreeMismatch { .. })));
}

#[test]
fn empty_algebra_is_the_rationals() {
    let r = Ring::empty();
    let a = FreeSuperCDGA::trivial(&r).unwrap();
    assert!(a.gens().is_empty());
    let h = model_cohomology(&a, 3, DEFAULT_DEGREE_CAP).unwrap();
    assert_eq!(h.dimension(0), Some(1));
}

/// Dual model of an antisymmetric bracket table `c[i][j] = Σ_k c^k_ij e_k`.
fn ce_from_table(c: &[[[i64; 3]; 3]; 3]) -> Result<FreeSuperCDGA, AlgebraError> {
    let r = Ring::new((1..=3).map(|i| Generator::new(format!("e{i}"), TriDegree::cochain(1))).collect()).unwrap();
    let mut qv = vec![Poly::zero(); 3];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let coeff = c[i][j][k];
                if coeff != 0 {
                    let t = r.mul(&r.var(i), &r.var(j)).scale(&qf(-coeff, 2));
                    qv[k].add_assign(&t);
                }
            }
        }
    }
    FreeSuperCDGA::new(&r, qv, Vec::new())
}

fn table(entries: &[(usize, usize, usize, i64)]) -> [[[i64; 3]; 3]; 3] {
    let mut c = [[[0; 3]; 3]; 3];
    for &(i, j, k, v) in entries {
        c[i][j][k] += v;
        c[j][i][k] -= v;
    }
    c
}

#[test]
fn jacobi_failure_is_detected_by_q_squared() {
    let so3 = table(&[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)]);
    let a = ce_from_table(&so3).unwrap();
    // Q(e1 e2) expands through the structure constants.
    let r = a.ring();
    let expected = r.mul(&a.q_images()[0], &r.var(1)).sub(&r.mul(&r.var(0), &a.q_images()[1]));
    assert_eq!(a.q(&r.mul(&r.var(0), &r.var(1))), expected);
    let broken = table(&[(0, 1, 0, 1), (1, 2, 1, 1)]);
    assert!(matches!(ce_from_table(&broken), Err(AlgebraError::SquareNotZero { .. })));
}

#[test]
fn mixing_algebras_is_rejected() {
    let r1 = ring3();
    let r2 = Ring::new(vec![Generator::new("z", TriDegree::ZERO)]).unwrap();
    let a = AlgebraElement::generator(&r1, "x").unwrap();
    let b = AlgebraElement::generator(&r2, "z").unwrap();
    assert_eq!(multiply(&a, &b), Err(AlgebraError::AlgebraMismatch));
}

#[test]
fn weights_split_the_koszul_complex() {
    let r = Ring::new(vec![Generator::new("x", TriDegree::ZERO), Generator::new("xi", TriDegree::chain(1))]).unwrap();
    let a = make_cdga(&r, Vec::<(&str, Poly)>::new(), vec![("xi", r.pow(&r.var(0), 2))]).unwrap();
    assert_eq!(infer_weights(&a), Some(vec![1, 2]));
    let h = model_cohomology(&a, 8, DEFAULT_DEGREE_CAP).unwrap();
    assert_eq!(h.dimension(0), Some(2));
    assert_eq!(h.dimension(-1), Some(0));
}

fn arb_mono() -> impl Strategy<Value = Mono> {
    proptest::collection::vec(0u32..3, 6).prop_map(|mut v| {
        for (i, e) in v.iter_mut().enumerate() {
            if ring3().is_odd(i) {
                *e = (*e).min(1);
            }
        }
        v
    })
}

fn arb_poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((arb_mono(), -4i64..5), 1..4).prop_map(|ts| {
        let mut p = Poly::zero();
        for (m, c) in ts {
            p.add_term(m, q(c));
        }
        p
    })
}

fn homogeneous(r: &Ring, p: Poly) -> Poly {
    r.homogeneous_components(&p).into_values().next().unwrap_or_default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn graded_commutative_associative_distributive(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        let r = ring3();
        let (a, b) = (homogeneous(&r, a), homogeneous(&r, b));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert_eq!(r.mul(&a, &b.add(&c)), r.mul(&a, &b).add(&r.mul(&a, &c)));
        if let (Some(da), Some(db)) = (r.degree_of(&a), r.degree_of(&b)) {
            let s = Rational::from_integer(koszul_sign(da, db).into());
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a).scale(&s));
        }
    }

    #[test]
    fn monomial_product_matches_oracle(a in arb_mono(), b in arb_mono()) {
        let r = ring3();
        let (s, w) = word_product(&r, &mono_to_word(&a), &mono_to_word(&b));
        let got = r.mul(&Poly::monomial(a, q(1)), &Poly::monomial(b, q(1)));
        let want = if s == 0 { Poly::zero() } else { Poly::monomial(word_to_mono(&w), q(s.into())) };
        prop_assert_eq!(got, want);
    }

    #[test]
    fn derivations_obey_leibniz(images in proptest::collection::vec(arb_poly(), 6), pick in 0usize..6, a in arb_poly(), b in arb_poly()) {
        let r = ring3();
        // A homogeneous derivation: shift by the degree of its value on one generator.
        let img = homogeneous(&r, images[pick].clone());
        let shift = r.degree_of(&img).unwrap_or(TriDegree::ZERO) - r.gen(pick).degree;
        let vals: Vec<Poly> = (0..6)
            .map(|i| {
                let want = r.gen(i).degree + shift;
                images[i].filter(|m| r.mono_degree(m) == want)
            })
            .collect();
        let d = Derivation::new(&r, shift, vals).unwrap();
        let (a, b) = (homogeneous(&r, a), homogeneous(&r, b));
        let lhs = d.apply_poly(&r.mul(&a, &b));
        let sign = if shift.parity() * r.parity_of(&a).unwrap_or(0) == 1 { q(-1) } else { q(1) };
        let rhs = r.mul(&d.apply_poly(&a), &b).add(&r.mul(&a, &d.apply_poly(&b)).scale(&sign));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_and_right_derivatives_agree_up_to_sign(a in arb_poly(), v in 0usize..6) {
        let r = ring3();
        let a = homogeneous(&r, a);
        if let Some(p) = r.parity_of(&a) {
            let pv = r.gen(v).degree.parity();
            let sign = if pv * (p + pv) % 2 == 1 { q(-1) } else { q(1) };
            prop_assert_eq!(r.deriv_right(&a, v), r.deriv_left(&a, v).scale(&sign));
        }
    }
}
