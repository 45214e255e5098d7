use std::collections::BTreeMap;

use proptest::prelude::*;

use super::*;
use crate::constructions::derived_critical_locus;
use crate::geometry::{Forms, ManifoldModel};
use crate::graded_core::{q, qf, Rational};
use crate::superalgebra::{Generator, Mono, Poly, Ring};
use crate::graded_core::TriDegree;

fn plane() -> Ring {
    Ring::new(vec![Generator::new("x", TriDegree::ZERO), Generator::new("y", TriDegree::ZERO)]).unwrap()
}

fn poly(r: &Ring, terms: &[(Vec<u32>, i64)]) -> Poly {
    let mut p = Poly::zero();
    for (m, c) in terms {
        let mut m = m.clone();
        m.truncate(r.len());
        while m.last() == Some(&0) {
            m.pop();
        }
        p.add_term(m, q(*c));
    }
    p
}

/// Operator from `(coefficient monomial, multi-indices, coefficient)`.
fn op(r: &Ring, arity: usize, terms: &[(Vec<u32>, Vec<Vec<u32>>, i64)]) -> PolyDiffOperator {
    let ts = terms.iter().map(|(cm, idx, c)| (idx.clone(), poly(r, &[(cm.clone(), *c)])));
    PolyDiffOperator::from_terms(r, arity, 4, ts).unwrap()
}

/// Direct evaluation of the displayed Hochschild formula through `apply`.
fn b_oracle(f: &PolyDiffOperator, args: &[Poly]) -> Poly {
    let r = f.ring();
    let n = f.arity();
    let mut out = r.mul(&args[0], &f.apply(&args[1..]).unwrap());
    for i in 0..n {
        let mut inner: Vec<Poly> = args[..i].to_vec();
        inner.push(r.mul(&args[i], &args[i + 1]));
        inner.extend(args[i + 2..].iter().cloned());
        let t = f.apply(&inner).unwrap();
        out = if i % 2 == 0 { out.sub(&t) } else { out.add(&t) };
    }
    let t = r.mul(&f.apply(&args[..n]).unwrap(), &args[n]);
    if n % 2 == 0 { out.sub(&t) } else { out.add(&t) }
}

fn brace_oracle(f: &PolyDiffOperator, g: &PolyDiffOperator, args: &[Poly]) -> Poly {
    let m = g.arity();
    let mut out = Poly::zero();
    for i in 0..f.arity() {
        let mut inner: Vec<Poly> = args[..i].to_vec();
        inner.push(g.apply(&args[i..i + m]).unwrap());
        inner.extend(args[i + m..].iter().cloned());
        let t = f.apply(&inner).unwrap();
        out = if (i * (m + 1)) % 2 == 1 && m % 2 == 0 { out.sub(&t) } else { out.add(&t) };
    }
    out
}

fn sample_args(r: &Ring, k: usize) -> Vec<Poly> {
    let pool = [
        poly(r, &[(vec![2, 1], 1), (vec![0, 0], 3)]),
        poly(r, &[(vec![1, 3], 2), (vec![1, 0], -1)]),
        poly(r, &[(vec![3, 0], 1), (vec![0, 2], 1)]),
        poly(r, &[(vec![1, 1], 5)]),
        poly(r, &[(vec![0, 1], 1), (vec![2, 2], -2)]),
    ];
    (0..k).map(|i| pool[i % pool.len()].clone()).collect()
}

#[test]
fn hochschild_examples() {
    let r = plane();
    let id = PolyDiffOperator::identity(&r);
    let mu = PolyDiffOperator::multiplication(&r);
    assert_eq!(id.hochschild_b().unwrap(), mu);
    assert!(mu.hochschild_b().unwrap().is_zero());
    let e = PolyDiffOperator::element(&r, r.var(0));
    let be = e.hochschild_b().unwrap();
    // (b a)(a₁) = a₁a - a a₁ = 0 in a commutative algebra.
    assert!(be.is_zero());
}

#[test]
fn brace_and_cup_examples() {
    let r = plane();
    let id = PolyDiffOperator::identity(&r);
    assert_eq!(id.brace1(&id).unwrap(), id);
    let a = PolyDiffOperator::element(&r, r.var(0));
    let b = PolyDiffOperator::element(&r, r.var(1));
    assert_eq!(a.cup(&b).unwrap(), PolyDiffOperator::element(&r, r.mul(&r.var(0), &r.var(1))));
}

#[test]
fn b_is_bracket_with_multiplication() {
    // b f = (-1)^{n+1} [μ, f] for f of arity n.
    let r = plane();
    let mu = PolyDiffOperator::multiplication(&r);
    let ops = [
        PolyDiffOperator::element(&r, r.pow(&r.var(0), 2)),
        op(&r, 1, &[(vec![0, 2], vec![vec![1, 1]], 1)]),
        op(&r, 2, &[(vec![1, 0], vec![vec![0, 1], vec![2, 0]], 1), (vec![0, 0], vec![vec![1, 0], vec![0, 0]], 3)]),
        op(&r, 3, &[(vec![0, 1], vec![vec![1, 0], vec![0, 0], vec![0, 2]], 2)]),
    ];
    for f in &ops {
        let s = if f.arity() % 2 == 1 { q(1) } else { q(-1) };
        assert_eq!(f.hochschild_b().unwrap(), mu.gerstenhaber(f).unwrap().scale(&s), "arity {}", f.arity());
    }
}

#[test]
fn involution_examples() {
    let r = plane();
    let d = op(&r, 1, &[(vec![1, 0], vec![vec![0, 2]], 1)]);
    let mut s = HbarSeries::new(3);
    s.push(1, d.clone());
    let star = self_dual_involution(&s).unwrap();
    assert_eq!(star.coeffs[&1], vec![d.scale(&q(-1))]);
    // m = 2: -(-1)^3 = +1, so i(f)(a, b) = f(b, a).
    let f = op(&r, 2, &[(vec![0, 0], vec![vec![1, 0], vec![0, 0]], 1)]);
    let flipped = op(&r, 2, &[(vec![0, 0], vec![vec![0, 0], vec![1, 0]], 1)]);
    assert_eq!(f.reversal().unwrap(), flipped);
    // m = 0 gives -f, m = 3 gives -f(a₃, a₂, a₁).
    let e = PolyDiffOperator::element(&r, r.var(1));
    assert_eq!(e.reversal().unwrap(), e.scale(&q(-1)));
    let t = op(&r, 3, &[(vec![0, 0], vec![vec![1, 0], vec![0, 0], vec![0, 1]], 1)]);
    let t_rev = op(&r, 3, &[(vec![0, 0], vec![vec![0, 1], vec![0, 0], vec![1, 0]], -1)]);
    assert_eq!(t.reversal().unwrap(), t_rev);
}

#[test]
fn odd_rings_are_rejected_for_hochschild_operations() {
    let x = derived_critical_locus(&ManifoldModel::affine(1), &Poly::zero()).unwrap().model;
    let id = PolyDiffOperator::identity(x.ring());
    assert_eq!(id.hochschild_b(), Err(QuantiseError::OddGenerators));
}

fn dcrit(n: usize, f: impl Fn(&Ring) -> Poly) -> ManifoldModel {
    let m = ManifoldModel::affine(n);
    let fp = f(m.ring());
    derived_critical_locus(&m, &fp).unwrap().model
}

#[test]
fn bv_laplacian_on_the_line() {
    let x = dcrit(1, |r| r.pow(&r.var(0), 3).scale(&qf(1, 3)));
    let d = bv_laplacian(&x, &Poly::one()).unwrap();
    let r = x.ring();
    assert_eq!(d.apply(&[r.mul(&r.var(0), &r.var(1))]).unwrap(), Poly::one());
    assert!(d.apply(&[Poly::constant(q(7))]).unwrap().is_zero());
    assert!(matches!(bv_laplacian(&x, &r.var(0)), Err(QuantiseError::NonUnitVolume(_))));
    assert!(matches!(bv_laplacian(&ManifoldModel::affine(2), &Poly::one()), Err(QuantiseError::NotDCrit(_))));
}

fn small_monomials(r: &Ring, max: u32) -> Vec<Mono> {
    let ones = vec![1i64; r.len()];
    let t = crate::superalgebra::Truncation { weight: None, max_weight: Some(max as i64), cochain_max: None, chain_max: None, cap: max };
    crate::superalgebra::enumerate_monomials(r, &ones, &t).0
}

#[test]
fn bv_laplacian_squares_to_zero_and_anticommutes_with_delta() {
    let fs: Vec<Box<dyn Fn(&Ring) -> Poly>> = vec![
        Box::new(|_| Poly::zero()),
        Box::new(|r| r.pow(&r.var(0), 3)),
        Box::new(|r| r.mul_all([&r.var(0), &r.var(1), &r.var(1)]).add(&r.var(1))),
    ];
    for (n, f) in [(1, &fs[1]), (2, &fs[0]), (2, &fs[2])] {
        let x = dcrit(n, |r| f(r));
        let d = bv_laplacian(&x, &Poly::one()).unwrap();
        let r = x.ring();
        for m in small_monomials(r, 4) {
            let p = Poly::monomial(m, Rational::from_integer(1.into()));
            let dp = d.apply(&[p.clone()]).unwrap();
            assert!(d.apply(&[dp.clone()]).unwrap().is_zero());
            let mixed = x.algebra.delta(&dp).add(&d.apply(&[x.algebra.delta(&p)]).unwrap());
            assert!(mixed.is_zero(), "{}", r.format(&p));
        }
    }
}

#[test]
fn twisted_de_rham_on_the_line() {
    let m = ManifoldModel::affine(1);
    let r = m.ring();
    for h in 0..=5 {
        let t = twisted_de_rham(&m, &r.var(0), HbarMode::Truncated(h)).unwrap();
        assert!(t.is_acyclic(8).unwrap(), "h = {h}");
    }
    let half_sq = r.pow(&r.var(0), 2).scale(&qf(1, 2));
    for h in 0..=3 {
        let t = twisted_de_rham(&m, &half_sq, HbarMode::Truncated(h)).unwrap();
        assert_eq!(t.cohomology(8).unwrap().dimension(0).unwrap_or(0), 0);
    }
    let t = twisted_de_rham(&m, &Poly::zero(), HbarMode::One).unwrap();
    let c = t.cohomology(6).unwrap();
    assert_eq!(c.dimension(0), Some(1));
    assert_eq!(c.dimension(1), Some(0));
    assert!(matches!(twisted_de_rham(&m, &r.var(0), HbarMode::One), Err(QuantiseError::NotHomogeneous)));
}

#[test]
fn twisted_de_rham_mod_hbar_is_koszul() {
    // Modulo ħ the differential is df∧; for f = x²/2 that is x dx∧, with cohomology ℚ[x]/(x) in degree 1.
    let m = ManifoldModel::affine(1);
    let r = m.ring();
    let t = twisted_de_rham(&m, &r.pow(&r.var(0), 2).scale(&qf(1, 2)), HbarMode::Truncated(0)).unwrap();
    let c = t.cohomology(10).unwrap();
    assert_eq!(c.dimension(0), Some(0));
    assert_eq!(c.dimension(1), Some(1));
}

#[test]
fn right_de_rham_flatness() {
    let plane = ManifoldModel::affine(2);
    let rdr = right_de_rham(&plane, &RightConnectionData::unit_volume()).unwrap();
    assert!(rdr.complex(3).is_ok());
    let forms = Forms::new(&plane);
    let fr = forms.ring();
    let closed = forms.d(&fr.mul(&fr.var(0), &fr.var(1)));
    assert!(right_de_rham(&plane, &RightConnectionData::unit_volume().with(2, closed)).is_ok());
    let not_closed = fr.mul(&fr.var(0), &fr.var(forms.dx(1)));
    assert!(matches!(
        right_de_rham(&plane, &RightConnectionData::unit_volume().with(2, not_closed)),
        Err(QuantiseError::ConnectionNotFlat(_))
    ));
    assert!(rdr.apply(&Poly::zero()).is_zero());
}

#[test]
fn right_de_rham_of_a_critical_locus_is_flat() {
    let x = dcrit(1, |r| r.pow(&r.var(0), 2).scale(&qf(1, 2)));
    assert!(right_de_rham_checked(&x, &RightConnectionData::unit_volume(), 4).is_ok());
    let y = dcrit(2, |r| r.mul_all([&r.var(0), &r.var(0), &r.var(1)]));
    assert!(right_de_rham_checked(&y, &RightConnectionData::unit_volume(), 3).is_ok());
}

#[test]
fn linf_brackets() {
    let rdr = right_de_rham(&ManifoldModel::affine(2), &RightConnectionData::unit_volume()).unwrap();
    let r = rdr.ring().clone();
    assert!(rdr.linf_bracket(&[Poly::constant(q(2)), Poly::constant(q(3))]).unwrap().is_zero());
    let pv = r.mul(&r.var(0), &r.var(rdr.pa.p(0)));
    assert_eq!(rdr.linf_bracket(&[pv.clone()]).unwrap(), rdr.apply(&pv));
    let a = r.mul(&r.var(1), &r.var(rdr.pa.p(0)));
    let b = r.mul(&r.var(0), &r.var(rdr.pa.p(1)));
    let ab = rdr.linf_bracket(&[a.clone(), b.clone()]).unwrap();
    let ba = rdr.linf_bracket(&[b, a]).unwrap();
    // Both arguments are odd.
    assert_eq!(ab, ba.neg());
    assert!(!ab.is_zero());
}

/// `T*[2]line`: `x` with a chain-degree-2 dual, so `p_x p_ξ` has degree 0.
fn minus_two_line() -> ManifoldModel {
    crate::constructions::shifted_cotangent(&ManifoldModel::affine(1), 2, false).unwrap().model
}

#[test]
fn quantum_master_equation() {
    let x = dcrit(1, |r| r.pow(&r.var(0), 2).scale(&qf(1, 2)));
    let rdr = right_de_rham(&x, &RightConnectionData::unit_volume()).unwrap();
    assert!(qme_check(&rdr, &QuantisationElement::zero(3)).unwrap().passes);

    let y = minus_two_line();
    let rdr = right_de_rham(&y, &RightConnectionData::unit_volume()).unwrap();
    let r = rdr.pa.ring();
    let bivector = r.mul(&r.var(rdr.pa.p(0)), &r.var(rdr.pa.p(1)));
    let el = QuantisationElement::new(&rdr, 3, BTreeMap::from([(1, bivector.clone())])).unwrap();
    assert!(qme_check(&rdr, &el).unwrap().passes);
    let s = r.mul(&r.var(0), &bivector);
    let el = QuantisationElement::new(&rdr, 3, BTreeMap::from([(1, s)])).unwrap();
    let rep = qme_check(&rdr, &el).unwrap();
    assert!(!rep.passes);
    assert_eq!(rep.residuals.keys().next(), Some(&1));
}

#[test]
fn quantisation_filtration_is_enforced() {
    let rdr = right_de_rham(&ManifoldModel::affine(2), &RightConnectionData::unit_volume()).unwrap();
    let r = rdr.pa.ring();
    let heavy = r.mul_all([&r.var(rdr.pa.p(0)), &r.var(rdr.pa.p(1))]);
    let res = QuantisationElement::new(&rdr, 3, BTreeMap::from([(1, r.mul(&heavy, &Poly::one()))]));
    assert!(res.is_err());
}

fn arb_op(arity: usize) -> impl Strategy<Value = Vec<(Vec<u32>, Vec<Vec<u32>>, i64)>> {
    let term = (
        proptest::collection::vec(0u32..2, 2),
        proptest::collection::vec(proptest::collection::vec(0u32..3, 2), arity),
        -2i64..3,
    );
    proptest::collection::vec(term, 1..3)
}

fn bounded(r: &Ring, arity: usize, t: Vec<(Vec<u32>, Vec<Vec<u32>>, i64)>) -> PolyDiffOperator {
    let t: Vec<_> = t
        .into_iter()
        .map(|(c, idx, k)| {
            let idx = idx.into_iter().map(|mut i| {
                if i[0] + i[1] > 2 {
                    i[1] = 2 - i[0].min(2);
                }
                i
            });
            (c, idx.collect(), k)
        })
        .collect();
    op(r, arity, &t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn b_matches_displayed_formula(t in arb_op(2)) {
        let r = plane();
        let f = bounded(&r, 2, t);
        let args = sample_args(&r, 3);
        prop_assert_eq!(f.hochschild_b().unwrap().apply(&args).unwrap(), b_oracle(&f, &args));
    }

    #[test]
    fn b_squares_to_zero(t in arb_op(2)) {
        let r = plane();
        let f = bounded(&r, 2, t);
        prop_assert!(f.hochschild_b().unwrap().hochschild_b().unwrap().is_zero());
    }

    #[test]
    fn brace_matches_insertion(t in arb_op(2), u in arb_op(1)) {
        let r = plane();
        let f = bounded(&r, 2, t);
        let g = bounded(&r, 1, u);
        let args = sample_args(&r, 2);
        prop_assert_eq!(f.brace1(&g).unwrap().apply(&args).unwrap(), brace_oracle(&f, &g, &args));
        let h = PolyDiffOperator::multiplication(&r);
        let args3 = sample_args(&r, 3);
        prop_assert_eq!(f.brace1(&h).unwrap().apply(&args3).unwrap(), brace_oracle(&f, &h, &args3));
    }

    #[test]
    fn derivation_bracket_is_lie_bracket(a in proptest::collection::vec((0u32..3, 0u32..3, -2i64..3), 2), b in proptest::collection::vec((0u32..3, 0u32..3, -2i64..3), 2)) {
        let r = plane();
        let img = |v: &Vec<(u32, u32, i64)>| -> Vec<Poly> { v.iter().map(|&(i, j, c)| poly(&r, &[(vec![i, j], c)])).collect() };
        let (ia, ib) = (img(&a), img(&b));
        let x = PolyDiffOperator::derivation(&r, &ia);
        let y = PolyDiffOperator::derivation(&r, &ib);
        let lie: Vec<Poly> = (0..2).map(|v| r.apply_derivation(&ia, &ib[v]).sub(&r.apply_derivation(&ib, &ia[v]))).collect();
        let expected = PolyDiffOperator::derivation(&r, &lie);
        let got = x.gerstenhaber(&y).unwrap();
        prop_assert_eq!(got.terms().collect::<Vec<_>>(), expected.terms().collect::<Vec<_>>());
    }

    #[test]
    fn gerstenhaber_antisymmetry_and_jacobi(t in arb_op(2), u in arb_op(1), v in arb_op(1)) {
        let r = plane();
        let f = bounded(&r, 2, t);
        let g = bounded(&r, 1, u);
        let h = bounded(&r, 1, v);
        let fg = f.gerstenhaber(&g).unwrap();
        let gf = g.gerstenhaber(&f).unwrap();
        prop_assert!(fg.plus(&gf).unwrap().is_zero());
        // Degrees |f| = 1, |g| = |h| = 0.
        let lhs = f.gerstenhaber(&g.gerstenhaber(&h).unwrap()).unwrap();
        let rhs = f.gerstenhaber(&g).unwrap().gerstenhaber(&h).unwrap().plus(&g.gerstenhaber(&f.gerstenhaber(&h).unwrap()).unwrap()).unwrap();
        prop_assert!(lhs.minus(&rhs).unwrap().is_zero());
    }

    #[test]
    fn involution_is_involutive(t in arb_op(2), u in arb_op(1), p in 0u32..4) {
        let r = plane();
        let mut s = HbarSeries::new(4);
        s.push(p, bounded(&r, 2, t));
        s.push(p + 1, bounded(&r, 1, u));
        let twice = self_dual_involution(&self_dual_involution(&s).unwrap()).unwrap();
        prop_assert_eq!(twice.normalised().unwrap(), s.normalised().unwrap());
    }

    #[test]
    fn qme_evaluations_agree(cs in proptest::collection::vec(-2i64..3, 6)) {
        let y = minus_two_line();
        let rdr = right_de_rham(&y, &RightConnectionData::unit_volume()).unwrap();
        let r = rdr.pa.ring();
        let x = r.var(0);
        let bv = r.mul(&r.var(rdr.pa.p(0)), &r.var(rdr.pa.p(1)));
        let basis = [x.clone(), r.pow(&x, 2), bv.clone(), r.mul(&x, &bv), r.mul(&r.pow(&x, 2), &bv), r.pow(&x, 3)];
        let combo = |k: usize| basis.iter().zip(&cs).skip(k).fold(Poly::zero(), |acc, (b, &c)| acc.add(&b.scale(&q(c))));
        let el = QuantisationElement::new(&rdr, 3, BTreeMap::from([(1, combo(0)), (2, combo(2))])).unwrap();
        prop_assert!(qme_check(&rdr, &el).is_ok());
    }
}
