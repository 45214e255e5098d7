use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::constructions::{chevalley_eilenberg, classifying_model, LieAlgebraData};
use crate::geometry::ManifoldModel;
use crate::graded_core::{cohomology_all, q, Matrix, Rational, TriDegree};
use crate::superalgebra::{Derivation, Generator, Poly, Ring};

fn plane_action() -> (ManifoldModel, Vec<Derivation>) {
    let m = ManifoldModel::affine(2);
    let r = m.ring().clone();
    let d = |images: Vec<Poly>| Derivation::new(&r, TriDegree::ZERO, images).unwrap();
    let act = vec![
        d(vec![Poly::one(), Poly::zero()]),
        d(vec![Poly::zero(), r.var(0)]),
        d(vec![Poly::zero(), Poly::one()]),
    ];
    (m, act)
}

#[test]
fn constant_cosimplicial_algebra() {
    let ring = Ring::new(vec![Generator::new("y", TriDegree::ZERO)]).unwrap();
    let a = CosimplicialAlgebra::constant(&ring, 3);
    a.verify().unwrap();
    let n = conormalize(&a, 3).unwrap();
    assert_eq!(n.dim(0), 4);
    for m in 1..=3 {
        assert_eq!(n.dim(m), 0);
    }
    let d = dstar(&a).unwrap();
    assert_eq!(d.ring(), &ring);
    assert!(!d.has_q());
}

#[test]
fn broken_coface_table_is_rejected() {
    let a = nerve(&NerveData::at_point(LieAlgebraData::abelian(1))).unwrap();
    let levels: Vec<Ring> = (0..=a.top()).map(|m| a.level(m).clone()).collect();
    let mut cofaces: Vec<Vec<Vec<Poly>>> =
        (1..=a.top()).map(|m| (0..=m).map(|i| a.coface_images(m, i).to_vec()).collect()).collect();
    let codeg: Vec<Vec<Vec<Poly>>> =
        (1..=a.top()).map(|m| (0..m).map(|j| a.codegeneracy_images(m, j).to_vec()).collect()).collect();
    assert!(CosimplicialAlgebra::new(levels.clone(), cofaces.clone(), codeg.clone()).is_ok());
    cofaces[1].swap(0, 2);
    let err = CosimplicialAlgebra::new(levels, cofaces, codeg).unwrap_err();
    assert!(matches!(err, SimplicialError::CosimplicialIdentityViolation(_)), "{err}");
}

#[test]
fn abelian_line_nerve() {
    let a = nerve(&NerveData::at_point(LieAlgebraData::abelian(1))).unwrap();
    let r2 = a.level(2);
    let t = a.level(1).var(0);
    assert_eq!(a.coface(2, 1, &t), r2.var(0).add(&r2.var(1)));
    assert_eq!(a.coface(2, 0, &t), r2.var(1));
    assert_eq!(a.coface(2, 2, &t), r2.var(0));
    let n = conormalize(&a, 3).unwrap();
    // t, t², t³ are normalized; only the primitive t is a cocycle.
    assert_eq!(n.dim(1), 3);
    let h = cohomology_all(&n);
    assert_eq!(h.dimension(0), Some(1));
    assert_eq!(h.dimension(1), Some(1));
    let d = dstar(&a).unwrap();
    assert_eq!(d.ring().len(), 1);
    assert_eq!(d.ring().gen(0).degree, TriDegree::cochain(1));
    assert!(!d.has_q());
}

#[test]
fn heisenberg_bch_terminates() {
    let g = LieAlgebraData::heisenberg();
    let data = NerveData::at_point(g.clone());
    let r = data.level_ring(2);
    let (x, y) = (data.block(&r, 1), data.block(&r, 2));
    assert_eq!(bch(&g, &r, &x, &y, 4), bch(&g, &r, &x, &y, 2));
    let z = &bch(&g, &r, &x, &y, 4)[2];
    let want = x[2].add(&y[2]).add(&r.mul(&x[0], &y[1]).sub(&r.mul(&x[1], &y[0])).scale(&Rational::new(1.into(), 2.into())));
    assert_eq!(z, &want);
    assert_eq!(lower_central_dims(&g), vec![3, 1, 0]);
    nerve(&data).unwrap();
}

#[test]
fn non_nilpotent_algebras_are_rejected() {
    for g in [LieAlgebraData::so3(), LieAlgebraData::nonabelian2()] {
        let err = nerve(&NerveData::at_point(g)).unwrap_err();
        assert!(matches!(err, SimplicialError::NotNilpotent(_)), "{err}");
    }
}

fn assert_matches_ce(data: &NerveData) {
    let a = nerve(data).unwrap();
    let d = dstar(&a).unwrap();
    let ce = chevalley_eilenberg(&data.g, &data.m, &data.action).unwrap();
    assert_eq!(d.ring(), ce.ring(), "{}", data.g.name);
    assert_eq!(d.q_images(), ce.algebra.q_images(), "{}", data.g.name);
}

#[test]
fn dstar_of_nerve_is_chevalley_eilenberg() {
    assert_matches_ce(&NerveData::at_point(LieAlgebraData::heisenberg()));
    assert_matches_ce(&NerveData::at_point(LieAlgebraData::abelian(2)));
    let (m, act) = plane_action();
    assert_matches_ce(&NerveData::new(LieAlgebraData::heisenberg(), m, act));
    let d = dstar(&nerve(&NerveData::at_point(LieAlgebraData::heisenberg())).unwrap()).unwrap();
    let ce = classifying_model(&LieAlgebraData::heisenberg()).unwrap();
    assert_eq!(d.q_images(), ce.algebra.q_images());
}

/// `Φ(Q a) = Q Φ(a)` for products of edge coordinates through level three.
#[test]
fn normal_form_is_a_chain_map() {
    let (m, act) = plane_action();
    for data in [NerveData::at_point(LieAlgebraData::heisenberg()), NerveData::new(LieAlgebraData::heisenberg(), m, act)] {
        let a = nerve(&data).unwrap();
        let d = dstar(&a).unwrap();
        let k0 = data.m.ring().len();
        let mut samples: Vec<(usize, Poly)> = Vec::new();
        let r1 = a.level(1);
        let r2 = a.level(2);
        for i in 0..3 {
            samples.push((1, r1.var(k0 + i)));
            for j in 0..3 {
                samples.push((1, r1.mul(&r1.var(k0 + i), &r1.var(k0 + j))));
                samples.push((2, r2.mul(&r2.var(k0 + i), &r2.var(k0 + 3 + j))));
                for v in 0..k0 {
                    let p = r2.mul(&r2.var(v), &r2.mul(&r2.var(k0 + i), &r2.var(k0 + 3 + j)));
                    samples.push((2, p));
                }
            }
        }
        for (m, p) in samples {
            let order: Vec<usize> = (1..=m).collect();
            let lhs = dstar_normal_form(&a, m + 1, &a.q(m + 1, &p), &(1..=m + 1).collect::<Vec<_>>()).unwrap();
            let rhs = d.q(&dstar_normal_form(&a, m, &p, &order).unwrap());
            assert_eq!(lhs, rhs, "{}", a.level(m).format(&p));
        }
    }
}

#[test]
fn conormalized_heisenberg_nerve() {
    let a = nerve(&NerveData::at_point(LieAlgebraData::heisenberg())).unwrap();
    let n = conormalize(&a, 2).unwrap();
    n.check_square_zero().unwrap();
    // N¹ in degree ≤ 2 is every nonconstant polynomial in three variables.
    assert_eq!(n.dim(1), 9);
    // N² in degree ≤ 2: products of one coordinate from each block.
    assert_eq!(n.dim(2), 9);
    assert_eq!(n.dim(3), 0);
}

fn descent_oracle(g: &LieAlgebraData, samples: &[Vec<i64>]) -> (Vec<(usize, usize)>, Vec<Vec<Rational>>) {
    let n = g.dim();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let idx = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let mut rows = Vec::new();
    for a in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut row = vec![q(0); pairs.len()];
                for k in 0..n {
                    row[idx(k, j)] += g.c(a, k, i).clone();
                    row[idx(i, k)] += g.c(a, k, j).clone();
                }
                rows.push(row);
            }
        }
    }
    for x in samples {
        // A = exp(-ad_x) as a rational matrix.
        let mut ad = Matrix::zeros(n, n);
        for k in 0..n {
            for j in 0..n {
                let mut v = q(0);
                for (i, xi) in x.iter().enumerate() {
                    v -= g.c(i, j, k) * q(*xi);
                }
                ad.set(k, j, v);
            }
        }
        let mut a = Matrix::identity(n);
        let mut term = Matrix::identity(n);
        for p in 1..=n {
            term = ad.mul(&term).scale(&Rational::new(1.into(), (p as i64).into()));
            a = a.add(&term);
        }
        // (A C Aᵀ)^{ij} - C^{ij} = 0, with C^{kl} = C^{lk}.
        for i in 0..n {
            for j in i..n {
                let mut row = vec![q(0); pairs.len()];
                for k in 0..n {
                    for l in 0..n {
                        row[idx(k, l)] += a.get(i, k) * a.get(j, l);
                    }
                }
                row[idx(i, j)] -= q(1);
                rows.push(row);
            }
        }
    }
    (pairs, rows)
}

#[test]
fn descent_matches_brute_force() {
    let samples = vec![vec![1, 0, 0], vec![0, 1, 0], vec![2, -1, 3]];
    for g in [LieAlgebraData::heisenberg(), LieAlgebraData::abelian(3)] {
        let rep = descent_2shifted(&NerveData::at_point(g.clone())).unwrap();
        assert!(rep.pullbacks_closed);
        let (pairs, rows) = descent_oracle(&g, &samples);
        let oracle_dim = pairs.len() - Matrix::from_rows(rows.clone()).rank();
        assert_eq!(rep.dim(), oracle_dim, "{}", g.name);
        let r = rep.pa0.ring();
        for pi in &rep.equaliser {
            let v: Vec<Rational> = pairs
                .iter()
                .map(|&(i, j)| {
                    let m = r.mul(&r.var(rep.pa0.p(i)), &r.var(rep.pa0.p(j)));
                    let mono = m.terms().next().unwrap().0.clone();
                    pi.pi.poly.coeff(&mono)
                })
                .collect();
            for row in &rows {
                let s: Rational = row.iter().zip(&v).map(|(a, b)| a * b).sum();
                assert_eq!(s, q(0));
            }
        }
    }
}

#[test]
fn descent_examples() {
    let h = descent_2shifted(&NerveData::at_point(LieAlgebraData::heisenberg())).unwrap();
    assert_eq!(h.dim(), 1);
    let r = h.pa0.ring();
    let z2 = r.pow(&r.var(h.pa0.p(2)), 2);
    let pi = &h.equaliser[0].pi.poly;
    assert_eq!(pi.len(), 1);
    assert!(!pi.coeff(z2.terms().next().unwrap().0).is_zero());
    let ab = descent_2shifted(&NerveData::at_point(LieAlgebraData::abelian(2))).unwrap();
    assert_eq!(ab.dim(), 3);
    let triv = descent_2shifted(&NerveData::at_point(LieAlgebraData::abelian(0))).unwrap();
    assert_eq!(triv.dim(), 0);
    let (m, act) = plane_action();
    let rep = descent_2shifted(&NerveData::new(LieAlgebraData::heisenberg(), m, act)).unwrap();
    assert!(rep.pullbacks_closed);
    assert_eq!(rep.dim(), rep.level0.len());
}

use num_traits::Zero;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_forms_are_confluent(seed in any::<u64>(), coeffs in proptest::collection::vec(-3i64..=3, 12)) {
        let a = nerve(&NerveData::at_point(LieAlgebraData::heisenberg())).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for m in 2..=3 {
            let r = a.level(m);
            let mut p = Poly::zero();
            for (n, c) in coeffs.iter().enumerate() {
                let mut term = Poly::constant(q(*c));
                for b in 0..m {
                    let v = b * 3 + (n + b * b) % 3;
                    term = r.mul(&term, &r.var(v));
                }
                if n % 4 == 0 {
                    term = r.mul(&term, &r.var(n % (3 * m)));
                }
                p = p.add(&term);
            }
            let mut o1: Vec<usize> = (1..=m).collect();
            let mut o2 = o1.clone();
            o1.shuffle(&mut rng);
            o2.shuffle(&mut rng);
            prop_assert_eq!(dstar_normal_form(&a, m, &p, &o1).unwrap(), dstar_normal_form(&a, m, &p, &o2).unwrap());
        }
    }

    #[test]
    fn abelian_nerves_satisfy_identities(n in 1usize..=3) {
        let a = nerve(&NerveData::at_point(LieAlgebraData::abelian(n))).unwrap();
        prop_assert!(a.verify().is_ok());
        let d = dstar(&a).unwrap();
        prop_assert!(!d.has_q());
    }
}
