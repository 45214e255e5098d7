use crate::graded_core::TriDegree;
use crate::superalgebra::{FreeSuperCDGA, Generator, Poly, Ring};

use super::{CosimplicialAlgebra, Result, SimplicialError};

/// Width of the edge blocks when `A^m = A⁰ ⊗ Sym(V^{⊕m})` with `σʲ` deleting block `j + 1`.
fn block_width(a: &CosimplicialAlgebra) -> Result<usize> {
    let base = a.level(0);
    let k0 = base.len();
    let d = if a.top() == 0 { 0 } else { a.level(1).len() - k0 };
    for m in 1..=a.top() {
        let ring = a.level(m);
        if !base.is_prefix_of(ring) || ring.len() != k0 + m * d {
            return Err(SimplicialError::NotNerveType(format!("level {m} is not A⁰ with {m} edge blocks")));
        }
        let src = a.level(m - 1);
        for j in 0..m {
            let imgs = a.codegeneracy_images(m, j);
            for (g, img) in imgs.iter().enumerate() {
                let want = if g < k0 {
                    src.var(g)
                } else {
                    let (k, i) = ((g - k0) / d + 1, (g - k0) % d);
                    match k.cmp(&(j + 1)) {
                        std::cmp::Ordering::Less => src.var(k0 + (k - 1) * d + i),
                        std::cmp::Ordering::Equal => Poly::zero(),
                        std::cmp::Ordering::Greater => src.var(k0 + (k - 2) * d + i),
                    }
                };
                if *img != want {
                    return Err(SimplicialError::NotNerveType(format!("σ{j} at level {m} does not delete block {}", j + 1)));
                }
            }
        }
    }
    Ok(d)
}

/// `A⁰` followed by one generator `e_i` of cochain degree one above each edge coordinate.
fn dstar_ring(a: &CosimplicialAlgebra, d: usize) -> Ring {
    let base = a.level(0);
    let k0 = base.len();
    let taken: Vec<&str> = base.gens().iter().map(|g| g.name.as_str()).collect();
    let mut gens = base.gens().to_vec();
    for i in 0..d {
        let mut name = format!("e{}", i + 1);
        while taken.contains(&name.as_str()) {
            name.push('_');
        }
        gens.push(Generator::new(name, a.level(1).gen(k0 + i).degree + TriDegree::cochain(1)));
    }
    Ring::new(gens).expect("dstar generator names are distinct")
}

fn normal_form(a: &CosimplicialAlgebra, d: usize, target: &Ring, m: usize, p: &Poly, order: &[usize]) -> Poly {
    let ring = a.level(m);
    let k0 = a.level(0).len();
    let mut parts: Vec<(Poly, Vec<usize>)> = vec![(p.clone(), vec![0; m + 1])];
    for &j in order {
        let block = |v: usize| v >= k0 + (j - 1) * d && v < k0 + j * d;
        let mut next = Vec::new();
        for (q, word) in &parts {
            for i in 0..d {
                let c = ring.kill(&ring.deriv_left(q, k0 + (j - 1) * d + i), block);
                if !c.is_zero() {
                    let mut w = word.clone();
                    w[j] = i;
                    next.push((c, w));
                }
            }
        }
        parts = next;
    }
    let mut out = Poly::zero();
    for (c, word) in parts {
        let mut term = c;
        for &i in &word[1..] {
            term = target.mul(&term, &target.var(k0 + i));
        }
        out = out.add(&term);
    }
    out
}

/// The class in `D*A` of `p ∈ N^mA`, extracting the edge blocks in the given order.
///
/// A monomial survives only if it is linear in every edge block, and then becomes
/// the cup product of the edge generators in block order.
pub fn dstar_normal_form(a: &CosimplicialAlgebra, m: usize, p: &Poly, order: &[usize]) -> Result<Poly> {
    let d = block_width(a)?;
    if m > a.top() {
        return Err(SimplicialError::MissingLevel(m));
    }
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=m).collect::<Vec<_>>() {
        return Err(SimplicialError::NotNerveType(format!("{order:?} is not an ordering of the blocks 1..={m}")));
    }
    Ok(normal_form(a, d, &dstar_ring(a, d), m, p, order))
}

/// `D*A` for a cosimplicial algebra of nerve type, as the free algebra on `A⁰` and the normalized
/// edge generators, with `Q` induced by `Σ (-1)ⁱ ∂ⁱ`.
pub fn dstar(a: &CosimplicialAlgebra) -> Result<FreeSuperCDGA> {
    let d = block_width(a)?;
    let ring = dstar_ring(a, d);
    let k0 = a.level(0).len();
    if a.top() == 0 {
        return Ok(FreeSuperCDGA::trivial(&ring)?);
    }
    if d > 0 && a.top() < 2 {
        return Err(SimplicialError::MissingLevel(2));
    }
    let mut q = Vec::with_capacity(ring.len());
    for v in 0..k0 {
        q.push(normal_form(a, d, &ring, 1, &a.q(1, &a.level(0).var(v)), &[1]));
    }
    for i in 0..d {
        q.push(normal_form(a, d, &ring, 2, &a.q(2, &a.level(1).var(k0 + i)), &[1, 2]));
    }
    Ok(FreeSuperCDGA::new(&ring, q, Vec::new())?)
}
