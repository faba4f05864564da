//! Seeded generators for structured test inputs.
//!
//! Every generator is a pure function of the [`SeededRng`] state, so a seed
//! reproduces its inputs exactly on every platform.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::bridge::{self, CommutingTuple};
use crate::diagrams::{self, DiagMorphism, Diagram};
use crate::field::{Field, Scalar};
use crate::homotopy::{ChainComplex, ChainMap, DiagramHost};
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly, PolyRing};
use crate::polymatrix::PolyMatrix;
use crate::polymods::ModulePresentation;
use crate::smallcat::FinPresCat;

/// Seeded source for every generator in this module.
///
/// Backed by SplitMix64 (Steele, Lea, Flood 2014): the 64-bit state advances
/// by `0x9E3779B97F4A7C15` and each output is the state passed through two
/// xor-shift-multiply rounds. The seed is the initial state.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: SplitMix64,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng { inner: SplitMix64::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `0..bound` (`bound > 0`).
    pub fn below(&mut self, bound: u64) -> u64 {
        self.inner.gen_range(0..bound)
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.inner.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, numerator: u64, denominator: u64) -> bool {
        self.below(denominator) < numerator
    }

    /// A scalar: uniform residue over `F_p`, small integer in `-bound..=bound` over ℚ.
    pub fn scalar(&mut self, field: Field, bound: i64) -> Scalar {
        match field {
            Field::Prime(p) => field.from_i64(self.below(p) as i64),
            Field::Rationals => field.from_i64(self.range(-bound, bound)),
        }
    }

    pub fn matrix(&mut self, field: Field, rows: usize, cols: usize, bound: i64) -> Matrix {
        Matrix::from_fn(field, rows, cols, |_, _| self.scalar(field, bound))
    }

    /// An invertible matrix: a product of a random unit lower and a random
    /// upper triangular matrix with nonzero diagonal.
    pub fn invertible(&mut self, field: Field, n: usize, bound: i64) -> Matrix {
        let lower = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Greater => self.scalar(field, bound),
            core::cmp::Ordering::Equal => field.one(),
            core::cmp::Ordering::Less => field.zero(),
        });
        let upper = Matrix::from_fn(field, n, n, |i, j| match i.cmp(&j) {
            core::cmp::Ordering::Less => self.scalar(field, bound),
            core::cmp::Ordering::Equal => self.nonzero_scalar(field, bound),
            core::cmp::Ordering::Greater => field.zero(),
        });
        lower.mul(&upper)
    }

    pub fn nonzero_scalar(&mut self, field: Field, bound: i64) -> Scalar {
        loop {
            let s = self.scalar(field, bound.max(1));
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        items.shuffle(&mut self.inner);
    }

    pub fn subset_indices(&mut self, n: usize) -> Vec<usize> {
        (0..n).filter(|_| self.chance(1, 2)).collect()
    }
}

/// Multiplication matrices on a random staircase (an order ideal of
/// monomials) in `n` variables with at most `size` elements.
fn staircase_action(rng: &mut SeededRng, field: Field, n: usize, size: usize) -> Vec<Matrix> {
    let mut cells: Vec<Vec<u32>> = vec![vec![0; n]];
    while cells.len() < size {
        // extend by a monomial whose lower neighbours are already present
        let base = rng.pick(&cells).clone();
        let j = rng.below(n as u64) as usize;
        let mut next = base;
        next[j] += 1;
        let closed = (0..n).all(|k| {
            next[k] == 0 || {
                let mut lower = next.clone();
                lower[k] -= 1;
                cells.contains(&lower)
            }
        });
        if closed && !cells.contains(&next) {
            cells.push(next);
        } else if rng.chance(1, 4) {
            break;
        }
    }
    let d = cells.len();
    (0..n)
        .map(|j| {
            let mut m = Matrix::zeros(field, d, d);
            for (c, cell) in cells.iter().enumerate() {
                let mut up = cell.clone();
                up[j] += 1;
                if let Some(r) = cells.iter().position(|x| *x == up) {
                    m.set(r, c, field.one());
                }
            }
            m
        })
        .collect()
}

/// A commuting tuple of `n` matrices of size at most `max_dim`, built as a
/// direct sum of blocks `λ·I + N` with `N` a staircase action or a
/// polynomial in one matrix, then conjugated by a random invertible matrix.
pub fn commuting_tuple(rng: &mut SeededRng, field: Field, n: usize, max_dim: usize) -> CommutingTuple {
    let target = rng.below(max_dim as u64 + 1) as usize;
    let eigen: Vec<Scalar> = (0..2).map(|_| rng.scalar(field, 3)).collect();
    let mut blocks: Vec<Vec<Matrix>> = Vec::new();
    let mut used = 0;
    while used < target {
        let room = target - used;
        let size = 1 + rng.below(room as u64) as usize;
        let block = match rng.below(3) {
            0 => staircase_action(rng, field, n, size),
            1 => {
                let a = rng.matrix(field, size, size, 2);
                (0..n)
                    .map(|_| {
                        let (c0, c1, c2) = (rng.scalar(field, 2), rng.scalar(field, 2), rng.scalar(field, 1));
                        let id = Matrix::identity(field, size);
                        id.scale(&c0).add(&a.scale(&c1)).add(&a.mul(&a).scale(&c2))
                    })
                    .collect()
            }
            _ => {
                let mats = staircase_action(rng, field, n, size);
                mats.into_iter().map(|m| if rng.chance(1, 2) { m } else { m.scale(&rng.scalar(field, 2)) }).collect()
            }
        };
        let size = block[0].rows();
        let shifted = block
            .into_iter()
            .map(|m| m.add(&Matrix::identity(field, size).scale(rng.pick(&eigen))))
            .collect();
        blocks.push(shifted);
        used += size;
    }
    let mut mats = vec![Matrix::zeros(field, 0, 0); n];
    for b in blocks {
        for (j, m) in b.into_iter().enumerate() {
            mats[j] = mats[j].block_diag(&m);
        }
    }
    let d = mats[0].rows();
    let p = rng.invertible(field, d, 2);
    let pinv = p.inverse().expect("invertible");
    let mats = mats.into_iter().map(|m| p.mul(&m).mul(&pinv)).collect();
    CommutingTuple::new(field, d, mats).expect("blocks commute")
}

pub fn poly(rng: &mut SeededRng, ring: PolyRing, max_deg: u32, max_terms: usize) -> Poly {
    let terms = rng.below(max_terms as u64 + 1) as usize;
    let mut out = Poly::zero(ring);
    for _ in 0..terms {
        let mut exps = vec![0u32; ring.nvars];
        let mut budget = rng.below(max_deg as u64 + 1) as u32;
        for e in exps.iter_mut() {
            let take = rng.below(budget as u64 + 1) as u32;
            *e = take;
            budget -= take;
        }
        rng.shuffle(&mut exps);
        out = out.add(&Poly::monomial(ring, Monomial::new(exps), rng.scalar(ring.field, 4)));
    }
    out
}

pub fn monic_univariate(rng: &mut SeededRng, ring: PolyRing, degree: u32) -> Poly {
    let mut f = Poly::monomial(ring, Monomial::new(vec![degree]), ring.field.one());
    for e in 0..degree {
        f = f.add(&Poly::monomial(ring, Monomial::new(vec![e]), rng.scalar(ring.field, 3)));
    }
    f
}

/// Random unimodular `n × n` polynomial matrix: product of elementary
/// operations with constant or linear multipliers.
pub fn unimodular(rng: &mut SeededRng, ring: PolyRing, n: usize, steps: usize) -> PolyMatrix {
    let mut m = PolyMatrix::identity(ring, n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let a = rng.below(n as u64) as usize;
        let mut b = rng.below(n as u64 - 1) as usize;
        if b >= a {
            b += 1;
        }
        let f = poly(rng, ring, 1, 2);
        m.add_row_multiple(a, b, &f);
    }
    m
}

/// A finite-dimensional presentation of total dimension at most `max_dim`.
///
/// One variable: `k[T]/(f₁) ⊕ …` with monic `fᵢ`, hidden behind unimodular
/// changes of generators and relations. Several variables: `Φ` of a random
/// tuple with generators mixed by an invertible constant matrix and extra
/// redundant relations.
pub fn fd_presentation(rng: &mut SeededRng, field: Field, n: usize, max_dim: usize) -> ModulePresentation {
    if n == 1 {
        let ring = PolyRing::univariate(field);
        let mut degrees = Vec::new();
        let mut left = rng.below(max_dim as u64 + 1) as u32;
        while left > 0 {
            let d = 1 + rng.below(left as u64) as u32;
            degrees.push(d);
            left -= d;
        }
        let g = degrees.len();
        if g == 0 {
            return ModulePresentation::cyclic(ring, &[Poly::one(ring)]);
        }
        let diag = PolyMatrix::from_fn(ring, g, g, |i, j| {
            if i == j {
                Poly::one(ring)
            } else {
                Poly::zero(ring)
            }
        });
        let mut rels = diag;
        for (i, &d) in degrees.iter().enumerate() {
            rels.set(i, i, monic_univariate(rng, ring, d));
        }
        let u = unimodular(rng, ring, g, 2 * g);
        let v = unimodular(rng, ring, g, 2 * g).transpose();
        return ModulePresentation::new(g, u.mul(&rels).mul(&v)).expect("square");
    }
    let x = commuting_tuple(rng, field, n, max_dim);
    let p = bridge::phi(&x);
    let ring = *p.ring();
    let g = p.gens();
    let change = PolyMatrix::from_scalar_matrix(ring, &rng.invertible(field, g, 2));
    let mut rels = change.mul(p.rels());
    if rels.cols() > 1 {
        let extra = PolyMatrix::from_fn(ring, rels.cols(), 1, |_, _| poly(rng, ring, 1, 1));
        rels = rels.hstack(&rels.mul(&extra));
    }
    ModulePresentation::new(g, rels).expect("shape")
}

/// Polynomial matrix up to `max_side × max_side` with entries of degree at
/// most `max_deg`; sometimes a product of two thinner matrices so that the
/// rank drops.
pub fn snf_matrix(rng: &mut SeededRng, field: Field, max_side: usize, max_deg: u32) -> PolyMatrix {
    let ring = PolyRing::univariate(field);
    let rows = 1 + rng.below(max_side as u64) as usize;
    let cols = 1 + rng.below(max_side as u64) as usize;
    if rng.chance(1, 3) && rows.min(cols) > 1 {
        let inner = 1 + rng.below(rows.min(cols) as u64 - 1) as usize;
        let half = (max_deg / 2).max(1);
        let a = PolyMatrix::from_fn(ring, rows, inner, |_, _| poly(rng, ring, half, 2));
        let b = PolyMatrix::from_fn(ring, inner, cols, |_, _| poly(rng, ring, max_deg - half, 2));
        return a.mul(&b);
    }
    PolyMatrix::from_fn(ring, rows, cols, |_, _| poly(rng, ring, max_deg, 3))
}

/// A short list of polynomials in `nvars ≤ 3` variables for Buchberger runs.
pub fn ideal(rng: &mut SeededRng, ring: PolyRing, max_gens: usize, max_deg: u32) -> Vec<Poly> {
    let count = 1 + rng.below(max_gens as u64) as usize;
    (0..count).map(|_| poly(rng, ring, max_deg, 3)).collect()
}

/// A random element of a hom space (uniform coefficients on a basis).
pub fn hom_element(rng: &mut SeededRng, x: &Diagram, y: &Diagram) -> DiagMorphism {
    let basis = diagrams::hom_space(x, y).expect("compatible diagrams");
    let mut f = DiagMorphism::zero(x, y).expect("compatible diagrams");
    for b in &basis {
        f = f.add(&b.scale(&rng.scalar(x.field(), 3))).expect("parallel");
    }
    f
}

/// A bounded complex of `Λ`-diagrams with at most `max_len` terms of
/// dimension at most `max_dim`, lowest degree `lo`. Each differential is a
/// random natural map into the kernel of the one below it; some terms reuse
/// a summand of that kernel so that differentials are often nonzero.
pub fn lambda_complex(rng: &mut SeededRng, field: Field, lo: i64, max_len: usize, max_dim: usize) -> ChainComplex<DiagramHost> {
    let host = DiagramHost::new(FinPresCat::make_loop(1).expect("n = 1"), field);
    let len = rng.below(max_len as u64 + 1) as usize;
    let mut objects: Vec<Diagram> = Vec::new();
    let mut diffs: Vec<DiagMorphism> = Vec::new();
    for k in 0..len {
        let x = if k > 0 && rng.chance(1, 2) {
            // contains a copy of the cycles below, so the next differential can hit them
            let kernel = match diffs.last() {
                Some(d) => diagrams::kernel_cokernel(d).expect("natural").kernel,
                None => objects[k - 1].clone(),
            };
            let extra = commuting_tuple(rng, field, 1, max_dim.saturating_sub(kernel.total_dim()).min(2)).to_diagram();
            if kernel.total_dim() <= max_dim {
                kernel.direct_sum(&extra).expect("same shape")
            } else {
                extra
            }
        } else {
            commuting_tuple(rng, field, 1, max_dim).to_diagram()
        };
        if k > 0 {
            let below = objects[k - 1].clone();
            let d = match diffs.last() {
                Some(prev) => {
                    let kc = diagrams::kernel_cokernel(prev).expect("natural");
                    kc.inclusion.compose(&hom_element(rng, &x, &kc.kernel)).expect("composable")
                }
                None => hom_element(rng, &x, &below),
            };
            diffs.push(d);
        }
        objects.push(x);
    }
    ChainComplex::new(host, lo, objects, diffs).expect("d∘d = 0 by construction")
}

/// A random chain endomorphism-like map out of `c`: identity multiples plus
/// a null-homotopic part `dh + hd`, a projection off a contractible summand,
/// or a zero map.
pub fn chain_map(rng: &mut SeededRng, c: &ChainComplex<DiagramHost>) -> ChainMap<DiagramHost> {
    let host = c.host().clone();
    let field = host.field;
    match rng.below(3) {
        0 => {
            let s = rng.scalar(field, 2);
            let hs: Vec<DiagMorphism> = (c.lo()..=c.hi())
                .map(|i| hom_element(rng, &c.object(i), &c.object(i + 1)))
                .collect();
            let h = |i: i64| -> DiagMorphism {
                if i >= c.lo() && i <= c.hi() {
                    hs[(i - c.lo()) as usize].clone()
                } else {
                    DiagMorphism::zero(&c.object(i), &c.object(i + 1)).expect("same host")
                }
            };
            let comps = (c.lo()..=c.hi())
                .map(|i| {
                    let id = DiagMorphism::identity(&c.object(i)).scale(&s);
                    let dh = c.diff(i + 1).compose(&h(i)).expect("composable");
                    let hd = h(i - 1).compose(&c.diff(i)).expect("composable");
                    id.add(&dh).and_then(|m| m.add(&hd)).expect("parallel")
                })
                .collect();
            ChainMap::new(c.clone(), c.clone(), c.lo(), comps).expect("homotopic to a multiple of the identity")
        }
        1 => {
            let x = commuting_tuple(rng, field, 1, 2).to_diagram();
            let id = DiagMorphism::identity(&x);
            let degree = c.lo() + rng.below(c.objects().len() as u64 + 1) as i64;
            let contractible = ChainComplex::new(host.clone(), degree, vec![x.clone(), x], vec![id]).expect("d∘d = 0");
            let sum = c.direct_sum(&contractible).expect("same host");
            let comps = (sum.lo()..=sum.hi())
                .map(|i| {
                    let proj_c = DiagMorphism::identity(&c.object(i));
                    let zero = DiagMorphism::zero(&contractible.object(i), &c.object(i)).expect("same host");
                    hstack_morphisms(&proj_c, &zero)
                })
                .collect();
            ChainMap::new(sum.clone(), c.clone(), sum.lo(), comps).expect("projection is a chain map")
        }
        _ => ChainMap::zero(c, c),
    }
}

fn hstack_morphisms(a: &DiagMorphism, b: &DiagMorphism) -> DiagMorphism {
    let src = a.src().direct_sum(b.src()).expect("same host");
    let comps = a.comps().iter().zip(b.comps()).map(|(x, y)| x.hstack(y)).collect();
    DiagMorphism::new(src, a.dst().clone(), comps).expect("natural")
}

/// A diagram over `Λ × [1]`: two `Λ`-diagrams and a natural map between them.
pub fn lambda_arrow_diagram(rng: &mut SeededRng, field: Field, max_dim: usize) -> Diagram {
    let lambda = FinPresCat::make_loop(1).expect("n = 1");
    let x = commuting_tuple(rng, field, 1, max_dim).to_diagram();
    let y = commuting_tuple(rng, field, 1, max_dim).to_diagram();
    let f = hom_element(rng, &x, &y);
    let arrow = FinPresCat::arrow_category();
    let c = diagrams::CurriedDiagram { left: lambda, right: arrow, family: vec![x, y], maps: vec![f] };
    diagrams::uncurry(&c).expect("valid by construction")
}

/// A diagram over `Λ × Λ`: a commuting pair on one space.
pub fn lambda_square_diagram(rng: &mut SeededRng, field: Field, max_dim: usize) -> Diagram {
    let lambda = FinPresCat::make_loop(1).expect("n = 1");
    let shape = FinPresCat::product(&lambda, &lambda);
    let x = commuting_tuple(rng, field, 2, max_dim);
    Diagram::new(shape, field, vec![x.dim()], x.mats().to_vec()).expect("commuting pair")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream() {
        // first outputs for seed 1234567 of the reference SplitMix64
        let mut r = SeededRng::new(1234567);
        assert_eq!(r.next_u64(), 6457827717110365317);
        assert_eq!(r.next_u64(), 3203168211198807973);
    }

    #[test]
    fn invertible_matrices_are_invertible() {
        let mut r = SeededRng::new(7);
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(5)] {
            for n in 0..5 {
                assert!(r.invertible(field, n, 3).is_invertible());
            }
        }
    }

    #[test]
    fn generated_inputs_are_valid() {
        let mut r = SeededRng::new(11);
        let f = Field::Prime(101);
        for _ in 0..20 {
            for n in 1..=2 {
                let x = commuting_tuple(&mut r, f, n, 6);
                assert!(x.dim() <= 6);
                let p = fd_presentation(&mut r, f, n, 4);
                assert!(crate::polymods::basis_as_vector_space(&p).unwrap().finite().is_ok());
            }
            let c = lambda_complex(&mut r, f, 0, 4, 4);
            chain_map(&mut r, &c);
            lambda_arrow_diagram(&mut r, f, 3);
            lambda_square_diagram(&mut r, f, 3);
        }
    }
}
