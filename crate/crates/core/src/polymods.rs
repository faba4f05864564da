//! Finitely presented modules over `k[T₁..Tₙ]`.
//!
//! A presentation is a relation matrix whose columns generate the relations
//! among `gens` generators; the module is the cokernel of that matrix.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{shape, AlgebraError, Result};
use crate::field::Scalar;
use crate::groebner::{self, column_basis, free_resolution, FreeResolution, GroebnerBasis, PolyVec};
use crate::matrix::Matrix;
use crate::poly::{Monomial, Poly, PolyRing};
use crate::polymatrix::PolyMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModulePresentation {
    ring: PolyRing,
    gens: usize,
    rels: PolyMatrix,
}

impl ModulePresentation {
    /// `gens` must equal the number of rows of `rels`.
    pub fn new(gens: usize, rels: PolyMatrix) -> Result<Self> {
        if rels.rows() != gens {
            return Err(shape(format!("{} generators but {} relation rows", gens, rels.rows())));
        }
        Ok(ModulePresentation { ring: *rels.ring(), gens, rels })
    }

    pub fn free(ring: PolyRing, gens: usize) -> Self {
        ModulePresentation { ring, gens, rels: PolyMatrix::zeros(ring, gens, 0) }
    }

    pub fn zero(ring: PolyRing) -> Self {
        ModulePresentation::free(ring, 0)
    }

    /// `k[T]/(f)` style cyclic module with the given relations.
    pub fn cyclic(ring: PolyRing, relations: &[Poly]) -> Self {
        let rels = PolyMatrix::from_fn(ring, 1, relations.len(), |_, j| relations[j].clone());
        ModulePresentation { ring, gens: 1, rels }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn rels(&self) -> &PolyMatrix {
        &self.rels
    }

    pub fn direct_sum(&self, other: &ModulePresentation) -> Result<ModulePresentation> {
        self.ring.check_same(&other.ring)?;
        Ok(ModulePresentation {
            ring: self.ring,
            gens: self.gens + other.gens,
            rels: self.rels.block_diag(&other.rels),
        })
    }

    /// Gröbner basis of the relation submodule of `k[T₁..Tₙ]^gens`.
    pub fn relation_basis(&self) -> Result<GroebnerBasis> {
        column_basis(&self.rels)
    }

    /// Whether the presented module is zero (every generator is a relation).
    pub fn is_zero_module(&self) -> Result<bool> {
        let gb = self.relation_basis()?;
        Ok((0..self.gens).all(|pos| gb.leading_monomials_at(pos).iter().any(|m| m.is_one())))
    }
}

/// A homomorphism given by the images of the source generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMorphism {
    src: ModulePresentation,
    dst: ModulePresentation,
    matrix: PolyMatrix,
}

impl ModMorphism {
    /// Certifies that every source relation maps into the target relations.
    pub fn new(src: ModulePresentation, dst: ModulePresentation, matrix: PolyMatrix) -> Result<Self> {
        let f = ModMorphism::new_unchecked(src, dst, matrix)?;
        let image = f.matrix.mul(&f.src.rels);
        if !f.dst.relation_basis()?.contains_columns(&image)? {
            return Err(AlgebraError::InvalidMorphism("a relation of the source is not sent to a relation".into()));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(src: ModulePresentation, dst: ModulePresentation, matrix: PolyMatrix) -> Result<Self> {
        src.ring.check_same(&dst.ring)?;
        src.ring.check_same(matrix.ring())?;
        if matrix.shape() != (dst.gens, src.gens) {
            return Err(shape(format!(
                "morphism matrix {:?} for {} -> {} generators",
                matrix.shape(),
                src.gens,
                dst.gens
            )));
        }
        Ok(ModMorphism { src, dst, matrix })
    }

    pub fn identity(m: &ModulePresentation) -> Self {
        ModMorphism { src: m.clone(), dst: m.clone(), matrix: PolyMatrix::identity(m.ring, m.gens) }
    }

    pub fn zero(src: &ModulePresentation, dst: &ModulePresentation) -> Self {
        ModMorphism {
            src: src.clone(),
            dst: dst.clone(),
            matrix: PolyMatrix::zeros(src.ring, dst.gens, src.gens),
        }
    }

    pub fn src(&self) -> &ModulePresentation {
        &self.src
    }

    pub fn dst(&self) -> &ModulePresentation {
        &self.dst
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModMorphism) -> Result<ModMorphism> {
        if first.dst != self.src {
            return Err(shape("composable morphisms need matching modules"));
        }
        ModMorphism::new_unchecked(first.src.clone(), self.dst.clone(), self.matrix.try_mul(&first.matrix)?)
    }

    pub fn add(&self, other: &ModMorphism) -> Result<ModMorphism> {
        if self.src != other.src || self.dst != other.dst {
            return Err(shape("parallel morphisms required"));
        }
        ModMorphism::new_unchecked(self.src.clone(), self.dst.clone(), self.matrix.try_add(&other.matrix)?)
    }

    pub fn neg(&self) -> ModMorphism {
        ModMorphism { matrix: self.matrix.neg(), ..self.clone() }
    }

    /// Zero as a map of modules, i.e. every image lies in the target relations.
    pub fn is_zero(&self) -> Result<bool> {
        self.dst.relation_basis()?.contains_columns(&self.matrix)
    }

    pub fn equals(&self, other: &ModMorphism) -> Result<bool> {
        self.add(&other.neg())?.is_zero()
    }
}

/// Standard monomials of a finite-dimensional module, a `k`-basis.
#[derive(Debug, Clone)]
pub struct Staircase {
    ring: PolyRing,
    gens: usize,
    gb: GroebnerBasis,
    elements: Vec<(usize, Monomial)>,
}

#[derive(Debug, Clone)]
pub enum VectorSpaceBasis {
    Finite(Staircase),
    InfiniteDimensional,
}

impl VectorSpaceBasis {
    pub fn finite(self) -> Result<Staircase> {
        match self {
            VectorSpaceBasis::Finite(s) => Ok(s),
            VectorSpaceBasis::InfiniteDimensional => Err(AlgebraError::InfiniteDimensional),
        }
    }
}

/// Standard monomials per generator position, ordered by the monomial order
/// and then by generator index.
pub fn basis_as_vector_space(m: &ModulePresentation) -> Result<VectorSpaceBasis> {
    let gb = m.relation_basis()?;
    let n = m.ring.nvars;
    let mut elements = Vec::new();
    for pos in 0..m.gens {
        let leads = gb.leading_monomials_at(pos);
        // a pure power of every variable must be a leading monomial
        let mut bounds = Vec::with_capacity(n);
        for j in 0..n {
            let pure = leads
                .iter()
                .filter(|l| l.exps().iter().enumerate().all(|(k, &e)| k == j || e == 0))
                .map(|l| l.exps()[j])
                .min();
            match pure {
                Some(b) => bounds.push(b),
                None => return Ok(VectorSpaceBasis::InfiniteDimensional),
            }
        }
        let mut exps = vec![0u32; n];
        loop {
            let mono = Monomial::new(exps.clone());
            if !leads.iter().any(|l| l.divides(&mono)) {
                elements.push((pos, mono));
            }
            // odometer over the bounding box
            let mut k = 0;
            while k < n {
                exps[k] += 1;
                if exps[k] < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
            if k == n || bounds.contains(&0) {
                break;
            }
        }
    }
    let order = m.ring.order;
    elements.sort_by(|a, b| order.compare(&a.1, &b.1).then(a.0.cmp(&b.0)));
    Ok(VectorSpaceBasis::Finite(Staircase { ring: m.ring, gens: m.gens, gb, elements }))
}

impl Staircase {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn elements(&self) -> &[(usize, Monomial)] {
        &self.elements
    }

    pub fn relation_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// The module vector `mono · e_pos` of basis element `idx`.
    pub fn element_vector(&self, idx: usize) -> PolyVec {
        let (pos, mono) = &self.elements[idx];
        let mut v = groebner::zero_vec(self.ring, self.gens);
        v[*pos] = Poly::monomial(self.ring, mono.clone(), self.ring.field.one());
        v
    }

    /// Module vector with the given coordinates.
    pub fn vector_from_coords(&self, coords: &[Scalar]) -> PolyVec {
        let mut v = groebner::zero_vec(self.ring, self.gens);
        for ((pos, mono), c) in self.elements.iter().zip(coords) {
            v[*pos] = v[*pos].add(&Poly::monomial(self.ring, mono.clone(), c.clone()));
        }
        v
    }

    /// Coordinates of the class of `v` in the staircase basis.
    pub fn coordinates(&self, v: &[Poly]) -> Result<Vec<Scalar>> {
        let nf = self.gb.normal_form(v)?;
        let mut out = vec![self.ring.field.zero(); self.dim()];
        for (pos, p) in nf.iter().enumerate() {
            for (m, c) in p.terms() {
                let idx = self
                    .elements
                    .iter()
                    .position(|(q, e)| *q == pos && e == m)
                    .expect("normal forms consist of standard monomials");
                out[idx] = c.clone();
            }
        }
        Ok(out)
    }

    /// Matrix of multiplication by `T_var` (columns are images of basis elements).
    pub fn multiplication_matrix(&self, var: usize) -> Result<Matrix> {
        let t = Poly::var(self.ring, var);
        let cols = (0..self.dim())
            .map(|b| {
                let v: PolyVec = self.element_vector(b).iter().map(|p| p.mul(&t)).collect();
                self.coordinates(&v)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.ring.field, self.dim(), &cols))
    }

    pub fn multiplication_matrices(&self) -> Result<Vec<Matrix>> {
        (0..self.ring.nvars).map(|j| self.multiplication_matrix(j)).collect()
    }
}

/// Evaluates a polynomial at commuting matrices.
pub fn eval_at_matrices(p: &Poly, mats: &[Matrix], dim: usize) -> Matrix {
    let field = p.field();
    let mut acc = Matrix::zeros(field, dim, dim);
    let mut powers: Vec<Vec<Matrix>> = mats.iter().map(|m| vec![Matrix::identity(field, dim), m.clone()]).collect();
    for (mono, c) in p.terms() {
        let mut term = Matrix::identity(field, dim);
        for (j, &e) in mono.exps().iter().enumerate() {
            while powers[j].len() <= e as usize {
                let next = powers[j].last().expect("nonempty").mul(&mats[j]);
                powers[j].push(next);
            }
            if e > 0 {
                term = term.mul(&powers[j][e as usize]);
            }
        }
        acc = acc.add(&term.scale(c));
    }
    acc
}

/// A basis of `Hom(m, p)` over `k`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub dim: usize,
    pub basis: Vec<ModMorphism>,
}

/// `Hom(m, p)` as a `k`-vector space, solved over the staircase basis of `p`:
/// the images of the generators of `m` are unknown vectors of `p`, and every
/// relation of `m` must be sent to zero.
pub fn hom_mod(m: &ModulePresentation, p: &ModulePresentation) -> Result<HomSpace> {
    m.ring.check_same(&p.ring)?;
    basis_as_vector_space(m)?.finite()?;
    let target = basis_as_vector_space(p)?.finite()?;
    let d = target.dim();
    let g = m.gens;
    let mats = target.multiplication_matrices()?;
    let field = m.ring.field;
    let rels = m.rels.cols();
    // unknown X[a][i] sits at column i*d + a
    let mut system = Matrix::zeros(field, rels * d, g * d);
    for r in 0..rels {
        for i in 0..g {
            let coef = m.rels.get(i, r);
            if coef.is_zero() {
                continue;
            }
            system.set_block(r * d, i * d, &eval_at_matrices(coef, &mats, d));
        }
    }
    let kernel = system.kernel();
    let mut basis = Vec::with_capacity(kernel.cols());
    for k in 0..kernel.cols() {
        let x = kernel.column(k);
        let cols: Vec<PolyVec> = (0..g).map(|i| target.vector_from_coords(&x[i * d..(i + 1) * d])).collect();
        let matrix = PolyMatrix::from_columns(m.ring, p.gens, &cols);
        basis.push(ModMorphism::new_unchecked(m.clone(), p.clone(), matrix)?);
    }
    Ok(HomSpace { dim: basis.len(), basis })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivedFunctor {
    Ext,
    Tor,
}

/// Dimension of `Ext^i(m, p)` or `Tor_i(m, p)` together with the resolution
/// of `m` it was computed from and the `k`-dimensions of the (co)chain terms.
#[derive(Debug, Clone)]
pub struct DerivedResult {
    pub dimension: usize,
    pub resolution: FreeResolution,
    pub term_dims: Vec<usize>,
}

/// Ext by `Hom(F_•, p)`, Tor by `F_• ⊗ p`, with `F_• → m` a free resolution.
pub fn ext_tor_mod(m: &ModulePresentation, p: &ModulePresentation, i: usize, which: DerivedFunctor) -> Result<DerivedResult> {
    m.ring.check_same(&p.ring)?;
    let resolution = free_resolution(m, i + 1)?;
    ext_tor_with_resolution(&resolution, p, i, which)
}

/// Same as [`ext_tor_mod`] for a caller-supplied resolution.
pub fn ext_tor_with_resolution(
    resolution: &FreeResolution,
    p: &ModulePresentation,
    i: usize,
    which: DerivedFunctor,
) -> Result<DerivedResult> {
    resolution.ring.check_same(&p.ring)?;
    let target = basis_as_vector_space(p)?.finite()?;
    let d = target.dim();
    let mats = target.multiplication_matrices()?;
    let ranks = resolution.ranks();
    let rank = |k: usize| ranks.get(k).copied().unwrap_or(0);
    let field = p.ring.field;

    // block matrix of `A` (r_{k-1} × r_k) acting on p^{r_k} → p^{r_{k-1}}
    let induced = |k: usize, transpose: bool| -> usize {
        let Some(a) = resolution.map(k) else { return 0 };
        let (rows, cols) = if transpose { (a.cols(), a.rows()) } else { (a.rows(), a.cols()) };
        let mut big = Matrix::zeros(field, rows * d, cols * d);
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let e = a.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let block = eval_at_matrices(e, &mats, d);
                if transpose {
                    big.set_block(c * d, r * d, &block);
                } else {
                    big.set_block(r * d, c * d, &block);
                }
            }
        }
        big.rank()
    };

    let dimension = match which {
        // δ^k = (·A_{k+1})ᵀ : p^{r_k} → p^{r_{k+1}}
        DerivedFunctor::Ext => {
            let out = induced(i + 1, true);
            let inc = if i == 0 { 0 } else { induced(i, true) };
            rank(i) * d - out - inc
        }
        DerivedFunctor::Tor => {
            let out = if i == 0 { 0 } else { induced(i, false) };
            let inc = induced(i + 1, false);
            rank(i) * d - out - inc
        }
    };
    let term_dims = ranks.iter().map(|r| r * d).collect();
    Ok(DerivedResult { dimension, resolution: resolution.clone(), term_dims })
}

/// Restriction of scalars of a `k[S]`-module along `k[T] → k[S]`, `T ↦ S^m`.
///
/// `k[S]^g` is free over `k[T]` on `S^j e_i` (`j < m`), and the relation
/// submodule is generated over `k[T]` by `S^j · r` for relations `r`.
pub fn restrict_scalars_power(p: &ModulePresentation, m: u32) -> Result<ModulePresentation> {
    if p.ring.nvars != 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    if m == 0 {
        return Err(AlgebraError::InvalidInput("power must be at least 1".into()));
    }
    let ring = p.ring;
    let mu = m as usize;
    let gens = p.gens * mu;
    let rewrite = |v: &[Poly]| -> PolyVec {
        let mut out = groebner::zero_vec(ring, gens);
        for (i, poly) in v.iter().enumerate() {
            for (mono, c) in poly.terms() {
                let e = mono.exps()[0];
                let slot = i * mu + (e % m) as usize;
                let t = Poly::monomial(ring, Monomial::new(vec![e / m]), c.clone());
                out[slot] = out[slot].add(&t);
            }
        }
        out
    };
    let mut cols = Vec::new();
    for r in p.rels.columns() {
        for j in 0..m {
            let shift = Poly::monomial(ring, Monomial::new(vec![j]), ring.field.one());
            let shifted: PolyVec = r.iter().map(|x| x.mul(&shift)).collect();
            cols.push(rewrite(&shifted));
        }
    }
    ModulePresentation::new(gens, PolyMatrix::from_columns(ring, gens, &cols))
}

/// Whether two presentations on the same generators have equal relation
/// submodules, so the identity on generators is an isomorphism.
pub fn same_quotient(a: &ModulePresentation, b: &ModulePresentation) -> Result<bool> {
    a.ring.check_same(&b.ring)?;
    if a.gens != b.gens {
        return Ok(false);
    }
    Ok(a.relation_basis()?.contains_columns(&b.rels)? && b.relation_basis()?.contains_columns(&a.rels)?)
}
