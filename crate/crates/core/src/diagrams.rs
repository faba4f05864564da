//! Finite-dimensional vector-space diagrams over finitely presented shapes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{mixed, shape, AlgebraError, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::random::SeededRng;
use crate::smallcat::{CatFunctor, CatNatTransformation, FinPresCat, Path};

/// A functor from `shape` to finite-dimensional vector spaces: one
/// dimension per object and one `dst × src` matrix per generating arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    shape: FinPresCat,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl Diagram {
    /// Checks matrix shapes, then every relation by exact evaluation.
    pub fn new(shape: FinPresCat, field: Field, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        let d = Diagram { shape, field, dims, mats };
        d.check_shapes()?;
        d.validate()?;
        Ok(d)
    }

    /// `Λⁿ`-diagram from `n` square matrices of a common size.
    pub fn loops(field: Field, dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        let shape = FinPresCat::make_loop(mats.len())?;
        Diagram::new(shape, field, vec![dim], mats)
    }

    pub fn zero(shape: &FinPresCat, field: Field) -> Self {
        let dims = vec![0; shape.objects().len()];
        let mats = shape.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Diagram { shape: shape.clone(), field, dims, mats }
    }

    fn check_shapes(&self) -> Result<()> {
        if self.dims.len() != self.shape.objects().len() {
            return Err(shape(format!("{} dimensions for {} objects", self.dims.len(), self.shape.objects().len())));
        }
        if self.mats.len() != self.shape.arrows().len() {
            return Err(shape(format!("{} matrices for {} arrows", self.mats.len(), self.shape.arrows().len())));
        }
        for (a, m) in self.shape.arrows().iter().zip(&self.mats) {
            if m.field() != self.field {
                return Err(mixed(format!("matrix for {:?} over {}", a.label, m.field())));
            }
            if m.shape() != (self.dims[a.dst], self.dims[a.src]) {
                return Err(shape(format!(
                    "matrix for {:?} is {}x{}, expected {}x{}",
                    a.label,
                    m.rows(),
                    m.cols(),
                    self.dims[a.dst],
                    self.dims[a.src]
                )));
            }
        }
        Ok(())
    }

    /// Reports the first relation whose two sides evaluate differently.
    pub fn validate(&self) -> Result<()> {
        for (index, r) in self.shape.relations().iter().enumerate() {
            let (l, rr) = (self.evaluate(&r.lhs), self.evaluate(&r.rhs));
            if l != rr {
                return Err(AlgebraError::RelationViolated { index, detail: format!("lhs = {l}; rhs = {rr}") });
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &FinPresCat {
        &self.shape
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Matrix of a word; arrows are applied in order, so later arrows
    /// multiply on the left.
    pub fn evaluate(&self, p: &Path) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[p.start]);
        for &a in &p.arrows {
            m = self.mats[a].mul(&m);
        }
        m
    }

    pub fn direct_sum(&self, other: &Diagram) -> Result<Diagram> {
        self.check_compatible(other)?;
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Diagram { shape: self.shape.clone(), field: self.field, dims, mats })
    }

    /// Change of basis: `p[o]` are invertible matrices and the result is
    /// `p[dst]·m·p[src]⁻¹` on every arrow.
    pub fn conjugate(&self, p: &[Matrix]) -> Result<Diagram> {
        if p.len() != self.dims.len() {
            return Err(shape("one basis change per object required"));
        }
        let mut inv = Vec::with_capacity(p.len());
        for (o, m) in p.iter().enumerate() {
            if m.shape() != (self.dims[o], self.dims[o]) {
                return Err(shape(format!("basis change at object {o} has the wrong size")));
            }
            inv.push(m.inverse().ok_or_else(|| AlgebraError::InvalidInput(format!("basis change at object {o} is singular")))?);
        }
        let mats = self
            .shape
            .arrows()
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| p[a.dst].mul(m).mul(&inv[a.src]))
            .collect();
        Ok(Diagram { shape: self.shape.clone(), field: self.field, dims: self.dims.clone(), mats })
    }

    pub(crate) fn check_compatible(&self, other: &Diagram) -> Result<()> {
        if self.field != other.field {
            return Err(mixed(format!("{} vs {}", self.field, other.field)));
        }
        if self.shape != other.shape {
            return Err(shape("diagrams over different shapes"));
        }
        Ok(())
    }
}

/// Natural transformation between diagrams of one shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagMorphism {
    src: Diagram,
    dst: Diagram,
    comps: Vec<Matrix>,
}

impl DiagMorphism {
    /// Checks component shapes and every naturality square.
    pub fn new(src: Diagram, dst: Diagram, comps: Vec<Matrix>) -> Result<Self> {
        src.check_compatible(&dst)?;
        if comps.len() != src.dims.len() {
            return Err(shape("one component per object required"));
        }
        for (o, c) in comps.iter().enumerate() {
            if c.shape() != (dst.dims[o], src.dims[o]) || c.field() != src.field {
                return Err(shape(format!("component at object {o} has the wrong shape")));
            }
        }
        let f = DiagMorphism { src, dst, comps };
        if let Some(a) = f.first_non_natural() {
            return Err(AlgebraError::InvalidMorphism(format!(
                "naturality fails at arrow {:?}",
                f.src.shape.arrows()[a].label
            )));
        }
        Ok(f)
    }

    fn first_non_natural(&self) -> Option<usize> {
        self.src.shape.arrows().iter().enumerate().position(|(i, a)| {
            self.comps[a.dst].mul(&self.src.mats[i]) != self.dst.mats[i].mul(&self.comps[a.src])
        })
    }

    pub fn identity(x: &Diagram) -> Self {
        let comps = x.dims.iter().map(|&d| Matrix::identity(x.field, d)).collect();
        DiagMorphism { src: x.clone(), dst: x.clone(), comps }
    }

    pub fn zero(x: &Diagram, y: &Diagram) -> Result<Self> {
        x.check_compatible(y)?;
        let comps = x.dims.iter().zip(&y.dims).map(|(&s, &t)| Matrix::zeros(x.field, t, s)).collect();
        Ok(DiagMorphism { src: x.clone(), dst: y.clone(), comps })
    }

    pub fn src(&self) -> &Diagram {
        &self.src
    }

    pub fn dst(&self) -> &Diagram {
        &self.dst
    }

    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &DiagMorphism) -> Result<DiagMorphism> {
        if first.dst != self.src {
            return Err(shape("morphisms are not composable"));
        }
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.mul(f)).collect();
        Ok(DiagMorphism { src: first.src.clone(), dst: self.dst.clone(), comps })
    }

    pub fn add(&self, other: &DiagMorphism) -> Result<DiagMorphism> {
        if self.src != other.src || self.dst != other.dst {
            return Err(shape("morphisms are not parallel"));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        Ok(DiagMorphism { src: self.src.clone(), dst: self.dst.clone(), comps })
    }

    pub fn scale(&self, c: &Scalar) -> DiagMorphism {
        let comps = self.comps.iter().map(|m| m.scale(c)).collect();
        DiagMorphism { src: self.src.clone(), dst: self.dst.clone(), comps }
    }

    pub fn neg(&self) -> DiagMorphism {
        let comps = self.comps.iter().map(Matrix::neg).collect();
        DiagMorphism { src: self.src.clone(), dst: self.dst.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.comps.iter().all(Matrix::is_invertible)
    }

    pub fn inverse(&self) -> Option<DiagMorphism> {
        let comps = self.comps.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(DiagMorphism { src: self.dst.clone(), dst: self.src.clone(), comps })
    }

    pub fn direct_sum(&self, other: &DiagMorphism) -> Result<DiagMorphism> {
        let src = self.src.direct_sum(&other.src)?;
        let dst = self.dst.direct_sum(&other.dst)?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(DiagMorphism { src, dst, comps })
    }

    /// Components of this morphism, coordinates first by object then row-major.
    pub fn coordinates(&self) -> Vec<Scalar> {
        self.comps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }
}

/// Offsets of each component block in the flattened unknown vector.
fn component_offsets(x: &Diagram, y: &Diagram) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(x.dims.len());
    let mut total = 0;
    for (&s, &t) in x.dims.iter().zip(&y.dims) {
        offsets.push(total);
        total += s * t;
    }
    (offsets, total)
}

/// The naturality equations `C_t·X_a − Y_a·C_s = 0` over all arrows, one row
/// per matrix entry, columns indexed by the flattened components.
pub fn naturality_system(x: &Diagram, y: &Diagram) -> Result<Matrix> {
    x.check_compatible(y)?;
    let field = x.field;
    let (offsets, total) = component_offsets(x, y);
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (i, a) in x.shape.arrows().iter().enumerate() {
        let (s, t) = (a.src, a.dst);
        let (xs, xt, ys, yt) = (x.dims[s], x.dims[t], y.dims[s], y.dims[t]);
        let (xa, ya) = (&x.mats[i], &y.mats[i]);
        // entry (r, c) of a yt × xs matrix
        for r in 0..yt {
            for c in 0..xs {
                let mut row = vec![field.zero(); total];
                for k in 0..xt {
                    let idx = offsets[t] + r * xt + k;
                    row[idx] = &row[idx] + xa.get(k, c);
                }
                for k in 0..ys {
                    let idx = offsets[s] + k * xs + c;
                    row[idx] = &row[idx] - ya.get(r, k);
                }
                rows.push(row);
            }
        }
    }
    let n = rows.len();
    Matrix::from_rows(field, n, total, rows.into_iter().flatten().collect())
}

fn morphism_from_coordinates(x: &Diagram, y: &Diagram, v: &[Scalar]) -> DiagMorphism {
    let (offsets, _) = component_offsets(x, y);
    let comps = (0..x.dims.len())
        .map(|o| {
            let (s, t) = (x.dims[o], y.dims[o]);
            Matrix::from_fn(x.field, t, s, |i, j| v[offsets[o] + i * s + j].clone())
        })
        .collect();
    DiagMorphism { src: x.clone(), dst: y.clone(), comps }
}

/// A basis of the natural transformations `x → y`, one vector per free
/// column of the reduced naturality system.
pub fn hom_space(x: &Diagram, y: &Diagram) -> Result<Vec<DiagMorphism>> {
    let system = naturality_system(x, y)?;
    let kernel = system.kernel();
    Ok((0..kernel.cols()).map(|j| morphism_from_coordinates(x, y, &kernel.column(j))).collect())
}

pub fn hom_dim(x: &Diagram, y: &Diagram) -> Result<usize> {
    let system = naturality_system(x, y)?;
    Ok(system.cols() - system.rank())
}

/// Objectwise kernel and cokernel with their structure maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCokernel {
    pub kernel: Diagram,
    pub inclusion: DiagMorphism,
    pub cokernel: Diagram,
    pub projection: DiagMorphism,
}

pub fn kernel_cokernel(f: &DiagMorphism) -> Result<KernelCokernel> {
    if let Some(a) = f.first_non_natural() {
        return Err(AlgebraError::InvalidMorphism(format!("naturality fails at arrow {a}")));
    }
    let (x, y) = (&f.src, &f.dst);
    let field = x.field;
    let incl: Vec<Matrix> = f.comps.iter().map(Matrix::kernel).collect();
    // rows of each projection span the annihilator of the image
    let proj: Vec<Matrix> = f.comps.iter().map(|c| c.transpose().kernel().transpose()).collect();
    let sections: Vec<Matrix> = proj
        .iter()
        .map(|q| {
            q.solve_matrix(&Matrix::identity(field, q.rows()))
                .expect("shapes agree")
                .expect("projection has full row rank")
        })
        .collect();

    let mut kmats = Vec::new();
    let mut qmats = Vec::new();
    for (i, a) in x.shape.arrows().iter().enumerate() {
        let moved = x.mats[i].mul(&incl[a.src]);
        let induced = incl[a.dst].solve_matrix(&moved)?.expect("kernel is preserved by naturality");
        kmats.push(induced);
        qmats.push(proj[a.dst].mul(&y.mats[i]).mul(&sections[a.src]));
    }
    let kernel = Diagram::new(x.shape.clone(), field, incl.iter().map(Matrix::cols).collect(), kmats)?;
    let cokernel = Diagram::new(x.shape.clone(), field, proj.iter().map(Matrix::rows).collect(), qmats)?;
    let inclusion = DiagMorphism::new(kernel.clone(), x.clone(), incl)?;
    let projection = DiagMorphism::new(y.clone(), cokernel.clone(), proj)?;
    debug_assert!(f.compose(&inclusion).map(|m| m.is_zero()).unwrap_or(false));
    debug_assert!(projection.compose(f).map(|m| m.is_zero()).unwrap_or(false));
    Ok(KernelCokernel { kernel, inclusion, cokernel, projection })
}

/// Precomposition `u*x`; fails with `RelationViolated` when `u` does not
/// respect the relations of its source on `x`.
pub fn restrict(u: &CatFunctor, x: &Diagram) -> Result<Diagram> {
    if u.dst() != &x.shape {
        return Err(shape("functor target is not the diagram shape"));
    }
    let src = u.src();
    let dims = (0..src.objects().len()).map(|o| x.dims[u.object_image(o)]).collect();
    let mats = (0..src.arrows().len()).map(|a| x.evaluate(u.arrow_image(a))).collect();
    Diagram::new(src.clone(), x.field, dims, mats)
}

/// Restriction of a morphism along `u`.
pub fn restrict_morphism(u: &CatFunctor, f: &DiagMorphism) -> Result<DiagMorphism> {
    let src = restrict(u, &f.src)?;
    let dst = restrict(u, &f.dst)?;
    let comps = (0..u.src().objects().len()).map(|o| f.comps[u.object_image(o)].clone()).collect();
    DiagMorphism::new(src, dst, comps)
}

/// `α*: u*x → v*x`, component at `i` the value of `α`'s word at `i`.
pub fn alpha_components(alpha: &CatNatTransformation, x: &Diagram) -> Result<DiagMorphism> {
    let src = restrict(alpha.source(), x)?;
    let dst = restrict(alpha.target(), x)?;
    let comps = alpha.components().iter().map(|p| x.evaluate(p)).collect();
    DiagMorphism::new(src, dst, comps)
}

/// A diagram over `left × right` regrouped as a `right`-indexed family of
/// `left`-diagrams with `left`-morphisms for the generators of `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurriedDiagram {
    pub left: FinPresCat,
    pub right: FinPresCat,
    pub family: Vec<Diagram>,
    pub maps: Vec<DiagMorphism>,
}

impl CurriedDiagram {
    /// Relations of `right` hold on the composite morphisms.
    pub fn validate(&self) -> Result<()> {
        for (index, r) in self.right.relations().iter().enumerate() {
            let (l, rr) = (self.evaluate(&r.lhs), self.evaluate(&r.rhs));
            if l != rr {
                return Err(AlgebraError::RelationViolated { index, detail: "composite morphisms differ".into() });
            }
        }
        Ok(())
    }

    fn evaluate(&self, p: &Path) -> Vec<Matrix> {
        let x = &self.family[p.start];
        let mut comps: Vec<Matrix> = x.dims.iter().map(|&d| Matrix::identity(x.field, d)).collect();
        for &a in &p.arrows {
            comps = comps.iter().zip(&self.maps[a].comps).map(|(c, m)| m.mul(c)).collect();
        }
        comps
    }
}

/// `M^{L×I} → (M^L)^I`.
pub fn curry(left: &FinPresCat, right: &FinPresCat, x: &Diagram) -> Result<CurriedDiagram> {
    if x.shape != FinPresCat::product(left, right) {
        return Err(shape("diagram shape is not the product of the given factors"));
    }
    let (nl, ni) = (left.objects().len(), right.objects().len());
    let offset = left.arrows().len() * ni;
    let field = x.field;
    let mut family = Vec::with_capacity(ni);
    for i in 0..ni {
        let dims = (0..nl).map(|l| x.dims[l * ni + i]).collect();
        let mats = (0..left.arrows().len()).map(|g| x.mats[g * ni + i].clone()).collect();
        family.push(Diagram::new(left.clone(), field, dims, mats)?);
    }
    let mut maps = Vec::with_capacity(right.arrows().len());
    for (h, arrow) in right.arrows().iter().enumerate() {
        let comps = (0..nl).map(|l| x.mats[offset + l * right.arrows().len() + h].clone()).collect();
        maps.push(DiagMorphism::new(family[arrow.src].clone(), family[arrow.dst].clone(), comps)?);
    }
    let c = CurriedDiagram { left: left.clone(), right: right.clone(), family, maps };
    c.validate()?;
    Ok(c)
}

/// `(M^L)^I → M^{L×I}`.
pub fn uncurry(c: &CurriedDiagram) -> Result<Diagram> {
    let (left, right) = (&c.left, &c.right);
    let (nl, ni) = (left.objects().len(), right.objects().len());
    if c.family.len() != ni || c.maps.len() != right.arrows().len() {
        return Err(shape("family does not match the right factor"));
    }
    let field = c.family.first().map(|d| d.field).unwrap_or(Field::Rationals);
    for d in &c.family {
        if d.shape != *left {
            return Err(shape("family member is not over the left factor"));
        }
    }
    for (h, arrow) in right.arrows().iter().enumerate() {
        if c.maps[h].src != c.family[arrow.src] || c.maps[h].dst != c.family[arrow.dst] {
            return Err(shape("morphism endpoints do not match the family"));
        }
    }
    let mut dims = vec![0; nl * ni];
    for l in 0..nl {
        for i in 0..ni {
            dims[l * ni + i] = c.family[i].dims[l];
        }
    }
    let mut mats = Vec::new();
    for g in 0..left.arrows().len() {
        for i in 0..ni {
            mats.push(c.family[i].mats[g].clone());
        }
    }
    for l in 0..nl {
        for h in 0..right.arrows().len() {
            mats.push(c.maps[h].comps[l].clone());
        }
    }
    Diagram::new(FinPresCat::product(left, right), field, dims, mats)
}

/// Outcome of an isomorphism search between two diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoSearch {
    /// An invertible morphism, certified.
    Found(DiagMorphism),
    /// Certified by a mismatch in dimensions or hom-space dimensions.
    NotIsomorphic,
    /// No invertible combination of the hom basis was found.
    Inconclusive,
}

/// Trials of random hom-basis combinations before giving up.
const ISO_TRIALS: usize = 64;

/// Looks for an invertible natural transformation `x → y` among random
/// combinations of a hom basis (isomorphisms form a Zariski-open subset, so a
/// generic combination is one whenever any exists and the field is large).
pub fn find_isomorphism(x: &Diagram, y: &Diagram) -> Result<IsoSearch> {
    x.check_compatible(y)?;
    if x.dims != y.dims {
        return Ok(IsoSearch::NotIsomorphic);
    }
    let basis = hom_space(x, y)?;
    let dims = [hom_dim(x, x)?, hom_dim(y, x)?, hom_dim(y, y)?];
    if dims.iter().any(|&d| d != basis.len()) {
        return Ok(IsoSearch::NotIsomorphic);
    }
    if x.is_zero() {
        return Ok(IsoSearch::Found(DiagMorphism::zero(x, y)?));
    }
    let mut rng = SeededRng::new(0x5eed_1501);
    for trial in 0..ISO_TRIALS {
        let mut candidate = DiagMorphism::zero(x, y)?;
        for (k, b) in basis.iter().enumerate() {
            // first try each basis vector alone
            let c = if trial < basis.len() {
                if k == trial { x.field.one() } else { x.field.zero() }
            } else {
                rng.scalar(x.field, 16)
            };
            if !c.is_zero() {
                candidate = candidate.add(&b.scale(&c))?;
            }
        }
        if candidate.is_isomorphism() {
            return Ok(IsoSearch::Found(candidate));
        }
    }
    Ok(IsoSearch::Inconclusive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallcat::Path;

    const Q: Field = Field::Rationals;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Q, rows)
    }

    fn jordan() -> Diagram {
        Diagram::loops(Q, 2, vec![m(&[&[0, 1], &[0, 0]])]).unwrap()
    }

    fn point(v: i64) -> Diagram {
        Diagram::loops(Q, 1, vec![m(&[&[v]])]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Diagram::loops(Q, 3, vec![m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])]).is_ok());
        let err = Diagram::loops(Q, 2, vec![m(&[&[0, 1], &[0, 0]]), m(&[&[0, 0], &[1, 0]])]).unwrap_err();
        assert!(matches!(err, AlgebraError::RelationViolated { index: 0, .. }));
        let l2 = FinPresCat::make_loop(2).unwrap();
        assert!(Diagram::zero(&l2, Q).validate().is_ok());
        let wrong = Diagram::loops(Q, 2, vec![m(&[&[1]])]).unwrap_err();
        assert!(matches!(wrong, AlgebraError::ShapeMismatch(_)));
    }

    #[test]
    fn hom_dimensions() {
        assert_eq!(hom_dim(&point(0), &point(1)).unwrap(), 0);
        assert_eq!(hom_dim(&jordan(), &jordan()).unwrap(), 2);
        let z = Diagram::zero(&FinPresCat::make_loop(1).unwrap(), Q);
        assert_eq!(hom_dim(&z, &z).unwrap(), 0);
        for b in hom_space(&jordan(), &jordan()).unwrap() {
            assert!(DiagMorphism::new(b.src().clone(), b.dst().clone(), b.comps().to_vec()).is_ok());
        }
    }

    #[test]
    fn hom_is_additive() {
        let (a, b, c) = (jordan(), point(0), point(3));
        let ab = a.direct_sum(&b).unwrap();
        for t in [&a, &b, &c] {
            let lhs = hom_dim(&ab, t).unwrap();
            assert_eq!(lhs, hom_dim(&a, t).unwrap() + hom_dim(&b, t).unwrap());
            let rhs = hom_dim(t, &ab).unwrap();
            assert_eq!(rhs, hom_dim(t, &a).unwrap() + hom_dim(t, &b).unwrap());
        }
    }

    #[test]
    fn kernels_and_cokernels() {
        let id = DiagMorphism::identity(&jordan());
        let kc = kernel_cokernel(&id).unwrap();
        assert!(kc.kernel.is_zero() && kc.cokernel.is_zero());

        let zero = DiagMorphism::zero(&jordan(), &point(0)).unwrap();
        let kc = kernel_cokernel(&zero).unwrap();
        assert_eq!(kc.kernel.dims(), &[2]);
        assert_eq!(kc.cokernel.dims(), &[1]);

        let f = DiagMorphism::new(jordan(), point(0), vec![m(&[&[0, 1]])]).unwrap();
        let kc = kernel_cokernel(&f).unwrap();
        assert_eq!(kc.kernel, point(0));
        assert!(kc.cokernel.is_zero());
        assert!(f.compose(&kc.inclusion).unwrap().is_zero());
        assert!(kc.projection.compose(&f).unwrap().is_zero());
    }

    #[test]
    fn restriction() {
        let x = jordan();
        assert_eq!(restrict(&CatFunctor::identity(x.shape()), &x).unwrap(), x);
        let sq = restrict(&CatFunctor::power_endofunctor(2), &x).unwrap();
        assert_eq!(sq.mats()[0], Matrix::zeros(Q, 2, 2));
        let lambda = FinPresCat::make_loop(1).unwrap();
        let proj = CatFunctor::projection_left(&lambda, &FinPresCat::terminal());
        let relabeled = restrict(&proj, &x).unwrap();
        assert_eq!(relabeled.mats(), x.mats());
        assert_eq!(relabeled.dims(), x.dims());
    }

    #[test]
    fn restriction_is_contravariant() {
        let x = Diagram::loops(Q, 2, vec![m(&[&[1, 1], &[0, 2]])]).unwrap();
        for (a, b) in [(2, 3), (0, 2), (1, 4)] {
            let (u, w) = (CatFunctor::power_endofunctor(a), CatFunctor::power_endofunctor(b));
            let lhs = restrict(&u.compose(&w).unwrap(), &x).unwrap();
            let rhs = restrict(&w, &restrict(&u, &x).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn functor_violating_relations_is_caught() {
        // Λ² into the free monoid on two loops: not a functor on non-commuting data
        let objs = vec!["*".into()];
        let arrows = vec![
            crate::smallcat::Arrow { label: "a".into(), src: 0, dst: 0 },
            crate::smallcat::Arrow { label: "b".into(), src: 0, dst: 0 },
        ];
        let free = FinPresCat::new(objs, arrows, vec![]).unwrap();
        let l2 = FinPresCat::make_loop(2).unwrap();
        let u = CatFunctor::new(l2, free.clone(), vec![0], vec![Path::single(&free, 0), Path::single(&free, 1)]).unwrap();
        let x = Diagram::new(free, Q, vec![2], vec![m(&[&[0, 1], &[0, 0]]), m(&[&[0, 0], &[1, 0]])]).unwrap();
        assert!(matches!(restrict(&u, &x), Err(AlgebraError::RelationViolated { .. })));
    }

    #[test]
    fn natural_transformation_components() {
        let lambda = FinPresCat::make_loop(1).unwrap();
        let u = CatFunctor::pick_object(&lambda, 0).unwrap();
        let id = CatNatTransformation::identity(&u);
        let x = jordan();
        let f = alpha_components(&id, &x).unwrap();
        assert_eq!(f.comps(), &[Matrix::identity(Q, 2)]);
        let t = CatNatTransformation::new(u.clone(), u.clone(), vec![Path::single(&lambda, 0)]).unwrap();
        assert_eq!(alpha_components(&t, &x).unwrap().comps()[0], x.mats()[0]);
        let t2 = CatNatTransformation::new(u.clone(), u, vec![Path::power(&lambda, 0, 2)]).unwrap();
        assert!(alpha_components(&t2, &x).unwrap().is_zero());
    }

    #[test]
    fn currying() {
        let lambda = FinPresCat::make_loop(1).unwrap();
        let e = FinPresCat::terminal();
        let x = restrict(&CatFunctor::projection_left(&lambda, &e), &jordan()).unwrap();
        let c = curry(&lambda, &e, &x).unwrap();
        assert_eq!(c.family[0], jordan());
        assert_eq!(uncurry(&c).unwrap(), x);

        let i = FinPresCat::arrow_category();
        let shape = FinPresCat::product(&lambda, &i);
        // t at 0 is J, t at 1 is [0], crossing (0, 1)
        let y = Diagram::new(
            shape.clone(),
            Q,
            vec![2, 1],
            vec![m(&[&[0, 1], &[0, 0]]), m(&[&[0]]), m(&[&[0, 1]])],
        )
        .unwrap();
        let c = curry(&lambda, &i, &y).unwrap();
        assert_eq!(c.maps[0].comps()[0], m(&[&[0, 1]]));
        assert_eq!(uncurry(&c).unwrap(), y);
        // a crossing map that is not natural violates the interchange relation
        let bad = Diagram::new(shape, Q, vec![2, 1], vec![m(&[&[0, 1], &[0, 0]]), m(&[&[0]]), m(&[&[1, 0]])]);
        assert!(matches!(bad, Err(AlgebraError::RelationViolated { .. })));
        assert!(curry(&i, &lambda, &y).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let x = jordan();
        let p = vec![m(&[&[2, 1], &[1, 1]])];
        let y = x.conjugate(&p).unwrap();
        match find_isomorphism(&x, &y).unwrap() {
            IsoSearch::Found(f) => assert!(f.is_isomorphism()),
            other => panic!("{other:?}"),
        }
        let z = Diagram::loops(Q, 2, vec![Matrix::zeros(Q, 2, 2)]).unwrap();
        assert_eq!(find_isomorphism(&x, &z).unwrap(), IsoSearch::NotIsomorphic);
    }
}
