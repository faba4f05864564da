//! Commuting matrix tuples versus finite-dimensional `k[T₁..Tₙ]`-modules.
//!
//! `phi` turns `(V, f₁..fₙ)` into the presentation of `V` on which `Tⱼ`
//! acts as `fⱼ`; `psi` reads the action of the variables off a staircase
//! basis. Both directions come with certified comparison maps.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::diagrams::{self, DiagMorphism, Diagram, IsoSearch};
use crate::error::{shape, AlgebraError, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::poly::{MonomialOrder, Poly, PolyRing};
use crate::polymatrix::PolyMatrix;
use crate::polymods::{basis_as_vector_space, eval_at_matrices, restrict_scalars_power, ModMorphism, ModulePresentation};
use crate::smallcat::CatFunctor;
use crate::smith::{invariant_factors, InvariantFactorForm};

/// `n` pairwise commuting `dim × dim` matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingTuple {
    field: Field,
    dim: usize,
    mats: Vec<Matrix>,
}

impl CommutingTuple {
    pub fn new(field: Field, dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        Diagram::loops(field, dim, mats.clone())?;
        Ok(CommutingTuple { field, dim, mats })
    }

    /// The tuple of a `Λⁿ`-diagram.
    pub fn from_diagram(d: &Diagram) -> Result<Self> {
        if d.shape().loop_rank().is_none() {
            return Err(shape("diagram is not over a loop shape"));
        }
        Ok(CommutingTuple { field: d.field(), dim: d.dims()[0], mats: d.mats().to_vec() })
    }

    pub fn to_diagram(&self) -> Diagram {
        Diagram::loops(self.field, self.dim, self.mats.clone()).expect("validated at construction")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn zero(field: Field, n: usize) -> Result<Self> {
        CommutingTuple::new(field, 0, vec![Matrix::zeros(field, 0, 0); n])
    }

    pub fn direct_sum(&self, other: &CommutingTuple) -> Result<Self> {
        let d = self.to_diagram().direct_sum(&other.to_diagram())?;
        CommutingTuple::from_diagram(&d)
    }

    /// The polynomial ring the tuple acts through, in degree reverse lex order.
    pub fn ring(&self) -> PolyRing {
        PolyRing::new(self.field, self.n(), MonomialOrder::DegRevLex)
    }
}

/// `Φ` with the ring in degree reverse lex order.
pub fn phi(x: &CommutingTuple) -> ModulePresentation {
    phi_in(x, MonomialOrder::DegRevLex)
}

/// Presentation with one generator per basis vector and, for every variable
/// `Tⱼ` and basis vector `e_s` (variable outer), the relation
/// `Tⱼ·e_s − Σᵢ (fⱼ)ᵢₛ eᵢ`.
pub fn phi_in(x: &CommutingTuple, order: MonomialOrder) -> ModulePresentation {
    let ring = PolyRing::new(x.field, x.n(), order);
    let d = x.dim;
    let mut rels = PolyMatrix::zeros(ring, d, x.n() * d);
    for (j, f) in x.mats.iter().enumerate() {
        for s in 0..d {
            let col = j * d + s;
            for i in 0..d {
                let c = f.get(i, s);
                if !c.is_zero() {
                    rels.set(i, col, Poly::constant(ring, -c));
                }
            }
            let entry = rels.get(s, col).add(&Poly::var(ring, j));
            rels.set(s, col, entry);
        }
    }
    ModulePresentation::new(d, rels).expect("shape is consistent")
}

/// `Ψ`: multiplication by each variable in the staircase basis.
pub fn psi(m: &ModulePresentation) -> Result<CommutingTuple> {
    if m.ring().nvars == 0 {
        return Err(AlgebraError::InvalidInput("modules need at least one variable".into()));
    }
    let stairs = basis_as_vector_space(m)?.finite()?;
    let mats = stairs.multiplication_matrices()?;
    CommutingTuple::new(m.ring().field, stairs.dim(), mats)
}

/// The component of a `Λⁿ`-morphism read as a map on generators.
pub fn phi_on_morphism(f: &DiagMorphism) -> Result<ModMorphism> {
    let (x, y) = (CommutingTuple::from_diagram(f.src())?, CommutingTuple::from_diagram(f.dst())?);
    let (px, py) = (phi(&x), phi(&y));
    let matrix = PolyMatrix::from_scalar_matrix(*px.ring(), &f.comps()[0]);
    ModMorphism::new(px, py, matrix)
}

/// A module map as a morphism between the staircase tuples.
pub fn psi_on_morphism(f: &ModMorphism) -> Result<DiagMorphism> {
    let src = basis_as_vector_space(f.src())?.finite()?;
    let dst = basis_as_vector_space(f.dst())?.finite()?;
    let cols = (0..src.dim())
        .map(|b| dst.coordinates(&f.matrix().apply(&src.element_vector(b))))
        .collect::<Result<Vec<_>>>()?;
    let comp = Matrix::from_columns(f.src().ring().field, dst.dim(), &cols);
    DiagMorphism::new(psi(f.src())?.to_diagram(), psi(f.dst())?.to_diagram(), vec![comp])
}

/// The isomorphism `Ψ(Φ(x)) → x` sending the staircase element `μ·e_s` to
/// `μ(f₁..fₙ)·e_s`, certified natural and invertible.
pub fn psi_phi_iso(x: &CommutingTuple) -> Result<DiagMorphism> {
    let px = phi(x);
    let stairs = basis_as_vector_space(&px)?.finite()?;
    let ring = *px.ring();
    let cols: Vec<_> = stairs
        .elements()
        .iter()
        .map(|(pos, mono)| {
            let act = eval_at_matrices(&Poly::monomial(ring, mono.clone(), x.field.one()), &x.mats, x.dim);
            act.column(*pos)
        })
        .collect();
    let comp = Matrix::from_columns(x.field, x.dim, &cols);
    let src = CommutingTuple::new(x.field, stairs.dim(), stairs.multiplication_matrices()?)?;
    let f = DiagMorphism::new(src.to_diagram(), x.to_diagram(), vec![comp])?;
    if !f.is_isomorphism() {
        return Err(AlgebraError::InvalidMorphism("comparison map is not invertible".into()));
    }
    Ok(f)
}

/// Mutually inverse maps `Φ(Ψ(m)) → m` and `m → Φ(Ψ(m))`: a staircase
/// generator goes to its monomial vector, a generator of `m` to its
/// normal-form coordinates. Both composites are certified to be identities.
pub fn phi_psi_iso(m: &ModulePresentation) -> Result<(ModMorphism, ModMorphism)> {
    let stairs = basis_as_vector_space(m)?.finite()?;
    let tuple = CommutingTuple::new(m.ring().field, stairs.dim(), stairs.multiplication_matrices()?)?;
    let pp = phi_in(&tuple, m.ring().order);
    let ring = *m.ring();
    let forward_cols: Vec<_> = (0..stairs.dim()).map(|b| stairs.element_vector(b)).collect();
    let forward = ModMorphism::new(pp.clone(), m.clone(), PolyMatrix::from_columns(ring, m.gens(), &forward_cols))?;
    let back_cols = (0..m.gens())
        .map(|i| {
            let mut e = vec![Poly::zero(ring); m.gens()];
            e[i] = Poly::one(ring);
            let c = stairs.coordinates(&e)?;
            Ok(c.into_iter().map(|s| Poly::constant(ring, s)).collect())
        })
        .collect::<Result<Vec<Vec<Poly>>>>()?;
    let back = ModMorphism::new(m.clone(), pp.clone(), PolyMatrix::from_columns(ring, stairs.dim(), &back_cols))?;
    if !forward.compose(&back)?.equals(&ModMorphism::identity(m))?
        || !back.compose(&forward)?.equals(&ModMorphism::identity(&pp))?
    {
        return Err(AlgebraError::InvalidMorphism("comparison maps are not inverse".into()));
    }
    Ok((forward, back))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleIso {
    Isomorphic,
    NotIsomorphic,
    /// Hom-dimension invariants agree but no invertible map was found.
    Inconclusive,
}

/// Univariate: invariant factors. Several variables: finite-dimensional
/// modules only, by searching for an isomorphism between the staircase tuples.
pub fn modules_isomorphic(a: &ModulePresentation, b: &ModulePresentation) -> Result<ModuleIso> {
    a.ring().check_same(b.ring())?;
    if a.ring().nvars == 1 {
        let same = invariant_factors(a)? == invariant_factors(b)?;
        return Ok(if same { ModuleIso::Isomorphic } else { ModuleIso::NotIsomorphic });
    }
    let (x, y) = (psi(a)?, psi(b)?);
    Ok(match diagrams::find_isomorphism(&x.to_diagram(), &y.to_diagram())? {
        IsoSearch::Found(_) => ModuleIso::Isomorphic,
        IsoSearch::NotIsomorphic => ModuleIso::NotIsomorphic,
        IsoSearch::Inconclusive => ModuleIso::Inconclusive,
    })
}

/// Both sides of the comparison between restricting a `Λ`-diagram along
/// `t ↦ tᵐ` and restricting scalars along `T ↦ Tᵐ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub m: usize,
    pub diagram_side: InvariantFactorForm,
    pub module_side: InvariantFactorForm,
    pub isomorphic: bool,
}

pub fn check_restriction_compat(m: usize, x: &CommutingTuple) -> Result<RestrictionReport> {
    if x.n() != 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    if m == 0 {
        return Err(AlgebraError::InvalidInput("power must be at least 1".into()));
    }
    let restricted = diagrams::restrict(&CatFunctor::power_endofunctor(m), &x.to_diagram())?;
    let lhs = invariant_factors(&phi(&CommutingTuple::from_diagram(&restricted)?))?;
    let power = u32::try_from(m).map_err(|_| AlgebraError::SizeLimit(format!("power {m}")))?;
    let rhs = invariant_factors(&restrict_scalars_power(&phi(x), power)?)?;
    let isomorphic = lhs == rhs;
    Ok(RestrictionReport { m, diagram_side: lhs, module_side: rhs, isomorphic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymods::{hom_mod, same_quotient};
    use crate::smith::invariant_factors;

    const Q: Field = Field::Rationals;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(Q, rows)
    }

    fn tuple(rows: &[&[i64]]) -> CommutingTuple {
        CommutingTuple::new(Q, rows.len(), vec![m(rows)]).unwrap()
    }

    fn ring() -> PolyRing {
        PolyRing::univariate(Q)
    }

    fn p(s: &str) -> Poly {
        Poly::parse(ring(), s).unwrap()
    }

    #[test]
    fn phi_examples() {
        let a = phi(&tuple(&[&[0]]));
        assert_eq!(a.rels().entries(), &[p("T")]);
        let j = phi(&tuple(&[&[0, 1], &[0, 0]]));
        assert_eq!(invariant_factors(&j).unwrap().factors, vec![p("T^2")]);
        let d = phi(&tuple(&[&[1, 0], &[0, 2]]));
        assert_eq!(invariant_factors(&d).unwrap().factors, vec![p("T^2-3*T+2")]);
        assert_eq!(phi(&tuple(&[&[5]])).rels().entries(), &[p("T-5")]);
    }

    #[test]
    fn psi_examples() {
        let x = psi(&ModulePresentation::cyclic(ring(), &[p("T^3")])).unwrap();
        assert_eq!(x.mats()[0], m(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]));
        assert_eq!(psi(&ModulePresentation::free(ring(), 1)), Err(AlgebraError::InfiniteDimensional));
        let z = psi(&ModulePresentation::cyclic(ring(), &[p("1")])).unwrap();
        assert_eq!((z.dim(), z.mats()[0].shape()), (0, (0, 0)));
    }

    #[test]
    fn round_trips() {
        let x = CommutingTuple::new(
            Q,
            3,
            vec![m(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]), m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 1]])],
        )
        .unwrap();
        let f = psi_phi_iso(&x).unwrap();
        assert!(f.is_isomorphism());
        let px = phi(&x);
        phi_psi_iso(&px).unwrap();
        assert_eq!(modules_isomorphic(&px, &phi(&psi(&px).unwrap())).unwrap(), ModuleIso::Isomorphic);
    }

    #[test]
    fn morphisms() {
        let (j, z) = (tuple(&[&[0, 1], &[0, 0]]), tuple(&[&[0]]));
        let id = DiagMorphism::identity(&j.to_diagram());
        let fid = phi_on_morphism(&id).unwrap();
        assert!(fid.equals(&ModMorphism::identity(&phi(&j))).unwrap());
        let f = DiagMorphism::new(j.to_diagram(), z.to_diagram(), vec![m(&[&[0, 1]])]).unwrap();
        let g = phi_on_morphism(&f).unwrap();
        assert!(!g.is_zero().unwrap());
        let back = psi_on_morphism(&g).unwrap();
        assert_eq!(back.comps()[0].rank(), 1);
        let zero = DiagMorphism::zero(&j.to_diagram(), &z.to_diagram()).unwrap();
        assert!(phi_on_morphism(&zero).unwrap().is_zero().unwrap());
    }

    #[test]
    fn hom_sets_agree() {
        let xs = [tuple(&[&[0, 1], &[0, 0]]), tuple(&[&[0]]), tuple(&[&[1, 0], &[0, 2]]), tuple(&[&[2]])];
        for x in &xs {
            for y in &xs {
                let lhs = diagrams::hom_dim(&x.to_diagram(), &y.to_diagram()).unwrap();
                assert_eq!(lhs, hom_mod(&phi(x), &phi(y)).unwrap().dim);
            }
        }
    }

    #[test]
    fn direct_sums() {
        let (a, b) = (tuple(&[&[0, 1], &[0, 0]]), tuple(&[&[3]]));
        let lhs = phi(&a.direct_sum(&b).unwrap());
        let rhs = phi(&a).direct_sum(&phi(&b)).unwrap();
        assert!(same_quotient(&lhs, &rhs).unwrap());
    }

    #[test]
    fn restriction_compatibility() {
        for (k, x) in [(1, tuple(&[&[0, 1], &[0, 0]])), (2, tuple(&[&[0, 1], &[0, 0]])), (3, tuple(&[&[1]]))] {
            let r = check_restriction_compat(k, &x).unwrap();
            assert!(r.isomorphic, "{r:?}");
        }
        let r = check_restriction_compat(2, &tuple(&[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!(r.diagram_side.factors, vec![p("T"), p("T")]);
        let r = check_restriction_compat(3, &tuple(&[&[1]])).unwrap();
        assert_eq!(r.module_side.factors, vec![p("T-1")]);
    }
}
