//! Buchberger's algorithm for ideals and submodules of free modules,
//! multivariate division, syzygies and free resolutions.
//!
//! Module elements are dense vectors of polynomials. Terms are compared
//! position-over-term: a smaller position index dominates, and within one
//! position the ring's monomial order decides.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{mixed, AlgebraError, Result};
use crate::field::Scalar;
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};
use crate::polymatrix::PolyMatrix;
use crate::polymods::ModulePresentation;
use crate::smith::smith_normal_form;

/// An element of `k[T₁..Tₙ]^rank`.
pub type PolyVec = Vec<Poly>;

/// Column cap for every step of a free resolution.
pub const RANK_CAP: usize = 256;

/// Leading position, monomial and coefficient of a module vector.
pub fn lead(v: &[Poly]) -> Option<(usize, &Monomial, &Scalar)> {
    v.iter()
        .enumerate()
        .find_map(|(i, p)| p.leading_term().map(|(m, c)| (i, m, c)))
}

fn cmp_pot(order: MonomialOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| order.compare(a.1, b.1))
}

pub fn is_zero_vec(v: &[Poly]) -> bool {
    v.iter().all(Poly::is_zero)
}

pub fn zero_vec(ring: PolyRing, rank: usize) -> PolyVec {
    vec![Poly::zero(ring); rank]
}

fn mul_term_vec(v: &[Poly], m: &Monomial, c: &Scalar) -> PolyVec {
    v.iter().map(|p| p.mul_term(m, c)).collect()
}

fn sub_vec(a: &[Poly], b: &[Poly]) -> PolyVec {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn monic_vec(v: &[Poly]) -> PolyVec {
    match lead(v) {
        Some((_, _, c)) if !c.is_one() => {
            let inv = c.inv().expect("nonzero");
            v.iter().map(|p| p.scale(&inv)).collect()
        }
        _ => v.to_vec(),
    }
}

/// Remainder of full division of `f` by `divisors` (no term of the result is
/// divisible by a leading term of a divisor at the same position).
pub fn reduce(f: &[Poly], divisors: &[PolyVec]) -> PolyVec {
    let Some(first) = f.first() else {
        return Vec::new();
    };
    let ring = *first.ring();
    let mut p = f.to_vec();
    let mut rem = zero_vec(ring, f.len());
    while let Some((pos, m, c)) = lead(&p) {
        let (m, c) = (m.clone(), c.clone());
        let hit = divisors.iter().find_map(|g| {
            let (gp, gm, gc) = lead(g)?;
            if gp != pos {
                return None;
            }
            m.div(gm).map(|shift| (g, shift, gc))
        });
        match hit {
            Some((g, shift, gc)) => {
                let coef = &c * &gc.inv().expect("nonzero");
                p = sub_vec(&p, &mul_term_vec(g, &shift, &coef));
            }
            None => {
                let t = Poly::monomial(ring, m, c);
                p[pos] = p[pos].sub(&t);
                rem[pos] = rem[pos].add(&t);
            }
        }
    }
    rem
}

/// S-vector of two elements whose leading terms sit at the same position.
pub fn s_vector(a: &[Poly], b: &[Poly]) -> Option<PolyVec> {
    let (pa, ma, ca) = lead(a)?;
    let (pb, mb, cb) = lead(b)?;
    if pa != pb {
        return None;
    }
    let l = ma.lcm(mb);
    let fa = mul_term_vec(a, &l.div(ma)?, &ca.inv()?);
    let fb = mul_term_vec(b, &l.div(mb)?, &cb.inv()?);
    Some(sub_vec(&fa, &fb))
}

/// A reduced Gröbner basis of a submodule of `k[T₁..Tₙ]^rank` (`rank = 1`
/// for ideals), sorted by decreasing leading term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    rank: usize,
    gens: Vec<PolyVec>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[PolyVec] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators of an ideal basis.
    pub fn polys(&self) -> Vec<Poly> {
        self.gens.iter().map(|g| g[0].clone()).collect()
    }

    fn check(&self, f: &[Poly]) -> Result<()> {
        if f.len() != self.rank {
            return Err(mixed(format!("vector of length {} against rank {}", f.len(), self.rank)));
        }
        for p in f {
            self.ring.check_same(p.ring())?;
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &[Poly]) -> Result<PolyVec> {
        self.check(f)?;
        Ok(reduce(f, &self.gens))
    }

    pub fn normal_form_poly(&self, f: &Poly) -> Result<Poly> {
        Ok(self.normal_form(core::slice::from_ref(f))?.remove(0))
    }

    pub fn contains(&self, f: &[Poly]) -> Result<bool> {
        Ok(is_zero_vec(&self.normal_form(f)?))
    }

    /// Whether every column of `m` lies in the submodule.
    pub fn contains_columns(&self, m: &PolyMatrix) -> Result<bool> {
        for col in m.columns() {
            if !self.contains(&col)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Leading monomials at position `pos`.
    pub fn leading_monomials_at(&self, pos: usize) -> Vec<&Monomial> {
        self.gens
            .iter()
            .filter_map(|g| lead(g).filter(|(p, _, _)| *p == pos).map(|(_, m, _)| m))
            .collect()
    }

    /// Buchberger's criterion: every S-vector reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                if let Some(s) = s_vector(&self.gens[i], &self.gens[j]) {
                    if !is_zero_vec(&reduce(&s, &self.gens)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether the basis is reduced: monic, and no term of a generator is
    /// divisible by the leading term of another generator.
    pub fn is_reduced(&self) -> bool {
        for (i, g) in self.gens.iter().enumerate() {
            if lead(g).is_none_or(|(_, _, c)| !c.is_one()) {
                return false;
            }
            for (j, h) in self.gens.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (hp, hm, _) = lead(h).expect("nonzero");
                if g[hp].terms().iter().any(|(m, _)| hm.divides(m)) {
                    return false;
                }
            }
        }
        true
    }
}

struct Pair {
    i: usize,
    j: usize,
    pos: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
pub fn buchberger(gens: &[Poly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(AlgebraError::InvalidInput("no generators given; ring unknown".into()));
    };
    let base = *first.ring();
    let ring = PolyRing::new(base.field, base.nvars, order);
    let mut vecs = Vec::with_capacity(gens.len());
    for g in gens {
        base.check_same(g.ring())?;
        vecs.push(vec![g.with_order(order)]);
    }
    buchberger_module(ring, 1, &vecs)
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger_module(ring: PolyRing, rank: usize, gens: &[PolyVec]) -> Result<GroebnerBasis> {
    let mut basis: Vec<PolyVec> = Vec::new();
    for g in gens {
        if g.len() != rank {
            return Err(mixed(format!("vector of length {} in rank {rank}", g.len())));
        }
        for p in g {
            ring.check_same(p.ring())?;
        }
        if !is_zero_vec(g) {
            basis.push(monic_vec(g));
        }
    }
    let order = ring.order;
    let mut pairs: Vec<Pair> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&mut pairs, &basis, i, j, rank);
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                cmp_pot(order, (pa.pos, &pa.lcm), (pb.pos, &pb.lcm)).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        let s = s_vector(&basis[pair.i], &basis[pair.j]).expect("same position");
        let r = reduce(&s, &basis);
        if is_zero_vec(&r) {
            continue;
        }
        basis.push(monic_vec(&r));
        let j = basis.len() - 1;
        for i in 0..j {
            push_pair(&mut pairs, &basis, i, j, rank);
        }
    }
    Ok(GroebnerBasis { ring, rank, gens: interreduce(order, basis) })
}

fn push_pair(pairs: &mut Vec<Pair>, basis: &[PolyVec], i: usize, j: usize, rank: usize) {
    let (pi, mi, _) = lead(&basis[i]).expect("nonzero");
    let (pj, mj, _) = lead(&basis[j]).expect("nonzero");
    if pi != pj {
        return;
    }
    // product criterion; only valid for ideals
    if rank == 1 && mi.is_coprime(mj) {
        return;
    }
    pairs.push(Pair { i, j, pos: pi, lcm: mi.lcm(mj) });
}

fn interreduce(order: MonomialOrder, basis: Vec<PolyVec>) -> Vec<PolyVec> {
    let leads: Vec<(usize, Monomial)> = basis
        .iter()
        .map(|g| {
            let (p, m, _) = lead(g).expect("nonzero");
            (p, m.clone())
        })
        .collect();
    let keep: Vec<usize> = (0..basis.len())
        .filter(|&i| {
            !(0..basis.len()).any(|j| {
                j != i
                    && leads[j].0 == leads[i].0
                    && leads[j].1.divides(&leads[i].1)
                    && (leads[j].1 != leads[i].1 || j < i)
            })
        })
        .collect();
    let minimal: Vec<PolyVec> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut reduced: Vec<PolyVec> = (0..minimal.len())
        .map(|i| {
            let others: Vec<PolyVec> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
            let (pos, m, c) = lead(&minimal[i]).expect("nonzero");
            // the leading term is irreducible by the others; reduce the tail only
            let lt = Poly::monomial(*minimal[i][pos].ring(), m.clone(), c.clone());
            let mut tail = minimal[i].clone();
            tail[pos] = tail[pos].sub(&lt);
            let mut out = reduce(&tail, &others);
            out[pos] = out[pos].add(&lt);
            monic_vec(&out)
        })
        .collect();
    reduced.sort_by(|a, b| {
        let (pa, ma, _) = lead(a).expect("nonzero");
        let (pb, mb, _) = lead(b).expect("nonzero");
        cmp_pot(order, (pb, mb), (pa, ma))
    });
    reduced
}

/// Gröbner data for the submodule spanned by the columns of a matrix, with
/// enough bookkeeping to express members in terms of the columns and to read
/// off the syzygies of the columns.
///
/// Column `j` of the `r×c` matrix `m` is stored as `(m_j ; e_j)` in rank
/// `r + c`; with the first `r` positions dominant, basis elements with a zero
/// top part generate the syzygies.
#[derive(Debug, Clone)]
pub struct ColumnSpan {
    rows: usize,
    cols: usize,
    ring: PolyRing,
    gb: GroebnerBasis,
}

impl ColumnSpan {
    pub fn new(m: &PolyMatrix) -> Result<Self> {
        let ring = *m.ring();
        let (r, c) = m.shape();
        let gens: Vec<PolyVec> = (0..c)
            .map(|j| {
                let mut v = m.column(j);
                v.extend((0..c).map(|k| if k == j { Poly::one(ring) } else { Poly::zero(ring) }));
                v
            })
            .collect();
        let gb = buchberger_module(ring, r + c, &gens)?;
        Ok(ColumnSpan { rows: r, cols: c, ring, gb })
    }

    /// Generators of `{v : m·v = 0}` as columns of a `c × s` matrix.
    pub fn syzygies(&self) -> PolyMatrix {
        let cols: Vec<PolyVec> = self
            .gb
            .gens()
            .iter()
            .filter(|g| g[..self.rows].iter().all(Poly::is_zero))
            .map(|g| g[self.rows..].to_vec())
            .collect();
        PolyMatrix::from_columns(self.ring, self.cols, &cols)
    }

    /// Coefficients `a` with `m·a = b`, or `None` when `b` is not in the span.
    pub fn lift(&self, b: &[Poly]) -> Result<Option<PolyVec>> {
        if b.len() != self.rows {
            return Err(mixed(format!("vector of length {} for {} rows", b.len(), self.rows)));
        }
        let mut v = b.to_vec();
        v.extend(zero_vec(self.ring, self.cols));
        let rem = self.gb.normal_form(&v)?;
        if !rem[..self.rows].iter().all(Poly::is_zero) {
            return Ok(None);
        }
        Ok(Some(rem[self.rows..].iter().map(Poly::neg).collect()))
    }

    /// Gröbner basis of the span itself (top parts only).
    pub fn span_basis(&self) -> Result<GroebnerBasis> {
        let tops: Vec<PolyVec> = self.gb.gens().iter().map(|g| g[..self.rows].to_vec()).collect();
        buchberger_module(self.ring, self.rows, &tops)
    }
}

/// Generators of the syzygy module of the columns of `m`.
pub fn syzygies(m: &PolyMatrix) -> Result<PolyMatrix> {
    Ok(ColumnSpan::new(m)?.syzygies())
}

/// Gröbner basis of the column span of `m` in `k[T₁..Tₙ]^rows`.
pub fn column_basis(m: &PolyMatrix) -> Result<GroebnerBasis> {
    buchberger_module(*m.ring(), m.rows(), &m.columns())
}

/// `F_len → … → F₁ → F₀`, with `maps[i]: F_{i+1} → F_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeResolution {
    pub ring: PolyRing,
    pub rank0: usize,
    pub maps: Vec<PolyMatrix>,
}

impl FreeResolution {
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `rank F₀, rank F₁, …`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![self.rank0];
        r.extend(self.maps.iter().map(PolyMatrix::cols));
        r
    }

    /// Map `F_i → F_{i−1}` for `i ≥ 1`.
    pub fn map(&self, i: usize) -> Option<&PolyMatrix> {
        i.checked_sub(1).and_then(|k| self.maps.get(k))
    }

    /// Checks that consecutive maps compose to zero and that the kernel of
    /// each map equals the image of the next, by mutual containment.
    pub fn is_exact(&self) -> Result<bool> {
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1]).is_zero() {
                return Ok(false);
            }
        }
        for (k, m) in self.maps.iter().enumerate() {
            let kernel = column_basis(&syzygies(m)?)?;
            let next = match self.maps.get(k + 1) {
                Some(n) => n.clone(),
                None => PolyMatrix::zeros(self.ring, m.cols(), 0),
            };
            let image = column_basis(&next)?;
            if !kernel.contains_columns(&next)? || !image.contains_columns(&syzygies(m)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Free resolution of a presented module, at most `max_length` maps long.
///
/// In one variable the first map is made injective through the Smith form,
/// so the resolution stops after one step.
pub fn free_resolution(p: &ModulePresentation, max_length: usize) -> Result<FreeResolution> {
    if max_length == 0 {
        return Err(AlgebraError::InvalidInput("max_length must be at least 1".into()));
    }
    let ring = *p.ring();
    let mut maps = Vec::new();
    let nonzero: Vec<usize> = (0..p.rels().cols()).filter(|&j| !is_zero_vec(&p.rels().column(j))).collect();
    let first = p.rels().select_columns(&nonzero);
    if first.cols() == 0 {
        return Ok(FreeResolution { ring, rank0: p.gens(), maps });
    }
    if ring.nvars == 1 {
        let snf = smith_normal_form(&first)?;
        let r = snf.diagonal().iter().filter(|d| !d.is_zero()).count();
        let cols: Vec<usize> = (0..r).collect();
        maps.push(first.mul(&snf.v.select_columns(&cols)));
        return Ok(FreeResolution { ring, rank0: p.gens(), maps });
    }
    maps.push(first);
    while maps.len() < max_length {
        let s = syzygies(maps.last().expect("nonempty"))?;
        if s.cols() == 0 {
            break;
        }
        if s.cols() > RANK_CAP {
            return Err(AlgebraError::SizeLimit(format!("syzygy module with {} generators", s.cols())));
        }
        maps.push(s);
    }
    Ok(FreeResolution { ring, rank0: p.gens(), maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn lex2() -> PolyRing {
        PolyRing::new(Field::Rationals, 2, MonomialOrder::Lex)
    }

    fn p(s: &str) -> Poly {
        Poly::parse(lex2(), s).unwrap()
    }

    #[test]
    fn single_generator() {
        let gb = buchberger(&[p("x")], MonomialOrder::Lex).unwrap();
        assert_eq!(gb.polys(), vec![p("x")]);
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let gb = buchberger(&[Poly::zero(lex2())], MonomialOrder::Lex).unwrap();
        assert!(gb.is_empty());
    }

    #[test]
    fn textbook_basis() {
        let gens = [p("x^2-y"), p("x*y-1")];
        let gb = buchberger(&gens, MonomialOrder::Lex).unwrap();
        assert_eq!(gb.polys(), vec![p("x-y^2"), p("y^3-1")]);
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.is_reduced());
        for g in &gens {
            assert!(gb.normal_form_poly(g).unwrap().is_zero());
        }
    }

    #[test]
    fn normal_form_examples() {
        let gb = buchberger(&[p("x^2-y"), p("x*y-1")], MonomialOrder::Lex).unwrap();
        assert_eq!(gb.normal_form_poly(&p("x^2")).unwrap(), p("y"));
        assert!(gb.normal_form_poly(&Poly::zero(lex2())).unwrap().is_zero());
        for g in gb.polys() {
            assert!(gb.normal_form_poly(&g).unwrap().is_zero());
        }
    }

    #[test]
    fn mixed_context_is_rejected() {
        let other = PolyRing::new(Field::Prime(5), 2, MonomialOrder::Lex);
        assert!(matches!(
            buchberger(&[p("x"), Poly::var(other, 0)], MonomialOrder::Lex),
            Err(AlgebraError::MixedContext(_))
        ));
    }

    #[test]
    fn syzygy_of_row_x_y() {
        let m = PolyMatrix::parse(lex2(), &[vec!["x", "y"]]).unwrap();
        let s = syzygies(&m).unwrap();
        assert_eq!(s.shape(), (2, 1));
        assert_eq!(s.column(0), vec![p("y"), p("-x")]);
        assert!(m.mul(&s).is_zero());
    }

    #[test]
    fn domains_have_no_rank_one_syzygies() {
        let m = PolyMatrix::parse(lex2(), &[vec!["x^2+y"]]).unwrap();
        assert_eq!(syzygies(&m).unwrap().cols(), 0);
        assert_eq!(syzygies(&PolyMatrix::identity(lex2(), 3)).unwrap().cols(), 0);
    }

    #[test]
    fn lift_recovers_coefficients() {
        let m = PolyMatrix::parse(lex2(), &[vec!["x", "y"]]).unwrap();
        let span = ColumnSpan::new(&m).unwrap();
        let b = vec![p("x^2+x*y+y^3")];
        let a = span.lift(&b).unwrap().unwrap();
        assert_eq!(m.apply(&a), b);
        assert!(span.lift(&[p("1")]).unwrap().is_none());
    }

    #[test]
    fn koszul_resolution_of_residue_field() {
        let m = PolyMatrix::parse(lex2(), &[vec!["x", "y"]]).unwrap();
        let k = ModulePresentation::new(1, m).unwrap();
        let res = free_resolution(&k, 5).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        assert!(res.is_exact().unwrap());
    }

    #[test]
    fn free_module_has_trivial_resolution() {
        let res = free_resolution(&ModulePresentation::free(lex2(), 2), 3).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(res.ranks(), vec![2]);
    }

    #[test]
    fn univariate_resolution_has_length_one() {
        let r = PolyRing::univariate(Field::Rationals);
        let m = PolyMatrix::parse(r, &[vec!["T^2"]]).unwrap();
        let res = free_resolution(&ModulePresentation::new(1, m.clone()).unwrap(), 4).unwrap();
        assert_eq!(res.maps, vec![m]);
        // redundant relations still give length one
        let m = PolyMatrix::parse(r, &[vec!["T^2", "T^3", "T"]]).unwrap();
        let res = free_resolution(&ModulePresentation::new(1, m).unwrap(), 4).unwrap();
        assert_eq!(res.ranks(), vec![1, 1]);
    }

    #[test]
    fn module_basis_over_two_positions() {
        let r = PolyRing::new(Field::Prime(101), 2, MonomialOrder::DegRevLex);
        let gens = vec![
            vec![Poly::parse(r, "x").unwrap(), Poly::parse(r, "y").unwrap()],
            vec![Poly::parse(r, "y").unwrap(), Poly::parse(r, "x").unwrap()],
        ];
        let gb = buchberger_module(r, 2, &gens).unwrap();
        assert!(gb.satisfies_buchberger_criterion());
        assert!(gb.is_reduced());
        for g in &gens {
            assert!(gb.contains(g).unwrap());
        }
    }
}
