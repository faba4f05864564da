//! Smith normal form over `k[T]` and invariant factors of `k[T]`-modules.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{mixed, AlgebraError, Result};
use crate::poly::Poly;
use crate::polymatrix::PolyMatrix;
use crate::polymods::ModulePresentation;

/// Largest accepted matrix side and entry degree.
pub const SIZE_LIMIT: usize = 64;

/// `u·m·v = d` with `u`, `v` invertible over `k[T]` and `d` diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
}

impl SnfResult {
    /// Diagonal entries `d₁ | d₂ | …` (zeros included, `min(rows, cols)` of them).
    pub fn diagonal(&self) -> Vec<Poly> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// `k[T]^free_rank ⊕ ⊕ᵢ k[T]/(fᵢ)` with monic non-unit `f₁ | f₂ | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantFactorForm {
    pub free_rank: usize,
    pub factors: Vec<Poly>,
}

impl InvariantFactorForm {
    /// Dimension over `k`, `None` when there is a free summand.
    pub fn dimension(&self) -> Option<usize> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.factors.iter().map(|f| f.degree().unwrap_or(0)).sum())
    }
}

fn check_univariate(m: &PolyMatrix) -> Result<()> {
    if m.ring().nvars != 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    if m.rows() > SIZE_LIMIT || m.cols() > SIZE_LIMIT {
        return Err(AlgebraError::SizeLimit(format!("{}x{} matrix", m.rows(), m.cols())));
    }
    if m.max_degree().unwrap_or(0) as usize > SIZE_LIMIT {
        return Err(AlgebraError::SizeLimit("entry degree above 64".into()));
    }
    Ok(())
}

/// Smith normal form by unimodular row and column operations.
///
/// The pivot is a nonzero entry of minimal degree in the active submatrix,
/// ties broken by the smallest `(row, col)`.
pub fn smith_normal_form(m: &PolyMatrix) -> Result<SnfResult> {
    check_univariate(m)?;
    let ring = *m.ring();
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = PolyMatrix::identity(ring, rows);
    let mut v = PolyMatrix::identity(ring, cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = min_degree_entry(&a, t) else {
                break;
            };
            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            a.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = a.get(i, t).divmod_univariate(&pivot)?;
                let q = q.neg();
                a.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= r.is_zero();
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = a.get(t, j).divmod_univariate(&pivot)?;
                let q = q.neg();
                a.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the active block
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    let e = a.get(i, j);
                    if !e.is_zero() && !e.divmod_univariate(&pivot)?.1.is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = Poly::one(ring);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
    }

    for t in 0..rows.min(cols) {
        if let Some(c) = a.get(t, t).leading_coeff() {
            if !c.is_one() {
                let s = Poly::constant(ring, c.inv().expect("nonzero"));
                a.scale_row(t, &s);
                u.scale_row(t, &s);
            }
        }
    }
    Ok(SnfResult { u, d: a, v })
}

fn min_degree_entry(a: &PolyMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            if let Some(d) = a.get(i, j).degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Invariant factors read off the Smith form of the relation matrix.
pub fn invariant_factors(p: &ModulePresentation) -> Result<InvariantFactorForm> {
    let snf = smith_normal_form(p.rels())?;
    let diag = snf.diagonal();
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    let factors = diag.into_iter().filter(|d| !d.is_zero() && !d.is_unit()).collect();
    Ok(InvariantFactorForm { free_rank: p.gens() - nonzero, factors })
}

pub fn is_isomorphic_univariate(p: &ModulePresentation, q: &ModulePresentation) -> Result<bool> {
    if p.ring().nvars != 1 || q.ring().nvars != 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    if p.ring().field != q.ring().field {
        return Err(mixed(format!("{} vs {}", p.ring().field, q.ring().field)));
    }
    Ok(invariant_factors(p)? == invariant_factors(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::PolyRing;
    use alloc::vec;

    fn ring() -> PolyRing {
        PolyRing::univariate(Field::Rationals)
    }

    fn pm(rows: &[&[&str]]) -> PolyMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        PolyMatrix::parse(ring(), &rows).unwrap()
    }

    fn pres(rows: &[&[&str]]) -> ModulePresentation {
        let m = pm(rows);
        ModulePresentation::new(m.rows(), m).unwrap()
    }

    fn certify(m: &PolyMatrix, s: &SnfResult) {
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
    }

    #[test]
    fn zero_matrix() {
        let m = PolyMatrix::zeros(ring(), 2, 3);
        let s = smith_normal_form(&m).unwrap();
        assert!(s.d.is_zero());
        assert_eq!(s.u, PolyMatrix::identity(ring(), 2));
        assert_eq!(s.v, PolyMatrix::identity(ring(), 3));
    }

    #[test]
    fn identity_matrix() {
        let m = PolyMatrix::identity(ring(), 3);
        assert_eq!(smith_normal_form(&m).unwrap().d, m);
    }

    #[test]
    fn jordan_type_matrix() {
        let m = pm(&[&["T", "1"], &["0", "T"]]);
        let s = smith_normal_form(&m).unwrap();
        certify(&m, &s);
        assert_eq!(s.diagonal(), vec![Poly::one(ring()), Poly::parse(ring(), "T^2").unwrap()]);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(T-1, T-2) is diagonal but not in Smith form
        let m = pm(&[&["T-1", "0"], &["0", "T-2"]]);
        let s = smith_normal_form(&m).unwrap();
        certify(&m, &s);
        assert_eq!(s.diagonal(), vec![Poly::one(ring()), Poly::parse(ring(), "T^2-3*T+2").unwrap()]);
    }

    #[test]
    fn invariant_factor_examples() {
        let f = invariant_factors(&pres(&[&["T"]])).unwrap();
        assert_eq!(f, InvariantFactorForm { free_rank: 0, factors: vec![Poly::var(ring(), 0)] });
        let free = ModulePresentation::free(ring(), 1);
        assert_eq!(invariant_factors(&free).unwrap(), InvariantFactorForm { free_rank: 1, factors: vec![] });
        let j = invariant_factors(&pres(&[&["T", "-1"], &["0", "T"]])).unwrap();
        assert_eq!(j.factors, vec![Poly::parse(ring(), "T^2").unwrap()]);
        assert_eq!(j.free_rank, 0);
    }

    #[test]
    fn isomorphism_decisions() {
        let a = pres(&[&["T", "-1"], &["0", "T"]]);
        let b = pres(&[&["T^2"]]);
        assert!(is_isomorphic_univariate(&a, &a).unwrap());
        assert!(is_isomorphic_univariate(&a, &b).unwrap());
        let t = pres(&[&["T"]]);
        assert!(!is_isomorphic_univariate(&t, &ModulePresentation::free(ring(), 1)).unwrap());
        let other = ModulePresentation::free(PolyRing::univariate(Field::Prime(7)), 1);
        assert!(matches!(is_isomorphic_univariate(&t, &other), Err(AlgebraError::MixedContext(_))));
    }

    #[test]
    fn rejects_multivariate_and_oversized() {
        let r2 = PolyRing::new(Field::Rationals, 2, crate::poly::MonomialOrder::Lex);
        assert_eq!(smith_normal_form(&PolyMatrix::identity(r2, 1)), Err(AlgebraError::NotUnivariate));
        let big = PolyMatrix::from_fn(ring(), 1, 1, |_, _| Poly::parse(ring(), "T^65").unwrap());
        assert!(matches!(smith_normal_form(&big), Err(AlgebraError::SizeLimit(_))));
    }
}
