//! Slow textbook algorithms used to cross-check the core library.
//!
//! Nothing here calls the Smith form, Gröbner or resolution code of the core
//! crate. Univariate work uses dense coefficient vectors with their own
//! arithmetic; multivariate division only borrows the polynomial type.

use loopspace_core::{Field, Matrix, Poly, PolyMatrix, Scalar};

/// Dense univariate polynomial, coefficients from degree 0 up, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dense {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Dense {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Dense { field, coeffs }
    }

    pub fn zero(field: Field) -> Self {
        Dense { field, coeffs: Vec::new() }
    }

    pub fn constant(field: Field, c: Scalar) -> Self {
        Dense::new(field, vec![c])
    }

    /// `T^k`.
    pub fn power_of_t(field: Field, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = field.one();
        Dense { field, coeffs }
    }

    /// From a univariate [`Poly`].
    pub fn from_poly(p: &Poly) -> Self {
        let field = p.field();
        let deg = p.degree().unwrap_or(0);
        let mut coeffs = vec![field.zero(); if p.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in p.terms() {
            coeffs[m.exps()[0] as usize] = c.clone();
        }
        Dense::new(field, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect();
        Dense::new(self.field, c)
    }

    pub fn neg(&self) -> Dense {
        Dense { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, o: &Dense) -> Dense {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        if self.is_zero() || o.is_zero() {
            return Dense::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Dense::new(self.field, c)
    }

    /// Long division; panics on a zero divisor.
    pub fn rem(&self, d: &Dense) -> Dense {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let k = r.len() - 1;
            let q = &r[k] * &lead_inv;
            if !q.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    r[k - dd + i] = &r[k - dd + i] - &(&q * c);
                }
            }
            r.pop();
            while r.last().is_some_and(Scalar::is_zero) {
                r.pop();
            }
        }
        Dense::new(self.field, r)
    }

    pub fn monic(&self) -> Dense {
        match self.coeffs.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("nonzero leading coefficient");
                Dense { field: self.field, coeffs: self.coeffs.iter().map(|c| c * &inv).collect() }
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm (zero for `gcd(0, 0)`).
    pub fn gcd(&self, o: &Dense) -> Dense {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, o: &Dense) -> bool {
        if self.is_zero() {
            return o.is_zero();
        }
        o.rem(self).is_zero()
    }

    pub fn is_nonzero_constant(&self) -> bool {
        self.coeffs.len() == 1
    }
}

/// Square matrix of dense polynomials, row-major.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Dense>,
}

impl DenseMatrix {
    pub fn from_poly_matrix(m: &PolyMatrix) -> Self {
        DenseMatrix { rows: m.rows(), cols: m.cols(), data: m.entries().iter().map(Dense::from_poly).collect() }
    }

    /// `T·I − A`.
    pub fn characteristic(a: &Matrix) -> Self {
        let (n, field) = (a.rows(), a.field());
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let c = Dense::constant(field, -a.get(i, j));
                data.push(if i == j { c.add(&Dense::power_of_t(field, 1)) } else { c });
            }
        }
        DenseMatrix { rows: n, cols: n, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Dense {
        &self.data[i * self.cols + j]
    }

    /// Determinant of the submatrix on the given rows and columns, by
    /// cofactor expansion along its first row.
    pub fn minor(&self, field: Field, rows: &[usize], cols: &[usize]) -> Dense {
        match rows.len() {
            0 => Dense::constant(field, field.one()),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Dense::zero(field);
                for (k, &c) in cols.iter().enumerate() {
                    let e = self.get(rows[0], c);
                    if e.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = e.mul(&self.minor(field, &rows[1..], &rest));
                    acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    pub fn determinant(&self, field: Field) -> Dense {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor(field, &idx, &idx)
    }

    /// Monic gcd of all `k×k` minors (`1` for `k = 0`).
    pub fn minors_gcd(&self, field: Field, k: usize) -> Dense {
        let mut g = Dense::zero(field);
        for rows in choose(self.rows, k) {
            for cols in choose(self.cols, k) {
                g = g.gcd(&self.minor(field, &rows, &cols));
                if g.is_nonzero_constant() {
                    return g;
                }
            }
        }
        if k == 0 {
            Dense::constant(field, field.one())
        } else {
            g
        }
    }

    /// Invariant factors from determinantal divisors `D_k / D_{k−1}`,
    /// unit factors dropped, zeros kept for the free part.
    pub fn invariant_factors(&self, field: Field) -> Vec<Dense> {
        let mut out = Vec::new();
        let mut prev = Dense::constant(field, field.one());
        for k in 1..=self.rows.min(self.cols) {
            let d = self.minors_gcd(field, k);
            if d.is_zero() {
                out.push(Dense::zero(field));
                continue;
            }
            let q = quotient(&d, &prev);
            if !q.is_nonzero_constant() {
                out.push(q.monic());
            }
            prev = d;
        }
        out
    }
}

/// Exact quotient `a / b` for `b | a`.
fn quotient(a: &Dense, b: &Dense) -> Dense {
    let field = a.field;
    let db = b.degree().expect("nonzero divisor");
    let inv = b.coeffs[db].inv().expect("nonzero leading coefficient");
    let mut r = a.coeffs.clone();
    let mut q = vec![field.zero(); r.len().saturating_sub(db)];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let c = &r[k] * &inv;
        q[k - db] = c.clone();
        for (i, e) in b.coeffs.iter().enumerate() {
            r[k - db + i] = &r[k - db + i] - &(&c * e);
        }
        r.pop();
    }
    Dense::new(field, q)
}

/// `k`-element subsets of `0..n` in lexicographic order.
pub fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors of `k[T]^d` modulo the columns of `T·I − A`, i.e. of the
/// module where `T` acts by `A`.
pub fn tuple_invariant_factors(a: &Matrix) -> Vec<Dense> {
    DenseMatrix::characteristic(a).invariant_factors(a.field())
}

/// `dim Hom = dim Ext¹ = dim Tor₀ = dim Tor₁` between torsion `k[T]`-modules
/// with the given invariant factors: `Σ deg gcd(aᵢ, bⱼ)`.
pub fn gcd_pairing(a: &[Dense], b: &[Dense]) -> usize {
    a.iter().flat_map(|f| b.iter().map(move |g| f.gcd(g).degree().unwrap_or(0))).sum()
}

/// Remainder of `f` on division by `gs`, by the textbook algorithm: cancel the
/// leading term with the first divisor whose leading monomial divides it,
/// otherwise move it to the remainder.
pub fn divide(f: &Poly, gs: &[Poly]) -> Poly {
    let ring = *f.ring();
    let mut p = f.clone();
    let mut r = Poly::zero(ring);
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        let hit = gs.iter().find_map(|g| {
            let (gm, gc) = g.leading_term()?;
            let q = m.div(gm)?;
            Some((g, q, &c * &gc.inv().expect("nonzero leading coefficient")))
        });
        match hit {
            Some((g, q, coef)) => p = p.sub(&g.mul_term(&q, &coef)),
            None => {
                let lt = Poly::monomial(ring, m, c);
                r = r.add(&lt);
                p = p.sub(&lt);
            }
        }
    }
    r
}

/// `lcm/LT(f)·f − lcm/LT(g)·g`.
pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let (Some((fm, fc)), Some((gm, gc))) = (f.leading_term(), g.leading_term()) else {
        return Poly::zero(*f.ring());
    };
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).expect("lcm"), &fc.inv().expect("nonzero"));
    let b = g.mul_term(&l.div(gm).expect("lcm"), &gc.inv().expect("nonzero"));
    a.sub(&b)
}

/// Every S-polynomial of `gs` leaves remainder zero.
pub fn s_pairs_reduce_to_zero(gs: &[Poly]) -> bool {
    (0..gs.len()).all(|i| (i + 1..gs.len()).all(|j| divide(&s_polynomial(&gs[i], &gs[j]), gs).is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopspace_core::{MonomialOrder, PolyRing};

    const F: Field = Field::Prime(101);

    fn d(cs: &[i64]) -> Dense {
        Dense::new(F, cs.iter().map(|&c| F.from_i64(c)).collect())
    }

    #[test]
    fn euclid_on_known_gcd() {
        // (T−1)(T−2) and (T−1)(T+3)
        let a = d(&[2, -3, 1]);
        let b = d(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), d(&[-1, 1]));
        assert_eq!(a.rem(&d(&[-1, 1])), Dense::zero(F));
    }

    #[test]
    fn jordan_block_has_one_invariant_factor() {
        let a = Matrix::from_i64(F, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(tuple_invariant_factors(&a), vec![Dense::power_of_t(F, 3)]);
        let z = Matrix::zeros(F, 2, 2);
        assert_eq!(tuple_invariant_factors(&z), vec![d(&[0, 1]), d(&[0, 1])]);
    }

    #[test]
    fn determinant_by_cofactors() {
        let ring = PolyRing::univariate(F);
        let m = PolyMatrix::parse(ring, &[vec!["T", "1"], vec!["0", "T"]]).unwrap();
        let dm = DenseMatrix::from_poly_matrix(&m);
        assert_eq!(dm.determinant(F), Dense::power_of_t(F, 2));
        assert_eq!(dm.minors_gcd(F, 1), d(&[1]));
    }

    #[test]
    fn textbook_division_and_s_pairs() {
        let ring = PolyRing::new(F, 2, MonomialOrder::Lex);
        let p = |s: &str| Poly::parse(ring, s).unwrap();
        assert!(divide(&p("x^2*y - y"), &[p("x^2 - 1")]).is_zero());
        assert!(!s_pairs_reduce_to_zero(&[p("x^2 - y"), p("x*y - 1")]));
        assert!(s_pairs_reduce_to_zero(&[p("x - y^2"), p("y^3 - 1")]));
    }
}
