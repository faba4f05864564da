//! Multivariate polynomials over a [`Field`] with a fixed monomial order.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{mixed, AlgebraError, Result};
use crate::field::{Field, Scalar};

/// Exponent vector; variable `0` has the highest priority.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term order with variable priority `T₁ > T₂ > … > Tₙ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// `k[T₁..Tₙ]` together with the order used to sort terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub field: Field,
    pub nvars: usize,
    pub order: MonomialOrder,
}

impl PolyRing {
    /// In at most one variable every order is the same, so it is normalized
    /// to `DegRevLex`; this keeps univariate data comparable.
    pub fn new(field: Field, nvars: usize, order: MonomialOrder) -> Self {
        let order = if nvars <= 1 { MonomialOrder::DegRevLex } else { order };
        PolyRing { field, nvars, order }
    }

    /// `k[T]`; both orders coincide in one variable.
    pub fn univariate(field: Field) -> Self {
        PolyRing::new(field, 1, MonomialOrder::DegRevLex)
    }

    pub fn check_same(&self, other: &PolyRing) -> Result<()> {
        if self != other {
            return Err(mixed(format!(
                "{}[{} vars, {:?}] vs {}[{} vars, {:?}]",
                self.field, self.nvars, self.order, other.field, other.nvars, other.order
            )));
        }
        Ok(())
    }

    pub fn var_names(&self) -> Vec<String> {
        match self.nvars {
            1 => vec!["T".to_string()],
            2 | 3 => ["x", "y", "z"][..self.nvars].iter().map(|s| s.to_string()).collect(),
            n => (1..=n).map(|i| format!("T{i}")).collect(),
        }
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.var_names().iter().position(|v| v == name) {
            return Some(i);
        }
        if let Some(i) = ["x", "y", "z"].iter().position(|v| *v == name) {
            return (i < self.nvars).then_some(i);
        }
        if name == "T" && self.nvars == 1 {
            return Some(0);
        }
        let i: usize = name.strip_prefix('T')?.parse().ok()?;
        (1..=self.nvars).contains(&i).then(|| i - 1)
    }
}

/// A polynomial; terms are sorted in decreasing order under `ring.order` and
/// carry nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: PolyRing,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(ring: PolyRing) -> Self {
        Poly { ring, terms: Vec::new() }
    }

    pub fn one(ring: PolyRing) -> Self {
        Poly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: PolyRing, c: Scalar) -> Self {
        Poly::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn var(ring: PolyRing, i: usize) -> Self {
        Poly::monomial(ring, Monomial::var(ring.nvars, i), ring.field.one())
    }

    pub fn monomial(ring: PolyRing, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars);
        if c.is_zero() {
            return Poly::zero(ring);
        }
        Poly { ring, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: PolyRing, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        let order = ring.order;
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { ring, terms: out }
    }

    /// Univariate polynomial from coefficients in increasing degree.
    pub fn from_coeffs(field: Field, coeffs: &[Scalar]) -> Self {
        let ring = PolyRing::univariate(field);
        Poly::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())),
        )
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Coefficient of `m`, zero when absent.
    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Degree of a univariate polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.total_degree().map(|d| d as usize)
    }

    /// The same polynomial sorted under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Poly {
        let ring = PolyRing::new(self.ring.field, self.ring.nvars, order);
        Poly::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c·m·self`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        // multiplication by a monomial preserves the term order
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.ring.check_same(&other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    /// Sum; panics on mixed rings (use [`Poly::try_add`] on untrusted data).
    pub fn add(&self, other: &Poly) -> Poly {
        self.try_add(other).expect("polynomials from the same ring")
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.try_sub(other).expect("polynomials from the same ring")
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.try_mul(other).expect("polynomials from the same ring")
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn merge(&self, other: &Poly, subtract: bool) -> Poly {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => order.compare(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if subtract { -c } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if subtract { a - b } else { a + b };
                    if !c.is_zero() {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { ring: self.ring, terms: out }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring);
        }
        let mut acc = Poly::zero(self.ring);
        for (m, c) in &other.terms {
            acc = acc.merge(&self.mul_term(m, c), false);
        }
        acc
    }

    /// Euclidean division in `k[T]`: `self = q·b + r` with `deg r < deg b`.
    pub fn divmod_univariate(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.ring.check_same(&b.ring)?;
        if self.ring.nvars != 1 {
            return Err(AlgebraError::NotUnivariate);
        }
        let (bm, bc) = b.leading_term().ok_or(AlgebraError::DivisionByZeroPoly)?;
        let binv = bc.inv().expect("nonzero leading coefficient");
        let mut q = Poly::zero(self.ring);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading_term() {
            let Some(shift) = rm.div(bm) else { break };
            let c = rc * &binv;
            r = r.sub(&b.mul_term(&shift, &c));
            q = q.add(&Poly::monomial(self.ring, shift, c));
        }
        Ok((q, r))
    }

    /// One division step: cancels the largest term of `self` divisible by the
    /// leading monomial of `b`. Returns `None` when no term is divisible.
    pub fn reduce_step(&self, b: &Poly) -> Result<Option<Poly>> {
        self.ring.check_same(&b.ring)?;
        let (bm, bc) = b.leading_term().ok_or(AlgebraError::DivisionByZeroPoly)?;
        for (m, c) in &self.terms {
            if let Some(shift) = m.div(bm) {
                let coef = c * &bc.inv().expect("nonzero");
                return Ok(Some(self.sub(&b.mul_term(&shift, &coef))));
            }
        }
        Ok(None)
    }

    /// Monic gcd in `k[T]`; `gcd(0, 0) = 0`.
    pub fn gcd_univariate(&self, other: &Poly) -> Result<Poly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod_univariate(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Parses the canonical textual form, e.g. `"x^2*y-3/2*y+1"`.
    pub fn parse(ring: PolyRing, s: &str) -> Result<Poly> {
        Parser { ring, src: s.as_bytes(), pos: 0 }.poly()
    }
}

impl fmt::Display for Poly {
    /// Terms in decreasing order, explicit `*` and `^`, coefficient `1` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.var_names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(names[i].clone()),
                    _ => parts.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    ring: PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> AlgebraError {
        AlgebraError::InvalidInput(format!(
            "polynomial {:?}: {what} at byte {}",
            String::from_utf8_lossy(self.src),
            self.pos
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty input")),
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn digits(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("")
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits().to_string();
                let text = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let den = self.digits();
                    if den.is_empty() {
                        return Err(self.err("missing denominator"));
                    }
                    format!("{num}/{den}")
                } else {
                    num
                };
                let c = self.ring.field.parse_scalar(&text).map_err(|_| self.err("bad number"))?;
                if c.is_zero() {
                    return Ok(Poly::zero(self.ring));
                }
                Ok(Poly::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                let i = self.ring.var_index(name).ok_or_else(|| self.err("unknown variable"))?;
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.digits().parse().map_err(|_| self.err("bad exponent"))?;
                }
                let mut exps = vec![0; self.ring.nvars];
                exps[i] = e;
                Ok(Poly::monomial(self.ring, Monomial::new(exps), self.ring.field.one()))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly_until_paren()?;
                Ok(inner)
            }
            _ => Err(self.err("expected a number or a variable")),
        }
    }

    fn poly_until_paren(&mut self) -> Result<Poly> {
        let start = self.pos;
        let mut depth = 1;
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        if depth != 0 {
            return Err(self.err("unbalanced parenthesis"));
        }
        let inner = &self.src[start..self.pos];
        self.pos += 1;
        Parser { ring: self.ring, src: inner, pos: 0 }.poly()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q1() -> PolyRing {
        PolyRing::univariate(Field::Rationals)
    }

    fn p(ring: PolyRing, s: &str) -> Poly {
        Poly::parse(ring, s).unwrap()
    }

    #[test]
    fn multiplying_by_one_is_identity() {
        let r = PolyRing::new(Field::Rationals, 2, MonomialOrder::DegRevLex);
        let x = Poly::var(r, 0);
        assert_eq!(x.mul(&Poly::one(r)), x);
    }

    #[test]
    fn divmod_difference_of_squares() {
        let (q, r) = p(q1(), "T^2-1").divmod_univariate(&p(q1(), "T-1")).unwrap();
        assert_eq!(q, p(q1(), "T+1"));
        assert!(r.is_zero());
    }

    #[test]
    fn additive_inverse_is_empty() {
        let f = p(q1(), "3*T^4-1/2*T+7");
        assert!(f.add(&f.neg()).terms().is_empty());
    }

    #[test]
    fn division_by_zero_and_mixed_context() {
        let f = p(q1(), "T");
        assert_eq!(
            f.divmod_univariate(&Poly::zero(q1())),
            Err(AlgebraError::DivisionByZeroPoly)
        );
        let other = PolyRing::univariate(Field::Prime(7));
        assert!(matches!(f.try_add(&Poly::var(other, 0)), Err(AlgebraError::MixedContext(_))));
        let two = PolyRing::new(Field::Rationals, 2, MonomialOrder::Lex);
        assert_eq!(
            Poly::var(two, 0).divmod_univariate(&Poly::var(two, 1)),
            Err(AlgebraError::NotUnivariate)
        );
    }

    #[test]
    fn canonical_strings() {
        let f101 = PolyRing::univariate(Field::Prime(101));
        assert_eq!(p(f101, "T^2-T").to_string(), "T^2+100*T");
        let lex = PolyRing::new(Field::Prime(101), 2, MonomialOrder::Lex);
        assert_eq!(p(lex, "-y^2+x").to_string(), "x+100*y^2");
        assert_eq!(p(q1(), "-T+1/2").to_string(), "-T+1/2");
        assert_eq!(p(q1(), "0").to_string(), "0");
        assert_eq!(p(q1(), "(T-1)*(T+1)").to_string(), "T^2-1");
    }

    #[test]
    fn degrevlex_orders_by_degree_then_reverse_lex() {
        let r = PolyRing::new(Field::Rationals, 3, MonomialOrder::DegRevLex);
        // x*z < y^2 in degrevlex, x*z > y^2 in lex
        let f = p(r, "x*z+y^2");
        assert_eq!(f.leading_monomial().unwrap().exps(), &[0, 2, 0]);
        let f = f.with_order(MonomialOrder::Lex);
        assert_eq!(f.leading_monomial().unwrap().exps(), &[1, 0, 1]);
    }

    #[test]
    fn reduce_step_cancels_divisible_term() {
        let r = PolyRing::new(Field::Rationals, 2, MonomialOrder::Lex);
        let g = p(r, "x-y^2");
        let f = p(r, "x^2");
        let once = f.reduce_step(&g).unwrap().unwrap();
        assert_eq!(once, p(r, "x*y^2"));
        assert_eq!(p(r, "y").reduce_step(&g).unwrap(), None);
    }

    #[test]
    fn gcd_is_monic() {
        let g = p(q1(), "2*T^3-2*T").gcd_univariate(&p(q1(), "3*T^2-3")).unwrap();
        assert_eq!(g, p(q1(), "T^2-1"));
    }
}
