//! Exact Laurent polynomials and rational functions, monomial maps, and sampled checks of
//! birational equivalences between hypersurface families in tori.

mod families;

pub use families::{
    sample_on_family, verify_factored_identity, verify_theorem, Family, FamilySample, Identity, IdentityVerdict,
    Theorem, TheoremReport, Witness,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{fmt_rational, to_rational, LatticeMatrix, Rational};

/// An ordered list of variable names shared by the polynomials built over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Arc<Vec<String>>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Ring {
        Ring { vars: Arc::new(vars.iter().map(|s| s.as_ref().to_string()).collect()) }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn zero(&self) -> LaurentPoly {
        LaurentPoly { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(&self, c: Rational) -> LaurentPoly {
        self.monomial(vec![0; self.len()], c)
    }

    pub fn monomial(&self, exponents: Vec<i64>, c: Rational) -> LaurentPoly {
        assert_eq!(exponents.len(), self.len(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        LaurentPoly { ring: self.clone(), terms }
    }

    pub fn var(&self, name: &str) -> Result<LaurentPoly> {
        let i = self.index(name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
        let mut e = vec![0; self.len()];
        e[i] = 1;
        Ok(self.monomial(e, Rational::one()))
    }

    /// Parses `+ - * / ^`, parentheses, integers and variable names. Exponents are integers.
    pub fn parse(&self, s: &str) -> Result<RationalFn> {
        let mut p = Parser { ring: self, src: s.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("unexpected input at {} in {s:?}", p.pos)));
        }
        Ok(e)
    }
}

/// A finite sum of monomials with integer exponents and rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentPoly {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check(&self, other: &LaurentPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::Parse(format!("variables {:?} and {:?} differ", self.ring.vars, other.ring.vars)));
        }
        Ok(())
    }

    fn insert(terms: &mut BTreeMap<Vec<i64>, Rational>, e: Vec<i64>, c: Rational) {
        match terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert(&mut terms, e.clone(), c.clone());
        }
        Ok(LaurentPoly { ring: self.ring.clone(), terms })
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                Self::insert(&mut terms, e, ca * cb);
            }
        }
        Ok(LaurentPoly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, k: &Rational) -> LaurentPoly {
        if k.is_zero() {
            return self.ring.zero();
        }
        LaurentPoly { ring: self.ring.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect() }
    }

    /// Nonnegative powers of any polynomial; negative powers of monomials.
    pub fn pow(&self, k: i64) -> Result<LaurentPoly> {
        if k < 0 {
            let inv = self.monomial_inverse().ok_or(Error::DivisionByZero)?;
            return inv.pow(-k);
        }
        let mut out = self.ring.constant(Rational::one());
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    fn as_monomial(&self) -> Option<(&Vec<i64>, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn monomial_inverse(&self) -> Option<LaurentPoly> {
        let (e, c) = self.as_monomial()?;
        Some(self.ring.monomial(e.iter().map(|x| -x).collect(), c.recip()))
    }

    /// Indices of the variables that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ring.len()).filter(|&i| self.terms.keys().any(|e| e[i] != 0)).collect()
    }

    /// Evaluation at a point; coordinates with a negative exponent somewhere must be nonzero.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.ring.len() {
            return Err(Error::DimensionMismatch { expected: self.ring.len(), found: point.len() });
        }
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                t *= pow_rational(x, k);
            }
            total += t;
        }
        Ok(total)
    }

    /// Replaces variable `i` by `images[i]`, a rational function over another ring.
    pub fn substitute(&self, images: &[RationalFn]) -> Result<RationalFn> {
        if images.len() != self.ring.len() {
            return Err(Error::DimensionMismatch { expected: self.ring.len(), found: images.len() });
        }
        let target = images.first().map(|f| f.ring().clone()).ok_or(Error::Empty)?;
        let mut total = RationalFn::from_poly(target.zero());
        for (e, c) in &self.terms {
            let mut t = RationalFn::from_poly(target.constant(c.clone()));
            for (img, &k) in images.iter().zip(e) {
                if k != 0 {
                    t = t.mul(&img.pow(k)?)?;
                }
            }
            total = total.add(&t)?;
        }
        Ok(total)
    }
}

fn pow_rational(x: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(x.clone(), k as usize)
    } else {
        num_traits::pow(x.recip(), (-k) as usize)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.ring.vars.iter())
                .filter(|(k, _)| **k != 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i > 0 || sign == "-" {
                write!(f, "{}{sign}{}", if i > 0 { " " } else { "" }, if i > 0 { " " } else { "" })?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{}", fmt_rational(&mag))?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{}*{}", fmt_rational(&mag), mono.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A quotient of Laurent polynomials. Monomial denominators are folded into the numerator.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn from_poly(p: LaurentPoly) -> RationalFn {
        let den = p.ring.constant(Rational::one());
        RationalFn { num: p, den }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<RationalFn> {
        num.check(&den)?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFn { num, den }.normalized())
    }

    fn normalized(self) -> RationalFn {
        match self.den.monomial_inverse() {
            Some(inv) => {
                let num = self.num.mul(&inv).expect("same ring");
                let den = self.num.ring.constant(Rational::one());
                RationalFn { num, den }
            }
            None => self,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.num.ring
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RationalFn) -> Result<RationalFn> {
        if self.den == o.den {
            return RationalFn::new(self.num.add(&o.num)?, self.den.clone());
        }
        RationalFn::new(self.num.mul(&o.den)?.add(&o.num.mul(&self.den)?)?, self.den.mul(&o.den)?)
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &RationalFn) -> Result<RationalFn> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFn) -> Result<RationalFn> {
        RationalFn::new(self.num.mul(&o.num)?, self.den.mul(&o.den)?)
    }

    pub fn recip(&self) -> Result<RationalFn> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn> {
        self.mul(&o.recip()?)
    }

    pub fn pow(&self, k: i64) -> Result<RationalFn> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut out = RationalFn::from_poly(self.ring().constant(Rational::one()));
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base)?;
        }
        Ok(out)
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, o: &RationalFn) -> Result<bool> {
        Ok(self.num.mul(&o.den)? == o.num.mul(&self.den)?)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    pub fn substitute(&self, images: &[RationalFn]) -> Result<RationalFn> {
        self.num.substitute(images)?.div(&self.den.substitute(images)?)
    }

    /// Names of the variables the function depends on syntactically.
    pub fn support(&self) -> Vec<String> {
        let mut idx = self.num.support();
        idx.extend(self.den.support());
        idx.sort();
        idx.dedup();
        idx.into_iter().map(|i| self.ring().vars[i].clone()).collect()
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_monomial().is_some_and(|(e, c)| c.is_one() && e.iter().all(|&k| k == 0)) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {}", self.pos))
    }

    fn expr(&mut self) -> Result<RationalFn> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { acc.add(&t)? } else { acc.sub(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFn> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let t = self.unary()?;
            acc = if c == b'*' { acc.mul(&t)? } else { acc.div(&t)? };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFn> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = self.integer()?;
            let k: i64 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return base.pow(if neg { -k } else { k });
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").parse().map_err(|_| self.err("bad integer"))
    }

    fn atom(&mut self) -> Result<RationalFn> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RationalFn::from_poly(self.ring.constant(to_rational(&n))))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(RationalFn::from_poly(self.ring.var(name)?))
            }
            _ => Err(self.err("expected a number, variable or '('")),
        }
    }
}

/// A torus map whose coordinates are monomials: target `i` is the product over source `j` of
/// `source_j ^ exponents[i][j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub source: Ring,
    pub target: Ring,
    pub exponents: LatticeMatrix,
}

impl MonomialMap {
    pub fn new(source: Ring, target: Ring, exponents: LatticeMatrix) -> Result<MonomialMap> {
        if exponents.ncols() != source.len() {
            return Err(Error::DimensionMismatch { expected: source.len(), found: exponents.ncols() });
        }
        if exponents.nrows() != target.len() {
            return Err(Error::DimensionMismatch { expected: target.len(), found: exponents.nrows() });
        }
        Ok(MonomialMap { source, target, exponents })
    }

    pub fn identity(ring: Ring) -> MonomialMap {
        let n = ring.len();
        MonomialMap { source: ring.clone(), target: ring, exponents: LatticeMatrix::identity(n) }
    }

    fn exponent(&self, i: usize, j: usize) -> Result<i64> {
        num_traits::ToPrimitive::to_i64(self.exponents.get(i, j)).ok_or_else(|| Error::Parse("exponent overflow".into()))
    }

    /// The image of a torus point; every source coordinate must be nonzero.
    pub fn pullback_point(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        if point.len() != self.source.len() {
            return Err(Error::DimensionMismatch { expected: self.source.len(), found: point.len() });
        }
        if let Some(j) = point.iter().position(Zero::is_zero) {
            return Err(Error::NotTorusPoint(format!("{} = 0", self.source.vars()[j])));
        }
        (0..self.target.len())
            .map(|i| {
                let mut v = Rational::one();
                for (j, x) in point.iter().enumerate() {
                    v *= pow_rational(x, self.exponent(i, j)?);
                }
                Ok(v)
            })
            .collect()
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &MonomialMap) -> Result<MonomialMap> {
        if first.target != self.source {
            return Err(Error::Parse("composed maps do not share a torus".into()));
        }
        MonomialMap::new(first.source.clone(), self.target.clone(), self.exponents.mul(&first.exponents)?)
    }

    /// The target coordinates as monomials in the source coordinates.
    pub fn coordinate_functions(&self) -> Result<Vec<RationalFn>> {
        (0..self.target.len())
            .map(|i| {
                let e = (0..self.source.len()).map(|j| self.exponent(i, j)).collect::<Result<Vec<_>>>()?;
                Ok(RationalFn::from_poly(self.source.monomial(e, Rational::one())))
            })
            .collect()
    }

    /// `p o self` for a Laurent polynomial on the target torus; exponents transform by the transpose.
    pub fn pullback_poly(&self, p: &LaurentPoly) -> Result<LaurentPoly> {
        if p.ring != self.target {
            return Err(Error::Parse("polynomial is not over the target torus".into()));
        }
        let t = self.exponents.transpose();
        let mut out = self.source.zero();
        for (e, c) in &p.terms {
            let mut img = vec![0i64; self.source.len()];
            for (j, slot) in img.iter_mut().enumerate() {
                for (i, &k) in e.iter().enumerate() {
                    let a = num_traits::ToPrimitive::to_i64(t.get(j, i)).ok_or(Error::Parse("exponent overflow".into()))?;
                    *slot += a * k;
                }
            }
            out = out.add(&self.source.monomial(img, c.clone()))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, qi};

    fn ring() -> Ring {
        Ring::new(&["X1", "X2", "X3", "X4"])
    }

    #[test]
    fn cancellation_gives_zero() {
        let r = ring();
        let f = r.parse("X1 - X1").unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn four_term_expansion() {
        let r = ring();
        let lhs = r.parse("(1 + X4*X2^-1)*(X4^-1*X1*X2 + X2)").unwrap();
        let rhs = r.parse("X4^-1*X1*X2 + X2 + X1 + X4").unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero());
        assert_eq!(lhs.numerator().num_terms(), 4);
    }

    #[test]
    fn division_by_zero_polynomial_is_rejected() {
        let r = ring();
        assert!(matches!(r.parse("X1 / (X2 - X2)"), Err(Error::DivisionByZero)));
    }

    #[test]
    fn rational_functions_compare_by_cross_multiplication() {
        let r = ring();
        let a = r.parse("(X1^2 - X2^2)/(X1 + X2)").unwrap();
        let b = r.parse("X1 - X2").unwrap();
        assert!(a.equals(&b).unwrap());
        assert_eq!(a.evaluate(&[qi(3), qi(1), qi(1), qi(1)]).unwrap(), qi(2));
    }

    #[test]
    fn monomial_point_map() {
        let y = Ring::new(&["Y1", "Y2", "Y3", "Y4", "Y5"]);
        let m = LatticeMatrix::from_i64_rows(&[
            &[0, -1, -1, -1, -1],
            &[0, 1, 0, 0, 1],
            &[0, 0, 1, 0, 0],
            &[-1, 0, -1, -1, -1],
        ])
        .unwrap();
        let f = MonomialMap::new(y, ring(), m).unwrap();
        let x = f.pullback_point(&[qi(1), qi(2), qi(1), qi(1), qi(3)]).unwrap();
        assert_eq!(x, vec![q(1, 6), qi(6), qi(1), q(1, 3)]);
        assert!(matches!(f.pullback_point(&[qi(0), qi(2), qi(1), qi(1), qi(3)]), Err(Error::NotTorusPoint(_))));
        let ones = f.pullback_point(&vec![qi(1); 5]).unwrap();
        assert_eq!(ones, vec![qi(1); 4]);
    }

    #[test]
    fn pullback_of_polynomial_matches_substitution() {
        let y = Ring::new(&["Y1", "Y2"]);
        let x = Ring::new(&["X1", "X2"]);
        let m = MonomialMap::new(y.clone(), x.clone(), LatticeMatrix::from_i64_rows(&[&[1, 1], &[0, -1]]).unwrap()).unwrap();
        let p = x.parse("3*X1^2 - X2 + 1").unwrap();
        let direct = m.pullback_poly(p.numerator()).unwrap();
        let subst = p.substitute(&m.coordinate_functions().unwrap()).unwrap();
        assert!(RationalFn::from_poly(direct).equals(&subst).unwrap());
    }
}
