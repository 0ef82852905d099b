use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A polynomial variable: either the deformation parameter `c` or a matrix
/// coordinate `x_{i,j}` with `i < j`.
///
/// The derived order puts `Deform` first and orders coordinates
/// lexicographically by `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variable {
    Deform,
    Coord(u16, u16),
}

impl Variable {
    /// Coordinate variable `x_{i,j}`. Panics unless `1 <= i < j`.
    pub fn x(i: usize, j: usize) -> Self {
        Self::try_coord(i, j).unwrap_or_else(|| panic!("invalid coordinate x_{{{i},{j}}}"))
    }

    pub fn try_coord(i: usize, j: usize) -> Option<Self> {
        if i >= 1 && i < j && j <= u16::MAX as usize {
            Some(Variable::Coord(i as u16, j as u16))
        } else {
            None
        }
    }

    pub fn coord(&self) -> Option<(usize, usize)> {
        match *self {
            Variable::Coord(i, j) => Some((i as usize, j as usize)),
            Variable::Deform => None,
        }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::Deform => f.write_str("c"),
            Variable::Coord(i, j) => write!(f, "x_{{{i},{j}}}"),
        }
    }
}

/// A monomial, stored as a sorted list of `(variable, exponent)` with every
/// exponent positive.
///
/// Monomials are ordered by total degree first, then lexicographically on the
/// sorted factor list. With this order `x_{2,4}*x_{3,5}` precedes
/// `x_{2,5}*x_{3,4}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(Variable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Variable) -> Self {
        Self { factors: vec![(v, 1)] }
    }

    /// Builds a monomial from arbitrary factors, merging repeats and
    /// dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = (Variable, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Variable, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_default() += e;
        }
        Self {
            factors: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(Variable, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|idx| self.factors[idx].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Variable) -> bool {
        self.exponent(v) > 0
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Degree in the coordinate variables only.
    pub fn coord_degree(&self) -> u32 {
        self.factors
            .iter()
            .filter(|(v, _)| matches!(v, Variable::Coord(..)))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (self.factors.iter().peekable(), other.factors.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&f), None) => {
                    out.push(f);
                    a.next();
                }
                (None, Some(&&f)) => {
                    out.push(f);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { factors: out }
    }

    /// Returns the monomial with `v` removed entirely, and its former exponent.
    pub fn split_off(&self, v: Variable) -> (Monomial, u32) {
        let mut e = 0;
        let factors = self
            .factors
            .iter()
            .filter(|&&(w, ew)| {
                if w == v {
                    e = ew;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial { factors }, e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (idx, (v, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with arbitrary-precision integer
/// coefficients. The zero polynomial has no terms; no stored coefficient is
/// zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Variable) -> Self {
        Self::term(1, Monomial::var(v))
    }

    /// Shorthand for the coordinate polynomial `x_{i,j}`.
    pub fn x(i: usize, j: usize) -> Self {
        Self::var(Variable::x(i, j))
    }

    /// The deformation variable `c`.
    pub fn c() -> Self {
        Self::var(Variable::Deform)
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (ascending) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn add_assign_ref(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Drops every term that contains one of the `kill` variables, i.e.
    /// evaluates those variables at zero.
    pub fn substitute_zero(&self, kill: &BTreeSet<Variable>) -> Polynomial {
        if kill.is_empty() {
            return self.clone();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.factors().iter().all(|(v, _)| !kill.contains(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Returns the part of lowest degree in `c`, with that power of `c`
    /// divided out, together with the power.
    pub fn lowest_c_coefficient(&self) -> Result<(Polynomial, u32), crate::Error> {
        let power = self
            .terms
            .keys()
            .map(|m| m.exponent(Variable::Deform))
            .min()
            .ok_or(crate::Error::ZeroPolynomial)?;
        let coeff = Polynomial {
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let (rest, e) = m.split_off(Variable::Deform);
                    (e == power).then(|| (rest, c.clone()))
                })
                .collect(),
        };
        Ok((coeff, power))
    }

    pub fn equals_up_to_sign(&self, other: &Polynomial) -> bool {
        self == other || *self == other.neg()
    }

    /// Sign-normalised copy: the least monomial carries a positive coefficient.
    pub fn normalized(&self) -> Polynomial {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms.values().next().is_none_or(|c| c.is_positive())
    }

    /// Total degree of the highest-degree term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// True when no coordinate variable appears with exponent above one.
    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| {
            m.factors()
                .iter()
                .all(|&(v, e)| v == Variable::Deform || e == 1)
        })
    }

    pub fn contains_var(&self, v: Variable) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    pub fn variables(&self) -> BTreeSet<Variable> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                vars: m
                    .factors()
                    .iter()
                    .map(|&(v, e)| {
                        let var = match v {
                            Variable::Deform => JsonVar::Deform("c".into()),
                            Variable::Coord(i, j) => JsonVar::Coord([i as usize, j as usize]),
                        };
                        (var, e)
                    })
                    .collect(),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<Polynomial, crate::Error> {
        let mut p = Polynomial::zero();
        for t in terms {
            let coeff: BigInt = t
                .coeff
                .parse()
                .map_err(|_| crate::Error::Parse(format!("bad coefficient {:?}", t.coeff)))?;
            let mut factors = Vec::with_capacity(t.vars.len());
            for (var, e) in &t.vars {
                let v = match var {
                    JsonVar::Coord([i, j]) => Variable::try_coord(*i, *j)
                        .ok_or_else(|| crate::Error::Parse(format!("bad coordinate [{i},{j}]")))?,
                    JsonVar::Deform(s) if s == "c" => Variable::Deform,
                    JsonVar::Deform(s) => {
                        return Err(crate::Error::Parse(format!("unknown variable {s:?}")))
                    }
                };
                factors.push((v, *e));
            }
            p.add_term(Monomial::from_factors(factors), coeff);
        }
        Ok(p)
    }
}

/// One term of the JSON polynomial rendering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: String,
    pub vars: Vec<(JsonVar, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonVar {
    Coord([usize; 2]),
    Deform(String),
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        Polynomial::from_json_terms(&terms).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                Polynomial::$method(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                Polynomial::$method(&self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(&self)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, j: usize) -> Polynomial {
        Polynomial::x(i, j)
    }

    fn kill(vars: &[(usize, usize)]) -> BTreeSet<Variable> {
        vars.iter().map(|&(i, j)| Variable::x(i, j)).collect()
    }

    #[test]
    fn add_identity_and_cancellation() {
        let p = &x(1, 2) * &x(2, 4) + x(3, 5);
        assert_eq!(&p + &Polynomial::zero(), p);
        assert!((x(1, 2) + -x(1, 2)).is_zero());
    }

    #[test]
    fn two_term_minor_by_addition() {
        let p = &x(2, 4) * &x(3, 5);
        let q = (&x(2, 5) * &x(3, 4)).neg();
        let sum = p + q;
        assert_eq!(sum.to_string(), "x_{2,4}*x_{3,5} - x_{2,5}*x_{3,4}");
        assert_eq!(sum.len(), 2);
    }

    #[test]
    fn product_distributes() {
        let a = &x(1, 2) * &x(2, 4) + &x(1, 3) * &x(3, 4);
        let prod = &a * &x(4, 6);
        let expected = &(&x(1, 2) * &x(2, 4)) * &x(4, 6) + &(&x(1, 3) * &x(3, 4)) * &x(4, 6);
        assert_eq!(prod, expected);
        assert_eq!(&a * &Polynomial::one(), a);
        let c2 = Polynomial::c() * Polynomial::c();
        assert_eq!(c2.to_string(), "c^2");
    }

    #[test]
    fn substitute_zero_kills_terms() {
        let p = &x(1, 2) * &x(2, 4);
        assert_eq!(p.substitute_zero(&BTreeSet::new()), p);
        assert!(p.substitute_zero(&kill(&[(1, 2)])).is_zero());
    }

    #[test]
    fn lowest_c() {
        let c = Polynomial::c();
        let p = &(&c * &c) * &x(1, 2) + &(&(&c * &c) * &c) * &x(1, 3);
        let (coeff, e) = p.lowest_c_coefficient().unwrap();
        assert_eq!((coeff, e), (x(1, 2), 2));
        let q = x(1, 2) + x(3, 4);
        assert_eq!(q.lowest_c_coefficient().unwrap(), (q.clone(), 0));
        assert!(matches!(
            Polynomial::zero().lowest_c_coefficient(),
            Err(crate::Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn sign_equivalence() {
        let p = &x(2, 4) * &x(3, 5) - &x(2, 5) * &x(3, 4);
        let q = &x(2, 5) * &x(3, 4) - &x(2, 4) * &x(3, 5);
        assert!(p.equals_up_to_sign(&p));
        assert!(p.equals_up_to_sign(&-&p));
        assert!(p.equals_up_to_sign(&q));
        assert!(!p.equals_up_to_sign(&x(2, 4)));
        assert_eq!(q.normalized(), p);
        assert!(p.is_normalized());
    }

    #[test]
    fn json_shape() {
        let p = Polynomial::c() * x(2, 4) - Polynomial::constant(3);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[{"coeff":"-3","vars":[]},{"coeff":"1","vars":[["c",1],[[2,4],1]]}]"#);
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn variable_order() {
        assert!(Variable::Deform < Variable::x(1, 2));
        assert!(Variable::x(1, 9) < Variable::x(2, 3));
        assert!(Variable::try_coord(3, 3).is_none());
    }
}
