use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{AlgebraError, Rational, Symbol, Var};

/// A Laurent monomial: sorted `(variable, exponent)` pairs, exponents nonzero.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the earliest variable (in [`Var`] order) where the two monomials differ.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    /// `v^exp`, rejecting negative powers of non-invertible variables.
    pub fn var_pow(v: Var, exp: i32) -> Result<Self, AlgebraError> {
        if exp < 0 && !v.is_invertible() {
            return Err(AlgebraError::NotInvertible(v));
        }
        if exp == 0 {
            Ok(Monomial::one())
        } else {
            Ok(Monomial(alloc::vec![(v, exp)]))
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Result<Self, AlgebraError> {
        let mut acc: BTreeMap<Var, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        let mut out = Vec::with_capacity(acc.len());
        for (v, e) in acc {
            if e < 0 && !v.is_invertible() {
                return Err(AlgebraError::NotInvertible(v));
            }
            if e != 0 {
                out.push((v, e));
            }
        }
        Ok(Monomial(out))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Degree counted only over variables accepted by `pred`.
    pub fn degree_where(&self, pred: impl Fn(Var) -> bool) -> i64 {
        self.0
            .iter()
            .filter(|(v, _)| pred(*v))
            .map(|&(_, e)| e as i64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (va, ea) = self.0[i];
            let (vb, eb) = other.0[j];
            match va.cmp(&vb) {
                Ordering::Less => {
                    out.push((va, ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((vb, eb));
                    j += 1;
                }
                Ordering::Equal => {
                    if ea + eb != 0 {
                        out.push((va, ea + eb));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Inverse monomial; only defined when every variable is invertible.
    pub fn inverse(&self) -> Result<Monomial, AlgebraError> {
        if let Some(&(v, _)) = self.0.iter().find(|(v, _)| !v.is_invertible()) {
            return Err(AlgebraError::NotInvertible(v));
        }
        Ok(Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect()))
    }

    /// Splits into the part over variables accepted by `pred` and the rest.
    pub fn split(&self, pred: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| pred(*v));
        (Monomial(a), Monomial(b))
    }

    fn map_vars(&self, f: impl Fn(Var) -> Var) -> Result<Monomial, AlgebraError> {
        Monomial::from_pairs(self.0.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
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

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A sparse multivariate Laurent polynomial with exact rational coefficients.
///
/// The variable universe is implicit: any [`Var`] may appear, so operands are
/// unified by name. No stored coefficient is zero, which makes equality a
/// comparison of term maps.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::from_int(n))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn var(v: impl Into<Var>) -> Self {
        Poly::term(Rational::one(), Monomial(alloc::vec![(v.into(), 1)]))
    }

    pub fn var_pow(v: impl Into<Var>, exp: i32) -> Result<Self, AlgebraError> {
        Ok(Poly::term(
            Rational::one(),
            Monomial::var_pow(v.into(), exp)?,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect()
    }

    /// Highest total degree of any term (`None` for the zero polynomial).
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn total_degree_where(&self, pred: impl Fn(Var) -> bool) -> Option<i64> {
        self.terms.keys().map(|m| m.degree_where(&pred)).max()
    }

    /// The largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, k)| (n.mul(m), k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse of a single-term polynomial in invertible
    /// variables.
    pub fn inverse(&self) -> Result<Poly, AlgebraError> {
        let no_inverse = || AlgebraError::NoInverse(self.to_string());
        if self.terms.len() != 1 {
            return Err(no_inverse());
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        let inv = m.inverse().map_err(|_| no_inverse())?;
        Ok(Poly::term(c.recip()?, inv))
    }

    /// Formal partial derivative.
    ///
    /// Differentiating with respect to a local `x` also differentiates the
    /// matching `u = e^{-x}` through `∂u/∂x = -u`.
    pub fn partial(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        let chain_u = (v.symbol == Symbol::LocalX).then(|| Var::copy_of(Symbol::U, v.copy));
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e != 0 {
                let m2 = m.mul(&Monomial(alloc::vec![(v, -1)]));
                out.add_term(m2, c * &Rational::from_int(e as i64));
            }
            if let Some(u) = chain_u {
                let n = m.exponent(u);
                if n != 0 {
                    out.add_term(m.clone(), c * &Rational::from_int(-(n as i64)));
                }
            }
        }
        out
    }

    /// Exact evaluation. Every variable of `self` must be assigned, and
    /// invertible variables may not be assigned zero.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Result<Rational, AlgebraError> {
        for v in self.variables() {
            match point.get(&v) {
                None => return Err(AlgebraError::Unassigned(v)),
                Some(x) if x.is_zero() && v.is_invertible() => {
                    return Err(AlgebraError::ZeroInvertible(v))
                }
                Some(_) => {}
            }
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                t *= &point[&v].pow(e)?;
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation through a variable lookup.
    pub fn eval_f64(&self, value: impl Fn(Var) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().fold(c.to_f64(), |acc, &(v, e)| {
                    acc * libm::pow(value(v), e as f64)
                })
            })
            .sum()
    }

    /// Replaces variables by polynomials. `image` returns `None` to keep a
    /// variable. Negative powers need an image with a monomial inverse.
    pub fn substitute(&self, image: impl Fn(Var) -> Option<Poly>) -> Result<Poly, AlgebraError> {
        let mut cache: BTreeMap<Var, Option<(Poly, Option<Poly>)>> = BTreeMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Poly::constant(c.clone());
            for &(v, e) in &m.0 {
                let entry = cache
                    .entry(v)
                    .or_insert_with(|| image(v).map(|p| (p, None)));
                match entry {
                    None => kept.push((v, e)),
                    Some((p, inv)) => {
                        let base = if e >= 0 {
                            p.clone()
                        } else {
                            if inv.is_none() {
                                *inv = Some(p.inverse()?);
                            }
                            inv.clone().expect("computed above")
                        };
                        acc = &acc * &base.pow(e.unsigned_abs());
                    }
                }
            }
            out += &acc.mul_monomial(&Monomial(kept));
        }
        Ok(out)
    }

    /// Renames variables (for instance into a tensor factor).
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Result<Poly, AlgebraError> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_vars(&f)?, c.clone());
        }
        Ok(out)
    }

    /// Groups terms by their monomial in the variables accepted by `pred`;
    /// each value is the coefficient polynomial in the remaining variables.
    pub fn collect_by(&self, pred: impl Fn(Var) -> bool) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, rest) = m.split(&pred);
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Drops every term whose degree over `pred`-variables exceeds `max`.
    pub fn truncate_where(&self, pred: impl Fn(Var) -> bool, max: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree_where(&pred) <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Parses the canonical rendering, e.g. `a*X^2 - 2*c*X*Z + 1/2`.
    pub fn parse(s: &str) -> Result<Poly, AlgebraError> {
        super::parse::parse_poly(s)
    }
}

impl fmt::Display for Poly {
    /// Canonical form: terms in decreasing graded-lex order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
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

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl From<Symbol> for Poly {
    fn from(s: Symbol) -> Self {
        Poly::var(s)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($trait:ident, $method:ident) => {
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $trait::$method(&self, &rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $trait::$method(&self, rhs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $trait::$method(self, &rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl core::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn x() -> Poly {
        Poly::var(Symbol::X)
    }
    fn y() -> Poly {
        Poly::var(Symbol::Y)
    }
    fn b() -> Poly {
        Poly::var(Symbol::B)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = (x() + y()) * (x() - y());
        assert_eq!(lhs, x().pow(2) - y().pow(2));
    }

    #[test]
    fn additive_inverse_is_empty() {
        let p = Poly::parse("3*X^2*Y - 1/2*b*Z + 7").unwrap();
        let s = &p + &(-&p);
        assert!(s.is_zero());
        assert_eq!(s.num_terms(), 0);
    }

    #[test]
    fn laurent_product_with_inverse_x() {
        let p = -(b() * x() * y());
        let q = p * Poly::var_pow(Symbol::X, -1).unwrap();
        assert_eq!(q, -(b() * y()));
    }

    #[test]
    fn negative_exponent_requires_invertible_variable() {
        assert_eq!(
            Poly::var_pow(Symbol::Y, -1),
            Err(AlgebraError::NotInvertible(Var::new(Symbol::Y)))
        );
        assert!(Poly::var_pow(Symbol::U, -2).is_ok());
        assert!(Poly::var_pow(Symbol::Kappa, -1).is_ok());
        assert!(y().inverse().is_err());
    }

    #[test]
    fn partial_derivatives() {
        let p = Poly::parse("X^2 - b*X*Y").unwrap();
        assert_eq!(p.partial(Var::new(Symbol::Y)), -(b() * x()));
        let u2 = Poly::var_pow(Symbol::U, 2).unwrap();
        assert_eq!(
            u2.partial(Var::new(Symbol::LocalX)),
            u2.scale(&Rational::from_int(-2))
        );
        assert!(Poly::int(5).partial(Var::new(Symbol::X)).is_zero());
        // x*u: product rule through the chain rule for u.
        let xu = Poly::var(Symbol::LocalX) * Poly::var(Symbol::U);
        assert_eq!(
            xu.partial(Var::new(Symbol::LocalX)),
            Poly::var(Symbol::U) - xu.clone()
        );
    }

    #[test]
    fn evaluation() {
        let p = Poly::parse("X^2 - 1").unwrap();
        let pt = |vals: &[(Symbol, i64)]| {
            vals.iter()
                .map(|&(s, v)| (Var::new(s), Rational::from_int(v)))
                .collect::<BTreeMap<_, _>>()
        };
        assert_eq!(
            p.eval(&pt(&[(Symbol::X, 3)])).unwrap(),
            Rational::from_int(8)
        );
        let cas = Poly::parse("X^-1*Y*Z").unwrap();
        assert_eq!(
            cas.eval(&pt(&[(Symbol::X, 2), (Symbol::Y, 4), (Symbol::Z, 3)]))
                .unwrap(),
            Rational::from_int(6)
        );
        let q = Poly::parse("Y^2 + 3*Y*Z - 5").unwrap();
        assert_eq!(
            q.eval(&pt(&[(Symbol::Y, 0), (Symbol::Z, 0)])).unwrap(),
            Rational::from_int(-5)
        );
        assert_eq!(
            cas.eval(&pt(&[(Symbol::X, 0), (Symbol::Y, 4), (Symbol::Z, 3)])),
            Err(AlgebraError::ZeroInvertible(Var::new(Symbol::X)))
        );
        assert_eq!(
            cas.eval(&pt(&[(Symbol::X, 1)])),
            Err(AlgebraError::Unassigned(Var::new(Symbol::Y)))
        );
    }

    #[test]
    fn grlex_order_and_canonical_string() {
        let p = Poly::parse("Y + X^2 - 2*c*X*Z + X*Y + 1").unwrap();
        // degree 3 first, then degree 2 with X before Y, ...
        assert_eq!(p.to_string(), "-2*c*X*Z + X^2 + X*Y + Y + 1");
        assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn substitution_handles_inverse_images() {
        // X -> X_1 X_2, X^-1 -> X_1^-1 X_2^-1
        let x1 = Var::copy_of(Symbol::X, 1);
        let x2 = Var::copy_of(Symbol::X, 2);
        let p = Poly::parse("X^-1*Y").unwrap();
        let img = p
            .substitute(|v| (v == Var::new(Symbol::X)).then(|| Poly::var(x1) * Poly::var(x2)))
            .unwrap();
        let expected = Poly::term(
            Rational::one(),
            Monomial::from_pairs(vec![(x1, -1), (x2, -1), (Var::new(Symbol::Y), 1)]).unwrap(),
        );
        assert_eq!(img, expected);
        // A non-monomial image cannot be inverted.
        assert!(p
            .substitute(|v| (v == Var::new(Symbol::X)).then(|| x() + Poly::one()))
            .is_err());
    }

    #[test]
    fn collect_and_truncate() {
        let p = Poly::parse("a*x + b*y + 2*c*z + a*x^2").unwrap();
        let lin = p.truncate_where(|v| v.symbol.is_coordinate(), 1);
        assert_eq!(lin, Poly::parse("a*x + b*y + 2*c*z").unwrap());
        let groups = lin.collect_by(|v| v.symbol.is_coordinate());
        assert_eq!(groups.len(), 3);
        assert_eq!(
            groups[&Monomial::var_pow(Var::new(Symbol::LocalZ), 1).unwrap()],
            Poly::parse("2*c").unwrap()
        );
    }
}
