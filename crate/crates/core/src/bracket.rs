//! The six-parameter bracket family `P[a,b,c,d,e,f]`.
//!
//! In the group chart the fundamental brackets are
//!
//! ```text
//! {X,Y} = aX² − bXY − 2cXZ − aX
//! {X,Z} = dX² + 2eXY + bXZ − dX
//! {Y,Z} = −fX² + eY² + bYZ − dY + cZ² + aZ + f
//! ```
//!
//! and in the local chart `X = u = e^{-x}, Y = y, Z = z`. Brackets of
//! arbitrary (Laurent) polynomials follow from the Leibniz rule.

use core::fmt;

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{AlgebraError, Monomial, Poly, Rational, Symbol, Var};

/// Index of one of the six family parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    A = 0,
    B = 1,
    C = 2,
    D = 3,
    E = 4,
    F = 5,
}

impl Param {
    pub const ALL: [Param; 6] = [Param::A, Param::B, Param::C, Param::D, Param::E, Param::F];

    pub fn symbol(self) -> Symbol {
        Symbol::PARAMS[self as usize]
    }

    pub fn name(self) -> &'static str {
        self.symbol().name()
    }
}

/// The parameters `(a, b, c, d, e, f)`.
///
/// Either every parameter is a number, or every parameter is a formal symbol.
/// A symbolic family may pin some parameters to zero (a stratum such as the
/// coboundary family `b = c = e = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum PLParams {
    Numeric([Rational; 6]),
    Symbolic { vanishing: [bool; 6] },
}

impl PLParams {
    pub fn numeric(values: [Rational; 6]) -> Self {
        PLParams::Numeric(values)
    }

    pub fn from_ints(values: [i64; 6]) -> Self {
        PLParams::Numeric(values.map(Rational::from_int))
    }

    pub fn zero() -> Self {
        PLParams::from_ints([0; 6])
    }

    /// Fully symbolic `(a, …, f)`.
    pub fn symbolic() -> Self {
        PLParams::Symbolic {
            vanishing: [false; 6],
        }
    }

    /// Symbolic, with the listed parameters set to zero.
    pub fn symbolic_with_zeros(zeros: &[Param]) -> Self {
        let mut vanishing = [false; 6];
        for p in zeros {
            vanishing[*p as usize] = true;
        }
        PLParams::Symbolic { vanishing }
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, PLParams::Numeric(_))
    }

    pub fn values(&self) -> Option<&[Rational; 6]> {
        match self {
            PLParams::Numeric(v) => Some(v),
            PLParams::Symbolic { .. } => None,
        }
    }

    pub fn get(&self, p: Param) -> Option<&Rational> {
        self.values().map(|v| &v[p as usize])
    }

    pub fn to_f64(&self) -> Option<[f64; 6]> {
        self.values()
            .map(|v| core::array::from_fn(|i| v[i].to_f64()))
    }

    /// The parameters as polynomial coefficients: numbers become constants,
    /// symbols become the variables `a, …, f`.
    pub fn coefficients(&self) -> [Poly; 6] {
        match self {
            PLParams::Numeric(v) => v.clone().map(Poly::constant),
            PLParams::Symbolic { vanishing } => core::array::from_fn(|i| {
                if vanishing[i] {
                    Poly::zero()
                } else {
                    Poly::var(Symbol::PARAMS[i])
                }
            }),
        }
    }

    /// Whether a parameter is identically zero.
    pub fn vanishes(&self, p: Param) -> bool {
        match self {
            PLParams::Numeric(v) => v[p as usize].is_zero(),
            PLParams::Symbolic { vanishing } => vanishing[p as usize],
        }
    }
}

impl fmt::Display for PLParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PLParams::Numeric(v) => {
                write!(
                    f,
                    "[{}, {}, {}, {}, {}, {}]",
                    v[0], v[1], v[2], v[3], v[4], v[5]
                )
            }
            PLParams::Symbolic { vanishing } => {
                f.write_str("[")?;
                for (i, p) in Param::ALL.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    f.write_str(if vanishing[i] { "0" } else { p.name() })?;
                }
                f.write_str("]")
            }
        }
    }
}

/// Coordinate chart on the book group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    /// `(X, Y, Z)`, the matrix entries of the group element.
    Group,
    /// `(x, y, z)` with `u = e^{-x}` carried as an invertible variable.
    Local,
}

impl Chart {
    /// The three coordinate variables in tensor factor `copy`.
    pub fn generators(self, copy: u8) -> [Var; 3] {
        let syms = match self {
            Chart::Group => [Symbol::X, Symbol::Y, Symbol::Z],
            Chart::Local => [Symbol::LocalX, Symbol::LocalY, Symbol::LocalZ],
        };
        syms.map(|s| Var::copy_of(s, copy))
    }

    fn owns(self, s: Symbol) -> bool {
        match self {
            Chart::Group => matches!(s, Symbol::X | Symbol::Y | Symbol::Z),
            Chart::Local => matches!(
                s,
                Symbol::U | Symbol::LocalX | Symbol::LocalY | Symbol::LocalZ
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BracketError {
    #[error("variable {var} does not belong to the {chart:?} chart")]
    ChartMismatch { var: Var, chart: Chart },
    #[error("operation requires the {0:?} chart")]
    WrongChart(Chart),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A quadratic Poisson structure given by its three fundamental brackets
/// `{w₁,w₂}, {w₁,w₃}, {w₂,w₃}`. Antisymmetry is structural.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    chart: Chart,
    table: [Poly; 3],
}

impl PoissonStructure {
    /// An arbitrary table. Nothing is validated, so corrupted structures can
    /// be fed to the residual checks.
    pub fn from_table(chart: Chart, table: [Poly; 3]) -> Self {
        PoissonStructure { chart, table }
    }

    pub fn from_params(params: &PLParams, chart: Chart) -> Self {
        Self::from_coefficients(&params.coefficients(), chart)
    }

    /// The family `P[a,b,c,d,e,f]` for polynomial coefficients.
    pub fn from_coefficients(k: &[Poly; 6], chart: Chart) -> Self {
        let [a, b, c, d, e, f] = k;
        let two = Rational::from_int(2);
        let table = match chart {
            Chart::Group => {
                let x = Poly::var(Symbol::X);
                let y = Poly::var(Symbol::Y);
                let z = Poly::var(Symbol::Z);
                let xx = &x * &x;
                let xy = &(a * &xx) - &(b * &(&x * &y)) - (c * &(&x * &z)).scale(&two) - a * &x;
                let xz = &(d * &xx) + &(e * &(&x * &y)).scale(&two) + b * &(&x * &z) - d * &x;
                let yz = -(f * &xx) + e * &(&y * &y) + b * &(&y * &z) - d * &y
                    + c * &(&z * &z)
                    + a * &z
                    + f.clone();
                [xy, xz, yz]
            }
            Chart::Local => {
                let u = Poly::var(Symbol::U);
                let y = Poly::var(Symbol::LocalY);
                let z = Poly::var(Symbol::LocalZ);
                let one_minus_u = &Poly::one() - &u;
                let one_minus_u2 = &Poly::one() - &(&u * &u);
                let xy = a * &one_minus_u + b * &y + (c * &z).scale(&two);
                let xz = d * &one_minus_u - (e * &y).scale(&two) - b * &z;
                let yz = f * &one_minus_u2 + e * &(&y * &y) + b * &(&y * &z) - d * &y
                    + c * &(&z * &z)
                    + a * &z;
                [xy, xz, yz]
            }
        };
        PoissonStructure { chart, table }
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn table(&self) -> &[Poly; 3] {
        &self.table
    }

    /// `{wᵢ, wⱼ}` for generator indices `i, j ∈ {0, 1, 2}`.
    pub fn fundamental(&self, i: usize, j: usize) -> Poly {
        match (i, j) {
            (0, 1) => self.table[0].clone(),
            (0, 2) => self.table[1].clone(),
            (1, 2) => self.table[2].clone(),
            (1, 0) => -&self.table[0],
            (2, 0) => -&self.table[1],
            (2, 1) => -&self.table[2],
            _ => Poly::zero(),
        }
    }

    fn check_chart(&self, p: &Poly) -> Result<(), BracketError> {
        for v in p.variables() {
            if v.symbol.is_coordinate() && (v.copy != 0 || !self.chart.owns(v.symbol)) {
                return Err(BracketError::ChartMismatch {
                    var: v,
                    chart: self.chart,
                });
            }
        }
        Ok(())
    }

    /// `{p, q}` for Laurent polynomials in this chart (parameters are
    /// constants). A Laurent polynomial in `X` is a rational function with an
    /// `X`-power denominator, so the quotient rule is built in.
    pub fn bracket(&self, p: &Poly, q: &Poly) -> Result<Poly, BracketError> {
        self.check_chart(p)?;
        self.check_chart(q)?;
        Ok(self.bracket_in_copy(p, q, 0))
    }

    pub fn bracket_rational(
        &self,
        p: &RationalFunction,
        q: &RationalFunction,
    ) -> Result<RationalFunction, BracketError> {
        let r = self.bracket(&p.to_laurent()?, &q.to_laurent()?)?;
        Ok(RationalFunction::from_laurent(&r, self.denominator_var()))
    }

    fn denominator_var(&self) -> Var {
        match self.chart {
            Chart::Group => Var::new(Symbol::X),
            Chart::Local => Var::new(Symbol::U),
        }
    }

    /// The bracket acting on the variables of tensor factor `copy` only; all
    /// other variables are treated as constants.
    pub(crate) fn bracket_in_copy(&self, p: &Poly, q: &Poly, copy: u8) -> Poly {
        let gens = self.chart.generators(copy);
        let table: [Poly; 3] = if copy == 0 {
            self.table.clone()
        } else {
            self.table.clone().map(|t| {
                t.rename(|v| {
                    if v.symbol.is_coordinate() {
                        v.with_copy(copy)
                    } else {
                        v
                    }
                })
                .expect("renaming preserves exponents")
            })
        };
        let dp = gens.map(|g| p.partial(g));
        let dq = gens.map(|g| q.partial(g));
        let mut acc = Poly::zero();
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            if table[k].is_zero() {
                continue;
            }
            let w = &(&dp[i] * &dq[j]) - &(&dp[j] * &dq[i]);
            if !w.is_zero() {
                acc += &(&w * &table[k]);
            }
        }
        acc
    }

    /// Jacobiator `{{w₁,w₂},w₃} + {{w₂,w₃},w₁} + {{w₃,w₁},w₂}`; in three
    /// dimensions this single triple decides the Jacobi identity.
    pub fn jacobi_residual(&self) -> Vec<Poly> {
        let [w1, w2, w3] = self.chart.generators(0).map(Poly::var);
        let br = |p: &Poly, q: &Poly| self.bracket_in_copy(p, q, 0);
        let t1 = br(&br(&w1, &w2), &w3);
        let t2 = br(&br(&w2, &w3), &w1);
        let t3 = br(&br(&w3, &w1), &w2);
        vec![t1 + t2 + t3]
    }

    /// Converts between the group chart and the local chart
    /// (`X = u`, `{x, ·} = −{X, ·}/X`).
    pub fn to_chart(&self, target: Chart) -> Result<PoissonStructure, BracketError> {
        if target == self.chart {
            return Ok(self.clone());
        }
        let [xy, xz, yz] = &self.table;
        match target {
            Chart::Group => {
                let rename = |p: &Poly| {
                    p.substitute(|v| match (v.copy, v.symbol) {
                        (0, Symbol::U) => Some(Poly::var(Symbol::X)),
                        (0, Symbol::LocalY) => Some(Poly::var(Symbol::Y)),
                        (0, Symbol::LocalZ) => Some(Poly::var(Symbol::Z)),
                        _ => None,
                    })
                };
                for t in &self.table {
                    if t.variables().contains(&Var::new(Symbol::LocalX)) {
                        return Err(BracketError::ChartMismatch {
                            var: Var::new(Symbol::LocalX),
                            chart: Chart::Group,
                        });
                    }
                }
                let minus_x = -Poly::var(Symbol::X);
                Ok(PoissonStructure {
                    chart: Chart::Group,
                    table: [
                        &minus_x * &rename(xy)?,
                        &minus_x * &rename(xz)?,
                        rename(yz)?,
                    ],
                })
            }
            Chart::Local => {
                let rename = |p: &Poly| {
                    p.substitute(|v| match (v.copy, v.symbol) {
                        (0, Symbol::X) => Some(Poly::var(Symbol::U)),
                        (0, Symbol::Y) => Some(Poly::var(Symbol::LocalY)),
                        (0, Symbol::Z) => Some(Poly::var(Symbol::LocalZ)),
                        _ => None,
                    })
                };
                let minus_inv_u = -Poly::var_pow(Symbol::U, -1)?;
                Ok(PoissonStructure {
                    chart: Chart::Local,
                    table: [
                        &minus_inv_u * &rename(xy)?,
                        &minus_inv_u * &rename(xz)?,
                        rename(yz)?,
                    ],
                })
            }
        }
    }

    /// Rank of the Poisson matrix at a point (0 or 2 in three dimensions).
    pub fn rank_at(&self, point: &BTreeMap<Var, Rational>) -> Result<usize, AlgebraError> {
        for t in &self.table {
            if !t.eval(point)?.is_zero() {
                return Ok(2);
            }
        }
        Ok(0)
    }

    /// The linear part at the identity `x = y = z = 0`: substitute
    /// `u → 1 − x` and keep total coordinate degree ≤ 1.
    pub fn linearize(&self) -> Result<LinearBracketTable, BracketError> {
        if self.chart != Chart::Local {
            return Err(BracketError::WrongChart(Chart::Local));
        }
        let one_minus_x = &Poly::one() - &Poly::var(Symbol::LocalX);
        let gens = Chart::Local.generators(0);
        let mut rows: [[Poly; 3]; 3] = Default::default();
        let mut constants: [Poly; 3] = Default::default();
        for (k, t) in self.table.iter().enumerate() {
            let expanded =
                t.substitute(|v| (v == Var::new(Symbol::U)).then(|| one_minus_x.clone()))?;
            let linear = expanded.truncate_where(|v| v.symbol.is_coordinate(), 1);
            let groups = linear.collect_by(|v| v.symbol.is_coordinate());
            for (m, coeff) in groups {
                if m.is_one() {
                    constants[k] = coeff;
                    continue;
                }
                let idx = gens
                    .iter()
                    .position(|g| m == Monomial::var_pow(*g, 1).expect("positive power"))
                    .expect("degree-one monomial in a local coordinate");
                rows[k][idx] = coeff;
            }
        }
        Ok(LinearBracketTable { rows, constants })
    }
}

/// The casimir `[f(1+X²) + (X−1)(dY − aZ) + eY² + (bY + cZ)Z] / X`.
pub fn casimir(params: &PLParams) -> RationalFunction {
    casimir_from_coefficients(&params.coefficients())
}

pub fn casimir_from_coefficients(k: &[Poly; 6]) -> RationalFunction {
    let [a, b, c, d, e, f] = k;
    let x = Poly::var(Symbol::X);
    let y = Poly::var(Symbol::Y);
    let z = Poly::var(Symbol::Z);
    let numerator = f * &(&Poly::one() + &(&x * &x))
        + &(&x - &Poly::one()) * &(&(d * &y) - &(a * &z))
        + e * &(&y * &y)
        + &(&(b * &y) + &(c * &z)) * &z;
    RationalFunction::new(numerator, Var::new(Symbol::X), 1)
}

/// A Laurent-style rational function `numerator / vⁿ` with `v` invertible.
/// Stored normalized: common powers of `v` are cancelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numerator: Poly,
    denominator: Var,
    exponent: u32,
}

impl RationalFunction {
    pub fn new(numerator: Poly, denominator: Var, exponent: u32) -> Self {
        let mut out = RationalFunction {
            numerator,
            denominator,
            exponent,
        };
        out.normalize();
        out
    }

    pub fn from_poly(p: Poly, denominator: Var) -> Self {
        RationalFunction::new(p, denominator, 0)
    }

    /// Splits off the most negative power of `v`.
    pub fn from_laurent(p: &Poly, v: Var) -> Self {
        let min = p
            .terms()
            .map(|(m, _)| m.exponent(v))
            .min()
            .unwrap_or(0)
            .min(0);
        let shift = Monomial::var_pow(v, -min).expect("nonnegative power");
        RationalFunction::new(p.mul_monomial(&shift), v, min.unsigned_abs())
    }

    fn normalize(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        let common = self
            .numerator
            .terms()
            .map(|(m, _)| m.exponent(self.denominator))
            .min()
            .unwrap_or(0);
        let cancel = common.clamp(0, self.exponent as i32);
        if cancel > 0 {
            let m = Monomial::var_pow(self.denominator, -cancel).expect("invertible denominator");
            self.numerator = self.numerator.mul_monomial(&m);
            self.exponent -= cancel as u32;
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> (Var, u32) {
        (self.denominator, self.exponent)
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn to_laurent(&self) -> Result<Poly, AlgebraError> {
        Ok(self.numerator.mul_monomial(&Monomial::var_pow(
            self.denominator,
            -(self.exponent as i32),
        )?))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exponent {
            0 => write!(f, "{}", self.numerator),
            1 => write!(f, "({}) / {}", self.numerator, self.denominator),
            n => write!(f, "({}) / {}^{}", self.numerator, self.denominator, n),
        }
    }
}

/// A Lie–Poisson (linear) bracket table on the local coordinates.
///
/// `rows[k][l]` is the coefficient of coordinate `l` in bracket `k`, with
/// brackets ordered `{x,y}, {x,z}, {y,z}` and coordinates `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBracketTable {
    pub rows: [[Poly; 3]; 3],
    /// Degree-zero parts; zero for every member of the family.
    pub constants: [Poly; 3],
}

impl LinearBracketTable {
    /// The brackets as linear polynomials in `x, y, z`.
    pub fn brackets(&self) -> [Poly; 3] {
        let gens = Chart::Local.generators(0).map(Poly::var);
        core::array::from_fn(|k| {
            let mut p = self.constants[k].clone();
            for l in 0..3 {
                p += &(&self.rows[k][l] * &gens[l]);
            }
            p
        })
    }

    /// Structure constants `c[i][j][k]` of `[ξᵢ, ξⱼ] = Σₖ c[i][j][k] ξₖ` in the
    /// basis `(x, y, z)`.
    pub fn structure_constants(&self) -> [[[Poly; 3]; 3]; 3] {
        let mut c: [[[Poly; 3]; 3]; 3] = Default::default();
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            for l in 0..3 {
                c[i][j][l] = self.rows[k][l].clone();
                c[j][i][l] = -&self.rows[k][l];
            }
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.rows
            .iter()
            .flatten()
            .chain(&self.constants)
            .all(Poly::is_zero)
    }
}
