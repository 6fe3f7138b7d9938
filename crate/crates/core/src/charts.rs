//! Coordinate charts `(J₃, J₊, J₋)` on the book group in which members of
//! the family become the q-deformed algebras, evaluated in double precision.

use core::fmt;
use core::str::FromStr;

use alloc::vec::Vec;

use libm::{cosh, exp, log, sinh, sqrt};
use rand::Rng;

use crate::bracket::{Chart, PLParams, PoissonStructure};
use crate::exact::{Poly, Symbol, Var};
use crate::sample::uniform;

pub type Point = [f64; 3];

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ChartError {
    #[error("deformation parameter must be nonzero")]
    ZeroDeformation,
    #[error("point {0:?} lies outside the chart domain X > 0")]
    OutsideDomain(Point),
    #[error("unknown structure id `{0}`")]
    UnknownId(alloc::string::String),
    #[error("{0} has no q-deformed sl(2) Casimir")]
    NoQCasimir(NamedId),
    #[error("no affine Casimir relation: residual {0:e}")]
    NoRelation(f64),
}

/// A chart on the `X > 0` component of the group. Chart coordinates are
/// always ordered `(J₃, J₊, J₋)` (`(x, y, z)` for the local chart).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CoordinateChart {
    /// `X = e^{−2ηJ₃}, Y = e^{−ηJ₃}J₊, Z = e^{−ηJ₃}J₋`.
    Standard { eta: f64 },
    /// `X = e^{−2φJ₋}, Y = e^{−φJ₋}J₊, Z = e^{−φJ₋}J₃`.
    Nonstandard { phi: f64 },
    /// `X = e^{−x}, Y = y, Z = z`.
    Local,
}

impl CoordinateChart {
    pub fn standard(eta: f64) -> Result<Self, ChartError> {
        if eta == 0.0 || !eta.is_finite() {
            return Err(ChartError::ZeroDeformation);
        }
        Ok(CoordinateChart::Standard { eta })
    }

    pub fn nonstandard(phi: f64) -> Result<Self, ChartError> {
        if phi == 0.0 || !phi.is_finite() {
            return Err(ChartError::ZeroDeformation);
        }
        Ok(CoordinateChart::Nonstandard { phi })
    }

    pub fn deformation(&self) -> Option<f64> {
        match *self {
            CoordinateChart::Standard { eta } => Some(eta),
            CoordinateChart::Nonstandard { phi } => Some(phi),
            CoordinateChart::Local => None,
        }
    }

    /// Chart coordinates to `(X, Y, Z)`.
    pub fn forward(&self, q: Point) -> Point {
        match *self {
            CoordinateChart::Standard { eta } => {
                let s = exp(-eta * q[0]);
                [s * s, s * q[1], s * q[2]]
            }
            CoordinateChart::Nonstandard { phi } => {
                let s = exp(-phi * q[2]);
                [s * s, s * q[1], s * q[0]]
            }
            CoordinateChart::Local => [exp(-q[0]), q[1], q[2]],
        }
    }

    /// `(X, Y, Z)` to chart coordinates.
    pub fn inverse(&self, w: Point) -> Result<Point, ChartError> {
        let [x, y, z] = w;
        if x <= 0.0 || !w.iter().all(|v| v.is_finite()) {
            return Err(ChartError::OutsideDomain(w));
        }
        let r = 1.0 / sqrt(x);
        Ok(match *self {
            CoordinateChart::Standard { eta } => [-log(x) / (2.0 * eta), y * r, z * r],
            CoordinateChart::Nonstandard { phi } => [z * r, y * r, -log(x) / (2.0 * phi)],
            CoordinateChart::Local => [-log(x), y, z],
        })
    }

    /// `∂Jᵢ/∂w` for `w ∈ (X, Y, Z)`, evaluated at a group point.
    pub fn inverse_jacobian(&self, w: Point) -> Result<[[f64; 3]; 3], ChartError> {
        let [x, y, z] = w;
        if x.is_nan() || x <= 0.0 {
            return Err(ChartError::OutsideDomain(w));
        }
        let r = 1.0 / sqrt(x);
        let r3 = -0.5 * r / x;
        Ok(match *self {
            CoordinateChart::Standard { eta } => [
                [-1.0 / (2.0 * eta * x), 0.0, 0.0],
                [y * r3, r, 0.0],
                [z * r3, 0.0, r],
            ],
            CoordinateChart::Nonstandard { phi } => [
                [z * r3, 0.0, r],
                [y * r3, r, 0.0],
                [-1.0 / (2.0 * phi * x), 0.0, 0.0],
            ],
            CoordinateChart::Local => [[-1.0 / x, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        })
    }
}

/// The group-chart bracket of the family with floating-point coefficients.
#[derive(Clone, Debug)]
pub struct NumericBracket {
    coefficients: [f64; 6],
    table: [Poly; 3],
}

impl NumericBracket {
    pub fn new(coefficients: [f64; 6]) -> Self {
        let table = PoissonStructure::from_params(&PLParams::symbolic(), Chart::Group)
            .table()
            .clone();
        NumericBracket {
            coefficients,
            table,
        }
    }

    pub fn coefficients(&self) -> [f64; 6] {
        self.coefficients
    }

    fn value(&self, w: Point) -> impl Fn(Var) -> f64 + '_ {
        move |v: Var| match v.symbol {
            Symbol::X => w[0],
            Symbol::Y => w[1],
            Symbol::Z => w[2],
            s => {
                let i = Symbol::PARAMS
                    .iter()
                    .position(|&p| p == s)
                    .expect("family parameter");
                self.coefficients[i]
            }
        }
    }

    /// `[{X,Y}, {X,Z}, {Y,Z}]` at a group point.
    pub fn fundamental(&self, w: Point) -> [f64; 3] {
        let val = self.value(w);
        core::array::from_fn(|k| self.table[k].eval_f64(&val))
    }

    /// Antisymmetric matrix of `{wᵢ, wⱼ}`.
    pub fn matrix(&self, w: Point) -> [[f64; 3]; 3] {
        let [xy, xz, yz] = self.fundamental(w);
        [[0.0, xy, xz], [-xy, 0.0, yz], [-xz, -yz, 0.0]]
    }

    /// The Casimir `[f(1+X²) + (X−1)(dY−aZ) + eY² + (bY+cZ)Z]/X`.
    pub fn casimir(&self, w: Point) -> f64 {
        let [a, b, c, d, e, f] = self.coefficients;
        let [x, y, z] = w;
        (f * (1.0 + x * x) + (x - 1.0) * (d * y - a * z) + e * y * y + (b * y + c * z) * z) / x
    }
}

/// `{Jᵢ, Jⱼ}` for all pairs at a chart point, by the chain rule.
pub fn pushforward_matrix(
    bracket: &NumericBracket,
    chart: &CoordinateChart,
    q: Point,
) -> Result<[[f64; 3]; 3], ChartError> {
    let w = chart.forward(q);
    let jac = chart.inverse_jacobian(w)?;
    let p = bracket.matrix(w);
    Ok(core::array::from_fn(|i| {
        core::array::from_fn(|j| {
            let mut acc = 0.0;
            for (k, row) in p.iter().enumerate() {
                for (l, pkl) in row.iter().enumerate() {
                    acc += jac[i][k] * jac[j][l] * pkl;
                }
            }
            acc
        })
    }))
}

pub fn pushforward_bracket(
    params: &PLParams,
    chart: &CoordinateChart,
    i: usize,
    j: usize,
    q: Point,
) -> Result<f64, ChartError> {
    let k = params.to_f64().expect("numeric parameters");
    Ok(pushforward_matrix(&NumericBracket::new(k), chart, q)?[i][j])
}

/// Closed forms of the generic family in the standard chart, as
/// `[{J₃,J₊}, {J₃,J₋}, {J₊,J₋}]`.
pub fn standard_closed_form(k: [f64; 6], eta: f64, q: Point) -> [f64; 3] {
    let [a, b, c, d, e, f] = k;
    let [j3, jp, jm] = q;
    let (sh, ch) = (sinh(eta * j3), cosh(eta * j3));
    [
        a * sh / eta + b / (2.0 * eta) * jp + c / eta * jm,
        d * sh / eta - e / eta * jp - b / (2.0 * eta) * jm,
        2.0 * f * sinh(2.0 * eta * j3) + ch * (-d * jp + a * jm),
    ]
}

pub fn standard_closed_casimir(k: [f64; 6], eta: f64, q: Point) -> f64 {
    let [a, b, c, d, e, f] = k;
    let [j3, jp, jm] = q;
    2.0 * f * cosh(2.0 * eta * j3)
        + 2.0 * sinh(eta * j3) * (-d * jp + a * jm)
        + e * jp * jp
        + jm * (b * jp + c * jm)
}

/// Closed forms in the nonstandard chart, same ordering as
/// [`standard_closed_form`].
pub fn nonstandard_closed_form(k: [f64; 6], phi: f64, q: Point) -> [f64; 3] {
    let [a, b, c, d, e, f] = k;
    let [j3, jp, jm] = q;
    let sh = sinh(phi * jm);
    [
        -2.0 * f * sinh(2.0 * phi * jm) + cosh(phi * jm) * (d * jp - a * j3),
        -d * sh / phi + e / phi * jp + b / (2.0 * phi) * j3,
        -a * sh / phi - b / (2.0 * phi) * jp - c / phi * j3,
    ]
}

pub fn nonstandard_closed_casimir(k: [f64; 6], phi: f64, q: Point) -> f64 {
    let [a, b, c, d, e, f] = k;
    let [j3, jp, jm] = q;
    2.0 * f * cosh(2.0 * phi * jm)
        + 2.0 * sinh(phi * jm) * (-d * jp + a * j3)
        + e * jp * jp
        + j3 * (b * jp + c * j3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedId {
    /// Class C: Lotka–Volterra / null-plane Poincaré.
    LvPoincare,
    /// Class D with `b = 2η, f = 1/2η`.
    Sl2Standard,
    /// Class I with `c = −2φ, d = 1`.
    Sl2Nonstandard,
    /// Class A with `f = 1/4η`.
    HeisenbergQ,
    /// Class B with `d = 1`, nonstandard chart.
    EuclideanNonstandard,
    /// Class E with `c = e = η, f = ω/η`.
    So3Q,
    /// Class F with `c = e = η`.
    EuclideanF,
    /// Class G with `c = η`.
    HeisenbergG,
    /// Class H with `c = η, f = ω/η`.
    E2Q,
}

impl NamedId {
    pub const ALL: [NamedId; 9] = [
        NamedId::LvPoincare,
        NamedId::Sl2Standard,
        NamedId::Sl2Nonstandard,
        NamedId::HeisenbergQ,
        NamedId::EuclideanNonstandard,
        NamedId::So3Q,
        NamedId::EuclideanF,
        NamedId::HeisenbergG,
        NamedId::E2Q,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedId::LvPoincare => "lv-poincare",
            NamedId::Sl2Standard => "sl2-standard",
            NamedId::Sl2Nonstandard => "sl2-nonstandard",
            NamedId::HeisenbergQ => "heisenberg-q",
            NamedId::EuclideanNonstandard => "euclidean-nonstandard",
            NamedId::So3Q => "so3-q",
            NamedId::EuclideanF => "euclidean-f",
            NamedId::HeisenbergG => "heisenberg-g",
            NamedId::E2Q => "e2-q",
        }
    }

    pub fn uses_nonstandard_chart(self) -> bool {
        matches!(
            self,
            NamedId::Sl2Nonstandard | NamedId::EuclideanNonstandard
        )
    }
}

impl fmt::Display for NamedId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedId {
    type Err = ChartError;

    fn from_str(s: &str) -> Result<Self, ChartError> {
        NamedId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| ChartError::UnknownId(s.into()))
    }
}

/// A named algebra: parameter bindings, chart and closed forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NamedStructure {
    pub id: NamedId,
    pub chart: CoordinateChart,
    /// Free coupling: `b` for the Lotka–Volterra case, `ω` in `f = ω/η` for
    /// the E and H cases; ignored elsewhere.
    pub coupling: f64,
}

impl NamedStructure {
    pub fn new(id: NamedId, deformation: f64, coupling: f64) -> Result<Self, ChartError> {
        let chart = if id.uses_nonstandard_chart() {
            CoordinateChart::nonstandard(deformation)?
        } else {
            CoordinateChart::standard(deformation)?
        };
        Ok(NamedStructure {
            id,
            chart,
            coupling,
        })
    }

    pub fn deformation(&self) -> f64 {
        self.chart
            .deformation()
            .expect("named structures use deformed charts")
    }

    /// Family coefficients `(a, b, c, d, e, f)`.
    pub fn bindings(&self) -> [f64; 6] {
        let t = self.deformation();
        let w = self.coupling;
        match self.id {
            NamedId::LvPoincare => [0.0, w, 0.0, 0.0, 0.0, 0.0],
            NamedId::Sl2Standard => [0.0, 2.0 * t, 0.0, 0.0, 0.0, 1.0 / (2.0 * t)],
            NamedId::Sl2Nonstandard => [0.0, 0.0, -2.0 * t, 1.0, 0.0, 0.0],
            NamedId::HeisenbergQ => [0.0, 0.0, 0.0, 0.0, 0.0, 1.0 / (4.0 * t)],
            NamedId::EuclideanNonstandard => [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            NamedId::So3Q => [0.0, 0.0, t, 0.0, t, w / t],
            NamedId::EuclideanF => [0.0, 0.0, t, 0.0, t, 0.0],
            NamedId::HeisenbergG => [0.0, 0.0, t, 0.0, 0.0, 0.0],
            NamedId::E2Q => [0.0, 0.0, t, 0.0, 0.0, w / t],
        }
    }

    /// The closed-form brackets `[{J₃,J₊}, {J₃,J₋}, {J₊,J₋}]`.
    pub fn closed_form(&self, q: Point) -> [f64; 3] {
        let t = self.deformation();
        let [_, b, c, d, _, f] = self.bindings();
        let [j3, jp, jm] = q;
        match self.id {
            NamedId::LvPoincare => [b / (2.0 * t) * jp, -b / (2.0 * t) * jm, 0.0],
            NamedId::Sl2Standard => [jp, -jm, sinh(2.0 * t * j3) / t],
            NamedId::Sl2Nonstandard => [jp * cosh(t * jm), -sinh(t * jm) / t, 2.0 * j3],
            NamedId::HeisenbergQ => [0.0, 0.0, 2.0 * f * sinh(2.0 * t * j3)],
            NamedId::EuclideanNonstandard => [d * jp * cosh(t * jm), -d * sinh(t * jm) / t, 0.0],
            NamedId::So3Q | NamedId::EuclideanF => {
                [c / t * jm, -c / t * jp, 2.0 * f * sinh(2.0 * t * j3)]
            }
            NamedId::HeisenbergG => [c / t * jm, 0.0, 0.0],
            NamedId::E2Q => [c / t * jm, 0.0, 2.0 * f * sinh(2.0 * t * j3)],
        }
    }

    /// The closed-form Casimir in chart coordinates.
    pub fn closed_casimir(&self, q: Point) -> f64 {
        let t = self.deformation();
        let [_, b, c, d, _, f] = self.bindings();
        let [j3, jp, jm] = q;
        match self.id {
            NamedId::LvPoincare => jp * jm,
            NamedId::Sl2Standard => cosh(2.0 * t * j3) / t + b * jp * jm,
            NamedId::Sl2Nonstandard => -2.0 * jp * sinh(t * jm) + c * j3 * j3,
            NamedId::HeisenbergQ => 2.0 * f * cosh(2.0 * t * j3),
            NamedId::EuclideanNonstandard => -2.0 * d * jp * sinh(t * jm),
            NamedId::So3Q | NamedId::EuclideanF => {
                2.0 * f * cosh(2.0 * t * j3) + c * jp * jp + c * jm * jm
            }
            NamedId::HeisenbergG => c * jm * jm,
            NamedId::E2Q => 2.0 * f * cosh(2.0 * t * j3) + c * jm * jm,
        }
    }

    /// The Casimir of the family pulled back through the chart. For the
    /// Lotka–Volterra case this is `b·J₊J₋`.
    pub fn transported_casimir(&self, q: Point) -> f64 {
        NumericBracket::new(self.bindings()).casimir(self.chart.forward(q))
    }

    pub fn pushforward(&self, q: Point) -> [f64; 3] {
        let m = pushforward_matrix(&NumericBracket::new(self.bindings()), &self.chart, q)
            .expect("chart points map into X > 0");
        [m[0][1], m[0][2], m[1][2]]
    }
}

/// Draws a chart point with all coordinates in `[−2, 2]`.
pub fn random_chart_point<R: Rng + ?Sized>(rng: &mut R) -> Point {
    core::array::from_fn(|_| uniform(rng, -2.0, 2.0))
}

/// Draws a deformation parameter from `{±1/2, ±1, ±2}`.
pub fn random_deformation<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    const CHOICES: [f64; 6] = [0.5, -0.5, 1.0, -1.0, 2.0, -2.0];
    CHOICES[rng.gen_range(0..CHOICES.len())]
}

/// Maximum over sampled points of `|pushforward − closed form|`.
pub fn named_bracket_error<R: Rng + ?Sized>(s: &NamedStructure, rng: &mut R, points: usize) -> f64 {
    (0..points)
        .map(|_| {
            let q = random_chart_point(rng);
            let (p, c) = (s.pushforward(q), s.closed_form(q));
            (0..3).map(|k| (p[k] - c[k]).abs()).fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

/// `(k₁, k₀)` with `𝒞 = k₁·C̃ + k₀`, fitted on two points and verified on
/// `points` more; returns the fitted pair and the largest residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CasimirRelation {
    pub k1: f64,
    pub k0: f64,
    pub max_residual: f64,
}

/// The classical `sl(2)` Casimir deformations: `sinh²(ηJ₃)/η² + J₊J₋` and
/// `J₃² + J₊ sinh(φJ₋)/φ`.
pub fn q_casimir(s: &NamedStructure, q: Point) -> Result<f64, ChartError> {
    let t = s.deformation();
    let [j3, jp, jm] = q;
    match s.id {
        NamedId::Sl2Standard => {
            let sh = sinh(t * j3) / t;
            Ok(sh * sh + jp * jm)
        }
        NamedId::Sl2Nonstandard => Ok(j3 * j3 + jp * sinh(t * jm) / t),
        other => Err(ChartError::NoQCasimir(other)),
    }
}

pub fn casimir_relation<R: Rng + ?Sized>(
    s: &NamedStructure,
    rng: &mut R,
    points: usize,
    tolerance: f64,
) -> Result<CasimirRelation, ChartError> {
    let sample = |rng: &mut R| -> Result<(f64, f64), ChartError> {
        let q = random_chart_point(rng);
        Ok((q_casimir(s, q)?, s.transported_casimir(q)))
    };
    let (mut p1, mut p2) = (sample(rng)?, sample(rng)?);
    while (p1.0 - p2.0).abs() < 1e-3 {
        p1 = sample(rng)?;
        p2 = sample(rng)?;
    }
    let k1 = (p2.1 - p1.1) / (p2.0 - p1.0);
    let k0 = p1.1 - k1 * p1.0;
    let mut max_residual: f64 = 0.0;
    for _ in 0..points {
        let (ct, c) = sample(rng)?;
        max_residual = max_residual.max((k1 * ct + k0 - c).abs());
    }
    if max_residual > tolerance {
        return Err(ChartError::NoRelation(max_residual));
    }
    Ok(CasimirRelation {
        k1,
        k0,
        max_residual,
    })
}

/// Largest deviation between the group product pushed through the chart
/// and the closed-form deformed coproduct, per generator `(J₃, J₊, J₋)`.
pub fn deformed_coproduct_check<R: Rng + ?Sized>(
    chart: &CoordinateChart,
    rng: &mut R,
    pairs: usize,
) -> [f64; 3] {
    let mut worst = [0.0f64; 3];
    for _ in 0..pairs {
        let (q1, q2) = (random_chart_point(rng), random_chart_point(rng));
        let expected = closed_form_coproduct(chart, q1, q2);
        let got = chart_product(chart, q1, q2);
        for k in 0..3 {
            worst[k] = worst[k].max((got[k] - expected[k]).abs());
        }
    }
    worst
}

/// Group multiplication in chart coordinates.
pub fn chart_product(chart: &CoordinateChart, q1: Point, q2: Point) -> Point {
    let [x1, y1, z1] = chart.forward(q1);
    let [x2, y2, z2] = chart.forward(q2);
    chart
        .inverse([x1 * x2, x1 * y2 + y1, x1 * z2 + z1])
        .expect("products stay in X > 0")
}

/// Closed-form coproducts: the primitive generator adds, the other two
/// pick up `e^{∓t·P}` factors with `P` the primitive generator.
pub fn closed_form_coproduct(chart: &CoordinateChart, q1: Point, q2: Point) -> Point {
    let deformed =
        |t: f64, p1: f64, p2: f64, a1: f64, a2: f64| exp(-t * p1) * a2 + a1 * exp(t * p2);
    match *chart {
        CoordinateChart::Standard { eta } => [
            q1[0] + q2[0],
            deformed(eta, q1[0], q2[0], q1[1], q2[1]),
            deformed(eta, q1[0], q2[0], q1[2], q2[2]),
        ],
        CoordinateChart::Nonstandard { phi } => [
            deformed(phi, q1[2], q2[2], q1[0], q2[0]),
            deformed(phi, q1[2], q2[2], q1[1], q2[1]),
            q1[2] + q2[2],
        ],
        CoordinateChart::Local => {
            let u1 = exp(-q1[0]);
            [q1[0] + q2[0], u1 * q2[1] + q1[1], u1 * q2[2] + q1[2]]
        }
    }
}

/// Cyclic sum `{{J₃,J₊},J₋} + {{J₊,J₋},J₃} + {{J₋,J₃},J₊}` with the outer
/// bracket taken by central differences of step `h`.
pub fn numeric_jacobi(
    bracket: &NumericBracket,
    chart: &CoordinateChart,
    q: Point,
    h: f64,
) -> Result<f64, ChartError> {
    let pi = pushforward_matrix(bracket, chart, q)?;
    let mut grads = [[[0.0; 3]; 3]; 3];
    for l in 0..3 {
        let (mut qp, mut qm) = (q, q);
        qp[l] += h;
        qm[l] -= h;
        let (mp, mm) = (
            pushforward_matrix(bracket, chart, qp)?,
            pushforward_matrix(bracket, chart, qm)?,
        );
        for i in 0..3 {
            for j in 0..3 {
                grads[i][j][l] = (mp[i][j] - mm[i][j]) / (2.0 * h);
            }
        }
    }
    // {F, J_k} = Σ_l ∂_l F {J_l, J_k}
    let outer =
        |i: usize, j: usize, k: usize| (0..3).map(|l| grads[i][j][l] * pi[l][k]).sum::<f64>();
    Ok(outer(0, 1, 2) + outer(1, 2, 0) + outer(2, 0, 1))
}

/// Maximum deviation of the standard-chart `sl(2)` deformation from the
/// Lie–Poisson brackets `{J₃,J±} = ±J±, {J₊,J₋} = 2J₃` over sampled points.
pub fn sl2_limit_error<R: Rng + ?Sized>(
    eta: f64,
    rng: &mut R,
    points: usize,
) -> Result<f64, ChartError> {
    let s = NamedStructure::new(NamedId::Sl2Standard, eta, 0.0)?;
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let q = random_chart_point(rng);
        let p = s.pushforward(q);
        let lie = [q[1], -q[2], 2.0 * q[0]];
        worst = (0..3).map(|k| (p[k] - lie[k]).abs()).fold(worst, f64::max);
    }
    Ok(worst)
}

/// Round trip `inverse ∘ forward` error over sampled points.
pub fn round_trip_error<R: Rng + ?Sized>(
    chart: &CoordinateChart,
    rng: &mut R,
    points: usize,
) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let q = random_chart_point(rng);
        let back = chart
            .inverse(chart.forward(q))
            .expect("forward lands in X > 0");
        worst = (0..3).map(|k| (back[k] - q[k]).abs()).fold(worst, f64::max);
    }
    worst
}

/// All named structures at a given deformation and coupling.
pub fn all_named(deformation: f64, coupling: f64) -> Result<Vec<NamedStructure>, ChartError> {
    NamedId::ALL
        .into_iter()
        .map(|id| NamedStructure::new(id, deformation, coupling))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_deformation_is_rejected() {
        assert_eq!(
            CoordinateChart::standard(0.0),
            Err(ChartError::ZeroDeformation)
        );
        assert!(NamedStructure::new(NamedId::Sl2Nonstandard, 0.0, 1.0).is_err());
        assert!(CoordinateChart::Local.inverse([-1.0, 0.0, 0.0]).is_err());
    }

    #[test]
    fn ids_round_trip() {
        for id in NamedId::ALL {
            assert_eq!(id.name().parse::<NamedId>().unwrap(), id);
        }
        assert!("nope".parse::<NamedId>().is_err());
    }

    #[test]
    fn lotka_volterra_pushforward() {
        let eta = 0.5;
        let chart = CoordinateChart::standard(eta).unwrap();
        let params = PLParams::from_ints([0, 3, 0, 0, 0, 0]);
        let q = [0.3, -1.1, 0.7];
        let v = pushforward_bracket(&params, &chart, 0, 1, q).unwrap();
        assert!((v - 3.0 / (2.0 * eta) * q[1]).abs() < 1e-12);
        assert_eq!(pushforward_bracket(&params, &chart, 0, 0, q).unwrap(), 0.0);
    }

    #[test]
    fn sl2_standard_at_unit_eta() {
        let s = NamedStructure::new(NamedId::Sl2Standard, 1.0, 0.0).unwrap();
        let q = [0.4, 1.5, -0.25];
        let p = s.pushforward(q);
        let want = [q[1], -q[2], sinh(2.0 * q[0])];
        for k in 0..3 {
            assert!(
                (p[k] - want[k]).abs() < 1e-12,
                "{k}: {} vs {}",
                p[k],
                want[k]
            );
        }
    }

    #[test]
    fn sl2_nonstandard_at_unit_phi() {
        let s = NamedStructure::new(NamedId::Sl2Nonstandard, 1.0, 0.0).unwrap();
        let q = [0.4, 1.5, -0.25];
        assert!((s.pushforward(q)[2] - 2.0 * q[0]).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_g_brackets() {
        let s = NamedStructure::new(NamedId::HeisenbergG, 0.5, 0.0).unwrap();
        let q = [1.0, -0.5, 0.75];
        let p = s.pushforward(q);
        assert!((p[0] - q[2]).abs() < 1e-12);
        assert!(p[1].abs() < 1e-12 && p[2].abs() < 1e-12);
    }

    #[test]
    fn generic_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let k: [f64; 6] = core::array::from_fn(|_| uniform(&mut rng, -2.0, 2.0));
            let t = random_deformation(&mut rng);
            let q = random_chart_point(&mut rng);
            let b = NumericBracket::new(k);
            for (chart, closed, cas) in [
                (
                    CoordinateChart::standard(t).unwrap(),
                    standard_closed_form(k, t, q),
                    standard_closed_casimir(k, t, q),
                ),
                (
                    CoordinateChart::nonstandard(t).unwrap(),
                    nonstandard_closed_form(k, t, q),
                    nonstandard_closed_casimir(k, t, q),
                ),
            ] {
                let m = pushforward_matrix(&b, &chart, q).unwrap();
                let got = [m[0][1], m[0][2], m[1][2]];
                for i in 0..3 {
                    assert!(
                        (got[i] - closed[i]).abs() < 1e-9,
                        "{chart:?} {i}: {} vs {}",
                        got[i],
                        closed[i]
                    );
                }
                assert!((b.casimir(chart.forward(q)) - cas).abs() < 1e-10 * (1.0 + cas.abs()));
            }
        }
    }

    #[test]
    fn named_structures_match_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for id in NamedId::ALL {
            for _ in 0..5 {
                let s = NamedStructure::new(
                    id,
                    random_deformation(&mut rng),
                    uniform(&mut rng, 0.5, 2.0),
                )
                .unwrap();
                assert!(named_bracket_error(&s, &mut rng, 20) < 1e-9, "{id}");
                let q = random_chart_point(&mut rng);
                let (c1, c2) = (s.closed_casimir(q), s.transported_casimir(q));
                let scale = if id == NamedId::LvPoincare {
                    s.coupling
                } else {
                    1.0
                };
                assert!(
                    (c1 * scale - c2).abs() < 1e-10 * (1.0 + c2.abs()),
                    "{id}: {c1} vs {c2}"
                );
            }
        }
    }

    #[test]
    fn casimir_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for eta in [0.5, -1.0, 2.0] {
            let s = NamedStructure::new(NamedId::Sl2Standard, eta, 0.0).unwrap();
            let r = casimir_relation(&s, &mut rng, 100, 1e-10).unwrap();
            assert!(
                (r.k1 - 2.0 * eta).abs() < 1e-9 && (r.k0 - 1.0 / eta).abs() < 1e-9,
                "{r:?}"
            );
            let s = NamedStructure::new(NamedId::Sl2Nonstandard, eta, 0.0).unwrap();
            let r = casimir_relation(&s, &mut rng, 100, 1e-10).unwrap();
            assert!(
                (r.k1 + 2.0 * eta).abs() < 1e-9 && r.k0.abs() < 1e-9,
                "{r:?}"
            );
        }
        let s = NamedStructure::new(NamedId::HeisenbergG, 1.0, 0.0).unwrap();
        assert!(casimir_relation(&s, &mut rng, 10, 1e-10).is_err());
    }

    #[test]
    fn coproducts() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for chart in [
            CoordinateChart::standard(0.5).unwrap(),
            CoordinateChart::nonstandard(-1.0).unwrap(),
            CoordinateChart::Local,
        ] {
            let worst = deformed_coproduct_check(&chart, &mut rng, 50);
            assert!(worst.iter().all(|&w| w < 1e-10), "{chart:?}: {worst:?}");
            let origin = [0.0; 3];
            let q = random_chart_point(&mut rng);
            let p = chart_product(&chart, origin, q);
            assert!((0..3).all(|k| (p[k] - q[k]).abs() < 1e-12));
        }
    }

    #[test]
    fn jacobi_and_limit() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let k = [0.3, -0.7, 0.2, 1.1, -0.4, 0.6];
        let b = NumericBracket::new(k);
        let chart = CoordinateChart::standard(0.5).unwrap();
        for _ in 0..20 {
            let q: Point = core::array::from_fn(|_| uniform(&mut rng, -1.0, 1.0));
            assert!(numeric_jacobi(&b, &chart, q, 1e-5).unwrap().abs() < 1e-6);
        }
        assert!(sl2_limit_error(1e-4, &mut rng, 100).unwrap() < 1e-6);
        assert!(round_trip_error(&chart, &mut rng, 100) < 1e-12);
    }
}
