//! Hamiltonian flows of the log-linear Lotka–Volterra Hamiltonian on the
//! family, and an adaptive Dormand–Prince 5(4) integrator with conservation
//! diagnostics.

use alloc::vec::Vec;

use libm::{fabs, log, pow, sqrt};
use rand::Rng;

use crate::charts::NumericBracket;
use crate::sample::uniform;

/// `H = Σ αᵢ wᵢ + βᵢ log wᵢ` with `w = (X, Y, Z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LVHamiltonian {
    pub alpha: [f64; 3],
    pub beta: [f64; 3],
}

impl LVHamiltonian {
    pub fn new(alpha: [f64; 3], beta: [f64; 3]) -> Self {
        LVHamiltonian { alpha, beta }
    }

    pub fn has_logs(&self) -> bool {
        self.beta.iter().any(|&b| b != 0.0)
    }

    pub fn value(&self, w: [f64; 3]) -> f64 {
        (0..3)
            .map(|i| {
                let lin = self.alpha[i] * w[i];
                if self.beta[i] == 0.0 {
                    lin
                } else {
                    lin + self.beta[i] * log(w[i])
                }
            })
            .sum()
    }

    /// `∂H/∂wᵢ = αᵢ + βᵢ/wᵢ`.
    pub fn gradient(&self, w: [f64; 3]) -> [f64; 3] {
        core::array::from_fn(|i| {
            if self.beta[i] == 0.0 {
                self.alpha[i]
            } else {
                self.alpha[i] + self.beta[i] / w[i]
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct State {
    pub t: f64,
    pub w: [f64; 3],
}

impl State {
    pub fn new(t: f64, w: [f64; 3]) -> Self {
        State { t, w }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum DynamicsError {
    #[error("state {w:?} is outside the domain of the logarithmic Hamiltonian")]
    Domain { w: [f64; 3] },
    #[error("tolerances must be positive (rtol = {rtol}, atol = {atol})")]
    Tolerance { rtol: f64, atol: f64 },
    #[error("step size underflow at t = {}", last.t)]
    StepUnderflow { last: State },
    #[error("trajectory left the domain after t = {}", last.t)]
    DomainExit { last: State },
    #[error("coordinate lost positivity after t = {}", last.t)]
    PositivityLost { last: State },
    #[error("step limit {limit} reached at t = {}", last.t)]
    StepLimit { last: State, limit: usize },
    #[error("non-finite vector field after t = {}", last.t)]
    NonFinite { last: State },
}

fn check_domain(h: &LVHamiltonian, w: [f64; 3]) -> Result<(), DynamicsError> {
    if h.has_logs() && w.iter().any(|&v| v.is_nan() || v <= 0.0) {
        return Err(DynamicsError::Domain { w });
    }
    Ok(())
}

/// The Lotka–Volterra system of the class C bracket with coupling `b`.
pub fn lv_vector_field(b: f64, h: &LVHamiltonian, w: [f64; 3]) -> Result<[f64; 3], DynamicsError> {
    check_domain(h, w)?;
    let ([a1, a2, a3], [b1, b2, b3]) = (h.alpha, h.beta);
    let [x, y, z] = w;
    Ok([
        b * x * (a3 * z - a2 * y + (b3 - b2)),
        b * y * (a1 * x + a3 * z + (b1 + b3)),
        b * z * (-a1 * x - a2 * y - (b1 + b2)),
    ])
}

/// Which form of the last term of `Ż` to use in [`deformed_vector_field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZTerm {
    /// `−eY[2(α₁Y + β₁) + (α₂Y + β₂)]`.
    Uncorrected,
    /// `−eY[2(α₁X + β₁) + (α₂Y + β₂)]`, which is what the bracket gives.
    Corrected,
}

/// The five-parameter perturbation of the Lotka–Volterra system, written out
/// term by term.
pub fn deformed_vector_field(
    k: [f64; 6],
    h: &LVHamiltonian,
    w: [f64; 3],
    z_term: ZTerm,
) -> Result<[f64; 3], DynamicsError> {
    check_domain(h, w)?;
    let [a, b, c, d, e, f] = k;
    let ([a1, a2, a3], [b1, b2, b3]) = (h.alpha, h.beta);
    let [x, y, z] = w;
    if (b2 != 0.0 && y == 0.0) || (b3 != 0.0 && z == 0.0) {
        return Err(DynamicsError::Domain { w });
    }
    let hy = if b2 == 0.0 { a2 } else { a2 + b2 / y };
    let hz = if b3 == 0.0 { a3 } else { a3 + b3 / z };
    let px = a1 * x + b1;
    let py = a2 * y + b2;
    let pz = a3 * z + b3;

    let xdot = b * x * (a3 * z - a2 * y + (b3 - b2))
        + hy * (a * x * (x - 1.0) - 2.0 * c * x * z)
        + hz * (d * x * (x - 1.0) + 2.0 * e * x * y);
    let ydot = b * y * (a1 * x + a3 * z + (b1 + b3))
        + a * (pz - (x - 1.0) * px)
        + c * z * (2.0 * px + pz)
        + hz * (y * (e * y - d) + f * (1.0 - x * x));
    let e_inner = match z_term {
        ZTerm::Uncorrected => a1 * y + b1,
        ZTerm::Corrected => px,
    };
    let zdot = b * z * (-a1 * x - a2 * y - (b1 + b2))
        + d * ((1.0 - x) * px + py)
        + hy * (f * (x * x - 1.0) - z * (a + c * z))
        - e * y * (2.0 * e_inner + py);
    Ok([xdot, ydot, zdot])
}

/// `ẇᵢ = Σⱼ {wᵢ, wⱼ} ∂H/∂wⱼ` for a Hamiltonian given by its gradient.
pub fn flow_from_gradient(bracket: &NumericBracket, w: [f64; 3], grad: [f64; 3]) -> [f64; 3] {
    let p = bracket.matrix(w);
    core::array::from_fn(|i| (0..3).map(|j| p[i][j] * grad[j]).sum())
}

/// The bracket-driven flow of the log-linear Hamiltonian.
pub fn hamiltonian_flow(
    bracket: &NumericBracket,
    h: &LVHamiltonian,
    w: [f64; 3],
) -> Result<[f64; 3], DynamicsError> {
    check_domain(h, w)?;
    Ok(flow_from_gradient(bracket, w, h.gradient(w)))
}

/// Gradient of the Casimir `N/X` with
/// `N = f(1+X²) + (X−1)(dY−aZ) + eY² + bYZ + cZ²`.
pub fn casimir_gradient(k: [f64; 6], w: [f64; 3]) -> [f64; 3] {
    let [a, b, c, d, e, f] = k;
    let [x, y, z] = w;
    let n = f * (1.0 + x * x) + (x - 1.0) * (d * y - a * z) + e * y * y + b * y * z + c * z * z;
    [
        (2.0 * f * x + d * y - a * z) / x - n / (x * x),
        ((x - 1.0) * d + 2.0 * e * y + b * z) / x,
        (-(x - 1.0) * a + b * y + 2.0 * c * z) / x,
    ]
}

/// `{H, 𝒞}` at a point.
pub fn hamiltonian_casimir_bracket(k: [f64; 6], h: &LVHamiltonian, w: [f64; 3]) -> f64 {
    let bracket = NumericBracket::new(k);
    let flow = flow_from_gradient(&bracket, w, casimir_gradient(k, w));
    // {H, C} = −{C, H} = −Σ ∂H/∂wᵢ {wᵢ, C}
    let g = h.gradient(w);
    -(0..3).map(|i| g[i] * flow[i]).sum::<f64>()
}

/// Largest `|{H, 𝒞}|` over `points` random states in `(0.1, 3)³`.
pub fn involution_check<R: Rng + ?Sized>(
    k: [f64; 6],
    h: &LVHamiltonian,
    rng: &mut R,
    points: usize,
) -> f64 {
    (0..points)
        .map(|_| {
            let w = core::array::from_fn(|_| uniform(rng, 0.1, 3.0));
            fabs(hamiltonian_casimir_bracket(k, h, w))
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Abort when a coordinate drops below this value (used when the
    /// Hamiltonian has logarithms).
    pub domain_floor: Option<f64>,
    /// Fail the run if any coordinate becomes nonpositive.
    pub require_positive: bool,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        IntegratorOptions {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 1_000_000,
            domain_floor: None,
            require_positive: false,
        }
    }
}

impl IntegratorOptions {
    /// Defaults plus the domain floor `1e−12` when `h` has logarithms.
    pub fn for_hamiltonian(h: &LVHamiltonian) -> Self {
        IntegratorOptions {
            domain_floor: h.has_logs().then_some(1e-12),
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub state: State,
    pub h: f64,
    pub casimir: f64,
    pub rel_h: f64,
    pub rel_casimir: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    pub steps: usize,
    pub rejections: usize,
    pub evaluations: usize,
    pub options: IntegratorOptions,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples
            .last()
            .expect("trajectories hold the initial state")
    }

    pub fn max_rel_h(&self) -> f64 {
        self.samples.iter().map(|s| s.rel_h).fold(0.0, f64::max)
    }

    pub fn max_rel_casimir(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.rel_casimir)
            .fold(0.0, f64::max)
    }
}

fn relative(v: f64, v0: f64) -> f64 {
    if v0 == 0.0 {
        fabs(v)
    } else {
        fabs((v - v0) / v0)
    }
}

// Dormand–Prince 5(4) tableau; the field is autonomous so the nodes are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights minus fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const FAC_MIN: f64 = 0.2;
const FAC_MAX: f64 = 10.0;
const PI_BETA: f64 = 0.04;
const PI_ALPHA: f64 = 0.2 - 0.75 * PI_BETA;

fn axpy(y: [f64; 3], h: f64, terms: &[([f64; 3], f64)]) -> [f64; 3] {
    core::array::from_fn(|i| y[i] + h * terms.iter().map(|(k, c)| c * k[i]).sum::<f64>())
}

/// Integrates `ẇ = field(w)` from `s0` to `t_end`, recording `H` and the
/// Casimir at every accepted step.
pub fn integrate<F>(
    mut field: F,
    s0: State,
    t_end: f64,
    opts: IntegratorOptions,
    hamiltonian: impl Fn([f64; 3]) -> f64,
    casimir: impl Fn([f64; 3]) -> f64,
) -> Result<Trajectory, DynamicsError>
where
    F: FnMut([f64; 3]) -> Result<[f64; 3], DynamicsError>,
{
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return Err(DynamicsError::Tolerance {
            rtol: opts.rtol,
            atol: opts.atol,
        });
    }
    let (h0, c0) = (hamiltonian(s0.w), casimir(s0.w));
    let sample = |s: State| {
        let (h, c) = (hamiltonian(s.w), casimir(s.w));
        Sample {
            state: s,
            h,
            casimir: c,
            rel_h: relative(h, h0),
            rel_casimir: relative(c, c0),
        }
    };
    let mut traj = Trajectory {
        samples: alloc::vec![sample(s0)],
        steps: 0,
        rejections: 0,
        evaluations: 0,
        options: opts,
    };
    let span = t_end - s0.t;
    if span <= 0.0 {
        return Ok(traj);
    }
    let mut eval =
        |w: [f64; 3], last: State, evals: &mut usize| -> Result<[f64; 3], DynamicsError> {
            *evals += 1;
            let k = field(w).map_err(|e| match e {
                DynamicsError::Domain { .. } => DynamicsError::DomainExit { last },
                other => other,
            })?;
            if k.iter().all(|v| v.is_finite()) {
                Ok(k)
            } else {
                Err(DynamicsError::NonFinite { last })
            }
        };

    let mut cur = s0;
    let mut k1 = eval(cur.w, cur, &mut traj.evaluations)?;
    let mut h = initial_step(&cur, &k1, span, &opts);
    let mut err_prev: f64 = 1e-4;
    let mut rejected_last = false;

    while cur.t < t_end {
        if traj.steps >= opts.max_steps {
            return Err(DynamicsError::StepLimit {
                last: cur,
                limit: opts.max_steps,
            });
        }
        if h < 1e-14 * fabs(cur.t).max(1.0) {
            return Err(DynamicsError::StepUnderflow { last: cur });
        }
        let last_step = cur.t + h >= t_end;
        if last_step {
            h = t_end - cur.t;
        }
        let y = cur.w;
        let mut k = [[0.0; 3]; 7];
        k[0] = k1;
        for s in 1..7 {
            let terms: Vec<([f64; 3], f64)> = (0..s).map(|j| (k[j], A[s][j])).collect();
            k[s] = eval(axpy(y, h, &terms), cur, &mut traj.evaluations)?;
        }
        let terms: Vec<([f64; 3], f64)> = (0..6).map(|j| (k[j], A[6][j])).collect();
        let y_new = axpy(y, h, &terms);
        let mut sq = 0.0;
        for i in 0..3 {
            let err_i = h * (0..7).map(|j| E[j] * k[j][i]).sum::<f64>();
            let scale = opts.atol + opts.rtol * fabs(y[i]).max(fabs(y_new[i]));
            sq += (err_i / scale) * (err_i / scale);
        }
        let err = sqrt(sq / 3.0);

        if err <= 1.0 {
            let next = State::new(if last_step { t_end } else { cur.t + h }, y_new);
            if let Some(floor) = opts.domain_floor {
                if y_new.iter().any(|&v| v < floor) {
                    return Err(DynamicsError::DomainExit { last: cur });
                }
            }
            if opts.require_positive && y_new.iter().any(|&v| v <= 0.0) {
                return Err(DynamicsError::PositivityLost { last: cur });
            }
            cur = next;
            k1 = k[6];
            traj.steps += 1;
            traj.samples.push(sample(cur));
            let err_c = err.max(1e-10);
            let mut fac = SAFETY * pow(err_c, -PI_ALPHA) * pow(err_prev, PI_BETA);
            fac = fac.clamp(FAC_MIN, FAC_MAX);
            if rejected_last {
                fac = fac.min(1.0);
            }
            h *= fac;
            err_prev = err_c;
            rejected_last = false;
        } else {
            traj.rejections += 1;
            let fac = (SAFETY * pow(err, -PI_ALPHA)).max(FAC_MIN);
            h *= fac;
            rejected_last = true;
        }
    }
    Ok(traj)
}

/// Starting step from the size of the state and its derivative.
fn initial_step(s: &State, f0: &[f64; 3], span: f64, opts: &IntegratorOptions) -> f64 {
    let scale = |i: usize| opts.atol + opts.rtol * fabs(s.w[i]);
    let norm = |v: &[f64; 3]| {
        sqrt(
            (0..3)
                .map(|i| {
                    let r = v[i] / scale(i);
                    r * r
                })
                .sum::<f64>()
                / 3.0,
        )
    };
    let d0 = norm(&s.w);
    let d1 = norm(f0);
    let h = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    h.min(span)
}

/// Conservation run for the log-linear Hamiltonian on the family.
pub fn simulate(
    k: [f64; 6],
    h: &LVHamiltonian,
    s0: State,
    t_end: f64,
    opts: IntegratorOptions,
    field: FieldChoice,
) -> Result<Trajectory, DynamicsError> {
    check_domain(h, s0.w)?;
    let bracket = NumericBracket::new(k);
    let casimir = |w: [f64; 3]| bracket.casimir(w);
    let ham = |w: [f64; 3]| h.value(w);
    match field {
        FieldChoice::Explicit => {
            let lv_stratum = [0, 2, 3, 4, 5].iter().all(|&i| k[i] == 0.0);
            if lv_stratum {
                integrate(
                    |w| lv_vector_field(k[1], h, w),
                    s0,
                    t_end,
                    opts,
                    ham,
                    casimir,
                )
            } else {
                integrate(
                    |w| deformed_vector_field(k, h, w, ZTerm::Corrected),
                    s0,
                    t_end,
                    opts,
                    ham,
                    casimir,
                )
            }
        }
        FieldChoice::Bracket => integrate(
            |w| hamiltonian_flow(&bracket, h, w),
            s0,
            t_end,
            opts,
            ham,
            casimir,
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    /// The written-out system (Lotka–Volterra or its corrected perturbation).
    Explicit,
    /// The flow computed from the bracket and `∇H`.
    Bracket,
}
