//! One-way deficit `Δ→(ρ) = min_{Π} S(Σ_k Π_k ρ Π_k) - S(ρ)` for projective
//! measurements on the second qubit.
//!
//! Two routes are provided. [`minimize_over_z3`] uses the closed-form
//! spectrum of the dephased state, which depends on the measurement only
//! through the `z3` component of its axis. [`oracle_full_measurement`] makes
//! no use of that reduction: it sweeps unitaries `V = tI + i y·σ` over the
//! unit 3-sphere, forms `Σ_k (I⊗VΠ_kV†) ρ (I⊗VΠ_kV†)` as an explicit matrix
//! and diagonalizes it numerically.

use rayon::prelude::*;

use crate::linalg::{
    entropy_kernel, hermitian_eigenvalues, kron, projector, ComplexMatrix, ComplexMatrix2,
    ComplexMatrix4,
};
use crate::search::scan_then_golden;
use crate::xstate::XStateParams;
use crate::xxmodel::{classify_phase, correlators, Lambda, Phase};
use crate::{Error, Result};
use num_complex::Complex64;

/// Uniform samples taken over `z3 ∈ [0, 1]` before golden-section refinement.
pub const Z3_SCAN_POINTS: usize = 201;
/// Bracket width at which the `z3` search stops.
pub const Z3_TOL: f64 = 1e-10;
/// Smallest accepted oracle resolution.
pub const MIN_ORACLE_RESOLUTION: usize = 16;

const UNITARY_NORM_TOL: f64 = 1e-12;
const DIRECTION_NORM_TOL: f64 = 1e-10;
const RADICAND_TOL: f64 = 1e-12;

/// Number of well-separated grid minima polished by local search.
const ORACLE_REFINE_STARTS: usize = 8;
/// Minimal distance between measurement axes of two refinement starts.
const ORACLE_START_SEPARATION: f64 = 0.25;
const ORACLE_STEP_TOL: f64 = 1e-9;

/// `V = tI + i(y₁σ₁ + y₂σ₂ + y₃σ₃)` with `t² + |y|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryParams {
    pub t: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
}

impl UnitaryParams {
    pub fn new(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let norm = t * t + y1 * y1 + y2 * y2 + y3 * y3;
        if !((norm - 1.0).abs() <= UNITARY_NORM_TOL) {
            return Err(Error::UnnormalizedUnitary(norm));
        }
        Ok(Self { t, y1, y2, y3 })
    }

    /// Projects a non-zero 4-vector onto the unit sphere.
    pub fn normalized(t: f64, y1: f64, y2: f64, y3: f64) -> Result<Self> {
        let norm = (t * t + y1 * y1 + y2 * y2 + y3 * y3).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::UnnormalizedUnitary(norm * norm));
        }
        Ok(Self {
            t: t / norm,
            y1: y1 / norm,
            y2: y2 / norm,
            y3: y3 / norm,
        })
    }

    fn as_array(&self) -> [f64; 4] {
        [self.t, self.y1, self.y2, self.y3]
    }

    pub fn matrix(&self) -> ComplexMatrix2 {
        let c = Complex64::new;
        ComplexMatrix([
            [c(self.t, self.y3), c(self.y2, self.y1)],
            [c(-self.y2, self.y1), c(self.t, -self.y3)],
        ])
    }

    /// Axis of the measurement `{VΠ_kV†}`: `VΠ₀V† = ½(I + z·σ)`.
    pub fn direction(&self) -> MeasurementDirection {
        let Self { t, y1, y2, y3 } = *self;
        MeasurementDirection {
            z1: 2.0 * (-t * y2 + y1 * y3),
            z2: 2.0 * (t * y1 + y2 * y3),
            z3: t * t + y3 * y3 - y1 * y1 - y2 * y2,
        }
    }
}

/// Unit Bloch vector of the measurement axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementDirection {
    pub z1: f64,
    pub z2: f64,
    pub z3: f64,
}

impl MeasurementDirection {
    pub fn new(z1: f64, z2: f64, z3: f64) -> Result<Self> {
        let d = Self { z1, z2, z3 };
        let norm = d.norm_sqr();
        if !((norm - 1.0).abs() <= DIRECTION_NORM_TOL) {
            return Err(Error::UnnormalizedUnitary(norm));
        }
        Ok(d)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.z1 * self.z1 + self.z2 * self.z2 + self.z3 * self.z3
    }

    fn distance(&self, other: &Self) -> f64 {
        ((self.z1 - other.z1).powi(2) + (self.z2 - other.z2).powi(2) + (self.z3 - other.z3).powi(2))
            .sqrt()
    }
}

/// Outcome of a deficit evaluation; entropies in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeficitResult {
    /// `post_entropy - pre_entropy`, clamped at zero.
    pub value: f64,
    /// `|z3|` of the optimal measurement axis.
    pub minimizing_z3: f64,
    pub post_entropy: f64,
    pub pre_entropy: f64,
}

impl DeficitResult {
    fn new(pre_entropy: f64, post_entropy: f64, minimizing_z3: f64) -> Self {
        Self {
            value: (post_entropy - pre_entropy).max(0.0),
            minimizing_z3,
            post_entropy,
            pre_entropy,
        }
    }
}

/// Closed-form eigenvalues `[ω₁, ω₂, ω₃, ω₄]` of the dephased state for a
/// measurement axis with third component `z3`.
pub fn post_measurement_spectrum(p: &XStateParams, z3: f64) -> Result<[f64; 4]> {
    if !(z3.abs() <= 1.0) {
        return Err(Error::InvalidZ3(z3));
    }
    let (r, c, c3) = (p.r(), p.c(), p.c3());
    // r² ∓ 2r·c3·z3 + c² + (c3² - c²)·z3², regrouped so that no cancellation
    // occurs near pure states
    let transverse = c * c * (1.0 - z3 * z3);
    let root = |radicand: f64| {
        if radicand < -RADICAND_TOL {
            Err(Error::NegativeRadicand(radicand))
        } else {
            Ok(radicand.max(0.0).sqrt())
        }
    };
    let lower = root((r - c3 * z3).powi(2) + transverse)?;
    let upper = root((r + c3 * z3).powi(2) + transverse)?;
    Ok([
        0.25 * (1.0 - r * z3 + lower),
        0.25 * (1.0 - r * z3 - lower),
        0.25 * (1.0 + r * z3 + upper),
        0.25 * (1.0 + r * z3 - upper),
    ])
}

/// Entropy of the dephased state as a function of `z3` (even in `z3`).
pub fn post_measurement_entropy(p: &XStateParams, z3: f64) -> Result<f64> {
    entropy_kernel(&post_measurement_spectrum(p, z3)?)
}

/// Deficit from a one-variable search over `z3 ∈ [0, 1]`.
pub fn minimize_over_z3(p: &XStateParams) -> DeficitResult {
    let objective = |z3: f64| {
        post_measurement_entropy(p, z3)
            .expect("the radicands of a valid X state are sums of squares")
    };
    let best = scan_then_golden(objective, 0.0, 1.0, Z3_SCAN_POINTS, Z3_TOL);
    DeficitResult::new(p.entropy(), best.value, best.x)
}

/// The dephased state `Σ_k (I⊗B_k) ρ (I⊗B_k)` with `B_k = VΠ_kV†`.
pub fn dephased_state(rho: &ComplexMatrix4, u: &UnitaryParams) -> ComplexMatrix4 {
    let v = u.matrix();
    let v_dag = v.dagger();
    let id = ComplexMatrix2::identity();
    (0..2)
        .map(|k| {
            let lifted = kron(&id, &(v * projector(k) * v_dag));
            lifted * *rho * lifted
        })
        .fold(ComplexMatrix4::zeros(), |acc, term| acc + term)
}

fn dephased_entropy(rho: &ComplexMatrix4, u: &UnitaryParams) -> f64 {
    let spectrum =
        hermitian_eigenvalues(&dephased_state(rho, u)).expect("dephasing preserves hermiticity");
    entropy_kernel(&spectrum).expect("dephasing preserves the trace")
}

/// Largest real root of `x⁴ = x + 1`; its inverse powers give a
/// three-dimensional Kronecker sequence with low discrepancy.
const GENERALIZED_GOLDEN: f64 = 1.220_744_084_605_759_5;

/// Point `index` of a deterministic low-discrepancy sequence on S³.
///
/// A Kronecker sequence in the unit cube is mapped to the sphere by the
/// volume-preserving parametrization of unit quaternions.
pub fn sphere_point(index: usize) -> UnitaryParams {
    let g = GENERALIZED_GOLDEN;
    let alpha = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
    let u = alpha.map(|a| (0.5 + a * index as f64).fract());
    let tau = std::f64::consts::TAU;
    let (lo, hi) = ((1.0 - u[0]).sqrt(), u[0].sqrt());
    let (s1, c1) = (tau * u[1]).sin_cos();
    let (s2, c2) = (tau * u[2]).sin_cos();
    UnitaryParams::normalized(lo * s1, lo * c1, hi * s2, hi * c2).expect("unit quaternion")
}

/// Brute-force deficit over the full set of one-qubit projective
/// measurements.
///
/// Samples `resolution³` unitaries from [`sphere_point`], then polishes the
/// best few well-separated samples with a shrinking-step pattern search on
/// the sphere. Deterministic for fixed inputs.
pub fn oracle_full_measurement(p: &XStateParams, resolution: usize) -> Result<DeficitResult> {
    if resolution < MIN_ORACLE_RESOLUTION {
        return Err(Error::ResolutionTooSmall {
            min: MIN_ORACLE_RESOLUTION,
            got: resolution,
        });
    }
    let state = p.build_density_matrix()?;
    let rho = *state.matrix();
    let pre_entropy = state.entropy();

    let samples = resolution.pow(3);
    let values: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|i| dephased_entropy(&rho, &sphere_point(i)))
        .collect();

    let mut order: Vec<usize> = (0..samples).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut starts: Vec<UnitaryParams> = Vec::with_capacity(ORACLE_REFINE_STARTS);
    for &i in &order {
        if starts.len() == ORACLE_REFINE_STARTS {
            break;
        }
        let q = sphere_point(i);
        let axis = q.direction();
        if starts
            .iter()
            .all(|s| s.direction().distance(&axis) >= ORACLE_START_SEPARATION)
        {
            starts.push(q);
        }
    }

    // typical spacing between samples on a sphere of volume 2π²
    let spacing = (2.0 * std::f64::consts::PI.powi(2) / samples as f64).cbrt();
    let (best_q, best_value) = starts
        .par_iter()
        .map(|&q| pattern_search(&rho, q, spacing))
        .collect::<Vec<_>>()
        .into_iter()
        .fold((sphere_point(order[0]), values[order[0]]), |best, cand| {
            if cand.1 < best.1 {
                cand
            } else {
                best
            }
        });

    Ok(DeficitResult::new(
        pre_entropy,
        best_value,
        best_q.direction().z3.abs().min(1.0),
    ))
}

/// Coordinate pattern search over `(t, y₁, y₂, y₃)`, renormalizing after
/// each trial move.
fn pattern_search(
    rho: &ComplexMatrix4,
    start: UnitaryParams,
    initial_step: f64,
) -> (UnitaryParams, f64) {
    let mut q = start;
    let mut value = dephased_entropy(rho, &q);
    let mut step = initial_step;
    while step > ORACLE_STEP_TOL {
        let mut improved = false;
        for axis in 0..4 {
            for sign in [1.0, -1.0] {
                let mut coords = q.as_array();
                coords[axis] += sign * step;
                let trial = UnitaryParams::normalized(coords[0], coords[1], coords[2], coords[3])
                    .expect("finite trial point");
                let trial_value = dephased_entropy(rho, &trial);
                if trial_value < value {
                    q = trial;
                    value = trial_value;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (q, value)
}

/// Deficit of two adjacent bulk spins at field `lambda`.
///
/// For `λ ≥ 1` the reduced state is `|↑↑⟩⟨↑↑|` and the result is exactly zero.
pub fn deficit_for_lambda(lambda: Lambda) -> Result<DeficitResult> {
    match classify_phase(lambda) {
        Phase::Critical => {
            let p = correlators(lambda)?.to_xstate()?;
            Ok(minimize_over_z3(&p))
        }
        Phase::TransitionPoint | Phase::Polarized => Ok(DeficitResult {
            value: 0.0,
            minimizing_z3: 1.0,
            post_entropy: 0.0,
            pre_entropy: 0.0,
        }),
    }
}

/// Numeric entropy of the state itself, for callers that want the oracle's
/// view of `S(ρ)` without running the search.
pub fn numeric_entropy(p: &XStateParams) -> Result<f64> {
    Ok(p.build_density_matrix()?.entropy())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use proptest::prelude::*;

    fn params_0_6() -> XStateParams {
        correlators(Lambda::new(0.6).unwrap())
            .unwrap()
            .to_xstate()
            .unwrap()
    }

    fn params_0() -> XStateParams {
        correlators(Lambda::new(0.0).unwrap())
            .unwrap()
            .to_xstate()
            .unwrap()
    }

    fn valid_params() -> impl Strategy<Value = XStateParams> {
        (-1.0..=1.0_f64, -1.0..=1.0_f64, -1.0..=1.0_f64).prop_filter_map("not PSD", |(r, c, c3)| {
            XStateParams::new(r, c / 2.0, c3).ok()
        })
    }

    #[test]
    fn generalized_golden_ratio_root() {
        let g = GENERALIZED_GOLDEN;
        assert!((g.powi(4) - g - 1.0).abs() < 1e-15);
    }

    #[test]
    fn projector_matches_direction() {
        let u = UnitaryParams::normalized(0.3, -0.7, 0.2, 0.5).unwrap();
        let v = u.matrix();
        assert!((v * v.dagger()).max_abs_diff(&ComplexMatrix2::identity()) < 1e-15);
        let d = u.direction();
        assert!((d.norm_sqr() - 1.0).abs() < 1e-12);
        assert!(MeasurementDirection::new(d.z1, d.z2, d.z3).is_ok());
        let b0 = v * projector(0) * v.dagger();
        let bloch = (ComplexMatrix2::identity()
            + pauli(1).unwrap().scale(d.z1)
            + pauli(2).unwrap().scale(d.z2)
            + pauli(3).unwrap().scale(d.z3))
        .scale(0.5);
        assert!(b0.max_abs_diff(&bloch) < 1e-14);
    }

    #[test]
    fn conjugated_sigma3_coefficients() {
        // V†σ₃V = 2(ty₂+y₁y₃)σ₁ + 2(-ty₁+y₂y₃)σ₂ + (t²+y₃²-y₁²-y₂²)σ₃
        let u = UnitaryParams::normalized(0.1, 0.4, -0.6, 0.3).unwrap();
        let (t, y1, y2, y3) = (u.t, u.y1, u.y2, u.y3);
        let v = u.matrix();
        let lhs = v.dagger() * pauli(3).unwrap() * v;
        let rhs = pauli(1).unwrap().scale(2.0 * (t * y2 + y1 * y3))
            + pauli(2).unwrap().scale(2.0 * (-t * y1 + y2 * y3))
            + pauli(3).unwrap().scale(t * t + y3 * y3 - y1 * y1 - y2 * y2);
        assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn unitary_validation() {
        assert!(UnitaryParams::new(1.0, 0.0, 0.0, 0.0).is_ok());
        assert!(matches!(
            UnitaryParams::new(1.0, 0.1, 0.0, 0.0),
            Err(Error::UnnormalizedUnitary(_))
        ));
        assert!(UnitaryParams::normalized(0.0, 0.0, 0.0, 0.0).is_err());
        assert!(MeasurementDirection::new(0.0, 0.0, 0.9).is_err());
    }

    #[test]
    fn z3_reaches_whole_interval() {
        for i in 0..=100 {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / 100.0;
            let u = UnitaryParams::new(theta.cos(), theta.sin(), 0.0, 0.0).unwrap();
            assert!((u.direction().z3 - (2.0 * theta).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn sphere_points_are_unit_and_spread() {
        let mut mean = [0.0; 4];
        let n = 4096;
        for i in 0..n {
            let q = sphere_point(i).as_array();
            let norm: f64 = q.iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            for k in 0..4 {
                mean[k] += q[k] / n as f64;
            }
        }
        assert!(mean.iter().all(|m| m.abs() < 0.02), "{mean:?}");
    }

    #[test]
    fn spectrum_examples() {
        let mixed = XStateParams::maximally_mixed();
        assert_eq!(post_measurement_spectrum(&mixed, 0.7).unwrap(), [0.25; 4]);

        let pure = XStateParams::pure_up_up();
        assert_eq!(
            post_measurement_spectrum(&pure, 1.0).unwrap(),
            [0.0, 0.0, 1.0, 0.0]
        );

        let p = params_0_6();
        let w = post_measurement_spectrum(&p, 0.0).unwrap();
        let root = (p.r().powi(2) + p.c().powi(2)).sqrt();
        let expected = [0.25 * (1.0 + root), 0.25 * (1.0 - root)];
        for (got, want) in [
            (w[0], expected[0]),
            (w[1], expected[1]),
            (w[2], expected[0]),
            (w[3], expected[1]),
        ] {
            assert!((got - want).abs() < 1e-15);
        }
        assert!(matches!(
            post_measurement_spectrum(&p, 1.5),
            Err(Error::InvalidZ3(_))
        ));
        assert!(post_measurement_spectrum(&p, f64::NAN).is_err());
    }

    #[test]
    fn closed_form_spectrum_matches_explicit_dephasing() {
        let p = params_0_6();
        let rho = p.build_density_matrix().unwrap();
        for i in 0..50 {
            let u = sphere_point(i * 37);
            let numeric = hermitian_eigenvalues(&dephased_state(rho.matrix(), &u)).unwrap();
            let mut closed =
                post_measurement_spectrum(&p, u.direction().z3.clamp(-1.0, 1.0)).unwrap();
            closed.sort_by(|a, b| b.total_cmp(a));
            for (a, b) in numeric.iter().zip(closed) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn trivial_deficits() {
        let mixed = minimize_over_z3(&XStateParams::maximally_mixed());
        assert_eq!(mixed.value, 0.0);
        assert_eq!(mixed.post_entropy, 2.0);
        let pure = minimize_over_z3(&XStateParams::pure_up_up());
        assert_eq!(pure.value, 0.0);
        assert_eq!(pure.minimizing_z3, 1.0);
    }

    #[test]
    fn reference_deficit() {
        let d = minimize_over_z3(&params_0_6());
        assert!((d.value - 0.418314).abs() < 1e-4, "{d:?}");
        // frozen from an independent Nelder–Mead search over the measurement sphere
        assert!((d.minimizing_z3 - 0.6998).abs() < 1e-3, "{d:?}");
        let total = post_measurement_entropy(&params_0_6(), d.minimizing_z3).unwrap();
        assert!((total - d.pre_entropy - 0.418314).abs() < 1e-4);
    }

    #[test]
    fn zero_field_deficit() {
        // frozen from an independent brute-force search over the measurement sphere
        let d = minimize_over_z3(&params_0());
        assert!((d.value - 0.316239541866).abs() < 1e-6, "{d:?}");
        assert!(d.minimizing_z3 < 1e-4);
    }

    #[test]
    fn oracle_matches_closed_form_at_zero_field() {
        let closed = minimize_over_z3(&params_0());
        let oracle = oracle_full_measurement(&params_0(), 24).unwrap();
        assert!(
            (closed.value - oracle.value).abs() < 1e-6,
            "{closed:?} {oracle:?}"
        );
    }

    #[test]
    fn oracle_trivial_states() {
        let mixed = oracle_full_measurement(&XStateParams::maximally_mixed(), 16).unwrap();
        assert!(mixed.value.abs() < 1e-12);
        assert!((mixed.post_entropy - 2.0).abs() < 1e-12);
        let pure = oracle_full_measurement(&XStateParams::pure_up_up(), 16).unwrap();
        assert!(pure.value < 1e-9);
        assert!(matches!(
            oracle_full_measurement(&XStateParams::pure_up_up(), 8),
            Err(Error::ResolutionTooSmall { min: 16, got: 8 })
        ));
    }

    #[test]
    fn oracle_is_deterministic() {
        let p = params_0_6();
        assert_eq!(
            oracle_full_measurement(&p, 16).unwrap(),
            oracle_full_measurement(&p, 16).unwrap()
        );
    }

    #[test]
    fn lambda_branches() {
        let d = deficit_for_lambda(Lambda::new(0.6).unwrap()).unwrap();
        assert!((d.value - 0.418314).abs() < 1e-4);
        for l in [1.0, 1.2, 1.5] {
            let d = deficit_for_lambda(Lambda::new(l).unwrap()).unwrap();
            assert_eq!(d.value, 0.0);
            assert_eq!(d.pre_entropy, 0.0);
        }
        assert!(deficit_for_lambda(Lambda::new(0.0).unwrap()).unwrap().value > 0.0);
    }

    #[test]
    fn numeric_entropy_agrees() {
        let p = params_0_6();
        assert!((numeric_entropy(&p).unwrap() - p.entropy()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn post_spectrum_normalized(p in valid_params(), z3 in -1.0..=1.0_f64) {
            let w = post_measurement_spectrum(&p, z3).unwrap();
            prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(w.iter().all(|x| (-1e-12..=1.0 + 1e-12).contains(x)));
        }

        #[test]
        fn post_entropy_even(p in valid_params(), z3 in -1.0..=1.0_f64) {
            let a = post_measurement_entropy(&p, z3).unwrap();
            let b = post_measurement_entropy(&p, -z3).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn measurement_never_lowers_entropy(p in valid_params(), z3 in -1.0..=1.0_f64) {
            prop_assert!(post_measurement_entropy(&p, z3).unwrap() >= p.entropy() - 1e-9);
        }
    }
}
