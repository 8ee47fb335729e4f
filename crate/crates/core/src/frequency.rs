//! Frequency models: amplitude profiles with closed-form derivatives and the
//! amplitude → frequency construction
//!
//!     omega²(t) = (1 + eps² - 2 eps_dot xi²) / (4 xi⁴),      eps = d(xi²)/dt,
//!
//! which is the single source of truth for every catalog frequency. The
//! catalog covers constant, exponential, hyperbolic, power-law, logarithmic
//! and oscillatory amplitudes; `Tabulated` interpolates measured omega²
//! samples and `CustomAmplitude` wraps a user-supplied xi²(t).

use crate::error::{Error, Result};
use crate::interp::{Interpolant, InterpKind};
use num_complex::Complex64;
use serde_json::{json, Map, Value};
use std::fmt;
use std::sync::Arc;

pub type AmplitudeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Open interval on which a model's amplitude is positive (closed for
/// tabulated data, whose endpoints are valid samples).
#[derive(Debug, Clone)]
pub struct ValidityDomain {
    pub t_min: f64,
    pub t_max: f64,
    pub closed: bool,
    pub reason: String,
}

impl ValidityDomain {
    pub fn all(reason: &str) -> Self {
        ValidityDomain {
            t_min: f64::NEG_INFINITY,
            t_max: f64::INFINITY,
            closed: false,
            reason: reason.into(),
        }
    }

    pub fn open(t_min: f64, t_max: f64, reason: &str) -> Self {
        ValidityDomain { t_min, t_max, closed: false, reason: reason.into() }
    }

    pub fn contains(&self, t: f64) -> bool {
        if !t.is_finite() {
            return false;
        }
        if self.closed {
            t >= self.t_min && t <= self.t_max
        } else {
            t > self.t_min && t < self.t_max
        }
    }

    /// Intersect with a user-requested window.
    fn narrow(&self, lo: f64, hi: f64) -> Result<ValidityDomain> {
        let t_min = self.t_min.max(lo);
        let t_max = self.t_max.min(hi);
        if !(t_min < t_max) {
            return Err(Error::Model(format!(
                "requested domain [{lo}, {hi}] does not intersect natural domain ({}, {})",
                self.t_min, self.t_max
            )));
        }
        Ok(ValidityDomain {
            t_min,
            t_max,
            closed: self.closed,
            reason: self.reason.clone(),
        })
    }
}

#[derive(Clone)]
pub enum ModelKind {
    Constant { omega0: f64 },
    Exponential { epsilon0: f64, lambda: f64 },
    HyperbolicCosh { epsilon0: f64, tau: f64 },
    HyperbolicSinh { epsilon0: f64, tau: f64 },
    PowerLaw { epsilon0: f64, tau: f64, n: f64 },
    LogAmplitude { epsilon0: f64, tau: f64 },
    OscillatoryCos { a: f64, b: f64, omega0: f64 },
    OscillatorySin { a: f64, b: f64, omega0: f64 },
    Tabulated { table: Interpolant },
    CustomAmplitude {
        xi_sq: AmplitudeFn,
        deriv1: Option<AmplitudeFn>,
        deriv2: Option<AmplitudeFn>,
        fd_step: Option<f64>,
    },
}

impl fmt::Debug for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Constant { omega0 } => write!(f, "Constant {{ omega0: {omega0} }}"),
            ModelKind::Exponential { epsilon0, lambda } => {
                write!(f, "Exponential {{ epsilon0: {epsilon0}, lambda: {lambda} }}")
            }
            ModelKind::HyperbolicCosh { epsilon0, tau } => {
                write!(f, "HyperbolicCosh {{ epsilon0: {epsilon0}, tau: {tau} }}")
            }
            ModelKind::HyperbolicSinh { epsilon0, tau } => {
                write!(f, "HyperbolicSinh {{ epsilon0: {epsilon0}, tau: {tau} }}")
            }
            ModelKind::PowerLaw { epsilon0, tau, n } => {
                write!(f, "PowerLaw {{ epsilon0: {epsilon0}, tau: {tau}, n: {n} }}")
            }
            ModelKind::LogAmplitude { epsilon0, tau } => {
                write!(f, "LogAmplitude {{ epsilon0: {epsilon0}, tau: {tau} }}")
            }
            ModelKind::OscillatoryCos { a, b, omega0 } => {
                write!(f, "OscillatoryCos {{ a: {a}, b: {b}, omega0: {omega0} }}")
            }
            ModelKind::OscillatorySin { a, b, omega0 } => {
                write!(f, "OscillatorySin {{ a: {a}, b: {b}, omega0: {omega0} }}")
            }
            ModelKind::Tabulated { table } => write!(
                f,
                "Tabulated {{ {} samples on [{}, {}] }}",
                table.times().len(),
                table.t_min(),
                table.t_max()
            ),
            ModelKind::CustomAmplitude { deriv1, deriv2, .. } => write!(
                f,
                "CustomAmplitude {{ analytic derivatives: {} }}",
                deriv1.is_some() && deriv2.is_some()
            ),
        }
    }
}

/// A time-dependent frequency, immutable after construction; all evaluations
/// are pure functions of `(model, t)`.
#[derive(Debug, Clone)]
pub struct FrequencyModel {
    kind: ModelKind,
    domain: ValidityDomain,
}

/// The amplitude → frequency map. The sign of the result is meaningful
/// (negative means locally unstable motion); only xi² <= 0 is an error.
pub fn construct_frequency(xi_squared: f64, epsilon: f64, epsilon_dot: f64) -> Result<f64> {
    if !(xi_squared > 0.0) {
        return Err(Error::Domain(format!(
            "squared amplitude must be positive, got {xi_squared}"
        )));
    }
    Ok((1.0 + epsilon * epsilon - 2.0 * epsilon_dot * xi_squared)
        / (4.0 * xi_squared * xi_squared))
}

impl FrequencyModel {
    // ---- constructors ------------------------------------------------

    pub fn constant(omega0: f64) -> Result<Self> {
        if !(omega0 > 0.0) {
            return Err(Error::Model(format!("constant model needs omega0 > 0, got {omega0}")));
        }
        Ok(FrequencyModel {
            kind: ModelKind::Constant { omega0 },
            domain: ValidityDomain::all("xi² = 1/(2 omega0) is positive everywhere"),
        })
    }

    pub fn exponential(epsilon0: f64, lambda: f64) -> Result<Self> {
        if !(epsilon0 > 0.0) || lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::Model(format!(
                "exponential model needs epsilon0 > 0 and lambda != 0, got ({epsilon0}, {lambda})"
            )));
        }
        if lambda < 0.0 {
            // xi² = epsilon0 e^{lambda t} / lambda < 0 for every t
            return Err(Error::Model(
                "exponential model with lambda < 0 has xi² < 0 everywhere (empty domain)".into(),
            ));
        }
        Ok(FrequencyModel {
            kind: ModelKind::Exponential { epsilon0, lambda },
            domain: ValidityDomain::all("xi² = epsilon0 e^{lambda t}/lambda > 0 for lambda > 0"),
        })
    }

    pub fn hyperbolic_cosh(epsilon0: f64, tau: f64) -> Result<Self> {
        if !(epsilon0 > 0.0) || tau == 0.0 || !tau.is_finite() {
            return Err(Error::Model(format!(
                "cosh model needs epsilon0 > 0 and tau != 0, got ({epsilon0}, {tau})"
            )));
        }
        if tau < 0.0 {
            return Err(Error::Model(
                "cosh model with tau < 0 has xi² < 0 everywhere (empty domain)".into(),
            ));
        }
        Ok(FrequencyModel {
            kind: ModelKind::HyperbolicCosh { epsilon0, tau },
            domain: ValidityDomain::all("xi² = epsilon0 tau cosh(t/tau) > 0"),
        })
    }

    pub fn hyperbolic_sinh(epsilon0: f64, tau: f64) -> Result<Self> {
        if !(epsilon0 > 0.0) || tau == 0.0 || !tau.is_finite() {
            return Err(Error::Model(format!(
                "sinh model needs epsilon0 > 0 and tau != 0, got ({epsilon0}, {tau})"
            )));
        }
        let domain = if tau > 0.0 {
            ValidityDomain::open(0.0, f64::INFINITY, "xi² > 0 requires t/tau > 0")
        } else {
            ValidityDomain::open(f64::NEG_INFINITY, 0.0, "xi² > 0 requires t/tau > 0")
        };
        Ok(FrequencyModel { kind: ModelKind::HyperbolicSinh { epsilon0, tau }, domain })
    }

    pub fn power_law(epsilon0: f64, tau: f64, n: f64) -> Result<Self> {
        if !(epsilon0 > 0.0) || !(tau > 0.0) || !n.is_finite() {
            return Err(Error::Model(format!(
                "power-law model needs epsilon0 > 0 and tau > 0, got ({epsilon0}, {tau}, {n})"
            )));
        }
        if n == -1.0 {
            return Err(Error::Model(
                "power-law exponent n = -1 is the log_amplitude model".into(),
            ));
        }
        if n < -1.0 {
            // the n+1 prefactor makes xi² negative for every t > 0
            return Err(Error::Model(format!(
                "power-law model with n < -1 has xi² < 0 on t > 0 (empty domain), got n = {n}"
            )));
        }
        Ok(FrequencyModel {
            kind: ModelKind::PowerLaw { epsilon0, tau, n },
            domain: ValidityDomain::open(0.0, f64::INFINITY, "xi² > 0 requires t > 0"),
        })
    }

    pub fn log_amplitude(epsilon0: f64, tau: f64) -> Result<Self> {
        if !(epsilon0 > 0.0) || !(tau > 0.0) {
            return Err(Error::Model(format!(
                "log model needs epsilon0 > 0 and tau > 0, got ({epsilon0}, {tau})"
            )));
        }
        Ok(FrequencyModel {
            kind: ModelKind::LogAmplitude { epsilon0, tau },
            domain: ValidityDomain::open(1.0, f64::INFINITY, "xi² = epsilon0 tau ln t > 0 requires t > 1"),
        })
    }

    pub fn oscillatory_cos(a: f64, b: f64, omega0: f64) -> Result<Self> {
        Self::oscillatory_check(a, b, omega0)?;
        Ok(FrequencyModel {
            kind: ModelKind::OscillatoryCos { a, b, omega0 },
            domain: ValidityDomain::all("a > |b| keeps xi² positive for all t"),
        })
    }

    pub fn oscillatory_sin(a: f64, b: f64, omega0: f64) -> Result<Self> {
        Self::oscillatory_check(a, b, omega0)?;
        Ok(FrequencyModel {
            kind: ModelKind::OscillatorySin { a, b, omega0 },
            domain: ValidityDomain::all("a > |b| keeps xi² positive for all t"),
        })
    }

    fn oscillatory_check(a: f64, b: f64, omega0: f64) -> Result<()> {
        if !(a > b.abs()) || !(omega0 > 0.0) {
            return Err(Error::Model(format!(
                "oscillatory model needs a > |b| and omega0 > 0, got (a = {a}, b = {b}, omega0 = {omega0})"
            )));
        }
        Ok(())
    }

    pub fn tabulated(times: Vec<f64>, omega_squared: Vec<f64>, interp: InterpKind) -> Result<Self> {
        let table = Interpolant::new(times, omega_squared, interp)?;
        let domain = ValidityDomain {
            t_min: table.t_min(),
            t_max: table.t_max(),
            closed: true,
            reason: "tabulated omega² is defined between its first and last sample".into(),
        };
        Ok(FrequencyModel { kind: ModelKind::Tabulated { table }, domain })
    }

    /// A user-supplied xi²(t) with optional analytic first/second derivatives;
    /// missing derivatives fall back to central differences with step
    /// `max(|t|, 1) * cbrt(machine epsilon)` (override with `fd_step`).
    pub fn custom_amplitude(
        xi_sq: AmplitudeFn,
        deriv1: Option<AmplitudeFn>,
        deriv2: Option<AmplitudeFn>,
        domain: (f64, f64),
        fd_step: Option<f64>,
    ) -> Result<Self> {
        if !(domain.0 < domain.1) {
            return Err(Error::Model("custom amplitude domain is empty".into()));
        }
        if let Some(h) = fd_step {
            if !(h > 0.0) {
                return Err(Error::Model("fd_step must be positive".into()));
            }
        }
        Ok(FrequencyModel {
            kind: ModelKind::CustomAmplitude { xi_sq, deriv1, deriv2, fd_step },
            domain: ValidityDomain::open(domain.0, domain.1, "user-declared domain"),
        })
    }

    /// Narrow the validity domain to a user window (always shrinks).
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Result<Self> {
        self.domain = self.domain.narrow(lo, hi)?;
        Ok(self)
    }

    // ---- basic accessors ----------------------------------------------

    pub fn domain(&self) -> &ValidityDomain {
        &self.domain
    }

    pub fn kind(&self) -> &ModelKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::Constant { .. } => "constant",
            ModelKind::Exponential { .. } => "exponential",
            ModelKind::HyperbolicCosh { .. } => "hyperbolic_cosh",
            ModelKind::HyperbolicSinh { .. } => "hyperbolic_sinh",
            ModelKind::PowerLaw { .. } => "power_law",
            ModelKind::LogAmplitude { .. } => "log_amplitude",
            ModelKind::OscillatoryCos { .. } => "oscillatory_cos",
            ModelKind::OscillatorySin { .. } => "oscillatory_sin",
            ModelKind::Tabulated { .. } => "tabulated",
            ModelKind::CustomAmplitude { .. } => "custom_amplitude",
        }
    }

    /// True when xi²(t) and its derivatives have closed forms.
    pub fn has_closed_form_amplitude(&self) -> bool {
        !matches!(
            self.kind,
            ModelKind::Tabulated { .. } | ModelKind::CustomAmplitude { .. }
        )
    }

    pub fn ensure_in_domain(&self, t: f64) -> Result<()> {
        if self.domain.contains(t) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "t = {t} outside validity domain ({}, {}): {}",
                self.domain.t_min, self.domain.t_max, self.domain.reason
            )))
        }
    }

    pub fn ensure_span_in_domain(&self, span: (f64, f64)) -> Result<()> {
        if !(span.0 < span.1) {
            return Err(Error::Domain(format!("span [{}, {}] is empty", span.0, span.1)));
        }
        self.ensure_in_domain(span.0)?;
        self.ensure_in_domain(span.1)
    }

    // ---- amplitude and its time derivatives ----------------------------

    /// xi²(t) and its first four time derivatives, in closed form.
    /// Errors for `Tabulated` (no amplitude until solved) and for
    /// `CustomAmplitude` (only two derivatives are defined there).
    fn amp_derivs(&self, t: f64) -> Result<[f64; 5]> {
        match &self.kind {
            ModelKind::Constant { omega0 } => Ok([1.0 / (2.0 * omega0), 0.0, 0.0, 0.0, 0.0]),
            ModelKind::Exponential { epsilon0, lambda } => {
                let e = epsilon0 * (lambda * t).exp();
                Ok([e / lambda, e, lambda * e, lambda * lambda * e, lambda.powi(3) * e])
            }
            ModelKind::HyperbolicCosh { epsilon0, tau } => {
                let c = (t / tau).cosh();
                let s = (t / tau).sinh();
                Ok([
                    epsilon0 * tau * c,
                    epsilon0 * s,
                    epsilon0 / tau * c,
                    epsilon0 / (tau * tau) * s,
                    epsilon0 / tau.powi(3) * c,
                ])
            }
            ModelKind::HyperbolicSinh { epsilon0, tau } => {
                let c = (t / tau).cosh();
                let s = (t / tau).sinh();
                Ok([
                    epsilon0 * tau * s,
                    epsilon0 * c,
                    epsilon0 / tau * s,
                    epsilon0 / (tau * tau) * c,
                    epsilon0 / tau.powi(3) * s,
                ])
            }
            ModelKind::PowerLaw { epsilon0, tau, n } => {
                let x = t / tau;
                let n = *n;
                Ok([
                    tau * epsilon0 / (n + 1.0) * x.powf(n + 1.0),
                    epsilon0 * x.powf(n),
                    epsilon0 * n / tau * x.powf(n - 1.0),
                    epsilon0 * n * (n - 1.0) / (tau * tau) * x.powf(n - 2.0),
                    epsilon0 * n * (n - 1.0) * (n - 2.0) / tau.powi(3) * x.powf(n - 3.0),
                ])
            }
            ModelKind::LogAmplitude { epsilon0, tau } => Ok([
                epsilon0 * tau * t.ln(),
                epsilon0 * tau / t,
                -epsilon0 * tau / (t * t),
                2.0 * epsilon0 * tau / t.powi(3),
                -6.0 * epsilon0 * tau / t.powi(4),
            ]),
            ModelKind::OscillatoryCos { a, b, omega0 } => {
                let th = 2.0 * omega0 * t;
                let (s, c) = th.sin_cos();
                let w = 2.0 * omega0;
                Ok([
                    a + b * c,
                    -b * w * s,
                    -b * w * w * c,
                    b * w.powi(3) * s,
                    b * w.powi(4) * c,
                ])
            }
            ModelKind::OscillatorySin { a, b, omega0 } => {
                let th = 2.0 * omega0 * t;
                let (s, c) = th.sin_cos();
                let w = 2.0 * omega0;
                Ok([
                    a + b * s,
                    b * w * c,
                    -b * w * w * s,
                    -b * w.powi(3) * c,
                    b * w.powi(4) * s,
                ])
            }
            ModelKind::Tabulated { .. } => Err(Error::Unsupported(
                "tabulated models have no amplitude until a mode is solved".into(),
            )),
            ModelKind::CustomAmplitude { .. } => Err(Error::Unsupported(
                "custom amplitude exposes only xi², eps and eps_dot".into(),
            )),
        }
    }

    fn custom_fd_step(&self, t: f64) -> f64 {
        let default = t.abs().max(1.0) * f64::EPSILON.cbrt();
        match &self.kind {
            ModelKind::CustomAmplitude { fd_step, .. } => fd_step.unwrap_or(default),
            _ => default,
        }
    }

    /// xi²(t), eps(t) = d(xi²)/dt and eps_dot(t); the custom variant uses its
    /// analytic derivatives when supplied and central differences otherwise.
    fn amp012(&self, t: f64) -> Result<[f64; 3]> {
        match &self.kind {
            ModelKind::CustomAmplitude { xi_sq, deriv1, deriv2, .. } => {
                let g = xi_sq(t);
                let h = self.custom_fd_step(t);
                let e = match deriv1 {
                    Some(d1) => d1(t),
                    None => (xi_sq(t + h) - xi_sq(t - h)) / (2.0 * h),
                };
                let ed = match deriv2 {
                    Some(d2) => d2(t),
                    None => (xi_sq(t + h) - 2.0 * g + xi_sq(t - h)) / (h * h),
                };
                Ok([g, e, ed])
            }
            _ => {
                let d = self.amp_derivs(t)?;
                Ok([d[0], d[1], d[2]])
            }
        }
    }

    /// Catalog closed form of xi²(t).
    pub fn amplitude_squared(&self, t: f64) -> Result<f64> {
        self.ensure_in_domain(t)?;
        Ok(self.amp012(t)?[0])
    }

    /// eps(t) = d(xi²)/dt.
    pub fn epsilon(&self, t: f64) -> Result<f64> {
        self.ensure_in_domain(t)?;
        Ok(self.amp012(t)?[1])
    }

    /// eps_dot(t) = d²(xi²)/dt².
    pub fn epsilon_dot(&self, t: f64) -> Result<f64> {
        self.ensure_in_domain(t)?;
        Ok(self.amp012(t)?[2])
    }

    // ---- frequency ------------------------------------------------------

    /// omega²(t). Catalog and custom variants go through
    /// [`construct_frequency`]; tabulated data is interpolated.
    pub fn omega_squared(&self, t: f64) -> Result<f64> {
        self.ensure_in_domain(t)?;
        if let ModelKind::Tabulated { table } = &self.kind {
            return Ok(table.value(t));
        }
        let [g, e, ed] = self.amp012(t)?;
        construct_frequency(g, e, ed)
    }

    /// `omega_squared` without the domain check; callers must have validated
    /// the span (the ODE right-hand side sits on this).
    pub(crate) fn omega_squared_unchecked(&self, t: f64) -> f64 {
        if let ModelKind::Tabulated { table } = &self.kind {
            return table.value(t);
        }
        match self.amp012(t) {
            Ok([g, e, ed]) => (1.0 + e * e - 2.0 * ed * g) / (4.0 * g * g),
            Err(_) => f64::NAN,
        }
    }

    /// d(omega²)/dt: analytic for catalog variants, interpolant slope for
    /// tabulated data, central differences for custom amplitudes.
    pub fn omega_squared_dot(&self, t: f64) -> Result<f64> {
        self.ensure_in_domain(t)?;
        match &self.kind {
            ModelKind::Tabulated { table } => Ok(table.derivative(t)),
            ModelKind::CustomAmplitude { .. } => {
                let h = self.custom_fd_step(t);
                Ok((self.omega_squared_unchecked(t + h) - self.omega_squared_unchecked(t - h))
                    / (2.0 * h))
            }
            _ => {
                let d = self.amp_derivs(t)?;
                Ok(omega_sq_dot_from_amp(&d))
            }
        }
    }

    /// d²(omega²)/dt², same strategy as `omega_squared_dot`.
    pub fn omega_squared_ddot(&self, t: f64) -> Result<f64> {
        self.ensure_in_domain(t)?;
        match &self.kind {
            ModelKind::Tabulated { .. } | ModelKind::CustomAmplitude { .. } => {
                let h = t.abs().max(1.0) * f64::EPSILON.powf(0.25);
                Ok((self.omega_squared_unchecked(t + h) - 2.0 * self.omega_squared_unchecked(t)
                    + self.omega_squared_unchecked(t - h))
                    / (h * h))
            }
            _ => {
                let d = self.amp_derivs(t)?;
                Ok(omega_sq_ddot_from_amp(&d))
            }
        }
    }

    // ---- closed-form modes ----------------------------------------------

    /// Exact Wronskian-normalised mode (w, w_dot) for the vetted variants:
    /// the constant model and the n = 0 power law. Everything else is
    /// `Unsupported` ("unavailable").
    pub fn closed_form_mode(&self, t: f64) -> Result<(Complex64, Complex64)> {
        self.ensure_in_domain(t)?;
        match &self.kind {
            ModelKind::Constant { omega0 } => {
                let norm = 1.0 / (2.0 * omega0).sqrt();
                let w = Complex64::from_polar(norm, -omega0 * t);
                let wdot = w * Complex64::new(0.0, -omega0);
                Ok((w, wdot))
            }
            ModelKind::PowerLaw { epsilon0, n, .. } if *n == 0.0 => {
                // xi = sqrt(eps0 t), theta = ln(t) / (2 eps0)
                let xi = (epsilon0 * t).sqrt();
                let theta = t.ln() / (2.0 * epsilon0);
                let w = Complex64::from_polar(xi, -theta);
                // w_dot = w * (xi_dot/xi - i theta_dot), xi_dot/xi = 1/(2t)
                let wdot = w * Complex64::new(0.5 / t, -1.0 / (2.0 * epsilon0 * t));
                Ok((w, wdot))
            }
            _ => Err(Error::Unsupported(format!(
                "no vetted closed-form mode for the {} model",
                self.name()
            ))),
        }
    }

    // ---- root finding -----------------------------------------------------

    /// Bisection root of omega²(t) over `bracket`, relative tolerance 1e-12.
    pub fn find_frequency_zero(&self, bracket: (f64, f64)) -> Result<f64> {
        let (mut lo, mut hi) = bracket;
        if !(lo < hi) {
            return Err(Error::Domain(format!("bracket [{lo}, {hi}] is empty")));
        }
        let mut flo = self.omega_squared(lo)?;
        let fhi = self.omega_squared(hi)?;
        if flo == 0.0 {
            return Ok(lo);
        }
        if fhi == 0.0 {
            return Ok(hi);
        }
        if flo.signum() == fhi.signum() {
            return Err(Error::Domain(format!(
                "omega² does not change sign over [{lo}, {hi}]"
            )));
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (hi - lo).abs() <= 1e-12 * mid.abs().max(1.0) {
                return Ok(mid);
            }
            let fm = self.omega_squared(mid)?;
            if fm == 0.0 {
                return Ok(mid);
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    // ---- JSON ---------------------------------------------------------

    /// Parse a model from the JSON document format used by the CLI:
    /// `{"variant": "...", "params": {...}, "domain": [lo, hi]}` and
    /// `{"variant": "tabulated", "times": [...], "omega_squared": [...],
    ///   "interp": "monotone_cubic"}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::Model(format!("model JSON parse error: {e}")))?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Model("model JSON must be an object".into()))?;
        let variant = obj
            .get("variant")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Model("model JSON needs a string \"variant\"".into()))?;
        let get = |name: &str| -> Result<f64> {
            obj.get("params")
                .and_then(Value::as_object)
                .and_then(|p| p.get(name))
                .and_then(Value::as_f64)
                .ok_or_else(|| Error::Model(format!("{variant} model needs numeric param \"{name}\"")))
        };
        let model = match variant {
            "constant" => Self::constant(get("omega0")?)?,
            "exponential" => Self::exponential(get("epsilon0")?, get("lambda")?)?,
            "hyperbolic_cosh" => Self::hyperbolic_cosh(get("epsilon0")?, get("tau")?)?,
            "hyperbolic_sinh" => Self::hyperbolic_sinh(get("epsilon0")?, get("tau")?)?,
            "power_law" => Self::power_law(get("epsilon0")?, get("tau")?, get("n")?)?,
            "log_amplitude" => Self::log_amplitude(get("epsilon0")?, get("tau")?)?,
            "oscillatory_cos" => Self::oscillatory_cos(get("a")?, get("b")?, get("omega0")?)?,
            "oscillatory_sin" => Self::oscillatory_sin(get("a")?, get("b")?, get("omega0")?)?,
            "tabulated" => {
                let times = json_f64_array(obj, "times")?;
                let omega_sq = json_f64_array(obj, "omega_squared")?;
                let interp = match obj.get("interp").and_then(Value::as_str) {
                    None | Some("monotone_cubic") => InterpKind::MonotoneCubic,
                    Some("linear") => InterpKind::Linear,
                    Some(other) => {
                        return Err(Error::Model(format!("unknown interp rule \"{other}\"")))
                    }
                };
                Self::tabulated(times, omega_sq, interp)?
            }
            "custom_amplitude" => {
                return Err(Error::Model(
                    "custom_amplitude models are library-only (they wrap a callable)".into(),
                ))
            }
            other => return Err(Error::Model(format!("unknown model variant \"{other}\""))),
        };
        match obj.get("domain") {
            None | Some(Value::Null) => Ok(model),
            Some(Value::Array(bounds)) if bounds.len() == 2 => {
                let lo = bounds[0].as_f64().unwrap_or(f64::NEG_INFINITY);
                let hi = bounds[1].as_f64().unwrap_or(f64::INFINITY);
                model.with_domain(lo, hi)
            }
            Some(_) => Err(Error::Model("\"domain\" must be a [lo, hi] array".into())),
        }
    }

    /// The JSON description of this model (inverse of `from_value` where
    /// possible; custom amplitudes serialise as an opaque tag).
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("variant".into(), Value::String(self.name().into()));
        match &self.kind {
            ModelKind::Constant { omega0 } => {
                obj.insert("params".into(), json!({ "omega0": omega0 }));
            }
            ModelKind::Exponential { epsilon0, lambda } => {
                obj.insert("params".into(), json!({ "epsilon0": epsilon0, "lambda": lambda }));
            }
            ModelKind::HyperbolicCosh { epsilon0, tau }
            | ModelKind::HyperbolicSinh { epsilon0, tau }
            | ModelKind::LogAmplitude { epsilon0, tau } => {
                obj.insert("params".into(), json!({ "epsilon0": epsilon0, "tau": tau }));
            }
            ModelKind::PowerLaw { epsilon0, tau, n } => {
                obj.insert("params".into(), json!({ "epsilon0": epsilon0, "tau": tau, "n": n }));
            }
            ModelKind::OscillatoryCos { a, b, omega0 }
            | ModelKind::OscillatorySin { a, b, omega0 } => {
                obj.insert("params".into(), json!({ "a": a, "b": b, "omega0": omega0 }));
            }
            ModelKind::Tabulated { table } => {
                obj.insert("times".into(), json!(table.times()));
                obj.insert("omega_squared".into(), json!(table.values()));
                obj.insert(
                    "interp".into(),
                    Value::String(
                        match table.kind() {
                            InterpKind::Linear => "linear",
                            InterpKind::MonotoneCubic => "monotone_cubic",
                        }
                        .into(),
                    ),
                );
            }
            ModelKind::CustomAmplitude { deriv1, deriv2, .. } => {
                obj.insert(
                    "params".into(),
                    json!({ "analytic_derivatives": deriv1.is_some() && deriv2.is_some() }),
                );
            }
        }
        if self.domain.t_min.is_finite() || self.domain.t_max.is_finite() {
            let lo = if self.domain.t_min.is_finite() { json!(self.domain.t_min) } else { Value::Null };
            let hi = if self.domain.t_max.is_finite() { json!(self.domain.t_max) } else { Value::Null };
            obj.insert("domain".into(), Value::Array(vec![lo, hi]));
        }
        Value::Object(obj)
    }
}

/// d(omega²)/dt from the amplitude derivatives [g, g', g'', g''', g''''].
fn omega_sq_dot_from_amp(d: &[f64; 5]) -> f64 {
    let (g, e, ed, edd) = (d[0], d[1], d[2], d[3]);
    -(edd * g * g + e * (1.0 + e * e - 2.0 * ed * g)) / (2.0 * g.powi(3))
}

/// d²(omega²)/dt² from the amplitude derivatives.
fn omega_sq_ddot_from_amp(d: &[f64; 5]) -> f64 {
    let (g, e, ed, edd, eddd) = (d[0], d[1], d[2], d[3], d[4]);
    let n1 = edd * g * g + e * (1.0 + e * e - 2.0 * ed * g);
    let n1p = eddd * g * g + ed * (1.0 + e * e - 2.0 * ed * g);
    (3.0 * n1 * e - n1p * g) / (2.0 * g.powi(4))
}

fn json_f64_array(obj: &Map<String, Value>, key: &str) -> Result<Vec<f64>> {
    obj.get(key)
        .and_then(Value::as_array)
        .map(|arr| {
            arr.iter()
                .map(|v| v.as_f64().ok_or_else(|| Error::Model(format!("\"{key}\" must be numeric"))))
                .collect::<Result<Vec<f64>>>()
        })
        .unwrap_or_else(|| Err(Error::Model(format!("tabulated model needs array \"{key}\""))))
}

/// One catalog row for the CLI listing.
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static str,
    pub domain_rule: &'static str,
    pub note: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "constant",
        params: "omega0 > 0",
        domain_rule: "all t",
        note: "static oscillator, xi² = 1/(2 omega0)",
    },
    CatalogEntry {
        name: "exponential",
        params: "epsilon0 > 0, lambda > 0",
        domain_rule: "all t",
        note: "frequency crosses zero at t0 = -ln(epsilon0)/lambda",
    },
    CatalogEntry {
        name: "hyperbolic_cosh",
        params: "epsilon0 > 0, tau > 0",
        domain_rule: "all t",
        note: "second Pöschl–Teller potential (1/cosh² well)",
    },
    CatalogEntry {
        name: "hyperbolic_sinh",
        params: "epsilon0 > 0, tau != 0",
        domain_rule: "t/tau > 0",
        note: "second Pöschl–Teller potential (1/sinh² barrier)",
    },
    CatalogEntry {
        name: "power_law",
        params: "epsilon0 > 0, tau > 0, n > -1 (n != -1)",
        domain_rule: "t > 0",
        note: "cross-over from stable to unstable motion for n > 1",
    },
    CatalogEntry {
        name: "log_amplitude",
        params: "epsilon0 > 0, tau > 0",
        domain_rule: "t > 1",
        note: "logarithmic amplitude, the n = -1 power-law limit",
    },
    CatalogEntry {
        name: "oscillatory_cos",
        params: "a > |b| >= 0, omega0 > 0",
        domain_rule: "all t",
        note: "first Pöschl–Teller potential (1/cos² family)",
    },
    CatalogEntry {
        name: "oscillatory_sin",
        params: "a > |b| >= 0, omega0 > 0",
        domain_rule: "all t",
        note: "first Pöschl–Teller potential (1/cos² family)",
    },
    CatalogEntry {
        name: "tabulated",
        params: "times[], omega_squared[], interp",
        domain_rule: "between first and last sample",
        note: "interpolated frequency data (monotone cubic by default)",
    },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd::ulp_diff;
    use crate::rng::golden_points;

    #[test]
    fn construct_frequency_examples() {
        // constant amplitude xi² = 1/(2 omega0) with omega0 = 1
        assert_eq!(construct_frequency(0.5, 0.0, 0.0).unwrap(), 1.0);
        // cosh amplitude at its minimum
        assert_eq!(construct_frequency(0.5, 0.0, 0.5).unwrap(), 0.5);
        // exponential amplitude at its zero crossing
        assert_eq!(construct_frequency(1.0, 1.0, 1.0).unwrap(), 0.0);
        assert!(construct_frequency(0.0, 1.0, 1.0).is_err());
        assert!(construct_frequency(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn amplitude_examples() {
        let cosh = FrequencyModel::hyperbolic_cosh(0.5, 1.0).unwrap();
        assert!((cosh.amplitude_squared(0.0).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(cosh.epsilon(0.0).unwrap(), 0.0);
        assert!((cosh.epsilon_dot(0.0).unwrap() - 0.5).abs() < 1e-15);

        let constant = FrequencyModel::constant(2.0).unwrap();
        assert_eq!(constant.amplitude_squared(17.3).unwrap(), 0.25);
        assert_eq!(constant.epsilon(17.3).unwrap(), 0.0);

        let osc = FrequencyModel::oscillatory_cos(1.0, 0.5, 1.0).unwrap();
        assert!((osc.amplitude_squared(0.0).unwrap() - 1.5).abs() < 1e-15);

        let exp = FrequencyModel::exponential(1.0, 2.0).unwrap();
        assert!((exp.epsilon(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((exp.epsilon_dot(0.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn omega_squared_examples() {
        let osc = FrequencyModel::oscillatory_cos(1.0, 0.5, 1.0).unwrap();
        assert!((osc.omega_squared(0.0).unwrap() - 7.0 / 9.0).abs() < 1e-15);

        let constant = FrequencyModel::constant(3.0).unwrap();
        assert!((constant.omega_squared(-4.0).unwrap() - 9.0).abs() < 1e-14);

        let pl = FrequencyModel::power_law(1.0, 1.0, 0.0).unwrap();
        assert!((pl.omega_squared(2.0).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn domain_rejections() {
        let log = FrequencyModel::log_amplitude(1.0, 1.0).unwrap();
        assert!(log.amplitude_squared(1.0).is_err());
        assert!(log.amplitude_squared(0.5).is_err());
        assert!(log.amplitude_squared(1.5).is_ok());

        let sinh = FrequencyModel::hyperbolic_sinh(1.0, 1.0).unwrap();
        assert!(sinh.amplitude_squared(-0.1).is_err());
        assert!(sinh.amplitude_squared(0.1).is_ok());

        let sinh_neg = FrequencyModel::hyperbolic_sinh(1.0, -1.0).unwrap();
        assert!(sinh_neg.amplitude_squared(-0.5).is_ok());
        assert!(sinh_neg.amplitude_squared(0.5).is_err());

        // empty-domain parameter sets are construction errors
        assert!(FrequencyModel::exponential(1.0, -1.0).is_err());
        assert!(FrequencyModel::hyperbolic_cosh(1.0, -2.0).is_err());
        assert!(FrequencyModel::power_law(1.0, 1.0, -2.0).is_err());
        assert!(FrequencyModel::oscillatory_cos(0.5, 0.5, 1.0).is_err());
    }

    #[test]
    fn tabulated_interpolates_and_rejects_amplitude_ops() {
        let ts: Vec<f64> = (0..50).map(|i| i as f64 * 0.1).collect();
        let ws: Vec<f64> = ts.iter().map(|t| 1.0 + 0.3 * (t * 0.8).sin()).collect();
        let tab = FrequencyModel::tabulated(ts, ws, InterpKind::MonotoneCubic).unwrap();
        assert!((tab.omega_squared(0.0).unwrap() - 1.0).abs() < 1e-14);
        let v = tab.omega_squared(2.05).unwrap();
        let exact = 1.0 + 0.3 * (2.05_f64 * 0.8).sin();
        assert!((v - exact).abs() < 1e-4);
        assert!(matches!(tab.amplitude_squared(1.0), Err(Error::Unsupported(_))));
        assert!(matches!(tab.epsilon(1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn custom_amplitude_fd_matches_analytic() {
        let f: AmplitudeFn = Arc::new(|t: f64| 0.5 * (1.0 + t * t));
        let fd_only =
            FrequencyModel::custom_amplitude(f.clone(), None, None, (-5.0, 5.0), None).unwrap();
        let analytic = FrequencyModel::custom_amplitude(
            f,
            Some(Arc::new(|t: f64| t)),
            Some(Arc::new(|_| 1.0)),
            (-5.0, 5.0),
            None,
        )
        .unwrap();
        for &t in &[-3.0, -0.7, 0.0, 1.3, 4.2] {
            assert!((fd_only.epsilon(t).unwrap() - t).abs() < 1e-8);
            assert!((fd_only.epsilon_dot(t).unwrap() - 1.0).abs() < 1e-5);
            // this amplitude solves the free-particle case: omega² = 0
            assert!(analytic.omega_squared(t).unwrap().abs() < 1e-15);
            assert!(fd_only.omega_squared(t).unwrap().abs() < 1e-4);
        }
    }

    #[test]
    fn closed_form_modes() {
        let constant = FrequencyModel::constant(1.0).unwrap();
        let (w, wdot) = constant.closed_form_mode(0.0).unwrap();
        assert!((w.re - 1.0 / 2.0_f64.sqrt()).abs() < 1e-15 && w.im.abs() < 1e-15);
        assert!(wdot.re.abs() < 1e-15 && (wdot.im + 1.0 / 2.0_f64.sqrt()).abs() < 1e-15);

        let pl = FrequencyModel::power_law(1.0, 1.0, 0.0).unwrap();
        let (w, wdot) = pl.closed_form_mode(1.0).unwrap();
        assert!((w.re - 1.0).abs() < 1e-15 && w.im.abs() < 1e-15);
        assert!((wdot.re - 0.5).abs() < 1e-15 && (wdot.im + 0.5).abs() < 1e-15);

        let sinh = FrequencyModel::hyperbolic_sinh(1.0, 1.0).unwrap();
        assert!(matches!(sinh.closed_form_mode(1.0), Err(Error::Unsupported(_))));
    }

    #[test]
    fn closed_form_mode_wronskian_is_i() {
        let models = [
            FrequencyModel::constant(2.5).unwrap(),
            FrequencyModel::power_law(0.7, 1.0, 0.0).unwrap(),
        ];
        for m in &models {
            for t in golden_points(0.4, 3.0, 25) {
                let (w, wdot) = m.closed_form_mode(t).unwrap();
                let wr = w * wdot.conj() - w.conj() * wdot;
                assert!(wr.re.abs() < 1e-14, "{} Re Wr = {}", m.name(), wr.re);
                assert!((wr.im - 1.0).abs() < 1e-13, "{} Im Wr = {}", m.name(), wr.im);
            }
        }
    }

    #[test]
    fn frequency_zero_examples() {
        let exp = FrequencyModel::exponential(2.0, 1.0).unwrap();
        let t0 = exp.find_frequency_zero((-2.0, 1.0)).unwrap();
        assert!((t0 + 2.0_f64.ln()).abs() < 1e-10, "t0 = {t0}");

        let constant = FrequencyModel::constant(1.0).unwrap();
        assert!(constant.find_frequency_zero((-1.0, 1.0)).is_err());

        // cross-over of the n = 2 power law, from the construction numerator
        // 9 - 3 t^4 = 0
        let pl = FrequencyModel::power_law(1.0, 1.0, 2.0).unwrap();
        let root = pl.find_frequency_zero((1.0, 2.0)).unwrap();
        assert!((root - 3.0_f64.powf(0.25)).abs() < 1e-10, "root = {root}");
    }

    #[test]
    fn analytic_frequency_derivatives_match_fd() {
        let models = [
            FrequencyModel::exponential(1.0, 1.0).unwrap(),
            FrequencyModel::hyperbolic_cosh(0.5, 1.0).unwrap(),
            FrequencyModel::hyperbolic_sinh(1.0, 1.0).unwrap(),
            FrequencyModel::power_law(1.0, 1.0, 2.0).unwrap(),
            FrequencyModel::log_amplitude(1.0, 1.0).unwrap(),
            FrequencyModel::oscillatory_cos(1.0, 0.5, 1.0).unwrap(),
            FrequencyModel::oscillatory_sin(1.0, 0.5, 1.0).unwrap(),
        ];
        for m in &models {
            for t in golden_points(1.5, 3.5, 40) {
                let h = 1e-5;
                let fd1 = (m.omega_squared(t + h).unwrap() - m.omega_squared(t - h).unwrap())
                    / (2.0 * h);
                let fd2 = (m.omega_squared(t + h).unwrap() - 2.0 * m.omega_squared(t).unwrap()
                    + m.omega_squared(t - h).unwrap())
                    / (h * h);
                let d1 = m.omega_squared_dot(t).unwrap();
                let d2 = m.omega_squared_ddot(t).unwrap();
                assert!(
                    (d1 - fd1).abs() <= 1e-6 * d1.abs().max(1.0),
                    "{}: d(omega²)/dt mismatch at t = {t}: {d1} vs {fd1}",
                    m.name()
                );
                assert!(
                    (d2 - fd2).abs() <= 1e-4 * d2.abs().max(1.0),
                    "{}: d²(omega²)/dt² mismatch at t = {t}: {d2} vs {fd2}",
                    m.name()
                );
            }
        }
    }

    #[test]
    fn pipeline_is_definitional() {
        // omega_squared must be bit-for-bit the construction applied to the
        // closed-form amplitude data (≤ 4 ulps allowed, 0 expected)
        let models = [
            FrequencyModel::constant(1.7).unwrap(),
            FrequencyModel::exponential(0.8, 1.3).unwrap(),
            FrequencyModel::hyperbolic_cosh(0.5, 2.0).unwrap(),
            FrequencyModel::power_law(1.0, 2.0, 1.5).unwrap(),
        ];
        for m in &models {
            for t in golden_points(0.5, 4.0, 100) {
                let a = m.omega_squared(t).unwrap();
                let b = construct_frequency(
                    m.amplitude_squared(t).unwrap(),
                    m.epsilon(t).unwrap(),
                    m.epsilon_dot(t).unwrap(),
                )
                .unwrap();
                assert!(ulp_diff(a, b) <= 4, "{}: {} vs {}", m.name(), a, b);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"variant": "hyperbolic_cosh", "params": {"epsilon0": 0.5, "tau": 1.0}, "domain": [-3.0, 3.0]}"#;
        let m = FrequencyModel::from_json(text).unwrap();
        assert_eq!(m.name(), "hyperbolic_cosh");
        assert!(m.amplitude_squared(0.0).is_ok());
        assert!(m.amplitude_squared(3.5).is_err());
        let v = m.to_value();
        let m2 = FrequencyModel::from_value(&v).unwrap();
        assert_eq!(m2.name(), "hyperbolic_cosh");
        assert_eq!(
            m2.amplitude_squared(1.0).unwrap(),
            m.amplitude_squared(1.0).unwrap()
        );

        let tab = r#"{"variant": "tabulated", "times": [0.0, 1.0, 2.0], "omega_squared": [1.0, 1.1, 0.9], "interp": "linear"}"#;
        let t = FrequencyModel::from_json(tab).unwrap();
        assert!((t.omega_squared(0.5).unwrap() - 1.05).abs() < 1e-15);

        assert!(FrequencyModel::from_json("{\"variant\": \"nope\"}").is_err());
        assert!(FrequencyModel::from_json("not json").is_err());
    }
}
