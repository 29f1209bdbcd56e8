use serde::{Deserialize, Serialize};

/// Default truncation order for jets.
///
/// The deepest derivative chain consumed anywhere is (kappa_1)_uuu, and the
/// principal curvatures already eat two orders of the surface jet; order 5
/// would suffice, 6 leaves one order of slack for curve tracing.
pub const DEFAULT_JET_ORDER: usize = 6;

/// Tolerance profile.
///
/// `tau` is the single scale-aware zero knob: every "= 0" / "!= 0" decision
/// in the criteria goes through [`Tolerances::zero_tol`]. The remaining knobs
/// gate specific binary decisions and are documented field by field.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default)]
pub struct Tolerances {
    /// Base zero-coefficient tolerance; effective tolerance is
    /// `tau * (1 + scale)` where `scale` is the largest magnitude in play.
    pub tau: f64,
    /// Singular-point detection: a principal branch is active for the parallel
    /// surface when `|1 - t*kappa| < tau_sing * (1 + |t*kappa|)`.
    pub tau_sing: f64,
    /// Near-parabolic guard: focal evaluation refuses when `|kappa| < tau_parab`.
    pub tau_parab: f64,
    /// Absolute residual required of every corrected sample on a traced curve.
    pub tau_trace: f64,
    /// Default predictor step in parameter space.
    pub trace_step: f64,
    /// Maximum 1-D corrector iterations per trace step.
    pub max_corrector_iters: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tau: 1e-9,
            tau_sing: 1e-7,
            tau_parab: 1e-6,
            tau_trace: 1e-10,
            trace_step: 1e-3,
            max_corrector_iters: 8,
        }
    }
}

impl Tolerances {
    /// Scale-aware zero tolerance.
    pub fn zero_tol(&self, scale: f64) -> f64 {
        self.tau * (1.0 + scale.abs())
    }

    /// Is `x` zero at the given scale?
    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        x.abs() < self.zero_tol(scale)
    }
}

/// Effective configuration of a run: jet order plus tolerance profile.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Config {
    pub jet_order: usize,
    pub tol: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            jet_order: DEFAULT_JET_ORDER,
            tol: Tolerances::default(),
        }
    }
}

impl Config {
    /// Hex digest of the canonical JSON serialization, pinned into reports so
    /// tolerance-sensitive classifications are reproducible.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        let canon = serde_json::to_string(self).expect("config serializes");
        let mut h = Sha256::new();
        h.update(canon.as_bytes());
        let out = h.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}
