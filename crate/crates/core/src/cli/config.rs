use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::crossing::FormFactorModel;
use crate::dpi::{BtGrid, TwoParticleSystem, WavepacketConfig};
use crate::error::{Error, Result};
use crate::scatfunc::{linspace, Model};

pub const DEFAULT_SEED: u64 = 7;

/// Verification suites, one per module.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Kk,
    Causality,
    Bootstrap,
    Zf,
    Crossing,
    Kms,
    Entropy,
    Dpi,
    Unitarize,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Kk,
        Suite::Causality,
        Suite::Bootstrap,
        Suite::Zf,
        Suite::Crossing,
        Suite::Kms,
        Suite::Entropy,
        Suite::Dpi,
        Suite::Unitarize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kk => "kk",
            Suite::Causality => "causality",
            Suite::Bootstrap => "bootstrap",
            Suite::Zf => "zf",
            Suite::Crossing => "crossing",
            Suite::Kms => "kms",
            Suite::Entropy => "entropy",
            Suite::Dpi => "dpi",
            Suite::Unitarize => "unitarize",
        }
    }

    /// Names of the checks the suite reports; model-indexed checks such as
    /// `axioms[ising]` are listed by their base name.
    pub fn check_names(self) -> &'static [&'static str] {
        match self {
            Suite::Kk => &["lorentzian_round_trip", "unsubtracted_residual", "subtraction_invariance"],
            Suite::Causality => &["causal_negative_fraction", "anticausal_control_inverse", "discrimination"],
            Suite::Bootstrap => &["axioms", "tilted_control_inverse"],
            Suite::Zf => &[
                "confluence",
                "creator_action",
                "annihilator_action",
                "factorization",
                "exchange_consistency",
            ],
            Suite::Crossing => &["watson_exchange", "watson_periodicity", "crossing", "ordering_precondition"],
            Suite::Kms => &[
                "kms_free",
                "half_power_control_inverse",
                "boost_invariance",
                "wedge_duality",
                "hard_cutoff_control_inverse",
                "unruh_periodicity",
                "detuned_control_inverse",
            ],
            Suite::Entropy => &[
                "log_law_misfit",
                "log_slope",
                "position_momentum_agreement",
                "quartic_log_rejection_inverse",
            ],
            Suite::Dpi => &[
                "free_phase_shift",
                "born_agreement",
                "solve_residual",
                "wavepacket_agreement",
                "mass_squared_equivalence",
                "bt_residual",
                "bt_refinement_ratio",
            ],
            Suite::Unitarize => &[
                "unitarity_order",
                "exp_reproduction",
                "cluster_far_deviation",
                "cluster_monotonicity",
            ],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KkConfig {
    pub n: usize,
    pub half_width: f64,
    /// Real constant added for the subtraction-invariance check.
    pub shift: f64,
    /// Subtraction point.
    pub anchor: f64,
}

impl Default for KkConfig {
    fn default() -> Self {
        Self {
            n: 4096,
            half_width: 50.0,
            shift: 1.0,
            anchor: 0.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CausalityConfig {
    pub n: usize,
    pub half_width: f64,
    pub threshold: f64,
}

impl Default for CausalityConfig {
    fn default() -> Self {
        Self {
            n: 4096,
            half_width: 50.0,
            threshold: crate::dispersion::DEFAULT_CAUSALITY_THRESHOLD,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BootstrapConfig {
    pub models: Vec<Model>,
    pub samples: usize,
    /// Samples are spread over `[−range, range]`.
    pub range: f64,
    /// Tilt rate of the broken negative-control model.
    pub control_tilt: f64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        Self {
            models: vec![
                Model::Free,
                Model::Ising,
                Model::SinhGordon { b: 0.2 },
                Model::SinhGordon { b: 0.4 },
                Model::SinhGordon { b: 0.9 },
            ],
            samples: 100,
            range: 5.0,
            control_tilt: 0.01,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ZfConfig {
    pub model: Model,
    /// Confluence is checked for every creator/annihilator pattern up to
    /// this word length.
    pub max_length: usize,
    /// Independent draws of random rapidities.
    pub draws: usize,
    /// Random rewrite orders compared per word (plus the rightmost order).
    pub random_paths: usize,
    /// Largest particle number for the state-action checks.
    pub max_particles: usize,
    /// Optional word to normal-order and print.
    pub word: Option<String>,
}

impl Default for ZfConfig {
    fn default() -> Self {
        Self {
            model: Model::SinhGordon { b: 0.4 },
            max_length: 6,
            draws: 10,
            random_paths: 2,
            max_particles: 4,
            word: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CrossingConfig {
    pub form_factor: FormFactorModel,
    pub particles: usize,
    /// Number of particles moved to the outgoing side.
    pub k: usize,
    pub samples: usize,
}

impl Default for CrossingConfig {
    fn default() -> Self {
        Self {
            form_factor: FormFactorModel::IsingEnergy,
            particles: 2,
            k: 1,
            samples: 50,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum KmsVariant {
    /// Free-field modular KMS and wedge duality.
    Free,
    /// Accelerated-observer correlator periodicity.
    Unruh,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct KmsConfig {
    pub variants: Vec<KmsVariant>,
    pub quadrature_points: usize,
    pub half_width: f64,
    /// Gaussian test pairs `(center_f, center_g, width)`.
    pub pairs: Vec<(f64, f64, f64)>,
    pub boost: f64,
    /// Control pairs `(center_f, width_f, center_g, width_g)`; `g` is cut off.
    pub cutoff_pairs: Vec<(f64, f64, f64, f64)>,
    /// Half-width of the hard cutoff window.
    pub cutoff: f64,
    pub acceleration: f64,
    pub tau_samples: usize,
    /// β of the negative control in units of `2π/a`.
    pub detuning: f64,
}

impl Default for KmsConfig {
    fn default() -> Self {
        Self {
            variants: vec![KmsVariant::Free, KmsVariant::Unruh],
            quadrature_points: 2048,
            half_width: 16.0,
            pairs: vec![(0.0, 0.0, 1.0), (0.4, -0.3, 0.8), (-1.0, 0.5, 1.2)],
            boost: 0.3,
            cutoff_pairs: vec![(0.2, 1.0, -0.4, 0.9), (-0.5, 0.8, 0.6, 1.1)],
            cutoff: 0.5,
            acceleration: 0.7,
            tau_samples: 20,
            detuning: 0.9,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EntropyConfig {
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "dR_min")]
    pub dr_min: f64,
    #[serde(rename = "dR_max")]
    pub dr_max: f64,
    pub points: usize,
    pub ramp_points: usize,
}

impl Default for EntropyConfig {
    fn default() -> Self {
        Self {
            r: 1.0,
            dr_min: 1e-4,
            dr_max: 1e-2,
            points: 9,
            ramp_points: 128,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DpiConfig {
    pub m: f64,
    pub lambda: f64,
    pub mu: f64,
    pub grid_n: usize,
    pub p_max: f64,
    /// On-shell momenta of the phase-shift and equivalence sweeps.
    pub momenta: Vec<f64>,
    pub born_lambda: f64,
    pub born_p: f64,
    pub wavepacket: WavepacketConfig,
    pub bt_grid: BtGrid,
    /// Points per axis of the coarse grid of the refinement check.
    pub bt_coarse: usize,
}

impl Default for DpiConfig {
    fn default() -> Self {
        let sys = TwoParticleSystem::default();
        Self {
            m: sys.m,
            lambda: sys.lambda,
            mu: sys.mu,
            grid_n: sys.grid_n,
            p_max: sys.p_max,
            momenta: linspace(0.2, 2.0, 10),
            born_lambda: 0.01,
            born_p: 0.5,
            wavepacket: WavepacketConfig::default(),
            bt_grid: BtGrid::default(),
            bt_coarse: 16,
        }
    }
}

impl DpiConfig {
    pub fn system(&self) -> TwoParticleSystem {
        TwoParticleSystem {
            m: self.m,
            lambda: self.lambda,
            mu: self.mu,
            grid_n: self.grid_n,
            p_max: self.p_max,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct UnitarizeConfig {
    pub order: usize,
    pub dim: usize,
    /// Packet separations of the cluster demo, in kernel widths.
    pub separations: Vec<f64>,
}

impl Default for UnitarizeConfig {
    fn default() -> Self {
        Self {
            order: 4,
            dim: 3,
            separations: (1..=10).map(f64::from).collect(),
        }
    }
}

/// Everything a run needs; echoed verbatim into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub output_dir: Option<PathBuf>,
    /// Overrides keyed `"suite.check"`.
    pub tolerances: BTreeMap<String, f64>,
    pub kk: KkConfig,
    pub causality: CausalityConfig,
    pub bootstrap: BootstrapConfig,
    pub zf: ZfConfig,
    pub crossing: CrossingConfig,
    pub kms: KmsConfig,
    pub entropy: EntropyConfig,
    pub dpi: DpiConfig,
    pub unitarize: UnitarizeConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            suites: vec![],
            seed: DEFAULT_SEED,
            output_dir: None,
            tolerances: BTreeMap::new(),
            kk: KkConfig::default(),
            causality: CausalityConfig::default(),
            bootstrap: BootstrapConfig::default(),
            zf: ZfConfig::default(),
            crossing: CrossingConfig::default(),
            kms: KmsConfig::default(),
            entropy: EntropyConfig::default(),
            dpi: DpiConfig::default(),
            unitarize: UnitarizeConfig::default(),
        }
    }
}

fn usage(key: &str, message: impl fmt::Display) -> Error {
    Error::Usage(format!("{key}: {message}"))
}

fn require(ok: bool, key: &str, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(usage(key, message))
    }
}

impl RunConfig {
    /// The full acceptance matrix.
    pub fn verify_all() -> Self {
        Self {
            suites: Suite::ALL.to_vec(),
            ..Self::default()
        }
    }

    pub fn for_suite(suite: Suite) -> Self {
        Self {
            suites: vec![suite],
            ..Self::default()
        }
    }

    /// Parse TOML, or JSON when the path ends in `.json`. A JSON report is
    /// accepted too: its config echo is used.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            let mut value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Usage(format!("{}: {e}", path.display())))?;
            if let Some(echo) = value.get_mut("config") {
                value = echo.take();
            }
            serde_json::from_value(value).map_err(|e| Error::Usage(format!("{}: {e}", path.display())))
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Usage(e.message().to_string() + &span_hint(text, e.span())))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Usage(e.to_string()))
    }

    /// Tolerance of `suite.check` (base name for indexed checks).
    pub fn tolerance(&self, suite: Suite, check: &str, default: f64) -> f64 {
        let base = check.split('[').next().unwrap_or(check);
        self.tolerances
            .get(&format!("{suite}.{base}"))
            .copied()
            .unwrap_or(default)
    }

    /// Reject empty suite lists, unknown tolerance keys, non-positive
    /// tolerances and parameters outside their domains, naming the key.
    pub fn validate(&self) -> Result<()> {
        require(!self.suites.is_empty(), "suites", "no suite selected")?;
        for (key, &tol) in &self.tolerances {
            let known = key.split_once('.').is_some_and(|(s, c)| {
                Suite::ALL
                    .iter()
                    .any(|suite| suite.name() == s && suite.check_names().contains(&c))
            });
            require(known, &format!("tolerances.{key}"), "unknown check")?;
            require(tol > 0.0 && tol.is_finite(), &format!("tolerances.{key}"), "tolerance must be positive")?;
        }
        require(self.kk.n >= 16, "kk.n", "need at least 16 samples")?;
        require(self.kk.half_width > 0.0, "kk.half_width", "must be positive")?;
        require(
            self.kk.anchor.abs() < 0.8 * self.kk.half_width,
            "kk.anchor",
            "must lie inside the trusted window",
        )?;
        require(self.causality.n >= 16, "causality.n", "need at least 16 samples")?;
        require(self.causality.half_width > 0.0, "causality.half_width", "must be positive")?;
        require(self.causality.threshold > 0.0, "causality.threshold", "must be positive")?;
        require(!self.bootstrap.models.is_empty(), "bootstrap.models", "empty")?;
        require(self.bootstrap.samples >= 1, "bootstrap.samples", "need at least one sample")?;
        require(self.bootstrap.range > 0.0, "bootstrap.range", "must be positive")?;
        require(self.bootstrap.control_tilt != 0.0, "bootstrap.control_tilt", "must be nonzero")?;
        require((1..=8).contains(&self.zf.max_length), "zf.max_length", "must be in 1..=8")?;
        require(self.zf.draws >= 1, "zf.draws", "need at least one draw")?;
        require((1..=5).contains(&self.zf.max_particles), "zf.max_particles", "must be in 1..=5")?;
        require(self.crossing.particles >= 1, "crossing.particles", "need at least one particle")?;
        require(self.crossing.k <= self.crossing.particles, "crossing.k", "exceeds the particle number")?;
        require(self.crossing.samples >= 1, "crossing.samples", "need at least one sample")?;
        require(!self.kms.variants.is_empty(), "kms.variants", "empty")?;
        require(self.kms.quadrature_points >= 16, "kms.quadrature_points", "need at least 16")?;
        require(self.kms.half_width > 0.0, "kms.half_width", "must be positive")?;
        require(self.kms.pairs.iter().all(|p| p.2 > 0.0), "kms.pairs", "widths must be positive")?;
        require(!self.kms.cutoff_pairs.is_empty(), "kms.cutoff_pairs", "empty")?;
        require(self.kms.cutoff > 0.0, "kms.cutoff", "must be positive")?;
        require(self.kms.acceleration > 0.0, "kms.acceleration", "must be positive")?;
        require(self.kms.tau_samples >= 1, "kms.tau_samples", "need at least one sample")?;
        require(
            self.kms.detuning > 0.0 && self.kms.detuning != 1.0,
            "kms.detuning",
            "must be positive and different from 1",
        )?;
        require(self.entropy.r > 0.0, "entropy.R", "must be positive")?;
        require(
            self.entropy.dr_max > self.entropy.dr_min && self.entropy.dr_min > 0.0,
            "entropy.dR_min",
            "need 0 < dR_min < dR_max",
        )?;
        require(self.entropy.dr_max < self.entropy.r, "entropy.dR_max", "must be below R")?;
        require(self.entropy.points >= 3, "entropy.points", "need at least 3")?;
        require(self.entropy.ramp_points >= 16, "entropy.ramp_points", "need at least 16")?;
        self.dpi.system().validate().map_err(|e| usage("dpi", e))?;
        require(!self.dpi.momenta.is_empty(), "dpi.momenta", "empty")?;
        require(
            self.dpi.momenta.iter().all(|&p| p > 0.0 && p < self.dpi.p_max),
            "dpi.momenta",
            "must lie in (0, p_max)",
        )?;
        require(
            self.dpi.born_p > 0.0 && self.dpi.born_p < self.dpi.p_max,
            "dpi.born_p",
            "must lie in (0, p_max)",
        )?;
        require(self.dpi.born_lambda != 0.0, "dpi.born_lambda", "must be nonzero")?;
        require(self.dpi.wavepacket.n >= 16, "dpi.wavepacket.n", "need at least 16")?;
        require(self.dpi.wavepacket.time_factor > 0.0, "dpi.wavepacket.time_factor", "must be positive")?;
        require(self.dpi.bt_coarse >= 4, "dpi.bt_coarse", "need at least 4")?;
        require(
            self.dpi.bt_grid.n_total >= 4 && self.dpi.bt_grid.n_relative >= 4,
            "dpi.bt_grid",
            "need at least 4 points per axis",
        )?;
        require((1..=8).contains(&self.unitarize.order), "unitarize.order", "must be in 1..=8")?;
        require(
            (1..=crate::unitarization::MAX_DIM).contains(&self.unitarize.dim),
            "unitarize.dim",
            "outside the supported dimensions",
        )?;
        require(
            self.unitarize.separations.len() >= 2
                && self.unitarize.separations.windows(2).all(|w| w[1] > w[0])
                && self.unitarize.separations[0] >= 0.0,
            "unitarize.separations",
            "need at least two increasing non-negative separations",
        )?;
        Ok(())
    }
}

fn span_hint(text: &str, span: Option<std::ops::Range<usize>>) -> String {
    match span {
        Some(r) if r.start < text.len() => {
            let line = text[..r.start].matches('\n').count() + 1;
            format!(" (line {line}: `{}`)", text[r].trim())
        }
        _ => String::new(),
    }
}
