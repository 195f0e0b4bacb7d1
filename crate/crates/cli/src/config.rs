//! JSON config schemas, one per subcommand. Unknown fields are rejected.

use dunkl::extremal::{FamilyTag, ParamRange, TrialFamily};
use dunkl::inequalities::{ClassPolicy, InequalitySpec};
use dunkl::measure::{generate_corpus, CorpusConstraints, FunctionFamily, Setting, TestFunction};
use dunkl::rootsys::{build_root_system, Family};
use dunkl::spectral::SpectralConfig;
use dunkl::waveeq::{PicardOptions, WaveConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_FAMILIES: [FunctionFamily; 6] = [
    FunctionFamily::Gaussian,
    FunctionFamily::DilatedGaussian,
    FunctionFamily::HermiteGaussian,
    FunctionFamily::RadialBump,
    FunctionFamily::AnnularBump,
    FunctionFamily::SeededSuperposition,
];

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusCfg {
    pub count: usize,
    #[serde(default = "default_families")]
    pub families: Vec<FunctionFamily>,
    #[serde(default)]
    pub vanish_at_origin: bool,
    #[serde(default = "yes")]
    pub radial: bool,
}

fn default_families() -> Vec<FunctionFamily> {
    DEFAULT_FAMILIES.to_vec()
}

fn yes() -> bool {
    true
}

impl Default for CorpusCfg {
    fn default() -> Self {
        CorpusCfg { count: 10, families: default_families(), vanish_at_origin: false, radial: true }
    }
}

impl CorpusCfg {
    pub fn generate(&self, seed: u64) -> Result<Vec<TestFunction>, CliError> {
        let c = CorpusConstraints { vanish_at_origin: self.vanish_at_origin, radial: self.radial };
        generate_corpus(seed, self.count, &self.families, c).map_err(CliError::from)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyCfg {
    pub spec: InequalitySpec,
    #[serde(default)]
    pub corpus: CorpusCfg,
    pub seed: Option<u64>,
    /// Quadrature nodes per radius.
    pub resolution: Option<usize>,
    #[serde(default)]
    pub class_policy: ClassPolicy,
    /// Bound to test the ratios against instead of the theorem's known ceiling.
    pub bound: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, untagged)]
pub enum FamilyCfg {
    Explicit { tag: FamilyTag, bounds: Vec<ParamRange> },
    Default { tag: FamilyTag },
}

impl FamilyCfg {
    pub fn family(&self) -> TrialFamily {
        match self {
            FamilyCfg::Explicit { tag, bounds } => TrialFamily { tag: *tag, bounds: bounds.clone() },
            FamilyCfg::Default { tag } => TrialFamily::default_for(*tag),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProbeCfg {
    pub max_iters: usize,
    pub tolerance: f64,
    pub restarts: usize,
}

impl Default for ProbeCfg {
    fn default() -> Self {
        let d = dunkl::extremal::ProbeOptions::default();
        ProbeCfg { max_iters: d.max_iters, tolerance: d.tolerance, restarts: d.restarts }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SharpCfg {
    pub spec: InequalitySpec,
    pub family: FamilyCfg,
    #[serde(default)]
    pub probe: ProbeCfg,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum SettingCfg {
    Rank1 { k: f64 },
    Radial { dim: usize, gamma: f64 },
    RootSystem { family: Family, dim: usize, multiplicities: Vec<f64> },
}

impl SettingCfg {
    pub fn setting(&self) -> Result<Setting, CliError> {
        match self {
            SettingCfg::Rank1 { k } => Ok(Setting::Rank1 { k: *k }),
            SettingCfg::Radial { dim, gamma } => Ok(Setting::radial(*dim, *gamma)),
            SettingCfg::RootSystem { family, dim, multiplicities } => {
                let rs = build_root_system(*family, *dim, multiplicities).map_err(CliError::from)?;
                Setting::from_root_system(&rs).map_err(CliError::from)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum DataCfg {
    Zero,
    Gaussian {
        sigma: f64,
        #[serde(default = "one")]
        amplitude: f64,
    },
    HermiteGaussian { coefs: Vec<f64>, sigma: f64 },
    /// Member `index` of the seeded corpus described by `corpus`.
    Corpus {
        index: usize,
        #[serde(default)]
        corpus: CorpusCfg,
    },
}

fn one() -> f64 {
    1.0
}

impl DataCfg {
    pub fn build(&self, seed: Option<u64>) -> Result<TestFunction, CliError> {
        Ok(match self {
            DataCfg::Zero => TestFunction::gaussian(1.0).scaled(0.0),
            DataCfg::Gaussian { sigma, amplitude } => TestFunction::gaussian(*sigma).scaled(*amplitude),
            DataCfg::HermiteGaussian { coefs, sigma } => TestFunction::hermite_gaussian(coefs, *sigma),
            DataCfg::Corpus { index, corpus } => {
                let seed = seed.ok_or_else(|| CliError::Schema("data.corpus needs a seed (--seed or \"seed\")".into()))?;
                if *index >= corpus.count {
                    return Err(CliError::Schema(format!("data.corpus.index {index} is not below count {}", corpus.count)));
                }
                corpus.generate(seed)?.swap_remove(*index)
            }
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeCfg {
    #[serde(rename = "T")]
    pub t_max: f64,
    pub dt: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataPair {
    pub u0: DataCfg,
    #[serde(default = "zero")]
    pub u1: DataCfg,
}

fn zero() -> DataCfg {
    DataCfg::Zero
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WaveCfg {
    pub b: f64,
    pub m: f64,
    pub epsilon: f64,
    pub p: Option<f64>,
    pub time: TimeCfg,
    pub grid: SpectralConfig,
    pub setting: SettingCfg,
    pub data: DataPair,
    pub reach: Option<f64>,
    pub snapshot_times: Vec<f64>,
    pub fit_window: (f64, f64),
    pub delta_factor: f64,
    pub picard: PicardOptions,
    pub seed: Option<u64>,
}

impl Default for WaveCfg {
    fn default() -> Self {
        let d = WaveConfig::default();
        WaveCfg {
            b: d.b,
            m: d.m,
            epsilon: d.epsilon,
            p: d.p,
            time: TimeCfg { t_max: d.t_max, dt: d.dt },
            grid: d.spectral,
            setting: SettingCfg::Rank1 { k: 0.5 },
            data: DataPair { u0: DataCfg::Gaussian { sigma: 1.0, amplitude: 1.0 }, u1: DataCfg::Zero },
            reach: d.reach,
            snapshot_times: d.snapshot_times,
            fit_window: d.fit_window,
            delta_factor: d.delta_factor,
            picard: d.picard,
            seed: None,
        }
    }
}

impl WaveCfg {
    pub fn wave_config(&self) -> Result<WaveConfig, CliError> {
        let cfg = WaveConfig {
            b: self.b,
            m: self.m,
            epsilon: self.epsilon,
            p: self.p,
            t_max: self.time.t_max,
            dt: self.time.dt,
            setting: self.setting.setting()?,
            spectral: self.grid,
            reach: self.reach,
            snapshot_times: self.snapshot_times.clone(),
            fit_window: self.fit_window,
            delta_factor: self.delta_factor,
            picard: self.picard,
        };
        cfg.validate().map_err(|e| CliError::Schema(e.to_string()))?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SelftestCfg {
    /// Rank-one multiplicities to check.
    pub ks: Vec<f64>,
    /// Radial (N, γ) pairs to check.
    pub radial: Vec<(usize, f64)>,
    pub count: usize,
    pub seed: u64,
}

impl Default for SelftestCfg {
    fn default() -> Self {
        SelftestCfg { ks: vec![0.0, 0.3, 0.5, 1.0, 2.5], radial: vec![(3, 0.0), (2, 0.75)], count: 6, seed: 11 }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusCmdCfg {
    #[serde(default)]
    pub corpus: CorpusCfg,
    pub seed: Option<u64>,
}

/// Parses `text` as the schema `T`; errors carry serde's line/column and field name.
pub fn parse<T: serde::de::DeserializeOwned>(text: &str, path: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Schema(format!("{path}: {e}")))
}
