use idxlab_core::invariants::SamplingConfig;
use idxlab_core::local::{HsOptions, LengthConfig, DEFAULT_M_MAX, DEFAULT_N_MAX};
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    #[default]
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    /// `None` picks the largest degree the enumeration limit allows.
    pub max_degree: Option<u32>,
    pub trials: u32,
    pub truncation: u32,
    pub hs_max: u32,
    pub out: OutputMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            max_degree: None,
            trials: 16,
            truncation: DEFAULT_M_MAX,
            hs_max: DEFAULT_N_MAX,
            out: OutputMode::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_degree == Some(0) {
            return Err("--max-degree must be positive".into());
        }
        if self.truncation < 2 {
            return Err("--truncation must be at least 2".into());
        }
        if self.hs_max < 3 {
            return Err("--hs-max must be at least 3".into());
        }
        Ok(())
    }

    pub fn hs_options(&self) -> HsOptions {
        HsOptions {
            n_max: self.hs_max,
            length: LengthConfig {
                m_max: self.truncation,
                ..LengthConfig::default()
            },
            ..HsOptions::default()
        }
    }

    pub fn sampling(&self) -> SamplingConfig {
        SamplingConfig {
            hs: self.hs_options(),
            ..SamplingConfig::default()
        }
    }
}
