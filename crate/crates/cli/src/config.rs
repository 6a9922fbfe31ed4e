//! Run configuration: resource caps, budgets, tolerances, and output
//! format, assembled from defaults, an optional key=value config file,
//! environment, and command-line flags.

use capgraph_core::capacity::CapacityOpts;
use capgraph_core::graph::Caps;
use capgraph_core::theta::{SdpSettings, ThetaOpts};
use std::path::Path;
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown output format {other:?}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub construction_cap: usize,
    pub product_cap: usize,
    pub alpha_budget_secs: f64,
    pub alpha_order_cap: usize,
    pub sdp_tolerance: f64,
    pub sdp_max_iterations: usize,
    pub sdp_cap: usize,
    pub max_power: u64,
    pub literature_constants: bool,
    pub threads: usize,
    pub format: OutputFormat,
    pub slow: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            construction_cap: 5000,
            product_cap: 20000,
            alpha_budget_secs: 30.0,
            alpha_order_cap: 300,
            sdp_tolerance: 1e-7,
            sdp_max_iterations: 100_000,
            sdp_cap: 64,
            max_power: 2,
            literature_constants: true,
            threads: 1,
            format: OutputFormat::Text,
            slow: false,
        }
    }
}

impl RunConfig {
    /// Parse a simple `key=value` config file; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("line {}: expected key=value", lineno + 1));
            };
            self.apply_kv(key.trim(), value.trim())
                .map_err(|e| format!("line {}: {}", lineno + 1, e))?;
        }
        Ok(())
    }

    pub fn apply_kv(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn parse<T: std::str::FromStr>(v: &str, what: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("bad value for {what}: {v:?}"))
        }
        match key {
            "construction_cap" => self.construction_cap = parse(value, key)?,
            "product_cap" => self.product_cap = parse(value, key)?,
            "alpha_budget_secs" => self.alpha_budget_secs = parse(value, key)?,
            "alpha_order_cap" => self.alpha_order_cap = parse(value, key)?,
            "sdp_tolerance" => self.sdp_tolerance = parse(value, key)?,
            "sdp_max_iterations" => self.sdp_max_iterations = parse(value, key)?,
            "sdp_cap" => self.sdp_cap = parse(value, key)?,
            "max_power" => self.max_power = parse(value, key)?,
            "literature_constants" => self.literature_constants = parse(value, key)?,
            "threads" => self.threads = parse(value, key)?,
            "format" => self.format = parse(value, key)?,
            "slow" => self.slow = parse(value, key)?,
            other => return Err(format!("unknown config key {other:?}")),
        }
        Ok(())
    }

    pub fn apply_env(&mut self) -> Result<(), String> {
        if let Ok(v) = std::env::var("CAPGRAPH_THREADS") {
            self.threads = v
                .parse()
                .map_err(|_| format!("bad CAPGRAPH_THREADS value {v:?}"))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.construction_cap == 0 || self.product_cap == 0 || self.alpha_order_cap == 0 {
            return Err("caps must be positive".into());
        }
        if !(self.sdp_tolerance > 0.0 && self.sdp_tolerance <= 1e-2) {
            return Err("sdp_tolerance must lie in (0, 1e-2]".into());
        }
        if self.threads == 0 {
            return Err("threads must be positive".into());
        }
        Ok(())
    }

    pub fn caps(&self) -> Caps {
        Caps {
            construction: self.construction_cap,
            product: self.product_cap,
        }
    }

    pub fn theta_opts(&self) -> ThetaOpts {
        ThetaOpts {
            sdp_cap: self.sdp_cap,
            sdp: SdpSettings {
                tol: self.sdp_tolerance,
                max_iterations: self.sdp_max_iterations,
            },
            cross_check: false,
            cross_check_tol: 1e-6,
        }
    }

    pub fn capacity_opts(&self) -> CapacityOpts {
        CapacityOpts {
            caps: self.caps(),
            max_power: self.max_power,
            alpha_budget: Some(Duration::from_secs_f64(self.alpha_budget_secs)),
            alpha_order_cap: self.alpha_order_cap,
            literature_constants: self.literature_constants,
            theta: self.theta_opts(),
            ..CapacityOpts::default()
        }
    }
}
