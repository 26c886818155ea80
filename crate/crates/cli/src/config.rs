//! Run configuration: defaults, optional `key=value` file, flag
//! overrides. The effective settings are echoed into every report.

use std::collections::BTreeMap;
use std::path::Path;

use tfs_core::solve::SolverConfig;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub threads: usize,
    pub forcing_limit: usize,
    pub total_limit: usize,
    pub exhaustive_limit: usize,
    pub enum_limit: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let solver = SolverConfig::default();
        RunConfig {
            threads: 1,
            forcing_limit: solver.max_order_forcing,
            total_limit: solver.max_order_total,
            exhaustive_limit: solver.max_order_exhaustive,
            enum_limit: tfs_core::enumerate::MAX_FREE_TREE_ORDER,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<RunConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut cfg = RunConfig::default();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!("config line {}: expected key=value", idx + 1));
            };
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("config line {}: `{}` is not a number", idx + 1, value.trim()))?;
            match key.trim() {
                "threads" => cfg.threads = value,
                "forcing_limit" => cfg.forcing_limit = value,
                "total_limit" => cfg.total_limit = value,
                "exhaustive_limit" => cfg.exhaustive_limit = value,
                "enum_limit" => cfg.enum_limit = value,
                other => return Err(format!("config line {}: unknown key `{other}`", idx + 1)),
            }
        }
        Ok(cfg)
    }

    /// Solver settings for theorem sweeps: the leaf-count lower bound is
    /// never assumed, so the sweeps that check it stay meaningful.
    pub fn sweep_solver(&self) -> SolverConfig {
        SolverConfig {
            max_order_forcing: self.forcing_limit,
            max_order_total: self.total_limit,
            max_order_exhaustive: self.exhaustive_limit,
            leaf_lower_bound: false,
            ..SolverConfig::default()
        }
    }

    /// Solver settings for one-off solves: all pruning enabled.
    pub fn full_solver(&self) -> SolverConfig {
        SolverConfig {
            max_order_forcing: self.forcing_limit,
            max_order_total: self.total_limit,
            max_order_exhaustive: self.exhaustive_limit,
            ..SolverConfig::default()
        }
    }

    pub fn echo(&self, threads: usize, max_order: usize) -> BTreeMap<String, String> {
        BTreeMap::from([
            ("threads".into(), threads.to_string()),
            ("max_order".into(), max_order.to_string()),
            ("forcing_limit".into(), self.forcing_limit.to_string()),
            ("total_limit".into(), self.total_limit.to_string()),
            ("exhaustive_limit".into(), self.exhaustive_limit.to_string()),
            ("enum_limit".into(), self.enum_limit.to_string()),
            (
                "subdivision_sampling".into(),
                "3 rounds, chacha8 seeded from the tree's canonical code".into(),
            ),
            ("leaf_lower_bound".into(), "disabled in sweeps".into()),
        ])
    }
}
