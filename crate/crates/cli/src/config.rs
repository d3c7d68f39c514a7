//! Caps and switches. Flags win over the optional TOML file; the environment
//! is never consulted.

use std::path::PathBuf;

use clap::Args;
use rbgroups::enumerate::DEFAULT_BRUTE_FORCE_CAP;
use rbgroups::group::DEFAULT_SUBGROUP_CAP;
use rbgroups::isoclinism::ISOCLINISM_ORDER_CAP;
use rbgroups::perm::DEFAULT_ORDER_CAP;
use rbgroups::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// TOML file with any of the cap fields and `extended`, `jobs`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest group accepted from input files.
    #[arg(long, global = true)]
    pub order_cap: Option<usize>,
    /// Largest semidirect product whose subgroups may be listed.
    #[arg(long, global = true)]
    pub subgroup_cap: Option<usize>,
    /// Largest number of maps the brute-force oracle may test.
    #[arg(long, global = true)]
    pub brute_force_cap: Option<u128>,
    /// Largest carrier accepted by the isoclinism searches.
    #[arg(long, global = true)]
    pub isoclinism_cap: Option<usize>,
    /// Persist the report and a run manifest under this directory.
    #[arg(long, global = true)]
    pub runs_dir: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    order_cap: Option<usize>,
    subgroup_cap: Option<usize>,
    brute_force_cap: Option<u128>,
    isoclinism_cap: Option<usize>,
    extended: Option<bool>,
    jobs: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Caps {
    pub order_cap: usize,
    pub subgroup_cap: usize,
    pub brute_force_cap: u128,
    pub isoclinism_cap: usize,
}

#[derive(Debug, Clone)]
pub struct Settings {
    pub caps: Caps,
    /// From the config file; `--extended` on a command also enables it.
    pub extended: bool,
    pub jobs: Option<usize>,
}

impl Settings {
    pub fn load(args: &GlobalArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::MalformedInput(format!("cannot read {}: {e}", path.display()))
                })?;
                toml::from_str::<FileConfig>(&text).map_err(|e| {
                    Error::MalformedInput(format!("config {}: {e}", path.display()))
                })?
            }
            None => FileConfig::default(),
        };
        Ok(Settings {
            caps: Caps {
                order_cap: args.order_cap.or(file.order_cap).unwrap_or(DEFAULT_ORDER_CAP),
                subgroup_cap: args
                    .subgroup_cap
                    .or(file.subgroup_cap)
                    .unwrap_or(DEFAULT_SUBGROUP_CAP),
                brute_force_cap: args
                    .brute_force_cap
                    .or(file.brute_force_cap)
                    .unwrap_or(DEFAULT_BRUTE_FORCE_CAP),
                isoclinism_cap: args
                    .isoclinism_cap
                    .or(file.isoclinism_cap)
                    .unwrap_or(ISOCLINISM_ORDER_CAP),
            },
            extended: file.extended.unwrap_or(false),
            jobs: args.jobs.or(file.jobs),
        })
    }
}
