//! Shared parameter flags, config-file overlay, and resolution to concrete
//! system parameters.
//!
//! Precedence: command-line flags override config-file keys override
//! defaults. The config file is plain `key = value` text with `#` comments;
//! keys use the flag names with underscores.

use anyhow::{bail, Context};
use clap::Args;
use relay_secrecy::channel::SystemParams;
use relay_secrecy::db_to_linear;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    /// Total transmit SNR in dB [default: 30]
    #[arg(long)]
    pub gamma_p_db: Option<f64>,

    /// Power allocation factors "eta1,eta2,eta3" (must sum to 1)
    #[arg(long, value_name = "A,B,C")]
    pub eta: Option<String>,

    /// Equal power allocation (eta = 1/3 each); the default split
    #[arg(long, conflicts_with = "eta")]
    pub epa: bool,

    /// Target secrecy rate R_S in bits/s/Hz [default: 1]
    #[arg(long)]
    pub rs: Option<f64>,

    /// Codeword transmission rate R_T in bits/s/Hz [default: R_S]
    #[arg(long)]
    pub rt: Option<f64>,

    /// Equivocation threshold θ in (0,1]; repeatable [default: 1]
    #[arg(long, action = clap::ArgAction::Append)]
    pub theta: Vec<f64>,

    /// Normalized source→relay distance in (0,1) [default: 0.5]
    #[arg(long)]
    pub d: Option<f64>,

    /// Path-loss exponent [default: 4]
    #[arg(long)]
    pub alpha: Option<f64>,

    /// Mean S→R channel gain (overrides the distance model with --omega-rd)
    #[arg(long, requires = "omega_rd")]
    pub omega_sr: Option<f64>,

    /// Mean R→D channel gain (overrides the distance model with --omega-sr)
    #[arg(long, requires = "omega_sr")]
    pub omega_rd: Option<f64>,

    /// Throughput floor Γ for optimization [default: 0.5]
    #[arg(long)]
    pub gamma_min: Option<f64>,

    /// Monte Carlo sample count (enables MC columns where optional)
    #[arg(long)]
    pub mc_samples: Option<u64>,

    /// Seed for every random quantity [default: 1]
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Config file with key=value lines; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved parameter set.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub gamma_p_db: f64,
    pub etas: [f64; 3],
    /// True when the split came from --eta/config rather than the EPA default.
    pub explicit_etas: bool,
    pub rs: f64,
    /// None means "track rs".
    pub rt: Option<f64>,
    pub thetas: Vec<f64>,
    pub d: Option<f64>,
    pub alpha: f64,
    pub omegas: Option<(f64, f64)>,
    pub gamma_min: f64,
    pub mc_samples: Option<u64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Resolved {
    /// Mean channel gains from either the explicit pair or the distance model.
    pub fn mean_gains(&self) -> (f64, f64) {
        match self.omegas {
            Some(pair) => pair,
            None => {
                let d = self.d.unwrap_or(0.5);
                (d.powf(-self.alpha), (1.0 - d).powf(-self.alpha))
            }
        }
    }

    /// System parameters at the resolved operating point.
    pub fn params(&self) -> anyhow::Result<SystemParams> {
        let rt = self.rt.unwrap_or(self.rs);
        let p = match self.omegas {
            Some((osr, ord)) => SystemParams::new(
                db_to_linear(self.gamma_p_db),
                self.etas,
                self.rs,
                rt,
                osr,
                ord,
            ),
            None => SystemParams::with_distance(
                db_to_linear(self.gamma_p_db),
                self.etas,
                self.rs,
                rt,
                self.d.unwrap_or(0.5),
                self.alpha,
            ),
        };
        Ok(p?)
    }
}

fn parse_f64_list(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .with_context(|| format!("invalid number '{tok}'"))
        })
        .collect()
}

/// Reads a `key = value` config file.
fn read_config(path: &Path) -> anyhow::Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {} is not 'key = value': '{line}'", lineno + 1);
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

impl ParamArgs {
    pub fn resolve(&self) -> anyhow::Result<Resolved> {
        let cfg = match &self.config {
            Some(path) => read_config(path)?,
            None => BTreeMap::new(),
        };
        let get = |key: &str| cfg.get(key).map(String::as_str);
        let num = |key: &str| -> anyhow::Result<Option<f64>> {
            get(key)
                .map(|v| {
                    v.parse::<f64>()
                        .with_context(|| format!("config key {key}"))
                })
                .transpose()
        };

        let eta_source = match (&self.eta, get("eta")) {
            (Some(s), _) => Some(s.clone()),
            (None, Some(s)) if !self.epa => Some(s.to_string()),
            _ => None,
        };
        let (etas, explicit_etas) = match eta_source {
            Some(s) => {
                let v = parse_f64_list(&s)?;
                if v.len() != 3 {
                    bail!(
                        "invalid input: --eta needs exactly three values (got {})",
                        v.len()
                    );
                }
                ([v[0], v[1], v[2]], true)
            }
            None => ([1.0 / 3.0; 3], false),
        };

        let thetas = if !self.theta.is_empty() {
            self.theta.clone()
        } else if let Some(s) = get("theta") {
            parse_f64_list(s)?
        } else {
            vec![1.0]
        };

        let omegas = match (self.omega_sr, self.omega_rd) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => match (num("omega_sr")?, num("omega_rd")?) {
                (Some(a), Some(b)) => Some((a, b)),
                (None, None) => None,
                _ => bail!("invalid input: omega_sr and omega_rd must be given together"),
            },
            _ => bail!("invalid input: omega_sr and omega_rd must be given together"),
        };
        let d = self.d.or(num("d")?);
        if omegas.is_some() && d.is_some() {
            bail!("invalid input: give either --d or the omega pair, not both");
        }

        let rs = self.rs.or(num("rs")?).unwrap_or(1.0);
        let resolved = Resolved {
            gamma_p_db: self.gamma_p_db.or(num("gamma_p_db")?).unwrap_or(30.0),
            etas,
            explicit_etas,
            rs,
            rt: self.rt.or(num("rt")?),
            thetas,
            d,
            alpha: self.alpha.or(num("alpha")?).unwrap_or(4.0),
            omegas,
            gamma_min: self.gamma_min.or(num("gamma_min")?).unwrap_or(0.5),
            mc_samples: match self.mc_samples {
                Some(n) => Some(n),
                None => get("mc_samples")
                    .map(|v| v.parse::<u64>().context("config key mc_samples"))
                    .transpose()?,
            },
            seed: match self.seed {
                Some(s) => s,
                None => get("seed")
                    .map(|v| v.parse::<u64>().context("config key seed"))
                    .transpose()?
                    .unwrap_or(1),
            },
            out: self.out.clone().or_else(|| get("out").map(PathBuf::from)),
        };
        Ok(resolved)
    }
}
