//! CSV schema and serialization.
//!
//! One fixed column order for metric rows (eval, sweep, preset, mc) and one
//! for optimization results. Absent values are empty cells; floats use the
//! shortest round-trip representation, so identical inputs always serialize
//! to identical bytes.

use relay_secrecy::channel::SystemParams;
use relay_secrecy::linear_to_db;
use std::io::Write;

pub const DATA_HEADER: &str = "axis,axis_value,theta,gamma_p_db,eta1,eta2,eta3,rs,rt,d,alpha,\
omega_sr,omega_rd,allocation,feasible,gsop,gsop_asym,afe,afe_asym,ailr,ailr_asym,throughput,\
mc_gsop,mc_gsop_ci,mc_afe,mc_afe_ci,mc_ailr,mc_ailr_ci,mc_throughput,mc_throughput_ci";

pub const OPT_HEADER: &str = "problem,objective_mode,theta,gamma_min,gamma_p_db,omega_sr,\
omega_rd,eta1,eta2,eta3,rs,rt,objective,feasible,iterations,seed";

/// One metric row.
#[derive(Debug, Clone, Default)]
pub struct DataRow {
    pub axis: &'static str,
    pub axis_value: Option<f64>,
    pub theta: f64,
    pub gamma_p_db: f64,
    pub eta1: f64,
    pub eta2: f64,
    pub eta3: f64,
    pub rs: f64,
    pub rt: f64,
    pub d: Option<f64>,
    pub alpha: f64,
    pub omega_sr: f64,
    pub omega_rd: f64,
    pub allocation: &'static str,
    pub feasible: Option<bool>,
    pub gsop: Option<f64>,
    pub gsop_asym: Option<f64>,
    pub afe: Option<f64>,
    pub afe_asym: Option<f64>,
    pub ailr: Option<f64>,
    pub ailr_asym: Option<f64>,
    pub throughput: Option<f64>,
    pub mc_gsop: Option<f64>,
    pub mc_gsop_ci: Option<f64>,
    pub mc_afe: Option<f64>,
    pub mc_afe_ci: Option<f64>,
    pub mc_ailr: Option<f64>,
    pub mc_ailr_ci: Option<f64>,
    pub mc_throughput: Option<f64>,
    pub mc_throughput_ci: Option<f64>,
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl DataRow {
    /// Fills the parameter columns from a concrete operating point.
    pub fn with_params(mut self, p: &SystemParams) -> Self {
        self.gamma_p_db = linear_to_db(p.gamma_p);
        self.eta1 = p.eta1;
        self.eta2 = p.eta2;
        self.eta3 = p.eta3;
        self.rs = p.rs;
        self.rt = p.rt;
        self.d = p.d;
        self.alpha = p.alpha;
        self.omega_sr = p.omega_sr;
        self.omega_rd = p.omega_rd;
        self
    }

    pub fn to_csv(&self) -> String {
        let feasible = match self.feasible {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.axis,
            cell(self.axis_value),
            self.theta,
            self.gamma_p_db,
            self.eta1,
            self.eta2,
            self.eta3,
            self.rs,
            self.rt,
            cell(self.d),
            self.alpha,
            self.omega_sr,
            self.omega_rd,
            self.allocation,
            feasible,
            cell(self.gsop),
            cell(self.gsop_asym),
            cell(self.afe),
            cell(self.afe_asym),
            cell(self.ailr),
            cell(self.ailr_asym),
            cell(self.throughput),
            cell(self.mc_gsop),
            cell(self.mc_gsop_ci),
            cell(self.mc_afe),
            cell(self.mc_afe_ci),
            cell(self.mc_ailr),
            cell(self.mc_ailr_ci),
            cell(self.mc_throughput),
            cell(self.mc_throughput_ci),
        )
    }
}

/// Writes a header plus rows, either to the given file or to stdout.
pub fn emit(
    out: Option<&std::path::Path>,
    header: &str,
    lines: impl IntoIterator<Item = String>,
) -> anyhow::Result<()> {
    let mut buffer = String::new();
    buffer.push_str(header);
    buffer.push('\n');
    for line in lines {
        buffer.push_str(&line);
        buffer.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, buffer)?,
        None => std::io::stdout().write_all(buffer.as_bytes())?,
    }
    Ok(())
}
