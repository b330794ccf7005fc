use std::io::Write;

use jcm_core::entropy::{mutual_entropy, von_neumann_entropy, MutualEntropyMode};
use jcm_core::model::{channel_from_sums, revival_times, transition_sums};
use jcm_core::oracle::{coherence_magnitude_with, Exponentiator};
use jcm_core::tol::DEGENERACY_TOL;
use jcm_core::{AtomState, Error, FieldKind, ModelParams};
use serde_json::{json, Map, Value};

use crate::format::{sig12, sig12_json};
use crate::{CliError, Result};

/// Quantities a sweep can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Output {
    #[value(name = "mutual_entropy")]
    MutualEntropy,
    #[value(name = "von_neumann")]
    VonNeumann,
    #[value(name = "inversion")]
    Inversion,
    #[value(name = "populations")]
    Populations,
    #[value(name = "coherence")]
    Coherence,
    #[value(name = "revival_markers")]
    RevivalMarkers,
}

impl Output {
    fn columns(self) -> &'static [&'static str] {
        match self {
            Output::MutualEntropy => &["I_mutual"],
            Output::VonNeumann => &["S_vn_atom"],
            Output::Inversion => &["inversion"],
            Output::Populations => &["p_lower", "p_upper"],
            Output::Coherence => &["coherence_abs"],
            Output::RevivalMarkers => &["revival_k"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub params: ModelParams,
    pub lambda0: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub steps: usize,
    pub outputs: Vec<Output>,
    pub format: Format,
}

impl SweepConfig {
    /// Requested outputs, deduplicated, in column order.
    pub fn outputs(&self) -> Vec<Output> {
        let mut outs = self.outputs.clone();
        outs.sort();
        outs.dedup();
        outs
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if !(self.t_start.is_finite() && self.t_end.is_finite() && self.t_start < self.t_end) {
            return Err(CliError::Config(format!(
                "need t_start < t_end, got {} and {}",
                self.t_start, self.t_end
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Config(format!("steps must be >= 2, got {}", self.steps)));
        }
        if !(0.0..=1.0).contains(&self.lambda0) {
            return Err(CliError::Config(format!("lambda0 must lie in [0, 1], got {}", self.lambda0)));
        }
        if self.outputs().contains(&Output::MutualEntropy) {
            let gap = (2.0 * self.lambda0 - 1.0).abs();
            if gap <= DEGENERACY_TOL {
                return Err(Error::DegenerateSpectrum { gap }.into());
            }
        }
        if self.outputs().contains(&Output::RevivalMarkers) {
            revival_times(&self.params, 1)?;
        }
        Ok(())
    }
}

/// Table produced by a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    /// Parameter echo, in emission order.
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (key, value) in &self.parameters {
            writeln!(w, "# {key} = {value}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| sig12(x)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let parameters: Map<String, Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|&x| sig12_json(x)).collect()))
            .collect();
        json!({
            "parameters": parameters,
            "columns": self.columns,
            "rows": rows,
        })
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut w, &self.to_json())?;
        writeln!(w)
    }

    pub fn write<W: Write>(&self, format: Format, w: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }
}

pub(crate) fn parameter_echo(params: &ModelParams, lambda0: f64) -> Vec<(String, String)> {
    let mut echo = Vec::new();
    match params.field.kind {
        FieldKind::Coherent(theta) => {
            echo.push(("field".into(), "coherent".into()));
            echo.push(("mean_photon".into(), sig12(theta.norm_sqr())));
        }
        FieldKind::Fock(n) => {
            echo.push(("field".into(), "fock".into()));
            echo.push(("fock_n".into(), n.to_string()));
        }
    }
    echo.push(("g".into(), sig12(params.g)));
    echo.push(("lambda0".into(), sig12(lambda0)));
    echo.push(("lambda1".into(), sig12(1.0 - lambda0)));
    echo.push(("photon_cutoff".into(), params.cutoff().to_string()));
    echo.push(("tail_epsilon".into(), sig12(params.tail_epsilon)));
    echo.push(("entropy_unit".into(), params.log_base.unit().into()));
    echo
}

/// Evenly spaced grid, plus the revival times inside the range when markers
/// are requested. Each entry carries its revival index (0 for plain points).
fn time_points(config: &SweepConfig, with_markers: bool) -> Result<Vec<(f64, usize)>> {
    let n = config.steps;
    let span = config.t_end - config.t_start;
    let mut points: Vec<(f64, usize)> = (0..n)
        .map(|i| {
            let t = if i + 1 == n {
                config.t_end
            } else {
                config.t_start + span * i as f64 / (n - 1) as f64
            };
            (t, 0)
        })
        .collect();
    if with_markers {
        let period = revival_times(&config.params, 1)?[0];
        let k_max = (config.t_end / period).floor().max(0.0) as usize;
        for (k, t) in revival_times(&config.params, k_max)?.into_iter().enumerate() {
            if t < config.t_start {
                continue;
            }
            match points.iter_mut().find(|(p, _)| *p == t) {
                Some(slot) => slot.1 = k + 1,
                None => points.push((t, k + 1)),
            }
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    Ok(points)
}

pub fn run_sweep(config: &SweepConfig) -> Result<Dataset> {
    config.validate()?;
    let outputs = config.outputs();
    let params = &config.params;
    let (l0, l1) = (config.lambda0, 1.0 - config.lambda0);
    let rho = AtomState::from_weights(l0, l1)?;

    let mut columns = vec!["t"];
    for o in &outputs {
        columns.extend_from_slice(o.columns());
    }

    let mut rows = Vec::new();
    for (t, revival) in time_points(config, outputs.contains(&Output::RevivalMarkers))? {
        let out = channel_from_sums(&transition_sums(params, t), l0, l1)?;
        let mut row = vec![t];
        for o in &outputs {
            match o {
                Output::MutualEntropy => {
                    row.push(mutual_entropy(params, l0, l1, t, MutualEntropyMode::ClosedForm)?)
                }
                Output::VonNeumann => row.push(von_neumann_entropy(out.matrix(), params.log_base)?),
                Output::Inversion => row.push(out.p_upper() - out.p_lower()),
                Output::Populations => {
                    row.push(out.p_lower());
                    row.push(out.p_upper());
                }
                Output::Coherence => {
                    row.push(coherence_magnitude_with(params, &rho, t, Exponentiator::Dressed)?)
                }
                Output::RevivalMarkers => row.push(revival as f64),
            }
        }
        rows.push(row);
    }

    let mut parameters = vec![("command".to_string(), "sweep".to_string())];
    parameters.extend(parameter_echo(params, l0));
    parameters.push(("t_start".into(), sig12(config.t_start)));
    parameters.push(("t_end".into(), sig12(config.t_end)));
    parameters.push(("steps".into(), config.steps.to_string()));
    parameters.push(("version".into(), env!("CARGO_PKG_VERSION").into()));

    Ok(Dataset {
        parameters,
        columns,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use jcm_core::FieldSpec;

    fn config(outputs: Vec<Output>) -> SweepConfig {
        SweepConfig {
            params: ModelParams::new(1.0, FieldSpec::coherent_mean(25.0)).unwrap(),
            lambda0: 0.1,
            t_start: 0.0,
            t_end: 70.0,
            steps: 141,
            outputs,
            format: Format::Csv,
        }
    }

    #[test]
    fn first_row_is_input_entropy() {
        let data = run_sweep(&config(vec![Output::MutualEntropy])).unwrap();
        assert_eq!(data.columns, vec!["t", "I_mutual"]);
        assert_eq!(data.rows[0][0], 0.0);
        assert_eq!(sig12(data.rows[0][1]), "0.325082973391");
        assert_eq!(data.rows.len(), 141);
        assert_eq!(data.rows.last().unwrap()[0], 70.0);
    }

    #[test]
    fn vacuum_inversion_is_cos_2t() {
        let mut cfg = config(vec![Output::Inversion]);
        cfg.params = ModelParams::new(1.0, FieldSpec::fock(0)).unwrap();
        cfg.lambda0 = 0.0;
        cfg.t_end = 10.0;
        let data = run_sweep(&cfg).unwrap();
        for row in &data.rows {
            assert!((row[1] - (2.0 * row[0]).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn revival_marker_rows() {
        let data = run_sweep(&config(vec![Output::RevivalMarkers, Output::MutualEntropy])).unwrap();
        assert_eq!(data.columns, vec!["t", "I_mutual", "revival_k"]);
        let markers: Vec<(f64, f64)> = data
            .rows
            .iter()
            .filter(|r| r[2] > 0.0)
            .map(|r| (r[0], r[2]))
            .collect();
        assert_eq!(markers.len(), 2);
        assert_eq!(sig12(markers[0].0), "31.4159265359");
        assert_eq!(sig12(markers[1].0), "62.8318530718");
        assert_eq!((markers[0].1, markers[1].1), (1.0, 2.0));
        assert!(data.rows.windows(2).all(|w| w[0][0] < w[1][0]));
    }

    #[test]
    fn columns_follow_declared_order() {
        let data = run_sweep(&config(vec![
            Output::Coherence,
            Output::Populations,
            Output::MutualEntropy,
            Output::VonNeumann,
            Output::Inversion,
        ]))
        .unwrap();
        assert_eq!(
            data.columns,
            vec!["t", "I_mutual", "S_vn_atom", "inversion", "p_lower", "p_upper", "coherence_abs"]
        );
    }

    #[test]
    fn rejects_degenerate_and_bad_ranges() {
        let mut cfg = config(vec![Output::MutualEntropy]);
        cfg.lambda0 = 0.5;
        assert!(matches!(
            run_sweep(&cfg),
            Err(CliError::Model(Error::DegenerateSpectrum { .. }))
        ));
        cfg.outputs = vec![Output::Populations];
        assert!(run_sweep(&cfg).is_ok());

        let mut cfg = config(vec![Output::MutualEntropy]);
        cfg.t_end = -1.0;
        assert!(matches!(run_sweep(&cfg), Err(CliError::Config(_))));
        let mut cfg = config(vec![Output::MutualEntropy]);
        cfg.steps = 1;
        assert!(matches!(run_sweep(&cfg), Err(CliError::Config(_))));
    }

    #[test]
    fn markers_need_coherent_field() {
        let mut cfg = config(vec![Output::RevivalMarkers]);
        cfg.params = ModelParams::new(1.0, FieldSpec::fock(2)).unwrap();
        assert!(matches!(run_sweep(&cfg), Err(CliError::Model(Error::NotCoherentField))));
    }

    #[test]
    fn csv_and_json_are_deterministic() {
        let cfg = config(vec![Output::MutualEntropy, Output::Populations]);
        let mut a = Vec::new();
        let mut b = Vec::new();
        run_sweep(&cfg).unwrap().write_csv(&mut a).unwrap();
        run_sweep(&cfg).unwrap().write_csv(&mut b).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
        assert_eq!(header, "t,I_mutual,p_lower,p_upper");
        assert!(text.contains("# entropy_unit = nats"));

        let json = run_sweep(&cfg).unwrap().to_json();
        assert_eq!(json["columns"][1], "I_mutual");
        assert_eq!(json["rows"][0][1].as_f64().unwrap(), 0.325082973391);
    }
}
