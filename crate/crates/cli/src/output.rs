//! Row types and their CSV/JSON renderings.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Format;

/// Top-level JSON document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report<R> {
    pub config_echo: Value,
    pub rows: Vec<R>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub extra: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub tolerances: Value,
}

impl Provenance {
    pub fn new(tolerances: impl Serialize) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            tolerances: serde_json::to_value(tolerances).unwrap_or(Value::Null),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub n_r: u32,
    pub l: u32,
    pub method: String,
    pub energy: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularRow {
    pub l: u32,
    pub m_z: i32,
    pub m: f64,
    pub m_z_action: f64,
    pub m_squared: f64,
    pub polar_integral_numeric: f64,
    pub polar_integral_exact: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngularSample {
    pub theta: f64,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub n_r: u32,
    pub l: u32,
    pub closed: Option<f64>,
    pub closed_alt: Option<f64>,
    pub quadrature: Option<f64>,
    pub oracle_ll1: Option<f64>,
    pub oracle_langer: Option<f64>,
    pub delta_quadrature_closed: Option<f64>,
    pub delta_alt_closed: Option<f64>,
    pub delta_oracle_ll1_closed: Option<f64>,
    pub delta_oracle_langer_closed: Option<f64>,
    pub delta_quadrature_oracle_ll1: Option<f64>,
    pub max_abs_delta: Option<f64>,
    pub errors: Vec<String>,
}

impl From<&wkb_core::ComparisonRow> for CompareRow {
    fn from(r: &wkb_core::ComparisonRow) -> Self {
        Self {
            n_r: r.n_r,
            l: r.l,
            closed: r.closed,
            closed_alt: r.closed_alt,
            quadrature: r.quadrature,
            oracle_ll1: r.oracle_ll1,
            oracle_langer: r.oracle_langer,
            delta_quadrature_closed: r.delta_quadrature_closed(),
            delta_alt_closed: r.delta_alt_closed(),
            delta_oracle_ll1_closed: r.delta_oracle_ll1_closed(),
            delta_oracle_langer_closed: r.delta_oracle_langer_closed(),
            delta_quadrature_oracle_ll1: r.delta_quadrature_oracle_ll1(),
            max_abs_delta: r.max_abs_delta(),
            errors: r.errors.clone(),
        }
    }
}

pub const SPECTRUM_COLUMNS: &str = "n_r,l,method,energy,residual";
pub const ANGULAR_COLUMNS: &str = "l,m_z,M,M_z,M2,polar_integral_numeric,polar_integral_exact";
pub const COMPARE_COLUMNS: &str = "n_r,l,closed,closed_alt,quadrature,oracle_ll1,oracle_langer,\
delta_quadrature_closed,delta_alt_closed,delta_oracle_ll1_closed,delta_oracle_langer_closed,\
delta_quadrature_oracle_ll1,max_abs_delta";

/// Enough digits to recover the exact double.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub trait CsvRow {
    fn columns() -> &'static str;
    fn csv(&self) -> String;
}

impl CsvRow for SpectrumRow {
    fn columns() -> &'static str {
        SPECTRUM_COLUMNS
    }

    fn csv(&self) -> String {
        format!("{},{},{},{},{}", self.n_r, self.l, self.method, num(self.energy), num(self.residual))
    }
}

impl CsvRow for AngularRow {
    fn columns() -> &'static str {
        ANGULAR_COLUMNS
    }

    fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.l,
            self.m_z,
            num(self.m),
            num(self.m_z_action),
            num(self.m_squared),
            num(self.polar_integral_numeric),
            num(self.polar_integral_exact)
        )
    }
}

impl CsvRow for CompareRow {
    fn columns() -> &'static str {
        COMPARE_COLUMNS
    }

    fn csv(&self) -> String {
        let cells = [
            self.closed,
            self.closed_alt,
            self.quadrature,
            self.oracle_ll1,
            self.oracle_langer,
            self.delta_quadrature_closed,
            self.delta_alt_closed,
            self.delta_oracle_ll1_closed,
            self.delta_oracle_langer_closed,
            self.delta_quadrature_oracle_ll1,
            self.max_abs_delta,
        ];
        let mut s = format!("{},{}", self.n_r, self.l);
        for c in cells {
            s.push(',');
            s.push_str(&opt(c));
        }
        s
    }
}

pub fn render<R: Serialize + CsvRow>(format: Format, report: &Report<R>) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from(R::columns());
            s.push('\n');
            for row in &report.rows {
                s.push_str(&row.csv());
                s.push('\n');
            }
            s
        }
    }
}
