//! Material parameters, the dimensionless variables used by every physics
//! module, and optional interband susceptibility tables.
//!
//! Frequencies are measured in units of the plasma frequency (Ω = ω/ω_p) and
//! wave numbers in units of ω_p/c (Q = cq/ω_p). This module is the only place
//! where SI quantities enter or leave.

use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;

use crate::constants::{NM_PER_M, SPEED_OF_LIGHT};
use crate::error::{Error, Result};

/// Which frequency axis a quantity lives on. Imaginary-axis values are
/// evaluated at ω = iΩω_p and are real.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Real,
    Imaginary,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Real => f.write_str("real"),
            Axis::Imaginary => f.write_str("imag"),
        }
    }
}

/// A (frequency, tangential wave number) evaluation site in dimensionless
/// units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponsePoint {
    pub axis: Axis,
    pub omega: f64,
    pub q: f64,
}

impl ResponsePoint {
    pub fn new(axis: Axis, omega: f64, q: f64) -> Result<Self> {
        if !(omega >= 0.0 && omega.is_finite()) || !(q >= 0.0 && q.is_finite()) {
            return Err(Error::domain(format!(
                "response point needs finite Omega >= 0 and Q >= 0, got ({omega}, {q})"
            )));
        }
        Ok(ResponsePoint { axis, omega, q })
    }

    pub fn real(omega: f64, q: f64) -> Result<Self> {
        Self::new(Axis::Real, omega, q)
    }

    pub fn imaginary(omega: f64, q: f64) -> Result<Self> {
        Self::new(Axis::Imaginary, omega, q)
    }

    /// On the real axis a wave is evanescent in vacuum when Q > Ω. Every
    /// imaginary-axis point has an imaginary normal wave number.
    pub fn is_evanescent(&self) -> bool {
        match self.axis {
            Axis::Real => self.q > self.omega,
            Axis::Imaginary => true,
        }
    }
}

/// Tabulated interband susceptibility χ_IB(Ω), linear in log Ω between
/// nodes and clamped to the end values outside the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiTable {
    axis: Axis,
    omega: Vec<f64>,
    chi: Vec<Complex64>,
}

impl ChiTable {
    pub fn new(axis: Axis, omega: Vec<f64>, chi: Vec<Complex64>) -> Result<Self> {
        if omega.len() != chi.len() {
            return Err(Error::domain("susceptibility grid and values differ in length"));
        }
        for (i, &w) in omega.iter().enumerate() {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::domain(format!("susceptibility node {i}: Omega = {w} must be > 0")));
            }
            if i > 0 && w <= omega[i - 1] {
                return Err(Error::domain(format!("susceptibility node {i}: grid is not strictly increasing")));
            }
        }
        if axis == Axis::Imaginary {
            if let Some(i) = chi.iter().position(|c| c.im != 0.0 || c.re < 0.0) {
                return Err(Error::domain(format!(
                    "susceptibility node {i}: imaginary-axis values must be real and >= 0"
                )));
            }
        }
        Ok(ChiTable { axis, omega, chi })
    }

    pub fn empty(axis: Axis) -> Self {
        ChiTable {
            axis,
            omega: Vec::new(),
            chi: Vec::new(),
        }
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn value(&self, omega: f64) -> Complex64 {
        let n = self.omega.len();
        if n == 0 {
            return Complex64::new(0.0, 0.0);
        }
        if omega <= self.omega[0] {
            return self.chi[0];
        }
        if omega >= self.omega[n - 1] {
            return self.chi[n - 1];
        }
        let hi = self.omega.partition_point(|&w| w <= omega);
        let lo = hi - 1;
        if self.omega[lo] == omega {
            return self.chi[lo];
        }
        let t = (omega.ln() - self.omega[lo].ln()) / (self.omega[hi].ln() - self.omega[lo].ln());
        self.chi[lo] + (self.chi[hi] - self.chi[lo]) * t
    }
}

/// Parses a susceptibility table.
///
/// The header selects the axis: `omega_dimensionless,chi` is an
/// imaginary-axis table of real values, `omega_dimensionless,chi_re,chi_im`
/// a real-axis table of complex values. Blank lines and `#` comments are
/// skipped. A table with a header and no rows is valid and yields χ ≡ 0.
pub fn load_chi_table<R: Read>(source: R) -> Result<ChiTable> {
    let reader = BufReader::new(source);
    let mut axis = None;
    let mut omega = Vec::new();
    let mut chi = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split(',').map(str::trim).collect();
        let Some(axis) = axis else {
            axis = Some(match fields.as_slice() {
                ["omega_dimensionless", "chi"] => Axis::Imaginary,
                ["omega_dimensionless", "chi_re", "chi_im"] => Axis::Real,
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("unexpected header `{content}`"),
                    })
                }
            });
            continue;
        };
        let expected = if axis == Axis::Imaginary { 2 } else { 3 };
        if fields.len() != expected {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected {expected} columns, found {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<f64> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: format!("`{s}` is not a finite number"),
                })
        };
        let w = parse(fields[0])?;
        if w <= 0.0 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("Omega = {w} must be positive"),
            });
        }
        if let Some(&prev) = omega.last() {
            if w <= prev {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("Omega = {w} does not increase (previous {prev})"),
                });
            }
        }
        let value = if axis == Axis::Imaginary {
            let c = parse(fields[1])?;
            if c < 0.0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("imaginary-axis susceptibility {c} is negative"),
                });
            }
            Complex64::new(c, 0.0)
        } else {
            Complex64::new(parse(fields[1])?, parse(fields[2])?)
        };
        omega.push(w);
        chi.push(value);
    }

    match axis {
        Some(axis) => ChiTable::new(axis, omega, chi),
        None => Ok(ChiTable::empty(Axis::Imaginary)),
    }
}

/// The physical identity of a metal in dimensionless form.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialParams {
    pub name: String,
    /// Plasma frequency ω_p in rad/s.
    pub omega_p: f64,
    /// γ = ω_τ/ω_p
    pub gamma: f64,
    /// v_F/c
    pub v_f_over_c: f64,
    pub chi_ib: Option<Arc<ChiTable>>,
}

pub const PRESET_NAMES: [&str; 3] = ["gold", "gold-force-fit", "potassium"];

const GOLD_OMEGA_P: f64 = 1.37e16;
const GOLD_V_F_CM_S: f64 = 1.4e8;
const POTASSIUM_V_F_CM_S: f64 = 0.85e8;

impl MaterialParams {
    pub fn new(name: impl Into<String>, omega_p: f64, gamma: f64, v_f_over_c: f64) -> Result<Self> {
        if !(omega_p > 0.0 && omega_p.is_finite()) {
            return Err(Error::domain(format!("plasma frequency {omega_p} must be positive")));
        }
        if !(0.0..1.0).contains(&gamma) {
            return Err(Error::domain(format!("gamma = {gamma} must lie in [0, 1)")));
        }
        if !(v_f_over_c > 0.0 && v_f_over_c < 1.0) {
            return Err(Error::domain(format!("v_F/c = {v_f_over_c} must lie in (0, 1)")));
        }
        Ok(MaterialParams {
            name: name.into(),
            omega_p,
            gamma,
            v_f_over_c,
            chi_ib: None,
        })
    }

    /// Builds parameters from a Fermi velocity in cm/s.
    pub fn from_fermi_velocity(name: impl Into<String>, omega_p: f64, gamma: f64, v_f_cm_s: f64) -> Result<Self> {
        Self::new(name, omega_p, gamma, v_f_cm_s * 1e-2 / SPEED_OF_LIGHT)
    }

    pub fn with_chi_table(mut self, table: ChiTable) -> Self {
        self.chi_ib = if table.is_empty() { None } else { Some(Arc::new(table)) };
        self
    }

    pub fn without_chi(&self) -> Self {
        MaterialParams {
            chi_ib: None,
            ..self.clone()
        }
    }

    /// Interband susceptibility at Ω on the given axis; zero without a table.
    pub fn chi(&self, axis: Axis, omega: f64) -> Result<Complex64> {
        match &self.chi_ib {
            None => Ok(Complex64::new(0.0, 0.0)),
            Some(t) if t.axis() == axis => Ok(t.value(omega)),
            Some(t) => Err(Error::domain(format!(
                "susceptibility table is tabulated on the {} axis, requested on the {axis} axis",
                t.axis()
            ))),
        }
    }

    pub fn penetration_depth_nm(&self) -> f64 {
        penetration_depth(self)
    }

    /// v_F in cm/s.
    pub fn fermi_velocity_cm_s(&self) -> f64 {
        self.v_f_over_c * SPEED_OF_LIGHT * 1e2
    }

    /// Reads a flat `key = value` configuration (keys `name`,
    /// `omega_p_rad_s`, `gamma`, `v_f_cm_s`, optional `chi_table`). A relative
    /// `chi_table` path is resolved against `base_dir`.
    pub fn from_config_str(text: &str, base_dir: &Path) -> Result<Self> {
        let mut name = None;
        let mut omega_p = None;
        let mut gamma = None;
        let mut v_f = None;
        let mut chi_path = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected key=value, found `{content}`"),
                });
            };
            let (key, value) = (key.trim(), value.trim());
            let number = || -> Result<f64> {
                value.parse::<f64>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{value}` is not a number for key `{key}`"),
                })
            };
            match key {
                "name" => name = Some(value.to_string()),
                "omega_p_rad_s" => omega_p = Some(number()?),
                "gamma" => gamma = Some(number()?),
                "v_f_cm_s" => v_f = Some(number()?),
                "chi_table" => chi_path = Some(value.to_string()),
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let missing = |k: &str| Error::Parse {
            line: 0,
            message: format!("missing key `{k}`"),
        };
        let material = Self::from_fermi_velocity(
            name.unwrap_or_else(|| "custom".to_string()),
            omega_p.ok_or_else(|| missing("omega_p_rad_s"))?,
            gamma.ok_or_else(|| missing("gamma"))?,
            v_f.ok_or_else(|| missing("v_f_cm_s"))?,
        )?;
        match chi_path {
            Some(p) => {
                let path = base_dir.join(p);
                let file = std::fs::File::open(&path).map_err(|e| {
                    Error::domain(format!("cannot open susceptibility table {}: {e}", path.display()))
                })?;
                Ok(material.with_chi_table(load_chi_table(file)?))
            }
            None => Ok(material),
        }
    }

    pub fn from_config_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::domain(format!("cannot read {}: {e}", path.display())))?;
        Self::from_config_str(&text, path.parent().unwrap_or_else(|| Path::new(".")))
    }
}

/// Built-in parameter sets.
///
/// `gold` is room-temperature gold as used for the impedance curves,
/// `gold-force-fit` differs only in γ = 4·10⁻³ (Drude fit to low-frequency
/// optical data), and `potassium` borrows the gold plasma frequency for
/// dimensionless work.
pub fn preset(name: &str) -> Result<MaterialParams> {
    match name {
        "gold" => MaterialParams::from_fermi_velocity("gold", GOLD_OMEGA_P, 3e-3, GOLD_V_F_CM_S),
        "gold-force-fit" => {
            MaterialParams::from_fermi_velocity("gold-force-fit", GOLD_OMEGA_P, 4e-3, GOLD_V_F_CM_S)
        }
        "potassium" => {
            MaterialParams::from_fermi_velocity("potassium", GOLD_OMEGA_P, 1e-3, POTASSIUM_V_F_CM_S)
        }
        _ => Err(Error::NotFound {
            name: name.to_string(),
            available: PRESET_NAMES.join(", "),
        }),
    }
}

/// δ = c/ω_p in nanometres.
pub fn penetration_depth(m: &MaterialParams) -> f64 {
    SPEED_OF_LIGHT / m.omega_p * NM_PER_M
}

/// Converts an SI frequency (rad/s) and tangential wave number (1/m) to a
/// real-axis response point.
pub fn to_dimensionless(m: &MaterialParams, omega: f64, q: f64) -> Result<ResponsePoint> {
    if omega < 0.0 || q < 0.0 {
        return Err(Error::domain(format!(
            "frequency and wave number must be non-negative, got omega = {omega}, q = {q}"
        )));
    }
    ResponsePoint::real(omega / m.omega_p, SPEED_OF_LIGHT * q / m.omega_p)
}

/// Inverse of [`to_dimensionless`]: (ω in rad/s, q in 1/m).
pub fn to_physical(m: &MaterialParams, point: &ResponsePoint) -> (f64, f64) {
    (point.omega * m.omega_p, point.q * m.omega_p / SPEED_OF_LIGHT)
}
