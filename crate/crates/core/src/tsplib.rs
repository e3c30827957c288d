//! TSPLIB reader (EUC_2D subset) and the symmetric cost matrix.
//!
//! Cities are labelled `1..=n` in file order. The index column of
//! `NODE_COORD_SECTION` is checked for presence only, so files with
//! nonconsecutive indices load fine.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance convention used when building the cost matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// TSPLIB `nint`: `(int)(d + 0.5)`.
    #[default]
    Nint,
    Exact,
}

impl FromStr for Rounding {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nint" => Ok(Rounding::Nint),
            "exact" => Ok(Rounding::Exact),
            other => Err(Error::config(format!(
                "unknown rounding `{other}` (expected nint or exact)"
            ))),
        }
    }
}

/// Dense symmetric `n × n` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cost between 0-based indices.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Builds a matrix from explicit rows, checking symmetry, a zero diagonal
    /// and non-negative finite entries.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n < 3 {
            return Err(Error::InvalidInstance(format!(
                "need at least 3 cities, got {n}"
            )));
        }
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        let m = CostMatrix { n, data };
        for i in 0..n {
            if m.at(i, i) != 0.0 {
                return Err(Error::InvalidInstance(format!(
                    "non-zero diagonal at city {}",
                    i + 1
                )));
            }
            for j in 0..n {
                let c = m.at(i, j);
                if !c.is_finite() || c < 0.0 {
                    return Err(Error::InvalidInstance(format!(
                        "cost between {} and {} is {c}",
                        i + 1,
                        j + 1
                    )));
                }
                if c != m.at(j, i) {
                    return Err(Error::InvalidInstance(format!(
                        "asymmetric cost between {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(m)
    }
}

/// Euclidean distance matrix over `coords`.
pub fn build_cost_matrix(coords: &[(f64, f64)], rounding: Rounding) -> Result<CostMatrix> {
    let n = coords.len();
    if n < 3 {
        return Err(Error::InvalidInstance(format!(
            "need at least 3 cities, got {n}"
        )));
    }
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let (xi, yi) = coords[i];
            let (xj, yj) = coords[j];
            let d = (xi - xj).hypot(yi - yj);
            let d = match rounding {
                Rounding::Nint => (d + 0.5).floor(),
                Rounding::Exact => d,
            };
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(CostMatrix { n, data })
}

/// A symmetric TSP instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    coords: Vec<(f64, f64)>,
    rounding: Rounding,
    cost: CostMatrix,
}

impl Instance {
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<(f64, f64)>,
        rounding: Rounding,
    ) -> Result<Self> {
        let cost = build_cost_matrix(&coords, rounding)?;
        Ok(Instance {
            name: name.into(),
            coords,
            rounding,
            cost,
        })
    }

    /// Instance given directly by its cost matrix. It has no coordinates
    /// and cannot be written back as EUC_2D.
    pub fn from_cost_matrix(name: impl Into<String>, rows: &[Vec<f64>]) -> Result<Self> {
        Ok(Instance {
            name: name.into(),
            coords: Vec::new(),
            rounding: Rounding::Exact,
            cost: CostMatrix::from_rows(rows)?,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.cost.n
    }

    /// Coordinates in label order; empty for matrix-defined instances.
    pub fn coords(&self) -> &[(f64, f64)] {
        &self.coords
    }

    pub fn rounding(&self) -> Rounding {
        self.rounding
    }

    pub fn cost_matrix(&self) -> &CostMatrix {
        &self.cost
    }

    /// Cost between two 1-based city labels.
    #[inline]
    pub fn cost(&self, a: u32, b: u32) -> f64 {
        self.cost.at(a as usize - 1, b as usize - 1)
    }

    /// Serializes back to TSPLIB text. Fails for matrix-defined instances.
    pub fn to_tsplib(&self) -> Result<String> {
        if self.coords.is_empty() {
            return Err(Error::InvalidInstance(format!(
                "instance `{}` has no coordinates to serialize",
                self.name
            )));
        }
        let mut out = String::new();
        let _ = writeln!(out, "NAME : {}", self.name);
        let _ = writeln!(out, "TYPE : TSP");
        let _ = writeln!(out, "DIMENSION : {}", self.n());
        let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EUC_2D");
        let _ = writeln!(out, "NODE_COORD_SECTION");
        for (i, (x, y)) in self.coords.iter().enumerate() {
            // `{:?}` on f64 is the shortest round-tripping representation.
            let _ = writeln!(out, "{} {:?} {:?}", i + 1, x, y);
        }
        out.push_str("EOF\n");
        Ok(out)
    }
}

/// Parses TSPLIB text into an [`Instance`].
pub fn parse_instance(text: &str, rounding: Rounding) -> Result<Instance> {
    let mut name: Option<String> = None;
    let mut dimension: Option<(usize, usize)> = None;
    let mut weight_type_seen = false;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut coords = Vec::new();
    let mut section_line = None;

    for (lineno, line) in lines.by_ref() {
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        if line.starts_with("NODE_COORD_SECTION") {
            section_line = Some(lineno);
            break;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::parse(
                lineno,
                format!("malformed header line `{line}`"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        match key {
            "NAME" => name = Some(value.to_string()),
            "TYPE" => {
                if value != "TSP" {
                    return Err(Error::parse(
                        lineno,
                        format!("unsupported problem type {value}"),
                    ));
                }
            }
            "DIMENSION" => {
                let n = value
                    .parse::<usize>()
                    .map_err(|_| Error::parse(lineno, format!("invalid DIMENSION `{value}`")))?;
                dimension = Some((n, lineno));
            }
            "EDGE_WEIGHT_TYPE" => {
                if value != "EUC_2D" {
                    return Err(Error::parse(
                        lineno,
                        format!("unsupported edge weight type {value}"),
                    ));
                }
                weight_type_seen = true;
            }
            "COMMENT" | "DISPLAY_DATA_TYPE" | "NODE_COORD_TYPE" => {}
            other if other.ends_with("_SECTION") => {
                return Err(Error::parse(lineno, format!("unsupported section {other}")));
            }
            other => log::debug!("line {lineno}: ignoring header key {other}"),
        }
    }

    let Some(section_line) = section_line else {
        return Err(Error::parse(0, "missing NODE_COORD_SECTION"));
    };
    let Some((n, dim_line)) = dimension else {
        return Err(Error::parse(
            section_line,
            "missing DIMENSION before NODE_COORD_SECTION",
        ));
    };
    if !weight_type_seen {
        return Err(Error::parse(
            section_line,
            "missing EDGE_WEIGHT_TYPE before NODE_COORD_SECTION",
        ));
    }
    if n < 3 {
        return Err(Error::parse(
            dim_line,
            format!("DIMENSION must be at least 3, got {n}"),
        ));
    }

    let mut last_line = section_line;
    for (lineno, line) in lines.by_ref() {
        last_line = lineno;
        if line.is_empty() {
            continue;
        }
        if line == "EOF" {
            break;
        }
        let mut fields = line.split_whitespace();
        let (Some(index), Some(x), Some(y), None) =
            (fields.next(), fields.next(), fields.next(), fields.next())
        else {
            return Err(Error::parse(
                lineno,
                format!("expected `index x y`, got `{line}`"),
            ));
        };
        if index.parse::<u64>().is_err() {
            return Err(Error::parse(
                lineno,
                format!("invalid node index `{index}`"),
            ));
        }
        let parse_coord = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(lineno, format!("invalid coordinate `{s}`")))
        };
        if coords.len() == n {
            return Err(Error::parse(
                lineno,
                format!("coordinate count mismatch: more than DIMENSION = {n} entries"),
            ));
        }
        coords.push((parse_coord(x)?, parse_coord(y)?));
    }
    if coords.len() != n {
        return Err(Error::parse(
            last_line,
            format!(
                "coordinate count mismatch: DIMENSION = {n} but {} coordinates",
                coords.len()
            ),
        ));
    }

    Instance::from_coords(name.unwrap_or_else(|| "unnamed".into()), coords, rounding)
}

/// Reads and parses a TSPLIB file. A missing NAME falls back to the file stem.
pub fn load_instance(path: impl AsRef<Path>, rounding: Rounding) -> Result<Instance> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut instance = parse_instance(&text, rounding)?;
    if instance.name == "unnamed" {
        if let Some(stem) = path.file_stem() {
            instance.name = stem.to_string_lossy().into_owned();
        }
    }
    Ok(instance)
}
