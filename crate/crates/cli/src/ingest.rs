// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

//! Asymmetry datasets from CSV with header `t_l,t_r,asym,sigma`.

use std::path::Path;

use kaonlab::decoherence::{AsymmetryDataset, AsymmetryRow};

use crate::error::{CliError, CliResult};

pub const COLUMNS: [&str; 4] = ["t_l", "t_r", "asym", "sigma"];

pub fn ingest_csv(path: &Path) -> CliResult<AsymmetryDataset> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::io(format!("opening {}", path.display()), e))?;
    ingest_reader(file, &path.display().to_string())
}

pub fn ingest_reader<R: std::io::Read>(reader: R, name: &str) -> CliResult<AsymmetryDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Row {
            path: name.to_string(),
            line: 1,
            msg: e.to_string(),
        })?
        .clone();
    let mut index = [0usize; 4];
    for (slot, col) in index.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == col)
            .ok_or_else(|| CliError::Schema {
                path: name.to_string(),
                column: col.to_string(),
            })?;
    }

    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| CliError::Row {
            path: name.to_string(),
            line: e.position().map(|p| p.line()).unwrap_or(0),
            msg: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row_err = |msg: String| CliError::Row {
            path: name.to_string(),
            line,
            msg,
        };
        let mut v = [0.0f64; 4];
        for (k, (&i, col)) in index.iter().zip(COLUMNS).enumerate() {
            let field = record.get(i).unwrap_or("");
            v[k] = field
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| row_err(format!("{col} is not a finite number: '{field}'")))?;
        }
        let [t_l, t_r, asym, sigma] = v;
        if t_l < 0.0 || t_r < 0.0 {
            return Err(row_err("times must be >= 0".into()));
        }
        if sigma <= 0.0 {
            return Err(row_err(format!("sigma must be > 0, got {sigma}")));
        }
        rows.push(AsymmetryRow {
            t_l,
            t_r,
            asym,
            sigma,
        });
    }
    if rows.is_empty() {
        return Err(CliError::Row {
            path: name.to_string(),
            line: 2,
            msg: "no data rows".into(),
        });
    }
    Ok(AsymmetryDataset::new(rows, name)?)
}
