//! On-disk formats: JSON for tables and payoff matrices.
//!
//! A table file is a single object `{"p": [p1, ..., p16], "meta": {...}}`
//! with `meta` optional and free-form. A game file is `{"a": [a1, a2, a3,
//! a4]}`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{JointProbabilityTable, PayoffMatrix};

#[derive(Serialize, Deserialize)]
struct TableFile {
    p: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
}

#[derive(Serialize, Deserialize)]
struct GameFile {
    a: Vec<f64>,
}

pub fn read_table(path: &Path) -> Result<JointProbabilityTable> {
    let text = fs::read_to_string(path)?;
    let file: TableFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let entries: [f64; 16] = file.p.as_slice().try_into().map_err(|_| {
        Error::Parse(format!(
            "{}: key \"p\" must hold exactly 16 numbers, got {}",
            path.display(),
            file.p.len()
        ))
    })?;
    JointProbabilityTable::from_entries(entries)
}

pub fn write_table(
    path: &Path,
    table: &JointProbabilityTable,
    meta: Option<serde_json::Value>,
) -> Result<()> {
    let file = TableFile {
        p: table.entries().to_vec(),
        meta,
    };
    let text = serde_json::to_string_pretty(&file).expect("table files always serialize");
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_game(path: &Path) -> Result<PayoffMatrix> {
    let text = fs::read_to_string(path)?;
    let file: GameFile =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let a: [f64; 4] = file.a.as_slice().try_into().map_err(|_| {
        Error::Parse(format!(
            "{}: key \"a\" must hold exactly 4 numbers, got {}",
            path.display(),
            file.a.len()
        ))
    })?;
    PayoffMatrix::new(a[0], a[1], a[2], a[3])
}

pub fn write_game(path: &Path, m: &PayoffMatrix) -> Result<()> {
    let file = GameFile {
        a: vec![m.a1, m.a2, m.a3, m.a4],
    };
    let text = serde_json::to_string_pretty(&file).expect("game files always serialize");
    fs::write(path, text + "\n")?;
    Ok(())
}
