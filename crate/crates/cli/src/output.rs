use serde::Serialize;
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};

use crate::CliError;

/// A CSV table written by a command; its columns and version go to the metadata file.
pub struct Table {
    pub file: &'static str,
    pub version: u32,
    pub columns: &'static str,
}

pub const RECORDS: Table = Table { file: "records.csv", version: 1, columns: "function_id,lhs,rhs,ratio,notes" };
pub const PROBE_TRACE: Table = Table { file: "trace.csv", version: 1, columns: "restart,evaluation,ratio,best" };
pub const NORM_TRACE: Table = Table { file: "trace.csv", version: 1, columns: "t,h1_norm,dt_norm" };
pub const SNAPSHOTS: Table = Table { file: "snapshots.csv", version: 1, columns: "t,x,u" };
pub const SELFTEST: Table = Table { file: "selftest.csv", version: 1, columns: "check,setting,function_id,value,tolerance,pass" };
pub const CORPUS: Table = Table { file: "corpus.csv", version: 1, columns: "index,id,family,params" };

pub struct Out {
    pub dir: PathBuf,
    pub tables: Vec<&'static Table>,
}

impl Out {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir).map_err(|e| CliError::Schema(format!("output directory {}: {e}", dir.display())))?;
        Ok(Out { dir: dir.to_path_buf(), tables: Vec::new() })
    }

    fn write(&self, name: &str, body: &str) -> Result<(), CliError> {
        let p = self.dir.join(name);
        fs::write(&p, body).map_err(|e| CliError::Schema(format!("cannot write {}: {e}", p.display())))
    }

    pub fn table(&mut self, t: &'static Table, body: &str) -> Result<(), CliError> {
        debug_assert!(body.starts_with(t.columns));
        self.tables.push(t);
        self.write(t.file, body)
    }

    pub fn json(&self, name: &str, v: &impl Serialize) -> Result<(), CliError> {
        let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Numerical(e.to_string()))?;
        self.write(name, &(s + "\n"))
    }

    pub fn metadata(&self, run: Value) -> Result<(), CliError> {
        let tables: serde_json::Map<String, Value> = self
            .tables
            .iter()
            .map(|t| (t.file.to_string(), json!({ "version": t.version, "columns": t.columns.split(',').collect::<Vec<_>>() })))
            .collect();
        let mut m = run;
        m["tool"] = json!(env!("CARGO_PKG_NAME"));
        m["version"] = json!(env!("CARGO_PKG_VERSION"));
        m["csv"] = Value::Object(tables);
        self.json("metadata.json", &m)
    }
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}
