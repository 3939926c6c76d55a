//! Tabular output as CSV or JSON. Exact values are carried as strings in
//! their parseable display form; decimals are renderings only.

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Table {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().cloned()).collect::<Map<_, _>>()))
            .collect();
        Value::Array(rows)
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

/// One CSV block per table, each preceded by a `# name` line when there is
/// more than one table.
pub fn render(tables: &[Table], format: Format) -> String {
    match format {
        Format::Json => {
            let obj: Map<String, Value> = tables.iter().map(|t| (t.name.clone(), t.to_json())).collect();
            serde_json::to_string_pretty(&Value::Object(obj)).expect("json values serialize") + "\n"
        }
        Format::Csv => {
            let mut out = String::new();
            for t in tables {
                if tables.len() > 1 {
                    out.push_str(&format!("# {}\n", t.name));
                }
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.columns).expect("in-memory write");
                for r in &t.rows {
                    w.write_record(r.iter().map(cell)).expect("in-memory write");
                }
                out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
            }
            out
        }
    }
}
