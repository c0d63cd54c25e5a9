//! Table rendering. CSV uses a fixed header row and stable column order;
//! floats print through Rust's Debug formatter, the shortest representation
//! that round-trips (so 1.0 prints as `1.0`, not `1`). 128-bit integers are
//! decimal strings in both formats — JSON numbers cannot carry tau exactly.

use crate::config::OutputFormat;

#[derive(Debug, Clone)]
pub enum Cell {
    UInt(u64),
    Int(i128),
    Float(f64),
    OptFloat(Option<f64>),
    Bool(bool),
    Str(String),
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut obj = serde_json::Map::new();
            for (name, cell) in self.columns.iter().zip(row) {
                obj.insert((*name).to_string(), json_cell(cell));
            }
            rows.push(serde_json::Value::Object(obj));
        }
        let mut text =
            serde_json::to_string_pretty(&serde_json::Value::Array(rows)).expect("finite values");
        text.push('\n');
        text
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::UInt(v) => v.to_string(),
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => format!("{v:?}"),
        Cell::OptFloat(Some(v)) => format!("{v:?}"),
        Cell::OptFloat(None) => String::new(),
        Cell::Bool(v) => v.to_string(),
        Cell::Str(v) => v.clone(),
    }
}

fn json_cell(cell: &Cell) -> serde_json::Value {
    match cell {
        Cell::UInt(v) => serde_json::Value::from(*v),
        Cell::Int(v) => serde_json::Value::from(v.to_string()),
        Cell::Float(v) => serde_json::Value::from(*v),
        Cell::OptFloat(Some(v)) => serde_json::Value::from(*v),
        Cell::OptFloat(None) => serde_json::Value::Null,
        Cell::Bool(v) => serde_json::Value::from(*v),
        Cell::Str(v) => serde_json::Value::from(v.clone()),
    }
}
