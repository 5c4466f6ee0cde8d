//! Text, CSV and JSON rendering. Output depends only on the values, never
//! on locale, thread count or timing.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Number, Value};

use lucky_core::oracle::cache::GENERATOR_VERSION;
use lucky_core::{ExactInt, Variant};

use crate::data::Cell;
use crate::{Format, Source};

/// Header facts shared by every table.
pub struct Meta<'a> {
    pub kind: &'a str,
    pub n: usize,
    pub variant: Variant,
    pub source: Source,
}

impl Meta<'_> {
    fn comment(&self) -> String {
        format!(
            "# {} n={} variant={} source={}\n",
            self.kind,
            self.n,
            self.variant,
            source_name(self.source)
        )
    }

    fn json_object(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind));
        m.insert("n".into(), json!(self.n));
        m.insert("variant".into(), json!(self.variant.name()));
        m.insert("generator_version".into(), json!(GENERATOR_VERSION));
        m.insert("source".into(), json!(source_name(self.source)));
        m
    }
}

pub fn source_name(s: Source) -> &'static str {
    match s {
        Source::Oracle => "oracle",
        Source::Closed => "closed",
        Source::Both => "both",
    }
}

/// Exact integer as a JSON number of any size.
pub fn json_int(v: &ExactInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integer is a JSON number"))
}

fn json_cell(c: &Cell) -> Value {
    c.value.as_ref().map_or(Value::Null, json_int)
}

fn text_cell(c: &Cell, provenance: bool) -> String {
    if provenance {
        format!("{c}[{}]", c.tag())
    } else {
        c.to_string()
    }
}

fn join_cells(cells: &[Cell], sep: &str, provenance: bool) -> String {
    cells
        .iter()
        .map(|c| text_cell(c, provenance))
        .collect::<Vec<_>>()
        .join(sep)
}

/// `rows[i-1][j-1]`
pub fn matrix(meta: &Meta, rows: &[Vec<Cell>], format: Format, provenance: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            out.push_str(&meta.comment());
            for row in rows {
                out.push_str(&join_cells(row, " ", provenance));
                out.push('\n');
            }
        }
        Format::Csv => {
            let header: Vec<String> = (1..=meta.n).map(|j| format!("j{j}")).collect();
            let _ = writeln!(out, "i,{}", header.join(","));
            for (i, row) in rows.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i + 1, join_cells(row, ",", provenance));
            }
        }
        Format::Json => {
            let mut m = meta.json_object();
            let values: Vec<Value> = rows
                .iter()
                .map(|r| Value::Array(r.iter().map(json_cell).collect()))
                .collect();
            m.insert("rows".into(), Value::Array(values));
            if provenance {
                let tags: Vec<Value> = rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(|c| json!(c.tag())).collect()))
                    .collect();
                m.insert("provenance".into(), Value::Array(tags));
            }
            out = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
            out.push('\n');
        }
    }
    out
}

/// A single row indexed `index_name = 1..=n`.
pub fn vector(meta: &Meta, index_name: &str, cells: &[Cell], format: Format, provenance: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Text => {
            out.push_str(&meta.comment());
            out.push_str(&join_cells(cells, " ", provenance));
            out.push('\n');
        }
        Format::Csv => {
            let _ = writeln!(out, "{index_name},count");
            for (k, c) in cells.iter().enumerate() {
                let _ = writeln!(out, "{},{}", k + 1, text_cell(c, provenance));
            }
        }
        Format::Json => {
            let mut m = meta.json_object();
            m.insert("index".into(), json!(index_name));
            m.insert("values".into(), Value::Array(cells.iter().map(json_cell).collect()));
            if provenance {
                let tags = cells.iter().map(|c| json!(c.tag())).collect();
                m.insert("provenance".into(), Value::Array(tags));
            }
            out = serde_json::to_string_pretty(&Value::Object(m)).expect("serializable");
            out.push('\n');
        }
    }
    out
}
