use serde::Serialize;
use serde_json::{Map, Value};

use crate::args::Format;
use crate::error::CliError;

/// Uniform result of one subcommand.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub verdict: String,
    pub witnesses: Map<String, Value>,
    pub violations: Vec<String>,
    pub items: Vec<Map<String, Value>>,
    #[serde(skip)]
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str, verdict: impl Into<String>) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            verdict: verdict.into(),
            witnesses: Map::new(),
            violations: Vec::new(),
            items: Vec::new(),
            failed: false,
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn witness(mut self, key: &str, value: impl Serialize) -> Self {
        self.witnesses.insert(key.to_string(), to_value(value));
        self
    }

    pub fn violation(mut self, text: impl Into<String>) -> Self {
        self.violations.push(text.into());
        self
    }

    pub fn item(mut self, value: impl Serialize) -> Self {
        self.items.push(to_object(value));
        self
    }

    pub fn items<I, T>(mut self, values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Serialize,
    {
        self.items.extend(values.into_iter().map(to_object));
        self
    }

    /// Marks the report as a violated check; the process exits with 1.
    pub fn fail_if(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(self)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => self.render_csv(),
            Format::Table => Ok(self.render_table().into_bytes()),
        }
    }

    fn render_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        if self.items.is_empty() {
            let mut row = Map::new();
            row.insert("command".into(), Value::String(self.command.clone()));
            row.insert("verdict".into(), Value::String(self.verdict.clone()));
            row.extend(self.inputs.clone());
            row.extend(self.witnesses.clone());
            writer.write_record(row.keys())?;
            writer.write_record(row.values().map(cell))?;
        } else {
            let header = columns(&self.items);
            writer.write_record(&header)?;
            for item in &self.items {
                writer.write_record(
                    header
                        .iter()
                        .map(|h| item.get(h).map(cell).unwrap_or_default()),
                )?;
            }
        }
        writer.flush()?;
        writer
            .into_inner()
            .map_err(|e| CliError::Io(e.into_error()))
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{}: {}\n", self.command, self.verdict));
        for (section, map) in [("inputs", &self.inputs), ("witnesses", &self.witnesses)] {
            if map.is_empty() {
                continue;
            }
            out.push_str(&format!("{section}:\n"));
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, v) in map {
                out.push_str(&format!("  {k:<width$}  {}\n", cell(v)));
            }
        }
        if !self.violations.is_empty() {
            out.push_str("violations:\n");
            for v in &self.violations {
                out.push_str(&format!("  - {v}\n"));
            }
        }
        if !self.items.is_empty() {
            let header = columns(&self.items);
            let rows: Vec<Vec<String>> = self
                .items
                .iter()
                .map(|item| {
                    header
                        .iter()
                        .map(|h| item.get(h).map(cell).unwrap_or_default())
                        .collect()
                })
                .collect();
            let widths: Vec<usize> = header
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    rows.iter()
                        .map(|r| r[i].len())
                        .chain([h.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect();
                format!("  {}\n", padded.join("  ").trim_end())
            };
            out.push_str(&format!("items ({}):\n", self.items.len()));
            out.push_str(&line(&header));
            for row in &rows {
                out.push_str(&line(row));
            }
        }
        out
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report values serialize to JSON")
}

fn to_object(value: impl Serialize) -> Map<String, Value> {
    match to_value(value) {
        Value::Object(map) => map,
        other => {
            let mut map = Map::new();
            map.insert("value".into(), other);
            map
        }
    }
}

/// Column order: first appearance across items.
fn columns(items: &[Map<String, Value>]) -> Vec<String> {
    let mut header: Vec<String> = Vec::new();
    for item in items {
        for key in item.keys() {
            if !header.contains(key) {
                header.push(key.clone());
            }
        }
    }
    header
}

fn cell(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) if xs.iter().all(|x| x.is_number()) => xs
            .iter()
            .map(Value::to_string)
            .collect::<Vec<_>>()
            .join(","),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        Report::new("demo", "pass")
            .input("d", 8)
            .witness("a", 1)
            .items([json!({"x": 1, "y": [1, 2]}), json!({"x": 2, "z": "q"})])
    }

    #[test]
    fn json_has_fixed_field_order_and_one_newline() {
        let out = String::from_utf8(sample().render(Format::Json).unwrap()).unwrap();
        let keys = [
            "\"command\"",
            "\"inputs\"",
            "\"verdict\"",
            "\"witnesses\"",
            "\"violations\"",
            "\"items\"",
        ];
        let positions: Vec<usize> = keys.iter().map(|k| out.find(k).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(out.ends_with("}\n") && !out.ends_with("\n\n"));
        assert!(!out.contains("failed"));
    }

    #[test]
    fn csv_unions_columns() {
        let out = String::from_utf8(sample().render(Format::Csv).unwrap()).unwrap();
        assert_eq!(out, "x,y,z\n1,\"1,2\",\n2,,q\n");
    }

    #[test]
    fn csv_without_items_is_one_summary_row() {
        let out = String::from_utf8(
            Report::new("demo", "ok")
                .input("n", 3)
                .render(Format::Csv)
                .unwrap(),
        )
        .unwrap();
        assert_eq!(out, "command,verdict,n\ndemo,ok,3\n");
    }

    #[test]
    fn table_lists_sections() {
        let out = sample().fail_if(true).violation("bad").render_table();
        assert!(out.starts_with("demo: pass\n"));
        assert!(out.contains("violations:\n  - bad\n"));
        assert!(out.contains("items (2):"));
    }
}
