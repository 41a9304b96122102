use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Rows printed in text mode; JSON carries the same data under `results`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TextTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new(header: &[&str]) -> Self {
        TextTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, out: &mut String) {
        let cols = self.header.len();
        let mut width = vec![0; cols];
        for row in std::iter::once(&self.header).chain(&self.rows) {
            for (k, cell) in row.iter().enumerate().take(cols) {
                width[k] = width[k].max(cell.chars().count());
            }
        }
        let line = |row: &Vec<String>, out: &mut String| {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(k, c)| format!("{c:<w$}", w = width[k]))
                .collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        };
        line(&self.header, out);
        let rule: Vec<String> = width.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for row in &self.rows {
            line(row, out);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Value,
    pub checks: Vec<Check>,
    pub table: TextTable,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            results: Value::Null,
            checks: Vec::new(),
            table: TextTable::default(),
            notes: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                })
            })
            .collect();
        serde_json::json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "results": self.results,
            "checks": checks,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.inputs {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("  {k}: {shown}\n"));
        }
        if !self.table.header.is_empty() {
            out.push('\n');
            self.table.render(&mut out);
        }
        if !self.notes.is_empty() {
            out.push('\n');
            for n in &self.notes {
                out.push_str(n);
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            out.push_str("\nchecks:\n");
            for c in &self.checks {
                let tag = if c.passed { "pass" } else { "FAIL" };
                out.push_str(&format!("  [{tag}] {}: {}\n", c.name, c.detail));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keys_are_sorted() {
        let mut r = Report::new("demo");
        r.input("zeta", 1);
        r.input("alpha", 2);
        r.results = serde_json::json!({"b": 1, "a": 2});
        let s = r.render_json();
        let top: Vec<usize> = ["\"checks\"", "\"command\"", "\"inputs\"", "\"results\""]
            .iter()
            .map(|k| s.find(k).unwrap())
            .collect();
        assert!(top.windows(2).all(|w| w[0] < w[1]));
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
    }

    #[test]
    fn text_columns_align() {
        let mut r = Report::new("demo");
        r.table = TextTable::new(&["no", "type"]);
        r.table.push(vec!["1".into(), "(3,3)".into()]);
        r.table.push(vec!["10".into(), "(3,0)+(0,3)".into()]);
        let text = r.render_text();
        assert!(text.contains("no  type\n--  -----------\n1   (3,3)\n10  (3,0)+(0,3)\n"));
    }
}
