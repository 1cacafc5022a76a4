use std::fmt::Display;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

/// CSV text with a `#` comment header. Floats go through `Display`, which
/// prints the shortest string that round-trips.
pub struct Csv {
    text: String,
}

impl Csv {
    pub fn new(command: &str) -> Self {
        Self { text: format!("# selfrwa {command}\n") }
    }

    pub fn param(&mut self, key: &str, value: impl Display) {
        let _ = writeln!(self.text, "# {key}={value}");
    }

    pub fn comment(&mut self, line: impl Display) {
        let _ = writeln!(self.text, "# {line}");
    }

    pub fn columns(&mut self, names: &[&str]) {
        self.text.push_str(&names.join(","));
        self.text.push('\n');
    }

    pub fn row(&mut self, fields: &[&dyn Display]) {
        let cells: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn push_raw(&mut self, block: &str) {
        self.text.push_str(block);
    }

    pub fn write(&self, out: Option<&Path>) -> std::io::Result<()> {
        match out {
            Some(path) => std::fs::write(path, &self.text),
            None => std::io::stdout().lock().write_all(self.text.as_bytes()),
        }
    }
}

pub fn list(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

/// `count` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let last = (count - 1) as f64;
    (0..count).map(|i| lo + (hi - lo) * i as f64 / last).collect()
}
