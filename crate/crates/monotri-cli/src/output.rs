//! Flat key-value output records with json/csv/md renderings.
//!
//! Integers are exact decimal strings, reals are 12-significant-digit
//! decimals, and enum-like fields are kebab-case tokens, so CSV needs no
//! quoting and JSON round-trips losslessly. Machine-readable output is
//! byte-identical across runs and worker counts; timing goes to stderr.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            other => Err(format!("unknown format {other:?} (expected json, csv or md)")),
        }
    }
}

/// An ordered flat record.
#[derive(Clone, Debug, Default)]
pub struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn push(&mut self, key: &str, value: impl Into<String>) {
        self.fields.push((key.to_string(), value.into()));
    }

    pub fn push_real(&mut self, key: &str, value: f64) {
        self.push(key, fmt_real(value));
    }

    pub fn fields(&self) -> &[(String, String)] {
        &self.fields
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = String::from("{");
                for (i, (k, v)) in self.fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    let _ = write!(out, "{}:{}", json_string(k), json_string(v));
                }
                out.push('}');
                out
            }
            Format::Csv => {
                let header: Vec<&str> = self.fields.iter().map(|(k, _)| k.as_str()).collect();
                let values: Vec<&str> = self.fields.iter().map(|(_, v)| v.as_str()).collect();
                format!("{}\n{}\n", header.join(","), values.join(","))
            }
            Format::Md => {
                let mut out = String::new();
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.fields {
                    let _ = writeln!(out, "{k:width$} = {v}");
                }
                out
            }
        }
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Fixed 12-significant-digit decimal rendering.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".to_string();
    }
    if !v.is_finite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exp = v.abs().log10().floor() as i32;
    let prec = (11 - exp).max(0) as usize;
    format!("{v:.prec$}")
}

/// FNV-1a over the canonical config string; stable across runs.
pub fn fingerprint(canonical: &str) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in canonical.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    format!("{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting() {
        assert_eq!(fmt_real(1613.171), "1613.17100000");
        assert_eq!(fmt_real(0.5307118204720448), "0.530711820472");
        assert_eq!(fmt_real(607927.1018540267), "607927.101854");
    }

    #[test]
    fn csv_has_header_and_row() {
        let mut r = Record::new();
        r.push("a", "1");
        r.push("b", "x");
        assert_eq!(r.render(Format::Csv), "a,b\n1,x\n");
    }
}
