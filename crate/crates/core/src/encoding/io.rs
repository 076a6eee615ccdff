use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Reads a signal: one value per line, or CSV with a `value` column.
pub fn read_signal(path: &Path) -> Result<Vec<f64>> {
    let text = fs::read_to_string(path)?;
    parse_signal(&text)
}

pub fn parse_signal(text: &str) -> Result<Vec<f64>> {
    let first = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    if first.contains(',') || first.trim() == "value" {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let col = rdr
            .headers()?
            .iter()
            .position(|h| h == "value")
            .ok_or_else(|| Error::Input("CSV signal has no `value` column".into()))?;
        let mut out = Vec::new();
        for (row, rec) in rdr.records().enumerate() {
            let rec = rec?;
            let field = rec.get(col).unwrap_or("");
            out.push(field.parse::<f64>().map_err(|_| {
                Error::Input(format!("row {}: cannot parse `{field}` as a number", row + 2))
            })?);
        }
        return Ok(out);
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(n, l)| {
            l.trim()
                .parse::<f64>()
                .map_err(|_| Error::Input(format!("line {}: cannot parse `{}` as a number", n + 1, l.trim())))
        })
        .collect()
}

/// Writes one value per line using shortest round-trip formatting.
pub fn write_signal(path: &Path, values: &[f64]) -> Result<()> {
    let mut s = String::with_capacity(values.len() * 20);
    for v in values {
        s.push_str(&v.to_string());
        s.push('\n');
    }
    fs::write(path, s)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_and_csv() {
        assert_eq!(parse_signal("1\n2.5\n\n-3\n").unwrap(), vec![1.0, 2.5, -3.0]);
        assert_eq!(parse_signal("t,value\n0,1.5\n1,2\n").unwrap(), vec![1.5, 2.0]);
        assert_eq!(parse_signal("value\n4\n").unwrap(), vec![4.0]);
        assert!(parse_signal("t,x\n0,1\n").is_err());
        assert!(parse_signal("1\nabc\n").is_err());
    }
}
