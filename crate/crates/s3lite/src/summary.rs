//! Data-frame summary statistics: type-7 quantiles, the six-statistic
//! column summary at 4 significant digits, and value counts for string
//! columns.

use indexmap::IndexMap;

use crate::error::RuntimeError;
use crate::printer::signif;
use crate::value::{Payload, Value};

/// Type-7 quantile: sort ascending, h = (n-1)p, linear interpolation
/// between the order statistics either side of h.
pub fn quantile_type7(v: &[f64], p: f64) -> Result<f64, RuntimeError> {
    if v.is_empty() {
        return Err(RuntimeError::new("quantile of an empty vector"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(RuntimeError::new("quantile probability must be in [0, 1]"));
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = sorted.len();
    let h = (n as f64 - 1.0) * p;
    let lo = h.floor() as usize;
    let frac = h - h.floor();
    if frac == 0.0 || lo + 1 >= n {
        Ok(sorted[lo.min(n - 1)])
    } else {
        Ok(sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]))
    }
}

const STAT_LABELS: [&str; 6] = ["Min.   ", "1st Qu.", "Median ", "Mean   ", "3rd Qu.", "Max.   "];

fn six_stats(v: &[f64]) -> Result<[f64; 6], RuntimeError> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    Ok([
        quantile_type7(v, 0.0)?,
        quantile_type7(v, 0.25)?,
        quantile_type7(v, 0.5)?,
        mean,
        quantile_type7(v, 0.75)?,
        quantile_type7(v, 1.0)?,
    ])
}

/// Decimal places a value needs once rounded to 4 significant digits.
fn decimals_needed(x: f64) -> usize {
    let s = format!("{x}");
    match s.find('.') {
        Some(i) => s.len() - i - 1,
        None => 0,
    }
}

fn format_numeric_column(v: &[f64]) -> Result<Vec<String>, RuntimeError> {
    let stats = six_stats(v)?;
    let rounded: Vec<f64> = stats.iter().map(|x| signif(*x, 4)).collect();
    let decimals = rounded.iter().map(|x| decimals_needed(*x)).max().unwrap();
    Ok(STAT_LABELS
        .iter()
        .zip(rounded.iter())
        .map(|(label, x)| format!("{label}:{x:.decimals$}"))
        .collect())
}

fn format_string_column(v: &[String]) -> Vec<String> {
    let mut counts: Vec<(String, usize)> = Vec::new();
    for s in v {
        match counts.iter_mut().find(|(name, _)| name == s) {
            Some((_, n)) => *n += 1,
            None => counts.push((s.clone(), 1)),
        }
    }
    counts.sort_by(|a, b| a.0.cmp(&b.0));
    let width = counts.iter().map(|(name, _)| name.len()).max().unwrap_or(0);
    counts
        .into_iter()
        .map(|(name, n)| format!("{name:<width$}:{n}"))
        .collect()
}

/// Builds the summary value for a data frame: a record mapping each
/// column name to its formatted statistic lines, classed "summary_table".
pub fn summarize_data_frame(df: &Value) -> Result<Value, RuntimeError> {
    let fields = df
        .as_record()
        .map_err(|_| RuntimeError::new("summary.data_frame expects a data frame"))?;
    if fields.is_empty() {
        return Err(RuntimeError::new("cannot summarize an empty data frame"));
    }
    let mut out = IndexMap::new();
    for (name, col) in fields {
        let entries = match &col.payload {
            Payload::Numeric(v) => {
                if v.is_empty() {
                    return Err(RuntimeError::new("cannot summarize an empty column"));
                }
                format_numeric_column(v)?
            }
            Payload::Strings(v) => format_string_column(v),
            _ => {
                return Err(RuntimeError::new(format!(
                    "column '{name}' is not a vector"
                )))
            }
        };
        out.insert(name.clone(), Value::strings(entries));
    }
    Value::record(out).with_class(vec!["summary_table".to_string()])
}

/// Renders a summary table, columns side by side in blocks of four.
pub fn render_summary_table(table: &Value) -> Result<String, RuntimeError> {
    let fields = table.as_record()?;
    let mut lines: Vec<String> = Vec::new();
    let cols: Vec<(&String, Vec<&str>)> = fields
        .iter()
        .map(|(name, v)| {
            let entries = match &v.payload {
                Payload::Strings(e) => e.iter().map(|s| s.as_str()).collect(),
                _ => Vec::new(),
            };
            (name, entries)
        })
        .collect();
    for block in cols.chunks(4) {
        let widths: Vec<usize> = block
            .iter()
            .map(|(name, entries)| {
                entries
                    .iter()
                    .map(|e| e.len())
                    .chain(std::iter::once(name.len()))
                    .max()
                    .unwrap()
            })
            .collect();
        let mut header = String::new();
        for ((name, _), w) in block.iter().zip(&widths) {
            // Center the column name, biased left, as table headers go.
            let pad = w - name.len();
            let left = pad / 2;
            header.push(' ');
            header.push_str(&" ".repeat(left));
            header.push_str(name);
            header.push_str(&" ".repeat(pad - left));
            header.push(' ');
        }
        lines.push(header.trim_end().to_string());
        let rows = block.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        for r in 0..rows {
            let mut line = String::new();
            for ((_, entries), w) in block.iter().zip(&widths) {
                let cell = entries.get(r).copied().unwrap_or("");
                line.push(' ');
                line.push_str(cell);
                line.push_str(&" ".repeat(w - cell.len()));
                line.push(' ');
            }
            lines.push(line.trim_end().to_string());
        }
    }
    Ok(lines.join("\n"))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent oracle for the interpolation formula: enumerate h by
    // hand instead of reusing the implementation's arithmetic.
    fn brute_quantile(v: &[f64], p: f64) -> f64 {
        let mut s = v.to_vec();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let h = (s.len() as f64 - 1.0) * p;
        let lo = h.floor() as usize;
        let hi = h.ceil() as usize;
        s[lo] * (1.0 - (h - lo as f64)) + s[hi] * (h - lo as f64)
    }

    #[test]
    fn median_of_four_interpolates() {
        // Frozen from the brute-force oracle: h = 1.5 -> 2 + 0.5*(3-2).
        assert_eq!(brute_quantile(&[1.0, 2.0, 3.0, 4.0], 0.5), 2.5);
        assert_eq!(quantile_type7(&[1.0, 2.0, 3.0, 4.0], 0.5).unwrap(), 2.5);
    }

    #[test]
    fn boundaries_are_min_and_max() {
        let v = [3.0, 1.0, 4.0, 1.5, 9.0];
        assert_eq!(quantile_type7(&v, 0.0).unwrap(), 1.0);
        assert_eq!(quantile_type7(&v, 1.0).unwrap(), 9.0);
    }

    #[test]
    fn matches_brute_oracle_on_arbitrary_points() {
        let v = [2.0, 7.0, 1.0, 8.0, 2.8, 1.8, 2.8];
        for p in [0.1, 0.25, 0.33, 0.5, 0.75, 0.9] {
            let got = quantile_type7(&v, p).unwrap();
            let want = brute_quantile(&v, p);
            assert!((got - want).abs() < 1e-12, "p={p}: {got} vs {want}");
        }
    }

    #[test]
    fn empty_vector_errors() {
        assert!(quantile_type7(&[], 0.5).is_err());
    }

    #[test]
    fn numeric_column_formatting() {
        // Values chosen so one stat forces three decimals on the rest.
        let col = format_numeric_column(&[4.3, 5.1, 5.8, 6.4, 7.9, 5.543333]).unwrap();
        assert_eq!(col[0], "Min.   :4.300");
        assert!(col[3].starts_with("Mean   :"));
    }

    #[test]
    fn degenerate_single_row_column() {
        let stats = six_stats(&[5.0]).unwrap();
        assert!(stats.iter().all(|s| *s == 5.0));
    }

    #[test]
    fn string_column_counts_sorted_by_value() {
        let v: Vec<String> = ["b", "a", "b", "ccc"].iter().map(|s| s.to_string()).collect();
        assert_eq!(format_string_column(&v), vec!["a  :1", "b  :2", "ccc:1"]);
    }

    #[test]
    fn species_style_padding() {
        let v: Vec<String> = std::iter::repeat_n("setosa".to_string(), 2)
            .chain(std::iter::repeat_n("versicolor".to_string(), 2))
            .collect();
        assert_eq!(format_string_column(&v), vec!["setosa    :2", "versicolor:2"]);
    }
}
