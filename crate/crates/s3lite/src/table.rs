//! TSV loading for data frames: first line is the header, columns are
//! numeric when every cell parses as a number, otherwise strings.

use indexmap::IndexMap;

use crate::error::RuntimeError;
use crate::value::Value;

/// Parses TSV text into a data frame value (class `data_frame`, with a
/// `row_count` attribute).
pub fn load_table_str(content: &str) -> Result<Value, RuntimeError> {
    let mut lines = content.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| RuntimeError::new("empty table file"))?;
    let names: Vec<&str> = header.split('\t').collect();
    if names.is_empty() || names.iter().any(|n| n.is_empty()) {
        return Err(RuntimeError::new("malformed table header"));
    }
    let mut cells: Vec<Vec<String>> = vec![Vec::new(); names.len()];
    let mut rows = 0usize;
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != names.len() {
            return Err(RuntimeError::new(format!(
                "ragged row at line {}: expected {} fields, found {}",
                i + 1,
                names.len(),
                fields.len()
            )));
        }
        for (col, field) in cells.iter_mut().zip(&fields) {
            if *field == "NA" {
                return Err(RuntimeError::new(format!(
                    "NA values are not supported (line {})",
                    i + 1
                )));
            }
            col.push(field.to_string());
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(RuntimeError::new("no data rows"));
    }
    let mut fields = IndexMap::new();
    for (name, col) in names.iter().zip(cells) {
        let numeric: Option<Vec<f64>> = col.iter().map(|s| s.parse::<f64>().ok()).collect();
        let value = match numeric {
            Some(v) => Value::numeric(v),
            None => Value::strings(col),
        };
        fields.insert(name.to_string(), value);
    }
    let mut df = Value::record(fields).with_class(vec!["data_frame".to_string()])?;
    df.attrs
        .insert("row_count".to_string(), Value::num(rows as f64));
    Ok(df)
}

pub fn load_table_file(path: &str) -> Result<Value, RuntimeError> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| RuntimeError::new(format!("cannot read '{path}': {e}")))?;
    load_table_str(&content)
}

/// The bundled iris data.
pub fn bundled_iris() -> Value {
    load_table_str(include_str!("../assets/iris.tsv")).expect("bundled iris.tsv is well-formed")
}
