//! Table file formats.
//!
//! Text: first line `n`, then `n` lines of `n` whitespace-separated indices.
//! Lines starting with `#` and blank lines are ignored.
//!
//! JSON: `{"order": n, "table": [[...], ...], "names": [...]}` with `names` optional.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{validate_table, CayleyTable};

/// A parsed table together with optional element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedTable {
    pub table: CayleyTable,
    pub names: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct JsonTable {
    order: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

/// Parses either format; JSON is detected by a leading `{`.
pub fn parse_table(input: &str) -> Result<NamedTable> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

pub fn parse_text(input: &str) -> Result<NamedTable> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (first_no, first) = lines
        .next()
        .ok_or_else(|| parse_err(1, 1, "empty input"))?;
    let order: usize = first.trim().parse().map_err(|_| {
        parse_err(
            first_no,
            first.find(|c: char| !c.is_whitespace()).unwrap_or(0) + 1,
            format!("expected the table order, found `{}`", first.trim()),
        )
    })?;
    if order == 0 {
        return Err(Error::EmptyTable);
    }

    let mut entries = Vec::with_capacity(order * order);
    let mut last_line = first_no;
    for _ in 0..order {
        let (line_no, line) = lines.next().ok_or_else(|| {
            parse_err(
                last_line + 1,
                1,
                format!("expected {order} rows, input ended early"),
            )
        })?;
        last_line = line_no;
        let mut count = 0;
        for (column, token) in tokens_with_columns(line) {
            let value: usize = token.parse().map_err(|_| {
                parse_err(line_no, column, format!("`{token}` is not an element index"))
            })?;
            if value >= order {
                return Err(parse_err(
                    line_no,
                    column,
                    format!("entry {value} is outside 0..{order}"),
                ));
            }
            entries.push(value);
            count += 1;
        }
        if count != order {
            return Err(parse_err(
                line_no,
                line.len() + 1,
                format!("row has {count} entries, expected {order}"),
            ));
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_err(line_no, 1, "unexpected content after the table"));
    }
    Ok(NamedTable {
        table: validate_table(order, &entries)?,
        names: None,
    })
}

fn tokens_with_columns(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skip = rest.find(|c: char| !c.is_whitespace())?;
        let start = offset + skip;
        let tail = &rest[skip..];
        let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let token = &tail[..len];
        rest = &tail[len..];
        offset = start + len;
        Some((start + 1, token))
    })
}

pub fn parse_json(input: &str) -> Result<NamedTable> {
    let raw: JsonTable = serde_json::from_str(input)
        .map_err(|e| parse_err(e.line(), e.column(), e.to_string()))?;
    if raw.table.len() != raw.order {
        return Err(parse_err(
            1,
            1,
            format!("order is {} but {} rows were given", raw.order, raw.table.len()),
        ));
    }
    if let Some(names) = &raw.names {
        if names.len() != raw.order {
            return Err(parse_err(
                1,
                1,
                format!("{} names given for {} elements", names.len(), raw.order),
            ));
        }
    }
    Ok(NamedTable {
        table: CayleyTable::new(&raw.table)?,
        names: raw.names,
    })
}

pub fn to_text(table: &CayleyTable) -> String {
    table.to_string()
}

pub fn to_json(table: &CayleyTable, names: Option<&[String]>) -> String {
    serde_json::to_string(&JsonTable {
        order: table.order(),
        table: table.rows(),
        names: names.map(<[String]>::to_vec),
    })
    .expect("table serializes")
}
