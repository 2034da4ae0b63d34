//! Text format for generator matrices: a `k n` header line, then `k` rows of
//! `n` space-separated bits. Blank lines and lines starting with `#` are
//! ignored.

use fbclab_core::GeneratorMatrix;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 when the problem is the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

pub fn parse(text: &str) -> Result<GeneratorMatrix, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let Some((hline, header)) = lines.next() else {
        return err(0, "empty matrix file");
    };
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [k, n] = dims[..] else {
        return err(hline, format!("expected header \"k n\", found {header:?}"));
    };
    let parse_dim = |s: &str, what| {
        s.parse::<usize>().map_err(|_| ParseError {
            line: hline,
            message: format!("{what} = {s:?} is not a non-negative integer"),
        })
    };
    let (k, n) = (parse_dim(k, "k")?, parse_dim(n, "n")?);

    let mut rows = Vec::with_capacity(k);
    let mut last = hline;
    for (line, text) in lines {
        if rows.len() == k {
            return err(line, format!("extra row; header declares k = {k}"));
        }
        let row = text
            .split_whitespace()
            .map(|tok| match tok {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                _ => err(line, format!("entry {tok:?} is not 0 or 1")),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if row.len() != n {
            return err(
                line,
                format!("row has {} entries, header declares n = {n}", row.len()),
            );
        }
        rows.push(row);
        last = line;
    }
    if rows.len() != k {
        return err(
            last,
            format!("found {} rows, header declares k = {k}", rows.len()),
        );
    }
    GeneratorMatrix::from_rows(&rows).map_err(|e| ParseError {
        line: hline,
        message: e.to_string(),
    })
}

pub fn emit(g: &GeneratorMatrix) -> String {
    let mut out = format!("{} {}\n", g.k(), g.n());
    for i in 0..g.k() {
        let row: Vec<String> = g.row(i).iter().map(u8::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
