//! CSV renderings of the bound tables.
//!
//! Cells are plain integers; a vacuous bound is `-` and a value raised to
//! its applicability floor carries a `*` suffix. Notes follow the records as
//! lines starting with `#`.

use fbclab_core::bounds::{
    BoundOutcome, Table2Row, Table3Column, Table3Row, TABLE3_PUBLISHED_MISMATCHES,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableCsv {
    pub headers: Vec<String>,
    pub records: Vec<Vec<String>>,
    pub notes: Vec<String>,
}

impl TableCsv {
    pub fn emit(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.records {
            w.write_record(r)?;
        }
        let mut out = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)
            .expect("csv of utf-8 strings");
        for note in &self.notes {
            out.push_str("# ");
            out.push_str(note);
            out.push('\n');
        }
        Ok(out)
    }

    pub fn parse(text: &str) -> Result<Self, csv::Error> {
        let (body, notes): (Vec<&str>, Vec<&str>) = text.lines().partition(|l| !l.starts_with('#'));
        let body = body.join("\n");
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let headers = r.headers()?.iter().map(str::to_owned).collect();
        let records = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_owned).collect()))
            .collect::<Result<_, _>>()?;
        let notes = notes
            .iter()
            .map(|l| l.trim_start_matches('#').trim_start().to_owned())
            .collect();
        Ok(TableCsv {
            headers,
            records,
            notes,
        })
    }
}

pub fn cell(o: &BoundOutcome) -> String {
    match (o.vacuous, o.clamped) {
        (true, _) => "-".to_owned(),
        (false, true) => format!("{}*", o.min_n),
        (false, false) => o.min_n.to_string(),
    }
}

pub fn table2(rows: &[Table2Row]) -> TableCsv {
    TableCsv {
        headers: ["k", "t", "thm8", "exact", "construction"]
            .map(String::from)
            .to_vec(),
        records: rows
            .iter()
            .map(|r| {
                [r.k as usize, r.t, r.thm8, r.exact, r.construction]
                    .map(|v| v.to_string())
                    .to_vec()
            })
            .collect(),
        notes: Vec::new(),
    }
}

pub fn table3(rows: &[Table3Row], columns: &[Table3Column]) -> TableCsv {
    let mut headers = vec!["k".to_owned()];
    headers.extend(columns.iter().map(Table3Column::header));
    let mut notes = Vec::new();
    let records = rows
        .iter()
        .map(|row| {
            let mut rec = vec![row.k.to_string()];
            for (col, o) in columns.iter().zip(&row.cells) {
                rec.push(cell(o));
                if o.clamped && !o.vacuous {
                    notes.push(format!(
                        "k={} {}: raw bound {} raised to applicability floor {}",
                        row.k,
                        col.header(),
                        o.raw_min_n,
                        o.applicability_floor
                    ));
                }
                if let Some(m) = TABLE3_PUBLISHED_MISMATCHES
                    .iter()
                    .find(|m| m.k == row.k && m.column == *col)
                {
                    notes.push(format!(
                        "k={} {}: certified {} differs from the reference value {}",
                        m.k,
                        col.header(),
                        m.certified,
                        m.published
                    ));
                }
            }
            rec
        })
        .collect();
    TableCsv {
        headers,
        records,
        notes,
    }
}
