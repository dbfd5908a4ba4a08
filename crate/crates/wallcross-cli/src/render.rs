use crate::config::Format;
use crate::error::CliError;
use crate::report::{Report, Table};

pub fn render(report: &Report, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => serde_json::to_string_pretty(&report.json)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Output(e.to_string())),
        Format::Csv => csv(&report.table),
        Format::Md => Ok(markdown(&report.table)),
    }
}

fn csv(t: &Table) -> Result<String, CliError> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    let err = |e: ::csv::Error| CliError::Output(e.to_string());
    w.write_record(&t.headers).map_err(err)?;
    for r in &t.rows {
        w.write_record(r).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

fn markdown(t: &Table) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = format!("| {} |\n", t.headers.join(" | "));
    out += &format!("|{}\n", " --- |".repeat(t.headers.len()));
    for r in &t.rows {
        let cells: Vec<String> = r.iter().map(|c| esc(c)).collect();
        out += &format!("| {} |\n", cells.join(" | "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        Table {
            headers: vec!["zeta", "value"],
            rows: vec![vec!["(1,-2)".into(), "39/8".into()]],
        }
    }

    #[test]
    fn markdown_table() {
        assert_eq!(
            markdown(&table()),
            "| zeta | value |\n| --- | --- |\n| (1,-2) | 39/8 |\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(csv(&table()).unwrap(), "zeta,value\n\"(1,-2)\",39/8\n");
    }
}
