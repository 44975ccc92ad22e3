//! JSON Lines reports and CSV sweep tables.

use std::io;

use qltclab_core::analysis::{SweepOutcome, SweepRow, VerificationReport};
use qltclab_core::Rational;
use serde::Serialize;

/// Schema of one JSON report line. Field order is fixed.
#[derive(Debug, Serialize)]
struct ReportJson<'a> {
    statement: &'a str,
    instance: &'a str,
    predicted: String,
    measured: String,
    pass: bool,
    method: &'a str,
}

pub fn report_json(r: &VerificationReport) -> String {
    let row = ReportJson {
        statement: r.statement.id(),
        instance: &r.instance,
        predicted: r.predicted.to_string(),
        measured: r.measured.to_string(),
        pass: r.pass,
        method: r.method.as_str(),
    };
    serde_json::to_string(&row).expect("report fields serialise")
}

pub const SWEEP_HEADER: [&str; 17] = [
    "family",
    "params",
    "status",
    "n",
    "k",
    "d_x",
    "d_z",
    "soundness_lower",
    "soundness_upper",
    "soundness_method",
    "x_max_row_weight",
    "x_max_col_weight",
    "z_max_row_weight",
    "z_max_col_weight",
    "x_avg_row_weight",
    "z_avg_row_weight",
    "note",
];

fn ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn sweep_record(row: &SweepRow) -> Vec<String> {
    let mut rec = vec![row.cell.family.to_string(), row.cell.params.clone()];
    match &row.outcome {
        SweepOutcome::Measured(r) => {
            let (lower, upper, method, note) = match &r.soundness {
                Some(s) => (ratio(&s.lower), ratio(&s.upper), s.method.as_str().to_string(), String::new()),
                None => (String::new(), String::new(), String::new(), "soundness out of range".into()),
            };
            rec.extend([
                "ok".to_string(),
                r.n.to_string(),
                r.k.to_string(),
                r.d_x.to_string(),
                r.d_z.to_string(),
                lower,
                upper,
                method,
                r.x_locality.max_row_weight.to_string(),
                r.x_locality.max_col_weight.to_string(),
                r.z_locality.max_row_weight.to_string(),
                r.z_locality.max_col_weight.to_string(),
                ratio(&r.x_locality.avg_row_weight),
                ratio(&r.z_locality.avg_row_weight),
                note,
            ]);
        }
        SweepOutcome::Skipped(why) => {
            rec.push("skipped".into());
            rec.extend(std::iter::repeat_n(String::new(), SWEEP_HEADER.len() - 4));
            rec.push(why.clone());
        }
    }
    rec
}

/// Writes a header row and one record per sweep row.
pub fn write_sweep_csv<W: io::Write>(rows: &[SweepRow], sink: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(SWEEP_HEADER)?;
    for row in rows {
        w.write_record(sweep_record(row))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qltclab_core::analysis::{sweep, verify, Family, Instance, Statement};
    use qltclab_core::codes::Limits;

    #[test]
    fn json_schema() {
        let inst: Instance = "hamming7".parse().unwrap();
        let r = verify(Statement::DupSoundness, &inst, &Limits::default()).unwrap();
        let line = report_json(&r);
        assert_eq!(
            line,
            r#"{"statement":"dup-soundness","instance":"hamming7","predicted":"14/3","measured":"14/3","pass":true,"method":"exhaustive"}"#
        );
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys.len(), 6);
    }

    #[test]
    fn csv_has_header_and_skips() {
        let rows = sweep(Family::Gauge, &"h=rep3,nonsense".parse().unwrap(), &Limits::default()).unwrap();
        let mut out = Vec::new();
        write_sweep_csv(&rows, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], SWEEP_HEADER.join(","));
        assert!(lines[1].starts_with("gauge,h=rep3,ok,6,1,"), "{}", lines[1]);
        assert!(lines[2].starts_with("gauge,h=nonsense,skipped,"), "{}", lines[2]);
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        for rec in reader.records() {
            assert_eq!(rec.unwrap().len(), SWEEP_HEADER.len());
        }
    }
}
