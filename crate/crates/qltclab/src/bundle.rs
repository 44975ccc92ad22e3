//! Text bundles holding a constructed code, its provenance and any reports.
//!
//! ```text
//! QLTCLAB-BUNDLE v1
//! construction: balanced
//! params: h=rep3;ell=2;variant=star
//! seed: 0
//! version: 0.1.0
//! matrix: h_x
//! <alist>
//! end
//! matrix: h_z
//! <alist>
//! end
//! report: distance label=d_x value=4
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use qltclab_core::analysis::{LocalityProfile, Method, Quantity, Statement, VerificationReport};
use qltclab_core::codes::{ClassicalCode, CssCode, Distance, SoundnessInterval, SoundnessMethod};
use qltclab_core::f2::BinaryMatrix;
use qltclab_core::Rational;
use thiserror::Error;

use crate::alist::{parse_alist, to_alist, AlistError};

pub const BUNDLE_HEADER: &str = "QLTCLAB-BUNDLE v1";

#[derive(Debug, Error)]
pub enum BundleError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("matrix {name} starting on line {first_line}: {source}")]
    Alist {
        name: String,
        first_line: usize,
        source: AlistError,
    },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metadata {
    pub construction: String,
    pub params: String,
    pub seed: u64,
    pub version: String,
}

impl Metadata {
    pub fn new(construction: impl Into<String>, params: impl Into<String>, seed: u64) -> Self {
        Metadata {
            construction: construction.into(),
            params: params.into(),
            seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Matrices {
    Classical(BinaryMatrix),
    Css { h_x: BinaryMatrix, h_z: BinaryMatrix },
}

impl Matrices {
    /// `(name, matrix)` pairs in file order.
    pub fn named(&self) -> Vec<(&'static str, &BinaryMatrix)> {
        match self {
            Matrices::Classical(h) => vec![("h", h)],
            Matrices::Css { h_x, h_z } => vec![("h_x", h_x), ("h_z", h_z)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BundleReport {
    Verification(VerificationReport),
    /// `matrix` is one of the bundle's matrix names.
    Locality { matrix: String, profile: LocalityProfile },
    /// `target` is `code` for the quantum interval or a matrix name.
    Soundness { target: String, interval: SoundnessInterval },
    Distance { label: String, value: Distance },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBundle {
    pub metadata: Metadata,
    pub matrices: Matrices,
    pub reports: Vec<BundleReport>,
}

impl CodeBundle {
    pub fn css(metadata: Metadata, code: &CssCode) -> Self {
        CodeBundle {
            metadata,
            matrices: Matrices::Css {
                h_x: code.h_x().clone(),
                h_z: code.h_z().clone(),
            },
            reports: Vec::new(),
        }
    }

    pub fn classical(metadata: Metadata, code: &ClassicalCode) -> Self {
        CodeBundle {
            metadata,
            matrices: Matrices::Classical(code.checks().clone()),
            reports: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        match &self.matrices {
            Matrices::Classical(h) => h.cols(),
            Matrices::Css { h_x, .. } => h_x.cols(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.metadata;
        let _ = writeln!(out, "{BUNDLE_HEADER}");
        let _ = writeln!(out, "construction: {}", m.construction);
        let _ = writeln!(out, "params: {}", m.params);
        let _ = writeln!(out, "seed: {}", m.seed);
        let _ = writeln!(out, "version: {}", m.version);
        for (name, matrix) in self.matrices.named() {
            let _ = writeln!(out, "matrix: {name}");
            out.push_str(&to_alist(matrix));
            out.push_str("end\n");
        }
        for r in &self.reports {
            let _ = writeln!(out, "report: {}", render_report(r));
        }
        out
    }

    /// Parses bundle text and re-validates commutation of CSS matrices.
    pub fn from_text(text: &str) -> Result<Self, BundleError> {
        let lines: Vec<&str> = text.lines().collect();
        let format = |line: usize, message: String| BundleError::Format { line, message };
        if lines.first().map(|l| l.trim_end()) != Some(BUNDLE_HEADER) {
            return Err(format(1, format!("expected header {BUNDLE_HEADER:?}")));
        }

        let mut meta: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
        let mut matrices: Vec<(String, BinaryMatrix)> = Vec::new();
        let mut reports = Vec::new();
        let mut i = 1;
        while i < lines.len() {
            let line_no = i + 1;
            let line = lines[i].trim_end();
            i += 1;
            if line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(": ")
                .or_else(|| line.strip_suffix(':').map(|k| (k, "")))
                .ok_or_else(|| format(line_no, format!("expected 'key: value', got {line:?}")))?;
            match key {
                "construction" | "params" | "seed" | "version" => {
                    if meta.insert(key, (line_no, value)).is_some() {
                        return Err(format(line_no, format!("{key} given twice")));
                    }
                }
                "matrix" => {
                    let start = i;
                    let end = lines[start..]
                        .iter()
                        .position(|l| l.trim() == "end")
                        .map(|p| start + p)
                        .ok_or_else(|| format(line_no, format!("matrix {value} has no closing 'end'")))?;
                    let block = lines[start..end].join("\n");
                    let m = parse_alist(&block).map_err(|source| BundleError::Alist {
                        name: value.to_string(),
                        first_line: start + 1,
                        source,
                    })?;
                    matrices.push((value.to_string(), m));
                    i = end + 1;
                }
                "report" => reports.push(parse_report(value).map_err(|e| format(line_no, e))?),
                other => return Err(format(line_no, format!("unknown key {other:?}"))),
            }
        }

        let field = |key: &str| {
            meta.get(key)
                .map(|&(_, v)| v.to_string())
                .ok_or_else(|| format(lines.len() + 1, format!("missing {key}")))
        };
        let seed_line = meta.get("seed").map_or(lines.len() + 1, |&(l, _)| l);
        let metadata = Metadata {
            construction: field("construction")?,
            params: field("params")?,
            seed: field("seed")?
                .parse()
                .map_err(|_| format(seed_line, "seed must be an unsigned integer".into()))?,
            version: field("version")?,
        };

        let names: Vec<String> = matrices.iter().map(|(n, _)| n.clone()).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let matrices = match names.as_slice() {
            ["h"] => Matrices::Classical(matrices.remove(0).1),
            ["h_x", "h_z"] => {
                let h_z = matrices.pop().unwrap().1;
                let h_x = matrices.pop().unwrap().1;
                CssCode::new(h_x.clone(), h_z.clone())
                    .map_err(|e| BundleError::ValidationFailed(e.to_string()))?;
                Matrices::Css { h_x, h_z }
            }
            other => {
                return Err(format(
                    lines.len() + 1,
                    format!("expected matrices [h] or [h_x, h_z], found {other:?}"),
                ))
            }
        };
        Ok(CodeBundle {
            metadata,
            matrices,
            reports,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), BundleError> {
        std::fs::write(path, self.to_text()).map_err(|source| BundleError::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, BundleError> {
        let text = std::fs::read_to_string(path).map_err(|source| BundleError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_text(&text)
    }
}

fn ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn histogram(h: &BTreeMap<usize, usize>) -> String {
    if h.is_empty() {
        return "-".into();
    }
    h.iter().map(|(w, c)| format!("{w}:{c}")).collect::<Vec<_>>().join(",")
}

fn tagged(q: &Quantity) -> String {
    match q {
        Quantity::Count(c) => format!("count:{c}"),
        Quantity::Ratio(r) => format!("ratio:{}", ratio(r)),
        Quantity::Distance(d) => format!("distance:{d}"),
        Quantity::Params { n, k, d } => format!("params:{n},{k},{d}"),
    }
}

fn render_report(r: &BundleReport) -> String {
    match r {
        BundleReport::Verification(v) => format!(
            "verification statement={} instance={} predicted={} measured={} pass={} method={}",
            v.statement,
            v.instance,
            tagged(&v.predicted),
            tagged(&v.measured),
            v.pass,
            v.method
        ),
        BundleReport::Locality { matrix, profile: p } => format!(
            "locality matrix={matrix} rows={} cols={} max_row_weight={} max_col_weight={} \
             avg_row_weight={} avg_col_weight={} row_histogram={} col_histogram={} total_weight={}",
            p.rows,
            p.cols,
            p.max_row_weight,
            p.max_col_weight,
            ratio(&p.avg_row_weight),
            ratio(&p.avg_col_weight),
            histogram(&p.row_weight_histogram),
            histogram(&p.col_weight_histogram),
            p.total_weight
        ),
        BundleReport::Soundness { target, interval } => format!(
            "soundness target={target} lower={} upper={} method={}",
            ratio(&interval.lower),
            ratio(&interval.upper),
            interval.method.as_str()
        ),
        BundleReport::Distance { label, value } => format!("distance label={label} value={value}"),
    }
}

struct Fields<'a>(BTreeMap<&'a str, &'a str>);

impl<'a> Fields<'a> {
    fn parse(text: &'a str) -> Result<Self, String> {
        let mut map = BTreeMap::new();
        for token in text.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {token:?}"))?;
            if map.insert(k, v).is_some() {
                return Err(format!("field {k} repeated"));
            }
        }
        Ok(Fields(map))
    }

    fn get(&self, key: &str) -> Result<&'a str, String> {
        self.0.get(key).copied().ok_or_else(|| format!("missing field {key}"))
    }

    fn parse_as<T: std::str::FromStr>(&self, key: &str) -> Result<T, String> {
        let v = self.get(key)?;
        v.parse().map_err(|_| format!("bad value {v:?} for {key}"))
    }
}

fn parse_histogram(s: &str) -> Result<BTreeMap<usize, usize>, String> {
    if s == "-" {
        return Ok(BTreeMap::new());
    }
    s.split(',')
        .map(|pair| {
            let (w, c) = pair.split_once(':').ok_or_else(|| format!("bad histogram entry {pair:?}"))?;
            Ok((
                w.parse().map_err(|_| format!("bad weight {w:?}"))?,
                c.parse().map_err(|_| format!("bad count {c:?}"))?,
            ))
        })
        .collect()
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    let bad = || format!("bad quantity {s:?}");
    let (tag, body) = s.split_once(':').ok_or_else(bad)?;
    match tag {
        "count" => body.parse().map(Quantity::Count).map_err(|_| bad()),
        "ratio" => body.parse().map(Quantity::Ratio).map_err(|_| bad()),
        "distance" => body.parse().map(Quantity::Distance).map_err(|_| bad()),
        "params" => {
            let parts: Vec<&str> = body.split(',').collect();
            let [n, k, d] = parts.as_slice() else {
                return Err(bad());
            };
            Ok(Quantity::Params {
                n: n.parse().map_err(|_| bad())?,
                k: k.parse().map_err(|_| bad())?,
                d: d.parse().map_err(|_| bad())?,
            })
        }
        _ => Err(bad()),
    }
}

fn parse_report(text: &str) -> Result<BundleReport, String> {
    let (kind, rest) = text.split_once(' ').unwrap_or((text, ""));
    let f = Fields::parse(rest)?;
    match kind {
        "verification" => Ok(BundleReport::Verification(VerificationReport {
            statement: f.parse_as::<Statement>("statement")?,
            instance: f.get("instance")?.to_string(),
            predicted: parse_quantity(f.get("predicted")?)?,
            measured: parse_quantity(f.get("measured")?)?,
            pass: f.parse_as("pass")?,
            method: f.parse_as::<Method>("method")?,
        })),
        "locality" => Ok(BundleReport::Locality {
            matrix: f.get("matrix")?.to_string(),
            profile: LocalityProfile {
                rows: f.parse_as("rows")?,
                cols: f.parse_as("cols")?,
                max_row_weight: f.parse_as("max_row_weight")?,
                max_col_weight: f.parse_as("max_col_weight")?,
                avg_row_weight: f.parse_as("avg_row_weight")?,
                avg_col_weight: f.parse_as("avg_col_weight")?,
                row_weight_histogram: parse_histogram(f.get("row_histogram")?)?,
                col_weight_histogram: parse_histogram(f.get("col_histogram")?)?,
                total_weight: f.parse_as("total_weight")?,
            },
        }),
        "soundness" => Ok(BundleReport::Soundness {
            target: f.get("target")?.to_string(),
            interval: SoundnessInterval {
                lower: f.parse_as("lower")?,
                upper: f.parse_as("upper")?,
                method: f.parse_as::<SoundnessMethod>("method")?,
            },
        }),
        "distance" => Ok(BundleReport::Distance {
            label: f.get("label")?.to_string(),
            value: f.parse_as("value")?,
        }),
        other => Err(format!("unknown report kind {other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qltclab_core::analysis::locality_profile;
    use qltclab_core::catalog::repetition;
    use qltclab_core::homology::{distance_balanced_css, RepetitionVariant};

    fn balanced() -> CodeBundle {
        let q = distance_balanced_css(&repetition(3), 2, RepetitionVariant::Star).unwrap();
        CodeBundle::css(Metadata::new("balanced", "h=rep3;ell=2;variant=star", 0), &q)
    }

    fn with_reports() -> CodeBundle {
        let mut b = balanced();
        let Matrices::Css { h_x, .. } = &b.matrices else { unreachable!() };
        let profile = locality_profile(h_x);
        b.reports = vec![
            BundleReport::Distance { label: "d_x".into(), value: Distance::Finite(4) },
            BundleReport::Distance { label: "d".into(), value: Distance::Infinite },
            BundleReport::Locality { matrix: "h_x".into(), profile },
            BundleReport::Locality { matrix: "h".into(), profile: locality_profile(&BinaryMatrix::zeros(0, 0)) },
            BundleReport::Soundness {
                target: "code".into(),
                interval: SoundnessInterval {
                    lower: Rational::new(7, 6),
                    upper: Rational::new(7, 3),
                    method: SoundnessMethod::CssReduction,
                },
            },
            BundleReport::Verification(VerificationReport {
                statement: Statement::BalancedQubits,
                instance: "rep3;ell=2;star".into(),
                predicted: Quantity::Params { n: 14, k: 1, d: Distance::Finite(3) },
                measured: Quantity::Ratio(Rational::new(1, 3)),
                pass: false,
                method: Method::Enumeration,
            }),
            BundleReport::Verification(VerificationReport {
                statement: Statement::NestedRate,
                instance: "nested:n=8:seed=1".into(),
                predicted: Quantity::Count(4),
                measured: Quantity::Distance(Distance::Finite(4)),
                pass: true,
                method: Method::Rank,
            }),
        ];
        b
    }

    #[test]
    fn balanced_round_trip() {
        let b = balanced();
        assert_eq!(b.n(), 14);
        let text = b.to_text();
        assert!(text.starts_with("QLTCLAB-BUNDLE v1\nconstruction: balanced\n"));
        let back = CodeBundle::from_text(&text).unwrap();
        assert_eq!(back, b);
        assert!(back.reports.is_empty());
    }

    #[test]
    fn reports_round_trip() {
        let b = with_reports();
        assert_eq!(CodeBundle::from_text(&b.to_text()).unwrap(), b);
    }

    #[test]
    fn classical_round_trip_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rep.bundle");
        let b = CodeBundle::classical(Metadata::new("code", "h=rep3", 9), &ClassicalCode::new(repetition(3)));
        b.save(&path).unwrap();
        assert_eq!(CodeBundle::load(&path).unwrap(), b);
        assert!(matches!(
            CodeBundle::load(&dir.path().join("absent")),
            Err(BundleError::Io { .. })
        ));
    }

    #[test]
    fn flipped_bit_fails_validation() {
        let text = balanced().to_text();
        let mut b = balanced();
        let Matrices::Css { h_z, .. } = &mut b.matrices else { unreachable!() };
        let bit = h_z.get(0, 0);
        h_z.set(0, 0, !bit);
        let corrupted = b.to_text();
        assert_ne!(text, corrupted);
        assert!(matches!(
            CodeBundle::from_text(&corrupted),
            Err(BundleError::ValidationFailed(_))
        ));
    }

    #[test]
    fn malformed_bundles() {
        let text = balanced().to_text();
        let err = CodeBundle::from_text(&text.replace("QLTCLAB-BUNDLE v1", "QLTCLAB-BUNDLE v2")).unwrap_err();
        assert!(matches!(err, BundleError::Format { line: 1, .. }));
        let err = CodeBundle::from_text(&text.replace("seed: 0\n", "")).unwrap_err();
        assert!(err.to_string().contains("missing seed"), "{err}");
        let err = CodeBundle::from_text(&text.replacen("end\n", "", 2)).unwrap_err();
        assert!(matches!(err, BundleError::Format { line: 6, .. } | BundleError::Alist { .. }), "{err}");
        let err = CodeBundle::from_text(&format!("{text}report: distance label=d\n")).unwrap_err();
        assert!(err.to_string().contains("missing field value"), "{err}");
        let err = CodeBundle::from_text(&text.replacen("matrix: h_x\n14 4\n", "matrix: h_x\n14 4 1\n", 1)).unwrap_err();
        assert!(matches!(err, BundleError::Alist { first_line: 7, .. }), "{err}");
    }
}
