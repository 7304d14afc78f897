//! Input formats: comma-separated series files, UCR-style TSV datasets, and
//! silhouette images (PGM or a plain 0/1 grid).

use std::fs;
use std::path::{Path, PathBuf};

use topodist::{Domain, GrayImage, TimeSeries};

use crate::CliError;

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_value(field: &str, path: &Path, line: usize) -> Result<f64, CliError> {
    let field = field.trim();
    let v: f64 = field
        .parse()
        .map_err(|_| CliError::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("cannot parse {field:?} as a number"),
        })?;
    if !v.is_finite() {
        return Err(CliError::Parse {
            path: path.to_path_buf(),
            line,
            message: format!("non-finite value {field:?}"),
        });
    }
    Ok(v)
}

/// A series read from a file, with a `file:line` identifier.
#[derive(Debug, Clone)]
pub struct NamedSeries {
    pub id: String,
    pub series: TimeSeries<f64>,
}

fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// One series per non-blank line, values separated by commas.
pub fn parse_series(text: &str, path: &Path, domain: Domain) -> Result<Vec<NamedSeries>, CliError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let values = line
            .split(',')
            .map(|f| parse_value(f, path, k + 1))
            .collect::<Result<Vec<_>, _>>()?;
        let series = TimeSeries::new(values, domain).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            message: e.to_string(),
        })?;
        out.push(NamedSeries {
            id: format!("{}:{}", display_name(path), k + 1),
            series,
        });
    }
    Ok(out)
}

pub fn read_series_files(paths: &[PathBuf], domain: Domain) -> Result<Vec<NamedSeries>, CliError> {
    let mut all = Vec::new();
    for path in paths {
        let parsed = parse_series(&read_text(path)?, path, domain)?;
        if parsed.is_empty() {
            return Err(CliError::Input(format!("{}: no series found", path.display())));
        }
        all.extend(parsed);
    }
    Ok(all)
}

/// `label<TAB>v1<TAB>v2...` rows. Trailing `NaN` padding is dropped so
/// variable-length datasets work.
pub fn parse_tsv(text: &str, path: &Path, domain: Domain) -> Result<Vec<(String, TimeSeries<f64>)>, CliError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim_end_matches(['\r', '\n']);
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| CliError::Parse {
            path: path.to_path_buf(),
            line: k + 1,
            message,
        };
        let mut fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        while fields.len() > 1 && fields.last().is_some_and(|f| f.eq_ignore_ascii_case("nan") || f.is_empty()) {
            fields.pop();
        }
        let label = fields[0];
        if label.is_empty() {
            return Err(bad("missing label".into()));
        }
        if fields.len() < 2 {
            return Err(bad("row has a label but no values".into()));
        }
        let values = fields[1..]
            .iter()
            .map(|f| parse_value(f, path, k + 1))
            .collect::<Result<Vec<_>, _>>()?;
        let series = TimeSeries::new(values, domain).map_err(|e| bad(e.to_string()))?;
        out.push((label.to_string(), series));
    }
    Ok(out)
}

struct Tokens<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Tokens<'a> {
    /// Next whitespace-separated token, skipping `#` comments.
    fn next(&mut self) -> Option<&'a str> {
        loop {
            while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
                continue;
            }
            break;
        }
        let start = self.pos;
        while self.pos < self.bytes.len() && !self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.bytes[start..self.pos]).unwrap_or(""))
    }

    fn number(&mut self, what: &str) -> Result<usize, String> {
        let tok = self.next().ok_or_else(|| format!("missing {what}"))?;
        tok.parse().map_err(|_| format!("bad {what} {tok:?}"))
    }
}

/// Plain (`P2`) or raw (`P5`) PGM, scaled to `[0, 1]`.
pub fn parse_pgm(bytes: &[u8]) -> Result<GrayImage, String> {
    let mut t = Tokens { bytes, pos: 0 };
    let magic = t.next().ok_or("empty file")?;
    let width = t.number("width")?;
    let height = t.number("height")?;
    let maxval = t.number("maxval")?;
    if maxval == 0 || maxval > 65535 {
        return Err(format!("maxval {maxval} out of range"));
    }
    let n = width * height;
    let raw: Vec<usize> = match magic {
        "P2" => (0..n).map(|_| t.number("pixel")).collect::<Result<_, _>>()?,
        "P5" => {
            let start = t.pos + 1;
            let wide = maxval > 255;
            let need = n * if wide { 2 } else { 1 };
            let data = bytes.get(start..start + need).ok_or("truncated pixel data")?;
            if wide {
                data.chunks(2).map(|c| (c[0] as usize) << 8 | c[1] as usize).collect()
            } else {
                data.iter().map(|&b| b as usize).collect()
            }
        }
        other => return Err(format!("unsupported magic {other:?}")),
    };
    if let Some(v) = raw.iter().find(|&&v| v > maxval) {
        return Err(format!("pixel value {v} exceeds maxval {maxval}"));
    }
    GrayImage::new(width, height, raw.into_iter().map(|v| v as f64 / maxval as f64).collect())
        .map_err(|e| e.to_string())
}

/// Rows of `0`/`1`, optionally separated by spaces or commas.
pub fn parse_grid(text: &str) -> Result<GrayImage, String> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let row: Vec<f64> = line
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '0' => Ok(0.0),
                '1' => Ok(1.0),
                _ => Err(format!("line {}: unexpected character {c:?}", k + 1)),
            })
            .collect::<Result<_, _>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    let width = rows.first().map_or(0, Vec::len);
    if let Some(k) = rows.iter().position(|r| r.len() != width) {
        return Err(format!("row {} has {} cells, expected {width}", k + 1, rows[k].len()));
    }
    GrayImage::new(width, rows.len(), rows.concat()).map_err(|e| e.to_string())
}

pub fn read_image(path: &Path) -> Result<GrayImage, CliError> {
    let bytes = fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let parsed = if bytes.starts_with(b"P2") || bytes.starts_with(b"P5") {
        parse_pgm(&bytes)
    } else {
        std::str::from_utf8(&bytes)
            .map_err(|_| "not a PGM and not a text grid".to_string())
            .and_then(parse_grid)
    };
    parsed.map_err(|message| CliError::Input(format!("{}: {message}", path.display())))
}
