//! CSV persistence for databases (`eps_1..eps_k,sig_1..sig_k`) and adaptive
//! entries (`norm,unit_1..unit_D`). Values are written with 17 significant
//! digits so that `f64` data survives a round trip bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use super::{AdaptiveEntry, Database, MaterialPoint};
use crate::scalar::Real;
use crate::{Error, Result};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn database_header(dim: usize) -> Vec<String> {
    (1..=dim)
        .map(|i| format!("eps_{i}"))
        .chain((1..=dim).map(|i| format!("sig_{i}")))
        .collect()
}

pub fn format_database<T: Real>(db: &Database<T>) -> String {
    let mut s = String::new();
    for (k, v) in &db.meta {
        let _ = writeln!(s, "# {k}={v}");
    }
    if db.dim() == 3 {
        s.push_str("# components: (xx, yy, xy); strain column 3 is engineering shear gamma_xy = 2 eps_xy\n");
    }
    s.push_str(&database_header(db.dim()).join(","));
    s.push('\n');
    for p in db.points() {
        let row: Vec<String> = p.eps.iter().chain(&p.sig).map(|v| format!("{v:.16e}")).collect();
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

/// Data lines with their 1-based line numbers; `# key=value` comments are
/// collected as metadata.
fn data_lines(text: &str) -> (Vec<(usize, &str)>, Vec<(String, String)>) {
    let mut lines = Vec::new();
    let mut meta = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let l = raw.trim();
        if let Some(c) = l.strip_prefix('#') {
            if let Some((k, v)) = c.trim().split_once('=') {
                meta.push((k.trim().to_string(), v.trim().to_string()));
            }
        } else if !l.is_empty() {
            lines.push((i + 1, l));
        }
    }
    (lines, meta)
}

fn parse_row<T: Real>(line: usize, l: &str, width: usize) -> Result<Vec<T>> {
    let vals = l
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<T>()
                .map_err(|_| perr(line, format!("not a number: {:?}", t.trim())))
        })
        .collect::<Result<Vec<T>>>()?;
    if vals.len() != width {
        return Err(perr(line, format!("expected {width} columns, found {}", vals.len())));
    }
    Ok(vals)
}

pub fn parse_database<T: Real>(text: &str) -> Result<Database<T>> {
    let (lines, meta) = data_lines(text);
    let (&(hline, header), rows) = lines.split_first().ok_or_else(|| perr(0, "empty database file"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() % 2 != 0 || cols.is_empty() {
        return Err(perr(hline, "header must list eps_1..eps_k,sig_1..sig_k"));
    }
    let dim = cols.len() / 2;
    if cols != database_header(dim) {
        return Err(perr(hline, format!("header {header:?} does not match a dimension-{dim} database")));
    }
    if rows.is_empty() {
        return Err(perr(hline, "database has no rows"));
    }
    let points = rows
        .iter()
        .map(|&(line, l)| {
            let mut v = parse_row::<T>(line, l, 2 * dim)?;
            let sig = v.split_off(dim);
            Ok(MaterialPoint::new(v, sig))
        })
        .collect::<Result<Vec<_>>>()?;
    Database::new(points, meta)
}

/// Parses a database and checks that it has the expected strain dimension.
pub fn read_database<T: Real>(path: impl AsRef<Path>, expected_dim: Option<usize>) -> Result<Database<T>> {
    let db = parse_database(&std::fs::read_to_string(path)?)?;
    match expected_dim {
        Some(d) if d != db.dim() => Err(Error::DimensionMismatch {
            expected: d,
            got: db.dim(),
        }),
        _ => Ok(db),
    }
}

pub fn write_database<T: Real>(db: &Database<T>, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_database(db))?;
    Ok(())
}

pub fn format_adaptive<T: Real>(entries: &[AdaptiveEntry<T>]) -> String {
    let d = entries.first().map_or(0, |e| e.unit.len());
    let mut s = String::from("norm");
    for i in 1..=d {
        let _ = write!(s, ",unit_{i}");
    }
    s.push('\n');
    for e in entries {
        let _ = write!(s, "{:.16e}", e.norm);
        for u in &e.unit {
            let _ = write!(s, ",{u:.16e}");
        }
        s.push('\n');
    }
    s
}

pub fn parse_adaptive<T: Real>(text: &str) -> Result<Vec<AdaptiveEntry<T>>> {
    let (lines, _) = data_lines(text);
    let (&(hline, header), rows) = lines.split_first().ok_or_else(|| perr(0, "empty adaptive file"))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let d = cols.len().saturating_sub(1);
    let expected: Vec<String> = std::iter::once("norm".to_string())
        .chain((1..=d).map(|i| format!("unit_{i}")))
        .collect();
    if d == 0 || cols != expected {
        return Err(perr(hline, "header must be norm,unit_1..unit_D"));
    }
    rows.iter()
        .map(|&(line, l)| {
            let mut v = parse_row::<T>(line, l, d + 1)?;
            let unit = v.split_off(1);
            Ok(AdaptiveEntry { norm: v[0], unit })
        })
        .collect()
}

/// Writes entries to `<stem>_adapt_<j>.csv` next to `stem`.
pub fn write_adaptive<T: Real>(entries: &[AdaptiveEntry<T>], stem: impl AsRef<Path>, j: usize) -> Result<std::path::PathBuf> {
    let stem = stem.as_ref();
    let name = format!(
        "{}_adapt_{j}.csv",
        stem.file_stem().and_then(|s| s.to_str()).unwrap_or("db")
    );
    let path = stem.with_file_name(name);
    std::fs::write(&path, format_adaptive(entries))?;
    Ok(path)
}

pub fn read_adaptive<T: Real>(path: impl AsRef<Path>) -> Result<Vec<AdaptiveEntry<T>>> {
    parse_adaptive(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material_db::{gen_ramberg_osgood_1d, RambergOsgood};

    fn bar_db() -> Database<f64> {
        let law = RambergOsgood {
            e: 1e4,
            nu: 0.0,
            alpha: 3.0,
            sigma0: 10.0,
            n: 3.0,
        };
        gen_ramberg_osgood_1d(&law, (-5.0, 60.0), 100).unwrap()
    }

    #[test]
    fn database_round_trip_is_exact() {
        let db = bar_db();
        let back: Database<f64> = parse_database(&format_database(&db)).unwrap();
        assert_eq!(back, db);
    }

    #[test]
    fn empty_and_mismatched_files_rejected() {
        assert!(matches!(parse_database::<f64>(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_database::<f64>("# only comments\n"), Err(Error::Parse { .. })));
        let err = parse_database::<f64>("eps_1,sig_1\n0.1,2.0,3.0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        let err = parse_database::<f64>("eps_1,eps_2,sig_1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_database::<f64>("# c\neps_1,sig_1\n0.1,abc\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn read_checks_expected_dimension() {
        let dir = std::env::temp_dir().join(format!("qdd_db_{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join("bar.csv");
        write_database(&bar_db(), &p).unwrap();
        assert!(read_database::<f64>(&p, Some(1)).is_ok());
        assert!(matches!(
            read_database::<f64>(&p, Some(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        std::fs::remove_dir_all(dir).ok();
    }
}
