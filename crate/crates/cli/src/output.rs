use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use airy_core::SpaceTimeField;

use crate::scenario::{value_line, ScenarioResult};

fn create(dir: &Path, name: &str, header: &str) -> io::Result<BufWriter<fs::File>> {
    let mut out = BufWriter::new(fs::File::create(dir.join(name))?);
    writeln!(out, "# {header}")?;
    Ok(out)
}

fn write_field(dir: &Path, name: &str, field: &SpaceTimeField) -> io::Result<()> {
    let mut out = create(dir, name, "x,t,re,im")?;
    for (m, &t) in field.ts().iter().enumerate() {
        for (&x, &value) in field.xs().iter().zip(field.slice(m)) {
            writeln!(out, "{}", value_line(x, t, value))?;
        }
    }
    out.flush()
}

/// Writes every output file of a finished scenario into `dir`.
pub fn write_all(dir: &Path, result: &ScenarioResult) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    write_field(dir, "field_u.csv", &result.u)?;
    write_field(dir, "field_v.csv", &result.v)?;
    write_field(dir, "field_w.csv", &result.w)?;

    let mut out = create(dir, "coefficients.csv", "series,t,n,k,abs")?;
    for snap in &result.coefficients {
        for (n, k, c) in snap.coeffs.iter() {
            writeln!(
                out,
                "{},{:?},{n},{k:?},{:?}",
                snap.series,
                snap.time,
                c.norm()
            )?;
        }
    }
    out.flush()?;

    let mut out = create(
        dir,
        "decay_report.csv",
        "series,t,alpha,intercept,n_lo,n_hi,residual,excluded",
    )?;
    for row in &result.decay {
        let r = &row.report;
        writeln!(
            out,
            "{},{:?},{:?},{:?},{},{},{:?},{}",
            row.series, row.time, r.alpha, r.intercept, r.n_lo, r.n_hi, r.residual, r.excluded
        )?;
    }
    out.flush()?;

    let mut out = create(dir, "jumps.csv", "t,location,magnitude")?;
    for row in &result.jumps {
        writeln!(
            out,
            "{:?},{:?},{:?}",
            row.time, row.jump.location, row.jump.magnitude
        )?;
    }
    out.flush()?;

    let mut out = BufWriter::new(fs::File::create(dir.join("summary.txt"))?);
    for (key, value) in &result.summary {
        writeln!(out, "{key}: {value}")?;
    }
    out.flush()
}
