//! JSON and CSV renderings of a result document. Floats are written with 17
//! significant digits so that every value reads back bit-for-bit.

use std::fmt::Write as _;
use std::io;

use serde::Serialize;

use crate::config::Format;
use crate::document::ResultDocument;

/// Energy columns in the scan table.
pub const SCAN_LEVEL_COLUMNS: usize = 4;
pub const SCAN_HEADER: &str = "param,count,E0,E1,E2,E3";
pub const SPECTRUM_HEADER: &str = "index,re,im,residual,class";
pub const VERIFY_HEADER: &str = "gate,value,tolerance,pass";
pub const DIRAC_HEADER: &str = "level,eps,residual_upper,residual_lower,iterations";

/// `x` with 17 significant digits in scientific notation.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

struct Digits17;

impl serde_json::ser::Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Compact JSON with 17-digit floats.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// One table per document kind; the scan and spectrum headers are fixed.
pub fn to_csv(doc: &ResultDocument) -> String {
    let mut s = String::new();
    if let Some(rows) = &doc.scan {
        s.push_str(SCAN_HEADER);
        s.push('\n');
        for r in rows {
            let _ = write!(s, "{},{}", fmt_f64(r.param), r.count);
            for k in 0..SCAN_LEVEL_COLUMNS {
                s.push(',');
                s.push_str(&opt(r.energies.get(k).copied()));
            }
            s.push('\n');
        }
    } else if let Some(spec) = &doc.spectrum {
        s.push_str(SPECTRUM_HEADER);
        s.push('\n');
        for r in &spec.eigenvalues {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.index,
                fmt_f64(r.re),
                fmt_f64(r.im),
                opt(r.residual),
                r.class.as_str()
            );
        }
    } else if let Some(levels) = &doc.dirac {
        s.push_str(DIRAC_HEADER);
        s.push('\n');
        for l in levels {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                l.level,
                opt(l.eps),
                opt(l.residual_upper),
                opt(l.residual_lower),
                l.iterations.map(|i| i.to_string()).unwrap_or_default()
            );
        }
    } else {
        s.push_str(VERIFY_HEADER);
        s.push('\n');
        for g in &doc.gates {
            let _ = writeln!(s, "{},{},{},{}", g.name, fmt_f64(g.value), fmt_f64(g.tolerance), g.pass);
        }
    }
    s
}

pub fn render(doc: &ResultDocument, format: Format) -> serde_json::Result<String> {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => Ok(to_csv(doc)),
    }
}
