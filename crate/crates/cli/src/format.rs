//! Fixed float formatting shared by every output path, so reruns and
//! cross-platform diffs are byte-identical.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io;

/// 17 significant digits, lowercase exponent: `6.0000000000000000e0`.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Compact JSON (the trait defaults) whose floats go through [`float`]; non-finite floats become null.
struct Fixed;

impl Formatter for Fixed {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(float(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }
}

/// Write to stdout; a closed pipe (e.g. `| head`) ends output quietly.
pub fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Fixed);
    value.serialize(&mut ser).expect("serializing to memory cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(float(6.0), "6.0000000000000000e0");
        assert_eq!(float(-1.5), "-1.5000000000000000e0");
        assert_eq!(float(0.0009765625), "9.7656250000000000e-4");
        assert_eq!(float(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(to_json(&serde_json::json!({"v": 1.0, "n": 3, "x": f64::NAN})), r#"{"n":3,"v":1.0000000000000000e0,"x":null}"#);
    }
}
