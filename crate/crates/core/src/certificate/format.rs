//! `sharpcert-v1` text format: a header line, then one `name = value` line
//! per field in fixed order. The machine variant writes `name=value`; the
//! parser accepts both.

use std::fmt::Write as _;

use super::{Certificate, SpectrumEntry};
use crate::error::{Error, Result};
use crate::exact_arith::QuadExt;
use crate::form_matrix::ExactVector;

pub const CERT_HEADER: &str = "sharpcert-v1";

const FIELDS: [&str; 7] = [
    "dimension",
    "sharp_constant",
    "minor_values",
    "kernel",
    "kernel_residual_max",
    "spectrum",
    "equality_ratio",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

impl OutputFormat {
    pub(crate) fn separator(self) -> &'static str {
        match self {
            OutputFormat::Text => " = ",
            OutputFormat::Machine => "=",
        }
    }
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_certificate(cert: &Certificate, format: OutputFormat) -> String {
    let values = [
        cert.dimension.to_string(),
        cert.sharp_constant.to_string(),
        join(&cert.minor_values),
        cert.kernel_vector.to_string(),
        cert.kernel_residual_max.to_string(),
        join(
            cert.spectrum
                .iter()
                .map(|e| format!("{} x{}", e.eigenvalue, e.multiplicity)),
        ),
        cert.equality_ratio.to_string(),
    ];
    let mut out = String::new();
    out.push_str(CERT_HEADER);
    out.push('\n');
    for (name, value) in FIELDS.iter().zip(values) {
        let _ = writeln!(out, "{name}{}{value}", format.separator());
    }
    out
}

fn parse_list(value: &str) -> Result<Vec<QuadExt>> {
    value.split(", ").map(str::parse).collect()
}

fn parse_spectrum_entry(item: &str) -> Result<SpectrumEntry> {
    let (value, mult) = item
        .rsplit_once(" x")
        .ok_or_else(|| Error::Parse(format!("spectrum entry without multiplicity: {item:?}")))?;
    let multiplicity = mult
        .parse()
        .map_err(|_| Error::Parse(format!("invalid multiplicity in {item:?}")))?;
    Ok(SpectrumEntry {
        eigenvalue: value.parse()?,
        multiplicity,
    })
}

/// Strict parser: header first, every field exactly once in fixed order.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CERT_HEADER => {}
        _ => return Err(Error::Parse(format!("missing {CERT_HEADER} header"))),
    }
    let mut values = Vec::with_capacity(FIELDS.len());
    for expected in FIELDS {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing field {expected}")))?;
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("malformed line {line:?}")))?;
        if name.trim() != expected {
            return Err(Error::Parse(format!(
                "expected field {expected}, found {:?}",
                name.trim()
            )));
        }
        values.push(value.trim().to_string());
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("unexpected trailing line {extra:?}")));
    }
    let dimension = values[0]
        .parse()
        .map_err(|_| Error::Parse(format!("invalid dimension {:?}", values[0])))?;
    Ok(Certificate {
        dimension,
        sharp_constant: values[1].parse()?,
        minor_values: parse_list(&values[2])?,
        kernel_vector: ExactVector::new(parse_list(&values[3])?)?,
        kernel_residual_max: values[4].parse()?,
        spectrum: values[5]
            .split(", ")
            .map(parse_spectrum_entry)
            .collect::<Result<_>>()?,
        equality_ratio: values[6].parse()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::build_certificate;

    #[test]
    fn p4_text() {
        let text = render_certificate(&build_certificate(4).unwrap(), OutputFormat::Text);
        let expected = "sharpcert-v1\n\
            dimension = 4\n\
            sharp_constant = 3/2\n\
            minor_values = 1/2, 1/2, 3/8, 0\n\
            kernel = 1, 1/3, 1/3, 1/3\n\
            kernel_residual_max = 0\n\
            spectrum = 0 x1, 3/2 x2, 2 x1\n\
            equality_ratio = 3/2\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn round_trip_both_formats() {
        for p in [2, 3, 8, 12] {
            let cert = build_certificate(p).unwrap();
            for format in [OutputFormat::Text, OutputFormat::Machine] {
                let text = render_certificate(&cert, format);
                assert_eq!(parse_certificate(&text).unwrap(), cert);
            }
        }
    }

    #[test]
    fn truncated_and_garbled_inputs() {
        let text = render_certificate(&build_certificate(3).unwrap(), OutputFormat::Text);
        let truncated: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
        assert!(parse_certificate(&truncated).is_err());
        assert!(parse_certificate("").is_err());
        assert!(parse_certificate(&text.replace("sharpcert-v1", "sharpcert-v2")).is_err());
        assert!(parse_certificate(&text.replace("kernel =", "vector =")).is_err());
        assert!(parse_certificate(&format!("{text}extra = 1\n")).is_err());
        assert!(parse_certificate(&text.replace(" x1", " y1")).is_err());
    }
}
