//! Machine-readable report records and the human table view.

use std::io::Write;

use serde::{Serialize, Serializer};

/// Serialize a dB value that may be +infinity (JSON has no literal for it).
pub fn serialize_db<S: Serializer>(value: &f64, serializer: S) -> Result<S::Ok, S::Error> {
    if value.is_finite() {
        serializer.serialize_f64(*value)
    } else if *value > 0.0 {
        serializer.serialize_str("inf")
    } else {
        serializer.serialize_str("-inf")
    }
}

#[derive(Debug, Serialize)]
pub struct SendReport {
    pub out: String,
    pub capacity: usize,
    pub embedded_count: usize,
    pub mse: f64,
    #[serde(serialize_with = "serialize_db")]
    pub psnr_db: f64,
    pub ssim: f64,
}

#[derive(Debug, Serialize)]
pub struct EmbedReport {
    pub out: String,
    pub capacity: usize,
    pub embedded_count: usize,
}

#[derive(Debug, Serialize)]
pub struct StageReport {
    pub out: String,
    pub frames: usize,
    pub tail_samples: usize,
}

/// One evaluation record: a (file, method) pair with its four metrics.
#[derive(Debug, Clone, Serialize)]
pub struct EvalRecord {
    pub file: String,
    pub method: &'static str,
    pub mse: f64,
    #[serde(serialize_with = "serialize_db")]
    pub psnr_db: f64,
    pub ssim: f64,
    pub ber_percent: f64,
}

pub const METHOD_PROPOSED: &str = "proposed";
pub const METHOD_SILENCE: &str = "silence-interval";

/// Per-metric means over all records of one method.
pub fn aggregate(records: &[EvalRecord], method: &'static str) -> Option<EvalRecord> {
    let subset: Vec<&EvalRecord> = records.iter().filter(|r| r.method == method).collect();
    if subset.is_empty() {
        return None;
    }
    let n = subset.len() as f64;
    Some(EvalRecord {
        file: "(mean)".to_string(),
        method,
        mse: subset.iter().map(|r| r.mse).sum::<f64>() / n,
        psnr_db: subset.iter().map(|r| r.psnr_db).sum::<f64>() / n,
        ssim: subset.iter().map(|r| r.ssim).sum::<f64>() / n,
        ber_percent: subset.iter().map(|r| r.ber_percent).sum::<f64>() / n,
    })
}

pub fn write_records_jsonl<W: Write>(out: &mut W, records: &[EvalRecord]) -> std::io::Result<()> {
    for record in records {
        let line = serde_json::to_string(record).expect("records always serialize");
        writeln!(out, "{line}")?;
    }
    Ok(())
}

pub fn write_records_table<W: Write>(out: &mut W, records: &[EvalRecord]) -> std::io::Result<()> {
    writeln!(
        out,
        "{:<24} {:<18} {:>12} {:>10} {:>8} {:>8}",
        "file", "method", "mse", "psnr_db", "ssim", "ber%"
    )?;
    for r in records {
        let psnr = if r.psnr_db.is_finite() {
            format!("{:.4}", r.psnr_db)
        } else {
            "inf".to_string()
        };
        writeln!(
            out,
            "{:<24} {:<18} {:>12.4e} {:>10} {:>8.4} {:>8.3}",
            r.file, r.method, r.mse, psnr, r.ssim, r.ber_percent
        )?;
    }
    Ok(())
}
