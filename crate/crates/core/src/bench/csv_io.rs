//! CSV serialization of measurements, summaries and generated requests.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::graph::NodeId;

use super::{BenchError, DelayLevel, MeasurementRecord, RatioSummary};

/// Row of a generated request file, a subset of the measurement columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RequestRecord {
    pub grid_n: u32,
    pub bucket_lo_pct: u8,
    pub bucket_hi_pct: u8,
    pub delay_level: DelayLevel,
    pub request_id: u64,
    pub src: NodeId,
    pub dst: NodeId,
    pub delay_bound: f64,
}

pub fn write_measurements<W: Write>(
    writer: W,
    records: &[MeasurementRecord],
) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_measurements<R: Read>(reader: R) -> Result<Vec<MeasurementRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(reader);
    let mut out = Vec::new();
    for record in r.deserialize() {
        out.push(record?);
    }
    Ok(out)
}

pub fn write_summaries<W: Write>(writer: W, rows: &[RatioSummary]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_requests<W: Write>(writer: W, rows: &[RequestRecord]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
