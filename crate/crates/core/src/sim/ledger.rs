use std::io::Write;
use std::ops::AddAssign;

use super::Algorithm;
use crate::error::Result;

/// Estimated quantum queries per simulated variant.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Estimates {
    pub ql: f64,
    pub qlsg: f64,
    pub sql: f64,
    pub sqlsg: f64,
    pub eql: f64,
}

impl AddAssign for Estimates {
    fn add_assign(&mut self, o: Self) {
        self.ql += o.ql;
        self.qlsg += o.qlsg;
        self.sql += o.sql;
        self.sqlsg += o.sqlsg;
        self.eql += o.eql;
    }
}

impl Estimates {
    pub fn all(self) -> [f64; 5] {
        [self.ql, self.qlsg, self.sql, self.sqlsg, self.eql]
    }
}

/// One charged search: a move, or the failed search that ends a pass or phase.
#[derive(Debug, Clone, PartialEq)]
pub struct MoveRecord {
    pub level: usize,
    /// Moves made before this record in the whole run.
    pub k: u64,
    pub algo: Algorithm,
    pub list_size: usize,
    /// Marked items in the list (segment, for FindFirst) the final charge searched.
    pub t: usize,
    pub classical_calls: u64,
    pub est: Estimates,
    /// Modularity gain of the move, 0 for failed searches.
    pub delta: f64,
}

impl MoveRecord {
    pub fn is_move(&self) -> bool {
        self.delta > 0.0
    }
}

/// Per-move records and running totals of one run.
#[derive(Debug, Clone, Default)]
pub struct QueryLedger {
    records: Vec<MoveRecord>,
    keep_records: bool,
    classical_calls: u64,
    totals: Estimates,
}

pub const LEDGER_HEADER: [&str; 12] = [
    "level",
    "k",
    "algo",
    "list_size",
    "t",
    "classical_calls",
    "est_ql",
    "est_qlsg",
    "est_sql",
    "est_sqlsg",
    "est_eql",
    "delta",
];

impl QueryLedger {
    pub fn new(keep_records: bool) -> Self {
        QueryLedger {
            keep_records,
            ..Default::default()
        }
    }

    pub fn push(&mut self, record: MoveRecord) {
        self.classical_calls += record.classical_calls;
        self.totals += record.est;
        if self.keep_records {
            self.records.push(record);
        }
    }

    pub fn records(&self) -> &[MoveRecord] {
        &self.records
    }

    pub fn classical_calls(&self) -> u64 {
        self.classical_calls
    }

    pub fn totals(&self) -> Estimates {
        self.totals
    }

    /// Writes the records as CSV with [`LEDGER_HEADER`] columns.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(LEDGER_HEADER)?;
        for r in &self.records {
            w.write_record([
                r.level.to_string(),
                r.k.to_string(),
                r.algo.to_string(),
                r.list_size.to_string(),
                r.t.to_string(),
                r.classical_calls.to_string(),
                r.est.ql.to_string(),
                r.est.qlsg.to_string(),
                r.est.sql.to_string(),
                r.est.sqlsg.to_string(),
                r.est.eql.to_string(),
                r.delta.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}
