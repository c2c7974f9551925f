//! Moment tables with per-entry provenance. The table is itself a test
//! artifact: inserting the same slot twice with disagreeing values is an
//! error, never a silent overwrite.

use std::collections::BTreeMap;
use std::fmt;

use crate::qcore::number::BigInt;
use crate::qcore::poly::QPoly;

/// Which ensemble/representation a table holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Gue,
    QGueSymbolic,
    QGueNumeric,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Gue => write!(f, "gue"),
            Kind::QGueSymbolic => write!(f, "qgue"),
            Kind::QGueNumeric => write!(f, "qgue-numeric"),
        }
    }
}

/// Which formula produced an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Positive,
    Alternating,
    Hypergeometric,
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Positive => write!(f, "positive"),
            Provenance::Alternating => write!(f, "alternating"),
            Provenance::Hypergeometric => write!(f, "hypergeometric"),
            Provenance::Oracle => write!(f, "oracle"),
        }
    }
}

/// One stored moment value.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(BigInt),
    Poly(QPoly),
    Float(f64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Poly(p) => write!(f, "{p}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// Inconsistent double insertion.
#[derive(Clone, Debug)]
pub struct TableError {
    pub n: u64,
    pub p: u64,
    pub held: String,
    pub offered: String,
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "moment table conflict at (N={}, p={}): held {} vs offered {}",
            self.n, self.p, self.held, self.offered
        )
    }
}

impl std::error::Error for TableError {}

/// Exact float double-insertions are compared with this relative slack;
/// exact kinds must agree bit for bit.
const FLOAT_SLACK: f64 = 1e-12;

/// Moments indexed by (N, p), each entry carrying the formula that produced
/// it. Insertion is single-writer by contract.
#[derive(Debug, Default)]
pub struct MomentTable {
    kind: Option<Kind>,
    entries: BTreeMap<(u64, u64), (Value, Provenance)>,
}

impl MomentTable {
    pub fn new(kind: Kind) -> Self {
        MomentTable { kind: Some(kind), entries: BTreeMap::new() }
    }

    pub fn kind(&self) -> Option<Kind> {
        self.kind
    }

    /// Insert or cross-check. Equal re-insertion (any provenance) is fine
    /// and records nothing; a disagreeing value is rejected.
    pub fn insert(
        &mut self,
        n: u64,
        p: u64,
        value: Value,
        provenance: Provenance,
    ) -> Result<(), TableError> {
        if let Some((held, _)) = self.entries.get(&(n, p)) {
            let consistent = match (held, &value) {
                (Value::Int(a), Value::Int(b)) => a == b,
                (Value::Poly(a), Value::Poly(b)) => a == b,
                (Value::Float(a), Value::Float(b)) => {
                    (a - b).abs() <= FLOAT_SLACK * a.abs().max(b.abs()).max(1.0)
                }
                _ => false,
            };
            if !consistent {
                return Err(TableError {
                    n,
                    p,
                    held: held.to_string(),
                    offered: value.to_string(),
                });
            }
            return Ok(());
        }
        self.entries.insert((n, p), (value, provenance));
        Ok(())
    }

    pub fn get(&self, n: u64, p: u64) -> Option<&(Value, Provenance)> {
        self.entries.get(&(n, p))
    }

    /// Entries in deterministic (N, p) order.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64, &Value, Provenance)> {
        self.entries
            .iter()
            .map(|(&(n, p), (v, prov))| (n, p, v, *prov))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
