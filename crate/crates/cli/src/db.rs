//! The curve database: a CSV file `label,a1,a2,a3,a4,a6`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use selmer_core::CurveQ;
use serde::Deserialize;

/// Shipped with the binary and used when no other database is given.
pub const BUNDLED: &str = include_str!("../data/curves.csv");

#[derive(Clone, Debug, Deserialize)]
pub struct CurveRecord {
    pub label: String,
    pub a1: String,
    pub a2: String,
    pub a3: String,
    pub a4: String,
    pub a6: String,
}

impl CurveRecord {
    pub fn a_invariants(&self) -> Result<[BigInt; 5], String> {
        let parse = |s: &str| s.trim().parse::<BigInt>().map_err(|_| format!("{}: bad coefficient {s:?}", self.label));
        Ok([parse(&self.a1)?, parse(&self.a2)?, parse(&self.a3)?, parse(&self.a4)?, parse(&self.a6)?])
    }
}

#[derive(Debug)]
pub struct DbError(pub String);

impl fmt::Display for DbError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug)]
pub struct CurveDb {
    source: String,
    curves: BTreeMap<String, CurveQ>,
}

impl CurveDb {
    pub fn bundled() -> Result<Self, DbError> {
        Self::parse(BUNDLED, "bundled database")
    }

    pub fn open(path: &Path) -> Result<Self, DbError> {
        let text = std::fs::read_to_string(path).map_err(|e| DbError(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, source: &str) -> Result<Self, DbError> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
        let mut curves = BTreeMap::new();
        for row in reader.deserialize::<CurveRecord>() {
            let rec = row.map_err(|e| DbError(format!("{source}: {e}")))?;
            let a = rec.a_invariants().map_err(|e| DbError(format!("{source}: {e}")))?;
            let curve = CurveQ::new(a).map_err(|e| DbError(format!("{source}: {}: {e}", rec.label)))?;
            if curves.insert(rec.label.clone(), curve).is_some() {
                return Err(DbError(format!("{source}: duplicate label {}", rec.label)));
            }
        }
        Ok(CurveDb { source: source.to_string(), curves })
    }

    pub fn get(&self, label: &str) -> Option<&CurveQ> {
        self.curves.get(label)
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.curves.keys().map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_conductors_match_labels() {
        let db = CurveDb::bundled().unwrap();
        assert!(db.labels().count() >= 15);
        for label in db.labels() {
            let e = db.get(label).unwrap();
            let n: String = label.chars().take_while(|c| c.is_ascii_digit()).collect();
            match e.conductor_if_semistable() {
                Ok(c) => assert_eq!(c.to_string(), n, "{label}"),
                Err(_) => assert_eq!(label, "20a1"),
            }
        }
    }

    #[test]
    fn rejects_duplicates_and_garbage() {
        let dup = "label,a1,a2,a3,a4,a6\nx,0,0,1,-1,0\nx,0,0,1,-1,0\n";
        assert!(CurveDb::parse(dup, "t").is_err());
        let bad = "label,a1,a2,a3,a4,a6\nx,0,0,one,-1,0\n";
        assert!(CurveDb::parse(bad, "t").is_err());
        let singular = "label,a1,a2,a3,a4,a6\nx,0,0,0,0,0\n";
        assert!(CurveDb::parse(singular, "t").is_err());
    }
}
