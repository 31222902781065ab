//! Group definition files.
//!
//! ```json
//! {
//!   "name": "rank3_order4",
//!   "rank": 3,
//!   "generators": [[[0, 1, 0], [-1, 0, 0], [0, 0, -1]]],
//!   "metadata": {"expected_verdict": "Obstructed"}
//! }
//! ```
//!
//! Matrices are row-major and act on column vectors. Entries are JSON
//! integers, or decimal strings for values beyond 64 bits. `metadata` is
//! optional and carried through unchanged.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use crate::bigjson;
use crate::error::{Error, Result};
use crate::group::GLattice;
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct GroupDefinition {
    pub lattice: GLattice,
    pub metadata: BTreeMap<String, Value>,
}

pub fn parse_group_file(bytes: &[u8]) -> Result<GLattice> {
    parse_group_definition(bytes).map(|d| d.lattice)
}

pub fn parse_group_definition(bytes: &[u8]) -> Result<GroupDefinition> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let before = &bytes[..e.valid_up_to()];
        let line = 1 + before.iter().filter(|&&b| b == b'\n').count();
        let column = 1 + before.iter().rev().take_while(|&&b| b != b'\n').count();
        Error::Parse {
            line,
            column,
            message: "invalid UTF-8".into(),
        }
    })?;
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let Value::Object(obj) = value else {
        return Err(Error::validation("$", "expected a JSON object"));
    };

    let name = match obj.get("name") {
        None => "unnamed".to_string(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::validation("name", "expected a string")),
    };
    let rank = obj
        .get("rank")
        .ok_or_else(|| Error::validation("rank", "missing"))?
        .as_u64()
        .filter(|&r| r <= 4096)
        .ok_or_else(|| Error::validation("rank", "expected a non-negative integer"))? as usize;
    let gens = match obj.get("generators") {
        Some(Value::Array(a)) => a,
        Some(_) => return Err(Error::validation("generators", "expected an array")),
        None => return Err(Error::validation("generators", "missing")),
    };
    let generators = gens
        .iter()
        .enumerate()
        .map(|(i, g)| parse_matrix(g, rank, &format!("generators[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let metadata = match obj.get("metadata") {
        None | Some(Value::Null) => BTreeMap::new(),
        Some(Value::Object(m)) => m.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        Some(_) => return Err(Error::validation("metadata", "expected an object")),
    };
    for key in obj.keys() {
        if !matches!(key.as_str(), "name" | "rank" | "generators" | "metadata") {
            return Err(Error::validation(key.clone(), "unknown field"));
        }
    }
    Ok(GroupDefinition {
        lattice: GLattice::new(name, rank, generators)?,
        metadata,
    })
}

fn parse_matrix(v: &Value, rank: usize, field: &str) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::validation(field, "expected an array of rows"))?;
    if rows.len() != rank {
        return Err(Error::validation(
            field,
            format!("expected {rank} rows, found {}", rows.len()),
        ));
    }
    let mut entries: Vec<BigInt> = Vec::with_capacity(rank * rank);
    for (r, row) in rows.iter().enumerate() {
        let row_field = format!("{field}[{r}]");
        let row = row
            .as_array()
            .ok_or_else(|| Error::validation(&row_field, "expected an array"))?;
        if row.len() != rank {
            return Err(Error::validation(
                &row_field,
                format!("expected {rank} entries, found {}", row.len()),
            ));
        }
        for (c, x) in row.iter().enumerate() {
            let x = bigjson::from_value(x)
                .map_err(|m| Error::validation(format!("{row_field}[{c}]"), m))?;
            entries.push(x);
        }
    }
    Ok(IntMatrix::new(rank, rank, entries))
}

/// Serializes a lattice in the group definition format.
pub fn group_file_json(lattice: &GLattice, metadata: &BTreeMap<String, Value>) -> String {
    let mut obj = Map::new();
    obj.insert("name".into(), Value::from(lattice.name.clone()));
    obj.insert("rank".into(), Value::from(lattice.rank));
    obj.insert(
        "generators".into(),
        serde_json::to_value(&lattice.generators).expect("matrices serialize"),
    );
    obj.insert(
        "metadata".into(),
        Value::Object(metadata.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
    );
    let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("value serializes");
    s.push('\n');
    s
}
