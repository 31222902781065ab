//! Writing and reading the JSON group file format.

use std::collections::BTreeMap;

use multinv::catalog::builtin;
use multinv::format::{group_file_json, parse_group_definition, parse_group_file};

pub fn run_example() -> multinv::Result<()> {
    let l = builtin("rank3_order4")?;
    let mut metadata = BTreeMap::new();
    metadata.insert("source".to_string(), serde_json::json!("builtin catalog"));
    let text = group_file_json(&l, &metadata);
    println!("{text}");

    let def = parse_group_definition(text.as_bytes())?;
    assert_eq!(def.lattice, l);
    println!("round trip ok, metadata {:?}", def.metadata);

    let bad = br#"{"name": "bad", "rank": 2, "generators": [[[1, 0], [0, 2]]]}"#;
    match parse_group_file(bad) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => println!("accepted a non-invertible generator"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> multinv::Result<()> {
    run_example()
}
