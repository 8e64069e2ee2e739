// Prints the five standard tables as text.
//
// Run with `cargo run --example reproduce_tables`, or pass a table id such
// as `t54` to print a single table.

use fdlat::report::{emit_table, Format, TableId, TableSpec};

pub fn run(ids: &[TableId]) -> fdlat::Result<()> {
    for &id in ids {
        let spec = TableSpec::standard(id);
        println!("== {}", id.as_str());
        print!("{}", emit_table(&spec, Format::Text)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> fdlat::Result<()> {
    let ids: Vec<TableId> = match std::env::args().nth(1) {
        Some(arg) => vec![arg.parse()?],
        None => vec![TableId::T51, TableId::T52, TableId::T53, TableId::T54, TableId::T55],
    };
    run(&ids)
}
