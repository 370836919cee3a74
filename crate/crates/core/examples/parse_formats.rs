//! Reads the same graph from edge-list, DIMACS and GML text and writes it back.
//!
//! cargo run --example parse_formats

use octrav::formats::{parse, write, GraphFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let edge_list = "# a triangle with a tail\nx y\ny z\nz x\nz w\n";
    let dimacs = "c same graph\np edge 4 4\ne 1 2\ne 2 3\ne 3 1\ne 3 4\n";
    let gml = r#"graph [
  node [ id 0 label "x" ]
  node [ id 1 label "y" ]
  node [ id 2 label "z" ]
  node [ id 3 label "w" ]
  edge [ source 0 target 1 ]
  edge [ source 1 target 2 ]
  edge [ source 2 target 0 ]
  edge [ source 2 target 3 ]
]"#;

    for (text, format) in [
        (edge_list, GraphFormat::EdgeList),
        (dimacs, GraphFormat::Dimacs),
        (gml, GraphFormat::Gml),
    ] {
        let parsed = parse(text, format)?;
        let g = &parsed.graph;
        println!("{}: n = {}, m = {}", format.name(), g.n(), g.m());
        for (u, v) in g.edges() {
            println!("  {} -- {}", g.label(u), g.label(v));
        }
    }

    let g = parse(edge_list, GraphFormat::EdgeList)?.graph;
    println!("\nas DIMACS:\n{}", write(&g, GraphFormat::Dimacs));
    println!("as GML:\n{}", write(&g, GraphFormat::Gml));
    Ok(())
}
