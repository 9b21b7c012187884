//! Reading the block-structured ring files used by the command line tool.

use tckit::spec_file::parse_spec;

const SRC: &str = r#"
# the cubical cone over F_2
ring { p = 2; vars = [x, y, z]; weights = [1, 1, 1]; quotient = ["x^3 + y^3 + z^3"]; }
ideal { gens = ["y", "z"]; u = "x^2"; }
module {
    shifts = [0, 0];
    relations = [["y", "z"]];
    submodule = [["y", "0"], ["z", "0"]];
    element = ["x^2", "0"];
}
formal_sum { vars = [x1, x2]; terms = "family(e>=1){ x1^(-1/p^e) * x2^(-e) }"; }
"#;

fn main() -> tckit::Result<()> {
    let spec = parse_spec(SRC)?;
    println!("ring: {}", spec.ring.describe());
    println!("ideal: {}", spec.ideal.as_ref().unwrap());
    println!("u: {}", spec.u.as_ref().unwrap());
    let module = spec.module.as_ref().unwrap();
    println!("module rank {} with {} relations", module.module.rank(), module.module.relations().len());
    let hull = spec.formal_sum.as_ref().unwrap();
    println!("formal sum: {}", hull.sum.display_with(&hull.names));

    let err = parse_spec("ring { p = 6; vars = [x]; }").unwrap_err();
    println!("p = 6: {err}");
    Ok(())
}
