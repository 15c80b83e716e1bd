//! The support τ-tilting poset of kS4 at p = 2, printed as DOT.

use std::sync::Arc;

use anyhow::Result;
use tautilt::algebra::GroupAlgebra;
use tautilt::field::FieldSpec;
use tautilt::group::{FiniteGroup, GroupSpec};
use tautilt::module::Catalog;
use tautilt::tilting::{enumerate_poset, Engine};

fn main() -> Result<()> {
    let g = FiniteGroup::from_spec(
        &GroupSpec::from_json(include_str!("../data/groups/S4.json"))?,
        100,
    )?;
    let mut cat = Catalog::for_algebra(&GroupAlgebra::new(g, FieldSpec::new(2, 2)?))?;
    cat.set_names(vec!["1'".into(), "2'".into()])?;
    let mut engine = Engine::new(Arc::new(cat))?;
    let poset = enumerate_poset(&mut engine, 100)?;
    println!("{} nodes, {} edges", poset.len(), poset.edges.len());
    for n in &poset.nodes {
        println!(
            "  #{} {}  (counting {}, approximation {})",
            n.id, n.label, n.certificate.counting, n.certificate.approximation
        );
    }
    print!("{}", poset.to_dot());
    Ok(())
}
