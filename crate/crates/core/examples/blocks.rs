//! Block decomposition of a few group algebras.

use anyhow::Result;
use tautilt::algebra::GroupAlgebra;
use tautilt::field::FieldSpec;
use tautilt::group::{FiniteGroup, GroupSpec};
use tautilt::module::Catalog;

fn main() -> Result<()> {
    let cases = [
        ("S3", include_str!("../data/groups/S3.json"), 2, 2),
        ("S3", include_str!("../data/groups/S3.json"), 3, 1),
        ("A4", include_str!("../data/groups/A4.json"), 2, 2),
        ("S4", include_str!("../data/groups/S4.json"), 2, 2),
        ("S3xC2", include_str!("../data/groups/S3xC2.json"), 3, 1),
    ];
    for (name, json, p, m) in cases {
        let g = FiniteGroup::from_spec(&GroupSpec::from_json(json)?, 1000)?;
        let a = GroupAlgebra::new(g.clone(), FieldSpec::new(p, m)?);
        println!(
            "k{name} over GF({p}^{m}), |G| = {}: {} block(s)",
            g.order(),
            a.blocks().len()
        );
        for b in a.blocks() {
            let cat = Catalog::for_block(b)?;
            let dims: Vec<usize> = cat.simples().iter().map(|s| s.dim()).collect();
            println!(
                "  block {}{}: dim {}, simples of dim {dims:?}, Cartan {:?}",
                b.index(),
                if b.is_principal() { " (principal)" } else { "" },
                b.dim(),
                cat.cartan_matrix()?
            );
        }
    }
    Ok(())
}
