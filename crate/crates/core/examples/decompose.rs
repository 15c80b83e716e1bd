//! Krull-Schmidt decomposition of the regular kA4-module and of a permutation module.

use std::sync::Arc;

use anyhow::Result;
use tautilt::algebra::GroupAlgebra;
use tautilt::field::FieldSpec;
use tautilt::group::{FiniteGroup, GroupSpec};
use tautilt::module::{decompose, Catalog, RepModule};

fn main() -> Result<()> {
    let g = FiniteGroup::from_spec(
        &GroupSpec::from_json(include_str!("../data/groups/A4.json"))?,
        100,
    )?;
    let f = FieldSpec::new(2, 2)?;
    let cat = Catalog::for_algebra(&GroupAlgebra::new(g.clone(), f.clone()))?;

    let reg = RepModule::regular(g.clone(), f.clone());
    let d = decompose(&reg)?;
    println!(
        "kA4 = {} summands in {} classes",
        d.summands.len(),
        d.class_count()
    );
    for c in 0..d.class_count() {
        let s = &d.representative(c).module;
        println!(
            "  {} x{} (dim {})",
            cat.label(s)?,
            d.classes[c].multiplicity(),
            s.dim()
        );
    }

    // the permutation module on the four points
    let gens = g
        .generators()
        .iter()
        .map(|perm| {
            let mut m = tautilt::matrix::FFMatrix::zeros(&f, 4, 4);
            for (i, &j) in perm.iter().enumerate() {
                m.set(j as usize, i, 1);
            }
            m
        })
        .collect();
    let perm = RepModule::new(Arc::clone(&g), f, gens)?;
    let d = decompose(&perm)?;
    let labels: Vec<String> = d
        .summands
        .iter()
        .map(|s| cat.label(&s.module))
        .collect::<Result<_, _>>()?;
    println!("permutation module on 4 points: {}", labels.join(" ⊕ "));
    Ok(())
}
