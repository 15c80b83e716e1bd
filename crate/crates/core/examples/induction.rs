//! Induction from A4 to S4: Frobenius reciprocity, the Mackey witness and a
//! basic module whose induction is not basic.

use std::sync::Arc;

use anyhow::Result;
use tautilt::algebra::GroupAlgebra;
use tautilt::field::FieldSpec;
use tautilt::functors::InductionContext;
use tautilt::group::{FiniteGroup, GroupSpec, SubgroupEmbedding};
use tautilt::module::{decompose, hom_dim, hom_space, Catalog, RepModule};

fn main() -> Result<()> {
    let sub = FiniteGroup::from_spec(
        &GroupSpec::from_json(include_str!("../data/groups/A4.json"))?,
        100,
    )?;
    let amb = FiniteGroup::from_spec(
        &GroupSpec::from_json(include_str!("../data/groups/S4.json"))?,
        100,
    )?;
    let f = FieldSpec::new(2, 2)?;
    let ctx = InductionContext::new(Arc::new(SubgroupEmbedding::new(sub.clone(), amb.clone())?));
    let small = Catalog::for_algebra(&GroupAlgebra::new(sub, f.clone()))?;
    let big = Catalog::for_algebra(&GroupAlgebra::new(amb, f))?;

    for i in 0..small.rank() {
        let s = small.simple(i);
        let ind = ctx.induce(s)?;
        let w = ctx.mackey(s)?;
        println!(
            "Ind {} = {}; Res Ind splits into {} twists, witness checked: {}",
            small.name(i),
            big.label(&ind)?,
            ctx.embedding().index(),
            w.restricted.is_hom_to(&w.twisted_sum, &w.witness)
        );
        for j in 0..big.rank() {
            let t = big.simple(j);
            assert_eq!(hom_dim(&ind, t)?, hom_dim(s, &ctx.restrict(t)?)?);
        }
    }

    // 1/s is the image of the unique map P1 -> P(s) for each nontrivial simple s
    let mut pieces = vec![small.simple(0).clone()];
    for j in 1..small.rank() {
        let homs = hom_space(small.pim(0), small.pim(j))?;
        let phi = &homs.basis[0];
        pieces.push(small.pim(j).submodule(&phi.column_basis())?);
    }
    let refs: Vec<&RepModule> = pieces.iter().collect();
    let m = RepModule::direct_sum(&refs)?;
    let d = decompose(&ctx.induce(&m)?)?;
    let parts: Vec<String> = (0..d.class_count())
        .map(|c| {
            Ok(format!(
                "{} x{}",
                big.label(&d.representative(c).module)?,
                d.classes[c].multiplicity()
            ))
        })
        .collect::<Result<_>>()?;
    let labels: Vec<String> = pieces
        .iter()
        .map(|p| small.label(p))
        .collect::<Result<_, _>>()?;
    println!(
        "Ind({}) = {}; basic: {}",
        labels.join(" ⊕ "),
        parts.join(" ⊕ "),
        d.is_basic()
    );
    Ok(())
}
