//! Runs every induction check for C3 ⊴ S3 at p = 3 and for A4 ⊴ S4 at p = 2.

use std::sync::Arc;

use anyhow::Result;
use tautilt::field::FieldSpec;
use tautilt::group::{FiniteGroup, GroupSpec, SubgroupEmbedding};
use tautilt::verify::{TheoremId, Verifier};

fn load(json: &str) -> Result<Arc<FiniteGroup>> {
    Ok(FiniteGroup::from_spec(&GroupSpec::from_json(json)?, 1000)?)
}

fn main() -> Result<()> {
    let cases = [
        (
            "C3 in S3",
            include_str!("../data/groups/C3.json"),
            include_str!("../data/groups/S3.json"),
            3,
            1,
        ),
        (
            "A4 in S4",
            include_str!("../data/groups/A4.json"),
            include_str!("../data/groups/S4.json"),
            2,
            2,
        ),
    ];
    for (name, sub, amb, p, m) in cases {
        let emb = Arc::new(SubgroupEmbedding::new(load(sub)?, load(amb)?)?);
        let mut v = Verifier::new(emb, FieldSpec::new(p, m)?, 0, 1000)?;
        let report = v.run(&TheoremId::ALL)?;
        println!(
            "{name}: {} sub nodes, {} amb nodes, invariant {:?}",
            report.sub_nodes, report.amb_nodes, report.invariant_nodes
        );
        for t in &report.theorems {
            println!(
                "  {:<5} {:>3} clauses  {}",
                t.theorem.as_str(),
                t.clauses.len(),
                if t.passed { "pass" } else { "FAIL" }
            );
        }
        let map = v.induced_map();
        println!(
            "  induced map: injective {}, surjective {}, order isomorphism {}",
            map.injective,
            map.surjective,
            map.is_order_isomorphism()
        );
    }
    Ok(())
}
