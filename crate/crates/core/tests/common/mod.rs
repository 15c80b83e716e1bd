#![allow(dead_code)]

use std::sync::Arc;

use tautilt::algebra::GroupAlgebra;
use tautilt::field::{Field, FieldSpec};
use tautilt::group::{FiniteGroup, GroupSpec, SubgroupEmbedding};
use tautilt::module::{Catalog, RepModule};
use tautilt::tilting::{enumerate_poset, Engine};

pub fn group_json(name: &str) -> String {
    let path = format!("{}/data/groups/{name}.json", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn group(name: &str) -> Arc<FiniteGroup> {
    FiniteGroup::from_spec(&GroupSpec::from_json(&group_json(name)).unwrap(), 10_000).unwrap()
}

pub fn field(p: u32, m: u32) -> Field {
    FieldSpec::new(p, m).unwrap()
}

pub fn embedding(sub: &str, amb: &str) -> Arc<SubgroupEmbedding> {
    Arc::new(SubgroupEmbedding::new(group(sub), group(amb)).unwrap())
}

pub fn catalog(g: &Arc<FiniteGroup>, f: &Field) -> Catalog {
    Catalog::for_algebra(&GroupAlgebra::new(g.clone(), f.clone())).unwrap()
}

/// Simples, PIMs, radicals, syzygies, sums of simples and every module met
/// while enumerating the poset, capped at dimension `max_dim`.
pub fn corpus(cat: &Arc<Catalog>, max_dim: usize) -> Vec<RepModule> {
    let mut out = vec![
        RepModule::trivial(cat.group().clone(), cat.field().clone()),
        cat.regular().clone(),
    ];
    for i in 0..cat.rank() {
        let s = cat.simple(i).clone();
        let p = cat.pim(i).clone();
        let rad = cat.radical_module(&p).unwrap();
        let omega2 = cat.syzygy(&rad).unwrap();
        out.extend([s.clone(), p, rad, omega2]);
        for j in i..cat.rank() {
            out.push(RepModule::direct_sum(&[&s, cat.simple(j)]).unwrap());
        }
    }
    let mut engine = Engine::new(cat.clone()).unwrap();
    enumerate_poset(&mut engine, 1000).unwrap();
    out.extend((0..engine.registry_len()).map(|i| engine.module(i).clone()));
    out.retain(|m| m.dim() > 0 && m.dim() <= max_dim);
    out
}
