//! Syzygies and Auslander-Reiten translates of the simple kS4-modules, computed
//! as Ω² and through the Nakayama functor.

use anyhow::Result;
use tautilt::algebra::GroupAlgebra;
use tautilt::field::FieldSpec;
use tautilt::group::{FiniteGroup, GroupSpec};
use tautilt::module::{is_isomorphic, Catalog};

fn main() -> Result<()> {
    let g = FiniteGroup::from_spec(
        &GroupSpec::from_json(include_str!("../data/groups/S4.json"))?,
        100,
    )?;
    let cat = Catalog::for_algebra(&GroupAlgebra::new(g, FieldSpec::new(2, 2)?))?;
    for i in 0..cat.rank() {
        let s = cat.simple(i);
        let omega = cat.syzygy(s)?;
        let tau = cat.tau(s)?;
        let nak = cat.tau_nakayama(s)?;
        println!(
            "S{}: Ω = {} (dim {}), τ = {} (dim {}), routes agree: {}",
            cat.name(i),
            cat.label(&omega)?,
            omega.dim(),
            cat.label(&tau)?,
            tau.dim(),
            is_isomorphic(&tau, &nak)?.is_some()
        );
    }
    for i in 0..cat.rank() {
        println!("τ P{} has dim {}", cat.name(i), cat.tau(cat.pim(i))?.dim());
    }
    Ok(())
}
