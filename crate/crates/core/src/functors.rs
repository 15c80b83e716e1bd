//! Induction, restriction and conjugation along a subgroup embedding.

use std::sync::Arc;

use crate::algebra::{Block, InertialGroup};
use crate::error::{Error, Result};
use crate::group::SubgroupEmbedding;
use crate::matrix::FFMatrix;
use crate::module::{is_isomorphic, RepModule};

#[derive(Clone, Debug)]
pub struct InductionContext {
    emb: Arc<SubgroupEmbedding>,
    block_filter: Option<Block>,
}

/// `Res Ind M`, `⊕_x xM` and an isomorphism between them.
#[derive(Clone, Debug)]
pub struct MackeyWitness {
    pub restricted: RepModule,
    pub twisted_sum: RepModule,
    /// `dim x dim`, from `restricted` to `twisted_sum`.
    pub witness: FFMatrix,
}

impl InductionContext {
    pub fn new(emb: Arc<SubgroupEmbedding>) -> Self {
        InductionContext {
            emb,
            block_filter: None,
        }
    }

    /// Cuts every induced module down to one block of the overgroup.
    pub fn with_block(mut self, block: Block) -> Result<Self> {
        if block.algebra().group().as_ref() != self.emb.amb().as_ref() {
            return Err(Error::GroupMismatch);
        }
        self.block_filter = Some(block);
        Ok(self)
    }

    pub fn embedding(&self) -> &Arc<SubgroupEmbedding> {
        &self.emb
    }

    pub fn block_filter(&self) -> Option<&Block> {
        self.block_filter.as_ref()
    }

    fn check_sub(&self, m: &RepModule) -> Result<()> {
        if m.group().as_ref() != self.emb.sub().as_ref() {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    /// `kG~ ⊗_{kG} M` on the basis `x_i ⊗ m_j` (coset major), optionally cut
    /// by the block filter.
    pub fn induce(&self, m: &RepModule) -> Result<RepModule> {
        let full = self.induce_full(m)?;
        match &self.block_filter {
            Some(b) => Ok(full.cut(b.idempotent())?.0),
            None => Ok(full),
        }
    }

    fn induce_full(&self, m: &RepModule) -> Result<RepModule> {
        self.check_sub(m)?;
        let emb = &self.emb;
        let amb = emb.amb();
        let f = m.field();
        let d = m.dim();
        let reps = emb.coset_reps();
        if d == 0 {
            return Ok(RepModule::zero(amb.clone(), f.clone()));
        }
        let n = reps.len() * d;
        let gens = amb
            .generator_indices()
            .iter()
            .map(|&g| {
                let mut out = FFMatrix::zeros(f, n, n);
                for (i, &x) in reps.iter().enumerate() {
                    let gx = amb.mul(g, x);
                    let j = emb.coset_of(gx);
                    let h = amb.mul(amb.inv(reps[j]), gx);
                    let h = emb
                        .preimage(h)
                        .expect("coset representative differs by a subgroup element");
                    out.set_block(j * d, i * d, m.action(h));
                }
                out
            })
            .collect();
        RepModule::new(amb.clone(), f.clone(), gens)
    }

    pub fn restrict(&self, m: &RepModule) -> Result<RepModule> {
        let emb = &self.emb;
        if m.group().as_ref() != emb.amb().as_ref() {
            return Err(Error::GroupMismatch);
        }
        let sub = emb.sub();
        let gens = sub
            .generator_indices()
            .iter()
            .map(|&s| m.action(emb.element_map()[s]).clone())
            .collect();
        RepModule::new(sub.clone(), m.field().clone(), gens)
    }

    /// `xM`: the subgroup element `g` acts by `ρ_M(x^-1 g x)`.
    pub fn twist(&self, x: usize, m: &RepModule) -> Result<RepModule> {
        self.check_sub(m)?;
        let emb = &self.emb;
        emb.require_normal()?;
        let sub = emb.sub();
        let gens = sub
            .generator_indices()
            .iter()
            .map(|&s| Ok(m.action(emb.conjugate_into_sub(x, s)?).clone()))
            .collect::<Result<Vec<_>>>()?;
        RepModule::new(sub.clone(), m.field().clone(), gens)
    }

    /// `Res Ind M ≅ ⊕_{x ∈ [G~/G]} xM`. On the coset-major bases the identity
    /// matrix intertwines; it is checked, not assumed.
    pub fn mackey(&self, m: &RepModule) -> Result<MackeyWitness> {
        self.emb.require_normal()?;
        let restricted = self.restrict(&self.induce_full(m)?)?;
        let twists = self
            .emb
            .coset_reps()
            .iter()
            .map(|&x| self.twist(x, m))
            .collect::<Result<Vec<_>>>()?;
        let twisted_sum = if m.dim() == 0 {
            restricted.clone()
        } else {
            let refs: Vec<&RepModule> = twists.iter().collect();
            RepModule::direct_sum(&refs)?
        };
        let witness = FFMatrix::identity(m.field(), restricted.dim());
        if !restricted.is_hom_to(&twisted_sum, &witness) {
            return Err(Error::DimensionMismatch(
                "Mackey witness does not intertwine".into(),
            ));
        }
        Ok(MackeyWitness {
            restricted,
            twisted_sum,
            witness,
        })
    }

    /// `xM ≅ M` for one representative `x` of each coset of `G` in `I`.
    pub fn is_invariant(&self, m: &RepModule, inertial: &InertialGroup) -> Result<bool> {
        for &x in inertial.coset_reps() {
            if is_isomorphic(&self.twist(x, m)?, m)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
