//! Mechanical checks of the statements relating invariant support τ-tilting
//! modules over a block of a normal subgroup to support τ-tilting modules over
//! the overgroup.
//!
//! A [`Verifier`] enumerates both posets once and then runs any selection of
//! checks, each producing a [`TheoremReport`] with one clause per input.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{covers, inertial_group, Block, GroupAlgebra, InertialGroup};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::functors::InductionContext;
use crate::group::{GroupSpec, Perm, SubgroupEmbedding};
use crate::matrix::{FFMatrix, MatrixData};
use crate::module::{is_isomorphic, Catalog, FieldData, RepModule};
use crate::tilting::{enumerate_poset, Engine, HassePoset, Pair};

pub const REPORT_SCHEMA: &str = "tautilt.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// Projective covers, syzygies and translates of invariant modules commute
    /// with twisting and induction.
    InvariantTranslates,
    /// `Ind M` is support τ-tilting over the overgroup.
    InducedSupportTilting,
    /// `B~ Ind M` is support τ-tilting over each covering block.
    BlockInduction,
    /// Induction preserves the order into each covering block.
    OrderPreserved,
    /// `M` is support τ-tilting, re-derived from `Ind M` by restriction.
    RestrictionCriteria,
    /// Support τ-tilting and the order are both preserved and reflected.
    OrderIff,
    /// Every node is invariant in a direct product and induces to a support
    /// τ-tilting module of dimension `|G2| dim M`.
    DirectProduct,
    /// Induction to the inertial group lands in blocks covering `B`.
    CoveringBlocks,
}

impl TheoremId {
    pub const ALL: [TheoremId; 7] = [
        TheoremId::InvariantTranslates,
        TheoremId::InducedSupportTilting,
        TheoremId::BlockInduction,
        TheoremId::OrderPreserved,
        TheoremId::RestrictionCriteria,
        TheoremId::OrderIff,
        TheoremId::CoveringBlocks,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::InvariantTranslates => "L3.1",
            TheoremId::InducedSupportTilting => "T3.2",
            TheoremId::BlockInduction => "T3.3",
            TheoremId::OrderPreserved => "C3.4",
            TheoremId::RestrictionCriteria => "P3.5",
            TheoremId::OrderIff => "T3.6",
            TheoremId::DirectProduct => "E3.8",
            TheoremId::CoveringBlocks => "P2.11",
        }
    }

    /// Parses `all` or a comma separated list of ids.
    pub fn parse_list(s: &str) -> Result<Vec<TheoremId>> {
        if s.trim() == "all" {
            return Ok(Self::ALL.to_vec());
        }
        let mut out: Vec<TheoremId> = s
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            TheoremId::InvariantTranslates,
            TheoremId::InducedSupportTilting,
            TheoremId::BlockInduction,
            TheoremId::OrderPreserved,
            TheoremId::RestrictionCriteria,
            TheoremId::OrderIff,
            TheoremId::DirectProduct,
            TheoremId::CoveringBlocks,
        ]
        .into_iter()
        .find(|t| t.as_str().eq_ignore_ascii_case(s))
        .ok_or_else(|| Error::Parse(format!("unknown theorem id {s:?}")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    pub input: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<MatrixData>,
}

impl Clause {
    fn new(name: impl Into<String>, input: impl Into<String>, passed: bool) -> Self {
        Clause {
            name: name.into(),
            input: input.into(),
            passed,
            detail: None,
            witness: None,
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    fn witness(mut self, w: Option<FFMatrix>) -> Self {
        self.witness = w.map(|m| m.to_data());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub inputs: Vec<String>,
    pub clauses: Vec<Clause>,
    pub passed: bool,
}

impl TheoremReport {
    fn new(theorem: TheoremId, inputs: Vec<String>, clauses: Vec<Clause>) -> Self {
        let passed = clauses.iter().all(|c| c.passed);
        TheoremReport {
            theorem,
            inputs,
            clauses,
            passed,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.passed)
    }
}

/// Where induction sends the invariant nodes of the subgroup poset.
#[derive(Clone, Debug, Serialize)]
pub struct InducedMap {
    /// `(subgroup node, overgroup node)`; `None` when `Ind M` is not a node.
    pub pairs: Vec<(usize, Option<usize>)>,
    pub injective: bool,
    /// Every overgroup node is hit.
    pub surjective: bool,
    pub order_preserving: bool,
    pub order_reflecting: bool,
}

impl InducedMap {
    pub fn is_order_isomorphism(&self) -> bool {
        self.injective && self.surjective && self.order_preserving && self.order_reflecting
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub field: FieldData,
    pub sub: GroupSpec,
    pub amb: GroupSpec,
    pub block: usize,
    pub coset_reps: Vec<Perm>,
    pub inertial_reps: Vec<Perm>,
    pub sub_nodes: usize,
    pub amb_nodes: usize,
    pub invariant_nodes: Vec<usize>,
    pub map: InducedMap,
    pub theorems: Vec<TheoremReport>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub struct Verifier {
    ctx: InductionContext,
    block: Block,
    inertial: InertialGroup,
    sub: Engine,
    sub_poset: HassePoset,
    amb: Engine,
    amb_poset: HassePoset,
    amb_algebra: Arc<GroupAlgebra>,
    covering: Vec<(Block, Engine)>,
    invariant: Vec<usize>,
    induced: Vec<Pair>,
}

impl Verifier {
    /// Enumerates `sτ-tilt B` for block `block` of the subgroup and
    /// `sτ-tilt kG~`, and finds the invariant nodes.
    pub fn new(
        emb: Arc<SubgroupEmbedding>,
        field: Field,
        block: usize,
        node_cap: usize,
    ) -> Result<Self> {
        emb.require_normal()?;
        let a = GroupAlgebra::new(emb.sub().clone(), field.clone());
        let at = GroupAlgebra::new(emb.amb().clone(), field);
        let b = a
            .blocks()
            .get(block)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "block {block} out of range ({} blocks)",
                    a.blocks().len()
                ))
            })?
            .clone();
        let inertial = inertial_group(&b, &emb)?;
        let mut sub = Engine::new(Arc::new(Catalog::for_block(&b)?))?;
        let sub_poset = enumerate_poset(&mut sub, node_cap)?;
        let mut amb = Engine::new(Arc::new(Catalog::for_algebra(&at)?))?;
        let amb_poset = enumerate_poset(&mut amb, node_cap)?;
        let mut covering = Vec::new();
        for bt in at.blocks() {
            if covers(bt, &b, &emb)? {
                covering.push((bt.clone(), Engine::new(Arc::new(Catalog::for_block(bt)?))?));
            }
        }
        let ctx = InductionContext::new(emb);
        let mut invariant = Vec::new();
        let mut induced = Vec::new();
        for node in &sub_poset.nodes {
            let m = sub.pair_module(&node.pair)?;
            if ctx.is_invariant(&m, &inertial)? {
                invariant.push(node.id);
                induced.push(amb.support_pair(&ctx.induce(&m)?)?);
            }
        }
        Ok(Verifier {
            ctx,
            block: b,
            inertial,
            sub,
            sub_poset,
            amb,
            amb_poset,
            amb_algebra: at,
            covering,
            invariant,
            induced,
        })
    }

    pub fn sub_poset(&self) -> &HassePoset {
        &self.sub_poset
    }

    pub fn amb_poset(&self) -> &HassePoset {
        &self.amb_poset
    }

    pub fn sub_engine(&mut self) -> &mut Engine {
        &mut self.sub
    }

    pub fn amb_engine(&mut self) -> &mut Engine {
        &mut self.amb
    }

    pub fn context(&self) -> &InductionContext {
        &self.ctx
    }

    pub fn inertial(&self) -> &InertialGroup {
        &self.inertial
    }

    /// Ids of the invariant nodes of the subgroup poset.
    pub fn invariant_nodes(&self) -> &[usize] {
        &self.invariant
    }

    pub fn covering_blocks(&self) -> impl Iterator<Item = &Block> {
        self.covering.iter().map(|c| &c.0)
    }

    fn node_module(&self, id: usize) -> Result<RepModule> {
        self.sub.pair_module(&self.sub_poset.nodes[id].pair)
    }

    fn node_label(&self, id: usize) -> String {
        format!("#{id} {}", self.sub_poset.nodes[id].label)
    }

    pub fn induced_map(&self) -> InducedMap {
        let pairs: Vec<(usize, Option<usize>)> = self
            .invariant
            .iter()
            .zip(&self.induced)
            .map(|(&i, p)| (i, self.amb_poset.node_of(p)))
            .collect();
        let hits: BTreeSet<usize> = pairs.iter().filter_map(|p| p.1).collect();
        let complete = pairs.iter().all(|p| p.1.is_some());
        let injective = complete && hits.len() == pairs.len();
        let surjective = hits.len() == self.amb_poset.len();
        let mut preserving = complete;
        let mut reflecting = complete;
        if complete {
            for &(a, ia) in &pairs {
                for &(b, ib) in &pairs {
                    let below = self.sub_poset.geq(a, b);
                    let above = self.amb_poset.geq(ia.unwrap(), ib.unwrap());
                    preserving &= !below || above;
                    reflecting &= !above || below;
                }
            }
        }
        InducedMap {
            pairs,
            injective,
            surjective,
            order_preserving: preserving,
            order_reflecting: reflecting,
        }
    }

    pub fn run(&mut self, which: &[TheoremId]) -> Result<VerificationReport> {
        let mut theorems = Vec::new();
        for &t in which {
            theorems.push(self.check(t)?);
        }
        let emb = self.ctx.embedding().clone();
        let amb = emb.amb();
        Ok(VerificationReport {
            schema: REPORT_SCHEMA,
            field: FieldData::of(self.sub.catalog().field()),
            sub: emb.sub().to_spec(),
            amb: amb.to_spec(),
            block: self.block.index(),
            coset_reps: emb
                .coset_reps()
                .iter()
                .map(|&x| amb.element(x).clone())
                .collect(),
            inertial_reps: self
                .inertial
                .coset_reps()
                .iter()
                .map(|&x| amb.element(x).clone())
                .collect(),
            sub_nodes: self.sub_poset.len(),
            amb_nodes: self.amb_poset.len(),
            invariant_nodes: self.invariant.clone(),
            map: self.induced_map(),
            passed: theorems.iter().all(|t| t.passed),
            theorems,
        })
    }

    pub fn check(&mut self, t: TheoremId) -> Result<TheoremReport> {
        match t {
            TheoremId::InvariantTranslates => self.check_invariant_translates(),
            TheoremId::InducedSupportTilting => self.check_induced_support_tilting(),
            TheoremId::BlockInduction => self.check_block_induction(),
            TheoremId::OrderPreserved => self.check_order_preserved(),
            TheoremId::RestrictionCriteria => self.check_restriction_criteria(),
            TheoremId::OrderIff => self.check_order_iff(),
            TheoremId::DirectProduct => self.check_direct_product(),
            TheoremId::CoveringBlocks => self.check_covering_blocks(),
        }
    }

    fn invariant_inputs(&self) -> Vec<String> {
        self.invariant.iter().map(|&i| self.node_label(i)).collect()
    }

    /// Induction to the inertial group, where every twist preserves `B`.
    fn inertial_context(&self) -> InductionContext {
        if self.inertial_is_everything() {
            return self.ctx.clone();
        }
        InductionContext::new(self.inertial.sub_embedding().clone())
    }

    fn inertial_is_everything(&self) -> bool {
        self.inertial.group().order() == self.ctx.embedding().amb().order()
    }

    /// Catalog of `kI`, reusing the overgroup's when `I = G~`.
    fn inertial_catalog(&self) -> Result<Arc<Catalog>> {
        if self.inertial_is_everything() {
            return Ok(self.amb.catalog().clone());
        }
        let a = GroupAlgebra::new(
            self.inertial.group().clone(),
            self.amb_algebra.field().clone(),
        );
        Ok(Arc::new(Catalog::for_algebra(&a)?))
    }

    pub fn check_invariant_translates(&mut self) -> Result<TheoremReport> {
        let ctx = self.inertial_context();
        let top = self.inertial_catalog()?;
        let cat = self.sub.catalog().clone();
        let mut clauses = Vec::new();
        for &id in &self.invariant {
            let input = self.node_label(id);
            let m = self.node_module(id)?;
            let (omega, _, cover) = cat.syzygy_with_cover(&m)?;
            for &x in self.inertial.coset_reps() {
                let w = is_isomorphic(&ctx.twist(x, &cover.module)?, &cover.module)?;
                clauses.push(
                    Clause::new(format!("(1) xP(M) ≅ P(M), x = {x}"), &input, w.is_some())
                        .witness(w),
                );
                let w = is_isomorphic(&ctx.twist(x, &omega)?, &omega)?;
                clauses.push(
                    Clause::new(format!("(2) xΩ(M) ≅ Ω(M), x = {x}"), &input, w.is_some())
                        .witness(w),
                );
            }
            let ind = ctx.induce(&m)?;
            let w = is_isomorphic(&ctx.induce(&omega)?, &top.syzygy(&ind)?)?;
            clauses.push(Clause::new("(3) Ind Ω(M) ≅ Ω(Ind M)", &input, w.is_some()).witness(w));
            let lhs = top.tau_checked(&ind)?;
            let rhs = ctx.induce(&cat.tau_checked(&m)?)?;
            let w = is_isomorphic(&lhs, &rhs)?;
            clauses.push(
                Clause::new("(4) τ(Ind M) ≅ Ind τM", &input, w.is_some())
                    .detail(format!("dim {} vs {}", lhs.dim(), rhs.dim()))
                    .witness(w),
            );
        }
        Ok(TheoremReport::new(
            TheoremId::InvariantTranslates,
            self.invariant_inputs(),
            clauses,
        ))
    }

    pub fn check_induced_support_tilting(&mut self) -> Result<TheoremReport> {
        let mut clauses = Vec::new();
        for (k, &id) in self.invariant.clone().iter().enumerate() {
            let pair = self.induced[k].clone();
            let ok = self.amb.is_support_tau_tilting(&pair)?;
            clauses.push(
                Clause::new("Ind M is support τ-tilting", self.node_label(id), ok).detail(format!(
                    "|Ind M| = {}, |P| = {}, rank {}",
                    pair.m.len(),
                    pair.p.len(),
                    self.amb.rank()
                )),
            );
        }
        Ok(TheoremReport::new(
            TheoremId::InducedSupportTilting,
            self.invariant_inputs(),
            clauses,
        ))
    }

    /// `B~ Ind M` for every invariant node, as pairs over each covering block.
    fn block_induced(&mut self) -> Result<Vec<Vec<Pair>>> {
        let mut out = Vec::new();
        for k in 0..self.covering.len() {
            let ctx = self.ctx.clone().with_block(self.covering[k].0.clone())?;
            let mut pairs = Vec::new();
            for &id in &self.invariant.clone() {
                let m = self.node_module(id)?;
                pairs.push(self.covering[k].1.support_pair(&ctx.induce(&m)?)?);
            }
            out.push(pairs);
        }
        Ok(out)
    }

    pub fn check_block_induction(&mut self) -> Result<TheoremReport> {
        let induced = self.block_induced()?;
        let mut clauses = Vec::new();
        for (k, pairs) in induced.iter().enumerate() {
            let index = self.covering[k].0.index();
            for (j, pair) in pairs.iter().enumerate() {
                let ok = self.covering[k].1.is_support_tau_tilting(pair)?;
                clauses.push(Clause::new(
                    format!("B~{index} Ind M is support τ-tilting"),
                    self.node_label(self.invariant[j]),
                    ok,
                ));
            }
        }
        Ok(TheoremReport::new(
            TheoremId::BlockInduction,
            self.invariant_inputs(),
            clauses,
        ))
    }

    pub fn check_order_preserved(&mut self) -> Result<TheoremReport> {
        let induced = self.block_induced()?;
        let mut clauses = Vec::new();
        for (k, pairs) in induced.iter().enumerate() {
            let index = self.covering[k].0.index();
            for (i, &a) in self.invariant.iter().enumerate() {
                for (j, &b) in self.invariant.iter().enumerate() {
                    if a == b || !self.sub_poset.geq(a, b) {
                        continue;
                    }
                    let ok = self.covering[k].1.geq(&pairs[i], &pairs[j])?;
                    clauses.push(Clause::new(
                        format!("B~{index} Ind M ≥ B~{index} Ind M'"),
                        format!("#{a} ≥ #{b}"),
                        ok,
                    ));
                }
            }
        }
        Ok(TheoremReport::new(
            TheoremId::OrderPreserved,
            self.invariant_inputs(),
            clauses,
        ))
    }

    pub fn check_restriction_criteria(&mut self) -> Result<TheoremReport> {
        let res_ctx = self.ctx.clone();
        let mut clauses = Vec::new();
        for (k, &id) in self.invariant.clone().iter().enumerate() {
            let input = self.node_label(id);
            let pair = self.sub_poset.nodes[id].pair.clone();
            let tilde_p = &self.induced[k].p;
            let q = if tilde_p.is_empty() {
                RepModule::zero(
                    self.ctx.embedding().sub().clone(),
                    self.sub.catalog().field().clone(),
                )
            } else {
                let parts: Vec<&RepModule> =
                    tilde_p.iter().map(|&i| self.amb.catalog().pim(i)).collect();
                let p = RepModule::direct_sum(&parts)?;
                res_ctx.restrict(&p)?.cut(self.block.idempotent())?.0
            };
            let q_ids = self.sub.register(&q)?;
            let q_pims: Option<Vec<usize>> = q_ids.iter().map(|&i| self.sub.pim_of(i)).collect();
            let Some(q_pims) = q_pims else {
                clauses.push(Clause::new("B Res P~ is projective", &input, false));
                continue;
            };
            let rigid = self.sub.is_tau_rigid_ids(&pair.m)?;
            clauses.push(Clause::new("M is τ-rigid", &input, rigid));
            let hom_free = q_pims
                .iter()
                .all(|&i| pair.m.iter().all(|&j| self.sub.composition(j)[i] == 0));
            clauses.push(Clause::new("Hom(B Res P~, M) = 0", &input, hom_free));
            let count = pair.m.len() + q_pims.len() == self.sub.rank();
            clauses.push(
                Clause::new("|M| + |B Res P~| = |B|", &input, count).detail(format!(
                    "{} + {} vs {}",
                    pair.m.len(),
                    q_pims.len(),
                    self.sub.rank()
                )),
            );
            let derived = Pair::new(pair.m.clone(), q_pims);
            let ok = rigid && hom_free && self.sub.certify(&derived)?.is_valid();
            clauses.push(Clause::new("(M, B Res P~) is certified", &input, ok));
        }
        Ok(TheoremReport::new(
            TheoremId::RestrictionCriteria,
            self.invariant_inputs(),
            clauses,
        ))
    }

    pub fn check_order_iff(&mut self) -> Result<TheoremReport> {
        let mut clauses = Vec::new();
        // (1) on every invariant indecomposable seen in a node, and on the nodes
        let mut seen = BTreeSet::new();
        let mut inputs: Vec<(String, RepModule)> = Vec::new();
        for &id in &self.invariant {
            inputs.push((self.node_label(id), self.node_module(id)?));
            for &s in &self.sub_poset.nodes[id].pair.m {
                if seen.insert(s) {
                    inputs.push((
                        format!("summand {}", self.sub.label(s)),
                        self.sub.module(s).clone(),
                    ));
                }
            }
        }
        for (label, m) in inputs {
            if !self.ctx.is_invariant(&m, &self.inertial)? {
                continue;
            }
            let below = self.sub.support_pair(&m)?;
            let below = self.sub.is_support_tau_tilting(&below)?;
            let above = self.amb.support_pair(&self.ctx.induce(&m)?)?;
            let above = self.amb.is_support_tau_tilting(&above)?;
            clauses.push(
                Clause::new(
                    "(1) M support τ-tilting iff Ind M is",
                    label,
                    below == above,
                )
                .detail(format!("M: {below}, Ind M: {above}")),
            );
        }
        // (2) every unordered pair of invariant nodes, both directions
        for (i, &a) in self.invariant.iter().enumerate() {
            for (j, &b) in self.invariant.iter().enumerate().skip(i + 1) {
                let (ia, ib) = (&self.induced[i], &self.induced[j]);
                let forward = self.sub_poset.geq(a, b) == self.amb.geq(ia, ib)?;
                let backward = self.sub_poset.geq(b, a) == self.amb.geq(ib, ia)?;
                clauses.push(Clause::new(
                    "(2) M ≥ M' iff Ind M ≥ Ind M'",
                    format!("#{a}, #{b}"),
                    forward && backward,
                ));
            }
        }
        Ok(TheoremReport::new(
            TheoremId::OrderIff,
            self.invariant_inputs(),
            clauses,
        ))
    }

    pub fn check_direct_product(&mut self) -> Result<TheoremReport> {
        let index = self.ctx.embedding().index();
        let mut clauses = Vec::new();
        let mut inputs = Vec::new();
        for node in self.sub_poset.nodes.clone() {
            let input = self.node_label(node.id);
            inputs.push(input.clone());
            let position = self.invariant.iter().position(|&i| i == node.id);
            clauses.push(Clause::new("xM ≅ M", &input, position.is_some()));
            let Some(k) = position else { continue };
            let ok = self.amb.is_support_tau_tilting(&self.induced[k].clone())?;
            clauses.push(Clause::new("Ind M is support τ-tilting", &input, ok));
            let dim = self.ctx.induce(&self.node_module(node.id)?)?.dim();
            clauses.push(
                Clause::new("dim Ind M = |G2| dim M", &input, dim == index * node.dim)
                    .detail(format!("{dim} = {index} x {}", node.dim)),
            );
        }
        Ok(TheoremReport::new(
            TheoremId::DirectProduct,
            inputs,
            clauses,
        ))
    }

    pub fn check_covering_blocks(&mut self) -> Result<TheoremReport> {
        let ctx = self.inertial_context();
        let emb = ctx.embedding().clone();
        let ai = if self.inertial_is_everything() {
            self.amb_algebra.clone()
        } else {
            GroupAlgebra::new(
                self.inertial.group().clone(),
                self.amb_algebra.field().clone(),
            )
        };
        let mut clauses = Vec::new();
        let mut inputs = Vec::new();
        for node in self.sub_poset.nodes.clone() {
            let input = self.node_label(node.id);
            inputs.push(input.clone());
            let ind = ctx.induce(&self.node_module(node.id)?)?;
            let mut total = 0;
            let mut ok = true;
            let mut parts = Vec::new();
            for beta in ai.blocks() {
                let d = ind.act(beta.idempotent()).rank();
                if d > 0 {
                    let c = covers(beta, &self.block, &emb)?;
                    ok &= c;
                    parts.push(format!(
                        "block {}: dim {d}{}",
                        beta.index(),
                        if c { "" } else { " (not covering)" }
                    ));
                }
                total += d;
            }
            ok &= total == ind.dim();
            clauses.push(
                Clause::new("Ind_G^I M lies in blocks covering B", input, ok)
                    .detail(parts.join(", ")),
            );
        }
        Ok(TheoremReport::new(
            TheoremId::CoveringBlocks,
            inputs,
            clauses,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::group::FiniteGroup;

    fn group(json: &str) -> Arc<FiniteGroup> {
        FiniteGroup::from_spec(&GroupSpec::from_json(json).unwrap(), 100).unwrap()
    }

    #[test]
    fn ids_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
        }
        assert_eq!(TheoremId::parse_list("all").unwrap().len(), 7);
        assert_eq!(
            TheoremId::parse_list("T3.6,L3.1").unwrap(),
            vec![TheoremId::InvariantTranslates, TheoremId::OrderIff]
        );
        assert!(TheoremId::parse_list("X9").is_err());
    }

    #[test]
    fn same_group_is_trivial() {
        let g = group(include_str!("../data/groups/S3.json"));
        let emb = Arc::new(SubgroupEmbedding::identity(g));
        let mut v = Verifier::new(emb, FieldSpec::new(3, 1).unwrap(), 0, 100).unwrap();
        let r = v.run(&TheoremId::ALL).unwrap();
        assert!(r.passed);
        assert_eq!(r.invariant_nodes.len(), r.sub_nodes);
        assert!(r.map.is_order_isomorphism());
    }

    #[test]
    fn c3_in_s3_mod_3() {
        let emb = SubgroupEmbedding::new(
            group(include_str!("../data/groups/C3.json")),
            group(include_str!("../data/groups/S3.json")),
        )
        .unwrap();
        let mut v = Verifier::new(Arc::new(emb), FieldSpec::new(3, 1).unwrap(), 0, 100).unwrap();
        assert_eq!(v.sub_poset().len(), 2);
        assert_eq!(v.invariant_nodes().len(), 2);
        let r = v.run(&TheoremId::ALL).unwrap();
        assert!(r.passed, "{}", r.to_json());
        assert!(r.map.injective && !r.map.surjective);
    }

    #[test]
    fn non_normal_is_rejected() {
        let emb = SubgroupEmbedding::new(
            group(include_str!("../data/groups/S3_in_S4.json")),
            group(include_str!("../data/groups/S4.json")),
        )
        .unwrap();
        assert!(matches!(
            Verifier::new(Arc::new(emb), FieldSpec::new(2, 1).unwrap(), 0, 100),
            Err(Error::NotNormal)
        ));
    }
}
