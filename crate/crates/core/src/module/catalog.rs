//! Projective indecomposables and simples of a group algebra or a block, and
//! everything built on them: radicals, projective covers, syzygies and the
//! Auslander-Reiten translate.

use std::sync::Arc;

use crate::algebra::{Block, GroupAlgebra};
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::FiniteGroup;
use crate::matrix::FFMatrix;

use super::decompose::{decompose, is_isomorphic, iso_indecomposable};
use super::hom::{hom_dim, hom_space, image_of_homs};
use super::RepModule;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    Whole,
    Block { index: usize, idempotent: Vec<Fe> },
}

#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub module: RepModule,
    /// Surjection `P -> M` as a `dim M x dim P` matrix.
    pub map: FFMatrix,
    /// Indices of the PIMs making up `P`, in order.
    pub pims: Vec<usize>,
}

#[derive(Debug)]
pub struct Catalog {
    group: Arc<FiniteGroup>,
    field: Field,
    scope: Scope,
    regular: RepModule,
    group_regular: RepModule,
    pims: Vec<RepModule>,
    multiplicities: Vec<usize>,
    pim_radicals: Vec<FFMatrix>,
    simples: Vec<RepModule>,
    names: Vec<String>,
    dual_index: Vec<usize>,
}

impl Catalog {
    pub fn for_algebra(a: &Arc<GroupAlgebra>) -> Result<Self> {
        let reg = RepModule::regular_of(a);
        Self::build(
            a.group().clone(),
            a.field().clone(),
            Scope::Whole,
            reg.clone(),
            reg,
        )
    }

    pub fn for_block(b: &Block) -> Result<Self> {
        let a = b.algebra();
        let reg = RepModule::regular_of(a);
        let (lambda, _) = reg.cut(b.idempotent())?;
        let scope = Scope::Block {
            index: b.index(),
            idempotent: b.idempotent().to_vec(),
        };
        Self::build(a.group().clone(), a.field().clone(), scope, lambda, reg)
    }

    fn build(
        group: Arc<FiniteGroup>,
        field: Field,
        scope: Scope,
        regular: RepModule,
        group_regular: RepModule,
    ) -> Result<Self> {
        let dec = decompose(&regular)?;
        let mut pims = Vec::new();
        let mut multiplicities = Vec::new();
        let mut end_radicals = Vec::new();
        for (k, c) in dec.classes.iter().enumerate() {
            let s = dec.representative(k);
            pims.push(s.module.clone());
            multiplicities.push(c.multiplicity());
            end_radicals.push(s.radical.clone());
        }
        let n = pims.len();
        let mut pim_radicals = Vec::with_capacity(n);
        for i in 0..n {
            let mut maps = end_radicals[i].clone();
            for j in (0..n).filter(|&j| j != i) {
                maps.extend(hom_space(&pims[j], &pims[i])?.basis);
            }
            pim_radicals.push(image_of_homs(&field, pims[i].dim(), &maps));
        }
        let mut simples = Vec::with_capacity(n);
        for i in 0..n {
            let (s, _) = pims[i].quotient(&pim_radicals[i])?;
            if hom_dim(&s, &s)? != 1 {
                return Err(Error::NotSplitting(format!(
                    "simple top of PIM {i} has a larger endomorphism ring"
                )));
            }
            simples.push(s);
        }
        let key = |i: usize| {
            let s = &simples[i];
            let trivial = s.dim() == 1 && s.gens().iter().all(|g| g.is_identity());
            let data: Vec<Fe> = s.gens().iter().flat_map(|g| g.data().to_vec()).collect();
            (!trivial, s.dim(), data, i)
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| key(i));
        let pims: Vec<RepModule> = order.iter().map(|&i| pims[i].clone()).collect();
        let multiplicities = order.iter().map(|&i| multiplicities[i]).collect();
        let pim_radicals = order.iter().map(|&i| pim_radicals[i].clone()).collect();
        let simples: Vec<RepModule> = order.iter().map(|&i| simples[i].clone()).collect();
        let mut dual_index = Vec::with_capacity(n);
        for s in &simples {
            let d = s.dual();
            let mut found = None;
            for (j, t) in simples.iter().enumerate() {
                if iso_indecomposable(&d, t)?.is_some() {
                    found = Some(j);
                    break;
                }
            }
            // the dual of a simple in a non-self-dual block lies elsewhere
            dual_index.push(found.unwrap_or(usize::MAX));
        }
        let names = (1..=n).map(|i| i.to_string()).collect();
        Ok(Catalog {
            group,
            field,
            scope,
            regular,
            group_regular,
            pims,
            multiplicities,
            pim_radicals,
            simples,
            names,
            dual_index,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn scope(&self) -> &Scope {
        &self.scope
    }

    /// Number of simple modules (equivalently PIMs): `|Λ|`.
    pub fn rank(&self) -> usize {
        self.pims.len()
    }

    /// `Λ` as a left module over itself.
    pub fn regular(&self) -> &RepModule {
        &self.regular
    }

    pub fn pims(&self) -> &[RepModule] {
        &self.pims
    }

    pub fn pim(&self, i: usize) -> &RepModule {
        &self.pims[i]
    }

    /// Multiplicity of each PIM in `Λ`.
    pub fn pim_multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Basis of `rad P_i` inside `P_i`.
    pub fn pim_radical(&self, i: usize) -> &FFMatrix {
        &self.pim_radicals[i]
    }

    pub fn simples(&self) -> &[RepModule] {
        &self.simples
    }

    pub fn simple(&self, i: usize) -> &RepModule {
        &self.simples[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} names for {} simples",
                names.len(),
                self.rank()
            )));
        }
        self.names = names;
        Ok(())
    }

    /// `j` with `S_i^* ≅ S_j`, or `None` if the dual lies outside the scope.
    pub fn dual_index(&self, i: usize) -> Option<usize> {
        (self.dual_index[i] != usize::MAX).then_some(self.dual_index[i])
    }

    pub fn lies_in_scope(&self, m: &RepModule) -> bool {
        match &self.scope {
            Scope::Whole => true,
            Scope::Block { idempotent, .. } => m.lies_in(idempotent),
        }
    }

    /// `[M : S_i]` for each simple.
    pub fn composition(&self, m: &RepModule) -> Result<Vec<usize>> {
        self.pims.iter().map(|p| hom_dim(p, m)).collect()
    }

    /// Multiplicity of each simple in `top M`.
    pub fn top_multiplicities(&self, m: &RepModule) -> Result<Vec<usize>> {
        self.simples.iter().map(|s| hom_dim(m, s)).collect()
    }

    /// `C[i][j] = [P_i : S_j]`
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<usize>>> {
        self.pims.iter().map(|p| self.composition(p)).collect()
    }

    /// Basis of `rad M`: the common kernel of all maps to simples.
    pub fn radical(&self, m: &RepModule) -> Result<FFMatrix> {
        let mut rows = Vec::new();
        for s in &self.simples {
            rows.extend(hom_space(m, s)?.basis);
        }
        if rows.is_empty() {
            return Ok(FFMatrix::identity(&self.field, m.dim()));
        }
        let parts: Vec<&FFMatrix> = rows.iter().collect();
        Ok(FFMatrix::vstack(&self.field, m.dim(), &parts).nullspace())
    }

    pub fn radical_module(&self, m: &RepModule) -> Result<RepModule> {
        m.submodule(&self.radical(m)?)
    }

    pub fn top(&self, m: &RepModule) -> Result<(RepModule, FFMatrix)> {
        m.quotient(&self.radical(m)?)
    }

    pub fn projective_cover(&self, m: &RepModule) -> Result<ProjectiveCover> {
        let f = &self.field;
        if m.dim() == 0 {
            return Ok(ProjectiveCover {
                module: RepModule::zero(self.group.clone(), f.clone()),
                map: FFMatrix::zeros(f, 0, 0),
                pims: Vec::new(),
            });
        }
        let (top, q) = self.top(m)?;
        let t = top.dim();
        let mut chosen: Vec<FFMatrix> = Vec::new();
        let mut pims = Vec::new();
        let mut span = FFMatrix::zeros(f, t, 0);
        'outer: for (i, p) in self.pims.iter().enumerate() {
            for phi in hom_space(p, m)?.basis {
                if span.cols() == t {
                    break 'outer;
                }
                let img = q.mul(&phi);
                let joined = FFMatrix::hstack(f, t, &[&span, &img]).column_basis();
                if joined.cols() > span.cols() {
                    span = joined;
                    chosen.push(phi);
                    pims.push(i);
                }
            }
        }
        if span.cols() < t {
            return Err(Error::WrongBlock);
        }
        let parts: Vec<&RepModule> = pims.iter().map(|&i| &self.pims[i]).collect();
        let module = RepModule::direct_sum(&parts)?;
        let maps: Vec<&FFMatrix> = chosen.iter().collect();
        let map = FFMatrix::hstack(f, m.dim(), &maps);
        Ok(ProjectiveCover { module, map, pims })
    }

    /// `Ω(M)` with its inclusion into the projective cover.
    pub fn syzygy_with_cover(
        &self,
        m: &RepModule,
    ) -> Result<(RepModule, FFMatrix, ProjectiveCover)> {
        let cover = self.projective_cover(m)?;
        let kernel = cover.map.nullspace();
        let omega = cover.module.submodule(&kernel)?;
        Ok((omega, kernel, cover))
    }

    pub fn syzygy(&self, m: &RepModule) -> Result<RepModule> {
        Ok(self.syzygy_with_cover(m)?.0)
    }

    pub fn is_projective(&self, m: &RepModule) -> Result<bool> {
        Ok(self.projective_cover(m)?.module.dim() == m.dim())
    }

    /// The PIM an indecomposable projective module is isomorphic to.
    pub fn pim_index(&self, m: &RepModule) -> Result<Option<usize>> {
        let top = self.top_multiplicities(m)?;
        if top.iter().sum::<usize>() != 1 {
            return Ok(None);
        }
        let i = top
            .iter()
            .position(|&x| x == 1)
            .expect("one simple in the top");
        Ok((self.pims[i].dim() == m.dim()).then_some(i))
    }

    /// `τM = Ω²M`. Minimal covers make projective summands of `M` vanish after
    /// the first step, so this is the translate of the projective-free part.
    pub fn tau(&self, m: &RepModule) -> Result<RepModule> {
        let omega = self.syzygy(m)?;
        self.syzygy(&omega)
    }

    /// `τM = D Tr M` from a minimal projective presentation `P1 -> P0 -> M`.
    pub fn tau_nakayama(&self, m: &RepModule) -> Result<RepModule> {
        let f = &self.field;
        let (omega, incl, _) = self.syzygy_with_cover(m)?;
        if omega.dim() == 0 {
            return Ok(RepModule::zero(self.group.clone(), f.clone()));
        }
        let (p0, p1, pres) = {
            let c0 = self.projective_cover(m)?;
            let c1 = self.projective_cover(&omega)?;
            let pres = incl.mul(&c1.map);
            (c0.module, c1.module, pres)
        };
        let reg = &self.group_regular;
        let n = reg.dim();
        let h1 = hom_space(&p1, reg)?.basis;
        let h0 = hom_space(&p0, reg)?.basis;
        let vec1 = FFMatrix::from_cols(
            f,
            n * p1.dim(),
            &h1.iter().map(|h| h.vectorize()).collect::<Vec<_>>(),
        );
        let left = vec1
            .left_inverse()
            .ok_or_else(|| Error::DimensionMismatch("Hom basis is dependent".into()))?;
        let g = &self.group;
        let right_actions: Vec<FFMatrix> = g
            .generator_indices()
            .iter()
            .map(|&s| {
                let mut r = FFMatrix::zeros(f, n, n);
                for x in 0..n {
                    r.set(g.mul(x, s), x, 1);
                }
                let moved: Vec<Vec<Fe>> = h1.iter().map(|h| r.mul(h).vectorize()).collect();
                left.mul(&FFMatrix::from_cols(f, n * p1.dim(), &moved))
            })
            .collect();
        let images: Vec<Vec<Fe>> = h0.iter().map(|h| h.mul(&pres).vectorize()).collect();
        let image = left.mul(&FFMatrix::from_cols(f, n * p1.dim(), &images));
        let annihilator = image.transpose().nullspace();
        if annihilator.cols() == 0 {
            return Ok(RepModule::zero(self.group.clone(), f.clone()));
        }
        let ann_left = annihilator.left_inverse().expect("independent columns");
        let gens = right_actions
            .iter()
            .map(|a| ann_left.mul(&a.transpose().mul(&annihilator)))
            .collect();
        RepModule::new(self.group.clone(), f.clone(), gens)
    }

    /// `τM` by both routes, failing if they disagree up to isomorphism.
    pub fn tau_checked(&self, m: &RepModule) -> Result<RepModule> {
        let a = self.tau(m)?;
        let b = self.tau_nakayama(m)?;
        if is_isomorphic(&a, &b)?.is_none() {
            return Err(Error::TauMismatch {
                omega: a.dim(),
                nakayama: b.dim(),
            });
        }
        Ok(a)
    }

    /// Composition factors of each radical layer, top first.
    pub fn loewy_layers(&self, m: &RepModule) -> Result<Vec<Vec<usize>>> {
        let mut layers = Vec::new();
        let mut cur = m.clone();
        while cur.dim() > 0 {
            let top = self.top_multiplicities(&cur)?;
            if top.iter().all(|&x| x == 0) {
                return Err(Error::WrongBlock);
            }
            layers.push(top);
            cur = self.radical_module(&cur)?;
        }
        Ok(layers)
    }

    /// `P<name>` for a PIM, otherwise the radical layers joined by `/`.
    pub fn label(&self, m: &RepModule) -> Result<String> {
        if m.dim() == 0 {
            return Ok("0".into());
        }
        if let Some(i) = self.pim_index(m)? {
            return Ok(format!("P{}", self.names[i]));
        }
        let layers = self.loewy_layers(m)?;
        Ok(layers
            .iter()
            .map(|layer| {
                let mut parts = Vec::new();
                for (i, &c) in layer.iter().enumerate() {
                    parts.extend(std::iter::repeat_n(self.names[i].as_str(), c));
                }
                parts.join(" ")
            })
            .collect::<Vec<_>>()
            .join("/"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::module::tests::s3;

    fn c2() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(2, vec![vec![1, 0]]).unwrap()
    }

    #[test]
    fn c2_local_algebra() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = GroupAlgebra::new(c2(), f.clone());
        let cat = Catalog::for_algebra(&a).unwrap();
        assert_eq!(cat.rank(), 1);
        let k = RepModule::trivial(c2(), f);
        let (top, _) = cat.top(cat.regular()).unwrap();
        assert!(iso_indecomposable(&top, &k).unwrap().is_some());
        assert_eq!(cat.radical(&k).unwrap().cols(), 0);
        let omega = cat.syzygy(&k).unwrap();
        assert_eq!(omega.dim(), 1);
        let tau = cat.tau_checked(&k).unwrap();
        assert!(iso_indecomposable(&tau, &k).unwrap().is_some());
        assert_eq!(cat.tau(cat.regular()).unwrap().dim(), 0);
        assert_eq!(cat.label(&k).unwrap(), "1");
        assert_eq!(cat.label(cat.regular()).unwrap(), "P1");
    }

    #[test]
    fn s3_mod_3_structure() {
        let f = FieldSpec::new(3, 1).unwrap();
        let a = GroupAlgebra::new(s3(), f.clone());
        let cat = Catalog::for_block(a.principal_block()).unwrap();
        assert_eq!(cat.rank(), 2);
        assert_eq!(cat.cartan_matrix().unwrap(), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(cat.label(cat.pim(0)).unwrap(), "P1");
        let layers = cat.loewy_layers(cat.pim(0)).unwrap();
        assert_eq!(layers, vec![vec![1, 0], vec![0, 1], vec![1, 0]]);
        for s in cat.simples() {
            let t = cat.tau_checked(s).unwrap();
            assert_eq!(t.dim(), 1);
            let c = cat.projective_cover(s).unwrap();
            assert_eq!(c.module.dim(), 3);
            assert_eq!(cat.syzygy(s).unwrap().dim(), 2);
        }
        assert_eq!(cat.dual_index(1), Some(1));
    }

    #[test]
    fn s3_mod_2_blocks() {
        let f = FieldSpec::new(2, 1).unwrap();
        let a = GroupAlgebra::new(s3(), f);
        let b0 = Catalog::for_block(&a.blocks()[0]).unwrap();
        let b1 = Catalog::for_block(&a.blocks()[1]).unwrap();
        assert_eq!(b0.rank(), 1);
        assert_eq!(b1.rank(), 1);
        assert_eq!(b1.simple(0).dim(), 2);
        assert!(b1.is_projective(b1.simple(0)).unwrap());
        let whole = Catalog::for_algebra(&a).unwrap();
        assert_eq!(whole.rank(), 2);
        assert!(b0.projective_cover(b1.simple(0)).is_err());
    }

    #[test]
    fn projective_cover_is_minimal() {
        let f = FieldSpec::new(3, 1).unwrap();
        let a = GroupAlgebra::new(s3(), f.clone());
        let cat = Catalog::for_algebra(&a).unwrap();
        let m = RepModule::direct_sum(&[cat.simple(0), cat.simple(1), cat.simple(1)]).unwrap();
        let c = cat.projective_cover(&m).unwrap();
        assert_eq!(c.pims, vec![0, 1, 1]);
        assert_eq!(c.map.rank(), m.dim());
        assert!(c.module.is_hom_to(&m, &c.map));
        // kernel inside the radical of P
        let rad = cat.radical(&c.module).unwrap();
        assert!(rad.spans(&c.map.nullspace()));
    }

    fn group(json: &str) -> Arc<FiniteGroup> {
        let spec = crate::group::GroupSpec::from_json(json).unwrap();
        FiniteGroup::from_spec(&spec, 100).unwrap()
    }

    #[test]
    fn s4_mod_2_cartan() {
        let g = group(include_str!("../../data/groups/S4.json"));
        let f = FieldSpec::new(2, 2).unwrap();
        let a = GroupAlgebra::new(g.clone(), f.clone());
        let cat = Catalog::for_block(a.principal_block()).unwrap();
        assert_eq!(cat.rank(), 2);
        assert_eq!(cat.pim(0).dim(), 8);
        assert_eq!(cat.pim(1).dim(), 8);
        assert_eq!(cat.simple(1).dim(), 2);
        assert_eq!(cat.cartan_matrix().unwrap(), vec![vec![4, 2], vec![2, 3]]);
        assert_eq!(cat.radical(cat.pim(0)).unwrap().cols(), 7);
        let k = RepModule::trivial(g, f);
        let c = cat.projective_cover(&k).unwrap();
        assert_eq!(c.pims, vec![0]);
        for m in [cat.simple(0), cat.simple(1)] {
            cat.tau_checked(m).unwrap();
        }
    }

    #[test]
    fn a4_mod_2_simples() {
        let g = group(include_str!("../../data/groups/A4.json"));
        let f = FieldSpec::new(2, 2).unwrap();
        let a = GroupAlgebra::new(g, f);
        let cat = Catalog::for_algebra(&a).unwrap();
        assert_eq!(cat.rank(), 3);
        assert!(cat.simples().iter().all(|s| s.dim() == 1));
        assert!(cat.pims().iter().all(|p| p.dim() == 4));
        assert_eq!(cat.pim_multiplicities(), &[1, 1, 1]);
        let t = cat.tau_checked(cat.simple(2)).unwrap();
        assert_eq!(hom_dim(cat.simple(2), &t).unwrap(), 0);
    }
}
