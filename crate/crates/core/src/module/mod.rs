//! Finite-dimensional `kG`-modules given by generator action matrices.

mod catalog;
mod decompose;
mod hom;
mod io;

pub use catalog::{Catalog, ProjectiveCover, Scope};
pub use decompose::{
    decompose, decompose_with, is_isomorphic, iso_indecomposable, set_session_defaults,
    DecomposeOptions, Decomposition, IsoClass, Summand, DEFAULT_DIM_CAP, DEFAULT_SEED,
};
pub use hom::{hom_dim, hom_space, image_of_homs, HomSpace};
pub use io::{FieldData, ModuleData};

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::FiniteGroup;
use crate::matrix::FFMatrix;

use hom::Spin;

struct Inner {
    group: Arc<FiniteGroup>,
    field: Field,
    dim: usize,
    gens: Vec<FFMatrix>,
    label: Option<String>,
    actions: OnceLock<Vec<FFMatrix>>,
    spin: OnceLock<Spin>,
}

/// A left `kG`-module: one `dim x dim` matrix per group generator.
#[derive(Clone)]
pub struct RepModule {
    inner: Arc<Inner>,
}

impl fmt::Debug for RepModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepModule")
            .field("dim", &self.dim())
            .field("group_order", &self.group().order())
            .field("q", &self.field().q())
            .field("label", &self.label())
            .finish()
    }
}

fn element_actions(
    group: &FiniteGroup,
    field: &Field,
    dim: usize,
    gens: &[FFMatrix],
) -> Vec<FFMatrix> {
    let mut acts: Vec<Option<FFMatrix>> = vec![None; group.order()];
    for g in group.bfs_order() {
        acts[g] = Some(match group.tree()[g] {
            None => FFMatrix::identity(field, dim),
            Some((s, h)) => gens[s].mul(acts[h].as_ref().expect("parent precedes child")),
        });
    }
    acts.into_iter()
        .map(|a| a.expect("every element reached"))
        .collect()
}

impl RepModule {
    /// Builds a module and checks that the matrices define a representation.
    pub fn new(group: Arc<FiniteGroup>, field: Field, gens: Vec<FFMatrix>) -> Result<Self> {
        let m = Self::from_parts(group, field, gens)?;
        m.check_relations()?;
        Ok(m)
    }

    fn from_parts(group: Arc<FiniteGroup>, field: Field, gens: Vec<FFMatrix>) -> Result<Self> {
        if gens.len() != group.generators().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        let dim = gens.first().map_or(0, |g| g.rows());
        for g in &gens {
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "{}x{} action on a {dim}-dim module",
                    g.rows(),
                    g.cols()
                )));
            }
            if g.field() != &field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self::unchecked(group, field, dim, gens, None))
    }

    pub(crate) fn unchecked(
        group: Arc<FiniteGroup>,
        field: Field,
        dim: usize,
        gens: Vec<FFMatrix>,
        label: Option<String>,
    ) -> Self {
        RepModule {
            inner: Arc::new(Inner {
                group,
                field,
                dim,
                gens,
                label,
                actions: OnceLock::new(),
                spin: OnceLock::new(),
            }),
        }
    }

    fn check_relations(&self) -> Result<()> {
        let g = self.group();
        let acts = self.actions();
        for e in 0..g.order() {
            for (s, &gi) in g.generator_indices().iter().enumerate() {
                if self.inner.gens[s].mul(&acts[e]) != acts[g.mul(gi, e)] {
                    return Err(Error::BadRelations(format!(
                        "generator {s} times element {e}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn zero(group: Arc<FiniteGroup>, field: Field) -> Self {
        let gens = vec![FFMatrix::zeros(&field, 0, 0); group.generators().len()];
        Self::unchecked(group, field, 0, gens, None)
    }

    pub fn trivial(group: Arc<FiniteGroup>, field: Field) -> Self {
        let gens = vec![FFMatrix::identity(&field, 1); group.generators().len()];
        Self::unchecked(group, field, 1, gens, None)
    }

    /// The left regular module with basis the group elements.
    pub fn regular(group: Arc<FiniteGroup>, field: Field) -> Self {
        let n = group.order();
        let gens = group
            .generator_indices()
            .iter()
            .map(|&s| {
                let mut m = FFMatrix::zeros(&field, n, n);
                for h in 0..n {
                    m.set(group.mul(s, h), h, 1);
                }
                m
            })
            .collect();
        Self::unchecked(group, field, n, gens, None)
    }

    /// A one-dimensional module with the given generator scalars.
    pub fn one_dimensional(group: Arc<FiniteGroup>, field: Field, scalars: &[Fe]) -> Result<Self> {
        let gens = scalars
            .iter()
            .map(|&c| FFMatrix::from_vec(&field, 1, 1, vec![c]))
            .collect();
        Self::new(group, field, gens)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.inner.group
    }

    pub fn field(&self) -> &Field {
        &self.inner.field
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    pub fn is_zero(&self) -> bool {
        self.inner.dim == 0
    }

    pub fn gens(&self) -> &[FFMatrix] {
        &self.inner.gens
    }

    pub fn label(&self) -> Option<&str> {
        self.inner.label.as_deref()
    }

    pub fn with_label(&self, label: impl Into<String>) -> Self {
        let m = Self::unchecked(
            self.group().clone(),
            self.field().clone(),
            self.dim(),
            self.inner.gens.clone(),
            Some(label.into()),
        );
        if let Some(a) = self.inner.actions.get() {
            let _ = m.inner.actions.set(a.clone());
        }
        m
    }

    /// Action matrices of every group element, indexed like the group's elements.
    pub fn actions(&self) -> &[FFMatrix] {
        self.inner.actions.get_or_init(|| {
            element_actions(self.group(), self.field(), self.dim(), &self.inner.gens)
        })
    }

    pub fn action(&self, g: usize) -> &FFMatrix {
        &self.actions()[g]
    }

    /// The matrix of a group algebra element.
    pub fn act(&self, a: &[Fe]) -> FFMatrix {
        let mut out = FFMatrix::zeros(self.field(), self.dim(), self.dim());
        for (g, &c) in a.iter().enumerate() {
            if c != 0 {
                out.add_scaled(c, self.action(g));
            }
        }
        out
    }

    pub(crate) fn spin(&self) -> &Spin {
        self.inner.spin.get_or_init(|| Spin::new(self))
    }

    pub fn same_context(&self, other: &RepModule) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if !Arc::ptr_eq(self.group(), other.group())
            && self.group().as_ref() != other.group().as_ref()
        {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }

    pub fn direct_sum(parts: &[&RepModule]) -> Result<RepModule> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty direct sum".into()))?;
        for p in parts {
            first.same_context(p)?;
        }
        let ngens = first.gens().len();
        let gens = (0..ngens)
            .map(|s| {
                let blocks: Vec<&FFMatrix> = parts.iter().map(|p| &p.gens()[s]).collect();
                FFMatrix::block_diag(first.field(), &blocks)
            })
            .collect();
        let dim = parts.iter().map(|p| p.dim()).sum();
        Ok(Self::unchecked(
            first.group().clone(),
            first.field().clone(),
            dim,
            gens,
            None,
        ))
    }

    /// `self^{⊕n}`
    pub fn power(&self, n: usize) -> RepModule {
        if n == 0 {
            return Self::zero(self.group().clone(), self.field().clone());
        }
        let parts = vec![self; n];
        Self::direct_sum(&parts).expect("same context")
    }

    /// Whether the column space of `basis` is stable under the group.
    pub fn is_submodule(&self, basis: &FFMatrix) -> bool {
        self.inner.gens.iter().all(|g| basis.spans(&g.mul(basis)))
    }

    /// The submodule spanned by the (independent) columns of `basis`, expressed
    /// in that basis.
    pub fn submodule(&self, basis: &FFMatrix) -> Result<RepModule> {
        if basis.rows() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows for a {}-dim module",
                basis.rows(),
                self.dim()
            )));
        }
        let k = basis.cols();
        if k == 0 {
            return Ok(Self::zero(self.group().clone(), self.field().clone()));
        }
        let left = basis
            .left_inverse()
            .ok_or_else(|| Error::DimensionMismatch("submodule basis is not independent".into()))?;
        let mut gens = Vec::with_capacity(self.inner.gens.len());
        for g in &self.inner.gens {
            let image = g.mul(basis);
            let restricted = left.mul(&image);
            if basis.mul(&restricted) != image {
                return Err(Error::DimensionMismatch(
                    "subspace is not a submodule".into(),
                ));
            }
            gens.push(restricted);
        }
        Ok(Self::unchecked(
            self.group().clone(),
            self.field().clone(),
            k,
            gens,
            None,
        ))
    }

    /// The quotient by the submodule spanned by `sub`, together with the
    /// projection matrix onto the quotient's basis.
    pub fn quotient(&self, sub: &FFMatrix) -> Result<(RepModule, FFMatrix)> {
        if !self.is_submodule(sub) {
            return Err(Error::DimensionMismatch(
                "subspace is not a submodule".into(),
            ));
        }
        let sub = sub.column_basis();
        let comp = sub.complement_basis();
        let full = FFMatrix::hstack(self.field(), self.dim(), &[&sub, &comp]);
        let inv = full.inverse().expect("basis extension is invertible");
        let proj = inv.block(sub.cols(), comp.cols(), 0, self.dim());
        let gens = self
            .inner
            .gens
            .iter()
            .map(|g| proj.mul(&g.mul(&comp)))
            .collect();
        let q = Self::unchecked(
            self.group().clone(),
            self.field().clone(),
            comp.cols(),
            gens,
            None,
        );
        Ok((q, proj))
    }

    /// The contragredient dual: `g` acts by the transpose of `rho(g^-1)`.
    pub fn dual(&self) -> RepModule {
        let g = self.group();
        let gens = g
            .generator_indices()
            .iter()
            .map(|&s| self.action(g.inv(s)).transpose())
            .collect();
        Self::unchecked(g.clone(), self.field().clone(), self.dim(), gens, None)
    }

    /// Conjugates every generator matrix: the same module in the basis given
    /// by the columns of `change`.
    pub fn change_basis(&self, change: &FFMatrix) -> Result<RepModule> {
        let inv = change
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("basis change is singular".into()))?;
        let gens = self
            .inner
            .gens
            .iter()
            .map(|g| inv.mul(&g.mul(change)))
            .collect();
        Ok(Self::unchecked(
            self.group().clone(),
            self.field().clone(),
            self.dim(),
            gens,
            self.inner.label.clone(),
        ))
    }

    /// Whether the idempotent of an algebra element acts as the identity.
    pub fn lies_in(&self, idempotent: &[Fe]) -> bool {
        self.act(idempotent).is_identity()
    }

    /// The summand `e M` cut out by a central idempotent.
    pub fn cut(&self, idempotent: &[Fe]) -> Result<(RepModule, FFMatrix)> {
        let basis = self.act(idempotent).column_basis();
        Ok((self.submodule(&basis)?, basis))
    }

    /// Checks that `phi` (rows: `target`, cols: `self`) intertwines the actions.
    pub fn is_hom_to(&self, target: &RepModule, phi: &FFMatrix) -> bool {
        phi.rows() == target.dim()
            && phi.cols() == self.dim()
            && self
                .gens()
                .iter()
                .zip(target.gens())
                .all(|(a, b)| phi.mul(a) == b.mul(phi))
    }

    pub fn regular_of(algebra: &GroupAlgebra) -> RepModule {
        Self::regular(algebra.group().clone(), algebra.field().clone())
    }
}
