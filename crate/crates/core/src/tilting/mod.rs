//! Support τ-tilting pairs over a group algebra or one of its blocks.
//!
//! Every indecomposable module the engine touches is interned in a registry so
//! that pairs are plain sorted id lists and Hom spaces and translates are
//! computed once.

mod poset;

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::FFMatrix;
use crate::module::{decompose, hom_space, image_of_homs, iso_indecomposable, Catalog, RepModule};

pub use poset::{enumerate_poset, HassePoset, Node, POSET_SCHEMA};

pub const DEFAULT_NODE_CAP: usize = 2000;

#[derive(Debug)]
struct Entry {
    module: RepModule,
    composition: Vec<usize>,
    end_radical: Vec<FFMatrix>,
    pim: Option<usize>,
    label: String,
    tau: Option<RepModule>,
}

/// A pair `(M, P)`: registry ids of the summands of `M` and PIM indices of `P`,
/// both sorted and repetition free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pair {
    pub m: Vec<usize>,
    pub p: Vec<usize>,
}

impl Pair {
    pub fn new(mut m: Vec<usize>, mut p: Vec<usize>) -> Self {
        m.sort_unstable();
        m.dedup();
        p.sort_unstable();
        p.dedup();
        Pair { m, p }
    }

    /// Number of indecomposable summands of `M ⊕ P`.
    pub fn len(&self) -> usize {
        self.m.len() + self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `|M| + |P| = |Λ|`
    pub counting: bool,
    /// The cokernel of a minimal left add-M approximation of `Λ` lies in add M.
    pub approximation: bool,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.counting && self.approximation
    }
}

#[derive(Debug)]
pub struct Engine {
    catalog: Arc<Catalog>,
    entries: Vec<Entry>,
    homs: HashMap<(usize, usize), Arc<Vec<FFMatrix>>>,
    rigid: HashMap<(usize, usize), bool>,
    pim_ids: Vec<usize>,
    cross_check: bool,
}

impl Engine {
    pub fn new(catalog: Arc<Catalog>) -> Result<Self> {
        let mut e = Engine {
            catalog,
            entries: Vec::new(),
            homs: HashMap::new(),
            rigid: HashMap::new(),
            pim_ids: Vec::new(),
            cross_check: true,
        };
        for i in 0..e.catalog.rank() {
            let ids = e.register(&e.catalog.pim(i).clone())?;
            debug_assert_eq!(ids.len(), 1);
            e.pim_ids.push(ids[0]);
        }
        Ok(e)
    }

    /// Compute every translate by both routes and fail on disagreement (on by default).
    pub fn set_cross_check(&mut self, on: bool) {
        self.cross_check = on;
    }

    pub fn catalog(&self) -> &Arc<Catalog> {
        &self.catalog
    }

    pub fn rank(&self) -> usize {
        self.catalog.rank()
    }

    pub fn registry_len(&self) -> usize {
        self.entries.len()
    }

    pub fn module(&self, id: usize) -> &RepModule {
        &self.entries[id].module
    }

    pub fn label(&self, id: usize) -> &str {
        &self.entries[id].label
    }

    pub fn composition(&self, id: usize) -> &[usize] {
        &self.entries[id].composition
    }

    /// PIM index of a registered projective indecomposable.
    pub fn pim_of(&self, id: usize) -> Option<usize> {
        self.entries[id].pim
    }

    pub fn pim_id(&self, i: usize) -> usize {
        self.pim_ids[i]
    }

    /// Interns the indecomposable summands of `m`, returning their sorted ids.
    pub fn register(&mut self, m: &RepModule) -> Result<Vec<usize>> {
        if m.dim() == 0 {
            return Ok(Vec::new());
        }
        if !self.catalog.lies_in_scope(m) {
            return Err(Error::WrongBlock);
        }
        let dec = decompose(m)?;
        let mut ids = Vec::with_capacity(dec.class_count());
        for c in 0..dec.class_count() {
            let s = dec.representative(c);
            ids.push(self.intern(&s.module, &s.radical)?);
        }
        ids.sort_unstable();
        ids.dedup();
        Ok(ids)
    }

    fn intern(&mut self, m: &RepModule, radical: &[FFMatrix]) -> Result<usize> {
        let composition = self.catalog.composition(m)?;
        for (id, e) in self.entries.iter().enumerate() {
            if e.composition == composition
                && e.module.dim() == m.dim()
                && iso_indecomposable(&e.module, m)?.is_some()
            {
                return Ok(id);
            }
        }
        let pim = self.catalog.pim_index(m)?;
        let label = self.catalog.label(m)?;
        self.entries.push(Entry {
            module: m.clone(),
            composition,
            end_radical: radical.to_vec(),
            pim,
            label,
            tau: None,
        });
        Ok(self.entries.len() - 1)
    }

    /// Basis of `Hom(M_a, M_b)` for registry ids.
    pub fn hom(&mut self, a: usize, b: usize) -> Result<Arc<Vec<FFMatrix>>> {
        if let Some(h) = self.homs.get(&(a, b)) {
            return Ok(h.clone());
        }
        let h = Arc::new(hom_space(&self.entries[a].module, &self.entries[b].module)?.basis);
        self.homs.insert((a, b), h.clone());
        Ok(h)
    }

    pub fn tau(&mut self, id: usize) -> Result<RepModule> {
        if let Some(t) = &self.entries[id].tau {
            return Ok(t.clone());
        }
        let m = self.entries[id].module.clone();
        let t = if self.entries[id].pim.is_some() {
            RepModule::zero(m.group().clone(), m.field().clone())
        } else if self.cross_check {
            self.catalog.tau_checked(&m)?
        } else {
            self.catalog.tau(&m)?
        };
        self.entries[id].tau = Some(t.clone());
        Ok(t)
    }

    /// `Hom(M_a, τ M_b) = 0`
    fn hom_to_tau_vanishes(&mut self, a: usize, b: usize) -> Result<bool> {
        if let Some(&r) = self.rigid.get(&(a, b)) {
            return Ok(r);
        }
        let t = self.tau(b)?;
        let r = t.dim() == 0 || crate::module::hom_dim(&self.entries[a].module, &t)? == 0;
        self.rigid.insert((a, b), r);
        Ok(r)
    }

    pub fn is_tau_rigid_ids(&mut self, ids: &[usize]) -> Result<bool> {
        for &a in ids {
            for &b in ids {
                if !self.hom_to_tau_vanishes(a, b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `Hom(M, τM) = 0`
    pub fn is_tau_rigid(&mut self, m: &RepModule) -> Result<bool> {
        let ids = self.register(m)?;
        self.is_tau_rigid_ids(&ids)
    }

    /// Builds a basic pair from a module and a list of PIM indices.
    pub fn pair_from(&mut self, m: &RepModule, p: &[usize]) -> Result<Pair> {
        let ids = self.register(m)?;
        Ok(Pair::new(ids, p.to_vec()))
    }

    /// The pair `(M, P)` with `P` the sum of all PIMs admitting no map to `M`.
    pub fn support_pair(&mut self, m: &RepModule) -> Result<Pair> {
        let ids = self.register(m)?;
        let p = (0..self.rank())
            .filter(|&k| ids.iter().all(|&i| self.entries[i].composition[k] == 0))
            .collect();
        Ok(Pair::new(ids, p))
    }

    /// τ-rigid with a certified complement.
    pub fn is_support_tau_tilting(&mut self, pair: &Pair) -> Result<bool> {
        Ok(self.is_tau_rigid_pair(pair)? && self.certify(pair)?.is_valid())
    }

    pub fn top_pair(&self) -> Pair {
        Pair::new(self.pim_ids.clone(), Vec::new())
    }

    pub fn bottom_pair(&self) -> Pair {
        Pair::new(Vec::new(), (0..self.rank()).collect())
    }

    /// `M` of a pair as one module, summands in id order.
    pub fn pair_module(&self, pair: &Pair) -> Result<RepModule> {
        if pair.m.is_empty() {
            let c = &self.catalog;
            return Ok(RepModule::zero(c.group().clone(), c.field().clone()));
        }
        let parts: Vec<&RepModule> = pair.m.iter().map(|&i| &self.entries[i].module).collect();
        RepModule::direct_sum(&parts)
    }

    /// Summand labels of `M`, projectives last, joined by ` ⊕ `; `0` when empty.
    pub fn pair_label(&self, pair: &Pair) -> String {
        if pair.m.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<(bool, &str)> = pair
            .m
            .iter()
            .map(|&i| {
                (
                    self.entries[i].pim.is_some(),
                    self.entries[i].label.as_str(),
                )
            })
            .collect();
        parts.sort();
        parts.iter().map(|p| p.1).collect::<Vec<_>>().join(" ⊕ ")
    }

    pub fn pair_dim(&self, pair: &Pair) -> usize {
        pair.m.iter().map(|&i| self.entries[i].module.dim()).sum()
    }

    fn check_shape(&self, pair: &Pair) -> Result<()> {
        if pair.m.iter().any(|&i| i >= self.entries.len())
            || pair.p.iter().any(|&k| k >= self.rank())
        {
            return Err(Error::MalformedPair("index out of range".into()));
        }
        Ok(())
    }

    /// `Hom(P, M) = 0` and `M` is τ-rigid.
    pub fn is_tau_rigid_pair(&mut self, pair: &Pair) -> Result<bool> {
        self.check_shape(pair)?;
        let hom_free = pair
            .p
            .iter()
            .all(|&k| pair.m.iter().all(|&i| self.entries[i].composition[k] == 0));
        Ok(hom_free && self.is_tau_rigid_ids(&pair.m)?)
    }

    /// Checks a τ-rigid pair against both support τ-tilting criteria.
    pub fn certify(&mut self, pair: &Pair) -> Result<Certificate> {
        if !self.is_tau_rigid_pair(pair)? {
            return Err(Error::MalformedPair(
                "Hom(P, M) is nonzero or M is not τ-rigid".into(),
            ));
        }
        let counting = pair.len() == self.rank();
        let mut approximation = true;
        for i in 0..self.rank() {
            let x = self.pim_ids[i];
            let (target, f) = self.left_approximation(x, &pair.m)?;
            let coker = cokernel(&target, &f)?;
            let ids = self.register(&coker)?;
            if !ids.iter().all(|id| pair.m.contains(id)) {
                approximation = false;
                break;
            }
        }
        if counting != approximation {
            return Err(Error::CriteriaDisagree {
                counting,
                approximation,
            });
        }
        Ok(Certificate {
            counting,
            approximation,
        })
    }

    /// Minimal left add-U approximation `f: X -> U'` of a registered module.
    /// Returns `U'` and `f` as a `dim U' x dim X` matrix.
    pub fn left_approximation(&mut self, x: usize, u: &[usize]) -> Result<(RepModule, FFMatrix)> {
        let field = self.catalog.field().clone();
        let dx = self.entries[x].module.dim();
        let mut parts = Vec::new();
        let mut maps = Vec::new();
        for &j in u {
            let dj = self.entries[j].module.dim();
            let mut radical_vecs = Vec::new();
            for &l in u {
                let through = self.hom(x, l)?;
                let rad: Vec<FFMatrix> = if l == j {
                    self.entries[j].end_radical.clone()
                } else {
                    self.hom(l, j)?.to_vec()
                };
                for psi in &rad {
                    for phi in through.iter() {
                        radical_vecs.push(psi.mul(phi).vectorize());
                    }
                }
            }
            let mut span = FFMatrix::from_cols(&field, dj * dx, &radical_vecs).column_basis();
            for phi in self.hom(x, j)?.iter() {
                let v = FFMatrix::from_cols(&field, dj * dx, &[phi.vectorize()]);
                let joined = FFMatrix::hstack(&field, dj * dx, &[&span, &v]);
                if joined.rank() > span.cols() {
                    span = joined;
                    parts.push(self.entries[j].module.clone());
                    maps.push(phi.clone());
                }
            }
        }
        if parts.is_empty() {
            let m = &self.entries[x].module;
            return Ok((
                RepModule::zero(m.group().clone(), field.clone()),
                FFMatrix::zeros(&field, 0, dx),
            ));
        }
        let refs: Vec<&RepModule> = parts.iter().collect();
        let target = RepModule::direct_sum(&refs)?;
        let refs: Vec<&FFMatrix> = maps.iter().collect();
        Ok((target, FFMatrix::vstack(&field, dx, &refs)))
    }

    /// Whether `M_x` is a quotient of a direct sum of copies of `U`.
    pub fn in_fac(&mut self, x: usize, u: &[usize]) -> Result<bool> {
        let mut maps = Vec::new();
        for &j in u {
            maps.extend(self.hom(j, x)?.iter().cloned());
        }
        let d = self.entries[x].module.dim();
        Ok(image_of_homs(self.catalog.field(), d, &maps).cols() == d)
    }

    /// `a ≥ b`: every summand of `b.M` is generated by `a.M`.
    pub fn geq(&mut self, a: &Pair, b: &Pair) -> Result<bool> {
        for &y in &b.m {
            if !self.in_fac(y, &a.m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index of a summand after removing it: the rest of `M` and all of `P`.
    fn split(pair: &Pair, idx: usize) -> (Vec<usize>, Vec<usize>) {
        let mut m = pair.m.clone();
        let mut p = pair.p.clone();
        if idx < m.len() {
            m.remove(idx);
        } else {
            p.remove(idx - m.len());
        }
        (m, p)
    }

    /// Whether mutation at `idx` moves down in the order.
    pub fn is_left_mutable(&mut self, pair: &Pair, idx: usize) -> Result<bool> {
        if idx >= pair.m.len() {
            return Ok(false);
        }
        let (u, _) = Self::split(pair, idx);
        Ok(!self.in_fac(pair.m[idx], &u)?)
    }

    /// Exchanges summand `idx` (indices run over `M` then `P`). Returns the new
    /// pair and the index of the summand that replaced the removed one.
    pub fn mutate(&mut self, pair: &Pair, idx: usize) -> Result<(Pair, usize)> {
        self.check_shape(pair)?;
        if idx >= pair.len() {
            return Err(Error::NoMutation(format!(
                "summand {idx} of a pair with {} summands",
                pair.len()
            )));
        }
        if self.is_left_mutable(pair, idx)? {
            self.left_mutate(pair, idx)
        } else {
            let (d, j) = self.dual_pair(pair, idx)?;
            if !self.is_left_mutable(&d, j)? {
                return Err(Error::NoMutation(
                    "no neighbour above this pair at that summand".into(),
                ));
            }
            let (d2, j2) = self.left_mutate(&d, j)?;
            self.dual_pair(&d2, j2)
        }
    }

    fn left_mutate(&mut self, pair: &Pair, idx: usize) -> Result<(Pair, usize)> {
        let x = pair.m[idx];
        let (u, p) = Self::split(pair, idx);
        let (target, f) = self.left_approximation(x, &u)?;
        let y = cokernel(&target, &f)?;
        if y.dim() > 0 {
            let new: Vec<usize> = self
                .register(&y)?
                .into_iter()
                .filter(|i| !u.contains(i))
                .collect();
            if new.len() != 1 {
                return Err(Error::NoMutation(format!(
                    "exchange cokernel has {} new summands",
                    new.len()
                )));
            }
            let out = Pair::new([u, new.clone()].concat(), p);
            self.require_valid(&out)?;
            let at = out
                .m
                .iter()
                .position(|&i| i == new[0])
                .expect("new summand present");
            return Ok((out, at));
        }
        for q in 0..self.rank() {
            if p.contains(&q) || u.iter().any(|&i| self.entries[i].composition[q] != 0) {
                continue;
            }
            let out = Pair::new(u.clone(), [p.clone(), vec![q]].concat());
            if self.is_tau_rigid_pair(&out)? && self.certify(&out)?.is_valid() {
                let at = out.m.len()
                    + out
                        .p
                        .iter()
                        .position(|&k| k == q)
                        .expect("new projective present");
                return Ok((out, at));
            }
        }
        Err(Error::NoMutation("no projective completes the pair".into()))
    }

    fn require_valid(&mut self, pair: &Pair) -> Result<()> {
        if self.certify(pair)?.is_valid() {
            Ok(())
        } else {
            Err(Error::MalformedPair(
                "mutation produced a pair that is not support τ-tilting".into(),
            ))
        }
    }

    /// The order-reversing duality `(M, P) -> ((τM_np)^* ⊕ P^*, M_pr^*)`, with
    /// the position of summand `idx` in the result. Defined when the scope is
    /// closed under taking duals.
    pub fn dual_pair(&mut self, pair: &Pair, idx: usize) -> Result<(Pair, usize)> {
        let n = self.rank();
        let dual: Vec<usize> = (0..n)
            .map(|i| self.catalog.dual_index(i))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::NoMutation("scope is not closed under duality".into()))?;
        let mut m_out = Vec::new();
        let mut p_out = Vec::new();
        // (is projective part, id) of the image of each input summand
        let mut images = Vec::with_capacity(pair.len());
        for &id in &pair.m {
            match self.entries[id].pim {
                Some(i) => {
                    p_out.push(dual[i]);
                    images.push((true, dual[i]));
                }
                None => {
                    let t = self.tau(id)?.dual();
                    let ids = self.register(&t)?;
                    if ids.len() != 1 {
                        return Err(Error::NoMutation(
                            "translate of an indecomposable is not indecomposable".into(),
                        ));
                    }
                    m_out.push(ids[0]);
                    images.push((false, ids[0]));
                }
            }
        }
        for &k in &pair.p {
            let id = self.pim_ids[dual[k]];
            m_out.push(id);
            images.push((false, id));
        }
        let out = Pair::new(m_out, p_out);
        let (proj, key) = images[idx];
        let at = if proj {
            out.m.len() + out.p.iter().position(|&k| k == key).expect("image present")
        } else {
            out.m.iter().position(|&i| i == key).expect("image present")
        };
        Ok((out, at))
    }
}

fn cokernel(target: &RepModule, f: &FFMatrix) -> Result<RepModule> {
    if target.dim() == 0 {
        return Ok(target.clone());
    }
    Ok(target.quotient(&f.column_basis())?.0)
}
