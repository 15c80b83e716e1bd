//! Group algebras `kG`, their centers and block decomposition.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::group::{FiniteGroup, SubgroupEmbedding};
use crate::matrix::FFMatrix;

/// An element of `kG` as a coefficient vector indexed by group elements.
pub type AlgElem = Vec<Fe>;

#[derive(Debug)]
pub struct GroupAlgebra {
    group: Arc<FiniteGroup>,
    field: Field,
    blocks: OnceLock<Vec<Block>>,
}

impl GroupAlgebra {
    pub fn new(group: Arc<FiniteGroup>, field: Field) -> Arc<Self> {
        Arc::new(GroupAlgebra {
            group,
            field,
            blocks: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> AlgElem {
        vec![0; self.dim()]
    }

    pub fn unit(&self) -> AlgElem {
        self.basis_element(self.group.identity())
    }

    pub fn basis_element(&self, g: usize) -> AlgElem {
        let mut v = self.zero();
        v[g] = 1;
        v
    }

    pub fn add(&self, a: &[Fe], b: &[Fe]) -> AlgElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect()
    }

    pub fn sub(&self, a: &[Fe], b: &[Fe]) -> AlgElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.sub(x, y))
            .collect()
    }

    pub fn scale(&self, c: Fe, a: &[Fe]) -> AlgElem {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &[Fe], b: &[Fe]) -> AlgElem {
        let f = &self.field;
        let mut out = self.zero();
        let nz_b: Vec<usize> = (0..b.len()).filter(|&j| b[j] != 0).collect();
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = f.mul_row(x);
            for &j in &nz_b {
                let k = self.group.mul(i, j);
                out[k] = f.add(out[k], row[b[j] as usize]);
            }
        }
        out
    }

    pub fn pow(&self, a: &[Fe], mut e: u64, unit: &[Fe]) -> AlgElem {
        let mut base = a.to_vec();
        let mut acc = unit.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Sum of the coefficients: the action on the trivial module.
    pub fn augmentation(&self, a: &[Fe]) -> Fe {
        a.iter().fold(0, |s, &x| self.field.add(s, x))
    }

    /// Image under the anti-automorphism `g -> g^-1`.
    pub fn antipode(&self, a: &[Fe]) -> AlgElem {
        let mut out = self.zero();
        for (g, &x) in a.iter().enumerate() {
            out[self.group.inv(g)] = x;
        }
        out
    }

    pub fn is_central(&self, a: &[Fe]) -> bool {
        self.group.generator_indices().iter().all(|&s| {
            let g = self.basis_element(s);
            self.mul(&g, a) == self.mul(a, &g)
        })
    }

    /// Conjugacy class sums, a basis of the center.
    pub fn center_basis(&self) -> Vec<AlgElem> {
        self.group
            .conjugacy_classes()
            .iter()
            .map(|cls| {
                let mut v = self.zero();
                for &g in cls {
                    v[g] = 1;
                }
                v
            })
            .collect()
    }

    /// Matrix of left multiplication by `a` on the regular representation.
    pub fn left_mult_matrix(&self, a: &[Fe]) -> FFMatrix {
        let n = self.dim();
        let mut m = FFMatrix::zeros(&self.field, n, n);
        for h in 0..n {
            let col = self.mul(a, &self.basis_element(h));
            for (g, &x) in col.iter().enumerate() {
                if x != 0 {
                    m.set(g, h, x);
                }
            }
        }
        m
    }

    fn class_coords(&self, z: &[Fe]) -> Vec<Fe> {
        self.group
            .conjugacy_classes()
            .iter()
            .map(|c| z[c[0]])
            .collect()
    }

    fn class_coords_to_elem(&self, c: &[Fe]) -> AlgElem {
        let mut v = self.zero();
        for (cls, &x) in self.group.conjugacy_classes().iter().zip(c) {
            for &g in cls {
                v[g] = x;
            }
        }
        v
    }

    fn compute_blocks(self: &Arc<Self>) -> Vec<Block> {
        let q = self.field.q() as u64;
        let unit = self.unit();
        let basis = self.center_basis();
        let k = basis.len();
        // Frobenius-fixed subalgebra of the center: ker(z -> z^q - z)
        let mut frob = FFMatrix::zeros(&self.field, k, k);
        for (j, z) in basis.iter().enumerate() {
            let w = self.sub(&self.pow(z, q, &unit), z);
            for (i, x) in self.class_coords(&w).into_iter().enumerate() {
                frob.set(i, j, x);
            }
        }
        let fixed = frob.nullspace();
        let target = fixed.cols();
        let mut idempotents = vec![unit];
        'outer: for c in 0..fixed.cols() {
            let s = self.class_coords_to_elem(&fixed.col(c));
            let mut next = Vec::new();
            for e in &idempotents {
                let se = self.mul(&s, e);
                let mut covered = self.zero();
                for lambda in self.field.elements() {
                    if covered == *e {
                        break;
                    }
                    let shifted = self.sub(&se, &self.scale(lambda, e));
                    let f = self.sub(e, &self.pow(&shifted, q - 1, e));
                    if f.iter().any(|&x| x != 0) {
                        covered = self.add(&covered, &f);
                        next.push(f);
                    }
                }
            }
            idempotents = next;
            if idempotents.len() == target {
                break 'outer;
            }
        }
        let mut blocks: Vec<Block> = idempotents
            .into_iter()
            .map(|e| {
                let dim = self.left_mult_matrix(&e).rank();
                let principal = self.augmentation(&e) != 0;
                Block {
                    algebra: Arc::clone(self),
                    idempotent: Arc::new(e),
                    dim,
                    principal,
                    index: 0,
                }
            })
            .collect();
        blocks.sort_by(|a, b| {
            (!a.principal, a.dim, a.idempotent.as_slice()).cmp(&(
                !b.principal,
                b.dim,
                b.idempotent.as_slice(),
            ))
        });
        for (i, b) in blocks.iter_mut().enumerate() {
            b.index = i;
        }
        blocks
    }

    /// Central primitive idempotents, principal block first, then by dimension.
    pub fn blocks(self: &Arc<Self>) -> &[Block] {
        self.blocks.get_or_init(|| self.compute_blocks())
    }

    pub fn principal_block(self: &Arc<Self>) -> &Block {
        &self.blocks()[0]
    }
}

/// A block of `kG`, identified with its central primitive idempotent.
#[derive(Clone, Debug)]
pub struct Block {
    algebra: Arc<GroupAlgebra>,
    idempotent: Arc<AlgElem>,
    dim: usize,
    principal: bool,
    index: usize,
}

impl PartialEq for Block {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.idempotent == other.idempotent
    }
}

impl Block {
    pub fn algebra(&self) -> &Arc<GroupAlgebra> {
        &self.algebra
    }

    pub fn idempotent(&self) -> &[Fe] {
        &self.idempotent
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_principal(&self) -> bool {
        self.principal
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Group elements on which the idempotent is nonzero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.idempotent.len())
            .filter(|&g| self.idempotent[g] != 0)
            .collect()
    }

    /// Whether the block is its own image under `g -> g^-1`.
    pub fn is_self_dual(&self) -> bool {
        self.algebra.antipode(&self.idempotent) == *self.idempotent
    }
}

/// Whether `bt` (a block of the overgroup) covers `b` (a block of the normal subgroup).
pub fn covers(bt: &Block, b: &Block, emb: &SubgroupEmbedding) -> Result<bool> {
    emb.require_normal()?;
    check_embedding(bt, b, emb)?;
    let amb = bt.algebra();
    let mut image = amb.zero();
    for (g, &x) in b.idempotent().iter().enumerate() {
        image[emb.element_map()[g]] = x;
    }
    Ok(amb.mul(bt.idempotent(), &image).iter().any(|&x| x != 0))
}

fn check_embedding(bt: &Block, b: &Block, emb: &SubgroupEmbedding) -> Result<()> {
    if bt.algebra().field() != b.algebra().field() {
        return Err(Error::FieldMismatch);
    }
    if bt.algebra().group().as_ref() != emb.amb().as_ref()
        || b.algebra().group().as_ref() != emb.sub().as_ref()
    {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

/// `x e x^-1` for a subgroup-algebra element `e` and an ambient element `x`.
pub fn conjugate_element(emb: &SubgroupEmbedding, x: usize, e: &[Fe]) -> Result<AlgElem> {
    let amb = emb.amb();
    let mut out = vec![0; e.len()];
    for (g, &c) in e.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let y = amb.conjugate(x, emb.element_map()[g]);
        out[emb.preimage(y).ok_or(Error::NotInSubgroup)?] = c;
    }
    Ok(out)
}

/// The stabilizer `I(B) = {x : x B x^-1 = B}` of a block of a normal subgroup.
#[derive(Debug)]
pub struct InertialGroup {
    block: Block,
    group: Arc<FiniteGroup>,
    /// Ambient coset representatives lying in `I(B)`, one per coset of `G`.
    reps: Vec<usize>,
    members: Vec<usize>,
    sub_emb: Arc<SubgroupEmbedding>,
    amb_emb: Arc<SubgroupEmbedding>,
}

impl InertialGroup {
    pub fn block(&self) -> &Block {
        &self.block
    }

    /// `I(B)` as a permutation group on the ambient points.
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.reps
    }

    /// Ambient element indices lying in `I(B)`, sorted.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn index_over_sub(&self) -> usize {
        self.reps.len()
    }

    /// `G -> I(B)`
    pub fn sub_embedding(&self) -> &Arc<SubgroupEmbedding> {
        &self.sub_emb
    }

    /// `I(B) -> G~`
    pub fn amb_embedding(&self) -> &Arc<SubgroupEmbedding> {
        &self.amb_emb
    }
}

pub fn inertial_group(b: &Block, emb: &SubgroupEmbedding) -> Result<InertialGroup> {
    emb.require_normal()?;
    if b.algebra().group().as_ref() != emb.sub().as_ref() {
        return Err(Error::GroupMismatch);
    }
    let amb = emb.amb();
    let mut reps = Vec::new();
    for &x in emb.coset_reps() {
        if conjugate_element(emb, x, b.idempotent())? == b.idempotent() {
            reps.push(x);
        }
    }
    let mut members: Vec<usize> = reps
        .iter()
        .flat_map(|&x| emb.element_map().iter().map(move |&g| amb.mul(x, g)))
        .collect();
    members.sort_unstable();
    let mut gens: Vec<Vec<u32>> = emb
        .sub()
        .generators()
        .iter()
        .map(|g| pad(g, amb.degree()))
        .collect();
    gens.extend(
        reps.iter()
            .filter(|&&x| x != 0)
            .map(|&x| amb.element(x).clone()),
    );
    if gens.is_empty() {
        gens.push((0..amb.degree() as u32).collect());
    }
    let group = FiniteGroup::with_cap(amb.degree(), gens, amb.order())?;
    let sub_emb = Arc::new(SubgroupEmbedding::new(emb.sub().clone(), group.clone())?);
    let amb_emb = Arc::new(SubgroupEmbedding::new(group.clone(), amb.clone())?);
    Ok(InertialGroup {
        block: b.clone(),
        group,
        reps,
        members,
        sub_emb,
        amb_emb,
    })
}

fn pad(p: &[u32], degree: usize) -> Vec<u32> {
    let mut v = p.to_vec();
    v.extend(p.len() as u32..degree as u32);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn s3() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(3, vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    fn c3() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(3, vec![vec![1, 2, 0]]).unwrap()
    }

    fn a4() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    fn s4() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap()
    }

    /// Every idempotent of the center, found by enumerating all of it.
    fn brute_force_central_idempotents(a: &GroupAlgebra) -> Vec<AlgElem> {
        let basis = a.center_basis();
        let q = a.field().q();
        let k = basis.len();
        let mut out = Vec::new();
        for n in 0..q.pow(k as u32) {
            let mut z = a.zero();
            let mut m = n;
            for b in &basis {
                let c = (m % q) as Fe;
                m /= q;
                z = a.add(&z, &a.scale(c, b));
            }
            if z.iter().any(|&x| x != 0) && a.mul(&z, &z) == z {
                out.push(z);
            }
        }
        out
    }

    fn primitive_count(a: &GroupAlgebra) -> usize {
        let all = brute_force_central_idempotents(a);
        all.iter()
            .filter(|e| !all.iter().any(|f| f != *e && a.mul(f, e) == **f))
            .count()
    }

    #[test]
    fn s3_blocks_match_brute_force() {
        for (p, expected) in [(3, 1), (2, 2)] {
            let a = GroupAlgebra::new(s3(), FieldSpec::new(p, 1).unwrap());
            assert_eq!(primitive_count(&a), expected, "p = {p}");
            assert_eq!(a.blocks().len(), expected, "p = {p}");
        }
    }

    #[test]
    fn block_invariants() {
        for (g, p, m) in [
            (a4(), 2, 2),
            (s4(), 2, 1),
            (s3(), 2, 1),
            (s3(), 3, 1),
            (c3(), 2, 2),
        ] {
            let a = GroupAlgebra::new(g.clone(), FieldSpec::new(p, m).unwrap());
            let blocks = a.blocks();
            let mut sum = a.zero();
            for (i, b) in blocks.iter().enumerate() {
                let e = b.idempotent();
                assert!(a.is_central(e));
                assert_eq!(a.mul(e, e), e);
                for c in &blocks[i + 1..] {
                    assert!(a.mul(e, c.idempotent()).iter().all(|&x| x == 0));
                }
                sum = a.add(&sum, e);
            }
            assert_eq!(sum, a.unit());
            assert_eq!(blocks.iter().map(|b| b.dim()).sum::<usize>(), g.order());
            assert!(blocks[0].is_principal());
            assert!(blocks[1..].iter().all(|b| !b.is_principal()));
        }
    }

    #[test]
    fn single_block_cases() {
        let a = GroupAlgebra::new(a4(), FieldSpec::new(2, 2).unwrap());
        assert_eq!(a.blocks().len(), 1);
        let a = GroupAlgebra::new(s4(), FieldSpec::new(2, 1).unwrap());
        assert_eq!(a.blocks().len(), 1);
        let c2 = FiniteGroup::from_generators(2, vec![vec![1, 0]]).unwrap();
        let a = GroupAlgebra::new(c2, FieldSpec::new(2, 1).unwrap());
        assert_eq!(a.blocks().len(), 1);
        assert_eq!(a.principal_block().dim(), 2);
    }

    #[test]
    fn c3_over_gf4_splits_into_three() {
        let a = GroupAlgebra::new(c3(), FieldSpec::new(2, 2).unwrap());
        assert_eq!(a.blocks().len(), 3);
        assert!(a.blocks().iter().all(|b| b.dim() == 1));
    }

    #[test]
    fn covering_and_inertia() {
        let f = FieldSpec::new(2, 2).unwrap();
        let emb = SubgroupEmbedding::new(a4(), s4()).unwrap();
        let a = GroupAlgebra::new(a4(), f.clone());
        let at = GroupAlgebra::new(s4(), f);
        assert!(covers(at.principal_block(), a.principal_block(), &emb).unwrap());
        let ig = inertial_group(a.principal_block(), &emb).unwrap();
        assert_eq!(ig.group().order(), 24);
        assert_eq!(ig.coset_reps().len(), 2);

        // C3 in S3 at p = 2: the two non-principal blocks of kC3 are swapped
        let f = FieldSpec::new(2, 2).unwrap();
        let emb = SubgroupEmbedding::new(c3(), s3()).unwrap();
        let a = GroupAlgebra::new(c3(), f.clone());
        let at = GroupAlgebra::new(s3(), f);
        let (b0, b1) = (&a.blocks()[0], &a.blocks()[1]);
        let (bt0, bt1) = (&at.blocks()[0], &at.blocks()[1]);
        assert!(covers(bt0, b0, &emb).unwrap());
        assert!(!covers(bt1, b0, &emb).unwrap());
        assert!(covers(bt1, b1, &emb).unwrap());
        assert!(!covers(bt0, b1, &emb).unwrap());
        assert_eq!(inertial_group(b0, &emb).unwrap().group().order(), 6);
        let ig = inertial_group(b1, &emb).unwrap();
        assert_eq!(ig.group().order(), 3);
        assert_eq!(ig.coset_reps(), &[0]);
    }

    #[test]
    fn covering_requires_normality() {
        let f = FieldSpec::new(2, 1).unwrap();
        let sub = FiniteGroup::from_generators(4, vec![vec![1, 0, 2, 3]]).unwrap();
        let emb = SubgroupEmbedding::new(sub.clone(), s4()).unwrap();
        let a = GroupAlgebra::new(sub, f.clone());
        let at = GroupAlgebra::new(s4(), f);
        assert!(matches!(
            covers(at.principal_block(), a.principal_block(), &emb),
            Err(Error::NotNormal)
        ));
    }
}
