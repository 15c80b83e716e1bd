//! Permutation groups, subgroup embeddings and coset representatives.
//!
//! Permutations act on `0..degree` and compose right-to-left:
//! `(a * b)(x) = a(b(x))`. Elements are stored sorted by their image tuples,
//! so the identity is always element 0.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Perm = Vec<u32>;

pub const DEFAULT_ORDER_CAP: usize = 10_000;

const TABLE_LIMIT: usize = 2048;

pub fn compose(a: &[u32], b: &[u32]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn invert(a: &[u32]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

fn validate(p: &[u32], degree: usize) -> Result<()> {
    if p.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "{p:?} has length {} but degree is {degree}",
            p.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x as usize >= degree || seen[x as usize] {
            return Err(Error::InvalidPermutation(format!(
                "{p:?} is not a bijection of 0..{degree}"
            )));
        }
        seen[x as usize] = true;
    }
    Ok(())
}

/// Parses cycle notation such as `"(0 1 2)(3 4)"` (0-based points; commas are
/// accepted as separators). `"()"` is the identity.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
    let mut perm: Perm = (0..degree as u32).collect();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!("expected '(' in cycle string {s:?}")));
        };
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let points: Vec<u32> = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad point {t:?}: {e}")))
            })
            .collect::<Result<_>>()?;
        for (i, &x) in points.iter().enumerate() {
            if x as usize >= degree {
                return Err(Error::InvalidPermutation(format!(
                    "point {x} exceeds degree {degree}"
                )));
            }
            let y = points[(i + 1) % points.len()];
            perm[x as usize] = y;
        }
        rest = body[close + 1..].trim_start();
    }
    validate(&perm, degree)?;
    Ok(perm)
}

/// One generator in a group file: an image list or a cycle string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Images(Vec<u32>),
    Cycles(String),
}

/// On-disk group description: `{"degree": n, "generators": [[images...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl GroupSpec {
    pub fn permutations(&self) -> Result<Vec<Perm>> {
        self.generators
            .iter()
            .map(|g| match g {
                GeneratorSpec::Images(v) => validate(v, self.degree).map(|_| v.clone()),
                GeneratorSpec::Cycles(s) => parse_cycles(s, self.degree),
            })
            .collect()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[derive(Debug)]
pub struct FiniteGroup {
    degree: usize,
    name: Option<String>,
    generators: Vec<Perm>,
    gen_index: Vec<usize>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Option<Vec<u32>>,
    inverses: Vec<usize>,
    /// `tree[g] = Some((s, h))` with `g = gen_s * h`; `None` for the identity.
    tree: Vec<Option<(usize, usize)>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.generators == other.generators
            && self.elements.len() == other.elements.len()
    }
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Arc<Self>> {
        Self::with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_spec(spec: &GroupSpec, cap: usize) -> Result<Arc<Self>> {
        let mut g = Self::build(spec.degree, spec.permutations()?, cap)?;
        g.name = spec.name.clone();
        Ok(Arc::new(g))
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::build(degree, generators, cap)?))
    }

    fn build(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            validate(g, degree)?;
        }
        let identity: Perm = (0..degree as u32).collect();
        let mut found: HashMap<Perm, usize> = HashMap::new();
        let mut raw: Vec<Perm> = vec![identity.clone()];
        let mut raw_tree: Vec<Option<(usize, usize)>> = vec![None];
        found.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for (s, gen) in generators.iter().enumerate() {
                let g = compose(gen, &raw[h]);
                if !found.contains_key(&g) {
                    if raw.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    found.insert(g.clone(), raw.len());
                    raw.push(g);
                    raw_tree.push(Some((s, h)));
                    queue.push_back(raw.len() - 1);
                }
            }
        }
        let mut order: Vec<usize> = (0..raw.len()).collect();
        order.sort_by(|&a, &b| raw[a].cmp(&raw[b]));
        let mut new_of_old = vec![0; raw.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let elements: Vec<Perm> = order.iter().map(|&o| raw[o].clone()).collect();
        let tree: Vec<Option<(usize, usize)>> = order
            .iter()
            .map(|&o| raw_tree[o].map(|(s, h)| (s, new_of_old[h])))
            .collect();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = index[&compose(&elements[a], &elements[b])] as u32;
                }
            }
            t
        });
        let inverses = elements.iter().map(|p| index[&invert(p)]).collect();
        let gen_index = generators.iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup {
            degree,
            name: None,
            generators,
            gen_index,
            elements,
            index,
            table,
            inverses,
            tree,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        group.compute_classes();
        Ok(group)
    }

    fn compute_classes(&mut self) {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let g = members[i];
                for &s in &self.gen_index {
                    let c = self.conjugate(s, g);
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        members.push(c);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        self.classes = classes;
        self.class_of = class_of;
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Element indices of the generators.
    pub fn generator_indices(&self) -> &[usize] {
        &self.gen_index
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&compose(&self.elements[a], &self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x * g * x^-1`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// Generator-word decomposition: `Some((s, h))` means element `= gen_s * h`.
    pub fn tree(&self) -> &[Option<(usize, usize)>] {
        &self.tree
    }

    /// Elements in an order where every element's tree parent precedes it.
    pub fn bfs_order(&self) -> Vec<usize> {
        let n = self.order();
        let mut depth = vec![usize::MAX; n];
        fn d(tree: &[Option<(usize, usize)>], depth: &mut [usize], g: usize) -> usize {
            if depth[g] != usize::MAX {
                return depth[g];
            }
            let v = match tree[g] {
                None => 0,
                Some((_, h)) => d(tree, depth, h) + 1,
            };
            depth[g] = v;
            v
        }
        for g in 0..n {
            d(&self.tree, &mut depth, g);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&g| (depth[g], g));
        order
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        (0..self.order()).fold(1u64, |acc, g| {
            let o = self.element_order(g) as u64;
            acc / gcd(acc, o) * o
        })
    }

    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec {
            degree: self.degree,
            generators: self
                .generators
                .iter()
                .map(|g| GeneratorSpec::Images(g.clone()))
                .collect(),
            name: self.name.clone(),
        }
    }
}

/// An injective homomorphism of a permutation group into a larger one. The
/// subgroup's permutations are padded with fixed points up to the ambient degree.
#[derive(Debug)]
pub struct SubgroupEmbedding {
    sub: Arc<FiniteGroup>,
    amb: Arc<FiniteGroup>,
    element_map: Vec<usize>,
    preimage: Vec<Option<usize>>,
    coset_reps: Vec<usize>,
    coset_of: Vec<usize>,
    normal: bool,
}

impl SubgroupEmbedding {
    pub fn new(sub: Arc<FiniteGroup>, amb: Arc<FiniteGroup>) -> Result<Self> {
        if sub.degree() > amb.degree() {
            return Err(Error::NotSubgroup);
        }
        let mut element_map = Vec::with_capacity(sub.order());
        for p in sub.elements() {
            let mut padded = p.clone();
            padded.extend(sub.degree() as u32..amb.degree() as u32);
            element_map.push(amb.index_of(&padded).ok_or(Error::NotSubgroup)?);
        }
        let mut preimage = vec![None; amb.order()];
        for (i, &a) in element_map.iter().enumerate() {
            preimage[a] = Some(i);
        }
        let normal = amb.generator_indices().iter().all(|&s| {
            sub.generator_indices()
                .iter()
                .all(|&g| preimage[amb.conjugate(s, element_map[g])].is_some())
        });
        // left cosets xG, each represented by its smallest element
        let mut coset_of = vec![usize::MAX; amb.order()];
        let mut coset_reps = Vec::new();
        for x in 0..amb.order() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let id = coset_reps.len();
            coset_reps.push(x);
            for &g in &element_map {
                coset_of[amb.mul(x, g)] = id;
            }
        }
        Ok(SubgroupEmbedding {
            sub,
            amb,
            element_map,
            preimage,
            coset_reps,
            coset_of,
            normal,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        Self::new(group.clone(), group).expect("a group embeds in itself")
    }

    pub fn sub(&self) -> &Arc<FiniteGroup> {
        &self.sub
    }

    pub fn amb(&self) -> &Arc<FiniteGroup> {
        &self.amb
    }

    pub fn is_normal(&self) -> bool {
        self.normal
    }

    pub fn element_map(&self) -> &[usize] {
        &self.element_map
    }

    /// The subgroup element mapping to `a`, if any.
    pub fn preimage(&self, a: usize) -> Option<usize> {
        self.preimage[a]
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    /// Index of the left coset containing an ambient element.
    pub fn coset_of(&self, a: usize) -> usize {
        self.coset_of[a]
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    /// `x^-1 g x` for an ambient `x` and a subgroup element `g`, as a subgroup
    /// element.
    pub fn conjugate_into_sub(&self, x: usize, g: usize) -> Result<usize> {
        let amb = &self.amb;
        let c = amb.mul(amb.mul(amb.inv(x), self.element_map[g]), x);
        self.preimage[c].ok_or(Error::NotInSubgroup)
    }

    pub fn require_normal(&self) -> Result<()> {
        if self.normal {
            Ok(())
        } else {
            Err(Error::NotNormal)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn a4() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(4, vec![vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    pub(crate) fn s4() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap()
    }

    #[test]
    fn cyclic_two() {
        let g = FiniteGroup::from_generators(2, vec![vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.conjugacy_classes().len(), 2);
    }

    #[test]
    fn a4_classes_by_brute_force() {
        let g = a4();
        assert_eq!(g.order(), 12);
        // brute force: x ~ y iff some z has z x z^-1 = y
        let n = g.order();
        let mut seen = vec![false; n];
        let mut count = 0;
        for x in 0..n {
            if seen[x] {
                continue;
            }
            count += 1;
            for z in 0..n {
                seen[g.conjugate(z, x)] = true;
            }
        }
        assert_eq!(count, 4);
        assert_eq!(g.conjugacy_classes().len(), 4);
    }

    #[test]
    fn s4_order_and_exponent() {
        let g = s4();
        assert_eq!(g.order(), 24);
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert_eq!(g.exponent(), 12);
    }

    #[test]
    fn tree_words_reproduce_elements() {
        let g = s4();
        for (e, node) in g.tree().iter().enumerate() {
            if let Some((s, h)) = *node {
                assert_eq!(g.mul(g.generator_indices()[s], h), e);
            }
        }
        let order = g.bfs_order();
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        for (e, node) in g.tree().iter().enumerate() {
            if let Some((_, h)) = *node {
                assert!(pos[&h] < pos[&e]);
            }
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let r = FiniteGroup::with_cap(4, vec![vec![1, 0, 2, 3], vec![1, 2, 3, 0]], 10);
        assert!(matches!(r, Err(Error::GroupTooLarge { cap: 10 })));
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(
            parse_cycles("(0 1 2)(3 4)", 5).unwrap(),
            vec![1, 2, 0, 4, 3]
        );
        assert_eq!(parse_cycles("()", 3).unwrap(), vec![0, 1, 2]);
        assert!(parse_cycles("(0 5)", 3).is_err());
        let spec =
            GroupSpec::from_json(r#"{"degree":4,"generators":["(0 1)", [1,2,3,0]]}"#).unwrap();
        let g = FiniteGroup::from_spec(&spec, 100).unwrap();
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn a4_is_normal_in_s4() {
        let emb = SubgroupEmbedding::new(a4(), s4()).unwrap();
        assert!(emb.is_normal());
        assert_eq!(emb.index(), 2);
        assert_eq!(emb.coset_reps()[0], 0);
        let s3 = FiniteGroup::from_generators(3, vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let emb = SubgroupEmbedding::new(s3, s4()).unwrap();
        assert!(!emb.is_normal());
        assert_eq!(emb.index(), 4);
    }

    #[test]
    fn not_a_subgroup() {
        let c4 = FiniteGroup::from_generators(4, vec![vec![1, 2, 3, 0]]).unwrap();
        assert!(matches!(
            SubgroupEmbedding::new(s4(), c4),
            Err(Error::NotSubgroup)
        ));
    }
}
