//! Krull-Schmidt decomposition through the endomorphism ring.
//!
//! An endomorphism `psi` with `psi - lambda` neither nilpotent nor invertible
//! splits the module along the Fitting decomposition of `psi - lambda`. When
//! no such element exists the module is certified indecomposable by exhibiting
//! a nilpotent ideal of codimension one in `End(M)`.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::matrix::FFMatrix;

use super::hom::hom_space;
use super::RepModule;

pub const DEFAULT_DIM_CAP: usize = 512;
pub const DEFAULT_SEED: u64 = 0x7a75_7469_6c74;

static SESSION_SEED: AtomicU64 = AtomicU64::new(DEFAULT_SEED);
static SESSION_DIM_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DIM_CAP);

/// Seed and dimension cap picked up by [`DecomposeOptions::default`] for the
/// rest of the process.
pub fn set_session_defaults(seed: u64, dim_cap: usize) {
    SESSION_SEED.store(seed, Ordering::Relaxed);
    SESSION_DIM_CAP.store(dim_cap, Ordering::Relaxed);
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    pub random_tries: usize,
    /// Exhaustive search over `End(M)` is used when it has at most this many elements.
    pub exhaustive_limit: usize,
    pub dim_cap: usize,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            seed: SESSION_SEED.load(Ordering::Relaxed),
            random_tries: 200,
            exhaustive_limit: 1 << 14,
            dim_cap: SESSION_DIM_CAP.load(Ordering::Relaxed),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: RepModule,
    /// `dim M x dim S`
    pub inclusion: FFMatrix,
    /// `dim S x dim M`, with `projection * inclusion = I`.
    pub projection: FFMatrix,
    /// Basis of the radical of `End(S)`.
    pub radical: Vec<FFMatrix>,
}

#[derive(Clone, Debug)]
pub struct IsoClass {
    /// Indices into [`Decomposition::summands`]; the first is the representative.
    pub members: Vec<usize>,
}

impl IsoClass {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub module: RepModule,
    pub summands: Vec<Summand>,
    pub classes: Vec<IsoClass>,
}

impl Decomposition {
    /// Number of isomorphism classes of indecomposable summands.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representative(&self, class: usize) -> &Summand {
        &self.summands[self.classes[class].representative()]
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.multiplicity()).collect()
    }

    pub fn is_indecomposable(&self) -> bool {
        self.summands.len() == 1
    }

    pub fn is_basic(&self) -> bool {
        self.classes.iter().all(|c| c.multiplicity() == 1)
    }
}

fn stable_power(psi: &FFMatrix) -> FFMatrix {
    let d = psi.rows();
    let mut a = psi.clone();
    let mut e = 1;
    while e < d {
        a = a.mul(&a);
        e *= 2;
    }
    a
}

/// `(ker psi^d, im psi^d)` when both are nonzero.
fn fitting(psi: &FFMatrix) -> Option<(FFMatrix, FFMatrix)> {
    let p = stable_power(psi);
    let ker = p.nullspace();
    if ker.cols() == 0 || ker.cols() == psi.rows() {
        return None;
    }
    Some((ker, p.column_basis()))
}

fn shift(a: &FFMatrix, lambda: Fe) -> FFMatrix {
    let f = a.field();
    let mut s = a.clone();
    for i in 0..a.rows() {
        s.set(i, i, f.sub(s.get(i, i), lambda));
    }
    s
}

fn poly_eval(f: &Field, coeffs: &[Fe], x: Fe) -> Fe {
    coeffs
        .iter()
        .rev()
        .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Some eigenvalue of `a` in the ground field, if one exists.
pub(crate) fn eigenvalue(a: &FFMatrix) -> Option<Fe> {
    let d = a.rows();
    let f = a.field();
    for start in 0..d.min(4) {
        let mut v = vec![0; d];
        v[start] = 1;
        let mut krylov = vec![v];
        loop {
            let w = a.mul_vec(krylov.last().expect("nonempty"));
            let k = FFMatrix::from_cols(f, d, &krylov);
            match k.solve(&FFMatrix::from_vec(f, d, 1, w.clone())) {
                Some(x) => {
                    // minimal polynomial of v: t^k - sum x_i t^i
                    let mut coeffs: Vec<Fe> =
                        (0..krylov.len()).map(|i| f.neg(x.get(i, 0))).collect();
                    coeffs.push(1);
                    if let Some(l) = f.elements().find(|&l| poly_eval(f, &coeffs, l) == 0) {
                        return Some(l);
                    }
                    break;
                }
                None => krylov.push(w),
            }
        }
    }
    if f.q() <= 64 {
        return f.elements().find(|&l| shift(a, l).rank() < d);
    }
    None
}

enum Examined {
    Local(Vec<FFMatrix>),
    Split(FFMatrix, FFMatrix),
    Unknown,
}

fn vectorized(field: &Field, mats: &[FFMatrix]) -> FFMatrix {
    let n = mats.first().map_or(0, |m| m.rows() * m.cols());
    FFMatrix::from_cols(
        field,
        n,
        &mats.iter().map(|m| m.vectorize()).collect::<Vec<_>>(),
    )
}

fn examine(end: &[FFMatrix]) -> Examined {
    if end.len() == 1 {
        return Examined::Local(Vec::new());
    }
    let field = end[0].field().clone();
    let mut shifted = Vec::with_capacity(end.len());
    for e in end {
        let Some(l) = eigenvalue(e) else {
            return Examined::Unknown;
        };
        let s = shift(e, l);
        if let Some((k, i)) = fitting(&s) {
            return Examined::Split(k, i);
        }
        shifted.push(s);
    }
    let vecs = vectorized(&field, &shifted);
    let pivots = vecs.rref().1;
    if pivots.len() != end.len() - 1 {
        return Examined::Unknown;
    }
    let radical: Vec<FFMatrix> = pivots.iter().map(|&i| shifted[i].clone()).collect();
    let span = vectorized(&field, &radical);
    // closed under multiplication and nilpotent
    let mut layer = radical.clone();
    for _ in 0..=radical[0].rows() {
        let mut products = Vec::new();
        for a in &radical {
            for b in &layer {
                let p = a.mul(b);
                if !p.is_zero() {
                    products.push(p);
                }
            }
        }
        if products.is_empty() {
            return Examined::Local(radical);
        }
        let pv = vectorized(&field, &products);
        if !span.spans(&pv) {
            return Examined::Unknown;
        }
        let next_pivots = pv.rref().1;
        // the powers of a closed subspace decrease; a repeat means not nilpotent
        if next_pivots.len() >= layer.len() {
            return Examined::Unknown;
        }
        layer = next_pivots.iter().map(|&i| products[i].clone()).collect();
    }
    Examined::Unknown
}

fn try_element(psi: &FFMatrix) -> Option<(FFMatrix, FFMatrix)> {
    let l = eigenvalue(psi)?;
    fitting(&shift(psi, l))
}

fn search_split(
    end: &[FFMatrix],
    opts: &DecomposeOptions,
    rng: &mut ChaCha8Rng,
) -> Option<(FFMatrix, FFMatrix)> {
    let field = end[0].field().clone();
    let q = field.q();
    for a in end {
        for b in end {
            if let Some(s) = try_element(&a.mul(b)) {
                return Some(s);
            }
        }
    }
    for _ in 0..opts.random_tries {
        let mut psi = FFMatrix::zeros(&field, end[0].rows(), end[0].cols());
        for e in end {
            let c = rng.gen_range(0..q) as Fe;
            if c != 0 {
                psi.add_scaled(c, e);
            }
        }
        if let Some(s) = try_element(&psi) {
            return Some(s);
        }
    }
    let total = (q as f64).powi(end.len() as i32);
    if total <= opts.exhaustive_limit as f64 {
        for n in 1..total as usize {
            let mut psi = FFMatrix::zeros(&field, end[0].rows(), end[0].cols());
            let mut m = n;
            for e in end {
                let c = (m % q) as Fe;
                m /= q;
                if c != 0 {
                    psi.add_scaled(c, e);
                }
            }
            if let Some(s) = try_element(&psi) {
                return Some(s);
            }
        }
    }
    None
}

struct Piece {
    inclusion: FFMatrix,
    module: RepModule,
    radical: Vec<FFMatrix>,
}

fn split_fully(m: &RepModule, opts: &DecomposeOptions, rng: &mut ChaCha8Rng) -> Result<Vec<Piece>> {
    let mut out = Vec::new();
    let mut stack = vec![(FFMatrix::identity(m.field(), m.dim()), m.clone())];
    let mut attempts = 0;
    while let Some((incl, module)) = stack.pop() {
        if module.dim() == 0 {
            continue;
        }
        let end = hom_space(&module, &module)?.basis;
        let split = match examine(&end) {
            Examined::Local(radical) => {
                out.push(Piece {
                    inclusion: incl,
                    module,
                    radical,
                });
                continue;
            }
            Examined::Split(k, i) => (k, i),
            Examined::Unknown => {
                attempts += 1;
                search_split(&end, opts, rng).ok_or(Error::DecompositionFailed(attempts))?
            }
        };
        let (k, i) = split;
        // push in reverse so the kernel part is processed first
        let si = module.submodule(&i)?;
        let sk = module.submodule(&k)?;
        stack.push((incl.mul(&i), si));
        stack.push((incl.mul(&k), sk));
    }
    Ok(out)
}

/// Isomorphism between two indecomposable modules, if there is one: some basis
/// element of the Hom space is invertible exactly when they are isomorphic.
pub fn iso_indecomposable(a: &RepModule, b: &RepModule) -> Result<Option<FFMatrix>> {
    a.same_context(b)?;
    if a.dim() != b.dim() {
        return Ok(None);
    }
    if a.dim() == 0 {
        return Ok(Some(FFMatrix::zeros(a.field(), 0, 0)));
    }
    Ok(hom_space(a, b)?
        .basis
        .into_iter()
        .find(|phi| phi.inverse().is_some()))
}

pub fn decompose(m: &RepModule) -> Result<Decomposition> {
    decompose_with(m, &DecomposeOptions::default())
}

pub fn decompose_with(m: &RepModule, opts: &DecomposeOptions) -> Result<Decomposition> {
    if m.dim() > opts.dim_cap {
        return Err(Error::ModuleTooLarge {
            dim: m.dim(),
            cap: opts.dim_cap,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let pieces = split_fully(m, opts, &mut rng)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, p) in pieces.iter().enumerate() {
        let mut found = None;
        for (c, members) in classes.iter().enumerate() {
            let rep = &pieces[members[0]];
            if rep.module.dim() == p.module.dim()
                && iso_indecomposable(&rep.module, &p.module)?.is_some()
            {
                found = Some(c);
                break;
            }
        }
        match found {
            Some(c) => classes[c].push(i),
            None => classes.push(vec![i]),
        }
    }
    classes.sort_by_key(|members| (pieces[members[0]].module.dim(), members[0]));
    let order: Vec<usize> = classes.iter().flatten().copied().collect();
    let mut slots: Vec<Option<Piece>> = pieces.into_iter().map(Some).collect();
    let ordered: Vec<Piece> = order
        .iter()
        .map(|&i| slots[i].take().expect("each piece once"))
        .collect();
    let f = m.field();
    let incls: Vec<&FFMatrix> = ordered.iter().map(|p| &p.inclusion).collect();
    let full = FFMatrix::hstack(f, m.dim(), &incls);
    let inv = full
        .inverse()
        .ok_or_else(|| Error::DimensionMismatch("summands do not span the module".into()))?;
    let mut summands = Vec::with_capacity(ordered.len());
    let mut offset = 0;
    for p in ordered {
        let d = p.module.dim();
        summands.push(Summand {
            projection: inv.block(offset, d, 0, m.dim()),
            inclusion: p.inclusion,
            module: p.module,
            radical: p.radical,
        });
        offset += d;
    }
    let mut next = 0;
    let classes = classes
        .iter()
        .map(|members| {
            let c = IsoClass {
                members: (next..next + members.len()).collect(),
            };
            next += members.len();
            c
        })
        .collect();
    Ok(Decomposition {
        module: m.clone(),
        summands,
        classes,
    })
}

/// An isomorphism `m -> n` when one exists.
pub fn is_isomorphic(m: &RepModule, n: &RepModule) -> Result<Option<FFMatrix>> {
    m.same_context(n)?;
    if m.dim() != n.dim() {
        return Ok(None);
    }
    if m.dim() == 0 {
        return Ok(Some(FFMatrix::zeros(m.field(), 0, 0)));
    }
    let hs = hom_space(m, n)?;
    if hs.is_zero() {
        return Ok(None);
    }
    if let Some(phi) = hs.basis.iter().find(|phi| phi.inverse().is_some()) {
        return Ok(Some(phi.clone()));
    }
    let f = m.field();
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    for _ in 0..8 {
        let mut psi = FFMatrix::zeros(f, n.dim(), m.dim());
        for b in &hs.basis {
            psi.add_scaled(rng.gen_range(0..f.q()) as Fe, b);
        }
        if psi.inverse().is_some() {
            return Ok(Some(psi));
        }
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.summands.len() != dn.summands.len() || dm.class_count() != dn.class_count() {
        return Ok(None);
    }
    let mut used = vec![false; dn.class_count()];
    let mut witness = FFMatrix::zeros(f, n.dim(), m.dim());
    for cm in &dm.classes {
        let rep = &dm.summands[cm.representative()].module;
        let mut matched = None;
        for (j, cn) in dn.classes.iter().enumerate() {
            if used[j] || cn.multiplicity() != cm.multiplicity() {
                continue;
            }
            if iso_indecomposable(rep, &dn.summands[cn.representative()].module)?.is_some() {
                matched = Some(j);
                break;
            }
        }
        let Some(j) = matched else {
            return Ok(None);
        };
        used[j] = true;
        for (&a, &b) in cm.members.iter().zip(&dn.classes[j].members) {
            let (sa, sb) = (&dm.summands[a], &dn.summands[b]);
            let iso = iso_indecomposable(&sa.module, &sb.module)?.ok_or_else(|| {
                Error::DimensionMismatch("summands in one class are not isomorphic".into())
            })?;
            witness = witness.add(&sb.inclusion.mul(&iso).mul(&sa.projection));
        }
    }
    Ok(Some(witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::group::FiniteGroup;
    use crate::module::tests::s3;
    use std::sync::Arc;

    fn c2() -> Arc<FiniteGroup> {
        FiniteGroup::from_generators(2, vec![vec![1, 0]]).unwrap()
    }

    #[test]
    fn local_algebra_is_indecomposable() {
        let f = FieldSpec::new(2, 1).unwrap();
        let d = decompose(&RepModule::regular(c2(), f)).unwrap();
        assert!(d.is_indecomposable());
        assert_eq!(d.summands[0].radical.len(), 1);
    }

    #[test]
    fn semisimple_sum_has_one_class() {
        let f = FieldSpec::new(2, 2).unwrap();
        let c3 = FiniteGroup::from_generators(3, vec![vec![1, 2, 0]]).unwrap();
        let w = f.primitive_element();
        let s = RepModule::one_dimensional(c3.clone(), f.clone(), &[w]).unwrap();
        let d = decompose(&s.power(2)).unwrap();
        assert_eq!(d.class_count(), 1);
        assert_eq!(d.multiplicities(), vec![2]);
        let reg = decompose(&RepModule::regular(c3, f)).unwrap();
        assert_eq!(reg.multiplicities(), vec![1, 1, 1]);
    }

    #[test]
    fn summands_reassemble() {
        for (p, classes) in [(3, 2), (2, 2)] {
            let f = FieldSpec::new(p, 1).unwrap();
            let reg = RepModule::regular(s3(), f.clone());
            let d = decompose(&reg).unwrap();
            assert_eq!(d.class_count(), classes, "p = {p}");
            assert_eq!(d.summands.iter().map(|s| s.module.dim()).sum::<usize>(), 6);
            for s in &d.summands {
                assert!(s.module.is_hom_to(&reg, &s.inclusion));
                assert!(reg.is_hom_to(&s.module, &s.projection));
                assert!(s.projection.mul(&s.inclusion).is_identity());
                let again = decompose(&s.module).unwrap();
                assert!(again.is_indecomposable());
            }
        }
    }

    #[test]
    fn isomorphism_with_witness() {
        let f = FieldSpec::new(3, 1).unwrap();
        let reg = RepModule::regular(s3(), f.clone());
        let sign = RepModule::one_dimensional(s3(), f.clone(), &[1, 2]).unwrap();
        let triv = RepModule::trivial(s3(), f.clone());
        assert!(is_isomorphic(&sign, &triv).unwrap().is_none());
        let w = is_isomorphic(&reg, &reg.dual())
            .unwrap()
            .expect("kG is self-dual");
        assert!(reg.is_hom_to(&reg.dual(), &w));
        assert!(w.inverse().is_some());
        let a = RepModule::direct_sum(&[&sign, &triv, &triv]).unwrap();
        let b = RepModule::direct_sum(&[&triv, &sign, &triv]).unwrap();
        let w = is_isomorphic(&a, &b).unwrap().unwrap();
        assert!(a.is_hom_to(&b, &w));
        let c = RepModule::direct_sum(&[&sign, &sign, &triv]).unwrap();
        assert!(is_isomorphic(&a, &c).unwrap().is_none());
    }

    #[test]
    fn dimension_cap() {
        let f = FieldSpec::new(2, 1).unwrap();
        let opts = DecomposeOptions {
            dim_cap: 4,
            ..Default::default()
        };
        let r = decompose_with(&RepModule::regular(s3(), f), &opts);
        assert!(matches!(r, Err(Error::ModuleTooLarge { dim: 6, cap: 4 })));
    }
}
