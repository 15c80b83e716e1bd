mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use common::{catalog, embedding, field};
use tautilt::field::{Fe, FieldSpec};
use tautilt::functors::InductionContext;
use tautilt::matrix::FFMatrix;
use tautilt::module::{decompose, hom_dim, is_isomorphic, Catalog, RepModule};

struct Fixture {
    ctx: InductionContext,
    sub: Arc<Catalog>,
    amb: Arc<Catalog>,
}

fn a4_s4() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let emb = embedding("A4", "S4");
        let f = field(2, 2);
        Fixture {
            sub: Arc::new(catalog(emb.sub(), &f)),
            amb: Arc::new(catalog(emb.amb(), &f)),
            ctx: InductionContext::new(emb),
        }
    })
}

/// Pieces: simples then PIMs then radicals of PIMs.
fn piece(cat: &Catalog, k: usize) -> RepModule {
    let r = cat.rank();
    match k / r {
        0 => cat.simple(k % r).clone(),
        1 => cat.pim(k % r).clone(),
        _ => cat.radical_module(cat.pim(k % r)).unwrap(),
    }
}

fn assemble(cat: &Catalog, picks: &[usize], seed: &[Fe]) -> RepModule {
    let parts: Vec<RepModule> = picks.iter().map(|&k| piece(cat, k)).collect();
    let refs: Vec<&RepModule> = parts.iter().collect();
    let m = RepModule::direct_sum(&refs).unwrap();
    scramble(&m, seed)
}

/// Conjugates by a unitriangular matrix filled from `seed`.
fn scramble(m: &RepModule, seed: &[Fe]) -> RepModule {
    let d = m.dim();
    let q = m.field().q() as Fe;
    let mut t = FFMatrix::identity(m.field(), d);
    let mut k = 0;
    for i in 0..d {
        for j in i + 1..d {
            t.set(i, j, seed[k % seed.len()] % q);
            k += 1;
        }
    }
    m.change_basis(&t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn induction_is_biadjoint_to_restriction(
        picks in prop::collection::vec(0usize..9, 1..3),
        target in 0usize..6,
        seed in prop::collection::vec(0u8..4, 1..16),
    ) {
        let fx = a4_s4();
        let m = assemble(&fx.sub, &picks, &seed);
        let n = piece(&fx.amb, target);
        let ind = fx.ctx.induce(&m).unwrap();
        let res = fx.ctx.restrict(&n).unwrap();
        prop_assert_eq!(hom_dim(&ind, &n).unwrap(), hom_dim(&m, &res).unwrap());
        prop_assert_eq!(hom_dim(&n, &ind).unwrap(), hom_dim(&res, &m).unwrap());
    }

    #[test]
    fn decomposition_recovers_the_pieces(
        picks in prop::collection::vec(0usize..9, 1..4),
        seed in prop::collection::vec(0u8..4, 1..16),
    ) {
        let fx = a4_s4();
        let m = assemble(&fx.sub, &picks, &seed);
        let d = decompose(&m).unwrap();
        prop_assert_eq!(d.summands.len(), picks.len());
        let mut expected: Vec<usize> = picks.iter().map(|&k| piece(&fx.sub, k).dim()).collect();
        let mut got: Vec<usize> = d.summands.iter().map(|s| s.module.dim()).collect();
        expected.sort();
        got.sort();
        prop_assert_eq!(got, expected);
        for s in &d.summands {
            prop_assert!(s.projection.mul(&s.inclusion).is_identity());
        }
    }

    #[test]
    fn basis_change_preserves_isomorphism_class(
        k in 0usize..9,
        seed in prop::collection::vec(0u8..4, 1..16),
    ) {
        let fx = a4_s4();
        let m = piece(&fx.sub, k);
        let n = scramble(&m, &seed);
        let w = is_isomorphic(&m, &n).unwrap();
        prop_assert!(w.is_some());
        prop_assert!(m.is_hom_to(&n, &w.unwrap()));
    }

    #[test]
    fn field_axioms(p_idx in 0usize..3, m in 1u32..4, a in 0u32..64, b in 0u32..64, c in 0u32..64) {
        let p = [2, 3, 5][p_idx];
        let f = FieldSpec::new(p, m).unwrap();
        let q = f.q() as u32;
        let (a, b, c) = ((a % q) as Fe, (b % q) as Fe, (c % q) as Fe);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, q as u64 - 1), 1);
        }
    }

    #[test]
    fn rank_nullity_and_inverse(rows in 1usize..7, cols in 1usize..7, data in prop::collection::vec(0u8..9, 49)) {
        let f = FieldSpec::new(3, 2).unwrap();
        let a = FFMatrix::from_vec(&f, rows, cols, data[..rows * cols].to_vec());
        let kernel = a.nullspace();
        prop_assert_eq!(a.rank() + kernel.cols(), cols);
        prop_assert!(a.mul(&kernel).is_zero());
        if rows == cols {
            if let Some(inv) = a.inverse() {
                prop_assert!(a.mul(&inv).is_identity());
            } else {
                prop_assert!(a.rank() < rows);
            }
        }
    }
}
