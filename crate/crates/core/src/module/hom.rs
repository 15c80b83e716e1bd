//! Hom spaces by spinning: a homomorphism out of `M` is determined by the
//! images of a set of generating vectors, subject to the relations the spin
//! basis satisfies.

use std::collections::HashSet;

use crate::error::Result;
use crate::field::{Fe, Field};
use crate::matrix::FFMatrix;

use super::RepModule;

#[derive(Clone, Copy, Debug)]
enum Origin {
    Seed,
    Child { gen: usize, parent: usize },
}

struct Echelon {
    field: Field,
    rows: Vec<(usize, Vec<Fe>)>,
}

impl Echelon {
    fn new(field: &Field) -> Self {
        Echelon {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    /// Adds `v` if it is independent of the rows so far.
    fn insert(&mut self, v: &[Fe]) -> bool {
        let f = &self.field;
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            let c = w[*p];
            if c != 0 {
                let nc = f.mul_row(f.neg(c));
                for (x, &y) in w.iter_mut().zip(row) {
                    if y != 0 {
                        *x = f.add(*x, nc[y as usize]);
                    }
                }
            }
        }
        let Some(p) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.mul_row(f.inv(w[p]).expect("nonzero"));
        for x in &mut w {
            *x = inv[*x as usize];
        }
        self.rows.push((p, w));
        true
    }
}

/// A basis of `M` built from seed vectors by repeatedly applying generators.
pub(crate) struct Spin {
    origins: Vec<Origin>,
    seeds: usize,
    basis_inv: FFMatrix,
    /// `coeffs[s][k][j]`: coordinate `k` of `g_s * b_j` in the spin basis.
    coeffs: Vec<FFMatrix>,
    /// `(s, j)` pairs that produced a new basis vector.
    defining: HashSet<(usize, usize)>,
}

impl Spin {
    pub(crate) fn new(m: &RepModule) -> Self {
        let d = m.dim();
        let f = m.field();
        let mut ech = Echelon::new(f);
        let mut vectors: Vec<Vec<Fe>> = Vec::with_capacity(d);
        let mut origins = Vec::with_capacity(d);
        let mut defining = HashSet::new();
        let mut seeds = 0;
        for i in 0..d {
            if vectors.len() == d {
                break;
            }
            let mut e = vec![0; d];
            e[i] = 1;
            if !ech.insert(&e) {
                continue;
            }
            vectors.push(e);
            origins.push(Origin::Seed);
            seeds += 1;
            let mut j = vectors.len() - 1;
            while j < vectors.len() {
                for (s, g) in m.gens().iter().enumerate() {
                    let w = g.mul_vec(&vectors[j]);
                    if ech.insert(&w) {
                        vectors.push(w);
                        origins.push(Origin::Child { gen: s, parent: j });
                        defining.insert((s, j));
                    }
                }
                j += 1;
            }
        }
        let basis = FFMatrix::from_cols(f, d, &vectors);
        let basis_inv = basis.inverse().expect("spin vectors form a basis");
        let coeffs = m
            .gens()
            .iter()
            .map(|g| basis_inv.mul(&g.mul(&basis)))
            .collect();
        Spin {
            origins,
            seeds,
            basis_inv,
            coeffs,
            defining,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    /// Each basis element is a `target_dim x source_dim` matrix.
    pub basis: Vec<FFMatrix>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
}

struct RowAccumulator {
    field: Field,
    cols: usize,
    rows: Vec<Fe>,
    count: usize,
    rank: usize,
}

impl RowAccumulator {
    fn push(&mut self, m: &FFMatrix) {
        self.rows.extend_from_slice(m.data());
        self.count += m.rows();
        if self.count > 2 * self.cols + 64 {
            self.compress();
        }
    }

    fn compress(&mut self) {
        let m = FFMatrix::from_vec(
            &self.field,
            self.count,
            self.cols,
            std::mem::take(&mut self.rows),
        );
        let (r, pivots) = m.rref();
        self.rank = pivots.len();
        self.count = self.rank;
        self.rows = r.data()[..self.rank * self.cols].to_vec();
    }

    fn full_rank(&self) -> bool {
        self.rank == self.cols
    }

    fn nullspace(mut self) -> FFMatrix {
        self.compress();
        FFMatrix::from_vec(&self.field, self.count, self.cols, self.rows).nullspace()
    }
}

/// Basis of `Hom_kG(m, n)`.
pub fn hom_space(m: &RepModule, n: &RepModule) -> Result<HomSpace> {
    m.same_context(n)?;
    let (d, nd) = (m.dim(), n.dim());
    let empty = HomSpace {
        source_dim: d,
        target_dim: nd,
        basis: Vec::new(),
    };
    if d == 0 || nd == 0 {
        return Ok(empty);
    }
    let f = m.field();
    let spin = m.spin();
    let cols = spin.seeds * nd;
    // phis[k]: the image of spin vector k as a linear function of the seed images
    let mut phis: Vec<FFMatrix> = Vec::with_capacity(d);
    let mut seed_no = 0;
    for origin in &spin.origins {
        phis.push(match *origin {
            Origin::Seed => {
                let mut p = FFMatrix::zeros(f, nd, cols);
                for i in 0..nd {
                    p.set(i, seed_no * nd + i, 1);
                }
                seed_no += 1;
                p
            }
            Origin::Child { gen, parent } => n.gens()[gen].mul(&phis[parent]),
        });
    }
    let mut acc = RowAccumulator {
        field: f.clone(),
        cols,
        rows: Vec::new(),
        count: 0,
        rank: 0,
    };
    for (s, cs) in spin.coeffs.iter().enumerate() {
        for j in 0..d {
            if spin.defining.contains(&(s, j)) {
                continue;
            }
            let mut lhs = n.gens()[s].mul(&phis[j]);
            for (k, phi) in phis.iter().enumerate() {
                let c = cs.get(k, j);
                if c != 0 {
                    lhs.add_scaled(f.neg(c), phi);
                }
            }
            if !lhs.is_zero() {
                acc.push(&lhs);
            }
        }
        if acc.full_rank() {
            return Ok(empty);
        }
    }
    let null = acc.nullspace();
    let mut basis = Vec::with_capacity(null.cols());
    for c in 0..null.cols() {
        let u = null.col(c);
        let images: Vec<Vec<Fe>> = phis.iter().map(|p| p.mul_vec(&u)).collect();
        let fmat = FFMatrix::from_cols(f, nd, &images);
        basis.push(fmat.mul(&spin.basis_inv));
    }
    Ok(HomSpace {
        source_dim: d,
        target_dim: nd,
        basis,
    })
}

pub fn hom_dim(m: &RepModule, n: &RepModule) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}

/// Column basis of the sum of the images of the given maps into a `rows`-dim space.
pub fn image_of_homs(field: &Field, rows: usize, homs: &[FFMatrix]) -> FFMatrix {
    if homs.is_empty() {
        return FFMatrix::zeros(field, rows, 0);
    }
    let parts: Vec<&FFMatrix> = homs.iter().collect();
    FFMatrix::hstack(field, rows, &parts).column_basis()
}
