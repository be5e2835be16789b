//! Vector-valued multilinear maps on a Lie algebra given on basis vectors,
//! and the linear equations expressing that an endomorphism acts on one as a
//! derivation.

use crate::field::Field;
use crate::forms::SymBilinearForm;

/// `T(e_{i1}, .., e_{im}) = Σ_l T[i1..im][l] e_l`, row-major with the output
/// index last.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<F> {
    n: usize,
    arity: usize,
    data: Vec<F>,
}

impl<F: Field> Tensor<F> {
    pub fn from_fn(n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> Vec<F>) -> Self {
        let mut data = Vec::with_capacity(n.pow(arity as u32 + 1));
        let mut idx = vec![0; arity];
        for _ in 0..n.pow(arity as u32) {
            let v = f(&idx);
            debug_assert_eq!(v.len(), n);
            data.extend(v);
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        Tensor { n, arity, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &i| acc * self.n + i) * self.n
    }

    /// Output vector on basis inputs.
    pub fn get(&self, idx: &[usize]) -> &[F] {
        let o = self.offset(idx);
        &self.data[o..o + self.n]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// First basis input tuple with a nonzero output.
    pub fn first_nonzero(&self) -> Option<Vec<usize>> {
        let n = self.n;
        (0..n.pow(self.arity as u32)).find_map(|flat| {
            let chunk = &self.data[flat * n..(flat + 1) * n];
            chunk.iter().any(|x| !x.is_zero()).then(|| {
                let mut idx = vec![0; self.arity];
                let mut r = flat;
                for slot in idx.iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                idx
            })
        })
    }

    pub fn sub(&self, other: &Tensor<F>) -> Tensor<F> {
        assert_eq!((self.n, self.arity), (other.n, other.arity));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Tensor { n: self.n, arity: self.arity, data }
    }

    /// Rows of the homogeneous system in the unknowns `S[p][q]` (at position
    /// `p·n + q`, with `S e_q = Σ_p S[p][q] e_p`) saying
    /// `S T(x_1..x_m) = Σ_r T(x_1, .., S x_r, .., x_m)`.
    pub fn derivation_rows(&self) -> Vec<Vec<F>> {
        let n = self.n;
        let m = self.arity;
        let mut rows = Vec::new();
        let mut idx = vec![0; m];
        for _ in 0..n.pow(m as u32) {
            for l in 0..n {
                let mut row = vec![F::zero(); n * n];
                let out = self.get(&idx);
                for p in 0..n {
                    if !out[p].is_zero() {
                        row[l * n + p] = row[l * n + p].clone() + out[p].clone();
                    }
                }
                for r in 0..m {
                    let q = idx[r];
                    let mut j = idx.clone();
                    for p in 0..n {
                        j[r] = p;
                        let t = self.get(&j)[l].clone();
                        if !t.is_zero() {
                            row[p * n + q] = row[p * n + q].clone() - t;
                        }
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
            for slot in idx.iter_mut().rev() {
                *slot += 1;
                if *slot < n {
                    break;
                }
                *slot = 0;
            }
        }
        rows
    }
}

/// Rows for `⟨S e_i, e_j⟩ + ⟨e_i, S e_j⟩ = 0`, `i ≤ j`, same unknown layout as
/// [`Tensor::derivation_rows`].
pub fn skew_rows<F: Field>(b: &SymBilinearForm<F>) -> Vec<Vec<F>> {
    let n = b.dim();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            let mut row = vec![F::zero(); n * n];
            for p in 0..n {
                row[p * n + i] = row[p * n + i].clone() + b.entry(p, j).clone();
                row[p * n + j] = row[p * n + j].clone() + b.entry(i, p).clone();
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    rows
}
