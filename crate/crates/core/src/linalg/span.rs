use crate::exactq::Scalar;

use super::sparse::{vec_axpy, vec_scale, SparseVec};

/// Incrementally built echelon basis of a span of sparse vectors.
///
/// Each stored row is normalized to pivot value 1 and remembers how it was
/// obtained from the accepted input vectors, so membership queries can also
/// return coordinates in terms of those inputs.
#[derive(Clone, Debug)]
pub struct Span<S> {
    rows: Vec<(usize, SparseVec<S>, SparseVec<S>)>,
    accepted: usize,
}

impl<S: Scalar> Default for Span<S> {
    fn default() -> Self {
        Span {
            rows: Vec::new(),
            accepted: 0,
        }
    }
}

impl<S: Scalar> Span<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.accepted
    }

    /// Residual of `v` modulo the span plus the combination of accepted
    /// inputs that was subtracted.
    fn reduce(&self, v: &[(usize, S)]) -> (SparseVec<S>, SparseVec<S>) {
        let mut r: SparseVec<S> = v.to_vec();
        let mut combo: SparseVec<S> = Vec::new();
        for (p, row, c) in &self.rows {
            if let Ok(k) = r.binary_search_by_key(p, |t| t.0) {
                let f = r[k].1.clone();
                r = vec_axpy(&r, &f.neg(), row);
                combo = vec_axpy(&combo, &f, c);
            }
        }
        (r, combo)
    }

    pub fn contains(&self, v: &[(usize, S)]) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: &[(usize, S)]) -> bool {
        let (r, combo) = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let (p, lead) = (r[0].0, r[0].1.clone());
        let inv = lead.inv().expect("nonzero lead");
        // new row = (v - combo) / lead, expressed in inputs as (e_new - combo) / lead
        let mut c = vec_scale(&combo, &inv.neg());
        c = vec_axpy(&c, &inv, &[(self.accepted, S::one())]);
        let row = vec_scale(&r, &inv);
        // keep existing rows reduced against the new pivot
        for (_, orow, oc) in self.rows.iter_mut() {
            if let Ok(k) = orow.binary_search_by_key(&p, |t| t.0) {
                let f = orow[k].1.clone();
                *orow = vec_axpy(orow, &f.neg(), &row);
                *oc = vec_axpy(oc, &f.neg(), &c);
            }
        }
        self.rows.push((p, row, c));
        self.accepted += 1;
        true
    }

    /// Coefficients `x` with `v = sum x_k * input_k`, if `v` is in the span.
    pub fn coordinates(&self, v: &[(usize, S)]) -> Option<Vec<S>> {
        let (r, combo) = self.reduce(v);
        if !r.is_empty() {
            return None;
        }
        let mut out = vec![S::zero(); self.accepted];
        for (k, x) in combo {
            out[k] = x;
        }
        Some(out)
    }
}
