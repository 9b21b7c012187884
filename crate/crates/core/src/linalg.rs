//! Sparse Gaussian elimination over F_p.

use std::collections::BTreeMap;

use crate::field::Fp;

pub(crate) type SparseVec = BTreeMap<usize, u32>;

fn axpy(fp: Fp, target: &mut SparseVec, factor: u32, src: &SparseVec) {
    for (&i, &c) in src {
        let entry = target.entry(i).or_insert(0);
        *entry = fp.add(*entry, fp.mul(factor, c));
        if *entry == 0 {
            target.remove(&i);
        }
    }
}

/// Basis of `{λ : Σ_b λ_b columns[b] = 0}`.
pub(crate) fn kernel(fp: Fp, columns: &[SparseVec]) -> Vec<Vec<u32>> {
    let n = columns.len();
    // (pivot row, reduced vector, combination of input columns)
    let mut pivots: Vec<(usize, SparseVec, SparseVec)> = Vec::new();
    let mut out = Vec::new();
    for (b, col) in columns.iter().enumerate() {
        let mut v = col.clone();
        let mut combo = SparseVec::new();
        combo.insert(b, 1);
        for (row, pv, pc) in &pivots {
            if let Some(&c) = v.get(row) {
                let f = fp.neg(c);
                axpy(fp, &mut v, f, pv);
                axpy(fp, &mut combo, f, pc);
            }
        }
        match v.iter().next().map(|(&r, &c)| (r, c)) {
            None => {
                let mut dense = vec![0; n];
                for (i, c) in combo {
                    dense[i] = c;
                }
                out.push(dense);
            }
            Some((row, c)) => {
                let inv = fp.inv(c);
                let scale = |m: &SparseVec| -> SparseVec { m.iter().map(|(&i, &x)| (i, fp.mul(x, inv))).collect() };
                pivots.push((row, scale(&v), scale(&combo)));
            }
        }
    }
    out
}
