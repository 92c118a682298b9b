//! Dense exact row reduction over the base field. Matrices here are small
//! (graded slices of ideals), so a straightforward Gaussian elimination with
//! exact arithmetic is all that is needed.

use crate::field::{Coeff, FieldSpec};

/// Reduces `rows` to row echelon form in place and returns the rank.
/// Rows are coefficient vectors over a common column basis.
pub fn row_reduce(rows: &mut Vec<Vec<Coeff>>, field: &FieldSpec) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(&rows[rank][col].clone());
        for c in col..ncols {
            rows[rank][c] = field.mul(&rows[rank][c], &inv);
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..ncols {
                    let delta = field.mul(&factor, &rows[rank][c]);
                    rows[r][c] = field.sub(&rows[r][c], &delta);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rank
}

/// Incremental row-echelon accumulator: feed vectors one at a time and learn
/// whether each enlarged the span. Prime-field rows take an unboxed u64 path,
/// which is where the resolution minimizer spends its time.
pub enum RankSweep {
    Fp {
        p: u64,
        rows: Vec<(usize, Vec<u64>)>,
    },
    Exact {
        field: FieldSpec,
        rows: Vec<(usize, Vec<Coeff>)>,
    },
}

impl RankSweep {
    pub fn new(field: FieldSpec) -> RankSweep {
        match field {
            FieldSpec::Prime(p) => RankSweep::Fp {
                p: p as u64,
                rows: Vec::new(),
            },
            FieldSpec::Rationals => RankSweep::Exact {
                field,
                rows: Vec::new(),
            },
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            RankSweep::Fp { rows, .. } => rows.len(),
            RankSweep::Exact { rows, .. } => rows.len(),
        }
    }

    /// Reduces `v` against the accumulated rows; if independent, absorbs it
    /// and returns true.
    pub fn absorb(&mut self, v: Vec<Coeff>) -> bool {
        match self {
            RankSweep::Fp { p, rows } => {
                let p = *p;
                let mut v: Vec<u64> = v
                    .into_iter()
                    .map(|c| match c {
                        Coeff::Fp(x) => x,
                        Coeff::Rat(_) => panic!("rational coefficient in prime-field sweep"),
                    })
                    .collect();
                for (pivot, row) in rows.iter() {
                    let factor = v[*pivot];
                    if factor != 0 {
                        for (c, r) in v.iter_mut().zip(row) {
                            if *r != 0 {
                                let t = factor * r % p;
                                let s = *c + p - t;
                                *c = if s >= p { s - p } else { s };
                            }
                        }
                    }
                }
                let Some(pivot) = v.iter().position(|&c| c != 0) else {
                    return false;
                };
                let inv = fp_inverse(v[pivot], p);
                for c in v.iter_mut() {
                    *c = *c * inv % p;
                }
                rows.push((pivot, v));
                true
            }
            RankSweep::Exact { field, rows } => {
                let mut v = v;
                for (pivot, row) in rows.iter() {
                    if !v[*pivot].is_zero() {
                        let factor = v[*pivot].clone();
                        for (c, r) in v.iter_mut().zip(row) {
                            let delta = field.mul(&factor, r);
                            *c = field.sub(c, &delta);
                        }
                    }
                }
                let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
                    return false;
                };
                let inv = field.inv(&v[pivot]);
                for c in v.iter_mut() {
                    *c = field.mul(c, &inv);
                }
                rows.push((pivot, v));
                true
            }
        }
    }
}

fn fp_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_sweep_detects_dependence() {
        let f = FieldSpec::Prime(32003);
        let m = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let mut sweep = RankSweep::new(f);
        assert!(sweep.absorb(m(&[1, 2, 3])));
        assert!(sweep.absorb(m(&[0, 1, 1])));
        assert!(!sweep.absorb(m(&[2, 5, 7])));
        assert_eq!(sweep.rank(), 2);
    }

    #[test]
    fn rank_of_small_matrix() {
        let f = FieldSpec::Prime(32003);
        let m = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let mut rows = vec![m(&[1, 2, 3]), m(&[2, 4, 6]), m(&[0, 1, 1])];
        assert_eq!(row_reduce(&mut rows, &f), 2);
        let mut id = vec![m(&[1, 0]), m(&[0, 1])];
        assert_eq!(row_reduce(&mut id, &f), 2);
    }
}
