//! Minimal graded free resolutions of cyclic quotients R/I, built by iterated
//! syzygy computation followed by cancellation of unit entries, and the Betti
//! tables read off them.

use std::collections::BTreeMap;
use std::fmt;

use crate::budget::check_deadline;
use crate::error::Result;
use crate::ideal::Ideal;
use crate::modules::{minimal_generators, syzygies, ModElem};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// A graded free module, described by the degrees of its basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    pub twists: Vec<u32>,
}

impl FreeModule {
    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// A complex of graded free modules ... -> F_2 -> F_1 -> F_0 with
/// differentials stored as matrices of homogeneous polynomials
/// (`diffs[i]` maps F_{i+1} into F_i; rows index F_i, columns F_{i+1}).
#[derive(Debug, Clone)]
pub struct FreeComplex {
    ring: PolyRing,
    modules: Vec<FreeModule>,
    diffs: Vec<Vec<Vec<Polynomial>>>,
}

impl FreeComplex {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn modules(&self) -> &[FreeModule] {
        &self.modules
    }

    pub fn differential(&self, i: usize) -> &Vec<Vec<Polynomial>> {
        &self.diffs[i]
    }

    /// Length of the complex (the projective dimension once minimal).
    pub fn length(&self) -> usize {
        self.modules.len() - 1
    }

    /// Consecutive differentials must compose to zero.
    pub fn composes_to_zero(&self) -> Result<bool> {
        for i in 1..self.diffs.len() {
            let a = &self.diffs[i - 1];
            let b = &self.diffs[i];
            let rows = a.len();
            let mids = b.len();
            let cols = if mids == 0 { 0 } else { b[0].len() };
            for r in 0..rows {
                for c in 0..cols {
                    let mut acc = Polynomial::zero(&self.ring);
                    for m in 0..mids {
                        acc = acc.add(&a[r][m].mul(&b[m][c])?)?;
                    }
                    if !acc.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// True when no differential entry is a nonzero constant.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| {
            d.iter().flatten().all(|p| {
                p.total_degree() != Some(0)
            })
        })
    }
}

/// Graded Betti numbers beta_{i,j} (all stored ranks are positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
}

impl BettiTable {
    pub fn from_complex(complex: &FreeComplex) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, module) in complex.modules.iter().enumerate() {
            for &j in &module.twists {
                *entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn entries(&self) -> &BTreeMap<(usize, u32), usize> {
        &self.entries
    }

    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Projective dimension: the largest homological degree present.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((h, _), _)| *h == i)
            .map(|(_, r)| r)
            .sum()
    }

    /// The alternating sum over columns: sum_i (-1)^i sum_j beta_{i,j} t^j.
    /// For a resolution of R/I this equals the Hilbert numerator of R/I.
    pub fn euler_numerator(&self) -> Vec<i64> {
        let max_j = self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0);
        let mut out = vec![0i64; max_j as usize + 1];
        for (&(i, j), &rank) in &self.entries {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out[j as usize] += sign * rank as i64;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Conventional triangular layout: rows are j - i, columns i.
    pub fn render(&self) -> String {
        if self.entries.is_empty() {
            return "empty Betti table (zero module)".to_string();
        }
        let pd = self.pd();
        let max_reg = self
            .entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .max()
            .unwrap_or(0);
        let min_reg = self
            .entries
            .keys()
            .map(|&(i, j)| j as i64 - i as i64)
            .min()
            .unwrap_or(0);
        let mut lines = Vec::new();
        let mut header = String::from("       ");
        for i in 0..=pd {
            header.push_str(&format!("{i:>6}"));
        }
        lines.push(header);
        let mut total = String::from("total: ");
        for i in 0..=pd {
            total.push_str(&format!("{:>6}", self.total(i)));
        }
        lines.push(total);
        for row in min_reg..=max_reg {
            let mut line = format!("{row:>5}: ");
            for i in 0..=pd {
                let j = row + i as i64;
                let v = if j < 0 { 0 } else { self.get(i, j as u32) };
                if v == 0 {
                    line.push_str(&format!("{:>6}", "."));
                } else {
                    line.push_str(&format!("{v:>6}"));
                }
            }
            lines.push(line);
        }
        lines.join("\n")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Computes a minimal graded free resolution of R/I together with its Betti
/// table. Iterated syzygies give a (possibly non-minimal) resolution; unit
/// entries are then cancelled until none remain, which is exactly minimality.
pub fn free_resolution(ideal: &Ideal) -> Result<(FreeComplex, BettiTable)> {
    let ring = ideal.ring().clone();
    let gens: Vec<Polynomial> = ideal.generators().to_vec();

    let mut complex = FreeComplex {
        ring: ring.clone(),
        modules: vec![FreeModule { twists: vec![0] }],
        diffs: Vec::new(),
    };

    if !gens.is_empty() {
        let twists: Vec<u32> = gens.iter().map(|g| g.total_degree().unwrap()).collect();
        complex.modules.push(FreeModule { twists });
        complex.diffs.push(vec![gens]);
        prune_units(&mut complex)?;
    }

    loop {
        check_deadline()?;
        let level = complex.diffs.len();
        if level == 0 {
            break;
        }
        let last = &complex.diffs[level - 1];
        let source_rank = complex.modules[level].rank();
        if source_rank == 0 {
            break;
        }
        let target_twists = complex.modules[level - 1].twists.clone();
        let columns: Vec<ModElem> = (0..source_rank)
            .map(|c| ModElem::new(last.iter().map(|row| row[c].clone()).collect()))
            .collect();
        let raw = syzygies(&ring, &columns, &target_twists)?;
        let source_twists_for_min = complex.modules[level].twists.clone();
        let syz = minimal_generators(&ring, raw, &source_twists_for_min)?;
        if syz.is_empty() {
            break;
        }
        let source_twists = complex.modules[level].twists.clone();
        let mut twists = Vec::with_capacity(syz.len());
        for s in &syz {
            twists.push(s.twisted_degree(&source_twists)?);
        }
        let rows = source_rank;
        let mut matrix = vec![Vec::with_capacity(syz.len()); rows];
        for s in &syz {
            for (r, row) in matrix.iter_mut().enumerate() {
                row.push(s.comps()[r].clone());
            }
        }
        complex.modules.push(FreeModule { twists });
        complex.diffs.push(matrix);
        prune_units(&mut complex)?;
    }

    // Drop trailing zero modules left by cancellation.
    while complex.modules.len() > 1 && complex.modules.last().unwrap().rank() == 0 {
        complex.modules.pop();
        complex.diffs.pop();
    }
    if complex.modules.len() == 1 && complex.modules[0].rank() == 0 {
        // R/I was the zero module (unit ideal): keep an honest empty complex.
        complex.diffs.clear();
    }

    debug_assert!(complex.composes_to_zero()?);
    let betti = BettiTable::from_complex(&complex);
    Ok((complex, betti))
}

/// Cancels unit (degree-zero) entries anywhere in the complex until none
/// remain. Each cancellation removes one basis element from both ends of the
/// offending differential and updates the neighbouring maps.
fn prune_units(complex: &mut FreeComplex) -> Result<()> {
    loop {
        check_deadline()?;
        let Some((level, p, q)) = find_unit(complex) else {
            return Ok(());
        };
        cancel(complex, level, p, q)?;
    }
}

fn find_unit(complex: &FreeComplex) -> Option<(usize, usize, usize)> {
    for (level, d) in complex.diffs.iter().enumerate() {
        for (p, row) in d.iter().enumerate() {
            for (q, entry) in row.iter().enumerate() {
                if entry.total_degree() == Some(0) {
                    return Some((level, p, q));
                }
            }
        }
    }
    None
}

fn cancel(complex: &mut FreeComplex, level: usize, p: usize, q: usize) -> Result<()> {
    let ring = complex.ring.clone();
    let field = ring.field();
    let unit = complex.diffs[level][p][q].clone();
    let unit_inv_coeff = field.inv(&unit.leading_term()?.coeff);
    let unit_inv = Polynomial::term(
        &ring,
        unit_inv_coeff,
        crate::monomial::Monomial::one(ring.nvars()),
    );

    // Clear row p by column operations; mirror them on the next differential.
    let ncols = complex.diffs[level][p].len();
    for j in 0..ncols {
        if j == q || complex.diffs[level][p][j].is_zero() {
            continue;
        }
        let c = complex.diffs[level][p][j].mul(&unit_inv)?;
        let nrows = complex.diffs[level].len();
        for r in 0..nrows {
            let delta = c.mul(&complex.diffs[level][r][q])?;
            complex.diffs[level][r][j] = complex.diffs[level][r][j].sub(&delta)?;
        }
        if level + 1 < complex.diffs.len() {
            let next_cols = complex.diffs[level + 1][0].len();
            for cc in 0..next_cols {
                let delta = c.mul(&complex.diffs[level + 1][j][cc])?;
                complex.diffs[level + 1][q][cc] =
                    complex.diffs[level + 1][q][cc].add(&delta)?;
            }
        }
    }

    // Clear column q by row operations; mirror them on the previous map.
    let nrows = complex.diffs[level].len();
    for r in 0..nrows {
        if r == p || complex.diffs[level][r][q].is_zero() {
            continue;
        }
        let e = complex.diffs[level][r][q].mul(&unit_inv)?;
        let row_p = complex.diffs[level][p].clone();
        for (j, val) in row_p.iter().enumerate() {
            let delta = e.mul(val)?;
            complex.diffs[level][r][j] = complex.diffs[level][r][j].sub(&delta)?;
        }
        if level > 0 {
            let prev_rows = complex.diffs[level - 1].len();
            for rr in 0..prev_rows {
                let delta = e.mul(&complex.diffs[level - 1][rr][r])?;
                complex.diffs[level - 1][rr][p] =
                    complex.diffs[level - 1][rr][p].add(&delta)?;
            }
        }
    }

    // The cleared row and column can now be deleted, together with the mirror
    // row of the next map and mirror column of the previous one (both zero).
    if level + 1 < complex.diffs.len() {
        debug_assert!(complex.diffs[level + 1][q].iter().all(|e| e.is_zero()));
        complex.diffs[level + 1].remove(q);
    }
    if level > 0 {
        debug_assert!(complex.diffs[level - 1]
            .iter()
            .all(|row| row[p].is_zero()));
        for row in complex.diffs[level - 1].iter_mut() {
            row.remove(p);
        }
    }
    complex.diffs[level].remove(p);
    for row in complex.diffs[level].iter_mut() {
        row.remove(q);
    }
    complex.modules[level].twists.remove(p);
    complex.modules[level + 1].twists.remove(q);
    Ok(())
}
