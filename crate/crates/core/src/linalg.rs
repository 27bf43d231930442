//! Row reduction over F_p on plain coordinate vectors.

use crate::fp_poly::inv_mod;

/// Reduces `rows` in place to reduced row echelon form, drops zero rows and
/// returns the rank. The result is canonical for the row space.
pub fn row_reduce(rows: &mut Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let pp = p as u64;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p) as u64;
        for c in rows[rank].iter_mut() {
            *c = (*c as u64 * inv % pp) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col] as u64;
            for (c, &pv) in row.iter_mut().zip(&pivot_row) {
                *c = ((*c as u64 + pp - factor * pv as u64 % pp) % pp) as u32;
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

pub fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, p)
}

/// Basis of the intersection of two row spaces (Zassenhaus).
pub fn intersection(u: &[Vec<u32>], v: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let Some(dim) = u.first().or(v.first()).map(Vec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<u32>> = u
        .iter()
        .map(|r| r.iter().chain(r.iter()).copied().collect())
        .chain(v.iter().map(|r| r.iter().copied().chain(std::iter::repeat_n(0, dim)).collect()))
        .collect();
    row_reduce(&mut rows, p);
    let mut out: Vec<Vec<u32>> = rows
        .into_iter()
        .filter(|r| r[..dim].iter().all(|&c| c == 0))
        .map(|r| r[dim..].to_vec())
        .collect();
    row_reduce(&mut out, p);
    out
}

/// `M · v` for a row-major matrix.
pub fn mat_vec(m: &[Vec<u32>], v: &[u32], p: u32) -> Vec<u32> {
    let pp = p as u64;
    m.iter()
        .map(|row| (row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % pp) as u32)
        .collect()
}
