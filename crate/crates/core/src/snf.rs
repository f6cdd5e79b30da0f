//! Smith normal form of small integer matrices, with unimodular transforms.

/// Result of [`smith`]: `u * a * v = diag(diag)` padded with zeros.
#[derive(Debug, Clone)]
pub struct Smith {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    /// Invariant factors, nonnegative, each dividing the next. Length `min(rows, cols)`.
    pub diag: Vec<i128>,
}

fn swap_cols(m: &mut [Vec<i128>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// col_dst += k * col_src
fn add_col(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    if k == 0 {
        return;
    }
    for row in m.iter_mut() {
        row[dst] += k * row[src];
    }
}

/// row_dst += k * row_src
fn add_row(m: &mut [Vec<i128>], dst: usize, src: usize, k: i128) {
    if k == 0 {
        return;
    }
    let (s, d) = if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x += k * *y;
    }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Computes the Smith normal form of an `rows x cols` integer matrix.
pub fn smith(a: &[Vec<i128>]) -> Smith {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let steps = rows.min(cols);

    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let p = m[t][t];
            let mut clean = true;
            for i in (t + 1)..rows {
                let q = m[i][t] / p;
                add_row(&mut m, i, t, -q);
                add_row(&mut u, i, t, -q);
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in (t + 1)..cols {
                let q = m[t][j] / p;
                add_col(&mut m, j, t, -q);
                add_col(&mut v, j, t, -q);
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any offending row into the pivot row and retry.
            let mut offender = None;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if m[i][j] % p != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    add_row(&mut m, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    let diag = (0..steps).map(|t| m[t][t]).collect();
    Smith { u, v, diag }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b[0].len();
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b.iter()).map(|(x, br)| x * br[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn diagonalizes_with_divisibility() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = matmul(&matmul(&s.u, &a), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn rectangular_relation_matrix() {
        // [M | diag(q)] for the doubling map on Z4 x Z2.
        let a = vec![vec![2, 0, 4, 0], vec![0, 1, 0, 2]];
        let s = smith(&a);
        assert_eq!(s.diag, vec![1, 2]);
    }
}
