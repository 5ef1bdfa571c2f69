// Dense linear algebra over F_p on u32 residues.

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-reduces `[A | B]` in place; returns pivot columns of `A`.
fn reduce(rows: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..rows[k].len() {
                    let sub = f * rows[r][j] % p;
                    rows[k][j] = (rows[k][j] + p - sub) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// One solution of `A x = b` over `F_p`, free variables set to zero.
pub fn solve_linear_mod_p(a: &[Vec<u32>], b: &[u32], p: u32) -> Option<Vec<u32>> {
    let p = p as u64;
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .zip(b)
        .map(|(r, &bi)| r.iter().map(|&x| x as u64 % p).chain([bi as u64 % p]).collect())
        .collect();
    let pivots = reduce(&mut rows, ncols, p);
    if rows[pivots.len()..].iter().any(|r| r[ncols] != 0) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][ncols] as u32;
    }
    Some(x)
}

/// Inverse of a square matrix over `F_p`.
pub fn invert_matrix_mod_p(a: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = a.len();
    let p64 = p as u64;
    let mut rows: Vec<Vec<u64>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: Vec<u64> = r.iter().map(|&x| x as u64 % p64).collect();
            v.extend((0..n).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    if reduce(&mut rows, n, p64).len() < n {
        return None;
    }
    Some(rows.into_iter().map(|r| r[n..].iter().map(|&x| x as u32).collect()).collect())
}
