//! Abelianization via Smith normal form of the exponent-sum matrix.

use crate::words::Presentation;

/// Invariant factors `d1 | d2` of `Z^2 / rowspace`, with `0` for a free factor.
pub fn abelian_invariants(p: &Presentation) -> Vec<u64> {
    let rows: Vec<[i64; 2]> = p.relators.iter().map(|r| r.exponent_sums()).collect();
    smith_diagonal(&rows, 2)
}

/// True when the abelianization has positive rank, so the group is infinite.
pub fn has_free_factor(p: &Presentation) -> bool {
    abelian_invariants(p).contains(&0)
}

/// Diagonal of the Smith normal form of an `m x cols` integer matrix, padded
/// with zeros to `cols` entries and sorted so each entry divides the next
/// (zeros last).
pub fn smith_diagonal(rows: &[[i64; 2]], cols: usize) -> Vec<u64> {
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r[..cols].to_vec()).collect();
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut piv = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &v) in row.iter().enumerate().skip(t) {
                if v != 0 && piv.map_or(true, |(_, _, b): (usize, usize, i64)| v.abs() < b) {
                    piv = Some((i, j, v.abs()));
                }
            }
        }
        let Some((pi, pj, _)) = piv else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // divisibility of the remaining block by the pivot
                let bad = (t + 1..m).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t to the pivot
            let mut best = (t, t, a[t][t].abs());
            for i in t..m {
                if a[i][t] != 0 && a[i][t].abs() < best.2 {
                    best = (i, t, a[i][t].abs());
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < best.2 {
                    best = (t, j, a[t][j].abs());
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].unsigned_abs());
        t += 1;
    }
    while diag.len() < cols {
        diag.push(0);
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(s: &str) -> Vec<u64> {
        abelian_invariants(&s.parse().unwrap())
    }

    // 2x2 oracle: d1 = gcd of entries, d1*d2 = |det| for a full-rank pair.
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn examples() {
        assert_eq!(inv(""), vec![0, 0]);
        assert_eq!(inv("h2^4"), vec![4, 0]);
        assert_eq!(inv("h2^2 h3^2"), vec![2, 0]);
        assert_eq!(inv("h2^2, h3^2, (h2 h3)^3"), vec![1, 2]);
        assert_eq!(inv("h2 h3 h2^-1 h3^-1"), vec![0, 0]);
    }

    #[test]
    fn two_by_two_matches_gcd_det() {
        for a in -6i64..=6 {
            for b in -6..=6 {
                for c in -4..=4 {
                    for d in -4..=4 {
                        let det = (a * d - b * c).abs();
                        let g = gcd(gcd(a, b), gcd(c, d));
                        let got = smith_diagonal(&[[a, b], [c, d]], 2);
                        if det != 0 {
                            assert_eq!(got, vec![g as u64, (det / g) as u64]);
                        } else if g != 0 {
                            assert_eq!(got, vec![g as u64, 0]);
                        } else {
                            assert_eq!(got, vec![0, 0]);
                        }
                    }
                }
            }
        }
    }
}
