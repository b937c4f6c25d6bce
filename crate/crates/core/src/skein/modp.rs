//! Arithmetic modulo word-sized primes.

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Primes below 2^31, largest first.
pub fn primes() -> impl Iterator<Item = u64> {
    (1u64 << 20..1u64 << 31).rev().filter(|&n| n % 2 == 1 && is_prime(n))
}

/// Determinant of a sparse square matrix modulo `p`. Rows hold
/// (column, value) pairs sorted by column with nonzero values below `p`.
pub fn sparse_det(mut rows: Vec<Vec<(u32, u64)>>, p: u64) -> u64 {
    let m = rows.len();
    let mut col_rows: Vec<Vec<u32>> = vec![vec![]; m];
    let mut col_cnt = vec![0u32; m];
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
            col_cnt[c as usize] += 1;
        }
    }
    let mut alive = vec![true; m];
    let mut perm = vec![0usize; m];
    let mut det = 1u64;
    let mut scratch: Vec<(u32, u64)> = Vec::new();
    for _ in 0..m {
        let r = (0..m).filter(|&r| alive[r]).min_by_key(|&r| rows[r].len()).expect("a row is left");
        if rows[r].is_empty() {
            return 0;
        }
        let &(c, v) = rows[r].iter().min_by_key(|e| col_cnt[e.0 as usize]).expect("row is nonempty");
        det = mul(det, v, p);
        perm[r] = c as usize;
        let vinv = inv(v, p);
        let pivot = std::mem::take(&mut rows[r]);
        alive[r] = false;
        for &(cc, _) in &pivot {
            col_cnt[cc as usize] -= 1;
        }
        let users = std::mem::take(&mut col_rows[c as usize]);
        for q in users {
            let q = q as usize;
            if !alive[q] {
                continue;
            }
            let Ok(pos) = rows[q].binary_search_by_key(&c, |e| e.0) else { continue };
            let f = mul(rows[q][pos].1, vinv, p);
            // rows[q] -= f * pivot
            scratch.clear();
            let (a, b) = (&rows[q], &pivot);
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let ca = a.get(i).map_or(u32::MAX, |e| e.0);
                let cb = b.get(j).map_or(u32::MAX, |e| e.0);
                if ca < cb {
                    scratch.push(a[i]);
                    i += 1;
                } else if cb < ca {
                    let val = (p - mul(f, b[j].1, p)) % p;
                    if val != 0 {
                        scratch.push((cb, val));
                        col_cnt[cb as usize] += 1;
                        col_rows[cb as usize].push(q as u32);
                    }
                    j += 1;
                } else {
                    let val = (a[i].1 + p - mul(f, b[j].1, p)) % p;
                    if val != 0 {
                        scratch.push((ca, val));
                    } else {
                        col_cnt[ca as usize] -= 1;
                    }
                    i += 1;
                    j += 1;
                }
            }
            std::mem::swap(&mut rows[q], &mut scratch);
        }
    }
    // Sign of the row-to-column pivot permutation.
    let mut seen = vec![false; m];
    let mut odd = false;
    for s in 0..m {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    if odd && det != 0 {
        p - det
    } else {
        det
    }
}

/// Newton interpolation: coefficients (low degree first) of the polynomial
/// of degree < xs.len() through the given points.
pub fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (dd[i] + p - dd[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            dd[i] = mul(num, inv(den, p), p);
        }
    }
    let mut coeffs = vec![0u64; n];
    for i in (0..n).rev() {
        // coeffs = coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n {
            if coeffs[k] == 0 {
                continue;
            }
            if k + 1 < n {
                next[k + 1] = (next[k + 1] + coeffs[k]) % p;
            }
            next[k] = (next[k] + p - mul(coeffs[k], xs[i], p)) % p;
        }
        next[0] = (next[0] + dd[i]) % p;
        coeffs = next;
    }
    coeffs
}

pub fn eval_poly(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (mul(acc, x, p) + c) % p)
}
