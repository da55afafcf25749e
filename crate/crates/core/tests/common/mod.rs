#![allow(dead_code)]

/// Some integral solution with `|x|, |y| <= bound`, found by fixing `x` and
/// solving the quadratic in `y` exactly.
pub fn brute_force_solution(c: [i64; 6], bound: i64) -> Option<(i64, i64)> {
    let [a, b, cc, d, e, f] = c.map(i128::from);
    let bound = i128::from(bound);
    for x in -bound..=bound {
        let lin = b * x + e;
        let cst = a * x * x + d * x + f;
        if cc == 0 {
            if lin == 0 {
                if cst == 0 {
                    return Some((x as i64, 0));
                }
            } else if cst % lin == 0 {
                let y = -cst / lin;
                if y.abs() <= bound {
                    return Some((x as i64, y as i64));
                }
            }
            continue;
        }
        let disc = lin * lin - 4 * cc * cst;
        if disc < 0 {
            continue;
        }
        let r = isqrt(disc);
        if r * r != disc {
            continue;
        }
        for num in [-lin + r, -lin - r] {
            if num % (2 * cc) == 0 {
                let y = num / (2 * cc);
                if y.abs() <= bound {
                    return Some((x as i64, y as i64));
                }
            }
        }
    }
    None
}

pub fn isqrt(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k / d_{k-1}` where
/// `d_k` is the gcd of all `k x k` minors.
pub fn invariant_factors(m: &[Vec<i128>]) -> Vec<i128> {
    let n = m.len();
    let mut divisors = vec![1i128];
    for k in 1..=n {
        let mut g = 0;
        for rows in subsets(n, k) {
            for cols in subsets(n, k) {
                let minor: Vec<Vec<i128>> =
                    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    divisors.windows(2).map(|w| w[1] / w[0]).collect()
}

/// `(positive, negative)` counts of a symmetric matrix by exact symmetric
/// elimination over the rationals.
pub fn inertia(m: &[Vec<i128>]) -> (usize, usize) {
    use num_rational::Ratio;
    let mut a: Vec<Vec<Ratio<i128>>> =
        m.iter().map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    let zero = Ratio::from_integer(0);
    while !a.is_empty() {
        let n = a.len();
        let pivot = (0..n).find(|&i| a[i][i] != zero);
        let p = match pivot {
            Some(p) => p,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] != zero)
                else {
                    break;
                };
                // e_i -> e_i + e_j makes the diagonal entry 2 a_ij
                for c in 0..n {
                    let add = a[j][c];
                    a[i][c] += add;
                }
                for r in 0..n {
                    let add = a[r][j];
                    a[r][i] += add;
                }
                i
            }
        };
        let piv = a[p][p];
        if piv > zero {
            pos += 1;
        } else {
            neg += 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&i| i != p).collect();
        a = rest
            .iter()
            .map(|&i| rest.iter().map(|&j| a[i][j] - a[i][p] * a[p][j] / piv).collect())
            .collect();
    }
    (pos, neg)
}
