//! Integer polynomials (coefficients low to high), exact real-root isolation
//! with Sturm sequences, and rational intervals with outward decimal rounding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Poly = Vec<BigInt>;

fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

pub fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
}

/// Quotient of `p` by `x - root` when `root` is a root; `None` otherwise.
pub fn divide_by_linear(p: &[BigInt], root: &BigInt) -> Option<Poly> {
    let n = degree(p);
    if n == 0 {
        return None;
    }
    // synthetic division from the top
    let mut q = vec![BigInt::zero(); n];
    let mut carry = BigInt::zero();
    for i in (1..=n).rev() {
        carry = &p[i] + carry * root;
        q[i - 1] = carry.clone();
    }
    let rem = &p[0] + carry * root;
    rem.is_zero().then_some(q)
}

fn rat_poly(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn rat_degree(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn rat_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn rat_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = rat_degree(b).expect("nonzero divisor");
    let mut r = a.to_vec();
    while let Some(dr) = rat_degree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] / &b[db];
        for i in 0..=db {
            r[dr - db + i] = &r[dr - db + i] - &f * &b[i];
        }
        r[dr] = BigRational::zero();
    }
    trim(&mut r);
    r
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    let mut d: Vec<BigRational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    if d.is_empty() {
        d.push(BigRational::zero());
    }
    d
}

/// Sturm sequence `p, p', -rem(p, p'), ...`.
pub struct Sturm {
    chain: Vec<Vec<BigRational>>,
}

impl Sturm {
    pub fn new(p: &[BigInt]) -> Self {
        let p0 = rat_poly(p);
        let p1 = derivative(&p0);
        let mut chain = vec![p0, p1];
        loop {
            let n = chain.len();
            if rat_degree(&chain[n - 1]).is_none() {
                chain.pop();
                break;
            }
            let r = rat_rem(&chain[n - 2], &chain[n - 1]);
            if rat_degree(&r).is_none() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        Sturm { chain }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for q in &self.chain {
            let v = rat_eval(q, x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Degree of the square-free part of `p`.
pub fn squarefree_degree(p: &[BigInt]) -> usize {
    let sturm = Sturm::new(p);
    let last = sturm.chain.last().expect("nonempty chain");
    degree(p) - rat_degree(last).unwrap_or(0)
}

/// Closed interval with rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl CertifiedInterval {
    pub fn point(x: BigRational) -> Self {
        CertifiedInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2)))
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    /// Outward-rounded decimal bounds, `digits` places after the point.
    pub fn decimal(&self, digits: u32) -> (String, String) {
        (decimal_floor(&self.lo, digits), decimal_ceil(&self.hi, digits))
    }

    /// Does the interval contain `x` up to a slack? Used with irrational
    /// targets given as `f64` reference values.
    pub fn within(&self, x: f64, slack: f64) -> bool {
        let lo = self.lo.to_f64().unwrap_or(f64::NAN);
        let hi = self.hi.to_f64().unwrap_or(f64::NAN);
        lo - slack <= x && x <= hi + slack
    }
}

impl fmt::Display for CertifiedInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.decimal(15);
        write!(f, "[{lo}, {hi}]")
    }
}

impl Serialize for CertifiedInterval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (lo, hi) = self.decimal(20);
        #[derive(Serialize)]
        struct Bounds {
            lo: String,
            hi: String,
        }
        Bounds { lo, hi }.serialize(s)
    }
}

fn scaled(x: &BigRational, digits: u32) -> (BigInt, BigInt) {
    let scale = BigInt::from(10).pow(digits);
    let num = x.numer() * &scale;
    (num, x.denom().clone())
}

fn format_scaled(n: &BigInt, digits: u32) -> String {
    let neg = n.is_negative();
    let s = n.abs().to_string();
    let d = digits as usize;
    let padded = if s.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = padded.split_at(padded.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Parses a plain decimal such as `-12.5000` exactly.
pub fn parse_decimal(text: &str) -> Option<BigRational> {
    let (neg, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() || !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = format!("{int}{frac}").parse().ok()?;
    let den = BigInt::from(10).pow(frac.len() as u32);
    let x = BigRational::new(num, den);
    Some(if neg { -x } else { x })
}

pub fn decimal_floor(x: &BigRational, digits: u32) -> String {
    let (n, d) = scaled(x, digits);
    format_scaled(&n.div_floor(&d), digits)
}

pub fn decimal_ceil(x: &BigRational, digits: u32) -> String {
    let (n, d) = scaled(x, digits);
    format_scaled(&-((-n).div_floor(&d)), digits)
}

/// `10^-12`, the default isolation width.
pub fn default_width() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(12))
}

/// Cauchy bound: every root has absolute value below the result.
pub fn root_bound(p: &[BigInt]) -> BigRational {
    let n = degree(p);
    let lead = p[n].abs();
    let max = p[..n].iter().map(Signed::abs).max().unwrap_or_default();
    BigRational::one() + BigRational::new(max, lead)
}

/// Isolating intervals, refined to width at most `width`, for every distinct
/// real root of `p` (nonzero, degree >= 1), in increasing order.
pub fn real_roots(p: &[BigInt], width: &BigRational) -> Vec<CertifiedInterval> {
    let sturm = Sturm::new(p);
    let bound = root_bound(p);
    let mut todo = vec![(-bound.clone(), bound)];
    let mut isolated = Vec::new();
    while let Some((a, b)) = todo.pop() {
        let n = sturm.count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((a, b));
            continue;
        }
        let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
        todo.push((a, mid.clone()));
        todo.push((mid, b));
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out: Vec<CertifiedInterval> = isolated
        .into_iter()
        .map(|(mut a, mut b)| {
            // root in (a, b]
            if eval_rational(p, &b).is_zero() {
                return CertifiedInterval::point(b);
            }
            while &b - &a > *width {
                let mid = (&a + &b) / &two;
                if eval_rational(p, &mid).is_zero() {
                    return CertifiedInterval::point(mid);
                }
                if sturm.count(&a, &mid) == 1 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            CertifiedInterval { lo: a, hi: b }
        })
        .collect();
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Rational enclosure of `sqrt(x)` (`x >= 0`) of width at most `width`.
pub fn sqrt_interval(x: &CertifiedInterval, width: &BigRational) -> CertifiedInterval {
    let two = BigRational::from_integer(BigInt::from(2));
    let lower = |q: &BigRational| -> BigRational {
        // largest dyadic r with r^2 <= q, up to the requested width
        let mut lo = BigRational::zero();
        let mut hi = BigRational::one().max(q.clone());
        while &hi - &lo > width / &two {
            let mid = (&lo + &hi) / &two;
            if &mid * &mid <= *q {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let upper = |q: &BigRational| -> BigRational {
        let mut lo = BigRational::zero();
        let mut hi = BigRational::one().max(q.clone());
        while &hi - &lo > width / &two {
            let mid = (&lo + &hi) / &two;
            if &mid * &mid >= *q {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };
    CertifiedInterval {
        lo: lower(&x.lo),
        hi: upper(&x.hi),
    }
}

/// Natural-log enclosure of a positive rational interval as `f64` bounds,
/// widened outward so that the true values are contained despite rounding.
pub fn ln_bounds(x: &CertifiedInterval) -> (f64, f64) {
    let lo = f64_below(&x.lo).ln();
    let hi = f64_above(&x.hi).ln();
    (step_down(step_down(lo)), step_up(step_up(hi)))
}

fn f64_below(q: &BigRational) -> f64 {
    let mut f = q.to_f64().expect("finite");
    while BigRational::from_float(f).is_some_and(|r| &r > q) {
        f = step_down(f);
    }
    f
}

fn f64_above(q: &BigRational) -> f64 {
    let mut f = q.to_f64().expect("finite");
    while BigRational::from_float(f).is_some_and(|r| &r < q) {
        f = step_up(f);
    }
    f
}

pub fn step_up(x: f64) -> f64 {
    x.next_up()
}

pub fn step_down(x: f64) -> f64 {
    x.next_down()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn synthetic_division() {
        // x^3 - 8x^2 + 8x - 1 = (x - 1)(x^2 - 7x + 1)
        let c = p(&[-1, 8, -8, 1]);
        assert_eq!(divide_by_linear(&c, &BigInt::one()), Some(p(&[1, -7, 1])));
        assert_eq!(divide_by_linear(&c, &BigInt::from(2)), None);
    }

    #[test]
    fn isolates_sqrt_two() {
        let roots = real_roots(&p(&[-2, 0, 1]), &default_width());
        assert_eq!(roots.len(), 2);
        let r = &roots[1];
        assert!(r.width() <= default_width());
        assert!(r.within(std::f64::consts::SQRT_2, 1e-15));
        assert!(r.lo > q(0, 1));
    }

    #[test]
    fn rational_roots_are_points() {
        let roots = real_roots(&p(&[-6, 11, -6, 1]), &default_width());
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([1, 2, 3]) {
            assert!(r.contains(&q(want, 1)));
        }
    }

    #[test]
    fn sturm_counts_double_roots_once() {
        let s = Sturm::new(&p(&[1, -2, 1]));
        assert_eq!(s.count(&q(0, 1), &q(2, 1)), 1);
    }

    #[test]
    fn decimals_round_outward() {
        assert_eq!(decimal_floor(&q(2, 3), 4), "0.6666");
        assert_eq!(decimal_ceil(&q(2, 3), 4), "0.6667");
        assert_eq!(decimal_floor(&q(-2, 3), 2), "-0.67");
        assert_eq!(decimal_ceil(&q(5, 1), 2), "5.00");
    }

    #[test]
    fn sqrt_enclosure() {
        let two = CertifiedInterval::point(q(2, 1));
        let r = sqrt_interval(&two, &default_width());
        assert!(r.within(std::f64::consts::SQRT_2, 0.0));
        assert!(&r.lo * &r.lo <= q(2, 1) && &r.hi * &r.hi >= q(2, 1));
    }
}
