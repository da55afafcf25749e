//! Indefinite binary quadratic forms `a x^2 + b x y + c y^2` with a positive
//! non-square discriminant: reduction, cycles of reduced forms, proper
//! equivalence, automorphs and primitive representations.
//!
//! Matrices act on column vectors and a form transforms as `f∘γ`, i.e.
//! `(f∘γ)(x, y) = f(γ (x, y)^T)`. Every transformation used here has
//! determinant 1.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{self, isqrt};

/// 2x2 integer matrix `[[m00, m01], [m10, m11]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [BigInt::one(), BigInt::zero()],
            [BigInt::zero(), BigInt::one()],
        ])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let a = &self.0;
        let b = &o.0;
        Mat2([
            [
                &a[0][0] * &b[0][0] + &a[0][1] * &b[1][0],
                &a[0][0] * &b[0][1] + &a[0][1] * &b[1][1],
            ],
            [
                &a[1][0] * &b[0][0] + &a[1][1] * &b[1][0],
                &a[1][0] * &b[0][1] + &a[1][1] * &b[1][1],
            ],
        ])
    }

    pub fn apply(&self, v: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        let m = &self.0;
        (
            &m[0][0] * &v.0 + &m[0][1] * &v.1,
            &m[1][0] * &v.0 + &m[1][1] * &v.1,
        )
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_sl2(&self) -> Mat2 {
        let m = &self.0;
        Mat2([
            [m[1][1].clone(), -&m[0][1]],
            [-&m[1][0], m[0][0].clone()],
        ])
    }

    pub fn reduce_mod(&self, n: &BigInt) -> Mat2 {
        let m = &self.0;
        Mat2([
            [m[0][0].mod_floor(n), m[0][1].mod_floor(n)],
            [m[1][0].mod_floor(n), m[1][1].mod_floor(n)],
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl BinaryForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        BinaryForm { a, b, c }
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn content(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// `f∘γ`.
    pub fn transform(&self, g: &Mat2) -> BinaryForm {
        let [[p, q], [r, s]] = &g.0;
        BinaryForm {
            a: self.eval(p, r),
            b: BigInt::from(2) * &self.a * p * q + &self.b * (p * s + q * r) + BigInt::from(2) * &self.c * r * s,
            c: self.eval(q, s),
        }
    }

    /// Generator matrix of the automorphs attached to a solution of
    /// `t^2 - D u^2 = 4`, where `D` is the discriminant of this (primitive) form.
    pub fn automorph(&self, t: &BigInt, u: &BigInt) -> Mat2 {
        let two = BigInt::from(2);
        Mat2([
            [(t - &self.b * u) / &two, -&self.c * u],
            [&self.a * u, (t + &self.b * u) / &two],
        ])
    }
}

/// Reduction machinery for a fixed positive non-square discriminant.
pub struct IndefiniteContext {
    disc: BigInt,
    root: BigInt,
}

impl IndefiniteContext {
    pub fn new(disc: BigInt) -> Self {
        assert!(disc.is_positive() && !arith::is_square(&disc));
        let root = isqrt(&disc);
        IndefiniteContext { disc, root }
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// `|sqrt(D) - 2|a|| < b < sqrt(D)`.
    pub fn is_reduced(&self, f: &BigInt, b: &BigInt) -> bool {
        let two_a = BigInt::from(2) * f.abs();
        b <= &self.root && &(&two_a - b) <= &self.root && &(&two_a + b) > &self.root
    }

    /// The representative of `b (mod 2c)` used by the reduction operator.
    fn normalize(&self, b: &BigInt, c: &BigInt) -> BigInt {
        let two_c = BigInt::from(2) * c.abs();
        if c.abs() > self.root {
            c.abs() - (c.abs() - b).mod_floor(&two_c)
        } else {
            &self.root - (&self.root - b).mod_floor(&two_c)
        }
    }

    /// One step of the reduction operator: `(a, b, c) -> (c, r, (r^2 - D) / 4c)`,
    /// returning the new form and the step matrix `[[0, -1], [1, s]]`.
    pub fn rho(&self, f: &BinaryForm) -> (BinaryForm, Mat2) {
        let r = self.normalize(&-&f.b, &f.c);
        let s = (&r + &f.b) / (BigInt::from(2) * &f.c);
        let next_c = (&r * &r - &self.disc) / (BigInt::from(4) * &f.c);
        let g = Mat2([[BigInt::zero(), -BigInt::one()], [BigInt::one(), s]]);
        (BinaryForm::new(f.c.clone(), r, next_c), g)
    }

    /// Reduced form equivalent to `f`, and `Γ` with `f∘Γ` equal to it.
    pub fn reduce(&self, f: &BinaryForm) -> (BinaryForm, Mat2) {
        debug_assert_eq!(f.discriminant(), self.disc);
        let mut cur = f.clone();
        let mut acc = Mat2::identity();
        while !self.is_reduced(&cur.a, &cur.b) {
            let (next, g) = self.rho(&cur);
            acc = acc.mul(&g);
            cur = next;
        }
        (cur, acc)
    }

    /// The cycle of reduced forms through the reduction of `f`.
    pub fn cycle(&self, f: &BinaryForm) -> Cycle {
        let (start, to_start) = self.reduce(f);
        let mut forms = Vec::new();
        let mut transforms = Vec::new();
        let mut cur = start.clone();
        let mut acc = Mat2::identity();
        loop {
            forms.push(cur.clone());
            transforms.push(acc.clone());
            let (next, g) = self.rho(&cur);
            acc = acc.mul(&g);
            cur = next;
            if cur == start {
                break;
            }
        }
        let index = forms
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), i))
            .collect();
        Cycle {
            form: f.clone(),
            to_start,
            forms,
            transforms,
            period: acc,
            index,
        }
    }
}

/// The cycle of reduced forms properly equivalent to a given form.
pub struct Cycle {
    form: BinaryForm,
    to_start: Mat2,
    forms: Vec<BinaryForm>,
    /// `start∘transforms[i] == forms[i]`
    transforms: Vec<Mat2>,
    /// product around the whole cycle (an automorph of the start form)
    period: Mat2,
    index: HashMap<BinaryForm, usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[BinaryForm] {
        &self.forms
    }

    /// Automorph of the original form obtained by going once around the cycle.
    pub fn cycle_automorph(&self) -> Mat2 {
        self.to_start
            .mul(&self.period)
            .mul(&self.to_start.inverse_sl2())
    }

    /// If `g` is properly equivalent to the cycle's form, returns `γ` with
    /// `form∘γ == g`.
    pub fn equivalence_to(&self, ctx: &IndefiniteContext, g: &BinaryForm) -> Option<Mat2> {
        let (g_red, g_to_red) = ctx.reduce(g);
        let &i = self.index.get(&g_red)?;
        // form∘to_start∘transforms[i] == g_red == g∘g_to_red
        let gamma = self
            .to_start
            .mul(&self.transforms[i])
            .mul(&g_to_red.inverse_sl2());
        debug_assert_eq!(self.form.transform(&gamma), *g);
        Some(gamma)
    }
}

/// Primitive representations of `m != 0` by a primitive indefinite form,
/// one per class modulo the automorph group, plus the number of candidate
/// forms `(m, T, *)` examined.
pub fn primitive_representations(
    ctx: &IndefiniteContext,
    cycle: &Cycle,
    m: &BigInt,
) -> (Vec<(BigInt, BigInt)>, usize) {
    let disc = ctx.discriminant();
    let four_m = BigInt::from(4) * m.abs();
    let two_m = BigInt::from(2) * m.abs();
    let mut reps = Vec::new();
    let mut examined = 0;
    for t in arith::sqrt_mod(disc, &four_m) {
        if t >= two_m {
            continue;
        }
        examined += 1;
        let c = (&t * &t - disc) / (BigInt::from(4) * m);
        let h = BinaryForm::new(m.clone(), t, c);
        if let Some(gamma) = cycle.equivalence_to(ctx, &h) {
            reps.push((gamma.0[0][0].clone(), gamma.0[1][0].clone()));
        }
    }
    (reps, examined)
}

/// Least solution `(x, y)`, `x, y > 0`, of `x^2 - D y^2 = 1` from the
/// periodic continued fraction of `sqrt(D)`.
pub fn pell_solution(d: &BigInt) -> (BigInt, BigInt) {
    let a0 = isqrt(d);
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - d * &k * &k == BigInt::one() {
            return (h, k);
        }
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// Least positive solution of `t^2 - D u^2 = 4` for a discriminant `D`
/// (`D = 0, 1 mod 4`, non-square). This is the fundamental unit of norm one
/// of the quadratic order of discriminant `D`, written as `(t + u sqrt(D)) / 2`.
pub fn unit_solution(d: &BigInt) -> (BigInt, BigInt) {
    let four = BigInt::from(4);
    if (d % &four).is_zero() {
        let (x, y) = pell_solution(&(d / &four));
        return (BigInt::from(2) * x, y);
    }
    let (x, y) = pell_solution(d);
    // Either (2x, 2y) is fundamental or it is the cube of a unit with odd
    // coordinates; in the latter case y = u (3 + D u^2) / 2.
    if d.mod_floor(&BigInt::from(8)) == BigInt::from(5) {
        let (mut lo, mut hi) = (BigInt::one(), y.clone());
        while lo <= hi {
            let mid: BigInt = (&lo + &hi) >> 1;
            let val = &mid * (BigInt::from(3) + d * &mid * &mid);
            let target = BigInt::from(2) * &y;
            if val == target {
                if let Some(t) = arith::exact_sqrt(&(&four + d * &mid * &mid)) {
                    return (t, mid);
                }
                break;
            } else if val < target {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
    }
    (BigInt::from(2) * x, BigInt::from(2) * y)
}
