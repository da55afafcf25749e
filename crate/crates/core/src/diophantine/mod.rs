//! Integral solvability of `A x^2 + B x y + C y^2 + D x + E y + F = 0`.
//!
//! [`solve`] is a complete decision procedure. Every verdict carries a
//! certificate: a witness that substitutes to zero, a modulus at which the
//! congruence has no solution, or the record of an exhaustive finite search
//! (bounded ellipse, divisor list, residue scan, or the cycle of reduced
//! forms of the quadratic part).
//!
//! Branches, in order: linear equations; content and modular sieve;
//! negative discriminant (finite ellipse); zero discriminant (parabola);
//! square discriminant (product of two linear forms); non-square positive
//! discriminant. The last case completes the square to `Q(X, Y) = N` with
//! `X = disc·x + p`, `Y = disc·y + q`, finds one representative per class of
//! representations through cycles of reduced forms, and then scans each
//! automorph orbit modulo `disc` for points satisfying the congruences.

pub mod forms;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, div_ceil, div_floor, exact_sqrt, isqrt};
use crate::error::{invalid, Result};
use crate::lattice::IntegerLattice;
use forms::{BinaryForm, IndefiniteContext, Mat2};

pub use forms::{pell_solution, unit_solution};

/// `A x^2 + B x y + C y^2 + D x + E y + F = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticDiophantine {
    #[serde(with = "crate::report::bigint_str")]
    pub a: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub b: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub c: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub d: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub e: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub f: BigInt,
}

impl fmt::Display for QuadraticDiophantine {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [
            (&self.a, "x^2"),
            (&self.b, "xy"),
            (&self.c, "y^2"),
            (&self.d, "x"),
            (&self.e, "y"),
            (&self.f, ""),
        ];
        let mut first = true;
        for (coef, mono) in terms {
            if coef.is_zero() {
                continue;
            }
            let mag = coef.abs();
            let sign = if coef.is_negative() { "-" } else { "+" };
            if first {
                if coef.is_negative() {
                    write!(out, "-")?;
                }
            } else {
                write!(out, " {sign} ")?;
            }
            if mono.is_empty() || !mag.is_one() {
                write!(out, "{mag}")?;
            }
            write!(out, "{mono}")?;
            first = false;
        }
        if first {
            write!(out, "0")?;
        }
        write!(out, " = 0")
    }
}

/// Shape of the quadratic part, read off `B^2 - 4AC`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscriminantKind {
    /// `A = B = C = 0`
    Linear,
    /// negative discriminant: the solution set lies on an ellipse
    Elliptic,
    Parabolic,
    HyperbolicSquare,
    HyperbolicNonSquare,
}

impl QuadraticDiophantine {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt, e: BigInt, f: BigInt) -> Self {
        QuadraticDiophantine { a, b, c, d, e, f }
    }

    pub fn from_i64(coeffs: [i64; 6]) -> Self {
        let [a, b, c, d, e, f] = coeffs.map(BigInt::from);
        Self::new(a, b, c, d, e, f)
    }

    pub fn coefficients(&self) -> [&BigInt; 6] {
        [&self.a, &self.b, &self.c, &self.d, &self.e, &self.f]
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    pub fn kind(&self) -> DiscriminantKind {
        if self.a.is_zero() && self.b.is_zero() && self.c.is_zero() {
            return DiscriminantKind::Linear;
        }
        let disc = self.discriminant();
        if disc.is_negative() {
            DiscriminantKind::Elliptic
        } else if disc.is_zero() {
            DiscriminantKind::Parabolic
        } else if arith::is_square(&disc) {
            DiscriminantKind::HyperbolicSquare
        } else {
            DiscriminantKind::HyperbolicNonSquare
        }
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y + &self.d * x + &self.e * y + &self.f
    }

    pub fn is_solution(&self, p: &[BigInt; 2]) -> bool {
        self.eval(&p[0], &p[1]).is_zero()
    }

    fn swapped(&self) -> Self {
        Self::new(
            self.c.clone(),
            self.b.clone(),
            self.a.clone(),
            self.e.clone(),
            self.d.clone(),
            self.f.clone(),
        )
    }

    fn divided(&self, g: &BigInt) -> Self {
        let [a, b, c, d, e, f] = self.coefficients().map(|x| x / g);
        Self::new(a, b, c, d, e, f)
    }

    /// The equation divided by the gcd of its non-constant coefficients,
    /// when that gcd also divides `F`. Same solutions; the sieve runs on this.
    pub fn primitive_part(&self) -> Self {
        let g = arith::gcd_all(self.coefficients()[..5].iter().copied());
        if g.is_zero() || g.is_one() || !(&self.f % &g).is_zero() {
            return self.clone();
        }
        self.divided(&g)
    }
}

/// Why an equation has no integral solution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// No pair of residues satisfies the congruence modulo `modulus`.
    Modular {
        #[serde(with = "crate::report::bigint_str")]
        modulus: BigInt,
    },
    /// `D x + E y = rhs` with `gcd(D, E) = gcd` not dividing `rhs`
    /// (`gcd = 0` means a nonzero constant equation).
    Linear {
        #[serde(with = "crate::report::bigint_str")]
        gcd: BigInt,
        #[serde(with = "crate::report::bigint_str")]
        rhs: BigInt,
    },
    /// Every `y` with a real solution `x` lies in `[y_min, y_max]` and none
    /// of them gives an integral `x`. An empty range is encoded `y_min > y_max`.
    BoundedSearch {
        #[serde(with = "crate::report::bigint_str")]
        y_min: BigInt,
        #[serde(with = "crate::report::bigint_str")]
        y_max: BigInt,
    },
    /// Parabolic case: no residue `W (mod modulus)` of `W = 2Ax + By + D`
    /// yields integral `x, y` (`modulus = 0`: `W^2` would have to equal a
    /// non-square or an inadmissible constant).
    ParabolicScan {
        #[serde(with = "crate::report::bigint_str")]
        modulus: BigInt,
    },
    /// Square discriminant: every factorization of the right-hand side was tried.
    Factorization { divisors_checked: usize },
    /// The quadratic part has no nonzero zero and the center is not integral.
    Anisotropic,
    /// Non-square discriminant: no candidate form `(m, T, *)` lies in the cycle
    /// of reduced forms of the quadratic part, or the automorph orbits of all
    /// representations miss the required residues modulo `orbit_modulus`.
    ReductionCycle {
        #[serde(with = "crate::report::bigint_str")]
        discriminant: BigInt,
        #[serde(with = "crate::report::bigint_str")]
        target: BigInt,
        cycle_length: usize,
        classes_examined: usize,
        representation_classes: usize,
        #[serde(with = "crate::report::bigint_str")]
        orbit_modulus: BigInt,
        orbit_period: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solvable,
    Unsolvable,
    /// `0 = 0`: every pair solves.
    AllPairs,
}

/// How a class of solutions is generated from its representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// A single solution.
    Isolated,
    /// `p + j·step`, `j ∈ Z`.
    Translate {
        #[serde(with = "crate::report::bigint_arr2")]
        step: [BigInt; 2],
    },
    /// `R^j(p)`, `j ∈ Z`, for the affine map `R(p) = M p + shift`.
    Affine {
        #[serde(with = "crate::report::bigint_arr4")]
        matrix: [BigInt; 4],
        #[serde(with = "crate::report::bigint_arr2")]
        shift: [BigInt; 2],
    },
    /// Parabolic family: with `W = 2a x + b y + d`, the next solution has
    /// `W' = W + period`, `y' = (W'^2 - c0) / k`, `x' = (W' - b y' - d) / 2a`.
    /// When `swapped` the roles of `x` and `y` are exchanged.
    ParabolicShift {
        #[serde(with = "crate::report::bigint_arr4")]
        abdk: [BigInt; 4],
        #[serde(with = "crate::report::bigint_str")]
        c0: BigInt,
        #[serde(with = "crate::report::bigint_str")]
        period: BigInt,
        swapped: bool,
    },
}

impl Generator {
    /// Moves `steps` positions along the family (negative = backwards).
    pub fn advance(&self, p: &[BigInt; 2], steps: i64) -> [BigInt; 2] {
        match self {
            Generator::Isolated => p.clone(),
            Generator::Translate { step } => {
                let j = BigInt::from(steps);
                [&p[0] + &j * &step[0], &p[1] + &j * &step[1]]
            }
            Generator::Affine { matrix, shift } => {
                let m = Mat2([
                    [matrix[0].clone(), matrix[1].clone()],
                    [matrix[2].clone(), matrix[3].clone()],
                ]);
                let mut cur = p.clone();
                if steps >= 0 {
                    for _ in 0..steps {
                        let (x, y) = m.apply(&(cur[0].clone(), cur[1].clone()));
                        cur = [x + &shift[0], y + &shift[1]];
                    }
                } else {
                    let inv = m.inverse_sl2();
                    for _ in 0..(-steps) {
                        let (x, y) =
                            inv.apply(&(&cur[0] - &shift[0], &cur[1] - &shift[1]));
                        cur = [x, y];
                    }
                }
                cur
            }
            Generator::ParabolicShift {
                abdk,
                c0,
                period,
                swapped,
            } => {
                let [a, b, d, k] = abdk;
                let (x, y) = if *swapped {
                    (&p[1], &p[0])
                } else {
                    (&p[0], &p[1])
                };
                let w = BigInt::from(2) * a * x + b * y + d + period * BigInt::from(steps);
                let ny = (&w * &w - c0) / k;
                let nx = (&w - b * &ny - d) / (BigInt::from(2) * a);
                if *swapped {
                    [ny, nx]
                } else {
                    [nx, ny]
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionClass {
    #[serde(with = "crate::report::bigint_arr2")]
    pub representative: [BigInt; 2],
    pub generator: Generator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolvabilityCertificate {
    pub equation: QuadraticDiophantine,
    pub kind: DiscriminantKind,
    pub status: Status,
    #[serde(with = "crate::report::opt_bigint_arr2")]
    pub witness: Option<[BigInt; 2]>,
    pub obstruction: Option<Evidence>,
    /// Every solution lies in exactly one of these classes (unless `truncated`).
    pub fundamental_solutions: Vec<SolutionClass>,
    pub cycle_length: Option<usize>,
    /// Some classes were left out because their smallest member is huge.
    pub truncated: bool,
}

impl SolvabilityCertificate {
    pub fn is_solvable(&self) -> bool {
        self.status != Status::Unsolvable
    }

    pub fn modular_modulus(&self) -> Option<&BigInt> {
        match &self.obstruction {
            Some(Evidence::Modular { modulus }) => Some(modulus),
            _ => None,
        }
    }

    fn unsolvable(eq: &QuadraticDiophantine, evidence: Evidence, cycle: Option<usize>) -> Self {
        SolvabilityCertificate {
            equation: eq.clone(),
            kind: eq.kind(),
            status: Status::Unsolvable,
            witness: None,
            obstruction: Some(evidence),
            fundamental_solutions: Vec::new(),
            cycle_length: cycle,
            truncated: false,
        }
    }

    fn solvable(
        eq: &QuadraticDiophantine,
        mut classes: Vec<SolutionClass>,
        cycle: Option<usize>,
        truncated: bool,
    ) -> Self {
        classes.sort_by(|a, b| canonical_key(&a.representative).cmp(&canonical_key(&b.representative)));
        classes.dedup_by(|a, b| a.representative == b.representative);
        let witness = classes.first().map(|c| c.representative.clone());
        SolvabilityCertificate {
            equation: eq.clone(),
            kind: eq.kind(),
            status: Status::Solvable,
            witness,
            obstruction: None,
            fundamental_solutions: classes,
            cycle_length: cycle,
            truncated,
        }
    }
}

/// Ordering used to pick representatives: smaller `|y|`, then smaller `|x|`,
/// then non-negative `x`, then non-negative `y`.
fn canonical_key(p: &[BigInt; 2]) -> (BigInt, BigInt, bool, bool) {
    (p[1].abs(), p[0].abs(), p[0].is_negative(), p[1].is_negative())
}

/// Tunables of the decision procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Every prime power up to this bound is tried by the modular sieve.
    pub sieve_bound: u64,
    /// Prime powers dividing `4·disc` are also tried up to this bound.
    pub disc_modulus_cap: u64,
    /// Solution classes whose smallest member would exceed this many bits are
    /// dropped from the list (the witness is always kept).
    pub max_solution_bits: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            sieve_bound: 64,
            disc_modulus_cap: 256,
            max_solution_bits: 4096,
        }
    }
}

/// Moduli tried by the sieve, increasing.
pub fn modulus_schedule(eq: &QuadraticDiophantine, cfg: &SolverConfig) -> Vec<u64> {
    let mut out = Vec::new();
    for n in 2..=cfg.sieve_bound {
        let f = arith::factorize(&BigInt::from(n));
        if f.len() == 1 {
            out.push(n);
        }
    }
    let disc = eq.discriminant();
    if !disc.is_zero() {
        for (p, _) in arith::factorize(&(BigInt::from(4) * &disc)) {
            let Some(p) = p.to_u64() else { continue };
            let mut pe = p;
            while pe <= cfg.disc_modulus_cap {
                if pe > cfg.sieve_bound {
                    out.push(pe);
                }
                pe = match pe.checked_mul(p) {
                    Some(v) => v,
                    None => break,
                };
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Exhaustive check of all `n^2` residue pairs. Returns evidence iff no pair
/// satisfies the equation modulo `n`.
pub fn modular_obstruction(eq: &QuadraticDiophantine, n: &BigInt) -> Option<Evidence> {
    if n < &BigInt::from(2) {
        return None;
    }
    let residues = eq.coefficients().map(|c| c.mod_floor(n));
    // All non-constant coefficients vanish: the congruence reads F = 0.
    if residues[..5].iter().all(Zero::is_zero) {
        return (!residues[5].is_zero()).then(|| Evidence::Modular { modulus: n.clone() });
    }
    let Some(m) = n.to_u64().filter(|&m| m <= u32::MAX as u64) else {
        // Too large to enumerate; never produced by the sieve.
        return None;
    };
    let [a, b, c, d, e, f] = residues.map(|r| r.to_u64().expect("reduced residue"));
    for x in 0..m {
        let const_part = ((a * x % m) * x % m + d * x % m + f) % m;
        let lin = (b * x % m + e) % m;
        for y in 0..m {
            let v = (const_part + (lin + c * y % m) % m * y) % m;
            if v == 0 {
                return None;
            }
        }
    }
    Some(Evidence::Modular { modulus: n.clone() })
}

pub fn solve(eq: &QuadraticDiophantine) -> SolvabilityCertificate {
    solve_with(eq, &SolverConfig::default())
}

pub fn solve_with(eq: &QuadraticDiophantine, cfg: &SolverConfig) -> SolvabilityCertificate {
    let mut cert = decide(eq, cfg);
    // Report against the equation as given.
    cert.equation = eq.clone();
    cert.kind = eq.kind();
    debug_assert!(cert
        .witness
        .as_ref()
        .is_none_or(|w| eq.is_solution(w)));
    cert
}

fn decide(eq: &QuadraticDiophantine, cfg: &SolverConfig) -> SolvabilityCertificate {
    if eq.kind() == DiscriminantKind::Linear {
        return solve_linear(eq);
    }
    let content = arith::gcd_all(eq.coefficients()[..5].iter().copied());
    if !(&eq.f % &content).is_zero() {
        return SolvabilityCertificate::unsolvable(eq, content_obstruction(&content, &eq.f), None);
    }
    let eq = &eq.divided(&content);
    for n in modulus_schedule(eq, cfg) {
        if let Some(ev) = modular_obstruction(eq, &BigInt::from(n)) {
            return SolvabilityCertificate::unsolvable(eq, ev, None);
        }
    }
    match eq.kind() {
        DiscriminantKind::Linear => unreachable!(),
        DiscriminantKind::Elliptic => solve_elliptic(eq),
        DiscriminantKind::Parabolic => solve_parabolic(eq),
        DiscriminantKind::HyperbolicSquare => solve_square(eq),
        DiscriminantKind::HyperbolicNonSquare => solve_pell_type(eq, cfg),
    }
}

/// A prime power dividing `g` but not `f`.
fn content_obstruction(g: &BigInt, f: &BigInt) -> Evidence {
    for (p, e) in arith::factorize(g) {
        let mut k = 0u32;
        let mut rest = f.clone();
        while k < e && (&rest % &p).is_zero() && !rest.is_zero() {
            rest /= &p;
            k += 1;
        }
        if k < e {
            return Evidence::Modular {
                modulus: p.pow(k + 1),
            };
        }
    }
    unreachable!("g does not divide f")
}

fn solve_linear(eq: &QuadraticDiophantine) -> SolvabilityCertificate {
    let rhs = -&eq.f;
    if eq.d.is_zero() && eq.e.is_zero() {
        if rhs.is_zero() {
            return SolvabilityCertificate {
                equation: eq.clone(),
                kind: DiscriminantKind::Linear,
                status: Status::AllPairs,
                witness: None,
                obstruction: None,
                fundamental_solutions: Vec::new(),
                cycle_length: None,
                truncated: false,
            };
        }
        return SolvabilityCertificate::unsolvable(
            eq,
            Evidence::Linear {
                gcd: BigInt::zero(),
                rhs,
            },
            None,
        );
    }
    match linear_solutions(&eq.d, &eq.e, &rhs) {
        Some(class) => SolvabilityCertificate::solvable(eq, vec![class], None, false),
        None => SolvabilityCertificate::unsolvable(
            eq,
            Evidence::Linear {
                gcd: eq.d.gcd(&eq.e),
                rhs,
            },
            None,
        ),
    }
}

/// Solutions of `a x + b y = r` (`(a, b) != 0`) as one translation class with
/// a representative of minimal `|y|` (then `|x|`).
fn linear_solutions(a: &BigInt, b: &BigInt, r: &BigInt) -> Option<SolutionClass> {
    let (g, u, v) = arith::ext_gcd(a, b);
    if !(r % &g).is_zero() {
        return None;
    }
    let k = r / &g;
    let p = [u * &k, v * &k];
    let step = [b / &g, -(a / &g)];
    let idx = if step[1].is_zero() { 0 } else { 1 };
    let j0 = div_floor(&-&p[idx], &step[idx]);
    let rep = [j0.clone() - 1, j0.clone(), j0 + 1]
        .iter()
        .map(|j| [&p[0] + j * &step[0], &p[1] + j * &step[1]])
        .min_by_key(canonical_key)
        .expect("three candidates");
    Some(SolutionClass {
        representative: rep,
        generator: Generator::Translate { step },
    })
}

fn solve_elliptic(eq: &QuadraticDiophantine) -> SolvabilityCertificate {
    let disc = eq.discriminant();
    let beta = &eq.b * &eq.d - BigInt::from(2) * &eq.a * &eq.e;
    let gamma = &eq.d * &eq.d - BigInt::from(4) * &eq.a * &eq.f;
    // Real solutions x exist iff (disc·y + beta)^2 <= beta^2 - disc·gamma.
    let radius2 = &beta * &beta - &disc * &gamma;
    if radius2.is_negative() {
        return SolvabilityCertificate::unsolvable(
            eq,
            Evidence::BoundedSearch {
                y_min: BigInt::one(),
                y_max: BigInt::zero(),
            },
            None,
        );
    }
    let r = isqrt(&radius2);
    let neg = -&disc;
    let y_min = div_ceil(&(&beta - &r), &neg);
    let y_max = div_floor(&(&beta + &r), &neg);
    let two_a = BigInt::from(2) * &eq.a;
    let mut classes = Vec::new();
    let mut y = y_min.clone();
    while y <= y_max {
        let lin = &eq.b * &y + &eq.d;
        let cst = &eq.c * &y * &y + &eq.e * &y + &eq.f;
        if let Some(s) = exact_sqrt(&(&lin * &lin - BigInt::from(4) * &eq.a * &cst)) {
            for num in [-&lin + &s, -&lin - &s] {
                if (&num % &two_a).is_zero() {
                    classes.push(SolutionClass {
                        representative: [num / &two_a, y.clone()],
                        generator: Generator::Isolated,
                    });
                }
            }
        }
        y += 1;
    }
    if classes.is_empty() {
        SolvabilityCertificate::unsolvable(eq, Evidence::BoundedSearch { y_min, y_max }, None)
    } else {
        SolvabilityCertificate::solvable(eq, classes, None, false)
    }
}

fn swap_classes(classes: Vec<SolutionClass>) -> Vec<SolutionClass> {
    classes
        .into_iter()
        .map(|c| {
            let [x, y] = c.representative;
            let generator = match c.generator {
                Generator::Translate { step: [sx, sy] } => Generator::Translate { step: [sy, sx] },
                Generator::ParabolicShift {
                    abdk,
                    c0,
                    period,
                    swapped,
                } => Generator::ParabolicShift {
                    abdk,
                    c0,
                    period,
                    swapped: !swapped,
                },
                Generator::Affine { matrix, shift } => {
                    let [m00, m01, m10, m11] = matrix;
                    let [s0, s1] = shift;
                    Generator::Affine {
                        matrix: [m11, m10, m01, m00],
                        shift: [s1, s0],
                    }
                }
                g @ Generator::Isolated => g,
            };
            SolutionClass {
                representative: [y, x],
                generator,
            }
        })
        .collect()
}

fn solve_parabolic(eq: &QuadraticDiophantine) -> SolvabilityCertificate {
    if eq.a.is_zero() {
        let mut cert = solve_parabolic(&eq.swapped());
        cert.fundamental_solutions = swap_classes(std::mem::take(&mut cert.fundamental_solutions));
        cert.witness = cert.witness.map(|[x, y]| [y, x]);
        cert.equation = eq.clone();
        return cert;
    }
    let (a, b, d) = (&eq.a, &eq.b, &eq.d);
    let two_a = BigInt::from(2) * a;
    // With W = 2Ax + By + D: W^2 = k y + c0.
    let k = BigInt::from(2) * b * d - BigInt::from(4) * a * &eq.e;
    let c0 = d * d - BigInt::from(4) * a * &eq.f;
    let mut classes = Vec::new();
    if k.is_zero() {
        if let Some(w) = exact_sqrt(&c0) {
            let mut ws = vec![w.clone()];
            if !w.is_zero() {
                ws.push(-w);
            }
            for w in ws {
                if let Some(cls) = linear_solutions(&two_a, b, &(&w - d)) {
                    classes.push(cls);
                }
            }
        }
        if classes.is_empty() {
            return SolvabilityCertificate::unsolvable(
                eq,
                Evidence::ParabolicScan {
                    modulus: BigInt::zero(),
                },
                None,
            );
        }
        return SolvabilityCertificate::solvable(eq, classes, None, false);
    }
    let period = two_a.abs() * k.abs();
    let half = &period / 2;
    let mut w = BigInt::zero();
    while w < period {
        let w_rep = if w > half { &w - &period } else { w.clone() };
        let num = &w_rep * &w_rep - &c0;
        if (&num % &k).is_zero() {
            let y = &num / &k;
            let xn = &w_rep - b * &y - d;
            if (&xn % &two_a).is_zero() {
                classes.push(SolutionClass {
                    representative: [xn / &two_a, y],
                    generator: Generator::ParabolicShift {
                        abdk: [a.clone(), b.clone(), d.clone(), k.clone()],
                        c0: c0.clone(),
                        period: period.clone(),
                        swapped: false,
                    },
                });
            }
        }
        w += 1;
    }
    if classes.is_empty() {
        SolvabilityCertificate::unsolvable(eq, Evidence::ParabolicScan { modulus: period }, None)
    } else {
        SolvabilityCertificate::solvable(eq, classes, None, false)
    }
}

/// Data of the translation `X = scale·x + p`, `Y = scale·y + q` taking the
/// equation to `Q(X, Y) = target`. Homogeneous equations use `scale = 1`.
struct Centered {
    scale: BigInt,
    p: BigInt,
    q: BigInt,
    target: BigInt,
}

impl Centered {
    fn new(eq: &QuadraticDiophantine) -> Self {
        if eq.d.is_zero() && eq.e.is_zero() {
            return Centered {
                scale: BigInt::one(),
                p: BigInt::zero(),
                q: BigInt::zero(),
                target: -&eq.f,
            };
        }
        let disc = eq.discriminant();
        let two = BigInt::from(2);
        let p = &eq.b * &eq.e - &two * &eq.c * &eq.d;
        let q = &eq.b * &eq.d - &two * &eq.a * &eq.e;
        let qpq = &eq.a * &p * &p + &eq.b * &p * &q + &eq.c * &q * &q;
        let target = qpq - &disc * &disc * &eq.f;
        Centered {
            scale: disc.abs(),
            p,
            q,
            target,
        }
    }

    fn pull_back(&self, big_x: &BigInt, big_y: &BigInt) -> Option<[BigInt; 2]> {
        let (x, rx) = (big_x - &self.p).div_rem(&self.scale);
        let (y, ry) = (big_y - &self.q).div_rem(&self.scale);
        (rx.is_zero() && ry.is_zero()).then_some([x, y])
    }
}

fn solve_square(eq: &QuadraticDiophantine) -> SolvabilityCertificate {
    if eq.a.is_zero() && !eq.c.is_zero() {
        let mut cert = solve_square(&eq.swapped());
        cert.fundamental_solutions = swap_classes(std::mem::take(&mut cert.fundamental_solutions));
        cert.witness = cert.witness.map(|[x, y]| [y, x]);
        cert.equation = eq.clone();
        return cert;
    }
    if eq.a.is_zero() {
        return solve_bilinear(eq);
    }
    let s = exact_sqrt(&eq.discriminant()).expect("square discriminant");
    let two_a = BigInt::from(2) * &eq.a;
    let cen = Centered::new(eq);
    // 4A·Q(X, Y) = (2AX + (B+s)Y)(2AX + (B-s)Y)
    let beta_plus = &eq.b + &s;
    let beta_minus = &eq.b - &s;
    let mut classes = Vec::new();
    if cen.target.is_zero() {
        for beta in [&beta_plus, &beta_minus] {
            let g = two_a.gcd(beta);
            let dir = [-(beta / &g), &two_a / &g];
            let mut j = BigInt::zero();
            while j < cen.scale {
                if let Some(p) = cen.pull_back(&(&j * &dir[0]), &(&j * &dir[1])) {
                    let step = if cen.scale.is_one() {
                        dir.clone()
                    } else {
                        [dir[0].clone(), dir[1].clone()]
                    };
                    classes.push(SolutionClass {
                        representative: p,
                        generator: Generator::Translate { step },
                    });
                }
                j += 1;
            }
        }
        if classes.is_empty() {
            return SolvabilityCertificate::unsolvable(
                eq,
                Evidence::Factorization {
                    divisors_checked: 0,
                },
                None,
            );
        }
        return SolvabilityCertificate::solvable(eq, classes, None, false);
    }
    let prod = BigInt::from(4) * &eq.a * &cen.target;
    let divs = arith::divisors(&prod);
    let mut checked = 0;
    for u in &divs {
        for u in [u.clone(), -u] {
            checked += 1;
            let w = &prod / &u;
            let (big_y, ry) = (&u - &w).div_rem(&(BigInt::from(2) * &s));
            if !ry.is_zero() {
                continue;
            }
            let (big_x, rx) = (&u - &beta_plus * &big_y).div_rem(&two_a);
            if !rx.is_zero() {
                continue;
            }
            if let Some(p) = cen.pull_back(&big_x, &big_y) {
                classes.push(SolutionClass {
                    representative: p,
                    generator: Generator::Isolated,
                });
            }
        }
    }
    if classes.is_empty() {
        SolvabilityCertificate::unsolvable(
            eq,
            Evidence::Factorization {
                divisors_checked: checked,
            },
            None,
        )
    } else {
        SolvabilityCertificate::solvable(eq, classes, None, false)
    }
}

/// `B x y + D x + E y + F = 0`, i.e. `(Bx + E)(By + D) = DE - BF`.
fn solve_bilinear(eq: &QuadraticDiophantine) -> SolvabilityCertificate {
    let b = &eq.b;
    let rhs = &eq.d * &eq.e - b * &eq.f;
    let mut classes = Vec::new();
    if rhs.is_zero() {
        if (&eq.e % b).is_zero() {
            let x = -(&eq.e / b);
            classes.push(SolutionClass {
                representative: [x, BigInt::zero()],
                generator: Generator::Translate {
                    step: [BigInt::zero(), BigInt::one()],
                },
            });
        }
        if (&eq.d % b).is_zero() {
            let y = -(&eq.d / b);
            classes.push(SolutionClass {
                representative: [BigInt::zero(), y],
                generator: Generator::Translate {
                    step: [BigInt::one(), BigInt::zero()],
                },
            });
        }
        if classes.is_empty() {
            return SolvabilityCertificate::unsolvable(
                eq,
                Evidence::Factorization {
                    divisors_checked: 0,
                },
                None,
            );
        }
        return SolvabilityCertificate::solvable(eq, classes, None, false);
    }
    let mut checked = 0;
    for u in arith::divisors(&rhs) {
        for u in [u.clone(), -u] {
            checked += 1;
            let w = &rhs / &u;
            let (x, rx) = (&u - &eq.e).div_rem(b);
            let (y, ry) = (&w - &eq.d).div_rem(b);
            if rx.is_zero() && ry.is_zero() {
                classes.push(SolutionClass {
                    representative: [x, y],
                    generator: Generator::Isolated,
                });
            }
        }
    }
    if classes.is_empty() {
        SolvabilityCertificate::unsolvable(
            eq,
            Evidence::Factorization {
                divisors_checked: checked,
            },
            None,
        )
    } else {
        SolvabilityCertificate::solvable(eq, classes, None, false)
    }
}

fn mat_pow(m: &Mat2, e: i64) -> Mat2 {
    let mut base = if e < 0 { m.inverse_sl2() } else { m.clone() };
    let mut n = e.unsigned_abs();
    let mut acc = Mat2::identity();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        n >>= 1;
    }
    acc
}

fn solve_pell_type(eq: &QuadraticDiophantine, cfg: &SolverConfig) -> SolvabilityCertificate {
    let cen = Centered::new(eq);
    let form = BinaryForm::new(eq.a.clone(), eq.b.clone(), eq.c.clone());
    if cen.target.is_zero() {
        // Q is anisotropic over Q, so X = Y = 0.
        return match cen.pull_back(&BigInt::zero(), &BigInt::zero()) {
            Some(p) => SolvabilityCertificate::solvable(
                eq,
                vec![SolutionClass {
                    representative: p,
                    generator: Generator::Isolated,
                }],
                None,
                false,
            ),
            None => SolvabilityCertificate::unsolvable(eq, Evidence::Anisotropic, None),
        };
    }
    let content = form.content();
    if !(&cen.target % &content).is_zero() {
        return SolvabilityCertificate::unsolvable(eq, content_obstruction(&content, &cen.target), None);
    }
    let prim = BinaryForm::new(&form.a / &content, &form.b / &content, &form.c / &content);
    let target = &cen.target / &content;
    let disc = prim.discriminant();
    let ctx = IndefiniteContext::new(disc.clone());
    let cycle = ctx.cycle(&prim);
    let (t, u) = unit_solution(&disc);
    let unit = prim.automorph(&t, &u);

    let mut seeds: Vec<(BigInt, BigInt)> = Vec::new();
    let mut examined = 0;
    for g in arith::square_divisors(&target) {
        let m = &target / (&g * &g);
        let (reps, n) = forms::primitive_representations(&ctx, &cycle, &m);
        examined += n;
        for (x, y) in reps {
            seeds.push((&g * &x, &g * &y));
            seeds.push((-(&g * x), -(&g * y)));
        }
    }
    let classes_found = seeds.len() / 2;
    let no_solution = |period: usize| Evidence::ReductionCycle {
        discriminant: disc.clone(),
        target: target.clone(),
        cycle_length: cycle.len(),
        classes_examined: examined,
        representation_classes: classes_found,
        orbit_modulus: cen.scale.clone(),
        orbit_period: period,
    };
    if seeds.is_empty() {
        return SolvabilityCertificate::unsolvable(eq, no_solution(0), Some(cycle.len()));
    }

    // Least k > 0 with U^k (p, q) = (p, q) mod scale. Then U^k maps solutions
    // to solutions, and each seed orbit meets the congruence class in at most
    // one residue of the exponent modulo k.
    let scale = &cen.scale;
    let unit_mod = unit.reduce_mod(scale);
    let reduce = |v: (BigInt, BigInt)| (v.0.mod_floor(scale), v.1.mod_floor(scale));
    let want = reduce((cen.p.clone(), cen.q.clone()));
    let mut period = 1usize;
    let mut cur = reduce(unit_mod.apply(&want));
    while cur != want {
        cur = reduce(unit_mod.apply(&cur));
        period += 1;
    }
    let mut valid: Vec<(usize, i64)> = Vec::new();
    for (i, s) in seeds.iter().enumerate() {
        let mut cur = reduce(s.clone());
        for k in 0..period {
            if cur == want {
                let k = k as i64;
                let p = period as i64;
                valid.push((i, if 2 * k <= p { k } else { k - p }));
                break;
            }
            cur = reduce(unit_mod.apply(&cur));
        }
    }
    if valid.is_empty() {
        return SolvabilityCertificate::unsolvable(eq, no_solution(period), Some(cycle.len()));
    }
    valid.sort_by_key(|&(i, e)| (e.unsigned_abs(), i));

    let step = mat_pow(&unit, period as i64);
    let shift = [
        (&step.0[0][0] * &cen.p + &step.0[0][1] * &cen.q - &cen.p) / scale,
        (&step.0[1][0] * &cen.p + &step.0[1][1] * &cen.q - &cen.q) / scale,
    ];
    let generator = Generator::Affine {
        matrix: [
            step.0[0][0].clone(),
            step.0[0][1].clone(),
            step.0[1][0].clone(),
            step.0[1][1].clone(),
        ],
        shift: shift.clone(),
    };
    let unit_bits = t.bits().max(1);
    let mut classes = Vec::new();
    let mut truncated = false;
    for (i, e) in valid {
        let estimate = unit_bits.saturating_mul(e.unsigned_abs());
        if !classes.is_empty() && estimate > cfg.max_solution_bits {
            truncated = true;
            continue;
        }
        let pt = mat_pow(&unit, e).apply(&seeds[i]);
        let p = cen
            .pull_back(&pt.0, &pt.1)
            .expect("orbit point satisfies the congruences");
        let p = descend(&generator, p);
        classes.push(SolutionClass {
            representative: p,
            generator: generator.clone(),
        });
    }
    SolvabilityCertificate::solvable(eq, classes, Some(cycle.len()), truncated)
}

/// Walks the family in both directions towards smaller canonical keys.
fn descend(generator: &Generator, start: [BigInt; 2]) -> [BigInt; 2] {
    let mut best = start;
    for dir in [1i64, -1] {
        loop {
            let next = generator.advance(&best, dir);
            if canonical_key(&next) < canonical_key(&best) {
                best = next;
            } else {
                break;
            }
        }
    }
    best
}

/// Binary quadratic form `x^T G x` of a rank-2 Gram matrix: `(g00, 2 g01, g11)`.
fn form_of(lattice: &IntegerLattice) -> Result<(BigInt, BigInt, BigInt)> {
    if lattice.rank() != 2 {
        return invalid("expected a rank-2 lattice");
    }
    let g = lattice.gram();
    Ok((
        g[(0, 0)].clone(),
        BigInt::from(2) * &g[(0, 1)],
        g[(1, 1)].clone(),
    ))
}

/// Decides whether a rank-2 lattice represents `m` by a nonzero vector.
pub fn represents(lattice: &IntegerLattice, m: &BigInt) -> Result<SolvabilityCertificate> {
    let (a, b, c) = form_of(lattice)?;
    let eq = QuadraticDiophantine::new(a, b, c, BigInt::zero(), BigInt::zero(), -m);
    if !m.is_zero() {
        return Ok(solve(&eq));
    }
    let iso = exists_isotropic(lattice)?;
    Ok(match iso.witness {
        Some(w) => SolvabilityCertificate {
            equation: eq.clone(),
            kind: eq.kind(),
            status: Status::Solvable,
            witness: Some(w.clone()),
            obstruction: None,
            fundamental_solutions: vec![SolutionClass {
                representative: w.clone(),
                generator: Generator::Translate { step: w },
            }],
            cycle_length: None,
            truncated: false,
        },
        None => SolvabilityCertificate::unsolvable(&eq, Evidence::Anisotropic, None),
    })
}

/// Outcome of the isotropy test for a rank-2 lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyCertificate {
    pub isotropic: bool,
    /// `-det(G)`; isotropic vectors exist iff this is a perfect square.
    #[serde(with = "crate::report::bigint_str")]
    pub minus_det: BigInt,
    #[serde(with = "crate::report::opt_bigint_arr2")]
    pub witness: Option<[BigInt; 2]>,
}

/// Whether a non-degenerate rank-2 lattice has a nonzero vector of square 0.
pub fn exists_isotropic(lattice: &IntegerLattice) -> Result<IsotropyCertificate> {
    if lattice.rank() != 2 {
        return invalid("expected a rank-2 lattice");
    }
    let g = lattice.gram();
    let (a, b) = (&g[(0, 0)], &g[(0, 1)]);
    let minus_det = -lattice.discriminant();
    let witness = exact_sqrt(&minus_det).map(|r| {
        if a.is_zero() {
            [BigInt::one(), BigInt::zero()]
        } else {
            // a x + (b - r) y = 0 on the isotropic line
            let x = r - b;
            let y = a.clone();
            let h = x.gcd(&y);
            [x / &h, y / h]
        }
    });
    debug_assert!(witness.as_ref().is_none_or(|w| lattice.pairing(w, w).is_zero()));
    Ok(IsotropyCertificate {
        isotropic: witness.is_some(),
        minus_det,
        witness,
    })
}

/// Least solution of `X^2 - D Y^2 = 1` with `X, Y > 0`.
pub fn pell_fundamental(d: &BigInt) -> Result<(BigInt, BigInt)> {
    if !d.is_positive() {
        return invalid("Pell equation needs D > 0");
    }
    if arith::is_square(d) {
        return invalid(format!("D = {d} is a perfect square"));
    }
    Ok(pell_solution(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn eq(c: [i64; 6]) -> QuadraticDiophantine {
        QuadraticDiophantine::from_i64(c)
    }

    #[test]
    fn rank_four_wall_equation_has_mod_three_obstruction() {
        let cert = solve(&eq([4, -33, 66, 0, 0, 1]));
        assert_eq!(cert.status, Status::Unsolvable);
        assert_eq!(cert.modular_modulus(), Some(&b(3)));
    }

    #[test]
    fn rank_six_wall_equation_has_mod_five_obstruction() {
        let cert = solve(&eq([7, -85, 255, 0, 0, 1]));
        assert_eq!(cert.status, Status::Unsolvable);
        assert_eq!(cert.modular_modulus(), Some(&b(5)));
    }

    #[test]
    fn small_solvable_cases() {
        let cert = solve(&eq([1, 0, -2, 0, 0, 1]));
        assert_eq!(cert.status, Status::Solvable);
        assert_eq!(cert.witness, Some([b(1), b(1)]));
        let cert = solve(&eq([1, 0, 1, 0, 0, 0]));
        assert_eq!(cert.witness, Some([b(0), b(0)]));
    }

    #[test]
    fn degenerate_equations() {
        assert_eq!(solve(&eq([0, 0, 0, 0, 0, 0])).status, Status::AllPairs);
        let c = solve(&eq([0, 0, 0, 0, 0, 3]));
        assert_eq!(c.status, Status::Unsolvable);
        let c = solve(&eq([0, 0, 0, 4, 6, 1]));
        assert_eq!(
            c.obstruction,
            Some(Evidence::Linear {
                gcd: b(2),
                rhs: b(-1)
            })
        );
        let c = solve(&eq([0, 0, 0, 4, 6, 2]));
        assert!(c.is_solvable());
        assert!(c.equation.is_solution(c.witness.as_ref().unwrap()));
    }

    #[test]
    fn modular_obstruction_examples() {
        assert!(modular_obstruction(&eq([4, -33, 66, 0, 0, 1]), &b(3)).is_some());
        assert!(modular_obstruction(&eq([7, -85, 255, 0, 0, 1]), &b(5)).is_some());
        assert!(modular_obstruction(&eq([1, 0, -2, 0, 0, 1]), &b(8)).is_none());
    }

    #[test]
    fn pell_fundamental_checks() {
        assert_eq!(pell_fundamental(&b(2)).unwrap(), (b(3), b(2)));
        assert_eq!(pell_fundamental(&b(5)).unwrap(), (b(9), b(4)));
        assert!(pell_fundamental(&b(49)).is_err());
        assert!(pell_fundamental(&b(0)).is_err());
    }

    #[test]
    fn isotropy() {
        let l = IntegerLattice::from_i64(&[[8, -33], [-33, 132]]).unwrap();
        assert!(!exists_isotropic(&l).unwrap().isotropic);
        let l = IntegerLattice::from_i64(&[[6, -2], [-2, -24]]).unwrap();
        assert!(!exists_isotropic(&l).unwrap().isotropic);
        let h = IntegerLattice::from_i64(&[[0, 1], [1, 0]]).unwrap();
        let c = exists_isotropic(&h).unwrap();
        assert_eq!(c.witness, Some([b(1), b(0)]));
        let l = IntegerLattice::from_i64(&[[2, 1], [1, -4]]).unwrap();
        let c = exists_isotropic(&l).unwrap();
        assert!(c.isotropic);
    }

    #[test]
    fn represents_examples() {
        let l = IntegerLattice::from_i64(&[[8, -33], [-33, 132]]).unwrap();
        assert_eq!(represents(&l, &b(-2)).unwrap().status, Status::Unsolvable);
        let h = IntegerLattice::from_i64(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(represents(&h, &b(0)).unwrap().witness, Some([b(1), b(0)]));
        let l = IntegerLattice::from_i64(&[[2, 0], [0, -2]]).unwrap();
        assert_eq!(represents(&l, &b(-2)).unwrap().witness, Some([b(0), b(1)]));
    }

    #[test]
    fn display_equation() {
        assert_eq!(eq([4, -33, 66, 0, 0, 1]).to_string(), "4x^2 - 33xy + 66y^2 + 1 = 0");
        assert_eq!(eq([0, 0, 0, 0, 0, 0]).to_string(), "0 = 0");
    }
}
