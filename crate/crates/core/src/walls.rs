//! Wall candidates for a Mukai vector on a Picard-rank-one K3 surface, their
//! classification through rank-two hyperbolic lattices, and the all-fake
//! verdict.
//!
//! A candidate is a pair `(m, k)` realised by a class `a` with `a^2 = m` and
//! `⟨v, a⟩ = k` in the bounds `-2 <= m < v^2/4`, `0 <= k <= v^2/2`. Each pair is
//! decided exactly: the classes with `⟨v, a⟩ = k` form a translate of `v^⊥`,
//! and `a^2 = m` becomes an inhomogeneous binary quadratic equation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, exact_sqrt};
use crate::diophantine::{
    self, exists_isotropic, IsotropyCertificate, QuadraticDiophantine, SolvabilityCertificate,
    SolverConfig, Status,
};
use crate::error::{invalid, Error, Result};
use crate::lattice::{orthogonal_complement, saturate, span, IntegerLattice, MukaiVector, Sublattice};
use crate::matrix::Matrix;

/// How many fundamental-solution witnesses per pair are classified.
pub const MAX_WITNESSES: usize = 8;

/// How the pair `(m, k)` was decided.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairDecision {
    /// `⟨v, a⟩` is always a multiple of `gcd`, which does not divide `k`.
    Divisibility {
        #[serde(with = "crate::report::bigint_str")]
        gcd: BigInt,
    },
    /// `a = a0 + x b1 + y b2` turns `a^2 = m` into `equation` (halved).
    Equation {
        #[serde(with = "crate::report::bigint_arr3")]
        a0: [BigInt; 3],
        certificate: SolvabilityCertificate,
    },
    /// `k = m = 0`: nonzero isotropic vectors of `v^⊥`.
    Isotropy { certificate: IsotropyCertificate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    #[serde(with = "crate::report::bigint_str")]
    pub m: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub k: BigInt,
    pub solvable: bool,
    pub decision: PairDecision,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallCandidate {
    #[serde(with = "crate::report::bigint_str")]
    pub m: BigInt,
    #[serde(with = "crate::report::bigint_str")]
    pub k: BigInt,
    /// canonical witness (the first of `witnesses`)
    pub witness: Option<MukaiVector>,
    /// witnesses from the fundamental solutions, in canonical order
    pub witnesses: Vec<MukaiVector>,
    /// saturation of `⟨v, witness⟩`
    pub saturated_h: Option<Sublattice>,
    /// `v^2 m - k^2 < 0`
    pub hyperbolic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WallKind {
    BrillNoether,
    HilbertChow,
    LiGiesekerUhlenbeck,
    Flopping,
    Fake,
}

impl WallKind {
    pub fn is_divisorial(self) -> bool {
        matches!(
            self,
            WallKind::BrillNoether | WallKind::HilbertChow | WallKind::LiGiesekerUhlenbeck
        )
    }
}

impl fmt::Display for WallKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WallKind::BrillNoether => "Brill-Noether",
            WallKind::HilbertChow => "Hilbert-Chow",
            WallKind::LiGiesekerUhlenbeck => "Li-Gieseker-Uhlenbeck",
            WallKind::Flopping => "flopping",
            WallKind::Fake => "fake",
        };
        f.write_str(s)
    }
}

/// The class `a` (and `b = v - a` for a flopping decomposition) behind a kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallClass {
    pub kind: WallKind,
    pub a: Option<MukaiVector>,
    pub b: Option<MukaiVector>,
}

/// Ordering for witnesses: small coordinates first, then non-negative signs.
fn mukai_key(v: &MukaiVector) -> (BigInt, BigInt, BigInt, BigInt, bool, bool, bool) {
    let [r, t, s] = v.coords();
    (
        r.abs() + t.abs() + s.abs(),
        r.abs(),
        t.abs(),
        s.abs(),
        r.is_negative(),
        t.is_negative(),
        s.is_negative(),
    )
}

fn check_vector(v: &MukaiVector) -> Result<()> {
    if !v.is_primitive() {
        return invalid(format!("{v} is not primitive"));
    }
    if !v.square().is_positive() {
        return invalid(format!("{v} has square {} <= 0", v.square()));
    }
    Ok(())
}

/// Particular solution of `c · a = k` over the integers, if any.
fn particular_solution(c: &[BigInt; 3], k: &BigInt) -> Option<[BigInt; 3]> {
    let (g01, u0, u1) = arith::ext_gcd(&c[0], &c[1]);
    let (g, w, z) = arith::ext_gcd(&g01, &c[2]);
    if g.is_zero() || !(k % &g).is_zero() {
        return None;
    }
    let q = k / &g;
    Some([&w * &u0 * &q, &w * &u1 * &q, z * q])
}

struct PairSetup {
    functional: [BigInt; 3],
    gcd: BigInt,
    perp: Sublattice,
    perp_lattice: IntegerLattice,
}

impl PairSetup {
    fn new(v: &MukaiVector) -> Result<Self> {
        let [r, t, s] = v.coords();
        let functional = [-s, BigInt::from(2) * &v.d * t, -r];
        let gcd = arith::gcd_all(functional.iter());
        let perp = orthogonal_complement(v)?;
        let perp_lattice = perp.lattice()?;
        Ok(PairSetup {
            functional,
            gcd,
            perp,
            perp_lattice,
        })
    }

    fn decide(
        &self,
        v: &MukaiVector,
        m: &BigInt,
        k: &BigInt,
        cfg: &SolverConfig,
    ) -> Result<(PairReport, Vec<MukaiVector>)> {
        let report = |solvable, decision| PairReport {
            m: m.clone(),
            k: k.clone(),
            solvable,
            decision,
        };
        let Some(a0) = particular_solution(&self.functional, k) else {
            return Ok((
                report(false, PairDecision::Divisibility { gcd: self.gcd.clone() }),
                Vec::new(),
            ));
        };
        let ambient = self.perp.ambient();
        let b1 = self.perp.basis().row(0).to_vec();
        let b2 = self.perp.basis().row(1).to_vec();
        let point = |x: &BigInt, y: &BigInt| -> Result<MukaiVector> {
            let c: Vec<BigInt> = (0..3).map(|i| &a0[i] + x * &b1[i] + y * &b2[i]).collect();
            MukaiVector::from_coords(&c, &v.d)
        };
        if k.is_zero() && m.is_zero() {
            let iso = exists_isotropic(&self.perp_lattice)?;
            let mut wit = Vec::new();
            if let Some([x, y]) = &iso.witness {
                let a = point(x, y)?;
                let neg = point(&-x, &-y)?;
                wit.push(a);
                wit.push(neg);
            }
            wit.sort_by_key(mukai_key);
            return Ok((
                report(iso.isotropic, PairDecision::Isotropy { certificate: iso }),
                wit,
            ));
        }
        let g = ambient.gram();
        let two = BigInt::from(2);
        let equation = QuadraticDiophantine::new(
            g.bilinear(&b1, &b1),
            &two * g.bilinear(&b1, &b2),
            g.bilinear(&b2, &b2),
            &two * g.bilinear(&a0, &b1),
            &two * g.bilinear(&a0, &b2),
            g.bilinear(&a0, &a0) - m,
        );
        // The lattice is even, so every coefficient is even.
        let equation = halve(&equation);
        let cert = diophantine::solve_with(&equation, cfg);
        let mut wit = Vec::new();
        if cert.status == Status::Solvable {
            for class in &cert.fundamental_solutions {
                let [x, y] = &class.representative;
                wit.push(point(x, y)?);
            }
        }
        wit.sort_by_key(mukai_key);
        wit.dedup();
        wit.truncate(MAX_WITNESSES);
        for w in &wit {
            if w.square() != *m || &w.pair(v)? != k {
                return Err(Error::Invariant(format!("witness {w} fails for (m, k) = ({m}, {k})")));
            }
        }
        Ok((
            report(
                cert.is_solvable(),
                PairDecision::Equation {
                    a0: a0.clone(),
                    certificate: cert,
                },
            ),
            wit,
        ))
    }
}

fn halve(eq: &QuadraticDiophantine) -> QuadraticDiophantine {
    let two = BigInt::from(2);
    if eq.coefficients().iter().all(|c| c.is_even()) {
        let [a, b, c, d, e, f] = eq.coefficients().map(|c| c / &two);
        QuadraticDiophantine::new(a, b, c, d, e, f)
    } else {
        eq.clone()
    }
}

/// Decides a single pair `(m, k)` from scratch.
pub fn decide_pair(v: &MukaiVector, m: &BigInt, k: &BigInt, cfg: &SolverConfig) -> Result<PairReport> {
    check_vector(v)?;
    Ok(PairSetup::new(v)?.decide(v, m, k, cfg)?.0)
}

/// The functional `⟨v, ·⟩` in Mukai coordinates.
pub fn pairing_functional(v: &MukaiVector) -> [BigInt; 3] {
    let [r, t, s] = v.coords();
    [-s, BigInt::from(2) * &v.d * t, -r]
}

/// All pairs `(m, k)` in the bounds, increasing in `m` then `k`.
pub fn pair_range(v: &MukaiVector) -> Vec<(BigInt, BigInt)> {
    let sq = v.square();
    let mut out = Vec::new();
    let mut m = BigInt::from(-2);
    while BigInt::from(4) * &m < sq {
        let mut k = BigInt::zero();
        while BigInt::from(2) * &k <= sq {
            out.push((m.clone(), k.clone()));
            k += 1;
        }
        m += 2;
    }
    out
}

/// Decides every pair and returns the reports together with the candidates.
pub fn examine_pairs(v: &MukaiVector) -> Result<(Vec<PairReport>, Vec<WallCandidate>)> {
    examine_pairs_with(v, &SolverConfig::default())
}

pub fn examine_pairs_with(
    v: &MukaiVector,
    cfg: &SolverConfig,
) -> Result<(Vec<PairReport>, Vec<WallCandidate>)> {
    check_vector(v)?;
    let setup = PairSetup::new(v)?;
    let sq = v.square();
    let decided: Vec<Result<(PairReport, Vec<MukaiVector>)>> = pair_range(v)
        .par_iter()
        .map(|(m, k)| setup.decide(v, m, k, cfg))
        .collect();
    let mut reports = Vec::new();
    let mut candidates = Vec::new();
    for item in decided {
        let (report, witnesses) = item?;
        if report.solvable {
            let witness = witnesses.first().cloned();
            let saturated_h = match &witness {
                Some(w) => Some(saturate(&span(&[v.clone(), w.clone()])?)),
                None => None,
            };
            candidates.push(WallCandidate {
                m: report.m.clone(),
                k: report.k.clone(),
                hyperbolic: &sq * &report.m - &report.k * &report.k < BigInt::zero(),
                witness,
                witnesses,
                saturated_h,
            });
        }
        reports.push(report);
    }
    Ok((reports, candidates))
}

/// Solvable pairs `(m, k)`, sorted, each with a canonical witness.
pub fn enumerate_candidates(v: &MukaiVector) -> Result<Vec<WallCandidate>> {
    Ok(examine_pairs(v)?.1)
}

/// Classes of `H` with `a^2 = m` and `⟨a, v⟩ = k`, as coordinates in the
/// basis of `H` (at most two, since the fiber is a line meeting a conic).
fn classes_on_line(
    gram: &Matrix,
    vh: &[BigInt],
    m: &BigInt,
    k: &BigInt,
) -> Vec<[BigInt; 2]> {
    let f0 = &gram[(0, 0)] * &vh[0] + &gram[(0, 1)] * &vh[1];
    let f1 = &gram[(1, 0)] * &vh[0] + &gram[(1, 1)] * &vh[1];
    let (g, u, w) = arith::ext_gcd(&f0, &f1);
    if !(k % &g).is_zero() {
        return Vec::new();
    }
    let q = k / &g;
    let a0 = [u * &q, w * &q];
    let dir = [-(&f1 / &g), &f0 / &g];
    let ww = gram.bilinear(&dir, &dir);
    let aw = gram.bilinear(&a0, &dir);
    let aa = gram.bilinear(&a0, &a0);
    // ww t^2 + 2 aw t + (aa - m) = 0
    let disc = &aw * &aw - &ww * (&aa - m);
    let Some(root) = exact_sqrt(&disc) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for num in [-&aw + &root, -&aw - &root] {
        if (&num % &ww).is_zero() {
            let t = num / &ww;
            let p = [&a0[0] + &t * &dir[0], &a0[1] + &t * &dir[1]];
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// A class with `a^2 >= lower` on the line `⟨a, v⟩ = k`, if any. The square
/// is concave along the line, so only the integers next to the vertex matter.
fn class_above(gram: &Matrix, vh: &[BigInt], k: &BigInt, lower: &BigInt) -> Option<[BigInt; 2]> {
    let f0 = &gram[(0, 0)] * &vh[0] + &gram[(0, 1)] * &vh[1];
    let f1 = &gram[(1, 0)] * &vh[0] + &gram[(1, 1)] * &vh[1];
    let (g, u, w) = arith::ext_gcd(&f0, &f1);
    if !(k % &g).is_zero() {
        return None;
    }
    let q = k / &g;
    let a0 = [u * &q, w * &q];
    let dir = [-(&f1 / &g), &f0 / &g];
    let ww = gram.bilinear(&dir, &dir);
    let aw = gram.bilinear(&a0, &dir);
    // maximum of ww t^2 + 2 aw t + aa at t = -aw / ww
    let t0 = arith::div_floor(&-&aw, &ww);
    for t in [t0.clone(), t0 + 1] {
        let p = [&a0[0] + &t * &dir[0], &a0[1] + &t * &dir[1]];
        if &gram.bilinear(&p, &p) >= lower {
            return Some(p);
        }
    }
    None
}

/// Classifies the wall attached to a rank-2 hyperbolic lattice `H ∋ v`.
/// Divisorial kinds take precedence (Brill-Noether, Hilbert-Chow,
/// Li-Gieseker-Uhlenbeck), then flopping, else fake.
pub fn classify(h: &Sublattice, v: &MukaiVector) -> Result<WallClass> {
    if h.rank() != 2 || !h.gram().determinant().is_negative() {
        return invalid("H must be a rank-2 hyperbolic lattice");
    }
    let sq = v.square();
    if !sq.is_positive() {
        return invalid("v must have positive square");
    }
    let Some(vh) = h.coordinates_of(&v.coords()) else {
        return invalid(format!("{v} does not lie in H"));
    };
    let gram = h.gram();
    let to_mukai = |p: &[BigInt; 2]| -> Result<MukaiVector> {
        let b = h.basis();
        let c: Vec<BigInt> = (0..3).map(|i| &p[0] * &b[(0, i)] + &p[1] * &b[(1, i)]).collect();
        MukaiVector::from_coords(&c, &v.d)
    };
    let pick = |mut cs: Vec<[BigInt; 2]>| -> Result<Option<MukaiVector>> {
        let mut vs = cs.drain(..).map(|p| to_mukai(&p)).collect::<Result<Vec<_>>>()?;
        vs.sort_by_key(mukai_key);
        Ok(vs.into_iter().next())
    };
    let found = |kind, a| WallClass { kind, a, b: None };
    let divisorial = [
        (WallKind::BrillNoether, -2, 0),
        (WallKind::HilbertChow, 0, 1),
        (WallKind::LiGiesekerUhlenbeck, 0, 2),
    ];
    for (kind, m, k) in divisorial {
        let cs = classes_on_line(gram, &vh, &BigInt::from(m), &BigInt::from(k));
        if let Some(a) = pick(cs)? {
            return Ok(found(kind, Some(a)));
        }
    }
    let minus_two = BigInt::from(-2);
    let mut k = BigInt::one();
    while BigInt::from(2) * &k <= sq {
        let cs = classes_on_line(gram, &vh, &minus_two, &k);
        if let Some(a) = pick(cs)? {
            return Ok(found(WallKind::Flopping, Some(a)));
        }
        k += 1;
    }
    // v = a + b with a^2, b^2 >= 0 and both pairing positively with v;
    // b^2 = v^2 - 2k + a^2.
    let mut k = BigInt::one();
    while k < sq {
        let lower = (BigInt::from(2) * &k - &sq).max(BigInt::zero());
        if let Some(p) = class_above(gram, &vh, &k, &lower) {
            let a = to_mukai(&p)?;
            let b = MukaiVector::new(&v.r - &a.r, &v.t - &a.t, &v.s - &a.s, v.d.clone())?;
            return Ok(WallClass {
                kind: WallKind::Flopping,
                a: Some(a),
                b: Some(b),
            });
        }
        k += 1;
    }
    Ok(found(WallKind::Fake, None))
}

/// The kind a single class `a` with `a^2 = m`, `⟨a, v⟩ = k` witnesses on its own.
pub fn witness_kind(m: &BigInt, k: &BigInt, v_squared: &BigInt) -> Option<WallKind> {
    let m = arith::small(m)?;
    let k2 = BigInt::from(2) * k;
    match (m, arith::small(k)) {
        (-2, Some(0)) => Some(WallKind::BrillNoether),
        (0, Some(1)) => Some(WallKind::HilbertChow),
        (0, Some(2)) => Some(WallKind::LiGiesekerUhlenbeck),
        (-2, _) if k.is_positive() && &k2 <= v_squared => Some(WallKind::Flopping),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    /// no candidate pair is solvable
    Strict,
    /// candidates exist, and every classified wall is fake
    Classified,
    /// some wall is not fake
    Negative,
    /// a candidate spans a non-hyperbolic lattice and could not be classified
    Inconclusive,
}

impl Strength {
    pub fn is_positive(self) -> bool {
        matches!(self, Strength::Strict | Strength::Classified)
    }
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Strength::Strict => "STRICT",
            Strength::Classified => "CLASSIFIED",
            Strength::Negative => "NEGATIVE",
            Strength::Inconclusive => "INCONCLUSIVE",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedCandidate {
    pub candidate: WallCandidate,
    /// the kind the witness class itself exhibits, if any
    pub witness_kind: Option<WallKind>,
    /// one entry per classified witness, in the order of `candidate.witnesses`
    pub classes: Vec<WallClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallVerdict {
    pub v: MukaiVector,
    #[serde(with = "crate::report::bigint_str")]
    pub v_squared: BigInt,
    /// dimension `v^2 + 2` of the moduli space
    #[serde(with = "crate::report::bigint_str")]
    pub dim: BigInt,
    pub strength: Strength,
    pub pairs: Vec<PairReport>,
    pub candidates: Vec<ClassifiedCandidate>,
    pub statement: String,
}

impl WallVerdict {
    /// Non-fake walls found, as `(m, k, class)`.
    pub fn non_fake(&self) -> Vec<(&BigInt, &BigInt, &WallClass)> {
        self.candidates
            .iter()
            .flat_map(|c| {
                c.classes
                    .iter()
                    .filter(|w| w.kind != WallKind::Fake)
                    .map(move |w| (&c.candidate.m, &c.candidate.k, w))
            })
            .collect()
    }
}

pub fn all_walls_fake(v: &MukaiVector) -> Result<WallVerdict> {
    all_walls_fake_with(v, &SolverConfig::default())
}

pub fn all_walls_fake_with(v: &MukaiVector, cfg: &SolverConfig) -> Result<WallVerdict> {
    let (pairs, candidates) = examine_pairs_with(v, cfg)?;
    let sq = v.square();
    let dim = &sq + 2;
    let mut classified = Vec::new();
    let mut anomaly = false;
    for cand in candidates {
        let mut classes = Vec::new();
        if cand.hyperbolic {
            for w in &cand.witnesses {
                let h = saturate(&span(&[v.clone(), w.clone()])?);
                classes.push(classify(&h, v)?);
            }
        } else {
            anomaly = true;
        }
        classified.push(ClassifiedCandidate {
            witness_kind: witness_kind(&cand.m, &cand.k, &sq),
            candidate: cand,
            classes,
        });
    }
    let any_real = classified
        .iter()
        .any(|c| c.classes.iter().any(|w| w.kind != WallKind::Fake));
    let strength = if classified.is_empty() {
        Strength::Strict
    } else if any_real {
        Strength::Negative
    } else if anomaly {
        Strength::Inconclusive
    } else {
        Strength::Classified
    };
    let statement = match strength {
        Strength::Strict | Strength::Classified => format!(
            "all walls for v = {v} are fake; an automorphism of positive topological entropy exists on the {dim}-dimensional moduli space M_sigma(v)"
        ),
        Strength::Negative => {
            let kinds: Vec<String> = classified
                .iter()
                .flat_map(|c| {
                    c.classes.iter().filter(|w| w.kind != WallKind::Fake).map(move |w| {
                        format!("{} wall at (m, k) = ({}, {})", w.kind, c.candidate.m, c.candidate.k)
                    })
                })
                .collect();
            let mut kinds = kinds;
            kinds.dedup();
            format!("not all walls are fake: {}", kinds.join("; "))
        }
        Strength::Inconclusive => {
            "some candidate spans a non-hyperbolic lattice with v; no verdict".to_string()
        }
    };
    Ok(WallVerdict {
        v: v.clone(),
        v_squared: sq,
        dim,
        strength,
        pairs,
        candidates: classified,
        statement,
    })
}

/// Whether the boundary rays of the positive cone of a rank-2 lattice of
/// signature (1,1) are rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rationality {
    pub rational: bool,
    pub certificate: IsotropyCertificate,
}

pub fn nef_boundary_rationality(n: &IntegerLattice) -> Result<Rationality> {
    if n.rank() != 2 || n.signature() != (1, 1) {
        return invalid("expected a rank-2 lattice of signature (1,1)");
    }
    let certificate = exists_isotropic(n)?;
    Ok(Rationality {
        rational: certificate.isotropic,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn mv(r: i64, t: i64, s: i64, d: i64) -> MukaiVector {
        MukaiVector::from_i64(r, t, s, d).unwrap()
    }

    #[test]
    fn six_dimensional_example_is_strict() {
        let v = mv(4, 1, 16, 66);
        assert!(enumerate_candidates(&v).unwrap().is_empty());
        let verdict = all_walls_fake(&v).unwrap();
        assert_eq!(verdict.strength, Strength::Strict);
        assert_eq!(verdict.dim, b(6));
        // the (−2, 0) pair is the halved equation 4x^2 − 33xy + 66y^2 + 1 = 0
        let p = &verdict.pairs[0];
        match &p.decision {
            PairDecision::Equation { certificate, .. } => {
                assert_eq!(certificate.equation, QuadraticDiophantine::from_i64([4, -33, 66, 0, 0, 1]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn counter_example_has_divisorial_walls() {
        let v = mv(1, 0, -1, 2);
        let cands = enumerate_candidates(&v).unwrap();
        let bn = cands.iter().find(|c| c.m == b(-2) && c.k == b(0)).unwrap();
        assert_eq!(bn.witness, Some(mv(1, 0, 1, 2)));
        let hc = cands.iter().find(|c| c.m == b(0) && c.k == b(1)).unwrap();
        assert_eq!(hc.witness, Some(mv(0, 0, -1, 2)));
        let h = bn.saturated_h.as_ref().unwrap();
        assert_eq!(classify(h, &v).unwrap().kind, WallKind::BrillNoether);
        // The saturation of ⟨v, (0,0,-1)⟩ is {(r, 0, s)}, which also holds the
        // (−2)-class (1,0,1) orthogonal to v, so precedence reports Brill-Noether.
        let h = hc.saturated_h.as_ref().unwrap();
        assert_eq!(classify(h, &v).unwrap().kind, WallKind::BrillNoether);
        let verdict = all_walls_fake(&v).unwrap();
        assert_eq!(verdict.strength, Strength::Negative);
        let kinds: Vec<_> = verdict.candidates.iter().map(|c| c.witness_kind).collect();
        assert!(kinds.contains(&Some(WallKind::BrillNoether)));
        assert!(kinds.contains(&Some(WallKind::HilbertChow)));
    }

    #[test]
    fn invalid_vectors() {
        assert!(enumerate_candidates(&mv(2, 0, 2, 1)).is_err());
        assert!(enumerate_candidates(&mv(1, 0, 1, 1)).is_err());
    }

    #[test]
    fn rationality_examples() {
        let l = IntegerLattice::from_i64(&[[6, -2], [-2, -24]]).unwrap();
        assert!(!nef_boundary_rationality(&l).unwrap().rational);
        let l = IntegerLattice::from_i64(&[[0, 1], [1, 0]]).unwrap();
        assert!(nef_boundary_rationality(&l).unwrap().rational);
        let l = IntegerLattice::from_i64(&[[8, -33], [-33, 132]]).unwrap();
        assert!(!nef_boundary_rationality(&l).unwrap().rational);
        let l = IntegerLattice::from_i64(&[[2, 0], [0, 2]]).unwrap();
        assert!(nef_boundary_rationality(&l).is_err());
    }

    #[test]
    fn line_solver_finds_classes() {
        let gram = Matrix::from_i64(&[[10, 3], [3, -2]]);
        let vh = [b(1), b(0)];
        // a = (x, y): ⟨a, v⟩ = 10x + 3y, a^2 = 10x^2 + 6xy − 2y^2
        let cs = classes_on_line(&gram, &vh, &b(-2), &b(3));
        assert!(cs.contains(&[b(0), b(1)]));
    }
}
