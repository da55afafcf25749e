//! JSON reports and their independent re-verification.
//!
//! A [`Report`] carries the verdict of one command together with the
//! certificates it rests on. [`verify`] replays every certificate with exact
//! arithmetic, independently of the code path that produced it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith;
use crate::cubic;
use crate::diophantine::{self, Evidence, SolvabilityCertificate, SolverConfig, Status};
use crate::diophantine::IsotropyCertificate;
use crate::entropy::{self, IntegerIsometry};
use crate::error::{Error, Result};
use crate::lattice::{orthogonal_complement, MukaiVector, Sublattice};
use crate::matrix::Matrix;
use crate::poly;
use crate::walls::{self, PairDecision, PairReport, WallClass, WallKind};

/// Version of the program that wrote a report.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Version of the JSON layout below.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// parameters as given, after validation
    pub inputs: BTreeMap<String, Value>,
    pub verdict: Value,
    pub certificates: Vec<Certificate>,
    /// the mathematical statements this report supports
    pub claims: Vec<String>,
    pub version: String,
    pub schema: String,
}

impl Report {
    pub fn new(command: &str, inputs: BTreeMap<String, Value>, verdict: Value) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            verdict,
            certificates: Vec::new(),
            claims: Vec::new(),
            version: ARTIFACT_VERSION.to_string(),
            schema: SCHEMA_VERSION.to_string(),
        }
    }

    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&sorted(value)).expect("values serialize")
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad report: {e}")))
    }
}

/// `serde_json` maps are ordered already; this makes the order explicit
/// should the `preserve_order` feature ever be switched on.
fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let tree: BTreeMap<String, Value> =
                map.into_iter().map(|(k, v)| (k, sorted(v))).collect();
            Value::Object(tree.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// A checkable piece of evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Certificate {
    Quadratic {
        label: String,
        certificate: SolvabilityCertificate,
    },
    /// decision of one wall pair `(m, k)` for `v`
    WallPair { v: MukaiVector, pair: PairReport },
    /// classification of the wall attached to `h ∋ v`
    WallClass {
        v: MukaiVector,
        h: Sublattice,
        class: WallClass,
    },
    Isotropy {
        label: String,
        gram: Matrix,
        certificate: IsotropyCertificate,
    },
    /// `matrix` preserves `gram`
    Isometry {
        label: String,
        matrix: Matrix,
        gram: Matrix,
    },
    /// `matrix · v = v`
    FixedVector { matrix: Matrix, v: MukaiVector },
    /// the largest absolute value of a root of `charpoly` lies in `[lo, hi]`
    SpectralRadius {
        #[serde(with = "bigint_vec")]
        charpoly: Vec<BigInt>,
        lo: String,
        hi: String,
    },
    /// the factorization behind the cubic fourfold condition (**)
    Star2 {
        #[serde(with = "bigint_str")]
        d: BigInt,
        holds: bool,
    },
    /// `ns_gram` is minus the Gram matrix of the kernel of the first row of `knum_gram`
    FanoLattice {
        #[serde(with = "bigint_str")]
        d: BigInt,
        knum_gram: Matrix,
        ns_basis: Matrix,
        ns_gram: Matrix,
    },
}

impl Certificate {
    pub fn spectral_radius(r: &entropy::SpectralRadius) -> Certificate {
        let (lo, hi) = r.interval.decimal(20);
        Certificate::SpectralRadius {
            charpoly: r.charpoly.clone(),
            lo,
            hi,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Certificate::Quadratic { label, .. } => format!("quadratic: {label}"),
            Certificate::WallPair { pair, .. } => format!("wall pair ({}, {})", pair.m, pair.k),
            Certificate::WallClass { class, .. } => format!("wall class {}", class.kind),
            Certificate::Isotropy { label, .. } => format!("isotropy: {label}"),
            Certificate::Isometry { label, .. } => format!("isometry: {label}"),
            Certificate::FixedVector { v, .. } => format!("fixed vector {v}"),
            Certificate::SpectralRadius { .. } => "spectral radius".to_string(),
            Certificate::Star2 { d, .. } => format!("condition (**) at d = {d}"),
            Certificate::FanoLattice { d, .. } => format!("Fano lattice at d = {d}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Replays every certificate of the report.
pub fn verify(report: &Report) -> VerifyOutcome {
    let mut out = VerifyOutcome::default();
    for (i, cert) in report.certificates.iter().enumerate() {
        out.checked += 1;
        if let Err(why) = verify_certificate(cert) {
            out.failures.push(format!("#{i} {}: {why}", cert.name()));
        }
    }
    out
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn lift(e: Error) -> String {
    e.to_string()
}

pub fn verify_certificate(cert: &Certificate) -> Check {
    match cert {
        Certificate::Quadratic { certificate, .. } => verify_solvability(certificate),
        Certificate::WallPair { v, pair } => verify_pair(v, pair),
        Certificate::WallClass { v, h, class } => verify_wall_class(v, h, class),
        Certificate::Isotropy {
            gram, certificate, ..
        } => verify_isotropy(gram, certificate),
        Certificate::Isometry { matrix, gram, .. } => {
            IntegerIsometry::new(matrix.clone(), gram.clone()).map(|_| ()).map_err(lift)
        }
        Certificate::FixedVector { matrix, v } => {
            let image = matrix.mul_vec(&v.coords()).map_err(lift)?;
            ensure(image == v.coords(), || format!("image is {image:?}"))
        }
        Certificate::SpectralRadius { charpoly, lo, hi } => verify_radius(charpoly, lo, hi),
        Certificate::Star2 { d, holds } => {
            let again = cubic::check_star2(d).map_err(lift)?;
            ensure(again.holds == *holds, || "recomputation disagrees".to_string())
        }
        Certificate::FanoLattice {
            d,
            knum_gram,
            ns_basis,
            ns_gram,
        } => verify_fano_lattice(d, knum_gram, ns_basis, ns_gram),
    }
}

/// Checks a solvability certificate: witnesses by substitution, modular and
/// linear obstructions directly, anything else by deciding the equation again.
pub fn verify_solvability(cert: &SolvabilityCertificate) -> Check {
    let eq = &cert.equation;
    match cert.status {
        Status::AllPairs => ensure(eq.coefficients().iter().all(|c| c.is_zero()), || {
            "equation is not identically zero".to_string()
        }),
        Status::Solvable => {
            let w = cert.witness.as_ref().ok_or("solvable without a witness")?;
            ensure(eq.is_solution(w), || format!("witness ({}, {}) fails", w[0], w[1]))?;
            for class in &cert.fundamental_solutions {
                let p = &class.representative;
                for step in [0, 1, -1] {
                    let q = class.generator.advance(p, step);
                    ensure(eq.is_solution(&q), || {
                        format!("class of ({}, {}) fails at step {step}", p[0], p[1])
                    })?;
                }
            }
            Ok(())
        }
        Status::Unsolvable => {
            ensure(cert.witness.is_none(), || "unsolvable with a witness".to_string())?;
            match &cert.obstruction {
                None => Err("unsolvable without evidence".to_string()),
                Some(Evidence::Modular { modulus }) => ensure(
                    diophantine::modular_obstruction(&eq.primitive_part(), modulus).is_some(),
                    || format!("the congruence is solvable modulo {modulus}"),
                ),
                Some(Evidence::Linear { gcd, rhs }) => {
                    let [a, b, c, d, e, f] = eq.coefficients();
                    ensure(a.is_zero() && b.is_zero() && c.is_zero(), || {
                        "equation is not linear".to_string()
                    })?;
                    ensure(&d.gcd(&e) == gcd && rhs == &-f, || {
                        "linear data do not match the equation".to_string()
                    })?;
                    let blocked = if gcd.is_zero() {
                        !rhs.is_zero()
                    } else {
                        !rhs.is_multiple_of(gcd)
                    };
                    ensure(blocked, || format!("{gcd} divides {rhs}"))
                }
                Some(_) => {
                    let again = diophantine::solve(eq);
                    ensure(again.status == Status::Unsolvable, || {
                        "re-solving finds a solution".to_string()
                    })
                }
            }
        }
    }
}

fn verify_isotropy(gram: &Matrix, cert: &IsotropyCertificate) -> Check {
    ensure(gram.rows() == 2 && gram.is_symmetric(), || "expected a symmetric 2x2 Gram".to_string())?;
    let minus_det = -gram.determinant();
    ensure(minus_det == cert.minus_det, || format!("-det is {minus_det}"))?;
    let square = arith::exact_sqrt(&minus_det).is_some();
    ensure(square == cert.isotropic, || "isotropy disagrees with -det".to_string())?;
    match (&cert.witness, cert.isotropic) {
        (Some(w), true) => ensure(
            !(w[0].is_zero() && w[1].is_zero()) && gram.bilinear(w, w).is_zero(),
            || "witness is not a nonzero isotropic vector".to_string(),
        ),
        (None, false) => Ok(()),
        _ => Err("witness does not match the verdict".to_string()),
    }
}

fn verify_pair(v: &MukaiVector, pair: &PairReport) -> Check {
    match &pair.decision {
        PairDecision::Divisibility { gcd } => {
            let f = walls::pairing_functional(v);
            let g = arith::gcd_all(f.iter());
            ensure(&g == gcd, || format!("gcd of <v, .> is {g}"))?;
            ensure(!pair.solvable && !pair.k.is_multiple_of(gcd), || {
                format!("{gcd} divides {}", pair.k)
            })
        }
        PairDecision::Equation { a0, certificate } => {
            let a = MukaiVector::from_coords(a0, &v.d).map_err(lift)?;
            ensure(a.pair(v).map_err(lift)? == pair.k, || "<a0, v> differs from k".to_string())?;
            ensure(certificate.is_solvable() == pair.solvable, || {
                "pair verdict differs from its certificate".to_string()
            })?;
            verify_solvability(certificate)?;
            let again = walls::decide_pair(v, &pair.m, &pair.k, &SolverConfig::default())
                .map_err(lift)?;
            match &again.decision {
                PairDecision::Equation { certificate: c, .. } => {
                    ensure(c.equation == certificate.equation, || {
                        "the derived equation differs".to_string()
                    })?;
                }
                _ => return Err("the pair is decided differently".to_string()),
            }
            ensure(again.solvable == pair.solvable, || "re-deciding disagrees".to_string())
        }
        PairDecision::Isotropy { certificate } => {
            ensure(pair.m.is_zero() && pair.k.is_zero(), || "isotropy for m, k != 0".to_string())?;
            let perp = orthogonal_complement(v).map_err(lift)?;
            verify_isotropy(perp.gram(), certificate)?;
            ensure(certificate.isotropic == pair.solvable, || "verdict mismatch".to_string())
        }
    }
}

fn verify_wall_class(v: &MukaiVector, h: &Sublattice, class: &WallClass) -> Check {
    let sq = v.square();
    ensure(h.contains(&v.coords()), || format!("{v} is not in H"))?;
    if let Some(a) = &class.a {
        ensure(h.contains(&a.coords()), || format!("{a} is not in H"))?;
        let (m, k) = (a.square(), a.pair(v).map_err(lift)?);
        let fits = match class.kind {
            WallKind::BrillNoether => m == BigInt::from(-2) && k.is_zero(),
            WallKind::HilbertChow => m.is_zero() && k == BigInt::from(1),
            WallKind::LiGiesekerUhlenbeck => m.is_zero() && k == BigInt::from(2),
            WallKind::Flopping => match &class.b {
                None => m == BigInt::from(-2) && k.is_positive() && BigInt::from(2) * &k <= sq,
                Some(b) => {
                    let sum: Vec<BigInt> =
                        a.coords().iter().zip(b.coords().iter()).map(|(x, y)| x + y).collect();
                    let kb = b.pair(v).map_err(lift)?;
                    sum == v.coords()
                        && !m.is_negative()
                        && !b.square().is_negative()
                        && k.is_positive()
                        && kb.is_positive()
                }
            },
            WallKind::Fake => false,
        };
        ensure(fits, || format!("{a} has (a^2, <a, v>) = ({m}, {k})"))?;
    } else {
        ensure(class.kind == WallKind::Fake, || "missing class".to_string())?;
    }
    let again = walls::classify(h, v).map_err(lift)?;
    ensure(again.kind == class.kind, || format!("re-classified as {}", again.kind))
}

fn verify_radius(charpoly: &[BigInt], lo: &str, hi: &str) -> Check {
    let (Some(lo), Some(hi)) = (poly::parse_decimal(lo), poly::parse_decimal(hi)) else {
        return Err("unparseable interval".to_string());
    };
    let again = entropy::radius_of_polynomial(charpoly).map_err(lift)?;
    ensure(lo <= again.interval.lo && again.interval.hi <= hi, || {
        format!("recomputed radius {} escapes the interval", again.interval)
    })
}

fn verify_fano_lattice(d: &BigInt, knum: &Matrix, basis: &Matrix, ns: &Matrix) -> Check {
    let again = cubic::knum_gram(d).map_err(lift)?;
    ensure(&again == knum, || "K_num Gram differs".to_string())?;
    ensure(knum.determinant().abs() == *d, || "|det| differs from d".to_string())?;
    for row in basis.row_vecs() {
        ensure(knum.bilinear(&[BigInt::from(1), BigInt::zero(), BigInt::zero()], &row).is_zero(), || {
            "basis vector pairs with the square class".to_string()
        })?;
    }
    let gram = basis.congruence(knum).map_err(lift)?;
    let minus: Vec<Vec<BigInt>> = gram.row_vecs().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    ensure(Matrix::from_rows(minus).map_err(lift)? == *ns, || "NS Gram differs".to_string())
}

/// One line describing why an equation has no solution.
pub fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::Modular { modulus } => format!("no solution modulo {modulus}"),
        Evidence::Linear { gcd, rhs } => {
            if gcd.is_zero() {
                format!("the equation reads 0 = {rhs}")
            } else {
                format!("gcd {gcd} of the linear coefficients does not divide {rhs}")
            }
        }
        Evidence::BoundedSearch { y_min, y_max } => {
            format!("no integral x for any y in [{y_min}, {y_max}]")
        }
        Evidence::ParabolicScan { modulus } => {
            format!("no admissible residue of 2Ax + By + D modulo {modulus}")
        }
        Evidence::Factorization { divisors_checked } => {
            format!("none of {divisors_checked} factorizations gives integers")
        }
        Evidence::Anisotropic => "the centre is not integral".to_string(),
        Evidence::ReductionCycle {
            discriminant,
            target,
            cycle_length,
            classes_examined,
            representation_classes,
            orbit_modulus,
            ..
        } => {
            if *representation_classes == 0 {
                format!(
                    "{target} is not represented: no form in the reduction cycle \
                     (length {cycle_length}, discriminant {discriminant}) matches any of \
                     {classes_examined} square-divisor classes"
                )
            } else {
                format!(
                    "the {representation_classes} representation classes of {target} \
                     (discriminant {discriminant}, cycle length {cycle_length}) all miss \
                     the required residues modulo {orbit_modulus}"
                )
            }
        }
    }
}

/// Serde adapters writing integers as decimal strings.
pub mod bigint_str {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

pub mod bigint_vec {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|n| n.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let text = Vec::<String>::deserialize(d)?;
        text.iter()
            .map(|t| t.parse().map_err(D::Error::custom))
            .collect()
    }
}

macro_rules! fixed_array {
    ($name:ident, $n:literal) => {
        pub mod $name {
            use num_bigint::BigInt;
            use serde::{de::Error, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(v: &[BigInt; $n], s: S) -> Result<S::Ok, S::Error> {
                super::bigint_vec::serialize(v, s)
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[BigInt; $n], D::Error> {
                let v = super::bigint_vec::deserialize(d)?;
                let len = v.len();
                v.try_into()
                    .map_err(|_| D::Error::custom(format!("expected {} integers, got {len}", $n)))
            }
        }
    };
}

fixed_array!(bigint_arr2, 2);
fixed_array!(bigint_arr3, 3);
fixed_array!(bigint_arr4, 4);

pub mod opt_bigint_arr2 {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::bigint_arr2")] [BigInt; 2]);

    pub fn serialize<S: Serializer>(v: &Option<[BigInt; 2]>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|a| Wrap(a.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<[BigInt; 2]>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

pub mod opt_bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::bigint_str")] BigInt);

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(|a| Wrap(a.clone())).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}
