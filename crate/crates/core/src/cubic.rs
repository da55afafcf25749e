//! Discriminant conditions for special cubic fourfolds, the lattices
//! `K_num(A_X)` and `NS(F(X))`, and the positive-entropy test for the Fano
//! variety of lines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith;
use crate::diophantine::{self, represents, IsotropyCertificate, QuadraticDiophantine, SolvabilityCertificate};
use crate::entropy::{fundamental_isometry, FundamentalIsometry};
use crate::error::{invalid, Result};
use crate::lattice::IntegerLattice;
use crate::matrix::Matrix;
use crate::walls::{nef_boundary_rationality, Rationality};

/// `d > 6` and `d ≡ 0, 2 (mod 6)`.
pub fn check_star(d: &BigInt) -> bool {
    let r = d.mod_floor(&BigInt::from(6));
    d > &BigInt::from(6) && (r.is_zero() || r == BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star2 {
    pub holds: bool,
    /// prime factorization of `d` as `(p, e)`
    #[serde(with = "factor_list")]
    pub factorization: Vec<(BigInt, u32)>,
    /// first offending factor, if any
    pub reason: Option<String>,
}

mod factor_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[(BigInt, u32)], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|(p, e)| (p.to_string(), *e)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<(BigInt, u32)>, D::Error> {
        use serde::de::Error;
        let raw = Vec::<(String, u32)>::deserialize(d)?;
        raw.into_iter()
            .map(|(p, e)| Ok((p.parse().map_err(D::Error::custom)?, e)))
            .collect()
    }
}

/// `d` is not divisible by 4, by 9, or by any odd prime `p ≡ 2 (mod 3)`.
pub fn check_star2(d: &BigInt) -> Result<Star2> {
    if !d.is_positive() {
        return invalid("d must be positive");
    }
    let factorization = arith::factorize(d);
    let mut reason = None;
    for (p, e) in &factorization {
        if p == &BigInt::from(2) && *e >= 2 {
            reason = Some("divisible by 4".to_string());
        } else if p == &BigInt::from(3) && *e >= 2 {
            reason = Some("divisible by 9".to_string());
        } else if p.is_odd() && p.mod_floor(&BigInt::from(3)) == BigInt::from(2) {
            reason = Some(format!("divisible by {p} ≡ 2 mod 3"));
        }
        if reason.is_some() {
            break;
        }
    }
    Ok(Star2 {
        holds: reason.is_none(),
        factorization,
        reason,
    })
}

/// `2n^2 + 2n + 2 - d a^2 = 0` in the variables `(x, y) = (n, a)`.
pub fn star3_equation(d: &BigInt) -> QuadraticDiophantine {
    QuadraticDiophantine::new(
        BigInt::from(2),
        BigInt::zero(),
        -d,
        BigInt::from(2),
        BigInt::zero(),
        BigInt::from(2),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star3 {
    pub solvable: bool,
    /// `(a, n)` with `a^2 d = 2n^2 + 2n + 2`
    #[serde(with = "crate::report::opt_bigint_arr2")]
    pub witness: Option<[BigInt; 2]>,
    pub certificate: SolvabilityCertificate,
}

/// Whether `a^2 d = 2n^2 + 2n + 2` has an integral solution.
pub fn check_star3(d: &BigInt) -> Result<Star3> {
    if !d.is_positive() {
        return invalid("d must be positive");
    }
    let certificate = diophantine::solve(&star3_equation(d));
    let witness = certificate.witness.as_ref().map(|[n, a]| [a.clone(), n.clone()]);
    Ok(Star3 {
        solvable: certificate.is_solvable(),
        witness,
        certificate,
    })
}

/// Gram matrix of `⟨λ₁, λ₂, τ⟩ ⊂ K_num(A_X)` under the Euler pairing.
pub fn knum_gram(d: &BigInt) -> Result<Matrix> {
    if !check_star(d) {
        return invalid(format!("d = {d} does not satisfy d > 6, d ≡ 0, 2 mod 6"));
    }
    let six = BigInt::from(6);
    let (k, r) = d.div_rem(&six);
    let link = if r.is_zero() { BigInt::zero() } else { BigInt::one() };
    let b = |n: i64| BigInt::from(n);
    let gram = Matrix::from_rows(vec![
        vec![b(-2), b(1), b(0)],
        vec![b(1), b(-2), link.clone()],
        vec![b(0), link, BigInt::from(2) * k],
    ])?;
    debug_assert_eq!(gram.determinant().abs(), *d);
    Ok(gram)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanoLattice {
    #[serde(with = "crate::report::bigint_str")]
    pub d: BigInt,
    pub knum_gram: Matrix,
    /// signed determinant of `knum_gram` (its absolute value is `d`)
    #[serde(with = "crate::report::bigint_str")]
    pub knum_det: BigInt,
    /// basis of `λ₁^⊥` in the coordinates `(λ₁, λ₂, τ)`
    pub ns_basis: Matrix,
    pub ns_gram: Matrix,
}

/// `NS(F(X))`: the orthogonal complement of `λ₁` with the Euler form negated.
pub fn fano_ns_gram(d: &BigInt) -> Result<FanoLattice> {
    let knum = knum_gram(d)?;
    let functional = Matrix::from_rows(vec![knum.row(0).to_vec()])?;
    let basis = functional.integer_kernel();
    let restricted = basis.congruence(&knum)?;
    let mut ns = restricted.clone();
    for i in 0..ns.rows() {
        for j in 0..ns.cols() {
            ns[(i, j)] = -&restricted[(i, j)];
        }
    }
    Ok(FanoLattice {
        d: d.clone(),
        knum_det: knum.determinant(),
        knum_gram: knum,
        ns_basis: basis,
        ns_gram: ns,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanoVerdict {
    #[serde(with = "crate::report::bigint_str")]
    pub d: BigInt,
    pub star: bool,
    pub star2: Star2,
    pub star3: Star3,
    pub lattice: FanoLattice,
    pub isotropy: IsotropyCertificate,
    pub rationality: Rationality,
    /// `6x^2 - 4xy - 24y^2 = -2` at `d = 74`: is `-2` represented by `NS`?
    pub minus_two: SolvabilityCertificate,
    pub fundamental: Option<FundamentalIsometry>,
    pub positive: bool,
    /// only `d = 74` is covered by a proof; other values are exploratory
    pub exploratory: bool,
    pub assumption: String,
    pub statement: String,
}

pub fn fano_positive_entropy(d: &BigInt) -> Result<FanoVerdict> {
    let star = check_star(d);
    let lattice = fano_ns_gram(d)?;
    let star2 = check_star2(d)?;
    let star3 = check_star3(d)?;
    let ns = IntegerLattice::new(lattice.ns_gram.clone())?;
    let rationality = nef_boundary_rationality(&ns)?;
    let isotropy = rationality.certificate.clone();
    let minus_two = represents(&ns, &BigInt::from(-2))?;
    let positive = star2.holds && !isotropy.isotropic && !minus_two.is_solvable();
    let fundamental = if isotropy.isotropic {
        None
    } else {
        Some(fundamental_isometry(&ns)?)
    };
    let statement = if positive {
        "NS(F(X)) has no isotropic class and no class of square -2, so the boundary rays of the \
         nef cone are irrational, Aut(F(X)) is infinite, and there is an automorphism of positive \
         entropy on F(X)"
            .to_string()
    } else if !star2.holds {
        format!(
            "condition (**) fails ({}); no positive-entropy conclusion",
            star2.reason.as_deref().unwrap_or("")
        )
    } else if isotropy.isotropic {
        "NS(F(X)) contains an isotropic class; the boundary rays are rational".to_string()
    } else {
        let w = minus_two.witness.as_ref().expect("solvable");
        format!(
            "NS(F(X)) represents -2 at ({}, {}); no positive-entropy conclusion",
            w[0], w[1]
        )
    };
    Ok(FanoVerdict {
        d: d.clone(),
        star,
        star2,
        star3,
        lattice,
        isotropy,
        rationality,
        minus_two,
        fundamental,
        positive,
        exploratory: d != &BigInt::from(74),
        assumption: "rk H^{2,2}(X, Z) = 2".to_string(),
        statement,
    })
}

/// One row of the table of admissible discriminants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicDiscriminant {
    #[serde(with = "crate::report::bigint_str")]
    pub d: BigInt,
    pub star: bool,
    pub star2: bool,
    pub star3: bool,
    /// `(a, n)` for (***)
    #[serde(with = "crate::report::opt_bigint_arr2")]
    pub star3_witness: Option<[BigInt; 2]>,
}

impl CubicDiscriminant {
    /// Conditions for an admissible `d` (one satisfying (*)).
    pub fn new(d: &BigInt) -> Result<Self> {
        if !check_star(d) {
            return invalid(format!("d = {d} does not satisfy d > 6, d ≡ 0, 2 mod 6"));
        }
        let star3 = check_star3(d)?;
        Ok(CubicDiscriminant {
            d: d.clone(),
            star: true,
            star2: check_star2(d)?.holds,
            star3: star3.solvable,
            star3_witness: star3.witness,
        })
    }
}

/// All admissible `d <= max_d`, increasing.
pub fn discriminant_table(max_d: u64) -> Result<Vec<CubicDiscriminant>> {
    (8..=max_d)
        .map(BigInt::from)
        .filter(check_star)
        .map(|d| CubicDiscriminant::new(&d))
        .collect()
}
